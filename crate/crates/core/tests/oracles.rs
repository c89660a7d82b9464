//! Brute-force cross-checks of the category and derived layers.

use num_bigint::BigUint;
use num_rational::BigRational;
use periodic_hall::derived::{derived_hall_number, ext_fibers, CountMode, GradedObject};
use periodic_hall::fq::{Fq, Mat, VectorIter};
use periodic_hall::repcat::rep::all_reps;
use periodic_hall::repcat::{IsoClass, KClass, Quiver, Rep, RepCategory};
use periodic_hall::scalar::Scalar;
use periodic_hall::suites::graded_objects;
use proptest::prelude::*;

fn cat(spec: &str, q: u32) -> RepCategory {
    RepCategory::new(Quiver::parse(spec).unwrap(), q).unwrap()
}

/// Number of tuples of matrices `f_v: A_v -> B_v` commuting with every arrow.
fn brute_hom_count(quiver: &Quiver, fq: &Fq, a: &Rep, b: &Rep) -> u64 {
    let (da, db) = (a.dims(), b.dims());
    let entries: usize = da.iter().zip(db).map(|(x, y)| x * y).sum();
    let mut count = 0;
    for flat in VectorIter::new(fq.q(), entries) {
        let mut off = 0;
        let f: Vec<Mat> = da
            .iter()
            .zip(db)
            .map(|(&c, &r)| {
                let m = Mat::from_vec(r, c, flat[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect();
        let commutes = quiver
            .arrows()
            .iter()
            .enumerate()
            .all(|(k, &(s, t))| fq.mat_mul(b.map(k), &f[s]) == fq.mat_mul(&f[t], a.map(k)));
        if commutes {
            count += 1;
        }
    }
    count
}

#[test]
fn hom_dimensions_match_brute_force_and_euler_form() {
    for (spec, bound) in [("A2", vec![2, 2]), ("A3", vec![1, 1, 1]), ("2; 1->2, 1->2", vec![1, 2])] {
        for q in [2u32, 3] {
            let c = cat(spec, q);
            let classes = c.enumerate_iso_classes(&KClass(bound.clone())).unwrap();
            for m in &classes {
                for n in &classes {
                    let (rm, rn) = (c.class_rep(m).unwrap(), c.class_rep(n).unwrap());
                    let (hom, ext) = c.hom_ext_dim(m, n).unwrap();
                    let brute = brute_hom_count(c.quiver(), c.fq(), &rm, &rn);
                    assert_eq!(brute, (q as u64).pow(hom as u32), "{spec} q={q} Hom({m},{n})");
                    assert_eq!(hom as i64 - ext as i64, c.euler(m.dim(), n.dim()), "{spec} Euler form on {m},{n}");
                }
            }
        }
    }
}

#[test]
fn extension_counts_sum_to_ext_group() {
    for q in [2u32, 3] {
        let c = cat("A3", q);
        let classes = c.classes_of_total_at_most(2).unwrap();
        for m in &classes {
            for n in &classes {
                let fibers =
                    ext_fibers(&c, &GradedObject::stalk(m.clone(), 0), &GradedObject::stalk(n.clone(), 0), CountMode::Quotient)
                        .unwrap();
                let total: BigUint = fibers.values().sum();
                assert_eq!(total, BigUint::from(q).pow(c.ext_dim(m, n).unwrap() as u32), "Ext({m},{n})");
            }
        }
    }
}

#[test]
fn automorphism_counts_match_brute_force() {
    for q in [2u32, 3] {
        let c = cat("A2", q);
        for class in c.enumerate_iso_classes(&KClass(vec![2, 2])).unwrap() {
            let rep = c.class_rep(&class).unwrap();
            assert_eq!(c.aut_count(&class).unwrap(), c.aut_count_brute(&rep).unwrap(), "a_{class} at q={q}");
        }
    }
}

#[test]
fn quotient_and_full_space_counts_agree() {
    let c = cat("A2", 2);
    let classes = c.classes_of_total_at_most(2).unwrap();
    let objs = graded_objects(&c, &classes, 2);
    for x in &objs {
        for y in &objs {
            let a = ext_fibers(&c, x, y, CountMode::Quotient).unwrap();
            let b = ext_fibers(&c, x, y, CountMode::FullSpace).unwrap();
            assert_eq!(a, b, "fibers of {x} -> {y}[1]");
        }
    }
}

#[test]
fn module_derived_hall_numbers_match_submodule_counts() {
    for q in [2u32, 3] {
        let c = cat("A3", q);
        let classes = c.classes_of_total_at_most(2).unwrap();
        for l in &classes {
            for m in &classes {
                for n in &classes {
                    if l.dim() != &(m.dim() + n.dim()) {
                        continue;
                    }
                    let g = BigRational::from_integer(c.submodule_hall_number(l, m, n).unwrap().into());
                    let a = |x: &IsoClass| BigRational::from_integer(c.aut_count(x).unwrap().into());
                    let expected = g * a(m) * a(n) / a(l);
                    let h = derived_hall_number(
                        &c,
                        &GradedObject::stalk(m.clone(), 0),
                        &GradedObject::stalk(n.clone(), 0),
                        &GradedObject::stalk(l.clone(), 0),
                    )
                    .unwrap();
                    assert_eq!(h, Scalar::from_rational(q, expected), "H^{l}_{{{m},{n}}} at q={q}");
                }
            }
        }
    }
}

/// A lower-unitriangular times upper-unitriangular matrix built from `seed`.
fn random_invertible(fq: &Fq, n: usize, seed: &[u32]) -> Mat {
    let mut m = Mat::identity(n);
    let mut k = 0;
    for r in 0..n {
        for c in r + 1..n {
            let mut e = Mat::identity(n);
            e.set_block(r, c, &Mat::from_vec(1, 1, vec![seed[k % seed.len()] % fq.q()]));
            m = fq.mat_mul(&m, &e);
            k += 1;
        }
    }
    let mut l = Mat::identity(n);
    for r in 1..n {
        l.set_block(r, 0, &Mat::from_vec(1, 1, vec![seed[(k + r) % seed.len()] % fq.q()]));
    }
    fq.mat_mul(&l, &m)
}

fn inverse(fq: &Fq, m: &Mat) -> Mat {
    let n = m.rows();
    let cols: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let e: Vec<u32> = (0..n).map(|i| u32::from(i == j)).collect();
            fq.solve(m, &e).expect("invertible")
        })
        .collect();
    Mat::from_cols(&cols, n)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    /// Conjugating a representation by a change of basis does not change
    /// its isomorphism class.
    #[test]
    fn canonical_form_is_basis_independent(rep_index in 0usize..4096, seed in proptest::collection::vec(0u32..7, 6)) {
        let c = cat("A2", 3);
        let dims = [2usize, 2];
        let reps: Vec<Rep> = all_reps(c.quiver(), 3, &dims).collect();
        let rep = &reps[rep_index % reps.len()];
        let g: Vec<Mat> = dims.iter().map(|&d| random_invertible(c.fq(), d, &seed)).collect();
        let g_inv: Vec<Mat> = g.iter().map(|m| inverse(c.fq(), m)).collect();
        let conj = rep.conjugate(c.quiver(), c.fq(), &g, &g_inv);
        prop_assert_eq!(c.canonicalize(rep).unwrap(), c.canonicalize(&conj).unwrap());
    }
}
