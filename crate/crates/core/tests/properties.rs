//! Randomized algebraic properties on quivers beyond `A2`.

use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use periodic_hall::embed::{check_alternating_identity, Embedding};
use periodic_hall::extended::{ExtendedAlgebra, ExtendedBasisElement};
use periodic_hall::hall::{HallContext, Pruning};
use periodic_hall::periodic::{PeriodicAlgebra, PeriodicObject};
use periodic_hall::repcat::{HalfKClass, IsoClass, KClass, Quiver, RepCategory};
use periodic_hall::scalar::Scalar;
use periodic_hall::HallError;
use proptest::prelude::*;

const KRONECKER: &str = "2; 1->2, 1->2";

fn context(spec: &str) -> Arc<HallContext> {
    static CACHE: OnceLock<Vec<(String, Arc<HallContext>)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        ["A2", "A3", KRONECKER]
            .iter()
            .map(|s| (s.to_string(), Arc::new(HallContext::new(RepCategory::new(Quiver::parse(s).unwrap(), 2).unwrap()))))
            .collect()
    });
    all.iter().find(|(s, _)| s == spec).expect("known quiver").1.clone()
}

fn small_classes(ctx: &HallContext) -> Vec<IsoClass> {
    let n = ctx.cat().vertex_count();
    ctx.cat().enumerate_iso_classes(&KClass(vec![1; n])).unwrap()
}

fn object(classes: &[IsoClass], picks: &[usize]) -> PeriodicObject {
    PeriodicObject::new(picks.iter().map(|&i| classes[i % classes.len()].clone()).collect())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn embedding_is_multiplicative_on_a3_and_kronecker(
        quiver in prop::sample::select(vec!["A3", KRONECKER]),
        m in prop::sample::select(vec![1usize, 3, 5]),
        a in prop::collection::vec(0usize..64, 5),
        b in prop::collection::vec(0usize..64, 5),
    ) {
        let ctx = context(quiver);
        let classes = small_classes(&ctx);
        let emb = Embedding::new(ctx, m).unwrap();
        let (x, y) = (object(&classes, &a[..m]), object(&classes, &b[..m]));
        let report = emb.verify_pair(&x, &y).unwrap();
        prop_assert!(report.equal && report.pivot_ok, "{:?}", report);
    }

    #[test]
    fn extended_product_is_associative_on_a3(
        m in 1usize..=3,
        picks in prop::collection::vec(0usize..64, 9),
        alphas in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 9),
    ) {
        let ctx = context("A3");
        let classes = small_classes(&ctx);
        let alg = ExtendedAlgebra::new(ctx, m).unwrap();
        let el = |k: usize| {
            let mods = object(&classes, &picks[3 * k..3 * k + m]);
            let al = alphas[3 * k..3 * k + m].iter().map(|v| HalfKClass(v.clone())).collect();
            alg.basis(ExtendedBasisElement::new(mods, al))
        };
        let (x, y, z) = (el(0), el(1), el(2));
        let l = alg.multiply(&alg.multiply(&x, &y).unwrap(), &z).unwrap();
        let r = alg.multiply(&x, &alg.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn periodic_product_is_associative_on_kronecker(
        m in prop::sample::select(vec![1usize, 3]),
        picks in prop::collection::vec(0usize..64, 9),
    ) {
        let ctx = context(KRONECKER);
        let classes = small_classes(&ctx);
        let alg = PeriodicAlgebra::new(ctx, m).unwrap();
        let el = |k: usize| alg.basis(object(&classes, &picks[3 * k..3 * k + m]));
        let (x, y, z) = (el(0), el(1), el(2));
        let l = alg.multiply(&alg.multiply(&x, &y).unwrap(), &z).unwrap();
        let r = alg.multiply(&x, &alg.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn printed_elements_reparse(
        m in prop::sample::select(vec![1usize, 3]),
        terms in prop::collection::vec(
            (prop::collection::vec(0usize..64, 3), prop::collection::vec(-4i64..=4, 6), -9i64..9, -3i64..=3, 1i64..4),
            0..5,
        ),
    ) {
        let ctx = context("A2");
        let classes = small_classes(&ctx);
        let alg = ExtendedAlgebra::new(ctx, m).unwrap();
        let mut e = alg.one().scale(&Scalar::zero(2));
        for (picks, al, exp, num, den) in terms {
            let alphas = (0..m).map(|i| HalfKClass(al[2 * i..2 * i + 2].to_vec())).collect();
            let b = ExtendedBasisElement::new(object(&classes, &picks[..m]), alphas);
            let mut c = Scalar::v_power(2, exp);
            c = &c * &Scalar::from_rational(2, BigRational::new(num.into(), den.into()));
            e.add_term(b, c);
        }
        prop_assert_eq!(alg.parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn alternating_identities_hold(
        m in prop::sample::select(vec![1usize, 3, 5, 7]),
        entries in prop::collection::vec(-50i64..50, 21),
    ) {
        let classes: Vec<KClass> = (0..m).map(|i| KClass(entries[3 * i..3 * i + 3].to_vec())).collect();
        for i in 0..m {
            prop_assert!(check_alternating_identity(&classes, i).unwrap());
        }
    }

    #[test]
    fn period_one_branches_agree(picks in 0usize..64) {
        for spec in ["A3", KRONECKER] {
            let ctx = context(spec);
            let classes = small_classes(&ctx);
            let emb = Embedding::new(ctx, 1).unwrap();
            let b = object(&classes, &[picks]);
            prop_assert_eq!(emb.phi(&b), emb.phi_by_formula(&b));
        }
    }
}

#[test]
fn pruned_terms_vanish_on_a3() {
    let ctx = context("A3");
    let classes = small_classes(&ctx);
    let alg = PeriodicAlgebra::new(ctx, 3).unwrap();
    for i in 0..classes.len() {
        let a = object(&classes, &[i, 3 * i + 1, 0]);
        let b = object(&classes, &[2 * i + 1, i, 5]);
        let pruned = alg.terms(&a, &b, Pruning::Embeddable).unwrap();
        let loose = alg.terms(&a, &b, Pruning::Loose).unwrap();
        assert_eq!(pruned, loose, "{a} * {b}");
    }
}

#[test]
fn even_periods_are_rejected() {
    let ctx = context("A2");
    for m in (2..=20).step_by(2) {
        assert_eq!(PeriodicAlgebra::new(ctx.clone(), m).err(), Some(HallError::EvenPeriod { m }));
        assert_eq!(Embedding::new(ctx.clone(), m).err(), Some(HallError::EvenPeriod { m }));
        assert!(ExtendedAlgebra::new(ctx.clone(), m).is_ok());
    }
}

#[test]
fn unit_is_two_sided() {
    for spec in ["A3", KRONECKER] {
        let ctx = context(spec);
        let classes = small_classes(&ctx);
        for m in [1usize, 3] {
            let alg = ExtendedAlgebra::new(ctx.clone(), m).unwrap();
            for i in 0..classes.len() {
                let x = alg.basis(ExtendedBasisElement::new(
                    object(&classes, &vec![i; m]),
                    vec![HalfKClass(vec![1; ctx.cat().vertex_count()]); m],
                ));
                assert_eq!(alg.multiply(&alg.one(), &x).unwrap(), x);
                assert_eq!(alg.multiply(&x, &alg.one()).unwrap(), x);
            }
        }
    }
}
