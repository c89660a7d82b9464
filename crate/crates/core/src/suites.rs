//! Property suites shared by the command line and the test harness. Each
//! returns a [`SuiteReport`] counting checks and recording failures.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::derived::{db_hom_dim, ext_fibers, CountMode, GradedObject};
use crate::embed::{check_alternating_identity, Embedding};
use crate::error::{HallError, Result};
use crate::extended::{ExtendedAlgebra, ExtendedBasisElement};
use crate::periodic::{PeriodicAlgebra, PeriodicObject};
use crate::repcat::{HalfKClass, IsoClass, KClass, RepCategory};
use crate::scalar::Scalar;

/// At most this many failures are kept in a report.
pub const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub failed: usize,
    pub failures: Vec<Value>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.into(), checks: 0, failed: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_RECORDED_FAILURES {
                self.failures.push(detail());
            }
        }
    }

    pub fn merge(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.failed += other.failed;
        let room = MAX_RECORDED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} checks, {} failed", self.suite, self.checks, self.failed)?;
        for x in &self.failures {
            write!(f, "\n  {x}")?;
        }
        Ok(())
    }
}

/// Size bound on modules: `3` bounds total dimension, `1,1` bounds the
/// dimension vector componentwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DimBound {
    Total(i64),
    Vector(Vec<i64>),
}

impl DimBound {
    pub fn classes(&self, cat: &RepCategory) -> Result<Vec<IsoClass>> {
        match self {
            DimBound::Total(d) => cat.classes_of_total_at_most(*d),
            DimBound::Vector(v) => {
                if v.len() != cat.vertex_count() {
                    return Err(HallError::Invalid(format!(
                        "bound has {} entries, quiver has {} vertices",
                        v.len(),
                        cat.vertex_count()
                    )));
                }
                cat.enumerate_iso_classes(&KClass(v.clone()))
            }
        }
    }
}

impl FromStr for DimBound {
    type Err = HallError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || HallError::Parse(format!("bad dimension bound `{s}`"));
        let parts: Vec<i64> =
            s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad())).collect::<Result<_>>()?;
        if parts.iter().any(|&x| x < 0) {
            return Err(bad());
        }
        Ok(if s.contains(',') { DimBound::Vector(parts) } else { DimBound::Total(parts[0]) })
    }
}

/// Exhaustive homomorphism check over `basis x basis`, plus the per-term
/// K-class identity, injectivity on `basis`, and agreement of the two
/// branches of `phi` at period one.
pub fn embedding_suite(emb: &Embedding, basis: &[PeriodicObject]) -> Result<SuiteReport> {
    let pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).collect();
    let results: Vec<_> = pairs
        .par_iter()
        .map(|&(i, j)| emb.verify_pair(&basis[i], &basis[j]))
        .collect::<Result<Vec<_>>>()?;
    let mut report = SuiteReport::new("embedding");
    for r in results {
        let ok = r.equal && r.pivot_ok;
        report.record(ok, || serde_json::to_value(&r).unwrap_or(Value::Null));
    }
    report.record(emb.is_injective_on(basis), || json!({"check": "injectivity"}));
    if emb.periodic().period() == 1 {
        for b in basis {
            let ok = emb.phi(b) == emb.phi_by_formula(b);
            report.record(ok, || json!({"check": "period-one branch", "basis": b.to_string()}));
        }
    }
    Ok(report)
}

pub fn random_periodic_object<R: Rng>(rng: &mut R, m: usize, classes: &[IsoClass]) -> PeriodicObject {
    let modules = (0..m)
        .map(|_| if rng.gen_bool(0.5) { classes[rng.gen_range(0..classes.len())].clone() } else { classes[0].clone() })
        .collect();
    PeriodicObject::new(modules)
}

/// A half-lattice class with doubled coordinates in `[-range, range]`.
pub fn random_half_class<R: Rng>(rng: &mut R, n: usize, range: i64) -> HalfKClass {
    HalfKClass((0..n).map(|_| rng.gen_range(-range..=range)).collect())
}

pub fn random_alphas<R: Rng>(rng: &mut R, m: usize, n: usize, range: i64) -> Vec<HalfKClass> {
    (0..m).map(|_| random_half_class(rng, n, range)).collect()
}

/// `(xy)z = x(yz)` on random basis triples of the periodic algebra.
pub fn periodic_assoc_suite<R: Rng>(
    alg: &PeriodicAlgebra,
    classes: &[IsoClass],
    samples: usize,
    rng: &mut R,
) -> Result<SuiteReport> {
    let m = alg.period();
    let mut report = SuiteReport::new("periodic associativity");
    for _ in 0..samples {
        let [x, y, z] = [0; 3].map(|_| alg.basis(random_periodic_object(rng, m, classes)));
        let l = alg.multiply(&alg.multiply(&x, &y)?, &z)?;
        let r = alg.multiply(&x, &alg.multiply(&y, &z)?)?;
        report.record(l == r, || json!({"triple": [x.to_string(), y.to_string(), z.to_string()]}));
    }
    Ok(report)
}

/// `(xy)z = x(yz)` on random basis triples of the extended algebra, each
/// carrying random half-lattice K-indices.
pub fn extended_assoc_suite<R: Rng>(
    alg: &ExtendedAlgebra,
    classes: &[IsoClass],
    samples: usize,
    rng: &mut R,
) -> Result<SuiteReport> {
    let m = alg.period();
    let n = alg.context().cat().vertex_count();
    let mut report = SuiteReport::new("extended associativity");
    for _ in 0..samples {
        let [x, y, z] = [0; 3].map(|_| {
            let b = ExtendedBasisElement::new(random_periodic_object(rng, m, classes), random_alphas(rng, m, n, 3));
            alg.basis(b)
        });
        let l = alg.multiply(&alg.multiply(&x, &y)?, &z)?;
        let r = alg.multiply(&x, &alg.multiply(&y, &z)?)?;
        report.record(l == r, || json!({"triple": [x.to_string(), y.to_string(), z.to_string()]}));
    }
    Ok(report)
}

fn sym(cat: &RepCategory, a: &HalfKClass, b: &HalfKClass) -> i64 {
    cat.euler_half(a, b) + cat.euler_half(b, a)
}

/// The commutation rules between K-monomials and module basis elements,
/// each checked through the general product:
/// `K_a K_b = v^{e} K_{a+b}`, `K_a u_B = v^{e} u_B K_a` and
/// `K_a K_b = v^{e} K_b K_a` with the exponents written out directly.
pub fn k_relations_suite<R: Rng>(
    alg: &ExtendedAlgebra,
    classes: &[IsoClass],
    samples: usize,
    rng: &mut R,
) -> Result<SuiteReport> {
    let m = alg.period();
    let cat = alg.context().cat();
    let n = cat.vertex_count();
    let q = alg.q();
    let mut report = SuiteReport::new("K relations");
    let k = |alphas: &[HalfKClass]| alg.basis(ExtendedBasisElement::k_monomial(alphas.to_vec()));
    for _ in 0..samples {
        let a = random_alphas(rng, m, n, 3);
        let b = random_alphas(rng, m, n, 3);
        let bm = random_periodic_object(rng, m, classes);

        // product of K-monomials
        let mut e = if m == 1 { sym(cat, &a[0], &b[0]) } else { 0 };
        for i in 1..m {
            e += sym(cat, &a[i], &b[i - 1]);
        }
        e -= sym(cat, &a[m - 1], &b[0]);
        let sum: Vec<HalfKClass> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let ok = alg.multiply(&k(&a), &k(&b))? == k(&sum).scale(&Scalar::v_power(q, e));
        report.record(ok, || json!({"relation": "K K", "alpha": fmt_half(&a), "beta": fmt_half(&b)}));

        // moving a K-monomial past u_B
        let bk = bm.k_classes();
        let e: i64 = (0..m)
            .map(|i| sym(cat, &a[i], &(&bk[i] - &bk[(i + 1) % m]).doubled()))
            .sum();
        let u = alg.basis(ExtendedBasisElement::module(bm.clone()));
        let ok = alg.multiply(&k(&a), &u)? == alg.multiply(&u, &k(&a))?.scale(&Scalar::v_power(q, e));
        report.record(ok, || json!({"relation": "K u", "alpha": fmt_half(&a), "module": bm.to_string()}));

        // commuting two K-monomials
        let e: i64 = (0..m)
            .map(|i| sym(cat, &a[i], &(&b[(i + m - 1) % m] - &b[(i + 1) % m])))
            .sum();
        let ok = alg.multiply(&k(&a), &k(&b))? == alg.multiply(&k(&b), &k(&a))?.scale(&Scalar::v_power(q, e));
        report.record(ok, || json!({"relation": "K K commute", "alpha": fmt_half(&a), "beta": fmt_half(&b)}));
    }
    Ok(report)
}

fn fmt_half(a: &[HalfKClass]) -> Vec<String> {
    a.iter().map(|x| x.to_string()).collect()
}

/// The alternating-sum identities on random integer tuples (plus the zero
/// tuple), at every index.
pub fn identities_suite<R: Rng>(m: usize, n: usize, samples: usize, rng: &mut R) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("alternating identities");
    let mut tuples = vec![vec![KClass::zero(n); m]];
    for _ in 0..samples {
        tuples.push((0..m).map(|_| KClass((0..n).map(|_| rng.gen_range(-9..=9)).collect())).collect());
    }
    for t in &tuples {
        for i in 0..m {
            let ok = check_alternating_identity(t, i)?;
            report.record(ok, || json!({"tuple": t.iter().map(|c| c.to_string()).collect::<Vec<_>>(), "i": i}));
        }
    }
    Ok(report)
}

/// Graded objects built from `classes`, supported in degrees `0` and `1`,
/// of total dimension `<= total`.
pub fn graded_objects(cat: &RepCategory, classes: &[IsoClass], total: i64) -> Vec<GradedObject> {
    let n = cat.vertex_count();
    let mut out = Vec::new();
    for c0 in classes {
        for c1 in classes {
            if c0.dim().total() + c1.dim().total() <= total {
                out.push(GradedObject::from_parts(n, [(0, c0.clone()), (1, c1.clone())]));
            }
        }
    }
    out
}

/// `sum_L |Ext^1(X,Y)_L| = q^{dim Hom(X, Y[1])}` for all pairs of graded
/// objects with total dimension `<= total` in degrees `0, 1`.
pub fn partition_suite(cat: &RepCategory, total: i64) -> Result<SuiteReport> {
    let classes = cat.classes_of_total_at_most(total)?;
    let objs = graded_objects(cat, &classes, total);
    let pairs: Vec<(&GradedObject, &GradedObject)> = objs.iter().flat_map(|x| objs.iter().map(move |y| (x, y))).collect();
    let results: Vec<(bool, Value)> = pairs
        .par_iter()
        .map(|(x, y)| {
            let fibers = ext_fibers(cat, x, y, CountMode::Quotient)?;
            let sum: BigUint = fibers.values().sum();
            let d = db_hom_dim(cat, x, &y.shift(1))?;
            let expected = BigUint::from(cat.q()).pow(d as u32);
            Ok((sum == expected, json!({"x": x.to_string(), "y": y.to_string(), "sum": sum.to_string(), "expected": expected.to_string()})))
        })
        .collect::<Result<_>>()?;
    let mut report = SuiteReport::new("partition");
    for (ok, detail) in results {
        report.record(ok, || detail);
    }
    Ok(report)
}

/// Submodule counts against extension counts:
/// `g^L_{M,N} = |Ext^1(M,N)_L| / |Hom(M,N)| * a_L / (a_M a_N)` for all
/// modules `L, M, N` with `dim L = dim M + dim N` and total dimension of
/// `L` at most `total`.
pub fn riedtmann_suite(cat: &RepCategory, total: i64) -> Result<SuiteReport> {
    let classes = cat.classes_of_total_at_most(total)?;
    let mut triples = Vec::new();
    for m in &classes {
        for nn in &classes {
            if m.dim().total() + nn.dim().total() > total {
                continue;
            }
            let target = m.dim() + nn.dim();
            for l in classes.iter().filter(|l| l.dim() == &target) {
                triples.push((l, m, nn));
            }
        }
    }
    let q = BigUint::from(cat.q());
    let results: Vec<(bool, Value)> = triples
        .par_iter()
        .map(|&(l, m, nn)| {
            let g = cat.submodule_hall_number(l, m, nn)?;
            let x = GradedObject::stalk(m.clone(), 0);
            let y = GradedObject::stalk(nn.clone(), 0);
            let ext = ext_fibers(cat, &x, &y, CountMode::Quotient)?
                .get(&GradedObject::stalk(l.clone(), 0))
                .cloned()
                .unwrap_or_default();
            let hom = q.pow(cat.hom_dim(m, nn)? as u32);
            let big = |b: BigUint| BigRational::from_integer(b.into());
            let rhs = big(ext) / big(hom) * big(cat.aut_count(l)?) / (big(cat.aut_count(m)?) * big(cat.aut_count(nn)?));
            let ok = rhs == big(g.clone());
            Ok((ok, json!({"L": l.to_string(), "M": m.to_string(), "N": nn.to_string(), "g": g.to_string(), "from_ext": rhs.to_string()})))
        })
        .collect::<Result<_>>()?;
    let mut report = SuiteReport::new("riedtmann");
    for (ok, detail) in results {
        report.record(ok, || detail);
    }
    Ok(report)
}

/// The golden product `u_{S1} u_{S2} = v^{-1}(u_{S1+S2} + (q-1) u_{P1})`
/// in degree 0 of both algebras on `A2`, period 3.
pub fn golden_suite(periodic: &PeriodicAlgebra, extended: &ExtendedAlgebra) -> Result<SuiteReport> {
    let q = periodic.q();
    let mut report = SuiteReport::new("golden product");
    let coeff = Scalar::v_power(q, -4);
    let qm1 = Scalar::from_rational(q, BigRational::from_integer((q as i64 - 1).into()));
    let want_p = periodic
        .parse("[S1+S2@0]")?
        .scale(&coeff)
        .add(&periodic.parse("[P1@0]")?.scale(&(&coeff * &qm1)));
    let got_p = periodic.multiply(&periodic.parse("[S1@0]")?, &periodic.parse("[S2@0]")?)?;
    report.record(got_p == want_p, || json!({"algebra": "periodic", "got": got_p.to_string()}));
    let want_e = extended
        .parse("[S1+S2@0]")?
        .scale(&coeff)
        .add(&extended.parse("[P1@0]")?.scale(&(&coeff * &qm1)));
    let got_e = extended.multiply(&extended.parse("[S1@0]")?, &extended.parse("[S2@0]")?)?;
    report.record(got_e == want_e, || json!({"algebra": "extended", "got": got_e.to_string()}));
    Ok(report)
}
