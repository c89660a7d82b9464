//! The embedding `phi_m` of the periodic algebra into the extended one and
//! the harness that checks it is multiplicative.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{HallError, Result};
use crate::extended::{ExtendedAlgebra, ExtendedBasisElement, ExtendedElement, InnerPairing};
use crate::hall::{alternating_class, wrapped_sum, HallContext, ProductTerm, Pruning};
use crate::periodic::{PeriodicAlgebra, PeriodicElement, PeriodicObject};
use crate::repcat::{HalfKClass, KClass};
use crate::scalar::Scalar;

/// `phi(u_M) = scalar * basis`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiImage {
    pub scalar: Scalar,
    pub basis: ExtendedBasisElement,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Difference {
    pub basis: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomomorphismReport {
    pub pair: (String, String),
    pub equal: bool,
    pub lhs_terms: usize,
    pub rhs_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_diff: Option<Difference>,
    /// Every product term satisfied the K-class bookkeeping identity.
    pub pivot_ok: bool,
}

#[derive(Clone)]
pub struct Embedding {
    periodic: PeriodicAlgebra,
    extended: ExtendedAlgebra,
}

impl Embedding {
    pub fn new(ctx: Arc<HallContext>, m: usize) -> Result<Self> {
        let periodic = PeriodicAlgebra::new(ctx.clone(), m)?;
        let extended = ExtendedAlgebra::new(ctx, m)?;
        Ok(Embedding { periodic, extended })
    }

    pub fn with_pairing(mut self, pairing: InnerPairing) -> Self {
        self.extended = self.extended.with_pairing(pairing);
        self
    }

    pub fn periodic(&self) -> &PeriodicAlgebra {
        &self.periodic
    }

    pub fn extended(&self) -> &ExtendedAlgebra {
        &self.extended
    }

    fn m(&self) -> usize {
        self.periodic.period()
    }

    pub fn phi(&self, b: &PeriodicObject) -> PhiImage {
        let q = self.periodic.q();
        if self.m() == 1 {
            let alpha = vec![HalfKClass::half_of(&b.modules()[0].dim().scale(-1))];
            return PhiImage { scalar: Scalar::one(q), basis: ExtendedBasisElement::new(b.clone(), alpha) };
        }
        self.phi_by_formula(b)
    }

    /// The general-period formula. With `m = 1` the outer sum over
    /// `i = 1..m-1` is read as its `i = 1 ≡ 0` term; the inner alternating
    /// sum over `k = 1..m-1` stays empty.
    pub fn phi_by_formula(&self, b: &PeriodicObject) -> PhiImage {
        let q = self.periodic.q();
        let cat = self.periodic.context().cat();
        let m = self.m();
        let mk = b.k_classes();
        let x: Vec<KClass> = (0..m).map(|i| alternating_class(&mk, i)).collect();
        let mut e = wrapped_sum(m, |i| cat.euler(&x[i % m], &x[(i + 1) % m]));
        e -= cat.euler(&x[1 % m], &x[0]);
        for i in 0..m {
            let tail = (1..m).fold(KClass::zero(mk[0].len()), |acc, k| {
                let c = &mk[(i + k) % m];
                if k % 2 == 0 {
                    &acc + c
                } else {
                    &acc - c
                }
            });
            e += 4 * cat.euler(&mk[i], &tail);
        }
        let alphas = (0..m).map(|i| HalfKClass::half_of(&x[(i + 1) % m].scale(-1))).collect();
        PhiImage { scalar: Scalar::v_power(q, e), basis: ExtendedBasisElement::new(b.clone(), alphas) }
    }

    pub fn apply(&self, x: &PeriodicElement) -> Result<ExtendedElement> {
        x.map_linear(|b| {
            let img = self.phi(b);
            Ok(ExtendedElement::monomial(img.basis, img.scalar))
        })
    }

    /// Computes `phi(u_A u_B)` and `phi(u_A) phi(u_B)` independently and
    /// compares them coefficient by coefficient.
    pub fn verify_pair(&self, a: &PeriodicObject, b: &PeriodicObject) -> Result<HomomorphismReport> {
        let lhs = self.apply(&self.periodic.multiply_basis(a, b)?)?;
        let pa = self.phi(a);
        let pb = self.phi(b);
        let rhs = self
            .extended
            .multiply_basis(&pa.basis, &pb.basis)?
            .scale(&(&pa.scalar * &pb.scalar));
        let terms = self.periodic.terms(a, b, Pruning::Embeddable)?;
        let pivot_ok = terms.iter().all(|t| pivot_identity_holds(a, b, t));
        let first_diff = lhs.first_difference(&rhs).map(|(basis, l, r)| Difference {
            basis: basis.to_string(),
            lhs: l.to_string(),
            rhs: r.to_string(),
        });
        Ok(HomomorphismReport {
            pair: (a.to_string(), b.to_string()),
            equal: first_diff.is_none(),
            lhs_terms: lhs.len(),
            rhs_terms: rhs.len(),
            first_diff,
            pivot_ok,
        })
    }

    /// Distinct basis elements go to nonzero multiples of distinct basis
    /// elements.
    pub fn is_injective_on(&self, basis: &[PeriodicObject]) -> bool {
        let mut images: Vec<ExtendedBasisElement> = Vec::with_capacity(basis.len());
        for b in basis {
            let img = self.phi(b);
            if img.scalar.is_zero() || img.basis.modules() != b {
                return false;
            }
            images.push(img.basis);
        }
        images.sort();
        images.windows(2).all(|w| w[0] != w[1])
    }
}

/// `2 I_i - sum_k (-1)^k (A + B)_{i+1+k} = -sum_k (-1)^k M_{i+1+k}` for
/// every `i`: the K-index of `phi(u_M)` equals the one produced by the
/// extended product.
pub fn pivot_identity_holds(a: &PeriodicObject, b: &PeriodicObject, t: &ProductTerm) -> bool {
    let m = a.period();
    let ab: Vec<KClass> = a.k_classes().iter().zip(b.k_classes()).map(|(x, y)| x + &y).collect();
    let mk: Vec<KClass> = t.m.iter().map(|c| c.dim().clone()).collect();
    (0..m).all(|i| {
        let lhs = &t.i[i].dim().scale(2) - &alternating_class(&ab, (i + 1) % m);
        lhs == alternating_class(&mk, (i + 1) % m).scale(-1)
    })
}

/// `sum_{k=0}^{m-1} (-1)^k (I_{i+k} + I_{i+k-1}) = 2 I_{i-1}` and
/// `sum_{k=1}^{m-1} (-1)^k (I_{i+k} + I_{i+k-1}) = I_{i-1} - I_i` for odd `m`.
pub fn check_alternating_identity(classes: &[KClass], i: usize) -> Result<bool> {
    let m = classes.len();
    if m.is_multiple_of(2) {
        return Err(HallError::EvenPeriod { m });
    }
    let n = classes[0].len();
    let at = |j: usize| &classes[j % m];
    let term = |k: usize| at(i + k) + at(i + k + m - 1);
    let signed = |from: usize| {
        (from..m).fold(KClass::zero(n), |acc, k| if k % 2 == 0 { &acc + &term(k) } else { &acc - &term(k) })
    };
    let prev = at(i + m - 1);
    let full = signed(0) == prev.scale(2);
    let tail = signed(1) == prev - at(i);
    Ok(full && tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcat::{Quiver, RepCategory};

    fn embedding(q: u32, m: usize) -> Embedding {
        let cat = RepCategory::new(Quiver::preset("A2").unwrap(), q).unwrap();
        Embedding::new(Arc::new(HallContext::new(cat)), m).unwrap()
    }

    #[test]
    fn period_one_image() {
        let e = embedding(2, 1);
        let b = e.periodic().parse_object("[P1]").unwrap();
        let img = e.phi(&b);
        assert!(img.scalar.is_one());
        assert_eq!(img.basis.to_string(), "[P1@0]K[(-1,-1)/2@0]");
        assert_eq!(e.phi_by_formula(&b), img);
    }

    #[test]
    fn period_three_image_of_simple() {
        let e = embedding(2, 3);
        let img = e.phi(&e.periodic().parse_object("[S1@0]").unwrap());
        assert_eq!(img.scalar, Scalar::v_power(2, -3));
        assert_eq!(img.basis.to_string(), "[S1@0]K[(-1,0)/2@0, (1,0)/2@1, (-1,0)/2@2]");
        let zero = e.phi(&PeriodicObject::zero(3, 2));
        assert!(zero.scalar.is_one());
        assert!(zero.basis.alphas().iter().all(HalfKClass::is_zero));
    }

    #[test]
    fn even_period_is_rejected() {
        let cat = RepCategory::new(Quiver::preset("A2").unwrap(), 2).unwrap();
        assert_eq!(
            Embedding::new(Arc::new(HallContext::new(cat)), 4).err(),
            Some(HallError::EvenPeriod { m: 4 })
        );
    }

    #[test]
    fn simple_pair_is_multiplicative() {
        let e = embedding(2, 3);
        let a = e.periodic().parse_object("[S1@0]").unwrap();
        let b = e.periodic().parse_object("[S2@0]").unwrap();
        let r = e.verify_pair(&a, &b).unwrap();
        assert!(r.equal, "{r:?}");
        assert!(r.pivot_ok);
    }

    #[test]
    fn euler_inner_pairing_breaks_multiplicativity() {
        let e = embedding(2, 3).with_pairing(InnerPairing::Euler);
        let a = e.periodic().parse_object("[S2@2]").unwrap();
        let b = e.periodic().parse_object("[S2@1 + S2@2]").unwrap();
        assert!(!e.verify_pair(&a, &b).unwrap().equal);
        let e = e.with_pairing(InnerPairing::Symmetric);
        assert!(e.verify_pair(&a, &b).unwrap().equal);
    }

    #[test]
    fn alternating_identity() {
        let v = |x: i64, y: i64| KClass(vec![x, y]);
        let z = vec![v(0, 0); 3];
        assert!(check_alternating_identity(&z, 0).unwrap());
        let c = vec![v(1, 2), v(-3, 0), v(5, 7), v(2, 2), v(0, -1)];
        for i in 0..5 {
            assert!(check_alternating_identity(&c, i).unwrap());
        }
        assert!(check_alternating_identity(&[v(1, 0), v(0, 1)], 0).is_err());
    }
}
