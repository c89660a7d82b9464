//! The m-periodic derived Hall algebra: basis `u_{⊕ M_i[i]}` indexed by
//! m-tuples of module classes, `m` odd.

use std::fmt;
use std::sync::Arc;

use crate::derived::GradedObject;
use crate::element::{parse_element, Element};
use crate::error::{HallError, Result};
use crate::hall::{alternating_class, product_terms, HallContext, ProductTerm, Pruning};
use crate::repcat::{IsoClass, KClass, RepCategory};
use crate::scalar::Scalar;

/// `⊕_{i in Z_m} M_i[i]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicObject {
    modules: Vec<IsoClass>,
}

impl PeriodicObject {
    pub fn new(modules: Vec<IsoClass>) -> Self {
        assert!(!modules.is_empty(), "period must be at least 1");
        PeriodicObject { modules }
    }

    pub fn zero(m: usize, n: usize) -> Self {
        PeriodicObject { modules: vec![IsoClass::zero(n); m] }
    }

    pub fn period(&self) -> usize {
        self.modules.len()
    }

    pub fn modules(&self) -> &[IsoClass] {
        &self.modules
    }

    pub fn is_zero(&self) -> bool {
        self.modules.iter().all(IsoClass::is_zero)
    }

    pub fn k_classes(&self) -> Vec<KClass> {
        self.modules.iter().map(|m| m.dim().clone()).collect()
    }

    /// Folds a graded object into `Z_m` degrees.
    pub fn from_graded(m: usize, g: &GradedObject) -> Self {
        let mut modules = vec![IsoClass::zero(g.vertex_count()); m];
        for (d, c) in g.parts() {
            let i = d.rem_euclid(m as i32) as usize;
            modules[i] = modules[i].direct_sum(c);
        }
        PeriodicObject { modules }
    }

    /// Parses `[S1+S2@0 + P1@2]`; degrees are read mod `m`.
    pub fn parse(cat: &RepCategory, m: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| HallError::Parse(format!("basis element `{s}` must be written `[...]`")))?;
        Ok(PeriodicObject::from_graded(m, &GradedObject::parse(cat, inner)?))
    }

    pub(crate) fn fmt_parts(&self) -> String {
        let parts: Vec<String> = self
            .modules
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}@{i}"))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for PeriodicObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.fmt_parts())
    }
}

impl fmt::Debug for PeriodicObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub type PeriodicElement = Element<PeriodicObject>;

/// `DH_m(A)` over a shared context.
#[derive(Clone)]
pub struct PeriodicAlgebra {
    ctx: Arc<HallContext>,
    m: usize,
}

impl PeriodicAlgebra {
    pub fn new(ctx: Arc<HallContext>, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(HallError::Invalid("period must be at least 1".into()));
        }
        if m.is_multiple_of(2) {
            return Err(HallError::EvenPeriod { m });
        }
        Ok(PeriodicAlgebra { ctx, m })
    }

    pub fn period(&self) -> usize {
        self.m
    }

    pub fn context(&self) -> &Arc<HallContext> {
        &self.ctx
    }

    pub fn q(&self) -> u32 {
        self.ctx.q()
    }

    pub fn one(&self) -> PeriodicElement {
        Element::basis(self.q(), PeriodicObject::zero(self.m, self.ctx.cat().vertex_count()))
    }

    pub fn basis(&self, b: PeriodicObject) -> PeriodicElement {
        Element::basis(self.q(), b)
    }

    pub fn parse_object(&self, s: &str) -> Result<PeriodicObject> {
        PeriodicObject::parse(self.ctx.cat(), self.m, s)
    }

    pub fn parse(&self, s: &str) -> Result<PeriodicElement> {
        parse_element(self.q(), s, |b| self.parse_object(b))
    }

    /// `v`-exponent (in quarters) of the product twist,
    /// `sum_i < sum_k (-1)^k A_{i+k}, B_i >`.
    pub fn twist(&self, a: &PeriodicObject, b: &PeriodicObject) -> i64 {
        let cat = self.ctx.cat();
        let ak = a.k_classes();
        (0..self.m).map(|i| 4 * cat.euler(&alternating_class(&ak, i), b.modules[i].dim())).sum()
    }

    /// The `(I, M)` terms of `u_A u_B` before the twist.
    pub fn terms(&self, a: &PeriodicObject, b: &PeriodicObject, pruning: Pruning) -> Result<Vec<ProductTerm>> {
        self.check(a)?;
        self.check(b)?;
        product_terms(&self.ctx, &a.modules, &b.modules, pruning)
    }

    pub fn multiply_basis(&self, a: &PeriodicObject, b: &PeriodicObject) -> Result<PeriodicElement> {
        let q = self.q();
        let twist = Scalar::v_power(q, self.twist(a, b));
        let mut out = Element::zero(q);
        for t in self.terms(a, b, Pruning::Embeddable)? {
            out.add_term(PeriodicObject::new(t.m), &twist * &Scalar::from_rational(q, t.coeff));
        }
        Ok(out)
    }

    pub fn multiply(&self, x: &PeriodicElement, y: &PeriodicElement) -> Result<PeriodicElement> {
        x.bilinear(y, |a, b| self.multiply_basis(a, b))
    }

    /// Basis objects whose components have dimension vectors `<= bound`,
    /// with at most `max_nonzero` nonzero components.
    pub fn basis_objects(&self, bound: &KClass, max_nonzero: usize) -> Result<Vec<PeriodicObject>> {
        Ok(self.basis_objects_from(&self.ctx.cat().enumerate_iso_classes(bound)?, max_nonzero))
    }

    /// Basis objects with components drawn from `classes`.
    pub fn basis_objects_from(&self, classes: &[IsoClass], max_nonzero: usize) -> Vec<PeriodicObject> {
        let mut out = vec![PeriodicObject::zero(self.m, self.ctx.cat().vertex_count())];
        for i in 0..self.m {
            let mut next = Vec::new();
            for p in &out {
                next.push(p.clone());
                if p.modules.iter().filter(|c| !c.is_zero()).count() >= max_nonzero {
                    continue;
                }
                for c in classes.iter().filter(|c| !c.is_zero()) {
                    let mut modules = p.modules.clone();
                    modules[i] = c.clone();
                    next.push(PeriodicObject { modules });
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    fn check(&self, a: &PeriodicObject) -> Result<()> {
        if a.period() != self.m {
            return Err(HallError::Invalid(format!(
                "basis element has period {}, algebra has period {}",
                a.period(),
                self.m
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcat::Quiver;

    fn algebra(name: &str, q: u32, m: usize) -> PeriodicAlgebra {
        let cat = RepCategory::new(Quiver::preset(name).unwrap(), q).unwrap();
        PeriodicAlgebra::new(Arc::new(HallContext::new(cat)), m).unwrap()
    }

    #[test]
    fn even_period_is_rejected() {
        let cat = RepCategory::new(Quiver::preset("A2").unwrap(), 2).unwrap();
        let err = PeriodicAlgebra::new(Arc::new(HallContext::new(cat)), 2).err().unwrap();
        assert_eq!(err, HallError::EvenPeriod { m: 2 });
    }

    #[test]
    fn simple_pair_product() {
        for q in [2u32, 3] {
            let alg = algebra("A2", q, 3);
            let p = alg.multiply(&alg.parse("[S1@0]").unwrap(), &alg.parse("[S2@0]").unwrap()).unwrap();
            let expected = alg
                .parse(&format!("v^-1*[S1+S2@0] + {}*v^-1*[P1@0]", q - 1))
                .unwrap();
            assert_eq!(p, expected);
        }
    }

    #[test]
    fn a1_square_at_period_one() {
        for q in [2u32, 3] {
            let alg = algebra("A1", q, 1);
            let s = alg.parse("[S1]").unwrap();
            let p = alg.multiply(&s, &s).unwrap();
            let expected = alg.parse(&format!("v*(1/{q})*[S1+S1] + ({}/{q})*v*[0]", q - 1)).unwrap();
            assert_eq!(p, expected, "q = {q}");
        }
    }

    #[test]
    fn unit_and_printing() {
        let alg = algebra("A2", 2, 3);
        let x = alg.parse("[S1@0 + P1@2]").unwrap();
        assert_eq!(alg.multiply(&alg.one(), &x).unwrap(), x);
        assert_eq!(alg.multiply(&x, &alg.one()).unwrap(), x);
        assert_eq!(x.to_string(), "[S1@0 + P1@2]");
        assert_eq!(alg.parse("[S1@3]").unwrap(), alg.parse("[S1@0]").unwrap());
        assert_eq!(alg.parse("[0]").unwrap(), alg.one());
    }

    #[test]
    fn basis_object_counts() {
        let alg = algebra("A2", 2, 3);
        let bound = KClass(vec![1, 1]);
        // four nonzero classes below (1,1)
        assert_eq!(alg.basis_objects(&bound, 0).unwrap().len(), 1);
        assert_eq!(alg.basis_objects(&bound, 1).unwrap().len(), 1 + 3 * 4);
        assert_eq!(alg.basis_objects(&bound, 2).unwrap().len(), 1 + 3 * 4 + 3 * 16);
        assert_eq!(alg.basis_objects(&bound, 3).unwrap().len(), 5 * 5 * 5);
    }
}
