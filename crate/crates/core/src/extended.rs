//! The m-periodic extended derived Hall algebra: basis
//! `u_{⊕ M_i[i]} prod_i K_{alpha_i, i}` with `alpha_i` in the half lattice.
//! Any period `m >= 1` is accepted here, even ones included.

use std::fmt;
use std::sync::Arc;

use crate::element::{parse_element, Element};
use crate::error::{HallError, Result};
use crate::hall::{product_terms, wrapped_sum, HallContext, Pruning};
use crate::periodic::PeriodicObject;
use crate::repcat::{HalfKClass, IsoClass, RepCategory};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedBasisElement {
    modules: PeriodicObject,
    alphas: Vec<HalfKClass>,
}

impl ExtendedBasisElement {
    pub fn new(modules: PeriodicObject, alphas: Vec<HalfKClass>) -> Self {
        assert_eq!(modules.period(), alphas.len(), "period mismatch");
        ExtendedBasisElement { modules, alphas }
    }

    /// `u_{⊕ M_i[i]}` with every `alpha_i = 0`.
    pub fn module(modules: PeriodicObject) -> Self {
        let n = modules.modules()[0].dim().len();
        let alphas = vec![HalfKClass::zero(n); modules.period()];
        ExtendedBasisElement { modules, alphas }
    }

    /// The pure K-monomial `prod_i K_{alpha_i, i}`.
    pub fn k_monomial(alphas: Vec<HalfKClass>) -> Self {
        let n = alphas[0].0.len();
        ExtendedBasisElement { modules: PeriodicObject::zero(alphas.len(), n), alphas }
    }

    pub fn modules(&self) -> &PeriodicObject {
        &self.modules
    }

    pub fn alphas(&self) -> &[HalfKClass] {
        &self.alphas
    }

    pub fn period(&self) -> usize {
        self.alphas.len()
    }

    /// Parses `[S1@0]K[(1,0)/2@0, (0,-1)/2@2]`; the `K[...]` part is optional.
    pub fn parse(cat: &RepCategory, m: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let (u, k) = match s.find("]K[") {
            Some(pos) => (&s[..=pos], Some(&s[pos + 1..])),
            None => (s, None),
        };
        let modules = PeriodicObject::parse(cat, m, u)?;
        let n = cat.vertex_count();
        let mut alphas = vec![HalfKClass::zero(n); m];
        if let Some(k) = k {
            let inner = k
                .strip_prefix("K[")
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| HallError::Parse(format!("bad K-part `{k}`")))?;
            for item in split_top_level(inner) {
                let (vec, deg) = parse_k_item(item, n)?;
                let i = deg.rem_euclid(m as i32) as usize;
                alphas[i] = &alphas[i] + &vec;
            }
        }
        Ok(ExtendedBasisElement { modules, alphas })
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = s[start..].trim();
    if !last.is_empty() {
        out.push(last);
    }
    out
}

/// `(a,b)@d` or `(a,b)/2@d`.
fn parse_k_item(item: &str, n: usize) -> Result<(HalfKClass, i32)> {
    let err = || HallError::Parse(format!("bad K-index `{item}`"));
    let (vec, deg) = item.rsplit_once('@').ok_or_else(err)?;
    let deg: i32 = deg.trim().parse().map_err(|_| err())?;
    let vec = vec.trim();
    let (body, halved) = match vec.strip_suffix("/2") {
        Some(b) => (b.trim(), true),
        None => (vec, false),
    };
    let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(err)?;
    let entries: Vec<i64> =
        body.split(',').map(|x| x.trim().parse().map_err(|_| err())).collect::<Result<_>>()?;
    if entries.len() != n {
        return Err(err());
    }
    let doubled = if halved { entries } else { entries.iter().map(|x| 2 * x).collect() };
    Ok((HalfKClass(doubled), deg))
}

impl fmt::Display for ExtendedBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.modules)?;
        let ks: Vec<String> = self
            .alphas
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| format!("{a}@{i}"))
            .collect();
        if !ks.is_empty() {
            write!(f, "K[{}]", ks.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExtendedBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub type ExtendedElement = Element<ExtendedBasisElement>;

/// How `I_i` is paired with `alpha + beta` in the per-term exponent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InnerPairing {
    /// `(I_i, alpha_{i-1} + beta_{i-1})`, the same symmetric form that
    /// commutes K-monomials past each other. The embedding is multiplicative
    /// only with this choice.
    #[default]
    Symmetric,
    /// `<I_i, alpha_{i-1} + beta_{i-1}>` with the Euler form.
    Euler,
}

#[derive(Clone)]
pub struct ExtendedAlgebra {
    ctx: Arc<HallContext>,
    m: usize,
    pairing: InnerPairing,
}

impl ExtendedAlgebra {
    pub fn new(ctx: Arc<HallContext>, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(HallError::Invalid("period must be at least 1".into()));
        }
        Ok(ExtendedAlgebra { ctx, m, pairing: InnerPairing::default() })
    }

    pub fn with_pairing(mut self, pairing: InnerPairing) -> Self {
        self.pairing = pairing;
        self
    }

    pub fn pairing(&self) -> InnerPairing {
        self.pairing
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

    fn n(&self) -> usize {
        self.ctx.cat().vertex_count()
    }

    pub fn one(&self) -> ExtendedElement {
        Element::basis(self.q(), ExtendedBasisElement::module(PeriodicObject::zero(self.m, self.n())))
    }

    pub fn basis(&self, b: ExtendedBasisElement) -> ExtendedElement {
        Element::basis(self.q(), b)
    }

    pub fn parse_basis(&self, s: &str) -> Result<ExtendedBasisElement> {
        ExtendedBasisElement::parse(self.ctx.cat(), self.m, s)
    }

    pub fn parse(&self, s: &str) -> Result<ExtendedElement> {
        parse_element(self.q(), s, |b| self.parse_basis(b))
    }

    fn sym(&self, a: &HalfKClass, b: &HalfKClass) -> i64 {
        self.ctx.cat().symmetric_half(a, b)
    }

    fn inner_pair(&self, a: &HalfKClass, b: &HalfKClass) -> i64 {
        match self.pairing {
            InnerPairing::Symmetric => self.sym(a, b),
            InnerPairing::Euler => self.ctx.cat().euler_half(a, b),
        }
    }

    /// Exponent (quarters of `v`) of the K-monomial product,
    /// `-(alpha_{m-1}, beta_0) + sum_{i=1}^{m-1} (alpha_i, beta_{i-1})`.
    pub fn k_product_exponent(&self, alpha: &[HalfKClass], beta: &[HalfKClass]) -> i64 {
        let m = self.m;
        wrapped_sum(m, |i| self.sym(&alpha[i], &beta[(i + m - 1) % m])) - self.sym(&alpha[m - 1], &beta[0])
    }

    /// `prod K_alpha * prod K_beta = v^e prod K_{alpha + beta}`.
    pub fn k_monomial_product(&self, alpha: &[HalfKClass], beta: &[HalfKClass]) -> (i64, Vec<HalfKClass>) {
        let gamma = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
        (self.k_product_exponent(alpha, beta), gamma)
    }

    /// The prefactor exponent `a_0` (quarters of `v`).
    pub fn prefactor_exponent(&self, x: &ExtendedBasisElement, y: &ExtendedBasisElement) -> i64 {
        let m = self.m;
        let cat = self.ctx.cat();
        let a = x.modules.modules();
        let b = y.modules.modules();
        let bd: Vec<HalfKClass> = b.iter().map(|c| c.dim().doubled()).collect();
        let euler_ab: i64 = (0..m).map(|i| 4 * cat.euler(a[i].dim(), b[i].dim())).sum();
        let conj: i64 = (0..m).map(|i| self.sym(&x.alphas[i], &(&bd[i] - &bd[(i + 1) % m]))).sum();
        euler_ab + conj + self.k_product_exponent(&x.alphas, &y.alphas)
    }

    /// The per-term exponent (quarters of `v`) inside the sum.
    pub fn inner_exponent(&self, alpha: &[HalfKClass], beta: &[HalfKClass], i_tuple: &[IsoClass], m_tuple: &[IsoClass]) -> i64 {
        let m = self.m;
        let cat = self.ctx.cat();
        let id: Vec<HalfKClass> = i_tuple.iter().map(|c| c.dim().doubled()).collect();
        let ab: Vec<HalfKClass> = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
        let mut e = -self.inner_pair(&id[m - 1], &ab[0]);
        e += wrapped_sum(m, |i| self.inner_pair(&id[i], &ab[(i + m - 1) % m]));
        e += (0..m)
            .map(|i| 4 * cat.euler(&(m_tuple[i].dim() - m_tuple[(i + 1) % m].dim()), i_tuple[i].dim()))
            .sum::<i64>();
        e += wrapped_sum(m, |i| 4 * cat.euler(i_tuple[(i + m - 1) % m].dim(), i_tuple[i].dim()));
        e -= 4 * cat.euler(i_tuple[0].dim(), i_tuple[m - 1].dim());
        e
    }

    pub fn multiply_basis(&self, x: &ExtendedBasisElement, y: &ExtendedBasisElement) -> Result<ExtendedElement> {
        self.check(x)?;
        self.check(y)?;
        let q = self.q();
        let a0 = self.prefactor_exponent(x, y);
        let terms = product_terms(&self.ctx, x.modules.modules(), y.modules.modules(), Pruning::Embeddable)?;
        let mut out = Element::zero(q);
        for t in terms {
            let e = a0 + self.inner_exponent(&x.alphas, &y.alphas, &t.i, &t.m);
            let alphas: Vec<HalfKClass> = (0..self.m)
                .map(|i| &(&t.i[i].dim().doubled() + &x.alphas[i]) + &y.alphas[i])
                .collect();
            let basis = ExtendedBasisElement::new(PeriodicObject::new(t.m), alphas);
            out.add_term(basis, Scalar::v_power(q, e).scale(&t.coeff));
        }
        Ok(out)
    }

    pub fn multiply(&self, x: &ExtendedElement, y: &ExtendedElement) -> Result<ExtendedElement> {
        x.bilinear(y, |a, b| self.multiply_basis(a, b))
    }

    fn check(&self, x: &ExtendedBasisElement) -> Result<()> {
        if x.period() != self.m {
            return Err(HallError::Invalid(format!(
                "basis element has period {}, algebra has period {}",
                x.period(),
                self.m
            )));
        }
        Ok(())
    }
}
