//! Shared structure constants of the periodic products: the sum over
//! tuples `(I_i), (M_i)` of `prod_i H^{M_i}_{I_i[1] ⊕ A_i, B_i ⊕ I_{i-1}[-1]} / a_{I_i}`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::derived::FiberCache;
use crate::error::Result;
use crate::repcat::{IsoClass, KClass, RepCategory};

/// A category together with its cache of module-valued structure
/// constants. Build one per `(quiver, q)` and share it.
pub struct HallContext {
    cat: RepCategory,
    fibers: FiberCache,
}

impl HallContext {
    pub fn new(cat: RepCategory) -> Self {
        HallContext { cat, fibers: FiberCache::new() }
    }

    pub fn cat(&self) -> &RepCategory {
        &self.cat
    }

    pub fn q(&self) -> u32 {
        self.cat.q()
    }

    pub fn fibers(&self) -> &FiberCache {
        &self.fibers
    }
}

/// One `(I, M)` summand and its rational weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTerm {
    pub i: Vec<IsoClass>,
    pub m: Vec<IsoClass>,
    pub coeff: BigRational,
}

/// Which `I`-tuples to visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pruning {
    /// `dim I_i <= min(dim B_i, dim A_{i+1})`: `I_i` must embed in `B_i`
    /// and be a quotient of `A_{i+1}`.
    Embeddable,
    /// `dim I_i <= dim B_i + dim A_{i+1}`; a strictly larger search used to
    /// confirm that the pruned terms vanish.
    Loose,
}

/// All nonzero terms of the product of `u_A` and `u_B`, sorted.
pub fn product_terms(ctx: &HallContext, a: &[IsoClass], b: &[IsoClass], pruning: Pruning) -> Result<Vec<ProductTerm>> {
    let cat = ctx.cat();
    let m = a.len();
    assert_eq!(m, b.len(), "period mismatch");
    let mut candidates: Vec<Vec<IsoClass>> = Vec::with_capacity(m);
    for i in 0..m {
        let (bi, an) = (b[i].dim(), a[(i + 1) % m].dim());
        let bound = match pruning {
            Pruning::Embeddable => bi.min(an),
            Pruning::Loose => bi + an,
        };
        candidates.push(cat.enumerate_iso_classes(&bound)?);
    }

    let mut out = Vec::new();
    let mut idx = vec![0usize; m];
    loop {
        let tuple: Vec<IsoClass> = (0..m).map(|i| candidates[i][idx[i]].clone()).collect();
        collect_terms(ctx, a, b, &tuple, &mut out)?;
        // odometer
        let mut k = 0;
        while k < m {
            idx[k] += 1;
            if idx[k] < candidates[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == m {
            break;
        }
    }
    out.sort_by(|x, y| (&x.i, &x.m).cmp(&(&y.i, &y.m)));
    Ok(out)
}

fn collect_terms(
    ctx: &HallContext,
    a: &[IsoClass],
    b: &[IsoClass],
    i_tuple: &[IsoClass],
    out: &mut Vec<ProductTerm>,
) -> Result<()> {
    let cat = ctx.cat();
    let m = a.len();
    let mut per_degree = Vec::with_capacity(m);
    let mut weight = BigRational::one();
    for i in 0..m {
        let prev = &i_tuple[(i + m - 1) % m];
        let f = ctx.fibers().module_fibers(cat, &a[i], &b[i], &i_tuple[i], prev)?;
        if f.is_empty() {
            return Ok(());
        }
        per_degree.push(f);
        weight /= BigRational::from_integer(cat.aut_count(&i_tuple[i])?.into());
    }
    let mut idx = vec![0usize; m];
    loop {
        let mut coeff = weight.clone();
        let mut ms = Vec::with_capacity(m);
        for i in 0..m {
            let (mi, h) = &per_degree[i][idx[i]];
            coeff *= h;
            ms.push(mi.clone());
        }
        if !coeff.is_zero() {
            out.push(ProductTerm { i: i_tuple.to_vec(), m: ms, coeff });
        }
        let mut k = 0;
        while k < m {
            idx[k] += 1;
            if idx[k] < per_degree[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == m {
            return Ok(());
        }
    }
}

/// `sum_{i=1}^{m-1} f(i)`, read as `f(1 mod m) = f(0)` when `m = 1`.
pub fn wrapped_sum(m: usize, f: impl Fn(usize) -> i64) -> i64 {
    if m == 1 {
        f(0)
    } else {
        (1..m).map(f).sum()
    }
}

/// `sum_{k=0}^{m-1} (-1)^k x_{i+k}` for a tuple of classes.
pub fn alternating_class(classes: &[KClass], i: usize) -> KClass {
    let m = classes.len();
    let n = classes[0].len();
    (0..m).fold(KClass::zero(n), |acc, k| {
        let c = &classes[(i + k) % m];
        if k % 2 == 0 {
            &acc + c
        } else {
            &acc - c
        }
    })
}
