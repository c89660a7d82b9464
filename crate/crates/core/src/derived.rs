//! Bounded derived category of `rep(Q)` at desk scale.
//!
//! Every object of `D^b` is a sum of shifted stalks. Morphisms are modelled
//! by chain maps between complexes of projectives modulo null-homotopic
//! maps, so cones are literal mapping cones whose homology is decomposed by
//! the category's canonicalizer.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{HallError, Result};
use crate::fq::{Fq, Mat};
use crate::repcat::rep::{subquotient, zero_morphism, Morphism, Rep};
use crate::repcat::{IsoClass, KClass, Quiver, RepCategory};
use crate::scalar::{rational_q_power, Scalar};

/// `⊕_i X_i[i]`, zero parts omitted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedObject {
    n: usize,
    parts: BTreeMap<i32, IsoClass>,
}

impl GradedObject {
    pub fn zero(n: usize) -> Self {
        GradedObject { n, parts: BTreeMap::new() }
    }

    /// The stalk `m[degree]`.
    pub fn stalk(m: IsoClass, degree: i32) -> Self {
        let mut g = GradedObject::zero(m.dim().len());
        g.insert(degree, m);
        g
    }

    pub fn from_parts(n: usize, parts: impl IntoIterator<Item = (i32, IsoClass)>) -> Self {
        let mut g = GradedObject::zero(n);
        for (d, m) in parts {
            g.insert(d, m);
        }
        g
    }

    fn insert(&mut self, degree: i32, m: IsoClass) {
        if m.is_zero() {
            return;
        }
        let merged = match self.parts.remove(&degree) {
            Some(old) => old.direct_sum(&m),
            None => m,
        };
        self.parts.insert(degree, merged);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> impl Iterator<Item = (i32, &IsoClass)> {
        self.parts.iter().map(|(&d, m)| (d, m))
    }

    pub fn part(&self, degree: i32) -> Option<&IsoClass> {
        self.parts.get(&degree)
    }

    /// `X[k]`: the part in degree `i` moves to degree `i + k`.
    pub fn shift(&self, k: i32) -> GradedObject {
        GradedObject { n: self.n, parts: self.parts.iter().map(|(&d, m)| (d + k, m.clone())).collect() }
    }

    pub fn direct_sum(&self, other: &GradedObject) -> GradedObject {
        let mut g = self.clone();
        for (d, m) in other.parts() {
            g.insert(d, m.clone());
        }
        g
    }

    /// The module part if the object is concentrated in degree 0.
    pub fn as_module(&self) -> Option<IsoClass> {
        match self.parts.len() {
            0 => Some(IsoClass::zero(self.n)),
            1 => self.parts.get(&0).cloned(),
            _ => None,
        }
    }

    /// Class in `K(A)`: `sum_i (-1)^i [X_i]`.
    pub fn k_class(&self) -> KClass {
        self.parts.iter().fold(KClass::zero(self.n), |acc, (&d, m)| {
            if d.rem_euclid(2) == 0 {
                &acc + m.dim()
            } else {
                &acc - m.dim()
            }
        })
    }

    /// Parses `S1+S2@0 + P1@2`. Labels accumulate until an `@degree`
    /// marker; trailing labels without one sit in degree 0. `0` is the
    /// zero object.
    pub fn parse(cat: &RepCategory, s: &str) -> Result<GradedObject> {
        let n = cat.vertex_count();
        let mut g = GradedObject::zero(n);
        let mut pending: Vec<&str> = Vec::new();
        let s = s.trim();
        if s.is_empty() {
            return Err(HallError::Parse("empty graded object".into()));
        }
        for item in s.split('+').map(str::trim) {
            if item.is_empty() {
                return Err(HallError::Parse(format!("graded object `{s}`: empty summand")));
            }
            match item.split_once('@') {
                Some((label, deg)) => {
                    let deg: i32 = deg.trim().parse().map_err(|_| {
                        HallError::Parse(format!("graded object `{s}`: bad degree `{deg}`"))
                    })?;
                    pending.push(label.trim());
                    for l in pending.drain(..) {
                        g.insert(deg, cat.parse_class(l)?);
                    }
                }
                None => pending.push(item),
            }
        }
        for l in pending {
            g.insert(0, cat.parse_class(l)?);
        }
        Ok(g)
    }
}

impl fmt::Display for GradedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.parts.iter().map(|(d, m)| format!("{m}@{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for GradedObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `dim Hom_{D^b}(X, Y)`; only `Hom` and `Ext^1` between parts contribute.
pub fn db_hom_dim(cat: &RepCategory, x: &GradedObject, y: &GradedObject) -> Result<usize> {
    let mut total = 0;
    for (j, a) in x.parts() {
        for (k, b) in y.parts() {
            match k - j {
                0 => total += cat.hom_dim(a, b)?,
                1 => total += cat.ext_dim(a, b)?,
                _ => {}
            }
        }
    }
    Ok(total)
}

/// Exponent `n` of `{X, Y} = q^n = prod_{i>0} |Hom(X[i], Y)|^{(-1)^i}`.
pub fn brace_exponent(cat: &RepCategory, x: &GradedObject, y: &GradedObject) -> Result<i64> {
    let (Some(xmin), Some(ymax)) = (x.parts.keys().next(), y.parts.keys().next_back()) else {
        return Ok(0);
    };
    let mut e = 0i64;
    for i in 1..=(ymax - xmin).max(0) {
        let h = db_hom_dim(cat, &x.shift(i), y)? as i64;
        e += if i % 2 == 0 { h } else { -h };
    }
    Ok(e)
}

pub fn brace_factor(cat: &RepCategory, x: &GradedObject, y: &GradedObject) -> Result<Scalar> {
    let e = brace_exponent(cat, x, y)?;
    Ok(Scalar::from_rational(cat.q(), rational_q_power(cat.q(), e)))
}

/// One degree of a complex of projectives: the tops of its indecomposable
/// summands and the explicit representation they add up to.
#[derive(Clone, Debug)]
struct ProjTerm {
    tops: Vec<usize>,
    rep: Rep,
    /// `offsets[k][v]`: first basis index at vertex `v` of summand `k`.
    offsets: Vec<Vec<usize>>,
}

impl ProjTerm {
    fn new(cat: &RepCategory, tops: Vec<usize>) -> Self {
        let n = cat.vertex_count();
        let mut rep = Rep::zero(cat.quiver(), vec![0; n]);
        let mut offsets = Vec::with_capacity(tops.len());
        for &t in &tops {
            offsets.push(rep.dims().to_vec());
            rep = rep.direct_sum(cat.projective(t));
        }
        ProjTerm { tops, rep, offsets }
    }

    fn empty(cat: &RepCategory) -> Self {
        ProjTerm::new(cat, Vec::new())
    }
}

/// The morphism `⊕_k P_{tops[k]} -> target` sending the generator of the
/// `k`-th summand to `images[k]`.
fn from_generators(quiver: &Quiver, fq: &Fq, source: &ProjTerm, target: &Rep, images: &[Vec<u32>]) -> Morphism {
    let mut f = zero_morphism(&source.rep, target);
    for (k, &t) in source.tops.iter().enumerate() {
        let mut seen = vec![0usize; quiver.vertex_count()];
        for p in quiver.paths_from(t) {
            let col = source.offsets[k][p.end] + seen[p.end];
            seen[p.end] += 1;
            let image = target.apply_path(fq, &p.arrows, &images[k]);
            for (r, &val) in image.iter().enumerate() {
                f[p.end][(r, col)] = val;
            }
        }
    }
    f
}

/// A bounded complex of projectives `C^lo -> ... -> C^hi` (cohomological
/// degrees). Terms outside the range are zero.
#[derive(Clone, Debug)]
pub struct ProjComplex {
    lo: i32,
    terms: Vec<ProjTerm>,
    /// `diffs[k]: terms[k] -> terms[k + 1]`; the last one is the zero map
    /// into the zero term.
    diffs: Vec<Morphism>,
}

impl ProjComplex {
    fn zero(cat: &RepCategory) -> Self {
        ProjComplex { lo: 0, terms: Vec::new(), diffs: Vec::new() }.padded(cat, 0, 0)
    }

    fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    fn term(&self, n: i32) -> Option<&ProjTerm> {
        if n < self.lo {
            return None;
        }
        self.terms.get((n - self.lo) as usize)
    }

    fn term_rep(&self, cat: &RepCategory, n: i32) -> Rep {
        self.term(n).map(|t| t.rep.clone()).unwrap_or_else(|| Rep::zero(cat.quiver(), vec![0; cat.vertex_count()]))
    }

    fn diff(&self, cat: &RepCategory, n: i32) -> Morphism {
        match (self.term(n), self.term(n + 1)) {
            (Some(_), Some(_)) => self.diffs[(n - self.lo) as usize].clone(),
            _ => zero_morphism(&self.term_rep(cat, n), &self.term_rep(cat, n + 1)),
        }
    }

    /// Extends the stored range to cover `[lo, hi]` with zero terms.
    fn padded(mut self, cat: &RepCategory, lo: i32, hi: i32) -> Self {
        let empty = ProjTerm::empty(cat);
        if self.terms.is_empty() {
            self.lo = lo;
            self.terms.push(empty.clone());
            self.diffs.push(zero_morphism(&empty.rep, &empty.rep));
        }
        while self.lo > lo {
            let d = zero_morphism(&empty.rep, &self.terms[0].rep);
            self.terms.insert(0, empty.clone());
            self.diffs.insert(0, d);
            self.lo -= 1;
        }
        // The last stored differential already targets a zero term.
        while self.hi() < hi {
            self.terms.push(empty.clone());
            self.diffs.push(zero_morphism(&empty.rep, &empty.rep));
        }
        self
    }

    /// Standard resolution `⊕_{a: s->t} P_t ⊗ M_s -> ⊕_i P_i ⊗ M_i` of a
    /// module, in degrees `-1, 0`.
    pub fn resolution(cat: &RepCategory, m: &Rep) -> Self {
        let quiver = cat.quiver();
        let fq = cat.fq();
        let n = cat.vertex_count();
        let mut top0 = Vec::new();
        let mut copy_index: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, copies) in copy_index.iter_mut().enumerate() {
            for _ in 0..m.dims()[i] {
                copies.push(top0.len());
                top0.push(i);
            }
        }
        let t0 = ProjTerm::new(cat, top0);
        let mut top1 = Vec::new();
        let mut images = Vec::new();
        for (a, &(s, t)) in quiver.arrows().iter().enumerate() {
            let path_pos = quiver
                .paths_from(s)
                .iter()
                .filter(|p| p.end == t)
                .position(|p| p.arrows == [a])
                .expect("arrow is a path");
            for mi in 0..m.dims()[s] {
                top1.push(t);
                let mut x = vec![0u32; t0.rep.dims()[t]];
                let k = copy_index[s][mi];
                x[t0.offsets[k][t] + path_pos] = 1;
                for (c, &kc) in copy_index[t].iter().enumerate() {
                    let idx = t0.offsets[kc][t];
                    x[idx] = fq.sub(x[idx], m.map(a)[(c, mi)]);
                }
                images.push(x);
            }
        }
        let t1 = ProjTerm::new(cat, top1);
        let d = from_generators(quiver, fq, &t1, &t0.rep, &images);
        let last = zero_morphism(&t0.rep, &Rep::zero(quiver, vec![0; n]));
        ProjComplex { lo: -1, terms: vec![t1, t0], diffs: vec![d, last] }
    }

    /// `C[k]`: `(C[k])^n = C^{n+k}`, differential multiplied by `(-1)^k`.
    pub fn shift(&self, fq: &Fq, k: i32) -> Self {
        let diffs = if k.rem_euclid(2) == 0 {
            self.diffs.clone()
        } else {
            self.diffs.iter().map(|d| d.iter().map(|m| fq.mat_scale(m, fq.neg(1))).collect()).collect()
        };
        ProjComplex { lo: self.lo - k, terms: self.terms.clone(), diffs }
    }

    pub fn direct_sum(&self, cat: &RepCategory, other: &ProjComplex) -> Self {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let a = self.clone().padded(cat, lo, hi);
        let b = other.clone().padded(cat, lo, hi);
        let mut terms = Vec::new();
        for (x, y) in a.terms.iter().zip(&b.terms) {
            let mut tops = x.tops.clone();
            tops.extend_from_slice(&y.tops);
            terms.push(ProjTerm::new(cat, tops));
        }
        // Summand order inside each term is (all of a, all of b), and the
        // per-vertex bases of a direct sum concatenate in the same order.
        let diffs = a.diffs.iter().zip(&b.diffs).map(|(f, g)| f.iter().zip(g).map(|(x, y)| x.direct_sum(y)).collect()).collect();
        ProjComplex { lo, terms, diffs }
    }

    /// `P(X)`: the sum of shifted resolutions of the parts of `X`.
    pub fn of(cat: &RepCategory, x: &GradedObject) -> Result<Self> {
        let mut c = ProjComplex::zero(cat);
        for (d, m) in x.parts() {
            let r = ProjComplex::resolution(cat, &cat.class_rep(m)?).shift(cat.fq(), d);
            c = c.direct_sum(cat, &r);
        }
        Ok(c)
    }

    /// `d(e_k)` for the generator of summand `k` of degree `n`.
    fn generator_image(&self, cat: &RepCategory, n: i32, k: usize) -> Vec<u32> {
        let term = self.term(n).expect("degree in range");
        let t = term.tops[k];
        let col = term.offsets[k][t];
        let d = self.diff(cat, n);
        d[t].col(col)
    }

    /// Homology in degree `n` as an explicit representation.
    pub fn homology(&self, cat: &RepCategory, n: i32) -> Rep {
        let quiver = cat.quiver();
        let fq = cat.fq();
        let ambient = self.term_rep(cat, n);
        let d_in = self.diff(cat, n - 1);
        let d_out = self.diff(cat, n);
        let nv = cat.vertex_count();
        let small: Vec<Vec<Vec<u32>>> = (0..nv).map(|v| fq.column_space(&d_in[v])).collect();
        let big: Vec<Vec<Vec<u32>>> = (0..nv).map(|v| fq.nullspace(&d_out[v])).collect();
        subquotient(quiver, fq, &ambient, &small, &big)
    }

    pub fn is_complex(&self, cat: &RepCategory) -> bool {
        let fq = cat.fq();
        (self.lo - 1..=self.hi()).all(|n| {
            let a = self.diff(cat, n);
            let b = self.diff(cat, n + 1);
            b.iter().zip(&a).all(|(x, y)| fq.mat_mul(x, y).is_zero())
        })
    }

    /// Homology as a graded object: degree-`n` homology of a complex sits at
    /// shift `-n`.
    pub fn homology_object(&self, cat: &RepCategory) -> Result<GradedObject> {
        let mut g = GradedObject::zero(cat.vertex_count());
        for n in self.lo..=self.hi() {
            let h = self.homology(cat, n);
            if !h.is_zero() {
                g.insert(-n, cat.canonicalize(&h)?);
            }
        }
        Ok(g)
    }
}

/// A chain map: one morphism per degree of the source complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    lo: i32,
    maps: Vec<Morphism>,
}

impl ChainMap {
    fn at(&self, n: i32) -> Option<&Morphism> {
        if n < self.lo {
            return None;
        }
        self.maps.get((n - self.lo) as usize)
    }
}

/// How homotopy classes are counted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountMode {
    /// Enumerate a complement of the null-homotopic maps inside the chain
    /// maps; each homotopy class is visited exactly once.
    Quotient,
    /// Enumerate every chain map and divide by the number of null-homotopic
    /// ones.
    FullSpace,
}

/// `Hom_K(P(X), P(Y))` in generator coordinates: a chain map is fixed by
/// the images of the generators of every source term.
pub struct MorphismSpace<'a> {
    cat: &'a RepCategory,
    source: ProjComplex,
    target: ProjComplex,
    /// `(degree, summand, start, len)` for each coordinate block.
    layout: Vec<(i32, usize, usize, usize)>,
    coord_len: usize,
    cycles: Vec<Vec<u32>>,
    boundaries: Vec<Vec<u32>>,
    complement: Vec<Vec<u32>>,
}

impl<'a> MorphismSpace<'a> {
    pub fn new(cat: &'a RepCategory, source: ProjComplex, target: ProjComplex) -> Self {
        let fq = *cat.fq();
        let mut layout = Vec::new();
        let mut coord_len = 0;
        for n in source.lo..=source.hi() {
            let term = source.term(n).unwrap();
            let tgt = target.term_rep(cat, n);
            for (k, &t) in term.tops.iter().enumerate() {
                let len = tgt.dims()[t];
                layout.push((n, k, coord_len, len));
                coord_len += len;
            }
        }
        let mut space = MorphismSpace {
            cat,
            source,
            target,
            layout,
            coord_len,
            cycles: Vec::new(),
            boundaries: Vec::new(),
            complement: Vec::new(),
        };

        // Chain condition, column by column.
        let unit = |j: usize, len: usize| {
            let mut e = vec![0u32; len];
            e[j] = 1;
            e
        };
        let residual_cols: Vec<Vec<u32>> =
            (0..coord_len).map(|j| space.chain_residual(&unit(j, coord_len))).collect();
        let rows = residual_cols.first().map_or(0, Vec::len);
        let residual = Mat::from_cols(&residual_cols, rows);
        space.cycles = if rows == 0 {
            (0..coord_len).map(|j| unit(j, coord_len)).collect()
        } else {
            fq.nullspace(&residual)
        };

        // Null-homotopic maps.
        let mut h_layout = Vec::new();
        let mut h_len = 0;
        for n in space.source.lo..=space.source.hi() {
            let term = space.source.term(n).unwrap();
            let tgt = space.target.term_rep(cat, n - 1);
            for (k, &t) in term.tops.iter().enumerate() {
                let len = tgt.dims()[t];
                h_layout.push((n, k, h_len, len));
                h_len += len;
            }
        }
        let images: Vec<Vec<u32>> =
            (0..h_len).map(|j| space.homotopy_image(&h_layout, &unit(j, h_len))).collect();
        space.boundaries = fq.span_basis(&images, coord_len);
        space.complement = fq.extend_basis(&space.boundaries, &space.cycles, coord_len);
        space
    }

    pub fn coord_len(&self) -> usize {
        self.coord_len
    }

    pub fn cycle_dim(&self) -> usize {
        self.cycles.len()
    }

    pub fn boundary_dim(&self) -> usize {
        self.boundaries.len()
    }

    /// Dimension of the space of homotopy classes.
    pub fn class_dim(&self) -> usize {
        self.complement.len()
    }

    pub fn boundaries(&self) -> &[Vec<u32>] {
        &self.boundaries
    }

    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    fn block<'v>(&self, coords: &'v [u32], start: usize, len: usize) -> &'v [u32] {
        &coords[start..start + len]
    }

    /// Per-degree morphisms for a coordinate vector whose blocks are laid
    /// out by `layout` and land in `target` shifted by `offset` degrees.
    fn morphisms(&self, layout: &[(i32, usize, usize, usize)], coords: &[u32], offset: i32) -> ChainMap {
        let cat = self.cat;
        let mut maps = Vec::new();
        for n in self.source.lo..=self.source.hi() {
            let term = self.source.term(n).unwrap();
            let tgt = self.target.term_rep(cat, n + offset);
            let images: Vec<Vec<u32>> = layout
                .iter()
                .filter(|(d, ..)| *d == n)
                .map(|&(_, _, start, len)| self.block(coords, start, len).to_vec())
                .collect();
            maps.push(from_generators(cat.quiver(), cat.fq(), term, &tgt, &images));
        }
        ChainMap { lo: self.source.lo, maps }
    }

    /// `d_D f^n - f^{n+1} d_C` evaluated on every generator, flattened.
    fn chain_residual(&self, coords: &[u32]) -> Vec<u32> {
        let cat = self.cat;
        let fq = cat.fq();
        let f = self.morphisms(&self.layout, coords, 0);
        let mut out = Vec::new();
        for &(n, k, start, len) in &self.layout {
            let t = self.source.term(n).unwrap().tops[k];
            let x = self.block(coords, start, len);
            let dd = self.target.diff(cat, n);
            let mut r = fq.mat_vec(&dd[t], x);
            if let Some(next) = f.at(n + 1) {
                let y = self.source.generator_image(cat, n, k);
                let fy = fq.mat_vec(&next[t], &y);
                for (a, b) in r.iter_mut().zip(fy) {
                    *a = fq.sub(*a, b);
                }
            }
            out.extend(r);
        }
        out
    }

    /// Generator coordinates of `d_D h + h d_C`.
    fn homotopy_image(&self, h_layout: &[(i32, usize, usize, usize)], h: &[u32]) -> Vec<u32> {
        let cat = self.cat;
        let fq = cat.fq();
        let hm = self.morphisms(h_layout, h, -1);
        let mut out = Vec::with_capacity(self.coord_len);
        for (&(n, k, _, len), &(hn, hk, hs, hl)) in self.layout.iter().zip(h_layout) {
            debug_assert_eq!((n, k), (hn, hk));
            let t = self.source.term(n).unwrap().tops[k];
            let dd = self.target.diff(cat, n - 1);
            let mut r = fq.mat_vec(&dd[t], &h[hs..hs + hl]);
            if let Some(next) = hm.at(n + 1) {
                let y = self.source.generator_image(cat, n, k);
                let hy = fq.mat_vec(&next[t], &y);
                for (a, b) in r.iter_mut().zip(hy) {
                    *a = fq.add(*a, b);
                }
            }
            debug_assert_eq!(r.len(), len);
            out.extend(r);
        }
        out
    }

    pub fn chain_map(&self, coords: &[u32]) -> ChainMap {
        self.morphisms(&self.layout, coords, 0)
    }

    pub fn is_chain_map(&self, coords: &[u32]) -> bool {
        self.chain_residual(coords).iter().all(|&x| x == 0)
    }

    /// `sum_j c_j basis_j`.
    pub fn combine(&self, basis: &[Vec<u32>], coeffs: &[u32]) -> Vec<u32> {
        let fq = self.cat.fq();
        let mut x = vec![0u32; self.coord_len];
        for (b, &c) in basis.iter().zip(coeffs) {
            if c != 0 {
                for (xi, &bi) in x.iter_mut().zip(b) {
                    *xi = fq.add(*xi, fq.mul(c, bi));
                }
            }
        }
        x
    }

    /// Mapping cone `Cone^n = C^{n+1} ⊕ D^n`, `d = [[-d_C, 0], [f, d_D]]`.
    pub fn cone(&self, coords: &[u32]) -> ProjComplex {
        let cat = self.cat;
        let fq = cat.fq();
        let f = self.chain_map(coords);
        let lo = (self.source.lo - 1).min(self.target.lo);
        let hi = (self.source.hi() - 1).max(self.target.hi());
        let mut terms = Vec::new();
        for n in lo..=hi + 1 {
            let mut tops = self.source.term(n + 1).map(|t| t.tops.clone()).unwrap_or_default();
            tops.extend(self.target.term(n).map(|t| t.tops.clone()).unwrap_or_default());
            terms.push(ProjTerm::new(cat, tops));
        }
        let mut diffs = Vec::new();
        for n in lo..=hi + 1 {
            let src = &terms[(n - lo) as usize].rep;
            let tgt = match terms.get((n - lo + 1) as usize) {
                Some(t) => t.rep.clone(),
                None => Rep::zero(cat.quiver(), vec![0; cat.vertex_count()]),
            };
            if n == hi + 1 {
                diffs.push(zero_morphism(src, &tgt));
                continue;
            }
            let dc = self.source.diff(cat, n + 1);
            let dd = self.target.diff(cat, n);
            let c1 = self.source.term_rep(cat, n + 1);
            let c2 = self.source.term_rep(cat, n + 2);
            let fz = f.at(n + 1).cloned().unwrap_or_else(|| zero_morphism(&c1, &self.target.term_rep(cat, n + 1)));
            let mut d = zero_morphism(src, &tgt);
            for v in 0..cat.vertex_count() {
                let (a0, a1) = (c1.dims()[v], c2.dims()[v]);
                let m = &mut d[v];
                m.set_block(0, 0, &fq.mat_scale(&dc[v], fq.neg(1)));
                m.set_block(a1, 0, &fz[v]);
                m.set_block(a1, a0, &dd[v]);
            }
            diffs.push(d);
        }
        ProjComplex { lo, terms, diffs }
    }

    /// `L` with `Cone(f) ≅ L[1]`.
    pub fn cone_class(&self, coords: &[u32]) -> Result<GradedObject> {
        Ok(self.cone(coords).homology_object(self.cat)?.shift(-1))
    }

    /// Number of homotopy classes per cone class `L`.
    pub fn fibers(&self, mode: CountMode) -> Result<BTreeMap<GradedObject, BigUint>> {
        let basis = match mode {
            CountMode::Quotient => &self.complement,
            CountMode::FullSpace => &self.cycles,
        };
        let cap = self.cat.limits().max_chain_dim;
        if basis.len() > cap as usize {
            return Err(HallError::ResourceLimit {
                what: "morphism space dimension",
                needed: basis.len() as u64,
                cap: cap as u64,
            });
        }
        let q = self.cat.q() as u64;
        let total = q.pow(basis.len() as u32);
        let dim = basis.len();
        let counts = (0..total)
            .into_par_iter()
            .map(|idx| {
                let mut c = vec![0u32; dim];
                let mut r = idx;
                for slot in c.iter_mut().rev() {
                    *slot = (r % q) as u32;
                    r /= q;
                }
                self.cone_class(&self.combine(basis, &c))
            })
            .try_fold(HashMap::new, |mut acc: HashMap<GradedObject, u64>, l| {
                *acc.entry(l?).or_insert(0) += 1;
                Ok::<_, HallError>(acc)
            })
            .try_reduce(HashMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                Ok(a)
            })?;
        let divisor = match mode {
            CountMode::Quotient => BigUint::one(),
            CountMode::FullSpace => BigUint::from(self.cat.q()).pow(self.boundaries.len() as u32),
        };
        let mut out = BTreeMap::new();
        for (l, c) in counts {
            let c = BigUint::from(c);
            if !(&c % &divisor).is_zero() {
                return Err(HallError::Invalid(format!(
                    "cone class {l} is not constant on homotopy classes"
                )));
            }
            out.insert(l, c / &divisor);
        }
        Ok(out)
    }
}

/// The morphism space `Hom(X, Y[1])` modelled on `P(X) -> P(Y[1])`.
pub fn extension_space<'a>(cat: &'a RepCategory, x: &GradedObject, y: &GradedObject) -> Result<MorphismSpace<'a>> {
    let px = ProjComplex::of(cat, x)?;
    let py = ProjComplex::of(cat, &y.shift(1))?;
    Ok(MorphismSpace::new(cat, px, py))
}

/// `L -> |Ext^1(X, Y)_L|`: number of morphisms `X -> Y[1]` in `D^b` whose
/// cone is `L[1]`.
pub fn ext_fibers(cat: &RepCategory, x: &GradedObject, y: &GradedObject, mode: CountMode) -> Result<BTreeMap<GradedObject, BigUint>> {
    extension_space(cat, x, y)?.fibers(mode)
}

/// `H^L_{X,Y} = |Ext^1(X,Y)_L| / |Hom(X,Y)| / {X,Y}`.
pub fn derived_hall_number(cat: &RepCategory, x: &GradedObject, y: &GradedObject, l: &GradedObject) -> Result<Scalar> {
    let fibers = ext_fibers(cat, x, y, CountMode::Quotient)?;
    let count = fibers.get(l).cloned().unwrap_or_default();
    Ok(Scalar::from_rational(cat.q(), hall_normalize(cat, x, y, &count)?))
}

fn hall_normalize(cat: &RepCategory, x: &GradedObject, y: &GradedObject, count: &BigUint) -> Result<BigRational> {
    let e = -(db_hom_dim(cat, x, y)? as i64) - brace_exponent(cat, x, y)?;
    Ok(BigRational::from_integer(count.clone().into()) * rational_q_power(cat.q(), e))
}

type FiberKey = (IsoClass, IsoClass, IsoClass, IsoClass);

type Fiber = Vec<(IsoClass, BigRational)>;

/// Cache of the module-valued structure constants
/// `M -> H^M_{I[1] ⊕ A, B ⊕ J[-1]}`.
#[derive(Default)]
pub struct FiberCache {
    map: RwLock<HashMap<FiberKey, std::sync::Arc<Fiber>>>,
}

impl FiberCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every module `M` with `H^M_{I[1] ⊕ A, B ⊕ J[-1]} != 0` and its value.
    pub fn module_fibers(
        &self,
        cat: &RepCategory,
        a: &IsoClass,
        b: &IsoClass,
        i: &IsoClass,
        j: &IsoClass,
    ) -> Result<std::sync::Arc<Fiber>> {
        let key = (a.clone(), b.clone(), i.clone(), j.clone());
        if let Some(v) = self.map.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let x = GradedObject::stalk(i.clone(), 1).direct_sum(&GradedObject::stalk(a.clone(), 0));
        let y = GradedObject::stalk(b.clone(), 0).direct_sum(&GradedObject::stalk(j.clone(), -1));
        let fibers = ext_fibers(cat, &x, &y, CountMode::Quotient)?;
        let mut out = Vec::new();
        for (l, count) in fibers {
            if let Some(m) = l.as_module() {
                out.push((m, hall_normalize(cat, &x, &y, &count)?));
            }
        }
        let v = std::sync::Arc::new(out);
        self.map.write().unwrap().insert(key, v.clone());
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.map.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::VectorIter;

    fn cat(name: &str, q: u32) -> RepCategory {
        RepCategory::new(Quiver::preset(name).unwrap(), q).unwrap()
    }

    fn g(c: &RepCategory, s: &str) -> GradedObject {
        GradedObject::parse(c, s).unwrap()
    }

    #[test]
    fn resolutions_resolve() {
        for name in ["A1", "A2", "A3"] {
            let c = cat(name, 2);
            let n = c.vertex_count();
            for class in c.enumerate_iso_classes(&KClass(vec![2; n])).unwrap() {
                let p = ProjComplex::resolution(&c, &c.class_rep(&class).unwrap());
                assert!(p.is_complex(&c));
                assert_eq!(p.homology_object(&c).unwrap(), GradedObject::stalk(class.clone(), 0));
                let shifted = p.shift(c.fq(), 3);
                assert!(shifted.is_complex(&c));
                assert_eq!(shifted.homology_object(&c).unwrap(), GradedObject::stalk(class, 3));
            }
        }
    }

    #[test]
    fn graded_literals() {
        let c = cat("A2", 2);
        let x = g(&c, "S1+S2@0 + P1@2");
        assert_eq!(x.to_string(), "S1+S2@0 + P1@2");
        assert_eq!(g(&c, "S1 + S2"), g(&c, "S1+S2@0"));
        assert!(g(&c, "0").is_zero());
        assert_eq!(x.k_class(), KClass(vec![2, 2]));
        assert_eq!(g(&c, "S1@1").k_class(), KClass(vec![-1, 0]));
        assert!(GradedObject::parse(&c, "S1@x").is_err());
    }

    #[test]
    fn hom_dims() {
        let c = cat("A2", 2);
        assert_eq!(db_hom_dim(&c, &g(&c, "S1"), &g(&c, "S2@1")).unwrap(), 1);
        assert_eq!(db_hom_dim(&c, &g(&c, "S1@1"), &g(&c, "S1")).unwrap(), 0);
        assert_eq!(db_hom_dim(&c, &g(&c, "P1@1"), &g(&c, "P1@1")).unwrap(), 1);
    }

    #[test]
    fn brace_values() {
        let c = cat("A2", 3);
        assert_eq!(brace_exponent(&c, &g(&c, "S1+P1"), &g(&c, "S2+P1")).unwrap(), 0);
        // {A, B[1]} = q^{-dim Hom(A,B)}
        assert_eq!(brace_exponent(&c, &g(&c, "P1"), &g(&c, "P1@1")).unwrap(), -1);
        assert_eq!(brace_exponent(&c, &g(&c, "S1"), &g(&c, "S2+S1@1")).unwrap(), -1);
        assert_eq!(brace_exponent(&c, &g(&c, "0"), &g(&c, "S2@4")).unwrap(), 0);
    }

    #[test]
    fn morphism_space_dimension_matches_hom() {
        let c = cat("A2", 2);
        let objs = ["0", "S1", "S2", "P1", "S1@1", "S2+P1@-1", "S1@0 + S2@1"];
        for xs in objs {
            for ys in objs {
                let (x, y) = (g(&c, xs), g(&c, ys));
                let space = extension_space(&c, &x, &y).unwrap();
                assert_eq!(space.class_dim(), db_hom_dim(&c, &x, &y.shift(1)).unwrap(), "{xs} -> {ys}[1]");
            }
        }
    }

    #[test]
    fn cone_examples() {
        let c = cat("A2", 2);
        let (s1, s2) = (g(&c, "S1"), g(&c, "S2"));
        let space = extension_space(&c, &s1, &s2).unwrap();
        let zero = vec![0; space.coord_len()];
        assert_eq!(space.cone_class(&zero).unwrap(), g(&c, "S2+S1"));
        let f = space.combine(&space.complement, &[1]);
        assert_eq!(space.cone_class(&f).unwrap(), g(&c, "P1"));

        // identity on I[1] has zero cone
        let i1 = g(&c, "S1@1");
        let space = extension_space(&c, &i1, &g(&c, "S1")).unwrap();
        let counts = space.fibers(CountMode::Quotient).unwrap();
        assert_eq!(counts.get(&g(&c, "0")), Some(&BigUint::from(1u32)));
    }

    #[test]
    fn hall_number_examples() {
        for q in [2u32, 3] {
            let c = cat("A2", q);
            let h = derived_hall_number(&c, &g(&c, "S1"), &g(&c, "S2"), &g(&c, "P1")).unwrap();
            assert_eq!(h, Scalar::from_int(q, q as i64 - 1));
            let h = derived_hall_number(&c, &g(&c, "S2"), &g(&c, "S1"), &g(&c, "S2+S1")).unwrap();
            assert!(h.is_one());
            for name in ["S1", "S2", "P1"] {
                let i = c.parse_class(name).unwrap();
                let h = derived_hall_number(&c, &GradedObject::stalk(i.clone(), 1), &GradedObject::stalk(i.clone(), 0), &g(&c, "0")).unwrap();
                let a = c.aut_count(&i).unwrap();
                assert_eq!(h, Scalar::from_rational(q, BigRational::from_integer(a.into())));
            }
        }
    }

    #[test]
    fn quotient_and_full_counts_agree() {
        let c = cat("A2", 2);
        let objs = ["S1", "S2+S1", "P1@1 + S2", "S1@-1 + P1"];
        for xs in objs {
            for ys in objs {
                let (x, y) = (g(&c, xs), g(&c, ys));
                let a = ext_fibers(&c, &x, &y, CountMode::Quotient).unwrap();
                let b = ext_fibers(&c, &x, &y, CountMode::FullSpace).unwrap();
                assert_eq!(a, b, "{xs}, {ys}");
            }
        }
    }

    #[test]
    fn cone_is_homotopy_invariant() {
        let c = cat("A2", 3);
        let space = extension_space(&c, &g(&c, "P1@0 + S1@1"), &g(&c, "S2@0 + P1@-1")).unwrap();
        assert!(space.boundary_dim() > 0);
        for coeffs in VectorIter::new(3, space.class_dim()).step_by(5) {
            let f = space.combine(&space.complement, &coeffs);
            assert!(space.is_chain_map(&f));
            let l = space.cone_class(&f).unwrap();
            for bc in VectorIter::new(3, space.boundary_dim()).step_by(3) {
                let b = space.combine(space.boundaries(), &bc);
                assert!(space.is_chain_map(&b));
                let sum: Vec<u32> = f.iter().zip(&b).map(|(x, y)| c.fq().add(*x, *y)).collect();
                assert_eq!(space.cone_class(&sum).unwrap(), l);
            }
        }
    }

    #[test]
    fn resource_cap() {
        let limits = crate::repcat::Limits { max_enumeration: 1 << 22, max_chain_dim: 1 };
        let c = RepCategory::with_limits(Quiver::preset("A2").unwrap(), 2, limits).unwrap();
        let err = ext_fibers(&c, &g(&c, "S1+S1"), &g(&c, "S2"), CountMode::Quotient).unwrap_err();
        assert!(matches!(err, HallError::ResourceLimit { .. }));
    }
}
