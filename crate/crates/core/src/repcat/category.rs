//! The category `rep_{F_q}(Q)` at desk scale.
//!
//! Indecomposables are discovered per dimension vector by orbit
//! enumeration. Before enumerating anything the orbit-counting identity
//! `q^N = sum_C |GL_d| / a_C` is checked against the classes already built
//! from smaller indecomposables; enumeration only runs when there is a
//! deficit, and stops as soon as the count balances.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{HallError, Result};
use crate::fq::{subspaces, Echelon, Fq, VectorIter};
use crate::repcat::classes::{HalfKClass, IndecId, IsoClass, KClass};
use crate::repcat::quiver::Quiver;
use crate::repcat::rep::{
    all_reps, arrow_entry_count, combine, hom_basis, injective, is_isomorphism, is_nilpotent,
    projective, subquotient, Morphism, Rep,
};

/// Hard caps on brute-force work.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of elements any single exhaustive loop may visit
    /// (representations of a dimension vector, endomorphism rings, ...).
    pub max_enumeration: u64,
    /// Largest dimension of a morphism space enumerated by the cone counter.
    pub max_chain_dim: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_enumeration: 1 << 22, max_chain_dim: 14 }
    }
}

#[derive(Clone, Debug)]
struct Indecomposable {
    id: IndecId,
    rep: Rep,
    end_dim: usize,
    /// `End/rad End = F_{q^f}`.
    residue_degree: u32,
}

struct ClassEntry {
    class: IsoClass,
    rep: Rep,
    signature: Vec<(usize, usize)>,
}

/// All classes of one dimension vector plus the probe list used to tell
/// them apart.
struct ClassTable {
    probes: Vec<IndecId>,
    entries: Vec<ClassEntry>,
}

pub struct RepCategory {
    quiver: Quiver,
    fq: Fq,
    limits: Limits,
    projectives: Vec<Rep>,
    injectives: Vec<Rep>,
    indecs: RwLock<HashMap<KClass, Arc<Vec<Indecomposable>>>>,
    tables: RwLock<HashMap<KClass, Arc<ClassTable>>>,
    indec_hom: RwLock<HashMap<(IndecId, IndecId), usize>>,
    canon: RwLock<HashMap<Rep, IsoClass>>,
}

impl std::fmt::Debug for RepCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RepCategory({}, q={})", self.quiver, self.fq.q())
    }
}

impl RepCategory {
    pub fn new(quiver: Quiver, q: u32) -> Result<Self> {
        Self::with_limits(quiver, q, Limits::default())
    }

    pub fn with_limits(quiver: Quiver, q: u32, limits: Limits) -> Result<Self> {
        if !crate::fq::is_prime(q) {
            return Err(HallError::Invalid(format!("q = {q} is not prime")));
        }
        let n = quiver.vertex_count();
        let projectives = (0..n).map(|i| projective(&quiver, i)).collect();
        let injectives = (0..n).map(|i| injective(&quiver, i)).collect();
        Ok(RepCategory {
            quiver,
            fq: Fq::new(q),
            limits,
            projectives,
            injectives,
            indecs: RwLock::default(),
            tables: RwLock::default(),
            indec_hom: RwLock::default(),
            canon: RwLock::default(),
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn fq(&self) -> &Fq {
        &self.fq
    }

    pub fn q(&self) -> u32 {
        self.fq.q()
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    /// The explicit indecomposable projective at vertex `i`.
    pub fn projective(&self, i: usize) -> &Rep {
        &self.projectives[i]
    }

    pub fn zero_class(&self) -> IsoClass {
        IsoClass::zero(self.vertex_count())
    }

    pub(crate) fn check_enumeration(&self, what: &'static str, needed: u64) -> Result<()> {
        if needed > self.limits.max_enumeration {
            Err(HallError::ResourceLimit { what, needed, cap: self.limits.max_enumeration })
        } else {
            Ok(())
        }
    }

    fn q_pow_checked(&self, what: &'static str, exp: usize) -> Result<u64> {
        let needed = (self.q() as u64)
            .checked_pow(exp as u32)
            .filter(|&x| x <= self.limits.max_enumeration);
        needed.ok_or(HallError::ResourceLimit {
            what,
            needed: (self.q() as f64).powi(exp as i32) as u64,
            cap: self.limits.max_enumeration,
        })
    }

    // ---- Euler forms -------------------------------------------------

    pub fn euler(&self, a: &KClass, b: &KClass) -> i64 {
        self.quiver.euler(&a.0, &b.0)
    }

    /// `<alpha, beta>` on the half lattice, as a multiple of 1/4.
    pub fn euler_half(&self, a: &HalfKClass, b: &HalfKClass) -> i64 {
        self.quiver.euler(&a.0, &b.0)
    }

    /// `(alpha, beta) = <alpha, beta> + <beta, alpha>`, as a multiple of 1/4.
    pub fn symmetric_half(&self, a: &HalfKClass, b: &HalfKClass) -> i64 {
        self.euler_half(a, b) + self.euler_half(b, a)
    }

    // ---- indecomposables ---------------------------------------------

    fn indecs_of(&self, d: &KClass) -> Result<Arc<Vec<Indecomposable>>> {
        if let Some(v) = self.indecs.read().unwrap().get(d) {
            return Ok(v.clone());
        }
        let found = Arc::new(self.discover(d)?);
        let mut w = self.indecs.write().unwrap();
        Ok(w.entry(d.clone()).or_insert(found).clone())
    }

    fn indec(&self, id: &IndecId) -> Result<Indecomposable> {
        let list = self.indecs_of(&id.dim)?;
        list.get(id.index as usize)
            .cloned()
            .ok_or_else(|| HallError::Invalid(format!("unknown indecomposable {id}")))
    }

    /// Indecomposables with exactly this dimension vector.
    pub fn indecomposables_of_dim(&self, d: &KClass) -> Result<Vec<IndecId>> {
        Ok(self.indecs_of(d)?.iter().map(|i| i.id.clone()).collect())
    }

    /// Indecomposables with dimension vector `<= bound`, in label order.
    pub fn indecomposables_up_to(&self, bound: &KClass) -> Result<Vec<IndecId>> {
        let mut out = Vec::new();
        for d in dims_below(bound) {
            out.extend(self.indecomposables_of_dim(&d)?);
        }
        out.sort();
        Ok(out)
    }

    pub fn indecomposable_rep(&self, id: &IndecId) -> Result<Rep> {
        Ok(self.indec(id)?.rep)
    }

    fn gl_order(&self, d: &KClass) -> BigUint {
        d.0.iter().fold(BigUint::one(), |acc, &n| acc * gl_order(self.q(), 1, n as u32))
    }

    fn discover(&self, d: &KClass) -> Result<Vec<Indecomposable>> {
        let n = self.vertex_count();
        if d.is_zero() {
            return Ok(Vec::new());
        }
        if d.total() == 1 {
            let i = d.0.iter().position(|&x| x == 1).unwrap();
            let id = IndecId { dim: d.clone(), index: 0, name: format!("S{}", i + 1).into() };
            return Ok(vec![Indecomposable {
                id,
                rep: Rep::zero(&self.quiver, d.as_dims()),
                end_dim: 1,
                residue_degree: 1,
            }]);
        }
        let mut lower = Vec::new();
        for e in dims_below(d) {
            if !e.is_zero() && e != *d {
                lower.extend(self.indecomposables_of_dim(&e)?);
            }
        }
        lower.sort();
        let gl = self.gl_order(d);
        let mut orbit_sum = BigUint::zero();
        for class in multisets_with_dim(&lower, d, n) {
            orbit_sum += &gl / self.aut_count(&class)?;
        }
        let dims = d.as_dims();
        let entries = arrow_entry_count(&self.quiver, &dims);
        let total = BigUint::from(self.q()).pow(entries as u32);
        if orbit_sum == total {
            return Ok(Vec::new());
        }
        self.q_pow_checked("representations of one dimension vector", entries)?;

        let mut found: Vec<Indecomposable> = Vec::new();
        for rep in all_reps(&self.quiver, self.q(), &dims) {
            let end = hom_basis(&self.quiver, &self.fq, &rep, &rep);
            if end.len() > 1 && !self.is_local(&rep, &end)? {
                continue;
            }
            let mut known = false;
            for f in &found {
                if self.isomorphic(&rep, &f.rep)? {
                    known = true;
                    break;
                }
            }
            if known {
                continue;
            }
            let residue_degree = self.residue_degree(&rep, &end)?;
            let q = BigUint::from(self.q());
            let k = end.len() as u32;
            let aut = q.pow(k) - q.pow(k - residue_degree);
            orbit_sum += &gl / aut;
            let name = self.name_for(d, &rep, &found)?;
            found.push(Indecomposable {
                id: IndecId { dim: d.clone(), index: found.len() as u32, name: name.into() },
                rep,
                end_dim: end.len(),
                residue_degree,
            });
            if orbit_sum >= total {
                break;
            }
        }
        if orbit_sum != total {
            return Err(HallError::Invalid(format!(
                "orbit count mismatch in dimension {d}: {orbit_sum} vs {total}"
            )));
        }
        Ok(found)
    }

    fn name_for(&self, d: &KClass, rep: &Rep, found: &[Indecomposable]) -> Result<String> {
        for (i, p) in self.projectives.iter().enumerate() {
            if p.dim_vector() == d.0 && self.isomorphic(rep, p)? {
                return Ok(format!("P{}", i + 1));
            }
        }
        for (i, inj) in self.injectives.iter().enumerate() {
            if inj.dim_vector() == d.0 && self.isomorphic(rep, inj)? {
                return Ok(format!("I{}", i + 1));
            }
        }
        let generic = found.iter().filter(|f| f.id.name.starts_with('M')).count();
        let body = if d.0.iter().all(|&x| x < 10) {
            d.0.iter().map(|x| x.to_string()).collect::<String>()
        } else {
            d.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
        };
        Ok(if generic == 0 { format!("M{body}") } else { format!("M{body}#{generic}") })
    }

    /// Every endomorphism is nilpotent or invertible (Fitting).
    fn is_local(&self, rep: &Rep, end: &[Morphism]) -> Result<bool> {
        self.q_pow_checked("endomorphism ring", end.len())?;
        for coeffs in VectorIter::new(self.q(), end.len()).skip(1) {
            let f = combine(&self.fq, end, &coeffs, rep, rep);
            if !is_nilpotent(&self.fq, &f) && !is_isomorphism(&self.fq, &f) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn residue_degree(&self, rep: &Rep, end: &[Morphism]) -> Result<u32> {
        if end.len() == 1 {
            return Ok(1);
        }
        self.q_pow_checked("endomorphism ring", end.len())?;
        let nilpotent = VectorIter::new(self.q(), end.len())
            .filter(|c| is_nilpotent(&self.fq, &combine(&self.fq, end, c, rep, rep)))
            .count();
        let mut r = 0u32;
        let mut x = 1usize;
        while x < nilpotent {
            x *= self.q() as usize;
            r += 1;
        }
        Ok(end.len() as u32 - r)
    }

    /// Exhaustive search for an invertible intertwiner.
    pub fn isomorphic(&self, a: &Rep, b: &Rep) -> Result<bool> {
        if a.dims() != b.dims() {
            return Ok(false);
        }
        let ab = hom_basis(&self.quiver, &self.fq, a, b);
        let ba = hom_basis(&self.quiver, &self.fq, b, a);
        if ab.len() != ba.len() {
            return Ok(false);
        }
        if a.is_zero() {
            return Ok(true);
        }
        self.q_pow_checked("isomorphism search", ab.len())?;
        for coeffs in VectorIter::new(self.q(), ab.len()).skip(1) {
            if is_isomorphism(&self.fq, &combine(&self.fq, &ab, &coeffs, a, b)) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    // ---- classes -----------------------------------------------------

    fn table(&self, d: &KClass) -> Result<Arc<ClassTable>> {
        if let Some(t) = self.tables.read().unwrap().get(d) {
            return Ok(t.clone());
        }
        let n = self.vertex_count();
        let probes = self.indecomposables_up_to(d)?;
        let mut entries = Vec::new();
        for class in multisets_with_dim(&probes, d, n) {
            let rep = self.class_rep(&class)?;
            let mut signature = Vec::with_capacity(probes.len());
            for p in &probes {
                let mut into = 0;
                let mut out = 0;
                for (s, mult) in class.multiplicities() {
                    into += mult * self.indec_hom(p, &s)?;
                    out += mult * self.indec_hom(&s, p)?;
                }
                signature.push((into, out));
            }
            entries.push(ClassEntry { class, rep, signature });
        }
        let table = Arc::new(ClassTable { probes, entries });
        let mut w = self.tables.write().unwrap();
        Ok(w.entry(d.clone()).or_insert(table).clone())
    }

    /// All isomorphism classes with exactly this dimension vector.
    pub fn classes_of_dim(&self, d: &KClass) -> Result<Vec<IsoClass>> {
        Ok(self.table(d)?.entries.iter().map(|e| e.class.clone()).collect())
    }

    /// One class per isomorphism class with dimension vector `<= bound`,
    /// zero class included, ordered by total dimension, then dimension
    /// vector (lexicographically larger first), then labels.
    pub fn enumerate_iso_classes(&self, bound: &KClass) -> Result<Vec<IsoClass>> {
        let mut dims = dims_below(bound);
        dims.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| b.cmp(a)));
        let mut out = Vec::new();
        for d in dims {
            out.extend(self.classes_of_dim(&d)?);
        }
        Ok(out)
    }

    /// Every class of total dimension `<= total`, in the same order.
    pub fn classes_of_total_at_most(&self, total: i64) -> Result<Vec<IsoClass>> {
        let bound = KClass(vec![total.max(0); self.vertex_count()]);
        Ok(self.enumerate_iso_classes(&bound)?.into_iter().filter(|c| c.dim().total() <= total).collect())
    }

    /// A representative of the class: direct sum of the stored
    /// indecomposable representatives.
    pub fn class_rep(&self, class: &IsoClass) -> Result<Rep> {
        let mut rep = Rep::zero(&self.quiver, vec![0; self.vertex_count()]);
        for s in class.summands() {
            rep = rep.direct_sum(&self.indec(s)?.rep);
        }
        Ok(rep)
    }

    /// Krull–Schmidt normal form of an explicit representation.
    pub fn canonicalize(&self, rep: &Rep) -> Result<IsoClass> {
        if rep.is_zero() {
            return Ok(self.zero_class());
        }
        if let Some(c) = self.canon.read().unwrap().get(rep) {
            return Ok(c.clone());
        }
        let d = KClass(rep.dim_vector());
        let table = self.table(&d)?;
        let class = if table.entries.len() == 1 {
            table.entries[0].class.clone()
        } else {
            let mut signature = Vec::with_capacity(table.probes.len());
            for p in &table.probes {
                let prep = self.indec(p)?.rep;
                signature.push((
                    hom_basis(&self.quiver, &self.fq, &prep, rep).len(),
                    hom_basis(&self.quiver, &self.fq, rep, &prep).len(),
                ));
            }
            let candidates: Vec<&ClassEntry> =
                table.entries.iter().filter(|e| e.signature == signature).collect();
            match candidates.as_slice() {
                [only] => only.class.clone(),
                _ => {
                    let mut hit = None;
                    for c in candidates {
                        if self.isomorphic(rep, &c.rep)? {
                            hit = Some(c.class.clone());
                            break;
                        }
                    }
                    hit.ok_or_else(|| {
                        HallError::Invalid(format!("no isomorphism class matched a rep of dim {d}"))
                    })?
                }
            }
        };
        self.canon.write().unwrap().insert(rep.clone(), class.clone());
        Ok(class)
    }

    // ---- Hom / Ext / Aut ---------------------------------------------

    fn indec_hom(&self, a: &IndecId, b: &IndecId) -> Result<usize> {
        let key = (a.clone(), b.clone());
        if let Some(&h) = self.indec_hom.read().unwrap().get(&key) {
            return Ok(h);
        }
        let h = hom_basis(&self.quiver, &self.fq, &self.indec(a)?.rep, &self.indec(b)?.rep).len();
        self.indec_hom.write().unwrap().insert(key, h);
        Ok(h)
    }

    /// `(dim Hom(M, N), dim Ext^1(M, N))`.
    pub fn hom_ext_dim(&self, m: &IsoClass, n: &IsoClass) -> Result<(usize, usize)> {
        let mut h = 0;
        for (a, x) in m.multiplicities() {
            for (b, y) in n.multiplicities() {
                h += x * y * self.indec_hom(&a, &b)?;
            }
        }
        let e = h as i64 - self.euler(m.dim(), n.dim());
        debug_assert!(e >= 0, "negative Ext dimension");
        Ok((h, e as usize))
    }

    pub fn hom_dim(&self, m: &IsoClass, n: &IsoClass) -> Result<usize> {
        Ok(self.hom_ext_dim(m, n)?.0)
    }

    pub fn ext_dim(&self, m: &IsoClass, n: &IsoClass) -> Result<usize> {
        Ok(self.hom_ext_dim(m, n)?.1)
    }

    /// `a_M = |Aut(M)| = q^{dim rad End M} * prod_j |GL_{n_j}(F_{q^{f_j}})|`.
    pub fn aut_count(&self, m: &IsoClass) -> Result<BigUint> {
        let mults = m.multiplicities();
        let mut end_dim = 0usize;
        for (a, x) in &mults {
            for (b, y) in &mults {
                end_dim += x * y * self.indec_hom(a, b)?;
            }
        }
        let mut semisimple = 0usize;
        let mut units = BigUint::one();
        for (a, x) in &mults {
            let f = self.indec(a)?.residue_degree;
            semisimple += x * x * f as usize;
            units *= gl_order(self.q(), f, *x as u32);
        }
        Ok(BigUint::from(self.q()).pow((end_dim - semisimple) as u32) * units)
    }

    /// Counts invertible endomorphisms of an explicit representation by
    /// enumerating `End`.
    pub fn aut_count_brute(&self, rep: &Rep) -> Result<BigUint> {
        let end = hom_basis(&self.quiver, &self.fq, rep, rep);
        self.q_pow_checked("endomorphism ring", end.len())?;
        let count = VectorIter::new(self.q(), end.len())
            .filter(|c| is_isomorphism(&self.fq, &combine(&self.fq, &end, c, rep, rep)))
            .count();
        Ok(BigUint::from(count))
    }

    pub fn end_dim(&self, id: &IndecId) -> Result<usize> {
        Ok(self.indec(id)?.end_dim)
    }

    /// Number of subrepresentations `U ⊆ L` with `U ≅ N` and `L/U ≅ M`,
    /// by exhaustive enumeration of per-vertex subspaces.
    pub fn submodule_hall_number(&self, l: &IsoClass, m: &IsoClass, n: &IsoClass) -> Result<BigUint> {
        if l.dim() != &(m.dim() + n.dim()) {
            return Ok(BigUint::zero());
        }
        let rep = self.class_rep(l)?;
        let nv = self.vertex_count();
        let ndims = n.dim().as_dims();
        let per_vertex: Vec<Vec<Vec<Vec<u32>>>> =
            (0..nv).map(|v| subspaces(self.q(), rep.dims()[v], ndims[v])).collect();
        let combos: u64 = per_vertex.iter().map(|s| s.len() as u64).product();
        self.check_enumeration("subspace tuples", combos)?;

        let full: Vec<Vec<Vec<u32>>> = (0..nv)
            .map(|v| {
                (0..rep.dims()[v])
                    .map(|i| {
                        let mut e = vec![0; rep.dims()[v]];
                        e[i] = 1;
                        e
                    })
                    .collect()
            })
            .collect();
        let empty: Vec<Vec<Vec<u32>>> = vec![Vec::new(); nv];
        let mut count = 0u64;
        let mut idx = vec![0usize; nv];
        'outer: loop {
            let sub: Vec<Vec<Vec<u32>>> =
                (0..nv).map(|v| per_vertex[v][idx[v]].clone()).collect();
            if self.is_subrep(&rep, &sub) {
                let u = subquotient(&self.quiver, &self.fq, &rep, &empty, &sub);
                let quo = subquotient(&self.quiver, &self.fq, &rep, &sub, &full);
                if self.canonicalize(&u)? == *n && self.canonicalize(&quo)? == *m {
                    count += 1;
                }
            }
            for v in 0..nv {
                idx[v] += 1;
                if idx[v] < per_vertex[v].len() {
                    continue 'outer;
                }
                idx[v] = 0;
            }
            break;
        }
        Ok(BigUint::from(count))
    }

    fn is_subrep(&self, rep: &Rep, sub: &[Vec<Vec<u32>>]) -> bool {
        self.quiver.arrows().iter().enumerate().all(|(a, &(s, t))| {
            let mut ech = Echelon::new(self.fq, rep.dims()[t]);
            for v in &sub[t] {
                ech.insert(v.clone());
            }
            sub[s].iter().all(|u| ech.contains(&self.fq.mat_vec(rep.map(a), u)))
        })
    }

    // ---- names -------------------------------------------------------

    /// Resolves a label such as `S1`, `P2`, `I2` or `M110#1`.
    pub fn indecomposable_by_name(&self, name: &str) -> Result<IndecId> {
        let err = || HallError::Parse(format!("unknown indecomposable `{name}`"));
        let n = self.vertex_count();
        let vertex = |s: &str| -> Result<usize> {
            let i: usize = s.parse().map_err(|_| err())?;
            (1..=n).contains(&i).then_some(i - 1).ok_or_else(err)
        };
        let (dim, alias) = if let Some(r) = name.strip_prefix('S') {
            (KClass::unit(n, vertex(r)?), None)
        } else if let Some(r) = name.strip_prefix('P') {
            let p = &self.projectives[vertex(r)?];
            (KClass(p.dim_vector()), Some(p.clone()))
        } else if let Some(r) = name.strip_prefix('I') {
            let p = &self.injectives[vertex(r)?];
            (KClass(p.dim_vector()), Some(p.clone()))
        } else if let Some(r) = name.strip_prefix('M') {
            let body = r.split('#').next().unwrap_or("");
            let parts: Vec<i64> = if body.contains('.') {
                body.split('.').map(|x| x.parse().map_err(|_| err())).collect::<Result<_>>()?
            } else {
                body.chars()
                    .map(|c| c.to_digit(10).map(i64::from).ok_or_else(err))
                    .collect::<Result<_>>()?
            };
            if parts.len() != n {
                return Err(err());
            }
            (KClass(parts), None)
        } else {
            return Err(err());
        };
        let list = self.indecs_of(&dim)?;
        if let Some(i) = list.iter().find(|i| &*i.id.name == name) {
            return Ok(i.id.clone());
        }
        if let Some(target) = alias {
            for i in list.iter() {
                if self.isomorphic(&i.rep, &target)? {
                    return Ok(i.id.clone());
                }
            }
        }
        Err(err())
    }

    /// Parses `0` or a `+`-separated list of indecomposable labels.
    pub fn parse_class(&self, s: &str) -> Result<IsoClass> {
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(self.zero_class());
        }
        let mut summands = Vec::new();
        for part in s.split('+') {
            summands.push(self.indecomposable_by_name(part.trim())?);
        }
        Ok(IsoClass::from_summands(self.vertex_count(), summands))
    }
}

/// `|GL_n(F_{q^f})|`.
pub fn gl_order(q: u32, f: u32, n: u32) -> BigUint {
    let big_q = BigUint::from(q).pow(f);
    let qn = big_q.pow(n);
    (0..n).fold(BigUint::one(), |acc, k| acc * (&qn - big_q.pow(k)))
}

/// Every vector `0 <= e <= bound` componentwise, in lexicographic order.
pub fn dims_below(bound: &KClass) -> Vec<KClass> {
    let mut out = vec![Vec::new()];
    for &b in &bound.0 {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (0..=b.max(0)).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(KClass).collect()
}

/// Multisets of the given indecomposables whose dimensions sum to `target`.
fn multisets_with_dim(items: &[IndecId], target: &KClass, n: usize) -> Vec<IsoClass> {
    fn go(
        items: &[IndecId],
        start: usize,
        remaining: &KClass,
        cur: &mut Vec<IndecId>,
        out: &mut Vec<Vec<IndecId>>,
    ) {
        if remaining.is_zero() {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items[i].dim.le(remaining) && !items[i].dim.is_zero() {
                cur.push(items[i].clone());
                go(items, i, &(remaining - &items[i].dim), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(items, 0, target, &mut Vec::new(), &mut out);
    let mut classes: Vec<IsoClass> =
        out.into_iter().map(|s| IsoClass::from_summands(n, s)).collect();
    classes.sort();
    classes
}
