//! Explicit representations and morphisms.

use crate::fq::{Fq, Mat, VectorIter};
use crate::repcat::quiver::Quiver;

/// A representation: a vector space `F_q^{dims[v]}` per vertex and a matrix
/// `dims[t] x dims[s]` per arrow `s -> t`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rep {
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

/// One matrix per vertex, `target_dim x source_dim`.
pub type Morphism = Vec<Mat>;

impl Rep {
    pub fn new(quiver: &Quiver, dims: Vec<usize>, maps: Vec<Mat>) -> Self {
        assert_eq!(dims.len(), quiver.vertex_count());
        assert_eq!(maps.len(), quiver.arrows().len());
        for (m, &(s, t)) in maps.iter().zip(quiver.arrows()) {
            assert_eq!((m.rows(), m.cols()), (dims[t], dims[s]), "arrow matrix shape");
        }
        Rep { dims, maps }
    }

    pub fn zero(quiver: &Quiver, dims: Vec<usize>) -> Self {
        let maps = quiver.arrows().iter().map(|&(s, t)| Mat::zeros(dims[t], dims[s])).collect();
        Rep { dims, maps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &Mat {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        Rep {
            dims: self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect(),
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.direct_sum(b)).collect(),
        }
    }

    /// Applies the map of a path (arrow sequence) to a vector.
    pub fn apply_path(&self, fq: &Fq, arrows: &[usize], x: &[u32]) -> Vec<u32> {
        arrows.iter().fold(x.to_vec(), |v, &a| fq.mat_vec(&self.maps[a], &v))
    }

    /// Transports the representation along per-vertex invertible matrices:
    /// `maps[a] -> g_t maps[a] g_s^{-1}`. Only used to produce isomorphic
    /// copies, so the caller supplies both `g` and its inverse.
    pub fn conjugate(&self, quiver: &Quiver, fq: &Fq, g: &[Mat], g_inv: &[Mat]) -> Rep {
        let maps = quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| fq.mat_mul(&fq.mat_mul(&g[t], &self.maps[a]), &g_inv[s]))
            .collect();
        Rep { dims: self.dims.clone(), maps }
    }
}

pub fn zero_morphism(source: &Rep, target: &Rep) -> Morphism {
    source.dims.iter().zip(&target.dims).map(|(&s, &t)| Mat::zeros(t, s)).collect()
}

pub fn identity_morphism(rep: &Rep) -> Morphism {
    rep.dims.iter().map(|&d| Mat::identity(d)).collect()
}

pub fn compose(fq: &Fq, g: &Morphism, f: &Morphism) -> Morphism {
    g.iter().zip(f).map(|(a, b)| fq.mat_mul(a, b)).collect()
}

pub fn morphism_add(fq: &Fq, f: &Morphism, g: &Morphism) -> Morphism {
    f.iter().zip(g).map(|(a, b)| fq.mat_add(a, b)).collect()
}

pub fn is_isomorphism(fq: &Fq, f: &Morphism) -> bool {
    f.iter().all(|m| fq.is_invertible(m))
}

pub fn is_nilpotent(fq: &Fq, f: &Morphism) -> bool {
    f.iter().all(|m| fq.is_nilpotent(m))
}

/// Basis of `Hom_A(source, target)`: solutions of `N_a f_s = f_t M_a` for
/// every arrow `a: s -> t`.
pub fn hom_basis(quiver: &Quiver, fq: &Fq, source: &Rep, target: &Rep) -> Vec<Morphism> {
    let n = quiver.vertex_count();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    for v in 0..n {
        offsets.push(offsets[v] + source.dims[v] * target.dims[v]);
    }
    let unknowns = offsets[n];
    if unknowns == 0 {
        return Vec::new();
    }
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * source.dims[v] + c;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for (a, &(s, t)) in quiver.arrows().iter().enumerate() {
        let ma = &source.maps[a];
        let na = &target.maps[a];
        for r in 0..target.dims[t] {
            for c in 0..source.dims[s] {
                let mut eq = vec![0u32; unknowns];
                // (N_a f_s)[r, c] = sum_k N_a[r, k] f_s[k, c]
                for k in 0..target.dims[s] {
                    let x = na[(r, k)];
                    if x != 0 {
                        let i = var(s, k, c);
                        eq[i] = fq.add(eq[i], x);
                    }
                }
                // (f_t M_a)[r, c] = sum_k f_t[r, k] M_a[k, c]
                for k in 0..source.dims[t] {
                    let x = ma[(k, c)];
                    if x != 0 {
                        let i = var(t, r, k);
                        eq[i] = fq.sub(eq[i], x);
                    }
                }
                rows.push(eq);
            }
        }
    }
    let solutions = if rows.is_empty() {
        (0..unknowns)
            .map(|i| {
                let mut e = vec![0; unknowns];
                e[i] = 1;
                e
            })
            .collect()
    } else {
        fq.nullspace(&Mat::from_rows(&rows, unknowns))
    };
    solutions
        .into_iter()
        .map(|sol| {
            (0..n)
                .map(|v| {
                    Mat::from_vec(
                        target.dims[v],
                        source.dims[v],
                        sol[offsets[v]..offsets[v + 1]].to_vec(),
                    )
                })
                .collect()
        })
        .collect()
}

/// `sum_j coeffs[j] * basis[j]`.
pub fn combine(fq: &Fq, basis: &[Morphism], coeffs: &[u32], source: &Rep, target: &Rep) -> Morphism {
    let mut out = zero_morphism(source, target);
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            for (o, m) in out.iter_mut().zip(b) {
                *o = fq.mat_add(o, &fq.mat_scale(m, c));
            }
        }
    }
    out
}

/// The indecomposable projective `P_i`: basis at `j` is the set of paths
/// from `i` to `j`.
pub fn projective(quiver: &Quiver, i: usize) -> Rep {
    let paths = quiver.paths_from(i);
    let n = quiver.vertex_count();
    let index_at = |p: usize| paths[..p].iter().filter(|x| x.end == paths[p].end).count();
    let mut dims = vec![0; n];
    for p in paths {
        dims[p.end] += 1;
    }
    let mut rep = Rep::zero(quiver, dims);
    for (a, &(s, t)) in quiver.arrows().iter().enumerate() {
        for (pi, p) in paths.iter().enumerate() {
            if p.end != s {
                continue;
            }
            let mut ext = p.arrows.clone();
            ext.push(a);
            let qi = paths.iter().position(|x| x.arrows == ext).expect("extended path exists");
            rep.maps[a][(index_at(qi), index_at(pi))] = 1;
        }
        debug_assert_eq!(rep.maps[a].rows(), rep.dims[t]);
    }
    rep
}

/// The indecomposable injective `I_i`: at `j` the dual of the paths from
/// `j` to `i`.
pub fn injective(quiver: &Quiver, i: usize) -> Rep {
    let n = quiver.vertex_count();
    let into_i: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|j| {
            quiver
                .paths_from(j)
                .iter()
                .filter(|p| p.end == i)
                .map(|p| p.arrows.clone())
                .collect()
        })
        .collect();
    let dims: Vec<usize> = into_i.iter().map(Vec::len).collect();
    let mut rep = Rep::zero(quiver, dims);
    for (a, &(s, t)) in quiver.arrows().iter().enumerate() {
        // Precomposition with `a` sends a path t ~> i to the path s -> t ~> i;
        // the arrow map is the transpose of that.
        for (ci, path) in into_i[t].iter().enumerate() {
            let mut pre = vec![a];
            pre.extend_from_slice(path);
            let ri = into_i[s].iter().position(|p| *p == pre).expect("prefixed path exists");
            rep.maps[a][(ci, ri)] = 1;
        }
    }
    rep
}

/// The morphism `P_t -> target` sending the trivial path `e_t` to `x`.
pub fn morphism_from_projective(quiver: &Quiver, fq: &Fq, t: usize, target: &Rep, x: &[u32]) -> Morphism {
    let source = projective(quiver, t);
    let mut f = zero_morphism(&source, target);
    let mut seen = vec![0usize; quiver.vertex_count()];
    for p in quiver.paths_from(t) {
        let col = seen[p.end];
        seen[p.end] += 1;
        let image = target.apply_path(fq, &p.arrows, x);
        for (r, &val) in image.iter().enumerate() {
            f[p.end][(r, col)] = val;
        }
    }
    f
}

/// The representation induced on `big / small` where both are per-vertex
/// subspaces (given by spanning vectors) with `small ⊆ big`, both stable
/// under the arrow maps of `ambient`.
pub fn subquotient(
    quiver: &Quiver,
    fq: &Fq,
    ambient: &Rep,
    small: &[Vec<Vec<u32>>],
    big: &[Vec<Vec<u32>>],
) -> Rep {
    let n = quiver.vertex_count();
    let mut frames = Vec::with_capacity(n);
    let mut dims = Vec::with_capacity(n);
    for v in 0..n {
        let base = fq.span_basis(&small[v], ambient.dims[v]);
        let comp = fq.extend_basis(&base, &big[v], ambient.dims[v]);
        let mut cols = base.clone();
        cols.extend(comp.iter().cloned());
        dims.push(comp.len());
        frames.push((Mat::from_cols(&cols, ambient.dims[v]), base.len(), comp));
    }
    let mut out = Rep::zero(quiver, dims);
    for (a, &(s, t)) in quiver.arrows().iter().enumerate() {
        let (frame_t, skip_t, _) = &frames[t];
        for (c, vec) in frames[s].2.iter().enumerate() {
            let w = fq.mat_vec(&ambient.maps[a], vec);
            let coords = fq.solve(frame_t, &w).expect("subquotient is not arrow-stable");
            for (r, &val) in coords[*skip_t..].iter().enumerate() {
                out.maps[a][(r, c)] = val;
            }
        }
    }
    out
}

/// Every representation with the given dimension vector, in lexicographic
/// order of the concatenated arrow matrices.
pub fn all_reps(quiver: &Quiver, q: u32, dims: &[usize]) -> impl Iterator<Item = Rep> {
    let shapes: Vec<(usize, usize)> =
        quiver.arrows().iter().map(|&(s, t)| (dims[t], dims[s])).collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let dims = dims.to_vec();
    VectorIter::new(q, entries).map(move |flat| {
        let mut off = 0;
        let maps = shapes
            .iter()
            .map(|&(r, c)| {
                let m = Mat::from_vec(r, c, flat[off..off + r * c].to_vec());
                off += r * c;
                m
            })
            .collect();
        Rep { dims: dims.clone(), maps }
    })
}

pub fn arrow_entry_count(quiver: &Quiver, dims: &[usize]) -> usize {
    quiver.arrows().iter().map(|&(s, t)| dims[s] * dims[t]).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::preset("A2").unwrap()
    }

    #[test]
    fn projectives_and_injectives_of_a3() {
        let q = Quiver::preset("A3").unwrap();
        assert_eq!(projective(&q, 0).dims(), &[1, 1, 1]);
        assert_eq!(projective(&q, 1).dims(), &[0, 1, 1]);
        assert_eq!(injective(&q, 1).dims(), &[1, 1, 0]);
        assert_eq!(injective(&q, 2).dims(), &[1, 1, 1]);
        let p1 = projective(&q, 0);
        assert!(p1.maps().iter().all(|m| m[(0, 0)] == 1));
    }

    #[test]
    fn hom_dims_a2() {
        let q = a2();
        let fq = Fq::new(2);
        let s1 = Rep::zero(&q, vec![1, 0]);
        let s2 = Rep::zero(&q, vec![0, 1]);
        let p1 = projective(&q, 0);
        assert_eq!(hom_basis(&q, &fq, &s1, &s2).len(), 0);
        assert_eq!(hom_basis(&q, &fq, &s2, &p1).len(), 1);
        assert_eq!(hom_basis(&q, &fq, &p1, &s1).len(), 1);
        assert_eq!(hom_basis(&q, &fq, &s1, &p1).len(), 0);
        assert_eq!(hom_basis(&q, &fq, &p1, &p1).len(), 1);
    }

    #[test]
    fn projective_map_realises_generator() {
        let q = a2();
        let fq = Fq::new(3);
        let p1 = projective(&q, 0);
        let f = morphism_from_projective(&q, &fq, 0, &p1, &[2]);
        assert_eq!(f[0][(0, 0)], 2);
        assert_eq!(f[1][(0, 0)], 2);
    }

    #[test]
    fn quotient_of_p1_by_socle_is_s1() {
        let q = a2();
        let fq = Fq::new(2);
        let p1 = projective(&q, 0);
        let small = vec![vec![], vec![vec![1]]];
        let big = vec![vec![vec![1]], vec![vec![1]]];
        let quo = subquotient(&q, &fq, &p1, &small, &big);
        assert_eq!(quo.dims(), &[1, 0]);
    }
}
