//! Dense linear algebra over a prime field F_q.
//!
//! Matrices are small (desk-scale representations), so everything is plain
//! row-major `Vec<u32>` with Gaussian elimination.

use std::fmt;

/// The prime field F_q. Entries are always kept in `0..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fq {
    q: u32,
}

impl Fq {
    /// Panics unless `q` is prime; callers validate user input first.
    pub fn new(q: u32) -> Self {
        assert!(is_prime(q), "F_q requires a prime q, got {q}");
        Fq { q }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.q);
        self.pow(a, self.q - 2)
    }

    pub fn pow(&self, mut a: u32, mut e: u32) -> u32 {
        let mut acc = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn reduce(&self, a: i64) -> u32 {
        a.rem_euclid(self.q as i64) as u32
    }

    pub fn mat_mul(&self, a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.cols, b.rows, "shape mismatch in product");
        let mut out = Mat::zeros(a.rows, b.cols);
        for i in 0..a.rows {
            for k in 0..a.cols {
                let x = a[(i, k)];
                if x == 0 {
                    continue;
                }
                for j in 0..b.cols {
                    let y = b[(k, j)];
                    if y != 0 {
                        out[(i, j)] = self.add(out[(i, j)], self.mul(x, y));
                    }
                }
            }
        }
        out
    }

    pub fn mat_add(&self, a: &Mat, b: &Mat) -> Mat {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        let data = a.data.iter().zip(&b.data).map(|(&x, &y)| self.add(x, y)).collect();
        Mat { rows: a.rows, cols: a.cols, data }
    }

    pub fn mat_sub(&self, a: &Mat, b: &Mat) -> Mat {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        let data = a.data.iter().zip(&b.data).map(|(&x, &y)| self.sub(x, y)).collect();
        Mat { rows: a.rows, cols: a.cols, data }
    }

    pub fn mat_scale(&self, a: &Mat, c: u32) -> Mat {
        let data = a.data.iter().map(|&x| self.mul(x, c)).collect();
        Mat { rows: a.rows, cols: a.cols, data }
    }

    pub fn mat_vec(&self, a: &Mat, v: &[u32]) -> Vec<u32> {
        assert_eq!(a.cols, v.len());
        (0..a.rows)
            .map(|i| {
                (0..a.cols).fold(0, |acc, k| self.add(acc, self.mul(a[(i, k)], v[k])))
            })
            .collect()
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&self, m: &mut Mat) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| m[(r, col)] != 0) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = self.inv(m[(row, col)]);
            for j in col..m.cols {
                m[(row, j)] = self.mul(m[(row, j)], inv);
            }
            for r in 0..m.rows {
                if r != row && m[(r, col)] != 0 {
                    let f = m[(r, col)];
                    for j in col..m.cols {
                        let v = self.mul(f, m[(row, j)]);
                        m[(r, j)] = self.sub(m[(r, j)], v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, m: &Mat) -> usize {
        let mut w = m.clone();
        self.rref(&mut w).len()
    }

    pub fn is_invertible(&self, m: &Mat) -> bool {
        m.rows == m.cols && self.rank(m) == m.rows
    }

    /// Basis of `{x : m x = 0}`, one vector per free column.
    pub fn nullspace(&self, m: &Mat) -> Vec<Vec<u32>> {
        let mut w = m.clone();
        let pivots = self.rref(&mut w);
        let mut is_pivot = vec![false; m.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; m.cols];
            v[free] = 1;
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = self.neg(w[(r, free)]);
            }
            basis.push(v);
        }
        basis
    }

    /// Basis (in reduced echelon form) of the span of the given vectors.
    pub fn span_basis(&self, vectors: &[Vec<u32>], len: usize) -> Vec<Vec<u32>> {
        let mut m = Mat::from_rows(vectors, len);
        let r = self.rref(&mut m).len();
        (0..r).map(|i| m.row(i).to_vec()).collect()
    }

    /// Column space of `m` as a list of basis vectors.
    pub fn column_space(&self, m: &Mat) -> Vec<Vec<u32>> {
        let cols: Vec<Vec<u32>> = (0..m.cols).map(|j| m.col(j)).collect();
        self.span_basis(&cols, m.rows)
    }

    /// Picks vectors from `candidates` that extend `base` to a basis of
    /// `span(base ∪ candidates)`.
    pub fn extend_basis(&self, base: &[Vec<u32>], candidates: &[Vec<u32>], len: usize) -> Vec<Vec<u32>> {
        let mut echelon = Echelon::new(*self, len);
        for b in base {
            echelon.insert(b.clone());
        }
        candidates
            .iter()
            .filter(|c| echelon.insert((*c).clone()))
            .cloned()
            .collect()
    }

    /// Solves `m x = b`, returning one solution if it exists.
    pub fn solve(&self, m: &Mat, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(m.rows, b.len());
        let mut aug = Mat::zeros(m.rows, m.cols + 1);
        for i in 0..m.rows {
            for j in 0..m.cols {
                aug[(i, j)] = m[(i, j)];
            }
            aug[(i, m.cols)] = b[i];
        }
        let pivots = self.rref(&mut aug);
        if pivots.last() == Some(&m.cols) {
            return None;
        }
        let mut x = vec![0; m.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug[(r, m.cols)];
        }
        Some(x)
    }

    pub fn is_nilpotent(&self, m: &Mat) -> bool {
        assert_eq!(m.rows, m.cols);
        if m.rows == 0 {
            return true;
        }
        let mut p = m.clone();
        for _ in 1..m.rows {
            p = self.mat_mul(&p, m);
        }
        p.is_zero()
    }
}

/// Incremental row-echelon basis used for rank-increasing insertions.
#[derive(Clone, Debug)]
pub struct Echelon {
    fq: Fq,
    len: usize,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub fn new(fq: Fq, len: usize) -> Self {
        Echelon { fq, len, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<u32>) -> Vec<u32> {
        for (p, row) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for j in 0..self.len {
                    v[j] = self.fq.sub(v[j], self.fq.mul(c, row[j]));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Returns true if `v` was independent of the current span.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.len);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.fq.inv(v[p]);
        for x in v.iter_mut() {
            *x = self.fq.mul(*x, inv);
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                for j in 0..self.len {
                    row[j] = self.fq.sub(row[j], self.fq.mul(c, v[j]));
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(rows * cols, data.len());
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Mat { rows: rows.len(), cols, data }
    }

    pub fn from_cols(cols: &[Vec<u32>], rows: usize) -> Self {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for i in 0..rows {
                m[(i, j)] = c[i];
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        m
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Mat) -> Mat {
        let mut m = Mat::zeros(self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = u32;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &u32 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u32 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Iterates over every vector in F_q^len in lexicographic order (last
/// coordinate fastest).
pub struct VectorIter {
    q: u32,
    cur: Option<Vec<u32>>,
}

impl VectorIter {
    pub fn new(q: u32, len: usize) -> Self {
        VectorIter { q, cur: Some(vec![0; len]) }
    }
}

impl Iterator for VectorIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.q {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// All `k`-dimensional subspaces of `F_q^n`, each given by the rows of its
/// reduced echelon basis.
pub fn subspaces(q: u32, n: usize, k: usize) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    for pivots in combinations(n, k) {
        // Free entries: row r, columns after pivot r that are not pivots.
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| {
                let pivots = &pivots;
                (p + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        for vals in VectorIter::new(q, free.len()) {
            let mut rows = vec![vec![0u32; n]; k];
            for (r, &p) in pivots.iter().enumerate() {
                rows[r][p] = 1;
            }
            for (&(r, c), &v) in free.iter().zip(&vals) {
                rows[r][c] = v;
            }
            out.push(rows);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one() {
        let f = Fq::new(3);
        let m = Mat::from_vec(2, 3, vec![1, 2, 0, 2, 1, 0]);
        let ns = f.nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(f.mat_vec(&m, v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let f = Fq::new(5);
        let m = Mat::from_vec(2, 2, vec![2, 1, 1, 4]);
        assert!(f.is_invertible(&m));
        let x = f.solve(&m, &[1, 0]).unwrap();
        assert_eq!(f.mat_vec(&m, &x), vec![1, 0]);
        let sing = Mat::from_vec(2, 2, vec![1, 2, 2, 4]);
        assert!(f.solve(&sing, &[1, 0]).is_none());
    }

    #[test]
    fn vector_iter_counts() {
        assert_eq!(VectorIter::new(3, 2).count(), 9);
        assert_eq!(VectorIter::new(2, 0).count(), 1);
    }

    #[test]
    fn echelon_tracks_rank() {
        let f = Fq::new(2);
        let mut e = Echelon::new(f, 3);
        assert!(e.insert(vec![1, 1, 0]));
        assert!(e.insert(vec![0, 1, 1]));
        assert!(!e.insert(vec![1, 0, 1]));
        assert!(e.contains(&[1, 0, 1]));
        assert_eq!(e.dim(), 2);
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        // [4 choose 2]_2 = 35, [3 choose 1]_3 = 13
        assert_eq!(subspaces(2, 4, 2).len(), 35);
        assert_eq!(subspaces(3, 3, 1).len(), 13);
        assert_eq!(subspaces(3, 3, 0).len(), 1);
        assert_eq!(subspaces(3, 2, 3).len(), 0);
    }

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
