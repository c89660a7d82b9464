use std::fmt;

use crate::error::{HallError, Result};

/// A path in the quiver: start vertex, end vertex and arrow sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

/// A finite acyclic quiver with vertices `0..n`. Vertices are written
/// 1-based in names and literals.
#[derive(Clone, PartialEq, Eq)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    paths_from: Vec<Vec<Path>>,
}

impl Quiver {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(HallError::Invalid("a quiver needs at least one vertex".into()));
        }
        if let Some(&(s, t)) = arrows.iter().find(|&&(s, t)| s >= n || t >= n) {
            return Err(HallError::Invalid(format!(
                "arrow {}->{} leaves the vertex range 1..={n}",
                s + 1,
                t + 1
            )));
        }
        let order = topological_order(n, &arrows)
            .ok_or_else(|| HallError::Invalid("quiver has an oriented cycle".into()))?;
        let mut quiver = Quiver { n, arrows, paths_from: Vec::new() };
        quiver.paths_from = (0..n).map(|i| quiver.collect_paths(i)).collect();
        debug_assert_eq!(order.len(), n);
        Ok(quiver)
    }

    /// `A1`, `A2` (1->2), `A3` (1->2->3).
    pub fn preset(name: &str) -> Option<Self> {
        let q = match name {
            "A1" => Quiver::new(1, vec![]),
            "A2" => Quiver::new(2, vec![(0, 1)]),
            "A3" => Quiver::new(3, vec![(0, 1), (1, 2)]),
            _ => return None,
        };
        q.ok()
    }

    /// Accepts a preset name or the literal form `n; s->t, s->t, ...`
    /// (1-based vertices).
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(q) = Quiver::preset(spec) {
            return Ok(q);
        }
        let err = |m: &str| HallError::Parse(format!("quiver `{spec}`: {m}"));
        let (n, rest) = spec.split_once(';').unwrap_or((spec, ""));
        let n: usize = n.trim().parse().map_err(|_| err("expected vertex count"))?;
        let mut arrows = Vec::new();
        for part in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (s, t) = part.split_once("->").ok_or_else(|| err("expected s->t"))?;
            let s: usize = s.trim().parse().map_err(|_| err("bad arrow source"))?;
            let t: usize = t.trim().parse().map_err(|_| err("bad arrow target"))?;
            if s == 0 || t == 0 {
                return Err(err("vertices are numbered from 1"));
            }
            arrows.push((s - 1, t - 1));
        }
        Quiver::new(n, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// All paths starting at `i`, trivial path first.
    pub fn paths_from(&self, i: usize) -> &[Path] {
        &self.paths_from[i]
    }

    fn collect_paths(&self, i: usize) -> Vec<Path> {
        let mut out = vec![Path { start: i, end: i, arrows: vec![] }];
        let mut k = 0;
        while k < out.len() {
            let p = out[k].clone();
            for (a, &(s, t)) in self.arrows.iter().enumerate() {
                if s == p.end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    out.push(Path { start: i, end: t, arrows });
                }
            }
            k += 1;
        }
        out
    }

    /// Euler form on integer vectors: `sum d_i e_i - sum_{a: s->t} d_s e_t`.
    pub fn euler(&self, d: &[i64], e: &[i64]) -> i64 {
        let diag: i64 = d.iter().zip(e).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| d[s] * e[t]).sum();
        diag - off
    }
}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> =
            self.arrows.iter().map(|(s, t)| format!("{}->{}", s + 1, t + 1)).collect();
        write!(f, "{}; {}", self.n, arrows.join(", "))
    }
}

fn topological_order(n: usize, arrows: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for &(_, t) in arrows {
        indeg[t] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        for &(s, t) in arrows {
            if s == v {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_and_literals() {
        let a3 = Quiver::preset("A3").unwrap();
        assert_eq!(a3.paths_from(0).len(), 3);
        assert_eq!(Quiver::parse("3; 1->2, 2->3").unwrap(), a3);
        assert_eq!(Quiver::parse("1").unwrap(), Quiver::preset("A1").unwrap());
        assert!(Quiver::parse("2; 1->2, 2->1").is_err());
        assert!(Quiver::parse("2; 1->3").is_err());
        assert!(Quiver::parse("x").is_err());
    }

    #[test]
    fn euler_form_a2() {
        let a2 = Quiver::preset("A2").unwrap();
        assert_eq!(a2.euler(&[1, 0], &[0, 1]), -1);
        assert_eq!(a2.euler(&[0, 1], &[1, 0]), 0);
        assert_eq!(a2.euler(&[1, 1], &[1, 1]), 1);
    }
}
