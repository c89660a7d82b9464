use std::cmp::{Ordering, Reverse};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

/// An element of the Grothendieck group, identified with `Z^{Q_0}` via
/// dimension vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KClass(pub Vec<i64>);

impl KClass {
    pub fn zero(n: usize) -> Self {
        KClass(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        KClass(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, k: i64) -> KClass {
        KClass(self.0.iter().map(|x| x * k).collect())
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &KClass) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn min(&self, other: &KClass) -> KClass {
        KClass(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn as_dims(&self) -> Vec<usize> {
        self.0.iter().map(|&x| usize::try_from(x).expect("negative dimension")).collect()
    }

    pub fn doubled(&self) -> HalfKClass {
        HalfKClass(self.0.iter().map(|x| 2 * x).collect())
    }
}

impl Add for &KClass {
    type Output = KClass;
    fn add(self, o: &KClass) -> KClass {
        KClass(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &KClass {
    type Output = KClass;
    fn sub(self, o: &KClass) -> KClass {
        KClass(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        self.scale(-1)
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An element `d/2` of the half lattice, stored as the doubled vector `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfKClass(pub Vec<i64>);

impl HalfKClass {
    pub fn zero(n: usize) -> Self {
        HalfKClass(vec![0; n])
    }

    pub fn from_doubled(d: Vec<i64>) -> Self {
        HalfKClass(d)
    }

    pub fn doubled(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `x/2` for an integral class `x`.
    pub fn half_of(x: &KClass) -> HalfKClass {
        HalfKClass(x.0.clone())
    }

    pub fn scale(&self, k: i64) -> HalfKClass {
        HalfKClass(self.0.iter().map(|x| x * k).collect())
    }
}

impl Add for &HalfKClass {
    type Output = HalfKClass;
    fn add(self, o: &HalfKClass) -> HalfKClass {
        HalfKClass(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &HalfKClass {
    type Output = HalfKClass;
    fn sub(self, o: &HalfKClass) -> HalfKClass {
        HalfKClass(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for HalfKClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|x| x % 2 == 0) {
            let parts: Vec<String> = self.0.iter().map(|x| (x / 2).to_string()).collect();
            write!(f, "({})", parts.join(","))
        } else {
            let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
            write!(f, "({})/2", parts.join(","))
        }
    }
}

/// Label of an indecomposable: its dimension vector and its index among
/// the indecomposables of that dimension vector (in enumeration order).
/// The display name travels along but takes no part in comparisons.
#[derive(Clone)]
pub struct IndecId {
    pub dim: KClass,
    pub index: u32,
    pub name: Arc<str>,
}

impl IndecId {
    /// Smaller total dimension first, then lexicographically larger
    /// dimension vector, so simples come out as `S1, S2, ...`.
    fn key(&self) -> (i64, Reverse<&[i64]>, u32) {
        (self.dim.total(), Reverse(&self.dim.0), self.index)
    }
}

impl PartialEq for IndecId {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.index == o.index
    }
}
impl Eq for IndecId {}

impl Hash for IndecId {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.index.hash(state);
    }
}

impl PartialOrd for IndecId {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for IndecId {
    fn cmp(&self, o: &Self) -> Ordering {
        self.key().cmp(&o.key())
    }
}

impl fmt::Debug for IndecId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Display for IndecId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Isomorphism class of a module in Krull–Schmidt normal form: the sorted
/// multiset of its indecomposable summands.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IsoClass {
    summands: Vec<IndecId>,
    dim: KClass,
}

impl IsoClass {
    pub fn zero(n: usize) -> Self {
        IsoClass { summands: Vec::new(), dim: KClass::zero(n) }
    }

    pub fn from_summands(n: usize, mut summands: Vec<IndecId>) -> Self {
        summands.sort();
        let dim = summands.iter().fold(KClass::zero(n), |acc, s| &acc + &s.dim);
        IsoClass { summands, dim }
    }

    pub fn summands(&self) -> &[IndecId] {
        &self.summands
    }

    pub fn dim(&self) -> &KClass {
        &self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn direct_sum(&self, other: &IsoClass) -> IsoClass {
        let mut s = self.summands.clone();
        s.extend(other.summands.iter().cloned());
        IsoClass::from_summands(self.dim.len(), s)
    }

    /// `(indecomposable, multiplicity)` pairs in order.
    pub fn multiplicities(&self) -> Vec<(IndecId, usize)> {
        let mut out: Vec<(IndecId, usize)> = Vec::new();
        for s in &self.summands {
            match out.last_mut() {
                Some((last, n)) if last == s => *n += 1,
                _ => out.push((s.clone(), 1)),
            }
        }
        out
    }
}

impl PartialOrd for IsoClass {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for IsoClass {
    fn cmp(&self, o: &Self) -> Ordering {
        self.summands.cmp(&o.summands).then_with(|| self.dim.cmp(&o.dim))
    }
}

impl fmt::Display for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<&str> = self.summands.iter().map(|s| &*s.name).collect();
        write!(f, "{}", names.join("+"))
    }
}

impl fmt::Debug for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}
