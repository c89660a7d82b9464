//! Exact coefficients in Q[t]/(t^8 - q).
//!
//! `t` is the positive eighth root of the prime `q`, so `v = sqrt(q) = t^4`
//! and every quarter-integer power of `v` is a power of `t`. Because `q` is
//! prime, `t^8 - q` is Eisenstein and the quotient is a field.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{HallError, Result};

pub const DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    q: u32,
    coeffs: [BigRational; DEGREE],
}

fn zero_coeffs() -> [BigRational; DEGREE] {
    std::array::from_fn(|_| BigRational::zero())
}

/// `q^k` for any integer `k`.
pub fn rational_q_power(q: u32, k: i64) -> BigRational {
    let base = BigInt::from(q).pow(k.unsigned_abs() as u32);
    if k >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

impl Scalar {
    pub fn zero(q: u32) -> Self {
        Scalar { q, coeffs: zero_coeffs() }
    }

    pub fn one(q: u32) -> Self {
        Self::from_rational(q, BigRational::one())
    }

    pub fn from_rational(q: u32, r: BigRational) -> Self {
        let mut s = Self::zero(q);
        s.coeffs[0] = r;
        s
    }

    pub fn from_int(q: u32, n: i64) -> Self {
        Self::from_rational(q, BigRational::from_integer(n.into()))
    }

    /// `v^(n/4)`, i.e. `t^n`, reduced with `t^8 = q`.
    pub fn v_power(q: u32, n: i64) -> Self {
        Self::monomial(q, n, BigRational::one())
    }

    /// `c * t^n`.
    pub fn monomial(q: u32, n: i64, c: BigRational) -> Self {
        let mut s = Self::zero(q);
        s.add_monomial(n, &c);
        s
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[BigRational; DEGREE] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns the value if it lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then_some(&self.coeffs[0])
    }

    /// `self += c * t^n`.
    pub fn add_monomial(&mut self, n: i64, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let k = n.div_euclid(DEGREE as i64);
        let r = n.rem_euclid(DEGREE as i64) as usize;
        let term = c * rational_q_power(self.q, k);
        self.coeffs[r] += term;
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        Scalar { q: self.q, coeffs: std::array::from_fn(|i| &self.coeffs[i] * c) }
    }

    /// Multiplies by `t^n`.
    pub fn shift(&self, n: i64) -> Scalar {
        let mut out = Scalar::zero(self.q);
        for (j, c) in self.coeffs.iter().enumerate() {
            out.add_monomial(n + j as i64, c);
        }
        out
    }

    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(HallError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Scalar::from_rational(self.q, r.recip()));
        }
        // Solve (multiplication by self) * x = 1 over Q.
        let cols: Vec<Scalar> = (0..DEGREE as i64).map(|j| self.shift(j)).collect();
        let mut m: Vec<Vec<BigRational>> = (0..DEGREE)
            .map(|i| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c.coeffs[i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..DEGREE {
            let p = (col..DEGREE)
                .find(|&r| !m[r][col].is_zero())
                .expect("t^8 - q is irreducible, so nonzero elements are invertible");
            m.swap(col, p);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..DEGREE {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    let pivot = m[col].clone();
                    for (x, p) in m[r][col..].iter_mut().zip(&pivot[col..]) {
                        *x -= &f * p;
                    }
                }
            }
        }
        Ok(Scalar { q: self.q, coeffs: std::array::from_fn(|i| m[i][DEGREE].clone()) })
    }

    /// Value at the real root `t = q^(1/8)`. Diagnostics only.
    pub fn eval_real(&self) -> f64 {
        let t = (self.q as f64).powf(1.0 / DEGREE as f64);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c.to_f64().unwrap_or(f64::NAN) * t.powi(j as i32))
            .sum()
    }

    /// Monomials `c * t^e` with `c` normalised so that negative powers of `q`
    /// are absorbed into the exponent. Sorted by decreasing exponent.
    pub fn monomials(&self) -> Vec<(i64, BigRational)> {
        let q = BigInt::from(self.q);
        let mut out: Vec<(i64, BigRational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let val = q_valuation(c.numer(), &q) - q_valuation(c.denom(), &q);
                let k = val.min(0);
                let c = c * rational_q_power(self.q, -k);
                (j as i64 + DEGREE as i64 * k, c)
            })
            .collect();
        out.sort_by_key(|t| std::cmp::Reverse(t.0));
        out
    }

    /// Eight `"num/den"` strings, lowest terms with positive denominator.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect()
    }

    pub fn from_strings(q: u32, parts: &[String]) -> Result<Scalar> {
        if parts.len() != DEGREE {
            return Err(HallError::Parse(format!(
                "scalar needs {DEGREE} coefficients, got {}",
                parts.len()
            )));
        }
        let mut s = Scalar::zero(q);
        for (slot, p) in s.coeffs.iter_mut().zip(parts) {
            *slot = parse_rational(p)?;
        }
        Ok(s)
    }

    fn check_q(&self, other: &Scalar) {
        assert_eq!(self.q, other.q, "mixing scalars over different q");
    }
}

fn q_valuation(n: &BigInt, q: &BigInt) -> i64 {
    if n.is_zero() {
        return 0;
    }
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (d, r) = n.div_rem(q);
        if !r.is_zero() {
            return v;
        }
        n = d;
        v += 1;
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || HallError::Parse(format!("bad rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Writes `v^(e/4)` for a quarter exponent `e`.
pub fn format_v_exponent(e: i64) -> String {
    if e % 4 == 0 {
        match e / 4 {
            1 => "v".to_string(),
            k => format!("v^{k}"),
        }
    } else {
        let g = e.abs().gcd(&4);
        format!("v^({}/{})", e / g, 4 / g)
    }
}

fn format_monomial(e: i64, c: &BigRational) -> String {
    let neg = c.is_negative();
    let a = c.abs();
    let body = match (e == 0, a.is_one()) {
        (true, _) => format_rational(&a),
        (false, true) => format_v_exponent(e),
        (false, false) => format!("{}*{}", format_rational(&a), format_v_exponent(e)),
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monos = self.monomials();
        if monos.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in monos.iter().enumerate() {
            let s = format_monomial(*e, c);
            if i == 0 {
                write!(f, "{s}")?;
            } else if let Some(rest) = s.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {s}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar(q={}; {})", self.q, self)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_q(rhs);
        Scalar { q: self.q, coeffs: std::array::from_fn(|i| &self.coeffs[i] + &rhs.coeffs[i]) }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_q(rhs);
        Scalar { q: self.q, coeffs: std::array::from_fn(|i| &self.coeffs[i] - &rhs.coeffs[i]) }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_q(rhs);
        let mut wide: Vec<BigRational> = vec![BigRational::zero(); 2 * DEGREE - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    wide[i + j] += a * b;
                }
            }
        }
        let q = BigRational::from_integer(self.q.into());
        let mut out = Scalar::zero(self.q);
        for (k, c) in wide.into_iter().enumerate() {
            if k < DEGREE {
                out.coeffs[k] += c;
            } else {
                out.coeffs[k - DEGREE] += c * &q;
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { q: self.q, coeffs: std::array::from_fn(|i| -&self.coeffs[i]) }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.check_q(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.check_q(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn v_power_basics() {
        assert!(Scalar::v_power(2, 0).is_one());
        assert_eq!(Scalar::v_power(2, 8), Scalar::from_int(2, 2));
        assert!((Scalar::v_power(3, -4) * Scalar::v_power(3, 4)).is_one());
        let v = Scalar::v_power(5, 4);
        assert_eq!(&v * &v, Scalar::from_int(5, 5));
    }

    #[test]
    fn invert_t_and_zero() {
        let t = Scalar::v_power(2, 1);
        assert!((t.inverse().unwrap() * &t).is_one());
        assert_eq!(t.inverse().unwrap(), Scalar::monomial(2, 7, rat(1, 2)));
        assert_eq!(Scalar::zero(2).inverse(), Err(HallError::DivisionByZero));
    }

    #[test]
    fn eval_real_values() {
        assert_eq!(Scalar::one(2).eval_real(), 1.0);
        assert!((Scalar::v_power(2, 4).eval_real() - 2f64.sqrt()).abs() < 1e-9);
        assert!((Scalar::v_power(2, 1).eval_real() - 2f64.powf(0.125)).abs() < 1e-9);
        assert!((Scalar::v_power(2, 1).eval_real() - 1.090508).abs() < 1e-6);
    }

    #[test]
    fn display_normalises_q_powers() {
        assert_eq!(Scalar::v_power(2, -4).to_string(), "v^-1");
        assert_eq!(Scalar::v_power(3, -3).to_string(), "v^(-3/4)");
        assert_eq!(Scalar::v_power(3, 2).to_string(), "v^(1/2)");
        let s = Scalar::v_power(3, -4).scale(&rat(2, 1)) + Scalar::one(3);
        assert_eq!(s.to_string(), "1 + 2*v^-1");
        assert_eq!(Scalar::from_int(2, 4).to_string(), "4");
        assert_eq!((-Scalar::v_power(2, 4)).to_string(), "-v");
    }

    #[test]
    fn string_serialization() {
        let s = Scalar::monomial(3, 5, rat(-2, 6));
        let strs = s.to_strings();
        assert_eq!(strs[5], "-1/3");
        assert_eq!(strs[0], "0/1");
        assert_eq!(Scalar::from_strings(3, &strs).unwrap(), s);
        assert!(Scalar::from_strings(3, &strs[..3]).is_err());
    }

    fn arb_scalar(q: u32) -> impl Strategy<Value = Scalar> {
        prop::collection::vec((-20i64..20, 1i64..6), DEGREE).prop_map(move |cs| {
            let mut s = Scalar::zero(q);
            for (j, (n, d)) in cs.into_iter().enumerate() {
                s.add_monomial(j as i64, &rat(n, d));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(3), b in arb_scalar(3), c in arb_scalar(3)) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }

        #[test]
        fn v_powers_compose(m in -64i64..=64, n in -64i64..=64) {
            prop_assert_eq!(Scalar::v_power(2, m) * Scalar::v_power(2, n), Scalar::v_power(2, m + n));
        }

        #[test]
        fn eval_real_is_multiplicative(a in arb_scalar(2), b in arb_scalar(2)) {
            let lhs = (&a * &b).eval_real();
            let rhs = a.eval_real() * b.eval_real();
            prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs().max(rhs.abs())));
        }
    }
}
