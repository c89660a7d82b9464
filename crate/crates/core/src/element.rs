//! Finite scalar-linear combinations of basis elements, with a text form
//! that round-trips: `v^-1*[S1+S2@0] + (1 + v)*[P1@0]`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{HallError, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Element<B: Ord> {
    q: u32,
    terms: BTreeMap<B, Scalar>,
}

impl<B: Ord + Clone> Element<B> {
    pub fn zero(q: u32) -> Self {
        Element { q, terms: BTreeMap::new() }
    }

    pub fn basis(q: u32, b: B) -> Self {
        Self::monomial(b, Scalar::one(q))
    }

    pub fn monomial(b: B, c: Scalar) -> Self {
        let mut e = Element::zero(c.q());
        e.add_term(b, c);
        e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn add_term(&mut self, b: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(old) => {
                *old += &c;
                if old.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn add(&self, other: &Element<B>) -> Element<B> {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Element<B> {
        let mut out = Element::zero(self.q);
        for (b, x) in &self.terms {
            out.add_term(b.clone(), x * c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&B, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(|| Scalar::zero(self.q))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<C: Ord + Clone>(&self, f: impl Fn(&B) -> Result<Element<C>>) -> Result<Element<C>> {
        let mut out = Element::zero(self.q);
        for (b, c) in &self.terms {
            for (b2, c2) in f(b)?.terms {
                out.add_term(b2, &c2 * c);
            }
        }
        Ok(out)
    }

    /// Bilinear extension of a product on basis elements.
    pub fn bilinear(
        &self,
        other: &Element<B>,
        f: impl Fn(&B, &B) -> Result<Element<B>>,
    ) -> Result<Element<B>> {
        let mut out = Element::zero(self.q);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let xy = x * y;
                for (c, z) in f(a, b)?.terms {
                    out.add_term(c, &z * &xy);
                }
            }
        }
        Ok(out)
    }

    /// First basis element (in order) whose coefficients differ.
    pub fn first_difference<'a>(&'a self, other: &'a Element<B>) -> Option<(&'a B, Scalar, Scalar)> {
        let mut keys: Vec<&B> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|b| {
            let (x, y) = (self.coefficient(b), other.coefficient(b));
            (x != y).then_some((b, x, y))
        })
    }
}

impl<B: Ord + Clone + fmt::Display> Element<B> {
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(b, c)| json!({ "basis": b.to_string(), "scalar": c.to_string(), "coeffs": c.to_strings() }))
                .collect(),
        )
    }
}

fn format_term(b: &impl fmt::Display, c: &Scalar) -> String {
    if c.is_one() {
        return b.to_string();
    }
    if (-c).is_one() {
        return format!("-{b}");
    }
    if c.monomials().len() == 1 {
        format!("{c}*{b}")
    } else {
        format!("({c})*{b}")
    }
}

impl<B: Ord + fmt::Display> fmt::Display for Element<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let t = format_term(b, c);
            if i == 0 {
                write!(f, "{t}")?;
            } else if let Some(rest) = t.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {t}")?;
            }
        }
        Ok(())
    }
}

impl<B: Ord + fmt::Display> fmt::Debug for Element<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses an element literal. `parse_basis` receives each basis literal
/// verbatim, e.g. `[S1@0]` or `[S1@0]K[(1,0)/2@1]`.
pub fn parse_element<B: Ord + Clone>(q: u32, s: &str, parse_basis: impl Fn(&str) -> Result<B>) -> Result<Element<B>> {
    let mut p = Parser { src: s, pos: 0, q };
    let mut out = Element::zero(q);
    p.skip_ws();
    if p.eat_str("0") {
        p.skip_ws();
        if p.at_end() {
            return Ok(out);
        }
        p.pos = 0;
    }
    let mut first = true;
    loop {
        p.skip_ws();
        let mut neg = false;
        if !first {
            if p.eat('-') {
                neg = true;
            } else if !p.eat('+') {
                return Err(p.error("expected `+` or `-` between terms"));
            }
            p.skip_ws();
        }
        if p.eat('-') {
            neg = !neg;
        }
        let (coeff, basis) = p.term()?;
        let coeff = if neg { -&coeff } else { coeff };
        out.add_term(parse_basis(basis)?, coeff);
        first = false;
        p.skip_ws();
        if p.at_end() {
            return Ok(out);
        }
    }
}

/// Parses a scalar literal such as `1 + 2*v^-1`, `v^(3/4)`, `-q*t^3`.
pub fn parse_scalar(q: u32, s: &str) -> Result<Scalar> {
    let mut p = Parser { src: s, pos: 0, q };
    let v = p.sum()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    q: u32,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> HallError {
        HallError::Parse(format!("{msg} at position {} in `{}`", self.pos, self.src))
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    /// `(factor '*')* basis`.
    fn term(&mut self) -> Result<(Scalar, &'a str)> {
        let mut coeff = Scalar::one(self.q);
        loop {
            self.skip_ws();
            if self.peek() == Some('[') {
                return Ok((coeff, self.basis_literal()?));
            }
            coeff = &coeff * &self.factor()?;
            self.skip_ws();
            if !self.eat('*') {
                return Err(self.error("expected `*` before basis element"));
            }
        }
    }

    /// `[...]` optionally followed by `K[...]`.
    fn basis_literal(&mut self) -> Result<&'a str> {
        let start = self.pos;
        self.bracket()?;
        if self.rest().starts_with("K[") {
            self.pos += 1;
            self.bracket()?;
        }
        Ok(&self.src[start..self.pos])
    }

    fn bracket(&mut self) -> Result<()> {
        if !self.eat('[') {
            return Err(self.error("expected `[`"));
        }
        match self.rest().find(']') {
            Some(k) => {
                self.pos += k + 1;
                Ok(())
            }
            None => Err(self.error("unclosed `[`")),
        }
    }

    /// `['-'] product (('+'|'-') product)*`.
    fn sum(&mut self) -> Result<Scalar> {
        self.skip_ws();
        let neg = self.eat('-');
        let mut acc = self.product()?;
        if neg {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            if self.eat('+') {
                acc = &acc + &self.product()?;
            } else if self.eat('-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            let save = self.pos;
            if self.eat('*') {
                self.skip_ws();
                if self.peek() == Some('[') {
                    self.pos = save;
                    return Ok(acc);
                }
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar> {
        self.skip_ws();
        let q = self.q;
        if self.eat('(') {
            let v = self.sum()?;
            self.skip_ws();
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            return Ok(v);
        }
        if self.eat('-') {
            return Ok(-&self.factor()?);
        }
        for (sym, unit) in [('v', 4i64), ('t', 1), ('q', 8)] {
            if self.eat(sym) {
                let quarters = if self.eat('^') { self.exponent(unit)? } else { unit };
                return Ok(Scalar::v_power(q, quarters));
            }
        }
        let r = self.rational()?;
        Ok(Scalar::from_rational(q, r))
    }

    /// Exponent after `^`, returned in units of `t`.
    fn exponent(&mut self, unit: i64) -> Result<i64> {
        let r = if self.eat('(') {
            self.skip_ws();
            let neg = self.eat('-');
            let mut r = self.rational()?;
            if neg {
                r = -r;
            }
            self.skip_ws();
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            r
        } else {
            let neg = self.eat('-');
            let n = self.integer()?;
            BigRational::from_integer(if neg { -n } else { n })
        };
        let t = r * BigRational::from_integer(unit.into());
        if !t.is_integer() {
            return Err(self.error("exponent is not a multiple of 1/4 in v"));
        }
        t.to_integer().try_into().map_err(|_| self.error("exponent out of range"))
    }

    fn integer(&mut self) -> Result<BigInt> {
        let digits: String = self.rest().chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.error("expected a number"));
        }
        self.pos += digits.len();
        Ok(digits.parse().unwrap())
    }

    fn rational(&mut self) -> Result<BigRational> {
        let n = self.integer()?;
        let save = self.pos;
        if self.eat('/') {
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(HallError::DivisionByZero);
                }
                return Ok(BigRational::new(n, d));
            }
            self.pos = save;
        }
        Ok(BigRational::new(n, BigInt::one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn basis(s: &str) -> Result<String> {
        Ok(s.to_string())
    }

    #[test]
    fn scalars_parse() {
        let q = 2;
        assert_eq!(parse_scalar(q, "v^2").unwrap(), Scalar::from_int(q, 2));
        assert_eq!(parse_scalar(q, "q").unwrap(), Scalar::from_int(q, 2));
        assert_eq!(parse_scalar(q, "t^8").unwrap(), Scalar::from_int(q, 2));
        assert_eq!(parse_scalar(q, "v^(1/2)").unwrap(), Scalar::v_power(q, 2));
        assert_eq!(parse_scalar(q, "v^(-3/4)").unwrap(), Scalar::v_power(q, -3));
        assert_eq!(parse_scalar(q, "1/2*v^-1").unwrap(), Scalar::v_power(q, -12));
        assert_eq!(parse_scalar(q, "(1 + v)*(1 - v)").unwrap(), Scalar::from_int(q, -1));
        assert!(parse_scalar(q, "v^(1/8)").is_err());
        assert!(parse_scalar(q, "1/0").is_err());
    }

    #[test]
    fn elements_print_and_parse() {
        let q = 3;
        let mut e: Element<String> = Element::zero(q);
        assert_eq!(e.to_string(), "0");
        e.add_term("[a]".into(), Scalar::one(q));
        e.add_term("[b]".into(), Scalar::v_power(q, -4));
        e.add_term("[c]K[(1,0)@0]".into(), &Scalar::one(q) + &Scalar::v_power(q, 3));
        e.add_term("[d]".into(), Scalar::from_int(q, -2));
        let s = e.to_string();
        assert_eq!(s, "[a] + v^-1*[b] + (v^(3/4) + 1)*[c]K[(1,0)@0] - 2*[d]");
        assert_eq!(parse_element(q, &s, basis).unwrap(), e);
        assert_eq!(parse_element(q, "0", basis).unwrap(), Element::zero(q));
        assert!(parse_element(q, "[a] [b]", basis).is_err());
        assert!(parse_element(q, "2 [a]", basis).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let q = 2;
        let mut e: Element<String> = Element::basis(q, "[a]".into());
        e.add_term("[a]".into(), Scalar::from_int(q, -1));
        assert!(e.is_zero());
    }

    fn arb_scalar(q: u32) -> impl Strategy<Value = Scalar> {
        prop::collection::vec((-20i64..20, -5i64..5, 1i64..4), 0..4).prop_map(move |ms| {
            let mut s = Scalar::zero(q);
            for (e, n, d) in ms {
                s.add_monomial(e, &BigRational::new(n.into(), d.into()));
            }
            s
        })
    }

    proptest! {
        #[test]
        fn printed_elements_reparse(cs in prop::collection::vec(arb_scalar(2), 1..4)) {
            let mut e: Element<String> = Element::zero(2);
            for (i, c) in cs.into_iter().enumerate() {
                e.add_term(format!("[x{i}]"), c);
            }
            let back = parse_element(2, &e.to_string(), basis).unwrap();
            prop_assert_eq!(back, e);
        }

        #[test]
        fn printed_scalars_reparse(s in arb_scalar(3)) {
            prop_assert_eq!(parse_scalar(3, &s.to_string()).unwrap(), s);
        }
    }
}
