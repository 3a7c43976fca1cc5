//! Sparse integer Laurent polynomials in `q_1, ..., q_n`.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so the canonical
//! text form (terms in descending lexicographic exponent order) falls out of
//! a reverse iteration.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

pub type Exponent = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("weight q{0} is zero")]
    ZeroWeight(usize),
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("cannot parse Laurent polynomial `{text}`: {reason}")]
    Parse { text: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Laurent {
    nvars: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl Laurent {
    pub fn zero(nvars: usize) -> Self {
        Laurent {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], BigInt::one())
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        Self::monomial(vec![0; nvars], BigInt::from(c))
    }

    pub fn monomial(exp: Exponent, coeff: BigInt) -> Self {
        let nvars = exp.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Laurent { nvars, terms }
    }

    /// `q_{i+1}` (zero-based `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, BigInt::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn add_term(&mut self, exp: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Substitutes `q_i -> q_i^{-1}` for every variable.
    pub fn invert_variables(&self) -> Laurent {
        Laurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// Multiplicative inverse of a monomial `±q^e`.
    pub fn monomial_inverse(&self) -> Option<Laurent> {
        if !self.is_monomial() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        if !c.abs().is_one() {
            return None;
        }
        Some(Laurent::monomial(e.iter().map(|x| -x).collect(), c.clone()))
    }

    /// Exact substitution of nonzero rational weights.
    pub fn evaluate(&self, weights: &[Rational]) -> Result<Rational, LaurentError> {
        if weights.len() != self.nvars {
            return Err(LaurentError::WeightCount {
                expected: self.nvars,
                got: weights.len(),
            });
        }
        if let Some(i) = weights.iter().position(Zero::is_zero) {
            return Err(LaurentError::ZeroWeight(i + 1));
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(weights)
                    .filter(|(&k, _)| k != 0)
                    .fold(Rational::from_integer(c.clone()), |acc, (&k, w)| acc * w.pow(k))
            })
            .sum())
    }

    fn leading(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Per-variable (min, max) exponents.
    fn exponent_box(&self) -> Vec<(i32, i32)> {
        (0..self.nvars)
            .map(|i| {
                let it = self.terms.keys().map(|e| e[i]);
                (it.clone().min().unwrap_or(0), it.max().unwrap_or(0))
            })
            .collect()
    }

    /// `self / divisor` when the division is exact in the Laurent ring.
    pub fn exact_div(&self, divisor: &Laurent) -> Option<Laurent> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero(self.nvars));
        }
        // Exponents of an exact quotient lie in this box (Newton polytopes add).
        let (ab, bb) = (self.exponent_box(), divisor.exponent_box());
        let bounds: Vec<(i32, i32)> = ab
            .iter()
            .zip(&bb)
            .map(|(a, b)| (a.0 - b.0, a.1 - b.1))
            .collect();
        let (eb, cb) = divisor.leading().map(|(e, c)| (e.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Laurent::zero(self.nvars);
        while let Some((ea, ca)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let e: Exponent = ea.iter().zip(&eb).map(|(a, b)| a - b).collect();
            if e.iter().zip(&bounds).any(|(x, (lo, hi))| x < lo || x > hi) {
                return None;
            }
            let (c, r) = ca.div_rem(&cb);
            if !r.is_zero() {
                return None;
            }
            let t = Laurent::monomial(e, c);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Parses the canonical text form (also accepts any term order and `0`).
    pub fn parse(text: &str, nvars: usize) -> Result<Laurent, LaurentError> {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            nvars,
            text,
        }
        .parse()
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn err(&self, reason: impl Into<String>) -> LaurentError {
        LaurentError::Parse {
            text: self.text.to_string(),
            reason: reason.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn factor(&mut self, exp: &mut Exponent) -> Result<(), LaurentError> {
        // q<index>[^[-]<power>]
        self.pos += 1;
        let idx: usize = self
            .digits()
            .ok_or_else(|| self.err("expected variable index"))?
            .parse()
            .map_err(|_| self.err("bad variable index"))?;
        if idx == 0 || idx > self.nvars {
            return Err(self.err(format!("variable q{idx} out of range")));
        }
        let mut power = 1i32;
        if self.chars.get(self.pos) == Some(&'^') {
            self.pos += 1;
            let neg = self.chars.get(self.pos) == Some(&'-');
            if neg {
                self.pos += 1;
            }
            let p: i32 = self
                .digits()
                .ok_or_else(|| self.err("expected exponent"))?
                .parse()
                .map_err(|_| self.err("bad exponent"))?;
            power = if neg { -p } else { p };
        }
        exp[idx - 1] += power;
        Ok(())
    }

    fn parse(mut self) -> Result<Laurent, LaurentError> {
        let mut out = Laurent::zero(self.nvars);
        let mut first = true;
        loop {
            let mut sign = BigInt::one();
            match self.peek() {
                None if !first => break,
                None => return Err(self.err("empty input")),
                Some('+') if !first => self.pos += 1,
                Some('-') => {
                    sign = -sign;
                    self.pos += 1;
                }
                Some(_) if !first => return Err(self.err("expected + or -")),
                Some(_) => {}
            }
            let mut coeff = BigInt::one();
            let mut exp = vec![0; self.nvars];
            let mut need_factor = true;
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let d = self.digits().expect("peeked a digit");
                coeff = d.parse().map_err(|_| self.err("bad coefficient"))?;
                need_factor = false;
                if self.peek() == Some('*') {
                    self.pos += 1;
                    need_factor = true;
                }
            }
            if need_factor {
                if self.peek() != Some('q') {
                    return Err(self.err("expected q"));
                }
                self.factor(&mut exp)?;
                while self.peek() == Some('*') {
                    self.pos += 1;
                    if self.peek() != Some('q') {
                        return Err(self.err("expected q after *"));
                    }
                    self.factor(&mut exp)?;
                }
            }
            out.add_term(exp, sign * coeff);
            first = false;
        }
        Ok(out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| if k == 1 { format!("q{}", i + 1) } else { format!("q{}^{}", i + 1, k) })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write!(f, "{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &Laurent {
    type Output = Laurent;

    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;

    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Laurent {
    type Output = Laurent;

    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero(self.nvars.max(rhs.nvars));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea.iter().zip(eb).map(|(a, b)| a + b).collect(), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;

    fn neg(self) -> Laurent {
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, rhs: Laurent) -> Laurent {
        &self + &rhs
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        &self - &rhs
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn q(n: usize, i: usize) -> Laurent {
        Laurent::var(n, i)
    }

    #[test]
    fn canonical_form() {
        let a = &q(2, 0) * &q(2, 1);
        let d = &a - &a.monomial_inverse().unwrap();
        assert_eq!(d.to_string(), "q1*q2 - q1^-1*q2^-1");
        assert_eq!((-&d).to_string(), "-q1*q2 + q1^-1*q2^-1");
        let t = &(&q(3, 2) + &q(3, 2)) - &Laurent::one(3);
        assert_eq!(t.to_string(), "2*q3 - 1");
        assert_eq!(Laurent::zero(3).to_string(), "0");
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["q1*q2 - q1^-1*q2^-1", "-q1*q2*q3 + q1^-1*q2^-1*q3^-1", "2*q3 - 1", "0", "q2^3 - 5"] {
            assert_eq!(Laurent::parse(s, 3).unwrap().to_string(), s);
        }
        assert!(Laurent::parse("q4", 3).is_err());
        assert!(Laurent::parse("q1 q2", 3).is_err());
        assert!(Laurent::parse("", 3).is_err());
    }

    #[test]
    fn evaluation() {
        let d = &q(1, 0) - &q(1, 0).monomial_inverse().unwrap();
        assert_eq!(d.evaluate(&[int(2)]).unwrap(), frac(3, 2));
        assert_eq!(d.evaluate(&[int(0)]).unwrap_err(), LaurentError::ZeroWeight(1));
    }

    #[test]
    fn exact_division() {
        let a = &q(2, 0) - &Laurent::one(2);
        let b = &q(2, 1) + &q(2, 0).monomial_inverse().unwrap();
        let p = &a * &b;
        assert_eq!(p.exact_div(&b).unwrap(), a);
        assert_eq!(p.exact_div(&a).unwrap(), b);
        assert!(a.exact_div(&b).is_none());
        let two = Laurent::constant(2, 2);
        assert!(a.exact_div(&two).is_none());
    }
}
