//! Hyperplanes, arrangements, sign vectors and exact region feasibility.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::fm::{self, Constraint, Relation};
use crate::linalg;
use crate::rational::{dot, signum, Point, Rational};

/// Hard cap on the number of hyperplanes; hyperplane subsets are `u64` masks.
pub const MAX_HYPERPLANES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("point has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("hyperplane {0} has a zero normal vector")]
    ZeroNormal(usize),
    #[error("hyperplanes {first} and {second} define the same affine subspace")]
    Duplicate { first: usize, second: usize },
    #[error("at most {MAX_HYPERPLANES} hyperplanes are supported, got {0}")]
    TooManyHyperplanes(usize),
    #[error("sign vector has length {got}, arrangement has {expected} hyperplanes")]
    SignLength { expected: usize, got: usize },
    #[error("region {0} is empty")]
    Infeasible(SignVector),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn from_i8(v: i8) -> Sign {
        match v.signum() {
            -1 => Sign::Neg,
            0 => Sign::Zero,
            _ => Sign::Pos,
        }
    }

    pub fn of(r: &Rational) -> Sign {
        Sign::from_i8(signum(r))
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Neg => -1,
            Sign::Zero => 0,
            Sign::Pos => 1,
        }
    }

    pub fn flip(self) -> Sign {
        Sign::from_i8(-self.to_i8())
    }

    fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

/// An element of `{-, 0, +}^n`, one entry per hyperplane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Sign {
        self.0[i]
    }

    /// True when no entry is zero, i.e. the vector names a chamber.
    pub fn is_chamber(&self) -> bool {
        self.0.iter().all(|&s| s != Sign::Zero)
    }

    pub fn zero_set(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == Sign::Zero)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// Face order: `self <= other` iff `self` lies in the closure of `other`.
    pub fn le(&self, other: &SignVector) -> bool {
        self.0
            .iter()
            .zip(&other.0)
            .all(|(&a, &b)| a == Sign::Zero || a == b)
    }

    pub fn parse(s: &str) -> Option<SignVector> {
        s.chars()
            .map(|c| match c {
                '+' => Some(Sign::Pos),
                '-' => Some(Sign::Neg),
                '0' => Some(Sign::Zero),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(SignVector)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

/// `H = { x : normal . x + offset = 0 }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Hyperplane {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        Hyperplane { normal, offset }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// The affine form `alpha_H(x)`.
    pub fn eval(&self, p: &[Rational]) -> Rational {
        dot(&self.normal, p) + &self.offset
    }

    pub fn side_of(&self, p: &[Rational]) -> Result<Sign, GeometryError> {
        if p.len() != self.dim() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim(),
                got: p.len(),
            });
        }
        Ok(Sign::of(&self.eval(p)))
    }

    /// The row `[normal | offset]`, used for projective comparisons.
    pub fn row(&self) -> Vec<Rational> {
        let mut r = self.normal.clone();
        r.push(self.offset.clone());
        r
    }

    /// Same affine subspace, i.e. proportional `(normal, offset)`.
    pub fn same_as(&self, other: &Hyperplane) -> bool {
        self.dim() == other.dim() && linalg::rank(&[self.row(), other.row()]) == 1
    }

    /// Constraint `s * alpha_H(x) (rel) 0` where `rel` is strict for nonzero `s`.
    pub fn signed_constraint(&self, s: Sign) -> Constraint {
        match s {
            Sign::Zero => Constraint::new(self.normal.clone(), self.offset.clone(), Relation::Zero),
            Sign::Pos => Constraint::new(self.normal.clone(), self.offset.clone(), Relation::Positive),
            Sign::Neg => Constraint::new(
                self.normal.iter().map(|c| -c).collect(),
                -self.offset.clone(),
                Relation::Positive,
            ),
        }
    }

    /// Closed version of [`Hyperplane::signed_constraint`].
    pub fn closed_constraint(&self, s: Sign) -> Constraint {
        let mut c = self.signed_constraint(s);
        if c.rel == Relation::Positive {
            c.rel = Relation::NonNegative;
        }
        c
    }
}

/// An ordered list of distinct affine hyperplanes in `R^dim`. Hyperplane
/// `H_i` of the literature is `hyperplanes[i - 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    pub fn new(dim: usize, hyperplanes: Vec<Hyperplane>) -> Result<Self, GeometryError> {
        if hyperplanes.len() > MAX_HYPERPLANES {
            return Err(GeometryError::TooManyHyperplanes(hyperplanes.len()));
        }
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.dim() != dim {
                return Err(GeometryError::DimensionMismatch {
                    expected: dim,
                    got: h.dim(),
                });
            }
            if h.normal.iter().all(Zero::is_zero) {
                return Err(GeometryError::ZeroNormal(i + 1));
            }
            if let Some(j) = hyperplanes[..i].iter().position(|g| g.same_as(h)) {
                return Err(GeometryError::Duplicate {
                    first: j + 1,
                    second: i + 1,
                });
            }
        }
        Ok(Arrangement { dim, hyperplanes })
    }

    pub fn empty(dim: usize) -> Self {
        Arrangement {
            dim,
            hyperplanes: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Hyperplane {
        &self.hyperplanes[i]
    }

    /// Rank of the normal vectors; the arrangement is essential when this equals `dim`.
    pub fn rank(&self) -> usize {
        let normals: Vec<_> = self.hyperplanes.iter().map(|h| h.normal.clone()).collect();
        linalg::rank(&normals)
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    /// Sign vector of a point.
    pub fn signs_at(&self, p: &[Rational]) -> Result<SignVector, GeometryError> {
        self.hyperplanes
            .iter()
            .map(|h| h.side_of(p))
            .collect::<Result<Vec<_>, _>>()
            .map(SignVector)
    }

    /// The open region `{x : sign(alpha_i(x)) = sv_i}` as a constraint list.
    pub fn region(&self, sv: &SignVector) -> Result<Vec<Constraint>, GeometryError> {
        if sv.len() != self.len() {
            return Err(GeometryError::SignLength {
                expected: self.len(),
                got: sv.len(),
            });
        }
        Ok(self
            .hyperplanes
            .iter()
            .zip(&sv.0)
            .map(|(h, &s)| h.signed_constraint(s))
            .collect())
    }

    pub fn feasible(&self, sv: &SignVector, extra: &[Constraint]) -> bool {
        match self.region(sv) {
            Ok(mut cs) => {
                cs.extend_from_slice(extra);
                fm::feasible(self.dim, &cs)
            }
            Err(_) => false,
        }
    }

    pub fn sample_point(&self, sv: &SignVector, extra: &[Constraint]) -> Result<Point, GeometryError> {
        let mut cs = self.region(sv)?;
        cs.extend_from_slice(extra);
        fm::sample(self.dim, &cs).ok_or_else(|| GeometryError::Infeasible(sv.clone()))
    }

    /// Drops hyperplane `i`.
    pub fn without(&self, i: usize) -> Arrangement {
        let mut hs = self.hyperplanes.clone();
        hs.remove(i);
        Arrangement {
            dim: self.dim,
            hyperplanes: hs,
        }
    }

    /// Appends a hyperplane, rejecting duplicates.
    pub fn with(&self, h: Hyperplane) -> Result<Arrangement, GeometryError> {
        let mut hs = self.hyperplanes.clone();
        hs.push(h);
        Arrangement::new(self.dim, hs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn hp(n: &[i64], off: Rational) -> Hyperplane {
        Hyperplane::new(n.iter().map(|&v| int(v)).collect(), off)
    }

    #[test]
    fn side_of_examples() {
        let h = hp(&[1, 1], int(-1));
        assert_eq!(h.side_of(&[int(0), int(0)]).unwrap(), Sign::Neg);
        assert_eq!(h.side_of(&[int(1), int(0)]).unwrap(), Sign::Zero);
        // y = x + 1/2 written as -x + y - 1/2 = 0, at (0, 1)
        let l1 = hp(&[-1, 1], frac(-1, 2));
        assert_eq!(l1.side_of(&[int(0), int(1)]).unwrap(), Sign::Pos);
    }

    #[test]
    fn side_of_rejects_wrong_dimension() {
        let h = hp(&[1, 1], int(-1));
        assert!(matches!(
            h.side_of(&[int(0)]),
            Err(GeometryError::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn rejects_duplicates_and_zero_normals() {
        let a = Arrangement::new(2, vec![hp(&[1, 2], int(3)), hp(&[-2, -4], int(-6))]);
        assert_eq!(a.unwrap_err(), GeometryError::Duplicate { first: 1, second: 2 });
        let a = Arrangement::new(2, vec![hp(&[0, 0], int(3))]);
        assert_eq!(a.unwrap_err(), GeometryError::ZeroNormal(1));
        // Parallel but distinct is fine.
        assert!(Arrangement::new(2, vec![hp(&[1, 2], int(3)), hp(&[1, 2], int(4))]).is_ok());
    }

    #[test]
    fn feasibility_on_the_line() {
        let a = Arrangement::new(1, vec![hp(&[1], int(0))]).unwrap();
        assert!(a.feasible(&SignVector(vec![Sign::Pos]), &[]));
        assert_eq!(a.sample_point(&SignVector(vec![Sign::Pos]), &[]).unwrap(), vec![int(1)]);
        // x < 0 and x > 1 with normals (1), (1), offsets 0, -1.
        let b = Arrangement::new(1, vec![hp(&[1], int(0)), hp(&[1], int(-1))]).unwrap();
        assert!(!b.feasible(&SignVector(vec![Sign::Neg, Sign::Pos]), &[]));
        assert_eq!(
            b.sample_point(&SignVector(vec![Sign::Pos, Sign::Neg]), &[]).unwrap(),
            vec![frac(1, 2)]
        );
        assert!(matches!(
            b.sample_point(&SignVector(vec![Sign::Neg, Sign::Pos]), &[]),
            Err(GeometryError::Infeasible(_))
        ));
    }

    #[test]
    fn sign_vector_text_roundtrip() {
        let sv = SignVector::parse("+-0").unwrap();
        assert_eq!(sv.to_string(), "+-0");
        assert_eq!(sv.zero_set(), 0b100);
        assert!(SignVector::parse("+x").is_none());
    }

    #[test]
    fn face_order_rule() {
        let x = SignVector::parse("0+").unwrap();
        assert!(x.le(&SignVector::parse("++").unwrap()));
        assert!(x.le(&SignVector::parse("-+").unwrap()));
        assert!(!x.le(&SignVector::parse("+-").unwrap()));
    }
}
