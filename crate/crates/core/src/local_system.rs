//! Rank-one local systems: transport along the positive and negative
//! geodesic morphisms and the skein operator.
//!
//! With weights `q_i`, the positive geodesic `P+(C, C')` acts on the rank-one
//! fiber by the monomial `prod q_i` over the hyperplanes separating `C` and
//! `C'`; `P-(C, C')` is the inverse monomial. The local monodromy around
//! `H_i` is therefore `q_i^2`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::faces::separating_set;
use crate::geometry::SignVector;
use crate::laurent::{Laurent, LaurentError};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankOneSystem {
    pub nvars: usize,
}

impl RankOneSystem {
    pub fn new(nvars: usize) -> Self {
        RankOneSystem { nvars }
    }

    fn separator_monomial(&self, c: &SignVector, c2: &SignVector, power: i32) -> Laurent {
        let mut e = vec![0; self.nvars];
        for i in separating_set(c, c2) {
            e[i] = power;
        }
        Laurent::monomial(e, BigInt::one())
    }

    /// `Phi_{P+(C, C')}` on the rank-one fiber.
    pub fn transport_plus(&self, c: &SignVector, c2: &SignVector) -> Laurent {
        self.separator_monomial(c, c2, 1)
    }

    /// `Phi_{P-(C, C')}`, the inverse of the positive transport.
    pub fn transport_minus(&self, c: &SignVector, c2: &SignVector) -> Laurent {
        self.separator_monomial(c, c2, -1)
    }

    /// `Delta(C, C') = Phi_{P+} - Phi_{P-} = q_S - q_S^{-1}`.
    pub fn skein(&self, c: &SignVector, c2: &SignVector) -> Laurent {
        &self.transport_plus(c, c2) - &self.transport_minus(c, c2)
    }
}

/// A concrete assignment of nonzero rational weights `q_1..q_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightAssignment(Vec<Rational>);

impl WeightAssignment {
    pub fn new(weights: Vec<Rational>) -> Result<Self, LaurentError> {
        if let Some(i) = weights.iter().position(Zero::is_zero) {
            return Err(LaurentError::ZeroWeight(i + 1));
        }
        Ok(WeightAssignment(weights))
    }

    pub fn trivial(n: usize) -> Self {
        WeightAssignment(vec![Rational::one(); n])
    }

    /// Distinct primes `2, 3, 5, ...`: no product of their nonzero powers is
    /// `±1`, which keeps every monomial resonance condition off.
    pub fn generic_probe(n: usize) -> Self {
        let mut primes = Vec::with_capacity(n);
        let mut k = 2u64;
        while primes.len() < n {
            if (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0) {
                primes.push(Rational::from_integer(BigInt::from(k)));
            }
            k += 1;
        }
        WeightAssignment(primes)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn evaluate(elem: &Laurent, assignment: &WeightAssignment) -> Result<Rational, LaurentError> {
    elem.evaluate(assignment.values())
}
