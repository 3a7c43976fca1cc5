//! The twisted chain complex `(C_*, ∂_*)` of a rank-one local system, its
//! homology at concrete weights, and resonance tests.
//!
//! `C_k` is free on `ch_k` and the matrix of `∂_k` has entry
//! `-sign(C) deg(C, C') (q_S - q_S^{-1})` in row `C'`, column `C`, with `S`
//! the set of hyperplanes separating `C` and `C'`.

use std::fmt;

use thiserror::Error;

use crate::degree::{degree_tables, DegreeError, DegreeOptions, DegreeTable};
use crate::flag::{partition, sign_or_plus, ChamberPartition, FlagError, OrientedFlag};
use crate::geometry::Arrangement;
use crate::laurent::{Laurent, LaurentError};
use crate::linalg;
use crate::local_system::{RankOneSystem, WeightAssignment};
use crate::rational::Rational;

/// Symbolic ranks are only attempted up to this size.
pub const SYMBOLIC_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Degree(#[from] DegreeError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("boundary matrix {rows}x{cols} exceeds the symbolic rank limit of {SYMBOLIC_LIMIT}")]
    TooLarge { rows: usize, cols: usize },
    #[error("boundary composition d{k}∘d{} is not zero", .k + 1)]
    NotAComplex { k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Laurent>>,
    nvars: usize,
}

impl LaurentMatrix {
    pub fn zero(rows: usize, cols: usize, nvars: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            entries: vec![vec![Laurent::zero(nvars); cols]; rows],
            nvars,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Laurent::is_zero)
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = LaurentMatrix::zero(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Laurent::zero(self.nvars);
                for t in 0..self.cols {
                    if !self.entries[i][t].is_zero() && !other.entries[t][j].is_zero() {
                        acc = &acc + &(&self.entries[i][t] * &other.entries[t][j]);
                    }
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }

    pub fn evaluate(&self, weights: &WeightAssignment) -> Result<Vec<Vec<Rational>>, LaurentError> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.evaluate(weights.values())).collect())
            .collect()
    }

    pub fn rank_at(&self, weights: &WeightAssignment) -> Result<usize, LaurentError> {
        if self.rows == 0 || self.cols == 0 {
            return Ok(0);
        }
        Ok(linalg::bareiss_rank(&self.evaluate(weights)?))
    }

    /// Rank over the fraction field of the Laurent ring, by fraction-free
    /// elimination with exact division.
    pub fn symbolic_rank(&self) -> Result<usize, ComplexError> {
        if self.rows > SYMBOLIC_LIMIT || self.cols > SYMBOLIC_LIMIT {
            return Err(ComplexError::TooLarge {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut m = self.entries.clone();
        let mut prev = Laurent::one(self.nvars);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                    m[i][j] = v.exact_div(&prev).expect("fraction-free elimination divides exactly");
                }
                m[i][c] = Laurent::zero(self.nvars);
            }
            prev = m[r][c].clone();
            r += 1;
        }
        Ok(r)
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct TwistedComplex {
    pub nvars: usize,
    pub partition: ChamberPartition,
    pub degrees: Vec<DegreeTable>,
    /// `boundaries[k - 1]` is `∂_k`, rows indexed by `ch_{k-1}`, columns by `ch_k`.
    pub boundaries: Vec<LaurentMatrix>,
}

pub fn build_complex(
    arr: &Arrangement,
    flag: &OrientedFlag,
    opts: &DegreeOptions,
) -> Result<TwistedComplex, ComplexError> {
    let part = partition(arr, flag)?;
    let degrees = degree_tables(arr, flag, &part, opts)?;
    Ok(from_parts(arr.len(), part, degrees))
}

pub fn from_parts(nvars: usize, part: ChamberPartition, degrees: Vec<DegreeTable>) -> TwistedComplex {
    let sys = RankOneSystem::new(nvars);
    let boundaries = degrees
        .iter()
        .map(|table| {
            let k = table.level;
            let (top, bottom) = (&part.levels[k], &part.levels[k - 1]);
            let mut m = LaurentMatrix::zero(bottom.len(), top.len(), nvars);
            for (j, c) in top.iter().enumerate() {
                let coeff = -(sign_or_plus(c) as i64);
                for (i, t) in bottom.iter().enumerate() {
                    let d = table.values[j][i];
                    if d != 0 {
                        let scale = Laurent::constant(nvars, coeff * d);
                        m.entries[i][j] = &scale * &sys.skein(&c.signs, &t.signs);
                    }
                }
            }
            m
        })
        .collect();
    TwistedComplex {
        nvars,
        partition: part,
        degrees,
        boundaries,
    }
}

impl TwistedComplex {
    pub fn top(&self) -> usize {
        self.boundaries.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.partition.sizes()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// `∂_{k-1} ∘ ∂_k` for `k = 2..=l`.
    pub fn compositions(&self) -> Vec<LaurentMatrix> {
        (1..self.boundaries.len())
            .map(|i| self.boundaries[i - 1].mul(&self.boundaries[i]))
            .collect()
    }

    pub fn verify_d2(&self) -> Result<(), ComplexError> {
        match self.compositions().iter().position(|m| !m.is_zero()) {
            Some(i) => Err(ComplexError::NotAComplex { k: i + 1 }),
            None => Ok(()),
        }
    }

    fn homology_from_ranks(&self, ranks: &[usize]) -> Vec<usize> {
        let dims = self.dims();
        let rank = |k: usize| if k == 0 || k > ranks.len() { 0 } else { ranks[k - 1] };
        (0..dims.len()).map(|k| dims[k] - rank(k) - rank(k + 1)).collect()
    }

    /// `dim H_k` at concrete weights, `k = 0..=l`.
    pub fn homology(&self, weights: &WeightAssignment) -> Result<Vec<usize>, ComplexError> {
        if weights.len() != self.nvars {
            return Err(LaurentError::WeightCount {
                expected: self.nvars,
                got: weights.len(),
            }
            .into());
        }
        let ranks = self
            .boundaries
            .iter()
            .map(|m| m.rank_at(weights))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.homology_from_ranks(&ranks))
    }

    /// Homology over the fraction field: symbolic ranks when every matrix is
    /// small enough, otherwise the best of several prime probes.
    pub fn generic_homology(&self) -> Result<Vec<usize>, ComplexError> {
        let symbolic: Result<Vec<usize>, ComplexError> =
            self.boundaries.iter().map(LaurentMatrix::symbolic_rank).collect();
        let ranks = match symbolic {
            Ok(r) => r,
            Err(ComplexError::TooLarge { .. }) => {
                let probes: Vec<WeightAssignment> = (0..3).map(|s| probe(self.nvars, s)).collect();
                let mut best = vec![0; self.boundaries.len()];
                for p in &probes {
                    for (b, m) in best.iter_mut().zip(&self.boundaries) {
                        *b = (*b).max(m.rank_at(p)?);
                    }
                }
                best
            }
            Err(e) => return Err(e),
        };
        Ok(self.homology_from_ranks(&ranks))
    }

    pub fn resonance(&self, weights: &WeightAssignment) -> Result<ResonanceReport, ComplexError> {
        let generic = self.generic_homology()?;
        self.resonance_against(weights, &generic)
    }

    /// Like [`TwistedComplex::resonance`] with the generic homology precomputed.
    pub fn resonance_against(
        &self,
        weights: &WeightAssignment,
        generic: &[usize],
    ) -> Result<ResonanceReport, ComplexError> {
        let homology = self.homology(weights)?;
        let l = self.top();
        let resonant = (0..l).any(|k| homology[k] != generic[k]);
        Ok(ResonanceReport {
            weights: weights.clone(),
            homology,
            generic: generic.to_vec(),
            resonant,
        })
    }
}

/// The `shift`-th block of `n` consecutive primes.
fn probe(n: usize, shift: usize) -> WeightAssignment {
    let all = WeightAssignment::generic_probe(n * (shift + 1));
    WeightAssignment::new(all.values()[n * shift..].to_vec()).expect("primes are nonzero")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResonanceReport {
    pub weights: WeightAssignment,
    pub homology: Vec<usize>,
    pub generic: Vec<usize>,
    pub resonant: bool,
}
