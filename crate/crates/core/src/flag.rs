//! Oriented generic flags `F^0 ⊂ F^1 ⊂ ... ⊂ F^l = V` and the partition of
//! chambers by the first flag level they meet.
//!
//! A flag is stored as a basepoint `F^0` and an ordered basis `v_1..v_l`;
//! `F^k = F^0 + span(v_1..v_k)` is oriented by `(v_1..v_k)`. Points of `F^k`
//! are addressed by their flag coordinates `c` with `x = F^0 + sum c_i v_i`,
//! so `F^{k-1}` is `{c_k = 0}` inside `F^k` and `F^k_±` is `{±c_k > 0}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::faces::enumerate_chambers;
use crate::geometry::{Arrangement, GeometryError, Hyperplane, Sign, SignVector};
use crate::lattice::{build_lattice, Lattice};
use crate::linalg;
use crate::rational::{dot, frac, int, Point, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    #[error("flag basis must have {expected} vectors of length {expected}")]
    Shape { expected: usize },
    #[error("flag basis is linearly dependent")]
    Dependent,
    #[error("flag is not generic with respect to the arrangement")]
    NotGeneric,
    #[error("sign is only defined for chambers of level at least 1")]
    LevelZero,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedFlag {
    base: Point,
    basis: Vec<Vec<Rational>>,
}

impl OrientedFlag {
    pub fn new(base: Point, basis: Vec<Vec<Rational>>) -> Result<Self, FlagError> {
        let l = base.len();
        if basis.len() != l || basis.iter().any(|v| v.len() != l) {
            return Err(FlagError::Shape { expected: l });
        }
        if linalg::rank(&basis) != l {
            return Err(FlagError::Dependent);
        }
        Ok(OrientedFlag { base, basis })
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// The point of `F^k` with flag coordinates `c` (`k = c.len()`).
    pub fn embed(&self, c: &[Rational]) -> Point {
        let mut x = self.base.clone();
        for (ci, v) in c.iter().zip(&self.basis) {
            for (xj, vj) in x.iter_mut().zip(v) {
                *xj += ci * vj;
            }
        }
        x
    }

    /// `A ∩ F^k` in flag coordinates of `F^k`, `k >= 1`. Hyperplane order is
    /// preserved, so sign vectors carry over unchanged.
    pub fn section(&self, arr: &Arrangement, k: usize) -> Result<Arrangement, FlagError> {
        assert!(k >= 1 && k <= self.dim());
        let hs = arr
            .hyperplanes()
            .iter()
            .map(|h| {
                let normal = self.basis[..k].iter().map(|v| dot(&h.normal, v)).collect();
                Hyperplane::new(normal, h.eval(&self.base))
            })
            .collect();
        Arrangement::new(k, hs).map_err(|_| FlagError::NotGeneric)
    }

    /// `F^k` as a hyperplane of `V` (for `k = dim - 1`).
    pub fn hyperplane(&self) -> Hyperplane {
        let l = self.dim();
        let normal = linalg::nullspace(&self.basis[..l - 1], l)
            .pop()
            .expect("a hyperplane's direction has one normal");
        let offset = -dot(&normal, &self.base);
        Hyperplane::new(normal, offset)
    }
}

/// `dim(F^k ∩ X) = k - r(X)` for every flat and level (empty when negative).
pub fn is_generic_with(flag: &OrientedFlag, lattice: &Lattice) -> bool {
    let l = flag.dim();
    lattice.flats.iter().all(|x| {
        let (a, b) = x.system(l);
        let r = x.rank;
        let rhs: Vec<Rational> = a.iter().zip(&b).map(|(row, bi)| bi - dot(row, &flag.base)).collect();
        (0..=l).all(|k| {
            let m: Vec<Vec<Rational>> = a
                .iter()
                .map(|row| flag.basis[..k].iter().map(|v| dot(row, v)).collect())
                .collect();
            if k >= r {
                r == 0 || linalg::rank(&m) == r
            } else {
                let aug: Vec<Vec<Rational>> = m
                    .iter()
                    .zip(&rhs)
                    .map(|(row, v)| {
                        let mut row = row.clone();
                        row.push(v.clone());
                        row
                    })
                    .collect();
                linalg::rank(&aug) > linalg::rank(&m)
            }
        })
    })
}

pub fn is_generic(arr: &Arrangement, flag: &OrientedFlag) -> bool {
    flag.dim() == arr.dim() && is_generic_with(flag, &build_lattice(arr))
}

/// Deterministic generic flag for `seed`: candidates are drawn from a
/// seeded stream with a coefficient range that doubles on every rejected
/// attempt.
pub fn build_flag(arr: &Arrangement, seed: u64) -> OrientedFlag {
    let lattice = build_lattice(arr);
    build_flag_with(arr, &lattice, seed)
}

pub fn build_flag_with(arr: &Arrangement, lattice: &Lattice, seed: u64) -> OrientedFlag {
    let l = arr.dim();
    for attempt in 0..256u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9).wrapping_add(attempt));
        let m = 3i64 << attempt.min(20);
        let basis: Vec<Vec<Rational>> = (0..l)
            .map(|_| (0..l).map(|_| int(rng.gen_range(-m..=m))).collect())
            .collect();
        let base: Point = (0..l)
            .map(|_| frac(rng.gen_range(-5 * m..=5 * m), rng.gen_range(1..=5)))
            .collect();
        let Ok(flag) = OrientedFlag::new(base, basis) else {
            continue;
        };
        if is_generic_with(&flag, lattice) {
            return flag;
        }
    }
    unreachable!("generic flags are dense; 256 attempts cannot all fail")
}

/// A chamber tagged with the first flag level it meets and a witness point
/// of `C ∩ F^level` in flag coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeveledChamber {
    pub signs: SignVector,
    pub level: usize,
    pub witness: Point,
}

#[derive(Debug, Clone)]
pub struct ChamberPartition {
    /// `levels[k]` is `ch_k^F`. Level 1 is ordered along `+v_1`, the other
    /// levels by sign vector.
    pub levels: Vec<Vec<LeveledChamber>>,
}

impl ChamberPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn find(&self, sv: &SignVector) -> Option<(usize, usize)> {
        self.levels.iter().enumerate().find_map(|(k, lv)| {
            lv.iter().position(|c| &c.signs == sv).map(|i| (k, i))
        })
    }
}

/// Assigns every chamber the least `k` with `C ∩ F^k` nonempty.
pub fn partition(arr: &Arrangement, flag: &OrientedFlag) -> Result<ChamberPartition, FlagError> {
    if !is_generic(arr, flag) {
        return Err(FlagError::NotGeneric);
    }
    partition_unchecked(arr, flag)
}

/// [`partition`] without the genericity check, for callers that already ran it.
pub fn partition_unchecked(arr: &Arrangement, flag: &OrientedFlag) -> Result<ChamberPartition, FlagError> {
    let l = arr.dim();
    let sections: Vec<Arrangement> = (1..=l)
        .map(|k| flag.section(arr, k))
        .collect::<Result<_, _>>()?;
    let base_signs = arr.signs_at(flag.base())?;
    let mut levels: Vec<Vec<LeveledChamber>> = vec![Vec::new(); l + 1];
    for ch in enumerate_chambers(arr) {
        if ch.signs == base_signs {
            levels[0].push(LeveledChamber {
                signs: ch.signs,
                level: 0,
                witness: Vec::new(),
            });
            continue;
        }
        let (k, witness) = sections
            .iter()
            .enumerate()
            .find_map(|(i, sec)| sec.sample_point(&ch.signs, &[]).ok().map(|w| (i + 1, w)))
            .expect("every chamber meets F^l = V");
        levels[k].push(LeveledChamber {
            signs: ch.signs,
            level: k,
            witness,
        });
    }
    for (k, lv) in levels.iter_mut().enumerate() {
        if k == 1 {
            lv.sort_by(|a, b| a.witness[0].cmp(&b.witness[0]));
        } else {
            lv.sort_by(|a, b| a.signs.cmp(&b.signs));
        }
    }
    Ok(ChamberPartition { levels })
}

/// `+1` if `F^k ∩ C ⊂ F^k_+`, `-1` if in `F^k_-`, for `C ∈ ch_k^F`, `k >= 1`.
/// Level-0 chambers have no sign; the boundary formula never needs one.
pub fn sign_of(chamber: &LeveledChamber) -> Result<Sign, FlagError> {
    if chamber.level == 0 {
        return Err(FlagError::LevelZero);
    }
    Ok(Sign::of(&chamber.witness[chamber.level - 1]))
}

/// Sign with the `+1` convention on level 0.
pub fn sign_or_plus(chamber: &LeveledChamber) -> i8 {
    sign_of(chamber).map_or(1, Sign::to_i8)
}
