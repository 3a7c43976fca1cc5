//! The intersection lattice `L(A)`, its Möbius function and the Poincaré
//! polynomial.

use std::collections::HashMap;
use std::fmt;
use std::ops::Add;

use num_traits::{Signed, Zero};

use crate::geometry::{Arrangement, Hyperplane};
use crate::linalg;
use crate::rational::{Point, Rational};

/// A nonempty intersection of hyperplanes.
#[derive(Debug, Clone)]
pub struct Flat {
    /// Bitmask of every hyperplane containing the flat (not just a generating set).
    pub hyperplanes: u64,
    /// Reduced row echelon form of the augmented system `[normal | -offset]`;
    /// canonical for the affine subspace.
    pub equations: Vec<Vec<Rational>>,
    /// Codimension.
    pub rank: usize,
}

impl Flat {
    fn ambient() -> Flat {
        Flat {
            hyperplanes: 0,
            equations: Vec::new(),
            rank: 0,
        }
    }

    pub fn dim(&self, ambient: usize) -> usize {
        ambient - self.rank
    }

    /// Linear parts `A` and right-hand sides `b` of `A x = b`.
    pub fn system(&self, ambient: usize) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        let a = self.equations.iter().map(|r| r[..ambient].to_vec()).collect();
        let b = self.equations.iter().map(|r| r[ambient].clone()).collect();
        (a, b)
    }

    /// Some point of the flat.
    pub fn point(&self, ambient: usize) -> Point {
        let (a, b) = self.system(ambient);
        linalg::solve(&a, &b, ambient).expect("flats are nonempty")
    }

    pub fn hyperplane_ids(&self) -> Vec<usize> {
        (0..64).filter(|i| self.hyperplanes >> i & 1 == 1).collect()
    }
}

fn equation_row(h: &Hyperplane) -> Vec<Rational> {
    let mut r = h.normal.clone();
    r.push(-h.offset.clone());
    r
}

#[derive(Debug, Clone)]
pub struct Lattice {
    pub dim: usize,
    /// Sorted by rank; `flats[0]` is the ambient space `V`.
    pub flats: Vec<Flat>,
    pub mobius: Vec<i64>,
}

impl Lattice {
    /// `X <= Y` iff `Y` is contained in `X`.
    pub fn le(&self, x: usize, y: usize) -> bool {
        let (hx, hy) = (self.flats[x].hyperplanes, self.flats[y].hyperplanes);
        hx & hy == hx
    }

    pub fn rank(&self) -> usize {
        self.flats.iter().map(|f| f.rank).max().unwrap_or(0)
    }

    pub fn count_by_rank(&self) -> Vec<usize> {
        let mut counts = vec![0; self.rank() + 1];
        for f in &self.flats {
            counts[f.rank] += 1;
        }
        counts
    }
}

/// Enumerates all nonempty intersections and evaluates the Möbius function
/// bottom-up.
pub fn build_lattice(arr: &Arrangement) -> Lattice {
    let dim = arr.dim();
    let rows: Vec<Vec<Rational>> = arr.hyperplanes().iter().map(equation_row).collect();
    let contains = |eqs: &[Vec<Rational>], rank: usize, i: usize| {
        let mut m = eqs.to_vec();
        m.push(rows[i].clone());
        linalg::rank(&m) == rank
    };

    let mut flats = vec![Flat::ambient()];
    let mut frontier = vec![0usize];
    while !frontier.is_empty() {
        let mut seen: HashMap<Vec<Vec<Rational>>, usize> = HashMap::new();
        let mut next = Vec::new();
        for &xi in &frontier {
            let x = flats[xi].clone();
            for i in 0..arr.len() {
                if x.hyperplanes >> i & 1 == 1 {
                    continue;
                }
                let mut eqs = x.equations.clone();
                eqs.push(rows[i].clone());
                let pivots = linalg::rref(&mut eqs);
                if pivots.last() == Some(&dim) {
                    continue; // parallel: empty intersection
                }
                if seen.contains_key(&eqs) {
                    continue;
                }
                let rank = eqs.len();
                let mask = (0..arr.len())
                    .filter(|&j| contains(&eqs, rank, j))
                    .fold(0u64, |m, j| m | 1 << j);
                seen.insert(eqs.clone(), flats.len());
                next.push(flats.len());
                flats.push(Flat {
                    hyperplanes: mask,
                    equations: eqs,
                    rank,
                });
            }
        }
        frontier = next;
    }

    let mut mobius = vec![0i64; flats.len()];
    mobius[0] = 1;
    for x in 1..flats.len() {
        let hx = flats[x].hyperplanes;
        let s: i64 = (0..x)
            .filter(|&y| {
                let hy = flats[y].hyperplanes;
                hy & hx == hy && hy != hx
            })
            .map(|y| mobius[y])
            .sum();
        mobius[x] = -s;
    }
    Lattice { dim, flats, mobius }
}

/// Integer polynomial `b_0 + b_1 t + ...`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub coeffs: Vec<i64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Polynomial { coeffs }
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    /// `t * self`.
    pub fn shift(&self) -> Polynomial {
        let mut c = vec![0];
        c.extend_from_slice(&self.coeffs);
        Polynomial::new(c)
    }

    /// Sum of coefficients of degree at most `q`.
    pub fn truncated(&self, q: usize) -> Polynomial {
        Polynomial::new(self.coeffs.iter().take(q + 1).copied().collect())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 && !(first && i == self.degree()) {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

/// The Poincaré polynomial `pi(A, t) = sum mu(X) (-t)^{r(X)}`.
pub fn poincare(lattice: &Lattice) -> Polynomial {
    let mut coeffs = vec![0i64; lattice.rank() + 1];
    for (f, &mu) in lattice.flats.iter().zip(&lattice.mobius) {
        let sign = if f.rank % 2 == 0 { 1 } else { -1 };
        coeffs[f.rank] += sign * mu;
    }
    Polynomial::new(coeffs)
}

/// `beta(A) = |pi(A, -1)|`.
pub fn beta(poly: &Polynomial) -> u64 {
    poly.eval(-1).unsigned_abs()
}

/// Index of the coordinate used to chart a hyperplane: largest `|normal|`
/// entry, ties to the lowest index.
pub fn chart_coordinate(h: &Hyperplane) -> usize {
    let mut best = 0;
    for (i, c) in h.normal.iter().enumerate() {
        if c.abs() > h.normal[best].abs() {
            best = i;
        }
    }
    best
}

/// Parameterizes `H` by the remaining coordinates after solving for the
/// chart coordinate. Returns the affine map as (linear part rows, constant).
fn chart(h: &Hyperplane) -> (usize, Vec<Rational>, Rational) {
    let j = chart_coordinate(h);
    let inv = -h.normal[j].recip();
    // x_j = inv * (sum_{i != j} a_i x_i + offset)
    let lin: Vec<Rational> = h
        .normal
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != j)
        .map(|(_, a)| a * &inv)
        .collect();
    (j, lin, &h.offset * &inv)
}

/// The restriction `A'' = {K ∩ H : K in A \ {H}}`, expressed in the chart of
/// `H` that drops its chart coordinate. Empty intersections are skipped and
/// coincident ones kept once.
pub fn restriction(arr: &Arrangement, index: usize) -> Arrangement {
    let h = arr.hyperplane(index);
    let (j, lin, k) = chart(h);
    let mut out: Vec<Hyperplane> = Vec::new();
    for (i, g) in arr.hyperplanes().iter().enumerate() {
        if i == index {
            continue;
        }
        let gj = &g.normal[j];
        let normal: Vec<Rational> = g
            .normal
            .iter()
            .enumerate()
            .filter(|&(t, _)| t != j)
            .zip(&lin)
            .map(|((_, a), l)| a + gj * l)
            .collect();
        let offset = &g.offset + gj * &k;
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let cand = Hyperplane::new(normal, offset);
        if !out.iter().any(|o| o.same_as(&cand)) {
            out.push(cand);
        }
    }
    Arrangement::new(arr.dim() - 1, out).expect("restriction yields distinct nonzero hyperplanes")
}

/// `(A', A'')` for hyperplane `index`.
pub fn deletion_restriction(arr: &Arrangement, index: usize) -> (Arrangement, Arrangement) {
    (arr.without(index), restriction(arr, index))
}
