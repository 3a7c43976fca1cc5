//! Exact Fourier–Motzkin elimination for mixed strict / non-strict / equality
//! systems over the rationals.
//!
//! Strictness is tracked symbolically: a combined inequality is strict when
//! either parent is strict, so no epsilon is ever introduced. Eliminations
//! are recorded so a witness point can be recovered by back-substitution.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};

use crate::rational::{dot, Point, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `expr > 0`
    Positive,
    /// `expr >= 0`
    NonNegative,
    /// `expr = 0`
    Zero,
}

/// The constraint `coeffs . x + constant (rel) 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub constant: Rational,
    pub rel: Relation,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, constant: Rational, rel: Relation) -> Self {
        Constraint {
            coeffs,
            constant,
            rel,
        }
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x) + &self.constant
    }

    pub fn holds(&self, x: &[Rational]) -> bool {
        let v = self.value(x);
        match self.rel {
            Relation::Positive => v.is_positive(),
            Relation::NonNegative => !v.is_negative(),
            Relation::Zero => v.is_zero(),
        }
    }

    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn constant_holds(&self) -> bool {
        match self.rel {
            Relation::Positive => self.constant.is_positive(),
            Relation::NonNegative => !self.constant.is_negative(),
            Relation::Zero => self.constant.is_zero(),
        }
    }

    /// Scales so the first nonzero coefficient has absolute value one (and is
    /// positive for equalities).
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).cloned() {
            let scale = if self.rel == Relation::Zero {
                lead.recip()
            } else {
                lead.abs().recip()
            };
            for c in self.coeffs.iter_mut() {
                *c *= &scale;
            }
            self.constant *= &scale;
        }
        self
    }
}

/// An affine lower or upper bound `x_var (>|>=|<|<=) coeffs . x + constant`.
#[derive(Debug, Clone)]
struct Bound {
    coeffs: Vec<Rational>,
    constant: Rational,
    strict: bool,
}

impl Bound {
    fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x) + &self.constant
    }
}

#[derive(Debug, Clone)]
enum Step {
    Substitute {
        var: usize,
        coeffs: Vec<Rational>,
        constant: Rational,
    },
    Interval {
        var: usize,
        lower: Vec<Bound>,
        upper: Vec<Bound>,
    },
}

/// Result of running the elimination: either infeasible, or the recorded
/// steps that allow back-substitution.
struct Elimination {
    steps: Vec<Step>,
}

fn dedup(constraints: Vec<Constraint>) -> Option<Vec<Constraint>> {
    // Keyed by normalized coefficient vector; keeps the tightest representative.
    let mut ineq: HashMap<Vec<Rational>, (Rational, bool)> = HashMap::new();
    let mut eqs: HashMap<Vec<Rational>, Rational> = HashMap::new();
    let mut order: Vec<(Vec<Rational>, bool)> = Vec::new();
    for c in constraints {
        if c.is_trivial() {
            if !c.constant_holds() {
                return None;
            }
            continue;
        }
        let c = c.normalized();
        match c.rel {
            Relation::Zero => match eqs.get(&c.coeffs) {
                Some(k) if *k != c.constant => return None,
                Some(_) => {}
                None => {
                    order.push((c.coeffs.clone(), true));
                    eqs.insert(c.coeffs, c.constant);
                }
            },
            rel => {
                let strict = rel == Relation::Positive;
                match ineq.get_mut(&c.coeffs) {
                    Some((k, s)) => {
                        if c.constant < *k || (c.constant == *k && strict) {
                            *k = c.constant;
                            *s = strict;
                        }
                    }
                    None => {
                        order.push((c.coeffs.clone(), false));
                        ineq.insert(c.coeffs, (c.constant, strict));
                    }
                }
            }
        }
    }
    Some(
        order
            .into_iter()
            .map(|(coeffs, is_eq)| {
                if is_eq {
                    let k = eqs[&coeffs].clone();
                    Constraint::new(coeffs, k, Relation::Zero)
                } else {
                    let (k, s) = ineq[&coeffs].clone();
                    let rel = if s {
                        Relation::Positive
                    } else {
                        Relation::NonNegative
                    };
                    Constraint::new(coeffs, k, rel)
                }
            })
            .collect(),
    )
}

fn eliminate(dim: usize, constraints: &[Constraint]) -> Option<Elimination> {
    let mut cs = dedup(constraints.to_vec())?;
    let mut steps = Vec::new();

    // Equalities first: substitute them away.
    while let Some(pos) = cs.iter().position(|c| c.rel == Relation::Zero) {
        let eq = cs.swap_remove(pos);
        let var = eq.coeffs.iter().position(|c| !c.is_zero())?;
        let inv = -eq.coeffs[var].recip();
        // x_var = inv * (rest . x + constant)
        let mut coeffs: Vec<Rational> = eq.coeffs.iter().map(|c| c * &inv).collect();
        coeffs[var] = Rational::zero();
        let constant = &eq.constant * &inv;
        let substituted = cs
            .into_iter()
            .map(|mut c| {
                let f = std::mem::replace(&mut c.coeffs[var], Rational::zero());
                if !f.is_zero() {
                    for (ci, si) in c.coeffs.iter_mut().zip(&coeffs) {
                        *ci += &f * si;
                    }
                    c.constant += &f * &constant;
                }
                c
            })
            .collect();
        cs = dedup(substituted)?;
        steps.push(Step::Substitute {
            var,
            coeffs,
            constant,
        });
    }

    loop {
        // Pick the variable with the smallest pos*neg product among those still present.
        let mut best: Option<(usize, usize)> = None;
        for var in 0..dim {
            let pos = cs.iter().filter(|c| c.coeffs[var].is_positive()).count();
            let neg = cs.iter().filter(|c| c.coeffs[var].is_negative()).count();
            if pos + neg == 0 {
                continue;
            }
            let cost = pos * neg;
            if best.map_or(true, |(_, b)| cost < b) {
                best = Some((var, cost));
            }
        }
        let Some((var, _)) = best else { break };

        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let mut rest = Vec::new();
        for c in cs {
            let a = c.coeffs[var].clone();
            if a.is_zero() {
                rest.push(c);
                continue;
            }
            // a x_var + r . x + k (rel) 0  =>  x_var (rel') -(r . x + k) / a
            let inv = -a.recip();
            let mut coeffs: Vec<Rational> = c.coeffs.iter().map(|v| v * &inv).collect();
            coeffs[var] = Rational::zero();
            let bound = Bound {
                coeffs,
                constant: &c.constant * &inv,
                strict: c.rel == Relation::Positive,
            };
            if a.is_positive() {
                lower.push(bound);
            } else {
                upper.push(bound);
            }
        }
        for lo in &lower {
            for up in &upper {
                let coeffs = up
                    .coeffs
                    .iter()
                    .zip(&lo.coeffs)
                    .map(|(u, l)| u - l)
                    .collect();
                let rel = if lo.strict || up.strict {
                    Relation::Positive
                } else {
                    Relation::NonNegative
                };
                rest.push(Constraint::new(coeffs, &up.constant - &lo.constant, rel));
            }
        }
        cs = dedup(rest)?;
        steps.push(Step::Interval { var, lower, upper });
    }
    // Everything left is trivially satisfied (dedup would have failed otherwise).
    Some(Elimination { steps })
}

/// Decides whether the system has a real solution.
pub fn feasible(dim: usize, constraints: &[Constraint]) -> bool {
    eliminate(dim, constraints).is_some()
}

/// Returns a solution, choosing midpoints of the residual interval at every
/// back-substitution step (`lo + 1` / `hi - 1` when one side is unbounded,
/// zero when both are).
pub fn sample(dim: usize, constraints: &[Constraint]) -> Option<Point> {
    let elim = eliminate(dim, constraints)?;
    let mut x = vec![Rational::zero(); dim];
    for step in elim.steps.iter().rev() {
        match step {
            Step::Substitute {
                var,
                coeffs,
                constant,
            } => {
                x[*var] = dot(coeffs, &x) + constant;
            }
            Step::Interval { var, lower, upper } => {
                let lo = lower.iter().map(|b| b.eval(&x)).max();
                let hi = upper.iter().map(|b| b.eval(&x)).min();
                x[*var] = match (lo, hi) {
                    (Some(l), Some(h)) => (l + h) / Rational::from_integer(2.into()),
                    (Some(l), None) => l + Rational::one(),
                    (None, Some(h)) => h - Rational::one(),
                    (None, None) => Rational::zero(),
                };
            }
        }
    }
    debug_assert!(constraints.iter().all(|c| c.holds(&x)));
    Some(x)
}
