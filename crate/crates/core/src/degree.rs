//! Degrees `deg(C, C')` of the boundary attaching maps.
//!
//! For `C` in `ch_k` and `C'` in `ch_{k-1}` everything happens inside the
//! section `B_k = A ∩ F^k`, in flag coordinates, where `F^{k-1}` is
//! `{c_k = 0}`. Fix `p` in `C ∩ F^k`. On the boundary of the clipped cell
//! `P(C') = C' ∩ F^{k-1} ∩ [-R, R]^{k-1}` we use the directing field
//!
//! ```text
//! U(x) = (p - x)_{<k} - p_k d(x)_{<k},   d_k = 1,  a_H . d = 0 for H ∋ x
//! ```
//!
//! which never vanishes on a hyperplane: `U(x) = 0` would put `p` on the
//! line `x + R d ⊂ H`. Along a polygon edge `d` is interpolated linearly, so
//! the image of the boundary is the polygon through the vertex images and
//! its winding number is exact. The degree is the degree of `U / |U|` on
//! `∂P(C')` with the boundary orientation (`{b} - {a}` for an interval,
//! counterclockwise for a polygon).

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::flag::{ChamberPartition, FlagError, LeveledChamber, OrientedFlag};
use crate::fm::{Constraint, Relation};
use crate::geometry::{Arrangement, GeometryError, Sign, SignVector};
use crate::linalg;
use crate::rational::{abs, dot, int, to_f64, Point, Rational};

const MAX_RETRIES: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("degrees at flag level {0} are not supported (levels 1 to 3 are)")]
    Unsupported(usize),
    #[error("directing field degenerates for {chamber} -> {target} at every tried radius")]
    Degenerate { chamber: SignVector, target: SignVector },
    #[error("sampled winding {sampled:?} disagrees with exact winding {exact} for {chamber} -> {target}")]
    Mismatch {
        chamber: SignVector,
        target: SignVector,
        exact: i64,
        sampled: Option<i64>,
    },
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeOptions {
    /// Extra doublings of the clipping radius.
    pub radius_doublings: u32,
    /// Use a second interior point of `C ∩ F^k` instead of the partition witness.
    pub alternate_point: bool,
    /// Initial samples per polygon edge for the floating-point winding check.
    pub samples_per_edge: usize,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        DegreeOptions {
            radius_doublings: 0,
            alternate_point: false,
            samples_per_edge: 16,
        }
    }
}

/// `values[i][j] = deg(ch_k[i], ch_{k-1}[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeTable {
    pub level: usize,
    pub values: Vec<Vec<i64>>,
    /// Largest distance to the nearest integer of a sampled winding before
    /// rounding (zero for levels computed in closed form).
    pub residue: f64,
}

/// A degree and the rounding residue of its sampled check.
type Measured = (i64, f64);

struct Section {
    k: usize,
    upper: Arrangement,
    lower: Option<Arrangement>,
    base_radius: Rational,
}

impl Section {
    fn new(arr: &Arrangement, flag: &OrientedFlag, k: usize, points: &[&Point]) -> Result<Self, DegreeError> {
        let upper = flag.section(arr, k)?;
        let lower = if k >= 2 { Some(flag.section(arr, k - 1)?) } else { None };
        let mut m = Rational::one();
        for p in points {
            for c in p.iter() {
                m = m.max(abs(c));
            }
        }
        if let Some(low) = &lower {
            for v in landmarks(low) {
                for c in &v {
                    m = m.max(abs(c));
                }
            }
        }
        Ok(Section {
            k,
            upper,
            lower,
            base_radius: int(2) * (m + int(1)),
        })
    }

    /// `U(x)` for a boundary point `x` of `F^{k-1}` lying on `active`.
    fn field(&self, p: &Point, x: &[Rational], active: &[usize]) -> Option<Vec<Rational>> {
        let k = self.k;
        let mut e = vec![Rational::zero(); k];
        e[k - 1] = Rational::one();
        let mut rows = vec![e];
        let mut rhs = vec![Rational::one()];
        for &i in active {
            rows.push(self.upper.hyperplane(i).normal.clone());
            rhs.push(Rational::zero());
        }
        let d = linalg::solve(&rows, &rhs, k)?;
        Some((0..k - 1).map(|j| &p[j] - &x[j] - &p[k - 1] * &d[j]).collect())
    }
}

/// Points whose coordinates bound the interesting part of a section: the
/// vertices, and in dimension 2 also the foot of each line, so that a box
/// containing them meets every chamber in a disk.
fn landmarks(sec: &Arrangement) -> Vec<Point> {
    let hs = sec.hyperplanes();
    match sec.dim() {
        1 => hs.iter().map(|h| vec![-&h.offset / &h.normal[0]]).collect(),
        2 => {
            let mut out = Vec::new();
            for h in hs {
                let nn = dot(&h.normal, &h.normal);
                out.push(h.normal.iter().map(|a| -(a * &h.offset) / &nn).collect());
            }
            for (i, a) in hs.iter().enumerate() {
                for b in &hs[i + 1..] {
                    if let Some(x) = intersect2(&a.normal, &a.offset, &b.normal, &b.offset) {
                        out.push(x);
                    }
                }
            }
            out
        }
        _ => Vec::new(),
    }
}

/// Intersection of `a.x + b = 0` and `c.x + d = 0` in the plane.
fn intersect2(a: &[Rational], b: &Rational, c: &[Rational], d: &Rational) -> Option<Point> {
    let det = &a[0] * &c[1] - &a[1] * &c[0];
    if det.is_zero() {
        return None;
    }
    let x = (&a[1] * d - b * &c[1]) / &det;
    let y = (b * &c[0] - &a[0] * d) / &det;
    Some(vec![x, y])
}

enum Attempt {
    Done(Measured),
    Retry,
    Fail(DegreeError),
}

fn interior_point(sec: &Section, c: &LeveledChamber, opts: &DegreeOptions) -> Result<Point, DegreeError> {
    if !opts.alternate_point {
        return Ok(c.witness.clone());
    }
    let mut e = vec![Rational::zero(); sec.k];
    e[0] = Rational::one();
    let shift = Constraint::new(e, -c.witness[0].clone(), Relation::Positive);
    Ok(sec.upper.sample_point(&c.signs, &[shift])?)
}

fn degree_at(
    sec: &Section,
    c: &LeveledChamber,
    target: &LeveledChamber,
    opts: &DegreeOptions,
) -> Result<Measured, DegreeError> {
    if sec.k == 1 {
        return Ok((-1, 0.0));
    }
    let p = interior_point(sec, c, opts)?;
    let lower = sec.lower.as_ref().expect("levels >= 2 have a lower section");
    for attempt in 0..MAX_RETRIES {
        let r = &sec.base_radius * int(1i64 << (opts.radius_doublings + attempt));
        let out = match sec.k {
            2 => interval_degree(sec, lower, &p, &target.signs, &r),
            3 => polygon_degree(sec, lower, &p, c, target, &r, opts.samples_per_edge),
            k => return Err(DegreeError::Unsupported(k)),
        };
        match out {
            Attempt::Done(d) => return Ok(d),
            Attempt::Retry => continue,
            Attempt::Fail(e) => return Err(e),
        }
    }
    Err(DegreeError::Degenerate {
        chamber: c.signs.clone(),
        target: target.signs.clone(),
    })
}

fn interval_degree(sec: &Section, lower: &Arrangement, p: &Point, target: &SignVector, r: &Rational) -> Attempt {
    // (position, active hyperplanes); None marks a box end.
    let mut lo: (Rational, Option<usize>) = (-r.clone(), None);
    let mut hi: (Rational, Option<usize>) = (r.clone(), None);
    for (i, h) in lower.hyperplanes().iter().enumerate() {
        let t = -&h.offset / &h.normal[0];
        let s = target.get(i).to_i8() as i64;
        if (int(s) * &h.normal[0]).is_positive() {
            if t > lo.0 {
                lo = (t, Some(i));
            }
        } else if t < hi.0 {
            hi = (t, Some(i));
        }
    }
    if lo.0 >= hi.0 {
        return Attempt::Retry;
    }
    let sign_at = |end: &(Rational, Option<usize>)| -> Option<i64> {
        let active: Vec<usize> = end.1.into_iter().collect();
        let u = sec.field(p, std::slice::from_ref(&end.0), &active)?;
        Some(Sign::of(&u[0]).to_i8() as i64)
    };
    let (Some(a), Some(b)) = (sign_at(&lo), sign_at(&hi)) else {
        return Attempt::Retry;
    };
    // Box ends must point into the interval.
    if a == 0 || b == 0 || (lo.1.is_none() && a < 0) || (hi.1.is_none() && b > 0) {
        return Attempt::Retry;
    }
    Attempt::Done(((b - a) / 2, 0.0))
}

#[derive(Debug, Clone)]
struct Vertex {
    x: Point,
    active: Vec<usize>,
    /// Box sides `(axis, ±1)` the vertex lies on.
    sides: Vec<(usize, i64)>,
}

/// Vertices of `C' ∩ F^{k-1} ∩ [-R, R]^2` in counterclockwise order.
fn clipped_polygon(lower: &Arrangement, target: &SignVector, r: &Rational) -> Vec<Vertex> {
    // Each boundary line as (normal, offset) with the region on `normal.x + offset >= 0`.
    let mut lines: Vec<(Vec<Rational>, Rational)> = lower
        .hyperplanes()
        .iter()
        .enumerate()
        .map(|(i, h)| {
            let s = int(target.get(i).to_i8() as i64);
            (h.normal.iter().map(|a| a * &s).collect(), &h.offset * &s)
        })
        .collect();
    for axis in 0..2 {
        for side in [1i64, -1] {
            let mut n = vec![Rational::zero(); 2];
            n[axis] = int(-side);
            lines.push((n, r.clone()));
        }
    }
    let inside = |x: &Point| lines.iter().all(|(n, b)| !(dot(n, x) + b).is_negative());
    let mut pts: Vec<Point> = Vec::new();
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if let Some(x) = intersect2(&a.0, &a.1, &b.0, &b.1) {
                if inside(&x) && !pts.contains(&x) {
                    pts.push(x);
                }
            }
        }
    }
    if pts.len() < 3 {
        return Vec::new();
    }
    let n = int(pts.len() as i64);
    let cx = pts.iter().map(|p| p[0].clone()).sum::<Rational>() / &n;
    let cy = pts.iter().map(|p| p[1].clone()).sum::<Rational>() / &n;
    let half = |p: &Point| {
        let (x, y) = (&p[0] - &cx, &p[1] - &cy);
        u8::from(!(y.is_positive() || (y.is_zero() && x.is_positive())))
    };
    pts.sort_by(|a, b| {
        half(a).cmp(&half(b)).then_with(|| {
            let cr = (&a[0] - &cx) * (&b[1] - &cy) - (&a[1] - &cy) * (&b[0] - &cx);
            if cr.is_positive() {
                Ordering::Less
            } else if cr.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        })
    });
    pts.into_iter()
        .map(|x| {
            let active = lower
                .hyperplanes()
                .iter()
                .enumerate()
                .filter(|(_, h)| h.eval(&x).is_zero())
                .map(|(i, _)| i)
                .collect();
            let sides = (0..2)
                .flat_map(|axis| [1i64, -1].map(|s| (axis, s)))
                .filter(|&(axis, s)| int(s) * &x[axis] == *r)
                .collect();
            Vertex { x, active, sides }
        })
        .collect()
}

fn polygon_degree(
    sec: &Section,
    lower: &Arrangement,
    p: &Point,
    c: &LeveledChamber,
    target: &LeveledChamber,
    r: &Rational,
    samples: usize,
) -> Attempt {
    let poly = clipped_polygon(lower, &target.signs, r);
    if poly.is_empty() {
        return Attempt::Retry;
    }
    let mut images = Vec::with_capacity(poly.len());
    for v in &poly {
        match sec.field(p, &v.x, &v.active) {
            Some(u) => images.push(u),
            None => return Attempt::Retry,
        }
    }
    let m = poly.len();
    for i in 0..m {
        let j = (i + 1) % m;
        for side in &poly[i].sides {
            if poly[j].sides.contains(side) {
                let (axis, s) = *side;
                if !(int(s) * &images[i][axis]).is_negative() || !(int(s) * &images[j][axis]).is_negative() {
                    return Attempt::Retry;
                }
            }
        }
    }
    let Some(exact) = winding_number(&images) else {
        return Attempt::Retry;
    };
    let approx: Vec<(f64, f64)> = images.iter().map(|u| (to_f64(&u[0]), to_f64(&u[1]))).collect();
    let raw = sampled_turning(&approx, samples);
    let sampled = raw.and_then(rounded);
    if sampled != Some(exact) {
        return Attempt::Fail(DegreeError::Mismatch {
            chamber: c.signs.clone(),
            target: target.signs.clone(),
            exact,
            sampled,
        });
    }
    Attempt::Done((exact, raw.map_or(0.0, |w| (w - w.round()).abs())))
}

/// Exact winding number of a closed polygon about the origin, or `None` if
/// the origin lies on it.
pub fn winding_number(poly: &[Vec<Rational>]) -> Option<i64> {
    let m = poly.len();
    let mut w = 0i64;
    for i in 0..m {
        let (a, b) = (&poly[i], &poly[(i + 1) % m]);
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        if cross.is_zero() {
            // Collinear with the origin: reject if the origin is on the segment.
            let d = dot(a, b);
            if !d.is_positive() {
                return None;
            }
            continue;
        }
        let (ay, by) = (!a[1].is_positive(), !b[1].is_positive());
        if ay && !by && cross.is_positive() {
            w += 1;
        } else if !ay && by && cross.is_negative() {
            w -= 1;
        }
    }
    Some(w)
}

/// Winding number by accumulating the turning angle of the piecewise linear
/// path through `poly`; accepted only within `1e-6` of an integer.
pub fn sampled_winding(poly: &[(f64, f64)], samples_per_edge: usize) -> Option<i64> {
    sampled_turning(poly, samples_per_edge).and_then(rounded)
}

fn rounded(w: f64) -> Option<i64> {
    ((w - w.round()).abs() < 1e-6).then(|| w.round() as i64)
}

/// Total turning divided by `2π`, refining the sampling until no step turns
/// by a quarter circle.
pub fn sampled_turning(poly: &[(f64, f64)], samples_per_edge: usize) -> Option<f64> {
    let m = poly.len();
    if m == 0 {
        return None;
    }
    let mut n = samples_per_edge.max(1);
    while n <= 1 << 16 {
        let mut prev = poly[0].1.atan2(poly[0].0);
        let mut total = 0.0;
        let mut max_step = 0.0f64;
        for i in 0..m {
            let (a, b) = (poly[i], poly[(i + 1) % m]);
            for s in 1..=n {
                let t = s as f64 / n as f64;
                let (x, y) = (a.0 + t * (b.0 - a.0), a.1 + t * (b.1 - a.1));
                if x == 0.0 && y == 0.0 {
                    return None;
                }
                let ang = y.atan2(x);
                let mut delta = ang - prev;
                if delta > PI {
                    delta -= 2.0 * PI;
                } else if delta <= -PI {
                    delta += 2.0 * PI;
                }
                total += delta;
                max_step = max_step.max(delta.abs());
                prev = ang;
            }
        }
        if max_step < PI / 2.0 {
            return Some(total / (2.0 * PI));
        }
        n *= 2;
    }
    None
}

/// `deg(C, C')` for `C` in `ch_k` and `C'` in `ch_{k-1}`.
pub fn degree(
    arr: &Arrangement,
    flag: &OrientedFlag,
    c: &LeveledChamber,
    target: &LeveledChamber,
    opts: &DegreeOptions,
) -> Result<i64, DegreeError> {
    let k = c.level;
    assert_eq!(target.level + 1, k, "degrees connect consecutive levels");
    if k > 3 {
        return Err(DegreeError::Unsupported(k));
    }
    let sec = Section::new(arr, flag, k, &[&c.witness])?;
    Ok(degree_at(&sec, c, target, opts)?.0)
}

/// Degree tables for every level `1..=l`.
pub fn degree_tables(
    arr: &Arrangement,
    flag: &OrientedFlag,
    part: &ChamberPartition,
    opts: &DegreeOptions,
) -> Result<Vec<DegreeTable>, DegreeError> {
    let l = arr.dim();
    (1..=l)
        .map(|k| {
            let (top, bottom) = (&part.levels[k], &part.levels[k - 1]);
            if k > 3 && !top.is_empty() && !bottom.is_empty() {
                return Err(DegreeError::Unsupported(k));
            }
            let witnesses: Vec<&Point> = top.iter().map(|c| &c.witness).collect();
            let sec = Section::new(arr, flag, k, &witnesses)?;
            let measured = top
                .par_iter()
                .map(|c| bottom.iter().map(|t| degree_at(&sec, c, t, opts)).collect())
                .collect::<Result<Vec<Vec<Measured>>, DegreeError>>()?;
            let values = measured.iter().map(|row| row.iter().map(|m| m.0).collect()).collect();
            let residue = measured.iter().flatten().map(|m| m.1).fold(0.0, f64::max);
            Ok(DegreeTable { level: k, values, residue })
        })
        .collect()
}
