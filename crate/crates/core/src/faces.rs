//! Faces, chambers, walls, separating sets and the face–chamber product.

use crate::fm::{self, Constraint, Relation};
use crate::geometry::{Arrangement, Sign, SignVector};
use crate::linalg;
use crate::rational::{int, Point, Rational};

/// A relatively open face with an interior witness point.
#[derive(Debug, Clone)]
pub struct Face {
    pub signs: SignVector,
    pub dim: usize,
    pub point: Point,
}

impl Face {
    pub fn codim(&self, ambient: usize) -> usize {
        ambient - self.dim
    }
}

/// All realizable sign vectors with the face order `X <= Y`.
#[derive(Debug, Clone)]
pub struct FacePoset {
    pub dim: usize,
    pub faces: Vec<Face>,
    /// Covering pairs `(lower, upper)` of the face order.
    pub covers: Vec<(usize, usize)>,
}

impl FacePoset {
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.faces[x].signs.le(&self.faces[y].signs)
    }

    pub fn chambers(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(|f| f.signs.is_chamber())
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut c = vec![0; self.dim + 1];
        for f in &self.faces {
            c[f.dim] += 1;
        }
        c
    }

    pub fn index_of(&self, sv: &SignVector) -> Option<usize> {
        self.faces.iter().position(|f| &f.signs == sv)
    }
}

fn face_dim(arr: &Arrangement, sv: &SignVector) -> usize {
    let normals: Vec<Vec<Rational>> = arr
        .hyperplanes()
        .iter()
        .zip(&sv.0)
        .filter(|(_, &s)| s == Sign::Zero)
        .map(|(h, _)| h.normal.clone())
        .collect();
    arr.dim() - linalg::rank(&normals)
}

/// Refines the regions of the first `i` hyperplanes by the next one, keeping
/// only realizable sign vectors. `allowed` restricts the signs tried.
fn refine(arr: &Arrangement, allowed: &[Sign]) -> Vec<SignVector> {
    let mut regions = vec![SignVector(Vec::new())];
    for i in 0..arr.len() {
        let mut next = Vec::new();
        for r in &regions {
            for &s in allowed {
                let mut sv = r.0.clone();
                sv.push(s);
                let cs: Vec<Constraint> = arr.hyperplanes()[..=i]
                    .iter()
                    .zip(&sv)
                    .map(|(h, &t)| h.signed_constraint(t))
                    .collect();
                if fm::feasible(arr.dim(), &cs) {
                    next.push(SignVector(sv));
                }
            }
        }
        regions = next;
    }
    regions
}

/// Every face of the arrangement, found by refining hyperplane by hyperplane
/// (each face of `A_{i+1}` lies in a face of `A_i`).
pub fn enumerate_faces(arr: &Arrangement) -> FacePoset {
    let mut svs = refine(arr, &[Sign::Neg, Sign::Zero, Sign::Pos]);
    svs.sort();
    let faces: Vec<Face> = svs
        .into_iter()
        .map(|sv| {
            let point = arr.sample_point(&sv, &[]).expect("refined faces are feasible");
            Face {
                dim: face_dim(arr, &sv),
                signs: sv,
                point,
            }
        })
        .collect();
    let mut covers = Vec::new();
    for (i, x) in faces.iter().enumerate() {
        for (j, y) in faces.iter().enumerate() {
            if i != j && y.dim == x.dim + 1 && x.signs.le(&y.signs) {
                covers.push((i, j));
            }
        }
    }
    FacePoset {
        dim: arr.dim(),
        faces,
        covers,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    pub signs: SignVector,
    pub point: Point,
}

/// Every chamber with an interior sample point.
pub fn enumerate_chambers(arr: &Arrangement) -> Vec<Chamber> {
    let mut svs = refine(arr, &[Sign::Neg, Sign::Pos]);
    svs.sort();
    svs.into_iter()
        .map(|sv| Chamber {
            point: arr.sample_point(&sv, &[]).expect("refined chambers are feasible"),
            signs: sv,
        })
        .collect()
}

/// A chamber is bounded iff its recession cone
/// `{d : s_i (a_i . d) >= 0}` is `{0}`, checked exactly one orthant
/// direction at a time.
pub fn is_bounded(arr: &Arrangement, chamber: &SignVector) -> bool {
    let cone: Vec<Constraint> = arr
        .hyperplanes()
        .iter()
        .zip(&chamber.0)
        .map(|(h, &s)| {
            let k = int(s.to_i8() as i64);
            Constraint::new(h.normal.iter().map(|c| c * &k).collect(), int(0), Relation::NonNegative)
        })
        .collect();
    for axis in 0..arr.dim() {
        for dir in [1i64, -1] {
            let mut cs = cone.clone();
            let mut e = vec![int(0); arr.dim()];
            e[axis] = int(dir);
            cs.push(Constraint::new(e, int(0), Relation::Positive));
            if fm::feasible(arr.dim(), &cs) {
                return false;
            }
        }
    }
    true
}

/// Indices `i` with `C_i != C'_i`.
pub fn separating_set(c: &SignVector, c2: &SignVector) -> Vec<usize> {
    (0..c.len()).filter(|&i| c.get(i) != c2.get(i)).collect()
}

pub fn distance(c: &SignVector, c2: &SignVector) -> usize {
    separating_set(c, c2).len()
}

/// The common wall of two chambers, if they are adjacent.
pub fn adjacent(arr: &Arrangement, c: &SignVector, c2: &SignVector) -> Option<SignVector> {
    let sep = separating_set(c, c2);
    if sep.len() != 1 {
        return None;
    }
    let mut wall = c.clone();
    wall.0[sep[0]] = Sign::Zero;
    (arr.feasible(&wall, &[]) && face_dim(arr, &wall) + 1 == arr.dim()).then_some(wall)
}

/// `X ∘ C`: take `X`'s sign where nonzero, `C`'s otherwise.
pub fn compose(x: &SignVector, c: &SignVector) -> SignVector {
    SignVector(
        x.0.iter()
            .zip(&c.0)
            .map(|(&a, &b)| if a == Sign::Zero { b } else { a })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Hyperplane;
    use crate::rational::frac;

    fn arr(dim: usize, hs: &[(&[i64], Rational)]) -> Arrangement {
        Arrangement::new(
            dim,
            hs.iter()
                .map(|(n, c)| Hyperplane::new(n.iter().map(|&v| int(v)).collect(), c.clone()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn one_line_has_three_faces() {
        let a = arr(2, &[(&[1, 1], int(-1))]);
        let p = enumerate_faces(&a);
        let svs: Vec<String> = p.faces.iter().map(|f| f.signs.to_string()).collect();
        assert_eq!(svs, vec!["-", "0", "+"]);
        assert_eq!(p.count_by_dim(), vec![0, 1, 2]);
    }

    #[test]
    fn two_lines_faces() {
        let a = arr(2, &[(&[-1, 1], frac(-1, 2)), (&[1, 1], frac(-1, 2))]);
        let p = enumerate_faces(&a);
        assert_eq!(p.count_by_dim(), vec![1, 4, 4]);
        // Opposite chambers across the double point are not adjacent.
        let c = SignVector::parse("++").unwrap();
        let d = SignVector::parse("--").unwrap();
        assert_eq!(adjacent(&a, &c, &d), None);
        let e = SignVector::parse("+-").unwrap();
        assert_eq!(adjacent(&a, &c, &e), Some(SignVector::parse("+0").unwrap()));
        assert_eq!(adjacent(&a, &c, &c), None);
    }

    #[test]
    fn parallel_lines_have_no_wall_between_far_chambers() {
        // x = 0 and x = 1: chambers (-,-) and (+,-) share the wall x = 0.
        let a = arr(2, &[(&[1, 0], int(0)), (&[1, 0], int(-1))]);
        let ch = enumerate_chambers(&a);
        assert_eq!(ch.len(), 3);
        assert!(!is_bounded(&a, &ch[0].signs));
    }

    #[test]
    fn compose_rules() {
        let x = SignVector::parse("0+0").unwrap();
        let c = SignVector::parse("-+-").unwrap();
        assert_eq!(compose(&x, &c), SignVector::parse("-+-").unwrap());
        let d = SignVector::parse("+-+").unwrap();
        assert_eq!(compose(&x, &d), SignVector::parse("+++").unwrap());
        assert_eq!(compose(&c, &d), c);
    }

    #[test]
    fn bounded_triangle() {
        let a = arr(2, &[(&[1, 0], int(0)), (&[0, 1], int(0)), (&[1, 1], int(-1))]);
        let ch = enumerate_chambers(&a);
        assert_eq!(ch.len(), 7);
        let bounded: Vec<_> = ch.iter().filter(|c| is_bounded(&a, &c.signs)).collect();
        assert_eq!(bounded.len(), 1);
        assert_eq!(bounded[0].signs.to_string(), "++-");
    }
}
