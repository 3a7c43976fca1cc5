//! The Salvetti complex as an abstract poset of pairs `(X, C)` with `X <= C`.

use crate::faces::{compose, enumerate_faces, FacePoset};
use crate::geometry::Arrangement;

/// A cell `(X, C)`; `face` and `chamber` index into [`FacePoset::faces`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SalvettiCell {
    pub face: usize,
    pub chamber: usize,
    /// Codimension of the face.
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct SalvettiComplex {
    pub poset: FacePoset,
    pub cells: Vec<SalvettiCell>,
}

pub fn build_salvetti(arr: &Arrangement) -> SalvettiComplex {
    from_faces(enumerate_faces(arr))
}

pub fn from_faces(poset: FacePoset) -> SalvettiComplex {
    let ambient = poset.dim;
    let chambers: Vec<usize> = (0..poset.faces.len())
        .filter(|&i| poset.faces[i].signs.is_chamber())
        .collect();
    let mut cells = Vec::new();
    for (x, face) in poset.faces.iter().enumerate() {
        for &c in &chambers {
            if face.signs.le(&poset.faces[c].signs) {
                cells.push(SalvettiCell {
                    face: x,
                    chamber: c,
                    dim: face.codim(ambient),
                });
            }
        }
    }
    SalvettiComplex { poset, cells }
}

impl SalvettiComplex {
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.poset.dim + 1];
        for cell in &self.cells {
            c[cell.dim] += 1;
        }
        c
    }

    /// `(X1, C1) ⪯ (X2, C2)` iff `X1 >= X2` and `X1 ∘ C2 = C1`.
    pub fn le(&self, a: &SalvettiCell, b: &SalvettiCell) -> bool {
        let f = &self.poset.faces;
        f[b.face].signs.le(&f[a.face].signs)
            && compose(&f[a.face].signs, &f[b.chamber].signs) == f[a.chamber].signs
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }

    /// Covering relations (cells of adjacent dimension in order), as index pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, a) in self.cells.iter().enumerate() {
            for (j, b) in self.cells.iter().enumerate() {
                if b.dim == a.dim + 1 && self.le(a, b) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}
