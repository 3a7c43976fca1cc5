//! Presentations of the fundamental group read off the level-1 and level-2
//! cells of the minimal complex.
//!
//! Generators `gamma_1..gamma_n` are the chambers of `ch_1`, ordered along
//! `+v_1`. Each `C` in `ch_2` contributes the relation
//! `gamma_1^{e_1} ... gamma_n^{e_n} gamma_1^{-e_1} ... gamma_n^{-e_n}` with
//! `e_j = deg(C, C_j)`.

use std::fmt;

use num_bigint::BigInt;

use crate::degree::DegreeTable;
use crate::flag::ChamberPartition;
use crate::geometry::SignVector;
use crate::snf;

/// A word in the free group; letter `g` is `gamma_{|g|}^{sign(g)}`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Word(pub Vec<i32>);

impl Word {
    /// Free reduction (cancels adjacent inverse letters).
    pub fn reduced(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &g in &self.0 {
            if out.last() == Some(&-g) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|g| -g).collect())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Exponent sum of each generator `1..=n`.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut s = vec![0; n];
        for &g in &self.0 {
            s[g.unsigned_abs() as usize - 1] += g.signum() as i64;
        }
        s
    }

    pub fn parse(text: &str) -> Option<Word> {
        let text = text.trim();
        if text == "1" {
            return Some(Word::default());
        }
        let mut out = Vec::new();
        for part in text.split('*') {
            let rest = part.trim().strip_prefix("gamma")?;
            let (idx, pow) = match rest.split_once('^') {
                Some((i, p)) => (i.parse::<i32>().ok()?, p.parse::<i32>().ok()?),
                None => (rest.parse::<i32>().ok()?, 1),
            };
            if idx < 1 || pow == 0 {
                return None;
            }
            for _ in 0..pow.unsigned_abs() {
                out.push(idx * pow.signum());
            }
        }
        Some(Word(out))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == g {
                j += 1;
            }
            let e = (j - i) as i32 * g.signum();
            parts.push(if e == 1 {
                format!("gamma{}", g.abs())
            } else {
                format!("gamma{}^{}", g.abs(), e)
            });
            i = j;
        }
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relations: Vec<Word>,
    /// The `ch_2` chamber behind each relation.
    pub relation_chambers: Vec<SignVector>,
}

/// `gamma_1^{e_1} ... gamma_n^{e_n} gamma_1^{-e_1} ... gamma_n^{-e_n}`, reduced.
pub fn relation_word(exponents: &[i64]) -> Word {
    let mut w = Vec::new();
    for sign in [1i64, -1] {
        for (j, &e) in exponents.iter().enumerate() {
            let g = (j + 1) as i32 * (sign * e).signum() as i32;
            for _ in 0..e.unsigned_abs() {
                w.push(g);
            }
        }
    }
    Word(w).reduced()
}

/// Builds the presentation from the partition and the level-2 degree table
/// (`degrees[1]`, absent for one-dimensional arrangements).
pub fn presentation(part: &ChamberPartition, degrees: &[DegreeTable]) -> Presentation {
    let generators = part.levels.get(1).map_or(0, Vec::len);
    let (relations, relation_chambers) = match (part.levels.get(2), degrees.get(1)) {
        (Some(top), Some(table)) => top
            .iter()
            .zip(&table.values)
            .map(|(c, row)| (relation_word(row), c.signs.clone()))
            .unzip(),
        _ => (Vec::new(), Vec::new()),
    };
    Presentation {
        generators,
        relations,
        relation_chambers,
    }
}

impl Presentation {
    /// The abelianization `Z^r ⊕ torsion`.
    pub fn abelianization(&self) -> (usize, Vec<BigInt>) {
        let m: Vec<Vec<BigInt>> = self
            .relations
            .iter()
            .map(|w| w.exponent_sums(self.generators).into_iter().map(BigInt::from).collect())
            .collect();
        snf::cokernel(m, self.generators)
    }

    /// Every relation has zero exponent sum in every generator.
    pub fn relations_are_commutators(&self) -> bool {
        self.relations
            .iter()
            .all(|w| w.exponent_sums(self.generators).iter().all(|&s| s == 0))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generators).map(|i| format!("gamma{i}")).collect();
        let rels: Vec<String> = self.relations.iter().map(ToString::to_string).collect();
        if rels.is_empty() {
            write!(f, "< {} | >", gens.join(", "))
        } else {
            write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
        }
    }
}
