//! Smith normal form over the integers (invariant factors only).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix, all positive.
pub fn invariant_factors(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: smallest nonzero absolute value in the remaining block.
        let Some((pi, pj)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !m[i][j].is_zero())
            .min_by(|&(a, b), &(c, d)| m[a][b].abs().cmp(&m[c][d].abs()))
        else {
            break;
        };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = m[i][t].div_floor(&m[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let v = &q * &m[t][j];
                    m[i][j] -= v;
                }
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = m[t][j].div_floor(&m[t][t]);
            if !q.is_zero() {
                for i in t..rows {
                    let v = &q * &m[i][t];
                    m[i][j] -= v;
                }
            }
            clean &= m[t][j].is_zero();
        }
        if !clean {
            // A smaller remainder appeared; pick a new pivot.
            continue;
        }
        // The pivot must divide the rest of the block.
        let bad = (t + 1..rows)
            .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !(&m[i][j] % &m[t][t]).is_zero());
        if let Some((i, _)) = bad {
            for j in t..cols {
                let v = m[i][j].clone();
                m[t][j] += v;
            }
            continue;
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// `Z^n / rowspace(m)` as `(free rank, torsion orders > 1)`.
pub fn cokernel(m: Vec<Vec<BigInt>>, n: usize) -> (usize, Vec<BigInt>) {
    let d = invariant_factors(m);
    let torsion = d.iter().filter(|x| !x.is_one()).cloned().collect();
    (n - d.len(), torsion)
}
