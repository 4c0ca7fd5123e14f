use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-style Hermite normal form of the lattice spanned by `rows`:
/// echelon rows with positive pivots, entries above each pivot reduced
/// into `[0, pivot)`, zero rows dropped. Canonical for the lattice.
pub fn hermite_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let Some(cols) = m.first().map(|r| r.len()) else {
        return Vec::new();
    };
    let mut top = 0;
    for c in 0..cols {
        if top == m.len() {
            break;
        }
        loop {
            let pivot = (top..m.len())
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()).then(i.cmp(&j)));
            let Some(p) = pivot else {
                break;
            };
            m.swap(top, p);
            let mut clean = true;
            for i in top + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[top][c]);
                let pivot_row = m[top].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                clean &= m[i][c].is_zero();
            }
            if clean {
                break;
            }
        }
        if top < m.len() && !m[top][c].is_zero() {
            if m[top][c].is_negative() {
                for x in m[top].iter_mut() {
                    *x = -&*x;
                }
            }
            let pivot_row = m[top].clone();
            for i in 0..top {
                let q = m[i][c].div_floor(&pivot_row[c]);
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
            top += 1;
        }
    }
    m.truncate(top);
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    m
}
