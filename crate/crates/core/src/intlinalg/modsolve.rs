use crate::rings::gcd_u64;

/// Whether `A x = b` has a solution over `Z_q`. Entries must lie in `[0, q)`.
///
/// Diagonalizes with integer row and column operations carried out modulo
/// `q`; these stay invertible over `Z_q`, so `d_i y_i = c_i` decides it.
pub fn solvable_mod(a: &[Vec<u64>], b: &[u64], q: u64) -> bool {
    assert!(q >= 1, "modulus must be positive");
    if q == 1 {
        return true;
    }
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let q = q as u128;
    let mut a: Vec<Vec<u128>> = a.iter().map(|r| r.iter().map(|&x| x as u128).collect()).collect();
    let mut b: Vec<u128> = b.iter().map(|&x| x as u128).collect();
    let sub = |x: u128, y: u128, f: u128| (x + q - (f * y) % q) % q;
    let mut rank = 0;
    'outer: for t in 0..m.min(n) {
        loop {
            let mut best: Option<(u128, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &v) in row.iter().enumerate().skip(t) {
                    if v != 0 && best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
            let Some((p, i, j)) = best else {
                break 'outer;
            };
            a.swap(t, i);
            b.swap(t, i);
            for row in a.iter_mut() {
                row.swap(t, j);
            }
            let mut clean = true;
            for i in t + 1..m {
                let f = a[i][t] / p;
                if f != 0 {
                    for j in t..n {
                        a[i][j] = sub(a[i][j], a[t][j], f);
                    }
                    b[i] = sub(b[i], b[t], f);
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..n {
                let f = a[t][j] / p;
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] = sub(row[j], row[t], f);
                    }
                }
                clean &= a[t][j] == 0;
            }
            if clean {
                rank = t + 1;
                break;
            }
        }
    }
    for i in 0..m {
        let d = if i < rank { a[i][i] } else { 0 };
        let g = if d == 0 { q } else { gcd_u64(d as u64, q as u64) as u128 };
        if !b[i].is_multiple_of(g) {
            return false;
        }
    }
    true
}
