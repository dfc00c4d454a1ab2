//! Smith normal form over the integers, used to count finitely generated
//! subgroups of (Z_N)^d without enumerating them.
//!
//! Entries are i128 throughout: inputs are exponents below the phase-order
//! cap, and the Euclidean pivoting only ever shrinks the working submatrix's
//! minimum, so intermediate growth stays far from overflow at the d <= 64
//! sizes seen here.

/// Diagonalize by unimodular row/column operations and return the invariant
/// factors `d_1 | d_2 | ..` (non-negative, divisibility chain, padded with
/// zeros up to `min(rows, cols)`).
pub(crate) fn invariant_factors(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let rank_bound = rows.min(cols);
    let mut diag = vec![0i128; rank_bound];

    for k in 0..rank_bound {
        'pivot: loop {
            // smallest nonzero entry of the trailing submatrix becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    if m[i][j] != 0
                        && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return diag; // trailing submatrix is zero
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }

            // Euclidean elimination of row k and column k
            let mut clean = true;
            for i in (k + 1)..rows {
                if m[i][k] != 0 {
                    let q = m[i][k].div_euclid(m[k][k]);
                    for j in k..cols {
                        m[i][j] -= q * m[k][j];
                    }
                    if m[i][k] != 0 {
                        clean = false;
                    }
                }
            }
            for j in (k + 1)..cols {
                if m[k][j] != 0 {
                    let q = m[k][j].div_euclid(m[k][k]);
                    for i in k..rows {
                        m[i][j] -= q * m[i][k];
                    }
                    if m[k][j] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue 'pivot; // remainders left a smaller pivot candidate
            }

            // divisibility fix-up: the pivot must divide the rest
            for i in (k + 1)..rows {
                for j in (k + 1)..cols {
                    if m[i][j] % m[k][k] != 0 {
                        for col in k..cols {
                            let add = m[i][col];
                            m[k][col] += add;
                        }
                        continue 'pivot;
                    }
                }
            }
            break;
        }
        if m[k][k] < 0 {
            for j in k..cols {
                m[k][j] = -m[k][j];
            }
        }
        diag[k] = m[k][k];
    }
    diag
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_form() {
        let m = vec![
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ];
        assert_eq!(invariant_factors(m), vec![1, 3, 21, 0]);
    }

    #[test]
    fn diagonal_input() {
        let m = vec![vec![4, 0], vec![0, 6]];
        // invariant factors of diag(4,6) are (2, 12)
        assert_eq!(invariant_factors(m), vec![2, 12]);
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(invariant_factors(vec![vec![0, 0], vec![0, 0]]), vec![0, 0]);
    }

    #[test]
    fn divisibility_chain_holds() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
        let d = invariant_factors(m);
        for w in d.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0], 0, "{d:?}");
            }
        }
    }
}
