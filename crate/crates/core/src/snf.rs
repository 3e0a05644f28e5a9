//! Integer diagonalization for abelian group presentations.

#![allow(clippy::needless_range_loop)]

/// Diagonal entries (positive, each dividing the next) of the Smith normal
/// form of an integer matrix. Zero diagonal entries are dropped, so the
/// length of the result is the rank.
pub fn invariant_factors(matrix: &[Vec<i64>]) -> Vec<i64> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| {
            assert_eq!(r.len(), cols, "ragged matrix");
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();

    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: smallest nonzero magnitude in the trailing block
        let Some((pr, pc)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs())
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }

        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for row in a.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if !dirty {
                // enforce divisibility against the rest of the block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                    }
                }
            } else {
                // move the smallest remaining entry of row/column t to the pivot
                let (mut best, mut at) = (a[t][t].abs(), (t, t));
                for i in t + 1..rows {
                    if a[i][t] != 0 && a[i][t].abs() < best {
                        best = a[i][t].abs();
                        at = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if a[t][j] != 0 && a[t][j].abs() < best {
                        best = a[t][j].abs();
                        at = (t, j);
                    }
                }
                if at.0 != t {
                    a.swap(t, at.0);
                } else if at.1 != t {
                    for row in a.iter_mut() {
                        row.swap(t, at.1);
                    }
                }
            }
        }
        diag.push(a[t][t].abs() as i64);
        t += 1;
    }
    diag
}
