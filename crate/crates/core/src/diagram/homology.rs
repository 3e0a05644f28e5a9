//! Abelianized relators of a Heegaard diagram.

use super::{SurfaceDiagram, System};

/// Rows are `C″`-curves, columns `C′`-curves; entry `(r, c)` is the signed
/// number of times curve `r` crosses curve `c`.
///
/// Each `C′`-curve is walked once while transporting the local orientation,
/// fixing at every crossing which transverse half-edge lies on its left.
/// Since the curve is two-sided this choice is coherent along it. A `C″`
/// crossing then counts `+1` when it leaves through that left half-edge.
pub fn relation_matrix(d: &SurfaceDiagram) -> Vec<Vec<i64>> {
    let primes = d.system_curves(System::Prime);
    let doubles = d.system_curves(System::DoublePrime);
    let mut column = vec![usize::MAX; d.curves().len()];
    for (i, &c) in primes.iter().enumerate() {
        column[c] = i;
    }
    let mut left = vec![usize::MAX; d.vertex_count()];
    for &c in &primes {
        let Some(walk) = d.curve_walk(c) else { continue };
        let mut s = 1i8;
        for &h in &walk {
            s *= d.edges()[h / 2].sign;
            let twin = h ^ 1;
            let w = d.end_of(twin).vertex;
            let around = d.curve_half_edges(w);
            if around.len() != 4 {
                continue;
            }
            let q = around.iter().position(|&x| x == twin).expect("twin at its vertex");
            left[w] = around[if s > 0 { (q + 3) % 4 } else { (q + 1) % 4 }];
        }
    }
    doubles
        .iter()
        .map(|&r| {
            let mut row = vec![0i64; primes.len()];
            for h in d.curve_walk(r).unwrap_or_default() {
                let v = d.end_of(h).vertex;
                let around = d.curve_half_edges(v);
                if around.len() != 4 {
                    continue;
                }
                let q = around.iter().position(|&x| x == h).expect("half-edge at its vertex");
                let crossed = d.edges()[around[(q + 1) % 4] / 2].curve.expect("curve edge");
                row[column[crossed]] += if left[v] == h { 1 } else { -1 };
            }
            row
        })
        .collect()
}
