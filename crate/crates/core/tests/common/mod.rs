#![allow(dead_code, clippy::needless_range_loop)]
pub mod props;

use std::path::PathBuf;
use std::sync::OnceLock;

use gmhm::census::crystallizations;
use gmhm::diagram::{modified_complexity_reduced, remove_curves};
use gmhm::gem::{ColourSet, Gem};
use gmhm::gm::value_for_choice;
use gmhm::{induce_diagram, parse_gem, parse_hdg, SurfaceDiagram};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn gem_fixture(name: &str) -> Gem {
    let path = fixture_dir().join(format!("{name}.gem"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_gem(&text).unwrap()
}

pub fn hdg_fixture(name: &str) -> SurfaceDiagram {
    let path = fixture_dir().join(format!("{name}.hdg"));
    parse_hdg(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub const GEM_FIXTURES: [&str; 7] = ["s3_order2", "rp3", "l31", "s1xs2", "s1xts2", "rp3_sum_rp3", "s3_dipoles"];

/// All crystallizations with at most eight vertices, computed once per binary.
pub fn small_census() -> &'static [Gem] {
    static CELL: OnceLock<Vec<Gem>> = OnceLock::new();
    CELL.get_or_init(|| {
        (2..=8)
            .step_by(2)
            .flat_map(|n| crystallizations(n, false, u64::MAX).unwrap())
            .collect()
    })
}

/// Compares the gem-side value of one removal choice with the reduced
/// diagram's modified complexity. Returns the common value.
pub fn per_choice_agreement(gem: &Gem, splitting: usize, d: &[usize], dp: &[usize]) -> Result<usize, String> {
    let induced = induce_diagram(gem, splitting);
    let (a, b) = induced.pair;
    let g_ab = gem.residues(ColourSet::pair(a, b)).unwrap().count();
    let mut ids: Vec<usize> = d.to_vec();
    ids.extend(dp.iter().map(|&k| g_ab + k));
    let reduced = remove_curves(&induced.diagram, &ids);
    let hm = modified_complexity_reduced(&reduced).map_err(|e| format!("{}: {e}", gem.name()))?;
    let gm = value_for_choice(gem, splitting, d, dp).value;
    if gm == hm.value {
        Ok(gm)
    } else {
        Err(format!(
            "{} splitting {splitting} D={d:?} D'={dp:?}: gem side {gm}, diagram side {}",
            gem.name(),
            hm.value
        ))
    }
}

/// `H₁` of the pseudocomplex `K(Γ)` from its simplicial chain complex.
///
/// A simplex with vertex labels `L` at gem vertex `v` is the residue of
/// colours `Δ − L` through `v`; ordering labels by colour orients every cell
/// coherently. Returns `(rank, torsion)`.
pub fn homology_of_k(gem: &Gem) -> (usize, Vec<i64>) {
    let set = |cs: &[u8]| ColourSet::from_colours(cs);
    let part = |cs: &[u8]| gem.residues(set(cs)).unwrap();
    // 0-cells: vertex labelled l is the residue of the three other colours
    let hats: Vec<_> = (0..4u8).map(|l| part(&others(&[l]))).collect();
    let mut v_offset = [0usize; 4];
    for l in 1..4 {
        v_offset[l] = v_offset[l - 1] + hats[l - 1].count();
    }
    let vcount = v_offset[3] + hats[3].count();
    // 1-cells: edge with labels {l0,l1} is the residue of the complementary pair
    let mut pairs = Vec::new();
    for l0 in 0..4u8 {
        for l1 in l0 + 1..4 {
            pairs.push((l0, l1));
        }
    }
    let edge_parts: Vec<_> = pairs.iter().map(|&(l0, l1)| part(&others(&[l0, l1]))).collect();
    let mut e_offset = vec![0usize; pairs.len()];
    for k in 1..pairs.len() {
        e_offset[k] = e_offset[k - 1] + edge_parts[k - 1].count();
    }
    let ecount = e_offset[5] + edge_parts[5].count();
    let edge_id = |l0: u8, l1: u8, v: usize| {
        let k = pairs.iter().position(|&p| p == (l0.min(l1), l0.max(l1))).unwrap();
        e_offset[k] + edge_parts[k].class_of(v)
    };

    let mut d1 = vec![vec![0i64; ecount]; vcount];
    for (k, &(l0, l1)) in pairs.iter().enumerate() {
        for (i, class) in edge_parts[k].classes().iter().enumerate() {
            let v = class[0];
            let col = e_offset[k] + i;
            d1[v_offset[l1 as usize] + hats[l1 as usize].class_of(v)][col] += 1;
            d1[v_offset[l0 as usize] + hats[l0 as usize].class_of(v)][col] -= 1;
        }
    }
    // 2-cells: one triangle per gem edge; a c-edge has labels Δ − {c}
    let mut d2 = vec![Vec::new(); ecount];
    let mut tri = 0;
    for c in 0..4u8 {
        let labels = others(&[c]);
        for v in 0..gem.order() {
            if gem.neighbour(v, c) < v {
                continue;
            }
            for row in d2.iter_mut() {
                row.push(0i64);
            }
            for (i, &drop) in labels.iter().enumerate() {
                let face: Vec<u8> = labels.iter().copied().filter(|&x| x != drop).collect();
                let sign = if i % 2 == 0 { 1 } else { -1 };
                d2[edge_id(face[0], face[1], v)][tri] += sign;
            }
            tri += 1;
        }
    }
    let f1 = smith_diagonal(d1);
    let f2 = smith_diagonal(d2);
    let rank = ecount - f1.len() - f2.len();
    (rank, f2.into_iter().filter(|&t| t > 1).collect())
}

fn others(drop: &[u8]) -> Vec<u8> {
    (0..4u8).filter(|c| !drop.contains(c)).collect()
}

/// Nonzero Smith diagonal, each entry dividing the next.
pub fn smith_diagonal(mut a: Vec<Vec<i64>>) -> Vec<i64> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows && t < cols {
        let mut pivot = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && pivot.is_none_or(|(pi, pj): (usize, usize)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
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
                    for i in t..rows {
                        a[i][j] -= q * a[i][t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if !dirty {
                // enforce divisibility against the rest of the block
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                    }
                    None => break,
                }
            } else {
                // move a smaller remainder into the pivot position
                let mut best = (t, t);
                for i in t..rows {
                    if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..cols {
                    if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}
