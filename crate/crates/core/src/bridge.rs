//! From gems to Heegaard diagrams: induced diagrams, the complexity
//! cross-check, and first-homology fingerprints.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::{
    admissible_forests, classify_system, dual_graph, modified_complexity, relation_matrix,
    remove_curves, Curve, End, HmResult, MapEdge, SurfaceDiagram, System, SystemClass,
};
use crate::embedding::{RegularEmbedding, SPLITTINGS};
use crate::error::{Error, Result};
use crate::gem::{Colour, ColourSet, Gem};
use crate::gm::{gm_value, ComplexityWitness, GmOptions};
use crate::snf::invariant_factors;

/// A gem drawn on `F_{α,β}` as a generalized Heegaard diagram: `C′` are the
/// `{α,β}`-cycles (named `x1, x2, …`), `C″` the `{α′,β′}`-cycles (`y1, …`).
#[derive(Clone, Debug)]
pub struct InducedDiagram {
    pub gem: String,
    pub splitting: usize,
    pub pair: (Colour, Colour),
    pub complement: (Colour, Colour),
    pub diagram: SurfaceDiagram,
}

/// Parity of BFS depth from vertex 0, per component.
fn depth_parity(gem: &Gem) -> Vec<bool> {
    let n = gem.order();
    let mut odd = vec![None; n];
    for start in 0..n {
        if odd[start].is_some() {
            continue;
        }
        odd[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for c in 0..4 {
                let w = gem.neighbour(v, c);
                if odd[w].is_none() {
                    odd[w] = Some(!odd[v].unwrap());
                    queue.push_back(w);
                }
            }
        }
    }
    odd.into_iter().map(|x| x.unwrap()).collect()
}

pub fn induce_diagram(gem: &Gem, splitting: usize) -> InducedDiagram {
    let ((a, b), (c, d)) = SPLITTINGS[splitting];
    let n = gem.order();
    let flipped = depth_parity(gem);
    let slot = |v: usize, colour: Colour| -> usize {
        let order = if flipped[v] { [a, d, b, c] } else { [a, c, b, d] };
        order.iter().position(|&x| x == colour).expect("colour in splitting")
    };
    let ab = gem.residues(ColourSet::pair(a, b)).expect("pair");
    let cd = gem.residues(ColourSet::pair(c, d)).expect("pair");
    let mut curves: Vec<Curve> = (0..ab.count())
        .map(|k| Curve {
            name: format!("x{}", k + 1),
            system: System::Prime,
        })
        .collect();
    curves.extend((0..cd.count()).map(|k| Curve {
        name: format!("y{}", k + 1),
        system: System::DoublePrime,
    }));
    let mut edges = Vec::with_capacity(2 * n);
    for colour in 0..4 {
        for v in 0..n {
            let w = gem.neighbour(v, colour);
            if v > w {
                continue;
            }
            let curve = if colour == a || colour == b {
                ab.class_of(v)
            } else {
                ab.count() + cd.class_of(v)
            };
            let f = |x: usize| if flipped[x] { -1i8 } else { 1 };
            edges.push(MapEdge {
                ends: [
                    End { vertex: v, slot: slot(v, colour) },
                    End { vertex: w, slot: slot(w, colour) },
                ],
                sign: -f(v) * f(w),
                curve: Some(curve),
            });
        }
    }
    let name = format!("{}_{}{}", gem.name(), a, b);
    let diagram = SurfaceDiagram::new(name, n, edges, curves).expect("induced map is consistent");
    InducedDiagram {
        gem: gem.name().to_string(),
        splitting,
        pair: (a, b),
        complement: (c, d),
        diagram,
    }
}

/// Per-splitting summary of an induced diagram.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairSummary {
    pub splitting: usize,
    pub pair: (Colour, Colour),
    pub euler_char: i64,
    pub orientable: bool,
    pub crossings: usize,
    pub prime_curves: usize,
    pub double_prime_curves: usize,
    pub prime: SystemClass,
    pub double_prime: SystemClass,
    /// Whether the map agrees with the regular embedding's χ and orientability.
    pub matches_embedding: bool,
    pub valid: bool,
    pub hm: HmResult,
}

pub fn summarize_pair(gem: &Gem, splitting: usize, forest_cap: u64) -> Result<PairSummary> {
    let induced = induce_diagram(gem, splitting);
    let d = &induced.diagram;
    let report = d.validate();
    let emb = RegularEmbedding::new(gem, splitting);
    Ok(PairSummary {
        splitting,
        pair: induced.pair,
        euler_char: report.euler_char,
        orientable: report.orientable,
        crossings: report.crossings,
        prime_curves: d.system_curves(System::Prime).len(),
        double_prime_curves: d.system_curves(System::DoublePrime).len(),
        prime: classify_system(d, System::Prime),
        double_prime: classify_system(d, System::DoublePrime),
        matches_embedding: report.euler_char == emb.euler_char && report.orientable == emb.orientable,
        valid: report.is_valid(),
        hm: modified_complexity(d, forest_cap)?,
    })
}

/// Gem-side and diagram-side complexities of one gem.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CrossCheck {
    pub gem: String,
    pub gm_value: usize,
    pub hm_value: usize,
    pub equal: bool,
    pub gem_witness: ComplexityWitness,
    /// Splitting whose induced diagram attains `hm_value` first.
    pub diagram_splitting: usize,
    pub pairs: Vec<PairSummary>,
    /// Every reduction audit was clean and every induced diagram valid.
    pub audit_clean: bool,
}

pub fn cross_check(gem: &Gem, opts: &GmOptions) -> Result<CrossCheck> {
    let gem_witness = gm_value(gem, opts)?;
    let pairs = opts
        .splittings()
        .into_iter()
        .map(|s| summarize_pair(gem, s, opts.forest_cap))
        .collect::<Result<Vec<_>>>()?;
    let best = (0..pairs.len())
        .reduce(|b, i| if pairs[i].hm.value < pairs[b].hm.value { i } else { b })
        .ok_or_else(|| Error::Invalid("no colour splitting selected".into()))?;
    let hm_value = pairs[best].hm.value;
    let audit_clean = pairs
        .iter()
        .all(|p| p.valid && p.matches_embedding && p.prime.proper && p.hm.audit.is_clean());
    Ok(CrossCheck {
        gem: gem.name().to_string(),
        gm_value: gem_witness.value,
        hm_value,
        equal: gem_witness.value == hm_value,
        diagram_splitting: pairs[best].splitting,
        gem_witness,
        pairs,
        audit_clean,
    })
}

/// `H₁` as `Z^rank ⊕ Z_{t₁} ⊕ … ⊕ Z_{t_k}` with `t₁ | t₂ | …`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct H1Fingerprint {
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl H1Fingerprint {
    /// Cokernel of the relation matrix (rows are relators over `cols` generators).
    pub fn from_relations(matrix: &[Vec<i64>], cols: usize) -> Self {
        let factors = if matrix.is_empty() { Vec::new() } else { invariant_factors(matrix) };
        H1Fingerprint {
            rank: cols - factors.len(),
            torsion: factors.into_iter().filter(|&t| t > 1).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for H1Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

impl FromStr for H1Fingerprint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("bad homology fingerprint `{s}`"));
        let s = s.trim();
        if s == "0" {
            return Ok(H1Fingerprint { rank: 0, torsion: Vec::new() });
        }
        let mut rank = 0;
        let mut orders = Vec::new();
        for part in s.split('+') {
            let rest = part.trim().strip_prefix('Z').ok_or_else(bad)?;
            if rest.is_empty() {
                rank += 1;
            } else if let Some(r) = rest.strip_prefix('^') {
                rank += r.parse::<usize>().map_err(|_| bad())?;
            } else {
                let t: i64 = rest.parse().map_err(|_| bad())?;
                if t < 2 {
                    return Err(bad());
                }
                orders.push(t);
            }
        }
        // normalise to invariant factors
        let k = orders.len();
        let diag: Vec<Vec<i64>> = (0..k)
            .map(|i| (0..k).map(|j| if i == j { orders[i] } else { 0 }).collect())
            .collect();
        let torsion = if k == 0 { Vec::new() } else { invariant_factors(&diag) };
        Ok(H1Fingerprint {
            rank,
            torsion: torsion.into_iter().filter(|&t| t > 1).collect(),
        })
    }
}

/// Homology read off the first reduction of the diagram induced by one splitting.
pub fn first_homology_for(gem: &Gem, splitting: usize, forest_cap: u64) -> Result<H1Fingerprint> {
    let induced = induce_diagram(gem, splitting);
    let d = &induced.diagram;
    let mut removed = Vec::new();
    for system in [System::Prime, System::DoublePrime] {
        let dg = dual_graph(d, system);
        let forests = admissible_forests(&dg, forest_cap)?;
        let first = forests.first().ok_or_else(|| Error::Invalid("no admissible forest".into()))?;
        removed.extend(first.iter().map(|&k| dg.curves[k]));
    }
    let reduced = remove_curves(d, &removed);
    let cols = reduced.system_curves(System::Prime).len();
    Ok(H1Fingerprint::from_relations(&relation_matrix(&reduced), cols))
}

/// First homology from splitting 0, checked against the other two.
pub fn first_homology(gem: &Gem, forest_cap: u64) -> Result<H1Fingerprint> {
    let all = first_homology_all(gem, forest_cap)?;
    if all.iter().any(|h| *h != all[0]) {
        return Err(Error::Invalid(format!(
            "homology differs across splittings: {} / {} / {}",
            all[0], all[1], all[2]
        )));
    }
    Ok(all[0].clone())
}

pub fn first_homology_all(gem: &Gem, forest_cap: u64) -> Result<[H1Fingerprint; 3]> {
    if !gem.is_manifold() {
        return Err(Error::NotManifold);
    }
    Ok([
        first_homology_for(gem, 0, forest_cap)?,
        first_homology_for(gem, 1, forest_cap)?,
        first_homology_for(gem, 2, forest_cap)?,
    ])
}
