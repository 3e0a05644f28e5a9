//! GM-complexity of gems.
//!
//! For a splitting `{α,β}|{α′,β′}` the removed collections `D` (of
//! `{α,β}`-cycles) and `D′` (of `{α′,β′}`-cycles) correspond to maximal
//! forests of the 1-subcomplexes of `K(Γ)`: the `{α,β}`-cycles are the
//! 1-simplices joining `α′`- and `β′`-coloured vertices, so `D` is dual to a
//! forest of `K_{α′,β′}` and `D′` to a forest of `K_{α,β}`. On a
//! crystallization each collection is a single cycle.
//!
//! The value of a choice `(D, D′, Ξ)` is the number of gem vertices covered
//! neither by the cycles of `D ∪ D′` nor by the closure of the region `Ξ` of
//! `F − (x ∪ y)`, where `x ∪ y` are all the cycles outside `D ∪ D′`.

use serde::{Deserialize, Serialize};

use crate::embedding::RegularEmbedding;
use crate::error::{Error, Result};
use crate::forest::Multigraph;
use crate::gem::{Colour, ColourSet, Gem, ResiduePartition};

pub const DEFAULT_FOREST_CAP: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct GmOptions {
    pub forest_cap: u64,
    /// Splitting indices to scan (see [`crate::embedding::SPLITTINGS`]); empty means all three.
    pub splittings: Vec<usize>,
}

impl Default for GmOptions {
    fn default() -> Self {
        GmOptions {
            forest_cap: DEFAULT_FOREST_CAP,
            splittings: Vec::new(),
        }
    }
}

impl GmOptions {
    pub(crate) fn splittings(&self) -> Vec<usize> {
        if self.splittings.is_empty() {
            vec![0, 1, 2]
        } else {
            let mut s = self.splittings.clone();
            s.sort_unstable();
            s.dedup();
            s
        }
    }
}

/// A minimizing choice certifying a GM-complexity value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityWitness {
    pub splitting: usize,
    pub pair: (Colour, Colour),
    pub complement: (Colour, Colour),
    /// Removed `{α,β}`-residues, as indices into the `{α,β}` residue partition.
    pub removed_ab: Vec<usize>,
    /// Removed `{α′,β′}`-residues.
    pub removed_cd: Vec<usize>,
    /// Faces of the region `Ξ`, indexing the regular embedding's face list.
    pub region_faces: Vec<usize>,
    /// 0-based vertices covered by `D ∪ D′ ∪ Ξ`.
    pub covered: Vec<usize>,
    pub value: usize,
}

/// The 1-subcomplex of `K(Γ)` spanned by the `i`- and `j`-coloured vertices.
#[derive(Clone, Debug)]
pub struct SubcomplexGraph {
    pub colours: (Colour, Colour),
    /// Nodes `0..g_î` are the `î`-residues, then the `ĵ`-residues.
    pub graph: Multigraph,
    /// Residue index (in the complementary pair's partition) of each edge.
    pub edge_residue: Vec<usize>,
}

pub fn subcomplex_graph(gem: &Gem, i: Colour, j: Colour) -> SubcomplexGraph {
    let hat_i = gem.residues(ColourSet::hat(i)).expect("triple");
    let hat_j = gem.residues(ColourSet::hat(j)).expect("triple");
    let edges_part = gem
        .residues(ColourSet::pair(i, j).complement())
        .expect("pair");
    let offset = hat_i.count();
    let edges = edges_part
        .classes()
        .iter()
        .map(|class| (hat_i.class_of(class[0]), offset + hat_j.class_of(class[0])))
        .collect();
    SubcomplexGraph {
        colours: (i.min(j), i.max(j)),
        graph: Multigraph {
            nodes: offset + hat_j.count(),
            edges,
        },
        edge_residue: (0..edges_part.count()).collect(),
    }
}

/// A removable collection of `{a,b}`-cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestChoice {
    pub family: (Colour, Colour),
    /// Sorted indices into the `{a,b}` residue partition.
    pub curves: Vec<usize>,
}

/// All collections of `{a,b}`-cycles dual to a maximal forest of the
/// complementary subcomplex, in lexicographic order.
pub fn forest_choices(gem: &Gem, a: Colour, b: Colour, cap: u64) -> Result<Vec<ForestChoice>> {
    let comp = ColourSet::pair(a, b).complement();
    let (c, d) = comp.as_pair().expect("pair");
    let sub = subcomplex_graph(gem, c, d);
    let mut out: Vec<ForestChoice> = sub
        .graph
        .maximal_forests(cap)?
        .into_iter()
        .map(|forest| {
            let mut curves: Vec<usize> = forest.into_iter().map(|e| sub.edge_residue[e]).collect();
            curves.sort_unstable();
            ForestChoice {
                family: (a.min(b), a.max(b)),
                curves,
            }
        })
        .collect();
    out.sort_by(|x, y| x.curves.cmp(&y.curves));
    Ok(out)
}

fn flags(count: usize, chosen: &[usize]) -> Vec<bool> {
    let mut f = vec![false; count];
    for &i in chosen {
        f[i] = true;
    }
    f
}

fn mark(covered: &mut [bool], part: &ResiduePartition, chosen: &[usize]) {
    for &i in chosen {
        for &v in part.class(i) {
            covered[v] = true;
        }
    }
}

/// Best region for a fixed `(D, D′)`.
pub(crate) fn evaluate(
    gem: &Gem,
    emb: &RegularEmbedding,
    d: &[usize],
    dp: &[usize],
) -> ComplexityWitness {
    let n = gem.order();
    let mut base = vec![false; n];
    mark(&mut base, &emb.ab, d);
    mark(&mut base, &emb.cd, dp);
    let regions = emb.regions(gem, &flags(emb.ab.count(), d), &flags(emb.cd.count(), dp));
    let mut best: Option<(usize, usize)> = None;
    for (r, region) in regions.iter().enumerate() {
        let extra = region.vertex_closure.iter().filter(|&&v| !base[v]).count();
        if best.is_none_or(|(_, e)| extra > e) {
            best = Some((r, extra));
        }
    }
    let (r, _) = best.expect("at least one region");
    let mut covered = base;
    for &v in &regions[r].vertex_closure {
        covered[v] = true;
    }
    let covered: Vec<usize> = (0..n).filter(|&v| covered[v]).collect();
    ComplexityWitness {
        splitting: emb.splitting,
        pair: emb.pair(),
        complement: emb.complement(),
        removed_ab: d.to_vec(),
        removed_cd: dp.to_vec(),
        region_faces: regions[r].faces.clone(),
        value: n - covered.len(),
        covered,
    }
}

fn scan<'a>(
    gem: &Gem,
    splittings: &[usize],
    mut choices: impl FnMut(&RegularEmbedding) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> + 'a,
) -> Result<ComplexityWitness> {
    let mut best: Option<ComplexityWitness> = None;
    for &s in splittings {
        let emb = RegularEmbedding::new(gem, s);
        let (ds, dps) = choices(&emb)?;
        for d in &ds {
            for dp in &dps {
                let w = evaluate(gem, &emb, d, dp);
                if best.as_ref().is_none_or(|b| w.value < b.value) {
                    best = Some(w);
                }
            }
        }
    }
    best.ok_or_else(|| Error::Invalid("no colour splitting selected".into()))
}

/// Value of one removal choice: the best region for fixed collections `d`
/// (indices of `{α,β}`-cycles) and `dp` (indices of `{α′,β′}`-cycles).
pub fn value_for_choice(gem: &Gem, splitting: usize, d: &[usize], dp: &[usize]) -> ComplexityWitness {
    let emb = RegularEmbedding::new(gem, splitting);
    evaluate(gem, &emb, d, dp)
}

/// GM-complexity of an arbitrary manifold gem, minimising over splittings,
/// maximal-forest collections on both sides and regions.
pub fn gm_value(gem: &Gem, opts: &GmOptions) -> Result<ComplexityWitness> {
    check_manifold(gem)?;
    scan(gem, &opts.splittings(), |emb| {
        let (a, b) = emb.pair();
        let (c, d) = emb.complement();
        let ds = forest_choices(gem, a, b, opts.forest_cap)?;
        let dps = forest_choices(gem, c, d, opts.forest_cap)?;
        Ok((
            ds.into_iter().map(|f| f.curves).collect(),
            dps.into_iter().map(|f| f.curves).collect(),
        ))
    })
}

/// GM-complexity of a crystallization, removing exactly one cycle from each family.
pub fn gm_value_crystallization(gem: &Gem, opts: &GmOptions) -> Result<ComplexityWitness> {
    check_manifold(gem)?;
    if !gem.is_contracted() {
        return Err(Error::NotContracted);
    }
    scan(gem, &opts.splittings(), |emb| {
        Ok((
            (0..emb.ab.count()).map(|i| vec![i]).collect(),
            (0..emb.cd.count()).map(|i| vec![i]).collect(),
        ))
    })
}

fn check_manifold(gem: &Gem) -> Result<()> {
    if !gem.is_connected() {
        return Err(Error::InvalidGem("disconnected".into()));
    }
    if !gem.is_manifold() {
        return Err(Error::NotManifold);
    }
    Ok(())
}

/// Outcome of comparing a connected sum against its summands.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpliceReport {
    pub summand_values: (usize, usize),
    /// Minimum over all splice-vertex choices.
    pub best_sum_value: usize,
    pub best_splice: (usize, usize),
    pub worst_sum_value: usize,
    pub subadditive_for_best: bool,
    /// Splice choices whose sum exceeds the summands' total.
    pub violations: Vec<(usize, usize)>,
}

/// Computes GM-complexity of `g1 # g2` for every splice-vertex pair.
pub fn splice_check(g1: &Gem, g2: &Gem, opts: &GmOptions) -> Result<SpliceReport> {
    let a = gm_value(g1, opts)?.value;
    let b = gm_value(g2, opts)?.value;
    let mut best = (usize::MAX, (0, 0));
    let mut worst = 0;
    let mut violations = Vec::new();
    for v1 in 0..g1.order() {
        for v2 in 0..g2.order() {
            let value = gm_value(&g1.connected_sum(v1, g2, v2), opts)?.value;
            if value < best.0 {
                best = (value, (v1, v2));
            }
            worst = worst.max(value);
            if value > a + b {
                violations.push((v1, v2));
            }
        }
    }
    Ok(SpliceReport {
        summand_values: (a, b),
        best_sum_value: best.0,
        best_splice: best.1,
        worst_sum_value: worst,
        subadditive_for_best: best.0 <= a + b,
        violations,
    })
}

/// Smallest GM-complexity over a set of gems; an upper bound for the
/// extended GM-complexity of the manifold they represent.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogueBound {
    pub upper_bound: usize,
    pub gem: String,
    pub considered: usize,
}

pub fn catalogue_min<'a>(
    gems: impl IntoIterator<Item = &'a Gem>,
    opts: &GmOptions,
) -> Result<CatalogueBound> {
    let mut best: Option<CatalogueBound> = None;
    let mut considered = 0;
    for g in gems {
        considered += 1;
        let v = gm_value(g, opts)?.value;
        if best.as_ref().is_none_or(|b| v < b.upper_bound) {
            best = Some(CatalogueBound {
                upper_bound: v,
                gem: g.name().to_string(),
                considered: 0,
            });
        }
    }
    let mut best = best.ok_or(Error::EmptySelection)?;
    best.considered = considered;
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_gem_has_value_zero() {
        let g = Gem::standard_sphere();
        let w = gm_value(&g, &GmOptions::default()).unwrap();
        assert_eq!(w.value, 0);
        assert_eq!(w.splitting, 0);
        assert_eq!(w.covered, vec![0, 1]);
        let fast = gm_value_crystallization(&g, &GmOptions::default()).unwrap();
        assert_eq!(fast, w);
    }

    #[test]
    fn subcomplex_of_order_two_gem() {
        let g = Gem::standard_sphere();
        let sub = subcomplex_graph(&g, 0, 1);
        assert_eq!(sub.graph.nodes, 2);
        assert_eq!(sub.graph.edges, vec![(0, 1)]);
    }

    #[test]
    fn crystallization_choices_are_singletons() {
        let g = Gem::standard_sphere();
        let ch = forest_choices(&g, 0, 1, 10).unwrap();
        assert_eq!(ch.len(), 1);
        assert_eq!(ch[0].curves, vec![0]);
    }

    #[test]
    fn dipole_gem_needs_larger_collections() {
        let g = Gem::standard_sphere().insert_dipole(0, 3);
        // removing colour 3 splits Γ_3̂, so K_{2,3} has three vertices
        let sub = subcomplex_graph(&g, 2, 3);
        assert_eq!(sub.graph.nodes, 3);
        for ch in forest_choices(&g, 0, 1, 100).unwrap() {
            assert_eq!(ch.curves.len(), 2);
        }
        assert!(matches!(
            gm_value_crystallization(&g, &GmOptions::default()),
            Err(Error::NotContracted)
        ));
        assert_eq!(gm_value(&g, &GmOptions::default()).unwrap().value, 0);
    }

    #[test]
    fn empty_catalogue_is_an_error() {
        assert!(matches!(
            catalogue_min(std::iter::empty(), &GmOptions::default()),
            Err(Error::EmptySelection)
        ));
    }

    #[test]
    fn splitting_restriction_is_respected() {
        let g = Gem::standard_sphere();
        let opts = GmOptions {
            splittings: vec![2],
            ..Default::default()
        };
        assert_eq!(gm_value(&g, &opts).unwrap().splitting, 2);
    }
}
