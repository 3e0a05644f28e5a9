//! Properties shared by the proptest suite and the acceptance run.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use gmhm::diagram::{classify_system, modified_complexity_reduced, reduce_all};
use gmhm::embedding::RegularEmbedding;
use gmhm::gem::Gem;
use gmhm::gm::forest_choices;
use gmhm::{induce_diagram, parse_gem, parse_hdg, serialize_hdg, System};

use super::{per_choice_agreement, small_census};

/// A census gem, optionally with dipoles inserted, colours permuted and
/// vertices relabelled.
#[derive(Clone, Debug)]
pub struct GemCase {
    pub base: usize,
    pub dipoles: Vec<(u32, u8)>,
    pub perm: usize,
    pub seed: u64,
}

impl GemCase {
    pub fn build(&self) -> Gem {
        let census = small_census();
        let mut g = census[self.base % census.len()].clone();
        for &(v, c) in &self.dipoles {
            g = g.insert_dipole(v as usize % g.order(), c);
        }
        let perms = permutations();
        g = g.permute_colours(perms[self.perm % perms.len()]);
        relabel(&g, self.seed)
    }
}

fn permutations() -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                if a != b && b != c && a != c {
                    out.push([a, b, c, 6 - a - b - c]);
                }
            }
        }
    }
    out
}

fn relabel(g: &Gem, seed: u64) -> Gem {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let n = g.order();
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng);
    let m = |c: u8| {
        let mut out = vec![0; n];
        for v in 0..n {
            out[p[v]] = p[g.neighbour(v, c)];
        }
        out
    };
    Gem::new(g.name(), [m(0), m(1), m(2), m(3)]).unwrap()
}

pub fn gem_case(max_dipoles: usize) -> impl Strategy<Value = GemCase> {
    (
        any::<usize>(),
        prop::collection::vec((any::<u32>(), 0..4u8), 0..=max_dipoles),
        0..24usize,
        any::<u64>(),
    )
        .prop_map(|(base, dipoles, perm, seed)| GemCase { base, dipoles, perm, seed })
}

pub fn gem_round_trip(case: &GemCase) -> Result<(), TestCaseError> {
    let g = case.build();
    let text = g.to_string();
    let back = parse_gem(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back, &g);
    prop_assert_eq!(back.to_string(), text);
    Ok(())
}

pub fn hdg_round_trip(case: &GemCase, splitting: usize) -> Result<(), TestCaseError> {
    let g = case.build();
    let d = induce_diagram(&g, splitting % 3).diagram;
    let text = serialize_hdg(&d);
    let back = parse_hdg(&text).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back, &d);
    prop_assert_eq!(serialize_hdg(&back), text);
    Ok(())
}

/// Regions partition the faces, their closures are the union of member
/// face vertices, and keeping every curve leaves a single region.
pub fn region_partition(case: &GemCase, splitting: usize, keep_seed: u64) -> Result<(), TestCaseError> {
    let g = case.build();
    let emb = RegularEmbedding::new(&g, splitting % 3);
    let mut rng = rand::rngs::StdRng::seed_from_u64(keep_seed);
    let kab: Vec<bool> = (0..emb.ab.count()).map(|_| rng.gen()).collect();
    let kcd: Vec<bool> = (0..emb.cd.count()).map(|_| rng.gen()).collect();
    let regions = emb.regions(&g, &kab, &kcd);
    let mut owner = vec![usize::MAX; emb.faces.len()];
    for (r, region) in regions.iter().enumerate() {
        prop_assert!(!region.faces.is_empty());
        let mut closure = Vec::new();
        for &f in &region.faces {
            prop_assert_eq!(owner[f], usize::MAX, "face {} in two regions", f);
            owner[f] = r;
            closure.extend(emb.faces[f].vertices.iter().copied());
        }
        closure.sort_unstable();
        closure.dedup();
        prop_assert_eq!(&closure, &region.vertex_closure);
    }
    prop_assert!(owner.iter().all(|&r| r != usize::MAX));
    let all = emb.regions(&g, &vec![true; kab.len()], &vec![true; kcd.len()]);
    prop_assert_eq!(all.len(), 1);
    prop_assert_eq!(all[0].vertex_closure.len(), g.order());
    Ok(())
}

/// Every element of `Rd(H)` has both systems reduced and `n(R) ≤ c(H′)`.
pub fn reductions_are_reduced(case: &GemCase, splitting: usize) -> Result<(), TestCaseError> {
    let g = case.build();
    let d = induce_diagram(&g, splitting % 3).diagram;
    let (rd, audit) = reduce_all(&d, 1_000_000).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(!rd.is_empty());
    prop_assert!(audit.is_clean(), "{:?}", audit);
    for r in &rd {
        for system in [System::Prime, System::DoublePrime] {
            let class = classify_system(&r.diagram, system);
            prop_assert!(class.proper && class.reduced, "{:?} {:?}", system, class);
        }
        let c = modified_complexity_reduced(&r.diagram).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert!(c.region_crossings <= c.crossings);
        prop_assert_eq!(c.value, c.crossings - c.region_crossings);
    }
    Ok(())
}

/// A random removal choice scores the same on the gem and on the reduced diagram.
pub fn choice_agreement(case: &GemCase, splitting: usize, pick: (usize, usize)) -> Result<(), TestCaseError> {
    let g = case.build();
    let s = splitting % 3;
    let emb = RegularEmbedding::new(&g, s);
    let (a, b) = emb.pair();
    let (c, d) = emb.complement();
    let ds = forest_choices(&g, a, b, 1_000_000).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let dps = forest_choices(&g, c, d, 1_000_000).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let d = &ds[pick.0 % ds.len()].curves;
    let dp = &dps[pick.1 % dps.len()].curves;
    per_choice_agreement(&g, s, d, dp).map_err(TestCaseError::fail)?;
    Ok(())
}
