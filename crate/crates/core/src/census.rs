//! Exhaustive small-order census of crystallizations.
//!
//! Every crystallization has a connected `{0,1,2}`-residue that is a
//! 3-coloured graph of a 2-sphere. The census first lists those bases up to
//! colour-preserving isomorphism (orderly generation by breadth-first codes),
//! then tries every perfect matching as colour 3 and keeps the contracted
//! manifold gems, deduplicated by canonical code.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bridge::{first_homology, H1Fingerprint};
use crate::error::{Error, Result};
use crate::gem::{parse_gem, Gem};
use crate::gm::DEFAULT_FOREST_CAP;

pub const MAX_CENSUS_ORDER: usize = 12;
pub const DEFAULT_CENSUS_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub max_order: usize,
    /// Also identify gems differing by a permutation of the colours.
    pub colour_free: bool,
    /// Cap on generated candidates (bases plus coloured completions).
    pub budget: u64,
    /// Attach a first-homology fingerprint to every entry.
    pub fingerprint: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            max_order: 8,
            colour_free: false,
            budget: DEFAULT_CENSUS_BUDGET,
            fingerprint: true,
        }
    }
}

/// One catalogue line: a gem in GEM v1 text with summary data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogueEntry {
    pub name: String,
    pub order: usize,
    pub bipartite: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1: Option<String>,
    pub gem: String,
}

impl CatalogueEntry {
    pub fn from_gem(gem: &Gem, h1: Option<&H1Fingerprint>) -> Self {
        CatalogueEntry {
            name: gem.name().to_string(),
            order: gem.order(),
            bipartite: gem.is_bipartite(),
            h1: h1.map(ToString::to_string),
            gem: gem.to_gem_string(),
        }
    }

    pub fn gem(&self) -> Result<Gem> {
        Ok(parse_gem(&self.gem)?)
    }

    pub fn fingerprint(&self) -> Option<H1Fingerprint> {
        self.h1.as_deref().and_then(|s| s.parse().ok())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalogue {
    pub entries: Vec<CatalogueEntry>,
}

impl Catalogue {
    pub fn to_jsonl(&self) -> String {
        self.entries
            .iter()
            .map(|e| serde_json::to_string(e).expect("entry serializes") + "\n")
            .collect()
    }

    pub fn from_jsonl(text: &str) -> Result<Self> {
        let entries = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                serde_json::from_str(l).map_err(|e| Error::Invalid(format!("catalogue line {}: {e}", i + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalogue { entries })
    }

    pub fn gems(&self) -> Result<Vec<Gem>> {
        self.entries.iter().map(CatalogueEntry::gem).collect()
    }

    /// Entries whose fingerprint equals `h1`.
    pub fn with_fingerprint(&self, h1: &H1Fingerprint) -> Vec<&CatalogueEntry> {
        self.entries
            .iter()
            .filter(|e| e.fingerprint().as_ref() == Some(h1))
            .collect()
    }
}

struct Budget {
    used: AtomicU64,
    cap: u64,
}

impl Budget {
    fn spend(&self, n: u64) -> Result<()> {
        if self.used.fetch_add(n, Ordering::Relaxed) + n > self.cap {
            Err(Error::BudgetExceeded {
                what: "census",
                cap: self.cap,
            })
        } else {
            Ok(())
        }
    }
}

/// Breadth-first code of a 3-coloured graph from `root`.
fn rooted_code3(m: &[Vec<usize>; 3], root: usize) -> Vec<u16> {
    let n = m[0].len();
    let mut label = vec![u16::MAX; n];
    let mut order = vec![root];
    label[root] = 0;
    let mut code = Vec::with_capacity(3 * n);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for c in m {
            let w = c[v];
            if label[w] == u16::MAX {
                label[w] = order.len() as u16;
                order.push(w);
            }
            code.push(label[w]);
        }
    }
    code
}

fn count_cycles(a: &[usize], b: &[usize]) -> usize {
    let mut seen = vec![false; a.len()];
    let mut count = 0;
    for s in 0..a.len() {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut v = s;
        loop {
            seen[v] = true;
            seen[a[v]] = true;
            v = b[a[v]];
            if v == s {
                break;
            }
        }
    }
    count
}

/// Connected 3-coloured graphs on `n` vertices representing the 2-sphere,
/// one per colour-preserving isomorphism class, in canonical labelling.
pub fn sphere_bases(n: usize) -> Vec<[Vec<usize>; 3]> {
    let mut out = Vec::new();
    let mut m = [vec![usize::MAX; n], vec![usize::MAX; n], vec![usize::MAX; n]];
    grow(&mut m, 0, 0, 1, &mut out);
    out.sort_by_cached_key(|b| rooted_code3(b, 0));
    out
}

/// Fills slot `(v, c)` of a breadth-first labelled graph with `created`
/// vertices discovered so far.
fn grow(m: &mut [Vec<usize>; 3], v: usize, c: usize, created: usize, out: &mut Vec<[Vec<usize>; 3]>) {
    let n = m[0].len();
    if v == created {
        // nothing left to explore from the discovered part
        if created == n && m.iter().all(|x| x.iter().all(|&w| w != usize::MAX)) {
            let code = rooted_code3(m, 0);
            let minimal = (1..n).all(|r| rooted_code3(m, r) >= code);
            let faces = count_cycles(&m[0], &m[1]) + count_cycles(&m[0], &m[2]) + count_cycles(&m[1], &m[2]);
            if minimal && faces == n / 2 + 2 {
                out.push(m.clone());
            }
        }
        return;
    }
    let (nv, nc) = if c == 2 { (v + 1, 0) } else { (v, c + 1) };
    if m[c][v] != usize::MAX {
        return grow(m, nv, nc, created, out);
    }
    for u in v + 1..created {
        if m[c][u] == usize::MAX {
            m[c][v] = u;
            m[c][u] = v;
            grow(m, nv, nc, created, out);
            m[c][v] = usize::MAX;
            m[c][u] = usize::MAX;
        }
    }
    if created < n {
        m[c][v] = created;
        m[c][created] = v;
        grow(m, nv, nc, created + 1, out);
        m[c][v] = usize::MAX;
        m[c][created] = usize::MAX;
    }
}

fn perfect_matchings(n: usize, visit: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
    fn rec(m: &mut Vec<usize>, visit: &mut impl FnMut(&[usize]) -> Result<()>) -> Result<()> {
        let Some(v) = m.iter().position(|&w| w == usize::MAX) else {
            return visit(m);
        };
        for u in v + 1..m.len() {
            if m[u] == usize::MAX {
                m[v] = u;
                m[u] = v;
                rec(m, visit)?;
                m[u] = usize::MAX;
            }
        }
        m[v] = usize::MAX;
        Ok(())
    }
    rec(&mut vec![usize::MAX; n], visit)
}

/// Whether the graph on `n` vertices spanned by three matchings is connected.
fn spans(a: &[usize], b: &[usize], c: &[usize]) -> bool {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for w in [a[v], b[v], c[v]] {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == n
}

fn is_crystallization(base: &[Vec<usize>; 3], m3: &[usize]) -> Option<Gem> {
    // the {0,1,2}-residue is the connected base; the other three must be too
    let contracted =
        spans(&base[1], &base[2], m3) && spans(&base[0], &base[2], m3) && spans(&base[0], &base[1], m3);
    if !contracted {
        return None;
    }
    let gem = Gem::new("", [base[0].clone(), base[1].clone(), base[2].clone(), m3.to_vec()]).ok()?;
    gem.is_manifold().then_some(gem)
}

/// Crystallizations of one even order, canonically labelled and sorted.
pub fn crystallizations(order: usize, colour_free: bool, budget: u64) -> Result<Vec<Gem>> {
    if order == 0 || order % 2 == 1 || order > MAX_CENSUS_ORDER {
        return Err(Error::CensusOrder(order));
    }
    let budget = Budget {
        used: AtomicU64::new(0),
        cap: budget,
    };
    let bases = sphere_bases(order);
    budget.spend(bases.len() as u64)?;
    let found: Vec<Vec<(Vec<u16>, Gem)>> = bases
        .par_iter()
        .map(|base| {
            let mut local = Vec::new();
            let mut spent = 0u64;
            perfect_matchings(order, &mut |m3| {
                spent += 1;
                if spent.is_multiple_of(4096) {
                    budget.spend(4096)?;
                }
                if let Some(g) = is_crystallization(base, m3) {
                    local.push((g.canonical_code(colour_free), g));
                }
                Ok(())
            })?;
            budget.spend(spent % 4096)?;
            Ok(local)
        })
        .collect::<Result<_>>()?;
    let mut all: Vec<(Vec<u16>, Gem)> = found.into_iter().flatten().collect();
    all.sort_by(|a, b| a.0.cmp(&b.0));
    all.dedup_by(|a, b| a.0 == b.0);
    Ok(all
        .into_iter()
        .enumerate()
        .map(|(k, (_, g))| g.canonical_form().with_name(format!("cr{order}_{}", k + 1)))
        .collect())
}

pub fn census(opts: &CensusOptions) -> Result<Catalogue> {
    if opts.max_order < 2 || opts.max_order % 2 == 1 || opts.max_order > MAX_CENSUS_ORDER {
        return Err(Error::CensusOrder(opts.max_order));
    }
    let mut entries = Vec::new();
    let mut remaining = opts.budget;
    for order in (2..=opts.max_order).step_by(2) {
        let gems = crystallizations(order, opts.colour_free, remaining)?;
        remaining = remaining.saturating_sub(gems.len() as u64);
        let part = gems
            .par_iter()
            .map(|g| {
                let h1 = if opts.fingerprint {
                    Some(first_homology(g, DEFAULT_FOREST_CAP)?)
                } else {
                    None
                };
                Ok(CatalogueEntry::from_gem(g, h1.as_ref()))
            })
            .collect::<Result<Vec<_>>>()?;
        entries.extend(part);
    }
    Ok(Catalogue { entries })
}
