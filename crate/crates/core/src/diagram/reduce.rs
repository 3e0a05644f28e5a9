//! Reduction of curve systems and modified Heegaard complexity.
//!
//! Removing a curve turns its edges into scaffold. The map is then
//! simplified: scaffold edges between distinct faces are erased, pendant
//! scaffold edges are pruned, and 2-valent vertices whose two edges carry
//! the same label are smoothed away. None of these moves changes the surface
//! or the regions of `Σ − Δ(H)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cut::{admissible_forests, check_tree_formula, dual_graph, DualGraph, TreeFormula};
use super::{Curve, End, MapEdge, SurfaceDiagram, System};
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

/// Editable copy of a map: rotations hold half-edge ids `2e + end`.
struct Draft {
    rotation: Vec<Vec<usize>>,
    sign: Vec<i8>,
    curve: Vec<Option<usize>>,
    alive: Vec<bool>,
}

impl Draft {
    fn of(d: &SurfaceDiagram) -> Self {
        Draft {
            rotation: (0..d.vertex_count()).map(|v| d.rotation(v).to_vec()).collect(),
            sign: d.edges().iter().map(|e| e.sign).collect(),
            curve: d.edges().iter().map(|e| e.curve).collect(),
            alive: vec![true; d.edges().len()],
        }
    }

    fn delete_edge(&mut self, e: usize) {
        self.alive[e] = false;
        for rot in &mut self.rotation {
            rot.retain(|&h| h / 2 != e);
        }
    }

    fn prune_pendants(&mut self) -> bool {
        let mut changed = false;
        loop {
            let pendant = (0..self.rotation.len())
                .find(|&v| self.rotation[v].len() == 1 && self.curve[self.rotation[v][0] / 2].is_none());
            match pendant {
                Some(v) => {
                    self.delete_edge(self.rotation[v][0] / 2);
                    changed = true;
                }
                None => return changed,
            }
        }
    }

    fn smooth(&mut self) -> bool {
        let mut changed = false;
        for v in 0..self.rotation.len() {
            let [h1, h2] = self.rotation[v][..] else { continue };
            let (e1, e2) = (h1 / 2, h2 / 2);
            if e1 == e2 || self.curve[e1] != self.curve[e2] {
                continue;
            }
            let e = self.sign.len();
            self.sign.push(self.sign[e1] * self.sign[e2]);
            self.curve.push(self.curve[e1]);
            self.alive.push(true);
            let (f1, f2) = (h1 ^ 1, h2 ^ 1);
            for rot in &mut self.rotation {
                for h in rot.iter_mut() {
                    if *h == f1 {
                        *h = 2 * e;
                    } else if *h == f2 {
                        *h = 2 * e + 1;
                    }
                }
            }
            self.rotation[v].clear();
            self.alive[e1] = false;
            self.alive[e2] = false;
            changed = true;
        }
        changed
    }

    /// Compacts vertices, edges and curves. Vertices left without edges are
    /// dropped unless that would empty the map.
    fn build(self, name: &str, curves: &[Curve]) -> SurfaceDiagram {
        let mut edge_id = vec![usize::MAX; self.alive.len()];
        let mut next = 0;
        for (e, &a) in self.alive.iter().enumerate() {
            if a {
                edge_id[e] = next;
                next += 1;
            }
        }
        let mut used = vec![false; curves.len()];
        for (e, &a) in self.alive.iter().enumerate() {
            if let (true, Some(c)) = (a, self.curve[e]) {
                used[c] = true;
            }
        }
        let order: Vec<usize> = (0..curves.len()).filter(|&c| used[c]).collect();
        let mut curve_id = vec![usize::MAX; curves.len()];
        for (i, &c) in order.iter().enumerate() {
            curve_id[c] = i;
        }
        let placeholder = End { vertex: 0, slot: 0 };
        let mut edges: Vec<MapEdge> = (0..self.alive.len())
            .filter(|&e| self.alive[e])
            .map(|e| MapEdge {
                ends: [placeholder; 2],
                sign: self.sign[e],
                curve: self.curve[e].map(|c| curve_id[c]),
            })
            .collect();
        let mut vertices = 0;
        for rot in &self.rotation {
            if rot.is_empty() {
                continue;
            }
            for (slot, &h) in rot.iter().enumerate() {
                edges[edge_id[h / 2]].ends[h % 2] = End { vertex: vertices, slot };
            }
            vertices += 1;
        }
        let curves = order.iter().map(|&c| curves[c].clone()).collect();
        SurfaceDiagram::new(name, vertices.max(1), edges, curves).expect("rebuilt map is consistent")
    }
}

/// Erases redundant scaffold and smooths 2-valent vertices until stable.
pub fn simplify(d: &SurfaceDiagram) -> SurfaceDiagram {
    let mut current = d.clone();
    loop {
        let faces = current.trace_faces();
        let mut dsu = DisjointSets::new(faces.count());
        let mut draft = Draft::of(&current);
        let mut changed = false;
        for (e, edge) in current.edges().iter().enumerate() {
            if edge.curve.is_some() {
                continue;
            }
            if dsu.union(faces.face_of(2 * e, 1), faces.face_of(2 * e, -1)) {
                draft.delete_edge(e);
                changed = true;
            }
        }
        changed |= draft.prune_pendants();
        changed |= draft.smooth();
        if !changed {
            return current;
        }
        current = draft.build(current.name(), current.curves());
    }
}

/// Turns the given curves into scaffold and simplifies.
pub fn remove_curves(d: &SurfaceDiagram, curves: &[usize]) -> SurfaceDiagram {
    if curves.is_empty() {
        return d.clone();
    }
    let mut draft = Draft::of(d);
    for c in draft.curve.iter_mut() {
        if c.is_some_and(|x| curves.contains(&x)) {
            *c = None;
        }
    }
    simplify(&draft.build(d.name(), d.curves()))
}

/// One element of `Rd(H)` with its provenance.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub diagram: SurfaceDiagram,
    /// Index of the admissible forest used for each system.
    pub forest_indices: (usize, usize),
    pub removed_prime: Vec<String>,
    pub removed_double_prime: Vec<String>,
}

/// Consistency checks gathered while reducing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionAudit {
    pub forests_checked: usize,
    pub tree_formula_failures: usize,
    pub convention_mismatches: usize,
    /// Proper reduced systems whose size differs from the genus.
    pub curve_count_failures: usize,
    /// Reductions where some system is still not reduced.
    pub unreduced_outputs: usize,
    /// Reductions whose simplification changed χ or orientability.
    pub surface_changes: usize,
}

impl ReductionAudit {
    /// True when no check failed. Convention mismatches are not failures.
    pub fn is_clean(&self) -> bool {
        self.tree_formula_failures == 0
            && self.curve_count_failures == 0
            && self.unreduced_outputs == 0
            && self.surface_changes == 0
    }

    fn merge(&mut self, other: &ReductionAudit) {
        self.forests_checked += other.forests_checked;
        self.tree_formula_failures += other.tree_formula_failures;
        self.convention_mismatches += other.convention_mismatches;
        self.curve_count_failures += other.curve_count_failures;
        self.unreduced_outputs += other.unreduced_outputs;
        self.surface_changes += other.surface_changes;
    }
}

fn audit_forests(dg: &DualGraph, forests: &[Vec<usize>], chi: i64, audit: &mut ReductionAudit) {
    for f in forests {
        audit.forests_checked += 1;
        match check_tree_formula(dg, f, chi) {
            TreeFormula::Holds => {}
            TreeFormula::Fails { .. } => audit.tree_formula_failures += 1,
            TreeFormula::ConventionMismatch => audit.convention_mismatches += 1,
        }
    }
}

fn audit_output(d: &SurfaceDiagram, chi: i64, orientable: bool, audit: &mut ReductionAudit) {
    if d.euler_char() != chi || d.is_orientable() != orientable {
        audit.surface_changes += 1;
    }
    for system in [System::Prime, System::DoublePrime] {
        let dg = dual_graph(d, system);
        let class = dg.class();
        if !class.reduced {
            audit.unreduced_outputs += 1;
        }
        if class.proper && class.reduced && 2 * dg.curves.len() as i64 != 2 - chi {
            audit.curve_count_failures += 1;
        }
    }
}

/// `Rd(H)`: one reduction per pair of admissible forests, ordered by forest
/// indices (`C′` major).
pub fn reduce_all(d: &SurfaceDiagram, forest_cap: u64) -> Result<(Vec<Reduction>, ReductionAudit)> {
    let chi = d.euler_char();
    let orientable = d.is_orientable();
    let mut audit = ReductionAudit::default();
    let dg1 = dual_graph(d, System::Prime);
    let dg2 = dual_graph(d, System::DoublePrime);
    let t1 = admissible_forests(&dg1, forest_cap)?;
    let t2 = admissible_forests(&dg2, forest_cap)?;
    audit_forests(&dg1, &t1, chi, &mut audit);
    audit_forests(&dg2, &t2, chi, &mut audit);
    let total = t1.len() as u64 * t2.len() as u64;
    if total > forest_cap {
        return Err(Error::BudgetExceeded {
            what: "reduction",
            cap: forest_cap,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..t1.len())
        .flat_map(|i| (0..t2.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<(Reduction, ReductionAudit)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut removed: Vec<usize> = t1[i].iter().map(|&k| dg1.curves[k]).collect();
            removed.extend(t2[j].iter().map(|&k| dg2.curves[k]));
            let names = |forest: &[usize], dg: &DualGraph| -> Vec<String> {
                forest.iter().map(|&k| d.curves()[dg.curves[k]].name.clone()).collect()
            };
            let diagram = remove_curves(d, &removed);
            let mut local = ReductionAudit::default();
            audit_output(&diagram, chi, orientable, &mut local);
            (
                Reduction {
                    diagram,
                    forest_indices: (i, j),
                    removed_prime: names(&t1[i], &dg1),
                    removed_double_prime: names(&t2[j], &dg2),
                },
                local,
            )
        })
        .collect();
    let mut out = Vec::with_capacity(results.len());
    for (r, a) in results {
        audit.merge(&a);
        out.push(r);
    }
    Ok((out, audit))
}

/// `c̃(H′) = c(H′) − max n(R)` for a diagram with both systems reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedComplexity {
    /// `c(H′)`: singular vertices.
    pub crossings: usize,
    /// `n(R)` of the first region attaining the maximum.
    pub region_crossings: usize,
    /// Faces of that region.
    pub region_faces: Vec<usize>,
    pub regions: usize,
    pub value: usize,
}

/// Regions of `Σ − Δ(H)` as face classes, and the number of singular
/// vertices on each region's closure.
pub(crate) fn region_counts(d: &SurfaceDiagram) -> (Vec<Vec<usize>>, Vec<usize>) {
    let faces = d.trace_faces();
    if faces.count() == 0 {
        return (vec![Vec::new()], vec![0]);
    }
    let mut dsu = DisjointSets::new(faces.count());
    for (e, edge) in d.edges().iter().enumerate() {
        if edge.curve.is_none() {
            dsu.union(faces.face_of(2 * e, 1), faces.face_of(2 * e, -1));
        }
    }
    let (label, count) = dsu.labels();
    let mut members = vec![Vec::new(); count];
    for (f, &r) in label.iter().enumerate() {
        members[r].push(f);
    }
    let mut n = vec![0; count];
    for v in d.singular_vertices() {
        let mut touched: Vec<usize> = d
            .rotation(v)
            .iter()
            .flat_map(|&h| [faces.face_of(h, 1), faces.face_of(h, -1)])
            .map(|f| label[f])
            .collect();
        touched.sort_unstable();
        touched.dedup();
        for r in touched {
            n[r] += 1;
        }
    }
    (members, n)
}

pub fn modified_complexity_reduced(d: &SurfaceDiagram) -> Result<ReducedComplexity> {
    for system in [System::Prime, System::DoublePrime] {
        if !dual_graph(d, system).class().reduced {
            return Err(Error::NotReduced);
        }
    }
    let crossings = d.singular_vertices().len();
    let (members, n) = region_counts(d);
    let best = (0..n.len()).fold(0, |b, r| if n[r] > n[b] { r } else { b });
    Ok(ReducedComplexity {
        crossings,
        region_crossings: n[best],
        region_faces: members[best].clone(),
        regions: n.len(),
        value: crossings - n[best],
    })
}

/// `c̃(H) = min c̃(H′)` over `Rd(H)`, with the first minimizing reduction.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HmResult {
    pub value: usize,
    pub reductions: usize,
    pub best: usize,
    pub removed_prime: Vec<String>,
    pub removed_double_prime: Vec<String>,
    pub witness: ReducedComplexity,
    pub audit: ReductionAudit,
}

pub fn modified_complexity(d: &SurfaceDiagram, forest_cap: u64) -> Result<HmResult> {
    let (reductions, audit) = reduce_all(d, forest_cap)?;
    let values = reductions
        .par_iter()
        .map(|r| modified_complexity_reduced(&r.diagram))
        .collect::<Result<Vec<_>>>()?;
    let best = (0..values.len())
        .reduce(|b, i| if values[i].value < values[b].value { i } else { b })
        .ok_or_else(|| Error::Invalid("no reductions".into()))?;
    let r = &reductions[best];
    Ok(HmResult {
        value: values[best].value,
        reductions: reductions.len(),
        best,
        removed_prime: r.removed_prime.clone(),
        removed_double_prime: r.removed_double_prime.clone(),
        witness: values[best].clone(),
        audit,
    })
}
