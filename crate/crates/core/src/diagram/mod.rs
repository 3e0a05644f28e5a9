//! Generalized Heegaard diagrams as signed rotation systems.
//!
//! A [`SurfaceDiagram`] is a connected combinatorial map: every vertex has a
//! cyclic list of half-edges, every edge a sign recording whether the local
//! orientations at its ends agree. The closed surface is whatever face
//! tracing produces; it is never stored separately.
//!
//! Edges either belong to exactly one curve of the systems `C′` / `C″`, or
//! are *scaffold*: arcs that are not part of `Δ(H)` but keep every face a
//! disk when the curves alone would leave annuli or other non-disk regions
//! (for instance after curves are removed during reduction). Regions of
//! `Σ − Δ(H)` are unions of faces glued across scaffold edges.
//!
//! Half-edge `h` of edge `e` is `2e` (end 0) or `2e + 1` (end 1). A face walk
//! state is a half-edge together with a local orientation `±1`.

mod cut;
mod format;
mod homology;
mod reduce;

pub use cut::{
    admissible_forests, check_tree_formula, classify_system, cut_components, dual_graph,
    CutAnalysis, CutComponent, DualGraph, SystemClass, TreeFormula,
};
pub use format::{parse_hdg, serialize_hdg};
pub use homology::relation_matrix;
pub use reduce::{
    modified_complexity, modified_complexity_reduced, reduce_all, remove_curves, simplify,
    HmResult, ReducedComplexity, Reduction, ReductionAudit,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dsu::{DisjointSets, ParitySets};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum System {
    Prime,
    DoublePrime,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Prime => "prime",
            System::DoublePrime => "double_prime",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    pub name: String,
    pub system: System,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct End {
    pub vertex: usize,
    pub slot: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapEdge {
    pub ends: [End; 2],
    pub sign: i8,
    /// `None` for scaffold edges.
    pub curve: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceDiagram {
    name: String,
    rotation: Vec<Vec<usize>>,
    edges: Vec<MapEdge>,
    curves: Vec<Curve>,
}

/// Result of tracing the faces of a map.
#[derive(Clone, Debug)]
pub struct Faces {
    /// One oriented walk per face, as state indices `2h + (s < 0)`.
    pub walks: Vec<Vec<usize>>,
    state_face: Vec<usize>,
    state_walk: Vec<u8>,
}

impl Faces {
    pub fn count(&self) -> usize {
        self.walks.len()
    }

    /// Face containing the walk state (half-edge `h`, orientation `s`).
    pub fn face_of(&self, h: usize, s: i8) -> usize {
        self.state_face[state(h, s)]
    }

    fn walk_of(&self, h: usize, s: i8) -> u8 {
        self.state_walk[state(h, s)]
    }
}

#[inline]
fn state(h: usize, s: i8) -> usize {
    2 * h + usize::from(s < 0)
}

impl SurfaceDiagram {
    /// Assembles a map from its edges; `rotation[v][slot]` is derived from
    /// the edge ends and must fill `0..deg(v)` exactly once per vertex.
    pub fn new(name: impl Into<String>, vertices: usize, edges: Vec<MapEdge>, curves: Vec<Curve>) -> Result<Self> {
        let mut slots: Vec<Vec<Option<usize>>> = vec![Vec::new(); vertices];
        for (e, edge) in edges.iter().enumerate() {
            if edge.sign != 1 && edge.sign != -1 {
                return Err(Error::InvalidDiagram(format!("edge {} has sign {}", e + 1, edge.sign)));
            }
            if let Some(c) = edge.curve {
                if c >= curves.len() {
                    return Err(Error::InvalidDiagram(format!("edge {} names unknown curve", e + 1)));
                }
            }
            for (k, end) in edge.ends.iter().enumerate() {
                if end.vertex >= vertices {
                    return Err(Error::InvalidDiagram(format!("edge {} ends at missing vertex", e + 1)));
                }
                let row = &mut slots[end.vertex];
                if row.len() <= end.slot {
                    row.resize(end.slot + 1, None);
                }
                if row[end.slot].is_some() {
                    return Err(Error::InvalidDiagram(format!(
                        "slot {} of vertex {} used twice",
                        end.slot,
                        end.vertex + 1
                    )));
                }
                row[end.slot] = Some(2 * e + k);
            }
        }
        let rotation = slots
            .into_iter()
            .enumerate()
            .map(|(v, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(s, h)| {
                        h.ok_or_else(|| Error::InvalidDiagram(format!("slot {s} of vertex {} is empty", v + 1)))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SurfaceDiagram {
            name: name.into(),
            rotation,
            edges,
            curves,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edges(&self) -> &[MapEdge] {
        &self.edges
    }

    pub fn curves(&self) -> &[Curve] {
        &self.curves
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    #[inline]
    pub fn end_of(&self, h: usize) -> End {
        self.edges[h / 2].ends[h % 2]
    }

    pub fn curve_of_half_edge(&self, h: usize) -> Option<usize> {
        self.edges[h / 2].curve
    }

    /// Curve ids of a system, in declaration order.
    pub fn system_curves(&self, system: System) -> Vec<usize> {
        (0..self.curves.len())
            .filter(|&c| self.curves[c].system == system)
            .collect()
    }

    /// Curve half-edges at `v` in rotation order, scaffold skipped.
    pub fn curve_half_edges(&self, v: usize) -> Vec<usize> {
        self.rotation[v]
            .iter()
            .copied()
            .filter(|&h| self.edges[h / 2].curve.is_some())
            .collect()
    }

    /// A singular vertex is a 4-valent crossing of `Δ(H)`.
    pub fn is_singular(&self, v: usize) -> bool {
        self.curve_half_edges(v).len() == 4
    }

    pub fn singular_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.is_singular(v)).collect()
    }

    /// Next walk state after leaving along `h` with orientation `s`.
    #[inline]
    fn step(&self, h: usize, s: i8) -> (usize, i8) {
        let twin = h ^ 1;
        let end = self.end_of(twin);
        let s2 = s * self.edges[h / 2].sign;
        let deg = self.rotation[end.vertex].len();
        let slot = if s2 > 0 { (end.slot + 1) % deg } else { (end.slot + deg - 1) % deg };
        (self.rotation[end.vertex][slot], s2)
    }

    pub fn trace_faces(&self) -> Faces {
        let states = 4 * self.edges.len();
        let mut state_face = vec![usize::MAX; states];
        let mut state_walk = vec![0u8; states];
        let mut walks = Vec::new();
        for start in 0..states {
            if state_face[start] != usize::MAX {
                continue;
            }
            let f = walks.len();
            let mut walk = Vec::new();
            let (mut h, mut s) = (start / 2, if start % 2 == 0 { 1i8 } else { -1 });
            loop {
                let st = state(h, s);
                if st == start && !walk.is_empty() {
                    break;
                }
                debug_assert_eq!(state_face[st], usize::MAX, "face walk revisits a state");
                state_face[st] = f;
                walk.push(st);
                let reverse = state(h ^ 1, -s * self.edges[h / 2].sign);
                state_face[reverse] = f;
                state_walk[reverse] = 1;
                (h, s) = self.step(h, s);
            }
            walks.push(walk);
        }
        Faces {
            walks,
            state_face,
            state_walk,
        }
    }

    pub fn face_count(&self, faces: &Faces) -> usize {
        if self.edges.is_empty() {
            self.vertex_count()
        } else {
            faces.count()
        }
    }

    pub fn euler_char(&self) -> i64 {
        let faces = self.trace_faces();
        self.vertex_count() as i64 - self.edges.len() as i64 + self.face_count(&faces) as i64
    }

    pub fn is_connected(&self) -> bool {
        let mut d = DisjointSets::new(self.vertex_count());
        for e in &self.edges {
            d.union(e.ends[0].vertex, e.ends[1].vertex);
        }
        d.labels().1 <= 1
    }

    /// Whether the faces can be oriented coherently across every edge.
    pub fn is_orientable(&self) -> bool {
        let faces = self.trace_faces();
        self.orientable_across(&faces, |_| true)
    }

    /// Coherent orientation test over the faces glued along edges accepted
    /// by `glue`. Returns false if any glued class is non-orientable.
    pub(crate) fn orientable_across(&self, faces: &Faces, glue: impl Fn(usize) -> bool) -> bool {
        self.orientability_by_face(faces, glue).iter().all(|&ok| ok)
    }

    /// For every face, whether its glued class admits a coherent orientation.
    pub(crate) fn orientability_by_face(&self, faces: &Faces, glue: impl Fn(usize) -> bool) -> Vec<bool> {
        let nf = faces.count();
        let mut parity = ParitySets::new(nf);
        let mut dsu = DisjointSets::new(nf);
        let mut bad = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if !glue(e) {
                continue;
            }
            let h1 = 2 * e;
            let h2 = h1 + 1;
            let x = faces.face_of(h1, 1);
            let y = faces.face_of(h2, edge.sign);
            let p = faces.walk_of(h1, 1) ^ faces.walk_of(h2, edge.sign);
            dsu.union(x, y);
            if !parity.relate(x, y, p) {
                bad.push(x);
            }
        }
        let mut ok = vec![true; nf];
        for x in bad {
            let r = dsu.find(x);
            for (f, slot) in ok.iter_mut().enumerate() {
                if dsu.find(f) == r {
                    *slot = false;
                }
            }
        }
        ok
    }

    /// Walks a curve straight through every vertex, returning its half-edges
    /// in order of departure. `None` if the walk does not close up.
    pub fn curve_walk(&self, curve: usize) -> Option<Vec<usize>> {
        let first = self.edges.iter().position(|e| e.curve == Some(curve))?;
        let start = 2 * first;
        let mut out = Vec::new();
        let mut h = start;
        loop {
            out.push(h);
            if out.len() > 2 * self.edges.len() {
                return None;
            }
            let twin = h ^ 1;
            let v = self.end_of(twin).vertex;
            let around = self.curve_half_edges(v);
            let q = around.iter().position(|&x| x == twin)?;
            h = match around.len() {
                2 => around[1 - q],
                4 => around[(q + 2) % 4],
                _ => return None,
            };
            if h == start {
                return Some(out);
            }
        }
    }

    pub fn validate(&self) -> DiagramReport {
        let mut violations = Vec::new();
        let faces = self.trace_faces();
        let connected = self.is_connected();
        if !connected {
            violations.push("map is disconnected".to_string());
        }
        let mut crossings = 0;
        for v in 0..self.vertex_count() {
            let around = self.curve_half_edges(v);
            let curve = |i: usize| self.edges[around[i] / 2].curve.expect("curve edge");
            match around.len() {
                0 => {}
                2 => {
                    if curve(0) != curve(1) {
                        violations.push(format!("vertex {}: two different curves meet without crossing", v + 1));
                    }
                }
                4 => {
                    let (x, y) = (curve(0), curve(1));
                    if curve(2) != x || curve(3) != y {
                        violations.push(format!("vertex {}: curves touch without crossing transversally", v + 1));
                    } else if x == y {
                        violations.push(format!("vertex {}: curve {} crosses itself", v + 1, self.curves[x].name));
                    } else if self.curves[x].system == self.curves[y].system {
                        violations.push(format!(
                            "vertex {}: curves {} and {} of the same system intersect",
                            v + 1,
                            self.curves[x].name,
                            self.curves[y].name
                        ));
                    } else {
                        crossings += 1;
                    }
                }
                k => violations.push(format!("vertex {}: {k} curve half-edges", v + 1)),
            }
        }
        for (c, curve) in self.curves.iter().enumerate() {
            let total = self.edges.iter().filter(|e| e.curve == Some(c)).count();
            if total == 0 {
                violations.push(format!("curve {} has no edges", curve.name));
                continue;
            }
            match self.curve_walk(c) {
                Some(walk) if walk.len() == total => {
                    let sign: i8 = walk.iter().map(|&h| self.edges[h / 2].sign).product();
                    if sign < 0 {
                        violations.push(format!("curve {} is one-sided", curve.name));
                    }
                }
                _ => violations.push(format!("curve {} is not a single simple closed curve", curve.name)),
            }
        }
        DiagramReport {
            vertices: self.vertex_count(),
            edges: self.edges.len(),
            faces: self.face_count(&faces),
            euler_char: self.vertex_count() as i64 - self.edges.len() as i64 + self.face_count(&faces) as i64,
            orientable: self.orientable_across(&faces, |_| true),
            connected,
            crossings,
            violations,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler_char: i64,
    pub orientable: bool,
    pub connected: bool,
    pub crossings: usize,
    pub violations: Vec<String>,
}

impl DiagramReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A valid diagram whose `C′` system is proper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedHeegaardDiagram {
    diagram: SurfaceDiagram,
}

impl GeneralizedHeegaardDiagram {
    pub fn new(diagram: SurfaceDiagram) -> Result<Self> {
        let report = diagram.validate();
        if !report.is_valid() {
            return Err(Error::InvalidDiagram(report.violations.join("; ")));
        }
        if !classify_system(&diagram, System::Prime).proper {
            return Err(Error::InvalidDiagram("C′ is not proper".into()));
        }
        Ok(GeneralizedHeegaardDiagram { diagram })
    }

    pub fn diagram(&self) -> &SurfaceDiagram {
        &self.diagram
    }

    pub fn into_diagram(self) -> SurfaceDiagram {
        self.diagram
    }
}
