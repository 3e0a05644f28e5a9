//! Cutting a surface along one curve system, and the graph dual to it.

use serde::{Deserialize, Serialize};

use super::{SurfaceDiagram, System};
use crate::dsu::DisjointSets;
use crate::error::Result;
use crate::forest::Multigraph;

/// A connected piece of `Σ` cut along a curve system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutComponent {
    pub faces: Vec<usize>,
    /// χ of the piece with its boundary circles left open.
    pub euler_char: i64,
    pub boundary_circles: usize,
    pub capped_euler_char: i64,
    pub orientable: bool,
}

impl CutComponent {
    pub fn is_planar(&self) -> bool {
        self.capped_euler_char == 2
    }
}

#[derive(Clone, Debug)]
pub struct CutAnalysis {
    pub system: System,
    /// Curve ids of the system, in declaration order.
    pub curves: Vec<usize>,
    pub components: Vec<CutComponent>,
    /// Components on the two sides of each curve of `curves`.
    pub sides: Vec<[usize; 2]>,
}

pub fn cut_components(d: &SurfaceDiagram, system: System) -> CutAnalysis {
    let curves = d.system_curves(system);
    if d.edges().is_empty() {
        return CutAnalysis {
            system,
            curves,
            components: vec![CutComponent {
                faces: Vec::new(),
                euler_char: d.vertex_count() as i64,
                boundary_circles: 0,
                capped_euler_char: 2,
                orientable: true,
            }],
            sides: Vec::new(),
        };
    }
    let in_system = |e: usize| d.edges()[e].curve.is_some_and(|c| d.curves()[c].system == system);
    let faces = d.trace_faces();
    let mut dsu = DisjointSets::new(faces.count());
    for e in 0..d.edges().len() {
        if !in_system(e) {
            dsu.union(faces.face_of(2 * e, 1), faces.face_of(2 * e, -1));
        }
    }
    let (label, count) = dsu.labels();
    let mut v_k = vec![0i64; count];
    let mut e_k = vec![0i64; count];
    let mut f_k = vec![0i64; count];
    let mut members = vec![Vec::new(); count];
    for (f, &k) in label.iter().enumerate() {
        f_k[k] += 1;
        members[k].push(f);
    }
    for v in 0..d.vertex_count() {
        let rot = d.rotation(v);
        if rot.iter().any(|&h| in_system(h / 2)) {
            continue;
        }
        if let Some(&h) = rot.first() {
            v_k[label[faces.face_of(h, 1)]] += 1;
        }
    }
    for e in 0..d.edges().len() {
        if !in_system(e) {
            e_k[label[faces.face_of(2 * e, 1)]] += 1;
        }
    }
    let sides: Vec<[usize; 2]> = curves
        .iter()
        .map(|&c| {
            let e = d.edges().iter().position(|x| x.curve == Some(c)).expect("curve has edges");
            [label[faces.face_of(2 * e, 1)], label[faces.face_of(2 * e, -1)]]
        })
        .collect();
    let mut boundary = vec![0usize; count];
    for s in &sides {
        boundary[s[0]] += 1;
        boundary[s[1]] += 1;
    }
    let face_ok = d.orientability_by_face(&faces, |e| !in_system(e));
    let components = (0..count)
        .map(|k| {
            let euler_char = v_k[k] - e_k[k] + f_k[k];
            CutComponent {
                orientable: members[k].iter().all(|&f| face_ok[f]),
                faces: std::mem::take(&mut members[k]),
                euler_char,
                boundary_circles: boundary[k],
                capped_euler_char: euler_char + boundary[k] as i64,
            }
        })
        .collect();
    CutAnalysis {
        system,
        curves,
        components,
        sides,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemClass {
    pub proper: bool,
    pub reduced: bool,
}

pub fn classify_system(d: &SurfaceDiagram, system: System) -> SystemClass {
    classify(&cut_components(d, system))
}

fn classify(cut: &CutAnalysis) -> SystemClass {
    let planar = cut.components.iter().filter(|c| c.is_planar()).count();
    SystemClass {
        proper: planar == cut.components.len(),
        reduced: cut.components.len() == 1 || planar == 0,
    }
}

/// `G(C)`: one node per cut component, one edge per curve.
#[derive(Clone, Debug)]
pub struct DualGraph {
    pub system: System,
    pub nodes: Vec<CutComponent>,
    /// Endpoints of the edge dual to `curves[i]`.
    pub edges: Vec<(usize, usize)>,
    pub curves: Vec<usize>,
}

impl DualGraph {
    /// Nodes whose capped surface is not a sphere.
    pub fn positive_nodes(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&k| !self.nodes[k].is_planar()).collect()
    }

    pub fn class(&self) -> SystemClass {
        let planar = self.nodes.iter().filter(|c| c.is_planar()).count();
        SystemClass {
            proper: planar == self.nodes.len(),
            reduced: self.nodes.len() == 1 || planar == 0,
        }
    }
}

pub fn dual_graph(d: &SurfaceDiagram, system: System) -> DualGraph {
    let cut = cut_components(d, system);
    DualGraph {
        system,
        edges: cut.sides.iter().map(|s| (s[0], s[1])).collect(),
        curves: cut.curves,
        nodes: cut.components,
    }
}

/// Forests `T` of `G(C)` spanning every node with each tree holding exactly
/// one positive node (or a spanning tree if there are none). These are the
/// spanning trees of `G(C)` with all positive nodes identified to one.
/// Each forest is a sorted list of indices into `dg.edges`.
pub fn admissible_forests(dg: &DualGraph, cap: u64) -> Result<Vec<Vec<usize>>> {
    let positive = dg.positive_nodes();
    let mut map: Vec<usize> = (0..dg.nodes.len()).collect();
    if let Some(&root) = positive.first() {
        for &p in &positive {
            map[p] = root;
        }
    }
    let graph = Multigraph {
        nodes: dg.nodes.len(),
        edges: dg.edges.iter().map(|&(a, b)| (map[a], map[b])).collect(),
    };
    let mut forests = graph.maximal_forests(cap)?;
    forests.sort();
    Ok(forests)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum TreeFormula {
    Holds,
    Fails { edges: i64, predicted: i64 },
    /// Some genus involved is not an integer (odd crosscap number).
    ConventionMismatch,
}

/// Checks `|E(T)| = |C| − g − max(0, h − 1) + Σ g_j`, where `h` counts the
/// positive nodes and `g_j` are their genera, from the surface χ.
pub fn check_tree_formula(dg: &DualGraph, forest: &[usize], surface_euler_char: i64) -> TreeFormula {
    let half = |chi: i64| ((2 - chi) % 2 == 0).then_some((2 - chi) / 2);
    let Some(g) = half(surface_euler_char) else {
        return TreeFormula::ConventionMismatch;
    };
    let positive = dg.positive_nodes();
    let mut sum = 0;
    for &k in &positive {
        match half(dg.nodes[k].capped_euler_char) {
            Some(gj) => sum += gj,
            None => return TreeFormula::ConventionMismatch,
        }
    }
    let h = positive.len() as i64;
    let predicted = dg.curves.len() as i64 - g - (h - 1).max(0) + sum;
    let edges = forest.len() as i64;
    if edges == predicted {
        TreeFormula::Holds
    } else {
        TreeFormula::Fails { edges, predicted }
    }
}
