//! Maximal spanning forests of small multigraphs.

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

/// An undirected multigraph on `0..nodes`; loops and parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn component_count(&self) -> usize {
        let mut d = DisjointSets::new(self.nodes);
        for &(a, b) in &self.edges {
            d.union(a, b);
        }
        d.labels().1
    }

    /// Enumerates every maximal spanning forest (one spanning tree per
    /// component) as a sorted list of edge indices, by contraction/deletion:
    /// each edge is either contracted into the forest or deleted, and a
    /// deletion is only explored when the edge is not a bridge of what remains.
    pub fn maximal_forests(&self, cap: u64) -> Result<Vec<Vec<usize>>> {
        let target = self.component_count();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        let dsu = DisjointSets::new(self.nodes);
        self.recurse(0, dsu, &mut chosen, &mut out, target, cap)?;
        Ok(out)
    }

    fn recurse(
        &self,
        i: usize,
        dsu: DisjointSets,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        target: usize,
        cap: u64,
    ) -> Result<()> {
        if i == self.edges.len() {
            out.push(chosen.clone());
            if out.len() as u64 > cap {
                return Err(Error::BudgetExceeded { what: "forest", cap });
            }
            return Ok(());
        }
        let (a, b) = self.edges[i];
        let mut contracted = dsu.clone();
        if contracted.union(a, b) {
            chosen.push(i);
            self.recurse(i + 1, contracted, chosen, out, target, cap)?;
            chosen.pop();
            if !self.still_spans(i + 1, &dsu, target) {
                return Ok(());
            }
        }
        self.recurse(i + 1, dsu, chosen, out, target, cap)
    }

    /// Whether the current forest plus edges `from..` still reaches `target` components.
    fn still_spans(&self, from: usize, dsu: &DisjointSets, target: usize) -> bool {
        let mut d = dsu.clone();
        for &(a, b) in &self.edges[from..] {
            d.union(a, b);
        }
        d.labels().1 == target
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: all edge subsets of size `nodes - components` that are acyclic.
    fn brute(g: &Multigraph) -> Vec<Vec<usize>> {
        let need = g.nodes - g.component_count();
        let m = g.edges.len();
        let mut out = Vec::new();
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != need {
                continue;
            }
            let mut d = DisjointSets::new(g.nodes);
            let ok = (0..m)
                .filter(|i| mask & (1 << i) != 0)
                .all(|i| d.union(g.edges[i].0, g.edges[i].1));
            if ok {
                out.push((0..m).filter(|i| mask & (1 << i) != 0).collect());
            }
        }
        out.sort();
        out
    }

    #[test]
    fn two_nodes_parallel_edges() {
        let g = Multigraph {
            nodes: 2,
            edges: vec![(0, 1), (1, 0), (0, 1)],
        };
        assert_eq!(g.maximal_forests(100).unwrap(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn loops_never_enter_a_forest() {
        let g = Multigraph {
            nodes: 1,
            edges: vec![(0, 0), (0, 0)],
        };
        assert_eq!(g.maximal_forests(100).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn k4_has_sixteen_trees() {
        let mut edges = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                edges.push((a, b));
            }
        }
        let g = Multigraph { nodes: 4, edges };
        assert_eq!(g.maximal_forests(100).unwrap().len(), 16);
    }

    #[test]
    fn matches_brute_force_on_assorted_graphs() {
        let graphs = [
            Multigraph { nodes: 4, edges: vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 3), (0, 1)] },
            Multigraph { nodes: 5, edges: vec![(0, 1), (1, 0), (2, 3), (3, 4), (4, 2), (2, 4)] },
            Multigraph { nodes: 3, edges: vec![] },
        ];
        for g in graphs {
            let mut got = g.maximal_forests(10_000).unwrap();
            got.sort();
            assert_eq!(got, brute(&g));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = Multigraph {
            nodes: 2,
            edges: vec![(0, 1); 5],
        };
        assert!(matches!(g.maximal_forests(3), Err(Error::BudgetExceeded { .. })));
    }
}
