//! Regular embeddings of gems and the regions cut out by curve families.

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::gem::{Colour, ColourSet, Gem, ResiduePartition};

/// The three ways of splitting `{0,1,2,3}` into two pairs, indexed 0..3.
pub const SPLITTINGS: [((Colour, Colour), (Colour, Colour)); 3] =
    [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];

/// Index of the splitting that contains the pair `{a,b}` on either side.
pub fn splitting_of(a: Colour, b: Colour) -> Option<usize> {
    let key = ColourSet::pair(a, b);
    SPLITTINGS
        .iter()
        .position(|&((x, y), (z, w))| key == ColourSet::pair(x, y) || key == ColourSet::pair(z, w))
}

/// Dense index of the gem edge of colour `c` at vertex `v`.
#[inline]
pub fn edge_index(gem: &Gem, v: usize, c: Colour) -> usize {
    let w = gem.neighbour(v, c);
    c as usize * gem.order() + v.min(w)
}

#[derive(Clone, Debug)]
pub struct Face {
    pub colours: (Colour, Colour),
    /// Vertices in cyclic order.
    pub vertices: Vec<usize>,
    /// Boundary edges as dense edge indices.
    pub edges: Vec<usize>,
}

/// The gem `Γ` drawn on `F_{α,β}` with faces the bicoloured residues of
/// `{α,α′}`, `{α′,β}`, `{β,β′}`, `{β′,α}`.
#[derive(Clone, Debug)]
pub struct RegularEmbedding {
    pub splitting: usize,
    /// Cyclic colour order `ε = (α, α′, β, β′)`.
    pub epsilon: [Colour; 4],
    pub faces: Vec<Face>,
    /// The two faces on either side of each edge, by dense edge index.
    pub edge_faces: Vec<[usize; 2]>,
    pub euler_char: i64,
    pub orientable: bool,
    /// `(2 − χ)/2`; orientable genus, or half the crosscap number.
    pub rho: i64,
    /// `{α,β}`-residues: the x-family of curves.
    pub ab: ResiduePartition,
    /// `{α′,β′}`-residues: the y-family of curves.
    pub cd: ResiduePartition,
    vertices: usize,
}

impl RegularEmbedding {
    pub fn new(gem: &Gem, splitting: usize) -> Self {
        let ((a, b), (c, d)) = SPLITTINGS[splitting];
        let epsilon = [a, c, b, d];
        let n = gem.order();
        let mut faces = Vec::new();
        let mut slots: Vec<Vec<usize>> = vec![Vec::with_capacity(2); 4 * n];
        for k in 0..4 {
            let (x, y) = (epsilon[k], epsilon[(k + 1) % 4]);
            let part = gem.residues(ColourSet::pair(x, y)).expect("pair");
            for class in part.classes() {
                let id = faces.len();
                let mut edges = Vec::with_capacity(class.len());
                // class alternates the smaller colour first
                let (lo, hi) = (x.min(y), x.max(y));
                for (i, &v) in class.iter().enumerate() {
                    let colour = if i % 2 == 0 { lo } else { hi };
                    let e = edge_index(gem, v, colour);
                    edges.push(e);
                    slots[e].push(id);
                }
                faces.push(Face {
                    colours: (lo, hi),
                    vertices: class.clone(),
                    edges,
                });
            }
        }
        let edge_faces = slots
            .into_iter()
            .enumerate()
            .map(|(e, s)| {
                // unused indices belong to the larger endpoint of an edge
                match s[..] {
                    [f, g] => [f, g],
                    [] => [usize::MAX, usize::MAX],
                    _ => panic!("edge {e} lies on {} faces", s.len()),
                }
            })
            .collect();
        let euler_char = n as i64 - gem.edge_count() as i64 + faces.len() as i64;
        RegularEmbedding {
            splitting,
            epsilon,
            euler_char,
            orientable: gem.is_bipartite(),
            rho: (2 - euler_char) / 2,
            ab: gem.residues(ColourSet::pair(a, b)).expect("pair"),
            cd: gem.residues(ColourSet::pair(c, d)).expect("pair"),
            faces,
            edge_faces,
            vertices: n,
        }
    }

    pub fn pair(&self) -> (Colour, Colour) {
        (self.epsilon[0], self.epsilon[2])
    }

    pub fn complement(&self) -> (Colour, Colour) {
        (self.epsilon[1], self.epsilon[3])
    }

    /// The two curve families as cyclically ordered vertex lists.
    pub fn curve_families(&self) -> (&[Vec<usize>], &[Vec<usize>]) {
        (self.ab.classes(), self.cd.classes())
    }

    /// `ρ` from residue counts: `g_{α,β} − g_{α̂′} − g_{β̂′} + 1`.
    pub fn rho_from_residues(gem: &Gem, splitting: usize) -> i64 {
        let ((a, b), (c, d)) = SPLITTINGS[splitting];
        gem.g_pair(a, b) as i64 - gem.g_hat(c) as i64 - gem.g_hat(d) as i64 + 1
    }

    /// Regions of `F − (x ∪ y)` where the curves flagged in `kept_ab` and
    /// `kept_cd` are *not* part of `x ∪ y`. Two faces lie in one region iff
    /// they are joined through edges of kept curves.
    pub fn regions(&self, gem: &Gem, kept_ab: &[bool], kept_cd: &[bool]) -> Vec<Region> {
        let mut dsu = DisjointSets::new(self.faces.len());
        let [a, c, b, d] = self.epsilon;
        for v in 0..self.vertices {
            for colour in [a, b, c, d] {
                let w = gem.neighbour(v, colour);
                if v > w {
                    continue;
                }
                let kept = if colour == a || colour == b {
                    kept_ab[self.ab.class_of(v)]
                } else {
                    kept_cd[self.cd.class_of(v)]
                };
                if kept {
                    let [f, g] = self.edge_faces[edge_index(gem, v, colour)];
                    dsu.union(f, g);
                }
            }
        }
        let (labels, count) = dsu.labels();
        let mut regions: Vec<Region> = (0..count)
            .map(|_| Region {
                faces: Vec::new(),
                vertex_closure: Vec::new(),
            })
            .collect();
        let mut seen = vec![usize::MAX; self.vertices];
        for (f, &r) in labels.iter().enumerate() {
            regions[r].faces.push(f);
            for &v in &self.faces[f].vertices {
                if seen[v] != r {
                    seen[v] = r;
                    regions[r].vertex_closure.push(v);
                }
            }
        }
        for r in &mut regions {
            r.vertex_closure.sort_unstable();
            r.vertex_closure.dedup();
        }
        regions
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub faces: Vec<usize>,
    pub vertex_closure: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_gem_is_a_sphere() {
        let g = Gem::standard_sphere();
        for s in 0..3 {
            let emb = RegularEmbedding::new(&g, s);
            assert_eq!(emb.faces.len(), 4);
            assert_eq!(emb.euler_char, 2);
            assert_eq!(emb.rho, 0);
            assert!(emb.orientable);
            let (x, y) = emb.curve_families();
            assert_eq!(x, &[vec![0, 1]]);
            assert_eq!(y, &[vec![0, 1]]);
        }
    }

    #[test]
    fn keeping_everything_gives_one_region() {
        let g = Gem::standard_sphere();
        let emb = RegularEmbedding::new(&g, 0);
        let regions = emb.regions(&g, &[true], &[true]);
        assert_eq!(regions.len(), 1);
        assert_eq!(regions[0].faces, vec![0, 1, 2, 3]);
        assert_eq!(regions[0].vertex_closure, vec![0, 1]);
    }

    #[test]
    fn cutting_both_curves_on_the_order_two_gem() {
        // Two circles crossing twice on the sphere leave four disks.
        let g = Gem::standard_sphere();
        let emb = RegularEmbedding::new(&g, 0);
        let regions = emb.regions(&g, &[false], &[false]);
        assert_eq!(regions.len(), 4);
        // One circle alone leaves two hemispheres.
        assert_eq!(emb.regions(&g, &[true], &[false]).len(), 2);
        assert_eq!(emb.regions(&g, &[false], &[true]).len(), 2);
    }

    #[test]
    fn every_edge_sees_two_faces() {
        let g = Gem::standard_sphere().insert_dipole(0, 2).insert_dipole(1, 0);
        for s in 0..3 {
            let emb = RegularEmbedding::new(&g, s);
            let total: usize = emb.faces.iter().map(|f| f.edges.len()).sum();
            assert_eq!(total, 2 * g.edge_count());
            assert_eq!(emb.euler_char, 2 - 2 * emb.rho);
            assert_eq!(emb.rho, RegularEmbedding::rho_from_residues(&g, s));
        }
    }

    #[test]
    fn splitting_lookup() {
        assert_eq!(splitting_of(2, 3), Some(0));
        assert_eq!(splitting_of(3, 1), Some(1));
        assert_eq!(splitting_of(0, 3), Some(2));
    }
}
