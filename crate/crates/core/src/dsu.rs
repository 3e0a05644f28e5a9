/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(len: usize) -> Self {
        DisjointSets {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    /// Merges the sets of `i` and `j`; returns false when they were already one set.
    pub fn union(&mut self, i: usize, j: usize) -> bool {
        let (mut a, mut b) = (self.find(i), self.find(j));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    /// Dense class labels `0..k`, numbered in order of first appearance.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let out = (0..n)
            .map(|i| {
                let r = self.find(i);
                if label[r] == usize::MAX {
                    label[r] = next;
                    next += 1;
                }
                label[r]
            })
            .collect();
        (out, next)
    }
}

/// Disjoint sets carrying a parity bit relative to the root, for 2-colouring
/// constraints of the form `x ^ y = p`.
#[derive(Clone, Debug)]
pub struct ParitySets {
    parent: Vec<usize>,
    parity: Vec<u8>,
}

impl ParitySets {
    pub fn new(len: usize) -> Self {
        ParitySets {
            parent: (0..len).collect(),
            parity: vec![0; len],
        }
    }

    fn find(&mut self, i: usize) -> (usize, u8) {
        let mut path = Vec::new();
        let mut cur = i;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // compress from the top so each node's parity is relative to root
        for &node in path.iter().rev() {
            let p = self.parent[node];
            if p != root {
                self.parity[node] ^= self.parity[p];
            }
            self.parent[node] = root;
        }
        (root, if i == root { 0 } else { self.parity[i] })
    }

    /// Adds the constraint `x ^ y = p`; returns false on contradiction.
    pub fn relate(&mut self, x: usize, y: usize, p: u8) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == p;
        }
        self.parent[ry] = rx;
        self.parity[ry] = px ^ py ^ p;
        true
    }
}
