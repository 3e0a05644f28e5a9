//! 4-coloured graphs (gems and crystallizations).
//!
//! A [`Gem`] is stored as four fixed-point-free involutions on the vertex set
//! `0..2p`, one per colour of `{0,1,2,3}`. The file format and every public
//! report use 1-based vertex labels; everything in memory is 0-based.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::error::{Error, ParseError, ParseErrorKind, Result};

pub type Colour = u8;

pub const COLOURS: [Colour; 4] = [0, 1, 2, 3];

/// The six unordered colour pairs in lexicographic order.
pub const PAIRS: [(Colour, Colour); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A subset of `{0,1,2,3}` stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ColourSet(u8);

impl ColourSet {
    pub fn from_colours(colours: &[Colour]) -> Self {
        ColourSet(colours.iter().fold(0, |m, &c| m | (1 << c)))
    }

    pub fn pair(a: Colour, b: Colour) -> Self {
        debug_assert_ne!(a, b);
        ColourSet((1 << a) | (1 << b))
    }

    /// `Δ₃ ∖ {c}`.
    pub fn hat(c: Colour) -> Self {
        ColourSet(0b1111 & !(1 << c))
    }

    pub fn complement(self) -> Self {
        ColourSet(0b1111 & !self.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, c: Colour) -> bool {
        self.0 & (1 << c) != 0
    }

    pub fn colours(self) -> impl Iterator<Item = Colour> {
        COLOURS.into_iter().filter(move |&c| self.contains(c))
    }

    /// The two colours of a pair, in increasing order.
    pub fn as_pair(self) -> Option<(Colour, Colour)> {
        let mut it = self.colours();
        match (it.next(), it.next(), it.next()) {
            (Some(a), Some(b), None) => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.colours() {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Gem {
    name: String,
    matchings: [Vec<usize>; 4],
}

impl Gem {
    /// Builds a gem from 0-based matchings, checking that each is a
    /// fixed-point-free involution on a common even vertex set.
    pub fn new(name: impl Into<String>, matchings: [Vec<usize>; 4]) -> Result<Self> {
        let n = matchings[0].len();
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGem(format!("vertex count {n} is not positive and even")));
        }
        for (c, m) in matchings.iter().enumerate() {
            if m.len() != n {
                return Err(Error::InvalidGem(format!("colour {c} has {} entries, expected {n}", m.len())));
            }
            for (v, &w) in m.iter().enumerate() {
                if w >= n {
                    return Err(Error::InvalidGem(format!("colour {c}: vertex {} out of range", w + 1)));
                }
                if w == v {
                    return Err(Error::InvalidGem(format!("colour {c}: fixed point at {}", v + 1)));
                }
                if m[w] != v {
                    return Err(Error::InvalidGem(format!("colour {c}: not an involution at {}", v + 1)));
                }
            }
        }
        Ok(Gem {
            name: name.into(),
            matchings,
        })
    }

    /// The order-2 gem of the 3-sphere: two vertices joined in every colour.
    pub fn standard_sphere() -> Self {
        Gem::new("s3_order2", std::array::from_fn(|_| vec![1, 0])).expect("valid")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Number of vertices `2p`.
    pub fn order(&self) -> usize {
        self.matchings[0].len()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.order()
    }

    #[inline]
    pub fn neighbour(&self, v: usize, c: Colour) -> usize {
        self.matchings[c as usize][v]
    }

    pub fn matching(&self, c: Colour) -> &[usize] {
        &self.matchings[c as usize]
    }

    pub fn matchings(&self) -> &[Vec<usize>; 4] {
        &self.matchings
    }

    /// Returns a copy with colours renamed by `perm` (old colour `c` becomes `perm[c]`).
    pub fn permute_colours(&self, perm: [Colour; 4]) -> Gem {
        let mut matchings: [Vec<usize>; 4] = Default::default();
        for c in 0..4 {
            matchings[perm[c] as usize] = self.matchings[c].clone();
        }
        Gem {
            name: self.name.clone(),
            matchings,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    fn component_count(&self) -> usize {
        let mut d = DisjointSets::new(self.order());
        for m in &self.matchings {
            for (v, &w) in m.iter().enumerate() {
                d.union(v, w);
            }
        }
        d.labels().1
    }

    pub fn residues(&self, colours: ColourSet) -> Result<ResiduePartition> {
        match colours.len() {
            2 | 3 => Ok(ResiduePartition::compute(self, colours)),
            got => Err(Error::ColourSetSize {
                expected: "2 or 3",
                got,
            }),
        }
    }

    /// `g_{i,j}`, the number of `{i,j}`-residues.
    pub fn g_pair(&self, i: Colour, j: Colour) -> usize {
        ResiduePartition::compute(self, ColourSet::pair(i, j)).count()
    }

    /// `g_ĉ`, the number of components of the graph with colour `c` deleted.
    pub fn g_hat(&self, c: Colour) -> usize {
        ResiduePartition::compute(self, ColourSet::hat(c)).count()
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.order();
        let mut side = vec![u8::MAX; n];
        for start in 0..n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for m in &self.matchings {
                    let w = m[v];
                    if side[w] == u8::MAX {
                        side[w] = side[v] ^ 1;
                        queue.push_back(w);
                    } else if side[w] == side[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// 2-colouring of the vertices by BFS from vertex 0 (meaningful only when bipartite).
    pub fn bipartition(&self) -> Vec<u8> {
        let n = self.order();
        let mut side = vec![u8::MAX; n];
        for start in 0..n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for m in &self.matchings {
                    let w = m[v];
                    if side[w] == u8::MAX {
                        side[w] = side[v] ^ 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        side
    }

    pub fn is_contracted(&self) -> bool {
        COLOURS.iter().all(|&c| self.g_hat(c) == 1)
    }

    /// Every 3-residue must be a 2-sphere: `v − 3v/2 + f = 2` where `f`
    /// counts the bicoloured cycles inside the residue.
    pub fn is_manifold(&self) -> bool {
        COLOURS.iter().all(|&c| {
            let hat = ResiduePartition::compute(self, ColourSet::hat(c));
            let mut cycles = vec![0i64; hat.count()];
            for (i, j) in PAIRS {
                if i == c || j == c {
                    continue;
                }
                let pair = ResiduePartition::compute(self, ColourSet::pair(i, j));
                for class in pair.classes() {
                    cycles[hat.class_of(class[0])] += 1;
                }
            }
            hat.classes().iter().zip(&cycles).all(|(class, &f)| {
                let v = class.len() as i64;
                v - 3 * v / 2 + f == 2
            })
        })
    }

    /// Euler characteristic of the associated pseudocomplex `K(Γ)`.
    pub fn euler_char_k(&self) -> i64 {
        let vertices: usize = COLOURS.iter().map(|&c| self.g_hat(c)).sum();
        let edges: usize = PAIRS.iter().map(|&(i, j)| self.g_pair(i, j)).sum();
        vertices as i64 - edges as i64 + self.edge_count() as i64 - self.order() as i64
    }

    /// Graph connected sum: deletes `v1` and `v2` and rejoins the hanging
    /// edge-ends colourwise. Vertices of `self` (minus `v1`) come first.
    pub fn connected_sum(&self, v1: usize, other: &Gem, v2: usize) -> Gem {
        let n1 = self.order();
        let n2 = other.order();
        let map1 = |v: usize| if v < v1 { v } else { v - 1 };
        let map2 = |v: usize| (n1 - 1) + if v < v2 { v } else { v - 1 };
        let mut matchings: [Vec<usize>; 4] = Default::default();
        for c in COLOURS {
            let mut m = vec![usize::MAX; n1 + n2 - 2];
            let a = self.neighbour(v1, c);
            let b = other.neighbour(v2, c);
            for v in (0..n1).filter(|&v| v != v1) {
                let w = self.neighbour(v, c);
                if w != v1 {
                    m[map1(v)] = map1(w);
                }
            }
            for v in (0..n2).filter(|&v| v != v2) {
                let w = other.neighbour(v, c);
                if w != v2 {
                    m[map2(v)] = map2(w);
                }
            }
            m[map1(a)] = map2(b);
            m[map2(b)] = map1(a);
            matchings[c as usize] = m;
        }
        Gem {
            name: format!("{}#{}", self.name, other.name),
            matchings,
        }
    }

    /// Inserts a 1-dipole of colour `c` on the `c`-edge at `v`: the edge
    /// `v–w` becomes `v –c– x ==y`, `y –c– w` where `x` and `y` are joined in
    /// the three other colours. The result represents the same manifold and
    /// has one more `ĉ`-residue.
    pub fn insert_dipole(&self, v: usize, c: Colour) -> Gem {
        let n = self.order();
        let (x, y) = (n, n + 1);
        let w = self.neighbour(v, c);
        let mut matchings = self.matchings.clone();
        for d in COLOURS {
            let m = &mut matchings[d as usize];
            m.extend([0, 0]);
            if d == c {
                m[v] = x;
                m[x] = v;
                m[w] = y;
                m[y] = w;
            } else {
                m[x] = y;
                m[y] = x;
            }
        }
        Gem {
            name: format!("{}+d{}", self.name, c),
            matchings,
        }
    }

    /// Breadth-first code of the gem rooted at `root`: vertices are relabelled
    /// in discovery order (colours scanned 0..3) and the code lists the new
    /// labels of all neighbours in that order. Two connected gems are
    /// colour-isomorphic iff their minimal rooted codes agree.
    pub fn rooted_code(&self, root: usize) -> Vec<u16> {
        let n = self.order();
        let mut label = vec![u16::MAX; n];
        let mut order = Vec::with_capacity(n);
        label[root] = 0;
        order.push(root);
        let mut code = Vec::with_capacity(4 * n);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for m in &self.matchings {
                let w = m[v];
                if label[w] == u16::MAX {
                    label[w] = order.len() as u16;
                    order.push(w);
                }
                code.push(label[w]);
            }
        }
        code
    }

    /// Minimal rooted code over all roots; with `colour_free` also minimised
    /// over the 24 colour permutations.
    pub fn canonical_code(&self, colour_free: bool) -> Vec<u16> {
        let mut best: Option<Vec<u16>> = None;
        let perms: Vec<[Colour; 4]> = if colour_free {
            colour_permutations()
        } else {
            vec![[0, 1, 2, 3]]
        };
        for perm in perms {
            let g = self.permute_colours(perm);
            for root in 0..self.order() {
                let code = g.rooted_code(root);
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// Relabels vertices so that the gem's minimal rooted code is realised
    /// with vertex 0 as root.
    pub fn canonical_form(&self) -> Gem {
        let root = (0..self.order())
            .min_by_key(|&r| self.rooted_code(r))
            .unwrap_or(0);
        self.relabel_from(root)
    }

    fn relabel_from(&self, root: usize) -> Gem {
        let n = self.order();
        let mut label = vec![usize::MAX; n];
        let mut order = vec![root];
        label[root] = 0;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for m in &self.matchings {
                let w = m[v];
                if label[w] == usize::MAX {
                    label[w] = order.len();
                    order.push(w);
                }
            }
        }
        let matchings = std::array::from_fn(|c| {
            let mut m = vec![0; n];
            for v in 0..n {
                m[label[v]] = label[self.matchings[c][v]];
            }
            m
        });
        Gem {
            name: self.name.clone(),
            matchings,
        }
    }

    pub fn to_gem_string(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn colour_permutations() -> Vec<[Colour; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                if a != b && a != c && b != c {
                    out.push([a, b, c, 6 - a - b - c]);
                }
            }
        }
    }
    out
}

/// Connected components of the subgraph on a colour set. For pairs each class
/// is a bicoloured cycle listed in cyclic order, starting at its least vertex
/// and leaving along the smaller colour; for triples classes are sorted.
/// Classes are numbered by least vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResiduePartition {
    colours: ColourSet,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl ResiduePartition {
    fn compute(gem: &Gem, colours: ColourSet) -> Self {
        let n = gem.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        let cols: Vec<Colour> = colours.colours().collect();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = Vec::new();
            if let [i, j] = cols[..] {
                let mut v = start;
                let mut step = 0;
                loop {
                    class_of[v] = id;
                    class.push(v);
                    v = gem.neighbour(v, if step % 2 == 0 { i } else { j });
                    step += 1;
                    if v == start && step % 2 == 0 {
                        break;
                    }
                }
            } else {
                class_of[start] = id;
                let mut queue = VecDeque::from([start]);
                while let Some(v) = queue.pop_front() {
                    class.push(v);
                    for &c in &cols {
                        let w = gem.neighbour(v, c);
                        if class_of[w] == usize::MAX {
                            class_of[w] = id;
                            queue.push_back(w);
                        }
                    }
                }
                class.sort_unstable();
            }
            classes.push(class);
        }
        ResiduePartition {
            colours,
            class_of,
            classes,
        }
    }

    pub fn colours(&self) -> ColourSet {
        self.colours
    }

    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &[usize] {
        &self.classes[i]
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GemValidation {
    pub vertices: usize,
    pub components: usize,
    pub involutions_ok: bool,
    pub connected: bool,
}

impl GemValidation {
    pub fn is_valid(&self) -> bool {
        self.involutions_ok && self.connected
    }
}

pub fn validate_gem(gem: &Gem) -> GemValidation {
    let n = gem.order();
    let involutions_ok = gem
        .matchings
        .iter()
        .all(|m| m.len() == n && m.iter().enumerate().all(|(v, &w)| w < n && w != v && m[w] == v));
    let components = if involutions_ok { gem.component_count() } else { 0 };
    GemValidation {
        vertices: n,
        components,
        involutions_ok,
        connected: components == 1,
    }
}

/// Residue counts and elementary flags of a gem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GemInvariants {
    pub vertices: usize,
    /// `g_{i,j}` keyed by `"ij"`.
    pub g_ij: std::collections::BTreeMap<String, usize>,
    /// `g_ĉ` keyed by `"c"`.
    pub g_hat: std::collections::BTreeMap<String, usize>,
    pub bipartite: bool,
    pub contracted: bool,
    pub manifold: bool,
    pub euler_char_k: i64,
}

impl GemInvariants {
    pub fn of(gem: &Gem) -> Self {
        let g_ij = PAIRS
            .iter()
            .map(|&(i, j)| (format!("{i}{j}"), gem.g_pair(i, j)))
            .collect();
        let g_hat = COLOURS
            .iter()
            .map(|&c| (c.to_string(), gem.g_hat(c)))
            .collect();
        GemInvariants {
            vertices: gem.order(),
            g_ij,
            g_hat,
            bipartite: gem.is_bipartite(),
            contracted: gem.is_contracted(),
            manifold: gem.is_manifold(),
            euler_char_k: gem.euler_char_k(),
        }
    }
}

impl fmt::Display for Gem {
    /// Canonical GEM v1 serialization.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gem {}", self.name)?;
        writeln!(f, "vertices {}", self.order())?;
        for (c, m) in self.matchings.iter().enumerate() {
            write!(f, "{c}:")?;
            for (v, &w) in m.iter().enumerate() {
                if v < w {
                    write!(f, " ({} {})", v + 1, w + 1)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Gem {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_gem(s)
    }
}

/// Parses a GEM v1 document.
pub fn parse_gem(text: &str) -> Result<Gem, ParseError> {
    let mut name: Option<String> = None;
    let mut n: Option<usize> = None;
    let mut matchings: [Option<Vec<usize>>; 4] = Default::default();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if name.is_none() {
            let rest = line
                .strip_prefix("gem")
                .filter(|r| r.starts_with(char::is_whitespace))
                .map(str::trim)
                .filter(|r| !r.is_empty())
                .ok_or_else(|| ParseError::new(line_no, ParseErrorKind::MissingHeader("gem <name>")))?;
            name = Some(rest.to_string());
            continue;
        }
        if n.is_none() {
            let count = line
                .strip_prefix("vertices")
                .map(str::trim)
                .ok_or_else(|| ParseError::new(line_no, ParseErrorKind::MissingHeader("vertices <2p>")))?;
            let count: usize = count
                .parse()
                .map_err(|_| ParseError::malformed(line_no, format!("bad vertex count `{count}`")))?;
            if count == 0 || !count.is_multiple_of(2) {
                return Err(ParseError::new(line_no, ParseErrorKind::BadVertexCount(count)));
            }
            n = Some(count);
            continue;
        }
        let n = n.unwrap();
        let (head, body) = line
            .split_once(':')
            .ok_or_else(|| ParseError::malformed(line_no, "expected `<colour>: (a b) ...`"))?;
        let colour: u8 = match head.trim().parse() {
            Ok(c) if c < 4 => c,
            _ => return Err(ParseError::malformed(line_no, format!("bad colour `{}`", head.trim()))),
        };
        if matchings[colour as usize].is_some() {
            return Err(ParseError::new(line_no, ParseErrorKind::ColourRepeated(colour)));
        }
        matchings[colour as usize] = Some(parse_pairs(body, n, line_no)?);
    }

    let name = name.ok_or_else(|| ParseError::new(last_line.max(1), ParseErrorKind::MissingHeader("gem <name>")))?;
    n.ok_or_else(|| ParseError::new(last_line.max(1), ParseErrorKind::MissingHeader("vertices <2p>")))?;
    let mut out: [Vec<usize>; 4] = Default::default();
    for c in 0..4 {
        out[c] = matchings[c]
            .take()
            .ok_or_else(|| ParseError::new(last_line, ParseErrorKind::MissingColour(c as u8)))?;
    }
    Ok(Gem { name, matchings: out })
}

fn parse_pairs(body: &str, n: usize, line: usize) -> Result<Vec<usize>, ParseError> {
    let mut m = vec![usize::MAX; n];
    let mut rest = body.trim();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .and_then(|r| r.split_once(')'))
            .ok_or_else(|| ParseError::malformed(line, format!("expected `(a b)` at `{rest}`")))?;
        let (pair, tail) = inner;
        let nums: Vec<&str> = pair.split_whitespace().collect();
        let [a, b] = nums[..] else {
            return Err(ParseError::malformed(line, format!("pair `({pair})` must have two entries")));
        };
        let parse_vertex = |s: &str| -> Result<usize, ParseError> {
            let v: usize = s
                .parse()
                .map_err(|_| ParseError::malformed(line, format!("bad vertex `{s}`")))?;
            if v == 0 || v > n {
                return Err(ParseError::new(line, ParseErrorKind::VertexOutOfRange { vertex: v, max: n }));
            }
            Ok(v - 1)
        };
        let (a, b) = (parse_vertex(a)?, parse_vertex(b)?);
        if a == b {
            return Err(ParseError::new(line, ParseErrorKind::FixedPoint(a + 1)));
        }
        for v in [a, b] {
            if m[v] != usize::MAX {
                return Err(ParseError::new(line, ParseErrorKind::NonInvolution(v + 1)));
            }
        }
        m[a] = b;
        m[b] = a;
        rest = tail.trim_start();
    }
    if let Some(v) = m.iter().position(|&w| w == usize::MAX) {
        return Err(ParseError::new(line, ParseErrorKind::Unpaired(v + 1)));
    }
    Ok(m)
}
