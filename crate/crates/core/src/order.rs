//! Finite posets, graphs and binary structures.

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

/// A finite strict partial order on the points `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    // up[i] = { j : i < j }, down[i] = { j : j < i }
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl Poset {
    /// Transitive closure of the given strict pairs `(i, j)` meaning `i < j`.
    pub fn from_strict_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Poset> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for &(i, j) in pairs {
            for index in [i, j] {
                if index >= n {
                    return Err(Error::Index { index, n });
                }
            }
            if i == j {
                return Err(Error::Cycle(i));
            }
            up[i].insert(j);
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| up[i].contains(i)) {
            return Err(Error::Cycle(i));
        }
        Ok(Self::from_up_rows(up))
    }

    /// Builds a poset from a relation predicate, checking that it is a strict order.
    pub fn from_relation(n: usize, lt: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if lt(i, j) {
                    if i == j {
                        return Err(Error::Cycle(i));
                    }
                    row.insert(j);
                }
            }
        }
        for i in 0..n {
            for j in up[i].ones() {
                if up[j].contains(i) {
                    return Err(Error::Cycle(i));
                }
                if !up[j].is_subset(&up[i]) {
                    return Err(Error::Structure(format!(
                        "relation is not transitive at {i} < {j}"
                    )));
                }
            }
        }
        Ok(Self::from_up_rows(up))
    }

    fn from_up_rows(up: Vec<FixedBitSet>) -> Poset {
        let n = up.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.ones() {
                down[j].insert(i);
            }
        }
        Poset { n, up, down }
    }

    pub fn chain(k: usize) -> Result<Poset> {
        Poset::from_relation(k, |i, j| i < j)
    }

    pub fn antichain(k: usize) -> Result<Poset> {
        Poset::from_relation(k, |_, _| false)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false: constructors reject the empty poset.
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) || self.lt(j, i)
    }

    /// `i ⊥ j`: distinct and incomparable.
    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        i != j && !self.comparable(i, j)
    }

    pub fn above(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    pub fn below(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    pub fn up_degree(&self, i: usize) -> usize {
        self.up[i].count_ones(..)
    }

    pub fn down_degree(&self, i: usize) -> usize {
        self.down[i].count_ones(..)
    }

    /// All strict pairs `(i, j)` with `i < j`, in row-major order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| self.up[i].ones().map(move |j| (i, j)))
            .collect()
    }

    /// Cover pairs of the Hasse diagram.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(i, j)| self.up[i].intersection(&self.down[j]).next().is_none())
            .collect()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|i| self.up_degree(i) + self.down_degree(i) == self.n - 1)
    }

    pub fn is_antichain(&self) -> bool {
        self.up.iter().all(|row| row.count_ones(..) == 0)
    }

    pub fn comparability_graph(&self) -> Graph {
        Graph::from_fn(self.n, |i, j| self.comparable(i, j))
    }

    pub fn incomparability_graph(&self) -> Graph {
        Graph::from_fn(self.n, |i, j| self.incomparable(i, j))
    }

    /// True iff no four points induce a copy of N.
    pub fn is_nfree(&self) -> bool {
        let verdict = self.comparability_graph().is_cograph();
        #[cfg(debug_assertions)]
        if self.n <= 12 {
            debug_assert_eq!(verdict, self.find_n().is_none());
        }
        verdict
    }

    /// Direct scan for an induced N: returns `(a, b, c, d)` with
    /// `a < b`, `c < b`, `c < d` and all other pairs incomparable.
    pub fn find_n(&self) -> Option<[usize; 4]> {
        let n = self.n;
        for b in 0..n {
            for a in self.down[b].ones() {
                for c in self.down[b].ones() {
                    if c == a || self.comparable(a, c) {
                        continue;
                    }
                    for d in self.up[c].ones() {
                        if d != b && self.incomparable(a, d) && self.incomparable(b, d) {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    /// Connected components of the comparability graph, each sorted,
    /// ordered by minimum point.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.comparability_graph().components()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// True iff the complement of the comparability graph is connected.
    pub fn has_ccgc(&self) -> bool {
        self.incomparability_graph().is_connected()
    }

    pub fn dual(&self) -> Poset {
        Poset {
            n: self.n,
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Restriction to `points`, re-indexed in the given order. The returned
    /// vector maps new indices to original points.
    pub fn induced(&self, points: &[usize]) -> Result<(Poset, Vec<usize>)> {
        if let Some(&index) = points.iter().find(|&&p| p >= self.n) {
            return Err(Error::Index { index, n: self.n });
        }
        let mut seen = FixedBitSet::with_capacity(self.n);
        for &p in points {
            if seen.put(p) {
                return Err(Error::Structure(format!("point {p} listed twice")));
            }
        }
        let sub = Poset::from_relation(points.len(), |i, j| self.lt(points[i], points[j]))?;
        Ok((sub, points.to_vec()))
    }

    /// The poset with point `i` renamed to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Poset {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut inverse = vec![0; self.n];
        for (i, &p) in perm.iter().enumerate() {
            inverse[p] = i;
        }
        Poset::from_relation(self.n, |i, j| self.lt(inverse[i], inverse[j]))
            .expect("relabelling preserves the order axioms")
    }

    /// Row-major strict-order table, one bit per ordered pair.
    pub fn relation_bits(&self) -> Vec<bool> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| self.lt(i, j)))
            .collect()
    }

    pub fn to_structure(&self) -> BinaryStructure {
        BinaryStructure::from_fn(self.n, |x, y| {
            if self.lt(x, y) {
                1
            } else if self.lt(y, x) {
                -1
            } else {
                0
            }
        })
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poset({}; {:?})", self.n, self.covers())
    }
}

/// A finite simple graph on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            for index in [u, v] {
                if index >= n {
                    return Err(Error::Index { index, n });
                }
            }
            if u == v {
                return Err(Error::Structure(format!("loop at vertex {u}")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, adj })
    }

    /// Graph whose edges are the unordered pairs satisfying `edge`
    /// (queried with `i < j`).
    pub fn from_fn(n: usize, edge: impl Fn(usize, usize) -> bool) -> Graph {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if edge(i, j) {
                    adj[i].insert(j);
                    adj[j].insert(i);
                }
            }
        }
        Graph { n, adj }
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| true)
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::from_fn(n, |_, _| false)
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_fn(n, |i, j| j == i + 1)
    }

    pub fn cycle(n: usize) -> Graph {
        Graph::from_fn(n, |i, j| j == i + 1 || (i == 0 && j == n - 1))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, u: usize) -> &FixedBitSet {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones(..)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.adj[u].ones().filter(move |&v| u < v).map(move |v| (u, v)))
            .collect()
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |i, j| !self.adjacent(i, j))
    }

    pub fn induced(&self, vertices: &[usize]) -> Graph {
        Graph::from_fn(vertices.len(), |i, j| self.adjacent(vertices[i], vertices[j]))
    }

    pub fn is_clique(&self) -> bool {
        (0..self.n).all(|u| self.degree(u) == self.n - 1)
    }

    pub fn is_independent(&self) -> bool {
        (0..self.n).all(|u| self.degree(u) == 0)
    }

    /// Connected components, each sorted, ordered by minimum vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen.put(start) {
                continue;
            }
            let mut block = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.adj[u].ones() {
                    if !seen.put(v) {
                        block.push(v);
                        queue.push_back(v);
                    }
                }
            }
            block.sort_unstable();
            out.push(block);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True iff no four vertices induce a path P4.
    pub fn is_cograph(&self) -> bool {
        if self.n <= 12 {
            self.find_p4().is_none()
        } else {
            self.is_cograph_recursive()
        }
    }

    /// Every induced subgraph on two or more vertices is disconnected or
    /// has a disconnected complement.
    pub fn is_cograph_recursive(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let parts = self.components();
        if parts.len() > 1 {
            return parts.iter().all(|p| self.induced(p).is_cograph_recursive());
        }
        let co_parts = self.complement().components();
        if co_parts.len() > 1 {
            return co_parts.iter().all(|p| self.induced(p).is_cograph_recursive());
        }
        false
    }

    /// Induced path `a - b - c - d` found by a four-subset scan.
    pub fn find_p4(&self) -> Option<[usize; 4]> {
        for b in 0..self.n {
            for c in self.adj[b].ones() {
                for a in self.adj[b].ones() {
                    if a == c || self.adjacent(a, c) {
                        continue;
                    }
                    for d in self.adj[c].ones() {
                        if d != b && d != a && !self.adjacent(d, a) && !self.adjacent(d, b) {
                            return Some([a, b, c, d]);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn to_structure(&self) -> BinaryStructure {
        BinaryStructure::from_fn(self.n, |x, y| i8::from(self.adjacent(x, y)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; {:?})", self.n, self.edges())
    }
}

/// A finite set with a value in `{-1, 0, +1}` on every ordered pair of
/// distinct points. Posets encode `x < y` as `+1`, `y < x` as `-1` and
/// incomparability as `0`; graphs encode edges as `1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryStructure {
    n: usize,
    d: Vec<i8>,
}

impl BinaryStructure {
    pub fn from_fn(n: usize, value: impl Fn(usize, usize) -> i8) -> BinaryStructure {
        let mut d = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    d[x * n + y] = value(x, y);
                }
            }
        }
        BinaryStructure { n, d }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn value(&self, x: usize, y: usize) -> i8 {
        self.d[x * self.n + y]
    }

    pub fn induced(&self, points: &[usize]) -> BinaryStructure {
        BinaryStructure::from_fn(points.len(), |x, y| self.value(points[x], points[y]))
    }

    /// Reads the structure back as a poset, if it encodes one.
    pub fn to_poset(&self) -> Result<Poset> {
        for x in 0..self.n {
            for y in 0..self.n {
                if x != y && self.value(x, y) != -self.value(y, x) {
                    return Err(Error::Structure("value map is not antisymmetric".into()));
                }
            }
        }
        Poset::from_relation(self.n, |x, y| x != y && self.value(x, y) == 1)
    }
}
