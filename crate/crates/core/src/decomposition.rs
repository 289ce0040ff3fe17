//! Modules, strong and robust modules, Gallai quotients and valued
//! decomposition trees of finite binary structures.
//!
//! Everything here is computed by exhaustive subset enumeration, which is the
//! reference semantics for the rest of the crate. Point sets are bit masks,
//! so structures are capped at [`module_cap`] points.

use std::fmt::{self, Write as _};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::order::BinaryStructure;
use crate::{Error, Result};

static MODULE_CAP: AtomicUsize = AtomicUsize::new(20);

/// Largest structure accepted by the subset enumerations.
pub fn module_cap() -> usize {
    MODULE_CAP.load(Ordering::Relaxed)
}

/// Overrides [`module_cap`]; values above 63 are clamped.
pub fn set_module_cap(cap: usize) {
    MODULE_CAP.store(cap.min(63), Ordering::Relaxed);
}

fn check_size(n: usize) -> Result<()> {
    let cap = module_cap();
    if n > cap {
        Err(Error::Size { size: n, cap })
    } else {
        Ok(())
    }
}

/// A set of points of a structure with at most 63 points.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PointSet(pub u64);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> PointSet {
        PointSet(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn singleton(x: usize) -> PointSet {
        PointSet(1 << x)
    }

    pub fn from_points(points: &[usize]) -> PointSet {
        PointSet(points.iter().fold(0, |acc, &p| acc | (1 << p)))
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn meets(self, other: PointSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let x = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(x)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Precomputed "agrees with" masks: `agree[x * n + y]` holds every `z` with
/// `d(x,z) = d(x,y)` and `d(z,x) = d(y,x)`.
struct ModuleOracle {
    n: usize,
    agree: Vec<u64>,
}

impl ModuleOracle {
    fn new(b: &BinaryStructure) -> Self {
        let n = b.len();
        let mut agree = vec![0u64; n * n];
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let mut mask = 0u64;
                for z in 0..n {
                    if z != x && b.value(x, z) == b.value(x, y) && b.value(z, x) == b.value(y, x) {
                        mask |= 1 << z;
                    }
                }
                agree[x * n + y] = mask;
            }
        }
        ModuleOracle { n, agree }
    }

    fn is_module(&self, m: PointSet) -> bool {
        let Some(y0) = m.first() else {
            return true;
        };
        (0..self.n)
            .filter(|&x| !m.contains(x))
            .all(|x| m.0 & !self.agree[x * self.n + y0] == 0)
    }
}

/// Module predicate: no point outside `m` distinguishes two points of `m`.
pub fn is_module(b: &BinaryStructure, m: &[usize]) -> bool {
    let inside = |p: usize| m.contains(&p);
    (0..b.len()).filter(|&x| !inside(x)).all(|x| {
        m.windows(2)
            .all(|w| b.value(x, w[0]) == b.value(x, w[1]) && b.value(w[0], x) == b.value(w[1], x))
    })
}

/// A family of point sets of one structure, sorted by bit mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleFamily {
    pub n: usize,
    pub members: Vec<PointSet>,
}

impl ModuleFamily {
    fn new(n: usize, mut members: Vec<PointSet>) -> Self {
        members.sort_unstable();
        members.dedup();
        ModuleFamily { n, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: PointSet) -> bool {
        self.members.binary_search(&set).is_ok()
    }

    /// True iff every two members are disjoint or nested.
    pub fn is_laminar(&self) -> bool {
        self.members.iter().enumerate().all(|(i, &m)| {
            self.members[i + 1..]
                .iter()
                .all(|&o| !m.meets(o) || m.is_subset(o) || o.is_subset(m))
        })
    }

    /// True iff the only members are the empty set, singletons and the whole set.
    pub fn is_trivial(&self) -> bool {
        let full = PointSet::full(self.n);
        self.members.iter().all(|m| m.len() <= 1 || *m == full)
    }
}

/// Every module of `b`, by enumeration of all `2^n` subsets.
pub fn all_modules(b: &BinaryStructure) -> Result<ModuleFamily> {
    check_size(b.len())?;
    let oracle = ModuleOracle::new(b);
    let members = (0..1u64 << b.len())
        .map(PointSet)
        .filter(|&m| oracle.is_module(m))
        .collect();
    Ok(ModuleFamily::new(b.len(), members))
}

fn strong_from(modules: &ModuleFamily) -> ModuleFamily {
    let members = modules
        .members
        .iter()
        .copied()
        .filter(|m| !m.is_empty())
        .filter(|&m| {
            modules
                .members
                .iter()
                .all(|&o| !m.meets(o) || m.is_subset(o) || o.is_subset(m))
        })
        .collect();
    ModuleFamily::new(modules.n, members)
}

/// Non-empty modules comparable by inclusion with every module they meet.
pub fn strong_modules(b: &BinaryStructure) -> Result<ModuleFamily> {
    Ok(strong_from(&all_modules(b)?))
}

/// Smallest strong module containing the non-empty set `a`.
pub fn robust_hull(b: &BinaryStructure, a: &[usize]) -> Result<PointSet> {
    let strong = strong_modules(b)?;
    hull_in(&strong, PointSet::from_points(a))
}

fn hull_in(strong: &ModuleFamily, a: PointSet) -> Result<PointSet> {
    if a.is_empty() {
        return Err(Error::Precondition("hull of the empty set".into()));
    }
    Ok(strong
        .members
        .iter()
        .filter(|&&m| a.is_subset(m))
        .fold(PointSet::full(strong.n), |acc, &m| acc.intersection(m)))
}

/// Singletons plus the hulls of all pairs of distinct points.
pub fn robust_modules(b: &BinaryStructure) -> Result<ModuleFamily> {
    let strong = strong_modules(b)?;
    robust_from(&strong)
}

fn robust_from(strong: &ModuleFamily) -> Result<ModuleFamily> {
    let n = strong.n;
    let mut members: Vec<PointSet> = (0..n).map(PointSet::singleton).collect();
    for x in 0..n {
        for y in x + 1..n {
            members.push(hull_in(strong, PointSet::from_points(&[x, y]))?);
        }
    }
    let family = ModuleFamily::new(n, members);
    // Finite structures have no limit modules: robust = strong.
    debug_assert_eq!(family, *strong);
    Ok(family)
}

fn classes_in(strong: &ModuleFamily, a: PointSet) -> Result<Vec<PointSet>> {
    if !strong.contains(a) {
        return Err(Error::NotStrong);
    }
    if a.len() < 2 {
        return Err(Error::Precondition("component partition of a singleton".into()));
    }
    let inner: Vec<PointSet> = strong
        .members
        .iter()
        .copied()
        .filter(|&m| m != a && m.is_subset(a))
        .collect();
    let mut classes: Vec<PointSet> = inner
        .iter()
        .copied()
        .filter(|&m| !inner.iter().any(|&o| o != m && m.is_subset(o)))
        .collect();
    classes.sort_by_key(|c| c.first());
    Ok(classes)
}

/// Classes of `x ≡ y` on the strong module `a`: the maximal strong modules
/// properly contained in `a`, ordered by minimum point.
pub fn component_partition(b: &BinaryStructure, a: &[usize]) -> Result<Vec<Vec<usize>>> {
    let strong = strong_modules(b)?;
    Ok(classes_in(&strong, PointSet::from_points(a))?
        .into_iter()
        .map(PointSet::to_vec)
        .collect())
}

/// Shape of a Gallai quotient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuotientType {
    /// Every ordered pair carries the same value.
    Constant(i8),
    /// Pairs with the first value form a linear order, the second value its
    /// reverse. The values are stored in increasing order.
    Linear(i8, i8),
    Prime,
}

impl QuotientType {
    /// Label used in serialized trees: `"0"`, `"1"`, `"pm1"` or `"prime"`.
    pub fn label(self) -> String {
        match self {
            QuotientType::Constant(v) => v.to_string(),
            QuotientType::Linear(-1, 1) => "pm1".to_string(),
            QuotientType::Linear(a, b) => format!("lin{a}{b:+}"),
            QuotientType::Prime => "prime".to_string(),
        }
    }

    /// Parallel node: constant quotient with value 0.
    pub fn is_parallel(self) -> bool {
        self == QuotientType::Constant(0)
    }

    /// Series node: linear poset quotient, or complete graph quotient.
    pub fn is_series(self) -> bool {
        matches!(self, QuotientType::Linear(-1, 1) | QuotientType::Constant(1))
    }

    fn of(q: &BinaryStructure) -> QuotientType {
        let n = q.len();
        let mut values: Vec<i8> = (0..n)
            .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
            .map(|(x, y)| q.value(x, y))
            .collect();
        values.sort_unstable();
        values.dedup();
        match values.as_slice() {
            [v] => QuotientType::Constant(*v),
            [a, b] => {
                let (a, b) = (*a, *b);
                let forward = |x: usize, y: usize| q.value(x, y) == a;
                let total = (0..n).all(|x| {
                    (x + 1..n).all(|y| {
                        (q.value(x, y) == a && q.value(y, x) == b)
                            || (q.value(x, y) == b && q.value(y, x) == a)
                    })
                });
                let transitive = (0..n).all(|x| {
                    (0..n).all(|y| {
                        !forward(x, y)
                            || (0..n).all(|z| z == x || !forward(y, z) || forward(x, z))
                    })
                });
                if total && transitive {
                    QuotientType::Linear(a, b)
                } else {
                    QuotientType::Prime
                }
            }
            _ => QuotientType::Prime,
        }
    }
}

/// The Gallai quotient of a strong module.
#[derive(Clone, Debug)]
pub struct Quotient {
    /// Classes ordered by minimum point; quotient point `i` is `classes[i]`.
    pub classes: Vec<Vec<usize>>,
    pub structure: BinaryStructure,
    pub kind: QuotientType,
}

/// Structure induced on the classes of the strong module `a`.
pub fn gallai_quotient(b: &BinaryStructure, a: &[usize]) -> Result<Quotient> {
    let strong = strong_modules(b)?;
    quotient_in(b, &strong, PointSet::from_points(a))
}

fn quotient_in(b: &BinaryStructure, strong: &ModuleFamily, a: PointSet) -> Result<Quotient> {
    let classes = classes_in(strong, a)?;
    let reps: Vec<usize> = classes.iter().map(|c| c.first().expect("non-empty class")).collect();
    let structure = b.induced(&reps);
    let kind = QuotientType::of(&structure);
    Ok(Quotient {
        classes: classes.into_iter().map(PointSet::to_vec).collect(),
        structure,
        kind,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub points: Vec<usize>,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Quotient type of an internal node; `None` on leaves.
    pub value: Option<QuotientType>,
}

impl TreeNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// Robust modules ordered by reverse inclusion. Node 0 is the root; the
/// children of every node are listed by minimum point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompTree {
    pub nodes: Vec<TreeNode>,
}

/// Decomposition tree of `b`, with every internal node valued by the type of
/// its Gallai quotient.
pub fn decomposition_tree(b: &BinaryStructure) -> Result<DecompTree> {
    if b.is_empty() {
        return Err(Error::Empty);
    }
    let strong = strong_modules(b)?;
    let robust = robust_from(&strong)?;
    let mut nodes = Vec::new();
    build_node(b, &robust, PointSet::full(b.len()), None, &mut nodes)?;
    Ok(DecompTree { nodes })
}

fn build_node(
    b: &BinaryStructure,
    robust: &ModuleFamily,
    set: PointSet,
    parent: Option<usize>,
    nodes: &mut Vec<TreeNode>,
) -> Result<usize> {
    let index = nodes.len();
    nodes.push(TreeNode {
        points: set.to_vec(),
        parent,
        children: Vec::new(),
        value: None,
    });
    if set.len() >= 2 {
        let quotient = quotient_in(b, robust, set)?;
        nodes[index].value = Some(quotient.kind);
        for class in &quotient.classes {
            let child = build_node(b, robust, PointSet::from_points(class), Some(index), nodes)?;
            nodes[index].children.push(child);
        }
    }
    Ok(index)
}

impl DecompTree {
    pub fn root(&self) -> &TreeNode {
        &self.nodes[0]
    }

    pub fn leaves(&self) -> impl Iterator<Item = &TreeNode> {
        self.nodes.iter().filter(|node| node.is_leaf())
    }

    /// Finite form of density: no internal node shares its value with its
    /// internal parent.
    pub fn check_dense_valuation(&self) -> bool {
        self.nodes.iter().all(|node| match (node.value, node.parent) {
            (Some(value), Some(parent)) => self.nodes[parent].value != Some(value),
            _ => true,
        })
    }

    pub fn has_prime(&self) -> bool {
        self.nodes.iter().any(|n| n.value == Some(QuotientType::Prime))
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Node<'a> {
            points: &'a [usize],
            parent: Option<usize>,
            children: &'a [usize],
            value: Option<String>,
        }
        let nodes: Vec<Node> = self
            .nodes
            .iter()
            .map(|n| Node {
                points: &n.points,
                parent: n.parent,
                children: &n.children,
                value: n.value.map(QuotientType::label),
            })
            .collect();
        serde_json::json!({ "schema": 1, "nodes": nodes })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph decomposition {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let label = match node.value {
                Some(v) => v.label(),
                None => node.points[0].to_string(),
            };
            let shape = if node.is_leaf() { "circle" } else { "box" };
            let _ = writeln!(out, "  n{i} [label=\"{label}\", shape={shape}];");
        }
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                let _ = writeln!(out, "  n{i} -> n{c};");
            }
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for DecompTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn walk(t: &DecompTree, i: usize, depth: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            let node = &t.nodes[i];
            let value = node.value.map(QuotientType::label).unwrap_or_else(|| "leaf".into());
            writeln!(f, "{:indent$}{} {:?}", "", value, node.points, indent = depth * 2)?;
            node.children.iter().try_for_each(|&c| walk(t, c, depth + 1, f))
        }
        walk(self, 0, 0, f)
    }
}
