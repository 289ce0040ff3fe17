//! Structure of finite N-free posets: the sum classification, the smallest
//! chain/antichain context of the comparability graph, the canonical
//! chain/antichain expression and sibling reports.
//!
//! Everything here walks the cotree of a cograph (components, then
//! co-components), which coincides with its modular decomposition tree but
//! costs polynomial time instead of a scan over all subsets.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::embedding::{equimorphic, is_isomorphic};
use crate::expr::Expr;
use crate::order::{Graph, Poset};
use crate::substitution::direct_sum;
use crate::{Error, Result};

/// Cotree of a cograph. Children are listed by minimum vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cotree {
    Leaf(usize),
    /// Children are the components.
    Parallel(Vec<Cotree>),
    /// Children are the co-components.
    Series(Vec<Cotree>),
}

impl Cotree {
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out.sort_unstable();
        out
    }

    fn collect(&self, out: &mut Vec<usize>) {
        match self {
            Cotree::Leaf(v) => out.push(*v),
            Cotree::Parallel(cs) | Cotree::Series(cs) => cs.iter().for_each(|c| c.collect(out)),
        }
    }
}

pub fn cotree(g: &Graph) -> Result<Cotree> {
    if g.is_empty() {
        return Err(Error::Empty);
    }
    build_cotree(g, (0..g.len()).collect())
}

fn build_cotree(g: &Graph, vertices: Vec<usize>) -> Result<Cotree> {
    if vertices.len() == 1 {
        return Ok(Cotree::Leaf(vertices[0]));
    }
    let sub = g.induced(&vertices);
    let lift = |parts: Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        parts.into_iter().map(|c| c.into_iter().map(|i| vertices[i]).collect()).collect()
    };
    let components = sub.components();
    if components.len() > 1 {
        let children = lift(components).into_iter().map(|c| build_cotree(g, c)).collect::<Result<_>>()?;
        return Ok(Cotree::Parallel(children));
    }
    let co = sub.complement().components();
    if co.len() > 1 {
        let children = lift(co).into_iter().map(|c| build_cotree(g, c)).collect::<Result<_>>()?;
        return Ok(Cotree::Series(children));
    }
    Err(Error::NotCograph)
}

/// One summand or component, with its points in the input poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Part {
    pub points: Vec<usize>,
    pub poset: Poset,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Singleton,
    /// Connected components, by minimum point.
    DirectSum(Vec<Part>),
    /// Summands from bottom to top; each has a connected incomparability graph.
    LinearSum(Vec<Part>),
}

impl Classification {
    pub fn parts(&self) -> &[Part] {
        match self {
            Classification::Singleton => &[],
            Classification::DirectSum(ps) | Classification::LinearSum(ps) => ps,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let kind = match self {
            Classification::Singleton => "singleton",
            Classification::DirectSum(_) => "direct_sum",
            Classification::LinearSum(_) => "linear_sum",
        };
        let parts: Vec<_> = self
            .parts()
            .iter()
            .map(|p| serde_json::json!({ "points": p.points, "size": p.points.len() }))
            .collect();
        serde_json::json!({ "schema": 1, "kind": kind, "parts": parts })
    }
}

fn part(p: &Poset, points: Vec<usize>) -> Result<Part> {
    let (poset, _) = p.induced(&points)?;
    Ok(Part { points, poset })
}

/// Sorts pairwise comparable blocks bottom to top.
fn sort_linear(p: &Poset, blocks: &mut [Vec<usize>]) {
    blocks.sort_by(|a, b| {
        if p.lt(a[0], b[0]) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
}

pub fn classify(p: &Poset) -> Result<Classification> {
    if !p.is_nfree() {
        return Err(Error::NotNFree);
    }
    if p.len() == 1 {
        return Ok(Classification::Singleton);
    }
    let cg = p.comparability_graph();
    let components = cg.components();
    if components.len() > 1 {
        let parts = components.into_iter().map(|c| part(p, c)).collect::<Result<_>>()?;
        return Ok(Classification::DirectSum(parts));
    }
    let mut summands = cg.complement().components();
    if summands.len() < 2 {
        return Err(Error::Structure("connected N-free poset whose root is not linear".into()));
    }
    sort_linear(p, &mut summands);
    let parts: Vec<Part> = summands.into_iter().map(|c| part(p, c)).collect::<Result<_>>()?;
    if let Some(bad) = parts.iter().position(|s| !s.poset.has_ccgc()) {
        return Err(Error::NotCcgc(bad));
    }
    Ok(Classification::LinearSum(parts))
}

/// Shape of one block of a context.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Block {
    Clique(usize),
    Independent(usize),
}

impl Block {
    pub fn len(self) -> usize {
        match self {
            Block::Clique(k) | Block::Independent(k) => k,
        }
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }

    fn clique_capable(self) -> bool {
        matches!(self, Block::Clique(_)) || self.len() == 1
    }

    fn independent_capable(self) -> bool {
        matches!(self, Block::Independent(_)) || self.len() == 1
    }
}

/// `G = K[H_v / v]` with every `H_v` a clique or an independent set.
/// Blocks are ordered by minimum vertex; a singleton is reported as `Clique(1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallestContext {
    pub context: Graph,
    pub blocks: Vec<Block>,
    pub parts: Vec<Vec<usize>>,
}

impl SmallestContext {
    /// Pairs `{u, v}` of the context that form a module and could still be
    /// merged into a single clique or independent block.
    pub fn mergeable_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.context.len();
        (0..k)
            .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
            .filter(|&(u, v)| mergeable(&self.context, &self.blocks, u, v))
            .collect()
    }
}

fn mergeable(k: &Graph, blocks: &[Block], u: usize, v: usize) -> bool {
    let module = (0..k.len()).all(|w| w == u || w == v || k.adjacent(w, u) == k.adjacent(w, v));
    if !module {
        return false;
    }
    if k.adjacent(u, v) {
        blocks[u].clique_capable() && blocks[v].clique_capable()
    } else {
        blocks[u].independent_capable() && blocks[v].independent_capable()
    }
}

/// Greedy merge of two-element modules to a fixpoint, starting from singletons.
pub fn smallest_context(g: &Graph) -> Result<SmallestContext> {
    if g.is_empty() {
        return Err(Error::Empty);
    }
    if !g.is_cograph() {
        return Err(Error::NotCograph);
    }
    let mut parts: Vec<Vec<usize>> = (0..g.len()).map(|v| vec![v]).collect();
    let mut blocks: Vec<Block> = vec![Block::Clique(1); g.len()];
    loop {
        let context = Graph::from_fn(parts.len(), |u, v| g.adjacent(parts[u][0], parts[v][0]));
        let n = parts.len();
        let pair = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .find(|&(u, v)| mergeable(&context, &blocks, u, v));
        let Some((u, v)) = pair else {
            return Ok(SmallestContext { context, blocks, parts });
        };
        let size = blocks[u].len() + blocks[v].len();
        blocks[u] = if context.adjacent(u, v) {
            Block::Clique(size)
        } else {
            Block::Independent(size)
        };
        let moved = parts.remove(v);
        blocks.remove(v);
        parts[u].extend(moved);
        parts[u].sort_unstable();
    }
}

/// Node of a canonical chain/antichain form. Points refer to the input poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormNode {
    /// Points from bottom to top.
    Chain(Vec<usize>),
    Antichain(Vec<usize>),
    /// Direct sum of the children, by minimum point.
    Dir(Vec<FormNode>),
    /// `gap_0 + part_0 + gap_1 + ... + part_{m-1} + gap_m`, bottom to top.
    /// Gaps are pieces of one chain block and may be empty.
    Lin { gaps: Vec<Vec<usize>>, parts: Vec<FormNode> },
}

impl FormNode {
    /// Points in the order the evaluated expression lays them out.
    pub fn points(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<usize>) {
        match self {
            FormNode::Chain(ps) | FormNode::Antichain(ps) => out.extend(ps),
            FormNode::Dir(cs) => cs.iter().for_each(|c| c.collect(out)),
            FormNode::Lin { gaps, parts } => {
                for (i, gap) in gaps.iter().enumerate() {
                    out.extend(gap);
                    if let Some(part) = parts.get(i) {
                        part.collect(out);
                    }
                }
            }
        }
    }

    /// Empty gaps are dropped.
    pub fn to_expr(&self) -> Expr {
        match self {
            FormNode::Chain(ps) => Expr::Chain(ps.len()),
            FormNode::Antichain(ps) => Expr::Antichain(ps.len()),
            FormNode::Dir(cs) => Expr::Dir(cs.iter().map(FormNode::to_expr).collect()),
            FormNode::Lin { gaps, parts } => {
                let mut items = Vec::new();
                for (i, gap) in gaps.iter().enumerate() {
                    if !gap.is_empty() {
                        items.push(Expr::Chain(gap.len()));
                    }
                    if let Some(part) = parts.get(i) {
                        items.push(part.to_expr());
                    }
                }
                Expr::Lin(items)
            }
        }
    }

    fn chain_parts(&self, out: &mut Vec<Vec<usize>>) {
        match self {
            FormNode::Chain(ps) => out.push(ps.clone()),
            FormNode::Antichain(_) => {}
            FormNode::Dir(cs) => cs.iter().for_each(|c| c.chain_parts(out)),
            FormNode::Lin { gaps, parts } => {
                out.extend(gaps.iter().filter(|g| !g.is_empty()).cloned());
                parts.iter().for_each(|c| c.chain_parts(out));
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub root: FormNode,
}

impl CanonicalForm {
    pub fn to_expr(&self) -> Expr {
        self.root.to_expr()
    }

    /// `points()[i]` is the input point realized as point `i` of the evaluation.
    pub fn points(&self) -> Vec<usize> {
        self.root.points()
    }

    /// Every chain atom, points bottom to top.
    pub fn chain_parts(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.root.chain_parts(&mut out);
        out
    }

    /// True when evaluating the expression gives `p` under the retained point map.
    pub fn reproduces(&self, p: &Poset) -> Result<bool> {
        let q = self.to_expr().eval()?;
        let map = self.points();
        Ok(q.len() == p.len()
            && (0..q.len()).all(|i| (0..q.len()).all(|j| q.lt(i, j) == p.lt(map[i], map[j]))))
    }

    /// Checks that the permutation `f` of the input points respects the form:
    /// direct-sum children are permuted among themselves, while linear-sum
    /// parts and gap chains are each mapped onto their own position.
    pub fn respected_by(&self, f: &[usize]) -> bool {
        respects(&self.root, &self.root, f)
    }
}

fn image(points: &[usize], f: &[usize]) -> BTreeSet<usize> {
    points.iter().map(|&x| f[x]).collect()
}

fn respects(x: &FormNode, y: &FormNode, f: &[usize]) -> bool {
    if image(&x.points(), f) != y.points().into_iter().collect() {
        return false;
    }
    match (x, y) {
        (FormNode::Chain(_), FormNode::Chain(_)) | (FormNode::Antichain(_), FormNode::Antichain(_)) => true,
        (FormNode::Dir(xs), FormNode::Dir(ys)) if xs.len() == ys.len() => {
            let mut used = vec![false; ys.len()];
            xs.iter().all(|xc| {
                let img = image(&xc.points(), f);
                let target = ys.iter().position(|yc| img.iter().all(|v| yc.points().contains(v)));
                match target {
                    Some(t) if !used[t] => {
                        used[t] = true;
                        respects(xc, &ys[t], f)
                    }
                    _ => false,
                }
            })
        }
        (FormNode::Lin { gaps: gx, parts: px }, FormNode::Lin { gaps: gy, parts: py })
            if gx.len() == gy.len() && px.len() == py.len() =>
        {
            gx.iter()
                .zip(gy)
                .all(|(a, b)| image(a, f) == b.iter().copied().collect())
                && px.iter().zip(py).all(|(a, b)| respects(a, b, f))
        }
        _ => false,
    }
}

/// Canonical chain/antichain form of an N-free poset, built from the cotree
/// of the smallest context of its comparability graph.
pub fn canonical_chain_antichain_form(p: &Poset) -> Result<CanonicalForm> {
    if !p.is_nfree() {
        return Err(Error::NotNFree);
    }
    let sc = smallest_context(&p.comparability_graph())?;
    let tree = cotree(&sc.context)?;
    Ok(CanonicalForm {
        root: form_of(p, &sc, &tree)?,
    })
}

fn form_of(p: &Poset, sc: &SmallestContext, node: &Cotree) -> Result<FormNode> {
    match node {
        Cotree::Leaf(b) => {
            let mut points = sc.parts[*b].clone();
            Ok(match sc.blocks[*b] {
                Block::Clique(_) => {
                    points.sort_by_key(|&x| p.down_degree(x));
                    FormNode::Chain(points)
                }
                Block::Independent(_) => FormNode::Antichain(points),
            })
        }
        Cotree::Parallel(children) => {
            let mut forms = children.iter().map(|c| form_of(p, sc, c)).collect::<Result<Vec<_>>>()?;
            forms.sort_by_key(|f| f.points().into_iter().min());
            Ok(FormNode::Dir(forms))
        }
        Cotree::Series(children) => {
            let mut chain = None;
            let mut rest = Vec::new();
            for c in children {
                match c {
                    Cotree::Leaf(b) if matches!(sc.blocks[*b], Block::Clique(_)) => {
                        if chain.replace(sc.parts[*b].clone()).is_some() {
                            return Err(Error::Structure("two clique leaves under one series node".into()));
                        }
                    }
                    _ => rest.push(form_of(p, sc, c)?),
                }
            }
            let mut reps: Vec<Vec<usize>> = rest.iter().map(FormNode::points).collect();
            let mut order: Vec<usize> = (0..rest.len()).collect();
            order.sort_by(|&a, &b| {
                if p.lt(reps[a][0], reps[b][0]) {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            });
            let mut slots: Vec<Option<FormNode>> = rest.into_iter().map(Some).collect();
            let parts: Vec<FormNode> = order.iter().map(|&i| slots[i].take().expect("each part once")).collect();
            reps = order.iter().map(|&i| reps[i].clone()).collect();
            let mut gaps = vec![Vec::new(); parts.len() + 1];
            for x in chain.unwrap_or_default() {
                let below = reps.iter().filter(|r| p.lt(r[0], x)).count();
                gaps[below].push(x);
            }
            for gap in &mut gaps {
                gap.sort_by_key(|&x| p.down_degree(x));
            }
            Ok(FormNode::Lin { gaps, parts })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every sibling is isomorphic to the input.
    One,
    /// Infinitely many pairwise non-isomorphic siblings were exhibited.
    InfiniteWitnessed,
    /// The count is the maximum over the listed chain parts.
    SymbolicMax,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiblingReport {
    pub verdict: Verdict,
    /// Chain parts that would drive the count were each of them inflated to
    /// an infinite chain of the same shape.
    pub chain_parts: Vec<Vec<usize>>,
    pub canonical_form: Expr,
    /// Pairwise non-isomorphic equimorphs of the input.
    pub witnesses: Vec<Poset>,
}

impl SiblingReport {
    pub fn to_json(&self) -> serde_json::Value {
        let parts: Vec<_> = self
            .chain_parts
            .iter()
            .map(|c| serde_json::json!({ "size": c.len(), "points": c }))
            .collect();
        serde_json::json!({
            "schema": 1,
            "verdict": self.verdict,
            "chain_parts": parts,
            "canonical_form": self.canonical_form.to_string(),
            "witnesses": self.witnesses.len(),
        })
    }
}

/// Finite posets are their own only siblings, so the verdict is always
/// [`Verdict::One`] with the input as sole witness.
pub fn sibling_report(p: &Poset) -> Result<SiblingReport> {
    let form = canonical_chain_antichain_form(p)?;
    Ok(SiblingReport {
        verdict: Verdict::One,
        chain_parts: form.chain_parts(),
        canonical_form: form.to_expr(),
        witnesses: vec![p.clone()],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equimorphy {
    Equimorphic,
    NotEquimorphic,
    /// Beyond the search cap.
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub poset: Poset,
    /// Relation to `P`.
    pub status: Equimorphy,
}

/// Sibling candidates `Q ⊕ K̄_i` for `0 ≤ i < k`. Pairwise non-isomorphism is
/// verified by the oracle; equimorphy with `P` is only recorded.
pub fn sibling_witnesses_disconnected(p: &Poset, q: &Poset, k: usize) -> Result<Vec<Candidate>> {
    if !q.is_connected() {
        return Err(Error::Precondition("Q must be connected".into()));
    }
    if p.is_connected() {
        return Err(Error::Precondition("P must be disconnected".into()));
    }
    let mut out: Vec<Candidate> = Vec::with_capacity(k);
    for i in 0..k {
        let poset = if i == 0 {
            q.clone()
        } else {
            direct_sum(&[q.clone(), Poset::antichain(i)?])?
        };
        for earlier in &out {
            if is_isomorphic(&earlier.poset, &poset)? {
                return Err(Error::Structure("candidates are not pairwise distinct".into()));
            }
        }
        let status = match equimorphic(&poset, p) {
            Ok(true) => Equimorphy::Equimorphic,
            Ok(false) => Equimorphy::NotEquimorphic,
            Err(Error::Size { .. }) => Equimorphy::Unchecked,
            Err(e) => return Err(e),
        };
        out.push(Candidate { poset, status });
    }
    Ok(out)
}
