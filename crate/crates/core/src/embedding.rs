//! Brute-force embeddings, isomorphisms, poset enumeration and the summand
//! map induced by an embedding of linear sums.
//!
//! An embedding is always induced: it preserves `<` and `⊥` in both
//! directions. The search is a deterministic backtracking with forward
//! checking; the value tried first at every step is the smallest target
//! point, so the returned witness is the first one in search order.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use fixedbitset::FixedBitSet;

use crate::order::Poset;
use crate::{Error, Result};

static SEARCH_CAP: AtomicUsize = AtomicUsize::new(12);

/// Largest target accepted by [`find_embedding`] and friends.
pub fn search_cap() -> usize {
    SEARCH_CAP.load(Ordering::Relaxed)
}

pub fn set_search_cap(cap: usize) {
    SEARCH_CAP.store(cap, Ordering::Relaxed);
}

/// Injective map from the points of one poset into another.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn identity(n: usize) -> Embedding {
        Embedding {
            map: (0..n).collect(),
        }
    }

    /// Re-checks the induced-embedding conditions from scratch.
    pub fn is_valid(&self, p: &Poset, q: &Poset) -> bool {
        if self.map.len() != p.len() || self.map.iter().any(|&y| y >= q.len()) {
            return false;
        }
        let distinct: HashSet<usize> = self.map.iter().copied().collect();
        if distinct.len() != self.map.len() {
            return false;
        }
        (0..p.len()).all(|x| {
            (0..p.len()).all(|x2| p.lt(x, x2) == q.lt(self.map[x], self.map[x2]))
        })
    }

    pub fn is_bijective(&self, target_len: usize) -> bool {
        self.map.len() == target_len
    }

    pub fn compose(&self, then: &Embedding) -> Embedding {
        Embedding {
            map: self.map.iter().map(|&y| then.map[y]).collect(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Embed,
    Iso,
}

struct Search<'a> {
    p: &'a Poset,
    q: &'a Poset,
    // incomparable-point masks of q
    q_inc: Vec<FixedBitSet>,
    rank: Vec<usize>,
    limit: Option<usize>,
    found: Vec<Embedding>,
}

impl<'a> Search<'a> {
    fn new(p: &'a Poset, q: &'a Poset, limit: Option<usize>) -> Self {
        let qn = q.len();
        let q_inc = (0..qn)
            .map(|y| {
                let mut m = FixedBitSet::with_capacity(qn);
                m.insert_range(..);
                m.difference_with(q.above(y));
                m.difference_with(q.below(y));
                m.set(y, false);
                m
            })
            .collect();
        // Static tie-break: larger comparability degree first.
        let mut order: Vec<usize> = (0..p.len()).collect();
        order.sort_by_key(|&x| std::cmp::Reverse(p.up_degree(x) + p.down_degree(x)));
        let mut rank = vec![0; p.len()];
        for (r, &x) in order.iter().enumerate() {
            rank[x] = r;
        }
        Search {
            p,
            q,
            q_inc,
            rank,
            limit,
            found: Vec::new(),
        }
    }

    fn initial_domains(&self, mode: Mode) -> Vec<FixedBitSet> {
        let (p, q) = (self.p, self.q);
        let inc = |poset: &Poset, x: usize| poset.len() - 1 - poset.up_degree(x) - poset.down_degree(x);
        (0..p.len())
            .map(|x| {
                let (u, d, i) = (p.up_degree(x), p.down_degree(x), inc(p, x));
                let mut dom = FixedBitSet::with_capacity(q.len());
                for y in 0..q.len() {
                    let (qu, qd, qi) = (q.up_degree(y), q.down_degree(y), inc(q, y));
                    let ok = match mode {
                        Mode::Embed => qu >= u && qd >= d && qi >= i,
                        Mode::Iso => qu == u && qd == d,
                    };
                    dom.set(y, ok);
                }
                dom
            })
            .collect()
    }

    fn run(&mut self, mode: Mode) {
        let domains = self.initial_domains(mode);
        let mut map = vec![usize::MAX; self.p.len()];
        self.extend(&mut map, domains, 0);
    }

    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.found.len() >= l)
    }

    fn extend(&mut self, map: &mut [usize], domains: Vec<FixedBitSet>, assigned: usize) {
        if assigned == map.len() {
            self.found.push(Embedding { map: map.to_vec() });
            return;
        }
        // Fewest remaining candidates first, then the static rank.
        let x = (0..map.len())
            .filter(|&x| map[x] == usize::MAX)
            .min_by_key(|&x| (domains[x].count_ones(..), self.rank[x]))
            .expect("an unassigned point remains");
        let candidates: Vec<usize> = domains[x].ones().collect();
        for y in candidates {
            let mut next = domains.clone();
            let mut dead = false;
            for x2 in 0..map.len() {
                if map[x2] != usize::MAX || x2 == x {
                    continue;
                }
                let mask = if self.p.lt(x2, x) {
                    self.q.below(y)
                } else if self.p.lt(x, x2) {
                    self.q.above(y)
                } else {
                    &self.q_inc[y]
                };
                next[x2].intersect_with(mask);
                if next[x2].count_ones(..) == 0 {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            map[x] = y;
            self.extend(map, next, assigned + 1);
            map[x] = usize::MAX;
            if self.done() {
                return;
            }
        }
    }
}

fn check_cap(q: &Poset, cap: usize) -> Result<()> {
    if q.len() > cap {
        Err(Error::Size { size: q.len(), cap })
    } else {
        Ok(())
    }
}

/// First induced embedding of `p` into `q` in search order, if any.
pub fn find_embedding(p: &Poset, q: &Poset) -> Result<Option<Embedding>> {
    find_embedding_capped(p, q, search_cap())
}

pub fn find_embedding_capped(p: &Poset, q: &Poset, cap: usize) -> Result<Option<Embedding>> {
    check_cap(q, cap)?;
    check_cap(p, cap)?;
    if p.len() > q.len() {
        return Ok(None);
    }
    let mut search = Search::new(p, q, Some(1));
    search.run(Mode::Embed);
    Ok(search.found.pop())
}

/// Every induced embedding of `p` into `q`, in search order.
pub fn all_embeddings(p: &Poset, q: &Poset, cap: usize) -> Result<Vec<Embedding>> {
    check_cap(q, cap)?;
    check_cap(p, cap)?;
    if p.len() > q.len() {
        return Ok(Vec::new());
    }
    let mut search = Search::new(p, q, None);
    search.run(Mode::Embed);
    Ok(search.found)
}

fn degree_profile(p: &Poset) -> Vec<(usize, usize)> {
    let mut v: Vec<_> = (0..p.len()).map(|x| (p.up_degree(x), p.down_degree(x))).collect();
    v.sort_unstable();
    v
}

pub fn find_isomorphism(p: &Poset, q: &Poset) -> Result<Option<Embedding>> {
    find_isomorphism_capped(p, q, search_cap())
}

pub fn find_isomorphism_capped(p: &Poset, q: &Poset, cap: usize) -> Result<Option<Embedding>> {
    check_cap(q, cap)?;
    check_cap(p, cap)?;
    if p.len() != q.len() || degree_profile(p) != degree_profile(q) {
        return Ok(None);
    }
    let mut search = Search::new(p, q, Some(1));
    search.run(Mode::Iso);
    Ok(search.found.pop())
}

pub fn is_isomorphic(p: &Poset, q: &Poset) -> Result<bool> {
    Ok(find_isomorphism(p, q)?.is_some())
}

pub fn is_isomorphic_capped(p: &Poset, q: &Poset, cap: usize) -> Result<bool> {
    Ok(find_isomorphism_capped(p, q, cap)?.is_some())
}

/// Each embeds into the other.
pub fn equimorphic(p: &Poset, q: &Poset) -> Result<bool> {
    Ok(find_embedding(p, q)?.is_some() && find_embedding(q, p)?.is_some())
}

/// Canonical code: the smallest row-major relation table over all
/// relabellings that list points by increasing `(down, up)` degree.
pub fn canonical_code(p: &Poset) -> Vec<bool> {
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    let key = |x: usize| (p.down_degree(x), p.up_degree(x));
    order.sort_by_key(|&x| key(x));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for x in order {
        match cells.last_mut() {
            Some(cell) if key(cell[0]) == key(x) => cell.push(x),
            _ => cells.push(vec![x]),
        }
    }
    let mut best: Option<Vec<bool>> = None;
    let mut current = Vec::with_capacity(n);
    permute_cells(&cells, 0, &mut current, &mut |seq: &[usize]| {
        let code: Vec<bool> = seq
            .iter()
            .flat_map(|&a| seq.iter().map(move |&b| p.lt(a, b)))
            .collect();
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    });
    best.unwrap_or_default()
}

fn permute_cells(
    cells: &[Vec<usize>],
    depth: usize,
    current: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if depth == cells.len() {
        emit(current);
        return;
    }
    let mut cell = cells[depth].clone();
    permute_within(&mut cell, 0, &mut |arranged: &[usize]| {
        let mark = current.len();
        current.extend_from_slice(arranged);
        permute_cells(cells, depth + 1, current, emit);
        current.truncate(mark);
    });
}

fn permute_within(items: &mut [usize], k: usize, emit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        emit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_within(items, k + 1, emit);
        items.swap(k, i);
    }
}

/// Labelled posets up to this size may be enumerated.
pub const LABELLED_ENUMERATION_CAP: usize = 6;
/// Unlabelled posets up to this size may be enumerated.
pub const UNLABELLED_ENUMERATION_CAP: usize = 7;

/// All posets on `n` points, built by adding one point at a time.
///
/// With `up_to_iso` one representative per isomorphism class is returned.
pub fn enumerate_posets(n: usize, up_to_iso: bool) -> Result<Vec<Poset>> {
    let cap = if up_to_iso {
        UNLABELLED_ENUMERATION_CAP
    } else {
        LABELLED_ENUMERATION_CAP
    };
    if n > cap {
        return Err(Error::Size { size: n, cap });
    }
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut level = vec![Poset::antichain(1)?];
    for _ in 1..n {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for p in &level {
            for q in one_point_extensions(p) {
                if !up_to_iso || seen.insert(canonical_code(&q)) {
                    next.push(q);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// Every poset on `p.len() + 1` points whose restriction to the first
/// `p.len()` points is `p`.
pub fn one_point_extensions(p: &Poset) -> Vec<Poset> {
    let m = p.len();
    let subsets = 0u64..1 << m;
    let is_down_closed = |s: u64| (0..m).filter(|&x| s >> x & 1 == 1).all(|x| p.below(x).ones().all(|y| s >> y & 1 == 1));
    let is_up_closed = |s: u64| (0..m).filter(|&x| s >> x & 1 == 1).all(|x| p.above(x).ones().all(|y| s >> y & 1 == 1));
    let ideals: Vec<u64> = subsets.clone().filter(|&s| is_down_closed(s)).collect();
    let filters: Vec<u64> = subsets.filter(|&s| is_up_closed(s)).collect();
    let mut out = Vec::new();
    for &down in &ideals {
        for &up in &filters {
            if down & up != 0 {
                continue;
            }
            let separated = (0..m)
                .filter(|&d| down >> d & 1 == 1)
                .all(|d| (0..m).filter(|&u| up >> u & 1 == 1).all(|u| p.lt(d, u)));
            if !separated {
                continue;
            }
            let ext = Poset::from_relation(m + 1, |a, b| {
                if a < m && b < m {
                    p.lt(a, b)
                } else if b == m && a < m {
                    down >> a & 1 == 1
                } else if a == m && b < m {
                    up >> b & 1 == 1
                } else {
                    false
                }
            })
            .expect("separated ideal/filter pairs give partial orders");
            out.push(ext);
        }
    }
    out
}

/// Labelled posets on `n <= 5` points found by scanning every relation on
/// the off-diagonal pairs and keeping the strict partial orders.
pub fn enumerate_posets_by_relation_scan(n: usize) -> Result<Vec<Poset>> {
    if n > 5 {
        return Err(Error::Size { size: n, cap: 5 });
    }
    if n == 0 {
        return Err(Error::Empty);
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for bits in 0u32..1 << pairs.len() {
        let mut rows = vec![0u8; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if bits >> k & 1 == 1 {
                rows[i] |= 1 << j;
            }
        }
        let antisymmetric = (0..n).all(|i| (0..n).all(|j| rows[i] >> j & 1 == 0 || rows[j] >> i & 1 == 0));
        let transitive = (0..n).all(|i| {
            (0..n)
                .filter(|&j| rows[i] >> j & 1 == 1)
                .all(|j| rows[j] & !rows[i] == 0)
        });
        if antisymmetric && transitive {
            out.push(Poset::from_relation(n, |i, j| rows[i] >> j & 1 == 1)?);
        }
    }
    Ok(out)
}

/// A poset presented as a linear sum: `summands[i]` lies entirely below
/// `summands[j]` whenever `i < j`.
#[derive(Clone, Debug)]
pub struct LinearSumView {
    pub poset: Poset,
    pub summands: Vec<Vec<usize>>,
}

impl LinearSumView {
    pub fn new(poset: Poset, summands: Vec<Vec<usize>>) -> Result<LinearSumView> {
        let mut owner = vec![usize::MAX; poset.len()];
        for (i, s) in summands.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::Structure(format!("summand {i} is empty")));
            }
            for &x in s {
                if x >= poset.len() {
                    return Err(Error::Index { index: x, n: poset.len() });
                }
                if owner[x] != usize::MAX {
                    return Err(Error::Structure(format!("point {x} in two summands")));
                }
                owner[x] = i;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::Structure("summands do not cover the poset".into()));
        }
        for x in 0..poset.len() {
            for y in 0..poset.len() {
                if owner[x] < owner[y] && !poset.lt(x, y) {
                    return Err(Error::Structure("summands are not stacked".into()));
                }
            }
        }
        Ok(LinearSumView { poset, summands })
    }

    pub fn owner(&self) -> Vec<usize> {
        let mut owner = vec![0; self.poset.len()];
        for (i, s) in self.summands.iter().enumerate() {
            for &x in s {
                owner[x] = i;
            }
        }
        owner
    }

    fn check_ccgc(&self) -> Result<()> {
        for (i, s) in self.summands.iter().enumerate() {
            if !self.poset.induced(s)?.0.has_ccgc() {
                return Err(Error::NotCcgc(i));
            }
        }
        Ok(())
    }
}

/// Summand map `i ↦ j` with `f(P_i) ⊆ Q_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexMap {
    pub map: Vec<usize>,
    pub injective: bool,
    pub order_preserving: bool,
    pub surjective: bool,
}

impl IndexMap {
    /// Order-preserving bijection between the two index chains.
    pub fn is_chain_isomorphism(&self) -> bool {
        self.injective && self.surjective && self.order_preserving
    }
}

/// The index map an embedding of linear sums induces on their summands.
/// Every summand on both sides must have a connected incomparability graph.
pub fn induced_index_map(f: &Embedding, p: &LinearSumView, q: &LinearSumView) -> Result<IndexMap> {
    p.check_ccgc()?;
    q.check_ccgc()?;
    if !f.is_valid(&p.poset, &q.poset) {
        return Err(Error::Precondition("map is not an embedding".into()));
    }
    let owner = q.owner();
    let mut map = Vec::with_capacity(p.summands.len());
    for (i, s) in p.summands.iter().enumerate() {
        let mut hit: Vec<usize> = s.iter().map(|&x| owner[f.map[x]]).collect();
        hit.sort_unstable();
        hit.dedup();
        if hit.len() != 1 {
            return Err(Error::Structure(format!(
                "summand {i} is spread over target summands {hit:?}"
            )));
        }
        map.push(hit[0]);
    }
    let order_preserving = map.windows(2).all(|w| w[0] <= w[1]);
    let mut distinct = map.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let injective = distinct.len() == map.len();
    let surjective = distinct.len() == q.summands.len();
    Ok(IndexMap {
        map,
        injective,
        order_preserving,
        surjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::{direct_sum, linear_sum};

    fn n_poset() -> Poset {
        Poset::from_strict_pairs(4, &[(0, 1), (2, 1), (2, 3)]).unwrap()
    }

    fn a(k: usize) -> Poset {
        Poset::antichain(k).unwrap()
    }

    fn c(k: usize) -> Poset {
        Poset::chain(k).unwrap()
    }

    #[test]
    fn embedding_examples() {
        let e = find_embedding(&c(2), &c(3)).unwrap().unwrap();
        assert_eq!(e.map, vec![0, 1]);
        assert!(e.is_valid(&c(2), &c(3)));
        assert_eq!(find_embedding(&a(2), &c(5)).unwrap(), None);
        let stacked = linear_sum(&[a(2), a(2)]).unwrap();
        assert_eq!(find_embedding(&n_poset(), &stacked).unwrap(), None);
        assert!(matches!(
            find_embedding(&c(2), &c(13)),
            Err(Error::Size { size: 13, cap: 12 })
        ));
        assert!(find_embedding_capped(&c(2), &c(13), 20).unwrap().is_some());
    }

    #[test]
    fn isomorphism_examples() {
        let iso = find_isomorphism(&n_poset(), &n_poset().dual()).unwrap().unwrap();
        assert!(iso.is_valid(&n_poset(), &n_poset().dual()));
        assert!(is_isomorphic(&c(3), &c(3)).unwrap());
        let stacked = linear_sum(&[a(2), a(2)]).unwrap();
        let parallel = direct_sum(&[c(2), c(2)]).unwrap();
        assert!(!is_isomorphic(&stacked, &parallel).unwrap());
        assert!(!equimorphic(&stacked, &parallel).unwrap());
        assert!(equimorphic(&n_poset(), &n_poset().dual()).unwrap());
    }

    #[test]
    fn all_automorphisms_of_an_antichain() {
        assert_eq!(all_embeddings(&a(3), &a(3), 12).unwrap().len(), 6);
        assert_eq!(all_embeddings(&c(3), &c(3), 12).unwrap().len(), 1);
        assert_eq!(all_embeddings(&c(2), &c(4), 12).unwrap().len(), 6);
    }

    #[test]
    fn labelled_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_posets(n, false).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 3, 19, 219, 4231]);
        assert_eq!(enumerate_posets_by_relation_scan(3).unwrap().len(), 19);
        assert!(enumerate_posets(7, false).is_err());
    }

    #[test]
    fn unlabelled_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_posets(n, true).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
    }

    #[test]
    fn canonical_codes_are_invariant() {
        let p = n_poset();
        let q = p.relabel(&[3, 0, 2, 1]);
        assert_eq!(canonical_code(&p), canonical_code(&q));
        assert_ne!(canonical_code(&c(4)), canonical_code(&p));
    }

    #[test]
    fn index_maps() {
        let two = linear_sum(&[a(2), a(2)]).unwrap();
        let three = linear_sum(&[a(2), a(2), a(2)]).unwrap();
        let pv = LinearSumView::new(two.clone(), vec![vec![0, 1], vec![2, 3]]).unwrap();
        let qv = LinearSumView::new(three.clone(), vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();

        let id = induced_index_map(&Embedding::identity(4), &pv, &pv).unwrap();
        assert_eq!(id.map, vec![0, 1]);
        assert!(id.is_chain_isomorphism());

        let f = find_embedding(&two, &three).unwrap().unwrap();
        let m = induced_index_map(&f, &pv, &qv).unwrap();
        assert_eq!(m.map, vec![0, 1]);
        assert!(m.injective && m.order_preserving && !m.surjective);

        let chains = linear_sum(&[c(2), a(2)]).unwrap();
        let bad = LinearSumView::new(chains, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(
            induced_index_map(&Embedding::identity(4), &bad, &bad),
            Err(Error::NotCcgc(0))
        );
        assert!(LinearSumView::new(two, vec![vec![0, 2], vec![1, 3]]).is_err());
    }
}
