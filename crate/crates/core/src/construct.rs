//! Named posets, the `A_n` / `B_n` families, and finite windows of the
//! bit-pattern families of labelled chains.
//!
//! A window is an ascending list of labels standing for the top end of a
//! descending (`ω*`) chain, so "lowest" plays the role of "coinitial".

use serde::Serialize;

use crate::embedding::{find_embedding_capped, is_isomorphic_capped};
use crate::expr::Expr;
use crate::order::Poset;
use crate::substitution::{linear_sum, sum_labelled_chain, LabelledChain, Sign};
use crate::{Error, Result};

/// Parses a generator name: `n`, `chain(k)`/`c(k)`, `antichain(k)`/`a(k)`,
/// `A(k)` or `B(k)`.
pub fn gen_named(name: &str) -> Result<Poset> {
    let name = name.trim();
    let (head, arg) = match name.find('(') {
        Some(open) if name.ends_with(')') => (&name[..open], Some(&name[open + 1..name.len() - 1])),
        _ => (name, None),
    };
    let k = match arg {
        Some(text) => Some(
            text.trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(1, format!("bad count in `{name}`")))?,
        ),
        None => None,
    };
    if k == Some(0) {
        return Err(Error::Empty);
    }
    match (head, k) {
        ("n" | "N", None) => Expr::N.eval(),
        ("chain" | "c", Some(k)) => Poset::chain(k),
        ("antichain" | "a", Some(k)) => Poset::antichain(k),
        ("A", Some(k)) => gen_a(k),
        ("B", Some(k)) => gen_b(k),
        _ => Err(Error::parse(1, format!("unknown generator `{name}`"))),
    }
}

/// Linear sum of `n` two-element antichains.
pub fn gen_a(n: usize) -> Result<Poset> {
    if n == 0 {
        return Err(Error::Empty);
    }
    linear_sum(&vec![Poset::antichain(2)?; n])
}

/// `1 + A_n + 1`.
pub fn gen_b(n: usize) -> Result<Poset> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut blocks = vec![Poset::chain(1)?];
    blocks.extend(std::iter::repeat_n(Poset::antichain(2)?, n));
    blocks.push(Poset::chain(1)?);
    linear_sum(&blocks)
}

/// Finite prefix `f(0), f(1), ...` of a map into `{0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitPattern {
    bits: Vec<bool>,
}

impl BitPattern {
    pub fn new(bits: Vec<bool>) -> Result<BitPattern> {
        if bits.is_empty() {
            return Err(Error::Empty);
        }
        Ok(BitPattern { bits })
    }

    /// From a string of `0` and `1` characters.
    pub fn parse(text: &str) -> Result<BitPattern> {
        let bits = text
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse(1, format!("bad bit `{c}` in pattern `{text}`"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        BitPattern::new(bits)
    }

    /// Every pattern of the given length, in binary counting order.
    pub fn all(len: usize) -> Vec<BitPattern> {
        (0..1u32 << len)
            .map(|m| BitPattern {
                bits: (0..len).map(|i| m >> (len - 1 - i) & 1 == 1).collect(),
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bit(&self, n: usize) -> bool {
        self.bits[n]
    }

    pub fn extended(&self, bit: bool) -> BitPattern {
        let mut bits = self.bits.clone();
        bits.push(bit);
        BitPattern { bits }
    }

    /// Gadget size `2 f(n) + 2`.
    fn size(&self, n: usize) -> usize {
        2 * usize::from(self.bits[n]) + 2
    }
}

impl std::fmt::Display for BitPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A finite window of a labelled chain carrying `depth` insertion anchors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationWindow {
    pub base: LabelledChain,
    pub depth: usize,
}

impl TruncationWindow {
    /// Checks that the window carries at least `depth` linear anchors.
    pub fn new(base: LabelledChain, depth: usize) -> Result<TruncationWindow> {
        let available = linear_anchors(&base).len();
        if available < depth {
            return Err(Error::Anchor {
                needed: depth,
                available,
            });
        }
        Ok(TruncationWindow { base, depth })
    }

    /// `units` copies of `unit`, one on top of the other, with every anchor usable.
    pub fn periodic(unit: &LabelledChain, units: usize) -> Result<TruncationWindow> {
        if units == 0 {
            return Err(Error::Empty);
        }
        let mut base = unit.clone();
        for _ in 1..units {
            base = base.concat(unit);
        }
        let depth = linear_anchors(&base).len();
        Ok(TruncationWindow { base, depth })
    }

    /// Parses `"<labelled expression> anchors:<k>"`; without the annotation
    /// every linear position counts.
    pub fn parse(text: &str) -> Result<TruncationWindow> {
        let (expr, depth) = match text.rsplit_once("anchors:") {
            Some((expr, k)) => {
                let k = k
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(1, "bad anchor count"))?;
                (expr, Some(k))
            }
            None => (text, None),
        };
        let base = Expr::parse(expr.trim())?.to_labelled_chain()?;
        let depth = depth.unwrap_or_else(|| linear_anchors(&base).len());
        TruncationWindow::new(base, depth)
    }

    pub fn anchors(&self) -> Vec<usize> {
        linear_anchors(&self.base)
    }
}

fn linear_anchors(chain: &LabelledChain) -> Vec<usize> {
    chain.linear_indices()
}

/// Top positions of the maximal runs of non-trivial blocks.
fn run_tops(chain: &LabelledChain) -> Vec<usize> {
    let big = |i: usize| chain.block(i).len() >= 2;
    (0..chain.len()).filter(|&i| big(i) && (i + 1 == chain.len() || !big(i + 1))).collect()
}

/// The anchors carrying `f`: the lowest `|f|` candidates, with `a_0` the
/// highest of them. Returns `slot[i] = Some(n)` when position `i` is `a_n`.
fn assign_anchors(len: usize, candidates: &[usize], f: &BitPattern) -> Result<Vec<Option<usize>>> {
    if candidates.len() < f.len() {
        return Err(Error::Anchor {
            needed: f.len(),
            available: candidates.len(),
        });
    }
    let mut slot = vec![None; len];
    for (n, &pos) in candidates[..f.len()].iter().rev().enumerate() {
        slot[pos] = Some(n);
    }
    Ok(slot)
}

fn odd_extension(block: &Poset) -> Result<Poset> {
    let k = block.len();
    if k % 2 == 1 || !(block.is_chain() || block.is_antichain()) {
        return Ok(block.clone());
    }
    if block.is_chain() {
        Poset::chain(k + 1)
    } else {
        Poset::antichain(k + 1)
    }
}

/// Inserts above every anchor `a_n` an antichain of size `2f(n)+2` with sign
/// zero, then a chain of the same size with the sign of `a_n`. Even chain and
/// antichain blocks of the window first gain one element, so that the
/// inserted blocks are the only even ones.
pub fn cf_window(window: &TruncationWindow, f: &BitPattern) -> Result<LabelledChain> {
    if f.len() > window.depth {
        return Err(Error::Anchor {
            needed: f.len(),
            available: window.depth,
        });
    }
    let base = &window.base;
    let slot = assign_anchors(base.len(), &window.anchors(), f)?;
    let mut labels = Vec::new();
    for i in 0..base.len() {
        labels.push((odd_extension(base.block(i))?, base.sign(i)));
        if let Some(n) = slot[i] {
            let k = f.size(n);
            labels.push((Poset::antichain(k)?, Sign::Zero));
            labels.push((Poset::chain(k)?, base.sign(i)));
        }
    }
    LabelledChain::new(labels)
}

/// Linear-regime variant: every sign must be `-1`. Maximal runs of
/// non-trivial blocks of length 2 or 4 first gain a trailing `K̄2`; then the
/// context chain of `B_{2f(n)+2}` (singleton, `2f(n)+2` copies of `K̄2`,
/// singleton) is inserted above every anchor. Anchors are the tops of the
/// non-trivial runs, so no gadget splits a run.
pub fn cf_linear_window(window: &TruncationWindow, f: &BitPattern) -> Result<LabelledChain> {
    let base = &window.base;
    if let Some(position) = (0..base.len()).find(|&i| base.sign(i) != Sign::Minus) {
        return Err(Error::Regime {
            position,
            value: base.sign(position).to_i8(),
        });
    }
    let slot = assign_anchors(base.len(), &run_tops(base), f)?;
    let k2 = Poset::antichain(2)?;
    let one = Poset::chain(1)?;
    let mut labels = Vec::new();
    let mut i = 0;
    while i < base.len() {
        if base.block(i).len() < 2 {
            labels.push((base.block(i).clone(), Sign::Minus));
            push_gadget(&mut labels, slot[i], f, &one, &k2);
            i += 1;
            continue;
        }
        let end = (i..base.len()).find(|&j| base.block(j).len() < 2).unwrap_or(base.len());
        for j in i..end {
            labels.push((base.block(j).clone(), Sign::Minus));
        }
        if matches!(end - i, 2 | 4) {
            labels.push((k2.clone(), Sign::Minus));
        }
        push_gadget(&mut labels, slot[end - 1], f, &one, &k2);
        i = end;
    }
    LabelledChain::new(labels)
}

fn push_gadget(labels: &mut Vec<(Poset, Sign)>, slot: Option<usize>, f: &BitPattern, one: &Poset, k2: &Poset) {
    if let Some(n) = slot {
        labels.push((one.clone(), Sign::Minus));
        labels.extend(std::iter::repeat_n((k2.clone(), Sign::Minus), f.size(n)));
        labels.push((one.clone(), Sign::Minus));
    }
}

/// Outcome of the all-pairs comparison of a family of windows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub sizes: Vec<usize>,
    /// `noniso[i][j]` is true when window-sums `i` and `j` are not isomorphic.
    pub noniso: Vec<Vec<bool>>,
    /// Whether each window-sum embeds into the host, when one was given.
    pub embeds_in_host: Option<Vec<bool>>,
}

impl FamilyReport {
    pub fn all_pairs_noniso(&self) -> bool {
        (0..self.noniso.len()).all(|i| (0..self.noniso.len()).all(|j| i == j || self.noniso[i][j]))
    }

    pub fn all_embed(&self) -> bool {
        self.embeds_in_host.as_ref().is_none_or(|v| v.iter().all(|&b| b))
    }
}

/// Sums every window, compares all pairs by the isomorphism oracle and, when
/// `host` is given, checks that each sum embeds into the host's sum.
pub fn family_pairwise_noniso(
    windows: &[LabelledChain],
    host: Option<&LabelledChain>,
    cap: usize,
) -> Result<FamilyReport> {
    let sums: Vec<Poset> = windows.iter().map(sum_labelled_chain).collect();
    if let Some(big) = sums.iter().find(|p| p.len() > cap) {
        return Err(Error::Size { size: big.len(), cap });
    }
    let m = sums.len();
    let mut noniso = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let differ = !is_isomorphic_capped(&sums[i], &sums[j], cap)?;
            noniso[i][j] = differ;
            noniso[j][i] = differ;
        }
    }
    let embeds_in_host = match host {
        Some(h) => {
            let h = sum_labelled_chain(h);
            Some(
                sums.iter()
                    .map(|p| Ok(find_embedding_capped(p, &h, cap)?.is_some()))
                    .collect::<Result<Vec<bool>>>()?,
            )
        }
        None => None,
    };
    Ok(FamilyReport {
        sizes: sums.iter().map(Poset::len).collect(),
        noniso,
        embeds_in_host,
    })
}
