//! Graph and poset substitution, direct and linear sums, and finite
//! labelled-chain sums.

use std::fmt;
use std::ops::Range;

use crate::order::{Graph, Poset};
use crate::{Error, Result};

/// Points of block `v` occupy `ranges[v]` in a substituted structure.
pub fn block_ranges(sizes: impl IntoIterator<Item = usize>) -> Vec<Range<usize>> {
    let mut start = 0;
    sizes
        .into_iter()
        .map(|len| {
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}

fn owner_table(ranges: &[Range<usize>]) -> Vec<usize> {
    ranges
        .iter()
        .enumerate()
        .flat_map(|(v, r)| r.clone().map(move |_| v))
        .collect()
}

/// `K[H_v / v]`: blocks laid out consecutively in context order.
pub fn graph_substitute(context: &Graph, blocks: &[Graph]) -> Result<Graph> {
    if blocks.len() != context.len() {
        return Err(Error::Arity {
            expected: context.len(),
            got: blocks.len(),
        });
    }
    let ranges = block_ranges(blocks.iter().map(Graph::len));
    let owner = owner_table(&ranges);
    Ok(Graph::from_fn(owner.len(), |x, y| {
        let (u, v) = (owner[x], owner[y]);
        if u == v {
            blocks[u].adjacent(x - ranges[u].start, y - ranges[u].start)
        } else {
            context.adjacent(u, v)
        }
    }))
}

/// `Q[P_v / v]`: blocks laid out consecutively in context order.
pub fn poset_substitute(context: &Poset, blocks: &[Poset]) -> Result<Poset> {
    if blocks.len() != context.len() {
        return Err(Error::Arity {
            expected: context.len(),
            got: blocks.len(),
        });
    }
    let ranges = block_ranges(blocks.iter().map(Poset::len));
    let owner = owner_table(&ranges);
    Poset::from_relation(owner.len(), |x, y| {
        let (u, v) = (owner[x], owner[y]);
        if u == v {
            blocks[u].lt(x - ranges[u].start, y - ranges[u].start)
        } else {
            context.lt(u, v)
        }
    })
}

pub fn direct_sum(blocks: &[Poset]) -> Result<Poset> {
    let n = blocks.len();
    if n == 0 {
        return Err(Error::Arity { expected: 1, got: 0 });
    }
    poset_substitute(&Poset::antichain(n)?, blocks)
}

/// Blocks stacked bottom to top.
pub fn linear_sum(blocks: &[Poset]) -> Result<Poset> {
    let n = blocks.len();
    if n == 0 {
        return Err(Error::Arity { expected: 1, got: 0 });
    }
    poset_substitute(&Poset::chain(n)?, blocks)
}

/// Relation carried by an index of a labelled chain towards every later index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// Block lies below every later block.
    Minus,
    /// Block is incomparable to every later block.
    Zero,
    /// Block lies above every later block.
    Plus,
}

impl Sign {
    pub fn from_i8(v: i8) -> Option<Sign> {
        match v {
            -1 => Some(Sign::Minus),
            0 => Some(Sign::Zero),
            1 => Some(Sign::Plus),
            _ => None,
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Minus => -1,
            Sign::Zero => 0,
            Sign::Plus => 1,
        }
    }

    pub fn is_linear(self) -> bool {
        self != Sign::Zero
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_i8())
    }
}

/// The index poset on `0..r.len()`: for `i < j`, `i ⊥ j` when `r[i]` is
/// zero, `i` below `j` when it is minus and above `j` when it is plus.
pub fn q_i_r(r: &[Sign]) -> Result<Poset> {
    Poset::from_relation(r.len(), |a, b| {
        if a < b {
            r[a] == Sign::Minus
        } else {
            a > b && r[b] == Sign::Plus
        }
    })
}

/// A finite chain of indices, ascending, each labelled with a block and a sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledChain {
    labels: Vec<(Poset, Sign)>,
}

impl LabelledChain {
    pub fn new(labels: Vec<(Poset, Sign)>) -> Result<LabelledChain> {
        if labels.is_empty() {
            return Err(Error::Empty);
        }
        Ok(LabelledChain { labels })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[(Poset, Sign)] {
        &self.labels
    }

    pub fn block(&self, i: usize) -> &Poset {
        &self.labels[i].0
    }

    pub fn sign(&self, i: usize) -> Sign {
        self.labels[i].1
    }

    pub fn signs(&self) -> Vec<Sign> {
        self.labels.iter().map(|(_, s)| *s).collect()
    }

    pub fn blocks(&self) -> Vec<Poset> {
        self.labels.iter().map(|(p, _)| p.clone()).collect()
    }

    /// Indices with zero sign.
    pub fn zero_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.sign(i) == Sign::Zero).collect()
    }

    /// Indices with sign ±1.
    pub fn linear_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.sign(i).is_linear()).collect()
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &LabelledChain) -> LabelledChain {
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        LabelledChain { labels }
    }

    /// Point ranges of the blocks inside [`sum_labelled_chain`].
    pub fn block_ranges(&self) -> Vec<Range<usize>> {
        block_ranges(self.labels.iter().map(|(p, _)| p.len()))
    }
}

/// The labelled sum: blocks substituted into `Q^I_r`.
pub fn sum_labelled_chain(chain: &LabelledChain) -> Poset {
    let context = q_i_r(&chain.signs()).expect("index posets are partial orders");
    poset_substitute(&context, &chain.blocks()).expect("one block per index")
}

/// Replaces every index by `k` adjacent copies of its label.
pub fn ordinal_product(k: usize, chain: &LabelledChain) -> Result<LabelledChain> {
    if k == 0 {
        return Err(Error::Precondition("ordinal product with zero copies".into()));
    }
    let labels = chain
        .labels
        .iter()
        .flat_map(|label| std::iter::repeat_n(label.clone(), k))
        .collect();
    Ok(LabelledChain { labels })
}

/// The same labels over the reversed index chain.
pub fn reverse(chain: &LabelledChain) -> LabelledChain {
    LabelledChain {
        labels: chain.labels.iter().rev().cloned().collect(),
    }
}
