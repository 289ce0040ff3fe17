// Random instance generators and brute-force oracles shared by the
// integration tests. The oracles work from definitions only and do not call
// the library algorithms they are used to check.
#![allow(dead_code)]

use nefree::order::{BinaryStructure, Graph, Poset};
use nefree::substitution::{direct_sum, linear_sum};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn shuffle_poset(rng: &mut TestRng, p: &Poset) -> Poset {
    let mut perm: Vec<usize> = (0..p.len()).collect();
    perm.shuffle(rng);
    p.relabel(&perm)
}

/// Random poset: a random DAG along a random linear extension, closed.
pub fn random_poset(rng: &mut TestRng, n: usize) -> Poset {
    let density: f64 = rng.gen_range(0.1..0.7);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    let p = Poset::from_strict_pairs(n, &pairs).unwrap();
    shuffle_poset(rng, &p)
}

fn random_split(rng: &mut TestRng, n: usize) -> Vec<usize> {
    let parts = rng.gen_range(2..=n.min(4));
    let mut sizes = vec![1; parts];
    for _ in parts..n {
        let i = rng.gen_range(0..parts);
        sizes[i] += 1;
    }
    sizes
}

/// Random N-free poset built by direct and linear sums from single points,
/// chains and antichains, with its points shuffled.
pub fn random_nfree(rng: &mut TestRng, n: usize) -> Poset {
    let p = nfree_tree(rng, n);
    shuffle_poset(rng, &p)
}

fn nfree_tree(rng: &mut TestRng, n: usize) -> Poset {
    if n == 1 {
        return Poset::chain(1).unwrap();
    }
    match rng.gen_range(0..10) {
        0 => Poset::chain(n).unwrap(),
        1 => Poset::antichain(n).unwrap(),
        k => {
            let blocks: Vec<Poset> = random_split(rng, n).into_iter().map(|s| nfree_tree(rng, s)).collect();
            if k % 2 == 0 {
                direct_sum(&blocks).unwrap()
            } else {
                linear_sum(&blocks).unwrap()
            }
        }
    }
}

pub fn random_graph(rng: &mut TestRng, n: usize) -> Graph {
    let density: f64 = rng.gen_range(0.2..0.8);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    Graph::new(n, &edges).unwrap()
}

/// Random cograph by disjoint unions and joins, vertices shuffled.
pub fn random_cograph(rng: &mut TestRng, n: usize) -> Graph {
    let p = nfree_tree(rng, n);
    let g = p.comparability_graph();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Graph::from_fn(n, |u, v| g.adjacent(perm[u], perm[v]))
}

/// Induced N by scanning all ordered 4-tuples.
pub fn has_n_brute(p: &Poset) -> bool {
    let n = p.len();
    let inc = |x: usize, y: usize| !p.lt(x, y) && !p.lt(y, x);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                    if distinct && p.lt(a, b) && p.lt(c, b) && p.lt(c, d) && inc(a, c) && inc(a, d) && inc(b, d) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Induced P4 by scanning all ordered 4-tuples.
pub fn has_p4_brute(g: &Graph) -> bool {
    let n = g.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
                    if distinct
                        && g.adjacent(a, b)
                        && g.adjacent(b, c)
                        && g.adjacent(c, d)
                        && !g.adjacent(a, c)
                        && !g.adjacent(a, d)
                        && !g.adjacent(b, d)
                    {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Module test straight from the definition.
pub fn is_module_brute(b: &BinaryStructure, set: &[usize]) -> bool {
    (0..b.len()).filter(|x| !set.contains(x)).all(|x| {
        set.iter().all(|&y| {
            set.iter()
                .all(|&z| b.value(x, y) == b.value(x, z) && b.value(y, x) == b.value(z, x))
        })
    })
}

/// Every non-empty module, as bit masks.
pub fn modules_brute(b: &BinaryStructure) -> Vec<u64> {
    let n = b.len();
    (1u64..1 << n)
        .filter(|&m| {
            let set: Vec<usize> = (0..n).filter(|&i| m >> i & 1 == 1).collect();
            is_module_brute(b, &set)
        })
        .collect()
}

/// Non-empty modules overlapping no other module.
pub fn strong_modules_brute(b: &BinaryStructure) -> Vec<u64> {
    let all = modules_brute(b);
    all.iter()
        .copied()
        .filter(|&m| all.iter().all(|&o| m & o == 0 || m & o == m || m & o == o))
        .collect()
}

/// Only singletons and the whole set.
pub fn only_trivial(n: usize, masks: &[u64]) -> bool {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    masks.iter().all(|&m| m.count_ones() <= 1 || m == full)
}

/// Fewest blocks in a partition of `g` into modules that each induce a
/// clique or an independent set, by scanning every set partition.
pub fn min_homogeneous_partition(g: &Graph) -> usize {
    let n = g.len();
    let b = g.to_structure();
    let homogeneous = |set: &[usize]| {
        let sub = g.induced(set);
        (sub.is_clique() || sub.is_independent()) && is_module_brute(&b, set)
    };
    let mut best = n;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn go(
        x: usize,
        n: usize,
        blocks: &mut Vec<Vec<usize>>,
        best: &mut usize,
        ok: &dyn Fn(&[usize]) -> bool,
    ) {
        if blocks.len() >= *best {
            return;
        }
        if x == n {
            if blocks.iter().all(|blk| ok(blk)) {
                *best = blocks.len();
            }
            return;
        }
        for i in 0..blocks.len() {
            blocks[i].push(x);
            go(x + 1, n, blocks, best, ok);
            blocks[i].pop();
        }
        blocks.push(vec![x]);
        go(x + 1, n, blocks, best, ok);
        blocks.pop();
    }
    go(0, n, &mut blocks, &mut best, &homogeneous);
    best
}

/// Every labelled graph on `n` vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u64..1 << pairs.len()).map(move |m| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| m >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(n, &edges).unwrap()
    })
}
