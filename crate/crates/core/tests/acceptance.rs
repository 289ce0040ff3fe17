// Acceptance suite. Runs without the libtest harness so that every criterion
// prints exactly one PASS/FAIL line; exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use nefree::classify::{canonical_chain_antichain_form, smallest_context};
use nefree::construct::{cf_linear_window, cf_window, family_pairwise_noniso, BitPattern, TruncationWindow};
use nefree::decomposition::{decomposition_tree, gallai_quotient};
use nefree::embedding::{
    all_embeddings, enumerate_posets, enumerate_posets_by_relation_scan, find_embedding_capped, induced_index_map,
    is_isomorphic, Embedding, LinearSumView,
};
use nefree::order::{Graph, Poset};
use nefree::substitution::{graph_substitute, linear_sum, poset_substitute, sum_labelled_chain, LabelledChain, Sign};
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;

fn labelled(n: usize) -> Vec<Poset> {
    enumerate_posets(n, false).expect("n within the enumeration cap")
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    for n in 1..=5 {
        let posets = labelled(n);
        if n == 5 && posets.len() != 4231 {
            return Err(format!("{} labelled posets on 5 points", posets.len()));
        }
        for p in &posets {
            let nfree = !has_n_brute(p);
            let cograph = !has_p4_brute(&p.comparability_graph());
            if nfree != cograph || p.is_nfree() != nfree || p.comparability_graph().is_cograph() != cograph {
                return Err(format!("discrepancy on {p:?}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} posets, 0 discrepancies"))
}

fn criterion_2() -> Outcome {
    let (mut prime, mut checked) = (0, 0);
    for n in 3..=5 {
        for p in labelled(n) {
            checked += 1;
            if only_trivial(n, &modules_brute(&p.to_structure())) {
                prime += 1;
                if !has_n_brute(&p) {
                    return Err(format!("indecomposable poset without N: {p:?}"));
                }
            }
        }
    }
    Ok(format!("{checked} posets, {prime} indecomposable, all embed N"))
}

fn quotients_trivial(p: &Poset) -> Result<usize, String> {
    let b = p.to_structure();
    let tree = decomposition_tree(&b).map_err(|e| e.to_string())?;
    let mut count = 0;
    for node in tree.nodes.iter().filter(|n| !n.is_leaf()) {
        let q = gallai_quotient(&b, &node.points).map_err(|e| e.to_string())?;
        if !only_trivial(q.structure.len(), &strong_modules_brute(&q.structure)) {
            return Err(format!("quotient of {:?} in {p:?} has a non-trivial strong module", node.points));
        }
        count += 1;
    }
    Ok(count)
}

fn criterion_3() -> Outcome {
    let mut quotients = 0;
    for n in 1..=5 {
        for p in labelled(n) {
            quotients += quotients_trivial(&p)?;
        }
    }
    let mut rng = rng(3);
    for _ in 0..500 {
        let n = rng.gen_range(1..=9);
        quotients += quotients_trivial(&random_poset(&mut rng, n))?;
    }
    Ok(format!("{quotients} quotients, all strong modules trivial"))
}

fn criterion_4() -> Outcome {
    let mut trees = 0;
    for n in 1..=5 {
        for p in labelled(n).into_iter().filter(|p| !has_n_brute(p)) {
            let tree = decomposition_tree(&p.to_structure()).map_err(|e| e.to_string())?;
            for node in &tree.nodes {
                if let (Some(v), Some(parent)) = (node.value, node.parent) {
                    if tree.nodes[parent].value == Some(v) {
                        return Err(format!("value repeats below {:?} in {p:?}", tree.nodes[parent].points));
                    }
                }
            }
            if !tree.check_dense_valuation() || tree.has_prime() {
                return Err(format!("tree of {p:?} is not densely valued"));
            }
            trees += 1;
        }
    }
    Ok(format!("{trees} N-free trees alternate"))
}

fn criterion_5() -> Outcome {
    let mut rng = rng(5);
    let mut outcomes = [0usize; 2];
    for _ in 0..200 {
        let k = rng.gen_range(1..=4);
        let pick = |rng: &mut TestRng, n: usize| {
            if rng.gen_bool(0.5) {
                random_cograph(rng, n)
            } else {
                random_graph(rng, n)
            }
        };
        let context = pick(&mut rng, k);
        let blocks: Vec<Graph> = (0..k)
            .map(|_| {
                let n = rng.gen_range(1..=4);
                pick(&mut rng, n)
            })
            .collect();
        let g = graph_substitute(&context, &blocks).map_err(|e| e.to_string())?;
        let lhs = !has_p4_brute(&g);
        let rhs = !has_p4_brute(&context) && blocks.iter().all(|h| !has_p4_brute(h));
        if lhs != rhs || g.is_cograph() != lhs {
            return Err(format!("graph substitution disagrees: {context:?} with {blocks:?}"));
        }
        outcomes[usize::from(lhs)] += 1;
    }
    let mut poset_outcomes = [0usize; 2];
    for _ in 0..200 {
        let k = rng.gen_range(1..=4);
        let pick = |rng: &mut TestRng, n: usize| {
            if rng.gen_bool(0.4) {
                random_nfree(rng, n)
            } else {
                random_poset(rng, n)
            }
        };
        let context = pick(&mut rng, k);
        let blocks: Vec<Poset> = (0..k)
            .map(|_| {
                let n = rng.gen_range(1..=6);
                pick(&mut rng, n)
            })
            .collect();
        let p = poset_substitute(&context, &blocks).map_err(|e| e.to_string())?;
        let lhs = !has_n_brute(&p);
        let rhs = !has_n_brute(&context) && blocks.iter().all(|b| !has_n_brute(b));
        if lhs != rhs || p.is_nfree() != lhs {
            return Err(format!("poset substitution disagrees: {context:?} with {blocks:?}"));
        }
        poset_outcomes[usize::from(lhs)] += 1;
    }
    if outcomes.contains(&0) || poset_outcomes.contains(&0) {
        return Err(format!("one side never occurred: graphs {outcomes:?}, posets {poset_outcomes:?}"));
    }
    Ok(format!(
        "graphs {}/{} cograph, posets {}/{} N-free, both directions hold",
        outcomes[1], 200, poset_outcomes[1], 200
    ))
}

fn random_ccgc(rng: &mut TestRng) -> Poset {
    loop {
        let n = rng.gen_range(1..=4);
        let p = if rng.gen_bool(0.5) {
            random_poset(rng, n)
        } else {
            Poset::antichain(n).unwrap()
        };
        if p.has_ccgc() {
            return p;
        }
    }
}

fn summands_of(p: &Poset) -> Vec<Vec<usize>> {
    let cg = p.comparability_graph();
    let mut co = cg.complement().components();
    co.sort_by(|a, b| {
        if p.lt(a[0], b[0]) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    co
}

fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    for round in 0..200 {
        let k = rng.gen_range(1..=5);
        let blocks: Vec<Poset> = (0..k).map(|_| random_ccgc(&mut rng)).collect();
        let q = shuffle_poset(&mut rng, &linear_sum(&blocks).unwrap());
        let qv = LinearSumView::new(q.clone(), summands_of(&q)).map_err(|e| e.to_string())?;
        if qv.summands.len() != k {
            return Err(format!("round {round}: expected {k} summands"));
        }

        // A random induced subposet, embedded by the search oracle.
        let mut pts: Vec<usize> = (0..q.len()).collect();
        pts.shuffle(&mut rng);
        pts.truncate(rng.gen_range(1..=q.len()));
        let (sub, _) = q.induced(&pts).unwrap();
        let p = shuffle_poset(&mut rng, &sub);
        let f = find_embedding_capped(&p, &q, 64)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("round {round}: no embedding found"))?;
        let pv = LinearSumView::new(p.clone(), summands_of(&p)).map_err(|e| e.to_string())?;
        let hat = induced_index_map(&f, &pv, &qv).map_err(|e| format!("round {round}: {e}"))?;
        if !hat.order_preserving {
            return Err(format!("round {round}: index map {:?} not an order embedding", hat.map));
        }

        // Isomorphisms give chain isomorphisms.
        let mut perm: Vec<usize> = (0..q.len()).collect();
        perm.shuffle(&mut rng);
        let q2 = q.relabel(&perm);
        let iso = Embedding { map: perm.clone() };
        let q2v = LinearSumView::new(q2.clone(), summands_of(&q2)).map_err(|e| e.to_string())?;
        if !iso.is_valid(&q, &q2) {
            let inverse = (0..q.len()).map(|x| perm.iter().position(|&y| y == x).unwrap()).collect();
            let iso = Embedding { map: inverse };
            if !iso.is_valid(&q, &q2) {
                return Err(format!("round {round}: relabelling is not an isomorphism"));
            }
            let hat = induced_index_map(&iso, &qv, &q2v).map_err(|e| e.to_string())?;
            if !hat.is_chain_isomorphism() {
                return Err(format!("round {round}: isomorphism gives {:?}", hat.map));
            }
        } else {
            let hat = induced_index_map(&iso, &qv, &q2v).map_err(|e| e.to_string())?;
            if !hat.is_chain_isomorphism() {
                return Err(format!("round {round}: isomorphism gives {:?}", hat.map));
            }
        }
    }
    Ok("200 embeddings and 200 isomorphisms, index maps well defined and monotone".into())
}

fn round_trip(p: &Poset) -> Result<(), String> {
    let form = canonical_chain_antichain_form(p).map_err(|e| e.to_string())?;
    let q = form.to_expr().eval().map_err(|e| e.to_string())?;
    if !form.reproduces(p).map_err(|e| e.to_string())? || !is_isomorphic(&q, p).unwrap_or(false) {
        return Err(format!("{} does not reproduce {p:?}", form.to_expr()));
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let mut exhaustive = 0;
    for n in 1..=5 {
        for p in labelled(n).into_iter().filter(|p| !has_n_brute(p)) {
            round_trip(&p)?;
            exhaustive += 1;
        }
    }
    let mut rng = rng(7);
    for _ in 0..300 {
        let n = rng.gen_range(1..=10);
        round_trip(&random_nfree(&mut rng, n))?;
    }
    let mut cographs = 0;
    for n in 1..=6 {
        for g in all_graphs(n).filter(|g| !has_p4_brute(g)) {
            let sc = smallest_context(&g).map_err(|e| e.to_string())?;
            let best = min_homogeneous_partition(&g);
            if sc.blocks.len() != best || !sc.mergeable_pairs().is_empty() {
                return Err(format!("greedy gives {} blocks, optimum {best}: {g:?}", sc.blocks.len()));
            }
            cographs += 1;
        }
    }
    Ok(format!(
        "{exhaustive} exhaustive + 300 random round trips; {cographs} cographs minimal"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = rng(8);
    let mut maps = 0;
    for i in 0..50 {
        let n = rng.gen_range(2..=7);
        let p = random_nfree(&mut rng, n);
        let q = canonical_chain_antichain_form(&p).map_err(|e| e.to_string())?.to_expr().eval().unwrap();
        let form = canonical_chain_antichain_form(&q).map_err(|e| e.to_string())?;
        let selfs = all_embeddings(&q, &q, 16).map_err(|e| e.to_string())?;
        if selfs.is_empty() {
            return Err(format!("instance {i}: identity missing"));
        }
        for f in &selfs {
            if !form.respected_by(&f.map) {
                return Err(format!("instance {i}: {:?} breaks {}", f.map, form.to_expr()));
            }
        }
        maps += selfs.len();
    }
    Ok(format!("50 posets, {maps} self-embeddings respect their forms"))
}

fn family_check(
    name: &str,
    unit: &LabelledChain,
    build: fn(&TruncationWindow, &BitPattern) -> nefree::Result<LabelledChain>,
) -> Result<String, String> {
    let cap = 128;
    let window = TruncationWindow::periodic(unit, 3).map_err(|e| e.to_string())?;
    let deeper = TruncationWindow::periodic(unit, 4).map_err(|e| e.to_string())?;
    if window.anchors().len() != 3 && name == "general" {
        return Err("base must carry 3 anchors".into());
    }
    let patterns = BitPattern::all(3);
    let windows: Vec<LabelledChain> = patterns.iter().map(|f| build(&window, f)).collect::<nefree::Result<_>>().map_err(|e| e.to_string())?;
    let report = family_pairwise_noniso(&windows, None, cap).map_err(|e| e.to_string())?;
    if !report.all_pairs_noniso() {
        return Err(format!("{name}: isomorphic pair in {:?}", report.noniso));
    }
    if windows.iter().any(|w| !sum_labelled_chain(w).is_nfree()) {
        return Err(format!("{name}: window-sum embeds N"));
    }
    let mut embeds = 0;
    for (f, w) in patterns.iter().zip(&windows) {
        let small = sum_labelled_chain(w);
        for bit in [false, true] {
            let big = sum_labelled_chain(&build(&deeper, &f.extended(bit)).map_err(|e| e.to_string())?);
            if find_embedding_capped(&small, &big, cap).map_err(|e| e.to_string())?.is_none() {
                return Err(format!("{name}: depth 3 pattern {f} misses depth 4 pattern {}", f.extended(bit)));
            }
            embeds += 1;
        }
    }
    Ok(format!("{name}: 28 pairs non-isomorphic, {embeds} depth embeddings"))
}

fn criterion_9() -> Outcome {
    let general = LabelledChain::new(vec![
        (Poset::antichain(5).unwrap(), Sign::Zero),
        (Poset::chain(5).unwrap(), Sign::Minus),
    ])
    .unwrap();
    let linear = LabelledChain::new(vec![
        (Poset::chain(1).unwrap(), Sign::Minus),
        (Poset::antichain(3).unwrap(), Sign::Minus),
    ])
    .unwrap();
    let a = family_check("general", &general, cf_window)?;
    let b = family_check("linear", &linear, cf_linear_window)?;

    // Unmodified hosts with one extra unit per inserted gadget.
    let host = TruncationWindow::periodic(&general, 6).unwrap();
    let window = TruncationWindow::periodic(&general, 3).unwrap();
    let windows: Vec<LabelledChain> = BitPattern::all(3).iter().map(|f| cf_window(&window, f).unwrap()).collect();
    let report = family_pairwise_noniso(&windows, Some(&host.base), 128).map_err(|e| e.to_string())?;
    if !report.all_embed() {
        return Err("a general window-sum misses the unmodified host".into());
    }
    Ok(format!("{a}; {b}; all embed in the unmodified 6-unit host"))
}

fn criterion_10() -> Outcome {
    let expected = [1, 3, 19, 219, 4231];
    for (n, &want) in (1..=5).zip(&expected) {
        let by_points: BTreeSet<Vec<bool>> = labelled(n).iter().map(Poset::relation_bits).collect();
        let by_scan: BTreeSet<Vec<bool>> =
            enumerate_posets_by_relation_scan(n).unwrap().iter().map(Poset::relation_bits).collect();
        if by_points.len() != want || by_scan != by_points {
            return Err(format!("n={n}: {} by extension, {} by scan, want {want}", by_points.len(), by_scan.len()));
        }
    }
    Ok("1, 3, 19, 219, 4231 from both paths".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Option<u64>); 10] = [
        ("N-free iff cograph comparability graph", criterion_1, Some(60)),
        ("indecomposable posets embed N", criterion_2, Some(120)),
        ("Gallai quotients have trivial strong modules", criterion_3, None),
        ("dense valuation of N-free trees", criterion_4, None),
        ("substitution preserves cographs and N-freeness", criterion_5, None),
        ("embeddings induce monotone summand maps", criterion_6, None),
        ("canonical form round trip and context minimality", criterion_7, None),
        ("self-embeddings respect canonical forms", criterion_8, None),
        ("bit-pattern families", criterion_9, Some(120)),
        ("enumeration counts from two paths", criterion_10, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(msg), Some(secs)) if took > Duration::from_secs(*secs) => {
                Err(format!("{msg}, but took {took:.1?} (limit {secs} s)"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{took:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} [{took:.2?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
