//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use zdposet::cmcert::{
    boolean_facet, boolean_labeling, find_ordering, is_cohen_macaulay, verify_my_conditions, Ordering, Verdict,
};
use zdposet::complex::independence_complex;
use zdposet::poset::{generate, Catalog};
use zdposet::product::{chain_product, equivalence_suite, predicted_counts, well_covered_verdict};
use zdposet::{parse_poset, Caps, ZdGraph};

type Check = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn boolean_list() -> Vec<Catalog> {
    let mut list: Vec<Catalog> = (2..=5).map(Catalog::BooleanLattice).collect();
    list.extend((3..=6).map(Catalog::AtomCoatom));
    list
}

fn labels(g: &ZdGraph, set: &[usize]) -> BTreeSet<String> {
    set.iter().map(|&v| g.label(v).to_string()).collect()
}

fn ten_element() -> Check {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/ten_element.poset"))
        .map_err(|e| e.to_string())?;
    let p = parse_poset(&text).map_err(|e| e.to_string())?;
    let g = ZdGraph::build(&p).map_err(|e| e.to_string())?;

    let mut expected_edges: BTreeSet<(String, String)> = BTreeSet::new();
    for i in 1..=4 {
        for j in (i + 1)..=4 {
            expected_edges.insert((format!("q{i}"), format!("q{j}")));
        }
        expected_edges.insert((format!("q{i}"), format!("q{i}'")));
    }
    let edges: BTreeSet<(String, String)> =
        g.edges().into_iter().map(|(u, v)| (g.label(u).to_string(), g.label(v).to_string())).collect();
    ensure(g.edge_count() == 10, || format!("{} edges", g.edge_count()))?;
    ensure(edges == expected_edges, || format!("edges {edges:?}"))?;

    let complex = independence_complex(&g, 40).map_err(|e| e.to_string())?;
    let facets: Vec<BTreeSet<String>> = complex.facets().iter().map(|f| labels(&g, f)).collect();
    let listed = [
        ["q1", "q2'", "q3'", "q4'"],
        ["q2", "q1'", "q3'", "q4'"],
        ["q3", "q1'", "q2'", "q4'"],
        ["q4", "q1'", "q2'", "q3'"],
        ["q1'", "q2'", "q3'", "q4'"],
    ];
    let expected: Vec<BTreeSet<String>> = listed.iter().map(|f| f.iter().map(|s| s.to_string()).collect()).collect();
    ensure(facets == expected, || format!("facets {facets:?}"))
}

fn well_covered_boolean() -> Check {
    for cat in boolean_list() {
        let p = generate(&cat).map_err(|e| e.to_string())?;
        let g = ZdGraph::build(&p).map_err(|e| e.to_string())?;
        let complex = independence_complex(&g, 40).map_err(|e| e.to_string())?;
        let wc = complex.is_well_covered().map_err(|e| e.to_string())?;
        let sizes = complex.facet_sizes();
        ensure(wc && sizes == [g.vertex_count() / 2] && g.vertex_count() % 2 == 0, || {
            format!("{cat:?}: facet sizes {sizes:?} for {} vertices", g.vertex_count())
        })?;
        ensure(complex.is_very_well_covered().map_err(|e| e.to_string())?, || {
            format!("{cat:?}: not very well-covered")
        })?;
    }
    Ok(())
}

fn boolean_pipeline() -> Check {
    for cat in boolean_list() {
        let p = generate(&cat).map_err(|e| e.to_string())?;
        let g = ZdGraph::build(&p).map_err(|e| e.to_string())?;
        let strat = boolean_facet(&p, &g).map_err(|e| e.to_string())?;
        let labeled = boolean_labeling(&p, &g, &strat).map_err(|e| e.to_string())?;
        let ordered = match find_ordering(&g, &labeled) {
            Ordering::Ordered(o) => o,
            Ordering::Infeasible { cycle } => return Err(format!("{cat:?}: ordering cycle {cycle:?}")),
        };
        let cert = verify_my_conditions(&g, &ordered).map_err(|e| e.to_string())?;
        ensure(cert.passed(), || format!("{cat:?}: {:?}", cert.conditions))?;
        ensure(cert.h() * 2 == g.vertex_count(), || format!("{cat:?}: h = {}", cert.h()))?;
    }
    Ok(())
}

fn oracle_agreement() -> Check {
    let caps = Caps::default();
    let cm_cases = [
        Catalog::BooleanLattice(2),
        Catalog::BooleanLattice(3),
        Catalog::BooleanLattice(4),
        Catalog::AtomCoatom(4),
        Catalog::MAtoms(3),
    ];
    for cat in cm_cases {
        let p = generate(&cat).map_err(|e| e.to_string())?;
        let g = ZdGraph::build(&p).map_err(|e| e.to_string())?;
        let my = is_cohen_macaulay(&p, &caps).map_err(|e| e.to_string())?;
        let oracle =
            independence_complex(&g, 40).and_then(|c| c.simplicial().reisner(20)).map_err(|e| e.to_string())?;
        ensure(my.verdict == Verdict::Cm && oracle.cohen_macaulay, || {
            format!("{cat:?}: certificate path {:?}, oracle {}", my.verdict, oracle.cohen_macaulay)
        })?;
    }

    let p = generate(&Catalog::ChainProduct(vec![3, 3])).map_err(|e| e.to_string())?;
    let g = ZdGraph::build(&p).map_err(|e| e.to_string())?;
    let my = is_cohen_macaulay(&p, &caps).map_err(|e| e.to_string())?;
    ensure(my.verdict == Verdict::NotCm, || format!("K22: certificate path {:?}", my.verdict))?;
    let side = |v: usize| g.label(v).starts_with("(0,");
    let left: Vec<usize> = (0..g.vertex_count()).filter(|&v| !side(v)).collect();
    let right: Vec<usize> = (0..g.vertex_count()).filter(|&v| side(v)).collect();
    ensure(left.len() == 2 && right.len() == 2, || "K22 parts".into())?;
    for (xs, ys) in [(&left, &right), (&right, &left)] {
        for swap in [false, true] {
            let pairs = if swap { vec![(xs[0], ys[1]), (xs[1], ys[0])] } else { vec![(xs[0], ys[0]), (xs[1], ys[1])] };
            ensure(matches!(find_ordering(&g, &pairs), Ordering::Infeasible { .. }), || {
                format!("K22: matching {pairs:?} could be ordered")
            })?;
        }
    }
    let oracle = independence_complex(&g, 40).and_then(|c| c.simplicial().reisner(20)).map_err(|e| e.to_string())?;
    ensure(!oracle.cohen_macaulay && oracle.witness == Some((vec![], 0)), || {
        format!("K22: oracle {} witness {:?}", oracle.cohen_macaulay, oracle.witness)
    })
}

fn counting() -> Check {
    let single = |alpha: i64, n: u32| alpha.pow(n - 1) * (alpha - 1) - (alpha - 1).pow(n);
    let triple = |alpha: i64, n: u32| {
        3 * ((alpha - 1).pow(2) * alpha.pow(n - 2) - (alpha - 1).pow(n))
            - 2 * ((alpha - 1).pow(3) * alpha.pow(n - 3) - (alpha - 1).pow(n))
    };

    let a = chain_product(&[3, 3, 3]).map_err(|e| e.to_string())?;
    let j1 = a.j_single(0).map_err(|e| e.to_string())?.len();
    let j123 = a.j_triple(0, 1, 2).map_err(|e| e.to_string())?.len();
    ensure(j1 == 10 && j123 == 12, || format!("alpha=3: |J_1| = {j1}, |J_123| = {j123}"))?;
    ensure(single(3, 3) == 10 && triple(3, 3) == 12, || "formulas at alpha=3".into())?;
    let predicted = predicted_counts(&[3, 3, 3]).map_err(|e| e.to_string())?;
    ensure(predicted.singles == [10, 10, 10] && predicted.triple == Some(12), || format!("{predicted:?}"))?;
    let v = well_covered_verdict(&a).map_err(|e| e.to_string())?;
    ensure(!v.well_covered, || "alpha=3 reported well-covered".into())?;

    for n in [3u32, 4] {
        let sizes = vec![2; n as usize];
        let a = chain_product(&sizes).map_err(|e| e.to_string())?;
        let j1 = a.j_single(0).map_err(|e| e.to_string())?.len();
        let j123 = a.j_triple(0, 1, 2).map_err(|e| e.to_string())?.len();
        ensure(j1 == j123 && j1 as i64 == single(2, n) && j123 as i64 == triple(2, n), || {
            format!("alpha=2 n={n}: |J_1| = {j1}, |J_123| = {j123}")
        })?;
        let v = well_covered_verdict(&a).map_err(|e| e.to_string())?;
        ensure(v.well_covered, || format!("alpha=2 n={n} reported not well-covered"))?;
    }
    Ok(())
}

fn equivalence_sweep() -> Check {
    let caps = Caps::default();
    let mut count = 0;
    for a in 2..=4usize {
        for b in a..=4 {
            for c in b..=4 {
                if a * b * c > 64 {
                    continue;
                }
                count += 1;
                let sizes = [a, b, c];
                let analysis = chain_product(&sizes).map_err(|e| e.to_string())?;
                let report = equivalence_suite(&analysis, &caps).map_err(|e| e.to_string())?;
                let expected = Some(sizes.iter().all(|&s| s == 2));
                ensure(report.statements.iter().all(|&s| s == expected), || {
                    format!("{sizes:?}: {:?}", report.statements)
                })?;
                ensure(!report.unverified_by_enumeration, || format!("{sizes:?}: enumeration skipped"))?;
            }
        }
    }
    ensure(count == 10, || format!("{count} instances"))
}

fn run_suite<S, F>(name: &str, strategy: S, test: F) -> Check
where
    S: Strategy,
    F: Fn(S::Value) -> common::Outcome,
{
    let config = Config { cases: 1000, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new(config);
    runner.run(&strategy, test).map_err(|e| format!("{name}: {e}"))
}

fn property_suites() -> Check {
    use common::*;
    let bits = || prop::collection::vec(prop::bool::weighted(0.3), 11);
    run_suite("cone Galois laws", (poset_params(), bits(), bits()), |(p, a, b)| galois_laws(p, a, b))?;
    run_suite("unique complementation", boolean_params(), |(i, s)| unique_complementation(i, s))?;
    run_suite("complement weight sum", boolean_params(), |(i, s)| weight_sum(i, s))?;
    run_suite("strict weight monotonicity", boolean_params(), |(i, s)| strict_monotonicity(i, s))?;
    run_suite("complementary weights on an edge", boolean_params(), |(i, s)| {
        complementary_weights_force_complements(i, s)
    })?;
    run_suite(
        "greedy extension",
        (boolean_params(), prop::collection::vec(any::<usize>(), 0..8)),
        |((i, s), picks)| extension_reaches_half(i, s, picks),
    )?;
    run_suite("facets vs subsets", graph_params(16), facets_match_brute_force)?;
    run_suite("Betti relabeling", (graph_params(10), any::<u64>()), |(g, s)| betti_invariant_under_relabeling(g, s))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("ten-element graph and facets", Duration::from_secs(1), ten_element),
        ("Boolean posets well-covered and very well-covered", Duration::from_secs(30), well_covered_boolean),
        ("Boolean certificate pipeline", Duration::from_secs(30), boolean_pipeline),
        ("certificate path agrees with Reisner oracle", Duration::from_secs(60), oracle_agreement),
        ("product counting", Duration::from_secs(10), counting),
        ("five-statement equivalence sweep", Duration::from_secs(60), equivalence_sweep),
        ("property suites, 1000 cases each", Duration::from_secs(120), property_suites),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result =
            result.and_then(|()| ensure(elapsed <= *limit, || format!("took {:.2?}, limit {:.0?}", elapsed, limit)));
        match result {
            Ok(()) => println!("PASS {} {name} ({:.2?})", i + 1, elapsed),
            Err(msg) => {
                failures += 1;
                println!("FAIL {} {name} ({:.2?}): {msg}", i + 1, elapsed);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
