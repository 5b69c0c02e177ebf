//! Strategies, brute-force oracles and property bodies shared by the
//! property suite and the acceptance harness.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use zdposet::complex::{extend_independent, independence_complex};
use zdposet::poset::{generate, Catalog};
use zdposet::{Graph, Poset, ZdGraph};

pub type Outcome = Result<(), TestCaseError>;

pub fn boolean_catalog() -> Vec<Catalog> {
    let mut out: Vec<Catalog> = (1..=5).map(Catalog::BooleanLattice).collect();
    out.extend((2..=6).map(Catalog::AtomCoatom));
    out
}

pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut StdRng::seed_from_u64(seed));
    perm
}

/// Isomorphic copy in which element `i` gets id `perm[i]`.
pub fn shuffled(p: &Poset, perm: &[usize]) -> Poset {
    let n = p.len();
    let mut inv = vec![0; n];
    let mut names = vec![String::new(); n];
    for i in 0..n {
        inv[perm[i]] = i;
        names[perm[i]] = p.name(i).to_string();
    }
    Poset::from_fn(names, |a, b| p.leq(inv[a], inv[b])).expect("relabeled poset")
}

/// A Boolean catalog poset with its element ids shuffled.
pub fn boolean_poset(index: usize, seed: u64) -> Poset {
    let catalog = boolean_catalog();
    let p = generate(&catalog[index % catalog.len()]).expect("catalog entry");
    shuffled(&p, &random_permutation(p.len(), seed))
}

pub fn boolean_params() -> impl Strategy<Value = (usize, u64)> {
    (0..boolean_catalog().len(), any::<u64>())
}

/// Random poset from a DAG on `n` elements whose arcs go from lower to higher id.
pub fn random_poset(n: usize, arcs: &[bool], bounded: bool) -> Poset {
    let mut names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut pairs = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if arcs.get(k).copied().unwrap_or(false) {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    if bounded {
        names.push("bot".into());
        names.push("top".into());
        for i in 0..n {
            pairs.push((n, i));
            pairs.push((i, n + 1));
        }
        pairs.push((n, n + 1));
    }
    Poset::from_pairs(names, pairs).expect("acyclic by construction")
}

pub fn poset_params() -> impl Strategy<Value = (usize, Vec<bool>, bool)> {
    (1usize..=9, prop::collection::vec(prop::bool::weighted(0.35), 36), any::<bool>())
}

pub fn graph_params(max_n: usize) -> impl Strategy<Value = (usize, Vec<bool>)> {
    (0..=max_n, prop::collection::vec(any::<bool>(), max_n * max_n.saturating_sub(1) / 2))
}

pub fn random_graph(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::with_vertices(n);
    let mut k = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if bits.get(k).copied().unwrap_or(false) {
                g.add_edge(u, v);
            }
            k += 1;
        }
    }
    g
}

/// `A^u` by definition.
pub fn naive_upper(p: &Poset, set: &[usize]) -> Vec<usize> {
    (0..p.len()).filter(|&x| set.iter().all(|&a| p.leq(a, x))).collect()
}

/// `A^ℓ` by definition.
pub fn naive_lower(p: &Poset, set: &[usize]) -> Vec<usize> {
    (0..p.len()).filter(|&x| set.iter().all(|&a| p.leq(x, a))).collect()
}

/// Maximal independent sets by checking every vertex subset (ascending lists, sorted).
pub fn brute_facets(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    assert!(n <= 20);
    let adj: Vec<u32> = (0..n).map(|v| (0..n).filter(|&w| g.adjacent(v, w)).fold(0u32, |m, w| m | (1 << w))).collect();
    let independent = |s: u32| (0..n).all(|v| s & (1 << v) == 0 || adj[v] & s == 0);
    let mut out: Vec<Vec<usize>> = (0u32..(1u32 << n))
        .filter(|&s| independent(s))
        .filter(|&s| (0..n).all(|v| s & (1 << v) != 0 || !independent(s | (1 << v))))
        .map(|s| (0..n).filter(|&v| s & (1 << v) != 0).collect())
        .collect();
    out.sort();
    out
}

fn ids_from_bits(n: usize, bits: &[bool]) -> Vec<usize> {
    (0..n).filter(|&i| bits.get(i).copied().unwrap_or(false)).collect()
}

pub fn galois_laws(params: (usize, Vec<bool>, bool), a_bits: Vec<bool>, b_bits: Vec<bool>) -> Outcome {
    let (n, arcs, bounded) = params;
    let p = random_poset(n, &arcs, bounded);
    let a = ids_from_bits(p.len(), &a_bits);
    let b: Vec<usize> = (0..p.len()).filter(|&i| a.contains(&i) || b_bits.get(i).copied().unwrap_or(false)).collect();
    let a_set = p.set(a.iter().copied());
    let b_set = p.set(b.iter().copied());

    let a_u = p.upper_cone(&a_set);
    prop_assert_eq!(a_u.ids(), naive_upper(&p, &a));
    prop_assert_eq!(p.lower_cone(&a_set).ids(), naive_lower(&p, &a));
    let a_ul = p.lower_cone(&a_u);
    prop_assert!(a_set.is_subset(&a_ul), "A ⊄ A^uℓ");
    prop_assert_eq!(p.upper_cone(&a_ul).ids(), a_u.ids(), "A^u != A^uℓu");
    prop_assert!(p.upper_cone(&b_set).is_subset(&a_u), "A ⊆ B but B^u ⊄ A^u");
    let a_l = p.lower_cone(&a_set);
    prop_assert!(a_set.is_subset(&p.upper_cone(&a_l)), "A ⊄ A^ℓu");
    Ok(())
}

pub fn unique_complementation(index: usize, seed: u64) -> Outcome {
    let p = boolean_poset(index, seed);
    prop_assert!(p.is_boolean());
    for x in 0..p.len() {
        let comps = p.complements_of(x).unwrap();
        prop_assert_eq!(comps.len(), 1, "{} has {} complements", p.name(x), comps.len());
        let c = comps.iter().next().unwrap();
        prop_assert_eq!(p.pseudocomplement_of(x).unwrap(), Some(c));
    }
    let g = ZdGraph::build(&p).unwrap();
    prop_assert!(zdposet::zdg::check_unique_complementation(&p, &g).unwrap().passed());
    prop_assert!(zdposet::zdg::check_atom_end_lemma(&p, &g).unwrap().passed());
    Ok(())
}

pub fn weight_sum(index: usize, seed: u64) -> Outcome {
    let p = boolean_poset(index, seed);
    let total = p.total_weight().unwrap();
    for x in 0..p.len() {
        let c = p.unique_complement(x).unwrap().unwrap();
        prop_assert_eq!(p.weight(x).unwrap() + p.weight(c).unwrap(), total);
    }
    Ok(())
}

pub fn strict_monotonicity(index: usize, seed: u64) -> Outcome {
    let p = boolean_poset(index, seed);
    let w = p.weights().unwrap();
    for a in 0..p.len() {
        for b in 0..p.len() {
            if p.lt(a, b) {
                prop_assert!(w[a] < w[b], "{} < {} but weights {} >= {}", p.name(a), p.name(b), w[a], w[b]);
            }
        }
    }
    Ok(())
}

/// Adjacent vertices whose weights add up to `wt(P)` are complements.
pub fn complementary_weights_force_complements(index: usize, seed: u64) -> Outcome {
    let p = boolean_poset(index, seed);
    let g = ZdGraph::build(&p).unwrap();
    let total = p.total_weight().unwrap();
    for (u, v) in g.edges() {
        let (a, b) = (g.element(u), g.element(v));
        if p.weight(a).unwrap() + p.weight(b).unwrap() == total {
            prop_assert_eq!(p.unique_complement(a).unwrap(), Some(b));
        }
    }
    Ok(())
}

pub fn extension_reaches_half(index: usize, seed: u64, picks: Vec<usize>) -> Outcome {
    let p = boolean_poset(index, seed);
    let g = ZdGraph::build(&p).unwrap();
    let n = g.vertex_count();
    let mut independent: Vec<usize> = Vec::new();
    if n > 0 {
        for pick in picks {
            let v = pick % n;
            if !independent.contains(&v) && independent.iter().all(|&w| !g.adjacent(v, w)) {
                independent.push(v);
            }
        }
    }
    let facet = extend_independent(&p, &g, &independent).unwrap();
    prop_assert_eq!(facet.len() * 2, n);
    prop_assert!(g.is_maximal_independent(&facet));
    prop_assert!(independent.iter().all(|v| facet.contains(v)));
    Ok(())
}

pub fn facets_match_brute_force(params: (usize, Vec<bool>)) -> Outcome {
    let g = random_graph(params.0, &params.1);
    let complex = independence_complex(&g, 40).unwrap();
    let mut facets = complex.facets().to_vec();
    facets.sort();
    prop_assert_eq!(facets, brute_facets(&g));
    Ok(())
}

pub fn betti_invariant_under_relabeling(params: (usize, Vec<bool>), seed: u64) -> Outcome {
    let g = random_graph(params.0, &params.1);
    let perm = random_permutation(g.vertex_count(), seed);
    let before = independence_complex(&g, 40).unwrap().simplicial().reduced_betti(20).unwrap();
    let after = independence_complex(&g.permuted(&perm), 40).unwrap().simplicial().reduced_betti(20).unwrap();
    prop_assert_eq!(before, after);
    Ok(())
}
