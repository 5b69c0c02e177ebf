//! Cohen–Macaulay certificates for very well-covered graphs.
//!
//! A very well-covered graph on `2h` vertices is Cohen–Macaulay iff its vertices
//! can be relabeled `x_1..x_h, y_1..y_h` such that
//!
//! * (a) `{x_i}` is a minimal vertex cover and `{y_i}` a maximal independent set,
//! * (b) every `x_i -- y_i` is an edge,
//! * (c) `z_i -- x_j` and `y_j -- x_k` force `z_i -- x_k` (distinct `i,j,k`, `z_i ∈ {x_i, y_i}`),
//! * (d) `x_i -- y_j` forbids `x_i -- x_j`,
//! * (e) `x_i -- y_j` implies `i ≤ j`.
//!
//! For Boolean posets the relabeling is built directly from weights; for other
//! posets a bounded search over facets and matchings is used, and graphs that
//! are not very well-covered are handed to the homology oracle.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde_json::{json, Value};

use crate::complex::{independence_complex, IndependenceComplex};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poset::Poset;
use crate::zdg::ZdGraph;
use crate::Caps;

/// Weight strata of a Boolean poset and the facet `B` they assemble.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratification {
    /// Number of atoms.
    pub k: usize,
    /// `(i, B_i)`: elements of weight `k - i`, ascending ids.
    pub strata: Vec<(usize, Vec<usize>)>,
    /// For even `k`: one element per complementary pair of weight `k/2`.
    pub b_hat: Vec<usize>,
    /// `B`, ascending ids.
    pub facet: Vec<usize>,
}

impl Stratification {
    /// Members of `B` in labeling order: `B_1, B_2, …`, then `B-hat`.
    pub fn labeling_order(&self) -> Vec<usize> {
        self.strata.iter().flat_map(|(_, s)| s.iter().copied()).chain(self.b_hat.iter().copied()).collect()
    }
}

fn require_boolean(poset: &Poset) -> Result<()> {
    let check = poset.boolean_check();
    if check.is_boolean() {
        Ok(())
    } else {
        Err(Error::NotBoolean(check.describe(poset)))
    }
}

/// Builds the facet `B`: all elements of weight above `k/2`, plus (for even `k`)
/// the smaller-id member of each complementary pair of weight exactly `k/2`.
pub fn boolean_facet(poset: &Poset, g: &ZdGraph) -> Result<Stratification> {
    require_boolean(poset)?;
    let k = poset.total_weight()?;
    if k < 2 {
        return Err(Error::FewerThanTwoAtoms);
    }
    let weights = poset.weights()?;
    let top = poset.require_top()?;
    let last = if k % 2 == 1 { (k - 1) / 2 } else { (k - 2) / 2 };
    let strata: Vec<(usize, Vec<usize>)> =
        (1..=last).map(|i| (i, (0..poset.len()).filter(|&x| x != top && weights[x] == k - i).collect())).collect();

    let mut b_hat = Vec::new();
    if k % 2 == 0 {
        for x in (0..poset.len()).filter(|&x| weights[x] == k / 2) {
            let comp = poset
                .unique_complement(x)?
                .ok_or_else(|| Error::Internal(format!("{} has no unique complement", poset.name(x))))?;
            if x < comp {
                b_hat.push(x);
            }
        }
    }

    let mut facet: Vec<usize> =
        strata.iter().flat_map(|(_, s)| s.iter().copied()).chain(b_hat.iter().copied()).collect();
    facet.sort_unstable();

    let vertices = facet
        .iter()
        .map(|&e| g.vertex(e).ok_or_else(|| Error::Internal(format!("{} is not a vertex", poset.name(e)))))
        .collect::<Result<Vec<usize>>>()?;
    if !g.is_maximal_independent(&vertices) || 2 * vertices.len() != g.vertex_count() {
        return Err(Error::Internal("weight-stratified set is not a facet of size |V|/2".into()));
    }

    Ok(Stratification { k, strata, b_hat, facet })
}

/// Pairs `(x_i, y_i)` as graph vertices: `y_i` runs through `B` in labeling
/// order and `x_i` is its complement.
pub fn boolean_labeling(poset: &Poset, g: &ZdGraph, strat: &Stratification) -> Result<Vec<(usize, usize)>> {
    strat
        .labeling_order()
        .into_iter()
        .map(|y| {
            let x = poset
                .unique_complement(y)?
                .ok_or_else(|| Error::Internal(format!("{} has no unique complement", poset.name(y))))?;
            let vx = g.vertex(x).ok_or_else(|| Error::Internal(format!("{} is not a vertex", poset.name(x))))?;
            let vy = g.vertex(y).ok_or_else(|| Error::Internal(format!("{} is not a vertex", poset.name(y))))?;
            Ok((vx, vy))
        })
        .collect()
}

/// Status of one condition, with a concrete counterexample on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionStatus {
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub what: String,
    /// 1-based pair indices involved, if any.
    pub indices: Vec<usize>,
    pub vertices: Vec<usize>,
}

impl ConditionStatus {
    fn pass() -> Self {
        ConditionStatus { passed: true, witness: None }
    }

    fn fail(what: &str, indices: Vec<usize>, vertices: Vec<usize>) -> Self {
        ConditionStatus { passed: false, witness: Some(Witness { what: what.to_string(), indices, vertices }) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MyCertificate {
    /// `(x_i, y_i)` in index order.
    pub pairs: Vec<(usize, usize)>,
    /// Conditions (a) through (e).
    pub conditions: [ConditionStatus; 5],
}

impl MyCertificate {
    pub fn h(&self) -> usize {
        self.pairs.len()
    }

    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.passed)
    }

    pub fn cover(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(x, _)| x).collect()
    }

    pub fn independent(&self) -> Vec<usize> {
        self.pairs.iter().map(|&(_, y)| y).collect()
    }

    /// JSON with stable key order; vertices rendered by label.
    pub fn to_json(&self, g: &Graph) -> Value {
        let label = |v: usize| Value::String(g.label(v).to_string());
        let mut conditions = serde_json::Map::new();
        for (name, status) in ["a", "b", "c", "d", "e"].iter().zip(&self.conditions) {
            let entry = match &status.witness {
                None => json!({ "status": "pass" }),
                Some(w) => json!({
                    "status": "fail",
                    "witness": {
                        "what": w.what,
                        "indices": w.indices,
                        "vertices": w.vertices.iter().map(|&v| label(v)).collect::<Vec<_>>(),
                    }
                }),
            };
            conditions.insert(name.to_string(), entry);
        }
        json!({
            "h": self.h(),
            "pairs": self.pairs.iter().enumerate().map(|(i, &(x, y))| json!({
                "index": i + 1,
                "x": label(x),
                "y": label(y),
            })).collect::<Vec<_>>(),
            "conditions": Value::Object(conditions),
        })
    }
}

/// Checks conditions (a)–(e) literally for the ordered pair list.
pub fn verify_my_conditions(g: &Graph, pairs: &[(usize, usize)]) -> Result<MyCertificate> {
    check_partition(g, pairs)?;
    let xs: Vec<usize> = pairs.iter().map(|&(x, _)| x).collect();
    let ys: Vec<usize> = pairs.iter().map(|&(_, y)| y).collect();
    let h = pairs.len();

    let cond_a = if let Some((u, v)) = g.uncovered_edge(&xs) {
        ConditionStatus::fail("x is not a vertex cover: uncovered edge", vec![], vec![u, v])
    } else if let Some(v) = g.redundant_cover_vertex(&xs) {
        ConditionStatus::fail("x is not a minimal vertex cover: removable vertex", vec![], vec![v])
    } else if let Some((u, v)) = g.edge_within(&ys) {
        ConditionStatus::fail("y is not independent: edge", vec![], vec![u, v])
    } else if let Some(v) = g.unblocked_vertex(&ys) {
        ConditionStatus::fail("y is not maximal: addable vertex", vec![], vec![v])
    } else {
        ConditionStatus::pass()
    };

    let cond_b = match (0..h).find(|&i| !g.adjacent(xs[i], ys[i])) {
        Some(i) => ConditionStatus::fail("x_i -- y_i is not an edge", vec![i + 1], vec![xs[i], ys[i]]),
        None => ConditionStatus::pass(),
    };

    let cond_c = match condition_c_violation(g, pairs) {
        Some((i, j, k, z)) => ConditionStatus::fail(
            "z_i -- x_j and y_j -- x_k but not z_i -- x_k",
            vec![i + 1, j + 1, k + 1],
            vec![z, xs[j], ys[j], xs[k]],
        ),
        None => ConditionStatus::pass(),
    };

    let cond_d = match condition_d_violation(g, pairs) {
        Some((i, j)) => {
            ConditionStatus::fail("x_i -- y_j and x_i -- x_j", vec![i + 1, j + 1], vec![xs[i], ys[j], xs[j]])
        }
        None => ConditionStatus::pass(),
    };

    let cond_e = match (0..h).flat_map(|i| (0..i).map(move |j| (i, j))).find(|&(i, j)| g.adjacent(xs[i], ys[j])) {
        Some((i, j)) => ConditionStatus::fail("x_i -- y_j with i > j", vec![i + 1, j + 1], vec![xs[i], ys[j]]),
        None => ConditionStatus::pass(),
    };

    Ok(MyCertificate { pairs: pairs.to_vec(), conditions: [cond_a, cond_b, cond_c, cond_d, cond_e] })
}

fn check_partition(g: &Graph, pairs: &[(usize, usize)]) -> Result<()> {
    let n = g.vertex_count();
    if 2 * pairs.len() != n {
        return Err(Error::PairsDontPartition(format!("{} pairs for {} vertices", pairs.len(), n)));
    }
    let mut seen = vec![false; n];
    for &(x, y) in pairs {
        for v in [x, y] {
            if v >= n {
                return Err(Error::PairsDontPartition(format!("vertex index {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::PairsDontPartition(format!("vertex {} used twice", g.label(v))));
            }
        }
    }
    Ok(())
}

/// First `(i, j, k, z_i)` violating (c), scanning `i, j, k` ascending and `z_i = x_i` before `y_i`.
fn condition_c_violation(g: &Graph, pairs: &[(usize, usize)]) -> Option<(usize, usize, usize, usize)> {
    let h = pairs.len();
    for i in 0..h {
        for z in [pairs[i].0, pairs[i].1] {
            for j in (0..h).filter(|&j| j != i) {
                if !g.adjacent(z, pairs[j].0) {
                    continue;
                }
                for k in (0..h).filter(|&k| k != i && k != j) {
                    if g.adjacent(pairs[j].1, pairs[k].0) && !g.adjacent(z, pairs[k].0) {
                        return Some((i, j, k, z));
                    }
                }
            }
        }
    }
    None
}

fn condition_d_violation(g: &Graph, pairs: &[(usize, usize)]) -> Option<(usize, usize)> {
    let h = pairs.len();
    (0..h)
        .flat_map(|i| (0..h).map(move |j| (i, j)))
        .find(|&(i, j)| g.adjacent(pairs[i].0, pairs[j].1) && g.adjacent(pairs[i].0, pairs[j].0))
}

/// Result of ordering a matching so that condition (e) holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ordering {
    /// The matching, reordered.
    Ordered(Vec<(usize, usize)>),
    /// Indices (into the input matching) of a cycle `c_0 → c_1 → … → c_0`
    /// in the constraint digraph.
    Infeasible { cycle: Vec<usize> },
}

/// Orders `matching` so that `x_p -- y_q` implies `p` comes before `q`.
///
/// The constraint digraph has an arc `p → q` (`p ≠ q`) for every cross edge
/// `x_p -- y_q`. A topological order exists iff the digraph is acyclic; ties
/// are broken by the smaller input index.
pub fn find_ordering(g: &Graph, matching: &[(usize, usize)]) -> Ordering {
    let h = matching.len();
    let arcs: Vec<Vec<usize>> =
        (0..h).map(|p| (0..h).filter(|&q| q != p && g.adjacent(matching[p].0, matching[q].1)).collect()).collect();
    let mut indegree = vec![0usize; h];
    for succ in &arcs {
        for &q in succ {
            indegree[q] += 1;
        }
    }

    let mut ready: BinaryHeap<Reverse<usize>> = (0..h).filter(|&p| indegree[p] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(h);
    while let Some(Reverse(p)) = ready.pop() {
        order.push(p);
        for &q in &arcs[p] {
            indegree[q] -= 1;
            if indegree[q] == 0 {
                ready.push(Reverse(q));
            }
        }
    }

    if order.len() == h {
        return Ordering::Ordered(order.into_iter().map(|p| matching[p]).collect());
    }

    // Every leftover node has a predecessor among the leftovers; walk backwards until a repeat.
    let remaining: Vec<bool> = (0..h).map(|p| indegree[p] > 0).collect();
    let start = (0..h).find(|&p| remaining[p]).expect("cycle exists");
    let mut walk = vec![start];
    let mut position = vec![usize::MAX; h];
    position[start] = 0;
    let mut current = start;
    loop {
        let pred = (0..h)
            .find(|&p| remaining[p] && arcs[p].contains(&current))
            .expect("leftover node has a leftover predecessor");
        if position[pred] != usize::MAX {
            let mut cycle: Vec<usize> = walk[position[pred]..].to_vec();
            cycle.reverse();
            // Rotate so the cycle starts at its smallest index.
            let min_at = cycle.iter().enumerate().min_by_key(|&(_, &c)| c).map(|(i, _)| i).unwrap_or(0);
            cycle.rotate_left(min_at);
            return Ordering::Infeasible { cycle };
        }
        position[pred] = walk.len();
        walk.push(pred);
        current = pred;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Cm,
    NotCm,
    Inconclusive,
}

impl Verdict {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Cm => Some(true),
            Verdict::NotCm => Some(false),
            Verdict::Inconclusive => None,
        }
    }
}

/// How a verdict was reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Evidence {
    /// Certificate from the weight construction on a Boolean poset.
    /// `stratum_order_valid` records whether the raw stratum order already met (e).
    BooleanConstruction { certificate: MyCertificate, stratum_order_valid: bool },
    /// Certificate found by searching facets and matchings.
    SearchFound { certificate: MyCertificate, nodes: u64 },
    /// The search covered every facet and matching without success.
    SearchExhausted { nodes: u64 },
    /// The search hit its node budget.
    SearchBudgetExceeded { nodes: u64 },
    /// Facets of different sizes; Cohen–Macaulay graphs are well-covered.
    NotWellCovered { facet_sizes: Vec<usize> },
    /// Well-covered but not very well-covered: decided by the Reisner oracle.
    Oracle { witness: Option<(Vec<usize>, isize)> },
    /// The oracle or the facet enumeration was above its cap.
    Skipped { reason: String },
}

impl Evidence {
    pub fn path(&self) -> &'static str {
        match self {
            Evidence::BooleanConstruction { .. } => "boolean-construction",
            Evidence::SearchFound { .. } | Evidence::SearchExhausted { .. } | Evidence::SearchBudgetExceeded { .. } => {
                "matching-search"
            }
            Evidence::NotWellCovered { .. } => "not-well-covered",
            Evidence::Oracle { .. } => "reisner-oracle",
            Evidence::Skipped { .. } => "skipped",
        }
    }

    pub fn certificate(&self) -> Option<&MyCertificate> {
        match self {
            Evidence::BooleanConstruction { certificate, .. } | Evidence::SearchFound { certificate, .. } => {
                Some(certificate)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmDecision {
    pub verdict: Verdict,
    pub evidence: Evidence,
}

/// Runs the weight construction end to end on a Boolean poset.
pub fn boolean_certificate(poset: &Poset, g: &ZdGraph) -> Result<(MyCertificate, bool)> {
    let strat = boolean_facet(poset, g)?;
    let labeled = boolean_labeling(poset, g, &strat)?;
    let stratum_order_valid = verify_my_conditions(g, &labeled)?.conditions[4].passed;
    let ordered = match find_ordering(g, &labeled) {
        Ordering::Ordered(o) => o,
        Ordering::Infeasible { cycle } => {
            return Err(Error::Internal(format!("Boolean labeling has an ordering cycle {cycle:?}")))
        }
    };
    let cert = verify_my_conditions(g, &ordered)?;
    if !cert.passed() {
        return Err(Error::Internal(format!("Boolean certificate failed: {:?}", cert.conditions)));
    }
    Ok((cert, stratum_order_valid))
}

/// Decides Cohen–Macaulayness of `Γ(P)`.
///
/// Boolean posets go through the weight construction. Otherwise the facets are
/// enumerated: not well-covered means not CM; very well-covered runs the
/// bounded certificate search; anything else is decided by the Reisner oracle.
pub fn is_cohen_macaulay(poset: &Poset, caps: &Caps) -> Result<CmDecision> {
    let g = ZdGraph::build(poset)?;
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if poset.is_boolean() {
        let (certificate, stratum_order_valid) = boolean_certificate(poset, &g)?;
        return Ok(CmDecision {
            verdict: Verdict::Cm,
            evidence: Evidence::BooleanConstruction { certificate, stratum_order_valid },
        });
    }
    let complex = match independence_complex(&g, caps.max_vertices) {
        Ok(c) => c,
        Err(Error::SizeLimitExceeded { size, cap, .. }) => {
            return Ok(CmDecision {
                verdict: Verdict::Inconclusive,
                evidence: Evidence::Skipped { reason: format!("facet enumeration: {size} vertices > cap {cap}") },
            })
        }
        Err(e) => return Err(e),
    };
    decide_from_complex(&complex, caps)
}

/// The non-Boolean part of [`is_cohen_macaulay`], for any graph.
pub fn decide_from_complex(complex: &IndependenceComplex, caps: &Caps) -> Result<CmDecision> {
    if !complex.is_well_covered()? {
        return Ok(CmDecision {
            verdict: Verdict::NotCm,
            evidence: Evidence::NotWellCovered { facet_sizes: complex.facet_sizes() },
        });
    }
    if complex.is_very_well_covered()? {
        let (verdict, evidence) = match search_certificate(complex, caps.max_search_nodes)? {
            SearchOutcome::Found { certificate, nodes } => {
                (Verdict::Cm, Evidence::SearchFound { certificate: *certificate, nodes })
            }
            SearchOutcome::Exhausted { nodes } => (Verdict::NotCm, Evidence::SearchExhausted { nodes }),
            SearchOutcome::BudgetExceeded { nodes } => {
                (Verdict::Inconclusive, Evidence::SearchBudgetExceeded { nodes })
            }
        };
        return Ok(CmDecision { verdict, evidence });
    }
    match complex.simplicial().reisner(caps.max_homology_vertices) {
        Ok(report) => Ok(CmDecision {
            verdict: if report.cohen_macaulay { Verdict::Cm } else { Verdict::NotCm },
            evidence: Evidence::Oracle { witness: report.witness },
        }),
        Err(Error::SizeLimitExceeded { size, cap, .. }) => Ok(CmDecision {
            verdict: Verdict::Inconclusive,
            evidence: Evidence::Skipped { reason: format!("homology oracle: {size} vertices > cap {cap}") },
        }),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found { certificate: Box<MyCertificate>, nodes: u64 },
    Exhausted { nodes: u64 },
    BudgetExceeded { nodes: u64 },
}

/// Exhaustive search for a certificate on a very well-covered graph.
///
/// For each facet `Y` (so `X = V \ Y` is a minimal vertex cover), perfect
/// matchings `X → Y` along edges are tried: first the matching by graph
/// complements when it exists, then backtracking with (d) checked as pairs are
/// placed. Complete matchings must pass (c) and admit an order for (e).
pub fn search_certificate(complex: &IndependenceComplex, budget: u64) -> Result<SearchOutcome> {
    let g = complex.graph();
    let mut nodes = 0u64;
    for facet in complex.facets() {
        let y_mask = g.mask(facet);
        let xs: Vec<usize> = (0..g.vertex_count()).filter(|&v| !y_mask.contains(v)).collect();
        if xs.len() != facet.len() {
            continue;
        }

        if let Some(matching) = complement_matching(g, &xs, facet) {
            nodes += 1;
            if let Some(cert) = try_matching(g, &matching)? {
                return Ok(SearchOutcome::Found { certificate: Box::new(cert), nodes });
            }
        }

        let mut state =
            Backtrack { g, xs: &xs, ys: facet, used: vec![false; facet.len()], pairs: Vec::new(), nodes, budget };
        match state.run()? {
            Step::Found(cert) => return Ok(SearchOutcome::Found { certificate: cert, nodes: state.nodes }),
            Step::Budget => return Ok(SearchOutcome::BudgetExceeded { nodes: state.nodes }),
            Step::Continue => nodes = state.nodes,
        }
    }
    Ok(SearchOutcome::Exhausted { nodes })
}

/// Matches each `x` to its unique graph complement in `ys`, if that is a bijection.
fn complement_matching(g: &Graph, xs: &[usize], ys: &[usize]) -> Option<Vec<(usize, usize)>> {
    let mut used = vec![false; ys.len()];
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        let nx = g.neighbors(x);
        let mut comps = ys.iter().enumerate().filter(|&(_, &y)| nx.contains(y) && nx.is_disjoint(g.neighbors(y)));
        let (idx, &y) = comps.next()?;
        if comps.next().is_some() || used[idx] {
            return None;
        }
        used[idx] = true;
        out.push((x, y));
    }
    Some(out)
}

fn try_matching(g: &Graph, matching: &[(usize, usize)]) -> Result<Option<MyCertificate>> {
    if condition_d_violation(g, matching).is_some() || condition_c_violation(g, matching).is_some() {
        return Ok(None);
    }
    match find_ordering(g, matching) {
        Ordering::Ordered(order) => {
            let cert = verify_my_conditions(g, &order)?;
            Ok(cert.passed().then_some(cert))
        }
        Ordering::Infeasible { .. } => Ok(None),
    }
}

enum Step {
    Found(Box<MyCertificate>),
    Budget,
    Continue,
}

struct Backtrack<'a> {
    g: &'a Graph,
    xs: &'a [usize],
    ys: &'a [usize],
    used: Vec<bool>,
    pairs: Vec<(usize, usize)>,
    nodes: u64,
    budget: u64,
}

impl Backtrack<'_> {
    fn run(&mut self) -> Result<Step> {
        if self.pairs.len() == self.xs.len() {
            let matching = self.pairs.clone();
            return Ok(match try_matching(self.g, &matching)? {
                Some(cert) => Step::Found(Box::new(cert)),
                None => Step::Continue,
            });
        }
        let x = self.xs[self.pairs.len()];
        for idx in 0..self.ys.len() {
            let y = self.ys[idx];
            if self.used[idx] || !self.g.adjacent(x, y) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Ok(Step::Budget);
            }
            if !self.compatible(x, y) {
                continue;
            }
            self.used[idx] = true;
            self.pairs.push((x, y));
            let step = self.run()?;
            self.pairs.pop();
            self.used[idx] = false;
            if !matches!(step, Step::Continue) {
                return Ok(step);
            }
        }
        Ok(Step::Continue)
    }

    /// Condition (d) between the new pair and every placed pair.
    fn compatible(&self, x: usize, y: usize) -> bool {
        self.pairs
            .iter()
            .all(|&(xs, ys)| !(self.g.adjacent(xs, x) && (self.g.adjacent(xs, y) || self.g.adjacent(x, ys))))
    }
}
