//! Independence complexes: facet enumeration, well-coveredness, the greedy
//! extension through complementary pairs, and edge-ideal export.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homology::SimplicialComplex;
use crate::poset::Poset;
use crate::zdg::ZdGraph;

/// The complex of independent sets of a graph, stored by its facets.
#[derive(Debug, Clone)]
pub struct IndependenceComplex {
    graph: Graph,
    complex: SimplicialComplex,
}

/// Enumerates all maximal independent sets of `g`.
///
/// Fails with `SizeLimitExceeded` above `cap` vertices.
pub fn independence_complex(g: &Graph, cap: usize) -> Result<IndependenceComplex> {
    if g.vertex_count() > cap {
        return Err(Error::SizeLimitExceeded { what: "facet enumeration", size: g.vertex_count(), cap });
    }
    let facets = maximal_independent_sets(g);
    Ok(IndependenceComplex { graph: g.clone(), complex: SimplicialComplex::from_facets(g.vertex_count(), facets) })
}

/// Maximal independent sets as maximal cliques of the complement graph
/// (Bron–Kerbosch with Tomita pivoting). Output is canonically sorted.
pub fn maximal_independent_sets(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let non_adj: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut row = g.neighbors(v).clone();
            row.toggle_range(..);
            row.set(v, false);
            row
        })
        .collect();

    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut out = Vec::new();
    let mut current = Vec::new();
    expand(&non_adj, &mut current, all, FixedBitSet::with_capacity(n), &mut out);

    for facet in &mut out {
        facet.sort_unstable();
    }
    out.sort();
    out
}

fn expand(
    non_adj: &[FixedBitSet],
    current: &mut Vec<usize>,
    mut candidates: FixedBitSet,
    mut excluded: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if candidates.is_clear() {
        if excluded.is_clear() {
            out.push(current.clone());
        }
        return;
    }
    let pivot = candidates
        .ones()
        .chain(excluded.ones())
        .max_by_key(|&u| candidates.intersection_count(&non_adj[u]))
        .expect("candidates nonempty");
    let branch: Vec<usize> = candidates.difference(&non_adj[pivot]).collect();
    for v in branch {
        let mut next_candidates = candidates.clone();
        next_candidates.intersect_with(&non_adj[v]);
        let mut next_excluded = excluded.clone();
        next_excluded.intersect_with(&non_adj[v]);
        current.push(v);
        expand(non_adj, current, next_candidates, next_excluded, out);
        current.pop();
        candidates.set(v, false);
        excluded.insert(v);
    }
}

impl IndependenceComplex {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn simplicial(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        self.complex.facets()
    }

    pub fn dimension(&self) -> isize {
        self.complex.dimension()
    }

    /// Facets rendered with vertex labels.
    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets().iter().map(|f| f.iter().map(|&v| self.graph.label(v).to_string()).collect()).collect()
    }

    /// Sorted distinct facet sizes.
    pub fn facet_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.facets().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes.dedup();
        sizes
    }

    /// All facets have one cardinality.
    pub fn is_well_covered(&self) -> Result<bool> {
        if self.facets().is_empty() {
            return Err(Error::EmptyComplex);
        }
        Ok(self.facet_sizes().len() == 1)
    }

    /// Well-covered, no isolated vertices, and `|V|` is twice the facet size.
    pub fn is_very_well_covered(&self) -> Result<bool> {
        if !self.is_well_covered()? {
            return Ok(false);
        }
        let facet_size = self.facets()[0].len();
        let isolated = (0..self.graph.vertex_count()).any(|v| self.graph.degree(v) == 0);
        Ok(!isolated && self.graph.vertex_count() == 2 * facet_size)
    }

    /// Complements of the facets, i.e. the minimal vertex covers.
    pub fn minimal_vertex_covers(&self) -> Vec<Vec<usize>> {
        let n = self.graph.vertex_count();
        self.facets()
            .iter()
            .map(|f| {
                let mask = self.graph.mask(f);
                (0..n).filter(|&v| !mask.contains(v)).collect()
            })
            .collect()
    }
}

/// Grows an independent `seed` of `Γ(P)` to a facet by adding one member of
/// each untouched complementary pair `{a, a'}`.
///
/// Pairs are visited in ascending id of their smaller element. When both
/// members fit, the heavier one (more atoms below) is added, then the smaller id.
/// On a Boolean poset the result always has `|V|/2` vertices.
pub fn extend_independent(poset: &Poset, g: &ZdGraph, seed: &[usize]) -> Result<Vec<usize>> {
    let check = poset.boolean_check();
    if !check.is_boolean() {
        return Err(Error::NotBoolean(check.describe(poset)));
    }
    for &v in seed {
        if v >= g.vertex_count() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
    }
    if let Some((u, v)) = g.edge_within(seed) {
        return Err(Error::NotIndependent(g.label(u).to_string(), g.label(v).to_string()));
    }

    let weights = poset.weights()?;
    let mut pairs = Vec::new();
    for v in 0..g.vertex_count() {
        let comp = poset
            .unique_complement(g.element(v))?
            .and_then(|c| g.vertex(c))
            .ok_or_else(|| Error::Internal(format!("vertex {} has no complement vertex", g.label(v))))?;
        if v < comp {
            pairs.push((v, comp));
        }
    }

    let mut members = g.mask(seed);
    let mut result: Vec<usize> = seed.to_vec();
    for (a, b) in pairs {
        if members.contains(a) || members.contains(b) {
            continue;
        }
        let fits = |v: usize| g.neighbors(v).is_disjoint(&members);
        let pick = match (fits(a), fits(b)) {
            (true, true) => {
                let (wa, wb) = (weights[g.element(a)], weights[g.element(b)]);
                if wb > wa {
                    b
                } else {
                    a
                }
            }
            (true, false) => a,
            (false, true) => b,
            (false, false) => {
                return Err(Error::Internal(format!(
                    "neither {} nor {} extends the independent set",
                    g.label(a),
                    g.label(b)
                )))
            }
        };
        members.insert(pick);
        result.push(pick);
    }
    result.sort_unstable();
    Ok(result)
}

/// Target computer-algebra system for the edge-ideal script.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dialect {
    Macaulay2,
    Singular,
}

impl FromStr for Dialect {
    type Err = Error;

    fn from_str(s: &str) -> Result<Dialect> {
        match s {
            "m2" => Ok(Dialect::Macaulay2),
            "singular" => Ok(Dialect::Singular),
            other => Err(Error::BadParam(format!("unknown dialect `{other}` (expected m2 or singular)"))),
        }
    }
}

/// Edge ideal `I(Γ) = (v_i v_j : {i,j} ∈ E)`; variable `v<k>` is vertex `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeIdealScript {
    pub variables: Vec<String>,
    pub generators: Vec<(usize, usize)>,
    pub dialect: Dialect,
}

pub fn export_edge_ideal(g: &Graph, dialect: Dialect) -> Result<EdgeIdealScript> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(EdgeIdealScript { variables: g.labels().to_vec(), generators: g.edges(), dialect })
}

impl fmt::Display for EdgeIdealScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.variables.len();
        let comment = match self.dialect {
            Dialect::Macaulay2 => "--",
            Dialect::Singular => "//",
        };
        for (k, name) in self.variables.iter().enumerate() {
            writeln!(f, "{comment} v{k} = {name}")?;
        }
        let gens: Vec<String> = self.generators.iter().map(|(i, j)| format!("v{i}*v{j}")).collect();
        match self.dialect {
            Dialect::Macaulay2 => {
                writeln!(f, "R = QQ[v0..v{}];", m - 1)?;
                if gens.is_empty() {
                    writeln!(f, "I = monomialIdeal(0_R);")
                } else {
                    writeln!(f, "I = monomialIdeal({});", gens.join(", "))
                }
            }
            Dialect::Singular => {
                let vars: Vec<String> = (0..m).map(|k| format!("v{k}")).collect();
                writeln!(f, "ring R = 0, ({}), dp;", vars.join(","))?;
                if gens.is_empty() {
                    writeln!(f, "ideal I = 0;")
                } else {
                    writeln!(f, "ideal I = {};", gens.join(", "))
                }
            }
        }
    }
}

impl EdgeIdealScript {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{self}");
        s
    }
}
