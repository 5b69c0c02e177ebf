//! The zero-divisor graph `Γ(P)`: vertices are the nonzero zero-divisors,
//! and `a -- b` iff `{a,b}^ℓ = {0}`.

use std::fmt::Write as _;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poset::{ElementSet, Poset};

/// `Z(P)`: elements `a` with some `b ≠ 0` such that `{a,b}^ℓ = {0}`.
///
/// `0` itself qualifies whenever the poset has a nonzero element.
pub fn zero_divisors(poset: &Poset) -> Result<ElementSet> {
    let bottom = poset.require_bottom()?;
    let n = poset.len();
    Ok(poset.set((0..n).filter(|&a| (0..n).any(|b| b != bottom && poset.meet_is_bottom(a, b)))))
}

/// `Γ(P)` with vertices kept in ascending element-id order.
#[derive(Debug, Clone)]
pub struct ZdGraph {
    graph: Graph,
    elements: Vec<usize>,
    vertex_of: Vec<Option<usize>>,
}

impl Deref for ZdGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.graph
    }
}

impl ZdGraph {
    /// Builds `Γ(P)`. A poset with `Z(P) = {0}` yields the empty graph.
    pub fn build(poset: &Poset) -> Result<ZdGraph> {
        let bottom = poset.require_bottom()?;
        let elements: Vec<usize> = zero_divisors(poset)?.iter().filter(|&a| a != bottom).collect();
        let mut vertex_of = vec![None; poset.len()];
        for (v, &e) in elements.iter().enumerate() {
            vertex_of[e] = Some(v);
        }
        let mut graph = Graph::new(elements.iter().map(|&e| poset.name(e).to_string()).collect());
        for (u, &a) in elements.iter().enumerate() {
            for (v, &b) in elements.iter().enumerate().skip(u + 1) {
                if poset.meet_is_bottom(a, b) {
                    graph.add_edge(u, v);
                }
            }
        }
        Ok(ZdGraph { graph, elements, vertex_of })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Poset element behind vertex `v`.
    pub fn element(&self, v: usize) -> usize {
        self.elements[v]
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Vertex of poset element `e`, if `e` is a vertex.
    pub fn vertex(&self, e: usize) -> Option<usize> {
        self.vertex_of.get(e).copied().flatten()
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<usize> {
        self.graph.index_of(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// `{ w : v -- w and no vertex is adjacent to both }`.
    pub fn graph_complements(&self, v: usize) -> Result<Vec<usize>> {
        if v >= self.vertex_count() {
            return Err(Error::UnknownVertex(v.to_string()));
        }
        let nv = self.neighbors(v);
        Ok(nv.ones().filter(|&w| nv.is_disjoint(self.neighbors(w))).collect())
    }

    /// Vertices of degree one.
    pub fn ends(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.degree(v) == 1).collect()
    }

    /// DOT text, one edge per line in `(min id, max id)` order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph zdg {\n");
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", self.label(u), self.label(v));
        }
        out.push_str("}\n");
        out
    }
}

/// Outcome of checking a structural lemma vertex by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub checked: usize,
    pub violators: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violators.is_empty()
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

/// Every vertex has exactly one graph complement, and it is the order complement.
pub fn check_unique_complementation(poset: &Poset, g: &ZdGraph) -> Result<LemmaReport> {
    require_boolean(poset)?;
    let mut violators = Vec::new();
    for v in 0..g.vertex_count() {
        let comps = g.graph_complements(v)?;
        let order_comp = poset.unique_complement(g.element(v))?.and_then(|c| g.vertex(c));
        let ok = comps.len() == 1 && Some(comps[0]) == order_comp;
        if !ok {
            violators.push(g.label(v).to_string());
        }
    }
    Ok(LemmaReport { checked: g.vertex_count(), violators })
}

/// `b` is an atom iff its complement `b'` is an end adjacent to `b`.
pub fn check_atom_end_lemma(poset: &Poset, g: &ZdGraph) -> Result<LemmaReport> {
    require_boolean(poset)?;
    let atoms = poset.atoms()?;
    let mut violators = Vec::new();
    for v in 0..g.vertex_count() {
        let b = g.element(v);
        let is_atom = atoms.contains(b);
        let comp_is_end =
            poset.unique_complement(b)?.and_then(|c| g.vertex(c)).is_some_and(|w| g.degree(w) == 1 && g.adjacent(v, w));
        if is_atom != comp_is_end {
            violators.push(g.label(v).to_string());
        }
    }
    Ok(LemmaReport { checked: g.vertex_count(), violators })
}
