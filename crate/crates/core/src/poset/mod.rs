//! Finite posets stored as a closed order relation.
//!
//! Every element carries a canonical id (its position in the declaring file or
//! generator). The order is kept as two families of bit rows, `up[a] = a^u` and
//! `down[a] = a^ℓ`, so cones of arbitrary sets are row intersections.

mod catalog;
mod parse;
mod product;

pub use catalog::{generate, Catalog};
pub use parse::parse_poset;
pub use product::{direct_product, ProductPoset};

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A set of element ids of one poset. Iteration is in ascending id order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet(FixedBitSet);

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElementSet(bits)
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(universe: usize, ids: I) -> Self {
        let mut set = Self::empty(universe);
        for id in ids {
            set.insert(id);
        }
        set
    }

    pub fn from_bits(bits: FixedBitSet) -> Self {
        ElementSet(bits)
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, id: usize) {
        self.0.insert(id);
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.contains(id)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn ids(&self) -> Vec<usize> {
        self.0.ones().collect()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.0
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.ones()).finish()
    }
}

/// Outcome of the Boolean-poset test; `Boolean` or the first failing clause.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BooleanCheck {
    Boolean,
    NoBottom,
    NoTop,
    NotDistributive { a: usize, b: usize, c: usize },
    NotComplemented { element: usize },
}

impl BooleanCheck {
    pub fn is_boolean(&self) -> bool {
        matches!(self, BooleanCheck::Boolean)
    }

    /// Human-readable reason, naming elements of `poset`.
    pub fn describe(&self, poset: &Poset) -> String {
        match *self {
            BooleanCheck::Boolean => "boolean".to_string(),
            BooleanCheck::NoBottom => "no least element".to_string(),
            BooleanCheck::NoTop => "no greatest element".to_string(),
            BooleanCheck::NotDistributive { a, b, c } => {
                format!("distributivity witness {},{},{}", poset.name(a), poset.name(b), poset.name(c))
            }
            BooleanCheck::NotComplemented { element } => {
                format!("{} has no complement", poset.name(element))
            }
        }
    }
}

#[derive(Clone)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    bottom: Option<usize>,
    top: Option<usize>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.names)
            .field("bottom", &self.bottom)
            .field("top", &self.top)
            .finish()
    }
}

impl Poset {
    /// Builds a poset from element names and declared `a <= b` pairs (by id).
    ///
    /// The order is the reflexive-transitive closure of the pairs; a cycle
    /// between distinct elements is rejected.
    pub fn from_pairs<I>(names: Vec<String>, pairs: I) -> Result<Poset>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (id, name) in names.iter().enumerate() {
            if index.insert(name.clone(), id).is_some() {
                return Err(Error::DuplicateElement { line: 0, name: name.clone() });
            }
        }

        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(a);
                row
            })
            .collect();
        for (a, b) in pairs {
            up[a].insert(b);
        }

        // Warshall on bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }

        let mut down: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }

        for a in 0..n {
            for b in up[a].ones() {
                if b != a && up[b].contains(a) {
                    return Err(Error::AntisymmetryViolation { a: names[a].clone(), b: names[b].clone() });
                }
            }
        }

        let bottom = (0..n).find(|&a| up[a].count_ones(..) == n);
        let top = (0..n).find(|&a| down[a].count_ones(..) == n);

        Ok(Poset { names, index, up, down, bottom, top })
    }

    /// Builds a poset from a comparison predicate evaluated on every pair of ids.
    pub fn from_fn<F>(names: Vec<String>, mut leq: F) -> Result<Poset>
    where
        F: FnMut(usize, usize) -> bool,
    {
        let n = names.len();
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        Poset::from_pairs(names, pairs)
    }

    /// Builds a poset from a predicate already known to be a partial order
    /// (reflexive and transitive). Antisymmetry is still checked.
    pub(crate) fn from_order_fn<F>(names: Vec<String>, leq: F) -> Result<Poset>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = names.len();
        let mut index = HashMap::with_capacity(n);
        for (id, name) in names.iter().enumerate() {
            if index.insert(name.clone(), id).is_some() {
                return Err(Error::DuplicateElement { line: 0, name: name.clone() });
            }
        }
        let mut up: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        let mut down: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
        for (a, row) in up.iter_mut().enumerate() {
            for b in 0..n {
                if a == b || leq(a, b) {
                    row.insert(b);
                }
            }
        }
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                down[b].insert(a);
            }
        }
        for a in 0..n {
            for b in up[a].ones() {
                if b != a && up[b].contains(a) {
                    return Err(Error::AntisymmetryViolation { a: names[a].clone(), b: names[b].clone() });
                }
            }
        }
        let bottom = (0..n).find(|&a| up[a].count_ones(..) == n);
        let top = (0..n).find(|&a| down[a].count_ones(..) == n);
        Ok(Poset { names, index, up, down, bottom, top })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn id_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn require_bottom(&self) -> Result<usize> {
        self.bottom.ok_or(Error::NoBottom)
    }

    pub fn require_top(&self) -> Result<usize> {
        self.top.ok_or(Error::NoTop)
    }

    pub fn is_bounded(&self) -> bool {
        self.bottom.is_some() && self.top.is_some()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// `a^u` as a bit row.
    pub fn up_row(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    /// `a^ℓ` as a bit row.
    pub fn down_row(&self, a: usize) -> &FixedBitSet {
        &self.down[a]
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn set<I: IntoIterator<Item = usize>>(&self, ids: I) -> ElementSet {
        ElementSet::from_ids(self.len(), ids)
    }

    /// `A^u`: elements above every member of `A`. The cone of the empty set is everything.
    pub fn upper_cone(&self, set: &ElementSet) -> ElementSet {
        self.cone(set.iter(), &self.up)
    }

    /// `A^ℓ`: elements below every member of `A`.
    pub fn lower_cone(&self, set: &ElementSet) -> ElementSet {
        self.cone(set.iter(), &self.down)
    }

    pub fn lower_cone_of(&self, ids: &[usize]) -> ElementSet {
        self.cone(ids.iter().copied(), &self.down)
    }

    pub fn upper_cone_of(&self, ids: &[usize]) -> ElementSet {
        self.cone(ids.iter().copied(), &self.up)
    }

    fn cone<I: Iterator<Item = usize>>(&self, ids: I, rows: &[FixedBitSet]) -> ElementSet {
        let mut acc = ElementSet::full(self.len()).0;
        for id in ids {
            acc.intersect_with(&rows[id]);
        }
        ElementSet(acc)
    }

    /// True iff `{a,b}^ℓ = {0}`. Requires a bottom element.
    pub fn meet_is_bottom(&self, a: usize, b: usize) -> bool {
        debug_assert!(self.bottom.is_some());
        self.down[a].intersection_count(&self.down[b]) == 1
    }

    /// True iff `{a,b}^u = {1}`. Requires a top element.
    pub fn join_is_top(&self, a: usize, b: usize) -> bool {
        debug_assert!(self.top.is_some());
        self.up[a].intersection_count(&self.up[b]) == 1
    }

    pub fn atoms(&self) -> Result<ElementSet> {
        let bottom = self.require_bottom()?;
        // An atom's down-set is exactly {0, a}.
        Ok(self.set((0..self.len()).filter(|&a| a != bottom && self.down[a].count_ones(..) == 2)))
    }

    pub fn coatoms(&self) -> Result<ElementSet> {
        let top = self.require_top()?;
        Ok(self.set((0..self.len()).filter(|&a| a != top && self.up[a].count_ones(..) == 2)))
    }

    /// Number of atoms below `x`.
    pub fn weight(&self, x: usize) -> Result<usize> {
        let atoms = self.atoms()?;
        Ok(atoms.0.intersection_count(&self.down[x]))
    }

    /// Weights of all elements, indexed by id.
    pub fn weights(&self) -> Result<Vec<usize>> {
        let atoms = self.atoms()?;
        Ok(self.down.iter().map(|row| atoms.0.intersection_count(row)).collect())
    }

    /// Weight of the greatest element.
    pub fn total_weight(&self) -> Result<usize> {
        self.require_bottom()?;
        let top = self.require_top()?;
        self.weight(top)
    }

    /// All `x'` with `{x,x'}^ℓ = {0}` and `{x,x'}^u = {1}`.
    pub fn complements_of(&self, x: usize) -> Result<ElementSet> {
        self.require_bottom()?;
        self.require_top()?;
        Ok(self.set((0..self.len()).filter(|&y| self.meet_is_bottom(x, y) && self.join_is_top(x, y))))
    }

    /// The unique complement of `x`, when there is exactly one.
    pub fn unique_complement(&self, x: usize) -> Result<Option<usize>> {
        let comps = self.complements_of(x)?;
        Ok(if comps.len() == 1 { comps.iter().next() } else { None })
    }

    /// `x^⊥ = { y : {x,y}^ℓ = {0} }`.
    pub fn annihilator(&self, x: usize) -> Result<ElementSet> {
        self.require_bottom()?;
        Ok(self.set((0..self.len()).filter(|&y| self.meet_is_bottom(x, y))))
    }

    /// The element `b` with `b^ℓ = x^⊥`, if `x^⊥` is a principal down-set.
    pub fn pseudocomplement_of(&self, x: usize) -> Result<Option<usize>> {
        let perp = self.annihilator(x)?;
        let mut found = (0..self.len()).filter(|&b| self.down[b] == perp.0);
        let first = found.next();
        assert!(found.next().is_none(), "pseudocomplement must be unique");
        Ok(first)
    }

    /// First triple `(a,b,c)` (lexicographic in ids) at which
    /// `({a} ∪ {b,c}^u)^ℓ = ({a,b}^ℓ ∪ {a,c}^ℓ)^{uℓ}` fails.
    pub fn distributivity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let ab = self.lower_cone_of(&[a, b]);
                for c in 0..n {
                    let bc_up = self.upper_cone_of(&[b, c]);
                    let mut lhs = bc_up.clone();
                    lhs.insert(a);
                    let lhs = self.lower_cone(&lhs);

                    let mut union = ab.0.clone();
                    union.union_with(self.lower_cone_of(&[a, c]).bits());
                    let rhs = self.lower_cone(&self.upper_cone(&ElementSet(union)));

                    if lhs != rhs {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_witness().is_none()
    }

    /// Bounded, distributive and complemented, checked in that order.
    pub fn boolean_check(&self) -> BooleanCheck {
        if self.bottom.is_none() {
            return BooleanCheck::NoBottom;
        }
        if self.top.is_none() {
            return BooleanCheck::NoTop;
        }
        if let Some((a, b, c)) = self.distributivity_witness() {
            return BooleanCheck::NotDistributive { a, b, c };
        }
        for x in 0..self.len() {
            let has_complement = (0..self.len()).any(|y| self.meet_is_bottom(x, y) && self.join_is_top(x, y));
            if !has_complement {
                return BooleanCheck::NotComplemented { element: x };
            }
        }
        BooleanCheck::Boolean
    }

    pub fn is_boolean(&self) -> bool {
        self.boolean_check().is_boolean()
    }

    /// Section semi-complemented: for all `b ≰ a` there is `0 < c ≤ b` with `{a,c}^ℓ = {0}`.
    pub fn is_ssc(&self) -> Result<bool> {
        let bottom = self.require_bottom()?;
        Ok(self.semi_complemented(bottom, |a, b| !self.leq(b, a)))
    }

    /// Weakly section semi-complemented: the same, restricted to `a < b`.
    pub fn is_wssc(&self) -> Result<bool> {
        let bottom = self.require_bottom()?;
        Ok(self.semi_complemented(bottom, |a, b| self.lt(a, b)))
    }

    fn semi_complemented<F: Fn(usize, usize) -> bool>(&self, bottom: usize, hypothesis: F) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n)
                .filter(|&b| hypothesis(a, b))
                .all(|b| self.down[b].ones().any(|c| c != bottom && self.meet_is_bottom(a, c)))
        })
    }

    /// Least element of `{a,b}^u`, if any.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ub = self.upper_cone_of(&[a, b]);
        let found = ub.iter().find(|&m| ub.bits().is_subset(&self.up[m]));
        found
    }

    /// Greatest element of `{a,b}^ℓ`, if any.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lb = self.lower_cone_of(&[a, b]);
        let found = lb.iter().find(|&m| lb.bits().is_subset(&self.down[m]));
        found
    }

    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        n > 0 && (0..n).all(|a| (a..n).all(|b| self.join(a, b).is_some() && self.meet(a, b).is_some()))
    }

    /// Order-isomorphic to the power set of its atoms.
    ///
    /// Checked as: Boolean poset, lattice, `|P| = 2^k`, and the atom-support
    /// map `x ↦ {atoms ≤ x}` is injective and an order embedding.
    pub fn is_boolean_lattice(&self) -> bool {
        if !self.is_boolean() || !self.is_lattice() {
            return false;
        }
        let Ok(atoms) = self.atoms() else { return false };
        let k = atoms.len();
        if k >= usize::BITS as usize || self.len() != 1usize << k {
            return false;
        }
        let atom_ids = atoms.ids();
        let support: Vec<usize> = (0..self.len())
            .map(|x| {
                atom_ids.iter().enumerate().filter(|&(_, &a)| self.leq(a, x)).fold(0usize, |m, (i, _)| m | (1 << i))
            })
            .collect();
        let mut seen = support.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != self.len() {
            return false;
        }
        (0..self.len()).all(|x| (0..self.len()).all(|y| self.leq(x, y) == (support[x] & !support[y] == 0)))
    }

    /// Covering pairs `a ⋖ b`, sorted by `(a, b)`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.len() {
            for b in self.up[a].ones() {
                if b != a && self.up[a].intersection_count(&self.down[b]) == 2 {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Renders the poset in the `poset v1` text format (covering pairs only).
    pub fn to_file_text(&self) -> String {
        parse::write_poset(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Poset {
        generate(&Catalog::Chain(3)).unwrap()
    }

    fn b3() -> Poset {
        generate(&Catalog::BooleanLattice(3)).unwrap()
    }

    fn id(p: &Poset, name: &str) -> usize {
        p.id_of(name).unwrap()
    }

    #[test]
    fn cones_on_b3() {
        let p = b3();
        let cone = p.lower_cone_of(&[id(&p, "{2,3}"), id(&p, "{1,3}")]);
        assert_eq!(cone.ids(), vec![id(&p, "0"), id(&p, "{3}")]);
        assert_eq!(p.upper_cone_of(&[id(&p, "0")]), p.all());
        assert_eq!(p.lower_cone(&ElementSet::empty(p.len())), p.all());
    }

    #[test]
    fn atoms_and_weights() {
        let p = chain3();
        assert_eq!(p.atoms().unwrap().ids(), vec![1]);
        let b4 = generate(&Catalog::BooleanLattice(4)).unwrap();
        assert_eq!(b4.atoms().unwrap().len(), 4);
        assert_eq!(b4.weight(id(&b4, "{1,2}")).unwrap(), 2);
        assert_eq!(b4.weight(id(&b4, "0")).unwrap(), 0);
        assert_eq!(b4.total_weight().unwrap(), 4);
    }

    #[test]
    fn no_bottom_is_reported() {
        let p = Poset::from_pairs(vec!["a".into(), "b".into()], vec![]).unwrap();
        assert_eq!(p.atoms(), Err(Error::NoBottom));
        assert_eq!(p.weight(0), Err(Error::NoBottom));
        assert_eq!(p.is_ssc(), Err(Error::NoBottom));
        assert_eq!(p.boolean_check(), BooleanCheck::NoBottom);
    }

    #[test]
    fn complements() {
        let p = b3();
        assert_eq!(p.complements_of(id(&p, "{1}")).unwrap().ids(), vec![id(&p, "{2,3}")]);
        assert_eq!(p.complements_of(id(&p, "0")).unwrap().ids(), vec![id(&p, "1")]);
        let m3 = generate(&Catalog::MAtoms(3)).unwrap();
        assert_eq!(m3.complements_of(id(&m3, "a")).unwrap().ids(), vec![id(&m3, "b"), id(&m3, "c")]);
    }

    #[test]
    fn pseudocomplements() {
        let p = b3();
        assert_eq!(p.pseudocomplement_of(id(&p, "{1}")).unwrap(), Some(id(&p, "{2,3}")));
        assert_eq!(p.pseudocomplement_of(id(&p, "0")).unwrap(), Some(id(&p, "1")));
        let m3 = generate(&Catalog::MAtoms(3)).unwrap();
        assert_eq!(m3.pseudocomplement_of(id(&m3, "a")).unwrap(), None);
    }

    #[test]
    fn distributivity() {
        assert!(generate(&Catalog::BooleanLattice(4)).unwrap().is_distributive());
        let m3 = generate(&Catalog::MAtoms(3)).unwrap();
        let (a, b, c) = m3.distributivity_witness().unwrap();
        assert_eq!((m3.name(a), m3.name(b), m3.name(c)), ("a", "b", "c"));
        assert!(!m3.is_boolean());
        assert_eq!(m3.boolean_check().describe(&m3), "distributivity witness a,b,c");
    }

    #[test]
    fn boolean_check_clauses() {
        assert!(generate(&Catalog::Chain(2)).unwrap().is_boolean());
        assert!(generate(&Catalog::AtomCoatom(4)).unwrap().is_boolean());
        // 3-chain is distributive but the middle element has no complement.
        let c3 = chain3();
        assert_eq!(c3.boolean_check(), BooleanCheck::NotComplemented { element: 1 });
    }

    #[test]
    fn semi_complemented() {
        let c3 = chain3();
        assert!(!c3.is_ssc().unwrap());
        assert!(!c3.is_wssc().unwrap());
        assert!(b3().is_wssc().unwrap());
        assert!(generate(&Catalog::AtomCoatom(4)).unwrap().is_ssc().unwrap());
    }

    #[test]
    fn lattice_checks() {
        assert!(b3().is_boolean_lattice());
        assert!(!generate(&Catalog::AtomCoatom(4)).unwrap().is_lattice());
        assert!(!generate(&Catalog::AtomCoatom(4)).unwrap().is_boolean_lattice());
        assert!(!chain3().is_boolean_lattice());
        assert!(generate(&Catalog::MAtoms(3)).unwrap().is_lattice());
    }

    #[test]
    fn covers_of_chain() {
        assert_eq!(chain3().covers(), vec![(0, 1), (1, 2)]);
    }
}
