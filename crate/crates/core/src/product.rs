//! Zero-divisor graphs of products of posets with a unique atom.
//!
//! In such a product the zero-divisors are the tuples with some zero
//! coordinate; the rest form the dense set `D`. The sets `J_i = {q_i}^u \ D`
//! and `J_{i,j,k}` (pairwise upper cones of coordinate atoms, minus `D`) are
//! maximal independent sets whose sizes differ unless every factor has two
//! elements, which is what separates the well-covered products.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::cmcert::is_cohen_macaulay;
use crate::complex::independence_complex;
use crate::error::{Error, Result};
use crate::poset::{direct_product, generate, Catalog, ElementSet, Poset, ProductPoset};
use crate::zdg::{zero_divisors, ZdGraph};
use crate::Caps;

#[derive(Debug, Clone)]
pub struct ProductAnalysis {
    pub product: ProductPoset,
    pub factor_sizes: Vec<usize>,
    /// Non-zero-divisors of the carrier.
    pub dense: ElementSet,
    pub graph: ZdGraph,
}

/// Checks the factors, builds the product, `D` and `Γ`.
pub fn validate_factors(factors: &[Poset]) -> Result<ProductAnalysis> {
    if let Some(index) = factors.iter().position(|f| !f.is_bounded()) {
        return Err(Error::UnboundedFactor { index });
    }
    if let Some(index) = factors.iter().position(|f| f.len() < 2) {
        return Err(Error::BadParam(format!("factor {index} has fewer than 2 elements")));
    }
    let factor_sizes: Vec<usize> = factors.iter().map(Poset::len).collect();
    if factor_sizes.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::NotAscending(factor_sizes));
    }
    for (index, f) in factors.iter().enumerate() {
        if zero_divisors(f)?.len() != 1 {
            return Err(Error::FactorHasZeroDivisors { index });
        }
    }
    let product = direct_product(factors)?;
    let carrier = &product.carrier;
    let zd = zero_divisors(carrier)?;
    let dense = carrier.set((0..carrier.len()).filter(|&x| !zd.contains(x)));
    let expected: usize = factor_sizes.iter().map(|s| s - 1).product();
    if dense.len() != expected {
        return Err(Error::Internal(format!("|D| = {} but the factors give {expected}", dense.len())));
    }
    let graph = ZdGraph::build(carrier)?;
    Ok(ProductAnalysis { product, factor_sizes, dense, graph })
}

/// Product of chains with the given sizes.
pub fn chain_product(sizes: &[usize]) -> Result<ProductAnalysis> {
    let factors = sizes.iter().map(|&k| generate(&Catalog::Chain(k))).collect::<Result<Vec<_>>>()?;
    validate_factors(&factors)
}

impl ProductAnalysis {
    pub fn arity(&self) -> usize {
        self.factor_sizes.len()
    }

    fn atom(&self, i: usize) -> Result<usize> {
        self.product.coordinate_atom(i).ok_or_else(|| Error::Internal(format!("factor {i} has no unique atom")))
    }

    /// Vertices of `Γ` for carrier elements in `set \ D`, ascending.
    fn vertices_outside_dense(&self, set: &ElementSet) -> Result<Vec<usize>> {
        set.iter()
            .filter(|&x| !self.dense.contains(x))
            .map(|x| {
                self.graph
                    .vertex(x)
                    .ok_or_else(|| Error::Internal(format!("{} is not a vertex", self.product.carrier.name(x))))
            })
            .collect()
    }

    fn require_maximal_independent(&self, set: &[usize], what: &str) -> Result<()> {
        if self.graph.is_maximal_independent(set) {
            Ok(())
        } else {
            Err(Error::Internal(format!("{what} is not a maximal independent set")))
        }
    }

    /// `J_i = {q_i}^u \ D` as graph vertices (0-based factor index).
    pub fn j_single(&self, i: usize) -> Result<Vec<usize>> {
        if i >= self.arity() {
            return Err(Error::IndexOutOfRange { index: i, len: self.arity() });
        }
        let carrier = &self.product.carrier;
        let up = carrier.upper_cone_of(&[self.atom(i)?]);
        let set = self.vertices_outside_dense(&up)?;
        self.require_maximal_independent(&set, &format!("J_{}", i + 1))?;
        Ok(set)
    }

    /// `J_{i,j,k}`: union of `{q_i,q_j}^u`, `{q_j,q_k}^u`, `{q_i,q_k}^u`, minus `D`.
    pub fn j_triple(&self, i: usize, j: usize, k: usize) -> Result<Vec<usize>> {
        if !(i < j && j < k) {
            return Err(Error::IndicesNotDistinctOrOrdered(i, j, k));
        }
        if k >= self.arity() {
            return Err(Error::IndexOutOfRange { index: k, len: self.arity() });
        }
        let carrier = &self.product.carrier;
        let (qi, qj, qk) = (self.atom(i)?, self.atom(j)?, self.atom(k)?);
        let mut union = carrier.upper_cone_of(&[qi, qj]);
        for pair in [[qj, qk], [qi, qk]] {
            for x in carrier.upper_cone_of(&pair).iter() {
                union.insert(x);
            }
        }
        let set = self.vertices_outside_dense(&union)?;
        self.require_maximal_independent(&set, &format!("J_{{{},{},{}}}", i + 1, j + 1, k + 1))?;
        Ok(set)
    }
}

/// `|J_i| = (Π_{m≠i} |P_m|)(|P_i| − 1) − Π_m (|P_m| − 1)`.
pub fn predicted_single(sizes: &[usize], i: usize) -> Result<usize> {
    if i >= sizes.len() {
        return Err(Error::IndexOutOfRange { index: i, len: sizes.len() });
    }
    let others: usize = sizes.iter().enumerate().filter(|&(m, _)| m != i).map(|(_, &s)| s).product();
    let dense: usize = sizes.iter().map(|s| s - 1).product();
    Ok(others * (sizes[i] - 1) - dense)
}

/// `|J_{i,j,k}| = 3((α−1)²α^{n−2} − (α−1)^n) − 2((α−1)³α^{n−3} − (α−1)^n)` for `n` factors of size `α`.
pub fn predicted_triple(sizes: &[usize]) -> Result<usize> {
    let n = sizes.len();
    if n < 3 {
        return Err(Error::TooFewFactors { need: 3, got: n });
    }
    let alpha = sizes[0];
    if sizes.iter().any(|&s| s != alpha) {
        return Err(Error::NeedEqualSizesForTriple(sizes.to_vec()));
    }
    let a = alpha as i128;
    let n32 = n as u32;
    let dense = (a - 1).pow(n32);
    let pair = (a - 1).pow(2) * a.pow(n32 - 2) - dense;
    let triple = (a - 1).pow(3) * a.pow(n32 - 3) - dense;
    usize::try_from(3 * pair - 2 * triple).map_err(|_| Error::Internal("negative triple count".into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PredictedCounts {
    pub singles: Vec<usize>,
    /// Only when all sizes are equal.
    pub triple: Option<usize>,
}

pub fn predicted_counts(sizes: &[usize]) -> Result<PredictedCounts> {
    if sizes.len() < 3 {
        return Err(Error::TooFewFactors { need: 3, got: sizes.len() });
    }
    let singles = (0..sizes.len()).map(|i| predicted_single(sizes, i)).collect::<Result<Vec<_>>>()?;
    let triple = match predicted_triple(sizes) {
        Ok(t) => Some(t),
        Err(Error::NeedEqualSizesForTriple(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(PredictedCounts { singles, triple })
}

/// Two maximal independent sets of different sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeWitness {
    pub first: (String, usize),
    pub second: (String, usize),
}

impl std::fmt::Display for SizeWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "|{}| = {} != {} = |{}|", self.first.0, self.first.1, self.second.1, self.second.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WellCoveredVerdict {
    pub well_covered: bool,
    pub witness: Option<SizeWitness>,
}

/// Well-covered iff every factor has two elements; a `false` verdict carries
/// two enumerated sets `J` of different sizes.
pub fn well_covered_verdict(a: &ProductAnalysis) -> Result<WellCoveredVerdict> {
    let n = a.arity();
    if n < 3 {
        return Err(Error::TooFewFactors { need: 3, got: n });
    }
    let mut sizes: Vec<(String, usize)> =
        (0..n).map(|i| Ok((format!("J_{}", i + 1), a.j_single(i)?.len()))).collect::<Result<_>>()?;
    sizes.push(("J_{1,2,3}".to_string(), a.j_triple(0, 1, 2)?.len()));
    let witness = sizes
        .iter()
        .skip(1)
        .find(|(_, s)| *s != sizes[0].1)
        .map(|second| SizeWitness { first: sizes[0].clone(), second: second.clone() });

    let all_two = a.factor_sizes.iter().all(|&s| s == 2);
    if all_two == witness.is_some() {
        return Err(Error::Internal(format!(
            "sizes {:?}: all-two is {all_two} but J sizes are {sizes:?}",
            a.factor_sizes
        )));
    }
    Ok(WellCoveredVerdict { well_covered: all_two, witness })
}

/// Truth values of the five equivalent statements, in order: CM, well-covered,
/// all factors of size two, Boolean lattice, Boolean poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub statements: [Option<bool>; 5],
    /// Facet enumeration was above the cap; well-coveredness comes from the J sizes only.
    pub unverified_by_enumeration: bool,
}

impl EquivalenceReport {
    pub const NAMES: [&'static str; 5] = ["CM", "well-covered", "all |P_i| = 2", "Boolean lattice", "Boolean poset"];

    /// All decided statements agree.
    pub fn consistent(&self) -> bool {
        let mut decided = self.statements.iter().flatten();
        match decided.next() {
            Some(&first) => decided.all(|&b| b == first),
            None => true,
        }
    }
}

pub fn equivalence_suite(a: &ProductAnalysis, caps: &Caps) -> Result<EquivalenceReport> {
    let verdict = well_covered_verdict(a)?;
    let carrier = &a.product.carrier;
    let (well_covered, unverified_by_enumeration) = match independence_complex(&a.graph, caps.max_vertices) {
        Ok(c) => {
            let enumerated = c.is_well_covered()?;
            if enumerated != verdict.well_covered {
                return Err(Error::Internal(format!(
                    "sizes {:?}: enumeration says well-covered = {enumerated}, J sizes say {}",
                    a.factor_sizes, verdict.well_covered
                )));
            }
            (enumerated, false)
        }
        Err(Error::SizeLimitExceeded { .. }) => (verdict.well_covered, true),
        Err(e) => return Err(e),
    };
    let cm = is_cohen_macaulay(carrier, caps)?.verdict.as_bool();
    let all_two = a.factor_sizes.iter().all(|&s| s == 2);
    Ok(EquivalenceReport {
        statements: [
            cm,
            Some(well_covered),
            Some(all_two),
            Some(carrier.is_boolean_lattice()),
            Some(carrier.is_boolean()),
        ],
        unverified_by_enumeration,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteReport {
    /// `|P_1| − 1` and `|P_2| − 1`.
    pub parts: (usize, usize),
    pub well_covered: bool,
    pub cohen_macaulay: bool,
}

/// For two factors `Γ` is complete bipartite between `{(x,0)}` and `{(0,y)}`.
pub fn bipartite_case(a: &ProductAnalysis) -> Result<BipartiteReport> {
    if a.arity() != 2 {
        return Err(Error::WrongArity { expected: 2, got: a.arity() });
    }
    let p = &a.product;
    let zeros: Vec<usize> = p.factors.iter().map(|f| f.bottom().unwrap_or(0)).collect();
    let side = |v: usize| -> Option<usize> {
        let c = &p.coord_of[a.graph.element(v)];
        match (c[0] == zeros[0], c[1] == zeros[1]) {
            (false, true) => Some(0),
            (true, false) => Some(1),
            _ => None,
        }
    };
    let n = a.graph.vertex_count();
    let mut parts = (0, 0);
    for v in 0..n {
        match side(v) {
            Some(0) => parts.0 += 1,
            Some(_) => parts.1 += 1,
            None => return Err(Error::Internal(format!("vertex {} lies in neither part", a.graph.label(v)))),
        }
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if a.graph.adjacent(u, v) != (side(u) != side(v)) {
                return Err(Error::Internal("two-factor graph is not complete bipartite".into()));
            }
        }
    }
    if parts != (a.factor_sizes[0] - 1, a.factor_sizes[1] - 1) {
        return Err(Error::Internal(format!("part sizes {parts:?} for factor sizes {:?}", a.factor_sizes)));
    }
    Ok(BipartiteReport { parts, well_covered: parts.0 == parts.1, cohen_macaulay: parts == (1, 1) })
}

/// Parses one comma-separated size vector per line; `#` starts a comment.
pub fn parse_sizes(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let sizes = body
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Syntax { line, message: format!("bad size `{}`", t.trim()) })
            })
            .collect::<Result<Vec<usize>>>()?;
        if sizes.len() < 2 {
            return Err(Error::Syntax { line, message: "need at least two factor sizes".into() });
        }
        if let Some(&s) = sizes.iter().find(|&&s| s < 2) {
            return Err(Error::Syntax { line, message: format!("factor size {s} is below 2") });
        }
        if sizes.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::Syntax { line, message: "factor sizes must be ascending".into() });
        }
        out.push(sizes);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub sizes: Vec<usize>,
    pub dense: usize,
    pub j_single: usize,
    pub triple: Option<usize>,
    pub well_covered: bool,
    pub cm: Option<bool>,
    pub boolean_lattice: bool,
    pub note: String,
}

impl SweepRow {
    pub const HEADER: &'static str = "sizes\t|D|\t|J_1|\ttriple\twell-covered\tCM\tboolean-lattice\tnote";

    pub fn to_tsv(&self) -> String {
        let sizes: Vec<String> = self.sizes.iter().map(usize::to_string).collect();
        let triple = self.triple.map_or("-".to_string(), |t| t.to_string());
        let cm = match self.cm {
            Some(b) => yes_no(b),
            None => "?",
        };
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            sizes.join(","),
            self.dense,
            self.j_single,
            triple,
            yes_no(self.well_covered),
            cm,
            yes_no(self.boolean_lattice),
            if self.note.is_empty() { "-" } else { &self.note }
        )
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// One row for a product of chains with the given sizes.
pub fn sweep_row(sizes: &[usize], caps: &Caps) -> Result<SweepRow> {
    let a = chain_product(sizes)?;
    let j_single = a.j_single(0)?.len();
    if a.arity() == 2 {
        let b = bipartite_case(&a)?;
        return Ok(SweepRow {
            sizes: sizes.to_vec(),
            dense: a.dense.len(),
            j_single,
            triple: None,
            well_covered: b.well_covered,
            cm: Some(b.cohen_macaulay),
            boolean_lattice: a.product.carrier.is_boolean_lattice(),
            note: format!("K_{{{},{}}}", b.parts.0, b.parts.1),
        });
    }
    let verdict = well_covered_verdict(&a)?;
    let suite = equivalence_suite(&a, caps)?;
    if !suite.consistent() {
        return Err(Error::Internal(format!("sizes {sizes:?}: statements disagree: {:?}", suite.statements)));
    }
    let mut note = Vec::new();
    if let Some(w) = &verdict.witness {
        note.push(w.to_string());
    }
    if suite.unverified_by_enumeration {
        note.push("unverified-by-enumeration".to_string());
    }
    Ok(SweepRow {
        sizes: sizes.to_vec(),
        dense: a.dense.len(),
        j_single,
        triple: Some(a.j_triple(0, 1, 2)?.len()),
        well_covered: verdict.well_covered,
        cm: suite.statements[0],
        boolean_lattice: suite.statements[3].unwrap_or(false),
        note: note.join("; "),
    })
}

/// Rows sorted by product size, then by the size vector; computed in
/// parallel on the current rayon pool.
pub fn sweep(vectors: &[Vec<usize>], caps: &Caps) -> Result<Vec<SweepRow>> {
    let mut sorted: Vec<&Vec<usize>> = vectors.iter().collect();
    sorted.sort_by_key(|s| (s.iter().product::<usize>(), s.to_vec()));
    sorted.par_iter().map(|s| sweep_row(s, caps)).collect()
}

pub fn sweep_tsv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SweepRow::HEADER);
    out.push('\n');
    for row in rows {
        let _ = writeln!(out, "{}", row.to_tsv());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(a: &ProductAnalysis, vs: &[usize]) -> Vec<String> {
        vs.iter().map(|&v| a.graph.label(v).to_string()).collect()
    }

    #[test]
    fn dense_sets() {
        let a = chain_product(&[2, 2, 2]).unwrap();
        assert_eq!(a.dense.len(), 1);
        assert_eq!(a.product.carrier.name(a.dense.ids()[0]), "(1,1,1)");
        assert_eq!(chain_product(&[3, 3, 3]).unwrap().dense.len(), 8);
    }

    #[test]
    fn validation_errors() {
        let m2 = generate(&Catalog::MAtoms(2)).unwrap();
        let c2 = generate(&Catalog::Chain(2)).unwrap();
        let c3 = generate(&Catalog::Chain(3)).unwrap();
        assert_eq!(
            validate_factors(&[c2.clone(), c2.clone(), m2.clone()]).unwrap_err(),
            Error::FactorHasZeroDivisors { index: 2 }
        );
        assert_eq!(validate_factors(&[c3.clone(), c2.clone()]).unwrap_err(), Error::NotAscending(vec![3, 2]));
        assert_eq!(validate_factors(&[c2]).unwrap_err(), Error::TooFewFactors { need: 2, got: 1 });
    }

    #[test]
    fn j_sets_of_the_cube() {
        let a = chain_product(&[2, 2, 2]).unwrap();
        assert_eq!(names(&a, &a.j_single(0).unwrap()), ["(1,0,0)", "(1,0,1)", "(1,1,0)"]);
        assert_eq!(names(&a, &a.j_triple(0, 1, 2).unwrap()), ["(0,1,1)", "(1,0,1)", "(1,1,0)"]);
        assert_eq!(a.j_single(3).unwrap_err(), Error::IndexOutOfRange { index: 3, len: 3 });
        assert_eq!(a.j_triple(0, 0, 1).unwrap_err(), Error::IndicesNotDistinctOrOrdered(0, 0, 1));
    }

    #[test]
    fn counts_match_formulas() {
        let a = chain_product(&[3, 3, 3]).unwrap();
        assert_eq!(a.j_single(0).unwrap().len(), 10);
        assert_eq!(a.j_triple(0, 1, 2).unwrap().len(), 12);
        assert_eq!(predicted_counts(&[3, 3, 3]).unwrap(), PredictedCounts { singles: vec![10; 3], triple: Some(12) });
        assert_eq!(predicted_counts(&[2, 2, 2]).unwrap(), PredictedCounts { singles: vec![3; 3], triple: Some(3) });
        assert_eq!(predicted_triple(&[2, 2, 2, 2]).unwrap(), 7);
        assert_eq!(predicted_single(&[2, 2, 2, 2], 0).unwrap(), 7);
        assert_eq!(predicted_counts(&[2, 2, 3]).unwrap(), PredictedCounts { singles: vec![4, 4, 6], triple: None });
        assert_eq!(predicted_triple(&[2, 3, 3]).unwrap_err(), Error::NeedEqualSizesForTriple(vec![2, 3, 3]));
        assert_eq!(predicted_triple(&[2, 2]).unwrap_err(), Error::TooFewFactors { need: 3, got: 2 });
    }

    #[test]
    fn verdicts() {
        assert!(well_covered_verdict(&chain_product(&[2, 2, 2]).unwrap()).unwrap().well_covered);
        let v = well_covered_verdict(&chain_product(&[3, 3, 3]).unwrap()).unwrap();
        assert!(!v.well_covered);
        assert_eq!(v.witness.unwrap().to_string(), "|J_1| = 10 != 12 = |J_{1,2,3}|");
        let v = well_covered_verdict(&chain_product(&[2, 2, 3]).unwrap()).unwrap();
        assert_eq!(v.witness.unwrap().to_string(), "|J_1| = 4 != 6 = |J_3|");
        assert_eq!(
            well_covered_verdict(&chain_product(&[2, 2]).unwrap()).unwrap_err(),
            Error::TooFewFactors { need: 3, got: 2 }
        );
    }

    #[test]
    fn equivalences() {
        let caps = Caps::default();
        for (sizes, expected) in [(vec![2, 2, 2], true), (vec![3, 3, 3], false), (vec![2, 2, 2, 2], true)] {
            let r = equivalence_suite(&chain_product(&sizes).unwrap(), &caps).unwrap();
            assert_eq!(r.statements, [Some(expected); 5], "{sizes:?}");
        }
    }

    #[test]
    fn two_factors() {
        let b = bipartite_case(&chain_product(&[2, 2]).unwrap()).unwrap();
        assert_eq!(b, BipartiteReport { parts: (1, 1), well_covered: true, cohen_macaulay: true });
        let b = bipartite_case(&chain_product(&[3, 3]).unwrap()).unwrap();
        assert_eq!(b, BipartiteReport { parts: (2, 2), well_covered: true, cohen_macaulay: false });
        let b = bipartite_case(&chain_product(&[2, 3]).unwrap()).unwrap();
        assert_eq!(b, BipartiteReport { parts: (1, 2), well_covered: false, cohen_macaulay: false });
        assert_eq!(
            bipartite_case(&chain_product(&[2, 2, 2]).unwrap()).unwrap_err(),
            Error::WrongArity { expected: 2, got: 3 }
        );
    }

    #[test]
    fn sizes_file() {
        assert_eq!(parse_sizes("2,2,2\n# c\n\n3, 3 ,3\n").unwrap(), vec![vec![2, 2, 2], vec![3, 3, 3]]);
        assert!(matches!(parse_sizes("2,2\n2\n"), Err(Error::Syntax { line: 2, .. })));
        assert!(matches!(parse_sizes("2,x\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_sizes("3,2\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_sizes("1,2\n"), Err(Error::Syntax { line: 1, .. })));
    }

    #[test]
    fn sweep_rows() {
        let rows = sweep(&[vec![2, 2, 2], vec![3, 3, 3], vec![2, 3]], &Caps::default()).unwrap();
        assert_eq!(
            sweep_tsv(&rows),
            "sizes\t|D|\t|J_1|\ttriple\twell-covered\tCM\tboolean-lattice\tnote\n\
             2,3\t2\t1\t-\tno\tno\tno\tK_{1,2}\n\
             2,2,2\t1\t3\t3\tyes\tyes\tyes\t-\n\
             3,3,3\t8\t10\t12\tno\tno\tno\t|J_1| = 10 != 12 = |J_{1,2,3}|\n"
        );
    }
}
