//! Consolidated reports: order-theoretic summary of a poset, and every
//! Cohen–Macaulay related verdict on its zero-divisor graph with the
//! implications between them cross-checked.

use std::fmt;

use crate::cmcert::{boolean_certificate, decide_from_complex, CmDecision, Evidence, Verdict};
use crate::complex::{independence_complex, IndependenceComplex};
use crate::error::{Error, Result};
use crate::homology::ReisnerReport;
use crate::poset::Poset;
use crate::zdg::{zero_divisors, ZdGraph};
use crate::Caps;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Summary printed by `info`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfoReport {
    pub elements: usize,
    pub bounded: bool,
    pub atoms: Option<usize>,
    pub weight: Option<usize>,
    pub distributive: bool,
    /// `Ok(())` or the reason the poset is not Boolean.
    pub boolean: std::result::Result<(), String>,
    pub ssc: Option<bool>,
    pub wssc: Option<bool>,
    pub zero_divisors: Option<usize>,
}

pub fn info(poset: &Poset) -> Result<InfoReport> {
    let has_bottom = poset.bottom().is_some();
    let check = poset.boolean_check();
    Ok(InfoReport {
        elements: poset.len(),
        bounded: poset.is_bounded(),
        atoms: if has_bottom { Some(poset.atoms()?.len()) } else { None },
        weight: if has_bottom {
            poset.bottom().and(poset.top()).map(|_| poset.total_weight()).transpose()?
        } else {
            None
        },
        distributive: poset.is_distributive(),
        boolean: if check.is_boolean() { Ok(()) } else { Err(check.describe(poset)) },
        ssc: if has_bottom { Some(poset.is_ssc()?) } else { None },
        wssc: if has_bottom { Some(poset.is_wssc()?) } else { None },
        zero_divisors: if has_bottom { Some(zero_divisors(poset)?.len()) } else { None },
    })
}

fn opt<T: fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn opt_bool(v: Option<bool>) -> &'static str {
    v.map_or("-", yes_no)
}

impl fmt::Display for InfoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "elements: {}", self.elements)?;
        writeln!(f, "bounded: {}", yes_no(self.bounded))?;
        writeln!(f, "atoms: {}", opt(self.atoms))?;
        writeln!(f, "weight: {}", opt(self.weight))?;
        writeln!(f, "distributive: {}", yes_no(self.distributive))?;
        match &self.boolean {
            Ok(()) => writeln!(f, "boolean: yes")?,
            Err(reason) => writeln!(f, "boolean: no ({reason})")?,
        }
        writeln!(f, "ssc: {}", opt_bool(self.ssc))?;
        writeln!(f, "wssc: {}", opt_bool(self.wssc))?;
        writeln!(f, "zero-divisors: {}", opt(self.zero_divisors))
    }
}

/// A verdict that may have been skipped for size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Checked<T> {
    Done(T),
    Skipped(String),
}

impl<T> Checked<T> {
    pub fn done(&self) -> Option<&T> {
        match self {
            Checked::Done(t) => Some(t),
            Checked::Skipped(_) => None,
        }
    }
}

/// Everything `check` reports.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub elements: usize,
    pub boolean: bool,
    pub vertices: usize,
    pub edges: usize,
    pub well_covered: Checked<bool>,
    pub very_well_covered: Checked<bool>,
    /// `None` for the empty graph.
    pub my: Option<CmDecision>,
    pub reisner: Checked<ReisnerReport>,
    pub facets: Option<Vec<Vec<String>>>,
    pub certificate_json: Option<String>,
    /// Vertex labels of `Γ(P)`.
    pub labels: Vec<String>,
    /// Broken implications between the verdicts above.
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn consistent(&self) -> bool {
        self.violations.is_empty()
    }

    /// Combined verdict: the certificate path, falling back to the oracle.
    pub fn cm(&self) -> Option<bool> {
        self.my.as_ref().and_then(|d| d.verdict.as_bool()).or_else(|| self.reisner.done().map(|r| r.cohen_macaulay))
    }

    fn face_text(&self, face: &[usize]) -> String {
        let parts: Vec<&str> = face.iter().map(|&v| self.labels[v].as_str()).collect();
        format!("{{{}}}", parts.join(", "))
    }

    /// Text report; `verbose` adds facets and the certificate.
    pub fn render(&self, verbose: bool) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(": ");
            out.push_str(&v);
            out.push('\n');
        };
        line("elements", self.elements.to_string());
        line("boolean", yes_no(self.boolean).to_string());
        line("vertices", self.vertices.to_string());
        line("edges", self.edges.to_string());
        let checked = |c: &Checked<bool>| match c {
            Checked::Done(b) => yes_no(*b).to_string(),
            Checked::Skipped(r) => format!("skipped ({r})"),
        };
        line("well-covered", checked(&self.well_covered));
        line("very-well-covered", checked(&self.very_well_covered));
        let my = match &self.my {
            None => "n/a (empty graph)".to_string(),
            Some(d) => {
                let v = match d.verdict {
                    Verdict::Cm => "yes",
                    Verdict::NotCm => "no",
                    Verdict::Inconclusive => "inconclusive",
                };
                let mut s = format!("{v} [{}]", d.evidence.path());
                match &d.evidence {
                    Evidence::BooleanConstruction { stratum_order_valid: false, .. } => {
                        s.push_str(" (stratum order reordered)")
                    }
                    Evidence::SearchFound { nodes, .. }
                    | Evidence::SearchExhausted { nodes }
                    | Evidence::SearchBudgetExceeded { nodes } => s.push_str(&format!(" ({nodes} nodes)")),
                    Evidence::Skipped { reason } => s.push_str(&format!(" ({reason})")),
                    _ => {}
                }
                s
            }
        };
        line("CM(MY)", my);
        let reisner = match &self.reisner {
            Checked::Done(r) => match &r.witness {
                None => yes_no(r.cohen_macaulay).to_string(),
                Some((face, i)) => {
                    format!("{} (link of {} has reduced H_{i} != 0)", yes_no(r.cohen_macaulay), self.face_text(face))
                }
            },
            Checked::Skipped(r) => format!("skipped ({r})"),
        };
        line("CM(Reisner)", reisner);
        line("CM", self.cm().map_or("inconclusive", yes_no).to_string());
        if self.violations.is_empty() {
            line("consistent", "yes".to_string());
        } else {
            line("consistent", format!("no ({})", self.violations.join("; ")));
        }
        if verbose {
            if let Some(facets) = &self.facets {
                out.push_str("facets:\n");
                for facet in facets {
                    out.push_str(&format!("  {{{}}}\n", facet.join(", ")));
                }
            }
            if let Some(json) = &self.certificate_json {
                out.push_str("certificate:\n");
                out.push_str(json);
                out.push('\n');
            }
        }
        out
    }
}

fn skipped_reason(e: &Error) -> Option<String> {
    match e {
        Error::SizeLimitExceeded { size, cap, .. } => Some(format!("{size} vertices > cap {cap}")),
        _ => None,
    }
}

/// Runs every check on `Γ(P)` and cross-checks the implications
/// Boolean ⇒ CM, CM ⇒ well-covered, very-well-covered ⇒ well-covered,
/// and agreement of the certificate path with the oracle.
pub fn check(poset: &Poset, caps: &Caps) -> Result<CheckReport> {
    let g = ZdGraph::build(poset)?;
    let boolean = poset.is_boolean();

    let complex: Checked<IndependenceComplex> = match independence_complex(&g, caps.max_vertices) {
        Ok(c) => Checked::Done(c),
        Err(e) => Checked::Skipped(skipped_reason(&e).ok_or(e)?),
    };
    let nonempty = g.vertex_count() > 0;
    let (well_covered, very_well_covered) = match &complex {
        Checked::Done(c) if nonempty => (Checked::Done(c.is_well_covered()?), Checked::Done(c.is_very_well_covered()?)),
        Checked::Done(_) => (Checked::Skipped("empty graph".into()), Checked::Skipped("empty graph".into())),
        Checked::Skipped(r) => (Checked::Skipped(r.clone()), Checked::Skipped(r.clone())),
    };

    let my = if !nonempty {
        None
    } else if boolean {
        let (certificate, stratum_order_valid) = boolean_certificate(poset, &g)?;
        Some(CmDecision {
            verdict: Verdict::Cm,
            evidence: Evidence::BooleanConstruction { certificate, stratum_order_valid },
        })
    } else {
        Some(match &complex {
            Checked::Done(c) => decide_from_complex(c, caps)?,
            Checked::Skipped(r) => CmDecision {
                verdict: Verdict::Inconclusive,
                evidence: Evidence::Skipped { reason: format!("facet enumeration: {r}") },
            },
        })
    };

    let reisner = match &complex {
        Checked::Done(_) if !nonempty => Checked::Skipped("empty graph".into()),
        Checked::Done(c) => match c.simplicial().reisner(caps.max_homology_vertices) {
            Ok(r) => Checked::Done(r),
            Err(e) => Checked::Skipped(skipped_reason(&e).ok_or(e)?),
        },
        Checked::Skipped(r) => Checked::Skipped(r.clone()),
    };

    let mut violations = Vec::new();
    let my_cm = my.as_ref().and_then(|d| d.verdict.as_bool());
    let oracle_cm = reisner.done().map(|r| r.cohen_macaulay);
    if let (Some(a), Some(b)) = (my_cm, oracle_cm) {
        if a != b {
            violations.push(format!("certificate path says CM = {a}, oracle says {b}"));
        }
    }
    let cm = my_cm.or(oracle_cm);
    let wc = well_covered.done().copied();
    let vwc = very_well_covered.done().copied();
    if cm == Some(true) && wc == Some(false) {
        violations.push("CM but not well-covered".into());
    }
    if vwc == Some(true) && wc == Some(false) {
        violations.push("very well-covered but not well-covered".into());
    }
    if boolean && nonempty && (cm == Some(false) || vwc == Some(false)) {
        violations.push("Boolean but not CM or not very well-covered".into());
    }
    if let Some(cert) = my.as_ref().and_then(|d| d.evidence.certificate()) {
        if !cert.passed() {
            violations.push("certificate fails its own conditions".into());
        }
    }

    let certificate_json = my
        .as_ref()
        .and_then(|d| d.evidence.certificate())
        .map(|c| serde_json::to_string_pretty(&c.to_json(&g)).expect("JSON values serialize"));
    Ok(CheckReport {
        elements: poset.len(),
        boolean,
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        well_covered,
        very_well_covered,
        my,
        reisner,
        facets: complex.done().map(IndependenceComplex::facet_labels),
        certificate_json,
        labels: g.labels().to_vec(),
        violations,
    })
}
