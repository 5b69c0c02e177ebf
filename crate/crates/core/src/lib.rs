//! Zero-divisor graphs of finite bounded posets.
//!
//! The crate builds `Γ(P)` for a poset given as a `poset v1` file or a catalog
//! entry, enumerates the facets of its independence complex, decides
//! well-coveredness, and decides Cohen–Macaulayness in two independent ways:
//! a combinatorial relabeling certificate ([`cmcert`]) and exact reduced
//! homology of links over the rationals ([`homology`]).

pub mod check;
pub mod cmcert;
pub mod complex;
pub mod error;
pub mod graph;
pub mod homology;
pub mod linalg;
pub mod poset;
pub mod product;
pub mod zdg;

pub use error::{Error, Result};
pub use graph::Graph;
pub use poset::{parse_poset, ElementSet, Poset};
pub use zdg::ZdGraph;

/// Size limits for the exponential parts of the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest vertex count for facet enumeration.
    pub max_vertices: usize,
    /// Largest vertex count for the Reisner homology oracle.
    pub max_homology_vertices: usize,
    /// Node budget for the generic certificate search.
    pub max_search_nodes: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_vertices: 40, max_homology_vertices: 20, max_search_nodes: 1_000_000 }
    }
}
