//! Exact and heuristic computation of `Ψ_r(n, L)` (clique counts of graphs)
//! and `Φ_r(n, L)` (sizes of set families).

mod canon;
mod heuristic;
mod phi;
mod psi;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cliques::enumerate_kr;
use crate::error::Result;
use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::setsystem::{is_l_intersecting, IntersectionSpec, UniformSetSystem};

pub use canon::{
    canonical_form, generate_graphs, Canonical, CanonicalKey, CLASS_COUNTS, MAX_CANONICAL_VERTICES,
    MAX_GENERATED,
};
pub use heuristic::{psi_heuristic, seed_construction, HeuristicOptions};
pub use phi::{phi_exact, MAX_PHI_BRANCHES, MAX_PHI_NODES};
pub use psi::{psi_exact, psi_le_phi_report, PsiPhiComparison};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Psi,
    Phi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    BranchAndBound,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Graph(Graph),
    Family(UniformSetSystem),
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Witness::Graph(g) => {
                let mut st = s.serialize_struct("Witness", 2)?;
                st.serialize_field("kind", "graph")?;
                let line = write_graph6(g).map_err(serde::ser::Error::custom)?;
                st.serialize_field("graph6", &line)?;
                st.end()
            }
            Witness::Family(h) => {
                let mut st = s.serialize_struct("Witness", 2)?;
                st.serialize_field("kind", "family")?;
                st.serialize_field("edges", h.edges())?;
                st.end()
            }
        }
    }
}

/// A value of `Ψ` or `Φ` with a witness attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub quantity: Quantity,
    pub n: usize,
    pub r: usize,
    #[serde(rename = "L")]
    pub allowed: Vec<usize>,
    pub value: u64,
    pub witness: Witness,
    pub method: Method,
    /// True only when the search provably covered every candidate.
    pub exact: bool,
}

impl SearchResult {
    pub(crate) fn new(
        quantity: Quantity,
        n: usize,
        spec: &IntersectionSpec,
        value: u64,
        witness: Witness,
        method: Method,
        exact: bool,
    ) -> Self {
        SearchResult {
            quantity,
            n,
            r: spec.r(),
            allowed: spec.values(),
            value,
            witness,
            method,
            exact,
        }
    }
}

/// `N(K_r, g)` if `g` is `(K_r, L)`-intersecting.
pub(crate) fn feasible_count(g: &Graph, spec: &IntersectionSpec) -> Result<Option<u64>> {
    let cliques = enumerate_kr(g, spec.r())?;
    let ok = is_l_intersecting(cliques.as_system(), spec)?.holds();
    Ok(ok.then_some(cliques.len() as u64))
}
