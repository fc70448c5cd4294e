use rayon::prelude::*;
use serde::Serialize;

use super::canon::{canonical_form, generate_graphs, CanonicalKey, CLASS_COUNTS, MAX_CANONICAL_VERTICES};
use super::phi::phi_exact;
use super::{feasible_count, Method, Quantity, SearchResult, Witness};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{ratio, serde_pq, Rational};
use crate::setsystem::IntersectionSpec;

/// `Ψ_r(n, L)` by exhaustive search over one graph per isomorphism class.
///
/// Without a catalog the classes are generated internally (`n ≤ 7`). A
/// catalog must list graphs on exactly `n` vertices; the result is exact
/// only if the catalog's distinct classes number exactly the known class
/// count. The witness is the canonical labelling of the maximiser with the
/// smallest canonical key, so neither catalog order nor labelling affects
/// the output.
pub fn psi_exact(n: usize, spec: &IntersectionSpec, catalog: Option<&[Graph]>) -> Result<SearchResult> {
    let (graphs, internal) = match catalog {
        Some(c) => (c, false),
        None => (generate_graphs(n)?, true),
    };
    if let Some(bad) = graphs.iter().position(|g| g.n() != n) {
        return Err(Error::invalid(format!(
            "catalog entry {bad} has {} vertices, expected {n}",
            graphs[bad].n()
        )));
    }
    if n > MAX_CANONICAL_VERTICES {
        return Err(Error::Budget(format!(
            "exhaustive search is limited to n <= {MAX_CANONICAL_VERTICES}"
        )));
    }
    let counts: Vec<Option<u64>> = graphs
        .par_iter()
        .map(|g| feasible_count(g, spec))
        .collect::<Result<_>>()?;

    let exact = if internal {
        true
    } else {
        let mut keys: Vec<CanonicalKey> = graphs
            .par_iter()
            .map(|g| canonical_form(g).map(|c| c.key))
            .collect::<Result<_>>()?;
        keys.sort_unstable();
        keys.dedup();
        keys.len() as u64 == CLASS_COUNTS[n]
    };

    // An empty catalog leaves the edgeless graph as the witness.
    let best = counts.iter().flatten().copied().max();
    let (value, witness) = match best {
        None => (0, Graph::empty(n)),
        Some(best) => {
            let mut top: Vec<(CanonicalKey, Graph)> = graphs
                .par_iter()
                .zip(counts.par_iter())
                .filter(|(_, c)| **c == Some(best))
                .map(|(g, _)| canonical_form(g).map(|c| (c.key, c.graph)))
                .collect::<Result<_>>()?;
            top.sort_by(|a, b| a.0.cmp(&b.0));
            (best, top.swap_remove(0).1)
        }
    };
    if feasible_count(&witness, spec)? != Some(value) {
        return Err(Error::Invariant("Ψ witness does not attain the reported value".into()));
    }
    Ok(SearchResult::new(
        Quantity::Psi,
        n,
        spec,
        value,
        Witness::Graph(witness),
        Method::Exhaustive,
        exact,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiPhiComparison {
    pub psi: SearchResult,
    pub phi: SearchResult,
    /// `Ψ / Φ`; absent when `Φ = 0`.
    #[serde(serialize_with = "serde_pq::option::serialize")]
    pub ratio: Option<Rational>,
}

/// Both quantities exactly, checking `Ψ ≤ Φ`.
pub fn psi_le_phi_report(n: usize, spec: &IntersectionSpec) -> Result<PsiPhiComparison> {
    let psi = psi_exact(n, spec, None)?;
    let phi = phi_exact(n, spec)?;
    if !(psi.exact && phi.exact) {
        return Err(Error::Budget("Ψ and Φ must both be exact".into()));
    }
    if psi.value > phi.value {
        return Err(Error::Invariant(format!(
            "Ψ = {} exceeds Φ = {} at n = {n}, r = {}, L = {spec}",
            psi.value,
            phi.value,
            spec.r()
        )));
    }
    let ratio = (phi.value > 0).then(|| ratio(psi.value, phi.value));
    Ok(PsiPhiComparison { psi, phi, ratio })
}
