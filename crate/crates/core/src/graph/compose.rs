//! Gluing split graphs whose (1,j)-domination number equals their order into
//! a larger, non-split graph with the same property.

use thiserror::Error;

use super::{Graph, SplitPartition};
use crate::rng::{coin, rng_for};
use crate::split::{is_gamma_n_split, SplitError};

/// An edge between clique vertices of two different parts, each endpoint
/// given as `(part index, local vertex id)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossEdge {
    pub a: (usize, usize),
    pub b: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompositeError {
    #[error("no parts given")]
    NoParts,
    #[error("part {part}: {source}")]
    InvalidPart { part: usize, source: SplitError },
    #[error("part {0} does not satisfy the gamma = n characterization")]
    NotGammaN(usize),
    #[error("cross edge endpoint {0:?} is not a clique vertex of an existing part")]
    NotClique((usize, usize)),
    #[error("cross edge joins two vertices of part {0}")]
    SamePart(usize),
    #[error("cross edge between {0:?} and {1:?} listed twice")]
    Duplicate((usize, usize), (usize, usize)),
}

/// Disjoint union of `parts` plus `cross` edges between their cliques.
///
/// Every part must pass [`is_gamma_n_split`] for this `j`. Part `i` occupies
/// the id range starting at the total order of parts `0..i`.
pub fn composite_gamma_n(
    parts: &[(Graph, SplitPartition)],
    cross: &[CrossEdge],
    j: usize,
) -> Result<Graph, CompositeError> {
    if parts.is_empty() {
        return Err(CompositeError::NoParts);
    }
    let mut offsets = Vec::with_capacity(parts.len());
    let mut total = Graph::empty(0);
    for (idx, (g, part)) in parts.iter().enumerate() {
        let report = is_gamma_n_split(g, part, j)
            .map_err(|source| CompositeError::InvalidPart { part: idx, source })?;
        if !report.holds {
            return Err(CompositeError::NotGammaN(idx));
        }
        offsets.push(total.n());
        total = total.disjoint_union(g);
    }
    let mut extra = Vec::with_capacity(cross.len());
    for e in cross {
        for end in [e.a, e.b] {
            if end.0 >= parts.len() || !parts[end.0].1.is_clique(end.1) {
                return Err(CompositeError::NotClique(end));
            }
        }
        if e.a.0 == e.b.0 {
            return Err(CompositeError::SamePart(e.a.0));
        }
        let u = offsets[e.a.0] + e.a.1;
        let v = offsets[e.b.0] + e.b.1;
        extra.push((u.min(v), u.max(v)));
    }
    total
        .with_edges(extra)
        .map_err(|_| {
            let mut seen = std::collections::HashSet::new();
            let dup = cross
                .iter()
                .find(|e| {
                    let key = if e.a <= e.b { (e.a, e.b) } else { (e.b, e.a) };
                    !seen.insert(key)
                })
                .expect("only duplicates can make the union non-simple");
            CompositeError::Duplicate(dup.a, dup.b)
        })
}

/// Each pair of clique vertices from distinct parts becomes a cross edge
/// with probability `prob`.
pub fn random_cross_edges(parts: &[(Graph, SplitPartition)], prob: f64, seed: u64) -> Vec<CrossEdge> {
    let mut rng = rng_for(seed, 0);
    let mut out = Vec::new();
    for (pa, (_, a)) in parts.iter().enumerate() {
        for (pb, (_, b)) in parts.iter().enumerate().skip(pa + 1) {
            for &u in &a.clique {
                for &v in &b.clique {
                    if coin(&mut rng, prob) {
                        out.push(CrossEdge { a: (pa, u), b: (pb, v) });
                    }
                }
            }
        }
    }
    out
}
