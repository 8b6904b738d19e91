//! Ground truth: the (1,j)-set verifier and exact minimum solvers.
//!
//! Both engines work on per-vertex count bands: a set `D` is feasible when
//! every vertex outside `D` has between `lower(v)` and `upper(v)` neighbours
//! in `D`. A (1,j)-set uses the band `[1, j]` everywhere, a dominating set
//! `[1, inf)`, and an M-labelled tree its own labels.

mod bnb;
mod enumerate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::tree::MLabeledTree;

pub use enumerate::ENUMERATION_LIMIT;
pub use bnb::BRANCH_AND_BOUND_LIMIT;

/// A vertex set certifying a reported value; sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Witness(Vec<usize>);

impl Witness {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn cardinality(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

/// Admissible range for the number of selected neighbours of an unselected
/// vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Band {
    pub lower: usize,
    pub upper: usize,
}

impl Band {
    pub const fn new(lower: usize, upper: usize) -> Self {
        Self { lower, upper }
    }

    pub fn contains(&self, c: usize) -> bool {
        self.lower <= c && c <= self.upper
    }
}

/// Outcome of checking a candidate set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    /// Unselected vertices below their lower bound (no selected neighbour for
    /// a (1,j)-set).
    pub undominated: Vec<usize>,
    /// Unselected vertices above their upper bound.
    pub overdominated: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("j must be at least 1")]
    InvalidJ,
    #[error("band list has {got} entries for {n} vertices")]
    BandCount { got: usize, n: usize },
    #[error("{engine:?} is limited to {limit} vertices, graph has {n} (override required)")]
    GuardExceeded { engine: Engine, n: usize, limit: usize },
    #[error("{engine:?} cannot represent {n} vertices (hard limit {limit})")]
    TooLarge { engine: Engine, n: usize, limit: usize },
}

/// Exact search strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    /// All subsets in increasing size, lexicographic within a size.
    #[default]
    Enumeration,
    BranchAndBound,
}

#[derive(Debug, Clone, Default)]
pub struct ExactOptions {
    pub engine: Engine,
    /// Only look for sets of at most this size.
    pub budget: Option<usize>,
    /// Lift the soft vertex-count guard.
    pub allow_large: bool,
}

impl ExactOptions {
    pub fn with_engine(engine: Engine) -> Self {
        Self {
            engine,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactOutcome {
    Solved { value: usize, witness: Witness },
    /// No feasible set of size at most `budget` exists.
    InfeasibleWithinBudget { budget: usize },
}

impl ExactOutcome {
    pub fn solved(&self) -> Option<(usize, &Witness)> {
        match self {
            ExactOutcome::Solved { value, witness } => Some((*value, witness)),
            ExactOutcome::InfeasibleWithinBudget { .. } => None,
        }
    }
}

fn check_vertices(g: &Graph, set: &[usize]) -> Result<(), OracleError> {
    match set.iter().find(|&&v| v >= g.n()) {
        Some(&vertex) => Err(OracleError::VertexOutOfRange { vertex, n: g.n() }),
        None => Ok(()),
    }
}

/// Checks `set` against arbitrary per-vertex bands.
pub fn verify_bands(g: &Graph, set: &[usize], bands: &[Band]) -> Result<VerifyReport, OracleError> {
    check_vertices(g, set)?;
    if bands.len() != g.n() {
        return Err(OracleError::BandCount { got: bands.len(), n: g.n() });
    }
    let mut selected = vec![false; g.n()];
    for &v in set {
        selected[v] = true;
    }
    let mut undominated = Vec::new();
    let mut overdominated = Vec::new();
    for v in (0..g.n()).filter(|&v| !selected[v]) {
        let c = g.neighbors(v).iter().filter(|&&w| selected[w]).count();
        if c < bands[v].lower {
            undominated.push(v);
        } else if c > bands[v].upper {
            overdominated.push(v);
        }
    }
    Ok(VerifyReport {
        valid: undominated.is_empty() && overdominated.is_empty(),
        undominated,
        overdominated,
    })
}

pub fn uniform_bands(g: &Graph, lower: usize, upper: usize) -> Vec<Band> {
    vec![Band::new(lower, upper); g.n()]
}

/// Checks whether every vertex outside `set` has between 1 and `j`
/// neighbours inside it.
pub fn verify_1j_set(g: &Graph, set: &[usize], j: usize) -> Result<VerifyReport, OracleError> {
    if j == 0 {
        return Err(OracleError::InvalidJ);
    }
    verify_bands(g, set, &uniform_bands(g, 1, j))
}

/// Exact minimum set for arbitrary bands. `V` itself always qualifies, so
/// without a budget the outcome is always `Solved`.
pub fn exact_bands(g: &Graph, bands: &[Band], opts: &ExactOptions) -> Result<ExactOutcome, OracleError> {
    if bands.len() != g.n() {
        return Err(OracleError::BandCount { got: bands.len(), n: g.n() });
    }
    let max_size = opts.budget.unwrap_or(g.n()).min(g.n());
    let found = match opts.engine {
        Engine::Enumeration => {
            enumerate::guard(g.n(), opts.allow_large)?;
            enumerate::first_minimum(g, bands, max_size)
        }
        Engine::BranchAndBound => {
            bnb::guard(g.n(), opts.allow_large)?;
            bnb::minimum(g, bands, max_size)
        }
    };
    Ok(match found {
        Some(set) => {
            let witness = Witness::new(set);
            debug_assert!(verify_bands(g, witness.vertices(), bands).unwrap().valid);
            ExactOutcome::Solved {
                value: witness.cardinality(),
                witness,
            }
        }
        None => ExactOutcome::InfeasibleWithinBudget {
            budget: opts.budget.unwrap_or(g.n()),
        },
    })
}

/// Minimum (1,j)-set.
pub fn exact_gamma_1j(g: &Graph, j: usize, opts: &ExactOptions) -> Result<ExactOutcome, OracleError> {
    if j == 0 {
        return Err(OracleError::InvalidJ);
    }
    exact_bands(g, &uniform_bands(g, 1, j), opts)
}

/// Domination number by enumeration (`n <= 20`).
pub fn exact_gamma(g: &Graph) -> Result<(usize, Witness), OracleError> {
    let outcome = exact_bands(g, &uniform_bands(g, 1, usize::MAX), &ExactOptions::default())?;
    Ok(solved(outcome))
}

/// Minimum M-set of a labelled tree by enumeration (`n <= 20`).
pub fn exact_gamma_m(t: &MLabeledTree) -> Result<(usize, Witness), OracleError> {
    let outcome = exact_bands(t.tree(), t.bands(), &ExactOptions::default())?;
    Ok(solved(outcome))
}

fn solved(outcome: ExactOutcome) -> (usize, Witness) {
    match outcome {
        ExactOutcome::Solved { value, witness } => (value, witness),
        ExactOutcome::InfeasibleWithinBudget { .. } => unreachable!("no budget was set"),
    }
}

/// Every minimum-cardinality set for `bands`, in lexicographic order
/// (enumeration engine, `n <= 20`).
pub fn all_minimum_sets(g: &Graph, bands: &[Band]) -> Result<(usize, Vec<Witness>), OracleError> {
    if bands.len() != g.n() {
        return Err(OracleError::BandCount { got: bands.len(), n: g.n() });
    }
    enumerate::guard(g.n(), false)?;
    let (size, sets) = enumerate::all_minimum(g, bands);
    Ok((size, sets.into_iter().map(Witness::new).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gnp, random_tree};

    fn value(g: &Graph, j: usize, engine: Engine) -> usize {
        exact_gamma_1j(g, j, &ExactOptions::with_engine(engine))
            .unwrap()
            .solved()
            .unwrap()
            .0
    }

    #[test]
    fn verify_examples() {
        let k3 = Graph::complete(3);
        assert!(verify_1j_set(&k3, &[0], 1).unwrap().valid);

        let star = Graph::star(3);
        let r = verify_1j_set(&star, &[1, 2, 3], 2).unwrap();
        assert!(!r.valid);
        assert_eq!(r.overdominated, vec![0]);
        assert!(r.undominated.is_empty());

        let g = gnp(9, 0.3, 5);
        let all: Vec<usize> = (0..9).collect();
        for j in 1..4 {
            assert!(verify_1j_set(&g, &all, j).unwrap().valid);
        }

        let r = verify_1j_set(&Graph::path(3), &[0], 2).unwrap();
        assert_eq!(r.undominated, vec![2]);

        assert_eq!(
            verify_1j_set(&k3, &[3], 1),
            Err(OracleError::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(verify_1j_set(&k3, &[0], 0), Err(OracleError::InvalidJ));
    }

    #[test]
    fn exact_examples() {
        for engine in [Engine::Enumeration, Engine::BranchAndBound] {
            assert_eq!(value(&Graph::path(4), 2, engine), 2);
            for n in 1..8 {
                for j in 1..4 {
                    assert_eq!(value(&Graph::complete(n), j, engine), 1);
                }
            }
            assert_eq!(value(&Graph::empty(5), 1, engine), 5);
        }
        assert_eq!(exact_gamma(&Graph::complete(3)).unwrap().0, 1);
        assert_eq!(exact_gamma(&Graph::path(4)).unwrap().0, 2);
        assert_eq!(exact_gamma(&Graph::empty(6)).unwrap().0, 6);
    }

    #[test]
    fn p4_enumeration_by_hand() {
        // Independent oracle: scan all 16 subsets of P4 directly.
        let g = Graph::path(4);
        let mut best = usize::MAX;
        for mask in 0u32..16 {
            let set: Vec<usize> = (0..4).filter(|&v| mask >> v & 1 == 1).collect();
            let ok = (0..4).filter(|&v| mask >> v & 1 == 0).all(|v| {
                let c = g.neighbors(v).iter().filter(|&&w| mask >> w & 1 == 1).count();
                (1..=2).contains(&c)
            });
            if ok {
                best = best.min(set.len());
            }
        }
        assert_eq!(best, 2);
        let out = exact_gamma_1j(&g, 2, &ExactOptions::default()).unwrap();
        // Lexicographically smallest minimum set.
        assert_eq!(out.solved().unwrap().1.vertices(), &[0, 2]);
    }

    #[test]
    fn budgets() {
        let g = Graph::path(4);
        for engine in [Engine::Enumeration, Engine::BranchAndBound] {
            let opts = ExactOptions { engine, budget: Some(1), allow_large: false };
            assert_eq!(
                exact_gamma_1j(&g, 2, &opts).unwrap(),
                ExactOutcome::InfeasibleWithinBudget { budget: 1 }
            );
            let opts = ExactOptions { engine, budget: Some(3), allow_large: false };
            assert_eq!(exact_gamma_1j(&g, 2, &opts).unwrap().solved().unwrap().0, 2);
        }
    }

    #[test]
    fn guards() {
        let g = Graph::empty(21);
        assert!(matches!(
            exact_gamma_1j(&g, 1, &ExactOptions::default()),
            Err(OracleError::GuardExceeded { .. })
        ));
        let g = Graph::path(37);
        let opts = ExactOptions::with_engine(Engine::BranchAndBound);
        assert!(matches!(exact_gamma_1j(&g, 2, &opts), Err(OracleError::GuardExceeded { .. })));
        let opts = ExactOptions { allow_large: true, ..opts };
        // Path domination number is ceil(n / 3) and paths are (1,2)-dominated by it.
        assert_eq!(exact_gamma_1j(&g, 2, &opts).unwrap().solved().unwrap().0, 13);
    }

    #[test]
    fn engines_agree_and_witnesses_verify() {
        for seed in 0..200u64 {
            let n = 4 + (seed % 15) as usize;
            let g = gnp(n, 0.15 + (seed % 5) as f64 * 0.1, seed);
            for j in 1..=3 {
                let a = exact_gamma_1j(&g, j, &ExactOptions::default()).unwrap();
                let b = exact_gamma_1j(&g, j, &ExactOptions::with_engine(Engine::BranchAndBound)).unwrap();
                let (va, wa) = a.solved().unwrap();
                let (vb, wb) = b.solved().unwrap();
                assert_eq!(va, vb, "seed {seed} j {j}");
                assert!(verify_1j_set(&g, wa.vertices(), j).unwrap().valid);
                assert!(verify_1j_set(&g, wb.vertices(), j).unwrap().valid);
            }
        }
    }

    #[test]
    fn sandwich_on_small_graphs() {
        for seed in 0..120u64 {
            let g = gnp(3 + (seed % 12) as usize, 0.35, seed);
            let gamma = exact_gamma(&g).unwrap().0;
            let v: Vec<usize> = (1..=4).map(|j| value(&g, j, Engine::Enumeration)).collect();
            assert!(gamma <= v[3] && v[3] <= v[2] && v[2] <= v[1] && v[1] <= v[0] && v[0] <= g.n());
            let delta = g.max_degree().max(1);
            assert_eq!(value(&g, delta, Engine::Enumeration), gamma);
        }
    }

    #[test]
    fn all_minimum_sets_of_p3() {
        let g = Graph::path(3);
        let (size, sets) = all_minimum_sets(&g, &uniform_bands(&g, 1, 1)).unwrap();
        assert_eq!(size, 1);
        assert_eq!(sets, vec![Witness::new(vec![1])]);
        let t = random_tree(7, 3);
        let (size, sets) = all_minimum_sets(&t, &uniform_bands(&t, 1, 2)).unwrap();
        assert!(sets.iter().all(|w| w.cardinality() == size));
        assert!(sets.windows(2).all(|w| w[0] < w[1]));
    }
}
