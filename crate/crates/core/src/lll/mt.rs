//! Moser-Tardos resampling for (1,j)-sets.
//!
//! Each vertex carries a boolean variable "in D", drawn with probability `p`.
//! Two kinds of clause can fail at an unselected vertex `v`: the domination
//! clause over `N[v]` when no neighbour is selected, and an upper clause over
//! `v` plus `j + 1` selected neighbours when too many are selected. The
//! clause family is never materialized; a failing clause is read off a
//! violating vertex (its `j + 1` lowest selected neighbours for the upper
//! kind) and exactly its variables are redrawn.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{compute_alpha, premise_threshold, selection_probability, LllError};
use crate::graph::Graph;
use crate::oracle::{verify_1j_set, Witness};
use crate::rng::{below, coin, rng_for, SeededRng};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClauseChoice {
    /// Resample at the lowest-id violating vertex.
    #[default]
    LowestId,
    /// Resample at a uniformly random violating vertex.
    Random,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MtConfig {
    pub seed: u64,
    pub stream: u64,
    /// Resampling cap; `None` means `1000 · n`.
    pub max_resamples: Option<usize>,
    pub clause_choice: ClauseChoice,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MtRun {
    pub seed: u64,
    pub stream: u64,
    pub p: f64,
    pub max_resamples: usize,
    pub resample_count: usize,
    pub domination_resamples: usize,
    pub upper_resamples: usize,
    pub result: Witness,
    pub terminated: bool,
}

struct State<'a> {
    g: &'a Graph,
    j: usize,
    p: f64,
    selected: Vec<bool>,
    count: Vec<usize>,
    violated: BTreeSet<usize>,
}

impl State<'_> {
    fn is_violated(&self, v: usize) -> bool {
        !self.selected[v] && (self.count[v] == 0 || self.count[v] > self.j)
    }

    fn refresh(&mut self, v: usize) {
        if self.is_violated(v) {
            self.violated.insert(v);
        } else {
            self.violated.remove(&v);
        }
    }

    fn set(&mut self, v: usize, value: bool) {
        if self.selected[v] == value {
            return;
        }
        self.selected[v] = value;
        for &w in self.g.neighbors(v) {
            if value {
                self.count[w] += 1;
            } else {
                self.count[w] -= 1;
            }
        }
        self.refresh(v);
        for i in 0..self.g.degree(v) {
            let w = self.g.neighbors(v)[i];
            self.refresh(w);
        }
    }

    fn resample(&mut self, vars: &[usize], rng: &mut SeededRng) {
        for &x in vars {
            let value = coin(rng, self.p);
            self.set(x, value);
        }
    }
}

/// Runs the resampling loop on `g` with the selection probability implied by
/// its degrees.
pub fn mt_construct(g: &Graph, j: usize, config: &MtConfig) -> Result<MtRun, LllError> {
    if j == 0 {
        return Err(LllError::InvalidJ);
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(LllError::IsolatedVertex(v));
    }
    if g.n() == 0 {
        return Err(LllError::Domain("graph has no vertices".into()));
    }
    let (dmax, dmin) = (g.max_degree(), g.min_degree());
    let alpha = compute_alpha(j, dmax, dmin)?
        .ok_or(LllError::PremiseInfeasible { j, threshold: premise_threshold(dmax, dmin) })?;
    let p = selection_probability(dmax, dmin, alpha)?;
    let cap = config.max_resamples.unwrap_or(1000 * g.n());

    let mut rng = rng_for(config.seed, config.stream);
    let mut st = State {
        g,
        j,
        p,
        selected: vec![false; g.n()],
        count: vec![0; g.n()],
        violated: BTreeSet::new(),
    };
    let all: Vec<usize> = (0..g.n()).collect();
    st.violated.extend(0..g.n());
    st.resample(&all, &mut rng);

    let (mut dom, mut upper) = (0, 0);
    let mut vars = Vec::with_capacity(g.max_degree() + 1);
    while !st.violated.is_empty() && dom + upper < cap {
        let v = match config.clause_choice {
            ClauseChoice::LowestId => *st.violated.first().expect("non-empty"),
            ClauseChoice::Random => {
                let k = below(&mut rng, st.violated.len());
                *st.violated.iter().nth(k).expect("index below length")
            }
        };
        vars.clear();
        if st.count[v] == 0 {
            vars.extend(std::iter::once(v).chain(g.neighbors(v).iter().copied()));
            vars.sort_unstable();
            dom += 1;
        } else {
            vars.push(v);
            vars.extend(g.neighbors(v).iter().copied().filter(|&w| st.selected[w]).take(j + 1));
            vars.sort_unstable();
            upper += 1;
        }
        st.resample(&vars, &mut rng);
    }

    if !st.violated.is_empty() {
        let undominated = st.violated.iter().filter(|&&v| st.count[v] == 0).count();
        return Err(LllError::DidNotTerminate {
            resamples: dom + upper,
            undominated,
            overdominated: st.violated.len() - undominated,
        });
    }
    let result = Witness::new((0..g.n()).filter(|&v| st.selected[v]).collect());
    debug_assert!(verify_1j_set(g, result.vertices(), j).is_ok_and(|r| r.valid));
    Ok(MtRun {
        seed: config.seed,
        stream: config.stream,
        p,
        max_resamples: cap,
        resample_count: dom + upper,
        domination_resamples: dom,
        upper_resamples: upper,
        result,
        terminated: true,
    })
}

/// Outcome of one seeded trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub stream: u64,
    pub terminated: bool,
    pub size: Option<usize>,
    pub resamples: usize,
    pub valid: bool,
    pub bound: f64,
}

/// Runs `trials` independent resampling runs; trial `t` uses stream `t` of
/// `master_seed`. Records come back in trial order.
pub fn mt_trials(
    g: &Graph,
    j: usize,
    master_seed: u64,
    trials: usize,
    max_resamples: Option<usize>,
    clause_choice: ClauseChoice,
) -> Result<Vec<TrialRecord>, LllError> {
    // Surface configuration errors once rather than per trial.
    let (dmax, dmin) = (g.max_degree(), g.min_degree());
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) == 0) {
        return Err(LllError::IsolatedVertex(v));
    }
    let alpha = compute_alpha(j, dmax, dmin)?
        .ok_or(LllError::PremiseInfeasible { j, threshold: premise_threshold(dmax, dmin) })?;
    let bound = g.n() as f64 * selection_probability(dmax, dmin, alpha)?;

    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let config = MtConfig {
                seed: master_seed,
                stream: trial as u64,
                max_resamples,
                clause_choice,
            };
            match mt_construct(g, j, &config) {
                Ok(run) => Ok(TrialRecord {
                    trial,
                    seed: master_seed,
                    stream: trial as u64,
                    terminated: true,
                    size: Some(run.result.cardinality()),
                    resamples: run.resample_count,
                    valid: verify_1j_set(g, run.result.vertices(), j).is_ok_and(|r| r.valid),
                    bound,
                }),
                Err(LllError::DidNotTerminate { resamples, .. }) => Ok(TrialRecord {
                    trial,
                    seed: master_seed,
                    stream: trial as u64,
                    terminated: false,
                    size: None,
                    resamples,
                    valid: false,
                    bound,
                }),
                Err(e) => Err(e),
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub terminated: usize,
    pub valid: usize,
    /// Terminated runs with size at most `slack · n · p`.
    pub within_bound: usize,
    pub fraction_within_bound: f64,
    pub slack: f64,
}

pub fn summarize_trials(records: &[TrialRecord], slack: f64) -> TrialSummary {
    let within_bound = records
        .iter()
        .filter(|r| r.size.is_some_and(|s| s as f64 <= slack * r.bound))
        .count();
    TrialSummary {
        trials: records.len(),
        terminated: records.iter().filter(|r| r.terminated).count(),
        valid: records.iter().filter(|r| r.valid).count(),
        within_bound,
        fraction_within_bound: if records.is_empty() { 0.0 } else { within_bound as f64 / records.len() as f64 },
        slack,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_regular;

    #[test]
    fn complete_graph_gives_dominating_set() {
        let g = Graph::complete(13);
        for seed in 0..20 {
            let run = mt_construct(&g, 18, &MtConfig { seed, ..MtConfig::default() }).unwrap();
            assert!(run.terminated);
            assert_eq!(run.upper_resamples, 0);
            assert!(verify_1j_set(&g, run.result.vertices(), 18).unwrap().valid);
        }
    }

    #[test]
    fn preconditions() {
        let g = Graph::empty(3).with_edges([(0, 1)]).unwrap();
        assert_eq!(mt_construct(&g, 20, &MtConfig::default()), Err(LllError::IsolatedVertex(2)));
        let c = Graph::cycle(10);
        assert!(matches!(mt_construct(&c, 2, &MtConfig::default()), Err(LllError::PremiseInfeasible { .. })));
        assert!(matches!(
            mt_construct(&c, 30, &MtConfig::default()),
            Err(LllError::InfeasibleProbability { .. })
        ));
    }

    #[test]
    fn regular_run_is_valid_and_reproducible() {
        let g = random_regular(500, 12, 3).unwrap();
        let config = MtConfig { seed: 11, ..MtConfig::default() };
        let a = mt_construct(&g, 18, &config).unwrap();
        assert!(verify_1j_set(&g, a.result.vertices(), 18).unwrap().valid);
        assert_eq!(a, mt_construct(&g, 18, &config).unwrap());
        let random = MtConfig { seed: 11, clause_choice: ClauseChoice::Random, ..MtConfig::default() };
        let b = mt_construct(&g, 18, &random).unwrap();
        assert!(verify_1j_set(&g, b.result.vertices(), 18).unwrap().valid);
    }

    #[test]
    fn cap_is_reported() {
        let g = random_regular(500, 12, 5).unwrap();
        let run = (0..2000)
            .map(|seed| mt_construct(&g, 18, &MtConfig { seed, ..MtConfig::default() }).unwrap())
            .find(|r| r.resample_count > 0)
            .expect("some seed needs resampling");
        let capped = MtConfig { seed: run.seed, max_resamples: Some(run.resample_count - 1), ..MtConfig::default() };
        assert!(matches!(mt_construct(&g, 18, &capped), Err(LllError::DidNotTerminate { .. })));
    }

    #[test]
    fn trials_are_ordered_and_deterministic() {
        let g = random_regular(100, 12, 9).unwrap();
        let a = mt_trials(&g, 18, 42, 8, None, ClauseChoice::LowestId).unwrap();
        assert_eq!(a, mt_trials(&g, 18, 42, 8, None, ClauseChoice::LowestId).unwrap());
        assert!(a.iter().enumerate().all(|(i, r)| r.trial == i && r.valid));
        let s = summarize_trials(&a, 1.25);
        assert_eq!((s.trials, s.terminated, s.valid), (8, 8, 8));
    }
}
