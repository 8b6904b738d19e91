//! Minimum (1,j)-sets of connected split graphs by case analysis on how many
//! clique vertices the set contains, and the characterization of split
//! graphs whose only (1,j)-set is the whole vertex set.
//!
//! A clique vertex outside `D` already sees every selected clique vertex, so
//! once more than `j` clique vertices are selected all of them must be. That
//! leaves the cases `|D ∩ K| ∈ {0, 1, ..., j}` plus `K ⊆ D`, each solvable
//! by scanning subsets of `K` of one size.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, PartitionError, SplitPartition};
use crate::oracle::{verify_1j_set, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid partition: {0}")]
    InvalidPartition(#[from] PartitionError),
    #[error("j must be at least 1")]
    InvalidJ,
    #[error("case {case_index} produced {witness:?}, which is not a (1,j)-set")]
    InternalContradiction { case_index: usize, witness: Vec<usize> },
}

/// Best candidate of one case. Case `j + 1` stands for `K ⊆ D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitCaseResult {
    pub case_index: usize,
    pub candidate: Option<Witness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitMode {
    /// Cases `0..=j+1`.
    CaseAnalysis,
    /// `|K| <= j`: every subset of `K` is tried; `case_index` is its size.
    SmallClique,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitSolution {
    pub value: usize,
    pub witness: Witness,
    pub cases: Vec<SplitCaseResult>,
    pub mode: SplitMode,
}

/// Visits the `k`-subsets of `items` in lexicographic order.
fn for_each_subset(items: &[usize], k: usize, mut visit: impl FnMut(&[usize])) {
    let n = items.len();
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf = vec![0; k];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = items[i];
        }
        visit(&buf);
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

struct Ctx<'a> {
    g: &'a Graph,
    part: &'a SplitPartition,
    j: usize,
    n1: usize,
}

impl Ctx<'_> {
    /// Number of neighbours of `v` that are marked.
    fn marked_neighbors(&self, v: usize, mark: &[bool]) -> usize {
        self.g.neighbors(v).iter().filter(|&&w| mark[w]).count()
    }

    /// Independent vertices with no neighbour in `subset`.
    fn uncovered(&self, subset: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.g.n()];
        subset.iter().for_each(|&v| mark[v] = true);
        self.part
            .independent
            .iter()
            .copied()
            .filter(|&u| self.marked_neighbors(u, &mark) == 0)
            .collect()
    }

    /// `D = S`, valid iff every clique vertex has between 1 and j neighbours in S.
    fn case_zero(&self) -> Option<Vec<usize>> {
        let n1 = self.n1;
        let ok = self
            .part
            .clique
            .iter()
            .all(|&v| (n1..n1 + self.j).contains(&self.g.degree(v)));
        ok.then(|| self.part.independent.clone())
    }

    /// `D = K_i ∪ (S \ N(K_i))` for `1 <= i < j`.
    fn case_partial(&self, i: usize) -> Option<Vec<usize>> {
        let mut best: Option<Vec<usize>> = None;
        for_each_subset(&self.part.clique, i, |ki| {
            let si = self.uncovered(ki);
            let mut mark = vec![false; self.g.n()];
            si.iter().for_each(|&u| mark[u] = true);
            let limit = self.j - i;
            let ok = self
                .part
                .clique
                .iter()
                .filter(|v| !ki.contains(v))
                .all(|&v| self.marked_neighbors(v, &mark) <= limit);
            if ok && best.as_ref().is_none_or(|b| ki.len() + si.len() < b.len()) {
                best = Some(ki.iter().copied().chain(si).collect());
            }
        });
        best
    }

    /// `D = K_j`, valid iff `K_j` dominates all of S.
    fn case_full(&self) -> Option<Vec<usize>> {
        let mut best = None;
        for_each_subset(&self.part.clique, self.j, |kj| {
            if best.is_none() && self.uncovered(kj).is_empty() {
                best = Some(kj.to_vec());
            }
        });
        best
    }

    /// `D = K ∪ {u ∈ S : d(u) > j}`.
    fn case_all(&self) -> Vec<usize> {
        let s2 = self.part.independent.iter().copied().filter(|&u| self.g.degree(u) > self.j);
        self.part.clique.iter().copied().chain(s2).collect()
    }

    /// `D_K` plus the independent vertices whose count would leave `[1, j]`.
    fn forced(&self, dk: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.g.n()];
        dk.iter().for_each(|&v| mark[v] = true);
        let forced = self.part.independent.iter().copied().filter(|&u| {
            let c = self.marked_neighbors(u, &mark);
            c == 0 || c > self.j
        });
        dk.iter().copied().chain(forced).collect()
    }
}

type RawCase = (usize, Option<Vec<usize>>);

/// Minimum (1,j)-set of a connected split graph with partition `part`.
pub fn gamma_1j_split(g: &Graph, part: &SplitPartition, j: usize) -> Result<SplitSolution, SplitError> {
    if j == 0 {
        return Err(SplitError::InvalidJ);
    }
    part.validate(g)?;
    if !g.is_connected() {
        return Err(SplitError::Disconnected);
    }
    let ctx = Ctx { g, part, j, n1: part.clique.len() };

    let (mode, raw): (SplitMode, Vec<RawCase>) = if ctx.n1 <= j {
        let mut by_size = Vec::new();
        for size in 0..=ctx.n1 {
            let mut best: Option<Vec<usize>> = None;
            for_each_subset(&part.clique, size, |dk| {
                let d = ctx.forced(dk);
                let valid = verify_1j_set(g, &d, j).is_ok_and(|r| r.valid);
                if valid && best.as_ref().is_none_or(|b| d.len() < b.len()) {
                    best = Some(d);
                }
            });
            by_size.push((size, best));
        }
        (SplitMode::SmallClique, by_size)
    } else {
        let mut cases = vec![(0, ctx.case_zero())];
        cases.extend((1..j).map(|i| (i, ctx.case_partial(i))));
        cases.push((j, ctx.case_full()));
        cases.push((j + 1, Some(ctx.case_all())));
        (SplitMode::CaseAnalysis, cases)
    };

    let mut cases = Vec::with_capacity(raw.len());
    let mut best: Option<Witness> = None;
    for (case_index, candidate) in raw {
        let candidate = candidate.map(Witness::new);
        if let Some(w) = &candidate {
            let report = verify_1j_set(g, w.vertices(), j).expect("candidate vertices are in range");
            if !report.valid {
                return Err(SplitError::InternalContradiction { case_index, witness: w.vertices().to_vec() });
            }
            if best.as_ref().is_none_or(|b| w.cardinality() < b.cardinality()) {
                best = Some(w.clone());
            }
        }
        cases.push(SplitCaseResult { case_index, candidate });
    }
    let witness = best.expect("K together with its forced independent vertices is always a (1,j)-set");
    Ok(SplitSolution { value: witness.cardinality(), witness, cases, mode })
}

/// The four conditions under which a split graph needs every vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaNCondition {
    /// Some clique vertex has a number of independent neighbours outside
    /// `[1, j]`, so `D = S` fails.
    CliqueDegree,
    /// No `K_i ∪ (S \ N(K_i))` with `1 <= i < j` is a (1,j)-set.
    PartialSubsets,
    /// No `j` clique vertices dominate S.
    CoveringSubsets,
    /// Every independent vertex has degree above `j`.
    IndependentDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaNReport {
    pub holds: bool,
    pub failed: Vec<GammaNCondition>,
    /// Whether some clique vertex has more than `j` independent neighbours.
    /// This alone is sufficient for the first condition but not necessary.
    pub clique_vertex_over_j: bool,
}

/// Decides `γ_(1,j)(G) = n` for a connected split graph from its degrees.
pub fn is_gamma_n_split(g: &Graph, part: &SplitPartition, j: usize) -> Result<GammaNReport, SplitError> {
    if j == 0 {
        return Err(SplitError::InvalidJ);
    }
    part.validate(g)?;
    if !g.is_connected() {
        return Err(SplitError::Disconnected);
    }
    let ctx = Ctx { g, part, j, n1: part.clique.len() };
    let n1 = ctx.n1;
    let s_count = |v: usize| g.degree(v) + 1 - n1;
    let clique_vertex_over_j = part.clique.iter().any(|&v| s_count(v) > j);
    if g.n() == 1 {
        return Ok(GammaNReport { holds: true, failed: Vec::new(), clique_vertex_over_j });
    }

    let mut failed = Vec::new();
    if !part.clique.iter().any(|&v| !(1..=j).contains(&s_count(v))) {
        failed.push(GammaNCondition::CliqueDegree);
    }
    let partial_ok = (1..j).all(|i| {
        let mut all = true;
        for_each_subset(&part.clique, i, |ki| {
            if !all {
                return;
            }
            let mut mark = vec![false; g.n()];
            ctx.uncovered(ki).into_iter().for_each(|u| mark[u] = true);
            all = part
                .clique
                .iter()
                .filter(|v| !ki.contains(v))
                .any(|&v| ctx.marked_neighbors(v, &mark) > j - i);
        });
        all
    });
    if !partial_ok {
        failed.push(GammaNCondition::PartialSubsets);
    }
    let mut covering = false;
    for_each_subset(&part.clique, j, |kj| covering |= ctx.uncovered(kj).is_empty());
    if covering {
        failed.push(GammaNCondition::CoveringSubsets);
    }
    if part.independent.iter().any(|&u| g.degree(u) <= j) {
        failed.push(GammaNCondition::IndependentDegree);
    }
    Ok(GammaNReport { holds: failed.is_empty(), failed, clique_vertex_over_j })
}

/// Smallest split graph with at least two vertices satisfying all four
/// conditions, searching orders `2..=max_n`.
///
/// Graphs are enumerated up to relabelling of S: for each clique size, the
/// independent side is a multiset of clique neighbourhoods of size above
/// `j`. Returns the first hit by order, then clique size.
pub fn smallest_gamma_n_split(j: usize, max_n: usize) -> Option<(Graph, SplitPartition)> {
    for n in 2..=max_n {
        for n1 in j + 1..n {
            if let Some(masks) = search_clique_size(j, n1, n - n1) {
                return Some(build_split(n1, &masks));
            }
        }
    }
    None
}

fn build_split(n1: usize, masks: &[u32]) -> (Graph, SplitPartition) {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for a in 0..n1 {
        for b in a + 1..n1 {
            edges.push((a, b));
        }
    }
    for (s, &m) in masks.iter().enumerate() {
        edges.extend((0..n1).filter(|&k| m >> k & 1 == 1).map(|k| (k, n1 + s)));
    }
    let n = n1 + masks.len();
    let g = Graph::from_edges(n, edges).expect("constructed split graph is simple");
    (g, SplitPartition::new((0..n1).collect(), (n1..n).collect()))
}

fn search_clique_size(j: usize, n1: usize, n2: usize) -> Option<Vec<u32>> {
    assert!(n1 < 32, "clique size limited to 31 in the search");
    let full = (1u32 << n1) - 1;
    let options: Vec<u32> = (0..=full).filter(|m| m.count_ones() as usize > j).collect();
    let mut jsets = Vec::new();
    let clique: Vec<usize> = (0..n1).collect();
    for_each_subset(&clique, j, |s| jsets.push(s.iter().fold(0u32, |m, &v| m | 1 << v)));
    let words = jsets.len().div_ceil(64);
    // For each option, the j-subsets of K it has no neighbour in.
    let misses: Vec<Vec<u64>> = options
        .iter()
        .map(|&m| {
            let mut bits = vec![0u64; words];
            for (t, &js) in jsets.iter().enumerate() {
                if js & m == 0 {
                    bits[t / 64] |= 1 << (t % 64);
                }
            }
            bits
        })
        .collect();
    let max_miss = misses.iter().map(|b| b.iter().map(|w| w.count_ones() as usize).sum::<usize>()).max()?;

    struct Dfs<'a> {
        j: usize,
        n1: usize,
        n2: usize,
        options: &'a [u32],
        misses: &'a [Vec<u64>],
        total: usize,
        max_miss: usize,
        chosen: Vec<u32>,
    }
    impl Dfs<'_> {
        fn run(&mut self, start: usize, covered: &[u64]) -> bool {
            let have: usize = covered.iter().map(|w| w.count_ones() as usize).sum();
            let left = self.n2 - self.chosen.len();
            if have + left * self.max_miss < self.total {
                return false;
            }
            if left == 0 {
                return masks_satisfy(self.j, self.n1, &self.chosen);
            }
            for o in start..self.options.len() {
                let next: Vec<u64> = covered.iter().zip(&self.misses[o]).map(|(a, b)| a | b).collect();
                self.chosen.push(self.options[o]);
                if self.run(o, &next) {
                    return true;
                }
                self.chosen.pop();
            }
            false
        }
    }
    let mut dfs = Dfs {
        j,
        n1,
        n2,
        options: &options,
        misses: &misses,
        total: jsets.len(),
        max_miss,
        chosen: Vec::new(),
    };
    dfs.run(0, &vec![0; words]).then_some(dfs.chosen)
}

/// Clique-degree and partial-subset conditions on neighbourhood masks; the
/// other two hold by construction of the search.
fn masks_satisfy(j: usize, n1: usize, masks: &[u32]) -> bool {
    let s_count = |v: usize| masks.iter().filter(|&&m| m >> v & 1 == 1).count();
    if !(0..n1).any(|v| !(1..=j).contains(&s_count(v))) {
        return false;
    }
    let clique: Vec<usize> = (0..n1).collect();
    (1..j).all(|i| {
        let mut all = true;
        for_each_subset(&clique, i, |ki| {
            let km = ki.iter().fold(0u32, |m, &v| m | 1 << v);
            let si: Vec<u32> = masks.iter().copied().filter(|&m| m & km == 0).collect();
            all &= (0..n1)
                .filter(|&v| km >> v & 1 == 0)
                .any(|v| si.iter().filter(|&&m| m >> v & 1 == 1).count() > j - i);
        });
        all
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{random_split, split_recognition};
    use crate::oracle::{all_minimum_sets, exact_gamma_1j, uniform_bands, ExactOptions};

    fn solve(g: &Graph, j: usize) -> SplitSolution {
        let part = split_recognition(g).expect("split graph");
        gamma_1j_split(g, &part, j).unwrap()
    }

    fn oracle(g: &Graph, j: usize) -> usize {
        exact_gamma_1j(g, j, &ExactOptions::default()).unwrap().solved().unwrap().0
    }

    #[test]
    fn small_examples() {
        let g = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let part = SplitPartition::new(vec![0, 1], vec![2]);
        let sol = gamma_1j_split(&g, &part, 1).unwrap();
        assert_eq!((sol.value, sol.witness.vertices()), (1, &[0][..]));

        for n in 1..7 {
            assert_eq!(solve(&Graph::complete(n), 2).value, 1);
        }
    }

    #[test]
    fn case_zero_candidate() {
        // Every clique vertex has one or two independent neighbours.
        let g = Graph::from_edges(
            6,
            [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (1, 4), (2, 5), (1, 5)],
        )
        .unwrap();
        let part = SplitPartition::new(vec![0, 1, 2], vec![3, 4, 5]);
        let sol = gamma_1j_split(&g, &part, 2).unwrap();
        assert_eq!(sol.cases[0].candidate, Some(Witness::new(vec![3, 4, 5])));
        assert_eq!(sol.value, oracle(&g, 2));
    }

    #[test]
    fn errors() {
        let g = Graph::empty(2);
        let part = SplitPartition::new(vec![0], vec![1]);
        assert_eq!(gamma_1j_split(&g, &part, 1), Err(SplitError::Disconnected));
        let p3 = Graph::path(3);
        let bad = SplitPartition::new(vec![0, 2], vec![1]);
        assert!(matches!(gamma_1j_split(&p3, &bad, 1), Err(SplitError::InvalidPartition(_))));
        let good = split_recognition(&p3).unwrap();
        assert_eq!(gamma_1j_split(&p3, &good, 0), Err(SplitError::InvalidJ));
    }

    #[test]
    fn random_split_graphs_match_oracle() {
        let mut checked = 0;
        for seed in 0..400u64 {
            let n1 = 1 + (seed % 7) as usize;
            let n2 = (seed / 7 % 9) as usize;
            let Ok((g, part)) = random_split(n1, n2, 0.45, seed) else { continue };
            for j in 1..=3 {
                let sol = gamma_1j_split(&g, &part, j).unwrap();
                assert_eq!(sol.value, oracle(&g, j), "seed {seed} j {j}");
                assert!(verify_1j_set(&g, sol.witness.vertices(), j).unwrap().valid);
                let report = is_gamma_n_split(&g, &part, j).unwrap();
                assert_eq!(report.holds, sol.value == g.n(), "seed {seed} j {j}: {report:?}");
            }
            checked += 1;
        }
        assert!(checked > 300);
    }

    #[test]
    fn characterization_on_star() {
        let star = Graph::star(3);
        let part = split_recognition(&star).unwrap();
        let r = is_gamma_n_split(&star, &part, 2).unwrap();
        assert!(!r.holds);
        assert!(r.failed.contains(&GammaNCondition::IndependentDegree));
    }

    #[test]
    fn clique_degree_condition_needs_both_sides() {
        // K5 plus two independent vertices seeing disjoint clique pairs: no
        // clique vertex has more than one independent neighbour, yet gamma = n.
        let mut edges = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push((a, b));
            }
        }
        edges.extend([(0, 5), (1, 5), (2, 6), (3, 6)]);
        let g = Graph::from_edges(7, edges).unwrap();
        let part = SplitPartition::new((0..5).collect(), vec![5, 6]);
        let r = is_gamma_n_split(&g, &part, 1).unwrap();
        assert!(r.holds);
        assert!(!r.clique_vertex_over_j);
        assert_eq!(oracle(&g, 1), 7);
    }

    #[test]
    fn no_small_gamma_n_split_for_j2() {
        assert_eq!(smallest_gamma_n_split(2, 10), None);
    }

    #[test]
    fn smallest_gamma_n_split_is_confirmed() {
        let (g, part) = smallest_gamma_n_split(2, 12).expect("a witness of order 12 exists");
        assert!(g.n() > 10);
        assert!(is_gamma_n_split(&g, &part, 2).unwrap().holds);
        assert_eq!(oracle(&g, 2), g.n());
        assert_eq!(gamma_1j_split(&g, &part, 2).unwrap().value, g.n());
    }

    #[test]
    fn smallest_for_j1_is_tiny() {
        let (g, part) = smallest_gamma_n_split(1, 8).unwrap();
        assert!(is_gamma_n_split(&g, &part, 1).unwrap().holds);
        assert_eq!(oracle(&g, 1), g.n());
    }

    #[test]
    fn unique_minimum_meets_case_sizes() {
        let mut seen = 0;
        for seed in 0..300u64 {
            let Ok((g, part)) = random_split(2 + (seed % 5) as usize, 1 + (seed % 6) as usize, 0.5, seed) else {
                continue;
            };
            for j in 1..=3 {
                let (_, sets) = all_minimum_sets(&g, &uniform_bands(&g, 1, j)).unwrap();
                if let [only] = &sets[..] {
                    let k = only.vertices().iter().filter(|&&v| part.is_clique(v)).count();
                    assert!(k <= j || k == part.clique.len(), "seed {seed}");
                    seen += 1;
                }
            }
        }
        assert!(seen > 50);
    }
}
