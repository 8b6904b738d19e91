use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::Graph;

/// A clique / independent-set split `(K, S)` of a split graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPartition {
    /// Sorted clique vertices.
    pub clique: Vec<usize>,
    /// Sorted independent-set vertices.
    pub independent: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("vertex {0} is out of range or listed more than once")]
    BadVertex(usize),
    #[error("vertex {0} is missing from both sides")]
    Missing(usize),
    #[error("clique vertices {0} and {1} are not adjacent")]
    NotClique(usize, usize),
    #[error("independent vertices {0} and {1} are adjacent")]
    NotIndependent(usize, usize),
    #[error("malformed partition file: {0}")]
    Malformed(String),
}

impl SplitPartition {
    pub fn new(mut clique: Vec<usize>, mut independent: Vec<usize>) -> Self {
        clique.sort_unstable();
        independent.sort_unstable();
        Self {
            clique,
            independent,
        }
    }

    /// Checks both partition invariants against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), PartitionError> {
        let mut seen = vec![false; g.n()];
        for &v in self.clique.iter().chain(&self.independent) {
            if v >= g.n() || seen[v] {
                return Err(PartitionError::BadVertex(v));
            }
            seen[v] = true;
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(PartitionError::Missing(v));
        }
        for (i, &a) in self.clique.iter().enumerate() {
            if let Some(&b) = self.clique[i + 1..].iter().find(|&&b| !g.has_edge(a, b)) {
                return Err(PartitionError::NotClique(a, b));
            }
        }
        for &a in &self.independent {
            if let Some(&b) = g.neighbors(a).iter().find(|&&b| self.is_independent(b)) {
                return Err(PartitionError::NotIndependent(a.min(b), a.max(b)));
            }
        }
        Ok(())
    }

    pub fn is_clique(&self, v: usize) -> bool {
        self.clique.binary_search(&v).is_ok()
    }

    pub fn is_independent(&self, v: usize) -> bool {
        self.independent.binary_search(&v).is_ok()
    }

    /// Parses the two-line format `K: ids` / `S: ids`.
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        let mut clique = None;
        let mut independent = None;
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (tag, rest) = line
                .split_once(':')
                .ok_or_else(|| PartitionError::Malformed(line.to_string()))?;
            let ids = rest
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| PartitionError::Malformed(line.to_string()))?;
            let slot = match tag.trim() {
                "K" => &mut clique,
                "S" => &mut independent,
                _ => return Err(PartitionError::Malformed(line.to_string())),
            };
            if slot.replace(ids).is_some() {
                return Err(PartitionError::Malformed(format!("repeated `{}` line", tag.trim())));
            }
        }
        Ok(Self::new(clique.unwrap_or_default(), independent.unwrap_or_default()))
    }

    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        format!("K: {}\nS: {}\n", join(&self.clique), join(&self.independent))
    }
}

/// Degree-sequence split recognition (Hammer and Simeone).
///
/// With degrees sorted non-increasingly (ties by id), let `k` be the largest
/// index with `d_k >= k - 1`. The graph is split iff
/// `sum_{i<=k} d_i = k(k-1) + sum_{i>k} d_i`, and then the first `k` vertices
/// form a maximum clique. Maximality means no independent vertex could move to
/// the clique side.
pub fn split_recognition(g: &Graph) -> Option<SplitPartition> {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let k = order
        .iter()
        .enumerate()
        .take_while(|&(i, &v)| g.degree(v) >= i)
        .count();
    let head: usize = order[..k].iter().map(|&v| g.degree(v)).sum();
    let tail: usize = order[k..].iter().map(|&v| g.degree(v)).sum();
    if head != k * k.saturating_sub(1) + tail {
        return None;
    }
    let part = SplitPartition::new(order[..k].to_vec(), order[k..].to_vec());
    debug_assert_eq!(part.validate(g), Ok(()));
    Some(part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gnp, random_split};

    fn brute_is_split(g: &Graph) -> bool {
        let n = g.n();
        (0u32..1 << n).any(|mask| {
            let clique: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let rest: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 0).collect();
            SplitPartition::new(clique, rest).validate(g).is_ok()
        })
    }

    #[test]
    fn complete_graph() {
        let p = split_recognition(&Graph::complete(4)).unwrap();
        assert_eq!(p.clique, vec![0, 1, 2, 3]);
        assert!(p.independent.is_empty());
    }

    #[test]
    fn four_cycle_is_not_split() {
        assert_eq!(split_recognition(&Graph::cycle(4)), None);
    }

    #[test]
    fn star_puts_center_and_one_leaf_in_clique() {
        let g = Graph::star(3);
        let p = split_recognition(&g).unwrap();
        p.validate(&g).unwrap();
        assert_eq!(p.clique, vec![0, 1]);
        assert_eq!(p.independent, vec![2, 3]);
    }

    #[test]
    fn matches_brute_force() {
        for seed in 0..400 {
            let g = gnp(7, 0.5, seed);
            let got = split_recognition(&g);
            assert_eq!(got.is_some(), brute_is_split(&g), "seed {seed}");
            if let Some(p) = got {
                p.validate(&g).unwrap();
                // No independent vertex is adjacent to the whole clique.
                for &s in &p.independent {
                    assert!(p.clique.iter().any(|&k| !g.has_edge(s, k)));
                }
            }
        }
    }

    #[test]
    fn generated_split_graphs_recognized() {
        for seed in 0..50 {
            let (g, part) = random_split(5, 6, 0.3, seed).unwrap();
            part.validate(&g).unwrap();
            split_recognition(&g).unwrap().validate(&g).unwrap();
        }
    }

    #[test]
    fn partition_text_round_trip() {
        let p = SplitPartition::new(vec![2, 0], vec![1, 3]);
        assert_eq!(SplitPartition::parse(&p.to_text()).unwrap(), p);
        assert!(SplitPartition::parse("K: 0 x\n").is_err());
        assert!(SplitPartition::parse("Q: 0\n").is_err());
    }
}
