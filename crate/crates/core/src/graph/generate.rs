//! Seeded instance generators. Each is a pure function of its parameters and
//! seed.

use std::collections::{BTreeMap, BinaryHeap, HashSet};
use std::cmp::Reverse;

use thiserror::Error;

use super::{Graph, SplitPartition};
use crate::rng::{below, coin, rng_for, shuffle};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("pairing model gave up after {0} restarts")]
    RetryLimit(usize),
}

const REGULAR_RESTARTS: usize = 100;

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into its tree.
pub fn prufer_decode(seq: &[usize], n: usize) -> Graph {
    assert!(n >= 2 && seq.len() == n - 2, "Prüfer sequence must have length n - 2");
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    Graph::from_edges(n, edges).expect("Prüfer decoding yields a simple tree")
}

/// Every labelled tree on `n >= 1` vertices, one per Prüfer sequence
/// (`n^(n-2)` trees), in lexicographic sequence order.
pub fn all_labeled_trees(n: usize) -> impl Iterator<Item = Graph> {
    assert!(n >= 1);
    let len = n.saturating_sub(2);
    let mut seq = vec![0usize; len];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let tree = if n < 2 { Graph::empty(n) } else { prufer_decode(&seq, n) };
        // Odometer increment; finishing when it wraps around.
        done = true;
        for slot in seq.iter_mut().rev() {
            *slot += 1;
            if *slot < n {
                done = false;
                break;
            }
            *slot = 0;
        }
        Some(tree)
    })
}

/// Uniform random labelled tree via a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    assert!(n >= 1, "a tree needs at least one vertex");
    if n < 2 {
        return Graph::empty(n);
    }
    let mut rng = rng_for(seed, 0);
    let seq: Vec<usize> = (0..n - 2).map(|_| below(&mut rng, n)).collect();
    prufer_decode(&seq, n)
}

/// Erdős–Rényi G(n, p).
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng_for(seed, 0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if coin(&mut rng, p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("G(n,p) edges are simple")
}

/// Connected split graph with clique `0..n1` and independent set
/// `n1..n1+n2`. Each clique/independent pair is joined with probability
/// `edge_prob`; an independent vertex left isolated gets one uniformly chosen
/// clique neighbour.
pub fn random_split(
    n1: usize,
    n2: usize,
    edge_prob: f64,
    seed: u64,
) -> Result<(Graph, SplitPartition), GenError> {
    if n1 == 0 && n2 > 1 {
        return Err(GenError::Infeasible(
            "an empty clique cannot connect two or more independent vertices".into(),
        ));
    }
    if n1 + n2 == 0 {
        return Err(GenError::Infeasible("graph must have a vertex".into()));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(GenError::Infeasible(format!("edge probability {edge_prob}")));
    }
    let mut rng = rng_for(seed, 0);
    let mut edges = Vec::new();
    for u in 0..n1 {
        for v in u + 1..n1 {
            edges.push((u, v));
        }
    }
    for s in n1..n1 + n2 {
        let before = edges.len();
        for k in 0..n1 {
            if coin(&mut rng, edge_prob) {
                edges.push((k, s));
            }
        }
        if edges.len() == before && n1 > 0 {
            edges.push((below(&mut rng, n1), s));
        }
    }
    let g = Graph::from_edges(n1 + n2, edges).expect("split edges are simple");
    let part = SplitPartition::new((0..n1).collect(), (n1..n1 + n2).collect());
    Ok((g, part))
}

/// Random `d`-regular graph from the pairing (configuration) model.
///
/// Stubs are shuffled and paired; pairs that would create a loop or a
/// repeated edge go back into the pool and are re-paired. When no legal pair
/// remains in the pool the whole attempt restarts.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GenError> {
    if (n * d) % 2 == 1 {
        return Err(GenError::Infeasible(format!("n * d = {} is odd", n * d)));
    }
    if d >= n && !(n == 0 && d == 0) {
        return Err(GenError::Infeasible(format!("degree {d} >= vertex count {n}")));
    }
    let mut rng = rng_for(seed, 0);
    for _ in 0..REGULAR_RESTARTS {
        let mut edges: HashSet<(usize, usize)> = HashSet::new();
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        let mut ok = true;
        while !stubs.is_empty() {
            shuffle(&mut rng, &mut stubs);
            let mut leftover: BTreeMap<usize, usize> = BTreeMap::new();
            for pair in stubs.chunks(2) {
                let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                if a != b && edges.insert((a, b)) {
                    continue;
                }
                *leftover.entry(pair[0]).or_default() += 1;
                *leftover.entry(pair[1]).or_default() += 1;
            }
            if !pairable(&edges, &leftover) {
                ok = false;
                break;
            }
            stubs = leftover
                .iter()
                .flat_map(|(&v, &c)| std::iter::repeat_n(v, c))
                .collect();
        }
        if ok {
            let mut list: Vec<_> = edges.into_iter().collect();
            list.sort_unstable();
            return Ok(Graph::from_edges(n, list).expect("pairing keeps the graph simple"));
        }
    }
    Err(GenError::RetryLimit(REGULAR_RESTARTS))
}

fn pairable(edges: &HashSet<(usize, usize)>, pool: &BTreeMap<usize, usize>) -> bool {
    if pool.is_empty() {
        return true;
    }
    let vs: Vec<usize> = pool.keys().copied().collect();
    vs.iter()
        .enumerate()
        .any(|(i, &a)| vs[i + 1..].iter().any(|&b| !edges.contains(&(a, b))))
}
