use super::{Band, Engine, OracleError};
use crate::graph::Graph;

/// Soft vertex limit for subset enumeration.
pub const ENUMERATION_LIMIT: usize = 20;
const HARD_LIMIT: usize = 63;

pub(super) fn guard(n: usize, allow_large: bool) -> Result<(), OracleError> {
    let engine = Engine::Enumeration;
    if n > HARD_LIMIT {
        return Err(OracleError::TooLarge { engine, n, limit: HARD_LIMIT });
    }
    if n > ENUMERATION_LIMIT && !allow_large {
        return Err(OracleError::GuardExceeded { engine, n, limit: ENUMERATION_LIMIT });
    }
    Ok(())
}

struct Checker<'a> {
    nbr: Vec<u64>,
    bands: &'a [Band],
}

impl<'a> Checker<'a> {
    fn new(g: &Graph, bands: &'a [Band]) -> Self {
        let nbr = (0..g.n())
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        Self { nbr, bands }
    }

    fn feasible(&self, set: u64) -> bool {
        self.nbr.iter().enumerate().all(|(v, &nb)| {
            set >> v & 1 == 1 || self.bands[v].contains((nb & set).count_ones() as usize)
        })
    }
}

/// Visits the `k`-subsets of `0..n` in lexicographic order until `visit`
/// returns false.
fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(u64, &[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &v| m | 1 << v);
        if !visit(mask, &idx) {
            return;
        }
        // Advance the rightmost index that still has room.
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// Lexicographically first set of minimum size, searching sizes
/// `0..=max_size`.
pub(super) fn first_minimum(g: &Graph, bands: &[Band], max_size: usize) -> Option<Vec<usize>> {
    let checker = Checker::new(g, bands);
    for k in 0..=max_size.min(g.n()) {
        let mut found = None;
        for_each_combination(g.n(), k, |mask, idx| {
            if checker.feasible(mask) {
                found = Some(idx.to_vec());
                false
            } else {
                true
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

pub(super) fn all_minimum(g: &Graph, bands: &[Band]) -> (usize, Vec<Vec<usize>>) {
    let checker = Checker::new(g, bands);
    for k in 0..=g.n() {
        let mut sets = Vec::new();
        for_each_combination(g.n(), k, |mask, idx| {
            if checker.feasible(mask) {
                sets.push(idx.to_vec());
            }
            true
        });
        if !sets.is_empty() {
            return (k, sets);
        }
    }
    unreachable!("the full vertex set is always feasible")
}
