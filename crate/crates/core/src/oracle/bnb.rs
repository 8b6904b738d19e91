//! Depth-first branch and bound over include/exclude decisions.
//!
//! Each vertex is undecided, in, or out. After unit propagation the search
//! branches on the lowest-id undecided vertex that can still help the
//! lowest-id under-dominated vertex; once everything is dominated it branches
//! on vertices that risk over-domination. The lower bound is
//! `|D| + ceil(#needy / best cover)`, where a needy vertex is an unselected
//! vertex below its band and the best cover is the largest number of needy
//! vertices in one undecided closed neighbourhood (never more than Δ + 1).

use super::{Band, Engine, OracleError};
use crate::graph::Graph;

/// Soft vertex limit for branch and bound.
pub const BRANCH_AND_BOUND_LIMIT: usize = 36;
const HARD_LIMIT: usize = 128;

pub(super) fn guard(n: usize, allow_large: bool) -> Result<(), OracleError> {
    let engine = Engine::BranchAndBound;
    if n > HARD_LIMIT {
        return Err(OracleError::TooLarge { engine, n, limit: HARD_LIMIT });
    }
    if n > BRANCH_AND_BOUND_LIMIT && !allow_large {
        return Err(OracleError::GuardExceeded { engine, n, limit: BRANCH_AND_BOUND_LIMIT });
    }
    Ok(())
}

fn bit(v: usize) -> u128 {
    1u128 << v
}

fn lowest(mask: u128) -> usize {
    mask.trailing_zeros() as usize
}

fn ones(mask: u128) -> usize {
    mask.count_ones() as usize
}

struct Search<'a> {
    n: usize,
    nbr: Vec<u128>,
    bands: &'a [Band],
    all: u128,
    best: Option<u128>,
    /// Only sets strictly smaller than this are still of interest.
    bound: usize,
}

impl Search<'_> {
    /// Unit propagation. Returns false on a dead state.
    fn propagate(&self, inn: &mut u128, out: &mut u128) -> bool {
        let mut und = self.all & !*inn & !*out;
        loop {
            let mut changed = false;
            for v in 0..self.n {
                if *inn & bit(v) != 0 {
                    continue;
                }
                let band = self.bands[v];
                let c = ones(self.nbr[v] & *inn);
                let free = self.nbr[v] & und;
                let u = ones(free);
                let stuck = c > band.upper || c + u < band.lower;
                if *out & bit(v) != 0 {
                    if stuck {
                        return false;
                    }
                    if u > 0 && c == band.upper {
                        *out |= free;
                    } else if u > 0 && c + u == band.lower {
                        *inn |= free;
                    } else {
                        continue;
                    }
                } else if stuck {
                    // Excluding v can never satisfy its band.
                    *inn |= bit(v);
                } else {
                    continue;
                }
                und = self.all & !*inn & !*out;
                changed = true;
            }
            if !changed {
                return true;
            }
        }
    }

    fn dfs(&mut self, mut inn: u128, mut out: u128) {
        if !self.propagate(&mut inn, &mut out) {
            return;
        }
        let size = ones(inn);
        if size >= self.bound {
            return;
        }
        let und = self.all & !inn & !out;

        let needy = (0..self.n)
            .filter(|&v| inn & bit(v) == 0 && ones(self.nbr[v] & inn) < self.bands[v].lower)
            .fold(0u128, |m, v| m | bit(v));
        if needy != 0 {
            let cover = (0..self.n)
                .filter(|&x| und & bit(x) != 0)
                .map(|x| ones((self.nbr[x] | bit(x)) & needy))
                .max()
                .unwrap_or(0);
            if cover == 0 || size + ones(needy).div_ceil(cover) >= self.bound {
                return;
            }
            let u = lowest(needy);
            let candidates = (self.nbr[u] | bit(u)) & und;
            if candidates == 0 {
                return;
            }
            let x = bit(lowest(candidates));
            self.dfs(inn | x, out);
            self.dfs(inn, out | x);
            return;
        }

        let at_risk = (0..self.n).find(|&v| {
            inn & bit(v) == 0 && ones(self.nbr[v] & (inn | und)) > self.bands[v].upper
        });
        if let Some(v) = at_risk {
            let x = if und & bit(v) != 0 { bit(v) } else { bit(lowest(self.nbr[v] & und)) };
            self.dfs(inn, out | x);
            self.dfs(inn | x, out);
            return;
        }

        // Everything is dominated and nothing can overflow: leave the rest out.
        self.best = Some(inn);
        self.bound = size;
    }
}

pub(super) fn minimum(g: &Graph, bands: &[Band], max_size: usize) -> Option<Vec<usize>> {
    let n = g.n();
    let nbr = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u128, |m, &w| m | bit(w)))
        .collect();
    let all = if n == 128 { u128::MAX } else { bit(n) - 1 };
    let mut search = Search {
        n,
        nbr,
        bands,
        all,
        best: None,
        bound: max_size + 1,
    };
    search.dfs(0, 0);
    search
        .best
        .map(|mask| (0..n).filter(|&v| mask & bit(v) != 0).collect())
}
