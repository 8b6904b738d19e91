//! Minimum M-sets of M-labelled trees, and through uniform labels `[1, j]`
//! the (1,j)-domination number of a tree, in O(n · max band) time.
//!
//! The tree is rooted and folded bottom-up. For every vertex `u` the fold
//! keeps two quantities over the subtree below `u`:
//!
//! * `selected[u]`: cheapest subtree solution with `u` in the set;
//! * `unselected[u][c]`: cheapest solution with `u` out of the set and
//!   exactly `c` of its children in it, for `c` up to `u`'s upper label.
//!
//! Whether the parent is selected is decided one level up: a selected parent
//! shifts the child's admissible child count from `[lo, hi]` to
//! `[max(lo - 1, 0), hi - 1]`. Children are merged one at a time by a
//! min-plus step over the count coordinate.

use thiserror::Error;

use crate::graph::Graph;
use crate::oracle::{Band, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("input graph is not a tree")]
    NotATree,
    #[error("label count {got} does not match vertex count {n}")]
    LabelCount { got: usize, n: usize },
    #[error("vertex {0}: lower label exceeds upper label")]
    InvertedBand(usize),
    #[error("root {0} out of range")]
    BadRoot(usize),
    #[error("j must be at least 1")]
    InvalidJ,
    #[error("label file line {line}: {msg}")]
    LabelFile { line: usize, msg: String },
}

/// A tree whose vertices carry bands `[M_a(v), M_b(v)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MLabeledTree {
    tree: Graph,
    bands: Vec<Band>,
}

impl MLabeledTree {
    pub fn new(tree: Graph, bands: Vec<Band>) -> Result<Self, TreeError> {
        if !tree.is_tree() {
            return Err(TreeError::NotATree);
        }
        if bands.len() != tree.n() {
            return Err(TreeError::LabelCount { got: bands.len(), n: tree.n() });
        }
        if let Some(v) = bands.iter().position(|b| b.lower > b.upper) {
            return Err(TreeError::InvertedBand(v));
        }
        Ok(Self { tree, bands })
    }

    pub fn uniform(tree: Graph, lower: usize, upper: usize) -> Result<Self, TreeError> {
        let n = tree.n();
        Self::new(tree, vec![Band::new(lower, upper); n])
    }

    pub fn tree(&self) -> &Graph {
        &self.tree
    }

    pub fn bands(&self) -> &[Band] {
        &self.bands
    }

    /// Copy with one vertex's band replaced.
    pub fn with_band(&self, v: usize, band: Band) -> Result<Self, TreeError> {
        let mut bands = self.bands.clone();
        bands[v] = band;
        Self::new(self.tree.clone(), bands)
    }
}

/// Parses label lines `v Ma Mb`, one per vertex of an `n`-vertex tree.
pub fn parse_labels(text: &str, n: usize) -> Result<Vec<Band>, TreeError> {
    let mut bands = vec![None; n];
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let err = |msg: &str| TreeError::LabelFile { line: i + 1, msg: msg.to_string() };
        let nums = line
            .split_whitespace()
            .map(str::parse::<usize>)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| err("expected `v Ma Mb`"))?;
        let [v, lo, hi] = nums[..] else {
            return Err(err("expected `v Ma Mb`"));
        };
        if v >= n {
            return Err(err("vertex out of range"));
        }
        if lo > hi {
            return Err(err("Ma exceeds Mb"));
        }
        if bands[v].replace(Band::new(lo, hi)).is_some() {
            return Err(err("vertex labelled twice"));
        }
    }
    bands
        .into_iter()
        .enumerate()
        .map(|(v, b)| {
            b.ok_or(TreeError::LabelFile { line: 0, msg: format!("vertex {v} has no label") })
        })
        .collect()
}

const INF: usize = usize::MAX / 4;

fn add(a: usize, b: usize) -> usize {
    (a + b).min(INF)
}

/// Cheapest entry of `table` over `lo..=hi` (lowest index on ties).
fn best_in(table: &[usize], lo: usize, hi: Option<usize>) -> (usize, usize) {
    let Some(hi) = hi else { return (INF, 0) };
    (lo..=hi.min(table.len().saturating_sub(1)))
        .map(|c| (table[c], c))
        .min()
        .unwrap_or((INF, 0))
}

struct Fold {
    children: Vec<Vec<usize>>,
    selected: Vec<usize>,
    unselected: Vec<Vec<usize>>,
    /// `picks[u][i][c]`: child `i` of `u` is selected in the best state with
    /// count `c` after merging children `0..=i`.
    picks: Vec<Vec<Vec<bool>>>,
    /// Best cost and count for `u` unselected with its parent unselected.
    alone: Vec<(usize, usize)>,
    /// Same with its parent selected.
    backed: Vec<(usize, usize)>,
}

fn fold(t: &MLabeledTree, root: usize) -> Fold {
    let g = t.tree();
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    parent[root] = root;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let children: Vec<Vec<usize>> = (0..n)
        .map(|u| g.neighbors(u).iter().copied().filter(|&w| parent[w] == u && w != root).collect())
        .collect();

    let mut f = Fold {
        children,
        selected: vec![INF; n],
        unselected: vec![Vec::new(); n],
        picks: vec![Vec::new(); n],
        alone: vec![(INF, 0); n],
        backed: vec![(INF, 0); n],
    };
    for &u in order.iter().rev() {
        let band = t.bands()[u];
        let cap = band.upper.min(g.degree(u));

        let mut sel = 1;
        let mut table = vec![0usize];
        let mut picks = Vec::with_capacity(f.children[u].len());
        for &v in &f.children[u] {
            sel = add(sel, f.selected[v].min(f.backed[v].0));
            let len = (table.len() + 1).min(cap + 1);
            let mut next = vec![INF; len];
            let mut pick = vec![false; len];
            for (c, slot) in next.iter_mut().enumerate() {
                let skip = table.get(c).map_or(INF, |&x| add(x, f.alone[v].0));
                let take = if c >= 1 { add(table[c - 1], f.selected[v]) } else { INF };
                if take < skip {
                    *slot = take;
                    pick[c] = true;
                } else {
                    *slot = skip;
                }
            }
            table = next;
            picks.push(pick);
        }
        f.selected[u] = sel;
        f.alone[u] = best_in(&table, band.lower, Some(cap));
        f.backed[u] = best_in(&table, band.lower.saturating_sub(1), cap.checked_sub(1));
        f.unselected[u] = table;
        f.picks[u] = picks;
    }
    f
}

/// Minimum M-set, rooting the fold at `root`.
pub fn gamma_m_rooted(t: &MLabeledTree, root: usize) -> Result<(usize, Witness), TreeError> {
    if root >= t.tree().n() {
        return Err(TreeError::BadRoot(root));
    }
    let f = fold(t, root);

    enum State {
        In,
        Out(usize),
    }
    let mut chosen = Vec::new();
    let root_state = if f.alone[root].0 <= f.selected[root] {
        State::Out(f.alone[root].1)
    } else {
        State::In
    };
    let value = f.selected[root].min(f.alone[root].0);
    let mut stack = vec![(root, root_state)];
    while let Some((u, state)) = stack.pop() {
        match state {
            State::In => {
                chosen.push(u);
                for &v in &f.children[u] {
                    if f.backed[v].0 <= f.selected[v] {
                        stack.push((v, State::Out(f.backed[v].1)));
                    } else {
                        stack.push((v, State::In));
                    }
                }
            }
            State::Out(mut c) => {
                for (i, &v) in f.children[u].iter().enumerate().rev() {
                    if f.picks[u][i][c] {
                        c -= 1;
                        stack.push((v, State::In));
                    } else {
                        stack.push((v, State::Out(f.alone[v].1)));
                    }
                }
            }
        }
    }
    let witness = Witness::new(chosen);
    debug_assert_eq!(witness.cardinality(), value);
    Ok((value, witness))
}

/// Minimum M-set of `t` (rooted at vertex 0).
pub fn gamma_m(t: &MLabeledTree) -> (usize, Witness) {
    gamma_m_rooted(t, 0).expect("vertex 0 exists in every tree")
}

/// Minimum (1,j)-set of a tree.
pub fn gamma_1j_tree(g: &Graph, j: usize) -> Result<(usize, Witness), TreeError> {
    if j == 0 {
        return Err(TreeError::InvalidJ);
    }
    let t = MLabeledTree::uniform(g.clone(), 1, j)?;
    Ok(gamma_m(&t))
}
