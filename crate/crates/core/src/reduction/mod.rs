//! Exact cover by 3-sets reduces to (1,j)-sets of chordal graphs, `j >= 2`.
//!
//! Vertex layout, fixed so that ids are stable across runs:
//!
//! * triple `p` (0-based) owns a claw at `4p..4p+4`: center `u`, link `v`,
//!   leaves `y`, `z`; the link joins the element vertices of its triple;
//! * element `i` (1-based) is `x_i` at `4t + i - 1`; the `x` vertices form a
//!   clique;
//! * element `i` owns `q` trees; tree `(i, r)` (1-based) starts at
//!   `4t + 3q + ((i-1)q + r - 1)(1 + 3j)` with its root `w`, then `j`
//!   children, then `2j` grandchildren, two per child in child order. The
//!   root is adjacent to `x_i`.
//!
//! The target budget is `k = t + q + 3jq²`.

mod instance;

use serde::Serialize;
use thiserror::Error;

pub use instance::{Ex3cInstance, InstanceError};

use crate::graph::Graph;
use crate::oracle::{all_minimum_sets, verify_1j_set, Band, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("the reduction needs j >= 2, got {0}")]
    InvalidJ(usize),
    #[error("triples {0:?} do not form an exact cover")]
    NotExactCover(Vec<usize>),
    #[error("set is not a (1,j)-set of the reduction graph")]
    InvalidSet,
    #[error("set has {size} vertices, budget is {k}")]
    OverBudget { size: usize, k: usize },
    #[error("brute-force cover search limited to q <= 4 and t <= 20 (got q = {q}, t = {t})")]
    GuardExceeded { q: usize, t: usize },
}

/// What a vertex of the reduction graph stands for. Triples and tree
/// indices are 0-based, elements 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    ClawCenter { triple: usize },
    ClawLink { triple: usize },
    ClawLeafY { triple: usize },
    ClawLeafZ { triple: usize },
    Element { element: usize },
    TreeRoot { element: usize, tree: usize },
    Child { element: usize, tree: usize, child: usize },
    Grandchild { element: usize, tree: usize, child: usize, leaf: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionArtifact {
    pub instance: Ex3cInstance,
    pub j: usize,
    pub graph: Graph,
    pub k: usize,
    pub roles: Vec<Role>,
}

impl ReductionArtifact {
    pub fn link(&self, triple: usize) -> usize {
        4 * triple + 1
    }

    pub fn element(&self, i: usize) -> usize {
        4 * self.instance.t() + i - 1
    }

    /// Root id of tree `r` (0-based) of element `i`.
    pub fn tree_root(&self, i: usize, r: usize) -> usize {
        let q = self.instance.q();
        4 * self.instance.t() + 3 * q + ((i - 1) * q + r) * (1 + 3 * self.j)
    }
}

/// Expected vertex count `4t + 3q + 3q²(1 + 3j)`.
pub fn expected_order(q: usize, t: usize, j: usize) -> usize {
    4 * t + 3 * q + 3 * q * q * (1 + 3 * j)
}

/// Expected edge count: 3 per claw, 3 links per triple, the element clique,
/// and `1 + 3j` per tree (its root edge to `x_i` plus `3j` tree edges).
pub fn expected_size(q: usize, t: usize, j: usize) -> usize {
    let x = 3 * q;
    6 * t + x * (x - 1) / 2 + 3 * q * q * (1 + 3 * j)
}

pub fn budget(q: usize, t: usize, j: usize) -> usize {
    t + q + 3 * j * q * q
}

pub fn build_reduction(inst: &Ex3cInstance, j: usize) -> Result<ReductionArtifact, ReductionError> {
    if j < 2 {
        return Err(ReductionError::InvalidJ(j));
    }
    let (q, t) = (inst.q(), inst.t());
    let n = expected_order(q, t, j);
    let mut roles = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(expected_size(q, t, j));
    let x = |i: usize| 4 * t + i - 1;

    for (p, triple) in inst.triples().iter().enumerate() {
        let base = 4 * p;
        roles.extend([
            Role::ClawCenter { triple: p },
            Role::ClawLink { triple: p },
            Role::ClawLeafY { triple: p },
            Role::ClawLeafZ { triple: p },
        ]);
        edges.extend([(base, base + 1), (base, base + 2), (base, base + 3)]);
        edges.extend(triple.iter().map(|&i| (base + 1, x(i))));
    }
    for i in 1..=3 * q {
        roles.push(Role::Element { element: i });
        edges.extend((i + 1..=3 * q).map(|k| (x(i), x(k))));
    }
    for i in 1..=3 * q {
        for tree in 0..q {
            let w = roles.len();
            roles.push(Role::TreeRoot { element: i, tree });
            edges.push((x(i), w));
            for child in 0..j {
                roles.push(Role::Child { element: i, tree, child });
                edges.push((w, w + 1 + child));
            }
            for child in 0..j {
                for leaf in 0..2 {
                    let id = roles.len();
                    roles.push(Role::Grandchild { element: i, tree, child, leaf });
                    edges.push((w + 1 + child, id));
                }
            }
        }
    }
    debug_assert_eq!(roles.len(), n);
    let graph = Graph::from_edges(n, edges).expect("reduction edges are simple");
    Ok(ReductionArtifact {
        instance: inst.clone(),
        j,
        graph,
        k: budget(q, t, j),
        roles,
    })
}

/// The size-`k` set built from an exact cover (triple indices, 0-based):
/// every claw center, the links of the cover, and every tree child.
pub fn forward_witness(art: &ReductionArtifact, cover: &[usize]) -> Result<Witness, ReductionError> {
    if !art.instance.is_exact_cover(cover) {
        return Err(ReductionError::NotExactCover(cover.to_vec()));
    }
    let set = art
        .roles
        .iter()
        .enumerate()
        .filter(|(_, role)| match role {
            Role::ClawCenter { .. } | Role::Child { .. } => true,
            Role::ClawLink { triple } => cover.contains(triple),
            _ => false,
        })
        .map(|(v, _)| v)
        .collect();
    Ok(Witness::new(set))
}

/// Reads the cover back off a (1,j)-set within budget: the triples whose
/// link vertex is selected, if they form an exact cover.
pub fn extract_cover(art: &ReductionArtifact, set: &[usize]) -> Result<Option<Vec<usize>>, ReductionError> {
    let report = verify_1j_set(&art.graph, set, art.j).map_err(|_| ReductionError::InvalidSet)?;
    if !report.valid {
        return Err(ReductionError::InvalidSet);
    }
    let set = Witness::new(set.to_vec());
    if set.cardinality() > art.k {
        return Err(ReductionError::OverBudget { size: set.cardinality(), k: art.k });
    }
    let cover: Vec<usize> = (0..art.instance.t()).filter(|&p| set.contains(art.link(p))).collect();
    Ok(art.instance.is_exact_cover(&cover).then_some(cover))
}

/// First exact cover in lexicographic order of triple indices.
pub fn solve_ex3c_brute(inst: &Ex3cInstance) -> Result<Option<Vec<usize>>, ReductionError> {
    let (q, t) = (inst.q(), inst.t());
    if q > 4 || t > 20 {
        return Err(ReductionError::GuardExceeded { q, t });
    }
    if q > t {
        return Ok(None);
    }
    let mut idx: Vec<usize> = (0..q).collect();
    loop {
        if inst.is_exact_cover(&idx) {
            return Ok(Some(idx));
        }
        let Some(i) = (0..q).rev().find(|&i| idx[i] < t - q + i) else {
            return Ok(None);
        };
        idx[i] += 1;
        for k in i + 1..q {
            idx[k] = idx[k - 1] + 1;
        }
    }
}

/// Exhaustive checks of the local facts behind the reverse direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GadgetReport {
    pub j: usize,
    /// Fewest claw vertices dominating both leaves.
    pub claw_leaf_minimum: usize,
    /// All one-vertex sets dominating both leaves and the link.
    pub claw_link_dominators: Vec<Vec<usize>>,
    /// Fewest tree vertices dominating all grandchildren.
    pub tree_minimum: usize,
    /// All minimum such sets.
    pub tree_minimum_sets: Vec<Vec<usize>>,
    /// With an outside vertex joined to the root and selected, the number of
    /// selected root neighbours when all children are selected.
    pub root_count_with_outside: usize,
}

impl GadgetReport {
    /// Whether every local fact holds: one claw vertex suffices for the
    /// leaves and only the center also covers the link; a tree needs `j`
    /// vertices, achieved only by the children; and an outside selected
    /// neighbour overloads an unselected root.
    pub fn holds(&self) -> bool {
        let children: Vec<usize> = (1..=self.j).collect();
        self.claw_leaf_minimum == 1
            && self.claw_link_dominators == vec![vec![0]]
            && self.tree_minimum == self.j
            && self.tree_minimum_sets == vec![children]
            && self.root_count_with_outside > self.j
    }
}

/// Runs the enumeration oracle on an isolated claw and an isolated tree
/// gadget for this `j`.
pub fn gadget_lower_bounds(j: usize) -> Result<GadgetReport, ReductionError> {
    if j < 2 {
        return Err(ReductionError::InvalidJ(j));
    }
    let need = Band::new(1, usize::MAX);
    let free = Band::new(0, usize::MAX);

    // Claw: center 0, link 1, leaves 2 and 3.
    let claw = Graph::star(3);
    let (claw_leaf_minimum, _) =
        all_minimum_sets(&claw, &[free, free, need, need]).expect("claw is tiny");
    let (size, sets) = all_minimum_sets(&claw, &[free, need, need, need]).expect("claw is tiny");
    let claw_link_dominators = if size == 1 { sets.into_iter().map(Witness::into_vec).collect() } else { Vec::new() };

    // Tree: root 0, children 1..=j, grandchildren after them.
    let n = 1 + 3 * j;
    let mut edges: Vec<(usize, usize)> = (1..=j).map(|c| (0, c)).collect();
    for c in 0..j {
        edges.push((1 + c, 1 + j + 2 * c));
        edges.push((1 + c, 2 + j + 2 * c));
    }
    let tree = Graph::from_edges(n, edges).expect("gadget tree is simple");
    let bands: Vec<Band> = (0..n).map(|v| if v > j { need } else { free }).collect();
    let (tree_minimum, sets) = all_minimum_sets(&tree, &bands).expect("gadget tree is small");
    let tree_minimum_sets = sets.into_iter().map(Witness::into_vec).collect();

    // Attach an outside vertex to the root and select it with every child.
    let outside = tree.disjoint_union(&Graph::empty(1)).with_edges([(0, n)]).expect("new edge");
    let mut selected = vec![n];
    selected.extend(1..=j);
    let root_count_with_outside = outside.neighbors(0).iter().filter(|v| selected.contains(v)).count();

    Ok(GadgetReport {
        j,
        claw_leaf_minimum,
        claw_link_dominators,
        tree_minimum,
        tree_minimum_sets,
        root_count_with_outside,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::chordality_check;

    fn inst(q: usize, triples: &[[usize; 3]]) -> Ex3cInstance {
        Ex3cInstance::new(q, triples.to_vec()).unwrap()
    }

    #[test]
    fn counts_for_single_triple() {
        let art = build_reduction(&inst(1, &[[1, 2, 3]]), 2).unwrap();
        assert_eq!(art.k, 8);
        assert_eq!(art.graph.n(), 28);
        assert_eq!(art.graph.m(), expected_size(1, 1, 2));
        assert!(chordality_check(&art.graph).is_chordal());
        let art = build_reduction(&inst(1, &[[1, 2, 3], [1, 2, 3]]), 2).unwrap();
        assert_eq!(art.k, 9);
        assert_eq!(art.graph.degree(art.link(0)), 4);
        assert_eq!(art.graph.degree(art.link(1)), 4);
    }

    #[test]
    fn count_grid() {
        for q in 1..=3 {
            for t in 1..=6 {
                let triples: Vec<[usize; 3]> =
                    (0..t).map(|p| { let a = 3 * (p % q); [a + 1, a + 2, a + 3] }).collect();
                let inst = Ex3cInstance::new(q, triples).unwrap();
                for j in 2..=3 {
                    let art = build_reduction(&inst, j).unwrap();
                    assert_eq!(art.graph.n(), expected_order(q, t, j));
                    assert_eq!(art.graph.m(), expected_size(q, t, j));
                    assert_eq!(art.k, t + q + 3 * j * q * q);
                    assert!(chordality_check(&art.graph).is_chordal());
                    for p in 0..t {
                        assert_eq!(art.graph.degree(art.link(p)), 4);
                    }
                    for i in 1..=3 * q {
                        let x = art.element(i);
                        let roots = (0..q).filter(|&r| art.graph.has_edge(x, art.tree_root(i, r))).count();
                        assert_eq!(roots, q);
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_j1() {
        assert_eq!(build_reduction(&inst(1, &[[1, 2, 3]]), 1), Err(ReductionError::InvalidJ(1)));
    }

    #[test]
    fn forward_and_back() {
        let inst = inst(2, &[[1, 2, 3], [4, 5, 6], [1, 4, 5]]);
        let art = build_reduction(&inst, 2).unwrap();
        let w = forward_witness(&art, &[0, 1]).unwrap();
        assert_eq!(w.cardinality(), 29);
        assert_eq!(art.k, 29);
        assert!(verify_1j_set(&art.graph, w.vertices(), 2).unwrap().valid);
        assert_eq!(extract_cover(&art, w.vertices()).unwrap(), Some(vec![0, 1]));
        assert!(matches!(forward_witness(&art, &[0]), Err(ReductionError::NotExactCover(_))));
        let all: Vec<usize> = (0..art.graph.n()).collect();
        assert!(matches!(extract_cover(&art, &all), Err(ReductionError::OverBudget { .. })));
        assert_eq!(extract_cover(&art, &[0]), Err(ReductionError::InvalidSet));
    }

    #[test]
    fn brute_force_covers() {
        assert_eq!(solve_ex3c_brute(&inst(1, &[[1, 2, 3]])).unwrap(), Some(vec![0]));
        assert_eq!(solve_ex3c_brute(&inst(2, &[[1, 2, 3], [1, 4, 5]])).unwrap(), None);
        assert_eq!(
            solve_ex3c_brute(&inst(2, &[[1, 2, 3], [3, 4, 5], [4, 5, 6]])).unwrap(),
            Some(vec![0, 2])
        );
        let big = Ex3cInstance::new(5, vec![[1, 2, 3]]).unwrap();
        assert!(matches!(solve_ex3c_brute(&big), Err(ReductionError::GuardExceeded { .. })));
    }

    #[test]
    fn gadgets() {
        for j in 2..=3 {
            let r = gadget_lower_bounds(j).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }
}
