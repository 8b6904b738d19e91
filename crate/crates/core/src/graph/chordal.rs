use std::collections::VecDeque;

use super::Graph;

/// Outcome of a chordality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chordality {
    /// `peo` is a perfect elimination ordering (earliest eliminated first).
    Chordal { peo: Vec<usize> },
    /// `cycle` lists the vertices of a chordless cycle of length >= 4 in
    /// traversal order.
    NonChordal { cycle: Vec<usize> },
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal { .. })
    }
}

/// Lexicographic breadth-first search by partition refinement, O(n + m).
///
/// Returns vertices in visit order. Ties are broken toward the lowest id.
pub fn lex_bfs(g: &Graph) -> Vec<usize> {
    let n = g.n();
    // `order` holds unvisited vertices grouped into contiguous classes; the
    // class at the lowest position carries the lexicographically largest label.
    let mut order: Vec<usize> = (0..n).collect();
    let mut pos: Vec<usize> = (0..n).collect();
    let mut class_of = vec![0usize; n];
    let mut classes: Vec<(usize, usize)> = vec![(0, n)];
    let mut split_into: Vec<Option<usize>> = vec![None];
    let mut visited = Vec::with_capacity(n);

    for i in 0..n {
        let v = order[i];
        let c = class_of[v];
        classes[c].0 += 1;
        visited.push(v);

        let mut touched = Vec::new();
        for &w in g.neighbors(v) {
            if pos[w] <= i {
                continue;
            }
            let c = class_of[w];
            let nc = match split_into[c] {
                Some(nc) => nc,
                None => {
                    let start = classes[c].0;
                    classes.push((start, start));
                    split_into.push(None);
                    let nc = classes.len() - 1;
                    split_into[c] = Some(nc);
                    touched.push(c);
                    nc
                }
            };
            let front = classes[c].0;
            let u = order[front];
            order.swap(front, pos[w]);
            pos[u] = pos[w];
            pos[w] = front;
            classes[c].0 += 1;
            classes[nc].1 += 1;
            class_of[w] = nc;
        }
        for c in touched {
            split_into[c] = None;
        }
    }
    visited
}

/// Checks that every vertex's later neighbours in `order` form a clique.
pub fn is_perfect_elimination_ordering(g: &Graph, order: &[usize]) -> bool {
    if order.len() != g.n() {
        return false;
    }
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        if v >= g.n() || index[v] != usize::MAX {
            return false;
        }
        index[v] = i;
    }
    order.iter().all(|&v| {
        let later: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| index[w] > index[v])
            .collect();
        later
            .iter()
            .enumerate()
            .all(|(a, &x)| later[a + 1..].iter().all(|&y| g.has_edge(x, y)))
    })
}

/// Lex-BFS chordality test with a certificate either way.
pub fn chordality_check(g: &Graph) -> Chordality {
    let mut peo = lex_bfs(g);
    peo.reverse();
    let mut index = vec![0; g.n()];
    for (i, &v) in peo.iter().enumerate() {
        index[v] = i;
    }
    // Rose-Tarjan-Lueker test: later neighbours of v minus its earliest later
    // neighbour p must all be adjacent to p.
    let mut failing = None;
    'outer: for &v in &peo {
        let later = g.neighbors(v).iter().copied().filter(|&w| index[w] > index[v]);
        let Some(p) = later.clone().min_by_key(|&w| index[w]) else {
            continue;
        };
        for w in later {
            if w != p && !g.has_edge(p, w) {
                failing = Some(v);
                break 'outer;
            }
        }
    }
    match failing {
        None => Chordality::Chordal { peo },
        Some(v) => {
            let cycle = std::iter::once(v)
                .chain(0..g.n())
                .find_map(|c| chordless_cycle_through(g, c))
                .expect("a failed elimination test implies a chordless cycle");
            Chordality::NonChordal { cycle }
        }
    }
}

/// Looks for a chordless cycle of length >= 4 through `v`: two non-adjacent
/// neighbours `a`, `b` joined by a shortest path that avoids the rest of N[v].
fn chordless_cycle_through(g: &Graph, v: usize) -> Option<Vec<usize>> {
    let nb = g.neighbors(v);
    let mut blocked = vec![false; g.n()];
    blocked[v] = true;
    for &w in nb {
        blocked[w] = true;
    }
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            if g.has_edge(a, b) {
                continue;
            }
            if let Some(path) = shortest_path_avoiding(g, a, b, &blocked) {
                let mut cycle = vec![v];
                cycle.extend(path);
                return Some(cycle);
            }
        }
    }
    None
}

fn shortest_path_avoiding(g: &Graph, a: usize, b: usize, blocked: &[bool]) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; g.n()];
    parent[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if parent[w] != usize::MAX || (blocked[w] && w != b) {
                continue;
            }
            parent[w] = u;
            if w == b {
                let mut path = vec![b];
                let mut x = b;
                while x != a {
                    x = parent[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}
