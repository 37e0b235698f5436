//! k-tree recognition, simplicial vertices and simplexes, and the
//! linear-time independence routine for chordal graphs.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Construction certificate of a k-tree: start from the complete graph on
/// `base` (k vertices when the order is k, otherwise k + 1), then attach each
/// step's vertex to its k-clique, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrder {
    pub k: usize,
    pub base: Vec<usize>,
    pub steps: Vec<(usize, Vec<usize>)>,
}

impl EliminationOrder {
    /// Rebuilds the graph on `0..n` where `n` counts base and step vertices.
    pub fn replay(&self) -> Result<Graph> {
        let n = self.base.len() + self.steps.len();
        let mut edges = Vec::new();
        for (i, &u) in self.base.iter().enumerate() {
            for &v in &self.base[i + 1..] {
                edges.push((u, v));
            }
        }
        let mut present: BTreeSet<usize> = self.base.iter().copied().collect();
        let mut adj: BTreeSet<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        for (index, (v, clique)) in self.steps.iter().enumerate() {
            if clique.len() != self.k {
                return Err(Error::StepFailed { index, reason: format!("clique has {} vertices", clique.len()) });
            }
            if !present.insert(*v) {
                return Err(Error::StepFailed { index, reason: format!("vertex {v} already present") });
            }
            for (i, &a) in clique.iter().enumerate() {
                if !present.contains(&a) || a == *v {
                    return Err(Error::StepFailed { index, reason: format!("clique vertex {a} not present") });
                }
                for &b in &clique[i + 1..] {
                    if !adj.contains(&(a.min(b), a.max(b))) {
                        return Err(Error::StepFailed { index, reason: format!("{a}{b} is not an edge") });
                    }
                }
            }
            for &a in clique {
                edges.push((a, *v));
                adj.insert((a.min(*v), a.max(*v)));
            }
        }
        Graph::new(n, edges)
    }

    /// Vertices in elimination order: last attached first, base last.
    /// Every vertex's later neighbours form a clique.
    pub fn perfect_elimination_sequence(&self) -> Vec<usize> {
        self.steps
            .iter()
            .rev()
            .map(|(v, _)| *v)
            .chain(self.base.iter().copied())
            .collect()
    }
}

/// A maximal clique together with the simplicial vertices that witness it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub vertices: Vec<usize>,
    pub witnesses: Vec<usize>,
}

/// Recognizes k-trees by repeatedly removing the lowest-id simplicial vertex
/// of degree exactly `k`; accepts iff the residue is `K_{k+1}` (or `K_k` for
/// a graph of order `k`).
pub fn recognize_ktree(g: &Graph, k: usize) -> Result<Option<EliminationOrder>> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let n = g.order();
    if n < k {
        return Ok(None);
    }
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut candidates: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == k).collect();
    let mut removed = Vec::with_capacity(n - k);
    let mut remaining = n;
    let residue = if n == k { k } else { k + 1 };

    while remaining > residue {
        let mut chosen = None;
        for &v in &candidates {
            let nb: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| alive[u]).collect();
            if g.is_clique(&nb) {
                chosen = Some((v, nb));
                break;
            }
        }
        let Some((v, nb)) = chosen else {
            return Ok(None);
        };
        candidates.remove(&v);
        alive[v] = false;
        remaining -= 1;
        for &u in &nb {
            if degree[u] == k {
                candidates.remove(&u);
            }
            degree[u] -= 1;
            if degree[u] == k {
                candidates.insert(u);
            }
        }
        removed.push((v, nb));
    }

    let base: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if !g.is_clique(&base) {
        return Ok(None);
    }
    removed.reverse();
    Ok(Some(EliminationOrder { k, base, steps: removed }))
}

pub fn is_ktree(g: &Graph, k: usize) -> bool {
    matches!(recognize_ktree(g, k), Ok(Some(_)))
}

pub fn is_simplicial(g: &Graph, v: usize) -> bool {
    g.is_clique(g.neighbors(v))
}

/// Vertices whose neighbourhood is a clique, ascending.
pub fn simplicial_vertices(g: &Graph) -> Vec<usize> {
    (0..g.order()).filter(|&v| is_simplicial(g, v)).collect()
}

/// All simplexes, ordered by their vertex lists.
pub fn simplexes(g: &Graph) -> Vec<Simplex> {
    let mut by_clique: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for v in simplicial_vertices(g) {
        let mut closed = g.neighbors(v).to_vec();
        closed.push(v);
        closed.sort_unstable();
        by_clique.entry(closed).or_default().push(v);
    }
    by_clique
        .into_iter()
        .map(|(vertices, witnesses)| Simplex { vertices, witnesses })
        .collect()
}

/// Checks that no vertex lies in two simplexes. On failure returns the
/// lowest offending vertex; such a vertex is in no maximum independent set.
pub fn simplex_disjointness(g: &Graph) -> std::result::Result<(), usize> {
    let mut count = vec![0u32; g.order()];
    for s in simplexes(g) {
        for v in s.vertices {
            count[v] += 1;
        }
    }
    match count.iter().position(|&c| c >= 2) {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

pub fn passes_simplex_disjointness(g: &Graph) -> (bool, Option<usize>) {
    match simplex_disjointness(g) {
        Ok(()) => (true, None),
        Err(v) => (false, Some(v)),
    }
}

/// Verifies that `order` is a perfect elimination ordering of `g`, returning
/// the position of each vertex.
pub fn check_peo(g: &Graph, order: &[usize]) -> Result<Vec<usize>> {
    let n = g.order();
    if order.len() != n {
        return Err(Error::InvalidEliminationOrder { vertex: order.len().min(n) });
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if pos[v] != usize::MAX {
            return Err(Error::InvalidEliminationOrder { vertex: v });
        }
        pos[v] = i;
    }
    // Each vertex's later neighbours, minus the earliest one (its parent),
    // must be neighbours of the parent.
    for &v in order {
        let later: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| pos[u] > pos[v]).collect();
        if let Some(&parent) = later.iter().min_by_key(|&&u| pos[u]) {
            if later.iter().any(|&u| u != parent && !g.has_edge(parent, u)) {
                return Err(Error::InvalidEliminationOrder { vertex: v });
            }
        }
    }
    Ok(pos)
}

/// Maximum independent set of a chordal graph by the greedy rule over a
/// perfect elimination ordering: take each vertex whose neighbours are all
/// still free.
pub fn chordal_alpha(g: &Graph, order: &[usize]) -> Result<(usize, Vec<usize>)> {
    check_peo(g, order)?;
    let mut blocked = vec![false; g.order()];
    let mut set = Vec::new();
    for &v in order {
        if !blocked[v] {
            set.push(v);
            for &u in g.neighbors(v) {
                blocked[u] = true;
            }
        }
    }
    set.sort_unstable();
    Ok((set.len(), set))
}

/// Greedy independence over an already-validated ordering, skipping vertices
/// flagged in `skip`. Restricting a perfect elimination ordering to an induced
/// subgraph keeps it perfect, so this is exact for the subgraph. `stamp` and
/// `blocked` are scratch buffers reused across calls.
pub(crate) fn greedy_alpha_masked(
    g: &Graph,
    order: &[usize],
    skip: &[u32],
    skip_stamp: u32,
    blocked: &mut [u32],
    stamp: u32,
) -> usize {
    let mut size = 0;
    for &v in order {
        if skip[v] == skip_stamp || blocked[v] == stamp {
            continue;
        }
        size += 1;
        for &u in g.neighbors(v) {
            blocked[u] = stamp;
        }
    }
    size
}
