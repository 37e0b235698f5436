//! Simple undirected graphs on dense vertex ids `0..n`.

use std::fmt;

use crate::error::{Error, Result};

/// A simple undirected graph. Neighbor lists are kept sorted and deduplicated.
///
/// Values are immutable; every operation that changes the vertex or edge set
/// builds a new graph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

/// Three pairwise distinct vertices, stored in ascending order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle([usize; 3]);

impl Triangle {
    /// Panics if the vertices are not pairwise distinct.
    pub fn new(a: usize, b: usize, c: usize) -> Triangle {
        let mut v = [a, b, c];
        v.sort_unstable();
        assert!(v[0] != v[1] && v[1] != v[2], "triangle vertices must be distinct: {a} {b} {c}");
        Triangle(v)
    }

    pub fn vertices(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn is_in(&self, g: &Graph) -> bool {
        let [a, b, c] = self.0;
        c < g.order() && g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c)
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn empty(n: usize) -> Graph {
        Graph { adj: vec![Vec::new(); n] }
    }

    pub fn complete(n: usize) -> Graph {
        let adj = (0..n).map(|v| (0..n).filter(|&u| u != v).collect()).collect();
        Graph { adj }
    }

    /// Cycle `0-1-...-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == n
    }

    /// All 3-cliques, each once, in ascending canonical order.
    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for a in 0..self.order() {
            let higher: Vec<usize> = self.adj[a].iter().copied().filter(|&b| b > a).collect();
            for (i, &b) in higher.iter().enumerate() {
                for &c in &higher[i + 1..] {
                    if self.has_edge(b, c) {
                        out.push(Triangle([a, b, c]));
                    }
                }
            }
        }
        out
    }

    /// All cliques of exactly `size` vertices, each as an ascending vertex list,
    /// in lexicographic order.
    pub fn cliques_of_size(&self, size: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if size == 0 {
            return vec![Vec::new()];
        }
        let mut current = Vec::with_capacity(size);
        for v in 0..self.order() {
            let cand: Vec<usize> = self.adj[v].iter().copied().filter(|&u| u > v).collect();
            current.push(v);
            self.extend_cliques(&mut current, &cand, size, &mut out);
            current.pop();
        }
        out
    }

    fn extend_cliques(
        &self,
        current: &mut Vec<usize>,
        cand: &[usize],
        size: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        if current.len() + cand.len() < size {
            return;
        }
        for (i, &u) in cand.iter().enumerate() {
            let next: Vec<usize> = cand[i + 1..]
                .iter()
                .copied()
                .filter(|&w| self.has_edge(u, w))
                .collect();
            current.push(u);
            self.extend_cliques(current, &next, size, out);
            current.pop();
        }
    }

    /// Subgraph induced by `keep` (any order, duplicates ignored). Returns the
    /// graph together with `map[new_id] = old_id`; new ids follow ascending old ids.
    pub fn induced(&self, keep: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let n = self.order();
        let mut flags = vec![false; n];
        for &v in keep {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            flags[v] = true;
        }
        let map: Vec<usize> = (0..n).filter(|&v| flags[v]).collect();
        Ok((self.induced_by_flags(&flags, map.clone()), map))
    }

    /// Deletes `remove` and relabels the survivors contiguously.
    /// Returns the new graph and `map[new_id] = old_id`.
    pub fn delete_vertices(&self, remove: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let n = self.order();
        let mut keep = vec![true; n];
        for &v in remove {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            keep[v] = false;
        }
        let map: Vec<usize> = (0..n).filter(|&v| keep[v]).collect();
        Ok((self.induced_by_flags(&keep, map.clone()), map))
    }

    fn induced_by_flags(&self, keep: &[bool], map: Vec<usize>) -> Graph {
        let mut new_id = vec![usize::MAX; self.order()];
        for (i, &old) in map.iter().enumerate() {
            new_id[old] = i;
        }
        let adj = map
            .iter()
            .map(|&old| {
                self.adj[old]
                    .iter()
                    .filter(|&&u| keep[u])
                    .map(|&u| new_id[u])
                    .collect()
            })
            .collect();
        Graph { adj }
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.order());
        Graph::new(self.order(), self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])))
            .expect("permutation keeps edges valid")
    }

    /// Disjoint union with `extra` new isolated vertices plus the given edges.
    pub fn extended<I>(&self, extra: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::new(self.order() + extra, self.edges().into_iter().chain(edges))
    }

    /// 64-bit neighbor masks; only valid for `n <= 64`.
    pub(crate) fn masks(&self) -> Vec<u64> {
        debug_assert!(self.order() <= 64);
        self.adj
            .iter()
            .map(|list| list.iter().fold(0u64, |m, &u| m | (1u64 << u)))
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn diamond() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn build_rejects_bad_edges() {
        assert_eq!(
            Graph::new(3, [(0, 3)]),
            Err(Error::EndpointOutOfRange { u: 0, v: 3, n: 3 })
        );
        assert_eq!(Graph::new(3, [(1, 1)]), Err(Error::SelfLoop(1)));
    }

    #[test]
    fn build_collapses_duplicates() {
        let g = Graph::new(3, [(0, 1), (1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn fixtures() {
        let k3 = Graph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        let c6 = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        assert_eq!(c6, Graph::cycle(6));
        assert!(c6.neighbors(0) == [1, 5]);
        let k1 = Graph::new(1, []).unwrap();
        assert_eq!(k1.order(), 1);
        assert_eq!(k1.edge_count(), 0);
    }

    #[test]
    fn triangle_listing() {
        assert_eq!(Graph::complete(3).triangles(), vec![Triangle::new(0, 1, 2)]);
        assert!(Graph::cycle(6).triangles().is_empty());
        assert_eq!(
            diamond().triangles(),
            vec![Triangle::new(0, 1, 2), Triangle::new(0, 1, 3)]
        );
    }

    #[test]
    fn deletion() {
        let (g, map) = Graph::complete(3).delete_vertices(&[2]).unwrap();
        assert_eq!(g, Graph::complete(2));
        assert_eq!(map, vec![0, 1]);

        let (g, _) = Graph::cycle(6).delete_vertices(&[0]).unwrap();
        assert_eq!(g, Graph::path(5));

        // diamond minus 0: old 1,2,3 -> new 0,1,2; remaining edges 1-2, 1-3
        let (g, map) = diamond().delete_vertices(&[0]).unwrap();
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(g.edges(), vec![(0, 1), (0, 2)]);

        assert_eq!(
            diamond().delete_vertices(&[4]).unwrap_err(),
            Error::VertexOutOfRange { vertex: 4, n: 4 }
        );
    }

    #[test]
    fn cliques_by_size() {
        let g = diamond();
        assert_eq!(g.cliques_of_size(3).len(), 2);
        assert_eq!(g.cliques_of_size(2).len(), 5);
        assert_eq!(Graph::complete(5).cliques_of_size(4).len(), 5);
        assert!(g.cliques_of_size(4).is_empty());
    }
}
