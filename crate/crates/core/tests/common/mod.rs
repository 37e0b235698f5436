//! Definition-level reference computations used only by the test suites.
//! Everything here enumerates subsets or permutations directly and shares no
//! code with the library's search routines.

#![allow(dead_code)]

use ktree_excellent::family::LabeledTwoTree;
use ktree_excellent::{Graph, Triangle};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn diamond() -> Graph {
    Graph::new(4, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]).unwrap()
}

pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

fn independent(g: &Graph, mask: u32) -> bool {
    let n = g.order();
    (0..n).all(|u| mask >> u & 1 == 0 || g.neighbors(u).iter().all(|&v| mask >> v & 1 == 0))
}

fn independent_sets(g: &Graph) -> Vec<u32> {
    assert!(g.order() <= 20);
    (0u32..1 << g.order()).filter(|&m| independent(g, m)).collect()
}

/// alpha by enumerating every vertex subset.
pub fn brute_alpha(g: &Graph) -> usize {
    independent_sets(g).iter().map(|m| m.count_ones() as usize).max().unwrap_or(0)
}

/// Smallest maximal independent set, by enumeration.
pub fn brute_i(g: &Graph) -> usize {
    let sets = independent_sets(g);
    let n = g.order();
    sets.iter()
        .filter(|&&m| (0..n).all(|v| m >> v & 1 == 1 || !independent(g, m | 1 << v)))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

/// Largest independent set through each vertex, by enumeration.
pub fn brute_per_vertex(g: &Graph) -> Vec<usize> {
    let sets = independent_sets(g);
    (0..g.order())
        .map(|v| sets.iter().filter(|&&m| m >> v & 1 == 1).map(|m| m.count_ones() as usize).max().unwrap())
        .collect()
}

pub fn brute_excellent(g: &Graph) -> bool {
    let a = brute_alpha(g);
    brute_per_vertex(g).iter().all(|&x| x == a)
}

/// Perfect matching by trying every partner of the lowest unmatched vertex.
pub fn has_perfect_matching(g: &Graph) -> bool {
    fn go(g: &Graph, used: &mut Vec<bool>) -> bool {
        let Some(v) = used.iter().position(|&u| !u) else {
            return true;
        };
        used[v] = true;
        for &w in g.neighbors(v) {
            if !used[w] {
                used[w] = true;
                if go(g, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        used[v] = false;
        false
    }
    go(g, &mut vec![false; g.order()])
}

/// Number of partitions of V into (k+1)-cliques, by choosing the part of the
/// lowest uncovered vertex among all (k+1)-subsets.
pub fn brute_cover_count(g: &Graph, k: usize) -> usize {
    fn go(g: &Graph, k: usize, used: u32) -> usize {
        let n = g.order();
        let full = (1u32 << n) - 1;
        if used == full {
            return 1;
        }
        let v = (!used).trailing_zeros() as usize;
        let mut total = 0;
        for mask in 0u32..1 << n {
            if mask >> v & 1 == 0 || mask & used != 0 || mask.count_ones() as usize != k + 1 {
                continue;
            }
            let vs: Vec<usize> = (0..n).filter(|&u| mask >> u & 1 == 1).collect();
            if g.is_clique(&vs) {
                total += go(g, k, used | mask);
            }
        }
        total
    }
    if !g.order().is_multiple_of(k + 1) {
        return 0;
    }
    go(g, k, 0)
}

fn components_without(g: &Graph, removed: u32) -> Vec<usize> {
    let n = g.order();
    let mut comp = vec![usize::MAX; n];
    let mut id = 0;
    for s in 0..n {
        if removed >> s & 1 == 1 || comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = id;
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if removed >> y & 1 == 0 && comp[y] == usize::MAX {
                    comp[y] = id;
                    stack.push(y);
                }
            }
        }
        id += 1;
    }
    comp
}

fn has_clique_of_size(g: &Graph, size: usize) -> bool {
    let n = g.order();
    (0u32..1 << n).any(|m| {
        m.count_ones() as usize == size && {
            let vs: Vec<usize> = (0..n).filter(|&u| m >> u & 1 == 1).collect();
            g.is_clique(&vs)
        }
    })
}

/// k-tree test from the separator characterization: connected, contains
/// K_k but not K_{k+2}, and every minimal separator of every nonadjacent
/// pair induces K_k.
pub fn rose_is_ktree(g: &Graph, k: usize) -> bool {
    let n = g.order();
    assert!(n <= 10);
    if n == 0 || !g.is_connected() || !has_clique_of_size(g, k) || has_clique_of_size(g, k + 2) {
        return false;
    }
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            for s in 0u32..1 << n {
                if s >> u & 1 == 1 || s >> v & 1 == 1 {
                    continue;
                }
                let comp = components_without(g, s);
                if comp[u] == comp[v] {
                    continue;
                }
                let members: Vec<usize> = (0..n).filter(|&x| s >> x & 1 == 1).collect();
                let minimal = members.iter().all(|&x| {
                    g.neighbors(x).iter().any(|&y| comp[y] == comp[u])
                        && g.neighbors(x).iter().any(|&y| comp[y] == comp[v])
                });
                if minimal && !(members.len() == k && g.is_clique(&members)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Canonical form by minimizing the sorted edge list over all permutations.
pub fn brute_canonical(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut e: Vec<(usize, usize)> = g
            .edges()
            .into_iter()
            .map(|(a, b)| (perm[a].min(perm[b]), perm[a].max(perm[b])))
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Labeled 2-tree grown from the red triangle 012 by `steps` random gadget
/// operations, with new ids taken in order.
pub fn random_family_member<R: Rng>(steps: usize, rng: &mut R) -> LabeledTwoTree {
    let mut t = LabeledTwoTree::base(Triangle::new(0, 1, 2));
    for _ in 0..steps {
        let next = t.order();
        let new = [next, next + 1, next + 2];
        if rng.gen_bool(0.5) {
            let edges = t.edges();
            let (a, b) = edges[rng.gen_range(0..edges.len())];
            let (v1, v2) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            t = t.apply_o1(v1, v2, new).unwrap();
        } else {
            let red: Vec<Triangle> = t.red().iter().copied().collect();
            let mut vs = red[rng.gen_range(0..red.len())].vertices();
            vs.shuffle(rng);
            let v3 = vs[2];
            let nb: Vec<usize> = t.vertices().filter(|&u| t.has_edge(v3, u)).collect();
            let v4 = nb[rng.gen_range(0..nb.len())];
            t = t.apply_o2(vs, v4, new).unwrap();
        }
    }
    t
}

/// The graph of a labeled 2-tree with its ids compressed to `0..order`.
pub fn compact(t: &LabeledTwoTree) -> Graph {
    let ids: Vec<usize> = t.vertices().collect();
    let pos = |v: usize| ids.binary_search(&v).unwrap();
    Graph::new(ids.len(), t.edges().into_iter().map(|(u, v)| (pos(u), pos(v)))).unwrap()
}
