//! Exact independence parameters for small graphs.
//!
//! Everything here is computed from the definitions by exhaustive search over
//! 64-bit vertex masks, so orders are capped by a configurable budget. A
//! request over budget is refused with [`Error::BudgetExceeded`]; the oracle
//! never answers approximately.
//!
//! Conventions for the empty graph: `alpha = i = alpha_c = 0`, and it counts
//! as both well-covered and alpha-excellent.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ktree;

pub const DEFAULT_BUDGET: usize = 40;
/// Hard ceiling imposed by the mask width.
pub const MAX_BUDGET: usize = 64;
/// Environment variable read by [`Oracle::from_env`].
pub const BUDGET_ENV: &str = "KTREE_ORACLE_BUDGET";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub n: usize,
    pub alpha: usize,
    pub i_dom: usize,
    pub alpha_c: usize,
    pub well_covered: bool,
    pub excellent: bool,
    /// `per_vertex_max[v]` is the size of a largest independent set containing `v`.
    pub per_vertex_max: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    budget: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { budget: DEFAULT_BUDGET }
    }
}

impl Oracle {
    /// Budgets above [`MAX_BUDGET`] are clamped.
    pub fn new(budget: usize) -> Oracle {
        Oracle { budget: budget.min(MAX_BUDGET) }
    }

    /// Default budget, overridden by `KTREE_ORACLE_BUDGET` when it parses.
    pub fn from_env() -> Oracle {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(Oracle::new)
            .unwrap_or_default()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    fn masks(&self, g: &Graph) -> Result<Vec<u64>> {
        if g.order() > self.budget {
            return Err(Error::BudgetExceeded { n: g.order(), budget: self.budget });
        }
        Ok(g.masks())
    }

    /// Independence number with a maximum independent set as witness.
    pub fn alpha(&self, g: &Graph) -> Result<(usize, Vec<usize>)> {
        let adj = self.masks(g)?;
        let (size, set) = max_independent(&adj, full(g.order()));
        Ok((size, bits(set)))
    }

    /// Size of a largest independent set containing `v`.
    pub fn max_containing(&self, g: &Graph, v: usize) -> Result<usize> {
        let adj = self.masks(g)?;
        check_vertex(g, v)?;
        Ok(1 + max_independent(&adj, full(g.order()) & !(adj[v] | 1 << v)).0)
    }

    /// Whether `v` lies in some maximum independent set, via
    /// `alpha(G - N[v]) = alpha(G) - 1`.
    pub fn vertex_in_alpha_set(&self, g: &Graph, v: usize) -> Result<bool> {
        let adj = self.masks(g)?;
        check_vertex(g, v)?;
        let all = full(g.order());
        let alpha = max_independent(&adj, all).0;
        Ok(1 + max_independent(&adj, all & !(adj[v] | 1 << v)).0 == alpha)
    }

    /// Smallest maximal independent set (= smallest independent dominating set).
    pub fn independent_domination(&self, g: &Graph) -> Result<(usize, Vec<usize>)> {
        let adj = self.masks(g)?;
        let (size, set) = min_independent_dominating(&adj, g.order());
        Ok((size, bits(set)))
    }

    pub fn per_vertex_max(&self, g: &Graph) -> Result<Vec<usize>> {
        let adj = self.masks(g)?;
        let all = full(g.order());
        Ok((0..g.order())
            .map(|v| 1 + max_independent(&adj, all & !(adj[v] | 1 << v)).0)
            .collect())
    }

    /// Common independence number: the minimum over vertices of the largest
    /// independent set through that vertex.
    pub fn common_independence(&self, g: &Graph) -> Result<usize> {
        Ok(self.per_vertex_max(g)?.into_iter().min().unwrap_or(0))
    }

    /// Alpha-excellence with early exit on the first vertex outside every
    /// maximum independent set.
    pub fn is_excellent(&self, g: &Graph) -> Result<bool> {
        let adj = self.masks(g)?;
        let all = full(g.order());
        let alpha = max_independent(&adj, all).0;
        Ok((0..g.order()).all(|v| 1 + max_independent(&adj, all & !(adj[v] | 1 << v)).0 == alpha))
    }

    pub fn classify(&self, g: &Graph) -> Result<OracleReport> {
        let adj = self.masks(g)?;
        let n = g.order();
        let all = full(n);
        let alpha = max_independent(&adj, all).0;
        let i_dom = min_independent_dominating(&adj, n).0;
        let per_vertex_max: Vec<usize> = (0..n)
            .map(|v| 1 + max_independent(&adj, all & !(adj[v] | 1 << v)).0)
            .collect();
        let alpha_c = per_vertex_max.iter().copied().min().unwrap_or(alpha);
        Ok(OracleReport {
            n,
            alpha,
            i_dom,
            alpha_c,
            well_covered: i_dom == alpha,
            excellent: alpha_c == alpha,
            per_vertex_max,
        })
    }
}

pub fn alpha_bruteforce(g: &Graph) -> Result<(usize, Vec<usize>)> {
    Oracle::default().alpha(g)
}

pub fn vertex_in_alpha_set(g: &Graph, v: usize) -> Result<bool> {
    Oracle::default().vertex_in_alpha_set(g, v)
}

pub fn independent_domination(g: &Graph) -> Result<(usize, Vec<usize>)> {
    Oracle::default().independent_domination(g)
}

pub fn common_independence(g: &Graph) -> Result<usize> {
    Oracle::default().common_independence(g)
}

pub fn classify(g: &Graph) -> Result<OracleReport> {
    Oracle::default().classify(g)
}

/// Excellence test for 2-trees of any order: alpha by the chordal greedy
/// rule, then `alpha(G - N[v])` for every vertex over the same elimination
/// ordering. Vertices lying in two simplexes are rejected up front.
pub fn fast_excellent_2tree(g: &Graph) -> Result<bool> {
    let order = ktree::recognize_ktree(g, 2)?
        .ok_or(Error::NotAKTree { k: 2 })?
        .perfect_elimination_sequence();
    if ktree::simplex_disjointness(g).is_err() {
        return Ok(false);
    }
    let n = g.order();
    let mut skip = vec![0u32; n];
    let mut blocked = vec![0u32; n];
    let mut stamp = 1u32;
    let alpha = ktree::greedy_alpha_masked(g, &order, &skip, u32::MAX, &mut blocked, stamp);
    for v in 0..n {
        stamp += 1;
        skip[v] = stamp;
        for &u in g.neighbors(v) {
            skip[u] = stamp;
        }
        let rest = ktree::greedy_alpha_masked(g, &order, &skip, stamp, &mut blocked, stamp);
        if rest + 1 != alpha {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_vertex(g: &Graph, v: usize) -> Result<()> {
    if v >= g.order() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.order() });
    }
    Ok(())
}

fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn bits(mut mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// Maximum independent set inside `cand`: branch and bound on a highest
/// degree vertex, degree <= 1 vertices taken greedily, pruned by a greedy
/// clique-partition bound.
fn max_independent(adj: &[u64], cand: u64) -> (usize, u64) {
    let mut search = MisSearch { adj, best: 0, best_set: 0 };
    let seed = greedy_independent(adj, cand);
    search.best = seed.count_ones();
    search.best_set = seed;
    search.run(cand, 0, 0);
    (search.best as usize, search.best_set)
}

fn greedy_independent(adj: &[u64], mut cand: u64) -> u64 {
    let mut set = 0;
    while cand != 0 {
        let v = min_degree_vertex(adj, cand);
        set |= 1 << v;
        cand &= !(adj[v] | 1 << v);
    }
    set
}

fn min_degree_vertex(adj: &[u64], cand: u64) -> usize {
    let mut best = (u32::MAX, 0);
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & cand).count_ones();
        if d < best.0 {
            best = (d, v);
        }
    }
    best.1
}

struct MisSearch<'a> {
    adj: &'a [u64],
    best: u32,
    best_set: u64,
}

impl MisSearch<'_> {
    fn run(&mut self, mut cand: u64, mut chosen: u64, mut size: u32) {
        // Low-degree reduction: a vertex with at most one candidate neighbour
        // belongs to some maximum independent set of the candidate subgraph.
        'reduce: loop {
            let mut rest = cand;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if (self.adj[v] & cand).count_ones() <= 1 {
                    chosen |= 1 << v;
                    size += 1;
                    cand &= !(self.adj[v] | 1 << v);
                    continue 'reduce;
                }
            }
            break;
        }
        if cand == 0 {
            if size > self.best {
                self.best = size;
                self.best_set = chosen;
            }
            return;
        }
        if size + self.clique_cover_bound(cand) <= self.best {
            return;
        }
        let mut pivot = (0, 0);
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (self.adj[v] & cand).count_ones();
            if d > pivot.0 {
                pivot = (d, v);
            }
        }
        let v = pivot.1;
        self.run(cand & !(self.adj[v] | 1 << v), chosen | 1 << v, size + 1);
        self.run(cand & !(1 << v), chosen, size);
    }

    /// Number of cliques in a greedy clique partition of `cand`; an upper
    /// bound on its independence number.
    fn clique_cover_bound(&self, mut cand: u64) -> u32 {
        let mut cliques = 0;
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= !(1 << v);
            let mut common = self.adj[v] & cand;
            while common != 0 {
                let u = common.trailing_zeros() as usize;
                cand &= !(1 << u);
                common &= self.adj[u] & !(1 << u);
            }
            cliques += 1;
        }
        cliques
    }
}

fn min_independent_dominating(adj: &[u64], n: usize) -> (usize, u64) {
    let all = full(n);
    let seed = greedy_independent(adj, all);
    let max_closed = (0..n).map(|v| adj[v].count_ones() + 1).max().unwrap_or(1);
    let mut search = DomSearch { adj, all, best: seed.count_ones(), best_set: seed, max_closed };
    search.run(0, 0, 0);
    (search.best as usize, search.best_set)
}

struct DomSearch<'a> {
    adj: &'a [u64],
    all: u64,
    best: u32,
    best_set: u64,
    max_closed: u32,
}

impl DomSearch<'_> {
    fn run(&mut self, chosen: u64, dominated: u64, size: u32) {
        let open = self.all & !dominated;
        if open == 0 {
            if size < self.best {
                self.best = size;
                self.best_set = chosen;
            }
            return;
        }
        let need = open.count_ones().div_ceil(self.max_closed);
        if size + need >= self.best {
            return;
        }
        // Branch on the undominated vertex with the fewest ways to be dominated.
        let mut pick = (u32::MAX, 0u64);
        let mut rest = open;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let options = (self.adj[u] | 1 << u) & open;
            let c = options.count_ones();
            if c < pick.0 {
                pick = (c, options);
            }
        }
        let mut options = pick.1;
        while options != 0 {
            let w = options.trailing_zeros() as usize;
            options &= options - 1;
            self.run(chosen | 1 << w, dominated | self.adj[w] | 1 << w, size + 1);
        }
    }
}
