//! Perfect (k+1)-covers: partitions of the vertex set into (k+1)-cliques.
//!
//! The search is exact-cover backtracking over the (k+1)-cliques of the
//! graph. Each uncovered vertex tracks how many of its candidate cliques are
//! still disjoint from the partial cover; branching always happens on the
//! vertex with the fewest survivors, so a vertex with a single survivor is a
//! forced move and a vertex with none is an immediate dead end.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ktree;
use crate::oracle::Oracle;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub k: usize,
    /// Each part ascending; parts ordered by their smallest vertex.
    pub parts: Vec<Vec<usize>>,
}

impl Cover {
    pub fn new(k: usize, parts: Vec<Vec<usize>>) -> Cover {
        let mut parts: Vec<Vec<usize>> = parts
            .into_iter()
            .map(|mut p| {
                p.sort_unstable();
                p
            })
            .collect();
        parts.sort();
        Cover { k, parts }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverViolation {
    WrongPartSize { part: Vec<usize>, expected: usize },
    VertexOutOfRange { vertex: usize },
    NotAClique { part: Vec<usize> },
    Overlap { vertex: usize },
    Uncovered { vertex: usize },
}

impl fmt::Display for CoverViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverViolation::WrongPartSize { part, expected } => {
                write!(f, "part {part:?} does not have {expected} vertices")
            }
            CoverViolation::VertexOutOfRange { vertex } => write!(f, "vertex {vertex} out of range"),
            CoverViolation::NotAClique { part } => write!(f, "part {part:?} is not complete"),
            CoverViolation::Overlap { vertex } => write!(f, "vertex {vertex} lies in two parts"),
            CoverViolation::Uncovered { vertex } => write!(f, "vertex {vertex} is uncovered"),
        }
    }
}

/// Checks part sizes, completeness, disjointness and coverage, in that order
/// per part; returns the first violated clause.
pub fn validate_cover(g: &Graph, cover: &Cover) -> std::result::Result<(), CoverViolation> {
    let n = g.order();
    let mut owner = vec![false; n];
    for part in &cover.parts {
        if part.len() != cover.k + 1 {
            return Err(CoverViolation::WrongPartSize { part: part.clone(), expected: cover.k + 1 });
        }
        if let Some(&v) = part.iter().find(|&&v| v >= n) {
            return Err(CoverViolation::VertexOutOfRange { vertex: v });
        }
        if !g.is_clique(part) {
            return Err(CoverViolation::NotAClique { part: part.clone() });
        }
        for &v in part {
            if owner[v] {
                return Err(CoverViolation::Overlap { vertex: v });
            }
            owner[v] = true;
        }
    }
    match owner.iter().position(|&o| !o) {
        Some(v) => Err(CoverViolation::Uncovered { vertex: v }),
        None => Ok(()),
    }
}

pub fn find_perfect_cover(g: &Graph, k: usize) -> Result<Option<Cover>> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let mut search = match CoverSearch::new(g, k) {
        Some(s) => s,
        None => return Ok(None),
    };
    let mut found = None;
    search.run(&mut |chosen| {
        found = Some(chosen.to_vec());
        true
    });
    Ok(found.map(|idx| {
        Cover::new(k, idx.into_iter().map(|i| search.cliques[i].clone()).collect())
    }))
}

/// Number of distinct perfect covers, stopping once `limit` are found.
pub fn count_perfect_covers(g: &Graph, k: usize, limit: usize) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    let limit = limit.max(1);
    let mut search = match CoverSearch::new(g, k) {
        Some(s) => s,
        None => return Ok(0),
    };
    let mut count = 0;
    search.run(&mut |_| {
        count += 1;
        count >= limit
    });
    Ok(count)
}

struct CoverSearch {
    cliques: Vec<Vec<usize>>,
    by_vertex: Vec<Vec<usize>>,
    alive: Vec<bool>,
    survivors: Vec<usize>,
    covered: Vec<bool>,
    uncovered: usize,
    chosen: Vec<usize>,
}

impl CoverSearch {
    /// `None` when the order rules out any cover.
    fn new(g: &Graph, k: usize) -> Option<CoverSearch> {
        let n = g.order();
        if !n.is_multiple_of(k + 1) {
            return None;
        }
        let cliques = g.cliques_of_size(k + 1);
        let mut by_vertex = vec![Vec::new(); n];
        for (i, c) in cliques.iter().enumerate() {
            for &v in c {
                by_vertex[v].push(i);
            }
        }
        let survivors = by_vertex.iter().map(Vec::len).collect();
        Some(CoverSearch {
            alive: vec![true; cliques.len()],
            cliques,
            by_vertex,
            survivors,
            covered: vec![false; n],
            uncovered: n,
            chosen: Vec::new(),
        })
    }

    /// Depth-first search; `on_solution` returns true to stop. Iterative, so
    /// depth is bounded by memory rather than the call stack.
    fn run(&mut self, on_solution: &mut dyn FnMut(&[usize]) -> bool) {
        // Each frame: surviving options for the branch vertex, next option
        // to try, and what the currently taken option killed.
        let mut frames: Vec<(Vec<usize>, usize, Option<Vec<usize>>)> = Vec::new();
        loop {
            if self.uncovered == 0 {
                if on_solution(&self.chosen) {
                    return;
                }
            } else if let Some(v) = self.branch_vertex() {
                let options = self.by_vertex[v].iter().copied().filter(|&c| self.alive[c]).collect();
                frames.push((options, 0, None));
            }
            // advance to the next untried option, unwinding exhausted frames
            loop {
                let Some((options, next, taken)) = frames.last_mut() else {
                    return;
                };
                if let Some(killed) = taken.take() {
                    let c = options[*next - 1];
                    self.untake(c, &killed);
                }
                if *next < options.len() {
                    let c = options[*next];
                    *next += 1;
                    let killed = self.take(c);
                    frames.last_mut().unwrap().2 = Some(killed);
                    break;
                }
                frames.pop();
            }
        }
    }

    /// Uncovered vertex with the fewest surviving candidates, lowest id on
    /// ties; `None` if some uncovered vertex has no candidate left.
    fn branch_vertex(&self) -> Option<usize> {
        let mut pick = (usize::MAX, 0);
        for v in 0..self.covered.len() {
            if !self.covered[v] && self.survivors[v] < pick.0 {
                pick = (self.survivors[v], v);
                if pick.0 == 0 {
                    return None;
                }
            }
        }
        Some(pick.1)
    }

    fn take(&mut self, c: usize) -> Vec<usize> {
        let mut killed = Vec::new();
        for i in 0..self.cliques[c].len() {
            let v = self.cliques[c][i];
            self.covered[v] = true;
            self.uncovered -= 1;
            for j in 0..self.by_vertex[v].len() {
                let d = self.by_vertex[v][j];
                if self.alive[d] {
                    self.alive[d] = false;
                    for &w in &self.cliques[d] {
                        self.survivors[w] -= 1;
                    }
                    killed.push(d);
                }
            }
        }
        self.chosen.push(c);
        killed
    }

    fn untake(&mut self, c: usize, killed: &[usize]) {
        self.chosen.pop();
        for &d in killed.iter().rev() {
            self.alive[d] = true;
            for &w in &self.cliques[d] {
                self.survivors[w] += 1;
            }
        }
        for &v in &self.cliques[c] {
            self.covered[v] = false;
            self.uncovered += 1;
        }
    }
}

/// What a perfect cover of a k-tree forces: `alpha = n/(k+1)` and every
/// colour class of the (unique) proper (k+1)-colouring is a maximum
/// independent set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverConsequences {
    pub n: usize,
    pub k: usize,
    pub expected_alpha: usize,
    /// From the greedy rule on the elimination ordering.
    pub chordal_alpha: usize,
    /// From exhaustive search; `None` when the order is over the oracle budget.
    pub oracle_alpha: Option<usize>,
    pub class_sizes: Vec<usize>,
    pub alpha_matches: bool,
    pub classes_maximum: bool,
    /// Set when the oracle cross-check was skipped.
    pub partial: bool,
}

impl CoverConsequences {
    pub fn holds(&self) -> bool {
        self.alpha_matches && self.classes_maximum
    }
}

pub fn cover_consequences(g: &Graph, cover: &Cover) -> Result<CoverConsequences> {
    cover_consequences_with(g, cover, &Oracle::default())
}

pub fn cover_consequences_with(g: &Graph, cover: &Cover, oracle: &Oracle) -> Result<CoverConsequences> {
    let k = cover.k;
    let order = ktree::recognize_ktree(g, k)?.ok_or(Error::NotAKTree { k })?;
    if let Err(v) = validate_cover(g, cover) {
        return Err(Error::InvalidLabels(format!("cover is not perfect: {v}")));
    }
    let n = g.order();
    let expected_alpha = n / (k + 1);
    let (chordal_alpha, _) = ktree::chordal_alpha(g, &order.perfect_elimination_sequence())?;
    let oracle_alpha = match oracle.alpha(g) {
        Ok((a, _)) => Some(a),
        Err(Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e),
    };

    let colour = ktree_colouring(&order, n);
    let mut class_sizes = vec![0; k + 1];
    for &c in &colour {
        class_sizes[c] += 1;
    }
    let proper = g.edges().iter().all(|&(u, v)| colour[u] != colour[v]);
    let alpha_matches = chordal_alpha == expected_alpha && oracle_alpha.is_none_or(|a| a == expected_alpha);
    let classes_maximum = proper && class_sizes.iter().all(|&s| s == chordal_alpha);
    Ok(CoverConsequences {
        n,
        k,
        expected_alpha,
        chordal_alpha,
        oracle_alpha,
        class_sizes,
        alpha_matches,
        classes_maximum,
        partial: oracle_alpha.is_none(),
    })
}

/// Proper (k+1)-colouring of a k-tree along its construction: base vertices
/// take distinct colours and every attached vertex takes the colour missing
/// from its clique.
pub fn ktree_colouring(order: &ktree::EliminationOrder, n: usize) -> Vec<usize> {
    let mut colour = vec![usize::MAX; n];
    for (c, &v) in order.base.iter().enumerate() {
        colour[v] = c;
    }
    for (v, clique) in &order.steps {
        let mut used = vec![false; order.k + 1];
        for &u in clique {
            used[colour[u]] = true;
        }
        colour[*v] = used.iter().position(|&x| !x).expect("k colours used by a k-clique");
    }
    colour
}
