//! Labeled 2-trees grown from a red triangle by the two gadget operations,
//! their replayable construction certificates, and the inverse peeler that
//! recovers a certificate from an unlabeled 2-tree.
//!
//! Operation O1 on an edge `v1v2` adds `u1, u2, u3` forming the triangles
//! `v1v2u1`, `v2u1u2`, `u1u2u3`; the last one is red, the first two blue.
//!
//! Operation O2 on a red triangle `v1v2v3` and an edge `v3v4` adds `u0, u1, u2`
//! forming `u0v1v2`, `v3v4u1`, `v3u1u2`. The triangle `v1v2v3` turns blue,
//! `u0v1v2` and `v3u1u2` become red and `v3v4u1` blue. `v4` may be `v1` or `v2`.
//!
//! In every labeled 2-tree built this way the red triangles partition the
//! vertex set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::cover::{self, Cover};
use crate::error::{Error, Result};
use crate::graph::{Graph, Triangle};
use crate::ktree;

/// A 2-tree with red and blue triangle labels. Vertex ids need not be
/// contiguous while a construction is in progress.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledTwoTree {
    adj: BTreeMap<usize, BTreeSet<usize>>,
    red: BTreeSet<Triangle>,
    blue: BTreeSet<Triangle>,
}

impl LabeledTwoTree {
    /// The single red triangle on `base`.
    pub fn base(base: Triangle) -> LabeledTwoTree {
        let [a, b, c] = base.vertices();
        let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        adj.insert(a, [b, c].into());
        adj.insert(b, [a, c].into());
        adj.insert(c, [a, b].into());
        LabeledTwoTree { adj, red: [base].into(), blue: BTreeSet::new() }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.keys().copied()
    }

    pub fn red(&self) -> &BTreeSet<Triangle> {
        &self.red
    }

    pub fn blue(&self) -> &BTreeSet<Triangle> {
        &self.blue
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .flat_map(|(&u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    /// The underlying graph; ids must be exactly `0..order`.
    pub fn graph(&self) -> Result<Graph> {
        if self.adj.keys().next_back().is_some_and(|&m| m + 1 != self.order()) {
            return Err(Error::SparseIds);
        }
        Graph::new(self.order(), self.edges())
    }

    /// The red triangles as a perfect 3-cover.
    pub fn red_cover(&self) -> Cover {
        Cover::new(2, self.red.iter().map(|t| t.vertices().to_vec()).collect())
    }

    fn check_fresh(&self, ids: [usize; 3]) -> Result<()> {
        if ids[0] == ids[1] || ids[0] == ids[2] || ids[1] == ids[2] {
            return Err(Error::InvalidLabels(format!("new ids {ids:?} are not distinct")));
        }
        if let Some(&u) = ids.iter().find(|&&u| self.contains(u)) {
            return Err(Error::InvalidLabels(format!("id {u} is already in use")));
        }
        Ok(())
    }

    fn add_vertices(&mut self, new: [usize; 3], edges: &[(usize, usize)]) {
        for u in new {
            self.adj.insert(u, BTreeSet::new());
        }
        for &(a, b) in edges {
            self.adj.get_mut(&a).unwrap().insert(b);
            self.adj.get_mut(&b).unwrap().insert(a);
        }
    }

    /// Operation O1 on the edge `v1v2` with new vertices `[u1, u2, u3]`.
    pub fn apply_o1(&self, v1: usize, v2: usize, new: [usize; 3]) -> Result<LabeledTwoTree> {
        let mut next = self.clone();
        next.o1_in_place(v1, v2, new)?;
        Ok(next)
    }

    /// Operation O2 on the red triangle `v1v2v3` and the edge `v3v4`, with new
    /// vertices `[u0, u1, u2]`.
    pub fn apply_o2(
        &self,
        triangle: [usize; 3],
        v4: usize,
        new: [usize; 3],
    ) -> Result<LabeledTwoTree> {
        let mut next = self.clone();
        next.o2_in_place(triangle, v4, new)?;
        Ok(next)
    }

    fn o1_in_place(&mut self, v1: usize, v2: usize, new: [usize; 3]) -> Result<()> {
        if !self.has_edge(v1, v2) {
            return Err(Error::InvalidLabels(format!("{v1}{v2} is not an edge")));
        }
        self.check_fresh(new)?;
        let [u1, u2, u3] = new;
        self.add_vertices(new, &[(v1, u1), (v2, u1), (v2, u2), (u1, u2), (u1, u3), (u2, u3)]);
        self.red.insert(Triangle::new(u1, u2, u3));
        self.blue.insert(Triangle::new(v1, v2, u1));
        self.blue.insert(Triangle::new(v2, u1, u2));
        Ok(())
    }

    fn o2_in_place(&mut self, triangle: [usize; 3], v4: usize, new: [usize; 3]) -> Result<()> {
        let [v1, v2, v3] = triangle;
        if v1 == v2 || v1 == v3 || v2 == v3 {
            return Err(Error::InvalidLabels(format!("{triangle:?} is not a triangle")));
        }
        let old = Triangle::new(v1, v2, v3);
        if !self.red.contains(&old) {
            return Err(Error::InvalidLabels(format!("{old} is not a red triangle")));
        }
        if !self.has_edge(v3, v4) {
            return Err(Error::InvalidLabels(format!("{v4} is not a neighbour of {v3}")));
        }
        self.check_fresh(new)?;
        let [u0, u1, u2] = new;
        self.add_vertices(new, &[(u0, v1), (u0, v2), (u1, v3), (u1, v4), (u2, v3), (u2, u1)]);
        self.red.remove(&old);
        self.red.insert(Triangle::new(u0, v1, v2));
        self.red.insert(Triangle::new(v3, u1, u2));
        self.blue.insert(old);
        self.blue.insert(Triangle::new(v3, v4, u1));
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    O1 { v1: usize, v2: usize, u1: usize, u2: usize, u3: usize },
    O2 { v1: usize, v2: usize, v3: usize, v4: usize, u0: usize, u1: usize, u2: usize },
}

impl Step {
    pub fn new_vertices(&self) -> [usize; 3] {
        match *self {
            Step::O1 { u1, u2, u3, .. } => [u1, u2, u3],
            Step::O2 { u0, u1, u2, .. } => [u0, u1, u2],
        }
    }

    pub fn apply(&self, t: &LabeledTwoTree) -> Result<LabeledTwoTree> {
        let mut next = t.clone();
        self.apply_in_place(&mut next)?;
        Ok(next)
    }

    fn apply_in_place(&self, t: &mut LabeledTwoTree) -> Result<()> {
        match *self {
            Step::O1 { v1, v2, u1, u2, u3 } => t.o1_in_place(v1, v2, [u1, u2, u3]),
            Step::O2 { v1, v2, v3, v4, u0, u1, u2 } => t.o2_in_place([v1, v2, v3], v4, [u0, u1, u2]),
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Step::O1 { v1, v2, u1, u2, u3 } => write!(f, "O1 {v1} {v2} {u1} {u2} {u3}"),
            Step::O2 { v1, v2, v3, v4, u0, u1, u2 } => {
                write!(f, "O2 {v1} {v2} {v3} {v4} {u0} {u1} {u2}")
            }
        }
    }
}

/// A red base triangle plus the operations that rebuild a labeled 2-tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub base: Triangle,
    pub steps: Vec<Step>,
}

pub fn replay_certificate(cert: &Certificate) -> Result<LabeledTwoTree> {
    let mut t = LabeledTwoTree::base(cert.base);
    for (index, step) in cert.steps.iter().enumerate() {
        step.apply_in_place(&mut t)
            .map_err(|e| Error::StepFailed { index, reason: e.to_string() })?;
    }
    Ok(t)
}

/// Recovers a construction certificate for a 2-tree, or `None` if it has no
/// perfect 3-cover (equivalently, is not alpha-excellent).
///
/// The red triangles start as the perfect 3-cover. Each round removes the
/// three newest vertices of an O1 or O2 gadget recognized by degrees and red
/// parts, restoring the recoloured triangle for O2, until one red triangle
/// remains. Candidate gadgets are tried O1 before O2, lowest anchor first,
/// with full backtracking.
pub fn decompose(g: &Graph) -> Result<Option<Certificate>> {
    if g.order() < 3 {
        return Err(Error::OrderTooSmall { n: g.order(), min: 3 });
    }
    if !ktree::is_ktree(g, 2) {
        return Err(Error::NotAKTree { k: 2 });
    }
    let Some(cover) = cover::find_perfect_cover(g, 2)? else {
        return Ok(None);
    };
    let mut peeler = Peeler::new(g, &cover);
    Ok(peeler.run())
}

pub fn is_in_family_e(g: &Graph) -> Result<bool> {
    Ok(decompose(g)?.is_some())
}

struct Peeler<'a> {
    g: &'a Graph,
    alive: Vec<bool>,
    degree: Vec<usize>,
    part: Vec<[usize; 3]>,
    remaining: usize,
}

impl<'a> Peeler<'a> {
    fn new(g: &'a Graph, cover: &Cover) -> Peeler<'a> {
        let n = g.order();
        let mut part = vec![[0; 3]; n];
        for p in &cover.parts {
            for &v in p {
                part[v] = [p[0], p[1], p[2]];
            }
        }
        Peeler {
            g,
            alive: vec![true; n],
            degree: (0..n).map(|v| g.degree(v)).collect(),
            part,
            remaining: n,
        }
    }

    fn run(&mut self) -> Option<Certificate> {
        if let Some(base) = self.base_triangle() {
            return Some(Certificate { base, steps: Vec::new() });
        }
        let mut applied: Vec<Step> = Vec::new();
        let mut stack: Vec<(Vec<Step>, usize)> = vec![(self.matches(), 0)];
        while let Some((options, next)) = stack.last_mut() {
            if *next == options.len() {
                stack.pop();
                if let Some(step) = applied.pop() {
                    self.unpeel(&step);
                }
                continue;
            }
            let step = options[*next];
            *next += 1;
            self.peel(&step);
            applied.push(step);
            if let Some(base) = self.base_triangle() {
                applied.reverse();
                return Some(Certificate { base, steps: applied });
            }
            stack.push((self.matches(), 0));
        }
        None
    }

    fn base_triangle(&self) -> Option<Triangle> {
        if self.remaining != 3 {
            return None;
        }
        let rest: Vec<usize> = (0..self.alive.len()).filter(|&v| self.alive[v]).collect();
        (self.g.is_clique(&rest) && self.part[rest[0]] == [rest[0], rest[1], rest[2]])
            .then(|| Triangle::new(rest[0], rest[1], rest[2]))
    }

    fn nbrs(&self, v: usize) -> Vec<usize> {
        self.g.neighbors(v).iter().copied().filter(|&u| self.alive[u]).collect()
    }

    fn matches(&self) -> Vec<Step> {
        let n = self.alive.len();
        let low: Vec<usize> = (0..n).filter(|&v| self.alive[v] && self.degree[v] == 2).collect();
        let mut out = Vec::new();
        for &u3 in &low {
            self.o1_at(u3, &mut out);
        }
        for &u0 in &low {
            self.o2_at(u0, &mut out);
        }
        out
    }

    fn sorted(a: usize, b: usize, c: usize) -> [usize; 3] {
        let mut t = [a, b, c];
        t.sort_unstable();
        t
    }

    /// O1 gadget ending at `u3`: degrees 2, 3, 4 for `u3`, `u2`, `u1`, with
    /// `u1u2u3` a red part.
    fn o1_at(&self, u3: usize, out: &mut Vec<Step>) {
        let nb = self.nbrs(u3);
        let (a, b) = (nb[0], nb[1]);
        if self.part[u3] != Self::sorted(u3, a, b) {
            return;
        }
        for (u1, u2) in [(a, b), (b, a)] {
            if self.degree[u1] != 4 || self.degree[u2] != 3 {
                continue;
            }
            let Some(&v2) = self.nbrs(u2).iter().find(|&&x| x != u1 && x != u3) else {
                continue;
            };
            let n1 = self.nbrs(u1);
            if !n1.contains(&v2) {
                continue;
            }
            let Some(&v1) = n1.iter().find(|&&x| x != u2 && x != u3 && x != v2) else {
                continue;
            };
            if self.g.has_edge(v1, v2) {
                out.push(Step::O1 { v1, v2, u1, u2, u3 });
            }
        }
    }

    /// O2 gadget anchored at `u0`: red parts `u0v1v2` and `v3u1u2`, `u2` of
    /// degree 2, `u1` of degree 3, and `v1v2v3` a triangle.
    fn o2_at(&self, u0: usize, out: &mut Vec<Step>) {
        let nb = self.nbrs(u0);
        let (v1, v2) = (nb[0], nb[1]);
        if self.part[u0] != Self::sorted(u0, v1, v2) {
            return;
        }
        let n2 = self.nbrs(v2);
        for v3 in self.nbrs(v1) {
            if v3 == u0 || v3 == v2 || !n2.contains(&v3) {
                continue;
            }
            let q = self.part[v3];
            let others: Vec<usize> = q.iter().copied().filter(|&x| x != v3).collect();
            for (u1, u2) in [(others[0], others[1]), (others[1], others[0])] {
                if self.degree[u2] != 2 || self.degree[u1] != 3 {
                    continue;
                }
                let n_u2 = self.nbrs(u2);
                if !(n_u2.contains(&v3) && n_u2.contains(&u1)) {
                    continue;
                }
                let n_u1 = self.nbrs(u1);
                if !n_u1.contains(&v3) {
                    continue;
                }
                let Some(&v4) = n_u1.iter().find(|&&x| x != v3 && x != u2) else {
                    continue;
                };
                if self.g.has_edge(v3, v4) {
                    out.push(Step::O2 { v1, v2, v3, v4, u0, u1, u2 });
                }
            }
        }
    }

    fn peel(&mut self, step: &Step) {
        let gone = step.new_vertices();
        for u in gone {
            self.alive[u] = false;
        }
        for u in gone {
            for &w in self.g.neighbors(u) {
                if self.alive[w] {
                    self.degree[w] -= 1;
                }
            }
        }
        self.remaining -= 3;
        if let Step::O2 { v1, v2, v3, .. } = *step {
            let t = Self::sorted(v1, v2, v3);
            for v in [v1, v2, v3] {
                self.part[v] = t;
            }
        }
    }

    fn unpeel(&mut self, step: &Step) {
        let back = step.new_vertices();
        for u in back {
            for &w in self.g.neighbors(u) {
                if self.alive[w] {
                    self.degree[w] += 1;
                }
            }
        }
        for u in back {
            self.alive[u] = true;
        }
        self.remaining += 3;
        if let Step::O2 { v1, v2, v3, u0, u1, u2, .. } = *step {
            let p = Self::sorted(u0, v1, v2);
            self.part[v1] = p;
            self.part[v2] = p;
            self.part[v3] = Self::sorted(v3, u1, u2);
        }
    }
}
