//! Generators for k-trees, the corona and excellent-supergraph constructions,
//! and the explorer for the perfect-cover converse on k-trees.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cover;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso;
use crate::ktree;
use crate::oracle::Oracle;

/// Largest order accepted by exhaustive enumeration.
pub const ENUMERATION_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenMode {
    Random,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub mode: GenMode,
}

/// Graphs described by `spec`: one random k-tree, or every k-tree of order
/// `n` up to isomorphism.
pub fn generate(spec: &GenSpec) -> Result<Vec<Graph>> {
    match spec.mode {
        GenMode::Random => Ok(vec![random_ktree(spec)?]),
        GenMode::Exhaustive => enumerate_ktrees(spec.n, spec.k),
    }
}

/// Random k-tree: start from `K_k` on `0..k`, then attach vertex `k, k+1, ...`
/// to a k-clique drawn uniformly from all k-cliques present at that moment.
pub fn random_ktree(spec: &GenSpec) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    random_ktree_with(spec.n, spec.k, &mut rng)
}

pub fn random_ktree_with<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if n < k {
        return Err(Error::OrderTooSmall { n, min: k });
    }
    let mut b = KTreeBuilder::new(k);
    while b.order < n {
        let clique = b.cliques[rng.gen_range(0..b.cliques.len())].clone();
        b.attach(&clique);
    }
    b.finish()
}

/// Random k-tree of order `n` (a multiple of k+1) that has a perfect
/// (k+1)-cover by construction. Starting from `K_{k+1}`, each block picks a
/// uniformly random k-clique and attaches k+1 new vertices one at a time,
/// every new vertex joined to the previous new ones plus the not yet
/// replaced members of the chosen clique, so the block forms a (k+1)-clique.
pub fn random_ktree_with_cover<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if n < k + 1 || !n.is_multiple_of(k + 1) {
        return Err(Error::OrderTooSmall { n, min: k + 1 });
    }
    let mut b = KTreeBuilder::new(k);
    let base: Vec<usize> = (0..k).collect();
    b.attach(&base);
    while b.order < n {
        let mut clique = b.cliques[rng.gen_range(0..b.cliques.len())].clone();
        let mut old: Vec<usize> = (0..k).collect();
        old.shuffle(rng);
        for step in 0..=k {
            let u = b.attach(&clique);
            if step < k {
                clique[old[step]] = u;
            }
        }
    }
    b.finish()
}

struct KTreeBuilder {
    k: usize,
    order: usize,
    edges: Vec<(usize, usize)>,
    cliques: Vec<Vec<usize>>,
}

impl KTreeBuilder {
    fn new(k: usize) -> KTreeBuilder {
        let mut edges = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                edges.push((u, v));
            }
        }
        KTreeBuilder { k, order: k, edges, cliques: vec![(0..k).collect()] }
    }

    /// Adds a vertex joined to `clique`; returns its id.
    fn attach(&mut self, clique: &[usize]) -> usize {
        let v = self.order;
        self.order += 1;
        self.edges.extend(clique.iter().map(|&u| (u, v)));
        for skip in 0..self.k {
            let mut c: Vec<usize> = clique.to_vec();
            c[skip] = v;
            self.cliques.push(c);
        }
        v
    }

    fn finish(self) -> Result<Graph> {
        Graph::new(self.order, self.edges)
    }
}

/// Applies a uniformly random vertex permutation.
pub fn shuffle_labels<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> Graph {
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

/// Random labeled tree on `n` vertices (a 1-tree, vertices shuffled).
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Graph> {
    let t = random_ktree_with(n, 1, rng)?;
    Ok(shuffle_labels(&t, rng))
}

/// All k-trees of order `n`, pairwise non-isomorphic.
pub fn enumerate_ktrees(n: usize, k: usize) -> Result<Vec<Graph>> {
    if k == 0 {
        return Err(Error::InvalidK);
    }
    if n > ENUMERATION_CAP {
        return Err(Error::OrderTooLarge { n, limit: ENUMERATION_CAP });
    }
    if n < k {
        return Ok(Vec::new());
    }
    let mut level = vec![Graph::complete(k)];
    for _ in k..n {
        let mut buckets: BTreeMap<Vec<(usize, usize)>, Vec<Graph>> = BTreeMap::new();
        let mut next = Vec::new();
        for g in &level {
            for clique in g.cliques_of_size(k) {
                let v = g.order();
                let h = g.extended(1, clique.iter().map(|&u| (u, v)))?;
                let bucket = buckets.entry(invariant(&h)).or_default();
                let mut fresh = true;
                for other in bucket.iter() {
                    if iso::are_isomorphic(other, &h)? {
                        fresh = false;
                        break;
                    }
                }
                if fresh {
                    bucket.push(h.clone());
                    next.push(h);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

pub fn enumerate_2trees(n: usize) -> Result<Vec<Graph>> {
    enumerate_ktrees(n, 2)
}

/// Sorted (degree, triangles through the vertex) pairs.
fn invariant(g: &Graph) -> Vec<(usize, usize)> {
    let mut tri = vec![0; g.order()];
    for t in g.triangles() {
        for v in t.vertices() {
            tri[v] += 1;
        }
    }
    let mut inv: Vec<(usize, usize)> = (0..g.order()).map(|v| (g.degree(v), tri[v])).collect();
    inv.sort_unstable();
    inv
}

/// `H o K1`: vertex `v` gets the pendant neighbour `n + v`.
pub fn corona(h: &Graph) -> Graph {
    let n = h.order();
    h.extended(n, (0..n).map(|v| (v, n + v)))
        .expect("pendant edges stay in range")
}

/// Embeds a 2-tree as an induced subgraph of a 2-tree with a perfect 3-cover.
///
/// A maximal family of vertex-disjoint triangles is picked greedily in
/// canonical order. Every vertex `v` it misses gets two new vertices `x, y`
/// with edges `xv, xv', yv, yx`, where `v'` is the lowest-id neighbour of `v`.
/// Original vertices keep their ids; the returned map sends each original
/// vertex to its id in the supergraph.
pub fn embed_excellent(g: &Graph) -> Result<(Graph, Vec<usize>)> {
    if !ktree::is_ktree(g, 2) {
        return Err(Error::NotAKTree { k: 2 });
    }
    let n = g.order();
    let family = greedy_triangle_packing(g);
    let mut covered = vec![false; n];
    for t in &family {
        for v in t {
            covered[*v] = true;
        }
    }
    let mut next = n;
    let mut edges = Vec::new();
    for v in (0..n).filter(|&v| !covered[v]) {
        let anchor = g.neighbors(v)[0];
        let (x, y) = (next, next + 1);
        next += 2;
        edges.extend([(x, v), (x, anchor), (y, v), (y, x)]);
    }
    let h = g.extended(next - n, edges)?;
    Ok((h, (0..n).collect()))
}

/// Vertex-disjoint triangles, taken greedily in canonical order.
pub fn greedy_triangle_packing(g: &Graph) -> Vec<[usize; 3]> {
    let mut used = vec![false; g.order()];
    let mut out = Vec::new();
    for t in g.triangles() {
        let vs = t.vertices();
        if vs.iter().all(|&v| !used[v]) {
            for v in vs {
                used[v] = true;
            }
            out.push(vs);
        }
    }
    out
}

/// Collision-tolerant structural hash: vertices sorted by degree and sorted
/// neighbour degrees, relabeled, then the edge list is hashed.
pub fn fingerprint(g: &Graph) -> String {
    let n = g.order();
    let key = |v: usize| {
        let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
        nd.sort_unstable();
        (g.degree(v), nd)
    };
    let keys: Vec<_> = (0..n).map(key).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| (rank[u].min(rank[v]), rank[u].max(rank[v])))
        .collect();
    edges.sort_unstable();
    let mut hasher = Sha256::new();
    hasher.update((n as u64).to_le_bytes());
    for (u, v) in edges {
        hasher.update((u as u64).to_le_bytes());
        hasher.update((v as u64).to_le_bytes());
    }
    hex::encode(&hasher.finalize()[..8])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplorationRecord {
    pub index: usize,
    pub fingerprint: String,
    pub k: usize,
    pub n: usize,
    pub excellent: bool,
    pub has_cover: bool,
    /// `excellent` implies `has_cover`.
    pub agrees: bool,
}

impl ExplorationRecord {
    /// An excellent k-tree without a perfect cover would answer the open
    /// converse in the negative.
    pub fn is_finding(&self) -> bool {
        !self.agrees
    }
}

#[derive(Clone, Debug)]
pub struct ExploreConfig {
    pub k: usize,
    pub n_max: usize,
    /// Number of random instances.
    pub budget: usize,
    pub seed: u64,
    pub oracle: Oracle,
    /// Also run every k-tree up to isomorphism when `n_max` is within
    /// [`ENUMERATION_CAP`].
    pub exhaustive: bool,
    /// Fingerprints already processed by an earlier run.
    pub skip: HashSet<String>,
}

impl ExploreConfig {
    pub fn new(k: usize, n_max: usize, budget: usize, seed: u64) -> ExploreConfig {
        ExploreConfig {
            k,
            n_max,
            budget,
            seed,
            oracle: Oracle::default(),
            exhaustive: true,
            skip: HashSet::new(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct ExplorationSummary {
    pub records: Vec<ExplorationRecord>,
    /// Instances refused by the oracle budget.
    pub skipped_budget: usize,
    /// Instances whose fingerprint was in the resume set.
    pub skipped_seen: usize,
}

impl ExplorationSummary {
    pub fn findings(&self) -> impl Iterator<Item = &ExplorationRecord> {
        self.records.iter().filter(|r| r.is_finding())
    }
}

/// Orders sampled by the explorer: multiples of `k+1` three times out of
/// four, the rest from the non-multiples as negative controls.
fn sample_order(k: usize, n_max: usize, rng: &mut ChaCha8Rng) -> Option<usize> {
    let divisible: Vec<usize> = (k + 1..=n_max).filter(|n| n % (k + 1) == 0).collect();
    let other: Vec<usize> = (k + 1..=n_max).filter(|n| n % (k + 1) != 0).collect();
    let pool = if other.is_empty() || (!divisible.is_empty() && rng.gen_range(0..4) != 0) {
        &divisible
    } else {
        &other
    };
    pool.choose(rng).copied()
}

fn instance_seed(seed: u64, index: usize) -> u64 {
    // splitmix64 step so neighbouring indices get unrelated streams
    let mut z = seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

enum Outcome {
    Record(ExplorationRecord),
    Budget,
    Seen,
}

fn examine(index: usize, g: &Graph, cfg: &ExploreConfig) -> Result<Outcome> {
    let fp = fingerprint(g);
    if cfg.skip.contains(&fp) {
        return Ok(Outcome::Seen);
    }
    let excellent = match cfg.oracle.is_excellent(g) {
        Ok(e) => e,
        Err(Error::BudgetExceeded { .. }) => return Ok(Outcome::Budget),
        Err(e) => return Err(e),
    };
    let has_cover = cover::find_perfect_cover(g, cfg.k)?.is_some();
    if has_cover && !excellent {
        return Err(Error::Contradiction(format!(
            "instance {index} ({fp}): {}-tree of order {} has a perfect cover but is not alpha-excellent",
            cfg.k,
            g.order()
        )));
    }
    Ok(Outcome::Record(ExplorationRecord {
        index,
        fingerprint: fp,
        k: cfg.k,
        n: g.order(),
        excellent,
        has_cover,
        agrees: !excellent || has_cover,
    }))
}

/// Checks "alpha-excellent k-tree => perfect (k+1)-cover" on k-trees of order
/// `k+1..=n_max`. Instances are independent and seeded by their index, so
/// the result does not depend on the number of worker threads. A cover on a
/// non-excellent k-tree is impossible and aborts the run with
/// [`Error::Contradiction`]; the reverse disagreement is reported as a finding.
pub fn explore_converse(cfg: &ExploreConfig) -> Result<ExplorationSummary> {
    if cfg.k == 0 {
        return Err(Error::InvalidK);
    }
    let mut instances: Vec<Graph> = Vec::new();
    if cfg.exhaustive && cfg.n_max <= ENUMERATION_CAP {
        for n in cfg.k + 1..=cfg.n_max {
            instances.extend(enumerate_ktrees(n, cfg.k)?);
        }
    }
    let exhaustive_count = instances.len();

    let sampled: Vec<Result<Outcome>> = (0..cfg.budget)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(instance_seed(cfg.seed, i));
            match sample_order(cfg.k, cfg.n_max, &mut rng) {
                Some(n) => {
                    let g = random_ktree_with(n, cfg.k, &mut rng)?;
                    examine(exhaustive_count + i, &g, cfg)
                }
                None => Ok(Outcome::Seen),
            }
        })
        .collect();
    let listed: Vec<Result<Outcome>> = instances
        .par_iter()
        .enumerate()
        .map(|(i, g)| examine(i, g, cfg))
        .collect();

    let mut summary = ExplorationSummary::default();
    for outcome in listed.into_iter().chain(sampled) {
        match outcome? {
            Outcome::Record(r) => summary.records.push(r),
            Outcome::Budget => summary.skipped_budget += 1,
            Outcome::Seen => summary.skipped_seen += 1,
        }
    }
    Ok(summary)
}
