//! Isomorphism test for desk-scale graphs: colour refinement, then backtracking.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by [`are_isomorphic`].
pub const ISO_ORDER_LIMIT: usize = 12;

pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    for x in [g, h] {
        if x.order() > ISO_ORDER_LIMIT {
            return Err(Error::OrderTooLarge { n: x.order(), limit: ISO_ORDER_LIMIT });
        }
    }
    if g.order() != h.order() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let n = g.order();
    let (cg, ch) = refine(g, h);
    let mut hist_g = cg.clone();
    let mut hist_h = ch.clone();
    hist_g.sort_unstable();
    hist_h.sort_unstable();
    if hist_g != hist_h {
        return Ok(false);
    }

    // Map rarest colour classes first.
    let mut class_size = BTreeMap::new();
    for &c in &cg {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size[&cg[v]], cg[v], v));

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(extend(g, h, &cg, &ch, &order, 0, &mut mapping, &mut used))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    mapping: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..h.order() {
        if used[w] || ch[w] != cg[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.has_edge(u, v) == h.has_edge(mapping[u], w));
        if !consistent {
            continue;
        }
        mapping[v] = w;
        used[w] = true;
        if extend(g, h, cg, ch, order, depth + 1, mapping, used) {
            return true;
        }
        used[w] = false;
        mapping[v] = usize::MAX;
    }
    false
}

/// Joint colour refinement so colours are comparable across both graphs.
fn refine(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let mut cg: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let mut ch: Vec<usize> = (0..h.order()).map(|v| h.degree(v)).collect();
    loop {
        let sig = |x: &Graph, c: &[usize], v: usize| {
            let mut nb: Vec<usize> = x.neighbors(v).iter().map(|&u| c[u]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let sg: Vec<_> = (0..g.order()).map(|v| sig(g, &cg, v)).collect();
        let sh: Vec<_> = (0..h.order()).map(|v| sig(h, &ch, v)).collect();
        let mut palette = BTreeMap::new();
        for s in sg.iter().chain(sh.iter()) {
            let next = palette.len();
            palette.entry(s.clone()).or_insert(next);
        }
        let ng: Vec<usize> = sg.iter().map(|s| palette[s]).collect();
        let nh: Vec<usize> = sh.iter().map(|s| palette[s]).collect();
        let before = distinct(&cg, &ch);
        let after = distinct(&ng, &nh);
        cg = ng;
        ch = nh;
        if after == before {
            return (cg, ch);
        }
    }
}

fn distinct(a: &[usize], b: &[usize]) -> usize {
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}
