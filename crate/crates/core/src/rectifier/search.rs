//! Exact minimum network size for tiny graphs.
//!
//! In a minimum network every internal vertex `x` can be characterized by
//! its reach set `R(x)` (the sinks it reaches): two internal vertices with
//! equal reach sets merge, reach sets of size one contract into direct
//! edges, and each vertex independently needs as few out-edges as it takes
//! to assemble its reach set as a union of reach sets strictly below it.
//! The search therefore enumerates families of candidate reach sets, costs
//! each family by per-vertex minimum unions, and keeps the cheapest.
//! Internal vertices of a minimum network have indegree at least 2, so a
//! network with `m` edges has at most `(m - |B|) / 2` of them; once every
//! family of that size has been costed the answer is exact.

use std::collections::{HashSet, VecDeque};

use super::{fresh_label, RectifierNetwork};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::measures::{cov_lower_bound, max_balanced_k};
use crate::rational::{ceil_to_u64, int};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RectBudget {
    /// Largest `|A| + |B|` accepted.
    pub max_vertices: usize,
    /// Largest number of internal vertices considered.
    pub max_extra: usize,
    /// Largest number of candidate families costed.
    pub max_families: u64,
}

impl Default for RectBudget {
    fn default() -> Self {
        RectBudget {
            max_vertices: 16,
            max_extra: 8,
            max_families: 1 << 20,
        }
    }
}

/// Result of [`exact_rect_search`]. When `exact` is false the true value
/// lies in `[lower, upper]`; `network` always realizes the graph with
/// `upper` edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectSearch {
    pub lower: u64,
    pub upper: u64,
    pub exact: bool,
    pub network: RectifierNetwork,
}

impl RectSearch {
    pub fn value(&self) -> Option<u64> {
        self.exact.then_some(self.upper)
    }
}

type Mask = u32;

/// Minimum number of pieces whose union is exactly `target`, with the
/// chosen pieces. Pieces must be subsets of `target`.
fn min_union(target: Mask, pieces: &[Mask]) -> (u32, Vec<Mask>) {
    if target == 0 {
        return (0, Vec::new());
    }
    // BFS over reachable unions.
    let mut prev: std::collections::HashMap<Mask, (Mask, Mask)> = Default::default();
    let mut queue = VecDeque::from([0 as Mask]);
    prev.insert(0, (0, 0));
    let mut dist = std::collections::HashMap::from([(0 as Mask, 0u32)]);
    while let Some(cur) = queue.pop_front() {
        if cur == target {
            break;
        }
        for &p in pieces {
            let next = cur | p;
            if next != cur && !dist.contains_key(&next) {
                dist.insert(next, dist[&cur] + 1);
                prev.insert(next, (cur, p));
                queue.push_back(next);
            }
        }
    }
    let mut chosen = Vec::new();
    let mut cur = target;
    while cur != 0 {
        let (p, piece) = prev[&cur];
        chosen.push(piece);
        cur = p;
    }
    (dist[&target], chosen)
}

struct Oriented {
    /// Reach target of every source, as a mask over sinks.
    targets: Vec<Mask>,
    sinks: usize,
}

/// Cost of a family of internal reach sets, or `None` when some member is
/// unused (such a family is never better than the one without it).
fn cost(o: &Oriented, family: &[Mask]) -> Option<(u64, Vec<Vec<Mask>>)> {
    let singles: Vec<Mask> = (0..o.sinks).map(|j| 1 << j).collect();
    let mut used = vec![false; family.len()];
    let mut plans = Vec::with_capacity(family.len() + o.targets.len());
    let mut total = 0u64;
    let pieces_for = |t: Mask, strict: bool| -> Vec<Mask> {
        singles
            .iter()
            .copied()
            .filter(|&s| s & t == s)
            .chain(family.iter().copied().filter(|&r| r & t == r && (!strict || r != t)))
            .collect()
    };
    for &r in family.iter().chain(&o.targets) {
        let strict = plans.len() < family.len();
        let (c, chosen) = min_union(r, &pieces_for(r, strict));
        for p in &chosen {
            if let Some(k) = family.iter().position(|f| f == p) {
                used[k] = true;
            }
        }
        total += c as u64;
        plans.push(chosen);
    }
    used.iter().all(|&u| u).then_some((total, plans))
}

/// Exact `Rect(g)` by exhaustive search over internal reach-set families,
/// or a bracket when the budget stops the search early.
pub fn exact_rect_search(g: &BipartiteGraph, budget: RectBudget) -> Result<RectSearch> {
    if g.vertex_count() > budget.max_vertices {
        return Err(Error::limit("exact Rect search vertex count", budget.max_vertices as u64));
    }
    if g.edge_count() == 0 {
        let network = RectifierNetwork::new(Vec::new(), [], Vec::new(), Vec::new())?;
        return Ok(RectSearch { lower: 0, upper: 0, exact: true, network });
    }
    // Reach sets live on the smaller class.
    let transposed = g.a_len() < g.b_len();
    let h = if transposed { g.transpose() } else { g.clone() };
    if h.b_len() > 16 {
        return Err(Error::limit("exact Rect search class size", 16));
    }
    let o = Oriented {
        targets: (0..h.a_len()).map(|i| h.a_neighbors(i).ones().fold(0, |m, j| m | 1 << j)).collect(),
        sinks: h.b_len(),
    };
    let mut candidates: Vec<Mask> = (1..(1 as Mask) << o.sinks)
        .filter(|m| m.count_ones() >= 2 && o.targets.iter().any(|&t| m & t == *m))
        .collect();
    candidates.sort_by_key(|m| (m.count_ones(), *m));

    let (mut best, mut best_plan) = cost(&o, &[]).expect("empty family is always usable");
    let mut best_family: Vec<Mask> = Vec::new();
    let needed = |best: u64| ((best.saturating_sub(1)).saturating_sub(o.sinks as u64) / 2) as usize;
    let mut evaluated = 1u64;
    let mut complete = true;
    let mut size = 1;
    'sizes: while size <= needed(best).min(candidates.len()) {
        if size > budget.max_extra {
            complete = false;
            break;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if evaluated >= budget.max_families {
                complete = false;
                break 'sizes;
            }
            evaluated += 1;
            let family: Vec<Mask> = idx.iter().map(|&i| candidates[i]).collect();
            if let Some((c, plan)) = cost(&o, &family) {
                if c < best {
                    best = c;
                    best_plan = plan;
                    best_family = family;
                }
            }
            // Next combination in lexicographic order.
            let n = candidates.len();
            let Some(p) = (0..size).rev().find(|&p| idx[p] < n - size + p) else {
                break;
            };
            idx[p] += 1;
            for q in p + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
        size += 1;
    }

    let network = build_network(&h, &best_family, &best_plan, transposed)?;
    debug_assert_eq!(network.size() as u64, best);
    let lower = if complete {
        best
    } else {
        // Eligible edges turn any network into a cover of weight at most
        // 2k per edge, so size >= |E| / (2 k kappa).
        let k = max_balanced_k(g)? as i64;
        let by_kappa = ceil_to_u64(&(cov_lower_bound(g)?.cov / int(2 * k)));
        by_kappa.max(g.a_len() as u64).max(g.b_len() as u64).min(best)
    };
    Ok(RectSearch {
        lower,
        upper: best,
        exact: complete || lower == best,
        network,
    })
}

fn build_network(h: &BipartiteGraph, family: &[Mask], plans: &[Vec<Mask>], transposed: bool) -> Result<RectifierNetwork> {
    let (na, nb, nx) = (h.a_len(), h.b_len(), family.len());
    let taken: HashSet<String> = h.a_labels().iter().chain(h.b_labels()).cloned().collect();
    let mut labels: Vec<String> = h.a_labels().to_vec();
    labels.extend((1..=nx).map(|k| fresh_label(format!("x{k}"), &taken)));
    labels.extend(h.b_labels().iter().cloned());
    let node_of = |piece: Mask| -> usize {
        if piece.count_ones() == 1 {
            na + nx + piece.trailing_zeros() as usize
        } else {
            na + family.iter().position(|&f| f == piece).expect("planned piece is in the family")
        }
    };
    let mut edges = Vec::new();
    for (k, plan) in plans.iter().enumerate() {
        let from = if k < nx { na + k } else { k - nx };
        edges.extend(plan.iter().map(|&p| (from, node_of(p))));
    }
    let sources: Vec<usize> = (0..na).collect();
    let sinks: Vec<usize> = (na + nx..na + nx + nb).collect();
    if transposed {
        let flipped: Vec<_> = edges.into_iter().map(|(u, v)| (v, u)).collect();
        RectifierNetwork::new(labels, flipped, sinks, sources)
    } else {
        RectifierNetwork::new(labels, edges, sources, sinks)
    }
}
