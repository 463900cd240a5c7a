//! Conversions between networks and biclique covers.

use std::collections::{BTreeSet, HashSet};

use fixedbitset::FixedBitSet;

use super::{fresh_label, match_labels, realizes, LabelMatch, RectifierNetwork};
use crate::biclique::{validate_cover, Biclique, BicliqueCover};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::measures::max_balanced_k;

/// A set of network edges meeting every source-to-sink path.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeCut {
    edges: BTreeSet<(usize, usize)>,
}

impl EdgeCut {
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        EdgeCut {
            edges: edges.into_iter().collect(),
        }
    }

    /// All edges of `r` selected by `keep`.
    pub fn select(r: &RectifierNetwork, keep: impl Fn(usize, usize) -> bool) -> Self {
        Self::new(r.edges().filter(|&(u, v)| keep(u, v)))
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// One middle vertex per biclique, wired from its A-side and to its
/// B-side. The network has depth 2 and size equal to the cover weight.
pub fn cover_to_depth2(g: &BipartiteGraph, c: &BicliqueCover) -> Result<RectifierNetwork> {
    validate_cover(g, c)?;
    let (na, nb) = (g.a_len(), g.b_len());
    let taken: HashSet<String> = g.a_labels().iter().chain(g.b_labels()).cloned().collect();
    let mut labels: Vec<String> = g.a_labels().to_vec();
    labels.extend((1..=c.len()).map(|k| fresh_label(format!("k{k}"), &taken)));
    labels.extend(g.b_labels().iter().cloned());
    let sink = |j: usize| na + c.len() + j;
    let mut edges = Vec::new();
    for (k, bc) in c.bicliques().iter().enumerate() {
        let mid = na + k;
        edges.extend(bc.a().iter().map(|&i| (i, mid)));
        edges.extend(bc.b().iter().map(|&j| (mid, sink(j))));
    }
    RectifierNetwork::new(labels, edges, (0..na).collect(), (0..nb).map(sink).collect())
}

/// Maps sets of network source/sink positions to a biclique of `g`.
fn to_biclique(m: &LabelMatch, srcs: &FixedBitSet, snks: &FixedBitSet) -> Option<Biclique> {
    let a: Vec<usize> = srcs.ones().filter_map(|k| m.src_to_a[k]).collect();
    let b: Vec<usize> = snks.ones().filter_map(|t| m.sink_to_b[t]).collect();
    Biclique::new(a, b).ok()
}

fn check_realizes(r: &RectifierNetwork, g: &BipartiteGraph) -> Result<LabelMatch> {
    let m = match_labels(r, g)?;
    realizes(r, g)?.into_result()?;
    Ok(m)
}

/// Extracts `{K_{A(x), B(x)}}` over the middle vertices of a depth-2
/// network realizing `g`. Jump edges `a -> b` are subdivided first, so each
/// contributes `K_{{a},{b}}`. Middle vertices with no source ancestor or no
/// sink descendant are dropped. The weight is at most twice the size.
pub fn depth2_to_cover(r: &RectifierNetwork, g: &BipartiteGraph) -> Result<BicliqueCover> {
    if r.depth() > 2 {
        return Err(Error::domain(format!("network depth {} exceeds 2", r.depth())));
    }
    let m = check_realizes(r, g)?;
    let src_reach = r.source_reach();
    let snk_reach = r.sink_reach();
    let mut role = vec![None; r.vertex_count()];
    for (k, &s) in r.sources().iter().enumerate() {
        role[s] = Some((true, k));
    }
    for (k, &t) in r.sinks().iter().enumerate() {
        role[t] = Some((false, k));
    }
    let mut out = Vec::new();
    for v in 0..r.vertex_count() {
        match role[v] {
            None => out.extend(to_biclique(&m, &src_reach[v], &snk_reach[v])),
            Some((true, k)) => {
                for &w in r.successors(v) {
                    if let Some((false, t)) = role[w] {
                        if let (Some(i), Some(j)) = (m.src_to_a[k], m.sink_to_b[t]) {
                            out.push(Biclique::new([i], [j])?);
                        }
                    }
                }
            }
            Some((false, _)) => {}
        }
    }
    let cover = BicliqueCover::new(out).dedup();
    let weight = validate_cover(g, &cover)
        .map_err(|e| Error::TheoremViolation(format!("depth-2 extraction is not a cover: {e}")))?;
    if weight > 2 * r.size() as u64 {
        return Err(Error::TheoremViolation(format!(
            "depth-2 extraction weighs {weight} > 2 * {}",
            r.size()
        )));
    }
    Ok(cover)
}

/// The cut-covering `{K_{A(x), B(y)} : (x, y) in cut}` of a network
/// realizing `g`. Fails with a path witness when `cut` misses some
/// source-to-sink path.
pub fn cut_cover(r: &RectifierNetwork, cut: &EdgeCut, g: &BipartiteGraph) -> Result<BicliqueCover> {
    if let Some(&(u, v)) = cut.edges().iter().find(|&&(u, v)| u >= r.vertex_count() || !r.has_edge(u, v)) {
        return Err(Error::invalid(format!("cut edge ({u}, {v}) is not a network edge")));
    }
    let m = check_realizes(r, g)?;

    // Remove the cut, then no source may reach a sink.
    let blocked = |u: usize, v: usize| cut.edges().contains(&(u, v));
    let sinks: HashSet<usize> = r.sinks().iter().copied().collect();
    for &s in r.sources() {
        let mut seen = vec![false; r.vertex_count()];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            if sinks.contains(&v) {
                let path = r.path_avoiding(s, v, blocked).expect("found by the same search");
                return Err(Error::UncutPath(path.into_iter().map(|x| r.labels()[x].clone()).collect()));
            }
            for &w in r.successors(v) {
                if !seen[w] && !blocked(v, w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }

    let src_reach = r.source_reach();
    let snk_reach = r.sink_reach();
    let out = cut
        .edges()
        .iter()
        .filter_map(|&(x, y)| to_biclique(&m, &src_reach[x], &snk_reach[y]))
        .collect();
    let cover = BicliqueCover::new(out).dedup();
    validate_cover(g, &cover)
        .map_err(|e| Error::TheoremViolation(format!("cut-covering is not a cover: {e}")))?;
    Ok(cover)
}

/// With `k` the largest balanced biclique side of `g`, an edge `(u, v)` of
/// `r` is eligible when `|A(u)| <= k` and `|B(v)| <= k`. Returns
/// `{K_{A(u), B(v)} : (u, v) eligible}`; every edge of `g` lies on a path
/// through an eligible edge, so this is a cover of weight at most
/// `2k * size(r)`.
pub fn eligible_edge_cover(r: &RectifierNetwork, g: &BipartiteGraph) -> Result<BicliqueCover> {
    let m = check_realizes(r, g)?;
    let k = max_balanced_k(g)?;
    let src_reach = r.source_reach();
    let snk_reach = r.sink_reach();
    let out = r
        .edges()
        .filter(|&(u, v)| src_reach[u].count_ones(..) <= k && snk_reach[v].count_ones(..) <= k)
        .filter_map(|(u, v)| to_biclique(&m, &src_reach[u], &snk_reach[v]))
        .collect();
    let cover = BicliqueCover::new(out).dedup();
    let weight = validate_cover(g, &cover)
        .map_err(|e| Error::TheoremViolation(format!("eligible edges do not cover the graph: {e}")))?;
    let bound = 2 * k as u64 * r.size() as u64;
    if weight > bound {
        return Err(Error::TheoremViolation(format!(
            "eligible-edge cover weighs {weight} > 2k * size = {bound}"
        )));
    }
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{families, samples};

    #[test]
    fn sample_cover_becomes_the_13_edge_network() {
        let g = samples::graph();
        let r = cover_to_depth2(&g, &samples::cover()).unwrap();
        assert_eq!(r.size(), 13);
        assert!(r.depth() <= 2);
        assert!(realizes(&r, &g).unwrap().is_realized());
        assert_eq!(r.realized_graph(), g);
    }

    #[test]
    fn k22_and_matching_networks() {
        let k22 = BipartiteGraph::from_adjacency(2, &[&[0, 1], &[0, 1]]).unwrap();
        let c = BicliqueCover::new(vec![Biclique::new([0, 1], [0, 1]).unwrap()]);
        let r = cover_to_depth2(&k22, &c).unwrap();
        assert_eq!(r.size(), 4);
        assert_eq!(r.vertex_count(), 5);

        let m = families::matching_graph(4).unwrap();
        let c = BicliqueCover::new((0..4).map(|i| Biclique::new([i], [i]).unwrap()).collect());
        assert_eq!(cover_to_depth2(&m, &c).unwrap().size(), 8);
    }

    #[test]
    fn depth2_round_trip_on_sample() {
        let g = samples::graph();
        let c = depth2_to_cover(&samples::depth2_network(), &g).unwrap();
        assert_eq!(c.labeled(&g), samples::cover().labeled(&g));
        assert_eq!(c.weight(), 13);
        let c = depth2_to_cover(&samples::compact_network(), &g).unwrap();
        assert!(c.weight() <= 24);
        assert!(validate_cover(&g, &c).is_ok());
    }

    #[test]
    fn jump_edge_matching_doubles() {
        for n in 1..5 {
            let g = families::matching_graph(n).unwrap();
            let mut labels: Vec<String> = g.a_labels().to_vec();
            labels.extend(g.b_labels().iter().cloned());
            let r = RectifierNetwork::new(labels, (0..n).map(|i| (i, n + i)), (0..n).collect(), (n..2 * n).collect()).unwrap();
            let c = depth2_to_cover(&r, &g).unwrap();
            assert_eq!(c.len(), n);
            assert_eq!(c.weight(), 2 * r.size() as u64);
        }
    }

    #[test]
    fn single_path() {
        let g = BipartiteGraph::from_adjacency(1, &[&[0]]).unwrap();
        let r = RectifierNetwork::new(["a1", "x", "b1"].map(String::from).to_vec(), [(0, 1), (1, 2)], vec![0], vec![2]).unwrap();
        let c = depth2_to_cover(&r, &g).unwrap();
        assert_eq!(c.weight(), 2);
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn deep_network_is_rejected() {
        let g = BipartiteGraph::from_adjacency(1, &[&[0]]).unwrap();
        let r = RectifierNetwork::new(
            ["a1", "x", "y", "b1"].map(String::from).to_vec(),
            [(0, 1), (1, 2), (2, 3)],
            vec![0],
            vec![3],
        )
        .unwrap();
        assert!(matches!(depth2_to_cover(&r, &g), Err(Error::Domain(_))));
    }

    #[test]
    fn cut_covers() {
        let g = samples::graph();
        let r = samples::depth2_network();
        let sinks: HashSet<usize> = r.sinks().iter().copied().collect();
        let cut = EdgeCut::select(&r, |_, v| sinks.contains(&v));
        let c = cut_cover(&r, &cut, &g).unwrap();
        for k in c.bicliques() {
            assert_eq!(k.b().len(), 1);
        }
        assert!(validate_cover(&g, &c).is_ok());

        let err = cut_cover(&r, &EdgeCut::default(), &g).unwrap_err();
        match err {
            Error::UncutPath(p) => assert!(p.len() >= 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn eligible_edges_on_samples_and_matchings() {
        let g = samples::graph();
        let k = max_balanced_k(&g).unwrap() as u64;
        for r in [samples::depth2_network(), samples::compact_network()] {
            let c = eligible_edge_cover(&r, &g).unwrap();
            assert!(c.weight() <= 2 * k * r.size() as u64);
        }
        let n = 4;
        let m = families::matching_graph(n).unwrap();
        let c = BicliqueCover::new((0..n).map(|i| Biclique::new([i], [i]).unwrap()).collect());
        let r = cover_to_depth2(&m, &c).unwrap();
        let e = eligible_edge_cover(&r, &m).unwrap();
        assert_eq!(e.len(), n);
        assert_eq!(e.weight(), 2 * n as u64);
    }
}
