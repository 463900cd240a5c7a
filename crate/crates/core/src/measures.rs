//! The weight/efficiency function `H(a, b)`, the parameter kappa, and the
//! lower bounds derived from them.

use fixedbitset::FixedBitSet;

use crate::biclique::{enumerate_bicliques_with, DEFAULT_GUARD};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::rational::{ratio, Rational};

/// `H(a, b) = ab / (a + b)`, the number of edges a `K_{a,b}` covers per
/// unit of weight.
pub fn h_ratio(a: u64, b: u64) -> Result<Rational> {
    if a == 0 || b == 0 {
        return Err(Error::domain(format!("H({a}, {b}) needs positive arguments")));
    }
    Ok(ratio((a * b) as i64, (a + b) as i64))
}

/// Maximum of `H(|A'|, |B'|)` over the bicliques of `g`. Monotonicity of
/// `H` lets the maximum range over maximal bicliques only.
pub fn kappa(g: &BipartiteGraph) -> Result<Rational> {
    kappa_with(g, DEFAULT_GUARD)
}

pub fn kappa_with(g: &BipartiteGraph, guard: u64) -> Result<Rational> {
    if g.edge_count() == 0 {
        return Err(Error::domain("kappa of a graph without edges"));
    }
    let mut best: Option<Rational> = None;
    for k in enumerate_bicliques_with(g, true, guard)? {
        let h = h_ratio(k.a().len() as u64, k.b().len() as u64)?;
        if best.as_ref().is_none_or(|b| h > *b) {
            best = Some(h);
        }
    }
    Ok(best.expect("a graph with an edge has a biclique"))
}

/// Largest `k` such that `K_{k,k}` is a biclique of `g`; 0 without edges.
pub fn max_balanced_k(g: &BipartiteGraph) -> Result<usize> {
    max_balanced_k_with(g, DEFAULT_GUARD)
}

pub fn max_balanced_k_with(g: &BipartiteGraph, guard: u64) -> Result<usize> {
    Ok(enumerate_bicliques_with(g, true, guard)?
        .iter()
        .map(|k| k.a().len().min(k.b().len()))
        .max()
        .unwrap_or(0))
}

/// `|E| / kappa` bounds the weight of every cover. `|E| / kappa^2` is the
/// classical estimate for network size; it holds only up to a constant and
/// overshoots when `kappa < 1` (a perfect matching has `kappa = 1/2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBounds {
    pub cov: Rational,
    pub rect: Rational,
}

pub fn cov_lower_bound(g: &BipartiteGraph) -> Result<LowerBounds> {
    cov_lower_bound_with(g, DEFAULT_GUARD)
}

pub fn cov_lower_bound_with(g: &BipartiteGraph, guard: u64) -> Result<LowerBounds> {
    let k = kappa_with(g, guard)?;
    let e = Rational::from_integer(g.edge_count().into());
    Ok(LowerBounds {
        cov: &e / &k,
        rect: &e / (&k * &k),
    })
}

/// The maximizing induced subgraph of [`induced_ratio_max`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedRatio {
    pub value: Rational,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// Maximum of `|E(G')| / kappa(G')` over induced subgraphs `G'` with at
/// least one edge. Exhaustive over `2^(|A|+|B|)` vertex subsets.
pub fn induced_ratio_max(g: &BipartiteGraph) -> Result<InducedRatio> {
    induced_ratio_max_with(g, DEFAULT_GUARD)
}

pub fn induced_ratio_max_with(g: &BipartiteGraph, guard: u64) -> Result<InducedRatio> {
    let (na, nb) = (g.a_len(), g.b_len());
    if g.edge_count() == 0 {
        return Err(Error::domain("induced ratio of a graph without edges"));
    }
    if na + nb >= 63 || (1u64 << (na + nb)) > guard {
        return Err(Error::limit("induced subgraph enumeration", guard));
    }
    let mut best: Option<InducedRatio> = None;
    for amask in 1u64..(1 << na) {
        let a_keep = mask_set(amask, na);
        for bmask in 1u64..(1 << nb) {
            let b_keep = mask_set(bmask, nb);
            // Subgraphs with an isolated vertex repeat a smaller one.
            let isolated = a_keep.ones().any(|i| g.a_neighbors(i).intersection(&b_keep).next().is_none())
                || b_keep.ones().any(|j| g.b_neighbors(j).intersection(&a_keep).next().is_none());
            if isolated {
                continue;
            }
            let sub = g.induced(&a_keep, &b_keep);
            let value = Rational::from_integer(sub.edge_count().into()) / kappa_with(&sub, guard)?;
            if best.as_ref().is_none_or(|b| value > b.value) {
                best = Some(InducedRatio {
                    value,
                    a: a_keep.ones().collect(),
                    b: b_keep.ones().collect(),
                });
            }
        }
    }
    Ok(best.expect("the whole graph without isolated vertices qualifies"))
}

fn mask_set(mask: u64, width: usize) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(width);
    for i in 0..width {
        if mask >> i & 1 == 1 {
            s.insert(i);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biclique::enumerate_bicliques;
    use crate::rational::int;
    use crate::{families, samples};

    fn matching(n: usize) -> BipartiteGraph {
        families::matching_graph(n).unwrap()
    }

    #[test]
    fn h_ratio_values() {
        assert_eq!(h_ratio(1, 1).unwrap(), ratio(1, 2));
        assert_eq!(h_ratio(2, 2).unwrap(), int(1));
        assert_eq!(h_ratio(3, 6).unwrap(), int(2));
        assert!(h_ratio(0, 3).is_err());
    }

    #[test]
    fn kappa_examples() {
        let k22 = BipartiteGraph::from_adjacency(2, &[&[0, 1], &[0, 1]]).unwrap();
        assert_eq!(kappa(&k22).unwrap(), int(1));
        assert_eq!(kappa(&families::orthogonality_graph(2).unwrap()).unwrap(), int(1));
        assert_eq!(kappa(&families::orthogonality_graph(4).unwrap()).unwrap(), int(2));
        let empty = BipartiteGraph::from_adjacency(1, &[&[]]).unwrap();
        assert!(kappa(&empty).is_err());
    }

    #[test]
    fn balanced_k_examples() {
        assert_eq!(max_balanced_k(&matching(3)).unwrap(), 1);
        let k33 = BipartiteGraph::from_adjacency(3, &[&[0, 1, 2], &[0, 1, 2], &[0, 1, 2]]).unwrap();
        assert_eq!(max_balanced_k(&k33).unwrap(), 3);
        let empty = BipartiteGraph::from_adjacency(1, &[&[]]).unwrap();
        assert_eq!(max_balanced_k(&empty).unwrap(), 0);
        // Exhaustive balanced search on the circulant n = 8 graph.
        let g = families::circulant_quarter_graph(8).unwrap();
        let brute = (1..=8)
            .filter(|&k| {
                (0u32..256).filter(|m| m.count_ones() == k).any(|m| {
                    let common = (0..8).filter(|&j| (0..8).filter(|i| m >> i & 1 == 1).all(|i| g.has_edge(i, j))).count();
                    common >= k as usize
                })
            })
            .max()
            .unwrap() as usize;
        assert_eq!(max_balanced_k(&g).unwrap(), brute);
        assert_eq!(brute, 3);
        assert!(ratio(brute as i64, 2) <= kappa(&g).unwrap());
    }

    #[test]
    fn lower_bound_examples() {
        let k22 = BipartiteGraph::from_adjacency(2, &[&[0, 1], &[0, 1]]).unwrap();
        assert_eq!(cov_lower_bound(&k22).unwrap(), LowerBounds { cov: int(4), rect: int(4) });
        let orth = families::orthogonality_graph(2).unwrap();
        assert_eq!(orth.edge_count(), 10);
        assert_eq!(cov_lower_bound(&orth).unwrap(), LowerBounds { cov: int(10), rect: int(10) });
        for n in 1..5 {
            let b = cov_lower_bound(&matching(n)).unwrap();
            assert_eq!(b.cov, int(2 * n as i64));
            assert_eq!(b.rect, int(4 * n as i64));
        }
    }

    #[test]
    fn sample_lower_bound() {
        // kappa of the 5+5 sample is H(3,3) = 3/2, so |E|/kappa = 10.
        let g = samples::graph();
        assert_eq!(kappa(&g).unwrap(), ratio(3, 2));
        assert_eq!(cov_lower_bound(&g).unwrap().cov, int(10));
    }

    /// Oracle: every pair of vertex subsets, kappa by all-biclique maximum.
    fn induced_oracle(g: &BipartiteGraph) -> Rational {
        let mut best = int(0);
        for am in 1u64..(1 << g.a_len()) {
            for bm in 1u64..(1 << g.b_len()) {
                let sub = g.induced(&mask_set(am, g.a_len()), &mask_set(bm, g.b_len()));
                if sub.edge_count() == 0 {
                    continue;
                }
                let k = enumerate_bicliques(&sub, false)
                    .unwrap()
                    .iter()
                    .map(|k| h_ratio(k.a().len() as u64, k.b().len() as u64).unwrap())
                    .max()
                    .unwrap();
                let v = Rational::from_integer(sub.edge_count().into()) / k;
                if v > best {
                    best = v;
                }
            }
        }
        best
    }

    #[test]
    fn induced_ratio_examples() {
        let k22 = BipartiteGraph::from_adjacency(2, &[&[0, 1], &[0, 1]]).unwrap();
        assert_eq!(induced_oracle(&k22), int(4));
        assert_eq!(induced_ratio_max(&k22).unwrap().value, int(4));
        for n in 1..=5 {
            let m = matching(n);
            assert_eq!(induced_oracle(&m), int(2 * n as i64));
            assert_eq!(induced_ratio_max(&m).unwrap().value, int(2 * n as i64));
        }
        let g = samples::graph();
        assert_eq!(induced_ratio_max(&g).unwrap().value, induced_oracle(&g));
    }

    proptest::proptest! {
        #[test]
        fn h_sandwich(a in 1u64..200, b in 1u64..200) {
            let h = h_ratio(a, b).unwrap();
            let m = int(a.min(b) as i64);
            proptest::prop_assert!(h <= m);
            proptest::prop_assert!(m <= h * int(2));
        }

        #[test]
        fn kappa_equals_all_biclique_maximum(rows in proptest::collection::vec(0u8..16, 1..5)) {
            let adj: Vec<Vec<usize>> = rows.iter().map(|r| (0..4).filter(|j| r >> j & 1 == 1).collect()).collect();
            let refs: Vec<&[usize]> = adj.iter().map(|r| r.as_slice()).collect();
            let g = BipartiteGraph::from_adjacency(4, &refs).unwrap();
            if g.edge_count() > 0 {
                let brute = enumerate_bicliques(&g, false).unwrap().iter()
                    .map(|k| h_ratio(k.a().len() as u64, k.b().len() as u64).unwrap())
                    .max().unwrap();
                proptest::prop_assert_eq!(kappa(&g).unwrap(), brute);
            }
        }
    }
}
