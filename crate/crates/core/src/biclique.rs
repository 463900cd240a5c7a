//! Bicliques, biclique coverings, and exhaustive biclique enumeration.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;

/// Default budget for enumeration loops (candidate closures or subsets).
pub const DEFAULT_GUARD: u64 = 1 << 22;

/// A complete bipartite subgraph `K_{A', B'}` in canonical form: both
/// index lists sorted, deduplicated and nonempty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Biclique {
    a: Vec<usize>,
    b: Vec<usize>,
}

impl Biclique {
    pub fn new(a: impl IntoIterator<Item = usize>, b: impl IntoIterator<Item = usize>) -> Result<Self> {
        let a: Vec<usize> = a.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let b: Vec<usize> = b.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if a.is_empty() || b.is_empty() {
            return Err(Error::domain("a biclique needs nonempty sides"));
        }
        Ok(Biclique { a, b })
    }

    pub(crate) fn from_sets(a: &FixedBitSet, b: &FixedBitSet) -> Self {
        Biclique {
            a: a.ones().collect(),
            b: b.ones().collect(),
        }
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    /// `|A'| + |B'|`.
    pub fn weight(&self) -> u64 {
        (self.a.len() + self.b.len()) as u64
    }

    /// Number of edges `|A'| * |B'|`.
    pub fn edge_count(&self) -> usize {
        self.a.len() * self.b.len()
    }

    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        self.a.binary_search(&i).is_ok() && self.b.binary_search(&j).is_ok()
    }

    /// First pair of `A' x B'` missing from `g`, if any.
    pub fn missing_edge(&self, g: &BipartiteGraph) -> Option<(usize, usize)> {
        for &i in &self.a {
            if i >= g.a_len() {
                return Some((i, self.b[0]));
            }
            for &j in &self.b {
                if j >= g.b_len() || !g.has_edge(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_biclique_of(&self, g: &BipartiteGraph) -> bool {
        self.missing_edge(g).is_none()
    }

    /// Inclusion on both sides.
    pub fn is_contained_in(&self, other: &Biclique) -> bool {
        is_sorted_subset(&self.a, &other.a) && is_sorted_subset(&self.b, &other.b)
    }

    pub fn transpose(&self) -> Biclique {
        Biclique {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// A collection of bicliques. Its weight is the sum of member weights.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BicliqueCover {
    bicliques: Vec<Biclique>,
}

/// Wire form of one cover member, by vertex label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicliqueJson {
    pub a: Vec<String>,
    pub b: Vec<String>,
}

/// Wire form: `{"bicliques": [{"a": [...], "b": [...]}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub bicliques: Vec<BicliqueJson>,
}

impl BicliqueCover {
    pub fn new(bicliques: Vec<Biclique>) -> Self {
        BicliqueCover { bicliques }
    }

    pub fn bicliques(&self) -> &[Biclique] {
        &self.bicliques
    }

    pub fn len(&self) -> usize {
        self.bicliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bicliques.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.bicliques.iter().map(Biclique::weight).sum()
    }

    /// Set semantics: sorted, with duplicate members removed.
    pub fn dedup(mut self) -> Self {
        self.bicliques.sort();
        self.bicliques.dedup();
        self
    }

    /// Members as sorted label pairs, for order-insensitive comparison
    /// across differently indexed graphs.
    pub fn labeled(&self, g: &BipartiteGraph) -> Vec<(Vec<String>, Vec<String>)> {
        let mut out: Vec<_> = self
            .bicliques
            .iter()
            .map(|k| {
                let mut a: Vec<String> = k.a.iter().map(|&i| g.a_labels()[i].clone()).collect();
                let mut b: Vec<String> = k.b.iter().map(|&j| g.b_labels()[j].clone()).collect();
                a.sort();
                b.sort();
                (a, b)
            })
            .collect();
        out.sort();
        out
    }

    pub fn to_json(&self, g: &BipartiteGraph) -> CoverJson {
        CoverJson {
            bicliques: self
                .bicliques
                .iter()
                .map(|k| BicliqueJson {
                    a: k.a.iter().map(|&i| g.a_labels()[i].clone()).collect(),
                    b: k.b.iter().map(|&j| g.b_labels()[j].clone()).collect(),
                })
                .collect(),
        }
    }

    /// Resolves labels against `g`. Does not check coverage; see
    /// [`validate_cover`].
    pub fn from_json(g: &BipartiteGraph, json: &CoverJson) -> Result<Self> {
        let mut out = Vec::with_capacity(json.bicliques.len());
        for k in &json.bicliques {
            let a = k
                .a
                .iter()
                .map(|l| g.a_index(l).ok_or_else(|| Error::invalid(format!("{l:?} is not an A-vertex of the graph"))))
                .collect::<Result<Vec<_>>>()?;
            let b = k
                .b
                .iter()
                .map(|l| g.b_index(l).ok_or_else(|| Error::invalid(format!("{l:?} is not a B-vertex of the graph"))))
                .collect::<Result<Vec<_>>>()?;
            out.push(Biclique::new(a, b)?);
        }
        Ok(BicliqueCover::new(out))
    }
}

/// Checks that every member is a biclique of `g` and that every edge of
/// `g` lies in some member. Returns the cover weight.
pub fn validate_cover(g: &BipartiteGraph, c: &BicliqueCover) -> Result<u64> {
    let label = |i: usize, j: usize| {
        let a = g.a_labels().get(i).cloned().unwrap_or_else(|| format!("#{i}"));
        let b = g.b_labels().get(j).cloned().unwrap_or_else(|| format!("#{j}"));
        (a, b)
    };
    let mut covered = vec![FixedBitSet::with_capacity(g.b_len()); g.a_len()];
    for k in c.bicliques() {
        if let Some((i, j)) = k.missing_edge(g) {
            let (a, b) = label(i, j);
            return Err(Error::NotABiclique { a, b });
        }
        for &i in k.a() {
            for &j in k.b() {
                covered[i].insert(j);
            }
        }
    }
    if let Some((i, j)) = g.edges().find(|&(i, j)| !covered[i].contains(j)) {
        let (a, b) = label(i, j);
        return Err(Error::UncoveredEdge { a, b });
    }
    Ok(c.weight())
}

/// Both classes of `g` as neighbourhood tables, smaller class first.
/// Returns `(p_nbrs, q_nbrs, transposed)`.
fn oriented(g: &BipartiteGraph) -> (Vec<FixedBitSet>, Vec<FixedBitSet>, bool) {
    let a: Vec<_> = (0..g.a_len()).map(|i| g.a_neighbors(i).clone()).collect();
    let b: Vec<_> = (0..g.b_len()).map(|j| g.b_neighbors(j).clone()).collect();
    if g.a_len() <= g.b_len() {
        (a, b, false)
    } else {
        (b, a, true)
    }
}

fn common(nbrs: &[FixedBitSet], members: impl Iterator<Item = usize>, width: usize) -> FixedBitSet {
    let mut acc = FixedBitSet::with_capacity(width);
    acc.insert_range(..);
    for m in members {
        acc.intersect_with(&nbrs[m]);
    }
    acc
}

/// Lists bicliques of `g`. With `maximal_only`, exactly the
/// inclusion-maximal bicliques; otherwise every `(A', B')` with
/// `A' x B' ⊆ E`. Output is sorted in canonical order.
pub fn enumerate_bicliques(g: &BipartiteGraph, maximal_only: bool) -> Result<Vec<Biclique>> {
    enumerate_bicliques_with(g, maximal_only, DEFAULT_GUARD)
}

pub fn enumerate_bicliques_with(g: &BipartiteGraph, maximal_only: bool, guard: u64) -> Result<Vec<Biclique>> {
    if maximal_only {
        maximal_bicliques(g, guard)
    } else {
        all_bicliques(g, guard)
    }
}

/// Close-by-one enumeration of the closed subsets of the smaller class.
/// Each closed set `S` with nonempty common neighbourhood `N(S)` yields the
/// maximal biclique `(S, N(S))`; canonicity testing visits each closed set
/// once. `guard` bounds the number of closures computed.
fn maximal_bicliques(g: &BipartiteGraph, guard: u64) -> Result<Vec<Biclique>> {
    let (p_nbrs, q_nbrs, transposed) = oriented(g);
    let (p, q) = (p_nbrs.len(), q_nbrs.len());
    let mut out = Vec::new();
    if p == 0 {
        return Ok(out);
    }
    let mut budget = guard;

    struct Frame {
        extent: FixedBitSet,
        intent: FixedBitSet,
        next: usize,
    }
    let intent0 = common(&p_nbrs, std::iter::empty(), q);
    let extent0 = common(&q_nbrs, intent0.ones(), p);
    let intent0 = common(&p_nbrs, extent0.ones(), q);
    let mut stack = vec![Frame {
        extent: extent0,
        intent: intent0,
        next: 0,
    }];
    while let Some(frame) = stack.pop() {
        if frame.extent.count_ones(..) > 0 && frame.intent.count_ones(..) > 0 {
            out.push(Biclique::from_sets(&frame.extent, &frame.intent));
        }
        // Push children in reverse so that they pop in index order.
        let mut children = Vec::new();
        for j in frame.next..p {
            if frame.extent.contains(j) {
                continue;
            }
            if budget == 0 {
                return Err(Error::limit("maximal biclique closures", guard));
            }
            budget -= 1;
            let mut intent = frame.intent.clone();
            intent.intersect_with(&p_nbrs[j]);
            if intent.count_ones(..) == 0 {
                continue;
            }
            let extent = common(&q_nbrs, intent.ones(), p);
            let canonical = (0..j).all(|i| extent.contains(i) == frame.extent.contains(i));
            if canonical {
                children.push(Frame {
                    extent,
                    intent,
                    next: j + 1,
                });
            }
        }
        stack.extend(children.into_iter().rev());
    }
    finish(out, transposed)
}

fn finish(mut out: Vec<Biclique>, transposed: bool) -> Result<Vec<Biclique>> {
    if transposed {
        out = out.into_iter().map(|k| k.transpose()).collect();
    }
    out.sort();
    Ok(out)
}

/// Every biclique: for each nonempty subset `S` of the smaller class and
/// each nonempty `T ⊆ N(S)`, the pair `(S, T)`.
fn all_bicliques(g: &BipartiteGraph, guard: u64) -> Result<Vec<Biclique>> {
    let (p_nbrs, _, transposed) = oriented(g);
    let p = p_nbrs.len();
    let q = if transposed { g.a_len() } else { g.b_len() };
    let too_many = || Error::limit("biclique enumeration candidates", guard);
    if p >= 63 || (1u64 << p) > guard {
        return Err(too_many());
    }
    let mut budget = guard;
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << p) {
        let side: Vec<usize> = (0..p).filter(|&i| mask >> i & 1 == 1).collect();
        let nbrs: Vec<usize> = common(&p_nbrs, side.iter().copied(), q).ones().collect();
        if nbrs.is_empty() {
            continue;
        }
        let count = if nbrs.len() >= 63 { u64::MAX } else { (1u64 << nbrs.len()) - 1 };
        budget = budget.checked_sub(count).ok_or_else(too_many)?;
        for sub in 1u64..=count {
            let other = nbrs
                .iter()
                .enumerate()
                .filter(|&(k, _)| sub >> k & 1 == 1)
                .map(|(_, &j)| j);
            out.push(Biclique {
                a: side.clone(),
                b: other.collect(),
            });
        }
    }
    finish(out, transposed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    /// Subset-closure oracle: close every subset of A, keep the distinct
    /// closed pairs with nonempty sides.
    fn maximal_oracle(g: &BipartiteGraph) -> Vec<Biclique> {
        let mut found = BTreeSet::new();
        for mask in 1u32..(1 << g.a_len()) {
            let a: Vec<usize> = (0..g.a_len()).filter(|&i| mask >> i & 1 == 1).collect();
            let b: Vec<usize> = (0..g.b_len()).filter(|&j| a.iter().all(|&i| g.has_edge(i, j))).collect();
            if b.is_empty() {
                continue;
            }
            let closed: Vec<usize> = (0..g.a_len()).filter(|&i| b.iter().all(|&j| g.has_edge(i, j))).collect();
            found.insert(Biclique::new(closed, b).unwrap());
        }
        found.into_iter().collect()
    }

    #[test]
    fn complete_graph_has_one_maximal_biclique() {
        let g = BipartiteGraph::from_adjacency(2, &[&[0, 1], &[0, 1]]).unwrap();
        let max = enumerate_bicliques(&g, true).unwrap();
        assert_eq!(max, vec![Biclique::new([0, 1], [0, 1]).unwrap()]);
        assert_eq!(enumerate_bicliques(&g, false).unwrap().len(), 9);
    }

    #[test]
    fn matching_has_only_single_edges() {
        let g = BipartiteGraph::from_adjacency(2, &[&[0], &[1]]).unwrap();
        let max = enumerate_bicliques(&g, true).unwrap();
        assert_eq!(max, vec![Biclique::new([0], [0]).unwrap(), Biclique::new([1], [1]).unwrap()]);
    }

    #[test]
    fn sample_graph_maximal_bicliques_match_oracle() {
        let g = samples::graph();
        let max = enumerate_bicliques(&g, true).unwrap();
        assert_eq!(max, maximal_oracle(&g));
        // Frozen from the oracle.
        let expect: Vec<(Vec<usize>, Vec<usize>)> = vec![
            (vec![0, 2], vec![0, 1]),
            (vec![1, 2], vec![1, 2]),
            (vec![2], vec![0, 1, 2, 3, 4]),
            (vec![0, 1, 2], vec![1]),
            (vec![1, 2, 3, 4], vec![2]),
            (vec![2, 3, 4], vec![2, 3, 4]),
        ];
        let mut expect: Vec<Biclique> = expect.into_iter().map(|(a, b)| Biclique::new(a, b).unwrap()).collect();
        expect.sort();
        assert_eq!(max, expect);
    }

    #[test]
    fn all_bicliques_are_valid_and_unique() {
        let g = samples::graph();
        let all = enumerate_bicliques(&g, false).unwrap();
        let unique: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(unique.len(), all.len());
        assert!(all.iter().all(|k| k.is_biclique_of(&g)));
        let maximal = enumerate_bicliques(&g, true).unwrap();
        for k in &all {
            assert!(maximal.iter().any(|m| k.is_contained_in(m)));
        }
    }

    #[test]
    fn guard_is_enforced() {
        let g = samples::graph();
        assert!(matches!(
            enumerate_bicliques_with(&g, true, 2),
            Err(Error::ResourceLimit { .. })
        ));
        assert!(matches!(
            enumerate_bicliques_with(&g, false, 10),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn validate_cover_weights_and_witnesses() {
        let g = samples::graph();
        assert_eq!(validate_cover(&g, &samples::cover()).unwrap(), 13);

        let k22 = BipartiteGraph::from_adjacency(2, &[&[0, 1], &[0, 1]]).unwrap();
        let whole = BicliqueCover::new(vec![Biclique::new([0, 1], [0, 1]).unwrap()]);
        assert_eq!(validate_cover(&k22, &whole).unwrap(), 4);

        let m3 = BipartiteGraph::from_adjacency(3, &[&[0], &[1], &[2]]).unwrap();
        let singles = BicliqueCover::new((0..3).map(|i| Biclique::new([i], [i]).unwrap()).collect());
        assert_eq!(validate_cover(&m3, &singles).unwrap(), 6);

        let partial = BicliqueCover::new(vec![Biclique::new([0], [0]).unwrap()]);
        assert_eq!(
            validate_cover(&m3, &partial),
            Err(Error::UncoveredEdge { a: "a2".into(), b: "b2".into() })
        );
        let bogus = BicliqueCover::new(vec![Biclique::new([0, 1], [0]).unwrap()]);
        assert_eq!(
            validate_cover(&m3, &bogus),
            Err(Error::NotABiclique { a: "a2".into(), b: "b1".into() })
        );
    }

    #[test]
    fn cover_json_round_trip() {
        let g = samples::graph();
        let c = samples::cover();
        let json = c.to_json(&g);
        assert_eq!(BicliqueCover::from_json(&g, &json).unwrap(), c);
    }

    proptest::proptest! {
        #[test]
        fn maximal_enumeration_agrees_with_oracle(rows in proptest::collection::vec(0u8..32, 1..6)) {
            let adj: Vec<Vec<usize>> = rows.iter().map(|r| (0..5).filter(|j| r >> j & 1 == 1).collect()).collect();
            let refs: Vec<&[usize]> = adj.iter().map(|r| r.as_slice()).collect();
            let g = BipartiteGraph::from_adjacency(5, &refs).unwrap();
            let max = enumerate_bicliques(&g, true).unwrap();
            proptest::prop_assert_eq!(&max, &maximal_oracle(&g));
            // Pairwise incomparable, and none extends by a single vertex.
            for (x, k) in max.iter().enumerate() {
                for (y, m) in max.iter().enumerate() {
                    if x != y {
                        proptest::prop_assert!(!k.is_contained_in(m));
                    }
                }
                for i in 0..g.a_len() {
                    if k.a().binary_search(&i).is_err() {
                        proptest::prop_assert!(!k.b().iter().all(|&j| g.has_edge(i, j)));
                    }
                }
                for j in 0..g.b_len() {
                    if k.b().binary_search(&j).is_err() {
                        proptest::prop_assert!(!k.a().iter().all(|&i| g.has_edge(i, j)));
                    }
                }
            }
        }
    }
}
