use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;

use super::MAX_DIMENSION;
use crate::biclique::{Biclique, BicliqueCover};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::rectifier::RectifierNetwork;

/// A vector in `{0,1}^len`. Position `i` (1-based) is bit `i - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    bits: u32,
    len: usize,
}

impl BitVector {
    pub fn new(bits: u32, len: usize) -> Result<Self> {
        if len > 32 || (len < 32 && bits >> len != 0) {
            return Err(Error::domain(format!("{bits:#b} does not fit in {len} bits")));
        }
        Ok(BitVector { bits, len })
    }

    /// Parses a string of `0`/`1` characters, first character = position 1.
    pub fn parse(s: &str) -> Result<Self> {
        if s.len() > 32 {
            return Err(Error::Parse(format!("bit vector {s:?} is too long")));
        }
        let mut bits = 0u32;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::Parse(format!("{s:?} is not a bit string"))),
            }
        }
        Ok(BitVector { bits, len: s.len() })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    /// Coordinate `i` of the result is coordinate `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<BitVector> {
        let mut seen = vec![false; self.len];
        if perm.len() != self.len || perm.iter().any(|&p| p >= self.len || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::domain("not a permutation of the coordinates"));
        }
        let bits = perm
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &p)| acc | (u32::from(self.get(p)) << i));
        Ok(BitVector { bits, len: self.len })
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        (0..self.len).try_for_each(|i| f.write_str(if self.get(i) { "1" } else { "0" }))
    }
}

/// Counts `(c00, c01, c10, c11)` where `cab` is the number of positions
/// with `u_i = a` and `v_i = b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(pub [u8; 4]);

impl Signature {
    pub fn count(&self, a: bool, b: bool) -> u8 {
        self.0[2 * usize::from(a) + usize::from(b)]
    }

    pub fn dimension(&self) -> usize {
        self.0.iter().map(|&c| c as usize).sum()
    }

    fn of(u: u32, v: u32, d: usize) -> Signature {
        let mask = if d == 32 { u32::MAX } else { (1u32 << d) - 1 };
        let c11 = (u & v).count_ones();
        let c10 = (u & !v & mask).count_ones();
        let c01 = (!u & v & mask).count_ones();
        let c00 = d as u32 - c11 - c10 - c01;
        Signature([c00 as u8, c01 as u8, c10 as u8, c11 as u8])
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

pub fn signature(u: &BitVector, v: &BitVector) -> Result<Signature> {
    if u.len != v.len {
        return Err(Error::domain(format!("length mismatch: {} vs {}", u.len, v.len)));
    }
    Ok(Signature::of(u.bits, v.bits, u.len))
}

fn label(prefix: char, bits: u32, d: usize) -> String {
    let mut s = String::with_capacity(d + 1);
    s.push(prefix);
    s.extend((0..d).map(|i| if bits >> i & 1 == 1 { '1' } else { '0' }));
    s
}

/// A permutation invariant graph on `{0,1}^d`, given by the set of
/// signatures whose pairs are edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVectorGraphSpec {
    d: usize,
    signatures: BTreeSet<Signature>,
}

impl BitVectorGraphSpec {
    pub fn new(d: usize, signatures: impl IntoIterator<Item = Signature>) -> Result<Self> {
        if d == 0 || d > MAX_DIMENSION {
            return Err(Error::domain(format!("dimension {d} outside 1..={MAX_DIMENSION}")));
        }
        let signatures: BTreeSet<Signature> = signatures.into_iter().collect();
        if let Some(s) = signatures.iter().find(|s| s.dimension() != d) {
            return Err(Error::domain(format!("signature {s} does not sum to {d}")));
        }
        Ok(BitVectorGraphSpec { d, signatures })
    }

    /// Every signature of length `d`.
    pub fn all_signatures(d: usize) -> Vec<Signature> {
        let mut out = Vec::new();
        for c00 in 0..=d {
            for c01 in 0..=d - c00 {
                for c10 in 0..=d - c00 - c01 {
                    let c11 = d - c00 - c01 - c10;
                    out.push(Signature([c00 as u8, c01 as u8, c10 as u8, c11 as u8]));
                }
            }
        }
        out
    }

    /// Pairs with even inner product over GF(2).
    pub fn orthogonal(d: usize) -> Result<Self> {
        Self::new(d, Self::all_signatures(d).into_iter().filter(|s| s.0[3] % 2 == 0))
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn signatures(&self) -> &BTreeSet<Signature> {
        &self.signatures
    }

    /// A is labelled `a<bits>`, B is labelled `b<bits>`.
    pub fn graph(&self) -> Result<BipartiteGraph> {
        let d = self.d;
        let n = 1u32 << d;
        let a = (0..n).map(|u| label('a', u, d)).collect();
        let b = (0..n).map(|v| label('b', v, d)).collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if self.signatures.contains(&Signature::of(u, v, d)) {
                    edges.push((u as usize, v as usize));
                }
            }
        }
        BipartiteGraph::from_index_edges(a, b, edges)
    }
}

/// Decides whether `g`, read as a graph on `{0,1}^d` through its
/// `a<bits>`/`b<bits>` labels, is invariant under coordinate permutations.
/// Vertices missing from `g` count as isolated. Returns the signature set
/// when it is.
pub fn is_permutation_invariant(g: &BipartiteGraph) -> Result<Option<BitVectorGraphSpec>> {
    let parse = |l: &str, prefix: char| {
        l.strip_prefix(prefix)
            .ok_or_else(|| Error::domain(format!("label {l:?} lacks prefix {prefix:?}")))
            .and_then(|rest| BitVector::parse(rest).map_err(|e| Error::domain(e.to_string())))
    };
    let a = g.a_labels().iter().map(|l| parse(l, 'a')).collect::<Result<Vec<_>>>()?;
    let b = g.b_labels().iter().map(|l| parse(l, 'b')).collect::<Result<Vec<_>>>()?;
    let d = a.first().map(|v| v.len).ok_or_else(|| Error::domain("empty graph"))?;
    if d == 0 || d > MAX_DIMENSION || a.iter().chain(&b).any(|v| v.len != d) {
        return Err(Error::domain("labels must be bit vectors of one common length"));
    }
    let n = 1usize << d;
    let mut a_of = vec![None; n];
    for (i, v) in a.iter().enumerate() {
        a_of[v.bits as usize] = Some(i);
    }
    let mut b_of = vec![None; n];
    for (j, v) in b.iter().enumerate() {
        b_of[v.bits as usize] = Some(j);
    }
    let mut seen: HashMap<Signature, bool> = HashMap::new();
    for u in 0..n {
        for v in 0..n {
            let edge = matches!((a_of[u], b_of[v]), (Some(i), Some(j)) if g.has_edge(i, j));
            let sig = Signature::of(u as u32, v as u32, d);
            if *seen.entry(sig).or_insert(edge) != edge {
                return Ok(None);
            }
        }
    }
    let c = seen.into_iter().filter(|&(_, e)| e).map(|(s, _)| s);
    BitVectorGraphSpec::new(d, c).map(Some)
}

/// The layered network for a permutation invariant graph, pruned to
/// vertices lying on some source-to-sink path.
#[derive(Clone, Debug)]
pub struct PermNetwork {
    pub network: RectifierNetwork,
    /// `layers[l]` holds the network vertices `(w, f, l)`; layer 0 is the
    /// sources.
    pub layers: Vec<Vec<usize>>,
    /// Edge count of the construction before pruning.
    pub unpruned_size: u128,
    /// `2d(d+1)^4 2^d + (d+1)^4 2^d`.
    pub size_bound: u128,
}

type Counts = [u8; 4];

/// Builds the network whose layer-`l` vertices `(w, f, l)` record the
/// current word `w`, with its first `l` coordinates already rewritten, and
/// the counts `f` of rewrites so far. Step `l` rewrites coordinate `l + 1`
/// and bumps `f(a, b)`, where `a` is the original bit. A layer-`d` vertex
/// joins sink `b<w>` when `f` is an edge signature.
pub fn perm_invariant_network(spec: &BitVectorGraphSpec) -> Result<PermNetwork> {
    let d = spec.d;
    let n = 1u32 << d;
    let mut layer_nodes: Vec<Vec<(u32, Counts)>> = vec![(0..n).map(|u| (u, [0; 4])).collect()];
    let mut layer_edges: Vec<Vec<(usize, usize)>> = Vec::with_capacity(d);
    for l in 0..d {
        let mut index: HashMap<(u32, Counts), usize> = HashMap::new();
        let mut next = Vec::new();
        let mut edges = Vec::new();
        for (k, &(w, f)) in layer_nodes[l].iter().enumerate() {
            let a = (w >> l & 1) as usize;
            for b in 0..2usize {
                let w2 = (w & !(1 << l)) | ((b as u32) << l);
                let mut f2 = f;
                f2[2 * a + b] += 1;
                let id = *index.entry((w2, f2)).or_insert_with(|| {
                    next.push((w2, f2));
                    next.len() - 1
                });
                edges.push((k, id));
            }
        }
        layer_nodes.push(next);
        layer_edges.push(edges);
    }
    let mut alive: Vec<Vec<bool>> = layer_nodes.iter().map(|l| vec![false; l.len()]).collect();
    let mut sink_used = vec![false; n as usize];
    for (k, &(w, f)) in layer_nodes[d].iter().enumerate() {
        if spec.signatures.contains(&Signature(f)) {
            alive[d][k] = true;
            sink_used[w as usize] = true;
        }
    }
    for l in (0..d).rev() {
        for &(x, y) in &layer_edges[l] {
            if alive[l + 1][y] {
                alive[l][x] = true;
            }
        }
    }

    let mut labels = Vec::new();
    let mut ids: Vec<Vec<usize>> = Vec::with_capacity(d + 1);
    let mut layers = Vec::with_capacity(d + 1);
    for (l, nodes) in layer_nodes.iter().enumerate() {
        let mut map = vec![usize::MAX; nodes.len()];
        let mut members = Vec::new();
        for (k, &(w, f)) in nodes.iter().enumerate() {
            if alive[l][k] {
                map[k] = labels.len();
                members.push(labels.len());
                labels.push(if l == 0 {
                    label('a', w, d)
                } else {
                    format!("n{l}:{}:{}.{}.{}.{}", &label('w', w, d)[1..], f[0], f[1], f[2], f[3])
                });
            }
        }
        ids.push(map);
        layers.push(members);
    }
    let mut sink_id = vec![usize::MAX; n as usize];
    let mut sinks = Vec::new();
    for v in 0..n as usize {
        if sink_used[v] {
            sink_id[v] = labels.len();
            sinks.push(labels.len());
            labels.push(label('b', v as u32, d));
        }
    }
    let mut edges = Vec::new();
    for (l, es) in layer_edges.iter().enumerate() {
        for &(x, y) in es {
            if alive[l + 1][y] {
                edges.push((ids[l][x], ids[l + 1][y]));
            }
        }
    }
    for (k, &(w, _)) in layer_nodes[d].iter().enumerate() {
        if alive[d][k] {
            edges.push((ids[d][k], sink_id[w as usize]));
        }
    }
    let sources = layers[0].clone();
    let network = RectifierNetwork::new(labels, edges, sources, sinks)?;
    Ok(PermNetwork {
        network,
        layers,
        unpruned_size: unpruned_size(d, spec.signatures.len()),
        size_bound: size_bound(d),
    })
}

/// Edge count of the full product construction, counted by enumerating
/// count vectors in `{0..d}^4`.
fn unpruned_size(d: usize, signatures: usize) -> u128 {
    let half = 1u128 << (d - 1);
    let mut per_layer = 0u128;
    for a in 0..2 {
        for f0 in 0..=d {
            for f1 in 0..=d {
                for f2 in 0..=d {
                    for f3 in 0..=d {
                        let f = [f0, f1, f2, f3];
                        for b in 0..2 {
                            if f[2 * a + b] < d {
                                per_layer += half;
                            }
                        }
                    }
                }
            }
        }
    }
    d as u128 * per_layer + (1u128 << d) * signatures as u128
}

fn size_bound(d: usize) -> u128 {
    let p = (d as u128 + 1).pow(4) << d;
    2 * d as u128 * p + p
}

/// The cover `{A(x) x B(x)}` over the vertices `x` of the middle layer,
/// together with the weight bound `2^d (d+1)^4 (2^(d/2) + 2^(d/2) (d+1)^4)`.
pub fn midpoint_cut_cover(pn: &PermNetwork, g: &BipartiteGraph) -> Result<(BicliqueCover, u128)> {
    let d = pn.layers.len() - 1;
    let r = &pn.network;
    let to_reach = r.sink_reach();
    let from_reach = r.source_reach();
    let map = |positions: &[usize], look: &dyn Fn(&str) -> Option<usize>| -> Result<Vec<usize>> {
        positions
            .iter()
            .map(|&p| {
                look(&r.labels()[p]).ok_or_else(|| Error::domain(format!("{} is not a vertex of G", r.labels()[p])))
            })
            .collect()
    };
    let src = map(r.sources(), &|l| g.a_index(l))?;
    let snk = map(r.sinks(), &|l| g.b_index(l))?;
    let mut out = Vec::new();
    for &x in &pn.layers[d / 2] {
        let pick = |set: &FixedBitSet, to: &[usize]| set.ones().map(|k| to[k]).collect::<Vec<_>>();
        let a = pick(&from_reach[x], &src);
        let b = pick(&to_reach[x], &snk);
        if !a.is_empty() && !b.is_empty() {
            out.push(Biclique::new(a, b)?);
        }
    }
    let cover = BicliqueCover::new(out).dedup();
    crate::biclique::validate_cover(g, &cover).map_err(|e| Error::TheoremViolation(format!("midpoint cut: {e}")))?;
    let e = (d as u128 + 1).pow(4);
    let h = 1u128 << (d / 2);
    Ok((cover, (1u128 << d) * e * (h + h * e)))
}
