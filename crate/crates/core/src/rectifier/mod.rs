//! Rectifier networks: DAGs whose source-to-sink reachability realizes a
//! bipartite graph.

mod convert;
mod search;

pub use convert::{cover_to_depth2, cut_cover, depth2_to_cover, eligible_edge_cover, EdgeCut};
pub use search::{exact_rect_search, RectBudget, RectSearch};

use std::collections::{BTreeSet, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{quote, rank_group, BipartiteGraph};

/// A DAG with designated sources (class A) and sinks (class B).
///
/// Sources have indegree 0 and sinks outdegree 0. Size is the number of
/// edges, depth the length of a longest path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RectifierNetwork {
    labels: Vec<String>,
    pos: HashMap<String, usize>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    edge_count: usize,
    sources: Vec<usize>,
    sinks: Vec<usize>,
    topo: Vec<usize>,
}

/// Wire form: `{"vertices": [...], "edges": [[from, to], ...], "sources":
/// [...], "sinks": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetworkJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    pub sources: Vec<String>,
    pub sinks: Vec<String>,
}

impl RectifierNetwork {
    pub fn new(
        labels: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
        sources: Vec<usize>,
        sinks: Vec<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        let mut pos = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if pos.insert(l.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate vertex {l:?}")));
            }
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop on {:?}", labels[u])));
            }
            set.insert((u, v));
        }
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &set {
            out[u].push(v);
            inn[v].push(u);
        }
        let mut role = vec![0u8; n];
        for &s in &sources {
            if s >= n || role[s] != 0 {
                return Err(Error::invalid("sources must be distinct vertices"));
            }
            if !inn[s].is_empty() {
                return Err(Error::invalid(format!("source {:?} has incoming edges", labels[s])));
            }
            role[s] = 1;
        }
        for &t in &sinks {
            if t >= n || role[t] != 0 {
                return Err(Error::invalid("sinks must be distinct vertices, disjoint from sources"));
            }
            if !out[t].is_empty() {
                return Err(Error::invalid(format!("sink {:?} has outgoing edges", labels[t])));
            }
            role[t] = 2;
        }
        let topo = topological_order(&out, &inn)
            .ok_or_else(|| Error::invalid("network edges contain a cycle"))?;
        Ok(RectifierNetwork {
            labels,
            pos,
            out,
            inn,
            edge_count: set.len(),
            sources,
            sinks,
            topo,
        })
    }

    pub fn from_label_edges(
        labels: Vec<String>,
        edges: &[(String, String)],
        sources: &[String],
        sinks: &[String],
    ) -> Result<Self> {
        let pos: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let look = |l: &String| {
            pos.get(l.as_str())
                .copied()
                .ok_or_else(|| Error::invalid(format!("unknown vertex {l:?}")))
        };
        let edges = edges
            .iter()
            .map(|(u, v)| Ok((look(u)?, look(v)?)))
            .collect::<Result<Vec<_>>>()?;
        let sources = sources.iter().map(look).collect::<Result<Vec<_>>>()?;
        let sinks = sinks.iter().map(look).collect::<Result<Vec<_>>>()?;
        Self::new(labels, edges, sources, sinks)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.pos.get(label).copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn sinks(&self) -> &[usize] {
        &self.sinks
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].binary_search(&v).is_ok()
    }

    /// Edges in lexicographic order of endpoint indices.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out.iter().enumerate().flat_map(|(u, s)| s.iter().map(move |&v| (u, v)))
    }

    /// Vertices in a topological order.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// Length (in edges) of a longest path.
    pub fn depth(&self) -> usize {
        let mut len = vec![0usize; self.labels.len()];
        for &v in &self.topo {
            for &w in &self.out[v] {
                len[w] = len[w].max(len[v] + 1);
            }
        }
        len.into_iter().max().unwrap_or(0)
    }

    /// For every vertex, the positions (in [`Self::sinks`]) of the sinks it
    /// reaches, itself included when it is a sink.
    pub fn sink_reach(&self) -> Vec<FixedBitSet> {
        let mut reach = vec![FixedBitSet::with_capacity(self.sinks.len()); self.labels.len()];
        for (k, &t) in self.sinks.iter().enumerate() {
            reach[t].insert(k);
        }
        for &v in self.topo.iter().rev() {
            for &w in &self.out[v] {
                let (lo, hi) = reach.split_at_mut(v.max(w));
                let (dst, src) = if v < w { (&mut lo[v], &hi[0]) } else { (&mut hi[0], &lo[w]) };
                dst.union_with(src);
            }
        }
        reach
    }

    /// For every vertex, the positions (in [`Self::sources`]) of the
    /// sources reaching it, itself included when it is a source.
    pub fn source_reach(&self) -> Vec<FixedBitSet> {
        let mut reach = vec![FixedBitSet::with_capacity(self.sources.len()); self.labels.len()];
        for (k, &s) in self.sources.iter().enumerate() {
            reach[s].insert(k);
        }
        for &v in &self.topo {
            for &w in &self.out[v] {
                let (lo, hi) = reach.split_at_mut(v.max(w));
                let (dst, src) = if v < w { (&mut hi[0], &lo[v]) } else { (&mut lo[w], &hi[0]) };
                dst.union_with(src);
            }
        }
        reach
    }

    /// One path from `from` to `to` avoiding edges for which `blocked`
    /// returns true.
    pub fn path_avoiding(
        &self,
        from: usize,
        to: usize,
        blocked: impl Fn(usize, usize) -> bool,
    ) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.labels.len()];
        let mut seen = vec![false; self.labels.len()];
        let mut stack = vec![from];
        seen[from] = true;
        while let Some(v) = stack.pop() {
            if v == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = parent[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.out[v] {
                if !seen[w] && !blocked(v, w) {
                    seen[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        None
    }

    /// The bipartite graph realized by this network: sources as A, sinks
    /// as B, reachability as edges (normalized).
    pub fn realized_graph(&self) -> BipartiteGraph {
        let reach = self.sink_reach();
        let edges: Vec<_> = self
            .sources
            .iter()
            .enumerate()
            .flat_map(|(k, &s)| reach[s].ones().map(move |t| (k, t)))
            .collect();
        BipartiteGraph::from_index_edges(
            self.sources.iter().map(|&s| self.labels[s].clone()).collect(),
            self.sinks.iter().map(|&t| self.labels[t].clone()).collect(),
            edges,
        )
        .expect("sources and sinks are distinct vertices")
    }

    pub fn to_json(&self) -> NetworkJson {
        let name = |v: &usize| self.labels[*v].clone();
        NetworkJson {
            vertices: self.labels.clone(),
            edges: self.edges().map(|(u, v)| (name(&u), name(&v))).collect(),
            sources: self.sources.iter().map(name).collect(),
            sinks: self.sinks.iter().map(name).collect(),
        }
    }

    pub fn from_json(json: &NetworkJson) -> Result<Self> {
        Self::from_label_edges(json.vertices.clone(), &json.edges, &json.sources, &json.sinks)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: NetworkJson = serde_json::from_str(s)?;
        Self::from_json(&json)
    }

    /// Graphviz rendering, left to right with sources first.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph R {\n  rankdir=LR;\n");
        let names = |vs: &[usize]| vs.iter().map(|&v| self.labels[v].clone()).collect::<Vec<_>>();
        out.push_str(&rank_group(&names(&self.sources), "source"));
        out.push_str(&rank_group(&names(&self.sinks), "sink"));
        for (u, v) in self.edges() {
            out.push_str(&format!("  {} -> {};\n", quote(&self.labels[u]), quote(&self.labels[v])));
        }
        out.push_str("}\n");
        out
    }
}

fn topological_order(out: &[Vec<usize>], inn: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut indeg: Vec<usize> = inn.iter().map(Vec::len).collect();
    let mut ready: Vec<usize> = (0..out.len()).filter(|&v| indeg[v] == 0).rev().collect();
    let mut order = Vec::with_capacity(out.len());
    while let Some(v) = ready.pop() {
        order.push(v);
        for &w in out[v].iter().rev() {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.push(w);
            }
        }
    }
    (order.len() == out.len()).then_some(order)
}

/// Outcome of [`realizes`]; the mismatches carry a witness pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realization {
    Realized,
    /// `(a, b)` is an edge of the graph but `b` is unreachable from `a`.
    Missing { a: String, b: String },
    /// `b` is reachable from `a` but `(a, b)` is not an edge.
    Spurious { a: String, b: String },
}

impl Realization {
    pub fn is_realized(&self) -> bool {
        matches!(self, Realization::Realized)
    }

    pub(crate) fn into_result(self) -> Result<()> {
        match self {
            Realization::Realized => Ok(()),
            Realization::Missing { a, b } => Err(Error::Unrealized {
                source_label: a,
                sink: b,
                found: "unreachable",
                expected: "edge",
            }),
            Realization::Spurious { a, b } => Err(Error::Unrealized {
                source_label: a,
                sink: b,
                found: "reachable",
                expected: "no edge",
            }),
        }
    }
}

/// Position maps from network sources/sinks to graph indices. Every graph
/// vertex must be a source (A) or sink (B) of the network; extra network
/// sources and sinks count as isolated vertices.
pub(crate) struct LabelMatch {
    pub src_to_a: Vec<Option<usize>>,
    pub sink_to_b: Vec<Option<usize>>,
}

pub(crate) fn match_labels(r: &RectifierNetwork, g: &BipartiteGraph) -> Result<LabelMatch> {
    let src: HashSet<&str> = r.sources.iter().map(|&s| r.labels[s].as_str()).collect();
    let snk: HashSet<&str> = r.sinks.iter().map(|&t| r.labels[t].as_str()).collect();
    if let Some(l) = g.a_labels().iter().find(|l| !src.contains(l.as_str())) {
        return Err(Error::domain(format!("graph vertex {l:?} is not a source of the network")));
    }
    if let Some(l) = g.b_labels().iter().find(|l| !snk.contains(l.as_str())) {
        return Err(Error::domain(format!("graph vertex {l:?} is not a sink of the network")));
    }
    Ok(LabelMatch {
        src_to_a: r.sources.iter().map(|&s| g.a_index(&r.labels[s])).collect(),
        sink_to_b: r.sinks.iter().map(|&t| g.b_index(&r.labels[t])).collect(),
    })
}

/// Checks that `b` is reachable from `a` in `r` exactly when `(a, b)` is
/// an edge of `g`, reporting the first disagreement.
pub fn realizes(r: &RectifierNetwork, g: &BipartiteGraph) -> Result<Realization> {
    let m = match_labels(r, g)?;
    let reach = r.sink_reach();
    for (k, &s) in r.sources.iter().enumerate() {
        for (t, &sink) in r.sinks.iter().enumerate() {
            let expected = match (m.src_to_a[k], m.sink_to_b[t]) {
                (Some(i), Some(j)) => g.has_edge(i, j),
                _ => false,
            };
            let found = reach[s].contains(t);
            if found != expected {
                let a = r.labels[s].clone();
                let b = r.labels[sink].clone();
                return Ok(if expected {
                    Realization::Missing { a, b }
                } else {
                    Realization::Spurious { a, b }
                });
            }
        }
    }
    Ok(Realization::Realized)
}

/// A label not in `taken`, derived from `base`.
pub(crate) fn fresh_label(base: String, taken: &HashSet<String>) -> String {
    let mut l = base;
    while taken.contains(&l) {
        l.push('\'');
    }
    l
}
