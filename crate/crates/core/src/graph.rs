//! Bipartite graphs with labelled vertex classes.

use std::collections::{BTreeSet, HashMap, HashSet};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bipartite graph `(A, B, E)`.
///
/// Construction normalizes the graph: vertices with no incident edge are
/// removed (they affect neither measure) and their labels are kept in
/// [`BipartiteGraph::stripped`]. Indices always refer to the normalized
/// classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    a: Vec<String>,
    b: Vec<String>,
    a_pos: HashMap<String, usize>,
    b_pos: HashMap<String, usize>,
    a_nbrs: Vec<FixedBitSet>,
    b_nbrs: Vec<FixedBitSet>,
    edge_count: usize,
    stripped: Vec<String>,
}

/// Wire form: `{"a": [...], "b": [...], "edges": [[a, b], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub edges: Vec<(String, String)>,
}

fn check_labels(a: &[String], b: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for l in a.iter().chain(b) {
        if !seen.insert(l.as_str()) {
            return Err(Error::invalid(format!(
                "vertex label {l:?} is duplicated or shared between classes"
            )));
        }
    }
    Ok(())
}

impl BipartiteGraph {
    /// Builds a graph from class labels and `(a-index, b-index)` edges.
    pub fn from_index_edges(
        a: Vec<String>,
        b: Vec<String>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        check_labels(&a, &b)?;
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i >= a.len() || j >= b.len() {
                return Err(Error::invalid(format!("edge ({i}, {j}) out of range")));
            }
            set.insert((i, j));
        }
        let mut a_used = vec![false; a.len()];
        let mut b_used = vec![false; b.len()];
        for &(i, j) in &set {
            a_used[i] = true;
            b_used[j] = true;
        }
        let mut stripped = Vec::new();
        let mut remap = |labels: Vec<String>, used: &[bool]| {
            let mut map = vec![usize::MAX; labels.len()];
            let mut kept = Vec::new();
            for (idx, label) in labels.into_iter().enumerate() {
                if used[idx] {
                    map[idx] = kept.len();
                    kept.push(label);
                } else {
                    stripped.push(label);
                }
            }
            (kept, map)
        };
        let (a, a_map) = remap(a, &a_used);
        let (b, b_map) = remap(b, &b_used);
        let mut a_nbrs = vec![FixedBitSet::with_capacity(b.len()); a.len()];
        let mut b_nbrs = vec![FixedBitSet::with_capacity(a.len()); b.len()];
        for &(i, j) in &set {
            a_nbrs[a_map[i]].insert(b_map[j]);
            b_nbrs[b_map[j]].insert(a_map[i]);
        }
        let index = |labels: &[String]| {
            labels
                .iter()
                .enumerate()
                .map(|(i, l)| (l.clone(), i))
                .collect::<HashMap<_, _>>()
        };
        Ok(BipartiteGraph {
            a_pos: index(&a),
            b_pos: index(&b),
            a,
            b,
            a_nbrs,
            b_nbrs,
            edge_count: set.len(),
            stripped,
        })
    }

    /// Builds a graph from class labels and labelled edges.
    pub fn from_label_edges(a: Vec<String>, b: Vec<String>, edges: &[(String, String)]) -> Result<Self> {
        check_labels(&a, &b)?;
        let ai: HashMap<&str, usize> = a.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let bi: HashMap<&str, usize> = b.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut idx = Vec::with_capacity(edges.len());
        for (x, y) in edges {
            let i = *ai
                .get(x.as_str())
                .ok_or_else(|| Error::invalid(format!("edge endpoint {x:?} is not in class A")))?;
            let j = *bi
                .get(y.as_str())
                .ok_or_else(|| Error::invalid(format!("edge endpoint {y:?} is not in class B")))?;
            idx.push((i, j));
        }
        Self::from_index_edges(a, b, idx)
    }

    /// Convenience constructor for tests and generators: A is labelled
    /// `a1..`, B is labelled `b1..`, and `adj[i]` lists the zero-based
    /// B-neighbours of `a{i+1}`.
    pub fn from_adjacency(b_len: usize, adj: &[&[usize]]) -> Result<Self> {
        let a = (1..=adj.len()).map(|i| format!("a{i}")).collect();
        let b = (1..=b_len).map(|j| format!("b{j}")).collect();
        let edges = adj
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |&j| (i, j)));
        Self::from_index_edges(a, b, edges)
    }

    pub fn a_labels(&self) -> &[String] {
        &self.a
    }

    pub fn b_labels(&self) -> &[String] {
        &self.b
    }

    pub fn a_len(&self) -> usize {
        self.a.len()
    }

    pub fn b_len(&self) -> usize {
        self.b.len()
    }

    /// `|A| + |B|` after normalization.
    pub fn vertex_count(&self) -> usize {
        self.a.len() + self.b.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Labels removed as isolated vertices during construction.
    pub fn stripped(&self) -> &[String] {
        &self.stripped
    }

    pub fn a_index(&self, label: &str) -> Option<usize> {
        self.a_pos.get(label).copied()
    }

    pub fn b_index(&self, label: &str) -> Option<usize> {
        self.b_pos.get(label).copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.a_nbrs[i].contains(j)
    }

    /// B-neighbourhood of `a_i`.
    pub fn a_neighbors(&self, i: usize) -> &FixedBitSet {
        &self.a_nbrs[i]
    }

    /// A-neighbourhood of `b_j`.
    pub fn b_neighbors(&self, j: usize) -> &FixedBitSet {
        &self.b_nbrs[j]
    }

    /// Edges in lexicographic `(a, b)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.a_nbrs
            .iter()
            .enumerate()
            .flat_map(|(i, n)| n.ones().map(move |j| (i, j)))
    }

    /// The same graph with the roles of A and B exchanged.
    pub fn transpose(&self) -> BipartiteGraph {
        let edges: Vec<_> = self.edges().map(|(i, j)| (j, i)).collect();
        BipartiteGraph::from_index_edges(self.b.clone(), self.a.clone(), edges)
            .expect("transpose of a valid graph is valid")
    }

    /// Subgraph induced by the given A- and B-indices (normalized).
    pub fn induced(&self, a_keep: &FixedBitSet, b_keep: &FixedBitSet) -> BipartiteGraph {
        let a: Vec<usize> = a_keep.ones().collect();
        let b: Vec<usize> = b_keep.ones().collect();
        let bpos: HashMap<usize, usize> = b.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let mut edges = Vec::new();
        for (k, &i) in a.iter().enumerate() {
            for j in self.a_nbrs[i].ones() {
                if let Some(&l) = bpos.get(&j) {
                    edges.push((k, l));
                }
            }
        }
        BipartiteGraph::from_index_edges(
            a.iter().map(|&i| self.a[i].clone()).collect(),
            b.iter().map(|&j| self.b[j].clone()).collect(),
            edges,
        )
        .expect("induced subgraph of a valid graph is valid")
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            a: self.a.clone(),
            b: self.b.clone(),
            edges: self
                .edges()
                .map(|(i, j)| (self.a[i].clone(), self.b[j].clone()))
                .collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        Self::from_label_edges(json.a.clone(), json.b.clone(), &json.edges)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: GraphJson = serde_json::from_str(s)?;
        Self::from_json(&json)
    }

    /// Graphviz rendering: edges directed A to B, A ranked on the left.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n  rankdir=LR;\n");
        out.push_str(&rank_group(&self.a, "source"));
        out.push_str(&rank_group(&self.b, "sink"));
        for (i, j) in self.edges() {
            out.push_str(&format!("  {} -> {};\n", quote(&self.a[i]), quote(&self.b[j])));
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub(crate) fn rank_group(labels: &[String], rank: &str) -> String {
    let mut out = format!("  {{ rank={rank};");
    for l in labels {
        out.push(' ');
        out.push_str(&quote(l));
        out.push(';');
    }
    out.push_str(" }\n");
    out
}
