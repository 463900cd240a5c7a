//! A small worked example: a 5+5 graph with 15 edges, a three-biclique
//! cover of weight 13, the corresponding 13-edge depth-2 network, and a
//! 12-edge network that uses jump edges.

use crate::biclique::{Biclique, BicliqueCover};
use crate::graph::BipartiteGraph;
use crate::rectifier::RectifierNetwork;

/// `a1:{b1,b2}, a2:{b2,b3}, a3:{b1..b5}, a4:{b3,b4,b5}, a5:{b3,b4,b5}`.
pub fn graph() -> BipartiteGraph {
    BipartiteGraph::from_adjacency(
        5,
        &[&[0, 1], &[1, 2], &[0, 1, 2, 3, 4], &[2, 3, 4], &[2, 3, 4]],
    )
    .expect("static sample")
}

/// `{a3,a4,a5}x{b3,b4,b5}`, `{a1,a3}x{b1,b2}`, `{a2}x{b2,b3}`.
pub fn cover() -> BicliqueCover {
    BicliqueCover::new(vec![
        Biclique::new([2, 3, 4], [2, 3, 4]).expect("static sample"),
        Biclique::new([0, 2], [0, 1]).expect("static sample"),
        Biclique::new([1], [1, 2]).expect("static sample"),
    ])
}

fn network(middles: &[&str], edges: &[(&str, &str)]) -> RectifierNetwork {
    let a: Vec<String> = (1..=5).map(|i| format!("a{i}")).collect();
    let b: Vec<String> = (1..=5).map(|i| format!("b{i}")).collect();
    let mut labels = a.clone();
    labels.extend(middles.iter().map(|m| m.to_string()));
    labels.extend(b.iter().cloned());
    let edges: Vec<(String, String)> = edges.iter().map(|(u, v)| (u.to_string(), v.to_string())).collect();
    RectifierNetwork::from_label_edges(labels, &edges, &a, &b).expect("static sample")
}

/// One middle vertex per member of [`cover`]; 13 edges.
pub fn depth2_network() -> RectifierNetwork {
    network(
        &["m1", "m2", "m3"],
        &[
            ("a1", "m1"),
            ("a3", "m1"),
            ("m1", "b1"),
            ("m1", "b2"),
            ("a2", "m2"),
            ("m2", "b2"),
            ("m2", "b3"),
            ("a3", "m3"),
            ("a4", "m3"),
            ("a5", "m3"),
            ("m3", "b3"),
            ("m3", "b4"),
            ("m3", "b5"),
        ],
    )
}

/// Jump edges for the top rows and one middle vertex for the
/// `{a3,a4,a5}x{b3,b4,b5}` block; 12 edges.
pub fn compact_network() -> RectifierNetwork {
    network(
        &["m"],
        &[
            ("a1", "b1"),
            ("a3", "b1"),
            ("a1", "b2"),
            ("a3", "b2"),
            ("a2", "b3"),
            ("a2", "b2"),
            ("a3", "m"),
            ("a4", "m"),
            ("a5", "m"),
            ("m", "b3"),
            ("m", "b4"),
            ("m", "b5"),
        ],
    )
}
