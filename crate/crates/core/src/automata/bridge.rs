use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{Nfa, Transition, TwoLetterLanguage};
use crate::biclique::{validate_cover, Biclique, BicliqueCover};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::rectifier::{fresh_label, realizes, RectifierNetwork};

/// The graph with an edge `(a, b)` for every word `ab`.
pub fn graph_of(l: &TwoLetterLanguage) -> Result<BipartiteGraph> {
    let words: Vec<(String, String)> = l.words.iter().cloned().collect();
    BipartiteGraph::from_label_edges(l.first.clone(), l.second.clone(), &words)
}

pub fn language_of(g: &BipartiteGraph) -> Result<TwoLetterLanguage> {
    let words = g.edges().map(|(i, j)| (g.a_labels()[i].clone(), g.b_labels()[j].clone()));
    TwoLetterLanguage::new(g.a_labels().to_vec(), g.b_labels().to_vec(), words)
}

fn alphabet(l: &TwoLetterLanguage) -> Vec<String> {
    l.first.iter().chain(&l.second).cloned().collect()
}

/// States are `q0`, the network vertices and `qf`. Each `a` moves from
/// `q0` to vertex `a` reading `a`, each `b` moves from vertex `b` to `qf`
/// reading `b`, and network edges become epsilon moves.
pub fn nfa_from_network(r: &RectifierNetwork, l: &TwoLetterLanguage) -> Result<Nfa> {
    let g = graph_of(l)?;
    realizes(r, &g)?.into_result().map_err(|e| Error::domain(e.to_string()))?;
    let taken: HashSet<String> = r.labels().iter().cloned().collect();
    let q0 = fresh_label("q0".into(), &taken);
    let mut taken2 = taken;
    taken2.insert(q0.clone());
    let qf = fresh_label("qf".into(), &taken2);
    let n = r.vertex_count();
    let mut states = vec![q0];
    states.extend(r.labels().iter().cloned());
    states.push(qf);
    let (start, fin) = (0, n + 1);
    let mut ts: Vec<Transition> = r.edges().map(|(u, v)| (u + 1, None, v + 1)).collect();
    for (s, a) in l.first.iter().enumerate() {
        let v = r.index(a).expect("realization checked");
        ts.push((start, Some(s), v + 1));
    }
    for (s, b) in l.second.iter().enumerate() {
        let v = r.index(b).expect("realization checked");
        ts.push((v + 1, Some(l.first.len() + s), fin));
    }
    Nfa::new(states, alphabet(l), ts, start, [fin])
}

/// The layered epsilon-free automaton with one middle state `p_i` per
/// biclique `K_i`: `q0 -a-> p_i` for `a` in `A_i` and `p_i -b-> qf` for `b`
/// in `B_i`.
pub fn nfa_from_cover(c: &BicliqueCover, l: &TwoLetterLanguage) -> Result<Nfa> {
    let g = graph_of(l)?;
    validate_cover(&g, c).map_err(|e| Error::domain(e.to_string()))?;
    let middles: Vec<String> = (1..=c.len()).map(|i| format!("p{i}")).collect();
    let taken: HashSet<String> = middles.iter().cloned().collect();
    let mut states = vec![fresh_label("q0".into(), &taken)];
    states.extend(middles);
    states.push(fresh_label("qf".into(), &taken));
    let fin = states.len() - 1;
    // Graph indices and language symbols share their order.
    let sym_a = |i: usize| l.first.iter().position(|x| *x == g.a_labels()[i]).expect("same labels");
    let sym_b = |j: usize| l.first.len() + l.second.iter().position(|x| *x == g.b_labels()[j]).expect("same labels");
    let mut ts = Vec::new();
    for (k, bc) in c.bicliques().iter().enumerate() {
        ts.extend(bc.a().iter().map(|&i| (0, Some(sym_a(i)), k + 1)));
        ts.extend(bc.b().iter().map(|&j| (k + 1, Some(sym_b(j)), fin)));
    }
    Nfa::new(states, alphabet(l), ts, 0, [fin])
}

/// A cover read back from a layered automaton, with the graph it covers.
#[derive(Clone, Debug)]
pub struct ExtractedCover {
    pub language: TwoLetterLanguage,
    pub graph: BipartiteGraph,
    pub cover: BicliqueCover,
}

/// Reads `{A(p) x B(p)}` off the middle states of an epsilon-free, trim,
/// three-layer automaton with a single accepting state.
pub fn cover_from_nfa(m: &Nfa) -> Result<ExtractedCover> {
    if !m.is_epsilon_free() {
        return Err(Error::domain("automaton is not epsilon-free"));
    }
    if m.accepting.len() != 1 {
        return Err(Error::domain(format!("automaton has {} accepting states, expected one", m.accepting.len())));
    }
    let fin = *m.accepting.iter().next().expect("one accepting state");
    let (fwd, back) = (m.reachable(), m.coreachable());
    if let Some(p) = (0..m.states.len()).find(|&p| !fwd[p] || !back[p]) {
        return Err(Error::domain(format!("automaton is not trim: state {:?} is useless", m.states[p])));
    }
    let mut layer = vec![usize::MAX; m.states.len()];
    layer[m.start] = 0;
    let mut changed = true;
    while changed {
        changed = false;
        for &(p, _, q) in &m.transitions {
            if layer[p] != usize::MAX && layer[q] == usize::MAX {
                layer[q] = layer[p] + 1;
                changed = true;
            }
        }
    }
    let layered = m.transitions.iter().all(|&(p, _, q)| layer[q] == layer[p] + 1)
        && layer.iter().all(|&x| x <= 2)
        && layer[fin] == 2
        && layer.iter().enumerate().all(|(p, &x)| x != 2 || p == fin);
    if !layered {
        return Err(Error::domain("automaton is not layered as start, middle, accepting"));
    }
    let mut a_of: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut b_of: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(p, s, q) in &m.transitions {
        let s = s.expect("epsilon-free");
        if p == m.start {
            a_of.entry(q).or_default().insert(s);
        } else {
            b_of.entry(p).or_default().insert(s);
        }
    }
    let first: BTreeSet<usize> = a_of.values().flatten().copied().collect();
    let second: BTreeSet<usize> = b_of.values().flatten().copied().collect();
    if let Some(&s) = first.intersection(&second).next() {
        return Err(Error::domain(format!("symbol {:?} is read in both layers", m.alphabet[s])));
    }
    let name = |s: &usize| m.alphabet[*s].clone();
    let mut words = BTreeSet::new();
    for (p, a_set) in &a_of {
        for a in a_set {
            for b in &b_of[p] {
                words.insert((name(a), name(b)));
            }
        }
    }
    let language = TwoLetterLanguage::new(first.iter().map(name).collect(), second.iter().map(name).collect(), words)?;
    let graph = graph_of(&language)?;
    let bicliques = a_of
        .iter()
        .map(|(p, a_set)| {
            Biclique::new(
                a_set.iter().map(|s| graph.a_index(&name(s)).expect("symbol in graph")),
                b_of[p].iter().map(|s| graph.b_index(&name(s)).expect("symbol in graph")),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtractedCover { language, graph, cover: BicliqueCover::new(bicliques) })
}
