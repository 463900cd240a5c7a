use std::collections::BTreeSet;

use super::{Nfa, Transition};

/// Removes epsilon moves: `p` gets every symbol move leaving its epsilon
/// closure, and becomes accepting when the closure meets an accepting
/// state. States that the removal cuts off from the start are dropped, so
/// an epsilon-free input comes back unchanged.
pub fn eliminate_epsilon(m: &Nfa) -> Nfa {
    let n = m.states.len();
    let mut eps = vec![Vec::new(); n];
    for &(p, s, q) in &m.transitions {
        if s.is_none() {
            eps[p].push(q);
        }
    }
    let closure = |p: usize| {
        let mut seen = vec![false; n];
        let mut stack = vec![p];
        seen[p] = true;
        while let Some(x) = stack.pop() {
            for &y in &eps[x] {
                if !std::mem::replace(&mut seen[y], true) {
                    stack.push(y);
                }
            }
        }
        seen
    };
    let mut transitions: BTreeSet<Transition> = BTreeSet::new();
    let mut accepting = BTreeSet::new();
    for p in 0..n {
        let cl = closure(p);
        if m.accepting.iter().any(|&f| cl[f]) {
            accepting.insert(p);
        }
        for &(x, s, q) in &m.transitions {
            if s.is_some() && cl[x] {
                transitions.insert((p, s, q));
            }
        }
    }
    let before = m.reachable();
    let mut out = Nfa {
        states: m.states.clone(),
        alphabet: m.alphabet.clone(),
        transitions,
        start: m.start,
        accepting,
    };
    let after = out.reachable();
    let keep: Vec<bool> = (0..n).map(|p| after[p] || !before[p]).collect();
    if keep.iter().all(|&k| k) {
        return out;
    }
    let mut map = vec![usize::MAX; n];
    let mut states = Vec::new();
    for p in 0..n {
        if keep[p] {
            map[p] = states.len();
            states.push(m.states[p].clone());
        }
    }
    out.transitions = out
        .transitions
        .iter()
        .filter(|t| keep[t.0] && keep[t.2])
        .map(|&(p, s, q)| (map[p], s, map[q]))
        .collect();
    out.accepting = out.accepting.iter().filter(|&&f| keep[f]).map(|&f| map[f]).collect();
    out.start = map[m.start];
    out.states = states;
    out
}
