//! Nondeterministic finite automata over finite languages, two-letter
//! languages, and conversions between automata, bipartite graphs,
//! rectifier networks and biclique covers.

mod bridge;
mod epsilon;

pub use bridge::{cover_from_nfa, graph_of, language_of, nfa_from_cover, nfa_from_network, ExtractedCover};
pub use epsilon::eliminate_epsilon;

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::quote;

/// A transition `(from, symbol, to)`; `None` is an epsilon move.
pub type Transition = (usize, Option<usize>, usize);

/// A word as a sequence of symbol labels.
pub type Word = Vec<String>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    states: Vec<String>,
    alphabet: Vec<String>,
    transitions: BTreeSet<Transition>,
    start: usize,
    accepting: BTreeSet<usize>,
}

impl Nfa {
    pub fn new(
        states: Vec<String>,
        alphabet: Vec<String>,
        transitions: impl IntoIterator<Item = Transition>,
        start: usize,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let distinct = |v: &[String], what: &str| {
            let mut seen = HashSet::new();
            match v.iter().find(|s| !seen.insert(s.as_str())) {
                Some(d) => Err(Error::invalid(format!("duplicate {what} {d:?}"))),
                None => Ok(()),
            }
        };
        distinct(&states, "state")?;
        distinct(&alphabet, "symbol")?;
        if alphabet.iter().any(String::is_empty) {
            return Err(Error::invalid("the empty string is reserved for epsilon"));
        }
        let n = states.len();
        if start >= n {
            return Err(Error::invalid("start state out of range"));
        }
        let transitions: BTreeSet<Transition> = transitions.into_iter().collect();
        for &(p, s, q) in &transitions {
            if p >= n || q >= n || s.is_some_and(|s| s >= alphabet.len()) {
                return Err(Error::invalid(format!("transition ({p}, {s:?}, {q}) out of range")));
            }
        }
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        if accepting.iter().any(|&f| f >= n) {
            return Err(Error::invalid("accepting state out of range"));
        }
        Ok(Nfa { states, alphabet, transitions, start, accepting })
    }

    /// Builds an automaton from labels; `""` marks an epsilon move.
    pub fn from_labels(
        states: Vec<String>,
        alphabet: Vec<String>,
        transitions: &[(String, String, String)],
        start: &str,
        accepting: &[String],
    ) -> Result<Self> {
        let st: HashMap<&str, usize> = states.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let sy: HashMap<&str, usize> = alphabet.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let state = |l: &str| st.get(l).copied().ok_or_else(|| Error::invalid(format!("unknown state {l:?}")));
        let symbol = |l: &str| -> Result<Option<usize>> {
            if l.is_empty() {
                return Ok(None);
            }
            sy.get(l).copied().map(Some).ok_or_else(|| Error::invalid(format!("unknown symbol {l:?}")))
        };
        let ts = transitions
            .iter()
            .map(|(p, s, q)| Ok((state(p)?, symbol(s)?, state(q)?)))
            .collect::<Result<Vec<_>>>()?;
        let start = state(start)?;
        let accepting = accepting.iter().map(|f| state(f)).collect::<Result<Vec<_>>>()?;
        Self::new(states, alphabet, ts, start, accepting)
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn transitions(&self) -> &BTreeSet<Transition> {
        &self.transitions
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    /// Number of transitions.
    pub fn size(&self) -> usize {
        self.transitions.len()
    }

    pub fn is_epsilon_free(&self) -> bool {
        self.transitions.iter().all(|t| t.1.is_some())
    }

    fn successors(&self) -> Vec<Vec<(Option<usize>, usize)>> {
        let mut out = vec![Vec::new(); self.states.len()];
        for &(p, s, q) in &self.transitions {
            out[p].push((s, q));
        }
        out
    }

    /// States reachable from the start.
    pub(crate) fn reachable(&self) -> Vec<bool> {
        let succ = self.successors();
        let mut seen = vec![false; self.states.len()];
        let mut stack = vec![self.start];
        seen[self.start] = true;
        while let Some(p) = stack.pop() {
            for &(_, q) in &succ[p] {
                if !std::mem::replace(&mut seen[q], true) {
                    stack.push(q);
                }
            }
        }
        seen
    }

    /// States from which an accepting state is reachable.
    pub(crate) fn coreachable(&self) -> Vec<bool> {
        let mut pred = vec![Vec::new(); self.states.len()];
        for &(p, _, q) in &self.transitions {
            pred[q].push(p);
        }
        let mut seen = vec![false; self.states.len()];
        let mut stack: Vec<usize> = self.accepting.iter().copied().collect();
        for &f in &stack {
            seen[f] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &pred[q] {
                if !std::mem::replace(&mut seen[p], true) {
                    stack.push(p);
                }
            }
        }
        seen
    }

    fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.states.len();
        let mut indeg = vec![0usize; n];
        for &(_, _, q) in &self.transitions {
            indeg[q] += 1;
        }
        let succ = self.successors();
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for &(_, w) in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    /// The accepted language of an acyclic automaton.
    pub fn language_enumerate(&self) -> Result<BTreeSet<Word>> {
        let order = self
            .topological_order()
            .ok_or_else(|| Error::domain("automaton has a cycle; its language may be infinite"))?;
        let succ = self.successors();
        let mut words: Vec<Option<BTreeSet<Word>>> = vec![None; self.states.len()];
        for &p in order.iter().rev() {
            let mut here = BTreeSet::new();
            if self.accepting.contains(&p) {
                here.insert(Vec::new());
            }
            for &(s, q) in &succ[p] {
                for w in words[q].as_ref().expect("successors come later in the order") {
                    match s {
                        None => {
                            here.insert(w.clone());
                        }
                        Some(s) => {
                            let mut v = Vec::with_capacity(w.len() + 1);
                            v.push(self.alphabet[s].clone());
                            v.extend(w.iter().cloned());
                            here.insert(v);
                        }
                    }
                }
            }
            words[p] = Some(here);
        }
        Ok(words[self.start].take().unwrap_or_default())
    }

    pub fn to_json(&self) -> NfaJson {
        NfaJson {
            states: self.states.clone(),
            alphabet: self.alphabet.clone(),
            transitions: self
                .transitions
                .iter()
                .map(|&(p, s, q)| {
                    let sym = s.map_or_else(String::new, |s| self.alphabet[s].clone());
                    (self.states[p].clone(), sym, self.states[q].clone())
                })
                .collect(),
            start: self.states[self.start].clone(),
            accepting: self.accepting.iter().map(|&f| self.states[f].clone()).collect(),
        }
    }

    pub fn from_json(json: &NfaJson) -> Result<Self> {
        Self::from_labels(
            json.states.clone(),
            json.alphabet.clone(),
            &json.transitions,
            &json.start,
            &json.accepting,
        )
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph nfa {\n  rankdir=LR;\n  __start [shape=point];\n");
        for (i, l) in self.states.iter().enumerate() {
            let shape = if self.accepting.contains(&i) { "doublecircle" } else { "circle" };
            s += &format!("  {} [shape={shape}];\n", quote(l));
        }
        s += &format!("  __start -> {};\n", quote(&self.states[self.start]));
        for &(p, sym, q) in &self.transitions {
            let label = sym.map_or("ε", |x| self.alphabet[x].as_str());
            s += &format!("  {} -> {} [label={}];\n", quote(&self.states[p]), quote(&self.states[q]), quote(label));
        }
        s.push_str("}\n");
        s
    }
}

/// Whether two acyclic automata accept the same words.
pub fn equivalent(m1: &Nfa, m2: &Nfa) -> Result<bool> {
    Ok(m1.language_enumerate()? == m2.language_enumerate()?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NfaJson {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    pub transitions: Vec<(String, String, String)>,
    pub start: String,
    pub accepting: Vec<String>,
}

/// A finite set of words `ab` with `a` from the first alphabet and `b`
/// from the second, where every symbol occurs in some word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoLetterLanguage {
    first: Vec<String>,
    second: Vec<String>,
    words: BTreeSet<(String, String)>,
}

impl TwoLetterLanguage {
    pub fn new(first: Vec<String>, second: Vec<String>, words: impl IntoIterator<Item = (String, String)>) -> Result<Self> {
        let a: HashSet<&str> = first.iter().map(String::as_str).collect();
        let b: HashSet<&str> = second.iter().map(String::as_str).collect();
        if a.len() != first.len() || b.len() != second.len() {
            return Err(Error::invalid("alphabets contain duplicates"));
        }
        if let Some(x) = a.intersection(&b).next() {
            return Err(Error::domain(format!("symbol {x:?} is in both alphabets")));
        }
        if a.contains("") || b.contains("") {
            return Err(Error::invalid("the empty string is reserved for epsilon"));
        }
        let words: BTreeSet<(String, String)> = words.into_iter().collect();
        for (x, y) in &words {
            if !a.contains(x.as_str()) || !b.contains(y.as_str()) {
                return Err(Error::domain(format!("word {x}{y} is not in the first alphabet times the second")));
            }
        }
        let used_a: HashSet<&str> = words.iter().map(|(x, _)| x.as_str()).collect();
        let used_b: HashSet<&str> = words.iter().map(|(_, y)| y.as_str()).collect();
        if let Some(x) = first.iter().chain(&second).find(|x| !used_a.contains(x.as_str()) && !used_b.contains(x.as_str())) {
            return Err(Error::domain(format!("symbol {x:?} occurs in no word")));
        }
        Ok(TwoLetterLanguage { first, second, words })
    }

    pub fn first(&self) -> &[String] {
        &self.first
    }

    pub fn second(&self) -> &[String] {
        &self.second
    }

    pub fn words(&self) -> &BTreeSet<(String, String)> {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// The words as symbol sequences, for comparison with
    /// [`Nfa::language_enumerate`].
    pub fn word_set(&self) -> BTreeSet<Word> {
        self.words.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect()
    }

    pub fn to_json(&self) -> LanguageJson {
        LanguageJson {
            first: self.first.clone(),
            second: self.second.clone(),
            words: self.words.iter().cloned().collect(),
        }
    }

    pub fn from_json(json: &LanguageJson) -> Result<Self> {
        Self::new(json.first.clone(), json.second.clone(), json.words.iter().cloned())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LanguageJson {
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub words: Vec<(String, String)>,
}
