//! Weighted set cover with exact rational costs: greedy, exact optimum,
//! the LP relaxation, `eta`/`eta*`, and the reduction from biclique cover.

mod eta;
mod exact;
mod greedy;
mod lp;

pub use eta::{eta, eta_star, eta_star_sampled, EtaEstimate, MAX_ETA_UNIVERSE};
pub use exact::{exact_opt, exact_opt_with, MAX_EXACT_UNIVERSE};
pub use greedy::greedy;
pub use lp::{lp_relax, lp_solve, LpSolution};

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::biclique::{enumerate_bicliques_with, Biclique, BicliqueCover, DEFAULT_GUARD};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::rational::{self, harmonic, Rational};

/// Default limit on the number of sets for the exact solvers.
pub const MAX_SETS: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq)]
pub struct WeightedSet {
    members: Vec<usize>,
    cost: Rational,
}

impl WeightedSet {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn cost(&self) -> &Rational {
        &self.cost
    }
}

/// A universe of labelled elements and a family of positively weighted
/// subsets whose union is the whole universe.
#[derive(Clone, Debug, PartialEq)]
pub struct SetCoverInstance {
    universe: Vec<String>,
    sets: Vec<WeightedSet>,
}

impl SetCoverInstance {
    /// `sets` lists element indices and a cost per set.
    pub fn new(universe: Vec<String>, sets: Vec<(Vec<usize>, Rational)>) -> Result<Self> {
        let n = universe.len();
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = universe.iter().find(|l| !seen.insert(l.as_str())) {
            return Err(Error::invalid(format!("duplicate element {dup:?}")));
        }
        let mut covered = vec![false; n];
        let mut out = Vec::with_capacity(sets.len());
        for (idx, (mut members, cost)) in sets.into_iter().enumerate() {
            if !rational::is_positive(&cost) {
                return Err(Error::domain(format!("set {idx} has non-positive cost {}", rational::format(&cost))));
            }
            members.sort_unstable();
            members.dedup();
            if members.is_empty() {
                return Err(Error::domain(format!("set {idx} is empty")));
            }
            if let Some(&e) = members.iter().find(|&&e| e >= n) {
                return Err(Error::invalid(format!("set {idx} mentions element {e} outside the universe")));
            }
            for &e in &members {
                covered[e] = true;
            }
            out.push(WeightedSet { members, cost });
        }
        if let Some(e) = covered.iter().position(|&c| !c) {
            return Err(Error::domain(format!("element {:?} is in no set", universe[e])));
        }
        Ok(SetCoverInstance { universe, sets: out })
    }

    /// Element labels are `1..=n`.
    pub fn numbered(n: usize, sets: Vec<(Vec<usize>, Rational)>) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()).collect(), sets)
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.universe.len()
    }

    pub fn is_empty(&self) -> bool {
        self.universe.is_empty()
    }

    pub fn sets(&self) -> &[WeightedSet] {
        &self.sets
    }

    pub fn cost_of(&self, chosen: &[usize]) -> Rational {
        chosen.iter().map(|&i| self.sets[i].cost.clone()).sum()
    }

    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        let mut covered = vec![false; self.len()];
        for &i in chosen {
            if i >= self.sets.len() {
                return false;
            }
            for &e in &self.sets[i].members {
                covered[e] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }

    pub fn to_json(&self) -> InstanceJson {
        InstanceJson {
            universe: self.universe.iter().cloned().map(Label::Text).collect(),
            sets: self
                .sets
                .iter()
                .map(|s| SetJson {
                    members: s.members.iter().map(|&e| Label::Text(self.universe[e].clone())).collect(),
                    cost: s.cost.clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &InstanceJson) -> Result<Self> {
        let universe: Vec<String> = json.universe.iter().map(Label::text).collect();
        let pos: HashMap<&str, usize> = universe.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut sets = Vec::with_capacity(json.sets.len());
        for s in &json.sets {
            let members = s
                .members
                .iter()
                .map(|m| {
                    let t = m.text();
                    pos.get(t.as_str())
                        .copied()
                        .ok_or_else(|| Error::invalid(format!("member {t:?} is not in the universe")))
                })
                .collect::<Result<Vec<_>>>()?;
            sets.push((members, s.cost.clone()));
        }
        Self::new(universe, sets)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    /// Element bitmasks, for universes of at most 32 elements.
    fn masks(&self) -> Vec<u32> {
        debug_assert!(self.len() <= 32);
        self.sets.iter().map(|s| s.members.iter().fold(0u32, |m, &e| m | 1 << e)).collect()
    }

    /// Costs as integers over a common denominator.
    fn scaled(&self) -> Result<Scaled> {
        let denom = self
            .sets
            .iter()
            .fold(BigInt::one(), |l, s| l.lcm(s.cost.denom()));
        let costs = self
            .sets
            .iter()
            .map(|s| (s.cost.numer() * (&denom / s.cost.denom())).to_u64())
            .collect::<Option<Vec<u64>>>()
            .ok_or_else(|| Error::limit("scaled set costs (must fit in 64 bits)", u64::MAX))?;
        Ok(Scaled { costs, denom })
    }
}

struct Scaled {
    costs: Vec<u64>,
    denom: BigInt,
}

impl Scaled {
    fn to_rational(&self, value: u128, den: u128) -> Rational {
        Rational::new(BigInt::from(value), &self.denom * BigInt::from(den))
    }
}

/// An element label; numbers are accepted on input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Text(String),
    Number(serde_json::Number),
}

impl Label {
    fn text(&self) -> String {
        match self {
            Label::Text(s) => s.clone(),
            Label::Number(n) => n.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetJson {
    pub members: Vec<Label>,
    #[serde(with = "rational::serde_string")]
    pub cost: Rational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceJson {
    pub universe: Vec<Label>,
    pub sets: Vec<SetJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoverSolution {
    pub chosen: Vec<usize>,
    #[serde(with = "rational::serde_string")]
    pub total_cost: Rational,
}

impl CoverSolution {
    fn new(inst: &SetCoverInstance, mut chosen: Vec<usize>) -> Self {
        chosen.sort_unstable();
        let total_cost = inst.cost_of(&chosen);
        CoverSolution { chosen, total_cost }
    }
}

/// All quantities of the chain `eta* <= LP <= OPT <= greedy <= H_n eta*`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChainReport {
    pub n: usize,
    #[serde(with = "rational::serde_string")]
    pub eta_star: Rational,
    #[serde(with = "rational::serde_string")]
    pub lp: Rational,
    #[serde(with = "rational::serde_string")]
    pub opt: Rational,
    #[serde(with = "rational::serde_string")]
    pub greedy: Rational,
    #[serde(with = "rational::serde_string")]
    pub harmonic: Rational,
    #[serde(with = "rational::serde_string")]
    pub greedy_bound: Rational,
}

/// Computes every term of the chain and fails with
/// [`Error::TheoremViolation`] if any inequality is broken.
pub fn verify_chain(inst: &SetCoverInstance) -> Result<ChainReport> {
    let eta_star = eta_star(inst)?;
    let lp = lp_relax(inst)?;
    let opt = exact_opt(inst)?.total_cost;
    let greedy = greedy(inst)?.total_cost;
    let harmonic = harmonic(inst.len());
    let greedy_bound = &harmonic * &eta_star;
    let report = ChainReport { n: inst.len(), eta_star, lp, opt, greedy, harmonic, greedy_bound };
    let steps = [
        ("eta*", &report.eta_star, "LP", &report.lp),
        ("LP", &report.lp, "OPT", &report.opt),
        ("OPT", &report.opt, "greedy", &report.greedy),
        ("greedy", &report.greedy, "H_n eta*", &report.greedy_bound),
    ];
    for (ln, l, rn, r) in steps {
        if l > r {
            return Err(Error::TheoremViolation(format!(
                "{ln} = {} exceeds {rn} = {}",
                rational::format(l),
                rational::format(r)
            )));
        }
    }
    Ok(report)
}

/// The set cover instance whose universe is `E(G)` and whose sets are
/// bicliques of `G` weighted by vertex count.
#[derive(Clone, Debug)]
pub struct BicliqueInstance {
    pub instance: SetCoverInstance,
    pub bicliques: Vec<Biclique>,
    pub edges: Vec<(usize, usize)>,
}

impl BicliqueInstance {
    pub fn cover(&self, sol: &CoverSolution) -> BicliqueCover {
        BicliqueCover::new(sol.chosen.iter().map(|&i| self.bicliques[i].clone()).collect())
    }
}

/// Uses every biclique, not only the maximal ones, since a cheapest cover
/// may need small bicliques.
pub fn biclique_instance(g: &BipartiteGraph) -> Result<BicliqueInstance> {
    biclique_instance_with(g, false, DEFAULT_GUARD)
}

pub fn biclique_instance_with(g: &BipartiteGraph, maximal_only: bool, guard: u64) -> Result<BicliqueInstance> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let bicliques = enumerate_bicliques_with(g, maximal_only, guard)?;
    let universe = edges
        .iter()
        .map(|&(i, j)| format!("{}-{}", g.a_labels()[i], g.b_labels()[j]))
        .collect();
    let index = &index;
    let sets = bicliques
        .iter()
        .map(|k| {
            let members = k.a().iter().flat_map(|&i| k.b().iter().map(move |&j| index[&(i, j)])).collect();
            (members, rational::int(k.weight() as i64))
        })
        .collect();
    Ok(BicliqueInstance { instance: SetCoverInstance::new(universe, sets)?, bicliques, edges })
}
