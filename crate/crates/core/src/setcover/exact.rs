use super::{CoverSolution, SetCoverInstance, MAX_SETS};
use crate::error::{Error, Result};
use crate::setcover::greedy;

/// Largest universe accepted by [`exact_opt`].
pub const MAX_EXACT_UNIVERSE: usize = 24;

/// Default node budget for the branch and bound.
pub const DEFAULT_NODES: u64 = 1 << 26;

/// Minimum cost cover by branch and bound.
pub fn exact_opt(inst: &SetCoverInstance) -> Result<CoverSolution> {
    exact_opt_with(inst, DEFAULT_NODES)
}

/// Branches on the uncovered element with the fewest covering sets. A node
/// is cut when its cost plus `sum_e min_{S ∋ e} c(S)/|S ∩ U|` over the
/// uncovered elements `U` cannot beat the incumbent, which starts as the
/// greedy solution.
pub fn exact_opt_with(inst: &SetCoverInstance, max_nodes: u64) -> Result<CoverSolution> {
    let n = inst.len();
    if n > MAX_EXACT_UNIVERSE {
        return Err(Error::limit("universe size for exact set cover", MAX_EXACT_UNIVERSE as u64));
    }
    if inst.sets.len() > MAX_SETS {
        return Err(Error::limit("number of sets for exact set cover", MAX_SETS as u64));
    }
    let scaled = inst.scaled()?;
    let m = (1..=n.max(1) as u128).fold(1u128, |l, k| l / gcd(l, k) * k);
    let costs: Vec<u128> = scaled.costs.iter().map(|&c| u128::from(c) * m).collect();
    let masks = inst.masks();
    let mut containing = vec![Vec::new(); n];
    for (i, &mask) in masks.iter().enumerate() {
        for (e, list) in containing.iter_mut().enumerate() {
            if mask >> e & 1 == 1 {
                list.push(i);
            }
        }
    }
    let start = greedy(inst)?;
    let mut search = Search {
        masks: &masks,
        costs: &costs,
        containing: &containing,
        best: start.chosen.iter().map(|&i| costs[i]).sum(),
        best_sets: start.chosen.clone(),
        stack: Vec::new(),
        nodes: 0,
        max_nodes,
        ratio: vec![0; n],
    };
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    search.run(full, 0)?;
    Ok(CoverSolution::new(inst, search.best_sets))
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

struct Search<'a> {
    masks: &'a [u32],
    costs: &'a [u128],
    containing: &'a [Vec<usize>],
    best: u128,
    best_sets: Vec<usize>,
    stack: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    ratio: Vec<u128>,
}

impl Search<'_> {
    fn bound(&mut self, open: u32) -> u128 {
        let mut rest = open;
        while rest != 0 {
            self.ratio[rest.trailing_zeros() as usize] = u128::MAX;
            rest &= rest - 1;
        }
        for (&mask, &c) in self.masks.iter().zip(self.costs) {
            let hit = mask & open;
            if hit == 0 {
                continue;
            }
            let r = c / u128::from(hit.count_ones());
            let mut rest = hit;
            while rest != 0 {
                let e = rest.trailing_zeros() as usize;
                self.ratio[e] = self.ratio[e].min(r);
                rest &= rest - 1;
            }
        }
        let mut sum = 0;
        let mut rest = open;
        while rest != 0 {
            sum += self.ratio[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        sum
    }

    fn run(&mut self, open: u32, cost: u128) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::limit("branch and bound nodes", self.max_nodes));
        }
        if open == 0 {
            if cost < self.best {
                self.best = cost;
                self.best_sets = self.stack.clone();
            }
            return Ok(());
        }
        if cost + self.bound(open) >= self.best {
            return Ok(());
        }
        let mut pivot = usize::MAX;
        let mut fewest = usize::MAX;
        let mut rest = open;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            let k = self.containing[e].len();
            if k < fewest {
                (pivot, fewest) = (e, k);
            }
            rest &= rest - 1;
        }
        let mut options: Vec<(usize, u128)> = self.containing[pivot]
            .iter()
            .map(|&i| (i, self.costs[i] / u128::from((self.masks[i] & open).count_ones())))
            .collect();
        options.sort_by_key(|&(i, r)| (r, i));
        for (i, _) in options {
            self.stack.push(i);
            self.run(open & !self.masks[i], cost + self.costs[i])?;
            self.stack.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::rational::{int, ratio, Rational};
    use crate::setcover::tests::{brute_opt, pair};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let sol = exact_opt(&pair()).unwrap();
        assert_eq!((sol.chosen.as_slice(), sol.total_cost), (&[2][..], ratio(3, 2)));
        let dup = SetCoverInstance::numbered(1, vec![(vec![0], int(2)), (vec![0], int(1))]).unwrap();
        assert_eq!(exact_opt(&dup).unwrap().total_cost, int(1));
    }

    #[test]
    fn guards() {
        let big = SetCoverInstance::numbered(25, vec![((0..25).collect(), int(1))]).unwrap();
        assert!(matches!(exact_opt(&big), Err(Error::ResourceLimit { .. })));
        let inst = SetCoverInstance::numbered(
            5,
            vec![(vec![0, 1, 2, 3], int(6)), (vec![0, 1, 4], int(5)), (vec![2, 3, 4], int(5))],
        )
        .unwrap();
        assert_eq!(exact_opt_with(&inst, 10).unwrap().total_cost, int(10));
        assert!(matches!(exact_opt_with(&inst, 1), Err(Error::ResourceLimit { .. })));
    }

    pub(crate) fn instance_strategy() -> impl Strategy<Value = SetCoverInstance> {
        (1usize..=8)
            .prop_flat_map(|n| {
                let set = (1u32..1 << n, 1i64..12, 1i64..5);
                (Just(n), prop::collection::vec(set, 1..=9))
            })
            .prop_map(|(n, raw)| {
                let mut sets: Vec<(Vec<usize>, Rational)> = raw
                    .into_iter()
                    .map(|(m, p, q)| ((0..n).filter(|e| m >> e & 1 == 1).collect(), ratio(p, q)))
                    .collect();
                sets.push(((0..n).collect(), int(40)));
                SetCoverInstance::numbered(n, sets).unwrap()
            })
    }

    proptest! {
        #[test]
        fn matches_enumeration(inst in instance_strategy()) {
            let sol = exact_opt(&inst).unwrap();
            prop_assert!(inst.is_cover(&sol.chosen));
            prop_assert_eq!(&sol.total_cost, &brute_opt(&inst));
            prop_assert!(crate::setcover::greedy(&inst).unwrap().total_cost >= sol.total_cost);
        }
    }
}
