use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::SetCoverInstance;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Largest dense tableau, in entries, that [`lp_solve`] will build.
pub const MAX_TABLEAU: usize = 1 << 22;

/// An optimal primal/dual pair for the covering LP
/// `min c·x, sum_{S ∋ e} x_S >= 1, x >= 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LpSolution {
    #[serde(with = "rational::serde_string")]
    pub value: Rational,
    /// One weight per set.
    #[serde(serialize_with = "rational_vec")]
    pub primal: Vec<Rational>,
    /// One price per element.
    #[serde(serialize_with = "rational_vec")]
    pub dual: Vec<Rational>,
}

fn rational_vec<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational::format))
}

pub fn lp_relax(inst: &SetCoverInstance) -> Result<Rational> {
    lp_solve(inst).map(|s| s.value)
}

/// Solves the packing dual `max sum y, sum_{e ∈ S} y_e <= c(S), y >= 0`
/// with an exact tableau simplex and Bland's rule. The slack basis is
/// feasible because all costs are positive, and the primal weights are read
/// off the slack reduced costs. Both solutions are checked before returning.
pub fn lp_solve(inst: &SetCoverInstance) -> Result<LpSolution> {
    let n = inst.len();
    let t = inst.sets.len();
    let width = n + t + 1;
    if t.saturating_mul(width) > MAX_TABLEAU {
        return Err(Error::limit("LP tableau entries", MAX_TABLEAU as u64));
    }
    let zero = Rational::zero();
    let mut rows: Vec<Vec<Rational>> = inst
        .sets
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let mut row = vec![zero.clone(); width];
            for &e in &s.members {
                row[e] = Rational::one();
            }
            row[n + i] = Rational::one();
            row[width - 1] = s.cost.clone();
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + t).collect();
    let mut reduced: Vec<Rational> = (0..width - 1).map(|j| if j < n { Rational::one() } else { zero.clone() }).collect();
    let mut value = zero.clone();

    while let Some(col) = reduced.iter().position(|r| r.is_positive()) {
        let mut pivot: Option<(usize, Rational)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !row[col].is_positive() {
                continue;
            }
            let q = &row[width - 1] / &row[col];
            let better = match &pivot {
                None => true,
                Some((p, best)) => q < *best || (q == *best && basis[i] < basis[*p]),
            };
            if better {
                pivot = Some((i, q));
            }
        }
        let (p, _) = pivot.ok_or_else(|| Error::TheoremViolation("covering LP dual is unbounded".into()))?;
        let inv = rows[p][col].recip();
        for x in rows[p].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let prow = std::mem::take(&mut rows[p]);
        for (i, row) in rows.iter_mut().enumerate() {
            if i == p || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let f = reduced[col].clone();
        for (x, y) in reduced.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        value += &f * &prow[width - 1];
        rows[p] = prow;
        basis[p] = col;
    }

    let mut dual = vec![zero.clone(); n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            dual[b] = rows[i][width - 1].clone();
        }
    }
    let primal: Vec<Rational> = (0..t).map(|i| -&reduced[n + i]).collect();
    let sol = LpSolution { value, primal, dual };
    check(inst, &sol)?;
    Ok(sol)
}

fn check(inst: &SetCoverInstance, sol: &LpSolution) -> Result<()> {
    let fail = |what: &str| Err(Error::TheoremViolation(format!("LP certificate: {what}")));
    if sol.primal.iter().chain(&sol.dual).any(|x| x.is_negative()) {
        return fail("negative variable");
    }
    let mut load = vec![Rational::zero(); inst.len()];
    let mut primal_value = Rational::zero();
    for (s, x) in inst.sets.iter().zip(&sol.primal) {
        let used: Rational = s.members.iter().map(|&e| sol.dual[e].clone()).sum();
        if used > s.cost {
            return fail("dual constraint violated");
        }
        for &e in &s.members {
            load[e] += x;
        }
        primal_value += &s.cost * x;
    }
    if load.iter().any(|l| *l < Rational::one()) {
        return fail("element covered less than once");
    }
    let dual_value: Rational = sol.dual.iter().cloned().sum();
    if primal_value != sol.value || dual_value != sol.value {
        return fail("objective values disagree");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::setcover::exact::tests::instance_strategy;
    use crate::setcover::tests::{brute_opt, pair, triangle};
    use crate::setcover::{biclique_instance, eta_star};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(lp_relax(&pair()).unwrap(), ratio(3, 2));
        let single = SetCoverInstance::numbered(2, vec![(vec![0, 1], ratio(5, 7))]).unwrap();
        assert_eq!(lp_relax(&single).unwrap(), ratio(5, 7));
        let sol = lp_solve(&triangle()).unwrap();
        assert_eq!(sol.value, ratio(3, 2));
        assert_eq!(sol.primal, vec![ratio(1, 2); 3]);
        assert_eq!(sol.dual, vec![ratio(1, 2); 3]);
    }

    #[test]
    fn sample_graph() {
        let bi = biclique_instance(&crate::samples::graph()).unwrap();
        let lp = lp_relax(&bi.instance).unwrap();
        assert!(eta_star(&bi.instance).unwrap() <= lp);
        assert!(lp <= int(13));
    }

    proptest! {
        #[test]
        fn sandwiched(inst in instance_strategy()) {
            let lp = lp_relax(&inst).unwrap();
            prop_assert!(eta_star(&inst).unwrap() <= lp);
            prop_assert!(lp <= brute_opt(&inst));
        }
    }
}
