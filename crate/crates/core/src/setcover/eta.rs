use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::SetCoverInstance;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Largest universe for which [`eta_star`] enumerates every subset.
pub const MAX_ETA_UNIVERSE: usize = 20;

/// `min_S c(S) / |S ∩ B|` over the sets meeting `b`.
pub fn eta(inst: &SetCoverInstance, b: &[usize]) -> Result<Rational> {
    if b.is_empty() {
        return Err(Error::domain("eta needs a nonempty subset"));
    }
    let mut inside = vec![false; inst.len()];
    for &e in b {
        *inside
            .get_mut(e)
            .ok_or_else(|| Error::invalid(format!("element {e} outside the universe")))? = true;
    }
    inst.sets
        .iter()
        .filter_map(|s| {
            let k = s.members.iter().filter(|&&e| inside[e]).count();
            (k > 0).then(|| &s.cost / rational::int(k as i64))
        })
        .min()
        .ok_or_else(|| Error::domain("no set meets the subset"))
}

/// `max_B |B| eta(B)` over nonempty `B`, by enumerating subsets in order of
/// size. The inner minimum over sets stops as soon as it drops to the
/// incumbent.
pub fn eta_star(inst: &SetCoverInstance) -> Result<Rational> {
    let n = inst.len();
    if n > MAX_ETA_UNIVERSE {
        return Err(Error::limit("universe size for exact eta*", MAX_ETA_UNIVERSE as u64));
    }
    let scaled = inst.scaled()?;
    let masks = inst.masks();
    let costs: Vec<u128> = scaled.costs.iter().map(|&c| u128::from(c)).collect();
    // The incumbent is the fraction best_p / best_q.
    let (mut best_p, mut best_q) = (0u128, 1u128);
    for size in 1..=n {
        let size_w = size as u128;
        let mut b: u32 = (1 << size) - 1;
        while b < 1 << n {
            let (mut p, mut q) = (0u128, 0u128);
            for (&mask, &c) in masks.iter().zip(&costs) {
                let k = (mask & b).count_ones();
                if k == 0 {
                    continue;
                }
                let (cp, cq) = (c * size_w, u128::from(k));
                if q == 0 || cp * q < p * cq {
                    (p, q) = (cp, cq);
                    if p * best_q <= best_p * q {
                        break;
                    }
                }
            }
            if p * best_q > best_p * q {
                (best_p, best_q) = (p, q);
            }
            let low = b & b.wrapping_neg();
            let ripple = b + low;
            b = (((ripple ^ b) >> 2) / low) | ripple;
        }
    }
    Ok(scaled.to_rational(best_p, best_q))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EtaEstimate {
    #[serde(with = "rational::serde_string")]
    pub value: Rational,
    pub exact: bool,
    pub samples: u64,
}

/// A lower estimate of `eta*` from the full universe, every singleton, and
/// `samples` random subsets drawn from a ChaCha8 stream.
pub fn eta_star_sampled(inst: &SetCoverInstance, samples: u64, seed: u64) -> Result<EtaEstimate> {
    let n = inst.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let score = |b: &[usize]| -> Result<Rational> { Ok(eta(inst, b)? * rational::int(b.len() as i64)) };
    let mut best = score(&(0..n).collect::<Vec<_>>())?;
    for e in 0..n {
        best = best.max(score(&[e])?);
    }
    for _ in 0..samples {
        let b: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !b.is_empty() {
            best = best.max(score(&b)?);
        }
    }
    Ok(EtaEstimate { value: best, exact: false, samples })
}
