//! Exponent bookkeeping for a graph with a known cover and network.

use num_traits::Zero;
use serde::Serialize;

use crate::biclique::{validate_cover, BicliqueCover};
use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::measures::cov_lower_bound_with;
use crate::rational::{self, Rational};
use crate::rectifier::{realizes, RectifierNetwork};

/// `beta = (delta + alpha r) / (r (1 + alpha))`.
pub fn beta_exponent(delta: &Rational, r: &Rational, alpha: &Rational) -> Result<Rational> {
    let den = r * (rational::one() + alpha);
    if den.is_zero() {
        return Err(Error::domain("beta is undefined for r = 0 or alpha = -1"));
    }
    Ok((delta + alpha * r) / den)
}

/// `1 + 1 / (1 + alpha)`.
pub fn beta_bound(alpha: &Rational) -> Rational {
    rational::one() + (rational::one() + alpha).recip()
}

/// Sizes and their logarithms base `n = |A| + |B|`. The logarithms are for
/// display; every check runs on the exact integers and rationals.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub edges: usize,
    #[serde(with = "rational::serde_string")]
    pub kappa: Rational,
    #[serde(with = "rational::serde_string")]
    pub cov_lower: Rational,
    #[serde(with = "rational::serde_string")]
    pub rect_lower: Rational,
    pub cov_upper: u64,
    pub rect_upper: u64,
    pub delta: f64,
    pub k: f64,
    /// Solves `cov_upper = |E| / kappa^alpha`; present when `kappa > 1` and
    /// `cov_upper < |E|`.
    pub alpha: Option<f64>,
    pub r: f64,
    pub beta: Option<f64>,
    pub beta_bound: Option<f64>,
}

impl BoundReport {
    /// Assembles the report from exact quantities, failing with
    /// [`Error::TheoremViolation`] if they contradict the lower bounds.
    pub fn from_values(
        n: usize,
        edges: usize,
        kappa: Rational,
        cov_upper: u64,
        rect_upper: u64,
    ) -> Result<BoundReport> {
        if n < 2 || edges == 0 || cov_upper == 0 || rect_upper == 0 {
            return Err(Error::domain("bound report needs a graph with at least one edge"));
        }
        let e = rational::int(edges as i64);
        let cov_lower = &e / &kappa;
        let rect_lower = &cov_lower / &kappa;
        if cov_lower > rational::int(cov_upper as i64) {
            return Err(Error::TheoremViolation(format!(
                "cover of weight {cov_upper} is below |E|/kappa = {}",
                rational::format(&cov_lower)
            )));
        }
        let ln_n = (n as f64).ln();
        let log = |x: f64| x.ln() / ln_n;
        let delta = log(edges as f64);
        let k = log(rational::to_f64(&kappa));
        let r = log(rect_upper as f64);
        let alpha_defined = kappa > rational::one() && (cov_upper as usize) < edges;
        let (alpha, beta, bound) = if alpha_defined {
            // beta <= 1 + 1/(1 + alpha) is equivalent to delta <= 2r.
            if (edges as u128) > u128::from(rect_upper) * u128::from(rect_upper) {
                return Err(Error::TheoremViolation(format!(
                    "|E| = {edges} exceeds the square of the network size {rect_upper}"
                )));
            }
            let alpha = ((edges as f64).ln() - (cov_upper as f64).ln()) / rational::to_f64(&kappa).ln();
            let beta = (delta + alpha * r) / (r * (1.0 + alpha));
            (Some(alpha), Some(beta), Some(1.0 + 1.0 / (1.0 + alpha)))
        } else {
            (None, None, None)
        };
        Ok(BoundReport {
            n,
            edges,
            kappa,
            cov_lower,
            rect_lower,
            cov_upper,
            rect_upper,
            delta,
            k,
            alpha,
            r,
            beta,
            beta_bound: bound,
        })
    }
}

/// Checks that `cover` covers `g` and `network` realizes it, then reports
/// on their sizes.
pub fn bound_report(
    g: &BipartiteGraph,
    network: &RectifierNetwork,
    cover: &BicliqueCover,
    guard: u64,
) -> Result<BoundReport> {
    let weight = validate_cover(g, cover)?;
    realizes(network, g)?.into_result()?;
    let bounds = cov_lower_bound_with(g, guard)?;
    let kappa = rational::int(g.edge_count() as i64) / &bounds.cov;
    BoundReport::from_values(g.vertex_count(), g.edge_count(), kappa, weight, network.size() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::samples;
    use proptest::prelude::*;

    #[test]
    fn beta_endpoint() {
        assert_eq!(beta_exponent(&int(2), &int(1), &int(1)).unwrap(), ratio(3, 2));
        assert_eq!(beta_bound(&int(1)), ratio(3, 2));
        assert!(beta_exponent(&int(2), &int(0), &int(1)).is_err());
    }

    #[test]
    fn sample_report() {
        let g = samples::graph();
        let rep = bound_report(&g, &samples::compact_network(), &samples::cover(), 1 << 20).unwrap();
        assert_eq!((rep.n, rep.edges, rep.cov_upper, rep.rect_upper), (10, 15, 13, 12));
        assert_eq!(rep.kappa, ratio(3, 2));
        assert_eq!(rep.cov_lower, int(10));
        assert_eq!(rep.rect_lower, ratio(20, 3));
        let (alpha, beta, bound) = (rep.alpha.unwrap(), rep.beta.unwrap(), rep.beta_bound.unwrap());
        assert!(alpha > 0.0 && alpha <= 1.0);
        assert!(beta <= bound);
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"kappa\":\"3/2\""));
    }

    #[test]
    fn alpha_absent_without_savings() {
        let m = crate::families::matching_graph(3).unwrap();
        let c = BicliqueCover::new(m.edges().map(|(i, j)| crate::biclique::Biclique::new([i], [j]).unwrap()).collect());
        let r = crate::rectifier::cover_to_depth2(&m, &c).unwrap();
        let rep = bound_report(&m, &r, &c, 1 << 20).unwrap();
        assert!(rep.alpha.is_none() && rep.beta.is_none());
    }

    #[test]
    fn impossible_values_rejected() {
        assert!(matches!(BoundReport::from_values(10, 15, ratio(3, 2), 9, 12), Err(Error::TheoremViolation(_))));
        // Below |E|/kappa^2 but above sqrt(|E|): reported, not rejected.
        assert!(BoundReport::from_values(10, 15, ratio(3, 2), 13, 4).is_ok());
        assert!(matches!(BoundReport::from_values(10, 15, ratio(3, 2), 13, 3), Err(Error::TheoremViolation(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn beta_within_bound(d in 0i64..=1000, r in 0i64..=1000, a in 1i64..=1000) {
            let delta = ratio(1000 + d, 1000);
            let r = ratio(1000 + r, 1000);
            let alpha = ratio(a, 1000);
            prop_assert!(beta_exponent(&delta, &r, &alpha).unwrap() <= beta_bound(&alpha));
        }
    }
}
