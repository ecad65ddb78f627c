//! Collision probability under isotropic Gaussian trajectory divergence.
//!
//! The relative planar offset between two UAVs is modelled as a centred
//! Gaussian with per-axis standard deviation ξ. The collision law is
//! `exp(-r² / 2ξ²)`, the mass of offsets whose magnitude reaches the
//! encounter radius r, so it equals 1 at r = 0 and decays with separation.

use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::rng::{self, McEstimate};

pub fn collision_probability(r: f64, xi: f64) -> Result<f64> {
    if !(xi > 0.0) {
        return Err(Error::domain(format!("trajectory divergence must be > 0, got {xi}")));
    }
    if !(r >= 0.0) {
        return Err(Error::domain(format!("encounter radius must be >= 0, got {r}")));
    }
    Ok((-(r * r) / (2.0 * xi * xi)).exp())
}

/// Monte-Carlo estimate of the collision law: the fraction of sampled
/// Gaussian offsets whose magnitude is at least `r`.
pub fn collision_mc(r: f64, xi: f64, seed: u64, trials: u64) -> Result<McEstimate> {
    if !(xi > 0.0) {
        return Err(Error::domain(format!("trajectory divergence must be > 0, got {xi}")));
    }
    if !(r >= 0.0) {
        return Err(Error::domain(format!("encounter radius must be >= 0, got {r}")));
    }
    if trials == 0 {
        return Err(Error::domain("collision_mc needs at least one trial"));
    }
    let r2 = r * r;
    let hits = rng::count_successes(seed, trials, |rng| {
        let x: f64 = StandardNormal.sample(rng);
        let y: f64 = StandardNormal.sample(rng);
        xi * xi * (x * x + y * y) >= r2
    });
    Ok(McEstimate::from_hits(hits, trials))
}

/// Smallest separation whose collision probability is at most `epsilon`:
/// `ξ √(-2 ln ε)`.
pub fn solve_r_min(xi: f64, epsilon: f64) -> Result<f64> {
    if !(xi > 0.0) {
        return Err(Error::domain(format!("trajectory divergence must be > 0, got {xi}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain(format!("epsilon must be in (0, 1), got {epsilon}")));
    }
    Ok(xi * (-2.0 * epsilon.ln()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(collision_probability(0.0, 2.0).unwrap(), 1.0);
        let half = 3.0 * (2.0 * 2f64.ln()).sqrt();
        assert!((collision_probability(half, 3.0).unwrap() - 0.5).abs() < 1e-15);
        let p = collision_probability(16.0, 1.5).unwrap();
        assert!((p.ln() + 256.0 / 4.5).abs() < 1e-12);
        assert!(p < 2e-25 && p > 1.8e-25);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(collision_probability(1.0, 0.0), Err(Error::Domain(_))));
        assert!(collision_probability(1.0, -1.0).is_err());
        assert!(collision_probability(-1.0, 1.0).is_err());
        assert!(solve_r_min(1.0, 0.0).is_err());
        assert!(solve_r_min(1.0, 1.0).is_err());
    }

    #[test]
    fn r_min_examples() {
        let xi = 2.5;
        assert!((solve_r_min(xi, 0.5).unwrap() - xi * (2.0 * 2f64.ln()).sqrt()).abs() < 1e-14);
        assert!((solve_r_min(1.5, 1e-24).unwrap() - 15.77).abs() < 0.01);
        assert!((solve_r_min(0.8, 1e-24).unwrap() - 8.41).abs() < 0.01);
    }

    #[test]
    fn mc_far_and_median() {
        let far = collision_mc(10.0 * 2.0, 2.0, 1, 1_000_000).unwrap();
        assert!(far.estimate <= 1e-3);
        let r = 1.5 * (2.0 * 2f64.ln()).sqrt();
        let mid = collision_mc(r, 1.5, 2, 1_000_000).unwrap();
        assert!((mid.estimate - 0.5).abs() <= 0.0015);
        assert_eq!(collision_mc(0.0, 1.5, 3, 10_000).unwrap().estimate, 1.0);
    }

    #[test]
    fn mc_deterministic() {
        let a = collision_mc(3.0, 1.5, 9, 20_000).unwrap();
        let b = collision_mc(3.0, 1.5, 9, 20_000).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn r_min_round_trip(xi in 0.1..20.0f64, log_eps in -60.0..-0.01f64) {
            let eps = 10f64.powf(log_eps);
            let r = solve_r_min(xi, eps).unwrap();
            let p = collision_probability(r, xi).unwrap();
            prop_assert!((p / eps - 1.0).abs() < 1e-12);
        }

        #[test]
        fn monotone_in_r_and_xi(r in 0.0..20.0f64, dr in 0.01..10.0f64, xi in 1.0..10.0f64, dxi in 0.01..5.0f64) {
            let p = collision_probability(r + 0.5, xi).unwrap();
            prop_assert!(collision_probability(r + 0.5 + dr, xi).unwrap() < p);
            prop_assert!(collision_probability(r + 0.5, xi + dxi).unwrap() > p);
        }
    }
}
