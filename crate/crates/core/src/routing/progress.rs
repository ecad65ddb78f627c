//! Expected per-hop progress as a function of the sector angle.
//!
//! Nodes form a planar PPP. The forwarder reaches the n-th nearest node of
//! its sector (opening φ, radius r′). That node's bearing is uniform on
//! `[-φ/2, φ/2]` independently of its distance, so
//!
//! ```text
//! E(φ) = (2/φ) sin(φ/2) · E[R̃_n ; R̃_n ≤ r′]
//! ```
//!
//! where R̃_n follows the thinned law with intensity λφ/2π. An empty sector
//! contributes no progress.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use statrs::function::gamma::{gamma_lr, ln_gamma};

use crate::error::{Error, Result};
use crate::model::{DistanceLaw, SectorParams};
use crate::rng::{self, McEstimate};

fn check(law: &DistanceLaw, sp: &SectorParams) -> Result<()> {
    law.validate()?;
    sp.validate()?;
    if law.dim != 2 {
        return Err(Error::domain("expected progress is defined for planar processes"));
    }
    Ok(())
}

/// Closed form `(2/φ) sin(φ/2) a^(-1/2) Γ(n+½)/Γ(n) P(n+½, a r′²)` with
/// `a = λφ/2`.
pub fn expected_progress_analytic(law: &DistanceLaw, sp: &SectorParams) -> Result<f64> {
    check(law, sp)?;
    let phi = sp.phi;
    let n = law.neighbor_order as f64;
    let a = law.lambda * phi / 2.0;
    let bearing = 2.0 / phi * (phi / 2.0).sin();
    let truncated = gamma_lr(n + 0.5, a * sp.scan_radius * sp.scan_radius);
    Ok(bearing * a.powf(-0.5) * (ln_gamma(n + 0.5) - ln_gamma(n)).exp() * truncated)
}

/// Mean projection of the sector's n-th nearest node onto the axis, from a
/// PPP sampled over the full disk of radius r′ and filtered by bearing.
pub fn expected_progress_mc(law: &DistanceLaw, sp: &SectorParams, seed: u64, trials: u64) -> Result<McEstimate> {
    check(law, sp)?;
    if trials < 2 {
        return Err(Error::domain("expected_progress_mc needs at least two trials"));
    }
    let r = sp.scan_radius;
    let mean = law.lambda * std::f64::consts::PI * r * r;
    let poisson = Poisson::new(mean).map_err(|e| Error::Numeric(format!("poisson mean {mean}: {e}")))?;
    let n = law.neighbor_order as usize;
    let half = 0.5 * sp.phi;
    let (estimate, std_error) = rng::mean_and_stderr(seed, trials, |rng| {
        let count = poisson.sample(rng) as usize;
        let mut in_sector: Vec<(f64, f64)> = Vec::new();
        for _ in 0..count {
            let dist = r * rng.random::<f64>().sqrt();
            let bearing = std::f64::consts::PI * (2.0 * rng.random::<f64>() - 1.0);
            if bearing.abs() <= half {
                in_sector.push((dist, bearing));
            }
        }
        if in_sector.len() < n {
            return 0.0;
        }
        in_sector.select_nth_unstable_by(n - 1, |p, q| p.0.total_cmp(&q.0));
        let (dist, bearing) = in_sector[n - 1];
        dist * bearing.cos()
    });
    Ok(McEstimate {
        estimate,
        std_error,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn sector(phi: f64, r: f64) -> SectorParams {
        SectorParams { phi, scan_radius: r }
    }

    #[test]
    fn vanishes_for_narrow_sector() {
        let law = DistanceLaw::planar(1e-3, 1);
        let e = expected_progress_analytic(&law, &sector(1e-9, 60.0)).unwrap();
        assert!(e < 1e-3);
    }

    #[test]
    fn full_thinning_limit() {
        // Dense process, narrow sector: the nearest in-sector node is almost
        // surely inside r′, so E → E[R̃₁] = (a)^(-1/2) Γ(3/2).
        let law = DistanceLaw::planar(10.0, 1);
        let sp = sector(0.05, 60.0);
        let e = expected_progress_analytic(&law, &sp).unwrap();
        let a: f64 = 10.0 * 0.05 / 2.0;
        let mean = a.powf(-0.5) * PI.sqrt() / 2.0;
        assert!((e / mean - 1.0).abs() < 1e-3);
        let mc = expected_progress_mc(&law, &sector(0.05, 5.0), 1, 20_000).unwrap();
        assert!((mc.estimate / mean - 1.0).abs() < 0.03, "{} vs {mean}", mc.estimate);
    }

    #[test]
    fn analytic_matches_mc() {
        let law = DistanceLaw::planar(2e-3, 1);
        for phi in [PI / 4.0, 2.0 * PI / 3.0, PI, 1.5 * PI] {
            let sp = sector(phi, 30.0);
            let a = expected_progress_analytic(&law, &sp).unwrap();
            let mc = expected_progress_mc(&law, &sp, 7, 200_000).unwrap();
            assert!((mc.estimate / a - 1.0).abs() < 0.03, "φ={phi}: {a} vs {}", mc.estimate);
        }
    }

    #[test]
    fn mc_deterministic() {
        let law = DistanceLaw::planar(2e-3, 2);
        let sp = sector(PI / 2.0, 40.0);
        assert_eq!(
            expected_progress_mc(&law, &sp, 3, 5_000).unwrap(),
            expected_progress_mc(&law, &sp, 3, 5_000).unwrap()
        );
    }

    #[test]
    fn unimodal_in_phi() {
        let law = DistanceLaw::planar(2.4e-5, 1);
        let r = (4.0 / (2.4e-5 * PI)).sqrt();
        let values: Vec<f64> = (1..=64)
            .map(|i| expected_progress_analytic(&law, &sector(2.0 * PI * i as f64 / 64.0, r)).unwrap())
            .collect();
        let signs: Vec<bool> = values.windows(2).map(|w| w[1] > w[0]).collect();
        let changes = signs.windows(2).filter(|s| s[0] != s[1]).count();
        assert_eq!(changes, 1);
    }
}
