//! Distance from a typical point to its n-th neighbour in a Poisson point
//! process, plus the planar sector-restricted variant.
//!
//! With `x = λ v_m r^m`, R_n has the generalised Gamma law
//! `F(r) = P(n, x)` (regularised lower incomplete gamma) and density
//! `m x^n e^{-x} / (r Γ(n))`.

use rand::Rng;
use statrs::function::gamma::{gamma_lr, ln_gamma};

use crate::error::{Error, Result};
use crate::model::{DistanceLaw, SectorParams};
use crate::rng::{self, SimRng};

fn ball_measure(r: f64, law: &DistanceLaw) -> f64 {
    law.lambda * law.volume_coefficient() * r.powi(law.dim as i32)
}

pub fn distance_pdf(r: f64, law: &DistanceLaw) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain(format!("distance pdf needs r > 0, got {r}")));
    }
    let x = ball_measure(r, law);
    let n = law.neighbor_order as f64;
    let log_pdf = (law.dim as f64).ln() + n * x.ln() - x - r.ln() - ln_gamma(n);
    Ok(log_pdf.exp())
}

pub fn distance_cdf(r: f64, law: &DistanceLaw) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::domain(format!("distance cdf needs r >= 0, got {r}")));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    let x = ball_measure(r, law);
    if x.is_infinite() {
        return Ok(1.0);
    }
    Ok(gamma_lr(law.neighbor_order as f64, x))
}

/// `E[R_n] = (λ v_m)^(-1/m) Γ(n + 1/m) / Γ(n)`.
pub fn expected_nth_distance(law: &DistanceLaw) -> f64 {
    let m = law.dim as f64;
    let n = law.neighbor_order as f64;
    (law.lambda * law.volume_coefficient()).powf(-1.0 / m) * (ln_gamma(n + 1.0 / m) - ln_gamma(n)).exp()
}

/// Planar law for points restricted to a sector of opening `phi`: the
/// thinned process has intensity `λ φ / 2π`.
fn sector_law(law: &DistanceLaw, sp: &SectorParams) -> DistanceLaw {
    DistanceLaw {
        lambda: law.lambda * sp.phi / (2.0 * std::f64::consts::PI),
        dim: 2,
        neighbor_order: law.neighbor_order,
    }
}

fn check_sector_r(r: f64, sp: &SectorParams) -> Result<()> {
    sp.validate()?;
    if !(r >= 0.0) || r > sp.scan_radius {
        return Err(Error::domain(format!(
            "sector distance needs 0 <= r <= scan radius {}, got {r}",
            sp.scan_radius
        )));
    }
    Ok(())
}

/// CDF of the n-th nearest node inside a planar sector; for n = 1 this is
/// `1 - exp(-λ φ r² / 2)`.
pub fn sector_distance_cdf(r: f64, law: &DistanceLaw, sp: &SectorParams) -> Result<f64> {
    check_sector_r(r, sp)?;
    distance_cdf(r, &sector_law(law, sp))
}

pub fn sector_distance_pdf(r: f64, law: &DistanceLaw, sp: &SectorParams) -> Result<f64> {
    check_sector_r(r, sp)?;
    if r == 0.0 {
        return Ok(0.0);
    }
    distance_pdf(r, &sector_law(law, sp))
}

/// Draws the n-th neighbour distance of the origin from a sampled PPP.
///
/// Points are placed in successive shells until at least n are found; only
/// radial coordinates are needed, drawn as `R U^(1/m)` within each shell.
pub fn sample_nth_neighbor_distance(law: &DistanceLaw, rng: &mut SimRng) -> f64 {
    use rand_distr::{Distribution, Poisson};
    let n = law.neighbor_order as usize;
    let m = law.dim as i32;
    let unit = law.lambda * law.volume_coefficient();
    // Ball holding n + 8√n + 8 points on average.
    let target = n as f64 + 8.0 * (n as f64).sqrt() + 8.0;
    let mut outer = (target / unit).powf(1.0 / m as f64);
    let mut inner = 0.0f64;
    let mut dists: Vec<f64> = Vec::with_capacity(2 * target as usize);
    loop {
        let (lo, hi) = (inner.powi(m), outer.powi(m));
        let mean = unit * (hi - lo);
        let count = Poisson::new(mean).expect("positive mean").sample(rng) as usize;
        for _ in 0..count {
            let u: f64 = rng.random();
            dists.push((lo + u * (hi - lo)).powf(1.0 / m as f64));
        }
        if dists.len() >= n {
            break;
        }
        inner = outer;
        outer *= 2.0;
    }
    dists.select_nth_unstable_by(n - 1, f64::total_cmp);
    dists[n - 1]
}

pub fn nth_neighbor_samples(law: &DistanceLaw, seed: u64, count: u64) -> Vec<f64> {
    rng::collect_samples(seed, count, |rng| sample_nth_neighbor_distance(law, rng))
}

/// Two-sided Kolmogorov–Smirnov statistic of `samples` against `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter().enumerate().fold(0.0, |d: f64, (i, &x)| {
        let f = cdf(x);
        d.max(f - i as f64 / n).max((i + 1) as f64 / n - f)
    })
}
