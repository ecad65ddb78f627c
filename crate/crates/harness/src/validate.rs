//! Cross-checks of every closed form against its sampling oracle.
//!
//! Each check reports a statistic and the tolerance it must stay under. The
//! output carries no timings, so a fixed seed gives byte-identical tables.

use std::f64::consts::PI;

use rayon::prelude::*;
use uavnet_core::collision::{collision_mc, collision_probability, solve_r_min};
use uavnet_core::coverage::CoverageModel;
use uavnet_core::deploy::{Role, UavNode};
use uavnet_core::distance::{distance_cdf, expected_nth_distance, ks_statistic, nth_neighbor_samples};
use uavnet_core::model::{CoverageParams, DistanceLaw, InterferenceGuard, NetworkConfig, SectorParams};
use uavnet_core::rng::{derive_seed, substream};
use uavnet_core::routing::progress::{expected_progress_analytic, expected_progress_mc};
use uavnet_core::routing::select_next_hop;
use uavnet_core::band::deduce_band;

use crate::error::Result;
use crate::figures::use_case;
use crate::output::format_num;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub statistic: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckOutcome {
    fn below(name: &str, statistic: f64, tolerance: f64) -> Self {
        CheckOutcome {
            name: name.into(),
            statistic,
            tolerance,
            passed: statistic <= tolerance,
        }
    }
}

/// Worst |closed form − MC| over r ∈ {1..60} × ξ ∈ {1.5, 3, 5}.
pub fn collision_check(seed: u64, trials: u64) -> Result<CheckOutcome> {
    let points: Vec<(f64, f64)> = [1.5, 3.0, 5.0]
        .iter()
        .flat_map(|&xi| (1..=60).map(move |r| (r as f64, xi)))
        .collect();
    let worst = points
        .par_iter()
        .enumerate()
        .map(|(i, &(r, xi))| -> Result<f64> {
            let mc = collision_mc(r, xi, derive_seed(seed, i as u64), trials)?;
            Ok((collision_probability(r, xi)? - mc.estimate).abs())
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(CheckOutcome::below("collision_closed_form_vs_mc", worst, 0.005))
}

/// R_min at ε = 1e-24 against the 15.8/31.5/52.6 m readings and the
/// inversion round trip.
pub fn rmin_checks() -> Result<Vec<CheckOutcome>> {
    let mut worst_reading: f64 = 0.0;
    let mut worst_trip: f64 = 0.0;
    for (xi, expected) in [(1.5, 15.8), (3.0, 31.5), (5.0, 52.6)] {
        let r = solve_r_min(xi, 1e-24)?;
        worst_reading = worst_reading.max((r - expected).abs());
        worst_trip = worst_trip.max((collision_probability(r, xi)? / 1e-24 - 1.0).abs());
    }
    Ok(vec![
        CheckOutcome::below("rmin_readings_abs_m", worst_reading, 0.05),
        CheckOutcome::below("rmin_round_trip_rel", worst_trip, 1e-12),
    ])
}

/// KS distance of 10⁵ sampled n-th neighbour distances (n = 1, 2, 3) and the
/// relative error of their mean.
pub fn distance_checks(seed: u64) -> Result<Vec<CheckOutcome>> {
    let mut worst_ks: f64 = 0.0;
    let mut worst_mean: f64 = 0.0;
    for n in 1..=3u32 {
        let law = DistanceLaw::planar(0.01, n);
        let samples = nth_neighbor_samples(&law, derive_seed(seed, n as u64), 100_000);
        let ks = ks_statistic(&samples, |r| distance_cdf(r, &law).unwrap_or(f64::NAN));
        worst_ks = worst_ks.max(ks);
        let mean = samples.iter().sum::<f64>() / samples.len() as f64;
        worst_mean = worst_mean.max((mean / expected_nth_distance(&law) - 1.0).abs());
    }
    Ok(vec![
        CheckOutcome::below("distance_ks", worst_ks, 0.01),
        CheckOutcome::below("distance_mean_rel", worst_mean, 0.01),
    ])
}

/// Scenario for the coverage cross-check: interferers beyond the serving
/// distance inside a 60 m disk.
pub fn cross_check_model(alpha: f64, delta: u32) -> Result<CoverageModel> {
    let params = CoverageParams {
        theta: 1.0,
        serving_r: 10.0,
        serving_h: 5.0,
        h_bar: 0.0,
        exclusion_radius: 0.0,
        net_radius: 60.0,
        quad_tol: 1e-8,
        guard: InterferenceGuard::NearestTransmitter,
    };
    Ok(CoverageModel::new(params, alpha, delta, 2e-3)?)
}

/// Radii of the coverage cross-check grid.
pub fn cross_check_radii() -> Vec<f64> {
    (1..=10).map(|i| 1.5 * i as f64).collect()
}

/// Worst |conditional − MC| over δ ∈ {1,2,3} × α ∈ {3.4, 4.2} × 10 radii.
pub fn coverage_check(seed: u64, trials: u64) -> Result<CheckOutcome> {
    let mut worst: f64 = 0.0;
    let mut index = 0u64;
    for delta in 1..=3 {
        for alpha in [3.4, 4.2] {
            let model = cross_check_model(alpha, delta)?;
            for r in cross_check_radii() {
                let analytic = model.coverage_conditional(r, 5.0)?;
                let mc = model.coverage_mc(r, 5.0, derive_seed(seed, index), trials)?;
                index += 1;
                worst = worst.max((analytic - mc.estimate).abs());
            }
        }
    }
    Ok(CheckOutcome::below("coverage_conditional_vs_mc", worst, 0.03))
}

/// Relative gap between each Laplace derivative L^(k) and the central finite
/// difference of L^(k-1), for k = 1, 2 at δ = 3, s = 5.
pub fn derivative_check() -> Result<CheckOutcome> {
    let params = CoverageParams {
        theta: 1.0,
        serving_r: 10.0,
        serving_h: 0.0,
        h_bar: 0.0,
        exclusion_radius: 1.0,
        net_radius: 1e4,
        quad_tol: 1e-10,
        guard: InterferenceGuard::Exclusion,
    };
    let model = CoverageModel::new(params, 4.0, 3, 1e-4)?;
    let w = model.interference_window(0.0);
    let (s, step) = (5.0, 1e-4);
    let d = model.laplace_derivatives(s, w, 2)?;
    let up = model.laplace_derivatives(s + step, w, 1)?;
    let dn = model.laplace_derivatives(s - step, w, 1)?;
    let mut worst: f64 = 0.0;
    for k in 1..=2 {
        let fd = (up[k - 1] - dn[k - 1]) / (2.0 * step);
        worst = worst.max((d[k] / fd - 1.0).abs());
    }
    Ok(CheckOutcome::below("laplace_derivative_vs_fd_rel", worst, 1e-4))
}

/// Monotonicity in r and λ, and the α ordering of R_max at P_cov* = 0.8.
pub fn coverage_property_checks() -> Result<Vec<CheckOutcome>> {
    let base = crate::figures::coverage_scenario(&NetworkConfig::default());
    let model_at = |alpha: f64, lambda: f64| -> Result<CoverageModel> {
        let mut cfg = base.clone();
        cfg.chan.alpha = alpha;
        cfg.pp.lambda = Some(lambda);
        Ok(CoverageModel::from_config(&cfg)?)
    };
    let h = base.cov.serving_h;
    let mut rise: f64 = 0.0;
    let mut lambda_rise: f64 = 0.0;
    for alpha in [3.4, 4.2] {
        let sparse = model_at(alpha, 8e-6)?;
        let dense = model_at(alpha, 1.6e-5)?;
        let mut prev = f64::INFINITY;
        for i in 1..=100 {
            let r = i as f64;
            let p = sparse.coverage_conditional(r, h)?;
            rise = rise.max(p - prev);
            prev = p;
            lambda_rise = lambda_rise.max(dense.coverage_conditional(r, h)? - p);
        }
    }
    let r_low = model_at(3.4, 8e-6)?.solve_r_max(0.8, h)?;
    let r_high = model_at(4.2, 8e-6)?.solve_r_max(0.8, h)?;
    Ok(vec![
        CheckOutcome::below("coverage_max_rise_in_r", rise.max(0.0), 0.0),
        CheckOutcome::below("coverage_max_rise_in_lambda", lambda_rise.max(0.0), 0.0),
        CheckOutcome::below("rmax_alpha_4_2_minus_3_4_m", r_high - r_low, -0.01),
    ])
}

/// Planar law and density-scaled sector for the N-node default scenario.
pub fn progress_scenario(num_uavs: usize) -> Result<(DistanceLaw, SectorParams)> {
    let mut cfg = NetworkConfig::default();
    cfg.num_uavs = num_uavs;
    cfg.scan_expected_nodes = Some(4.0);
    let lambda = cfg.effective_lambda()?;
    Ok((DistanceLaw::planar(lambda, 1), cfg.progress_sector()?))
}

/// The 16-point φ grid `2πk/17`. It stays clear of φ = 2π, where the
/// bearing factor and hence the expected progress vanish.
pub fn progress_phis() -> Vec<f64> {
    (1..=16).map(|k| 2.0 * PI * k as f64 / 17.0).collect()
}

/// Worst relative |analytic − MC| of the expected progress over the φ grid.
pub fn progress_check(seed: u64, trials: u64) -> Result<CheckOutcome> {
    let (law, sector) = progress_scenario(25)?;
    let mut worst: f64 = 0.0;
    for (i, phi) in progress_phis().into_iter().enumerate() {
        let sp = SectorParams { phi, ..sector };
        let a = expected_progress_analytic(&law, &sp)?;
        let mc = expected_progress_mc(&law, &sp, derive_seed(seed, i as u64), trials)?;
        worst = worst.max((mc.estimate / a - 1.0).abs());
    }
    Ok(CheckOutcome::below("progress_analytic_vs_mc_rel", worst, 0.05))
}

/// Argmax of the analytic progress on a 256-point φ grid, as a multiple of
/// π, for N ∈ {25, 50, 100}; must lie in (1/2, 3/4).
pub fn progress_argmax_check() -> Result<CheckOutcome> {
    let mut outside: f64 = 0.0;
    let mut inside = true;
    for n in [25, 50, 100] {
        let (law, sector) = progress_scenario(n)?;
        let mut best = (0.0, f64::NEG_INFINITY);
        for k in 1..=256 {
            let phi = 2.0 * PI * k as f64 / 256.0;
            let e = expected_progress_analytic(&law, &SectorParams { phi, ..sector })?;
            if e > best.1 {
                best = (phi, e);
            }
        }
        let x = best.0 / PI;
        inside &= x > 0.5 && x < 0.75;
        outside = outside.max((0.5 - x).max(x - 0.75).max(0.0));
    }
    Ok(CheckOutcome {
        name: "progress_argmax_outside_band".into(),
        statistic: outside,
        tolerance: 0.0,
        passed: inside,
    })
}

/// Exhaustive scoring: destination first, else the largest positive
/// projection, then the smaller divergence, then the lower id.
fn brute_force_next_hop(cands: &[UavNode], ni: &UavNode, dest: &UavNode) -> Option<usize> {
    if cands.iter().any(|c| c.id == dest.id) {
        return Some(dest.id);
    }
    let mut scored: Vec<(f64, f64, usize)> = cands
        .iter()
        .map(|c| {
            let (dx, dy, dh) = (c.x - ni.x, c.y - ni.y, c.h - ni.h);
            let (ax, ay, ah) = (dest.x - ni.x, dest.y - ni.y, dest.h - ni.h);
            let norm = (ax * ax + ay * ay + ah * ah).sqrt();
            let proj = (dx * ax + dy * ay + dh * ah) / norm;
            let div = ((dx * dx + dy * dy + dh * dh) - proj * proj).max(0.0).sqrt();
            (proj, div, c.id)
        })
        .filter(|s| s.0 > 0.0)
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)));
    scored.first().map(|s| s.2)
}

/// Mismatches between `select_next_hop` and exhaustive scoring on random
/// instances.
pub fn next_hop_oracle_check(seed: u64, instances: u64) -> Result<CheckOutcome> {
    use rand::Rng;
    let mut rng = substream(seed, 77);
    let mut mismatches = 0u64;
    for _ in 0..instances {
        let coord = |rng: &mut uavnet_core::rng::SimRng| -> (f64, f64, f64) {
            (200.0 * rng.random::<f64>(), 200.0 * rng.random::<f64>(), 250.0 + 50.0 * rng.random::<f64>())
        };
        let (x, y, h) = coord(&mut rng);
        let ni = UavNode::new(0, x, y, h, Role::Surveillance);
        let (x, y, h) = coord(&mut rng);
        let dest = UavNode::new(1, x, y, h, Role::Anchor);
        let count = 1 + (rng.random::<f64>() * 20.0) as usize;
        let include_dest = rng.random::<f64>() < 0.1;
        let mut cands: Vec<UavNode> = (0..count)
            .map(|k| {
                let (x, y, h) = coord(&mut rng);
                UavNode::new(k + 2, x, y, h, Role::Surveillance)
            })
            .collect();
        if include_dest {
            cands.push(dest);
        }
        let refs: Vec<&UavNode> = cands.iter().collect();
        let got = select_next_hop(&refs, &ni, &dest).ok().map(|n| n.id);
        if got != brute_force_next_hop(&cands, &ni, &dest) {
            mismatches += 1;
        }
        // the score is homogeneous, so scaling every coordinate must not
        // change the choice
        let scale = |n: &UavNode| UavNode::new(n.id, 3.0 * n.x, 3.0 * n.y, 3.0 * n.h, n.role);
        let scaled: Vec<UavNode> = cands.iter().map(scale).collect();
        let refs: Vec<&UavNode> = scaled.iter().collect();
        let again = select_next_hop(&refs, &scale(&ni), &scale(&dest)).ok().map(|n| n.id);
        if again != got {
            mismatches += 1;
        }
    }
    Ok(CheckOutcome::below("next_hop_oracle_mismatches", mismatches as f64, 0.0))
}

/// |R_min − 10 m| for the end-to-end use case; must be within 2 m.
pub fn band_check() -> Result<CheckOutcome> {
    let band = deduce_band(&use_case(&NetworkConfig::default()))?;
    Ok(CheckOutcome::below("use_case_rmin_offset_m", (band.r_min - 10.0).abs(), 2.0))
}

/// Every check, in table order.
pub fn run_all(seed: u64, trials: u64) -> Result<Vec<CheckOutcome>> {
    let mut out = vec![collision_check(derive_seed(seed, 1), trials)?];
    out.extend(rmin_checks()?);
    out.extend(distance_checks(derive_seed(seed, 2))?);
    out.push(coverage_check(derive_seed(seed, 3), trials)?);
    out.push(derivative_check()?);
    out.extend(coverage_property_checks()?);
    out.push(progress_check(derive_seed(seed, 4), trials)?);
    out.push(progress_argmax_check()?);
    out.push(next_hop_oracle_check(derive_seed(seed, 5), 1000)?);
    out.push(band_check()?);
    Ok(out)
}

/// CSV table `check,statistic,tolerance,status`.
pub fn summary_table(outcomes: &[CheckOutcome]) -> String {
    let mut s = String::from("check,statistic,tolerance,status\n");
    for o in outcomes {
        s.push_str(&format!(
            "{},{},{},{}\n",
            o.name,
            format_num(o.statistic),
            format_num(o.tolerance),
            if o.passed { "pass" } else { "FAIL" }
        ));
    }
    s
}
