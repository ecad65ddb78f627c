//! Data behind the figure panels: one sweep per figure, fig6 through fig14.
//!
//! Each figure starts from the base config and pins the parameters its panel
//! varies or depends on. Column layouts are those of the underlying metric.

use std::f64::consts::PI;
use std::path::Path;

use uavnet_core::model::{InterferenceGuard, NetworkConfig, ParamValue};
use uavnet_core::rng::derive_seed;

use crate::error::Result;
use crate::output::{write_sweep, Format};
use crate::sweep::{run_sweep, Metric, SweepResult, SweepSpec};

pub const FIGURES: [&str; 9] = ["fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "fig13", "fig14"];

/// `start, start + step, ...` up to and including `stop`.
pub fn steps(start: f64, stop: f64, step: f64) -> Vec<f64> {
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| start + step * i as f64).collect()
}

fn axis(key: &str, values: Vec<f64>) -> (String, Vec<ParamValue>) {
    (key.to_string(), values.into_iter().map(ParamValue::Num).collect())
}

/// Finite interference-limited scenario in which steeper attenuation lowers
/// coverage: interferers fill a 100 m disk around the receiver and the
/// serving link climbs 100 m.
pub fn coverage_scenario(base: &NetworkConfig) -> NetworkConfig {
    let mut cfg = base.clone();
    cfg.cov.guard = InterferenceGuard::Exclusion;
    cfg.cov.exclusion_radius = 0.0;
    cfg.cov.net_radius = 100.0;
    cfg.cov.serving_h = 100.0;
    cfg.cov.h_bar = 0.0;
    cfg.cov.theta = 1.0;
    cfg.fading.delta = 2;
    cfg.chan.alpha = 3.4;
    cfg.pp.lambda = Some(8e-6);
    cfg
}

/// The end-to-end use case: N = 25, λ = 0.2, ξ = 0.8 m, α = 3.4.
pub fn use_case(base: &NetworkConfig) -> NetworkConfig {
    let mut cfg = base.clone();
    cfg.num_uavs = 25;
    cfg.pp.lambda = Some(0.2);
    cfg.coll.xi = 0.8;
    cfg.coll.epsilon = 1e-24;
    cfg.chan.alpha = 3.4;
    cfg.routing.p_cov_target = 0.8;
    cfg.routing.sector.phi = 2.0 * PI / 3.0;
    cfg.routing.r_min = 10.0;
    cfg.routing.r_max = 60.0;
    cfg.scan_expected_nodes = None;
    cfg
}

pub fn figure_spec(name: &str, base: &NetworkConfig, seed: u64, trials: u64) -> Option<SweepSpec> {
    let index = FIGURES.iter().position(|f| *f == name)? as u64;
    let seed = derive_seed(seed, 1000 + index);
    let r_cov = steps(1.0, 100.0, 1.0);
    let (metric, grid, cfg) = match name {
        "fig6" => (
            Metric::CoverageVsR,
            vec![axis("alpha", vec![3.4, 4.2]), axis("r", r_cov)],
            coverage_scenario(base),
        ),
        "fig7" => (
            Metric::CoverageVsR,
            vec![axis("lambda", vec![4e-6, 8e-6, 1.6e-5]), axis("r", r_cov)],
            coverage_scenario(base),
        ),
        "fig8" => {
            let mut cfg = coverage_scenario(base);
            cfg.pp.lambda = None;
            cfg.area_side = 1000.0;
            cfg.num_anchors = 1;
            (Metric::CoverageVsR, vec![axis("N", vec![5.0, 9.0, 17.0, 33.0]), axis("r", r_cov)], cfg)
        }
        "fig9" => (
            Metric::CollisionVsR,
            vec![axis("xi", vec![1.5, 3.0, 5.0]), axis("r", steps(0.0, 60.0, 0.5))],
            base.clone(),
        ),
        "fig10" | "fig11" => {
            let mut cfg = base.clone();
            cfg.pp.lambda = Some(0.01);
            cfg.pp.dim = 2;
            cfg.routing.sector.scan_radius = 60.0;
            let metric = if name == "fig10" { Metric::DistancePdf } else { Metric::DistanceCdf };
            let phis = [1.0, 3.0, 5.0, 7.0].iter().map(|k| k * PI / 8.0).collect();
            (metric, vec![axis("phi", phis), axis("r", steps(0.25, 40.0, 0.25))], cfg)
        }
        "fig12" => {
            let mut cfg = base.clone();
            cfg.pp.lambda = None;
            cfg.pp.dim = 2;
            cfg.scan_expected_nodes = Some(cfg.scan_expected_nodes.unwrap_or(4.0));
            let phis = (1..=64).map(|i| 2.0 * PI * i as f64 / 64.0).collect();
            (Metric::ProgressVsPhi, vec![axis("N", vec![25.0, 50.0, 100.0]), axis("phi", phis)], cfg)
        }
        "fig13" => (
            Metric::CoverageCollisionVsR,
            vec![axis("r", steps(0.5, 60.0, 0.5))],
            use_case(base),
        ),
        "fig14" => {
            let phis = [0.25, 0.5, 2.0 / 3.0, 0.75, 1.0].iter().map(|k| k * PI).collect();
            (
                Metric::ProgressVsPhi,
                vec![axis("phi", phis), axis("scan_radius", steps(10.0, 60.0, 2.0))],
                use_case(base),
            )
        }
        _ => return None,
    };
    Some(SweepSpec {
        metric,
        grid,
        base: cfg,
        trials,
        seed,
    })
}

/// Runs every figure sweep and writes `<name>.csv` (or `.json`) into `dir`.
pub fn reproduce_figures(
    dir: &Path,
    base: &NetworkConfig,
    seed: u64,
    trials: u64,
    format: Format,
) -> Result<Vec<(String, SweepResult)>> {
    let ext = match format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    let mut out = Vec::new();
    for name in FIGURES {
        let spec = figure_spec(name, base, seed, trials).expect("known figure");
        let res = run_sweep(&spec)?;
        write_sweep(&dir.join(format!("{name}.{ext}")), &res, format)?;
        out.push((name.to_string(), res));
    }
    Ok(out)
}
