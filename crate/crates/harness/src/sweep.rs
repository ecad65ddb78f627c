//! Grid sweeps over configuration keys.
//!
//! Each grid point is the base config with the point's assignments applied.
//! Points are evaluated in parallel, each with its own seed derived from the
//! sweep seed and the point index, and emitted in declaration order (the
//! first grid axis varies slowest).

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use uavnet_core::band::deduce_band;
use uavnet_core::collision::{collision_mc, collision_probability, solve_r_min};
use uavnet_core::coverage::CoverageModel;
use uavnet_core::deploy::sample_deployment;
use uavnet_core::distance::{
    distance_cdf, distance_pdf, nth_neighbor_samples, sector_distance_cdf, sector_distance_pdf,
};
use uavnet_core::model::{DistanceLaw, NetworkConfig, ParamValue};
use uavnet_core::rng::derive_seed;
use uavnet_core::routing::progress::{expected_progress_analytic, expected_progress_mc};
use uavnet_core::routing::route_all;

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    CoverageVsR,
    CoverageMarginal,
    CollisionVsR,
    RminVsXi,
    RmaxSolve,
    DistancePdf,
    DistanceCdf,
    ProgressVsPhi,
    BandDeduction,
    RouteBatch,
    CoverageCollisionVsR,
}

impl Metric {
    pub const ALL: [Metric; 11] = [
        Metric::CoverageVsR,
        Metric::CoverageMarginal,
        Metric::CollisionVsR,
        Metric::RminVsXi,
        Metric::RmaxSolve,
        Metric::DistancePdf,
        Metric::DistanceCdf,
        Metric::ProgressVsPhi,
        Metric::BandDeduction,
        Metric::RouteBatch,
        Metric::CoverageCollisionVsR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::CoverageVsR => "coverage_vs_r",
            Metric::CoverageMarginal => "coverage_marginal",
            Metric::CollisionVsR => "collision_vs_r",
            Metric::RminVsXi => "rmin_vs_xi",
            Metric::RmaxSolve => "rmax_solve",
            Metric::DistancePdf => "distance_pdf",
            Metric::DistanceCdf => "distance_cdf",
            Metric::ProgressVsPhi => "progress_vs_phi",
            Metric::BandDeduction => "band_deduction",
            Metric::RouteBatch => "route_batch",
            Metric::CoverageCollisionVsR => "coverage_collision_vs_r",
        }
    }

    /// Output columns after the grid columns and before `error`.
    pub fn columns(self, with_mc: bool) -> Vec<&'static str> {
        let mc = |analytic: &'static str, mc: &'static str| {
            if with_mc {
                vec![analytic, mc, "mc_stderr"]
            } else {
                vec![analytic]
            }
        };
        match self {
            Metric::CoverageVsR | Metric::CoverageMarginal | Metric::CollisionVsR => {
                mc("p_analytic", "p_mc")
            }
            Metric::RminVsXi => vec!["r_min"],
            Metric::RmaxSolve => vec!["r_max"],
            Metric::DistancePdf => vec!["pdf", "sector_pdf"],
            Metric::DistanceCdf => {
                if with_mc {
                    vec!["cdf", "sector_cdf", "cdf_mc"]
                } else {
                    vec!["cdf", "sector_cdf"]
                }
            }
            Metric::ProgressVsPhi => mc("e_analytic", "e_mc"),
            Metric::BandDeduction => vec!["r_min", "r_max", "feasible"],
            Metric::RouteBatch => vec!["sources", "delivered", "success_rate", "mean_hops"],
            Metric::CoverageCollisionVsR => vec!["p_cov", "p_coll"],
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| HarnessError::Usage(format!("unknown metric {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub metric: Metric,
    /// `(key, values)` axes; keys may use the short aliases `r`, `phi`,
    /// `n` and `N`.
    pub grid: Vec<(String, Vec<ParamValue>)>,
    pub base: NetworkConfig,
    /// Monte-Carlo trials per point; 0 disables the MC columns.
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepMeta {
    pub metric: String,
    pub seed: u64,
    pub trials: u64,
    pub git_describe: String,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: SweepMeta,
}

impl SweepResult {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn errors(&self) -> impl Iterator<Item = &str> {
        let idx = self.columns.len() - 1;
        self.rows.iter().filter_map(move |r| match &r[idx] {
            Cell::Text(t) => Some(t.as_str()),
            _ => None,
        })
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.grid.is_empty() {
            return Err(HarnessError::Usage("sweep grid must have at least one axis".into()));
        }
        for (key, values) in &self.grid {
            if values.is_empty() {
                return Err(HarnessError::Usage(format!("grid axis {key:?} has no values")));
            }
            let mut probe = self.base.clone();
            probe
                .set(key, &values[0])
                .map_err(|e| HarnessError::Usage(e.to_string()))?;
        }
        Ok(())
    }

    /// Grid points in emission order.
    pub fn points(&self) -> Vec<Vec<&ParamValue>> {
        let mut points: Vec<Vec<&ParamValue>> = vec![Vec::new()];
        for (_, values) in &self.grid {
            points = points
                .into_iter()
                .flat_map(|p| {
                    values.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        points
    }
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let started = std::time::Instant::now();
    let with_mc = spec.trials > 0;
    let metric_cols = spec.metric.columns(with_mc);
    let mut columns: Vec<String> = spec.grid.iter().map(|(k, _)| k.clone()).collect();
    columns.extend(metric_cols.iter().map(|c| c.to_string()));
    columns.push("error".into());

    let points = spec.points();
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .enumerate()
        .map(|(i, point)| {
            let mut row: Vec<Cell> = point
                .iter()
                .map(|v| match v {
                    ParamValue::Num(x) => Cell::Num(*x),
                    ParamValue::Bool(b) => Cell::Text(b.to_string()),
                    ParamValue::Str(s) => Cell::Text(s.clone()),
                })
                .collect();
            let seed = derive_seed(spec.seed, i as u64);
            match point_config(spec, point).and_then(|cfg| evaluate(spec.metric, &cfg, seed, spec.trials)) {
                Ok(values) => {
                    debug_assert_eq!(values.len(), metric_cols.len());
                    row.extend(values);
                    row.push(Cell::Empty);
                }
                Err(e) => {
                    row.extend(metric_cols.iter().map(|_| Cell::Empty));
                    row.push(Cell::Text(e.to_string()));
                }
            }
            row
        })
        .collect();

    Ok(SweepResult {
        columns,
        rows,
        meta: SweepMeta {
            metric: spec.metric.name().into(),
            seed: spec.seed,
            trials: spec.trials,
            git_describe: crate::GIT_DESCRIBE.into(),
            wall_time_s: started.elapsed().as_secs_f64(),
        },
    })
}

fn point_config(spec: &SweepSpec, point: &[&ParamValue]) -> uavnet_core::Result<NetworkConfig> {
    let mut cfg = spec.base.clone();
    for ((key, _), value) in spec.grid.iter().zip(point) {
        cfg.set(key, value)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn planar_law(cfg: &NetworkConfig) -> uavnet_core::Result<DistanceLaw> {
    Ok(DistanceLaw::planar(cfg.effective_lambda()?, cfg.pp.neighbor_order))
}

/// Evaluates one metric at one configuration.
pub fn evaluate(metric: Metric, cfg: &NetworkConfig, seed: u64, trials: u64) -> uavnet_core::Result<Vec<Cell>> {
    let r = cfg.cov.serving_r;
    let h = cfg.cov.serving_h;
    let mc = trials > 0;
    let mut out: Vec<Cell> = Vec::new();
    match metric {
        Metric::CoverageVsR => {
            let model = CoverageModel::from_config(cfg)?;
            out.push(model.coverage_conditional(r, h)?.into());
            if mc {
                let est = model.coverage_mc(r, h, seed, trials)?;
                out.extend([est.estimate.into(), est.std_error.into()]);
            }
        }
        Metric::CoverageMarginal => {
            let model = CoverageModel::from_config(cfg)?;
            out.push(model.coverage_marginal(&planar_law(cfg)?, h)?.into());
            if mc {
                if cfg.pp.neighbor_order == 1 {
                    let est = model.coverage_marginal_mc(h, seed, trials)?;
                    out.extend([est.estimate.into(), est.std_error.into()]);
                } else {
                    out.extend([Cell::Empty, Cell::Empty]);
                }
            }
        }
        Metric::CollisionVsR => {
            let enc = cfg.coll.encounter_radius(r);
            out.push(collision_probability(enc, cfg.coll.xi)?.into());
            if mc {
                let est = collision_mc(enc, cfg.coll.xi, seed, trials)?;
                out.extend([est.estimate.into(), est.std_error.into()]);
            }
        }
        Metric::RminVsXi => out.push(solve_r_min(cfg.coll.xi, cfg.coll.epsilon)?.into()),
        Metric::RmaxSolve => {
            let model = CoverageModel::from_config(cfg)?;
            out.push(model.solve_r_max(cfg.routing.p_cov_target, h)?.into());
        }
        Metric::DistancePdf | Metric::DistanceCdf => {
            let law = cfg.distance_law()?;
            let sector = cfg.routing.sector;
            let in_sector = law.dim == 2 && r <= sector.scan_radius;
            if metric == Metric::DistancePdf {
                out.push(distance_pdf(r, &law)?.into());
                out.push(if in_sector { sector_distance_pdf(r, &law, &sector)?.into() } else { Cell::Empty });
            } else {
                out.push(distance_cdf(r, &law)?.into());
                out.push(if in_sector { sector_distance_cdf(r, &law, &sector)?.into() } else { Cell::Empty });
                if mc {
                    let samples = nth_neighbor_samples(&law, seed, trials);
                    let below = samples.iter().filter(|&&d| d <= r).count();
                    out.push((below as f64 / trials as f64).into());
                }
            }
        }
        Metric::ProgressVsPhi => {
            let law = planar_law(cfg)?;
            let sector = cfg.progress_sector()?;
            out.push(expected_progress_analytic(&law, &sector)?.into());
            if mc {
                let est = expected_progress_mc(&law, &sector, seed, trials)?;
                out.extend([est.estimate.into(), est.std_error.into()]);
            }
        }
        Metric::BandDeduction => {
            let band = deduce_band(cfg)?;
            out.push(band.r_min.into());
            out.push(band.r_max.map_or(Cell::Empty, Cell::Num));
            out.push(Cell::Num(if band.feasible { 1.0 } else { 0.0 }));
        }
        Metric::RouteBatch => {
            let (mut sources, mut delivered, mut hops) = (0usize, 0usize, 0usize);
            for k in 0..cfg.mc_runs {
                let dep = sample_deployment(cfg, derive_seed(seed, k as u64))?;
                for res in route_all(&dep, &cfg.routing)? {
                    sources += 1;
                    if res.delivered() {
                        delivered += 1;
                        hops += res.path.total_hops;
                    }
                }
            }
            out.push((sources as f64).into());
            out.push((delivered as f64).into());
            out.push(if sources > 0 { (delivered as f64 / sources as f64).into() } else { Cell::Empty });
            out.push(if delivered > 0 { (hops as f64 / delivered as f64).into() } else { Cell::Empty });
        }
        Metric::CoverageCollisionVsR => {
            let model = CoverageModel::from_config(cfg)?;
            out.push(model.coverage_conditional(r, h)?.into());
            out.push(collision_probability(cfg.coll.encounter_radius(r), cfg.coll.xi)?.into());
        }
    }
    Ok(out)
}
