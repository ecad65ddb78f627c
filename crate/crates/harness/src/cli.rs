//! The `uavnet` command line.

use std::ffi::OsString;
use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use uavnet_core::band::deduce_band;
use uavnet_core::deploy::sample_deployment;
use uavnet_core::model::{NetworkConfig, ParamValue};
use uavnet_core::routing::{route, route_all, RouteResult};

use crate::error::{HarnessError, Result};
use crate::figures::reproduce_figures;
use crate::output::{format_num, render, to_json_object, write_file, write_sweep, Format};
use crate::sweep::{run_sweep, Cell, Metric, SweepResult, SweepSpec};
use crate::validate;

#[derive(Debug, Parser)]
#[command(name = "uavnet", version, about = "Coverage, collision and routing analysis for UAV relay networks")]
struct Cli {
    /// Flat TOML scenario file applied over the built-in defaults.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Overrides a single configuration key; repeatable.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Master seed (defaults to the config's `seed`).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Output file (a directory for reproduce-figures); stdout otherwise.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Monte-Carlo trials per point; 0 disables sampling (validate: 10^6).
    #[arg(long, global = true)]
    trials: Option<u64>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// SIR coverage probability against serving distance.
    Coverage {
        /// Serving distances: `a,b,c` or `start:stop:step`.
        #[arg(long)]
        r: Option<String>,
        /// Serving link altitude term.
        #[arg(long)]
        h: Option<f64>,
        /// Average over the serving-distance law instead.
        #[arg(long)]
        marginal: bool,
    },
    /// Collision probability against separation.
    Collision {
        #[arg(long)]
        xi: Option<String>,
        #[arg(long)]
        r: Option<String>,
    },
    /// n-th neighbour distance law.
    Distance {
        #[arg(long)]
        r: String,
        #[arg(long)]
        n: Option<String>,
        /// Emit the CDF instead of the density.
        #[arg(long)]
        cdf: bool,
    },
    /// Expected per-hop progress against sector angle (values may end in `pi`).
    Progress {
        #[arg(long)]
        phi: Option<String>,
    },
    /// Routes SUAVs of a sampled deployment to their nearest anchor.
    Route {
        /// Route one source instead of every SUAV.
        #[arg(long)]
        source: Option<usize>,
        /// Also write the deployment's nodes as JSON.
        #[arg(long, value_name = "PATH")]
        nodes: Option<PathBuf>,
    },
    /// Admissible inter-UAV distance band.
    Band,
    /// Generic grid sweep.
    Sweep {
        #[arg(long)]
        metric: String,
        /// `key=values` axis, repeatable; the first axis varies slowest.
        #[arg(long = "grid", required = true)]
        grid: Vec<String>,
    },
    /// Writes the data for every figure panel.
    ReproduceFigures,
    /// Runs the analytic-vs-sampling cross-checks.
    Validate,
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("uavnet: {e}");
            e.exit_code()
        }
    }
}

/// Parses a scalar: number, `true`/`false`, a multiple of π such as
/// `0.5pi`, or a bare string.
pub fn parse_value(text: &str) -> ParamValue {
    let t = text.trim();
    if let Some(v) = parse_number(t) {
        return ParamValue::Num(v);
    }
    match t {
        "true" => ParamValue::Bool(true),
        "false" => ParamValue::Bool(false),
        _ => ParamValue::Str(t.to_string()),
    }
}

fn parse_number(t: &str) -> Option<f64> {
    if let Some(head) = t.strip_suffix("pi") {
        let (num, den) = match head.split_once('/') {
            Some((a, b)) => (a, b.parse::<f64>().ok()?),
            None => (head, 1.0),
        };
        let k = if num.is_empty() { 1.0 } else { num.parse::<f64>().ok()? };
        return Some(k * PI / den);
    }
    if let Some((a, b)) = t.split_once("pi/") {
        let k = if a.is_empty() { 1.0 } else { a.parse::<f64>().ok()? };
        return Some(k * PI / b.parse::<f64>().ok()?);
    }
    t.parse::<f64>().ok()
}

/// `a,b,c` or inclusive `start:stop:step`.
pub fn parse_list(text: &str) -> Result<Vec<ParamValue>> {
    let bad = || HarnessError::Usage(format!("cannot parse value list {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() == 3 {
        let nums: Vec<f64> = parts.iter().map(|p| parse_number(p.trim())).collect::<Option<_>>().ok_or_else(bad)?;
        let (start, stop, step) = (nums[0], nums[1], nums[2]);
        if !(step > 0.0) || stop < start {
            return Err(bad());
        }
        return Ok(crate::figures::steps(start, stop, step).into_iter().map(ParamValue::Num).collect());
    }
    if parts.len() != 1 || text.trim().is_empty() {
        return Err(bad());
    }
    Ok(text.split(',').map(parse_value).collect())
}

fn load_config(cli: &Cli) -> Result<NetworkConfig> {
    let mut cfg = match &cli.config {
        Some(path) => NetworkConfig::from_file(path)?,
        None => NetworkConfig::default(),
    };
    for assignment in &cli.set {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| HarnessError::Usage(format!("--set expects KEY=VALUE, got {assignment:?}")))?;
        cfg.set(key.trim(), &parse_value(value))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| HarnessError::io("stdout", e))
        }
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let cfg = load_config(cli)?;
    let seed = cli.seed.unwrap_or(cfg.seed);
    let trials = cli.trials.unwrap_or(0);
    let format = cli.format.unwrap_or_default();
    let value_or = |text: &Option<String>, current: f64| -> Result<Vec<ParamValue>> {
        match text {
            Some(t) => parse_list(t),
            None => Ok(vec![ParamValue::Num(current)]),
        }
    };

    match &cli.command {
        Command::Coverage { r, h, marginal } => {
            let mut cfg = cfg.clone();
            if let Some(h) = h {
                cfg.cov.serving_h = *h;
            }
            if *marginal {
                let grid = vec![("h".to_string(), vec![ParamValue::Num(cfg.cov.serving_h)])];
                let spec = sweep_spec(Metric::CoverageMarginal, grid, cfg, trials, seed);
                return sweep_command(cli, &spec, format, &[("p_analytic", "p_cov"), ("p_mc", "p_cov_mc")]);
            }
            let grid = vec![("r".to_string(), value_or(r, cfg.cov.serving_r)?)];
            let spec = sweep_spec(Metric::CoverageVsR, grid, cfg, trials, seed);
            sweep_command(cli, &spec, format, &[("p_analytic", "p_cov"), ("p_mc", "p_cov_mc")])
        }
        Command::Collision { xi, r } => {
            let grid = vec![
                ("xi".to_string(), value_or(xi, cfg.coll.xi)?),
                ("r".to_string(), value_or(r, cfg.cov.serving_r)?),
            ];
            let spec = sweep_spec(Metric::CollisionVsR, grid, cfg, trials, seed);
            sweep_command(cli, &spec, format, &[("p_analytic", "p_coll"), ("p_mc", "p_coll_mc")])
        }
        Command::Distance { r, n, cdf } => {
            let grid = vec![
                ("n".to_string(), value_or(n, cfg.pp.neighbor_order as f64)?),
                ("r".to_string(), parse_list(r)?),
            ];
            let metric = if *cdf { Metric::DistanceCdf } else { Metric::DistancePdf };
            sweep_command(cli, &sweep_spec(metric, grid, cfg, trials, seed), format, &[])
        }
        Command::Progress { phi } => {
            let grid = vec![("phi".to_string(), value_or(phi, cfg.routing.sector.phi)?)];
            let spec = sweep_spec(Metric::ProgressVsPhi, grid, cfg, trials, seed);
            sweep_command(cli, &spec, format, &[("e_analytic", "e_progress"), ("e_mc", "e_progress_mc")])
        }
        Command::Route { source, nodes } => route_command(cli, &cfg, seed, *source, nodes.as_deref(), format),
        Command::Band => band_command(cli, &cfg, format),
        Command::Sweep { metric, grid } => {
            let metric: Metric = metric.parse()?;
            let grid = grid
                .iter()
                .map(|axis| {
                    let (key, values) = axis
                        .split_once('=')
                        .ok_or_else(|| HarnessError::Usage(format!("--grid expects KEY=VALUES, got {axis:?}")))?;
                    Ok((key.trim().to_string(), parse_list(values)?))
                })
                .collect::<Result<Vec<_>>>()?;
            sweep_command(cli, &sweep_spec(metric, grid, cfg, trials, seed), format, &[])
        }
        Command::ReproduceFigures => {
            let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("figures"));
            let results = reproduce_figures(&dir, &cfg, seed, trials, format)?;
            let failed: usize = results.iter().map(|(_, r)| r.errors().count()).sum();
            for (name, res) in &results {
                eprintln!("{name}: {} rows", res.rows.len());
            }
            if failed > 0 {
                return Err(HarnessError::Failed(format!("{failed} figure grid points failed")));
            }
            Ok(())
        }
        Command::Validate => {
            let trials = cli.trials.unwrap_or(1_000_000);
            if trials < 2 {
                return Err(HarnessError::Usage("validate needs at least 2 trials".into()));
            }
            let outcomes = validate::run_all(seed, trials)?;
            emit(cli, &validate::summary_table(&outcomes))?;
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            if failed > 0 {
                return Err(HarnessError::Failed(format!("{failed} of {} checks failed", outcomes.len())));
            }
            Ok(())
        }
    }
}

fn sweep_spec(metric: Metric, grid: Vec<(String, Vec<ParamValue>)>, base: NetworkConfig, trials: u64, seed: u64) -> SweepSpec {
    SweepSpec {
        metric,
        grid,
        base,
        trials,
        seed,
    }
}

/// Runs a sweep and writes it. A single-point query in JSON prints just the
/// metric values as one object, with columns renamed per `renames`.
fn sweep_command(cli: &Cli, spec: &SweepSpec, format: Format, renames: &[(&str, &str)]) -> Result<()> {
    let res = run_sweep(spec)?;
    if res.rows.len() == 1 && format == Format::Json {
        emit(cli, &point_object(spec, &res, renames))?;
    } else if let Some(path) = &cli.out {
        write_sweep(path, &res, format)?;
    } else {
        emit(cli, &render(&res, format))?;
    }
    let failed: Vec<&str> = res.errors().collect();
    match failed.first() {
        None => Ok(()),
        Some(first) if res.rows.len() == 1 => Err(HarnessError::Failed(first.to_string())),
        Some(first) => Err(HarnessError::Failed(format!(
            "{} of {} grid points failed; first: {first}",
            failed.len(),
            res.rows.len()
        ))),
    }
}

fn point_object(spec: &SweepSpec, res: &SweepResult, renames: &[(&str, &str)]) -> String {
    let row = &res.rows[0];
    let pairs: Vec<(String, Cell)> = res
        .columns
        .iter()
        .zip(row)
        .skip(spec.grid.len())
        .map(|(name, cell)| {
            let name = renames.iter().find(|(from, _)| from == name).map_or(name.as_str(), |(_, to)| to);
            (name.to_string(), cell.clone())
        })
        .collect();
    to_json_object(&pairs)
}

fn route_command(
    cli: &Cli,
    cfg: &NetworkConfig,
    seed: u64,
    source: Option<usize>,
    nodes: Option<&Path>,
    format: Format,
) -> Result<()> {
    let dep = sample_deployment(cfg, seed)?;
    if let Some(path) = nodes {
        write_file(path, &(dep.nodes_json() + "\n"))?;
    }
    let results: Vec<RouteResult> = match source {
        Some(s) => vec![route(s, &dep, &cfg.routing)?],
        None => route_all(&dep, &cfg.routing)?,
    };
    let text = match format {
        Format::Json => {
            let records: Vec<_> = results.iter().map(RouteResult::record).collect();
            serde_json::to_string_pretty(&records).expect("routes serialize") + "\n"
        }
        Format::Csv => {
            let mut s = String::from("source,destination,status,total_hops,hops,per_hop_progress\n");
            for r in &results {
                let hops: Vec<String> = r.path.hops.iter().map(usize::to_string).collect();
                let prog: Vec<String> = r.path.per_hop_progress.iter().map(|p| format_num(*p)).collect();
                let status = serde_json::to_value(r.status).expect("status serializes");
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.source,
                    r.destination,
                    status.as_str().unwrap_or_default(),
                    r.path.total_hops,
                    hops.join(" "),
                    prog.join(" ")
                ));
            }
            s
        }
    };
    emit(cli, &text)
}

fn band_command(cli: &Cli, cfg: &NetworkConfig, format: Format) -> Result<()> {
    let band = deduce_band(cfg)?;
    let r_max = band.r_max.map_or(Cell::Empty, Cell::Num);
    let feasible = Cell::Num(if band.feasible { 1.0 } else { 0.0 });
    let text = match format {
        Format::Csv => {
            let cell = |c: &Cell| match c {
                Cell::Num(v) => format_num(*v),
                _ => String::new(),
            };
            format!(
                "param,value\nr_min,{}\nr_max,{}\nfeasible,{}\n",
                format_num(band.r_min),
                cell(&r_max),
                cell(&feasible)
            )
        }
        Format::Json => to_json_object(&[
            ("r_min".into(), Cell::Num(band.r_min)),
            ("r_max".into(), r_max),
            ("feasible".into(), feasible),
        ]),
    };
    if let Some(note) = &band.note {
        eprintln!("uavnet: {note}");
    }
    emit(cli, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_parsing() {
        assert_eq!(parse_value("1.5"), ParamValue::Num(1.5));
        assert_eq!(parse_value("true"), ParamValue::Bool(true));
        assert_eq!(parse_value("exclusion"), ParamValue::Str("exclusion".into()));
        assert_eq!(parse_value("pi"), ParamValue::Num(PI));
        assert_eq!(parse_value("0.5pi"), ParamValue::Num(0.5 * PI));
        assert_eq!(parse_value("2pi/3"), ParamValue::Num(2.0 * PI / 3.0));
        assert_eq!(parse_value("pi/4"), ParamValue::Num(PI / 4.0));
    }

    #[test]
    fn list_parsing() {
        assert_eq!(parse_list("1,2").unwrap(), vec![ParamValue::Num(1.0), ParamValue::Num(2.0)]);
        assert_eq!(parse_list("0:1:0.5").unwrap().len(), 3);
        assert!(parse_list("1:0:1").is_err());
        assert!(parse_list("1:2").is_err());
        assert!(parse_list("").is_err());
    }
}
