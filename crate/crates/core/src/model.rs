//! Scenario configuration shared by every model.
//!
//! The on-disk format is flat TOML: one `key = value` line per field, with no
//! tables. [`NetworkConfig::set`] is the single registry of keys, used both
//! by the file loader and by parameter sweeps. Unknown keys are rejected.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointProcessParams {
    /// Intensity override in nodes per m^dim; `None` derives it from the
    /// node count and region size.
    pub lambda: Option<f64>,
    pub dim: u32,
    pub neighbor_order: u32,
}

impl PointProcessParams {
    /// Volume of the unit ball in `dim` dimensions.
    pub fn volume_coefficient(&self) -> f64 {
        unit_ball_volume(self.dim)
    }
}

pub fn unit_ball_volume(dim: u32) -> f64 {
    match dim {
        1 => 2.0,
        2 => PI,
        3 => 4.0 * PI / 3.0,
        _ => f64::NAN,
    }
}

/// Point-process parameters with a resolved intensity, as consumed by the
/// distance and progress laws.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceLaw {
    pub lambda: f64,
    pub dim: u32,
    pub neighbor_order: u32,
}

impl DistanceLaw {
    pub fn planar(lambda: f64, neighbor_order: u32) -> Self {
        DistanceLaw {
            lambda,
            dim: 2,
            neighbor_order,
        }
    }

    pub fn volume_coefficient(&self) -> f64 {
        unit_ball_volume(self.dim)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::config(format!("lambda must be > 0, got {}", self.lambda)));
        }
        if !(self.dim == 2 || self.dim == 3) {
            return Err(Error::config(format!("dim must be 2 or 3, got {}", self.dim)));
        }
        if self.neighbor_order < 1 {
            return Err(Error::config("neighbor_order must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelParams {
    pub alpha: f64,
    /// Kept for completeness; the models are interference limited.
    pub noise_power: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FadingParams {
    /// Nakagami shape; the fading power is Gamma(delta, 1/delta).
    pub delta: u32,
}

/// Which annulus carries interferers around a receiver at serving distance r.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InterferenceGuard {
    /// Interferers occupy `[max(exclusion_radius, r), net_radius]`: no
    /// interferer is closer than the serving transmitter.
    NearestTransmitter,
    /// Interferers occupy `[exclusion_radius, net_radius]` regardless of r.
    Exclusion,
}

impl InterferenceGuard {
    fn parse(s: &str) -> Result<Self> {
        match s {
            "nearest_transmitter" | "nearest" => Ok(InterferenceGuard::NearestTransmitter),
            "exclusion" => Ok(InterferenceGuard::Exclusion),
            other => Err(Error::config(format!(
                "interference_guard must be \"nearest_transmitter\" or \"exclusion\", got {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageParams {
    /// Linear SIR threshold.
    pub theta: f64,
    pub serving_r: f64,
    /// Altitude term of the serving link pathloss.
    pub serving_h: f64,
    /// Common altitude term of the interferer pathloss.
    pub h_bar: f64,
    pub exclusion_radius: f64,
    pub net_radius: f64,
    pub quad_tol: f64,
    pub guard: InterferenceGuard,
}

/// How the collision model's radius relates to the physical separation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EncounterRadius {
    /// Use the separation as is.
    Bare,
    /// Subtract the two airframe radii first.
    Shifted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CollisionParams {
    pub xi: f64,
    pub uav_radius_ref: f64,
    pub uav_radius_nbr: f64,
    pub epsilon: f64,
    pub encounter: EncounterRadius,
}

impl CollisionParams {
    /// Radius fed to the collision law for a given separation.
    pub fn encounter_radius(&self, separation: f64) -> f64 {
        match self.encounter {
            EncounterRadius::Bare => separation,
            EncounterRadius::Shifted => {
                (separation - self.uav_radius_ref - self.uav_radius_nbr).max(0.0)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectorParams {
    /// Full opening angle in radians.
    pub phi: f64,
    pub scan_radius: f64,
}

impl SectorParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.phi > 0.0 && self.phi <= 2.0 * PI + 1e-12) {
            return Err(Error::config(format!("sector angle must be in (0, 2π], got {}", self.phi)));
        }
        if !(self.scan_radius > 0.0) {
            return Err(Error::config(format!("scan radius must be > 0, got {}", self.scan_radius)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoutingParams {
    pub sector: SectorParams,
    pub r_min: f64,
    pub r_max: f64,
    pub p_cov_target: f64,
    pub p_coll_target: f64,
    pub max_hops: usize,
    /// Re-select the nearest anchor at every relay instead of once per route.
    pub reanchor_per_hop: bool,
}

impl RoutingParams {
    /// Checks the forwarding constraints. The sector opening is limited to
    /// π here, while progress analysis accepts anything up to 2π.
    pub fn validate(&self) -> Result<()> {
        self.sector.validate()?;
        if self.sector.phi > PI + 1e-12 {
            return Err(Error::config(format!(
                "routing sector angle must be in (0, π], got {}",
                self.sector.phi
            )));
        }
        if !(self.r_min >= 0.0 && self.r_min < self.r_max) {
            return Err(Error::config(format!(
                "need 0 <= r_min < r_max, got [{}, {}]",
                self.r_min, self.r_max
            )));
        }
        if self.max_hops < 1 {
            return Err(Error::config("max_hops must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NetworkConfig {
    pub area_side: f64,
    pub num_uavs: usize,
    pub num_anchors: usize,
    pub altitude_min: f64,
    pub altitude_max: f64,
    pub tbs_x: f64,
    pub tbs_y: f64,
    pub anchor_ring_radius: f64,
    pub pp: PointProcessParams,
    pub chan: ChannelParams,
    pub fading: FadingParams,
    pub cov: CoverageParams,
    pub coll: CollisionParams,
    pub routing: RoutingParams,
    /// When set, expected-progress analysis sizes the scan radius so the
    /// full scan disk holds this many nodes on average.
    pub scan_expected_nodes: Option<f64>,
    pub seed: u64,
    pub mc_runs: usize,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        NetworkConfig {
            area_side: 1000.0,
            num_uavs: 25,
            num_anchors: 1,
            altitude_min: 250.0,
            altitude_max: 300.0,
            tbs_x: 500.0,
            tbs_y: 500.0,
            anchor_ring_radius: 50.0,
            pp: PointProcessParams {
                lambda: None,
                dim: 2,
                neighbor_order: 1,
            },
            chan: ChannelParams {
                alpha: 3.4,
                noise_power: 0.0,
            },
            fading: FadingParams { delta: 2 },
            cov: CoverageParams {
                theta: 1.0,
                serving_r: 10.0,
                serving_h: 0.0,
                h_bar: 0.0,
                exclusion_radius: 0.0,
                net_radius: 1e4,
                quad_tol: 1e-8,
                guard: InterferenceGuard::NearestTransmitter,
            },
            coll: CollisionParams {
                xi: 1.5,
                uav_radius_ref: 0.5,
                uav_radius_nbr: 0.5,
                epsilon: 1e-24,
                encounter: EncounterRadius::Bare,
            },
            routing: RoutingParams {
                sector: SectorParams {
                    phi: 2.0 * PI / 3.0,
                    scan_radius: 60.0,
                },
                r_min: 10.0,
                r_max: 60.0,
                p_cov_target: 0.8,
                p_coll_target: 1e-24,
                max_hops: 64,
                reanchor_per_hop: false,
            },
            scan_expected_nodes: None,
            seed: 42,
            mc_runs: 50,
        }
    }
}

/// A value assigned to a configuration key.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Num(f64),
    Bool(bool),
    Str(String),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Num(v) => write!(f, "{v}"),
            ParamValue::Bool(b) => write!(f, "{b}"),
            ParamValue::Str(s) => write!(f, "{s:?}"),
        }
    }
}

impl From<f64> for ParamValue {
    fn from(v: f64) -> Self {
        ParamValue::Num(v)
    }
}

impl ParamValue {
    fn num(&self, key: &str) -> Result<f64> {
        match self {
            ParamValue::Num(v) => Ok(*v),
            other => Err(Error::config(format!("{key} expects a number, got {other}"))),
        }
    }

    fn count(&self, key: &str) -> Result<usize> {
        let v = self.num(key)?;
        if v < 0.0 || v.fract() != 0.0 || v > u32::MAX as f64 {
            return Err(Error::config(format!("{key} expects a non-negative integer, got {v}")));
        }
        Ok(v as usize)
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self {
            ParamValue::Bool(b) => Ok(*b),
            other => Err(Error::config(format!("{key} expects true/false, got {other}"))),
        }
    }

    fn text(&self, key: &str) -> Result<&str> {
        match self {
            ParamValue::Str(s) => Ok(s),
            other => Err(Error::config(format!("{key} expects a string, got {other}"))),
        }
    }
}

/// Every key accepted by [`NetworkConfig::set`], in documentation order.
pub const CONFIG_KEYS: &[&str] = &[
    "area_side",
    "num_uavs",
    "num_anchors",
    "altitude_min",
    "altitude_max",
    "tbs_x",
    "tbs_y",
    "anchor_ring_radius",
    "lambda",
    "dim",
    "neighbor_order",
    "alpha",
    "noise_power",
    "delta",
    "theta_db",
    "serving_r",
    "serving_h",
    "h_bar",
    "exclusion_radius",
    "net_radius",
    "quad_tol",
    "interference_guard",
    "xi",
    "uav_radius_ref",
    "uav_radius_nbr",
    "epsilon",
    "encounter_radius",
    "sector_angle",
    "scan_radius",
    "scan_expected_nodes",
    "r_min",
    "r_max",
    "p_cov_target",
    "p_coll_target",
    "max_hops",
    "reanchor_per_hop",
    "seed",
    "mc_runs",
];

/// Short aliases accepted by sweep grids.
pub fn canonical_key(key: &str) -> &str {
    match key {
        "r" => "serving_r",
        "h" => "serving_h",
        "phi" => "sector_angle",
        "n" => "neighbor_order",
        "N" => "num_uavs",
        other => other,
    }
}

impl NetworkConfig {
    /// Assigns one configuration key. Does not re-validate the whole config.
    pub fn set(&mut self, key: &str, value: &ParamValue) -> Result<()> {
        let key = canonical_key(key);
        match key {
            "area_side" => self.area_side = value.num(key)?,
            "num_uavs" => self.num_uavs = value.count(key)?,
            "num_anchors" => self.num_anchors = value.count(key)?,
            "altitude_min" => self.altitude_min = value.num(key)?,
            "altitude_max" => self.altitude_max = value.num(key)?,
            "tbs_x" => self.tbs_x = value.num(key)?,
            "tbs_y" => self.tbs_y = value.num(key)?,
            "anchor_ring_radius" => self.anchor_ring_radius = value.num(key)?,
            "lambda" => self.pp.lambda = Some(value.num(key)?),
            "dim" => self.pp.dim = value.count(key)? as u32,
            "neighbor_order" => self.pp.neighbor_order = value.count(key)? as u32,
            "alpha" => self.chan.alpha = value.num(key)?,
            "noise_power" => self.chan.noise_power = value.num(key)?,
            "delta" => self.fading.delta = value.count(key)? as u32,
            "theta_db" => self.cov.theta = db_to_linear(value.num(key)?),
            "serving_r" => self.cov.serving_r = value.num(key)?,
            "serving_h" => self.cov.serving_h = value.num(key)?,
            "h_bar" => self.cov.h_bar = value.num(key)?,
            "exclusion_radius" => self.cov.exclusion_radius = value.num(key)?,
            "net_radius" => self.cov.net_radius = value.num(key)?,
            "quad_tol" => self.cov.quad_tol = value.num(key)?,
            "interference_guard" => self.cov.guard = InterferenceGuard::parse(value.text(key)?)?,
            "xi" => self.coll.xi = value.num(key)?,
            "uav_radius_ref" => self.coll.uav_radius_ref = value.num(key)?,
            "uav_radius_nbr" => self.coll.uav_radius_nbr = value.num(key)?,
            "epsilon" => self.coll.epsilon = value.num(key)?,
            "encounter_radius" => {
                self.coll.encounter = match value.text(key)? {
                    "bare" => EncounterRadius::Bare,
                    "shifted" => EncounterRadius::Shifted,
                    other => {
                        return Err(Error::config(format!(
                            "encounter_radius must be \"bare\" or \"shifted\", got {other:?}"
                        )))
                    }
                }
            }
            "sector_angle" => self.routing.sector.phi = value.num(key)?,
            "scan_radius" => self.routing.sector.scan_radius = value.num(key)?,
            "scan_expected_nodes" => self.scan_expected_nodes = Some(value.num(key)?),
            "r_min" => self.routing.r_min = value.num(key)?,
            "r_max" => self.routing.r_max = value.num(key)?,
            "p_cov_target" => self.routing.p_cov_target = value.num(key)?,
            "p_coll_target" => self.routing.p_coll_target = value.num(key)?,
            "max_hops" => self.routing.max_hops = value.count(key)?,
            "reanchor_per_hop" => self.routing.reanchor_per_hop = value.flag(key)?,
            "seed" => {
                let v = value.num(key)?;
                if v < 0.0 || v.fract() != 0.0 {
                    return Err(Error::config(format!("seed must be a non-negative integer, got {v}")));
                }
                self.seed = v as u64;
            }
            "mc_runs" => self.mc_runs = value.count(key)?,
            other => return Err(Error::config(format!("unknown configuration key {other:?}"))),
        }
        Ok(())
    }

    /// Parses flat TOML on top of the built-in defaults.
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let mut cfg = NetworkConfig::default();
        cfg.apply_toml_str(text)?;
        Ok(cfg)
    }

    /// Applies flat TOML assignments to this config, then validates it.
    pub fn apply_toml_str(&mut self, text: &str) -> Result<()> {
        let table: toml::Table =
            toml::from_str(text).map_err(|e| Error::config(format!("malformed config: {e}")))?;
        for (key, value) in &table {
            if canonical_key(key) != key {
                return Err(Error::config(format!("unknown configuration key {key:?}")));
            }
            let value = match value {
                toml::Value::Integer(i) => ParamValue::Num(*i as f64),
                toml::Value::Float(f) => ParamValue::Num(*f),
                toml::Value::Boolean(b) => ParamValue::Bool(*b),
                toml::Value::String(s) => ParamValue::Str(s.clone()),
                _ => {
                    return Err(Error::config(format!(
                        "{key}: only flat number/bool/string values are allowed"
                    )))
                }
            };
            self.set(key, &value)?;
        }
        self.validate()
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
            if cond {
                Ok(())
            } else {
                Err(Error::Config(msg()))
            }
        }
        check(self.area_side > 0.0 && self.area_side.is_finite(), || {
            format!("area_side must be > 0, got {}", self.area_side)
        })?;
        check(self.num_anchors > 0 && self.num_anchors < self.num_uavs, || {
            format!(
                "need 0 < num_anchors < num_uavs, got {} anchors of {} UAVs",
                self.num_anchors, self.num_uavs
            )
        })?;
        check(
            self.altitude_min >= 0.0 && self.altitude_min <= self.altitude_max,
            || format!("need 0 <= altitude_min <= altitude_max, got [{}, {}]", self.altitude_min, self.altitude_max),
        )?;
        check(self.mc_runs >= 1, || "mc_runs must be >= 1".into())?;
        check(self.anchor_ring_radius >= 0.0, || "anchor_ring_radius must be >= 0".into())?;
        if let Some(l) = self.pp.lambda {
            check(l > 0.0 && l.is_finite(), || format!("lambda must be > 0, got {l}"))?;
        }
        check(self.pp.dim == 2 || self.pp.dim == 3, || format!("dim must be 2 or 3, got {}", self.pp.dim))?;
        check(self.pp.neighbor_order >= 1, || "neighbor_order must be >= 1".into())?;
        check(self.chan.alpha > 2.0, || format!("alpha must be > 2, got {}", self.chan.alpha))?;
        check(self.chan.noise_power >= 0.0, || "noise_power must be >= 0".into())?;
        check(self.fading.delta >= 1, || "delta must be an integer >= 1".into())?;

        let c = &self.cov;
        check(c.theta > 0.0 && c.theta.is_finite(), || format!("theta must be > 0, got {}", c.theta))?;
        check(c.serving_r >= 0.0 && c.serving_h >= 0.0 && c.h_bar >= 0.0, || {
            "serving_r, serving_h and h_bar must be >= 0".into()
        })?;
        check(
            c.exclusion_radius >= 0.0 && c.exclusion_radius < c.net_radius && c.net_radius.is_finite(),
            || format!("need 0 <= exclusion_radius < net_radius, got [{}, {}]", c.exclusion_radius, c.net_radius),
        )?;
        check(c.quad_tol > 0.0 && c.quad_tol <= 1e-3, || {
            format!("quad_tol must be in (0, 1e-3], got {}", c.quad_tol)
        })?;

        let k = &self.coll;
        check(k.xi > 0.0, || format!("xi must be > 0, got {}", k.xi))?;
        check(k.uav_radius_ref >= 0.0 && k.uav_radius_nbr >= 0.0, || "UAV radii must be >= 0".into())?;
        check(k.epsilon > 0.0 && k.epsilon < 1.0, || format!("epsilon must be in (0, 1), got {}", k.epsilon))?;

        self.routing.sector.validate()?;
        let r = &self.routing;
        check(r.r_min >= 0.0 && r.r_min < r.r_max, || {
            format!("need 0 <= r_min < r_max, got [{}, {}]", r.r_min, r.r_max)
        })?;
        check(r.p_cov_target > 0.0 && r.p_cov_target < 1.0, || "p_cov_target must be in (0, 1)".into())?;
        check(r.p_coll_target > 0.0 && r.p_coll_target < 1.0, || "p_coll_target must be in (0, 1)".into())?;
        check(r.max_hops >= 1, || "max_hops must be >= 1".into())?;
        if let Some(k) = self.scan_expected_nodes {
            check(k > 0.0, || "scan_expected_nodes must be > 0".into())?;
        }
        Ok(())
    }

    /// Node intensity used by every analytic model.
    ///
    /// Returns the explicit `lambda` when configured, otherwise the SUAV count
    /// divided by the region area (planar) or region volume (3D, spanning the
    /// altitude band).
    pub fn effective_lambda(&self) -> Result<f64> {
        if self.num_anchors == 0 || self.num_anchors >= self.num_uavs {
            return Err(Error::config(format!(
                "need 0 < num_anchors < num_uavs, got {} anchors of {} UAVs",
                self.num_anchors, self.num_uavs
            )));
        }
        if let Some(l) = self.pp.lambda {
            return Ok(l);
        }
        let suavs = (self.num_uavs - self.num_anchors) as f64;
        let area = self.area_side * self.area_side;
        match self.pp.dim {
            2 => Ok(suavs / area),
            3 => {
                let span = self.altitude_max - self.altitude_min;
                if span <= 0.0 {
                    return Err(Error::config(
                        "3D intensity needs a positive altitude span or an explicit lambda",
                    ));
                }
                Ok(suavs / (area * span))
            }
            d => Err(Error::config(format!("dim must be 2 or 3, got {d}"))),
        }
    }

    pub fn distance_law(&self) -> Result<DistanceLaw> {
        let law = DistanceLaw {
            lambda: self.effective_lambda()?,
            dim: self.pp.dim,
            neighbor_order: self.pp.neighbor_order,
        };
        law.validate()?;
        Ok(law)
    }

    /// Sector used by expected-progress analysis: the routing sector, with
    /// its radius replaced by the density-scaled one when
    /// `scan_expected_nodes` is set.
    pub fn progress_sector(&self) -> Result<SectorParams> {
        let mut sector = self.routing.sector;
        if let Some(k) = self.scan_expected_nodes {
            let lambda = self.effective_lambda()?;
            sector.scan_radius = (k / (lambda * PI)).sqrt();
        }
        sector.validate()?;
        Ok(sector)
    }

    /// Renders the config back to the flat file format.
    pub fn to_toml_string(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            out.push_str(k);
            out.push_str(" = ");
            out.push_str(&v);
            out.push('\n');
        };
        let num = |v: f64| format!("{v:?}");
        line("area_side", num(self.area_side));
        line("num_uavs", self.num_uavs.to_string());
        line("num_anchors", self.num_anchors.to_string());
        line("altitude_min", num(self.altitude_min));
        line("altitude_max", num(self.altitude_max));
        line("tbs_x", num(self.tbs_x));
        line("tbs_y", num(self.tbs_y));
        line("anchor_ring_radius", num(self.anchor_ring_radius));
        if let Some(l) = self.pp.lambda {
            line("lambda", num(l));
        }
        line("dim", self.pp.dim.to_string());
        line("neighbor_order", self.pp.neighbor_order.to_string());
        line("alpha", num(self.chan.alpha));
        line("noise_power", num(self.chan.noise_power));
        line("delta", self.fading.delta.to_string());
        line("theta_db", num(linear_to_db(self.cov.theta)));
        line("serving_r", num(self.cov.serving_r));
        line("serving_h", num(self.cov.serving_h));
        line("h_bar", num(self.cov.h_bar));
        line("exclusion_radius", num(self.cov.exclusion_radius));
        line("net_radius", num(self.cov.net_radius));
        line("quad_tol", num(self.cov.quad_tol));
        line(
            "interference_guard",
            match self.cov.guard {
                InterferenceGuard::NearestTransmitter => "\"nearest_transmitter\"".into(),
                InterferenceGuard::Exclusion => "\"exclusion\"".into(),
            },
        );
        line("xi", num(self.coll.xi));
        line("uav_radius_ref", num(self.coll.uav_radius_ref));
        line("uav_radius_nbr", num(self.coll.uav_radius_nbr));
        line("epsilon", num(self.coll.epsilon));
        line(
            "encounter_radius",
            match self.coll.encounter {
                EncounterRadius::Bare => "\"bare\"".into(),
                EncounterRadius::Shifted => "\"shifted\"".into(),
            },
        );
        line("sector_angle", num(self.routing.sector.phi));
        line("scan_radius", num(self.routing.sector.scan_radius));
        if let Some(k) = self.scan_expected_nodes {
            line("scan_expected_nodes", num(k));
        }
        line("r_min", num(self.routing.r_min));
        line("r_max", num(self.routing.r_max));
        line("p_cov_target", num(self.routing.p_cov_target));
        line("p_coll_target", num(self.routing.p_coll_target));
        line("max_hops", self.routing.max_hops.to_string());
        line("reanchor_per_hop", self.routing.reanchor_per_hop.to_string());
        line("seed", self.seed.to_string());
        line("mc_runs", self.mc_runs.to_string());
        out
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}
