//! UAV deployments: SUAVs scattered uniformly over the square region, AUAVs
//! on a ring around the terrestrial base station.

use std::f64::consts::PI;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::NetworkConfig;
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub h: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, h: f64) -> Self {
        Point3 { x, y, h }
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        let (dx, dy, dh) = (other.x - self.x, other.y - self.y, other.h - self.h);
        (dx * dx + dy * dy + dh * dh).sqrt()
    }

    pub fn horizontal_distance(&self, other: &Point3) -> f64 {
        (other.x - self.x).hypot(other.y - self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    #[serde(rename = "SUAV")]
    Surveillance,
    #[serde(rename = "AUAV")]
    Anchor,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UavNode {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub h: f64,
    pub role: Role,
}

impl UavNode {
    pub fn new(id: usize, x: f64, y: f64, h: f64, role: Role) -> Self {
        UavNode { id, x, y, h, role }
    }

    pub fn position(&self) -> Point3 {
        Point3::new(self.x, self.y, self.h)
    }

    pub fn distance(&self, other: &UavNode) -> f64 {
        self.position().distance(&other.position())
    }

    pub fn is_anchor(&self) -> bool {
        self.role == Role::Anchor
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deployment {
    pub nodes: Vec<UavNode>,
    pub tbs: Point3,
}

impl Deployment {
    /// Builds a deployment from explicit nodes, checking id contiguity.
    pub fn new(nodes: Vec<UavNode>, tbs: Point3) -> Result<Self> {
        for (i, n) in nodes.iter().enumerate() {
            if n.id != i {
                return Err(Error::config(format!(
                    "node ids must be contiguous from 0; position {i} has id {}",
                    n.id
                )));
            }
        }
        Ok(Deployment { nodes, tbs })
    }

    pub fn node(&self, id: usize) -> Option<&UavNode> {
        self.nodes.get(id)
    }

    pub fn anchors(&self) -> impl Iterator<Item = &UavNode> {
        self.nodes.iter().filter(|n| n.is_anchor())
    }

    pub fn surveillance(&self) -> impl Iterator<Item = &UavNode> {
        self.nodes.iter().filter(|n| !n.is_anchor())
    }

    /// JSON array of `{id, x, y, h, role}`.
    pub fn nodes_json(&self) -> String {
        serde_json::to_string_pretty(&self.nodes).expect("nodes serialize")
    }
}

/// Anchor positions, evenly spaced on the ring around the TBS at the lowest
/// operating altitude.
pub fn anchor_positions(cfg: &NetworkConfig) -> Result<Vec<Point3>> {
    let count = cfg.num_anchors;
    let radius = cfg.anchor_ring_radius;
    if count == 0 {
        return Err(Error::config("at least one anchor UAV is required"));
    }
    if count > 1 {
        let chord = 2.0 * radius * (PI / count as f64).sin();
        let min_gap = cfg.coll.uav_radius_ref + cfg.coll.uav_radius_nbr;
        if chord <= min_gap || radius == 0.0 {
            return Err(Error::config(format!(
                "anchor ring of radius {radius} m cannot hold {count} anchors without overlap"
            )));
        }
    }
    let positions: Vec<Point3> = (0..count)
        .map(|k| {
            let angle = 2.0 * PI * k as f64 / count as f64;
            Point3::new(
                cfg.tbs_x + radius * angle.cos(),
                cfg.tbs_y + radius * angle.sin(),
                cfg.altitude_min,
            )
        })
        .collect();
    let side = cfg.area_side;
    let eps = 1e-9 * side;
    if positions
        .iter()
        .any(|p| p.x < -eps || p.y < -eps || p.x > side + eps || p.y > side + eps)
    {
        return Err(Error::config(format!(
            "anchor ring of radius {radius} m around ({}, {}) leaves the {side} m region",
            cfg.tbs_x, cfg.tbs_y
        )));
    }
    Ok(positions)
}

/// Samples a deployment: anchors get ids `0..num_anchors`, SUAVs follow.
///
/// SUAV positions are i.i.d. uniform over the square and altitudes i.i.d.
/// uniform over the altitude band. Output is a pure function of
/// `(cfg, seed)`.
pub fn sample_deployment(cfg: &NetworkConfig, seed: u64) -> Result<Deployment> {
    cfg.validate()?;
    let anchors = anchor_positions(cfg)?;
    let mut nodes = Vec::with_capacity(cfg.num_uavs);
    for (id, p) in anchors.iter().enumerate() {
        nodes.push(UavNode::new(id, p.x, p.y, p.h, Role::Anchor));
    }
    let mut rng = rng::substream(seed, 0);
    let span = cfg.altitude_max - cfg.altitude_min;
    for id in cfg.num_anchors..cfg.num_uavs {
        let x = cfg.area_side * rng.random::<f64>();
        let y = cfg.area_side * rng.random::<f64>();
        let h = cfg.altitude_min + span * rng.random::<f64>();
        nodes.push(UavNode::new(id, x, y, h, Role::Surveillance));
    }
    Ok(Deployment {
        nodes,
        tbs: Point3::new(cfg.tbs_x, cfg.tbs_y, 0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_cfg() -> NetworkConfig {
        NetworkConfig {
            num_uavs: 5,
            num_anchors: 1,
            ..NetworkConfig::default()
        }
    }

    #[test]
    fn same_seed_same_deployment() {
        let cfg = small_cfg();
        let a = sample_deployment(&cfg, 7).unwrap();
        let b = sample_deployment(&cfg, 7).unwrap();
        assert_eq!(a, b);
        let c = sample_deployment(&cfg, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn zero_anchors_is_config_error() {
        let mut cfg = small_cfg();
        cfg.num_anchors = 0;
        assert!(matches!(sample_deployment(&cfg, 1), Err(Error::Config(_))));
    }

    #[test]
    fn roles_and_bounds() {
        let mut cfg = NetworkConfig::default();
        cfg.num_uavs = 40;
        cfg.num_anchors = 3;
        let dep = sample_deployment(&cfg, 11).unwrap();
        assert_eq!(dep.nodes.len(), 40);
        assert_eq!(dep.anchors().count(), 3);
        assert_eq!(dep.anchors().count() + dep.surveillance().count(), 40);
        for (i, n) in dep.nodes.iter().enumerate() {
            assert_eq!(n.id, i);
            assert!((0.0..=cfg.area_side).contains(&n.x));
            assert!((0.0..=cfg.area_side).contains(&n.y));
            assert!(n.h >= cfg.altitude_min && n.h <= cfg.altitude_max);
        }
        assert_eq!(dep.tbs.h, 0.0);
    }

    #[test]
    fn anchors_on_ring() {
        let mut cfg = NetworkConfig::default();
        cfg.num_anchors = 4;
        let dep = sample_deployment(&cfg, 3).unwrap();
        for a in dep.anchors() {
            let d = (a.x - cfg.tbs_x).hypot(a.y - cfg.tbs_y);
            assert!((d - cfg.anchor_ring_radius).abs() < 1e-9);
            assert_eq!(a.h, cfg.altitude_min);
        }
    }

    #[test]
    fn crowded_ring_rejected() {
        let mut cfg = NetworkConfig::default();
        cfg.num_uavs = 30;
        cfg.num_anchors = 20;
        cfg.anchor_ring_radius = 1.0;
        assert!(matches!(sample_deployment(&cfg, 1), Err(Error::Config(_))));
    }

    #[test]
    fn ring_outside_region_rejected() {
        let mut cfg = NetworkConfig::default();
        cfg.tbs_x = 10.0;
        cfg.num_anchors = 4;
        cfg.anchor_ring_radius = 50.0;
        assert!(sample_deployment(&cfg, 1).is_err());
    }

    #[test]
    fn flat_altitude_band() {
        let mut cfg = small_cfg();
        cfg.altitude_max = cfg.altitude_min;
        let dep = sample_deployment(&cfg, 2).unwrap();
        assert!(dep.nodes.iter().all(|n| n.h == cfg.altitude_min));
    }

    #[test]
    fn json_export_schema() {
        let dep = sample_deployment(&small_cfg(), 5).unwrap();
        let v: serde_json::Value = serde_json::from_str(&dep.nodes_json()).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 5);
        let first = arr[0].as_object().unwrap();
        let mut keys: Vec<&str> = first.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(keys, ["h", "id", "role", "x", "y"]);
        assert_eq!(first["role"], "AUAV");
        assert_eq!(arr[1]["role"], "SUAV");
    }
}
