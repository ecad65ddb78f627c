//! MO3DR: multi-hop opportunistic 3D routing towards the nearest anchor.
//!
//! At every hop the forwarder demarcates a sector of opening φ around the
//! horizontal direction to the destination anchor, keeps the nodes whose 3D
//! distance falls in the admissible band, and hands the packet to the
//! candidate with the largest projection onto the direct path.

pub mod progress;

use serde::{Deserialize, Serialize};

use crate::deploy::{Deployment, Point3, UavNode};
use crate::error::{Error, Result};
use crate::model::{RoutingParams, SectorParams};

/// Relative tolerance under which two projections count as tied.
const TIE_TOL: f64 = 1e-9;

/// Anchor with the smallest 3D distance to `src`; ties go to the lower id.
pub fn nearest_anchor<'a>(src: &UavNode, dep: &'a Deployment) -> Result<&'a UavNode> {
    dep.anchors()
        .map(|a| (src.distance(a), a))
        .min_by(|(da, a), (db, b)| da.total_cmp(db).then(a.id.cmp(&b.id)))
        .map(|(_, a)| a)
        .ok_or_else(|| Error::config("deployment has no anchor UAV"))
}

/// Horizontal angle between `from → to` and `from → dest`, in `[0, π]`.
///
/// A degenerate horizontal direction (a node straight above or below) has no
/// defined bearing and is treated as on-axis.
pub fn angular_offset(from: &Point3, to: &Point3, dest: &Point3) -> f64 {
    let (ax, ay) = (dest.x - from.x, dest.y - from.y);
    let (vx, vy) = (to.x - from.x, to.y - from.y);
    if (ax == 0.0 && ay == 0.0) || (vx == 0.0 && vy == 0.0) {
        return 0.0;
    }
    let cross = ax * vy - ay * vx;
    let dot = ax * vx + ay * vy;
    cross.atan2(dot).abs()
}

fn in_sector(ni: &UavNode, node: &UavNode, dest: &UavNode, sp: &SectorParams) -> bool {
    node.id != ni.id
        && ni.distance(node) <= sp.scan_radius
        && angular_offset(&ni.position(), &node.position(), &dest.position()) <= 0.5 * sp.phi + 1e-12
}

/// Nodes other than `ni` within the forwarding sector towards `dest`.
pub fn sector_members<'a>(
    ni: &UavNode,
    dest: &UavNode,
    sp: &SectorParams,
    dep: &'a Deployment,
) -> Vec<&'a UavNode> {
    dep.nodes.iter().filter(|n| in_sector(ni, n, dest, sp)).collect()
}

/// Members whose 3D distance from `ni` lies in the closed band `[r_min, r_max]`.
pub fn admissible_candidates<'a>(
    members: &[&'a UavNode],
    ni: &UavNode,
    rp: &RoutingParams,
) -> Vec<&'a UavNode> {
    members
        .iter()
        .copied()
        .filter(|n| {
            let d = ni.distance(n);
            d >= rp.r_min && d <= rp.r_max
        })
        .collect()
}

/// Projection of `ni → c` onto the unit `ni → dest` axis, and the
/// perpendicular divergence from that axis.
pub fn hop_score(ni: &UavNode, c: &UavNode, dest: &UavNode) -> (f64, f64) {
    let (a, v) = (sub(dest, ni), sub(c, ni));
    let norm = dot(a, a).sqrt();
    let len2 = dot(v, v);
    if norm == 0.0 {
        return (0.0, len2.sqrt());
    }
    let proj = dot(v, a) / norm;
    (proj, (len2 - proj * proj).max(0.0).sqrt())
}

fn sub(p: &UavNode, q: &UavNode) -> [f64; 3] {
    [p.x - q.x, p.y - q.y, p.h - q.h]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn nearly_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOL * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

/// Picks the next forwarder among `candidates`.
///
/// The destination wins outright when admissible. Otherwise the candidate
/// with the largest projection onto the direct path is chosen, ties broken
/// by smaller divergence and then lower id. Candidates that make no forward
/// progress are never selected.
pub fn select_next_hop<'a>(
    candidates: &[&'a UavNode],
    ni: &UavNode,
    dest: &UavNode,
) -> Result<&'a UavNode> {
    if let Some(d) = candidates.iter().find(|c| c.id == dest.id) {
        return Ok(d);
    }
    let mut best: Option<(&UavNode, f64, f64)> = None;
    for &c in candidates {
        let (proj, div) = hop_score(ni, c, dest);
        if !(proj > 0.0) {
            continue;
        }
        let better = match best {
            None => true,
            Some((b, bp, bd)) => {
                if nearly_equal(proj, bp) {
                    if nearly_equal(div, bd) {
                        c.id < b.id
                    } else {
                        div < bd
                    }
                } else {
                    proj > bp
                }
            }
        };
        if better {
            best = Some((c, proj, div));
        }
    }
    best.map(|(c, _, _)| c).ok_or(Error::NoCandidate)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoutePath {
    pub hops: Vec<usize>,
    pub per_hop_progress: Vec<f64>,
    pub total_hops: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RouteStatus {
    Delivered,
    NoCandidate,
    HopLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RouteResult {
    pub source: usize,
    /// Destination anchor when the route ended (it may move if re-anchoring
    /// per hop is enabled).
    pub destination: usize,
    pub path: RoutePath,
    pub status: RouteStatus,
}

/// Exported route record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteRecord {
    pub source: usize,
    pub destination: usize,
    pub hops: Vec<usize>,
    pub per_hop_progress: Vec<f64>,
    pub status: RouteStatus,
}

impl RouteResult {
    pub fn delivered(&self) -> bool {
        self.status == RouteStatus::Delivered
    }

    pub fn record(&self) -> RouteRecord {
        RouteRecord {
            source: self.source,
            destination: self.destination,
            hops: self.path.hops.clone(),
            per_hop_progress: self.path.per_hop_progress.clone(),
            status: self.status,
        }
    }
}

/// Routes a packet from SUAV `source` to its nearest anchor.
///
/// Nodes already on the path are never revisited. Failures return the
/// partial path with the reason in `status`.
pub fn route(source: usize, dep: &Deployment, rp: &RoutingParams) -> Result<RouteResult> {
    rp.validate()?;
    let src = dep
        .node(source)
        .ok_or_else(|| Error::domain(format!("no node with id {source}")))?;
    if src.is_anchor() {
        return Err(Error::domain(format!("route source {source} is an anchor, not a SUAV")));
    }
    let mut dest = nearest_anchor(src, dep)?;
    let mut current = src;
    let mut visited = vec![false; dep.nodes.len()];
    visited[source] = true;
    let mut hops = vec![source];
    let mut progress = Vec::new();

    let status = loop {
        if progress.len() >= rp.max_hops {
            break RouteStatus::HopLimit;
        }
        if rp.reanchor_per_hop && !progress.is_empty() {
            dest = nearest_anchor(current, dep)?;
        }
        let members = sector_members(current, dest, &rp.sector, dep);
        let candidates: Vec<&UavNode> = admissible_candidates(&members, current, rp)
            .into_iter()
            .filter(|c| !visited[c.id])
            .collect();
        match select_next_hop(&candidates, current, dest) {
            Ok(next) => {
                progress.push(hop_score(current, next, dest).0);
                hops.push(next.id);
                visited[next.id] = true;
                current = next;
                if next.id == dest.id {
                    break RouteStatus::Delivered;
                }
            }
            Err(Error::NoCandidate) => break RouteStatus::NoCandidate,
            Err(e) => return Err(e),
        }
    };
    let total_hops = progress.len();
    Ok(RouteResult {
        source,
        destination: dest.id,
        path: RoutePath {
            hops,
            per_hop_progress: progress,
            total_hops,
        },
        status,
    })
}

/// Routes every SUAV of the deployment, in id order.
pub fn route_all(dep: &Deployment, rp: &RoutingParams) -> Result<Vec<RouteResult>> {
    dep.surveillance().map(|s| route(s.id, dep, rp)).collect()
}
