//! Admissible inter-UAV distance band: the collision constraint sets the
//! lower edge and the coverage constraint the upper edge.

use serde::Serialize;

use crate::collision::solve_r_min;
use crate::coverage::CoverageModel;
use crate::error::{Error, Result};
use crate::model::{EncounterRadius, NetworkConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Band {
    pub r_min: f64,
    /// `None` when no distance meets the coverage target.
    pub r_max: Option<f64>,
    pub feasible: bool,
    pub note: Option<String>,
}

/// Deduces `[R_min, R_max]` from the collision threshold `epsilon` and the
/// coverage target `p_cov_target` of `cfg`.
pub fn deduce_band(cfg: &NetworkConfig) -> Result<Band> {
    cfg.validate()?;
    let k = &cfg.coll;
    let mut r_min = solve_r_min(k.xi, k.epsilon)?;
    if k.encounter == EncounterRadius::Shifted {
        r_min += k.uav_radius_ref + k.uav_radius_nbr;
    }
    let model = CoverageModel::from_config(cfg)?;
    let (r_max, note) = match model.solve_r_max(cfg.routing.p_cov_target, cfg.cov.serving_h) {
        Ok(r) => (Some(r), None),
        Err(Error::Unattainable { reason, .. }) => (None, Some(reason)),
        Err(e) => return Err(e),
    };
    let feasible = r_max.is_some_and(|r| r >= r_min);
    let note = note.or_else(|| {
        (!feasible).then(|| format!("coverage limit {:.4} m lies below the collision limit", r_max.unwrap_or(0.0)))
    });
    Ok(Band {
        r_min,
        r_max,
        feasible,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn band_edges() {
        let mut cfg = NetworkConfig::default();
        cfg.coll.xi = 0.8;
        let band = deduce_band(&cfg).unwrap();
        assert!((band.r_min - 8.41).abs() < 0.01);
        let r_max = band.r_max.unwrap();
        let model = CoverageModel::from_config(&cfg).unwrap();
        assert!(model.coverage_conditional(r_max, cfg.cov.serving_h).unwrap() >= cfg.routing.p_cov_target);
        assert_eq!(band.feasible, r_max >= band.r_min);

        cfg.coll.encounter = EncounterRadius::Shifted;
        assert!((deduce_band(&cfg).unwrap().r_min - 9.41).abs() < 0.01);
    }
}
