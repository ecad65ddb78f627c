//! Pathloss, Nakagami fading and SIR primitives.

use rand::Rng;
use rand_distr::{Distribution, Gamma};

use crate::error::{Error, Result};
use crate::model::FadingParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGeometry {
    /// Horizontal separation between transmitter and receiver, meters.
    pub r: f64,
    /// Transmitter altitude term, meters.
    pub h: f64,
}

impl LinkGeometry {
    pub fn new(r: f64, h: f64) -> Self {
        LinkGeometry { r, h }
    }
}

/// Fading power gain.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FadingDraw(pub f64);

/// `(r² + h²)^(-α/2)`.
pub fn pathloss(g: LinkGeometry, alpha: f64) -> Result<f64> {
    if !(g.r >= 0.0 && g.h >= 0.0) {
        return Err(Error::domain(format!(
            "link geometry must be non-negative, got r={} h={}",
            g.r, g.h
        )));
    }
    let d2 = g.r * g.r + g.h * g.h;
    if d2 == 0.0 {
        return Err(Error::domain("pathloss is singular at zero separation"));
    }
    Ok(d2.powf(-0.5 * alpha))
}

/// Unit-mean Nakagami power sampler: Gamma(shape δ, scale 1/δ).
#[derive(Debug, Clone, Copy)]
pub struct FadingSampler {
    gamma: Gamma<f64>,
}

impl FadingSampler {
    pub fn new(fp: &FadingParams) -> Result<Self> {
        if fp.delta < 1 {
            return Err(Error::domain("fading shape must be >= 1"));
        }
        let delta = fp.delta as f64;
        let gamma = Gamma::new(delta, 1.0 / delta)
            .map_err(|e| Error::domain(format!("fading shape {delta}: {e}")))?;
        Ok(FadingSampler { gamma })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> FadingDraw {
        FadingDraw(self.gamma.sample(rng))
    }
}

pub fn sample_fading<R: Rng + ?Sized>(fp: &FadingParams, rng: &mut R) -> Result<FadingDraw> {
    Ok(FadingSampler::new(fp)?.sample(rng))
}

pub fn received_power(fading: FadingDraw, g: LinkGeometry, alpha: f64) -> Result<f64> {
    Ok(fading.0 * pathloss(g, alpha)?)
}

/// `signal / interference`; zero interference yields `+inf`.
pub fn sir(signal: f64, interference: f64) -> Result<f64> {
    if signal < 0.0 || interference < 0.0 || signal.is_nan() || interference.is_nan() {
        return Err(Error::domain(format!(
            "powers must be non-negative, got S={signal} I={interference}"
        )));
    }
    if interference == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(signal / interference)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::substream;
    use proptest::prelude::*;

    #[test]
    fn pathloss_examples() {
        assert!((pathloss(LinkGeometry::new(30.0, 40.0), 2.0).unwrap() - 4.0e-4).abs() < 1e-18);
        assert!((pathloss(LinkGeometry::new(0.0, 10.0), 4.0).unwrap() - 1e-4).abs() < 1e-18);
        // log-domain evaluation of 50^-3.4
        let direct = pathloss(LinkGeometry::new(50.0, 0.0), 3.4).unwrap();
        let log_domain = (-3.4 * 50f64.ln()).exp();
        assert!((direct / log_domain - 1.0).abs() < 1e-13);
    }

    #[test]
    fn pathloss_singularity() {
        assert!(matches!(
            pathloss(LinkGeometry::new(0.0, 0.0), 3.0),
            Err(Error::Domain(_))
        ));
        assert!(pathloss(LinkGeometry::new(-1.0, 3.0), 3.0).is_err());
    }

    #[test]
    fn received_power_examples() {
        let g = LinkGeometry::new(12.0, 7.0);
        assert_eq!(
            received_power(FadingDraw(1.0), g, 3.4).unwrap(),
            pathloss(g, 3.4).unwrap()
        );
        let p = received_power(FadingDraw(2.0), LinkGeometry::new(0.0, 10.0), 4.0).unwrap();
        assert!((p - 2e-4).abs() < 1e-18);
    }

    #[test]
    fn sir_examples() {
        assert_eq!(sir(2.0, 4.0).unwrap(), 0.5);
        assert_eq!(sir(1.0, 0.0).unwrap(), f64::INFINITY);
        assert_eq!(sir(1e-8, 2e-8).unwrap(), 0.5);
        assert_eq!(sir(1e-5, 2e-5).unwrap(), 0.5);
        assert!(sir(-1.0, 1.0).is_err());
        assert!(sir(1.0, -1.0).is_err());
    }

    fn moments(delta: u32, n: usize, seed: u64) -> (f64, f64) {
        let sampler = FadingSampler::new(&FadingParams { delta }).unwrap();
        let mut rng = substream(seed, 0);
        let xs: Vec<f64> = (0..n).map(|_| sampler.sample(&mut rng).0).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        (mean, var)
    }

    #[test]
    fn fading_unit_mean_and_variance() {
        let (mean, var) = moments(3, 1_000_000, 17);
        assert!((0.997..=1.003).contains(&mean), "mean {mean}");
        // Gamma(δ, 1/δ) has variance 1/δ.
        assert!((var / (1.0 / 3.0) - 1.0).abs() < 0.02, "var {var}");
    }

    #[test]
    fn rayleigh_power_is_unit_exponential() {
        let sampler = FadingSampler::new(&FadingParams { delta: 1 }).unwrap();
        let mut rng = substream(5, 0);
        let n = 1_000_000;
        let mut xs: Vec<f64> = (0..n).map(|_| sampler.sample(&mut rng).0).collect();
        xs.sort_by(f64::total_cmp);
        let mut d: f64 = 0.0;
        for (i, &x) in xs.iter().enumerate() {
            let f = 1.0 - (-x).exp();
            d = d.max((f - i as f64 / n as f64).abs()).max(((i + 1) as f64 / n as f64 - f).abs());
        }
        // Kolmogorov critical value at significance 0.01.
        let critical = 1.628 / (n as f64).sqrt();
        assert!(d < critical, "KS statistic {d} >= {critical}");
    }

    #[test]
    fn averaged_received_power_matches_pathloss() {
        let g = LinkGeometry::new(40.0, 25.0);
        let l = pathloss(g, 3.4).unwrap();
        let sampler = FadingSampler::new(&FadingParams { delta: 2 }).unwrap();
        let mut rng = substream(9, 0);
        let n = 1_000_000;
        let mean = (0..n)
            .map(|_| received_power(sampler.sample(&mut rng), g, 3.4).unwrap())
            .sum::<f64>()
            / n as f64;
        assert!((mean / l - 1.0).abs() < 0.005);
    }

    proptest! {
        #[test]
        fn pathloss_decreasing(r1 in 0.0..500.0f64, dr in 0.01..500.0f64, h in 0.1..300.0f64, alpha in 2.01..6.0f64) {
            let a = pathloss(LinkGeometry::new(r1, h), alpha).unwrap();
            let b = pathloss(LinkGeometry::new(r1 + dr, h), alpha).unwrap();
            prop_assert!(a > b);
            let c = pathloss(LinkGeometry::new(h, r1), alpha).unwrap();
            let d = pathloss(LinkGeometry::new(h, r1 + dr), alpha).unwrap();
            prop_assert!(c > d);
        }

        #[test]
        fn pathloss_decreasing_in_alpha(r in 1.5..500.0f64, h in 0.0..300.0f64, alpha in 2.01..6.0f64, da in 0.01..2.0f64) {
            let g = LinkGeometry::new(r, h);
            prop_assert!(pathloss(g, alpha).unwrap() > pathloss(g, alpha + da).unwrap());
        }

        #[test]
        fn sir_scale_invariant(s in 1e-12..1e3f64, i in 1e-12..1e3f64, c in 1e-6..1e6f64) {
            let a = sir(s, i).unwrap();
            let b = sir(c * s, c * i).unwrap();
            prop_assert!((a / b - 1.0).abs() < 1e-12);
        }
    }
}
