//! SIR coverage under Nakagami fading with PPP interferers.
//!
//! The interference Laplace transform is `L(s) = exp(g(s))` with
//!
//! ```text
//! g(s) = -2πλ ∫ [1 - (1 + (s/δ) l(t))^(-δ)] t dt
//! ```
//!
//! over the interference annulus, where `l(t) = (t² + h̄²)^(-α/2)`. Every
//! integrand is evaluated in the log domain so that huge `s·l` values near
//! the origin neither overflow nor cancel.

use std::cell::RefCell;
use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::Serialize;
use statrs::function::gamma::gamma_ur;

use crate::channel::{pathloss, FadingSampler, LinkGeometry};
use crate::distance::distance_pdf;
use crate::error::{Error, Result};
use crate::model::{CoverageParams, DistanceLaw, FadingParams, InterferenceGuard, NetworkConfig};
use crate::quadrature::Integrator;
use crate::rng::{self, McEstimate};

/// Raw probabilities this far outside `[0, 1]` are clamped; anything larger
/// is reported as a numeric error.
const CLAMP_SLACK: f64 = 1e-3;

/// Annulus `[inner, outer]` holding the interferers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InterferenceWindow {
    pub inner: f64,
    pub outer: f64,
}

impl InterferenceWindow {
    pub fn is_empty(&self) -> bool {
        self.inner >= self.outer
    }

    /// Expected number of interferers at intensity `lambda`.
    pub fn mean_count(&self, lambda: f64) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            lambda * PI * (self.outer * self.outer - self.inner * self.inner)
        }
    }
}

/// Everything the coverage formulas depend on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageModel {
    pub params: CoverageParams,
    pub alpha: f64,
    pub delta: u32,
    pub lambda: f64,
}

/// `ln(1 + e^x)` without overflow.
fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Rising factorial `(δ)_j`.
fn rising(delta: f64, j: u32) -> f64 {
    (0..j).map(|i| delta + i as f64).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

impl CoverageModel {
    pub fn new(params: CoverageParams, alpha: f64, delta: u32, lambda: f64) -> Result<Self> {
        let m = CoverageModel {
            params,
            alpha,
            delta,
            lambda,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn from_config(cfg: &NetworkConfig) -> Result<Self> {
        Self::new(
            cfg.cov.clone(),
            cfg.chan.alpha,
            cfg.fading.delta,
            cfg.effective_lambda()?,
        )
    }

    fn validate(&self) -> Result<()> {
        let c = &self.params;
        if !(c.theta > 0.0 && c.theta.is_finite()) {
            return Err(Error::config(format!("theta must be > 0, got {}", c.theta)));
        }
        if !(self.alpha > 2.0) {
            return Err(Error::config(format!("alpha must be > 2, got {}", self.alpha)));
        }
        if self.delta < 1 {
            return Err(Error::config("delta must be >= 1"));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::config(format!("lambda must be >= 0, got {}", self.lambda)));
        }
        if !(c.exclusion_radius >= 0.0 && c.exclusion_radius < c.net_radius && c.net_radius.is_finite()) {
            return Err(Error::config(format!(
                "need 0 <= exclusion_radius < net_radius, got [{}, {}]",
                c.exclusion_radius, c.net_radius
            )));
        }
        if !(c.h_bar >= 0.0) {
            return Err(Error::config("h_bar must be >= 0"));
        }
        if !(c.quad_tol > 0.0 && c.quad_tol <= 1e-3) {
            return Err(Error::config(format!("quad_tol must be in (0, 1e-3], got {}", c.quad_tol)));
        }
        Ok(())
    }

    pub fn fading(&self) -> FadingParams {
        FadingParams { delta: self.delta }
    }

    /// Interference annulus for a serving link at horizontal distance `r`.
    pub fn interference_window(&self, r: f64) -> InterferenceWindow {
        let c = &self.params;
        let inner = match c.guard {
            InterferenceGuard::NearestTransmitter => c.exclusion_radius.max(r),
            InterferenceGuard::Exclusion => c.exclusion_radius,
        };
        InterferenceWindow {
            inner: inner.min(c.net_radius),
            outer: c.net_radius,
        }
    }

    /// `s = θ δ (r² + h²)^(α/2)`.
    pub fn transform_variable(&self, r: f64, h: f64) -> Result<f64> {
        let l = pathloss(LinkGeometry::new(r, h), self.alpha)?;
        Ok(self.params.theta * self.delta as f64 / l)
    }

    /// `ln(l(t)/δ)`.
    fn log_scaled_gain(&self, t: f64) -> f64 {
        let hb = self.params.h_bar;
        -0.5 * self.alpha * (t * t + hb * hb).ln() - (self.delta as f64).ln()
    }

    fn integrate(&self, f: impl Fn(f64) -> f64, w: InterferenceWindow) -> Result<f64> {
        if w.is_empty() {
            return Ok(0.0);
        }
        let q = Integrator::new(self.params.quad_tol).integrate(f, w.inner, w.outer)?;
        Ok(q.value)
    }

    /// `g(s)` over the window.
    pub fn laplace_exponent(&self, s: f64, w: InterferenceWindow) -> Result<f64> {
        Ok(self.exponent_derivatives(s, w, 0)?[0])
    }

    /// `g^(j)(s)` for `j = 0..=k_max`.
    pub fn exponent_derivatives(&self, s: f64, w: InterferenceWindow, k_max: u32) -> Result<Vec<f64>> {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::domain(format!("transform variable must be >= 0, got {s}")));
        }
        let delta = self.delta as f64;
        let ln_s = s.ln();
        let scale = 2.0 * PI * self.lambda;
        let mut out = Vec::with_capacity(k_max as usize + 1);
        if self.lambda == 0.0 || w.is_empty() {
            out.resize(k_max as usize + 1, 0.0);
            return Ok(out);
        }

        if s == 0.0 {
            out.push(0.0);
        } else {
            let v = self.integrate(
                |t| {
                    let lc = self.log_scaled_gain(t);
                    -(-delta * softplus(ln_s + lc)).exp_m1() * t
                },
                w,
            )?;
            out.push(-scale * v);
        }

        for j in 1..=k_max {
            let jf = j as f64;
            let v = self.integrate(
                |t| {
                    let lc = self.log_scaled_gain(t);
                    (jf * lc - (delta + jf) * softplus(ln_s + lc)).exp() * t
                },
                w,
            )?;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            out.push(scale * sign * rising(delta, j) * v);
        }
        Ok(out)
    }

    /// `L^(j)(s)` for `j = 0..=k_max`.
    pub fn laplace_derivatives(&self, s: f64, w: InterferenceWindow, k_max: u32) -> Result<Vec<f64>> {
        let g = self.exponent_derivatives(s, w, k_max)?;
        let l0 = g[0].exp();
        Ok(normalized_derivatives(&g).into_iter().map(|m| m * l0).collect())
    }

    /// Summands `(-s)^k / k! · L^(k)(s)` for `k < δ`.
    pub fn coverage_terms(&self, r: f64, h: f64) -> Result<Vec<f64>> {
        let s = self.transform_variable(r, h)?;
        if s == 0.0 {
            let mut t = vec![0.0; self.delta as usize];
            t[0] = 1.0;
            return Ok(t);
        }
        let w = self.interference_window(r);
        let g = self.exponent_derivatives(s, w, self.delta - 1)?;
        let terms = normalized_derivatives(&g)
            .into_iter()
            .enumerate()
            .map(|(k, m)| {
                if m == 0.0 {
                    return 0.0;
                }
                // s^k M_k can be huge while L(s) underflows, so combine in logs.
                let k = k as u32;
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let log_mag = k as f64 * s.ln() + m.abs().ln() - factorial(k).ln() + g[0];
                sign * m.signum() * log_mag.exp()
            })
            .collect();
        Ok(terms)
    }

    /// Coverage probability conditioned on the serving link geometry.
    pub fn coverage_conditional(&self, r: f64, h: f64) -> Result<f64> {
        let raw: f64 = self.coverage_terms(r, h)?.iter().sum();
        clamp_probability(raw)
    }

    /// Coverage averaged over the serving distance `R_n` of `law`, with the
    /// serving link altitude term fixed at `h`.
    pub fn coverage_marginal(&self, law: &DistanceLaw, h: f64) -> Result<f64> {
        law.validate()?;
        if law.dim != 2 {
            return Err(Error::domain("marginal coverage is defined for planar processes"));
        }
        let n = law.neighbor_order as f64;
        // Upper limit where the serving-distance tail mass is negligible.
        let mut x_hi = n + 10.0 * n.sqrt() + 30.0;
        while gamma_ur(n, x_hi) > 1e-14 {
            x_hi *= 1.5;
        }
        let r_hi = (x_hi / (law.lambda * PI)).sqrt();
        let failure = RefCell::new(None);
        let integrand = |r: f64| {
            if r <= 0.0 {
                return 0.0;
            }
            let res = self
                .coverage_conditional(r, h)
                .and_then(|p| Ok(p * distance_pdf(r, law)?));
            match res {
                Ok(v) => v,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    0.0
                }
            }
        };
        let q = Integrator::new(self.params.quad_tol.max(1e-7))
            .with_abs_tol(1e-12)
            .integrate(integrand, 0.0, r_hi);
        if let Some(e) = failure.into_inner() {
            return Err(e);
        }
        clamp_probability(q?.value)
    }

    /// Monte-Carlo coverage for a serving link at `(r, h)`: interferers form
    /// a PPP on the same annulus as the analytic model.
    pub fn coverage_mc(&self, r: f64, h: f64, seed: u64, trials: u64) -> Result<McEstimate> {
        if trials == 0 {
            return Err(Error::domain("coverage_mc needs at least one trial"));
        }
        let signal_gain = pathloss(LinkGeometry::new(r, h), self.alpha)?;
        let w = self.interference_window(r);
        let mean = w.mean_count(self.lambda);
        let poisson = if mean > 0.0 {
            Some(Poisson::new(mean).map_err(|e| Error::Numeric(format!("poisson mean {mean}: {e}")))?)
        } else {
            None
        };
        let fading = FadingSampler::new(&self.fading())?;
        let (r2_in, r2_span) = (w.inner * w.inner, w.outer * w.outer - w.inner * w.inner);
        let hb2 = self.params.h_bar * self.params.h_bar;
        let half_alpha = 0.5 * self.alpha;
        let theta = self.params.theta;

        let hits = rng::count_successes(seed, trials, |rng| {
            let signal = fading.sample(rng).0 * signal_gain;
            let count = poisson.map_or(0, |p| p.sample(rng) as u64);
            // Interference only grows, so stop once the threshold is crossed.
            let budget = signal / theta;
            let mut interference = 0.0;
            for _ in 0..count {
                let t2 = r2_in + r2_span * rng.random::<f64>();
                interference += fading.sample(rng).0 * (t2 + hb2).powf(-half_alpha);
                if interference >= budget {
                    return false;
                }
            }
            signal > theta * interference
        });
        Ok(McEstimate::from_hits(hits, trials))
    }

    /// Monte-Carlo marginal coverage: the serving node is the nearest point
    /// of a planar PPP on the disk of radius `net_radius`, and interferers
    /// are the remaining points inside the analytic window for that distance.
    pub fn coverage_marginal_mc(&self, h: f64, seed: u64, trials: u64) -> Result<McEstimate> {
        if trials == 0 {
            return Err(Error::domain("coverage_marginal_mc needs at least one trial"));
        }
        if !(self.lambda > 0.0) {
            return Err(Error::domain("marginal coverage needs lambda > 0"));
        }
        let fading = FadingSampler::new(&self.fading())?;
        let outer = self.params.net_radius;
        let total_measure = self.lambda * PI * outer * outer;
        let hb2 = self.params.h_bar * self.params.h_bar;
        let half_alpha = 0.5 * self.alpha;
        let theta = self.params.theta;
        let h2 = h * h;

        let hits = rng::count_successes(seed, trials, |rng| {
            // Points in order of distance: cumulative measures λπt² are the
            // arrival times of a unit-rate Poisson process.
            let mut measure = -rng.random::<f64>().ln();
            if measure > total_measure {
                return false;
            }
            let r = (measure / (self.lambda * PI)).sqrt();
            if r == 0.0 && h == 0.0 {
                return true;
            }
            let signal = fading.sample(rng).0 * (r * r + h2).powf(-half_alpha);
            let inner = self.interference_window(r).inner;
            let budget = signal / theta;
            let mut interference = 0.0;
            loop {
                measure += -rng.random::<f64>().ln();
                if measure > total_measure {
                    break;
                }
                let t2 = measure / (self.lambda * PI);
                if t2 < inner * inner {
                    continue;
                }
                interference += fading.sample(rng).0 * (t2 + hb2).powf(-half_alpha);
                if interference >= budget {
                    return false;
                }
            }
            signal > theta * interference
        });
        Ok(McEstimate::from_hits(hits, trials))
    }

    /// Largest serving distance `r` (to within 0.01 m) with
    /// `coverage_conditional(r, h) >= target`.
    pub fn solve_r_max(&self, target: f64, h: f64) -> Result<f64> {
        if !(target > 0.0 && target < 1.0) {
            return Err(Error::domain(format!("coverage target must be in (0, 1), got {target}")));
        }
        let r0 = if h > 0.0 { 0.0 } else { 1e-9 };
        let p0 = self.coverage_conditional(r0, h)?;
        if p0 < target {
            return Err(Error::Unattainable {
                target,
                reason: format!("coverage at the shortest link is only {p0:.6}"),
            });
        }
        let limit = self.params.net_radius;
        let mut lo = r0;
        let mut hi = 1.0f64.min(limit);
        loop {
            if self.coverage_conditional(hi, h)? < target {
                break;
            }
            lo = hi;
            if hi >= limit {
                return Err(Error::Unattainable {
                    target,
                    reason: format!("coverage stays above the target out to the network radius {limit} m"),
                });
            }
            hi = (2.0 * hi).min(limit);
        }
        while hi - lo > 0.01 {
            let mid = 0.5 * (lo + hi);
            if self.coverage_conditional(mid, h)? >= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }
}

/// `M_k = L^(k) / L` from the exponent derivatives `g^(j)`:
/// `M_k = Σ_{j<k} C(k-1, j) g^(k-j) M_j`.
fn normalized_derivatives(g: &[f64]) -> Vec<f64> {
    let mut m = vec![1.0];
    for k in 1..g.len() as u32 {
        let v = (0..k)
            .map(|j| binomial(k - 1, j) * g[(k - j) as usize] * m[j as usize])
            .sum();
        m.push(v);
    }
    m
}

fn clamp_probability(raw: f64) -> Result<f64> {
    if !raw.is_finite() || raw < -CLAMP_SLACK || raw > 1.0 + CLAMP_SLACK {
        return Err(Error::Numeric(format!("coverage probability {raw} is outside [0, 1]")));
    }
    Ok(raw.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(guard: InterferenceGuard, excl: f64, net: f64) -> CoverageParams {
        CoverageParams {
            theta: 1.0,
            serving_r: 10.0,
            serving_h: 0.0,
            h_bar: 0.0,
            exclusion_radius: excl,
            net_radius: net,
            quad_tol: 1e-10,
            guard,
        }
    }

    /// δ=1, α=4, h̄=0, λ=1e-4 on [1, 1e4].
    fn reference(delta: u32) -> CoverageModel {
        CoverageModel::new(params(InterferenceGuard::Exclusion, 1.0, 1e4), 4.0, delta, 1e-4).unwrap()
    }

    fn full(m: &CoverageModel) -> InterferenceWindow {
        m.interference_window(0.0)
    }

    #[test]
    fn exponent_at_zero_and_sign() {
        let m = reference(2);
        assert_eq!(m.laplace_exponent(0.0, full(&m)).unwrap(), 0.0);
        for s in [1e-3, 1.0, 10.0, 1e4, 1e9] {
            assert!(m.laplace_exponent(s, full(&m)).unwrap() < 0.0);
        }
        let d = m.laplace_derivatives(0.0, full(&m), 0).unwrap();
        assert_eq!(d[0], 1.0);
    }

    /// Composite Simpson on a log-spaced grid, written independently.
    fn simpson_exponent(s: f64) -> f64 {
        let n = 1_000_000usize;
        let (a, b) = (0f64, 1e4f64.ln());
        let hstep = (b - a) / n as f64;
        let f = |u: f64| {
            let t = u.exp();
            let l = t.powi(-4);
            (1.0 - 1.0 / (1.0 + s * l)) * t * t
        };
        let mut acc = f(a) + f(b);
        for i in 1..n {
            acc += f(a + i as f64 * hstep) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        -2.0 * PI * 1e-4 * acc * hstep / 3.0
    }

    #[test]
    fn exponent_matches_simpson_oracle() {
        let m = reference(1);
        let g = m.laplace_exponent(10.0, full(&m)).unwrap();
        let oracle = simpson_exponent(10.0);
        assert!((g / oracle - 1.0).abs() < 1e-6, "{g} vs {oracle}");
    }

    #[test]
    fn second_derivative_matches_finite_difference() {
        let m = reference(3);
        let w = full(&m);
        let d = m.laplace_derivatives(5.0, w, 2).unwrap();
        let step = 1e-4;
        let up = m.laplace_derivatives(5.0 + step, w, 1).unwrap()[1];
        let dn = m.laplace_derivatives(5.0 - step, w, 1).unwrap()[1];
        let fd = (up - dn) / (2.0 * step);
        assert!((d[2] / fd - 1.0).abs() < 1e-4, "{} vs {fd}", d[2]);
        // First derivative is g' L.
        let g = m.exponent_derivatives(5.0, w, 1).unwrap();
        assert!((d[1] - g[1] * g[0].exp()).abs() <= 1e-15 * d[1].abs());
    }

    #[test]
    fn complete_monotonicity_and_terms() {
        let m = reference(3);
        let w = full(&m);
        let mut prev_l = 1.0;
        let mut prev_log = 0.0;
        let mut prev_slope = f64::NEG_INFINITY;
        for i in 1..40 {
            let s = 0.5 * i as f64;
            let d = m.laplace_derivatives(s, w, 2).unwrap();
            for (k, v) in d.iter().enumerate() {
                let signed = if k % 2 == 0 { *v } else { -*v };
                assert!(signed >= 0.0, "k={k} s={s}");
            }
            assert!(d[0] < prev_l);
            // log-convexity: increments of ln L are non-decreasing
            let log_l = d[0].ln();
            let slope = log_l - prev_log;
            if i > 1 {
                assert!(slope >= prev_slope - 1e-12);
            }
            prev_slope = slope;
            prev_log = log_l;
            prev_l = d[0];
        }
        for r in [2.0, 10.0, 40.0, 150.0] {
            let terms = m.coverage_terms(r, 0.0).unwrap();
            assert!(terms.iter().all(|t| *t >= 0.0));
        }
    }

    #[test]
    fn rayleigh_is_exp_exponent() {
        let mut m = reference(1);
        m.params.guard = InterferenceGuard::NearestTransmitter;
        let s = m.transform_variable(10.0, 0.0).unwrap();
        let g = m.laplace_exponent(s, m.interference_window(10.0)).unwrap();
        assert!((m.coverage_conditional(10.0, 0.0).unwrap() - g.exp()).abs() < 1e-14);
    }

    #[test]
    fn small_threshold_gives_full_coverage() {
        let mut m = reference(3);
        m.params.theta = 1e-12;
        assert!((m.coverage_conditional(10.0, 0.0).unwrap() - 1.0).abs() < 1e-6);
        let law = DistanceLaw::planar(1e-4, 1);
        assert!((m.coverage_marginal(&law, 0.0).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn empty_window_means_no_interference() {
        let m = CoverageModel::new(params(InterferenceGuard::NearestTransmitter, 0.0, 50.0), 3.4, 2, 1e-3).unwrap();
        assert_eq!(m.coverage_conditional(60.0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn monotone_in_r_theta_lambda() {
        let m = reference(2);
        let mut prev = 1.0;
        for r in [1.0, 5.0, 10.0, 20.0, 50.0, 100.0, 300.0] {
            let p = m.coverage_conditional(r, 0.0).unwrap();
            assert!(p <= prev + 1e-12);
            prev = p;
        }
        let base = m.coverage_conditional(30.0, 0.0).unwrap();
        let mut hot = m.clone();
        hot.params.theta = 2.0;
        assert!(hot.coverage_conditional(30.0, 0.0).unwrap() < base);
        let mut dense = m.clone();
        dense.lambda = 2e-4;
        assert!(dense.coverage_conditional(30.0, 0.0).unwrap() < base);
    }

    /// Finite network with an exclusion zone: steeper attenuation hurts.
    fn alpha_scenario(alpha: f64) -> CoverageModel {
        let mut p = params(InterferenceGuard::Exclusion, 0.0, 100.0);
        p.serving_h = 100.0;
        CoverageModel::new(p, alpha, 2, 8e-6).unwrap()
    }

    #[test]
    fn monotone_in_alpha_on_exclusion_scenario() {
        for r in [10.0, 30.0, 60.0, 90.0] {
            let lo = alpha_scenario(3.4).coverage_conditional(r, 100.0).unwrap();
            let hi = alpha_scenario(4.2).coverage_conditional(r, 100.0).unwrap();
            assert!(hi <= lo, "r={r}: {hi} > {lo}");
        }
    }

    #[test]
    fn marginal_matches_closed_form_oracle() {
        // Rayleigh, α=4, nearest-transmitter guard, effectively infinite plane:
        // P = 1 / (1 + √θ (π/2 - atan(1/√θ))).
        let m = CoverageModel::new(params(InterferenceGuard::NearestTransmitter, 0.0, 1e4), 4.0, 1, 1e-4).unwrap();
        let p = m.coverage_marginal(&DistanceLaw::planar(1e-4, 1), 0.0).unwrap();
        let oracle = 1.0 / (1.0 + (PI / 2.0 - 1f64.atan()));
        assert!((p - oracle).abs() < 1e-4, "{p} vs {oracle}");
        assert!((oracle - 0.5601).abs() < 1e-4);
    }

    #[test]
    fn marginal_between_conditional_extremes() {
        let m = reference(2);
        let law = DistanceLaw::planar(1e-4, 1);
        let p = m.coverage_marginal(&law, 0.0).unwrap();
        let hi = m.coverage_conditional(1e-3, 0.0).unwrap();
        let lo = m.coverage_conditional(400.0, 0.0).unwrap();
        assert!(p <= hi && p >= lo);
    }

    #[test]
    fn marginal_matches_mc() {
        let m = CoverageModel::new(params(InterferenceGuard::NearestTransmitter, 0.0, 300.0), 4.0, 1, 1e-3).unwrap();
        let p = m.coverage_marginal(&DistanceLaw::planar(1e-3, 1), 0.0).unwrap();
        let mc = m.coverage_marginal_mc(0.0, 3, 100_000).unwrap();
        assert!((p - mc.estimate).abs() < 0.02, "{p} vs {}", mc.estimate);
    }

    #[test]
    fn conditional_matches_mc() {
        let mut p = params(InterferenceGuard::NearestTransmitter, 0.0, 60.0);
        p.quad_tol = 1e-8;
        for delta in [1, 3] {
            let m = CoverageModel::new(p.clone(), 3.4, delta, 2e-3).unwrap();
            for r in [3.0, 8.0] {
                let a = m.coverage_conditional(r, 5.0).unwrap();
                let mc = m.coverage_mc(r, 5.0, 11, 100_000).unwrap();
                assert!((a - mc.estimate).abs() < 4.0 * mc.std_error + 1e-3, "δ={delta} r={r}: {a} vs {}", mc.estimate);
            }
        }
    }

    #[test]
    fn mc_without_interferers() {
        let m = CoverageModel::new(params(InterferenceGuard::Exclusion, 0.0, 10.0), 3.4, 2, 1e-12).unwrap();
        assert_eq!(m.coverage_mc(5.0, 0.0, 1, 10_000).unwrap().estimate, 1.0);
    }

    #[test]
    fn mc_stderr_scales_as_root_n() {
        let m = CoverageModel::new(params(InterferenceGuard::NearestTransmitter, 0.0, 60.0), 3.4, 2, 2e-3).unwrap();
        let a = m.coverage_mc(8.0, 5.0, 4, 20_000).unwrap();
        let b = m.coverage_mc(8.0, 5.0, 4, 80_000).unwrap();
        let ratio = a.std_error / b.std_error;
        assert!((ratio / 2.0 - 1.0).abs() < 0.2, "ratio {ratio}");
    }

    #[test]
    fn r_max_bisection() {
        let m = alpha_scenario(3.4);
        let r = m.solve_r_max(0.8, 100.0).unwrap();
        assert!(m.coverage_conditional(r, 100.0).unwrap() >= 0.8);
        assert!(m.coverage_conditional(r + 0.02, 100.0).unwrap() < 0.8);
        assert_eq!(r, m.solve_r_max(0.8, 100.0).unwrap());
        assert!(alpha_scenario(4.2).solve_r_max(0.8, 100.0).unwrap() < r);
        assert!(matches!(m.solve_r_max(0.999_999, 100.0), Err(Error::Unattainable { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn conditional_is_probability(r in 0.5..500.0f64, delta in 1u32..4, theta in 0.01..10.0f64) {
            let mut m = reference(delta);
            m.params.theta = theta;
            m.params.quad_tol = 1e-8;
            let p = m.coverage_conditional(r, 0.0).unwrap();
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }
}
