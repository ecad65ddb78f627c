//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Wide intervals with a positive lower limit are pre-split geometrically,
//! which suits the power-law tails of pathloss integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct Integrator {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Integrator {
    pub fn new(rel_tol: f64) -> Self {
        Integrator {
            rel_tol,
            abs_tol: 1e-300,
            max_intervals: 4000,
        }
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    /// Integrates `f` over `[a, b]`, `a <= b`, both finite.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<QuadResult> {
        if !(a.is_finite() && b.is_finite()) || a > b {
            return Err(Error::domain(format!("bad integration limits [{a}, {b}]")));
        }
        if a == b {
            return Ok(QuadResult {
                value: 0.0,
                abs_error: 0.0,
                evaluations: 0,
                intervals: 0,
            });
        }

        let mut heap = BinaryHeap::new();
        let mut evaluations = 0;
        for w in initial_breakpoints(a, b).windows(2) {
            let seg = Segment::evaluate(&f, w[0], w[1]);
            evaluations += 15;
            heap.push(seg);
        }

        loop {
            let (value, abs_error) = totals(&heap);
            if !value.is_finite() {
                return Err(Error::Numeric(format!(
                    "non-finite integrand on [{a}, {b}]"
                )));
            }
            if abs_error <= self.abs_tol.max(self.rel_tol * value.abs()) {
                return Ok(QuadResult {
                    value,
                    abs_error,
                    evaluations,
                    intervals: heap.len(),
                });
            }
            let worst = heap.pop().expect("heap is never empty");
            let mid = 0.5 * (worst.lower + worst.upper);
            let exhausted = heap.len() + 2 > self.max_intervals
                || mid <= worst.lower
                || mid >= worst.upper;
            if exhausted {
                heap.push(worst);
                return Err(Error::Quadrature {
                    lower: a,
                    upper: b,
                    estimate: value,
                    abs_error,
                    intervals: heap.len(),
                });
            }
            heap.push(Segment::evaluate(&f, worst.lower, mid));
            heap.push(Segment::evaluate(&f, mid, worst.upper));
            evaluations += 30;
        }
    }
}

fn totals(heap: &BinaryHeap<Segment>) -> (f64, f64) {
    // Sum in a fixed order so results do not depend on heap layout.
    let mut segs: Vec<&Segment> = heap.iter().collect();
    segs.sort_by(|x, y| x.lower.total_cmp(&y.lower));
    segs.iter()
        .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
}

fn initial_breakpoints(a: f64, b: f64) -> Vec<f64> {
    const MAX_SEGMENTS: usize = 32;
    let mut pts = vec![a];
    if a > 0.0 && b / a > 8.0 {
        let ratio = (b / a).powf(1.0 / MAX_SEGMENTS as f64).max(4.0);
        let mut x = a * ratio;
        while x < b {
            pts.push(x);
            x *= ratio;
        }
    } else if a == 0.0 {
        let mut x = b * 1e-6;
        while x < b {
            pts.push(x);
            x *= 4.0;
        }
    }
    pts.push(b);
    pts
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lower: f64,
    upper: f64,
    value: f64,
    error: f64,
}

impl Segment {
    fn evaluate<F: Fn(f64) -> f64>(f: &F, lower: f64, upper: f64) -> Self {
        let centre = 0.5 * (lower + upper);
        let half = 0.5 * (upper - lower);
        let fc = f(centre);
        let mut kronrod = WGK[7] * fc;
        let mut gauss = WG[3] * fc;
        for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
            let dx = half * x;
            let pair = f(centre - dx) + f(centre + dx);
            kronrod += w * pair;
            if j % 2 == 1 {
                gauss += WG[j / 2] * pair;
            }
        }
        Segment {
            lower,
            upper,
            value: kronrod * half,
            error: ((kronrod - gauss) * half).abs(),
        }
    }
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lower.total_cmp(&self.lower))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let q = Integrator::new(1e-12)
            .integrate(|x| 3.0 * x * x + 1.0, 0.0, 2.0)
            .unwrap();
        assert!((q.value - 10.0).abs() < 1e-12);
    }

    #[test]
    fn power_law_tail() {
        // ∫_1^1e4 t^-3 dt = (1 - 1e-8) / 2
        let q = Integrator::new(1e-12)
            .integrate(|t| t.powi(-3), 1.0, 1e4)
            .unwrap();
        assert!((q.value - 0.5 * (1.0 - 1e-8)).abs() < 1e-12);
    }

    #[test]
    fn gaussian_mass() {
        let q = Integrator::new(1e-12)
            .integrate(|x| (-x * x).exp(), 0.0, 20.0)
            .unwrap();
        let expected = std::f64::consts::PI.sqrt() / 2.0;
        assert!((q.value - expected).abs() < 1e-12);
    }

    #[test]
    fn empty_interval() {
        let q = Integrator::new(1e-8).integrate(|x| x, 3.0, 3.0).unwrap();
        assert_eq!(q.value, 0.0);
    }

    #[test]
    fn reversed_limits_rejected() {
        assert!(Integrator::new(1e-8).integrate(|x| x, 2.0, 1.0).is_err());
    }

    #[test]
    fn non_convergence_reports_diagnostics() {
        let integrator = Integrator {
            rel_tol: 1e-15,
            abs_tol: 0.0,
            max_intervals: 40,
        };
        let err = integrator
            .integrate(|x| (1.0 / x).sin() / x, 1e-4, 1.0)
            .unwrap_err();
        assert!(matches!(err, Error::Quadrature { intervals, .. } if intervals <= 40));
    }
}
