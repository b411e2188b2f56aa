#![allow(clippy::excessive_precision)]

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerances and effort limit for [`integrate_complex`].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = QuadratureSpec {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::Parameter("abs_tol must be positive"));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::Parameter("rel_tol must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::Parameter("max_subdivisions must be at least 1"));
        }
        Ok(())
    }

    fn target(&self, value: Complex64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

/// Outcome of an adaptive integration.
///
/// `converged` is false when the subdivision budget ran out before the error
/// estimate met the tolerance; `value` then holds the best estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub converged: bool,
    pub evaluations: usize,
}

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
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
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Segment {
    lo: f64,
    hi: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
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
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: FnMut(f64) -> Complex64>(f: &mut F, lo: f64, hi: f64) -> Result<Segment> {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(centre);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(centre - dx) + f(centre + dx);
        k += pair * WGK[j];
        if j % 2 == 1 {
            g += pair * WG[j / 2];
        }
    }
    let value = k * half;
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite("integrand"));
    }
    Ok(Segment {
        lo,
        hi,
        value,
        error: ((k - g) * half).norm(),
    })
}

/// Adaptive Gauss–Kronrod (7/15) integration of a complex integrand on `[lo, hi]`.
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below `max(abs_tol, rel_tol·|value|)` or the subdivision
/// budget is spent.
pub fn integrate_complex<F>(
    f: F,
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Complex64,
{
    integrate_complex_points(f, &[lo, hi], spec)
}

/// As [`integrate_complex`], with the initial partition given by `points`
/// (strictly increasing, at least two). Useful when the integrand has a sharp
/// feature at a known location.
pub fn integrate_complex_points<F>(
    mut f: F,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Complex64,
{
    spec.validate()?;
    if points.len() < 2 {
        return Err(Error::Parameter("need at least two integration points"));
    }
    for w in points.windows(2) {
        if !(w[0].is_finite() && w[1].is_finite() && w[0] < w[1]) {
            return Err(Error::InvalidInterval { lo: w[0], hi: w[1] });
        }
    }
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for w in points.windows(2) {
        heap.push(kronrod(&mut f, w[0], w[1])?);
        evaluations += 15;
    }
    let mut subdivisions = heap.len();
    loop {
        let (value, error) = totals(&heap);
        if error <= spec.target(value) {
            return Ok(QuadratureResult {
                value,
                error_estimate: error,
                converged: true,
                evaluations,
            });
        }
        let worst = heap.peek().map(|s| (s.lo, s.hi));
        let Some((lo, hi)) = worst else {
            unreachable!()
        };
        let mid = 0.5 * (lo + hi);
        if subdivisions >= spec.max_subdivisions || !(lo < mid && mid < hi) {
            return Ok(QuadratureResult {
                value,
                error_estimate: error,
                converged: false,
                evaluations,
            });
        }
        heap.pop();
        heap.push(kronrod(&mut f, lo, mid)?);
        heap.push(kronrod(&mut f, mid, hi)?);
        evaluations += 30;
        subdivisions += 1;
    }
}

fn totals(heap: &BinaryHeap<Segment>) -> (Complex64, f64) {
    // Summing in a fixed order keeps results reproducible regardless of heap layout.
    let mut segs: Vec<&Segment> = heap.iter().collect();
    segs.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    for s in segs {
        value += s.value;
        error += s.error;
    }
    (value, error)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn exact_antiderivatives() {
        let spec = QuadratureSpec::default();
        let r = integrate_complex(|u| Complex64::new(0.0, u).exp(), 0.0, PI, &spec).unwrap();
        assert!(r.converged);
        assert!((r.value - Complex64::new(0.0, 2.0)).norm() < 1e-12);
        let r = integrate_complex(|_| Complex64::new(1.0, 0.0), 0.0, 1.0, &spec).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-15 && r.value.im == 0.0);
    }

    #[test]
    fn polynomials_up_to_degree_six() {
        let spec = QuadratureSpec::default();
        let coeffs = [0.3, -1.2, 2.5, 0.7, -0.4, 1.1, -0.9];
        for deg in 0..=6usize {
            let p = |x: f64| {
                let mut acc = 0.0;
                for &c in coeffs[..=deg].iter().rev() {
                    acc = acc * x + c;
                }
                Complex64::new(acc, -2.0 * acc)
            };
            let anti = |x: f64| {
                coeffs[..=deg]
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * x.powi(k as i32 + 1) / (k as f64 + 1.0))
                    .sum::<f64>()
            };
            let (lo, hi) = (-1.3, 2.1);
            let exact = anti(hi) - anti(lo);
            let r = integrate_complex(p, lo, hi, &spec).unwrap();
            assert!((r.value.re - exact).abs() <= spec.abs_tol, "degree {deg}");
            assert!(
                (r.value.im + 2.0 * exact).abs() <= spec.abs_tol,
                "degree {deg}"
            );
        }
    }

    #[test]
    fn reports_unmet_tolerance() {
        let spec = QuadratureSpec::new(1e-14, 1e-14, 3).unwrap();
        let r = integrate_complex(
            |u| Complex64::new((50.0 * u).sin() / (u + 1e-3).sqrt(), 0.0),
            0.0,
            1.0,
            &spec,
        )
        .unwrap();
        assert!(!r.converged);
        assert!(r.error_estimate > 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        let spec = QuadratureSpec::default();
        let one = |_| Complex64::new(1.0, 0.0);
        assert!(matches!(
            integrate_complex(one, 1.0, 1.0, &spec),
            Err(Error::InvalidInterval { .. })
        ));
        assert!(matches!(
            integrate_complex(one, 2.0, 1.0, &spec),
            Err(Error::InvalidInterval { .. })
        ));
        assert!(QuadratureSpec::new(0.0, 1e-8, 10).is_err());
        assert!(QuadratureSpec::new(1e-8, 1e-8, 0).is_err());
        let nan = |_| Complex64::new(f64::NAN, 0.0);
        assert!(matches!(
            integrate_complex(nan, 0.0, 1.0, &spec),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn breakpoints_resolve_sharp_features() {
        let spec = QuadratureSpec::new(1e-13, 1e-12, 2000).unwrap();
        let lam = 500.0;
        let f = |u: f64| Complex64::new(1.0 / (1.0 + (lam * (u - 0.01)).exp()), 0.0);
        // ∫₀¹ logistic(−λ(u − c)) du = c + ln((1 + e^{−λc})/(1 + e^{−λ(1−c)}))/λ
        let exact = 0.01
            + ((1.0 + (-lam * 0.01f64).exp()).ln() - (1.0 + (-lam * 0.99f64).exp()).ln()) / lam;
        let r = integrate_complex_points(f, &[0.0, 0.01, 1.0], &spec).unwrap();
        assert!(r.converged);
        assert!((r.value.re - exact).abs() < 1e-12);
    }
}
