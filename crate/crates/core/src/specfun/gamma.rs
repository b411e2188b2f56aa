#![allow(clippy::excessive_precision)]

use core::f64::consts::PI;

use num_complex::Complex64;
// Needed for float methods without std; unused when std is linked in (tests).
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Recurrence shift target: below this real part the argument is moved up
/// before the asymptotic expansions are applied.
const SHIFT_TO: f64 = 10.0;

/// Beyond this distance into the left half-plane the reflection formula is
/// cheaper than shifting.
const REFLECT_BELOW: f64 = -20.0;

/// `B_{2k} / (2k)` for the digamma asymptotic series.
const DIGAMMA_COEF: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// `B_{2k} / (2k (2k - 1))` for Stirling's series.
const STIRLING_COEF: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

fn check_finite(z: Complex64, what: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// True when `z` is within rounding of 0, -1, -2, ...
fn is_nonpositive_integer(z: Complex64) -> bool {
    if z.re > 0.5 {
        return false;
    }
    let tol = 8.0 * f64::EPSILON * z.re.abs().max(1.0);
    z.im.abs() <= tol && (z.re - z.re.round()).abs() <= tol
}

/// Complex cotangent, stable for large imaginary parts.
pub fn cot(z: Complex64) -> Result<Complex64> {
    check_finite(z, "cot")?;
    let (x, y) = (z.re, z.im);
    let t = (-2.0 * y.abs()).exp();
    let (s2, c2) = (2.0 * x).sin_cos();
    let den = 1.0 + t * t - 2.0 * t * c2;
    if den == 0.0 {
        return Err(Error::Pole { re: x, im: y });
    }
    let num = Complex64::new(2.0 * t * s2, -y.signum() * (1.0 - t * t));
    Ok(num / den)
}

/// `π cot(π z)` with the argument reduced modulo 1 first.
fn pi_cot_pi(z: Complex64) -> Result<Complex64> {
    let reduced = Complex64::new(z.re - z.re.round(), z.im);
    Ok(cot(reduced * PI)? * PI)
}

/// Digamma function ψ(z) = Γ'(z)/Γ(z).
///
/// Shifts the argument with ψ(z) = ψ(z + 1) − 1/z until `Re z ≥ 10` and then
/// sums the asymptotic series; far into the left half-plane it reflects first.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "digamma")?;
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if z.re < REFLECT_BELOW {
        // ψ(z) = ψ(1 − z) − π cot(π z)
        let one = Complex64::new(1.0, 0.0);
        return Ok(digamma(one - z)? - pi_cot_pi(z)?);
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TO {
        acc -= w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv2;
    for c in DIGAMMA_COEF {
        series += pow * c;
        pow *= inv2;
    }
    let value = acc + w.ln() - inv * 0.5 - series;
    check_finite(value, "digamma")?;
    Ok(value)
}

/// `ln sin(π z)` that stays finite when `|Im z|` is large.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    let i = Complex64::new(0.0, 1.0);
    let reduced = Complex64::new(z.re - z.re.round(), z.im);
    let parity = if (z.re.round() as i64) % 2 == 0 {
        0.0
    } else {
        PI
    };
    let w = reduced * PI;
    let base = if w.im.abs() < 5.0 {
        w.sin().ln()
    } else if w.im > 0.0 {
        // sin w = (i/2) e^{-iw} (1 - e^{2iw})
        -i * w
            + Complex64::new(0.5, 0.0).ln()
            + i * (PI / 2.0)
            + (Complex64::new(1.0, 0.0) - (i * w * 2.0).exp()).ln()
    } else {
        // sin w = (-i/2) e^{iw} (1 - e^{-2iw})
        i * w + Complex64::new(0.5, 0.0).ln() - i * (PI / 2.0)
            + (Complex64::new(1.0, 0.0) - (-i * w * 2.0).exp()).ln()
    };
    base + i * parity
}

/// Logarithm of the gamma function.
///
/// For `Re z ≥ −20` this is the branch continuous from the positive real axis
/// (so `ln Γ(z + 1) = ln Γ(z) + ln z` with principal logarithms). Further left
/// the imaginary part is only determined modulo 2π, which is sufficient for
/// exponentiated ratios.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "ln_gamma")?;
    if is_nonpositive_integer(z) {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    if z.re < REFLECT_BELOW {
        // Γ(z) Γ(1 − z) = π / sin(π z)
        let one = Complex64::new(1.0, 0.0);
        return Ok(Complex64::new(PI.ln(), 0.0) - ln_sin_pi(z) - ln_gamma(one - z)?);
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < SHIFT_TO {
        acc -= w.ln();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING_COEF {
        series += pow * c;
        pow *= inv2;
    }
    let half_ln_2pi = 0.5 * (2.0 * PI).ln();
    let value = acc + (w - 0.5) * w.ln() - w + half_ln_2pi + series;
    check_finite(value, "ln_gamma")?;
    Ok(value)
}
