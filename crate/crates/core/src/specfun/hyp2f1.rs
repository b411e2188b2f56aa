#![allow(clippy::excessive_precision)]

use num_complex::Complex64;
// Needed for float methods without std; unused when std is linked in (tests).
#[allow(unused_imports)]
use num_traits::Float;

use super::gamma::ln_gamma;
use crate::{Error, Result};

/// Radius inside which the defining series is summed directly.
const SERIES_RADIUS: f64 = 0.9;
/// Below `-PFAFF_LIMIT` the `1/z` connection formula takes over from Pfaff.
const PFAFF_LIMIT: f64 = 9.0;
const MAX_TERMS: usize = 100_000;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn is_integer(z: Complex64) -> bool {
    let tol = 1e-12 * z.re.abs().max(1.0);
    z.im.abs() <= tol && (z.re - z.re.round()).abs() <= tol
}

/// `Γ(num₀)Γ(num₁) / (Γ(den₀)Γ(den₁))`, zero when a denominator argument is a pole.
fn gamma_ratio(num: [Complex64; 2], den: [Complex64; 2]) -> Result<Complex64> {
    let mut log = Complex64::new(0.0, 0.0);
    for d in den {
        match ln_gamma(d) {
            Ok(v) => log -= v,
            Err(Error::Pole { .. }) => return Ok(Complex64::new(0.0, 0.0)),
            Err(e) => return Err(e),
        }
    }
    for n in num {
        log += ln_gamma(n)?;
    }
    Ok(log.exp())
}

/// Defining power series, valid for |z| < 1.
fn series(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small = 0;
    for n in 0..MAX_TERMS {
        let k = n as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            // two consecutive negligible terms guard against a near-zero factor
            small += 1;
            if small == 2 || term == Complex64::new(0.0, 0.0) {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Convergence {
        what: "hypergeometric series",
        iterations: MAX_TERMS,
    })
}

/// Connection formula around infinity for `z = −e^{ln_x}`.
fn inverse_argument(a: Complex64, b: Complex64, c: Complex64, ln_x: f64) -> Result<Complex64> {
    if is_integer(b - a) {
        return Err(Error::Parameter(
            "hypergeometric 1/z transformation needs a - b non-integer",
        ));
    }
    let one = Complex64::new(1.0, 0.0);
    let w = -(-ln_x).exp();
    let log_mz = Complex64::new(ln_x, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    for (p, q) in [(a, b), (b, a)] {
        let coef = gamma_ratio([c, q - p], [q, c - p])?;
        if coef == Complex64::new(0.0, 0.0) {
            continue;
        }
        let f = series(p, p - c + one, p - q + one, w)?;
        total += coef * (-p * log_mz).exp() * f;
    }
    Ok(total)
}

/// Connection formula around `z = 1`, for `0.9 ≤ z < 1`.
fn one_minus_argument(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    let s = c - a - b;
    if is_integer(s) {
        return series(a, b, c, z);
    }
    let one = Complex64::new(1.0, 0.0);
    let w = 1.0 - z;
    let first = gamma_ratio([c, s], [c - a, c - b])? * series(a, b, one - s, w)?;
    let second =
        gamma_ratio([c, -s], [a, b])? * (s * w.ln()).exp() * series(c - a, c - b, s + one, w)?;
    Ok(first + second)
}

fn check_inputs(a: Complex64, b: Complex64, c: Complex64) -> Result<()> {
    for v in [a, b, c] {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::NonFinite("hyp2f1 parameter"));
        }
    }
    if is_nonpositive_integer(c) {
        return Err(Error::Parameter(
            "hyp2f1 lower parameter is a non-positive integer",
        ));
    }
    Ok(())
}

fn finite(v: Complex64) -> Result<Complex64> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite("hyp2f1"))
    }
}

/// Gauss hypergeometric function ₂F₁(a, b; c; z) for real `z ≤ 1`.
///
/// The series is used for `|z| < 0.9`, the Pfaff transformation on
/// `[−9, −0.9]`, the `1/z` connection formula below −9 and the `1 − z`
/// connection formula on `[0.9, 1)`. At `z = 1` Gauss's summation theorem is
/// applied. Complex powers use principal branches.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<Complex64> {
    check_inputs(a, b, c)?;
    if !z.is_finite() {
        return Err(Error::NonFinite("hyp2f1 argument"));
    }
    if z > 1.0 {
        return Err(Error::Domain(
            "hyp2f1 argument above 1 lies on the branch cut",
        ));
    }
    let value = if z == 0.0 {
        Complex64::new(1.0, 0.0)
    } else if z.abs() < SERIES_RADIUS {
        series(a, b, c, z)?
    } else if z == 1.0 {
        if c.re - a.re - b.re <= 0.0 {
            return Err(Error::Domain(
                "hyp2f1 diverges at z = 1 unless Re(c - a - b) > 0",
            ));
        }
        gamma_ratio([c, c - a - b], [c - a, c - b])?
    } else if z > 0.0 {
        one_minus_argument(a, b, c, z)?
    } else if z >= -PFAFF_LIMIT {
        // F(a, b; c; z) = (1 − z)^{−a} F(a, c − b; c; z/(z − 1))
        (-a * (1.0 - z).ln()).exp() * series(a, c - b, c, z / (z - 1.0))?
    } else {
        inverse_argument(a, b, c, (-z).ln())?
    };
    finite(value)
}

/// ₂F₁(a, b; c; −e^{ln_x}), evaluated without forming `e^{ln_x}`.
///
/// Arguments such as `−e^{aλ/2}` overflow for large `λ`; passing the exponent
/// keeps the computation in log space.
pub fn hyp2f1_neg_exp(a: Complex64, b: Complex64, c: Complex64, ln_x: f64) -> Result<Complex64> {
    check_inputs(a, b, c)?;
    if ln_x.is_nan() || ln_x == f64::INFINITY {
        return Err(Error::NonFinite("hyp2f1 log argument"));
    }
    if ln_x < PFAFF_LIMIT.ln() {
        return hyp2f1(a, b, c, -ln_x.exp());
    }
    finite(inverse_argument(a, b, c, ln_x)?)
}
