//! Complex special functions and quadrature.
//!
//! Branch conventions: all multivalued functions (logarithms, complex powers,
//! `ln Γ`) use principal branches. [`hyp2f1`] is defined for real arguments off
//! the cut `z > 1`.

mod gamma;
mod hyp2f1;
mod quadrature;

// Needed for float methods without std; unused when std is linked in (tests).
#[allow(unused_imports)]
use num_traits::Float;

pub use gamma::{cot, digamma, ln_gamma};
pub use hyp2f1::{hyp2f1, hyp2f1_neg_exp};
pub use quadrature::{
    integrate_complex, integrate_complex_points, QuadratureResult, QuadratureSpec,
};

/// `sin(x)/x`, equal to 1 at the origin.
pub fn sinc(x: f64) -> f64 {
    // below this |x| the quotient rounds to 1 - x²/6 anyway
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `sin(πx)` with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let n = x.round();
    let r = x - n;
    let s = (core::f64::consts::PI * r).sin();
    if (n as i64) % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Logistic function `1/(1 + e^{-x})` without overflow for either sign.
pub fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}
