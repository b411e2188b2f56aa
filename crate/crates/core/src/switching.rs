//! Smooth switching of an imperfect mirror.
//!
//! The cavity has walls at `x = ±a/2` and the mirror at `x = 0`. Its coupling
//! to the field is switched on with the profile `θ(t) = tan⁻¹((1 + e^{−λt})/λ)`,
//! so a finite rate `λ` leaves a partly transmissive mirror with effective
//! reflectivity `r_eff = 1 − (2/π) tan⁻¹(1/λ)`.
//!
//! Right-moving modes in light-cone time `u` start as plane waves and end up
//! multiplied by the reflection factor `−R(k)`, `R(k) = (λ + ik)/(λ − ik)`:
//!
//! `Ū_k(u) = N e^{−iku} (σ(−λu) − R(k) σ(λu))`, with `σ` the logistic function.
//!
//! `β_{nm}` mixes global mode `n` (wavenumber `πn/a`) into switched sub-cavity
//! mode `m` (wavenumber `πm/a`), and `⟨N_m⟩ = Σ_n |β_{nm}|²`.

use alloc::vec::Vec;
use core::f64::consts::PI;

// Needed for float methods without std; unused when std is linked in (tests).
#[allow(unused_imports)]
use num_traits::Float;

use crate::specfun::{digamma, hyp2f1_neg_exp, integrate_complex_points, logistic, QuadratureSpec};
use crate::{Complex64, Error, Result};

/// Default number of global modes summed in [`particle_number_imperfect`].
pub const DEFAULT_SWITCH_TRUNCATION: usize = 400;

/// Fitted tail exponents at or below this are treated as a divergent series.
const DIVERGENCE_EXPONENT: f64 = 1.1;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Switching rate and cavity size.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SwitchProfile {
    rate: f64,
    cavity_width: f64,
}

impl SwitchProfile {
    /// Profile with rate `λ > 0` for a cavity of width `a` (walls at `±a/2`).
    pub fn new(rate: f64, cavity_width: f64) -> Result<Self> {
        if !(rate.is_finite() && cavity_width.is_finite()) {
            return Err(Error::NonFinite("switch profile"));
        }
        if rate <= 0.0 {
            return Err(Error::Domain("switching rate must be positive"));
        }
        if cavity_width <= 0.0 {
            return Err(Error::Domain("cavity width must be positive"));
        }
        Ok(SwitchProfile { rate, cavity_width })
    }

    /// Profile reaching effective reflectivity `r_eff`.
    pub fn from_reflectivity(r_eff: f64, cavity_width: f64) -> Result<Self> {
        SwitchProfile::new(lambda_for_reflectivity(r_eff)?, cavity_width)
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn cavity_width(&self) -> f64 {
        self.cavity_width
    }

    /// `r_eff = 1 − (2/π) tan⁻¹(1/λ)`.
    pub fn effective_reflectivity(&self) -> f64 {
        1.0 - 2.0 / PI * (1.0 / self.rate).atan()
    }

    /// Wavenumber `πm/a` of cavity mode `m`.
    pub fn wavenumber(&self, m: usize) -> f64 {
        PI * m as f64 / self.cavity_width
    }

    /// `ϑ = (m + n)π/(aλ)`.
    pub fn vartheta(&self, n: usize, m: usize) -> f64 {
        (m + n) as f64 * PI / (self.cavity_width * self.rate)
    }

    /// Reflection factor `R(k) = (λ + ik)/(λ − ik)`.
    pub fn reflection_factor(&self, k: f64) -> Complex64 {
        reflection_factor(k, self.rate)
    }
}

/// `θ(t) = tan⁻¹((1 + e^{−λt})/λ)`, in `(0, π/2)` and decreasing in `t`.
pub fn theta_profile(t: f64, rate: f64) -> Result<f64> {
    if rate.is_nan() || t.is_nan() {
        return Err(Error::NonFinite("theta profile"));
    }
    if rate <= 0.0 {
        return Err(Error::Domain("switching rate must be positive"));
    }
    // atan2 keeps the t → −∞ limit (numerator → ∞) finite
    Ok((1.0 + (-rate * t).exp()).atan2(rate))
}

/// Rate `λ = 1/tan((1 − r_eff)π/2)` that gives effective reflectivity `r_eff`.
///
/// The rate grows without bound as `r_eff → 1`; for `r_eff` within about
/// `10⁻¹⁶` of 1 it is of order `10¹⁶`.
pub fn lambda_for_reflectivity(r_eff: f64) -> Result<f64> {
    if r_eff.is_nan() {
        return Err(Error::NonFinite("reflectivity"));
    }
    if !(r_eff > 0.0 && r_eff < 1.0) {
        return Err(Error::Domain(
            "effective reflectivity must satisfy 0 < r_eff < 1",
        ));
    }
    let lambda = 1.0 / ((1.0 - r_eff) * PI / 2.0).tan();
    if !lambda.is_finite() {
        return Err(Error::Domain("reflectivity too close to 1: rate overflows"));
    }
    Ok(lambda)
}

/// `R(k) = (λ + ik)/(λ − ik)`, a pure phase.
pub fn reflection_factor(k: f64, rate: f64) -> Complex64 {
    // (λ + ik)² / (λ² + k²), normalised explicitly so that |R| = 1 to rounding
    let num = Complex64::new(rate, k);
    let r = num * num;
    r / r.norm()
}

fn switched_shape(u: f64, k: f64, rate: f64) -> Complex64 {
    let r = reflection_factor(k, rate);
    Complex64::new(logistic(-rate * u), 0.0) - r * logistic(rate * u)
}

fn switched_shape_derivative(u: f64, k: f64, rate: f64) -> Complex64 {
    let r = reflection_factor(k, rate);
    -(Complex64::new(1.0, 0.0) + r) * (rate * logistic(rate * u) * logistic(-rate * u))
}

/// Free-space switched mode `Ū_k(u) = (8πk)^{−1/2} e^{−iku}(σ(−λu) − R σ(λu))`.
///
/// Written with logistic functions, so both `λu → ±∞` limits are reached
/// without overflow.
pub fn switched_mode(u: f64, k: f64, rate: f64) -> Result<Complex64> {
    if !(u.is_finite() && k.is_finite() && rate.is_finite()) {
        return Err(Error::NonFinite("switched mode"));
    }
    if k <= 0.0 || rate <= 0.0 {
        return Err(Error::Domain("wavenumber and rate must be positive"));
    }
    let norm = (8.0 * PI * k).sqrt().recip();
    Ok(Complex64::from_polar(norm, -k * u) * switched_shape(u, k, rate))
}

/// Cavity switched mode `m`: prefactor `(4πm)^{−1/2}`, wavenumber `πm/a`.
pub fn switched_cavity_mode(u: f64, m: usize, profile: &SwitchProfile) -> Complex64 {
    let k = profile.wavenumber(m);
    let norm = (4.0 * PI * m as f64).sqrt().recip();
    Complex64::from_polar(norm, -k * u) * switched_shape(u, k, profile.rate)
}

/// `∂_u` of [`switched_cavity_mode`].
pub fn switched_cavity_mode_derivative(u: f64, m: usize, profile: &SwitchProfile) -> Complex64 {
    let k = profile.wavenumber(m);
    let norm = (4.0 * PI * m as f64).sqrt().recip();
    let shape = switched_shape(u, k, profile.rate);
    let slope = switched_shape_derivative(u, k, profile.rate);
    Complex64::from_polar(norm, -k * u) * (slope - I * k * shape)
}

/// Global cavity mode `U_n(u) = (4πn)^{−1/2} e^{−iπnu/a}`.
pub fn global_cavity_mode(u: f64, n: usize, cavity_width: f64) -> Complex64 {
    let k = PI * n as f64 / cavity_width;
    Complex64::from_polar((4.0 * PI * n as f64).sqrt().recip(), -k * u)
}

/// `e^{−iπj/2}` for integer `j`, exactly.
fn quarter_turn(j: usize) -> Complex64 {
    match j % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

fn check_indices(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::Parameter("mode indices start at 1"));
    }
    Ok(())
}

/// Closed form of `β_{nm} = i∫₀^{a/2} du (U_n ∂_uŪ_m − Ū_m ∂_uU_n)`.
///
/// With `k_g = πn/a`, `k_s = πm/a`, `K = k_g + k_s`, `R = R(k_s)`,
/// `E = e^{−iKa/2}` and `b = −iK/λ = −iϑ`, integration by parts gives
///
/// `β = i/(4π√(mn)) · [E S(a/2) − S(0) + 2i k_g J]`
///
/// where `S(u) = σ(−λu) − Rσ(λu)` and
/// `J = ∫₀^{a/2} e^{−iKu} S du = −R(1 − E)/(iK) + (1 + R)(F(a/2) − F(0))`.
/// The antiderivative of `e^{−iKu}/(1 + e^{λu})` is
/// `F(u) = e^{−iKu}/(−iK) · ₂F₁(1, b; 1 + b; −e^{λu})`, and at `u = 0`
/// `₂F₁(1, b; 1 + b; −1) = (b/2)[ψ((b + 1)/2) − ψ(b/2)]`.
pub fn beta_imperfect_closed(n: usize, m: usize, profile: &SwitchProfile) -> Result<Complex64> {
    check_indices(n, m)?;
    let lambda = profile.rate;
    let width = profile.cavity_width;
    let k_g = profile.wavenumber(n);
    let k_s = profile.wavenumber(m);
    let big_k = k_g + k_s;
    let r = reflection_factor(k_s, lambda);
    let one = Complex64::new(1.0, 0.0);
    let e = quarter_turn(n + m);
    let b = Complex64::new(0.0, -profile.vartheta(n, m));
    let ik = I * big_k;

    let s0 = (one - r) * 0.5;
    let half = 0.5 * lambda * width;
    let s_half = Complex64::new(logistic(-half), 0.0) - r * logistic(half);

    let f0 = (b * 0.5) * (digamma((b + 1.0) * 0.5)? - digamma(b * 0.5)?) / (-ik);
    let f_half = e * hyp2f1_neg_exp(one, b, one + b, half)? / (-ik);
    let j = -r * (one - e) / ik + (one + r) * (f_half - f0);

    let pre = I / (4.0 * PI * ((m * n) as f64).sqrt());
    let value = pre * (e * s_half - s0 + I * (2.0 * k_g) * j);
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::NonFinite("imperfect-mirror coefficient"));
    }
    Ok(value)
}

/// Tolerances used by the numeric oracle when none are given.
pub fn oracle_quadrature() -> QuadratureSpec {
    QuadratureSpec {
        abs_tol: 1e-14,
        rel_tol: 1e-12,
        max_subdivisions: 4000,
    }
}

/// Breakpoints `[0, c, a/2]` that isolate the switching transient near `u = 0`.
fn breakpoints(profile: &SwitchProfile) -> [f64; 3] {
    let half = 0.5 * profile.cavity_width;
    let c = (0.5 * half).min(40.0 / profile.rate);
    [0.0, c, half]
}

fn quadrature_value(
    f: impl FnMut(f64) -> Complex64,
    points: &[f64],
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    let r = integrate_complex_points(f, points, spec)?;
    if !r.converged {
        return Err(Error::Convergence {
            what: "switching overlap quadrature",
            iterations: r.evaluations,
        });
    }
    Ok(r.value)
}

/// `β_{nm}` by adaptive quadrature of `i(U_n ∂_uŪ_m − Ū_m ∂_uU_n)` over `[0, a/2]`.
pub fn beta_imperfect_numeric(
    n: usize,
    m: usize,
    profile: &SwitchProfile,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    check_indices(n, m)?;
    let width = profile.cavity_width;
    let k_g = profile.wavenumber(n);
    let integrand = |u: f64| {
        let global = global_cavity_mode(u, n, width);
        let d_global = -I * k_g * global;
        let switched = switched_cavity_mode(u, m, profile);
        let d_switched = switched_cavity_mode_derivative(u, m, profile);
        I * (global * d_switched - switched * d_global)
    };
    quadrature_value(integrand, &breakpoints(profile), spec)
}

/// The same overlap with the switched mode replaced by the unswitched global
/// mode `U_m`. It vanishes for `n = m`; for `n ≠ m` the half-cavity interval
/// leaves boundary terms, so the off-diagonal entries do not vanish.
pub fn beta_unswitched_numeric(
    n: usize,
    m: usize,
    cavity_width: f64,
    spec: &QuadratureSpec,
) -> Result<Complex64> {
    check_indices(n, m)?;
    if !(cavity_width > 0.0 && cavity_width.is_finite()) {
        return Err(Error::Domain("cavity width must be positive"));
    }
    let k_n = PI * n as f64 / cavity_width;
    let k_m = PI * m as f64 / cavity_width;
    let integrand = |u: f64| {
        let un = global_cavity_mode(u, n, cavity_width);
        let um = global_cavity_mode(u, m, cavity_width);
        I * (un * (-I * k_m * um) - um * (-I * k_n * un))
    };
    quadrature_value(integrand, &[0.0, 0.5 * cavity_width], spec)
}

/// `λ → ∞` limit of [`beta_imperfect_closed`]:
/// `β = i/(4π√(mn)) · (−E − 2n/(n + m) · (1 − E))`, `E = e^{−i(n+m)π/2}`.
/// The closed form approaches it at first order in `1/λ`.
pub fn beta_sudden_limit(n: usize, m: usize) -> Result<Complex64> {
    check_indices(n, m)?;
    let e = quarter_turn(n + m);
    let one = Complex64::new(1.0, 0.0);
    let ratio = 2.0 * n as f64 / (n + m) as f64;
    Ok(I / (4.0 * PI * ((m * n) as f64).sqrt()) * (-e - (one - e) * ratio))
}

/// Coefficient table `β_{nm}` for global `n ∈ 1..=N` and switched `m ∈ 1..=M`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImperfectBogoliubov {
    profile: SwitchProfile,
    truncation: usize,
    modes: usize,
    /// Row-major `[n][m]`.
    beta: Vec<Complex64>,
}

impl ImperfectBogoliubov {
    pub fn new(profile: SwitchProfile, truncation: usize, modes: usize) -> Result<Self> {
        if truncation == 0 || modes == 0 {
            return Err(Error::Parameter("table dimensions must be positive"));
        }
        let mut beta = Vec::with_capacity(truncation * modes);
        for n in 1..=truncation {
            for m in 1..=modes {
                beta.push(beta_imperfect_closed(n, m, &profile)?);
            }
        }
        Ok(ImperfectBogoliubov {
            profile,
            truncation,
            modes,
            beta,
        })
    }

    pub fn profile(&self) -> &SwitchProfile {
        &self.profile
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn get(&self, n: usize, m: usize) -> Option<Complex64> {
        if n == 0 || m == 0 || n > self.truncation || m > self.modes {
            return None;
        }
        Some(self.beta[(n - 1) * self.modes + m - 1])
    }

    pub fn vartheta(&self, n: usize, m: usize) -> f64 {
        self.profile.vartheta(n, m)
    }

    /// `Σ_n |β_{nm}|²` over the stored truncation.
    pub fn particle_number(&self, m: usize) -> f64 {
        (1..=self.truncation)
            .filter_map(|n| self.get(n, m))
            .map(|b| b.norm_sqr())
            .sum()
    }
}

/// Truncated particle number with a power-law tail fit.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SwitchedPhotonNumber {
    pub partial_sum: f64,
    /// Remainder estimate for a convergent `n^{−p}` tail; `None` when the
    /// series looks divergent or `N` is too small to fit.
    pub tail_estimate: Option<f64>,
    /// Fitted decay exponent `p` of `|β_{nm}|²`.
    pub tail_exponent: Option<f64>,
    /// Set when the fitted exponent is at or below 1.1, i.e. the partial sums
    /// keep growing with `N`.
    pub divergent: bool,
    pub truncation: usize,
}

impl SwitchedPhotonNumber {
    pub fn total(&self) -> f64 {
        self.partial_sum + self.tail_estimate.unwrap_or(0.0)
    }
}

/// Fits `|β|² ∝ n^{−p}` from the last two octaves of the partial sums.
fn power_tail(terms: &[f64]) -> (Option<f64>, Option<f64>, bool) {
    let n = terms.len();
    if n < 16 {
        return (None, None, false);
    }
    let octave = |lo: usize, hi: usize| terms[lo..hi].iter().sum::<f64>();
    let s2 = octave(n / 2, n);
    let s1 = octave(n / 4, n / 2);
    if s1 <= 0.0 || s2 <= 0.0 {
        return (None, None, false);
    }
    let p = 1.0 - (s2 / s1).log2();
    if p <= DIVERGENCE_EXPONENT {
        return (None, Some(p), true);
    }
    (Some(s2 / (2f64.powf(p - 1.0) - 1.0)), Some(p), false)
}

fn summarise(terms: Vec<f64>) -> SwitchedPhotonNumber {
    let (tail_estimate, tail_exponent, divergent) = power_tail(&terms);
    SwitchedPhotonNumber {
        partial_sum: terms.iter().sum(),
        tail_estimate,
        tail_exponent,
        divergent,
        truncation: terms.len(),
    }
}

/// `⟨N_m⟩ = Σ_{n=1}^{N} |β_{nm}|²` at effective reflectivity `r_eff` (cavity
/// width 1).
pub fn particle_number_imperfect(
    m: usize,
    r_eff: f64,
    truncation: usize,
) -> Result<SwitchedPhotonNumber> {
    let profile = SwitchProfile::from_reflectivity(r_eff, 1.0)?;
    particle_number_for_profile(m, &profile, truncation)
}

/// As [`particle_number_imperfect`] for an explicit profile.
pub fn particle_number_for_profile(
    m: usize,
    profile: &SwitchProfile,
    truncation: usize,
) -> Result<SwitchedPhotonNumber> {
    if truncation == 0 {
        return Err(Error::Parameter("truncation must be at least 1"));
    }
    let terms = (1..=truncation)
        .map(|n| beta_imperfect_closed(n, m, profile).map(|b| b.norm_sqr()))
        .collect::<Result<Vec<f64>>>()?;
    Ok(summarise(terms))
}

/// `λ → ∞` counterpart of [`particle_number_imperfect`], built from
/// [`beta_sudden_limit`].
pub fn particle_number_sudden(m: usize, truncation: usize) -> Result<SwitchedPhotonNumber> {
    if truncation == 0 {
        return Err(Error::Parameter("truncation must be at least 1"));
    }
    let terms = (1..=truncation)
        .map(|n| beta_sudden_limit(n, m).map(|b| b.norm_sqr()))
        .collect::<Result<Vec<f64>>>()?;
    Ok(summarise(terms))
}
