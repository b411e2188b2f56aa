//! Mode algebra of a cavity suddenly divided by a perfect mirror.
//!
//! A cavity `[0, L]` is split at `x = r` into a left sub-cavity of length `r`
//! and a right one of length `r̄ = L − r`. Sub-cavity modes are expanded in the
//! global modes; `α_{jn}` and `β_{jn}` mix sub-cavity mode `j` with global
//! mode `n` (`ᾱ`, `β̄` on the right). All lengths and times are in natural
//! units (`c = 1`).

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

// Needed for float methods without std; unused when std is linked in (tests).
#[allow(unused_imports)]
use num_traits::Float;

use crate::specfun::{integrate_complex, sin_pi, QuadratureSpec};
use crate::{Complex64, Error, Result};

/// Default number of global modes kept in sums over `n`.
pub const DEFAULT_TRUNCATION: usize = 10_000;

/// Largest `modes × truncation` a [`BogoliubovTable`] will allocate per matrix.
pub const MAX_TABLE_ENTRIES: usize = 50_000_000;

/// Largest `N` accepted by [`quadratic_coefficients`] (the result holds `N × N` matrices).
pub const MAX_QUADRATIC_MODES: usize = 2048;

/// Length ratio `a = r/L`, strictly between 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "f64", into = "f64"))]
pub struct SplitRatio(f64);

impl SplitRatio {
    pub fn new(a: f64) -> Result<Self> {
        if a > 0.0 && a < 1.0 {
            Ok(SplitRatio(a))
        } else {
            Err(Error::Domain("length ratio must satisfy 0 < a < 1"))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// `ā = 1 − a`.
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }
}

impl TryFrom<f64> for SplitRatio {
    type Error = Error;
    fn try_from(a: f64) -> Result<Self> {
        SplitRatio::new(a)
    }
}

impl From<SplitRatio> for f64 {
    fn from(a: SplitRatio) -> f64 {
        a.0
    }
}

/// Which sub-cavity a coefficient refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Side {
    /// `[0, r]`, containing the control atom.
    Left,
    /// `[r, L]`.
    Right,
}

/// Positive-frequency (`Alpha`) or negative-frequency (`Beta`) mixing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Kind {
    Alpha,
    Beta,
}

/// Cavity of length `L` with a mirror plane at `x = r`.
///
/// `reflect_bandwidth` (the frequency range over which the mirror reflects) and
/// `subcavity_linewidth` are carried along as metadata.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CavityGeometry {
    global_length: f64,
    subcavity_length: f64,
    reflect_bandwidth: f64,
    subcavity_linewidth: f64,
}

impl CavityGeometry {
    /// Geometry from the two lengths, requiring `0 < r < L`.
    pub fn new(global_length: f64, subcavity_length: f64) -> Result<Self> {
        if !(global_length.is_finite() && subcavity_length.is_finite()) {
            return Err(Error::NonFinite("cavity length"));
        }
        if !(subcavity_length > 0.0 && subcavity_length < global_length) {
            return Err(Error::Domain("cavity lengths must satisfy 0 < r < L"));
        }
        Ok(CavityGeometry {
            global_length,
            subcavity_length,
            reflect_bandwidth: 0.0,
            subcavity_linewidth: 0.0,
        })
    }

    /// Geometry from the fundamental sub-cavity frequency `ω₁ = π/r` and `a = r/L`.
    pub fn from_frequency(omega1: f64, a: SplitRatio) -> Result<Self> {
        if !(omega1 > 0.0 && omega1.is_finite()) {
            return Err(Error::Domain("fundamental frequency must be positive"));
        }
        let r = PI / omega1;
        CavityGeometry::new(r / a.get(), r)
    }

    pub fn with_reflect_bandwidth(mut self, delta: f64) -> Result<Self> {
        if !(delta >= 0.0 && delta.is_finite()) {
            return Err(Error::Domain("reflection bandwidth must be non-negative"));
        }
        self.reflect_bandwidth = delta;
        Ok(self)
    }

    pub fn with_subcavity_linewidth(mut self, kappa: f64) -> Result<Self> {
        if !(kappa >= 0.0 && kappa.is_finite()) {
            return Err(Error::Domain("sub-cavity linewidth must be non-negative"));
        }
        self.subcavity_linewidth = kappa;
        Ok(self)
    }

    pub fn global_length(&self) -> f64 {
        self.global_length
    }

    pub fn subcavity_length(&self) -> f64 {
        self.subcavity_length
    }

    /// `r̄ = L − r`.
    pub fn complement_length(&self) -> f64 {
        self.global_length - self.subcavity_length
    }

    pub fn ratio(&self) -> SplitRatio {
        SplitRatio(self.subcavity_length / self.global_length)
    }

    pub fn reflect_bandwidth(&self) -> f64 {
        self.reflect_bandwidth
    }

    pub fn subcavity_linewidth(&self) -> f64 {
        self.subcavity_linewidth
    }

    /// Fundamental left sub-cavity frequency `ω₁ = π/r`.
    pub fn omega1(&self) -> f64 {
        PI / self.subcavity_length
    }

    /// Global mode frequency `Ω_n = πn/L`.
    pub fn global_frequency(&self, n: usize) -> f64 {
        PI * n as f64 / self.global_length
    }

    /// Sub-cavity frequency `ω_m = πm/r` (left) or `ω̄_m = πm/r̄` (right).
    pub fn subcavity_frequency(&self, side: Side, m: usize) -> f64 {
        let len = match side {
            Side::Left => self.subcavity_length,
            Side::Right => self.complement_length(),
        };
        PI * m as f64 / len
    }
}

/// Global cavity mode `U_n(x, t) = (LΩ_n)^{−1/2} sin(πnx/L) e^{−iΩ_n t}`.
pub fn mode_function(n: usize, x: f64, t: f64, geometry: &CavityGeometry) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Parameter("mode index starts at 1"));
    }
    let len = geometry.global_length;
    if !(0.0..=len).contains(&x) {
        return Err(Error::Domain("position outside the cavity"));
    }
    if !t.is_finite() {
        return Err(Error::NonFinite("time"));
    }
    let omega = geometry.global_frequency(n);
    let amplitude = sin_pi(n as f64 * x / len) / (len * omega).sqrt();
    Ok(Complex64::from_polar(1.0, -omega * t) * amplitude)
}

/// `sin(πx)/(πx)` with the removable point at `x = 0` resolved.
fn sinc_pi(x: f64) -> f64 {
    if x.abs() < 1e-9 {
        1.0 - (PI * x) * (PI * x) / 6.0
    } else {
        sin_pi(x) / (PI * x)
    }
}

/// Bogoliubov coefficient of sub-cavity mode `j` on global mode `n` after a
/// sudden split at ratio `a`.
///
/// With `x = na − j` on the left (`x = nā − j` on the right) the coefficients
/// are `√(j/n)·sin(πx)/(πx)` for `Alpha` and `√(j/n)·sin(πx)/(π(na + j))` for
/// `Beta`; the right side carries an extra `(−1)^{n+j}`. The `Alpha` form is
/// written through `sin(πx)/(πx)`, so the points `n = j/a` (or `n = j/ā`)
/// return the analytic limit `√(j/n)` without special casing.
///
/// # Panics
/// If `j` or `n` is zero.
pub fn bogoliubov_coefficient(side: Side, kind: Kind, j: usize, n: usize, a: SplitRatio) -> f64 {
    assert!(j >= 1 && n >= 1, "mode indices start at 1");
    let (jf, nf) = (j as f64, n as f64);
    // n·ā − j is formed as (n − j) − n·a to avoid rounding in 1 − a
    let (x, scaled) = match side {
        Side::Left => (nf * a.0 - jf, nf * a.0),
        Side::Right => ((nf - jf) - nf * a.0, nf - nf * a.0),
    };
    let root = (jf / nf).sqrt();
    let value = match kind {
        Kind::Alpha => root * sinc_pi(x),
        Kind::Beta => root * sin_pi(x) / (PI * (scaled + jf)),
    };
    match side {
        Side::Right if (n + j) % 2 == 1 => -value,
        _ => value,
    }
}

/// Independent evaluation of a Bogoliubov coefficient as a Klein–Gordon
/// overlap between a sub-cavity mode and a global mode at `t = 0`.
///
/// With `L = 1`, the overlap integral `I = ∫ sin(πj(x − x₀)/ℓ) sin(πnx) dx`
/// over the sub-cavity gives `α = (Ω_n + ω_j) I/√(ℓ ω_j Ω_n)` and
/// `β = (Ω_n − ω_j) I/√(ℓ ω_j Ω_n)`.
pub fn overlap_oracle(side: Side, kind: Kind, j: usize, n: usize, a: SplitRatio) -> Result<f64> {
    if j == 0 || n == 0 {
        return Err(Error::Parameter("mode indices start at 1"));
    }
    let geometry = CavityGeometry::new(1.0, a.0)?;
    let (lo, hi) = match side {
        Side::Left => (0.0, a.0),
        Side::Right => (a.0, 1.0),
    };
    let ell = hi - lo;
    let omega_j = geometry.subcavity_frequency(side, j);
    let omega_n = geometry.global_frequency(n);
    let (jf, nf) = (j as f64, n as f64);
    let spec = QuadratureSpec::new(1e-15, 1e-13, 4000)?;
    let result = integrate_complex(
        |x| Complex64::new(sin_pi(jf * (x - lo) / ell) * sin_pi(nf * x), 0.0),
        lo,
        hi,
        &spec,
    )?;
    if !result.converged {
        return Err(Error::Convergence {
            what: "mode overlap quadrature",
            iterations: result.evaluations,
        });
    }
    let norm = (ell * omega_j * omega_n).sqrt();
    let factor = match kind {
        Kind::Alpha => omega_n + omega_j,
        Kind::Beta => omega_n - omega_j,
    };
    Ok(factor * result.value.re / norm)
}

/// Dense coefficient matrices for sub-cavity modes `1..=modes` and global
/// modes `1..=truncation`.
#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovTable {
    geometry: CavityGeometry,
    modes: usize,
    truncation: usize,
    alpha_left: Vec<f64>,
    beta_left: Vec<f64>,
    alpha_right: Vec<f64>,
    beta_right: Vec<f64>,
}

impl BogoliubovTable {
    pub fn new(geometry: CavityGeometry, modes: usize, truncation: usize) -> Result<Self> {
        Self::check_dims(modes, truncation)?;
        let a = geometry.ratio();
        let fill = |side, kind| {
            let mut m = Vec::with_capacity(modes * truncation);
            for j in 1..=modes {
                for n in 1..=truncation {
                    m.push(bogoliubov_coefficient(side, kind, j, n, a));
                }
            }
            m
        };
        Ok(BogoliubovTable {
            geometry,
            modes,
            truncation,
            alpha_left: fill(Side::Left, Kind::Alpha),
            beta_left: fill(Side::Left, Kind::Beta),
            alpha_right: fill(Side::Right, Kind::Alpha),
            beta_right: fill(Side::Right, Kind::Beta),
        })
    }

    /// Table from explicit row-major `[j][n]` matrices, e.g. a synthetic
    /// transformation for testing. Entries must be finite.
    pub fn from_parts(
        geometry: CavityGeometry,
        modes: usize,
        truncation: usize,
        alpha_left: Vec<f64>,
        beta_left: Vec<f64>,
        alpha_right: Vec<f64>,
        beta_right: Vec<f64>,
    ) -> Result<Self> {
        Self::check_dims(modes, truncation)?;
        for m in [&alpha_left, &beta_left, &alpha_right, &beta_right] {
            if m.len() != modes * truncation {
                return Err(Error::LengthMismatch {
                    expected: modes * truncation,
                    found: m.len(),
                });
            }
            if m.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite("Bogoliubov table entry"));
            }
        }
        Ok(BogoliubovTable {
            geometry,
            modes,
            truncation,
            alpha_left,
            beta_left,
            alpha_right,
            beta_right,
        })
    }

    fn check_dims(modes: usize, truncation: usize) -> Result<()> {
        if modes == 0 || truncation == 0 {
            return Err(Error::Parameter("table dimensions must be positive"));
        }
        let entries = modes.saturating_mul(truncation);
        if entries > MAX_TABLE_ENTRIES {
            return Err(Error::DimensionTooLarge {
                dimension: entries,
                limit: MAX_TABLE_ENTRIES,
            });
        }
        Ok(())
    }

    pub fn geometry(&self) -> &CavityGeometry {
        &self.geometry
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    fn matrix(&self, side: Side, kind: Kind) -> &[f64] {
        match (side, kind) {
            (Side::Left, Kind::Alpha) => &self.alpha_left,
            (Side::Left, Kind::Beta) => &self.beta_left,
            (Side::Right, Kind::Alpha) => &self.alpha_right,
            (Side::Right, Kind::Beta) => &self.beta_right,
        }
    }

    /// Coefficients of sub-cavity mode `j` against global modes `1..=N`.
    ///
    /// # Panics
    /// If `j` is outside `1..=modes`.
    pub fn row(&self, side: Side, kind: Kind, j: usize) -> &[f64] {
        assert!(
            j >= 1 && j <= self.modes,
            "sub-cavity mode {j} not in table"
        );
        let start = (j - 1) * self.truncation;
        &self.matrix(side, kind)[start..start + self.truncation]
    }

    /// Single entry; `None` outside the table.
    pub fn get(&self, side: Side, kind: Kind, j: usize, n: usize) -> Option<f64> {
        if j == 0 || j > self.modes || n == 0 || n > self.truncation {
            return None;
        }
        Some(self.matrix(side, kind)[(j - 1) * self.truncation + n - 1])
    }

    /// `Σ_n |β_{jn}|²` for a left sub-cavity mode over the stored truncation.
    pub fn photon_number(&self, j: usize) -> f64 {
        self.row(Side::Left, Kind::Beta, j)
            .iter()
            .map(|b| b * b)
            .sum()
    }

    /// `Σ_n (|α_{jn}|² − |β_{jn}|²)`, which tends to 1 as the truncation grows.
    pub fn normalization(&self, side: Side, j: usize) -> f64 {
        let alpha = self.row(side, Kind::Alpha, j);
        let beta = self.row(side, Kind::Beta, j);
        alpha.iter().zip(beta).map(|(a, b)| a * a - b * b).sum()
    }

    /// `δ_R = ω₁ Σ_n |β_{1n}|²` over the stored coefficients.
    pub fn delta_r(&self) -> f64 {
        self.geometry.omega1() * self.photon_number(1)
    }
}

/// Partial sum of `|β_{jn}|²` with a tail estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PhotonNumber {
    /// `Σ_{n=1}^{N} |β_{jn}|²`.
    pub partial_sum: f64,
    /// Estimated `Σ_{n>N} |β_{jn}|²`, assuming a `1/n³` tail. `None` when `N`
    /// is too small for the fit.
    pub tail_estimate: Option<f64>,
    pub truncation: usize,
}

impl PhotonNumber {
    /// Partial sum plus the tail estimate when one is available.
    pub fn total(&self) -> f64 {
        self.partial_sum + self.tail_estimate.unwrap_or(0.0)
    }

    /// Tail estimate relative to the total.
    pub fn relative_tail(&self) -> Option<f64> {
        self.tail_estimate.map(|t| t / self.total())
    }
}

/// Smallest truncation for which a tail estimate is reported.
const MIN_TAIL_FIT: usize = 16;

/// Truncation large enough for the `a → 0` regime: `max(10⁴, 10/a)`.
pub fn recommended_truncation(a: SplitRatio) -> usize {
    let scaled = (10.0 / a.0).ceil();
    if scaled > DEFAULT_TRUNCATION as f64 {
        scaled as usize
    } else {
        DEFAULT_TRUNCATION
    }
}

/// Mean photon number in left sub-cavity mode `j` after the split,
/// `⟨n̂_j⟩ = Σ_n |β_{jn}|²`, truncated at `N` global modes.
///
/// The remainder is estimated from the last octave: if `S` is the sum over
/// `N/2 < n ≤ N` and the terms fall off as `n⁻³`, the tail is `S/3`.
pub fn subcavity_photon_number(j: usize, a: SplitRatio, truncation: usize) -> Result<PhotonNumber> {
    if j == 0 {
        return Err(Error::Parameter("mode index starts at 1"));
    }
    if truncation == 0 {
        return Err(Error::Parameter("truncation must be at least 1"));
    }
    let mut partial = 0.0;
    let mut last_octave = 0.0;
    for n in 1..=truncation {
        let b = bogoliubov_coefficient(Side::Left, Kind::Beta, j, n, a);
        partial += b * b;
        if 2 * n > truncation {
            last_octave += b * b;
        }
    }
    Ok(PhotonNumber {
        partial_sum: partial,
        tail_estimate: (truncation >= MIN_TAIL_FIT).then_some(last_octave / 3.0),
        truncation,
    })
}

/// Frequency shift of the control atom, `δ_R = ω₁ Σ_n |β_{1n}|²`, including
/// the tail estimate.
pub fn delta_r(geometry: &CavityGeometry, truncation: usize) -> Result<f64> {
    let photons = subcavity_photon_number(1, geometry.ratio(), truncation)?;
    Ok(geometry.omega1() * photons.total())
}

/// Commutator `[b̃_i, b̃_j†]` of the modified global modes with one reflected
/// right-cavity mode `k`:
/// `δ_{ij} + α_{1i}α_{1j} − β_{1i}β_{1j} + ᾱ_{ki}ᾱ_{kj} − β̄_{ki}β̄_{kj}`.
///
/// For `k ∉ {i, j}` the deviation from `δ_{ij}` is `O(a²)` as `a → 0`.
pub fn tilde_commutator(i: usize, j: usize, a: SplitRatio, k: usize) -> Result<f64> {
    if i == 0 || j == 0 || k == 0 {
        return Err(Error::Parameter("mode indices start at 1"));
    }
    let c = |side, kind, m, n| bogoliubov_coefficient(side, kind, m, n, a);
    let delta = if i == j { 1.0 } else { 0.0 };
    let left = c(Side::Left, Kind::Alpha, 1, i) * c(Side::Left, Kind::Alpha, 1, j)
        - c(Side::Left, Kind::Beta, 1, i) * c(Side::Left, Kind::Beta, 1, j);
    let right = c(Side::Right, Kind::Alpha, k, i) * c(Side::Right, Kind::Alpha, k, j)
        - c(Side::Right, Kind::Beta, k, i) * c(Side::Right, Kind::Beta, k, j);
    Ok(delta + left + right)
}

/// Coefficients of the fundamental sub-cavity mode energy `ω₁ a†a` written in
/// global modes `b_n`:
///
/// `ω₁ a†a = Σ_{nm} (f_{nm} + h_{nm}) b_n†b_m − Σ_{nm} (g_{nm} b_n†b_m† + h.c.) + ω₁ Σ_n |β_{1n}|²`
///
/// with `f_{nm} = ω₁α_{1n}α*_{1m}`, `h_{nm} = ω₁β_{1n}β*_{1m}` and
/// `g_{nm} = ω₁α_{1n}β*_{1m}`. The diagonal parts are `ω_n = f_{nn} + h_{nn}`
/// and `g_n = g_{nn}`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticCoefficients {
    pub modes: usize,
    pub omega_n: Vec<f64>,
    /// Row-major `N × N`.
    pub f_nm: Vec<Complex64>,
    pub g_n: Vec<Complex64>,
    /// Row-major `N × N`.
    pub g_nm: Vec<Complex64>,
    /// Row-major `N × N` hopping contribution from the `β` parts.
    pub hop_nm: Vec<Complex64>,
    /// Normal-ordering constant `ω₁ Σ_n |β_{1n}|²`.
    pub vacuum_offset: f64,
}

impl QuadraticCoefficients {
    pub fn f(&self, n: usize, m: usize) -> Complex64 {
        self.f_nm[(n - 1) * self.modes + m - 1]
    }

    pub fn g(&self, n: usize, m: usize) -> Complex64 {
        self.g_nm[(n - 1) * self.modes + m - 1]
    }

    pub fn hop(&self, n: usize, m: usize) -> Complex64 {
        self.hop_nm[(n - 1) * self.modes + m - 1]
    }
}

/// Builds [`QuadraticCoefficients`] for global modes `1..=N`.
pub fn quadratic_coefficients(
    geometry: &CavityGeometry,
    truncation: usize,
) -> Result<QuadraticCoefficients> {
    if truncation == 0 {
        return Err(Error::Parameter("truncation must be at least 1"));
    }
    if truncation > MAX_QUADRATIC_MODES {
        return Err(Error::DimensionTooLarge {
            dimension: truncation,
            limit: MAX_QUADRATIC_MODES,
        });
    }
    let table = BogoliubovTable::new(*geometry, 1, truncation)?;
    Ok(quadratic_from_table(&table))
}

/// [`QuadraticCoefficients`] from the first sub-cavity row of a table.
pub fn quadratic_from_table(table: &BogoliubovTable) -> QuadraticCoefficients {
    quadratic_from_rows(
        table.geometry().omega1(),
        table.row(Side::Left, Kind::Alpha, 1),
        table.row(Side::Left, Kind::Beta, 1),
    )
}

/// [`QuadraticCoefficients`] from explicit `α_{1n}` and `β_{1n}` rows of equal length.
///
/// # Panics
/// If the rows differ in length.
pub fn quadratic_from_rows(omega1: f64, alpha: &[f64], beta: &[f64]) -> QuadraticCoefficients {
    assert_eq!(alpha.len(), beta.len(), "coefficient rows differ in length");
    let n_modes = alpha.len();
    let outer = |x: &[f64], y: &[f64]| {
        let mut m = vec![Complex64::new(0.0, 0.0); n_modes * n_modes];
        for (r, xr) in x.iter().enumerate() {
            for (c, yc) in y.iter().enumerate() {
                m[r * n_modes + c] = Complex64::new(omega1 * xr * yc, 0.0);
            }
        }
        m
    };
    let f_nm = outer(alpha, alpha);
    let g_nm = outer(alpha, beta);
    let hop_nm = outer(beta, beta);
    let omega_n = (0..n_modes)
        .map(|n| omega1 * (alpha[n] * alpha[n] + beta[n] * beta[n]))
        .collect();
    let g_n = (0..n_modes).map(|n| g_nm[n * n_modes + n]).collect();
    let vacuum_offset = omega1 * beta.iter().map(|b| b * b).sum::<f64>();
    QuadraticCoefficients {
        modes: n_modes,
        omega_n,
        f_nm,
        g_n,
        g_nm,
        hop_nm,
        vacuum_offset,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ratio(a: f64) -> SplitRatio {
        SplitRatio::new(a).unwrap()
    }

    #[test]
    fn split_ratio_bounds() {
        assert!(SplitRatio::new(0.0).is_err());
        assert!(SplitRatio::new(1.0).is_err());
        assert!(SplitRatio::new(f64::NAN).is_err());
        assert_eq!(ratio(0.25).complement(), 0.75);
    }

    #[test]
    fn geometry_accessors() {
        let g = CavityGeometry::new(4.0, 1.0).unwrap();
        assert_eq!(g.ratio().get(), 0.25);
        assert_eq!(g.complement_length(), 3.0);
        assert!((g.omega1() - PI).abs() < 1e-15);
        assert!((g.subcavity_frequency(Side::Right, 3) - PI).abs() < 1e-15);
        assert!((g.global_frequency(2) - PI / 2.0).abs() < 1e-15);
        assert!(CavityGeometry::new(1.0, 1.0).is_err());
        assert!(g.with_reflect_bandwidth(-1.0).is_err());
        let h = CavityGeometry::from_frequency(2.0, ratio(0.5)).unwrap();
        assert!((h.subcavity_length() - PI / 2.0).abs() < 1e-15);
        assert!((h.global_length() - PI).abs() < 1e-15);
    }

    #[test]
    fn mode_function_nodes_and_antinode() {
        let g = CavityGeometry::new(2.0, 0.5).unwrap();
        let len = g.global_length();
        assert_eq!(mode_function(1, 0.0, 0.7, &g).unwrap().norm(), 0.0);
        assert_eq!(mode_function(1, len, 0.7, &g).unwrap().norm(), 0.0);
        assert_eq!(mode_function(2, len / 2.0, 1.3, &g).unwrap().norm(), 0.0);
        let peak = mode_function(1, len / 2.0, 0.0, &g).unwrap();
        let expect = 1.0 / (len * g.global_frequency(1)).sqrt();
        assert!((peak.re - expect).abs() < 1e-15 && peak.im == 0.0);
        assert!(mode_function(1, len * 1.01, 0.0, &g).is_err());
        assert!(mode_function(1, -0.1, 0.0, &g).is_err());
    }

    #[test]
    fn documented_coefficients() {
        let half = ratio(0.5);
        let b11 = bogoliubov_coefficient(Side::Left, Kind::Beta, 1, 1, half);
        assert!((b11 + 2.0 / (3.0 * PI)).abs() < 1e-15);
        assert_eq!(
            bogoliubov_coefficient(Side::Left, Kind::Beta, 1, 2, half),
            0.0
        );
        let a12 = bogoliubov_coefficient(Side::Left, Kind::Alpha, 1, 2, half);
        assert!((a12 - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn removable_points_are_continuous() {
        // n = j/a exactly and slightly off it
        let a = 0.25;
        let at = bogoliubov_coefficient(Side::Left, Kind::Alpha, 1, 4, ratio(a));
        let near = bogoliubov_coefficient(Side::Left, Kind::Alpha, 1, 4, ratio(a + 1e-12));
        assert!((at - 0.5).abs() < 1e-15);
        assert!((at - near).abs() < 1e-10);
        let right = bogoliubov_coefficient(Side::Right, Kind::Alpha, 3, 4, ratio(a));
        // (−1)^{n+j} = −1 here
        assert!((right + (3.0f64 / 4.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_overlap_oracle() {
        for a in [0.1, 0.3, 0.5] {
            for j in 1..=3 {
                for n in 1..=20 {
                    for side in [Side::Left, Side::Right] {
                        for kind in [Kind::Alpha, Kind::Beta] {
                            let cf = bogoliubov_coefficient(side, kind, j, n, ratio(a));
                            let or = overlap_oracle(side, kind, j, n, ratio(a)).unwrap();
                            let err = (cf - or).abs();
                            assert!(
                                err <= 1e-8 * cf.abs() || err <= 1e-10,
                                "{side:?} {kind:?} j={j} n={n} a={a}: {cf} vs {or}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn parity_zeros() {
        // a = 1/3: β_{jn} = 0 for n a multiple of 3 with n ≠ 3j
        let a = ratio(1.0 / 3.0);
        for j in 1..=3 {
            for n in (3..=60).step_by(3) {
                let b = bogoliubov_coefficient(Side::Left, Kind::Beta, j, n, a);
                assert!(b.abs() < 1e-15, "j={j} n={n}: {b}");
            }
        }
        let half = ratio(0.5);
        for n in (2..=100).step_by(2) {
            assert_eq!(
                bogoliubov_coefficient(Side::Left, Kind::Beta, 1, n, half),
                0.0
            );
        }
    }

    #[test]
    fn normalization_approaches_one() {
        let g = CavityGeometry::new(1.0, 0.5).unwrap();
        let table = BogoliubovTable::new(g, 2, 10_000).unwrap();
        for side in [Side::Left, Side::Right] {
            for j in 1..=2 {
                let s = table.normalization(side, j);
                assert!((s - 1.0).abs() < 1e-2, "{side:?} j={j}: {s}");
            }
        }
        // monotone approach on the left
        let mut prev = f64::INFINITY;
        for n in [10, 100, 1000, 10_000] {
            let dev = (BogoliubovTable::new(g, 1, n)
                .unwrap()
                .normalization(Side::Left, 1)
                - 1.0)
                .abs();
            assert!(dev < prev);
            prev = dev;
        }
    }

    #[test]
    fn photon_number_examples() {
        let half = ratio(0.5);
        let one = subcavity_photon_number(1, half, 1).unwrap();
        assert!((one.partial_sum - 4.0 / (9.0 * PI * PI)).abs() < 1e-15);
        assert!(one.tail_estimate.is_none());
        let big = subcavity_photon_number(1, half, 10_000).unwrap();
        assert!((big.total() - 0.05).abs() < 0.005, "{}", big.total());
        let small = ratio(1e-3);
        let n = recommended_truncation(small);
        assert_eq!(n, 10_000);
        let conv = subcavity_photon_number(1, small, n).unwrap();
        assert!((conv.total() - 0.075).abs() < 0.005, "{}", conv.total());
        assert!(conv.relative_tail().unwrap() < 5e-3, "{:?}", conv);
    }

    #[test]
    fn photon_number_monotone_in_truncation() {
        let a = ratio(0.37);
        let mut prev = 0.0;
        for n in 1..300 {
            let s = subcavity_photon_number(1, a, n).unwrap().partial_sum;
            assert!(s >= prev);
            prev = s;
        }
    }

    #[test]
    fn tail_estimate_tracks_converged_sum() {
        let a = ratio(0.5);
        let reference = subcavity_photon_number(1, a, 200_000).unwrap().total();
        let short = subcavity_photon_number(1, a, 1000).unwrap();
        let with_tail = (short.total() - reference).abs();
        let without = (short.partial_sum - reference).abs();
        assert!(with_tail < 0.1 * without, "{with_tail} vs {without}");
    }

    #[test]
    fn delta_r_examples() {
        let g = CavityGeometry::new(2.0, 1.0).unwrap();
        let scaled = CavityGeometry::from_frequency(1.0, ratio(0.5)).unwrap();
        let d = delta_r(&scaled, 10_000).unwrap();
        assert!((d - 0.05).abs() < 0.005);
        let photons = subcavity_photon_number(1, ratio(0.5), 10_000)
            .unwrap()
            .total();
        assert!((delta_r(&g, 10_000).unwrap() - g.omega1() * photons).abs() < 1e-15);

        let n = 50;
        let zeros = vec![0.0; n];
        let ones: Vec<f64> = (0..n).map(|k| if k == 0 { 1.0 } else { 0.0 }).collect();
        let identity =
            BogoliubovTable::from_parts(g, 1, n, ones.clone(), zeros.clone(), ones, zeros).unwrap();
        assert_eq!(identity.delta_r(), 0.0);
    }

    #[test]
    fn from_parts_validates() {
        let g = CavityGeometry::new(2.0, 1.0).unwrap();
        let v = vec![0.0; 6];
        assert!(BogoliubovTable::from_parts(
            g,
            2,
            3,
            v.clone(),
            v.clone(),
            v.clone(),
            vec![0.0; 5]
        )
        .is_err());
        let mut bad = v.clone();
        bad[2] = f64::NAN;
        assert!(BogoliubovTable::from_parts(g, 2, 3, v.clone(), v.clone(), v, bad).is_err());
    }

    #[test]
    fn tilde_commutator_scaling() {
        let diag = tilde_commutator(1, 1, ratio(1e-3), 3).unwrap() - 1.0;
        assert!(diag.abs() <= 10.0 * 1e-6, "{diag}");
        let off = |a: f64| tilde_commutator(1, 2, ratio(a), 3).unwrap();
        assert!(off(1e-3).abs() < 1e-5);
        let ratio_4 = off(1e-3) / off(5e-4);
        assert!((ratio_4 - 4.0).abs() < 0.05, "{ratio_4}");
        // log-log slope over a geometric grid
        let grid: Vec<f64> = (0..6).map(|k| 1e-2 * 0.5f64.powi(k)).collect();
        for w in grid.windows(2) {
            let slope = (off(w[0]).abs() / off(w[1]).abs()).ln() / (w[0] / w[1]).ln();
            assert!((slope - 2.0).abs() < 0.1, "slope {slope}");
        }
    }

    #[test]
    fn quadratic_coefficient_identities() {
        let g = CavityGeometry::from_frequency(2.0, ratio(0.5)).unwrap();
        let q = quadratic_coefficients(&g, 40).unwrap();
        let w1 = g.omega1();
        let a = ratio(0.5);
        let alpha = |n| bogoliubov_coefficient(Side::Left, Kind::Alpha, 1, n, a);
        let beta = |n| bogoliubov_coefficient(Side::Left, Kind::Beta, 1, n, a);
        for n in 1..=40 {
            assert!((q.f(n, n).re - w1 * alpha(n) * alpha(n)).abs() < 1e-15);
            for m in 1..=40 {
                assert_eq!(q.f(n, m), q.f(m, n).conj());
                assert_eq!(q.hop(n, m), q.hop(m, n).conj());
            }
        }
        assert!((q.omega_n[0] - w1 * (alpha(1).powi(2) + beta(1).powi(2))).abs() < 1e-15);
        let sum_omega: f64 = q.omega_n.iter().sum();
        let sum_diff: f64 = (1..=40).map(|n| alpha(n).powi(2) - beta(n).powi(2)).sum();
        let lhs = sum_omega - w1 * sum_diff;
        assert!((lhs - 2.0 * q.vacuum_offset).abs() < 1e-13);
        assert!(q.omega_n.iter().all(|&w| w >= 0.0));
        assert!(quadratic_coefficients(&g, MAX_QUADRATIC_MODES + 1).is_err());
    }
}
