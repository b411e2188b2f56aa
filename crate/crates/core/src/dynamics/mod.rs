//! Control-qubit dynamics conditioned on the mirror state.
//!
//! The control atom has two states: `T` (mirror transmissive, cavity
//! Hamiltonian `H_T`) and `R` (mirror reflective, `H_R = H_T + ω₁â₁†â₁`). A
//! drive with coupling `g` and detuning `δ = ν − ω_D` flips the atom from `T`
//! to `R`. Because the global vacuum contains `n̄` sub-cavity photons, the
//! `R` branch is shifted by `δ_R = ω₁ n̄` and resonance moves to `δ = −δ_R`.

mod fock;
mod state;

use alloc::vec::Vec;

// Needed for float methods without std; unused when std is linked in (tests).
#[allow(unused_imports)]
use num_traits::Float;

pub use fock::{FockOracle, MAX_ORACLE_CUTOFF, MAX_ORACLE_DIMENSION, MAX_ORACLE_MODES};
pub use state::{ReducedVacuumState, MAX_TAIL_MASS};

use crate::modes::BogoliubovTable;
use crate::specfun::{sin_pi, sinc};
use crate::{Error, Result, SweepResult};

/// `4(gt)²` above which the first-order result is flagged as unreliable.
pub const PERTURBATIVE_LIMIT: f64 = 0.1;

/// Drive parameters of the control atom. All frequencies are angular.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QubitDrive {
    /// Bare transition frequency `ν`.
    pub transition_frequency: f64,
    /// Drive frequency `ω_D`.
    pub drive_frequency: f64,
    /// Coupling `g ≥ 0`.
    pub coupling: f64,
    /// Linewidth `γ ≥ 0`; carried as metadata, not used in the unitary dynamics.
    pub linewidth: f64,
}

impl QubitDrive {
    pub fn new(
        transition_frequency: f64,
        drive_frequency: f64,
        coupling: f64,
        linewidth: f64,
    ) -> Result<Self> {
        let d = QubitDrive {
            transition_frequency,
            drive_frequency,
            coupling,
            linewidth,
        };
        d.validate()?;
        Ok(d)
    }

    /// Drive specified directly by its detuning; `ν` is set to `δ` and `ω_D` to 0.
    pub fn from_detuning(detuning: f64, coupling: f64) -> Result<Self> {
        QubitDrive::new(detuning, 0.0, coupling, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.transition_frequency,
            self.drive_frequency,
            self.coupling,
            self.linewidth,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("drive parameter"));
        }
        if self.coupling < 0.0 {
            return Err(Error::Domain("coupling must be non-negative"));
        }
        if self.linewidth < 0.0 {
            return Err(Error::Domain("linewidth must be non-negative"));
        }
        Ok(())
    }

    /// `δ = ν − ω_D`.
    pub fn detuning(&self) -> f64 {
        self.transition_frequency - self.drive_frequency
    }

    /// Same atom driven at the frequency that gives detuning `δ`.
    pub fn with_detuning(mut self, detuning: f64) -> Self {
        self.drive_frequency = self.transition_frequency - detuning;
        self
    }

    pub fn with_coupling(mut self, coupling: f64) -> Result<Self> {
        self.coupling = coupling;
        self.validate()?;
        Ok(self)
    }
}

/// How the vacuum average in the first-order probability is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PerturbativeMethod {
    /// Replace `ω₁â₁†â₁` by its mean `δ_R = ω₁n̄`.
    DeltaRApprox,
    /// Average over the photon-number distribution of the reduced state.
    GaussianExact,
}

/// First-order transition probability with diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbative {
    /// Probability, clamped to `[0, 1]`.
    pub probability: f64,
    /// Set when the unclamped expression exceeded 1.
    pub clamped: bool,
    /// Set when `4(gt)² > 0.1`, where first order is no longer trustworthy.
    pub outside_perturbative_regime: bool,
}

fn sinc_sq(x: f64) -> f64 {
    let s = sinc(x);
    s * s
}

/// First-order probability of flipping the control atom after time `t`:
///
/// - `DeltaRApprox`: `(gt)² sinc²((δ + δ_R)t/2)`
/// - `GaussianExact`: `(gt)² Σ_k p_k sinc²((δ + ω₁k)t/2)`
///
/// The prefactor `(gt)²` is the small-time limit of the Rabi formula, so the
/// result agrees with [`rabi_probability`] and the Fock reference solver to
/// leading order.
pub fn pr_perturbative(
    drive: &QubitDrive,
    state: &ReducedVacuumState,
    omega1: f64,
    t: f64,
    method: PerturbativeMethod,
) -> Result<Perturbative> {
    drive.validate()?;
    if !(t.is_finite() && omega1.is_finite()) {
        return Err(Error::NonFinite("time or frequency"));
    }
    if t < 0.0 {
        return Err(Error::Domain("time must be non-negative"));
    }
    let gt = drive.coupling * t;
    let delta = drive.detuning();
    let average = match method {
        PerturbativeMethod::DeltaRApprox => {
            sinc_sq(0.5 * (delta + omega1 * state.mean_photon_number()) * t)
        }
        PerturbativeMethod::GaussianExact => state
            .distribution()
            .iter()
            .enumerate()
            .map(|(k, p)| p * sinc_sq(0.5 * (delta + omega1 * k as f64) * t))
            .sum(),
    };
    let raw = gt * gt * average;
    Ok(Perturbative {
        probability: raw.clamp(0.0, 1.0),
        clamped: raw > 1.0,
        outside_perturbative_regime: 4.0 * gt * gt > PERTURBATIVE_LIMIT,
    })
}

/// Two-level Rabi probability `g²/W² · sin²(W t)` with `W = √(g² + Δ²/4)`.
pub fn rabi_probability(coupling: f64, detuning: f64, t: f64) -> f64 {
    let w2 = coupling * coupling + 0.25 * detuning * detuning;
    if w2 == 0.0 {
        return 0.0;
    }
    let w = w2.sqrt();
    let s = (w * t).sin();
    (coupling * coupling / w2 * s * s).clamp(0.0, 1.0)
}

/// Rabi evolution of the control atom with effective detuning
/// `Δ_eff = δ + effective_shift`, as `p_r` against `t`.
pub fn rabi_evolve(
    drive: &QubitDrive,
    effective_shift: f64,
    t_grid: &[f64],
) -> Result<SweepResult> {
    drive.validate()?;
    fock::check_time_grid(t_grid)?;
    if !effective_shift.is_finite() {
        return Err(Error::NonFinite("effective shift"));
    }
    let detuning = drive.detuning() + effective_shift;
    let p: Vec<f64> = t_grid
        .iter()
        .map(|&t| rabi_probability(drive.coupling, detuning, t))
        .collect();
    let mut sweep = SweepResult::new("t", t_grid.to_vec()).with_observable("p_r", p)?;
    record_drive(&mut sweep, drive);
    sweep.set_meta("effective_shift", effective_shift);
    sweep.set_meta("effective_detuning", detuning);
    Ok(sweep)
}

/// Largest value of [`rabi_probability`] over all times, `g²/W²`.
pub fn rabi_peak(coupling: f64, detuning: f64) -> f64 {
    let w2 = coupling * coupling + 0.25 * detuning * detuning;
    if w2 == 0.0 {
        0.0
    } else {
        coupling * coupling / w2
    }
}

/// Evolves `|T⟩ ⊗ |0_T⟩` on `n_global_modes` global modes with at most
/// `cutoff` quanta each, including the counter-rotating terms.
pub fn fock_oracle_evolve(
    table: &BogoliubovTable,
    drive: &QubitDrive,
    n_global_modes: usize,
    cutoff: usize,
    t_grid: &[f64],
) -> Result<SweepResult> {
    let oracle = FockOracle::new(table, drive, n_global_modes, cutoff, true)?;
    let mut sweep = oracle.evolve(t_grid, false)?;
    record_drive(&mut sweep, drive);
    Ok(sweep)
}

fn record_drive(sweep: &mut SweepResult, drive: &QubitDrive) {
    sweep.set_meta("transition_frequency", drive.transition_frequency);
    sweep.set_meta("drive_frequency", drive.drive_frequency);
    sweep.set_meta("coupling", drive.coupling);
    sweep.set_meta("linewidth", drive.linewidth);
    sweep.set_meta("detuning", drive.detuning());
}

/// Location of a sweep maximum refined by a three-point parabola.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Peak {
    pub location: f64,
    pub value: f64,
    /// Grid index of the largest sample.
    pub index: usize,
}

/// Fits a parabola through the largest sample and its neighbours.
pub fn extract_peak(axis: &[f64], values: &[f64]) -> Result<Peak> {
    if axis.len() != values.len() {
        return Err(Error::LengthMismatch {
            expected: axis.len(),
            found: values.len(),
        });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("sweep values"));
    }
    let index = values
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, f64)>, (i, &v)| match best {
            Some((_, bv)) if bv >= v => best,
            _ => Some((i, v)),
        })
        .map(|(i, _)| i)
        .ok_or(Error::Parameter("empty sweep"))?;
    if index == 0 || index + 1 == values.len() {
        return Err(Error::PeakOutsideGrid { index });
    }
    let (x0, x1, x2) = (axis[index - 1], axis[index], axis[index + 1]);
    let (y0, y1, y2) = (values[index - 1], values[index], values[index + 1]);
    // vertex of the interpolating parabola on a possibly non-uniform grid
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let curvature = (d12 - d01) / (x2 - x0);
    let (location, value) = if curvature < 0.0 {
        let x = 0.5 * (x0 + x1) - d01 / (2.0 * curvature);
        let x = x.clamp(x0, x2);
        let v = y1 + d01 * (x - x1) + curvature * (x - x0) * (x - x1);
        (x, v)
    } else {
        (x1, y1)
    };
    Ok(Peak {
        location,
        value,
        index,
    })
}

/// Detuning scan of the first-order probability.
#[derive(Debug, Clone, PartialEq)]
pub struct DetuningSweep {
    /// `p_r` against `delta`.
    pub sweep: SweepResult,
    pub peak: Peak,
}

/// Evaluates [`pr_perturbative`] on each detuning of `delta_grid` and locates
/// the resonance.
pub fn detuning_sweep(
    drive_template: &QubitDrive,
    state: &ReducedVacuumState,
    omega1: f64,
    t: f64,
    delta_grid: &[f64],
    method: PerturbativeMethod,
) -> Result<DetuningSweep> {
    let mut p = Vec::with_capacity(delta_grid.len());
    for &delta in delta_grid {
        let drive = drive_template.with_detuning(delta);
        p.push(pr_perturbative(&drive, state, omega1, t, method)?.probability);
    }
    let peak = extract_peak(delta_grid, &p)?;
    let mut sweep = SweepResult::new("delta", delta_grid.to_vec()).with_observable("p_r", p)?;
    sweep.set_meta("coupling", drive_template.coupling);
    sweep.set_meta("time", t);
    sweep.set_meta("omega1", omega1);
    sweep.set_meta("mean_photon_number", state.mean_photon_number());
    sweep.set_meta("peak_location", peak.location);
    Ok(DetuningSweep { sweep, peak })
}

/// Parameters of the sub-cavity transmission comb.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IntensityModel {
    /// Fundamental sub-cavity frequency `ω₁`.
    pub omega1: f64,
    /// Finesse `F > 0`.
    pub finesse: f64,
    /// Mirror attenuation `0 ≤ r_att < 1`.
    pub attenuation: f64,
    /// Input intensity `I₀`.
    pub input_intensity: f64,
}

impl IntensityModel {
    pub fn validate(&self) -> Result<()> {
        let all = [
            self.omega1,
            self.finesse,
            self.attenuation,
            self.input_intensity,
        ];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("intensity parameter"));
        }
        if self.omega1 <= 0.0 {
            return Err(Error::Domain("ω₁ must be positive"));
        }
        if self.finesse <= 0.0 {
            return Err(Error::Domain("finesse must be positive"));
        }
        if !(0.0..1.0).contains(&self.attenuation) {
            return Err(Error::Domain("attenuation must satisfy 0 ≤ r_att < 1"));
        }
        Ok(())
    }

    /// `I_max = I₀/(1 − r_att)²`.
    pub fn peak_intensity(&self) -> f64 {
        self.input_intensity / ((1.0 - self.attenuation) * (1.0 - self.attenuation))
    }

    /// Distance from a resonance at which the intensity falls to half its peak,
    /// from `sin(πν/ω₁) = π/(2F)`. `None` when `F < π/2` and no half point exists.
    pub fn half_width(&self) -> Option<f64> {
        let s = core::f64::consts::PI / (2.0 * self.finesse);
        (s <= 1.0).then(|| self.omega1 / core::f64::consts::PI * s.asin())
    }
}

/// Cavity intensity near a sub-cavity resonance weighted by the reflective
/// population: `I = I_max |c_R|² / (1 + (2F/π)² sin²(πν_p/ω₁))`.
pub fn cavity_intensity(pump_frequency: f64, model: &IntensityModel, c_r_sq: f64) -> Result<f64> {
    model.validate()?;
    if !pump_frequency.is_finite() {
        return Err(Error::NonFinite("pump frequency"));
    }
    if !(0.0..=1.0).contains(&c_r_sq) {
        return Err(Error::Domain("|c_R|² must lie in [0, 1]"));
    }
    let s = sin_pi(pump_frequency / model.omega1);
    let coef = 2.0 * model.finesse / core::f64::consts::PI;
    Ok(model.peak_intensity() * c_r_sq / (1.0 + coef * coef * s * s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::{CavityGeometry, SplitRatio};
    use crate::Complex64;
    use alloc::vec;
    use core::f64::consts::PI;

    fn half_table(n: usize) -> BogoliubovTable {
        let g = CavityGeometry::new(1.0, 0.5).unwrap();
        BogoliubovTable::new(g, 1, n).unwrap()
    }

    #[test]
    fn vacuum_state_is_point_mass() {
        let n = 20;
        let g = CavityGeometry::new(1.0, 0.5).unwrap();
        let zeros = vec![0.0; n];
        let mut ones = vec![0.0; n];
        ones[0] = 1.0;
        let t =
            BogoliubovTable::from_parts(g, 1, n, ones.clone(), zeros.clone(), ones, zeros).unwrap();
        let s = ReducedVacuumState::from_table(&t, 10).unwrap();
        assert_eq!(s.mean_photon_number(), 0.0);
        assert_eq!(s.distribution()[0], 1.0);
        assert!(s.distribution()[1..].iter().all(|&p| p == 0.0));
    }

    #[test]
    fn half_split_state() {
        let s = ReducedVacuumState::from_table(&half_table(10_000), 20).unwrap();
        assert!((s.mean_photon_number() - 0.05).abs() < 0.005);
        let p = s.distribution();
        let mean: f64 = p.iter().enumerate().map(|(k, p)| k as f64 * p).sum();
        assert!((mean - s.mean_photon_number()).abs() < 1e-6);
        assert!(s.tail_mass() < 1e-6);
        let m = s.anomalous_correlation().norm();
        let nbar = s.mean_photon_number();
        assert!(m * m <= nbar * (nbar + 1.0));
        assert!(s.thermal_photons() >= 0.0 && s.squeezing() > 0.0);
    }

    #[test]
    fn squeezed_vacuum_has_only_even_counts() {
        let r: f64 = 0.4;
        let nbar = r.sinh().powi(2);
        let m = Complex64::new(r.sinh() * r.cosh(), 0.0);
        let s = ReducedVacuumState::from_moments(nbar, m, 60).unwrap();
        for (k, p) in s.distribution().iter().enumerate() {
            if k % 2 == 1 {
                assert!(p.abs() < 1e-15);
            }
        }
        // p₀ = 1/cosh r
        assert!((s.distribution()[0] - 1.0 / r.cosh()).abs() < 1e-14);
        assert!(s.thermal_photons().abs() < 1e-12);
        assert!((s.squeezing() - r).abs() < 1e-6);
    }

    #[test]
    fn thermal_state_is_geometric() {
        let nbar = 0.3;
        let s = ReducedVacuumState::from_moments(nbar, Complex64::new(0.0, 0.0), 80).unwrap();
        for (k, p) in s.distribution().iter().enumerate() {
            let expect = (nbar / (1.0 + nbar)).powi(k as i32) / (1.0 + nbar);
            assert!((p - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn state_errors() {
        let m = Complex64::new(1.0, 0.0);
        assert!(matches!(
            ReducedVacuumState::from_moments(0.1, m, 10),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ReducedVacuumState::from_moments(2.0, Complex64::new(0.0, 0.0), 4),
            Err(Error::CutoffTooSmall { .. })
        ));
        assert!(ReducedVacuumState::from_distribution(vec![0.5, 0.2], m).is_err());
        assert!(ReducedVacuumState::from_distribution(vec![0.5, -0.1, 0.6], m).is_err());
    }

    #[test]
    fn perturbative_examples() {
        let s = ReducedVacuumState::from_table(&half_table(1000), 20).unwrap();
        let w1 = 2.0 * PI;
        let dr = w1 * s.mean_photon_number();
        let drive = QubitDrive::from_detuning(-dr, 0.01).unwrap();
        let t = 3.0;
        let p = pr_perturbative(&drive, &s, w1, t, PerturbativeMethod::DeltaRApprox).unwrap();
        assert!((p.probability - (0.01 * t) * (0.01 * t)).abs() < 1e-16);
        assert!(!p.clamped && !p.outside_perturbative_regime);
        let off = QubitDrive::from_detuning(0.3, 0.0).unwrap();
        for method in [
            PerturbativeMethod::DeltaRApprox,
            PerturbativeMethod::GaussianExact,
        ] {
            assert_eq!(
                pr_perturbative(&off, &s, w1, t, method)
                    .unwrap()
                    .probability,
                0.0
            );
        }
        let strong = QubitDrive::from_detuning(-dr, 1.0).unwrap();
        let p = pr_perturbative(&strong, &s, w1, 2.0, PerturbativeMethod::DeltaRApprox).unwrap();
        assert!(p.clamped && p.outside_perturbative_regime && p.probability == 1.0);
    }

    #[test]
    fn methods_differ_by_number_variance() {
        let s = ReducedVacuumState::from_table(&half_table(1000), 20).unwrap();
        let w1 = 2.0 * PI;
        let drive = QubitDrive::from_detuning(0.0, 1e-3).unwrap();
        let t = 0.01 / w1;
        let gauss = pr_perturbative(&drive, &s, w1, t, PerturbativeMethod::GaussianExact).unwrap();
        let approx = pr_perturbative(&drive, &s, w1, t, PerturbativeMethod::DeltaRApprox).unwrap();
        let gt2 = (drive.coupling * t).powi(2);
        let diff = (gauss.probability - approx.probability) / gt2;
        let expect = -(w1 * t).powi(2) * s.number_variance() / 12.0;
        assert!(
            (diff - expect).abs() < 1e-3 * expect.abs(),
            "{diff} vs {expect}"
        );
    }

    #[test]
    fn point_mass_state_reduces_to_delta_r() {
        let w1 = 1.7;
        let s =
            ReducedVacuumState::from_distribution(vec![0.0, 0.0, 1.0], Complex64::new(0.0, 0.0))
                .unwrap();
        for delta in [-5.0, -3.4, -1.0, 0.0, 2.0] {
            let drive = QubitDrive::from_detuning(delta, 0.05).unwrap();
            let a = pr_perturbative(&drive, &s, w1, 1.3, PerturbativeMethod::DeltaRApprox).unwrap();
            let b =
                pr_perturbative(&drive, &s, w1, 1.3, PerturbativeMethod::GaussianExact).unwrap();
            assert_eq!(a.probability, b.probability);
        }
    }

    #[test]
    fn rabi_examples() {
        let g = 0.7;
        let drive = QubitDrive::from_detuning(0.0, g).unwrap();
        let t = PI / (2.0 * g);
        let sweep = rabi_evolve(&drive, 0.0, &[0.0, t]).unwrap();
        let p = sweep.observable("p_r").unwrap();
        assert_eq!(p[0], 0.0);
        assert!((p[1] - 1.0).abs() < 1e-15);
        assert!(rabi_evolve(&drive, 0.0, &[1.0, 0.5]).is_err());
        assert!(rabi_evolve(&drive, 0.0, &[-1.0]).is_err());
        // far detuned peak ≈ 4g²/Δ²
        let (g, d) = (1e-3, 1.0);
        let peak = rabi_peak(g, d);
        assert!((peak * d * d / (4.0 * g * g) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn peak_extraction() {
        let axis: Vec<f64> = (0..21).map(|k| -1.0 + 0.1 * k as f64).collect();
        let values: Vec<f64> = axis
            .iter()
            .map(|x| 1.0 - (x - 0.237) * (x - 0.237))
            .collect();
        let peak = extract_peak(&axis, &values).unwrap();
        assert!((peak.location - 0.237).abs() < 1e-12);
        assert!((peak.value - 1.0).abs() < 1e-12);
        let rising: Vec<f64> = axis.clone();
        assert!(matches!(
            extract_peak(&axis, &rising),
            Err(Error::PeakOutsideGrid { index: 20 })
        ));
        assert!(extract_peak(&axis, &values[..3]).is_err());
    }

    #[test]
    fn unshifted_state_peaks_at_zero() {
        let s = ReducedVacuumState::vacuum();
        let grid: Vec<f64> = (0..41).map(|k| -2.0 + 0.1 * k as f64).collect();
        let drive = QubitDrive::from_detuning(0.0, 0.01).unwrap();
        for method in [
            PerturbativeMethod::DeltaRApprox,
            PerturbativeMethod::GaussianExact,
        ] {
            let sw = detuning_sweep(&drive, &s, 1.0, 2.0, &grid, method).unwrap();
            assert!(sw.peak.location.abs() < 1e-12);
        }
    }

    #[test]
    fn sweep_profile_is_symmetric_about_peak() {
        let s = ReducedVacuumState::from_table(&half_table(1000), 20).unwrap();
        let w1 = 2.0 * PI;
        let dr = w1 * s.mean_photon_number();
        let grid: Vec<f64> = (-20..=20).map(|k| -dr + 0.05 * k as f64).collect();
        let drive = QubitDrive::from_detuning(0.0, 0.01).unwrap();
        let sw =
            detuning_sweep(&drive, &s, w1, 5.0, &grid, PerturbativeMethod::DeltaRApprox).unwrap();
        let p = sw.sweep.observable("p_r").unwrap();
        for k in 0..20 {
            assert!((p[k] - p[40 - k]).abs() < 1e-15);
        }
        assert!((sw.peak.location + dr).abs() < 1e-9);
        // peak position does not depend on the coupling strength
        for c in [0.1, 0.5, 1.0] {
            let scaled = drive.with_coupling(0.01 * c).unwrap();
            let other = detuning_sweep(
                &scaled,
                &s,
                w1,
                5.0,
                &grid,
                PerturbativeMethod::DeltaRApprox,
            )
            .unwrap();
            assert!((other.peak.location - sw.peak.location).abs() < 0.05);
        }
    }

    #[test]
    fn intensity_spot_checks() {
        let model = IntensityModel {
            omega1: 2.0,
            finesse: 40.0,
            attenuation: 0.2,
            input_intensity: 3.0,
        };
        let imax = 3.0 / 0.64;
        assert!((cavity_intensity(2.0, &model, 0.3).unwrap() - imax * 0.3).abs() < 1e-15);
        assert!((cavity_intensity(6.0, &model, 1.0).unwrap() - imax).abs() < 1e-15);
        assert_eq!(cavity_intensity(1.234, &model, 0.0).unwrap(), 0.0);
        let hw = model.half_width().unwrap();
        let half = cavity_intensity(2.0 + hw, &model, 1.0).unwrap();
        assert!((half - 0.5 * imax).abs() < 1e-12);
        let mut bad = model;
        bad.attenuation = 1.0;
        assert!(cavity_intensity(1.0, &bad, 0.5).is_err());
        assert!(cavity_intensity(1.0, &model, 1.5).is_err());
        let _ = SplitRatio::new(0.5).unwrap();
    }

    #[test]
    fn fock_oracle_without_drive_stays_transmissive() {
        let table = half_table(3);
        let drive = QubitDrive::from_detuning(0.2, 0.0).unwrap();
        let sweep = fock_oracle_evolve(&table, &drive, 3, 3, &[0.0, 0.5, 1.0, 2.0]).unwrap();
        assert!(sweep.observable("p_r").unwrap().iter().all(|&p| p == 0.0));
    }

    #[test]
    fn fock_oracle_rwa_matches_rabi() {
        let table = half_table(3);
        let drive = QubitDrive::from_detuning(0.1, 0.3).unwrap();
        let oracle = FockOracle::new(&table, &drive, 3, 4, false).unwrap();
        let grid = [0.0, 0.5, 1.0, 2.0, 4.0];
        let sweep = oracle.evolve(&grid, true).unwrap();
        let p = sweep.observable("p_r").unwrap();
        for (t, p) in grid.iter().zip(p) {
            let expect = rabi_probability(0.3, 0.1 + oracle.truncated_delta_r(), *t);
            assert!((p - expect).abs() < 1e-10, "t = {t}: {p} vs {expect}");
        }
        assert!(sweep
            .observable("norm_drift")
            .unwrap()
            .iter()
            .all(|&d| d < 1e-12));
    }

    #[test]
    fn fock_oracle_limits() {
        let table = half_table(10);
        let drive = QubitDrive::from_detuning(0.0, 0.1).unwrap();
        assert!(matches!(
            FockOracle::new(&table, &drive, 5, 2, true),
            Err(Error::DimensionTooLarge { .. })
        ));
        assert!(matches!(
            FockOracle::new(&table, &drive, 2, 7, true),
            Err(Error::DimensionTooLarge { .. })
        ));
        let big = FockOracle::new(&table, &drive, 4, 6, true).unwrap();
        assert_eq!(big.dimension(), 2 * 7usize.pow(4));
    }
}
