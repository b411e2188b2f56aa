use alloc::vec::Vec;

// Needed for float methods without std; unused when std is linked in (tests).
#[allow(unused_imports)]
use num_traits::Float;

use crate::modes::{BogoliubovTable, Kind, Side};
use crate::{Complex64, Error, Result};

/// Largest probability mass allowed outside the Fock cutoff.
pub const MAX_TAIL_MASS: f64 = 1e-6;

/// Reduced state of the fundamental left sub-cavity mode `â₁` in the global
/// vacuum.
///
/// The state is a zero-mean Gaussian fixed by `n̄ = ⟨â₁†â₁⟩` and the
/// anomalous moment `m` with `⟨â₁â₁⟩ = −m`. Its photon-number distribution is
/// stored up to a cutoff.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedVacuumState {
    mean_photon_number: f64,
    anomalous_correlation: Complex64,
    distribution: Vec<f64>,
}

impl ReducedVacuumState {
    /// State from the `j = 1` rows of a Bogoliubov table:
    /// `n̄ = Σ_n |β_{1n}|²`, `m = Σ_n α_{1n} β*_{1n}`.
    pub fn from_table(table: &BogoliubovTable, fock_cutoff: usize) -> Result<Self> {
        let alpha = table.row(Side::Left, Kind::Alpha, 1);
        let beta = table.row(Side::Left, Kind::Beta, 1);
        let nbar = beta.iter().map(|b| b * b).sum();
        let m = alpha.iter().zip(beta).map(|(a, b)| a * b).sum::<f64>();
        Self::from_moments(nbar, Complex64::new(m, 0.0), fock_cutoff)
    }

    /// State from its second moments.
    ///
    /// Writing `λ± = n̄ ± |m|`, the photon-number generating function factorises
    /// as `Σ p_k s^k = Π± (1 + λ±(1 − s))^{−1/2}`, so `p_k` is the convolution of
    /// two negative-binomial-like series of order ½.
    pub fn from_moments(nbar: f64, m: Complex64, fock_cutoff: usize) -> Result<Self> {
        if !(nbar.is_finite() && m.re.is_finite() && m.im.is_finite()) {
            return Err(Error::NonFinite("vacuum moments"));
        }
        if nbar < 0.0 {
            return Err(Error::Domain("mean photon number must be non-negative"));
        }
        let m_abs = m.norm();
        if m_abs * m_abs > nbar * (nbar + 1.0) * (1.0 + 1e-12) + 1e-300 {
            return Err(Error::Domain("moments violate |m|² ≤ n̄(n̄ + 1)"));
        }
        let len = fock_cutoff + 1;
        let plus = half_order_series(nbar + m_abs, len);
        let minus = half_order_series(nbar - m_abs, len);
        let mut p = alloc::vec![0.0; len];
        for (k, slot) in p.iter_mut().enumerate() {
            *slot = (0..=k)
                .map(|i| plus[i] * minus[k - i])
                .sum::<f64>()
                .max(0.0);
        }
        let state = ReducedVacuumState {
            mean_photon_number: nbar,
            anomalous_correlation: m,
            distribution: p,
        };
        let tail = state.tail_mass();
        if tail > MAX_TAIL_MASS {
            return Err(Error::CutoffTooSmall {
                cutoff: fock_cutoff,
                tail,
            });
        }
        Ok(state)
    }

    /// State with an explicit photon-number distribution, e.g. a synthetic point
    /// mass. `n̄` is taken from the distribution.
    pub fn from_distribution(
        distribution: Vec<f64>,
        anomalous_correlation: Complex64,
    ) -> Result<Self> {
        if distribution.is_empty() {
            return Err(Error::Parameter("distribution must not be empty"));
        }
        if distribution.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::Domain(
                "probabilities must be finite and non-negative",
            ));
        }
        let total: f64 = distribution.iter().sum();
        if total > 1.0 + 1e-12 {
            return Err(Error::Domain("probabilities sum to more than 1"));
        }
        if 1.0 - total > MAX_TAIL_MASS {
            return Err(Error::CutoffTooSmall {
                cutoff: distribution.len() - 1,
                tail: 1.0 - total,
            });
        }
        let nbar = distribution
            .iter()
            .enumerate()
            .map(|(k, p)| k as f64 * p)
            .sum();
        Ok(ReducedVacuumState {
            mean_photon_number: nbar,
            anomalous_correlation,
            distribution,
        })
    }

    /// The global vacuum seen by an unmixed mode: `p₀ = 1`.
    pub fn vacuum() -> Self {
        ReducedVacuumState {
            mean_photon_number: 0.0,
            anomalous_correlation: Complex64::new(0.0, 0.0),
            distribution: alloc::vec![1.0],
        }
    }

    pub fn mean_photon_number(&self) -> f64 {
        self.mean_photon_number
    }

    pub fn anomalous_correlation(&self) -> Complex64 {
        self.anomalous_correlation
    }

    /// `p_k` for `k = 0..=cutoff`.
    pub fn distribution(&self) -> &[f64] {
        &self.distribution
    }

    pub fn fock_cutoff(&self) -> usize {
        self.distribution.len() - 1
    }

    /// Probability mass beyond the cutoff.
    pub fn tail_mass(&self) -> f64 {
        (1.0 - self.distribution.iter().sum::<f64>()).max(0.0)
    }

    /// Photon-number variance of the stored distribution.
    pub fn number_variance(&self) -> f64 {
        let (mut m1, mut m2) = (0.0, 0.0);
        for (k, p) in self.distribution.iter().enumerate() {
            let k = k as f64;
            m1 += k * p;
            m2 += k * k * p;
        }
        m2 - m1 * m1
    }

    /// Thermal occupation of the equivalent squeezed thermal state,
    /// `(n_th + ½)² = (n̄ + ½)² − |m|²`.
    pub fn thermal_photons(&self) -> f64 {
        let half = self.mean_photon_number + 0.5;
        let m = self.anomalous_correlation.norm();
        ((half * half - m * m).max(0.25)).sqrt() - 0.5
    }

    /// Squeezing parameter `r` of the equivalent squeezed thermal state,
    /// `cosh 2r = (n̄ + ½)/(n_th + ½)`.
    pub fn squeezing(&self) -> f64 {
        let ratio = (self.mean_photon_number + 0.5) / (self.thermal_photons() + 0.5);
        0.5 * ratio.max(1.0).acosh()
    }
}

/// Coefficients of `(1 + λ(1 − s))^{−1/2}` in powers of `s`.
fn half_order_series(lambda: f64, len: usize) -> Vec<f64> {
    let x = lambda / (1.0 + lambda);
    let mut c = Vec::with_capacity(len);
    let mut term = (1.0 + lambda).powf(-0.5);
    for k in 0..len {
        if k > 0 {
            let kf = k as f64;
            term *= (2.0 * kf - 1.0) / (2.0 * kf) * x;
        }
        c.push(term);
    }
    c
}
