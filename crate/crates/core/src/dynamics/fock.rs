//! Reference solver on a truncated multimode Fock space.

use alloc::vec;
use alloc::vec::Vec;

// Needed for float methods without std; unused when std is linked in (tests).
#[allow(unused_imports)]
use num_traits::Float;

use super::QubitDrive;
use crate::modes::{quadratic_from_rows, BogoliubovTable, Kind, QuadraticCoefficients, Side};
use crate::{Complex64, Error, Result, SweepResult};

pub const MAX_ORACLE_MODES: usize = 4;
pub const MAX_ORACLE_CUTOFF: usize = 6;
/// Upper bound on the qubit ⊗ Fock dimension.
pub const MAX_ORACLE_DIMENSION: usize = 10_000;

/// Taylor steps are sized so that `h·‖H‖` stays below this.
const STEP_NORM: f64 = 0.5;
const MAX_TAYLOR_TERMS: usize = 60;
/// Allowed norm drift per unit time (and at least this much in absolute terms).
const NORM_DRIFT_RATE: f64 = 1e-8;

/// Compressed sparse row matrix.
#[derive(Debug, Clone)]
struct Csr {
    dim: usize,
    row_start: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Complex64>,
}

impl Csr {
    fn from_rows(rows: Vec<Vec<(usize, Complex64)>>) -> Self {
        let dim = rows.len();
        let mut row_start = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_start.push(0);
        for mut row in rows {
            row.sort_by_key(|e| e.0);
            let mut last: Option<usize> = None;
            for (c, v) in row {
                if last == Some(c) {
                    *vals.last_mut().unwrap() += v;
                } else {
                    cols.push(c);
                    vals.push(v);
                    last = Some(c);
                }
            }
            row_start.push(cols.len());
        }
        Csr {
            dim,
            row_start,
            cols,
            vals,
        }
    }

    fn apply(&self, x: &[Complex64], out: &mut [Complex64]) {
        for (r, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_start[r]..self.row_start[r + 1] {
                acc += self.vals[k] * x[self.cols[k]];
            }
            *slot = acc;
        }
    }

    /// Gershgorin bound on the spectral radius.
    fn norm_bound(&self) -> f64 {
        (0..self.dim)
            .map(|r| {
                self.vals[self.row_start[r]..self.row_start[r + 1]]
                    .iter()
                    .map(|v| v.norm())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

/// Occupation-number basis of `modes` bosonic modes with `0..=cutoff` quanta each.
struct FockBasis {
    modes: usize,
    levels: usize,
    dim: usize,
}

impl FockBasis {
    fn occupation(&self, index: usize, mode: usize) -> usize {
        (index / self.levels.pow(mode as u32)) % self.levels
    }

    fn stride(&self, mode: usize) -> usize {
        self.levels.pow(mode as u32)
    }
}

/// Control qubit coupled to a few global cavity modes, with the reflective
/// branch carrying the full quadratic form of `ω₁â₁†â₁`.
///
/// The Hamiltonian is block structured in the qubit basis `{T, R}`:
///
/// - `T` block: `Σ_n Ω_n b_n†b_n`
/// - `R` block: `Σ_n Ω_n b_n†b_n + δ + ω₁â₁†â₁`, with `ω₁â₁†â₁` expanded in the
///   `b_n` through [`QuadraticCoefficients`]
/// - `g` couples `|T, s⟩` and `|R, s⟩` for every Fock state `s`.
///
/// With `counter_rotating = false` the pair-creation and pair-annihilation
/// terms are dropped, which leaves the vacuum an eigenstate of the cavity part
/// and reduces the dynamics to a two-level Rabi problem with shift equal to the
/// truncated `δ_R`.
#[derive(Debug, Clone)]
pub struct FockOracle {
    modes: usize,
    cutoff: usize,
    fock_dim: usize,
    coefficients: QuadraticCoefficients,
    hamiltonian: Csr,
    norm_bound: f64,
    counter_rotating: bool,
}

impl FockOracle {
    pub fn new(
        table: &BogoliubovTable,
        drive: &QubitDrive,
        modes: usize,
        cutoff: usize,
        counter_rotating: bool,
    ) -> Result<Self> {
        if modes == 0 || cutoff == 0 {
            return Err(Error::Parameter(
                "oracle needs at least one mode and cutoff ≥ 1",
            ));
        }
        if modes > table.truncation() {
            return Err(Error::Parameter("oracle modes exceed the table truncation"));
        }
        if modes > MAX_ORACLE_MODES {
            return Err(Error::DimensionTooLarge {
                dimension: modes,
                limit: MAX_ORACLE_MODES,
            });
        }
        if cutoff > MAX_ORACLE_CUTOFF {
            return Err(Error::DimensionTooLarge {
                dimension: cutoff,
                limit: MAX_ORACLE_CUTOFF,
            });
        }
        let levels = cutoff + 1;
        let fock_dim = levels.pow(modes as u32);
        if 2 * fock_dim > MAX_ORACLE_DIMENSION {
            return Err(Error::DimensionTooLarge {
                dimension: 2 * fock_dim,
                limit: MAX_ORACLE_DIMENSION,
            });
        }
        let geometry = table.geometry();
        let coefficients = quadratic_from_rows(
            geometry.omega1(),
            &table.row(Side::Left, Kind::Alpha, 1)[..modes],
            &table.row(Side::Left, Kind::Beta, 1)[..modes],
        );
        let omegas: Vec<f64> = (1..=modes).map(|n| geometry.global_frequency(n)).collect();
        let basis = FockBasis {
            modes,
            levels,
            dim: fock_dim,
        };
        let hamiltonian =
            build_hamiltonian(&basis, &omegas, &coefficients, drive, counter_rotating);
        let norm_bound = hamiltonian.norm_bound();
        Ok(FockOracle {
            modes,
            cutoff,
            fock_dim,
            coefficients,
            hamiltonian,
            norm_bound,
            counter_rotating,
        })
    }

    /// Total Hilbert-space dimension (qubit ⊗ Fock).
    pub fn dimension(&self) -> usize {
        2 * self.fock_dim
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn counter_rotating(&self) -> bool {
        self.counter_rotating
    }

    /// `ω₁ Σ_{n≤M} |β_{1n}|²` over the modes kept in the oracle.
    pub fn truncated_delta_r(&self) -> f64 {
        self.coefficients.vacuum_offset
    }

    /// Upper bound on `‖H‖` used to size the integration steps.
    pub fn norm_bound(&self) -> f64 {
        self.norm_bound
    }

    /// Evolves `|T⟩ ⊗ |0⟩` and records `P_R(t)`, the population of the
    /// reflective branch, on a sorted grid of non-negative times.
    ///
    /// The result carries `p_r` and `norm_drift` observables. With
    /// `step_check`, the evolution is repeated with half the step size and the
    /// largest difference is stored as `step_check_difference` metadata.
    pub fn evolve(&self, t_grid: &[f64], step_check: bool) -> Result<SweepResult> {
        let (p_r, drift) = self.propagate(t_grid, 1)?;
        let mut sweep = SweepResult::new("t", t_grid.to_vec());
        if step_check {
            let (fine, _) = self.propagate(t_grid, 2)?;
            let diff = p_r
                .iter()
                .zip(&fine)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            sweep.set_meta("step_check_difference", diff);
        }
        sweep.push_observable("p_r", p_r)?;
        sweep.push_observable("norm_drift", drift)?;
        sweep.set_meta("modes", self.modes);
        sweep.set_meta("cutoff", self.cutoff);
        sweep.set_meta("dimension", self.dimension());
        sweep.set_meta("counter_rotating", self.counter_rotating);
        sweep.set_meta("truncated_delta_r", self.truncated_delta_r());
        Ok(sweep)
    }

    fn propagate(&self, t_grid: &[f64], refine: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        check_time_grid(t_grid)?;
        let dim = self.dimension();
        let mut psi = vec![Complex64::new(0.0, 0.0); dim];
        psi[0] = Complex64::new(1.0, 0.0);
        let mut scratch = Scratch::new(dim);
        let mut now = 0.0;
        let mut p_r = Vec::with_capacity(t_grid.len());
        let mut drift = Vec::with_capacity(t_grid.len());
        for &t in t_grid {
            let span = t - now;
            if span > 0.0 {
                let steps = ((span * self.norm_bound / STEP_NORM).ceil() as usize).max(1) * refine;
                let h = span / steps as f64;
                for _ in 0..steps {
                    self.taylor_step(&mut psi, h, &mut scratch)?;
                }
                now = t;
            }
            let norm2: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
            let deviation = (norm2.sqrt() - 1.0).abs();
            if deviation > NORM_DRIFT_RATE * t.max(1.0) {
                return Err(Error::NormDriftExceeded {
                    time: t,
                    drift: deviation,
                });
            }
            let reflective: f64 = psi[self.fock_dim..].iter().map(|c| c.norm_sqr()).sum();
            p_r.push(reflective.clamp(0.0, 1.0));
            drift.push(deviation);
        }
        Ok((p_r, drift))
    }

    /// `ψ ← Σ_k (−ihH)^k ψ / k!`, truncated once a term is negligible.
    fn taylor_step(&self, psi: &mut [Complex64], h: f64, s: &mut Scratch) -> Result<()> {
        s.term.copy_from_slice(psi);
        let factor = Complex64::new(0.0, -h);
        for k in 1..=MAX_TAYLOR_TERMS {
            self.hamiltonian.apply(&s.term, &mut s.next);
            let scale = factor / k as f64;
            let mut size = 0.0;
            for (t, n) in s.term.iter_mut().zip(&s.next) {
                *t = n * scale;
                size += t.norm_sqr();
            }
            for (p, t) in psi.iter_mut().zip(&s.term) {
                *p += t;
            }
            if size.sqrt() < 1e-17 {
                return Ok(());
            }
        }
        Err(Error::Convergence {
            what: "Taylor propagator",
            iterations: MAX_TAYLOR_TERMS,
        })
    }
}

struct Scratch {
    term: Vec<Complex64>,
    next: Vec<Complex64>,
}

impl Scratch {
    fn new(dim: usize) -> Self {
        Scratch {
            term: vec![Complex64::new(0.0, 0.0); dim],
            next: vec![Complex64::new(0.0, 0.0); dim],
        }
    }
}

pub(crate) fn check_time_grid(t_grid: &[f64]) -> Result<()> {
    if t_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::NonFinite("time grid"));
    }
    if t_grid.iter().any(|&t| t < 0.0) {
        return Err(Error::Domain("times must be non-negative"));
    }
    if t_grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::Parameter("time grid must be sorted"));
    }
    Ok(())
}

// Occupations of two modes are read and shifted together, so index loops read best here.
#[allow(clippy::needless_range_loop)]
fn build_hamiltonian(
    basis: &FockBasis,
    omegas: &[f64],
    q: &QuadraticCoefficients,
    drive: &QubitDrive,
    counter_rotating: bool,
) -> Csr {
    let d = basis.dim;
    let mut rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); 2 * d];
    let re = |v: f64| Complex64::new(v, 0.0);
    for s in 0..d {
        let occ: Vec<usize> = (0..basis.modes).map(|n| basis.occupation(s, n)).collect();
        let free: f64 = occ.iter().zip(omegas).map(|(&k, w)| k as f64 * w).sum();
        rows[s].push((s, re(free)));
        rows[d + s].push((d + s, re(free + drive.detuning() + q.vacuum_offset)));
        rows[s].push((d + s, re(drive.coupling)));
        rows[d + s].push((s, re(drive.coupling)));

        // hopping: Σ_{nm} (f + h)_{nm} b_n† b_m, applied to column state s
        for m in 0..basis.modes {
            if occ[m] == 0 {
                continue;
            }
            let lowered = s - basis.stride(m);
            let amp_m = (occ[m] as f64).sqrt();
            for n in 0..basis.modes {
                let occ_n = if n == m { occ[n] - 1 } else { occ[n] };
                if occ_n == basis.levels - 1 {
                    continue;
                }
                let target = lowered + basis.stride(n);
                let amp = amp_m * ((occ_n + 1) as f64).sqrt();
                let c = q.f(n + 1, m + 1) + q.hop(n + 1, m + 1);
                rows[d + target].push((d + s, c * amp));
            }
        }

        if counter_rotating {
            // −Σ_{nm} g_{nm} b_n† b_m† and its adjoint −Σ_{nm} g*_{nm} b_m b_n
            for m in 0..basis.modes {
                if occ[m] == basis.levels - 1 {
                    continue;
                }
                let raised = s + basis.stride(m);
                let amp_m = ((occ[m] + 1) as f64).sqrt();
                for n in 0..basis.modes {
                    let occ_n = if n == m { occ[n] + 1 } else { occ[n] };
                    if occ_n == basis.levels - 1 {
                        continue;
                    }
                    let target = raised + basis.stride(n);
                    let amp = amp_m * ((occ_n + 1) as f64).sqrt();
                    let g = q.g(n + 1, m + 1);
                    rows[d + target].push((d + s, -g * amp));
                    rows[d + s].push((d + target, -g.conj() * amp));
                }
            }
        }
    }
    Csr::from_rows(rows)
}
