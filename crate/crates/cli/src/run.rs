//! Dispatch of a [`RunConfig`] to the numerical core.

use std::collections::BTreeMap;

use rayon::prelude::*;
use vacuumprobe::dynamics::{
    cavity_intensity, extract_peak, fock_oracle_evolve, pr_perturbative, rabi_evolve,
    IntensityModel, PerturbativeMethod, QubitDrive, ReducedVacuumState,
};
use vacuumprobe::modes::{
    bogoliubov_coefficient, recommended_truncation, subcavity_photon_number, BogoliubovTable,
    CavityGeometry, Kind, PhotonNumber, Side, SplitRatio,
};
use vacuumprobe::switching::{particle_number_for_profile, particle_number_sudden, SwitchProfile};
use vacuumprobe::{ParamValue, SweepResult};

use crate::config::{CommandKind, RunConfig};
use crate::error::CliError;
use crate::output::{OutputRecord, Provenance, Results, SCHEMA_VERSION};
use crate::units::omega1_from_length;

/// Environment variable capping the worker count.
pub const THREADS_ENV: &str = "VACUUMPROBE_THREADS";

/// Largest coefficient table the `bogoliubov` command prints.
const MAX_PRINTED_ENTRIES: usize = 1_000_000;

type Scalars = BTreeMap<String, ParamValue>;

/// Worker pool sized by [`THREADS_ENV`], or rayon's default when unset.
pub fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(text) = std::env::var(THREADS_ENV) {
        let n: usize = text.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
            CliError::Usage(format!("{THREADS_ENV}=`{text}` must be a positive integer"))
        })?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

/// Runs the command and wraps the result with its inputs and provenance.
pub fn run(config: &RunConfig) -> Result<OutputRecord, CliError> {
    let pool = thread_pool()?;
    let results = pool.install(|| dispatch(config))?;
    Ok(OutputRecord {
        schema_version: SCHEMA_VERSION.to_string(),
        command: config.command.name().to_string(),
        inputs: config.inputs(),
        results,
        provenance: Provenance::now(),
    })
}

fn dispatch(c: &RunConfig) -> Result<Results, CliError> {
    match c.command {
        CommandKind::Bogoliubov => bogoliubov(c).map(Results::Sweep),
        CommandKind::Photons => photons(c).map(Results::Scalars),
        CommandKind::Shift => shift(c).map(Results::Scalars),
        CommandKind::Dynamics => dynamics(c).map(Results::Sweep),
        CommandKind::Sweep => match c.choice("axis") {
            Some("ratio") => ratio_sweep(c).map(Results::Sweep),
            _ => detuning_sweep(c).map(Results::Sweep),
        },
        CommandKind::Reflectivity => reflectivity(c).map(Results::Sweep),
        CommandKind::Intensity => intensity(c).map(Results::Sweep),
    }
}

fn need_real(c: &RunConfig, name: &str) -> f64 {
    c.real(name)
        .unwrap_or_else(|| panic!("`{name}` is resolved during parsing"))
}

fn need_count(c: &RunConfig, name: &str) -> usize {
    c.count(name)
        .unwrap_or_else(|| panic!("`{name}` is resolved during parsing"))
}

fn ratio(c: &RunConfig) -> Result<SplitRatio, CliError> {
    SplitRatio::new(need_real(c, "ratio")).map_err(CliError::compute("split ratio"))
}

fn truncation_for(c: &RunConfig, a: SplitRatio) -> usize {
    c.count("truncation")
        .unwrap_or_else(|| recommended_truncation(a))
}

fn omega1(c: &RunConfig) -> f64 {
    c.real("omega1")
        .or_else(|| c.real("subcavity-length").map(omega1_from_length))
        .expect("ω₁ or a sub-cavity length is resolved during parsing")
}

fn geometry(c: &RunConfig) -> Result<CavityGeometry, CliError> {
    CavityGeometry::from_frequency(omega1(c), ratio(c)?)
        .map_err(CliError::compute("cavity geometry"))
}

fn flag_column(flags: &[bool]) -> Vec<f64> {
    flags.iter().map(|&f| if f { 1.0 } else { 0.0 }).collect()
}

fn sweep_error(e: vacuumprobe::Error) -> CliError {
    CliError::Compute {
        context: "assembling sweep".into(),
        source: e,
    }
}

fn bogoliubov(c: &RunConfig) -> Result<SweepResult, CliError> {
    let a = ratio(c)?;
    let modes = need_count(c, "modes");
    let n_max = need_count(c, "truncation");
    if modes.saturating_mul(n_max) > MAX_PRINTED_ENTRIES {
        return Err(CliError::Usage(format!(
            "--modes × --truncation = {} exceeds {MAX_PRINTED_ENTRIES}; lower one of them",
            modes.saturating_mul(n_max)
        )));
    }
    let axis: Vec<f64> = (1..=n_max).map(|n| n as f64).collect();
    let mut sweep = SweepResult::new("n", axis);
    for j in 1..=modes {
        for (side, kind, label) in [
            (Side::Left, Kind::Alpha, "alpha_left"),
            (Side::Left, Kind::Beta, "beta_left"),
            (Side::Right, Kind::Alpha, "alpha_right"),
            (Side::Right, Kind::Beta, "beta_right"),
        ] {
            let row = (1..=n_max)
                .into_par_iter()
                .map(|n| bogoliubov_coefficient(side, kind, j, n, a))
                .collect();
            sweep
                .push_observable(format!("{label}_{j}"), row)
                .map_err(sweep_error)?;
        }
    }
    sweep.set_meta("ratio", a.get());
    Ok(sweep)
}

fn photon_scalars(out: &mut Scalars, p: &PhotonNumber, doubled: &PhotonNumber) {
    out.insert("partial_sum".into(), p.partial_sum.into());
    if let Some(t) = p.tail_estimate {
        out.insert("tail_estimate".into(), t.into());
    }
    out.insert("total".into(), p.total().into());
    out.insert("truncation".into(), p.truncation.into());
    out.insert("total_doubled_truncation".into(), doubled.total().into());
    let change = (doubled.total() - p.total()).abs() / p.total().abs().max(f64::MIN_POSITIVE);
    out.insert("doubling_change".into(), change.into());
}

/// Photon number at `N` and `2N` for the convergence report.
fn photons_with_doubling(
    j: usize,
    a: SplitRatio,
    n: usize,
) -> Result<(PhotonNumber, PhotonNumber), CliError> {
    let (p, d) = rayon::join(
        || subcavity_photon_number(j, a, n),
        || subcavity_photon_number(j, a, 2 * n),
    );
    Ok((
        p.map_err(CliError::compute("photon number"))?,
        d.map_err(CliError::compute("photon number"))?,
    ))
}

fn photons(c: &RunConfig) -> Result<Scalars, CliError> {
    let a = ratio(c)?;
    let j = need_count(c, "mode");
    let n = truncation_for(c, a);
    let (p, doubled) = photons_with_doubling(j, a, n)?;
    let mut out = Scalars::new();
    photon_scalars(&mut out, &p, &doubled);
    out.insert("mode".into(), j.into());
    Ok(out)
}

fn shift(c: &RunConfig) -> Result<Scalars, CliError> {
    let geom = geometry(c)?;
    let a = geom.ratio();
    let n = truncation_for(c, a);
    let (p, doubled) = photons_with_doubling(1, a, n)?;
    let w1 = geom.omega1();
    let delta = w1 * p.total();
    let mut out = Scalars::new();
    photon_scalars(&mut out, &p, &doubled);
    out.insert("omega1".into(), w1.into());
    out.insert("delta_r".into(), delta.into());
    out.insert(
        "delta_r_hz".into(),
        (delta / (2.0 * std::f64::consts::PI)).into(),
    );
    if let Some(nu) = c.real("transition") {
        out.insert("delta_r_over_transition".into(), (delta / nu).into());
    }
    if let Some(gamma) = c.real("linewidth") {
        out.insert("delta_r_over_linewidth".into(), (delta / gamma).into());
    }
    Ok(out)
}

fn method(name: &str) -> PerturbativeMethod {
    match name {
        "gaussian" => PerturbativeMethod::GaussianExact,
        _ => PerturbativeMethod::DeltaRApprox,
    }
}

fn reduced_state(c: &RunConfig, geom: &CavityGeometry) -> Result<ReducedVacuumState, CliError> {
    let n = truncation_for(c, geom.ratio());
    let table = BogoliubovTable::new(*geom, 1, n).map_err(CliError::compute("Bogoliubov table"))?;
    ReducedVacuumState::from_table(&table, need_count(c, "fock-cutoff"))
        .map_err(CliError::compute("reduced vacuum state"))
}

fn perturbative_columns(
    drives: &[QubitDrive],
    state: &ReducedVacuumState,
    w1: f64,
    times: &[f64],
    method: PerturbativeMethod,
) -> Result<(Vec<f64>, Vec<bool>), CliError> {
    let results = drives
        .par_iter()
        .zip(times.par_iter())
        .map(|(d, &t)| pr_perturbative(d, state, w1, t, method))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::compute("first-order probability"))?;
    Ok((
        results.iter().map(|r| r.probability).collect(),
        results
            .iter()
            .map(|r| r.outside_perturbative_regime)
            .collect(),
    ))
}

fn dynamics(c: &RunConfig) -> Result<SweepResult, CliError> {
    let geom = geometry(c)?;
    let w1 = geom.omega1();
    let drive = QubitDrive::from_detuning(need_real(c, "detuning"), need_real(c, "coupling"))
        .map_err(CliError::compute("qubit drive"))?;
    let times = c.grid("t-grid").expect("t-grid is required").points();
    let name = c.choice("method").expect("method has a default");
    let mut sweep = match name {
        "fock" => {
            let modes = need_count(c, "oracle-modes");
            let table = BogoliubovTable::new(geom, 1, modes)
                .map_err(CliError::compute("Bogoliubov table"))?;
            fock_oracle_evolve(
                &table,
                &drive,
                modes,
                need_count(c, "oracle-cutoff"),
                &times,
            )
            .map_err(CliError::compute("Fock reference solver"))?
        }
        "rabi" => {
            let n = truncation_for(c, geom.ratio());
            let shift = vacuumprobe::modes::delta_r(&geom, n)
                .map_err(CliError::compute("frequency shift"))?;
            rabi_evolve(&drive, shift, &times).map_err(CliError::compute("Rabi evolution"))?
        }
        _ => {
            let state = reduced_state(c, &geom)?;
            let drives = vec![drive; times.len()];
            let (p, outside) = perturbative_columns(&drives, &state, w1, &times, method(name))?;
            let mut s = SweepResult::new("t", times.clone());
            s.push_observable("p_r", p).map_err(sweep_error)?;
            s.push_observable("outside_perturbative_regime", flag_column(&outside))
                .map_err(sweep_error)?;
            s.set_meta("mean_photon_number", state.mean_photon_number());
            s.set_meta("delta_r", w1 * state.mean_photon_number());
            s.set_meta("coupling", drive.coupling);
            s.set_meta("detuning", drive.detuning());
            s
        }
    };
    sweep.set_meta("method", name);
    sweep.set_meta("omega1", w1);
    sweep.set_meta("ratio", geom.ratio().get());
    Ok(sweep)
}

fn detuning_sweep(c: &RunConfig) -> Result<SweepResult, CliError> {
    let geom = geometry(c)?;
    let w1 = geom.omega1();
    let deltas = c.grid("grid").expect("grid is required").points();
    let t = need_real(c, "time");
    let template = QubitDrive::from_detuning(0.0, need_real(c, "coupling"))
        .map_err(CliError::compute("qubit drive"))?;
    let state = reduced_state(c, &geom)?;
    let name = c.choice("method").expect("method has a default");
    let drives: Vec<QubitDrive> = deltas.iter().map(|&d| template.with_detuning(d)).collect();
    let times = vec![t; deltas.len()];
    let (p, outside) = perturbative_columns(&drives, &state, w1, &times, method(name))?;
    let peak = extract_peak(&deltas, &p);
    let mut s = SweepResult::new("delta", deltas);
    s.push_observable("p_r", p).map_err(sweep_error)?;
    s.push_observable("outside_perturbative_regime", flag_column(&outside))
        .map_err(sweep_error)?;
    s.set_meta("method", name);
    s.set_meta("omega1", w1);
    s.set_meta("ratio", geom.ratio().get());
    s.set_meta("time", t);
    s.set_meta("coupling", template.coupling);
    s.set_meta("mean_photon_number", state.mean_photon_number());
    s.set_meta("delta_r", w1 * state.mean_photon_number());
    match peak {
        Ok(peak) => {
            s.set_meta("peak_location", peak.location);
            s.set_meta("peak_value", peak.value);
            s.set_meta("peak_status", "interior");
        }
        Err(_) => s.set_meta("peak_status", "grid edge"),
    }
    Ok(s)
}

fn ratio_sweep(c: &RunConfig) -> Result<SweepResult, CliError> {
    let w1 = omega1(c);
    let ratios = c.grid("grid").expect("grid is required").points();
    let fixed = c.count("truncation");
    let rows = ratios
        .par_iter()
        .map(|&a| {
            let a = SplitRatio::new(a)?;
            let n = fixed.unwrap_or_else(|| recommended_truncation(a));
            subcavity_photon_number(1, a, n)
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::compute("photon number"))?;
    let mut s = SweepResult::new("ratio", ratios);
    s.push_observable("partial_sum", rows.iter().map(|p| p.partial_sum).collect())
        .map_err(sweep_error)?;
    s.push_observable("photon_number", rows.iter().map(|p| p.total()).collect())
        .map_err(sweep_error)?;
    s.push_observable("delta_r", rows.iter().map(|p| w1 * p.total()).collect())
        .map_err(sweep_error)?;
    s.push_observable(
        "truncation",
        rows.iter().map(|p| p.truncation as f64).collect(),
    )
    .map_err(sweep_error)?;
    s.set_meta("omega1", w1);
    Ok(s)
}

fn reflectivity(c: &RunConfig) -> Result<SweepResult, CliError> {
    let grid = c.grid("reff-grid").expect("reff-grid is required").points();
    let m = need_count(c, "mode");
    let n = need_count(c, "truncation");
    let width = need_real(c, "width");
    let rows = grid
        .par_iter()
        .map(|&r| {
            let profile = SwitchProfile::from_reflectivity(r, width)?;
            Ok((profile.rate(), particle_number_for_profile(m, &profile, n)?))
        })
        .collect::<Result<Vec<_>, vacuumprobe::Error>>()
        .map_err(CliError::compute("imperfect-mirror particle number"))?;
    let sudden =
        particle_number_sudden(m, n).map_err(CliError::compute("sudden-switching limit"))?;
    let values: Vec<f64> = rows.iter().map(|(_, p)| p.partial_sum).collect();
    let increasing = values.windows(2).all(|w| w[1] > w[0]);
    let mut s = SweepResult::new("r_eff", grid);
    s.push_observable("rate", rows.iter().map(|(l, _)| *l).collect())
        .map_err(sweep_error)?;
    s.push_observable("particle_number", values)
        .map_err(sweep_error)?;
    s.push_observable(
        "divergent",
        flag_column(&rows.iter().map(|(_, p)| p.divergent).collect::<Vec<_>>()),
    )
    .map_err(sweep_error)?;
    if let Some(exponents) = rows
        .iter()
        .map(|(_, p)| p.tail_exponent)
        .collect::<Option<Vec<f64>>>()
    {
        s.push_observable("tail_exponent", exponents)
            .map_err(sweep_error)?;
    }
    s.set_meta("mode", m);
    s.set_meta("truncation", n);
    s.set_meta("width", width);
    s.set_meta("sudden_limit", sudden.partial_sum);
    s.set_meta("sudden_limit_divergent", sudden.divergent);
    s.set_meta("strictly_increasing", increasing);
    Ok(s)
}

fn intensity(c: &RunConfig) -> Result<SweepResult, CliError> {
    let model = IntensityModel {
        omega1: need_real(c, "omega1"),
        finesse: need_real(c, "finesse"),
        attenuation: need_real(c, "attenuation"),
        input_intensity: need_real(c, "input-intensity"),
    };
    let c_r_sq = need_real(c, "c-r-sq");
    let pumps = c.grid("pump-grid").expect("pump-grid is required").points();
    let values = pumps
        .par_iter()
        .map(|&p| cavity_intensity(p, &model, c_r_sq))
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::compute("cavity intensity"))?;
    let mut s = SweepResult::new("pump_frequency", pumps);
    s.push_observable("intensity", values)
        .map_err(sweep_error)?;
    s.set_meta("peak_intensity", model.peak_intensity());
    if let Some(w) = model.half_width() {
        s.set_meta("half_width", w);
    }
    Ok(s)
}
