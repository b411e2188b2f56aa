//! Photon statistics of the reduced vacuum state against a brute-force
//! multimode construction.
//!
//! The global vacuum is built in a three-mode Fock space with at most four
//! quanta per mode. The sub-cavity operator `â₁ = Σₙ (α₁ₙ bₙ − β₁ₙ bₙ†)` is
//! applied to it directly, and the factorial moments `⟨â₁†ʳ â₁ʳ⟩ = ‖â₁ʳ|0⟩‖²`
//! are compared with those of the distribution `p_k`. For `r ≤ 4` no mode
//! can exceed the cutoff, so the brute-force moments are exact.

use vacuumprobe::dynamics::ReducedVacuumState;
use vacuumprobe::modes::{BogoliubovTable, CavityGeometry, Kind, Side};
use vacuumprobe::Complex64;

const MODES: usize = 3;
const LEVELS: usize = 5;

fn index(occ: [usize; MODES]) -> usize {
    occ.iter().rev().fold(0, |acc, &n| acc * LEVELS + n)
}

fn occupation(mut i: usize) -> [usize; MODES] {
    let mut occ = [0; MODES];
    for slot in occ.iter_mut() {
        *slot = i % LEVELS;
        i /= LEVELS;
    }
    occ
}

/// `Σₙ (αₙ bₙ − βₙ bₙ†) ψ` on the truncated space.
fn apply(alpha: &[f64], beta: &[f64], psi: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; psi.len()];
    for (i, &amp) in psi.iter().enumerate() {
        if amp == 0.0 {
            continue;
        }
        let occ = occupation(i);
        for n in 0..MODES {
            if occ[n] > 0 {
                let mut lower = occ;
                lower[n] -= 1;
                out[index(lower)] += alpha[n] * (occ[n] as f64).sqrt() * amp;
            }
            let mut raise = occ;
            raise[n] += 1;
            assert!(raise[n] < LEVELS, "moment order exceeds the cutoff");
            out[index(raise)] -= beta[n] * (raise[n] as f64).sqrt() * amp;
        }
    }
    out
}

fn factorial_moment(p: &[f64], r: usize) -> f64 {
    p.iter()
        .enumerate()
        .map(|(k, pk)| (0..r).map(|i| k.saturating_sub(i) as f64).product::<f64>() * pk)
        .sum()
}

#[test]
fn midpoint_distribution_matches_multimode_construction() {
    let geometry = CavityGeometry::new(1.0, 0.5).unwrap();
    let table = BogoliubovTable::new(geometry, 1, MODES).unwrap();
    let alpha = table.row(Side::Left, Kind::Alpha, 1);
    let beta = table.row(Side::Left, Kind::Beta, 1);
    let nbar: f64 = beta.iter().map(|b| b * b).sum();
    let m: f64 = alpha.iter().zip(beta).map(|(a, b)| a * b).sum();
    let state = ReducedVacuumState::from_moments(nbar, Complex64::new(m, 0.0), 20).unwrap();
    assert!(state.tail_mass() < 1e-12);

    let mut psi = vec![0.0; LEVELS.pow(MODES as u32)];
    psi[0] = 1.0;
    for r in 1..LEVELS {
        psi = apply(alpha, beta, &psi);
        let brute: f64 = psi.iter().map(|x| x * x).sum();
        let from_pk = factorial_moment(state.distribution(), r);
        assert!(
            (brute - from_pk).abs() <= 1e-10 * brute,
            "r = {r}: brute force {brute:e}, distribution {from_pk:e}"
        );
    }
}

#[test]
fn anomalous_moment_matches_multimode_construction() {
    // ⟨â₁â₁⟩ = −m in the brute-force space
    let geometry = CavityGeometry::new(1.0, 0.5).unwrap();
    let table = BogoliubovTable::new(geometry, 1, MODES).unwrap();
    let alpha = table.row(Side::Left, Kind::Alpha, 1);
    let beta = table.row(Side::Left, Kind::Beta, 1);
    let state = ReducedVacuumState::from_table(&table, 20).unwrap();
    let mut vacuum = vec![0.0; LEVELS.pow(MODES as u32)];
    vacuum[0] = 1.0;
    let twice = apply(alpha, beta, &apply(alpha, beta, &vacuum));
    assert!((twice[0] + state.anomalous_correlation().re).abs() < 1e-15);
    // and the equivalent squeezed thermal state reproduces n̄
    let r = state.squeezing();
    let nth = state.thermal_photons();
    let rebuilt = (nth + 0.5) * (2.0 * r).cosh() - 0.5;
    assert!((rebuilt - state.mean_photon_number()).abs() < 1e-12);
}
