mod common;

use common::*;
use triwave::analysis::*;
use triwave::grid::Discretization;
use triwave::model::*;
use triwave::solver::*;
use triwave::Error;

fn trapped_and_free(
    prm: &ModelParams,
    pot_kind: &PotentialKind,
    init: InitKind,
) -> (SolveResult, SolveResult, PotentialSet) {
    let g = grid(1, 8.0, 256, Discretization::SpectralPeriodic);
    let pot = sample_potential(pot_kind, &g).unwrap();
    let opts = SolverOptions { init, scheme: Scheme::SemiImplicit, ..Default::default() };
    let init = initial_state(&opts.init, &g, 0).unwrap();
    let trapped = minimize(&init, &pot, prm, &opts).unwrap();
    let free = minimize(&init, &PotentialSet::zero(g.clone()), prm, &opts).unwrap();
    assert!(trapped.converged && free.converged);
    (trapped, free, pot)
}

#[test]
fn trapped_minimum_dominates_free_plus_trap_energy_linear() {
    let prm = ModelParams::linear([1.0; 3], 1);
    let (t, f, pot) = trapped_and_free(&prm, &PotentialKind::Harmonic, InitKind::Constant);
    let gap = free_vs_trapped(&t, &f, &pot, &prm).unwrap();
    assert!(gap >= -1e-6, "{gap}");
    assert!(t.energy >= f.energy - 1e-6);
    // periodic box, no trap: constant minimizer with zero energy; gap = 1.5 - 0.75
    assert!(f.energy.abs() < 1e-12);
    assert!((gap - 0.75).abs() < 1e-8, "{gap}");
}

#[test]
fn trapped_minimum_dominates_free_plus_trap_energy_coupled() {
    let prm = ModelParams::new([1.0; 3], 1.0, 3.0, [1.0, 2.0, 1.5], 1);
    for kind in [
        PotentialKind::Harmonic,
        PotentialKind::ShiftedHarmonic { offsets: [0.0, -1.0, -2.0] },
    ] {
        // a constant start is a critical point of the free problem; start localized
        let (t, f, pot) = trapped_and_free(&prm, &kind, InitKind::Gaussian);
        let gap = free_vs_trapped(&t, &f, &pot, &prm).unwrap();
        assert!(gap >= -1e-6, "{kind:?}: {gap}");
    }
}

#[test]
fn mismatched_masses_are_a_comparison_error() {
    let prm = ModelParams::linear([1.0; 3], 1);
    let (t, f, pot) = trapped_and_free(&prm, &PotentialKind::Harmonic, InitKind::Constant);
    let other = prm.with_masses([2.0, 1.0, 1.0]);
    assert!(matches!(free_vs_trapped(&t, &f, &pot, &other), Err(Error::Comparison(_))));
}

#[test]
fn oracle_cases_follow_the_closed_form() {
    let spec = triwave::grid::GridSpec::new(1, 8.0, 256, Discretization::FdDirichlet);
    let case = oracle_harmonic(&ModelParams::linear([2.0, 1.0, 1.0], 1), &spec).unwrap();
    assert_eq!(case.expected_energy, 2.0);
    assert_eq!(case.expected_multipliers.lambda, [-1.0; 3]);
    let spec3 = triwave::grid::GridSpec::new(3, 8.0, 16, Discretization::SpectralPeriodic);
    let case3 = oracle_harmonic(&ModelParams::linear([1.0; 3], 3), &spec3).unwrap();
    assert_eq!(case3.expected_energy, 4.5);
    assert_eq!(case3.expected_multipliers.lambda, [-3.0; 3]);
    assert!(matches!(
        oracle_harmonic(&ModelParams::new([1.0; 3], 0.0, 3.0, [1.0; 3], 1), &spec),
        Err(Error::Misuse(_))
    ));
    assert!(matches!(
        oracle_harmonic(&ModelParams::linear([1.0, 0.0, 1.0], 3), &spec3),
        Err(Error::Config(_))
    ));
}

#[test]
fn fd_oracle_run_is_within_its_resolution_tolerance() {
    let spec = triwave::grid::GridSpec::new(1, 8.0, 128, Discretization::FdDirichlet);
    let case = oracle_harmonic(&ModelParams::linear([2.0, 1.0, 1.0], 1), &spec).unwrap();
    let opts = SolverOptions { init: InitKind::Constant, scheme: Scheme::SemiImplicit, ..Default::default() };
    let (out, res) = run_oracle(&case, &opts).unwrap();
    assert!(out.passed && res.converged, "{out:?}");
    // second-order differences underestimate the eigenvalue
    assert!(out.energy < case.expected_energy);
}

#[test]
fn unknown_sweep_name_is_a_config_error() {
    assert!(matches!("triangle".parse::<SweepKind>(), Err(Error::Config(_))));
    assert_eq!("decomposition".parse::<SweepKind>().unwrap(), SweepKind::EnergyDecomposition);
}
