//! One check per acceptance criterion. Each prints a single PASS/FAIL line
//! with the measured quantities and fails the test on FAIL.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use common::*;
use trijunction_core::compiler::{rotation_matrix, sweep, SweepSettings};
use trijunction_core::hamiltonians::{Configuration, TrijunctionParams};
use trijunction_core::linalg::{frobenius, phase_aligned_distance, CMatrix};
use trijunction_core::majorana::{build_sub_operators, BraidStep, ExchangeOperator};
use trijunction_core::mapping::Slot;
use trijunction_core::simulator::{configuration_ground_space, project_protocol, BraidingProtocol};
use trijunction_core::{
    braid_unitary, compile_rotation, fidelity, project_braid, run_braiding, LayoutKind, Method, PauliAxis,
    PauliString, Phase, QubitLayout, Sign,
};

const PROJECTOR_TOL: f64 = 1e-10;
const SINGLE_SITE_PHASE_TOL: f64 = 1e-9;
const THREE_SITE_PHASE_TOL: f64 = 1e-6;
const UNITARITY_TOL: f64 = 1e-8;
const BRAID_FIDELITY_TOL: f64 = 1e-9;
const BRIDGE_TOL: f64 = 1e-10;
const MONOTONE_NOISE: f64 = 1e-3;
const SLOPE_TARGET: f64 = -1.0;
const SLOPE_TOL: f64 = 0.3;
const FRAGMENT_TOL: f64 = 1e-9;

fn report(id: u32, name: &str, pass: bool, detail: String, elapsed: Duration, budget: Duration) {
    let pass = pass && elapsed < budget;
    println!(
        "{} criterion {id} ({name}): {detail} [{:.3} s, budget {} s]",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    assert!(pass, "criterion {id} failed: {detail}");
}

#[test]
fn criterion_1_conjugation_chain() {
    let start = Instant::now();
    let sub = build_sub_operators(&BraidStep::new(2, 3).unwrap(), 3).unwrap();
    let acting = |v: &[ExchangeOperator]| v.iter().rev().copied().collect::<Vec<_>>();
    let h1 = golden_h12().conjugate(&acting(&sub.transfer));
    let h2 = h1.conjugate(&acting(&sub.junction));
    let h13 = h2.conjugate(&acting(&sub.restore));
    let checks = [("H(1)", h1 == printed_h1()), ("H(2)", h2 == printed_h2()), ("H_13", h13 == golden_h13())];
    let detail = checks.iter().map(|(n, ok)| format!("{n} {}", if *ok { "match" } else { "MISMATCH" })).collect::<Vec<_>>().join(", ");
    report(1, "three-site conjugation chain", checks.iter().all(|c| c.1), detail, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_2_single_site_golden_matrices() {
    let start = Instant::now();
    let layout = QubitLayout::coupler(1).unwrap();
    let gs = configuration_ground_space(&layout, &Configuration::new(1, 2).unwrap(), &TrijunctionParams::default()).unwrap();
    let site = |arm| Slot::Site { arm, site: 0 };
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut reference = CMatrix::zeros(16, 2);
    reference[(layout.basis_index(&[]).unwrap(), 0)] = h.into();
    reference[(layout.basis_index(&[site(1), site(2)]).unwrap(), 0)] = h.into();
    reference[(layout.basis_index(&[site(1)]).unwrap(), 1)] = h.into();
    reference[(layout.basis_index(&[site(2)]).unwrap(), 1)] = h.into();
    let projector_distance = frobenius(&(gs.projector() - &reference * reference.adjoint()));
    let single = project_braid(&braid_unitary(&layout, 3).unwrap(), &gs).unwrap();
    let double = project_braid(&braid_unitary(&layout, 6).unwrap(), &gs).unwrap();
    // spectrum {1, i} up to a global phase: λ_2/λ_1 = ±i
    let ratio = single.eigenvalues[1] / single.eigenvalues[0];
    let spectrum_ok = (ratio.norm() - 1.0).abs() < SINGLE_SITE_PHASE_TOL && ratio.re.abs() < SINGLE_SITE_PHASE_TOL;
    let pass = projector_distance < PROJECTOR_TOL
        && spectrum_ok
        && (single.delta_phi - FRAC_PI_2).abs() <= SINGLE_SITE_PHASE_TOL
        && (double.delta_phi - PI).abs() <= SINGLE_SITE_PHASE_TOL;
    let detail = format!(
        "projector distance {projector_distance:.2e} (< {PROJECTOR_TOL:.0e}), eigenvalue ratio {ratio:.6}, Δφ single {:.12} (π/2 ± {SINGLE_SITE_PHASE_TOL:.0e}), Δφ double {:.12} (π ± {SINGLE_SITE_PHASE_TOL:.0e})",
        single.delta_phi, double.delta_phi
    );
    report(2, "single-site ground space and braid phases", pass, detail, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_3_three_site_braid_phase() {
    let start = Instant::now();
    let layout = QubitLayout::coupler(3).unwrap();
    let gs = configuration_ground_space(&layout, &Configuration::new(1, 2).unwrap(), &TrijunctionParams::with_sites(3)).unwrap();
    let u = braid_unitary(&layout, 3).unwrap();
    let single = project_braid(&u, &gs).unwrap();
    let double = project_braid(&(&u * &u), &gs).unwrap();
    let defect = single.unitarity_defect.max(double.unitarity_defect);
    let pass = (single.delta_phi - FRAC_PI_2).abs() <= THREE_SITE_PHASE_TOL
        && (double.delta_phi - PI).abs() <= THREE_SITE_PHASE_TOL
        && defect < UNITARITY_TOL;
    let streamed = project_protocol(&BraidingProtocol::new(&layout).unwrap(), 6, &gs).unwrap();
    let detail = format!(
        "{} qubits, Δφ single {:.12} (π/2 ± {THREE_SITE_PHASE_TOL:.0e}), Δφ double {:.12} (π ± {THREE_SITE_PHASE_TOL:.0e}), six-step protocol Δφ {:.12}, unitarity defect {defect:.2e} (< {UNITARITY_TOL:.0e})",
        layout.total_qubits(),
        single.delta_phi,
        double.delta_phi,
        streamed.delta_phi
    );
    report(3, "three-site braid phase", pass && (streamed.delta_phi - PI).abs() <= THREE_SITE_PHASE_TOL, detail, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_4_logical_braid_action() {
    let start = Instant::now();
    let mut worst: f64 = 1.0;
    for kind in LayoutKind::ALL {
        for n in 1..=2 {
            let layout = QubitLayout::new(kind, n).unwrap();
            for sign in [Sign::Plus, Sign::Minus] {
                let out = run_braiding(&initial(&layout, sign), &layout, 6).unwrap();
                worst = worst.min(fidelity(&initial(&layout, sign.flipped()), &out).unwrap());
            }
        }
    }
    let detail = format!("min fidelity |⟨Ψ∓|U|Ψ±⟩|² over n ∈ {{1,2}}, both mappings, both signs = {worst:.15} (≥ 1 − {BRAID_FIDELITY_TOL:.0e})");
    report(4, "logical braid action", worst >= 1.0 - BRAID_FIDELITY_TOL, detail, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_5_bridge_property() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for kind in LayoutKind::ALL {
        for n in 1..=2 {
            worst = worst.max(bridge_error(&QubitLayout::new(kind, n).unwrap()));
        }
    }
    // the Frobenius norm bounds the operator norm from above
    let detail = format!("max ‖O M O† − M'‖_F over all exchanges and quadratic terms, n ≤ 2, both mappings = {worst:.2e} (< {BRIDGE_TOL:.0e})");
    report(5, "matrix/symbolic conjugation bridge", worst < BRIDGE_TOL, detail, start.elapsed(), Duration::from_secs(120));
}

#[test]
fn criterion_6_trotter_behaviour() {
    let start = Instant::now();
    let fidelities = adiabatic_sweep(SWEEP_TAU);
    let monotone = fidelities.windows(2).all(|w| w[1] >= w[0] - MONOTONE_NOISE);
    let errors = trotter_errors(&SWEEP);
    let xs: Vec<f64> = SWEEP.iter().map(|&s| s as f64).collect();
    let slope = loglog_slope(&xs, &errors);
    let pass = monotone && (slope - SLOPE_TARGET).abs() <= SLOPE_TOL;
    let detail = format!(
        "τ = {SWEEP_TAU}, S = {SWEEP:?}: fidelity {:?} (nondecreasing within {MONOTONE_NOISE:.0e}: {monotone}); Trotter error {:?}, log-log slope {slope:.3} ({SLOPE_TARGET} ± {SLOPE_TOL})",
        fidelities.iter().map(|f| format!("{f:.6}")).collect::<Vec<_>>(),
        errors.iter().map(|e| format!("{e:.3e}")).collect::<Vec<_>>()
    );
    report(6, "Trotter behaviour", pass, detail, start.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_7_resource_orderings() {
    let start = Instant::now();
    let rows = sweep(&[1, 2, 3, 4], &Method::ALL, &LayoutKind::ALL, &SweepSettings::default()).unwrap();
    let get = |n, m, k| rows.iter().find(|r| r.n == n && r.method == Some(m) && r.mapping == Some(k)).unwrap();
    let mut pass = true;
    let mut parts = Vec::new();
    for n in 2..=4 {
        for k in LayoutKind::ALL {
            let (b, a) = (get(n, Method::Braiding, k).two_qubit_count, get(n, Method::Adiabatic, k).two_qubit_count);
            pass &= b < a;
            parts.push(format!("n={n} {k}: 2q {b} < {a}"));
        }
        let (c, d) = (get(n, Method::Braiding, LayoutKind::Coupler).depth, get(n, Method::Braiding, LayoutKind::Continuous).depth);
        pass &= c < d;
        parts.push(format!("n={n} braiding depth {c} < {d}"));
    }
    for k in LayoutKind::ALL {
        let counts: Vec<i64> = (1..=4).map(|n| get(n, Method::Braiding, k).two_qubit_count as i64).collect();
        let slope = counts[1] - counts[0];
        let affine = counts.windows(2).all(|w| w[1] - w[0] == slope);
        pass &= affine;
        parts.push(format!("{k} braiding 2q {counts:?} = {slope}n {:+} (exact: {affine})", counts[0] - slope));
    }
    report(7, "resource orderings at S=10, r=1", pass, parts.join("; "), start.elapsed(), Duration::from_secs(30));
}

#[test]
fn criterion_8_algebra_suites() {
    let start = Instant::now();
    let mut anticommute_ok = true;
    for kind in LayoutKind::ALL {
        for n in 1..=2 {
            let layout = QubitLayout::new(kind, n).unwrap();
            let mats: Vec<CMatrix> = all_indices(n)
                .iter()
                .map(|m| layout.map_majorana(m).unwrap().to_matrix(LIMIT).unwrap())
                .collect();
            let id = CMatrix::identity(layout.dimension(), layout.dimension());
            for (i, a) in mats.iter().enumerate() {
                anticommute_ok &= frobenius(&(a * a - &id)) < 1e-12;
                for b in &mats[i + 1..] {
                    anticommute_ok &= frobenius(&(a * b + b * a)) < 1e-12;
                }
            }
        }
    }
    let mut worst_fragment: f64 = 0.0;
    let mut fragments = 0;
    for q in 1..=4usize {
        for code in 0..4usize.pow(q as u32) {
            let axes: Vec<PauliAxis> = (0..q).map(|i| PauliAxis::ALL[(code >> (2 * i)) & 3]).collect();
            for phase in [Phase::ONE, Phase::MINUS_ONE] {
                let p = PauliString::from_axes(phase, &axes).unwrap();
                for angle in [0.0, 0.37, -1.1, FRAC_PI_2 / 2.0, 2.9] {
                    let c = compile_rotation(&p, angle).unwrap();
                    let d = phase_aligned_distance(&c.to_matrix(4).unwrap(), &rotation_matrix(&p, angle, 4).unwrap());
                    worst_fragment = worst_fragment.max(d);
                    fragments += 1;
                }
            }
        }
    }
    let pass = anticommute_ok && worst_fragment < FRAGMENT_TOL;
    let detail = format!(
        "mapped Majoranas anticommute and square to 1 (n ≤ 2, both mappings): {anticommute_ok}; {fragments} fragments on Q ≤ 4, max phase-aligned distance {worst_fragment:.2e} (< {FRAGMENT_TOL:.0e})"
    );
    report(8, "algebra property suites", pass, detail, start.elapsed(), Duration::from_secs(60));
}
