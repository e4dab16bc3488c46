use std::f64::consts::FRAC_PI_2;

use serde_json::{json, Value};
use trijunction_core::compiler::{self, SweepSettings};
use trijunction_core::hamiltonians::Configuration;
use trijunction_core::simulator::{configuration_ground_space, project_protocol, BraidingProtocol};
use trijunction_core::{
    compile_adiabatic, count_resources, fidelity, prepare_initial, protocol_steps, run_adiabatic, run_braiding,
    trijunction_h, LayoutKind, Method, Propagation, QubitLayout, Result, Sign, TrijunctionParams,
};

use crate::output::Report;

pub const PHASE_TOLERANCE: f64 = 1e-6;
pub const BRAID_FIDELITY_TOLERANCE: f64 = 1e-9;

fn sign_name(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "plus",
        Sign::Minus => "minus",
    }
}

fn params_json(p: &TrijunctionParams) -> Value {
    json!({ "delta": p.delta, "alpha": p.alpha, "tcoupling": p.coupling, "mu": p.mu })
}

fn names(mappings: &[LayoutKind]) -> Vec<&'static str> {
    mappings.iter().map(|m| m.name()).collect()
}

/// Expected relative phase after `steps` steps: a quarter turn per three.
pub fn expected_phase(steps: usize) -> f64 {
    (steps / 3) as f64 * FRAC_PI_2
}

/// Symbolic check that each step carries its configuration to the next.
fn conjugation_checks(params: &TrijunctionParams) -> Result<Vec<Value>> {
    protocol_steps()
        .iter()
        .enumerate()
        .map(|(i, step)| {
            let before = trijunction_h(&step.initial_configuration(), params)?;
            let after = trijunction_h(&step.final_configuration(), params)?;
            let ok = before.conjugate(&step.exchanges(params.sites)?) == after;
            Ok(json!({
                "step": format!("T{}", i + 1),
                "from": step.initial_configuration().label(),
                "to": step.final_configuration().label(),
                "ok": ok,
            }))
        })
        .collect()
}

pub fn verify(sites: &[usize], mappings: &[LayoutKind], steps: &[usize], model: TrijunctionParams) -> Result<Report> {
    let mut results = Vec::new();
    let mut passed = true;
    for &n in sites {
        let params = TrijunctionParams { sites: n, ..model };
        let conjugation = conjugation_checks(&params)?;
        let conjugation_ok = conjugation.iter().all(|c| c["ok"] == true);
        for &mapping in mappings {
            let layout = QubitLayout::new(mapping, n)?;
            let protocol = BraidingProtocol::new(&layout)?;
            let gs = configuration_ground_space(&layout, &Configuration::new(1, 2)?, &params)?;
            for &k in steps {
                let r = project_protocol(&protocol, k, &gs)?;
                let expected = expected_phase(k);
                let error = (r.delta_phi - expected).abs();
                let ok = error <= PHASE_TOLERANCE && r.unitarity_defect <= PHASE_TOLERANCE && conjugation_ok;
                passed &= ok;
                results.push(json!({
                    "n": n,
                    "mapping": mapping.name(),
                    "steps": k,
                    "delta_phi": r.delta_phi,
                    "expected": expected,
                    "phase_error": error,
                    "unitarity_defect": r.unitarity_defect,
                    "eigenphases": r.eigenphases,
                    "u_gs": r.u_gs.iter().map(|row| amplitudes_json(row)).collect::<Vec<_>>(),
                    "ground_energy": gs.energies[0],
                    "degeneracy_splitting": gs.degeneracy_splitting(),
                    "conjugation_ok": conjugation_ok,
                    "conjugation": conjugation,
                    "pass": ok,
                }));
            }
        }
    }
    Ok(Report {
        config: json!({
            "command": "verify",
            "sites": sites,
            "mappings": names(mappings),
            "steps": steps,
            "tolerance": PHASE_TOLERANCE,
            "params": params_json(&model),
        }),
        results,
        columns: &[
            "n",
            "mapping",
            "steps",
            "delta_phi",
            "expected",
            "phase_error",
            "unitarity_defect",
            "conjugation_ok",
            "pass",
        ],
        passed,
    })
}

fn amplitudes_json(amps: &[num_complex::Complex64]) -> Value {
    Value::Array(amps.iter().map(|a| json!([a.re, a.im])).collect())
}

pub fn braid(
    sites: &[usize],
    mappings: &[LayoutKind],
    steps: usize,
    sign: Sign,
    amplitudes: bool,
    model: TrijunctionParams,
) -> Result<Report> {
    let mut results = Vec::new();
    let mut passed = true;
    for &n in sites {
        let params = TrijunctionParams { sites: n, ..model };
        for &mapping in mappings {
            let layout = QubitLayout::new(mapping, n)?;
            let gs = configuration_ground_space(&layout, &Configuration::new(1, 2)?, &params)?;
            let initial = prepare_initial(&gs, sign);
            let target = prepare_initial(&gs, sign.flipped());
            let fin = run_braiding(&initial, &layout, steps)?;
            let f_target = fidelity(&target, &fin)?;
            let f_initial = fidelity(&initial, &fin)?;
            // only the full protocol has a definite target
            let ok = steps != 6 || f_target >= 1.0 - BRAID_FIDELITY_TOLERANCE;
            passed &= ok;
            let mut row = json!({
                "n": n,
                "mapping": mapping.name(),
                "qubits": layout.total_qubits(),
                "steps": steps,
                "initial": sign_name(sign),
                "target": sign_name(sign.flipped()),
                "fidelity": f_target,
                "fidelity_initial": f_initial,
                "pass": ok,
            });
            if amplitudes {
                row["initial_amplitudes"] = amplitudes_json(initial.amplitudes());
                row["final_amplitudes"] = amplitudes_json(fin.amplitudes());
            }
            results.push(row);
        }
    }
    Ok(Report {
        config: json!({
            "command": "braid",
            "sites": sites,
            "mappings": names(mappings),
            "sign": sign_name(sign),
            "steps": steps,
            "tolerance": BRAID_FIDELITY_TOLERANCE,
            "params": params_json(&model),
        }),
        results,
        columns: &["n", "mapping", "qubits", "steps", "initial", "target", "fidelity", "fidelity_initial", "pass"],
        passed,
    })
}

pub struct AdiabaticOptions {
    pub tau: f64,
    pub trotter_steps: Vec<usize>,
    pub reps: usize,
    pub sign: Sign,
    pub min_fidelity: Option<f64>,
}

pub fn adiabatic(
    sites: &[usize],
    mappings: &[LayoutKind],
    opts: &AdiabaticOptions,
    model: TrijunctionParams,
) -> Result<Report> {
    let mut results = Vec::new();
    let mut passed = true;
    for &n in sites {
        let params = TrijunctionParams { sites: n, ..model };
        for &mapping in mappings {
            let layout = QubitLayout::new(mapping, n)?;
            for &s in &opts.trotter_steps {
                let run = run_adiabatic(&layout, &params, opts.tau, s, Propagation::Trotter(opts.reps), opts.sign)?;
                let circuit = count_resources(&compile_adiabatic(&layout, &params, opts.tau, s, opts.reps)?);
                let ok = opts.min_fidelity.map_or(true, |m| run.fidelity >= m);
                passed &= ok;
                results.push(json!({
                    "n": n,
                    "mapping": mapping.name(),
                    "trotter_steps": s,
                    "reps": opts.reps,
                    "tau": opts.tau,
                    "fidelity": run.fidelity,
                    "two_qubit_count": circuit.two_qubit_count,
                    "depth": circuit.depth,
                    "gate_count": circuit.gate_count,
                    "minimal": s == 10 && opts.reps == 1,
                    "pass": ok,
                }));
            }
        }
    }
    Ok(Report {
        config: json!({
            "command": "adiabatic",
            "sites": sites,
            "mappings": names(mappings),
            "tau": opts.tau,
            "trotter_steps": opts.trotter_steps,
            "reps": opts.reps,
            "sign": sign_name(opts.sign),
            "min_fidelity": opts.min_fidelity,
            "params": params_json(&model),
        }),
        results,
        columns: &[
            "n",
            "mapping",
            "trotter_steps",
            "reps",
            "tau",
            "fidelity",
            "two_qubit_count",
            "depth",
            "gate_count",
            "minimal",
            "pass",
        ],
        passed,
    })
}

pub fn resources(
    sites: &[usize],
    methods: &[Method],
    mappings: &[LayoutKind],
    settings: &SweepSettings,
) -> Result<Report> {
    let rows = compiler::sweep(sites, methods, mappings, settings)?;
    let results = rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "method": r.method.map(|m| m.name()),
                "mapping": r.mapping.map(|m| m.name()),
                "two_qubit_count": r.two_qubit_count,
                "depth": r.depth,
                "gate_count": r.gate_count,
                "per_step": r.per_step,
            })
        })
        .collect();
    Ok(Report {
        config: json!({
            "command": "resources",
            "sites": sites,
            "methods": methods.iter().map(|m| m.name()).collect::<Vec<_>>(),
            "mappings": names(mappings),
            "tau": settings.tau,
            "trotter_steps": settings.trotter_steps,
            "reps": settings.reps,
            "params": params_json(&settings.params),
        }),
        results,
        columns: &["n", "method", "mapping", "two_qubit_count", "depth", "gate_count"],
        passed: true,
    })
}
