//! Gate-level compilation of both protocols and resource counting.
//!
//! Every Pauli rotation `exp(−iθP)` becomes a basis change onto Z, a CNOT
//! ladder, `Rz(2θ)` and the mirrored ladder. No cancellation is attempted
//! across fragments, so counts are structural upper bounds.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamiltonians::{schedule, trijunction_h, TrijunctionParams};
use crate::linalg::{CMatrix, CVector};
use crate::mapping::{LayoutKind, QubitLayout};
use crate::pauli::{PauliAxis, PauliString, PauliSum, Phase};
use crate::simulator::{BraidingProtocol, StateVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Clifford {
    H,
    S,
    Sdg,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Gate {
    /// `exp(−i·angle/2·σ)`.
    Rotation { qubit: usize, axis: PauliAxis, angle: f64 },
    BasisChange { qubit: usize, gate: Clifford },
    /// CNOT; stands in for any hardware two-qubit entangler.
    Entangler { control: usize, target: usize },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Rotation { qubit, .. } | Gate::BasisChange { qubit, .. } => vec![qubit],
            Gate::Entangler { control, target } => vec![control, target],
        }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Entangler { .. })
    }

    fn validate(&self, qubit_count: usize) -> Result<()> {
        for q in self.qubits() {
            if q >= qubit_count {
                return Err(Error::QubitOutOfRange { qubit: q, qubits: qubit_count });
            }
        }
        match *self {
            Gate::Entangler { control, target } if control == target => {
                Err(Error::QubitOutOfRange { qubit: target, qubits: qubit_count })
            }
            Gate::Rotation { angle, .. } if !angle.is_finite() => Err(Error::InvalidDuration(angle)),
            _ => Ok(()),
        }
    }
}

/// A named range of gates, e.g. one braiding step.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Segment {
    pub label: String,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Circuit {
    qubit_count: usize,
    gates: Vec<Gate>,
    /// Total global phase angle; the circuit implements `e^{i·φ}·Π gates`.
    global_phase: f64,
    segments: Vec<Segment>,
}

impl Circuit {
    pub fn new(qubit_count: usize) -> Self {
        Circuit { qubit_count, gates: Vec::new(), global_phase: 0.0, segments: Vec::new() }
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.qubit_count)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends `other`, keeping its segments.
    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.qubit_count != self.qubit_count {
            return Err(Error::LengthMismatch { left: self.qubit_count, right: other.qubit_count });
        }
        let offset = self.gates.len();
        self.gates.extend_from_slice(&other.gates);
        self.global_phase += other.global_phase;
        self.segments.extend(other.segments.iter().map(|s| Segment {
            label: s.label.clone(),
            start: s.start + offset,
            end: s.end + offset,
        }));
        Ok(())
    }

    fn extend_segment(&mut self, label: String, body: &Circuit) -> Result<()> {
        let start = self.gates.len();
        self.extend(body)?;
        let end = self.gates.len();
        self.segments.push(Segment { label, start, end });
        Ok(())
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// ASAP layering with all-to-all connectivity.
    pub fn depth(&self) -> usize {
        gate_depth(&self.gates, self.qubit_count)
    }

    /// Runs the gates (and global phase) on a state vector.
    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        if state.qubits() != self.qubit_count {
            return Err(Error::LengthMismatch { left: self.qubit_count, right: state.qubits() });
        }
        let mut amps = state.amplitudes().to_vec();
        for gate in &self.gates {
            apply_gate(&mut amps, gate);
        }
        let phase = Complex64::from_polar(1.0, self.global_phase);
        for a in &mut amps {
            *a *= phase;
        }
        *state = StateVector::from_amplitudes(amps)?;
        Ok(())
    }

    pub fn to_matrix(&self, dense_limit: usize) -> Result<CMatrix> {
        if self.qubit_count > dense_limit {
            return Err(Error::DenseLimit { qubits: self.qubit_count, limit: dense_limit });
        }
        let columns = (0..1usize << self.qubit_count)
            .map(|b| {
                let mut s = StateVector::basis(self.qubit_count, b)?;
                self.apply(&mut s)?;
                Ok(CVector::from_column_slice(s.amplitudes()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CMatrix::from_columns(&columns))
    }
}

fn gate_depth(gates: &[Gate], qubit_count: usize) -> usize {
    let mut level = vec![0usize; qubit_count];
    let mut depth = 0;
    for g in gates {
        let qs = g.qubits();
        let l = qs.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
        for q in qs {
            level[q] = l;
        }
        depth = depth.max(l);
    }
    depth
}

fn apply_gate(amps: &mut [Complex64], gate: &Gate) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match *gate {
        Gate::Entangler { control, target } => {
            let (c, t) = (1usize << control, 1usize << target);
            for b in 0..amps.len() {
                if b & c != 0 && b & t == 0 {
                    amps.swap(b, b | t);
                }
            }
        }
        Gate::BasisChange { qubit, gate } => {
            let m = 1usize << qubit;
            for b in 0..amps.len() {
                if b & m != 0 {
                    continue;
                }
                let (a0, a1) = (amps[b], amps[b | m]);
                let (n0, n1) = match gate {
                    Clifford::H => ((a0 + a1) * h, (a0 - a1) * h),
                    Clifford::S => (a0, a1 * Complex64::i()),
                    Clifford::Sdg => (a0, -a1 * Complex64::i()),
                };
                amps[b] = n0;
                amps[b | m] = n1;
            }
        }
        Gate::Rotation { qubit, axis, angle } => {
            let m = 1usize << qubit;
            let (c, s) = ((angle / 2.0).cos(), (angle / 2.0).sin());
            let mis = Complex64::new(0.0, -s);
            for b in 0..amps.len() {
                if b & m != 0 {
                    continue;
                }
                let (a0, a1) = (amps[b], amps[b | m]);
                let (n0, n1) = match axis {
                    PauliAxis::I => (a0 * Complex64::from_polar(1.0, -angle / 2.0), a1 * Complex64::from_polar(1.0, -angle / 2.0)),
                    PauliAxis::X => (a0 * c + mis * a1, a1 * c + mis * a0),
                    PauliAxis::Y => (a0 * c - a1 * s, a1 * c + a0 * s),
                    PauliAxis::Z => (a0 * Complex64::from_polar(1.0, -angle / 2.0), a1 * Complex64::from_polar(1.0, angle / 2.0)),
                };
                amps[b] = n0;
                amps[b | m] = n1;
            }
        }
    }
}

/// `exp(−i·angle·P)` as basis changes, a CNOT ladder into the highest
/// support qubit, `Rz(2·angle)` and the mirror image.
pub fn compile_rotation(p: &PauliString, angle: f64) -> Result<Circuit> {
    let sign = p.phase().sign().ok_or(Error::NonHermitianTerm(p.phase().name()))?;
    if !angle.is_finite() {
        return Err(Error::InvalidDuration(angle));
    }
    let theta = angle * sign;
    let mut c = Circuit::new(p.qubits());
    let support = p.support();
    if support.is_empty() {
        c.global_phase = -theta;
        return Ok(c);
    }
    let mut into_z = Vec::new();
    let mut out_of_z = Vec::new();
    for &q in &support {
        match p.axis(q) {
            PauliAxis::X => {
                into_z.push(Gate::BasisChange { qubit: q, gate: Clifford::H });
                out_of_z.push(Gate::BasisChange { qubit: q, gate: Clifford::H });
            }
            PauliAxis::Y => {
                into_z.push(Gate::BasisChange { qubit: q, gate: Clifford::Sdg });
                into_z.push(Gate::BasisChange { qubit: q, gate: Clifford::H });
                out_of_z.push(Gate::BasisChange { qubit: q, gate: Clifford::H });
                out_of_z.push(Gate::BasisChange { qubit: q, gate: Clifford::S });
            }
            _ => {}
        }
    }
    let ladder: Vec<Gate> = support.windows(2).map(|w| Gate::Entangler { control: w[0], target: w[1] }).collect();
    let pivot = *support.last().expect("non-empty");
    for g in into_z.iter().chain(&ladder) {
        c.push(*g)?;
    }
    c.push(Gate::Rotation { qubit: pivot, axis: PauliAxis::Z, angle: 2.0 * theta })?;
    for g in ladder.iter().rev().chain(&out_of_z) {
        c.push(*g)?;
    }
    Ok(c)
}

/// All six braiding steps, one segment per step.
pub fn compile_braiding(layout: &QubitLayout) -> Result<Circuit> {
    let protocol = BraidingProtocol::new(layout)?;
    let mut circuit = Circuit::new(layout.total_qubits());
    for step in 0..6 {
        let mut body = Circuit::new(layout.total_qubits());
        for (string, angle) in protocol.step_rotations(step) {
            body.extend(&compile_rotation(string, *angle)?)?;
        }
        circuit.extend_segment(format!("T{}", step + 1), &body)?;
    }
    Ok(circuit)
}

/// Trotter circuit of the six interpolations; the same term order and
/// angles as the simulator's [`crate::simulator::Propagation::Trotter`].
pub fn compile_adiabatic(
    layout: &QubitLayout,
    params: &TrijunctionParams,
    tau: f64,
    substeps: usize,
    reps: usize,
) -> Result<Circuit> {
    if substeps < 1 {
        return Err(Error::InvalidCount { name: "trotter steps", value: substeps });
    }
    if reps < 1 {
        return Err(Error::InvalidCount { name: "repetitions", value: reps });
    }
    let params = TrijunctionParams { sites: layout.sites(), ..*params };
    let mapped = |c| layout.map_hamiltonian(&trijunction_h(c, &params)?);
    let dt = tau / (substeps * reps) as f64;
    let mut circuit = Circuit::new(layout.total_qubits());
    for (i, t) in schedule(tau)?.iter().enumerate() {
        let (hi, hf) = (mapped(&t.initial)?, mapped(&t.final_config)?);
        let mut body = Circuit::new(layout.total_qubits());
        for s in 1..=substeps {
            let h = PauliSum::interpolate(&hi, &hf, s as f64 / substeps as f64)?;
            let mut layer = Circuit::new(layout.total_qubits());
            for (coeff, string) in h.terms() {
                layer.extend(&compile_rotation(string, coeff * dt)?)?;
            }
            for _ in 0..reps {
                body.extend(&layer)?;
            }
        }
        circuit.extend_segment(format!("T{}", i + 1), &body)?;
    }
    Ok(circuit)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Braiding,
    Adiabatic,
}

impl Method {
    pub const ALL: [Method; 2] = [Method::Braiding, Method::Adiabatic];

    pub fn name(self) -> &'static str {
        match self {
            Method::Braiding => "braiding",
            Method::Adiabatic => "adiabatic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "braiding" | "braid" => Ok(Method::Braiding),
            "adiabatic" => Ok(Method::Adiabatic),
            other => Err(format!("unknown method `{other}` (expected braiding or adiabatic)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepResources {
    pub label: String,
    pub two_qubit_count: usize,
    pub depth: usize,
    pub gate_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResourceReport {
    pub n: usize,
    pub method: Option<Method>,
    pub mapping: Option<LayoutKind>,
    pub two_qubit_count: usize,
    pub depth: usize,
    pub gate_count: usize,
    pub per_step: Vec<StepResources>,
}

/// Entangler count and ASAP depth, overall and per segment.
pub fn count_resources(c: &Circuit) -> ResourceReport {
    let per_step = c
        .segments
        .iter()
        .map(|s| {
            let gates = &c.gates[s.start..s.end];
            StepResources {
                label: s.label.clone(),
                two_qubit_count: gates.iter().filter(|g| g.is_two_qubit()).count(),
                depth: gate_depth(gates, c.qubit_count),
                gate_count: gates.len(),
            }
        })
        .collect();
    ResourceReport {
        n: 0,
        method: None,
        mapping: None,
        two_qubit_count: c.two_qubit_count(),
        depth: c.depth(),
        gate_count: c.len(),
        per_step,
    }
}

/// Settings shared by every row of a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SweepSettings {
    pub params: TrijunctionParams,
    pub tau: f64,
    pub trotter_steps: usize,
    pub reps: usize,
}

impl Default for SweepSettings {
    fn default() -> Self {
        SweepSettings { params: TrijunctionParams::default(), tau: 1.0, trotter_steps: 10, reps: 1 }
    }
}

/// One compiled report.
pub fn resources(n: usize, method: Method, mapping: LayoutKind, settings: &SweepSettings) -> Result<ResourceReport> {
    let layout = QubitLayout::new(mapping, n)?;
    let circuit = match method {
        Method::Braiding => compile_braiding(&layout)?,
        Method::Adiabatic => compile_adiabatic(&layout, &settings.params, settings.tau, settings.trotter_steps, settings.reps)?,
    };
    Ok(ResourceReport { n, method: Some(method), mapping: Some(mapping), ..count_resources(&circuit) })
}

/// One report per `(n, method, mapping)`, ordered by `n`, then method, then
/// mapping as given.
pub fn sweep(
    ns: &[usize],
    methods: &[Method],
    mappings: &[LayoutKind],
    settings: &SweepSettings,
) -> Result<Vec<ResourceReport>> {
    let jobs: Vec<_> = ns
        .iter()
        .flat_map(|&n| methods.iter().flat_map(move |&m| mappings.iter().map(move |&k| (n, m, k))))
        .collect();
    jobs.par_iter().map(|&(n, m, k)| resources(n, m, k, settings)).collect()
}

/// `exp(−i·angle·P)` as a dense matrix; the oracle for circuit checks.
pub fn rotation_matrix(p: &PauliString, angle: f64, dense_limit: usize) -> Result<CMatrix> {
    let m = p.with_phase(Phase::ONE).to_matrix(dense_limit)?;
    let sign = p.phase().sign().ok_or(Error::NonHermitianTerm(p.phase().name()))?;
    let dim = m.nrows();
    let theta = angle * sign;
    Ok(CMatrix::identity(dim, dim) * Complex64::new(theta.cos(), 0.0) - m * Complex64::new(0.0, theta.sin()))
}
