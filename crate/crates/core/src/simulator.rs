//! Exact state-vector dynamics for the trijunction.
//!
//! Exchange operators and Trotter factors are all Pauli rotations
//! `exp(−iθP)`, applied in place as `cos θ |ψ⟩ − i sin θ P|ψ⟩` over pairs of
//! basis states. Dense matrices are only built for ground-space extraction,
//! exact propagation and the projected braid operator.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamiltonians::{schedule, trijunction_h, Configuration, TrijunctionParams};
use crate::linalg::{self, CMatrix, ONE, ZERO};
use crate::majorana::{protocol_steps, ExchangeOperator};
use crate::mapping::QubitLayout;
use crate::pauli::{PauliString, PauliSum, DEFAULT_DENSE_LIMIT};

/// Amplitude below which a component counts as zero when fixing phases.
const PHASE_FIX_THRESHOLD: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch { expected: dim, got: index });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(StateVector { qubits, amplitudes })
    }

    /// Normalizes the given amplitudes; their length must be a power of two.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let dim = amplitudes.len();
        if !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch { expected: dim.next_power_of_two(), got: dim });
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(StateVector { qubits: dim.trailing_zeros() as usize, amplitudes: amplitudes.into_iter().map(|a| a / norm).collect() })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        if self.dimension() != other.dimension() {
            return Err(Error::DimensionMismatch { expected: self.dimension(), got: other.dimension() });
        }
        Ok(self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum())
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn expectation(&self, h: &PauliSum) -> Result<f64> {
        let image = h.apply(&self.amplitudes)?;
        Ok(self.amplitudes.iter().zip(&image).map(|(a, b)| a.conj() * b).sum::<Complex64>().re)
    }

    /// Applies `exp(−i·angle·P)` for a Hermitian string `P`.
    pub fn apply_rotation(&mut self, string: &PauliString, angle: f64) -> Result<()> {
        if string.qubits() != self.qubits {
            return Err(Error::LengthMismatch { left: self.qubits, right: string.qubits() });
        }
        let sign = string.phase().sign().ok_or(Error::NonHermitianTerm(string.phase().name()))?;
        let base = string.with_phase(crate::pauli::Phase::ONE);
        let theta = angle * sign;
        let (cos, sin) = (theta.cos(), theta.sin());
        let minus_i_sin = Complex64::new(0.0, -sin);
        let x = base.x_mask() as usize;
        if x == 0 {
            for (b, a) in self.amplitudes.iter_mut().enumerate() {
                let (p, _) = base.apply_to_basis(b);
                *a *= cos + minus_i_sin * p;
            }
            return Ok(());
        }
        let pivot = 1usize << (usize::BITS - 1 - x.leading_zeros());
        for b in 0..self.amplitudes.len() {
            if b & pivot != 0 {
                continue;
            }
            let j = b ^ x;
            let (pb, _) = base.apply_to_basis(b);
            let (pj, _) = base.apply_to_basis(j);
            let (a0, a1) = (self.amplitudes[b], self.amplitudes[j]);
            self.amplitudes[b] = a0 * cos + minus_i_sin * pj * a1;
            self.amplitudes[j] = a1 * cos + minus_i_sin * pb * a0;
        }
        Ok(())
    }

    /// Applies `(1 + γ_k γ_l)/√2` through its Pauli image.
    pub fn apply_exchange(&mut self, op: &ExchangeOperator, layout: &QubitLayout) -> Result<()> {
        let (string, angle) = layout.exchange_rotation(op)?;
        self.apply_rotation(&string, angle)
    }

    fn apply_matrix(&self, m: &CMatrix) -> StateVector {
        let v = m * linalg::CVector::from_column_slice(&self.amplitudes);
        StateVector { qubits: self.qubits, amplitudes: v.iter().copied().collect() }
    }
}

/// `|⟨a|b⟩|²`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr())
}

/// Free-function form of [`StateVector::apply_exchange`].
pub fn apply_exchange(state: &StateVector, op: &ExchangeOperator, layout: &QubitLayout) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply_exchange(op, layout)?;
    Ok(out)
}

/// How to pick the two ground states.
#[derive(Clone, Debug)]
pub struct GroundSpaceOptions {
    /// Diagonal conserved operator; only its `+1` eigenspace is searched.
    pub sector: Option<PauliString>,
    /// Operator to diagonalize inside the ground space, `+1` eigenvector first.
    pub parity: Option<PauliSum>,
    pub dense_limit: usize,
}

impl Default for GroundSpaceOptions {
    fn default() -> Self {
        GroundSpaceOptions { sector: None, parity: None, dense_limit: DEFAULT_DENSE_LIMIT }
    }
}

/// Isometry onto the two lowest eigenstates.
#[derive(Clone, Debug)]
pub struct GroundSpace {
    /// `2^Q × 2`, columns `|g_1⟩, |g_2⟩`.
    pub vectors: CMatrix,
    pub energies: [f64; 2],
    /// Full spectrum of the searched sector, ascending.
    pub sector_spectrum: Vec<f64>,
}

impl GroundSpace {
    pub fn column(&self, i: usize) -> StateVector {
        StateVector::from_amplitudes(self.vectors.column(i).iter().copied().collect()).expect("unit column")
    }

    /// Splitting between the two ground energies.
    pub fn degeneracy_splitting(&self) -> f64 {
        self.energies[1] - self.energies[0]
    }

    /// Gap from the ground pair to the next level in the sector.
    pub fn excitation_gap(&self) -> Option<f64> {
        self.sector_spectrum.get(2).map(|e| e - self.energies[1])
    }

    /// `G G†`.
    pub fn projector(&self) -> CMatrix {
        &self.vectors * self.vectors.adjoint()
    }
}

/// Two lowest eigenpairs of `h`, with a reproducible basis inside the pair.
///
/// With a `parity`, the pair is rotated to diagonalize it (`+1` first).
/// Otherwise the eigensolver output is re-orthonormalized. Either way each
/// column is then multiplied by a phase making its first non-negligible
/// amplitude real and positive.
pub fn ground_space(h: &PauliSum, options: &GroundSpaceOptions) -> Result<GroundSpace> {
    let qubits = h.qubits();
    if qubits > options.dense_limit {
        return Err(Error::DenseLimit { qubits, limit: options.dense_limit });
    }
    let dim = 1usize << qubits;
    let indices: Vec<usize> = match &options.sector {
        Some(sector) => {
            if !sector.is_diagonal() || !sector.is_hermitian() || sector.qubits() != qubits {
                return Err(Error::NonHermitianTerm("sector"));
            }
            (0..dim).filter(|&b| sector.apply_to_basis(b).0.re > 0.0).collect()
        }
        None => (0..dim).collect(),
    };
    if indices.len() < 2 {
        return Err(Error::SectorTooSmall(indices.len()));
    }
    let local: HashMap<usize, usize> = indices.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let m = indices.len();
    let mut restricted = CMatrix::zeros(m, m);
    for (col, &b) in indices.iter().enumerate() {
        for (c, s) in h.terms() {
            let (amp, row) = s.apply_to_basis(b);
            // terms commute with the sector operator, so rows stay inside
            if let Some(&r) = local.get(&row) {
                restricted[(r, col)] += amp * c;
            }
        }
    }
    let (values, vectors) = linalg::hermitian_eigen(&restricted);
    let mut g = CMatrix::zeros(dim, 2);
    for k in 0..2 {
        for (i, &b) in indices.iter().enumerate() {
            g[(b, k)] = vectors[(i, k)];
        }
    }
    let g = match &options.parity {
        Some(parity) => {
            let mut pg = CMatrix::zeros(dim, 2);
            for k in 0..2 {
                let col: Vec<Complex64> = g.column(k).iter().copied().collect();
                pg.set_column(k, &linalg::CVector::from_vec(parity.apply(&col)?));
            }
            let reduced = g.adjoint() * pg;
            let (_, rot) = linalg::hermitian_eigen(&reduced);
            // ascending eigenvalues, so swap to put +1 first
            let rot = CMatrix::from_columns(&[rot.column(1), rot.column(0)]);
            g * rot
        }
        None => gram_schmidt(g),
    };
    Ok(GroundSpace { vectors: fix_phases(g), energies: [values[0], values[1]], sector_spectrum: values })
}

fn gram_schmidt(mut g: CMatrix) -> CMatrix {
    for k in 0..g.ncols() {
        for prev in 0..k {
            let overlap = g.column(prev).dotc(&g.column(k));
            let proj = g.column(prev) * overlap;
            let mut col = g.column_mut(k);
            col -= proj;
        }
        let norm = g.column(k).norm();
        g.column_mut(k).unscale_mut(norm);
    }
    g
}

fn fix_phases(mut g: CMatrix) -> CMatrix {
    for k in 0..g.ncols() {
        if let Some(a) = g.column(k).iter().copied().find(|a| a.norm() > PHASE_FIX_THRESHOLD) {
            let phase = a.conj() / a.norm();
            for v in g.column_mut(k).iter_mut() {
                *v *= phase;
            }
        }
    }
    g
}

/// `(|g_1⟩ ± |g_2⟩)/√2`.
pub fn prepare_initial(gs: &GroundSpace, sign: Sign) -> StateVector {
    let amps = (0..gs.vectors.nrows())
        .map(|r| (gs.vectors[(r, 0)] + gs.vectors[(r, 1)] * sign.value()) * std::f64::consts::FRAC_1_SQRT_2)
        .collect();
    StateVector::from_amplitudes(amps).expect("orthonormal columns")
}

/// Ground space of a configuration Hamiltonian on a layout, using the
/// layout's physical sector and the configuration's encoded parity.
pub fn configuration_ground_space(
    layout: &QubitLayout,
    config: &Configuration,
    params: &TrijunctionParams,
) -> Result<GroundSpace> {
    let h = layout.map_hamiltonian(&trijunction_h(config, params)?)?;
    let options = GroundSpaceOptions {
        sector: layout.sector_operator(),
        parity: Some(layout.map_parity(&config.encoded_parity(layout.sites()))?),
        dense_limit: DEFAULT_DENSE_LIMIT,
    };
    ground_space(&h, &options)
}

/// The braiding-operator protocol compiled to Pauli rotations, per step.
#[derive(Clone, Debug)]
pub struct BraidingProtocol {
    layout: QubitLayout,
    steps: Vec<Vec<(PauliString, f64)>>,
}

impl BraidingProtocol {
    pub fn new(layout: &QubitLayout) -> Result<Self> {
        let steps = protocol_steps()
            .iter()
            .map(|step| {
                step.exchanges(layout.sites())?
                    .iter()
                    .map(|op| layout.exchange_rotation(op))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BraidingProtocol { layout: *layout, steps })
    }

    pub fn layout(&self) -> &QubitLayout {
        &self.layout
    }

    /// `(string, angle)` rotations of one step, in application order.
    pub fn step_rotations(&self, step: usize) -> &[(PauliString, f64)] {
        &self.steps[step]
    }

    /// Applies the first `steps` protocol steps in place.
    pub fn apply(&self, state: &mut StateVector, steps: usize) -> Result<()> {
        if steps > self.steps.len() {
            return Err(Error::InvalidStepCount(steps));
        }
        if state.qubits() != self.layout.total_qubits() {
            return Err(Error::DimensionMismatch { expected: self.layout.dimension(), got: state.dimension() });
        }
        for step in &self.steps[..steps] {
            for (string, angle) in step {
                state.apply_rotation(string, *angle)?;
            }
        }
        Ok(())
    }

    /// Dense operator of the first `steps` steps, built column by column.
    pub fn unitary(&self, steps: usize, dense_limit: usize) -> Result<CMatrix> {
        let qubits = self.layout.total_qubits();
        if qubits > dense_limit {
            return Err(Error::DenseLimit { qubits, limit: dense_limit });
        }
        let dim = self.layout.dimension();
        let columns = (0..dim)
            .into_par_iter()
            .map(|b| {
                let mut state = StateVector::basis(qubits, b)?;
                self.apply(&mut state, steps)?;
                Ok(linalg::CVector::from_vec(state.amplitudes))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CMatrix::from_columns(&columns))
    }
}

/// Applies the first `steps` braiding steps to `state`.
pub fn run_braiding(state: &StateVector, layout: &QubitLayout, steps: usize) -> Result<StateVector> {
    let mut out = state.clone();
    BraidingProtocol::new(layout)?.apply(&mut out, steps)?;
    Ok(out)
}

/// Dense operator of the first `steps` braiding steps.
pub fn braid_unitary(layout: &QubitLayout, steps: usize) -> Result<CMatrix> {
    BraidingProtocol::new(layout)?.unitary(steps, DEFAULT_DENSE_LIMIT)
}

/// A braid operator restricted to a ground space.
#[derive(Clone, Debug, Serialize)]
pub struct BraidReport {
    /// `G† U G`, row-major.
    pub u_gs: [[Complex64; 2]; 2],
    pub eigenvalues: [Complex64; 2],
    /// Arguments of the eigenvalues, ascending.
    pub eigenphases: [f64; 2],
    /// `|arg(λ_2/λ_1)|` in `[0, π]`.
    pub delta_phi: f64,
    /// `‖U_GS† U_GS − I‖_F`.
    pub unitarity_defect: f64,
}

impl BraidReport {
    fn from_projected(u_gs: CMatrix) -> BraidReport {
        let mut eigenvalues = linalg::eigenvalues_2x2(&u_gs);
        eigenvalues.sort_by(|a, b| a.arg().total_cmp(&b.arg()));
        let delta_phi = (eigenvalues[1] / eigenvalues[0]).arg().abs();
        BraidReport {
            u_gs: [[u_gs[(0, 0)], u_gs[(0, 1)]], [u_gs[(1, 0)], u_gs[(1, 1)]]],
            eigenphases: [eigenvalues[0].arg(), eigenvalues[1].arg()],
            eigenvalues,
            delta_phi,
            unitarity_defect: linalg::unitarity_defect(&u_gs),
        }
    }

    pub fn matrix(&self) -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[self.u_gs[0][0], self.u_gs[0][1], self.u_gs[1][0], self.u_gs[1][1]])
    }
}

/// `U_GS = G† U G` with its spectrum and relative phase.
pub fn project_braid(u: &CMatrix, gs: &GroundSpace) -> Result<BraidReport> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch { expected: u.nrows(), got: u.ncols() });
    }
    if u.nrows() != gs.vectors.nrows() {
        return Err(Error::DimensionMismatch { expected: gs.vectors.nrows(), got: u.nrows() });
    }
    Ok(BraidReport::from_projected(gs.vectors.adjoint() * u * &gs.vectors))
}

/// Same as [`project_braid`] for the protocol, without forming `U`.
pub fn project_protocol(protocol: &BraidingProtocol, steps: usize, gs: &GroundSpace) -> Result<BraidReport> {
    let mut image = CMatrix::zeros(gs.vectors.nrows(), 2);
    for k in 0..2 {
        let mut state = gs.column(k);
        protocol.apply(&mut state, steps)?;
        image.set_column(k, &linalg::CVector::from_column_slice(state.amplitudes()));
    }
    Ok(BraidReport::from_projected(gs.vectors.adjoint() * image))
}

/// `e^{−iHt}|ψ⟩` through the eigendecomposition of `H`.
pub fn evolve_exact(state: &StateVector, h: &PauliSum, t: f64) -> Result<StateVector> {
    if h.qubits() != state.qubits() {
        return Err(Error::LengthMismatch { left: state.qubits(), right: h.qubits() });
    }
    let (values, vectors) = linalg::hermitian_eigen(&h.to_matrix(DEFAULT_DENSE_LIMIT)?);
    let psi = linalg::CVector::from_column_slice(state.amplitudes());
    let mut coeffs = vectors.adjoint() * psi;
    for (c, e) in coeffs.iter_mut().zip(&values) {
        *c *= Complex64::from_polar(1.0, -e * t);
    }
    let out = vectors * coeffs;
    Ok(StateVector { qubits: state.qubits(), amplitudes: out.iter().copied().collect() })
}

/// First-order Lie–Trotter `[Π_t exp(−i c_t P_t t/steps)]^steps` in
/// canonical term order.
pub fn trotter_evolve(state: &StateVector, h: &PauliSum, t: f64, steps: usize) -> Result<StateVector> {
    if steps < 1 {
        return Err(Error::InvalidCount { name: "trotter steps", value: steps });
    }
    let mut out = state.clone();
    let dt = t / steps as f64;
    for _ in 0..steps {
        for (c, s) in h.terms() {
            out.apply_rotation(s, c * dt)?;
        }
    }
    Ok(out)
}

/// Propagator used inside each interpolation substep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Propagation {
    /// Lie–Trotter with the given number of repetitions.
    Trotter(usize),
    /// Dense exact exponential.
    Exact,
}

/// Piecewise-constant interpolation `H(s) = (1 − s/S) h_init + (s/S) h_final`
/// for `s = 1..=S`, each held for `τ/S`.
pub fn interpolated_evolution(
    state: &StateVector,
    h_init: &PauliSum,
    h_final: &PauliSum,
    tau: f64,
    substeps: usize,
    propagation: Propagation,
) -> Result<StateVector> {
    if substeps < 1 {
        return Err(Error::InvalidCount { name: "trotter steps", value: substeps });
    }
    if let Propagation::Trotter(0) = propagation {
        return Err(Error::InvalidCount { name: "repetitions", value: 0 });
    }
    let dt = tau / substeps as f64;
    let mut psi = state.clone();
    for s in 1..=substeps {
        let h = PauliSum::interpolate(h_init, h_final, s as f64 / substeps as f64)?;
        psi = match propagation {
            Propagation::Trotter(reps) => trotter_evolve(&psi, &h, dt, reps)?,
            Propagation::Exact => evolve_exact(&psi, &h, dt)?,
        };
    }
    Ok(psi)
}

/// Trotterized adiabatic step between two Hamiltonians.
pub fn trotter_adiabatic(
    state: &StateVector,
    h_init: &PauliSum,
    h_final: &PauliSum,
    tau: f64,
    substeps: usize,
    reps: usize,
) -> Result<StateVector> {
    interpolated_evolution(state, h_init, h_final, tau, substeps, Propagation::Trotter(reps))
}

/// Outcome of the six-interval adiabatic protocol.
#[derive(Clone, Debug)]
pub struct AdiabaticRun {
    pub initial: StateVector,
    pub target: StateVector,
    pub final_state: StateVector,
    /// `|⟨target|final⟩|²` with `target = Ψ(0)_∓`.
    pub fidelity: f64,
}

/// Prepares `Ψ(0)_±` in the ground space of `H_12` and drives it through the
/// six scheduled interpolations.
pub fn run_adiabatic(
    layout: &QubitLayout,
    params: &TrijunctionParams,
    tau: f64,
    substeps: usize,
    propagation: Propagation,
    sign: Sign,
) -> Result<AdiabaticRun> {
    let transitions = schedule(tau)?;
    let hamiltonian = |config: &Configuration| -> Result<PauliSum> {
        layout.map_hamiltonian(&trijunction_h(config, params)?)
    };
    let gs = configuration_ground_space(layout, &transitions[0].initial, params)?;
    let initial = prepare_initial(&gs, sign);
    let target = prepare_initial(&gs, sign.flipped());
    let mut psi = initial.clone();
    for t in &transitions {
        psi = interpolated_evolution(
            &psi,
            &hamiltonian(&t.initial)?,
            &hamiltonian(&t.final_config)?,
            t.duration,
            substeps,
            propagation,
        )?;
    }
    let fidelity = fidelity(&target, &psi)?;
    Ok(AdiabaticRun { initial, target, final_state: psi, fidelity })
}

/// Applies a dense operator; used by tests and the circuit checks.
pub fn apply_dense(state: &StateVector, m: &CMatrix) -> Result<StateVector> {
    if m.ncols() != state.dimension() || !m.is_square() {
        return Err(Error::DimensionMismatch { expected: state.dimension(), got: m.ncols() });
    }
    Ok(state.apply_matrix(m))
}
