//! Phase-tracked multi-qubit Pauli strings and real-weighted Pauli sums.
//!
//! A string on `Q` qubits is stored as a pair of bitmasks in the symplectic
//! `(x, z)` form together with a phase `i^k`. Qubit 0 is the least significant
//! bit of a computational basis index and the *rightmost* factor of a label:
//! `"XZ"` is `X` on qubit 1 and `Z` on qubit 0, matching kets `|q_{Q-1} … q_0⟩`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Bitmask storage caps strings at 64 qubits.
pub const MAX_QUBITS: usize = 64;

/// Largest qubit count for which dense matrices are built.
pub const DEFAULT_DENSE_LIMIT: usize = 14;

/// Coefficients at or below this magnitude are dropped when a sum is normalized.
pub const ZERO_TOLERANCE: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum PauliAxis {
    I,
    X,
    Y,
    Z,
}

impl PauliAxis {
    pub const ALL: [PauliAxis; 4] = [PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliAxis::I,
            (true, false) => PauliAxis::X,
            (true, true) => PauliAxis::Y,
            (false, true) => PauliAxis::Z,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            PauliAxis::I => (false, false),
            PauliAxis::X => (true, false),
            PauliAxis::Y => (true, true),
            PauliAxis::Z => (false, true),
        }
    }

    pub fn label(self) -> char {
        match self {
            PauliAxis::I => 'I',
            PauliAxis::X => 'X',
            PauliAxis::Y => 'Y',
            PauliAxis::Z => 'Z',
        }
    }

    /// Single-qubit product `self · other = phase · axis`.
    pub fn multiply(self, other: PauliAxis) -> (Phase, PauliAxis) {
        let a = PauliString::single(1, 0, self).expect("one qubit");
        let b = PauliString::single(1, 0, other).expect("one qubit");
        let c = a.multiply(&b).expect("equal lengths");
        (c.phase(), c.axis(0))
    }
}

impl TryFrom<char> for PauliAxis {
    type Error = Error;

    fn try_from(c: char) -> Result<Self> {
        match c {
            'I' | 'i' => Ok(PauliAxis::I),
            'X' | 'x' => Ok(PauliAxis::X),
            'Y' | 'y' => Ok(PauliAxis::Y),
            'Z' | 'z' => Ok(PauliAxis::Z),
            other => Err(Error::InvalidLabel(other)),
        }
    }
}

/// A power of `i`: one of `+1, +i, -1, -i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Phase(u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);

    pub fn from_exponent(k: u32) -> Self {
        Phase((k % 4) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn is_real(self) -> bool {
        self.0 % 2 == 0
    }

    /// `+1` or `-1` for real phases.
    pub fn sign(self) -> Option<f64> {
        match self.0 {
            0 => Some(1.0),
            2 => Some(-1.0),
            _ => None,
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self.0 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self.0 {
            0 => "+1",
            1 => "+i",
            2 => "-1",
            _ => "-i",
        }
    }
}

impl Mul for Phase {
    type Output = Phase;

    fn mul(self, rhs: Phase) -> Phase {
        Phase((self.0 + rhs.0) % 4)
    }
}

/// `phase · σ_{Q-1} ⊗ … ⊗ σ_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    qubits: usize,
    x: u64,
    z: u64,
    phase: Phase,
}

impl PauliString {
    pub fn identity(qubits: usize) -> Result<Self> {
        if qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits { qubits, max: MAX_QUBITS });
        }
        Ok(PauliString { qubits, x: 0, z: 0, phase: Phase::ONE })
    }

    pub fn single(qubits: usize, qubit: usize, axis: PauliAxis) -> Result<Self> {
        Self::from_ops(qubits, &[(qubit, axis)])
    }

    /// Builds a phase-`+1` string from `(qubit, axis)` factors. Repeated qubits
    /// are multiplied in the order given.
    pub fn from_ops(qubits: usize, ops: &[(usize, PauliAxis)]) -> Result<Self> {
        let mut out = Self::identity(qubits)?;
        for &(qubit, axis) in ops {
            if qubit >= qubits {
                return Err(Error::QubitOutOfRange { qubit, qubits });
            }
            let (xb, zb) = axis.bits();
            let factor = PauliString {
                qubits,
                x: (xb as u64) << qubit,
                z: (zb as u64) << qubit,
                phase: Phase::ONE,
            };
            out = out.multiply(&factor)?;
        }
        Ok(out)
    }

    /// Builds a string from per-qubit axes, `axes[q]` acting on qubit `q`.
    pub fn from_axes(phase: Phase, axes: &[PauliAxis]) -> Result<Self> {
        let mut out = Self::identity(axes.len())?;
        for (q, axis) in axes.iter().enumerate() {
            let (xb, zb) = axis.bits();
            out.x |= (xb as u64) << q;
            out.z |= (zb as u64) << q;
        }
        out.phase = phase;
        Ok(out)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn x_mask(&self) -> u64 {
        self.x
    }

    pub fn z_mask(&self) -> u64 {
        self.z
    }

    pub fn with_phase(&self, phase: Phase) -> Self {
        PauliString { phase, ..self.clone() }
    }

    pub fn axis(&self, qubit: usize) -> PauliAxis {
        PauliAxis::from_bits((self.x >> qubit) & 1 == 1, (self.z >> qubit) & 1 == 1)
    }

    /// Axes indexed by qubit.
    pub fn axes(&self) -> Vec<PauliAxis> {
        (0..self.qubits).map(|q| self.axis(q)).collect()
    }

    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    /// Qubits with a non-identity factor, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.qubits).filter(|&q| ((self.x | self.z) >> q) & 1 == 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase.is_real()
    }

    fn check_len(&self, other: &PauliString) -> Result<()> {
        if self.qubits != other.qubits {
            return Err(Error::LengthMismatch { left: self.qubits, right: other.qubits });
        }
        Ok(())
    }

    /// The operator product `self · other` with its accumulated phase.
    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_len(other)?;
        // Rewrite each Y as i·XZ, multiply in XZ form, then convert back.
        let ys = |x: u64, z: u64| (x & z).count_ones();
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let k = self.phase.0 as u32
            + other.phase.0 as u32
            + ys(self.x, self.z)
            + ys(other.x, other.z)
            + 2 * (self.z & other.x).count_ones()
            + 4 * MAX_QUBITS as u32
            - ys(x, z);
        Ok(PauliString { qubits: self.qubits, x, z, phase: Phase::from_exponent(k) })
    }

    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_len(other)?;
        let overlap = (self.x & other.z).count_ones() + (self.z & other.x).count_ones();
        Ok(overlap % 2 == 0)
    }

    /// Hermitian adjoint.
    pub fn adjoint(&self) -> PauliString {
        let phase = match self.phase.0 {
            1 => Phase::MINUS_I,
            3 => Phase::I,
            _ => self.phase,
        };
        self.with_phase(phase)
    }

    /// Image of a computational basis state: `self |basis⟩ = amp |out⟩`.
    #[inline]
    pub fn apply_to_basis(&self, basis: usize) -> (Complex64, usize) {
        let b = basis as u64;
        let k = self.phase.0 as u32 + (self.x & self.z).count_ones() + 2 * (b & self.z).count_ones();
        (Phase::from_exponent(k).to_complex(), (b ^ self.x) as usize)
    }

    /// Dense `2^Q × 2^Q` matrix.
    pub fn to_matrix(&self, dense_limit: usize) -> Result<CMatrix> {
        if self.qubits > dense_limit {
            return Err(Error::DenseLimit { qubits: self.qubits, limit: dense_limit });
        }
        let dim = 1usize << self.qubits;
        let mut m = CMatrix::zeros(dim, dim);
        for col in 0..dim {
            let (amp, row) = self.apply_to_basis(col);
            m[(row, col)] = amp;
        }
        Ok(m)
    }

    /// Axis label without phase, qubit `Q-1` first.
    pub fn axes_label(&self) -> String {
        (0..self.qubits).rev().map(|q| self.axis(q).label()).collect()
    }

    /// Deterministic ordering: weight first, then label.
    pub fn sort_key(&self) -> (usize, String) {
        (self.weight(), self.axes_label())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase.0 {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.axes_label())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// Parses labels like `"XIZ"`, `"-YY"` or `"+iXZ"`.
    fn from_str(s: &str) -> Result<Self> {
        let (phase, body) = if let Some(rest) = s.strip_prefix("-i") {
            (Phase::MINUS_I, rest)
        } else if let Some(rest) = s.strip_prefix("+i") {
            (Phase::I, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (Phase::MINUS_ONE, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (Phase::ONE, rest)
        } else {
            (Phase::ONE, s)
        };
        let mut axes = body.chars().map(PauliAxis::try_from).collect::<Result<Vec<_>>>()?;
        axes.reverse();
        PauliString::from_axes(phase, &axes)
    }
}

/// Hermitian operator `Σ c_t P_t` with real coefficients and phase-`+1` strings.
///
/// Terms are kept merged and ordered by `(weight, label)`; that order is the
/// Trotter and compilation order used everywhere else.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    qubits: usize,
    terms: BTreeMap<(usize, String), (f64, PauliString)>,
}

impl PauliSum {
    pub fn new(qubits: usize) -> Self {
        PauliSum { qubits, terms: BTreeMap::new() }
    }

    pub fn from_terms<I>(qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, PauliString)>,
    {
        let mut sum = PauliSum::new(qubits);
        for (c, s) in terms {
            sum.add_term(c, &s)?;
        }
        Ok(sum)
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    /// Adds `coeff · string`, folding a `±1` phase into the coefficient.
    pub fn add_term(&mut self, coeff: f64, string: &PauliString) -> Result<()> {
        if string.qubits() != self.qubits {
            return Err(Error::LengthMismatch { left: self.qubits, right: string.qubits() });
        }
        let sign = string.phase().sign().ok_or(Error::NonHermitianTerm(string.phase().name()))?;
        let canonical = string.with_phase(Phase::ONE);
        let key = canonical.sort_key();
        let entry = self.terms.entry(key.clone()).or_insert((0.0, canonical));
        entry.0 += sign * coeff;
        if entry.0.abs() <= ZERO_TOLERANCE {
            self.terms.remove(&key);
        }
        Ok(())
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (f64, &PauliString)> {
        self.terms.values().map(|(c, s)| (*c, s))
    }

    pub fn coefficient(&self, string: &PauliString) -> f64 {
        self.terms.get(&string.sort_key()).map_or(0.0, |(c, _)| *c)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Re-merges and drops negligible terms. Sums are always kept normalized,
    /// so this returns an equal value.
    pub fn normalized(&self) -> PauliSum {
        let mut out = PauliSum::new(self.qubits);
        for (c, s) in self.terms() {
            out.add_term(c, s).expect("same width, phase +1");
        }
        out
    }

    pub fn scaled(&self, factor: f64) -> PauliSum {
        let mut out = PauliSum::new(self.qubits);
        for (c, s) in self.terms() {
            out.add_term(factor * c, s).expect("same width, phase +1");
        }
        out
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, other: &PauliSum, factor: f64) -> Result<PauliSum> {
        let mut out = self.clone();
        for (c, s) in other.terms() {
            out.add_term(factor * c, s)?;
        }
        Ok(out)
    }

    /// `(1 - f) · a + f · b`.
    pub fn interpolate(a: &PauliSum, b: &PauliSum, f: f64) -> Result<PauliSum> {
        a.scaled(1.0 - f).add_scaled(b, f)
    }

    /// Whether every term commutes with `string`.
    pub fn commutes_with(&self, string: &PauliString) -> Result<bool> {
        for (_, s) in self.terms() {
            if !s.commutes(string)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `H |ψ⟩` without building a matrix.
    pub fn apply(&self, amplitudes: &[Complex64]) -> Result<Vec<Complex64>> {
        let dim = 1usize << self.qubits;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: amplitudes.len() });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for (c, s) in self.terms() {
            for (b, &a) in amplitudes.iter().enumerate() {
                let (amp, row) = s.apply_to_basis(b);
                out[row] += a * amp * c;
            }
        }
        Ok(out)
    }

    /// Dense Hermitian matrix `Σ c_t · matrix(P_t)`.
    pub fn to_matrix(&self, dense_limit: usize) -> Result<CMatrix> {
        if self.qubits > dense_limit {
            return Err(Error::DenseLimit { qubits: self.qubits, limit: dense_limit });
        }
        let dim = 1usize << self.qubits;
        let mut m = CMatrix::zeros(dim, dim);
        for (c, s) in self.terms() {
            for col in 0..dim {
                let (amp, row) = s.apply_to_basis(col);
                m[(row, col)] += amp * c;
            }
        }
        Ok(m)
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, s)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c:+}·{}", s.axes_label())?;
        }
        Ok(())
    }
}
