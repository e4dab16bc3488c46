//! Jordan–Wigner maps from trijunction Majoranas to Pauli strings.
//!
//! Both layouts place site `j` of arm `k` on qubit `(k-1)·n + j`.
//!
//! * **Coupler**: one extra qubit `C = 3n` tags the arm,
//!   `γ^{x|y}_{kj} = σ_C^{(k)} σ^{x|y}_{kj} Π_{i<j} σ^z_{ki}` with
//!   `σ_C^{(1,2,3)} = σ^{x,y,z}_C`. Each arm carries its own string, so
//!   junction terms stay local.
//! * **Continuous**: the three arms form one chain of `3n` qubits and
//!   `γ^{x|y}_g = σ^{x|y}_g Π_{i<g} σ^z_i` on the global site `g`.
//!
//! The coupler layout represents `6n` Majoranas on `3n + 1` qubits, which is
//! two copies of the irreducible representation. `σ^z_C Π_j σ^z_{3j}`
//! anticommutes with every mapped Majorana, so it commutes with every
//! quadratic term and exchange operator. Its `+1` eigenspace is the physical
//! sector used for ground states (see [`QubitLayout::sector_operator`]).

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorana::{ExchangeOperator, MajoranaHamiltonian, MajoranaIndex, MajoranaMonomial, Orientation};
use crate::pauli::{PauliAxis, PauliString, PauliSum, Phase, MAX_QUBITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LayoutKind {
    Coupler,
    Continuous,
}

impl LayoutKind {
    pub const ALL: [LayoutKind; 2] = [LayoutKind::Coupler, LayoutKind::Continuous];

    pub fn name(self) -> &'static str {
        match self {
            LayoutKind::Coupler => "coupler",
            LayoutKind::Continuous => "continuous",
        }
    }
}

impl fmt::Display for LayoutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LayoutKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "coupler" => Ok(LayoutKind::Coupler),
            "continuous" => Ok(LayoutKind::Continuous),
            other => Err(format!("unknown mapping {other:?} (expected coupler or continuous)")),
        }
    }
}

/// Coupler axis that tags arm `k`.
pub fn coupler_axis(arm: u8) -> Result<PauliAxis> {
    match arm {
        1 => Ok(PauliAxis::X),
        2 => Ok(PauliAxis::Y),
        3 => Ok(PauliAxis::Z),
        other => Err(Error::InvalidArm(other)),
    }
}

/// A qubit role, used to spell basis states independently of layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Coupler,
    Site { arm: u8, site: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QubitLayout {
    kind: LayoutKind,
    sites: usize,
    total_qubits: usize,
}

impl QubitLayout {
    pub fn new(kind: LayoutKind, sites: usize) -> Result<Self> {
        if sites < 1 {
            return Err(Error::InvalidSites(sites));
        }
        let total_qubits = match kind {
            LayoutKind::Coupler => 3 * sites + 1,
            LayoutKind::Continuous => 3 * sites,
        };
        if total_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits { qubits: total_qubits, max: MAX_QUBITS });
        }
        Ok(QubitLayout { kind, sites, total_qubits })
    }

    pub fn coupler(sites: usize) -> Result<Self> {
        Self::new(LayoutKind::Coupler, sites)
    }

    pub fn continuous(sites: usize) -> Result<Self> {
        Self::new(LayoutKind::Continuous, sites)
    }

    pub fn kind(&self) -> LayoutKind {
        self.kind
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn total_qubits(&self) -> usize {
        self.total_qubits
    }

    pub fn dimension(&self) -> usize {
        1 << self.total_qubits
    }

    pub fn qubit(&self, arm: u8, site: usize) -> Result<usize> {
        if !(1..=3).contains(&arm) {
            return Err(Error::InvalidArm(arm));
        }
        if site >= self.sites {
            return Err(Error::InvalidMajorana { index: MajoranaIndex::x(arm, site), sites: self.sites });
        }
        Ok((arm as usize - 1) * self.sites + site)
    }

    pub fn coupler_qubit(&self) -> Option<usize> {
        match self.kind {
            LayoutKind::Coupler => Some(3 * self.sites),
            LayoutKind::Continuous => None,
        }
    }

    pub fn slot_qubit(&self, slot: Slot) -> Result<usize> {
        match slot {
            Slot::Coupler => self.coupler_qubit().ok_or(Error::QubitOutOfRange {
                qubit: self.total_qubits,
                qubits: self.total_qubits,
            }),
            Slot::Site { arm, site } => self.qubit(arm, site),
        }
    }

    /// `((arm, site), qubit)` pairs followed by the coupler, if any.
    pub fn assignment(&self) -> Vec<(Slot, usize)> {
        let mut out = Vec::with_capacity(self.total_qubits);
        for arm in 1..=3u8 {
            for site in 0..self.sites {
                out.push((Slot::Site { arm, site }, (arm as usize - 1) * self.sites + site));
            }
        }
        if let Some(c) = self.coupler_qubit() {
            out.push((Slot::Coupler, c));
        }
        out
    }

    /// Basis index of the state with exactly the listed slots set to `|1⟩`.
    pub fn basis_index(&self, ones: &[Slot]) -> Result<usize> {
        ones.iter().try_fold(0usize, |acc, &s| Ok(acc | (1 << self.slot_qubit(s)?)))
    }

    /// Pauli image of a single Majorana, phase `+1`.
    pub fn map_majorana(&self, m: &MajoranaIndex) -> Result<PauliString> {
        m.validate(self.sites)?;
        let head = match m.orientation {
            Orientation::X => PauliAxis::X,
            Orientation::Y => PauliAxis::Y,
        };
        let mut ops = Vec::with_capacity(m.site + 2);
        let first = match self.kind {
            LayoutKind::Coupler => {
                ops.push((self.coupler_qubit().expect("coupler layout"), coupler_axis(m.arm)?));
                self.qubit(m.arm, 0)?
            }
            LayoutKind::Continuous => 0,
        };
        let target = self.qubit(m.arm, m.site)?;
        ops.extend((first..target).map(|q| (q, PauliAxis::Z)));
        ops.push((target, head));
        PauliString::from_ops(self.total_qubits, &ops)
    }

    /// Maps a monomial to `(coefficient, string)` with the string at phase `+1`.
    pub fn map_monomial(&self, m: &MajoranaMonomial) -> Result<(Complex64, PauliString)> {
        let mut product = PauliString::identity(self.total_qubits)?;
        for factor in &m.factors {
            product = product.multiply(&self.map_majorana(factor)?)?;
        }
        let coefficient = m.coefficient * product.phase().to_complex();
        Ok((coefficient, product.with_phase(Phase::ONE)))
    }

    pub fn map_hamiltonian(&self, h: &MajoranaHamiltonian) -> Result<PauliSum> {
        let mut sum = PauliSum::new(self.total_qubits);
        for term in h.terms() {
            let (c, s) = self.map_monomial(&term)?;
            if c.im != 0.0 {
                return Err(Error::NonHermitianTerm("complex"));
            }
            sum.add_term(c.re, &s)?;
        }
        Ok(sum)
    }

    /// `σ^z_C Π_j σ^z_{3j}` for the coupler layout; `None` when the layout
    /// is already irreducible.
    ///
    /// It is diagonal, so its `+1` sector is the set of basis states with even
    /// parity over the coupler and arm-3 qubits. That sector holds the
    /// single-site ground states `(|0000⟩ ± …)` with coupler and arm 3 in `|0⟩`.
    pub fn sector_operator(&self) -> Option<PauliString> {
        let c = self.coupler_qubit()?;
        let mut ops = vec![(c, PauliAxis::Z)];
        ops.extend((0..self.sites).map(|j| ((2 * self.sites) + j, PauliAxis::Z)));
        Some(PauliString::from_ops(self.total_qubits, &ops).expect("in range"))
    }

    /// `(P, θ)` with `O_{kl} = exp(−iθP)`.
    ///
    /// `(γ_k γ_l)² = −1`, so the mapped generator is `±i` times a Pauli
    /// string and `O = exp(π/4 · γ_k γ_l)` is a quarter-turn rotation.
    pub fn exchange_rotation(&self, op: &ExchangeOperator) -> Result<(PauliString, f64)> {
        let (c, s) = self.map_monomial(&op.generator())?;
        // γ_k γ_l = c·S = i·(−i c)·S
        let sign = (Complex64::new(0.0, -1.0) * c).re;
        Ok((s, -std::f64::consts::FRAC_PI_4 * sign))
    }

    /// Pauli image of an encoded parity `i γ_A γ_B`, as a one-term sum.
    pub fn map_parity(&self, parity: &MajoranaMonomial) -> Result<PauliSum> {
        let (c, s) = self.map_monomial(parity)?;
        if c.im != 0.0 {
            return Err(Error::NonHermitianTerm("complex"));
        }
        PauliSum::from_terms(self.total_qubits, [(c.re, s)])
    }
}
