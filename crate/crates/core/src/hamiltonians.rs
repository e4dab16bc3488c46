//! Kitaev-chain and trijunction Hamiltonians in Majorana form, and the
//! six-transition braiding schedule.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::majorana::{protocol_steps, BraidStep, MajoranaHamiltonian, MajoranaIndex, MajoranaMonomial};

/// Model parameters. `alpha` is the on-site weight of the trivial arm and
/// `coupling` the junction strength `t_ab`; `mu` and `hopping` only enter the
/// single-chain [`kitaev_chain`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TrijunctionParams {
    pub sites: usize,
    pub delta: f64,
    pub alpha: f64,
    pub coupling: f64,
    pub mu: f64,
    pub hopping: f64,
}

impl Default for TrijunctionParams {
    fn default() -> Self {
        TrijunctionParams { sites: 1, delta: 1.0, alpha: 1.0, coupling: 1.0, mu: 2.0, hopping: 1.0 }
    }
}

impl TrijunctionParams {
    pub fn with_sites(sites: usize) -> Self {
        TrijunctionParams { sites, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sites < 1 {
            return Err(Error::InvalidSites(self.sites));
        }
        Ok(())
    }
}

/// Levi-Civita symbol on `{1,2,3}` with `ε_123 = +1`.
pub fn levi_civita(a: u8, b: u8, c: u8) -> i8 {
    match (a, b, c) {
        (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
        (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1,
        _ => 0,
    }
}

/// Arms `a`, `b` topological and `c` trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Configuration {
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub epsilon: i8,
}

impl Configuration {
    pub fn new(a: u8, b: u8) -> Result<Self> {
        for arm in [a, b] {
            if !(1..=3).contains(&arm) {
                return Err(Error::InvalidArm(arm));
            }
        }
        if a == b {
            return Err(Error::InvalidConfiguration(a, b));
        }
        let c = 6 - a - b;
        Ok(Configuration { a, b, c, epsilon: levi_civita(a, b, c) })
    }

    /// Same topological pair written with `a < b`.
    pub fn canonical(&self) -> Configuration {
        Configuration::new(self.a.min(self.b), self.a.max(self.b)).expect("valid arms")
    }

    pub fn label(&self) -> String {
        format!("H{}{}", self.a, self.b)
    }

    /// The two far-end Majoranas left unpaired by this configuration.
    pub fn unpaired_modes(&self, sites: usize) -> (MajoranaIndex, MajoranaIndex) {
        (MajoranaIndex::y(self.a, sites - 1), MajoranaIndex::y(self.b, sites - 1))
    }

    /// `i γ_A γ_B` for the unpaired modes; commutes with the configuration
    /// Hamiltonian and labels its two degenerate ground states.
    pub fn encoded_parity(&self, sites: usize) -> MajoranaMonomial {
        let (ga, gb) = self.unpaired_modes(sites);
        MajoranaMonomial::new(Complex64::new(0.0, 1.0), vec![ga, gb])
    }
}

impl BraidStep {
    pub fn initial_configuration(&self) -> Configuration {
        Configuration::new(self.remaining, self.donor).expect("valid step").canonical()
    }

    pub fn final_configuration(&self) -> Configuration {
        Configuration::new(self.remaining, self.host).expect("valid step").canonical()
    }
}

/// Single Kitaev chain on arm 1:
/// `(i/2) Σ_j [−μ γ^x_j γ^y_j + (t+|Δ|) γ^y_j γ^x_{j+1} + (−t+|Δ|) γ^x_j γ^y_{j+1}]`.
pub fn kitaev_chain(sites: usize, mu: f64, t: f64, delta: f64) -> Result<MajoranaHamiltonian> {
    if sites < 1 {
        return Err(Error::InvalidSites(sites));
    }
    let (x, y) = (|j| MajoranaIndex::x(1, j), |j| MajoranaIndex::y(1, j));
    let mut h = MajoranaHamiltonian::new(sites);
    for j in 0..sites {
        if mu != 0.0 {
            h.add(-0.5 * mu, x(j), y(j))?;
        }
        if j + 1 < sites {
            let forward = 0.5 * (t + delta.abs());
            let backward = 0.5 * (-t + delta.abs());
            if forward != 0.0 {
                h.add(forward, y(j), x(j + 1))?;
            }
            if backward != 0.0 {
                h.add(backward, x(j), y(j + 1))?;
            }
        }
    }
    Ok(h)
}

/// `H_ab = iΔ Σ_{k∈{a,b}} Σ_j γ^y_{kj} γ^x_{k,j+1} + iα Σ_l γ^x_{cl} γ^y_{cl}
///        + i ε_abc t_ab γ^x_{a0} γ^x_{b0}`.
pub fn trijunction_h(config: &Configuration, params: &TrijunctionParams) -> Result<MajoranaHamiltonian> {
    params.validate()?;
    let n = params.sites;
    let mut h = MajoranaHamiltonian::new(n);
    for k in [config.a, config.b] {
        for j in 0..n - 1 {
            h.add(params.delta, MajoranaIndex::y(k, j), MajoranaIndex::x(k, j + 1))?;
        }
    }
    for l in 0..n {
        h.add(params.alpha, MajoranaIndex::x(config.c, l), MajoranaIndex::y(config.c, l))?;
    }
    h.add(
        config.epsilon as f64 * params.coupling,
        MajoranaIndex::x(config.a, 0),
        MajoranaIndex::x(config.b, 0),
    )?;
    Ok(h)
}

/// One interval of the schedule: interpolate `initial → final` over
/// `[start, start + duration]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Transition {
    pub step: BraidStep,
    pub initial: Configuration,
    pub final_config: Configuration,
    pub start: f64,
    pub duration: f64,
}

/// The six transitions `(1,2)→(1,3)→(2,3)→(1,2)→…`, each of length `tau`.
pub fn schedule(tau: f64) -> Result<Vec<Transition>> {
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidDuration(tau));
    }
    Ok(protocol_steps()
        .iter()
        .enumerate()
        .map(|(i, step)| Transition {
            step: *step,
            initial: step.initial_configuration(),
            final_config: step.final_configuration(),
            start: i as f64 * tau,
            duration: tau,
        })
        .collect())
}
