#![allow(dead_code)]

use std::collections::HashMap;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use trijunction_core::hamiltonians::{trijunction_h, Configuration, TrijunctionParams};
use trijunction_core::linalg::{frobenius, CMatrix};
use trijunction_core::simulator::{configuration_ground_space, evolve_exact, trotter_evolve};
use trijunction_core::{
    prepare_initial, run_adiabatic, ExchangeOperator, MajoranaHamiltonian, MajoranaIndex, MajoranaMonomial, PauliSum,
    Propagation, QubitLayout, Sign, StateVector,
};

pub const LIMIT: usize = 14;

pub fn x(arm: u8, site: usize) -> MajoranaIndex {
    MajoranaIndex::x(arm, site)
}

pub fn y(arm: u8, site: usize) -> MajoranaIndex {
    MajoranaIndex::y(arm, site)
}

/// Builds `Σ i·w·γ_a γ_b` from `(w, a, b)` triples as written (any order).
pub fn hamiltonian(sites: usize, terms: &[(f64, MajoranaIndex, MajoranaIndex)]) -> MajoranaHamiltonian {
    let mut h = MajoranaHamiltonian::new(sites);
    for &(w, a, b) in terms {
        h.add(w, a, b).unwrap();
    }
    h
}

/// Three-site `H_12` with unit parameters, term by term.
pub fn golden_h12() -> MajoranaHamiltonian {
    hamiltonian(
        3,
        &[
            (1.0, y(1, 0), x(1, 1)),
            (1.0, y(1, 1), x(1, 2)),
            (1.0, y(2, 0), x(2, 1)),
            (1.0, y(2, 1), x(2, 2)),
            (1.0, x(3, 0), y(3, 0)),
            (1.0, x(3, 1), y(3, 1)),
            (1.0, x(3, 2), y(3, 2)),
            (1.0, x(1, 0), x(2, 0)),
        ],
    )
}

/// Intermediate after the transfer sub-step, as printed in the reference
/// derivation (arm-2 on-site factors written `γ^y γ^x`).
pub fn printed_h1() -> MajoranaHamiltonian {
    hamiltonian(
        3,
        &[
            (1.0, y(1, 0), x(1, 1)),
            (1.0, y(1, 1), x(1, 2)),
            (1.0, y(2, 1), x(2, 1)),
            (1.0, y(2, 2), x(2, 2)),
            (1.0, x(3, 0), y(3, 0)),
            (1.0, x(3, 1), y(3, 1)),
            (1.0, x(3, 2), y(3, 2)),
            (1.0, x(1, 0), x(2, 0)),
        ],
    )
}

/// Intermediate after the junction sub-step, as printed.
pub fn printed_h2() -> MajoranaHamiltonian {
    hamiltonian(
        3,
        &[
            (1.0, y(1, 0), x(1, 1)),
            (1.0, y(1, 1), x(1, 2)),
            (1.0, y(2, 0), x(2, 0)),
            (1.0, y(2, 1), x(2, 1)),
            (1.0, y(2, 2), x(2, 2)),
            (1.0, x(3, 1), y(3, 1)),
            (1.0, x(3, 2), y(3, 2)),
            (1.0, x(1, 0), x(3, 0)),
        ],
    )
}

/// Three-site `H_13`, as printed.
pub fn golden_h13() -> MajoranaHamiltonian {
    hamiltonian(
        3,
        &[
            (1.0, y(1, 0), x(1, 1)),
            (1.0, y(1, 1), x(1, 2)),
            (1.0, y(3, 0), x(3, 1)),
            (1.0, y(3, 1), x(3, 2)),
            (1.0, x(2, 0), y(2, 0)),
            (1.0, x(2, 1), y(2, 1)),
            (1.0, x(2, 2), y(2, 2)),
            (-1.0, x(1, 0), x(3, 0)),
        ],
    )
}

/// Intermediate after the transfer sub-step, by hand: the composite map is
/// `γ^y_{20} ↦ −γ^y_{21}`, `γ^y_{21} ↦ −γ^y_{22}`, `γ^y_{22} ↦ γ^y_{20}`.
pub fn derived_h1() -> MajoranaHamiltonian {
    hamiltonian(
        3,
        &[
            (1.0, y(1, 0), x(1, 1)),
            (1.0, y(1, 1), x(1, 2)),
            (1.0, x(2, 1), y(2, 1)),
            (1.0, x(2, 2), y(2, 2)),
            (1.0, x(3, 0), y(3, 0)),
            (1.0, x(3, 1), y(3, 1)),
            (1.0, x(3, 2), y(3, 2)),
            (1.0, x(1, 0), x(2, 0)),
        ],
    )
}

/// Intermediate after the junction sub-step, by hand.
pub fn derived_h2() -> MajoranaHamiltonian {
    hamiltonian(
        3,
        &[
            (1.0, y(1, 0), x(1, 1)),
            (1.0, y(1, 1), x(1, 2)),
            (1.0, x(2, 0), y(2, 0)),
            (1.0, x(2, 1), y(2, 1)),
            (1.0, x(2, 2), y(2, 2)),
            (1.0, x(3, 1), y(3, 1)),
            (1.0, x(3, 2), y(3, 2)),
            (-1.0, x(1, 0), x(3, 0)),
        ],
    )
}

pub fn random_state(qubits: usize, rng: &mut StdRng) -> StateVector {
    let amps = (0..1usize << qubits).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    StateVector::from_amplitudes(amps).unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Haar-ish random 2×2 unitary from a QR of a random complex matrix.
pub fn random_unitary_2x2(rng: &mut StdRng) -> CMatrix {
    let m = CMatrix::from_fn(2, 2, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    m.qr().q()
}

/// Spectral norm of a matrix via the largest singular value.
pub fn operator_norm(m: &CMatrix) -> f64 {
    m.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

pub fn all_indices(n: usize) -> Vec<MajoranaIndex> {
    (1..=3).flat_map(|arm| (0..n).flat_map(move |j| [x(arm, j), y(arm, j)])).collect()
}

pub fn dense(layout: &QubitLayout, m: &MajoranaMonomial) -> CMatrix {
    let (c, s) = layout.map_monomial(m).unwrap();
    s.to_matrix(LIMIT).unwrap() * c
}

/// Row of the single nonzero entry in each column of a monomial matrix.
pub fn monomial_columns(g: &CMatrix) -> Vec<(usize, Complex64)> {
    (0..g.ncols())
        .map(|j| {
            let nonzero: Vec<usize> = (0..g.nrows()).filter(|&i| g[(i, j)].norm() > 0.0).collect();
            assert_eq!(nonzero.len(), 1);
            (nonzero[0], g[(nonzero[0], j)])
        })
        .collect()
}

/// `O m O†` with `O = (1 + g)/√2`, `g` the dense image of `γ_k γ_l`:
/// `(m + g m + m g† + g m g†)/2`, each product a phased permutation.
pub fn conjugate_dense(g: &CMatrix, m: &CMatrix) -> CMatrix {
    let cols = monomial_columns(g);
    let d = m.nrows();
    let mut out = m.clone();
    for j in 0..d {
        let (pj, vj) = cols[j];
        for jj in 0..d {
            let (pjj, vjj) = cols[jj];
            let e = m[(j, jj)];
            out[(pj, jj)] += vj * e;
            out[(j, pjj)] += e * vjj.conj();
            out[(pj, pjj)] += vj * e * vjj.conj();
        }
    }
    out * Complex64::new(0.5, 0.0)
}

/// Matrix conjugation by every exchange agrees with the symbolic rule on
/// every quadratic term.
pub fn bridge_error(layout: &QubitLayout) -> f64 {
    let idx = all_indices(layout.sites());
    let mut dense_terms = HashMap::new();
    for (i, &a) in idx.iter().enumerate() {
        for &b in &idx[i + 1..] {
            dense_terms.insert((a, b), dense(layout, &MajoranaMonomial::quadratic(1.0, a, b)));
        }
    }
    let mut worst: f64 = 0.0;
    for &k in &idx {
        for &l in &idx {
            let Ok(op) = ExchangeOperator::new(k, l) else { continue };
            let g = dense(layout, &op.generator());
            for (&(a, b), m) in &dense_terms {
                let image = MajoranaMonomial::quadratic(1.0, a, b).conjugate(&op);
                let key = (image.factors[0], image.factors[1]);
                let symbolic = &dense_terms[&key] * Complex64::new(image.coefficient.im, 0.0);
                worst = worst.max(frobenius(&(conjugate_dense(&g, m) - symbolic)));
            }
        }
    }
    worst
}

/// Fixed τ for the S-sweep: long enough that the exact interpolation is
/// near-adiabatic (fidelity ≈ 0.9) at the single-site default parameters.
pub const SWEEP_TAU: f64 = 8.0;
pub const SWEEP: [usize; 5] = [2, 5, 10, 20, 50];

pub fn mapped(layout: &QubitLayout, a: u8, b: u8) -> PauliSum {
    let p = TrijunctionParams::with_sites(layout.sites());
    layout.map_hamiltonian(&trijunction_h(&Configuration::new(a, b).unwrap(), &p).unwrap()).unwrap()
}

pub fn initial(layout: &QubitLayout, sign: Sign) -> StateVector {
    let p = TrijunctionParams::with_sites(layout.sites());
    prepare_initial(&configuration_ground_space(layout, &Configuration::new(1, 2).unwrap(), &p).unwrap(), sign)
}

pub fn distance(a: &StateVector, b: &StateVector) -> f64 {
    a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let cov: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}

/// Trotter error of the midpoint Hamiltonian `(H_12 + H_13)/2`, whose terms
/// do not all commute.
pub fn trotter_errors(steps: &[usize]) -> Vec<f64> {
    let layout = QubitLayout::coupler(1).unwrap();
    let h = PauliSum::interpolate(&mapped(&layout, 1, 2), &mapped(&layout, 1, 3), 0.5).unwrap();
    let psi = initial(&layout, Sign::Plus);
    let exact = evolve_exact(&psi, &h, 1.0).unwrap();
    steps.iter().map(|&s| distance(&trotter_evolve(&psi, &h, 1.0, s).unwrap(), &exact)).collect()
}

/// Adiabatic braid fidelity over the S-sweep at fixed τ (n = 1, coupler).
pub fn adiabatic_sweep(tau: f64) -> Vec<f64> {
    let layout = QubitLayout::coupler(1).unwrap();
    let p = TrijunctionParams::default();
    SWEEP
        .iter()
        .map(|&s| run_adiabatic(&layout, &p, tau, s, Propagation::Trotter(1), Sign::Plus).unwrap().fidelity)
        .collect()
}
