mod common;

use common::*;
use num_complex::Complex64;
use trijunction_core::hamiltonians::{trijunction_h, Configuration, TrijunctionParams};
use trijunction_core::linalg::{frobenius, CMatrix};
use trijunction_core::mapping::Slot;
use trijunction_core::simulator::{configuration_ground_space, project_braid, BraidReport, GroundSpace};
use trijunction_core::{braid_unitary, ground_space, prepare_initial, GroundSpaceOptions, LayoutKind, QubitLayout, Sign};

fn site(arm: u8) -> Slot {
    Slot::Site { arm, site: 0 }
}

fn gs(layout: &QubitLayout, a: u8, b: u8) -> GroundSpace {
    let p = TrijunctionParams::with_sites(layout.sites());
    configuration_ground_space(layout, &Configuration::new(a, b).unwrap(), &p).unwrap()
}

/// Reference single-site ground states: `(|vac⟩ + |1₁1₂⟩)/√2` and
/// `(|1₁⟩ + |1₂⟩)/√2`, occupations on the arm-1 and arm-2 qubits.
fn reference_basis(layout: &QubitLayout) -> CMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut g = CMatrix::zeros(layout.dimension(), 2);
    g[(layout.basis_index(&[]).unwrap(), 0)] = h.into();
    g[(layout.basis_index(&[site(1), site(2)]).unwrap(), 0)] = h.into();
    g[(layout.basis_index(&[site(1)]).unwrap(), 1)] = h.into();
    g[(layout.basis_index(&[site(2)]).unwrap(), 1)] = h.into();
    g
}

#[test]
fn single_site_ground_space_is_the_reference_span() {
    let layout = QubitLayout::coupler(1).unwrap();
    let g = gs(&layout, 1, 2);
    let reference = reference_basis(&layout);
    assert!(frobenius(&(g.projector() - &reference * reference.adjoint())) < 1e-10);
    // the parity-diagonal basis reproduces the reference vectors themselves
    assert!(frobenius(&(&g.vectors - &reference)) < 1e-10);
    assert!(g.degeneracy_splitting().abs() < 1e-9);
}

#[test]
fn single_site_initial_state() {
    let layout = QubitLayout::coupler(1).unwrap();
    let psi = prepare_initial(&gs(&layout, 1, 2), Sign::Plus);
    for ones in [vec![], vec![site(1)], vec![site(2)], vec![site(1), site(2)]] {
        let amp = psi.amplitudes()[layout.basis_index(&ones).unwrap()];
        assert!((amp - Complex64::new(0.5, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn single_braid_block_on_four_state_subspace() {
    let layout = QubitLayout::coupler(1).unwrap();
    let basis = [
        layout.basis_index(&[]).unwrap(),
        layout.basis_index(&[site(1)]).unwrap(),
        layout.basis_index(&[site(2)]).unwrap(),
        layout.basis_index(&[site(1), site(2)]).unwrap(),
    ];
    let i = Complex64::new(0.0, 1.0);
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    let single = CMatrix::from_row_slice(4, 4, &[l, o, o, o, o, o, i, o, o, i, o, o, o, o, o, l]);
    let double = CMatrix::from_row_slice(4, 4, &[l, o, o, o, o, -l, o, o, o, o, -l, o, o, o, o, l]);
    for (steps, want) in [(3, single), (6, double)] {
        let u = braid_unitary(&layout, steps).unwrap();
        let block = CMatrix::from_fn(4, 4, |r, c| u[(basis[r], basis[c])]);
        assert!(frobenius(&(block - want)) < 1e-12);
        // the block is closed: nothing leaks out of the subspace
        for &c in &basis {
            let inside: f64 = basis.iter().map(|&r| u[(r, c)].norm_sqr()).sum();
            assert!((inside - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn projected_braid_is_diagonal() {
    let layout = QubitLayout::coupler(1).unwrap();
    let g = gs(&layout, 1, 2);
    let one = project_braid(&braid_unitary(&layout, 3).unwrap(), &g).unwrap();
    let want = CMatrix::from_row_slice(2, 2, &[1.0.into(), 0.0.into(), 0.0.into(), Complex64::new(0.0, 1.0)]);
    assert!(frobenius(&(one.matrix() - want)) < 1e-12);
    let two = project_braid(&braid_unitary(&layout, 6).unwrap(), &g).unwrap();
    let want = CMatrix::from_row_slice(2, 2, &[1.0.into(), 0.0.into(), 0.0.into(), (-1.0).into()]);
    assert!(frobenius(&(two.matrix() - want)) < 1e-12);
}

#[test]
fn every_configuration_is_doubly_degenerate() {
    for kind in LayoutKind::ALL {
        for n in 1..=3 {
            let layout = QubitLayout::new(kind, n).unwrap();
            for (a, b) in [(1, 2), (1, 3), (2, 3)] {
                let g = gs(&layout, a, b);
                assert!(g.degeneracy_splitting().abs() < 1e-9, "{kind} n={n} ({a},{b})");
                assert!(g.excitation_gap().unwrap() > 1.0);
                let iso = g.vectors.adjoint() * &g.vectors;
                assert!(frobenius(&(iso - CMatrix::identity(2, 2))) < 1e-10);
            }
        }
    }
}

#[test]
fn ground_vectors_are_eigenvectors() {
    let layout = QubitLayout::coupler(2).unwrap();
    let h = layout
        .map_hamiltonian(&trijunction_h(&Configuration::new(1, 2).unwrap(), &TrijunctionParams::with_sites(2)).unwrap())
        .unwrap();
    let g = gs(&layout, 1, 2);
    let m = h.to_matrix(14).unwrap();
    for k in 0..2 {
        let v = g.vectors.column(k).into_owned();
        let hv = &m * &v;
        assert!((hv - v * Complex64::new(g.energies[k], 0.0)).norm() < 1e-9);
    }
}

#[test]
fn unfiltered_ground_space_without_parity() {
    let h = trijunction_core::PauliSum::from_terms(2, [(-1.0, "ZI".parse().unwrap())]).unwrap();
    let g = ground_space(&h, &GroundSpaceOptions::default()).unwrap();
    assert_eq!(g.energies, [-1.0, -1.0]);
    let iso = g.vectors.adjoint() * &g.vectors;
    assert!(frobenius(&(iso - CMatrix::identity(2, 2))) < 1e-12);
    for k in 0..2 {
        let first = g.vectors.column(k).iter().copied().find(|a| a.norm() > 1e-8).unwrap();
        assert!(first.im.abs() < 1e-12 && first.re > 0.0);
    }
}

#[test]
fn braid_phase_is_basis_independent() {
    let mut rng = rng(5);
    for n in 1..=2 {
        let layout = QubitLayout::coupler(n).unwrap();
        let g = gs(&layout, 1, 2);
        let u = braid_unitary(&layout, 3).unwrap();
        let base = project_braid(&u, &g).unwrap();
        for _ in 0..5 {
            let v = random_unitary_2x2(&mut rng);
            let rotated = GroundSpace { vectors: &g.vectors * v, ..g.clone() };
            let other: BraidReport = project_braid(&u, &rotated).unwrap();
            assert!((other.delta_phi - base.delta_phi).abs() < 1e-10);
            let mut a = base.eigenphases;
            let mut b = other.eigenphases;
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-10);
            }
        }
    }
}
