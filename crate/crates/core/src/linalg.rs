//! Dense complex helpers shared by the simulator and the test oracles.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = m.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_columns(&order.iter().map(|&i| eig.eigenvectors.column(i)).collect::<Vec<_>>());
    (values, vectors)
}

/// Frobenius norm; an upper bound on the operator norm.
pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// `min_φ ‖a − e^{iφ} b‖_F`, the distance after removing a global phase.
pub fn phase_aligned_distance(a: &CMatrix, b: &CMatrix) -> f64 {
    let overlap: Complex64 = b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { ONE };
    frobenius(&(a - b * phase))
}

/// `‖U†U − I‖_F`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.ncols();
    frobenius(&(u.adjoint() * u - CMatrix::identity(n, n)))
}

/// Matrix exponential `exp(−i t H)` of a Hermitian matrix via its eigenbasis.
pub fn hermitian_propagator(h: &CMatrix, t: f64) -> CMatrix {
    let (values, vectors) = hermitian_eigen(h);
    let phases = CMatrix::from_diagonal(&CVector::from_iterator(
        values.len(),
        values.iter().map(|&e| Complex64::from_polar(1.0, -e * t)),
    ));
    &vectors * phases * vectors.adjoint()
}

/// Eigenvalues of a general 2×2 complex matrix.
pub fn eigenvalues_2x2(m: &CMatrix) -> [Complex64; 2] {
    let (a, b, c, d) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
    let half_trace = (a + d) * 0.5;
    let disc = ((a - d) * 0.5).powu(2) + b * c;
    let root = disc.sqrt();
    [half_trace + root, half_trace - root]
}
