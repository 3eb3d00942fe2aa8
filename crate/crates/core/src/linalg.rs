//! Small dense linear-algebra helpers shared across modules.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

/// Complex square matrix used for operators and states.
pub type CMatrix = DMatrix<Complex64>;
/// Real matrix used for correlation matrices and their derivatives.
pub type RMatrix = DMatrix<f64>;
/// Complex column vector.
pub type CVector = DVector<Complex64>;

/// Maximum entrywise deviation of `m` from its own conjugate transpose.
pub fn hermiticity_error(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}

/// Hermitian part `(m + m†)/2`; used before eigensolving so round-off in the
/// discarded anti-Hermitian part cannot leak into eigenvalues.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let eig = nalgebra::SymmetricEigen::new(hermitian_part(m));
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    vals
}

/// Eigendecomposition of a Hermitian matrix: (eigenvalues, eigenvectors as columns).
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = nalgebra::SymmetricEigen::new(hermitian_part(m));
    (eig.eigenvalues.iter().copied().collect(), eig.eigenvectors)
}

/// Singular values of a real matrix, descending.
pub fn singular_values_desc(m: &RMatrix) -> Vec<f64> {
    let sv = m.clone().singular_values();
    let mut vals: Vec<f64> = sv.iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// Singular values of a complex matrix, descending.
pub fn singular_values_desc_complex(m: &CMatrix) -> Vec<f64> {
    let sv = m.clone().singular_values();
    let mut vals: Vec<f64> = sv.iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// `tr(a b)` without materializing the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    debug_assert_eq!(a.nrows(), b.ncols());
    let mut acc = Complex64::ZERO;
    for r in 0..a.nrows() {
        for c in 0..a.ncols() {
            acc += a[(r, c)] * b[(c, r)];
        }
    }
    acc
}

/// Unit vector drawn from the Haar (rotation-invariant) measure on C^dim.
pub fn haar_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CVector {
    loop {
        let v = CVector::from_fn(dim, |_, _| {
            Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let n = v.norm();
        if n > 1e-12 {
            return v.unscale(n);
        }
    }
}

/// Haar-distributed unitary matrix (QR of a complex Ginibre matrix).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CMatrix {
    let g = CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    g.qr().q()
}

/// Random orthogonal matrix (QR of a real Gaussian matrix).
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> RMatrix {
    let g = RMatrix::from_fn(dim, dim, |_, _| rng.sample(StandardNormal));
    g.qr().q()
}

/// Weights drawn uniformly from the probability simplex
/// (normalized exponential spacings, i.e. a flat Dirichlet).
pub fn random_simplex<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(rand_distr::Exp1)).collect();
    let total: f64 = w.iter().sum();
    for x in &mut w {
        *x /= total;
    }
    w
}

/// Deterministic seed derivation for independent sub-streams (splitmix64 step).
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(stream.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
