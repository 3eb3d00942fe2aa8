//! The correlation matrix C_ij = ⟨A_i ⊗ B_j⟩ of a state against two
//! Hermitian bases, its SVD (the operator-Schmidt decomposition), the
//! identity-first block structure, and the realignment cross-check.
//!
//! `correlation_matrix` evaluates the defining traces directly against the
//! basis elements, while `realignment_singulars` reshuffles the density
//! matrix without touching any basis; the two routes must agree on singular
//! values and are tested against each other.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::basis::HermitianBasis;
use crate::error::{Error, Result};
use crate::linalg::{singular_values_desc, singular_values_desc_complex, CMatrix, RMatrix};
use crate::state::{DensityMatrix, PureSchmidt};
use crate::tol;

/// Real d_A² × d_B² matrix of expectations ⟨A_i ⊗ B_j⟩.
#[derive(Debug, Clone)]
pub struct CorrelationMatrix {
    dim_a: usize,
    dim_b: usize,
    entries: RMatrix,
}

impl CorrelationMatrix {
    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn entries(&self) -> &RMatrix {
        &self.entries
    }

    /// Singular values, descending — the operator-Schmidt coefficients.
    pub fn singular_values(&self) -> Vec<f64> {
        singular_values_desc(&self.entries)
    }
}

/// Operator-Schmidt decomposition ρ = Σ_k λ_k G_k ⊗ H_k with trace-orthonormal
/// Hermitian operator sets.
#[derive(Debug, Clone)]
pub struct OperatorSchmidt {
    coefficients: Vec<f64>,
    ops_a: Vec<CMatrix>,
    ops_b: Vec<CMatrix>,
}

impl OperatorSchmidt {
    /// Coefficients λ_k, descending.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn ops_a(&self) -> &[CMatrix] {
        &self.ops_a
    }

    pub fn ops_b(&self) -> &[CMatrix] {
        &self.ops_b
    }

    /// Σ_k λ_k G_k ⊗ H_k; equals the source density matrix.
    pub fn reconstruct(&self) -> CMatrix {
        let da = self.ops_a[0].nrows();
        let db = self.ops_b[0].nrows();
        let mut acc = CMatrix::zeros(da * db, da * db);
        for k in 0..self.coefficients.len() {
            let lk = self.coefficients[k];
            if lk != 0.0 {
                acc += self.ops_a[k]
                    .kronecker(&self.ops_b[k])
                    .map(|z| z * lk);
            }
        }
        acc
    }
}

/// Identity-first block split of a correlation matrix:
/// corner 1/√(d_A d_B), local Bloch vectors r and s, traceless block T.
#[derive(Debug, Clone)]
pub struct FnfBlocks {
    pub corner: f64,
    pub r: DVector<f64>,
    pub s: DVector<f64>,
    pub t: RMatrix,
}

impl FnfBlocks {
    /// Rebuilds [[corner, sᵀ], [r, T]]; equals the source entries exactly.
    pub fn reassemble(&self) -> RMatrix {
        let na = self.r.len() + 1;
        let nb = self.s.len() + 1;
        RMatrix::from_fn(na, nb, |i, j| match (i, j) {
            (0, 0) => self.corner,
            (0, j) => self.s[j - 1],
            (i, 0) => self.r[i - 1],
            (i, j) => self.t[(i - 1, j - 1)],
        })
    }

    /// Singular values of the traceless block, descending.
    pub fn t_singular_values(&self) -> Vec<f64> {
        singular_values_desc(&self.t)
    }
}

/// C_ij = tr(ρ · A_i ⊗ B_j), evaluated as the defining trace. Fails if the
/// imaginary residue exceeds 1e-10, which signals malformed inputs.
pub fn correlation_matrix(
    rho: &DensityMatrix,
    basis_a: &HermitianBasis,
    basis_b: &HermitianBasis,
) -> Result<CorrelationMatrix> {
    if basis_a.dim() != rho.dim_a() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim_a(),
            actual: basis_a.dim(),
            context: "basis A",
        });
    }
    if basis_b.dim() != rho.dim_b() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim_b(),
            actual: basis_b.dim(),
            context: "basis B",
        });
    }
    let (da, db) = (rho.dim_a(), rho.dim_b());
    let (na, nb) = (da * da, db * db);
    let m = rho.matrix();
    let mut entries = RMatrix::zeros(na, nb);
    let mut max_imag = 0.0f64;
    for i in 0..na {
        let ai = basis_a.element(i);
        for j in 0..nb {
            let bj = basis_b.element(j);
            // tr(ρ (A⊗B)) = Σ ρ[(a,b),(a',b')] A[a',a] B[b',b]
            let mut acc = Complex64::ZERO;
            for a in 0..da {
                for ap in 0..da {
                    let aval = ai[(ap, a)];
                    if aval == Complex64::ZERO {
                        continue;
                    }
                    let mut inner = Complex64::ZERO;
                    for b in 0..db {
                        for bp in 0..db {
                            inner += m[(a * db + b, ap * db + bp)] * bj[(bp, b)];
                        }
                    }
                    acc += aval * inner;
                }
            }
            max_imag = max_imag.max(acc.im.abs());
            entries[(i, j)] = acc.re;
        }
    }
    if max_imag > tol::CORRELATION_IMAG {
        return Err(Error::NonRealCorrelation(max_imag));
    }
    Ok(CorrelationMatrix {
        dim_a: da,
        dim_b: db,
        entries,
    })
}

/// Operator-Schmidt decomposition via the SVD of the correlation matrix:
/// λ_k are the singular values, G_k = Σ_i U_ik A_i, H_k = Σ_j V_jk B_j.
pub fn operator_schmidt(
    rho: &DensityMatrix,
    basis_a: &HermitianBasis,
    basis_b: &HermitianBasis,
) -> Result<OperatorSchmidt> {
    let c = correlation_matrix(rho, basis_a, basis_b)?;
    let svd = c.entries.clone().svd(true, true);
    let u = svd.u.expect("SVD with u requested");
    let v_t = svd.v_t.expect("SVD with v_t requested");
    let rank = svd.singular_values.len();
    let coefficients: Vec<f64> = svd.singular_values.iter().copied().collect();

    let (da, db) = (rho.dim_a(), rho.dim_b());
    let mut ops_a = Vec::with_capacity(rank);
    let mut ops_b = Vec::with_capacity(rank);
    for k in 0..rank {
        let mut g = CMatrix::zeros(da, da);
        for i in 0..basis_a.len() {
            let w = u[(i, k)];
            if w != 0.0 {
                g += basis_a.element(i).map(|z| z * w);
            }
        }
        ops_a.push(g);
        let mut h = CMatrix::zeros(db, db);
        for j in 0..basis_b.len() {
            let w = v_t[(k, j)];
            if w != 0.0 {
                h += basis_b.element(j).map(|z| z * w);
            }
        }
        ops_b.push(h);
    }
    Ok(OperatorSchmidt {
        coefficients,
        ops_a,
        ops_b,
    })
}

/// The realigned matrix ρ_R with ρ_R[(a a'), (b b')] = ρ[(a b), (a' b')];
/// its singular values are the operator-Schmidt coefficients.
pub fn realign(rho: &DensityMatrix) -> CMatrix {
    let (da, db) = (rho.dim_a(), rho.dim_b());
    let m = rho.matrix();
    CMatrix::from_fn(da * da, db * db, |row, col| {
        let (a, ap) = (row / da, row % da);
        let (b, bp) = (col / db, col % db);
        m[(a * db + b, ap * db + bp)]
    })
}

/// Singular values of the realigned density matrix, descending. Matches the
/// correlation-matrix route without referencing any operator basis.
pub fn realignment_singulars(rho: &DensityMatrix) -> Vec<f64> {
    singular_values_desc_complex(&realign(rho))
}

/// Block split of a correlation matrix built from identity-first bases.
pub fn fnf_blocks(c: &CorrelationMatrix) -> Result<FnfBlocks> {
    let expected = 1.0 / ((c.dim_a * c.dim_b) as f64).sqrt();
    let corner = c.entries[(0, 0)];
    if (corner - expected).abs() > tol::FNF_CORNER {
        return Err(Error::NotIdentityFirst {
            found: corner,
            expected,
        });
    }
    let na = c.entries.nrows();
    let nb = c.entries.ncols();
    let r = DVector::from_fn(na - 1, |i, _| c.entries[(i + 1, 0)]);
    let s = DVector::from_fn(nb - 1, |j, _| c.entries[(0, j + 1)]);
    let t = RMatrix::from_fn(na - 1, nb - 1, |i, j| c.entries[(i + 1, j + 1)]);
    Ok(FnfBlocks { corner, r, s, t })
}

/// Operator-Schmidt coefficients of a pure state directly from its Schmidt
/// coefficients: the multiset {s_k s_l}, descending. Analytic shortcut that
/// bypasses the SVD entirely.
pub fn pure_operator_schmidt(s: &PureSchmidt) -> Vec<f64> {
    let coeffs = s.coefficients();
    let mut products = Vec::with_capacity(coeffs.len() * coeffs.len());
    for &a in coeffs {
        for &b in coeffs {
            products.push(a * b);
        }
    }
    products.sort_by(|a, b| b.total_cmp(a));
    products
}
