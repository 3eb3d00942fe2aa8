//! Orthonormal bases of the real vector space of d×d Hermitian matrices.
//!
//! Elements are normalized to `tr(E_i E_j) = δ_ij` (no conventional factor
//! of 2), and the scalar element `1/√d` sits at index 0 so correlation
//! matrices built from these bases carry local expectations in their first
//! row and column.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermiticity_error, trace_product, CMatrix};
use crate::tol;

/// An ordered, trace-orthonormal basis of the d×d Hermitian matrices.
#[derive(Debug, Clone)]
pub struct HermitianBasis {
    dim: usize,
    elements: Vec<CMatrix>,
    identity_first: bool,
}

impl HermitianBasis {
    /// Generalized Gell-Mann basis: `1/√d`, the symmetric off-diagonal
    /// generators `(|k⟩⟨l|+|l⟩⟨k|)/√2`, the antisymmetric generators
    /// `i(|l⟩⟨k|-|k⟩⟨l|)/√2` (k<l), then the d−1 traceless diagonal
    /// generators, each with `tr(E²) = 1`.
    ///
    /// For d = 2 this is exactly `{1, σx, σy, σz}/√2`.
    pub fn generalized_gell_mann(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let mut elements = Vec::with_capacity(dim * dim);
        let inv_sqrt_d = 1.0 / (dim as f64).sqrt();
        elements.push(CMatrix::from_diagonal_element(
            dim,
            dim,
            Complex64::new(inv_sqrt_d, 0.0),
        ));
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for k in 0..dim {
            for l in (k + 1)..dim {
                let mut m = CMatrix::zeros(dim, dim);
                m[(k, l)] = Complex64::new(s, 0.0);
                m[(l, k)] = Complex64::new(s, 0.0);
                elements.push(m);
            }
        }
        for k in 0..dim {
            for l in (k + 1)..dim {
                let mut m = CMatrix::zeros(dim, dim);
                m[(k, l)] = Complex64::new(0.0, -s);
                m[(l, k)] = Complex64::new(0.0, s);
                elements.push(m);
            }
        }
        for l in 1..dim {
            let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
            let mut m = CMatrix::zeros(dim, dim);
            for j in 0..l {
                m[(j, j)] = Complex64::new(norm, 0.0);
            }
            m[(l, l)] = Complex64::new(-(l as f64) * norm, 0.0);
            elements.push(m);
        }
        let basis = Self {
            dim,
            elements,
            identity_first: true,
        };
        basis.validate()?;
        Ok(basis)
    }

    /// Subsystem dimension d.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of elements, d².
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &CMatrix {
        &self.elements[i]
    }

    /// Whether element 0 is the scalar matrix `1/√d`. Rotated bases may
    /// lose this convention; operations that rely on it check this flag.
    pub fn identity_first(&self) -> bool {
        self.identity_first
    }

    /// New basis with elements `E_i' = Σ_k R_ik E_k` for an orthogonal `R`.
    /// The Gram matrix is preserved; the identity-first convention survives
    /// only when `R` fixes index 0.
    pub fn rotate(&self, rotation: &DMatrix<f64>) -> Result<Self> {
        let n = self.elements.len();
        if rotation.nrows() != n || rotation.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: rotation.nrows().max(rotation.ncols()),
                context: "basis rotation",
            });
        }
        let dev = (rotation.transpose() * rotation - DMatrix::identity(n, n)).amax();
        if dev > tol::ORTHONORMALITY {
            return Err(Error::NotOrthogonal(dev));
        }
        let elements: Vec<CMatrix> = (0..n)
            .map(|i| {
                let mut acc = CMatrix::zeros(self.dim, self.dim);
                for k in 0..n {
                    let w = rotation[(i, k)];
                    if w != 0.0 {
                        acc += self.elements[k].map(|z| z * w);
                    }
                }
                acc
            })
            .collect();
        let fixes_first = self.identity_first
            && (rotation[(0, 0)] - 1.0).abs() <= tol::ORTHONORMALITY
            && (1..n).all(|k| rotation[(0, k)].abs() <= tol::ORTHONORMALITY);
        let basis = Self {
            dim: self.dim,
            elements,
            identity_first: fixes_first,
        };
        basis.validate()?;
        Ok(basis)
    }

    /// Coordinates of a Hermitian operator in this basis:
    /// `component_i = tr(E_i · op)`.
    pub fn expand(&self, operator: &CMatrix) -> Result<DVector<f64>> {
        if operator.nrows() != self.dim || operator.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: operator.nrows().max(operator.ncols()),
                context: "operator expansion",
            });
        }
        let herm = hermiticity_error(operator);
        if herm > tol::HERMITICITY {
            return Err(Error::NotHermitian(herm));
        }
        Ok(DVector::from_fn(self.elements.len(), |i, _| {
            trace_product(&self.elements[i], operator).re
        }))
    }

    /// Inverse of [`expand`](Self::expand): `Σ_i component_i E_i`.
    pub fn reconstruct(&self, components: &DVector<f64>) -> CMatrix {
        let mut acc = CMatrix::zeros(self.dim, self.dim);
        for (i, e) in self.elements.iter().enumerate() {
            acc += e.map(|z| z * components[i]);
        }
        acc
    }

    fn validate(&self) -> Result<()> {
        let n = self.elements.len();
        if n != self.dim * self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim * self.dim,
                actual: n,
                context: "basis element count",
            });
        }
        for e in &self.elements {
            let h = hermiticity_error(e);
            if h > tol::BASIS_HERMITICITY {
                return Err(Error::NotHermitian(h));
            }
        }
        for i in 0..n {
            for j in i..n {
                let g = trace_product(&self.elements[i], &self.elements[j]);
                let target = if i == j { 1.0 } else { 0.0 };
                let dev = (g.re - target).abs().max(g.im.abs());
                if dev > tol::ORTHONORMALITY {
                    return Err(Error::NotOrthogonal(dev));
                }
            }
        }
        if self.identity_first {
            let scalar = Complex64::new(1.0 / (self.dim as f64).sqrt(), 0.0);
            let expected = CMatrix::from_diagonal_element(self.dim, self.dim, scalar);
            let dev = (&self.elements[0] - expected)
                .iter()
                .map(|z| z.norm())
                .fold(0.0f64, f64::max);
            if dev > tol::BASIS_HERMITICITY {
                return Err(Error::NotIdentityFirst {
                    found: self.elements[0][(0, 0)].re,
                    expected: 1.0 / (self.dim as f64).sqrt(),
                });
            }
            // all non-scalar elements traceless
            for e in &self.elements[1..] {
                if e.trace().norm() > tol::BASIS_HERMITICITY {
                    return Err(Error::InvalidTrace(e.trace().re));
                }
            }
        }
        Ok(())
    }
}
