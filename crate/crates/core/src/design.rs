//! Regular, coherent, degree-1 quantum designs with rank-1 projectors:
//! sets of v "equally spaced" pure states in dimension b, with pairwise
//! overlap μ = (v−b)/(b(v−1)).

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermiticity_error, trace_product, CMatrix, CVector};
use crate::tol;

/// A set of pure projectors in dimension `dim` with common pairwise overlap.
#[derive(Debug, Clone)]
pub struct QuantumDesign {
    dim: usize,
    projectors: Vec<CMatrix>,
    overlap: f64,
}

/// Per-property outcome of [`QuantumDesign::verify`].
///
/// Booleans are evaluated at 1e-9; the raw deviations are reported so callers
/// can apply their own tolerance.
#[derive(Debug, Clone)]
pub struct DesignReport {
    /// Every projector is Hermitian, idempotent and has unit trace.
    pub regular_r1: bool,
    /// The projectors sum to (v/b)·identity.
    pub coherent: bool,
    /// All pairwise overlaps tr(P_k P_l), k≠l, agree.
    pub degree1: bool,
    /// The measured overlap matches (v−b)/(b(v−1)).
    pub overlap_formula: bool,
    /// Mean off-diagonal overlap.
    pub measured_overlap: f64,
    pub max_projector_deviation: f64,
    pub max_coherence_deviation: f64,
    pub max_overlap_deviation: f64,
}

impl DesignReport {
    pub fn all_pass(&self) -> bool {
        self.regular_r1 && self.coherent && self.degree1 && self.overlap_formula
    }
}

fn formula_overlap(dim: usize, count: usize) -> f64 {
    if count < 2 {
        0.0
    } else {
        (count - dim) as f64 / (dim * (count - 1)) as f64
    }
}

impl QuantumDesign {
    /// Wrap an arbitrary projector set without validation, so that
    /// [`verify`](Self::verify) can report on inputs of unknown quality.
    /// The named constructors validate and should be preferred.
    pub fn from_projectors(dim: usize, projectors: Vec<CMatrix>) -> Self {
        let overlap = formula_overlap(dim, projectors.len());
        Self {
            dim,
            projectors,
            overlap,
        }
    }

    /// The v = b design made of computational-basis projectors; μ = 0.
    pub fn orthonormal_basis(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let projectors = (0..dim)
            .map(|k| {
                let mut p = CMatrix::zeros(dim, dim);
                p[(k, k)] = Complex64::ONE;
                p
            })
            .collect();
        Self::checked(dim, projectors)
    }

    /// SIC-POVM: v = b² equally spaced states with μ = 1/(b+1).
    ///
    /// Fiducials are hardcoded: the Bloch tetrahedron for b = 2 and the
    /// (0, 1, −1)/√2 orbit under the Weyl-Heisenberg displacements for b = 3.
    /// Both are verified at construction rather than trusted.
    pub fn sic_povm(dim: usize) -> Result<Self> {
        match dim {
            2 => {
                let s = 1.0 / 3f64.sqrt();
                let blochs = [
                    [s, s, s],
                    [s, -s, -s],
                    [-s, s, -s],
                    [-s, -s, s],
                ];
                let projectors = blochs
                    .iter()
                    .map(|&[x, y, z]| {
                        // (1 + n·σ)/2
                        CMatrix::from_row_slice(
                            2,
                            2,
                            &[
                                Complex64::new(0.5 * (1.0 + z), 0.0),
                                Complex64::new(0.5 * x, -0.5 * y),
                                Complex64::new(0.5 * x, 0.5 * y),
                                Complex64::new(0.5 * (1.0 - z), 0.0),
                            ],
                        )
                    })
                    .collect();
                Self::checked(2, projectors)
            }
            3 => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                let fiducial = CVector::from_vec(vec![
                    Complex64::ZERO,
                    Complex64::new(s, 0.0),
                    Complex64::new(-s, 0.0),
                ]);
                let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
                let mut projectors = Vec::with_capacity(9);
                for a in 0..3usize {
                    for b in 0..3usize {
                        // |ψ⟩ = X^a Z^b |f⟩ with X|j⟩ = |j+1 mod 3⟩, Z|j⟩ = ω^j |j⟩
                        let v = CVector::from_fn(3, |j, _| {
                            let src = (j + 3 - a) % 3;
                            fiducial[src] * omega.powu((b * src) as u32)
                        });
                        projectors.push(&v * v.adjoint());
                    }
                }
                Self::checked(3, projectors)
            }
            other => Err(Error::UnsupportedDimension {
                dim: other,
                supported: "2, 3",
            }),
        }
    }

    /// The v = b+1 design of projectors onto the vertices of a regular
    /// simplex in R^b (embedded in C^b); μ = 1/b².
    pub fn simplex(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::OutOfRange(format!(
                "simplex design needs dimension >= 2, got {dim}"
            )));
        }
        let n = dim + 1;
        // Householder reflection sending the all-ones direction to the last axis;
        // the reflected centered vertices then live in the first `dim` coordinates.
        let mut u = DVector::from_element(n, 1.0 / (n as f64).sqrt());
        u[n - 1] -= 1.0;
        let u_norm2 = u.norm_squared();
        let projectors = (0..n)
            .map(|k| {
                let mut w = DVector::from_element(n, -1.0 / n as f64);
                w[k] += 1.0;
                let coef = 2.0 * u.dot(&w) / u_norm2;
                let reflected = &w - &u * coef;
                let mut v = reflected.rows(0, dim).into_owned();
                v /= v.norm();
                let vc = CVector::from_fn(dim, |i, _| Complex64::new(v[i], 0.0));
                &vc * vc.adjoint()
            })
            .collect();
        Self::checked(dim, projectors)
    }

    pub(crate) fn checked(dim: usize, projectors: Vec<CMatrix>) -> Result<Self> {
        let design = Self::from_projectors(dim, projectors);
        let report = design.verify();
        if report.max_projector_deviation > tol::DESIGN_BUILD {
            return Err(Error::DesignVerification(format!(
                "projector deviation {:.3e}",
                report.max_projector_deviation
            )));
        }
        if report.max_coherence_deviation > tol::DESIGN_BUILD {
            return Err(Error::DesignVerification(format!(
                "coherence deviation {:.3e}",
                report.max_coherence_deviation
            )));
        }
        if !report.degree1 || !report.overlap_formula {
            return Err(Error::DesignVerification(format!(
                "overlap deviation {:.3e}",
                report.max_overlap_deviation
            )));
        }
        Ok(design)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of projectors, v.
    pub fn count(&self) -> usize {
        self.projectors.len()
    }

    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }

    pub fn projector(&self, k: usize) -> &CMatrix {
        &self.projectors[k]
    }

    /// Pairwise overlap μ from the design formula.
    pub fn overlap(&self) -> f64 {
        self.overlap
    }

    /// Check the three design properties and the μ formula; never fails,
    /// only reports.
    pub fn verify(&self) -> DesignReport {
        let v = self.projectors.len();
        let b = self.dim;
        let mut max_projector_deviation = 0.0f64;
        for p in &self.projectors {
            let herm = hermiticity_error(p);
            let idem = (p * p - p).iter().map(|z| z.norm()).fold(0.0f64, f64::max);
            let tr = (p.trace() - Complex64::ONE).norm();
            max_projector_deviation = max_projector_deviation.max(herm).max(idem).max(tr);
        }

        let mut sum = CMatrix::zeros(b, b);
        for p in &self.projectors {
            sum += p;
        }
        let target = CMatrix::from_diagonal_element(
            b,
            b,
            Complex64::new(v as f64 / b as f64, 0.0),
        );
        let max_coherence_deviation = (&sum - target)
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max);

        let mut overlaps = Vec::new();
        for k in 0..v {
            for l in (k + 1)..v {
                overlaps.push(trace_product(&self.projectors[k], &self.projectors[l]).re);
            }
        }
        let measured_overlap = if overlaps.is_empty() {
            0.0
        } else {
            overlaps.iter().sum::<f64>() / overlaps.len() as f64
        };
        let max_overlap_deviation = overlaps
            .iter()
            .map(|o| (o - measured_overlap).abs())
            .fold(0.0f64, f64::max);

        DesignReport {
            regular_r1: max_projector_deviation <= tol::DESIGN_REPORT,
            coherent: max_coherence_deviation <= tol::DESIGN_REPORT,
            degree1: max_overlap_deviation <= tol::DESIGN_REPORT,
            overlap_formula: (measured_overlap - formula_overlap(b, v)).abs()
                <= tol::DESIGN_REPORT,
            measured_overlap,
            max_projector_deviation,
            max_coherence_deviation,
            max_overlap_deviation,
        }
    }
}
