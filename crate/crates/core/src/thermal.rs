//! Gibbs states `rho(T) = exp(-H/T) / Z` with k_B = 1, plus the validated
//! density-matrix type every downstream quantity is computed from.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, ComplexMatrix, SAFE_EXPONENT};

/// Temperatures below this are rejected outright; the exponentials involved
/// leave the comfortable f64 range well before T reaches it for any
/// figure-scale Hamiltonian.
pub const TEMPERATURE_FLOOR: f64 = 1e-3;

const DENSITY_HERMITICITY_TOL: f64 = 1e-12;
const DENSITY_TRACE_TOL: f64 = 1e-10;
const DENSITY_EIGENVALUE_FLOOR: f64 = -1e-10;

/// Hermitian, positive-semidefinite, unit-trace operator.
///
/// Construction checks all three properties (Hermiticity within 1e-12, trace
/// within 1e-10 of one, eigenvalues above -1e-10).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        let defect = mat.hermiticity_defect();
        if defect > DENSITY_HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                asymmetry: defect,
                tol: DENSITY_HERMITICITY_TOL,
            });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > DENSITY_TRACE_TOL || tr.im.abs() > DENSITY_TRACE_TOL {
            return Err(Error::TraceNotOne {
                trace: tr.re,
                tol: DENSITY_TRACE_TOL,
            });
        }
        let eig = hermitian_eig(&mat)?;
        if eig.values[0] < DENSITY_EIGENVALUE_FLOOR {
            return Err(Error::NotPositiveSemidefinite {
                eigenvalue: eig.values[0],
            });
        }
        Ok(Self { mat })
    }

    /// `|psi><psi|` for a (not necessarily normalized) state vector.
    pub fn pure(state: &[C64]) -> Result<Self> {
        let norm_sq: f64 = state.iter().map(|z| z.norm_sqr()).sum();
        if norm_sq <= 0.0 || !norm_sq.is_finite() {
            return Err(Error::NonFinite {
                context: "pure state vector",
            });
        }
        let n = state.len();
        let mut mat = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                mat.set(i, j, state[i] * state[j].conj() / norm_sq);
            }
        }
        Self::new(mat)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            mat: ComplexMatrix::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }
}

/// `exp(-H/T) / Z` via the spectral route, with the spectrum shifted by its
/// minimum before exponentiating so the weights never overflow.
pub fn gibbs_state(h: &ComplexMatrix, temp: f64) -> Result<DensityMatrix> {
    if !temp.is_finite() || temp < TEMPERATURE_FLOOR {
        return Err(Error::TemperatureTooLow {
            temp,
            floor: TEMPERATURE_FLOOR,
        });
    }
    let eig = hermitian_eig(h)?;
    let e0 = eig.values[0];
    let weights: Vec<f64> = eig
        .values
        .iter()
        .map(|&e| (-(e - e0) / temp).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let n = h.dim();
    let mut mat = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..n {
                acc += eig.vectors.at(i, k) * (weights[k] / z) * eig.vectors.at(j, k).conj();
            }
            mat.set(i, j, acc);
        }
    }
    DensityMatrix::new(mat)
}

/// `Z = Tr exp(-H/T) = sum_i exp(-E_i/T)`.
pub fn partition_function(h: &ComplexMatrix, temp: f64) -> Result<f64> {
    if !temp.is_finite() || temp < TEMPERATURE_FLOOR {
        return Err(Error::TemperatureTooLow {
            temp,
            floor: TEMPERATURE_FLOOR,
        });
    }
    let eig = hermitian_eig(h)?;
    let max_exp = eig
        .values
        .iter()
        .map(|&e| -e / temp)
        .fold(f64::NEG_INFINITY, f64::max);
    if max_exp > SAFE_EXPONENT {
        return Err(Error::ExponentOverflow {
            exponent: max_exp,
            limit: SAFE_EXPONENT,
        });
    }
    Ok(eig.values.iter().map(|&e| (-e / temp).exp()).sum())
}
