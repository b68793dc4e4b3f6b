//! Basis-dependent quantum coherence: the square-root quantum
//! Jensen-Shannon divergence between a state and its dephased counterpart
//! (the plotted quantity), with the l1-norm and relative-entropy measures as
//! cross-checks.
//!
//! All entropies are in bits, so the divergence-based coherence is bounded
//! by 1 and the single-qubit maximally mixed state has entropy 1.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{kron, von_neumann_entropy, ComplexMatrix};
use crate::model::Axis;
use crate::thermal::DensityMatrix;

/// Values of [-1e-12, 0) for the divergence radicand are rounding noise and
/// clamped; anything more negative is a hard error.
const RADICAND_TOL: f64 = 1e-12;

/// All three coherence measures of one state, dephased in `basis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceReport {
    pub qjsd: f64,
    pub l1: f64,
    pub rel_entropy: f64,
    pub basis: Axis,
}

/// Zeroes every off-diagonal element; the diagonal is carried over untouched.
pub fn dephase(rho: &DensityMatrix) -> DensityMatrix {
    let n = rho.dim();
    let mut mat = ComplexMatrix::zeros(n);
    for i in 0..n {
        mat.set(i, i, rho.matrix().at(i, i));
    }
    DensityMatrix::new(mat).expect("the dephased state inherits validity")
}

/// Square-root quantum Jensen-Shannon divergence,
/// `D(rho, sigma) = sqrt(S((rho+sigma)/2) - S(rho)/2 - S(sigma)/2)`.
pub fn qjsd_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    let s_rho = von_neumann_entropy(rho)?;
    let s_sigma = von_neumann_entropy(sigma)?;
    qjsd_from_entropies(rho, sigma, s_rho, s_sigma)
}

fn qjsd_from_entropies(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    s_rho: f64,
    s_sigma: f64,
) -> Result<f64> {
    let mix = DensityMatrix::new((rho.matrix() + sigma.matrix()).scale(0.5))?;
    let radicand = von_neumann_entropy(&mix)? - 0.5 * s_rho - 0.5 * s_sigma;
    if radicand < -RADICAND_TOL {
        return Err(Error::NegativeRadicand { value: radicand });
    }
    Ok(radicand.max(0.0).sqrt())
}

/// Coherence as the sqrt-divergence distance to the dephased state.
pub fn coherence_qjsd(rho: &DensityMatrix) -> Result<f64> {
    qjsd_distance(rho, &dephase(rho))
}

/// Sum of the moduli of all off-diagonal elements.
pub fn coherence_l1(rho: &DensityMatrix) -> f64 {
    let n = rho.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += rho.matrix().at(i, j).norm();
            }
        }
    }
    acc
}

/// `S(rho_d) - S(rho)`, clamped at zero against rounding.
pub fn coherence_rel_entropy(rho: &DensityMatrix) -> Result<f64> {
    let s_rho = von_neumann_entropy(rho)?;
    let s_deph = von_neumann_entropy(&dephase(rho))?;
    Ok((s_deph - s_rho).max(0.0))
}

/// All three measures at once, sharing the entropy evaluations.
pub fn coherence_report(rho: &DensityMatrix) -> Result<CoherenceReport> {
    let dephased = dephase(rho);
    let s_rho = von_neumann_entropy(rho)?;
    let s_deph = von_neumann_entropy(&dephased)?;
    let qjsd = qjsd_from_entropies(rho, &dephased, s_rho, s_deph)?;
    Ok(CoherenceReport {
        qjsd,
        l1: coherence_l1(rho),
        rel_entropy: (s_deph - s_rho).max(0.0),
        basis: Axis::Z,
    })
}

/// Rotates a state so that dephasing in the computational basis afterwards
/// is dephasing along `axis`: returns `U rho U'` with `U` the per-qubit map
/// from the axis eigenbasis onto the z basis. Supports any qubit count.
pub fn rotate_to_measurement_basis(rho: &DensityMatrix, axis: Axis) -> Result<DensityMatrix> {
    let single = match axis {
        Axis::Z => ComplexMatrix::identity(2),
        Axis::X => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            ComplexMatrix::from_rows(&[
                vec![C64::new(s, 0.0), C64::new(s, 0.0)],
                vec![C64::new(s, 0.0), C64::new(-s, 0.0)],
            ])
        }
        Axis::Y => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            ComplexMatrix::from_rows(&[
                vec![C64::new(s, 0.0), C64::new(0.0, -s)],
                vec![C64::new(s, 0.0), C64::new(0.0, s)],
            ])
        }
    };
    let mut u = single.clone();
    while u.dim() < rho.dim() {
        u = kron(&u, &single);
    }
    if u.dim() != rho.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: u.dim(),
        });
    }
    DensityMatrix::new(&(&u * rho.matrix()) * &u.adjoint())
}
