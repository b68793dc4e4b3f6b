//! Dense complex linear algebra sized for two-qubit operators.
//!
//! Everything here is written for small Hermitian matrices (dim 2 or 4 in
//! practice, any dim in principle): a cyclic Jacobi eigensolver, matrix
//! exponentials along two independent routes, tensor products, and the von
//! Neumann entropy in bits.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::thermal::DensityMatrix;

/// Max allowed `|A - A'|` before an input is rejected as non-Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// Largest exponent fed to `exp` before rejecting; `ln(f64::MAX)` is ~709.78.
pub const SAFE_EXPONENT: f64 = 709.0;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    /// Builds a matrix from explicit rows. Panics if the rows are ragged or
    /// do not form a square matrix.
    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let dim = rows.len();
        assert!(dim > 0, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "rows must form a square matrix");
            data.extend_from_slice(row);
        }
        Self { dim, data }
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &x) in diag.iter().enumerate() {
            m.set(i, i, C64::new(x, 0.0));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.at(j, i).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }

    pub fn scale(&self, f: f64) -> Self {
        let data = self.data.iter().map(|z| z * f).collect();
        Self {
            dim: self.dim,
            data,
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max column sum of absolute values (the induced 1-norm).
    pub fn one_norm(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self.at(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |A_ij - conj(A_ji)|`, zero iff exactly Hermitian.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in 0..self.dim {
                worst = worst.max((self.at(i, j) - self.at(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn hermitian_part(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, (self.at(i, j) + self.at(j, i).conj()) * 0.5);
            }
        }
        out
    }

    fn off_diagonal_frobenius(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i != j {
                    s += self.at(i, j).norm_sqr();
                }
            }
        }
        s.sqrt()
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        ComplexMatrix {
            dim: self.dim,
            data,
        }
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        ComplexMatrix {
            dim: self.dim,
            data,
        }
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.at(i, k);
                if aik == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = out.at(i, j) + aik * rhs.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Tensor product; `kron(a, b)[i*db+k, j*db+l] = a[i,j] * b[k,l]`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim(), b.dim());
    let mut out = ComplexMatrix::zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            let aij = a.at(i, j);
            for k in 0..db {
                for l in 0..db {
                    out.set(i * db + k, j * db + l, aij * b.at(k, l));
                }
            }
        }
    }
    out
}

/// Real eigenvalues in ascending order plus the unitary matrix whose columns
/// are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl EigenSystem {
    /// `V diag(values) V'`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.vectors.dim();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.vectors.at(i, k) * self.values[k] * self.vectors.at(j, k).conj();
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// `V diag(f(values)) V'`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.vectors.dim();
        let mapped: Vec<f64> = self.values.iter().map(|&x| f(x)).collect();
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..n {
                    acc += self.vectors.at(i, k) * mapped[k] * self.vectors.at(j, k).conj();
                }
                out.set(i, j, acc);
            }
        }
        out
    }
}

/// Diagonalizes a Hermitian matrix by cyclic Jacobi rotations.
///
/// Rejects inputs whose Hermiticity defect exceeds [`HERMITICITY_TOL`];
/// iterates on the Hermitian average so every rotation stays exactly unitary.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<EigenSystem> {
    if !a.is_finite() {
        return Err(Error::NonFinite {
            context: "eigensolver input",
        });
    }
    let defect = a.hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            asymmetry: defect,
            tol: HERMITICITY_TOL,
        });
    }
    let n = a.dim();
    let mut m = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let tol = 1e-14 * m.frobenius_norm().max(1.0);

    let mut sweeps = 0;
    while m.off_diagonal_frobenius() > tol {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off: m.off_diagonal_frobenius(),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.at(p, q);
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r; // e^{i arg(apq)}
                let app = m.at(p, p).re;
                let aqq = m.at(q, q).re;
                // zero the (p,q) entry: cot(2 theta) = (app - aqq) / (2 r)
                let kappa = (app - aqq) / (2.0 * r);
                let t = if kappa == 0.0 {
                    1.0
                } else {
                    kappa.signum() / (kappa.abs() + (kappa * kappa + 1.0).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    let mkp = m.at(k, p);
                    let mkq = m.at(k, q);
                    m.set(k, p, c * mkp + s * phase.conj() * mkq);
                    m.set(k, q, -s * phase * mkp + c * mkq);
                }
                for k in 0..n {
                    let mpk = m.at(p, k);
                    let mqk = m.at(q, k);
                    m.set(p, k, c * mpk + s * phase * mqk);
                    m.set(q, k, -s * phase.conj() * mpk + c * mqk);
                }
                for k in 0..n {
                    let vkp = v.at(k, p);
                    let vkq = v.at(k, q);
                    v.set(k, p, c * vkp + s * phase.conj() * vkq);
                    v.set(k, q, -s * phase * vkp + c * vkq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m.at(i, i)
            .re
            .partial_cmp(&m.at(j, j).re)
            .expect("finite eigenvalues")
    });
    let values: Vec<f64> = order.iter().map(|&i| m.at(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, v.at(row, src));
        }
    }
    Ok(EigenSystem { values, vectors })
}

/// `exp(scale * A)` for Hermitian `A`, via the eigendecomposition.
pub fn matrix_exp_hermitian(a: &ComplexMatrix, scale: f64) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a)?;
    let max_exp = eig
        .values
        .iter()
        .map(|&l| scale * l)
        .fold(f64::NEG_INFINITY, f64::max);
    if max_exp > SAFE_EXPONENT {
        return Err(Error::ExponentOverflow {
            exponent: max_exp,
            limit: SAFE_EXPONENT,
        });
    }
    Ok(eig.map_spectrum(|l| (scale * l).exp()))
}

// Diagonal Pade approximant of order 13 (scaling and squaring).
const PADE13_THETA: f64 = 5.371920351148152;
const PADE13_B: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// `exp(A)` for any square matrix by order-13 Pade with scaling and squaring.
///
/// Independent of [`hermitian_eig`]; serves as the cross-check route for the
/// spectral exponential.
pub fn matrix_exp_pade(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_finite() {
        return Err(Error::NonFinite {
            context: "matrix exponential input",
        });
    }
    let n = a.dim();
    let norm = a.one_norm();
    let squarings = if norm > PADE13_THETA {
        (norm / PADE13_THETA).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.scale(0.5f64.powi(squarings as i32));

    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let id = ComplexMatrix::identity(n);

    let b = &PADE13_B;
    let u_inner = &(&a6.scale(b[13]) + &a4.scale(b[11])) + &a2.scale(b[9]);
    let u_poly = &(&(&(&a6 * &u_inner) + &a6.scale(b[7])) + &a4.scale(b[5]))
        + &(&a2.scale(b[3]) + &id.scale(b[1]));
    let u = &scaled * &u_poly;
    let v_inner = &(&a6.scale(b[12]) + &a4.scale(b[10])) + &a2.scale(b[8]);
    let v = &(&(&(&a6 * &v_inner) + &a6.scale(b[6])) + &a4.scale(b[4]))
        + &(&a2.scale(b[2]) + &id.scale(b[0]));

    let mut x = solve(&(&v - &u), &(&v + &u))?;
    for _ in 0..squarings {
        x = &x * &x;
    }
    Ok(x)
}

/// Solves `A X = B` by Gaussian elimination with partial pivoting.
fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.dim();
    assert_eq!(n, b.dim(), "dimension mismatch");
    let mut lhs = a.clone();
    let mut rhs = b.clone();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| {
                lhs.at(i, col)
                    .norm()
                    .partial_cmp(&lhs.at(j, col).norm())
                    .expect("finite pivot")
            })
            .expect("non-empty range");
        let pivot = lhs.at(pivot_row, col);
        if pivot.norm() == 0.0 {
            return Err(Error::SingularSystem);
        }
        if pivot_row != col {
            for j in 0..n {
                let (x, y) = (lhs.at(col, j), lhs.at(pivot_row, j));
                lhs.set(col, j, y);
                lhs.set(pivot_row, j, x);
                let (x, y) = (rhs.at(col, j), rhs.at(pivot_row, j));
                rhs.set(col, j, y);
                rhs.set(pivot_row, j, x);
            }
        }
        for row in (col + 1)..n {
            let factor = lhs.at(row, col) / pivot;
            if factor == C64::new(0.0, 0.0) {
                continue;
            }
            for j in col..n {
                let v = lhs.at(row, j) - factor * lhs.at(col, j);
                lhs.set(row, j, v);
            }
            for j in 0..n {
                let v = rhs.at(row, j) - factor * rhs.at(col, j);
                rhs.set(row, j, v);
            }
        }
    }
    let mut x = ComplexMatrix::zeros(n);
    for j in 0..n {
        for i in (0..n).rev() {
            let mut acc = rhs.at(i, j);
            for k in (i + 1)..n {
                acc -= lhs.at(i, k) * x.at(k, j);
            }
            x.set(i, j, acc / lhs.at(i, i));
        }
    }
    Ok(x)
}

/// Determinant via LU with partial pivoting. Independent of the eigensolver.
pub fn determinant(a: &ComplexMatrix) -> C64 {
    let n = a.dim();
    let mut m = a.clone();
    let mut det = C64::new(1.0, 0.0);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| {
                m.at(i, col)
                    .norm()
                    .partial_cmp(&m.at(j, col).norm())
                    .expect("finite pivot")
            })
            .expect("non-empty range");
        let pivot = m.at(pivot_row, col);
        if pivot.norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if pivot_row != col {
            det = -det;
            for j in 0..n {
                let (x, y) = (m.at(col, j), m.at(pivot_row, j));
                m.set(col, j, y);
                m.set(pivot_row, j, x);
            }
        }
        det *= m.at(col, col);
        for row in (col + 1)..n {
            let factor = m.at(row, col) / m.at(col, col);
            for j in col..n {
                let v = m.at(row, j) - factor * m.at(col, j);
                m.set(row, j, v);
            }
        }
    }
    det
}

/// Von Neumann entropy in bits: `S = -Tr rho log2 rho`.
///
/// Eigenvalues at or below 1e-14 contribute zero; anything below -1e-12 is a
/// positivity violation and rejected. The trace must equal 1 within 1e-8.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    let tr = rho.matrix().trace();
    if (tr.re - 1.0).abs() > 1e-8 || tr.im.abs() > 1e-8 {
        return Err(Error::TraceNotOne {
            trace: tr.re,
            tol: 1e-8,
        });
    }
    let eig = hermitian_eig(rho.matrix())?;
    entropy_from_eigenvalues(&eig.values)
}

pub(crate) fn entropy_from_eigenvalues(values: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &l in values {
        if l < -1e-12 {
            return Err(Error::NotPositiveSemidefinite { eigenvalue: l });
        }
        if l > 1e-14 {
            s -= l * l.log2();
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, c(rng.random_range(-5.0..5.0), 0.0));
            for j in (i + 1)..dim {
                let z = c(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0));
                m.set(i, j, z);
                m.set(j, i, z.conj());
            }
        }
        m
    }

    fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
        hermitian_eig(&random_hermitian(rng, dim)).unwrap().vectors
    }

    /// Characteristic polynomial coefficients by the Faddeev-LeVerrier
    /// recurrence: p(x) = x^n + c[n-1] x^(n-1) + ... + c[0].
    fn char_poly(a: &ComplexMatrix) -> Vec<C64> {
        fn scale_c(m: &ComplexMatrix, z: C64) -> ComplexMatrix {
            let n = m.dim();
            let mut out = ComplexMatrix::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    out.set(i, j, m.at(i, j) * z);
                }
            }
            out
        }
        let n = a.dim();
        let mut coeffs = vec![C64::new(0.0, 0.0); n];
        let mut m = ComplexMatrix::zeros(n);
        let id = ComplexMatrix::identity(n);
        let mut c_prev = C64::new(1.0, 0.0);
        for k in 1..=n {
            m = &(a * &m) + &scale_c(&id, c_prev);
            let am = a * &m;
            let ck = -am.trace() / (k as f64);
            coeffs[n - k] = ck;
            c_prev = ck;
        }
        coeffs
    }

    /// Durand-Kerner root finder for a monic polynomial with the given low
    /// coefficients; all roots of our Hermitian inputs are real.
    fn poly_roots(coeffs: &[C64]) -> Vec<C64> {
        let n = coeffs.len();
        let eval = |x: C64| -> C64 {
            let mut acc = C64::new(1.0, 0.0);
            for k in (0..n).rev() {
                acc = acc * x + coeffs[k];
            }
            acc
        };
        let mut roots: Vec<C64> = (0..n)
            .map(|k| C64::new(0.4, 0.9).powu(k as u32 + 1))
            .collect();
        for _ in 0..200 {
            let mut worst = 0.0f64;
            let old = roots.clone();
            for i in 0..n {
                let mut denom = C64::new(1.0, 0.0);
                for j in 0..n {
                    if j != i {
                        denom *= old[i] - old[j];
                    }
                }
                let delta = eval(old[i]) / denom;
                roots[i] = old[i] - delta;
                worst = worst.max(delta.norm());
            }
            if worst < 1e-13 {
                break;
            }
        }
        roots
    }

    #[test]
    fn identity_has_unit_eigenvalues() {
        let eig = hermitian_eig(&ComplexMatrix::identity(4)).unwrap();
        for v in eig.values {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn pauli_x_eigenvalues() {
        let sx = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ]);
        let eig = hermitian_eig(&sx).unwrap();
        assert!((eig.values[0] + 1.0).abs() < 1e-14);
        assert!((eig.values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn figure_one_hamiltonian_spectrum() {
        // closed-form levels Jx +- w1, -Jx +- w2 for the x-axis model
        let cfg = crate::model::build_named(
            crate::model::ModelKind::DxBx,
            [0.8, 0.5, 0.2],
            1.0,
            3.0,
            1.5,
            1.0,
        )
        .unwrap();
        let h = crate::model::build_hamiltonian(&cfg);
        let w1 = (4.0 * 9.0 + (0.5f64 - 0.2).powi(2)).sqrt();
        let w2 = (4.0 * 1.5f64.powi(2) + 4.0 + (0.5f64 + 0.2).powi(2)).sqrt();
        let mut expected = [0.8 + w1, 0.8 - w1, -0.8 + w2, -0.8 - w2];
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let eig = hermitian_eig(&h).unwrap();
        for (got, want) in eig.values.iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
        // six-figure values for the record
        let rounded: Vec<f64> = eig.values.iter().map(|v| (v * 1e5).round() / 1e5).collect();
        assert_eq!(rounded, vec![-5.20750, -4.47287, 2.87287, 6.80750]);
    }

    #[test]
    fn eigenvalues_match_characteristic_polynomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = random_hermitian(&mut rng, 4);
            let eig = hermitian_eig(&a).unwrap();
            let mut roots: Vec<f64> = poly_roots(&char_poly(&a)).iter().map(|z| z.re).collect();
            roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
            for (got, want) in eig.values.iter().zip(roots.iter()) {
                assert!((got - want).abs() < 1e-8, "{got} vs {want}");
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut a = ComplexMatrix::identity(3);
        a.set(0, 1, c(1e-6, 0.0));
        match hermitian_eig(&a) {
            Err(Error::NotHermitian { asymmetry, .. }) => {
                assert!((asymmetry - 1e-6).abs() < 1e-18);
            }
            other => panic!("expected NotHermitian, got {other:?}"),
        }
    }

    #[test]
    fn eig_roundtrip_and_trace_det_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..1000 {
            let a = random_hermitian(&mut rng, 4);
            let eig = hermitian_eig(&a).unwrap();
            assert!(eig.reconstruct().max_abs_diff(&a) < 1e-10);
            // unitarity
            let vtv = &eig.vectors.adjoint() * &eig.vectors;
            assert!(vtv.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-10);
            // ascending order
            for w in eig.values.windows(2) {
                assert!(w[0] <= w[1]);
            }
            let sum: f64 = eig.values.iter().sum();
            assert!((sum - a.trace().re).abs() < 1e-10);
            let prod: f64 = eig.values.iter().product();
            let det = determinant(&a);
            let scale = det.norm().max(1.0);
            assert!((prod - det.re).abs() / scale < 1e-8);
            assert!(det.im.abs() / scale < 1e-8);
        }
    }

    #[test]
    fn exp_of_zero_is_identity() {
        let z = ComplexMatrix::zeros(4);
        let e = matrix_exp_hermitian(&z, -3.7).unwrap();
        assert!(e.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-14);
        let p = matrix_exp_pade(&z).unwrap();
        assert!(p.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-14);
    }

    #[test]
    fn exp_of_diagonal() {
        let a = ComplexMatrix::from_real_diag(&[0.0, 2.0f64.ln()]);
        let e = matrix_exp_hermitian(&a, -1.0).unwrap();
        assert!((e.at(0, 0).re - 1.0).abs() < 1e-14);
        assert!((e.at(1, 1).re - 0.5).abs() < 1e-14);
        let p = matrix_exp_pade(&ComplexMatrix::from_real_diag(&[1.0, -1.0])).unwrap();
        assert!((p.at(0, 0).re - 1.0f64.exp()).abs() < 1e-13);
        assert!((p.at(1, 1).re - (-1.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn exp_trace_matches_partition_value() {
        let cfg = crate::model::build_named(
            crate::model::ModelKind::DxBx,
            [0.8, 0.5, 0.2],
            1.0,
            3.0,
            1.5,
            1.0,
        )
        .unwrap();
        let h = crate::model::build_hamiltonian(&cfg);
        let e = matrix_exp_hermitian(&h, -1.0).unwrap();
        assert!((e.trace().re - 270.3017879654511).abs() < 1e-9);
    }

    #[test]
    fn exp_overflow_is_rejected() {
        let a = ComplexMatrix::from_real_diag(&[800.0, -800.0]);
        match matrix_exp_hermitian(&a, 1.0) {
            Err(Error::ExponentOverflow { .. }) => {}
            other => panic!("expected overflow, got {other:?}"),
        }
    }

    #[test]
    fn pade_matches_spectral_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = random_hermitian(&mut rng, 4);
            let lhs = matrix_exp_hermitian(&a, 1.0).unwrap();
            let rhs = matrix_exp_pade(&a).unwrap();
            let scale = lhs.max_abs().max(1.0);
            assert!(lhs.max_abs_diff(&rhs) / scale < 1e-10);
        }
    }

    #[test]
    fn entropy_cases() {
        use crate::thermal::DensityMatrix;
        let pure =
            DensityMatrix::new(ComplexMatrix::from_real_diag(&[1.0, 0.0, 0.0, 0.0])).unwrap();
        assert!(von_neumann_entropy(&pure).unwrap().abs() < 1e-14);
        let mixed = DensityMatrix::new(ComplexMatrix::identity(4).scale(0.25)).unwrap();
        assert!((von_neumann_entropy(&mixed).unwrap() - 2.0).abs() < 1e-14);
        let two = DensityMatrix::new(ComplexMatrix::from_real_diag(&[0.75, 0.25])).unwrap();
        assert!((von_neumann_entropy(&two).unwrap() - 0.8112781244591328).abs() < 1e-12);
    }

    #[test]
    fn entropy_unitary_invariance() {
        use crate::thermal::DensityMatrix;
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let rho = crate::selftest::random_density(&mut rng, 4);
            let u = random_unitary(&mut rng, 4);
            let rotated = &(&u * rho.matrix()) * &u.adjoint();
            let rotated = DensityMatrix::new(rotated).unwrap();
            let s0 = von_neumann_entropy(&rho).unwrap();
            let s1 = von_neumann_entropy(&rotated).unwrap();
            assert!((s0 - s1).abs() < 1e-10);
        }
    }

    #[test]
    fn kron_identities() {
        let i2 = ComplexMatrix::identity(2);
        assert!(kron(&i2, &i2).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
        let sz = ComplexMatrix::from_real_diag(&[1.0, -1.0]);
        let k = kron(&sz, &i2);
        assert!(k.max_abs_diff(&ComplexMatrix::from_real_diag(&[1.0, 1.0, -1.0, -1.0])) < 1e-15);
        let sx = ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ]);
        let xx = kron(&sx, &sx);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i + j == 3 { 1.0 } else { 0.0 };
                assert!((xx.at(i, j) - c(want, 0.0)).norm() < 1e-15);
            }
        }
    }
}
