//! Pauli algebra and construction of the two-spin XYZ Hamiltonian with
//! antisymmetric (Dzyaloshinsky-Moriya) exchange and an inhomogeneous field:
//!
//! ```text
//! H = sum_i J_i s1_i s2_i + D . (s1 x s2) + (B + b) . s1 + (B - b) . s2
//! ```
//!
//! in the ordered product basis |00>, |01>, |10>, |11> of sigma_z eigenstates
//! with |0> the +1 eigenstate.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{kron, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

/// The standard 2x2 Pauli matrix along `axis`.
pub fn pauli(axis: Axis) -> ComplexMatrix {
    let c = C64::new;
    match axis {
        Axis::X => ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ]),
        Axis::Y => ComplexMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ]),
        Axis::Z => ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.0)],
        ]),
    }
}

/// Couplings, exchange vector, fields, and temperature for one two-spin model.
///
/// Energies are dimensionless with k_B = 1, so temperature carries energy
/// units as well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelConfig {
    /// Exchange couplings (Jx, Jy, Jz).
    pub j: [f64; 3],
    /// Antisymmetric exchange vector D.
    pub d: [f64; 3],
    /// Homogeneous field component B (average of the two site fields).
    pub b_hom: [f64; 3],
    /// Inhomogeneous field component b (half-difference of the site fields).
    pub b_inh: [f64; 3],
    /// Temperature, > 0.
    pub temp: f64,
}

impl ModelConfig {
    pub fn new(
        j: [f64; 3],
        d: [f64; 3],
        b_hom: [f64; 3],
        b_inh: [f64; 3],
        temp: f64,
    ) -> Result<Self> {
        let finite = j
            .iter()
            .chain(&d)
            .chain(&b_hom)
            .chain(&b_inh)
            .all(|x| x.is_finite());
        if !finite || !temp.is_finite() {
            return Err(Error::NonFinite {
                context: "model config",
            });
        }
        if temp <= 0.0 {
            return Err(Error::TemperatureTooLow {
                temp,
                floor: f64::MIN_POSITIVE,
            });
        }
        Ok(Self {
            j,
            d,
            b_hom,
            b_inh,
            temp,
        })
    }
}

/// Named axis layouts: the first axis letter is the direction of D, the
/// second the direction of both field components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    DxBx,
    DzBz,
    DzBx,
    DxBz,
    DxBy,
    Generic,
}

impl ModelKind {
    pub const NAMED: [ModelKind; 5] = [
        ModelKind::DxBx,
        ModelKind::DzBz,
        ModelKind::DzBx,
        ModelKind::DxBz,
        ModelKind::DxBy,
    ];

    pub fn dm_axis(self) -> Option<Axis> {
        match self {
            ModelKind::DxBx | ModelKind::DxBz | ModelKind::DxBy => Some(Axis::X),
            ModelKind::DzBz | ModelKind::DzBx => Some(Axis::Z),
            ModelKind::Generic => None,
        }
    }

    pub fn field_axis(self) -> Option<Axis> {
        match self {
            ModelKind::DxBx | ModelKind::DzBx => Some(Axis::X),
            ModelKind::DzBz | ModelKind::DxBz => Some(Axis::Z),
            ModelKind::DxBy => Some(Axis::Y),
            ModelKind::Generic => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ModelKind::DxBx => "dxbx",
            ModelKind::DzBz => "dzbz",
            ModelKind::DzBx => "dzbx",
            ModelKind::DxBz => "dxbz",
            ModelKind::DxBy => "dxby",
            ModelKind::Generic => "generic",
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dxbx" => Ok(ModelKind::DxBx),
            "dzbz" => Ok(ModelKind::DzBz),
            "dzbx" => Ok(ModelKind::DzBx),
            "dxbz" => Ok(ModelKind::DxBz),
            "dxby" => Ok(ModelKind::DxBy),
            "generic" => Ok(ModelKind::Generic),
            _ => Err(Error::UnknownModel { got: s.to_string() }),
        }
    }
}

/// Maps the named-model scalars onto axis vectors. Rejects `Generic`.
pub fn build_named(
    kind: ModelKind,
    j: [f64; 3],
    dm: f64,
    field: f64,
    field_inh: f64,
    temp: f64,
) -> Result<ModelConfig> {
    let (Some(d_axis), Some(f_axis)) = (kind.dm_axis(), kind.field_axis()) else {
        return Err(Error::GenericNotNamed);
    };
    let mut d = [0.0; 3];
    d[d_axis.index()] = dm;
    let mut b_hom = [0.0; 3];
    b_hom[f_axis.index()] = field;
    let mut b_inh = [0.0; 3];
    b_inh[f_axis.index()] = field_inh;
    ModelConfig::new(j, d, b_hom, b_inh, temp)
}

/// Assembles the 4x4 Hamiltonian. The output is exactly Hermitian: every term
/// is a real multiple of a Hermitian operator and the summation order is
/// conjugation-symmetric.
pub fn build_hamiltonian(cfg: &ModelConfig) -> ComplexMatrix {
    let i2 = ComplexMatrix::identity(2);
    let axes = [Axis::X, Axis::Y, Axis::Z];
    let s1: Vec<ComplexMatrix> = axes.iter().map(|&a| kron(&pauli(a), &i2)).collect();
    let s2: Vec<ComplexMatrix> = axes.iter().map(|&a| kron(&i2, &pauli(a))).collect();

    let mut h = ComplexMatrix::zeros(4);
    for i in 0..3 {
        h = &h + &(&s1[i] * &s2[i]).scale(cfg.j[i]);
    }
    // D . (s1 x s2); component k couples the two cyclic partners of k
    let cross = [(1, 2), (2, 0), (0, 1)];
    for (k, &(i, j)) in cross.iter().enumerate() {
        if cfg.d[k] != 0.0 {
            let term = &(&s1[i] * &s2[j]) - &(&s1[j] * &s2[i]);
            h = &h + &term.scale(cfg.d[k]);
        }
    }
    for i in 0..3 {
        let site1 = cfg.b_hom[i] + cfg.b_inh[i];
        let site2 = cfg.b_hom[i] - cfg.b_inh[i];
        if site1 != 0.0 {
            h = &h + &s1[i].scale(site1);
        }
        if site2 != 0.0 {
            h = &h + &s2[i].scale(site2);
        }
    }
    h
}
