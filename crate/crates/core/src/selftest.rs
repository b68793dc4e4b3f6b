//! Oracle-equivalence suites: every closed form is checked against the
//! numeric route it shadows, on seeded random configs and fixed grids.
//! The CLI `selftest` subcommand and the acceptance test target both run
//! these.

use num_complex::Complex64 as C64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analytic::{
    analytic_eigensystem_dxbx, analytic_thermal_dxbx, analytic_thermal_dzbz, closed_form_notes,
    partition_dxbx, partition_dzbz,
};
use crate::coherence::{coherence_qjsd, qjsd_distance};
use crate::linalg::{hermitian_eig, matrix_exp_pade, ComplexMatrix};
use crate::model::{build_hamiltonian, build_named, ModelConfig, ModelKind};
use crate::thermal::{gibbs_state, partition_function, DensityMatrix};

/// Outcome of one suite, with a human-readable measurement.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn from_bound(name: &'static str, worst: f64, tol: f64, context: String) -> Self {
        CheckResult {
            name,
            passed: worst <= tol,
            detail: format!("worst {worst:.3e} (tol {tol:.0e}) {context}"),
        }
    }

    fn failure(name: &'static str, detail: String) -> Self {
        CheckResult {
            name,
            passed: false,
            detail,
        }
    }
}

/// Random named config with couplings and magnitudes uniform in [-5, 5] and
/// temperature uniform in [0.1, 10].
pub fn random_named_config(rng: &mut impl Rng, kind: ModelKind) -> ModelConfig {
    build_named(
        kind,
        [
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
            rng.random_range(-5.0..5.0),
        ],
        rng.random_range(-5.0..5.0),
        rng.random_range(-5.0..5.0),
        rng.random_range(-5.0..5.0),
        rng.random_range(0.1..10.0),
    )
    .expect("random scalars are finite")
}

/// Full-rank random density matrix (normalized Gram matrix).
pub fn random_density(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    let mut g = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        for j in 0..dim {
            g.set(
                i,
                j,
                C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            );
        }
    }
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::new(gg.scale(1.0 / tr)).expect("Gram matrix is a valid state")
}

/// Numeric spectrum vs the closed-form multiset {Jx +- w1, -Jx +- w2} on
/// seeded random x-axis configs. Tolerance 1e-10 absolute.
pub fn spectrum_check(configs: usize) -> CheckResult {
    const NAME: &str = "spectrum oracle (dxbx closed-form levels)";
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = 0.0f64;
    for _ in 0..configs {
        let cfg = random_named_config(&mut rng, ModelKind::DxBx);
        let numeric = match hermitian_eig(&build_hamiltonian(&cfg)) {
            Ok(e) => e,
            Err(e) => return CheckResult::failure(NAME, e.to_string()),
        };
        let analytic = match analytic_eigensystem_dxbx(&cfg) {
            Ok(e) => e,
            Err(e) => return CheckResult::failure(NAME, e.to_string()),
        };
        for (a, b) in numeric.values.iter().zip(analytic.values.iter()) {
            worst = worst.max((a - b).abs());
        }
    }
    CheckResult::from_bound(NAME, worst, 1e-10, format!("over {configs} configs"))
}

/// Closed-form partition functions vs the spectral trace on a 10x10x10 grid
/// of (B, b, T) for both axis-aligned models. Tolerance 1e-10 relative.
pub fn partition_check() -> CheckResult {
    const NAME: &str = "partition-function oracle (10x10x10 grids)";
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for kind in [ModelKind::DxBx, ModelKind::DzBz] {
        for bi in 0..10 {
            for si in 0..10 {
                for ti in 0..10 {
                    let field = 5.0 * bi as f64 / 9.0;
                    let inh = 5.0 * si as f64 / 9.0;
                    let temp = 0.5 + 4.5 * ti as f64 / 9.0;
                    let cfg = match build_named(kind, [0.8, 0.5, 0.2], 1.0, field, inh, temp) {
                        Ok(c) => c,
                        Err(e) => return CheckResult::failure(NAME, e.to_string()),
                    };
                    let closed = match kind {
                        ModelKind::DxBx => partition_dxbx(&cfg),
                        _ => partition_dzbz(&cfg),
                    };
                    let closed = match closed {
                        Ok(z) => z,
                        Err(e) => return CheckResult::failure(NAME, e.to_string()),
                    };
                    let numeric = match partition_function(&build_hamiltonian(&cfg), temp) {
                        Ok(z) => z,
                        Err(e) => return CheckResult::failure(NAME, e.to_string()),
                    };
                    worst = worst.max((closed - numeric).abs() / numeric);
                    count += 1;
                }
            }
        }
    }
    CheckResult::from_bound(NAME, worst, 1e-10, format!("relative, {count} grid points"))
}

/// Spectral-route Gibbs state vs the scaling-and-squaring exponential on
/// seeded random configs across all five named models. Tolerance 1e-10
/// element-wise.
pub fn gibbs_cross_check(configs: usize) -> CheckResult {
    const NAME: &str = "gibbs cross-check (spectral vs pade route)";
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut worst = 0.0f64;
    for i in 0..configs {
        let kind = ModelKind::NAMED[i % 5];
        let cfg = random_named_config(&mut rng, kind);
        let h = build_hamiltonian(&cfg);
        let spectral = match gibbs_state(&h, cfg.temp) {
            Ok(r) => r,
            Err(e) => return CheckResult::failure(NAME, e.to_string()),
        };
        // independent route: exp(-H/T) by Pade, normalized by its trace
        let exponent = h.scale(-1.0 / cfg.temp);
        let exp = match matrix_exp_pade(&exponent) {
            Ok(m) => m,
            Err(e) => return CheckResult::failure(NAME, e.to_string()),
        };
        let z = exp.trace().re;
        worst = worst.max(spectral.matrix().max_abs_diff(&exp.scale(1.0 / z)));
    }
    CheckResult::from_bound(
        NAME,
        worst,
        1e-10,
        format!("element-wise, {configs} configs over 5 models"),
    )
}

/// Closed-form thermal matrices vs the numeric Gibbs state on a 5x5x5 grid
/// of (B, b, T) per model; also asserts the exact X-state zero pattern of
/// the z-axis form. Tolerance 1e-8 element-wise.
pub fn analytic_thermal_check() -> CheckResult {
    const NAME: &str = "analytic thermal matrices (5x5x5 grids + X-state pattern)";
    let mut worst = 0.0f64;
    for kind in [ModelKind::DxBx, ModelKind::DzBz] {
        for bi in 0..5 {
            for si in 0..5 {
                for ti in 0..5 {
                    let field = 5.0 * bi as f64 / 4.0;
                    let inh = 5.0 * si as f64 / 4.0;
                    let temp = 0.5 + 4.5 * ti as f64 / 4.0;
                    let cfg = match build_named(kind, [0.8, 0.5, 0.2], 1.0, field, inh, temp) {
                        Ok(c) => c,
                        Err(e) => return CheckResult::failure(NAME, e.to_string()),
                    };
                    let closed = match kind {
                        ModelKind::DxBx => analytic_thermal_dxbx(&cfg).map(|(rho, _)| rho),
                        _ => analytic_thermal_dzbz(&cfg).map(|(rho, _)| rho),
                    };
                    let closed = match closed {
                        Ok(rho) => rho,
                        Err(e) => return CheckResult::failure(NAME, e.to_string()),
                    };
                    if kind == ModelKind::DzBz {
                        for (i, j) in [(0, 1), (0, 2), (1, 3), (2, 3)] {
                            if closed.matrix().at(i, j) != C64::new(0.0, 0.0)
                                || closed.matrix().at(j, i) != C64::new(0.0, 0.0)
                            {
                                return CheckResult::failure(
                                    NAME,
                                    format!("X-state pattern violated at ({i},{j})"),
                                );
                            }
                        }
                    }
                    let numeric = match gibbs_state(&build_hamiltonian(&cfg), temp) {
                        Ok(r) => r,
                        Err(e) => return CheckResult::failure(NAME, e.to_string()),
                    };
                    worst = worst.max(closed.matrix().max_abs_diff(numeric.matrix()));
                }
            }
        }
    }
    CheckResult::from_bound(NAME, worst, 1e-8, "element-wise, 250 grid points".into())
}

/// Both calibration states sit at the known coherence value and diagonal
/// states sit at zero.
pub fn coherence_calibration_check() -> CheckResult {
    const NAME: &str = "coherence calibration (plus state, Bell state, diagonals)";
    const TARGET: f64 = 0.557923;
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let run = || -> crate::error::Result<(f64, f64, f64)> {
        let plus = DensityMatrix::pure(&[one, one])?;
        let bell = DensityMatrix::pure(&[one, zero, zero, one])?;
        let c_plus = coherence_qjsd(&plus)?;
        let c_bell = coherence_qjsd(&bell)?;
        let mut diag_worst = 0.0f64;
        let mut rng = ChaCha8Rng::seed_from_u64(303);
        for _ in 0..20 {
            let mut d = [0.0; 4];
            let mut total = 0.0;
            for x in d.iter_mut() {
                *x = rng.random_range(0.01..1.0);
                total += *x;
            }
            for x in d.iter_mut() {
                *x /= total;
            }
            let rho = DensityMatrix::new(ComplexMatrix::from_real_diag(&d))?;
            diag_worst = diag_worst.max(coherence_qjsd(&rho)?);
        }
        Ok((c_plus, c_bell, diag_worst))
    };
    match run() {
        Ok((c_plus, c_bell, diag_worst)) => {
            let passed = (c_plus - TARGET).abs() <= 1e-5
                && (c_bell - TARGET).abs() <= 1e-5
                && diag_worst <= 1e-10;
            CheckResult {
                name: NAME,
                passed,
                detail: format!(
                    "plus {c_plus:.6}, Bell {c_bell:.6} (target {TARGET} +- 1e-5), diagonal worst {diag_worst:.1e}"
                ),
            }
        }
        Err(e) => CheckResult::failure(NAME, e.to_string()),
    }
}

/// Triangle inequality of the sqrt-divergence on seeded random state triples,
/// with 1e-12 slack.
pub fn metric_check(triples: usize) -> CheckResult {
    const NAME: &str = "metric property (triangle inequality)";
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..triples {
        let a = random_density(&mut rng, 4);
        let b = random_density(&mut rng, 4);
        let c = random_density(&mut rng, 4);
        let (ab, bc, ac) = match (
            qjsd_distance(&a, &b),
            qjsd_distance(&b, &c),
            qjsd_distance(&a, &c),
        ) {
            (Ok(x), Ok(y), Ok(z)) => (x, y, z),
            _ => return CheckResult::failure(NAME, "distance evaluation failed".into()),
        };
        worst = worst.max(ac - (ab + bc));
    }
    CheckResult {
        name: NAME,
        passed: worst <= 1e-12,
        detail: format!("worst violation {worst:.3e} (slack 1e-12) over {triples} triples"),
    }
}

/// Runs every suite at full size.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        spectrum_check(100),
        partition_check(),
        gibbs_cross_check(500),
        analytic_thermal_check(),
        coherence_calibration_check(),
        metric_check(200),
    ]
}

/// The closed forms the z-axis thermal oracle evaluates, for the report.
pub fn oracle_notes() -> &'static [&'static str] {
    closed_form_notes()
}
