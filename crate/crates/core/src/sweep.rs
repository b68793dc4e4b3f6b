//! Parameter-sweep engine: figure presets, the trend-table checker, and CSV
//! emission.
//!
//! Grid points are independent pure evaluations, so the engine maps over
//! them with rayon when the `parallel` feature is on (the default). Results
//! are gathered by grid index, never by completion order, so output is
//! deterministic either way; [`run_sweep_serial`] is always available for
//! comparison.

use std::io::Write;

use crate::coherence::coherence_report;
use crate::error::{Error, Result};
use crate::model::{build_hamiltonian, build_named, Axis, ModelConfig, ModelKind};
use crate::thermal::{gibbs_state, TEMPERATURE_FLOOR};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default number of grid points per swept axis.
pub const DEFAULT_STEPS: usize = 50;

/// Default axis ranges: temperature in [0.5, 5], every coupling-like
/// parameter in [0, 5].
pub const DEFAULT_TEMP_RANGE: (f64, f64) = (0.5, 5.0);
pub const DEFAULT_PARAM_RANGE: (f64, f64) = (0.0, 5.0);

/// Fixed scalars shared by every figure preset: J = (0.8, 0.5, 0.2), D = 1,
/// B = 3, b = 1.5, T = 0.5.
pub const PRESET_J: [f64; 3] = [0.8, 0.5, 0.2];
pub const PRESET_DM: f64 = 1.0;
pub const PRESET_FIELD: f64 = 3.0;
pub const PRESET_FIELD_INH: f64 = 1.5;
pub const PRESET_TEMP: f64 = 0.5;

/// Curve families: panel (a) sweeps T for each of these DM values, panels
/// (b)-(d) sweep their parameter for each of these temperatures.
pub const PRESET_DM_CURVES: [f64; 4] = [0.0, 1.0, 3.0, 5.0];
pub const PRESET_TEMP_CURVES: [f64; 3] = [0.5, 1.0, 1.5];

/// A sweepable scalar of the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SweepParam {
    Temp,
    Dm,
    Field,
    FieldInh,
    Jx,
    Jy,
    Jz,
}

impl SweepParam {
    pub fn label(self) -> &'static str {
        match self {
            SweepParam::Temp => "T",
            SweepParam::Dm => "D",
            SweepParam::Field => "B",
            SweepParam::FieldInh => "b",
            SweepParam::Jx => "Jx",
            SweepParam::Jy => "Jy",
            SweepParam::Jz => "Jz",
        }
    }

    pub fn default_range(self) -> (f64, f64) {
        match self {
            SweepParam::Temp => DEFAULT_TEMP_RANGE,
            _ => DEFAULT_PARAM_RANGE,
        }
    }
}

impl std::fmt::Display for SweepParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for SweepParam {
    type Err = Error;

    /// `B` and `b` differ only by case and are matched case-sensitively;
    /// the unambiguous aliases `bfield`/`bsmall` are accepted too.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" => return Ok(SweepParam::Field),
            "b" => return Ok(SweepParam::FieldInh),
            _ => {}
        }
        match s.to_ascii_lowercase().as_str() {
            "t" | "temp" => Ok(SweepParam::Temp),
            "d" | "dm" => Ok(SweepParam::Dm),
            "bfield" => Ok(SweepParam::Field),
            "bsmall" => Ok(SweepParam::FieldInh),
            "jx" => Ok(SweepParam::Jx),
            "jy" => Ok(SweepParam::Jy),
            "jz" => Ok(SweepParam::Jz),
            _ => Err(Error::UnknownParam { got: s.to_string() }),
        }
    }
}

/// Grid points along one axis: a uniform range or explicit values.
#[derive(Debug, Clone, PartialEq)]
pub enum AxisPoints {
    Range { lo: f64, hi: f64, steps: usize },
    Values(Vec<f64>),
}

impl AxisPoints {
    pub fn len(&self) -> usize {
        match self {
            AxisPoints::Range { steps, .. } => *steps,
            AxisPoints::Values(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn point(&self, i: usize) -> f64 {
        match self {
            AxisPoints::Range { lo, hi, steps } => lo + (hi - lo) * i as f64 / (steps - 1) as f64,
            AxisPoints::Values(v) => v[i],
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.point(i))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub param: SweepParam,
    pub points: AxisPoints,
}

/// A full scan description: base config plus one or two swept axes.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub kind: ModelKind,
    pub base: ModelConfig,
    pub axis1: SweepAxis,
    pub axis2: Option<SweepAxis>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        for axis in std::iter::once(&self.axis1).chain(self.axis2.as_ref()) {
            match &axis.points {
                AxisPoints::Range { lo, hi, steps } => {
                    if !(lo.is_finite() && hi.is_finite()) {
                        return Err(Error::InvalidSweep {
                            reason: format!("{} range is not finite", axis.param),
                        });
                    }
                    if lo >= hi {
                        return Err(Error::InvalidSweep {
                            reason: format!("{} range needs lo < hi, got [{lo}, {hi}]", axis.param),
                        });
                    }
                    if *steps < 2 {
                        return Err(Error::InvalidSweep {
                            reason: format!("{} axis needs at least 2 steps", axis.param),
                        });
                    }
                }
                AxisPoints::Values(v) => {
                    if v.is_empty() {
                        return Err(Error::InvalidSweep {
                            reason: format!("{} axis has no values", axis.param),
                        });
                    }
                    if v.iter().any(|x| !x.is_finite()) {
                        return Err(Error::InvalidSweep {
                            reason: format!("{} axis has a non-finite value", axis.param),
                        });
                    }
                }
            }
            if axis.param == SweepParam::Temp && axis.points.iter().any(|t| t < TEMPERATURE_FLOOR) {
                return Err(Error::InvalidSweep {
                    reason: format!("temperature axis dips below the floor {TEMPERATURE_FLOOR:e}"),
                });
            }
        }
        if let Some(axis2) = &self.axis2 {
            if axis2.param == self.axis1.param {
                return Err(Error::InvalidSweep {
                    reason: format!("both axes sweep {}", self.axis1.param),
                });
            }
        }
        if self.base.temp < TEMPERATURE_FLOOR {
            return Err(Error::TemperatureTooLow {
                temp: self.base.temp,
                floor: TEMPERATURE_FLOOR,
            });
        }
        Ok(())
    }

    /// Replaces the step count of every uniform-range axis.
    pub fn with_steps(mut self, steps: usize) -> Self {
        for axis in std::iter::once(&mut self.axis1).chain(self.axis2.as_mut()) {
            if let AxisPoints::Range { steps: s, .. } = &mut axis.points {
                *s = steps;
            }
        }
        self
    }

    /// Replaces the first axis range, keeping its step count.
    pub fn with_axis1_range(mut self, lo: f64, hi: f64) -> Self {
        if let AxisPoints::Range { lo: l, hi: h, .. } = &mut self.axis1.points {
            *l = lo;
            *h = hi;
        }
        self
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub axis1: f64,
    pub axis2: Option<f64>,
    pub qjsd: f64,
    pub l1: f64,
    pub rel_entropy: f64,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

/// Overrides one scalar of the config. On named models the DM and field
/// magnitudes are placed along the tag axes; on generic configs they rescale
/// the configured direction.
pub fn apply_param(
    cfg: &mut ModelConfig,
    kind: ModelKind,
    param: SweepParam,
    value: f64,
) -> Result<()> {
    fn rescale(vec: &mut [f64; 3], value: f64, name: &'static str) -> Result<()> {
        let norm = (vec[0] * vec[0] + vec[1] * vec[1] + vec[2] * vec[2]).sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroDirection { param: name });
        }
        for x in vec.iter_mut() {
            *x *= value / norm;
        }
        Ok(())
    }
    fn place(vec: &mut [f64; 3], axis: Axis, value: f64) {
        *vec = [0.0; 3];
        vec[axis.index()] = value;
    }

    match param {
        SweepParam::Temp => cfg.temp = value,
        SweepParam::Jx => cfg.j[0] = value,
        SweepParam::Jy => cfg.j[1] = value,
        SweepParam::Jz => cfg.j[2] = value,
        SweepParam::Dm => match kind.dm_axis() {
            Some(axis) => place(&mut cfg.d, axis, value),
            None => rescale(&mut cfg.d, value, "D")?,
        },
        SweepParam::Field => match kind.field_axis() {
            Some(axis) => place(&mut cfg.b_hom, axis, value),
            None => rescale(&mut cfg.b_hom, value, "B")?,
        },
        SweepParam::FieldInh => match kind.field_axis() {
            Some(axis) => place(&mut cfg.b_inh, axis, value),
            None => rescale(&mut cfg.b_inh, value, "b")?,
        },
    }
    Ok(())
}

fn eval_point(spec: &SweepSpec, a1: f64, a2: Option<f64>) -> Result<SweepRow> {
    let mut cfg = spec.base;
    apply_param(&mut cfg, spec.kind, spec.axis1.param, a1)?;
    if let (Some(axis2), Some(v2)) = (&spec.axis2, a2) {
        apply_param(&mut cfg, spec.kind, axis2.param, v2)?;
    }
    let h = build_hamiltonian(&cfg);
    let rho = gibbs_state(&h, cfg.temp)?;
    let report = coherence_report(&rho)?;
    Ok(SweepRow {
        axis1: a1,
        axis2: a2,
        qjsd: report.qjsd,
        l1: report.l1,
        rel_entropy: report.rel_entropy,
    })
}

fn grid(spec: &SweepSpec) -> Vec<(f64, Option<f64>)> {
    match &spec.axis2 {
        None => spec.axis1.points.iter().map(|a| (a, None)).collect(),
        Some(axis2) => {
            let mut points = Vec::with_capacity(spec.axis1.points.len() * axis2.points.len());
            for a1 in spec.axis1.points.iter() {
                for a2 in axis2.points.iter() {
                    points.push((a1, Some(a2)));
                }
            }
            points
        }
    }
}

/// Runs the sweep, in parallel when the `parallel` feature is enabled.
/// Row order is row-major with axis1 outermost regardless.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let points = grid(spec);
    #[cfg(feature = "parallel")]
    let rows = points
        .par_iter()
        .map(|&(a1, a2)| eval_point(spec, a1, a2))
        .collect::<Result<Vec<_>>>()?;
    #[cfg(not(feature = "parallel"))]
    let rows = points
        .iter()
        .map(|&(a1, a2)| eval_point(spec, a1, a2))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        spec: spec.clone(),
        rows,
    })
}

/// Single-threaded run of the same grid; the baseline for benchmarks and a
/// fallback when the parallel feature is disabled upstream.
pub fn run_sweep_serial(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let rows = grid(spec)
        .iter()
        .map(|&(a1, a2)| eval_point(spec, a1, a2))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        spec: spec.clone(),
        rows,
    })
}

/// The scan behind one figure panel. Ids `1a`..`5d` are single-parameter
/// scans with a curve family on the second axis; `6a`..`6i` are two-parameter
/// scans over Jz and one other parameter at T = 0.5.
pub fn figure_preset(id: &str) -> Result<SweepSpec> {
    let reject = || Error::UnknownPreset {
        got: id.to_string(),
    };
    let mut chars = id.chars();
    let (Some(fig), Some(panel), None) = (chars.next(), chars.next(), chars.next()) else {
        return Err(reject());
    };
    let range_axis = |param: SweepParam| SweepAxis {
        param,
        points: AxisPoints::Range {
            lo: param.default_range().0,
            hi: param.default_range().1,
            steps: DEFAULT_STEPS,
        },
    };

    if fig == '6' {
        let (kind, param2) = match panel {
            'a' => (ModelKind::DxBx, SweepParam::Dm),
            'b' => (ModelKind::DxBx, SweepParam::Field),
            'c' => (ModelKind::DxBx, SweepParam::FieldInh),
            'd' => (ModelKind::DzBz, SweepParam::Dm),
            'e' => (ModelKind::DzBz, SweepParam::Field),
            'f' => (ModelKind::DzBz, SweepParam::FieldInh),
            'g' => (ModelKind::DxBy, SweepParam::Dm),
            'h' => (ModelKind::DxBy, SweepParam::Field),
            'i' => (ModelKind::DxBy, SweepParam::FieldInh),
            _ => return Err(reject()),
        };
        let base = build_named(
            kind,
            PRESET_J,
            PRESET_DM,
            PRESET_FIELD,
            PRESET_FIELD_INH,
            PRESET_TEMP,
        )?;
        return Ok(SweepSpec {
            kind,
            base,
            axis1: range_axis(SweepParam::Jz),
            axis2: Some(range_axis(param2)),
        });
    }

    let kind = match fig {
        '1' => ModelKind::DxBx,
        '2' => ModelKind::DzBz,
        '3' => ModelKind::DzBx,
        '4' => ModelKind::DxBz,
        '5' => ModelKind::DxBy,
        _ => return Err(reject()),
    };
    let base = build_named(
        kind,
        PRESET_J,
        PRESET_DM,
        PRESET_FIELD,
        PRESET_FIELD_INH,
        PRESET_TEMP,
    )?;
    let (axis1, axis2) = match panel {
        'a' => (
            range_axis(SweepParam::Temp),
            SweepAxis {
                param: SweepParam::Dm,
                points: AxisPoints::Values(PRESET_DM_CURVES.to_vec()),
            },
        ),
        'b' | 'c' | 'd' => {
            let param = match panel {
                'b' => SweepParam::Dm,
                'c' => SweepParam::Field,
                _ => SweepParam::FieldInh,
            };
            (
                range_axis(param),
                SweepAxis {
                    param: SweepParam::Temp,
                    points: AxisPoints::Values(PRESET_TEMP_CURVES.to_vec()),
                },
            )
        }
        _ => return Err(reject()),
    };
    Ok(SweepSpec {
        kind,
        base,
        axis1,
        axis2: Some(axis2),
    })
}

/// Formats with the given number of significant digits, plain decimal.
pub fn format_significant(x: f64, sig: u32) -> String {
    if x == 0.0 {
        return format!("{:.*}", sig as usize - 1, 0.0);
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let decimals_for = |mag: i32| (sig as i32 - 1 - mag).max(0) as usize;
    let mag = x.abs().log10().floor() as i32;
    let mut out = format!("{:.*}", decimals_for(mag), x);
    // rounding may push the value into the next decade; reformat once
    let rounded: f64 = out.parse().expect("formatted float parses");
    if rounded != 0.0 {
        let new_mag = rounded.abs().log10().floor() as i32;
        if new_mag != mag {
            out = format!("{:.*}", decimals_for(new_mag), x);
        }
    }
    out
}

fn header_pairs(spec: &SweepSpec) -> Vec<(String, String)> {
    let swept: Vec<SweepParam> = std::iter::once(spec.axis1.param)
        .chain(spec.axis2.as_ref().map(|a| a.param))
        .collect();
    let mut pairs: Vec<(String, String)> = Vec::new();
    let fmt = |x: f64| {
        // shortest round-trip form, locale independent
        format!("{x}")
    };
    let cfg = &spec.base;
    for (param, value) in [
        (SweepParam::Jx, cfg.j[0]),
        (SweepParam::Jy, cfg.j[1]),
        (SweepParam::Jz, cfg.j[2]),
    ] {
        if !swept.contains(&param) {
            pairs.push((param.label().into(), fmt(value)));
        }
    }
    let vector_pairs: [(SweepParam, [f64; 3], Option<Axis>); 3] = [
        (SweepParam::Dm, cfg.d, spec.kind.dm_axis()),
        (SweepParam::Field, cfg.b_hom, spec.kind.field_axis()),
        (SweepParam::FieldInh, cfg.b_inh, spec.kind.field_axis()),
    ];
    for (param, vec, axis) in vector_pairs {
        if swept.contains(&param) {
            continue;
        }
        match axis {
            Some(axis) => pairs.push((param.label().into(), fmt(vec[axis.index()]))),
            None => pairs.push((
                param.label().into(),
                format!("({},{},{})", fmt(vec[0]), fmt(vec[1]), fmt(vec[2])),
            )),
        }
    }
    if !swept.contains(&SweepParam::Temp) {
        pairs.push(("T".into(), fmt(cfg.temp)));
    }
    pairs
}

/// Writes the scan as CSV: one `# model=...` comment line carrying the fixed
/// values, one column-header line, then the data rows with 12 significant
/// digits and LF line endings.
pub fn emit_csv(result: &SweepResult, out: &mut dyn Write) -> std::io::Result<()> {
    let fixed = header_pairs(&result.spec)
        .into_iter()
        .map(|(k, v)| format!(" {k}={v}"))
        .collect::<String>();
    writeln!(out, "# model={}{fixed}", result.spec.kind)?;
    match &result.spec.axis2 {
        Some(axis2) => writeln!(
            out,
            "{},{},qjsd,l1,rel_entropy",
            result.spec.axis1.param, axis2.param
        )?,
        None => writeln!(out, "{},qjsd,l1,rel_entropy", result.spec.axis1.param)?,
    }
    for row in &result.rows {
        let mut cells = vec![format_significant(row.axis1, 12)];
        if let Some(a2) = row.axis2 {
            cells.push(format_significant(a2, 12));
        }
        cells.push(format_significant(row.qjsd, 12));
        cells.push(format_significant(row.l1, 12));
        cells.push(format_significant(row.rel_entropy, 12));
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// trend table
// ---------------------------------------------------------------------------

/// Direction of the net coherence change over a one-parameter scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Increase,
    Decrease,
}

impl Trend {
    pub fn sign(self) -> &'static str {
        match self {
            Trend::Increase => "+",
            Trend::Decrease => "-",
        }
    }
}

/// Scan ranges for the trend checker.
#[derive(Debug, Clone, Copy)]
pub struct TrendRanges {
    pub temp: (f64, f64),
    pub dm: (f64, f64),
    pub field: (f64, f64),
    pub field_inh: (f64, f64),
}

impl Default for TrendRanges {
    fn default() -> Self {
        Self {
            temp: DEFAULT_TEMP_RANGE,
            dm: DEFAULT_PARAM_RANGE,
            field: DEFAULT_PARAM_RANGE,
            field_inh: DEFAULT_PARAM_RANGE,
        }
    }
}

/// One cell of the trend table.
#[derive(Debug, Clone)]
pub struct TrendCell {
    pub model: ModelKind,
    pub param: SweepParam,
    pub expected: Trend,
    pub net: f64,
    pub observed: Option<Trend>,
    /// Depth of the deepest interior extremum beyond the endpoint envelope;
    /// anything above 1e-4 marks the scan as non-monotone (annotated, never
    /// failed on its own).
    pub extremum_depth: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct TrendReport {
    pub cells: Vec<TrendCell>,
}

impl TrendReport {
    pub fn all_pass(&self) -> bool {
        self.cells.iter().all(|c| c.pass)
    }
}

/// Net change below this is classified as flat (neither + nor -).
pub const TREND_NET_THRESHOLD: f64 = 1e-6;
/// Interior extremum depth above this is annotated as non-monotone.
pub const TREND_EXTREMUM_THRESHOLD: f64 = 1e-4;

// Fixed values for the trend scans. The DM and field rows hold T at the
// highest curve-family temperature (the regime in which the expected signs
// are uniform); the temperature row holds D at the strong-exchange curve
// value for the same reason.
const TREND_J: [f64; 3] = [0.8, 0.5, 0.2];
const TREND_FIELD: f64 = 3.0;
const TREND_FIELD_INH: f64 = 1.5;
const TREND_DM: f64 = 1.0;
const TREND_TEMP: f64 = 1.5;
const TREND_DM_FOR_TEMP_ROW: f64 = 3.0;

/// Expected signs, rows T/D/B/b, columns DxBx, DzBz, DzBx, DxBz, DxBy.
pub const EXPECTED_TRENDS: [(SweepParam, [Trend; 5]); 4] = {
    use Trend::{Decrease as N, Increase as P};
    [
        (SweepParam::Temp, [N, N, N, N, N]),
        (SweepParam::Dm, [P, P, P, P, P]),
        (SweepParam::Field, [P, N, P, N, P]),
        (SweepParam::FieldInh, [P, P, P, N, P]),
    ]
};

/// Sweeps every (model, parameter) cell of the trend table and compares the
/// sign of the net change against the expected matrix.
pub fn check_table1(ranges: &TrendRanges, density: usize) -> Result<TrendReport> {
    if density < 2 {
        return Err(Error::InvalidSweep {
            reason: "trend check needs a density of at least 2".into(),
        });
    }
    let mut cells = Vec::with_capacity(20);
    for (param, expected_row) in EXPECTED_TRENDS {
        for (col, &model) in ModelKind::NAMED.iter().enumerate() {
            let dm_fixed = if param == SweepParam::Temp {
                TREND_DM_FOR_TEMP_ROW
            } else {
                TREND_DM
            };
            let base = build_named(
                model,
                TREND_J,
                dm_fixed,
                TREND_FIELD,
                TREND_FIELD_INH,
                TREND_TEMP,
            )?;
            let (lo, hi) = match param {
                SweepParam::Temp => ranges.temp,
                SweepParam::Dm => ranges.dm,
                SweepParam::Field => ranges.field,
                SweepParam::FieldInh => ranges.field_inh,
                _ => unreachable!("trend table only covers T, D, B, b"),
            };
            let spec = SweepSpec {
                kind: model,
                base,
                axis1: SweepAxis {
                    param,
                    points: AxisPoints::Range {
                        lo,
                        hi,
                        steps: density,
                    },
                },
                axis2: None,
            };
            let result = run_sweep(&spec)?;
            let curve: Vec<f64> = result.rows.iter().map(|r| r.qjsd).collect();
            let first = curve[0];
            let last = curve[curve.len() - 1];
            let net = last - first;
            let observed = if net > TREND_NET_THRESHOLD {
                Some(Trend::Increase)
            } else if net < -TREND_NET_THRESHOLD {
                Some(Trend::Decrease)
            } else {
                None
            };
            let interior = &curve[1..curve.len() - 1];
            let hi_int = interior.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let lo_int = interior.iter().cloned().fold(f64::INFINITY, f64::min);
            let extremum_depth = (hi_int - first.max(last))
                .max(first.min(last) - lo_int)
                .max(0.0);
            let expected = expected_row[col];
            cells.push(TrendCell {
                model,
                param,
                expected,
                net,
                observed,
                extremum_depth,
                pass: observed == Some(expected),
            });
        }
    }
    Ok(TrendReport { cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_spec(kind: ModelKind, param: SweepParam, lo: f64, hi: f64, steps: usize) -> SweepSpec {
        SweepSpec {
            kind,
            base: build_named(
                kind,
                PRESET_J,
                PRESET_DM,
                PRESET_FIELD,
                PRESET_FIELD_INH,
                PRESET_TEMP,
            )
            .unwrap(),
            axis1: SweepAxis {
                param,
                points: AxisPoints::Range { lo, hi, steps },
            },
            axis2: None,
        }
    }

    #[test]
    fn temperature_sweep_stays_in_bounds() {
        let spec = base_spec(ModelKind::DxBx, SweepParam::Temp, 0.5, 5.0, 10);
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.rows.len(), 10);
        for row in &result.rows {
            assert!(row.qjsd >= 0.0 && row.qjsd <= 1.0);
        }
    }

    #[test]
    fn hot_sweep_has_no_coherence() {
        let mut spec = base_spec(ModelKind::DzBx, SweepParam::Dm, 0.0, 1e-6, 3);
        spec.base.temp = 1e9;
        for row in run_sweep(&spec).unwrap().rows {
            assert!(row.qjsd < 1e-6 && row.l1 < 1e-6 && row.rel_entropy < 1e-6);
        }
    }

    #[test]
    fn dzbz_coherence_nondecreasing_in_dm() {
        let spec = base_spec(ModelKind::DzBz, SweepParam::Dm, 0.0, 5.0, 50);
        let rows = run_sweep(&spec).unwrap().rows;
        for pair in rows.windows(2) {
            assert!(pair[1].qjsd >= pair[0].qjsd - 1e-9);
        }
    }

    #[test]
    fn serial_and_default_runs_agree_exactly() {
        let spec = figure_preset("2b").unwrap().with_steps(12);
        let a = run_sweep(&spec).unwrap();
        let b = run_sweep_serial(&spec).unwrap();
        assert_eq!(a.rows, b.rows);
    }

    #[test]
    fn cross_measure_consistency() {
        let spec = base_spec(ModelKind::DxBz, SweepParam::Field, 0.0, 5.0, 25);
        for row in run_sweep(&spec).unwrap().rows {
            let zeroish = |x: f64| x < 1e-10;
            assert_eq!(zeroish(row.qjsd), zeroish(row.l1));
            assert_eq!(zeroish(row.qjsd), zeroish(row.rel_entropy));
        }
    }

    #[test]
    fn unknown_param_lists_valid_identifiers() {
        let err = "Q".parse::<SweepParam>().unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("T, D, B, b, Jx, Jy, Jz"), "{msg}");
        assert_eq!("B".parse::<SweepParam>().unwrap(), SweepParam::Field);
        assert_eq!("b".parse::<SweepParam>().unwrap(), SweepParam::FieldInh);
        assert_eq!("jz".parse::<SweepParam>().unwrap(), SweepParam::Jz);
    }

    #[test]
    fn validation_catches_bad_specs() {
        let spec = base_spec(ModelKind::DxBx, SweepParam::Temp, 5.0, 0.5, 10);
        assert!(matches!(run_sweep(&spec), Err(Error::InvalidSweep { .. })));
        let spec = base_spec(ModelKind::DxBx, SweepParam::Temp, 1e-5, 5.0, 10);
        assert!(matches!(run_sweep(&spec), Err(Error::InvalidSweep { .. })));
        let spec = base_spec(ModelKind::DxBx, SweepParam::Dm, 0.0, 5.0, 1);
        assert!(matches!(run_sweep(&spec), Err(Error::InvalidSweep { .. })));
        let mut spec = base_spec(ModelKind::DxBx, SweepParam::Dm, 0.0, 5.0, 5);
        spec.axis2 = Some(SweepAxis {
            param: SweepParam::Dm,
            points: AxisPoints::Range {
                lo: 0.0,
                hi: 1.0,
                steps: 5,
            },
        });
        assert!(matches!(run_sweep(&spec), Err(Error::InvalidSweep { .. })));
    }

    #[test]
    fn generic_zero_direction_is_rejected() {
        let cfg = ModelConfig::new([0.8, 0.5, 0.2], [0.0; 3], [0.0; 3], [0.0; 3], 1.0).unwrap();
        let spec = SweepSpec {
            kind: ModelKind::Generic,
            base: cfg,
            axis1: SweepAxis {
                param: SweepParam::Dm,
                points: AxisPoints::Range {
                    lo: 0.0,
                    hi: 5.0,
                    steps: 4,
                },
            },
            axis2: None,
        };
        assert!(matches!(
            run_sweep(&spec),
            Err(Error::ZeroDirection { param: "D" })
        ));
    }

    #[test]
    fn generic_rescaling_preserves_direction() {
        let mut cfg =
            ModelConfig::new([0.8, 0.5, 0.2], [3.0, 0.0, 4.0], [0.0; 3], [0.0; 3], 1.0).unwrap();
        apply_param(&mut cfg, ModelKind::Generic, SweepParam::Dm, 10.0).unwrap();
        assert!((cfg.d[0] - 6.0).abs() < 1e-12);
        assert!((cfg.d[2] - 8.0).abs() < 1e-12);
    }

    #[test]
    fn figure_presets_carry_stock_values() {
        let spec = figure_preset("1a").unwrap();
        assert_eq!(spec.kind, ModelKind::DxBx);
        assert_eq!(spec.axis1.param, SweepParam::Temp);
        assert_eq!(spec.base.b_hom, [3.0, 0.0, 0.0]);
        assert_eq!(spec.base.b_inh, [1.5, 0.0, 0.0]);
        assert_eq!(spec.base.j, [0.8, 0.5, 0.2]);
        let axis2 = spec.axis2.unwrap();
        assert_eq!(axis2.param, SweepParam::Dm);
        assert_eq!(axis2.points, AxisPoints::Values(vec![0.0, 1.0, 3.0, 5.0]));

        let spec = figure_preset("4c").unwrap();
        assert_eq!(spec.kind, ModelKind::DxBz);
        assert_eq!(spec.axis1.param, SweepParam::Field);
        assert_eq!(spec.base.d, [1.0, 0.0, 0.0]);
        assert_eq!(spec.base.b_inh, [0.0, 0.0, 1.5]);
        assert_eq!(
            spec.axis2.unwrap().points,
            AxisPoints::Values(vec![0.5, 1.0, 1.5])
        );

        let spec = figure_preset("6d").unwrap();
        assert_eq!(spec.kind, ModelKind::DzBz);
        assert_eq!(spec.axis1.param, SweepParam::Jz);
        assert_eq!(spec.axis2.as_ref().unwrap().param, SweepParam::Dm);
        assert_eq!(spec.base.temp, 0.5);
        assert_eq!(spec.base.b_hom, [0.0, 0.0, 3.0]);

        for bad in ["6j", "7a", "1e", "zz", "1", ""] {
            assert!(matches!(
                figure_preset(bad),
                Err(Error::UnknownPreset { .. })
            ));
        }
    }

    #[test]
    fn csv_line_counts_and_order() {
        let spec = base_spec(ModelKind::DxBx, SweepParam::Temp, 0.5, 5.0, 10);
        let result = run_sweep(&spec).unwrap();
        let mut buf = Vec::new();
        emit_csv(&result, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 12);
        assert!(text.starts_with("# model=dxbx "));
        assert!(text.lines().nth(1).unwrap() == "T,qjsd,l1,rel_entropy");
        assert!(text.ends_with('\n') && !text.contains('\r'));

        // 2-D: row-major with axis1 outer
        let mut spec = base_spec(ModelKind::DzBz, SweepParam::Jz, 0.0, 1.0, 5);
        spec.axis2 = Some(SweepAxis {
            param: SweepParam::Dm,
            points: AxisPoints::Range {
                lo: 0.0,
                hi: 1.0,
                steps: 5,
            },
        });
        let result = run_sweep(&spec).unwrap();
        assert_eq!(result.rows.len(), 25);
        let mut buf = Vec::new();
        emit_csv(&result, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 27);
        assert_eq!(text.lines().nth(1).unwrap(), "Jz,D,qjsd,l1,rel_entropy");
        // axis1 advances only after a full axis2 block
        assert_eq!(result.rows[0].axis1, 0.0);
        assert_eq!(result.rows[4].axis1, 0.0);
        assert_eq!(result.rows[4].axis2, Some(1.0));
        assert_eq!(result.rows[5].axis1, 0.25);
        assert_eq!(result.rows[5].axis2, Some(0.0));
    }

    #[test]
    fn csv_is_deterministic() {
        let spec = figure_preset("1a").unwrap().with_steps(20);
        let mut a = Vec::new();
        emit_csv(&run_sweep(&spec).unwrap(), &mut a).unwrap();
        let mut b = Vec::new();
        emit_csv(&run_sweep(&spec).unwrap(), &mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(0.0, 12), "0.00000000000");
        assert_eq!(format_significant(1.0, 12), "1.00000000000");
        assert_eq!(format_significant(0.5579230452841438, 12), "0.557923045284");
        assert_eq!(format_significant(-2.5, 12), "-2.50000000000");
        assert_eq!(format_significant(123456.789, 6), "123457");
        assert_eq!(format_significant(0.99999999999999, 12), "1.00000000000");
        assert_eq!(format_significant(1e-8, 3), "0.0000000100");
    }

    #[test]
    fn trend_table_matches_expected_signs() {
        let report = check_table1(&TrendRanges::default(), 20).unwrap();
        assert_eq!(report.cells.len(), 20);
        for cell in &report.cells {
            assert!(
                cell.pass,
                "{} / {}: net {} expected {}",
                cell.model,
                cell.param,
                cell.net,
                cell.expected.sign()
            );
        }
        assert!(report.all_pass());
    }

    #[test]
    fn thermal_decoherence_at_strong_exchange() {
        // coherence at T = 5 is below coherence at T = 0.5 for every model
        // at the temperature-row fixed values
        for kind in ModelKind::NAMED {
            let base = build_named(
                kind,
                TREND_J,
                TREND_DM_FOR_TEMP_ROW,
                TREND_FIELD,
                TREND_FIELD_INH,
                0.5,
            )
            .unwrap();
            let mut cold_cfg = base;
            cold_cfg.temp = 0.5;
            let cold = coherence_report(&gibbs_state(&build_hamiltonian(&cold_cfg), 0.5).unwrap())
                .unwrap();
            let mut hot_cfg = base;
            hot_cfg.temp = 5.0;
            let hot =
                coherence_report(&gibbs_state(&build_hamiltonian(&hot_cfg), 5.0).unwrap()).unwrap();
            assert!(
                hot.qjsd < cold.qjsd,
                "{kind}: C(5) = {} not below C(0.5) = {}",
                hot.qjsd,
                cold.qjsd
            );
        }
    }
}
