//! Command-line front end: figure presets, free-form sweeps, the trend-table
//! checker, and the oracle selftest.
//!
//! Exit codes: 0 success, 1 invalid arguments, 2 numerical failure,
//! 3 trend-check mismatch.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use spincoh::error::{Error, Result};
use spincoh::model::{build_named, ModelConfig, ModelKind};
use spincoh::selftest;
use spincoh::sweep::{
    check_table1, emit_csv, figure_preset, run_sweep, AxisPoints, SweepAxis, SweepParam,
    SweepResult, SweepSpec, TrendRanges, DEFAULT_STEPS,
};

#[derive(Parser)]
#[command(
    name = "spincoh",
    version,
    about = "Thermal coherence scans of two-spin XYZ models with DM exchange in an inhomogeneous field"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a stock figure scan (1a..5d, 6a..6i) and emit CSV
    #[command(allow_negative_numbers = true)]
    Fig {
        /// Preset id, e.g. 1a or 6d
        id: String,
        /// Grid points per uniform axis
        #[arg(long)]
        steps: Option<usize>,
        /// Override the lower end of the swept axis
        #[arg(long)]
        min: Option<f64>,
        /// Override the upper end of the swept axis
        #[arg(long)]
        max: Option<f64>,
        /// Output file (stdout when absent)
        #[arg(long)]
        out: Option<PathBuf>,
        /// key = value file supplying defaults for the flags above
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Sweep one or two parameters of a model and emit CSV
    #[command(allow_negative_numbers = true)]
    Sweep {
        /// dxbx | dzbz | dzbx | dxbz | dxby | generic
        #[arg(long)]
        model: Option<String>,
        /// Swept parameter: T, D, B, b, Jx, Jy, Jz
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        min: Option<f64>,
        #[arg(long)]
        max: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        /// Optional second swept parameter
        #[arg(long)]
        param2: Option<String>,
        #[arg(long)]
        min2: Option<f64>,
        #[arg(long)]
        max2: Option<f64>,
        #[arg(long)]
        steps2: Option<usize>,
        #[arg(long)]
        jx: Option<f64>,
        #[arg(long)]
        jy: Option<f64>,
        #[arg(long)]
        jz: Option<f64>,
        /// DM magnitude (named models)
        #[arg(long)]
        d: Option<f64>,
        /// Homogeneous field magnitude (named models)
        #[arg(long)]
        bfield: Option<f64>,
        /// Inhomogeneous field magnitude (named models)
        #[arg(long)]
        bsmall: Option<f64>,
        #[arg(long)]
        temp: Option<f64>,
        /// DM vector x,y,z (generic model only)
        #[arg(long, allow_hyphen_values = true)]
        dvec: Option<String>,
        /// Homogeneous field vector x,y,z (generic model only)
        #[arg(long, allow_hyphen_values = true)]
        bvec: Option<String>,
        /// Inhomogeneous field vector x,y,z (generic model only)
        #[arg(long, allow_hyphen_values = true)]
        bsvec: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Scan all 20 (model, parameter) trend cells and compare signs
    #[command(name = "check-table1", allow_negative_numbers = true)]
    CheckTable1 {
        /// Grid points per scan
        #[arg(long)]
        density: Option<usize>,
        /// Temperature scan range lo,hi
        #[arg(long, allow_hyphen_values = true)]
        range_t: Option<String>,
        /// DM scan range lo,hi
        #[arg(long, allow_hyphen_values = true)]
        range_d: Option<String>,
        /// Homogeneous-field scan range lo,hi
        #[arg(long, allow_hyphen_values = true)]
        range_b: Option<String>,
        /// Inhomogeneous-field scan range lo,hi
        #[arg(long, allow_hyphen_values = true)]
        range_bsmall: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Run the oracle-equivalence suites and print one line per check
    Selftest,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::UnknownParam { .. }
        | Error::UnknownPreset { .. }
        | Error::UnknownModel { .. }
        | Error::InvalidSweep { .. }
        | Error::GenericNotNamed
        | Error::WrongModel { .. }
        | Error::ZeroDirection { .. }
        | Error::TemperatureTooLow { .. }
        | Error::ConfigFile { .. } => 1,
        _ => 2,
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Fig {
            id,
            steps,
            min,
            max,
            out,
            config,
        } => {
            let file = FileConfig::load(config.as_deref(), &["steps", "min", "max", "out"])?;
            let steps = merge(steps, file.get_usize("steps")?).unwrap_or(DEFAULT_STEPS);
            let min = merge(min, file.get_f64("min")?);
            let max = merge(max, file.get_f64("max")?);
            let out = merge(out, file.get_path("out")?);
            let mut spec = figure_preset(&id)?.with_steps(steps);
            if let (Some(lo), Some(hi)) = (min, max) {
                spec = spec.with_axis1_range(lo, hi);
            } else if min.is_some() || max.is_some() {
                return Err(Error::InvalidSweep {
                    reason: "--min and --max must be given together".into(),
                });
            }
            let result = run_sweep(&spec)?;
            write_result(&result, out.as_deref())?;
            Ok(0)
        }
        Command::Sweep {
            model,
            param,
            min,
            max,
            steps,
            param2,
            min2,
            max2,
            steps2,
            jx,
            jy,
            jz,
            d,
            bfield,
            bsmall,
            temp,
            dvec,
            bvec,
            bsvec,
            out,
            config,
        } => {
            let file = FileConfig::load(
                config.as_deref(),
                &[
                    "model", "param", "min", "max", "steps", "param2", "min2", "max2", "steps2",
                    "jx", "jy", "jz", "d", "bfield", "bsmall", "temp", "dvec", "bvec", "bsvec",
                    "out",
                ],
            )?;
            let model =
                merge(model, file.get_string("model")).ok_or_else(|| Error::UnknownModel {
                    got: "(missing --model)".into(),
                })?;
            let kind: ModelKind = model.parse()?;
            let param =
                merge(param, file.get_string("param")).ok_or_else(|| Error::UnknownParam {
                    got: "(missing --param)".into(),
                })?;
            let param: SweepParam = param.parse()?;

            let jx = merge(jx, file.get_f64("jx")?).unwrap_or(0.8);
            let jy = merge(jy, file.get_f64("jy")?).unwrap_or(0.5);
            let jz = merge(jz, file.get_f64("jz")?).unwrap_or(0.2);
            let d = merge(d, file.get_f64("d")?);
            let bfield = merge(bfield, file.get_f64("bfield")?);
            let bsmall = merge(bsmall, file.get_f64("bsmall")?);
            let temp = merge(temp, file.get_f64("temp")?).unwrap_or(0.5);
            let dvec = merge(dvec, file.get_string("dvec"));
            let bvec = merge(bvec, file.get_string("bvec"));
            let bsvec = merge(bsvec, file.get_string("bsvec"));

            let base = if kind == ModelKind::Generic {
                if d.is_some() || bfield.is_some() || bsmall.is_some() {
                    return Err(Error::InvalidSweep {
                        reason: "--d/--bfield/--bsmall apply to named models; use --dvec/--bvec/--bsvec with --model generic".into(),
                    });
                }
                ModelConfig::new(
                    [jx, jy, jz],
                    parse_vec3(dvec.as_deref().unwrap_or("0,0,0"))?,
                    parse_vec3(bvec.as_deref().unwrap_or("0,0,0"))?,
                    parse_vec3(bsvec.as_deref().unwrap_or("0,0,0"))?,
                    temp,
                )?
            } else {
                if dvec.is_some() || bvec.is_some() || bsvec.is_some() {
                    return Err(Error::InvalidSweep {
                        reason: "--dvec/--bvec/--bsvec apply to --model generic only".into(),
                    });
                }
                build_named(
                    kind,
                    [jx, jy, jz],
                    d.unwrap_or(1.0),
                    bfield.unwrap_or(3.0),
                    bsmall.unwrap_or(1.5),
                    temp,
                )?
            };

            let (def_lo, def_hi) = param.default_range();
            let axis1 = SweepAxis {
                param,
                points: AxisPoints::Range {
                    lo: merge(min, file.get_f64("min")?).unwrap_or(def_lo),
                    hi: merge(max, file.get_f64("max")?).unwrap_or(def_hi),
                    steps: merge(steps, file.get_usize("steps")?).unwrap_or(DEFAULT_STEPS),
                },
            };
            let param2 = merge(param2, file.get_string("param2"));
            let axis2 = match param2 {
                Some(p2) => {
                    let p2: SweepParam = p2.parse()?;
                    let (def_lo2, def_hi2) = p2.default_range();
                    Some(SweepAxis {
                        param: p2,
                        points: AxisPoints::Range {
                            lo: merge(min2, file.get_f64("min2")?).unwrap_or(def_lo2),
                            hi: merge(max2, file.get_f64("max2")?).unwrap_or(def_hi2),
                            steps: merge(steps2, file.get_usize("steps2")?)
                                .unwrap_or(DEFAULT_STEPS),
                        },
                    })
                }
                None => {
                    if min2.is_some() || max2.is_some() || steps2.is_some() {
                        return Err(Error::InvalidSweep {
                            reason: "--min2/--max2/--steps2 need --param2".into(),
                        });
                    }
                    None
                }
            };

            let spec = SweepSpec {
                kind,
                base,
                axis1,
                axis2,
            };
            let result = run_sweep(&spec)?;
            write_result(&result, merge(out, file.get_path("out")?).as_deref())?;
            Ok(0)
        }
        Command::CheckTable1 {
            density,
            range_t,
            range_d,
            range_b,
            range_bsmall,
            config,
        } => {
            let file = FileConfig::load(
                config.as_deref(),
                &["density", "range-t", "range-d", "range-b", "range-bsmall"],
            )?;
            let density = merge(density, file.get_usize("density")?).unwrap_or(50);
            let mut ranges = TrendRanges::default();
            if let Some(r) = merge(range_t, file.get_string("range-t")) {
                ranges.temp = parse_range(&r)?;
            }
            if let Some(r) = merge(range_d, file.get_string("range-d")) {
                ranges.dm = parse_range(&r)?;
            }
            if let Some(r) = merge(range_b, file.get_string("range-b")) {
                ranges.field = parse_range(&r)?;
            }
            if let Some(r) = merge(range_bsmall, file.get_string("range-bsmall")) {
                ranges.field_inh = parse_range(&r)?;
            }
            let report = check_table1(&ranges, density)?;
            let mut failed = 0;
            for cell in &report.cells {
                let observed = cell
                    .observed
                    .map(|t| t.sign().to_string())
                    .unwrap_or_else(|| "0".into());
                let monotone = if cell.extremum_depth > spincoh::sweep::TREND_EXTREMUM_THRESHOLD {
                    format!(
                        "non-monotone (interior extremum {:.2e})",
                        cell.extremum_depth
                    )
                } else {
                    "monotone".into()
                };
                let verdict = if cell.pass { "PASS" } else { "FAIL" };
                if !cell.pass {
                    failed += 1;
                }
                println!(
                    "{verdict} model={} param={} expected={} observed={observed} net={:+.6e} {monotone}",
                    cell.model,
                    cell.param,
                    cell.expected.sign(),
                    cell.net,
                );
            }
            println!(
                "summary: {}/{} cells match",
                report.cells.len() - failed,
                report.cells.len()
            );
            Ok(if failed == 0 { 0 } else { 3 })
        }
        Command::Selftest => {
            let results = selftest::run_all();
            let mut failed = 0;
            for r in &results {
                let verdict = if r.passed { "PASS" } else { "FAIL" };
                if !r.passed {
                    failed += 1;
                }
                println!("{verdict} {} - {}", r.name, r.detail);
            }
            println!("oracle report: z-axis thermal closed forms in use:");
            for note in selftest::oracle_notes() {
                println!("  {note}");
            }
            println!(
                "summary: {}/{} checks passed",
                results.len() - failed,
                results.len()
            );
            Ok(if failed == 0 { 0 } else { 2 })
        }
    }
}

/// CLI flag wins over config-file value.
fn merge<T>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}

fn parse_vec3(s: &str) -> Result<[f64; 3]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::InvalidSweep {
            reason: format!("expected x,y,z vector, got '{s}'"),
        });
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part.parse().map_err(|_| Error::InvalidSweep {
            reason: format!("cannot parse '{part}' as a number"),
        })?;
    }
    Ok(out)
}

fn parse_range(s: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::InvalidSweep {
            reason: format!("expected lo,hi range, got '{s}'"),
        });
    }
    let lo = parts[0].parse().map_err(|_| Error::InvalidSweep {
        reason: format!("cannot parse '{}' as a number", parts[0]),
    })?;
    let hi = parts[1].parse().map_err(|_| Error::InvalidSweep {
        reason: format!("cannot parse '{}' as a number", parts[1]),
    })?;
    Ok((lo, hi))
}

fn write_result(result: &SweepResult, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => {
            let wrap = |source: std::io::Error| Error::Write {
                path: path.display().to_string(),
                source,
            };
            let file = fs::File::create(path).map_err(wrap)?;
            let mut writer = std::io::BufWriter::new(file);
            emit_csv(result, &mut writer).map_err(wrap)?;
            writer.flush().map_err(wrap)?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            let wrap = |source: std::io::Error| Error::Write {
                path: "<stdout>".into(),
                source,
            };
            emit_csv(result, &mut lock).map_err(wrap)?;
            lock.flush().map_err(wrap)?;
        }
    }
    Ok(())
}

/// `key = value` lines; `#` starts a comment; keys mirror the long flags.
struct FileConfig(HashMap<String, String>);

impl FileConfig {
    fn load(path: Option<&Path>, allowed: &[&str]) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self(HashMap::new()));
        };
        let text = fs::read_to_string(path).map_err(|e| Error::ConfigFile {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        let mut map = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::ConfigFile {
                    path: path.display().to_string(),
                    reason: format!("line {}: expected key = value", lineno + 1),
                });
            };
            let key = key.trim().to_string();
            if !allowed.contains(&key.as_str()) {
                return Err(Error::ConfigFile {
                    path: path.display().to_string(),
                    reason: format!(
                        "line {}: unknown key '{key}' (valid: {})",
                        lineno + 1,
                        allowed.join(", ")
                    ),
                });
            }
            map.insert(key, value.trim().to_string());
        }
        Ok(Self(map))
    }

    fn get_string(&self, key: &str) -> Option<String> {
        self.0.get(key).cloned()
    }

    fn get_path(&self, key: &str) -> Result<Option<PathBuf>> {
        Ok(self.0.get(key).map(PathBuf::from))
    }

    fn get_f64(&self, key: &str) -> Result<Option<f64>> {
        self.0
            .get(key)
            .map(|v| {
                v.parse().map_err(|_| Error::ConfigFile {
                    path: String::new(),
                    reason: format!("key '{key}': cannot parse '{v}' as a number"),
                })
            })
            .transpose()
    }

    fn get_usize(&self, key: &str) -> Result<Option<usize>> {
        self.0
            .get(key)
            .map(|v| {
                v.parse().map_err(|_| Error::ConfigFile {
                    path: String::new(),
                    reason: format!("key '{key}': cannot parse '{v}' as an integer"),
                })
            })
            .transpose()
    }
}
