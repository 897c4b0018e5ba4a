//! Command-line front end.
//!
//! Exit codes: `0` success, `1` usage or invalid parameters, `2` I/O or
//! parse failure, `3` negative verdict, `4` numeric tolerance breach.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::group::{element_from_chart, ChartPoint, Family, GroupSpec, Sign, DEFAULT_TOL};
use crate::io::{parse_group_spec, read_signal, write_signal, Report, ReportValue};
use crate::linalg::{Mat2, Vec2};
use crate::numerics::{
    analyze, calderon_constant, coorbit_norm, covariance_residual, default_frequency_samples,
    default_wavelet, gen_test_signal, invert, matched_test_signal, norm_ratio_profile, plane_energies, relative_l2_error,
    rotated_packet_family, AxisRange, Complex64, GroupSampling, SamplingPlan, SignalKind, TestSignal,
};
use crate::orbit::{
    canonicalize_with_tol, coorbit_equivalent, orbit_complement, rep_group, symmetry_membership,
    CanonicalForm, LineSet,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_IO: i32 = 2;
pub const EXIT_NEGATIVE: i32 = 3;
pub const EXIT_TOLERANCE: i32 = 4;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "COORBIT2D_THREADS";

#[derive(Debug, Parser)]
#[command(name = "coorbit2d", version, about = "Coorbit equivalence and wavelet analysis for planar dilation groups")]
pub struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Relative tolerance for the algebraic tests.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical form, component count and orbit complement of a group.
    Classify { group: PathBuf },
    /// Coorbit-equivalence verdict for two groups (exit 3 if inequivalent).
    Equiv { group1: PathBuf, group2: PathBuf },
    /// Membership of a matrix in the normalizer, the coorbit symmetry group
    /// and the orbit symmetry group.
    Symmetry {
        group: PathBuf,
        /// Row-major entries `a,b,c,d`.
        #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
        matrix: Mat2,
    },
    /// Wavelet transform summary of a signal file.
    Analyze {
        group: PathBuf,
        signal: PathBuf,
        /// Include the per-plane energy table.
        #[arg(long)]
        energies: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Coorbit L^p norm of a signal file.
    Norm {
        group: PathBuf,
        signal: PathBuf,
        /// Exponent; `inf` for the sup norm.
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Analysis followed by reconstruction; reports the relative L² error.
    Invert {
        group: PathBuf,
        signal: PathBuf,
        /// Exit 4 when the relative error exceeds this.
        #[arg(long, default_value_t = 5e-2)]
        max_error: f64,
        /// Write the reconstructed signal here.
        #[arg(long)]
        reconstruction: Option<PathBuf>,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Calderón constant over the default orbit-interior frequencies.
    Calderon {
        group: PathBuf,
        /// Exit 4 when the relative deviation exceeds this.
        #[arg(long, default_value_t = 1e-2)]
        max_deviation: f64,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Covariance residuals for the identity, a grid translation and a
    /// dilation with translation.
    Covariance {
        group: PathBuf,
        #[arg(long, default_value_t = 32)]
        n: usize,
        #[arg(long, default_value_t = 4.0)]
        extent: f64,
    },
    /// Coorbit norm ratios over rotated wave packets.
    Compare {
        group1: PathBuf,
        group2: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        p: f64,
        /// Packet frequency radii, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,1.5,2,2.5,3")]
        radii: Vec<f64>,
        /// Packets per radius.
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 8.0)]
        extent: f64,
    },
    /// Samples a closed-form test signal and writes it to a file.
    GenSignal {
        /// bump, smooth-bump, packet, psi-atom, random or zero.
        kind: String,
        /// Output signal path (`.csv` for text, binary otherwise).
        path: PathBuf,
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 16.0)]
        extent: f64,
        /// Spectral center `x,y`.
        #[arg(long, value_parser = parse_vec, allow_hyphen_values = true, default_value = "1,0")]
        center: Vec2,
        /// Spectral width.
        #[arg(long, default_value_t = 0.2)]
        sigma: f64,
        #[arg(long, default_value_t = 1.0)]
        amplitude: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Group whose default wavelet gives the `psi-atom` spectrum.
        #[arg(long)]
        group: Option<PathBuf>,
    },
}

/// Overrides of the default chart sampling of a group.
#[derive(Debug, Clone, Args, Default)]
pub struct SamplingArgs {
    /// Log-scale range `lo,hi` (every log-scale axis).
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub log_range: Option<(f64, f64)>,
    /// Cells per log-scale axis.
    #[arg(long)]
    pub log_count: Option<usize>,
    /// Angle cells (similitude).
    #[arg(long)]
    pub angle_count: Option<usize>,
    /// Shear range `lo,hi` (shearlet).
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub shear_range: Option<(f64, f64)>,
    /// Shear cells (shearlet).
    #[arg(long)]
    pub shear_count: Option<usize>,
}

impl SamplingArgs {
    pub fn plan(&self, family: Family) -> SamplingPlan {
        let axis = |a: AxisRange, range: Option<(f64, f64)>, count: Option<usize>| {
            let (lo, hi) = range.unwrap_or((a.lo, a.hi));
            AxisRange::new(lo, hi, count.unwrap_or(a.count))
        };
        match SamplingPlan::default_for(family) {
            SamplingPlan::Similitude { log_scale, angles } => SamplingPlan::Similitude {
                log_scale: axis(log_scale, self.log_range, self.log_count),
                angles: self.angle_count.unwrap_or(angles),
            },
            SamplingPlan::Diagonal { log_scales } => SamplingPlan::Diagonal {
                log_scales: log_scales.map(|a| axis(a, self.log_range, self.log_count)),
            },
            SamplingPlan::Shearlet { log_scale, shear } => SamplingPlan::Shearlet {
                log_scale: axis(log_scale, self.log_range, self.log_count),
                shear: axis(shear, self.shear_range, self.shear_count),
            },
        }
    }

    fn report(&self, plan: &SamplingPlan) -> ReportValue {
        let axis = |a: &AxisRange| ReportValue::map().with("lo", a.lo).with("hi", a.hi).with("count", a.count);
        match plan {
            SamplingPlan::Similitude { log_scale, angles } => ReportValue::map()
                .with("log_scale", axis(log_scale))
                .with("angles", *angles),
            SamplingPlan::Diagonal { log_scales } => ReportValue::map()
                .with("log_scale_1", axis(&log_scales[0]))
                .with("log_scale_2", axis(&log_scales[1])),
            SamplingPlan::Shearlet { log_scale, shear } => ReportValue::map()
                .with("log_scale", axis(log_scale))
                .with("shear", axis(shear)),
        }
    }
}

fn parse_floats(s: &str, count: usize) -> std::result::Result<Vec<f64>, String> {
    let vals: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    if vals.len() != count {
        return Err(format!("expected {count} comma-separated numbers, got {}", vals.len()));
    }
    if vals.iter().any(|v| !v.is_finite()) {
        return Err("values must be finite".into());
    }
    Ok(vals)
}

fn parse_matrix(s: &str) -> std::result::Result<Mat2, String> {
    let v = parse_floats(s, 4)?;
    Ok(Mat2::new(v[0], v[1], v[2], v[3]))
}

fn parse_vec(s: &str) -> std::result::Result<Vec2, String> {
    let v = parse_floats(s, 2)?;
    Ok(Vec2::new(v[0], v[1]))
}

fn parse_range(s: &str) -> std::result::Result<(f64, f64), String> {
    let v = parse_floats(s, 2)?;
    Ok((v[0], v[1]))
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_)
        | Error::Malformed(_)
        | Error::MissingKey(_)
        | Error::BadMagic(_)
        | Error::UnsupportedVersion(_)
        | Error::Truncated { .. }
        | Error::Csv { .. }
        | Error::InvalidSignal(_)
        | Error::DimensionMismatch(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

/// Sizes the global worker pool from [`THREADS_ENV`], if set.
pub fn configure_threads() {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return;
    };
    match v.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
                log::debug!("worker pool already initialized");
            }
        }
        _ => log::warn!("ignoring {THREADS_ENV}={v:?}: expected a positive integer"),
    }
}

/// Parses `args` (including the program name), runs the command and
/// writes the report to `stdout` or `--out`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        let _ = writeln!(stderr, "error: --tol must be positive");
        return EXIT_USAGE;
    }
    let start = Instant::now();
    match dispatch(&cli) {
        Ok((mut report, code)) => {
            report.set_timing_ms(start.elapsed().as_secs_f64() * 1e3);
            let text = report.to_json();
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(Error::from),
                None => stdout.write_all(text.as_bytes()).map_err(Error::from),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_IO;
            }
            if code == EXIT_TOLERANCE {
                let _ = writeln!(stderr, "tolerance exceeded");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Report, i32)> {
    let tol = cli.tol;
    match &cli.command {
        Command::Classify { group } => classify(group, tol),
        Command::Equiv { group1, group2 } => equiv(group1, group2, tol),
        Command::Symmetry { group, matrix } => symmetry(group, *matrix, tol),
        Command::Analyze {
            group,
            signal,
            energies,
            sampling,
        } => analyze_cmd(group, signal, *energies, sampling),
        Command::Norm {
            group,
            signal,
            p,
            sampling,
        } => norm_cmd(group, signal, *p, sampling),
        Command::Invert {
            group,
            signal,
            max_error,
            reconstruction,
            sampling,
        } => invert_cmd(group, signal, *max_error, reconstruction.as_deref(), sampling),
        Command::Calderon {
            group,
            max_deviation,
            sampling,
        } => calderon_cmd(group, *max_deviation, sampling),
        Command::Covariance { group, n, extent } => covariance_cmd(group, *n, *extent),
        Command::Compare {
            group1,
            group2,
            p,
            radii,
            count,
            n,
            extent,
        } => compare_cmd(group1, group2, *p, radii, *count, *n, *extent),
        Command::GenSignal {
            kind,
            path,
            n,
            extent,
            center,
            sigma,
            amplitude,
            seed,
            group,
        } => gen_signal_cmd(
            kind,
            path,
            *n,
            *extent,
            *center,
            *sigma,
            *amplitude,
            *seed,
            group.as_deref(),
        ),
    }
}

fn matrix_value(m: Mat2) -> ReportValue {
    // + 0.0 turns -0.0 into 0.0
    let [[a, b], [c, d]] = m.to_rows().map(|r| r.map(|v| v + 0.0));
    ReportValue::List(vec![vec![a, b].into(), vec![c, d].into()])
}

fn lines_value(lines: &LineSet) -> ReportValue {
    ReportValue::map()
        .with("radians", lines.angles().to_vec())
        .with("degrees", lines.angles().iter().map(|a| a.to_degrees()).collect::<Vec<_>>())
}

fn canonical_value(cf: &CanonicalForm) -> ReportValue {
    let base = ReportValue::map().with("family", cf.name());
    match *cf {
        CanonicalForm::Similitude => base,
        CanonicalForm::Diagonal { phi, s } => base.with("phi", phi).with("s", s),
        CanonicalForm::Shearlet { phi, c } => base.with("phi", phi).with("c", c),
    }
}

fn spec_value(spec: &GroupSpec) -> ReportValue {
    let v = ReportValue::map()
        .with("family", spec.family().name())
        .with("conjugator", matrix_value(spec.conjugator()));
    match spec.family() {
        Family::Shearlet { c } => v.with("c", c),
        _ => v,
    }
}

fn chart_value(p: &ChartPoint) -> ReportValue {
    match *p {
        ChartPoint::Similitude { log_scale, angle } => ReportValue::map()
            .with("log_scale", log_scale)
            .with("angle", angle),
        ChartPoint::Diagonal { log_scales, signs } => ReportValue::map()
            .with("log_scales", log_scales.to_vec())
            .with("signs", signs.iter().map(|s| s.value()).collect::<Vec<_>>()),
        ChartPoint::Shearlet {
            sign,
            log_scale,
            shear,
        } => ReportValue::map()
            .with("sign", sign.value())
            .with("log_scale", log_scale)
            .with("shear", shear),
    }
}

fn path_text(p: &Path) -> String {
    p.display().to_string()
}

fn classify(group: &Path, tol: f64) -> Result<(Report, i32)> {
    let spec = parse_group_spec(group)?;
    let cf = canonicalize_with_tol(&spec, tol);
    let rep = rep_group(&cf)?;
    let mut r = Report::new("classify");
    r.input("group", path_text(group))
        .input("spec", spec_value(&spec))
        .result("canonical", canonical_value(&cf))
        .result("components", spec.component_count())
        .result("complement", lines_value(&orbit_complement(&spec)))
        .result("representative_conjugator", matrix_value(rep.conjugator()))
        .tolerance("relative", tol);
    Ok((r, EXIT_OK))
}

fn equiv(g1: &Path, g2: &Path, tol: f64) -> Result<(Report, i32)> {
    let s1 = parse_group_spec(g1)?;
    let s2 = parse_group_spec(g2)?;
    let v = coorbit_equivalent(&s1, &s2, tol);
    let mut r = Report::new("equiv");
    r.input("group1", path_text(g1))
        .input("group2", path_text(g2))
        .input("spec1", spec_value(&s1))
        .input("spec2", spec_value(&s2))
        .result("equivalent", v.equivalent)
        .result("reason", v.reason.clone())
        .result(
            "components",
            vec![v.component_counts.0, v.component_counts.1],
        )
        .result(
            "complements",
            ReportValue::List(vec![lines_value(&v.complements.0), lines_value(&v.complements.1)]),
        )
        .result(
            "canonicals",
            ReportValue::List(vec![canonical_value(&v.canonicals.0), canonical_value(&v.canonicals.1)]),
        )
        .tolerance("relative", tol);
    Ok((r, if v.equivalent { EXIT_OK } else { EXIT_NEGATIVE }))
}

fn symmetry(group: &Path, a: Mat2, tol: f64) -> Result<(Report, i32)> {
    let spec = parse_group_spec(group)?;
    let m = symmetry_membership(&spec, a, tol)?;
    let mut r = Report::new("symmetry");
    r.input("group", path_text(group))
        .input("spec", spec_value(&spec))
        .input("matrix", matrix_value(a))
        .result("normalizer", m.normalizer)
        .result("coorbit_symmetry", m.coorbit_symmetry)
        .result("orbit_symmetry", m.orbit_symmetry)
        .tolerance("relative", tol);
    Ok((r, EXIT_OK))
}

fn load_numerics(group: &Path, args: &SamplingArgs) -> Result<(GroupSpec, GroupSampling, SamplingPlan)> {
    let spec = parse_group_spec(group)?;
    let plan = args.plan(spec.family());
    let sampling = GroupSampling::uniform(&spec, &plan)?;
    Ok((spec, sampling, plan))
}

fn analyze_cmd(group: &Path, signal: &Path, energies: bool, args: &SamplingArgs) -> Result<(Report, i32)> {
    let (spec, sampling, plan) = load_numerics(group, args)?;
    let f = read_signal(signal)?;
    let psi = default_wavelet(&spec);
    let slab = analyze(&f, &spec, &sampling, &psi)?;
    let e = plane_energies(&slab);
    let mut r = Report::new("analyze");
    r.input("group", path_text(group))
        .input("signal", path_text(signal))
        .input("n", f.n())
        .input("extent", f.extent())
        .input("sampling", args.report(&plan))
        .result("planes", slab.planes().len())
        .result("truncated_planes", slab.truncated_planes())
        .result("max_modulus", slab.max_modulus())
        .result("signal_l2_norm", f.l2_norm())
        .result("norm_l2", coorbit_norm(&slab, 2.0)?);
    if energies {
        let table: Vec<ReportValue> = sampling
            .points()
            .iter()
            .zip(&e)
            .enumerate()
            .map(|(k, (pt, en))| {
                ReportValue::map()
                    .with("index", k)
                    .with("chart", chart_value(&pt.chart))
                    .with("energy", *en)
            })
            .collect();
        r.result("plane_energies", ReportValue::List(table));
    }
    Ok((r, EXIT_OK))
}

fn norm_cmd(group: &Path, signal: &Path, p: f64, args: &SamplingArgs) -> Result<(Report, i32)> {
    let (spec, sampling, plan) = load_numerics(group, args)?;
    let f = read_signal(signal)?;
    let psi = default_wavelet(&spec);
    let slab = analyze(&f, &spec, &sampling, &psi)?;
    let value = coorbit_norm(&slab, p)?;
    let mut r = Report::new("norm");
    r.input("group", path_text(group))
        .input("signal", path_text(signal))
        .input("p", if p.is_infinite() { ReportValue::from("inf") } else { p.into() })
        .input("sampling", args.report(&plan))
        .result("norm", value)
        .result("truncated_planes", slab.truncated_planes());
    Ok((r, EXIT_OK))
}

fn invert_cmd(
    group: &Path,
    signal: &Path,
    max_error: f64,
    out: Option<&Path>,
    args: &SamplingArgs,
) -> Result<(Report, i32)> {
    let (spec, sampling, plan) = load_numerics(group, args)?;
    let f = read_signal(signal)?;
    let psi = default_wavelet(&spec);
    let c = calderon_constant(&spec, &psi, &default_frequency_samples(&spec), &sampling)?;
    let slab = analyze(&f, &spec, &sampling, &psi)?;
    let rec = invert(&slab, &spec, &sampling, &psi, c.mean)?;
    let err = relative_l2_error(&rec, &f)?;
    if let Some(path) = out {
        write_signal(path, &rec)?;
    }
    let mut r = Report::new("invert");
    r.input("group", path_text(group))
        .input("signal", path_text(signal))
        .input("sampling", args.report(&plan))
        .result("calderon_mean", c.mean)
        .result("calderon_deviation", c.max_rel_deviation)
        .result("relative_error", err)
        .result("within_tolerance", err <= max_error)
        .tolerance("max_error", max_error);
    Ok((r, if err <= max_error { EXIT_OK } else { EXIT_TOLERANCE }))
}

fn calderon_cmd(group: &Path, max_dev: f64, args: &SamplingArgs) -> Result<(Report, i32)> {
    let (spec, sampling, plan) = load_numerics(group, args)?;
    let psi = default_wavelet(&spec);
    let xs = default_frequency_samples(&spec);
    let c = calderon_constant(&spec, &psi, &xs, &sampling)?;
    let samples: Vec<ReportValue> = xs
        .iter()
        .zip(&c.values)
        .map(|(x, v)| ReportValue::map().with("xi", vec![x.x, x.y]).with("value", *v))
        .collect();
    let ok = c.max_rel_deviation <= max_dev;
    let mut r = Report::new("calderon");
    r.input("group", path_text(group))
        .input("sampling", args.report(&plan))
        .result("mean", c.mean)
        .result("max_rel_deviation", c.max_rel_deviation)
        .result("samples", ReportValue::List(samples))
        .result("within_tolerance", ok)
        .tolerance("max_deviation", max_dev);
    Ok((r, if ok { EXIT_OK } else { EXIT_TOLERANCE }))
}

/// Chart points used by the covariance battery.
fn covariance_points(family: Family) -> (ChartPoint, ChartPoint) {
    match family {
        Family::Similitude => (
            ChartPoint::Similitude {
                log_scale: 0.3,
                angle: 0.7,
            },
            ChartPoint::Similitude {
                log_scale: -0.2,
                angle: 2.1,
            },
        ),
        Family::Diagonal => (
            ChartPoint::Diagonal {
                log_scales: [0.2, -0.3],
                signs: [Sign::Minus, Sign::Plus],
            },
            ChartPoint::Diagonal {
                log_scales: [-0.1, 0.25],
                signs: [Sign::Plus, Sign::Plus],
            },
        ),
        Family::Shearlet { .. } => (
            ChartPoint::Shearlet {
                sign: Sign::Minus,
                log_scale: 0.3,
                shear: 0.7,
            },
            ChartPoint::Shearlet {
                sign: Sign::Plus,
                log_scale: -0.2,
                shear: 0.1,
            },
        ),
    }
}

fn covariance_cmd(group: &Path, n: usize, extent: f64) -> Result<(Report, i32)> {
    let spec = parse_group_spec(group)?;
    let psi = default_wavelet(&spec);
    let (g, h) = covariance_points(spec.family());
    let g = element_from_chart(&spec, &g)?;
    let dx = extent / n as f64;
    let cases = [
        ("identity", Vec2::ZERO, Mat2::IDENTITY, 0.0),
        ("grid_translation", Vec2::new(3.0 * dx, -2.0 * dx), Mat2::IDENTITY, 1e-10),
        ("dilation", Vec2::new(0.31, -0.17), g, 1e-8),
    ];
    let mut ok = true;
    let mut rows = Vec::new();
    for (name, y, gm, bound) in cases {
        let f = matched_test_signal(&spec, gm, &h)?;
        let res = covariance_residual(&f, y, gm, &h, &spec, &psi, n, extent)?;
        let pass = res <= bound;
        ok &= pass;
        rows.push(
            ReportValue::map()
                .with("case", name)
                .with("translation", vec![y.x, y.y])
                .with("dilation", matrix_value(gm))
                .with("residual", res)
                .with("bound", bound)
                .with("pass", pass),
        );
    }
    let mut r = Report::new("covariance");
    r.input("group", path_text(group))
        .input("n", n)
        .input("extent", extent)
        .input("chart_point", chart_value(&h))
        .result("cases", ReportValue::List(rows))
        .result("within_tolerance", ok)
        .tolerance("identity", 0.0)
        .tolerance("grid_translation", 1e-10)
        .tolerance("dilation", 1e-8);
    Ok((r, if ok { EXIT_OK } else { EXIT_TOLERANCE }))
}

#[allow(clippy::too_many_arguments)]
fn compare_cmd(
    g1: &Path,
    g2: &Path,
    p: f64,
    radii: &[f64],
    count: usize,
    n: usize,
    extent: f64,
) -> Result<(Report, i32)> {
    let s1 = parse_group_spec(g1)?;
    let s2 = parse_group_spec(g2)?;
    if count == 0 || radii.is_empty() {
        return Err(Error::OutOfRange("empty test family".into()));
    }
    let samp1 = GroupSampling::default_for(&s1);
    let samp2 = GroupSampling::default_for(&s2);
    let psi1 = default_wavelet(&s1);
    let psi2 = default_wavelet(&s2);
    let mut levels = Vec::new();
    for &radius in radii {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::OutOfRange(format!("packet radius {radius}")));
        }
        let family = rotated_packet_family(radius, count, 0.25, 0.12);
        let prof = norm_ratio_profile(&s1, &s2, p, &family, (&samp1, &samp2), (&psi1, &psi2), n, extent)?;
        let rows: Vec<ReportValue> = prof
            .rows
            .iter()
            .map(|row| {
                ReportValue::map()
                    .with("label", row.label.clone())
                    .with("norm1", row.norm1)
                    .with("norm2", row.norm2)
                    .with("ratio", row.ratio)
                    .with("degenerate", row.degenerate)
            })
            .collect();
        levels.push(
            ReportValue::map()
                .with("radius", radius)
                .with("rows", ReportValue::List(rows))
                .with("min", prof.min)
                .with("max", prof.max)
                .with("spread", prof.spread),
        );
    }
    let mut r = Report::new("compare");
    r.input("group1", path_text(g1))
        .input("group2", path_text(g2))
        .input("p", p)
        .input("n", n)
        .input("extent", extent)
        .input("count", count)
        .result("levels", ReportValue::List(levels));
    Ok((r, EXIT_OK))
}

#[allow(clippy::too_many_arguments)]
fn gen_signal_cmd(
    kind: &str,
    path: &Path,
    n: usize,
    extent: f64,
    center: Vec2,
    sigma: f64,
    amplitude: f64,
    seed: u64,
    group: Option<&Path>,
) -> Result<(Report, i32)> {
    let kind = SignalKind::parse(kind).ok_or_else(|| Error::OutOfRange(format!("unknown signal kind `{kind}`")))?;
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::OutOfRange(format!("sigma {sigma}")));
    }
    if !amplitude.is_finite() {
        return Err(Error::OutOfRange(format!("amplitude {amplitude}")));
    }
    let amp = Complex64::new(amplitude, 0.0);
    let signal = match kind {
        SignalKind::Bump => TestSignal::gaussian(center, sigma).with_amplitude(amp),
        SignalKind::SmoothBump => TestSignal::SmoothBump {
            center,
            radius: sigma,
            amplitude: amp,
            offset: Vec2::ZERO,
        },
        SignalKind::Packet => TestSignal::packet(center, sigma, 0.3 * sigma).with_amplitude(amp),
        SignalKind::PsiAtom => {
            let spec = match group {
                Some(p) => parse_group_spec(p)?,
                None => GroupSpec::similitude(),
            };
            TestSignal::psi_atom(default_wavelet(&spec)).with_amplitude(amp)
        }
        SignalKind::Random => TestSignal::random_mixture(seed, 8, 0.7, 1.4, sigma).with_amplitude(amp),
        SignalKind::Zero => TestSignal::Zero,
    };
    let (f, leak) = gen_test_signal(&signal, n, extent)?;
    write_signal(path, &f)?;
    let mut r = Report::new("gen-signal");
    r.input("path", path_text(path))
        .input("n", n)
        .input("extent", extent)
        .input("center", vec![center.x, center.y])
        .input("sigma", sigma)
        .input("amplitude", amplitude)
        .input("seed", seed as i64)
        .result("l2_norm", f.l2_norm())
        .result("closed_form_l2_norm", signal.spectral_energy().map(f64::sqrt))
        .result("nyquist_leak", leak);
    Ok((r, EXIT_OK))
}
