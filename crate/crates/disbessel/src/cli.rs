//! Command-line front end: tables, the randomized verification suite,
//! comparison data and figures, signal transforms, and determinant
//! diagnostics.
//!
//! Exit codes are a stable contract: 0 success/all-pass, 1 verification
//! or conditioning failure, 2 usage or I/O error. All outputs are
//! deterministic given (command, j, precision, seed), numbers are
//! serialized with 17 significant digits, and files are written
//! atomically (temp file + rename).

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eval::{eval_discrete_bessel, eval_reduced, ArgFactors};
use crate::grid::{make_grid, CircleGrid};
use crate::identities::{
    approx_cos, approx_cosc, approx_sin, approx_sinc, check_even_order_sum, check_graf,
    check_linear_cos, check_linear_sin, check_quadratic_norm, trig_mse, CheckResult,
};
use crate::real::{Ext, Real};
use crate::reference::{error_delta, j_bessel};
use crate::svg::{render, Series, Style};
use crate::transform::{
    diag_product_estimate, forward, inverse, invert, log_determinant, BesselMatrix, Signal,
};

#[derive(Parser)]
#[command(
    name = "disbessel",
    version,
    about = "Discrete Bessel functions on odd circle grids: tables, identity verification, transforms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate discrete values B, continuous values J, and differences
    Table(CommonArgs),
    /// Run the seeded identity and symmetry suite
    Verify(VerifyArgs),
    /// Emit discrete-vs-continuous comparison tables and figures
    Compare(CommonArgs),
    /// Forward-transform a signal file and reconstruct it
    Transform(TransformArgs),
    /// Print determinant diagnostics of the transform kernel
    Det(CommonArgs),
    /// Render discrete-vs-continuous curves as an SVG figure
    Plot(CommonArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Grid half-size j; the grid has N = 2j + 1 points
    #[arg(long)]
    j: u32,

    /// Arithmetic tier for discrete evaluations
    #[arg(long, value_enum, default_value_t = Precision::Working)]
    precision: Precision,

    /// Output path (required for compare and plot; stdout otherwise)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format; svg is valid only for plot and compare
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Seed for the randomized identity sample
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Negative-control hook: displace one grid node before checking
    #[arg(long, hide = true)]
    corrupt_evaluator: bool,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Headerless single-column CSV with exactly N = 2j + 1 values
    #[arg(long)]
    signal: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Precision {
    Working,
    Extended,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

enum CliError {
    Usage(String),
    Io(String),
    Failed(String),
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) | Err(CliError::Io(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Table(a) => {
            reject_svg(&a, "table")?;
            match a.precision {
                Precision::Working => cmd_table::<f64>(&a),
                Precision::Extended => cmd_table::<Ext>(&a),
            }
        }
        Command::Verify(v) => {
            reject_svg(&v.common, "verify")?;
            match v.common.precision {
                Precision::Working => cmd_verify::<f64>(&v.common, v.corrupt_evaluator),
                Precision::Extended => cmd_verify::<Ext>(&v.common, v.corrupt_evaluator),
            }
        }
        Command::Compare(a) => match a.precision {
            Precision::Working => cmd_compare::<f64>(&a),
            Precision::Extended => cmd_compare::<Ext>(&a),
        },
        Command::Transform(t) => {
            reject_svg(&t.common, "transform")?;
            match t.common.precision {
                Precision::Working => cmd_transform::<f64>(&t.common, &t.signal),
                Precision::Extended => cmd_transform::<Ext>(&t.common, &t.signal),
            }
        }
        Command::Det(a) => {
            reject_svg(&a, "det")?;
            match a.precision {
                Precision::Working => cmd_det::<f64>(&a),
                Precision::Extended => cmd_det::<Ext>(&a),
            }
        }
        Command::Plot(a) => match a.precision {
            Precision::Working => cmd_plot::<f64>(&a),
            Precision::Extended => cmd_plot::<Ext>(&a),
        },
    }
}

fn reject_svg(a: &CommonArgs, command: &str) -> Result<(), CliError> {
    if a.format == Format::Svg {
        return Err(CliError::Usage(format!(
            "--format svg is only valid for plot and compare, not {command}"
        )));
    }
    Ok(())
}

/// The continuous oracle is validated for n ≤ 200 and |x| ≤ 400; every
/// command that compares against it stays inside that box.
fn ensure_oracle_domain(j: u32) -> Result<(), CliError> {
    if j > 100 {
        return Err(CliError::Usage(
            "--j above 100 leaves the continuous oracle's validated domain".into(),
        ));
    }
    Ok(())
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn sign_str(s: i8) -> &'static str {
    match s {
        1 => "+",
        -1 => "-",
        _ => "0",
    }
}

fn atomic_write(path: &Path, content: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let ctx = |e: std::io::Error| CliError::Io(format!("cannot write {}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(ctx)?;
    tmp.write_all(content.as_bytes()).map_err(ctx)?;
    tmp.persist(path)
        .map_err(|e| CliError::Io(format!("cannot write {}: {}", path.display(), e.error)))?;
    Ok(())
}

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(p) => atomic_write(p, content),
    }
}

fn sibling(path: &Path, tag: &str, ext: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".to_string());
    path.with_file_name(format!("{stem}_{tag}.{ext}"))
}

fn cmd_table<R: Real>(a: &CommonArgs) -> Result<(), CliError> {
    ensure_oracle_domain(a.j)?;
    let grid = CircleGrid::<R>::new(a.j);
    let n_top = 2 * a.j as usize;
    let m_top = 4 * a.j as usize;

    let mut bvals = vec![0.0f64; (n_top + 1) * (m_top + 1)];
    for m in 0..=m_top {
        let f = ArgFactors::new(&grid, &R::from_i64(m as i64));
        for n in 0..=n_top {
            bvals[n * (m_top + 1) + m] = eval_reduced(&grid, &f, n as i64).to_f64();
        }
    }

    let mut out = String::from("n,m,B,J,diff\n");
    for n in 0..=n_top {
        for m in 0..=m_top {
            let b = bvals[n * (m_top + 1) + m];
            let jv = j_bessel(n as u32, m as f64).expect("finite argument");
            writeln!(out, "{n},{m},{},{},{}", num(b), num(jv), num(jv - b)).unwrap();
        }
    }
    write_output(a.out.as_deref(), &out)
}

fn cmd_verify<R: Real>(a: &CommonArgs, corrupt: bool) -> Result<(), CliError> {
    if corrupt && a.j == 0 {
        return Err(CliError::Usage("--corrupt-evaluator requires --j >= 1".into()));
    }
    let grid: CircleGrid<R> = if corrupt {
        CircleGrid::corrupted(a.j, 1e-3)
    } else {
        CircleGrid::new(a.j)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let jr = a.j as i64;
    let two_j = 2 * jr;
    let nn = 2 * jr + 1;

    let mut report = String::new();
    writeln!(
        report,
        "# verify j={} N={} precision={} seed={}{}",
        a.j,
        nn,
        R::LABEL,
        a.seed,
        if corrupt { " corrupt_evaluator=on" } else { "" }
    )
    .unwrap();
    writeln!(
        report,
        "# 125 identity tuples (25 per identity) + 3 symmetry sweeps of 100 samples"
    )
    .unwrap();

    let mut checks: Vec<CheckResult> = Vec::with_capacity(128);
    for _ in 0..25 {
        let m = rng.random_range(-two_j..=two_j);
        checks.push(check_even_order_sum(&grid, m));
    }
    for _ in 0..25 {
        let m = rng.random_range(-two_j..=two_j);
        let k = rng.random_range(-jr..=jr);
        checks.push(check_linear_cos(&grid, m, k));
    }
    for _ in 0..25 {
        let m = rng.random_range(-two_j..=two_j);
        let k = rng.random_range(-jr..=jr);
        checks.push(check_linear_sin(&grid, m, k));
    }
    for _ in 0..25 {
        let np = rng.random_range(-two_j..=two_j);
        let m = rng.random_range(-jr..=jr);
        let mp = rng.random_range(-jr..=jr);
        checks.push(check_graf(&grid, np, m, mp));
    }
    for _ in 0..25 {
        let m = rng.random_range(-two_j..=two_j);
        checks.push(check_quadratic_norm(&grid, m));
    }

    let mut worst = [0.0f64; 3];
    for _ in 0..100 {
        let n = rng.random_range(-two_j..=two_j);
        let m = rng.random_range(-two_j..=two_j);
        let x = R::from_i64(m);
        let b = eval_discrete_bessel(&grid, n, x.clone()).expect("finite");
        let b_neg_order = eval_discrete_bessel(&grid, -n, x.clone()).expect("finite");
        let b_neg_arg = eval_discrete_bessel(&grid, n, -x.clone()).expect("finite");
        let b_alias = eval_discrete_bessel(&grid, n + 2 * nn, x).expect("finite");
        let sgn = if n & 1 == 1 { -R::one() } else { R::one() };
        worst[0] = worst[0].max((b.clone() - sgn.clone() * b_neg_order).abs().to_f64());
        worst[1] = worst[1].max((b.clone() - sgn * b_neg_arg).abs().to_f64());
        worst[2] = worst[2].max((b - b_alias).abs().to_f64());
    }
    let names = [
        "symmetry_order_negation",
        "symmetry_argument_negation",
        "symmetry_aliasing",
    ];
    for (name, w) in names.into_iter().zip(worst) {
        checks.push(CheckResult {
            name,
            j: a.j,
            params: vec![("samples", 100)],
            residual: w,
            tolerance: 1e-14,
            passed: w <= 1e-14,
        });
    }

    for c in &checks {
        writeln!(report, "{c}").unwrap();
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    writeln!(report, "# {} of {} checks passed", checks.len() - failed, checks.len()).unwrap();
    write_output(a.out.as_deref(), &report)?;
    if failed > 0 {
        return Err(CliError::Failed(format!(
            "verification failed: {failed} of {} checks",
            checks.len()
        )));
    }
    Ok(())
}

fn cmd_compare<R: Real>(a: &CommonArgs) -> Result<(), CliError> {
    ensure_oracle_domain(a.j)?;
    let out = a.out.as_deref().ok_or_else(|| {
        CliError::Usage("compare writes multiple files; --out is required".into())
    })?;
    let jr = a.j as i64;
    let working_grid = make_grid(a.j);
    let grid = CircleGrid::<R>::new(a.j);

    // Per-order mean squared differences. The continuous oracle carries
    // 1e−13 absolute error, so this table is computed at working
    // precision at every tier.
    let mut delta_csv = String::from("n,delta\n");
    let mut delta_pts = Vec::new();
    for n in 0..=2 * jr {
        let d = error_delta(&working_grid, n).expect("order within range");
        writeln!(delta_csv, "{n},{}", num(d)).unwrap();
        delta_pts.push((n as f64, d.max(1e-300).log10()));
    }

    let mut trig_csv = String::from("m,sin,approx_sin,cos,approx_cos\n");
    let mut sin_pts = Vec::new();
    let mut cos_pts = Vec::new();
    for m in 0..=2 * jr {
        let s = (m as f64).sin();
        let c = (m as f64).cos();
        let sa = approx_sin(&grid, m).to_f64();
        let ca = approx_cos(&grid, m).to_f64();
        writeln!(trig_csv, "{m},{},{},{},{}", num(s), num(sa), num(c), num(ca)).unwrap();
        sin_pts.push((m as f64, sa));
        cos_pts.push((m as f64, ca));
    }

    let mut sinc_csv = String::from("m,sinc,approx_sinc,cosc,approx_cosc\n");
    let mut sinc_pts = Vec::new();
    let mut cosc_pts = Vec::new();
    for m in -jr..=jr {
        if m == 0 {
            continue;
        }
        let x = m as f64;
        let target_sinc = x.sin() / x;
        let target_cosc = (1.0 - x.cos()) / x;
        let sa = approx_sinc(&grid, m).to_f64();
        let ca = approx_cosc(&grid, m).to_f64();
        writeln!(
            sinc_csv,
            "{m},{},{},{},{}",
            num(target_sinc),
            num(sa),
            num(target_cosc),
            num(ca)
        )
        .unwrap();
        sinc_pts.push((x, sa));
        cosc_pts.push((x, ca));
    }

    let mse = trig_mse(&grid);
    let mut mse_csv = String::from("quantity,mse\n");
    writeln!(mse_csv, "approx_sin,{}", num(mse.sin)).unwrap();
    writeln!(mse_csv, "approx_cos,{}", num(mse.cos)).unwrap();
    writeln!(mse_csv, "approx_sinc,{}", num(mse.sinc)).unwrap();
    writeln!(mse_csv, "approx_cosc,{}", num(mse.cosc)).unwrap();

    atomic_write(&sibling(out, "delta", "csv"), &delta_csv)?;
    atomic_write(&sibling(out, "trig", "csv"), &trig_csv)?;
    atomic_write(&sibling(out, "sinc", "csv"), &sinc_csv)?;
    atomic_write(&sibling(out, "mse", "csv"), &mse_csv)?;

    if a.format == Format::Svg {
        let nn = grid.n_points();
        let dense = |lo: f64, hi: f64, f: &dyn Fn(f64) -> f64| -> Vec<(f64, f64)> {
            let steps = ((hi - lo) * 4.0).round() as i64;
            (0..=steps).map(|i| lo + i as f64 * 0.25).map(|x| (x, f(x))).collect()
        };

        let delta_svg = render(
            &format!("Mean squared discrete-vs-continuous difference, N = {nn}"),
            "order n",
            "log10 delta",
            &[Series {
                label: "log10 delta".into(),
                style: Style::Circles,
                points: delta_pts,
            }],
        );
        atomic_write(&sibling(out, "delta", "svg"), &delta_svg)?;

        let trig_svg = render(
            &format!("Trigonometric surrogates, N = {nn}"),
            "m",
            "value",
            &[
                Series {
                    label: "sin (continuous)".into(),
                    style: Style::Line,
                    points: dense(0.0, 2.0 * jr as f64, &f64::sin),
                },
                Series {
                    label: "sin (discrete sum)".into(),
                    style: Style::Circles,
                    points: sin_pts,
                },
                Series {
                    label: "cos (continuous)".into(),
                    style: Style::Line,
                    points: dense(0.0, 2.0 * jr as f64, &f64::cos),
                },
                Series {
                    label: "cos (discrete sum)".into(),
                    style: Style::Circles,
                    points: cos_pts,
                },
            ],
        );
        atomic_write(&sibling(out, "trig", "svg"), &trig_svg)?;

        let sinc = |x: f64| if x == 0.0 { 1.0 } else { x.sin() / x };
        let cosc = |x: f64| if x == 0.0 { 0.0 } else { (1.0 - x.cos()) / x };
        let sinc_svg = render(
            &format!("sinc and cosc surrogates, N = {nn}"),
            "m",
            "value",
            &[
                Series {
                    label: "sin(m)/m (continuous)".into(),
                    style: Style::Line,
                    points: dense(-(jr as f64), jr as f64, &sinc),
                },
                Series {
                    label: "sinc (discrete sum)".into(),
                    style: Style::Circles,
                    points: sinc_pts,
                },
                Series {
                    label: "(1-cos m)/m (continuous)".into(),
                    style: Style::Line,
                    points: dense(-(jr as f64), jr as f64, &cosc),
                },
                Series {
                    label: "cosc (discrete sum)".into(),
                    style: Style::Circles,
                    points: cosc_pts,
                },
            ],
        );
        atomic_write(&sibling(out, "sinc", "svg"), &sinc_svg)?;
    }
    Ok(())
}

fn cmd_transform<R: Real>(a: &CommonArgs, signal: &Path) -> Result<(), CliError> {
    ensure_oracle_domain(a.j)?;
    let n = 2 * a.j as usize + 1;
    let text = fs::read_to_string(signal)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", signal.display())))?;
    let mut vals = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let v: f64 = t.parse().map_err(|_| {
            CliError::Usage(format!("signal line {}: cannot parse {t:?} as a number", i + 1))
        })?;
        vals.push(v);
    }
    if vals.len() != n {
        return Err(CliError::Usage(format!(
            "signal has {} values, expected N = {n}",
            vals.len()
        )));
    }

    let b = BesselMatrix::<R>::build(a.j);
    let (c, rep) = match invert(&b) {
        Ok(pair) => pair,
        Err(e) => {
            let (sign, ld) = log_determinant(&b);
            eprintln!(
                "N={n} precision={} log10|det|={ld:.6} sign={} diag_product_log10={:.6}",
                R::LABEL,
                sign_str(sign),
                diag_product_estimate(a.j)
            );
            return Err(CliError::Failed(format!("inversion failed: {e}")));
        }
    };
    eprintln!(
        "N={n} precision={} log10|det|={:.6} sign={} diag_product_log10={:.6} residual_cb={:.3e}",
        rep.precision_used,
        rep.log10_abs_det,
        sign_str(rep.det_sign),
        rep.diag_product_log10,
        rep.residual_cb
    );
    if rep.residual_cb > 1e-3 {
        return Err(CliError::Failed(format!(
            "inverse is unreliable: residual_cb = {:.3e} exceeds 1e-3; retry with --precision extended",
            rep.residual_cb
        )));
    }

    let f: Vec<R> = vals.iter().map(|&v| R::from_f64(v)).collect();
    let modes = forward(&b, &Signal(f)).expect("length checked");
    let back = inverse(&c, &modes).expect("length checked");

    let mut out = String::from("n,f_tilde\n");
    for (i, v) in modes.0.iter().enumerate() {
        writeln!(out, "{i},{}", num(v.to_f64())).unwrap();
    }
    out.push('\n');
    out.push_str("m,f,f_reconstructed,abs_err\n");
    for i in 0..n {
        let rec = back.0[i].to_f64();
        writeln!(out, "{i},{},{},{}", num(vals[i]), num(rec), num((vals[i] - rec).abs())).unwrap();
    }
    write_output(a.out.as_deref(), &out)
}

fn cmd_det<R: Real>(a: &CommonArgs) -> Result<(), CliError> {
    ensure_oracle_domain(a.j)?;
    let b = BesselMatrix::<R>::build(a.j);
    let (sign, ld) = log_determinant(&b);
    let est = diag_product_estimate(a.j);
    let line = format!(
        "N={} log10|det|={} sign={} diag_product_log10={} precision={}\n",
        b.size(),
        num(ld),
        sign_str(sign),
        num(est),
        R::LABEL
    );
    write_output(a.out.as_deref(), &line)?;
    if sign == 0 {
        return Err(CliError::Failed(
            "determinant is exactly zero at this precision".into(),
        ));
    }
    Ok(())
}

fn cmd_plot<R: Real>(a: &CommonArgs) -> Result<(), CliError> {
    ensure_oracle_domain(a.j)?;
    if a.format != Format::Svg {
        return Err(CliError::Usage("plot emits svg; pass --format svg".into()));
    }
    let out = a
        .out
        .as_deref()
        .ok_or_else(|| CliError::Usage("plot requires --out".into()))?;

    let grid = CircleGrid::<R>::new(a.j);
    let m_top = 4 * a.j;
    let orders: Vec<u32> = [0u32, 1, 5, 10]
        .into_iter()
        .filter(|&n| n <= 2 * a.j)
        .collect();

    let mut series = Vec::new();
    for &n in &orders {
        let steps = 4 * m_top;
        let line: Vec<(f64, f64)> = (0..=steps)
            .map(|i| i as f64 * 0.25)
            .map(|x| (x, j_bessel(n, x).expect("finite argument")))
            .collect();
        series.push(Series {
            label: format!("J_{n} (continuous)"),
            style: Style::Line,
            points: line,
        });
        let mut pts = Vec::with_capacity(m_top as usize + 1);
        for m in 0..=m_top {
            let f = ArgFactors::new(&grid, &R::from_i64(m as i64));
            pts.push((m as f64, eval_reduced(&grid, &f, n as i64).to_f64()));
        }
        series.push(Series {
            label: format!("B_{n} (discrete)"),
            style: Style::Circles,
            points: pts,
        });
    }

    let svg = render(
        &format!("Discrete vs continuous Bessel values, N = {}", grid.n_points()),
        "m",
        "value",
        &series,
    );
    atomic_write(out, &svg)
}
