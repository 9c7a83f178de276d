use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use besselasym::bounds::{best_bound, BoundBreakdown, Family};
use besselasym::figures::{csv_line, figure_rows, FIGURE_HEADER};
use besselasym::validation::Suite;
use besselasym::{
    evaluate_certified, optimal_truncation, reexpand, Error, ExpansionContext, ExpansionKind,
    Order, SurfaceComplex, TruncationPair,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "besselasym",
    version,
    about = "Certified large-argument expansions of Bessel-type functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated expansion with a certified error bound.
    Eval(EvalArgs),
    /// Error bound breakdowns over a grid of arguments.
    Bound(BoundArgs),
    /// Terminant re-expansion of a remainder.
    Reexpand(ReexpandArgs),
    /// Run an oracle-backed validation suite.
    Validate(ValidateArgs),
    /// Data for the bound comparison plots, as CSV.
    Figure(FigureArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Point {
    /// Order as `a`, `a+bi` or `bi`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    nu: Order,
    #[arg(long, allow_hyphen_values = true)]
    z_mod: f64,
    /// Argument of z on the Riemann surface of the logarithm (radians).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    z_arg: f64,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    /// K, Kp, I_upper, I_lower, Ip_upper, Ip_lower, J, Jp, Y, Yp, H1, H1p, H2, H2p.
    #[arg(long)]
    kind: ExpansionKind,
    #[command(flatten)]
    point: Point,
    #[arg(long)]
    terms: usize,
    /// Length of the second sum of the two-sided expansions (defaults to --terms).
    #[arg(long)]
    terms2: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct BoundArgs {
    /// K, Kp, J or Jp.
    #[arg(long)]
    kind: Family,
    #[command(flatten)]
    point: Point,
    #[arg(long)]
    terms: usize,
    /// `start:stop:steps`; overrides --z-arg.
    #[arg(long, allow_hyphen_values = true)]
    grid_arg: Option<String>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ReexpandArgs {
    #[arg(long)]
    kind: Family,
    #[command(flatten)]
    point: Point,
    /// N; with --terms2 absent both indices come from the optimal truncation.
    #[arg(long)]
    terms: Option<usize>,
    /// M.
    #[arg(long)]
    terms2: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct ValidateArgs {
    /// bounds, signs, reexpansion, terminants or integral-reps.
    #[arg(long)]
    suite: Suite,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FigureArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
    id: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Lib(Error),
    Flag(String),
    Validation(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// 17 significant digits, as used in every CSV and text field.
fn g(x: f64) -> String {
    // no "-0" in output
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn signed(x: f64) -> String {
    let s = g(x);
    if s.starts_with('-') {
        s
    } else {
        format!("+{s}")
    }
}

fn surface(p: &Point) -> Result<SurfaceComplex, Failure> {
    Ok(SurfaceComplex::new(p.z_mod, p.z_arg)?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[derive(Serialize)]
struct EvalJson {
    value_re: f64,
    value_im: f64,
    remainder_bound: f64,
    value_bound: f64,
    bound_source: &'static str,
    sector_ok: bool,
}

fn eval(a: EvalArgs) -> Result<(), Failure> {
    let z = surface(&a.point)?;
    let ctx = ExpansionContext::new(z, a.point.nu, a.terms, a.terms2.unwrap_or(a.terms));
    let cv = evaluate_certified::<f64>(a.kind, &ctx)?;
    let row = EvalJson {
        value_re: cv.value.re,
        value_im: cv.value.im,
        remainder_bound: cv.remainder_bound,
        value_bound: cv.value_bound,
        bound_source: cv.bound_source.tag(),
        sector_ok: cv.sector_ok,
    };
    let text = match a.output.format {
        Format::Json => serde_json::to_string(&row).expect("plain struct") + "\n",
        Format::Csv => format!(
            "value_re,value_im,remainder_bound,value_bound,bound_source,sector_ok\n{},{},{},{},{},{}\n",
            g(row.value_re),
            g(row.value_im),
            g(row.remainder_bound),
            g(row.value_bound),
            row.bound_source,
            row.sector_ok
        ),
        Format::Text => format!(
            "{} at z = {}, nu = {}, N = {}\nvalue           = {} {}i\nremainder bound = {}\nvalue bound     = {}\nbound source    = {}\n",
            a.kind,
            z,
            a.point.nu,
            a.terms,
            g(row.value_re),
            signed(row.value_im),
            g(row.remainder_bound),
            g(row.value_bound),
            row.bound_source
        ),
    };
    emit(&a.output.out, &text)
}

fn parse_grid(s: &str) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::Flag(format!("--grid-arg expects start:stop:steps, got '{s}'"));
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts[..] else {
        return Err(bad());
    };
    let (a, b): (f64, f64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    Ok((0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect())
}

#[derive(Serialize)]
struct BoundJson {
    arg_z: f64,
    first_term_mag: f64,
    sup_factor: f64,
    nu_ratio: f64,
    total: f64,
    theorem: &'static str,
}

impl BoundJson {
    fn new(arg_z: f64, b: &BoundBreakdown) -> Self {
        BoundJson {
            arg_z,
            first_term_mag: b.first_term_mag,
            sup_factor: b.sup_factor,
            nu_ratio: b.nu_ratio,
            total: b.total,
            theorem: b.theorem.tag(),
        }
    }
}

fn bound(a: BoundArgs) -> Result<(), Failure> {
    let args = match &a.grid_arg {
        Some(s) => parse_grid(s)?,
        None => vec![a.point.z_arg],
    };
    let mut rows = Vec::with_capacity(args.len());
    for arg in args {
        let z = SurfaceComplex::new(a.point.z_mod, arg)?;
        rows.push(BoundJson::new(
            arg,
            &best_bound(a.kind, z, a.point.nu, a.terms)?,
        ));
    }
    let text = match a.output.format {
        Format::Json => serde_json::to_string(&rows).expect("plain struct") + "\n",
        Format::Csv | Format::Text => {
            let sep = if matches!(a.output.format, Format::Csv) {
                ","
            } else {
                " "
            };
            let mut s = [
                "arg_z",
                "first_term_mag",
                "sup_factor",
                "nu_ratio",
                "total",
                "theorem",
            ]
            .join(sep)
                + "\n";
            for r in &rows {
                let f = [
                    g(r.arg_z),
                    g(r.first_term_mag),
                    g(r.sup_factor),
                    g(r.nu_ratio),
                    g(r.total),
                    r.theorem.into(),
                ];
                s += &(f.join(sep) + "\n");
            }
            s
        }
    };
    emit(&a.output.out, &text)
}

#[allow(non_snake_case)]
#[derive(Serialize)]
struct ReexpandJson {
    series_part_re: f64,
    series_part_im: f64,
    tail_bound: Option<f64>,
    N: usize,
    M: usize,
}

fn reexpand_cmd(a: ReexpandArgs) -> Result<(), Failure> {
    let z = surface(&a.point)?;
    let pair = match (a.terms, a.terms2) {
        (Some(n), Some(m)) => TruncationPair::new(n, m)?,
        (None, None) => optimal_truncation(a.point.z_mod, 0.0, 0.0)?,
        _ => {
            return Err(Failure::Flag(
                "give both --terms and --terms2, or neither".into(),
            ))
        }
    };
    let r = reexpand::<f64>(a.kind, z, a.point.nu, pair)?;
    let row = ReexpandJson {
        series_part_re: r.series_part.re,
        series_part_im: r.series_part.im,
        tail_bound: r.tail_bound,
        N: pair.N,
        M: pair.M,
    };
    let tail = row.tail_bound.map_or_else(|| "unavailable".to_string(), g);
    let text = match a.output.format {
        Format::Json => serde_json::to_string(&row).expect("plain struct") + "\n",
        Format::Csv => format!(
            "series_part_re,series_part_im,tail_bound,N,M\n{},{},{},{},{}\n",
            g(row.series_part_re),
            g(row.series_part_im),
            tail,
            row.N,
            row.M
        ),
        Format::Text => format!(
            "{} at z = {}, nu = {}, (N, M) = ({}, {})\nseries part = {} {}i\ntail bound  = {}\n",
            a.kind,
            z,
            a.point.nu,
            row.N,
            row.M,
            g(row.series_part_re),
            signed(row.series_part_im),
            tail
        ),
    };
    emit(&a.output.out, &text)
}

fn validate(a: ValidateArgs) -> Result<(), Failure> {
    let rep = a.suite.run();
    let mut s = format!("{rep}\n");
    for line in rep
        .violations
        .iter()
        .map(|v| ("violation", v))
        .chain(rep.errors.iter().map(|e| ("error", e)))
    {
        let _ = writeln!(s, "{}: {}", line.0, line.1);
    }
    for n in &rep.notes {
        let _ = writeln!(s, "note: {n}");
    }
    emit(&a.out, &s)?;
    if rep.passed() {
        Ok(())
    } else {
        Err(Failure::Validation(format!("suite {} failed", rep.name)))
    }
}

fn figure(a: FigureArgs) -> Result<(), Failure> {
    let mut s = String::from(FIGURE_HEADER);
    s.push('\n');
    for r in figure_rows(a.id)? {
        s += &csv_line(&r);
        s.push('\n');
    }
    emit(&a.out, &s)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Eval(a) => eval(a),
        Command::Bound(a) => bound(a),
        Command::Reexpand(a) => reexpand_cmd(a),
        Command::Validate(a) => validate(a),
        Command::Figure(a) => figure(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Flag(m) => (1, m),
                Failure::Lib(e @ Error::Accuracy { .. }) => (4, e.to_string()),
                Failure::Lib(e) => (2, e.to_string()),
                Failure::Validation(m) => (3, m),
                Failure::Io(e) => (1, format!("cannot write output: {e}")),
            };
            eprintln!("besselasym: {msg}");
            ExitCode::from(code)
        }
    }
}
