//! Command-line front end.
//!
//! Every command writes rows with the fixed columns
//! `quantity,s_re,s_im,n,value_re,value_im,err_est,meta` as CSV or as a JSON
//! array of objects. Floats carry 17 significant digits, so output parses
//! back bit-exactly and identical inputs give identical bytes.

use crate::epstein::{complete_xi, epstein_direct_sum, epstein_zeta_2d, find_critical_zeros, omega};
use crate::error::Error;
use crate::expansion::{
    angular_lattice_sum, coeff_b0, coeff_b1_tilde, coeff_b1_variant, em_verify, expansion_study, h_function,
    leading_coeff,
};
use crate::lab::{hn_ratio_study, monotonicity_scan, omega_ratio_routes, xi_defect, ScanRecord};
use crate::lattice::{spectral_zeta_1d, spectral_zeta_with_error, StencilVariant, TorusGrid};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::mpsc;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Parses `a`, `a+bi` or `a-bi` with no whitespace.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    fn float(t: &str) -> Result<f64, String> {
        let ok = !t.is_empty()
            && t.chars().all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'))
            && t.chars().any(|c| c.is_ascii_digit());
        if !ok {
            return Err(format!("'{t}' is not a number"));
        }
        t.parse::<f64>().map_err(|e| format!("'{t}': {e}"))
    }
    let bad = || format!("'{text}' is not a complex number of the form a, a+bi or a-bi");
    let Some(body) = text.strip_suffix('i') else {
        return float(text).map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'))
        .ok_or_else(bad)?;
    let re = float(&body[..split]).map_err(|_| bad())?;
    let im = float(&body[split..]).map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Five,
    Nine,
}

impl From<Variant> for StencilVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Five => StencilVariant::FivePoint,
            Variant::Nine => StencilVariant::NinePoint,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "torus-zeta", version, about = "Spectral zeta functions of discrete torus Laplacians")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Quadrature tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write rows here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// key=value file with defaults for the flags above.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Reject inputs outside the range where results are guaranteed.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// ζ(Δ_n, s) by direct summation over the spectrum.
    Zeta {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "five")]
        variant: Variant,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
    },
    /// Spectral zeta of the 1-D cycle Laplacian.
    Zeta1d {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
    },
    /// ζ(Δ,s) = 4ζ(s)β(s), optionally against a direct lattice sum.
    Epstein {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        /// Also sum over |k|∞ <= K directly (Re s > 1).
        #[arg(long)]
        direct_cutoff: Option<usize>,
    },
    /// Completed function ξ₂(s).
    Xi {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
    },
    /// Ω(s), and Ω(1-s)/Ω(s) with `--ratio`.
    Omega {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long)]
        ratio: bool,
    },
    /// Expansion coefficients.
    Coeff {
        #[arg(value_enum)]
        which: CoeffKind,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, value_enum, default_value = "five")]
        variant: Variant,
        /// Poisson rows for the angular sum.
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Residuals of the expansion and their log-log slope.
    Expansion {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, value_enum, default_value = "nine")]
        variant: Variant,
        #[arg(long, value_delimiter = ',', default_value = "32,64,128,256")]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        orders: u32,
    },
    /// H_n(s) for the nine-point stencil.
    Hn {
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Complex64,
        #[arg(long, value_delimiter = ',', default_value = "32,64,128")]
        n_list: Vec<usize>,
    },
    /// Parameter scans.
    Scan(ScanArgs),
    /// Euler–Maclaurin identity for a built-in test function.
    Emcheck {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long = "fn", value_enum, default_value = "lorentz")]
        func: TestFn,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoeffKind {
    A,
    B0,
    B1,
    B1tilde,
    Angular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanKind {
    Omega,
    Hn,
    XiDefect,
    Zeros,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TestFn {
    /// 1/(1+x²)
    Lorentz,
    /// x²
    Square,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    kind: ScanKind,
    /// Height of the horizontal line (omega).
    #[arg(long, default_value_t = 70.0)]
    b: f64,
    #[arg(long, default_value_t = 0.01)]
    a_min: f64,
    #[arg(long, default_value_t = 0.99)]
    a_max: f64,
    #[arg(long, default_value_t = 101)]
    points: usize,
    /// Point of the H_n ratio study (hn).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, default_value = "0.3+2i")]
    s: Complex64,
    #[arg(long, value_delimiter = ',', default_value = "32,64,128")]
    n_list: Vec<usize>,
    /// Grid for xi-defect: real parts.
    #[arg(long, default_value_t = 0.1)]
    re_min: f64,
    #[arg(long, default_value_t = 0.9)]
    re_max: f64,
    #[arg(long, default_value_t = 5)]
    re_points: usize,
    #[arg(long, default_value_t = 1.0)]
    im_min: f64,
    #[arg(long, default_value_t = 40.0)]
    im_max: f64,
    #[arg(long, default_value_t = 4)]
    im_points: usize,
    /// Critical-line window for zeros.
    #[arg(long, default_value_t = 1.0)]
    t_min: f64,
    #[arg(long, default_value_t = 20.0)]
    t_max: f64,
    #[arg(long, default_value_t = 0.05)]
    step: f64,
}

/// Settings after merging defaults, the config file and flags.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub quad_tol: f64,
    pub special_tol: f64,
    /// Poisson rows in the angular lattice sum.
    pub angular_rows: usize,
    pub threads: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub strict: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            quad_tol: 1e-12,
            special_tol: 1e-13,
            angular_rows: crate::expansion::coefficients::ANGULAR_ROWS,
            threads: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            format: Format::Csv,
            out: None,
            strict: false,
        }
    }
}

impl RunConfig {
    fn validate(&self) -> Result<(), String> {
        for (name, t) in [("quad_tol", self.quad_tol), ("special_tol", self.special_tol)] {
            if !(t > 0.0 && t <= 1e-3) {
                return Err(format!("{name} = {t} must lie in (0, 1e-3]"));
            }
        }
        if self.threads == 0 {
            return Err("threads must be at least 1".into());
        }
        if self.angular_rows == 0 {
            return Err("angular_rows must be at least 1".into());
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) =
                line.split_once('=').ok_or_else(|| format!("{}:{}: expected key=value", path.display(), lineno + 1))?;
            let (k, v) = (k.trim(), v.trim());
            let err = |e: &dyn std::fmt::Display| format!("{}:{}: {k}: {e}", path.display(), lineno + 1);
            match k {
                "tol" | "quad_tol" => self.quad_tol = v.parse().map_err(|e| err(&e))?,
                "special_tol" => self.special_tol = v.parse().map_err(|e| err(&e))?,
                "angular_rows" | "cutoff" => self.angular_rows = v.parse().map_err(|e| err(&e))?,
                "threads" => self.threads = v.parse().map_err(|e| err(&e))?,
                "format" => self.format = Format::from_str(v, true).map_err(|e| err(&e))?,
                "out" => self.out = Some(PathBuf::from(v)),
                "strict" => self.strict = v.parse().map_err(|e| err(&e))?,
                _ => return Err(err(&"unknown key")),
            }
        }
        Ok(())
    }
}

enum Failure {
    Numeric(Error),
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn json_f64(x: f64) -> String {
    if x.is_finite() {
        fmt_f64(x)
    } else {
        "null".into()
    }
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization cannot fail")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

const HEADER: &str = "quantity,s_re,s_im,n,value_re,value_im,err_est,meta";

/// Streams records in the chosen format, flushing after each row.
struct RowWriter<'a> {
    out: &'a mut dyn Write,
    format: Format,
    rows: usize,
}

impl<'a> RowWriter<'a> {
    fn new(out: &'a mut dyn Write, format: Format) -> io::Result<Self> {
        match format {
            Format::Csv => writeln!(out, "{HEADER}")?,
            Format::Json => write!(out, "[")?,
        }
        out.flush()?;
        Ok(RowWriter { out, format, rows: 0 })
    }

    fn write(&mut self, r: &ScanRecord) -> io::Result<()> {
        let meta: Vec<String> = r.meta.iter().map(|(k, v)| format!("{k}={v}")).collect();
        match self.format {
            Format::Csv => writeln!(
                self.out,
                "{},{},{},{},{},{},{},{}",
                r.quantity,
                fmt_f64(r.s.re),
                fmt_f64(r.s.im),
                r.n.map(|n| n.to_string()).unwrap_or_default(),
                fmt_f64(r.value.re),
                fmt_f64(r.value.im),
                r.err_est.map(fmt_f64).unwrap_or_default(),
                csv_field(&meta.join(";")),
            )?,
            Format::Json => {
                let meta_obj: Vec<String> =
                    r.meta.iter().map(|(k, v)| format!("{}:{}", json_str(k), json_str(v))).collect();
                write!(
                    self.out,
                    "{}\n{{\"quantity\":{},\"s_re\":{},\"s_im\":{},\"n\":{},\"value_re\":{},\"value_im\":{},\"err_est\":{},\"meta\":{{{}}}}}",
                    if self.rows == 0 { "" } else { "," },
                    json_str(r.quantity),
                    json_f64(r.s.re),
                    json_f64(r.s.im),
                    r.n.map(|n| n.to_string()).unwrap_or_else(|| "null".into()),
                    json_f64(r.value.re),
                    json_f64(r.value.im),
                    r.err_est.map(json_f64).unwrap_or_else(|| "null".into()),
                    meta_obj.join(","),
                )?
            }
        }
        self.rows += 1;
        self.out.flush()
    }

    fn finish(self) -> io::Result<()> {
        if self.format == Format::Json {
            writeln!(self.out, "{}]", if self.rows == 0 { "" } else { "\n" })?;
        }
        self.out.flush()
    }
}

/// Hands finished rows to the writer thread.
struct Rows(mpsc::Sender<ScanRecord>);

impl Rows {
    fn write(&mut self, r: &ScanRecord) -> io::Result<()> {
        self.0.send(r.clone()).map_err(|_| io::Error::new(io::ErrorKind::BrokenPipe, "output writer stopped"))
    }
}

fn rec(s: Complex64, quantity: &'static str, value: Complex64) -> ScanRecord {
    ScanRecord::new(s, quantity, value)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn in_strip(s: Complex64) -> bool {
    s.re > 0.0 && s.re < 1.0
}

fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..points).map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64).collect(),
    }
}

fn execute(cmd: Command, cfg: &RunConfig, w: &mut Rows) -> Result<(), Failure> {
    let tol = cfg.quad_tol;
    match cmd {
        Command::Zeta { n, variant, s } => {
            let v: StencilVariant = variant.into();
            let (z, err) = spectral_zeta_with_error(TorusGrid::new(n)?, v, s)?;
            let mut r = rec(s, "zeta", z).with_n(n).with_meta("variant", v);
            r.err_est = Some(err);
            w.write(&r)?;
        }
        Command::Zeta1d { n, s } => {
            w.write(&rec(s, "zeta1d", spectral_zeta_1d(n, s)?).with_n(n))?;
        }
        Command::Epstein { s, direct_cutoff } => {
            w.write(&rec(s, "epstein", epstein_zeta_2d(s)?))?;
            if let Some(k) = direct_cutoff {
                let (v, err) = epstein_direct_sum(s, k)?;
                let mut r = rec(s, "epstein_direct", v).with_meta("cutoff", k);
                r.err_est = Some(err);
                w.write(&r)?;
            }
        }
        Command::Xi { s } => w.write(&rec(s, "xi", complete_xi(s)?))?,
        Command::Omega { s, ratio } => {
            w.write(&rec(s, "omega", omega(s)?))?;
            if ratio {
                let routes = omega_ratio_routes(s)?;
                let mut r =
                    rec(s, "omega_ratio", routes.shifted_up).with_meta("modulus", fmt_f64(routes.shifted_up.norm()));
                r.err_est = Some(routes.spread() * routes.shifted_up.norm());
                w.write(&r)?;
            }
        }
        Command::Coeff { which, s, variant, cutoff } => {
            let v: StencilVariant = variant.into();
            if cfg.strict && !in_strip(s) {
                return Err(Failure::Usage(format!("--strict: s = {s} is outside 0 < Re s < 1")));
            }
            let r = match which {
                CoeffKind::A => rec(s, "a", leading_coeff(s, v, tol)?).with_meta("variant", v),
                CoeffKind::B0 => rec(s, "b0", coeff_b0(s)?),
                CoeffKind::B1 => rec(s, "b1", coeff_b1_variant(s, v, tol)?).with_meta("variant", v),
                CoeffKind::B1tilde => rec(s, "b1tilde", coeff_b1_tilde(s)?),
                CoeffKind::Angular => {
                    let rows = cutoff.unwrap_or(cfg.angular_rows);
                    let q = angular_lattice_sum(s, rows, tol)?;
                    let mut r = rec(s, "angular", q.value).with_meta("rows", rows);
                    r.err_est = Some(q.error);
                    r
                }
            };
            w.write(&r.with_meta("tol", fmt_f64(tol)))?;
        }
        Command::Expansion { s, variant, n_list, orders } => {
            if cfg.strict && !in_strip(s) {
                return Err(Failure::Usage(format!("--strict: s = {s} is outside 0 < Re s < 1")));
            }
            if orders > 1 {
                return Err(Failure::Usage(format!("--orders must be 0 or 1, got {orders}")));
            }
            let v: StencilVariant = variant.into();
            let study = expansion_study(s, v, &n_list, orders, tol)?;
            for &(n, r) in &study.residuals {
                w.write(
                    &rec(s, "expansion_residual", real(r))
                        .with_n(n)
                        .with_meta("variant", v)
                        .with_meta("orders", orders),
                )?;
            }
            let c = |z: Complex64| format!("{}{:+.16e}i", fmt_f64(z.re), z.im);
            w.write(
                &rec(s, "expansion_slope", real(study.slope))
                    .with_meta("variant", v)
                    .with_meta("orders", orders)
                    .with_meta("leading", c(study.leading))
                    .with_meta("b0", c(study.b0))
                    .with_meta("b1", c(study.b1))
                    .with_meta("v_front", c(study.v_front))
                    .with_meta("b1_front", "none")
                    .with_meta("tol", fmt_f64(tol)),
            )?;
        }
        Command::Hn { s, n_list } => {
            for n in n_list {
                w.write(&rec(s, "hn", h_function(s, n, tol)?).with_n(n).with_meta("tol", fmt_f64(tol)))?;
            }
        }
        Command::Scan(args) => scan(args, cfg, w)?,
        Command::Emcheck { m, n, func } => {
            let lorentz = |x: f64| 1.0 / (1.0 + x * x);
            let lorentz_d = |k: usize, x: f64| {
                let fact: f64 = (1..=k).map(|i| i as f64).product();
                let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * fact * Complex64::new(x, -1.0).powi(-(k as i32) - 1).im
            };
            let square = |x: f64| x * x;
            let square_d = |k: usize, x: f64| match k {
                1 => 2.0 * x,
                2 => 2.0,
                _ => 0.0,
            };
            let (lhs, rhs, name) = match func {
                TestFn::Lorentz => {
                    let (l, r) = em_verify(m, n, &lorentz, &lorentz_d)?;
                    (l, r, "lorentz")
                }
                TestFn::Square => {
                    let (l, r) = em_verify(m, n, &square, &square_d)?;
                    (l, r, "square")
                }
            };
            let zero = Complex64::new(0.0, 0.0);
            for (q, v) in [("em_lhs", lhs), ("em_rhs", rhs)] {
                let mut r = rec(zero, q, real(v)).with_n(n).with_meta("fn", name).with_meta("M", m);
                r.err_est = Some((lhs - rhs).abs());
                w.write(&r)?;
            }
        }
    }
    Ok(())
}

fn scan(args: ScanArgs, cfg: &RunConfig, w: &mut Rows) -> Result<(), Failure> {
    match args.kind {
        ScanKind::Omega => {
            let grid = linspace(args.a_min, args.a_max, args.points);
            if grid.is_empty() {
                return Ok(());
            }
            if cfg.strict && args.b <= crate::lab::EXPLORATORY_BELOW {
                return Err(Failure::Usage(format!("--strict: b = {} is in the exploratory range", args.b)));
            }
            let result = monotonicity_scan(args.b, &grid)?;
            let crossing = result.crossing.map(fmt_f64).unwrap_or_else(|| "none".into());
            for r in result.records {
                w.write(
                    &r.with_meta("strictly_increasing", result.strictly_increasing).with_meta("crossing", &crossing),
                )?;
            }
        }
        ScanKind::Hn => {
            if args.n_list.is_empty() {
                return Ok(());
            }
            for r in hn_ratio_study(args.s, &args.n_list, cfg.quad_tol)? {
                w.write(&r)?;
            }
        }
        ScanKind::XiDefect => {
            for im in linspace(args.im_min, args.im_max, args.im_points) {
                for re in linspace(args.re_min, args.re_max, args.re_points) {
                    let s = Complex64::new(re, im);
                    w.write(&rec(s, "xi_defect", real(xi_defect(s)?)))?;
                }
            }
        }
        ScanKind::Zeros => {
            if !(args.t_max > args.t_min) {
                return Ok(());
            }
            let mut zeros = find_critical_zeros(args.t_min, args.t_max, args.step)?;
            zeros.sort_by(|a, b| a.t.total_cmp(&b.t));
            for z in zeros {
                let source = match z.source {
                    crate::epstein::ZeroSource::RiemannFactor => "riemann",
                    crate::epstein::ZeroSource::BetaFactor => "beta",
                };
                let mut r = rec(Complex64::new(0.5, z.t), "zero", real(z.t)).with_meta("source", source);
                r.err_est = Some(z.residual);
                w.write(&r)?;
            }
        }
    }
    Ok(())
}

fn exit_code(e: &Error) -> i32 {
    if e.is_domain() {
        EXIT_DOMAIN
    } else {
        match e {
            Error::Convergence { .. }
            | Error::SignalLost { .. }
            | Error::IllConditioned { .. }
            | Error::StepTooCoarse { .. } => EXIT_CONVERGENCE,
            _ => EXIT_INTERNAL,
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.global.config {
        if let Err(e) = cfg.apply_file(path) {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_DOMAIN;
        }
    }
    let g = &cli.global;
    cfg.quad_tol = g.tol.unwrap_or(cfg.quad_tol);
    cfg.threads = g.threads.unwrap_or(cfg.threads);
    cfg.format = g.format.unwrap_or(cfg.format);
    cfg.out = g.out.clone().or(cfg.out);
    cfg.strict |= g.strict;
    if let Err(e) = cfg.validate() {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_DOMAIN;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: thread pool: {e}");
            return EXIT_INTERNAL;
        }
    };
    let mut file;
    let sink: &mut dyn Write = match &cfg.out {
        Some(path) => match File::create(path) {
            Ok(f) => {
                file = BufWriter::new(f);
                &mut file
            }
            Err(e) => {
                let _ = writeln!(stderr, "error: {}: {e}", path.display());
                return EXIT_INTERNAL;
            }
        },
        None => stdout,
    };
    let (tx, rx) = mpsc::channel::<ScanRecord>();
    let command = cli.command;
    let result = std::thread::scope(|scope| -> Result<(), Failure> {
        let worker = scope.spawn(|| {
            let mut rows = Rows(tx);
            pool.install(|| execute(command, &cfg, &mut rows))
        });
        let mut w = RowWriter::new(sink, cfg.format)?;
        for r in rx {
            w.write(&r)?;
        }
        let computed = worker.join().unwrap_or_else(|_| Err(Failure::Usage("internal panic".into())));
        // rows already written stay valid; close the document either way
        w.finish()?;
        computed
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Numeric(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INTERNAL
        }
    }
}

/// Entry point for the binary.
pub fn run() -> i32 {
    // unlocked handles: worker threads may still write diagnostics
    run_with(std::env::args_os(), &mut io::stdout(), &mut io::stderr())
}
