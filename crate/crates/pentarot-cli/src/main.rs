//! `pentarot`: decide, iterate, code and draw points of the pentagonal
//! piecewise rotation, and run the verification suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pentarot::cyclo::{parse_cyclo, Cyclo};
use pentarot::dynamics::{self, CertificateKind};
use pentarot::fractal::{self, IfsSystem};
use pentarot::nfold::NFoldSystem;
use pentarot::render::{depth_fill, Svg};
use pentarot::suites::{self, SuiteOptions};
use pentarot::symbolic;

const EXIT_PERIODIC: u8 = 0;
const EXIT_APERIODIC: u8 = 10;
const EXIT_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const MAX_DEPTH: usize = 10;

#[derive(Parser)]
#[command(name = "pentarot", version, about = "Exact dynamics of the pentagonal piecewise rotation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MapKind {
    #[value(name = "T")]
    T,
    #[value(name = "Ttilde")]
    Ttilde,
    #[value(name = "S")]
    S,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RenderSet {
    #[value(name = "Y")]
    Y,
    #[value(name = "Yprime")]
    Yprime,
    #[value(name = "dual")]
    Dual,
    #[value(name = "D")]
    D,
    #[value(name = "orbit")]
    Orbit,
}

impl RenderSet {
    fn label(self) -> &'static str {
        match self {
            RenderSet::Y => "Y",
            RenderSet::Yprime => "Yprime",
            RenderSet::Dual => "dual",
            RenderSet::D => "D",
            RenderSet::Orbit => "orbit",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the T-orbit of a point is periodic (exit 0) or aperiodic (exit 10).
    Decide {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print an orbit segment.
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, value_enum, default_value = "T")]
        map: MapKind,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the Δ/Z coding, the a/b coding and the address of a point.
    Code {
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 40)]
        len: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw an attractor cover, a removal stage or an orbit as SVG.
    Render {
        #[arg(long, value_enum)]
        set: RenderSet,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Number of chaos-game or orbit points.
        #[arg(long = "N", default_value_t = 10_000)]
        n: usize,
        /// Chaos-game seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Start of the orbit for `--set orbit`.
        #[arg(long, allow_hyphen_values = true, default_value = "1/3")]
        point: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite; exits nonzero when it fails.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES.iter().copied().chain(["all"])))]
        suite: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        bound: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Periodic fraction of a grid scan of the n-fold lozenge map.
    Scan {
        #[arg(long, default_value_t = 5)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 100)]
        resolution: u32,
        #[arg(long, default_value_t = 10_000)]
        steps: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Failure(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            _ => EXIT_FAILURE,
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn failure<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Failure(e.to_string())
}

fn parse_point(s: &str) -> Result<Cyclo, CliError> {
    parse_cyclo(5, s).map_err(|e| CliError::Input(format!("bad point {s:?}: {e}")))
}

fn require_in_l(x: &Cyclo) -> Result<(), CliError> {
    if dynamics::in_l(x) {
        Ok(())
    } else {
        Err(CliError::Input(format!("point {x} is not in the lozenge L")))
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io { path: p.display().to_string(), source }),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{}", text.trim_end()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io { path: "stdout".into(), source: e }),
                _ => Ok(()),
            }
        }
    }
}

fn quoted(s: impl std::fmt::Display) -> String {
    format!("\"{}\"", s.to_string().replace('"', "\"\""))
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn reject_format(f: Format, allowed: &[Format]) -> Result<(), CliError> {
    if allowed.contains(&f) {
        Ok(())
    } else {
        Err(CliError::Input(format!("format {f:?} is not available for this command").to_lowercase()))
    }
}

fn decide(point: &str, format: Format, out: Option<&PathBuf>) -> Result<u8, CliError> {
    reject_format(format, &[Format::Json, Format::Csv])?;
    let x = parse_point(point)?;
    require_in_l(&x)?;
    let cert = dynamics::classify(&x).map_err(failure)?;
    let text = match format {
        Format::Csv => {
            let opt = |v: Option<String>| v.unwrap_or_default();
            format!(
                "point,kind,period,preperiod,cycle\n{},{},{},{},{}\n",
                quoted(&cert.point),
                kind_label(cert.kind),
                opt(cert.period.map(|p| p.to_string())),
                opt(cert.preperiod.map(|p| p.to_string())),
                opt(cert.cycle.map(|p| p.to_string())),
            )
        }
        _ => {
            let mut v = cert.to_json();
            v.as_object_mut().expect("object").insert("schema".into(), json!(1));
            json_text(&v)
        }
    };
    emit(&text, out)?;
    Ok(match cert.kind {
        CertificateKind::Periodic => EXIT_PERIODIC,
        CertificateKind::Aperiodic => EXIT_APERIODIC,
    })
}

fn kind_label(k: CertificateKind) -> &'static str {
    match k {
        CertificateKind::Periodic => "periodic",
        CertificateKind::Aperiodic => "aperiodic",
    }
}

fn orbit(point: &str, map: MapKind, steps: usize, format: Format, out: Option<&PathBuf>) -> Result<(), CliError> {
    reject_format(format, &[Format::Json, Format::Csv])?;
    let x = parse_point(point)?;
    let domain_ok = match map {
        MapKind::T | MapKind::S => dynamics::in_l(&x),
        MapKind::Ttilde => dynamics::in_tzed(&x),
    };
    if !domain_ok {
        return Err(CliError::Input(format!("point {x} is outside the domain of {map:?}")));
    }
    let mut pts = vec![x.clone()];
    let mut cur = x;
    let mut stopped = false;
    for _ in 0..steps {
        let next = match map {
            MapKind::T => Some(dynamics::step_t(&cur).map_err(failure)?),
            MapKind::Ttilde => Some(dynamics::step_ttilde(&cur).map_err(failure)?),
            MapKind::S => dynamics::step_s(&cur).map_err(failure)?,
        };
        match next {
            Some(n) => {
                pts.push(n.clone());
                cur = n;
            }
            None => {
                stopped = true;
                break;
            }
        }
    }
    let text = match format {
        Format::Csv => {
            let mut s = String::from("step,point,re,im\n");
            for (i, p) in pts.iter().enumerate() {
                let (re, im) = p.to_c64();
                s += &format!("{i},{},{re},{im}\n", quoted(p));
            }
            s
        }
        _ => json_text(&json!({
            "schema": 1,
            "map": format!("{map:?}"),
            "steps": pts.len() - 1,
            "undefined_after": stopped,
            "points": pts.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        })),
    };
    emit(&text, out)
}

fn code(point: &str, len: usize, format: Format, out: Option<&PathBuf>) -> Result<(), CliError> {
    reject_format(format, &[Format::Json, Format::Csv])?;
    let x = parse_point(point)?;
    require_in_l(&x)?;
    let d = symbolic::coding_d(&x, len).map_err(failure)?;
    let dt = if dynamics::in_tzed(&x) { Some(symbolic::coding_dtilde(&x, len).map_err(failure)?) } else { None };
    let addr = symbolic::address_of(&x, len).map_err(failure)?;
    let digits: String = addr.digits.iter().map(|d| char::from(b'0' + d)).collect();
    let text = match format {
        Format::Csv => format!("point,coding,coding_ab,address,truncated\n{},{d},{},{digits},{}\n", quoted(&x), dt.clone().unwrap_or_default(), addr.truncated),
        _ => json_text(&json!({
            "schema": 1,
            "point": x.to_string(),
            "len": len,
            "coding": d,
            "coding_ab": dt,
            "address": digits,
            "address_truncated": addr.truncated,
        })),
    };
    emit(&text, out)
}

fn render(set: RenderSet, depth: usize, n: usize, seed: u64, point: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    if depth > MAX_DEPTH {
        return Err(CliError::Input(format!("depth {depth} exceeds the maximum {MAX_DEPTH}")));
    }
    let svg = match set {
        RenderSet::Y | RenderSet::Yprime | RenderSet::Dual => {
            let system = match set {
                RenderSet::Y => IfsSystem::y(),
                RenderSet::Yprime => IfsSystem::yprime(),
                _ => IfsSystem::dual(),
            };
            let pieces = fractal::attractor_cover(&system, depth);
            let cloud = fractal::chaos_game(&system, n, seed);
            eprintln!("{}: {} pieces at depth {depth}, {} chaos-game points", set.label(), pieces.len(), cloud.len());
            let mut svg = Svg::new();
            let fill = depth_fill(depth, MAX_DEPTH);
            for p in &pieces {
                let pts: Vec<(f64, f64)> = p.polygon.vertices().iter().map(|v| v.to_c64()).collect();
                svg.polygon(&pts, &fill, "black");
            }
            svg.points(&cloud, 0.002, "navy");
            svg.finish()
        }
        RenderSet::D => {
            eprintln!("D: {} pentagons removed at stage {depth}", fractal::pentagon_removal(depth).len());
            fractal::removal_svg(depth)
        }
        RenderSet::Orbit => {
            let x = parse_point(point)?;
            require_in_l(&x)?;
            let mut pts = Vec::with_capacity(n);
            let mut cur = x;
            for _ in 0..n {
                pts.push(cur.to_c64());
                cur = dynamics::step_t(&cur).map_err(failure)?;
            }
            eprintln!("orbit: {} points", pts.len());
            fractal::cloud_svg(&pts, 0.002)
        }
    };
    let default = PathBuf::from(format!("{}_{depth}.svg", set.label()));
    emit(&svg, Some(out.unwrap_or(&default)))
}

fn verify(suite: &str, opts: &SuiteOptions, out: Option<&PathBuf>) -> Result<bool, CliError> {
    let names: Vec<&str> = if suite == "all" { suites::SUITES.to_vec() } else { vec![suite] };
    let mut reports = Vec::new();
    for name in names {
        let r = suites::run(name, opts).ok_or_else(|| CliError::Input(format!("unknown suite {name}")))?;
        eprintln!("{}: {}", r.suite, if r.passed { "pass" } else { "FAIL" });
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.passed);
    let v = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        json!({ "schema": 1, "passed": passed, "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>() })
    };
    emit(&json_text(&v), out)?;
    Ok(passed)
}

fn scan(n: u32, k: u32, resolution: u32, steps: u64, format: Format, out: Option<&PathBuf>) -> Result<(), CliError> {
    reject_format(format, &[Format::Json, Format::Csv])?;
    if resolution == 0 {
        return Err(CliError::Input("resolution must be positive".into()));
    }
    let sys = NFoldSystem::new(n, k).map_err(input)?;
    let report = sys.scan_periodic_fraction(resolution, steps);
    eprintln!("{n}-fold k={k}: {}/{} periodic ({:.4})", report.periodic, report.total, report.fraction);
    let text = match format {
        Format::Csv => report.to_csv(),
        _ => {
            let mut v = serde_json::to_value(&report).map_err(failure)?;
            v.as_object_mut().expect("object").insert("schema".into(), json!(1));
            json_text(&v)
        }
    };
    emit(&text, out)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Decide { point, format, out } => decide(&point, format, out.as_ref()),
        Command::Orbit { point, map, steps, format, out } => orbit(&point, map, steps, format, out.as_ref()).map(|_| 0),
        Command::Code { point, len, format, out } => code(&point, len, format, out.as_ref()).map(|_| 0),
        Command::Render { set, depth, n, seed, point, out } => render(set, depth, n, seed, &point, out.as_ref()).map(|_| 0),
        Command::Verify { suite, samples, seed, bound, out } => {
            let ok = verify(&suite, &SuiteOptions { samples, seed, bound }, out.as_ref())?;
            Ok(if ok { 0 } else { EXIT_FAILURE })
        }
        Command::Scan { n, k, resolution, steps, format, out } => scan(n, k, resolution, steps, format, out.as_ref()).map(|_| 0),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
