use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use gaussmap_core::exact::rational;
use gaussmap_core::gaussian::quadric::QuadricI2;
use gaussmap_core::gaussian::{
    kernel_via_equations, kernel_via_polynomial_oracle, max_level, rank_rows,
};
use gaussmap_core::schiffer::pairing::{vanishing_threshold_auto, DerivativePairing};
use gaussmap_core::schiffer::rho::rho_from_pairing;
use gaussmap_core::verify::{run_suite, SuiteConfig, SUITES};
use gaussmap_core::Curve;

mod render;

use render::Format;

#[derive(Parser)]
#[command(name = "gaussmap", version, about = "Exact higher Gaussian maps on hyperelliptic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ranks and kernel dimensions of mu_2k against the closed formulas
    RankTable {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Canonical basis of Ker mu_2k in a-coordinates
    Kernel {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Equations)]
        method: MethodArg,
    },
    /// Run one theorem suite
    Verify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        suite: SuiteArgs,
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Licensed value of rho(Q)(xi^n . xi^r)
    Rho {
        #[command(flatten)]
        common: Common,
        /// basis:I,J | kernel:K:INDEX | JSON object {"i,j": "p/q"} | path to such a file
        #[arg(long)]
        quadric: String,
        #[arg(long, num_args = 2, value_names = ["N", "R"])]
        pair: Vec<usize>,
        #[arg(long)]
        curve: Option<String>,
    },
    /// Classify sampled and corner directions in V
    Scan {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        suite: SuiteArgs,
    },
}

#[derive(Args)]
struct Common {
    /// genus N or range A..B
    #[arg(long = "g")]
    genus: String,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// add wall-clock timing to the report (breaks byte-identical reruns)
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct SuiteArgs {
    /// inline comma-separated branch points or a JSON file {"branch_points": [...]}
    #[arg(long)]
    curve: Option<String>,
    /// seeded random curves per genus in addition to the default curve
    #[arg(long, default_value_t = 0)]
    random_curves: usize,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Equations,
    Oracle,
    Both,
}

/// Usage or configuration problem: exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("gaussmap: {msg}");
            ExitCode::from(2)
        }
    }
}

fn max_genus() -> Result<usize, Usage> {
    match std::env::var("GAUSSMAP_MAX_GENUS") {
        Ok(v) => v
            .parse()
            .map_err(|_| Usage(format!("GAUSSMAP_MAX_GENUS must be an integer, got {v:?}"))),
        Err(_) => Ok(12),
    }
}

fn parse_genus(s: &str) -> Result<(usize, usize), Usage> {
    let bad = || Usage(format!("--g expects N or A..B, got {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    let cap = max_genus()?;
    if a < 3 || a > b || b > cap {
        return Err(Usage(format!("genus range {a}..{b} must satisfy 3 <= A <= B <= {cap}")));
    }
    Ok((a, b))
}

fn single_genus(s: &str) -> Result<usize, Usage> {
    let (a, b) = parse_genus(s)?;
    if a != b {
        return Err(Usage(format!("this command takes a single genus, got {s:?}")));
    }
    Ok(a)
}

fn parse_curve(spec: &str, g: usize) -> Result<Curve, Usage> {
    let path = PathBuf::from(spec);
    let curve = if path.is_file() {
        let text = std::fs::read_to_string(&path)?;
        serde_json::from_str::<Curve>(&text)?
    } else {
        let pts = spec
            .split(',')
            .map(|t| rational::parse(t.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        Curve::new(pts)?
    };
    if curve.genus() != g {
        return Err(Usage(format!("curve has genus {}, expected {g}", curve.genus())));
    }
    Ok(curve)
}

fn suite_config(g_min: usize, g_max: usize, args: &SuiteArgs) -> Result<SuiteConfig, Usage> {
    let mut cfg = SuiteConfig::new(g_min, g_max)
        .with_random_curves(args.random_curves)
        .with_samples(args.samples, args.seed);
    if let Some(spec) = &args.curve {
        if g_min != g_max {
            return Err(Usage("--curve needs a single genus".into()));
        }
        cfg = cfg.with_curve(parse_curve(spec, g_min)?);
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<bool, Usage> {
    let started = Instant::now();
    let (common, pass, value) = match cli.command {
        Command::RankTable { common, k } => {
            let (a, b) = parse_genus(&common.genus)?;
            let rows: Vec<_> = (a..=b)
                .flat_map(rank_rows)
                .filter(|r| k.is_none_or(|k| r.k == k))
                .collect();
            if rows.is_empty() {
                return Err(Usage("no rows: --k is beyond every level in range".into()));
            }
            let pass = rows.iter().all(|r| r.rank_formula_ok);
            let v = json!({
                "command": "rank-table",
                "version": env!("CARGO_PKG_VERSION"),
                "pass": pass,
                "rows": rows,
            });
            (common, pass, v)
        }
        Command::Kernel { common, k, method } => {
            let g = single_genus(&common.genus)?;
            if k > max_level(g) {
                return Err(Usage(format!("k = {k} beyond the last level {} for genus {g}", max_level(g))));
            }
            let eq = (method != MethodArg::Oracle).then(|| kernel_via_equations(g, k));
            let or = (method != MethodArg::Equations).then(|| kernel_via_polynomial_oracle(g, k));
            let agree = match (&eq, &or) {
                (Some(a), Some(b)) => Some(a == b),
                _ => None,
            };
            let level = eq.as_ref().or(or.as_ref()).expect("one method always runs");
            let mut v = json!({
                "command": "kernel",
                "version": env!("CARGO_PKG_VERSION"),
                "genus": g,
                "k": k,
                "method": match method {
                    MethodArg::Equations => "equations",
                    MethodArg::Oracle => "oracle",
                    MethodArg::Both => "both",
                },
                "dim": level.dim,
                "basis": level.basis_maps(),
            });
            if let Some(a) = agree {
                v["methods_agree"] = json!(a);
            }
            (common, agree.unwrap_or(true), v)
        }
        Command::Verify { common, suite, theorem, k } => {
            if !SUITES.contains(&theorem.as_str()) {
                return Err(Usage(format!(
                    "unknown theorem id {theorem:?}; known: {}",
                    SUITES.join(", ")
                )));
            }
            let (a, b) = parse_genus(&common.genus)?;
            let mut cfg = suite_config(a, b, &suite)?;
            if let Some(k) = k {
                cfg = cfg.with_k(k);
            }
            let report = run_suite(&theorem, &cfg)?;
            (common, report.pass, serde_json::to_value(&report)?)
        }
        Command::Rho { common, quadric, pair, curve } => {
            let g = single_genus(&common.genus)?;
            let curve = match curve {
                Some(spec) => parse_curve(&spec, g)?,
                None => Curve::default_for_genus(g)?,
            };
            let q = parse_quadric(&quadric, g)?;
            let (n, r) = (pair[0], pair[1]);
            if n % 2 == 0 || r % 2 == 0 {
                return Err(Usage(format!("pair indices must be odd, got ({n}, {r})")));
            }
            let d = DerivativePairing::compute(&q, &curve, n + r)?;
            let threshold = vanishing_threshold_auto(&q, &curve, (n + r) / 4)?;
            let mut v = json!({
                "command": "rho",
                "version": env!("CARGO_PKG_VERSION"),
                "genus": g,
                "curve": curve,
                "quadric": q.a_map(),
                "pair": [n, r],
                "threshold": threshold,
            });
            match rho_from_pairing(&d, n, r) {
                Ok(val) => v["result"] = serde_json::to_value(val)?,
                Err(e) => v["error"] = json!({"code": e.code(), "message": e.to_string()}),
            }
            (common, true, v)
        }
        Command::Scan { common, suite } => {
            let (a, b) = parse_genus(&common.genus)?;
            if a < 4 {
                return Err(Usage("scan needs genus >= 4 (V must contain xi^3)".into()));
            }
            let cfg = suite_config(a, b, &suite)?;
            let report = run_suite("T6.12", &cfg)?;
            let mut counts = BTreeMap::new();
            for c in &report.certificates {
                *counts
                    .entry(serde_json::to_value(c.verdict)?.as_str().unwrap_or("").to_string())
                    .or_insert(0usize) += 1;
            }
            let mut v = serde_json::to_value(&report)?;
            v["command"] = json!("scan");
            v["verdicts"] = json!(counts);
            (common, report.pass, v)
        }
    };
    let mut value = value;
    if common.timing {
        value["timing_ms"] = json!(started.elapsed().as_millis() as u64);
    }
    let text = render::render(&value, common.format.unwrap_or(Format::Json))?;
    match &common.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(pass)
}

fn parse_quadric(spec: &str, g: usize) -> Result<QuadricI2, Usage> {
    if let Some(rest) = spec.strip_prefix("basis:") {
        let (i, j) = rest
            .split_once(',')
            .ok_or_else(|| Usage(format!("basis quadric expects basis:I,J, got {spec:?}")))?;
        return Ok(QuadricI2::basis(g, i.trim().parse()?, j.trim().parse()?)?);
    }
    if let Some(rest) = spec.strip_prefix("kernel:") {
        let (k, idx) = rest
            .split_once(':')
            .ok_or_else(|| Usage(format!("kernel quadric expects kernel:K:INDEX, got {spec:?}")))?;
        let (k, idx): (usize, usize) = (k.trim().parse()?, idx.trim().parse()?);
        if k > max_level(g) {
            return Err(Usage(format!("k = {k} beyond the last level for genus {g}")));
        }
        let level = kernel_via_equations(g, k);
        return level
            .quadrics()
            .into_iter()
            .nth(idx)
            .ok_or_else(|| Usage(format!("Ker mu_{} has only {} basis vectors", 2 * k, level.dim)));
    }
    let text = if PathBuf::from(spec).is_file() {
        std::fs::read_to_string(spec)?
    } else {
        spec.to_string()
    };
    let map: BTreeMap<String, String> = serde_json::from_str(&text)?;
    Ok(QuadricI2::from_a_map(g, &map)?)
}
