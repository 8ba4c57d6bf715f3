//! Command-line interface of the `boxehvi` binary.

pub mod io;
pub mod speed;

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::benchmarks::{dtlz, dtlz_reference, random_front, FrontKind, FrontSpec};
use crate::criteria::{self, mc_ehvi, mc_poi, GaussPred};
use crate::decomposition::{self, BoxPartition};
use crate::mobgo::{self, Criterion, RunConfig, RunOutput};
use crate::par::Execution;
use crate::pareto::{hvi, hypervolume, ParetoApprox, RefPoint};
use io::{fmt_f64, json_f64, json_to_vec, json_vec, parse_vec, read_front, write_csv};

/// Exit status of `mc-validate` when the z-score exceeds the threshold.
pub const EXIT_DISAGREE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "boxehvi", version, about = "Exact EHVI and PoI by box decomposition, with a MOBGO driver")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Seed of every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (a directory for mobgo-run); standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Partitioner {
    /// Slices for d = 2, sweep for d = 3, local lower bounds otherwise.
    Auto,
    #[value(name = "2d")]
    TwoD,
    #[value(name = "3d")]
    ThreeD,
    /// Local lower bound boxes in any dimension.
    Dd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CriterionArg {
    Ehvi,
    Poi,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Ehvi => Criterion::Ehvi,
            CriterionArg::Poi => Criterion::Poi,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Concave,
    Convex,
}

impl From<KindArg> for FrontKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Concave => FrontKind::ConcaveSpherical,
            KindArg::Convex => FrontKind::ConvexSpherical,
        }
    }
}

/// Front file and reference point.
#[derive(Debug, Clone, Args)]
pub struct FrontArgs {
    /// Front file: CSV rows (optional header) or a JSON array of points.
    #[arg(long)]
    pub front: PathBuf,
    /// Reference point, comma separated; `-inf` allowed where noted.
    #[arg(long = "ref", allow_hyphen_values = true)]
    pub reference: Option<String>,
}

/// Predictive distribution, by flags or a JSON file.
#[derive(Debug, Clone, Args)]
pub struct PredArgs {
    /// Predictive means, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Predictive standard deviations, comma separated.
    #[arg(long)]
    pub sigma: Option<String>,
    /// JSON file with `mu`, `sigma` and optionally `ref`; flags override it.
    #[arg(long)]
    pub pred: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Box partition of the non-dominated space, one box per row.
    Decompose {
        #[command(flatten)]
        front: FrontArgs,
        #[arg(long, value_enum, default_value_t = Partitioner::Auto)]
        algorithm: Partitioner,
    },
    /// Hypervolume of the front.
    Hv {
        #[command(flatten)]
        front: FrontArgs,
    },
    /// Hypervolume improvement of one point.
    Hvi {
        #[command(flatten)]
        front: FrontArgs,
        /// Candidate objective vector.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Exact expected hypervolume improvement.
    Ehvi {
        #[command(flatten)]
        front: FrontArgs,
        #[command(flatten)]
        pred: PredArgs,
        #[arg(long, value_enum, default_value_t = Partitioner::Auto)]
        algorithm: Partitioner,
    },
    /// Exact probability of improvement; the reference point is not used.
    Poi {
        #[command(flatten)]
        front: FrontArgs,
        #[command(flatten)]
        pred: PredArgs,
    },
    /// Exact value next to a Monte Carlo estimate; exits with status 3 when |z| exceeds the threshold.
    McValidate {
        #[command(flatten)]
        front: FrontArgs,
        #[command(flatten)]
        pred: PredArgs,
        #[arg(long, value_enum, default_value_t = CriterionArg::Ehvi)]
        criterion: CriterionArg,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 4.0)]
        threshold: f64,
    },
    /// Random mutually non-dominated front.
    GenFront {
        #[arg(long, value_enum, default_value_t = KindArg::Concave)]
        kind: KindArg,
        /// Number of objectives.
        #[arg(long)]
        d: usize,
        /// Number of points.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
    },
    /// Mean exact EHVI time per front size; with --out, metadata goes to `<out>.meta.json`.
    BenchSpeed {
        /// Objective counts, comma separated, each in 2..=5.
        #[arg(long, default_value = "2,3")]
        d: String,
        /// Front sizes, comma separated.
        #[arg(long, default_value = "10,20,50,100,200")]
        n: String,
        #[arg(long, value_enum, default_value_t = KindArg::Concave)]
        kind: KindArg,
        /// Fronts per (d, n).
        #[arg(long, default_value_t = 10)]
        reps: usize,
        /// Use the general decomposition instead of the dedicated 2-D and 3-D paths.
        #[arg(long)]
        general: bool,
        /// Time repetitions in parallel, each on its own worker.
        #[arg(long)]
        parallel: bool,
    },
    /// Optimization run on a DTLZ problem; writes archive.csv, history.csv and config.json into --out.
    MobgoRun {
        /// Problem name, dtlz1 to dtlz7.
        #[arg(long, default_value = "dtlz2")]
        problem: String,
        /// Number of decision variables.
        #[arg(long, default_value_t = 6)]
        m: usize,
        /// Number of objectives.
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, value_enum, default_value_t = CriterionArg::Ehvi)]
        criterion: CriterionArg,
        /// Initial Latin hypercube size, counted in --tc.
        #[arg(long, default_value_t = 30)]
        eta: usize,
        /// Total number of evaluations.
        #[arg(long, default_value_t = 300)]
        tc: usize,
        /// Reference point in the problem's minimization coordinates.
        #[arg(long = "ref", allow_hyphen_values = true)]
        reference: Option<String>,
        /// Criterion evaluations per proposal.
        #[arg(long, default_value_t = 2000)]
        inner_budget: usize,
        /// Likelihood evaluations when hyperparameters are re-tuned.
        #[arg(long, default_value_t = 1000)]
        kriging_budget: usize,
        /// Iterations between hyperparameter re-tunes.
        #[arg(long, default_value_t = 10)]
        retune_every: usize,
        /// Run surrogate fits and the inner search sequentially.
        #[arg(long)]
        sequential: bool,
    },
}

fn sink(out: &Option<PathBuf>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn reference(front: &FrontArgs, fallback: Option<Vec<f64>>, d: usize) -> anyhow::Result<RefPoint> {
    let coords = match (&front.reference, fallback) {
        (Some(s), _) => parse_vec(s)?,
        (None, Some(v)) => v,
        (None, None) => bail!("--ref is required"),
    };
    if coords.len() != d {
        bail!("reference point has {} coordinates, front has {d}", coords.len());
    }
    Ok(RefPoint::new(coords)?)
}

fn prediction(args: &PredArgs) -> anyhow::Result<(GaussPred, Option<Vec<f64>>)> {
    let file: Option<Value> = match &args.pred {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            Some(serde_json::from_str(&text).with_context(|| format!("{} is not JSON", p.display()))?)
        }
        None => None,
    };
    let field = |name: &str, flag: &Option<String>| -> anyhow::Result<Vec<f64>> {
        if let Some(s) = flag {
            return Ok(parse_vec(s)?);
        }
        match file.as_ref().and_then(|v| v.get(name)) {
            Some(v) => Ok(json_to_vec(v)?),
            None => bail!("--{name} is required"),
        }
    };
    let mu = field("mu", &args.mu)?;
    let sigma = field("sigma", &args.sigma)?;
    let r = match file.as_ref().and_then(|v| v.get("ref")) {
        Some(v) => Some(json_to_vec(v)?),
        None => None,
    };
    Ok((GaussPred::new(mu, sigma)?, r))
}

fn write_value(common: &Common, name: &str, v: f64) -> anyhow::Result<()> {
    let mut w = sink(&common.out)?;
    match common.format {
        Format::Csv => writeln!(w, "{}", fmt_f64(v))?,
        Format::Json => writeln!(w, "{}", json!({ name: json_f64(v) }))?,
    }
    w.flush()?;
    Ok(())
}

fn partition_with(p: &ParetoApprox, r: &RefPoint, alg: Partitioner) -> anyhow::Result<BoxPartition> {
    Ok(match alg {
        Partitioner::Auto => decomposition::partition(p, r)?,
        Partitioner::TwoD => decomposition::partition_2d(p, r)?,
        Partitioner::ThreeD => decomposition::partition_3d(p, r)?,
        Partitioner::Dd => {
            p.check_reference(r)?;
            decomposition::partition_dd(p, r)
        }
    })
}

fn write_partition(common: &Common, part: &BoxPartition) -> anyhow::Result<()> {
    let d = part.dim();
    let mut w = sink(&common.out)?;
    match common.format {
        Format::Csv => {
            let header: Vec<String> = (1..=d)
                .map(|k| format!("l_{k}"))
                .chain((1..=d).map(|k| format!("u_{k}")))
                .collect();
            let rows: Vec<Vec<String>> = part
                .boxes()
                .iter()
                .map(|b| b.lower.iter().chain(&b.upper).map(|&x| fmt_f64(x)).collect())
                .collect();
            write_csv(&mut w, &header, &rows)?;
        }
        Format::Json => {
            let boxes: Vec<Value> = part
                .boxes()
                .iter()
                .map(|b| json!({ "lower": json_vec(&b.lower), "upper": json_vec(&b.upper) }))
                .collect();
            let v = json!({ "dim": d, "front_size": part.source_front_size(), "boxes": boxes });
            writeln!(w, "{}", serde_json::to_string_pretty(&v)?)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn write_front(common: &Common, p: &ParetoApprox) -> anyhow::Result<()> {
    let mut w = sink(&common.out)?;
    match common.format {
        Format::Csv => {
            let header: Vec<String> = (1..=p.dim()).map(|k| format!("y_{k}")).collect();
            let rows: Vec<Vec<String>> = p
                .points()
                .iter()
                .map(|q| q.iter().map(|&x| fmt_f64(x)).collect())
                .collect();
            write_csv(&mut w, &header, &rows)?;
        }
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&io::points_json(p.points()))?)?,
    }
    w.flush()?;
    Ok(())
}

/// z-score of `estimate` against `exact`; zero when they coincide.
pub fn z_score(exact: f64, estimate: f64, std_error: f64) -> f64 {
    let diff = estimate - exact;
    if diff == 0.0 {
        0.0
    } else if std_error > 0.0 {
        diff / std_error
    } else {
        diff.signum() * f64::INFINITY
    }
}

fn mc_validate(
    common: &Common,
    front: &FrontArgs,
    pred: &PredArgs,
    criterion: CriterionArg,
    samples: usize,
    threshold: f64,
) -> anyhow::Result<bool> {
    let p = read_front(&front.front)?;
    let (g, file_ref) = prediction(pred)?;
    let (exact, est) = match criterion {
        CriterionArg::Ehvi => {
            let r = reference(front, file_ref, p.dim())?;
            (criteria::ehvi(&g, &p, &r)?, mc_ehvi(&g, &p, &r, samples, common.seed)?)
        }
        CriterionArg::Poi => (criteria::poi(&g, &p)?, mc_poi(&g, &p, samples, common.seed)?),
    };
    let z = z_score(exact, est.value, est.std_error);
    let mut w = sink(&common.out)?;
    let name = Criterion::from(criterion).to_string();
    match common.format {
        Format::Csv => {
            let header = ["criterion", "exact", "estimate", "std_error", "samples", "z"].map(String::from);
            let row = vec![
                name,
                fmt_f64(exact),
                fmt_f64(est.value),
                fmt_f64(est.std_error),
                est.samples.to_string(),
                fmt_f64(z),
            ];
            write_csv(&mut w, &header, &[row])?;
        }
        Format::Json => {
            let v = json!({
                "criterion": name,
                "exact": json_f64(exact),
                "estimate": json_f64(est.value),
                "std_error": json_f64(est.std_error),
                "samples": est.samples,
                "z": json_f64(z),
            });
            writeln!(w, "{v}")?;
        }
    }
    w.flush()?;
    Ok(z.abs() <= threshold)
}

fn bench_speed(common: &Common, plan: &speed::SpeedPlan) -> anyhow::Result<()> {
    let rows = speed::run(plan)?;
    let mut w = sink(&common.out)?;
    match common.format {
        Format::Csv => {
            let header = ["d", "n", "kind", "algorithm", "mean_seconds", "repetitions", "mean_boxes", "checksum"]
                .map(String::from);
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.d.to_string(),
                        r.n.to_string(),
                        r.kind.to_string(),
                        r.algorithm.to_string(),
                        fmt_f64(r.mean_seconds),
                        r.repetitions.to_string(),
                        fmt_f64(r.mean_boxes),
                        fmt_f64(r.checksum),
                    ]
                })
                .collect();
            write_csv(&mut w, &header, &body)?;
        }
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&rows)?)?,
    }
    w.flush()?;
    if let Some(out) = &common.out {
        let mut meta = out.clone().into_os_string();
        meta.push(".meta.json");
        let stamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        let v = json!({
            "timestamp_unix": stamp,
            "machine": {
                "os": std::env::consts::OS,
                "arch": std::env::consts::ARCH,
                "available_parallelism": std::thread::available_parallelism().map_or(1, |n| n.get()),
            },
            "seed": plan.seed,
            "repetitions": plan.reps,
            "parallel": plan.exec == Execution::Parallel,
            "prediction": { "mu": speed::MU, "sigma": speed::SIGMA },
            "reference": 0.0,
        });
        fs::write(&meta, serde_json::to_string_pretty(&v)? + "\n")?;
    }
    Ok(())
}

fn write_run(dir: &Path, out: &RunOutput, config: &Value) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let entries = out.archive.entries();
    if let Some((x, y)) = entries.first() {
        let header: Vec<String> = (1..=x.len())
            .map(|k| format!("x_{k}"))
            .chain((1..=y.len()).map(|k| format!("f_{k}")))
            .collect();
        // Objectives are stored in the problem's minimization coordinates.
        let rows: Vec<Vec<String>> = entries
            .iter()
            .map(|(x, y)| x.iter().map(|&v| fmt_f64(v)).chain(y.iter().map(|&v| fmt_f64(-v))).collect())
            .collect();
        write_csv(File::create(dir.join("archive.csv"))?, &header, &rows)?;
    }
    let rows: Vec<Vec<String>> = out
        .history
        .iter()
        .map(|(g, hv)| vec![g.to_string(), fmt_f64(*hv)])
        .collect();
    write_csv(File::create(dir.join("history.csv"))?, &["g".into(), "hv".into()], &rows)?;
    fs::write(dir.join("config.json"), serde_json::to_string_pretty(config)? + "\n")?;
    if !out.log.is_empty() {
        fs::write(dir.join("log.txt"), out.log.join("\n") + "\n")?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn mobgo_run(
    common: &Common,
    problem: &str,
    m: usize,
    d: usize,
    criterion: CriterionArg,
    eta: usize,
    tc: usize,
    reference: &Option<String>,
    budgets: (usize, usize, usize),
    sequential: bool,
) -> anyhow::Result<()> {
    let Some(dir) = &common.out else {
        bail!("mobgo-run needs --out DIR");
    };
    let id: u32 = problem
        .to_ascii_lowercase()
        .strip_prefix("dtlz")
        .and_then(|s| s.parse().ok())
        .with_context(|| format!("unknown problem '{problem}'"))?;
    let prob = dtlz(id, m, d)?;
    let r_min = match reference {
        Some(s) => parse_vec(s)?,
        None => match dtlz_reference(id) {
            Some(r) if d == 3 => r.to_vec(),
            _ => bail!("--ref is required for {problem} with {d} objectives"),
        },
    };
    let r = RefPoint::new(r_min.iter().map(|v| -v).collect())?;
    let mut cfg = RunConfig::new(eta, tc, criterion.into(), r, common.seed);
    (cfg.inner_budget, cfg.kriging_budget, cfg.retune_every) = budgets;
    if sequential {
        cfg.exec = Execution::Sequential;
    }
    let config = json!({
        "problem": prob.name(),
        "m": m,
        "d": d,
        "criterion": cfg.criterion.to_string(),
        "eta": eta,
        "tc": tc,
        "seed": common.seed,
        "ref": json_vec(&r_min),
        "inner_budget": cfg.inner_budget,
        "kriging_budget": cfg.kriging_budget,
        "retune_every": cfg.retune_every,
    });
    match mobgo::run(&prob, &cfg) {
        Ok(out) => write_run(dir, &out, &config),
        Err(fail) => {
            write_run(dir, &fail.partial, &config)?;
            Err(fail.error).context(format!(
                "run stopped after {} evaluations",
                fail.partial.archive.len()
            ))
        }
    }
}

/// Runs one parsed command. `Ok(false)` means a validation disagreement.
pub fn execute(cli: &Cli) -> anyhow::Result<bool> {
    let common = &cli.common;
    match &cli.command {
        Command::Decompose { front, algorithm } => {
            let p = read_front(&front.front)?;
            let r = reference(front, None, p.dim())?;
            write_partition(common, &partition_with(&p, &r, *algorithm)?)?;
        }
        Command::Hv { front } => {
            let p = read_front(&front.front)?;
            let r = reference(front, None, p.dim())?;
            write_value(common, "hv", hypervolume(&p, &r)?)?;
        }
        Command::Hvi { front, point } => {
            let p = read_front(&front.front)?;
            let r = reference(front, None, p.dim())?;
            write_value(common, "hvi", hvi(&parse_vec(point)?, &p, &r)?)?;
        }
        Command::Ehvi { front, pred, algorithm } => {
            let p = read_front(&front.front)?;
            let (g, file_ref) = prediction(pred)?;
            let r = reference(front, file_ref, p.dim())?;
            let v = match algorithm {
                Partitioner::Auto => criteria::ehvi(&g, &p, &r)?,
                Partitioner::TwoD => criteria::ehvi_2d(&g, &p, &r)?,
                Partitioner::ThreeD => criteria::ehvi_3d(&g, &p, &r)?,
                Partitioner::Dd => criteria::ehvi_dd(&g, &p, &r)?,
            };
            write_value(common, "ehvi", v)?;
        }
        Command::Poi { front, pred } => {
            let p = read_front(&front.front)?;
            let (g, _) = prediction(pred)?;
            write_value(common, "poi", criteria::poi(&g, &p)?)?;
        }
        Command::McValidate {
            front,
            pred,
            criterion,
            samples,
            threshold,
        } => return mc_validate(common, front, pred, *criterion, *samples, *threshold),
        Command::GenFront { kind, d, n, radius } => {
            let mut spec = FrontSpec::new((*kind).into(), *d, *n, common.seed);
            spec.radius = *radius;
            write_front(common, &random_front(spec)?)?;
        }
        Command::BenchSpeed {
            d,
            n,
            kind,
            reps,
            general,
            parallel,
        } => {
            let ints = |s: &str| -> anyhow::Result<Vec<usize>> {
                s.split(',')
                    .map(|t| t.trim().parse::<usize>().with_context(|| format!("'{t}' is not a count")))
                    .collect()
            };
            let plan = speed::SpeedPlan {
                ds: ints(d)?,
                ns: ints(n)?,
                kind: (*kind).into(),
                algorithm: if *general { speed::Algorithm::Dd } else { speed::Algorithm::Auto },
                reps: *reps,
                seed: common.seed,
                exec: if *parallel { Execution::Parallel } else { Execution::Sequential },
            };
            bench_speed(common, &plan)?;
        }
        Command::MobgoRun {
            problem,
            m,
            d,
            criterion,
            eta,
            tc,
            reference,
            inner_budget,
            kriging_budget,
            retune_every,
            sequential,
        } => mobgo_run(
            common,
            problem,
            *m,
            *d,
            *criterion,
            *eta,
            *tc,
            reference,
            (*inner_budget, *kriging_budget, *retune_every),
            *sequential,
        )?,
    }
    Ok(true)
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_DISAGREE),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
