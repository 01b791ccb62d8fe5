//! Command-line driver.
//!
//! [`run`] parses the arguments, executes one subcommand and returns the exit
//! code together with everything meant for stdout and stderr, so the binary
//! is a thin wrapper and the commands can be tested in-process.
//!
//! Exit codes: 0 success, 1 usage, 2 parse, 3 capacity, 4 uncovered.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cover::{CycleCover, HamiltonianCycle};
use crate::decompose::{self, DecompositionConfig};
use crate::error::{Error, Result};
use crate::format::{parse_cover, parse_instance, write_instance};
use crate::generate::random_instance;
use crate::instance::{Direction, EdgeWeights, Instance};
use crate::maxtsp::{self, amplify, patch_collection, AlgoConfig};
use crate::oracle::{self, OracleReport, TightnessBudget};
use crate::pareto::ParetoSet;
use crate::weight::{ratio, Rational, WeightVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_UNCOVERED: i32 = 4;

/// Version of the `--json` report layout.
pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "mctsp", version, about = "Approximate Pareto curves for multi-criteria Max-TSP")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a random instance to stdout.
    Generate {
        #[arg(long, value_parser = parse_direction)]
        direction: Direction,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        max_weight: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compute an approximate Pareto curve of tours.
    Solve(SolveArgs),
    /// Compute exact Pareto curves by enumeration.
    Oracle {
        file: PathBuf,
        /// Also list the Pareto curve of cycle covers.
        #[arg(long)]
        covers: bool,
        #[arg(long)]
        json: bool,
    },
    /// Decompose a cycle cover into paths.
    Decompose {
        file: PathBuf,
        /// Cover file: `COVER <n>` then one cycle per line.
        #[arg(long)]
        cover: PathBuf,
        /// Fraction to keep; defaults to the method's guarantee.
        #[arg(long, value_parser = parse_rational)]
        alpha: Option<Rational>,
        #[arg(long, value_enum, default_value_t = Method::Lightweight)]
        method: Method,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Solve, compare with the exact curve, exit 4 if something is uncovered.
    Verify(SolveArgs),
    /// Search small covers whose best decomposition is as poor as possible.
    Tightness {
        #[arg(long, value_parser = parse_direction)]
        direction: Direction,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 4)]
        max_units: usize,
        #[arg(long, default_value_t = 4)]
        max_grid: u64,
        #[arg(long, default_value_t = 2_000_000)]
        max_covers: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args, Debug)]
pub struct SolveArgs {
    pub file: PathBuf,
    /// Accuracy, as a fraction `p/q` or a decimal.
    #[arg(long, value_parser = parse_rational, default_value = "1/10")]
    pub epsilon: Rational,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Decompose light covers with the randomized search.
    #[arg(long)]
    pub randomized_decomp: bool,
    /// Union of this many runs with consecutive seeds.
    #[arg(long, default_value_t = 1)]
    pub amplify: usize,
    #[arg(long)]
    pub json: bool,
    /// Check the result against the exact tour curve.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Lightweight,
    Randomized,
    Bicriteria,
    K3,
    LongCycles,
}

fn parse_direction(s: &str) -> std::result::Result<Direction, String> {
    s.parse::<Direction>().map_err(|_| format!("expected `directed` or `undirected`, got `{s}`"))
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.1` into an
/// exact fraction.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let bad = || format!("expected a fraction like 1/10 or 0.1, got `{s}`");
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(ratio(p, q));
    }
    let (neg, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    if int.starts_with(['-', '+']) || (int.is_empty() && frac.is_empty()) {
        return Err(bad());
    }
    let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
    let den = 10i64.pow(frac.len() as u32);
    let num = if frac.is_empty() { 0 } else { frac.parse::<i64>().map_err(|_| bad())? };
    let value = ratio(int * den + num, den);
    Ok(if neg { -value } else { value })
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => EXIT_PARSE,
        Error::Capacity { .. } => EXIT_CAPACITY,
        _ => EXIT_USAGE,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Runs one command, returning the exit code and stdout text.
pub fn execute(cmd: &Command) -> Result<(i32, String)> {
    match cmd {
        Command::Generate { direction, n, k, max_weight, seed } => {
            let inst = random_instance(*direction, *n, *k, *max_weight, *seed)?;
            Ok((EXIT_OK, write_instance(&inst)))
        }
        Command::Solve(args) => cmd_solve(args, args.verify),
        Command::Verify(args) => cmd_solve(args, true),
        Command::Oracle { file, covers, json } => cmd_oracle(file, *covers, *json),
        Command::Decompose { file, cover, alpha, method, seed, json } => {
            cmd_decompose(file, cover, *alpha, *method, *seed, *json)
        }
        Command::Tightness { direction, k, max_units, max_grid, max_covers, json } => {
            let budget = TightnessBudget {
                max_units: *max_units,
                max_grid: *max_grid,
                max_covers: *max_covers,
                // no light cover does worse than the guaranteed fraction
                stop_at: Some(decompose::guaranteed_alpha(*direction, *k)),
            };
            cmd_tightness(*direction, *k, &budget, *json)
        }
    }
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    Ok(parse_instance(&read(path)?)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn sorted_tours(set: &ParetoSet<HamiltonianCycle>) -> Vec<(&HamiltonianCycle, &WeightVector)> {
    let mut v: Vec<_> = set.iter().map(|(t, w)| (t, w)).collect();
    v.sort_by(|a, b| (a.1, a.0.order()).cmp(&(b.1, b.0.order())));
    v
}

fn tour_json(t: &HamiltonianCycle, w: &WeightVector) -> Value {
    json!({ "order": t.order(), "weight": w })
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn report_json<T>(r: &OracleReport<T>, sol: impl Fn(&T) -> Value) -> Value {
    json!({
        "instance_digest": r.instance_digest,
        "ratio": r.ratio.to_string(),
        "covered": r.covered,
        "oracle_vectors": r.oracle_vectors,
        "algorithm_vectors": r.algorithm_vectors,
        "witness": r.witness.as_ref().map(|w| json!({
            "solution": sol(&w.solution),
            "weight": w.vector,
            "failing_objective": w.failing_objective,
        })),
    })
}

/// Exit code 4 when verification was requested and failed.
pub fn cmd_solve(args: &SolveArgs, verify: bool) -> Result<(i32, String)> {
    let inst = load_instance(&args.file)?;
    let cfg = AlgoConfig::new(args.epsilon).seed(args.seed).randomized(args.randomized_decomp);
    cfg.validate()?;
    let set = amplify(args.amplify, &cfg, |c| maxtsp::solve(&inst, c))?;
    let promised = cfg.promised_ratio(inst.direction(), inst.k());
    let report = if verify {
        let exact = oracle::tour_pareto_exact(&inst)?;
        Some(oracle::verify_coverage(&set, &exact, promised).with_instance(&inst))
    } else {
        None
    };
    let code = match &report {
        Some(r) if !r.covered => EXIT_UNCOVERED,
        _ => EXIT_OK,
    };
    let tours = sorted_tours(&set);
    let out = if args.json {
        let mut v = json!({
            "schema": SCHEMA,
            "command": "solve",
            "direction": inst.direction().as_str(),
            "n": inst.n(),
            "k": inst.k(),
            "epsilon": args.epsilon.to_string(),
            "seed": args.seed,
            "amplify": args.amplify,
            "randomized_decomposition": args.randomized_decomp,
            "ratio": promised.to_string(),
            "tours": tours.iter().map(|(t, w)| tour_json(t, w)).collect::<Vec<_>>(),
        });
        if let Some(r) = &report {
            v["verify"] = report_json(r, |t: &HamiltonianCycle| json!(t.order()));
        }
        format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize"))
    } else {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{} n={} k={} epsilon={} ratio={}",
            inst.direction(),
            inst.n(),
            inst.k(),
            args.epsilon,
            promised
        );
        let _ = writeln!(s, "{} tours", tours.len());
        for (t, w) in &tours {
            let _ = writeln!(s, "{w}  {}", join(t.order()));
        }
        if let Some(r) = &report {
            match &r.witness {
                None => {
                    let _ = writeln!(s, "covered: true ({} oracle tours)", r.oracle_vectors.len());
                }
                Some(w) => {
                    let _ = writeln!(
                        s,
                        "covered: false; tour {} with weight {} is not covered (objective {})",
                        join(w.solution.order()),
                        w.vector,
                        w.failing_objective
                    );
                }
            }
        }
        s
    };
    Ok((code, out))
}

pub fn cmd_oracle(file: &Path, covers: bool, json_out: bool) -> Result<(i32, String)> {
    let inst = load_instance(file)?;
    let tours = oracle::tour_pareto_exact(&inst)?;
    let cover_set = if covers { Some(oracle::cover_pareto_exact(&inst)?) } else { None };
    let mut cover_list: Vec<(&CycleCover, &WeightVector)> = cover_set
        .as_ref()
        .map(|s| s.iter().map(|(c, w)| (c, w)).collect())
        .unwrap_or_default();
    cover_list.sort_by(|a, b| (a.1, a.0.cycles()).cmp(&(b.1, b.0.cycles())));
    let tours = sorted_tours(&tours);
    let out = if json_out {
        let mut v = json!({
            "schema": SCHEMA,
            "command": "oracle",
            "instance_digest": oracle::instance_digest(&inst),
            "tours": tours.iter().map(|(t, w)| tour_json(t, w)).collect::<Vec<_>>(),
        });
        if covers {
            v["covers"] = cover_list
                .iter()
                .map(|(c, w)| json!({ "cycles": c.cycles(), "weight": w }))
                .collect();
        }
        format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize"))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "{} Pareto-optimal tours", tours.len());
        for (t, w) in &tours {
            let _ = writeln!(s, "{w}  {}", join(t.order()));
        }
        if covers {
            let _ = writeln!(s, "{} Pareto-optimal cycle covers", cover_list.len());
            for (c, w) in &cover_list {
                let cycles: Vec<String> = c.cycles().iter().map(|cy| format!("({})", join(cy))).collect();
                let _ = writeln!(s, "{w}  {}", cycles.join(" "));
            }
        }
        s
    };
    Ok((EXIT_OK, out))
}

pub fn cmd_decompose(
    file: &Path,
    cover_file: &Path,
    alpha: Option<Rational>,
    method: Method,
    seed: u64,
    json_out: bool,
) -> Result<(i32, String)> {
    let inst = load_instance(file)?;
    let cover = parse_cover(&read(cover_file)?, inst.direction())?;
    if cover.n() != inst.n() {
        return Err(Error::Usage(format!(
            "cover has {} vertices, the instance {}",
            cover.n(),
            inst.n()
        )));
    }
    let k = inst.k();
    let alpha = alpha.unwrap_or(match method {
        Method::Lightweight | Method::Randomized => decompose::guaranteed_alpha(inst.direction(), k),
        Method::Bicriteria | Method::LongCycles => ratio(1, 2),
        Method::K3 => ratio(1, 3),
    });
    let cfg = DecompositionConfig::new(alpha, k).seed(seed);
    let mut attempts = None;
    let paths = match method {
        Method::Lightweight => decompose::lightweight(&cover, &inst, &cfg)?,
        Method::Randomized => {
            let (p, stats) = decompose::rand_lightweight_with_stats(&cover, &inst, &cfg)?;
            attempts = Some(stats);
            p
        }
        Method::Bicriteria => decompose::decompose_bicriteria_undirected(&cover, &inst)?,
        Method::K3 => decompose::decompose_k3_undirected(&cover, &inst)?,
        Method::LongCycles => decompose::decompose_long_cycles(&cover, &inst)?,
    };
    let kept = paths.weight(&inst);
    let total = cover.weight(&inst);
    let holds = kept.covers(&total, alpha)?;
    let tour = patch_collection(&paths)?;
    let tour_w = tour.weight(&inst);
    let code = if holds { EXIT_OK } else { EXIT_UNCOVERED };
    let out = if json_out {
        let mut v = json!({
            "schema": SCHEMA,
            "command": "decompose",
            "method": format!("{method:?}").to_lowercase(),
            "alpha": alpha.to_string(),
            "cover_weight": total,
            "paths": paths.paths(),
            "paths_weight": kept,
            "guarantee_holds": holds,
            "tour": tour_json(&tour, &tour_w),
        });
        if let Some(st) = attempts {
            v["random_attempts"] = json!(st.attempts);
            v["deterministic_fallback"] = json!(st.deterministic);
        }
        format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize"))
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "cover weight {total}, paths weight {kept}, alpha {alpha}: {}", if holds { "holds" } else { "fails" });
        for p in paths.paths() {
            let _ = writeln!(s, "path {}", join(&p));
        }
        let _ = writeln!(s, "tour {} weight {tour_w}", join(tour.order()));
        s
    };
    Ok((code, out))
}

pub fn cmd_tightness(direction: Direction, k: usize, budget: &TightnessBudget, json_out: bool) -> Result<(i32, String)> {
    let w = oracle::search_tightness_witness(direction, k, budget)?;
    let cycles: Vec<Vec<WeightVector>> = (0..w.cover.cycles().len())
        .map(|c| w.cover.cycle_edges(c).into_iter().map(|(a, b)| w.weights.edge_weight(a, b)).collect())
        .collect();
    let out = if json_out {
        let v = json!({
            "schema": SCHEMA,
            "command": "tightness",
            "direction": direction.as_str(),
            "k": k,
            "alpha": w.alpha.to_string(),
            "best_ratio": w.best_ratio.to_string(),
            "cycles": w.cover.cycles(),
            "edge_weights": cycles,
            "covers_examined": w.covers_examined,
            "budget_exhausted": w.budget_exhausted,
        });
        format!("{}\n", serde_json::to_string_pretty(&v).expect("json values serialize"))
    } else {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{direction} k={k}: best decomposition keeps {} (edges light at {}, {} covers examined)",
            w.best_ratio, w.alpha, w.covers_examined
        );
        for (c, ws) in w.cover.cycles().iter().zip(&cycles) {
            let ws: Vec<String> = ws.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "cycle {}: {}", join(c), ws.join(" "));
        }
        s
    };
    Ok((EXIT_OK, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/10").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational(".25").unwrap(), ratio(1, 4));
        assert_eq!(parse_rational("2").unwrap(), ratio(2, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(parse_rational("-0.1").unwrap(), ratio(-1, 10));
    }

    #[test]
    fn usage_errors() {
        let o = run(["mctsp", "solve"]);
        assert_eq!(o.code, EXIT_USAGE);
        let o = run(["mctsp", "--help"]);
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.contains("solve"));
        let o = run(["mctsp", "generate", "--direction", "directed", "--n", "1", "--k", "1"]);
        assert_eq!(o.code, EXIT_USAGE);
    }

    #[test]
    fn generate_is_deterministic() {
        let args = ["mctsp", "generate", "--direction", "directed", "--n", "2", "--k", "1", "--max-weight", "10", "--seed", "7"];
        let a = run(args);
        assert_eq!(a.code, 0);
        assert_eq!(a, run(args));
        let inst = parse_instance(&a.stdout).unwrap();
        assert_eq!((inst.n(), inst.k(), inst.weight(0, 0, 0)), (2, 1, 0));
    }
}
