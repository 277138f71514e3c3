//! Command-line front end: ordering comparisons, operator application,
//! program evaluation, the probabilistic ordering oracle and the
//! algebraic law suite.
//!
//! Exit codes: 0 success, 2 input error, 3 semantic error (indecision,
//! inconsistency, failed stratification, no fixpoint), 4 law failure.

use clap::{Parser, Subcommand};
use ivlog::{
    laws, matches_midpoint_order, negate_l4, negate_standard, parse_program, prob_leq, prob_leq_mc,
    r_implicator_min, r_implicator_pr, s_implicator, solve, stochastic_verdict, ConjunctorId,
    DisjunctorId, EngineConfig, ImplicationResult, Interval, OrderingKind, OrderingVerdict,
    StochasticOrder, MC_RNG_ID,
};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_INPUT: u8 = 2;
const EXIT_SEMANTIC: u8 = 3;
const EXIT_LAW: u8 = 4;

#[derive(Parser)]
#[command(
    name = "ivlog",
    version,
    about = "Interval-valued reasoning: orderings, operators, rule programs and oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare two intervals under an ordering (tp, kp, t or k)
    Compare {
        ordering: String,
        /// Interval literal, e.g. [0.4,0.8] or 0.4
        x: String,
        y: String,
    },
    /// Apply a logical operator to one or two intervals
    Apply {
        /// One of: neg, negl4, tmin, tminp, tpr, tppr, spr, smax, sminp,
        /// imin, ipr, simp
        op: String,
        x: String,
        y: Option<String>,
    },
    /// Evaluate a rule program and print the belief set
    Run {
        file: PathBuf,
        /// Emit the belief set as a single JSON object
        #[arg(long)]
        json: bool,
        /// Engine overrides, e.g. --config conjunctor=tmin
        #[arg(long = "config", value_name = "KEY=VALUE")]
        config: Vec<String>,
    },
    /// Stochastic-order probabilities for a pair of intervals
    Oracle {
        x: String,
        y: String,
        /// Add a Monte Carlo estimate with this many samples
        #[arg(long)]
        mc: Option<u64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Check the algebraic laws over a discretised grid
    Laws {
        /// Grid step in (0, 0.5]
        #[arg(long, default_value_t = 0.05)]
        step: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

type Failure = (u8, String);

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Compare { ordering, x, y } => cmd_compare(&ordering, &x, &y),
        Command::Apply { op, x, y } => cmd_apply(&op, &x, y.as_deref()),
        Command::Run { file, json, config } => cmd_run(&file, json, &config),
        Command::Oracle { x, y, mc, seed } => cmd_oracle(&x, &y, mc, seed),
        Command::Laws { step } => cmd_laws(step),
    }
}

fn parse_interval(text: &str) -> Result<Interval, Failure> {
    text.parse::<Interval>()
        .map_err(|e| (EXIT_INPUT, e.to_string()))
}

fn verdict_token(v: OrderingVerdict) -> &'static str {
    match v {
        OrderingVerdict::StrictlyLess => "LESS",
        OrderingVerdict::StrictlyGreater => "GREATER",
        OrderingVerdict::Equivalent => "EQUIVALENT",
        OrderingVerdict::Equal => "EQUAL",
        OrderingVerdict::Incomparable => "INCOMPARABLE",
    }
}

fn cmd_compare(ordering: &str, x: &str, y: &str) -> Result<ExitCode, Failure> {
    let kind: OrderingKind = ordering.parse().map_err(|e: String| (EXIT_INPUT, e))?;
    let x = parse_interval(x)?;
    let y = parse_interval(y)?;
    println!("{}", verdict_token(kind.compare(&x, &y)));
    match kind {
        OrderingKind::TruthPre => {
            println!("left  {x} midpoint={:.6}", x.midpoint());
            println!("right {y} midpoint={:.6}", y.midpoint());
        }
        OrderingKind::KnowledgePre => {
            println!("left  {x} width={:.6}", x.width());
            println!("right {y} width={:.6}", y.width());
        }
        _ => {}
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_apply(op: &str, x: &str, y: Option<&str>) -> Result<ExitCode, Failure> {
    let x = parse_interval(x)?;
    let binary = |y: Option<&str>| -> Result<Interval, Failure> {
        parse_interval(y.ok_or((EXIT_INPUT, format!("operator `{op}` needs two intervals")))?)
    };
    match op {
        "neg" => println!("{}", negate_standard(&x)),
        "negl4" => match negate_l4(&x) {
            Ok(r) => println!("{r}"),
            Err(e) => return Err((EXIT_INPUT, e.to_string())),
        },
        "tmin" | "tminp" | "tpr" | "tppr" => {
            let id: ConjunctorId = op.parse().map_err(|e: String| (EXIT_INPUT, e))?;
            println!("{}", id.apply(&x, &binary(y)?));
        }
        "smax" | "sminp" | "spr" => {
            let id: DisjunctorId = op.parse().map_err(|e: String| (EXIT_INPUT, e))?;
            println!("{}", id.apply(&x, &binary(y)?));
        }
        "simp" => {
            let y = binary(y)?;
            println!(
                "{}",
                s_implicator(DisjunctorId::SPr, negate_standard, &x, &y)
            );
        }
        "imin" => print_implication(r_implicator_min(&x, &binary(y)?)),
        "ipr" => print_implication(r_implicator_pr(&x, &binary(y)?)),
        other => {
            return Err((EXIT_INPUT, format!("unknown operator `{other}`")));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_implication(result: ImplicationResult) {
    match result {
        ImplicationResult::Unique(interval) => println!("{interval}"),
        ImplicationResult::MSet(m) => println!("{m} canonical={}", m.canonical()),
    }
}

fn cmd_run(file: &PathBuf, json: bool, config: &[String]) -> Result<ExitCode, Failure> {
    let mut cfg = EngineConfig::default();
    for entry in config {
        let (key, value) = entry
            .split_once('=')
            .ok_or((EXIT_INPUT, format!("config `{entry}` is not KEY=VALUE")))?;
        cfg.apply_override(key.trim(), value.trim())
            .map_err(|e| (EXIT_INPUT, e))?;
    }
    let text = std::fs::read_to_string(file)
        .map_err(|e| (EXIT_INPUT, format!("{}: {e}", file.display())))?;
    let program = parse_program(&text).map_err(|diags| {
        let listing = diags
            .iter()
            .map(|d| format!("{}: {d}", file.display()))
            .collect::<Vec<_>>()
            .join("\n");
        (EXIT_INPUT, listing)
    })?;
    let valuation = solve(&program, &cfg).map_err(|e| (EXIT_SEMANTIC, e.to_string()))?;
    if json {
        let mut map = BTreeMap::new();
        for (atom, state) in valuation.iter() {
            // Round at the comparison tolerance so the JSON is stable.
            let lo = (state.lo() * 1e9).round() / 1e9;
            let hi = (state.hi() * 1e9).round() / 1e9;
            map.insert(atom.to_string(), vec![lo, hi]);
        }
        println!(
            "{}",
            serde_json::to_string(&map).expect("belief set serialises")
        );
    } else {
        for (atom, state) in valuation.iter() {
            println!("{atom}: {state}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(x: &str, y: &str, mc: Option<u64>, seed: u64) -> Result<ExitCode, Failure> {
    let x = parse_interval(x)?;
    let y = parse_interval(y)?;
    let verdict = stochastic_verdict(&x, &y);
    let order = match verdict.order {
        StochasticOrder::Less => "LESS",
        StochasticOrder::Greater => "GREATER",
        StochasticOrder::Tie => "TIE",
    };
    println!("p_leq={}", round9(verdict.p_leq));
    println!("p_geq={}", round9(verdict.p_geq));
    println!("order={order}");
    let agrees = matches_midpoint_order(&x, &y);
    println!(
        "midpoint_agreement={}",
        if agrees { "OK" } else { "MISMATCH" }
    );
    if let Some(n) = mc {
        if n == 0 {
            return Err((EXIT_INPUT, "--mc needs at least one sample".into()));
        }
        let estimate = prob_leq_mc(&x, &y, n, seed);
        let exact = prob_leq(&x, &y);
        println!(
            "mc_p_leq={} n={n} seed={seed} rng={MC_RNG_ID} abs_error={}",
            round9(estimate),
            round9((estimate - exact).abs())
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn round9(v: f64) -> f64 {
    (v * 1e9).round() / 1e9
}

fn cmd_laws(step: f64) -> Result<ExitCode, Failure> {
    if !(step > 0.0 && step <= 0.5) {
        return Err((EXIT_INPUT, format!("step must be in (0, 0.5], got {step}")));
    }
    let reports = laws::run_all(step);
    let mut first_failure: Option<String> = None;
    for report in &reports {
        if report.passed() {
            println!("PASS {} checks={}", report.law, report.checks);
        } else {
            println!(
                "FAIL {} failures={}/{}",
                report.law, report.failures, report.checks
            );
            if first_failure.is_none() {
                first_failure = Some(format!(
                    "{}: {}",
                    report.law,
                    report.first_failure.clone().unwrap_or_default()
                ));
            }
        }
    }
    match first_failure {
        None => Ok(ExitCode::SUCCESS),
        Some(counterexample) => {
            eprintln!("counterexample: {counterexample}");
            Ok(ExitCode::from(EXIT_LAW))
        }
    }
}
