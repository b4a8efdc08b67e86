//! Command-line front end: generate-and-certify instances, brute-force
//! expansion certificates, decode single words, build dual witnesses,
//! sweep error weights, and print the built-in distance-2 regression
//! instance.
//!
//! Exit codes: 0 success; 1 usage (bad flags, bad parameters, inputs
//! that fail validation); 2 a falsified claim (certification refused,
//! witness construction failed, radius guarantee violated); 3 I/O.

use std::io::Read;
use std::process::exit;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use expander_lp::code_core::{
    certify_expansion, parse_alist, write_alist, CertificateStatus, ExpansionParams, TannerGraph,
};
use expander_lp::decoders::{run_request, DecodeRequest, DecodeResponse};
use expander_lp::harness::{
    counterexample, gen_search, load_graph, report_csv, report_json, run_experiment,
    ExperimentConfig, GraphSource, HarnessError, Trials, CERT_BUDGET,
};
use expander_lp::ratio::{format_ratio, parse_ratio, ratio_int, Rational};
use expander_lp::witness::{
    construct_witness, decoding_radius, ErrorContext, WitnessError, WitnessJson,
};

#[derive(Parser)]
#[command(name = "expander-lp", version, about = "LP decoding of expander codes at desk scale")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample left-regular instances until one certifies, then write it
    Gen(GenArgs),
    /// Brute-force check the expansion property of an instance
    Certify(CertifyArgs),
    /// Decode one received word (request JSON from --request or stdin)
    Decode(DecodeArgs),
    /// Construct and verify the dual witness for an error set
    Witness(WitnessArgs),
    /// Sweep error weights, run decoders and witness checks, report
    Experiment(ExperimentArgs),
    /// Print the built-in distance-2 counterexample instance
    Counterexample(CounterexampleArgs),
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    c: usize,
    /// Expansion fraction as P/Q; epsilon*c must be an integer
    #[arg(long)]
    epsilon: String,
    /// Subset-size fraction as P/Q
    #[arg(long)]
    delta: String,
    /// First generator seed to try; the search walks upward from here
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    attempts: u64,
    /// Where the certified alist is written
    #[arg(long)]
    out: String,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    alist: String,
    #[arg(long)]
    epsilon: String,
    #[arg(long)]
    delta: String,
    /// Subset-enumeration budget
    #[arg(long, default_value_t = CERT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long)]
    alist: String,
    /// Request JSON file; omitted means read the request from stdin
    #[arg(long)]
    request: Option<String>,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    alist: String,
    #[arg(long)]
    epsilon: String,
    #[arg(long)]
    delta: String,
    /// Error set as comma-separated 1-based coordinates; omit for U = {}
    #[arg(long)]
    u: Option<String>,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Full experiment config JSON; excludes the inline instance flags
    #[arg(long)]
    config: Option<String>,
    #[arg(long)]
    alist: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    delta: Option<String>,
    /// Comma-separated error weights, ascending
    #[arg(long)]
    weights: Option<String>,
    /// Trials per weight: a count, or "exhaustive"
    #[arg(long)]
    trials: Option<String>,
    /// Comma-separated decoders from {lp, flip}
    #[arg(long)]
    algo: Option<String>,
    /// Skip the witness pipeline
    #[arg(long)]
    skip_witness: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<String>,
    /// Also write the CSV rows here
    #[arg(long)]
    csv: Option<String>,
    /// Sweep even when the instance fails certification
    #[arg(long)]
    allow_uncertified: bool,
}

#[derive(Args)]
struct CounterexampleArgs {
    /// Also write the instance's alist here
    #[arg(long)]
    out: Option<String>,
}

enum Failure {
    Usage(String),
    Claim(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Claim(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Claim(m) | Failure::Io(m) => m,
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            exit(code);
        }
    };
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Certify(args) => cmd_certify(args),
        Command::Decode(args) => cmd_decode(args),
        Command::Witness(args) => cmd_witness(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Counterexample(args) => cmd_counterexample(args),
    };
    if let Err(f) = result {
        eprintln!("error: {}", f.message());
        exit(f.code());
    }
}

fn parse_rational(label: &str, text: &str) -> Result<Rational, Failure> {
    parse_ratio(text).map_err(|e| usage(format!("--{label}: {e}")))
}

fn read_file(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{path}: {e}")))
}

fn write_file(path: &str, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content).map_err(|e| Failure::Io(format!("{path}: {e}")))
}

fn load_alist(path: &str) -> Result<TannerGraph, Failure> {
    let text = read_file(path)?;
    parse_alist(&text).map_err(|e| usage(format!("{path}: {e}")))
}

/// Builds params from a graph's left degree; non-regular graphs and
/// out-of-range fractions are usage errors.
fn instance_params(
    g: &TannerGraph,
    epsilon: &str,
    delta: &str,
) -> Result<ExpansionParams, Failure> {
    let eps = parse_rational("epsilon", epsilon)?;
    let del = parse_rational("delta", delta)?;
    let c = g
        .left_degree()
        .ok_or_else(|| usage("instance is not left-regular; every variable must have degree c"))?;
    ExpansionParams::new(eps, del, c).map_err(|e| usage(e.to_string()))
}

/// All stdout goes through here: a reader hanging up mid-pipe is a
/// clean exit, not a panic.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let result = out.write_all(text.as_bytes()).and_then(|()| out.flush());
    if let Err(e) = result {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            exit(0);
        }
        eprintln!("error: stdout: {e}");
        exit(3);
    }
}

fn print_doc(doc: &serde_json::Value) {
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(doc).unwrap()
    ));
}

fn cmd_gen(args: GenArgs) -> Result<(), Failure> {
    let eps = parse_rational("epsilon", &args.epsilon)?;
    let del = parse_rational("delta", &args.delta)?;
    let params = ExpansionParams::new(eps, del, args.c).map_err(|e| usage(e.to_string()))?;
    let quota = params.eps_c_integral().ok_or_else(|| {
        usage(format!(
            "epsilon * c must be an integer; {} * {} is not",
            format_ratio(params.epsilon()),
            args.c
        ))
    })?;
    let (g, cert, seed) = match gen_search(args.n, args.m, args.c, &params, args.seed, args.attempts)
    {
        Ok(found) => found,
        Err(e @ HarnessError::GenBudget { .. }) => return Err(usage(e.to_string())),
        Err(e) => return Err(usage(e.to_string())),
    };
    write_file(&args.out, &write_alist(&g))?;
    print_doc(&json!({
        "seed": seed,
        "n": g.n(),
        "m": g.m(),
        "c": args.c,
        "epsilon": format_ratio(params.epsilon()),
        "delta": format_ratio(params.delta()),
        "eps_c": quota,
        "floor_delta_n": params.floor_delta_n(g.n()),
        "certificate": cert,
        "out": args.out,
    }));
    Ok(())
}

fn cmd_certify(args: CertifyArgs) -> Result<(), Failure> {
    let g = load_alist(&args.alist)?;
    let params = instance_params(&g, &args.epsilon, &args.delta)?;
    let cert =
        certify_expansion(&g, &params, args.budget).map_err(|e| usage(e.to_string()))?;
    print_doc(&json!({
        "n": g.n(),
        "m": g.m(),
        "c": params.c(),
        "epsilon": format_ratio(params.epsilon()),
        "delta": format_ratio(params.delta()),
        "floor_delta_n": params.floor_delta_n(g.n()),
        "certificate": cert,
    }));
    match cert.status {
        CertificateStatus::Certified => Ok(()),
        CertificateStatus::Violated => Err(Failure::Claim(
            "expansion property violated; see certificate".into(),
        )),
        CertificateStatus::Unverified => Err(Failure::Claim(
            "budget exhausted before certification completed".into(),
        )),
    }
}

fn cmd_decode(args: DecodeArgs) -> Result<(), Failure> {
    let g = load_alist(&args.alist)?;
    let text = match &args.request {
        Some(path) => read_file(path)?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
            buf
        }
    };
    let request: DecodeRequest =
        serde_json::from_str(&text).map_err(|e| usage(format!("request: {e}")))?;
    let result = run_request(&g, &request).map_err(|e| usage(e.to_string()))?;
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(&DecodeResponse::from(&result)).unwrap()
    ));
    Ok(())
}

/// 1-based comma list -> 0-based sorted indices. Range and duplicate
/// checks are left to the witness pipeline.
fn parse_error_set(text: Option<&str>) -> Result<Vec<usize>, Failure> {
    let Some(text) = text else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for part in text.split(',') {
        let i: usize = part
            .trim()
            .parse()
            .map_err(|_| usage(format!("--u: \"{part}\" is not a coordinate")))?;
        if i == 0 {
            return Err(usage("--u coordinates are 1-based"));
        }
        out.push(i - 1);
    }
    Ok(out)
}

fn cmd_witness(args: WitnessArgs) -> Result<(), Failure> {
    let g = load_alist(&args.alist)?;
    let params = instance_params(&g, &args.epsilon, &args.delta)?;
    let u = parse_error_set(args.u.as_deref())?;
    match construct_witness(&g, &u, &params, None) {
        Ok(w) => {
            let ctx = ErrorContext::from_error_set(g.n(), &u)
                .expect("witness construction validated U");
            let slacks: Vec<String> = w
                .feasibility
                .node_sums
                .iter()
                .zip(&ctx.gamma)
                .map(|(sum, &gamma)| format_ratio(&(ratio_int(gamma as i64) - sum)))
                .collect();
            debug_assert!(w.feasibility.feasible);
            print_doc(&json!({
                "feasible": true,
                "dilation": w.dilation_report,
                "radius": decoding_radius(&params, g.n()).ok(),
                "witness": WitnessJson::from_witness(&w),
                "slacks": slacks,
            }));
            Ok(())
        }
        Err(WitnessError::Stage { stage, source }) => {
            print_doc(&json!({
                "feasible": false,
                "stage": stage.to_string(),
                "message": source.to_string(),
            }));
            Err(Failure::Claim(format!(
                "witness construction failed at the {stage} stage"
            )))
        }
        Err(e) => Err(usage(e.to_string())),
    }
}

fn harness_failure(e: HarnessError) -> Failure {
    match e {
        HarnessError::Io(m) => Failure::Io(m),
        other => usage(other.to_string()),
    }
}

fn cmd_experiment(args: ExperimentArgs) -> Result<(), Failure> {
    let config: ExperimentConfig = if let Some(path) = &args.config {
        if args.alist.is_some()
            || args.epsilon.is_some()
            || args.delta.is_some()
            || args.weights.is_some()
            || args.trials.is_some()
            || args.algo.is_some()
        {
            return Err(usage("--config excludes the inline instance flags"));
        }
        let text = read_file(path)?;
        serde_json::from_str(&text).map_err(|e| usage(format!("{path}: {e}")))?
    } else {
        let alist = args
            .alist
            .clone()
            .ok_or_else(|| usage("--alist is required without --config"))?;
        let epsilon = args
            .epsilon
            .as_deref()
            .ok_or_else(|| usage("--epsilon is required without --config"))?;
        let delta = args
            .delta
            .as_deref()
            .ok_or_else(|| usage("--delta is required without --config"))?;
        let weights_text = args
            .weights
            .as_deref()
            .ok_or_else(|| usage("--weights is required without --config"))?;
        let mut weights = Vec::new();
        for part in weights_text.split(',') {
            weights.push(
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| usage(format!("--weights: \"{part}\" is not a weight")))?,
            );
        }
        let trials = match args.trials.as_deref().unwrap_or("exhaustive") {
            "exhaustive" => Trials::Exhaustive,
            text => Trials::Count(
                text.parse::<u64>()
                    .map_err(|_| usage(format!("--trials: \"{text}\" is neither a count nor \"exhaustive\"")))?,
            ),
        };
        let mut decoders = Vec::new();
        for part in args.algo.as_deref().unwrap_or("lp").split(',') {
            decoders.push(match part.trim() {
                "lp" => expander_lp::decoders::Algo::Lp,
                "flip" => expander_lp::decoders::Algo::Flip,
                other => return Err(usage(format!("--algo: unknown decoder \"{other}\""))),
            });
        }
        ExperimentConfig {
            graph: GraphSource::Alist { path: alist },
            epsilon: parse_rational("epsilon", epsilon)?,
            delta: parse_rational("delta", delta)?,
            weights,
            trials,
            decoders,
            witness_check: !args.skip_witness,
            seed: args.seed,
        }
    };
    // Certification gate before the sweep; the run re-certifies for
    // the report, which is cheap at this scale.
    let g = load_graph(&config.graph).map_err(harness_failure)?;
    let params = {
        let c = g.left_degree().ok_or_else(|| {
            usage("instance is not left-regular; every variable must have degree c")
        })?;
        ExpansionParams::new(config.epsilon.clone(), config.delta.clone(), c)
            .map_err(|e| usage(e.to_string()))?
    };
    let cert = certify_expansion(&g, &params, CERT_BUDGET).map_err(|e| usage(e.to_string()))?;
    if cert.status != CertificateStatus::Certified && !args.allow_uncertified {
        return Err(usage(format!(
            "instance is not certified at epsilon={}, delta={}; pass --allow-uncertified to sweep anyway",
            format_ratio(params.epsilon()),
            format_ratio(params.delta()),
        )));
    }
    let report = run_experiment(&config).map_err(harness_failure)?;
    let rendered = report_json(&report);
    match &args.out {
        Some(path) => write_file(path, &rendered)?,
        None => emit(&rendered),
    }
    if let Some(path) = &args.csv {
        write_file(path, &report_csv(&report))?;
    }
    if !report.theorem_ok {
        let violation = serde_json::to_string(&report.theorem_violation).unwrap();
        return Err(Failure::Claim(format!(
            "radius guarantee violated; failing trial: {violation}"
        )));
    }
    Ok(())
}

fn cmd_counterexample(args: CounterexampleArgs) -> Result<(), Failure> {
    let cx = counterexample();
    if let Some(path) = &args.out {
        write_file(path, &write_alist(&cx.graph))?;
    }
    print_doc(&json!({
        "n": cx.graph.n(),
        "m": cx.graph.m(),
        "c": cx.params.c(),
        "epsilon": format_ratio(cx.params.epsilon()),
        "delta": format_ratio(cx.params.delta()),
        "duplicated_pairs": [[1, 2], [3, 4]],
        "certificate": cx.certificate,
        "min_distance": cx.min_distance,
        "decode_e1": DecodeResponse::from(&cx.decode),
    }));
    let facts_hold = cx.min_distance == 2
        && cx.certificate.status == CertificateStatus::Certified
        && cx.decode.word.is_none();
    if facts_hold {
        Ok(())
    } else {
        Err(Failure::Claim(
            "built-in counterexample facts failed to reproduce".into(),
        ))
    }
}
