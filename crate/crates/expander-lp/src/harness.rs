//! Experiment engine: sweep error weights over an instance, run the
//! witness pipeline and the enabled decoders on every trial, and emit
//! a deterministic machine-readable report. The headline check is the
//! radius claim: on a certified instance every trial with |U| ≤ t must
//! succeed, and a miss is a hard, serialized-for-replay failure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code_core::{
    build_graph, certify_expansion, codewords, min_distance, parse_alist, BitWord,
    CertificateStatus, ExpansionCertificate, ExpansionError, ExpansionParams, GraphError,
    MinDistance, TannerGraph,
};
use crate::combi::{binomial, for_each_combination};
use crate::decoders::{flip_decode, lp_decode, Algo, DecodeError, DecodeResult, DecodeStatus};
use crate::ratio::{ratio, Rational};
use crate::witness::{construct_witness, decoding_radius, WitnessError};

/// Subset-enumeration budget for in-run certification.
pub const CERT_BUDGET: u64 = 1 << 22;
/// At most this many failure samples are kept per weight row.
const FAILURE_SAMPLE_CAP: usize = 10;
/// Exhaustive sweeps enumerate C(n, w) subsets per weight.
const MAX_EXHAUSTIVE_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphSource {
    Alist { path: String },
    Generate { n: usize, m: usize, c: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trials {
    Count(u64),
    Exhaustive,
}

/// One experiment: which instance, which parameters, which weights,
/// how many trials per weight, which decoders, whether to run the
/// witness pipeline, and the master seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub graph: GraphSource,
    #[serde(with = "crate::ratio::serde_pq")]
    pub epsilon: Rational,
    #[serde(with = "crate::ratio::serde_pq")]
    pub delta: Rational,
    pub weights: Vec<usize>,
    pub trials: Trials,
    pub decoders: Vec<Algo>,
    pub witness_check: bool,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    Lp,
    Flip,
    Witness,
}

/// A failed trial, serialized for replay. u is 1-based here, as in
/// every on-disk format; codeword is absent for witness failures
/// (the pipeline depends only on U).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureSample {
    pub u: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codeword: Option<BitWord>,
    pub kind: FailureKind,
    pub detail: String,
}

/// Per-weight tallies. Decoder counts are None when that decoder was
/// not enabled; witness_ok_count likewise tracks witness_check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub weight: usize,
    pub trials: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_ok_count: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lp_success_count: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flip_success_count: Option<u64>,
    pub failures: Vec<FailureSample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub n: usize,
    pub m: usize,
    pub c: usize,
    pub certificate: ExpansionCertificate,
    /// decoding_radius(params, n); None when ε ≤ 2/3 leaves the
    /// guarantee undefined (nothing is then asserted).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    pub floor_delta_n: usize,
}

/// The full experiment record: config echo, instance facts, per-weight
/// rows, and the theorem verdict. theorem_ok is false exactly when a
/// certified instance saw an LP or witness failure at some w ≤ radius;
/// the first such trial is kept in theorem_violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub config: ExperimentConfig,
    pub instance: InstanceMeta,
    pub rows: Vec<WeightRow>,
    pub theorem_ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem_violation: Option<FailureSample>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("bad experiment config: {0}")]
    BadConfig(String),
    #[error("no certified instance within {attempts} attempts; consider a smaller delta or epsilon")]
    GenBudget { attempts: u64 },
    #[error("io: {0}")]
    Io(String),
    #[error("alist: {0}")]
    Alist(String),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

/// Resolves a graph source; Alist reads from disk.
pub fn load_graph(source: &GraphSource) -> Result<TannerGraph, HarnessError> {
    match source {
        GraphSource::Alist { path } => {
            let text =
                std::fs::read_to_string(path).map_err(|e| HarnessError::Io(e.to_string()))?;
            parse_alist(&text).map_err(|e| HarnessError::Alist(e.to_string()))
        }
        GraphSource::Generate { n, m, c, seed } => {
            Ok(crate::code_core::generate_regular(*n, *m, *c, *seed)?)
        }
    }
}

impl ExperimentConfig {
    fn validate(&self, n: usize) -> Result<(), HarnessError> {
        let bad = |msg: String| Err(HarnessError::BadConfig(msg));
        if self.weights.is_empty() {
            return bad("weights must be nonempty".into());
        }
        if self.weights.windows(2).any(|w| w[0] >= w[1]) {
            return bad("weights must be strictly ascending".into());
        }
        if let Some(&top) = self.weights.last() {
            if top > n {
                return bad(format!("weight {top} exceeds n = {n}"));
            }
        }
        if self.trials == Trials::Exhaustive && n > MAX_EXHAUSTIVE_N {
            return bad(format!(
                "exhaustive sweeps are limited to n <= {MAX_EXHAUSTIVE_N}, got n = {n}"
            ));
        }
        if let Trials::Count(0) = self.trials {
            return bad("trial count must be positive".into());
        }
        let mut seen = self.decoders.clone();
        seen.dedup();
        if seen.len() != self.decoders.len() {
            return bad("decoders must not repeat".into());
        }
        if self.decoders.is_empty() && !self.witness_check {
            return bad("nothing to run: no decoders and no witness check".into());
        }
        Ok(())
    }
}

/// What one (U, transmitted words) trial produced. A decoder succeeds
/// only if every transmitted word comes back Decoded and equal.
struct TrialOutcome {
    witness_ok: Option<bool>,
    lp_ok: Option<bool>,
    flip_ok: Option<bool>,
    failures: Vec<FailureSample>,
}

struct RowAccum {
    trials: u64,
    witness_ok_count: Option<u64>,
    lp_success_count: Option<u64>,
    flip_success_count: Option<u64>,
    failures: Vec<FailureSample>,
}

impl RowAccum {
    fn new(config: &ExperimentConfig) -> Self {
        RowAccum {
            trials: 0,
            witness_ok_count: config.witness_check.then_some(0),
            lp_success_count: config.decoders.contains(&Algo::Lp).then_some(0),
            flip_success_count: config.decoders.contains(&Algo::Flip).then_some(0),
            failures: Vec::new(),
        }
    }

    fn absorb(&mut self, outcome: TrialOutcome) {
        self.trials += 1;
        let bump = |slot: &mut Option<u64>| *slot = slot.map(|c| c + 1);
        if outcome.witness_ok == Some(true) {
            bump(&mut self.witness_ok_count);
        }
        if outcome.lp_ok == Some(true) {
            bump(&mut self.lp_success_count);
        }
        if outcome.flip_ok == Some(true) {
            bump(&mut self.flip_success_count);
        }
        for f in outcome.failures {
            if self.failures.len() < FAILURE_SAMPLE_CAP {
                self.failures.push(f);
            }
        }
    }

    fn into_row(self, weight: usize) -> WeightRow {
        WeightRow {
            weight,
            trials: self.trials,
            witness_ok_count: self.witness_ok_count,
            lp_success_count: self.lp_success_count,
            flip_success_count: self.flip_success_count,
            failures: self.failures,
        }
    }
}

fn one_based(u: &[usize]) -> Vec<usize> {
    u.iter().map(|&i| i + 1).collect()
}

fn run_trial(
    g: &TannerGraph,
    config: &ExperimentConfig,
    params: &ExpansionParams,
    cert: &ExpansionCertificate,
    u: &[usize],
    transmitted: &[BitWord],
) -> Result<TrialOutcome, HarnessError> {
    let mut failures = Vec::new();
    let witness_ok = if config.witness_check {
        match construct_witness(g, u, params, Some(cert)) {
            Ok(w) => {
                debug_assert!(w.feasibility.feasible);
                Some(true)
            }
            Err(e) => {
                failures.push(FailureSample {
                    u: one_based(u),
                    codeword: None,
                    kind: FailureKind::Witness,
                    detail: e.to_string(),
                });
                Some(false)
            }
        }
    } else {
        None
    };
    let mut lp_ok = None;
    let mut flip_ok = None;
    for algo in &config.decoders {
        let mut all_ok = true;
        for cw in transmitted {
            let mut y = cw.clone();
            for &i in u {
                y.flip(i);
            }
            let result: DecodeResult = match algo {
                Algo::Lp => lp_decode(g, &y)?,
                Algo::Flip => flip_decode(g, &y, 10 * g.n())?,
            };
            let ok = result.status == DecodeStatus::Decoded && result.word.as_ref() == Some(cw);
            if !ok {
                all_ok = false;
                failures.push(FailureSample {
                    u: one_based(u),
                    codeword: Some(cw.clone()),
                    kind: match algo {
                        Algo::Lp => FailureKind::Lp,
                        Algo::Flip => FailureKind::Flip,
                    },
                    detail: match result.status {
                        DecodeStatus::Decoded => "decoded to a different codeword".into(),
                        DecodeStatus::FractionalOptimum => "fractional optimum".into(),
                        DecodeStatus::AmbiguousOptimum => "ambiguous optimum".into(),
                        DecodeStatus::NoConvergence => "no convergence".into(),
                    },
                });
            }
        }
        match algo {
            Algo::Lp => lp_ok = Some(all_ok),
            Algo::Flip => flip_ok = Some(all_ok),
        }
    }
    Ok(TrialOutcome {
        witness_ok,
        lp_ok,
        flip_ok,
        failures,
    })
}

/// Runs the sweep. Deterministic: the per-trial RNG stream is derived
/// from (master seed, weight, trial index), so any execution order
/// produces the same report.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Report, HarnessError> {
    let g = load_graph(&config.graph)?;
    config.validate(g.n())?;
    let c = g
        .left_degree()
        .ok_or_else(|| HarnessError::BadConfig("experiments need a left-regular graph".into()))?;
    let params = ExpansionParams::new(config.epsilon.clone(), config.delta.clone(), c)?;
    let cert = certify_expansion(&g, &params, CERT_BUDGET)?;
    let radius = match decoding_radius(&params, g.n()) {
        Ok(t) => Some(t),
        Err(WitnessError::EpsilonTooSmall { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    // The zero word is always transmitted; a per-trial random codeword
    // joins it when the code is enumerable.
    let words = codewords(&g).ok();
    let mut rows = Vec::new();
    let mut theorem_ok = true;
    let mut theorem_violation: Option<FailureSample> = None;
    for &w in &config.weights {
        let in_radius =
            cert.status == CertificateStatus::Certified && radius.is_some_and(|t| w <= t);
        let mut acc = RowAccum::new(config);
        let mut run_error: Option<HarnessError> = None;
        match config.trials {
            Trials::Exhaustive => {
                let mut trial_index = 0u64;
                for_each_combination(g.n(), w, |subset| {
                    let mut rng = trial_rng(config.seed, w, trial_index);
                    trial_index += 1;
                    let transmitted = sample_words(&words, g.n(), &mut rng);
                    match run_trial(&g, config, &params, &cert, subset, &transmitted) {
                        Ok(outcome) => {
                            if in_radius && failed_guarantee(&outcome) {
                                theorem_ok = false;
                                if theorem_violation.is_none() {
                                    theorem_violation = outcome.failures.first().cloned();
                                }
                            }
                            acc.absorb(outcome);
                            true
                        }
                        Err(e) => {
                            run_error = Some(e);
                            false
                        }
                    }
                });
                debug_assert!(run_error.is_some() || acc.trials == binomial(g.n(), w));
            }
            Trials::Count(count) => {
                for trial_index in 0..count {
                    let mut rng = trial_rng(config.seed, w, trial_index);
                    let subset = random_subset(&mut rng, g.n(), w);
                    let transmitted = sample_words(&words, g.n(), &mut rng);
                    match run_trial(&g, config, &params, &cert, &subset, &transmitted) {
                        Ok(outcome) => {
                            if in_radius && failed_guarantee(&outcome) {
                                theorem_ok = false;
                                if theorem_violation.is_none() {
                                    theorem_violation = outcome.failures.first().cloned();
                                }
                            }
                            acc.absorb(outcome);
                        }
                        Err(e) => {
                            run_error = Some(e);
                            break;
                        }
                    }
                }
            }
        }
        if let Some(e) = run_error {
            return Err(e);
        }
        rows.push(acc.into_row(w));
    }
    Ok(Report {
        instance: InstanceMeta {
            n: g.n(),
            m: g.m(),
            c,
            certificate: cert,
            radius,
            floor_delta_n: params.floor_delta_n(g.n()),
        },
        config: config.clone(),
        rows,
        theorem_ok,
        theorem_violation,
    })
}

/// The radius guarantee covers LP decoding and the witness chain, not
/// the flip decoder.
fn failed_guarantee(outcome: &TrialOutcome) -> bool {
    outcome.lp_ok == Some(false) || outcome.witness_ok == Some(false)
}

fn trial_rng(seed: u64, weight: usize, trial_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((weight as u64) << 32) | (trial_index & 0xffff_ffff));
    rng
}

/// Transmitted words for one trial: zero, plus one seeded random
/// codeword when the code is enumerable and the draw is nonzero.
fn sample_words(words: &Option<Vec<BitWord>>, n: usize, rng: &mut ChaCha8Rng) -> Vec<BitWord> {
    let mut picked = vec![BitWord::zero(n)];
    if let Some(all) = words {
        let cw = all[rng.gen_range(0..all.len())].clone();
        if !cw.is_zero() {
            picked.push(cw);
        }
    }
    picked
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, w: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..w {
        let j = rng.gen_range(i..n);
        pool.swap(i, j);
    }
    let mut subset = pool[..w].to_vec();
    subset.sort_unstable();
    subset
}

/// Pretty JSON; stable byte-for-byte for a fixed config and seed.
pub fn report_json(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).unwrap();
    text.push('\n');
    text
}

/// The same numbers as the JSON rows, one CSV line per weight;
/// disabled counts are empty cells.
pub fn report_csv(report: &Report) -> String {
    let mut out = String::from("weight,trials,witness_ok,lp_success,flip_success\n");
    let cell = |v: &Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.weight,
            row.trials,
            cell(&row.witness_ok_count),
            cell(&row.lp_success_count),
            cell(&row.flip_success_count),
        ));
    }
    out
}

/// Rejection-samples generator seeds until certification succeeds.
/// Seeds run seed_start, seed_start+1, ...; the winning seed comes
/// back with the instance and its certificate. Samples whose pruned
/// check count breaks left-regularity are skipped, not fatal.
pub fn gen_search(
    n: usize,
    m: usize,
    c: usize,
    params: &ExpansionParams,
    seed_start: u64,
    attempts: u64,
) -> Result<(TannerGraph, ExpansionCertificate, u64), HarnessError> {
    for offset in 0..attempts {
        let seed = seed_start + offset;
        let g = match crate::code_core::generate_regular(n, m, c, seed) {
            Ok(g) => g,
            Err(GraphError::ResampleBudgetExhausted) => continue,
            Err(e) => return Err(e.into()),
        };
        if g.left_degree() != Some(c) {
            continue;
        }
        let cert = certify_expansion(&g, params, CERT_BUDGET)?;
        if cert.status == CertificateStatus::Certified {
            return Ok((g, cert, seed));
        }
    }
    Err(HarnessError::GenBudget { attempts })
}

/// The built-in regression instance: two duplicated coordinate pairs,
/// minimum distance 2, certified at ε = 1/2, and LP decoding unable to
/// uniquely correct one error on a duplicated coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub graph: TannerGraph,
    pub params: ExpansionParams,
    pub certificate: ExpansionCertificate,
    pub min_distance: usize,
    /// lp_decode on e_1 (error on the first duplicated coordinate).
    pub decode: DecodeResult,
}

pub fn counterexample() -> Counterexample {
    let graph = build_graph(
        4,
        4,
        &[(0, 0), (0, 1), (1, 0), (1, 1), (2, 2), (2, 3), (3, 2), (3, 3)],
    )
    .unwrap();
    let params = ExpansionParams::new(ratio(1, 2), ratio(1, 2), 2).unwrap();
    let certificate = certify_expansion(&graph, &params, CERT_BUDGET).unwrap();
    let dist = match min_distance(&graph, graph.n()) {
        MinDistance::Exact(d) => d,
        MinDistance::AboveCap => unreachable!("searched all weights"),
    };
    let e1 = BitWord::from_support(4, &[0]).unwrap();
    let decode = lp_decode(&graph, &e1).unwrap();
    Counterexample {
        graph,
        params,
        certificate,
        min_distance: dist,
        decode,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code_core::neighborhood_size;
    use crate::decoders::nearest_codeword;

    fn fixture_path(name: &str) -> String {
        format!(
            "{}/tests/fixtures/{}.alist",
            env!("CARGO_MANIFEST_DIR"),
            name
        )
    }

    fn pack10_config() -> ExperimentConfig {
        ExperimentConfig {
            graph: GraphSource::Alist {
                path: fixture_path("pack_n10"),
            },
            epsilon: ratio(3, 4),
            delta: ratio(3, 10),
            weights: vec![0, 1],
            trials: Trials::Exhaustive,
            decoders: vec![Algo::Lp, Algo::Flip],
            witness_check: true,
            seed: 7,
        }
    }

    fn write_temp_alist(name: &str, g: &TannerGraph) -> String {
        let dir = std::env::temp_dir().join("expander-lp-harness-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        std::fs::write(&path, crate::code_core::write_alist(g)).unwrap();
        path.to_str().unwrap().to_string()
    }

    #[test]
    fn radius_sweep_is_perfect_on_a_certified_instance() {
        let report = run_experiment(&pack10_config()).unwrap();
        assert_eq!(
            report.instance.certificate.status,
            CertificateStatus::Certified
        );
        assert_eq!(report.instance.radius, Some(1));
        assert_eq!(report.instance.floor_delta_n, 3);
        assert!(report.theorem_ok);
        assert_eq!(report.theorem_violation, None);
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.rows[0].trials, 1);
        assert_eq!(report.rows[1].trials, 10);
        for row in &report.rows {
            assert_eq!(row.witness_ok_count, Some(row.trials));
            assert_eq!(row.lp_success_count, Some(row.trials));
            assert_eq!(row.flip_success_count, Some(row.trials));
            assert!(row.failures.is_empty());
        }
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let mut config = pack10_config();
        config.trials = Trials::Count(5);
        config.weights = vec![1, 3];
        let a = run_experiment(&config).unwrap();
        let b = run_experiment(&config).unwrap();
        assert_eq!(report_json(&a), report_json(&b));
        assert_eq!(report_csv(&a), report_csv(&b));
        let parsed: Report = serde_json::from_str(&report_json(&a)).unwrap();
        assert_eq!(parsed, a);
    }

    #[test]
    fn csv_rows_mirror_json_counts() {
        let mut config = pack10_config();
        config.decoders = vec![Algo::Lp];
        let report = run_experiment(&config).unwrap();
        let csv = report_csv(&report);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("weight,trials,witness_ok,lp_success,flip_success")
        );
        for (line, row) in lines.zip(&report.rows) {
            assert_eq!(
                line,
                format!(
                    "{},{},{},{},",
                    row.weight,
                    row.trials,
                    row.witness_ok_count.unwrap(),
                    row.lp_success_count.unwrap()
                )
            );
        }
    }

    #[test]
    fn ambiguous_failures_are_recorded_without_tripping_the_theorem() {
        // The distance-2 counterexample at ε = 1/2: no radius is
        // defined, so 0% LP success at weight 1 is recorded, not fatal.
        let path = write_temp_alist("dup_pair.alist", &counterexample().graph);
        let config = ExperimentConfig {
            graph: GraphSource::Alist { path },
            epsilon: ratio(1, 2),
            delta: ratio(1, 2),
            weights: vec![1],
            trials: Trials::Exhaustive,
            decoders: vec![Algo::Lp],
            witness_check: true,
            seed: 1,
        };
        let report = run_experiment(&config).unwrap();
        assert_eq!(
            report.instance.certificate.status,
            CertificateStatus::Certified
        );
        assert_eq!(report.instance.radius, None);
        assert!(report.theorem_ok);
        let row = &report.rows[0];
        assert_eq!(row.trials, 4);
        assert_eq!(row.lp_success_count, Some(0));
        assert_eq!(row.witness_ok_count, Some(0));
        assert!(!row.failures.is_empty());
        assert!(row.failures.len() <= FAILURE_SAMPLE_CAP);
        assert!(row.failures.iter().any(|f| f.kind == FailureKind::Lp));
        assert!(row.failures.iter().any(|f| f.kind == FailureKind::Witness));
        assert!(row.failures.iter().all(|f| f.u.len() == 1 && f.u[0] >= 1));
    }

    #[test]
    fn sampled_sweeps_stay_internally_consistent() {
        let mut config = pack10_config();
        config.trials = Trials::Count(12);
        config.weights = vec![2, 4];
        config.decoders = vec![Algo::Lp];
        let report = run_experiment(&config).unwrap();
        assert!(report.theorem_ok);
        for row in &report.rows {
            assert_eq!(row.trials, 12);
            assert!(row.witness_ok_count.unwrap() <= row.trials);
            assert!(row.lp_success_count.unwrap() <= row.trials);
            assert_eq!(row.flip_success_count, None);
        }
    }

    #[test]
    fn config_validation_rejects_malformed_sweeps() {
        let base = pack10_config();
        let run = |edit: fn(&mut ExperimentConfig)| {
            let mut config = base.clone();
            edit(&mut config);
            run_experiment(&config)
        };
        for broken in [
            run(|c| c.weights = vec![]),
            run(|c| c.weights = vec![2, 1]),
            run(|c| c.weights = vec![1, 1]),
            run(|c| c.weights = vec![11]),
            run(|c| c.trials = Trials::Count(0)),
            run(|c| c.decoders = vec![Algo::Lp, Algo::Lp]),
            run(|c| {
                c.decoders = vec![];
                c.witness_check = false;
            }),
        ] {
            assert!(matches!(broken, Err(HarnessError::BadConfig(_))));
        }
        let missing = run(|c| {
            c.graph = GraphSource::Alist {
                path: "/nonexistent/path.alist".into(),
            }
        });
        assert!(matches!(missing, Err(HarnessError::Io(_))));
    }

    #[test]
    fn exhaustive_mode_is_capped_at_sixteen_variables() {
        let edges: Vec<(usize, usize)> = (0..17).map(|i| (i, i % 4)).collect();
        let g = build_graph(17, 4, &edges).unwrap();
        let path = write_temp_alist("wide.alist", &g);
        let config = ExperimentConfig {
            graph: GraphSource::Alist { path },
            epsilon: ratio(3, 4),
            delta: ratio(1, 17),
            weights: vec![1],
            trials: Trials::Exhaustive,
            decoders: vec![Algo::Flip],
            witness_check: false,
            seed: 0,
        };
        assert!(matches!(
            run_experiment(&config),
            Err(HarnessError::BadConfig(_))
        ));
    }

    #[test]
    fn generated_sources_run_without_a_file() {
        let config = ExperimentConfig {
            graph: GraphSource::Generate {
                n: 12,
                m: 12,
                c: 4,
                seed: 59,
            },
            epsilon: ratio(3, 4),
            delta: ratio(1, 6),
            weights: vec![1],
            trials: Trials::Count(6),
            decoders: vec![Algo::Lp],
            witness_check: true,
            seed: 3,
        };
        let report = run_experiment(&config).unwrap();
        assert_eq!(
            report.instance.certificate.status,
            CertificateStatus::Certified
        );
        assert_eq!(report.instance.radius, Some(0));
        assert!(report.theorem_ok);
        assert_eq!(report.rows[0].trials, 6);
    }

    #[test]
    fn gen_search_lands_on_the_first_certifying_seed() {
        let params = ExpansionParams::new(ratio(3, 4), ratio(1, 6), 4).unwrap();
        let (g, cert, seed) = gen_search(12, 12, 4, &params, 0, 100).unwrap();
        assert_eq!(seed, 59);
        assert_eq!(cert.status, CertificateStatus::Certified);
        assert_eq!(g.left_degree(), Some(4));
        assert_eq!(params.floor_delta_n(g.n()), 2);
    }

    #[test]
    fn gen_search_reports_budget_exhaustion() {
        // ⌊δn⌋ = 3 at n = 14, m = 12 forces triple overlaps; no seed
        // certifies (measured over 10^4), so a small budget must fail.
        let params = ExpansionParams::new(ratio(3, 4), ratio(3, 14), 4).unwrap();
        assert!(matches!(
            gen_search(14, 12, 4, &params, 0, 25),
            Err(HarnessError::GenBudget { attempts: 25 })
        ));
    }

    #[test]
    fn counterexample_facts_hold() {
        let cx = counterexample();
        assert_eq!(cx.min_distance, 2);
        assert_eq!(cx.certificate.status, CertificateStatus::Certified);
        assert_eq!(cx.certificate.checked_subsets, 10);
        // ε = 1/2 expansion: |N(S)| ≥ |S| for every |S| ≤ 2.
        assert_eq!(neighborhood_size(&cx.graph, &[0, 1]), 2);
        assert_eq!(cx.decode.status, DecodeStatus::AmbiguousOptimum);
        assert_eq!(cx.decode.word, None);
        let y = BitWord::from_support(4, &[0]).unwrap();
        let rival: BitWord = "1100".parse().unwrap();
        assert_eq!(y.dist(&BitWord::zero(4)), 1);
        assert_eq!(y.dist(&rival), 1);
        assert_eq!(nearest_codeword(&cx.graph, &y).unwrap(), BitWord::zero(4));
    }
}
