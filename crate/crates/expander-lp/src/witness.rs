//! The dual witness for LP decoding success: dilate the error set U to
//! U′ = U ∪ Û, bound |U′|, turn an (εc)-matching for U′ into edge
//! weights τ taking values in {−x, 0, +x}, and verify the two
//! feasibility conditions (pairwise sums ≥ 0 at every check, weight
//! sums strictly below γ at every variable) in exact arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code_core::{CertificateStatus, ExpansionCertificate, ExpansionParams, TannerGraph};
use crate::matching::{find_q_matching, verify_q_matching, MatchingError, QMatching};
use crate::ratio::{floor_mul, format_ratio, parse_ratio, ratio, ratio_int, Rational};

/// The error locations U together with the sign vector γ.
/// Invariant: gamma has length n with gamma\[i\] = −1 ⇔ i ∈ u.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorContext {
    /// Sorted error locations.
    pub u: Vec<usize>,
    pub gamma: Vec<i8>,
}

/// U, its dilation Û = {i ∉ U : |N(i) ∩ N(U)| ≥ (2ε−1)c}, and the
/// union U′. All three sorted; u and u_hat are disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilatedErrorSet {
    pub u: Vec<usize>,
    pub u_hat: Vec<usize>,
    pub u_prime: Vec<usize>,
}

/// Diagnostics for the dilation bound |U′| ≤ δn: the premise
/// |U| < (3ε−2)/(2ε−1)·⌊δn⌋, the conclusion, and the sharper bound
/// |Û| ≤ (1−ε)/(3ε−2)·|U| from the proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DilationReport {
    pub u_size: usize,
    pub u_hat_size: usize,
    pub u_prime_size: usize,
    pub floor_delta_n: usize,
    pub premise_ok: bool,
    /// |U′| ≤ δn.
    pub holds: bool,
    #[serde(with = "crate::ratio::serde_pq")]
    pub proof_bound: Rational,
    pub proof_bound_holds: bool,
}

/// Edge weights τ as signs scaled by a single magnitude x.
/// Invariant: signs covers exactly the edge set of the graph it was
/// built for, with values in {−1, 0, +1}; x is strictly inside the
/// admissible interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightAssignment {
    pub x: Rational,
    pub signs: BTreeMap<(usize, usize), i8>,
}

impl WeightAssignment {
    /// τ_{i,j}, or None when (i,j) carries no weight.
    pub fn tau(&self, variable: usize, check: usize) -> Option<Rational> {
        self.signs.get(&(variable, check)).map(|&s| match s {
            -1 => -self.x.clone(),
            0 => Rational::zero(),
            _ => self.x.clone(),
        })
    }
}

/// Outcome of the two feasibility conditions, with enough detail to
/// see where slack is spent: per-variable weight sums and the first
/// violating pair, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    /// First (check, i, i′) with τ_{i,j} + τ_{i′,j} < 0.
    pub pairwise_violation: Option<(usize, usize, usize)>,
    pub node_sums: Vec<Rational>,
    /// node_ok\[i\] ⇔ node_sums\[i\] < γ_i, strictly.
    pub node_ok: Vec<bool>,
}

/// Everything the construction pipeline produced, kept together so a
/// failure report or a success certificate can cite any piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub dilation: DilatedErrorSet,
    pub dilation_report: DilationReport,
    pub matching: QMatching,
    pub assignment: WeightAssignment,
    pub feasibility: FeasibilityReport,
    /// Status of the expansion certificate supplied by the caller;
    /// None when construction ran without one.
    pub certificate_status: Option<CertificateStatus>,
}

/// Pipeline stage names for failure reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessStage {
    Dilation,
    DilationBound,
    Matching,
    Assignment,
    Verification,
}

impl fmt::Display for WitnessStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessStage::Dilation => "dilation",
            WitnessStage::DilationBound => "dilation-bound",
            WitnessStage::Matching => "matching",
            WitnessStage::Assignment => "assignment",
            WitnessStage::Verification => "verification",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("variable {variable} out of range or repeated in U")]
    BadErrorSet { variable: usize },
    #[error("dilation threshold (2*epsilon-1)*c must be positive, got epsilon = {epsilon}")]
    ThresholdVacuous { epsilon: String },
    #[error("the decoding guarantee needs epsilon > 2/3, got epsilon = {epsilon}")]
    EpsilonTooSmall { epsilon: String },
    #[error("x interval is empty at epsilon = {epsilon}; feasibility needs epsilon > 2/3")]
    EmptyInterval { epsilon: String },
    #[error("x interval has no finite upper end at epsilon = {epsilon}, c = {c}")]
    UnboundedInterval { epsilon: String, c: usize },
    #[error("epsilon*c = {eps_c} is not an integer; the matching quota must be integral")]
    NonIntegralQuota { eps_c: String },
    #[error("premise violated: |U| = {u_size} is not below (3*epsilon-2)/(2*epsilon-1)*floor(delta*n) = {premise_cap}")]
    DilationPremise { u_size: usize, premise_cap: String },
    #[error("no {q}-matching exists for U' of size {u_prime_size} (dilation bound held: {dilation_bound_holds})")]
    NoMatching {
        q: usize,
        u_prime_size: usize,
        dilation_bound_holds: bool,
    },
    #[error("matching is not a verified {q}-matching with respect to U'")]
    MatchingMismatch { q: usize },
    #[error("no weight for edge ({variable}, {check})")]
    MissingWeight { variable: usize, check: usize },
    #[error("weight on ({variable}, {check}), which is not an edge")]
    StrayWeight { variable: usize, check: usize },
    #[error("gamma has length {found}, graph has {expected} variables")]
    ContextMismatch { expected: usize, found: usize },
    #[error("constructed weights fail feasibility verification")]
    ConstructionInfeasible,
    #[error("witness document rejected: {0}")]
    BadDocument(String),
    #[error("witness construction failed at stage {stage}: {source}")]
    Stage {
        stage: WitnessStage,
        source: Box<WitnessError>,
    },
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

fn staged(stage: WitnessStage, source: WitnessError) -> WitnessError {
    WitnessError::Stage {
        stage,
        source: Box::new(source),
    }
}

fn validate_error_set(n: usize, u: &[usize]) -> Result<Vec<usize>, WitnessError> {
    let mut sorted = u.to_vec();
    sorted.sort_unstable();
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            return Err(WitnessError::BadErrorSet { variable: pair[0] });
        }
    }
    if let Some(&last) = sorted.last() {
        if last >= n {
            return Err(WitnessError::BadErrorSet { variable: last });
        }
    }
    Ok(sorted)
}

impl ErrorContext {
    /// γ_i = −1 on U, +1 off it.
    pub fn from_error_set(n: usize, u: &[usize]) -> Result<Self, WitnessError> {
        let sorted = validate_error_set(n, u)?;
        let mut gamma = vec![1i8; n];
        for &i in &sorted {
            gamma[i] = -1;
        }
        Ok(ErrorContext { u: sorted, gamma })
    }
}

/// (3ε−2)/(2ε−1), the factor in both the radius and the dilation-bound
/// premise. Positive exactly when ε > 2/3.
fn radius_factor(params: &ExpansionParams) -> Result<Rational, WitnessError> {
    let eps = params.epsilon();
    let numer = ratio_int(3) * eps - ratio_int(2);
    if !numer.is_positive() {
        return Err(WitnessError::EpsilonTooSmall {
            epsilon: format_ratio(eps),
        });
    }
    let denom = ratio_int(2) * eps - ratio_int(1);
    Ok(numer / denom)
}

/// Û by the threshold |N(i) ∩ N(U)| ≥ (2ε−1)c, compared exactly.
pub fn dilate(
    g: &TannerGraph,
    u: &[usize],
    params: &ExpansionParams,
) -> Result<DilatedErrorSet, WitnessError> {
    let sorted_u = validate_error_set(g.n(), u)?;
    let threshold = (ratio_int(2) * params.epsilon() - ratio_int(1)) * ratio_int(params.c() as i64);
    if !threshold.is_positive() {
        return Err(WitnessError::ThresholdVacuous {
            epsilon: format_ratio(params.epsilon()),
        });
    }
    let mut in_nu = vec![false; g.m()];
    for &i in &sorted_u {
        for &j in g.var_checks(i) {
            in_nu[j] = true;
        }
    }
    let mut u_hat = Vec::new();
    let mut cursor = 0;
    for i in 0..g.n() {
        if cursor < sorted_u.len() && sorted_u[cursor] == i {
            cursor += 1;
            continue;
        }
        let overlap = g.var_checks(i).iter().filter(|&&j| in_nu[j]).count();
        if ratio_int(overlap as i64) >= threshold {
            u_hat.push(i);
        }
    }
    let mut u_prime: Vec<usize> = sorted_u.iter().chain(u_hat.iter()).copied().collect();
    u_prime.sort_unstable();
    Ok(DilatedErrorSet {
        u: sorted_u,
        u_hat,
        u_prime,
    })
}

/// Unconditional report; callers have already ensured ε > 2/3 so the
/// proof-bound denominator 3ε−2 is positive.
fn dilation_report(
    dil: &DilatedErrorSet,
    params: &ExpansionParams,
    factor: &Rational,
    n: usize,
) -> DilationReport {
    let fdn = params.floor_delta_n(n);
    let premise_cap = factor * ratio_int(fdn as i64);
    let premise_ok = ratio_int(dil.u.len() as i64) < premise_cap;
    let holds = ratio_int(dil.u_prime.len() as i64) <= params.delta() * ratio_int(n as i64);
    let proof_bound = (ratio_int(1) - params.epsilon())
        / (ratio_int(3) * params.epsilon() - ratio_int(2))
        * ratio_int(dil.u.len() as i64);
    let proof_bound_holds = ratio_int(dil.u_hat.len() as i64) <= proof_bound;
    DilationReport {
        u_size: dil.u.len(),
        u_hat_size: dil.u_hat.len(),
        u_prime_size: dil.u_prime.len(),
        floor_delta_n: fdn,
        premise_ok,
        holds,
        proof_bound,
        proof_bound_holds,
    }
}

/// Dilates and reports on |U′| ≤ δn. Errs when the premise
/// |U| < (3ε−2)/(2ε−1)·⌊δn⌋ fails; the conclusion itself is carried
/// in the report (it can fail on uncertified graphs).
pub fn check_dilation_bound(
    g: &TannerGraph,
    u: &[usize],
    params: &ExpansionParams,
) -> Result<DilationReport, WitnessError> {
    let factor = radius_factor(params)?;
    let dil = dilate(g, u, params)?;
    let report = dilation_report(&dil, params, &factor, g.n());
    if !report.premise_ok {
        return Err(WitnessError::DilationPremise {
            u_size: report.u_size,
            premise_cap: format_ratio(&(factor * ratio_int(report.floor_delta_n as i64))),
        });
    }
    Ok(report)
}

/// The admissible open interval for x: lo = 1/((2ε−1)c), hi the least
/// of 1/((1−ε)c) and 1/((2ε−1)c − 1), skipping ends whose denominator
/// is not positive (those conditions are vacuous). lo < hi exactly
/// because ε > 2/3.
pub fn x_interval(params: &ExpansionParams) -> Result<(Rational, Rational), WitnessError> {
    let eps = params.epsilon();
    if eps <= &ratio(2, 3) {
        return Err(WitnessError::EmptyInterval {
            epsilon: format_ratio(eps),
        });
    }
    if params.eps_c_integral().is_none() {
        let eps_c = eps * ratio_int(params.c() as i64);
        return Err(WitnessError::NonIntegralQuota {
            eps_c: format_ratio(&eps_c),
        });
    }
    let c = ratio_int(params.c() as i64);
    let two_eps_minus_one = ratio_int(2) * eps - ratio_int(1);
    let lo = (two_eps_minus_one.clone() * &c).recip();
    let mut hi: Option<Rational> = None;
    let mut offer = |denom: Rational| {
        if denom.is_positive() {
            let end = denom.recip();
            if hi.as_ref().is_none_or(|h| end < *h) {
                hi = Some(end);
            }
        }
    };
    offer((ratio_int(1) - eps) * &c);
    offer(two_eps_minus_one * &c - ratio_int(1));
    let hi = hi.ok_or(WitnessError::UnboundedInterval {
        epsilon: format_ratio(eps),
        c: params.c(),
    })?;
    debug_assert!(lo < hi);
    Ok((lo, hi))
}

/// The x used by the construction: the interval midpoint.
pub fn x_value(params: &ExpansionParams) -> Result<Rational, WitnessError> {
    let (lo, hi) = x_interval(params)?;
    Ok((lo + hi) / ratio_int(2))
}

/// Weights from a verified (εc)-matching M for U′: each check matched
/// to an error node i gets τ_{i,j} = −x and τ_{i′,j} = +x for every
/// other i′ ∈ N(j); every other check is all-zero. Checks matched to
/// Û nodes thus carry nothing.
pub fn assign_weights(
    g: &TannerGraph,
    u: &[usize],
    m: &QMatching,
    params: &ExpansionParams,
) -> Result<WeightAssignment, WitnessError> {
    let quota = params.eps_c_integral().ok_or_else(|| {
        let eps_c = params.epsilon() * ratio_int(params.c() as i64);
        WitnessError::NonIntegralQuota {
            eps_c: format_ratio(&eps_c),
        }
    })?;
    let dil = dilate(g, u, params)?;
    if m.q != quota || m.x_set != dil.u_prime || !verify_q_matching(g, m) {
        return Err(WitnessError::MatchingMismatch { q: quota });
    }
    let x = x_value(params)?;
    let mut signs: BTreeMap<(usize, usize), i8> =
        g.edges().into_iter().map(|e| (e, 0)).collect();
    for &(i, j) in &m.edges {
        if dil.u.binary_search(&i).is_err() {
            continue;
        }
        for &other in g.check_vars(j) {
            signs.insert((other, j), if other == i { -1 } else { 1 });
        }
    }
    Ok(WeightAssignment { x, signs })
}

/// Condition (1) per check via the pair with the smallest sum: the two
/// least weights. Equivalent to the exhaustive pairwise scan; checks
/// of degree one have no pair and pass vacuously.
fn pairwise_shortcut(g: &TannerGraph, w: &WeightAssignment) -> bool {
    (0..g.m()).all(|j| {
        let vars = g.check_vars(j);
        if vars.len() < 2 {
            return true;
        }
        let mut least: Option<Rational> = None;
        let mut second: Option<Rational> = None;
        for &i in vars {
            let t = match w.tau(i, j) {
                Some(t) => t,
                None => return false,
            };
            if least.as_ref().is_none_or(|l| t < *l) {
                second = least.take();
                least = Some(t);
            } else if second.as_ref().is_none_or(|s| t < *s) {
                second = Some(t);
            }
        }
        !(least.unwrap() + second.unwrap()).is_negative()
    })
}

/// Definition-2 feasibility: for every check j and distinct i,i′ ∈ N(j),
/// τ_{i,j} + τ_{i′,j} ≥ 0; for every variable i, Σ_j τ_{i,j} < γ_i
/// strictly. Black-box: judges any total assignment, however produced.
pub fn verify_feasible(
    g: &TannerGraph,
    w: &WeightAssignment,
    ctx: &ErrorContext,
) -> Result<FeasibilityReport, WitnessError> {
    if ctx.gamma.len() != g.n() {
        return Err(WitnessError::ContextMismatch {
            expected: g.n(),
            found: ctx.gamma.len(),
        });
    }
    for (&(variable, check), _) in &w.signs {
        if !g.has_edge(variable, check) {
            return Err(WitnessError::StrayWeight { variable, check });
        }
    }
    let mut pairwise_violation = None;
    'checks: for j in 0..g.m() {
        let vars = g.check_vars(j);
        let mut taus = Vec::with_capacity(vars.len());
        for &i in vars {
            taus.push(w.tau(i, j).ok_or(WitnessError::MissingWeight {
                variable: i,
                check: j,
            })?);
        }
        for a in 0..vars.len() {
            for b in a + 1..vars.len() {
                if (taus[a].clone() + &taus[b]).is_negative() {
                    pairwise_violation = Some((j, vars[a], vars[b]));
                    break 'checks;
                }
            }
        }
    }
    let mut node_sums = Vec::with_capacity(g.n());
    let mut node_ok = Vec::with_capacity(g.n());
    for i in 0..g.n() {
        let mut sum = Rational::zero();
        for &j in g.var_checks(i) {
            sum += w.tau(i, j).ok_or(WitnessError::MissingWeight {
                variable: i,
                check: j,
            })?;
        }
        node_ok.push(sum < ratio_int(ctx.gamma[i] as i64));
        node_sums.push(sum);
    }
    debug_assert_eq!(pairwise_violation.is_none(), pairwise_shortcut(g, w));
    Ok(FeasibilityReport {
        feasible: pairwise_violation.is_none() && node_ok.iter().all(|&ok| ok),
        pairwise_violation,
        node_sums,
        node_ok,
    })
}

/// The full pipeline: dilate, find an (εc)-matching for U′, assign
/// weights, verify. A missing matching is reported against the
/// dilation-bound stage when |U′| > δn (the likely root cause) and
/// the matching stage otherwise; a failed dilation bound alone does
/// not abort, since feasibility is self-contained.
pub fn construct_witness(
    g: &TannerGraph,
    u: &[usize],
    params: &ExpansionParams,
    cert: Option<&ExpansionCertificate>,
) -> Result<Witness, WitnessError> {
    let quota = params.eps_c_integral().ok_or_else(|| {
        let eps_c = params.epsilon() * ratio_int(params.c() as i64);
        WitnessError::NonIntegralQuota {
            eps_c: format_ratio(&eps_c),
        }
    })?;
    let factor = radius_factor(params)?;
    x_interval(params)?;
    let dilation =
        dilate(g, u, params).map_err(|e| staged(WitnessStage::Dilation, e))?;
    let dilation_report = dilation_report(&dilation, params, &factor, g.n());
    let matching = if dilation.u_prime.is_empty() {
        QMatching {
            edges: Vec::new(),
            q: quota,
            x_set: Vec::new(),
        }
    } else {
        match find_q_matching(g, &dilation.u_prime, quota) {
            Ok(Some(m)) => m,
            Ok(None) => {
                let stage = if dilation_report.holds {
                    WitnessStage::Matching
                } else {
                    WitnessStage::DilationBound
                };
                return Err(staged(
                    stage,
                    WitnessError::NoMatching {
                        q: quota,
                        u_prime_size: dilation.u_prime.len(),
                        dilation_bound_holds: dilation_report.holds,
                    },
                ));
            }
            Err(e) => return Err(staged(WitnessStage::Matching, e.into())),
        }
    };
    let assignment = assign_weights(g, u, &matching, params)
        .map_err(|e| staged(WitnessStage::Assignment, e))?;
    let ctx = ErrorContext::from_error_set(g.n(), u)?;
    let feasibility = verify_feasible(g, &assignment, &ctx)
        .map_err(|e| staged(WitnessStage::Verification, e))?;
    if !feasibility.feasible {
        // Unreachable for a verified matching and midpoint x; kept so a
        // broken caller-supplied graph surfaces as an error, not a panic.
        return Err(staged(
            WitnessStage::Verification,
            WitnessError::ConstructionInfeasible,
        ));
    }
    Ok(Witness {
        dilation,
        dilation_report,
        matching,
        assignment,
        feasibility,
        certificate_status: cert.map(|c| c.status),
    })
}

/// t = ⌊(3ε−2)/(2ε−1)·(⌊δn⌋−1)⌋, the guaranteed number of correctable
/// errors; 0 when ⌊δn⌋ is 0 or 1.
pub fn decoding_radius(params: &ExpansionParams, n: usize) -> Result<usize, WitnessError> {
    let factor = radius_factor(params)?;
    let fdn = params.floor_delta_n(n);
    if fdn == 0 {
        return Ok(0);
    }
    Ok(floor_mul(&factor, fdn - 1))
}

/// Serialized witness form; indices are 1-based here, as in every
/// on-disk format, and signs are "-", "0", "+".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub x: String,
    pub edges: Vec<(usize, usize, String)>,
    #[serde(rename = "U")]
    pub u: Vec<usize>,
    #[serde(rename = "U_hat")]
    pub u_hat: Vec<usize>,
}

impl WitnessJson {
    pub fn from_witness(w: &Witness) -> Self {
        let sign = |s: i8| match s {
            -1 => "-".to_string(),
            0 => "0".to_string(),
            _ => "+".to_string(),
        };
        WitnessJson {
            x: format_ratio(&w.assignment.x),
            edges: w
                .assignment
                .signs
                .iter()
                .map(|(&(i, j), &s)| (i + 1, j + 1, sign(s)))
                .collect(),
            u: w.dilation.u.iter().map(|&i| i + 1).collect(),
            u_hat: w.dilation.u_hat.iter().map(|&i| i + 1).collect(),
        }
    }

    /// Validates against g and rebuilds the pieces verify_feasible
    /// needs. Rejects unknown signs, non-edges, duplicate or missing
    /// edges, bad indices, and a nonpositive x.
    pub fn to_parts(&self, g: &TannerGraph) -> Result<(WeightAssignment, ErrorContext), WitnessError> {
        let bad = |msg: &str| WitnessError::BadDocument(msg.to_string());
        let x = parse_ratio(&self.x).map_err(|e| bad(&e.to_string()))?;
        if !x.is_positive() {
            return Err(bad("x must be positive"));
        }
        let mut signs = BTreeMap::new();
        for (i1, j1, s) in &self.edges {
            let sign = match s.as_str() {
                "-" => -1,
                "0" => 0,
                "+" => 1,
                _ => return Err(bad("sign must be one of -, 0, +")),
            };
            let (i, j) = match (i1.checked_sub(1), j1.checked_sub(1)) {
                (Some(i), Some(j)) => (i, j),
                _ => return Err(bad("edge indices are 1-based")),
            };
            if !g.has_edge(i, j) {
                return Err(bad("edge not present in the graph"));
            }
            if signs.insert((i, j), sign).is_some() {
                return Err(bad("duplicate edge"));
            }
        }
        let edge_count: usize = (0..g.n()).map(|i| g.var_degree(i)).sum();
        if signs.len() != edge_count {
            return Err(bad("not every edge carries a weight"));
        }
        let mut u = Vec::with_capacity(self.u.len());
        for &i1 in &self.u {
            u.push(i1.checked_sub(1).ok_or_else(|| bad("U is 1-based"))?);
        }
        let ctx = ErrorContext::from_error_set(g.n(), &u)
            .map_err(|e| bad(&e.to_string()))?;
        for &i1 in &self.u_hat {
            let i = i1.checked_sub(1).ok_or_else(|| bad("U_hat is 1-based"))?;
            if i >= g.n() || ctx.u.binary_search(&i).is_ok() {
                return Err(bad("U_hat must avoid U and stay in range"));
            }
        }
        Ok((WeightAssignment { x, signs }, ctx))
    }
}
