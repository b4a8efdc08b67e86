//! Decoding over the fundamental polytope: the exact LP decoder, the
//! greedy bit-flipping baseline, and a brute-force nearest-codeword
//! oracle backing the ML-certificate property.
//!
//! Success means a unique integral optimum; anything weaker (a
//! fractional vertex, a tied optimal face, unresolved uniqueness) is
//! reported as failure with its own status.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code_core::{codewords, is_codeword, syndrome, BitWord, GraphError, TannerGraph};
use crate::lp_solver::{
    is_unique_optimum, solve_exact, LinearProgram, LpError, LpStatus, Relation, Uniqueness,
};
use crate::ratio::{format_ratio, ratio_int, Rational};

/// A degree-d check contributes 2^{d−1} odd-set rows.
pub const MAX_CHECK_DEGREE: usize = 12;
/// nearest_codeword enumerates every codeword.
pub const MAX_EXHAUSTIVE_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeStatus {
    Decoded,
    FractionalOptimum,
    AmbiguousOptimum,
    NoConvergence,
}

/// Outcome of one decode. Invariants: word is present exactly for
/// Decoded and is then a codeword; lp_value rides the LP path,
/// iterations the flip path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub status: DecodeStatus,
    pub word: Option<BitWord>,
    pub lp_value: Option<Rational>,
    pub iterations: Option<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("received word has length {found}, graph has n = {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("check {check} has degree {degree}; the odd-set LP caps degree at {cap}")]
    CheckDegreeTooLarge {
        check: usize,
        degree: usize,
        cap: usize,
    },
    #[error("nearest_codeword is exhaustive and capped at n <= {cap}, got n = {n}")]
    TooLargeForExhaustive { n: usize, cap: usize },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The decoding LP: f ∈ [0,1]^n, for every check j and odd S ⊆ N(j)
/// the row Σ_{i∈S} f_i − Σ_{i∈N(j)∖S} f_i ≤ |S|−1, objective
/// Σ (1−2y_i) f_i. Integral feasible points are exactly the codewords;
/// the objective is Hamming distance to y up to an additive constant.
pub fn build_decoding_lp(
    g: &TannerGraph,
    y: &BitWord,
) -> Result<LinearProgram<Rational>, DecodeError> {
    if y.len() != g.n() {
        return Err(DecodeError::LengthMismatch {
            expected: g.n(),
            found: y.len(),
        });
    }
    for check in 0..g.m() {
        let degree = g.check_degree(check);
        if degree > MAX_CHECK_DEGREE {
            return Err(DecodeError::CheckDegreeTooLarge {
                check,
                degree,
                cap: MAX_CHECK_DEGREE,
            });
        }
    }
    let mut lp = LinearProgram::new(g.n());
    for i in 0..g.n() {
        lp.set_bounds(i, Rational::zero(), Some(ratio_int(1)));
        lp.objective[i] = ratio_int(if y.get(i) { -1 } else { 1 });
    }
    for j in 0..g.m() {
        let vars = g.check_vars(j);
        for mask in 1u32..1u32 << vars.len() {
            if mask.count_ones() % 2 == 0 {
                continue;
            }
            let mut coeffs = vec![Rational::zero(); g.n()];
            for (bit, &i) in vars.iter().enumerate() {
                coeffs[i] = ratio_int(if mask >> bit & 1 == 1 { 1 } else { -1 });
            }
            lp.push_constraint(coeffs, Relation::Le, ratio_int(mask.count_ones() as i64 - 1));
        }
    }
    Ok(lp)
}

/// Exact LP decoding: solve, resolve uniqueness, classify. Decoded
/// only for a unique integral optimum; a unique fractional optimum is
/// FractionalOptimum; a tied optimal face is AmbiguousOptimum.
pub fn lp_decode(g: &TannerGraph, y: &BitWord) -> Result<DecodeResult, DecodeError> {
    let lp = build_decoding_lp(g, y)?;
    let sol = solve_exact(&lp)?;
    if sol.status != LpStatus::Optimal {
        // The polytope contains 0 and sits inside the unit box, so
        // this is unreachable for a well-formed graph.
        return Err(DecodeError::Lp(LpError::NotOptimal { status: sol.status }));
    }
    let unique = match sol.unique {
        Uniqueness::Unknown => is_unique_optimum(&lp, &sol)?,
        settled => settled,
    };
    let point = sol.point.as_ref().unwrap();
    let value = sol.value.clone().unwrap();
    if unique != Uniqueness::Yes {
        return Ok(DecodeResult {
            status: DecodeStatus::AmbiguousOptimum,
            word: None,
            lp_value: Some(value),
            iterations: None,
        });
    }
    let integral = point.iter().all(|f| f.is_zero() || f.is_one());
    if !integral {
        return Ok(DecodeResult {
            status: DecodeStatus::FractionalOptimum,
            word: None,
            lp_value: Some(value),
            iterations: None,
        });
    }
    let word = BitWord::from_bits(point.iter().map(|f| f.is_one()).collect());
    debug_assert!(is_codeword(g, &word).unwrap());
    Ok(DecodeResult {
        status: DecodeStatus::Decoded,
        word: Some(word),
        lp_value: Some(value),
        iterations: None,
    })
}

/// Greedy serial flipping: while some variable sees strictly more
/// unsatisfied than satisfied checks, flip the one with the most
/// unsatisfied (smallest index on ties). Each flip strictly lowers the
/// number of unsatisfied checks, so termination is structural;
/// max_rounds only caps the walk.
pub fn flip_decode(
    g: &TannerGraph,
    y: &BitWord,
    max_rounds: usize,
) -> Result<DecodeResult, DecodeError> {
    if y.len() != g.n() {
        return Err(DecodeError::LengthMismatch {
            expected: g.n(),
            found: y.len(),
        });
    }
    let mut word = y.clone();
    let mut flips = 0;
    loop {
        let syn = syndrome(g, &word)?;
        let unsat_total = syn.weight();
        if unsat_total == 0 {
            return Ok(DecodeResult {
                status: DecodeStatus::Decoded,
                word: Some(word),
                lp_value: None,
                iterations: Some(flips),
            });
        }
        let mut best: Option<(usize, usize)> = None;
        if flips < max_rounds {
            for i in 0..g.n() {
                let unsat = g.var_checks(i).iter().filter(|&&j| syn.get(j)).count();
                if 2 * unsat > g.var_degree(i) && best.is_none_or(|(u, _)| unsat > u) {
                    best = Some((unsat, i));
                }
            }
        }
        let Some((unsat, i)) = best else {
            return Ok(DecodeResult {
                status: DecodeStatus::NoConvergence,
                word: None,
                lp_value: None,
                iterations: Some(flips),
            });
        };
        word.flip(i);
        flips += 1;
        let after = syndrome(g, &word)?.weight();
        assert!(
            after < unsat_total,
            "flip of {i} (unsat {unsat}) did not decrease the syndrome"
        );
    }
}

/// Brute-force ML oracle: the Hamming-nearest codeword, ties broken
/// lexicographically.
pub fn nearest_codeword(g: &TannerGraph, y: &BitWord) -> Result<BitWord, DecodeError> {
    if g.n() > MAX_EXHAUSTIVE_N {
        return Err(DecodeError::TooLargeForExhaustive {
            n: g.n(),
            cap: MAX_EXHAUSTIVE_N,
        });
    }
    if y.len() != g.n() {
        return Err(DecodeError::LengthMismatch {
            expected: g.n(),
            found: y.len(),
        });
    }
    let best = codewords(g)?
        .into_iter()
        .min_by_key(|cw| (cw.dist(y), cw.clone()))
        .unwrap();
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Lp,
    Flip,
}

/// One decode call as the CLI accepts it. max_rounds (flip only)
/// defaults to 10n when absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeRequest {
    pub y: BitWord,
    pub algo: Algo,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rounds: Option<usize>,
}

/// The CLI's reply; value is the exact LP optimum as "p/q".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeResponse {
    pub status: DecodeStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<BitWord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
}

impl From<&DecodeResult> for DecodeResponse {
    fn from(r: &DecodeResult) -> Self {
        DecodeResponse {
            status: r.status,
            word: r.word.clone(),
            value: r.lp_value.as_ref().map(format_ratio),
            iterations: r.iterations,
        }
    }
}

/// Dispatches a request to the named decoder.
pub fn run_request(g: &TannerGraph, req: &DecodeRequest) -> Result<DecodeResult, DecodeError> {
    match req.algo {
        Algo::Lp => lp_decode(g, &req.y),
        Algo::Flip => flip_decode(g, &req.y, req.max_rounds.unwrap_or(10 * g.n())),
    }
}
