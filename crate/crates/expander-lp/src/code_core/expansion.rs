//! Expansion parameters and brute-force certification.
//!
//! A graph is a (c,ε,δ)-expander when every variable subset S with
//! |S| ≤ ⌊δn⌋ has |N(S)| ≥ εc|S|. Certification enumerates subsets by
//! increasing size, lexicographically within a size, and compares the
//! two sides as exact integers: with ε = p/q, the test is
//! q·|N(S)| ≥ p·c·|S|.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combi::for_each_combination;
use crate::ratio::{floor_mul, ratio_int, Rational};

use super::graph::TannerGraph;

/// ε, δ, and the left degree c. Epsilon and delta live in (0, 1]; the
/// theorem-facing operations (radius, x interval, dilation) impose
/// their stricter ε > 2/3 and εc ∈ ℤ hypotheses themselves, so that
/// certification alone can run at ε as low as the ε = 1/2 regime of the
/// minimum-distance-2 counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionParams {
    #[serde(with = "crate::ratio::serde_pq")]
    epsilon: Rational,
    #[serde(with = "crate::ratio::serde_pq")]
    delta: Rational,
    c: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("epsilon must lie in (0, 1], got {0}")]
    EpsilonRange(String),
    #[error("delta must lie in (0, 1], got {0}")]
    DeltaRange(String),
    #[error("left degree c must be positive")]
    ZeroDegree,
    #[error("certification needs a positive subset budget")]
    ZeroBudget,
    #[error("graph is not left-regular; expansion is defined for uniform degree c")]
    NonUniformGraph,
    #[error("graph has left degree {graph_c}, parameters say {params_c}")]
    DegreeMismatch { graph_c: usize, params_c: usize },
}

impl ExpansionParams {
    pub fn new(epsilon: Rational, delta: Rational, c: usize) -> Result<Self, ExpansionError> {
        let one = ratio_int(1);
        if !epsilon.is_positive() || epsilon > one {
            return Err(ExpansionError::EpsilonRange(
                crate::ratio::format_ratio(&epsilon),
            ));
        }
        if !delta.is_positive() || delta > one {
            return Err(ExpansionError::DeltaRange(crate::ratio::format_ratio(
                &delta,
            )));
        }
        if c == 0 {
            return Err(ExpansionError::ZeroDegree);
        }
        Ok(ExpansionParams { epsilon, delta, c })
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    pub fn delta(&self) -> &Rational {
        &self.delta
    }

    pub fn c(&self) -> usize {
        self.c
    }

    /// εc when it is an integer (Theorem hypothesis), else None.
    pub fn eps_c_integral(&self) -> Option<usize> {
        let ec = self.epsilon.clone() * ratio_int(self.c as i64);
        if ec.is_integer() {
            let digits = ec.numer().to_u64_digits().1;
            match digits.len() {
                0 => Some(0),
                1 => usize::try_from(digits[0]).ok(),
                _ => None,
            }
        } else {
            None
        }
    }

    /// ⌊δn⌋, the largest subset size certification must cover.
    pub fn floor_delta_n(&self, n: usize) -> usize {
        floor_mul(&self.delta, n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    Certified,
    Violated,
    Unverified,
}

/// Outcome of brute-force certification. `violating_subset` is only
/// present for `Violated` and is the lexicographically first violator
/// of the smallest failing size; `checked_subsets` counts how many
/// subsets were examined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionCertificate {
    pub status: CertificateStatus,
    /// 0-based in the API; crosses the wire 1-based like every
    /// serialized index.
    #[serde(with = "serde_subset")]
    pub violating_subset: Option<Vec<usize>>,
    pub checked_subsets: u64,
}

mod serde_subset {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<usize>>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|u| u.iter().map(|&i| i + 1).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<usize>>, D::Error> {
        let raw: Option<Vec<usize>> = Option::deserialize(d)?;
        raw.map(|u| {
            u.into_iter()
                .map(|i| {
                    i.checked_sub(1)
                        .ok_or_else(|| serde::de::Error::custom("subset indices are 1-based"))
                })
                .collect()
        })
        .transpose()
    }
}

/// Enumerates every subset of size 1..=⌊δn⌋ in increasing size until
/// the budget runs out: `Certified` if all pass, `Violated` with the
/// first failure, `Unverified` if the budget is hit first.
pub fn certify_expansion(
    g: &TannerGraph,
    params: &ExpansionParams,
    budget: u64,
) -> Result<ExpansionCertificate, ExpansionError> {
    if budget == 0 {
        return Err(ExpansionError::ZeroBudget);
    }
    let c = g.left_degree().ok_or(ExpansionError::NonUniformGraph)?;
    if c != params.c() {
        return Err(ExpansionError::DegreeMismatch {
            graph_c: c,
            params_c: params.c(),
        });
    }
    let n = g.n();
    let size_cap = params.floor_delta_n(n);
    // q·|N(S)| ≥ p·c·|S| with ε = p/q.
    let p_times_c: BigInt = params.epsilon().numer() * BigInt::from(c);
    let q: BigInt = params.epsilon().denom().clone();

    let mut checked: u64 = 0;
    let mut violator: Option<Vec<usize>> = None;
    let mut stamp = vec![0u64; g.m()];
    let mut generation = 0u64;
    for size in 1..=size_cap.min(n) {
        let complete = for_each_combination(n, size, |subset| {
            if checked == budget {
                return false;
            }
            checked += 1;
            generation += 1;
            let mut neighbors = 0usize;
            for &variable in subset {
                for &check in g.var_checks(variable) {
                    if stamp[check] != generation {
                        stamp[check] = generation;
                        neighbors += 1;
                    }
                }
            }
            if BigInt::from(neighbors) * &q < &p_times_c * BigInt::from(size) {
                violator = Some(subset.to_vec());
                return false;
            }
            true
        });
        if violator.is_some() {
            return Ok(ExpansionCertificate {
                status: CertificateStatus::Violated,
                violating_subset: violator,
                checked_subsets: checked,
            });
        }
        if !complete {
            return Ok(ExpansionCertificate {
                status: CertificateStatus::Unverified,
                violating_subset: None,
                checked_subsets: checked,
            });
        }
    }
    Ok(ExpansionCertificate {
        status: CertificateStatus::Certified,
        violating_subset: None,
        checked_subsets: checked,
    })
}

/// |N(S)| for an explicit subset; exposed for spot checks and tests.
pub fn neighborhood_size(g: &TannerGraph, subset: &[usize]) -> usize {
    let mut seen = vec![false; g.m()];
    let mut count = 0;
    for &variable in subset {
        for &check in g.var_checks(variable) {
            if !seen[check] {
                seen[check] = true;
                count += 1;
            }
        }
    }
    count
}
