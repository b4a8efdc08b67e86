//! q-matchings: edge sets using each check at most once while granting
//! every designated variable at least q matched checks.
//!
//! Existence is decided by the polygamous Hall argument: splitting each
//! variable of X into q clones and finding a maximum matching on the
//! clone graph. The clones are implicit here — a per-variable counter
//! stands in for them — which is equivalent because clones of one
//! variable are interchangeable.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code_core::TannerGraph;
use crate::combi::for_each_combination;

/// An edge set M ⊆ E with per-check injectivity and per-variable quota
/// q over the served subset X. Construction trims to exactly q edges
/// per variable; the verifier only demands "at least q".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QMatching {
    /// Sorted (variable, check) pairs.
    pub edges: Vec<(usize, usize)>,
    pub q: usize,
    /// Sorted variable subset being served.
    pub x_set: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("quota must satisfy 1 <= q <= left degree, got q={q}")]
    BadQuota { q: usize },
    #[error("X must be nonempty")]
    EmptyX,
    #[error("variable {variable} out of range or listed twice in X")]
    BadSubset { variable: usize },
    #[error("hall_violation is exhaustive and limited to |X| <= {limit}, got {size}")]
    SubsetTooLarge { size: usize, limit: usize },
}

const HALL_LIMIT: usize = 20;

fn validate_x(g: &TannerGraph, x_set: &[usize]) -> Result<Vec<usize>, MatchingError> {
    if x_set.is_empty() {
        return Err(MatchingError::EmptyX);
    }
    let mut sorted = x_set.to_vec();
    sorted.sort_unstable();
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            return Err(MatchingError::BadSubset { variable: pair[0] });
        }
    }
    if let Some(&last) = sorted.last() {
        if last >= g.n() {
            return Err(MatchingError::BadSubset { variable: last });
        }
    }
    Ok(sorted)
}

/// Finds a q-matching for X, or None exactly when the maximum matching
/// on the clone graph is smaller than q·|X|. Deterministic: variables
/// are saturated in ascending order, BFS scans checks ascending, and
/// the first free check reached wins.
pub fn find_q_matching(
    g: &TannerGraph,
    x_set: &[usize],
    q: usize,
) -> Result<Option<QMatching>, MatchingError> {
    let sorted_x = validate_x(g, x_set)?;
    if q == 0 || sorted_x.iter().any(|&v| q > g.var_degree(v)) {
        return Err(MatchingError::BadQuota { q });
    }
    // check_match[j] holds the variable currently granted check j.
    let mut check_match: Vec<Option<usize>> = vec![None; g.m()];
    for &variable in &sorted_x {
        for _unit in 0..q {
            if !augment(g, variable, &mut check_match) {
                return Ok(None);
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = check_match
        .iter()
        .enumerate()
        .filter_map(|(check, held)| held.map(|variable| (variable, check)))
        .collect();
    edges.sort_unstable();
    Ok(Some(QMatching {
        edges,
        q,
        x_set: sorted_x,
    }))
}

/// One augmenting-path BFS from `variable`: layers alternate
/// check / current holder, discovery order is ascending check index.
fn augment(g: &TannerGraph, variable: usize, check_match: &mut [Option<usize>]) -> bool {
    let mut came_from: Vec<Option<usize>> = vec![None; g.m()];
    let mut visited = vec![false; g.m()];
    let mut queue = std::collections::VecDeque::new();
    for &check in g.var_checks(variable) {
        if !visited[check] {
            visited[check] = true;
            queue.push_back(check);
        }
    }
    while let Some(check) = queue.pop_front() {
        match check_match[check] {
            None => {
                // Free check: walk the discovery chain, rerouting each
                // intermediate holder one hop forward.
                let mut cursor = check;
                while let Some(prev) = came_from[cursor] {
                    check_match[cursor] = check_match[prev];
                    cursor = prev;
                }
                check_match[cursor] = Some(variable);
                return true;
            }
            Some(holder) => {
                for &next in g.var_checks(holder) {
                    if !visited[next] {
                        visited[next] = true;
                        came_from[next] = Some(check);
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    false
}

/// True iff all three invariants hold against g: M ⊆ E, per-check
/// injectivity, and quota q for every variable of X.
pub fn verify_q_matching(g: &TannerGraph, m: &QMatching) -> bool {
    let mut check_used = vec![false; g.m()];
    for &(variable, check) in &m.edges {
        if check >= g.m() || !g.has_edge(variable, check) {
            return false;
        }
        if check_used[check] {
            return false;
        }
        check_used[check] = true;
    }
    m.x_set.iter().all(|&x| {
        let granted = m.edges.iter().filter(|&&(v, _)| v == x).count();
        granted >= m.q
    })
}

/// Exhaustive Hall-condition check on the clone graph: some S ⊆ X with
/// |N(S)| < q·|S|, if one exists (smallest size first, lexicographic
/// within a size), else None.
pub fn hall_violation(
    g: &TannerGraph,
    x_set: &[usize],
    q: usize,
) -> Result<Option<Vec<usize>>, MatchingError> {
    let sorted_x = validate_x(g, x_set)?;
    if sorted_x.len() > HALL_LIMIT {
        return Err(MatchingError::SubsetTooLarge {
            size: sorted_x.len(),
            limit: HALL_LIMIT,
        });
    }
    if q == 0 || sorted_x.iter().any(|&v| q > g.var_degree(v)) {
        return Err(MatchingError::BadQuota { q });
    }
    let mut seen = vec![false; g.m()];
    let mut found: Option<Vec<usize>> = None;
    for size in 1..=sorted_x.len() {
        for_each_combination(sorted_x.len(), size, |positions| {
            seen.iter_mut().for_each(|s| *s = false);
            let mut neighbors = 0usize;
            for &pos in positions {
                for &check in g.var_checks(sorted_x[pos]) {
                    if !seen[check] {
                        seen[check] = true;
                        neighbors += 1;
                    }
                }
            }
            if neighbors < q * size {
                found = Some(positions.iter().map(|&pos| sorted_x[pos]).collect());
                return false;
            }
            true
        });
        if found.is_some() {
            break;
        }
    }
    Ok(found)
}
