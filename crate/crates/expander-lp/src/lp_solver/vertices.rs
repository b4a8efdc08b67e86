//! Exhaustive vertex enumeration, the oracle the simplex is validated
//! against. Every maximal independent set of tight hyperplanes (rows
//! and finite bound planes) determines a candidate point; feasible
//! candidates are exactly the vertices.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::{check_point, LinearProgram, LpError};
use crate::ratio::Rational;

const MAX_VARS: usize = 10;
const MAX_CONSTRAINTS: usize = 24;

/// All vertices of the feasible region, deduplicated and sorted,
/// in exact arithmetic.
pub fn enumerate_vertices(lp: &LinearProgram<Rational>) -> Result<Vec<Vec<Rational>>, LpError> {
    lp.validate()?;
    if lp.num_vars > MAX_VARS {
        return Err(LpError::TooManyVariables {
            got: lp.num_vars,
            limit: MAX_VARS,
        });
    }
    if lp.constraints.len() > MAX_CONSTRAINTS {
        return Err(LpError::TooManyConstraints {
            got: lp.constraints.len(),
            limit: MAX_CONSTRAINTS,
        });
    }
    let n = lp.num_vars;
    // Each plane as coefficients plus rhs; relations do not matter
    // here, only boundaries.
    let mut planes: Vec<Vec<Rational>> = Vec::new();
    for con in &lp.constraints {
        let mut row = con.coeffs.clone();
        row.push(con.rhs.clone());
        planes.push(row);
    }
    for (i, (lower, upper)) in lp.bounds.iter().enumerate() {
        let mut row = vec![Rational::zero(); n + 1];
        row[i] = Rational::one();
        row[n] = lower.clone();
        planes.push(row);
        if let Some(up) = upper {
            let mut row = vec![Rational::zero(); n + 1];
            row[i] = Rational::one();
            row[n] = up.clone();
            planes.push(row);
        }
    }
    let mut found: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut echelon: Vec<(usize, Vec<Rational>)> = Vec::new();
    dfs(lp, &planes, 0, &mut echelon, &mut found);
    Ok(found.into_iter().collect())
}

fn dfs(
    lp: &LinearProgram<Rational>,
    planes: &[Vec<Rational>],
    start: usize,
    echelon: &mut Vec<(usize, Vec<Rational>)>,
    found: &mut BTreeSet<Vec<Rational>>,
) {
    let n = lp.num_vars;
    if echelon.len() == n {
        let point = solve_square(echelon, n);
        if check_point(lp, &point) {
            found.insert(point);
        }
        return;
    }
    if echelon.len() + (planes.len() - start) < n {
        return;
    }
    for idx in start..planes.len() {
        // Dependent planes are skipped: a completion using one yields
        // the same point as the completion without it.
        if let Some(reduced) = reduce(&planes[idx], echelon, n) {
            echelon.push(reduced);
            dfs(lp, planes, idx + 1, echelon, found);
            echelon.pop();
        }
    }
}

/// Forward-reduces one plane against the echelon and normalizes its
/// leading coefficient; None when the coefficient part vanishes.
fn reduce(
    plane: &[Rational],
    echelon: &[(usize, Vec<Rational>)],
    n: usize,
) -> Option<(usize, Vec<Rational>)> {
    let mut row = plane.to_vec();
    for (p, erow) in echelon {
        let factor = row[*p].clone();
        if factor.is_zero() {
            continue;
        }
        for j in 0..=n {
            if !erow[j].is_zero() {
                row[j] = row[j].clone() - factor.clone() * erow[j].clone();
            }
        }
        row[*p] = Rational::zero();
    }
    let pivot = (0..n).find(|&j| !row[j].is_zero())?;
    let lead = row[pivot].clone();
    for cell in row.iter_mut() {
        if !cell.is_zero() {
            *cell = cell.clone() / lead.clone();
        }
    }
    row[pivot] = Rational::one();
    Some((pivot, row))
}

/// Full Jordan pass on n independent rows; the system is square and
/// consistent, so the solution is unique.
fn solve_square(echelon: &[(usize, Vec<Rational>)], n: usize) -> Vec<Rational> {
    let mut rows: Vec<(usize, Vec<Rational>)> = echelon.to_vec();
    for i in 0..n {
        let (p, prow) = rows[i].clone();
        for (k, (_, krow)) in rows.iter_mut().enumerate() {
            if k == i {
                continue;
            }
            let factor = krow[p].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..=n {
                if !prow[j].is_zero() {
                    krow[j] = krow[j].clone() - factor.clone() * prow[j].clone();
                }
            }
            krow[p] = Rational::zero();
        }
    }
    let mut point = vec![Rational::zero(); n];
    for (p, row) in &rows {
        point[*p] = row[n].clone();
    }
    point
}
