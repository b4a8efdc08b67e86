//! Two-phase dense primal simplex with Bland's rule.
//!
//! Standard-form layout: variables are shifted by their lower bounds
//! (z = x - lo, z ≥ 0), every row is normalized to ≤ and gets a slack,
//! upper bounds become rows, equalities split into two inequalities.
//! Rows whose shifted rhs is negative are flipped and receive an
//! artificial variable; phase 1 minimizes the artificial sum.

use std::collections::HashSet;

use super::scalar::Scalar;
use super::{check_point, dot, LinearProgram, LpError, LpSolution, LpStatus, Relation, Uniqueness};
use crate::ratio::Rational;

/// Pivot accounting across both phases. repeated_basis reports a
/// within-phase basis revisit, which Bland's rule must never produce.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub pivots: u64,
    pub repeated_basis: bool,
}

const PIVOT_CAP: u64 = 200_000;

pub fn solve<S: Scalar>(lp: &LinearProgram<S>) -> Result<LpSolution<S>, LpError> {
    lp.validate()?;
    Ok(run(lp).0)
}

pub fn solve_exact(lp: &LinearProgram<Rational>) -> Result<LpSolution<Rational>, LpError> {
    solve(lp)
}

pub fn solve_float(lp: &LinearProgram<f64>) -> Result<LpSolution<f64>, LpError> {
    solve(lp)
}

pub fn solve_exact_with_stats(
    lp: &LinearProgram<Rational>,
) -> Result<(LpSolution<Rational>, SolveStats), LpError> {
    lp.validate()?;
    Ok(run(lp))
}

enum PhaseEnd {
    Finished,
    Unbounded,
}

fn run<S: Scalar>(lp: &LinearProgram<S>) -> (LpSolution<S>, SolveStats) {
    let n = lp.num_vars;
    let lo: Vec<S> = lp.bounds.iter().map(|(l, _)| l.clone()).collect();

    // All-≤ rows over z with shifted right-hand sides.
    let mut le_rows: Vec<(Vec<S>, S)> = Vec::new();
    for con in &lp.constraints {
        let shifted = con.rhs.clone() - dot(&con.coeffs, &lo);
        let neg = || con.coeffs.iter().map(|v| -v.clone()).collect::<Vec<S>>();
        match con.relation {
            Relation::Le => le_rows.push((con.coeffs.clone(), shifted)),
            Relation::Ge => le_rows.push((neg(), -shifted)),
            Relation::Eq => {
                le_rows.push((con.coeffs.clone(), shifted.clone()));
                le_rows.push((neg(), -shifted));
            }
        }
    }
    for (i, (lower, upper)) in lp.bounds.iter().enumerate() {
        if let Some(up) = upper {
            let mut coeffs = vec![S::zero(); n];
            coeffs[i] = S::one();
            le_rows.push((coeffs, up.clone() - lower.clone()));
        }
    }

    let m = le_rows.len();
    let live = n + m;
    let n_art = le_rows.iter().filter(|(_, rhs)| rhs.is_neg()).count();
    let width = live + n_art + 1;

    let mut rows: Vec<Vec<S>> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut art_rows: Vec<usize> = Vec::with_capacity(n_art);
    let mut next_art = live;
    for (r, (coeffs, rhs)) in le_rows.into_iter().enumerate() {
        let mut row = vec![S::zero(); width];
        if rhs.is_neg() {
            for (i, v) in coeffs.into_iter().enumerate() {
                if !v.is_zero() {
                    row[i] = -v;
                }
            }
            row[n + r] = -S::one();
            row[next_art] = S::one();
            row[width - 1] = -rhs;
            basis.push(next_art);
            art_rows.push(r);
            next_art += 1;
        } else {
            for (i, v) in coeffs.into_iter().enumerate() {
                if !v.is_zero() {
                    row[i] = v;
                }
            }
            row[n + r] = S::one();
            row[width - 1] = rhs;
            basis.push(n + r);
        }
        rows.push(row);
    }

    let mut stats = SolveStats::default();
    let infeasible = || LpSolution {
        status: LpStatus::Infeasible,
        point: None,
        value: None,
        unique: Uniqueness::Unknown,
    };

    if n_art > 0 {
        // Phase 1: artificial costs priced out against the start basis.
        let mut obj = vec![S::zero(); width];
        for a in live..live + n_art {
            obj[a] = S::one();
        }
        for &r in &art_rows {
            for c in 0..width {
                if !rows[r][c].is_zero() {
                    obj[c] = obj[c].clone() - rows[r][c].clone();
                }
            }
        }
        match run_phase(&mut rows, &mut basis, &mut obj, live, width - 1, &mut stats) {
            PhaseEnd::Finished => {}
            PhaseEnd::Unbounded => unreachable!("phase 1 objective is bounded below by zero"),
        }
        let weight = -obj[width - 1].clone();
        if weight.is_pos() {
            return (infeasible(), stats);
        }
        // Pivot remaining basic artificials onto live columns. A row
        // with no live entry above tolerance is redundant; with
        // per-row slacks this arises only through float drift.
        let mut r = 0;
        while r < rows.len() {
            if basis[r] >= live {
                match (0..live).find(|&c| !rows[r][c].is_zero_tol()) {
                    Some(c) => {
                        pivot(&mut rows, &mut basis, None, r, c);
                        r += 1;
                    }
                    None => {
                        rows.remove(r);
                        basis.remove(r);
                    }
                }
            } else {
                r += 1;
            }
        }
        for row in &mut rows {
            row.drain(live..live + n_art);
        }
    }

    // Phase 2: original costs priced out against the feasible basis.
    let rhs_idx = live;
    let mut obj = vec![S::zero(); live + 1];
    obj[..n].clone_from_slice(&lp.objective);
    for r in 0..rows.len() {
        let b = basis[r];
        if b < n && !lp.objective[b].is_zero() {
            let factor = lp.objective[b].clone();
            for c in 0..=live {
                if !rows[r][c].is_zero() {
                    obj[c] = obj[c].clone() - factor.clone() * rows[r][c].clone();
                }
            }
        }
    }
    match run_phase(&mut rows, &mut basis, &mut obj, live, rhs_idx, &mut stats) {
        PhaseEnd::Finished => {}
        PhaseEnd::Unbounded => {
            return (
                LpSolution {
                    status: LpStatus::Unbounded,
                    point: None,
                    value: None,
                    unique: Uniqueness::Unknown,
                },
                stats,
            );
        }
    }

    let mut point = lo;
    for r in 0..rows.len() {
        if basis[r] < n {
            point[basis[r]] = point[basis[r]].clone() + rows[r][rhs_idx].clone();
        }
    }
    let value = lp.objective_at(&point);
    if S::EXACT {
        debug_assert!(check_point(lp, &point));
    }
    let unique = one_step_uniqueness(&rows, &basis, &obj, live, rhs_idx);
    (
        LpSolution {
            status: LpStatus::Optimal,
            point: Some(point),
            value: Some(value),
            unique,
        },
        stats,
    )
}

/// Bland's rule: entering is the lowest-index column with negative
/// reduced cost, leaving is the minimum-ratio row with the lowest
/// basis index on ties. Artificial columns never enter (the scan stops
/// at `live`).
fn run_phase<S: Scalar>(
    rows: &mut Vec<Vec<S>>,
    basis: &mut Vec<usize>,
    obj: &mut Vec<S>,
    live: usize,
    rhs_idx: usize,
    stats: &mut SolveStats,
) -> PhaseEnd {
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(sorted(basis));
    loop {
        let Some(entering) = (0..live).find(|&c| obj[c].is_neg()) else {
            return PhaseEnd::Finished;
        };
        let mut best: Option<(usize, S)> = None;
        for r in 0..rows.len() {
            if !rows[r][entering].is_pos() {
                continue;
            }
            let mut num = rows[r][rhs_idx].clone();
            if num.is_neg() {
                num = S::zero();
            }
            let ratio = num / rows[r][entering].clone();
            best = match best {
                None => Some((r, ratio)),
                Some((br, bratio)) => {
                    let diff = ratio.clone() - bratio.clone();
                    if diff.is_neg() || (diff.is_zero_tol() && basis[r] < basis[br]) {
                        Some((r, ratio))
                    } else {
                        Some((br, bratio))
                    }
                }
            };
        }
        let Some((leaving, _)) = best else {
            return PhaseEnd::Unbounded;
        };
        pivot(rows, basis, Some(obj), leaving, entering);
        stats.pivots += 1;
        assert!(stats.pivots <= PIVOT_CAP, "simplex exceeded pivot cap");
        if !seen.insert(sorted(basis)) {
            stats.repeated_basis = true;
        }
    }
}

fn sorted(basis: &[usize]) -> Vec<usize> {
    let mut key = basis.to_vec();
    key.sort_unstable();
    key
}

/// Gauss-Jordan step on (leaving row, entering column). Skips exact
/// zeros on both axes; the entering column is rewritten to an exact
/// identity column.
fn pivot<S: Scalar>(
    rows: &mut [Vec<S>],
    basis: &mut [usize],
    mut obj: Option<&mut Vec<S>>,
    r: usize,
    c: usize,
) {
    let piv = rows[r][c].clone();
    debug_assert!(!piv.is_zero_tol());
    if piv != S::one() {
        for cell in rows[r].iter_mut() {
            if !cell.is_zero() {
                *cell = cell.clone() / piv.clone();
            }
        }
    }
    rows[r][c] = S::one();
    let prow = rows[r].clone();
    let touched: Vec<usize> = prow
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, _)| i)
        .collect();
    for s in 0..rows.len() {
        if s == r {
            continue;
        }
        let factor = rows[s][c].clone();
        if factor.is_zero() {
            continue;
        }
        for &j in &touched {
            rows[s][j] = rows[s][j].clone() - factor.clone() * prow[j].clone();
        }
        rows[s][c] = S::zero();
    }
    if let Some(obj) = obj.as_deref_mut() {
        let factor = obj[c].clone();
        if !factor.is_zero() {
            for &j in &touched {
                obj[j] = obj[j].clone() - factor.clone() * prow[j].clone();
            }
            obj[c] = S::zero();
        }
    }
    basis[r] = c;
}

/// Terminal-tableau uniqueness: Yes when every nonbasic reduced cost
/// is strictly positive; No when a zero-reduced-cost column admits a
/// positive step (which always moves the structural point, since
/// slacks are functions of it); Unknown when every such column is
/// blocked degenerately.
fn one_step_uniqueness<S: Scalar>(
    rows: &[Vec<S>],
    basis: &[usize],
    obj: &[S],
    live: usize,
    rhs_idx: usize,
) -> Uniqueness {
    let mut in_basis = vec![false; live];
    for &b in basis {
        in_basis[b] = true;
    }
    let mut all_pos = true;
    for c in 0..live {
        if in_basis[c] {
            continue;
        }
        debug_assert!(!obj[c].is_neg());
        if obj[c].is_pos() {
            continue;
        }
        all_pos = false;
        let mut theta: Option<S> = None;
        for r in 0..rows.len() {
            if !rows[r][c].is_pos() {
                continue;
            }
            let mut num = rows[r][rhs_idx].clone();
            if num.is_neg() {
                num = S::zero();
            }
            let ratio = num / rows[r][c].clone();
            theta = Some(match theta {
                None => ratio,
                Some(t) if (ratio.clone() - t.clone()).is_neg() => ratio,
                Some(t) => t,
            });
        }
        match theta {
            None => return Uniqueness::No,
            Some(t) if t.is_pos() => return Uniqueness::No,
            Some(_) => {}
        }
    }
    if all_pos {
        Uniqueness::Yes
    } else {
        Uniqueness::Unknown
    }
}
