//! Complete uniqueness resolution over the optimal face.
//!
//! The terminal tableau already settles many cases; the rest are
//! decided by auxiliary solves over F = {x feasible : c·x = v*}. When
//! x* saturates a finite bound in every coordinate, one solve
//! maximizing the coordinatewise displacement away from those bounds
//! settles the question; otherwise each coordinate is pushed to its
//! extremes separately. Exact mode therefore never answers Unknown;
//! float mode reserves Unknown for movements inside the tolerance.

use super::scalar::Scalar;
use super::{LinearProgram, LpError, LpSolution, LpStatus, Relation, Uniqueness};

pub fn is_unique_optimum<S: Scalar>(
    lp: &LinearProgram<S>,
    sol: &LpSolution<S>,
) -> Result<Uniqueness, LpError> {
    if sol.status != LpStatus::Optimal {
        return Err(LpError::NotOptimal { status: sol.status });
    }
    match sol.unique {
        Uniqueness::Yes => return Ok(Uniqueness::Yes),
        Uniqueness::No => return Ok(Uniqueness::No),
        Uniqueness::Unknown => {}
    }
    let point = sol.point.as_ref().expect("optimal solution carries a point");
    let value = sol.value.clone().expect("optimal solution carries a value");
    let mut face = lp.clone();
    face.push_constraint(lp.objective.clone(), Relation::Eq, value);

    // at_lower[i] = Some(true): x*_i sits on its lower bound,
    // Some(false): on its finite upper bound, None: strictly between.
    let at_lower: Vec<Option<bool>> = point
        .iter()
        .zip(&lp.bounds)
        .map(|(x, (lower, upper))| {
            if (x.clone() - lower.clone()).is_zero_tol() {
                Some(true)
            } else if let Some(up) = upper {
                if (up.clone() - x.clone()).is_zero_tol() {
                    Some(false)
                } else {
                    None
                }
            } else {
                None
            }
        })
        .collect();

    if at_lower.iter().all(|a| a.is_some()) {
        // Displacement g(x) = Σ sᵢ(xᵢ - x*ᵢ) with sᵢ = ±1 pointing
        // into the box, so g ≥ 0 on F and max g = 0 iff F = {x*}.
        let signs: Vec<S> = at_lower
            .iter()
            .map(|a| {
                if a == &Some(true) {
                    S::one()
                } else {
                    -S::one()
                }
            })
            .collect();
        face.objective = signs.iter().map(|s| -s.clone()).collect();
        let aux = super::simplex::solve(&face)?;
        return Ok(match aux.status {
            LpStatus::Unbounded => Uniqueness::No,
            LpStatus::Infeasible => {
                assert!(!S::EXACT, "x* lies on the face by construction");
                Uniqueness::Unknown
            }
            LpStatus::Optimal => {
                let anchor = super::dot(&signs, point);
                let max_move = -aux.value.expect("optimal carries a value") - anchor;
                debug_assert!(!max_move.is_neg());
                if max_move.is_pos() {
                    Uniqueness::No
                } else if S::EXACT {
                    Uniqueness::Yes
                } else {
                    Uniqueness::Unknown
                }
            }
        });
    }

    // Coordinate sweep: F = {x*} iff every coordinate is pinned.
    for i in 0..lp.num_vars {
        for minimize in [true, false] {
            let mut coeffs = vec![S::zero(); lp.num_vars];
            coeffs[i] = if minimize { S::one() } else { -S::one() };
            face.objective = coeffs;
            let aux = super::simplex::solve(&face)?;
            match aux.status {
                LpStatus::Unbounded => return Ok(Uniqueness::No),
                LpStatus::Infeasible => {
                    assert!(!S::EXACT, "x* lies on the face by construction");
                    return Ok(Uniqueness::Unknown);
                }
                LpStatus::Optimal => {
                    let aux_value = aux.value.expect("optimal carries a value");
                    // minimize: x*ᵢ - min xᵢ; else max xᵢ - x*ᵢ
                    // (the maximizing pass minimized -xᵢ).
                    let moved = if minimize {
                        point[i].clone() - aux_value
                    } else {
                        -aux_value - point[i].clone()
                    };
                    if moved.is_pos() {
                        return Ok(Uniqueness::No);
                    }
                }
            }
        }
    }
    Ok(if S::EXACT {
        Uniqueness::Yes
    } else {
        Uniqueness::Unknown
    })
}

#[cfg(test)]
mod tests {
    use super::super::{solve_exact, solve_float, to_float_lp};
    use super::*;
    use crate::ratio::{ratio, ratio_int, Rational};

    #[test]
    fn passes_through_solve_verdicts() {
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![ratio_int(1)];
        lp.set_bounds(0, ratio_int(0), Some(ratio_int(1)));
        let sol = solve_exact(&lp).unwrap();
        assert_eq!(sol.unique, Uniqueness::Yes);
        assert_eq!(is_unique_optimum(&lp, &sol).unwrap(), Uniqueness::Yes);

        let mut lp = LinearProgram::new(1);
        lp.set_bounds(0, ratio_int(0), Some(ratio_int(1)));
        let sol = solve_exact(&lp).unwrap();
        assert_eq!(is_unique_optimum(&lp, &sol).unwrap(), Uniqueness::No);
    }

    #[test]
    fn resolves_a_degenerate_unique_vertex() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![ratio_int(1), ratio_int(0)];
        lp.push_constraint(
            vec![ratio_int(0), ratio_int(1)],
            Relation::Le,
            ratio_int(0),
        );
        let sol = solve_exact(&lp).unwrap();
        assert_eq!(sol.unique, Uniqueness::Unknown);
        assert_eq!(is_unique_optimum(&lp, &sol).unwrap(), Uniqueness::Yes);
    }

    #[test]
    fn resolves_an_interior_fixed_point() {
        let mut lp = LinearProgram::new(1);
        lp.set_bounds(0, ratio_int(0), Some(ratio_int(1)));
        lp.push_constraint(vec![ratio_int(1)], Relation::Eq, ratio(1, 2));
        let sol = solve_exact(&lp).unwrap();
        assert_eq!(sol.point, Some(vec![ratio(1, 2)]));
        assert_eq!(is_unique_optimum(&lp, &sol).unwrap(), Uniqueness::Yes);
    }

    #[test]
    fn resolves_an_optimal_segment_to_no() {
        let mut lp = LinearProgram::new(2);
        lp.set_bounds(0, ratio_int(0), Some(ratio_int(1)));
        lp.set_bounds(1, ratio_int(0), Some(ratio_int(1)));
        lp.push_constraint(
            vec![ratio_int(1), ratio_int(1)],
            Relation::Eq,
            ratio_int(1),
        );
        let sol = solve_exact(&lp).unwrap();
        assert_eq!(is_unique_optimum(&lp, &sol).unwrap(), Uniqueness::No);
    }

    #[test]
    fn rejects_non_optimal_solutions() {
        let mut lp: LinearProgram<Rational> = LinearProgram::new(1);
        lp.objective = vec![ratio_int(-1)];
        let sol = solve_exact(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Unbounded);
        assert_eq!(
            is_unique_optimum(&lp, &sol),
            Err(LpError::NotOptimal {
                status: LpStatus::Unbounded
            })
        );
    }

    #[test]
    fn float_mode_reserves_unknown_for_unmoved_faces() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![ratio_int(1), ratio_int(0)];
        lp.push_constraint(
            vec![ratio_int(0), ratio_int(1)],
            Relation::Le,
            ratio_int(0),
        );
        let f = to_float_lp(&lp);
        let sol = solve_float(&f).unwrap();
        assert_eq!(is_unique_optimum(&f, &sol).unwrap(), Uniqueness::Unknown);

        let mut seg = LinearProgram::new(2);
        seg.set_bounds(0, 0.0, Some(1.0));
        seg.set_bounds(1, 0.0, Some(1.0));
        seg.push_constraint(vec![1.0, 1.0], Relation::Eq, 1.0);
        let sol = solve_float(&seg).unwrap();
        assert_eq!(is_unique_optimum(&seg, &sol).unwrap(), Uniqueness::No);
    }
}
