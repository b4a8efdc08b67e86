//! Randomized cross-validation of the simplex against the vertex
//! oracle, over two instance families chosen so every optimum is
//! attained at a vertex: pointed cones (nonnegative costs, lower
//! bounds only) and compact boxes.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::ratio::ratio_int;

#[derive(Clone, Copy, PartialEq)]
pub(crate) enum Family {
    PointedCone,
    Box,
}

pub(crate) fn random_lp(rng: &mut ChaCha8Rng, family: Family) -> LinearProgram<Rational> {
    let relation = |rng: &mut ChaCha8Rng| match rng.gen_range(0..20) {
        0..=11 => Relation::Le,
        12..=16 => Relation::Ge,
        _ => Relation::Eq,
    };
    match family {
        Family::PointedCone => {
            let d = rng.gen_range(2..=8);
            let m = if d >= 6 {
                rng.gen_range(1..=6)
            } else {
                rng.gen_range(1..=10)
            };
            let mut lp = LinearProgram::new(d);
            lp.objective = (0..d).map(|_| ratio_int(rng.gen_range(0..=4))).collect();
            for _ in 0..m {
                let coeffs = (0..d).map(|_| ratio_int(rng.gen_range(-3..=3))).collect();
                lp.push_constraint(coeffs, relation(rng), ratio_int(rng.gen_range(-4..=6)));
            }
            lp
        }
        Family::Box => {
            let d = rng.gen_range(2..=5);
            let m = if d <= 3 {
                rng.gen_range(0..=16)
            } else {
                rng.gen_range(0..=10)
            };
            let mut lp = LinearProgram::new(d);
            lp.objective = (0..d).map(|_| ratio_int(rng.gen_range(-4..=4))).collect();
            for i in 0..d {
                let lower = rng.gen_range(-2..=1);
                let upper = lower + rng.gen_range(0..=3);
                lp.set_bounds(i, ratio_int(lower), Some(ratio_int(upper)));
            }
            for _ in 0..m {
                let coeffs = (0..d).map(|_| ratio_int(rng.gen_range(-3..=3))).collect();
                lp.push_constraint(coeffs, relation(rng), ratio_int(rng.gen_range(-6..=8)));
            }
            lp
        }
    }
}

/// Exact solve vs oracle, float solve vs exact, and (on compact
/// instances) uniqueness vs the count of minimizing vertices.
pub(crate) fn crosscheck(lp: &LinearProgram<Rational>, family: Family, label: &str) {
    let sol = solve_exact(lp).unwrap();
    let vertices = enumerate_vertices(lp).unwrap();
    let float_sol = solve_float(&to_float_lp(lp)).unwrap();
    match sol.status {
        LpStatus::Optimal => {
            let value = sol.value.clone().unwrap();
            assert!(
                check_point(lp, sol.point.as_ref().unwrap()),
                "{label}: optimal point infeasible"
            );
            let best = vertices
                .iter()
                .map(|v| lp.objective_at(v))
                .min()
                .unwrap_or_else(|| panic!("{label}: optimal but no vertices"));
            assert_eq!(value, best, "{label}: value disagrees with oracle");
            assert_eq!(
                float_sol.status,
                LpStatus::Optimal,
                "{label}: float status disagrees"
            );
            let drift = float_sol.value.unwrap() - best.to_f64().unwrap();
            assert!(drift.abs() < 1e-7, "{label}: float drift {drift}");
            if family == Family::Box {
                let winners = vertices
                    .iter()
                    .filter(|v| lp.objective_at(v) == best)
                    .count();
                let unique = is_unique_optimum(lp, &sol).unwrap();
                assert_ne!(unique, Uniqueness::Unknown, "{label}: exact mode resolves");
                assert_eq!(
                    unique == Uniqueness::Yes,
                    winners == 1,
                    "{label}: uniqueness disagrees with {winners} minimizing vertices"
                );
            }
        }
        LpStatus::Infeasible => {
            assert!(
                vertices.is_empty(),
                "{label}: infeasible but oracle found vertices"
            );
            assert_eq!(
                float_sol.status,
                LpStatus::Infeasible,
                "{label}: float status disagrees"
            );
        }
        LpStatus::Unbounded => panic!("{label}: families are bounded below"),
    }
}

#[test]
fn fifty_random_lps_agree_with_the_vertex_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(911);
    let mut optimal = 0;
    let mut infeasible = 0;
    for trial in 0..50 {
        let family = if trial % 2 == 0 {
            Family::PointedCone
        } else {
            Family::Box
        };
        let lp = random_lp(&mut rng, family);
        let status = solve_exact(&lp).unwrap().status;
        match status {
            LpStatus::Optimal => optimal += 1,
            LpStatus::Infeasible => infeasible += 1,
            LpStatus::Unbounded => {}
        }
        crosscheck(&lp, family, &format!("trial {trial}"));
    }
    assert!(optimal >= 15, "only {optimal} optimal instances sampled");
    assert!(infeasible >= 5, "only {infeasible} infeasible instances");
}
