//! A self-contained dense simplex solver for small linear programs:
//! exact-rational and float modes, optimum-uniqueness resolution, and
//! a vertex-enumeration oracle for cross-validation.
//!
//! Model: minimize c·x subject to rows (a·x ≤ / ≥ / = b) and box
//! bounds lo ≤ x ≤ up. Lower bounds are always finite (default 0);
//! upper bounds default to +∞. Free variables are not supported.

#[cfg(test)]
mod cross;
mod scalar;
mod simplex;
mod unique;
mod vertices;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::ratio::Rational;

pub use scalar::{Scalar, FLOAT_TOL};
pub use simplex::{solve, solve_exact, solve_exact_with_stats, solve_float, SolveStats};
pub use unique::is_unique_optimum;
pub use vertices::enumerate_vertices;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<S> {
    pub coeffs: Vec<S>,
    pub relation: Relation,
    pub rhs: S,
}

/// Minimization program. Invariants: every coefficient sequence has
/// length num_vars; each lower bound is at most its upper bound.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<S> {
    pub num_vars: usize,
    pub objective: Vec<S>,
    pub constraints: Vec<Constraint<S>>,
    /// Per variable (lower, upper); upper None means +∞.
    pub bounds: Vec<(S, Option<S>)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniqueness {
    Yes,
    No,
    Unknown,
}

/// point and value are present exactly when status is Optimal.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<S> {
    pub status: LpStatus,
    pub point: Option<Vec<S>>,
    pub value: Option<S>,
    pub unique: Uniqueness,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("linear program must have at least one variable")]
    NoVariables,
    #[error("objective has {got} coefficients, expected {expect}")]
    ObjectiveLength { got: usize, expect: usize },
    #[error("constraint {index} has {got} coefficients, expected {expect}")]
    ConstraintLength {
        index: usize,
        got: usize,
        expect: usize,
    },
    #[error("bounds cover {got} variables, expected {expect}")]
    BoundsLength { got: usize, expect: usize },
    #[error("variable {variable} has lower bound above upper bound")]
    BoundInverted { variable: usize },
    #[error("uniqueness analysis requires an optimal solution, got {status:?}")]
    NotOptimal { status: LpStatus },
    #[error("vertex enumeration is limited to {limit} variables, got {got}")]
    TooManyVariables { got: usize, limit: usize },
    #[error("vertex enumeration is limited to {limit} constraints, got {got}")]
    TooManyConstraints { got: usize, limit: usize },
}

impl<S: Scalar> LinearProgram<S> {
    /// Zero objective, no constraints, every variable in [0, +∞).
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![S::zero(); num_vars],
            constraints: Vec::new(),
            bounds: vec![(S::zero(), None); num_vars],
        }
    }

    pub fn push_constraint(&mut self, coeffs: Vec<S>, relation: Relation, rhs: S) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn set_bounds(&mut self, variable: usize, lower: S, upper: Option<S>) {
        self.bounds[variable] = (lower, upper);
    }

    pub(crate) fn validate(&self) -> Result<(), LpError> {
        if self.num_vars == 0 {
            return Err(LpError::NoVariables);
        }
        if self.objective.len() != self.num_vars {
            return Err(LpError::ObjectiveLength {
                got: self.objective.len(),
                expect: self.num_vars,
            });
        }
        for (index, con) in self.constraints.iter().enumerate() {
            if con.coeffs.len() != self.num_vars {
                return Err(LpError::ConstraintLength {
                    index,
                    got: con.coeffs.len(),
                    expect: self.num_vars,
                });
            }
        }
        if self.bounds.len() != self.num_vars {
            return Err(LpError::BoundsLength {
                got: self.bounds.len(),
                expect: self.num_vars,
            });
        }
        for (variable, (lower, upper)) in self.bounds.iter().enumerate() {
            if let Some(up) = upper {
                if (lower.clone() - up.clone()).is_pos() {
                    return Err(LpError::BoundInverted { variable });
                }
            }
        }
        Ok(())
    }

    pub fn objective_at(&self, point: &[S]) -> S {
        dot(&self.objective, point)
    }
}

pub(crate) fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    acc
}

/// Exact (mode-tolerant for f64) membership test against every
/// constraint and bound.
pub fn check_point<S: Scalar>(lp: &LinearProgram<S>, point: &[S]) -> bool {
    if point.len() != lp.num_vars {
        return false;
    }
    for (i, (lower, upper)) in lp.bounds.iter().enumerate() {
        if (point[i].clone() - lower.clone()).is_neg() {
            return false;
        }
        if let Some(up) = upper {
            if (point[i].clone() - up.clone()).is_pos() {
                return false;
            }
        }
    }
    lp.constraints.iter().all(|con| {
        let slack = con.rhs.clone() - dot(&con.coeffs, point);
        match con.relation {
            Relation::Le => !slack.is_neg(),
            Relation::Ge => !slack.is_pos(),
            Relation::Eq => slack.is_zero_tol(),
        }
    })
}

/// Lossy conversion for float-mode runs on an exact program.
pub fn to_float_lp(lp: &LinearProgram<Rational>) -> LinearProgram<f64> {
    let as_f64 = |r: &Rational| r.to_f64().expect("rational out of f64 range");
    LinearProgram {
        num_vars: lp.num_vars,
        objective: lp.objective.iter().map(as_f64).collect(),
        constraints: lp
            .constraints
            .iter()
            .map(|con| Constraint {
                coeffs: con.coeffs.iter().map(as_f64).collect(),
                relation: con.relation,
                rhs: as_f64(&con.rhs),
            })
            .collect(),
        bounds: lp
            .bounds
            .iter()
            .map(|(lower, upper)| (as_f64(lower), upper.as_ref().map(as_f64)))
            .collect(),
    }
}

/// Human-readable dump for debugging; not a stable interchange format.
pub fn dump_lp<S: Scalar>(lp: &LinearProgram<S>) -> String {
    use std::fmt::Write as _;
    let term = |coef: &S, i: usize| format!("{coef} x{i}");
    let mut out = String::from("minimize ");
    let mut first = true;
    for (i, coef) in lp.objective.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        if !first {
            out.push_str(" + ");
        }
        out.push_str(&term(coef, i));
        first = false;
    }
    if first {
        out.push('0');
    }
    out.push_str("\nsubject to\n");
    for con in &lp.constraints {
        out.push_str("  ");
        let mut lead = true;
        for (i, coef) in con.coeffs.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            if !lead {
                out.push_str(" + ");
            }
            out.push_str(&term(coef, i));
            lead = false;
        }
        if lead {
            out.push('0');
        }
        let rel = match con.relation {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        };
        let _ = writeln!(out, " {rel} {}", con.rhs);
    }
    for (i, (lower, upper)) in lp.bounds.iter().enumerate() {
        match upper {
            Some(up) => {
                let _ = writeln!(out, "  {lower} <= x{i} <= {up}");
            }
            None => {
                let _ = writeln!(out, "  {lower} <= x{i}");
            }
        }
    }
    out
}
