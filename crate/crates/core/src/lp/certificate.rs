use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use super::{dot, LinearProgram, Rational, Relation, Sense, SignExt, SolveResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("result is not optimal")]
    NotOptimal,
    #[error("primal point is infeasible")]
    PrimalInfeasible,
    #[error("dual vector has {found} entries for {expected} constraints")]
    DualLength { expected: usize, found: usize },
    #[error("dual for constraint {0} has the wrong sign")]
    DualSign(String),
    #[error("reduced cost of {0} points at a missing bound")]
    ReducedCost(String),
    #[error("dual objective {dual} differs from primal objective {primal}")]
    Gap { primal: String, dual: String },
}

/// Checks that `res` carries a primal-feasible point and a dual-feasible
/// multiplier vector with identical objective values, which certifies
/// optimality by weak duality.
pub fn check_certificate(lp: &LinearProgram, res: &SolveResult) -> Result<(), CertificateError> {
    if !res.is_optimal() {
        return Err(CertificateError::NotOptimal);
    }
    if !lp.is_feasible(&res.primal) {
        return Err(CertificateError::PrimalInfeasible);
    }
    if res.duals.len() != lp.constraints.len() {
        return Err(CertificateError::DualLength {
            expected: lp.constraints.len(),
            found: res.duals.len(),
        });
    }
    let max = lp.sense == Sense::Maximize;
    for (c, y) in lp.constraints.iter().zip(&res.duals) {
        let ok = match (c.relation, max) {
            (Relation::Eq, _) => true,
            (Relation::Le, true) | (Relation::Ge, false) => !y.is_negative_value(),
            (Relation::Ge, true) | (Relation::Le, false) => !y.is_positive_value(),
        };
        if !ok {
            return Err(CertificateError::DualSign(c.name.clone()));
        }
    }
    let mut dual_obj = dot(
        &res.duals,
        &lp.constraints.iter().map(|c| c.rhs.clone()).collect::<Vec<_>>(),
    );
    for (j, v) in lp.variables.iter().enumerate() {
        let col: Vec<Rational> = lp.constraints.iter().map(|c| c.coeffs[j].clone()).collect();
        let d = &lp.objective[j] - dot(&col, &res.duals);
        if d.is_zero() {
            continue;
        }
        // max: positive d is paid at the upper bound; min: at the lower bound
        let bound = if d.is_positive_value() == max {
            &v.upper
        } else {
            &v.lower
        };
        match bound {
            Some(b) => dual_obj += &d * b,
            None => return Err(CertificateError::ReducedCost(v.name.clone())),
        }
    }
    if dual_obj != res.objective || lp.objective_value(&res.primal) != res.objective {
        return Err(CertificateError::Gap {
            primal: super::fmt_rational(&res.objective),
            dual: super::fmt_rational(&dual_obj),
        });
    }
    Ok(())
}

/// Outcome of checking two programs as a primal-dual pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityCheck {
    pub values_equal: bool,
    pub first_certified: bool,
    pub second_certified: bool,
    /// The first program's dual vector is optimal for the second program.
    pub first_dual_solves_second: bool,
    pub second_dual_solves_first: bool,
    pub complementary_slackness: bool,
}

impl DualityCheck {
    pub fn holds(&self) -> bool {
        self.values_equal
            && self.first_certified
            && self.second_certified
            && self.first_dual_solves_second
            && self.second_dual_solves_first
            && self.complementary_slackness
    }
}

fn solves(lp: &LinearProgram, x: &[Rational], value: &Rational) -> bool {
    lp.is_feasible(x) && &lp.objective_value(x) == value
}

/// Complementary slackness between a primal point `x` of `lp` and a point
/// `v` laid out like [`SolveResult::dual_vector`].
fn complementary(lp: &LinearProgram, x: &[Rational], v: &[Rational]) -> bool {
    let m = lp.constraints.len();
    let ub: Vec<usize> = lp.upper_bounded().collect();
    if v.len() != m + ub.len() {
        return false;
    }
    let rows_ok = lp
        .constraints
        .iter()
        .zip(v)
        .all(|(c, vi)| vi.is_zero() || c.lhs(x) == c.rhs);
    let mut z = vec![Rational::zero(); lp.num_vars()];
    for (k, &j) in ub.iter().enumerate() {
        z[j] = v[m + k].clone();
    }
    let bounds_ok = ub
        .iter()
        .all(|&j| z[j].is_zero() || Some(&x[j]) == lp.variables[j].upper.as_ref());
    let vars_ok = (0..lp.num_vars()).all(|j| {
        let col: Vec<Rational> = lp.constraints.iter().map(|c| c.coeffs[j].clone()).collect();
        let adj = match lp.sense {
            Sense::Maximize => z[j].clone(),
            Sense::Minimize => -z[j].clone(),
        };
        let r = &lp.objective[j] - dot(&col, &v[..m]) - adj;
        r.is_zero() || Some(&x[j]) == lp.variables[j].lower.as_ref()
    });
    rows_ok && bounds_ok && vars_ok
}

/// Checks that two solved programs form a primal-dual pair: equal optimal
/// values, valid individual certificates, each one's dual vector solving
/// the other, and complementary slackness between the two primal points.
pub fn verify_duality(first: (&LinearProgram, &SolveResult), second: (&LinearProgram, &SolveResult)) -> DualityCheck {
    let (a, ra) = first;
    let (b, rb) = second;
    let optimal = ra.is_optimal() && rb.is_optimal();
    let first_certified = check_certificate(a, ra).is_ok();
    let second_certified = check_certificate(b, rb).is_ok();
    let first_dual_solves_second = first_certified && optimal && solves(b, &ra.dual_vector(a), &rb.objective);
    let second_dual_solves_first = second_certified && optimal && solves(a, &rb.dual_vector(b), &ra.objective);
    let complementary_slackness =
        optimal && complementary(a, &ra.primal, &rb.primal) && complementary(b, &rb.primal, &ra.primal);
    DualityCheck {
        values_equal: optimal && ra.objective == rb.objective,
        first_certified,
        second_certified,
        first_dual_solves_second,
        second_dual_solves_first,
        complementary_slackness,
    }
}
