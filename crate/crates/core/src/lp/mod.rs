//! Exact linear and integer programming over arbitrary-precision rationals.
//!
//! [`solve_lp`] is a two-phase primal simplex with Bland's rule, so it
//! terminates on degenerate programs and returns an optimal dual vector
//! alongside the primal point. [`solve_ilp`] runs depth-first branch and
//! bound on top of it.

mod branch;
mod certificate;
mod export;
mod simplex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

pub use branch::{solve_ilp, solve_ilp_with_limit, DEFAULT_NODE_LIMIT};
pub use certificate::{check_certificate, verify_duality, CertificateError, DualityCheck};
pub use export::write_lp_format;
pub use simplex::solve_lp;

pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("{what}: expected length {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("variable {0:?} has lower bound above its upper bound")]
    InconsistentBounds(String),
    #[error("branch and bound exceeded the node limit of {0}")]
    NodeLimit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variable {
    pub name: String,
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
    pub integer: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub name: String,
    /// Dense coefficient row, one entry per variable.
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x)
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(c, _)| !c.is_zero())
        .fold(Rational::zero(), |acc, (c, v)| acc + c * v)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub name: String,
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new(name: impl Into<String>, sense: Sense) -> Self {
        Self {
            name: name.into(),
            sense,
            objective: Vec::new(),
            variables: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.variables.len()
    }

    pub fn add_variable(
        &mut self,
        name: impl Into<String>,
        cost: Rational,
        lower: Option<Rational>,
        upper: Option<Rational>,
        integer: bool,
    ) -> usize {
        self.variables.push(Variable {
            name: name.into(),
            lower,
            upper,
            integer,
        });
        self.objective.push(cost);
        for c in &mut self.constraints {
            c.coeffs.push(Rational::zero());
        }
        self.variables.len() - 1
    }

    /// Adds a constraint given as `(variable, coefficient)` terms.
    pub fn add_constraint(
        &mut self,
        name: impl Into<String>,
        terms: impl IntoIterator<Item = (usize, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) -> usize {
        let mut coeffs = vec![Rational::zero(); self.num_vars()];
        for (j, c) in terms {
            coeffs[j] += c;
        }
        self.constraints.push(Constraint {
            name: name.into(),
            coeffs,
            relation,
            rhs,
        });
        self.constraints.len() - 1
    }

    /// Same program with every integrality flag cleared.
    pub fn relaxed(&self) -> Self {
        let mut lp = self.clone();
        for v in &mut lp.variables {
            v.integer = false;
        }
        lp
    }

    pub fn is_integer_program(&self) -> bool {
        self.variables.iter().any(|v| v.integer)
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.objective.len() != n {
            return Err(LpError::DimensionMismatch {
                what: "objective".into(),
                expected: n,
                found: self.objective.len(),
            });
        }
        for c in &self.constraints {
            if c.coeffs.len() != n {
                return Err(LpError::DimensionMismatch {
                    what: format!("constraint {}", c.name),
                    expected: n,
                    found: c.coeffs.len(),
                });
            }
        }
        for v in &self.variables {
            if let (Some(l), Some(u)) = (&v.lower, &v.upper) {
                if l > u {
                    return Err(LpError::InconsistentBounds(v.name.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        dot(&self.objective, x)
    }

    /// Whether `x` satisfies every row and bound exactly.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.num_vars()
            && self
                .variables
                .iter()
                .zip(x)
                .all(|(v, xj)| v.lower.as_ref().is_none_or(|l| xj >= l) && v.upper.as_ref().is_none_or(|u| xj <= u))
            && self.constraints.iter().all(|c| c.relation.holds(&c.lhs(x), &c.rhs))
    }

    /// Indices of variables with a finite upper bound, in order.
    pub fn upper_bounded(&self) -> impl Iterator<Item = usize> + '_ {
        self.variables
            .iter()
            .enumerate()
            .filter(|(_, v)| v.upper.is_some())
            .map(|(j, _)| j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub status: Status,
    /// Optimal objective value; zero unless `status` is optimal.
    pub objective: Rational,
    pub primal: Vec<Rational>,
    /// One multiplier per constraint, as the rate of change of the optimal
    /// value with that row's right-hand side. Empty for integer programs.
    pub duals: Vec<Rational>,
    /// `c_j - A_j^T y` per variable. Empty for integer programs.
    pub reduced_costs: Vec<Rational>,
    /// Branch-and-bound nodes solved; zero for plain LPs.
    pub branches: usize,
}

impl SolveResult {
    pub(crate) fn without_solution(status: Status, n: usize) -> Self {
        Self {
            status,
            objective: Rational::zero(),
            primal: vec![Rational::zero(); n],
            duals: Vec::new(),
            reduced_costs: Vec::new(),
            branches: 0,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }

    /// Multiplier on `x_j <= u_j` implied by the reduced cost, as a
    /// non-negative number.
    pub fn upper_bound_multiplier(&self, lp: &LinearProgram, j: usize) -> Rational {
        let d = &self.reduced_costs[j];
        let m = match lp.sense {
            Sense::Maximize => d.clone(),
            Sense::Minimize => -d.clone(),
        };
        if m.is_positive_value() {
            m
        } else {
            Rational::zero()
        }
    }

    /// Row multipliers followed by upper-bound multipliers for every
    /// variable with a finite upper bound: the variable vector of the
    /// textbook dual program.
    pub fn dual_vector(&self, lp: &LinearProgram) -> Vec<Rational> {
        let mut v = self.duals.clone();
        v.extend(lp.upper_bounded().map(|j| self.upper_bound_multiplier(lp, j)));
        v
    }
}

pub(crate) trait SignExt {
    fn is_positive_value(&self) -> bool;
    fn is_negative_value(&self) -> bool;
}

impl SignExt for Rational {
    fn is_positive_value(&self) -> bool {
        self > &Rational::zero()
    }
    fn is_negative_value(&self) -> bool {
        self < &Rational::zero()
    }
}

pub fn is_integral(v: &Rational) -> bool {
    v.denom().is_one()
}

/// Renders a rational as `n` or `n/d`.
pub fn fmt_rational(v: &Rational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}
