//! Glue from an instance to solved programs and transmission schedules.

use serde::Serialize;

use crate::coding::{clique_schedule, cyclic_schedule_scalar, cyclic_schedule_vector, TransmissionSchedule};
use crate::enumerate::{
    enumerate_cycles, enumerate_partial_cliques, Cycle, PartialClique, DEFAULT_MAX_CYCLES, DEFAULT_MAX_K,
};
use crate::instance::Instance;
use crate::lp::{solve_ilp_with_limit, solve_lp, LinearProgram, Rational, SolveResult, Status, DEFAULT_NODE_LIMIT};
use crate::programs::{clique_code, cyclic_code};
use crate::Error;

/// Enumeration and search caps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_cycles: usize,
    pub max_k: usize,
    pub node_limit: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_cycles: DEFAULT_MAX_CYCLES,
            max_k: DEFAULT_MAX_K,
            node_limit: DEFAULT_NODE_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Cyclic,
    PartialClique,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Scalar,
    Vector,
}

pub fn cycles(inst: &Instance, limits: &Limits) -> Result<Vec<Cycle>, Error> {
    Ok(enumerate_cycles(inst, Some(limits.max_cycles))?)
}

pub fn cliques(inst: &Instance, limits: &Limits) -> Result<Vec<PartialClique>, Error> {
    Ok(enumerate_partial_cliques(inst, Some(limits.max_k))?)
}

/// Solves `lp` exactly, by branch and bound when it has integer variables.
/// Anything but an optimal status is an error: every program built from
/// an instance is feasible and bounded.
pub fn solve(lp: &LinearProgram, limits: &Limits) -> Result<SolveResult, Error> {
    let res = if lp.is_integer_program() {
        solve_ilp_with_limit(lp, limits.node_limit)?
    } else {
        solve_lp(lp)?
    };
    if res.status != Status::Optimal {
        return Err(Error::Unsolved {
            program: lp.name.clone(),
            status: res.status,
        });
    }
    Ok(res)
}

/// A schedule together with the optimal value of the program it came from.
#[derive(Debug, Clone)]
pub struct BuiltSchedule {
    pub schedule: TransmissionSchedule,
    pub program_value: Rational,
}

/// Solves the program behind `strategy` (integral for scalar mode, its
/// relaxation for vector mode) and expands the optimum into a schedule.
pub fn build_schedule(
    inst: &Instance,
    strategy: Strategy,
    mode: Mode,
    limits: &Limits,
) -> Result<BuiltSchedule, Error> {
    let relaxed = mode == Mode::Vector;
    let (schedule, value) = match strategy {
        Strategy::Cyclic => {
            let cycles = cycles(inst, limits)?;
            let res = solve(&cyclic_code(inst, &cycles, relaxed)?, limits)?;
            let s = match mode {
                Mode::Scalar => cyclic_schedule_scalar(inst, &cycles, &res.primal)?,
                Mode::Vector => cyclic_schedule_vector(inst, &cycles, &res.primal)?,
            };
            (s, res.objective)
        }
        Strategy::PartialClique => {
            let cliques = cliques(inst, limits)?;
            let res = solve(&clique_code(inst, &cliques, relaxed)?, limits)?;
            (clique_schedule(inst, &cliques, &res.primal, !relaxed)?, res.objective)
        }
    };
    Ok(BuiltSchedule {
        schedule,
        program_value: value,
    })
}
