use num_integer::Integer;

use super::{is_integral, solve_lp, LinearProgram, LpError, Rational, Sense, SolveResult, Status};

pub const DEFAULT_NODE_LIMIT: usize = 1_000_000;

pub fn solve_ilp(lp: &LinearProgram) -> Result<SolveResult, LpError> {
    solve_ilp_with_limit(lp, DEFAULT_NODE_LIMIT)
}

/// Depth-first branch and bound on the exact LP relaxation. Branches on
/// the lowest-index fractional integer variable, floor side first.
pub fn solve_ilp_with_limit(lp: &LinearProgram, node_limit: usize) -> Result<SolveResult, LpError> {
    lp.validate()?;
    let max = lp.sense == Sense::Maximize;
    let better = |a: &Rational, b: &Rational| if max { a > b } else { a < b };

    let mut incumbent: Option<SolveResult> = None;
    let mut nodes = 0usize;
    let mut stack = vec![lp.clone()];
    while let Some(node) = stack.pop() {
        if nodes >= node_limit {
            return Err(LpError::NodeLimit(node_limit));
        }
        nodes += 1;
        let res = solve_lp(&node)?;
        match res.status {
            Status::Infeasible => continue,
            Status::Unbounded => {
                if nodes == 1 {
                    let mut r = SolveResult::without_solution(Status::Unbounded, lp.num_vars());
                    r.branches = nodes;
                    return Ok(r);
                }
                continue;
            }
            Status::Optimal => {}
        }
        if let Some(inc) = &incumbent {
            if !better(&res.objective, &inc.objective) {
                continue;
            }
        }
        let fractional = (0..node.num_vars()).find(|&j| node.variables[j].integer && !is_integral(&res.primal[j]));
        match fractional {
            None => incumbent = Some(res),
            Some(j) => {
                let v = &res.primal[j];
                let floor = Rational::from_integer(v.numer().div_floor(v.denom()));
                let ceil = &floor + Rational::from_integer(1.into());
                let mut up = node.clone();
                up.variables[j].lower = Some(ceil);
                let mut down = node;
                down.variables[j].upper = Some(floor);
                stack.push(up);
                stack.push(down);
            }
        }
    }
    Ok(match incumbent {
        Some(mut r) => {
            r.duals.clear();
            r.reduced_costs.clear();
            r.branches = nodes;
            r
        }
        None => {
            let mut r = SolveResult::without_solution(Status::Infeasible, lp.num_vars());
            r.branches = nodes;
            r
        }
    })
}
