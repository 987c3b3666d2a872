use num_traits::{Signed, Zero};

use super::{dot, LinearProgram, LpError, Rational, Relation, Sense, SignExt, SolveResult, Status};

type RowSpec = (Vec<(usize, Rational)>, Relation, Rational);

/// How an original variable is expressed through standard-form columns:
/// `x = offset + sum(sign * column)`.
struct VarMap {
    offset: Rational,
    parts: Vec<(usize, bool)>,
}

/// Dense tableau for `min c x, A x = b, x >= 0, b >= 0`, with one
/// artificial column per row so the inverse basis stays readable.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Number of non-artificial columns; artificial for row `i` is `n + i`.
    n: usize,
}

impl Tableau {
    fn width(&self) -> usize {
        self.n + self.rows.len()
    }

    fn pivot(&mut self, r: usize, c: usize, reduced: &mut [Rational], value: &mut Rational) {
        let p = self.rows[r][c].clone();
        if p != Rational::from_integer(1.into()) {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        let nz: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                self.rows[i][j] -= delta;
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !reduced[c].is_zero() {
            let f = reduced[c].clone();
            for &j in &nz {
                let delta = &f * &pivot_row[j];
                reduced[j] -= delta;
            }
            *value += &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule over the entering candidates `0..limit`.
    /// Returns `false` if the objective is unbounded below.
    fn optimize(&mut self, limit: usize, reduced: &mut [Rational], value: &mut Rational) -> bool {
        loop {
            let Some(c) = (0..limit).find(|&j| reduced[j].is_negative_value()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive_value() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c, reduced, value);
        }
    }

    /// Reduced costs `c_j - c_B B^-1 A_j` over every column and the current
    /// objective value `c_B B^-1 b`.
    fn price(&self, cost: &[Rational]) -> (Vec<Rational>, Rational) {
        let mut reduced = cost.to_vec();
        let mut value = Rational::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in self.rows[i].iter().enumerate() {
                if !a.is_zero() {
                    reduced[j] -= cb * a;
                }
            }
            value += cb * &self.rhs[i];
        }
        (reduced, value)
    }
}

/// Solves the relaxation of `lp` (integrality flags are ignored) exactly.
pub fn solve_lp(lp: &LinearProgram) -> Result<SolveResult, LpError> {
    lp.validate()?;
    let nvars = lp.num_vars();

    // Standard-form columns for the original variables.
    let mut maps = Vec::with_capacity(nvars);
    let mut ncols = 0;
    let mut ub_rows: Vec<(usize, Rational)> = Vec::new();
    for (j, v) in lp.variables.iter().enumerate() {
        let map = match (&v.lower, &v.upper) {
            (Some(l), u) => {
                if let Some(u) = u {
                    ub_rows.push((j, u - l));
                }
                ncols += 1;
                VarMap {
                    offset: l.clone(),
                    parts: vec![(ncols - 1, true)],
                }
            }
            (None, Some(u)) => {
                ncols += 1;
                VarMap {
                    offset: u.clone(),
                    parts: vec![(ncols - 1, false)],
                }
            }
            (None, None) => {
                ncols += 2;
                VarMap {
                    offset: Rational::zero(),
                    parts: vec![(ncols - 2, true), (ncols - 1, false)],
                }
            }
        };
        maps.push(map);
    }
    let n_struct = ncols;

    // Rows: original constraints, then `x' <= u - l` rows.
    let mut row_specs: Vec<RowSpec> = Vec::new();
    for c in &lp.constraints {
        let mut terms = Vec::new();
        let mut rhs = c.rhs.clone();
        for (j, a) in c.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            rhs -= a * &maps[j].offset;
            for &(col, pos) in &maps[j].parts {
                terms.push((col, if pos { a.clone() } else { -a.clone() }));
            }
        }
        row_specs.push((terms, c.relation, rhs));
    }
    for (j, span) in &ub_rows {
        row_specs.push((
            vec![(maps[*j].parts[0].0, Rational::from_integer(1.into()))],
            Relation::Le,
            span.clone(),
        ));
    }

    let m = row_specs.len();
    let n_slack = row_specs.iter().filter(|r| r.1 != Relation::Eq).count();
    let n = n_struct + n_slack;
    let one = Rational::from_integer(1.into());
    let mut rows = vec![vec![Rational::zero(); n + m]; m];
    let mut rhs = vec![Rational::zero(); m];
    let mut row_sign = vec![false; m];
    let mut slack = n_struct;
    for (i, (terms, rel, b)) in row_specs.into_iter().enumerate() {
        for (col, a) in terms {
            rows[i][col] += a;
        }
        match rel {
            Relation::Le => {
                rows[i][slack] = one.clone();
                slack += 1;
            }
            Relation::Ge => {
                rows[i][slack] = -one.clone();
                slack += 1;
            }
            Relation::Eq => {}
        }
        rhs[i] = b;
        if rhs[i].is_negative() {
            row_sign[i] = true;
            for v in rows[i].iter_mut() {
                *v = -v.clone();
            }
            rhs[i] = -rhs[i].clone();
        }
        rows[i][n + i] = one.clone();
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
        n,
    };

    // Phase I: minimise the sum of artificials.
    let mut phase1_cost = vec![Rational::zero(); t.width()];
    for c in phase1_cost.iter_mut().skip(n) {
        *c = one.clone();
    }
    let (mut reduced, mut value) = t.price(&phase1_cost);
    t.optimize(t.width(), &mut reduced, &mut value);
    if value.is_positive_value() {
        return Ok(SolveResult::without_solution(Status::Infeasible, nvars));
    }
    // Drive artificials out of the basis where a real column can replace them.
    for r in 0..m {
        if t.basis[r] < n {
            continue;
        }
        if let Some(c) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
            let mut scratch = vec![Rational::zero(); t.width()];
            let mut v = Rational::zero();
            t.pivot(r, c, &mut scratch, &mut v);
        }
    }

    // Phase II on the real objective, in minimisation form.
    let flip = lp.sense == Sense::Maximize;
    let mut cost = vec![Rational::zero(); t.width()];
    for (j, map) in maps.iter().enumerate() {
        let c = if flip {
            -lp.objective[j].clone()
        } else {
            lp.objective[j].clone()
        };
        for &(col, pos) in &map.parts {
            cost[col] = if pos { c.clone() } else { -c.clone() };
        }
    }
    let (mut reduced, mut value) = t.price(&cost);
    if !t.optimize(n, &mut reduced, &mut value) {
        return Ok(SolveResult::without_solution(Status::Unbounded, nvars));
    }

    let mut std_x = vec![Rational::zero(); t.width()];
    for (i, &b) in t.basis.iter().enumerate() {
        std_x[b] = t.rhs[i].clone();
    }
    let primal: Vec<Rational> = maps
        .iter()
        .map(|map| {
            map.parts.iter().fold(map.offset.clone(), |acc, &(col, pos)| {
                if pos {
                    acc + &std_x[col]
                } else {
                    acc - &std_x[col]
                }
            })
        })
        .collect();

    // pi_i = -reduced cost of artificial i; map back through row and objective signs.
    let duals: Vec<Rational> = (0..lp.constraints.len())
        .map(|i| {
            let pi = -reduced[n + i].clone();
            if flip ^ row_sign[i] {
                -pi
            } else {
                pi
            }
        })
        .collect();
    let reduced_costs: Vec<Rational> = (0..nvars)
        .map(|j| {
            let col: Vec<Rational> = lp.constraints.iter().map(|c| c.coeffs[j].clone()).collect();
            &lp.objective[j] - dot(&col, &duals)
        })
        .collect();

    Ok(SolveResult {
        status: Status::Optimal,
        objective: lp.objective_value(&primal),
        primal,
        duals,
        reduced_costs,
        branches: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{check_certificate, int, ratio};

    fn unit_box_max(weights: &[i64], rows: &[(&[usize], i64)]) -> LinearProgram {
        let mut lp = LinearProgram::new("box", Sense::Maximize);
        for (j, &w) in weights.iter().enumerate() {
            lp.add_variable(format!("x{j}"), int(w), Some(int(0)), Some(int(1)), false);
        }
        for (i, (support, rhs)) in rows.iter().enumerate() {
            lp.add_constraint(
                format!("r{i}"),
                support.iter().map(|&j| (j, int(1))),
                Relation::Le,
                int(*rhs),
            );
        }
        lp
    }

    #[test]
    fn single_bounded_variable() {
        let mut lp = LinearProgram::new("t", Sense::Maximize);
        lp.add_variable("x", int(1), Some(int(0)), None, false);
        lp.add_constraint("c", [(0, int(1))], Relation::Le, int(1));
        let res = solve_lp(&lp).unwrap();
        assert_eq!(res.status, Status::Optimal);
        assert_eq!(res.objective, int(1));
        assert_eq!(res.duals, vec![int(1)]);
        check_certificate(&lp, &res).unwrap();
    }

    #[test]
    fn three_user_relaxation_value_two() {
        let lp = unit_box_max(&[1, 1, 1], &[(&[0, 2], 1), (&[0, 1, 2], 2)]);
        let res = solve_lp(&lp).unwrap();
        assert_eq!(res.objective, int(2));
        check_certificate(&lp, &res).unwrap();
    }

    #[test]
    fn symmetric_relaxation_value_three_halves() {
        let lp = unit_box_max(
            &[1, 1, 1],
            &[
                (&[0, 1], 1),
                (&[0, 2], 1),
                (&[1, 2], 1),
                (&[0, 1, 2], 2),
                (&[0, 1, 2], 2),
            ],
        );
        let res = solve_lp(&lp).unwrap();
        assert_eq!(res.objective, ratio(3, 2));
        assert_eq!(res.primal, vec![ratio(1, 2); 3]);
        check_certificate(&lp, &res).unwrap();
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new("inf", Sense::Minimize);
        lp.add_variable("x", int(1), Some(int(0)), None, false);
        lp.add_constraint("a", [(0, int(1))], Relation::Ge, int(3));
        lp.add_constraint("b", [(0, int(1))], Relation::Le, int(2));
        assert_eq!(solve_lp(&lp).unwrap().status, Status::Infeasible);

        let mut lp = LinearProgram::new("unb", Sense::Maximize);
        lp.add_variable("x", int(1), Some(int(0)), None, false);
        lp.add_variable("y", int(0), Some(int(0)), None, false);
        lp.add_constraint("a", [(0, int(1)), (1, int(-1))], Relation::Le, int(2));
        assert_eq!(solve_lp(&lp).unwrap().status, Status::Unbounded);
    }

    #[test]
    fn free_and_negative_bounds_and_equalities() {
        // min x + y, x free, y <= 5 (no lower), x - y = 1, x >= -4
        let mut lp = LinearProgram::new("mix", Sense::Minimize);
        lp.add_variable("x", int(1), None, None, false);
        lp.add_variable("y", int(1), None, Some(int(5)), false);
        lp.add_constraint("eq", [(0, int(1)), (1, int(-1))], Relation::Eq, int(1));
        lp.add_constraint("lo", [(0, int(1))], Relation::Ge, int(-4));
        let res = solve_lp(&lp).unwrap();
        assert_eq!(res.objective, int(-9));
        assert_eq!(res.primal, vec![int(-4), int(-5)]);
        check_certificate(&lp, &res).unwrap();
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new("red", Sense::Maximize);
        lp.add_variable("x", int(1), Some(int(0)), None, false);
        lp.add_variable("y", int(2), Some(int(0)), None, false);
        lp.add_constraint("a", [(0, int(1)), (1, int(1))], Relation::Eq, int(4));
        lp.add_constraint("b", [(0, int(2)), (1, int(2))], Relation::Eq, int(8));
        let res = solve_lp(&lp).unwrap();
        assert_eq!(res.objective, int(8));
        check_certificate(&lp, &res).unwrap();
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling example for the largest-coefficient rule.
        let mut lp = LinearProgram::new("beale", Sense::Minimize);
        for (j, c) in [ratio(-3, 4), int(150), ratio(-1, 50), int(6)].into_iter().enumerate() {
            lp.add_variable(format!("x{j}"), c, Some(int(0)), None, false);
        }
        lp.add_constraint(
            "r1",
            [(0, ratio(1, 4)), (1, int(-60)), (2, ratio(-1, 25)), (3, int(9))],
            Relation::Le,
            int(0),
        );
        lp.add_constraint(
            "r2",
            [(0, ratio(1, 2)), (1, int(-90)), (2, ratio(-1, 50)), (3, int(3))],
            Relation::Le,
            int(0),
        );
        lp.add_constraint("r3", [(2, int(1))], Relation::Le, int(1));
        let res = solve_lp(&lp).unwrap();
        assert_eq!(res.objective, ratio(-1, 20));
        check_certificate(&lp, &res).unwrap();
    }

    proptest::proptest! {
        #[test]
        fn random_packing_programs_certify(
            weights in proptest::collection::vec(1i64..5, 1..5),
            rows in proptest::collection::vec((proptest::collection::vec(proptest::bool::ANY, 4), 0i64..4), 0..6),
        ) {
            let n = weights.len();
            let mut lp = LinearProgram::new("rnd", Sense::Maximize);
            for (j, &w) in weights.iter().enumerate() {
                lp.add_variable(format!("x{j}"), int(w), Some(int(0)), Some(int(1)), false);
            }
            for (i, (mask, rhs)) in rows.iter().enumerate() {
                let terms: Vec<_> = (0..n).filter(|&j| mask[j]).map(|j| (j, int(1))).collect();
                lp.add_constraint(format!("r{i}"), terms, Relation::Le, int(*rhs));
            }
            let res = solve_lp(&lp).unwrap();
            proptest::prop_assert_eq!(res.status, Status::Optimal);
            proptest::prop_assert!(check_certificate(&lp, &res).is_ok());
        }
    }
}
