//! Builders for the integer programs and relaxations tying lower bounds to
//! codes.
//!
//! | builder | sense | meaning |
//! |---|---|---|
//! | [`max_acyclic`] | max | heaviest packet set leaving no cycle complete (lower bound) |
//! | [`cyclic_code`] | min | cycle coding actions plus direct broadcasts covering every packet |
//! | [`feedback_vertex_set`] | min | lightest packet set hitting every cycle |
//! | [`cycle_packing`] | max | cycle actions with per-packet budget `w` (saved transmissions) |
//! | [`split_feedback_arc_set`] | min | feedback arc set of the packet split digraph |
//! | [`split_cycle_packing`] | max | arc-capacitated cycle packing in the split digraph |
//! | [`clique_code`] | min | partial clique actions covering every packet |
//! | [`clique_bound`] | max | packet set keeping at most `k - d` of every `(k, d)`-clique |
//!
//! Each builder takes a `relaxed` flag; relaxed programs drop integrality.
//! The relaxation of `max_acyclic` and that of `cyclic_code` are textbook
//! duals, as are the relaxations of `clique_bound` and `clique_code`.

use thiserror::Error;

use crate::enumerate::{Cycle, PartialClique, SplitCycle};
use crate::instance::{Instance, SplitArcKind, SplitDigraph};
use crate::lp::{int, LinearProgram, Relation, Sense};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProgramError {
    #[error("cycle #{0} is not a cycle of the instance")]
    InvalidCycle(usize),
    #[error("packet {0:?} is not covered by any supplied partial clique")]
    UncoveredPacket(String),
    #[error("split cycle #{0} references an unknown arc")]
    InvalidSplitCycle(usize),
}

fn check_cycles(inst: &Instance, cycles: &[Cycle]) -> Result<(), ProgramError> {
    match cycles.iter().position(|c| !c.is_valid(inst)) {
        Some(i) => Err(ProgramError::InvalidCycle(i)),
        None => Ok(()),
    }
}

fn check_cliques(inst: &Instance, cliques: &[PartialClique]) -> Result<(), ProgramError> {
    for (m, p) in inst.packets().iter().enumerate() {
        if !cliques.iter().any(|c| c.contains(m)) {
            return Err(ProgramError::UncoveredPacket(p.id.clone()));
        }
    }
    Ok(())
}

fn tag(relaxed: bool) -> &'static str {
    if relaxed {
        " (relaxation)"
    } else {
        ""
    }
}

pub fn cycle_label(i: usize) -> String {
    format!("c{i}")
}

pub fn clique_label(inst: &Instance, c: &PartialClique) -> String {
    let ids: Vec<&str> = c.packets().iter().map(|&m| inst.packet(m).id.as_str()).collect();
    format!("t_{}", ids.join("_"))
}

/// Maximum packet-weighted acyclic subgraph by packet deletion: keep at
/// most `K - 1` packets of every `K`-cycle. One row per enumerated cycle.
pub fn max_acyclic(inst: &Instance, cycles: &[Cycle], relaxed: bool) -> Result<LinearProgram, ProgramError> {
    check_cycles(inst, cycles)?;
    let mut lp = LinearProgram::new(format!("max acyclic subgraph{}", tag(relaxed)), Sense::Maximize);
    for p in inst.packets() {
        lp.add_variable(
            format!("x_{}", p.id),
            int(p.weight as i64),
            Some(int(0)),
            Some(int(1)),
            !relaxed,
        );
    }
    for (i, c) in cycles.iter().enumerate() {
        lp.add_constraint(
            cycle_label(i),
            c.packets().iter().map(|&m| (m, int(1))),
            Relation::Le,
            int(c.len() as i64 - 1),
        );
    }
    Ok(lp)
}

/// Scalar cyclic code: `y_C` actions on each cycle (cost `K - 1` each) and
/// `y_m` direct broadcasts, covering `w_m` units of every packet.
/// Variables: one per cycle in order, then one per packet.
pub fn cyclic_code(inst: &Instance, cycles: &[Cycle], relaxed: bool) -> Result<LinearProgram, ProgramError> {
    check_cycles(inst, cycles)?;
    let mut lp = LinearProgram::new(format!("cyclic code{}", tag(relaxed)), Sense::Minimize);
    for (i, c) in cycles.iter().enumerate() {
        lp.add_variable(
            format!("y_{}", cycle_label(i)),
            int(c.len() as i64 - 1),
            Some(int(0)),
            None,
            !relaxed,
        );
    }
    for p in inst.packets() {
        lp.add_variable(format!("y_{}", p.id), int(1), Some(int(0)), None, !relaxed);
    }
    let offset = cycles.len();
    for (m, p) in inst.packets().iter().enumerate() {
        let terms = cycles
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(m))
            .map(|(i, _)| (i, int(1)))
            .chain(std::iter::once((offset + m, int(1))));
        lp.add_constraint(format!("cover_{}", p.id), terms, Relation::Ge, int(p.weight as i64));
    }
    Ok(lp)
}

/// Minimum-weight feedback packet vertex set: every cycle loses a packet.
pub fn feedback_vertex_set(inst: &Instance, cycles: &[Cycle], relaxed: bool) -> Result<LinearProgram, ProgramError> {
    check_cycles(inst, cycles)?;
    let mut lp = LinearProgram::new(format!("feedback packet set{}", tag(relaxed)), Sense::Minimize);
    for p in inst.packets() {
        lp.add_variable(
            format!("x_{}", p.id),
            int(p.weight as i64),
            Some(int(0)),
            Some(int(1)),
            !relaxed,
        );
    }
    for (i, c) in cycles.iter().enumerate() {
        lp.add_constraint(
            cycle_label(i),
            c.packets().iter().map(|&m| (m, int(1))),
            Relation::Ge,
            int(1),
        );
    }
    Ok(lp)
}

/// Saved transmissions: cycle actions where packet `m` joins at most `w_m`.
pub fn cycle_packing(inst: &Instance, cycles: &[Cycle], relaxed: bool) -> Result<LinearProgram, ProgramError> {
    check_cycles(inst, cycles)?;
    let mut lp = LinearProgram::new(format!("cycle packing{}", tag(relaxed)), Sense::Maximize);
    for i in 0..cycles.len() {
        lp.add_variable(format!("y_{}", cycle_label(i)), int(1), Some(int(0)), None, !relaxed);
    }
    for (m, p) in inst.packets().iter().enumerate() {
        let terms = cycles
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(m))
            .map(|(i, _)| (i, int(1)));
        lp.add_constraint(format!("budget_{}", p.id), terms, Relation::Le, int(p.weight as i64));
    }
    Ok(lp)
}

fn arc_label(inst: &Instance, kind: SplitArcKind) -> String {
    let p = |m: usize| inst.packet(m).id.as_str();
    let u = |n: usize| inst.users()[n].as_str();
    match kind {
        SplitArcKind::PacketToPacket(m) => format!("a_{}", p(m)),
        SplitArcKind::UserToPacket { user, packet } => format!("a_{}_{}", u(user), p(packet)),
        SplitArcKind::PacketToUser { packet, user } => format!("a_{}_{}", p(packet), u(user)),
    }
}

fn check_split(g: &SplitDigraph, cycles: &[SplitCycle]) -> Result<(), ProgramError> {
    match cycles.iter().position(|c| c.arcs.iter().any(|&a| a >= g.arcs().len())) {
        Some(i) => Err(ProgramError::InvalidSplitCycle(i)),
        None => Ok(()),
    }
}

/// Minimum-weight feedback arc set of the packet split digraph.
pub fn split_feedback_arc_set(
    inst: &Instance,
    g: &SplitDigraph,
    cycles: &[SplitCycle],
    relaxed: bool,
) -> Result<LinearProgram, ProgramError> {
    check_split(g, cycles)?;
    let mut lp = LinearProgram::new(format!("split feedback arc set{}", tag(relaxed)), Sense::Minimize);
    for a in g.arcs() {
        lp.add_variable(
            arc_label(inst, a.kind),
            int(a.weight as i64),
            Some(int(0)),
            Some(int(1)),
            !relaxed,
        );
    }
    for (i, c) in cycles.iter().enumerate() {
        lp.add_constraint(
            format!("s{i}"),
            c.arcs.iter().map(|&a| (a, int(1))),
            Relation::Ge,
            int(1),
        );
    }
    Ok(lp)
}

/// Cycle packing in the packet split digraph with arc capacities.
pub fn split_cycle_packing(
    inst: &Instance,
    g: &SplitDigraph,
    cycles: &[SplitCycle],
    relaxed: bool,
) -> Result<LinearProgram, ProgramError> {
    check_split(g, cycles)?;
    let mut lp = LinearProgram::new(format!("split cycle packing{}", tag(relaxed)), Sense::Maximize);
    for i in 0..cycles.len() {
        lp.add_variable(format!("y_s{i}"), int(1), Some(int(0)), None, !relaxed);
    }
    for (a_idx, a) in g.arcs().iter().enumerate() {
        let terms = cycles
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(a_idx))
            .map(|(i, _)| (i, int(1)));
        lp.add_constraint(
            format!("cap_{}", arc_label(inst, a.kind)),
            terms,
            Relation::Le,
            int(a.weight as i64),
        );
    }
    Ok(lp)
}

/// Partial clique code: `y_T` actions on each clique (cost `k - d` each)
/// covering `w_m` units of every packet. One variable per clique.
pub fn clique_code(inst: &Instance, cliques: &[PartialClique], relaxed: bool) -> Result<LinearProgram, ProgramError> {
    check_cliques(inst, cliques)?;
    let mut lp = LinearProgram::new(format!("partial clique code{}", tag(relaxed)), Sense::Minimize);
    for c in cliques {
        lp.add_variable(
            format!("y_{}", clique_label(inst, c)),
            int(c.cost() as i64),
            Some(int(0)),
            None,
            !relaxed,
        );
    }
    for (m, p) in inst.packets().iter().enumerate() {
        let terms = cliques
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(m))
            .map(|(i, _)| (i, int(1)));
        lp.add_constraint(format!("cover_{}", p.id), terms, Relation::Ge, int(p.weight as i64));
    }
    Ok(lp)
}

/// Keep at most `k - d` packets of every `(k, d)`-partial clique. The
/// singleton cliques supply `x_m <= 1`, so variables carry only `x >= 0`.
pub fn clique_bound(inst: &Instance, cliques: &[PartialClique], relaxed: bool) -> Result<LinearProgram, ProgramError> {
    check_cliques(inst, cliques)?;
    let mut lp = LinearProgram::new(format!("partial clique bound{}", tag(relaxed)), Sense::Maximize);
    for p in inst.packets() {
        lp.add_variable(
            format!("x_{}", p.id),
            int(p.weight as i64),
            Some(int(0)),
            None,
            !relaxed,
        );
    }
    for c in cliques {
        lp.add_constraint(
            clique_label(inst, c),
            c.packets().iter().map(|&m| (m, int(1))),
            Relation::Le,
            int(c.cost() as i64),
        );
    }
    Ok(lp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_cycles, enumerate_partial_cliques};
    use crate::instance::fixtures::*;
    use crate::lp::{solve_ilp, solve_lp};

    fn fig1() -> Instance {
        Instance::new(
            users(3),
            vec![
                packet("p1", 1, 0, &[1, 2]),
                packet("p2", 1, 1, &[2]),
                packet("p3", 1, 2, &[0]),
            ],
        )
        .unwrap()
    }

    fn fig4() -> Instance {
        Instance::new(
            users(3),
            vec![
                packet("p1", 1, 0, &[1, 2]),
                packet("p2", 1, 1, &[0, 2]),
                packet("p3", 1, 2, &[0, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn cyclic_code_layout_for_three_user_example() {
        let inst = fig1();
        let cycles = enumerate_cycles(&inst, None).unwrap();
        let lp = cyclic_code(&inst, &cycles, false).unwrap();
        // cycles sorted {p1,p2,p3} then {p1,p3}; then direct y_1..y_3
        assert_eq!(lp.objective, vec![int(2), int(1), int(1), int(1), int(1)]);
        assert_eq!(lp.constraints.len(), 3);
        assert!(lp
            .constraints
            .iter()
            .all(|c| c.relation == Relation::Ge && c.rhs == int(1)));
        // p2 lies only on the 3-cycle
        assert_eq!(lp.constraints[1].coeffs, vec![int(1), int(0), int(0), int(1), int(0)]);
    }

    #[test]
    fn clique_bound_row_for_full_clique() {
        let inst = fig4();
        let cliques = enumerate_partial_cliques(&inst, None).unwrap();
        let lp = clique_bound(&inst, &cliques, false).unwrap();
        let row = lp.constraints.last().unwrap();
        assert_eq!(row.coeffs, vec![int(1); 3]);
        assert_eq!(row.rhs, int(1));
        assert_eq!(solve_ilp(&lp).unwrap().objective, int(1));
    }

    #[test]
    fn split_heavy_arcs_weighted() {
        let inst = fig1();
        let g = inst.build_split_digraph();
        let lp = split_feedback_arc_set(&inst, &g, &[], false).unwrap();
        let heavy: Vec<_> = lp.objective[3..].to_vec();
        assert_eq!(heavy.len(), 7);
        assert!(heavy.iter().all(|w| *w == int(4)));
    }

    #[test]
    fn invalid_inputs_rejected() {
        let inst = fig1();
        let foreign = enumerate_cycles(&fig4(), None).unwrap();
        let bad = foreign.iter().position(|c| !c.is_valid(&inst)).unwrap();
        assert_eq!(max_acyclic(&inst, &foreign, true), Err(ProgramError::InvalidCycle(bad)));
        let only_big = vec![PartialClique::new(&inst, &[0, 1])];
        assert!(matches!(
            clique_code(&inst, &only_big, true),
            Err(ProgramError::UncoveredPacket(_))
        ));
    }

    #[test]
    fn relaxation_values() {
        let inst = fig4();
        let cycles = enumerate_cycles(&inst, None).unwrap();
        let p1r = solve_lp(&max_acyclic(&inst, &cycles, true).unwrap()).unwrap();
        let p2r = solve_lp(&cyclic_code(&inst, &cycles, true).unwrap()).unwrap();
        assert_eq!(p1r.objective, crate::lp::ratio(3, 2));
        assert_eq!(p2r.objective, crate::lp::ratio(3, 2));
    }
}
