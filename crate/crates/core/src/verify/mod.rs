//! Decoding simulation, planarity, and the bound and optimality checks.

mod planar;
mod simulate;

use std::fmt::Write;

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::instance::Instance;
use crate::lp::{fmt_rational, Rational};
use crate::pipeline::{cliques, cycles, solve, Limits};
use crate::programs::{clique_code, cyclic_code, max_acyclic};
use crate::Error;

pub use planar::{is_planar, underlying_edges};
pub use simulate::{payloads, simulate, DecodeReport, SimulationError, UserDecode, UNIT_BYTES};

fn rational<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(v))
}

/// Optimal values of the lower-bound program and both code programs, each
/// with its relaxation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProgramValues {
    #[serde(serialize_with = "rational")]
    pub max_acyclic: Rational,
    #[serde(serialize_with = "rational")]
    pub max_acyclic_lp: Rational,
    #[serde(serialize_with = "rational")]
    pub cyclic_code: Rational,
    #[serde(serialize_with = "rational")]
    pub cyclic_code_lp: Rational,
    #[serde(serialize_with = "rational")]
    pub clique_code: Rational,
    #[serde(serialize_with = "rational")]
    pub clique_code_lp: Rational,
}

/// Solves the cycle-based programs only: `(max_acyclic, its relaxation,
/// cyclic_code relaxation, cyclic_code)`.
pub fn cyclic_values(inst: &Instance, limits: &Limits) -> Result<[Rational; 4], Error> {
    let cycles = cycles(inst, limits)?;
    let v = |lp| solve(&lp, limits).map(|r| r.objective);
    Ok([
        v(max_acyclic(inst, &cycles, false)?)?,
        v(max_acyclic(inst, &cycles, true)?)?,
        v(cyclic_code(inst, &cycles, true)?)?,
        v(cyclic_code(inst, &cycles, false)?)?,
    ])
}

/// Solves the two clique code programs: `(integral, relaxation)`.
pub fn clique_values(inst: &Instance, limits: &Limits) -> Result<[Rational; 2], Error> {
    let cliques = cliques(inst, limits)?;
    let v = |lp| solve(&lp, limits).map(|r| r.objective);
    Ok([
        v(clique_code(inst, &cliques, false)?)?,
        v(clique_code(inst, &cliques, true)?)?,
    ])
}

pub fn program_values(inst: &Instance, limits: &Limits) -> Result<ProgramValues, Error> {
    let [p1, p1r, p2r, p2] = cyclic_values(inst, limits)?;
    let [p5, p5r] = clique_values(inst, limits)?;
    Ok(ProgramValues {
        max_acyclic: p1,
        max_acyclic_lp: p1r,
        cyclic_code: p2,
        cyclic_code_lp: p2r,
        clique_code: p5,
        clique_code_lp: p5r,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gaps {
    /// Relaxation minus integral optimum of the lower-bound program.
    #[serde(serialize_with = "rational")]
    pub acyclic: Rational,
    /// Integral minus relaxed optimum of the cyclic code program.
    #[serde(serialize_with = "rational")]
    pub cyclic: Rational,
    #[serde(serialize_with = "rational")]
    pub clique: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub gaps_nonnegative: bool,
    /// max_acyclic <= max_acyclic_lp
    pub lower_below_relaxation: bool,
    /// max_acyclic_lp == cyclic_code_lp
    pub relaxations_equal: bool,
    /// cyclic_code_lp <= cyclic_code
    pub relaxation_below_code: bool,
    /// clique codes never cost more than cyclic codes
    pub clique_below_cyclic: bool,
}

impl Chain {
    pub fn holds(&self) -> bool {
        self.gaps_nonnegative
            && self.lower_below_relaxation
            && self.relaxations_equal
            && self.relaxation_below_code
            && self.clique_below_cyclic
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub total_weight: u64,
    pub planar: bool,
    pub cycles: usize,
    pub cliques: usize,
    pub values: ProgramValues,
    pub gaps: Gaps,
    pub chain: Chain,
    /// Lower bound on the clearance time.
    #[serde(serialize_with = "rational")]
    pub lower: Rational,
    /// Best clearance achieved by a vector code.
    #[serde(serialize_with = "rational")]
    pub upper: Rational,
    pub optimal: bool,
    pub verdict: String,
}

pub fn bounds_report(inst: &Instance, limits: &Limits) -> Result<BoundsReport, Error> {
    let planar = is_planar(inst);
    let num_cycles = cycles(inst, limits)?.len();
    let num_cliques = cliques(inst, limits)?.len();
    let v = program_values(inst, limits)?;
    let gaps = Gaps {
        acyclic: &v.max_acyclic_lp - &v.max_acyclic,
        cyclic: &v.cyclic_code - &v.cyclic_code_lp,
        clique: &v.clique_code - &v.clique_code_lp,
    };
    let chain = Chain {
        gaps_nonnegative: [&gaps.acyclic, &gaps.cyclic, &gaps.clique]
            .iter()
            .all(|g| !(**g < Rational::zero())),
        lower_below_relaxation: v.max_acyclic <= v.max_acyclic_lp,
        relaxations_equal: v.max_acyclic_lp == v.cyclic_code_lp,
        relaxation_below_code: v.cyclic_code_lp <= v.cyclic_code,
        clique_below_cyclic: v.clique_code <= v.cyclic_code && v.clique_code_lp <= v.cyclic_code_lp,
    };
    let lower = v.max_acyclic.clone();
    let upper = v.cyclic_code_lp.clone().min(v.clique_code_lp.clone());
    let optimal = lower == upper;
    let verdict = match (optimal, planar) {
        (true, true) => "OPTIMAL (planar)",
        (true, false) => "OPTIMAL (bounds coincide)",
        (false, _) => "GAP",
    }
    .to_string();
    Ok(BoundsReport {
        total_weight: inst.total_weight(),
        planar,
        cycles: num_cycles,
        cliques: num_cliques,
        values: v,
        gaps,
        chain,
        lower,
        upper,
        optimal,
        verdict,
    })
}

impl BoundsReport {
    pub fn to_text(&self) -> String {
        let f = fmt_rational;
        let v = &self.values;
        let mut out = String::new();
        let _ = writeln!(out, "total weight      {}", self.total_weight);
        let _ = writeln!(out, "planar            {}", if self.planar { "yes" } else { "no" });
        let _ = writeln!(out, "cycles            {}", self.cycles);
        let _ = writeln!(out, "partial cliques   {}", self.cliques);
        let _ = writeln!(
            out,
            "{:<18}{:>10}{:>12}{:>8}",
            "program", "integral", "relaxation", "gap"
        );
        for (name, a, b, g) in [
            ("max acyclic", &v.max_acyclic, &v.max_acyclic_lp, &self.gaps.acyclic),
            ("cyclic code", &v.cyclic_code, &v.cyclic_code_lp, &self.gaps.cyclic),
            ("clique code", &v.clique_code, &v.clique_code_lp, &self.gaps.clique),
        ] {
            let _ = writeln!(out, "{name:<18}{:>10}{:>12}{:>8}", f(a), f(b), f(g));
        }
        let _ = writeln!(
            out,
            "bound chain       {}",
            if self.chain.holds() { "holds" } else { "VIOLATED" }
        );
        let _ = writeln!(out, "clearance time    [{}, {}]", f(&self.lower), f(&self.upper));
        let _ = writeln!(out, "{}", self.verdict);
        out
    }
}

/// Planar instances: the lower bound, both relaxations and the scalar
/// cyclic code must coincide.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanarCheck {
    pub planar: bool,
    #[serde(serialize_with = "rational")]
    pub max_acyclic: Rational,
    #[serde(serialize_with = "rational")]
    pub max_acyclic_lp: Rational,
    #[serde(serialize_with = "rational")]
    pub cyclic_code_lp: Rational,
    #[serde(serialize_with = "rational")]
    pub cyclic_code: Rational,
    /// `None` when the instance is not planar and nothing is asserted.
    pub holds: Option<bool>,
}

impl PlanarCheck {
    /// The certified optimal clearance time when the check applies and holds.
    pub fn optimal_value(&self) -> Option<&Rational> {
        (self.holds == Some(true)).then_some(&self.cyclic_code)
    }
}

pub fn check_planar_optimality(inst: &Instance, limits: &Limits) -> Result<PlanarCheck, Error> {
    let planar = is_planar(inst);
    let [p1, p1r, p2r, p2] = cyclic_values(inst, limits)?;
    let holds = planar.then(|| p1 == p1r && p1r == p2r && p2r == p2);
    Ok(PlanarCheck {
        planar,
        max_acyclic: p1,
        max_acyclic_lp: p1r,
        cyclic_code_lp: p2r,
        cyclic_code: p2,
        holds,
    })
}

/// Unicast instances with every packet held by at most one user and at
/// most four users: the scalar cyclic code meets the lower bound.
pub fn check_small_uniprior(inst: &Instance, limits: &Limits) -> Result<bool, Error> {
    if !inst.is_uniprior_lenient() {
        return Err(Error::Precondition("some packet is held by more than one user".into()));
    }
    if inst.num_users() > 4 {
        return Err(Error::Precondition(format!(
            "{} users (at most 4 supported)",
            inst.num_users()
        )));
    }
    let [p1, _, _, p2] = cyclic_values(inst, limits)?;
    Ok(p1 == p2)
}

/// Unicast instances with every packet held by at most one user: cyclic
/// and partial clique codes cost the same, scalar and vector alike.
pub fn check_uniprior_codes_agree(inst: &Instance, limits: &Limits) -> Result<bool, Error> {
    if !inst.is_uniprior_lenient() {
        return Err(Error::Precondition("some packet is held by more than one user".into()));
    }
    let [_, _, p2r, p2] = cyclic_values(inst, limits)?;
    let [p5, p5r] = clique_values(inst, limits)?;
    Ok(p2 == p5 && p2r == p5r)
}
