//! Transmission schedules built from program solutions: XOR cycle codes and
//! MDS-coded partial clique codes, at packet or subpacket granularity.

pub mod gf256;
mod mds;

use std::fmt::Write;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{Cycle, PartialClique};
use crate::instance::{Instance, PacketIndex};
use crate::lp::{fmt_rational, Rational};

pub use gf256::Gf256;
pub use mds::{clique_rows, mds_rows};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodingError {
    #[error("cannot build {r} independent rows over {k} packets")]
    TooManyRows { k: usize, r: usize },
    #[error("GF(256) has too few points for a {r} x {k} Cauchy matrix")]
    FieldTooSmall { k: usize, r: usize },
    #[error("solution has {found} entries, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("solution entry {index} is negative ({value})")]
    Negative { index: usize, value: String },
    #[error("solution entry {index} is not integral ({value})")]
    NonIntegral { index: usize, value: String },
    #[error("solution covers packet {packet:?} fewer than its weight")]
    Uncovered { packet: String },
    #[error("cycle #{0} is not a cycle of the instance")]
    InvalidCycle(usize),
    #[error("subdivision factor {0} does not fit in 64 bits")]
    ThetaOverflow(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Field {
    #[serde(rename = "GF(2)")]
    Gf2,
    #[serde(rename = "GF(256)")]
    Gf256,
}

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::Gf2 => "GF(2)",
            Field::Gf256 => "GF(256)",
        }
    }
}

/// One unit of a packet type: unit `index` ranges over `0..w * theta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Unit {
    pub packet: PacketIndex,
    pub index: u64,
}

/// One broadcast: a linear combination of units with nonzero coefficients,
/// sorted by unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transmission {
    pub terms: Vec<(Unit, Gf256)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionKind {
    Cycle(Cycle),
    Clique(PartialClique),
    Direct(PacketIndex),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodingAction {
    pub kind: ActionKind,
    pub repetitions: u64,
}

impl CodingAction {
    /// Transmissions per repetition.
    pub fn cost(&self) -> usize {
        match &self.kind {
            ActionKind::Cycle(c) => c.len() - 1,
            ActionKind::Clique(t) => t.cost(),
            ActionKind::Direct(_) => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransmissionSchedule {
    pub field: Field,
    /// Subpackets per packet unit; 1 for scalar codes.
    pub theta: u64,
    pub actions: Vec<CodingAction>,
    pub transmissions: Vec<Transmission>,
}

impl TransmissionSchedule {
    /// Expands `actions` in order, consuming units of each packet greedily.
    /// Once a packet's units run out, further coverage reuses them from the
    /// start as duplicates.
    pub fn from_actions(inst: &Instance, actions: Vec<CodingAction>, theta: u64) -> Result<Self, CodingError> {
        let units: Vec<u64> = inst.packets().iter().map(|p| p.weight * theta).collect();
        let mut next = vec![0u64; inst.num_packets()];
        let mut take = |m: PacketIndex| {
            let u = Unit {
                packet: m,
                index: next[m] % units[m],
            };
            next[m] += 1;
            u
        };
        let mut transmissions = Vec::new();
        let mut field = Field::Gf2;
        for a in &actions {
            match &a.kind {
                ActionKind::Direct(m) => {
                    for _ in 0..a.repetitions {
                        transmissions.push(Transmission::new(vec![(take(*m), Gf256::ONE)]));
                    }
                }
                ActionKind::Cycle(c) => {
                    for _ in 0..a.repetitions {
                        let round: Vec<Unit> = c.packets().iter().map(|&m| take(m)).collect();
                        for pair in round.windows(2) {
                            transmissions.push(Transmission::new(vec![(pair[0], Gf256::ONE), (pair[1], Gf256::ONE)]));
                        }
                    }
                }
                ActionKind::Clique(t) => {
                    field = Field::Gf256;
                    let rows = clique_rows(t.k(), t.cost())?;
                    for _ in 0..a.repetitions {
                        let round: Vec<Unit> = t.packets().iter().map(|&m| take(m)).collect();
                        for row in &rows {
                            transmissions.push(Transmission::new(
                                round.iter().copied().zip(row.iter().copied()).collect(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(Self {
            field,
            theta,
            actions,
            transmissions,
        })
    }

    /// Clearance time in packet units: transmissions divided by `theta`.
    pub fn total_count(&self) -> Rational {
        Rational::new((self.transmissions.len() as i64).into(), (self.theta as i64).into())
    }

    pub fn dump(&self, inst: &Instance) -> ScheduleDump {
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let (kind, packets, d) = match &a.kind {
                    ActionKind::Cycle(c) => ("cycle", c.packets().to_vec(), None),
                    ActionKind::Clique(t) => ("clique", t.packets().to_vec(), Some(t.d())),
                    ActionKind::Direct(m) => ("direct", vec![*m], None),
                };
                ActionDump {
                    kind,
                    packets: packets.iter().map(|&m| inst.packet(m).id.clone()).collect(),
                    d,
                    repetitions: a.repetitions,
                }
            })
            .collect();
        let granularity = if self.theta == 1 { "packet" } else { "subpacket" };
        let transmissions = self
            .transmissions
            .iter()
            .map(|t| TransmissionDump {
                field: self.field,
                granularity,
                coeffs: t
                    .terms
                    .iter()
                    .map(|(u, c)| CoeffDump {
                        packet: inst.packet(u.packet).id.clone(),
                        unit: u.index,
                        coeff: c.0,
                    })
                    .collect(),
            })
            .collect();
        ScheduleDump {
            field: self.field,
            theta: self.theta,
            transmissions_count: self.transmissions.len(),
            total_count: fmt_rational(&self.total_count()),
            actions,
            transmissions,
        }
    }

    /// One line per transmission, e.g. `p1#0 + p3#0` or `3*p1#0 + 7*p2#0`.
    pub fn to_text(&self, inst: &Instance) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "field {}  theta {}  transmissions {}  clearance {}",
            self.field.name(),
            self.theta,
            self.transmissions.len(),
            fmt_rational(&self.total_count())
        );
        for (i, t) in self.transmissions.iter().enumerate() {
            let terms: Vec<String> = t
                .terms
                .iter()
                .map(|(u, c)| {
                    let id = &inst.packet(u.packet).id;
                    if *c == Gf256::ONE {
                        format!("{id}#{}", u.index)
                    } else {
                        format!("{}*{id}#{}", c.0, u.index)
                    }
                })
                .collect();
            let _ = writeln!(out, "z{}: {}", i + 1, terms.join(" + "));
        }
        out
    }
}

impl Transmission {
    fn new(mut terms: Vec<(Unit, Gf256)>) -> Self {
        terms.sort_by_key(|t| t.0);
        let mut merged: Vec<(Unit, Gf256)> = Vec::with_capacity(terms.len());
        for (u, c) in terms {
            match merged.last_mut() {
                Some((v, acc)) if *v == u => *acc += c,
                _ => merged.push((u, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Self { terms: merged }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScheduleDump {
    pub field: Field,
    pub theta: u64,
    pub transmissions_count: usize,
    pub total_count: String,
    pub actions: Vec<ActionDump>,
    pub transmissions: Vec<TransmissionDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ActionDump {
    pub kind: &'static str,
    pub packets: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub repetitions: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransmissionDump {
    pub field: Field,
    pub granularity: &'static str,
    pub coeffs: Vec<CoeffDump>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoeffDump {
    pub packet: String,
    pub unit: u64,
    pub coeff: u8,
}

fn check_shape(y: &[Rational], expected: usize) -> Result<(), CodingError> {
    if y.len() != expected {
        return Err(CodingError::LengthMismatch {
            expected,
            found: y.len(),
        });
    }
    match y.iter().position(|v| v.is_negative()) {
        Some(index) => Err(CodingError::Negative {
            index,
            value: fmt_rational(&y[index]),
        }),
        None => Ok(()),
    }
}

fn check_integral(y: &[Rational]) -> Result<(), CodingError> {
    match y.iter().position(|v| !v.is_integer()) {
        Some(index) => Err(CodingError::NonIntegral {
            index,
            value: fmt_rational(&y[index]),
        }),
        None => Ok(()),
    }
}

/// Least common multiple of the denominators of `y`.
pub fn subdivision_factor(y: &[Rational]) -> Result<u64, CodingError> {
    let theta = y.iter().fold(num_bigint::BigInt::from(1), |acc, v| acc.lcm(v.denom()));
    theta
        .to_u64()
        .ok_or_else(|| CodingError::ThetaOverflow(theta.to_string()))
}

fn repetitions(v: &Rational, theta: u64) -> u64 {
    (v * Rational::from_integer((theta as i64).into()))
        .to_integer()
        .to_u64()
        .expect("nonnegative integral repetition")
}

fn check_coverage(
    inst: &Instance,
    y: &[Rational],
    covers: impl Fn(usize, PacketIndex) -> bool,
) -> Result<(), CodingError> {
    for (m, p) in inst.packets().iter().enumerate() {
        let mut total = Rational::zero();
        for (i, v) in y.iter().enumerate() {
            if covers(i, m) {
                total += v;
            }
        }
        if total < Rational::from_integer((p.weight as i64).into()) {
            return Err(CodingError::Uncovered { packet: p.id.clone() });
        }
    }
    Ok(())
}

fn cyclic_actions(
    inst: &Instance,
    cycles: &[Cycle],
    y: &[Rational],
    theta: u64,
) -> Result<Vec<CodingAction>, CodingError> {
    if let Some(i) = cycles.iter().position(|c| !c.is_valid(inst)) {
        return Err(CodingError::InvalidCycle(i));
    }
    check_shape(y, cycles.len() + inst.num_packets())?;
    let k = cycles.len();
    check_coverage(inst, y, |i, m| if i < k { cycles[i].contains(m) } else { i - k == m })?;
    let kinds = cycles
        .iter()
        .cloned()
        .map(ActionKind::Cycle)
        .chain((0..inst.num_packets()).map(ActionKind::Direct));
    Ok(kinds
        .zip(y)
        .map(|(kind, v)| CodingAction {
            kind,
            repetitions: repetitions(v, theta),
        })
        .filter(|a| a.repetitions > 0)
        .collect())
}

/// Scalar cyclic code from an integral cyclic code program solution laid
/// out as one entry per cycle, then one per packet.
pub fn cyclic_schedule_scalar(
    inst: &Instance,
    cycles: &[Cycle],
    y: &[Rational],
) -> Result<TransmissionSchedule, CodingError> {
    check_integral(y)?;
    let actions = cyclic_actions(inst, cycles, y, 1)?;
    TransmissionSchedule::from_actions(inst, actions, 1)
}

/// Vector cyclic code from a rational solution of the relaxation: every
/// packet is split into `theta` subpackets, `theta` the LCM of the
/// denominators in `y`.
pub fn cyclic_schedule_vector(
    inst: &Instance,
    cycles: &[Cycle],
    y: &[Rational],
) -> Result<TransmissionSchedule, CodingError> {
    let theta = subdivision_factor(y)?;
    let actions = cyclic_actions(inst, cycles, y, theta)?;
    TransmissionSchedule::from_actions(inst, actions, theta)
}

/// Partial clique code from a solution of the clique code program (one
/// entry per clique). `scalar` requires an integral solution; otherwise
/// packets are subdivided as in [`cyclic_schedule_vector`].
pub fn clique_schedule(
    inst: &Instance,
    cliques: &[PartialClique],
    y: &[Rational],
    scalar: bool,
) -> Result<TransmissionSchedule, CodingError> {
    check_shape(y, cliques.len())?;
    let theta = if scalar {
        check_integral(y)?;
        1
    } else {
        subdivision_factor(y)?
    };
    check_coverage(inst, y, |i, m| cliques[i].contains(m))?;
    let actions = cliques
        .iter()
        .zip(y)
        .map(|(t, v)| CodingAction {
            kind: ActionKind::Clique(t.clone()),
            repetitions: repetitions(v, theta),
        })
        .filter(|a| a.repetitions > 0)
        .collect();
    TransmissionSchedule::from_actions(inst, actions, theta)
}

/// Rewrites every `K`-cycle action as a `(K, 1)`-partial clique action on
/// the same packets; transmission counts are unchanged.
pub fn cycle_to_clique(inst: &Instance, schedule: &TransmissionSchedule) -> Result<TransmissionSchedule, CodingError> {
    let actions = schedule
        .actions
        .iter()
        .map(|a| {
            let kind = match &a.kind {
                ActionKind::Cycle(c) => ActionKind::Clique(
                    PartialClique::with_degree(inst, c.packets(), 1).expect("a cycle is a (K, 1)-partial clique"),
                ),
                other => other.clone(),
            };
            CodingAction {
                kind,
                repetitions: a.repetitions,
            }
        })
        .collect();
    TransmissionSchedule::from_actions(inst, actions, schedule.theta)
}
