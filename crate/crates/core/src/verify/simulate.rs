use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::Serialize;
use thiserror::Error;

use crate::coding::gf256::{axpy, Gf256};
use crate::coding::{TransmissionSchedule, Unit};
use crate::instance::{Instance, UserIndex};

/// Payload bytes per (sub)packet unit.
pub const UNIT_BYTES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimulationError {
    #[error("user {user} cannot decode unit {unit} of packet {packet}")]
    Undecodable { user: String, packet: String, unit: u64 },
    #[error("user {user} decoded unit {unit} of packet {packet} to the wrong payload")]
    WrongPayload { user: String, packet: String, unit: u64 },
    #[error("transmission {index} references unit {unit} of packet #{packet}, outside the instance")]
    UnknownUnit { index: usize, packet: usize, unit: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UserDecode {
    pub user: String,
    pub demanded_units: usize,
    pub decoded_units: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeReport {
    pub seed: u64,
    pub theta: u64,
    pub transmissions: usize,
    pub users: Vec<UserDecode>,
}

/// Ground-truth payload of every unit, drawn in unit order from `seed`.
pub fn payloads(inst: &Instance, theta: u64, seed: u64) -> BTreeMap<Unit, Vec<u8>> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let mut out = BTreeMap::new();
    for (m, p) in inst.packets().iter().enumerate() {
        for index in 0..p.weight * theta {
            let mut buf = vec![0u8; UNIT_BYTES];
            rng.fill_bytes(&mut buf);
            out.insert(Unit { packet: m, index }, buf);
        }
    }
    out
}

struct Row {
    coeffs: Vec<Gf256>,
    payload: Vec<u8>,
}

/// Reduced row echelon form in place; returns the pivot column per row.
fn rref(rows: &mut Vec<Row>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i].coeffs[c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r].coeffs[c].inv().unwrap();
        for v in rows[r].coeffs.iter_mut() {
            *v *= inv;
        }
        let scaled: Vec<u8> = rows[r].payload.iter().map(|&b| (inv * Gf256(b)).0).collect();
        rows[r].payload = scaled;
        for i in 0..rows.len() {
            if i == r || rows[i].coeffs[c].is_zero() {
                continue;
            }
            let f = rows[i].coeffs[c];
            let (pc, pp) = (rows[r].coeffs.clone(), rows[r].payload.clone());
            for (v, s) in rows[i].coeffs.iter_mut().zip(&pc) {
                *v += f * *s;
            }
            axpy(&mut rows[i].payload, f, &pp);
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

fn decode_user(
    inst: &Instance,
    schedule: &TransmissionSchedule,
    truth: &BTreeMap<Unit, Vec<u8>>,
    sent: &[Vec<u8>],
    u: UserIndex,
) -> Result<UserDecode, SimulationError> {
    let known = |unit: &Unit| inst.holds(u, unit.packet);
    let mut cols: BTreeMap<Unit, usize> = BTreeMap::new();
    for t in &schedule.transmissions {
        for (unit, _) in &t.terms {
            if !known(unit) {
                let n = cols.len();
                cols.entry(*unit).or_insert(n);
            }
        }
    }
    let mut rows: Vec<Row> = schedule
        .transmissions
        .iter()
        .zip(sent)
        .map(|(t, z)| {
            let mut coeffs = vec![Gf256::ZERO; cols.len()];
            let mut payload = z.clone();
            for (unit, c) in &t.terms {
                if known(unit) {
                    axpy(&mut payload, *c, &truth[unit]);
                } else {
                    coeffs[cols[unit]] += *c;
                }
            }
            Row { coeffs, payload }
        })
        .collect();
    let pivots = rref(&mut rows, cols.len());

    let user = inst.users()[u].clone();
    let mut demanded = 0;
    for m in inst.demanded_by(u) {
        let p = inst.packet(m);
        for index in 0..p.weight * schedule.theta {
            demanded += 1;
            let unit = Unit { packet: m, index };
            let undecodable = || SimulationError::Undecodable {
                user: user.clone(),
                packet: p.id.clone(),
                unit: index,
            };
            let col = *cols.get(&unit).ok_or_else(undecodable)?;
            let r = pivots.iter().position(|&c| c == col).ok_or_else(undecodable)?;
            if rows[r].coeffs.iter().enumerate().any(|(j, v)| j != col && !v.is_zero()) {
                return Err(undecodable());
            }
            if rows[r].payload != truth[&unit] {
                return Err(SimulationError::WrongPayload {
                    user,
                    packet: p.id.clone(),
                    unit: index,
                });
            }
        }
    }
    Ok(UserDecode {
        user,
        demanded_units: demanded,
        decoded_units: demanded,
    })
}

/// Broadcasts `schedule` over seeded random payloads and has every user
/// solve for its demanded units by Gaussian elimination over GF(256)
/// (GF(2) schedules embed with 0/1 coefficients). Decoding must be
/// bit-exact. Users are checked in index order; the first failure is
/// returned.
pub fn simulate(inst: &Instance, schedule: &TransmissionSchedule, seed: u64) -> Result<DecodeReport, SimulationError> {
    let truth = payloads(inst, schedule.theta, seed);
    let mut sent = Vec::with_capacity(schedule.transmissions.len());
    for (index, t) in schedule.transmissions.iter().enumerate() {
        let mut z = vec![0u8; UNIT_BYTES];
        for (unit, c) in &t.terms {
            let src = truth.get(unit).ok_or(SimulationError::UnknownUnit {
                index,
                packet: unit.packet,
                unit: unit.index,
            })?;
            axpy(&mut z, *c, src);
        }
        sent.push(z);
    }
    let users = (0..inst.num_users())
        .map(|u| decode_user(inst, schedule, &truth, &sent, u))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DecodeReport {
        seed,
        theta: schedule.theta,
        transmissions: schedule.transmissions.len(),
        users,
    })
}
