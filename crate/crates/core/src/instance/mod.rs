//! Unicast index-coding instances as weighted bipartite digraphs.
//!
//! Users are the left vertices and packet types the right vertices. A
//! user-to-packet arc `(u, p)` means `u` already holds every packet of type
//! `p`; a packet-to-user arc `(p, u)` means `u` demands them. Each packet
//! type carries an integer weight: the number of packets of that type, or
//! equivalently the size of a single variable-length packet.

mod format;
mod split;

use std::collections::BTreeSet;

use thiserror::Error;

pub use format::{parse_instance, serialize_instance};
pub use split::{SplitArc, SplitArcKind, SplitDigraph, SplitVertex};

/// Index of a user inside [`Instance::users`].
pub type UserIndex = usize;
/// Index of a packet type inside [`Instance::packets`].
pub type PacketIndex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid identifier {0:?}: ids must be non-empty tokens of ASCII letters, digits or '_'")]
    InvalidId(String),
    #[error("user {0:?} is declared twice")]
    DuplicateUser(String),
    #[error("packet id {0:?} is declared twice")]
    DuplicatePacket(String),
    #[error("packet {packet:?} references undeclared user {user:?}")]
    UnknownUser { packet: String, user: String },
    #[error("packet {0:?} has weight 0; weights must be at least 1")]
    ZeroWeight(String),
    #[error("packet {0:?} has an empty demand set")]
    EmptyDemand(String),
    #[error("packet {packet:?} is multicast (demanded by {users:?}); only unicast instances are supported")]
    Multicast { packet: String, users: Vec<String> },
    #[error("packet {packet:?}: user {user:?} both demands it and holds it as side information")]
    DemandInSide { packet: String, user: String },
    #[error("packets {first:?} and {second:?} have identical side-information and demand sets")]
    DuplicateType { first: String, second: String },
}

/// One packet vertex of the bipartite digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PacketType {
    pub id: String,
    /// Multiplicity (or integer size) of this packet type, always `>= 1`.
    pub weight: u64,
    /// The single user demanding this type.
    pub demand: UserIndex,
    /// Users holding this type as side information.
    pub side: BTreeSet<UserIndex>,
}

/// A validated unicast index-coding instance. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    users: Vec<String>,
    packets: Vec<PacketType>,
}

pub(crate) fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl Instance {
    /// Builds an instance and checks every structural invariant.
    pub fn new(users: Vec<String>, packets: Vec<PacketType>) -> Result<Self, InstanceError> {
        let mut seen = BTreeSet::new();
        for u in &users {
            if !valid_id(u) {
                return Err(InstanceError::InvalidId(u.clone()));
            }
            if !seen.insert(u.as_str()) {
                return Err(InstanceError::DuplicateUser(u.clone()));
            }
        }
        let mut ids = BTreeSet::new();
        for p in &packets {
            if !valid_id(&p.id) {
                return Err(InstanceError::InvalidId(p.id.clone()));
            }
            if !ids.insert(p.id.as_str()) {
                return Err(InstanceError::DuplicatePacket(p.id.clone()));
            }
            if p.weight == 0 {
                return Err(InstanceError::ZeroWeight(p.id.clone()));
            }
            for &u in std::iter::once(&p.demand).chain(p.side.iter()) {
                if u >= users.len() {
                    return Err(InstanceError::UnknownUser {
                        packet: p.id.clone(),
                        user: format!("#{u}"),
                    });
                }
            }
            if p.side.contains(&p.demand) {
                return Err(InstanceError::DemandInSide {
                    packet: p.id.clone(),
                    user: users[p.demand].clone(),
                });
            }
        }
        for (i, a) in packets.iter().enumerate() {
            if let Some(b) = packets[..i].iter().find(|b| b.demand == a.demand && b.side == a.side) {
                return Err(InstanceError::DuplicateType {
                    first: b.id.clone(),
                    second: a.id.clone(),
                });
            }
        }
        Ok(Self { users, packets })
    }

    pub fn users(&self) -> &[String] {
        &self.users
    }

    pub fn packets(&self) -> &[PacketType] {
        &self.packets
    }

    pub fn num_users(&self) -> usize {
        self.users.len()
    }

    pub fn num_packets(&self) -> usize {
        self.packets.len()
    }

    pub fn packet(&self, m: PacketIndex) -> &PacketType {
        &self.packets[m]
    }

    pub fn user_index(&self, name: &str) -> Option<UserIndex> {
        self.users.iter().position(|u| u == name)
    }

    pub fn packet_index(&self, id: &str) -> Option<PacketIndex> {
        self.packets.iter().position(|p| p.id == id)
    }

    /// Whether user `u` holds packet type `m` as side information.
    pub fn holds(&self, u: UserIndex, m: PacketIndex) -> bool {
        self.packets[m].side.contains(&u)
    }

    /// Packet types held by `u`, in index order.
    pub fn held_by(&self, u: UserIndex) -> impl Iterator<Item = PacketIndex> + '_ {
        self.packets
            .iter()
            .enumerate()
            .filter(move |(_, p)| p.side.contains(&u))
            .map(|(m, _)| m)
    }

    /// Packet types demanded by `u`, in index order.
    pub fn demanded_by(&self, u: UserIndex) -> impl Iterator<Item = PacketIndex> + '_ {
        self.packets
            .iter()
            .enumerate()
            .filter(move |(_, p)| p.demand == u)
            .map(|(m, _)| m)
    }

    /// Total packet count `W`, the sum of all packet-type weights.
    pub fn total_weight(&self) -> u64 {
        self.packets.iter().map(|p| p.weight).sum()
    }

    /// Every packet type is held by exactly one user.
    pub fn is_uniprior(&self) -> bool {
        self.packets.iter().all(|p| p.side.len() == 1)
    }

    /// Every packet type is held by at most one user.
    pub fn is_uniprior_lenient(&self) -> bool {
        self.packets.iter().all(|p| p.side.len() <= 1)
    }

    /// Number of arcs of the bipartite digraph (side-information plus demand arcs).
    pub fn num_arcs(&self) -> usize {
        self.packets.iter().map(|p| 1 + p.side.len()).sum()
    }

    pub fn build_split_digraph(&self) -> SplitDigraph {
        SplitDigraph::new(self)
    }
}

/// Free-function form of [`Instance::total_weight`].
pub fn total_weight(inst: &Instance) -> u64 {
    inst.total_weight()
}

/// Free-function form of [`Instance::is_uniprior`] (strict reading).
pub fn is_uniprior(inst: &Instance) -> bool {
    inst.is_uniprior()
}

pub fn build_split_digraph(inst: &Instance) -> SplitDigraph {
    SplitDigraph::new(inst)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn packet(id: &str, weight: u64, demand: usize, side: &[usize]) -> PacketType {
        PacketType {
            id: id.to_string(),
            weight,
            demand,
            side: side.iter().copied().collect(),
        }
    }

    pub fn users(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("u{i}")).collect()
    }
}
