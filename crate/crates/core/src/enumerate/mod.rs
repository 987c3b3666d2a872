//! Structural objects indexing the programs and coding actions: directed
//! cycles of the bipartite digraph (and of its packet split digraph), and
//! `(k, d)`-partial cliques.

mod circuits;
mod cliques;

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::instance::{Instance, PacketIndex, SplitArcKind, SplitDigraph, UserIndex};

pub use circuits::elementary_circuits;
pub use cliques::{clique_degree, enumerate_partial_cliques, extract_cycles_from_clique, PartialClique};

pub const DEFAULT_MAX_CYCLES: usize = 100_000;
pub const DEFAULT_MAX_K: usize = 12;
/// Upper limit on subsets visited by partial clique enumeration.
pub const SUBSET_LIMIT: u128 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("cycle enumeration exceeded the cap of {cap} cycles ({found} found so far)")]
    CycleCapExceeded { cap: usize, found: usize },
    #[error("partial clique enumeration would visit {subsets} packet subsets (limit {limit}); lower max_k")]
    TooManySubsets { subsets: u128, limit: u128 },
    #[error("cycle extraction needs every packet held by at most one user")]
    NotUniprior,
    #[error("walk inside the clique got stuck at user {0}")]
    WalkStuck(String),
}

/// A directed cycle of the bipartite digraph.
///
/// `packets[j]` is demanded by `users[j]`, who holds `packets[j + 1]`
/// (indices mod `K`). The rotation puts the smallest packet index first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Cycle {
    packets: Vec<PacketIndex>,
    users: Vec<UserIndex>,
}

impl Cycle {
    /// Builds a cycle from its packet order, deriving the interleaved users.
    /// Returns `None` if the sequence is not a cycle of `inst`.
    pub fn from_packets(inst: &Instance, packets: &[PacketIndex]) -> Option<Self> {
        if packets.is_empty() {
            return None;
        }
        let k = packets.len();
        let start = (0..k).min_by_key(|&i| packets[i])?;
        let packets: Vec<_> = (0..k).map(|i| packets[(start + i) % k]).collect();
        let users: Vec<_> = packets.iter().map(|&m| inst.packet(m).demand).collect();
        let cycle = Self { packets, users };
        cycle.is_valid(inst).then_some(cycle)
    }

    pub fn packets(&self) -> &[PacketIndex] {
        &self.packets
    }

    pub fn users(&self) -> &[UserIndex] {
        &self.users
    }

    /// Number of packet vertices on the cycle.
    pub fn len(&self) -> usize {
        self.packets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.packets.is_empty()
    }

    pub fn contains(&self, m: PacketIndex) -> bool {
        self.packets.contains(&m)
    }

    pub fn sorted_packets(&self) -> Vec<PacketIndex> {
        let mut s = self.packets.clone();
        s.sort_unstable();
        s
    }

    /// Checks arc membership and distinctness against the instance.
    pub fn is_valid(&self, inst: &Instance) -> bool {
        let k = self.packets.len();
        if k < 2 || self.users.len() != k {
            return false;
        }
        let distinct = |xs: &[usize]| {
            let mut s = xs.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        };
        if !distinct(&self.packets) || !distinct(&self.users) {
            return false;
        }
        if self.packets.iter().any(|&m| m >= inst.num_packets()) {
            return false;
        }
        (0..k).all(|j| {
            let u = self.users[j];
            inst.packet(self.packets[j]).demand == u && inst.holds(u, self.packets[(j + 1) % k])
        })
    }

    pub fn describe(&self, inst: &Instance) -> String {
        let mut s = String::new();
        for (j, &m) in self.packets.iter().enumerate() {
            s.push_str(&inst.packet(m).id);
            s.push_str(" -> ");
            s.push_str(&inst.users()[self.users[j]]);
            s.push_str(" -> ");
        }
        s.push_str(&inst.packet(self.packets[0]).id);
        s
    }
}

/// Adjacency of the bipartite digraph: users `0..N`, packets `N..N+M`.
pub fn bipartite_adjacency(inst: &Instance) -> Vec<Vec<usize>> {
    let n = inst.num_users();
    let mut adj = vec![Vec::new(); n + inst.num_packets()];
    for (m, p) in inst.packets().iter().enumerate() {
        adj[n + m].push(p.demand);
        for &u in &p.side {
            adj[u].push(n + m);
        }
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    adj
}

fn sort_key(c: &Cycle) -> (Vec<PacketIndex>, Vec<PacketIndex>) {
    (c.sorted_packets(), c.packets.clone())
}

/// Every elementary directed cycle of the bipartite digraph, once up to
/// rotation, ordered by sorted packet set and then by packet sequence.
pub fn enumerate_cycles(inst: &Instance, max_cycles: Option<usize>) -> Result<Vec<Cycle>, EnumerationError> {
    let n = inst.num_users();
    let adj = bipartite_adjacency(inst);
    let raw = elementary_circuits(&adj, max_cycles).map_err(|hit| EnumerationError::CycleCapExceeded {
        cap: max_cycles.unwrap_or(usize::MAX),
        found: hit.found,
    })?;
    let mut cycles: Vec<Cycle> = raw
        .into_iter()
        .map(|seq| {
            let packets: Vec<_> = seq.iter().filter(|&&v| v >= n).map(|&v| v - n).collect();
            Cycle::from_packets(inst, &packets).expect("enumerated circuit is a cycle of the instance")
        })
        .collect();
    cycles.sort_by_cached_key(sort_key);
    Ok(cycles)
}

/// A cycle of the packet split digraph, as its arcs in traversal order
/// starting from the arc with the smallest index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SplitCycle {
    pub arcs: Vec<usize>,
}

impl SplitCycle {
    pub fn contains(&self, arc: usize) -> bool {
        self.arcs.contains(&arc)
    }

    /// Packet sequence of the corresponding cycle of the bipartite digraph.
    pub fn packets(&self, g: &SplitDigraph) -> Vec<PacketIndex> {
        self.arcs
            .iter()
            .filter_map(|&a| match g.arcs()[a].kind {
                SplitArcKind::PacketToPacket(m) => Some(m),
                _ => None,
            })
            .collect()
    }
}

pub fn enumerate_split_cycles(
    g: &SplitDigraph,
    max_cycles: Option<usize>,
) -> Result<Vec<SplitCycle>, EnumerationError> {
    let mut adj = vec![Vec::new(); g.num_vertices()];
    let mut arc_of = HashMap::new();
    for (i, a) in g.arcs().iter().enumerate() {
        adj[a.tail].push(a.head);
        arc_of.insert((a.tail, a.head), i);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let raw = elementary_circuits(&adj, max_cycles).map_err(|hit| EnumerationError::CycleCapExceeded {
        cap: max_cycles.unwrap_or(usize::MAX),
        found: hit.found,
    })?;
    let mut cycles: Vec<SplitCycle> = raw
        .into_iter()
        .map(|seq| {
            let k = seq.len();
            let mut arcs: Vec<usize> = (0..k).map(|i| arc_of[&(seq[i], seq[(i + 1) % k])]).collect();
            let start = (0..k).min_by_key(|&i| arcs[i]).unwrap_or(0);
            arcs.rotate_left(start);
            SplitCycle { arcs }
        })
        .collect();
    cycles.sort_by(|a, b| {
        let (mut sa, mut sb) = (a.arcs.clone(), b.arcs.clone());
        sa.sort_unstable();
        sb.sort_unstable();
        (sa, &a.arcs).cmp(&(sb, &b.arcs))
    });
    Ok(cycles)
}
