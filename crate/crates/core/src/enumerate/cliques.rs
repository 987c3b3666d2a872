use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use super::{Cycle, EnumerationError, SUBSET_LIMIT};
use crate::instance::{Instance, PacketIndex};

/// A packet subset together with the largest `d` such that every user
/// demanding one of its packets holds at least `d` of them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PartialClique {
    packets: Vec<PacketIndex>,
    d: usize,
}

impl PartialClique {
    /// Computes the maximal `d` for `packets` (sorted and deduplicated).
    pub fn new(inst: &Instance, packets: &[PacketIndex]) -> Self {
        let packets: Vec<_> = packets.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let d = clique_degree(inst, &packets);
        Self { packets, d }
    }

    /// Same subset with a smaller `d` than the maximal one. `None` if `d`
    /// exceeds the maximal degree or leaves no transmission.
    pub fn with_degree(inst: &Instance, packets: &[PacketIndex], d: usize) -> Option<Self> {
        let c = Self::new(inst, packets);
        (d <= c.d && d < c.k()).then_some(Self { d, ..c })
    }

    pub fn packets(&self) -> &[PacketIndex] {
        &self.packets
    }

    pub fn k(&self) -> usize {
        self.packets.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Transmissions needed to clear one unit of every packet.
    pub fn cost(&self) -> usize {
        self.k() - self.d
    }

    pub fn contains(&self, m: PacketIndex) -> bool {
        self.packets.binary_search(&m).is_ok()
    }
}

/// Minimum, over users demanding a packet of `packets`, of how many of
/// `packets` that user holds. Zero for an empty subset.
pub fn clique_degree(inst: &Instance, packets: &[PacketIndex]) -> usize {
    packets
        .iter()
        .map(|&m| inst.packet(m).demand)
        .map(|u| packets.iter().filter(|&&q| inst.holds(u, q)).count())
        .min()
        .unwrap_or(0)
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// One clique per non-empty packet subset of size `<= max_k`, with its
/// maximal `d`. Ordered by size, then lexicographically.
pub fn enumerate_partial_cliques(
    inst: &Instance,
    max_k: Option<usize>,
) -> Result<Vec<PartialClique>, EnumerationError> {
    let m = inst.num_packets();
    let top = max_k.unwrap_or(m).min(m);
    let subsets: u128 = (1..=top).map(|k| binomial(m, k)).sum();
    if subsets > SUBSET_LIMIT {
        return Err(EnumerationError::TooManySubsets {
            subsets,
            limit: SUBSET_LIMIT,
        });
    }
    let mut out = Vec::with_capacity(subsets as usize);
    for k in 1..=top {
        for combo in (0..m).combinations(k) {
            let d = clique_degree(inst, &combo);
            out.push(PartialClique { packets: combo, d });
        }
    }
    Ok(out)
}

/// Splits a clique of a uniprior instance into `d` packet-disjoint cycles by
/// repeatedly walking along outgoing arcs until a user repeats.
pub fn extract_cycles_from_clique(clique: &PartialClique, inst: &Instance) -> Result<Vec<Cycle>, EnumerationError> {
    if !inst.is_uniprior_lenient() {
        return Err(EnumerationError::NotUniprior);
    }
    let mut remaining: BTreeSet<PacketIndex> = clique.packets.iter().copied().collect();
    let mut cycles = Vec::with_capacity(clique.d);
    for _ in 0..clique.d {
        let first = *remaining
            .iter()
            .next()
            .ok_or_else(|| EnumerationError::WalkStuck("<empty clique>".into()))?;
        let mut user = inst.packet(first).demand;
        // users visited, and the packet taken out of each
        let mut walk: Vec<(usize, PacketIndex)> = Vec::new();
        let cycle = loop {
            if let Some(pos) = walk.iter().position(|&(u, _)| u == user) {
                // walk[j] = (u_j, q_j): u_j holds q_j, whose demander is u_{j+1}
                break walk[pos..].iter().map(|&(_, q)| q).collect::<Vec<_>>();
            }
            let next = remaining
                .iter()
                .copied()
                .find(|&q| inst.holds(user, q))
                .ok_or_else(|| EnumerationError::WalkStuck(inst.users()[user].clone()))?;
            walk.push((user, next));
            user = inst.packet(next).demand;
        };
        let c =
            Cycle::from_packets(inst, &cycle).ok_or_else(|| EnumerationError::WalkStuck(inst.users()[user].clone()))?;
        for m in c.packets() {
            remaining.remove(m);
        }
        cycles.push(c);
    }
    Ok(cycles)
}
