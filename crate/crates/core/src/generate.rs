//! Instance generators for property tests and experiments.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::instance::{Instance, PacketType, UserIndex};

fn user_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{i}")).collect()
}

fn build(n: usize, types: Vec<(UserIndex, BTreeSet<UserIndex>, u64)>) -> Instance {
    let packets = types
        .into_iter()
        .enumerate()
        .map(|(i, (demand, side, weight))| PacketType {
            id: format!("p{}", i + 1),
            weight,
            demand,
            side,
        })
        .collect();
    Instance::new(user_names(n), packets).expect("generator emits valid instances")
}

/// Draws a size in `2..=max`, or 1 when `max` is 1.
fn size<R: Rng>(rng: &mut R, max: usize) -> usize {
    rng.random_range(2.min(max)..=max)
}

/// Random unicast instance with up to `max_users` users, up to
/// `max_packets` distinct packet types and weights in `1..=max_weight`.
/// Side information density is drawn per instance. Packets whose type
/// repeats are redrawn a few times, then dropped.
pub fn random_unicast<R: Rng>(rng: &mut R, max_users: usize, max_packets: usize, max_weight: u64) -> Instance {
    let n = size(rng, max_users);
    let m = size(rng, max_packets);
    let density = rng.random_range(0.3..0.9);
    random_types(rng, n, m, max_weight, |rng, demand| {
        (0..n).filter(|&u| u != demand && rng.random_bool(density)).collect()
    })
}

/// Random instance where every packet is held by at most one user.
pub fn random_uniprior<R: Rng>(rng: &mut R, max_users: usize, max_packets: usize, max_weight: u64) -> Instance {
    let n = size(rng, max_users);
    let m = size(rng, max_packets);
    random_types(rng, n, m, max_weight, |rng, demand| {
        let others: Vec<UserIndex> = (0..n).filter(|&u| u != demand).collect();
        match others.choose(rng) {
            Some(&u) if rng.random_bool(0.85) => BTreeSet::from([u]),
            _ => BTreeSet::new(),
        }
    })
}

fn random_types<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    max_weight: u64,
    mut side: impl FnMut(&mut R, UserIndex) -> BTreeSet<UserIndex>,
) -> Instance {
    let mut seen = HashSet::new();
    let mut types = Vec::new();
    for _ in 0..m {
        for _ in 0..8 {
            let demand = rng.random_range(0..n);
            let s = side(rng, demand);
            if seen.insert((demand, s.clone())) {
                types.push((demand, s, rng.random_range(1..=max_weight)));
                break;
            }
        }
    }
    build(n, types)
}

fn crosses(a: (usize, usize), b: (usize, usize)) -> bool {
    let (a0, a1) = (a.0.min(a.1), a.0.max(a.1));
    let (b0, b1) = (b.0.min(b.1), b.0.max(b.1));
    if a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1 {
        return false;
    }
    (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1)
}

/// Random planar unicast instance. Users and packets sit on a circle,
/// alternating while both remain, and every arc is a chord that crosses no
/// earlier chord, so the drawing is outerplanar. Demand arcs are placed
/// first; a packet left without a non-crossing demander is dropped.
pub fn random_planar<R: Rng>(rng: &mut R, max_users: usize, max_packets: usize, max_weight: u64) -> Instance {
    let n = size(rng, max_users);
    let m = size(rng, max_packets);
    let density = rng.random_range(0.5..1.0);
    // circle positions: users interleaved with packets
    let mut order: Vec<(bool, usize)> = Vec::new();
    for i in 0..n.max(m) {
        if i < n {
            order.push((true, i));
        }
        if i < m {
            order.push((false, i));
        }
    }
    let pos_user: Vec<usize> = (0..n)
        .map(|u| order.iter().position(|&v| v == (true, u)).unwrap())
        .collect();
    let pos_packet: Vec<usize> = (0..m)
        .map(|p| order.iter().position(|&v| v == (false, p)).unwrap())
        .collect();

    let mut chords: Vec<(usize, usize)> = Vec::new();
    let free = |chords: &[(usize, usize)], c: (usize, usize)| chords.iter().all(|&d| !crosses(c, d));

    let mut demand: Vec<Option<UserIndex>> = vec![None; m];
    let mut packets: Vec<usize> = (0..m).collect();
    packets.shuffle(rng);
    for &p in &packets {
        let mut users: Vec<UserIndex> = (0..n).collect();
        users.shuffle(rng);
        if let Some(&u) = users.iter().find(|&&u| free(&chords, (pos_user[u], pos_packet[p]))) {
            chords.push((pos_user[u], pos_packet[p]));
            demand[p] = Some(u);
        }
    }
    let mut side: Vec<BTreeSet<UserIndex>> = vec![BTreeSet::new(); m];
    let mut candidates: Vec<(usize, UserIndex)> = (0..m).cartesian_product(0..n).collect();
    candidates.shuffle(rng);
    for (p, u) in candidates {
        let Some(d) = demand[p] else { continue };
        if d == u || !rng.random_bool(density) {
            continue;
        }
        let c = (pos_user[u], pos_packet[p]);
        if free(&chords, c) {
            chords.push(c);
            side[p].insert(u);
        }
    }
    let mut seen = HashSet::new();
    let types = (0..m)
        .filter_map(|p| demand[p].map(|d| (d, side[p].clone())))
        .filter(|t| seen.insert(t.clone()))
        .map(|(d, s)| (d, s, rng.random_range(1..=max_weight)))
        .collect();
    build(n, types)
}

/// Every unit-weight instance with `1..=max_users` users and
/// `1..=max_packets` packets, each held by at most one user, up to
/// relabelling users and packets.
pub fn all_small_uniprior(max_users: usize, max_packets: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for n in 1..=max_users {
        // a packet type is (demander, optional holder)
        let types: Vec<(usize, Option<usize>)> = (0..n)
            .flat_map(|d| std::iter::once((d, None)).chain((0..n).filter(move |&h| h != d).map(move |h| (d, Some(h)))))
            .collect();
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let mut canon = HashSet::new();
        for size in 1..=max_packets.min(types.len()) {
            for set in types.iter().copied().combinations(size) {
                let key = perms
                    .iter()
                    .map(|pi| {
                        let mut v: Vec<_> = set.iter().map(|&(d, h)| (pi[d], h.map(|h| pi[h]))).collect();
                        v.sort_unstable();
                        v
                    })
                    .min()
                    .unwrap();
                if canon.insert(key.clone()) {
                    out.push(build(
                        n,
                        key.into_iter().map(|(d, h)| (d, h.into_iter().collect(), 1)).collect(),
                    ));
                }
            }
        }
    }
    out
}
