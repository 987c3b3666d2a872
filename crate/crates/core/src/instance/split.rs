use super::{Instance, PacketIndex, UserIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitVertex {
    User(UserIndex),
    PacketIn(PacketIndex),
    PacketOut(PacketIndex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitArcKind {
    /// `p_in -> p_out`, weighted by the packet weight.
    PacketToPacket(PacketIndex),
    /// `u -> p_in`: the user holds the packet.
    UserToPacket { user: UserIndex, packet: PacketIndex },
    /// `p_out -> u`: the user demands the packet.
    PacketToUser { packet: PacketIndex, user: UserIndex },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitArc {
    pub tail: usize,
    pub head: usize,
    pub weight: u64,
    pub kind: SplitArcKind,
}

/// Arc-weighted digraph obtained by replacing every packet vertex with an
/// `in`/`out` pair joined by an arc carrying the packet weight.
///
/// Vertex numbering: users first (`0..N`), then `N + 2m` for `p_m^in` and
/// `N + 2m + 1` for `p_m^out`. Arcs are ordered packet-to-packet (by
/// packet), then user-to-packet, then packet-to-user. User-to-packet and
/// packet-to-user arcs get the heavy weight `1 + W`, which exceeds the sum
/// of all packet-to-packet weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitDigraph {
    vertices: Vec<SplitVertex>,
    arcs: Vec<SplitArc>,
    heavy_weight: u64,
}

impl SplitDigraph {
    pub fn new(inst: &Instance) -> Self {
        let n = inst.num_users();
        let heavy_weight = 1 + inst.total_weight();
        let mut vertices: Vec<SplitVertex> = (0..n).map(SplitVertex::User).collect();
        for m in 0..inst.num_packets() {
            vertices.push(SplitVertex::PacketIn(m));
            vertices.push(SplitVertex::PacketOut(m));
        }
        let p_in = |m: PacketIndex| n + 2 * m;
        let p_out = |m: PacketIndex| n + 2 * m + 1;

        let mut arcs = Vec::new();
        for (m, p) in inst.packets().iter().enumerate() {
            arcs.push(SplitArc {
                tail: p_in(m),
                head: p_out(m),
                weight: p.weight,
                kind: SplitArcKind::PacketToPacket(m),
            });
        }
        for (m, p) in inst.packets().iter().enumerate() {
            for &u in &p.side {
                arcs.push(SplitArc {
                    tail: u,
                    head: p_in(m),
                    weight: heavy_weight,
                    kind: SplitArcKind::UserToPacket { user: u, packet: m },
                });
            }
        }
        for (m, p) in inst.packets().iter().enumerate() {
            arcs.push(SplitArc {
                tail: p_out(m),
                head: p.demand,
                weight: heavy_weight,
                kind: SplitArcKind::PacketToUser {
                    packet: m,
                    user: p.demand,
                },
            });
        }
        Self {
            vertices,
            arcs,
            heavy_weight,
        }
    }

    pub fn vertices(&self) -> &[SplitVertex] {
        &self.vertices
    }

    pub fn arcs(&self) -> &[SplitArc] {
        &self.arcs
    }

    pub fn heavy_weight(&self) -> u64 {
        self.heavy_weight
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Outgoing arc indices per vertex.
    pub fn out_arcs(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, a) in self.arcs.iter().enumerate() {
            out[a.tail].push(i);
        }
        out
    }

    pub fn packet_arcs(&self) -> impl Iterator<Item = (usize, &SplitArc)> {
        self.arcs
            .iter()
            .enumerate()
            .filter(|(_, a)| matches!(a.kind, SplitArcKind::PacketToPacket(_)))
    }

    pub fn count_by_kind(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for a in &self.arcs {
            match a.kind {
                SplitArcKind::PacketToPacket(_) => counts.0 += 1,
                SplitArcKind::UserToPacket { .. } => counts.1 += 1,
                SplitArcKind::PacketToUser { .. } => counts.2 += 1,
            }
        }
        counts
    }
}
