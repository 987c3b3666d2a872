use rustworkx_core::petgraph::graph::UnGraph;
use rustworkx_core::planar::is_planar as lr_is_planar;

use crate::instance::Instance;

/// Undirected bipartite graph under the instance: users `0..N`, packets
/// `N..N+M`, one edge per arc. Arc directions do not affect planarity.
pub fn underlying_edges(inst: &Instance) -> Vec<(usize, usize)> {
    let n = inst.num_users();
    let mut edges = Vec::new();
    for (m, p) in inst.packets().iter().enumerate() {
        edges.push((p.demand, n + m));
        edges.extend(p.side.iter().map(|&u| (u, n + m)));
    }
    edges
}

/// Planarity of the underlying undirected graph (left-right algorithm).
pub fn is_planar(inst: &Instance) -> bool {
    let mut g: UnGraph<(), ()> = UnGraph::default();
    let nodes: Vec<_> = (0..inst.num_users() + inst.num_packets())
        .map(|_| g.add_node(()))
        .collect();
    for (a, b) in underlying_edges(inst) {
        g.add_edge(nodes[a], nodes[b], ());
    }
    lr_is_planar(&g)
}
