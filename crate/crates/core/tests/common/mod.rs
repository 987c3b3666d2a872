//! Independent oracles shared by the integration tests. None of them uses
//! the simplex solver, the cycle enumerator or the planarity routine.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use icdual_core::instance::{Instance, PacketType};
use icdual_core::lp::{LinearProgram, Rational, Sense};
use itertools::Itertools;
use num_traits::{One, Zero};

pub fn packet(id: &str, weight: u64, demand: usize, side: &[usize]) -> PacketType {
    PacketType {
        id: id.into(),
        weight,
        demand,
        side: side.iter().copied().collect(),
    }
}

pub fn users(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{i}")).collect()
}

/// Three users, three packets, two cycles; planar.
pub fn planar3() -> Instance {
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

/// Every user holds both packets it does not demand; underlying graph K3,3.
pub fn k33() -> Instance {
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

/// Whether the packets in `kept` induce a cycle in the bipartite digraph.
pub fn has_cycle(inst: &Instance, kept: u32) -> bool {
    let n = inst.num_users();
    let total = n + inst.num_packets();
    let mut adj = vec![Vec::new(); total];
    for (m, p) in inst.packets().iter().enumerate() {
        if kept >> m & 1 == 0 {
            continue;
        }
        adj[n + m].push(p.demand);
        for &u in &p.side {
            adj[u].push(n + m);
        }
    }
    // 0 = new, 1 = on stack, 2 = done
    fn visit(v: usize, adj: &[Vec<usize>], state: &mut [u8]) -> bool {
        state[v] = 1;
        for &w in &adj[v] {
            if state[w] == 1 || (state[w] == 0 && visit(w, adj, state)) {
                return true;
            }
        }
        state[v] = 2;
        false
    }
    let mut state = vec![0u8; total];
    (0..total).any(|v| state[v] == 0 && visit(v, &adj, &mut state))
}

/// Heaviest packet subset inducing an acyclic subgraph, over all 2^M masks.
pub fn brute_force_max_acyclic(inst: &Instance) -> u64 {
    let m = inst.num_packets();
    (0u32..1 << m)
        .filter(|&mask| !has_cycle(inst, mask))
        .map(|mask| {
            (0..m)
                .filter(|&j| mask >> j & 1 == 1)
                .map(|j| inst.packet(j).weight)
                .sum()
        })
        .max()
        .unwrap_or(0)
}

fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        let inv = Rational::one() / &a[col][col];
        for v in &mut a[col][col..] {
            *v = &*v * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (dst, v) in a[r][col..].iter_mut().zip(&pivot[col..]) {
                    *dst -= &f * v;
                }
                let v = &f * &b[col];
                b[r] -= v;
            }
        }
    }
    Some(b)
}

/// Optimum over all basic feasible points: every choice of `n` tight
/// hyperplanes among the rows and bounds. Assumes the optimum is attained
/// at a vertex (pointed, bounded in the optimizing direction).
pub fn vertex_optimum(lp: &LinearProgram) -> Option<Rational> {
    let n = lp.num_vars();
    let mut planes: Vec<(Vec<Rational>, Rational)> = lp
        .constraints
        .iter()
        .map(|c| (c.coeffs.clone(), c.rhs.clone()))
        .collect();
    for (j, v) in lp.variables.iter().enumerate() {
        for b in [&v.lower, &v.upper].into_iter().flatten() {
            let mut e = vec![Rational::zero(); n];
            e[j] = Rational::one();
            planes.push((e, b.clone()));
        }
    }
    let mut best: Option<Rational> = None;
    for pick in (0..planes.len()).combinations(n) {
        let a = pick.iter().map(|&i| planes[i].0.clone()).collect();
        let b = pick.iter().map(|&i| planes[i].1.clone()).collect();
        let Some(x) = solve_square(a, b) else { continue };
        if !lp.is_feasible(&x) {
            continue;
        }
        let v = lp.objective_value(&x);
        best = Some(match best {
            None => v,
            Some(cur) => match lp.sense {
                Sense::Maximize => cur.max(v),
                Sense::Minimize => cur.min(v),
            },
        });
    }
    best
}

type Edges = BTreeSet<(usize, usize)>;

fn normalize(edges: &Edges) -> Edges {
    let verts: BTreeSet<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let idx: HashMap<usize, usize> = verts.into_iter().enumerate().map(|(i, v)| (v, i)).collect();
    edges
        .iter()
        .map(|&(a, b)| (idx[&a].min(idx[&b]), idx[&a].max(idx[&b])))
        .collect()
}

fn is_k5_or_k33(edges: &Edges) -> bool {
    let verts: BTreeSet<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let deg = |v: usize| edges.iter().filter(|&&(a, b)| a == v || b == v).count();
    match (verts.len(), edges.len()) {
        (5, 10) => true,
        (6, 9) => {
            if !verts.iter().all(|&v| deg(v) == 3) {
                return false;
            }
            // cubic on 6 vertices with 9 edges: K3,3 iff bipartite
            let mut side = HashMap::new();
            let first = *verts.iter().next().unwrap();
            side.insert(first, false);
            let mut stack = vec![first];
            while let Some(v) = stack.pop() {
                for &(a, b) in edges {
                    let w = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    let s = !side[&v];
                    match side.get(&w) {
                        Some(&t) if t != s => return false,
                        Some(_) => {}
                        None => {
                            side.insert(w, s);
                            stack.push(w);
                        }
                    }
                }
            }
            side.len() == 6
        }
        _ => false,
    }
}

fn has_minor(edges: Edges, memo: &mut HashMap<Edges, bool>) -> bool {
    let edges = normalize(&edges);
    if edges.len() < 9 {
        return false;
    }
    if let Some(&r) = memo.get(&edges) {
        return r;
    }
    let found = is_k5_or_k33(&edges)
        || edges.iter().any(|&e| {
            let mut deleted = edges.clone();
            deleted.remove(&e);
            if has_minor(deleted, memo) {
                return true;
            }
            // contract e: merge e.1 into e.0
            let contracted: Edges = edges
                .iter()
                .filter(|&&f| f != e)
                .map(|&(a, b)| {
                    let a = if a == e.1 { e.0 } else { a };
                    let b = if b == e.1 { e.0 } else { b };
                    (a.min(b), a.max(b))
                })
                .filter(|&(a, b)| a != b)
                .collect();
            has_minor(contracted, memo)
        });
    memo.insert(edges, found);
    found
}

/// Planarity by Wagner's criterion: search every minor for K5 or K3,3.
/// Exponential; meant for graphs with a handful of vertices.
pub fn planar_by_minors(edges: &[(usize, usize)]) -> bool {
    let set: Edges = edges
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .filter(|(a, b)| a != b)
        .collect();
    !has_minor(set, &mut HashMap::new())
}
