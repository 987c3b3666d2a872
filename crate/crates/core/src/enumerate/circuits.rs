//! Elementary circuit enumeration (Johnson, 1975) on a plain adjacency list.

/// Stops enumeration once more than `cap` circuits were found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapHit {
    pub found: usize,
}

struct Search<'a> {
    adj: &'a [Vec<usize>],
    in_component: Vec<bool>,
    blocked: Vec<bool>,
    block_map: Vec<Vec<usize>>,
    stack: Vec<usize>,
    start: usize,
    out: Vec<Vec<usize>>,
    cap: Option<usize>,
}

impl Search<'_> {
    fn unblock(&mut self, v: usize) {
        let mut pending = vec![v];
        while let Some(u) = pending.pop() {
            if !self.blocked[u] {
                continue;
            }
            self.blocked[u] = false;
            pending.append(&mut self.block_map[u]);
        }
    }

    fn circuit(&mut self, v: usize) -> Result<bool, CapHit> {
        let mut closed = false;
        self.stack.push(v);
        self.blocked[v] = true;
        let adj = self.adj;
        for &w in &adj[v] {
            if !self.in_component[w] {
                continue;
            }
            if w == self.start {
                self.out.push(self.stack.clone());
                if let Some(cap) = self.cap {
                    if self.out.len() > cap {
                        return Err(CapHit { found: self.out.len() });
                    }
                }
                closed = true;
            } else if !self.blocked[w] && self.circuit(w)? {
                closed = true;
            }
        }
        if closed {
            self.unblock(v);
        } else {
            for &w in &adj[v] {
                if self.in_component[w] && !self.block_map[w].contains(&v) {
                    self.block_map[w].push(v);
                }
            }
        }
        self.stack.pop();
        Ok(closed)
    }
}

/// Vertices `>= start` that lie on a common strongly connected component
/// with `start` in the subgraph induced by `start..n`.
fn component_of(adj: &[Vec<usize>], start: usize) -> Vec<bool> {
    let n = adj.len();
    let mut radj = vec![Vec::new(); n];
    for (v, ws) in adj.iter().enumerate().skip(start) {
        for &w in ws {
            if w >= start {
                radj[w].push(v);
            }
        }
    }
    let reach = |g: &[Vec<usize>]| {
        let mut seen = vec![false; n];
        let mut todo = vec![start];
        seen[start] = true;
        while let Some(v) = todo.pop() {
            for &w in &g[v] {
                if w >= start && !seen[w] {
                    seen[w] = true;
                    todo.push(w);
                }
            }
        }
        seen
    };
    let fwd = reach(adj);
    let bwd = reach(&radj);
    fwd.iter().zip(&bwd).map(|(a, b)| *a && *b).collect()
}

/// Every elementary circuit of the digraph, each reported once as the
/// vertex sequence starting at its smallest vertex.
pub fn elementary_circuits(adj: &[Vec<usize>], cap: Option<usize>) -> Result<Vec<Vec<usize>>, CapHit> {
    let n = adj.len();
    let mut out = Vec::new();
    for start in 0..n {
        let in_component = component_of(adj, start);
        if in_component.iter().filter(|&&b| b).count() < 2 && !adj[start].contains(&start) {
            continue;
        }
        let mut search = Search {
            adj,
            in_component,
            blocked: vec![false; n],
            block_map: vec![Vec::new(); n],
            stack: Vec::new(),
            start,
            out: std::mem::take(&mut out),
            cap,
        };
        let res = search.circuit(start);
        out = search.out;
        res?;
    }
    Ok(out)
}
