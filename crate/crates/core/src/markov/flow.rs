//! Dinic max-flow on small unit-ish networks.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: u64,
}

#[derive(Debug, Clone)]
pub(crate) struct Network {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    level: Vec<i64>,
    it: Vec<usize>,
}

impl Network {
    pub fn new(n: usize) -> Self {
        Network {
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            level: vec![0; n],
            it: vec![0; n],
        }
    }

    /// Returns the edge id; its reverse is `id ^ 1`.
    pub fn add_edge(&mut self, a: usize, b: usize, cap: u64) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to: b, cap });
        self.edges.push(Edge { to: a, cap: 0 });
        self.adj[a].push(id);
        self.adj[b].push(id + 1);
        id
    }

    pub fn flow_on(&self, id: usize) -> u64 {
        self.edges[id ^ 1].cap
    }

    pub fn raise_cap(&mut self, id: usize, extra: u64) {
        self.edges[id].cap += extra;
    }

    pub fn head(&self, id: usize) -> usize {
        self.edges[id].to
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.adj[u] {
                let v = self.edges[e].to;
                if self.edges[e].cap > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    /// One blocking-flow augmenting path, found iteratively.
    fn augment(&mut self, s: usize, t: usize) -> u64 {
        let mut path: Vec<usize> = Vec::new();
        let mut u = s;
        loop {
            if u == t {
                let f = path.iter().map(|&e| self.edges[e].cap).min().unwrap_or(0);
                for &e in &path {
                    self.edges[e].cap -= f;
                    self.edges[e ^ 1].cap += f;
                }
                return f;
            }
            let mut advanced = false;
            while self.it[u] < self.adj[u].len() {
                let e = self.adj[u][self.it[u]];
                let v = self.edges[e].to;
                if self.edges[e].cap > 0 && self.level[v] == self.level[u] + 1 {
                    path.push(e);
                    u = v;
                    advanced = true;
                    break;
                }
                self.it[u] += 1;
            }
            if !advanced {
                // dead end: retreat and skip the edge that led here
                self.level[u] = -1;
                match path.pop() {
                    None => return 0,
                    Some(e) => {
                        u = self.edges[e ^ 1].to;
                        self.it[u] += 1;
                    }
                }
            }
        }
    }

    /// Augments the current flow to a maximum one; returns the added amount.
    pub fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.it.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.augment(s, t);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
        total
    }

    pub fn out_edges(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[u].iter().copied().filter(|e| e % 2 == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond() {
        let mut g = Network::new(4);
        g.add_edge(0, 1, 2);
        g.add_edge(0, 2, 2);
        g.add_edge(1, 2, 1);
        g.add_edge(1, 3, 1);
        g.add_edge(2, 3, 3);
        assert_eq!(g.max_flow(0, 3), 4);
        assert_eq!(g.max_flow(0, 3), 0);
    }
}
