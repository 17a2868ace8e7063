//! Edmonds-Karp maximum flow over exact rationals.

use std::collections::VecDeque;

use num_traits::Zero;

use crate::rational::Rational;

pub(crate) struct FlowNetwork {
    n: usize,
    residual: Vec<Rational>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            n,
            residual: vec![Rational::zero(); n * n],
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, capacity: Rational) {
        self.residual[from * self.n + to] += capacity;
    }

    pub fn residual(&self, from: usize, to: usize) -> &Rational {
        &self.residual[from * self.n + to]
    }

    /// Saturates the network and returns the flow value.
    pub fn max_flow(&mut self, source: usize, sink: usize) -> Rational {
        let mut total = Rational::zero();
        while let Some(parent) = self.augmenting_path(source, sink) {
            let mut bottleneck: Option<Rational> = None;
            let mut v = sink;
            while v != source {
                let u = parent[v];
                let r = &self.residual[u * self.n + v];
                if bottleneck.as_ref().is_none_or(|b| r < b) {
                    bottleneck = Some(r.clone());
                }
                v = u;
            }
            let b = bottleneck.expect("path has at least one edge");
            let mut v = sink;
            while v != source {
                let u = parent[v];
                self.residual[u * self.n + v] -= &b;
                self.residual[v * self.n + u] += &b;
                v = u;
            }
            total += b;
        }
        total
    }

    fn augmenting_path(&self, source: usize, sink: usize) -> Option<Vec<usize>> {
        let reach = self.bfs(source);
        reach[sink]?;
        Some(reach.into_iter().map(|p| p.unwrap_or(usize::MAX)).collect())
    }

    /// Nodes reachable from `source` in the residual graph.
    pub fn reachable(&self, source: usize) -> Vec<bool> {
        self.bfs(source).into_iter().map(|p| p.is_some()).collect()
    }

    fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.n];
        parent[source] = Some(source);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for v in 0..self.n {
                if parent[v].is_none() && !self.residual[u * self.n + v].is_zero() {
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        parent
    }
}
