//! Edmonds–Karp maximum flow with exact rational capacities on a dense
//! residual matrix. Networks here have at most a few dozen nodes.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use crate::rational::Rational;

pub(crate) struct FlowNetwork {
    capacity: Vec<Vec<Rational>>,
    residual: Vec<Vec<Rational>>,
}

impl FlowNetwork {
    pub(crate) fn new(nodes: usize) -> Self {
        let zero = vec![vec![Rational::zero(); nodes]; nodes];
        FlowNetwork {
            capacity: zero.clone(),
            residual: zero,
        }
    }

    pub(crate) fn add_edge(&mut self, from: usize, to: usize, cap: Rational) {
        self.capacity[from][to] += &cap;
        self.residual[from][to] += cap;
    }

    fn augmenting_path(&self, source: usize, sink: usize) -> Option<Vec<usize>> {
        let n = self.residual.len();
        let mut prev = vec![usize::MAX; n];
        prev[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if prev[v] == usize::MAX && self.residual[u][v].is_positive() {
                    prev[v] = u;
                    if v == sink {
                        let mut path = vec![sink];
                        let mut cur = sink;
                        while cur != source {
                            cur = prev[cur];
                            path.push(cur);
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// Runs to completion and returns the flow value.
    pub(crate) fn max_flow(&mut self, source: usize, sink: usize) -> Rational {
        let mut total = Rational::zero();
        while let Some(path) = self.augmenting_path(source, sink) {
            let bottleneck = path
                .windows(2)
                .map(|w| &self.residual[w[0]][w[1]])
                .min()
                .cloned()
                .expect("path has at least one edge");
            for w in path.windows(2) {
                self.residual[w[0]][w[1]] -= &bottleneck;
                self.residual[w[1]][w[0]] += &bottleneck;
            }
            total += bottleneck;
        }
        total
    }

    /// Net flow on an original edge after `max_flow`.
    pub(crate) fn flow(&self, from: usize, to: usize) -> Rational {
        let f = &self.capacity[from][to] - &self.residual[from][to];
        if f.is_negative() {
            Rational::zero()
        } else {
            f
        }
    }

    /// Nodes reachable from `source` in the residual graph (source side of a
    /// minimum cut once `max_flow` has run).
    pub(crate) fn reachable(&self, source: usize) -> Vec<bool> {
        let n = self.residual.len();
        let mut seen = vec![false; n];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if !seen[v] && self.residual[u][v].is_positive() {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn small_network() {
        let mut net = FlowNetwork::new(4);
        net.add_edge(0, 1, ratio(1, 2));
        net.add_edge(0, 2, ratio(1, 3));
        net.add_edge(1, 2, ratio(1, 1));
        net.add_edge(1, 3, ratio(1, 4));
        net.add_edge(2, 3, ratio(1, 2));
        assert_eq!(net.max_flow(0, 3), ratio(3, 4));
        let cut = net.reachable(0);
        assert!(cut[0] && !cut[3]);
    }
}
