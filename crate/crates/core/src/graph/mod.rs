//! Undirected, positively weighted, simple graphs with contiguous node ids.

mod components;
mod generators;
mod io;

use std::collections::HashMap;

pub use components::{largest_connected_component, Component};
pub use generators::{generate_ba, generate_ws};
pub use io::{
    format_edge_list, load_edge_list, parse_edge_list, write_edge_list, IdMap, LoadedGraph,
};

use crate::error::{Error, Result};

/// One undirected edge, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

/// The incidence vector `b = e_head - e_tail` of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EdgeVector {
    pub head: usize,
    pub tail: usize,
}

impl EdgeVector {
    pub fn new(head: usize, tail: usize) -> Result<Self> {
        if head == tail {
            return Err(Error::InvalidEdge {
                u: head,
                v: tail,
                reason: "endpoints coincide".into(),
            });
        }
        Ok(Self { head, tail })
    }

    pub fn touches(&self, node: usize) -> bool {
        self.head == node || self.tail == node
    }

    /// `b^T x`.
    pub fn dot(&self, x: &[f64]) -> f64 {
        x[self.head] - x[self.tail]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, f64)>>,
    index: HashMap<(usize, usize), usize>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// A graph on `n` isolated nodes.
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            index: HashMap::new(),
        }
    }

    /// Build a graph from `(u, v, w)` triples, rejecting anything that would
    /// violate the simple-graph invariants.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut g = Self::empty(n);
        for (u, v, w) in edges {
            g.add_edge(u, v, w)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize, w: f64) -> Result<()> {
        let invalid = |reason: &str| Error::InvalidEdge {
            u,
            v,
            reason: reason.to_string(),
        };
        if u >= self.n || v >= self.n {
            return Err(Error::NodeOutOfRange {
                node: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(invalid("self-loop"));
        }
        if !(w > 0.0 && w.is_finite()) {
            return Err(invalid("weight must be positive and finite"));
        }
        let k = key(u, v);
        if self.index.contains_key(&k) {
            return Err(invalid("duplicate edge"));
        }
        self.index.insert(k, self.edges.len());
        self.edges.push(Edge { u: k.0, v: k.1, w });
        self.adjacency[u].push((v, w));
        self.adjacency[v].push((u, w));
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn weighted_degree(&self, v: usize) -> f64 {
        self.adjacency[v].iter().map(|&(_, w)| w).sum()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.index.contains_key(&key(u, v))
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<f64> {
        self.index.get(&key(u, v)).map(|&i| self.edges[i].w)
    }

    /// Largest edge weight, `w_max`. Zero for an edgeless graph.
    pub fn max_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).fold(0.0, f64::max)
    }

    pub fn check_node(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: v, n: self.n })
        }
    }

    /// Nodes reachable from `start`, in BFS order.
    pub fn reachable_from(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut order = vec![start];
        seen[start] = true;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &(y, _) in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
        order
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.reachable_from(0).len() == self.n
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.n == 0 {
            Err(Error::EmptyGraph)
        } else if !self.is_connected() {
            Err(Error::Disconnected)
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invariant_violations() {
        let mut g = Graph::empty(3);
        assert!(g.add_edge(0, 0, 1.0).is_err());
        assert!(g.add_edge(0, 1, 0.0).is_err());
        assert!(g.add_edge(0, 1, -2.0).is_err());
        assert!(g.add_edge(0, 1, f64::NAN).is_err());
        assert!(g.add_edge(0, 3, 1.0).is_err());
        g.add_edge(1, 0, 2.0).unwrap();
        assert!(g.add_edge(0, 1, 1.0).is_err());
        assert_eq!(g.edges()[0], Edge { u: 0, v: 1, w: 2.0 });
        assert_eq!(g.weight(1, 0), Some(2.0));
    }

    #[test]
    fn connectivity() {
        let g = Graph::from_edges(3, [(0, 1, 1.0)]).unwrap();
        assert!(!g.is_connected());
        assert!(matches!(g.require_connected(), Err(Error::Disconnected)));
        let g = Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert!(g.is_connected());
        assert!(matches!(Graph::empty(0).require_connected(), Err(Error::EmptyGraph)));
    }

    #[test]
    fn edge_vector_dot() {
        let b = EdgeVector::new(2, 0).unwrap();
        assert_eq!(b.dot(&[1.0, 5.0, 4.0]), 3.0);
        assert!(EdgeVector::new(1, 1).is_err());
    }
}
