use super::Graph;
use crate::error::{Error, Result};

/// An induced subgraph together with the ids it came from.
#[derive(Debug, Clone)]
pub struct Component {
    pub graph: Graph,
    /// `original[new_id]` is the node's id in the input graph.
    pub original: Vec<usize>,
}

impl Component {
    pub fn shrank(&self, from: &Graph) -> bool {
        self.graph.node_count() < from.node_count()
    }
}

/// Induced subgraph on the largest connected component, ids remapped to
/// `0..n'` preserving relative order. Ties between equally large components
/// go to the one containing the smallest node id.
pub fn largest_connected_component(g: &Graph) -> Result<Component> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut seen = vec![false; n];
    let mut best: Vec<usize> = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let comp = g.reachable_from(s);
        for &x in &comp {
            seen[x] = true;
        }
        if comp.len() > best.len() {
            best = comp;
        }
    }
    best.sort_unstable();

    let mut new_id = vec![usize::MAX; n];
    for (i, &old) in best.iter().enumerate() {
        new_id[old] = i;
    }
    let mut sub = Graph::empty(best.len());
    for e in g.edges() {
        if new_id[e.u] != usize::MAX {
            sub.add_edge(new_id[e.u], new_id[e.v], e.w)?;
        }
    }
    Ok(Component {
        graph: sub,
        original: best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_input_is_unchanged() {
        let k3 = Graph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let c = largest_connected_component(&k3).unwrap();
        assert_eq!(c.graph, k3);
        assert_eq!(c.original, vec![0, 1, 2]);
        assert!(!c.shrank(&k3));
    }

    #[test]
    fn picks_the_path() {
        // {0-1}, {2-3}, 4-5-6
        let g = Graph::from_edges(
            7,
            [(0, 1, 1.0), (2, 3, 1.0), (4, 5, 1.0), (5, 6, 2.0)],
        )
        .unwrap();
        let c = largest_connected_component(&g).unwrap();
        assert_eq!(c.graph.node_count(), 3);
        assert_eq!(c.graph.edge_count(), 2);
        assert_eq!(c.original, vec![4, 5, 6]);
        assert_eq!(c.graph.weight(1, 2), Some(2.0));
        assert!(c.shrank(&g));
    }

    #[test]
    fn empty_graph_errors() {
        assert!(matches!(
            largest_connected_component(&Graph::empty(0)),
            Err(Error::EmptyGraph)
        ));
    }
}
