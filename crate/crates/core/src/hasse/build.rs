use std::sync::Arc;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::{EdgeState, HasseDiagram, Signature};
use crate::error::{Error, Result};

/// Builds the initial diagram of a problem.
///
/// `constraints` holds pairs `(i, j)` meaning `x_i >= x_j`. Variables on a
/// common cycle are equal and are condensed into one aggregate. The two
/// bounds are attached above every source and below every sink.
pub fn build_diagram(signature: Signature, constraints: &[(usize, usize)]) -> Result<HasseDiagram> {
    let n = signature.n();
    for &(i, j) in constraints {
        for index in [i, j] {
            if index == 0 || index > n {
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
    }

    let mut graph = DiGraph::<usize, ()>::with_capacity(n, constraints.len());
    let nodes: Vec<_> = (1..=n).map(|i| graph.add_node(i)).collect();
    for &(i, j) in constraints {
        graph.add_edge(nodes[i - 1], nodes[j - 1], ());
    }
    let mut blocks: Vec<Vec<usize>> = tarjan_scc(&graph)
        .into_iter()
        .map(|scc| scc.into_iter().map(|node| graph[node]).collect())
        .collect();
    let upper = signature.upper_index();
    blocks.push(vec![0]);
    blocks.push(vec![upper]);

    let edges = constraints
        .iter()
        .map(|&(i, j)| (i, j, EdgeState::Free))
        .chain((1..=n).flat_map(|i| [(upper, i, EdgeState::Free), (i, 0, EdgeState::Free)]))
        .chain(std::iter::once((upper, 0, EdgeState::Free)));

    HasseDiagram::from_blocks(Arc::new(signature), blocks, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hasse::{VertexColour, VertexId};

    fn edge_list(d: &HasseDiagram) -> Vec<(usize, usize)> {
        d.edges().map(|(u, v, _)| (u.0, v.0)).collect()
    }

    #[test]
    fn single_variable() {
        let d = build_diagram(Signature::new(1, [1]).unwrap(), &[]).unwrap();
        d.validate().unwrap();
        assert_eq!(d.vertex_count(), 3);
        assert_eq!(edge_list(&d), vec![(1, 0), (2, 1)]);
        assert_eq!(d.colour(VertexId(1)), VertexColour::Ascending);
        assert_eq!(d.upper(), Some(VertexId(2)));
    }

    #[test]
    fn cycle_is_condensed() {
        let d = build_diagram(Signature::new(2, [1, 2]).unwrap(), &[(1, 2), (2, 1)]).unwrap();
        d.validate().unwrap();
        assert_eq!(d.vertex_count(), 3);
        let agg = d.vertex(VertexId(1)).unwrap();
        assert_eq!(agg.indices(), &[1, 2]);
        assert_eq!(agg.colour(), VertexColour::Ascending);
        assert_eq!(edge_list(&d), vec![(1, 0), (3, 1)]);
    }

    #[test]
    fn mixed_cycle_yields_trade_off() {
        let d = build_diagram(Signature::new(2, [1]).unwrap(), &[(1, 2), (2, 1)]).unwrap();
        assert_eq!(d.colour(VertexId(1)), VertexColour::TradeOff);
    }

    #[test]
    fn coloured_chain() {
        let d = build_diagram(Signature::new(3, [2]).unwrap(), &[(1, 2), (2, 3)]).unwrap();
        d.validate().unwrap();
        assert_eq!(edge_list(&d), vec![(1, 2), (2, 3), (3, 0), (4, 1)]);
        let colours: Vec<_> = (1..=3).map(|i| d.colour(VertexId(i))).collect();
        assert_eq!(
            colours,
            vec![
                VertexColour::Descending,
                VertexColour::Ascending,
                VertexColour::Descending
            ]
        );
    }

    #[test]
    fn rejects_out_of_range_index() {
        let err = build_diagram(Signature::new(2, []).unwrap(), &[(1, 3)]).unwrap_err();
        assert_eq!(err, Error::IndexOutOfRange { index: 3, n: 2 });
        assert!(build_diagram(Signature::new(2, []).unwrap(), &[(0, 1)]).is_err());
    }
}
