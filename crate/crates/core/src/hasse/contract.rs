use std::collections::BTreeMap;

use super::{merge_colour, AggregateVertex, EdgeState, HasseDiagram, VertexId};
use crate::error::{Error, Result};

impl HasseDiagram {
    /// Contracts the free edge `from -> to` into a single aggregate.
    ///
    /// The merged vertex takes the union of both index sets and the
    /// [`merge_colour`] of both colours. Edges are redirected, parallel edges
    /// collapse (frozen wins) and the result is transitively reduced again.
    /// `self` is left untouched.
    pub fn contract_edge(&self, from: VertexId, to: VertexId) -> Result<HasseDiagram> {
        match self.edge_state(from, to) {
            None => return Err(Error::NoSuchEdge { from, to }),
            Some(EdgeState::Frozen) => return Err(Error::FrozenEdge { from, to }),
            Some(EdgeState::Free) => {}
        }
        if self.reaches_avoiding_edge(from, to) {
            return Err(Error::Contradiction(format!(
                "contracting {from} -> {to} would close a cycle"
            )));
        }

        let colour = merge_colour(self.colour(from), self.colour(to))?;
        let (keep, gone) = if from < to { (from, to) } else { (to, from) };

        let mut next = self.clone();
        next.remove_edge(from, to);
        let gone_vertex = next.vertices.remove(&gone).expect("endpoint exists");
        let gone_out: BTreeMap<VertexId, EdgeState> = next.succ.remove(&gone).unwrap_or_default();
        let gone_in = next.pred.remove(&gone).unwrap_or_default();

        let merged = next.vertices.get_mut(&keep).expect("endpoint exists");
        let mut indices = merged.indices.to_vec();
        indices.extend_from_slice(&gone_vertex.indices);
        indices.sort_unstable();
        debug_assert_eq!(next.signature.colour_of(&indices).ok(), Some(colour));
        *merged = AggregateVertex {
            indices: indices.into(),
            colour,
        };

        for (w, state) in gone_out {
            next.pred
                .get_mut(&w)
                .expect("successor exists")
                .remove(&gone);
            next.insert_edge(keep, w, state);
        }
        for u in gone_in {
            let state = next
                .succ
                .get_mut(&u)
                .and_then(|out| out.remove(&gone))
                .expect("predecessor edge exists");
            next.insert_edge(u, keep, state);
        }

        next.reduce_around(keep);
        Ok(next)
    }
}
