use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use super::{HasseDiagram, VertexId};

impl HasseDiagram {
    /// Removes every free edge `u -> v` that is implied by a longer path.
    ///
    /// Frozen edges are kept even when redundant: they record a branching
    /// commitment rather than an order fact.
    pub fn transitive_reduction(&self) -> HasseDiagram {
        let reach = self.reachability();
        let mut reduced = self.clone();
        for (u, v, state) in self.edges() {
            if state.is_frozen() {
                continue;
            }
            let implied = self.succ[&u]
                .keys()
                .any(|&w| w != v && reach[&w].contains(v.0));
            if implied {
                reduced.remove_edge(u, v);
            }
        }
        reduced
    }

    /// Restores transitive reduction after `merged` was formed by a
    /// contraction, assuming the diagram was reduced before.
    ///
    /// Any new redundancy runs through `merged`. An edge `a -> b` away from
    /// `merged` is implied exactly when `a` reaches `merged` and `merged`
    /// reaches `b`; only edges at `merged` itself need a path search. In a DAG
    /// all implied edges can be dropped at once.
    pub(crate) fn reduce_around(&mut self, merged: VertexId) {
        let ancestors = self.closure_from(merged, |d, v| d.pred[&v].iter().copied().collect());
        let descendants = self.closure_from(merged, |d, v| d.succ[&v].keys().copied().collect());

        let mut redundant = Vec::new();
        for a in ancestors.ones().map(VertexId) {
            for (&b, state) in &self.succ[&a] {
                if state.is_frozen() || !descendants.contains(b.0) {
                    continue;
                }
                let implied = if a == merged || b == merged {
                    self.reaches_avoiding_edge(a, b)
                } else {
                    true
                };
                if implied {
                    redundant.push((a, b));
                }
            }
        }
        for (a, b) in redundant {
            self.remove_edge(a, b);
        }
    }

    /// Reflexive closure of `start` under `next`.
    fn closure_from(
        &self,
        start: VertexId,
        next: impl Fn(&HasseDiagram, VertexId) -> Vec<VertexId>,
    ) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.id_space());
        let mut stack = vec![start];
        seen.insert(start.0);
        while let Some(v) = stack.pop() {
            for w in next(self, v) {
                if !seen.put(w.0) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// True when `to` is reachable from `from` without the direct edge.
    pub(crate) fn reaches_avoiding_edge(&self, from: VertexId, to: VertexId) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.id_space());
        let mut stack: Vec<VertexId> = self.succ[&from]
            .keys()
            .copied()
            .filter(|&w| w != to)
            .collect();
        for w in &stack {
            seen.insert(w.0);
        }
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            for &w in self.succ[&v].keys() {
                if !seen.put(w.0) {
                    stack.push(w);
                }
            }
        }
        false
    }

    /// Whether `to` can be reached from `from` (reflexive).
    pub fn reaches(&self, from: VertexId, to: VertexId) -> bool {
        from == to
            || self
                .closure_from(from, |d, v| d.succ[&v].keys().copied().collect())
                .contains(to.0)
    }

    /// All ordered pairs `(u, v)` with `u != v` and a path `u -> ... -> v`.
    pub fn reachable_pairs(&self) -> BTreeSet<(VertexId, VertexId)> {
        let reach = self.reachability();
        reach
            .iter()
            .flat_map(|(&u, bits)| {
                bits.ones()
                    .map(VertexId)
                    .filter(move |&v| v != u)
                    .map(move |v| (u, v))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use crate::hasse::{EdgeState, HasseDiagram, Signature, VertexId};

    fn raw(n: usize, edges: &[(usize, usize, EdgeState)]) -> HasseDiagram {
        // build without reduction to exercise transitive_reduction directly
        let sig = Arc::new(Signature::new(n, []).unwrap());
        let mut d = HasseDiagram {
            signature: sig,
            vertices: Default::default(),
            succ: Default::default(),
            pred: Default::default(),
        };
        for i in 0..=n + 1 {
            let id = VertexId(i);
            d.vertices.insert(
                id,
                crate::hasse::AggregateVertex {
                    indices: vec![i].into(),
                    colour: d.signature.colour_of(&[i]).unwrap(),
                },
            );
            d.succ.insert(id, Default::default());
            d.pred.insert(id, Default::default());
        }
        for &(u, v, s) in edges {
            d.insert_edge(VertexId(u), VertexId(v), s);
        }
        d
    }

    fn pairs(d: &HasseDiagram) -> Vec<(usize, usize)> {
        d.edges().map(|(u, v, _)| (u.0, v.0)).collect()
    }

    #[test]
    fn removes_shortcut() {
        use EdgeState::Free;
        let d = raw(3, &[(1, 2, Free), (2, 3, Free), (1, 3, Free)]);
        assert_eq!(pairs(&d.transitive_reduction()), vec![(1, 2), (2, 3)]);
    }

    #[test]
    fn reduced_chain_is_fixed_point() {
        use EdgeState::Free;
        let d = raw(3, &[(4, 1, Free), (1, 2, Free), (2, 3, Free), (3, 0, Free)]);
        let r = d.transitive_reduction();
        assert_eq!(pairs(&r), pairs(&d));
        assert_eq!(pairs(&r.transitive_reduction()), pairs(&r));
    }

    #[test]
    fn frozen_shortcut_survives() {
        use EdgeState::{Free, Frozen};
        let d = raw(3, &[(1, 2, Free), (2, 3, Free), (1, 3, Frozen)]);
        let r = d.transitive_reduction();
        assert_eq!(pairs(&r), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(r.edge_state(VertexId(1), VertexId(3)), Some(Frozen));
    }
}
