//! Coloured Hasse diagrams.
//!
//! A diagram is a DAG whose vertices are *aggregates*: sets of variable
//! indices constrained to share one value. An edge `u -> v` means
//! `x_u >= x_v`. Two virtual indices close the unit box: `0` is pinned to the
//! value 0 (lower boundary) and `n + 1` to the value 1 (upper boundary).
//!
//! Vertices are identified by their smallest index, so iteration over a
//! diagram always visits vertices in ascending order of minimal index.

mod build;
mod contract;
pub(crate) mod dot;
mod reduce;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub use build::build_diagram;
pub use dot::diagram_to_dot;

/// Blocks with their colours, then edges between block ids.
pub type CanonicalKey = (Vec<(Vec<usize>, VertexColour)>, Vec<(usize, usize)>);

/// Partition of the variables `1..=n` into maximized (ascending) and
/// minimized (descending) objectives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    n: usize,
    // maximize[i - 1] is true when variable i is ascending.
    maximize: Vec<bool>,
}

impl Signature {
    /// Builds a signature from the ascending set; every other index in
    /// `1..=n` is descending.
    pub fn new(n: usize, ascending: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyProblem);
        }
        let mut maximize = vec![false; n];
        for i in ascending {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            maximize[i - 1] = true;
        }
        Ok(Signature { n, maximize })
    }

    /// Builds a signature from both index sets, checking they partition `1..=n`.
    pub fn from_sets(n: usize, ascending: &[usize], descending: &[usize]) -> Result<Self> {
        let sig = Signature::new(n, ascending.iter().copied())?;
        let mut seen = vec![false; n];
        for &i in ascending.iter().chain(descending) {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            if seen[i - 1] {
                return Err(Error::InvalidSignature {
                    n,
                    detail: format!("index {i} listed twice"),
                });
            }
            seen[i - 1] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidSignature {
                n,
                detail: format!("index {} is neither ascending nor descending", missing + 1),
            });
        }
        Ok(sig)
    }

    /// Bit `i - 1` of `mask` set means variable `i` is maximized.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > 64 {
            return Err(Error::Precondition(format!(
                "bitmask signatures support at most 64 variables, got {n}"
            )));
        }
        Signature::new(n, (1..=n).filter(|i| mask >> (i - 1) & 1 == 1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_ascending(&self, index: usize) -> bool {
        index >= 1 && index <= self.n && self.maximize[index - 1]
    }

    pub fn is_descending(&self, index: usize) -> bool {
        index >= 1 && index <= self.n && !self.maximize[index - 1]
    }

    pub fn ascending(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.maximize[i - 1]).collect()
    }

    pub fn descending(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| !self.maximize[i - 1]).collect()
    }

    /// Virtual index of the upper bound, `n + 1`.
    pub fn upper_index(&self) -> usize {
        self.n + 1
    }

    /// Colour implied by an index set under this signature.
    pub fn colour_of(&self, indices: &[usize]) -> Result<VertexColour> {
        let upper = self.upper_index();
        let has_lower = indices.contains(&0);
        let has_upper = indices.contains(&upper);
        match (has_lower, has_upper) {
            (true, true) => {
                return Err(Error::Contradiction(
                    "aggregate contains both the lower and the upper bound".into(),
                ))
            }
            (true, false) => return Ok(VertexColour::BoundaryLower),
            (false, true) => return Ok(VertexColour::BoundaryUpper),
            _ => {}
        }
        let mut asc = false;
        let mut desc = false;
        for &i in indices {
            if i > upper {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: self.n,
                });
            }
            if self.maximize[i - 1] {
                asc = true;
            } else {
                desc = true;
            }
        }
        match (asc, desc) {
            (true, true) => Ok(VertexColour::TradeOff),
            (true, false) => Ok(VertexColour::Ascending),
            (false, true) => Ok(VertexColour::Descending),
            (false, false) => Err(Error::Contradiction("empty aggregate".into())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexColour {
    Ascending,
    Descending,
    TradeOff,
    BoundaryLower,
    BoundaryUpper,
}

impl VertexColour {
    pub fn is_monochrome(self) -> bool {
        matches!(self, VertexColour::Ascending | VertexColour::Descending)
    }

    pub fn is_boundary(self) -> bool {
        matches!(
            self,
            VertexColour::BoundaryLower | VertexColour::BoundaryUpper
        )
    }

    /// The colour of the opposite objective, for monochromatic colours.
    pub fn opposite(self) -> Option<VertexColour> {
        match self {
            VertexColour::Ascending => Some(VertexColour::Descending),
            VertexColour::Descending => Some(VertexColour::Ascending),
            _ => None,
        }
    }
}

/// Colour of the aggregate obtained by contracting two vertices.
pub fn merge_colour(a: VertexColour, b: VertexColour) -> Result<VertexColour> {
    use VertexColour::*;
    match (a, b) {
        (BoundaryLower, BoundaryUpper) | (BoundaryUpper, BoundaryLower) => Err(
            Error::Contradiction("cannot merge the lower and upper bounds".into()),
        ),
        (BoundaryLower, _) | (_, BoundaryLower) => Ok(BoundaryLower),
        (BoundaryUpper, _) | (_, BoundaryUpper) => Ok(BoundaryUpper),
        (Ascending, Ascending) => Ok(Ascending),
        (Descending, Descending) => Ok(Descending),
        _ => Ok(TradeOff),
    }
}

/// Stable vertex identifier: the smallest index contained in the aggregate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AggregateVertex {
    indices: Arc<[usize]>,
    colour: VertexColour,
}

impl AggregateVertex {
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn colour(&self) -> VertexColour {
        self.colour
    }

    pub fn id(&self) -> VertexId {
        VertexId(self.indices[0])
    }

    pub fn min_index(&self) -> usize {
        self.indices[0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum EdgeState {
    #[default]
    Free,
    Frozen,
}

impl EdgeState {
    pub fn is_frozen(self) -> bool {
        self == EdgeState::Frozen
    }

    /// Collapsing parallel edges never un-freezes.
    fn join(self, other: EdgeState) -> EdgeState {
        if self.is_frozen() || other.is_frozen() {
            EdgeState::Frozen
        } else {
            EdgeState::Free
        }
    }
}

/// Result of [`HasseDiagram::classify_vertex`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexClass {
    pub is_extremal: bool,
    pub aims_at: Vec<VertexId>,
    pub conflicts_with: Vec<VertexId>,
}

#[derive(Clone, Debug)]
pub struct HasseDiagram {
    signature: Arc<Signature>,
    vertices: BTreeMap<VertexId, AggregateVertex>,
    succ: BTreeMap<VertexId, BTreeMap<VertexId, EdgeState>>,
    pred: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl HasseDiagram {
    /// Builds a diagram from blocks of indices and index-level edges.
    ///
    /// Edges are mapped onto the blocks containing their endpoints; edges
    /// inside a block vanish and parallel edges are collapsed. The result is
    /// checked for cycles and transitively reduced. Blocks may cover only a
    /// subset of `0..=n+1` (sub-diagrams used by decomposition).
    pub(crate) fn from_blocks(
        signature: Arc<Signature>,
        blocks: Vec<Vec<usize>>,
        edges: impl IntoIterator<Item = (usize, usize, EdgeState)>,
    ) -> Result<HasseDiagram> {
        let mut owner: BTreeMap<usize, VertexId> = BTreeMap::new();
        let mut vertices = BTreeMap::new();
        for mut block in blocks {
            block.sort_unstable();
            block.dedup();
            if block.is_empty() {
                continue;
            }
            let colour = signature.colour_of(&block)?;
            let id = VertexId(block[0]);
            for &i in &block {
                if owner.insert(i, id).is_some() {
                    return Err(Error::Contradiction(format!(
                        "index {i} belongs to two aggregates"
                    )));
                }
            }
            vertices.insert(
                id,
                AggregateVertex {
                    indices: block.into(),
                    colour,
                },
            );
        }
        let mut diagram = HasseDiagram {
            signature,
            succ: vertices.keys().map(|&id| (id, BTreeMap::new())).collect(),
            pred: vertices.keys().map(|&id| (id, BTreeSet::new())).collect(),
            vertices,
        };
        for (a, b, state) in edges {
            let (Some(&u), Some(&v)) = (owner.get(&a), owner.get(&b)) else {
                return Err(Error::Contradiction(format!(
                    "edge {a} -> {b} references an index outside the diagram"
                )));
            };
            if u != v {
                diagram.insert_edge(u, v, state);
            }
        }
        diagram.topological_order()?;
        Ok(diagram.transitive_reduction())
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub(crate) fn signature_arc(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn n(&self) -> usize {
        self.signature.n()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.values().map(BTreeMap::len).sum()
    }

    pub fn vertex(&self, id: VertexId) -> Option<&AggregateVertex> {
        self.vertices.get(&id)
    }

    pub fn colour(&self, id: VertexId) -> VertexColour {
        self.vertices[&id].colour
    }

    /// Vertices in ascending order of minimal index.
    pub fn vertices(&self) -> impl Iterator<Item = &AggregateVertex> + '_ {
        self.vertices.values()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, EdgeState)> + '_ {
        self.succ
            .iter()
            .flat_map(|(&u, out)| out.iter().map(move |(&v, &s)| (u, v, s)))
    }

    pub fn successors(&self, id: VertexId) -> impl Iterator<Item = (VertexId, EdgeState)> + '_ {
        self.succ[&id].iter().map(|(&v, &s)| (v, s))
    }

    pub fn predecessors(&self, id: VertexId) -> impl Iterator<Item = (VertexId, EdgeState)> + '_ {
        self.pred[&id].iter().map(move |&u| (u, self.succ[&u][&id]))
    }

    pub fn edge_state(&self, from: VertexId, to: VertexId) -> Option<EdgeState> {
        self.succ.get(&from)?.get(&to).copied()
    }

    /// The vertex holding the virtual lower-bound index 0.
    pub fn lower(&self) -> Option<VertexId> {
        self.vertices
            .contains_key(&VertexId(0))
            .then_some(VertexId(0))
    }

    /// The vertex holding the virtual upper-bound index `n + 1`.
    pub fn upper(&self) -> Option<VertexId> {
        self.vertices
            .values()
            .find(|v| v.colour == VertexColour::BoundaryUpper)
            .map(AggregateVertex::id)
    }

    /// True when only trade-off and boundary vertices remain.
    pub fn is_terminal(&self) -> bool {
        self.vertices.values().all(|v| !v.colour.is_monochrome())
    }

    /// Edges through which `id` aims at its neighbours, as `(target, state)`.
    ///
    /// A descending vertex aims at its successors, an ascending vertex at its
    /// predecessors. Other colours aim at nothing.
    pub fn aim_edges(&self, id: VertexId) -> Vec<(VertexId, EdgeState)> {
        match self.colour(id) {
            VertexColour::Descending => self.successors(id).collect(),
            VertexColour::Ascending => self.predecessors(id).collect(),
            _ => Vec::new(),
        }
    }

    /// The oriented edge joining `id` with a vertex it aims at.
    pub fn aim_edge(&self, id: VertexId, target: VertexId) -> (VertexId, VertexId) {
        match self.colour(id) {
            VertexColour::Ascending => (target, id),
            _ => (id, target),
        }
    }

    pub fn classify_vertex(&self, id: VertexId) -> VertexClass {
        let colour = self.colour(id);
        if !colour.is_monochrome() {
            return VertexClass::default();
        }
        let opposite = colour.opposite();
        let aims_at: Vec<VertexId> = self.aim_edges(id).into_iter().map(|(t, _)| t).collect();
        let conflicts_with = aims_at
            .iter()
            .copied()
            .filter(|&t| Some(self.colour(t)) == opposite)
            .collect();
        let is_extremal = aims_at.iter().all(|&t| self.colour(t) != colour);
        VertexClass {
            is_extremal,
            aims_at,
            conflicts_with,
        }
    }

    /// Conflicting pairs `(descending, ascending)`: descending vertices
    /// pointing directly at ascending ones.
    pub fn conflict_edges(&self) -> Vec<(VertexId, VertexId)> {
        self.edges()
            .filter(|&(u, v, _)| {
                self.colour(u) == VertexColour::Descending
                    && self.colour(v) == VertexColour::Ascending
            })
            .map(|(u, v, _)| (u, v))
            .collect()
    }

    /// Marks an existing edge as frozen.
    pub fn freeze(&mut self, from: VertexId, to: VertexId) -> Result<()> {
        match self.succ.get_mut(&from).and_then(|out| out.get_mut(&to)) {
            Some(state) => {
                *state = EdgeState::Frozen;
                Ok(())
            }
            None => Err(Error::NoSuchEdge { from, to }),
        }
    }

    fn insert_edge(&mut self, from: VertexId, to: VertexId, state: EdgeState) {
        let slot = self
            .succ
            .get_mut(&from)
            .expect("edge source exists")
            .entry(to)
            .or_default();
        *slot = slot.join(state);
        self.pred
            .get_mut(&to)
            .expect("edge target exists")
            .insert(from);
    }

    fn remove_edge(&mut self, from: VertexId, to: VertexId) -> Option<EdgeState> {
        let state = self.succ.get_mut(&from)?.remove(&to)?;
        self.pred.get_mut(&to).map(|p| p.remove(&from));
        Some(state)
    }

    /// Kahn's algorithm; ties broken by vertex id. Fails on a cycle.
    pub(crate) fn topological_order(&self) -> Result<Vec<VertexId>> {
        let mut indegree: BTreeMap<VertexId, usize> =
            self.pred.iter().map(|(&v, p)| (v, p.len())).collect();
        let mut ready: BTreeSet<VertexId> = indegree
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&v, _)| v)
            .collect();
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &w in self.succ[&v].keys() {
                let d = indegree.get_mut(&w).expect("indegree entry");
                *d -= 1;
                if *d == 0 {
                    ready.insert(w);
                }
            }
        }
        if order.len() != self.vertices.len() {
            return Err(Error::Contradiction("order relation has a cycle".into()));
        }
        Ok(order)
    }

    /// Size of the id space (`n + 2`), used to size bitsets.
    pub(crate) fn id_space(&self) -> usize {
        self.signature.upper_index() + 1
    }

    /// Reflexive reachability: bit `w` of `reach[v]` is set when `v >= w`.
    pub(crate) fn reachability(&self) -> BTreeMap<VertexId, FixedBitSet> {
        let order = self
            .topological_order()
            .expect("diagram invariant: acyclic");
        let mut reach: BTreeMap<VertexId, FixedBitSet> = BTreeMap::new();
        for &v in order.iter().rev() {
            let mut bits = FixedBitSet::with_capacity(self.id_space());
            bits.insert(v.0);
            for &w in self.succ[&v].keys() {
                bits.union_with(&reach[&w]);
            }
            reach.insert(v, bits);
        }
        reach
    }

    /// Checks every structural invariant of a complete diagram.
    pub fn validate(&self) -> Result<()> {
        let upper_index = self.signature.upper_index();
        let mut seen = vec![false; upper_index + 1];
        for (&id, v) in &self.vertices {
            if v.indices.is_empty() || VertexId(v.indices[0]) != id {
                return Err(Error::Contradiction(format!(
                    "vertex {id} has a bad index set"
                )));
            }
            for &i in v.indices.iter() {
                if i > upper_index || seen[i] {
                    return Err(Error::Contradiction(format!(
                        "index {i} is repeated or out of range"
                    )));
                }
                seen[i] = true;
            }
            let expected = self.signature.colour_of(&v.indices)?;
            if expected != v.colour {
                return Err(Error::Contradiction(format!(
                    "vertex {id} coloured {:?}, indices imply {expected:?}",
                    v.colour
                )));
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::Contradiction(format!("index {i} is not covered")));
        }
        self.topological_order()?;
        let lower = self
            .lower()
            .ok_or_else(|| Error::Contradiction("missing lower bound".into()))?;
        let upper = self
            .upper()
            .ok_or_else(|| Error::Contradiction("missing upper bound".into()))?;
        if !self.pred[&upper].is_empty() {
            return Err(Error::Contradiction(
                "upper bound has an incoming edge".into(),
            ));
        }
        if !self.succ[&lower].is_empty() {
            return Err(Error::Contradiction(
                "lower bound has an outgoing edge".into(),
            ));
        }
        let reach = self.reachability();
        for &id in self.vertices.keys() {
            if !reach[&upper].contains(id.0) || !reach[&id].contains(lower.0) {
                return Err(Error::Contradiction(format!(
                    "vertex {id} is not on a path between the bounds"
                )));
            }
        }
        Ok(())
    }

    /// Canonical key: partition with colours and the edge set without
    /// frozen flags.
    pub fn canonical_key(&self) -> CanonicalKey {
        let vertices = self
            .vertices
            .values()
            .map(|v| (v.indices.to_vec(), v.colour))
            .collect();
        let edges = self.edges().map(|(u, v, _)| (u.0, v.0)).collect();
        (vertices, edges)
    }
}

impl PartialEq for HasseDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature
            && self.vertices == other.vertices
            && self
                .edges()
                .map(|(u, v, _)| (u, v))
                .eq(other.edges().map(|(u, v, _)| (u, v)))
    }
}

impl Eq for HasseDiagram {}

impl Hash for HasseDiagram {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical_key().hash(state);
    }
}
