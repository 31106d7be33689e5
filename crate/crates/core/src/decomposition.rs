//! Product-form representation of the front.
//!
//! Conflicts (descending vertices pointing at ascending ones) are resolved
//! first, giving a few diagrams `H_u`. In each of them the monotone
//! connected components only meet through trade-off and boundary vertices,
//! so every component is solved on its own. A face of `H_u` is then one
//! leaf per component, concatenated by merging aggregates that share
//! variables.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hasse::{EdgeState, HasseDiagram, Signature, VertexId};
use crate::solver::engine::{explore, Policy, StopAt, Strategy};
use crate::solver::{dedupe_and_prune, face_from_terminal, Algorithm, ParetoFace, SolveOptions};

/// The conflicting vertices of a diagram.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InterfaceSet {
    pub vertices: BTreeSet<VertexId>,
}

impl InterfaceSet {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, id: VertexId) -> bool {
        self.vertices.contains(&id)
    }
}

/// Endpoints of every edge from a descending to an ascending vertex.
pub fn compute_interface(diagram: &HasseDiagram) -> InterfaceSet {
    InterfaceSet {
        vertices: diagram
            .conflict_edges()
            .into_iter()
            .flat_map(|(d, a)| [d, a])
            .collect(),
    }
}

fn strategy(policy: Policy, stop: StopAt) -> Strategy {
    Strategy {
        algorithm: Algorithm::Improved,
        policy,
        stop,
    }
}

/// Contracts with the improved rules, conflicting vertices first, until no
/// descending vertex points at an ascending one. Returns the distinct
/// resulting diagrams in exploration order.
pub fn resolve_interface(diagram: &HasseDiagram) -> Result<Vec<HasseDiagram>> {
    let options = SolveOptions::lean(Algorithm::Improved);
    let exploration = explore(
        diagram.clone(),
        None,
        0,
        strategy(Policy::InterfaceFirst, StopAt::NoConflicts),
        &options,
    )?;
    let mut seen = HashSet::new();
    Ok(exploration
        .leaves
        .into_iter()
        .filter(|d| seen.insert(d.canonical_key()))
        .collect())
}

/// One monotone connected component of an interface resolution together
/// with its solved leaves.
#[derive(Clone, Debug)]
pub struct ComponentSolution {
    /// `(u, v)`: resolution index and component index.
    pub id: (usize, usize),
    /// Vertices of the resolved diagram forming the component.
    pub members: Vec<VertexId>,
    /// The component with the trade-off vertices it aims at and the bounds.
    pub subdiagram: HasseDiagram,
    /// Terminal diagrams of the component.
    pub leaves: Vec<HasseDiagram>,
}

impl ComponentSolution {
    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }
}

/// A resolved diagram `H_u` and its components.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub diagram: HasseDiagram,
    pub components: Vec<ComponentSolution>,
}

impl Resolution {
    /// Number of faces before removing duplicates across resolutions.
    pub fn face_count(&self) -> u128 {
        self.components
            .iter()
            .map(|c| c.leaves.len() as u128)
            .product()
    }
}

#[derive(Clone, Debug)]
pub struct ProductFront {
    signature: Arc<Signature>,
    pub resolutions: Vec<Resolution>,
}

#[derive(Clone, Debug, Default)]
pub struct DecompositionOptions {
    /// Fail when a monotone component has more vertices than this.
    pub component_bound: Option<usize>,
    /// Solve components on the rayon pool.
    pub parallel: bool,
}

/// Monotone connected components: vertices linked by edges between two
/// vertices of the same monochromatic colour. Sorted by smallest id.
fn monotone_components(diagram: &HasseDiagram) -> Vec<Vec<VertexId>> {
    let ids: Vec<VertexId> = diagram
        .vertices()
        .filter(|v| v.colour().is_monochrome())
        .map(|v| v.id())
        .collect();
    let position: BTreeMap<VertexId, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut sets = UnionFind::<usize>::new(ids.len());
    for (u, v, _) in diagram.edges() {
        if let (Some(&a), Some(&b)) = (position.get(&u), position.get(&v)) {
            if diagram.colour(u) == diagram.colour(v) {
                sets.union(a, b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for (i, &v) in ids.iter().enumerate() {
        groups.entry(sets.find(i)).or_default().push(v);
    }
    let mut out: Vec<Vec<VertexId>> = groups.into_values().collect();
    out.sort();
    out
}

/// The component, the non-monochromatic vertices it aims at and both bounds,
/// ordered by the restriction of the order of `diagram`.
fn component_subdiagram(diagram: &HasseDiagram, members: &[VertexId]) -> Result<HasseDiagram> {
    let mut keep: BTreeSet<VertexId> = members.iter().copied().collect();
    for &m in members {
        for (t, _) in diagram.aim_edges(m) {
            if !diagram.colour(t).is_monochrome() {
                keep.insert(t);
            }
        }
    }
    keep.extend(diagram.lower());
    keep.extend(diagram.upper());
    let reach = diagram.reachability();
    let blocks: Vec<Vec<usize>> = keep
        .iter()
        .map(|&v| {
            diagram
                .vertex(v)
                .expect("kept vertex exists")
                .indices()
                .to_vec()
        })
        .collect();
    let mut edges = Vec::new();
    for &u in &keep {
        for &v in &keep {
            if u != v && reach[&u].contains(v.0) {
                let state = diagram.edge_state(u, v).unwrap_or_default();
                edges.push((u.0, v.0, state));
            }
        }
    }
    HasseDiagram::from_blocks(diagram.signature_arc().clone(), blocks, edges)
}

fn solve_component(subdiagram: &HasseDiagram) -> Result<Vec<HasseDiagram>> {
    let options = SolveOptions::lean(Algorithm::Improved);
    let exploration = explore(
        subdiagram.clone(),
        None,
        0,
        strategy(Policy::Standard, StopAt::Terminal),
        &options,
    )?;
    Ok(exploration.leaves)
}

pub fn solve_by_decomposition(diagram: &HasseDiagram) -> Result<ProductFront> {
    solve_by_decomposition_with(diagram, &DecompositionOptions::default())
}

pub fn solve_by_decomposition_with(
    diagram: &HasseDiagram,
    options: &DecompositionOptions,
) -> Result<ProductFront> {
    let mut resolutions = Vec::new();
    for (u, resolved) in resolve_interface(diagram)?.into_iter().enumerate() {
        let groups = monotone_components(&resolved);
        if let Some(bound) = options.component_bound {
            if let Some(big) = groups.iter().map(Vec::len).find(|&len| len > bound) {
                return Err(Error::ComponentTooLarge { size: big, bound });
            }
        }
        let solve_one = |(v, members): (usize, Vec<VertexId>)| -> Result<ComponentSolution> {
            let subdiagram = component_subdiagram(&resolved, &members)?;
            let leaves = solve_component(&subdiagram)?;
            Ok(ComponentSolution {
                id: (u, v),
                members,
                subdiagram,
                leaves,
            })
        };
        let components: Vec<ComponentSolution> = if options.parallel {
            groups
                .into_par_iter()
                .enumerate()
                .map(solve_one)
                .collect::<Result<_>>()?
        } else {
            groups
                .into_iter()
                .enumerate()
                .map(solve_one)
                .collect::<Result<_>>()?
        };
        resolutions.push(Resolution {
            diagram: resolved,
            components,
        });
    }
    Ok(ProductFront {
        signature: diagram.signature_arc().clone(),
        resolutions,
    })
}

fn blocks_of(diagram: &HasseDiagram) -> impl Iterator<Item = &[usize]> + '_ {
    diagram.vertices().map(|v| v.indices())
}

/// Concatenation: merges the aggregates of `base` with those of the chosen
/// leaves wherever they share variables, keeping the order of `base`.
///
/// Merges made in one component can order trade-off vertices of another
/// one; aggregates forced equal that way (a cycle) are merged as well, so
/// the result describes the intersection of the chosen leaves.
pub fn concatenate(base: &HasseDiagram, leaves: &[&HasseDiagram]) -> Result<HasseDiagram> {
    let size = base.signature().upper_index() + 1;
    let mut sets = UnionFind::<usize>::new(size);
    for block in blocks_of(base).chain(leaves.iter().flat_map(|l| blocks_of(l))) {
        for pair in block.windows(2) {
            sets.union(pair[0], pair[1]);
        }
    }
    let mut graph = DiGraph::<usize, ()>::new();
    let nodes: Vec<_> = (0..size).map(|i| graph.add_node(i)).collect();
    for (u, v, _) in base.edges() {
        graph.add_edge(nodes[sets.find(u.0)], nodes[sets.find(v.0)], ());
    }
    for scc in tarjan_scc(&graph) {
        for pair in scc.windows(2) {
            sets.union(graph[pair[0]], graph[pair[1]]);
        }
    }
    let mut grouped: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..size {
        grouped.entry(sets.find(i)).or_default().push(i);
    }
    let edges = base.edges().map(|(u, v, _)| (u.0, v.0, EdgeState::Free));
    HasseDiagram::from_blocks(
        base.signature_arc().clone(),
        grouped.into_values().collect(),
        edges,
    )
}

impl ProductFront {
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Total number of stored component leaves: the size of the product
    /// representation.
    pub fn product_size(&self) -> usize {
        self.resolutions
            .iter()
            .flat_map(|r| &r.components)
            .map(ComponentSolution::leaf_count)
            .sum()
    }

    /// Number of faces the product expands to, counting repeats across
    /// resolutions.
    pub fn face_count(&self) -> u128 {
        self.resolutions.iter().map(Resolution::face_count).sum()
    }

    /// Materializes every face, sorted, without repeats and without faces
    /// contained in other faces.
    pub fn expand(&self) -> Result<Vec<ParetoFace>> {
        let mut faces = BTreeSet::new();
        for resolution in &self.resolutions {
            let comps = &resolution.components;
            if comps.iter().any(|c| c.leaves.is_empty()) {
                continue;
            }
            let mut choice = vec![0usize; comps.len()];
            loop {
                let leaves: Vec<&HasseDiagram> = comps
                    .iter()
                    .zip(&choice)
                    .map(|(c, &w)| &c.leaves[w])
                    .collect();
                let merged = concatenate(&resolution.diagram, &leaves)?;
                faces.insert(face_from_terminal(&merged)?);
                // odometer over the product of leaf indices
                let mut pos = 0;
                while pos < comps.len() {
                    choice[pos] += 1;
                    if choice[pos] < comps[pos].leaves.len() {
                        break;
                    }
                    choice[pos] = 0;
                    pos += 1;
                }
                if pos == comps.len() {
                    break;
                }
            }
        }
        let faces: Vec<ParetoFace> = faces.into_iter().collect();
        Ok(dedupe_and_prune(&faces))
    }

    pub fn to_json(&self) -> String {
        let record = ProductRecord {
            product_size: self.product_size(),
            face_count: self.face_count().to_string(),
            resolutions: self
                .resolutions
                .iter()
                .map(|r| ResolutionRecord {
                    aggregates: partition(&r.diagram),
                    components: r
                        .components
                        .iter()
                        .map(|c| ComponentRecord {
                            id: [c.id.0, c.id.1],
                            variables: c
                                .members
                                .iter()
                                .flat_map(|&m| {
                                    r.diagram
                                        .vertex(m)
                                        .expect("member exists")
                                        .indices()
                                        .to_vec()
                                })
                                .collect(),
                            leaves: c.leaves.iter().map(partition).collect(),
                        })
                        .collect(),
                })
                .collect(),
        };
        let mut text = serde_json::to_string_pretty(&record).expect("record serializes");
        text.push('\n');
        text
    }
}

/// Aggregates over real variables, virtual bounds dropped.
fn partition(diagram: &HasseDiagram) -> Vec<Vec<usize>> {
    let upper = diagram.signature().upper_index();
    diagram
        .vertices()
        .map(|v| {
            v.indices()
                .iter()
                .copied()
                .filter(|&i| i != 0 && i != upper)
                .collect::<Vec<_>>()
        })
        .filter(|b| !b.is_empty())
        .collect()
}

#[derive(Serialize)]
struct ProductRecord {
    product_size: usize,
    face_count: String,
    resolutions: Vec<ResolutionRecord>,
}

#[derive(Serialize)]
struct ResolutionRecord {
    aggregates: Vec<Vec<usize>>,
    components: Vec<ComponentRecord>,
}

#[derive(Serialize)]
struct ComponentRecord {
    id: [usize; 2],
    variables: Vec<usize>,
    leaves: Vec<Vec<Vec<usize>>>,
}
