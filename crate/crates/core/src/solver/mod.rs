//! Edge-contraction solvers.
//!
//! Both variants repeatedly pick an extremal vertex and branch over the
//! vertices it aims at, contracting one edge per branch, until only
//! trade-off and boundary vertices remain. Each terminal diagram
//! parameterizes a convex piece of the Pareto front.
//!
//! * [`solve_basic`] branches over every aimed vertex; its leaves can repeat
//!   or nest inside one another.
//! * [`solve_improved`] contracts single free edges first, orders branches
//!   conflicting-first then trade-off vertices, and freezes the edge of each
//!   earlier branch in the later ones. Its leaves are exactly the faces.

pub(crate) mod engine;
mod face;
mod tree;

use std::collections::HashSet;

use crate::error::Result;
use crate::hasse::{HasseDiagram, VertexId};

pub use face::{
    dedupe_and_prune, face_from_terminal, faces_from_json, faces_to_json, Aggregate, Binding,
    ParamId, ParetoFace,
};
pub use tree::{tree_to_dot, NodeId, ResolutionNode, ResolutionTree};

use engine::{explore, Policy, StopAt, Strategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Basic,
    Improved,
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub algorithm: Algorithm,
    /// Keep every node of the resolution tree. When false only the root
    /// is kept; statistics are still complete.
    pub retain_tree: bool,
    /// Explore sibling branches on the rayon pool. Output is identical
    /// either way.
    pub parallel: bool,
    /// Count resolution-tree nodes whose diagram already appeared elsewhere
    /// in the tree (hash-table check; implies a retained tree).
    pub detect_duplicates: bool,
    /// Fail with [`crate::Error::Stuck`] instead of pruning a branch in which
    /// an extremal vertex only has frozen aimed edges.
    pub strict_frozen: bool,
}

impl SolveOptions {
    pub fn new(algorithm: Algorithm) -> Self {
        SolveOptions {
            algorithm,
            retain_tree: true,
            parallel: false,
            detect_duplicates: false,
            strict_frozen: false,
        }
    }

    pub fn lean(algorithm: Algorithm) -> Self {
        SolveOptions {
            retain_tree: false,
            ..SolveOptions::new(algorithm)
        }
    }
}

/// One edge contraction, `from -> to`, in the parent diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Contraction {
    pub from: VertexId,
    pub to: VertexId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes: usize,
    pub branchings: usize,
    /// Number of terminal diagrams (with repeats, for the basic variant).
    pub leaves: usize,
    /// Number of faces returned.
    pub faces: usize,
    pub max_depth: usize,
    /// Branches pruned because an extremal vertex was left with frozen
    /// aimed edges only.
    pub stuck_branches: usize,
    /// Set when duplicate detection was requested.
    pub duplicate_nodes: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct FrontRepresentation {
    /// Faces in canonical order.
    pub faces: Vec<ParetoFace>,
    pub tree: ResolutionTree,
    pub stats: SolveStats,
}

impl FrontRepresentation {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn max_dimension(&self) -> usize {
        self.faces
            .iter()
            .map(ParetoFace::dimension)
            .max()
            .unwrap_or(0)
    }
}

pub fn solve(diagram: &HasseDiagram, options: &SolveOptions) -> Result<FrontRepresentation> {
    let strategy = Strategy {
        algorithm: options.algorithm,
        policy: Policy::Standard,
        stop: StopAt::Terminal,
    };
    let mut effective = options.clone();
    effective.retain_tree |= options.detect_duplicates;
    let exploration = explore(diagram.clone(), None, 0, strategy, &effective)?;

    let mut faces = exploration
        .leaves
        .iter()
        .map(face_from_terminal)
        .collect::<Result<Vec<_>>>()?;
    faces.sort();

    let tree = ResolutionTree::from_local(exploration.root);
    let duplicate_nodes = options.detect_duplicates.then(|| {
        let mut seen = HashSet::new();
        tree.nodes()
            .iter()
            .filter(|node| !seen.insert(node.diagram.canonical_key()))
            .count()
    });
    let stats = SolveStats {
        nodes: exploration.nodes,
        branchings: exploration.branchings,
        leaves: exploration.leaves.len(),
        faces: faces.len(),
        max_depth: exploration.max_depth,
        stuck_branches: exploration.stuck,
        duplicate_nodes,
    };
    Ok(FrontRepresentation { faces, tree, stats })
}

/// Basic branching algorithm; leaves may repeat or nest.
pub fn solve_basic(diagram: &HasseDiagram) -> Result<FrontRepresentation> {
    solve(diagram, &SolveOptions::new(Algorithm::Basic))
}

/// Improved algorithm with single-free-edge priority and edge freezing.
pub fn solve_improved(diagram: &HasseDiagram) -> Result<FrontRepresentation> {
    solve(diagram, &SolveOptions::new(Algorithm::Improved))
}

/// True when no ascending or descending vertex remains.
pub fn is_terminal(diagram: &HasseDiagram) -> bool {
    diagram.is_terminal()
}
