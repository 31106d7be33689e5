//! The contraction dynamic program shared by both solver variants and by
//! interface resolution.

use rayon::prelude::*;

use super::{Algorithm, Contraction, SolveOptions};
use crate::error::{Error, Result};
use crate::hasse::{EdgeState, HasseDiagram, VertexColour, VertexId};

/// Order in which extremal vertices are considered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Policy {
    /// Smallest id, vertices with a single free aimed edge first.
    Standard,
    /// Like `Standard`, but conflicting vertices come first within each
    /// class. Used while resolving the interface.
    InterfaceFirst,
}

/// When a diagram becomes a leaf of the exploration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum StopAt {
    Terminal,
    NoConflicts,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Strategy {
    pub algorithm: Algorithm,
    pub policy: Policy,
    pub stop: StopAt,
}

/// Outcome of vertex selection on a non-terminal diagram.
pub(crate) enum Choice {
    Expand(Selection),
    /// An extremal vertex can only reach its targets through frozen edges.
    Stuck(VertexId),
}

pub(crate) struct Selection {
    pub vertex: VertexId,
    /// Targets in contraction order.
    pub targets: Vec<VertexId>,
}

fn target_rank(diagram: &HasseDiagram, source: VertexColour, target: VertexId) -> (u8, VertexId) {
    let colour = diagram.colour(target);
    let class = if Some(colour) == source.opposite() {
        0
    } else if colour == VertexColour::TradeOff {
        1
    } else {
        2
    };
    (class, target)
}

/// Picks the extremal vertex to expand and its ordered contraction targets.
///
/// Returns `Ok(None)` when no monochromatic vertex is left. With the
/// improved algorithm only free edges are candidates; an extremal vertex
/// without any free aimed edge makes the whole diagram [`Choice::Stuck`].
pub(crate) fn select(
    diagram: &HasseDiagram,
    algorithm: Algorithm,
    policy: Policy,
) -> Result<Option<Choice>> {
    let mut best: Option<((u8, VertexId), Vec<VertexId>)> = None;
    for v in diagram.vertices() {
        let colour = v.colour();
        if !colour.is_monochrome() {
            continue;
        }
        let id = v.id();
        let aims = diagram.aim_edges(id);
        if aims.iter().any(|&(t, _)| diagram.colour(t) == colour) {
            continue;
        }
        let mut targets: Vec<VertexId> = match algorithm {
            Algorithm::Basic => aims.iter().map(|&(t, _)| t).collect(),
            Algorithm::Improved => aims
                .iter()
                .filter(|&&(_, s)| s == EdgeState::Free)
                .map(|&(t, _)| t)
                .collect(),
        };
        if aims.is_empty() {
            return Err(Error::Contradiction(format!("vertex {id} aims at nothing")));
        }
        if targets.is_empty() {
            return Ok(Some(Choice::Stuck(id)));
        }
        targets.sort_by_key(|&t| target_rank(diagram, colour, t));
        let single = targets.len() == 1;
        let conflicting = aims
            .iter()
            .any(|&(t, _)| Some(diagram.colour(t)) == colour.opposite());
        let class = match (policy, single, conflicting) {
            (Policy::Standard, true, _) => 0,
            (Policy::Standard, false, _) => 2,
            (Policy::InterfaceFirst, true, true) => 0,
            (Policy::InterfaceFirst, true, false) => 1,
            (Policy::InterfaceFirst, false, true) => 2,
            (Policy::InterfaceFirst, false, false) => 3,
        };
        let key = (class, id);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, targets));
        }
    }
    Ok(best.map(|((_, vertex), targets)| Choice::Expand(Selection { vertex, targets })))
}

/// Child diagrams of one expansion, with the contraction that made each.
pub(crate) fn expand(
    diagram: &HasseDiagram,
    selection: &Selection,
    algorithm: Algorithm,
) -> Result<Vec<(Contraction, HasseDiagram)>> {
    let freezing = algorithm == Algorithm::Improved && selection.targets.len() > 1;
    let mut frozen = freezing.then(|| diagram.clone());
    let mut children = Vec::with_capacity(selection.targets.len());
    for &target in &selection.targets {
        let (from, to) = diagram.aim_edge(selection.vertex, target);
        let parent = frozen.as_ref().unwrap_or(diagram);
        let child = parent.contract_edge(from, to)?;
        children.push((Contraction { from, to }, child));
        if let Some(parent) = frozen.as_mut() {
            parent.freeze(from, to)?;
        }
    }
    Ok(children)
}

/// Owned resolution subtree produced by [`explore`].
pub(crate) struct LocalNode {
    pub diagram: HasseDiagram,
    pub action: Option<Contraction>,
    pub children: Vec<LocalNode>,
    pub pruned: bool,
}

pub(crate) struct Exploration {
    pub root: LocalNode,
    pub leaves: Vec<HasseDiagram>,
    pub nodes: usize,
    pub branchings: usize,
    pub max_depth: usize,
    pub stuck: usize,
}

// parallel fan-out only near the root; deeper levels are too small to pay off
const PARALLEL_DEPTH: usize = 6;

pub(crate) fn explore(
    diagram: HasseDiagram,
    action: Option<Contraction>,
    depth: usize,
    strategy: Strategy,
    options: &SolveOptions,
) -> Result<Exploration> {
    let leaf = |diagram: HasseDiagram, pruned: bool| Exploration {
        leaves: if pruned {
            Vec::new()
        } else {
            vec![diagram.clone()]
        },
        root: LocalNode {
            diagram,
            action,
            children: Vec::new(),
            pruned,
        },
        nodes: 1,
        branchings: 0,
        max_depth: depth,
        stuck: usize::from(pruned),
    };
    if diagram.is_terminal() {
        return Ok(leaf(diagram, false));
    }
    let choice = select(&diagram, strategy.algorithm, strategy.policy)?.ok_or_else(|| {
        Error::Contradiction("non-terminal diagram without extremal vertex".into())
    })?;
    let selection = match choice {
        Choice::Expand(selection) => selection,
        // every Pareto point of this branch equates two frozen-apart
        // aggregates, so it already lies in an earlier sibling branch
        Choice::Stuck(_) if !options.strict_frozen => return Ok(leaf(diagram, true)),
        Choice::Stuck(vertex) => return Err(Error::Stuck(vertex)),
    };
    if strategy.stop == StopAt::NoConflicts && diagram.conflict_edges().is_empty() {
        return Ok(leaf(diagram, false));
    }
    let children = expand(&diagram, &selection, strategy.algorithm)?;
    let branching = children.len() > 1;

    let recurse = |(contraction, child): (Contraction, HasseDiagram)| {
        explore(child, Some(contraction), depth + 1, strategy, options)
    };
    let explored: Vec<Exploration> = if options.parallel && branching && depth < PARALLEL_DEPTH {
        children
            .into_par_iter()
            .map(recurse)
            .collect::<Result<_>>()?
    } else {
        children.into_iter().map(recurse).collect::<Result<_>>()?
    };

    let mut out = Exploration {
        root: LocalNode {
            diagram,
            action,
            children: Vec::with_capacity(explored.len()),
            pruned: false,
        },
        leaves: Vec::new(),
        nodes: 1,
        branchings: usize::from(branching),
        max_depth: depth,
        stuck: 0,
    };
    for sub in explored {
        out.nodes += sub.nodes;
        out.branchings += sub.branchings;
        out.stuck += sub.stuck;
        out.max_depth = out.max_depth.max(sub.max_depth);
        out.leaves.extend(sub.leaves);
        if options.retain_tree {
            out.root.children.push(sub.root);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hasse::{build_diagram, Signature};

    fn expect_expand(d: &HasseDiagram) -> Selection {
        match select(d, Algorithm::Improved, Policy::Standard)
            .unwrap()
            .unwrap()
        {
            Choice::Expand(s) => s,
            Choice::Stuck(v) => panic!("stuck at {v}"),
        }
    }

    #[test]
    fn selection_prefers_single_edge() {
        // 1 and 3 descending above ascending 2; 4 ascending alone
        let sig = Signature::new(4, [2, 4]).unwrap();
        let d = build_diagram(sig, &[(1, 2), (3, 2)]).unwrap();
        let s = expect_expand(&d);
        // vertex 1 aims only at 2 (single free edge)
        assert_eq!(s.vertex, VertexId(1));
        assert_eq!(s.targets, vec![VertexId(2)]);
    }

    #[test]
    fn targets_conflicting_first() {
        // descending 1 above ascending 3 and above the trade-off {5, 6}
        let sig = Signature::new(6, [3, 4, 5]).unwrap();
        let d = build_diagram(
            sig,
            &[(1, 3), (2, 3), (2, 4), (4, 2), (1, 5), (5, 6), (6, 5)],
        )
        .unwrap();
        let s = expect_expand(&d);
        assert_eq!(s.vertex, VertexId(1));
        assert_eq!(s.targets, vec![VertexId(3), VertexId(5)]);
    }

    #[test]
    fn improved_expansion_freezes_earlier_edges() {
        // complete bipartite conflict: every vertex aims at two others
        let sig = Signature::new(4, [2, 4]).unwrap();
        let d = build_diagram(sig, &[(1, 2), (1, 4), (3, 2), (3, 4)]).unwrap();
        let s = expect_expand(&d);
        assert_eq!(s.vertex, VertexId(1));
        assert_eq!(s.targets, vec![VertexId(2), VertexId(4)]);
        let children = expand(&d, &s, Algorithm::Improved).unwrap();
        assert_eq!(children.len(), 2);
        let (_, first) = &children[0];
        assert!(first.edges().all(|(_, _, s)| s == EdgeState::Free));
        let (action, second) = &children[1];
        assert_eq!((action.from, action.to), (VertexId(1), VertexId(4)));
        assert_eq!(
            second.edge_state(VertexId(1), VertexId(2)),
            Some(EdgeState::Frozen)
        );
        let basic = expand(&d, &s, Algorithm::Basic).unwrap();
        assert!(basic[1].1.edges().all(|(_, _, s)| s == EdgeState::Free));
    }

    #[test]
    fn complete_bipartite_second_branch_is_stuck() {
        let sig = Signature::new(4, [2, 4]).unwrap();
        let d = build_diagram(sig, &[(1, 2), (1, 4), (3, 2), (3, 4)]).unwrap();
        let children = expand(&d, &expect_expand(&d), Algorithm::Improved).unwrap();
        let (_, second) = &children[1];
        // ascending 2 now sits only below {1,4}, through the frozen edge
        let aims = second.aim_edges(VertexId(2));
        assert_eq!(aims, vec![(VertexId(1), EdgeState::Frozen)]);
        assert!(matches!(
            select(second, Algorithm::Improved, Policy::Standard).unwrap(),
            Some(Choice::Stuck(VertexId(2)))
        ));
    }
}
