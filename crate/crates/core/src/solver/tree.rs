//! Arena form of the resolution tree.

use std::fmt::Write as _;

use super::engine::LocalNode;
use super::Contraction;
use crate::hasse::dot::{aggregate_label, colour_name};
use crate::hasse::HasseDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub usize);

#[derive(Clone, Debug)]
pub struct ResolutionNode {
    pub diagram: HasseDiagram,
    pub parent: Option<NodeId>,
    /// Contraction applied to the parent to obtain this node.
    pub action: Option<Contraction>,
    pub children: Vec<NodeId>,
    pub depth: usize,
    /// Branch abandoned because an extremal vertex only had frozen edges.
    pub pruned: bool,
}

impl ResolutionNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }
}

/// Nodes in depth-first preorder; the root is `NodeId(0)`.
#[derive(Clone, Debug)]
pub struct ResolutionTree {
    nodes: Vec<ResolutionNode>,
}

impl ResolutionTree {
    pub(crate) fn from_local(root: LocalNode) -> ResolutionTree {
        let mut nodes = Vec::new();
        let mut stack = vec![(root, None, 0usize)];
        while let Some((local, parent, depth)) = stack.pop() {
            let id = NodeId(nodes.len());
            if let Some(NodeId(p)) = parent {
                let parent_node: &mut ResolutionNode = &mut nodes[p];
                parent_node.children.push(id);
            }
            nodes.push(ResolutionNode {
                diagram: local.diagram,
                parent,
                action: local.action,
                children: Vec::new(),
                depth,
                pruned: local.pruned,
            });
            for child in local.children.into_iter().rev() {
                stack.push((child, Some(id), depth + 1));
            }
        }
        ResolutionTree { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> &ResolutionNode {
        &self.nodes[0]
    }

    pub fn node(&self, id: NodeId) -> &ResolutionNode {
        &self.nodes[id.0]
    }

    pub fn nodes(&self) -> &[ResolutionNode] {
        &self.nodes
    }

    /// Childless nodes that were not pruned.
    pub fn leaves(&self) -> impl Iterator<Item = &ResolutionNode> + '_ {
        self.nodes.iter().filter(|n| n.is_leaf() && !n.pruned)
    }
}

/// Graphviz rendering: one box per node listing its aggregates, edges
/// labelled with the contraction performed.
pub fn tree_to_dot(tree: &ResolutionTree, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{name}\" {{");
    let _ = writeln!(out, "  node [shape=box, fontname=\"monospace\"];");
    for (i, node) in tree.nodes().iter().enumerate() {
        let d = &node.diagram;
        let parts: Vec<String> = d
            .vertices()
            .filter(|v| !v.colour().is_boundary())
            .map(|v| {
                format!(
                    "{}:{}",
                    aggregate_label(d, v.indices()),
                    colour_name(v.colour())
                )
            })
            .collect();
        let style = if node.pruned {
            ", style=dotted"
        } else if node.is_leaf() && d.is_terminal() {
            ", peripheries=2"
        } else {
            ""
        };
        let _ = writeln!(out, "  n{i} [label=\"{}\"{style}];", parts.join("\\n"));
        if let (Some(parent), Some(action)) = (node.parent, node.action) {
            let _ = writeln!(
                out,
                "  n{} -> n{i} [label=\"{}-{}\"];",
                parent.0, action.from, action.to
            );
        }
    }
    out.push_str("}\n");
    out
}
