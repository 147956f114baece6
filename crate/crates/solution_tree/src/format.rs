//! JSON lines, DOT and plain table renderings of tree nodes.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::tree::TreeNode;
use crate::triple::{Position, Triple};

/// `{"triple":["1","13","3"],"depth":2,"path":[3,2]}`; components are decimal
/// strings so no consumer truncates them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub triple: [String; 3],
    pub depth: usize,
    pub path: Vec<Position>,
}

impl From<&TreeNode> for NodeRecord {
    fn from(n: &TreeNode) -> Self {
        NodeRecord {
            triple: n.triple.0.clone().map(|x| x.to_string()),
            depth: n.depth,
            path: n.path.clone(),
        }
    }
}

impl NodeRecord {
    pub fn to_node(&self) -> Result<TreeNode, String> {
        let [a, b, c] = &self.triple;
        let parse = |s: &String| {
            s.parse::<exact_algebra::Integer>()
                .map_err(|_| format!("bad integer `{s}`"))
        };
        Ok(TreeNode {
            triple: Triple::new(parse(a)?, parse(b)?, parse(c)?),
            depth: self.depth,
            path: self.path.clone(),
        })
    }
}

pub fn nodes_to_json_lines(nodes: &[TreeNode]) -> String {
    let mut out = String::new();
    for n in nodes {
        out.push_str(&serde_json::to_string(&NodeRecord::from(n)).expect("records serialize"));
        out.push('\n');
    }
    out
}

/// One triple per line, e.g. `(1,13,3)`.
pub fn nodes_to_table(nodes: &[TreeNode]) -> String {
    let mut out = String::new();
    for n in nodes {
        let _ = writeln!(out, "{}", n.triple);
    }
    out
}

/// Nodes become vertices labelled by their triple; edges are labelled with
/// the mutated position. Parents missing from `nodes` are skipped.
pub fn nodes_to_dot(nodes: &[TreeNode]) -> String {
    let mut ids = std::collections::HashMap::new();
    let mut out = String::from("digraph tree {\n  rankdir=LR;\n  node [shape=plaintext];\n");
    for (i, n) in nodes.iter().enumerate() {
        ids.insert(n.path.clone(), i);
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", n.triple);
    }
    for (i, n) in nodes.iter().enumerate() {
        if let Some((&k, parent)) = n.path.split_last() {
            if let Some(p) = ids.get(parent) {
                let _ = writeln!(out, "  n{p} -> n{i} [label=\"{k}\"];");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{enumerate, EquationKind};

    #[test]
    fn json_record_shape() {
        let nodes: Vec<TreeNode> = enumerate(EquationKind::Twelve, 2, None).collect();
        let lines = nodes_to_json_lines(&nodes);
        assert_eq!(
            lines.lines().nth(2).unwrap(),
            r#"{"triple":["1","13","3"],"depth":2,"path":[3,2]}"#
        );
        for line in lines.lines() {
            let rec: NodeRecord = serde_json::from_str(line).unwrap();
            assert_eq!(serde_json::to_string(&rec).unwrap(), line);
        }
    }

    #[test]
    fn dot_has_edges() {
        let nodes: Vec<TreeNode> = enumerate(EquationKind::Twelve, 3, None).collect();
        let dot = nodes_to_dot(&nodes);
        assert!(dot.contains("n2 -> n3 [label=\"3\"]"));
        assert!(dot.contains("label=\"(217,13,3)\""));
        assert_eq!(nodes_to_table(&nodes[..1]), "(1,1,1)\n");
    }
}
