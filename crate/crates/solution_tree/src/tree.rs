use exact_algebra::Integer;
use rayon::prelude::*;

use crate::triple::{is_singular, mutate, verify, EquationKind, Position, Triple};
use crate::TreeError;

/// Levels at least this wide are expanded on the rayon pool.
const PARALLEL_LEVEL: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeNode {
    pub triple: Triple,
    pub depth: usize,
    /// Positions mutated on the way from `(1,1,1)`.
    pub path: Vec<Position>,
}

impl TreeNode {
    pub fn root() -> Self {
        TreeNode {
            triple: Triple::from_u64(1, 1, 1),
            depth: 0,
            path: Vec::new(),
        }
    }

    fn child(&self, k: Position, kind: EquationKind) -> Result<TreeNode, TreeError> {
        let mut path = self.path.clone();
        path.push(k);
        Ok(TreeNode {
            triple: mutate(&self.triple, k, kind)?,
            depth: self.depth + 1,
            path,
        })
    }

    /// Replays the path from `(1,1,1)`.
    pub fn replay(path: &[Position], kind: EquationKind) -> Result<Triple, TreeError> {
        let mut t = Triple::from_u64(1, 1, 1);
        for &k in path {
            t = mutate(&t, k, kind)?;
        }
        Ok(t)
    }
}

/// Children in display order. The first two levels are the fixed root chain
/// (mutate position 3, then position 2). Below it the two non-maximal
/// positions are mutated, higher position first.
pub fn children(node: &TreeNode, kind: EquationKind) -> Result<Vec<TreeNode>, TreeError> {
    match node.depth {
        0 => return Ok(vec![node.child(3, kind)?]),
        1 => return Ok(vec![node.child(2, kind)?]),
        _ => {}
    }
    let top = node
        .triple
        .max_position()
        .ok_or_else(|| TreeError::TiedMaximum(node.triple.clone()))?;
    (1..=3u8)
        .rev()
        .filter(|&k| k != top)
        .map(|k| node.child(k, kind))
        .collect()
}

/// Breadth-first stream of nodes, level by level.
pub struct Enumeration {
    kind: EquationKind,
    max_depth: usize,
    max_value: Option<Integer>,
    level: Vec<TreeNode>,
    next: usize,
}

impl Enumeration {
    fn expand(&self) -> Vec<TreeNode> {
        let kids = |n: &TreeNode| -> Vec<TreeNode> {
            children(n, self.kind).expect("tree nodes always have well-defined children")
        };
        let next: Vec<TreeNode> = if self.level.len() >= PARALLEL_LEVEL {
            self.level.par_iter().flat_map_iter(kids).collect()
        } else {
            self.level.iter().flat_map(kids).collect()
        };
        match &self.max_value {
            // Children exceed their parent's maximum, so pruning loses nothing below.
            Some(cap) => next.into_iter().filter(|n| n.triple.max() <= cap).collect(),
            None => next,
        }
    }
}

impl Iterator for Enumeration {
    type Item = TreeNode;

    fn next(&mut self) -> Option<TreeNode> {
        if self.next == self.level.len() {
            let depth = self.level.first()?.depth;
            if depth >= self.max_depth {
                self.level.clear();
                return None;
            }
            self.level = self.expand();
            self.next = 0;
            if self.level.is_empty() {
                return None;
            }
        }
        self.next += 1;
        Some(self.level[self.next - 1].clone())
    }
}

/// All nodes of depth at most `max_depth` and (optionally) maximum at most
/// `max_value`, breadth first, each level in display order.
pub fn enumerate(kind: EquationKind, max_depth: usize, max_value: Option<Integer>) -> Enumeration {
    let root = TreeNode::root();
    let level = match &max_value {
        Some(cap) if root.triple.max() > cap => Vec::new(),
        _ => vec![root],
    };
    Enumeration {
        kind,
        max_depth,
        max_value,
        level,
        next: 0,
    }
}

/// Path of a descent: `triples[i]` becomes `triples[i+1]` by mutating `positions[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent {
    pub triples: Vec<Triple>,
    pub positions: Vec<Position>,
}

impl Descent {
    pub fn terminal(&self) -> &Triple {
        self.triples.last().unwrap()
    }
}

/// Repeatedly mutates the maximal component until a singular solution is hit.
/// Each step must strictly decrease the maximum.
pub fn descend(t: &Triple, kind: EquationKind) -> Result<Descent, TreeError> {
    if !verify(t, kind) {
        return Err(TreeError::NotASolution(t.clone()));
    }
    let mut triples = vec![t.clone()];
    let mut positions = Vec::new();
    let mut cur = t.clone();
    while !is_singular(&cur) {
        let k = cur
            .max_position()
            .ok_or_else(|| TreeError::TiedMaximum(cur.clone()))?;
        let next = mutate(&cur, k, kind)?;
        if next.max() >= cur.max() {
            return Err(TreeError::DescentStalled(cur));
        }
        positions.push(k);
        triples.push(next.clone());
        cur = next;
    }
    Ok(Descent { triples, positions })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u64, b: u64, c: u64) -> Triple {
        Triple::from_u64(a, b, c)
    }

    fn node(path: &[Position], kind: EquationKind) -> TreeNode {
        TreeNode {
            triple: TreeNode::replay(path, kind).unwrap(),
            depth: path.len(),
            path: path.to_vec(),
        }
    }

    #[test]
    fn children_examples() {
        let k = EquationKind::Twelve;
        let kids: Vec<Triple> = children(&node(&[3, 2], k), k)
            .unwrap()
            .into_iter()
            .map(|n| n.triple)
            .collect();
        assert_eq!(kids, vec![t(1, 13, 61), t(217, 13, 3)]);
        let kids: Vec<Triple> = children(&node(&[3, 2, 3], k), k)
            .unwrap()
            .into_iter()
            .map(|n| n.triple)
            .collect();
        assert_eq!(kids, vec![t(1, 291, 61), t(4683, 13, 61)]);
        let kids: Vec<Triple> = children(&node(&[3, 2, 1], k), k)
            .unwrap()
            .into_iter()
            .map(|n| n.triple)
            .collect();
        assert_eq!(kids, vec![t(217, 13, 16693), t(217, 3673, 3)]);
    }

    #[test]
    fn enumerate_small() {
        let all: Vec<Triple> = enumerate(EquationKind::Twelve, 0, None)
            .map(|n| n.triple)
            .collect();
        assert_eq!(all, vec![t(1, 1, 1)]);
        assert_eq!(enumerate(EquationKind::Twelve, 3, None).count(), 5);
        assert_eq!(enumerate(EquationKind::Twelve, 4, None).count(), 9);
        assert_eq!(
            enumerate(EquationKind::Twelve, 10, Some(Integer::from(61))).count(),
            4
        );
        assert_eq!(
            enumerate(EquationKind::Markov, 5, Some(Integer::from(0))).count(),
            0
        );
    }

    #[test]
    fn descend_examples() {
        let k = EquationKind::Twelve;
        let d = descend(&t(1, 13, 61), k).unwrap();
        assert_eq!(d.triples, vec![t(1, 13, 61), t(1, 13, 3), t(1, 1, 3)]);
        assert_eq!(d.positions, vec![3, 2]);
        let d = descend(&t(217, 13, 16693), k).unwrap();
        assert_eq!(d.triples.len(), 4);
        assert_eq!(d.terminal(), &t(1, 1, 3));
        let d = descend(&t(1, 13, 3), k).unwrap();
        assert_eq!(d.triples, vec![t(1, 13, 3), t(1, 1, 3)]);
        assert!(descend(&t(2, 2, 2), k).is_err());
    }
}
