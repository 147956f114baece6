use std::fmt;

use exact_algebra::{Integer, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::{Side, SnakeGraph, Step};
use crate::SnakeError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// One sign per edge, indexed like `SnakeGraph::edges()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignAssignment(pub Vec<Sign>);

impl SignAssignment {
    pub fn dual(&self) -> Self {
        SignAssignment(self.0.iter().map(|s| s.flip()).collect())
    }
}

/// Sign of each tile's south edge: the first is `first`, and they alternate
/// since every glued edge carries the same sign on both tiles.
fn south_signs(g: &SnakeGraph, first: Sign) -> Vec<Sign> {
    let mut s = vec![first];
    for _ in 1..g.tile_count() {
        let last = *s.last().unwrap();
        s.push(last.flip());
    }
    s
}

fn tile_sign(south: Sign, side: Side) -> Sign {
    match side {
        Side::South | Side::East => south,
        Side::North | Side::West => south.flip(),
    }
}

/// The assignment with the first south edge negative. The only other
/// assignment obeying the tile rules is its dual.
pub fn sign_assignment(g: &SnakeGraph) -> SignAssignment {
    let south = south_signs(g, Sign::Minus);
    SignAssignment(
        g.edges()
            .iter()
            .map(|e| {
                if g.is_single_edge() {
                    Sign::Minus
                } else {
                    tile_sign(south[e.tile], e.side)
                }
            })
            .collect(),
    )
}

/// Per tile: north and west agree, south and east agree, north and south differ.
/// Edges shared by two tiles are checked from both sides.
pub fn check_sign_rules(g: &SnakeGraph, a: &SignAssignment) -> bool {
    let edges = g.edges();
    if a.0.len() != edges.len() {
        return false;
    }
    let lookup = |from, to| {
        edges
            .iter()
            .position(|e| e.from == from && e.to == to)
            .map(|i| a.0[i])
    };
    g.positions().into_iter().all(|(x, y)| {
        let s = lookup((x, y), (x + 1, y));
        let w = lookup((x, y), (x, y + 1));
        let n = lookup((x, y + 1), (x + 1, y + 1));
        let e = lookup((x + 1, y), (x + 1, y + 1));
        match (s, w, n, e) {
            (Some(s), Some(w), Some(n), Some(e)) => n == w && s == e && n != s,
            _ => false,
        }
    })
}

/// Signs met by the staircase through the tile interiors: the first tile's
/// south edge, every glued edge, then the last tile's east edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignSequence(pub Vec<Sign>);

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.symbol().to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

pub fn sign_sequence(g: &SnakeGraph) -> SignSequence {
    sign_sequence_from(g, Sign::Minus)
}

pub(crate) fn sign_sequence_from(g: &SnakeGraph, first: Sign) -> SignSequence {
    if g.is_single_edge() {
        return SignSequence(Vec::new());
    }
    let south = south_signs(g, first);
    let mut out = vec![south[0]];
    for (j, step) in g.shape().iter().enumerate() {
        out.push(match step {
            Step::Up => tile_sign(south[j], Side::North),
            Step::Right => tile_sign(south[j], Side::East),
        });
    }
    out.push(tile_sign(*south.last().unwrap(), Side::East));
    SignSequence(out)
}

/// Partial quotients `[a_1, ..., a_n]`, all positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ContinuedFraction(pub Vec<Integer>);

impl ContinuedFraction {
    pub fn new(q: Vec<Integer>) -> Result<Self, SnakeError> {
        if q.is_empty() || q.iter().any(|a| !a.is_positive()) {
            return Err(SnakeError::Mismatch(
                "continued fraction needs at least one quotient, all positive".into(),
            ));
        }
        Ok(ContinuedFraction(q))
    }

    pub fn from_u64(q: &[u64]) -> Result<Self, SnakeError> {
        Self::new(q.iter().map(|&a| Integer::from(a)).collect())
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Run lengths of the sign sequence. The empty sequence of a single edge reads `[1]`.
pub fn continued_fraction(g: &SnakeGraph) -> ContinuedFraction {
    runs(&sign_sequence(g))
}

pub(crate) fn runs(seq: &SignSequence) -> ContinuedFraction {
    let mut out: Vec<Integer> = Vec::new();
    let mut prev = None;
    for &s in &seq.0 {
        if prev == Some(s) {
            *out.last_mut().unwrap() += 1u32;
        } else {
            out.push(Integer::one());
        }
        prev = Some(s);
    }
    if out.is_empty() {
        out.push(Integer::one());
    }
    ContinuedFraction(out)
}

/// `a_1 + 1/(a_2 + 1/(... + 1/a_n))`, evaluated from the back.
pub fn evaluate_cf(cf: &ContinuedFraction) -> Rational {
    let mut it = cf.0.iter().rev();
    let mut acc = Rational::from_integer(it.next().cloned().unwrap_or_else(Integer::zero));
    for a in it {
        acc = Rational::from_integer(a.clone()) + acc.recip();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_snake_graph, Tile};

    fn golden() -> SnakeGraph {
        build_snake_graph(&"3ccw 2cw 3cw".parse().unwrap()).unwrap()
    }

    #[test]
    fn golden_signs() {
        let g = golden();
        assert_eq!(sign_sequence(&g).to_string(), "(-,+,+,-,-,-,+)");
        assert_eq!(
            continued_fraction(&g),
            ContinuedFraction::from_u64(&[1, 2, 3, 1]).unwrap()
        );
        let a = sign_assignment(&g);
        assert!(check_sign_rules(&g, &a));
        assert!(check_sign_rules(&g, &a.dual()));
        assert_eq!(
            runs(&sign_sequence_from(&g, Sign::Plus)),
            continued_fraction(&g)
        );
    }

    #[test]
    fn single_tile_signs() {
        let t = Tile {
            south: 1,
            west: 2,
            north: 3,
            east: 1,
        };
        let g = SnakeGraph::with_shape(&[], |_| t).unwrap();
        let a = sign_assignment(&g);
        // Edge order: south, west, north, east.
        assert_eq!(a.0, vec![Sign::Minus, Sign::Plus, Sign::Plus, Sign::Minus]);
        assert_eq!(sign_sequence(&g).0.len(), 2);
        let mut bad = a.clone();
        bad.0[1] = Sign::Minus;
        assert!(!check_sign_rules(&g, &bad));
    }

    #[test]
    fn evaluation() {
        let v = evaluate_cf(&ContinuedFraction::from_u64(&[1, 2, 3, 1]).unwrap());
        assert_eq!(v, Rational::new(13.into(), 9.into()));
        assert_eq!(
            evaluate_cf(&ContinuedFraction::from_u64(&[5]).unwrap()),
            Rational::from_integer(5.into())
        );
        assert_eq!(
            evaluate_cf(&ContinuedFraction::from_u64(&[1, 1]).unwrap()),
            Rational::from_integer(2.into())
        );
        assert!(ContinuedFraction::from_u64(&[]).is_err());
        assert!(ContinuedFraction::from_u64(&[1, 0]).is_err());
        assert_eq!(
            continued_fraction(&SnakeGraph::single_edge(1)).to_string(),
            "[1]"
        );
    }
}
