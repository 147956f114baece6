use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arc::{shift, ArcDescriptor, Label, Passage};
use crate::SnakeError;

/// Where the next tile is glued.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Step {
    Right,
    Up,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::Right => 'R',
            Step::Up => 'U',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    South,
    West,
    North,
    East,
}

/// Edge labels of one square tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tile {
    pub south: Label,
    pub west: Label,
    pub north: Label,
    pub east: Label,
}

impl Tile {
    pub fn side(&self, s: Side) -> Label {
        match s {
            Side::South => self.south,
            Side::West => self.west,
            Side::North => self.north,
            Side::East => self.east,
        }
    }
}

pub type Vertex = (i64, i64);

/// A unit edge of the lattice drawing. `tile` is the first tile containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: Vertex,
    pub to: Vertex,
    pub label: Label,
    pub tile: usize,
    pub side: Side,
}

impl Edge {
    pub fn other(&self, v: Vertex) -> Vertex {
        if v == self.from {
            self.to
        } else {
            self.from
        }
    }
}

/// Tiles glued in a staircase, drawn with the first tile's south-west corner
/// at the origin. The graph of an initial arc has no tiles and a single edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SnakeGraph {
    tiles: Vec<Tile>,
    shape: Vec<Step>,
    single_edge: Option<Label>,
}

impl SnakeGraph {
    /// Checks that glued sides agree.
    pub fn new(tiles: Vec<Tile>, shape: Vec<Step>) -> Result<Self, SnakeError> {
        if tiles.is_empty() || shape.len() + 1 != tiles.len() {
            return Err(SnakeError::InvalidArc(format!(
                "{} tiles need a shape word of length {}",
                tiles.len(),
                tiles.len().saturating_sub(1)
            )));
        }
        for (j, step) in shape.iter().enumerate() {
            let (a, b) = (&tiles[j], &tiles[j + 1]);
            let ok = match step {
                Step::Up => a.north == b.south,
                Step::Right => a.east == b.west,
            };
            if !ok {
                return Err(SnakeError::InvalidArc(format!(
                    "tiles {} and {} disagree on their shared edge",
                    j + 1,
                    j + 2
                )));
            }
        }
        Ok(SnakeGraph {
            tiles,
            shape,
            single_edge: None,
        })
    }

    pub fn single_edge(label: Label) -> Self {
        SnakeGraph {
            tiles: Vec::new(),
            shape: Vec::new(),
            single_edge: Some(label),
        }
    }

    /// Tiles laid out by a shape word; labels are not constrained.
    pub fn with_shape(shape: &[Step], tile: impl Fn(usize) -> Tile) -> Result<Self, SnakeError> {
        let mut tiles: Vec<Tile> = Vec::with_capacity(shape.len() + 1);
        for j in 0..=shape.len() {
            let mut t = tile(j);
            if j > 0 {
                match shape[j - 1] {
                    Step::Up => t.south = tiles[j - 1].north,
                    Step::Right => t.west = tiles[j - 1].east,
                }
            }
            tiles.push(t);
        }
        SnakeGraph::new(tiles, shape.to_vec())
    }

    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn shape(&self) -> &[Step] {
        &self.shape
    }

    pub fn shape_word(&self) -> String {
        self.shape.iter().map(|s| s.letter()).collect()
    }

    pub fn is_single_edge(&self) -> bool {
        self.single_edge.is_some()
    }

    /// South-west corner of each tile.
    pub fn positions(&self) -> Vec<Vertex> {
        let mut pos = vec![(0, 0)];
        for s in &self.shape {
            let (x, y) = *pos.last().unwrap();
            pos.push(match s {
                Step::Right => (x + 1, y),
                Step::Up => (x, y + 1),
            });
        }
        pos.truncate(self.tiles.len());
        pos
    }

    /// Every edge once, in tile order and then south, west, north, east.
    pub fn edges(&self) -> Vec<Edge> {
        if let Some(label) = self.single_edge {
            return vec![Edge {
                from: (0, 0),
                to: (1, 0),
                label,
                tile: 0,
                side: Side::South,
            }];
        }
        let mut seen = BTreeMap::new();
        let mut out = Vec::new();
        for (j, ((x, y), t)) in self.positions().into_iter().zip(&self.tiles).enumerate() {
            let sides = [
                (Side::South, (x, y), (x + 1, y)),
                (Side::West, (x, y), (x, y + 1)),
                (Side::North, (x, y + 1), (x + 1, y + 1)),
                (Side::East, (x + 1, y), (x + 1, y + 1)),
            ];
            for (side, from, to) in sides {
                if seen.insert((from, to), ()).is_none() {
                    out.push(Edge {
                        from,
                        to,
                        label: t.side(side),
                        tile: j,
                        side,
                    });
                }
            }
        }
        out
    }

    /// Distinct vertices in lexicographic order.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.edges().iter().flat_map(|e| [e.from, e.to]).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn to_record(&self) -> SnakeRecord {
        SnakeRecord {
            tile_count: self.tile_count(),
            shape: self.shape_word(),
            tiles: self.tiles.clone(),
            edge: self.single_edge,
        }
    }

    /// Graphviz drawing at lattice coordinates; `highlight` marks edge indices
    /// (into `edges()`) in bold red.
    pub fn to_dot(&self, highlight: &[usize]) -> String {
        let mut out = String::from("graph snake {\n  node [shape=point];\n  edge [fontsize=10];\n");
        for (x, y) in self.vertices() {
            out.push_str(&format!("  \"{x},{y}\" [pos=\"{x},{y}!\"];\n"));
        }
        for (i, e) in self.edges().iter().enumerate() {
            let style = if highlight.contains(&i) {
                ", color=red, penwidth=3"
            } else {
                ""
            };
            out.push_str(&format!(
                "  \"{},{}\" -- \"{},{}\" [label=\"{}\"{style}];\n",
                e.from.0, e.from.1, e.to.0, e.to.1, e.label
            ));
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for SnakeGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = self.single_edge {
            return write!(f, "edge {l}");
        }
        write!(
            f,
            "{} tiles, shape {}",
            self.tile_count(),
            self.shape_word()
        )?;
        for t in &self.tiles {
            write!(f, " [S{} W{} N{} E{}]", t.south, t.west, t.north, t.east)?;
        }
        Ok(())
    }
}

/// JSON form: tile count, shape word and the four labels of each tile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnakeRecord {
    pub tile_count: usize,
    pub shape: String,
    pub tiles: Vec<Tile>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub edge: Option<Label>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Turn {
    Right,
    Left,
}

/// A triangle crossed by the arc: the ordinary triangle bounded by all three
/// initial arcs, or the triangle unfolded from a monogon, all of whose sides
/// carry the monogon's label.
#[derive(Debug, Clone, Copy)]
enum Triangle {
    Ordinary,
    Monogon(Label),
}

struct Visit {
    triangle: Triangle,
    /// Label of the side the arc enters through (None for the first triangle).
    entry: Option<Label>,
    turn: Option<Turn>,
}

impl Visit {
    /// Side neither entered nor left.
    fn untouched(&self, exit: Label) -> Label {
        match self.triangle {
            Triangle::Monogon(a) => a,
            Triangle::Ordinary => 6 - self.entry.unwrap() - exit,
        }
    }

    /// `(right, left)` sides seen from the entry side, looking into the triangle.
    fn sides_from_entry(&self) -> (Label, Label) {
        let e = self.entry.unwrap();
        match self.triangle {
            Triangle::Monogon(a) => (a, a),
            Triangle::Ordinary => (shift(e, 1), shift(e, 2)),
        }
    }

    /// `(right, left)` sides seen from the exit side, looking back out.
    fn sides_from_exit(&self, exit: Label) -> (Label, Label) {
        match (self.entry, self.turn) {
            (None, _) => (shift(exit, 2), shift(exit, 1)),
            (Some(e), Some(Turn::Right)) => (e, self.untouched(exit)),
            (Some(e), _) => (self.untouched(exit), e),
        }
    }
}

/// Pastes the triangles met by the arc (ordinary, monogon, ordinary, ...) and
/// turns each pair of consecutive triangles into a square tile. Tiles
/// alternate in orientation, which fixes where each next tile is glued.
pub fn build_snake_graph(arc: &ArcDescriptor) -> Result<SnakeGraph, SnakeError> {
    arc.check()?;
    let crossings = match arc {
        ArcDescriptor::Initial(l) => return Ok(SnakeGraph::single_edge(*l)),
        ArcDescriptor::Crossings(c) => c,
    };
    let mut visits = vec![Visit {
        triangle: Triangle::Ordinary,
        entry: None,
        turn: None,
    }];
    // Labels of the sides crossed, one per tile.
    let mut diagonals = Vec::new();
    for (i, c) in crossings.iter().enumerate() {
        visits.push(Visit {
            triangle: Triangle::Monogon(c.label),
            entry: Some(c.label),
            turn: Some(match c.passage {
                Passage::Clockwise => Turn::Right,
                Passage::Counterclockwise => Turn::Left,
            }),
        });
        let turn = crossings.get(i + 1).map(|next| {
            if next.label == shift(c.label, 1) {
                Turn::Right
            } else {
                Turn::Left
            }
        });
        visits.push(Visit {
            triangle: Triangle::Ordinary,
            entry: Some(c.label),
            turn,
        });
        diagonals.extend([c.label, c.label]);
    }
    let m = diagonals.len();
    let mut tiles = Vec::with_capacity(m);
    let mut shape = Vec::with_capacity(m - 1);
    for j in 1..=m {
        let (right, left) = visits[j].sides_from_entry();
        let (right_back, left_back) = visits[j - 1].sides_from_exit(diagonals[j - 1]);
        let upright = j % 2 == 0;
        tiles.push(if upright {
            Tile {
                north: left,
                east: right,
                south: right_back,
                west: left_back,
            }
        } else {
            Tile {
                north: right,
                east: left,
                south: left_back,
                west: right_back,
            }
        });
        if j < m {
            let turn = visits[j].turn.unwrap();
            shape.push(match (upright, turn) {
                (true, Turn::Right) | (false, Turn::Left) => Step::Up,
                _ => Step::Right,
            });
        }
    }
    SnakeGraph::new(tiles, shape)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tile(n: Label, e: Label, s: Label, w: Label) -> Tile {
        Tile {
            north: n,
            east: e,
            south: s,
            west: w,
        }
    }

    #[test]
    fn golden_arc_tiles() {
        let g = build_snake_graph(&"3ccw 2cw 3cw".parse().unwrap()).unwrap();
        assert_eq!(g.tile_count(), 6);
        assert_eq!(g.shape_word(), "URRUR");
        assert_eq!(
            g.tiles(),
            &[
                tile(3, 3, 1, 2),
                tile(2, 1, 3, 3),
                tile(2, 2, 3, 1),
                tile(1, 3, 2, 2),
                tile(3, 3, 1, 2),
                tile(2, 1, 3, 3),
            ]
        );
        // 7 vertical pairs of vertices: 14 vertices, 6 tiles share 5 edges.
        assert_eq!(g.vertices().len(), 14);
        assert_eq!(g.edges().len(), 4 * 6 - 5);
    }

    #[test]
    fn single_monogon_pass() {
        let g = build_snake_graph(&"1cw".parse().unwrap()).unwrap();
        assert_eq!(g.tile_count(), 2);
        let g = build_snake_graph(&"l2".parse().unwrap()).unwrap();
        assert!(g.is_single_edge());
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.edges()[0].label, 2);
    }

    #[test]
    fn mismatched_glue_is_rejected() {
        let t = tile(1, 2, 3, 1);
        assert!(SnakeGraph::new(vec![t, t], vec![Step::Up]).is_err());
        assert!(SnakeGraph::new(vec![t], vec![Step::Up]).is_err());
        let ok = SnakeGraph::with_shape(&[Step::Up, Step::Right], |_| t).unwrap();
        assert_eq!(ok.positions(), vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn dot_and_json() {
        let g = build_snake_graph(&"1cw".parse().unwrap()).unwrap();
        let dot = g.to_dot(&[0]);
        assert!(dot.starts_with("graph snake {"));
        assert!(dot.contains("color=red"));
        let rec = g.to_record();
        assert_eq!(rec.tile_count, 2);
        assert_eq!(rec.shape.len(), 1);
    }
}
