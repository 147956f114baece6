use std::collections::{BTreeMap, HashMap};

use exact_algebra::{Integer, LaurentPolynomial};
use num_traits::{One, Zero};

use crate::graph::{Edge, SnakeGraph, Vertex};

/// Indices into `SnakeGraph::edges()`, increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PerfectMatching(pub Vec<usize>);

impl PerfectMatching {
    pub fn edges<'a>(&'a self, all: &'a [Edge]) -> impl Iterator<Item = &'a Edge> + 'a {
        self.0.iter().map(move |&i| &all[i])
    }

    /// `prod x_label` over the matched edges.
    pub fn weight(&self, all: &[Edge]) -> LaurentPolynomial {
        let mut exps = vec![0i64; 3];
        for e in self.edges(all) {
            exps[(e.label - 1) as usize] += 1;
        }
        LaurentPolynomial::from_terms(3, [(exps, 1)])
    }
}

/// All perfect matchings, sorted.
pub fn enumerate_matchings(g: &SnakeGraph) -> Vec<PerfectMatching> {
    let mut out = Vec::new();
    for_each_matching(g, |m| out.push(PerfectMatching(m.to_vec())));
    out.sort();
    out
}

/// Calls `f` once per perfect matching with its edge indices, increasing,
/// without storing them. Backtracks on the smallest uncovered vertex.
pub fn for_each_matching(g: &SnakeGraph, mut f: impl FnMut(&[usize])) {
    let edges = g.edges();
    let vertices = g.vertices();
    let index: HashMap<Vertex, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    // For each vertex, (edge, other end) pairs.
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertices.len()];
    for (i, e) in edges.iter().enumerate() {
        let (a, b) = (index[&e.from], index[&e.to]);
        incident[a].push((i, b));
        incident[b].push((i, a));
    }
    let mut s = Search {
        incident,
        covered: vec![false; vertices.len()],
        chosen: Vec::with_capacity(vertices.len() / 2),
        sorted: Vec::with_capacity(vertices.len() / 2),
    };
    s.run(0, &mut f);
}

struct Search {
    incident: Vec<Vec<(usize, usize)>>,
    covered: Vec<bool>,
    chosen: Vec<usize>,
    sorted: Vec<usize>,
}

impl Search {
    fn run(&mut self, from: usize, f: &mut impl FnMut(&[usize])) {
        let Some(v) = (from..self.covered.len()).find(|&v| !self.covered[v]) else {
            self.sorted.clear();
            self.sorted.extend_from_slice(&self.chosen);
            self.sorted.sort_unstable();
            f(&self.sorted);
            return;
        };
        self.covered[v] = true;
        for i in 0..self.incident[v].len() {
            let (e, w) = self.incident[v][i];
            if self.covered[w] {
                continue;
            }
            self.covered[w] = true;
            self.chosen.push(e);
            self.run(v + 1, f);
            self.chosen.pop();
            self.covered[w] = false;
        }
        self.covered[v] = false;
    }
}

/// Tile-by-tile transfer: the state is the set of already covered vertices
/// among those still shared with later tiles (at most the two ends of the
/// next glued edge), so the work is linear in the number of tiles.
fn transfer<T: Clone>(
    g: &SnakeGraph,
    zero: T,
    one: T,
    add: impl Fn(&T, &T) -> T,
    times: impl Fn(&T, &Edge) -> T,
) -> T {
    let edges = g.edges();
    let mut last_tile: HashMap<Vertex, usize> = HashMap::new();
    for e in &edges {
        for v in [e.from, e.to] {
            let t = last_tile.entry(v).or_insert(e.tile);
            *t = (*t).max(e.tile);
        }
    }
    // A vertex stays live until the last tile it is a corner of.
    for (j, (x, y)) in g.positions().into_iter().enumerate() {
        for v in [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)] {
            let t = last_tile.entry(v).or_insert(j);
            *t = (*t).max(j);
        }
    }
    let tiles = g.tile_count().max(1);
    let mut retire_at: Vec<Vec<Vertex>> = vec![Vec::new(); tiles];
    for (&v, &t) in &last_tile {
        retire_at[t].push(v);
    }
    let mut states: BTreeMap<Vec<Vertex>, T> = BTreeMap::from([(Vec::new(), one)]);
    for (j, retiring) in retire_at.iter().enumerate() {
        for e in edges.iter().filter(|e| e.tile == j) {
            let mut next: BTreeMap<Vec<Vertex>, T> = BTreeMap::new();
            for (state, val) in &states {
                accumulate(&mut next, state.clone(), val.clone(), &add);
                if !state.contains(&e.from) && !state.contains(&e.to) {
                    let mut s = state.clone();
                    s.push(e.from);
                    s.push(e.to);
                    s.sort();
                    accumulate(&mut next, s, times(val, e), &add);
                }
            }
            states = next;
        }
        let mut next = BTreeMap::new();
        for (state, val) in states {
            if retiring.iter().all(|v| state.contains(v)) {
                let s: Vec<Vertex> = state
                    .into_iter()
                    .filter(|v| !retiring.contains(v))
                    .collect();
                accumulate(&mut next, s, val, &add);
            }
        }
        states = next;
    }
    states.remove(&Vec::new()).unwrap_or(zero)
}

fn accumulate<T>(
    map: &mut BTreeMap<Vec<Vertex>, T>,
    key: Vec<Vertex>,
    val: T,
    add: impl Fn(&T, &T) -> T,
) {
    match map.get_mut(&key) {
        Some(old) => *old = add(old, &val),
        None => {
            map.insert(key, val);
        }
    }
}

pub fn count_matchings(g: &SnakeGraph) -> Integer {
    transfer(
        g,
        Integer::zero(),
        Integer::one(),
        |a, b| a + b,
        |v, _| v.clone(),
    )
}

/// Sum over perfect matchings of the product of `x_label` over matched edges.
pub fn weight_polynomial(g: &SnakeGraph) -> LaurentPolynomial {
    transfer(
        g,
        LaurentPolynomial::zero(3),
        LaurentPolynomial::one(3),
        |a, b| a + b,
        |v, e| v * &LaurentPolynomial::var(3, (e.label - 1) as usize),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_snake_graph, Step, Tile};

    fn plain(shape: &[Step]) -> SnakeGraph {
        let t = Tile {
            south: 1,
            west: 2,
            north: 3,
            east: 1,
        };
        SnakeGraph::with_shape(shape, |_| t).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_matchings(&plain(&[])), Integer::from(2));
        assert_eq!(count_matchings(&plain(&[Step::Right])), Integer::from(3));
        assert_eq!(
            count_matchings(&SnakeGraph::single_edge(1)),
            Integer::from(1)
        );
        assert_eq!(enumerate_matchings(&plain(&[])).len(), 2);
        assert_eq!(enumerate_matchings(&SnakeGraph::single_edge(3)).len(), 1);
    }

    #[test]
    fn single_tile_weight() {
        let g = SnakeGraph::with_shape(&[], |_| Tile {
            south: 1,
            west: 2,
            north: 3,
            east: 2,
        })
        .unwrap();
        assert_eq!(
            weight_polynomial(&g),
            LaurentPolynomial::parse(3, "x1*x3 + x2^2").unwrap()
        );
    }

    #[test]
    fn golden_arc_counts() {
        let g = build_snake_graph(&"3ccw 2cw 3cw".parse().unwrap()).unwrap();
        assert_eq!(count_matchings(&g), Integer::from(13));
        let all = enumerate_matchings(&g);
        assert_eq!(all.len(), 13);
        let edges = g.edges();
        let sum = all.iter().fold(LaurentPolynomial::zero(3), |acc, m| {
            &acc + &m.weight(&edges)
        });
        assert_eq!(sum, weight_polynomial(&g));
        for m in &all {
            assert_eq!(m.0.len(), g.vertices().len() / 2);
        }
    }
}
