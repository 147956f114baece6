//! The universal cover picture of the orbifold: lifts of the initial arcs are
//! the edges of the Farey tessellation, and the label of an edge is read off
//! from the coset of `PSL(2,Z)` it belongs to. Arcs obtained by flips from the
//! initial triangulation are tracked as pairs of cusps; the triangles a
//! geodesic between two cusps crosses give both its crossing word and its
//! snake graph, independently of `build_snake_graph`.

use std::fmt;

use exact_algebra::Integer;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arc::{ArcDescriptor, Crossing, Label, Passage};
use crate::graph::{SnakeGraph, Step, Tile};
use crate::SnakeError;

/// Point `num/den` of the projective line, `1/0` being infinity. Stored in
/// lowest terms with a nonnegative denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cusp {
    pub num: Integer,
    pub den: Integer,
}

impl Cusp {
    pub fn new(num: impl Into<Integer>, den: impl Into<Integer>) -> Self {
        let (mut num, mut den) = (num.into(), den.into());
        let g = num.gcd(&den);
        if !g.is_zero() {
            num /= &g;
            den /= &g;
        }
        if den.is_negative() || (den.is_zero() && num.is_negative()) {
            num = -num;
            den = -den;
        }
        Cusp { num, den }
    }

    pub fn infinity() -> Self {
        Cusp::new(1, 0)
    }

    fn pair(&self) -> (Integer, Integer) {
        (self.num.clone(), self.den.clone())
    }
}

impl fmt::Debug for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_zero() {
            f.write_str("inf")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

type Mat = [[Integer; 2]; 2];

fn mat(a: Integer, b: Integer, c: Integer, d: Integer) -> Mat {
    [[a, b], [c, d]]
}

fn mul(x: &Mat, y: &Mat) -> Mat {
    let e = |i: usize, j: usize| &x[i][0] * &y[0][j] + &x[i][1] * &y[1][j];
    mat(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
}

/// Adjugate, the inverse up to a scalar.
fn adj(x: &Mat) -> Mat {
    mat(x[1][1].clone(), -&x[0][1], -&x[1][0], x[0][0].clone())
}

fn apply(m: &Mat, p: &Cusp) -> Cusp {
    Cusp::new(
        &m[0][0] * &p.num + &m[0][1] * &p.den,
        &m[1][0] * &p.num + &m[1][1] * &p.den,
    )
}

/// `(x, y)` with `a x + b y = 1`, for coprime `a`, `b`.
fn bezout(a: &Integer, b: &Integer) -> (Integer, Integer) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.x, -e.y)
    } else {
        (e.x, e.y)
    }
}

/// Right cosets of the index-6 subgroup whose quotient is the orbifold:
/// 0..=2 belong to the ordinary triangle, 3..=5 to the three monogons.
/// `S` and `U` give the action of generators of order 2 and 3.
const S: [usize; 6] = [5, 3, 4, 1, 2, 0];
const U: [usize; 6] = [1, 2, 0, 3, 4, 5];

/// Action of the translation `T = S U^2`, a 6-cycle on the cosets.
fn t_act(x: usize) -> usize {
    S[U[U[x]]]
}

fn t_pow(x: usize, k: &Integer) -> usize {
    let k = k.mod_floor(&Integer::from(6)).to_usize().unwrap();
    (0..k).fold(x, |c, _| t_act(c))
}

/// Coset of `g`, found by writing `g` as a word in `T` and `S` with the
/// Euclidean algorithm on its first column.
fn coset(g: &Mat) -> usize {
    let [[a, b], [c, d]] = g.clone();
    let (mut a, mut b, mut c, mut d) = (a, b, c, d);
    let mut cur = 0;
    while !c.is_zero() {
        let q = a.div_floor(&c);
        cur = t_pow(cur, &q);
        a -= &q * &c;
        b -= &q * &d;
        cur = S[cur];
        (a, b, c, d) = (c, d, -a, -b);
    }
    t_pow(cur, &(&b * &a))
}

/// Label of the Farey edge `p q` (which must be a unimodular pair).
pub fn edge_label(p: &Cusp, q: &Cusp) -> Result<Label, SnakeError> {
    let (a, c) = p.pair();
    let (mut b, mut d) = q.pair();
    let det = &a * &d - &b * &c;
    if det.abs() != Integer::one() {
        return Err(SnakeError::InvalidArc(format!(
            "{p} and {q} are not joined by a Farey edge"
        )));
    }
    if det.is_negative() {
        b = -b;
        d = -d;
    }
    let cs = coset(&mat(a, b, c, d));
    Ok(if cs >= 3 { cs - 2 } else { S[cs] - 2 } as Label)
}

/// The Moebius map sending `z1, z2, z3` to `w1, w2, w3`.
fn mobius(z: [&Cusp; 3], w: [&Cusp; 3]) -> Mat {
    let to_standard = |z: [&Cusp; 3]| {
        // Sends z1 -> 0, z2 -> 1, z3 -> infinity.
        let r1 = (z[0].den.clone(), -&z[0].num);
        let r2 = (z[2].den.clone(), -&z[2].num);
        let al = &r2.0 * &z[1].num + &r2.1 * &z[1].den;
        let be = &r1.0 * &z[1].num + &r1.1 * &z[1].den;
        mat(&al * &r1.0, &al * &r1.1, &be * &r2.0, &be * &r2.1)
    };
    mul(&adj(&to_standard(w)), &to_standard(z))
}

/// Lift of one arc of a triangulation: its end points, plus the far vertex
/// of the lifted monogon triangle on the other side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedArc {
    pub from: Cusp,
    pub to: Cusp,
    pub apex: Cusp,
}

/// A triangulation reached by flips, as lifts of its three arcs that bound a
/// single lifted ordinary triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    arcs: [LiftedArc; 3],
}

impl Default for Triangulation {
    fn default() -> Self {
        Self::initial()
    }
}

impl Triangulation {
    /// The ordinary triangle `(0, 1, inf)`: `l_1 = 0 1`, `l_2 = 1 inf`, `l_3 = inf 0`.
    pub fn initial() -> Self {
        let c = |a: i64, b: i64| Cusp::new(a, b);
        Triangulation {
            arcs: [
                LiftedArc {
                    from: c(0, 1),
                    to: c(1, 1),
                    apex: c(1, 2),
                },
                LiftedArc {
                    from: c(1, 1),
                    to: c(1, 0),
                    apex: c(2, 1),
                },
                LiftedArc {
                    from: c(1, 0),
                    to: c(0, 1),
                    apex: c(-1, 1),
                },
            ],
        }
    }

    pub fn arc(&self, k: usize) -> &LiftedArc {
        &self.arcs[k - 1]
    }

    /// Replaces arc `k` by the other diagonal of the quadrilateral formed by
    /// the ordinary triangle and the monogon beyond arc `k`. In the cover the
    /// monogon is a Farey triangle rotated by an order-3 symmetry `rho`.
    pub fn flip(&self, k: usize) -> Result<Self, SnakeError> {
        if !(1..=3).contains(&k) {
            return Err(SnakeError::InvalidArc(format!("no arc {k} to flip")));
        }
        let LiftedArc {
            from: p,
            to: q,
            apex: d,
        } = self.arc(k).clone();
        let c = self
            .arcs
            .iter()
            .flat_map(|a| [&a.from, &a.to])
            .find(|v| **v != p && **v != q)
            .cloned()
            .ok_or_else(|| SnakeError::InvalidArc("degenerate triangle".into()))?;
        let rho = mobius([&p, &q, &d], [&q, &d, &p]);
        let rc = apply(&rho, &c);
        let rrc = apply(&rho, &rc);
        let mut arcs = self.arcs.clone();
        for (i, a) in self.arcs.iter().enumerate() {
            if i + 1 == k {
                continue;
            }
            let ends = [&a.from, &a.to];
            if ends.contains(&&c) && ends.contains(&&q) {
                continue;
            }
            arcs[i] = LiftedArc {
                from: apply(&rho, &a.from),
                to: apply(&rho, &a.to),
                apex: apply(&rho, &a.apex),
            };
        }
        arcs[k - 1] = LiftedArc {
            from: rc,
            to: c,
            apex: rrc,
        };
        Ok(Triangulation { arcs })
    }

    pub fn after_word(word: &[usize]) -> Result<Self, SnakeError> {
        word.iter().try_fold(Self::initial(), |t, &k| t.flip(k))
    }

    pub fn descriptor(&self, k: usize) -> Result<ArcDescriptor, SnakeError> {
        let a = self.arc(k);
        Ok(crossed(&a.from, &a.to)?.descriptor())
    }

    pub fn snake_graph(&self, k: usize) -> Result<SnakeGraph, SnakeError> {
        let a = self.arc(k);
        crossed(&a.from, &a.to)?.snake_graph()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Turn {
    Right,
    Left,
}

/// Farey triangles met by the geodesic between two cusps, first the one at
/// the start cusp. Coordinates are normalized so the start is infinity.
pub struct Crossed {
    to_original: Mat,
    label: Option<Label>,
    triangles: Vec<[Cusp; 3]>,
    turns: Vec<Turn>,
}

/// Geodesic from `p` to `q`; `label` is set when the two are joined by a Farey edge.
pub fn crossed(p: &Cusp, q: &Cusp) -> Result<Crossed, SnakeError> {
    if p == q {
        return Err(SnakeError::InvalidArc("arc with equal end points".into()));
    }
    let g = if p.den.is_zero() {
        mat(
            Integer::one(),
            Integer::zero(),
            Integer::zero(),
            Integer::one(),
        )
    } else {
        let (x, y) = bezout(&p.num, &p.den);
        mat(x, y, -&p.den, p.num.clone())
    };
    let to_original = adj(&g);
    let x = apply(&g, q);
    if x.num.is_multiple_of(&x.den) {
        return Ok(Crossed {
            label: Some(edge_label(p, q)?),
            to_original,
            triangles: Vec::new(),
            turns: Vec::new(),
        });
    }
    let n = x.num.div_floor(&x.den);
    let mut l = Cusp::new(n.clone(), 1);
    let mut r = Cusp::new(n + 1, 1);
    let mut triangles = vec![[l.clone(), r.clone(), Cusp::infinity()]];
    let mut turns = Vec::new();
    loop {
        let mid = Cusp::new(&l.num + &r.num, &l.den + &r.den);
        triangles.push([l.clone(), mid.clone(), r.clone()]);
        if mid == x {
            break;
        }
        // Heading down towards the real line, smaller values lie to the right.
        if &x.num * &mid.den < &mid.num * &x.den {
            turns.push(Turn::Right);
            r = mid;
        } else {
            turns.push(Turn::Left);
            l = mid;
        }
    }
    Ok(Crossed {
        to_original,
        label: None,
        triangles,
        turns,
    })
}

impl Crossed {
    fn label(&self, a: &Cusp, b: &Cusp) -> Result<Label, SnakeError> {
        edge_label(&apply(&self.to_original, a), &apply(&self.to_original, b))
    }

    /// Number of triangles after the first, i.e. the number of tiles.
    pub fn tile_count(&self) -> usize {
        self.triangles.len().saturating_sub(1)
    }

    /// Monogon triangles are the odd-numbered ones; the turn there is the passage.
    pub fn descriptor(&self) -> ArcDescriptor {
        if let Some(l) = self.label {
            return ArcDescriptor::Initial(l);
        }
        let crossings = (1..self.triangles.len())
            .step_by(2)
            .map(|j| {
                let [a, _, b] = &self.triangles[j];
                Crossing {
                    label: self.label(a, b).expect("Farey edge"),
                    passage: match self.turns[j - 1] {
                        Turn::Right => Passage::Clockwise,
                        Turn::Left => Passage::Counterclockwise,
                    },
                }
            })
            .collect();
        ArcDescriptor::Crossings(crossings)
    }

    /// Tile `j` is the quadrilateral of triangles `j-1` and `j` with their
    /// common side as diagonal; its orientation alternates, starting with
    /// the first diagonal running from north-west to south-east reversed.
    pub fn snake_graph(&self) -> Result<SnakeGraph, SnakeError> {
        if let Some(l) = self.label {
            return Ok(SnakeGraph::single_edge(l));
        }
        let m = self.tile_count();
        let mut tiles = Vec::with_capacity(m);
        let mut shape = Vec::with_capacity(m.saturating_sub(1));
        for j in 1..=m {
            let [a, q, b] = &self.triangles[j];
            let p = self.triangles[j - 1]
                .iter()
                .find(|v| *v != a && *v != b)
                .expect("adjacent triangles share exactly two vertices");
            let (se, nw) = if j % 2 == 0 { (a, b) } else { (b, a) };
            tiles.push(Tile {
                north: self.label(nw, q)?,
                east: self.label(se, q)?,
                south: self.label(p, se)?,
                west: self.label(p, nw)?,
            });
            if j < m {
                let [a2, _, b2] = &self.triangles[j + 1];
                let next = [a2, b2];
                // The side of triangle j that is not crossed next is the glued edge.
                let east_is_next = next.contains(&se) && next.contains(&q);
                shape.push(if east_is_next { Step::Up } else { Step::Right });
            }
        }
        SnakeGraph::new(tiles, shape)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_labels() {
        let c = |a: i64, b: i64| Cusp::new(a, b);
        assert_eq!(edge_label(&c(0, 1), &c(1, 1)).unwrap(), 1);
        assert_eq!(edge_label(&c(1, 1), &c(1, 0)).unwrap(), 2);
        assert_eq!(edge_label(&c(1, 0), &c(0, 1)).unwrap(), 3);
        // The monogon triangle below l_1 has all three sides labeled 1.
        assert_eq!(edge_label(&c(0, 1), &c(1, 2)).unwrap(), 1);
        assert_eq!(edge_label(&c(1, 2), &c(1, 1)).unwrap(), 1);
        assert!(edge_label(&c(0, 1), &c(2, 1)).is_err());
    }

    #[test]
    fn initial_arcs_are_single_edges() {
        let t = Triangulation::initial();
        for k in 1..=3 {
            assert_eq!(t.descriptor(k).unwrap(), ArcDescriptor::Initial(k as Label));
        }
    }

    #[test]
    fn flipping_twice_gives_the_same_arcs() {
        let t = Triangulation::after_word(&[3, 2, 1]).unwrap();
        for k in 1..=3 {
            let back = t.flip(k).unwrap().flip(k).unwrap();
            for i in 1..=3 {
                // The lift may move by a deck transformation and swap its ends.
                let d0 = t.descriptor(i).unwrap();
                let d1 = back.descriptor(i).unwrap();
                assert!(d0 == d1 || d0 == d1.reversed(), "{d0} vs {d1}");
            }
        }
    }

    #[test]
    fn golden_word() {
        let t = Triangulation::after_word(&[3, 2]).unwrap();
        let d = t.descriptor(2).unwrap();
        assert_eq!(d.crossings().len(), 3);
        let g = t.snake_graph(2).unwrap();
        assert_eq!(g.tile_count(), 6);
        assert_eq!(g.shape_word(), "URRUR");
    }
}
