use std::fmt;
use std::str::FromStr;

use exact_algebra::Integer;
use num_integer::Integer as _;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::TreeError;

/// Which equation a triple is meant to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EquationKind {
    /// `(x+y)^2 + (y+z)^2 + (z+x)^2 = 12xyz`
    Twelve,
    /// `x^2 + y^2 + z^2 = 3xyz`
    Markov,
}

impl EquationKind {
    /// The root chain `(1,1,1) -> (1,1,r1) -> (1,r2,r1)`.
    pub fn root_chain(self) -> [Triple; 3] {
        match self {
            EquationKind::Twelve => [
                Triple::from_u64(1, 1, 1),
                Triple::from_u64(1, 1, 3),
                Triple::from_u64(1, 13, 3),
            ],
            EquationKind::Markov => [
                Triple::from_u64(1, 1, 1),
                Triple::from_u64(1, 1, 2),
                Triple::from_u64(1, 5, 2),
            ],
        }
    }

    /// Singular solutions up to order.
    pub fn singular_solutions(self) -> [[u64; 3]; 2] {
        match self {
            EquationKind::Twelve => [[1, 1, 1], [1, 1, 3]],
            EquationKind::Markov => [[1, 1, 1], [1, 1, 2]],
        }
    }
}

impl FromStr for EquationKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "twelve" | "12" => Ok(EquationKind::Twelve),
            "markov" => Ok(EquationKind::Markov),
            other => Err(format!(
                "unknown equation kind `{other}` (expected twelve or markov)"
            )),
        }
    }
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquationKind::Twelve => "twelve",
            EquationKind::Markov => "markov",
        })
    }
}

/// Slot index 1, 2 or 3.
pub type Position = u8;

/// Position-ordered triple `(a, b, c)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Triple(pub [Integer; 3]);

impl Triple {
    pub fn new(a: impl Into<Integer>, b: impl Into<Integer>, c: impl Into<Integer>) -> Self {
        Triple([a.into(), b.into(), c.into()])
    }

    pub fn from_u64(a: u64, b: u64, c: u64) -> Self {
        Triple::new(a, b, c)
    }

    pub fn a(&self) -> &Integer {
        &self.0[0]
    }
    pub fn b(&self) -> &Integer {
        &self.0[1]
    }
    pub fn c(&self) -> &Integer {
        &self.0[2]
    }

    /// Component at a 1-based position.
    pub fn get(&self, k: Position) -> &Integer {
        &self.0[(k - 1) as usize]
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|x| x.is_positive())
    }

    pub fn max(&self) -> &Integer {
        self.0.iter().max().unwrap()
    }

    /// Position of the strict maximum, or `None` on a tie.
    pub fn max_position(&self) -> Option<Position> {
        let m = self.max();
        let mut hits = (0..3).filter(|&i| &self.0[i] == m);
        let first = hits.next()?;
        hits.next().is_none().then_some(first as Position + 1)
    }

    /// Components in increasing order; the multiset form used for uniqueness checks.
    pub fn sorted(&self) -> [Integer; 3] {
        let mut s = self.0.clone();
        s.sort();
        s
    }

    fn with(&self, k: Position, v: Integer) -> Triple {
        let mut t = self.clone();
        t.0[(k - 1) as usize] = v;
        t
    }

    fn others(&self, k: Position) -> (&Integer, &Integer) {
        match k {
            1 => (&self.0[1], &self.0[2]),
            2 => (&self.0[0], &self.0[2]),
            _ => (&self.0[0], &self.0[1]),
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Triple {
    type Err = String;
    /// Accepts `1 13 3`, `1,13,3` or `(1,13,3)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = cleaned
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .collect();
        if parts.len() != 3 {
            return Err(format!("expected three integers, got `{s}`"));
        }
        let mut v = Vec::with_capacity(3);
        for p in parts {
            v.push(
                p.parse::<Integer>()
                    .map_err(|_| format!("bad integer `{p}`"))?,
            );
        }
        let c = v.pop().unwrap();
        let b = v.pop().unwrap();
        let a = v.pop().unwrap();
        Ok(Triple([a, b, c]))
    }
}

fn check_position(k: Position) -> Result<(), TreeError> {
    if (1..=3).contains(&k) {
        Ok(())
    } else {
        Err(TreeError::PositionOutOfRange(k))
    }
}

/// Exact check of the equation; non-positive triples never verify.
pub fn verify(t: &Triple, kind: EquationKind) -> bool {
    if !t.is_positive() {
        return false;
    }
    let [x, y, z] = &t.0;
    let prod = x * y * z;
    match kind {
        EquationKind::Twelve => {
            let s = (x + y) * (x + y) + (y + z) * (y + z) + (z + x) * (z + x);
            s == prod * 12u32
        }
        EquationKind::Markov => x * x + y * y + z * z == prod * 3u32,
    }
}

/// Replaces component `k` by the other root of the equation viewed as a
/// quadratic in that component.
pub fn mutate(t: &Triple, k: Position, kind: EquationKind) -> Result<Triple, TreeError> {
    check_position(k)?;
    if !verify(t, kind) {
        return Err(TreeError::NotASolution(t.clone()));
    }
    let r = t.get(k);
    let (p, q) = t.others(k);
    let v = match kind {
        EquationKind::Twelve => p * q * 6u32 - r - p - q,
        EquationKind::Markov => p * q * 3u32 - r,
    };
    if !v.is_positive() {
        return Err(TreeError::NonPositiveResult {
            triple: t.clone(),
            position: k,
        });
    }
    Ok(t.with(k, v))
}

/// Same mutation through the product of the two roots:
/// `(p^2 + q^2 + pq) / r` (Markov: `(p^2 + q^2) / r`).
pub fn mutate_by_division(
    t: &Triple,
    k: Position,
    kind: EquationKind,
) -> Result<Triple, TreeError> {
    check_position(k)?;
    if !verify(t, kind) {
        return Err(TreeError::NotASolution(t.clone()));
    }
    let r = t.get(k);
    let (p, q) = t.others(k);
    let num = match kind {
        EquationKind::Twelve => p * p + q * q + p * q,
        EquationKind::Markov => p * p + q * q,
    };
    let (quot, rem) = num.div_rem(r);
    if !num_traits::Zero::is_zero(&rem) {
        return Err(TreeError::NotDivisible {
            triple: t.clone(),
            position: k,
        });
    }
    Ok(t.with(k, quot))
}

/// Two or more equal components.
pub fn is_singular(t: &Triple) -> bool {
    let [a, b, c] = &t.0;
    a == b || b == c || a == c
}

pub fn pairwise_coprime(t: &Triple) -> bool {
    let [a, b, c] = &t.0;
    a.gcd(b).is_one() && b.gcd(c).is_one() && a.gcd(c).is_one()
}
