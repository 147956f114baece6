use std::fmt;
use std::str::FromStr;

use exact_algebra::Monomial;
use serde::{Deserialize, Serialize};

use crate::SnakeError;

/// Index of an arc of the initial triangulation, 1, 2 or 3.
pub type Label = u8;

/// `l + k` on the cyclic labels 1, 2, 3.
pub(crate) fn shift(l: Label, k: u8) -> Label {
    (l - 1 + k) % 3 + 1
}

/// Direction in which the arc goes around the orbifold point of a monogon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Passage {
    /// The arc turns right inside the monogon; the next triangle is pasted on the right.
    Clockwise,
    Counterclockwise,
}

impl Passage {
    pub fn reversed(self) -> Self {
        match self {
            Passage::Clockwise => Passage::Counterclockwise,
            Passage::Counterclockwise => Passage::Clockwise,
        }
    }
}

/// One pass through the monogon bounded by `l_label`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub label: Label,
    pub passage: Passage,
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.passage {
            Passage::Clockwise => "cw",
            Passage::Counterclockwise => "ccw",
        };
        write!(f, "{}{}", self.label, p)
    }
}

impl FromStr for Crossing {
    type Err = SnakeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SnakeError::Parse(format!("bad crossing `{s}` (expected e.g. 3cw or 2ccw)"));
        let (digits, rest) = s.split_at(s.find(|c: char| !c.is_ascii_digit()).ok_or_else(bad)?);
        let label: Label = digits.parse().map_err(|_| bad())?;
        if !(1..=3).contains(&label) {
            return Err(SnakeError::Parse(format!("label {label} not in 1..=3")));
        }
        let passage = match rest.to_ascii_lowercase().as_str() {
            "cw" => Passage::Clockwise,
            "ccw" => Passage::Counterclockwise,
            _ => return Err(bad()),
        };
        Ok(Crossing { label, passage })
    }
}

/// An arc from the puncture to itself, either one of the initial arcs or the
/// sequence of monogons it passes through.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArcDescriptor {
    Initial(Label),
    Crossings(Vec<Crossing>),
}

impl ArcDescriptor {
    pub fn crossings(&self) -> &[Crossing] {
        match self {
            ArcDescriptor::Initial(_) => &[],
            ArcDescriptor::Crossings(c) => c,
        }
    }

    /// The same arc traversed from the other end.
    pub fn reversed(&self) -> Self {
        match self {
            ArcDescriptor::Initial(l) => ArcDescriptor::Initial(*l),
            ArcDescriptor::Crossings(c) => ArcDescriptor::Crossings(
                c.iter()
                    .rev()
                    .map(|x| Crossing {
                        label: x.label,
                        passage: x.passage.reversed(),
                    })
                    .collect(),
            ),
        }
    }

    /// Structural checks: labels in range, nonempty, and no two consecutive
    /// passes through the same monogon (that would bound a bigon).
    pub fn check(&self) -> Result<(), SnakeError> {
        match self {
            ArcDescriptor::Initial(l) if (1..=3).contains(l) => Ok(()),
            ArcDescriptor::Initial(l) => {
                Err(SnakeError::InvalidArc(format!("no initial arc l{l}")))
            }
            ArcDescriptor::Crossings(c) if c.is_empty() => {
                Err(SnakeError::InvalidArc("empty crossing list".into()))
            }
            ArcDescriptor::Crossings(c) => {
                if let Some(x) = c.iter().find(|x| !(1..=3).contains(&x.label)) {
                    return Err(SnakeError::InvalidArc(format!(
                        "label {} not in 1..=3",
                        x.label
                    )));
                }
                if let Some(w) = c.windows(2).find(|w| w[0].label == w[1].label) {
                    return Err(SnakeError::InvalidArc(format!(
                        "consecutive passes {} {} through the same monogon are not minimal",
                        w[0], w[1]
                    )));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for ArcDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcDescriptor::Initial(l) => write!(f, "arc l{l}"),
            ArcDescriptor::Crossings(c) => {
                f.write_str("arc")?;
                for x in c {
                    write!(f, " {x}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for ArcDescriptor {
    type Err = SnakeError;
    /// `arc 3ccw 2cw 3cw`, `3ccw 2cw 3cw`, `arc l1` or `l1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut words: Vec<&str> = s.split_whitespace().collect();
        if words.first().is_some_and(|w| w.eq_ignore_ascii_case("arc")) {
            words.remove(0);
        }
        let arc = match words.as_slice() {
            [] => return Err(SnakeError::Parse("empty arc".into())),
            [w] if w.starts_with(['l', 'L']) => {
                let l: Label = w[1..]
                    .parse()
                    .map_err(|_| SnakeError::Parse(format!("bad initial arc `{w}`")))?;
                ArcDescriptor::Initial(l)
            }
            ws => ArcDescriptor::Crossings(ws.iter().map(|w| w.parse()).collect::<Result<_, _>>()?),
        };
        arc.check()?;
        Ok(arc)
    }
}

/// Product of `x_label` over the monogon passes, each pass counted once.
pub fn cross_monomial(arc: &ArcDescriptor) -> Monomial {
    let mut exps = vec![0i64; 3];
    for c in arc.crossings() {
        exps[(c.label - 1) as usize] += 1;
    }
    Monomial::from_exponents(exps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let a: ArcDescriptor = "arc 3ccw 2cw 3cw".parse().unwrap();
        assert_eq!(a.to_string(), "arc 3ccw 2cw 3cw");
        assert_eq!("3ccw 2cw 3cw".parse::<ArcDescriptor>().unwrap(), a);
        assert_eq!(
            "l2".parse::<ArcDescriptor>().unwrap(),
            ArcDescriptor::Initial(2)
        );
        assert_eq!(
            "arc l1".parse::<ArcDescriptor>().unwrap().to_string(),
            "arc l1"
        );
        assert!("arc".parse::<ArcDescriptor>().is_err());
        assert!("arc 4cw".parse::<ArcDescriptor>().is_err());
        assert!("arc 3cw 3ccw".parse::<ArcDescriptor>().is_err());
        assert!("arc 3up".parse::<ArcDescriptor>().is_err());
        assert!("l7".parse::<ArcDescriptor>().is_err());
    }

    #[test]
    fn cross_examples() {
        let a: ArcDescriptor = "3ccw 2cw 3cw".parse().unwrap();
        assert_eq!(cross_monomial(&a), Monomial::from_exponents(vec![0, 1, 2]));
        assert_eq!(
            cross_monomial(&"1cw".parse().unwrap()),
            Monomial::from_exponents(vec![1, 0, 0])
        );
        assert!(cross_monomial(&ArcDescriptor::Initial(1)).is_one());
    }

    #[test]
    fn reversal() {
        let a: ArcDescriptor = "3ccw 2cw 3cw".parse().unwrap();
        assert_eq!(a.reversed().to_string(), "arc 3ccw 2ccw 3cw");
        assert_eq!(a.reversed().reversed(), a);
        assert_eq!(shift(3, 1), 1);
        assert_eq!(shift(1, 2), 3);
    }
}
