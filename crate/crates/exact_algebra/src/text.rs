//! Canonical text form (`x1^4 + 2*x1^3*x2 - x3^-1`) and the JSON schema
//! `{"nvars": 3, "terms": [{"exp": [4,0,0], "coef": "1"}, ...]}`.

use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{AlgebraError, Integer, LaurentPolynomial};

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl LaurentPolynomial {
    /// Parses the canonical text form (and reasonable variations of it:
    /// any spacing, any term order, repeated monomials).
    pub fn parse(nvars: usize, s: &str) -> Result<Self, AlgebraError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(AlgebraError::Parse("empty input".into()));
        }
        let bytes = compact.as_bytes();
        let mut pieces = Vec::new();
        let mut start = 0;
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        let mut terms = Vec::with_capacity(pieces.len());
        for piece in pieces {
            terms.push(parse_term(nvars, piece)?);
        }
        Ok(LaurentPolynomial::from_terms(nvars, terms))
    }
}

fn parse_term(nvars: usize, piece: &str) -> Result<(Vec<i64>, Integer), AlgebraError> {
    let bad = |why: &str| AlgebraError::Parse(format!("{why} in term `{piece}`"));
    let (negative, body) = match piece.as_bytes().first() {
        Some(b'-') => (true, &piece[1..]),
        Some(b'+') => (false, &piece[1..]),
        _ => (false, piece),
    };
    if body.is_empty() {
        return Err(bad("missing term"));
    }
    let mut coef = Integer::one();
    let mut exps = vec![0i64; nvars];
    for (k, factor) in body.split('*').enumerate() {
        if let Some(rest) = factor.strip_prefix('x') {
            let (idx, power) = match rest.split_once('^') {
                Some((i, e)) => (i, e.parse::<i64>().map_err(|_| bad("bad exponent"))?),
                None => (rest, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad("bad variable index"))?;
            if idx == 0 || idx > nvars {
                return Err(bad("variable index out of range"));
            }
            exps[idx - 1] += power;
        } else if k == 0 {
            coef = factor.parse().map_err(|_| bad("bad coefficient"))?;
        } else {
            return Err(bad("unexpected factor"));
        }
    }
    if negative {
        coef = -coef;
    }
    Ok((exps, coef))
}

impl std::str::FromStr for LaurentPolynomial {
    type Err = AlgebraError;

    /// Infers the variable count from the largest index present (at least 1).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut n = 1;
        let b = s.as_bytes();
        for (i, &c) in b.iter().enumerate() {
            if c == b'x' {
                let digits: String = s[i + 1..]
                    .chars()
                    .take_while(|c| c.is_ascii_digit())
                    .collect();
                if let Ok(v) = digits.parse::<usize>() {
                    n = n.max(v);
                }
            }
        }
        LaurentPolynomial::parse(n, s)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    exp: Vec<i64>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRecord {
    nvars: usize,
    terms: Vec<TermRecord>,
}

impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rec = PolyRecord {
            nvars: self.nvars(),
            terms: self
                .terms()
                .map(|(m, c)| TermRecord {
                    exp: m.exponents().to_vec(),
                    coef: c.to_string(),
                })
                .collect(),
        };
        rec.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rec = PolyRecord::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(rec.terms.len());
        for t in rec.terms {
            if t.exp.len() != rec.nvars {
                return Err(D::Error::custom(
                    "exponent vector length differs from nvars",
                ));
            }
            let c: Integer = t.coef.parse().map_err(D::Error::custom)?;
            terms.push((t.exp, c));
        }
        Ok(LaurentPolynomial::from_terms(rec.nvars, terms))
    }
}
