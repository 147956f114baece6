use std::cmp::Ordering;
use std::fmt;

/// A Laurent monomial `x1^e1 * ... * xn^en`; exponents may be negative.
///
/// Stored densely, so an index that is "absent" simply has exponent 0.
/// Ordering is graded lexicographic: total degree first, then the exponent of
/// `x1`, then `x2`, and so on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<i64>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn from_exponents(exps: Vec<i64>) -> Self {
        Monomial { exps }
    }

    /// The monomial `x_{var+1}^power`; `var` is zero based.
    pub fn var(nvars: usize, var: usize, power: i64) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = power;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponent(&self, var: usize) -> i64 {
        self.exps.get(var).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exps
    }

    pub fn degree(&self) -> i64 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| e * k).collect(),
        }
    }

    /// Variables with nonzero exponent, as `(index, exponent)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, e) in self.support() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
