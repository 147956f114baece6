use std::fmt;
use std::str::FromStr;

use exact_algebra::{Integer, LaurentPolynomial, Rational};
use serde::{Deserialize, Serialize};
use solution_tree::{EquationKind, Triple};

use crate::{mutate_matrix, ClusterError, ExchangeMatrix, MutationDiagonal};

/// Sequence of 1-based mutation directions, applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MutationWord(pub Vec<usize>);

impl MutationWord {
    pub fn new(w: Vec<usize>) -> Self {
        MutationWord(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn pushed(&self, k: usize) -> Self {
        let mut w = self.0.clone();
        w.push(k);
        MutationWord(w)
    }

    pub fn check(&self, n: usize) -> Result<(), ClusterError> {
        match self.0.iter().find(|&&k| k == 0 || k > n) {
            Some(&index) => Err(ClusterError::IndexOutOfRange { index, n }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for MutationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for MutationWord {
    type Err = String;
    /// `3,2,1`, `3 2 1` or `321`; the empty string is the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parts: Vec<&str> = if s.contains(|c: char| c == ',' || c.is_whitespace()) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|p| !p.is_empty())
                .collect()
        } else {
            s.split("").filter(|p| !p.is_empty()).collect()
        };
        parts
            .into_iter()
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| format!("bad mutation index `{p}`"))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(MutationWord)
    }
}

/// The two rank-3 patterns of interest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// `(Delta, 2I)`: exchange polynomials `x^2 + xy + y^2`.
    Twelve,
    /// `(2 Delta, I)`: exchange polynomials `x^2 + y^2`.
    Markov,
}

impl Pattern {
    pub fn matrix(self) -> ExchangeMatrix {
        match self {
            Pattern::Twelve => ExchangeMatrix::delta(),
            Pattern::Markov => ExchangeMatrix::delta().scaled(2),
        }
    }

    pub fn diagonal(self) -> MutationDiagonal {
        match self {
            Pattern::Twelve => MutationDiagonal::constant(3, 2),
            Pattern::Markov => MutationDiagonal::constant(3, 1),
        }
    }

    pub fn initial_seed(self) -> Seed {
        Seed::initial(self.matrix(), self.diagonal()).expect("sizes agree")
    }

    /// The equation whose solutions the pattern specializes to.
    pub fn kind(self) -> EquationKind {
        match self {
            Pattern::Twelve => EquationKind::Twelve,
            Pattern::Markov => EquationKind::Markov,
        }
    }
}

impl From<EquationKind> for Pattern {
    fn from(kind: EquationKind) -> Self {
        match kind {
            EquationKind::Twelve => Pattern::Twelve,
            EquationKind::Markov => Pattern::Markov,
        }
    }
}

/// Cluster (as Laurent polynomials in the initial variables), exchange matrix and diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    cluster: Vec<LaurentPolynomial>,
    matrix: ExchangeMatrix,
    diagonal: MutationDiagonal,
}

impl Seed {
    pub fn new(
        cluster: Vec<LaurentPolynomial>,
        matrix: ExchangeMatrix,
        diagonal: MutationDiagonal,
    ) -> Result<Self, ClusterError> {
        let n = matrix.n();
        if cluster.len() != n || diagonal.n() != n {
            return Err(ClusterError::DimensionMismatch(format!(
                "{} cluster variables, {n}x{n} matrix, {} diagonal entries",
                cluster.len(),
                diagonal.n()
            )));
        }
        if let Some(p) = cluster.iter().find(|p| p.nvars() != n) {
            return Err(ClusterError::DimensionMismatch(format!(
                "cluster variable in {} variables, expected {n}",
                p.nvars()
            )));
        }
        Ok(Seed {
            cluster,
            matrix,
            diagonal,
        })
    }

    /// The seed `(x_1, ..., x_n)` itself.
    pub fn initial(
        matrix: ExchangeMatrix,
        diagonal: MutationDiagonal,
    ) -> Result<Self, ClusterError> {
        let n = matrix.n();
        let cluster = (0..n).map(|i| LaurentPolynomial::var(n, i)).collect();
        Seed::new(cluster, matrix, diagonal)
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn cluster(&self) -> &[LaurentPolynomial] {
        &self.cluster
    }

    /// Cluster variable `x_k`, 1-based.
    pub fn variable(&self, k: usize) -> &LaurentPolynomial {
        &self.cluster[k - 1]
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn diagonal(&self) -> &MutationDiagonal {
        &self.diagonal
    }
}

/// `sum_{s=0}^{d} prod_i y_i^{d [-b_ik]_+ + s b_ik}` in abstract variables `y`.
fn exchange_polynomial(
    b: &ExchangeMatrix,
    k: usize,
    d: &Integer,
) -> Result<LaurentPolynomial, ClusterError> {
    let n = b.n();
    let d = i64::try_from(d)
        .map_err(|_| ClusterError::DimensionMismatch("diagonal entry too large".into()))?;
    let col: Vec<i64> = (1..=n)
        .map(|i| i64::try_from(b.get(i, k)))
        .collect::<Result<_, _>>()
        .map_err(|_| ClusterError::DimensionMismatch("matrix entry too large".into()))?;
    let terms = (0..=d).map(|s| {
        let exps: Vec<i64> = col.iter().map(|&bik| d * (-bik).max(0) + s * bik).collect();
        (exps, 1i64)
    });
    Ok(LaurentPolynomial::from_terms(n, terms))
}

/// Generalized exchange in direction `k` (1-based), then matrix mutation.
pub fn mutate_seed(s: &Seed, k: usize) -> Result<Seed, ClusterError> {
    let n = s.n();
    if k == 0 || k > n {
        return Err(ClusterError::IndexOutOfRange { index: k, n });
    }
    let violation = |source| ClusterError::LaurentViolation {
        position: k,
        source,
    };
    let numerator = exchange_polynomial(&s.matrix, k, s.diagonal.get(k))?
        .substitute(&s.cluster)
        .map_err(violation)?;
    let fresh = numerator.div_exact(&s.cluster[k - 1]).map_err(violation)?;
    let mut cluster = s.cluster.clone();
    cluster[k - 1] = fresh;
    Ok(Seed {
        cluster,
        matrix: mutate_matrix(&s.matrix, k, &s.diagonal)?,
        diagonal: s.diagonal.clone(),
    })
}

pub fn apply_word(s: &Seed, w: &MutationWord) -> Result<Seed, ClusterError> {
    w.check(s.n())?;
    let mut cur = s.clone();
    for &k in &w.0 {
        cur = mutate_seed(&cur, k)?;
    }
    Ok(cur)
}

/// Evaluates every cluster variable at `x_i = 1`.
pub fn specialize_ones(s: &Seed) -> Vec<Rational> {
    s.cluster
        .iter()
        .map(|p| Rational::from_integer(p.eval_at_ones()))
        .collect()
}

/// `specialize_ones` as a triple, when `n = 3` and every value is an integer.
pub fn specialize_triple(s: &Seed) -> Option<Triple> {
    let vals = specialize_ones(s);
    if vals.len() != 3 || vals.iter().any(|v| !v.is_integer()) {
        return None;
    }
    let [a, b, c]: [Rational; 3] = vals.try_into().ok()?;
    Some(Triple::new(a.to_integer(), b.to_integer(), c.to_integer()))
}

/// JSON form of a seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRecord {
    pub matrix: Vec<Vec<i64>>,
    pub diagonal: Vec<i64>,
    pub cluster: Vec<String>,
}

impl SeedRecord {
    pub fn from_seed(s: &Seed) -> Result<Self, ClusterError> {
        let matrix = s.matrix.to_i64_rows().ok_or_else(|| {
            ClusterError::BadRecord("matrix entry does not fit in 64 bits".into())
        })?;
        let diagonal = s
            .diagonal
            .entries()
            .iter()
            .map(|v| {
                i64::try_from(v)
                    .map_err(|_| ClusterError::BadRecord("diagonal entry too large".into()))
            })
            .collect::<Result<_, _>>()?;
        Ok(SeedRecord {
            matrix,
            diagonal,
            cluster: s.cluster.iter().map(|p| p.to_string()).collect(),
        })
    }

    pub fn to_seed(&self) -> Result<Seed, ClusterError> {
        let n = self.matrix.len();
        let matrix = ExchangeMatrix::from_i64(&self.matrix)?;
        let diagonal =
            MutationDiagonal::new(self.diagonal.iter().map(|&d| Integer::from(d)).collect())?;
        let cluster = self
            .cluster
            .iter()
            .map(|t| {
                LaurentPolynomial::parse(n, t).map_err(|e| ClusterError::BadRecord(e.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Seed::new(cluster, matrix, diagonal)
    }
}

/// Largest total degree of a denominator over the cluster.
pub(crate) fn max_denominator_degree(s: &Seed) -> i64 {
    s.cluster
        .iter()
        .map(|p| p.denominator().degree())
        .max()
        .unwrap_or(0)
}
