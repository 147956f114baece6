use std::fmt;

use exact_algebra::{Integer, Rational};
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::ClusterError;

/// Largest skew-symmetrizer entry the constructor accepts.
const SYMMETRIZER_BOUND: u64 = 1_000_000;

/// Square integer matrix with a positive diagonal `S` making `S B` skew-symmetric.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix {
    rows: Vec<Vec<Integer>>,
    symmetrizer: Vec<Integer>,
}

impl ExchangeMatrix {
    pub fn new(rows: Vec<Vec<Integer>>) -> Result<Self, ClusterError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(ClusterError::NotSquare);
        }
        let symmetrizer = find_symmetrizer(&rows)?;
        Ok(ExchangeMatrix { rows, symmetrizer })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self, ClusterError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| Integer::from(v)).collect())
                .collect(),
        )
    }

    /// The cyclic 3x3 matrix with rows `(0,1,-1), (-1,0,1), (1,-1,0)`.
    pub fn delta() -> Self {
        Self::from_i64(&[vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]).unwrap()
    }

    pub fn zero(n: usize) -> Self {
        ExchangeMatrix {
            rows: vec![vec![Integer::zero(); n]; n],
            symmetrizer: vec![Integer::one(); n],
        }
    }

    pub fn scaled(&self, c: i64) -> Self {
        Self::new(
            self.rows
                .iter()
                .map(|r| r.iter().map(|v| v * c).collect())
                .collect(),
        )
        .expect("scaling keeps skew-symmetrizability")
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Entry `b_ij`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.rows[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<Integer>] {
        &self.rows
    }

    /// The minimal positive integer skew-symmetrizer found on construction.
    pub fn symmetrizer(&self) -> &[Integer] {
        &self.symmetrizer
    }

    pub fn is_symmetrized_by(&self, s: &[Integer]) -> bool {
        let n = self.n();
        s.len() == n
            && s.iter().all(|v| v.is_positive())
            && (0..n)
                .all(|i| (0..n).all(|j| &s[i] * &self.rows[i][j] == -(&s[j] * &self.rows[j][i])))
    }

    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|v| i64::try_from(v).ok()).collect())
            .collect()
    }
}

impl fmt::Debug for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExchangeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|v| v.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Propagates `s_j = s_i * b_ij / -b_ji` through each connected component,
/// then scales to the smallest integer vector.
#[allow(clippy::needless_range_loop)]
fn find_symmetrizer(rows: &[Vec<Integer>]) -> Result<Vec<Integer>, ClusterError> {
    let n = rows.len();
    for i in 0..n {
        if !rows[i][i].is_zero() {
            return Err(ClusterError::NotSkewSymmetrizable);
        }
        for j in 0..n {
            let (a, b) = (&rows[i][j], &rows[j][i]);
            if a.is_zero() != b.is_zero() || (!a.is_zero() && a.signum() == b.signum()) {
                return Err(ClusterError::NotSkewSymmetrizable);
            }
        }
    }
    let mut s: Vec<Option<Rational>> = vec![None; n];
    for root in 0..n {
        if s[root].is_some() {
            continue;
        }
        s[root] = Some(Rational::one());
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let si = s[i].clone().unwrap();
            for j in 0..n {
                if rows[i][j].is_zero() {
                    continue;
                }
                let sj = &si * Rational::new(rows[i][j].clone(), -rows[j][i].clone());
                match &s[j] {
                    Some(existing) if *existing != sj => {
                        return Err(ClusterError::NotSkewSymmetrizable)
                    }
                    Some(_) => {}
                    None => {
                        s[j] = Some(sj);
                        stack.push(j);
                    }
                }
            }
        }
    }
    let s: Vec<Rational> = s.into_iter().map(Option::unwrap).collect();
    let lcm = s.iter().fold(Integer::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<Integer> = s.iter().map(|r| (r * &lcm).to_integer()).collect();
    let g = ints.iter().fold(Integer::zero(), |acc, v| acc.gcd(v));
    let ints: Vec<Integer> = ints.into_iter().map(|v| v / &g).collect();
    if ints.iter().any(|v| v > &Integer::from(SYMMETRIZER_BOUND)) {
        return Err(ClusterError::SymmetrizerTooLarge);
    }
    Ok(ints)
}

/// Diagonal `D = diag(d_1, ..., d_n)` of exchange-polynomial degrees.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MutationDiagonal(Vec<Integer>);

impl MutationDiagonal {
    pub fn new(d: Vec<Integer>) -> Result<Self, ClusterError> {
        if d.iter().any(|v| !v.is_positive()) {
            return Err(ClusterError::NonPositiveDiagonal);
        }
        Ok(MutationDiagonal(d))
    }

    pub fn constant(n: usize, d: u64) -> Self {
        Self::new(vec![Integer::from(d); n]).unwrap()
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `d_k`, 1-based.
    pub fn get(&self, k: usize) -> &Integer {
        &self.0[k - 1]
    }

    pub fn entries(&self) -> &[Integer] {
        &self.0
    }
}

impl fmt::Debug for MutationDiagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "diag({})", cells.join(","))
    }
}

fn pos(v: &Integer) -> Integer {
    if v.is_positive() {
        v.clone()
    } else {
        Integer::zero()
    }
}

/// Matrix mutation in direction `k` (1-based):
/// `b'_ij = -b_ij` if `i = k` or `j = k`, otherwise
/// `b_ij + d_k ([b_ik]_+ b_kj + b_ik [-b_kj]_+)`.
#[allow(clippy::needless_range_loop)]
pub fn mutate_matrix(
    b: &ExchangeMatrix,
    k: usize,
    d: &MutationDiagonal,
) -> Result<ExchangeMatrix, ClusterError> {
    let n = b.n();
    if k == 0 || k > n {
        return Err(ClusterError::IndexOutOfRange { index: k, n });
    }
    if d.n() != n {
        return Err(ClusterError::DimensionMismatch(format!(
            "matrix is {n}x{n}, diagonal has {} entries",
            d.n()
        )));
    }
    let kk = k - 1;
    let dk = d.get(k);
    let mut rows = b.rows.clone();
    for i in 0..n {
        for j in 0..n {
            let bij = &b.rows[i][j];
            rows[i][j] = if i == kk || j == kk {
                -bij
            } else {
                let bik = &b.rows[i][kk];
                let bkj = &b.rows[kk][j];
                bij + dk * (pos(bik) * bkj + bik * pos(&-bkj))
            };
        }
    }
    let out = ExchangeMatrix {
        rows,
        symmetrizer: b.symmetrizer.clone(),
    };
    debug_assert!(out.is_symmetrized_by(&b.symmetrizer));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_flips_sign() {
        let d = MutationDiagonal::constant(3, 2);
        let delta = ExchangeMatrix::delta();
        let neg = delta.scaled(-1);
        for k in 1..=3 {
            assert_eq!(mutate_matrix(&delta, k, &d).unwrap(), neg);
            assert_eq!(mutate_matrix(&neg, k, &d).unwrap(), delta);
        }
        let z = ExchangeMatrix::zero(3);
        assert_eq!(mutate_matrix(&z, 2, &d).unwrap(), z);
    }

    #[test]
    fn symmetrizer_search() {
        let b = ExchangeMatrix::from_i64(&[vec![0, 2], vec![-1, 0]]).unwrap();
        assert_eq!(b.symmetrizer(), &[Integer::from(1), Integer::from(2)]);
        assert!(b.is_symmetrized_by(b.symmetrizer()));
        assert!(ExchangeMatrix::from_i64(&[vec![0, 1], vec![1, 0]]).is_err());
        assert!(ExchangeMatrix::from_i64(&[vec![0, 1], vec![0, 0]]).is_err());
        // Inconsistent ratios around a cycle.
        let cyc = ExchangeMatrix::from_i64(&[vec![0, 1, -1], vec![-2, 0, 1], vec![1, -1, 0]]);
        assert_eq!(cyc, Err(ClusterError::NotSkewSymmetrizable));
        assert_eq!(
            ExchangeMatrix::from_i64(&[vec![0, 1_000_001], vec![-1, 0]]),
            Err(ClusterError::SymmetrizerTooLarge)
        );
    }

    #[test]
    fn mutation_errors() {
        let d = MutationDiagonal::constant(3, 2);
        assert!(mutate_matrix(&ExchangeMatrix::delta(), 4, &d).is_err());
        assert!(mutate_matrix(
            &ExchangeMatrix::delta(),
            1,
            &MutationDiagonal::constant(2, 1)
        )
        .is_err());
        assert!(MutationDiagonal::new(vec![Integer::from(0)]).is_err());
    }
}
