use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::Sign;
use num_traits::{One, Signed, Zero};

use crate::kronecker;
use crate::monomial::Monomial;
use crate::{AlgebraError, Integer, Rational};

/// Products smaller than this many term pairs go through the plain hash-map
/// multiplication.
const PACKED_MUL_THRESHOLD: usize = 256;

/// One term of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub monomial: Monomial,
    pub coef: Integer,
}

/// Multivariate Laurent polynomial in `x1..xn` with integer coefficients.
///
/// Terms are kept in a map ordered by graded lex, zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Integer>,
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        LaurentPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Integer::one())
    }

    pub fn constant(nvars: usize, c: impl Into<Integer>) -> Self {
        Self::from_monomial(Monomial::one(nvars), c)
    }

    /// The variable `x_{var+1}`; `var` is zero based.
    pub fn var(nvars: usize, var: usize) -> Self {
        assert!(
            var < nvars,
            "variable index {var} out of range for {nvars} variables"
        );
        Self::from_monomial(Monomial::var(nvars, var, 1), 1)
    }

    pub fn from_monomial(m: Monomial, c: impl Into<Integer>) -> Self {
        let nvars = m.nvars();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPolynomial { nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, combining
    /// repeated monomials. Panics if an exponent vector has the wrong length.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, C)>,
        C: Into<Integer>,
    {
        let mut map: BTreeMap<Monomial, Integer> = BTreeMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector length");
            *map.entry(Monomial::from_exponents(exps)).or_default() += c.into();
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPolynomial { nvars, terms: map }
    }

    pub(crate) fn from_map(nvars: usize, terms: BTreeMap<Monomial, Integer>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        LaurentPolynomial { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(m, c)| m.is_one() && c.is_one())
    }

    /// Single term, nonzero.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coefficient(&self, m: &Monomial) -> Integer {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in canonical (descending graded lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Integer)> + '_ {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Integer)> {
        self.terms.iter().next_back()
    }

    /// True iff every stored coefficient is positive. The zero polynomial
    /// counts as positive (it has no coefficients to violate the condition).
    pub fn is_laurent_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// True iff no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.exponents().iter().all(|&e| e >= 0))
    }

    /// Common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    /// Smallest monomial `m` with `self * m` free of negative exponents.
    pub fn denominator(&self) -> Monomial {
        let exps = (0..self.nvars)
            .map(|i| {
                let lo = self.terms.keys().map(|m| m.exponent(i)).min().unwrap_or(0);
                (-lo).max(0)
            })
            .collect();
        Monomial::from_exponents(exps)
    }

    /// Sum of coefficients, i.e. the value at `x1 = ... = xn = 1`.
    pub fn eval_at_ones(&self) -> Integer {
        self.terms.values().sum()
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Integer) -> Self {
        assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect();
        LaurentPolynomial {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `values[i]` for `x_{i+1}`. Negative exponents are only
    /// allowed on variables whose value is a single term (a unit).
    pub fn substitute(&self, values: &[LaurentPolynomial]) -> Result<Self, AlgebraError> {
        if values.len() != self.nvars {
            return Err(AlgebraError::PointLength {
                expected: self.nvars,
                got: values.len(),
            });
        }
        let target = values.first().map(|v| v.nvars).unwrap_or(0);
        if let Some(v) = values.iter().find(|v| v.nvars != target) {
            return Err(AlgebraError::VariableCountMismatch {
                left: target,
                right: v.nvars,
            });
        }
        let mut powers: HashMap<(usize, i64), LaurentPolynomial> = HashMap::new();
        let mut acc = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, e) in m.support() {
                if let Entry::Vacant(slot) = powers.entry((i, e)) {
                    let p = if e > 0 {
                        values[i].pow(e as u32)
                    } else if values[i].is_monomial() {
                        let (vm, vc) = values[i].leading_term().unwrap();
                        if !vc.abs().is_one() {
                            return Err(AlgebraError::NotDivisible);
                        }
                        Self::from_monomial(vm.pow(e), vc.pow((-e) as u32))
                    } else {
                        return Err(AlgebraError::NotDivisible);
                    };
                    slot.insert(p);
                }
                term = &term * &powers[&(i, e)];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Exchanges two variables (zero based).
    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.swap(i, j);
                (Monomial::from_exponents(e), c.clone())
            })
            .collect();
        LaurentPolynomial {
            nvars: self.nvars,
            terms,
        }
    }

    fn check_nvars(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_nvars(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m, c);
        }
        Ok(LaurentPolynomial {
            nvars: self.nvars,
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_nvars(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if self.is_monomial() {
            let (m, c) = self.leading_term().unwrap();
            return Ok(other.mul_monomial(m, c));
        }
        if other.is_monomial() {
            let (m, c) = other.leading_term().unwrap();
            return Ok(self.mul_monomial(m, c));
        }
        if self.len().saturating_mul(other.len()) >= PACKED_MUL_THRESHOLD {
            if let Some(p) = kronecker::mul(self, other) {
                return Ok(p);
            }
        }
        Ok(self.mul_schoolbook(other))
    }

    pub(crate) fn mul_schoolbook(&self, other: &Self) -> Self {
        let mut acc: HashMap<Monomial, Integer> =
            HashMap::with_capacity(self.len().saturating_mul(other.len()).min(1 << 20));
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        LaurentPolynomial {
            nvars: self.nvars,
            terms,
        }
    }

    /// Exact quotient `r` with `r * divisor == self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        self.check_nvars(divisor)?;
        if divisor.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if divisor.is_monomial() {
            let (m, c) = divisor.leading_term().unwrap();
            let mut terms = BTreeMap::new();
            for (k, v) in &self.terms {
                if !(v % c).is_zero() {
                    return Err(AlgebraError::NotDivisible);
                }
                terms.insert(k.div(m), v / c);
            }
            return Ok(LaurentPolynomial {
                nvars: self.nvars,
                terms,
            });
        }
        if let Some(q) = kronecker::div(self, divisor) {
            return Ok(q);
        }
        self.long_division(divisor)
    }

    /// Division by repeatedly cancelling the leading term; `divisor` must not
    /// be zero.
    pub(crate) fn long_division(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        // Per variable, the exponent range of a product is the sum of the
        // ranges of its factors, which pins the quotient's range.
        let (lo_a, hi_a) = self.exponent_bounds();
        let (lo_b, hi_b) = divisor.exponent_bounds();
        let lo: Vec<i64> = lo_a.iter().zip(&lo_b).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = hi_a.iter().zip(&hi_b).map(|(a, b)| a - b).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(AlgebraError::NotDivisible);
        }
        let (lead_m, lead_c) = divisor.leading_term().unwrap();
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((m, c)) = rem.iter().next_back() {
            if !(c % lead_c).is_zero() {
                return Err(AlgebraError::NotDivisible);
            }
            let qm = m.div(lead_m);
            let in_box = qm
                .exponents()
                .iter()
                .zip(lo.iter().zip(&hi))
                .all(|(e, (l, h))| l <= e && e <= h);
            if !in_box {
                return Err(AlgebraError::NotDivisible);
            }
            let qc = c / lead_c;
            for (dm, dc) in &divisor.terms {
                add_term(&mut rem, &qm.mul(dm), &-(dc * &qc));
            }
            quot.insert(qm, qc);
        }
        Ok(LaurentPolynomial {
            nvars: self.nvars,
            terms: quot,
        })
    }

    /// Per-variable minimum and maximum exponents. Zero polynomial gives zeros.
    pub fn exponent_bounds(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = vec![i64::MAX; self.nvars];
        let mut hi = vec![i64::MIN; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                lo[i] = lo[i].min(e);
                hi[i] = hi[i].max(e);
            }
        }
        if self.terms.is_empty() {
            lo.fill(0);
            hi.fill(0);
        }
        (lo, hi)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational, AlgebraError> {
        if point.len() != self.nvars {
            return Err(AlgebraError::PointLength {
                expected: self.nvars,
                got: point.len(),
            });
        }
        if point.iter().all(|r| r.is_one()) {
            return Ok(Rational::from_integer(self.eval_at_ones()));
        }
        let (lo, hi) = self.exponent_bounds();
        // Power tables per variable over the exponent range actually used.
        let mut tables: Vec<Vec<Rational>> = Vec::with_capacity(self.nvars);
        for (i, x) in point.iter().enumerate() {
            if self.terms.is_empty() {
                tables.push(Vec::new());
                continue;
            }
            if x.is_zero() && lo[i] < 0 {
                return Err(AlgebraError::ZeroToNegativePower { var: i + 1 });
            }
            let mut row = Vec::with_capacity((hi[i] - lo[i] + 1) as usize);
            for e in lo[i]..=hi[i] {
                row.push(rational_pow(x, e));
            }
            tables.push(row);
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = Rational::from_integer(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                v *= &tables[i][(e - lo[i]) as usize];
            }
            acc += v;
        }
        Ok(acc)
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Monomial, Integer> {
        &self.terms
    }

    /// Sign shared by all coefficients, if any.
    pub(crate) fn uniform_sign(&self) -> Option<Sign> {
        let mut it = self.terms.values().map(|c| c.sign());
        let s = it.next()?;
        it.all(|t| t == s).then_some(s)
    }
}

fn rational_pow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

fn add_term(map: &mut BTreeMap<Monomial, Integer>, m: &Monomial, c: &Integer) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(m) {
        Some(v) => {
            *v += c;
            if v.is_zero() {
                map.remove(m);
            }
        }
        None => {
            map.insert(m.clone(), c.clone());
        }
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        /// Panics on a variable-count mismatch; use the checked method otherwise.
        impl $tr<&LaurentPolynomial> for &LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
                self.$checked(rhs).expect("variable count mismatch")
            }
        }
        impl $tr<LaurentPolynomial> for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $method(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn lp_add(
    p: &LaurentPolynomial,
    q: &LaurentPolynomial,
) -> Result<LaurentPolynomial, AlgebraError> {
    p.checked_add(q)
}

pub fn lp_mul(
    p: &LaurentPolynomial,
    q: &LaurentPolynomial,
) -> Result<LaurentPolynomial, AlgebraError> {
    p.checked_mul(q)
}

pub fn lp_div_exact(
    p: &LaurentPolynomial,
    q: &LaurentPolynomial,
) -> Result<LaurentPolynomial, AlgebraError> {
    p.div_exact(q)
}

pub fn lp_eval(p: &LaurentPolynomial, point: &[Rational]) -> Result<Rational, AlgebraError> {
    p.eval(point)
}

pub fn lp_is_laurent_positive(p: &LaurentPolynomial) -> bool {
    p.is_laurent_positive()
}

impl From<&LaurentPolynomial> for Vec<Term> {
    fn from(p: &LaurentPolynomial) -> Self {
        p.terms()
            .map(|(m, c)| Term {
                monomial: m.clone(),
                coef: c.clone(),
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> LaurentPolynomial {
        LaurentPolynomial::var(3, i)
    }

    fn p(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(3, s).unwrap()
    }

    #[test]
    fn add_cancels() {
        let z = &x(0) + &-x(0);
        assert!(z.is_zero());
        assert_eq!(&(&x(0) + &x(1)) + &x(1), p("x1 + 2*x2"));
        let e = &(&p("x2^2") + &p("x2*x3")) + &p("x3^2");
        assert_eq!(e.to_string(), "x2^2 + x2*x3 + x3^2");
    }

    #[test]
    fn mul_examples() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(1);
        assert_eq!(&a * &b, p("x1^2 - x2^2"));
        assert_eq!(&a * &LaurentPolynomial::one(3), a);
        assert!((&p("x1^-1") * &x(0)).is_one());
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = LaurentPolynomial::var(2, 0);
        let b = LaurentPolynomial::var(3, 0);
        assert!(matches!(
            a.checked_add(&b),
            Err(AlgebraError::VariableCountMismatch { left: 2, right: 3 })
        ));
        assert!(a.checked_mul(&b).is_err());
        assert!(a.div_exact(&b).is_err());
    }

    #[test]
    fn division_examples() {
        let q = p("x2^2 + x2*x3 + x3^2").div_exact(&x(0)).unwrap();
        assert_eq!(q, p("x1^-1*x2^2 + x1^-1*x2*x3 + x1^-1*x3^2"));
        let q = p("x1^2 - x2^2").div_exact(&p("x1 + x2")).unwrap();
        assert_eq!(q, p("x1 - x2"));
        assert_eq!(
            p("x1 + x2").div_exact(&p("x1 + 1")),
            Err(AlgebraError::NotDivisible)
        );
        assert_eq!(
            p("x1").div_exact(&LaurentPolynomial::zero(3)),
            Err(AlgebraError::DivisionByZero)
        );
        assert_eq!(
            p("3*x1").div_exact(&p("2*x2")),
            Err(AlgebraError::NotDivisible)
        );
    }

    #[test]
    fn long_division_with_mixed_signs() {
        let a = p("x1^3 - 2*x1*x2^-1 + x3");
        let b = p("x1 - x2 + 7*x3^-2");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        let bumped = &prod + &LaurentPolynomial::one(3);
        assert_eq!(bumped.div_exact(&b), Err(AlgebraError::NotDivisible));
    }

    #[test]
    fn eval_examples() {
        let n = p("x1^4 + 2*x1^3*x2 + x1^3*x3 + 3*x1^2*x2^2 + x1^2*x2*x3 + x1^2*x3^2 + 2*x1*x2^3 + x1*x2^2*x3 + x2^4");
        let ones = vec![Rational::one(); 3];
        assert_eq!(n.eval(&ones).unwrap(), Rational::from_integer(13.into()));
        assert!(n.is_laurent_positive());
        let pt = vec![
            Rational::from_integer(1.into()),
            Rational::from_integer(2.into()),
            Rational::from_integer(3.into()),
        ];
        assert_eq!(
            p("x2*x3^2").eval(&pt).unwrap(),
            Rational::from_integer(18.into())
        );
        let zero_pt = vec![Rational::zero(), Rational::one(), Rational::one()];
        assert_eq!(
            p("x1^-1").eval(&zero_pt),
            Err(AlgebraError::ZeroToNegativePower { var: 1 })
        );
        assert!(p("x1^-1").eval(&ones[..2]).is_err());
        let half = vec![
            crate::rational(1, 2),
            crate::rational(-3, 1),
            Rational::one(),
        ];
        assert_eq!(
            p("x1^-2*x2 + x3").eval(&half).unwrap(),
            crate::rational(-11, 1)
        );
    }

    #[test]
    fn substitution() {
        let e = p("x1^2 + x1*x2 + x2^2");
        let vals = vec![p("x1 + x2"), p("x3"), LaurentPolynomial::one(3)];
        assert_eq!(
            e.substitute(&vals).unwrap(),
            p("x1^2 + 2*x1*x2 + x2^2 + x1*x3 + x2*x3 + x3^2")
        );
        let inv = p("x1^-1*x2");
        assert_eq!(
            inv.substitute(&[p("x3"), p("x1 + 1"), p("x2")]).unwrap(),
            p("x1*x3^-1 + x3^-1")
        );
        assert!(inv.substitute(&[p("x3 + 1"), p("x1"), p("x2")]).is_err());
        assert_eq!(p("x1 + 1").pow(5).eval_at_ones(), Integer::from(32));
    }

    #[test]
    fn positivity() {
        assert!(p("x1 + x2").is_laurent_positive());
        assert!(!p("x1 - x2").is_laurent_positive());
    }

    #[test]
    fn denominators_and_degrees() {
        let a = p("x1^-2*x2 + x3^-1*x1");
        assert_eq!(a.denominator().exponents(), &[2, 0, 1]);
        assert!(a
            .mul_monomial(&a.denominator(), &Integer::one())
            .is_polynomial());
        assert_eq!(p("x1^2 + x2*x3").homogeneous_degree(), Some(2));
        assert_eq!(p("x1^2 + x3").homogeneous_degree(), None);
    }
}
