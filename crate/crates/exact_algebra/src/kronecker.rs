//! Kronecker substitution: a polynomial with coefficients of one sign is packed
//! into a single big integer, one fixed-width bit slot per monomial, so that
//! multiplication and exact division run on big integers instead of term by
//! term. Anything that does not fit the packing returns `None` and the caller
//! falls back to the generic algorithms.
//!
//! Homogeneous inputs drop their last variable from the slot index (it is
//! implied by the degree), which keeps the packed size proportional to the
//! number of terms rather than to the full exponent box.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::laurent::LaurentPolynomial;
use crate::monomial::Monomial;
use crate::Integer;

/// Upper bound on the size of a packed operand, in bits.
const MAX_PACKED_BITS: u128 = 1 << 34;

struct Layout {
    /// Number of leading variables encoded in the slot index.
    packed: usize,
    /// Degree of every output term when the last variable is implied.
    degree: Option<i64>,
    strides: Vec<u64>,
    slots: u64,
    slot_bits: u64,
}

impl Layout {
    fn new(nvars: usize, degree: Option<i64>, ranges: &[i64], slot_bits: u64) -> Option<Layout> {
        let packed = if degree.is_some() { nvars - 1 } else { nvars };
        let mut strides = Vec::with_capacity(packed);
        let mut slots: u64 = 1;
        for &r in &ranges[..packed] {
            strides.push(slots);
            slots = slots.checked_mul(u64::try_from(r).ok()?)?;
        }
        if slots as u128 * slot_bits as u128 > MAX_PACKED_BITS {
            return None;
        }
        Some(Layout {
            packed,
            degree,
            strides,
            slots,
            slot_bits,
        })
    }

    fn index(&self, exps: &[i64], offset: &[i64]) -> u64 {
        (0..self.packed)
            .map(|i| (exps[i] - offset[i]) as u64 * self.strides[i])
            .sum()
    }

    fn pack(&self, p: &LaurentPolynomial, offset: &[i64]) -> BigUint {
        let total_bits = self.slots * self.slot_bits;
        let mut words = vec![0u32; (total_bits / 32 + 2) as usize];
        for (m, c) in p.raw_terms() {
            let pos = self.index(m.exponents(), offset) * self.slot_bits;
            write_bits(&mut words, pos, &c.magnitude().to_u32_digits());
        }
        BigUint::new(words)
    }

    /// Reads the slots of `value` back into terms. `hi` bounds the per-variable
    /// offsets; slots outside it make the unpacking fail.
    fn unpack(
        &self,
        value: &BigUint,
        nvars: usize,
        offset: &[i64],
        hi: Option<&[i64]>,
        sign: Sign,
    ) -> Option<BTreeMap<Monomial, Integer>> {
        let words = value.to_u32_digits();
        let used_slots = (value.bits()).div_ceil(self.slot_bits);
        if used_slots > self.slots {
            return None;
        }
        let mut terms = BTreeMap::new();
        for k in 0..used_slots {
            let digits = read_bits(&words, k * self.slot_bits, self.slot_bits);
            if digits.iter().all(|&d| d == 0) {
                continue;
            }
            let mut exps = vec![0i64; nvars];
            let mut rest = k;
            for i in 0..self.packed {
                let stride_next = if i + 1 < self.packed {
                    self.strides[i + 1]
                } else {
                    self.slots
                };
                let range = stride_next / self.strides[i];
                let d = (rest % range) as i64;
                rest /= range;
                exps[i] = offset[i] + d;
                if let Some(hi) = hi {
                    if exps[i] > hi[i] {
                        return None;
                    }
                }
            }
            if let Some(deg) = self.degree {
                exps[nvars - 1] = deg - exps[..nvars - 1].iter().sum::<i64>();
                if let Some(hi) = hi {
                    let last = exps[nvars - 1];
                    if last < offset[nvars - 1] || last > hi[nvars - 1] {
                        return None;
                    }
                }
            }
            let c = BigInt::from_biguint(sign, BigUint::new(digits));
            terms.insert(Monomial::from_exponents(exps), c);
        }
        Some(terms)
    }
}

fn write_bits(words: &mut [u32], pos: u64, digits: &[u32]) {
    let sh = (pos % 32) as u32;
    let base = (pos / 32) as usize;
    for (t, &d) in digits.iter().enumerate() {
        words[base + t] |= d << sh;
        if sh > 0 {
            words[base + t + 1] |= d >> (32 - sh);
        }
    }
}

fn read_bits(words: &[u32], pos: u64, len: u64) -> Vec<u32> {
    let sh = (pos % 32) as u32;
    let base = (pos / 32) as usize;
    let n = len.div_ceil(32) as usize;
    let get = |i: usize| words.get(i).copied().unwrap_or(0);
    let mut out = Vec::with_capacity(n);
    for t in 0..n {
        let lo = get(base + t) >> sh;
        let hi = if sh > 0 {
            get(base + t + 1) << (32 - sh)
        } else {
            0
        };
        out.push(lo | hi);
    }
    let tail = (len % 32) as u32;
    if tail != 0 {
        if let Some(last) = out.last_mut() {
            *last &= (1u32 << tail) - 1;
        }
    }
    out
}

fn max_coef_bits(p: &LaurentPolynomial) -> u64 {
    p.raw_terms().values().map(|c| c.bits()).max().unwrap_or(0)
}

fn bit_len(n: usize) -> u64 {
    (usize::BITS - n.leading_zeros()) as u64
}

fn sign_product(a: Sign, b: Sign) -> Sign {
    if a == b {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn joint_degree(
    a: &LaurentPolynomial,
    b: &LaurentPolynomial,
    f: impl Fn(i64, i64) -> i64,
) -> Option<i64> {
    if a.nvars() < 2 {
        return None;
    }
    Some(f(a.homogeneous_degree()?, b.homogeneous_degree()?))
}

pub(crate) fn mul(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Option<LaurentPolynomial> {
    let sa = a.uniform_sign()?;
    let sb = b.uniform_sign()?;
    let n = a.nvars();
    let (la, ha) = a.exponent_bounds();
    let (lb, hb) = b.exponent_bounds();
    let ranges: Vec<i64> = (0..n)
        .map(|i| (ha[i] - la[i]) + (hb[i] - lb[i]) + 1)
        .collect();
    let slot_bits = max_coef_bits(a) + max_coef_bits(b) + bit_len(a.len().min(b.len()));
    let degree = joint_degree(a, b, |x, y| x + y);
    let layout = Layout::new(n, degree, &ranges, slot_bits)?;
    let pa = layout.pack(a, &la);
    let pb = layout.pack(b, &lb);
    let prod = pa * pb;
    let offset: Vec<i64> = la.iter().zip(&lb).map(|(x, y)| x + y).collect();
    let terms = layout.unpack(&prod, n, &offset, None, sign_product(sa, sb))?;
    Some(LaurentPolynomial::from_map(n, terms))
}

/// Exact quotient, verified by multiplying back. `None` means "undecided":
/// the caller must run the generic division.
pub(crate) fn div(a: &LaurentPolynomial, b: &LaurentPolynomial) -> Option<LaurentPolynomial> {
    let sa = a.uniform_sign()?;
    let sb = b.uniform_sign()?;
    let n = a.nvars();
    let (la, ha) = a.exponent_bounds();
    let (lb, hb) = b.exponent_bounds();
    let lq: Vec<i64> = la.iter().zip(&lb).map(|(x, y)| x - y).collect();
    let hq: Vec<i64> = ha.iter().zip(&hb).map(|(x, y)| x - y).collect();
    if lq.iter().zip(&hq).any(|(l, h)| l > h) {
        return None;
    }
    // With both factors of one sign, every quotient coefficient is bounded by
    // the largest coefficient of the dividend.
    let slot_bits = max_coef_bits(a) + 1;
    let ranges: Vec<i64> = (0..n).map(|i| ha[i] - la[i] + 1).collect();
    let degree = joint_degree(a, b, |x, y| x - y);
    let layout = Layout::new(n, degree, &ranges, slot_bits)?;
    let pa = layout.pack(a, &la);
    let pb = layout.pack(b, &lb);
    let pq = exact_div(&pa, &pb)?;
    let terms = layout.unpack(&pq, n, &lq, Some(&hq), sign_product(sa, sb))?;
    if terms.is_empty() {
        return None;
    }
    let q = LaurentPolynomial::from_map(n, terms);
    (&q * b == *a).then_some(q)
}

fn low_bits(x: &BigUint, k: u64) -> BigUint {
    let words = k.div_ceil(32) as usize;
    let mut d = x.to_u32_digits();
    if d.len() >= words {
        d.truncate(words);
        let tail = (k % 32) as u32;
        if tail != 0 {
            d[words - 1] &= (1u32 << tail) - 1;
        }
    }
    BigUint::new(d)
}

/// Inverse of an odd `b` modulo `2^k` by Newton iteration.
fn inverse_mod_pow2(b: &BigUint, k: u64) -> BigUint {
    let mut x = BigUint::one();
    let mut prec = 1u64;
    while prec < k {
        prec = (2 * prec).min(k);
        let bx = low_bits(&(low_bits(b, prec) * &x), prec);
        let factor = (BigUint::one() << prec) + 2u32 - bx;
        x = low_bits(&(&x * factor), prec);
    }
    x
}

/// `a / b` when the division is exact, computed 2-adically. The result is only
/// guaranteed correct when `b` divides `a`; callers verify.
fn exact_div(a: &BigUint, b: &BigUint) -> Option<BigUint> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(BigUint::zero());
    }
    let tz = b.trailing_zeros()?;
    if a.trailing_zeros()? < tz {
        return None;
    }
    let a = a >> tz;
    let b = b >> tz;
    if a.bits() < b.bits() {
        return None;
    }
    let k = a.bits() - b.bits() + 1;
    let inv = inverse_mod_pow2(&b, k);
    Some(low_bits(&(low_bits(&a, k) * inv), k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPolynomial {
        LaurentPolynomial::parse(3, s).unwrap()
    }

    #[test]
    fn bits_roundtrip() {
        let mut words = vec![0u32; 8];
        write_bits(&mut words, 37, &[0xdead_beef, 0x5]);
        assert_eq!(read_bits(&words, 37, 35), vec![0xdead_beef, 0x5]);
        assert_eq!(read_bits(&words, 0, 37), vec![0, 0]);
    }

    #[test]
    fn exact_integer_division() {
        let a = BigUint::from(3u32).pow(200) * BigUint::from(1u32 << 7);
        let b = BigUint::from(3u32).pow(77) * BigUint::from(4u32);
        assert_eq!(
            exact_div(&a, &b).unwrap(),
            BigUint::from(3u32).pow(123) * 32u32
        );
    }

    #[test]
    fn packed_product_matches_schoolbook() {
        let a = p("x1^3*x2^-1 + 5*x1*x2*x3^-1 + 7*x2^2*x3^-2 + x3");
        let b = p("2*x1^2 + 3*x1*x2 + 4*x2*x3 + x3^2 + 9*x1^-1*x2^3");
        // Not homogeneous: full box packing.
        assert_eq!(mul(&a, &b).unwrap(), a.mul_schoolbook(&b));
        let h1 = p("x1^2 + 2*x1*x2 + 3*x2*x3 + 11*x3^2 + x1^3*x2^-1");
        let h2 = p("x1*x2^-1*x3 + 4*x2 + x3");
        assert_eq!(mul(&h1, &h2).unwrap(), h1.mul_schoolbook(&h2));
        let neg = -&h2;
        assert_eq!(mul(&h1, &neg).unwrap(), h1.mul_schoolbook(&neg));
    }

    #[test]
    fn packed_division() {
        let a = p("x1^2 + 2*x1*x2 + 3*x2*x3 + 11*x3^2 + x1^3*x2^-1");
        let b = p("x1*x2^-1*x3 + 4*x2 + x3");
        let prod = a.mul_schoolbook(&b);
        assert_eq!(div(&prod, &b).unwrap(), a);
        assert_eq!(div(&-&prod, &b).unwrap(), -&a);
        let off = &prod + &p("x1^2");
        assert!(div(&off, &b).is_none());
    }

    fn positive(max_terms: usize) -> impl Strategy<Value = LaurentPolynomial> {
        prop::collection::vec(
            (prop::collection::vec(-3i64..=4, 3), 1u64..=1 << 40),
            1..=max_terms,
        )
        .prop_map(|ts| LaurentPolynomial::from_terms(3, ts))
    }

    proptest! {
        #[test]
        fn packed_and_long_division_agree(a in positive(12), b in positive(6)) {
            let prod = a.mul_schoolbook(&b);
            prop_assert_eq!(prod.long_division(&b).unwrap(), a.clone());
            if let Some(q) = div(&prod, &b) {
                prop_assert_eq!(q, a.clone());
            }
            let off = &prod + &p("x1^9*x2^-7");
            prop_assert!(off.long_division(&b).is_err() || b.len() == 1);
            prop_assert!(div(&off, &b).is_none() || b.len() == 1);
        }
    }
}
