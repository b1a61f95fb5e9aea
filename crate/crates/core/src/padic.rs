//! Digit expansions, truncated `p`-adic integers, carries, and the Lucas and
//! Kummer congruences.

use std::fmt;

use num_integer::Integer;
use num_traits::{FromPrimitive, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::{Error, ExactInt, Result};

/// Integer-like scalars that digit routines accept: `u64`, `i64`, `BigInt`, ...
pub trait Natural: Integer + Clone + FromPrimitive + ToPrimitive + fmt::Display {}

impl<T: Integer + Clone + FromPrimitive + ToPrimitive + fmt::Display> Natural for T {}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `q = p^m0` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    p: u64,
    m0: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, m0: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m0 == 0 {
            return Err(Error::InvalidBase(1));
        }
        let q = p
            .checked_pow(m0)
            .filter(|q| *q <= u32::MAX as u64)
            .ok_or(Error::FieldTooLarge(u64::MAX))?;
        Ok(PrimePower { p, m0, q })
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// Recovers `(p, m0)` from a prime power `q`.
    pub fn from_q(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidBase(q));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut m0 = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            m0 += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrime(q));
        }
        Self::new(p, m0)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m0(&self) -> u32 {
        self.m0
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m0 == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.m0)
        }
    }
}

fn check_base(base: u64) -> Result<()> {
    if base < 2 {
        Err(Error::InvalidBase(base))
    } else {
        Ok(())
    }
}

fn check_nonnegative<T: Natural>(n: &T) -> Result<()> {
    if *n < T::zero() {
        Err(Error::Negative(n.to_string()))
    } else {
        Ok(())
    }
}

/// Little-endian base-`base` digits of `n`; `0` yields `[0]`.
pub fn digits_of<T: Natural>(n: &T, base: u64) -> Result<Vec<u64>> {
    check_base(base)?;
    check_nonnegative(n)?;
    if n.is_zero() {
        return Ok(vec![0]);
    }
    let b = T::from_u64(base).ok_or(Error::InvalidBase(base))?;
    let mut out = Vec::new();
    let mut rest = n.clone();
    while !rest.is_zero() {
        let (quot, rem) = rest.div_rem(&b);
        out.push(rem.to_u64().unwrap());
        rest = quot;
    }
    Ok(out)
}

/// Inverse of [`digits_of`]: `sum_i digits[i] * base^i`.
pub fn from_digits<T: Natural>(digits: &[u64], base: u64) -> T {
    let b = T::from_u64(base).unwrap();
    digits
        .iter()
        .rev()
        .fold(T::zero(), |acc, &d| acc * b.clone() + T::from_u64(d).unwrap())
}

/// Digit sum `ell_q(n)` in base `q`.
pub fn ell_q<T: Natural>(n: &T, q: u64) -> Result<u64> {
    Ok(digits_of(n, q)?.iter().sum())
}

/// Carries produced by schoolbook addition in some base.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CarryRecord {
    pub carry_count: usize,
    pub positions: Vec<usize>,
}

pub fn carries_in_digits(a: &[u64], b: &[u64], base: u64) -> CarryRecord {
    let mut positions = Vec::new();
    let mut carry = 0u64;
    for i in 0..a.len().max(b.len()) {
        let s = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0) + carry;
        carry = u64::from(s >= base);
        if carry == 1 {
            positions.push(i);
        }
    }
    CarryRecord {
        carry_count: positions.len(),
        positions,
    }
}

/// Simulates base-`base` addition of `a` and `b`, recording each position
/// with a carry out.
pub fn carries_adding<T: Natural>(a: &T, b: &T, base: u64) -> Result<CarryRecord> {
    let da = digits_of(a, base)?;
    let db = digits_of(b, base)?;
    Ok(carries_in_digits(&da, &db, base))
}

/// `true` when adding `a` and `b` in base `base` produces no carry.
pub fn adds_without_carry(mut a: u64, mut b: u64, base: u64) -> bool {
    while a > 0 && b > 0 {
        if a % base + b % base >= base {
            return false;
        }
        a /= base;
        b /= base;
    }
    true
}

/// Table of `C(a, b) mod p` for digits `0 <= a, b < p`, used for Lucas
/// products.
#[derive(Debug, Clone)]
pub struct LucasTable {
    p: u64,
    table: Vec<u64>,
}

impl LucasTable {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = p as usize;
        let mut table = vec![0u64; n * n];
        for a in 0..n {
            table[a * n] = 1;
            for b in 1..=a {
                table[a * n + b] = (table[(a - 1) * n + b - 1]
                    + if b < a { table[(a - 1) * n + b] } else { 0 })
                    % p;
            }
        }
        Ok(LucasTable { p, table })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `C(a, b) mod p` for single digits.
    #[inline]
    pub fn digit(&self, a: u64, b: u64) -> u64 {
        self.table[(a * self.p + b) as usize]
    }

    /// Lucas product over little-endian base-`p` digits. Missing digits of
    /// `n` are zero.
    pub fn product(&self, n_digits: &[u64], k_digits: &[u64]) -> u64 {
        let mut acc = 1u64;
        for (i, &k) in k_digits.iter().enumerate() {
            let n = n_digits.get(i).copied().unwrap_or(0);
            if k > n {
                return 0;
            }
            acc = acc * self.digit(n, k) % self.p;
        }
        acc
    }

    /// `C(n, k) mod p` for machine integers.
    pub fn binomial(&self, mut n: u64, mut k: u64) -> u64 {
        let mut acc = 1u64;
        while k > 0 {
            let (nd, kd) = (n % self.p, k % self.p);
            if kd > nd {
                return 0;
            }
            acc = acc * self.digit(nd, kd) % self.p;
            n /= self.p;
            k /= self.p;
        }
        acc
    }
}

/// `C(n, k) mod p` as the product of digit binomials `C(n_i, k_i)`.
pub fn lucas_binomial_mod_p<T: Natural>(n: &T, k: &T, p: u64) -> Result<u64> {
    let table = LucasTable::new(p)?;
    Ok(table.product(&digits_of(n, p)?, &digits_of(k, p)?))
}

/// Exponent of `p` in `C(n, k)`, counted as carries when adding `k` and `n-k`.
pub fn kummer_valuation<T: Natural>(n: &T, k: &T, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_nonnegative(k)?;
    if k > n {
        return Err(Error::KExceedsN {
            n: n.to_string(),
            k: k.to_string(),
        });
    }
    let rest = n.clone() - k.clone();
    Ok(carries_adding(k, &rest, p)?.carry_count as u64)
}

/// Exponent of `p` in a nonzero integer by repeated division; `None` for zero.
pub fn valuation<T: Natural>(x: &T, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let p = T::from_u64(p).unwrap();
    let mut v = 0;
    let mut rest = x.clone();
    loop {
        let (quot, rem) = rest.div_rem(&p);
        if !rem.is_zero() {
            return Some(v);
        }
        v += 1;
        rest = quot;
    }
}

/// A `p`-adic integer known to `precision` base-`q` digits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PAdicJson", into = "PAdicJson")]
pub struct PAdicTrunc {
    base: PrimePower,
    digits: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct PAdicJson {
    p: u64,
    m0: u32,
    digits: Vec<u64>,
    precision: usize,
}

impl TryFrom<PAdicJson> for PAdicTrunc {
    type Error = Error;

    fn try_from(j: PAdicJson) -> Result<Self> {
        if j.precision != j.digits.len() {
            return Err(Error::Parse(format!(
                "precision {} does not match {} digits",
                j.precision,
                j.digits.len()
            )));
        }
        PAdicTrunc::new(PrimePower::new(j.p, j.m0)?, j.digits)
    }
}

impl From<PAdicTrunc> for PAdicJson {
    fn from(y: PAdicTrunc) -> Self {
        PAdicJson {
            p: y.base.p,
            m0: y.base.m0,
            precision: y.digits.len(),
            digits: y.digits,
        }
    }
}

impl PAdicTrunc {
    pub fn new(base: PrimePower, digits: Vec<u64>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::ZeroPrecision);
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= base.q) {
            return Err(Error::DigitOutOfRange {
                digit: d,
                base: base.q,
            });
        }
        Ok(PAdicTrunc { base, digits })
    }

    /// The image of an integer (of either sign) modulo `q^precision`.
    /// Negative integers get the complement expansion, digits of `q^N + n`.
    pub fn from_integer(n: &ExactInt, base: PrimePower, precision: usize) -> Result<Self> {
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        let modulus = num_traits::pow(ExactInt::from(base.q), precision);
        let residue = n.mod_floor(&modulus);
        let mut digits = digits_of(&residue, base.q)?;
        digits.resize(precision, 0);
        Ok(PAdicTrunc { base, digits })
    }

    pub fn from_u64(n: u64, base: PrimePower, precision: usize) -> Result<Self> {
        Self::from_integer(&ExactInt::from(n), base, precision)
    }

    /// Parses a comma-separated little-endian digit list, e.g. `"1,0,1"`.
    pub fn parse_digits(s: &str, base: PrimePower) -> Result<Self> {
        let digits = s
            .split(',')
            .map(|d| {
                d.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("digit {d:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, digits)
    }

    pub fn base(&self) -> PrimePower {
        self.base
    }

    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn digit(&self, i: usize) -> Result<u64> {
        self.digits
            .get(i)
            .copied()
            .ok_or(Error::InsufficientPrecision {
                needed: i + 1,
                available: self.digits.len(),
            })
    }

    /// Representative in `[0, q^precision)`.
    pub fn residue(&self) -> ExactInt {
        from_digits(&self.digits, self.base.q)
    }

    /// Digit sum of the known digits.
    pub fn ell(&self) -> u64 {
        self.digits.iter().sum()
    }

    /// Re-expands base-`q` digits as base-`p` digits (each `q`-digit becomes
    /// `m0` consecutive `p`-digits).
    pub fn to_base_p(&self) -> PAdicTrunc {
        let base = PrimePower::prime(self.base.p).unwrap();
        let m0 = self.base.m0 as usize;
        let mut digits = Vec::with_capacity(self.digits.len() * m0);
        for &d in &self.digits {
            let mut rest = d;
            for _ in 0..m0 {
                digits.push(rest % base.q);
                rest /= base.q;
            }
        }
        PAdicTrunc { base, digits }
    }

    /// Keeps the first `precision` digits.
    pub fn truncate(&self, precision: usize) -> Result<PAdicTrunc> {
        if precision == 0 {
            return Err(Error::ZeroPrecision);
        }
        if precision > self.precision() {
            return Err(Error::InsufficientPrecision {
                needed: precision,
                available: self.precision(),
            });
        }
        Ok(PAdicTrunc {
            base: self.base,
            digits: self.digits[..precision].to_vec(),
        })
    }

    /// Sum with carries, at the smaller of the two precisions.
    pub fn add(&self, other: &PAdicTrunc) -> Result<PAdicTrunc> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(format!("{} vs {}", self.base, other.base)));
        }
        let n = self.precision().min(other.precision());
        let q = self.base.q;
        let mut carry = 0;
        let digits = (0..n)
            .map(|i| {
                let s = self.digits[i] + other.digits[i] + carry;
                carry = s / q;
                s % q
            })
            .collect();
        Ok(PAdicTrunc {
            base: self.base,
            digits,
        })
    }
}

impl fmt::Display for PAdicTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.digits.iter().map(u64::to_string).collect();
        write!(f, "[{}] (base {}, O({}^{}))", ds.join(","), self.base.q, self.base.q, self.digits.len())
    }
}

/// `C(y, k) mod p` for a truncated `p`-adic `y`, defined by the Lucas product
/// over `y`'s base-`p` digits.
pub fn binomial_mod_p_padic<T: Natural>(y: &PAdicTrunc, k: &T, p: u64) -> Result<u64> {
    if y.base.p != p {
        return Err(Error::BaseMismatch(format!("y has base {}, asked mod {p}", y.base)));
    }
    let table = LucasTable::new(p)?;
    let yp = y.to_base_p();
    let kd = digits_of(k, p)?;
    if kd.len() > yp.precision() {
        return Err(Error::InsufficientPrecision {
            needed: kd.len(),
            available: yp.precision(),
        });
    }
    Ok(table.product(&yp.digits, &kd))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits_examples() {
        assert_eq!(digits_of(&10u64, 3).unwrap(), vec![1, 0, 1]);
        assert_eq!(digits_of(&0u64, 7).unwrap(), vec![0]);
        assert_eq!(digits_of(&6u64, 2).unwrap(), vec![0, 1, 1]);
        assert!(digits_of(&-1i64, 2).is_err());
        assert!(digits_of(&5u64, 1).is_err());
    }

    #[test]
    fn digit_round_trip() {
        for base in [2u64, 3, 4, 5, 9] {
            for n in (0..1_000_000u64).step_by(7).chain([999_999, 1_000_000]) {
                let d = digits_of(&n, base).unwrap();
                assert_eq!(from_digits::<u64>(&d, base), n);
            }
        }
    }

    #[test]
    fn ell_examples() {
        assert_eq!(ell_q(&10u64, 3).unwrap(), 2);
        assert_eq!(ell_q(&0u64, 5).unwrap(), 0);
        for q in [2u64, 3, 4, 7] {
            assert_eq!(ell_q(&q.pow(5), q).unwrap(), 1);
        }
    }

    #[test]
    fn carry_examples() {
        assert_eq!(carries_adding(&2u64, &2, 2).unwrap().carry_count, 1);
        assert_eq!(carries_adding(&0u64, &12345, 3).unwrap().carry_count, 0);
        for p in [2u64, 3, 5, 7] {
            let c = carries_adding(&1u64, &(p - 1), p).unwrap();
            assert_eq!(c.positions, vec![0]);
        }
        // 7 + 1 in base 2 ripples through three positions
        assert_eq!(carries_adding(&7u64, &1, 2).unwrap().positions, vec![0, 1, 2]);
    }

    #[test]
    fn lucas_examples() {
        assert_eq!(lucas_binomial_mod_p(&10u64, &4, 3).unwrap(), 0);
        assert_eq!(210 % 3, 0);
        assert_eq!(lucas_binomial_mod_p(&7u64, &3, 2).unwrap(), 1);
        assert_eq!(lucas_binomial_mod_p(&12345u64, &0, 5).unwrap(), 1);
        assert!(lucas_binomial_mod_p(&4u64, &2, 4).is_err());
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_valuation(&4u64, &2, 2).unwrap(), 1);
        for p in [2u64, 3, 5, 7, 11] {
            assert_eq!(kummer_valuation(&p, &1, p).unwrap(), 1);
        }
        // C(6,3) = 20 and 3 + 3 = 20 in base 3 without carry
        assert_eq!(kummer_valuation(&6u64, &3, 3).unwrap(), 0);
        assert!(matches!(kummer_valuation(&3u64, &4, 2), Err(Error::KExceedsN { .. })));
    }

    #[test]
    fn valuation_by_division() {
        assert_eq!(valuation(&20u64, 2), Some(2));
        assert_eq!(valuation(&20u64, 3), Some(0));
        assert_eq!(valuation(&0u64, 3), None);
        assert_eq!(valuation(&ExactInt::from(-81), 3), Some(4));
    }

    #[test]
    fn lucas_table_matches_pascal() {
        let t = LucasTable::new(7).unwrap();
        for a in 0..7u64 {
            for b in 0..7u64 {
                assert_eq!(t.digit(a, b), crate::exact::binomial(&a, &b) % 7);
            }
        }
    }

    #[test]
    fn padic_embedding() {
        let b3 = PrimePower::prime(3).unwrap();
        let minus_one = PAdicTrunc::from_integer(&ExactInt::from(-1), b3, 4).unwrap();
        assert_eq!(minus_one.digits(), &[2, 2, 2, 2]);
        assert_eq!(binomial_mod_p_padic(&minus_one, &5u64, 3).unwrap(), 2);

        let b2 = PrimePower::prime(2).unwrap();
        let seven = PAdicTrunc::from_u64(7, b2, 4).unwrap();
        assert_eq!(binomial_mod_p_padic(&seven, &3u64, 2).unwrap(), 1);
        assert_eq!(binomial_mod_p_padic(&seven, &0u64, 2).unwrap(), 1);
        assert!(matches!(
            binomial_mod_p_padic(&seven, &16u64, 2),
            Err(Error::InsufficientPrecision { .. })
        ));
        assert!(binomial_mod_p_padic(&seven, &1u64, 3).is_err());
    }

    #[test]
    fn padic_embedding_agrees_with_lucas() {
        for p in [2u64, 3, 5] {
            let base = PrimePower::prime(p).unwrap();
            for n in 0..200u64 {
                let y = PAdicTrunc::from_u64(n, base, 8).unwrap();
                for k in 0..200u64 {
                    assert_eq!(
                        binomial_mod_p_padic(&y, &k, p).unwrap(),
                        lucas_binomial_mod_p(&n, &k, p).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn base_q_digits_expand_to_base_p() {
        let b4 = PrimePower::new(2, 2).unwrap();
        let y = PAdicTrunc::from_u64(27, b4, 3).unwrap();
        assert_eq!(y.digits(), &[3, 2, 1]);
        let yp = y.to_base_p();
        assert_eq!(yp.digits(), &[1, 1, 0, 1, 1, 0]);
        assert_eq!(yp.residue(), ExactInt::from(27));
    }

    #[test]
    fn padic_add_carries_and_truncates() {
        let b = PrimePower::prime(2).unwrap();
        let a = PAdicTrunc::from_integer(&ExactInt::from(-1), b, 5).unwrap();
        let one = PAdicTrunc::from_u64(1, b, 7).unwrap();
        let s = a.add(&one).unwrap();
        assert_eq!(s.precision(), 5);
        assert_eq!(s.residue(), ExactInt::from(0));
    }

    #[test]
    fn padic_json_and_digit_strings() {
        let b = PrimePower::new(3, 1).unwrap();
        let y = PAdicTrunc::parse_digits("1,0,1", b).unwrap();
        assert_eq!(y.residue(), ExactInt::from(10));
        let json = serde_json::to_string(&y).unwrap();
        assert_eq!(json, r#"{"p":3,"m0":1,"digits":[1,0,1],"precision":3}"#);
        let back: PAdicTrunc = serde_json::from_str(&json).unwrap();
        assert_eq!(back, y);
        assert!(serde_json::from_str::<PAdicTrunc>(r#"{"p":3,"m0":1,"digits":[3],"precision":1}"#).is_err());
        assert!(serde_json::from_str::<PAdicTrunc>(r#"{"p":4,"m0":1,"digits":[1],"precision":1}"#).is_err());
        assert!(PAdicTrunc::parse_digits("1,x", b).is_err());
    }

    #[test]
    fn prime_power_construction() {
        let q = PrimePower::new(3, 2).unwrap();
        assert_eq!(q.q(), 9);
        assert_eq!(PrimePower::from_q(9).unwrap(), q);
        assert!(PrimePower::new(6, 1).is_err());
        assert!(PrimePower::from_q(12).is_err());
        assert_eq!(q.to_string(), "3^2");
    }
}
