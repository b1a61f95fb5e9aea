//! Binomial coefficients, binomial polynomials and binomial series.
//!
//! Everything here is generic over the scalar: instantiate with
//! [`ExactInt`](crate::ExactInt) / [`ExactRational`](crate::ExactRational)
//! for exact results, or with machine types where overflow is not a concern.

use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, Num, Signed};

use crate::{Error, ExactInt, ExactRational, Result};

/// `C(n, k) = n! / (k! (n-k)!)`, and `0` when `k > n`.
///
/// Uses the running product `C(n, i) = C(n, i-1) * (n-i+1) / i`, which stays
/// integral at every step.
pub fn binomial<T>(n: &T, k: &T) -> T
where
    T: Integer + Clone,
{
    debug_assert!(*n >= T::zero() && *k >= T::zero());
    if k > n || *k < T::zero() {
        return T::zero();
    }
    let complement = n.clone() - k.clone();
    let k = if complement < *k { complement } else { k.clone() };
    let mut acc = T::one();
    let mut i = T::one();
    while i <= k {
        acc = acc * (n.clone() - k.clone() + i.clone()) / i.clone();
        i = i + T::one();
    }
    acc
}

/// The binomial polynomial `s (s-1) ... (s-k+1) / k!` evaluated at `s`.
pub fn binomial_poly<T>(s: &T, k: usize) -> T
where
    T: Num + Clone + FromPrimitive,
{
    let mut acc = T::one();
    for i in 1..=k {
        let i_t = T::from_usize(i).expect("index fits scalar");
        acc = acc * (s.clone() - i_t.clone() + T::one()) / i_t;
    }
    acc
}

/// `sum_k C(n, k) x^k y^(n-k)`.
pub fn binomial_expand<T>(x: &T, y: &T, n: usize) -> T
where
    T: Num + Clone + FromPrimitive,
{
    let mut total = T::zero();
    let mut coeff = T::one();
    for k in 0..=n {
        if k > 0 {
            coeff = coeff * T::from_usize(n - k + 1).unwrap() / T::from_usize(k).unwrap();
        }
        total = total
            + coeff.clone() * num_traits::pow(x.clone(), k) * num_traits::pow(y.clone(), n - k);
    }
    total
}

/// Partial sum `sum_{k=0}^{terms} C(s, k) x^k` of the binomial series of `(1+x)^s`.
pub fn binomial_series_partial<T>(s: &T, x: &T, terms: usize) -> T
where
    T: Num + Clone + FromPrimitive,
{
    let mut total = T::zero();
    let mut coeff = T::one();
    let mut x_pow = T::one();
    for k in 0..=terms {
        if k > 0 {
            let k_t = T::from_usize(k).unwrap();
            coeff = coeff * (s.clone() - k_t.clone() + T::one()) / k_t;
            x_pow = x_pow * x.clone();
        }
        total = total + coeff.clone() * x_pow.clone();
    }
    total
}

/// Partial sum `sum_{k=0}^{terms} C(n, k) x^k y^(n-k)` for a possibly
/// negative integer exponent `n`; converges to `(x+y)^n` when `|x/y| < 1`.
pub fn binomial_series_two_var<T>(x: &T, y: &T, n: i64, terms: usize) -> T
where
    T: Num + Clone + FromPrimitive,
{
    let n_t = T::from_i64(n).unwrap();
    let mut total = T::zero();
    let mut coeff = T::one();
    let mut x_pow = T::one();
    for k in 0..=terms {
        if k > 0 {
            let k_t = T::from_usize(k).unwrap();
            coeff = coeff * (n_t.clone() - k_t.clone() + T::one()) / k_t;
            x_pow = x_pow * x.clone();
        }
        if coeff.is_zero() {
            // n >= 0 and k > n: every later coefficient vanishes too
            break;
        }
        total = total + coeff.clone() * x_pow.clone() * powi(y, n - k as i64);
    }
    total
}

/// `x^e` for a signed exponent.
pub fn powi<T>(x: &T, e: i64) -> T
where
    T: Num + Clone,
{
    let mag = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        T::one() / mag
    } else {
        mag
    }
}

/// Rows of Pascal's triangle, `[C(n,0), ..., C(n,n)]` for `n = 0, 1, ...`.
#[derive(Debug, Clone)]
pub struct PascalRows<T> {
    row: Vec<T>,
}

impl<T: Num + Clone> Default for PascalRows<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Num + Clone> PascalRows<T> {
    pub fn new() -> Self {
        PascalRows { row: Vec::new() }
    }
}

impl<T: Num + Clone> Iterator for PascalRows<T> {
    type Item = Vec<T>;

    fn next(&mut self) -> Option<Vec<T>> {
        if self.row.is_empty() {
            self.row.push(T::one());
        } else {
            let mut next = Vec::with_capacity(self.row.len() + 1);
            next.push(T::one());
            for w in self.row.windows(2) {
                next.push(w[0].clone() + w[1].clone());
            }
            next.push(T::one());
            self.row = next;
        }
        Some(self.row.clone())
    }
}

pub fn parse_int(s: &str) -> Result<ExactInt> {
    ExactInt::from_str(s.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

/// Parses `"-3"`, `"22/7"` and plain decimals such as `"0.125"`.
pub fn parse_rational(s: &str) -> Result<ExactRational> {
    let s = s.trim();
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if !s.contains('/') {
            let negative = int_part.starts_with('-');
            let whole = parse_int(if int_part.is_empty() || int_part == "-" {
                "0"
            } else {
                int_part
            })?;
            let frac = parse_int(if frac_part.is_empty() { "0" } else { frac_part })?;
            let scale = num_traits::pow(ExactInt::from(10u32), frac_part.len());
            let frac = ExactRational::new(frac, scale);
            let whole = ExactRational::from_integer(whole.abs());
            let mag = whole + frac;
            return Ok(if negative { -mag } else { mag });
        }
    }
    let r = ExactRational::from_str(s).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    Ok(r)
}

pub fn nonnegative(n: &ExactInt) -> Result<()> {
    if n.sign() == num_bigint::Sign::Minus {
        Err(Error::Negative(n.to_string()))
    } else {
        Ok(())
    }
}

/// Converts a nonnegative exact integer to `usize`, for use as a count.
pub fn to_count(n: &ExactInt) -> Result<usize> {
    nonnegative(n)?;
    num_traits::ToPrimitive::to_usize(n).ok_or_else(|| Error::Parse(format!("{n} too large")))
}
