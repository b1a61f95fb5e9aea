//! Finite differences, Newton series, Mahler coefficient decay, and the
//! one-unit powers `(1+u)^y` over `F_q`.

use std::fmt;
use std::str::FromStr;

use num_traits::{FromPrimitive, Num};
use serde::{Deserialize, Serialize};

use crate::fq::{FqElem, FqField, FqPoly};
use crate::padic::{valuation, LucasTable, PAdicTrunc};
use crate::{Error, ExactRational, Result};

/// Samples `f(0), ..., f(M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledFunction<T> {
    values: Vec<T>,
}

impl<T: Num + Clone> SampledFunction<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ZeroPrecision);
        }
        Ok(SampledFunction { values })
    }

    /// Samples `f` at `0..=horizon`.
    pub fn sample<F: FnMut(u64) -> T>(horizon: u64, f: F) -> Self {
        SampledFunction {
            values: (0..=horizon).map(f).collect(),
        }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// The sample horizon `M`.
    pub fn horizon(&self) -> usize {
        self.values.len() - 1
    }
}

#[derive(Serialize, Deserialize)]
struct SampledJson {
    values: Vec<String>,
}

impl<T: fmt::Display> Serialize for SampledFunction<T> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SampledJson {
            values: self.values.iter().map(T::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: FromStr> Deserialize<'de> for SampledFunction<T>
where
    T::Err: fmt::Display,
{
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = SampledJson::deserialize(d)?;
        if j.values.is_empty() {
            return Err(D::Error::custom("no samples"));
        }
        let values = j
            .values
            .iter()
            .map(|v| T::from_str(v.trim()).map_err(|e| D::Error::custom(format!("{v:?}: {e}"))))
            .collect::<std::result::Result<_, _>>()?;
        Ok(SampledFunction { values })
    }
}

/// `Delta^k f` on `0..=M-k` by `k`-fold differencing.
pub fn forward_difference<T: Num + Clone>(f: &SampledFunction<T>, order: usize) -> Result<SampledFunction<T>> {
    if order > f.horizon() {
        return Err(Error::OrderExceedsHorizon {
            order,
            horizon: f.horizon(),
        });
    }
    let mut row = f.values.clone();
    for _ in 0..order {
        row = row.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    }
    Ok(SampledFunction { values: row })
}

/// `a_k = (Delta^k f)(0)` for `k = 0..=M`.
pub fn newton_coefficients<T: Num + Clone>(f: &SampledFunction<T>) -> Vec<T> {
    let mut row = f.values.clone();
    let mut out = Vec::with_capacity(row.len());
    while let Some(first) = row.first() {
        out.push(first.clone());
        row = row.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    }
    out
}

/// `sum_k a_k C(x, k)`.
pub fn newton_reconstruct<T: Num + Clone + FromPrimitive>(coeffs: &[T], x: &T) -> T {
    let mut total = T::zero();
    let mut basis = T::one();
    for (k, a) in coeffs.iter().enumerate() {
        if k > 0 {
            let k_t = T::from_usize(k).unwrap();
            basis = basis * (x.clone() - k_t.clone() + T::one()) / k_t;
        }
        total = total + a.clone() * basis.clone();
    }
    total
}

/// A `p`-adic valuation; zero has valuation `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("+inf"),
        }
    }
}

/// Finite valuations as JSON numbers, infinity as the string `"+inf"`.
impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_u64(*v),
            Valuation::Infinite => s.serialize_str("+inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "+inf" => Ok(Valuation::Infinite),
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(Valuation::Finite)
                .ok_or_else(|| D::Error::custom("valuation must be a nonnegative integer")),
            other => Err(D::Error::custom(format!("bad valuation {other}"))),
        }
    }
}

/// `v_p` of a `p`-integral rational.
pub fn rational_valuation(x: &ExactRational, p: u64) -> Result<Valuation> {
    if valuation(x.denom(), p).is_some_and(|v| v > 0) {
        return Err(Error::NotPIntegral(x.to_string()));
    }
    Ok(valuation(x.numer(), p).map_or(Valuation::Infinite, Valuation::Finite))
}

/// `v_p(a_k)` for every Newton coefficient of `f`.
pub fn mahler_decay_profile(f: &SampledFunction<ExactRational>, p: u64) -> Result<Vec<Valuation>> {
    if !crate::padic::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    for v in &f.values {
        rational_valuation(v, p)?;
    }
    newton_coefficients(f)
        .iter()
        .map(|a| rational_valuation(a, p))
        .collect()
}

/// A power series in `u` over `F_q`, known modulo `u^(L+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    poly: FqPoly,
    trunc: usize,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    field: crate::fq::FieldJson,
    coeffs: Vec<Vec<u64>>,
    #[serde(rename = "L")]
    trunc: usize,
}

impl Serialize for TruncSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let field = self.poly.field();
        SeriesJson {
            field: field.descriptor(),
            coeffs: (0..=self.trunc).map(|i| self.poly.coeff(i).coords()).collect(),
            trunc: self.trunc,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = SeriesJson::deserialize(d)?;
        let field = FqField::try_from(j.field).map_err(D::Error::custom)?;
        if j.coeffs.len() > j.trunc + 1 {
            return Err(D::Error::custom("more coefficients than the truncation allows"));
        }
        let elems = j
            .coeffs
            .iter()
            .map(|c| field.from_coords(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(TruncSeries::new(FqPoly::from_elems(&field, &elems), j.trunc))
    }
}

impl TruncSeries {
    /// Drops every term above `u^trunc`.
    pub fn new(poly: FqPoly, trunc: usize) -> Self {
        let raw = poly.raw();
        let kept = raw[..raw.len().min(trunc + 1)].to_vec();
        TruncSeries {
            poly: FqPoly::from_raw(poly.field(), kept),
            trunc,
        }
    }

    pub fn one(field: &FqField, trunc: usize) -> Self {
        Self::new(FqPoly::one(field), trunc)
    }

    pub fn field(&self) -> &FqField {
        self.poly.field()
    }

    pub fn truncation(&self) -> usize {
        self.trunc
    }

    pub fn coeff(&self, k: usize) -> FqElem {
        self.poly.coeff(k)
    }

    /// Coefficients of `u^0, ..., u^L`.
    pub fn coeffs(&self) -> Vec<FqElem> {
        (0..=self.trunc).map(|k| self.poly.coeff(k)).collect()
    }

    pub fn as_poly(&self) -> &FqPoly {
        &self.poly
    }

    pub fn is_one_unit(&self) -> bool {
        self.poly.coeff(0) == self.field().one()
    }

    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.trunc != other.trunc {
            return Err(Error::TruncationMismatch(self.trunc, other.trunc));
        }
        Ok(Self::new(&self.poly * &other.poly, self.trunc))
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.poly.to_string().replace('t', "u");
        write!(f, "{text} + O(u^{})", self.trunc + 1)
    }
}

/// `(1+u)^y = prod_i (1 + u^{q^i})^{y_i}` modulo `u^(L+1)`.
///
/// Only digits with `q^i <= L` matter, so `y` needs at least that many.
pub fn one_unit_power(y: &PAdicTrunc, trunc: usize, field: &FqField) -> Result<TruncSeries> {
    let q = field.q();
    if y.base().q() != q {
        return Err(Error::BaseMismatch(format!("y in base {}, field of order {q}", y.base())));
    }
    let mut needed = 0usize;
    let mut place = 1u64;
    while place <= trunc as u64 {
        needed += 1;
        place = place.saturating_mul(q);
    }
    if y.precision() < needed {
        return Err(Error::InsufficientPrecision {
            needed,
            available: y.precision(),
        });
    }
    let lucas = LucasTable::new(field.p())?;
    let mut acc = TruncSeries::one(field, trunc);
    let mut place = 1usize;
    for i in 0..needed {
        let digit = y.digits()[i];
        if digit > 0 {
            // (1 + u^place)^digit with digit < q; C(digit, j) mod p by Lucas
            let mut raw = vec![0u32; place * digit as usize + 1];
            for j in 0..=digit {
                raw[place * j as usize] = field.from_int(lucas.binomial(digit, j) as i64).value();
            }
            acc = acc.mul(&TruncSeries::new(FqPoly::from_raw(field, raw), trunc))?;
        }
        place = place.saturating_mul(q as usize);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial;
    use crate::padic::{binomial_mod_p_padic, PrimePower};
    use crate::ExactInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64) -> ExactRational {
        ExactRational::from_integer(n.into())
    }

    fn squares(m: u64) -> SampledFunction<ExactRational> {
        SampledFunction::sample(m, |x| r((x * x) as i64))
    }

    #[test]
    fn difference_examples() {
        let c = SampledFunction::sample(5, |_| r(7));
        assert!(forward_difference(&c, 1).unwrap().values().iter().all(|v| *v == r(0)));
        let d2 = forward_difference(&squares(6), 2).unwrap();
        assert_eq!(d2.values(), vec![r(2); 5]);
        let j = 4;
        let choose = SampledFunction::sample(9, |x| ExactRational::from_integer(binomial(&ExactInt::from(x), &ExactInt::from(j))));
        assert_eq!(forward_difference(&choose, j as usize).unwrap().values()[0], r(1));
        assert!(matches!(
            forward_difference(&squares(3), 4),
            Err(Error::OrderExceedsHorizon { order: 4, horizon: 3 })
        ));
    }

    #[test]
    fn newton_examples() {
        let a = newton_coefficients(&squares(5));
        assert_eq!(a, vec![r(0), r(1), r(2), r(0), r(0), r(0)]);
        assert_eq!(newton_coefficients(&SampledFunction::sample(3, |_| r(-4))), vec![r(-4), r(0), r(0), r(0)]);
        let pow = newton_coefficients(&SampledFunction::sample(8, |x| r(4i64.pow(x as u32))));
        assert_eq!(pow, (0..=8).map(|k| r(3i64.pow(k))).collect::<Vec<_>>());
        assert_eq!(newton_reconstruct(&a, &r(10)), r(100));
        let half = ExactRational::new(1.into(), 2.into());
        assert_eq!(newton_reconstruct(&a, &half), ExactRational::new(1.into(), 4.into()));
        assert_eq!(newton_reconstruct(&vec![r(0); 4], &half), r(0));
        assert_eq!(newton_reconstruct(&[0i64, 1, 2], &10), 100);
    }

    #[test]
    fn newton_is_exact_on_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let rand_q = |rng: &mut ChaCha8Rng| ExactRational::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=20).into());
        for _ in 0..10 {
            let deg = rng.gen_range(0..=15);
            let poly: Vec<ExactRational> = (0..=deg).map(|_| rand_q(&mut rng)).collect();
            let eval = |x: &ExactRational| poly.iter().rev().fold(r(0), |acc, c| acc * x + c);
            let f = SampledFunction::sample(20, |x| eval(&r(x as i64)));
            let a = newton_coefficients(&f);
            assert!(a[deg + 1..].iter().all(|c| *c == r(0)));
            for _ in 0..10 {
                let x = rand_q(&mut rng);
                assert_eq!(newton_reconstruct(&a, &x), eval(&x));
            }
        }
    }

    #[test]
    fn decay_examples() {
        let f = SampledFunction::sample(12, |x| r(4i64.pow(x as u32)));
        let prof = mahler_decay_profile(&f, 3).unwrap();
        assert_eq!(prof, (0..=12).map(Valuation::Finite).collect::<Vec<_>>());
        let prof = mahler_decay_profile(&squares(6), 2).unwrap();
        assert!(prof[3..].iter().all(|v| *v == Valuation::Infinite));
        let c5 = SampledFunction::sample(9, |x| ExactRational::from_integer(binomial(&ExactInt::from(x), &ExactInt::from(5))));
        let prof = mahler_decay_profile(&c5, 5).unwrap();
        for (k, v) in prof.iter().enumerate() {
            assert_eq!(*v, if k == 5 { Valuation::Finite(0) } else { Valuation::Infinite });
        }
        let bad = SampledFunction::new(vec![r(1), ExactRational::new(1.into(), 3.into())]).unwrap();
        assert!(matches!(mahler_decay_profile(&bad, 3), Err(Error::NotPIntegral(_))));
        assert!(mahler_decay_profile(&bad, 2).is_ok());
        assert_eq!(serde_json::to_string(&prof[..2]).unwrap(), r#"["+inf","+inf"]"#);
    }

    #[test]
    fn sampled_json() {
        let f = squares(3);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"values":["0","1","4","9"]}"#);
        assert_eq!(serde_json::from_str::<SampledFunction<ExactRational>>(&s).unwrap(), f);
        assert!(serde_json::from_str::<SampledFunction<ExactRational>>(r#"{"values":[]}"#).is_err());
    }

    #[test]
    fn one_unit_examples() {
        let f2 = FqField::prime(2).unwrap();
        let b2 = PrimePower::prime(2).unwrap();
        let zero = PAdicTrunc::from_u64(0, b2, 4).unwrap();
        assert_eq!(one_unit_power(&zero, 6, &f2).unwrap(), TruncSeries::one(&f2, 6));
        let minus_one = PAdicTrunc::from_integer(&ExactInt::from(-1), b2, 3).unwrap();
        let s = one_unit_power(&minus_one, 6, &f2).unwrap();
        assert!(s.coeffs().iter().all(|c| *c == f2.one()));
        let one_plus_u = TruncSeries::new(FqPoly::from_ints(&f2, &[1, 1]), 6);
        assert_eq!(s.mul(&one_plus_u).unwrap(), TruncSeries::one(&f2, 6));
        let short = PAdicTrunc::from_u64(1, b2, 2).unwrap();
        assert!(matches!(one_unit_power(&short, 6, &f2), Err(Error::InsufficientPrecision { needed: 3, available: 2 })));

        let f9 = FqField::new(3, 2).unwrap();
        let b9 = PrimePower::new(3, 2).unwrap();
        let y = PAdicTrunc::from_u64(9, b9, 3).unwrap();
        let s = one_unit_power(&y, 20, &f9).unwrap();
        assert_eq!(s.as_poly().to_string(), "[1,0]*t^9+[1,0]");
        assert!(s.is_one_unit());
    }

    #[test]
    fn one_unit_coefficients_are_binomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for q in [2u64, 3, 4, 5] {
            let base = PrimePower::from_q(q).unwrap();
            let field = FqField::new(base.p(), base.m0()).unwrap();
            for _ in 0..10 {
                let y = PAdicTrunc::new(base, (0..7).map(|_| rng.gen_range(0..q)).collect()).unwrap();
                let s = one_unit_power(&y, 64, &field).unwrap();
                for k in 0..=64u64 {
                    let c = binomial_mod_p_padic(&y, &k, base.p()).unwrap();
                    assert_eq!(s.coeff(k as usize), field.from_int(c as i64));
                }
                let z = PAdicTrunc::new(base, (0..7).map(|_| rng.gen_range(0..q)).collect()).unwrap();
                let sum = one_unit_power(&y.add(&z).unwrap(), 64, &field).unwrap();
                let prod = s.mul(&one_unit_power(&z, 64, &field).unwrap()).unwrap();
                assert_eq!(sum, prod);
            }
        }
    }

    #[test]
    fn series_json() {
        let f4 = FqField::new(2, 2).unwrap();
        let y = PAdicTrunc::from_u64(5, PrimePower::from_q(4).unwrap(), 2).unwrap();
        let s = one_unit_power(&y, 5, &f4).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert!(j.contains(r#""L":5"#));
        assert_eq!(serde_json::from_str::<TruncSeries>(&j).unwrap(), s);
    }
}
