//! Finite fields `F_q = F_p[z]/(h)`, dense polynomials over `F_q` in `t`,
//! sparse bivariate polynomials, and rational functions in `t`.
//!
//! Field elements are encoded as integers `c_0 + c_1 p + ... + c_{m0-1} p^{m0-1}`
//! in `[0, q)`; arithmetic goes through precomputed `q x q` tables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::padic::{digits_of, is_prime};
use crate::{Error, Result};

/// Largest field order supported by table arithmetic.
pub const MAX_FIELD_ORDER: u64 = 1024;

// ---------------------------------------------------------------------------
// Arithmetic in F_p[z], used only to build field tables.

fn fp_trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let inv_lead = mod_inverse(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = r[r.len() - 1] * inv_lead % p;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - c * bi % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(&mut out);
    out
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p prime: a^(p-2)
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Monic polynomial over `F_p` of degree `deg` whose lower coefficients are
/// the base-`p` digits of `index`.
fn fp_monic_by_index(p: u64, deg: usize, index: u64) -> Vec<u64> {
    let mut c = digits_of(&index, p).unwrap();
    c.resize(deg, 0);
    c.push(1);
    c
}

/// Irreducibility over `F_p` by trial division with every monic polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible_fp(modulus: &[u64], p: u64) -> bool {
    let deg = modulus.len() - 1;
    for d in 1..=deg / 2 {
        for idx in 0..p.pow(d as u32) {
            let g = fp_monic_by_index(p, d, idx);
            if fp_rem(modulus, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------

#[derive(Debug)]
struct FieldData {
    p: u64,
    m0: u32,
    q: u32,
    modulus: Vec<u64>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// The finite field `F_q`, `q = p^m0`. Cheap to clone.
#[derive(Clone)]
pub struct FqField(Arc<FieldData>);

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}(p={}, modulus={:?})", self.0.q, self.0.p, self.0.modulus)
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FqField {}

impl FqField {
    /// `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// `F_{p^m0}` with the first irreducible monic modulus in graded-lex order.
    pub fn new(p: u64, m0: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Self::check_order(p, m0)?;
        let deg = m0 as usize;
        let modulus = (0..p.pow(m0))
            .map(|i| fp_monic_by_index(p, deg, i))
            .find(|m| is_irreducible_fp(m, p))
            .expect("irreducible polynomials exist in every degree");
        Ok(Self::build(p, m0, modulus))
    }

    /// `F_p[z]/(modulus)` for a caller-supplied monic irreducible modulus
    /// (little-endian coefficients).
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        fp_trim(&mut modulus);
        if modulus.len() < 2 || modulus.last() != Some(&1) {
            return Err(Error::Reducible(format!("{modulus:?} (need monic, degree >= 1)")));
        }
        let m0 = (modulus.len() - 1) as u32;
        Self::check_order(p, m0)?;
        if !is_irreducible_fp(&modulus, p) {
            return Err(Error::Reducible(format!("{modulus:?}")));
        }
        Ok(Self::build(p, m0, modulus))
    }

    fn check_order(p: u64, m0: u32) -> Result<()> {
        if m0 == 0 {
            return Err(Error::InvalidBase(1));
        }
        match p.checked_pow(m0) {
            Some(q) if q <= MAX_FIELD_ORDER => Ok(()),
            Some(q) => Err(Error::FieldTooLarge(q)),
            None => Err(Error::FieldTooLarge(u64::MAX)),
        }
    }

    fn build(p: u64, m0: u32, modulus: Vec<u64>) -> Self {
        let q = p.pow(m0) as u32;
        let qu = q as usize;
        let to_vec = |v: u32| {
            let mut c = digits_of(&(v as u64), p).unwrap();
            c.resize(m0 as usize, 0);
            c
        };
        let from_vec = |c: &[u64]| c.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u32;
        let vecs: Vec<Vec<u64>> = (0..q).map(to_vec).collect();
        let mut add = vec![0u32; qu * qu];
        let mut mul = vec![0u32; qu * qu];
        for a in 0..qu {
            for b in 0..qu {
                let s: Vec<u64> = vecs[a]
                    .iter()
                    .zip(&vecs[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * qu + b] = from_vec(&s);
                let prod = fp_rem(&fp_mul(&vecs[a], &vecs[b], p), &modulus, p);
                mul[a * qu + b] = from_vec(&prod);
            }
        }
        let neg = (0..qu)
            .map(|a| (0..q).find(|&b| add[a * qu + b as usize] == 0).unwrap())
            .collect();
        let inv = (0..qu)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * qu + b as usize] == 1).unwrap()
                }
            })
            .collect();
        FqField(Arc::new(FieldData {
            p,
            m0,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn m0(&self) -> u32 {
        self.0.m0
    }

    pub fn q(&self) -> u64 {
        self.0.q as u64
    }

    /// Little-endian coefficients of the defining polynomial over `F_p`.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: u32, b: u32) -> u32 {
        self.0.add[(a * self.0.q + b) as usize]
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u32, b: u32) -> u32 {
        self.0.mul[(a * self.0.q + b) as usize]
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u32, b: u32) -> u32 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub(crate) fn inv_raw(&self, a: u32) -> u32 {
        self.0.inv[a as usize]
    }

    /// The element with integer encoding `value` (its `F_p`-coordinates are
    /// the base-`p` digits of `value`).
    pub fn elem(&self, value: u32) -> FqElem {
        assert!(value < self.0.q, "encoding {value} out of range for F_{}", self.0.q);
        FqElem {
            field: self.clone(),
            value,
        }
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FqElem {
        self.elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn zero(&self) -> FqElem {
        self.elem(0)
    }

    pub fn one(&self) -> FqElem {
        self.elem(1)
    }

    pub fn from_coords(&self, coords: &[u64]) -> Result<FqElem> {
        if coords.len() > self.0.m0 as usize {
            return Err(Error::Parse(format!("{coords:?} has more than {} coordinates", self.0.m0)));
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= self.0.p) {
            return Err(Error::DigitOutOfRange { digit: c, base: self.0.p });
        }
        let v = coords.iter().rev().fold(0u64, |acc, &d| acc * self.0.p + d);
        Ok(self.elem(v as u32))
    }

    /// `F_p`-coordinates of an encoded element.
    pub fn coords(&self, value: u32) -> Vec<u64> {
        let mut c = digits_of(&(value as u64), self.0.p).unwrap();
        c.resize(self.0.m0 as usize, 0);
        c
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.0.q).map(|v| self.elem(v))
    }

    pub fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> FqElem {
        self.elem(rng.gen_range(0..self.0.q))
    }

    pub fn descriptor(&self) -> FieldJson {
        FieldJson {
            p: self.0.p,
            m0: self.0.m0,
            modulus: self.0.modulus.clone(),
        }
    }
}

/// JSON shape of a field: `{"p": 2, "m0": 1, "modulus": [0, 1]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u64,
    pub m0: u32,
    pub modulus: Vec<u64>,
}

impl TryFrom<FieldJson> for FqField {
    type Error = Error;

    fn try_from(j: FieldJson) -> Result<Self> {
        let f = FqField::with_modulus(j.p, j.modulus)?;
        if f.m0() != j.m0 {
            return Err(Error::Parse(format!("m0 {} does not match modulus degree {}", j.m0, f.m0())));
        }
        Ok(f)
    }
}

impl Serialize for FqField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.descriptor().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FqField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FieldJson::deserialize(d)?;
        FqField::try_from(j).map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------

/// An element of `F_q`.
#[derive(Clone, PartialEq, Eq)]
pub struct FqElem {
    field: FqField,
    value: u32,
}

impl FqElem {
    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn coords(&self) -> Vec<u64> {
        self.field.coords(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Result<FqElem> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.field.elem(self.field.inv_raw(self.value)))
    }

    pub fn pow(&self, mut e: u64) -> FqElem {
        let f = &self.field;
        let mut base = self.value;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = f.mul_raw(acc, base);
            }
            base = f.mul_raw(base, base);
            e >>= 1;
        }
        f.elem(acc)
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.m0() == 1 {
            write!(f, "{}", self.value)
        } else {
            let c: Vec<String> = self.coords().iter().map(u64::to_string).collect();
            write!(f, "[{}]", c.join(","))
        }
    }
}

impl Add for &FqElem {
    type Output = FqElem;
    fn add(self, rhs: &FqElem) -> FqElem {
        assert_eq!(self.field, rhs.field, "field mismatch");
        self.field.elem(self.field.add_raw(self.value, rhs.value))
    }
}

impl Sub for &FqElem {
    type Output = FqElem;
    fn sub(self, rhs: &FqElem) -> FqElem {
        assert_eq!(self.field, rhs.field, "field mismatch");
        self.field.elem(self.field.sub_raw(self.value, rhs.value))
    }
}

impl Mul for &FqElem {
    type Output = FqElem;
    fn mul(self, rhs: &FqElem) -> FqElem {
        assert_eq!(self.field, rhs.field, "field mismatch");
        self.field.elem(self.field.mul_raw(self.value, rhs.value))
    }
}

impl Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        self.field.elem(self.field.neg_raw(self.value))
    }
}

// ---------------------------------------------------------------------------

/// Dense polynomial over `F_q` in the variable `t`, little-endian, with no
/// trailing zero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct FqPoly {
    field: FqField,
    coeffs: Vec<u32>,
}

impl FqPoly {
    pub fn from_raw(field: &FqField, mut coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| (c as u64) < field.q()));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_elems(field: &FqField, elems: &[FqElem]) -> Self {
        Self::from_raw(field, elems.iter().map(|e| e.value).collect())
    }

    /// Polynomial over `F_p` from integer coefficients (reduced mod `p`).
    pub fn from_ints(field: &FqField, coeffs: &[i64]) -> Self {
        Self::from_raw(field, coeffs.iter().map(|&c| field.from_int(c).value).collect())
    }

    pub fn zero(field: &FqField) -> Self {
        Self::from_raw(field, Vec::new())
    }

    pub fn one(field: &FqField) -> Self {
        Self::from_raw(field, vec![1])
    }

    pub fn constant(c: &FqElem) -> Self {
        Self::from_raw(&c.field, vec![c.value])
    }

    /// The variable `t`.
    pub fn t(field: &FqField) -> Self {
        Self::from_raw(field, vec![0, 1])
    }

    /// `c * t^deg`.
    pub fn monomial(c: &FqElem, deg: usize) -> Self {
        let mut v = vec![0; deg + 1];
        v[deg] = c.value;
        Self::from_raw(&c.field, v)
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn raw(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.field.elem(self.coeffs.get(i).copied().unwrap_or(0))
    }

    pub fn leading(&self) -> Option<FqElem> {
        self.coeffs.last().map(|&c| self.field.elem(c))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn scale(&self, c: &FqElem) -> FqPoly {
        let f = &self.field;
        Self::from_raw(f, self.coeffs.iter().map(|&a| f.mul_raw(a, c.value)).collect())
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> FqPoly {
        match self.leading() {
            Some(l) => self.scale(&l.inv().unwrap()),
            None => self.clone(),
        }
    }

    fn check_field(&self, other: &FqPoly) {
        assert_eq!(self.field, other.field, "polynomials over different fields");
    }

    /// `(quotient, remainder)` with `deg r < deg b`.
    pub fn divrem(&self, b: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        if self.field != b.field {
            return Err(Error::FieldMismatch);
        }
        let f = &self.field;
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv_lead = f.inv_raw(*b.coeffs.last().unwrap());
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((FqPoly::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; r.len() - db];
        for shift in (0..r.len() - db).rev() {
            let c = f.mul_raw(r[shift + db], inv_lead);
            if c == 0 {
                continue;
            }
            quot[shift] = c;
            for (i, &bi) in b.coeffs.iter().enumerate() {
                r[shift + i] = f.sub_raw(r[shift + i], f.mul_raw(c, bi));
            }
        }
        r.truncate(db);
        Ok((FqPoly::from_raw(f, quot), FqPoly::from_raw(f, r)))
    }

    pub fn rem(&self, b: &FqPoly) -> Result<FqPoly> {
        Ok(self.divrem(b)?.1)
    }

    /// Exact quotient; fails unless `b` divides `self`.
    pub fn div_exact(&self, b: &FqPoly) -> Result<FqPoly> {
        let (q, r) = self.divrem(b)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotIntegral(format!("({self}) / ({b}) leaves remainder {r}")))
        }
    }

    pub fn pow(&self, mut e: u64) -> FqPoly {
        let mut acc = FqPoly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &FqPoly) -> Result<FqPoly> {
        let mut acc = FqPoly::one(&self.field).rem(m)?;
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &FqPoly) -> FqPoly {
        self.check_field(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Evaluates at a field element.
    pub fn eval(&self, x: &FqElem) -> FqElem {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| f.add_raw(f.mul_raw(acc, x.value), c));
        f.elem(v)
    }

    /// Substitutes the polynomial `g` for `t`.
    pub fn compose(&self, g: &FqPoly) -> FqPoly {
        self.check_field(g);
        let mut acc = FqPoly::zero(&self.field);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &FqPoly::from_raw(&self.field, vec![c]);
        }
        acc
    }

    pub fn random<R: Rng + ?Sized>(field: &FqField, max_deg: usize, rng: &mut R) -> FqPoly {
        let coeffs = (0..=max_deg).map(|_| rng.gen_range(0..field.q() as u32)).collect();
        FqPoly::from_raw(field, coeffs)
    }

    /// Parses the text format: `"t^4+t"`, `"2*t^2+1"`, `"[1,0]*t^2+[0,1]"`.
    pub fn parse(field: &FqField, s: &str) -> Result<FqPoly> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = FqPoly::zero(field);
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut negative = false;
        let mut depth = 0;
        for ch in cleaned.chars() {
            match ch {
                '[' => {
                    depth += 1;
                    current.push(ch);
                }
                ']' => {
                    depth -= 1;
                    current.push(ch);
                }
                '+' | '-' if depth == 0 => {
                    if !current.is_empty() {
                        terms.push((negative, std::mem::take(&mut current)));
                    } else if !terms.is_empty() || negative {
                        return Err(Error::Parse(format!("dangling sign in {s:?}")));
                    }
                    negative = ch == '-';
                }
                _ => current.push(ch),
            }
        }
        if current.is_empty() {
            return Err(Error::Parse(format!("trailing sign in {s:?}")));
        }
        terms.push((negative, current));
        for (negative, term) in terms {
            let (coef_str, mono) = match term.find('t') {
                Some(pos) => (&term[..pos], Some(&term[pos + 1..])),
                None => (term.as_str(), None),
            };
            let coef_str = coef_str.strip_suffix('*').unwrap_or(coef_str);
            let coef = if coef_str.is_empty() {
                if mono.is_none() {
                    return Err(Error::Parse(format!("empty term in {s:?}")));
                }
                field.one()
            } else if let Some(inner) = coef_str.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                let coords = inner
                    .split(',')
                    .map(|d| d.parse::<u64>().map_err(|e| Error::Parse(format!("{d:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                field.from_coords(&coords)?
            } else {
                let n: i64 = coef_str
                    .parse()
                    .map_err(|e| Error::Parse(format!("coefficient {coef_str:?}: {e}")))?;
                field.from_int(n)
            };
            let deg = match mono {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .ok_or_else(|| Error::Parse(format!("bad monomial in {term:?}")))?
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("exponent in {term:?}: {e}")))?,
            };
            let coef = if negative { -&coef } else { coef };
            acc = &acc + &FqPoly::monomial(&coef, deg);
        }
        Ok(acc)
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let prime_field = self.field.m0() == 1;
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let coef = self.field.elem(c).to_string();
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            match (i, prime_field && c == 1) {
                (0, _) => write!(f, "{coef}")?,
                (_, true) => write!(f, "{mono}")?,
                _ => write!(f, "{coef}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl Add for &FqPoly {
    type Output = FqPoly;
    fn add(self, rhs: &FqPoly) -> FqPoly {
        self.check_field(rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| {
                f.add_raw(
                    self.coeffs.get(i).copied().unwrap_or(0),
                    rhs.coeffs.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        FqPoly::from_raw(f, v)
    }
}

impl Sub for &FqPoly {
    type Output = FqPoly;
    fn sub(self, rhs: &FqPoly) -> FqPoly {
        self + &(-rhs)
    }
}

impl Neg for &FqPoly {
    type Output = FqPoly;
    fn neg(self) -> FqPoly {
        let f = &self.field;
        FqPoly::from_raw(f, self.coeffs.iter().map(|&c| f.neg_raw(c)).collect())
    }
}

impl Mul for &FqPoly {
    type Output = FqPoly;
    fn mul(self, rhs: &FqPoly) -> FqPoly {
        self.check_field(rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return FqPoly::zero(f);
        }
        let mut out = vec![0u32; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add_raw(out[i + j], f.mul_raw(a, b));
            }
        }
        FqPoly::from_raw(f, out)
    }
}

macro_rules! forward_owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
    };
}

forward_owned_ops!(FqPoly);
forward_owned_ops!(FqElem);

#[derive(Serialize, Deserialize)]
struct PolyJson {
    field: FieldJson,
    coeffs: Vec<Vec<u64>>,
}

impl Serialize for FqPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            field: self.field.descriptor(),
            coeffs: self.coeffs.iter().map(|&c| self.field.coords(c)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FqPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = PolyJson::deserialize(d)?;
        let field = FqField::try_from(j.field).map_err(D::Error::custom)?;
        let elems = j
            .coeffs
            .iter()
            .map(|c| field.from_coords(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(FqPoly::from_elems(&field, &elems))
    }
}

// ---------------------------------------------------------------------------
// Enumeration in graded-lex order.

fn check_budget(q: u64, k: usize, budget: u64) -> Result<u64> {
    let count = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if count > budget as u128 {
        return Err(Error::BudgetExceeded {
            requested: count,
            budget,
        });
    }
    Ok(count as u64)
}

/// The polynomial whose coefficient of `t^i` is the element encoded by the
/// `i`-th base-`q` digit of `index`.
pub fn poly_by_index(field: &FqField, index: u64) -> FqPoly {
    let digits = digits_of(&index, field.q()).unwrap();
    FqPoly::from_raw(field, digits.into_iter().map(|d| d as u32).collect())
}

/// Position of a polynomial in the graded-lex enumeration.
pub fn poly_index(poly: &FqPoly) -> u64 {
    let q = poly.field.q();
    poly.coeffs.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64)
}

/// All `q^k` polynomials of degree `< k`, in graded-lex order: the `i`-th item
/// is [`poly_by_index`]`(i)`, so lower degrees come first and, within a degree,
/// comparison starts at the leading coefficient.
pub fn enumerate_polys(
    field: &FqField,
    k: usize,
    budget: u64,
) -> Result<impl Iterator<Item = FqPoly> + '_> {
    let count = check_budget(field.q(), k, budget)?;
    Ok((0..count).map(move |i| poly_by_index(field, i)))
}

/// All `q^k` monic polynomials of degree exactly `k`, ordered by their lower
/// coefficients as in [`enumerate_polys`].
pub fn enumerate_monic(
    field: &FqField,
    k: usize,
    budget: u64,
) -> Result<impl Iterator<Item = FqPoly> + '_> {
    let count = check_budget(field.q(), k, budget)?;
    Ok((0..count).map(move |i| {
        let mut c = poly_by_index(field, i).coeffs;
        c.resize(k, 0);
        c.push(1);
        FqPoly::from_raw(field, c)
    }))
}

/// Irreducibility over `F_q` by trial division with every monic polynomial of
/// degree `1..=deg/2`.
pub fn is_irreducible(poly: &FqPoly, budget: u64) -> Result<bool> {
    let deg = match poly.degree() {
        None | Some(0) => return Ok(false),
        Some(d) => d,
    };
    for d in 1..=deg / 2 {
        for g in enumerate_monic(poly.field(), d, budget)? {
            if poly.rem(&g)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Sparse bivariate polynomials.

/// Coefficient rings for [`BiPoly`].
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn one_like(&self) -> Self;
}

impl Coefficient for FqElem {
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn one_like(&self) -> Self {
        self.field.one()
    }
}

impl Coefficient for FqPoly {
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn one_like(&self) -> Self {
        FqPoly::one(&self.field)
    }
}

/// Sparse polynomial in `x` and `y`: exponent pair `(i, j)` maps to the
/// coefficient of `x^i y^j`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly<C> {
    terms: BTreeMap<(u32, u32), C>,
}

/// Bivariate polynomial over `F_q`.
pub type FqBiPoly = BiPoly<FqElem>;

impl<C: Coefficient> BiPoly<C> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn term(c: C, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, i, j);
        p
    }

    pub fn constant(c: C) -> Self {
        Self::term(c, 0, 0)
    }

    /// `x`, with the unit of `unit`'s ring as coefficient.
    pub fn x(unit: &C) -> Self {
        Self::term(unit.one_like(), 1, 0)
    }

    pub fn y(unit: &C) -> Self {
        Self::term(unit.one_like(), 0, 1)
    }

    pub fn add_term(&mut self, c: C, i: u32, j: u32) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry((i, j)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().plus(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), C> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Option<&C> {
        self.terms.get(&(i, j))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(c.clone(), i, j);
        }
        out
    }

    pub fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    pub fn negated(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, c.negated())).collect(),
        }
    }

    pub fn times(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term(a.times(b), i1 + i2, j1 + j2);
            }
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero();
        for (&(i, j), a) in &self.terms {
            out.add_term(a.times(c), i, j);
        }
        out
    }

    /// `self^e` by square-and-multiply; `e` must be positive unless `self` is
    /// nonzero.
    pub fn pow(&self, mut e: u64) -> Self {
        if e == 0 {
            let unit = self
                .terms
                .values()
                .next()
                .expect("0^0 has no ring to live in")
                .one_like();
            return Self::constant(unit);
        }
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.times(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc.unwrap()
    }

    /// `self^e` by `e - 1` successive multiplications by `self`.
    pub fn pow_naive(&self, e: u64) -> Self {
        if e == 0 {
            return self.pow(0);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = acc.times(self);
        }
        acc
    }

    pub fn map_coeffs<F: Fn(&C) -> C>(&self, f: F) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(f(c), i, j);
        }
        out
    }
}

impl<C: Coefficient> fmt::Debug for BiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coefficient> fmt::Display for BiPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push("x".to_string()),
                _ => mono.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push("y".to_string()),
                _ => mono.push(format!("y^{j}")),
            }
            let unit = c.one_like();
            let cs = c.to_string();
            let needs_parens = cs.contains('+');
            if mono.is_empty() {
                write!(f, "{}", if needs_parens { format!("({cs})") } else { cs })?;
            } else if *c == unit {
                write!(f, "{}", mono.join("*"))?;
            } else if needs_parens {
                write!(f, "({cs})*{}", mono.join("*"))?;
            } else {
                write!(f, "{cs}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Frobenius and the digit factorization of (x + y)^n.

/// Outcome of [`frobenius_check`].
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub p: u64,
    pub q: u64,
    pub bivariate_identity: bool,
    pub samples_checked: usize,
    /// `(a, b)` pairs with `(a+b)^p != a^p + b^p`.
    pub counterexamples: Vec<(String, String)>,
}

impl FrobeniusReport {
    pub fn passed(&self) -> bool {
        self.bivariate_identity && self.counterexamples.is_empty()
    }
}

/// Checks `(x+y)^p = x^p + y^p` symbolically and `(a+b)^p = a^p + b^p` on
/// `samples` random polynomial pairs of degree `<= max_deg`.
pub fn frobenius_check<R: Rng + ?Sized>(
    field: &FqField,
    samples: usize,
    max_deg: usize,
    rng: &mut R,
) -> FrobeniusReport {
    let p = field.p();
    let one = field.one();
    let lhs = FqBiPoly::x(&one).plus(&FqBiPoly::y(&one)).pow_naive(p);
    let rhs = FqBiPoly::term(one.clone(), p as u32, 0).plus(&FqBiPoly::term(one, 0, p as u32));
    let bivariate_identity = lhs == rhs;
    let mut counterexamples = Vec::new();
    for _ in 0..samples {
        let a = FqPoly::random(field, max_deg, rng);
        let b = FqPoly::random(field, max_deg, rng);
        let sum_pow = (&a + &b).pow(p);
        let pow_sum = &a.pow(p) + &b.pow(p);
        if sum_pow != pow_sum {
            counterexamples.push((a.to_string(), b.to_string()));
        }
    }
    FrobeniusReport {
        p,
        q: field.q(),
        bivariate_identity,
        samples_checked: samples,
        counterexamples,
    }
}

/// The factored form `prod_k (x^{q^k} + y^{q^k})^{n_k}` over the base-`q`
/// digits of `n`, returned as `(q^k, n_k)` pairs with `n_k > 0`.
pub fn digit_factors(n: u64, q: u64) -> Vec<(u64, u64)> {
    digits_of(&n, q)
        .unwrap()
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| d > 0)
        .map(|(k, d)| (q.pow(k as u32), d))
        .collect()
}

/// Expands `(x+y)^n` over `F_q` twice: as the digit product
/// `prod_k (x^{q^k} + y^{q^k})^{n_k}` and by `n` repeated multiplications.
/// Returns the expansion once both agree.
pub fn digit_factorization(n: u64, field: &FqField, budget: u64) -> Result<FqBiPoly> {
    if n > budget {
        return Err(Error::BudgetExceeded {
            requested: n as u128,
            budget,
        });
    }
    let one = field.one();
    let mut factored = FqBiPoly::constant(one.clone());
    for (qk, nk) in digit_factors(n, field.q()) {
        let qk = qk as u32;
        let factor = FqBiPoly::term(one.clone(), qk, 0).plus(&FqBiPoly::term(one.clone(), 0, qk));
        for _ in 0..nk {
            factored = factored.times(&factor);
        }
    }
    let x_plus_y = FqBiPoly::x(&one).plus(&FqBiPoly::y(&one));
    let mut direct = FqBiPoly::constant(one);
    for _ in 0..n {
        direct = direct.times(&x_plus_y);
    }
    if factored != direct {
        return Err(Error::Inconsistent(format!(
            "(x+y)^{n}: digit product {factored} != direct expansion {direct}"
        )));
    }
    Ok(direct)
}

// ---------------------------------------------------------------------------
// Rational functions in t.

/// A reduced fraction of polynomials over `F_q` with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct FqFrac {
    num: FqPoly,
    den: FqPoly,
}

impl FqFrac {
    pub fn new(num: FqPoly, den: FqPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            let f = num.field().clone();
            return Ok(FqFrac {
                num,
                den: FqPoly::one(&f),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g)?;
        let mut den = den.div_exact(&g)?;
        let lead_inv = den.leading().unwrap().inv()?;
        num = num.scale(&lead_inv);
        den = den.scale(&lead_inv);
        Ok(FqFrac { num, den })
    }

    pub fn from_poly(p: FqPoly) -> Self {
        let one = FqPoly::one(p.field());
        FqFrac { num: p, den: one }
    }

    pub fn zero(field: &FqField) -> Self {
        Self::from_poly(FqPoly::zero(field))
    }

    pub fn one(field: &FqField) -> Self {
        Self::from_poly(FqPoly::one(field))
    }

    pub fn num(&self) -> &FqPoly {
        &self.num
    }

    pub fn den(&self) -> &FqPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The numerator when the denominator is 1.
    pub fn to_poly(&self) -> Result<FqPoly> {
        if self.is_integral() {
            Ok(self.num.clone())
        } else {
            Err(Error::NotIntegral(self.to_string()))
        }
    }

    pub fn add(&self, rhs: &FqFrac) -> FqFrac {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        FqFrac::new(num, &self.den * &rhs.den).unwrap()
    }

    pub fn sub(&self, rhs: &FqFrac) -> FqFrac {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> FqFrac {
        FqFrac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &FqFrac) -> FqFrac {
        FqFrac::new(&self.num * &rhs.num, &self.den * &rhs.den).unwrap()
    }

    pub fn inv(&self) -> Result<FqFrac> {
        FqFrac::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &FqFrac) -> Result<FqFrac> {
        Ok(self.mul(&rhs.inv()?))
    }
}

impl fmt::Debug for FqFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FqFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integral() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2() -> FqField {
        FqField::prime(2).unwrap()
    }

    #[test]
    fn default_moduli() {
        assert_eq!(FqField::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FqField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FqField::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert!(FqField::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(FqField::new(4, 1).is_err());
        assert!(matches!(FqField::new(2, 11), Err(Error::FieldTooLarge(_))));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, m0) in [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (5, 1)] {
            let f = FqField::new(p, m0).unwrap();
            let elems: Vec<FqElem> = f.elements().collect();
            for a in &elems {
                if !a.is_zero() {
                    assert_eq!(a * &a.inv().unwrap(), f.one());
                }
                assert_eq!(a + &(-a), f.zero());
                // a^q = a
                assert_eq!(a.pow(f.q()), *a);
                for b in &elems {
                    assert_eq!(a * b, b * a);
                    for c in &elems {
                        assert_eq!(&(a * b) * c, a * &(b * c));
                        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                    }
                }
            }
        }
    }

    #[test]
    fn poly_arith_examples() {
        let f = f2();
        let a = FqPoly::parse(&f, "t^2+t").unwrap();
        let b = FqPoly::parse(&f, "t^2+t+1").unwrap();
        assert_eq!((&a * &b).to_string(), "t^4+t");
        assert_eq!(&a + &FqPoly::zero(&f), a);
        let t3 = FqPoly::parse(&f, "t^3").unwrap();
        let (q, r) = t3.divrem(&FqPoly::t(&f)).unwrap();
        assert_eq!(q.to_string(), "t^2");
        assert!(r.is_zero());
        assert!(matches!(a.divrem(&FqPoly::zero(&f)), Err(Error::DivisionByZero)));
    }

    #[test]
    fn text_format() {
        let f3 = FqField::prime(3).unwrap();
        let p = FqPoly::parse(&f3, "2*t^2 + t - 1").unwrap();
        assert_eq!(p.to_string(), "2*t^2+t+2");
        assert_eq!(FqPoly::parse(&f3, "0").unwrap().to_string(), "0");
        let f4 = FqField::new(2, 2).unwrap();
        let p = FqPoly::parse(&f4, "[1,0]*t^2+[0,1]").unwrap();
        assert_eq!(p.to_string(), "[1,0]*t^2+[0,1]");
        assert_eq!(FqPoly::parse(&f4, &p.to_string()).unwrap(), p);
        assert!(FqPoly::parse(&f3, "t^").is_err());
        assert!(FqPoly::parse(&f3, "+").is_err());
        assert!(FqPoly::parse(&f4, "[2,0]").is_err());
    }

    #[test]
    fn poly_json() {
        let f = f2();
        let p = FqPoly::parse(&f, "t^4+t").unwrap();
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(
            j,
            r#"{"field":{"p":2,"m0":1,"modulus":[0,1]},"coeffs":[[0],[1],[0],[0],[1]]}"#
        );
        assert_eq!(serde_json::from_str::<FqPoly>(&j).unwrap(), p);
    }

    #[test]
    fn enumeration_examples() {
        let f = f2();
        let e1: Vec<String> = enumerate_polys(&f, 1, 100).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(e1, ["0", "1"]);
        let e2: Vec<String> = enumerate_polys(&f, 2, 100).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(e2, ["0", "1", "t", "t+1"]);
        let f3 = FqField::prime(3).unwrap();
        assert_eq!(enumerate_polys(&f3, 1, 100).unwrap().count(), 3);
        let m: Vec<String> = enumerate_monic(&f, 1, 100).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(m, ["t", "t+1"]);
        let m: Vec<String> = enumerate_monic(&f3, 1, 100).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(m, ["t", "t+1", "t+2"]);
        let m0: Vec<String> = enumerate_monic(&f3, 0, 100).unwrap().map(|p| p.to_string()).collect();
        assert_eq!(m0, ["1"]);
        assert!(matches!(enumerate_polys(&f3, 13, 1_000_000), Err(Error::BudgetExceeded { .. })));
        for (i, p) in enumerate_polys(&f3, 3, 100).unwrap().enumerate() {
            assert_eq!(poly_index(&p), i as u64);
        }
    }

    #[test]
    fn irreducibility_over_fq() {
        let f = f2();
        let irreducible = |s: &str| is_irreducible(&FqPoly::parse(&f, s).unwrap(), 1000).unwrap();
        assert!(irreducible("t^2+t+1"));
        assert!(!irreducible("t^2+1"));
        assert!(irreducible("t"));
        assert!(irreducible("t^4+t+1"));
        assert!(!irreducible("t^4+t^2+1"));
    }

    #[test]
    fn frobenius_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, m0) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
            let f = FqField::new(p, m0).unwrap();
            let r = frobenius_check(&f, 50, 5, &mut rng);
            assert!(r.passed(), "{r:?}");
        }
        let f = f2();
        let one = f.one();
        let sq = FqBiPoly::x(&one).plus(&FqBiPoly::y(&one)).pow(2);
        assert_eq!(sq.to_string(), "x^2+y^2");
        let f3 = FqField::prime(3).unwrap();
        let t = FqPoly::t(&f3);
        let one3 = FqPoly::one(&f3);
        assert_eq!((&t + &one3).pow(3).to_string(), "t^3+1");
        // with x = 0 only y^p survives
        assert_eq!(FqBiPoly::y(&one).pow(2).to_string(), "y^2");
    }

    #[test]
    fn digit_factorization_examples() {
        let f = f2();
        let e = digit_factorization(6, &f, 1000).unwrap();
        assert_eq!(e.to_string(), "x^6+x^4*y^2+x^2*y^4+y^6");
        assert_eq!(digit_factorization(1, &f, 1000).unwrap().to_string(), "x+y");
        let f9 = FqField::new(3, 2).unwrap();
        assert_eq!(digit_factorization(9, &f9, 1000).unwrap().to_string(), "x^9+y^9");
        assert_eq!(digit_factors(6, 2), vec![(2, 1), (4, 1)]);
        assert!(digit_factorization(100, &f, 10).is_err());
    }

    #[test]
    fn fractions_reduce() {
        let f = f2();
        let num = FqPoly::parse(&f, "t^4+t^2").unwrap();
        let den = FqPoly::parse(&f, "t^2+t").unwrap();
        let q = FqFrac::new(num, den).unwrap();
        assert!(q.is_integral());
        assert_eq!(q.to_string(), "t^2+t");
        let half = FqFrac::new(FqPoly::one(&f), FqPoly::t(&f)).unwrap();
        assert_eq!(half.add(&half), FqFrac::zero(&f));
        assert!(FqFrac::new(FqPoly::one(&f), FqPoly::zero(&f)).is_err());
    }
}
