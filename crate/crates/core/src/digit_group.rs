//! The group `S_(q)` of digit-position permutations acting on `Z_p` through
//! base-`q` expansions, and exhaustive checks of its arithmetic properties.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Signed;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::padic::{adds_without_carry, digits_of, from_digits, LucasTable, PAdicTrunc, PrimePower};
use crate::{Error, ExactInt, Result};

/// A finitely supported permutation `rho` of digit positions `{0, 1, 2, ...}`
/// for base-`q` expansions. Only positions moved by `rho` are stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PermJson", into = "PermJson")]
pub struct DigitPerm {
    base: PrimePower,
    map: BTreeMap<usize, usize>,
}

#[derive(Serialize, Deserialize)]
struct PermJson {
    q: u64,
    pairs: Vec<(usize, usize)>,
}

impl TryFrom<PermJson> for DigitPerm {
    type Error = Error;
    fn try_from(j: PermJson) -> Result<Self> {
        DigitPerm::new(PrimePower::from_q(j.q)?, j.pairs)
    }
}

impl From<DigitPerm> for PermJson {
    fn from(d: DigitPerm) -> Self {
        PermJson {
            q: d.base.q(),
            pairs: d.map.into_iter().collect(),
        }
    }
}

impl DigitPerm {
    /// From `(i, rho(i))` pairs; fixed points may be listed or omitted.
    pub fn new(base: PrimePower, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, j) in pairs {
            if map.insert(i, j).is_some_and(|old| old != j) {
                return Err(Error::InvalidPermutation(format!("position {i} mapped twice")));
            }
        }
        map.retain(|i, j| i != j);
        let sources: BTreeSet<usize> = map.keys().copied().collect();
        let targets: BTreeSet<usize> = map.values().copied().collect();
        if targets.len() != map.len() || sources != targets {
            return Err(Error::InvalidPermutation(format!("{map:?} is not a bijection on its support")));
        }
        Ok(DigitPerm { base, map })
    }

    pub fn identity(base: PrimePower) -> Self {
        DigitPerm {
            base,
            map: BTreeMap::new(),
        }
    }

    pub fn swap(base: PrimePower, i: usize, j: usize) -> Self {
        Self::new(base, vec![(i, j), (j, i)]).unwrap()
    }

    /// `images[i] = rho(i)` for `i < images.len()`, identity beyond.
    pub fn from_images(base: PrimePower, images: &[usize]) -> Result<Self> {
        Self::new(base, images.iter().copied().enumerate().collect())
    }

    /// A uniformly random permutation of positions `0..width`.
    pub fn random<R: Rng + ?Sized>(base: PrimePower, width: usize, rng: &mut R) -> Self {
        let mut images: Vec<usize> = (0..width).collect();
        images.shuffle(rng);
        Self::from_images(base, &images).unwrap()
    }

    pub fn base(&self) -> PrimePower {
        self.base
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.map.iter().map(|(&i, &j)| (i, j))
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// One past the largest moved position (0 for the identity).
    pub fn support_bound(&self) -> usize {
        self.map.keys().next_back().map_or(0, |&i| i + 1)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map.get(&i).copied().unwrap_or(i)
    }

    pub fn inverse(&self) -> DigitPerm {
        DigitPerm {
            base: self.base,
            map: self.map.iter().map(|(&i, &j)| (j, i)).collect(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &DigitPerm) -> Result<DigitPerm> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(format!("{} vs {}", self.base, other.base)));
        }
        let positions: BTreeSet<usize> = self.map.keys().chain(other.map.keys()).copied().collect();
        Self::new(self.base, positions.into_iter().map(|i| (i, self.apply(other.apply(i)))).collect())
    }

    /// The induced permutation on base-`p` positions: base-`q` position `i`
    /// becomes the block `i*m0 .. i*m0 + m0`.
    pub fn to_base_p(&self) -> DigitPerm {
        let m0 = self.base.m0() as usize;
        let base = PrimePower::prime(self.base.p()).unwrap();
        let map = self
            .map
            .iter()
            .flat_map(|(&i, &j)| (0..m0).map(move |r| (i * m0 + r, j * m0 + r)))
            .collect();
        DigitPerm { base, map }
    }

    /// `rho_*(y)`: the digit at position `i` moves to position `rho(i)`.
    pub fn rho_star(&self, y: &PAdicTrunc) -> Result<PAdicTrunc> {
        if y.base() != self.base {
            return Err(Error::BaseMismatch(format!("y in base {}, rho in base {}", y.base(), self.base)));
        }
        let n = y.precision();
        if self.support_bound() > n {
            return Err(Error::InsufficientPrecision {
                needed: self.support_bound(),
                available: n,
            });
        }
        let mut out = vec![0u64; n];
        for (i, &d) in y.digits().iter().enumerate() {
            out[self.apply(i)] = d;
        }
        PAdicTrunc::new(self.base, out)
    }

    /// `rho_*` on machine integers `n >= 0`.
    pub fn rho_star_u64(&self, n: u64) -> Result<u64> {
        let q = self.base.q();
        let mut digits = digits_of(&n, q)?;
        digits.resize(digits.len().max(self.support_bound()), 0);
        let mut total = 0u64;
        for (i, &d) in digits.iter().enumerate() {
            if d == 0 {
                continue;
            }
            let place = q
                .checked_pow(self.apply(i) as u32)
                .and_then(|w| w.checked_mul(d))
                .ok_or_else(|| Error::Parse(format!("rho_*({n}) overflows u64")))?;
            total = total
                .checked_add(place)
                .ok_or_else(|| Error::Parse(format!("rho_*({n}) overflows u64")))?;
        }
        Ok(total)
    }

    /// `rho_*` on an integer of either sign.
    ///
    /// Nonnegative integers have finitely many nonzero digits. A negative `n`
    /// has digits `q-1` from some position on; taking `P` above both that
    /// position and the support, the digits of `q^P + n` below `P` carry all
    /// the information and the result is `rho_*(q^P + n) - q^P`.
    pub fn rho_star_int(&self, n: &ExactInt) -> ExactInt {
        let q = self.base.q();
        if !n.is_negative() {
            let mut digits = digits_of(n, q).unwrap();
            digits.resize(digits.len().max(self.support_bound()), 0);
            return self.permuted_value(&digits);
        }
        let len = digits_of(&n.abs(), q).unwrap().len();
        let horizon = len.max(self.support_bound()) + 1;
        let shift = num_traits::pow(ExactInt::from(q), horizon);
        let digits = {
            let mut d = digits_of(&(&shift + n), q).unwrap();
            d.resize(horizon, 0);
            d
        };
        self.permuted_value(&digits) - shift
    }

    fn permuted_value(&self, digits: &[u64]) -> ExactInt {
        let mut out = vec![0u64; digits.len()];
        for (i, &d) in digits.iter().enumerate() {
            out[self.apply(i)] = d;
        }
        from_digits(&out, self.base.q())
    }
}

/// Exhaustive sweep parameters: all `n < q^digits`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub digits: usize,
    /// Maximum counterexamples kept per property.
    pub max_reported: usize,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            digits: 5,
            max_reported: 20,
        }
    }
}

/// Checks performed and counterexamples found for one property.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyTally {
    pub checked: u64,
    pub failures: u64,
    pub counterexamples: Vec<String>,
}

impl PropertyTally {
    fn record(&mut self, ok: bool, max: usize, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < max {
                self.counterexamples.push(witness());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// The five parts of the basic structure theorem for `rho_*`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicSReport {
    pub q: u64,
    pub pairs: Vec<(usize, usize)>,
    pub bijective_and_continuous: PropertyTally,
    pub semi_additive: PropertyTally,
    pub sign_stable: PropertyTally,
    pub digit_sum_preserved: PropertyTally,
    pub congruent_mod_q_minus_1: PropertyTally,
}

impl BasicSReport {
    pub fn passed(&self) -> bool {
        [
            &self.bijective_and_continuous,
            &self.semi_additive,
            &self.sign_stable,
            &self.digit_sum_preserved,
            &self.congruent_mod_q_minus_1,
        ]
        .iter()
        .all(|t| t.passed())
    }
}

/// Checks, for all `n < q^P` (and `-q^P <= n < 0` where signs matter):
/// bijectivity of `rho_*` on `Z/q^P` together with the continuity surrogate
/// (inputs agreeing on positions `S` give outputs agreeing on `rho(S)`),
/// additivity on carry-free sums, stability of signs, preservation of the
/// digit sum, and `n = rho_*(n) mod q-1`.
pub fn verify_basic_s(rho: &DigitPerm, spec: SweepSpec) -> Result<BasicSReport> {
    let base = rho.base();
    let q = base.q();
    let width = spec.digits;
    if rho.support_bound() > width {
        return Err(Error::InsufficientPrecision {
            needed: rho.support_bound(),
            available: width,
        });
    }
    let size = q.checked_pow(width as u32).ok_or(Error::BudgetExceeded {
        requested: u128::MAX,
        budget: u64::MAX,
    })?;
    let max = spec.max_reported;
    let image: Vec<u64> = (0..size).map(|n| rho.rho_star_u64(n)).collect::<Result<_>>()?;
    let mut report = BasicSReport {
        q,
        pairs: rho.pairs().collect(),
        ..Default::default()
    };

    // 1. bijection of Z/q^P and agreement on moved digit blocks
    let mut seen = vec![false; size as usize];
    for (n, &m) in image.iter().enumerate() {
        let fresh = m < size && !std::mem::replace(&mut seen[m as usize], true);
        report
            .bijective_and_continuous
            .record(fresh, max, || format!("rho_*({n}) = {m} repeats or leaves [0, {size})"));
    }
    for n in 0..size {
        let nd = pad(digits_of(&n, q)?, width);
        let md = pad(digits_of(&image[n as usize], q)?, width);
        for r in 1..width {
            let other = (n + q.pow(r as u32)) % size;
            let od = pad(digits_of(&image[other as usize], q)?, width);
            let agree = (0..r).all(|i| md[rho.apply(i)] == od[rho.apply(i)] && nd[i] == md[rho.apply(i)]);
            report.bijective_and_continuous.record(agree, max, || {
                format!("{n} and {other} agree below {r} but images differ on rho([0,{r}))")
            });
        }
    }

    // 2. semi-additivity on carry-free pairs
    for x in 0..size {
        for y in 0..size {
            if !adds_without_carry(x, y, q) {
                continue;
            }
            let ok = image[x as usize] + image[y as usize] == image[(x + y) as usize];
            report
                .semi_additive
                .record(ok, max, || format!("rho_*({x}) + rho_*({y}) != rho_*({})", x + y));
        }
    }

    // 3-5 over integers of both signs
    let bound = size as i64;
    for n in -bound..bound {
        let ni = ExactInt::from(n);
        let m = rho.rho_star_int(&ni);
        let sign_ok = if n >= 0 { !m.is_negative() } else { !m.is_positive() };
        report
            .sign_stable
            .record(sign_ok, max, || format!("rho_*({n}) = {m} changes sign"));
        if n >= 0 {
            let ok = m == ExactInt::from(image[n as usize])
                && crate::padic::ell_q(&n, q)? == crate::padic::ell_q(&m, q)?;
            report
                .digit_sum_preserved
                .record(ok, max, || format!("ell_q({n}) != ell_q({m})"));
        }
        if q > 2 {
            let modulus = ExactInt::from(q - 1);
            let ok = num_integer::Integer::mod_floor(&(&m - &ni), &modulus) == ExactInt::from(0);
            report
                .congruent_mod_q_minus_1
                .record(ok, max, || format!("{n} and rho_*({n}) = {m} differ mod {}", q - 1));
        } else {
            report.congruent_mod_q_minus_1.record(true, max, String::new);
        }
    }
    Ok(report)
}

fn pad(mut d: Vec<u64>, width: usize) -> Vec<u64> {
    d.resize(width.max(d.len()), 0);
    d
}

/// Binomial symmetries of `sigma` in `S_(p)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub p: u64,
    pub pairs: Vec<(usize, usize)>,
    /// `C(y, k) = C(sigma y, sigma k) mod p`.
    pub conjugate_pair: PropertyTally,
    /// `C(sigma y, k) = C(y, sigma^{-1} k) mod p`.
    pub inverse_form: PropertyTally,
    /// `p | C(y, k)` iff `p | C(sigma y, sigma k)`.
    pub divisibility: PropertyTally,
    /// `C(i+j, i) = C(sigma i + sigma j, sigma i) mod p`.
    pub sum_form: PropertyTally,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        [&self.conjugate_pair, &self.inverse_form, &self.divisibility, &self.sum_form]
            .iter()
            .all(|t| t.passed())
    }
}

/// Checks the four binomial congruences for all truncated `y` and all
/// `k, i, j < p^P`. `C(y, k) mod p` for `p`-adic `y` is the Lucas product.
pub fn binom_symmetry_check(sigma: &DigitPerm, spec: SweepSpec) -> Result<SymmetryReport> {
    let base = sigma.base();
    if base.m0() != 1 {
        return Err(Error::BaseMismatch(format!("sigma must act on base-p digits, got base {base}")));
    }
    let p = base.p();
    let width = spec.digits;
    if sigma.support_bound() > width {
        return Err(Error::InsufficientPrecision {
            needed: sigma.support_bound(),
            available: width,
        });
    }
    let max = spec.max_reported;
    let table = LucasTable::new(p)?;
    let size = p.pow(width as u32);
    let inverse = sigma.inverse();
    let padic: Vec<PAdicTrunc> = (0..size).map(|n| PAdicTrunc::from_u64(n, base, width)).collect::<Result<_>>()?;
    let image: Vec<u64> = (0..size).map(|n| sigma.rho_star_u64(n)).collect::<Result<_>>()?;
    let inv_image: Vec<u64> = (0..size).map(|n| inverse.rho_star_u64(n)).collect::<Result<_>>()?;
    let k_digits: Vec<Vec<u64>> = (0..size).map(|k| digits_of(&k, p)).collect::<Result<_>>()?;
    let mut report = SymmetryReport {
        p,
        pairs: sigma.pairs().collect(),
        ..Default::default()
    };

    for y in &padic {
        let sy = sigma.rho_star(y)?;
        for k in 0..size as usize {
            let lhs = table.product(y.digits(), &k_digits[k]);
            let rhs = table.product(sy.digits(), &k_digits[image[k] as usize]);
            report
                .conjugate_pair
                .record(lhs == rhs, max, || format!("y={y}, k={k}: {lhs} vs {rhs}"));
            report
                .divisibility
                .record((lhs == 0) == (rhs == 0), max, || format!("y={y}, k={k}"));
            let a = table.product(sy.digits(), &k_digits[k]);
            let b = table.product(y.digits(), &k_digits[inv_image[k] as usize]);
            report
                .inverse_form
                .record(a == b, max, || format!("y={y}, k={k}: {a} vs {b}"));
        }
    }
    for i in 0..size {
        for j in 0..size {
            let lhs = table.binomial(i + j, i);
            let (si, sj) = (image[i as usize], image[j as usize]);
            let rhs = table.binomial(si + sj, si);
            report
                .sum_form
                .record(lhs == rhs, max, || format!("i={i}, j={j}: {lhs} vs {rhs}"));
        }
    }
    Ok(report)
}

/// Compares `rho_*` in base `q = p^m0` with the induced base-`p` permutation
/// on all `n < q^digits`; returns the mismatching `n`.
pub fn subgroup_embedding_mismatches(rho: &DigitPerm, digits: usize) -> Result<Vec<u64>> {
    let induced = rho.to_base_p();
    let size = rho.base().q().pow(digits as u32);
    let mut bad = Vec::new();
    for n in 0..size {
        if rho.rho_star_u64(n)? != induced.rho_star_u64(n)? {
            bad.push(n);
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn base(q: u64) -> PrimePower {
        PrimePower::from_q(q).unwrap()
    }

    #[test]
    fn rho_star_examples() {
        let b3 = base(3);
        let id = DigitPerm::identity(b3);
        let y = PAdicTrunc::from_u64(5, b3, 4).unwrap();
        assert_eq!(id.rho_star(&y).unwrap(), y);
        let s = DigitPerm::swap(b3, 0, 1);
        let out = s.rho_star(&y).unwrap();
        assert_eq!(y.digits()[..2], [2, 1]);
        assert_eq!(out.digits()[..2], [1, 2]);
        assert_eq!(out.residue(), ExactInt::from(7));

        let b2 = base(2);
        let s02 = DigitPerm::swap(b2, 0, 2);
        assert_eq!(s02.rho_star_u64(1).unwrap(), 4);
        let short = PAdicTrunc::from_u64(1, b2, 2).unwrap();
        assert!(s02.rho_star(&short).is_err());
    }

    #[test]
    fn rho_star_int_examples() {
        let s = DigitPerm::swap(base(3), 0, 1);
        assert_eq!(s.rho_star_int(&ExactInt::from(5)), ExactInt::from(7));
        assert_eq!(s.rho_star_int(&ExactInt::from(0)), ExactInt::from(0));
        let s2 = DigitPerm::swap(base(2), 0, 1);
        assert_eq!(s2.rho_star_int(&ExactInt::from(-2)), ExactInt::from(-3));
        assert_eq!(s2.rho_star_int(&ExactInt::from(-1)), ExactInt::from(-1));
        // agrees with the truncated action on the complement embedding
        let y = PAdicTrunc::from_integer(&ExactInt::from(-2), base(2), 6).unwrap();
        let m = PAdicTrunc::from_integer(&ExactInt::from(-3), base(2), 6).unwrap();
        assert_eq!(s2.rho_star(&y).unwrap(), m);
    }

    #[test]
    fn permutation_validation_and_json() {
        let b = base(2);
        assert!(DigitPerm::new(b, vec![(0, 1)]).is_err());
        assert!(DigitPerm::new(b, vec![(0, 1), (0, 2), (1, 0)]).is_err());
        let p = DigitPerm::new(b, vec![(0, 1), (1, 2), (2, 0), (5, 5)]).unwrap();
        assert_eq!(p.support_bound(), 3);
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"q":2,"pairs":[[0,1],[1,2],[2,0]]}"#);
        assert_eq!(serde_json::from_str::<DigitPerm>(&j).unwrap(), p);
        assert!(serde_json::from_str::<DigitPerm>(r#"{"q":6,"pairs":[]}"#).is_err());
    }

    #[test]
    fn group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in [2u64, 3, 4] {
            let b = base(q);
            for _ in 0..20 {
                let rho = DigitPerm::random(b, 5, &mut rng);
                let tau = DigitPerm::random(b, 5, &mut rng);
                let comp = rho.compose(&tau).unwrap();
                assert!(rho.compose(&rho.inverse()).unwrap().is_identity());
                for n in 0..q.pow(5) {
                    let y = PAdicTrunc::from_u64(n, b, 6).unwrap();
                    assert_eq!(
                        comp.rho_star(&y).unwrap(),
                        rho.rho_star(&tau.rho_star(&y).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn basic_s_examples() {
        let s = DigitPerm::swap(base(3), 0, 1);
        assert_eq!(crate::padic::ell_q(&5u64, 3).unwrap(), 3);
        assert_eq!(crate::padic::ell_q(&7u64, 3).unwrap(), 3);
        assert_eq!((7 - 5) % 2, 0);
        let r = verify_basic_s(&s, SweepSpec { digits: 3, max_reported: 5 }).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.semi_additive.checked, 216);

        // 1 + 3 carries in base 2; 1 + 2 does not
        assert!(!adds_without_carry(1, 3, 2));
        assert!(adds_without_carry(1, 2, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let rho = DigitPerm::random(base(2), 4, &mut rng);
            assert_eq!(rho.rho_star_u64(3).unwrap(), rho.rho_star_u64(1).unwrap() + rho.rho_star_u64(2).unwrap());
        }
    }

    #[test]
    fn basic_s_rejects_wide_support() {
        let s = DigitPerm::swap(base(2), 0, 7);
        assert!(verify_basic_s(&s, SweepSpec::default()).is_err());
    }

    #[test]
    fn symmetry_examples() {
        let b2 = base(2);
        let s = DigitPerm::swap(b2, 0, 1);
        let t = LucasTable::new(2).unwrap();
        assert_eq!(t.binomial(3, 1), 1);
        assert_eq!(s.rho_star_u64(3).unwrap(), 3);
        assert_eq!(s.rho_star_u64(1).unwrap(), 2);
        assert_eq!(t.binomial(3, 2), 1);
        // carry on both sides
        assert_eq!(t.binomial(2, 1), 0);
        assert_eq!(t.binomial(4, 2), 0);

        let r = binom_symmetry_check(&s, SweepSpec { digits: 4, max_reported: 5 }).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = binom_symmetry_check(&DigitPerm::identity(b2), SweepSpec { digits: 3, max_reported: 5 }).unwrap();
        assert!(r.passed());
        assert!(binom_symmetry_check(&DigitPerm::swap(base(4), 0, 1), SweepSpec::default()).is_err());
    }

    #[test]
    fn subgroup_embedding_2_in_4() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let rho = DigitPerm::random(base(4), 3, &mut rng);
            assert!(subgroup_embedding_mismatches(&rho, 4).unwrap().is_empty());
            let induced = rho.to_base_p();
            for n in 0..256u64 {
                let m = rho.rho_star_u64(n).unwrap();
                assert_eq!(crate::padic::ell_q(&n, 2).unwrap(), crate::padic::ell_q(&m, 2).unwrap());
                assert_eq!(m, induced.rho_star_u64(n).unwrap());
            }
        }
    }
}
