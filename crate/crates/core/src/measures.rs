//! The divided-derivative algebra `R{{D}}` over `R = F_q[t] / f^N`, measures
//! given by their Carlitz moments, and the action of digit permutations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::carlitz::CarlitzBasis;
use crate::digit_group::DigitPerm;
use crate::fq::{is_irreducible, FqField, FqPoly};
use crate::padic::LucasTable;
use crate::{Error, Result, DEFAULT_BUDGET};

/// `F_q[t] / f^N` for a monic irreducible `f`.
#[derive(Clone)]
pub struct QuotientRing {
    f: FqPoly,
    level: usize,
    modulus: FqPoly,
    lucas: LucasTable,
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f && self.level == other.level
    }
}

impl Eq for QuotientRing {}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[t]/({})^{}", self.field().q(), self.f, self.level)
    }
}

impl QuotientRing {
    pub fn new(f: FqPoly, level: usize) -> Result<Self> {
        Self::with_budget(f, level, DEFAULT_BUDGET)
    }

    pub fn with_budget(f: FqPoly, level: usize, budget: u64) -> Result<Self> {
        if level == 0 {
            return Err(Error::ZeroPrecision);
        }
        if !f.is_monic() || !is_irreducible(&f, budget)? {
            return Err(Error::Reducible(format!("{f} is not monic irreducible")));
        }
        let modulus = f.pow(level as u64);
        let lucas = LucasTable::new(f.field().p())?;
        Ok(QuotientRing {
            f,
            level,
            modulus,
            lucas,
        })
    }

    pub fn field(&self) -> &FqField {
        self.f.field()
    }

    pub fn f(&self) -> &FqPoly {
        &self.f
    }

    pub fn level(&self) -> usize {
        self.level
    }

    /// `f^N`.
    pub fn modulus(&self) -> &FqPoly {
        &self.modulus
    }

    pub fn reduce(&self, a: &FqPoly) -> FqPoly {
        a.rem(&self.modulus).expect("modulus is nonzero")
    }

    pub fn mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.reduce(&(a * b))
    }

    /// `C(n, k) mod p` by Lucas.
    pub fn binomial_mod_p(&self, n: u64, k: u64) -> u64 {
        self.lucas.binomial(n, k)
    }

    fn scale_int(&self, c: u64, a: &FqPoly) -> FqPoly {
        match c {
            0 => FqPoly::zero(self.field()),
            1 => a.clone(),
            _ => a.scale(&self.field().from_int(c as i64)),
        }
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FqPoly {
        let deg = self.modulus.degree().unwrap_or(0);
        if deg == 0 {
            return FqPoly::zero(self.field());
        }
        FqPoly::random(self.field(), deg - 1, rng)
    }

    pub fn descriptor(&self) -> RingJson {
        RingJson {
            p: self.field().p(),
            m0: self.field().m0(),
            f: self.f.to_string(),
            level: self.level,
        }
    }

    fn check_same(&self, other: &QuotientRing) -> Result<()> {
        if self != other {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }
}

/// `{"p", "m0", "f", "level"}`; the field uses its default modulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub p: u64,
    pub m0: u32,
    pub f: String,
    pub level: usize,
}

impl TryFrom<RingJson> for QuotientRing {
    type Error = Error;
    fn try_from(j: RingJson) -> Result<Self> {
        let field = FqField::new(j.p, j.m0)?;
        QuotientRing::new(FqPoly::parse(&field, &j.f)?, j.level)
    }
}

fn reduce_all(ring: &QuotientRing, coeffs: Vec<FqPoly>) -> Result<Vec<FqPoly>> {
    if coeffs.is_empty() {
        return Err(Error::ZeroPrecision);
    }
    coeffs
        .into_iter()
        .map(|c| {
            if c.field() != ring.field() {
                return Err(Error::FieldMismatch);
            }
            Ok(ring.reduce(&c))
        })
        .collect()
}

fn parse_all(ring: &QuotientRing, items: &[String]) -> Result<Vec<FqPoly>> {
    items.iter().map(|s| FqPoly::parse(ring.field(), s)).collect()
}

/// `sum_{j <= J} c_j D_j`, with `D_i D_j = C(i+j, i) D_{i+j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OperatorJson", into = "OperatorJson")]
pub struct DividedOperator {
    ring: QuotientRing,
    coeffs: Vec<FqPoly>,
}

#[derive(Serialize, Deserialize)]
struct OperatorJson {
    ring: RingJson,
    coeffs: Vec<String>,
}

impl TryFrom<OperatorJson> for DividedOperator {
    type Error = Error;
    fn try_from(j: OperatorJson) -> Result<Self> {
        let ring = QuotientRing::try_from(j.ring)?;
        let coeffs = parse_all(&ring, &j.coeffs)?;
        DividedOperator::new(ring, coeffs)
    }
}

impl From<DividedOperator> for OperatorJson {
    fn from(a: DividedOperator) -> Self {
        OperatorJson {
            ring: a.ring.descriptor(),
            coeffs: a.coeffs.iter().map(FqPoly::to_string).collect(),
        }
    }
}

impl DividedOperator {
    /// Coefficients `c_0, ..., c_J`; the truncation order is `len - 1`.
    pub fn new(ring: QuotientRing, coeffs: Vec<FqPoly>) -> Result<Self> {
        let coeffs = reduce_all(&ring, coeffs)?;
        Ok(DividedOperator { ring, coeffs })
    }

    pub fn zero(ring: &QuotientRing, trunc: usize) -> Self {
        DividedOperator {
            ring: ring.clone(),
            coeffs: vec![FqPoly::zero(ring.field()); trunc + 1],
        }
    }

    /// The basis operator `D_j` at truncation `trunc`.
    pub fn basis(ring: &QuotientRing, j: usize, trunc: usize) -> Self {
        let mut op = Self::zero(ring, trunc);
        if j <= trunc {
            op.coeffs[j] = FqPoly::one(ring.field());
        }
        op
    }

    pub fn identity(ring: &QuotientRing, trunc: usize) -> Self {
        Self::basis(ring, 0, trunc)
    }

    pub fn random<R: rand::Rng + ?Sized>(ring: &QuotientRing, trunc: usize, rng: &mut R) -> Self {
        DividedOperator {
            ring: ring.clone(),
            coeffs: (0..=trunc).map(|_| ring.random(rng)).collect(),
        }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FqPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &FqPoly {
        &self.coeffs[j]
    }

    fn check_compatible(&self, other: &DividedOperator) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch(self.truncation(), other.truncation()));
        }
        Ok(())
    }

    pub fn add(&self, other: &DividedOperator) -> Result<DividedOperator> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(DividedOperator {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    /// `(AB)_k = sum_{i+j=k} C(k, i) a_i b_j` for `k <= J`.
    pub fn mul(&self, other: &DividedOperator) -> Result<DividedOperator> {
        self.check_compatible(other)?;
        let ring = &self.ring;
        let coeffs = (0..=self.truncation())
            .map(|k| {
                let mut acc = FqPoly::zero(ring.field());
                for i in 0..=k {
                    let (a, b) = (&self.coeffs[i], &other.coeffs[k - i]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let c = ring.binomial_mod_p(k as u64, i as u64);
                    if c != 0 {
                        acc = &acc + &ring.scale_int(c, &(a * b));
                    }
                }
                ring.reduce(&acc)
            })
            .collect();
        Ok(DividedOperator {
            ring: ring.clone(),
            coeffs,
        })
    }
}

/// A measure on `R`, recorded by its moments `m_j = integral of G_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MeasureJson", into = "MeasureJson")]
pub struct FiniteMeasure {
    ring: QuotientRing,
    moments: Vec<FqPoly>,
}

#[derive(Serialize, Deserialize)]
struct MeasureJson {
    ring: RingJson,
    moments: Vec<String>,
}

impl TryFrom<MeasureJson> for FiniteMeasure {
    type Error = Error;
    fn try_from(j: MeasureJson) -> Result<Self> {
        let ring = QuotientRing::try_from(j.ring)?;
        let moments = parse_all(&ring, &j.moments)?;
        FiniteMeasure::new(ring, moments)
    }
}

impl From<FiniteMeasure> for MeasureJson {
    fn from(m: FiniteMeasure) -> Self {
        MeasureJson {
            ring: m.ring.descriptor(),
            moments: m.moments.iter().map(FqPoly::to_string).collect(),
        }
    }
}

impl FiniteMeasure {
    pub fn new(ring: QuotientRing, moments: Vec<FqPoly>) -> Result<Self> {
        let moments = reduce_all(&ring, moments)?;
        Ok(FiniteMeasure { ring, moments })
    }

    /// The point mass at `a`: `m_j = G_j(a) mod f^N` for `j <= trunc`.
    pub fn delta(ring: &QuotientRing, a: &FqPoly, basis: &CarlitzBasis, trunc: usize) -> Result<Self> {
        if basis.field() != ring.field() || a.field() != ring.field() {
            return Err(Error::FieldMismatch);
        }
        let a = ring.reduce(a);
        let moments = basis
            .g_values(&a, trunc as u64)?
            .iter()
            .map(|g| Ok(ring.reduce(&g.to_poly()?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteMeasure {
            ring: ring.clone(),
            moments,
        })
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn truncation(&self) -> usize {
        self.moments.len() - 1
    }

    pub fn moments(&self) -> &[FqPoly] {
        &self.moments
    }

    /// The moment sequence read as coefficients in the `D_j` basis.
    pub fn to_operator(&self) -> DividedOperator {
        DividedOperator {
            ring: self.ring.clone(),
            coeffs: self.moments.clone(),
        }
    }

    pub fn from_operator(op: &DividedOperator) -> Self {
        FiniteMeasure {
            ring: op.ring.clone(),
            moments: op.coeffs.clone(),
        }
    }

    pub fn convolve(&self, other: &FiniteMeasure) -> Result<FiniteMeasure> {
        Ok(Self::from_operator(&self.to_operator().mul(&other.to_operator())?))
    }

    /// `x -> integral of f(x + y) dmu(y)` on `f = sum a_n G_n`:
    /// `b_n = sum_j C(n+j, j) m_j a_{n+j}` for `n + j <= J`.
    pub fn act_on(&self, f: &CarlitzFunction) -> Result<CarlitzFunction> {
        self.ring.check_same(&f.ring)?;
        if self.truncation() != f.truncation() {
            return Err(Error::TruncationMismatch(self.truncation(), f.truncation()));
        }
        let ring = &self.ring;
        let top = self.truncation();
        let coeffs = (0..=top)
            .map(|n| {
                let mut acc = FqPoly::zero(ring.field());
                for j in 0..=top - n {
                    let (m, a) = (&self.moments[j], &f.coeffs[n + j]);
                    if m.is_zero() || a.is_zero() {
                        continue;
                    }
                    let c = ring.binomial_mod_p((n + j) as u64, j as u64);
                    if c != 0 {
                        acc = &acc + &ring.scale_int(c, &(m * a));
                    }
                }
                ring.reduce(&acc)
            })
            .collect();
        Ok(CarlitzFunction {
            ring: ring.clone(),
            coeffs,
        })
    }
}

/// `sum_{n <= J} a_n G_n` with `a_n` in the quotient ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OperatorJson", into = "OperatorJson")]
pub struct CarlitzFunction {
    ring: QuotientRing,
    coeffs: Vec<FqPoly>,
}

impl TryFrom<OperatorJson> for CarlitzFunction {
    type Error = Error;
    fn try_from(j: OperatorJson) -> Result<Self> {
        let ring = QuotientRing::try_from(j.ring)?;
        let coeffs = parse_all(&ring, &j.coeffs)?;
        CarlitzFunction::new(ring, coeffs)
    }
}

impl From<CarlitzFunction> for OperatorJson {
    fn from(f: CarlitzFunction) -> Self {
        OperatorJson {
            ring: f.ring.descriptor(),
            coeffs: f.coeffs.iter().map(FqPoly::to_string).collect(),
        }
    }
}

impl CarlitzFunction {
    pub fn new(ring: QuotientRing, coeffs: Vec<FqPoly>) -> Result<Self> {
        let coeffs = reduce_all(&ring, coeffs)?;
        Ok(CarlitzFunction { ring, coeffs })
    }

    /// `G_n` alone, at truncation `trunc`.
    pub fn basis(ring: &QuotientRing, n: usize, trunc: usize) -> Self {
        let op = DividedOperator::basis(ring, n, trunc);
        CarlitzFunction {
            ring: op.ring,
            coeffs: op.coeffs,
        }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[FqPoly] {
        &self.coeffs
    }

    /// `sum a_n G_n(x) mod f^N` for `x` in `F_q[t]`.
    pub fn evaluate(&self, basis: &CarlitzBasis, x: &FqPoly) -> Result<FqPoly> {
        let ring = &self.ring;
        let values = basis.g_values(x, self.truncation() as u64)?;
        let mut acc = FqPoly::zero(ring.field());
        for (a, g) in self.coeffs.iter().zip(&values) {
            if !a.is_zero() {
                acc = &acc + &ring.mul(a, &ring.reduce(&g.to_poly()?));
            }
        }
        Ok(ring.reduce(&acc))
    }
}

/// Moves the coefficient of `D_i` to `D_{sigma_*(i)}`.
///
/// `sigma` may be given in base `q` or `p`; it acts on indices through base-`p`
/// digits, and must map `[0, J]` into itself.
pub fn sigma_automorphism(sigma: &DigitPerm, op: &DividedOperator) -> Result<DividedOperator> {
    let p = op.ring.field().p();
    if sigma.base().p() != p {
        return Err(Error::BaseMismatch(format!(
            "permutation in base {} acting on a characteristic {p} ring",
            sigma.base()
        )));
    }
    let sigma = sigma.to_base_p();
    let top = op.truncation();
    let mut coeffs = vec![FqPoly::zero(op.ring.field()); top + 1];
    for (i, c) in op.coeffs.iter().enumerate() {
        let image = sigma.rho_star_u64(i as u64)?;
        if image > top as u64 {
            return Err(Error::WindowViolation {
                index: i as u64,
                image,
                bound: top as u64,
            });
        }
        coeffs[image as usize] = c.clone();
    }
    Ok(DividedOperator {
        ring: op.ring.clone(),
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carlitz::Construction;
    use crate::padic::PrimePower;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(q: u64, f: &str, level: usize) -> QuotientRing {
        let pp = PrimePower::from_q(q).unwrap();
        let field = FqField::new(pp.p(), pp.m0()).unwrap();
        QuotientRing::new(FqPoly::parse(&field, f).unwrap(), level).unwrap()
    }

    fn poly(r: &QuotientRing, s: &str) -> FqPoly {
        FqPoly::parse(r.field(), s).unwrap()
    }

    #[test]
    fn ring_validation() {
        let field = FqField::prime(2).unwrap();
        assert!(QuotientRing::new(FqPoly::parse(&field, "t^2+1").unwrap(), 2).is_err());
        assert!(QuotientRing::new(FqPoly::parse(&field, "t").unwrap(), 0).is_err());
        let r = ring(2, "t^2+t+1", 2);
        assert_eq!(r.modulus().to_string(), "t^4+t^2+1");
        assert_eq!(r.reduce(&poly(&r, "t^4")).to_string(), "t^2+1");
    }

    #[test]
    fn operator_product_examples() {
        let r = ring(2, "t", 3);
        let d1 = DividedOperator::basis(&r, 1, 4);
        let d2 = DividedOperator::basis(&r, 2, 4);
        assert_eq!(d1.mul(&d1).unwrap(), DividedOperator::zero(&r, 4));
        assert_eq!(d1.mul(&d2).unwrap(), DividedOperator::basis(&r, 3, 4));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = DividedOperator::random(&r, 4, &mut rng);
        assert_eq!(DividedOperator::identity(&r, 4).mul(&a).unwrap(), a);
        assert!(a.mul(&d1).is_ok());
        assert!(matches!(
            a.mul(&DividedOperator::basis(&r, 1, 5)),
            Err(Error::TruncationMismatch(4, 5))
        ));
        let other = ring(2, "t+1", 3);
        assert!(matches!(a.mul(&DividedOperator::identity(&other, 4)), Err(Error::RingMismatch)));
    }

    #[test]
    fn lucas_coefficients_match_exact_binomials() {
        use num_integer::Integer;
        let r = ring(3, "t", 1);
        for n in 0..60u64 {
            for k in 0..=n {
                let exact = crate::exact::binomial(&crate::ExactInt::from(n), &crate::ExactInt::from(k));
                assert_eq!(crate::ExactInt::from(r.binomial_mod_p(n, k)), exact.mod_floor(&3.into()));
            }
        }
    }

    #[test]
    fn delta_examples() {
        let r = ring(2, "t^2+t+1", 3);
        let basis = CarlitzBasis::build(r.field(), 3, Construction::Recursion).unwrap();
        let zero = FiniteMeasure::delta(&r, &FqPoly::zero(r.field()), &basis, 4).unwrap();
        assert_eq!(zero.to_operator(), DividedOperator::identity(&r, 4));
        let dt = FiniteMeasure::delta(&r, &poly(&r, "t"), &basis, 4).unwrap();
        assert_eq!(dt.moments()[1].to_string(), "t");
        let dt2 = FiniteMeasure::delta(&r, &poly(&r, "t^2"), &basis, 4).unwrap();
        assert_eq!(dt2.moments()[2].to_string(), "t^2+t");
        let none = FiniteMeasure::new(r.clone(), vec![FqPoly::zero(r.field()); 5]).unwrap();
        assert_eq!(none.to_operator(), DividedOperator::zero(&r, 4));
        assert!(FiniteMeasure::delta(&r, &poly(&r, "t"), &basis, 16).is_err());
    }

    #[test]
    fn delta_multiplicativity_and_convolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (q, f) in [(2, "t"), (2, "t^2+t+1"), (3, "t+1"), (4, "t")] {
            let r = ring(q, f, 3);
            let basis = CarlitzBasis::build(r.field(), 3, Construction::Recursion).unwrap();
            for _ in 0..10 {
                let a = r.random(&mut rng);
                let b = r.random(&mut rng);
                let da = FiniteMeasure::delta(&r, &a, &basis, 8).unwrap();
                let db = FiniteMeasure::delta(&r, &b, &basis, 8).unwrap();
                let dab = FiniteMeasure::delta(&r, &(&a + &b), &basis, 8).unwrap();
                assert_eq!(da.convolve(&db).unwrap(), dab, "q={q} f={f} a={a} b={b}");
                assert_eq!(db.convolve(&da).unwrap(), dab);
                let zero = FiniteMeasure::delta(&r, &FqPoly::zero(r.field()), &basis, 8).unwrap();
                assert_eq!(da.convolve(&zero).unwrap(), da);
            }
        }
    }

    #[test]
    fn action_examples() {
        let r = ring(3, "t", 3);
        let basis = CarlitzBasis::build(r.field(), 2, Construction::Recursion).unwrap();
        let a = poly(&r, "t+2");
        let da = FiniteMeasure::delta(&r, &a, &basis, 4).unwrap();
        let g1 = CarlitzFunction::basis(&r, 1, 4);
        let out = da.act_on(&g1).unwrap();
        assert_eq!(out.coeffs()[0], a);
        assert_eq!(out.coeffs()[1], FqPoly::one(r.field()));
        assert!(out.coeffs()[2..].iter().all(FqPoly::is_zero));

        let d0 = FiniteMeasure::delta(&r, &FqPoly::zero(r.field()), &basis, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = CarlitzFunction::new(r.clone(), (0..5).map(|_| r.random(&mut rng)).collect()).unwrap();
        assert_eq!(d0.act_on(&f).unwrap(), f);

        let mass = poly(&r, "2*t+1");
        let mut moments = vec![FqPoly::zero(r.field()); 5];
        moments[0] = mass.clone();
        moments[3] = poly(&r, "t");
        let mu = FiniteMeasure::new(r.clone(), moments).unwrap();
        let c = CarlitzFunction::basis(&r, 0, 4);
        assert_eq!(mu.act_on(&c).unwrap().coeffs()[0], mass);
        assert!(mu.act_on(&CarlitzFunction::basis(&r, 0, 3)).is_err());
    }

    #[test]
    fn action_matches_translation() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (q, f) in [(2, "t^2+t+1"), (3, "t")] {
            let r = ring(q, f, 2);
            let basis = CarlitzBasis::build(r.field(), 3, Construction::Recursion).unwrap();
            let trunc = 8;
            for _ in 0..5 {
                let a = r.random(&mut rng);
                let da = FiniteMeasure::delta(&r, &a, &basis, trunc).unwrap();
                let func = CarlitzFunction::new(r.clone(), (0..=trunc).map(|_| r.random(&mut rng)).collect()).unwrap();
                let moved = da.act_on(&func).unwrap();
                for _ in 0..4 {
                    let x = r.random(&mut rng);
                    assert_eq!(
                        moved.evaluate(&basis, &x).unwrap(),
                        func.evaluate(&basis, &(&x + &a)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn sigma_examples() {
        let r = ring(2, "t", 2);
        let swap = DigitPerm::swap(PrimePower::prime(2).unwrap(), 0, 1);
        for (i, j) in [(1, 2), (2, 1), (3, 3), (0, 0)] {
            let out = sigma_automorphism(&swap, &DividedOperator::basis(&r, i, 3)).unwrap();
            assert_eq!(out, DividedOperator::basis(&r, j, 3));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let a = DividedOperator::random(&r, 3, &mut rng);
        let id = DigitPerm::identity(PrimePower::prime(2).unwrap());
        assert_eq!(sigma_automorphism(&id, &a).unwrap(), a);
        assert!(matches!(
            sigma_automorphism(&swap, &DividedOperator::basis(&r, 1, 1)),
            Err(Error::WindowViolation { index: 1, image: 2, bound: 1 })
        ));
    }

    #[test]
    fn sigma_preserves_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for (q, width) in [(2u64, 4usize), (3, 2), (4, 2)] {
            let r = ring(q, "t", 2);
            let p = PrimePower::from_q(q).unwrap();
            let trunc = (q.pow(width as u32) - 1) as usize;
            for _ in 0..5 {
                let sigma = DigitPerm::random(p, width, &mut rng);
                let a = DividedOperator::random(&r, trunc, &mut rng);
                let b = DividedOperator::random(&r, trunc, &mut rng);
                let lhs = sigma_automorphism(&sigma, &a.mul(&b).unwrap()).unwrap();
                let rhs = sigma_automorphism(&sigma, &a)
                    .unwrap()
                    .mul(&sigma_automorphism(&sigma, &b).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let r = ring(3, "t^2+1", 2);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = DividedOperator::random(&r, 3, &mut rng);
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.starts_with(r#"{"ring":{"p":3,"m0":1,"f":"t^2+1","level":2},"coeffs":["#));
        assert_eq!(serde_json::from_str::<DividedOperator>(&s).unwrap(), a);
        let m = FiniteMeasure::from_operator(&a);
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains(r#""moments":["#));
        assert_eq!(serde_json::from_str::<FiniteMeasure>(&s).unwrap(), m);
    }
}
