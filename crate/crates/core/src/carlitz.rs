//! Carlitz's additive polynomials `e_k`, factorials `D_k`, and the digit
//! products `G_n` that replace binomial polynomials over `F_q[t]`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::fq::{enumerate_monic, enumerate_polys, poly_by_index, BiPoly, FqField, FqFrac, FqPoly};
use crate::padic::{digits_of, LucasTable};
use crate::{Error, Result};

/// Bivariate polynomial in `x`, `y` with coefficients in `F_q[t]`.
pub type XYPoly = BiPoly<FqPoly>;

/// An `F_q`-linear polynomial `sum_i c_i x^{q^i}` with `c_i` in `F_q[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditivePoly {
    field: FqField,
    /// `coeffs[i]` multiplies `x^{q^i}`.
    coeffs: Vec<FqPoly>,
}

impl AdditivePoly {
    /// The polynomial `x`.
    pub fn identity(field: &FqField) -> Self {
        AdditivePoly {
            field: field.clone(),
            coeffs: vec![FqPoly::one(field)],
        }
    }

    pub fn coeffs(&self) -> &[FqPoly] {
        &self.coeffs
    }

    /// Degree in `x`.
    pub fn degree(&self) -> u64 {
        self.field.q().pow(self.coeffs.len() as u32 - 1)
    }

    /// Dense coefficient list in `x`, index = power of `x`.
    pub fn to_dense(&self) -> Vec<FqPoly> {
        let q = self.field.q();
        let mut dense = vec![FqPoly::zero(&self.field); self.degree() as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            dense[q.pow(i as u32) as usize] = c.clone();
        }
        dense
    }

    /// Reads a dense polynomial in `x`, failing unless only the monomials
    /// `x^{q^i}` occur.
    pub fn from_dense(field: &FqField, dense: &[FqPoly]) -> Result<Self> {
        let q = field.q() as usize;
        let mut coeffs = Vec::new();
        let mut next_power = 1usize;
        for (deg, c) in dense.iter().enumerate() {
            if deg == next_power {
                coeffs.push(c.clone());
                next_power *= q;
            } else if !c.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "x^{deg} has coefficient {c}; not an additive polynomial"
                )));
            }
        }
        while coeffs.last().is_some_and(FqPoly::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::Inconsistent("zero polynomial".into()));
        }
        Ok(AdditivePoly {
            field: field.clone(),
            coeffs,
        })
    }

    /// `sum_i c_i g^{q^i}`.
    pub fn eval(&self, g: &FqPoly) -> FqPoly {
        let q = self.field.q();
        let mut acc = FqPoly::zero(&self.field);
        let mut power = g.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.pow(q);
            }
            acc = &acc + &(c * &power);
        }
        acc
    }

    /// Substitutes a bivariate polynomial for `x`, expanding each power by
    /// plain multiplication.
    pub fn eval_bipoly(&self, arg: &XYPoly) -> XYPoly {
        let q = self.field.q();
        let mut acc = XYPoly::zero();
        let mut power = arg.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.pow(q);
            }
            acc = acc.plus(&power.scale(c));
        }
        acc
    }

    /// `self^q - c * self`, computed on the additive coefficients.
    fn carlitz_step(&self, c: &FqPoly) -> AdditivePoly {
        let q = self.field.q();
        let mut coeffs = vec![FqPoly::zero(&self.field); self.coeffs.len() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            coeffs[i + 1] = &coeffs[i + 1] + &a.pow(q);
            coeffs[i] = &coeffs[i] - &(c * a);
        }
        AdditivePoly {
            field: self.field.clone(),
            coeffs,
        }
    }
}

/// `prod (x - alpha)` over all `alpha` of degree `< k`, multiplied out as a
/// dense polynomial in `x`.
pub fn e_k_by_product(field: &FqField, k: usize, budget: u64) -> Result<Vec<FqPoly>> {
    let mut dense = vec![FqPoly::one(field)];
    for alpha in enumerate_polys(field, k, budget)? {
        let mut next = vec![FqPoly::zero(field); dense.len() + 1];
        for (i, c) in dense.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * &alpha);
        }
        dense = next;
    }
    Ok(dense)
}

/// Product of all monic polynomials of degree `k`.
pub fn monic_product(field: &FqField, k: usize, budget: u64) -> Result<FqPoly> {
    Ok(enumerate_monic(field, k, budget)?.fold(FqPoly::one(field), |acc, f| &acc * &f))
}

/// How [`CarlitzBasis::build`] obtains `e_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Construction {
    /// Only the recursion `e_{k+1} = e_k^q - D_k^{q-1} e_k`.
    Recursion,
    /// The recursion and the defining product, which must agree.
    CrossChecked { budget: u64 },
}

/// `e_0, ..., e_K` and `D_0, ..., D_K` over a fixed `F_q`.
#[derive(Debug, Clone)]
pub struct CarlitzBasis {
    field: FqField,
    e: Vec<AdditivePoly>,
    d: Vec<FqPoly>,
}

impl CarlitzBasis {
    pub fn build(field: &FqField, max_index: usize, construction: Construction) -> Result<Self> {
        if let Construction::CrossChecked { budget } = construction {
            let count = (field.q() as u128).checked_pow(max_index as u32).unwrap_or(u128::MAX);
            if count > budget as u128 {
                return Err(Error::BudgetExceeded {
                    requested: count,
                    budget,
                });
            }
        }
        let t = FqPoly::t(field);
        let mut e = vec![AdditivePoly::identity(field)];
        let mut d = vec![FqPoly::one(field)];
        for k in 0..=max_index {
            if k > 0 {
                let prev_d = &d[k - 1];
                let next = e[k - 1].carlitz_step(&prev_d.pow(field.q() - 1));
                e.push(next);
                d.push(e[k].eval(&t.pow(k as u64)));
            }
            if let Construction::CrossChecked { budget } = construction {
                let dense = e_k_by_product(field, k, budget)?;
                if dense != e[k].to_dense() {
                    return Err(Error::Inconsistent(format!(
                        "e_{k}: recursion and defining product disagree"
                    )));
                }
                AdditivePoly::from_dense(field, &dense)?;
            }
        }
        Ok(CarlitzBasis { field: field.clone(), e, d })
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    /// Largest `k` with `e_k` available.
    pub fn max_index(&self) -> usize {
        self.e.len() - 1
    }

    pub fn e(&self, k: usize) -> &AdditivePoly {
        &self.e[k]
    }

    pub fn d(&self, k: usize) -> &FqPoly {
        &self.d[k]
    }

    pub fn factorials(&self) -> &[FqPoly] {
        &self.d
    }

    /// Base-`q` digits of `n`, checked against the available `e_t`.
    pub fn digits(&self, n: u64) -> Result<Vec<u64>> {
        let digits = digits_of(&n, self.field.q())?;
        let top = digits.len() - 1;
        if n > 0 && top > self.max_index() {
            return Err(Error::IndexOverflow {
                index: n,
                position: top,
                max: self.max_index(),
            });
        }
        Ok(digits)
    }

    /// Numerator and denominator of `G_n(arg)` before reduction.
    fn g_parts(&self, n: u64, arg: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        let mut num = FqPoly::one(&self.field);
        let mut den = FqPoly::one(&self.field);
        for (t, &nt) in self.digits(n)?.iter().enumerate() {
            if nt > 0 {
                num = &num * &self.e[t].eval(arg).pow(nt);
                den = &den * &self.d[t].pow(nt);
            }
        }
        Ok((num, den))
    }

    /// `G_n(arg) = prod_t (e_t(arg) / D_t)^{n_t}` as a reduced fraction.
    pub fn g(&self, n: u64, arg: &FqPoly) -> Result<FqFrac> {
        let (num, den) = self.g_parts(n, arg)?;
        FqFrac::new(num, den)
    }

    /// `G_0(arg), ..., G_max(arg)`, sharing the `e_t(arg) / D_t` factors.
    pub fn g_values(&self, arg: &FqPoly, max: u64) -> Result<Vec<FqFrac>> {
        let top = self.digits(max)?.len();
        let ratios = (0..top)
            .map(|t| FqFrac::new(self.e[t].eval(arg), self.d[t].clone()))
            .collect::<Result<Vec<_>>>()?;
        (0..=max)
            .map(|n| {
                let mut acc = FqFrac::one(&self.field);
                for (t, &nt) in self.digits(n)?.iter().enumerate() {
                    for _ in 0..nt {
                        acc = acc.mul(&ratios[t]);
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    /// CLI-facing summary `{"q", "K", "D"}`.
    pub fn summary(&self) -> BasisSummary {
        BasisSummary {
            q: self.field.q(),
            k: self.max_index(),
            d: self.d.iter().map(FqPoly::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSummary {
    pub q: u64,
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "D")]
    pub d: Vec<String>,
}

/// `{"num": poly, "den": poly}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FracJson {
    pub num: String,
    pub den: String,
}

impl From<&FqFrac> for FracJson {
    fn from(f: &FqFrac) -> Self {
        FracJson {
            num: f.num().to_string(),
            den: f.den().to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralityReport {
    pub k: usize,
    pub checked: usize,
    /// Arguments `g` with `D_k` not dividing `e_k(g)`.
    pub failures: Vec<String>,
}

impl IntegralityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `D_k` divides `e_k(g)` for every sample `g`.
pub fn integrality_check(basis: &CarlitzBasis, k: usize, samples: &[FqPoly]) -> Result<IntegralityReport> {
    if k > basis.max_index() {
        return Err(Error::IndexOverflow {
            index: k as u64,
            position: k,
            max: basis.max_index(),
        });
    }
    let mut failures = Vec::new();
    for g in samples {
        let (_, r) = basis.e(k).eval(g).divrem(basis.d(k))?;
        if !r.is_zero() {
            failures.push(g.to_string());
        }
    }
    Ok(IntegralityReport {
        k,
        checked: samples.len(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialIdentityReport {
    pub n: u64,
    /// Number of `j` with `C(n, j) != 0 mod p`.
    pub surviving_terms: usize,
    pub holds: bool,
}

fn lcm(a: &FqPoly, b: &FqPoly) -> FqPoly {
    (a * b).div_exact(&a.gcd(b)).unwrap().monic()
}

/// Verifies `G_n(x+y) = sum_j C(n,j) G_j(x) G_{n-j}(y)` as an identity of
/// bivariate rational functions, after clearing denominators.
pub fn carlitz_binomial_identity(basis: &CarlitzBasis, n: u64) -> Result<BinomialIdentityReport> {
    let field = basis.field();
    let lucas = LucasTable::new(field.p())?;
    let top = basis.digits(n)?.len();
    let one = FqPoly::one(field);
    let x = XYPoly::x(&one);
    let y = XYPoly::y(&one);
    let x_plus_y = x.plus(&y);
    let e_x: Vec<XYPoly> = (0..top).map(|t| basis.e(t).eval_bipoly(&x)).collect();
    let e_y: Vec<XYPoly> = (0..top).map(|t| basis.e(t).eval_bipoly(&y)).collect();
    let e_sum: Vec<XYPoly> = (0..top).map(|t| basis.e(t).eval_bipoly(&x_plus_y)).collect();

    let numerator = |j: u64, e_at: &[XYPoly]| -> Result<(XYPoly, FqPoly)> {
        let mut num = XYPoly::constant(one.clone());
        let mut den = one.clone();
        for (t, &jt) in basis.digits(j)?.iter().enumerate() {
            if jt > 0 {
                num = num.times(&e_at[t].pow(jt));
                den = &den * &basis.d(t).pow(jt);
            }
        }
        Ok((num, den))
    };

    let (lhs_num, lhs_den) = numerator(n, &e_sum)?;
    let mut rhs_terms = Vec::new();
    for j in 0..=n {
        let c = lucas.binomial(n, j);
        if c == 0 {
            continue;
        }
        let (nx, dx) = numerator(j, &e_x)?;
        let (ny, dy) = numerator(n - j, &e_y)?;
        let coef = FqPoly::constant(&field.from_int(c as i64));
        rhs_terms.push((nx.times(&ny).scale(&coef), &dx * &dy));
    }
    let common = rhs_terms.iter().fold(lhs_den.clone(), |acc, (_, d)| lcm(&acc, d));
    let lhs = lhs_num.scale(&common.div_exact(&lhs_den)?);
    let mut rhs = XYPoly::zero();
    for (num, den) in &rhs_terms {
        rhs = rhs.plus(&num.scale(&common.div_exact(den)?));
    }
    Ok(BinomialIdentityReport {
        n,
        surviving_terms: rhs_terms.len(),
        holds: lhs == rhs,
    })
}

/// Coefficients `a_n` of a function in the basis `{G_n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarlitzExpansion {
    coeffs: BTreeMap<u64, FqFrac>,
}

impl CarlitzExpansion {
    pub fn from_coeffs(coeffs: BTreeMap<u64, FqFrac>) -> Self {
        CarlitzExpansion {
            coeffs: coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Nonzero coefficients only.
    pub fn coeffs(&self) -> &BTreeMap<u64, FqFrac> {
        &self.coeffs
    }

    pub fn coeff(&self, n: u64) -> Option<&FqFrac> {
        self.coeffs.get(&n)
    }

    /// `sum_n a_n G_n(g)`.
    pub fn evaluate(&self, basis: &CarlitzBasis, g: &FqPoly) -> Result<FqFrac> {
        let mut acc = FqFrac::zero(basis.field());
        for (&n, a) in &self.coeffs {
            acc = acc.add(&a.mul(&basis.g(n, g)?));
        }
        Ok(acc)
    }
}

/// Number of base-`q` digits of `m` (0 for `m = 0`): one more than the degree
/// of the `m`-th enumerated polynomial.
fn digit_length(m: u64, q: u64) -> u32 {
    let mut len = 0;
    let mut rest = m;
    while rest > 0 {
        rest /= q;
        len += 1;
    }
    len
}

/// Solves `matrix * x = rhs` over `F_q(t)` by Gaussian elimination.
fn gauss_solve(mut matrix: Vec<Vec<FqFrac>>, mut rhs: Vec<FqFrac>) -> Result<Vec<FqFrac>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !matrix[r][col].is_zero())
            .ok_or_else(|| Error::Singular(format!("no pivot in column {col}")))?;
        matrix.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = matrix[col][col].inv()?;
        for c in col..n {
            matrix[col][c] = matrix[col][c].mul(&inv);
        }
        rhs[col] = rhs[col].mul(&inv);
        for r in 0..n {
            if r == col || matrix[r][col].is_zero() {
                continue;
            }
            let factor = matrix[r][col].clone();
            for c in col..n {
                let delta = factor.mul(&matrix[col][c]);
                matrix[r][c] = matrix[r][c].sub(&delta);
            }
            rhs[r] = rhs[r].sub(&factor.mul(&rhs[col]));
        }
    }
    Ok(rhs)
}

/// Expands the function `g -> values[index(g)]` on all polynomials of degree
/// `< d` in the basis `G_0, ..., G_{q^d - 1}`.
///
/// The evaluation matrix `G_n(alpha_m)` is block lower triangular when points
/// and indices are grouped by digit length: `G_n(alpha_m) = 0` whenever
/// `alpha_m` has fewer digits than `n`. That zero pattern is checked before
/// the blocks are solved in order.
pub fn expand_in_g(basis: &CarlitzBasis, d: usize, values: &[FqPoly], budget: u64) -> Result<CarlitzExpansion> {
    let field = basis.field();
    let q = field.q();
    let size = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(Error::BudgetExceeded {
            requested: size,
            budget,
        });
    }
    let size = size as u64;
    if values.len() as u64 != size {
        return Err(Error::Parse(format!("expected {size} values, got {}", values.len())));
    }
    if d > basis.max_index() + 1 {
        return Err(Error::IndexOverflow {
            index: size - 1,
            position: d - 1,
            max: basis.max_index(),
        });
    }
    let rows: Vec<Vec<FqFrac>> = (0..size)
        .map(|m| basis.g_values(&poly_by_index(field, m), size.saturating_sub(1)))
        .collect::<Result<_>>()?;
    for (m, row) in rows.iter().enumerate() {
        let lm = digit_length(m as u64, q);
        for (n, v) in row.iter().enumerate() {
            if digit_length(n as u64, q) > lm && !v.is_zero() {
                return Err(Error::Singular(format!(
                    "G_{n} does not vanish at point {m}; ordering is not triangular"
                )));
            }
        }
    }
    let mut solution: Vec<FqFrac> = vec![FqFrac::zero(field); size as usize];
    let mut start = 0u64;
    for len in 0..=d as u32 {
        let end = if len == 0 { 1 } else { q.pow(len) }.min(size);
        if start >= end {
            continue;
        }
        let block: Vec<usize> = (start as usize..end as usize).collect();
        let rhs: Vec<FqFrac> = block
            .iter()
            .map(|&m| {
                (0..start as usize).fold(FqFrac::from_poly(values[m].clone()), |acc, n| {
                    acc.sub(&rows[m][n].mul(&solution[n]))
                })
            })
            .collect();
        let matrix: Vec<Vec<FqFrac>> = block
            .iter()
            .map(|&m| block.iter().map(|&n| rows[m][n].clone()).collect())
            .collect();
        let x = gauss_solve(matrix, rhs)?;
        for (&n, v) in block.iter().zip(x) {
            solution[n] = v;
        }
        start = end;
    }
    let expansion = CarlitzExpansion::from_coeffs(solution.into_iter().enumerate().map(|(n, c)| (n as u64, c)).collect());
    // round trip on every sample point
    for (m, v) in values.iter().enumerate() {
        let back = expansion.evaluate(basis, &poly_by_index(field, m as u64))?;
        if back != FqFrac::from_poly(v.clone()) {
            return Err(Error::Inconsistent(format!("expansion misses value at point {m}")));
        }
    }
    Ok(expansion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FqField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f2() -> FqField {
        FqField::prime(2).unwrap()
    }

    fn poly(f: &FqField, s: &str) -> FqPoly {
        FqPoly::parse(f, s).unwrap()
    }

    #[test]
    fn basis_examples_f2() {
        let f = f2();
        let b = CarlitzBasis::build(&f, 2, Construction::CrossChecked { budget: 1000 }).unwrap();
        assert_eq!(b.d(0).to_string(), "1");
        assert_eq!(b.e(0).coeffs(), &[FqPoly::one(&f)]);
        assert_eq!(b.e(1).to_dense(), vec![poly(&f, "0"), poly(&f, "1"), poly(&f, "1")]);
        assert_eq!(b.d(1).to_string(), "t^2+t");
        let e2: Vec<String> = b.e(2).coeffs().iter().map(|c| c.to_string()).collect();
        assert_eq!(e2, ["t^2+t", "t^2+t+1", "1"]);
        assert_eq!(b.d(2).to_string(), "t^8+t^6+t^5+t^3");
        assert_eq!(*b.d(2), monic_product(&f, 2, 1000).unwrap());
    }

    #[test]
    fn factorials_are_monic_products() {
        for (p, m0, kmax) in [(2, 1, 3), (3, 1, 3), (2, 2, 3)] {
            let f = FqField::new(p, m0).unwrap();
            let b = CarlitzBasis::build(&f, kmax, Construction::CrossChecked { budget: 10_000 }).unwrap();
            for k in 0..=kmax {
                assert_eq!(*b.d(k), monic_product(&f, k, 10_000).unwrap(), "q={} k={k}", f.q());
            }
        }
    }

    #[test]
    fn cross_checked_build_respects_budget() {
        let f = FqField::prime(3).unwrap();
        assert!(matches!(
            CarlitzBasis::build(&f, 5, Construction::CrossChecked { budget: 100 }),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(CarlitzBasis::build(&f, 5, Construction::Recursion).is_ok());
    }

    #[test]
    fn additive_dense_rejects_other_monomials() {
        let f = f2();
        let dense = vec![poly(&f, "0"), poly(&f, "1"), poly(&f, "0"), poly(&f, "t")];
        assert!(AdditivePoly::from_dense(&f, &dense).is_err());
    }

    #[test]
    fn e_k_is_fq_linear() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, m0) in [(2, 1), (3, 1), (2, 2)] {
            let f = FqField::new(p, m0).unwrap();
            let b = CarlitzBasis::build(&f, 3, Construction::Recursion).unwrap();
            for k in 0..=3 {
                for _ in 0..10 {
                    let x = FqPoly::random(&f, 4, &mut rng);
                    let y = FqPoly::random(&f, 4, &mut rng);
                    let a = f.random_elem(&mut rng);
                    let c = f.random_elem(&mut rng);
                    let lhs = b.e(k).eval(&(&x.scale(&a) + &y.scale(&c)));
                    let rhs = &b.e(k).eval(&x).scale(&a) + &b.e(k).eval(&y).scale(&c);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn g_examples() {
        let f = f2();
        let b = CarlitzBasis::build(&f, 3, Construction::Recursion).unwrap();
        let t = FqPoly::t(&f);
        assert!(b.g(0, &poly(&f, "t^3+1")).unwrap().to_poly().unwrap().is_one());
        assert_eq!(b.g(1, &t).unwrap().to_string(), "t");
        // (t^4 + t^2) / (t^2 + t) = t^2 + t, confirmed by division
        let g = b.g(2, &poly(&f, "t^2")).unwrap();
        let (q, r) = poly(&f, "t^4+t^2").divrem(&poly(&f, "t^2+t")).unwrap();
        assert!(r.is_zero());
        assert_eq!(g.to_poly().unwrap(), q);
        assert_eq!(q.to_string(), "t^2+t");
        assert!(matches!(b.g(16, &t), Err(Error::IndexOverflow { .. })));
        let vals = b.g_values(&poly(&f, "t^3+t"), 15).unwrap();
        for (n, v) in vals.iter().enumerate() {
            assert_eq!(*v, b.g(n as u64, &poly(&f, "t^3+t")).unwrap());
            assert!(v.is_integral());
        }
    }

    #[test]
    fn integrality_examples() {
        let f = f2();
        let b = CarlitzBasis::build(&f, 1, Construction::Recursion).unwrap();
        let g = poly(&f, "t^2+t+1");
        let e1 = b.e(1).eval(&g);
        assert_eq!(e1.to_string(), "t^4+t");
        assert_eq!(e1.div_exact(b.d(1)).unwrap(), g);
        assert!(integrality_check(&b, 1, std::slice::from_ref(&g)).unwrap().passed());
        assert!(integrality_check(&b, 0, std::slice::from_ref(&g)).unwrap().passed());
        assert!(integrality_check(&b, 2, &[g]).is_err());

        let f3 = FqField::prime(3).unwrap();
        let b3 = CarlitzBasis::build(&f3, 1, Construction::Recursion).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let samples: Vec<FqPoly> = (0..50).map(|_| FqPoly::random(&f3, 5, &mut rng)).collect();
        let r = integrality_check(&b3, 1, &samples).unwrap();
        assert_eq!(r.checked, 50);
        assert!(r.passed());
    }

    #[test]
    fn binomial_identity_small() {
        let f = f2();
        let b = CarlitzBasis::build(&f, 1, Construction::Recursion).unwrap();
        let r1 = carlitz_binomial_identity(&b, 1).unwrap();
        assert!(r1.holds);
        assert_eq!(r1.surviving_terms, 2);
        let r2 = carlitz_binomial_identity(&b, 2).unwrap();
        assert!(r2.holds);
        assert_eq!(r2.surviving_terms, 2);
        let r3 = carlitz_binomial_identity(&b, 3).unwrap();
        assert!(r3.holds);
        assert_eq!(r3.surviving_terms, 4);
    }

    #[test]
    fn expansion_examples() {
        let f = f2();
        let b = CarlitzBasis::build(&f, 2, Construction::Recursion).unwrap();
        let points: Vec<FqPoly> = enumerate_polys(&f, 2, 100).unwrap().collect();

        let c = poly(&f, "t^2+1");
        let e = expand_in_g(&b, 2, &vec![c.clone(); 4], 100).unwrap();
        assert_eq!(e.coeffs().len(), 1);
        assert_eq!(e.coeff(0).unwrap().to_poly().unwrap(), c);

        let e = expand_in_g(&b, 2, &points, 100).unwrap();
        assert_eq!(e.coeffs().len(), 1);
        assert!(e.coeff(1).unwrap().to_poly().unwrap().is_one());

        // x^2 = G_1 + (t^2 + t) G_2
        let squares: Vec<FqPoly> = points.iter().map(|g| g.pow(2)).collect();
        let e = expand_in_g(&b, 2, &squares, 100).unwrap();
        assert_eq!(e.coeffs().len(), 2);
        assert!(e.coeff(1).unwrap().to_poly().unwrap().is_one());
        assert_eq!(e.coeff(2).unwrap().to_string(), "t^2+t");

        assert!(expand_in_g(&b, 2, &squares[..3], 100).is_err());
    }
}
