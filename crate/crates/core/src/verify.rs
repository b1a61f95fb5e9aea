//! Property sweeps over every module, each checked against an independent
//! oracle. [`verify_all`] runs the full set with fixed seeds.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::carlitz::{carlitz_binomial_identity, e_k_by_product, expand_in_g, integrality_check, monic_product, CarlitzBasis, Construction};
use crate::digit_group::{binom_symmetry_check, subgroup_embedding_mismatches, verify_basic_s, DigitPerm, PropertyTally, SweepSpec};
use crate::exact::{binomial, binomial_expand, binomial_poly, binomial_series_partial, binomial_series_two_var, powi, PascalRows};
use crate::fq::{digit_factorization, frobenius_check, FqBiPoly, FqField, FqPoly};
use crate::mahler::{mahler_decay_profile, newton_coefficients, newton_reconstruct, one_unit_power, SampledFunction, Valuation};
use crate::measures::{sigma_automorphism, CarlitzFunction, DividedOperator, FiniteMeasure, QuotientRing};
use crate::padic::{
    binomial_mod_p_padic, carries_adding, digits_of, ell_q, from_digits, kummer_valuation, lucas_binomial_mod_p, valuation,
    PAdicTrunc, PrimePower,
};
use crate::{ExactInt, ExactRational, Result};

const MAX_REPORTED: usize = 20;

/// Outcome of one property sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub module: String,
    pub checked: u64,
    pub failures: u64,
    pub counterexamples: Vec<String>,
}

impl SuiteReport {
    pub fn new(module: &str, name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            module: module.to_string(),
            checked: 0,
            failures: 0,
            counterexamples: Vec::new(),
        }
    }

    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.counterexamples.len() < MAX_REPORTED {
                self.counterexamples.push(witness());
            }
        }
    }

    /// Records an error from the code under test as a failure.
    pub fn check_result<T>(&mut self, r: Result<T>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{}: {e}", context()));
                None
            }
        }
    }

    fn absorb(&mut self, tally: &PropertyTally, label: &str) {
        self.checked += tally.checked;
        self.failures += tally.failures;
        for c in &tally.counterexamples {
            if self.counterexamples.len() < MAX_REPORTED {
                self.counterexamples.push(format!("{label}: {c}"));
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn field(q: u64) -> FqField {
    let pp = PrimePower::from_q(q).expect("prime power");
    FqField::new(pp.p(), pp.m0()).expect("field")
}

fn random_rational<R: Rng + ?Sized>(rng: &mut R, num: i64, den: i64) -> ExactRational {
    ExactRational::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into())
}

// ---------------------------------------------------------------------------
// Binomial coefficients and series.

/// Pascal recurrence and symmetry for `k <= n <= max_n`.
pub fn pascal_suite(max_n: usize) -> SuiteReport {
    let mut r = SuiteReport::new("exact_core", "pascal recurrence and symmetry");
    let rows: Vec<Vec<ExactInt>> = PascalRows::new().take(max_n + 1).collect();
    for n in 0..=max_n {
        let nn = ExactInt::from(n);
        for k in 0..=n {
            let direct = binomial(&nn, &ExactInt::from(k));
            r.check(direct == rows[n][k], || format!("C({n},{k}) = {direct}, Pascal row gives {}", rows[n][k]));
            r.check(direct == binomial(&nn, &ExactInt::from(n - k)), || format!("C({n},{k}) != C({n},{})", n - k));
        }
    }
    r
}

/// `C(s, k)` has denominator 1 at natural `s`, and equals `C(n, k)`.
pub fn integrality_on_naturals_suite(max_n: i64, max_k: usize) -> SuiteReport {
    let mut r = SuiteReport::new("exact_core", "binomial polynomials integral on naturals");
    for n in 0..=max_n {
        let s = ExactRational::from_integer(n.into());
        for k in 0..=max_k {
            let v = binomial_poly(&s, k);
            let ok = v.is_integer() && v.to_integer() == binomial(&ExactInt::from(n), &ExactInt::from(k));
            r.check(ok, || format!("C({n},{k}) as a polynomial value is {v}"));
        }
    }
    r
}

/// The binomial expansion against `(x+y)^n` by repeated multiplication.
pub fn binomial_theorem_suite(seed: u64, samples: usize, max_n: usize) -> SuiteReport {
    let mut r = SuiteReport::new("exact_core", "binomial theorem on random rationals");
    let mut rng = rng_for(seed, 1);
    for _ in 0..samples {
        let x = random_rational(&mut rng, 40, 12);
        let y = random_rational(&mut rng, 40, 12);
        let n = rng.gen_range(0..=max_n);
        let mut product = ExactRational::one();
        for _ in 0..n {
            product *= &x + &y;
        }
        r.check(binomial_expand(&x, &y, n) == product, || format!("x={x}, y={y}, n={n}"));
    }
    r
}

/// Partial sums of `sum C(n,k) x^k y^(n-k)` for `n = -1, -2, -3` within
/// `|x/y|^(N/2)` of `(x+y)^n` at `N = terms`.
pub fn negative_exponent_suite(seed: u64, samples: usize, terms: usize) -> SuiteReport {
    let mut r = SuiteReport::new("exact_core", "negative-exponent two-variable series");
    let mut rng = rng_for(seed, 2);
    for _ in 0..samples {
        let mut y = random_rational(&mut rng, 30, 7);
        if y.is_zero() {
            y = ExactRational::one();
        }
        // |x/y| <= 2/3: closer to 1 the polynomial growth of C(n, N) beats the bound
        let den = rng.gen_range(3..=12i64);
        let reach = 2 * den / 3;
        let ratio = ExactRational::new(rng.gen_range(-reach..=reach).into(), den.into());
        let x = &y * &ratio;
        for n in [-1i64, -2, -3] {
            let exact = powi(&(&x + &y), n);
            let partial = binomial_series_two_var(&x, &y, n, terms);
            let bound = ratio.abs().pow((terms / 2) as i32);
            let ok = ratio.is_zero() && partial == exact || (partial - &exact).abs() < bound;
            r.check(ok, || format!("n={n}, x={x}, y={y}"));
        }
    }
    r
}

/// `|partial_60(1/2, 9/16) - 5/4| < 10^-10` and `|partial_20(-1, 1/2) - 2/3| < 10^-6`.
pub fn binomial_series_suite() -> SuiteReport {
    let mut r = SuiteReport::new("exact_core", "binomial series partial sums");
    let q = |n: i64, d: i64| ExactRational::new(n.into(), d.into());
    let pow10 = |e: usize| ExactRational::new(1.into(), num_traits::pow(ExactInt::from(10), e));
    let cases = [((q(1, 2), q(9, 16), 60usize), q(5, 4), pow10(10)), ((q(-1, 1), q(1, 2), 20), q(2, 3), pow10(6))];
    for ((s, x, terms), limit, tol) in cases {
        let err = (binomial_series_partial(&s, &x, terms) - &limit).abs();
        r.check(err < tol, || format!("s={s}, x={x}, terms={terms}: error {err} >= {tol}"));
    }
    // a natural exponent terminates exactly
    for terms in 2..8 {
        r.check(binomial_series_partial(&q(2, 1), &q(1, 3), terms) == q(16, 9), || format!("(1+1/3)^2 at {terms} terms"));
    }
    r
}

// ---------------------------------------------------------------------------
// Lucas, Kummer and digits.

/// Lucas and Kummer against exact Pascal rows, for all `k <= n <= max_n`.
pub fn lucas_kummer_suites(primes: &[u64], max_n: usize) -> (SuiteReport, SuiteReport) {
    let mut lucas = SuiteReport::new("padic_digits", "Lucas congruence against exact binomials");
    let mut kummer = SuiteReport::new("padic_digits", "Kummer carries against exact valuations");
    for (n, row) in PascalRows::<ExactInt>::new().take(max_n + 1).enumerate() {
        let n = n as u64;
        for (k, exact) in row.iter().enumerate() {
            let k = k as u64;
            for &p in primes {
                let residue = exact.mod_floor(&ExactInt::from(p));
                let got = lucas_binomial_mod_p(&n, &k, p);
                lucas.check(got.as_ref().is_ok_and(|&g| ExactInt::from(g) == residue), || {
                    format!("C({n},{k}) mod {p}: Lucas {got:?}, exact {residue}")
                });
                let carries = kummer_valuation(&n, &k, p);
                let v = valuation(exact, p);
                kummer.check(carries.as_ref().ok() == v.as_ref(), || {
                    format!("v_{p}(C({n},{k})): carries {carries:?}, division {v:?}")
                });
            }
        }
    }
    (lucas, kummer)
}

/// `from_digits(digits_of(n))` is `n` for `n <= max_n`.
pub fn digit_round_trip_suite(bases: &[u64], max_n: u64) -> SuiteReport {
    let mut r = SuiteReport::new("padic_digits", "digit expansion round trip");
    for &b in bases {
        for n in 0..=max_n {
            let back = digits_of(&n, b).map(|d| from_digits::<u64>(&d, b));
            r.check(back.as_ref().is_ok_and(|&m| m == n), || format!("{n} in base {b} -> {back:?}"));
        }
    }
    r
}

/// `ell_q(a+b) = ell_q(a) + ell_q(b) - (q-1) * carries(a, b)`.
pub fn digit_sum_carry_suite(seed: u64, bases: &[u64], samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("padic_digits", "digit sums lose q-1 per carry");
    let mut rng = rng_for(seed, 3);
    for &q in bases {
        for _ in 0..samples {
            let a: u64 = rng.gen_range(0..1 << 40);
            let b: u64 = rng.gen_range(0..1 << 40);
            let carries = carries_adding(&a, &b, q).unwrap().carry_count as u64;
            let lhs = ell_q(&(a + b), q).unwrap();
            let rhs = ell_q(&a, q).unwrap() + ell_q(&b, q).unwrap() - (q - 1) * carries;
            r.check(lhs == rhs, || format!("q={q}, a={a}, b={b}"));
        }
    }
    r
}

/// `binomial_mod_p_padic` on an embedded natural agrees with Lucas.
pub fn padic_embedding_suite(bases: &[u64], max_n: u64, precision: usize) -> SuiteReport {
    let mut r = SuiteReport::new("padic_digits", "truncated p-adic binomials extend Lucas");
    for &q in bases {
        let base = PrimePower::from_q(q).unwrap();
        let p = base.p();
        for n in 0..=max_n {
            let y = PAdicTrunc::from_u64(n, base, precision).unwrap();
            for k in 0..=max_n {
                let lhs = binomial_mod_p_padic(&y, &k, p);
                let rhs = lucas_binomial_mod_p(&n, &k, p);
                r.check(lhs.is_ok() && lhs.as_ref().ok() == rhs.as_ref().ok(), || {
                    format!("q={q}, y={n}, k={k}: {lhs:?} vs {rhs:?}")
                });
            }
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Polynomials over F_q.

const SMALL_FIELDS: [u64; 4] = [2, 3, 4, 9];

/// Associativity, commutativity and distributivity on random triples.
pub fn ring_axioms_suite(seed: u64, orders: &[u64], samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("fq_poly", "ring axioms on random triples");
    let mut rng = rng_for(seed, 4);
    for &q in orders {
        let f = field(q);
        for _ in 0..samples {
            let a = FqPoly::random(&f, 8, &mut rng);
            let b = FqPoly::random(&f, 8, &mut rng);
            let c = FqPoly::random(&f, 8, &mut rng);
            let ok = &(&a * &b) * &c == &a * &(&b * &c)
                && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
                && &a * &b == &b * &a
                && &(&a + &b) + &c == &a + &(&b + &c)
                && &(&a - &b) + &b == a;
            r.check(ok, || format!("F_{q}: a={a}, b={b}, c={c}"));
        }
    }
    r
}

/// `a = quot*b + rem` with `deg rem < deg b`.
pub fn divrem_suite(seed: u64, orders: &[u64], samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("fq_poly", "division with remainder");
    let mut rng = rng_for(seed, 5);
    for &q in orders {
        let f = field(q);
        for _ in 0..samples {
            let a = FqPoly::random(&f, 12, &mut rng);
            let deg = rng.gen_range(0..=6);
            let mut b = FqPoly::random(&f, deg, &mut rng);
            if b.is_zero() {
                b = FqPoly::one(&f);
            }
            let ok = match a.divrem(&b) {
                Ok((quot, rem)) => &(&quot * &b) + &rem == a && rem.degree().is_none_or(|d| Some(d) < b.degree()),
                Err(_) => false,
            };
            r.check(ok, || format!("F_{q}: {a} / {b}"));
        }
    }
    r
}

/// `(a+b)^p = a^p + b^p` on random pairs, and `(x+y)^p = x^p + y^p`.
pub fn frobenius_suite(seed: u64, orders: &[u64], samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("fq_poly", "Frobenius is additive");
    let mut rng = rng_for(seed, 6);
    for &q in orders {
        let report = frobenius_check(&field(q), samples, 10, &mut rng);
        r.check(report.bivariate_identity, || format!("F_{q}: (x+y)^p != x^p + y^p"));
        r.checked += report.samples_checked as u64 - report.counterexamples.len() as u64;
        for (a, b) in &report.counterexamples {
            r.check(false, || format!("F_{q}: a={a}, b={b}"));
        }
    }
    r
}

/// `(x+y)^n` as the digit product equals the direct expansion.
pub fn digit_factorization_suite(cases: &[(u64, u64)], budget: u64) -> SuiteReport {
    let mut r = SuiteReport::new("fq_poly", "digit factorization of (x+y)^n");
    for &(q, max_n) in cases {
        let f = field(q);
        for n in 0..=max_n {
            let got = digit_factorization(n, &f, budget);
            r.check(got.is_ok(), || format!("F_{q}, n={n}: {}", got.unwrap_err()));
        }
    }
    r
}

/// `a^q = a` for every element of `F_q`.
pub fn fermat_suite(orders: &[u64]) -> SuiteReport {
    let mut r = SuiteReport::new("fq_poly", "a^q = a in F_q");
    for &q in orders {
        let f = field(q);
        for a in f.elements() {
            r.check(a.pow(q) == a, || format!("F_{q}: {a}"));
        }
        let one = f.one();
        let frob = FqBiPoly::x(&one).plus(&FqBiPoly::y(&one)).pow(q);
        let sum = FqBiPoly::term(one.clone(), q as u32, 0).plus(&FqBiPoly::term(one, 0, q as u32));
        r.check(frob == sum, || format!("F_{q}: (x+y)^q"));
    }
    r
}

// ---------------------------------------------------------------------------
// Carlitz polynomials.

/// `D_k` against the product of monic polynomials, and the two constructions
/// of `e_k` against each other.
pub fn carlitz_factorial_suite(factorial_cases: &[(u64, usize)], agreement_cases: &[(u64, usize)], budget: u64) -> SuiteReport {
    let mut r = SuiteReport::new("carlitz", "Carlitz factorials and e_k constructions");
    for &(q, max_k) in factorial_cases {
        let f = field(q);
        let Some(basis) = r.check_result(CarlitzBasis::build(&f, max_k, Construction::Recursion), || format!("F_{q}")) else {
            continue;
        };
        for k in 0..=max_k {
            let product = monic_product(&f, k, budget);
            r.check(product.as_ref().ok() == Some(basis.d(k)), || format!("F_{q}: D_{k} = {}, product {product:?}", basis.d(k)));
        }
    }
    for &(q, max_k) in agreement_cases {
        let f = field(q);
        let Some(basis) = r.check_result(CarlitzBasis::build(&f, max_k, Construction::Recursion), || format!("F_{q}")) else {
            continue;
        };
        for k in 0..=max_k {
            let dense = e_k_by_product(&f, k, budget);
            r.check(dense.as_ref().ok() == Some(&basis.e(k).to_dense()), || format!("F_{q}: e_{k} constructions differ"));
        }
    }
    r
}

/// `e_k(a x + b y) = a e_k(x) + b e_k(y)` for scalars `a, b`.
pub fn carlitz_linearity_suite(seed: u64, orders: &[u64], max_k: usize, samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("carlitz", "e_k is F_q-linear");
    let mut rng = rng_for(seed, 7);
    for &q in orders {
        let f = field(q);
        let basis = CarlitzBasis::build(&f, max_k, Construction::Recursion).unwrap();
        for _ in 0..samples {
            let k = rng.gen_range(0..=max_k);
            let (a, b) = (f.random_elem(&mut rng), f.random_elem(&mut rng));
            let x = FqPoly::random(&f, 4, &mut rng);
            let y = FqPoly::random(&f, 4, &mut rng);
            let e = basis.e(k);
            let lhs = e.eval(&(&x.scale(&a) + &y.scale(&b)));
            let rhs = &e.eval(&x).scale(&a) + &e.eval(&y).scale(&b);
            r.check(lhs == rhs, || format!("F_{q}, k={k}: a={a}, b={b}, x={x}, y={y}"));
        }
    }
    r
}

/// `D_k` divides `e_k(g)` for random `g`.
pub fn integrality_suite(seed: u64, orders: &[u64], max_k: usize, samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("carlitz", "e_k(g)/D_k is integral");
    let mut rng = rng_for(seed, 8);
    for &q in orders {
        let f = field(q);
        let basis = CarlitzBasis::build(&f, max_k, Construction::Recursion).unwrap();
        for k in 0..=max_k {
            let gs: Vec<FqPoly> = (0..samples).map(|_| FqPoly::random(&f, 10, &mut rng)).collect();
            if let Some(report) = r.check_result(integrality_check(&basis, k, &gs), || format!("F_{q}, k={k}")) {
                r.checked += (report.checked - report.failures.len()) as u64;
                for g in report.failures {
                    r.check(false, || format!("F_{q}, k={k}: g={g}"));
                }
            }
        }
    }
    r
}

/// `G_n(x+y) = sum_j C(n,j) G_j(x) G_{n-j}(y)` for `n < bound`.
pub fn carlitz_binomial_suite(cases: &[(u64, u64)]) -> SuiteReport {
    let mut r = SuiteReport::new("carlitz", "Carlitz binomial theorem");
    for &(q, bound) in cases {
        let f = field(q);
        let top = digits_of(&(bound.max(2) - 1), q).unwrap().len();
        let basis = CarlitzBasis::build(&f, top, Construction::Recursion).unwrap();
        for n in 0..bound {
            if let Some(rep) = r.check_result(carlitz_binomial_identity(&basis, n), || format!("F_{q}, n={n}")) {
                r.check(rep.holds, || format!("F_{q}, n={n}"));
            }
        }
    }
    r
}

/// Expanding random values on all polynomials of degree `< d` and evaluating
/// the expansion reproduces them.
pub fn expansion_round_trip_suite(seed: u64, cases: &[(u64, usize)], samples: usize, budget: u64) -> SuiteReport {
    let mut r = SuiteReport::new("carlitz", "expansion in G_n round trip");
    let mut rng = rng_for(seed, 9);
    for &(q, d) in cases {
        let f = field(q);
        let basis = CarlitzBasis::build(&f, d, Construction::Recursion).unwrap();
        let size = q.pow(d as u32);
        for _ in 0..samples {
            let values: Vec<FqPoly> = (0..size).map(|_| FqPoly::random(&f, 3, &mut rng)).collect();
            // expand_in_g re-evaluates on every point and errors on mismatch
            let got = expand_in_g(&basis, d, &values, budget);
            r.check(got.is_ok(), || format!("F_{q}, d={d}: {}", got.unwrap_err()));
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Divided operators and measures.

/// Rings `(q, f)` used by the operator suites.
pub const OPERATOR_RINGS: [(u64, &str); 4] = [(2, "t"), (2, "t^2+t+1"), (3, "t"), (3, "t^2+1")];

fn quotient_ring(q: u64, f: &str, level: usize) -> Result<QuotientRing> {
    let fld = field(q);
    QuotientRing::new(FqPoly::parse(&fld, f)?, level)
}

/// Commutativity and associativity of the operator product.
pub fn operator_algebra_suite(seed: u64, rings: &[(u64, &str)], level: usize, trunc: usize, samples: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("divided_measures", "operator product commutative and associative");
    let mut rng = rng_for(seed, 10);
    for &(q, f) in rings {
        let ring = quotient_ring(q, f, level)?;
        for _ in 0..samples {
            let a = DividedOperator::random(&ring, trunc, &mut rng);
            let b = DividedOperator::random(&ring, trunc, &mut rng);
            let c = DividedOperator::random(&ring, trunc, &mut rng);
            let ab = a.mul(&b)?;
            let ok = ab == b.mul(&a)? && ab.mul(&c)? == a.mul(&b.mul(&c)?)?;
            r.check(ok, || format!("{ring:?}: {}", serde_json::to_string(&(&a, &b, &c)).unwrap()));
        }
    }
    Ok(r)
}

/// `op(delta_a) op(delta_b) = op(delta_{a+b})`.
pub fn delta_bridge_suite(seed: u64, rings: &[(u64, &str)], level: usize, trunc: usize, samples: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("divided_measures", "delta measures multiply like translations");
    let mut rng = rng_for(seed, 11);
    for &(q, f) in rings {
        let ring = quotient_ring(q, f, level)?;
        let top = digits_of(&(trunc as u64), q)?.len();
        let basis = CarlitzBasis::build(ring.field(), top, Construction::Recursion)?;
        for _ in 0..samples {
            let a = ring.random(&mut rng);
            let b = ring.random(&mut rng);
            let da = FiniteMeasure::delta(&ring, &a, &basis, trunc)?.to_operator();
            let db = FiniteMeasure::delta(&ring, &b, &basis, trunc)?.to_operator();
            let dab = FiniteMeasure::delta(&ring, &(&a + &b), &basis, trunc)?.to_operator();
            r.check(da.mul(&db)? == dab, || format!("{ring:?}: a={a}, b={b}"));
        }
    }
    Ok(r)
}

/// Convolution has `delta_0` as identity and is commutative and associative.
pub fn convolution_suite(seed: u64, rings: &[(u64, &str)], level: usize, trunc: usize, samples: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("divided_measures", "convolution identity, commutativity, associativity");
    let mut rng = rng_for(seed, 12);
    for &(q, f) in rings {
        let ring = quotient_ring(q, f, level)?;
        let top = digits_of(&(trunc as u64), q)?.len();
        let basis = CarlitzBasis::build(ring.field(), top, Construction::Recursion)?;
        let unit = FiniteMeasure::delta(&ring, &FqPoly::zero(ring.field()), &basis, trunc)?;
        for _ in 0..samples {
            let mu = FiniteMeasure::from_operator(&DividedOperator::random(&ring, trunc, &mut rng));
            let nu = FiniteMeasure::from_operator(&DividedOperator::random(&ring, trunc, &mut rng));
            let la = FiniteMeasure::delta(&ring, &ring.random(&mut rng), &basis, trunc)?;
            let ok = mu.convolve(&unit)? == mu
                && mu.convolve(&nu)? == nu.convolve(&mu)?
                && mu.convolve(&nu)?.convolve(&la)? == mu.convolve(&nu.convolve(&la)?)?;
            r.check(ok, || format!("{ring:?}"));
        }
    }
    Ok(r)
}

/// Acting by `delta_a` on `f = sum a_n G_n` translates `f` by `a`.
pub fn action_suite(seed: u64, rings: &[(u64, &str)], level: usize, trunc: usize, samples: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("divided_measures", "delta action is translation");
    let mut rng = rng_for(seed, 13);
    for &(q, f) in rings {
        let ring = quotient_ring(q, f, level)?;
        let top = digits_of(&(trunc as u64), q)?.len();
        let basis = CarlitzBasis::build(ring.field(), top, Construction::Recursion)?;
        for _ in 0..samples {
            let a = ring.random(&mut rng);
            let da = FiniteMeasure::delta(&ring, &a, &basis, trunc)?;
            let func = CarlitzFunction::new(ring.clone(), (0..=trunc).map(|_| ring.random(&mut rng)).collect())?;
            let moved = da.act_on(&func)?;
            for _ in 0..3 {
                let x = ring.random(&mut rng);
                let ok = moved.evaluate(&basis, &x)? == func.evaluate(&basis, &(&x + &a))?;
                r.check(ok, || format!("{ring:?}: a={a}, x={x}"));
            }
        }
    }
    Ok(r)
}

/// `sigma(AB) = sigma(A) sigma(B)` with truncation `q^width - 1` and `sigma`
/// moving only the lowest `width` digit positions.
pub fn sigma_homomorphism_suite(seed: u64, cases: &[(u64, usize)], level: usize, samples: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("divided_measures", "digit permutations are operator automorphisms");
    let mut rng = rng_for(seed, 14);
    for &(q, width) in cases {
        let ring = quotient_ring(q, "t", level)?;
        let base = PrimePower::from_q(q)?;
        let trunc = (q.pow(width as u32) - 1) as usize;
        for _ in 0..samples {
            let sigma = DigitPerm::random(base, width, &mut rng);
            let a = DividedOperator::random(&ring, trunc, &mut rng);
            let b = DividedOperator::random(&ring, trunc, &mut rng);
            let lhs = sigma_automorphism(&sigma, &a.mul(&b)?)?;
            let rhs = sigma_automorphism(&sigma, &a)?.mul(&sigma_automorphism(&sigma, &b)?)?;
            r.check(lhs == rhs, || format!("F_{q}: sigma={}", serde_json::to_string(&sigma).unwrap()));
        }
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// Digit permutations.

/// `(rho tau)_* = rho_* tau_*` on every `y < q^width`.
pub fn group_law_suite(seed: u64, orders: &[u64], width: usize, samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("digit_group", "rho_* respects composition");
    let mut rng = rng_for(seed, 15);
    for &q in orders {
        let base = PrimePower::from_q(q).unwrap();
        for _ in 0..samples {
            let rho = DigitPerm::random(base, width, &mut rng);
            let tau = DigitPerm::random(base, width, &mut rng);
            let comp = rho.compose(&tau).unwrap();
            for n in 0..q.pow(width as u32) {
                let y = PAdicTrunc::from_u64(n, base, width).unwrap();
                let lhs = comp.rho_star(&y).unwrap();
                let rhs = rho.rho_star(&tau.rho_star(&y).unwrap()).unwrap();
                r.check(lhs == rhs, || format!("q={q}, y={n}"));
            }
        }
    }
    r
}

/// Base-`q` permutations read as base-`p` block permutations agree, and the
/// digit sum and `mod p-1` invariants hold in both readings.
pub fn subgroup_embedding_suite(seed: u64, q: u64, width: usize, samples: usize) -> SuiteReport {
    let mut r = SuiteReport::new("digit_group", "S_(q) embeds in S_(p)");
    let mut rng = rng_for(seed, 16);
    let base = PrimePower::from_q(q).unwrap();
    let p = base.p();
    for _ in 0..samples {
        let rho = DigitPerm::random(base, width, &mut rng);
        let bad = subgroup_embedding_mismatches(&rho, width).unwrap();
        r.check(bad.is_empty(), || format!("q={q}: mismatches at {bad:?}"));
        let induced = rho.to_base_p();
        for n in 0..q.pow(width as u32) {
            let m = induced.rho_star_u64(n).unwrap();
            let ok = ell_q(&n, p).unwrap() == ell_q(&m, p).unwrap()
                && ell_q(&n, q).unwrap() == ell_q(&m, q).unwrap()
                && (p == 2 || n % (p - 1) == m % (p - 1))
                && n % (q - 1) == m % (q - 1);
            r.check(ok, || format!("q={q}, n={n}, image {m}"));
        }
    }
    r
}

/// All five parts of the basic structure theorem for `rho_*`.
pub fn basic_s_suite(seed: u64, orders: &[u64], digits: usize, perms: usize) -> SuiteReport {
    let mut r = SuiteReport::new("digit_group", "rho_* structure: bijective, semi-additive, sign, digit sum, mod q-1");
    let mut rng = rng_for(seed, 17);
    for &q in orders {
        let base = PrimePower::from_q(q).unwrap();
        for _ in 0..perms {
            let rho = DigitPerm::random(base, digits, &mut rng);
            let spec = SweepSpec {
                digits,
                max_reported: MAX_REPORTED,
            };
            if let Some(rep) = r.check_result(verify_basic_s(&rho, spec), || format!("q={q}")) {
                let tag = |part: &str| format!("q={q}, rho={:?}, {part}", rep.pairs);
                r.absorb(&rep.bijective_and_continuous, &tag("bijective"));
                r.absorb(&rep.semi_additive, &tag("semi-additive"));
                r.absorb(&rep.sign_stable, &tag("sign"));
                r.absorb(&rep.digit_sum_preserved, &tag("digit sum"));
                r.absorb(&rep.congruent_mod_q_minus_1, &tag("mod q-1"));
            }
        }
    }
    r
}

/// The four binomial congruences under random `sigma` in `S_(p)`.
pub fn binomial_symmetry_suite(seed: u64, primes: &[u64], digits: usize, perms: usize) -> SuiteReport {
    let mut r = SuiteReport::new("digit_group", "binomial coefficients invariant under digit permutations");
    let mut rng = rng_for(seed, 18);
    for &p in primes {
        let base = PrimePower::prime(p).unwrap();
        for _ in 0..perms {
            let sigma = DigitPerm::random(base, digits, &mut rng);
            let spec = SweepSpec {
                digits,
                max_reported: MAX_REPORTED,
            };
            if let Some(rep) = r.check_result(binom_symmetry_check(&sigma, spec), || format!("p={p}")) {
                let tag = |part: &str| format!("p={p}, sigma={:?}, {part}", rep.pairs);
                r.absorb(&rep.conjugate_pair, &tag("C(y,k) = C(sy,sk)"));
                r.absorb(&rep.inverse_form, &tag("C(sy,k) = C(y,s^-1 k)"));
                r.absorb(&rep.divisibility, &tag("p | C(y,k) iff p | C(sy,sk)"));
                r.absorb(&rep.sum_form, &tag("C(i+j,i) = C(si+sj,si)"));
            }
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Newton series, Mahler coefficients, one-units.

/// Newton coefficients of random polynomials of degree `<= max_deg` sampled
/// at `0..=horizon` reproduce them at random rational points.
pub fn newton_suite(seed: u64, polys: usize, max_deg: usize, horizon: u64, points: usize) -> SuiteReport {
    let mut r = SuiteReport::new("mahler_newton", "Newton series exact on polynomials");
    let mut rng = rng_for(seed, 19);
    for _ in 0..polys {
        let deg = rng.gen_range(0..=max_deg);
        let coeffs: Vec<ExactRational> = (0..=deg).map(|_| random_rational(&mut rng, 30, 9)).collect();
        let eval = |x: &ExactRational| coeffs.iter().rev().fold(ExactRational::zero(), |acc, c| acc * x + c);
        let f = SampledFunction::sample(horizon, |x| eval(&ExactRational::from_integer(x.into())));
        let a = newton_coefficients(&f);
        for _ in 0..points {
            let x = random_rational(&mut rng, 100, 17);
            r.check(newton_reconstruct(&a, &x) == eval(&x), || format!("degree {deg}, x={x}"));
        }
    }
    r
}

/// Newton coefficients of `C(x, j)` are the unit vector at `j`.
pub fn mahler_binomial_suite(max_j: u64, horizon: u64) -> SuiteReport {
    let mut r = SuiteReport::new("mahler_newton", "Mahler coefficients of C(x, j) are deltas");
    for j in 0..=max_j {
        let f = SampledFunction::sample(horizon, |x| ExactRational::from_integer(binomial(&ExactInt::from(x), &ExactInt::from(j))));
        for (k, a) in newton_coefficients(&f).iter().enumerate() {
            let want = if k as u64 == j { ExactRational::one() } else { ExactRational::zero() };
            r.check(*a == want, || format!("j={j}, k={k}: {a}"));
        }
    }
    r
}

/// `v_p(a_k) = k` for `f(x) = (1+p)^x`.
pub fn mahler_profile_suite(primes: &[u64], max_k: u64) -> SuiteReport {
    let mut r = SuiteReport::new("mahler_newton", "Mahler decay of (1+p)^x");
    for &p in primes {
        let f = SampledFunction::sample(max_k, |x| ExactRational::from_integer(num_traits::pow(ExactInt::from(1 + p), x as usize)));
        match mahler_decay_profile(&f, p) {
            Ok(profile) => {
                for (k, v) in profile.iter().enumerate() {
                    r.check(*v == Valuation::Finite(k as u64), || format!("p={p}, k={k}: v={v}"));
                }
            }
            Err(e) => r.check(false, || format!("p={p}: {e}")),
        }
    }
    r
}

fn random_padic<R: Rng + ?Sized>(rng: &mut R, base: PrimePower, precision: usize) -> PAdicTrunc {
    PAdicTrunc::new(base, (0..precision).map(|_| rng.gen_range(0..base.q())).collect()).unwrap()
}

fn digits_for(trunc: usize, q: u64) -> usize {
    digits_of(&(trunc as u64), q).unwrap().len() + 1
}

/// The coefficient of `u^k` in `(1+u)^y` is `C(y, k) mod p`.
pub fn one_unit_coefficient_suite(seed: u64, orders: &[u64], samples: usize, max_k: usize) -> SuiteReport {
    let mut r = SuiteReport::new("mahler_newton", "(1+u)^y has binomial coefficients mod p");
    let mut rng = rng_for(seed, 20);
    for &q in orders {
        let base = PrimePower::from_q(q).unwrap();
        let f = field(q);
        for _ in 0..samples {
            let y = random_padic(&mut rng, base, digits_for(max_k, q));
            let k = rng.gen_range(0..=max_k);
            let series = one_unit_power(&y, max_k, &f);
            let want = binomial_mod_p_padic(&y, &(k as u64), base.p());
            let ok = match (&series, &want) {
                (Ok(s), Ok(c)) => s.coeff(k) == f.from_int(*c as i64) && s.is_one_unit(),
                _ => false,
            };
            r.check(ok, || format!("q={q}, y={y}, k={k}"));
        }
    }
    r
}

/// `(1+u)^y (1+u)^z = (1+u)^(y+z)` modulo `u^(L+1)`.
pub fn one_unit_homomorphism_suite(seed: u64, orders: &[u64], samples: usize, trunc: usize) -> SuiteReport {
    let mut r = SuiteReport::new("mahler_newton", "y -> (1+u)^y is a homomorphism");
    let mut rng = rng_for(seed, 21);
    for &q in orders {
        let base = PrimePower::from_q(q).unwrap();
        let f = field(q);
        for _ in 0..samples {
            let y = random_padic(&mut rng, base, digits_for(trunc, q));
            let z = random_padic(&mut rng, base, digits_for(trunc, q));
            let ok = (|| -> Result<bool> {
                let lhs = one_unit_power(&y, trunc, &f)?.mul(&one_unit_power(&z, trunc, &f)?)?;
                Ok(lhs == one_unit_power(&y.add(&z)?, trunc, &f)?)
            })();
            r.check(matches!(ok, Ok(true)), || format!("q={q}, y={y}, z={z}"));
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Everything.

/// Parameters for [`verify_all`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub budget: u64,
    /// An extra field `F_{p^m0}` folded into the per-field suites.
    pub p: u64,
    pub m0: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 7,
            budget: crate::DEFAULT_BUDGET,
            p: 2,
            m0: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

fn with_extra(list: &[u64], q: u64) -> Vec<u64> {
    let mut v = list.to_vec();
    if !v.contains(&q) {
        v.push(q);
    }
    v
}

/// Runs every suite at the sizes the acceptance criteria call for.
pub fn verify_all(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let q = PrimePower::new(cfg.p, cfg.m0)?.q();
    FqField::new(cfg.p, cfg.m0)?;
    let seed = cfg.seed;
    let fields = with_extra(&SMALL_FIELDS, q);
    let carlitz_fields = with_extra(&[2, 3, 4], q);
    let extra_ring = (q, "t");
    let mut rings: Vec<(u64, &str)> = OPERATOR_RINGS.to_vec();
    if !rings.contains(&extra_ring) {
        rings.push(extra_ring);
    }

    let (lucas, kummer) = lucas_kummer_suites(&[2, 3, 5, 7], 1500);
    let suites = vec![
        pascal_suite(300),
        integrality_on_naturals_suite(60, 70),
        binomial_theorem_suite(seed, 100, 30),
        negative_exponent_suite(seed, 20, 80),
        binomial_series_suite(),
        lucas,
        kummer,
        digit_round_trip_suite(&[2, 3, 4, 5, 9], 1_000_000),
        digit_sum_carry_suite(seed, &[2, 3, 4, 5, 9], 10_000),
        padic_embedding_suite(&[2, 3, 4, 5], 80, 8),
        ring_axioms_suite(seed, &fields, 1000),
        divrem_suite(seed, &fields, 1000),
        frobenius_suite(seed, &fields, 1000),
        digit_factorization_suite(&[(2, 64), (3, 27)], cfg.budget),
        fermat_suite(&[2, 3, 4, 5, 7, 8, 9]),
        carlitz_factorial_suite(&[(2, 3), (3, 2)], &[(2, 3), (3, 3), (4, 3)], cfg.budget),
        carlitz_linearity_suite(seed, &carlitz_fields, 3, 50),
        integrality_suite(seed, &carlitz_fields, 3, 200),
        carlitz_binomial_suite(&[(2, 16), (3, 9)]),
        expansion_round_trip_suite(seed, &[(2, 3), (3, 2)], 3, cfg.budget),
        operator_algebra_suite(seed, &rings, 3, 8, 250)?,
        delta_bridge_suite(seed, &rings, 3, 8, 100)?,
        convolution_suite(seed, &rings, 3, 8, 30)?,
        action_suite(seed, &rings, 2, 8, 10)?,
        sigma_homomorphism_suite(seed, &[(2, 4), (3, 2), (4, 2)], 2, 200)?,
        group_law_suite(seed, &[2, 3, 4], 4, 10),
        subgroup_embedding_suite(seed, 4, 4, 10),
        basic_s_suite(seed, &[2, 3, 4], 5, 20),
        binomial_symmetry_suite(seed, &[2, 3], 5, 20),
        newton_suite(seed, 20, 15, 20, 50),
        mahler_binomial_suite(12, 20),
        mahler_profile_suite(&[3, 2, 5], 12),
        one_unit_coefficient_suite(seed, &with_extra(&[2, 3, 4, 5, 9], q), 200, 64),
        one_unit_homomorphism_suite(seed, &with_extra(&[2, 3, 4, 9], q), 200, 64),
    ];
    Ok(VerifyReport {
        config: *cfg,
        passed: suites.iter().all(SuiteReport::passed),
        suites,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let (l, k) = lucas_kummer_suites(&[2, 3], 60);
        assert!(l.passed() && k.passed());
        assert!(binomial_series_suite().passed());
        assert!(frobenius_suite(1, &[2, 9], 20).passed());
        assert!(carlitz_binomial_suite(&[(2, 8), (3, 4)]).passed());
        assert!(delta_bridge_suite(1, &OPERATOR_RINGS, 3, 8, 3).unwrap().passed());
        assert!(basic_s_suite(1, &[2, 3], 3, 2).passed());
        assert!(binomial_symmetry_suite(1, &[2, 3], 3, 2).passed());
        assert!(one_unit_coefficient_suite(1, &[2, 4], 10, 64).passed());
    }

    #[test]
    fn failures_are_reported() {
        let mut r = SuiteReport::new("m", "n");
        for i in 0..30 {
            r.check(i % 2 == 0, || format!("odd {i}"));
        }
        assert_eq!(r.checked, 30);
        assert_eq!(r.failures, 15);
        assert_eq!(r.counterexamples.len(), MAX_REPORTED.min(15));
        assert!(!r.passed());
        assert!(!SuiteReport::new("m", "empty").passed());
    }

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<u32> = (0..4).map(|_| rng_for(3, 5).gen()).collect();
        let b: Vec<u32> = (0..4).map(|_| rng_for(3, 5).gen()).collect();
        assert_eq!(a, b);
        assert_ne!(rng_for(3, 5).gen::<u64>(), rng_for(3, 6).gen::<u64>());
    }
}
