use std::io::{Read, Write};
use std::process::ExitCode;

use carlitz_core::carlitz::{carlitz_binomial_identity, expand_in_g, integrality_check, CarlitzBasis, Construction, FracJson};
use carlitz_core::digit_group::{binom_symmetry_check, verify_basic_s, DigitPerm, SweepSpec};
use carlitz_core::exact::{binomial, binomial_poly, binomial_series_partial, nonnegative, parse_int, parse_rational, to_count};
use carlitz_core::fq::{digit_factorization, frobenius_check, FqField, FqPoly};
use carlitz_core::mahler::{mahler_decay_profile, newton_coefficients, newton_reconstruct, one_unit_power, SampledFunction};
use carlitz_core::measures::{sigma_automorphism, CarlitzFunction, DividedOperator, FiniteMeasure, QuotientRing};
use carlitz_core::padic::{carries_adding, digits_of, ell_q, kummer_valuation, lucas_binomial_mod_p, PAdicTrunc, PrimePower};
use carlitz_core::verify::{verify_all, VerifyConfig};
use carlitz_core::{ExactInt, ExactRational, DEFAULT_BUDGET};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "carlitz", version, about = "Exact binomial arithmetic in characteristic 0 and p")]
struct Cli {
    #[command(flatten)]
    cfg: RunConfig,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Characteristic.
    #[arg(long, global = true, default_value_t = 2)]
    p: u64,
    /// Field degree over F_p, so q = p^m0.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    m0: u32,
    /// Number of base-q digits kept for p-adic inputs.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    precision: u64,
    /// Truncation order J (operators) or L (series), or the largest Carlitz index.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    trunc: u64,
    /// Exponent N of the quotient ring F_q[t]/f^N.
    #[arg(long, global = true, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    level: u64,
    /// The irreducible f of the quotient ring.
    #[arg(long, global = true, default_value = "t")]
    modulus: String,
    /// Seed for random sampling.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Cap on enumeration sizes.
    #[arg(long, global = true, env = "CARLITZ_BUDGET", default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// C(n, k); a rational or negative n gives the binomial polynomial value.
    Binom { n: String, k: String },
    /// Partial sum of the binomial series of (1+x)^s.
    #[command(name = "binom-series")]
    BinomSeries {
        s: String,
        x: String,
        #[arg(long, default_value_t = 20)]
        terms: usize,
    },
    /// Newton coefficients of samples f(0), f(1), ...; optionally evaluate the series.
    Newton {
        #[arg(required = true, allow_negative_numbers = true)]
        values: Vec<String>,
        #[arg(long, allow_negative_numbers = true)]
        at: Option<String>,
    },
    /// C(n, k) mod p by Lucas.
    Lucas { n: String, k: String },
    /// v_p(C(n, k)) as a carry count.
    Kummer { n: String, k: String },
    /// Base-q digits; negative n is embedded at --precision digits.
    Digits {
        #[arg(allow_negative_numbers = true)]
        n: String,
    },
    /// (a+b)^p = a^p + b^p on random polynomials over F_q.
    Frobenius {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 10)]
        max_deg: usize,
    },
    /// (x+y)^n as a product over the base-q digits of n.
    #[command(name = "digit-factor")]
    DigitFactor { n: u64 },
    /// Carlitz factorials, e_k and the G_n basis.
    #[command(subcommand)]
    Carlitz(CarlitzCmd),
    /// Divided-power operators and finite measures over F_q[t]/f^N.
    #[command(subcommand)]
    Ops(OpsCmd),
    /// Digit permutations and their action on integers.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Mahler coefficients and one-unit powers.
    #[command(subcommand)]
    Mahler(MahlerCmd),
    /// Every property suite; exit 0 iff all pass.
    #[command(name = "verify-all")]
    VerifyAll,
}

#[derive(Subcommand, Debug)]
enum CarlitzCmd {
    /// D_0..D_K and e_0..e_K with K = --trunc.
    Basis,
    /// G_n(arg) for a polynomial arg in t.
    #[command(name = "G")]
    G { n: u64, arg: String },
    /// D_k divides e_k(g) for random g.
    Integrality {
        k: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// G_n(x+y) = sum C(n,j) G_j(x) G_{n-j}(y) as a polynomial identity.
    #[command(name = "binomial-identity")]
    BinomialIdentity { n: u64 },
    /// Expansion in G_n of the values on all polynomials of degree < d.
    Expand {
        #[arg(long)]
        d: usize,
        #[arg(required = true)]
        values: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum OpsCmd {
    /// Product of two operators (JSON, file path, or - for stdin).
    Mul { a: String, b: String },
    /// The point mass at a polynomial a, in the ring given by --modulus/--level.
    Delta { a: String },
    /// Convolution of two measures.
    Convolve { mu: String, nu: String },
    /// x -> integral of f(x+y) dmu(y).
    Act { mu: String, f: String },
    /// Permute operator indices by a digit permutation.
    Sigma { sigma: String, a: String },
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    /// rho_*(y) for an integer y.
    Rho {
        perm: String,
        #[arg(allow_negative_numbers = true)]
        y: String,
    },
    /// Structure theorem for rho_* on all n < q^digits.
    #[command(name = "verify-basicS")]
    VerifyBasicS {
        /// A permutation; random ones from --seed otherwise.
        #[arg(long)]
        perm: Option<String>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        digits: usize,
    },
    /// Binomial congruences under sigma for all arguments < p^digits.
    #[command(name = "verify-symm")]
    VerifySymm {
        #[arg(long)]
        perm: Option<String>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        digits: usize,
    },
}

#[derive(Subcommand, Debug)]
enum MahlerCmd {
    /// Mahler (Newton) coefficients of samples.
    Coeffs {
        #[arg(required = true, allow_negative_numbers = true)]
        values: Vec<String>,
    },
    /// v_p of each Mahler coefficient.
    Decay {
        #[arg(required = true, allow_negative_numbers = true)]
        values: Vec<String>,
    },
    /// (1+u)^y modulo u^(L+1), L = --trunc.
    #[command(name = "one-unit")]
    OneUnit {
        #[arg(allow_negative_numbers = true)]
        y: String,
    },
}

enum Failure {
    Input(String),
    Property(Value),
}

impl From<carlitz_core::Error> for Failure {
    fn from(e: carlitz_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn emit<T: Serialize>(cfg: &RunConfig, value: &T, text: impl FnOnce() -> String) {
    let body = match cfg.format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable"),
        Format::Text => text(),
    };
    // a closed pipe downstream is not an error worth a panic
    let _ = writeln!(std::io::stdout(), "{body}");
}

/// Emits a report, then fails with its JSON when the property did not hold.
fn emit_report<T: Serialize>(cfg: &RunConfig, report: &T, passed: bool, text: impl FnOnce() -> String) -> Outcome {
    emit(cfg, report, text);
    if passed {
        Ok(())
    } else {
        Err(Failure::Property(serde_json::to_value(report).expect("serializable")))
    }
}

/// Inline JSON, `-` for stdin, or a file path.
fn load<T: DeserializeOwned>(arg: &str) -> Result<T, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{arg}: {e}")))
}

fn samples(values: &[String]) -> Result<SampledFunction<ExactRational>, Failure> {
    if let [only] = values {
        if only.trim_start().starts_with('{') || std::path::Path::new(only).is_file() {
            return load(only);
        }
    }
    let parsed = values.iter().map(|v| parse_rational(v)).collect::<Result<Vec<_>, _>>()?;
    Ok(SampledFunction::new(parsed)?)
}

fn field(cfg: &RunConfig) -> Result<FqField, Failure> {
    Ok(FqField::new(cfg.p, cfg.m0)?)
}

fn base(cfg: &RunConfig) -> Result<PrimePower, Failure> {
    Ok(PrimePower::new(cfg.p, cfg.m0)?)
}

fn natural(s: &str) -> Result<ExactInt, Failure> {
    let n = parse_int(s)?;
    nonnegative(&n)?;
    Ok(n)
}

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(T::to_string).collect()
}

/// A basis with every index up to `max` available.
fn basis_for(field: &FqField, max: u64) -> Result<CarlitzBasis, Failure> {
    let top = digits_of(&max, field.q())?.len() - 1;
    Ok(CarlitzBasis::build(field, top, Construction::Recursion)?)
}

fn run(cli: Cli) -> Outcome {
    let cfg = &cli.cfg;
    match cli.cmd {
        Command::Binom { n, k } => {
            let kk = to_count(&parse_int(&k)?)?;
            let value = match parse_int(&n) {
                Ok(ni) if ni >= ExactInt::from(0) => binomial(&ni, &ExactInt::from(kk)).to_string(),
                _ => binomial_poly(&parse_rational(&n)?, kk).to_string(),
            };
            emit(cfg, &json!({"n": n, "k": k, "value": value}), || value.clone());
        }
        Command::BinomSeries { s, x, terms } => {
            let partial = binomial_series_partial(&parse_rational(&s)?, &parse_rational(&x)?, terms);
            let approx = approx_f64(&partial);
            emit(cfg, &json!({"s": s, "x": x, "terms": terms, "partial": partial.to_string(), "approx": approx}), || {
                format!("{partial} (~{approx})")
            });
        }
        Command::Newton { values, at } => {
            let f = samples(&values)?;
            let coeffs = newton_coefficients(&f);
            let value = match &at {
                Some(x) => Some(newton_reconstruct(&coeffs, &parse_rational(x)?).to_string()),
                None => None,
            };
            emit(cfg, &json!({"coeffs": strings(&coeffs), "at": at, "value": value}), || match &value {
                Some(v) => v.clone(),
                None => strings(&coeffs).join(" "),
            });
        }
        Command::Lucas { n, k } => {
            let residue = lucas_binomial_mod_p(&natural(&n)?, &natural(&k)?, cfg.p)?;
            emit(cfg, &json!({"n": n, "k": k, "p": cfg.p, "residue": residue}), || residue.to_string());
        }
        Command::Kummer { n, k } => {
            let (nn, kk) = (natural(&n)?, natural(&k)?);
            let v = kummer_valuation(&nn, &kk, cfg.p)?;
            let record = carries_adding(&kk, &(&nn - &kk), cfg.p)?;
            emit(cfg, &json!({"n": n, "k": k, "p": cfg.p, "valuation": v, "carries": record}), || v.to_string());
        }
        Command::Digits { n } => {
            let b = base(cfg)?;
            let value = parse_int(&n)?;
            let y = if value < ExactInt::from(0) {
                PAdicTrunc::from_integer(&value, b, cfg.precision as usize)?
            } else {
                let digits = digits_of(&value, b.q())?;
                PAdicTrunc::new(b, digits)?
            };
            let ell = if value < ExactInt::from(0) { None } else { Some(ell_q(&value, b.q())?) };
            emit(cfg, &json!({"n": n, "padic": y, "ell_q": ell}), || {
                let d = strings(y.digits()).join(",");
                match ell {
                    Some(l) => format!("{d}\nell_{} = {l}", b.q()),
                    None => d,
                }
            });
        }
        Command::Frobenius { samples, max_deg } => {
            let f = field(cfg)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let report = frobenius_check(&f, samples, max_deg, &mut rng);
            let passed = report.passed();
            emit_report(cfg, &report, passed, || {
                format!("F_{}: {} samples, {} counterexamples, (x+y)^p identity {}", f.q(), report.samples_checked, report.counterexamples.len(), report.bivariate_identity)
            })?;
        }
        Command::DigitFactor { n } => {
            let f = field(cfg)?;
            let expansion = digit_factorization(n, &f, cfg.budget)?;
            let factors: Vec<String> = carlitz_core::fq::digit_factors(n, f.q())
                .iter()
                .map(|(qk, nk)| format!("(x^{qk}+y^{qk})^{nk}"))
                .collect();
            let text = expansion.to_string();
            emit(cfg, &json!({"n": n, "q": f.q(), "factors": factors, "expansion": text}), || text.clone());
        }
        Command::Carlitz(c) => carlitz(cfg, c)?,
        Command::Ops(c) => ops(cfg, c)?,
        Command::Group(c) => group(cfg, c)?,
        Command::Mahler(c) => mahler(cfg, c)?,
        Command::VerifyAll => {
            let report = verify_all(&VerifyConfig {
                seed: cfg.seed,
                budget: cfg.budget,
                p: cfg.p,
                m0: cfg.m0,
            })?;
            let passed = report.passed;
            if !passed {
                let failing: Vec<_> = report.suites.iter().filter(|s| !s.passed()).collect();
                emit(cfg, &report, || suite_lines(&report.suites));
                return Err(Failure::Property(json!({"failing": failing})));
            }
            emit(cfg, &report, || suite_lines(&report.suites));
        }
    }
    Ok(())
}

fn suite_lines(suites: &[carlitz_core::verify::SuiteReport]) -> String {
    suites
        .iter()
        .map(|s| {
            let mark = if s.passed() { "ok  " } else { "FAIL" };
            format!("{mark} {}: {} ({} checks, {} failures)", s.module, s.name, s.checked, s.failures)
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn approx_f64(r: &ExactRational) -> f64 {
    let scale = 1u64 << 52;
    let scaled = (r * ExactRational::from_integer(scale.into())).round().to_integer();
    scaled.to_string().parse::<f64>().unwrap_or(f64::NAN) / scale as f64
}

fn carlitz(cfg: &RunConfig, cmd: CarlitzCmd) -> Outcome {
    let f = field(cfg)?;
    match cmd {
        CarlitzCmd::Basis => {
            let basis = CarlitzBasis::build(&f, cfg.trunc as usize, Construction::CrossChecked { budget: cfg.budget })?;
            let summary = basis.summary();
            emit(cfg, &summary, || {
                (0..=basis.max_index())
                    .map(|k| format!("D_{k} = {}\ne_{k} coeffs = [{}]", basis.d(k), strings(basis.e(k).coeffs()).join(", ")))
                    .collect::<Vec<_>>()
                    .join("\n")
            });
        }
        CarlitzCmd::G { n, arg } => {
            let basis = basis_for(&f, n)?;
            let g = basis.g(n, &FqPoly::parse(&f, &arg)?)?;
            emit(cfg, &FracJson::from(&g), || g.to_string());
        }
        CarlitzCmd::Integrality { k, samples } => {
            let basis = CarlitzBasis::build(&f, k, Construction::Recursion)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let gs: Vec<FqPoly> = (0..samples).map(|_| FqPoly::random(&f, 10, &mut rng)).collect();
            let report = integrality_check(&basis, k, &gs)?;
            let passed = report.passed();
            emit_report(cfg, &report, passed, || {
                format!("k={k}: {} samples, {} failures", report.checked, report.failures.len())
            })?;
        }
        CarlitzCmd::BinomialIdentity { n } => {
            let basis = basis_for(&f, n.max(1))?;
            let report = carlitz_binomial_identity(&basis, n)?;
            emit_report(cfg, &report, report.holds, || {
                format!("n={n}: {} surviving terms, identity {}", report.surviving_terms, if report.holds { "holds" } else { "FAILS" })
            })?;
        }
        CarlitzCmd::Expand { d, values } => {
            let basis = CarlitzBasis::build(&f, d.max(1), Construction::Recursion)?;
            let values = values.iter().map(|v| FqPoly::parse(&f, v)).collect::<Result<Vec<_>, _>>()?;
            let expansion = expand_in_g(&basis, d, &values, cfg.budget)?;
            let coeffs: serde_json::Map<String, Value> = expansion
                .coeffs()
                .iter()
                .map(|(n, c)| (n.to_string(), serde_json::to_value(FracJson::from(c)).unwrap()))
                .collect();
            emit(cfg, &json!({"coeffs": coeffs}), || {
                let terms: Vec<String> = expansion.coeffs().iter().map(|(n, c)| format!("({c})*G_{n}")).collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            });
        }
    }
    Ok(())
}

fn ring(cfg: &RunConfig) -> Result<QuotientRing, Failure> {
    let f = field(cfg)?;
    Ok(QuotientRing::with_budget(FqPoly::parse(&f, &cfg.modulus)?, cfg.level as usize, cfg.budget)?)
}

fn coeff_text(coeffs: &[FqPoly], symbol: &str) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| format!("({c})*{symbol}_{j}"))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn ops(cfg: &RunConfig, cmd: OpsCmd) -> Outcome {
    match cmd {
        OpsCmd::Mul { a, b } => {
            let (a, b): (DividedOperator, DividedOperator) = (load(&a)?, load(&b)?);
            let out = a.mul(&b)?;
            emit(cfg, &out, || coeff_text(out.coeffs(), "D"));
        }
        OpsCmd::Delta { a } => {
            let ring = ring(cfg)?;
            let point = FqPoly::parse(ring.field(), &a)?;
            let trunc = cfg.trunc as usize;
            let basis = basis_for(ring.field(), cfg.trunc)?;
            let mu = FiniteMeasure::delta(&ring, &point, &basis, trunc)?;
            emit(cfg, &mu, || strings(mu.moments()).join(", "));
        }
        OpsCmd::Convolve { mu, nu } => {
            let (mu, nu): (FiniteMeasure, FiniteMeasure) = (load(&mu)?, load(&nu)?);
            let out = mu.convolve(&nu)?;
            emit(cfg, &out, || strings(out.moments()).join(", "));
        }
        OpsCmd::Act { mu, f } => {
            let mu: FiniteMeasure = load(&mu)?;
            let f: CarlitzFunction = load(&f)?;
            let out = mu.act_on(&f)?;
            emit(cfg, &out, || coeff_text(out.coeffs(), "G"));
        }
        OpsCmd::Sigma { sigma, a } => {
            let sigma: DigitPerm = load(&sigma)?;
            let a: DividedOperator = load(&a)?;
            let out = sigma_automorphism(&sigma, &a)?;
            emit(cfg, &out, || coeff_text(out.coeffs(), "D"));
        }
    }
    Ok(())
}

fn perms(cfg: &RunConfig, perm: Option<String>, count: usize, width: usize, b: PrimePower) -> Result<Vec<DigitPerm>, Failure> {
    match perm {
        Some(p) => Ok(vec![load(&p)?]),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            Ok((0..count).map(|_| DigitPerm::random(b, width, &mut rng)).collect())
        }
    }
}

fn group(cfg: &RunConfig, cmd: GroupCmd) -> Outcome {
    match cmd {
        GroupCmd::Rho { perm, y } => {
            let rho: DigitPerm = load(&perm)?;
            let n = parse_int(&y)?;
            let image = rho.rho_star_int(&n);
            emit(cfg, &json!({"q": rho.base().q(), "y": n.to_string(), "image": image.to_string()}), || image.to_string());
        }
        GroupCmd::VerifyBasicS { perm, count, digits } => {
            let list = perms(cfg, perm, count, digits, base(cfg)?)?;
            let spec = SweepSpec { digits, max_reported: 20 };
            let reports = list.iter().map(|r| verify_basic_s(r, spec)).collect::<Result<Vec<_>, _>>()?;
            let passed = reports.iter().all(|r| r.passed());
            emit_report(cfg, &reports, passed, || {
                format!("{} permutations, all five parts {}", reports.len(), if passed { "hold" } else { "FAIL" })
            })?;
        }
        GroupCmd::VerifySymm { perm, count, digits } => {
            let list = perms(cfg, perm, count, digits, PrimePower::prime(cfg.p)?)?;
            let spec = SweepSpec { digits, max_reported: 20 };
            let reports = list.iter().map(|s| binom_symmetry_check(s, spec)).collect::<Result<Vec<_>, _>>()?;
            let passed = reports.iter().all(|r| r.passed());
            emit_report(cfg, &reports, passed, || {
                format!("{} permutations, all four congruences {}", reports.len(), if passed { "hold" } else { "FAIL" })
            })?;
        }
    }
    Ok(())
}

fn mahler(cfg: &RunConfig, cmd: MahlerCmd) -> Outcome {
    match cmd {
        MahlerCmd::Coeffs { values } => {
            let coeffs = newton_coefficients(&samples(&values)?);
            emit(cfg, &json!({"coeffs": strings(&coeffs)}), || strings(&coeffs).join(" "));
        }
        MahlerCmd::Decay { values } => {
            let profile = mahler_decay_profile(&samples(&values)?, cfg.p)?;
            emit(cfg, &json!({"p": cfg.p, "valuations": profile}), || strings(&profile).join(" "));
        }
        MahlerCmd::OneUnit { y } => {
            let f = field(cfg)?;
            let y = PAdicTrunc::from_integer(&parse_int(&y)?, base(cfg)?, cfg.precision as usize)?;
            let series = one_unit_power(&y, cfg.trunc as usize, &f)?;
            emit(cfg, &series, || series.to_string());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Property(report)) => {
            eprintln!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
            ExitCode::from(1)
        }
    }
}
