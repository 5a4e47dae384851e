//! Checkers for the supporting identities: decompositions of `F_n` and `L_n`,
//! resultant laws, resultants against `g`, gcd and vanishing criteria,
//! remainders modulo `d^2 + 4g`, and closed-form derivatives.
//!
//! A checker returns a [`VerificationReport`]. A mathematical mismatch is a
//! failure entry in the report; only a violated precondition is an `Err`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::closed::{self, e2, pow_big, Branch};
use crate::error::{GfpError, Result};
use crate::family::{ConjugatePair, GfpFamily, Kind};
use crate::poly::{rat, Polynomial, Rational};
use crate::sylvester::{self, resultant, swap_sign};

/// Expected or observed quantity in a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Rational(Rational),
    Polynomial(Polynomial),
    Flag(bool),
    Text(String),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => write!(f, "{r}"),
            Value::Polynomial(p) => write!(f, "{p}"),
            Value::Flag(b) => write!(f, "{b}"),
            Value::Text(t) => f.write_str(t),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Rational(r)
    }
}

impl From<Polynomial> for Value {
    fn from(p: Polynomial) -> Self {
        Value::Polynomial(p)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Flag(b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub params: String,
    pub expected: Value,
    pub got: Value,
}

/// Outcome of checking one identity over some parameter set.
/// `passed` holds exactly when `failures` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub grid: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>, grid: impl Into<String>) -> Self {
        VerificationReport {
            identity: identity.into(),
            grid: grid.into(),
            passed: true,
            checks: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records one comparison; returns whether it held.
    pub fn check(
        &mut self,
        params: impl fmt::Display,
        expected: impl Into<Value>,
        got: impl Into<Value>,
    ) -> bool {
        let (expected, got) = (expected.into(), got.into());
        self.checks += 1;
        let ok = expected == got;
        if !ok {
            self.failures.push(Failure {
                params: params.to_string(),
                expected,
                got,
            });
            self.passed = false;
        }
        ok
    }

    pub fn fail(&mut self, params: impl fmt::Display, expected: Value, got: Value) {
        self.checks += 1;
        self.failures.push(Failure {
            params: params.to_string(),
            expected,
            got,
        });
        self.passed = false;
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// One-line JSON form; rationals and polynomials are strings.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks += other.checks;
        self.passed &= other.passed;
        self.failures.extend(other.failures);
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(GfpError::InvalidArgument(msg()))
    }
}

fn require_constant_g(family: &GfpFamily) -> Result<()> {
    if family.has_constant_g() {
        Ok(())
    } else {
        Err(GfpError::Hypothesis(format!(
            "{}: g = {} is not constant",
            family.name(),
            family.g()
        )))
    }
}

fn ipow(p: &Polynomial, e: u64) -> Polynomial {
    p.pow(u32::try_from(e).expect("exponent fits in u32"))
}

fn neg_one_pow(e: u64) -> Rational {
    if e.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

fn idx(n: u64) -> usize {
    usize::try_from(n).expect("index fits in usize")
}

/// `F_{mq+r} - g F_{mq-1} F_r` is divisible by `F_m`.
pub fn check_fib_decomposition(
    family: &GfpFamily,
    m: u64,
    q: u64,
    r: u64,
) -> Result<VerificationReport> {
    family.expect_kind(Kind::FibonacciType)?;
    require(m >= 1 && q >= 1 && r >= 1, || {
        format!("need m, q, r >= 1, got ({m}, {q}, {r})")
    })?;
    let f = |k: u64| family.generate(idx(k));
    let tail = &(family.g() * &f(m * q - 1)) * &f(r);
    let (_, rem) = (&f(m * q + r) - &tail).divrem(&f(m))?;
    let mut report = VerificationReport::new("fib-decomposition", format!("m={m} q={q} r={r}"));
    report.check(
        format!("{} m={m} q={q} r={r}", family.name()),
        Polynomial::zero(),
        rem,
    );
    Ok(report)
}

/// `L_{mq+r}` minus the parity-dependent tail is divisible by `L_m`, with
/// `t = ceil(q / 2)`:
/// odd `q`: tail `(-1)^(m(t-1)+t+r) g^((t-1)m+r) L_{m-r}`;
/// even `q`: tail `(-1)^((m+1)t) g^(mt) L_r`.
pub fn check_lucas_decomposition(
    family: &GfpFamily,
    m: u64,
    q: u64,
    r: u64,
) -> Result<VerificationReport> {
    family.expect_kind(Kind::LucasType)?;
    require(q >= 1 && r >= 1 && r < m, || {
        format!("need 1 <= r < m and q >= 1, got ({m}, {q}, {r})")
    })?;
    let l = |k: u64| family.generate(idx(k));
    let t = q.div_ceil(2);
    let tail = if q % 2 == 1 {
        ipow(family.g(), (t - 1) * m + r).scale(&neg_one_pow(m * (t - 1) + t + r)) * l(m - r)
    } else {
        ipow(family.g(), m * t).scale(&neg_one_pow((m + 1) * t)) * l(r)
    };
    let (_, rem) = (&l(m * q + r) - &tail).divrem(&l(m))?;
    let mut report = VerificationReport::new("lucas-decomposition", format!("m={m} q={q} r={r}"));
    report.check(
        format!(
            "{} m={m} q={q} r={r} ({} q)",
            family.name(),
            if q % 2 == 1 { "odd" } else { "even" }
        ),
        Polynomial::zero(),
        rem,
    );
    Ok(report)
}

/// Expansions of `F_{nq+r}` and `alpha L_{nq+r}` through `L_n` and `F_n`,
/// with `(a-b)^2` realised as `d^2 + 4g`.
///
/// q > 1: `F_{nq+r} = alpha L_n F_{n(q-1)+r} - (-g)^n F_{n(q-2)+r}`,
///        `alpha L_{nq+r} = (a-b)^2 F_n F_{n(q-1)+r} + alpha (-g)^n L_{n(q-2)+r}`.
/// q = 1: `F_{n+r} = alpha L_n F_r + (-g)^r F_{n-r}`,
///        `alpha L_{n+r} = (a-b)^2 F_n F_r + alpha (-g)^r L_{n-r}`.
pub fn check_mixed_identities(
    pair: &ConjugatePair,
    n: u64,
    q: u64,
    r: u64,
) -> Result<VerificationReport> {
    require(n >= 1 && q >= 1, || {
        format!("need n, q >= 1, got n={n} q={q}")
    })?;
    require(q > 1 || r <= n, || {
        format!("q = 1 needs r <= n, got n={n} r={r}")
    })?;
    let f = |k: u64| pair.fibonacci().generate(idx(k));
    let l = |k: u64| pair.lucas().generate(idx(k));
    let alpha = rat(pair.alpha());
    let minus_g = -pair.fibonacci().g();
    let disc = pair.fibonacci().discriminant_poly();
    let (fib_rhs, luc_rhs) = if q > 1 {
        let a = n * (q - 1) + r;
        let b = n * (q - 2) + r;
        let sg = ipow(&minus_g, n);
        (
            &(l(n).scale(&alpha) * f(a)) - &(&sg * &f(b)),
            &(&disc * &f(n)) * &f(a) + (&sg * &l(b)).scale(&alpha),
        )
    } else {
        let sg = ipow(&minus_g, r);
        (
            &(l(n).scale(&alpha) * f(r)) + &(&sg * &f(n - r)),
            &(&disc * &f(n)) * &f(r) + (&sg * &l(n - r)).scale(&alpha),
        )
    };
    let name = pair.fibonacci().name();
    let mut report = VerificationReport::new("mixed-identities", format!("n={n} q={q} r={r}"));
    report.check(
        format!("{name} (F) n={n} q={q} r={r}"),
        f(n * q + r),
        fib_rhs,
    );
    report.check(
        format!("{name} (alpha L) n={n} q={q} r={r}"),
        l(n * q + r).scale(&alpha),
        luc_rhs,
    );
    Ok(report)
}

/// `Res(g, F_n) = rho^(n-1)`, `Res(g, L_n) = rho^n`; for a Lucas-type family
/// with `p0 = 2` also `Res(L_1, L_n)`, which vanishes for odd `n` and is
/// `2^eta base^(n/2)` for even `n`.
///
/// The Lucas-type statements assume `p0 = 2` unless `g` is constant.
pub fn check_res_g_lemmas(family: &GfpFamily, n: u64) -> Result<VerificationReport> {
    require(n >= 1, || "need n >= 1".into())?;
    let c = family.constants();
    let mut report = VerificationReport::new("res-g", format!("n={n}"));
    let member = family.generate(idx(n));
    let got = resultant(family.g(), &member)?;
    let label = format!("{} n={n}", family.name());
    match family.kind() {
        Kind::FibonacciType => {
            report.check(
                format!("Res(g, F_n) {label}"),
                pow_big(&c.rho, &BigInt::from(n - 1)),
                got,
            );
        }
        Kind::LucasType => {
            if family.p0() != 2 && !family.has_constant_g() {
                return Err(GfpError::Hypothesis(format!(
                    "{}: Res(g, L_n) = rho^n needs p0 = 2 or constant g",
                    family.name()
                )));
            }
            report.check(
                format!("Res(g, L_n) {label}"),
                pow_big(&c.rho, &BigInt::from(n)),
                got,
            );
            if family.p0() == 2 {
                let expected = if n % 2 == 1 {
                    Rational::zero()
                } else {
                    pow_big(&rat(2), &BigInt::from(c.eta))
                        * pow_big(&c.base(), &BigInt::from(n / 2))
                };
                let got = resultant(&family.generate(1), &member)?;
                report.check(format!("Res(L_1, L_n) {label}"), expected, got);
            }
        }
    }
    Ok(report)
}

/// `Res(F_m, g F_n) = (-1)^(omega eta (m-1)) rho^(m-1) Res(F_m, F_n)` and the
/// Lucas-type analogue with exponent `m` in place of `m - 1`.
pub fn check_res_g_factor(family: &GfpFamily, m: u64, n: u64) -> Result<VerificationReport> {
    require(m >= 1 && n >= 1, || "need m, n >= 1".into())?;
    if family.kind() == Kind::LucasType && family.p0() != 2 && !family.has_constant_g() {
        return Err(GfpError::Hypothesis(format!(
            "{}: needs p0 = 2 or constant g",
            family.name()
        )));
    }
    let c = family.constants();
    let k = match family.kind() {
        Kind::FibonacciType => m - 1,
        Kind::LucasType => m,
    };
    let gm = family.generate(idx(m));
    let gn = family.generate(idx(n));
    let expected = neg_one_pow(c.omega as u64 * c.eta as u64 * k)
        * pow_big(&c.rho, &BigInt::from(k))
        * resultant(&gm, &gn)?;
    let got = resultant(&gm, &(family.g() * &gn))?;
    let mut report = VerificationReport::new("res-g", format!("m={m} n={n}"));
    report.check(
        format!("Res(G_m, g G_n) {} m={m} n={n}", family.name()),
        expected,
        got,
    );
    Ok(report)
}

/// `Res(F_n, F_{n-1}) = base^((n-2)(n-1)/2)`.
pub fn check_consecutive_resultant(family: &GfpFamily, n: u64) -> Result<VerificationReport> {
    family.expect_kind(Kind::FibonacciType)?;
    require(n >= 2, || "need n >= 2".into())?;
    let expected = pow_big(
        &family.constants().base(),
        &BigInt::from((n - 2) * (n - 1) / 2),
    );
    let got = resultant(&family.generate(idx(n)), &family.generate(idx(n - 1)))?;
    let mut report = VerificationReport::new("consecutive-res", format!("n={n}"));
    report.check(
        format!("Res(F_n, F_n-1) {} n={n}", family.name()),
        expected,
        got,
    );
    Ok(report)
}

/// `Res(F_m, F_{mq-1}) = base^((m-1)(mq-2)/2)` for `mq >= 2`.
pub fn check_res_m_mq_minus_1(family: &GfpFamily, m: u64, q: u64) -> Result<VerificationReport> {
    family.expect_kind(Kind::FibonacciType)?;
    require(m >= 1 && q >= 1 && m * q >= 2, || {
        format!("need m, q >= 1 and mq >= 2, got ({m}, {q})")
    })?;
    let e = (m - 1) * (m * q - 2);
    assert!(e.is_multiple_of(2), "(m-1)(mq-2) is always even");
    let expected = pow_big(&family.constants().base(), &BigInt::from(e / 2));
    let got = resultant(&family.generate(idx(m)), &family.generate(idx(m * q - 1)))?;
    let mut report = VerificationReport::new("consecutive-res", format!("m={m} q={q}"));
    report.check(
        format!("Res(F_m, F_mq-1) {} m={m} q={q}", family.name()),
        expected,
        got,
    );
    Ok(report)
}

/// Closed remainder of `F_n` modulo `d^2 + 4g` for constant `g`:
/// `n (-g)^((n-1)/2)` for odd `n`, `(-1)^((n+2)/2) n d g^((n-2)/2) / 2` for even `n`.
pub fn fib_mod_disc_expected(family: &GfpFamily, n: u64) -> Result<Polynomial> {
    family.expect_kind(Kind::FibonacciType)?;
    require_constant_g(family)?;
    let g = family.g().lc();
    let nr = rat(n as i64);
    Ok(if n % 2 == 1 {
        Polynomial::constant(nr * pow_big(&-g, &BigInt::from((n - 1) / 2)))
    } else if n == 0 {
        Polynomial::zero()
    } else {
        let factor =
            neg_one_pow((n + 2) / 2) * nr * pow_big(&g, &BigInt::from((n - 2) / 2)) / rat(2);
        family.d().scale(&factor)
    })
}

pub fn fib_mod_disc(family: &GfpFamily, n: u64) -> Result<VerificationReport> {
    let expected = fib_mod_disc_expected(family, n)?;
    let (_, rem) = family
        .generate(idx(n))
        .divrem(&family.discriminant_poly())?;
    let mut report = VerificationReport::new("fib-mod-disc", format!("n={n}"));
    report.check(format!("{} n={n}", family.name()), expected, rem);
    Ok(report)
}

/// `Res(d^2 + 4g, F_n) = (beta^(2 eta - omega) rho)^(n-1) n^(2 eta)` for constant `g`.
pub fn check_res_disc_poly(family: &GfpFamily, n: u64) -> Result<VerificationReport> {
    family.expect_kind(Kind::FibonacciType)?;
    require_constant_g(family)?;
    require(n >= 1, || "need n >= 1".into())?;
    let c = family.constants();
    let scale = num_traits::pow(c.beta.clone(), 2 * c.eta - c.omega) * &c.rho;
    let expected =
        pow_big(&scale, &BigInt::from(n - 1)) * pow_big(&rat(n as i64), &BigInt::from(2 * c.eta));
    let got = resultant(&family.discriminant_poly(), &family.generate(idx(n)))?;
    let mut report = VerificationReport::new("res-disc-poly", format!("n={n}"));
    report.check(format!("{} n={n}", family.name()), expected, got);
    Ok(report)
}

/// `F_n' = d' (n alpha L_n - d F_n) / (d^2 + 4g)` for constant `g`.
///
/// The division must be exact; a remainder is reported as
/// [`GfpError::InexactDivision`].
pub fn deriv_f_closed(pair: &ConjugatePair, n: u64) -> Result<Polynomial> {
    require_constant_g(pair.fibonacci())?;
    require(n >= 1, || "need n >= 1".into())?;
    let fam = pair.fibonacci();
    let numerator = &pair
        .lucas()
        .generate(idx(n))
        .scale(&rat(n as i64 * pair.alpha()))
        - &(fam.d() * &fam.generate(idx(n)));
    (&fam.d().derivative() * &numerator).div_exact(&fam.discriminant_poly())
}

/// `L_n' = n d' F_n / alpha` for constant `g`.
pub fn deriv_l_closed(pair: &ConjugatePair, n: u64) -> Result<Polynomial> {
    require_constant_g(pair.lucas())?;
    require(n >= 1, || "need n >= 1".into())?;
    let f = pair.fibonacci().generate(idx(n));
    Ok((&pair.lucas().d().derivative() * &f).scale(&(rat(n as i64) / rat(pair.alpha()))))
}

/// Both closed derivatives against formal differentiation.
pub fn check_derivatives(pair: &ConjugatePair, n: u64) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("thm5.1", format!("n={n}"));
    let fname = pair.fibonacci().name();
    let lname = pair.lucas().name();
    match deriv_f_closed(pair, n) {
        Ok(closed) => {
            report.check(
                format!("{fname} n={n}"),
                pair.fibonacci().generate(idx(n)).derivative(),
                closed,
            );
        }
        Err(e @ GfpError::InexactDivision(_)) => report.fail(
            format!("{fname} n={n}"),
            Value::Text("exact division by d^2 + 4g".into()),
            Value::Text(e.to_string()),
        ),
        Err(e) => return Err(e),
    }
    report.check(
        format!("{lname} n={n}"),
        pair.lucas().generate(idx(n)).derivative(),
        deriv_l_closed(pair, n)?,
    );
    Ok(report)
}

/// `gcd(F_m, F_n) = 1` exactly when `gcd(m, n) = 1`.
pub fn check_gcd_fib(family: &GfpFamily, m: u64, n: u64) -> Result<VerificationReport> {
    family.expect_kind(Kind::FibonacciType)?;
    require(m >= 1 && n >= 1, || "need m, n >= 1".into())?;
    let g = family.generate(idx(m)).gcd(&family.generate(idx(n)))?;
    let delta = num_integer::gcd(m, n);
    let mut report = VerificationReport::new("gcd-criteria", format!("m={m} n={n}"));
    report.check(
        format!("gcd(F_m, F_n) is 1 {} m={m} n={n}", family.name()),
        delta == 1,
        g.is_constant(),
    );
    Ok(report)
}

/// `gcd(L_m, L_n) ~ L_delta` when `E2(m) = E2(n)`, otherwise
/// `gcd(L_delta, L_0)`, which is a unit over Q.
pub fn check_gcd_lucas(family: &GfpFamily, m: u64, n: u64) -> Result<VerificationReport> {
    family.expect_kind(Kind::LucasType)?;
    require(m >= 1 && n >= 1, || "need m, n >= 1".into())?;
    let g = family.generate(idx(m)).gcd(&family.generate(idx(n)))?;
    let delta = num_integer::gcd(m, n);
    let mut report = VerificationReport::new("gcd-criteria", format!("m={m} n={n}"));
    let label = format!("gcd(L_m, L_n) {} m={m} n={n}", family.name());
    if e2(m)? == e2(n)? {
        report.check(label, family.generate(idx(delta)).monic(), g);
    } else {
        let raw = family.generate(idx(delta)).gcd(&family.generate(0))?;
        report.note(format!(
            "E2(m) != E2(n) branch: gcd(L_delta, L_0) with L_0 = {} is the unit {raw}",
            family.p0()
        ));
        report.check(label, raw, g);
    }
    Ok(report)
}

/// `gcd(L_n, F_m) ~ L_delta` when `E2(m) > E2(n)`, otherwise 1.
pub fn check_gcd_mixed(pair: &ConjugatePair, n: u64, m: u64) -> Result<VerificationReport> {
    require(m >= 1 && n >= 1, || "need m, n >= 1".into())?;
    let g = pair
        .lucas()
        .generate(idx(n))
        .gcd(&pair.fibonacci().generate(idx(m)))?;
    let expected = if e2(m)? > e2(n)? {
        pair.lucas().generate(idx(num_integer::gcd(m, n))).monic()
    } else {
        Polynomial::one()
    };
    let mut report = VerificationReport::new("gcd-criteria", format!("n={n} m={m}"));
    report.check(
        format!("gcd(L_n, F_m) {} n={n} m={m}", pair.lucas().name()),
        expected,
        g,
    );
    Ok(report)
}

/// For a pair of members covered by a closed resultant formula: the formula
/// takes its zero branch, the oracle resultant vanishes, and the gcd has
/// positive degree, all together or not at all.
pub fn check_zero_criteria(
    first: &GfpFamily,
    i: u64,
    second: &GfpFamily,
    j: u64,
) -> Result<VerificationReport> {
    let closed = closed::closed_resultant(first, i, second, j)?;
    let a = first.generate(idx(i));
    let b = second.generate(idx(j));
    let oracle_zero = resultant(&a, &b)?.is_zero();
    let shared = !a.gcd(&b)?.is_constant();
    let mut report = VerificationReport::new("zero-criteria", format!("i={i} j={j}"));
    let label = format!("{} {i} / {} {j}", first.name(), second.name());
    report.check(
        format!("{label}: zero branch vs Res = 0"),
        closed.branch == Branch::Zero,
        oracle_zero,
    );
    report.check(
        format!("{label}: Res = 0 vs common factor"),
        oracle_zero,
        shared,
    );
    Ok(report)
}

/// Closed resultant against the Sylvester determinant.
pub fn check_closed_resultant(
    identity: &str,
    first: &GfpFamily,
    i: u64,
    second: &GfpFamily,
    j: u64,
) -> Result<VerificationReport> {
    let closed = closed::closed_resultant(first, i, second, j)?;
    let oracle = resultant(&first.generate(idx(i)), &second.generate(idx(j)))?;
    let mut report = VerificationReport::new(identity, format!("i={i} j={j}"));
    report.check(
        format!("{} {i} / {} {j}", first.name(), second.name()),
        oracle,
        closed.value,
    );
    Ok(report)
}

/// Closed discriminant against `Dis` computed from the Sylvester determinant.
pub fn check_closed_discriminant(
    identity: &str,
    family: &GfpFamily,
    n: u64,
) -> Result<VerificationReport> {
    let closed = closed::disc_closed(family, n)?;
    let oracle = sylvester::discriminant(&family.generate(idx(n)))?;
    let mut report = VerificationReport::new(identity, format!("n={n}"));
    report.check(format!("{} n={n}", family.name()), oracle, closed);
    Ok(report)
}

/// `deg(G_n)` and `lc(G_n)`: `eta (n-1)`, `beta^(n-1)` for Fibonacci-type,
/// `eta n`, `beta^n / alpha` for Lucas-type.
pub fn check_degree_law(family: &GfpFamily, n: u64) -> Result<VerificationReport> {
    require(n >= 1, || "need n >= 1".into())?;
    let c = family.constants();
    let (deg, lc) = match family.kind() {
        Kind::FibonacciType => (
            c.eta as u64 * (n - 1),
            pow_big(&c.beta, &BigInt::from(n - 1)),
        ),
        Kind::LucasType => (
            c.eta as u64 * n,
            pow_big(&c.beta, &BigInt::from(n)) / rat(family.alpha()),
        ),
    };
    let (got_deg, got_lc) = family.generate(idx(n)).degree_lc();
    let mut report = VerificationReport::new("degree-law", format!("n={n}"));
    let label = format!("{} n={n}", family.name());
    report.check(
        format!("deg {label}"),
        Value::Text(deg.to_string()),
        Value::Text(got_deg.map_or("-inf".into(), |d| d.to_string())),
    );
    report.check(format!("lc {label}"), lc, got_lc);
    Ok(report)
}

/// Resultant laws on arbitrary `f`, `h`, `p`: swap sign, multiplicativity,
/// powers, reduction modulo `f` (with `G = f p + h`), and the vanishing
/// criterion.
pub fn check_resultant_laws(
    f: &Polynomial,
    h: &Polynomial,
    p: &Polynomial,
    k: u32,
) -> Result<VerificationReport> {
    let deg = |x: &Polynomial| x.degree().ok_or(GfpError::ZeroPolynomial("resultant laws"));
    let (df, dh) = (deg(f)?, deg(h)?);
    deg(p)?;
    let label = format!("f=[{f}] h=[{h}] p=[{p}]");
    let mut report = VerificationReport::new("resultant-laws", "random triples");

    let fh = resultant(f, h)?;
    report.check(
        format!("swap {label}"),
        fh.clone(),
        swap_sign(df, dh) * resultant(h, f)?,
    );

    let fp = resultant(f, p)?;
    report.check(
        format!("multiplicative {label}"),
        fp.clone() * &fh,
        resultant(f, &(p * h))?,
    );

    report.check(
        format!("power k={k} {label}"),
        num_traits::pow(fp, k as usize),
        resultant(f, &p.pow(k))?,
    );

    let big_g = &(f * p) + h;
    if let Some(r) = big_g.degree() {
        let expected = pow_big(&f.lc(), &(BigInt::from(r) - BigInt::from(dh))) * &fh;
        report.check(
            format!("reduction {label}"),
            expected,
            resultant(f, &big_g)?,
        );
    }

    report.check(
        format!("vanishing {label}"),
        !f.gcd(h)?.is_constant(),
        fh.is_zero(),
    );
    Ok(report)
}

/// `Dis(PQ) = Dis(P) Dis(Q) Res(P, Q)^2` on one pair.
pub fn check_product_discriminant(p: &Polynomial, q: &Polynomial) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("product-disc", "random pairs");
    report.check(
        format!("P=[{p}] Q=[{q}]"),
        sylvester::discriminant(&(p * q))?,
        sylvester::product_discriminant(p, q)?,
    );
    Ok(report)
}

/// `true` if `value` is a unit, which is what a gcd over Q with a nonzero
/// constant collapses to.
pub fn is_unit(value: &Polynomial) -> bool {
    value.degree() == Some(0) && value.lc() == Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::builtin_family;

    fn fam(n: &str) -> GfpFamily {
        builtin_family(n).unwrap()
    }

    fn pair(n: &str) -> ConjugatePair {
        ConjugatePair::of(&fam(n)).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn fib_decomposition_examples() {
        assert!(
            check_fib_decomposition(&fam("fibonacci"), 2, 1, 1)
                .unwrap()
                .passed
        );
        assert!(
            check_fib_decomposition(&fam("fibonacci"), 3, 2, 1)
                .unwrap()
                .passed
        );
        assert!(
            check_fib_decomposition(&fam("pell"), 2, 3, 1)
                .unwrap()
                .passed
        );
        assert!(check_fib_decomposition(&fam("pell"), 0, 3, 1).is_err());
    }

    #[test]
    fn lucas_decomposition_examples() {
        assert!(
            check_lucas_decomposition(&fam("lucas"), 2, 1, 1)
                .unwrap()
                .passed
        );
        assert!(
            check_lucas_decomposition(&fam("lucas"), 3, 2, 1)
                .unwrap()
                .passed
        );
        assert!(
            check_lucas_decomposition(&fam("chebyshev-T"), 2, 2, 1)
                .unwrap()
                .passed
        );
        assert!(check_lucas_decomposition(&fam("lucas"), 2, 2, 2).is_err());
    }

    #[test]
    fn mixed_identity_examples() {
        assert!(
            check_mixed_identities(&pair("fibonacci"), 2, 2, 1)
                .unwrap()
                .passed
        );
        assert!(
            check_mixed_identities(&pair("fibonacci"), 3, 1, 1)
                .unwrap()
                .passed
        );
        assert!(
            check_mixed_identities(&pair("chebyshev-U"), 2, 2, 0)
                .unwrap()
                .passed
        );
        assert!(check_mixed_identities(&pair("fibonacci"), 2, 1, 3).is_err());
    }

    #[test]
    fn res_g_examples() {
        let r = check_res_g_lemmas(&fam("morgan-voyce-B"), 4).unwrap();
        assert!(r.passed);
        assert_eq!(
            resultant(
                fam("morgan-voyce-B").g(),
                &fam("morgan-voyce-B").generate(4)
            )
            .unwrap(),
            rat(-1)
        );
        assert!(check_res_g_lemmas(&fam("fibonacci"), 5).unwrap().passed);
        let custom = GfpFamily::fibonacci_type(p("x^2 + x + 1"), p("x")).unwrap();
        for n in 1..=6 {
            assert!(check_res_g_lemmas(&custom, n).unwrap().passed, "n={n}");
        }
    }

    #[test]
    fn consecutive_examples() {
        assert_eq!(
            resultant(&fam("fibonacci").generate(4), &fam("fibonacci").generate(3)).unwrap(),
            rat(1)
        );
        assert!(
            check_consecutive_resultant(&fam("fibonacci"), 4)
                .unwrap()
                .passed
        );
        assert_eq!(
            resultant(&fam("pell").generate(3), &fam("pell").generate(2)).unwrap(),
            rat(4)
        );
        assert!(check_consecutive_resultant(&fam("pell"), 3).unwrap().passed);
        assert_eq!(
            resultant(
                &fam("chebyshev-U").generate(3),
                &fam("chebyshev-U").generate(2)
            )
            .unwrap(),
            rat(-4)
        );
        assert!(
            check_consecutive_resultant(&fam("chebyshev-U"), 3)
                .unwrap()
                .passed
        );
    }

    #[test]
    fn fib_mod_disc_examples() {
        assert_eq!(
            fib_mod_disc_expected(&fam("fibonacci"), 3).unwrap(),
            p("-3")
        );
        assert!(fib_mod_disc(&fam("fibonacci"), 3).unwrap().passed);
        assert_eq!(
            fib_mod_disc_expected(&fam("fibonacci"), 4).unwrap(),
            p("-2*x")
        );
        assert!(fib_mod_disc(&fam("fibonacci"), 4).unwrap().passed);
        assert_eq!(
            fib_mod_disc_expected(&fam("chebyshev-U"), 3).unwrap(),
            p("3")
        );
        assert!(fib_mod_disc(&fam("chebyshev-U"), 3).unwrap().passed);
        let custom = GfpFamily::fibonacci_type(p("x^2 + x + 1"), p("x")).unwrap();
        assert!(matches!(
            fib_mod_disc(&custom, 3),
            Err(GfpError::Hypothesis(_))
        ));
    }

    #[test]
    fn res_disc_poly_examples() {
        let res = |f: &str, n| resultant(&fam(f).discriminant_poly(), &fam(f).generate(n)).unwrap();
        assert_eq!(res("fibonacci", 3), rat(9));
        assert_eq!(res("fibonacci", 4), rat(16));
        assert_eq!(res("pell", 3), rat(144));
        for f in ["fibonacci", "pell"] {
            for n in 1..=6 {
                assert!(check_res_disc_poly(&fam(f), n).unwrap().passed);
            }
        }
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(deriv_f_closed(&pair("fibonacci"), 3).unwrap(), p("2*x"));
        assert!(deriv_f_closed(&pair("fibonacci"), 1).unwrap().is_zero());
        assert_eq!(deriv_f_closed(&pair("chebyshev-U"), 3).unwrap(), p("8*x"));

        assert_eq!(deriv_l_closed(&pair("lucas"), 2).unwrap(), p("2*x"));
        assert_eq!(
            deriv_l_closed(&pair("chebyshev-T"), 3).unwrap(),
            p("12*x^2 - 3")
        );
        assert_eq!(deriv_l_closed(&pair("fermat-lucas"), 2).unwrap(), p("18*x"));
    }

    #[test]
    fn derivative_needs_constant_g() {
        let custom = GfpFamily::fibonacci_type(p("x^2 + x + 1"), p("x")).unwrap();
        let pair = ConjugatePair::new(custom.clone(), custom.lucas_conjugate(2).unwrap()).unwrap();
        assert!(matches!(
            deriv_f_closed(&pair, 3),
            Err(GfpError::Hypothesis(_))
        ));
        assert!(matches!(
            deriv_l_closed(&pair, 3),
            Err(GfpError::Hypothesis(_))
        ));
    }

    #[test]
    fn gcd_examples() {
        let r = check_gcd_fib(&fam("fibonacci"), 4, 6).unwrap();
        assert!(r.passed);
        assert!(!fam("fibonacci")
            .generate(4)
            .gcd(&fam("fibonacci").generate(6))
            .unwrap()
            .is_constant());

        assert!(check_gcd_lucas(&fam("lucas"), 2, 6).unwrap().passed);
        let g = fam("lucas")
            .generate(2)
            .gcd(&fam("lucas").generate(6))
            .unwrap();
        assert_eq!(g, fam("lucas").generate(2).monic());

        assert!(check_gcd_mixed(&pair("lucas"), 1, 2).unwrap().passed);
        let g = fam("lucas")
            .generate(1)
            .gcd(&fam("fibonacci").generate(2))
            .unwrap();
        assert_eq!(g, p("x"));

        let r = check_gcd_lucas(&fam("lucas"), 1, 2).unwrap();
        assert!(r.passed && !r.notes.is_empty());
        assert!(is_unit(&Polynomial::one()));
    }

    #[test]
    fn report_bookkeeping() {
        let mut r = VerificationReport::new("demo", "n=1");
        assert!(r.check("a", rat(1), rat(1)));
        assert!(!r.check("b", rat(1), rat(2)));
        assert!(!r.passed);
        assert_eq!(r.checks, 2);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["failures"][0]["expected"], "1");
        assert_eq!(json["failures"][0]["got"], "2");
        assert_eq!(json["passed"], false);

        let mut ok = VerificationReport::new("demo", "n=2");
        ok.merge(r);
        assert!(!ok.passed);
        assert_eq!(ok.failures.len(), 1);
    }

    #[test]
    fn resultant_laws_small() {
        let r = check_resultant_laws(&p("x^2 - 1"), &p("x - 1"), &p("2*x + 3"), 3).unwrap();
        assert!(r.passed, "{:?}", r.failures);
    }
}
