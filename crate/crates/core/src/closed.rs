//! Closed formulas for resultants and discriminants of GFP families.
//!
//! Every formula is written in terms of the family constants
//! `(beta, eta, omega, rho)`, `alpha`, and the 2-adic valuations of the
//! indices. All exponents are big integers; exponents that must be halved are
//! checked for parity first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{GfpError, Result};
use crate::family::{ConjugatePair, GfpFamily, Kind};
use crate::poly::{rat, Rational};

/// 2-adic valuation: the largest `k` with `2^k | n`.
pub fn e2(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(GfpError::InvalidArgument("E2 is defined for n >= 1".into()));
    }
    Ok(n.trailing_zeros())
}

/// `base^exp` for a big, possibly negative, exponent.
pub fn pow_big(base: &Rational, exp: &BigInt) -> Rational {
    if exp.is_negative() {
        assert!(!base.is_zero(), "zero raised to a negative power");
        return pow_big(&base.recip(), &-exp);
    }
    let mut acc = Rational::one();
    let mut sq = base.clone();
    let bits = exp.bits();
    for i in 0..bits {
        if exp.bit(i) {
            acc *= &sq;
        }
        if i + 1 < bits {
            sq = &sq * &sq;
        }
    }
    acc
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn half_of_even(e: BigInt, what: &str) -> BigInt {
    assert!(e.is_even(), "parity invariant broken: {what} = {e} is odd");
    e / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    Zero,
    Formula,
}

/// Quantities the case split was decided on. For a resultant of members
/// with indices `(i, j)` (in argument order) `e2_first = E2(i)`,
/// `e2_second = E2(j)` and `gcd = gcd(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Gate {
    pub gcd: u64,
    pub e2_first: u32,
    pub e2_second: u32,
}

impl Gate {
    fn new(first: u64, second: u64) -> Result<Self> {
        Ok(Gate {
            gcd: first.gcd(&second),
            e2_first: e2(first)?,
            e2_second: e2(second)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedResult {
    pub value: Rational,
    pub branch: Branch,
    pub gate: Gate,
}

impl ClosedResult {
    fn zero(gate: Gate) -> Self {
        ClosedResult {
            value: Rational::zero(),
            branch: Branch::Zero,
            gate,
        }
    }

    fn formula(value: Rational, gate: Gate) -> Self {
        ClosedResult {
            value,
            branch: Branch::Formula,
            gate,
        }
    }
}

impl fmt::Display for ClosedResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        Err(GfpError::InvalidArgument(format!("{what} must be >= 1")))
    } else {
        Ok(())
    }
}

/// `Res(F_n, F_m)`: zero when `gcd(m, n) > 1`, otherwise
/// `base^((n-1)(m-1)/2)`.
pub fn res_ff_closed(family: &GfpFamily, n: u64, m: u64) -> Result<ClosedResult> {
    family.expect_kind(Kind::FibonacciType)?;
    positive(n, "n")?;
    positive(m, "m")?;
    let gate = Gate::new(n, m)?;
    if gate.gcd > 1 {
        return Ok(ClosedResult::zero(gate));
    }
    let e = half_of_even(big(n - 1) * big(m - 1), "(n-1)(m-1)");
    let value = pow_big(&family.constants().base(), &e);
    Ok(ClosedResult::formula(value, gate))
}

/// `Res(L_m, L_n)`: zero when `E2(m) = E2(n)`, otherwise
/// `alpha^(-eta(n+m)) 2^(eta gcd(m,n)) base^(nm/2)`.
pub fn res_ll_closed(family: &GfpFamily, m: u64, n: u64) -> Result<ClosedResult> {
    family.expect_kind(Kind::LucasType)?;
    positive(m, "m")?;
    positive(n, "n")?;
    let gate = Gate::new(m, n)?;
    if gate.e2_first == gate.e2_second {
        return Ok(ClosedResult::zero(gate));
    }
    let c = family.constants();
    let eta = big(c.eta as u64);
    let half = half_of_even(big(n) * big(m), "nm");
    let value = pow_big(&rat(family.alpha()), &(-&eta * big(n + m)))
        * pow_big(&rat(2), &(&eta * big(gate.gcd)))
        * pow_big(&c.base(), &half);
    Ok(ClosedResult::formula(value, gate))
}

/// `Res(L_n, F_m)` for a conjugate pair: zero when `E2(n) < E2(m)`, otherwise
/// `2^(eta gcd(m,n) - eta) alpha^(eta(1-m)) base^(n(m-1)/2)`.
pub fn res_lf_closed(
    lucas: &GfpFamily,
    fibonacci: &GfpFamily,
    n: u64,
    m: u64,
) -> Result<ClosedResult> {
    let pair = ConjugatePair::new(fibonacci.clone(), lucas.clone())?;
    res_lf_closed_pair(&pair, n, m)
}

pub fn res_lf_closed_pair(pair: &ConjugatePair, n: u64, m: u64) -> Result<ClosedResult> {
    positive(n, "n")?;
    positive(m, "m")?;
    let gate = Gate::new(n, m)?;
    if gate.e2_first < gate.e2_second {
        return Ok(ClosedResult::zero(gate));
    }
    let lucas = pair.lucas();
    let c = lucas.constants();
    let eta = big(c.eta as u64);
    let half = half_of_even(big(n) * big(m - 1), "n(m-1)");
    let value = pow_big(&rat(2), &(&eta * big(gate.gcd) - &eta))
        * pow_big(&rat(lucas.alpha()), &(&eta * (BigInt::one() - big(m))))
        * pow_big(&c.base(), &half);
    Ok(ClosedResult::formula(value, gate))
}

fn linear_d_constant_g(family: &GfpFamily) -> Result<crate::family::FamilyConstants> {
    let c = family.constants();
    if c.eta != 1 || c.omega != 0 {
        return Err(GfpError::Hypothesis(format!(
            "{} has deg(d) = {}, deg(g) = {}; the discriminant formula needs deg(d) = 1 and constant g",
            family.name(),
            c.eta,
            c.omega
        )));
    }
    Ok(c)
}

/// `Dis(F_n) = (-rho)^((n-2)(n-1)/2) (2 d')^(n-1) n^(n-3) beta^((n-1)(n-3))`
/// for `deg d = 1`, constant `g`, `n >= 2`. At `n = 2` the factor `n^(n-3)`
/// is `1/2`, so the value is a genuine rational along the way.
pub fn disc_f_closed(family: &GfpFamily, n: u64) -> Result<Rational> {
    family.expect_kind(Kind::FibonacciType)?;
    let c = linear_d_constant_g(family)?;
    if n < 2 {
        return Err(GfpError::InvalidArgument(
            "F_1 is constant; the discriminant needs n >= 2".into(),
        ));
    }
    // d is linear, so d' is the constant beta.
    let d_prime = &c.beta;
    let n_big = BigInt::from(n);
    let n_s = &n_big - 3;
    Ok(pow_big(
        &-&c.rho,
        &half_of_even((&n_big - 2) * (&n_big - 1), "(n-2)(n-1)"),
    ) * pow_big(&(d_prime * rat(2)), &(&n_big - 1))
        * pow_big(&Rational::from_integer(n_big.clone()), &n_s)
        * pow_big(&c.beta, &((&n_big - 1) * &n_s)))
}

/// `Dis(L_n) = (-rho)^(n(n-1)/2) 2^(n-1) (n d')^n alpha^(2-2n) beta^(n(n-2))`
/// for `deg d = 1`, constant `g`, `n >= 1`.
pub fn disc_l_closed(family: &GfpFamily, n: u64) -> Result<Rational> {
    family.expect_kind(Kind::LucasType)?;
    let c = linear_d_constant_g(family)?;
    positive(n, "n")?;
    let d_prime = &c.beta;
    let n_big = BigInt::from(n);
    Ok(
        pow_big(&-&c.rho, &half_of_even(&n_big * (&n_big - 1), "n(n-1)"))
            * pow_big(&rat(2), &(&n_big - 1))
            * pow_big(&(d_prime * Rational::from_integer(n_big.clone())), &n_big)
            * pow_big(&rat(family.alpha()), &(BigInt::from(2) - 2 * &n_big))
            * pow_big(&c.beta, &(&n_big * (&n_big - 2))),
    )
}

/// Closed-form discriminant for either kind.
pub fn disc_closed(family: &GfpFamily, n: u64) -> Result<Rational> {
    match family.kind() {
        Kind::FibonacciType => disc_f_closed(family, n),
        Kind::LucasType => disc_l_closed(family, n),
    }
}

/// `Res(G1_i, G2_j)` by whichever theorem covers the pair: same
/// Fibonacci-type family, same Lucas-type family, or a conjugate pair in
/// either order (Fibonacci-type first is reduced to Lucas-type first by the
/// swap sign).
pub fn closed_resultant(
    first: &GfpFamily,
    i: u64,
    second: &GfpFamily,
    j: u64,
) -> Result<ClosedResult> {
    match (first.kind(), second.kind()) {
        (Kind::FibonacciType, Kind::FibonacciType) if first == second => res_ff_closed(first, i, j),
        (Kind::LucasType, Kind::LucasType) if first == second => res_ll_closed(first, i, j),
        (Kind::LucasType, Kind::FibonacciType) if same_d_g(first, second) => {
            res_lf_closed(first, second, i, j)
        }
        (Kind::FibonacciType, Kind::LucasType) if same_d_g(first, second) => {
            let swapped = res_lf_closed(second, first, j, i)?;
            let eta = first.constants().eta as u64;
            // deg F_i * deg L_j = eta^2 (i-1) j
            let odd = (eta * eta * (i - 1) * j) % 2 == 1;
            let value = if odd { -swapped.value } else { swapped.value };
            let gate = Gate {
                gcd: swapped.gate.gcd,
                e2_first: swapped.gate.e2_second,
                e2_second: swapped.gate.e2_first,
            };
            Ok(ClosedResult {
                value,
                branch: swapped.branch,
                gate,
            })
        }
        _ => Err(GfpError::NoClosedForm(format!(
            "{} and {} are neither the same family nor a conjugate pair",
            first.name(),
            second.name()
        ))),
    }
}

fn same_d_g(a: &GfpFamily, b: &GfpFamily) -> bool {
    a.d() == b.d() && a.g() == b.g()
}
