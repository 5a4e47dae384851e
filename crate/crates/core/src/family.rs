//! Generalized Fibonacci polynomial families.
//!
//! A family is fixed by `d`, `g` and its initial values:
//!
//! ```text
//! G_0 = p0, G_1 = p1, G_n = d G_{n-1} + g G_{n-2}
//! ```
//!
//! Fibonacci-type families start from `(0, 1)`. Lucas-type families start
//! from an integer `p0` with `|p0|` in {1, 2} and a polynomial `p1` with
//! `d = alpha * p1`, `alpha = 2 / p0`.

use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{GfpError, Result};
use crate::poly::{rat, Polynomial, Rational};
use crate::sylvester;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    FibonacciType,
    LucasType,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::FibonacciType => "Fibonacci-type",
            Kind::LucasType => "Lucas-type",
        })
    }
}

struct Builtin {
    name: &'static str,
    kind: Kind,
    d: &'static [i64],
    g: &'static [i64],
    p0: i64,
    conjugate: &'static str,
}

const fn fib(
    name: &'static str,
    d: &'static [i64],
    g: &'static [i64],
    conjugate: &'static str,
) -> Builtin {
    Builtin {
        name,
        kind: Kind::FibonacciType,
        d,
        g,
        p0: 0,
        conjugate,
    }
}

const fn luc(
    name: &'static str,
    d: &'static [i64],
    g: &'static [i64],
    p0: i64,
    conjugate: &'static str,
) -> Builtin {
    Builtin {
        name,
        kind: Kind::LucasType,
        d,
        g,
        p0,
        conjugate,
    }
}

// Ascending coefficients; p1 = d / alpha for the Lucas-type rows.
const BUILTINS: &[Builtin] = &[
    fib("fibonacci", &[0, 1], &[1], "lucas"),
    luc("lucas", &[0, 1], &[1], 2, "fibonacci"),
    fib("pell", &[0, 2], &[1], "pell-lucas-prime"),
    luc("pell-lucas-prime", &[0, 2], &[1], 1, "pell"),
    fib("fermat", &[0, 3], &[-2], "fermat-lucas"),
    luc("fermat-lucas", &[0, 3], &[-2], 2, "fermat"),
    fib("chebyshev-U", &[0, 2], &[-1], "chebyshev-T"),
    luc("chebyshev-T", &[0, 2], &[-1], 1, "chebyshev-U"),
    fib("morgan-voyce-B", &[2, 1], &[-1], "morgan-voyce-C"),
    luc("morgan-voyce-C", &[2, 1], &[-1], 2, "morgan-voyce-B"),
    fib("vieta", &[0, 1], &[-1], "vieta-lucas"),
    luc("vieta-lucas", &[0, 1], &[-1], 2, "vieta"),
];

pub fn builtin_names() -> impl Iterator<Item = &'static str> {
    BUILTINS.iter().map(|b| b.name)
}

/// A validated sequence definition together with a shared cache of the
/// members generated so far. Clones share the cache.
#[derive(Clone)]
pub struct GfpFamily {
    name: String,
    kind: Kind,
    d: Polynomial,
    g: Polynomial,
    p0: i64,
    p1: Polynomial,
    alpha: i64,
    cache: Arc<RwLock<Vec<Polynomial>>>,
}

/// Equality is mathematical: name and cache are ignored.
impl PartialEq for GfpFamily {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
            && self.p0 == other.p0
            && self.d == other.d
            && self.g == other.g
            && self.p1 == other.p1
    }
}

impl Eq for GfpFamily {}

impl fmt::Debug for GfpFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GfpFamily")
            .field("name", &self.name)
            .field("kind", &self.kind)
            .field("d", &self.d)
            .field("g", &self.g)
            .field("p0", &self.p0)
            .field("p1", &self.p1)
            .field("alpha", &self.alpha)
            .finish()
    }
}

/// `beta = lc(d)`, `lambda = lc(g)`, `eta = deg(d)`, `omega = deg(g)`,
/// `rho = Res(g, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyConstants {
    pub beta: Rational,
    pub lambda: Rational,
    pub eta: usize,
    pub omega: usize,
    pub rho: Rational,
}

impl FamilyConstants {
    /// `(-1)^(eta omega) beta^(2 eta - omega) rho`, the base every resultant
    /// formula raises to some power.
    pub fn base(&self) -> Rational {
        let b = num_traits::pow(self.beta.clone(), 2 * self.eta - self.omega) * &self.rho;
        if (self.eta * self.omega) % 2 == 1 {
            -b
        } else {
            b
        }
    }
}

pub fn builtin_family(name: &str) -> Result<GfpFamily> {
    if name.eq_ignore_ascii_case("pell-lucas") {
        return Err(GfpError::UnprimedPellLucas);
    }
    let b = BUILTINS
        .iter()
        .find(|b| b.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| GfpError::UnknownFamily {
            name: name.to_string(),
            valid: builtin_names().collect::<Vec<_>>().join(", "),
        })?;
    let d = Polynomial::from_ints(b.d);
    let g = Polynomial::from_ints(b.g);
    let fam = match b.kind {
        Kind::FibonacciType => GfpFamily::fibonacci_type(d, g)?,
        Kind::LucasType => {
            let p1 = d.scale(&Rational::new(b.p0.into(), 2.into()));
            GfpFamily::lucas_type(d, g, b.p0, p1)?
        }
    };
    Ok(fam.named(b.name))
}

/// All built-in families, in table order.
pub fn builtin_families() -> Vec<GfpFamily> {
    builtin_names()
        .map(|n| builtin_family(n).expect("built-in families are valid"))
        .collect()
}

pub fn custom_family(
    kind: Kind,
    d: Polynomial,
    g: Polynomial,
    p0: i64,
    p1: Polynomial,
) -> Result<GfpFamily> {
    match kind {
        Kind::FibonacciType => {
            if p0 != 0 || p1 != Polynomial::one() {
                return Err(GfpError::FibonacciInitialValues);
            }
            GfpFamily::fibonacci_type(d, g)
        }
        Kind::LucasType => GfpFamily::lucas_type(d, g, p0, p1),
    }
}

fn check_d_g(d: &Polynomial, g: &Polynomial) -> Result<()> {
    let deg_d = d.degree().ok_or(GfpError::ZeroPolynomial("d"))?;
    let deg_g = g.degree().ok_or(GfpError::ZeroPolynomial("g"))?;
    let gcd = d.gcd(g)?;
    if !gcd.is_constant() {
        return Err(GfpError::NotCoprime {
            gcd: gcd.to_string(),
        });
    }
    if deg_d <= deg_g {
        return Err(GfpError::DegreeOrder { deg_d, deg_g });
    }
    Ok(())
}

impl GfpFamily {
    fn new(kind: Kind, d: Polynomial, g: Polynomial, p0: i64, p1: Polynomial, alpha: i64) -> Self {
        let g0 = Polynomial::constant(rat(p0));
        let cache = vec![g0, p1.clone()];
        GfpFamily {
            name: "custom".to_string(),
            kind,
            d,
            g,
            p0,
            p1,
            alpha,
            cache: Arc::new(RwLock::new(cache)),
        }
    }

    pub fn fibonacci_type(d: Polynomial, g: Polynomial) -> Result<Self> {
        check_d_g(&d, &g)?;
        Ok(Self::new(
            Kind::FibonacciType,
            d,
            g,
            0,
            Polynomial::one(),
            1,
        ))
    }

    /// Lucas-type family; `alpha = 2 / p0` must be an integer and `d = alpha p1`.
    ///
    /// The integer side conditions compare `p0` with the content of `p1` and
    /// of `d`. `gcd(p0, g)` is not required: fermat-lucas (`p0 = 2`,
    /// `g = -2`) fails it and still satisfies every identity here.
    pub fn lucas_type(d: Polynomial, g: Polynomial, p0: i64, p1: Polynomial) -> Result<Self> {
        check_d_g(&d, &g)?;
        if !matches!(p0.abs(), 1 | 2) {
            return Err(GfpError::LucasCondition(format!(
                "|p0| = {} is not 1 or 2",
                p0.abs()
            )));
        }
        let alpha = 2 / p0;
        if p1.degree().unwrap_or(0) < 1 {
            return Err(GfpError::LucasCondition(
                "deg(p1) must be at least 1".into(),
            ));
        }
        let p0_big = BigInt::from(p0);
        for (label, poly) in [("p1", &p1), ("d", &d)] {
            if !p0_big.gcd(&poly.numerator_content()).is_one() {
                return Err(GfpError::LucasCondition(format!(
                    "gcd(p0, {label}) != 1 for p0 = {p0}, {label} = {poly}"
                )));
            }
        }
        if p1.scale(&rat(alpha)) != d {
            return Err(GfpError::DNotAlphaP1 { alpha });
        }
        Ok(Self::new(Kind::LucasType, d, g, p0, p1, alpha))
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn d(&self) -> &Polynomial {
        &self.d
    }

    pub fn g(&self) -> &Polynomial {
        &self.g
    }

    pub fn p0(&self) -> i64 {
        self.p0
    }

    pub fn p1(&self) -> &Polynomial {
        &self.p1
    }

    /// `2 / p0` for Lucas-type, 1 for Fibonacci-type.
    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn is_fibonacci(&self) -> bool {
        self.kind == Kind::FibonacciType
    }

    pub fn has_constant_g(&self) -> bool {
        self.g.is_constant()
    }

    pub fn expect_kind(&self, expected: Kind) -> Result<()> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(GfpError::WrongKind {
                expected,
                found: self.kind,
                name: self.name.clone(),
            })
        }
    }

    /// `G_n`, computed by the recurrence and memoized.
    pub fn generate(&self, n: usize) -> Polynomial {
        {
            let cache = self.cache.read().unwrap_or_else(|e| e.into_inner());
            if let Some(p) = cache.get(n) {
                return p.clone();
            }
        }
        let mut cache = self.cache.write().unwrap_or_else(|e| e.into_inner());
        while cache.len() <= n {
            let k = cache.len();
            let next = &(&self.d * &cache[k - 1]) + &(&self.g * &cache[k - 2]);
            cache.push(next);
        }
        cache[n].clone()
    }

    pub fn constants(&self) -> FamilyConstants {
        let (eta, beta) = self.d.degree_lc();
        let (omega, lambda) = self.g.degree_lc();
        let rho = sylvester::resultant(&self.g, &self.d).expect("d and g are nonzero");
        FamilyConstants {
            beta,
            lambda,
            eta: eta.expect("d is nonzero"),
            omega: omega.expect("g is nonzero"),
            rho,
        }
    }

    /// `d^2 + 4g`, the polynomial standing in for `(a - b)^2` where `a`, `b`
    /// are the roots of `z^2 - d z - g`.
    pub fn discriminant_poly(&self) -> Polynomial {
        &(&self.d * &self.d) + &self.g.scale(&rat(4))
    }

    /// The family of the other kind built on the same `d` and `g`.
    ///
    /// Built-ins (and customs equal to a built-in) map through the table. A
    /// custom Lucas-type family always has a Fibonacci-type conjugate; a custom
    /// Fibonacci-type one needs `p0`, see [`GfpFamily::lucas_conjugate`].
    pub fn conjugate(&self) -> Result<GfpFamily> {
        if let Some(b) = BUILTINS
            .iter()
            .find(|b| builtin_family(b.name).map(|f| &f == self).unwrap_or(false))
        {
            return builtin_family(b.conjugate);
        }
        match self.kind {
            Kind::LucasType => Ok(GfpFamily::fibonacci_type(self.d.clone(), self.g.clone())?
                .named(&format!("{}-conjugate", self.name))),
            Kind::FibonacciType => Err(GfpError::NoConjugate(self.name.clone())),
        }
    }

    /// Lucas-type conjugate with the given `p0` (`p1 = d p0 / 2`).
    pub fn lucas_conjugate(&self, p0: i64) -> Result<GfpFamily> {
        self.expect_kind(Kind::FibonacciType)?;
        if p0 == 0 {
            return Err(GfpError::LucasCondition("p0 must be nonzero".into()));
        }
        let p1 = self.d.scale(&Rational::new(p0.into(), 2.into()));
        Ok(
            GfpFamily::lucas_type(self.d.clone(), self.g.clone(), p0, p1)?
                .named(&format!("{}-conjugate", self.name)),
        )
    }

    /// Accepts a built-in name or an inline definition
    /// `fib:<d>:<g>` / `lucas:<d>:<g>:<p0>` using the polynomial grammar.
    pub fn from_spec(spec: &str) -> Result<GfpFamily> {
        let parts: Vec<&str> = spec.split(':').collect();
        let bad = |reason: &str| GfpError::Parse {
            input: spec.to_string(),
            reason: reason.to_string(),
        };
        match parts.as_slice() {
            [name] => builtin_family(name.trim()),
            ["fib", d, g] => {
                GfpFamily::fibonacci_type(d.parse()?, g.parse()?).map(|f| f.named(spec))
            }
            ["lucas", d, g, p0] => {
                let d: Polynomial = d.parse()?;
                let p0: i64 = p0
                    .trim()
                    .parse()
                    .map_err(|_| bad("p0 must be an integer"))?;
                if p0 == 0 {
                    return Err(GfpError::LucasCondition("p0 must be nonzero".into()));
                }
                let p1 = d.scale(&Rational::new(p0.into(), 2.into()));
                GfpFamily::lucas_type(d, g.parse()?, p0, p1).map(|f| f.named(spec))
            }
            _ => Err(bad(
                "expected a family name, fib:<d>:<g> or lucas:<d>:<g>:<p0>",
            )),
        }
    }
}

/// A Fibonacci-type family and a Lucas-type family sharing `d` and `g`.
#[derive(Clone, Debug)]
pub struct ConjugatePair {
    fibonacci: GfpFamily,
    lucas: GfpFamily,
}

impl ConjugatePair {
    pub fn new(fibonacci: GfpFamily, lucas: GfpFamily) -> Result<Self> {
        fibonacci.expect_kind(Kind::FibonacciType)?;
        lucas.expect_kind(Kind::LucasType)?;
        if fibonacci.d != lucas.d || fibonacci.g != lucas.g {
            return Err(GfpError::NotConjugate {
                fibonacci: fibonacci.name.clone(),
                lucas: lucas.name.clone(),
            });
        }
        Ok(ConjugatePair { fibonacci, lucas })
    }

    /// Pairs a family with its conjugate, whichever kind it is.
    pub fn of(family: &GfpFamily) -> Result<Self> {
        let other = family.conjugate()?;
        match family.kind {
            Kind::FibonacciType => Self::new(family.clone(), other),
            Kind::LucasType => Self::new(other, family.clone()),
        }
    }

    pub fn fibonacci(&self) -> &GfpFamily {
        &self.fibonacci
    }

    pub fn lucas(&self) -> &GfpFamily {
        &self.lucas
    }

    pub fn alpha(&self) -> i64 {
        self.lucas.alpha
    }
}

/// Built-in conjugate pairs, Fibonacci-type first.
pub fn builtin_pairs() -> Vec<ConjugatePair> {
    builtin_families()
        .into_iter()
        .filter(GfpFamily::is_fibonacci)
        .map(|f| ConjugatePair::of(&f).expect("built-ins are paired"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn builtin_examples() {
        let f = builtin_family("fibonacci").unwrap();
        assert_eq!(
            (f.kind(), f.d(), f.g()),
            (Kind::FibonacciType, &p("x"), &p("1"))
        );

        let t = builtin_family("chebyshev-T").unwrap();
        assert_eq!(t.kind(), Kind::LucasType);
        assert_eq!(
            (t.p0(), t.p1(), t.d(), t.g(), t.alpha()),
            (1, &p("x"), &p("2*x"), &p("-1"), 2)
        );

        let fl = builtin_family("fermat-lucas").unwrap();
        assert_eq!(
            (fl.p0(), fl.p1(), fl.d(), fl.g(), fl.alpha()),
            (2, &p("3*x"), &p("3*x"), &p("-2"), 1)
        );
    }

    #[test]
    fn builtin_errors() {
        match builtin_family("jacobsthal").unwrap_err() {
            GfpError::UnknownFamily { valid, .. } => assert!(valid.contains("morgan-voyce-C")),
            e => panic!("unexpected {e}"),
        }
        assert_eq!(
            builtin_family("pell-lucas").unwrap_err(),
            GfpError::UnprimedPellLucas
        );
        assert_eq!(builtin_family("Chebyshev-u").unwrap().name(), "chebyshev-U");
    }

    #[test]
    fn custom_examples() {
        let f = custom_family(Kind::FibonacciType, p("x"), p("1"), 0, p("1")).unwrap();
        assert_eq!(f, builtin_family("fibonacci").unwrap());

        assert!(matches!(
            custom_family(Kind::FibonacciType, p("x"), p("x"), 0, p("1")),
            Err(GfpError::NotCoprime { .. })
        ));

        let l = custom_family(Kind::LucasType, p("x"), p("1"), 2, p("x")).unwrap();
        assert_eq!(l, builtin_family("lucas").unwrap());
        assert_eq!(l.alpha(), 1);
    }

    #[test]
    fn custom_validation_errors() {
        assert!(matches!(
            custom_family(Kind::FibonacciType, p("x"), p("x^2 + 1"), 0, p("1")),
            Err(GfpError::DegreeOrder { deg_d: 1, deg_g: 2 })
        ));
        assert!(matches!(
            custom_family(Kind::FibonacciType, p("x"), p("1"), 2, p("x")),
            Err(GfpError::FibonacciInitialValues)
        ));
        // unprimed Pell-Lucas
        assert!(matches!(
            custom_family(Kind::LucasType, p("2*x"), p("1"), 2, p("2*x")),
            Err(GfpError::LucasCondition(_))
        ));
        assert!(matches!(
            custom_family(Kind::LucasType, p("x"), p("1"), 3, p("x")),
            Err(GfpError::LucasCondition(_))
        ));
        assert!(matches!(
            custom_family(Kind::LucasType, p("x"), p("1"), 2, p("3*x")),
            Err(GfpError::DNotAlphaP1 { alpha: 1 })
        ));
        assert!(matches!(
            custom_family(Kind::LucasType, p("x"), p("1"), 2, p("1")),
            Err(GfpError::LucasCondition(_))
        ));
        assert!(custom_family(Kind::LucasType, p("x"), p("1"), -2, p("-x")).is_ok());
    }

    #[test]
    fn generate_examples() {
        let f = builtin_family("fibonacci").unwrap();
        assert_eq!(f.generate(4), p("x^3 + 2*x"));
        assert!(f.generate(0).is_zero());
        let l = builtin_family("lucas").unwrap();
        assert_eq!(l.generate(2), p("x^2 + 2"));
        assert_eq!(l.generate(0), p("2"));
        // cache filled out of order
        assert_eq!(f.generate(2), p("x"));
        assert_eq!(
            builtin_family("chebyshev-U").unwrap().generate(3),
            p("4*x^2 - 1")
        );
    }

    #[test]
    fn constants_examples() {
        let c = builtin_family("fermat").unwrap().constants();
        assert_eq!(
            (c.beta.clone(), c.eta, c.omega, c.rho.clone()),
            (rat(3), 1, 0, rat(-2))
        );
        assert_eq!(c.base(), rat(-18));
        let c = builtin_family("fibonacci").unwrap().constants();
        assert_eq!((c.beta, c.eta, c.omega, c.rho), (rat(1), 1, 0, rat(1)));
        let c = builtin_family("chebyshev-U").unwrap().constants();
        assert_eq!(
            (c.beta.clone(), c.eta, c.omega, c.rho.clone()),
            (rat(2), 1, 0, rat(-1))
        );
        assert_eq!(c.base(), rat(-4));
    }

    #[test]
    fn conjugate_examples() {
        let conj = |n: &str| {
            builtin_family(n)
                .unwrap()
                .conjugate()
                .unwrap()
                .name()
                .to_string()
        };
        assert_eq!(conj("fibonacci"), "lucas");
        assert_eq!(conj("chebyshev-T"), "chebyshev-U");
        assert_eq!(conj("vieta"), "vieta-lucas");

        let custom_fib = GfpFamily::fibonacci_type(p("x^2 + x + 1"), p("x")).unwrap();
        assert_eq!(
            custom_fib.conjugate().unwrap_err(),
            GfpError::NoConjugate("custom".into())
        );
        let custom_luc = custom_fib.lucas_conjugate(2).unwrap();
        assert_eq!(custom_luc.conjugate().unwrap(), custom_fib);
    }

    #[test]
    fn discriminant_poly_examples() {
        let dp = |n: &str| builtin_family(n).unwrap().discriminant_poly();
        assert_eq!(dp("fibonacci"), p("x^2 + 4"));
        assert_eq!(dp("chebyshev-U"), p("4*x^2 - 4"));
        assert_eq!(dp("fermat"), p("9*x^2 - 8"));
    }

    #[test]
    fn from_spec_forms() {
        assert_eq!(GfpFamily::from_spec("pell").unwrap().name(), "pell");
        let f = GfpFamily::from_spec("fib:x^2 + x + 1:x").unwrap();
        assert_eq!(f.generate(2), p("x^2 + x + 1"));
        let l = GfpFamily::from_spec("lucas:2*x:-1:1").unwrap();
        assert_eq!(l, builtin_family("chebyshev-T").unwrap());
        assert!(GfpFamily::from_spec("lucas:x:1").is_err());
    }

    #[test]
    fn degree_law() {
        for f in builtin_families() {
            let c = f.constants();
            let alpha = rat(f.alpha());
            for n in 1..=30usize {
                let (deg, lc) = f.generate(n).degree_lc();
                if f.is_fibonacci() {
                    assert_eq!(deg, Some(c.eta * (n - 1)), "{} {n}", f.name());
                    assert_eq!(lc, num_traits::pow(c.beta.clone(), n - 1));
                } else {
                    assert_eq!(deg, Some(c.eta * n), "{} {n}", f.name());
                    assert_eq!(lc, num_traits::pow(c.beta.clone(), n) / &alpha);
                }
            }
        }
    }

    #[test]
    fn conjugates_share_constants() {
        for pair in builtin_pairs() {
            assert_eq!(pair.fibonacci().constants(), pair.lucas().constants());
        }
        assert_eq!(builtin_pairs().len(), 6);
    }

    #[test]
    fn concurrent_generation_agrees() {
        let f = builtin_family("fermat").unwrap();
        let expected: Vec<_> = {
            let fresh = builtin_family("fermat").unwrap();
            (0..40).map(|n| fresh.generate(n)).collect()
        };
        std::thread::scope(|s| {
            for t in 0..8 {
                let f = f.clone();
                let expected = &expected;
                s.spawn(move || {
                    for n in (0..40).rev().skip(t) {
                        assert_eq!(&f.generate(n), &expected[n]);
                    }
                });
            }
        });
    }
}
