//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the summary is printed even when everything passes.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gfp_core::closed::{disc_closed, pow_big, res_ff_closed, res_lf_closed, res_ll_closed};
use gfp_core::identities::{deriv_f_closed, deriv_l_closed};
use gfp_core::sylvester::{discriminant, product_discriminant, resultant};
use gfp_core::verify::{self, SweepConfig};
use gfp_core::{
    builtin_families, builtin_family, builtin_pairs, rat, Branch, GfpFamily, Kind, Rational,
};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn of_kind(kind: Kind) -> Vec<GfpFamily> {
    builtin_families()
        .into_iter()
        .filter(|f| f.kind() == kind)
        .collect()
}

fn linear_constant_g(f: &GfpFamily) -> bool {
    let c = f.constants();
    c.eta == 1 && c.omega == 0
}

fn mismatch(what: String, expected: &Rational, got: &Rational) -> String {
    format!("{what}: oracle {expected}, closed {got}")
}

fn criterion_1() -> Outcome {
    let fams = of_kind(Kind::FibonacciType);
    let mut zeros = 0;
    for f in &fams {
        for m in 1..=12u64 {
            for n in 1..=12u64 {
                let closed = res_ff_closed(f, m, n).map_err(|e| e.to_string())?;
                let oracle = resultant(&f.generate(m as usize), &f.generate(n as usize)).unwrap();
                if closed.value != oracle {
                    return Err(mismatch(
                        format!("{} ({m}, {n})", f.name()),
                        &oracle,
                        &closed.value,
                    ));
                }
                zeros += usize::from(closed.branch == Branch::Zero);
            }
        }
    }
    Ok(format!(
        "{} families x 144 cells ({zeros} on the zero branch)",
        fams.len()
    ))
}

fn criterion_2() -> Outcome {
    let fams = of_kind(Kind::LucasType);
    for f in &fams {
        for m in 1..=12u64 {
            for n in 1..=12u64 {
                let closed = res_ll_closed(f, m, n).map_err(|e| e.to_string())?;
                let oracle = resultant(&f.generate(m as usize), &f.generate(n as usize)).unwrap();
                if closed.value != oracle {
                    return Err(mismatch(
                        format!("{} ({m}, {n})", f.name()),
                        &oracle,
                        &closed.value,
                    ));
                }
            }
        }
    }
    // Chebyshev-T specialisation: (-1)^(mn/2) 2^((m-1)(n-1)-1) 2^gcd(m,n)
    let t = builtin_family("chebyshev-T").unwrap();
    for m in 1..=12u64 {
        for n in 1..=12u64 {
            let closed = res_ll_closed(&t, m, n).unwrap();
            if closed.branch == Branch::Zero {
                continue;
            }
            let sign = if (m * n / 2) % 2 == 0 {
                rat(1)
            } else {
                rat(-1)
            };
            let e = BigInt::from((m - 1) * (n - 1)) - 1 + num_integer::gcd(m, n);
            let expected = sign * pow_big(&rat(2), &e);
            if closed.value != expected {
                return Err(mismatch(
                    format!("chebyshev-T special form ({m}, {n})"),
                    &expected,
                    &closed.value,
                ));
            }
        }
    }
    Ok(format!(
        "{} families x 144 cells, chebyshev-T special form holds",
        fams.len()
    ))
}

fn criterion_3() -> Outcome {
    let pairs = builtin_pairs();
    for p in &pairs {
        let (l, f) = (p.lucas(), p.fibonacci());
        for n in 1..=12u64 {
            for m in 1..=12u64 {
                let closed = res_lf_closed(l, f, n, m).map_err(|e| e.to_string())?;
                let oracle = resultant(&l.generate(n as usize), &f.generate(m as usize)).unwrap();
                if closed.value != oracle {
                    return Err(mismatch(
                        format!("{} ({n}, {m})", l.name()),
                        &oracle,
                        &closed.value,
                    ));
                }
            }
        }
    }
    Ok(format!("{} conjugate pairs x 144 cells", pairs.len()))
}

fn criterion_4() -> Outcome {
    let fams: Vec<GfpFamily> = builtin_families()
        .into_iter()
        .filter(linear_constant_g)
        .collect();
    let mut cells = 0;
    for f in &fams {
        for n in 2..=15u64 {
            let closed = disc_closed(f, n).map_err(|e| e.to_string())?;
            let oracle = discriminant(&f.generate(n as usize)).unwrap();
            if closed != oracle {
                return Err(mismatch(format!("{} n={n}", f.name()), &oracle, &closed));
            }
            cells += 1;
        }
    }
    let spot = [
        ("fibonacci", 3, -4),
        ("lucas", 2, -8),
        ("chebyshev-T", 3, 432),
    ];
    for (name, n, want) in spot {
        let got = disc_closed(&builtin_family(name).unwrap(), n).unwrap();
        if got != rat(want) {
            return Err(format!("Dis({name} {n}) = {got}, expected {want}"));
        }
    }
    Ok(format!(
        "{} families, {cells} discriminants, spot values -4, -8, 432",
        fams.len()
    ))
}

fn criterion_5() -> Outcome {
    let pairs: Vec<_> = builtin_pairs()
        .into_iter()
        .filter(|p| p.fibonacci().has_constant_g())
        .collect();
    for p in &pairs {
        for n in 1..=20u64 {
            let f =
                deriv_f_closed(p, n).map_err(|e| format!("{} n={n}: {e}", p.fibonacci().name()))?;
            if f != p.fibonacci().generate(n as usize).derivative() {
                return Err(format!(
                    "{} n={n}: closed F_n' differs from formal",
                    p.fibonacci().name()
                ));
            }
            let l = deriv_l_closed(p, n).map_err(|e| e.to_string())?;
            if l != p.lucas().generate(n as usize).derivative() {
                return Err(format!(
                    "{} n={n}: closed L_n' differs from formal",
                    p.lucas().name()
                ));
            }
        }
    }
    Ok(format!(
        "{} pairs, 1 <= n <= 20, every division exact",
        pairs.len()
    ))
}

fn criterion_6() -> Outcome {
    let fib = builtin_family("fibonacci").unwrap();
    let lucas = builtin_family("lucas").unwrap();
    let pair = gfp_core::ConjugatePair::new(fib.clone(), lucas).unwrap();
    let at_one = [0, 1, 2, 5, 10, 20];
    // formal differentiation and Horner evaluation, computed independently
    let at_two = [0, 1, 4, 14, 44, 131];
    for n in 1..=6u64 {
        let d = deriv_f_closed(&pair, n).unwrap();
        let (v1, v2) = (d.evaluate(&rat(1)), d.evaluate(&rat(2)));
        if v1 != rat(at_one[n as usize - 1]) || v2 != rat(at_two[n as usize - 1]) {
            return Err(format!("n={n}: F_n'(1) = {v1}, F_n'(2) = {v2}"));
        }
    }
    Ok("F_n'(1) = 0,1,2,5,10,20 and F_n'(2) = 0,1,4,14,44,131".into())
}

fn criterion_7() -> Outcome {
    let ids: Vec<_> = verify::IDENTITIES
        .iter()
        .filter(|i| !i.id.starts_with("thm"))
        .collect();
    let cfg = SweepConfig {
        max_n: 10,
        random_cases: 200,
        ..SweepConfig::default()
    };
    let reports = verify::run(&cfg, &ids).map_err(|e| e.to_string())?;
    let checks: usize = reports.iter().map(|r| r.checks).sum();
    for r in &reports {
        if !r.passed {
            let f = &r.failures[0];
            return Err(format!(
                "{}: {} expected {}, got {}",
                r.identity, f.params, f.expected, f.got
            ));
        }
    }
    Ok(format!(
        "{} identity sweeps, {checks} checks, grids up to 10",
        reports.len()
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut holds = [0usize; 4];
    let trials = 100;
    for _ in 0..trials {
        let (p, q) = verify::random_coprime_pair(&mut rng, 4);
        let lhs = discriminant(&(&p * &q)).unwrap();
        let base = discriminant(&p).unwrap() * discriminant(&q).unwrap();
        let res = resultant(&p, &q).unwrap();
        for (k, count) in holds.iter_mut().enumerate() {
            if lhs == &base * num_traits::pow(res.clone(), k) {
                *count += 1;
            }
        }
        if product_discriminant(&p, &q).unwrap() != lhs {
            return Err(format!("product_discriminant wrong for P = {p}, Q = {q}"));
        }
    }
    let winners: Vec<usize> = (0..4).filter(|&k| holds[k] == trials).collect();
    if winners != [2] {
        return Err(format!(
            "exponents holding on all pairs: {winners:?}; counts {holds:?}"
        ));
    }
    Ok(format!(
        "exponent of Res is 2 on {trials}/{trials} coprime pairs; exponent 1 holds on {}",
        holds[1]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "closed Res(F_m, F_n) against Sylvester, m, n <= 12",
            criterion_1,
        ),
        (
            "closed Res(L_m, L_n) against Sylvester, m, n <= 12",
            criterion_2,
        ),
        (
            "closed Res(L_n, F_m) for conjugate pairs, n, m <= 12",
            criterion_3,
        ),
        (
            "closed discriminants, linear d and constant g, n <= 15",
            criterion_4,
        ),
        ("closed derivatives against formal, n <= 20", criterion_5),
        ("derivative sequences at x = 1 and x = 2", criterion_6),
        ("supporting identity sweeps", criterion_7),
        ("product discriminant exponent by brute force", criterion_8),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!(
                "criterion {}: PASS {title} [{detail}] ({})",
                i + 1,
                secs(took)
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {title} [{why}] ({})", i + 1, secs(took));
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}
