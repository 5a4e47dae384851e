//! Parameter sweeps: every identity checked over a grid of families and
//! indices, optionally in parallel. Results come back in a fixed order
//! whatever the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{GfpError, Result};
use crate::family::{builtin_families, ConjugatePair, GfpFamily, Kind};
use crate::identities::{self as id, Value, VerificationReport};
use crate::poly::Polynomial;

/// Environment variable that caps `max_n` for every sweep.
pub const MAX_N_ENV: &str = "GFP_MAX_N";

/// Custom families swept alongside the built-ins: `g = x` is not constant,
/// which exercises the general branch of every formula.
pub const CUSTOM_SPECS: &[&str] = &["fib:x^2 + x + 1:x", "lucas:x^2 + x + 1:x:2"];

#[derive(Clone, Copy, Debug)]
pub struct IdentityInfo {
    pub id: &'static str,
    pub aliases: &'static [&'static str],
    pub summary: &'static str,
}

pub const IDENTITIES: &[IdentityInfo] = &[
    IdentityInfo {
        id: "thm3.1",
        aliases: &["res-ff"],
        summary: "closed Res(F_n, F_m) against the Sylvester determinant",
    },
    IdentityInfo {
        id: "thm3.2",
        aliases: &["res-ll"],
        summary: "closed Res(L_m, L_n) against the Sylvester determinant",
    },
    IdentityInfo {
        id: "thm3.3",
        aliases: &["res-lf"],
        summary: "closed Res(L_n, F_m) against the Sylvester determinant",
    },
    IdentityInfo {
        id: "thm3.4",
        aliases: &["disc-f"],
        summary: "closed Dis(F_n) for linear d and constant g",
    },
    IdentityInfo {
        id: "thm3.5",
        aliases: &["disc-l"],
        summary: "closed Dis(L_n) for linear d and constant g",
    },
    IdentityInfo {
        id: "thm5.1",
        aliases: &["derivatives"],
        summary: "closed F_n' and L_n' against formal differentiation",
    },
    IdentityInfo {
        id: "resultant-laws",
        aliases: &[],
        summary: "swap, multiplicativity, powers, reduction, vanishing on random polynomials",
    },
    IdentityInfo {
        id: "product-disc",
        aliases: &[],
        summary: "Dis(PQ) = Dis(P) Dis(Q) Res(P, Q)^2 on random polynomials",
    },
    IdentityInfo {
        id: "degree-law",
        aliases: &[],
        summary: "degree and leading coefficient of every member",
    },
    IdentityInfo {
        id: "res-g",
        aliases: &[],
        summary: "resultants against g and Res(L_1, L_n)",
    },
    IdentityInfo {
        id: "consecutive-res",
        aliases: &[],
        summary: "Res(F_n, F_n-1) and Res(F_m, F_mq-1)",
    },
    IdentityInfo {
        id: "fib-decomposition",
        aliases: &[],
        summary: "F_m divides F_mq+r - g F_mq-1 F_r",
    },
    IdentityInfo {
        id: "lucas-decomposition",
        aliases: &[],
        summary: "L_m divides L_mq+r minus its parity tail",
    },
    IdentityInfo {
        id: "mixed-identities",
        aliases: &[],
        summary: "F_nq+r and alpha L_nq+r through L_n and F_n",
    },
    IdentityInfo {
        id: "gcd-criteria",
        aliases: &[],
        summary: "gcds of members against the index criteria",
    },
    IdentityInfo {
        id: "zero-criteria",
        aliases: &[],
        summary: "zero resultant iff common factor iff zero branch",
    },
    IdentityInfo {
        id: "fib-mod-disc",
        aliases: &[],
        summary: "F_n mod (d^2 + 4g) for constant g",
    },
    IdentityInfo {
        id: "res-disc-poly",
        aliases: &[],
        summary: "Res(d^2 + 4g, F_n) for constant g",
    },
];

/// Looks an identity up by id or alias.
pub fn identity(name: &str) -> Result<&'static IdentityInfo> {
    let name = name.trim();
    IDENTITIES
        .iter()
        .find(|i| {
            i.id.eq_ignore_ascii_case(name)
                || i.aliases.iter().any(|a| a.eq_ignore_ascii_case(name))
        })
        .ok_or_else(|| {
            GfpError::InvalidArgument(format!(
                "unknown identity '{name}'; valid: {}",
                IDENTITIES
                    .iter()
                    .map(|i| i.id)
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        })
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Upper bound for every index in the grids.
    pub max_n: u64,
    /// Worker threads; 0 means rayon's default.
    pub jobs: usize,
    /// Family names or inline specs; `None` means the built-ins plus
    /// [`CUSTOM_SPECS`].
    pub families: Option<Vec<String>>,
    /// Number of random triples for the resultant laws (and pairs for the
    /// product discriminant).
    pub random_cases: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_n: 10,
            jobs: 0,
            families: None,
            random_cases: 200,
            seed: 0x6766_7031,
        }
    }
}

impl SweepConfig {
    /// `max_n` after applying the `GFP_MAX_N` cap, if set.
    pub fn effective_max_n(&self) -> u64 {
        match std::env::var(MAX_N_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
        {
            Some(cap) => self.max_n.min(cap),
            None => self.max_n,
        }
    }

    fn selected_families(&self) -> Result<Vec<GfpFamily>> {
        match &self.families {
            None => {
                let mut all = builtin_families();
                for spec in CUSTOM_SPECS {
                    all.push(GfpFamily::from_spec(spec)?);
                }
                Ok(all)
            }
            Some(names) => names.iter().map(|n| GfpFamily::from_spec(n)).collect(),
        }
    }
}

/// Conjugate pairs reachable from the selection, each once.
fn pairs_of(families: &[GfpFamily]) -> Vec<ConjugatePair> {
    let mut out: Vec<ConjugatePair> = Vec::new();
    for f in families {
        if let Ok(pair) = ConjugatePair::of(f) {
            let seen = out
                .iter()
                .any(|p| p.fibonacci() == pair.fibonacci() && p.lucas() == pair.lucas());
            if !seen {
                out.push(pair);
            }
        }
    }
    out
}

type Task = Box<dyn Fn() -> Result<VerificationReport> + Send + Sync>;

struct Plan {
    info: &'static IdentityInfo,
    grid: String,
    notes: Vec<String>,
    tasks: Vec<Task>,
}

impl Plan {
    fn new(info: &'static IdentityInfo, grid: String) -> Self {
        Plan {
            info,
            grid,
            notes: Vec::new(),
            tasks: Vec::new(),
        }
    }

    fn push(&mut self, task: impl Fn() -> Result<VerificationReport> + Send + Sync + 'static) {
        self.tasks.push(Box::new(task));
    }
}

fn linear_constant(f: &GfpFamily) -> bool {
    let c = f.constants();
    c.eta == 1 && c.omega == 0
}

fn plan(info: &'static IdentityInfo, cfg: &SweepConfig, families: &[GfpFamily]) -> Plan {
    let n_max = cfg.effective_max_n();
    let fibs: Vec<GfpFamily> = families
        .iter()
        .filter(|f| f.is_fibonacci())
        .cloned()
        .collect();
    let lucs: Vec<GfpFamily> = families
        .iter()
        .filter(|f| !f.is_fibonacci())
        .cloned()
        .collect();
    let pairs = pairs_of(families);
    let mut p = Plan::new(info, String::new());

    match info.id {
        "thm3.1" | "thm3.2" => {
            let fams = if info.id == "thm3.1" { &fibs } else { &lucs };
            p.grid = format!("1 <= m, n <= {n_max}");
            for f in fams {
                for i in 1..=n_max {
                    for j in 1..=n_max {
                        let f = f.clone();
                        p.push(move || id::check_closed_resultant(info.id, &f, i, &f, j));
                    }
                }
            }
        }
        "thm3.3" => {
            p.grid = format!("1 <= n, m <= {n_max}, both argument orders");
            for pair in &pairs {
                for i in 1..=n_max {
                    for j in 1..=n_max {
                        let (l, f) = (pair.lucas().clone(), pair.fibonacci().clone());
                        p.push(move || {
                            let mut r = id::check_closed_resultant(info.id, &l, i, &f, j)?;
                            r.merge(id::check_closed_resultant(info.id, &f, j, &l, i)?);
                            Ok(r)
                        });
                    }
                }
            }
        }
        "thm3.4" | "thm3.5" => {
            let (fams, lo) = if info.id == "thm3.4" {
                (&fibs, 2)
            } else {
                (&lucs, 1)
            };
            p.grid = format!("{lo} <= n <= {n_max}, deg d = 1, constant g");
            for f in fams {
                if !linear_constant(f) {
                    p.notes.push(format!(
                        "skipped {}: needs deg d = 1 and constant g",
                        f.name()
                    ));
                    continue;
                }
                for n in lo..=n_max {
                    let f = f.clone();
                    p.push(move || id::check_closed_discriminant(info.id, &f, n));
                }
            }
        }
        "thm5.1" => {
            p.grid = format!("1 <= n <= {n_max}, constant g");
            for pair in &pairs {
                if !pair.fibonacci().has_constant_g() {
                    p.notes.push(format!(
                        "skipped {}: g is not constant",
                        pair.fibonacci().name()
                    ));
                    continue;
                }
                for n in 1..=n_max {
                    let pair = pair.clone();
                    p.push(move || id::check_derivatives(&pair, n));
                }
            }
        }
        "resultant-laws" => {
            p.grid = format!(
                "{} random triples, deg <= 6, coefficients in [-9, 9], seed {}",
                cfg.random_cases, cfg.seed
            );
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for _ in 0..cfg.random_cases {
                let (f, h) = random_pair(&mut rng, 6);
                let q = random_poly(&mut rng, 0, 6);
                let k = rng.gen_range(1..=3u32);
                p.push(move || id::check_resultant_laws(&f, &h, &q, k));
            }
        }
        "product-disc" => {
            p.grid = format!(
                "{} random coprime pairs, 1 <= deg <= 4, seed {}",
                cfg.random_cases, cfg.seed
            );
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
            for _ in 0..cfg.random_cases {
                let (a, b) = random_coprime_pair(&mut rng, 4);
                p.push(move || id::check_product_discriminant(&a, &b));
            }
        }
        "degree-law" => {
            p.grid = format!("1 <= n <= {}", 3 * n_max);
            for f in families {
                let f = f.clone();
                p.push(move || {
                    let mut r = VerificationReport::new(info.id, "");
                    for n in 1..=3 * n_max {
                        r.merge(id::check_degree_law(&f, n)?);
                    }
                    Ok(r)
                });
            }
        }
        "res-g" => {
            p.grid = format!("1 <= m, n <= {n_max}");
            for f in families {
                if f.kind() == Kind::LucasType && f.p0() != 2 && !f.has_constant_g() {
                    p.notes
                        .push(format!("skipped {}: needs p0 = 2 or constant g", f.name()));
                    continue;
                }
                for m in 1..=n_max {
                    let f = f.clone();
                    p.push(move || {
                        let mut r = id::check_res_g_lemmas(&f, m)?;
                        for n in 1..=n_max {
                            r.merge(id::check_res_g_factor(&f, m, n)?);
                        }
                        Ok(r)
                    });
                }
            }
        }
        "consecutive-res" => {
            p.grid = format!("2 <= n <= {n_max}; 1 <= m, q <= {n_max}, mq >= 2");
            for f in &fibs {
                for n in 2..=n_max {
                    let f = f.clone();
                    p.push(move || id::check_consecutive_resultant(&f, n));
                }
                for m in 1..=n_max {
                    for q in 1..=n_max {
                        if m * q < 2 {
                            continue;
                        }
                        let f = f.clone();
                        p.push(move || id::check_res_m_mq_minus_1(&f, m, q));
                    }
                }
            }
        }
        "fib-decomposition" => {
            p.grid = format!("1 <= m, q, r <= {n_max}");
            for f in &fibs {
                for m in 1..=n_max {
                    let f = f.clone();
                    p.push(move || {
                        let mut rep = VerificationReport::new(info.id, "");
                        for q in 1..=n_max {
                            for r in 1..=n_max {
                                rep.merge(id::check_fib_decomposition(&f, m, q, r)?);
                            }
                        }
                        Ok(rep)
                    });
                }
            }
        }
        "lucas-decomposition" => {
            p.grid = format!("2 <= m <= {n_max}, 1 <= q <= {n_max}, 1 <= r < m");
            for f in &lucs {
                for m in 2..=n_max {
                    let f = f.clone();
                    p.push(move || {
                        let mut rep = VerificationReport::new(info.id, "");
                        for q in 1..=n_max {
                            for r in 1..m {
                                rep.merge(id::check_lucas_decomposition(&f, m, q, r)?);
                            }
                        }
                        Ok(rep)
                    });
                }
            }
        }
        "mixed-identities" => {
            p.grid = format!("1 <= n, q <= {n_max}, 0 <= r <= {n_max} (r <= n when q = 1)");
            for pair in &pairs {
                for n in 1..=n_max {
                    let pair = pair.clone();
                    p.push(move || {
                        let mut rep = VerificationReport::new(info.id, "");
                        for q in 1..=n_max {
                            for r in 0..=n_max {
                                if q == 1 && r > n {
                                    continue;
                                }
                                rep.merge(id::check_mixed_identities(&pair, n, q, r)?);
                            }
                        }
                        Ok(rep)
                    });
                }
            }
        }
        "gcd-criteria" | "zero-criteria" => {
            p.grid = format!("1 <= m, n <= {n_max}");
            let zero = info.id == "zero-criteria";
            for f in families {
                for m in 1..=n_max {
                    let f = f.clone();
                    p.push(move || {
                        let mut rep = VerificationReport::new(info.id, "");
                        for n in 1..=n_max {
                            rep.merge(match (zero, f.kind()) {
                                (true, _) => id::check_zero_criteria(&f, m, &f, n)?,
                                (false, Kind::FibonacciType) => id::check_gcd_fib(&f, m, n)?,
                                (false, Kind::LucasType) => id::check_gcd_lucas(&f, m, n)?,
                            });
                        }
                        Ok(rep)
                    });
                }
            }
            for pair in &pairs {
                for n in 1..=n_max {
                    let pair = pair.clone();
                    p.push(move || {
                        let mut rep = VerificationReport::new(info.id, "");
                        for m in 1..=n_max {
                            rep.merge(if zero {
                                id::check_zero_criteria(pair.lucas(), n, pair.fibonacci(), m)?
                            } else {
                                id::check_gcd_mixed(&pair, n, m)?
                            });
                        }
                        Ok(rep)
                    });
                }
            }
        }
        "fib-mod-disc" | "res-disc-poly" => {
            p.grid = format!("1 <= n <= {n_max}, constant g");
            for f in &fibs {
                if !f.has_constant_g() {
                    p.notes
                        .push(format!("skipped {}: g is not constant", f.name()));
                    continue;
                }
                for n in 1..=n_max {
                    let f = f.clone();
                    if info.id == "fib-mod-disc" {
                        p.push(move || id::fib_mod_disc(&f, n));
                    } else {
                        p.push(move || id::check_res_disc_poly(&f, n));
                    }
                }
            }
        }
        other => unreachable!("identity '{other}' has no sweep"),
    }
    p
}

pub fn random_poly(rng: &mut ChaCha8Rng, min_deg: usize, max_deg: usize) -> Polynomial {
    let deg = rng.gen_range(min_deg..=max_deg);
    let mut coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
    while coeffs[deg] == 0 {
        coeffs[deg] = rng.gen_range(-9..=9);
    }
    Polynomial::from_ints(&coeffs)
}

/// Two random polynomials of degree at most `max_deg`; one time in three they
/// share a factor, so the vanishing criterion is exercised both ways.
fn random_pair(rng: &mut ChaCha8Rng, max_deg: usize) -> (Polynomial, Polynomial) {
    if rng.gen_ratio(1, 3) {
        let c = random_poly(rng, 1, 2);
        let rest = max_deg - c.degree().expect("nonzero");
        (
            random_poly(rng, 0, rest) * &c,
            random_poly(rng, 0, rest) * &c,
        )
    } else {
        (random_poly(rng, 0, max_deg), random_poly(rng, 0, max_deg))
    }
}

/// Two coprime polynomials of degree between 1 and `max_deg`.
pub fn random_coprime_pair(rng: &mut ChaCha8Rng, max_deg: usize) -> (Polynomial, Polynomial) {
    loop {
        let a = random_poly(rng, 1, max_deg);
        let b = random_poly(rng, 1, max_deg);
        if a.gcd(&b).expect("nonzero").is_constant() {
            return (a, b);
        }
    }
}

/// Runs the named identities (all of them when `ids` is empty) and returns
/// one merged report per identity, in the order requested.
pub fn run(cfg: &SweepConfig, ids: &[&'static IdentityInfo]) -> Result<Vec<VerificationReport>> {
    let families = cfg.selected_families()?;
    let ids: Vec<&'static IdentityInfo> = if ids.is_empty() {
        IDENTITIES.iter().collect()
    } else {
        ids.to_vec()
    };
    let plans: Vec<Plan> = ids.iter().map(|info| plan(info, cfg, &families)).collect();

    let jobs: Vec<(usize, &Task)> = plans
        .iter()
        .enumerate()
        .flat_map(|(k, p)| p.tasks.iter().map(move |t| (k, t)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| GfpError::InvalidArgument(format!("thread pool: {e}")))?;
    let results: Vec<(usize, Result<VerificationReport>)> =
        pool.install(|| jobs.par_iter().map(|(k, t)| (*k, t())).collect());

    let mut reports: Vec<VerificationReport> = plans
        .iter()
        .map(|p| {
            let mut r = VerificationReport::new(p.info.id, p.grid.clone());
            for n in &p.notes {
                r.note(n.clone());
            }
            r
        })
        .collect();
    for (k, result) in results {
        match result {
            Ok(sub) => reports[k].merge(sub),
            Err(e) => reports[k].fail(
                "precondition",
                Value::Text("check runs".into()),
                Value::Text(e.to_string()),
            ),
        }
    }
    Ok(reports)
}

/// Convenience for callers holding identity names.
pub fn run_named(cfg: &SweepConfig, names: &[String]) -> Result<Vec<VerificationReport>> {
    let ids = names
        .iter()
        .map(|n| identity(n))
        .collect::<Result<Vec<_>>>()?;
    run(cfg, &ids)
}
