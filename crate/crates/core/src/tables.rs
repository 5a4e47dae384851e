//! Tabulated closed forms per built-in family, each cell recomputed from the
//! Sylvester determinant (or formal derivative) before it is reported.
//!
//! | table | contents                                   |
//! |-------|--------------------------------------------|
//! | 2     | `Res(F_m, F_n)`, Fibonacci-type families   |
//! | 3     | `Res(L_m, L_n)`, Lucas-type families       |
//! | 4     | `Res(L_n, F_m)`, conjugate pairs           |
//! | 5     | `Dis(F_n)` and `Dis(L_n)`, linear `d`, constant `g` |
//! | 6     | `F_n'` and `L_n'`, constant `g`            |

use rayon::prelude::*;
use serde::Serialize;

use crate::closed;
use crate::error::{GfpError, Result};
use crate::family::{
    builtin_families, builtin_pairs, ConjugatePair, FamilyConstants, GfpFamily, Kind,
};
use crate::identities::{deriv_f_closed, deriv_l_closed, Value};
use crate::poly::{rat, Rational};
use crate::sylvester::{discriminant, resultant};

pub const TABLE_NUMBERS: [u8; 5] = [2, 3, 4, 5, 6];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    /// Indices in the order of the table's heading, e.g. `[m, n]`.
    pub index: Vec<u64>,
    pub value: Value,
    pub oracle: Value,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub family: String,
    pub formula: String,
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table {
    pub number: u8,
    pub title: String,
    /// Names of the indices in each cell.
    pub index_names: Vec<String>,
    pub rows: Vec<Row>,
}

impl Table {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.cells.iter().all(|c| c.matches))
    }
}

fn cell(index: Vec<u64>, value: Value, oracle: Value) -> Cell {
    let matches = value == oracle;
    Cell {
        index,
        value,
        oracle,
        matches,
    }
}

fn paren(r: &Rational) -> String {
    if r < &rat(0) || !r.is_integer() {
        format!("({r})")
    } else {
        r.to_string()
    }
}

fn alpha_prefix(alpha: i64, exponent: &str) -> String {
    if alpha == 1 {
        String::new()
    } else {
        format!("{alpha}^({exponent}) * ")
    }
}

fn res_ff_formula(c: &FamilyConstants) -> String {
    format!(
        "{}^((m-1)(n-1)/2) if gcd(m, n) = 1, else 0",
        paren(&c.base())
    )
}

fn res_ll_formula(c: &FamilyConstants, alpha: i64) -> String {
    format!(
        "{}2^({}*gcd(m, n)) * {}^(mn/2) if E2(m) != E2(n), else 0",
        alpha_prefix(alpha, &format!("-{}(m+n)", c.eta)),
        c.eta,
        paren(&c.base())
    )
}

fn res_lf_formula(c: &FamilyConstants, alpha: i64) -> String {
    format!(
        "{}2^({}*gcd(m, n) - {}) * {}^(n(m-1)/2) if E2(n) >= E2(m), else 0",
        alpha_prefix(alpha, &format!("{}(1-m)", c.eta)),
        c.eta,
        c.eta,
        paren(&c.base())
    )
}

fn disc_f_formula(c: &FamilyConstants) -> String {
    format!(
        "{}^((n-2)(n-1)/2) * {}^(n-1) * n^(n-3) * {}^((n-1)(n-3))",
        paren(&-c.rho.clone()),
        paren(&(rat(2) * &c.beta)),
        paren(&c.beta)
    )
}

fn disc_l_formula(c: &FamilyConstants, alpha: i64) -> String {
    format!(
        "{}^(n(n-1)/2) * 2^(n-1) * ({}n)^n * {}{}^(n(n-2))",
        paren(&-c.rho.clone()),
        paren(&c.beta),
        alpha_prefix(alpha, "2-2n"),
        paren(&c.beta)
    )
}

fn square_rows(
    families: Vec<GfpFamily>,
    max_n: u64,
    formula: impl Fn(&GfpFamily) -> String + Sync,
    compute: impl Fn(&GfpFamily, u64, u64) -> Result<(Rational, Rational)> + Sync,
) -> Result<Vec<Row>> {
    families
        .par_iter()
        .map(|f| {
            let mut cells = Vec::new();
            for i in 1..=max_n {
                for j in 1..=max_n {
                    let (v, o) = compute(f, i, j)?;
                    cells.push(cell(vec![i, j], v.into(), o.into()));
                }
            }
            Ok(Row {
                family: f.name().to_string(),
                formula: formula(f),
                cells,
            })
        })
        .collect()
}

fn derivative_row_f(p: &ConjugatePair, max_n: u64) -> Result<Row> {
    let f = p.fibonacci();
    let cells = (1..=max_n)
        .map(|n| {
            let v = deriv_f_closed(p, n)?;
            Ok(cell(
                vec![n],
                v.into(),
                f.generate(n as usize).derivative().into(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let alpha = if p.alpha() == 1 {
        String::new()
    } else {
        format!("*{}", p.alpha())
    };
    Ok(Row {
        family: f.name().to_string(),
        formula: format!(
            "F_n' = ({}) (n{alpha} L_n - ({}) F_n) / ({})",
            f.d().derivative(),
            f.d(),
            f.discriminant_poly()
        ),
        cells,
    })
}

fn derivative_row_l(p: &ConjugatePair, max_n: u64) -> Result<Row> {
    let l = p.lucas();
    let cells = (1..=max_n)
        .map(|n| {
            let v = deriv_l_closed(p, n)?;
            Ok(cell(
                vec![n],
                v.into(),
                l.generate(n as usize).derivative().into(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let scale = l.d().derivative().scale(&(rat(1) / rat(p.alpha())));
    Ok(Row {
        family: l.name().to_string(),
        formula: format!("L_n' = n ({scale}) F_n"),
        cells,
    })
}

/// Builds one table with indices up to `max_n`, verifying every cell.
pub fn build_table(number: u8, max_n: u64) -> Result<Table> {
    if max_n == 0 {
        return Err(GfpError::InvalidArgument("max_n must be >= 1".into()));
    }
    let of_kind = |k: Kind| -> Vec<GfpFamily> {
        builtin_families()
            .into_iter()
            .filter(|f| f.kind() == k)
            .collect()
    };
    let ij = |a: &str, b: &str| vec![a.to_string(), b.to_string()];
    let table = match number {
        2 => Table {
            number,
            title: "Res(F_m, F_n)".into(),
            index_names: ij("m", "n"),
            rows: square_rows(
                of_kind(Kind::FibonacciType),
                max_n,
                |f| res_ff_formula(&f.constants()),
                |f, m, n| {
                    let v = closed::res_ff_closed(f, m, n)?.value;
                    let o = resultant(&f.generate(m as usize), &f.generate(n as usize))?;
                    Ok((v, o))
                },
            )?,
        },
        3 => Table {
            number,
            title: "Res(L_m, L_n)".into(),
            index_names: ij("m", "n"),
            rows: square_rows(
                of_kind(Kind::LucasType),
                max_n,
                |f| res_ll_formula(&f.constants(), f.alpha()),
                |f, m, n| {
                    let v = closed::res_ll_closed(f, m, n)?.value;
                    let o = resultant(&f.generate(m as usize), &f.generate(n as usize))?;
                    Ok((v, o))
                },
            )?,
        },
        4 => {
            let pairs = builtin_pairs();
            let rows = pairs
                .par_iter()
                .map(|p| {
                    let (l, f) = (p.lucas(), p.fibonacci());
                    let mut cells = Vec::new();
                    for n in 1..=max_n {
                        for m in 1..=max_n {
                            let v = closed::res_lf_closed(l, f, n, m)?.value;
                            let o = resultant(&l.generate(n as usize), &f.generate(m as usize))?;
                            cells.push(cell(vec![n, m], v.into(), o.into()));
                        }
                    }
                    Ok(Row {
                        family: format!("{} / {}", l.name(), f.name()),
                        formula: res_lf_formula(&l.constants(), l.alpha()),
                        cells,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Table {
                number,
                title: "Res(L_n, F_m)".into(),
                index_names: ij("n", "m"),
                rows,
            }
        }
        5 => {
            let fams: Vec<GfpFamily> = builtin_families()
                .into_iter()
                .filter(|f| {
                    let c = f.constants();
                    c.eta == 1 && c.omega == 0
                })
                .collect();
            let rows = fams
                .par_iter()
                .map(|f| {
                    let lo = if f.is_fibonacci() { 2 } else { 1 };
                    let mut cells = Vec::new();
                    for n in lo..=max_n.max(lo) {
                        let v = closed::disc_closed(f, n)?;
                        let o = discriminant(&f.generate(n as usize))?;
                        cells.push(cell(vec![n], v.into(), o.into()));
                    }
                    let c = f.constants();
                    let formula = if f.is_fibonacci() {
                        disc_f_formula(&c)
                    } else {
                        disc_l_formula(&c, f.alpha())
                    };
                    Ok(Row {
                        family: f.name().to_string(),
                        formula,
                        cells,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Table {
                number,
                title: "Dis(F_n), Dis(L_n)".into(),
                index_names: vec!["n".into()],
                rows,
            }
        }
        6 => {
            let pairs: Vec<_> = builtin_pairs()
                .into_iter()
                .filter(|p| p.fibonacci().has_constant_g())
                .collect();
            let rows = pairs
                .par_iter()
                .map(|p| Ok([derivative_row_f(p, max_n)?, derivative_row_l(p, max_n)?]))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            Table {
                number,
                title: "F_n', L_n'".into(),
                index_names: vec!["n".into()],
                rows,
            }
        }
        other => {
            return Err(GfpError::InvalidArgument(format!(
                "no table {other}; valid tables are 2, 3, 4, 5, 6"
            )))
        }
    };
    Ok(table)
}
