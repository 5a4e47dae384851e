//! The `gfp` command line. [`run`] takes its arguments and output streams
//! explicitly so it can be driven from tests.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 closed form disagreeing with the oracle.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::closed;
use crate::error::{GfpError, Result};
use crate::family::{ConjugatePair, GfpFamily};
use crate::identities::{deriv_f_closed, deriv_l_closed, VerificationReport};
use crate::poly::{parse_rational, Polynomial, Rational};
use crate::sylvester::{discriminant, resultant};
use crate::tables::{build_table, Table};
use crate::verify::{self, SweepConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Human,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Sylvester,
    Closed,
    #[default]
    Both,
}

#[derive(Debug, Parser)]
#[command(
    name = "gfp",
    version,
    about = "Generalized Fibonacci polynomials: generation, resultants, discriminants, derivatives"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,

    /// Worker threads for verify and tables.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the n-th member of a family.
    Gen { family: String, n: usize },
    /// Resultant of two members.
    Res {
        family1: String,
        m: u64,
        family2: String,
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Discriminant of a member.
    Disc {
        family: String,
        n: u64,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Derivative of a member, optionally evaluated at a rational point.
    Deriv {
        family: String,
        n: u64,
        #[arg(long, value_parser = parse_point)]
        at: Option<Rational>,
    },
    /// Sweep the identities over a grid and report failures.
    Verify {
        #[arg(long, default_value_t = 10)]
        max_n: u64,
        /// Comma-separated family names or inline specs.
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<String>>,
        /// Comma-separated identity ids.
        #[arg(long, value_delimiter = ',')]
        identities: Option<Vec<String>>,
        /// Number of random cases for the resultant laws.
        #[arg(long, default_value_t = 200)]
        random_cases: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Tabulate closed forms per built-in family, checked cell by cell.
    Tables {
        #[arg(value_parser = clap::value_parser!(u8).range(2..=6))]
        table: u8,
        #[arg(long, default_value_t = 6)]
        max_n: u64,
    },
}

fn parse_point(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

struct Ctx<'a> {
    format: OutputFormat,
    jobs: usize,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

enum Failure {
    Usage(GfpError),
    Io(std::io::Error),
}

impl From<GfpError> for Failure {
    fn from(e: GfpError) -> Self {
        Failure::Usage(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        jobs: cli.jobs,
        out,
        err,
    };
    let result = match cli.command {
        Command::Gen { family, n } => cmd_gen(&mut ctx, &family, n),
        Command::Res {
            family1,
            m,
            family2,
            n,
            method,
        } => cmd_res(&mut ctx, &family1, m, &family2, n, method),
        Command::Disc { family, n, method } => cmd_disc(&mut ctx, &family, n, method),
        Command::Deriv { family, n, at } => cmd_deriv(&mut ctx, &family, n, at),
        Command::Verify {
            max_n,
            families,
            identities,
            random_cases,
            seed,
        } => {
            let mut cfg = SweepConfig {
                max_n,
                jobs: ctx.jobs,
                families,
                random_cases,
                ..SweepConfig::default()
            };
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            cmd_verify(&mut ctx, cfg, identities.unwrap_or_default())
        }
        Command::Tables { table, max_n } => cmd_tables(&mut ctx, table, max_n),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            let _ = writeln!(ctx.err, "error: {e}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(ctx.err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
}

fn family(name: &str) -> Result<GfpFamily> {
    GfpFamily::from_spec(name)
}

fn usize_index(n: u64) -> Result<usize> {
    usize::try_from(n).map_err(|_| GfpError::InvalidArgument(format!("index {n} is too large")))
}

fn cmd_gen(ctx: &mut Ctx, name: &str, n: usize) -> CmdResult {
    let fam = family(name)?;
    let p = fam.generate(n);
    match ctx.format {
        OutputFormat::Human => writeln!(ctx.out, "{p}")?,
        OutputFormat::Csv => {
            writeln!(ctx.out, "family,n,polynomial")?;
            writeln!(
                ctx.out,
                "{}",
                csv_line(&[fam.name().into(), n.to_string(), p.to_string()])
            )?;
        }
        OutputFormat::Json => {
            let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            let v = json!({"family": fam.name(), "n": n, "polynomial": p.to_string(), "coefficients": coeffs});
            writeln!(ctx.out, "{v}")?;
        }
    }
    Ok(EXIT_OK)
}

/// Shared tail of `res` and `disc`: print one or both values and a verdict.
fn emit_pair(
    ctx: &mut Ctx,
    header: &[(&str, String)],
    method: Method,
    oracle: Option<Rational>,
    closed: Option<Rational>,
) -> CmdResult {
    let verdict = match (&oracle, &closed) {
        (Some(a), Some(b)) => Some(if a == b { "MATCH" } else { "MISMATCH" }),
        _ => None,
    };
    let show = |v: &Option<Rational>| v.as_ref().map(|r| r.to_string()).unwrap_or_default();
    match ctx.format {
        OutputFormat::Human => {
            let mut parts = Vec::new();
            if method != Method::Closed {
                parts.push(show(&oracle));
            }
            if method != Method::Sylvester {
                parts.push(show(&closed));
            }
            if let Some(v) = verdict {
                parts.push(v.to_string());
            }
            writeln!(ctx.out, "{}", parts.join(" "))?;
        }
        OutputFormat::Csv => {
            let mut names: Vec<String> = header.iter().map(|(k, _)| k.to_string()).collect();
            names.extend(["method", "sylvester", "closed", "verdict"].map(String::from));
            let mut values: Vec<String> = header.iter().map(|(_, v)| v.clone()).collect();
            values.push(format!("{method:?}").to_lowercase());
            values.push(show(&oracle));
            values.push(show(&closed));
            values.push(verdict.unwrap_or("").into());
            writeln!(ctx.out, "{}", names.join(","))?;
            writeln!(ctx.out, "{}", csv_line(&values))?;
        }
        OutputFormat::Json => {
            let mut obj = serde_json::Map::new();
            for (k, v) in header {
                obj.insert(k.to_string(), json!(v));
            }
            obj.insert("method".into(), json!(format!("{method:?}").to_lowercase()));
            obj.insert(
                "sylvester".into(),
                json!(oracle.as_ref().map(|r| r.to_string())),
            );
            obj.insert(
                "closed".into(),
                json!(closed.as_ref().map(|r| r.to_string())),
            );
            obj.insert("verdict".into(), json!(verdict));
            writeln!(ctx.out, "{}", serde_json::Value::Object(obj))?;
        }
    }
    if verdict == Some("MISMATCH") {
        writeln!(ctx.err, "closed form disagrees with the Sylvester oracle")?;
        return Ok(EXIT_MISMATCH);
    }
    Ok(EXIT_OK)
}

fn cmd_res(ctx: &mut Ctx, name1: &str, m: u64, name2: &str, n: u64, method: Method) -> CmdResult {
    let (f1, f2) = (family(name1)?, family(name2)?);
    let closed = match method {
        Method::Sylvester => None,
        _ => Some(closed::closed_resultant(&f1, m, &f2, n)?.value),
    };
    let oracle = match method {
        Method::Closed => None,
        _ => Some(resultant(
            &f1.generate(usize_index(m)?),
            &f2.generate(usize_index(n)?),
        )?),
    };
    let header = [
        ("family1", f1.name().to_string()),
        ("m", m.to_string()),
        ("family2", f2.name().to_string()),
        ("n", n.to_string()),
    ];
    emit_pair(ctx, &header, method, oracle, closed)
}

fn cmd_disc(ctx: &mut Ctx, name: &str, n: u64, method: Method) -> CmdResult {
    let fam = family(name)?;
    let closed = match method {
        Method::Sylvester => None,
        _ => Some(closed::disc_closed(&fam, n)?),
    };
    let oracle = match method {
        Method::Closed => None,
        _ => Some(discriminant(&fam.generate(usize_index(n)?))?),
    };
    let header = [("family", fam.name().to_string()), ("n", n.to_string())];
    emit_pair(ctx, &header, method, oracle, closed)
}

/// A conjugate pair for `fam`, building a Lucas-type partner for custom
/// Fibonacci-type families when one exists.
fn pair_for(fam: &GfpFamily) -> Result<ConjugatePair> {
    ConjugatePair::of(fam).or_else(|e| {
        if !fam.is_fibonacci() {
            return Err(e);
        }
        let lucas = fam.lucas_conjugate(2).or_else(|_| fam.lucas_conjugate(1))?;
        ConjugatePair::new(fam.clone(), lucas)
    })
}

fn closed_derivative(fam: &GfpFamily, n: u64) -> Result<Polynomial> {
    let pair = pair_for(fam)?;
    if fam.is_fibonacci() {
        deriv_f_closed(&pair, n)
    } else {
        deriv_l_closed(&pair, n)
    }
}

fn cmd_deriv(ctx: &mut Ctx, name: &str, n: u64, at: Option<Rational>) -> CmdResult {
    let fam = family(name)?;
    let formal = fam.generate(usize_index(n)?).derivative();
    let (poly, method) = if n == 0 {
        (formal.clone(), "formal")
    } else {
        match closed_derivative(&fam, n) {
            Ok(p) => (p, "closed"),
            Err(
                e @ (GfpError::Hypothesis(_)
                | GfpError::NoConjugate(_)
                | GfpError::LucasCondition(_)),
            ) => {
                writeln!(
                    ctx.err,
                    "notice: closed form not applicable ({e}); using the formal derivative"
                )?;
                (formal.clone(), "formal")
            }
            Err(e) => return Err(e.into()),
        }
    };
    if poly != formal {
        writeln!(
            ctx.err,
            "closed derivative {poly} disagrees with formal derivative {formal}"
        )?;
        return Ok(EXIT_MISMATCH);
    }
    let value = at.as_ref().map(|x| poly.evaluate(x));
    match ctx.format {
        OutputFormat::Human => match &value {
            Some(v) => writeln!(ctx.out, "{v}")?,
            None => writeln!(ctx.out, "{poly}")?,
        },
        OutputFormat::Csv => {
            writeln!(ctx.out, "family,n,method,derivative,at,value")?;
            writeln!(
                ctx.out,
                "{}",
                csv_line(&[
                    fam.name().into(),
                    n.to_string(),
                    method.into(),
                    poly.to_string(),
                    at.as_ref().map(|r| r.to_string()).unwrap_or_default(),
                    value.as_ref().map(|r| r.to_string()).unwrap_or_default(),
                ])
            )?;
        }
        OutputFormat::Json => {
            let v = json!({
                "family": fam.name(),
                "n": n,
                "method": method,
                "derivative": poly.to_string(),
                "at": at.as_ref().map(|r| r.to_string()),
                "value": value.as_ref().map(|r| r.to_string()),
            });
            writeln!(ctx.out, "{v}")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(ctx: &mut Ctx, cfg: SweepConfig, ids: Vec<String>) -> CmdResult {
    if cfg.max_n < 2 {
        return Err(GfpError::InvalidArgument("--max-n must be at least 2".into()).into());
    }
    let reports = verify::run_named(&cfg, &ids)?;
    write_reports(ctx, &reports)?;
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed == 0 {
        let sink: &mut dyn Write = match ctx.format {
            OutputFormat::Human => &mut *ctx.out,
            _ => &mut *ctx.err,
        };
        writeln!(sink, "all identities pass")?;
        Ok(EXIT_OK)
    } else {
        writeln!(ctx.err, "{failed} of {} identities failed", reports.len())?;
        Ok(EXIT_VERIFY_FAILED)
    }
}

fn write_reports(ctx: &mut Ctx, reports: &[VerificationReport]) -> std::io::Result<()> {
    match ctx.format {
        OutputFormat::Human => {
            for r in reports {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                writeln!(
                    ctx.out,
                    "{tag} {} ({} checks; {})",
                    r.identity, r.checks, r.grid
                )?;
                for note in &r.notes {
                    writeln!(ctx.out, "  note: {note}")?;
                }
                for f in &r.failures {
                    writeln!(
                        ctx.out,
                        "  counterexample {}: expected {}, got {}",
                        f.params, f.expected, f.got
                    )?;
                }
            }
        }
        OutputFormat::Csv => {
            writeln!(ctx.out, "identity,passed,checks,failures,grid")?;
            for r in reports {
                writeln!(
                    ctx.out,
                    "{}",
                    csv_line(&[
                        r.identity.clone(),
                        r.passed.to_string(),
                        r.checks.to_string(),
                        r.failures.len().to_string(),
                        r.grid.clone(),
                    ])
                )?;
            }
        }
        OutputFormat::Json => {
            for r in reports {
                writeln!(ctx.out, "{}", r.to_json())?;
            }
        }
    }
    Ok(())
}

fn cmd_tables(ctx: &mut Ctx, number: u8, max_n: u64) -> CmdResult {
    if max_n < 2 {
        return Err(GfpError::InvalidArgument("--max-n must be at least 2".into()).into());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(ctx.jobs)
        .build()
        .map_err(|e| GfpError::InvalidArgument(format!("thread pool: {e}")))?;
    let table = pool.install(|| build_table(number, max_n))?;
    write_table(ctx, &table)?;
    if !table.all_match() {
        writeln!(
            ctx.err,
            "table {number}: a closed-form cell disagrees with the oracle"
        )?;
        return Ok(EXIT_MISMATCH);
    }
    Ok(EXIT_OK)
}

fn write_table(ctx: &mut Ctx, table: &Table) -> std::io::Result<()> {
    match ctx.format {
        OutputFormat::Json => writeln!(
            ctx.out,
            "{}",
            serde_json::to_string(table).expect("tables serialize")
        ),
        OutputFormat::Csv => {
            let mut head = vec!["table".to_string(), "family".to_string()];
            head.extend(table.index_names.iter().cloned());
            head.extend([
                "value".to_string(),
                "oracle".to_string(),
                "match".to_string(),
            ]);
            writeln!(ctx.out, "{}", head.join(","))?;
            for row in &table.rows {
                for c in &row.cells {
                    let mut line = vec![table.number.to_string(), row.family.clone()];
                    line.extend(c.index.iter().map(|i| i.to_string()));
                    line.extend([
                        c.value.to_string(),
                        c.oracle.to_string(),
                        c.matches.to_string(),
                    ]);
                    writeln!(ctx.out, "{}", csv_line(&line))?;
                }
            }
            Ok(())
        }
        OutputFormat::Human => {
            writeln!(ctx.out, "Table {}: {}", table.number, table.title)?;
            for row in &table.rows {
                writeln!(ctx.out)?;
                writeln!(ctx.out, "{}: {}", row.family, row.formula)?;
                if table.index_names.len() == 2 {
                    write_grid(ctx.out, table, row)?;
                } else {
                    for c in &row.cells {
                        let mark = if c.matches { "" } else { "  MISMATCH" };
                        writeln!(
                            ctx.out,
                            "  {}={}: {}{mark}",
                            table.index_names[0], c.index[0], c.value
                        )?;
                    }
                }
            }
            Ok(())
        }
    }
}

fn write_grid(out: &mut dyn Write, table: &Table, row: &crate::tables::Row) -> std::io::Result<()> {
    let n = row.cells.iter().map(|c| c.index[1]).max().unwrap_or(0);
    let width = row
        .cells
        .iter()
        .map(|c| c.value.to_string().len() + usize::from(!c.matches))
        .max()
        .unwrap_or(1)
        .max(3);
    let (a, b) = (&table.index_names[0], &table.index_names[1]);
    write!(out, "  {a}\\{b}")?;
    for j in 1..=n {
        write!(out, " {j:>width$}")?;
    }
    writeln!(out)?;
    for chunk in row.cells.chunks(n as usize) {
        write!(
            out,
            "  {:>width$}",
            chunk[0].index[0],
            width = a.len() + b.len() + 1
        )?;
        for c in chunk {
            let v = if c.matches {
                c.value.to_string()
            } else {
                format!("{}!", c.value)
            };
            write!(out, " {v:>width$}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("gfp").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn gen_examples() {
        assert_eq!(
            call(&["gen", "fibonacci", "4"]),
            (0, "x^3 + 2*x\n".into(), String::new())
        );
        assert_eq!(call(&["gen", "lucas", "0"]).1, "2\n");
        assert_eq!(call(&["gen", "chebyshev-U", "3"]).1, "4*x^2 - 1\n");
    }

    #[test]
    fn res_examples() {
        assert_eq!(
            call(&[
                "res",
                "fibonacci",
                "3",
                "fibonacci",
                "4",
                "--method",
                "both"
            ])
            .1,
            "1 1 MATCH\n"
        );
        assert_eq!(
            call(&["res", "lucas", "1", "lucas", "2", "--method", "closed"]).1,
            "2\n"
        );
        assert_eq!(
            call(&["res", "lucas", "2", "fibonacci", "4", "--method", "closed"]).1,
            "0\n"
        );
        let (code, _, err) = call(&["res", "fibonacci", "3", "pell", "4", "--method", "closed"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("no closed form"));
        assert_eq!(
            call(&[
                "res",
                "fibonacci",
                "3",
                "pell",
                "4",
                "--method",
                "sylvester"
            ])
            .0,
            0
        );
    }

    #[test]
    fn disc_examples() {
        assert_eq!(call(&["disc", "fibonacci", "3"]).1, "-4 -4 MATCH\n");
        assert_eq!(
            call(&["disc", "chebyshev-T", "3", "--method", "closed"]).1,
            "432\n"
        );
        assert_eq!(
            call(&["disc", "lucas", "2", "--method", "sylvester"]).1,
            "-8\n"
        );
    }

    #[test]
    fn deriv_examples() {
        assert_eq!(call(&["deriv", "lucas", "2"]).1, "2*x\n");
        assert_eq!(call(&["deriv", "fibonacci", "4", "--at", "1"]).1, "5\n");
        assert_eq!(call(&["deriv", "fibonacci", "1"]).1, "0\n");
        let (code, out, err) = call(&["deriv", "fib:x^2 + x + 1:x", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "4*x^3 + 6*x^2 + 6*x + 3\n");
        assert!(err.starts_with("notice:"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["gen", "nope", "3"]).0, EXIT_USAGE);
        assert_eq!(call(&["gen", "fibonacci", "-1"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "--max-n", "1"]).0, EXIT_USAGE);
        assert_eq!(call(&["tables", "7"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn verify_filtered() {
        let (code, out, _) = call(&["verify", "--max-n", "4", "--identities", "thm3.1"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("PASS thm3.1"));
        assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 1);
        assert!(out.ends_with("all identities pass\n"));
    }
}
