//! Brute-force resultants and discriminants: build the Sylvester matrix and
//! take its determinant exactly.
//!
//! These are the reference values every closed formula is checked against,
//! so nothing here knows anything about Fibonacci-type sequences.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{GfpError, Result};
use crate::poly::{rat, Polynomial, Rational};

/// Dense square matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl SquareMatrix {
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(GfpError::InvalidArgument("matrix is not square".into()));
        }
        Ok(SquareMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Rational::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Rational::one();
        }
        SquareMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }
}

/// Row per line, tab-separated exact rationals.
impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.dim {
            let line: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join("\t"))?;
        }
        Ok(())
    }
}

/// `Syl(P, Q)`: `deg Q` shifted rows of P's coefficients followed by `deg P`
/// shifted rows of Q's, highest power first.
#[derive(Clone, Debug)]
pub struct SylvesterMatrix {
    matrix: SquareMatrix,
    deg_p: usize,
    deg_q: usize,
    p: Polynomial,
    q: Polynomial,
}

impl SylvesterMatrix {
    pub fn new(p: &Polynomial, q: &Polynomial) -> Result<Self> {
        let deg_p = p
            .degree()
            .ok_or(GfpError::ZeroPolynomial("sylvester_matrix"))?;
        let deg_q = q
            .degree()
            .ok_or(GfpError::ZeroPolynomial("sylvester_matrix"))?;
        let dim = deg_p + deg_q;
        if dim == 0 {
            return Err(GfpError::BothConstant);
        }
        let mut entries = vec![Rational::zero(); dim * dim];
        let mut place = |first_row: usize, shifts: usize, poly: &Polynomial, deg: usize| {
            for shift in 0..shifts {
                let row = first_row + shift;
                for (k, c) in poly.coeffs().iter().rev().enumerate() {
                    entries[row * dim + shift + k] = c.clone();
                }
                debug_assert!(shift + deg < dim);
            }
        };
        place(0, deg_q, p, deg_p);
        place(deg_q, deg_p, q, deg_q);
        Ok(SylvesterMatrix {
            matrix: SquareMatrix { dim, entries },
            deg_p,
            deg_q,
            p: p.clone(),
            q: q.clone(),
        })
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.deg_p, self.deg_q)
    }

    pub fn sources(&self) -> (&Polynomial, &Polynomial) {
        (&self.p, &self.q)
    }

    pub fn determinant(&self) -> Rational {
        det_fraction_free(&self.matrix)
    }
}

impl fmt::Display for SylvesterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.matrix, f)
    }
}

/// Exact determinant.
///
/// Each row is scaled by the lcm of its denominators so the matrix becomes
/// integral, then single-step Bareiss elimination runs over the integers and
/// the accumulated scale is divided back out at the end. Every Bareiss
/// division must be exact; an inexact one means a bug and panics.
pub fn det_fraction_free(m: &SquareMatrix) -> Rational {
    let n = m.dim;
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            scale *= &l;
            row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
        })
        .collect();

    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Rational::zero(),
            }
        }
        if k + 1 == n {
            break;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let t = &row[j] * pivot - &factor * &pivot_row[j];
                let (q, r) = t.div_rem(&prev);
                assert!(
                    r.is_zero(),
                    "internal error: inexact Bareiss division at step {k} (dimension {n})"
                );
                row[j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    let mut det = a[n - 1][n - 1].clone();
    if negate {
        det = -det;
    }
    Rational::new(det, scale)
}

/// `Res(P, Q)`, the determinant of `Syl(P, Q)`.
///
/// When one argument is a constant `k`, the result is `k^(deg of the other)`;
/// two constants give 1. The zero polynomial is rejected rather than mapped
/// to 0.
pub fn resultant(p: &Polynomial, q: &Polynomial) -> Result<Rational> {
    let dp = p.degree().ok_or(GfpError::ZeroPolynomial("resultant"))?;
    let dq = q.degree().ok_or(GfpError::ZeroPolynomial("resultant"))?;
    match (dp, dq) {
        (0, _) => Ok(num_traits::pow(p.lc(), dq)),
        (_, 0) => Ok(num_traits::pow(q.lc(), dp)),
        _ => Ok(SylvesterMatrix::new(p, q)?.determinant()),
    }
}

/// `Dis(P) = (-1)^(n(n-1)/2) lc(P)^-1 Res(P, P')` for `n = deg P >= 1`.
pub fn discriminant(p: &Polynomial) -> Result<Rational> {
    let n = match p.degree() {
        None => return Err(GfpError::ZeroPolynomial("discriminant")),
        Some(0) => {
            return Err(GfpError::InvalidArgument(
                "discriminant of a constant polynomial".into(),
            ))
        }
        Some(n) => n,
    };
    let r = resultant(p, &p.derivative())? / p.lc();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

/// `Dis(PQ)` computed as `Dis(P) Dis(Q) Res(P, Q)^2`.
///
/// The resultant enters squared. The first-power form `Dis(P) Dis(Q) Res(P, Q)`
/// that is sometimes quoted fails already for `P = x`, `Q = x - 2`, where
/// `Dis(PQ) = 4` but `Res(P, Q) = -2`.
pub fn product_discriminant(p: &Polynomial, q: &Polynomial) -> Result<Rational> {
    let res = resultant(p, q)?;
    Ok(discriminant(p)? * discriminant(q)? * &res * &res)
}

/// Sign `(-1)^(deg f * deg h)` relating `Res(f, h)` and `Res(h, f)`.
pub fn swap_sign(deg_f: usize, deg_h: usize) -> Rational {
    if (deg_f * deg_h) % 2 == 1 {
        -rat(1)
    } else {
        rat(1)
    }
}

/// `Res(f, h) == 0` exactly when `f` and `h` share a factor of positive degree.
pub fn share_root(f: &Polynomial, h: &Polynomial) -> Result<bool> {
    Ok(resultant(f, h)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn rows(m: &SylvesterMatrix) -> Vec<Vec<i64>> {
        let mm = m.matrix();
        (0..mm.dim())
            .map(|r| {
                mm.row(r)
                    .iter()
                    .map(|c| i64::try_from(c.to_integer()).unwrap())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn sylvester_layout() {
        let s = SylvesterMatrix::new(&p("x^2 + 1"), &p("x^3 + 2*x")).unwrap();
        assert_eq!(s.matrix().dim(), 5);
        assert_eq!(rows(&s)[0], vec![1, 0, 1, 0, 0]);

        let s = SylvesterMatrix::new(&p("x"), &p("x^2 + 2")).unwrap();
        assert_eq!(rows(&s), vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 2]]);

        let s = SylvesterMatrix::new(&p("2*x"), &p("4*x^2 - 1")).unwrap();
        assert_eq!(rows(&s), vec![vec![2, 0, 0], vec![0, 2, 0], vec![4, 0, -1]]);
        assert_eq!(s.degrees(), (1, 2));
    }

    #[test]
    fn sylvester_errors() {
        assert_eq!(
            SylvesterMatrix::new(&Polynomial::zero(), &p("x")).unwrap_err(),
            GfpError::ZeroPolynomial("sylvester_matrix")
        );
        assert_eq!(
            SylvesterMatrix::new(&p("3"), &p("-2")).unwrap_err(),
            GfpError::BothConstant
        );
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(det_fraction_free(&SquareMatrix::identity(3)), rat(1));
        let dup = SquareMatrix::from_int_rows(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]]).unwrap();
        assert_eq!(det_fraction_free(&dup), rat(0));
        let syl = SquareMatrix::from_int_rows(&[
            &[1, 0, 1, 0, 0],
            &[0, 1, 0, 1, 0],
            &[0, 0, 1, 0, 1],
            &[1, 0, 2, 0, 0],
            &[0, 1, 0, 2, 0],
        ])
        .unwrap();
        assert_eq!(det_fraction_free(&syl), rat(1));
        assert_eq!(det_fraction_free(&SquareMatrix::identity(0)), rat(1));
    }

    #[test]
    fn determinant_needs_pivoting_and_fractions() {
        let m = SquareMatrix::from_rows(vec![
            vec![rat(0), crate::poly::rat_frac(1, 2)],
            vec![crate::poly::rat_frac(2, 3), rat(5)],
        ])
        .unwrap();
        assert_eq!(det_fraction_free(&m), crate::poly::rat_frac(-1, 3));
    }

    #[test]
    fn resultant_examples() {
        assert_eq!(resultant(&p("x^2 + 1"), &p("x^3 + 2*x")).unwrap(), rat(1));
        assert_eq!(resultant(&p("x"), &p("x^2 + 2")).unwrap(), rat(2));
        assert_eq!(resultant(&p("7"), &p("x^3 + 2*x")).unwrap(), rat(343));
        assert_eq!(resultant(&p("x^3 + 2*x"), &p("7")).unwrap(), rat(343));
        assert_eq!(resultant(&p("7"), &p("-3")).unwrap(), rat(1));
        assert_eq!(
            resultant(&p("x"), &Polynomial::zero()).unwrap_err(),
            GfpError::ZeroPolynomial("resultant")
        );
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p("x^2 + 1")).unwrap(), rat(-4));
        assert_eq!(discriminant(&p("x^2 + 2")).unwrap(), rat(-8));
        assert_eq!(discriminant(&p("x^2")).unwrap(), rat(0));
        assert_eq!(discriminant(&p("3*x - 5")).unwrap(), rat(1));
        assert!(discriminant(&p("4")).is_err());
        assert!(discriminant(&Polynomial::zero()).is_err());
    }

    #[test]
    fn product_discriminant_small_case() {
        let (a, b) = (p("x"), p("x - 2"));
        assert_eq!(discriminant(&(&a * &b)).unwrap(), rat(4));
        assert_eq!(product_discriminant(&a, &b).unwrap(), rat(4));
    }

    #[test]
    fn debug_text_format() {
        let s = SylvesterMatrix::new(&p("1/2*x"), &p("x - 3")).unwrap();
        assert_eq!(s.to_string(), "1/2\t0\n1\t-3\n");
    }
}
