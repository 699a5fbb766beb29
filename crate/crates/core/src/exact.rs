//! Exact rational arithmetic: Pfaffians, determinants and a few helpers.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The exact value of a finite float.
pub fn from_f64(x: f64) -> Rational {
    Rational::from_float(x).expect("finite float")
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact square root, if `x` is the square of a rational.
pub fn sqrt_exact(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        Some(Rational::new(rn, rd))
    } else {
        None
    }
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

fn check_skew(a: &DMatrix<Rational>) -> Result<()> {
    if !a.is_square() {
        return Err(Error::ContractViolation(format!(
            "Pfaffian needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let n = a.nrows();
    for i in 0..n {
        for j in i..n {
            if a[(i, j)] != -a[(j, i)].clone() {
                return Err(Error::ContractViolation(format!(
                    "matrix is not skew-symmetric at ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

/// Pfaffian by recursive expansion along the first row; `pf` of the empty
/// matrix is 1.
pub fn pfaffian(a: &DMatrix<Rational>) -> Result<Rational> {
    check_skew(a)?;
    if a.nrows() % 2 == 1 {
        return Err(Error::ContractViolation(format!(
            "Pfaffian needs even dimension, got {}",
            a.nrows()
        )));
    }
    let indices: Vec<usize> = (0..a.nrows()).collect();
    Ok(pfaffian_rec(a, &indices))
}

fn pfaffian_rec(a: &DMatrix<Rational>, idx: &[usize]) -> Rational {
    if idx.is_empty() {
        return Rational::one();
    }
    let first = idx[0];
    let mut total = Rational::zero();
    let mut rest: Vec<usize> = Vec::with_capacity(idx.len() - 2);
    for (pos, &j) in idx.iter().enumerate().skip(1) {
        let entry = &a[(first, j)];
        if entry.is_zero() {
            continue;
        }
        rest.clear();
        rest.extend(idx[1..].iter().copied().filter(|&k| k != j));
        let minor = pfaffian_rec(a, &rest);
        // positions are 0-based: the entry at position `pos` carries (-1)^(pos+1)
        if pos % 2 == 1 {
            total += entry * minor;
        } else {
            total -= entry * minor;
        }
    }
    total
}

/// Determinant by fraction-free (Bareiss) elimination after clearing
/// denominators.
pub fn determinant(a: &DMatrix<Rational>) -> Result<Rational> {
    if !a.is_square() {
        return Err(Error::ContractViolation("determinant of a non-square matrix".into()));
    }
    let n = a.nrows();
    if n == 0 {
        return Ok(Rational::one());
    }
    // Scale each row to integers; det scales by the product of the factors.
    let mut scale = Rational::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let l = lcm_of_denominators(a.row(i).iter());
        scale *= Rational::from_integer(l.clone());
        m.push(
            a.row(i)
                .iter()
                .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                .collect(),
        );
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(Rational::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = sign * m[n - 1][n - 1].clone();
    Ok(Rational::from_integer(det) / scale)
}
