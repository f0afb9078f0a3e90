//! Exact rational scalars and binomial coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Builds a canonical rational `num/den`.
pub fn rat(num: i64, den: i64) -> Result<BigRational> {
    if den == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}

/// Integer-valued rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n/2`, used for the half-integral spectral shifts `(q-1)/2`.
pub fn half(n: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(2))
}

/// Exact `"num/den"` string; the denominator is always written.
pub fn fmt_exact(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `"num"` when the denominator is one, `"num/den"` otherwise.
pub fn fmt_compact(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"a"` or `"a/b"` into a canonical rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Row `m` of Pascal's triangle, `[binom(m,0), ..., binom(m,m)]`.
pub fn binomial_row(m: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..m {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row
}

/// `binom(a, b)`, zero when `b < 0` or `a < b`; requires `a >= 0` otherwise.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < b || a < 0 {
        return BigInt::zero();
    }
    binomial_row(a as usize).swap_remove(b as usize)
}
