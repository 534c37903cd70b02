//! Rational helpers and the `"p/q"` string convention used by every file format.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Small exact rational used for weights and inner products.
pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

/// Parses `"p/q"` or `"p"`. Decimal points and exponents are rejected.
pub fn parse_q(s: &str) -> Result<Q> {
    let big = parse_big(s)?;
    to_small(&big).ok_or_else(|| Error::InvalidInput(format!("rational '{s}' out of range")))
}

pub fn parse_big(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidInput(format!("'{s}' is not a decimal-free rational p/q"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let valid = |t: &str| {
        let digits = t.strip_prefix('-').unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) || den.starts_with('-') {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::InvalidInput(format!("'{s}' has zero denominator")));
    }
    Ok(BigRational::new(n, d))
}

/// Canonical rendering: `"p"` for integers, `"p/q"` otherwise, always reduced.
pub fn fmt_big(x: &BigRational) -> String {
    x.to_string()
}

pub fn to_big(x: &Q) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

pub fn to_small(x: &BigRational) -> Option<Q> {
    let n: i64 = x.numer().try_into().ok()?;
    let d: i64 = x.denom().try_into().ok()?;
    Some(Q::new(n, d))
}

pub fn is_integral(x: &Q) -> bool {
    x.is_integer()
}

/// Exact `k`-th root of a positive rational, when one exists.
pub fn exact_root(x: &BigRational, k: u32) -> Option<BigRational> {
    if k == 1 {
        return Some(x.clone());
    }
    if !x.is_positive() {
        return None;
    }
    let n = x.numer().nth_root(k);
    let d = x.denom().nth_root(k);
    let cand = BigRational::new(n, d);
    if num_traits::pow(cand.clone(), k as usize) == *x {
        Some(cand)
    } else {
        None
    }
}

/// `x^e` for an integer exponent (x must be nonzero when e < 0).
pub fn pow_int(x: &BigRational, e: i64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    let p = num_traits::pow(x.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

pub fn fmt_q_list(v: &[Q]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_q("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_q("-4").unwrap(), qi(-4));
        assert_eq!(parse_q(" 7 / 3 ").unwrap(), q(7, 3));
    }

    #[test]
    fn rejects_decimals_and_zero_denominators() {
        assert!(parse_q("0.5").is_err());
        assert!(parse_q("1e3").is_err());
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("1/-2").is_err());
        assert!(parse_q("").is_err());
    }

    #[test]
    fn canonical_rendering_round_trips() {
        for s in ["0", "5", "-3/7", "22/9"] {
            assert_eq!(fmt_big(&parse_big(s).unwrap()), s);
        }
    }

    #[test]
    fn exact_roots() {
        let x = parse_big("9/4").unwrap();
        assert_eq!(exact_root(&x, 2).unwrap(), parse_big("3/2").unwrap());
        assert!(exact_root(&parse_big("3").unwrap(), 2).is_none());
        assert_eq!(pow_int(&parse_big("2/3").unwrap(), -2), parse_big("9/4").unwrap());
    }
}
