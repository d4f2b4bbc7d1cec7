use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type BigRational = num_rational::BigRational;

pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let Some(x) = q.to_f64() {
        if x.is_finite() {
            return x;
        }
    }
    // Huge operands: go through logarithms to keep the ratio finite.
    if q.is_zero() {
        return 0.0;
    }
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    sign * ln_rational(&q.abs()).exp()
}

/// Natural logarithm of a positive big integer, exact to double precision
/// even when the integer overflows `f64`.
pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational; `-inf` for zero.
pub fn ln_rational(q: &BigRational) -> f64 {
    if q.is_zero() {
        return f64::NEG_INFINITY;
    }
    assert!(q.is_positive(), "logarithm of a negative rational");
    let numer = q.numer().magnitude();
    let denom = q.denom().magnitude();
    ln_biguint(numer) - ln_biguint(denom)
}

/// Parses `"3/2"`, `"-7"` or `"0"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("rational numerator {num:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("rational denominator {den:?}")))?;
    if den.sign() == Sign::NoSign {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/2").unwrap(), q(3, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), q(-3, 2));
        assert_eq!(parse_rational(" 5 ").unwrap(), q(5, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/2").is_err());
    }

    #[test]
    fn reduced_form_invariant() {
        let x = q(10, -4);
        assert_eq!(x.numer(), &BigInt::from(-5));
        assert_eq!(x.denom(), &BigInt::from(2));
    }

    #[test]
    fn logs_of_huge_values() {
        let big = BigUint::from(3u32).pow(2000);
        let expect = 2000.0 * 3f64.ln();
        assert!((ln_biguint(&big) - expect).abs() < 1e-9 * expect);
        let ratio = BigRational::new(BigInt::from(big.clone()) * 2, BigInt::from(big));
        assert!((ln_rational(&ratio) - 2f64.ln()).abs() < 1e-12);
        assert!((rational_to_f64(&ratio) - 2.0).abs() < 1e-12);
    }
}
