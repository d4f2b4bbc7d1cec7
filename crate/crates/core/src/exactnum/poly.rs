//! Dense univariate polynomials over ℚ, lowest degree first, kept trimmed
//! (no trailing zeros; the zero polynomial is empty).

use num_traits::{One, Zero};

use super::BigRational;

pub(crate) type Poly = Vec<BigRational>;

pub(crate) fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let out = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(out)
}

pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder of `a / b`; `b` must be nonzero.
pub(crate) fn divrem(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap().clone();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[shift + j] -= &c * bj;
        }
        quot[shift] = c;
        // The leading term cancels exactly.
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Extended Euclid: returns `(g, s)` with `s·a ≡ g (mod b)`, `g = gcd(a, b)`.
pub(crate) fn ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1): (Poly, Poly) = (vec![BigRational::one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        trim(
            c.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        )
    }

    #[test]
    fn division_identity() {
        let a = p(&[-1, 0, 0, 0, 0, 1]);
        let b = p(&[1, 1, 1]);
        let (q, r) = divrem(&a, &b);
        let back = trim({
            let mut qb = mul(&q, &b);
            qb.resize(qb.len().max(r.len()), BigRational::zero());
            qb.iter()
                .zip(r.iter().chain(std::iter::repeat(&BigRational::zero())))
                .map(|(x, y)| x + y)
                .collect()
        });
        assert_eq!(back, a);
        assert!(r.len() < b.len());
    }

    #[test]
    fn gcd_of_coprime_is_constant() {
        // x + 1 against x^2 + 1
        let (g, s) = ext_gcd(&p(&[1, 1]), &p(&[1, 0, 1]));
        assert_eq!(g.len(), 1);
        let (_, r) = divrem(&mul(&s, &p(&[1, 1])), &p(&[1, 0, 1]));
        assert_eq!(r, g);
    }
}
