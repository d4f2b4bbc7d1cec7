use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{self, Poly};
use super::rational::{parse_rational, rational_to_f64};
use super::BigRational;
use crate::error::{Error, Result};

/// An element of ℚ(ζ_k) written as `Σ c_j ζ_k^j` over `j < k`.
///
/// The coefficient array always has length `k`. Arithmetic returns the
/// canonical form, the remainder modulo the cyclotomic polynomial Φ_k, whose
/// coefficients vanish at positions `≥ φ(k)`. Numbers built with
/// [`CyclotomicNumber::from_raw`] may be non-canonical until
/// [`canonicalize`](CyclotomicNumber::canonicalize) is called.
///
/// Equality compares values: both sides are lifted to a common conductor and
/// canonicalized.
#[derive(Clone)]
pub struct CyclotomicNumber {
    conductor: u32,
    coeffs: Vec<BigRational>,
    canonical: bool,
}

/// Euler's totient.
pub fn euler_phi(k: u32) -> u32 {
    let mut n = k;
    let mut phi = k;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Φ_k with rational coefficients, lowest degree first. Computed as
/// `(x^k - 1) / Π_{d | k, d < k} Φ_d` and cached per conductor.
pub fn cyclotomic_polynomial(k: u32) -> Arc<Vec<BigRational>> {
    assert!(k >= 1, "conductor must be positive");
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigRational>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(phi) = cache.read().unwrap().get(&k) {
        return phi.clone();
    }
    let mut num: Poly = vec![BigRational::zero(); k as usize + 1];
    num[0] = -BigRational::one();
    num[k as usize] = BigRational::one();
    for d in (1..k).filter(|d| k % d == 0) {
        let (q, r) = poly::divrem(&num, &cyclotomic_polynomial(d));
        debug_assert!(r.is_empty());
        num = q;
    }
    let phi = Arc::new(num);
    // A racing thread computes the same polynomial; either insert wins.
    cache.write().unwrap().entry(k).or_insert(phi).clone()
}

impl CyclotomicNumber {
    pub fn zero(k: u32) -> Self {
        Self::from_rational(k, BigRational::zero())
    }

    pub fn one(k: u32) -> Self {
        Self::from_rational(k, BigRational::one())
    }

    pub fn from_rational(k: u32, q: BigRational) -> Self {
        assert!(k >= 1, "conductor must be positive");
        let mut coeffs = vec![BigRational::zero(); k as usize];
        coeffs[0] = q;
        CyclotomicNumber {
            conductor: k,
            coeffs,
            canonical: true,
        }
    }

    pub fn from_integer(k: u32, n: i64) -> Self {
        Self::from_rational(k, BigRational::from_integer(n.into()))
    }

    /// `ζ_k^j` in canonical form; `j` may be negative.
    pub fn zeta_pow(k: u32, j: i64) -> Self {
        let mut coeffs = vec![BigRational::zero(); k as usize];
        coeffs[j.rem_euclid(k as i64) as usize] = BigRational::one();
        Self::from_raw(k, coeffs).canonicalize()
    }

    pub fn zeta(k: u32) -> Self {
        Self::zeta_pow(k, 1)
    }

    /// Unreduced number `Σ coeffs[j] ζ_k^j`. Exponents beyond `k` wrap, since
    /// `ζ_k^k = 1`.
    pub fn from_raw(k: u32, coeffs: Vec<BigRational>) -> Self {
        assert!(k >= 1, "conductor must be positive");
        let mut folded = vec![BigRational::zero(); k as usize];
        for (j, c) in coeffs.into_iter().enumerate() {
            folded[j % k as usize] += c;
        }
        CyclotomicNumber {
            conductor: k,
            coeffs: folded,
            canonical: false,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn is_zero(&self) -> bool {
        self.canonicalize().coeffs.iter().all(Zero::is_zero)
    }

    /// Rational value if the number lies in ℚ.
    pub fn to_rational(&self) -> Option<BigRational> {
        let c = self.canonicalize();
        c.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| c.coeffs[0].clone())
    }

    /// Reduces the coefficient polynomial modulo Φ_k. Idempotent.
    pub fn canonicalize(&self) -> Self {
        if self.canonical {
            return self.clone();
        }
        Self::from_poly(self.conductor, self.coeffs.clone())
    }

    fn from_poly(k: u32, p: Poly) -> Self {
        let phi = cyclotomic_polynomial(k);
        let (_, rem) = poly::divrem(&p, &phi);
        let mut coeffs = rem;
        coeffs.resize(k as usize, BigRational::zero());
        CyclotomicNumber {
            conductor: k,
            coeffs,
            canonical: true,
        }
    }

    fn poly(&self) -> Poly {
        poly::trim(self.canonicalize().coeffs)
    }

    /// Re-expresses the number over ζ_{k'} through `ζ_k = ζ_{k'}^{k'/k}`.
    pub fn lift(&self, k_new: u32) -> Result<Self> {
        if k_new == 0 || k_new % self.conductor != 0 {
            return Err(Error::ConductorNotDivisible {
                from: self.conductor,
                to: k_new,
            });
        }
        let step = (k_new / self.conductor) as usize;
        let mut coeffs = vec![BigRational::zero(); k_new as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[j * step] = c.clone();
        }
        Ok(Self::from_raw(k_new, coeffs).canonicalize())
    }

    fn check_conductor(&self, other: &Self) -> Result<()> {
        if self.conductor != other.conductor {
            return Err(Error::ConductorMismatch {
                left: self.conductor,
                right: other.conductor,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::from_raw(self.conductor, coeffs).canonicalize())
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        let k = self.conductor as usize;
        // Convolution in the group ring ℚ[x]/(x^k - 1), then reduce by Φ_k.
        let mut coeffs = vec![BigRational::zero(); k];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                coeffs[(i + j) % k] += a * b;
            }
        }
        Ok(Self::from_raw(self.conductor, coeffs).canonicalize())
    }

    /// Multiplicative inverse via the extended gcd of the coefficient
    /// polynomial with Φ_k.
    pub fn inverse(&self) -> Result<Self> {
        let a = self.poly();
        if a.is_empty() {
            return Err(Error::ZeroInverse);
        }
        let phi = cyclotomic_polynomial(self.conductor);
        let (g, s) = poly::ext_gcd(&a, &phi);
        // Φ_k is irreducible, so a nonzero residue is coprime to it.
        debug_assert_eq!(g.len(), 1);
        let inv_g = g[0].recip();
        let scaled = s.into_iter().map(|c| c * &inv_g).collect();
        Ok(Self::from_poly(self.conductor, scaled))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            self.inverse()?
        } else {
            self.canonicalize()
        };
        let mut result = Self::one(self.conductor);
        let mut sq = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&sq)?;
            }
            sq = sq.try_mul(&sq)?;
            e >>= 1;
        }
        Ok(result)
    }

    /// Complex conjugate, `ζ^j ↦ ζ^{-j}`.
    pub fn conj(&self) -> Self {
        let k = self.conductor as usize;
        let mut coeffs = vec![BigRational::zero(); k];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[(k - j) % k] = c.clone();
        }
        Self::from_raw(self.conductor, coeffs).canonicalize()
    }

    /// Value in ℂ, evaluated in double precision.
    pub fn embed(&self) -> Complex64 {
        let k = self.conductor as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let theta = std::f64::consts::TAU * j as f64 / k;
                Complex64::from_polar(rational_to_f64(c), theta)
            })
            .sum()
    }

    fn common_pair(&self, other: &Self) -> (Self, Self) {
        let k = self.conductor.lcm(&other.conductor);
        (self.lift(k).unwrap(), other.lift(k).unwrap())
    }
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common_pair(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            canonical: self.canonical,
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

macro_rules! lifting_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Operands with different conductors are lifted to the lcm.
        impl $trait for &CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
                let (a, b) = self.common_pair(rhs);
                a.$checked(&b).unwrap()
            }
        }

        impl $trait for CyclotomicNumber {
            type Output = CyclotomicNumber;
            fn $method(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
                (&self).$method(&rhs)
            }
        }
    };
}

lifting_op!(Add, add, try_add);
lifting_op!(Sub, sub, try_sub);
lifting_op!(Mul, mul, try_mul);

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclotomicNumber({self})")
    }
}

impl fmt::Display for CyclotomicNumber {
    /// Canonical text form, e.g. `3/2 + 1/3*z^2 (k=12)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.canonicalize();
        let mut first = true;
        for (j, coef) in c.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let neg = coef.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let mag = coef.abs();
            let power = match j {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{j}"),
            };
            if j == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&power)?;
            } else {
                write!(f, "{mag}*{power}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " (k={})", c.conductor)
    }
}

impl FromStr for CyclotomicNumber {
    type Err = Error;

    /// Parses the text form written by `Display`. Terms may repeat or come in
    /// any order; exponents wrap modulo `k`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s
            .rfind("(k=")
            .ok_or_else(|| Error::Parse(format!("missing conductor in {s:?}")))?;
        let k: u32 = s[open + 3..]
            .trim_end()
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("unterminated conductor in {s:?}")))?
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("conductor: {e}")))?;
        if k == 0 {
            return Err(Error::Parse("conductor must be positive".into()));
        }
        let body: String = s[..open].chars().filter(|c| !c.is_whitespace()).collect();
        if body.is_empty() {
            return Err(Error::Parse(format!("empty number in {s:?}")));
        }
        let mut coeffs = vec![BigRational::zero(); k as usize];
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in body.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !body[..i].ends_with('^') {
                terms.push(&body[start..i]);
                start = i;
            }
        }
        terms.push(&body[start..]);
        for term in terms {
            let (sign, t) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            let (coef, power) = match t.split_once('z') {
                None => (parse_rational(t)?, 0i64),
                Some((c, p)) => {
                    let c = match c.strip_suffix('*') {
                        Some(c) => parse_rational(c)?,
                        None if c.is_empty() => BigRational::one(),
                        None => return Err(Error::Parse(format!("malformed term {term:?}"))),
                    };
                    let p = match p.strip_prefix('^') {
                        Some(p) => p
                            .parse()
                            .map_err(|_| Error::Parse(format!("exponent in {term:?}")))?,
                        None if p.is_empty() => 1,
                        None => return Err(Error::Parse(format!("malformed term {term:?}"))),
                    };
                    (c, p)
                }
            };
            let slot = power.rem_euclid(k as i64) as usize;
            coeffs[slot] += coef * BigRational::from_integer(sign.into());
        }
        Ok(Self::from_raw(k, coeffs).canonicalize())
    }
}
