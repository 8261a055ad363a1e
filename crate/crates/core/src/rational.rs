//! Exact scalars.
//!
//! Every quantity in the crate is a [`Rational`] backed by arbitrary precision
//! integers. Interval endpoints of semicircular walls are generally irrational
//! (`c ± √r²`), so [`Surd`] carries values of the form `p + q·√R` and decides
//! their sign without ever extracting a root.

use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// `n / d` from machine integers. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError {
    input: alloc::string::String,
}

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational {:?}: expected `p/q` or an integer", self.input)
    }
}

impl core::error::Error for ParseRationalError {}

/// Parses `p/q` or `n` (optional sign on the numerator, surrounding
/// whitespace ignored). Decimals and zero denominators are rejected.
pub fn parse_rational(input: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError {
        input: input.into(),
    };
    let s = input.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let unsigned = num.strip_prefix(['+', '-']).unwrap_or(num);
    if !digits(unsigned) {
        return Err(err());
    }
    let numer = BigInt::from_str(num).map_err(|_| err())?;
    let denom = match den {
        Some(d) if digits(d) => BigInt::from_str(d).map_err(|_| err())?,
        Some(_) => return Err(err()),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(numer, denom))
}

/// True iff `value` is an integer multiple of `modulus` (`modulus > 0`).
pub fn is_multiple_of(value: &Rational, modulus: &Rational) -> bool {
    (value / modulus).is_integer()
}

/// Generator of the additive group `a·Z + b·Z`; zero only if both are zero.
pub fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let den = a.denom() * b.denom();
    let an = a.numer() * b.denom();
    let bn = b.numer() * a.denom();
    Rational::new(an.gcd(&bn), den)
}

/// Exact square root if `value` is the square of a rational.
pub fn exact_sqrt(value: &Rational) -> Option<Rational> {
    if value.is_negative() {
        return None;
    }
    let n = value.numer().sqrt();
    let d = value.denom().sqrt();
    (&n * &n == *value.numer() && &d * &d == *value.denom()).then(|| Rational::new(n, d))
}

/// A rational `lo` with `lo ≤ √value` and `√value - lo < 2^-bits`.
pub fn sqrt_floor_approx(value: &Rational, bits: u32) -> Rational {
    assert!(!value.is_negative(), "square root of a negative rational");
    // √(n/d) = √(n·d)/d; scale by 4^bits before the integer root.
    let scale = BigInt::one() << bits;
    let radicand = value.numer() * value.denom() * &scale * &scale;
    Rational::new(radicand.sqrt(), value.denom() * scale)
}

fn sign_of(x: &Rational) -> Ordering {
    x.cmp(&Rational::zero())
}

/// `base + coeff·√radicand` with `radicand ≥ 0`.
///
/// Perfect-square radicands are folded into the base on construction, so a
/// surd with nonzero `coeff` is genuinely irrational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    base: Rational,
    coeff: Rational,
    radicand: Rational,
}

impl Surd {
    pub fn new(base: Rational, coeff: Rational, radicand: Rational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand");
        if coeff.is_zero() || radicand.is_zero() {
            return Surd::rational(base);
        }
        if let Some(root) = exact_sqrt(&radicand) {
            return Surd::rational(base + coeff * root);
        }
        Surd {
            base,
            coeff,
            radicand,
        }
    }

    pub fn rational(value: Rational) -> Self {
        Surd {
            base: value,
            coeff: Rational::zero(),
            radicand: Rational::zero(),
        }
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn radicand(&self) -> &Rational {
        &self.radicand
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeff.is_zero().then_some(&self.base)
    }

    /// Whether `self` and `other` live in the same field `Q(√R)`, so that
    /// their difference is again a [`Surd`].
    pub fn compatible(&self, other: &Surd) -> bool {
        self.coeff.is_zero() || other.coeff.is_zero() || self.radicand == other.radicand
    }

    fn radicand_with(&self, other: &Surd) -> Rational {
        if self.coeff.is_zero() {
            other.radicand.clone()
        } else {
            self.radicand.clone()
        }
    }

    pub fn scale(&self, k: &Rational) -> Surd {
        Surd::new(&self.base * k, &self.coeff * k, self.radicand.clone())
    }

    pub fn add_rational(&self, k: &Rational) -> Surd {
        Surd::new(&self.base + k, self.coeff.clone(), self.radicand.clone())
    }

    /// `self - other`, or `None` when the radicands differ.
    pub fn checked_sub(&self, other: &Surd) -> Option<Surd> {
        self.compatible(other).then(|| {
            Surd::new(
                &self.base - &other.base,
                &self.coeff - &other.coeff,
                self.radicand_with(other),
            )
        })
    }

    /// Exact sign, decided by squaring.
    pub fn signum(&self) -> Ordering {
        let p = sign_of(&self.base);
        let q = sign_of(&self.coeff);
        if q == Ordering::Equal {
            return p;
        }
        if p == Ordering::Equal || p == q {
            return q;
        }
        // Opposite signs: the larger magnitude wins.
        let p2 = &self.base * &self.base;
        let q2r = &self.coeff * &self.coeff * &self.radicand;
        match p2.cmp(&q2r) {
            Ordering::Greater => p,
            Ordering::Less => q,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn cmp_rational(&self, value: &Rational) -> Ordering {
        self.add_rational(&-value).signum()
    }

    /// Rational approximation within `2^-bits · |coeff|`.
    pub fn approx(&self, bits: u32) -> Rational {
        if self.coeff.is_zero() {
            return self.base.clone();
        }
        &self.base + &self.coeff * sqrt_floor_approx(&self.radicand, bits)
    }

    pub fn floor(&self) -> BigInt {
        let mut n = self.approx(32).floor().to_integer();
        while self.cmp_rational(&Rational::from_integer(n.clone())) == Ordering::Less {
            n -= 1;
        }
        while self.cmp_rational(&Rational::from_integer(&n + 1)) != Ordering::Less {
            n += 1;
        }
        n
    }

    pub fn ceil(&self) -> BigInt {
        -self.scale(&-Rational::one()).floor()
    }
}

impl From<Rational> for Surd {
    fn from(value: Rational) -> Self {
        Surd::rational(value)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            return write!(f, "{}", self.base);
        }
        let sign = if self.coeff.is_negative() { '-' } else { '+' };
        let mag = self.coeff.abs();
        if self.base.is_zero() {
            if sign == '-' {
                f.write_str("-")?;
            }
        } else {
            write!(f, "{} {} ", self.base, sign)?;
        }
        if !mag.is_one() {
            write!(f, "{}*", mag)?;
        }
        write!(f, "sqrt({})", self.radicand)
    }
}
