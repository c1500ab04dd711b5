//! Exact scalar arithmetic: prime fields `F_p` (p ≤ 2^31) and arbitrary-precision
//! rationals behind a single [`Scalar`] type.
//!
//! Scalars are kept in canonical form at all times (residue in `[0, p)` for `F_p`,
//! reduced fraction with positive denominator for `Q`), so equality of values is
//! equality of representations.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from scalar construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime modulus {0} exceeds 2^31")]
    ModulusTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar from {0:?}")]
    ParseError(String),
    #[error("scalars from different fields")]
    FieldMismatch,
}

/// The coefficient field: `F_p` for a prime `p`, or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldCtx {
    #[serde(rename = "Fp")]
    Prime { p: u64 },
    #[serde(rename = "Q")]
    Rationals,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldCtx {
    /// Prime field context; checks primality and the 2^31 bound.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p > 1 << 31 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldCtx::Prime { p })
    }

    pub fn rationals() -> Self {
        FieldCtx::Rationals
    }

    /// Characteristic: `p` for `F_p`, 0 for `Q`.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldCtx::Prime { p } => *p,
            FieldCtx::Rationals => 0,
        }
    }

    /// Number of elements, if finite.
    pub fn size(&self) -> Option<u64> {
        match self {
            FieldCtx::Prime { p } => Some(*p),
            FieldCtx::Rationals => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_integer(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_integer(1)
    }

    /// Embeds a signed integer into the field.
    pub fn from_integer(&self, n: i64) -> Scalar {
        match self {
            FieldCtx::Prime { p } => {
                let p = *p as i128;
                let val = (n as i128).rem_euclid(p) as u64;
                Scalar::Fp { p: p as u64, val }
            }
            FieldCtx::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
        }
    }

    /// Embeds `n/d` into the field. Fails when `d` maps to zero.
    pub fn from_ratio(&self, n: i64, d: i64) -> Result<Scalar, FieldError> {
        self.from_integer(n).div(&self.from_integer(d))
    }

    /// `1/2` if it exists; `None` in characteristic 2.
    pub fn half(&self) -> Option<Scalar> {
        self.from_ratio(1, 2).ok()
    }

    /// Parses the textual scalar syntax: optional sign, decimal integer,
    /// optional `/denominator`.
    pub fn parse(&self, text: &str) -> Result<Scalar, FieldError> {
        let text = text.trim();
        let bad = || FieldError::ParseError(text.to_string());
        let (num_str, den_str) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let num = BigInt::from_str(num_str.trim()).map_err(|_| bad())?;
        let den = match den_str {
            Some(d) => {
                let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                d
            }
            None => BigInt::one(),
        };
        match self {
            FieldCtx::Rationals => Ok(Scalar::Rat(BigRational::new(num, den))),
            FieldCtx::Prime { p } => {
                let n = Scalar::Fp {
                    p: *p,
                    val: reduce_bigint(&num, *p),
                };
                let d = Scalar::Fp {
                    p: *p,
                    val: reduce_bigint(&den, *p),
                };
                n.div(&d)
            }
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldCtx::Prime { p } => write!(f, "F_{p}"),
            FieldCtx::Rationals => write!(f, "Q"),
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let m = n % BigInt::from(p);
    let m = if m.sign() == Sign::Minus {
        m + BigInt::from(p)
    } else {
        m
    };
    let (_, digits) = m.to_u64_digits();
    match digits.as_slice() {
        [] => 0,
        [d] => *d,
        _ => unreachable!("residue below u64 modulus"),
    }
}

/// A field element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { p: u64, val: u64 },
    Rat(BigRational),
}

impl Scalar {
    pub fn field(&self) -> FieldCtx {
        match self {
            Scalar::Fp { p, .. } => FieldCtx::Prime { p: *p },
            Scalar::Rat(_) => FieldCtx::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { val, .. } => *val == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { val, .. } => *val == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<(), FieldError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                p: *p,
                val: (a + b) % p,
            },
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.check_same(other)?;
        Ok(match (self, other) {
            (Scalar::Fp { p, val: a }, Scalar::Fp { val: b, .. }) => {
                // p < 2^31, so the product fits in u64
                Scalar::Fp {
                    p: *p,
                    val: (a * b) % p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => unreachable!(),
        })
    }

    /// Multiplicative inverse; `DivisionByZero` on zero.
    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Fp { p, val } => Scalar::Fp {
                p: *p,
                val: inv_mod(*val, *p),
            },
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.mul(&other.inv()?)
    }

    /// Total order used for canonical spectra/report ordering.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, p: q }) => p.cmp(q).then(a.cmp(b)),
            (Scalar::Rat(a), Scalar::Rat(b)) => a.cmp(b),
            (Scalar::Fp { .. }, Scalar::Rat(_)) => Ordering::Less,
            (Scalar::Rat(_), Scalar::Fp { .. }) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

/// Extended Euclid inverse of `a` mod prime `p`; `a` must be nonzero.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "modulus must be prime and a nonzero");
    t0.rem_euclid(p as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { val, .. } => write!(f, "{val}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}
