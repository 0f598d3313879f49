//! Coefficient fields: the rationals and prime fields `Z/p` with `p < 2^63`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::FieldError;

/// Primes below this bound are rejected by scenario validation unless explicitly allowed.
pub const MIN_SCENARIO_PRIME: u64 = 1 << 30;

/// Which exact field the coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Validated prime field. The modulus must be a prime below `2^63`.
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p < 2 || !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p >= 1 << 63 {
            return Err(FieldError::ModulusTooLarge(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::zero()),
            FieldSpec::PrimeField(p) => Coeff::Modular { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::PrimeField(p) => Coeff::Modular {
                value: v.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Coeff {
        match self {
            FieldSpec::Rationals => Coeff::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::PrimeField(p) => Coeff::Modular {
                value: reduce_bigint(v, *p),
                modulus: *p,
            },
        }
    }

    /// Maps a rational into this field. Fails over `Z/p` when `p` divides the denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Coeff, FieldError> {
        match self {
            FieldSpec::Rationals => Ok(Coeff::Rational(q.clone())),
            FieldSpec::PrimeField(p) => {
                let den = reduce_bigint(q.denom(), *p);
                if den == 0 {
                    return Err(FieldError::BadReduction(q.to_string(), *p));
                }
                let num = reduce_bigint(q.numer(), *p);
                Ok(Coeff::Modular {
                    value: mul_mod(num, inv_mod(den, *p), *p),
                    modulus: *p,
                })
            }
        }
    }

    /// Parses `rationals`/`QQ` or `prime:<p>`.
    pub fn parse(src: &str) -> Result<Self, FieldError> {
        let s = src.trim();
        match s {
            "rationals" | "QQ" | "Q" => Ok(FieldSpec::Rationals),
            _ => {
                let digits = s
                    .strip_prefix("prime:")
                    .or_else(|| s.strip_prefix("GF:"))
                    .ok_or_else(|| FieldError::Unknown(s.to_string()))?;
                let p: u64 = digits
                    .trim()
                    .parse()
                    .map_err(|_| FieldError::Unknown(s.to_string()))?;
                FieldSpec::prime(p)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "rationals"),
            FieldSpec::PrimeField(p) => write!(f, "prime:{p}"),
        }
    }
}

/// A field element. Mixing elements of different fields is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Coeff {
    pub fn field(&self) -> FieldSpec {
        match self {
            Coeff::Rational(_) => FieldSpec::Rationals,
            Coeff::Modular { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_zero(),
            Coeff::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rational(q) => q.is_one(),
            Coeff::Modular { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(add_q(a, b)),
            (Coeff::Modular { value: a, modulus: p }, Coeff::Modular { value: b, modulus: q }) => {
                assert_eq!(p, q, "coefficients from different prime fields");
                Coeff::Modular { value: add_mod(*a, *b, *p), modulus: *p }
            }
            _ => panic!("coefficients from different fields"),
        }
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        match (self, other) {
            (Coeff::Rational(a), Coeff::Rational(b)) => Coeff::Rational(mul_q(a, b)),
            (Coeff::Modular { value: a, modulus: p }, Coeff::Modular { value: b, modulus: q }) => {
                assert_eq!(p, q, "coefficients from different prime fields");
                Coeff::Modular { value: mul_mod(*a, *b, *p), modulus: *p }
            }
            _ => panic!("coefficients from different fields"),
        }
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Rational(a) => Coeff::Rational(-a),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Coeff::Rational(a) => Coeff::Rational(a.recip()),
            Coeff::Modular { value, modulus } => Coeff::Modular {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn div(&self, other: &Coeff) -> Option<Coeff> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, mut e: u32) -> Coeff {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Coeff::Rational(q) => Some(q),
            Coeff::Modular { .. } => None,
        }
    }

    /// Sign used for display; prime-field elements are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Coeff::Rational(q) if q.is_negative())
    }

    /// Multipliers `(a, b)` with `a * self == b * divisor`, used for a reduction step
    /// `h <- a*h - b*m*g`. Over the rationals integral inputs stay integral.
    pub fn reduction_factors(&self, divisor: &Coeff) -> (Coeff, Coeff) {
        match (self, divisor) {
            (Coeff::Rational(a), Coeff::Rational(b)) if a.is_integer() && b.is_integer() => {
                let (an, bn) = (a.numer(), b.numer());
                let g = an.gcd(bn);
                let mut fa = bn / &g;
                let mut fb = an / &g;
                if fa.is_negative() {
                    fa = -fa;
                    fb = -fb;
                }
                (
                    Coeff::Rational(BigRational::from_integer(fa)),
                    Coeff::Rational(BigRational::from_integer(fb)),
                )
            }
            _ => (
                self.field().one(),
                self.div(divisor).expect("reduction by a zero leading coefficient"),
            ),
        }
    }

    /// Rough size in bits, used to decide when to normalize content.
    pub fn bits(&self) -> u64 {
        match self {
            Coeff::Rational(q) => q.numer().bits() + q.denom().bits(),
            Coeff::Modular { .. } => 64,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Coeff::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

// Integer fast paths: num-rational reduces by a gcd even when both denominators are one.
fn add_q(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn mul_q(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

pub(crate) fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Extended Euclid on i128 so that composite moduli never appear here silently.
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "{a} is not invertible modulo {p}");
    s0.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Parses `a`, `-a` or `a/b` into a rational.
pub fn parse_rational(src: &str) -> Option<BigRational> {
    let s = src.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
