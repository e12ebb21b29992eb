//! Exact scalar arithmetic over prime fields `GF(p)` and the rationals.
//!
//! Every [`FieldElement`] carries enough information to know its own field,
//! so the arithmetic operators work without passing a [`FieldSpec`] around.
//! Mixing elements of different fields is a programming error and panics;
//! the matrix layer checks field agreement up front and reports
//! [`Error::FieldMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which field the scalars live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec(Kind);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Prime(u64),
    Rational,
}

/// Trial division up to the square root.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    /// `GF(p)`. Fails with [`Error::NonPrimeModulus`] unless `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec(Kind::Prime(p)))
        } else {
            Err(Error::NonPrimeModulus(p))
        }
    }

    pub const fn rational() -> Self {
        FieldSpec(Kind::Rational)
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            Kind::Prime(p) => Some(p),
            Kind::Rational => None,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.0, Kind::Prime(_))
    }

    /// Re-checks the modulus. Only matters for specs that did not come
    /// from [`FieldSpec::prime`] (e.g. decoded from untrusted input).
    pub fn validate(&self) -> Result<()> {
        match self.0 {
            Kind::Prime(p) if !is_prime(p) => Err(Error::NonPrimeModulus(p)),
            _ => Ok(()),
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, value: i64) -> FieldElement {
        match self.0 {
            Kind::Prime(p) => FieldElement(Repr::Gf {
                residue: (value as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            }),
            Kind::Rational => FieldElement(Repr::Rational(BigRational::from_integer(value.into()))),
        }
    }

    pub fn from_bigint(&self, value: &BigInt) -> FieldElement {
        match self.0 {
            Kind::Prime(p) => FieldElement(Repr::Gf {
                residue: reduce_bigint(value, p),
                modulus: p,
            }),
            Kind::Rational => FieldElement(Repr::Rational(BigRational::from_integer(value.clone()))),
        }
    }

    /// `numer / denom` as an element of this field.
    pub fn from_ratio(&self, numer: &BigInt, denom: &BigInt) -> Result<FieldElement> {
        if denom.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        match self.0 {
            Kind::Prime(_) => self.from_bigint(numer).checked_div(&self.from_bigint(denom)),
            Kind::Rational => Ok(FieldElement(Repr::Rational(BigRational::new(
                numer.clone(),
                denom.clone(),
            )))),
        }
    }

    /// Canonical representative of a literal: residue mod `p`, or a reduced
    /// fraction with positive denominator.
    ///
    /// Over `GF(p)` a fraction `a/b` denotes `a · b⁻¹`, so `b` must not be
    /// divisible by `p`.
    pub fn canonicalize(&self, raw: &Literal) -> Result<FieldElement> {
        self.validate()?;
        match raw {
            Literal::Integer(v) => Ok(self.from_bigint(v)),
            Literal::Fraction { numer, denom } => self.from_ratio(numer, denom),
        }
    }

    /// Parses and canonicalizes one entry literal.
    pub fn parse_element(&self, text: &str) -> Result<FieldElement> {
        self.canonicalize(&text.parse()?)
    }

    /// All elements of a prime field in residue order; `None` for the rationals.
    pub fn elements(&self) -> Option<impl Iterator<Item = FieldElement>> {
        let p = self.modulus()?;
        Some((0..p).map(move |residue| FieldElement(Repr::Gf { residue, modulus: p })))
    }

    /// The element with residue `r mod p`. Only meaningful for prime fields.
    pub(crate) fn residue(&self, r: u64) -> Option<FieldElement> {
        self.modulus().map(|p| FieldElement(Repr::Gf {
            residue: r % p,
            modulus: p,
        }))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Prime(p) => write!(f, "gf{p}"),
            Kind::Rational => f.write_str("rational"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `gf<p>` or `rational`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "rational" {
            return Ok(FieldSpec::rational());
        }
        let digits = s
            .strip_prefix("gf")
            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown field `{s}` (expected gf<p> or rational)")))?;
        let p = digits
            .parse::<u64>()
            .map_err(|_| Error::InvalidArgument(format!("modulus `{digits}` is out of range")))?;
        FieldSpec::prime(p)
    }
}

fn reduce_bigint(value: &BigInt, p: u64) -> u64 {
    value
        .mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue below a u64 modulus")
}

/// An entry literal before it is interpreted in a field.
///
/// Text grammar: `-?[0-9]+(/[0-9]+)?`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    Integer(BigInt),
    Fraction { numer: BigInt, denom: BigInt },
}

impl FromStr for Literal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("invalid literal `{s}`"));
        let digits_ok = |d: &str| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit());
        let (head, tail) = match s.split_once('/') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let unsigned = head.strip_prefix('-').unwrap_or(head);
        if !digits_ok(unsigned) {
            return Err(bad());
        }
        let numer: BigInt = head.parse().map_err(|_| bad())?;
        match tail {
            None => Ok(Literal::Integer(numer)),
            Some(t) if digits_ok(t) => {
                let denom: BigInt = t.parse().map_err(|_| bad())?;
                Ok(Literal::Fraction { numer, denom })
            }
            Some(_) => Err(bad()),
        }
    }
}

/// A canonical scalar: a residue in `[0, p)` or a fully reduced fraction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement(Repr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Gf { residue: u64, modulus: u64 },
    Rational(BigRational),
}

impl FieldElement {
    pub fn spec(&self) -> FieldSpec {
        match self.0 {
            Repr::Gf { modulus, .. } => FieldSpec(Kind::Prime(modulus)),
            Repr::Rational(_) => FieldSpec::rational(),
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self.0 {
            Repr::Gf { residue, .. } => Some(residue),
            Repr::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Gf { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Gf { residue, .. } => *residue == 0,
            Repr::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Gf { residue, .. } => *residue == 1,
            Repr::Rational(r) => r.is_one(),
        }
    }

    /// Multiplicative inverse; extended Euclid over `GF(p)`.
    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Gf { residue, modulus } => FieldElement(Repr::Gf {
                residue: mod_inverse(*residue, *modulus),
                modulus: *modulus,
            }),
            Repr::Rational(r) => FieldElement(Repr::Rational(r.recip())),
        })
    }

    pub fn checked_div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        Ok(self * &rhs.inv()?)
    }

    fn mismatch(&self, rhs: &FieldElement) -> ! {
        panic!(
            "field mismatch in scalar arithmetic: {} vs {}",
            self.spec(),
            rhs.spec()
        )
    }
}

/// Inverse of a nonzero `a` modulo prime `p`.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(p as i128) as u64
}

impl fmt::Display for FieldElement {
    /// Canonical literal: the residue, `a`, or `a/b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Gf { residue, .. } => write!(f, "{residue}"),
            Repr::Rational(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: &FieldElement) -> FieldElement {
        match (&self.0, &rhs.0) {
            (Repr::Gf { residue: a, modulus: p }, Repr::Gf { residue: b, modulus: q }) if p == q => {
                let sum = (*a as u128 + *b as u128) % *p as u128;
                FieldElement(Repr::Gf { residue: sum as u64, modulus: *p })
            }
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a + b)),
            _ => self.mismatch(rhs),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: &FieldElement) -> FieldElement {
        match (&self.0, &rhs.0) {
            (Repr::Gf { residue: a, modulus: p }, Repr::Gf { residue: b, modulus: q }) if p == q => {
                let prod = (*a as u128 * *b as u128) % *p as u128;
                FieldElement(Repr::Gf { residue: prod as u64, modulus: *p })
            }
            (Repr::Rational(a), Repr::Rational(b)) => FieldElement(Repr::Rational(a * b)),
            _ => self.mismatch(rhs),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        match &self.0 {
            Repr::Gf { residue, modulus } => FieldElement(Repr::Gf {
                residue: if *residue == 0 { 0 } else { modulus - residue },
                modulus: *modulus,
            }),
            Repr::Rational(r) => FieldElement(Repr::Rational(-r)),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Mul mul, Sub sub);

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        -&self
    }
}
