//! Exact coefficient arithmetic over the rationals and word-sized prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest admissible prime modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("prime {0} divides a denominator")]
    BadPrime(u64),
    #[error("{0} is not a prime below 2^62")]
    NotPrime(u64),
}

/// A rational number, always stored in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Self, FieldError> {
        let den = denominator.into();
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numerator.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn div(&self, other: &Rational) -> Result<Self, FieldError> {
        Ok(Rational(&self.0 * other.inv()?.0))
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// An element of Z/pZ.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeFieldElement {
    residue: u64,
    modulus: u64,
}

impl PrimeFieldElement {
    /// Reduces `value` into `[0, p)`. The modulus is assumed to have been
    /// validated through [`FieldDescriptor::prime_field`].
    pub fn new(value: i64, modulus: u64) -> Self {
        let r = value.rem_euclid(modulus as i64) as u64;
        PrimeFieldElement { residue: r, modulus }
    }

    fn raw(residue: u64, modulus: u64) -> Self {
        debug_assert!(residue < modulus);
        PrimeFieldElement { residue, modulus }
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        // p < 2^62 so the sum cannot overflow
        let s = self.residue + rhs.residue;
        Self::raw(if s >= self.modulus { s - self.modulus } else { s }, self.modulus)
    }

    pub fn neg(&self) -> Self {
        if self.residue == 0 {
            *self
        } else {
            Self::raw(self.modulus - self.residue, self.modulus)
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        Self::raw(mul_mod(self.residue, rhs.residue, self.modulus), self.modulus)
    }

    pub fn pow(&self, exp: u64) -> Self {
        Self::raw(pow_mod(self.residue, exp, self.modulus), self.modulus)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.residue == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(self.modulus - 2))
    }
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
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

/// All primes in `[lo, hi]`, ascending.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&p| is_prime(p)).collect()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Rationals,
    PrimeField(u64),
}

/// Identifies the coefficient field of a polynomial ring.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FieldDescriptor(FieldKind);

impl FieldDescriptor {
    pub const RATIONALS: FieldDescriptor = FieldDescriptor(FieldKind::Rationals);

    pub fn prime_field(p: u64) -> Result<Self, FieldError> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldDescriptor(FieldKind::PrimeField(p)))
    }

    /// `0` selects the rationals, anything else a prime field.
    pub fn from_characteristic(c: u64) -> Result<Self, FieldError> {
        if c == 0 {
            Ok(Self::RATIONALS)
        } else {
            Self::prime_field(c)
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.0
    }

    pub fn characteristic(&self) -> u64 {
        match self.0 {
            FieldKind::Rationals => 0,
            FieldKind::PrimeField(p) => p,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self.0 {
            FieldKind::Rationals => FieldElement::Rational(Rational::from_integer(n)),
            FieldKind::PrimeField(p) => FieldElement::Prime(PrimeFieldElement::new(n, p)),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self.0 {
            FieldKind::Rationals => FieldElement::Rational(Rational::from_integer(n.clone())),
            FieldKind::PrimeField(p) => FieldElement::Prime(bigint_mod_p(n, p)),
        }
    }

    /// Maps a rational into this field; fails with `BadPrime` when the
    /// denominator vanishes modulo the characteristic.
    pub fn from_rational(&self, q: &Rational) -> Result<FieldElement, FieldError> {
        match self.0 {
            FieldKind::Rationals => Ok(FieldElement::Rational(q.clone())),
            FieldKind::PrimeField(p) => reduce_rational_mod_p(q, p).map(FieldElement::Prime),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            FieldKind::Rationals => write!(f, "QQ"),
            FieldKind::PrimeField(p) => write!(f, "GF({p})"),
        }
    }
}

fn bigint_mod_p(n: &BigInt, p: u64) -> PrimeFieldElement {
    let r = n.mod_floor(&BigInt::from(p));
    PrimeFieldElement::raw(r.to_u64().expect("residue fits in u64"), p)
}

/// The reduction map Q -> F_p on rationals whose denominator is prime to `p`.
pub fn reduce_rational_mod_p(q: &Rational, p: u64) -> Result<PrimeFieldElement, FieldError> {
    let den = bigint_mod_p(q.denominator(), p);
    if den.is_zero() {
        return Err(FieldError::BadPrime(p));
    }
    let num = bigint_mod_p(q.numerator(), p);
    Ok(num.mul(&den.inv()?))
}

/// A coefficient in either supported field. Mixing fields in one operation
/// is a programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(Rational),
    Prime(PrimeFieldElement),
}

impl FieldElement {
    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Prime(a) => a.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Prime(a) => a.residue == 1,
        }
    }

    /// True for coefficients that print with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_negative(),
            FieldElement::Prime(_) => false,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Prime(a), FieldElement::Prime(b)) => FieldElement::Prime(a.add(b)),
            _ => panic!("field mismatch"),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a - b),
            (FieldElement::Prime(a), FieldElement::Prime(b)) => FieldElement::Prime(a.sub(b)),
            _ => panic!("field mismatch"),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Prime(a), FieldElement::Prime(b)) => FieldElement::Prime(a.mul(b)),
            _ => panic!("field mismatch"),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Prime(a) => FieldElement::Prime(a.neg()),
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        match self {
            FieldElement::Rational(a) => a.inv().map(FieldElement::Rational),
            FieldElement::Prime(a) => a.inv().map(FieldElement::Prime),
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Prime(_) => None,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => q.fmt(f),
            FieldElement::Prime(a) => a.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn canonical_form() {
        let r = q(2, -4);
        assert_eq!(r.numerator(), &BigInt::from(-1));
        assert_eq!(r.denominator(), &BigInt::from(2));
        assert_eq!(q(0, 7), Rational::zero());
        assert_eq!(Rational::zero().denominator(), &BigInt::from(1));
    }

    #[test]
    fn inverse_in_f7() {
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        assert_eq!(f7.from_i64(3).inv().unwrap(), f7.from_i64(5));
    }

    #[test]
    fn inverse_of_zero() {
        assert_eq!(Rational::zero().inv(), Err(FieldError::DivisionByZero));
        let f7 = FieldDescriptor::prime_field(7).unwrap();
        assert_eq!(f7.zero().inv(), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_rational_mod_p(&q(1, 2), 5).unwrap().residue(), 3);
        assert_eq!(reduce_rational_mod_p(&q(1, 2), 2), Err(FieldError::BadPrime(2)));
        assert_eq!(reduce_rational_mod_p(&q(7, 3), 7).unwrap().residue(), 0);
        assert_eq!(reduce_rational_mod_p(&q(-1, 3), 7).unwrap().residue(), 2);
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = primes_between(0, 30);
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(32003));
        assert!(!is_prime(32001));
        assert!(is_prime(4_611_686_018_427_387_847)); // largest prime below 2^62
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(FieldDescriptor::prime_field(4).is_err());
        assert!(FieldDescriptor::prime_field(MAX_MODULUS + 1).is_err());
    }

    fn fp(v: i64) -> FieldElement {
        FieldDescriptor::prime_field(101).unwrap().from_i64(v)
    }

    fn rat() -> impl Strategy<Value = FieldElement> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| FieldElement::Rational(q(n, d)))
    }

    fn assert_axioms(a: &FieldElement, b: &FieldElement, c: &FieldElement) {
        assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
        assert_eq!(a.add(b), b.add(a));
        assert_eq!(a.mul(b), b.mul(a));
        assert!(a.add(&a.neg()).is_zero());
        if !a.is_zero() {
            assert!(a.mul(&a.inv().unwrap()).is_one());
        }
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in rat(), b in rat(), c in rat()) {
            assert_axioms(&a, &b, &c);
        }

        #[test]
        fn prime_field_axioms(a in -500i64..500, b in -500i64..500, c in -500i64..500) {
            assert_axioms(&fp(a), &fp(b), &fp(c));
        }

        #[test]
        fn reduction_is_a_homomorphism(an in -60i64..60, ad in 1i64..30, bn in -60i64..60, bd in 1i64..30) {
            let p = 13;
            let (a, b) = (q(an, ad), q(bn, bd));
            if let (Ok(ra), Ok(rb)) = (reduce_rational_mod_p(&a, p), reduce_rational_mod_p(&b, p)) {
                if let Ok(s) = reduce_rational_mod_p(&(&a + &b), p) {
                    prop_assert_eq!(s, ra.add(&rb));
                }
                if let Ok(m) = reduce_rational_mod_p(&(&a * &b), p) {
                    prop_assert_eq!(m, ra.mul(&rb));
                }
            }
        }
    }
}
