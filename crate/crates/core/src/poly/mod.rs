//! Sparse multivariate polynomials over the supported coefficient fields.
//!
//! A [`Polynomial`] keeps its terms strictly decreasing under its
//! [`TermOrder`], so two polynomials with the same ring and order are equal
//! exactly when their term vectors are. Zero coefficients never appear.

mod monomial;
mod order;
mod text;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::{FieldDescriptor, FieldElement, FieldError, FieldKind, Rational};

pub use monomial::Monomial;
pub use order::{compare, BlockOrder, TermOrder, WeightMatrix};
pub use text::{parse_polynomial, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operands live in different rings or orders")]
    AmbientMismatch,
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("invalid term order: {0}")]
    InvalidOrder(String),
    #[error("variable index {0} out of range")]
    BadVariable(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Coefficient field, number of variables, and an optional slot printed as
/// `t` (the auxiliary variable of elimination rings).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    field: FieldDescriptor,
    nvars: usize,
    t_slot: Option<usize>,
}

impl Ring {
    pub fn new(field: FieldDescriptor, nvars: usize) -> Self {
        Ring { field, nvars, t_slot: None }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn t_slot(&self) -> Option<usize> {
        self.t_slot
    }

    /// The ring with one more variable, inserted at `pos` and named `t`.
    pub fn extended(&self, pos: usize) -> Ring {
        Ring { field: self.field, nvars: self.nvars + 1, t_slot: Some(pos) }
    }

    /// Drops the variable at `pos`.
    pub fn restricted(&self, _pos: usize) -> Ring {
        Ring { field: self.field, nvars: self.nvars - 1, t_slot: None }
    }

    pub fn with_field(&self, field: FieldDescriptor) -> Ring {
        Ring { field, ..*self }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: FieldElement,
    pub mono: Monomial,
}

/// Leading coefficient and monomial of a nonzero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub coefficient: FieldElement,
    pub monomial: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    order: TermOrder,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: Ring, order: TermOrder) -> Self {
        Polynomial { ring, order, terms: Vec::new() }
    }

    pub fn constant(ring: Ring, order: TermOrder, c: FieldElement) -> Self {
        let mono = Monomial::one(ring.nvars);
        Self::monomial(ring, order, c, mono)
    }

    pub fn one(ring: Ring, order: TermOrder) -> Self {
        Self::constant(ring, order, ring.field.one())
    }

    pub fn monomial(ring: Ring, order: TermOrder, coeff: FieldElement, mono: Monomial) -> Self {
        let terms = if coeff.is_zero() { vec![] } else { vec![Term { coeff, mono }] };
        Polynomial { ring, order, terms }
    }

    /// The variable with 0-based index `index`.
    pub fn variable(ring: Ring, order: TermOrder, index: usize) -> Result<Self, PolyError> {
        if index >= ring.nvars {
            return Err(PolyError::BadVariable(index));
        }
        Ok(Self::monomial(ring, order, ring.field.one(), Monomial::variable(ring.nvars, index)))
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates and
    /// drops zeros.
    pub fn from_terms(ring: Ring, order: TermOrder, terms: impl IntoIterator<Item = (FieldElement, Monomial)>) -> Self {
        let mut raw: Vec<Term> = terms
            .into_iter()
            .map(|(coeff, mono)| {
                debug_assert_eq!(mono.nvars(), ring.nvars);
                Term { coeff, mono }
            })
            .collect();
        raw.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => last.coeff = last.coeff.add(&t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Polynomial { ring, order, terms: out }
    }

    /// Terms must already be strictly decreasing under `order` and nonzero.
    pub(crate) fn from_sorted_terms(ring: Ring, order: TermOrder, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| order.cmp(&w[0].mono, &w[1].mono).is_gt()));
        Polynomial { ring, order, terms }
    }

    pub(crate) fn pop_lead(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn field(&self) -> FieldDescriptor {
        self.ring.field
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElement> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn leading_term(&self) -> Result<LeadingTerm, PolyError> {
        self.lead()
            .map(|t| LeadingTerm { coefficient: t.coeff.clone(), monomial: t.mono.clone() })
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].mono.degree() == w[1].mono.degree())
    }

    pub fn same_ambient(&self, other: &Polynomial) -> bool {
        self.ring == other.ring && self.order == other.order
    }

    fn ensure_same(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.same_ambient(other) {
            Ok(())
        } else {
            Err(PolyError::AmbientMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.ensure_same(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.ensure_same(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.ensure_same(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let terms = merge_terms(&self.terms, other.terms.iter().cloned(), negate, &self.order);
        Polynomial { ring: self.ring, order: self.order.clone(), terms }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.ring, self.order.clone());
        }
        let mut acc: Vec<Term> = Vec::new();
        // short factor on the outside keeps intermediate merges small
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        for t in &small.terms {
            let shifted = big.terms.iter().map(|u| Term { coeff: u.coeff.mul(&t.coeff), mono: u.mono.mul(&t.mono) });
            acc = merge_terms(&acc, shifted, false, &self.order);
        }
        Polynomial { ring: self.ring, order: self.order.clone(), terms: acc }
    }

    /// `self - c * m * g`, the elementary reduction step.
    pub fn sub_scaled(&self, c: &FieldElement, m: &Monomial, g: &Polynomial) -> Polynomial {
        debug_assert!(self.same_ambient(g));
        let shifted = g.terms.iter().map(|u| Term { coeff: u.coeff.mul(c), mono: u.mono.mul(m) });
        let terms = merge_terms(&self.terms, shifted, true, &self.order);
        Polynomial { ring: self.ring, order: self.order.clone(), terms }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring, self.order.clone());
        }
        let terms = self.terms.iter().map(|t| Term { coeff: t.coeff.mul(c), mono: t.mono.clone() }).collect();
        Polynomial { ring: self.ring, order: self.order.clone(), terms }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        let terms = self.terms.iter().map(|t| Term { coeff: t.coeff.clone(), mono: t.mono.mul(m) }).collect();
        Polynomial { ring: self.ring, order: self.order.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.ring, self.order.clone());
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Over the rationals: the integer multiple with coprime coefficients
    /// and positive leading coefficient. Over a prime field: [`Self::monic`].
    pub fn primitive(&self) -> Polynomial {
        match self.ring.field.kind() {
            FieldKind::PrimeField(_) => self.monic(),
            FieldKind::Rationals => {
                if self.is_zero() {
                    return self.clone();
                }
                let (ints, _) = self.integer_coefficients().expect("rational coefficients");
                let mut content = BigInt::zero();
                for c in &ints {
                    content = content.gcd(c);
                }
                if ints[0].is_negative() {
                    content = -content;
                }
                let terms = self
                    .terms
                    .iter()
                    .zip(ints)
                    .map(|(t, c)| Term {
                        coeff: FieldElement::Rational(Rational::from_integer(c / &content)),
                        mono: t.mono.clone(),
                    })
                    .collect();
                Polynomial { ring: self.ring, order: self.order.clone(), terms }
            }
        }
    }

    /// For rational polynomials: coefficients multiplied by the lcm of the
    /// denominators, together with that lcm.
    pub fn integer_coefficients(&self) -> Option<(Vec<BigInt>, BigInt)> {
        let mut lcm = BigInt::one();
        for t in &self.terms {
            lcm = lcm.lcm(t.coeff.as_rational()?.denominator());
        }
        let ints = self
            .terms
            .iter()
            .map(|t| {
                let q = t.coeff.as_rational().expect("checked above");
                q.numerator() * (&lcm / q.denominator())
            })
            .collect();
        Some((ints, lcm))
    }

    /// Re-sorts the terms under another order on the same variables.
    pub fn with_order(&self, order: &TermOrder) -> Result<Polynomial, PolyError> {
        order.check_arity(self.ring.nvars)?;
        if &self.order == order {
            return Ok(self.clone());
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Ok(Polynomial { ring: self.ring, order: order.clone(), terms })
    }

    /// Embeds into the ring with a new variable (named `t`) at `pos`,
    /// sorted under `order`.
    pub fn extend_ring(&self, pos: usize, order: &TermOrder) -> Result<Polynomial, PolyError> {
        if pos > self.ring.nvars {
            return Err(PolyError::BadVariable(pos));
        }
        let ring = self.ring.extended(pos);
        order.check_arity(ring.nvars)?;
        let mut terms: Vec<Term> =
            self.terms.iter().map(|t| Term { coeff: t.coeff.clone(), mono: t.mono.insert_var(pos) }).collect();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Ok(Polynomial { ring, order: order.clone(), terms })
    }

    /// Inverse of [`Self::extend_ring`]; `None` if the variable at `pos` occurs.
    pub fn restrict_ring(&self, pos: usize, order: &TermOrder) -> Result<Option<Polynomial>, PolyError> {
        if pos >= self.ring.nvars {
            return Err(PolyError::BadVariable(pos));
        }
        let ring = self.ring.restricted(pos);
        order.check_arity(ring.nvars)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            match t.mono.remove_var(pos) {
                Some(mono) => terms.push(Term { coeff: t.coeff.clone(), mono }),
                None => return Ok(None),
            }
        }
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Ok(Some(Polynomial { ring, order: order.clone(), terms }))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        debug_assert!(self.same_ambient(divisor));
        let lead = divisor.lead()?;
        let lc_inv = lead.coeff.inv().ok()?;
        let mut rest = self.clone();
        let mut quotient: Vec<Term> = Vec::new();
        while let Some(t) = rest.lead() {
            let m = t.mono.div(&lead.mono)?;
            let c = t.coeff.mul(&lc_inv);
            rest = rest.sub_scaled(&c, &m, divisor);
            quotient.push(Term { coeff: c, mono: m });
        }
        // quotient terms come out strictly decreasing
        Some(Polynomial { ring: self.ring, order: self.order.clone(), terms: quotient })
    }

    /// Applies a coefficient map into another field, dropping terms that
    /// vanish.
    pub fn map_coefficients<E>(
        &self,
        field: FieldDescriptor,
        mut f: impl FnMut(&FieldElement) -> Result<FieldElement, E>,
    ) -> Result<Polynomial, E> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = f(&t.coeff)?;
            if !c.is_zero() {
                terms.push(Term { coeff: c, mono: t.mono.clone() });
            }
        }
        Ok(Polynomial { ring: self.ring.with_field(field), order: self.order.clone(), terms })
    }
}

/// Merges a sorted term slice with a sorted stream, adding (or subtracting)
/// the stream.
fn merge_terms(a: &[Term], b: impl Iterator<Item = Term>, negate: bool, order: &TermOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + 4);
    let mut ai = a.iter().peekable();
    let mut bi = b.peekable();
    loop {
        let ord = match (ai.peek(), bi.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some(x), Some(y)) => order.cmp(&x.mono, &y.mono),
        };
        match ord {
            Ordering::Greater => out.push(ai.next().expect("peeked").clone()),
            Ordering::Less => {
                let mut t = bi.next().expect("peeked");
                if negate {
                    t.coeff = t.coeff.neg();
                }
                out.push(t);
            }
            Ordering::Equal => {
                let x = ai.next().expect("peeked");
                let y = bi.next().expect("peeked");
                let c = if negate { x.coeff.sub(&y.coeff) } else { x.coeff.add(&y.coeff) };
                if !c.is_zero() {
                    out.push(Term { coeff: c, mono: x.mono.clone() });
                }
            }
        }
    }
    out
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|t| Term { coeff: t.coeff.neg(), mono: t.mono.clone() }).collect();
        Polynomial { ring: self.ring, order: self.order.clone(), terms }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_polynomial(f, self)
    }
}

/// Leading term under an explicit order.
pub fn leading_term(f: &Polynomial, order: &TermOrder) -> Result<LeadingTerm, PolyError> {
    f.with_order(order)?.leading_term()
}

/// True iff every exponent is at most one.
pub fn is_squarefree_monomial(m: &Monomial) -> bool {
    m.is_squarefree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(n: usize) -> Ring {
        Ring::new(FieldDescriptor::RATIONALS, n)
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, ring(4), &TermOrder::Lex).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("x1*x3 - x2^2") + &p("x2^2"), p("x1*x3"));
        assert_eq!(&p("x1 - x2") * &p("x1 + x2"), p("x1^2 - x2^2"));
        assert!((&Polynomial::zero(ring(4), TermOrder::Lex) * &p("x1*x3 - x2^2")).is_zero());
        assert!((&p("x1 + 3") - &p("x1 + 3")).is_zero());
    }

    #[test]
    fn ambient_mismatch() {
        let a = p("x1");
        let b = parse_polynomial("x1", ring(3), &TermOrder::Lex).unwrap();
        assert_eq!(a.checked_add(&b), Err(PolyError::AmbientMismatch));
        let c = a.with_order(&TermOrder::Grevlex).unwrap();
        assert_eq!(a.checked_mul(&c), Err(PolyError::AmbientMismatch));
    }

    #[test]
    fn leading_terms() {
        let r3 = ring(3);
        let f = parse_polynomial("x1*x3 - x2^2", r3, &TermOrder::Lex).unwrap();
        assert_eq!(leading_term(&f, &TermOrder::Lex).unwrap().monomial, Monomial::new(vec![1, 0, 1]));
        let g = leading_term(&f, &TermOrder::Grevlex).unwrap();
        assert_eq!(g.monomial, Monomial::new(vec![0, 2, 0]));
        assert!(g.coefficient.is_negative());
        let h = parse_polynomial("x1*x2*x3 - x2^3", r3, &TermOrder::Lex).unwrap();
        assert_eq!(h.leading_term().unwrap().monomial, Monomial::new(vec![1, 1, 1]));
        assert_eq!(Polynomial::zero(r3, TermOrder::Lex).leading_term(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn squarefree_monomials() {
        assert!(is_squarefree_monomial(&Monomial::new(vec![1, 1, 1])));
        assert!(!is_squarefree_monomial(&Monomial::new(vec![2, 0, 1])));
        assert!(is_squarefree_monomial(&Monomial::one(3)));
    }

    #[test]
    fn extend_and_restrict() {
        let r3 = ring(3);
        let f = parse_polynomial("x1*x3 - x2^2", r3, &TermOrder::Lex).unwrap();
        let elim = TermOrder::elimination(1, TermOrder::Lex, TermOrder::Lex);
        let g = f.extend_ring(0, &elim).unwrap();
        assert_eq!(g.nvars(), 4);
        assert!(g.terms().iter().all(|t| t.mono.exponents()[0] == 0));
        assert_eq!(g.to_string(), "x1*x3 - x2^2");
        let t = Polynomial::variable(g.ring(), elim.clone(), 0).unwrap();
        let tg = &t * &g;
        assert!(tg.terms().iter().all(|t| t.mono.exponents()[0] == 1));
        assert_eq!(tg.to_string(), "t*x1*x3 - t*x2^2");
        assert_eq!(tg.restrict_ring(0, &TermOrder::Lex).unwrap(), None);
        assert_eq!(g.restrict_ring(0, &TermOrder::Lex).unwrap(), Some(f));
    }

    #[test]
    fn primitive_and_monic() {
        assert_eq!(p("1/2*x1 - x2").primitive(), p("x1 - 2*x2"));
        assert_eq!(p("2/4*x1").primitive(), p("x1"));
        assert_eq!(p("-6*x1 + 4*x2").primitive(), p("3*x1 - 2*x2"));
        assert_eq!(p("2*x1 - x2").monic(), p("x1 - 1/2*x2"));
    }

    #[test]
    fn exact_division() {
        let f = p("x1*x3 - x2^2");
        let g = p("x2 + x4");
        assert_eq!((&f * &g).div_exact(&g), Some(f.clone()));
        assert_eq!(f.div_exact(&g), None);
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((-3i64..=3, proptest::collection::vec(0u16..3, 3)), 1..5).prop_map(|ts| {
            let r = ring(3);
            Polynomial::from_terms(
                r,
                TermOrder::Grevlex,
                ts.into_iter().map(|(c, e)| (r.field().from_i64(c), Monomial::new(e))),
            )
        })
    }

    proptest! {
        #[test]
        fn lead_of_product_is_product_of_leads(a in small_poly(), b in small_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let ab = &a * &b;
            let (la, lb) = (a.leading_term().unwrap(), b.leading_term().unwrap());
            let lab = ab.leading_term().unwrap();
            prop_assert_eq!(lab.monomial, la.monomial.mul(&lb.monomial));
            prop_assert_eq!(lab.coefficient, la.coefficient.mul(&lb.coefficient));
        }

        #[test]
        fn terms_stay_sorted(a in small_poly(), b in small_poly()) {
            for q in [&a + &b, &a - &b, &a * &b] {
                for w in q.terms().windows(2) {
                    prop_assert_eq!(q.order().cmp(&w[0].mono, &w[1].mono), Ordering::Greater);
                }
                prop_assert!(q.terms().iter().all(|t| !t.coeff.is_zero()));
            }
        }

        #[test]
        fn text_round_trip(a in small_poly()) {
            let back = parse_polynomial(&a.to_string(), a.ring(), a.order()).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
