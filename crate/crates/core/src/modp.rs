//! Reduction of rational ideals modulo a prime, and the comparison of
//! initial ideals before and after reduction.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::MonomialIdeal;
use crate::field::{is_prime, reduce_rational_mod_p, FieldDescriptor, FieldElement, FieldError, FieldKind};
use crate::groebner::{GroebnerError, Ideal};
use crate::knutson::{closure, KnutsonError, KnutsonFamily, WitnessPolicy};
use crate::poly::{Polynomial, TermOrder};

#[derive(Debug, Error)]
pub enum ModpError {
    #[error("expected an ideal over the rationals")]
    NotRational,
    #[error("every generator vanishes modulo {0}")]
    ZeroReduction(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Knutson(#[from] KnutsonError),
}

/// Generators with coprime integer coefficients and positive leading
/// coefficient, generating the same ideal over the rationals.
#[derive(Clone, Debug)]
pub struct IntegralForm {
    generators: Vec<Polynomial>,
    /// Per generator, the common denominator that was cleared.
    denominators: Vec<BigInt>,
}

impl IntegralForm {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn denominators(&self) -> &[BigInt] {
        &self.denominators
    }
}

pub fn integral_form(ideal: &Ideal) -> Result<IntegralForm, ModpError> {
    if ideal.ring().field().kind() != FieldKind::Rationals {
        return Err(ModpError::NotRational);
    }
    let mut generators = Vec::new();
    let mut denominators = Vec::new();
    for g in ideal.generators() {
        let (_, lcm) = g.integer_coefficients().expect("rational coefficients");
        denominators.push(lcm);
        generators.push(g.primitive());
    }
    Ok(IntegralForm { generators, denominators })
}

fn reduce_polynomial(f: &Polynomial, field: FieldDescriptor, p: u64) -> Result<Polynomial, FieldError> {
    f.map_coefficients(field, |c| match c {
        FieldElement::Rational(q) => Ok(FieldElement::Prime(reduce_rational_mod_p(q, p)?)),
        FieldElement::Prime(_) => unreachable!("rational input"),
    })
}

/// Coefficientwise reduction of rational polynomials; generators that
/// vanish are dropped. All vanishing is [`ModpError::ZeroReduction`].
pub fn reduce_generators(generators: &[Polynomial], p: u64) -> Result<Vec<Polynomial>, ModpError> {
    let field = FieldDescriptor::prime_field(p)?;
    let mut out = Vec::new();
    for g in generators {
        if g.field().kind() != FieldKind::Rationals {
            return Err(ModpError::NotRational);
        }
        let r = reduce_polynomial(g, field, p)?;
        if !r.is_zero() {
            out.push(r);
        }
    }
    if out.is_empty() {
        return Err(ModpError::ZeroReduction(p));
    }
    Ok(out)
}

/// `I(p)`: the ideal over `GF(p)` generated by the reduced integral
/// generators.
pub fn reduce_ideal(form: &IntegralForm, p: u64) -> Result<Ideal, ModpError> {
    let gens = reduce_generators(&form.generators, p)?;
    let ring = gens[0].ring();
    Ok(Ideal::new(ring, gens)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BadReason {
    NotPrime,
    ZeroReduction,
    InitialMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum ReductionStatus {
    Good,
    Bad(BadReason),
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub prime: u64,
    pub status: ReductionStatus,
    /// `lt(I(p))`; absent when the reduction could not be formed.
    pub lt_of_reduction: Option<MonomialIdeal>,
    /// `lt(I)` read as a monomial ideal over `GF(p)`.
    pub reduction_of_lt: MonomialIdeal,
    #[serde(rename = "match")]
    pub matches: bool,
    /// Whether `p` divides a denominator of the reduced basis over the
    /// rationals (a heuristic warning sign, not a verdict).
    pub denominator_divisible: bool,
}

fn bad_report(p: u64, reason: BadReason, lt: MonomialIdeal, denominator_divisible: bool) -> ReductionReport {
    ReductionReport {
        prime: p,
        status: ReductionStatus::Bad(reason),
        lt_of_reduction: None,
        reduction_of_lt: lt,
        matches: false,
        denominator_divisible,
    }
}

/// Compares `lt(I(p))` with `lt(I)` under `order`.
pub fn compare_initials(ideal: &Ideal, p: u64, order: &TermOrder) -> Result<ReductionReport, ModpError> {
    if ideal.ring().field().kind() != FieldKind::Rationals {
        return Err(ModpError::NotRational);
    }
    let gb = ideal.groebner(order)?;
    let lt = gb.initial_ideal(ideal.ring().nvars());
    let big_p = BigInt::from(p);
    let denominator_divisible = gb.basis().iter().any(|g| {
        g.terms().iter().any(|t| {
            let q = t.coeff.as_rational().expect("rational");
            (q.denominator() % &big_p) == BigInt::from(0)
        })
    });
    if !is_prime(p) {
        return Ok(bad_report(p, BadReason::NotPrime, lt, false));
    }
    let reduced = match reduce_ideal(&integral_form(ideal)?, p) {
        Ok(r) => r,
        Err(ModpError::ZeroReduction(_)) => {
            return Ok(bad_report(p, BadReason::ZeroReduction, lt, denominator_divisible));
        }
        Err(e) => return Err(e),
    };
    let lt_p = reduced.initial_ideal(order)?;
    let matches = lt_p == lt;
    Ok(ReductionReport {
        prime: p,
        status: if matches { ReductionStatus::Good } else { ReductionStatus::Bad(BadReason::InitialMismatch) },
        lt_of_reduction: Some(lt_p),
        reduction_of_lt: lt,
        matches,
        denominator_divisible,
    })
}

/// [`compare_initials`] for each prime, in the given order.
pub fn prime_scan(ideal: &Ideal, primes: &[u64], order: &TermOrder) -> Result<Vec<ReductionReport>, ModpError> {
    // fill the rational basis once before fanning out
    ideal.groebner(order)?;
    primes.par_iter().map(|&p| compare_initials(ideal, p, order)).collect()
}

/// The family of the reduction of `f` over `GF(p)`, with user witnesses
/// reduced the same way (witnesses vanishing mod `p` are dropped).
pub fn knutson_family_mod_p(
    f: &Polynomial,
    p: u64,
    policy: &WitnessPolicy,
    order: &TermOrder,
) -> Result<KnutsonFamily, ModpError> {
    let seed = reduce_generators(&[f.primitive()], p)?.remove(0);
    let mut reduced = policy.clone();
    reduced.user_supplied = Vec::new();
    for w in &policy.user_supplied {
        if let Ok(mut r) = reduce_generators(&[w.primitive()], p) {
            reduced.user_supplied.push(r.remove(0));
        }
    }
    Ok(closure(&seed, &reduced, order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::primes_between;
    use crate::poly::{parse_polynomial, Ring};

    fn ring() -> Ring {
        Ring::new(FieldDescriptor::RATIONALS, 3)
    }

    fn ideal(gens: &[&str]) -> Ideal {
        Ideal::new(ring(), gens.iter().map(|s| parse_polynomial(s, ring(), &TermOrder::Lex).unwrap())).unwrap()
    }

    fn form_text(gens: &[&str]) -> Vec<String> {
        integral_form(&ideal(gens)).unwrap().generators().iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn integral_forms() {
        assert_eq!(form_text(&["1/2*x1 - x2"]), ["x1 - 2*x2"]);
        assert_eq!(form_text(&["x1*x3 - x2^2"]), ["x1*x3 - x2^2"]);
        assert_eq!(form_text(&["2/4*x1"]), ["x1"]);
        assert_eq!(integral_form(&ideal(&["1/2*x1 - x2"])).unwrap().denominators(), [BigInt::from(2)]);
    }

    #[test]
    fn reductions() {
        let r = reduce_ideal(&integral_form(&ideal(&["x1 - 2*x2"])).unwrap(), 2).unwrap();
        assert_eq!(r.to_string(), "(x1)");
        let r = reduce_ideal(&integral_form(&ideal(&["x1*x3 - x2^2"])).unwrap(), 5).unwrap();
        assert_eq!(r.to_string(), "(x1*x3 + 4*x2^2)");
        assert_eq!(r.ring().field(), FieldDescriptor::prime_field(5).unwrap());
        let raw = [parse_polynomial("3*x1", ring(), &TermOrder::Lex).unwrap()];
        assert!(matches!(reduce_generators(&raw, 3), Err(ModpError::ZeroReduction(3))));
    }

    #[test]
    fn bad_prime_two() {
        let i = ideal(&["2*x1 - x2"]);
        let lex = TermOrder::Lex;
        let r2 = compare_initials(&i, 2, &lex).unwrap();
        assert!(!r2.matches);
        assert_eq!(r2.status, ReductionStatus::Bad(BadReason::InitialMismatch));
        assert_eq!(r2.lt_of_reduction.unwrap().to_string(), "(x2)");
        assert_eq!(r2.reduction_of_lt.to_string(), "(x1)");
        assert!(r2.denominator_divisible);
        assert!(compare_initials(&i, 5, &lex).unwrap().matches);
        let scan = prime_scan(&i, &primes_between(2, 50), &lex).unwrap();
        let bad: Vec<u64> = scan.iter().filter(|r| !r.matches).map(|r| r.prime).collect();
        assert_eq!(bad, [2]);
        assert!(prime_scan(&i, &[], &lex).unwrap().is_empty());
        assert_eq!(compare_initials(&i, 4, &lex).unwrap().status, ReductionStatus::Bad(BadReason::NotPrime));
    }

    #[test]
    fn hankel_determinant_reduces_well() {
        assert!(compare_initials(&ideal(&["x1*x3 - x2^2"]), 101, &TermOrder::Lex).unwrap().matches);
    }

    #[test]
    fn small_family_mod_p() {
        let lex = TermOrder::Lex;
        let f = parse_polynomial("x2*(x1*x3 - x2^2)", ring(), &lex).unwrap();
        let q = closure(&f, &WitnessPolicy::default(), &lex).unwrap();
        let fp = knutson_family_mod_p(&f, 101, &WitnessPolicy::default(), &lex).unwrap();
        assert_eq!(fp.len(), q.len());
        assert_eq!(fp.ring().field(), FieldDescriptor::prime_field(101).unwrap());
    }
}
