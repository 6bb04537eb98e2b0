//! Property checks shared by the property tests and the acceptance run.
//! Each check returns `Err` with a description on the first violation.

use std::cmp::Ordering;

use proptest::prelude::*;

use knutson::combinatorics::{hilbert_summary, MonomialIdeal};
use knutson::field::{FieldDescriptor, FieldElement, Rational};
use knutson::groebner::{normal_form, Ideal};
use knutson::ideal_ops::{ideal_colon, ideal_intersect};
use knutson::poly::{parse_polynomial, Monomial, Ring, TermOrder};

use super::{counted_hilbert, divides, exps_of, monomial_colon, monomial_intersection, minimalize, stanley_reisner_dimension, stanley_reisner_hvector, Exps};

pub type Check = Result<(), String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn rational() -> impl Strategy<Value = (i64, i64)> {
    (-60i64..60, 1i64..25)
}

pub fn field_axioms(field: FieldDescriptor, a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Check {
    let zero = field.zero();
    let one = field.one();
    let eq = |x: &FieldElement, y: &FieldElement, law: &str| ensure(x == y, || format!("{law} fails for {a}, {b}, {c} in {field}: {x} vs {y}"));
    eq(&a.add(b), &b.add(a), "additive commutativity")?;
    eq(&a.mul(b), &b.mul(a), "multiplicative commutativity")?;
    eq(&a.add(b).add(c), &a.add(&b.add(c)), "additive associativity")?;
    eq(&a.mul(b).mul(c), &a.mul(&b.mul(c)), "multiplicative associativity")?;
    eq(&a.mul(&b.add(c)), &a.mul(b).add(&a.mul(c)), "distributivity")?;
    eq(&a.add(&zero), a, "additive identity")?;
    eq(&a.mul(&one), a, "multiplicative identity")?;
    eq(&a.add(&a.neg()), &zero, "additive inverse")?;
    eq(&a.sub(b).add(b), a, "subtraction")?;
    if b.is_zero() {
        ensure(b.inv().is_err(), || "zero has an inverse".into())?;
    } else {
        eq(&b.mul(&b.inv().unwrap()), &one, "multiplicative inverse")?;
        eq(&a.div(b).unwrap().mul(b), a, "division")?;
    }
    Ok(())
}

pub fn rational_element(field: FieldDescriptor, (n, d): (i64, i64)) -> FieldElement {
    field.from_rational(&Rational::new(n, d).unwrap()).unwrap()
}

pub fn orders() -> Vec<TermOrder> {
    vec![
        TermOrder::Lex,
        TermOrder::Grevlex,
        TermOrder::matrix(vec![vec![1, 2, 3, 4], vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]]).unwrap(),
    ]
}

pub fn exps(nvars: usize, max: u16) -> impl Strategy<Value = Exps> {
    proptest::collection::vec(0..=max, nvars)
}

pub fn order_axioms(order: &TermOrder, a: &Exps, b: &Exps, c: &Exps) -> Check {
    let (ma, mb, mc) = (Monomial::new(a.clone()), Monomial::new(b.clone()), Monomial::new(c.clone()));
    let ab = order.cmp(&ma, &mb);
    ensure(ab == order.cmp(&mb, &ma).reverse(), || format!("{order}: antisymmetry fails for {ma}, {mb}"))?;
    ensure((ab == Ordering::Equal) == (a == b), || format!("{order}: distinct {ma}, {mb} compare equal"))?;
    if ab == Ordering::Less && order.cmp(&mb, &mc) == Ordering::Less {
        ensure(order.cmp(&ma, &mc) == Ordering::Less, || format!("{order}: transitivity fails for {ma} < {mb} < {mc}"))?;
    }
    ensure(order.cmp(&ma.mul(&mc), &mb.mul(&mc)) == ab, || format!("{order}: multiplying by {mc} changes {ma} vs {mb}"))?;
    ensure(order.cmp(&Monomial::one(a.len()), &ma) != Ordering::Greater, || format!("{order}: 1 > {ma}"))?;
    Ok(())
}

/// Polynomial text from `(coefficient, exponents)` pairs.
pub fn poly_text(terms: &[(i64, Exps)]) -> String {
    let mut s = String::from("0");
    for (c, e) in terms {
        s.push_str(&format!(" + ({c})"));
        for (i, k) in e.iter().enumerate() {
            if *k > 0 {
                s.push_str(&format!("*x{}^{k}", i + 1));
            }
        }
    }
    s
}

pub fn poly_terms(nvars: usize) -> impl Strategy<Value = Vec<(i64, Exps)>> {
    proptest::collection::vec((-4i64..=4, exps(nvars, 2)), 1..4)
}

pub fn ideal_from(ring: Ring, gens: &[Vec<(i64, Exps)>]) -> Ideal {
    let order = TermOrder::Lex;
    Ideal::new(ring, gens.iter().map(|g| parse_polynomial(&poly_text(g), ring, &order).unwrap())).unwrap()
}

/// Re-checks a reduced Gröbner basis independently of how it was built.
pub fn groebner_recheck(ideal: &Ideal, order: &TermOrder) -> Check {
    let gb = ideal.groebner(order).map_err(|e| e.to_string())?;
    let basis = gb.basis();
    ensure(gb.verify(), || format!("Buchberger criterion fails for {gb}"))?;
    for g in ideal.generators() {
        let g = g.with_order(order).unwrap();
        let r = normal_form(&g, basis, order).unwrap();
        ensure(r.is_zero(), || format!("generator {g} leaves remainder {r} modulo {gb}"))?;
    }
    let leads: Vec<Exps> = basis.iter().map(|g| g.leading_monomial().unwrap().exponents().to_vec()).collect();
    for (i, g) in basis.iter().enumerate() {
        ensure(g.leading_coefficient().unwrap().is_one(), || format!("{g} is not monic"))?;
        for term in g.terms() {
            let e = term.mono.exponents();
            let hit = leads.iter().enumerate().any(|(j, l)| j != i && divides(l, e));
            ensure(!hit, || format!("a term of {g} is divisible by another leading monomial"))?;
        }
    }
    Ok(())
}

pub fn monomial_ideal_gens(nvars: usize) -> impl Strategy<Value = Vec<Exps>> {
    proptest::collection::vec(exps(nvars, 3).prop_filter("nonconstant", |e| e.iter().any(|&k| k > 0)), 1..4)
}

fn monomial_ideal(ring: Ring, gens: &[Exps]) -> Ideal {
    let terms: Vec<Vec<(i64, Exps)>> = gens.iter().map(|g| vec![(1, g.clone())]).collect();
    ideal_from(ring, &terms)
}

/// Intersection and colon of monomial ideals against the exponent oracle.
pub fn monomial_ops(ring: Ring, a: &[Exps], b: &[Exps]) -> Check {
    let order = TermOrder::Lex;
    let (ia, ib) = (monomial_ideal(ring, a), monomial_ideal(ring, b));
    let inter = ideal_intersect(&ia, &ib, &order).map_err(|e| e.to_string())?;
    let got = exps_of(&inter.initial_ideal(&order).unwrap());
    let want = monomial_intersection(&minimalize(a.to_vec()), &minimalize(b.to_vec()));
    ensure(got == want, || format!("intersection of {a:?} and {b:?}: {got:?} vs {want:?}"))?;
    let colon = ideal_colon(&ia, &ib, &order).map_err(|e| e.to_string())?;
    let got = exps_of(&colon.initial_ideal(&order).unwrap());
    let want = minimalize(monomial_colon(a, b, ring.nvars()));
    ensure(got == want, || format!("colon of {a:?} by {b:?}: {got:?} vs {want:?}"))?;
    for gb in [inter.groebner(&order).unwrap(), colon.groebner(&order).unwrap()] {
        ensure(gb.basis().iter().all(|g| g.len() == 1), || format!("{gb} is not monomial"))?;
    }
    Ok(())
}

pub fn squarefree_gens() -> impl Strategy<Value = (usize, Vec<Exps>)> {
    (1usize..=6).prop_flat_map(|n| {
        let gen = proptest::collection::vec(0u16..=1, n).prop_filter("nonconstant", |e| e.contains(&1));
        (Just(n), proptest::collection::vec(gen, 1..6))
    })
}

/// Dimension and h-vector of a Stanley–Reisner ring: faces of the complex
/// against the library and against standard-monomial counting.
pub fn stanley_reisner(nvars: usize, gens: &[Exps]) -> Check {
    let m = MonomialIdeal::new(nvars, gens.iter().map(|g| Monomial::new(g.clone())));
    let lib = hilbert_summary(&m);
    let dim = stanley_reisner_dimension(gens, nvars);
    ensure(lib.dimension == dim, || format!("{m}: dimension {:?} vs faces {dim:?}", lib.dimension))?;
    let h = stanley_reisner_hvector(gens, nvars).unwrap();
    ensure(lib.h_vector.entries() == h.as_slice(), || format!("{m}: h-vector {} vs faces {h:?}", lib.h_vector))?;
    let counted = counted_hilbert(gens, nvars).unwrap();
    ensure(counted.h_vector == h && Some(counted.dimension) == dim, || format!("{m}: counting gives {counted:?}"))?;
    ensure(lib.multiplicity == h.iter().sum::<i64>(), || format!("{m}: multiplicity {}", lib.multiplicity))?;
    Ok(())
}
