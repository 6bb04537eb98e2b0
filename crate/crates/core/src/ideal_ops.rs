//! Sum, intersection and colon of ideals, the latter two by elimination of
//! an auxiliary variable `t`.

use rayon::prelude::*;
use thiserror::Error;

use crate::groebner::{groebner_basis, GroebnerError, Ideal, ReducedGB};
use crate::poly::{PolyError, Polynomial, Ring, TermOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealOpError {
    #[error("ideals or polynomials live in different rings")]
    AmbientMismatch,
    #[error("colon by the zero ideal")]
    ZeroIdeal,
    #[error("colon by a zero witness")]
    ZeroWitness,
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Groebner(GroebnerError),
}

impl From<GroebnerError> for IdealOpError {
    fn from(e: GroebnerError) -> Self {
        match e {
            GroebnerError::AmbientMismatch => IdealOpError::AmbientMismatch,
            other => IdealOpError::Groebner(other),
        }
    }
}

impl From<PolyError> for IdealOpError {
    fn from(e: PolyError) -> Self {
        GroebnerError::from(e).into()
    }
}

fn same_ring(a: &Ideal, b: &Ideal) -> Result<Ring, IdealOpError> {
    if a.ring() == b.ring() {
        Ok(a.ring())
    } else {
        Err(IdealOpError::AmbientMismatch)
    }
}

/// `I + J`: the generator lists concatenated.
pub fn ideal_sum(i: &Ideal, j: &Ideal) -> Result<Ideal, IdealOpError> {
    let ring = same_ring(i, j)?;
    Ok(Ideal::new(ring, i.generators().iter().chain(j.generators()).cloned())?)
}

/// `I ∩ J = (tI + (1-t)J) ∩ S`, with `t` prepended and eliminated by a
/// block order whose tail is `order`. The result carries its reduced basis
/// for `order`.
pub fn ideal_intersect(i: &Ideal, j: &Ideal, order: &TermOrder) -> Result<Ideal, IdealOpError> {
    let ring = same_ring(i, j)?;
    order.check_arity(ring.nvars())?;
    let elim = TermOrder::elimination(1, TermOrder::Lex, order.clone());
    let ext = ring.extended(0);
    let t = Polynomial::variable(ext, elim.clone(), 0)?;
    let one_minus_t = &Polynomial::one(ext, elim.clone()) - &t;

    let mut gens = Vec::new();
    for g in i.groebner(order)?.basis() {
        gens.push(&g.extend_ring(0, &elim)? * &t);
    }
    for h in j.groebner(order)?.basis() {
        gens.push(&h.extend_ring(0, &elim)? * &one_minus_t);
    }
    let gb = groebner_basis(&gens, &elim)?;

    let mut contracted = Vec::new();
    for g in gb.basis() {
        if let Some(r) = g.restrict_ring(0, order)? {
            contracted.push(r);
        }
    }
    // the t-free part of a reduced basis for an elimination order is the
    // reduced basis of the contraction, already sorted for `order`
    Ok(Ideal::from_reduced(ring, ReducedGB::from_reduced_basis(order.clone(), contracted)))
}

/// `I : J` as the intersection over generators `g` of `J` of
/// `(1/g)(I ∩ (g))`.
pub fn ideal_colon(i: &Ideal, j: &Ideal, order: &TermOrder) -> Result<Ideal, IdealOpError> {
    let ring = same_ring(i, j)?;
    let jb = j.groebner(order)?;
    if jb.is_zero() {
        return Err(IdealOpError::ZeroIdeal);
    }
    let parts = jb
        .basis()
        .par_iter()
        .map(|g| colon_principal(i, g, order))
        .collect::<Result<Vec<_>, _>>()?;
    let mut parts = parts.into_iter();
    let mut acc = parts.next().expect("nonzero ideal has a generator");
    for p in parts {
        acc = ideal_intersect(&acc, &p, order)?;
    }
    debug_assert_eq!(acc.ring(), ring);
    Ok(acc)
}

fn colon_principal(i: &Ideal, g: &Polynomial, order: &TermOrder) -> Result<Ideal, IdealOpError> {
    let cut = ideal_intersect(i, &Ideal::principal(g.clone()), order)?;
    let mut quotients = Vec::with_capacity(cut.generators().len());
    for h in cut.generators() {
        let q = h.div_exact(g).ok_or_else(|| {
            IdealOpError::Internal(format!("`{h}` is in the intersection with ({g}) but not divisible by it"))
        })?;
        quotients.push(q);
    }
    Ok(Ideal::new(i.ring(), quotients)?)
}

/// `I : (c)`. For radical `I` and `c` lying in every minimal prime but
/// one, this is that minimal prime.
pub fn minimal_prime_by_witness(i: &Ideal, c: &Polynomial, order: &TermOrder) -> Result<Ideal, IdealOpError> {
    if c.ring() != i.ring() {
        return Err(IdealOpError::AmbientMismatch);
    }
    if c.is_zero() {
        return Err(IdealOpError::ZeroWitness);
    }
    ideal_colon(i, &Ideal::principal(c.clone()), order)
}
