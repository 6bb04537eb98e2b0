//! Buchberger's algorithm and reduced Gröbner bases.
//!
//! The reduced basis is the canonical form of an ideal for a fixed order,
//! so ideal equality, membership and containment all go through it. Pair
//! selection follows the normal strategy (smallest lcm first) and useless
//! pairs are discarded with the Gebauer-Möller criteria.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::combinatorics::MonomialIdeal;
use crate::poly::{Monomial, PolyError, Polynomial, Ring, TermOrder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("ideals or polynomials live in different rings")]
    AmbientMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The monic reduced Gröbner basis of an ideal for one term order, sorted
/// by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedGB {
    order: TermOrder,
    basis: Vec<Polynomial>,
}

impl ReducedGB {
    /// Wraps a basis already known to be reduced, monic and sorted.
    pub(crate) fn from_reduced_basis(order: TermOrder, basis: Vec<Polynomial>) -> Self {
        ReducedGB { order, basis }
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.leading_monomial().expect("nonzero basis element").clone()).collect()
    }

    pub fn initial_ideal(&self, nvars: usize) -> MonomialIdeal {
        MonomialIdeal::new(nvars, self.leading_monomials())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let f = f.with_order(&self.order).expect("arity checked by ideal");
        reduce(&f, &self.basis.iter().collect::<Vec<_>>())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Canonical text form, used as a dedup key.
    pub fn key(&self) -> String {
        self.to_string()
    }

    /// Independent re-check: monic, inter-reduced, and every S-polynomial
    /// reduces to zero.
    pub fn verify(&self) -> bool {
        let leads = self.leading_monomials();
        let monic = self.basis.iter().all(|g| g.leading_coefficient().is_some_and(|c| c.is_one()));
        let reduced = self.basis.iter().enumerate().all(|(i, g)| {
            g.terms()
                .iter()
                .all(|t| leads.iter().enumerate().all(|(j, l)| (i == j && t.mono == *l) || !l.divides(&t.mono)))
        });
        monic && reduced && satisfies_buchberger_criterion(&self.basis)
    }
}

impl fmt::Display for ReducedGB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// An ideal given by generators, with reduced Gröbner bases cached per
/// order. The cache is filled at most once per order; concurrent first
/// computations may race but produce identical bases.
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    cache: Mutex<HashMap<TermOrder, Arc<ReducedGB>>>,
}

impl Ideal {
    pub fn new(ring: Ring, generators: impl IntoIterator<Item = Polynomial>) -> Result<Self, GroebnerError> {
        let mut gens = Vec::new();
        for g in generators {
            if g.ring() != ring {
                return Err(GroebnerError::AmbientMismatch);
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal { ring, generators: gens, cache: Mutex::new(HashMap::new()) })
    }

    pub fn principal(f: Polynomial) -> Self {
        Ideal::new(f.ring(), [f]).expect("single generator")
    }

    pub fn zero(ring: Ring) -> Self {
        Ideal { ring, generators: Vec::new(), cache: Mutex::new(HashMap::new()) }
    }

    pub fn unit(ring: Ring, order: TermOrder) -> Self {
        Ideal::principal(Polynomial::one(ring, order))
    }

    /// An ideal whose generators are a known reduced basis.
    pub fn from_reduced(ring: Ring, gb: ReducedGB) -> Self {
        let ideal = Ideal { ring, generators: gb.basis.clone(), cache: Mutex::new(HashMap::new()) };
        ideal.cache.lock().expect("cache lock").insert(gb.order.clone(), Arc::new(gb));
        ideal
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner(&self, order: &TermOrder) -> Result<Arc<ReducedGB>, GroebnerError> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(order) {
            return Ok(gb.clone());
        }
        order.check_arity(self.ring.nvars())?;
        let gens = self.generators.iter().map(|g| g.with_order(order)).collect::<Result<Vec<_>, _>>()?;
        let gb = Arc::new(ReducedGB { order: order.clone(), basis: reduced_basis(gens) });
        let mut cache = self.cache.lock().expect("cache lock");
        Ok(cache.entry(order.clone()).or_insert(gb).clone())
    }

    pub fn initial_ideal(&self, order: &TermOrder) -> Result<MonomialIdeal, GroebnerError> {
        Ok(self.groebner(order)?.initial_ideal(self.ring.nvars()))
    }
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("cache lock").clone();
        Ideal { ring: self.ring, generators: self.generators.clone(), cache: Mutex::new(cache) }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal").field("ring", &self.ring).field("generators", &self.generators).finish()
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        if parts.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", parts.join(", "))
        }
    }
}

fn check_pair(a: Ring, b: Ring) -> Result<(), GroebnerError> {
    if a == b {
        Ok(())
    } else {
        Err(GroebnerError::AmbientMismatch)
    }
}

/// `lcm/lt(f) * f/lc(f) - lcm/lt(g) * g/lc(g)`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &TermOrder) -> Result<Polynomial, GroebnerError> {
    check_pair(f.ring(), g.ring())?;
    let f = f.with_order(order)?;
    let g = g.with_order(order)?;
    let (Some(lf), Some(lg)) = (f.lead(), g.lead()) else {
        return Err(PolyError::ZeroPolynomial.into());
    };
    Ok(spoly(&f, &g, &lf.mono.lcm(&lg.mono)))
}

fn spoly(f: &Polynomial, g: &Polynomial, lcm: &Monomial) -> Polynomial {
    let lf = f.lead().expect("nonzero");
    let lg = g.lead().expect("nonzero");
    let a = f.mul_monomial(&lcm.div(&lf.mono).expect("lcm")).scale(&lf.coeff.inv().expect("nonzero"));
    let b = g.mul_monomial(&lcm.div(&lg.mono).expect("lcm")).scale(&lg.coeff.inv().expect("nonzero"));
    &a - &b
}

/// Remainder of `f` on division by `divisors`: the highest reducible term
/// is always eliminated first, using the first divisor (in list order)
/// whose leading monomial divides it.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial], order: &TermOrder) -> Result<Polynomial, GroebnerError> {
    let f = f.with_order(order)?;
    let gs = divisors
        .iter()
        .map(|g| {
            check_pair(f.ring(), g.ring())?;
            Ok(g.with_order(order)?)
        })
        .collect::<Result<Vec<_>, GroebnerError>>()?;
    let refs: Vec<&Polynomial> = gs.iter().filter(|g| !g.is_zero()).collect();
    Ok(reduce(&f, &refs))
}

fn reduce(f: &Polynomial, divisors: &[&Polynomial]) -> Polynomial {
    let tagged: Vec<(&Polynomial, u32)> = divisors.iter().map(|g| (*g, 0)).collect();
    reduce_with_sugar(f, 0, &tagged, Grading::Standard).0
}

/// Degree used for sugar. Elimination rings give `t` weight zero, so
/// `t*g` and `(1-t)*h` stay homogeneous when `g` and `h` are.
#[derive(Copy, Clone, Debug)]
enum Grading {
    Standard,
    Skip(usize),
}

impl Grading {
    fn of(ring: Ring) -> Self {
        ring.t_slot().map_or(Grading::Standard, Grading::Skip)
    }

    fn degree(self, m: &Monomial) -> u32 {
        match self {
            Grading::Standard => m.degree(),
            Grading::Skip(k) => m.degree() - u32::from(m.exponents()[k]),
        }
    }

    fn top(self, f: &Polynomial) -> u32 {
        f.terms().iter().map(|t| self.degree(&t.mono)).max().unwrap_or(0)
    }

    fn is_homogeneous(self, f: &Polynomial) -> bool {
        f.terms().windows(2).all(|w| self.degree(&w[0].mono) == self.degree(&w[1].mono))
    }
}

/// Full reduction that also tracks the sugar of the result: each step
/// `f - c*q*g` raises it to at least `deg q + sugar(g)`.
fn reduce_with_sugar(f: &Polynomial, sugar: u32, divisors: &[(&Polynomial, u32)], grading: Grading) -> (Polynomial, u32) {
    let mut rest = f.clone();
    let mut sugar = sugar;
    let mut remainder = Vec::new();
    while let Some(t) = rest.lead() {
        let hit = divisors.iter().find_map(|(g, sg)| {
            let lg = g.lead()?;
            t.mono.div(&lg.mono).map(|q| (q, *g, &lg.coeff, *sg))
        });
        match hit {
            Some((q, g, lc, sg)) => {
                let c = t.coeff.div(lc).expect("nonzero leading coefficient");
                sugar = sugar.max(grading.degree(&q) + sg);
                rest = rest.sub_scaled(&c, &q, g);
            }
            None => remainder.push(rest.pop_lead().expect("nonempty")),
        }
    }
    (Polynomial::from_sorted_terms(f.ring(), f.order().clone(), remainder), sugar)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Buchberger {
    order: TermOrder,
    basis: Vec<Polynomial>,
    leads: Vec<Monomial>,
    /// Degree bound each element would have after homogenising the input.
    sugar: Vec<u32>,
    /// Select pairs by sugar (homogeneous input) or by lcm alone.
    use_sugar: bool,
    grading: Grading,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Buchberger {
    fn new(order: TermOrder, use_sugar: bool, grading: Grading) -> Self {
        Buchberger {
            order,
            basis: Vec::new(),
            leads: Vec::new(),
            sugar: Vec::new(),
            use_sugar,
            grading,
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    /// Active elements with their sugar, smallest leading monomial first.
    fn reducers(&self) -> Vec<(&Polynomial, u32)> {
        let mut out: Vec<usize> = (0..self.basis.len()).filter(|&i| self.active[i]).collect();
        out.sort_by(|&a, &b| self.order.cmp(&self.leads[a], &self.leads[b]));
        out.into_iter().map(|i| (&self.basis[i], self.sugar[i])).collect()
    }

    /// Gebauer-Möller update with the new element `h`.
    fn update(&mut self, h: Polynomial, sugar: u32) {
        let lh = h.leading_monomial().expect("nonzero").clone();
        let k = self.basis.len();
        let candidates: Vec<(usize, Monomial)> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| (i, self.leads[i].lcm(&lh)))
            .collect();

        // keep a new pair unless another new pair's lcm properly divides it
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (i, l)) in candidates.iter().enumerate() {
            let coprime = self.leads[*i].is_coprime(&lh);
            let dominated = candidates[idx + 1..].iter().chain(kept.iter()).any(|(_, l2)| l2.divides(l) && l2 != l)
                || kept.iter().any(|(_, l2)| l2 == l);
            if coprime || !dominated {
                kept.push((*i, l.clone()));
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|(i, _)| !self.leads[*i].is_coprime(&lh))
            .map(|(i, lcm)| {
                let g = self.grading;
                let si = self.sugar[i] + g.degree(&lcm) - g.degree(&self.leads[i]);
                let sh = sugar + g.degree(&lcm) - g.degree(&lh);
                Pair { i, j: k, lcm, sugar: si.max(sh) }
            })
            .collect();

        let leads = &self.leads;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && leads[p.i].lcm(&lh) != p.lcm && leads[p.j].lcm(&lh) != p.lcm)
        });
        self.pairs.extend(fresh);

        for i in 0..k {
            if self.active[i] && lh.divides(&self.leads[i]) {
                self.active[i] = false;
            }
        }
        self.basis.push(h);
        self.leads.push(lh);
        self.sugar.push(sugar);
        self.active.push(true);
    }

    /// Smallest sugar first when the input is homogeneous, then smallest
    /// lcm under the term order.
    fn next_pair(&mut self) -> Option<Pair> {
        let order = &self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let by_sugar = if self.use_sugar { a.sugar.cmp(&b.sugar) } else { std::cmp::Ordering::Equal };
                by_sugar.then_with(|| order.cmp(&a.lcm, &b.lcm)).then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(idx, _)| idx)?;
        Some(self.pairs.swap_remove(best))
    }

    fn run(mut self, gens: Vec<Polynomial>) -> Vec<Polynomial> {
        for g in gens {
            let (h, sugar) = reduce_with_sugar(&g, self.grading.top(&g), &self.reducers(), self.grading);
            if !h.is_zero() {
                self.update(h.primitive(), sugar);
            }
        }
        while let Some(p) = self.next_pair() {
            let s = spoly(&self.basis[p.i], &self.basis[p.j], &p.lcm);
            let (h, sugar) = reduce_with_sugar(&s, p.sugar, &self.reducers(), self.grading);
            if !h.is_zero() {
                self.update(h.primitive(), sugar);
            }
        }
        self.basis.into_iter().zip(self.active).filter(|(_, a)| *a).map(|(g, _)| g).collect()
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, all of which
/// must share one ring and order.
fn reduced_basis(mut gens: Vec<Polynomial>) -> Vec<Polynomial> {
    gens.retain(|g| !g.is_zero());
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let order = first.order().clone();
    if gens.iter().any(Polynomial::is_unit) {
        return vec![Polynomial::one(first.ring(), order)];
    }
    gens.sort_by(|a, b| {
        order.cmp(a.leading_monomial().expect("nonzero"), b.leading_monomial().expect("nonzero"))
    });
    let grading = Grading::of(gens[0].ring());
    let homogeneous = gens.iter().all(|g| grading.is_homogeneous(g));
    let minimal = Buchberger::new(order.clone(), homogeneous, grading).run(gens);
    let mut out: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<&Polynomial> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g).collect();
            reduce(&minimal[i], &others).monic()
        })
        .collect();
    out.sort_by(|a, b| order.cmp(a.leading_monomial().expect("nonzero"), b.leading_monomial().expect("nonzero")));
    out
}

/// Computes (and caches on `ideal`) the reduced Gröbner basis for `order`.
pub fn buchberger(ideal: &Ideal, order: &TermOrder) -> Result<Arc<ReducedGB>, GroebnerError> {
    ideal.groebner(order)
}

/// Reduced Gröbner basis of an explicit generator list.
pub fn groebner_basis(generators: &[Polynomial], order: &TermOrder) -> Result<ReducedGB, GroebnerError> {
    let gens = generators.iter().map(|g| g.with_order(order)).collect::<Result<Vec<_>, _>>()?;
    if gens.windows(2).any(|w| w[0].ring() != w[1].ring()) {
        return Err(GroebnerError::AmbientMismatch);
    }
    Ok(ReducedGB { order: order.clone(), basis: reduced_basis(gens) })
}

pub fn initial_ideal(ideal: &Ideal, order: &TermOrder) -> Result<MonomialIdeal, GroebnerError> {
    ideal.initial_ideal(order)
}

pub fn ideal_member(f: &Polynomial, ideal: &Ideal, order: &TermOrder) -> Result<bool, GroebnerError> {
    check_pair(f.ring(), ideal.ring())?;
    Ok(ideal.groebner(order)?.contains(f))
}

pub fn ideal_equal(a: &Ideal, b: &Ideal, order: &TermOrder) -> Result<bool, GroebnerError> {
    check_pair(a.ring(), b.ring())?;
    Ok(a.groebner(order)?.basis == b.groebner(order)?.basis)
}

/// `inner ⊆ outer`.
pub fn ideal_contains(outer: &Ideal, inner: &Ideal, order: &TermOrder) -> Result<bool, GroebnerError> {
    check_pair(outer.ring(), inner.ring())?;
    let gb = outer.groebner(order)?;
    Ok(inner.generators().iter().all(|g| gb.contains(g)))
}

/// True iff every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn satisfies_buchberger_criterion(basis: &[Polynomial]) -> bool {
    let refs: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    for (i, f) in refs.iter().enumerate() {
        for g in &refs[i + 1..] {
            let (lf, lg) = (f.leading_monomial().expect("nonzero"), g.leading_monomial().expect("nonzero"));
            if lf.is_coprime(lg) {
                continue;
            }
            if !reduce(&spoly(f, g, &lf.lcm(lg)), &refs).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Whether the union of the two reduced bases is itself a Gröbner basis
/// (of `a + b`).
pub fn is_union_groebner(a: &Ideal, b: &Ideal, order: &TermOrder) -> Result<bool, GroebnerError> {
    check_pair(a.ring(), b.ring())?;
    let (ga, gb) = (a.groebner(order)?, b.groebner(order)?);
    let mut union: Vec<Polynomial> = ga.basis().to_vec();
    for g in gb.basis() {
        if !union.contains(g) {
            union.push(g.clone());
        }
    }
    Ok(satisfies_buchberger_criterion(&union))
}
