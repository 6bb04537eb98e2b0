//! The Knutson family of a polynomial with squarefree leading term: the
//! smallest family containing `(f)` that is closed under sums,
//! intersections and minimal primes. Minimal primes are reached as colons
//! `I : (c)` over a finite pool of witnesses `c`.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::{monomial_intersect, MonomialIdeal};
use crate::groebner::{is_union_groebner, GroebnerError, Ideal, ReducedGB};
use crate::ideal_ops::{ideal_intersect, ideal_sum, minimal_prime_by_witness, IdealOpError};
use crate::poly::{LeadingTerm, Monomial, Polynomial, Ring, TermOrder};

pub const DEFAULT_MAX_MEMBERS: usize = 10_000;
pub const DEFAULT_MAX_ITERATIONS: usize = 1_000;

#[derive(Debug, Error)]
pub enum KnutsonError {
    #[error("seed is zero")]
    ZeroSeed,
    #[error("seed rejected: leading monomial {0} is not squarefree")]
    SeedRejected(Monomial),
    #[error("member {key} has non-squarefree initial ideal {initial}")]
    SquarefreeViolation { key: String, initial: MonomialIdeal },
    #[error("closure cap exceeded: {reason}")]
    ClosureCapExceeded { reason: String, partial: Box<KnutsonFamily> },
    #[error("witness or seed lives in a different ring")]
    AmbientMismatch,
    #[error(transparent)]
    Op(#[from] IdealOpError),
}

impl From<GroebnerError> for KnutsonError {
    fn from(e: GroebnerError) -> Self {
        KnutsonError::Op(e.into())
    }
}

/// Where colon witnesses come from, and the closure caps.
#[derive(Clone, Debug)]
pub struct WitnessPolicy {
    pub member_generators: bool,
    pub single_variables: bool,
    pub user_supplied: Vec<Polynomial>,
    pub max_iterations: usize,
    pub max_members: usize,
}

impl Default for WitnessPolicy {
    fn default() -> Self {
        WitnessPolicy {
            member_generators: true,
            single_variables: true,
            user_supplied: Vec::new(),
            max_iterations: DEFAULT_MAX_ITERATIONS,
            max_members: DEFAULT_MAX_MEMBERS,
        }
    }
}

impl WitnessPolicy {
    /// No witnesses at all: closure under sums and intersections only.
    pub fn empty() -> Self {
        WitnessPolicy { member_generators: false, single_variables: false, ..Default::default() }
    }

    pub fn with_witnesses(mut self, witnesses: impl IntoIterator<Item = Polynomial>) -> Self {
        self.user_supplied.extend(witnesses);
        self
    }
}

/// How a member was first produced. Indices refer to earlier members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Provenance {
    Seed,
    Sum { left: usize, right: usize },
    Intersection { left: usize, right: usize },
    Colon { parent: usize, witness: String },
}

impl Provenance {
    pub fn parents(&self) -> Vec<usize> {
        match self {
            Provenance::Seed => vec![],
            Provenance::Sum { left, right } | Provenance::Intersection { left, right } => vec![*left, *right],
            Provenance::Colon { parent, .. } => vec![*parent],
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Seed => write!(f, "seed"),
            Provenance::Sum { left, right } => write!(f, "#{left} + #{right}"),
            Provenance::Intersection { left, right } => write!(f, "#{left} ∩ #{right}"),
            Provenance::Colon { parent, witness } => write!(f, "#{parent} : ({witness})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Member {
    ideal: Ideal,
    gb: Arc<ReducedGB>,
    initial: MonomialIdeal,
    provenance: Provenance,
}

impl Member {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn groebner(&self) -> &ReducedGB {
        &self.gb
    }

    pub fn key(&self) -> String {
        self.gb.key()
    }

    pub fn initial_ideal(&self) -> &MonomialIdeal {
        &self.initial
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_unit(&self) -> bool {
        self.gb.is_unit()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ClosureStats {
    pub iterations: usize,
    pub peak_candidates: usize,
    pub candidates: usize,
    pub witnesses: usize,
}

/// A family of ideals keyed by reduced Gröbner basis under one order.
#[derive(Clone, Debug)]
pub struct KnutsonFamily {
    seed: Polynomial,
    order: TermOrder,
    members: Vec<Member>,
    index: HashMap<String, usize>,
    /// For pairs `(i, j)` with `i < j`: the member indices of the sum and of
    /// the intersection.
    pairs: HashMap<(usize, usize), (usize, usize)>,
    witnesses: Vec<Polynomial>,
    stats: ClosureStats,
}

impl KnutsonFamily {
    pub fn seed(&self) -> &Polynomial {
        &self.seed
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn ring(&self) -> Ring {
        self.seed.ring()
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn stats(&self) -> &ClosureStats {
        &self.stats
    }

    pub fn witnesses(&self) -> &[Polynomial] {
        &self.witnesses
    }

    pub fn keys(&self) -> Vec<String> {
        self.members.iter().map(Member::key).collect()
    }

    pub fn index_of_key(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Recorded `(sum, intersection)` member indices for a pair.
    pub fn pair_results(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        self.pairs.get(&(i.min(j), i.max(j))).copied()
    }

    /// The member and all its ancestors, oldest first.
    pub fn provenance_chain(&self, idx: usize) -> Vec<usize> {
        let mut seen = HashSet::new();
        let mut stack = vec![idx];
        while let Some(i) = stack.pop() {
            if seen.insert(i) {
                stack.extend(self.members[i].provenance.parents());
            }
        }
        let mut chain: Vec<usize> = seen.into_iter().collect();
        chain.sort_unstable();
        chain
    }

    fn insert(&mut self, ideal: Ideal, gb: Arc<ReducedGB>, provenance: Provenance) -> Result<(usize, bool), KnutsonError> {
        let key = gb.key();
        if let Some(&i) = self.index.get(&key) {
            return Ok((i, false));
        }
        let initial = gb.initial_ideal(self.ring().nvars());
        if !initial.is_squarefree() {
            return Err(KnutsonError::SquarefreeViolation { key, initial });
        }
        let idx = self.members.len();
        self.index.insert(key, idx);
        self.members.push(Member { ideal, gb, initial, provenance });
        Ok((idx, true))
    }
}

/// Returns `lt(f)` if it is squarefree.
pub fn seed_check(f: &Polynomial, order: &TermOrder) -> Result<LeadingTerm, KnutsonError> {
    if f.is_zero() {
        return Err(KnutsonError::ZeroSeed);
    }
    let lt = crate::poly::leading_term(f, order).map_err(GroebnerError::from)?;
    if !lt.monomial.is_squarefree() {
        return Err(KnutsonError::SeedRejected(lt.monomial));
    }
    Ok(lt)
}

/// Computes the family generated by `(f)` up to the witness pool of
/// `policy`.
pub fn closure(f: &Polynomial, policy: &WitnessPolicy, order: &TermOrder) -> Result<KnutsonFamily, KnutsonError> {
    seed_check(f, order)?;
    if policy.user_supplied.iter().any(|w| w.ring() != f.ring()) {
        return Err(KnutsonError::AmbientMismatch);
    }
    let seed = f.with_order(order).map_err(GroebnerError::from)?;
    let ideal = Ideal::principal(seed.clone());
    let gb = ideal.groebner(order)?;
    let mut family = KnutsonFamily {
        seed,
        order: order.clone(),
        members: Vec::new(),
        index: HashMap::new(),
        pairs: HashMap::new(),
        witnesses: Vec::new(),
        stats: ClosureStats::default(),
    };
    family.insert(ideal, gb, Provenance::Seed)?;
    run_to_fixpoint(family, policy)
}

/// Runs the closure again on an existing family; a fixpoint is returned
/// unchanged (apart from the stats).
pub fn saturate(family: KnutsonFamily, policy: &WitnessPolicy) -> Result<KnutsonFamily, KnutsonError> {
    let mut family = family;
    family.witnesses.clear();
    family.stats = ClosureStats::default();
    run_to_fixpoint(family, policy)
}

#[derive(Clone, Copy, Debug)]
enum Candidate {
    Sum(usize, usize),
    Intersection(usize, usize),
    Colon(usize, usize),
}

struct Pool {
    list: Vec<Polynomial>,
    seen: HashSet<Polynomial>,
}

impl Pool {
    fn push(&mut self, w: &Polynomial, order: &TermOrder) {
        if w.is_zero() || w.is_unit() {
            return;
        }
        let w = w.with_order(order).expect("same ring").primitive();
        if self.seen.insert(w.clone()) {
            self.list.push(w);
        }
    }
}

fn run_to_fixpoint(mut family: KnutsonFamily, policy: &WitnessPolicy) -> Result<KnutsonFamily, KnutsonError> {
    let order = family.order.clone();
    let ring = family.ring();
    let mut pool = Pool { list: Vec::new(), seen: HashSet::new() };
    for w in &policy.user_supplied {
        pool.push(w, &order);
    }
    if policy.single_variables {
        for k in 0..ring.nvars() {
            pool.push(&Polynomial::variable(ring, order.clone(), k).expect("in range"), &order);
        }
    }
    let mut fed = 0;
    let (mut prev_members, mut prev_pool) = (0, 0);

    loop {
        if policy.member_generators {
            for m in &family.members[fed..] {
                for g in m.gb.basis() {
                    pool.push(g, &order);
                }
            }
        }
        fed = family.members.len();
        let (nm, nw) = (family.members.len(), pool.list.len());
        if nm == prev_members && nw == prev_pool && family.stats.iterations > 0 {
            break;
        }
        if family.stats.iterations >= policy.max_iterations {
            family.witnesses = pool.list;
            return Err(KnutsonError::ClosureCapExceeded {
                reason: format!("more than {} iterations", policy.max_iterations),
                partial: Box::new(family),
            });
        }
        family.stats.iterations += 1;

        let mut candidates = Vec::new();
        for j in prev_members..nm {
            for i in 0..j {
                candidates.push(Candidate::Sum(i, j));
                candidates.push(Candidate::Intersection(i, j));
            }
        }
        for i in 0..nm {
            for w in 0..nw {
                if i >= prev_members || w >= prev_pool {
                    candidates.push(Candidate::Colon(i, w));
                }
            }
        }
        family.stats.peak_candidates = family.stats.peak_candidates.max(candidates.len());
        family.stats.candidates += candidates.len();

        let results = candidates
            .par_iter()
            .map(|c| evaluate(&family, &pool.list, *c))
            .collect::<Result<Vec<_>, _>>()?;

        let mut pending: HashMap<(usize, usize), (Option<usize>, Option<usize>)> = HashMap::new();
        for (cand, (ideal, gb)) in candidates.iter().zip(results) {
            let provenance = match *cand {
                Candidate::Sum(i, j) => Provenance::Sum { left: i, right: j },
                Candidate::Intersection(i, j) => Provenance::Intersection { left: i, right: j },
                Candidate::Colon(i, w) => Provenance::Colon { parent: i, witness: pool.list[w].to_string() },
            };
            let (idx, _) = family.insert(ideal, gb, provenance)?;
            match *cand {
                Candidate::Sum(i, j) => pending.entry((i, j)).or_default().0 = Some(idx),
                Candidate::Intersection(i, j) => pending.entry((i, j)).or_default().1 = Some(idx),
                Candidate::Colon(..) => {}
            }
            if family.members.len() > policy.max_members {
                family.witnesses = pool.list;
                return Err(KnutsonError::ClosureCapExceeded {
                    reason: format!("more than {} members", policy.max_members),
                    partial: Box::new(family),
                });
            }
        }
        for (pair, (s, x)) in pending {
            family.pairs.insert(pair, (s.expect("sum recorded"), x.expect("intersection recorded")));
        }
        prev_members = nm;
        prev_pool = nw;
    }
    family.stats.witnesses = pool.list.len();
    family.witnesses = pool.list;
    Ok(family)
}

fn contains_all(outer: &ReducedGB, inner: &ReducedGB) -> bool {
    inner.basis().iter().all(|g| outer.contains(g))
}

fn evaluate(family: &KnutsonFamily, pool: &[Polynomial], cand: Candidate) -> Result<(Ideal, Arc<ReducedGB>), KnutsonError> {
    let order = &family.order;
    let ring = family.ring();
    let ideal = match cand {
        Candidate::Sum(i, j) | Candidate::Intersection(i, j) => {
            let (a, b) = (&family.members[i], &family.members[j]);
            let a_in_b = contains_all(&b.gb, &a.gb);
            let b_in_a = contains_all(&a.gb, &b.gb);
            let is_sum = matches!(cand, Candidate::Sum(..));
            match (a_in_b, b_in_a, is_sum) {
                (true, _, true) => b.ideal.clone(),
                (_, true, true) => a.ideal.clone(),
                (true, _, false) => a.ideal.clone(),
                (_, true, false) => b.ideal.clone(),
                (false, false, true) => ideal_sum(&a.ideal, &b.ideal)?,
                (false, false, false) => ideal_intersect(&a.ideal, &b.ideal, order)?,
            }
        }
        Candidate::Colon(i, w) => {
            let m = &family.members[i];
            let c = &pool[w];
            if m.is_unit() || m.gb.contains(c) {
                Ideal::unit(ring, order.clone())
            } else {
                minimal_prime_by_witness(&m.ideal, c, order)?
            }
        }
    };
    let gb = ideal.groebner(order)?;
    Ok((Ideal::from_reduced(ring, (*gb).clone()), gb))
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub check: String,
    pub members: Vec<usize>,
    pub detail: String,
}

/// Outcome of [`certify_family`]; counts are of members or pairs that
/// passed.
#[derive(Clone, Debug, Default, Serialize)]
pub struct FamilyCertificate {
    pub members: usize,
    pub pairs: usize,
    pub squarefree_initial: usize,
    pub union_groebner: usize,
    pub initial_of_intersection: usize,
    pub initial_of_sum: usize,
    pub distinct_initials: bool,
    pub violations: Vec<Violation>,
}

impl FamilyCertificate {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks, for every member, a squarefree initial ideal, and for every pair
/// `I, J`: the union of reduced bases is a Gröbner basis,
/// `lt(I ∩ J) = lt(I) ∩ lt(J)` and `lt(I + J) = lt(I) + lt(J)`. Also checks
/// that distinct members have distinct initial ideals.
pub fn certify_family(family: &KnutsonFamily) -> Result<FamilyCertificate, KnutsonError> {
    let order = &family.order;
    let n = family.members.len();
    let mut cert = FamilyCertificate { members: n, distinct_initials: true, ..Default::default() };

    for (i, m) in family.members.iter().enumerate() {
        if m.initial.is_squarefree() {
            cert.squarefree_initial += 1;
        } else {
            cert.violations.push(Violation {
                check: "squarefree initial ideal".into(),
                members: vec![i],
                detail: m.initial.to_string(),
            });
        }
    }

    let mut initials: HashMap<String, usize> = HashMap::new();
    for (i, m) in family.members.iter().enumerate() {
        if let Some(&j) = initials.get(&m.initial.to_string()) {
            cert.distinct_initials = false;
            cert.violations.push(Violation {
                check: "distinct initial ideals".into(),
                members: vec![j, i],
                detail: m.initial.to_string(),
            });
        } else {
            initials.insert(m.initial.to_string(), i);
        }
    }

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    cert.pairs = pairs.len();
    let outcomes = pairs
        .par_iter()
        .map(|&(i, j)| certify_pair(family, order, i, j))
        .collect::<Result<Vec<_>, KnutsonError>>()?;
    for ((i, j), (union, inter, sum)) in pairs.into_iter().zip(outcomes) {
        let mut tally = |ok: bool, count: &mut usize, check: &str| {
            if ok {
                *count += 1;
            } else {
                cert.violations.push(Violation { check: check.into(), members: vec![i, j], detail: String::new() });
            }
        };
        let mut c = (cert.union_groebner, cert.initial_of_intersection, cert.initial_of_sum);
        tally(union, &mut c.0, "union of reduced bases is a Gröbner basis");
        tally(inter, &mut c.1, "lt(I ∩ J) = lt(I) ∩ lt(J)");
        tally(sum, &mut c.2, "lt(I + J) = lt(I) + lt(J)");
        (cert.union_groebner, cert.initial_of_intersection, cert.initial_of_sum) = c;
    }
    Ok(cert)
}

fn certify_pair(family: &KnutsonFamily, order: &TermOrder, i: usize, j: usize) -> Result<(bool, bool, bool), KnutsonError> {
    let (a, b) = (&family.members[i], &family.members[j]);
    let nvars = family.ring().nvars();
    let union = is_union_groebner(&a.ideal, &b.ideal, order)?;
    let (lt_sum, lt_int) = match family.pair_results(i, j) {
        Some((s, x)) => (family.members[s].initial.clone(), family.members[x].initial.clone()),
        None => (
            ideal_sum(&a.ideal, &b.ideal)?.initial_ideal(order)?,
            ideal_intersect(&a.ideal, &b.ideal, order)?.initial_ideal(order)?,
        ),
    };
    debug_assert_eq!(lt_sum.nvars(), nvars);
    let inter = lt_int == monomial_intersect(&a.initial, &b.initial);
    let sum = lt_sum == a.initial.sum(&b.initial);
    Ok((union, inter, sum))
}

/// Looks `ideal` up by reduced basis; on a hit returns the member index and
/// its provenance chain back to the seed.
pub fn family_contains(family: &KnutsonFamily, ideal: &Ideal) -> Result<Option<(usize, Vec<usize>)>, KnutsonError> {
    if ideal.ring() != family.ring() {
        return Err(KnutsonError::AmbientMismatch);
    }
    let key = ideal.groebner(&family.order)?.key();
    Ok(family.index_of_key(&key).map(|i| (i, family.provenance_chain(i))))
}
