//! Monomial ideals and their numerical invariants: Hilbert numerator,
//! h-vector, Krull dimension, height and multiplicity. Also the closed
//! forms for Hankel determinantal rings and the h-vector of the sum of two
//! linked components.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::poly::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
}

/// A monomial ideal given by its minimal generators, kept in canonical
/// order (degree, then lexicographically descending exponents).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        MonomialIdeal { nvars, gens: minimalize(gens.into_iter().collect()) }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![Monomial::one(nvars)] }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(Monomial::is_one)
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().chain(&other.gens).cloned())
    }

    /// `self : (m)`.
    pub fn colon_monomial(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.nvars, self.gens.iter().map(|g| g.saturating_div(m)))
    }

    pub fn is_squarefree(&self) -> bool {
        squarefree_test(self)
    }
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.exponents().cmp(a.exponents())));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.gens.iter().map(|g| g.to_string()))
    }
}

/// True iff every minimal generator is squarefree.
pub fn squarefree_test(m: &MonomialIdeal) -> bool {
    m.gens.iter().all(Monomial::is_squarefree)
}

/// Intersection of monomial ideals via pairwise lcms.
pub fn monomial_intersect(a: &MonomialIdeal, b: &MonomialIdeal) -> MonomialIdeal {
    let lcms = a.gens.iter().flat_map(|x| b.gens.iter().map(move |y| x.lcm(y)));
    MonomialIdeal::new(a.nvars, lcms)
}

/// h-vector: coefficients of the Hilbert-series numerator after all
/// `(1 - z)` factors have been cancelled. Entries may be negative for
/// general monomial ideals.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct HVector(Vec<i64>);

impl HVector {
    pub fn new(mut entries: Vec<i64>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        HVector(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// h(1).
    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Numerical invariants of `S/M`. For the unit ideal the quotient is zero:
/// the h-vector is empty, and dimension and height are `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSummary {
    pub h_vector: HVector,
    #[serde(rename = "dim")]
    pub dimension: Option<usize>,
    pub height: Option<usize>,
    pub multiplicity: i64,
    pub unit: bool,
}

/// Numerator `K(z)` of the Hilbert series `K(z) / (1 - z)^n` of `S/M`.
pub fn hilbert_numerator(m: &MonomialIdeal) -> Vec<i64> {
    trim(numerator_rec(m.gens.clone()))
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens[0].is_one() {
        return vec![0];
    }
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![1];
        for g in &gens {
            acc = poly_mul(&acc, &one_minus_z_pow(g.degree() as usize));
        }
        return acc;
    }
    let mut rest = gens;
    let last = rest.pop().expect("nonempty");
    let colon = minimalize(rest.iter().map(|g| g.saturating_div(&last)).collect());
    let a = numerator_rec(rest);
    let b = numerator_rec(colon);
    let mut shifted = vec![0; last.degree() as usize];
    shifted.extend(b);
    poly_sub(&a, &shifted)
}

fn one_minus_z_pow(d: usize) -> Vec<i64> {
    let mut v = vec![0; d + 1];
    v[0] = 1;
    v[d] -= 1;
    v
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Hilbert summary of `S/M` with `S` the ambient ring of `M`.
pub fn hilbert_summary(m: &MonomialIdeal) -> HilbertSummary {
    let n = m.nvars;
    let mut num = hilbert_numerator(m);
    if num.iter().all(|&c| c == 0) {
        return HilbertSummary { h_vector: HVector(Vec::new()), dimension: None, height: None, multiplicity: 0, unit: true };
    }
    let mut cancelled = 0;
    while num.iter().sum::<i64>() == 0 {
        // divide by (1 - z): q_0 = a_0, q_i = a_i + q_{i-1}
        let mut q = Vec::with_capacity(num.len() - 1);
        let mut run = 0;
        for &a in &num[..num.len() - 1] {
            run += a;
            q.push(run);
        }
        num = trim(q);
        cancelled += 1;
    }
    let d = n - cancelled;
    let h = HVector::new(num);
    let e = h.sum();
    HilbertSummary { h_vector: h, dimension: Some(d), height: Some(n - d), multiplicity: e, unit: false }
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn check_ts(t: usize, s: usize) -> Result<(), CombinatoricsError> {
    if t == 0 || t > s {
        return Err(CombinatoricsError::OutOfRange(format!("need 1 <= t <= s, got t={t}, s={s}")));
    }
    Ok(())
}

/// h-vector of `S/I_t(H)` for a generic Hankel matrix `H` of size `t x s`:
/// `h_i = C(s - t + i, i)` for `i < t`.
pub fn theoretical_hankel_hvector(t: usize, s: usize) -> Result<HVector, CombinatoricsError> {
    check_ts(t, s)?;
    let (t, s) = (t as i64, s as i64);
    Ok(HVector::new((0..t).map(|i| binomial(s - t + i, i)).collect()))
}

pub fn theoretical_hankel_multiplicity(t: usize, s: usize) -> Result<i64, CombinatoricsError> {
    Ok(theoretical_hankel_hvector(t, s)?.sum())
}

/// Height of the ideal of `minor_size`-minors of a Hankel matrix in
/// `nvars` variables: `nvars - 2 * minor_size + 2`.
pub fn theoretical_hankel_height(minor_size: usize, nvars: usize) -> Result<usize, CombinatoricsError> {
    if minor_size == 0 || 2 * minor_size > nvars + 1 {
        return Err(CombinatoricsError::OutOfRange(format!(
            "no {minor_size}-minors of a Hankel matrix in {nvars} variables"
        )));
    }
    Ok(nvars + 2 - 2 * minor_size)
}

/// Which pair of linked components is being summed.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SumCase {
    /// `I_t(P1) + I_t(P2)`, given the h-vector of `S/I_t(P1)`.
    P1P2,
    /// `I_t(X) + I_{t-1}(Q)`, given the h-vector of `S/I_t(X)`.
    XQ,
}

/// Palindromic partial sums of `h_I` (whose length is `t`). The `P1P2` case
/// peaks once at the full sum; the `XQ` case repeats the partial sum up to
/// index `t - 2` twice in the middle. For `XQ` with `t = 1` the sum is the
/// unit ideal and the result is empty.
pub fn sum_hvector_from_parts(h_i: &HVector, case: SumCase) -> HVector {
    let t = h_i.len();
    let partial: Vec<i64> = h_i
        .entries()
        .iter()
        .scan(0, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    let rising: &[i64] = match case {
        SumCase::P1P2 => &partial,
        SumCase::XQ => &partial[..t.saturating_sub(1)],
    };
    let mut out = rising.to_vec();
    let tail_len = match case {
        SumCase::P1P2 => rising.len().saturating_sub(1),
        SumCase::XQ => rising.len(),
    };
    out.extend(rising[..tail_len].iter().rev());
    HVector(out)
}

/// Every nonzero squarefree monomial ideal of a ring in `nvars` variables,
/// by direct enumeration of antichains of subsets of the variables.
pub fn squarefree_monomial_ideals(nvars: usize) -> Result<Vec<MonomialIdeal>, CombinatoricsError> {
    if nvars > 5 {
        return Err(CombinatoricsError::OutOfRange(format!("antichain enumeration needs nvars <= 5, got {nvars}")));
    }
    let subsets: Vec<u32> = (0..1u32 << nvars).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<u32> = Vec::new();
    antichains(&subsets, 0, &mut chosen, &mut |ac| {
        if !ac.is_empty() {
            let gens = ac.iter().map(|&mask| {
                Monomial::from_support(nvars, &(0..nvars).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            });
            out.push(MonomialIdeal::new(nvars, gens));
        }
    });
    Ok(out)
}

fn antichains(subsets: &[u32], from: usize, chosen: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    emit(chosen);
    for i in from..subsets.len() {
        let s = subsets[i];
        if chosen.iter().all(|&c| c & s != c && c & s != s) {
            chosen.push(s);
            antichains(subsets, i + 1, chosen, emit);
            chosen.pop();
        }
    }
}
