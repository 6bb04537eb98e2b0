//! Independent oracles shared by the integration tests. The oracles use
//! only parsing and Gröbner keys from the library; `props` holds the
//! checks that put the library against them.
#![allow(dead_code)]

use std::collections::BTreeSet;

use knutson::combinatorics::MonomialIdeal;
use knutson::field::FieldDescriptor;
use knutson::groebner::Ideal;
use knutson::poly::{parse_polynomial, Ring, TermOrder};

pub type Exps = Vec<u16>;

/// Minimal generators of a monomial ideal, sorted.
pub fn minimalize(gens: impl IntoIterator<Item = Exps>) -> Vec<Exps> {
    let all: BTreeSet<Exps> = gens.into_iter().collect();
    let mut out: Vec<Exps> = all
        .iter()
        .filter(|g| !all.iter().any(|h| h != *g && divides(h, g)))
        .cloned()
        .collect();
    out.sort();
    out
}

pub fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn exps_of(m: &MonomialIdeal) -> Vec<Exps> {
    minimalize(m.generators().iter().map(|g| g.exponents().to_vec()))
}

pub fn lcm(a: &[u16], b: &[u16]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn monomial_intersection(a: &[Exps], b: &[Exps]) -> Vec<Exps> {
    minimalize(a.iter().flat_map(|x| b.iter().map(move |y| lcm(x, y))))
}

/// `a : b` for monomial ideals, as the intersection of `a : g` over the
/// generators `g` of `b`.
pub fn monomial_colon(a: &[Exps], b: &[Exps], nvars: usize) -> Vec<Exps> {
    let mut acc: Option<Vec<Exps>> = None;
    for g in b {
        let quotient: Vec<Exps> =
            minimalize(a.iter().map(|m| m.iter().zip(g).map(|(x, y)| x.saturating_sub(*y)).collect()));
        acc = Some(match acc {
            None => quotient,
            Some(prev) => monomial_intersection(&prev, &quotient),
        });
    }
    acc.unwrap_or_else(|| vec![vec![0; nvars]])
}

pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Hilbert data of `S/M` by counting standard monomials degree by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountedHilbert {
    pub h_vector: Vec<i64>,
    pub dimension: usize,
    pub multiplicity: i64,
}

impl CountedHilbert {
    pub fn height(&self, nvars: usize) -> usize {
        nvars - self.dimension
    }
}

fn monomials_of_degree(nvars: usize, d: u16) -> Vec<Exps> {
    if nvars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in monomials_of_degree(nvars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `None` for the unit ideal, whose quotient is zero.
pub fn counted_hilbert(gens: &[Exps], nvars: usize) -> Option<CountedHilbert> {
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return None;
    }
    // the numerator of the Hilbert series has degree at most deg lcm(gens)
    let bound: u16 = (0..nvars).map(|i| gens.iter().map(|g| g[i]).max().unwrap_or(0)).sum();
    let hf: Vec<i64> = (0..=bound)
        .map(|d| monomials_of_degree(nvars, d).iter().filter(|m| !gens.iter().any(|g| divides(g, m))).count() as i64)
        .collect();
    let mut k: Vec<i64> = (0..=bound as usize)
        .map(|d| (0..=d.min(nvars)).map(|j| (-1i64).pow(j as u32) * binom(nvars as i64, j as i64) * hf[d - j]).sum())
        .collect();
    while k.last() == Some(&0) {
        k.pop();
    }
    // divide by (1 - z) while 1 is a root
    let mut codim = 0;
    while k.iter().sum::<i64>() == 0 && !k.is_empty() {
        let mut q = Vec::with_capacity(k.len() - 1);
        let mut acc = 0;
        for c in &k[..k.len() - 1] {
            acc += c;
            q.push(acc);
        }
        k = q;
        while k.last() == Some(&0) {
            k.pop();
        }
        codim += 1;
    }
    Some(CountedHilbert { multiplicity: k.iter().sum(), h_vector: k, dimension: nvars - codim })
}

/// Faces of the complex of a squarefree monomial ideal: supports not
/// containing the support of any generator.
pub fn faces(gens: &[Exps], nvars: usize) -> Vec<u32> {
    let masks: Vec<u32> = gens
        .iter()
        .map(|g| g.iter().enumerate().filter(|(_, e)| **e > 0).fold(0, |acc, (i, _)| acc | 1 << i))
        .collect();
    (0u32..1 << nvars).filter(|s| !masks.iter().any(|m| m & s == *m)).collect()
}

/// Krull dimension of a Stanley–Reisner ring: the largest face size.
pub fn stanley_reisner_dimension(gens: &[Exps], nvars: usize) -> Option<usize> {
    faces(gens, nvars).iter().map(|s| s.count_ones() as usize).max()
}

/// h-vector from the f-vector: `sum_i f_{i-1} z^i (1 - z)^{d - i}`.
pub fn stanley_reisner_hvector(gens: &[Exps], nvars: usize) -> Option<Vec<i64>> {
    let faces = faces(gens, nvars);
    let d = faces.iter().map(|s| s.count_ones() as usize).max()?;
    let mut f = vec![0i64; d + 1];
    for s in &faces {
        f[s.count_ones() as usize] += 1;
    }
    let mut h = vec![0i64; d + 1];
    for (i, fi) in f.iter().enumerate() {
        for j in 0..=d - i {
            h[i + j] += fi * (-1i64).pow(j as u32) * binom((d - i) as i64, j as i64);
        }
    }
    while h.last() == Some(&0) {
        h.pop();
    }
    Some(h)
}

/// Every nonzero squarefree monomial ideal in `nvars <= 4` variables, as
/// minimal generator exponent lists, by brute force over antichains of the
/// subset lattice.
pub fn antichain_ideals(nvars: usize) -> BTreeSet<Vec<Exps>> {
    assert!(nvars <= 4, "brute force over 2^(2^n) families");
    let subsets: Vec<u32> = (0..1u32 << nvars).collect();
    let mut out = BTreeSet::new();
    for family in 1u64..1 << subsets.len() {
        let chosen: Vec<u32> = subsets.iter().copied().filter(|s| family >> s & 1 == 1).collect();
        let antichain = chosen.iter().all(|a| chosen.iter().all(|b| a == b || a & b != *a));
        if antichain {
            let gens: Vec<Exps> =
                chosen.iter().map(|s| (0..nvars).map(|i| (s >> i & 1) as u16).collect()).collect();
            out.insert(minimalize(gens));
        }
    }
    out
}

pub fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n).filter(|k| (2..*k).take_while(|d| d * d <= *k).all(|d| k % d != 0)).collect()
}

fn permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    if k == 0 {
        return vec![(vec![], true)];
    }
    let mut out = Vec::new();
    for (p, even) in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            // inserting at `pos` moves the new largest element past `len - pos` others
            let flips = (p.len() - pos) % 2 == 1;
            out.push((q, even ^ flips));
        }
    }
    out
}

/// All `t x t` minors of the Hankel matrix with `rows` rows whose entries
/// run `x_first .. x_last`, written out by the Leibniz formula.
pub fn hankel_minor_texts(rows: usize, first: usize, last: usize, t: usize) -> Vec<String> {
    let cols = last + 2 - rows - first;
    let choose = |n: usize| -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|s| s.count_ones() as usize == t).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
    };
    let mut out = Vec::new();
    for r in choose(rows) {
        for c in choose(cols) {
            let terms: Vec<String> = permutations(t)
                .into_iter()
                .map(|(p, even)| {
                    let factors: Vec<String> = (0..t).map(|i| format!("x{}", first + r[i] + c[p[i]])).collect();
                    format!("{}{}", if even { "+" } else { "-" }, factors.join("*"))
                })
                .collect();
            out.push(format!("0{}", terms.concat()));
        }
    }
    out
}

/// Ideal of all `t`-minors; `t = 0` is the unit ideal.
pub fn hankel_minor_ideal(ring: Ring, rows: usize, first: usize, last: usize, t: usize) -> Ideal {
    let order = TermOrder::Lex;
    if t == 0 {
        return Ideal::new(ring, [parse_polynomial("1", ring, &order).unwrap()]).unwrap();
    }
    let gens = hankel_minor_texts(rows, first, last, t).iter().map(|s| parse_polynomial(s, ring, &order).unwrap()).collect::<Vec<_>>();
    Ideal::new(ring, gens).unwrap()
}

pub fn sum_of(a: &Ideal, b: &Ideal) -> Ideal {
    Ideal::new(a.ring(), a.generators().iter().chain(b.generators()).cloned()).unwrap()
}

pub fn rationals() -> FieldDescriptor {
    FieldDescriptor::RATIONALS
}
pub mod props;
