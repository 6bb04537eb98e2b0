//! Generic Hankel matrices, their determinantal ideals, and checks of the
//! Knutson-family structure built from `f = det(P) * det(P')`.
//!
//! Variables are shared with the ambient ring: entry `(i, j)` (1-based) of
//! `X_m^{(l,n)}` is `x_{l+i+j-2}`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::combinatorics::{
    hilbert_summary, sum_hvector_from_parts, theoretical_hankel_height, theoretical_hankel_hvector, HVector,
    HilbertSummary, SumCase,
};
use crate::field::FieldDescriptor;
use crate::groebner::{ideal_equal, GroebnerError, Ideal};
use crate::ideal_ops::{ideal_intersect, ideal_sum, IdealOpError};
use crate::knutson::{closure, family_contains, KnutsonError, KnutsonFamily, WitnessPolicy};
use crate::poly::{Monomial, Polynomial, Ring, TermOrder};
use crate::report::Check;

#[derive(Debug, Error)]
pub enum HankelError {
    #[error("invalid Hankel matrix: {0}")]
    InvalidSpec(String),
    #[error("minor size {t} out of range for a {rows}x{cols} matrix")]
    OutOfRange { t: usize, rows: usize, cols: usize },
    #[error("order is not diagonal: minor {minor} leads with {lead}, diagonal is {diagonal}")]
    OrderNotDiagonal { minor: String, lead: String, diagonal: String },
    #[error(transparent)]
    Knutson(#[from] KnutsonError),
    #[error(transparent)]
    Op(#[from] IdealOpError),
}

impl From<GroebnerError> for HankelError {
    fn from(e: GroebnerError) -> Self {
        HankelError::Op(e.into())
    }
}

/// `X_m^{(l,n)}`: `m` rows, entries `x_l .. x_n`, `n - m - l + 2` columns.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HankelSpec {
    pub m: usize,
    pub l: usize,
    pub n: usize,
}

impl HankelSpec {
    pub fn new(m: usize, l: usize, n: usize) -> Result<Self, HankelError> {
        if m == 0 || l == 0 || n + 2 < m + l + 1 {
            return Err(HankelError::InvalidSpec(format!("m={m}, l={l}, n={n} gives no columns")));
        }
        Ok(HankelSpec { m, l, n })
    }

    /// Square `m x m`, entries `x_1 .. x_{2m-1}`.
    pub fn square(m: usize) -> Result<Self, HankelError> {
        HankelSpec::new(m, 1, (2 * m).saturating_sub(1))
    }

    /// `m x (m+1)`, entries `x_1 .. x_{2m}`.
    pub fn rect(m: usize) -> Result<Self, HankelError> {
        HankelSpec::new(m, 1, 2 * m)
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n + 2 - self.m - self.l
    }

    pub fn min_dim(&self) -> usize {
        self.rows().min(self.cols())
    }

    /// Number of distinct entries.
    pub fn nentries(&self) -> usize {
        self.n + 1 - self.l
    }

    pub fn shape(&self) -> Option<Shape> {
        if self.l != 1 {
            None
        } else if self.n + 1 == 2 * self.m {
            Some(Shape::Square)
        } else if self.n == 2 * self.m {
            Some(Shape::Rect)
        } else {
            None
        }
    }
}

impl fmt::Display for HankelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X_{}^({},{})", self.m, self.l, self.n)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    Square,
    Rect,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::Square => "square",
            Shape::Rect => "rect",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SubmatrixRole {
    X,
    P1,
    P2,
    Q,
}

impl SubmatrixRole {
    pub const ALL: [SubmatrixRole; 4] = [SubmatrixRole::X, SubmatrixRole::P1, SubmatrixRole::P2, SubmatrixRole::Q];

    /// The submatrix of the square or `m x (m+1)` matrix `x`.
    pub fn of(self, x: HankelSpec) -> Result<HankelSpec, HankelError> {
        let shape = x.shape().ok_or_else(|| HankelError::InvalidSpec(format!("{x} is neither square nor m x (m+1)")))?;
        let (m, n) = (x.m, x.n);
        match (self, shape) {
            (SubmatrixRole::X, _) => Ok(x),
            // square: drop the last row / the first column / both
            (SubmatrixRole::P1, Shape::Square) => HankelSpec::new(m - 1, 1, n - 1),
            (SubmatrixRole::P2, Shape::Square) => HankelSpec::new(m, 2, n),
            (SubmatrixRole::Q, Shape::Square) => HankelSpec::new(m - 1, 2, n - 1),
            // m x (m+1): drop the last column / the first column / both
            (SubmatrixRole::P1, Shape::Rect) => HankelSpec::new(m, 1, n - 1),
            (SubmatrixRole::P2, Shape::Rect) => HankelSpec::new(m, 2, n),
            (SubmatrixRole::Q, Shape::Rect) => HankelSpec::new(m, 2, n - 1),
        }
    }
}

impl fmt::Display for SubmatrixRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn check_ring(spec: HankelSpec, ring: Ring) -> Result<(), HankelError> {
    if spec.n > ring.nvars() {
        return Err(HankelError::InvalidSpec(format!("{spec} needs {} variables, ring has {}", spec.n, ring.nvars())));
    }
    Ok(())
}

/// Entry `(i, j)` is the variable `x_{l+i+j-2}` (1-based).
pub fn build_matrix(spec: HankelSpec, ring: Ring, order: &TermOrder) -> Result<Vec<Vec<Polynomial>>, HankelError> {
    check_ring(spec, ring)?;
    Ok((0..spec.rows())
        .map(|i| {
            (0..spec.cols())
                .map(|j| Polynomial::variable(ring, order.clone(), spec.l + i + j - 1).expect("index checked"))
                .collect()
        })
        .collect())
}

/// Determinant of the submatrix on `rows` and the columns in `cols` (a bit
/// mask), by Laplace expansion along the last row, memoized over column
/// subsets.
fn subdeterminant(
    mat: &[Vec<Polynomial>],
    rows: &[usize],
    cols: u64,
    memo: &mut HashMap<u64, Polynomial>,
) -> Polynomial {
    if let Some(d) = memo.get(&cols) {
        return d.clone();
    }
    let k = cols.count_ones() as usize;
    let proto = &mat[0][0];
    let det = if k == 0 {
        Polynomial::one(proto.ring(), proto.order().clone())
    } else {
        let row = rows[k - 1];
        let mut acc = Polynomial::zero(proto.ring(), proto.order().clone());
        for (pos, c) in (0..64).filter(|c| cols >> c & 1 == 1).enumerate() {
            let sub = subdeterminant(mat, rows, cols & !(1 << c), memo);
            let term = &mat[row][c] * &sub;
            acc = if (k - 1 + pos).is_multiple_of(2) { &acc + &term } else { &acc - &term };
        }
        acc
    };
    memo.insert(cols, det.clone());
    det
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All distinct `t x t` minors, each checked to lead (under `order`) with
/// the product of its main diagonal.
pub fn minors(spec: HankelSpec, t: usize, ring: Ring, order: &TermOrder) -> Result<Vec<Polynomial>, HankelError> {
    if t == 0 || t > spec.min_dim() {
        return Err(HankelError::OutOfRange { t, rows: spec.rows(), cols: spec.cols() });
    }
    let mat = build_matrix(spec, ring, order)?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for rows in subsets(spec.rows(), t) {
        let mut memo = HashMap::new();
        for cols in subsets(spec.cols(), t) {
            let mask = cols.iter().fold(0u64, |m, &c| m | 1 << c);
            let det = subdeterminant(&mat, &rows, mask, &mut memo);
            let diagonal = rows.iter().zip(&cols).fold(Monomial::one(ring.nvars()), |acc, (&r, &c)| {
                acc.mul(mat[r][c].leading_monomial().expect("variable"))
            });
            let lead = det.lead();
            if lead.map(|t| &t.mono) != Some(&diagonal) || !lead.is_some_and(|t| t.coeff.is_one()) {
                return Err(HankelError::OrderNotDiagonal {
                    minor: det.to_string(),
                    lead: lead.map(|t| t.mono.to_string()).unwrap_or_else(|| "0".into()),
                    diagonal: diagonal.to_string(),
                });
            }
            if seen.insert(det.clone()) {
                out.push(det);
            }
        }
    }
    Ok(out)
}

/// `I_t` of the matrix; `t = 0` gives the unit ideal.
pub fn minor_ideal(spec: HankelSpec, t: usize, ring: Ring, order: &TermOrder) -> Result<Ideal, HankelError> {
    check_ring(spec, ring)?;
    if t == 0 {
        return Ok(Ideal::unit(ring, order.clone()));
    }
    Ok(Ideal::new(ring, minors(spec, t, ring, order)?)?)
}

/// `det X * det Q` for a square `X`, `det P1 * det P2` for `m x (m+1)`.
pub fn seed_polynomial(spec: HankelSpec, ring: Ring, order: &TermOrder) -> Result<Polynomial, HankelError> {
    let shape = spec.shape().ok_or_else(|| HankelError::InvalidSpec(format!("{spec} is neither square nor m x (m+1)")))?;
    let det = |s: HankelSpec| -> Result<Polynomial, HankelError> {
        if s.rows() != s.cols() {
            return Err(HankelError::InvalidSpec(format!("{s} is not square")));
        }
        Ok(minors(s, s.rows(), ring, order)?.remove(0))
    };
    let (a, b) = match shape {
        Shape::Square if spec.m == 1 => return det(spec),
        Shape::Square => (spec, SubmatrixRole::Q.of(spec)?),
        Shape::Rect => (SubmatrixRole::P1.of(spec)?, SubmatrixRole::P2.of(spec)?),
    };
    Ok(&det(a)? * &det(b)?)
}

/// `I_t(X_{m1}^{(1,n)}) = I_t(X_{m2}^{(1,n)})`.
pub fn verify_independence_of_m(
    t: usize,
    n: usize,
    m1: usize,
    m2: usize,
    field: FieldDescriptor,
    order: &TermOrder,
) -> Result<bool, HankelError> {
    for m in [m1, m2] {
        if t == 0 || m < t || m + t > n + 1 {
            return Err(HankelError::InvalidSpec(format!("need t <= m <= n + 1 - t, got t={t}, m={m}, n={n}")));
        }
    }
    let ring = Ring::new(field, n);
    let a = minor_ideal(HankelSpec::new(m1, 1, n)?, t, ring, order)?;
    let b = minor_ideal(HankelSpec::new(m2, 1, n)?, t, ring, order)?;
    Ok(ideal_equal(&a, &b, order)?)
}

/// Caches determinantal ideals of `X` and its submatrices.
pub struct HankelSystem {
    spec: HankelSpec,
    shape: Shape,
    ring: Ring,
    order: TermOrder,
    cache: std::sync::Mutex<HashMap<(SubmatrixRole, usize), Ideal>>,
}

impl HankelSystem {
    pub fn new(m: usize, shape: Shape, field: FieldDescriptor, order: TermOrder) -> Result<Self, HankelError> {
        let spec = match shape {
            Shape::Square => HankelSpec::square(m)?,
            Shape::Rect => HankelSpec::rect(m)?,
        };
        if m < 2 {
            return Err(HankelError::InvalidSpec("need m >= 2".into()));
        }
        let ring = Ring::new(field, spec.n);
        order.check_arity(spec.n).map_err(GroebnerError::from)?;
        Ok(HankelSystem { spec, shape, ring, order, cache: Default::default() })
    }

    pub fn spec(&self) -> HankelSpec {
        self.spec
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn role_spec(&self, role: SubmatrixRole) -> HankelSpec {
        role.of(self.spec).expect("valid shape")
    }

    /// Largest meaningful minor size for a role.
    pub fn max_t(&self, role: SubmatrixRole) -> usize {
        self.role_spec(role).min_dim()
    }

    pub fn minor_ideal(&self, role: SubmatrixRole, t: usize) -> Result<Ideal, HankelError> {
        if let Some(i) = self.cache.lock().expect("cache lock").get(&(role, t)) {
            return Ok(i.clone());
        }
        let ideal = minor_ideal(self.role_spec(role), t, self.ring, &self.order)?;
        ideal.groebner(&self.order)?;
        self.cache.lock().expect("cache lock").insert((role, t), ideal.clone());
        Ok(ideal)
    }

    pub fn seed(&self) -> Result<Polynomial, HankelError> {
        seed_polynomial(self.spec, self.ring, &self.order)
    }

    /// Every distinct minor of `X`, of every size. Submatrix minors are
    /// minors of `X`, so these witnesses split every component the closure
    /// meets.
    pub fn all_minors(&self) -> Result<Vec<Polynomial>, HankelError> {
        let mut out = Vec::new();
        for t in 1..=self.spec.min_dim() {
            out.extend(minors(self.spec, t, self.ring, &self.order)?);
        }
        Ok(out)
    }

    /// Default pool plus all minors of `X`.
    pub fn witness_policy(&self) -> Result<WitnessPolicy, HankelError> {
        Ok(WitnessPolicy::default().with_witnesses(self.all_minors()?))
    }

    pub fn key(&self, ideal: &Ideal) -> Result<String, HankelError> {
        Ok(ideal.groebner(&self.order)?.key())
    }

    pub fn summary(&self, ideal: &Ideal) -> Result<HilbertSummary, HankelError> {
        Ok(hilbert_summary(&ideal.initial_ideal(&self.order)?))
    }

    fn name(role: SubmatrixRole, t: usize) -> String {
        format!("I_{t}({role})")
    }

    /// The ideals of the six shapes `I_t(P1)`, `I_t(P2)`, `I_t(X)`,
    /// `I_t(Q)`, `I_t(X) + I_{t-1}(Q)`, `I_{t-1}(P1) + I_{t-1}(P2)`, over
    /// every `t` for which all minor sizes involved are between 1 and the
    /// matrix size. Deduplicated by key; the first name wins.
    pub fn shape_list(&self) -> Result<Vec<(String, Ideal)>, HankelError> {
        use SubmatrixRole::*;
        let mut out: Vec<(String, Ideal)> = Vec::new();
        let mut keys = HashSet::new();
        let mut push = |name: String, ideal: Ideal, this: &Self| -> Result<(), HankelError> {
            if keys.insert(this.key(&ideal)?) {
                out.push((name, ideal));
            }
            Ok(())
        };
        for t in 1..=self.spec.m + 1 {
            for role in [P1, P2, X, Q] {
                if t <= self.max_t(role) {
                    push(Self::name(role, t), self.minor_ideal(role, t)?, self)?;
                }
            }
            if t <= self.max_t(X) && t >= 2 && t - 1 <= self.max_t(Q) {
                let s = ideal_sum(&self.minor_ideal(X, t)?, &self.minor_ideal(Q, t - 1)?)?;
                push(format!("{} + {}", Self::name(X, t), Self::name(Q, t - 1)), s, self)?;
            }
            if t >= 2 && t - 1 <= self.max_t(P1) && t - 1 <= self.max_t(P2) {
                let s = ideal_sum(&self.minor_ideal(P1, t - 1)?, &self.minor_ideal(P2, t - 1)?)?;
                push(format!("{} + {}", Self::name(P1, t - 1), Self::name(P2, t - 1)), s, self)?;
            }
        }
        Ok(out)
    }

    /// Closure of the seed under the Hankel witness policy.
    pub fn family(&self) -> Result<KnutsonFamily, HankelError> {
        Ok(closure(&self.seed()?, &self.witness_policy()?, &self.order)?)
    }

    /// Height, h-vector and multiplicity of `I_t(role)` against the closed
    /// forms for Hankel minors.
    pub fn closed_form_checks(&self, role: SubmatrixRole, t: usize) -> Result<Vec<Check>, HankelError> {
        let spec = self.role_spec(role);
        let name = Self::name(role, t);
        let hs = self.summary(&self.minor_ideal(role, t)?)?;
        let nh = spec.nentries();
        let height = theoretical_hankel_height(t, nh).expect("t within matrix size");
        let h = theoretical_hankel_hvector(t, nh + 1 - t).expect("t within matrix size");
        Ok(vec![
            Check::new(
                format!("height of {name}"),
                "height of Hankel minors is n - 2t + 2",
                height,
                opt(hs.height),
                hs.height == Some(height),
            ),
            Check::equal(format!("h-vector of {name}"), "h-vector of Hankel minors is (C(s-t+i, i))_{i<t}", h.clone(), hs.h_vector.clone()),
            Check::equal(format!("multiplicity of {name}"), "multiplicity of Hankel minors is the h-vector sum", h.sum(), hs.multiplicity),
        ])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealFacts {
    pub name: String,
    pub key: String,
    pub hilbert: HilbertSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimaryDecReport {
    pub t: usize,
    pub ideals: Vec<IdealFacts>,
    pub checks: Vec<Check>,
}

impl PrimaryDecReport {
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

fn opt(h: Option<usize>) -> String {
    h.map_or_else(|| "none".into(), |h| h.to_string())
}

/// Checks `I_t(X) + I_{t-1}(Q) = I_{t-1}(P1) ∩ I_{t-1}(P2)` and
/// `I_{t-1}(P1) + I_{t-1}(P2) = I_{t-1}(X) ∩ I_{t-2}(Q)` by reduced bases,
/// together with the heights, h-vectors and multiplicities involved.
pub fn verify_primary_dec(sys: &HankelSystem, t: usize) -> Result<PrimaryDecReport, HankelError> {
    use SubmatrixRole::*;
    if t < 2 || t > sys.spec.m {
        return Err(HankelError::InvalidSpec(format!("need 2 <= t <= m, got t={t}, m={}", sys.spec.m)));
    }
    let order = sys.order();
    let ix = sys.minor_ideal(X, t)?;
    let q1 = sys.minor_ideal(Q, t - 1)?;
    let p1 = sys.minor_ideal(P1, t - 1)?;
    let p2 = sys.minor_ideal(P2, t - 1)?;
    let x1 = sys.minor_ideal(X, t - 1)?;
    let q2 = sys.minor_ideal(Q, t - 2)?;

    let xq = ideal_sum(&ix, &q1)?;
    let p_cap = ideal_intersect(&p1, &p2, order)?;
    let pp = ideal_sum(&p1, &p2)?;
    let xq_cap = ideal_intersect(&x1, &q2, order)?;

    let named = [
        (HankelSystem::name(X, t), &ix),
        (HankelSystem::name(Q, t - 1), &q1),
        (HankelSystem::name(P1, t - 1), &p1),
        (HankelSystem::name(P2, t - 1), &p2),
        (HankelSystem::name(X, t - 1), &x1),
        (HankelSystem::name(Q, t - 2), &q2),
        (format!("I_{t}(X) + I_{}(Q)", t - 1), &xq),
        (format!("I_{0}(P1) + I_{0}(P2)", t - 1), &pp),
    ];
    let mut ideals = Vec::new();
    let mut summaries = Vec::new();
    for (name, ideal) in named {
        let hilbert = sys.summary(ideal)?;
        summaries.push(hilbert.clone());
        ideals.push(IdealFacts { name, key: sys.key(ideal)?, hilbert });
    }
    let [s_ix, _s_q1, s_p1, s_p2, s_x1, s_q2, s_xq, s_pp] = <[HilbertSummary; 8]>::try_from(summaries).expect("eight");

    let mut checks = vec![
        Check::new(
            format!("I_{t}(X) + I_{}(Q) = I_{0}(P1) ∩ I_{0}(P2)", t - 1),
            "sum of linked determinantal ideals is the intersection of the next pair",
            sys.key(&p_cap)?,
            sys.key(&xq)?,
            ideal_equal(&xq, &p_cap, order)?,
        ),
        Check::new(
            format!("I_{0}(P1) + I_{0}(P2) = I_{0}(X) ∩ I_{1}(Q)", t - 1, t - 2),
            "sum of linked determinantal ideals is the intersection of the next pair",
            sys.key(&xq_cap)?,
            sys.key(&pp)?,
            ideal_equal(&pp, &xq_cap, order)?,
        ),
        Check::equal(
            format!("e(I_{t}(X) + I_{}(Q)) = e(I_{0}(P1)) + e(I_{0}(P2))", t - 1),
            "multiplicity of the sum equals that of the intersection",
            s_p1.multiplicity + s_p2.multiplicity,
            s_xq.multiplicity,
        ),
        Check::equal(
            format!("e(I_{t}(X) + I_{}(Q)) = 2 e(I_{}(P1))", t - 1, t - 1),
            "multiplicity of the sum equals that of the intersection",
            2 * s_p1.multiplicity,
            s_xq.multiplicity,
        ),
        Check::equal(
            format!("e(I_{0}(P1) + I_{0}(P2)) = e(I_{0}(X)) + e(I_{1}(Q))", t - 1, t - 2),
            "multiplicity of the sum equals that of the intersection",
            s_x1.multiplicity + s_q2.multiplicity,
            s_pp.multiplicity,
        ),
        Check::new(
            format!("height of I_{t}(X) + I_{}(Q)", t - 1),
            "the sum has the height of the next pair",
            opt(s_p1.height),
            opt(s_xq.height),
            s_xq.height.is_some() && s_xq.height == s_p1.height && s_p1.height == s_p2.height,
        ),
        Check::new(
            format!("height of I_{0}(P1) + I_{0}(P2)", t - 1),
            "the sum is one higher than its summands",
            opt(s_p1.height.map(|h| h + 1)),
            opt(s_pp.height),
            s_pp.height.is_some() && s_pp.height == s_p1.height.map(|h| h + 1),
        ),
        Check::equal(
            format!("h-vector of I_{t}(X) + I_{}(Q)", t - 1),
            "h-vector of I_t(X) + I_{t-1}(Q) from partial sums of h(I_t(X))",
            sum_hvector_from_parts(&s_ix.h_vector, SumCase::XQ),
            s_xq.h_vector.clone(),
        ),
        Check::equal(
            format!("h-vector of I_{0}(P1) + I_{0}(P2)", t - 1),
            "h-vector of I_t(P1) + I_t(P2) from partial sums of h(I_t(P1))",
            sum_hvector_from_parts(&s_p1.h_vector, SumCase::P1P2),
            s_pp.h_vector.clone(),
        ),
        Check::new(
            "sum h-vectors are palindromic",
            "h-vectors of the sums are symmetric",
            true,
            s_xq.h_vector.is_palindromic() && s_pp.h_vector.is_palindromic(),
            s_xq.h_vector.is_palindromic() && s_pp.h_vector.is_palindromic(),
        ),
        Check::equal(
            format!("h(I_{0}(P1))_i = h(I_{0}(X))_i - h(I_{0}(X))_(i-1)", t - 1),
            "h-vector of I_t(P1) is the first difference of h(I_t(X))",
            first_difference(&s_x1.h_vector),
            s_p1.h_vector.clone(),
        ),
    ];
    if t == sys.spec.m && sys.shape == Shape::Square {
        let m = sys.spec.m as i64;
        checks.push(Check::equal(
            format!("e(I_{t}(X) + I_{}(Q)) = m(m-1)", t - 1),
            "det X, det Q is a complete intersection of multiplicity m(m-1)",
            m * (m - 1),
            s_xq.multiplicity,
        ));
    }
    for (role, size) in [(X, t), (Q, t - 1), (P1, t - 1), (P2, t - 1), (X, t - 1), (Q, t - 2)] {
        if size >= 1 {
            checks.extend(sys.closed_form_checks(role, size)?);
        }
    }
    Ok(PrimaryDecReport { t, ideals, checks })
}

fn first_difference(h: &HVector) -> HVector {
    let e = h.entries();
    HVector::new((0..e.len()).map(|i| e[i] - if i > 0 { e[i - 1] } else { 0 }).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipEntry {
    pub name: String,
    pub key: String,
    pub member: bool,
    pub index: Option<usize>,
}

/// Family computed from the seed compared with the shape list.
#[derive(Clone, Debug, Serialize)]
pub struct Characterization {
    pub literal: Vec<String>,
    pub computed: Vec<String>,
    /// In the shape list but not computed.
    pub missing: Vec<String>,
    /// Computed but not in the shape list.
    pub extra: Vec<String>,
    pub seed_key: String,
    pub unit_key: String,
    /// `extra` is exactly the seed ideal and the unit ideal.
    pub extra_is_boundary: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub spec: HankelSpec,
    pub shape: Shape,
    pub members: usize,
    pub memberships: Vec<MembershipEntry>,
    pub characterization: Characterization,
}

impl MembershipReport {
    pub fn all_members(&self) -> bool {
        self.memberships.iter().all(|e| e.member)
    }
}

/// Runs the closure and checks that every `I_t(X)`, `I_t(P1)`, `I_t(P2)`,
/// `I_t(Q)` is a member; compares the family with the shape list.
pub fn verify_minor_membership(sys: &HankelSystem, family: &KnutsonFamily) -> Result<MembershipReport, HankelError> {
    let mut memberships = Vec::new();
    for role in SubmatrixRole::ALL {
        for t in 1..=sys.max_t(role) {
            let ideal = sys.minor_ideal(role, t)?;
            let hit = family_contains(family, &ideal)?;
            memberships.push(MembershipEntry {
                name: HankelSystem::name(role, t),
                key: sys.key(&ideal)?,
                member: hit.is_some(),
                index: hit.map(|(i, _)| i),
            });
        }
    }
    let literal: Vec<String> =
        sys.shape_list()?.iter().map(|(_, i)| sys.key(i)).collect::<Result<_, _>>()?;
    let computed = family.keys();
    let lit: BTreeSet<&String> = literal.iter().collect();
    let comp: BTreeSet<&String> = computed.iter().collect();
    let missing: Vec<String> = lit.difference(&comp).map(|s| s.to_string()).collect();
    let extra: Vec<String> = comp.difference(&lit).map(|s| s.to_string()).collect();
    let seed_key = sys.key(&Ideal::principal(sys.seed()?))?;
    let unit_key = sys.key(&Ideal::unit(sys.ring, sys.order.clone()))?;
    let boundary: BTreeSet<&String> = [&seed_key, &unit_key].into_iter().collect();
    let extra_is_boundary = extra.iter().collect::<BTreeSet<_>>() == boundary;
    Ok(MembershipReport {
        spec: sys.spec,
        shape: sys.shape,
        members: family.len(),
        memberships,
        characterization: Characterization { literal, computed, missing, extra, seed_key, unit_key, extra_is_boundary },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn q3() -> Ring {
        Ring::new(FieldDescriptor::RATIONALS, 3)
    }

    #[test]
    fn matrices() {
        let m = build_matrix(HankelSpec::new(2, 1, 3).unwrap(), q3(), &TermOrder::Lex).unwrap();
        let text: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|p| p.to_string()).collect()).collect();
        assert_eq!(text, vec![vec!["x1", "x2"], vec!["x2", "x3"]]);
        let r5 = Ring::new(FieldDescriptor::RATIONALS, 5);
        let m = build_matrix(HankelSpec::square(3).unwrap(), r5, &TermOrder::Lex).unwrap();
        assert_eq!(m[2].iter().map(|p| p.to_string()).collect::<Vec<_>>(), ["x3", "x4", "x5"]);
        let m = build_matrix(HankelSpec::new(1, 2, 2).unwrap(), q3(), &TermOrder::Lex).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0][0].to_string(), "x2");
        assert!(HankelSpec::new(3, 1, 2).is_err());
    }

    #[test]
    fn minor_ideals() {
        let lex = TermOrder::Lex;
        let x = HankelSpec::square(2).unwrap();
        let i2 = minor_ideal(x, 2, q3(), &lex).unwrap();
        assert_eq!(i2.groebner(&lex).unwrap().key(), "(x1*x3 - x2^2)");
        let i1 = minor_ideal(x, 1, q3(), &lex).unwrap();
        assert_eq!(i1.groebner(&lex).unwrap().key(), "(x3, x2, x1)");
        assert!(minor_ideal(x, 0, q3(), &lex).unwrap().groebner(&lex).unwrap().is_unit());
        assert!(matches!(minor_ideal(x, 3, q3(), &lex), Err(HankelError::OutOfRange { .. })));

        let r5 = Ring::new(FieldDescriptor::RATIONALS, 5);
        let wide = HankelSpec::new(2, 1, 5).unwrap();
        assert_eq!(minors(wide, 2, r5, &lex).unwrap().len(), 6);
        assert!(minor_ideal(wide, 2, r5, &lex).unwrap().initial_ideal(&lex).unwrap().is_squarefree());
    }

    #[test]
    fn grevlex_is_not_diagonal() {
        let err = minors(HankelSpec::square(2).unwrap(), 2, q3(), &TermOrder::Grevlex).unwrap_err();
        assert!(matches!(err, HankelError::OrderNotDiagonal { .. }));
    }

    #[test]
    fn seeds() {
        let lex = TermOrder::Lex;
        let f = seed_polynomial(HankelSpec::square(2).unwrap(), q3(), &lex).unwrap();
        assert_eq!(f, parse_polynomial("(x1*x3 - x2^2)*x2", q3(), &lex).unwrap());
        let r5 = Ring::new(FieldDescriptor::RATIONALS, 5);
        let f = seed_polynomial(HankelSpec::square(3).unwrap(), r5, &lex).unwrap();
        assert_eq!(f.leading_monomial().unwrap().to_string(), "x1*x2*x3*x4*x5");
        let r4 = Ring::new(FieldDescriptor::RATIONALS, 4);
        let f = seed_polynomial(HankelSpec::rect(2).unwrap(), r4, &lex).unwrap();
        assert_eq!(f, parse_polynomial("(x1*x3 - x2^2)*(x2*x4 - x3^2)", r4, &lex).unwrap());
    }

    #[test]
    fn independence_of_m() {
        let q = FieldDescriptor::RATIONALS;
        assert!(verify_independence_of_m(2, 5, 2, 3, q, &TermOrder::Lex).unwrap());
        assert!(verify_independence_of_m(2, 4, 2, 2, q, &TermOrder::Lex).unwrap());
        assert!(verify_independence_of_m(3, 6, 3, 4, q, &TermOrder::Lex).unwrap());
        assert!(verify_independence_of_m(2, 4, 2, 4, q, &TermOrder::Lex).is_err());
    }

    #[test]
    fn roles() {
        let x = HankelSpec::square(3).unwrap();
        assert_eq!(SubmatrixRole::P1.of(x).unwrap(), HankelSpec::new(2, 1, 4).unwrap());
        assert_eq!(SubmatrixRole::Q.of(x).unwrap().cols(), 2);
        let r = HankelSpec::rect(2).unwrap();
        assert_eq!((SubmatrixRole::Q.of(r).unwrap().rows(), SubmatrixRole::Q.of(r).unwrap().cols()), (2, 1));
        assert_eq!(SubmatrixRole::P1.of(r).unwrap().cols(), 2);
    }

    #[test]
    fn small_square_system() {
        let sys = HankelSystem::new(2, Shape::Square, FieldDescriptor::RATIONALS, TermOrder::Lex).unwrap();
        let rep = verify_primary_dec(&sys, 2).unwrap();
        assert!(rep.passed(), "{:#?}", rep.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
        let fam = sys.family().unwrap();
        let mem = verify_minor_membership(&sys, &fam).unwrap();
        assert!(mem.all_members());
        assert!(mem.characterization.missing.is_empty());
        assert!(mem.characterization.extra_is_boundary, "{:?}", mem.characterization.extra);
        assert_eq!(mem.characterization.literal.len(), 6);
    }
}
