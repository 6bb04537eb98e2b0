use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::field::Rational;

use super::{Monomial, PolyError};

/// A monomial order. Variables are ranked `x1 > x2 > ... > xn` for the
/// built-in lex and grevlex orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    Grevlex,
    Matrix(Arc<WeightMatrix>),
    Elimination(Arc<BlockOrder>),
}

/// Integer weight matrix with one column per variable. Monomials are
/// compared by their weight vectors, lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightMatrix {
    rows: Vec<Vec<i64>>,
}

impl WeightMatrix {
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }
}

/// Compares the first `split` variables with `head`, breaking ties on the
/// remaining variables with `tail`. Any monomial involving the head block
/// dominates every monomial that does not.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockOrder {
    pub split: usize,
    pub head: TermOrder,
    pub tail: TermOrder,
}

impl TermOrder {
    pub fn matrix(rows: Vec<Vec<i64>>) -> Result<Self, PolyError> {
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        if ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
            return Err(PolyError::InvalidOrder("weight matrix must be a non-empty rectangle".into()));
        }
        for c in 0..ncols {
            match rows.iter().map(|r| r[c]).find(|&w| w != 0) {
                Some(w) if w > 0 => {}
                _ => {
                    return Err(PolyError::InvalidOrder(format!(
                        "column {} needs a positive first nonzero weight",
                        c + 1
                    )))
                }
            }
        }
        if rank(&rows) < ncols {
            return Err(PolyError::InvalidOrder("weight matrix must have full column rank".into()));
        }
        Ok(TermOrder::Matrix(Arc::new(WeightMatrix { rows })))
    }

    /// Block order with the first `split` variables eliminated.
    pub fn elimination(split: usize, head: TermOrder, tail: TermOrder) -> Self {
        TermOrder::Elimination(Arc::new(BlockOrder { split, head, tail }))
    }

    /// Number of variables the order is tied to, if any.
    pub fn fixed_arity(&self) -> Option<usize> {
        match self {
            TermOrder::Lex | TermOrder::Grevlex => None,
            TermOrder::Matrix(m) => Some(m.ncols()),
            TermOrder::Elimination(b) => b.tail.fixed_arity().map(|n| n + b.split),
        }
    }

    pub fn check_arity(&self, nvars: usize) -> Result<(), PolyError> {
        let ok = match self {
            TermOrder::Lex | TermOrder::Grevlex => true,
            TermOrder::Matrix(m) => m.ncols() == nvars,
            TermOrder::Elimination(b) => {
                b.split <= nvars
                    && b.head.check_arity(b.split).is_ok()
                    && b.tail.check_arity(nvars - b.split).is_ok()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(PolyError::AmbientMismatch)
        }
    }

    /// Unchecked comparison; both monomials must have the same length.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| revlex(a.exponents(), b.exponents())),
            _ => self.cmp_slices(a.exponents(), b.exponents()),
        }
    }

    fn cmp_slices(&self, a: &[u16], b: &[u16]) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::Grevlex => {
                let da: u32 = a.iter().map(|&e| e as u32).sum();
                let db: u32 = b.iter().map(|&e| e as u32).sum();
                da.cmp(&db).then_with(|| revlex(a, b))
            }
            TermOrder::Matrix(m) => {
                for row in &m.rows {
                    let wa: i64 = row.iter().zip(a).map(|(w, &e)| w * e as i64).sum();
                    let wb: i64 = row.iter().zip(b).map(|(w, &e)| w * e as i64).sum();
                    match wa.cmp(&wb) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            TermOrder::Elimination(blk) => {
                let k = blk.split;
                blk.head
                    .cmp_slices(&a[..k], &b[..k])
                    .then_with(|| blk.tail.cmp_slices(&a[k..], &b[k..]))
            }
        }
    }
}

fn revlex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Rational>> =
        rows.iter().map(|r| r.iter().map(|&w| Rational::from_integer(w)).collect()).collect();
    let ncols = m[0].len();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].inv().expect("nonzero pivot");
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let factor = &row[c] * &inv;
                for k in c..ncols {
                    row[k] = &row[k] - &(&factor * &pivot[k]);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Checked comparison of two monomials.
pub fn compare(m1: &Monomial, m2: &Monomial, order: &TermOrder) -> Result<Ordering, PolyError> {
    if m1.nvars() != m2.nvars() {
        return Err(PolyError::AmbientMismatch);
    }
    order.check_arity(m1.nvars())?;
    Ok(order.cmp(m1, m2))
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::Grevlex => write!(f, "grevlex"),
            TermOrder::Matrix(m) => {
                let rows: Vec<String> = m
                    .rows
                    .iter()
                    .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
                    .collect();
                write!(f, "matrix:{}", rows.join(";"))
            }
            TermOrder::Elimination(b) => write!(f, "elim({}|{}|{})", b.split, b.head, b.tail),
        }
    }
}

impl FromStr for TermOrder {
    type Err = PolyError;

    /// Accepts `lex`, `grevlex` and `matrix:<rows>` where rows are separated
    /// by `;` and weights by `,`.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let s = s.trim();
        match s {
            "lex" => return Ok(TermOrder::Lex),
            "grevlex" | "degrevlex" => return Ok(TermOrder::Grevlex),
            _ => {}
        }
        let Some(body) = s.strip_prefix("matrix:") else {
            return Err(PolyError::InvalidOrder(format!("unknown order `{s}`")));
        };
        let rows = body
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|w| w.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| PolyError::InvalidOrder(format!("bad weight: {e}")))?;
        TermOrder::matrix(rows)
    }
}
