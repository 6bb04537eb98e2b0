use std::fmt;

/// Exponent vector of a monomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], degree: 0 }
    }

    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[index] = 1;
        Monomial { exps, degree: 1 }
    }

    /// Product of the variables whose indices are listed.
    pub fn from_support(nvars: usize, support: &[usize]) -> Self {
        let mut exps = vec![0; nvars];
        for &i in support {
            exps[i] += 1;
        }
        Monomial::new(exps)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> Vec<usize> {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Panics if an exponent overflows `u16`.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b).expect("monomial exponent overflow"))
            .collect();
        Monomial { exps, degree: self.degree + other.degree }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(&a, &b)| a - b).collect();
        Some(Monomial { exps, degree: self.degree - other.degree })
    }

    /// Exponentwise `max(self - other, 0)`; the generator of `(self) : (other)`.
    pub fn saturating_div(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.saturating_sub(b)).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.min(b)).collect())
    }

    /// Inserts a zero exponent at `pos`.
    pub fn insert_var(&self, pos: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.insert(pos, 0);
        Monomial { exps, degree: self.degree }
    }

    /// Drops the variable at `pos`; `None` if it occurs.
    pub fn remove_var(&self, pos: usize) -> Option<Monomial> {
        if self.exps[pos] != 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps.remove(pos);
        Some(Monomial { exps, degree: self.degree })
    }
}

impl fmt::Display for Monomial {
    /// Plain `x1*x3^2` rendering with 1-based indices; see
    /// [`crate::poly::Polynomial`] for rings that carry a `t` slot.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, self, None)
    }
}

pub(crate) fn variable_name(index: usize, t_slot: Option<usize>) -> String {
    match t_slot {
        Some(t) if t == index => "t".to_string(),
        Some(t) if index > t => format!("x{index}"),
        _ => format!("x{}", index + 1),
    }
}

pub(crate) fn write_monomial(f: &mut impl fmt::Write, m: &Monomial, t_slot: Option<usize>) -> fmt::Result {
    if m.is_one() {
        return write!(f, "1");
    }
    let mut first = true;
    for (i, &e) in m.exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", variable_name(i, t_slot))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}
