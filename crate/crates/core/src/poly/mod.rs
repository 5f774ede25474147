//! Sparse multivariate polynomials over arbitrary-precision integers.
//!
//! A [`Polynomial`] is kept in canonical form at all times:
//!
//! - no stored coefficient is zero,
//! - the variable list holds exactly the variables that occur, in natural
//!   name order (`x2` sorts before `x10`),
//! - terms are ordered graded-lexicographically, so the printed form is
//!   deterministic and the total degree is read from the leading term.
//!
//! The zero polynomial has degree 0 and no variables.

mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

pub use parse::{parse_polynomial, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("assignment has {got} values but the polynomial has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

/// Exponent vector, one entry per variable slot.
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared slot by slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Positional integer values, one per variable slot of some polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Assignment(pub Vec<BigInt>);

impl Assignment {
    pub fn new(values: Vec<BigInt>) -> Self {
        Assignment(values)
    }

    pub fn from_i64s(values: &[i64]) -> Self {
        Assignment(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Compares identifiers so that embedded digit runs sort numerically.
pub(crate) fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut a, mut b) = (a.as_bytes(), b.as_bytes());
    loop {
        match (a.first(), b.first()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let da = a.iter().take_while(|c| c.is_ascii_digit()).count();
                let db = b.iter().take_while(|c| c.is_ascii_digit()).count();
                let na = strip_leading_zeros(&a[..da]);
                let nb = strip_leading_zeros(&b[..db]);
                let ord = na
                    .len()
                    .cmp(&nb.len())
                    .then_with(|| na.cmp(nb))
                    .then_with(|| da.cmp(&db));
                if ord != Ordering::Equal {
                    return ord;
                }
                a = &a[da..];
                b = &b[db..];
            }
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(y);
                }
                a = &a[1..];
                b = &b[1..];
            }
        }
    }
}

fn strip_leading_zeros(digits: &[u8]) -> &[u8] {
    let k = digits.iter().take_while(|&&c| c == b'0').count();
    &digits[k..]
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    var_names: Vec<String>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Default for Polynomial {
    fn default() -> Self {
        Polynomial::zero()
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            var_names: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        Polynomial {
            var_names: Vec::new(),
            terms,
        }
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(vec![1]), BigInt::one());
        Polynomial {
            var_names: vec![name.to_string()],
            terms,
        }
    }

    /// Builds a canonical polynomial from named terms. Each term lists
    /// `(variable, exponent)` factors; repeated variables multiply.
    pub fn from_named_terms<'a, I, F>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BigInt, F)>,
        F: IntoIterator<Item = (&'a str, u32)>,
    {
        let mut acc: BTreeMap<Vec<(String, u32)>, BigInt> = BTreeMap::new();
        for (coeff, factors) in terms {
            let mut powers: BTreeMap<String, u32> = BTreeMap::new();
            for (name, e) in factors {
                *powers.entry(name.to_string()).or_insert(0) += e;
            }
            let key: Vec<(String, u32)> = powers.into_iter().filter(|(_, e)| *e > 0).collect();
            *acc.entry(key).or_insert_with(BigInt::zero) += coeff;
        }
        Self::from_name_map(acc)
    }

    fn from_name_map(acc: BTreeMap<Vec<(String, u32)>, BigInt>) -> Self {
        let mut names: BTreeSet<&str> = BTreeSet::new();
        for (k, c) in &acc {
            if !c.is_zero() {
                for (n, _) in k {
                    names.insert(n.as_str());
                }
            }
        }
        let mut var_names: Vec<String> = names.into_iter().map(str::to_string).collect();
        var_names.sort_by(|a, b| natural_cmp(a, b));
        let index: BTreeMap<&str, usize> = var_names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let mut terms = BTreeMap::new();
        for (k, c) in acc {
            if c.is_zero() {
                continue;
            }
            let mut exps = vec![0u32; var_names.len()];
            for (n, e) in &k {
                exps[index[n.as_str()]] += e;
            }
            let slot = terms.entry(Monomial(exps)).or_insert_with(BigInt::zero);
            *slot += c;
        }
        terms.retain(|_, c: &mut BigInt| !c.is_zero());
        Polynomial { var_names, terms }
    }

    /// Re-canonicalizes after arithmetic over an explicitly given variable
    /// list (drops zero terms and unused variables, re-sorts names).
    fn from_slots(var_names: Vec<String>, terms: BTreeMap<Monomial, BigInt>) -> Self {
        let acc = terms
            .into_iter()
            .map(|(m, c)| {
                let key = m
                    .0
                    .iter()
                    .zip(&var_names)
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, n)| (n.clone(), *e))
                    .collect::<Vec<_>>();
                (key, c)
            })
            .fold(BTreeMap::new(), |mut acc, (k, c)| {
                *acc.entry(k).or_insert_with(BigInt::zero) += c;
                acc
            });
        Self::from_name_map(acc)
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> u64 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    /// `(total degree, number of occurring variables)`.
    pub fn metrics(&self) -> (u64, usize) {
        (self.degree(), self.num_vars())
    }

    /// Coefficient of the monomial with the given positional exponents
    /// (zero when absent).
    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Coefficient of a monomial given by variable names; names that do not
    /// occur in the polynomial make the coefficient zero unless their
    /// exponent is zero.
    pub fn coefficient_named(&self, factors: &[(&str, u32)]) -> BigInt {
        let mut exps = vec![0u32; self.var_names.len()];
        for (name, e) in factors {
            match self.var_index(name) {
                Some(i) => exps[i] += e,
                None if *e == 0 => {}
                None => return BigInt::zero(),
            }
        }
        self.coefficient(&exps)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.var_names.len()])
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|n| n == name)
    }

    pub fn evaluate(&self, a: &Assignment) -> Result<BigInt, PolyError> {
        if a.len() != self.var_names.len() {
            return Err(PolyError::DimensionMismatch {
                expected: self.var_names.len(),
                got: a.len(),
            });
        }
        Ok(self.eval_slice(a.values()))
    }

    pub(crate) fn eval_slice(&self, values: &[BigInt]) -> BigInt {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(&m.0) {
                if e > 0 {
                    t *= Pow::pow(v, e);
                }
            }
            total += t;
        }
        total
    }

    /// Evaluates with values looked up by variable name.
    pub fn evaluate_named(&self, values: &BTreeMap<String, BigInt>) -> Result<BigInt, PolyError> {
        let slots = self
            .var_names
            .iter()
            .map(|n| {
                values
                    .get(n)
                    .cloned()
                    .ok_or_else(|| PolyError::UnknownVariable(n.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.eval_slice(&slots))
    }

    /// Replaces every occurrence of `var` by `q` and expands.
    pub fn substitute(&self, var: &str, q: &Polynomial) -> Result<Polynomial, PolyError> {
        let idx = self
            .var_index(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let mut rest_terms = BTreeMap::new();
        let mut by_power: BTreeMap<u32, BTreeMap<Monomial, BigInt>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            let mut reduced = m.0.clone();
            reduced[idx] = 0;
            if e == 0 {
                rest_terms.insert(Monomial(reduced), c.clone());
            } else {
                by_power
                    .entry(e)
                    .or_default()
                    .insert(Monomial(reduced), c.clone());
            }
        }
        let mut out = Polynomial::from_slots(self.var_names.clone(), rest_terms);
        let mut q_power = Polynomial::constant(1);
        let mut current = 0u32;
        for (e, cofactor_terms) in by_power {
            while current < e {
                q_power = &q_power * q;
                current += 1;
            }
            let cofactor = Polynomial::from_slots(self.var_names.clone(), cofactor_terms);
            out = &out + &(&cofactor * &q_power);
        }
        Ok(out)
    }

    /// Renames variables; the map must be injective on the occurring names.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Polynomial {
        let names: Vec<String> = self.var_names.iter().map(|n| f(n)).collect();
        Polynomial::from_slots(names, self.terms.clone())
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::constant(1);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Union of the two variable lists with exponent vectors re-indexed.
    fn aligned(&self, other: &Polynomial) -> (Vec<String>, Vec<Vec<u32>>, Vec<Vec<u32>>) {
        let mut names: Vec<String> = self
            .var_names
            .iter()
            .chain(other.var_names.iter())
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        names.sort_by(|a, b| natural_cmp(a, b));
        let remap = |p: &Polynomial| -> Vec<Vec<u32>> {
            let pos: Vec<usize> = p
                .var_names
                .iter()
                .map(|n| names.iter().position(|m| m == n).expect("name present"))
                .collect();
            p.terms
                .keys()
                .map(|m| {
                    let mut v = vec![0u32; names.len()];
                    for (i, &e) in m.0.iter().enumerate() {
                        v[pos[i]] = e;
                    }
                    v
                })
                .collect()
        };
        let a = remap(self);
        let b = remap(other);
        (names, a, b)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (names, ea, eb) = self.aligned(rhs);
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (e, c) in ea.into_iter().zip(self.terms.values()) {
            *terms.entry(Monomial(e)).or_insert_with(BigInt::zero) += c;
        }
        for (e, c) in eb.into_iter().zip(rhs.terms.values()) {
            *terms.entry(Monomial(e)).or_insert_with(BigInt::zero) += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial::from_slots(names, terms)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            var_names: self.var_names.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let (names, ea, eb) = self.aligned(rhs);
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (xa, ca) in ea.iter().zip(self.terms.values()) {
            for (xb, cb) in eb.iter().zip(rhs.terms.values()) {
                let e: Vec<u32> = xa.iter().zip(xb).map(|(p, q)| p + q).collect();
                *terms.entry(Monomial(e)).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial::from_slots(names, terms)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    /// Canonical form: graded-lex descending, explicit `*` and `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let factors: Vec<String> = m
                .0
                .iter()
                .zip(&self.var_names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, n)| if *e == 1 { n.clone() } else { format!("{n}^{e}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Polynomial {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_polynomial(s)
    }
}
