use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::scalar::{fmt_coeff_q, join_signed, Gaussian, Scalar};

/// A shifted variable: `family`, optional `index`, and the number of primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub family: Arc<str>,
    pub index: Option<u16>,
    pub shift: u32,
}

impl Var {
    pub fn new(family: &str) -> Self {
        Var {
            family: family.into(),
            index: None,
            shift: 0,
        }
    }

    pub fn indexed(family: &str, index: u16) -> Self {
        Var {
            family: family.into(),
            index: Some(index),
            shift: 0,
        }
    }

    pub fn primed(mut self, n: u32) -> Self {
        self.shift += n;
        self
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.family)?;
        for _ in 0..self.shift {
            f.write_str("'")?;
        }
        if let Some(i) = self.index {
            write!(f, "[{i}]")?;
        }
        Ok(())
    }
}

/// A generator of the extended ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    /// The time-shift operator. It carries no shift of its own.
    J,
    Var(Var),
}

/// `J^jpow · word`, the key of a normal-form term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub jpow: u32,
    pub word: Vec<Var>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            jpow: 0,
            word: Vec::new(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.jpow == 0 && self.word.is_empty()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.jpow
            .cmp(&other.jpow)
            .then(self.word.len().cmp(&other.word.len()))
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if self.jpow > 0 {
            write!(f, "J^{}", self.jpow)?;
            first = false;
        }
        for v in &self.word {
            if !first {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A normal-form element: a sum of `coefficient · J^n · word` with distinct
/// keys and nonzero coefficients, kept in canonical order.
///
/// Two expressions are equal as ring elements exactly when they compare
/// equal, provided both were built by the same [`Algebra`](super::Algebra).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Expr {
    pub(crate) terms: BTreeMap<Monomial, Scalar>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr::default()
    }

    pub fn one() -> Self {
        Expr::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        Expr::term(c, Monomial::one())
    }

    pub fn from_int(n: i64) -> Self {
        Expr::scalar(Scalar::from_int(n))
    }

    /// The time-shift operator `J`.
    pub fn j() -> Self {
        Expr::j_pow(1)
    }

    pub fn j_pow(n: u32) -> Self {
        Expr::term(
            Scalar::one(),
            Monomial {
                jpow: n,
                word: Vec::new(),
            },
        )
    }

    /// A single term. The monomial is taken as given, so callers must pass a
    /// normal-form key.
    pub(crate) fn term(c: Scalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Expr { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The value when the expression is a pure scalar.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot = &*slot + c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Expr {
        let mut out = Expr::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), &(v * c));
        }
        out
    }

    /// Largest `J` power present.
    pub fn max_jpow(&self) -> u32 {
        self.terms.keys().map(|m| m.jpow).max().unwrap_or(0)
    }
}

impl<'a> Add<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn add(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Expr> for &'a Expr {
    type Output = Expr;
    fn sub(self, rhs: &Expr) -> Expr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Neg for &Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(self, rhs: Expr) -> Expr {
        &self + &rhs
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        &self - &rhs
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        -&self
    }
}

impl fmt::Display for Expr {
    /// Canonical text: `2*J^1*X'[1]*Y[2] - (3/2+1/2i)*q^-1*x*y`.
    ///
    /// A coefficient with several powers of `q` is written as one summand
    /// per power.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (m, c) in &self.terms {
            for (k, g) in c.terms() {
                parts.push(summand(g, k, m));
            }
        }
        f.write_str(&join_signed(parts, true))
    }
}

fn summand(c: &Gaussian, k: i32, m: &Monomial) -> (bool, String) {
    let (neg, mut factors) = fmt_coeff_q(c, k);
    if !m.is_one() {
        factors.push(m.to_string());
    }
    if factors.is_empty() {
        factors.push("1".into());
    }
    (neg, factors.join("*"))
}

/// Unnormalized expression tree over atoms and scalars.
#[derive(Clone, Debug)]
pub enum Tree {
    Atom(Atom),
    Scalar(Scalar),
    Sum(Vec<Tree>),
    Product(Vec<Tree>),
}

impl Tree {
    pub fn j() -> Tree {
        Tree::Atom(Atom::J)
    }

    pub fn var(v: Var) -> Tree {
        Tree::Atom(Atom::Var(v))
    }

    pub fn int(n: i64) -> Tree {
        Tree::Scalar(Scalar::from_int(n))
    }

    pub fn product(factors: impl IntoIterator<Item = Tree>) -> Tree {
        Tree::Product(factors.into_iter().collect())
    }

    pub fn sum(terms: impl IntoIterator<Item = Tree>) -> Tree {
        Tree::Sum(terms.into_iter().collect())
    }
}
