//! q-deformed calculus over formal Laurent polynomials in `q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigRational, One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncalg::{Algebra, CommutationTable, Monomial, Var};
use crate::scalar::{fmt_coeff_q, join_signed, Gaussian, Scalar};

/// A Laurent polynomial in `q`. Coefficients produced by this module are real.
pub type QScalar = Scalar;

/// Largest `n` accepted by [`q_binomial_theorem_check`].
pub const BINOMIAL_CHECK_CAP: u32 = 16;

/// `[n]_q = 1 + q + … + q^(n-1)`
pub fn q_integer(n: u32) -> QScalar {
    let mut s = Scalar::zero();
    for k in 0..n {
        s.add_term(k as i32, &Gaussian::from_int(1));
    }
    s
}

/// `[1]_q [2]_q ⋯ [n]_q`
pub fn q_factorial(n: u32) -> QScalar {
    (1..=n).fold(Scalar::one(), |acc, m| &acc * &q_integer(m))
}

/// `[n]_q! / ([k]_q! [n-k]_q!)`, computed by exact polynomial division.
pub fn q_binomial(n: u32, k: u32) -> Result<QScalar> {
    if k > n {
        return Err(Error::domain(format!("q_binomial({n}, {k}) needs k <= n")));
    }
    let den = &q_factorial(k) * &q_factorial(n - k);
    Ok(q_factorial(n)
        .div_exact(&den)
        .expect("q-factorial quotient is a polynomial"))
}

/// A polynomial in `x` with coefficients in `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: BTreeMap<u32, Scalar>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn monomial(c: Scalar, n: u32) -> Self {
        let mut p = QPoly::zero();
        p.add_term(n, &c);
        p
    }

    /// `x^n`
    pub fn x_pow(n: u32) -> Self {
        QPoly::monomial(Scalar::one(), n)
    }

    pub fn constant(c: Scalar) -> Self {
        QPoly::monomial(c, 0)
    }

    /// Rational coefficients, lowest degree first.
    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        let mut p = QPoly::zero();
        for (n, c) in coeffs.iter().enumerate() {
            p.add_term(n as u32, &Scalar::constant(Gaussian::real(c.clone())));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn coeff(&self, n: u32) -> Scalar {
        self.coeffs.get(&n).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.coeffs.iter().map(|(n, c)| (*n, c))
    }

    pub fn add_term(&mut self, n: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(n).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.coeffs.remove(&n);
        }
    }

    /// True when no coefficient depends on `q`.
    pub fn is_q_free(&self) -> bool {
        self.coeffs
            .values()
            .all(|c| c.as_constant().is_some())
    }

    /// Value at rational `x` and `q`; `None` if a negative power of `q` meets `q = 0`.
    pub fn eval(&self, x: &BigRational, q: &BigRational) -> Option<Gaussian> {
        let mut acc = Gaussian::zero();
        for (&n, c) in &self.coeffs {
            let xn = Gaussian::real(num::pow(x.clone(), n as usize));
            acc += &(&c.eval(q)? * &xn);
        }
        Some(acc)
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (n, c) in &rhs.coeffs {
            out.add_term(*n, c);
        }
        out
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|(n, c)| (*n, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                out.add_term(a + b, &(ca * cb));
            }
        }
        out
    }
}

impl fmt::Display for QPoly {
    /// Highest degree first: `x^3 + (1+q)*x - 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.coeffs.iter().rev().map(|(&n, c)| {
            let (neg, mut factors) = match c.terms().collect::<Vec<_>>()[..] {
                [(k, g)] => fmt_coeff_q(g, k),
                [(_, g), ..] if g.is_negative_like() => (true, vec![format!("({})", -c)]),
                _ => (false, vec![format!("({c})")]),
            };
            match n {
                0 => {}
                1 => factors.push("x".into()),
                _ => factors.push(format!("x^{n}")),
            }
            if factors.is_empty() {
                factors.push("1".into());
            }
            (neg, factors.join("*"))
        });
        f.write_str(&join_signed(parts, true))
    }
}

impl FromStr for QPoly {
    type Err = Error;
    /// Accepts the expression grammar with `x` as the only variable, e.g.
    /// `x^3 - (1+q)*x + 2`.
    fn from_str(s: &str) -> Result<Self> {
        let alg = Algebra::new(CommutationTable::new().scalar("x"));
        let e = alg.parse(s)?;
        let x = Var::new("x");
        let mut p = QPoly::zero();
        for (m, c) in e.terms() {
            let Monomial { jpow, word } = m;
            if *jpow != 0 || word.iter().any(|v| *v != x) {
                return Err(Error::domain(format!("'{s}' is not a polynomial in x")));
            }
            p.add_term(word.len() as u32, c);
        }
        Ok(p)
    }
}

impl Serialize for QPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `(f(qx) − f(x)) / (qx − x)`, evaluated term by term as an exact division
/// by `q − 1`.
pub fn dq(f: &QPoly) -> QPoly {
    let q_minus_one = Scalar::from_int_coeffs(&[-1, 1]);
    let mut out = QPoly::zero();
    for (n, c) in f.terms() {
        if n == 0 {
            continue;
        }
        // f(qx) − f(x) contributes c·(q^n − 1)·x^n; dividing by (q − 1)·x
        // leaves c·(q^n − 1)/(q − 1)·x^(n−1).
        let num = &c.mul_q_pow(n as i32) - c;
        let quot = num
            .div_exact(&q_minus_one)
            .expect("q^n - 1 is divisible by q - 1");
        out.add_term(n - 1, &quot);
    }
    out
}

/// Expands `(x + y)^n` with `yx = q·xy` and compares every coefficient of
/// `x^k y^(n-k)` against [`q_binomial`].
pub fn q_binomial_theorem_check(n: u32) -> Result<bool> {
    if n > BINOMIAL_CHECK_CAP {
        return Err(Error::Limit(format!(
            "binomial expansion capped at n = {BINOMIAL_CHECK_CAP}"
        )));
    }
    let alg = Algebra::new(CommutationTable::new().qcommute("x", "y", 1));
    let sum = alg.add(&alg.var("x"), &alg.var("y"));
    let expanded = alg.pow(&sum, n);
    if expanded.len() != n as usize + 1 {
        return Ok(false);
    }
    for k in 0..=n {
        let mut word = vec![Var::new("x"); k as usize];
        word.extend(std::iter::repeat_n(Var::new("y"), (n - k) as usize));
        let m = Monomial { jpow: 0, word };
        if expanded.coeff(&m) != q_binomial(n, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compares the forward difference quotient `(f(x0+δ) − f(x0))/δ` with
/// `dq(f)` at `x = x0`, `q = (x0+δ)/x0`.
pub fn doc_bridge_check(f: &QPoly, x0: &BigRational, delta: &BigRational) -> Result<bool> {
    if x0.is_zero() || delta.is_zero() {
        return Err(Error::domain("bridge check needs nonzero x0 and delta"));
    }
    if !f.is_q_free() {
        return Err(Error::domain("bridge check needs q-free coefficients"));
    }
    let one = BigRational::one();
    let x1 = x0 + delta;
    let lhs = (&f.eval(&x1, &one).unwrap() - &f.eval(x0, &one).unwrap())
        .checked_div(&Gaussian::real(delta.clone()))
        .unwrap();
    let q = &x1 / x0;
    let rhs = dq(f)
        .eval(x0, &q)
        .expect("dq of a q-free polynomial has no negative q powers");
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn q_integers() {
        assert_eq!(q_integer(3), Scalar::from_int_coeffs(&[1, 1, 1]));
        assert!(q_integer(0).is_zero());
        assert_eq!(q_integer(5).at_q_one(), Gaussian::from_int(5));
        assert_eq!(q_integer(3).to_string(), "1+q+q^2");
    }

    #[test]
    fn factorials_and_binomials() {
        let expect = &Scalar::from_int_coeffs(&[1, 1]) * &Scalar::from_int_coeffs(&[1, 1, 1]);
        assert_eq!(q_factorial(3), expect);
        assert_eq!(q_binomial(7, 0).unwrap(), Scalar::one());
        assert_eq!(q_binomial(4, 2).unwrap(), Scalar::from_int_coeffs(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(6, 2).unwrap().at_q_one(), Gaussian::from_int(15));
        assert!(q_binomial(2, 3).is_err());
    }

    #[test]
    fn dq_examples() {
        assert_eq!(
            dq(&QPoly::x_pow(3)),
            QPoly::monomial(Scalar::from_int_coeffs(&[1, 1, 1]), 2)
        );
        assert!(dq(&QPoly::constant(Scalar::from_int(7))).is_zero());
        let f: QPoly = "x^2 + x".parse().unwrap();
        assert_eq!(dq(&f), "(1+q)*x + 1".parse().unwrap());
    }

    #[test]
    fn binomial_theorem_small() {
        for n in 0..=6 {
            assert!(q_binomial_theorem_check(n).unwrap(), "n = {n}");
        }
        assert!(q_binomial_theorem_check(BINOMIAL_CHECK_CAP + 1).is_err());
    }

    #[test]
    fn bridge_examples() {
        let sq: QPoly = "x^2".parse().unwrap();
        assert!(doc_bridge_check(&sq, &r(1), &r(1)).unwrap());
        let lin: QPoly = "x".parse().unwrap();
        assert!(doc_bridge_check(&lin, &r(-3), &BigRational::new(2.into(), 7.into())).unwrap());
        let cube: QPoly = "x^3".parse().unwrap();
        assert!(doc_bridge_check(&cube, &r(2), &r(1)).unwrap());
        assert!(doc_bridge_check(&cube, &r(0), &r(1)).is_err());
        assert!(doc_bridge_check(&cube, &r(1), &r(0)).is_err());
        let qdep: QPoly = "q*x".parse().unwrap();
        assert!(doc_bridge_check(&qdep, &r(1), &r(1)).is_err());
    }

    #[test]
    fn poly_text() {
        let f: QPoly = "x^3 - (1+q)*x + 1/2 - x^3*q".parse().unwrap();
        assert_eq!(f.to_string(), "(1-q)*x^3 - (1+q)*x + 1/2");
        assert_eq!(f.to_string().parse::<QPoly>().unwrap(), f);
        assert_eq!(QPoly::zero().to_string(), "0");
        assert!("x*y".parse::<QPoly>().is_err());
        assert!("x'".parse::<QPoly>().is_err());
    }
}
