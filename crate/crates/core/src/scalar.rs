//! Exact coefficients: Gaussian rationals and Laurent polynomials in the
//! formal parameter `q` over them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A Gaussian rational `re + im·i` with `i² = -1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Gaussian {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Gaussian::real(BigRational::from_integer(n.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Gaussian::real(BigRational::new(num.into(), den.into()))
    }

    pub fn i() -> Self {
        Gaussian {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gaussian {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|²`
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(Gaussian {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    pub fn checked_div(&self, rhs: &Gaussian) -> Option<Gaussian> {
        rhs.inv().map(|r| self * &r)
    }

    /// `i^n` for any integer `n`.
    pub fn i_pow(n: i64) -> Self {
        match n.rem_euclid(4) {
            0 => Gaussian::one(),
            1 => Gaussian::i(),
            2 => -Gaussian::one(),
            _ => -Gaussian::i(),
        }
    }

    /// The value as an integer when it is a real integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.is_real() && self.re.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }

    /// True when the printed form starts with a minus sign that can be
    /// pulled out of a product.
    pub(crate) fn is_negative_like(&self) -> bool {
        (self.im.is_zero() && self.re.is_negative()) || (self.re.is_zero() && self.im.is_negative())
    }

    fn has_both_parts(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Gaussian::real(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Gaussian::real(BigRational::one())
    }
}

impl<'a> Add<&'a Gaussian> for &'a Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a Gaussian> for &'a Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a Gaussian> for &'a Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &Gaussian) -> Gaussian {
        Gaussian {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        -&self
    }
}

impl Add for Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: Gaussian) -> Gaussian {
        &self + &rhs
    }
}

impl Sub for Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: Gaussian) -> Gaussian {
        &self - &rhs
    }
}

impl Mul for Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: Gaussian) -> Gaussian {
        &self * &rhs
    }
}

impl AddAssign<&Gaussian> for Gaussian {
    fn add_assign(&mut self, rhs: &Gaussian) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl From<i64> for Gaussian {
    fn from(n: i64) -> Self {
        Gaussian::from_int(n)
    }
}

impl From<BigRational> for Gaussian {
    fn from(r: BigRational) -> Self {
        Gaussian::real(r)
    }
}

fn fmt_imag(f: &mut fmt::Formatter<'_>, im: &BigRational, leading: bool) -> fmt::Result {
    let mag = im.abs();
    if im.is_negative() {
        f.write_str("-")?;
    } else if !leading {
        f.write_str("+")?;
    }
    if mag.is_one() {
        f.write_str("i")
    } else {
        write!(f, "{}i", mag)
    }
}

impl fmt::Display for Gaussian {
    /// `3/2`, `-i`, `1/2i`, `3/2+1/2i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            fmt_imag(f, &self.im, true)
        } else {
            write!(f, "{}", self.re)?;
            fmt_imag(f, &self.im, false)
        }
    }
}

impl FromStr for Gaussian {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let scalar: Scalar = s.parse()?;
        scalar
            .as_constant()
            .ok_or_else(|| Error::domain(format!("'{s}' depends on q")))
    }
}

impl Serialize for Gaussian {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Gaussian {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(Gaussian::from_int(n)),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Laurent polynomial in `q` with Gaussian rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    coeffs: BTreeMap<i32, Gaussian>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::constant(Gaussian::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::constant(Gaussian::from_int(n))
    }

    pub fn i() -> Self {
        Scalar::constant(Gaussian::i())
    }

    pub fn constant(c: Gaussian) -> Self {
        Scalar::monomial(c, 0)
    }

    /// `c·q^k`
    pub fn monomial(c: Gaussian, k: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Scalar { coeffs }
    }

    pub fn q_pow(k: i32) -> Self {
        Scalar::monomial(Gaussian::one(), k)
    }

    /// Builds `Σ coeffs[k]·q^k` from integer coefficients.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        let mut s = Scalar::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            s.add_term(k as i32, &Gaussian::from_int(c));
        }
        s
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// Iterates `(power, coefficient)` in increasing power.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Gaussian)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i32) -> Gaussian {
        self.coeffs.get(&k).cloned().unwrap_or_else(Gaussian::zero)
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// The value when `q` does not occur.
    pub fn as_constant(&self) -> Option<Gaussian> {
        match self.coeffs.len() {
            0 => Some(Gaussian::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.values().all(Gaussian::is_real)
    }

    pub(crate) fn add_term(&mut self, k: i32, c: &Gaussian) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(Gaussian::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn scale(&self, c: &Gaussian) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `q^e`.
    pub fn mul_q_pow(&self, e: i32) -> Scalar {
        if e == 0 {
            return self.clone();
        }
        Scalar {
            coeffs: self.coeffs.iter().map(|(k, v)| (k + e, v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a rational value of `q`. Returns `None` when `q = 0` and
    /// a negative power is present.
    pub fn eval(&self, q: &BigRational) -> Option<Gaussian> {
        let mut acc = Gaussian::zero();
        for (&k, c) in &self.coeffs {
            let p = if k >= 0 {
                num::pow(q.clone(), k as usize)
            } else {
                if q.is_zero() {
                    return None;
                }
                num::pow(q.recip(), (-k) as usize)
            };
            acc += &(c * &Gaussian::real(p));
        }
        Some(acc)
    }

    /// Value at `q = 1`.
    pub fn at_q_one(&self) -> Gaussian {
        let mut acc = Gaussian::zero();
        for c in self.coeffs.values() {
            acc += c;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves
    /// a remainder (or the divisor is zero).
    pub fn div_exact(&self, divisor: &Scalar) -> Option<Scalar> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        // Normalise both to ordinary polynomials, divide, then restore the
        // offset.
        let d_lo = divisor.min_degree().unwrap();
        let d_hi = divisor.max_degree().unwrap();
        let lead = divisor.coeffs[&d_hi].inv()?;
        let mut rem = self.clone();
        let mut quot = Scalar::zero();
        while let Some(r_hi) = rem.max_degree() {
            let r_lo = rem.min_degree().unwrap();
            if r_hi - r_lo < d_hi - d_lo {
                return None;
            }
            let k = r_hi - d_hi;
            let c = &rem.coeffs[&r_hi] * &lead;
            quot.add_term(k, &c);
            rem = &rem - &divisor.mul_q_pow(k).scale(&c);
        }
        Some(quot)
    }

    /// Real parts of the coefficients, dropping any imaginary parts.
    pub fn real_coeffs(&self) -> Option<BTreeMap<i32, BigRational>> {
        if !self.is_real() {
            return None;
        }
        Some(self.coeffs.iter().map(|(k, c)| (*k, c.re.clone())).collect())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c);
        }
        out
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &rhs.coeffs {
                out.add_term(ka + kb, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<Gaussian> for Scalar {
    fn from(c: Gaussian) -> Self {
        Scalar::constant(c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

/// Writes `c·q^k` as one product, pulling a leading minus sign out of `c`.
/// Returns whether the product is negated.
pub(crate) fn fmt_coeff_q(c: &Gaussian, k: i32) -> (bool, Vec<String>) {
    let neg = c.is_negative_like();
    let mag = if neg { -c } else { c.clone() };
    let mut factors = Vec::new();
    if !mag.is_one() {
        if mag.has_both_parts() {
            factors.push(format!("({mag})"));
        } else {
            factors.push(mag.to_string());
        }
    }
    match k {
        0 => {}
        1 => factors.push("q".to_string()),
        _ => factors.push(format!("q^{k}")),
    }
    (neg, factors)
}

pub(crate) fn join_signed(parts: impl IntoIterator<Item = (bool, String)>, spaced: bool) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        match (i, neg, spaced) {
            (0, true, _) => out.push('-'),
            (0, false, _) => {}
            (_, true, true) => out.push_str(" - "),
            (_, false, true) => out.push_str(" + "),
            (_, true, false) => out.push('-'),
            (_, false, false) => out.push('+'),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Scalar {
    /// `1+q+2*q^2`, `(3/2+1/2i)*q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.coeffs.iter().map(|(&k, c)| {
            let (neg, factors) = fmt_coeff_q(c, k);
            let body = if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("*")
            };
            (neg, body)
        });
        f.write_str(&join_signed(parts, false))
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::ncalg::parse_scalar(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> Gaussian {
        Gaussian::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Gaussian::i() * &Gaussian::i(), -Gaussian::one());
        assert_eq!(Gaussian::i_pow(6), -Gaussian::one());
        assert_eq!(Gaussian::i_pow(-1), -Gaussian::i());
    }

    #[test]
    fn gaussian_inverse() {
        let z = g(3, -4);
        assert_eq!(&z * &z.inv().unwrap(), Gaussian::one());
        assert!(Gaussian::zero().inv().is_none());
    }

    #[test]
    fn gaussian_display() {
        assert_eq!(Gaussian::ratio(3, 2).to_string(), "3/2");
        assert_eq!((-Gaussian::i()).to_string(), "-i");
        assert_eq!(g(1, -1).to_string(), "1-i");
        let half_i = &Gaussian::i() * &Gaussian::ratio(1, 2);
        assert_eq!((&Gaussian::ratio(3, 2) + &half_i).to_string(), "3/2+1/2i");
    }

    #[test]
    fn scalar_zero_coefficients_are_dropped() {
        let a = Scalar::from_int_coeffs(&[1, 1]);
        let b = Scalar::from_int_coeffs(&[-1, -1]);
        assert!((&a + &b).is_zero());
        assert_eq!(Scalar::from_int_coeffs(&[0, 0, 0]), Scalar::zero());
    }

    #[test]
    fn laurent_product_and_division() {
        // (1 + q)(1 - q) = 1 - q^2
        let a = Scalar::from_int_coeffs(&[1, 1]);
        let b = Scalar::from_int_coeffs(&[1, -1]);
        let p = &a * &b;
        assert_eq!(p, Scalar::from_int_coeffs(&[1, 0, -1]));
        assert_eq!(p.div_exact(&b), Some(a.clone()));
        // q^-2 (1 + q) / q^-1 = q^-1 (1 + q)
        let shifted = a.mul_q_pow(-2);
        assert_eq!(shifted.div_exact(&Scalar::q_pow(-1)), Some(a.mul_q_pow(-1)));
        // 1 + q^2 is not divisible by 1 + q
        assert_eq!(Scalar::from_int_coeffs(&[1, 0, 1]).div_exact(&a), None);
    }

    #[test]
    fn eval_handles_laurent_terms() {
        let s = &Scalar::q_pow(-1) + &Scalar::from_int(2);
        let q = BigRational::new(1.into(), 2.into());
        assert_eq!(s.eval(&q), Some(Gaussian::from_int(4)));
        assert_eq!(s.eval(&BigRational::zero()), None);
        assert_eq!(s.at_q_one(), Gaussian::from_int(3));
    }

    #[test]
    fn scalar_display() {
        assert_eq!(Scalar::from_int_coeffs(&[1, 1, 2]).to_string(), "1+q+2*q^2");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!((-Scalar::q_pow(-1)).to_string(), "-q^-1");
    }
}
