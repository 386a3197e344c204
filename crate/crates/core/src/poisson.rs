//! Commutative polynomial mechanics on the phase plane `(q, p)`.
//!
//! The Poisson bracket obeys a Leibniz rule in time exactly when the flow is
//! divergence free, which is what Hamilton's equations guarantee:
//!
//! ```text
//! d/dt {A,B} = {dA/dt, B} + {A, dB/dt} - {A,B}·(∂q̇/∂q + ∂ṗ/∂p)
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::join_signed;
use crate::text::Cursor;

/// Polynomial in `q` and `p` with rational coefficients, keyed by
/// `(deg_q, deg_p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyQP {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl PolyQP {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(BigRational::from_integer(n.into()))
    }

    /// `c·q^a·p^b`
    pub fn monomial(c: BigRational, a: u32, b: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((a, b), c);
        }
        PolyQP { terms }
    }

    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1, 0)
    }

    pub fn p() -> Self {
        Self::monomial(BigRational::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigRational)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, a: u32, b: u32) -> BigRational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    fn add_term(&mut self, key: (u32, u32), c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &BigRational) -> PolyQP {
        let mut out = PolyQP::zero();
        for (k, v) in &self.terms {
            out.add_term(*k, &(v * c));
        }
        out
    }

    pub fn d_dq(&self) -> PolyQP {
        let mut out = PolyQP::zero();
        for (&(a, b), c) in &self.terms {
            if a > 0 {
                out.add_term((a - 1, b), &(c * BigRational::from_integer(a.into())));
            }
        }
        out
    }

    pub fn d_dp(&self) -> PolyQP {
        let mut out = PolyQP::zero();
        for (&(a, b), c) in &self.terms {
            if b > 0 {
                out.add_term((a, b - 1), &(c * BigRational::from_integer(b.into())));
            }
        }
        out
    }

    pub fn eval(&self, q: &BigRational, p: &BigRational) -> BigRational {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c * num::pow(q.clone(), a as usize) * num::pow(p.clone(), b as usize))
            .fold(BigRational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Add<&'a PolyQP> for &'a PolyQP {
    type Output = PolyQP;
    fn add(self, rhs: &PolyQP) -> PolyQP {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v);
        }
        out
    }
}

impl<'a> Sub<&'a PolyQP> for &'a PolyQP {
    type Output = PolyQP;
    fn sub(self, rhs: &PolyQP) -> PolyQP {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, &-v);
        }
        out
    }
}

impl<'a> Mul<&'a PolyQP> for &'a PolyQP {
    type Output = PolyQP;
    fn mul(self, rhs: &PolyQP) -> PolyQP {
        let mut out = PolyQP::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &PolyQP {
    type Output = PolyQP;
    fn neg(self) -> PolyQP {
        PolyQP {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Add for PolyQP {
    type Output = PolyQP;
    fn add(self, rhs: PolyQP) -> PolyQP {
        &self + &rhs
    }
}

impl Sub for PolyQP {
    type Output = PolyQP;
    fn sub(self, rhs: PolyQP) -> PolyQP {
        &self - &rhs
    }
}

impl Mul for PolyQP {
    type Output = PolyQP;
    fn mul(self, rhs: PolyQP) -> PolyQP {
        &self * &rhs
    }
}

impl Neg for PolyQP {
    type Output = PolyQP;
    fn neg(self) -> PolyQP {
        -&self
    }
}

impl fmt::Display for PolyQP {
    /// Sparse form such as `3/2*q^2*p - p^3`, highest total degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(a, b)| std::cmp::Reverse((a + b, a)));
        let parts = keys.into_iter().map(|(a, b)| {
            let c = &self.terms[&(a, b)];
            let mut factors = Vec::new();
            let mag = c.abs();
            if !mag.is_one() || (a == 0 && b == 0) {
                factors.push(mag.to_string());
            }
            for (name, e) in [("q", a), ("p", b)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            (c.is_negative(), factors.join("*"))
        });
        f.write_str(&join_signed(parts, true))
    }
}

impl FromStr for PolyQP {
    type Err = Error;

    /// Accepts sums of products of rationals, `q`, `p` and their powers.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let out = poly_expr(&mut cur)?;
        if !cur.at_end() {
            return cur.error("unexpected trailing input");
        }
        Ok(out)
    }
}

fn poly_expr(cur: &mut Cursor) -> Result<PolyQP> {
    let mut acc = PolyQP::zero();
    let mut negate = if cur.eat(b'-') {
        true
    } else {
        cur.eat(b'+');
        false
    };
    loop {
        let mut t = poly_power(cur)?;
        while cur.eat(b'*') {
            t = &t * &poly_power(cur)?;
        }
        acc = if negate { &acc - &t } else { &acc + &t };
        if cur.eat(b'+') {
            negate = false;
        } else if cur.eat(b'-') {
            negate = true;
        } else {
            return Ok(acc);
        }
    }
}

fn poly_power(cur: &mut Cursor) -> Result<PolyQP> {
    cur.skip_ws();
    let base = match cur.peek() {
        Some(c) if c.is_ascii_digit() => PolyQP::constant(cur.unsigned_rational()?),
        Some(b'(') => {
            cur.bump();
            let inner = poly_expr(cur)?;
            cur.expect(b')')?;
            inner
        }
        _ => match cur.ident() {
            Some("q") => PolyQP::q(),
            Some("p") => PolyQP::p(),
            Some(other) => return cur.error(format!("unknown variable '{other}'")),
            None => return cur.error("expected a factor"),
        },
    };
    if cur.eat(b'^') {
        let e = cur.uint()?;
        if e > 1024 {
            return cur.error("exponent too large");
        }
        Ok((0..e).fold(PolyQP::one(), |acc, _| &acc * &base))
    } else {
        Ok(base)
    }
}

/// An autonomous polynomial vector field on the phase plane.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Flow {
    pub qdot: PolyQP,
    pub pdot: PolyQP,
}

impl Flow {
    pub fn new(qdot: PolyQP, pdot: PolyQP) -> Self {
        Flow { qdot, pdot }
    }
}

/// `{A,B} = ∂A/∂q·∂B/∂p − ∂A/∂p·∂B/∂q`
pub fn poisson_bracket(a: &PolyQP, b: &PolyQP) -> PolyQP {
    &(&a.d_dq() * &b.d_dp()) - &(&a.d_dp() * &b.d_dq())
}

/// Time derivative of `a` along `f` by the chain rule.
pub fn total_derivative(a: &PolyQP, f: &Flow) -> PolyQP {
    &(&a.d_dq() * &f.qdot) + &(&a.d_dp() * &f.pdot)
}

/// `∂q̇/∂q + ∂ṗ/∂p`
pub fn divergence(f: &Flow) -> PolyQP {
    &f.qdot.d_dq() + &f.pdot.d_dp()
}

/// Hamilton's equations `q̇ = ∂H/∂p`, `ṗ = −∂H/∂q`.
pub fn hamiltonian_flow(h: &PolyQP) -> Flow {
    Flow {
        qdot: h.d_dp(),
        pdot: -h.d_dq(),
    }
}

/// `d/dt{a,b} − {da/dt, b} − {a, db/dt}`; equals `−{a,b}·div(f)`.
pub fn leibniz_defect(a: &PolyQP, b: &PolyQP, f: &Flow) -> PolyQP {
    let lhs = total_derivative(&poisson_bracket(a, b), f);
    let r1 = poisson_bracket(&total_derivative(a, f), b);
    let r2 = poisson_bracket(a, &total_derivative(b, f));
    &(&lhs - &r1) - &r2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> PolyQP {
        s.parse().unwrap()
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(poisson_bracket(&PolyQP::q(), &PolyQP::p()), PolyQP::one());
        assert_eq!(poisson_bracket(&poly("q^2"), &PolyQP::p()), poly("2*q"));
        let a = poly("3*q^2*p - p^3 + 1/2*q");
        assert!(poisson_bracket(&a, &a).is_zero());
    }

    #[test]
    fn total_derivative_examples() {
        let osc = Flow::new(PolyQP::p(), -PolyQP::q());
        assert_eq!(total_derivative(&PolyQP::q(), &osc), PolyQP::p());
        let grow = Flow::new(PolyQP::q(), PolyQP::zero());
        assert_eq!(total_derivative(&poly("q^2"), &grow), poly("2*q^2"));
        assert!(total_derivative(&PolyQP::one(), &osc).is_zero());
    }

    #[test]
    fn divergence_examples() {
        assert!(divergence(&Flow::new(PolyQP::p(), -PolyQP::q())).is_zero());
        assert_eq!(divergence(&Flow::new(PolyQP::q(), PolyQP::zero())), PolyQP::one());
        assert!(divergence(&Flow::default()).is_zero());
    }

    #[test]
    fn hamiltonian_flow_examples() {
        let h = poly("1/2*p^2 + 1/2*q^2");
        assert_eq!(hamiltonian_flow(&h), Flow::new(PolyQP::p(), -PolyQP::q()));
        assert_eq!(hamiltonian_flow(&PolyQP::zero()), Flow::default());
        assert_eq!(
            hamiltonian_flow(&poly("q*p")),
            Flow::new(PolyQP::q(), -PolyQP::p())
        );
    }

    #[test]
    fn leibniz_defect_examples() {
        let grow = Flow::new(PolyQP::q(), PolyQP::zero());
        assert_eq!(
            leibniz_defect(&PolyQP::q(), &PolyQP::p(), &grow),
            PolyQP::from_int(-1)
        );
        let h = poly("q^3*p - 2*p^2 + q");
        let f = hamiltonian_flow(&h);
        assert!(leibniz_defect(&poly("q^2*p"), &poly("p^3 - q"), &f).is_zero());
        assert!(leibniz_defect(&PolyQP::q(), &PolyQP::q(), &grow).is_zero());
    }

    #[test]
    fn text_form() {
        let a = poly("3/2*q^2*p - p^3");
        assert_eq!(a.to_string(), "3/2*q^2*p - p^3");
        assert_eq!(poly("-1 + q").to_string(), "q - 1");
        assert_eq!(PolyQP::zero().to_string(), "0");
        assert_eq!(poly("(q + p)^2"), poly("q^2 + 2*q*p + p^2"));
        assert!("x + q".parse::<PolyQP>().is_err());
    }
}
