//! Seeded random inputs for the randomized verification suites.

use num::{BigInt, BigRational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ncalg::{Algebra, CommutationTable, Expr, Tree, Var};
use crate::poisson::{Flow, PolyQP};
use crate::qcalc::QPoly;
use crate::scalar::{Gaussian, Scalar};

/// Free families `X`, `Y`; a scalar family `A`; a constant `c`; and a
/// q-commuting pair `x`, `y` with `yx = q·xy`.
pub fn mixed_table() -> CommutationTable {
    CommutationTable::new()
        .scalar("A")
        .constant("c")
        .qcommute("x", "y", 1)
}

const FAMILIES: [&str; 6] = ["X", "Y", "A", "c", "x", "y"];

pub struct Sampler {
    rng: ChaCha8Rng,
    /// Atoms per product, `J` included.
    pub max_atoms: usize,
    pub max_shift: u32,
    pub max_terms: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_atoms: 6,
            max_shift: 3,
            max_terms: 3,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Nonzero small-height rational.
    pub fn rational(&mut self) -> BigRational {
        let den = self.rng.gen_range(1..=4i64);
        let mut num = self.rng.gen_range(-6..=6i64);
        if num == 0 {
            num = 1;
        }
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// Rational that may be zero.
    pub fn rational_or_zero(&mut self) -> BigRational {
        if self.rng.gen_bool(0.2) {
            BigRational::from_integer(0.into())
        } else {
            self.rational()
        }
    }

    pub fn gaussian(&mut self) -> Gaussian {
        let re = self.rational_or_zero();
        let im = if self.rng.gen_bool(0.3) {
            self.rational_or_zero()
        } else {
            BigRational::from_integer(0.into())
        };
        let g = Gaussian::new(re, im);
        if num::Zero::is_zero(&g) {
            Gaussian::from_int(1)
        } else {
            g
        }
    }

    /// Usually a constant, sometimes a short Laurent polynomial in `q`.
    pub fn scalar(&mut self) -> Scalar {
        let mut s = Scalar::constant(self.gaussian());
        if self.rng.gen_bool(0.25) {
            let k = self.rng.gen_range(-2..=2);
            s = &s + &Scalar::monomial(self.gaussian(), k);
        }
        s
    }

    pub fn var(&mut self) -> Var {
        let family = FAMILIES[self.rng.gen_range(0..FAMILIES.len())];
        Var::new(family).primed(self.rng.gen_range(0..=self.max_shift))
    }

    /// Product of `1..=max_atoms` atoms, about one in five being `J`.
    pub fn product_tree(&mut self) -> Tree {
        let n = self.rng.gen_range(1..=self.max_atoms);
        let atoms = (0..n).map(|_| {
            if self.rng.gen_bool(0.2) {
                Tree::j()
            } else {
                Tree::var(self.var())
            }
        });
        let atoms: Vec<Tree> = atoms.collect();
        Tree::product(atoms)
    }

    /// Sum of `1..=max_terms` scaled products.
    pub fn tree(&mut self) -> Tree {
        let n = self.rng.gen_range(1..=self.max_terms);
        let terms: Vec<Tree> = (0..n)
            .map(|_| Tree::product([Tree::Scalar(self.scalar()), self.product_tree()]))
            .collect();
        Tree::sum(terms)
    }

    pub fn expr(&mut self, alg: &Algebra) -> Expr {
        alg.normalize(&self.tree())
    }

    /// Random polynomial in `q, p` of total degree at most `max_degree`.
    pub fn poly_qp(&mut self, max_degree: u32) -> PolyQP {
        let mut out = PolyQP::zero();
        let n = self.rng.gen_range(1..=4);
        for _ in 0..n {
            let total = self.rng.gen_range(0..=max_degree);
            let a = self.rng.gen_range(0..=total);
            out = &out + &PolyQP::monomial(self.rational(), a, total - a);
        }
        out
    }

    pub fn flow(&mut self, max_degree: u32) -> Flow {
        Flow::new(self.poly_qp(max_degree), self.poly_qp(max_degree))
    }

    /// Polynomial in `x` with rational coefficients and degree at most `max_degree`.
    pub fn rational_qpoly(&mut self, max_degree: u32) -> QPoly {
        let deg = self.rng.gen_range(0..=max_degree) as usize;
        let coeffs: Vec<BigRational> = (0..=deg).map(|_| self.rational_or_zero()).collect();
        QPoly::from_rationals(&coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_samples() {
        let alg = Algebra::new(mixed_table());
        let mut a = Sampler::new(11);
        let mut b = Sampler::new(11);
        for _ in 0..20 {
            assert_eq!(a.expr(&alg), b.expr(&alg));
            assert_eq!(a.poly_qp(4), b.poly_qp(4));
        }
    }

    #[test]
    fn respects_limits() {
        let alg = Algebra::new(mixed_table());
        let mut s = Sampler::new(3);
        for _ in 0..50 {
            let e = s.expr(&alg);
            for (m, _) in e.terms() {
                assert!(m.word.len() + m.jpow as usize <= s.max_atoms);
            }
            assert!(s.poly_qp(4).degree().unwrap_or(0) <= 4);
            assert!(s.rational_qpoly(6).degree().unwrap_or(0) <= 6);
        }
    }
}
