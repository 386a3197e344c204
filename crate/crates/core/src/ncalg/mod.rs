//! Exact noncommutative expression engine for the discrete ordered calculus.
//!
//! Elements are sums of `coefficient · J^n · word`, where `word` is a product
//! of shifted variables. Every product is brought to normal form by pushing
//! `J` to the left with `Z·J → J·Z'` and then reordering the word as far as
//! the declared commutation relations allow.

mod expr;
mod parse;
mod table;

pub use expr::{Atom, Expr, Monomial, Tree, Var};
pub use table::{CommutationTable, FamilyKind, Relation};

pub(crate) use parse::parse_scalar;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Normalizing ring operations for one commutation table.
#[derive(Clone, Debug, Default)]
pub struct Algebra {
    table: CommutationTable,
}

impl Algebra {
    pub fn new(table: CommutationTable) -> Self {
        Algebra { table }
    }

    pub fn table(&self) -> &CommutationTable {
        &self.table
    }

    /// Unindexed, unshifted variable.
    pub fn var(&self, family: &str) -> Expr {
        self.var_expr(Var::new(family))
    }

    pub fn indexed_var(&self, family: &str, index: u16) -> Expr {
        self.var_expr(Var::indexed(family, index))
    }

    pub fn var_expr(&self, v: Var) -> Expr {
        let v = self.canonical_var(v);
        Expr::term(
            Scalar::one(),
            Monomial {
                jpow: 0,
                word: vec![v],
            },
        )
    }

    pub fn atom(&self, a: &Atom) -> Expr {
        match a {
            Atom::J => Expr::j(),
            Atom::Var(v) => self.var_expr(v.clone()),
        }
    }

    fn canonical_var(&self, mut v: Var) -> Var {
        if self.table.kind(&v.family) == FamilyKind::Constant {
            v.shift = 0;
        }
        v
    }

    fn shift_var(&self, v: &Var, n: u32) -> Var {
        let mut v = v.clone();
        if self.table.kind(&v.family) != FamilyKind::Constant {
            v.shift += n;
        }
        v
    }

    /// Reorders a `J`-free word to its canonical representative.
    ///
    /// The word is read as a partially commutative monoid element: at each
    /// step the smallest atom that commutes with everything before it is
    /// moved to the front. Returns the canonical word and the accumulated
    /// power of `q`.
    pub(crate) fn canonical_word(&self, mut rest: Vec<Var>) -> (Vec<Var>, i32) {
        let mut out = Vec::with_capacity(rest.len());
        let mut qexp = 0i32;
        while !rest.is_empty() {
            let mut best = 0usize;
            let mut best_exp = 0i32;
            'candidates: for i in 1..rest.len() {
                if rest[i] >= rest[best] {
                    continue;
                }
                let mut e = 0;
                for j in 0..i {
                    if rest[j] == rest[i] {
                        continue 'candidates;
                    }
                    match self.table.exchange(&rest[j], &rest[i]) {
                        Some(x) => e += x,
                        None => continue 'candidates,
                    }
                }
                best = i;
                best_exp = e;
            }
            qexp += best_exp;
            out.push(rest.remove(best));
        }
        (out, qexp)
    }

    /// Normal form of `J^jpow · word` where `word` may be in any order.
    pub fn word(&self, jpow: u32, word: Vec<Var>) -> Expr {
        let word = word.into_iter().map(|v| self.canonical_var(v)).collect();
        let (word, e) = self.canonical_word(word);
        Expr::term(Scalar::q_pow(e), Monomial { jpow, word })
    }

    /// Normal form of an arbitrary product of atoms.
    pub fn product_of_atoms(&self, atoms: &[Atom]) -> Expr {
        // Each variable is advanced once for every J to its right.
        let mut jpow = 0u32;
        let mut word = Vec::new();
        for a in atoms.iter().rev() {
            match a {
                Atom::J => jpow += 1,
                Atom::Var(v) => word.push(self.shift_var(&self.canonical_var(v.clone()), jpow)),
            }
        }
        word.reverse();
        self.word(jpow, word)
    }

    pub fn normalize(&self, tree: &Tree) -> Expr {
        match tree {
            Tree::Atom(a) => self.atom(a),
            Tree::Scalar(c) => Expr::scalar(c.clone()),
            Tree::Sum(ts) => ts
                .iter()
                .fold(Expr::zero(), |acc, t| &acc + &self.normalize(t)),
            Tree::Product(ts) => ts
                .iter()
                .fold(Expr::one(), |acc, t| self.mul(&acc, &self.normalize(t))),
        }
    }

    pub fn add(&self, a: &Expr, b: &Expr) -> Expr {
        a + b
    }

    pub fn mul(&self, a: &Expr, b: &Expr) -> Expr {
        let mut out = Expr::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut word: Vec<Var> = ma
                    .word
                    .iter()
                    .map(|v| self.shift_var(v, mb.jpow))
                    .collect();
                word.extend(mb.word.iter().cloned());
                let (word, e) = self.canonical_word(word);
                let c = (ca * cb).mul_q_pow(e);
                out.add_term(
                    Monomial {
                        jpow: ma.jpow + mb.jpow,
                        word,
                    },
                    &c,
                );
            }
        }
        out
    }

    pub fn mul_all<'a>(&self, factors: impl IntoIterator<Item = &'a Expr>) -> Expr {
        factors
            .into_iter()
            .fold(Expr::one(), |acc, f| self.mul(&acc, f))
    }

    pub fn pow(&self, a: &Expr, n: u32) -> Expr {
        (0..n).fold(Expr::one(), |acc, _| self.mul(&acc, a))
    }

    /// Time shift `e ↦ e'`: every non-constant variable gains a prime; `J`
    /// and coefficients are fixed.
    pub fn shift(&self, e: &Expr) -> Expr {
        self.shift_by(e, 1)
    }

    pub fn shift_by(&self, e: &Expr, n: u32) -> Expr {
        let mut out = Expr::zero();
        for (m, c) in e.terms() {
            let word = m.word.iter().map(|v| self.shift_var(v, n)).collect();
            let (word, q) = self.canonical_word(word);
            out.add_term(
                Monomial {
                    jpow: m.jpow,
                    word,
                },
                &c.mul_q_pow(q),
            );
        }
        out
    }

    /// Finite difference `d(e) = e' - e`.
    pub fn difference(&self, e: &Expr) -> Expr {
        &self.shift(e) - e
    }

    /// Ordered derivative `D(e) = [e, J]`, which normalizes to `J·(e' - e)`.
    pub fn derivative(&self, e: &Expr) -> Expr {
        self.commutator(e, &Expr::j())
    }

    pub fn commutator(&self, a: &Expr, b: &Expr) -> Expr {
        &self.mul(a, b) - &self.mul(b, a)
    }

    /// `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]`
    pub fn jacobi_defect(&self, a: &Expr, b: &Expr, c: &Expr) -> Expr {
        let x = self.commutator(a, &self.commutator(b, c));
        let y = self.commutator(b, &self.commutator(c, a));
        let z = self.commutator(c, &self.commutator(a, b));
        &(&x + &y) + &z
    }

    /// `d(ab) - a'·d(b) - d(a)·b`
    pub fn leibniz_defect_difference(&self, a: &Expr, b: &Expr) -> Expr {
        let lhs = self.difference(&self.mul(a, b));
        let r1 = self.mul(&self.shift(a), &self.difference(b));
        let r2 = self.mul(&self.difference(a), b);
        &(&lhs - &r1) - &r2
    }

    /// `D(ab) - a·D(b) - D(a)·b`
    pub fn leibniz_defect_derivative(&self, a: &Expr, b: &Expr) -> Expr {
        let lhs = self.derivative(&self.mul(a, b));
        let r1 = self.mul(a, &self.derivative(b));
        let r2 = self.mul(&self.derivative(a), b);
        &(&lhs - &r1) - &r2
    }

    /// `D([a,b]) - [D(a),b] - [a,D(b)]`
    pub fn commutator_leibniz_defect(&self, a: &Expr, b: &Expr) -> Expr {
        let lhs = self.derivative(&self.commutator(a, b));
        let r1 = self.commutator(&self.derivative(a), b);
        let r2 = self.commutator(a, &self.derivative(b));
        &(&lhs - &r1) - &r2
    }

    /// `g^{ij} = [X^i, D(X^j)]` for an indexed family declared in the table.
    pub fn metric(&self, i: u16, j: u16, family: &str) -> Result<Expr> {
        let count = self.table.index_range(family).ok_or_else(|| {
            Error::domain(format!("family '{family}' is not declared as indexed"))
        })?;
        for k in [i, j] {
            if k == 0 || k > count {
                return Err(Error::domain(format!(
                    "index {k} outside 1..={count} for family '{family}'"
                )));
            }
        }
        let xi = self.indexed_var(family, i);
        let xj = self.indexed_var(family, j);
        Ok(self.commutator(&xi, &self.derivative(&xj)))
    }

    /// Parses the canonical text form and normalizes it under this table.
    pub fn parse(&self, src: &str) -> Result<Expr> {
        let tree = parse::parse_tree(src)?;
        Ok(self.normalize(&tree))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gaussian;

    fn free() -> Algebra {
        Algebra::default()
    }

    fn scalar_t() -> Algebra {
        Algebra::new(CommutationTable::new().scalar("T").constant("c"))
    }

    fn x(alg: &Algebra, shift: u32) -> Expr {
        alg.var_expr(Var::new("X").primed(shift))
    }

    #[test]
    fn j_moves_left_with_a_prime() {
        let alg = free();
        let xj = alg.mul(&alg.var("X"), &Expr::j());
        assert_eq!(xj, alg.mul(&Expr::j(), &x(&alg, 1)));
        assert_eq!(xj.to_string(), "J^1*X'");
        // already normal
        assert_eq!(alg.mul(&Expr::j(), &alg.var("X")).to_string(), "J^1*X");
    }

    #[test]
    fn j_powers_collect() {
        let alg = free();
        let jj = alg.mul(&Expr::j(), &Expr::j());
        assert_eq!(jj, Expr::j_pow(2));
        assert_eq!(jj.to_string(), "J^2");
    }

    #[test]
    fn scalar_family_sorts_by_shift() {
        let alg = scalar_t();
        let t = alg.var("T");
        let tp = alg.shift(&t);
        assert_eq!(alg.mul(&tp, &t), alg.mul(&t, &tp));
        assert_eq!(alg.mul(&tp, &t).to_string(), "T*T'");
        // free families do not reorder
        let free = free();
        let xp = x(&free, 1);
        assert_ne!(free.mul(&xp, &x(&free, 0)), free.mul(&x(&free, 0), &xp));
    }

    #[test]
    fn addition_merges_and_cancels() {
        let alg = free();
        let x0 = x(&alg, 0);
        assert_eq!(&x0 + &Expr::zero(), x0);
        assert_eq!((&x0 + &x0).to_string(), "2*X");
        let dx = alg.difference(&x0);
        assert_eq!(&dx + &x0, x(&alg, 1));
        assert!((&x0 - &x0).is_zero());
    }

    #[test]
    fn q_plane_reorders_with_phase() {
        let alg = Algebra::new(CommutationTable::new().qcommute("x", "y", 1));
        let yx = alg.mul(&alg.var("y"), &alg.var("x"));
        assert_eq!(yx, alg.mul(&alg.var("x"), &alg.var("y")).scale(&Scalar::q_pow(1)));
        assert_eq!(yx.to_string(), "q*x*y");
        // declared in the opposite order gives the inverse phase
        let alg = Algebra::new(CommutationTable::new().qcommute("y", "x", 1));
        let yx = alg.mul(&alg.var("y"), &alg.var("x"));
        assert_eq!(yx.to_string(), "q^-1*x*y");
    }

    #[test]
    fn shift_is_a_homomorphism_fixing_j_and_constants() {
        let alg = scalar_t();
        assert_eq!(alg.shift(&Expr::j()), Expr::j());
        let c = alg.var("c");
        assert_eq!(alg.shift(&c), c);
        assert!(alg.difference(&c).is_zero());
        let xy = alg.mul(&alg.var("X"), &alg.var("Y"));
        assert_eq!(
            alg.shift(&xy),
            alg.mul(&alg.shift(&alg.var("X")), &alg.shift(&alg.var("Y")))
        );
        assert_eq!(alg.shift(&xy).to_string(), "X'*Y'");
    }

    #[test]
    fn difference_of_product() {
        let alg = free();
        let xy = alg.mul(&alg.var("X"), &alg.var("Y"));
        assert_eq!(alg.difference(&xy).to_string(), "-X*Y + X'*Y'");
        assert_eq!(alg.difference(&alg.var("X")).to_string(), "-X + X'");
    }

    #[test]
    fn derivative_examples() {
        let alg = scalar_t();
        let dx = alg.derivative(&alg.var("X"));
        assert_eq!(dx, alg.mul(&Expr::j(), &alg.difference(&alg.var("X"))));
        assert_eq!(dx.to_string(), "-J^1*X + J^1*X'");
        assert!(alg.derivative(&Expr::j()).is_zero());
        assert!(alg.derivative(&alg.var("c")).is_zero());
        let t = alg.var("T");
        let delta = alg.difference(&t);
        assert_eq!(alg.derivative(&t), alg.mul(&Expr::j(), &delta));
    }

    #[test]
    fn commutator_of_position_and_velocity() {
        let alg = free();
        let x0 = x(&alg, 0);
        let x1 = x(&alg, 1);
        let lhs = alg.commutator(&x0, &alg.derivative(&x0));
        let inner = &(&alg.mul(&x1, &x1) - &alg.mul(&x1, &x0).scale(&Scalar::from_int(2)))
            + &alg.mul(&x0, &x0);
        assert_eq!(lhs, alg.mul(&Expr::j(), &inner));
        assert!(alg.commutator(&x0, &x0).is_zero());
        let ab = alg.commutator(&alg.var("A"), &alg.var("B"));
        assert_eq!(ab.len(), 2);
        assert_eq!(ab.to_string(), "A*B - B*A");
    }

    #[test]
    fn identities_on_small_cases() {
        let alg = scalar_t();
        let (xv, yv, zv) = (alg.var("X"), alg.var("Y"), alg.var("Z"));
        let j = Expr::j();
        assert!(alg.jacobi_defect(&xv, &yv, &j).is_zero());
        assert!(alg.jacobi_defect(&xv, &xv, &j).is_zero());
        assert!(alg.leibniz_defect_difference(&xv, &yv).is_zero());
        assert!(alg.leibniz_defect_difference(&xv, &alg.var("c")).is_zero());
        assert!(alg.leibniz_defect_derivative(&xv, &yv).is_zero());
        assert!(alg.leibniz_defect_derivative(&xv, &xv).is_zero());
        assert!(alg
            .leibniz_defect_derivative(&alg.mul(&xv, &yv), &zv)
            .is_zero());
    }

    #[test]
    fn lemma_statement_ordering_fails_but_proof_ordering_holds() {
        // D(XY) = X·D(Y) + D(Y)·X is false for free X, Y.
        let alg = free();
        let (xv, yv) = (alg.var("X"), alg.var("Y"));
        let lhs = alg.derivative(&alg.mul(&xv, &yv));
        let wrong = &alg.mul(&xv, &alg.derivative(&yv)) + &alg.mul(&alg.derivative(&yv), &xv);
        assert_ne!(lhs, wrong);
    }

    #[test]
    fn metric_symmetry_under_commuting_family() {
        let table = CommutationTable::new()
            .indexed("X", FamilyKind::Free, 3)
            .commute("X", "X");
        let alg = Algebra::new(table);
        let g11 = alg.metric(1, 1, "X").unwrap();
        assert_eq!(
            g11.to_string(),
            "J^1*X[1]*X[1] - 2*J^1*X'[1]*X[1] + J^1*X'[1]*X'[1]"
        );
        for i in 1..=3 {
            for j in 1..=3 {
                assert_eq!(alg.metric(i, j, "X").unwrap(), alg.metric(j, i, "X").unwrap());
            }
        }
        assert!(matches!(alg.metric(0, 1, "X"), Err(Error::Domain(_))));
        assert!(matches!(alg.metric(1, 4, "X"), Err(Error::Domain(_))));
        assert!(matches!(alg.metric(1, 1, "Y"), Err(Error::Domain(_))));
    }

    #[test]
    fn metric_asymmetric_for_free_family() {
        let alg = Algebra::new(CommutationTable::new().indexed("X", FamilyKind::Free, 2));
        let diff = &alg.metric(1, 2, "X").unwrap() - &alg.metric(2, 1, "X").unwrap();
        assert!(!diff.is_zero());
    }

    #[test]
    fn scalar_no_go_product_form() {
        let alg = Algebra::new(CommutationTable::new().scalar("A").scalar("B"));
        let (a, b) = (alg.var("A"), alg.var("B"));
        let lhs = alg.commutator(&a, &alg.derivative(&b));
        let rhs = alg.mul_all([&Expr::j(), &alg.difference(&a), &alg.difference(&b)]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn scalar_source_commutator_carries_three_js() {
        // [DT, DDT] for scalar T. The bracket of J·Δ with J²·(Δ'-Δ) carries
        // J³ in front of Δ''(Δ'-Δ) - (Δ''-Δ')Δ.
        let alg = scalar_t();
        let t = alg.var("T");
        let dt = alg.derivative(&t);
        let ddt = alg.derivative(&dt);
        let lhs = alg.commutator(&dt, &ddt);
        let delta = alg.difference(&t);
        let d1 = alg.shift(&delta);
        let d2 = alg.shift(&d1);
        let poly = &alg.mul(&d2, &(&d1 - &delta)) - &alg.mul(&(&d2 - &d1), &delta);
        assert_eq!(lhs, alg.mul(&Expr::j_pow(3), &poly));
        assert_ne!(lhs, alg.mul(&Expr::j_pow(2), &poly));
    }

    #[test]
    fn canonical_word_is_order_independent_for_partial_commutation() {
        // a commutes with b and c; b and c do not commute. Both spellings of
        // the same element must reach one normal form.
        let table = CommutationTable::new().commute("a", "b").commute("a", "c");
        let alg = Algebra::new(table);
        let (a, b, c) = (Var::new("a"), Var::new("b"), Var::new("c"));
        let w1 = alg.word(0, vec![c.clone(), b.clone(), a.clone()]);
        let w2 = alg.word(0, vec![a.clone(), c.clone(), b.clone()]);
        let w3 = alg.word(0, vec![c.clone(), a.clone(), b.clone()]);
        assert_eq!(w1, w2);
        assert_eq!(w1, w3);
        assert_eq!(w1.to_string(), "a*c*b");
    }

    #[test]
    fn gaussian_coefficients_display() {
        let alg = Algebra::new(CommutationTable::new().qcommute("x", "y", 1));
        let c = Scalar::constant(&Gaussian::ratio(3, 2) + &(&Gaussian::i() * &Gaussian::ratio(1, 2)))
            .mul_q_pow(-1);
        let e = alg.mul(&alg.var("x"), &alg.var("y")).scale(&c);
        assert_eq!(e.to_string(), "(3/2+1/2i)*q^-1*x*y");
        let e2 = alg.parse("2*J^1*X'[1]*Y[2]").unwrap();
        assert_eq!(e2.to_string(), "2*J^1*X'[1]*Y[2]");
    }
}
