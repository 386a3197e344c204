mod common;

use proptest::prelude::*;

use ordcalc::ncalg::{Algebra, Expr, Tree};

fn alg() -> Algebra {
    Algebra::new(common::table())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn reassociation_and_reordering_of_sums(
        factors in prop::collection::vec(common::tree(), 2..=4),
        split in 1usize..4,
        summands in prop::collection::vec(common::product(), 1..=4).prop_shuffle(),
    ) {
        let alg = alg();
        let exprs: Vec<Expr> = factors.iter().map(|t| alg.normalize(t)).collect();
        let left = exprs.iter().skip(1).fold(exprs[0].clone(), |acc, e| alg.mul(&acc, e));
        let right = exprs[..exprs.len() - 1]
            .iter()
            .rev()
            .fold(exprs[exprs.len() - 1].clone(), |acc, e| alg.mul(e, &acc));
        let split = split.min(exprs.len() - 1);
        let halves = alg.mul(&alg.mul_all(&exprs[..split]), &alg.mul_all(&exprs[split..]));
        let flat = alg.normalize(&Tree::Product(factors.clone()));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(&left, &halves);
        prop_assert_eq!(&left, &flat);

        let sum = alg.normalize(&Tree::Sum(summands.clone()));
        let rev = alg.normalize(&Tree::Sum(summands.into_iter().rev().collect()));
        prop_assert_eq!(sum, rev);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normalization_is_idempotent(t in common::tree()) {
        let alg = alg();
        let e = alg.normalize(&t);
        prop_assert_eq!(alg.parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn shift_is_a_ring_homomorphism(a in common::tree(), b in common::tree()) {
        let alg = alg();
        let (a, b) = (alg.normalize(&a), alg.normalize(&b));
        prop_assert_eq!(alg.shift(&alg.mul(&a, &b)), alg.mul(&alg.shift(&a), &alg.shift(&b)));
        prop_assert_eq!(alg.shift(&(&a + &b)), &alg.shift(&a) + &alg.shift(&b));
    }

    #[test]
    fn derivative_is_j_times_difference(a in common::tree()) {
        let alg = alg();
        let a = alg.normalize(&a);
        prop_assert_eq!(alg.derivative(&a), alg.mul(&Expr::j(), &alg.difference(&a)));
    }

    #[test]
    fn leibniz_and_jacobi_defects_vanish(
        a in common::tree(),
        b in common::tree(),
        c in common::tree(),
    ) {
        let alg = alg();
        let (a, b, c) = (alg.normalize(&a), alg.normalize(&b), alg.normalize(&c));
        prop_assert!(alg.leibniz_defect_difference(&a, &b).is_zero());
        prop_assert!(alg.leibniz_defect_derivative(&a, &b).is_zero());
        prop_assert!(alg.jacobi_defect(&a, &b, &c).is_zero());
        prop_assert!(alg.commutator_leibniz_defect(&a, &b).is_zero());
    }
}

#[test]
fn commuting_scalars_bracket_against_velocity() {
    // For scalar A, B: [A, D(B)] = J·(A' − A)(B' − B) up to the order of
    // commuting factors, so [A, DB] = 0 needs a vanishing increment.
    let alg = Algebra::new(ordcalc::CommutationTable::new().scalar("A").scalar("B"));
    let (a, b) = (alg.var("A"), alg.var("B"));
    let got = alg.commutator(&a, &alg.derivative(&b));
    let expected = alg.mul(
        &Expr::j(),
        &alg.mul(&alg.difference(&a), &alg.difference(&b)),
    );
    assert_eq!(got, expected);
    let self_bracket = alg.commutator(&a, &alg.derivative(&a));
    assert_eq!(self_bracket, alg.mul(&Expr::j(), &alg.pow(&alg.difference(&a), 2)));
}
