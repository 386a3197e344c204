mod common;

use num::{BigInt, BigRational, Zero};
use proptest::prelude::*;

use ordcalc::qcalc::{doc_bridge_check, dq, q_binomial, q_integer, QPoly};
use ordcalc::{Gaussian, Scalar};

fn nonzero_rational() -> impl Strategy<Value = BigRational> {
    common::rational().prop_filter("nonzero", |r| !r.is_zero())
}

#[test]
fn dq_on_monomials() {
    for n in 1..=20u32 {
        let q_int = Scalar::from_int_coeffs(&vec![1; n as usize]);
        assert_eq!(q_integer(n), q_int);
        assert_eq!(dq(&QPoly::x_pow(n)), QPoly::monomial(q_int, n - 1));
    }
}

#[test]
fn binomials_at_q_one_are_classical() {
    let mut row = vec![BigInt::from(1)];
    for n in 0..=14u32 {
        for k in 0..=n {
            let b = q_binomial(n, k).unwrap();
            assert_eq!(b, q_binomial(n, n - k).unwrap());
            assert_eq!(b.at_q_one(), Gaussian::real(BigRational::from_integer(row[k as usize].clone())));
        }
        let mut next = vec![BigInt::from(1); n as usize + 2];
        for k in 1..=n as usize {
            next[k] = &row[k - 1] + &row[k];
        }
        row = next;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bridge_holds_for_random_polynomials(
        coeffs in prop::collection::vec(common::rational(), 1..=7),
        x0 in nonzero_rational(),
        delta in nonzero_rational(),
    ) {
        let f = QPoly::from_rationals(&coeffs);
        prop_assert!(doc_bridge_check(&f, &x0, &delta).unwrap());
    }

    #[test]
    fn dq_is_linear(
        a in prop::collection::vec(common::rational(), 1..=6),
        b in prop::collection::vec(common::rational(), 1..=6),
    ) {
        let (fa, fb) = (QPoly::from_rationals(&a), QPoly::from_rationals(&b));
        prop_assert_eq!(dq(&(&fa + &fb)), &dq(&fa) + &dq(&fb));
    }

    #[test]
    fn poly_text_round_trip(a in prop::collection::vec(common::scalar(), 0..=5)) {
        let mut f = QPoly::zero();
        for (n, c) in a.iter().enumerate() {
            f.add_term(n as u32, c);
        }
        prop_assert_eq!(f.to_string().parse::<QPoly>().unwrap(), f);
    }
}
