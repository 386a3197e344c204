mod common;

use num::Zero;
use proptest::prelude::*;

use ordcalc::hopf::{doc_derivative, sweedler, FiniteHopf};
use ordcalc::Gaussian;

fn element() -> impl Strategy<Value = Vec<Gaussian>> {
    prop::collection::vec(common::gaussian(), 4)
}

fn add(a: &[Gaussian], b: &[Gaussian]) -> Vec<Gaussian> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn conj(h: &FiniteHopf, g: &[Gaussian], x: &[Gaussian]) -> Vec<Gaussian> {
    h.mul(&h.mul(&h.antipode_of(g), x), g)
}

proptest! {
    #[test]
    fn sweedler_identities_on_random_elements(a in element(), b in element()) {
        let h = sweedler();
        let g = h.element("g").unwrap();
        let d = |v: &[Gaussian]| doc_derivative(&h, &g, v).unwrap();

        // antipode reverses products
        prop_assert_eq!(h.antipode_of(&h.mul(&a, &b)), h.mul(&h.antipode_of(&b), &h.antipode_of(&a)));
        // conjugation by g is an algebra map and equals S²
        prop_assert_eq!(conj(&h, &g, &h.mul(&a, &b)), h.mul(&conj(&h, &g, &a), &conj(&h, &g, &b)));
        prop_assert_eq!(conj(&h, &g, &a), h.antipode_of(&h.antipode_of(&a)));
        // product rule and D = g(S² − id)
        prop_assert_eq!(d(&h.mul(&a, &b)), add(&h.mul(&a, &d(&b)), &h.mul(&d(&a), &b)));
        let s2_minus: Vec<Gaussian> = h
            .antipode_of(&h.antipode_of(&a))
            .iter()
            .zip(&a)
            .map(|(x, y)| x - y)
            .collect();
        prop_assert_eq!(d(&a), h.mul(&g, &s2_minus));
    }
}

#[test]
fn clock_fixes_unit_and_itself() {
    let h = sweedler();
    let g = h.element("g").unwrap();
    for v in [h.one(), g.clone()] {
        assert!(doc_derivative(&h, &g, &v).unwrap().iter().all(Zero::is_zero));
    }
}

#[test]
fn sweedler_antipode_has_order_four() {
    let h = sweedler();
    let s = |v: &[Gaussian]| h.antipode_of(v);
    let mut s2_is_id = true;
    for a in 0..4 {
        let e = h.basis(a);
        let s2 = s(&s(&e));
        s2_is_id &= s2 == e;
        assert_eq!(s(&s(&s2)), e);
    }
    assert!(!s2_is_id);
}
