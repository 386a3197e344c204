#![allow(dead_code)]

use num::{BigInt, BigRational};
use proptest::prelude::*;

use ordcalc::ncalg::{CommutationTable, Tree, Var};
use ordcalc::poisson::{Flow, PolyQP};
use ordcalc::{Gaussian, Scalar};

pub const FAMILIES: [&str; 6] = ["X", "Y", "A", "c", "x", "y"];

/// `A` scalar, `c` constant, `yx = q·xy`, `X` and `Y` free.
pub fn table() -> CommutationTable {
    CommutationTable::new()
        .scalar("A")
        .constant("c")
        .qcommute("x", "y", 1)
}

pub fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn gaussian() -> impl Strategy<Value = Gaussian> {
    (rational(), prop_oneof![3 => Just(0i64), 1 => -2i64..=2])
        .prop_map(|(re, im)| Gaussian::new(re, BigRational::from_integer(im.into())))
}

pub fn scalar() -> impl Strategy<Value = Scalar> {
    (gaussian(), prop_oneof![3 => Just(0i32), 1 => -2i32..=2])
        .prop_map(|(c, k)| Scalar::monomial(c, k))
}

pub fn var() -> impl Strategy<Value = Var> {
    (0..FAMILIES.len(), 0u32..=3).prop_map(|(f, s)| Var::new(FAMILIES[f]).primed(s))
}

pub fn atom() -> impl Strategy<Value = Tree> {
    prop_oneof![1 => Just(Tree::j()), 4 => var().prop_map(Tree::var)]
}

/// Product of 1 to 6 atoms.
pub fn product() -> impl Strategy<Value = Tree> {
    prop::collection::vec(atom(), 1..=6).prop_map(Tree::product)
}

/// Sum of 1 to 3 scaled products.
pub fn tree() -> impl Strategy<Value = Tree> {
    prop::collection::vec((scalar(), product()), 1..=3).prop_map(|terms| {
        Tree::sum(terms.into_iter().map(|(c, p)| Tree::product([Tree::Scalar(c), p])))
    })
}

pub fn poly_qp(max_degree: u32) -> impl Strategy<Value = PolyQP> {
    prop::collection::vec((rational(), 0..=max_degree, 0..=max_degree), 0..=4).prop_map(
        move |terms| {
            terms.into_iter().fold(PolyQP::zero(), |acc, (c, a, b)| {
                let b = b.min(max_degree - a.min(max_degree));
                &acc + &PolyQP::monomial(c, a, b)
            })
        },
    )
}

pub fn flow(max_degree: u32) -> impl Strategy<Value = Flow> {
    (poly_qp(max_degree), poly_qp(max_degree)).prop_map(|(a, b)| Flow::new(a, b))
}
