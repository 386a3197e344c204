mod common;

use std::collections::BTreeMap;

use num::{One, Zero};
use proptest::prelude::*;

use ordcalc::netamp::{
    brute_force_path_sum, checkerboard_evolve, corpus, partition_function, penrose_count, Dir,
    Network,
};
use ordcalc::{Error, Gaussian};

/// Random network: each edge occupies one or two slots, slots are dealt to
/// vertices in shuffled order.
fn network() -> impl Strategy<Value = Network> {
    (1usize..=6, 1usize..=4).prop_flat_map(|(edges, verts)| {
        (
            prop::collection::vec(1u32..=3, edges),
            prop::collection::vec((any::<bool>(), 0..verts, 0..verts), edges),
            Just(verts),
            any::<prop::sample::Index>(),
        )
            .prop_map(|(domains, ends, verts, shuffle)| {
                let mut slots = Vec::new();
                for (e, (twice, u, v)) in ends.into_iter().enumerate() {
                    slots.push((u, e));
                    if twice {
                        slots.push((v, e));
                    }
                }
                let k = shuffle.index(slots.len());
                slots.rotate_left(k);
                let mut vertices = vec![Vec::new(); verts];
                for (v, e) in slots {
                    vertices[v].push(e);
                }
                Network::new(domains, vertices, BTreeMap::new()).unwrap()
            })
    })
}

/// A rule that depends only on the listed colors, with plenty of zeros.
fn rule(_vertex: usize, colors: &[u32]) -> Result<Gaussian, Error> {
    let h = colors
        .iter()
        .enumerate()
        .fold(7u32, |acc, (i, &c)| (acc * 31 + c * (i as u32 + 3)) % 11);
    Ok(match h % 4 {
        0 => Gaussian::zero(),
        1 => Gaussian::from_int(h as i64 - 5),
        2 => Gaussian::i(),
        _ => Gaussian::ratio(h as i64, 3),
    })
}

fn naive(net: &Network) -> Gaussian {
    let free = net.free_edges();
    let mut colors = vec![0u32; net.edge_count()];
    for (&e, &c) in net.fixed() {
        colors[e] = c;
    }
    let total: usize = free.iter().map(|&e| net.domains()[e] as usize).product();
    let mut sum = Gaussian::zero();
    for mut code in 0..total {
        for &e in &free {
            let d = net.domains()[e] as usize;
            colors[e] = (code % d) as u32 + 1;
            code /= d;
        }
        let w = net.vertices().iter().fold(Gaussian::one(), |acc, list| {
            let local: Vec<u32> = list.iter().map(|&e| colors[e]).collect();
            &acc * &rule(0, &local).unwrap()
        });
        sum = &sum + &w;
    }
    sum
}

fn relabel(net: &Network, perm: &[usize], vertex_order: &[usize]) -> Network {
    let mut domains = vec![0; net.edge_count()];
    for (e, &p) in perm.iter().enumerate() {
        domains[p] = net.domains()[e];
    }
    let vertices = vertex_order
        .iter()
        .map(|&v| net.vertices()[v].iter().map(|&e| perm[e]).collect())
        .collect();
    let fixed = net.fixed().iter().map(|(&e, &c)| (perm[e], c)).collect();
    Network::new(domains, vertices, fixed).unwrap()
}

proptest! {
    #[test]
    fn pruned_enumeration_matches_naive_sum(net in network()) {
        let amp = partition_function(&net, &rule).unwrap();
        prop_assert_eq!(amp.value, naive(&net));
        let expected: u128 = net.domains().iter().map(|&d| d as u128).product();
        prop_assert_eq!(amp.colorings, expected);
    }

    #[test]
    fn enumeration_order_does_not_matter(
        net in network(),
        seed in any::<prop::sample::Index>(),
    ) {
        let n = net.edge_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.rotate_left(seed.index(n));
        perm.reverse();
        let mut order: Vec<usize> = (0..net.vertices().len()).collect();
        order.reverse();
        let z = partition_function(&net, &rule).unwrap().value;
        prop_assert_eq!(partition_function(&relabel(&net, &perm, &order), &rule).unwrap().value, z);
    }

    #[test]
    fn measurement_reduction(net in network(), pick in any::<prop::sample::Index>()) {
        let e = pick.index(net.edge_count());
        let z = partition_function(&net, &rule).unwrap().value;
        let mut sum = Gaussian::zero();
        for c in 1..=net.domains()[e] {
            sum = &sum + &partition_function(&net.with_fixed(e, c).unwrap(), &rule).unwrap().value;
        }
        prop_assert_eq!(sum, z);
    }

    #[test]
    fn penrose_count_is_rotation_invariant(
        which in 0usize..5,
        turns in prop::collection::vec(0usize..3, 8),
    ) {
        let (_, net) = corpus::all().swap_remove(which);
        let base = penrose_count(&net).unwrap();
        let vertices = net
            .vertices()
            .iter()
            .zip(turns.iter().cycle())
            .map(|(list, &t)| {
                let mut l = list.clone();
                l.rotate_left(t);
                l
            })
            .collect();
        let rotated = Network::new(net.domains().to_vec(), vertices, BTreeMap::new()).unwrap();
        prop_assert_eq!(penrose_count(&rotated).unwrap(), base);
    }
}

#[test]
fn checkerboard_matches_path_sums_up_to_fourteen() {
    for start in [Dir::L, Dir::R] {
        let state = checkerboard_evolve(14, (3, start));
        for t in 0..=14u32 {
            for x in (3 - 15)..=(3 + 15) {
                for d in [Dir::L, Dir::R] {
                    let want = brute_force_path_sum(t, (3, start), (x, d)).unwrap();
                    assert_eq!(state.get(d, x, t), want, "{start:?} ({x}, {d:?}, {t})");
                    if (x - 3).abs() > t as i64 {
                        assert!(want.is_zero());
                    }
                }
            }
        }
    }
}
