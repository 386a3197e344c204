//! Named verification suites with per-check reports.

use num::{BigInt, BigRational, One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopf::{self, FiniteHopf};
use crate::ncalg::{Algebra, CommutationTable, FamilyKind};
use crate::netamp::{self, Dir, Network};
use crate::poisson::{self, PolyQP};
use crate::qcalc::{self, QPoly};
use crate::sample::{mixed_table, Sampler};
use crate::scalar::Gaussian;

pub const SUITES: [&str; 5] = ["doc-identities", "poisson", "qcalc", "hopf", "netamp-oracles"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

struct Recorder {
    checks: Vec<CheckReport>,
}

impl Recorder {
    fn check(&mut self, name: &str, cases: impl IntoIterator<Item = (bool, String)>) {
        let mut r = CheckReport {
            name: name.into(),
            cases: 0,
            failures: 0,
            first_failure: None,
        };
        for (ok, what) in cases {
            r.cases += 1;
            if !ok {
                r.failures += 1;
                r.first_failure.get_or_insert(what);
            }
        }
        self.checks.push(r);
    }

    fn single(&mut self, name: &str, ok: bool, what: impl Into<String>) {
        self.check(name, [(ok, what.into())]);
    }
}

/// Runs `suite` with `cases` random instances per randomized check.
pub fn run_suite(suite: &str, seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut rec = Recorder { checks: Vec::new() };
    let mut s = Sampler::new(seed);
    match suite {
        "doc-identities" => doc_identities(&mut rec, &mut s, cases)?,
        "poisson" => poisson_suite(&mut rec, &mut s, cases),
        "qcalc" => qcalc_suite(&mut rec, &mut s, cases)?,
        "hopf" => hopf_suite(&mut rec)?,
        "netamp-oracles" => netamp_suite(&mut rec, &mut s)?,
        _ => {
            return Err(Error::domain(format!(
                "unknown suite '{suite}'; expected one of {}",
                SUITES.join(", ")
            )))
        }
    }
    Ok(SuiteReport {
        suite: suite.into(),
        seed,
        passed: rec.checks.iter().all(CheckReport::passed),
        checks: rec.checks,
    })
}

fn doc_identities(rec: &mut Recorder, s: &mut Sampler, cases: usize) -> Result<()> {
    let alg = Algebra::new(mixed_table());
    let triples: Vec<_> = (0..cases)
        .map(|_| (s.expr(&alg), s.expr(&alg), s.expr(&alg)))
        .collect();
    let show = |a: &crate::Expr, b: &crate::Expr| format!("A = {a}, B = {b}");
    rec.check(
        "leibniz_defect_d",
        triples.iter().map(|(a, b, _)| {
            (alg.leibniz_defect_difference(a, b).is_zero(), show(a, b))
        }),
    );
    rec.check(
        "leibniz_defect_D",
        triples.iter().map(|(a, b, _)| {
            (alg.leibniz_defect_derivative(a, b).is_zero(), show(a, b))
        }),
    );
    rec.check(
        "jacobi_defect",
        triples.iter().map(|(a, b, c)| {
            (alg.jacobi_defect(a, b, c).is_zero(), format!("{}, C = {c}", show(a, b)))
        }),
    );
    rec.check(
        "derivative_of_commutator",
        triples.iter().map(|(a, b, _)| {
            (alg.commutator_leibniz_defect(a, b).is_zero(), show(a, b))
        }),
    );
    rec.check(
        "derivative_is_j_times_difference",
        triples.iter().map(|(a, _, _)| {
            let rhs = alg.mul(&crate::Expr::j(), &(&alg.shift(a) - a));
            (alg.derivative(a) == rhs, format!("A = {a}"))
        }),
    );
    rec.check(
        "shift_is_homomorphism",
        triples.iter().map(|(a, b, _)| {
            let ok = alg.shift(&alg.mul(a, b)) == alg.mul(&alg.shift(a), &alg.shift(b))
                && alg.shift(&(a + b)) == &alg.shift(a) + &alg.shift(b);
            (ok, show(a, b))
        }),
    );

    let free = Algebra::default();
    let x = free.var("X");
    let expected = free.parse("J*(X'*X' - 2*X'*X + X*X)")?;
    rec.single(
        "position_velocity_commutator",
        free.commutator(&x, &free.derivative(&x)) == expected,
        "[X, DX]",
    );

    let commuting = Algebra::new(CommutationTable::new().indexed("X", FamilyKind::Scalar, 4));
    let mut metric_cases = Vec::new();
    for i in 1..=4 {
        for j in 1..=4 {
            let d = &commuting.metric(i, j, "X")? - &commuting.metric(j, i, "X")?;
            metric_cases.push((d.is_zero(), format!("g({i},{j}) - g({j},{i})")));
        }
    }
    rec.check("metric_symmetry", metric_cases);
    let noncommuting = Algebra::new(CommutationTable::new().indexed("X", FamilyKind::Free, 4));
    let d = &noncommuting.metric(1, 2, "X")? - &noncommuting.metric(2, 1, "X")?;
    rec.single("metric_asymmetry_without_commutation", !d.is_zero(), "g(1,2) - g(2,1)");
    Ok(())
}

fn poisson_suite(rec: &mut Recorder, s: &mut Sampler, cases: usize) {
    let samples: Vec<_> = (0..cases)
        .map(|_| (s.poly_qp(4), s.poly_qp(4), s.poly_qp(4), s.flow(4)))
        .collect();
    rec.check(
        "defect_formula",
        samples.iter().map(|(a, b, _, f)| {
            let lhs = &poisson::leibniz_defect(a, b, f)
                + &(&poisson::poisson_bracket(a, b) * &poisson::divergence(f));
            (lhs.is_zero(), format!("A = {a}, B = {b}"))
        }),
    );
    rec.check(
        "hamiltonian_flows_obey_leibniz",
        samples.iter().map(|(a, b, h, _)| {
            let f = poisson::hamiltonian_flow(h);
            (poisson::leibniz_defect(a, b, &f).is_zero(), format!("H = {h}"))
        }),
    );
    rec.check(
        "bracket_antisymmetry",
        samples.iter().map(|(a, b, _, _)| {
            let sum = &poisson::poisson_bracket(a, b) + &poisson::poisson_bracket(b, a);
            (sum.is_zero(), format!("A = {a}, B = {b}"))
        }),
    );
    rec.check(
        "bracket_jacobi",
        samples.iter().map(|(a, b, c, _)| {
            let pb = poisson::poisson_bracket;
            let sum: PolyQP = &(&pb(a, &pb(b, c)) + &pb(b, &pb(c, a))) + &pb(c, &pb(a, b));
            (sum.is_zero(), format!("A = {a}, B = {b}, C = {c}"))
        }),
    );
}

fn classical_binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn qcalc_suite(rec: &mut Recorder, s: &mut Sampler, cases: usize) -> Result<()> {
    rec.check(
        "dq_monomials",
        (1..=20).map(|n| {
            let ok = qcalc::dq(&QPoly::x_pow(n)) == QPoly::monomial(qcalc::q_integer(n), n - 1);
            (ok, format!("n = {n}"))
        }),
    );
    let mut thm = Vec::new();
    for n in 0..=10 {
        thm.push((qcalc::q_binomial_theorem_check(n)?, format!("n = {n}")));
    }
    rec.check("q_binomial_theorem", thm);
    let mut sym = Vec::new();
    let mut classical = Vec::new();
    for n in 0..=12 {
        for k in 0..=n {
            let b = qcalc::q_binomial(n, k)?;
            sym.push((b == qcalc::q_binomial(n, n - k)?, format!("({n}, {k})")));
            let at_one = b.at_q_one() == Gaussian::real(BigRational::from_integer(classical_binomial(n, k)));
            classical.push((at_one, format!("({n}, {k})")));
        }
    }
    rec.check("q_binomial_symmetry", sym);
    rec.check("q_binomial_at_one", classical);
    rec.check(
        "q_integer_at_one",
        (0..=20).map(|n| (qcalc::q_integer(n).at_q_one() == Gaussian::from_int(n as i64), format!("n = {n}"))),
    );
    let mut bridge = Vec::new();
    for _ in 0..cases {
        let f = s.rational_qpoly(6);
        let (x0, delta) = (s.rational(), s.rational());
        bridge.push((
            qcalc::doc_bridge_check(&f, &x0, &delta)?,
            format!("f = {f}, x0 = {x0}, delta = {delta}"),
        ));
    }
    rec.check("doc_bridge", bridge);
    Ok(())
}

fn hopf_suite(rec: &mut Recorder) -> Result<()> {
    let sw = hopf::sweedler();
    for (name, h) in [
        ("sweedler", sw.clone()),
        ("cyclic_1", hopf::cyclic_group_algebra(1)?),
        ("cyclic_3", hopf::cyclic_group_algebra(3)?),
        ("cyclic_6", hopf::cyclic_group_algebra(6)?),
    ] {
        let report = hopf::verify_hopf(&h)?;
        rec.check(
            &format!("{name}_axioms"),
            report
                .checks
                .iter()
                .map(|c| (c.passed, c.counterexample.clone().unwrap_or_default())),
        );
    }

    let g = sw.element("g")?;
    rec.single(
        "sweedler_square_is_conjugation",
        hopf::antipode_square_is_conjugation(&sw, &g)?,
        "S^2 = g^-1 x g",
    );
    let s2 = |x: &[Gaussian]| sw.antipode_of(&sw.antipode_of(x));
    let s4 = |x: &[Gaussian]| s2(&s2(x));
    rec.single(
        "sweedler_antipode_order_four",
        (0..4).any(|a| s2(&sw.basis(a)) != sw.basis(a)) && (0..4).all(|a| s4(&sw.basis(a)) == sw.basis(a)),
        "S^2 != id, S^4 = id",
    );
    let mut product_rule = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            let d = hopf::product_rule_defect(&sw, &g, &sw.basis(a), &sw.basis(b))?;
            product_rule.push((d.iter().all(Zero::is_zero), format!("({}, {})", sw.labels[a], sw.labels[b])));
        }
    }
    rec.check("sweedler_product_rule", product_rule);

    let cyc: FiniteHopf = hopf::cyclic_group_algebra(5)?;
    let one = cyc.one();
    let mut no_time = Vec::new();
    for a in 0..5 {
        let d = hopf::doc_derivative(&cyc, &one, &cyc.basis(a))?;
        no_time.push((d.iter().all(Zero::is_zero), cyc.labels[a].clone()));
    }
    rec.check("group_algebra_derivative_vanishes", no_time);
    Ok(())
}

/// Counts colorings with three distinct colors at every vertex by plain
/// enumeration.
pub fn brute_force_tait_count(net: &Network) -> u64 {
    let e = net.edge_count();
    let mut colors = vec![0u32; e];
    let mut count = 0;
    for mut code in 0..3u64.pow(e as u32) {
        for c in colors.iter_mut() {
            *c = (code % 3) as u32;
            code /= 3;
        }
        let proper = net.vertices().iter().all(|list| {
            let (a, b, c) = (colors[list[0]], colors[list[1]], colors[list[2]]);
            a != b && b != c && a != c
        });
        if proper {
            count += 1;
        }
    }
    count
}

fn matrix_power_entry(m: &[Vec<Gaussian>], p: usize, a: usize, b: usize) -> Gaussian {
    let n = m.len();
    let mut acc: Vec<Vec<Gaussian>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Gaussian::one() } else { Gaussian::zero() }).collect())
        .collect();
    for _ in 0..p {
        acc = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut s = Gaussian::zero();
                        for k in 0..n {
                            s += &(&acc[i][k] * &m[k][j]);
                        }
                        s
                    })
                    .collect()
            })
            .collect();
    }
    acc[a][b].clone()
}

fn netamp_suite(rec: &mut Recorder, s: &mut Sampler) -> Result<()> {
    let mut penrose = Vec::new();
    for (name, net) in netamp::corpus::all() {
        let count = netamp::penrose_count(&net)?;
        penrose.push((count == brute_force_tait_count(&net), format!("{name}: {count}")));
    }
    rec.check("penrose_vs_brute_force", penrose);

    let mut board = Vec::new();
    for start in [Dir::L, Dir::R] {
        let state = netamp::checkerboard_evolve(14, (0, start));
        for t in 0..=14u32 {
            for x in -(t as i64)..=(t as i64) {
                for d in [Dir::L, Dir::R] {
                    let oracle = netamp::brute_force_path_sum(t, (0, start), (x, d))?;
                    board.push((state.get(d, x, t) == oracle, format!("{start:?} -> ({x}, {d:?}) at t = {t}")));
                }
            }
        }
    }
    rec.check("checkerboard_vs_path_sum", board);

    let mut chain = Vec::new();
    for n in 1..=4usize {
        let m: Vec<Vec<Gaussian>> = (0..n)
            .map(|_| (0..n).map(|_| small_gaussian(s)).collect())
            .collect();
        for steps in 0..=8 {
            let (a, b) = (s.rng().gen_range(0..n), s.rng().gen_range(0..n));
            let amp = netamp::chain_amplitude(&m, steps, a, b)?;
            chain.push((amp == matrix_power_entry(&m, steps + 1, a, b), format!("n = {n}, m = {steps}")));
        }
    }
    rec.check("chain_vs_matrix_power", chain);
    rec.single(
        "dirac_two_path_cancellation",
        netamp::chain_amplitude(&netamp::dirac_weights(), 1, 0, 0)?.is_zero(),
        "<L|L> with one intermediate state",
    );

    let mut reduction = Vec::new();
    for (name, net) in netamp::corpus::all() {
        let z = netamp::partition_function(&net, &netamp::PenroseRule)?.value;
        let mut sum = Gaussian::zero();
        for c in 1..=3 {
            sum += &netamp::partition_function(&net.with_fixed(0, c)?, &netamp::PenroseRule)?.value;
        }
        reduction.push((sum == z, name.to_string()));
    }
    rec.check("measurement_reduction", reduction);
    Ok(())
}

fn small_gaussian(s: &mut Sampler) -> Gaussian {
    let rng = s.rng();
    Gaussian::new(
        BigRational::from_integer(rng.gen_range(-2..=2).into()),
        BigRational::from_integer(rng.gen_range(-2..=2).into()),
    )
}
