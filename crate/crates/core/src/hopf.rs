//! Finite-dimensional Hopf algebras given by structure constants over the
//! Gaussian rationals.
//!
//! Elements are coordinate vectors in the listed basis. A grouplike `g`
//! plays the clock: when `S²(x) = g⁻¹xg`, the derivative
//! `D(x) = xg − gx = g(S²(x) − x)` measures how far `S²` is from the identity.

use serde::{Deserialize, Serialize};

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Gaussian;

pub type Element = Vec<Gaussian>;

/// Largest dimension accepted by [`verify_hopf`].
pub const MAX_DIM: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteHopf {
    pub labels: Vec<String>,
    /// `mult[a][b]` is the product `e_a·e_b`.
    pub mult: Vec<Vec<Element>>,
    pub unit: Element,
    /// `comult[a]` lists `(i, j, c)` with `Δ(e_a) = Σ c·e_i⊗e_j`.
    pub comult: Vec<Vec<(usize, usize, Gaussian)>>,
    pub counit: Vec<Gaussian>,
    /// `antipode[a]` is `S(e_a)`.
    pub antipode: Vec<Element>,
}

/// `t[i][j]` is the coefficient of `e_i⊗e_j`.
type Tensor2 = Vec<Vec<Gaussian>>;

fn zeros(n: usize) -> Element {
    vec![Gaussian::zero(); n]
}

fn axpy(acc: &mut [Gaussian], c: &Gaussian, x: &[Gaussian]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        *a += &(c * b);
    }
}

fn sub(a: &[Gaussian], b: &[Gaussian]) -> Element {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `c*label` summands, e.g. `(-2)*gx`.
pub fn format_element(h: &FiniteHopf, x: &[Gaussian]) -> String {
    let parts: Vec<String> = x
        .iter()
        .zip(&h.labels)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| format!("({c})*{l}"))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl FiniteHopf {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Checks that every table has the declared dimension.
    pub fn check_shape(&self) -> Result<()> {
        let n = self.dim();
        let bad = |what: &str| Err(Error::domain(format!("{what} does not match dimension {n}")));
        if n == 0 {
            return Err(Error::domain("a Hopf algebra needs a nonempty basis"));
        }
        if self.mult.len() != n
            || self
                .mult
                .iter()
                .any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
        {
            return bad("multiplication table");
        }
        if self.unit.len() != n {
            return bad("unit");
        }
        if self.comult.len() != n || self.comult.iter().flatten().any(|(i, j, _)| *i >= n || *j >= n) {
            return bad("comultiplication");
        }
        if self.counit.len() != n {
            return bad("counit");
        }
        if self.antipode.len() != n || self.antipode.iter().any(|v| v.len() != n) {
            return bad("antipode");
        }
        Ok(())
    }

    pub fn basis(&self, a: usize) -> Element {
        let mut e = zeros(self.dim());
        e[a] = Gaussian::one();
        e
    }

    pub fn element(&self, label: &str) -> Result<Element> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|a| self.basis(a))
            .ok_or_else(|| Error::domain(format!("no basis element '{label}'")))
    }

    pub fn one(&self) -> Element {
        self.unit.clone()
    }

    pub fn mul(&self, x: &[Gaussian], y: &[Gaussian]) -> Element {
        let mut out = zeros(self.dim());
        for (a, ca) in x.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in y.iter().enumerate() {
                axpy(&mut out, &(ca * cb), &self.mult[a][b]);
            }
        }
        out
    }

    pub fn antipode_of(&self, x: &[Gaussian]) -> Element {
        let mut out = zeros(self.dim());
        for (a, c) in x.iter().enumerate() {
            axpy(&mut out, c, &self.antipode[a]);
        }
        out
    }

    pub fn counit_of(&self, x: &[Gaussian]) -> Gaussian {
        let mut acc = Gaussian::zero();
        for (c, e) in x.iter().zip(&self.counit) {
            acc += &(c * e);
        }
        acc
    }

    fn comul(&self, x: &[Gaussian]) -> Tensor2 {
        let n = self.dim();
        let mut t = vec![zeros(n); n];
        for (a, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, j, w) in &self.comult[a] {
                t[*i][*j] += &(c * w);
            }
        }
        t
    }

    /// `Σ f(x₁)·x₂` style contractions: applies `m ∘ (f ⊗ g)` to `Δ(x)`.
    fn contract(&self, x: &[Gaussian], f: impl Fn(usize) -> Element, g: impl Fn(usize) -> Element) -> Element {
        let n = self.dim();
        let t = self.comul(x);
        let mut out = zeros(n);
        for (i, row) in t.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    axpy(&mut out, c, &self.mul(&f(i), &g(j)));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub passed: bool,
    /// First failing instance, when any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfReport {
    pub dim: usize,
    pub checks: Vec<AxiomCheck>,
}

impl HopfReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed(&self, axiom: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.axiom == axiom).map(|c| c.passed)
    }
}

fn first_failure(cases: impl IntoIterator<Item = (bool, String)>) -> Option<String> {
    cases.into_iter().find(|(ok, _)| !ok).map(|(_, s)| s)
}

/// Checks every structural axiom on all basis pairs and triples.
pub fn verify_hopf(h: &FiniteHopf) -> Result<HopfReport> {
    h.check_shape()?;
    let n = h.dim();
    if n > MAX_DIM {
        return Err(Error::Limit(format!("verification capped at dimension {MAX_DIM}")));
    }
    let l = &h.labels;
    let e: Vec<Element> = (0..n).map(|a| h.basis(a)).collect();
    let one = h.one();
    let pairs = || (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)));
    let mut checks = Vec::new();
    let mut record = |axiom, counterexample: Option<String>| {
        checks.push(AxiomCheck {
            axiom,
            passed: counterexample.is_none(),
            counterexample,
        })
    };

    record(
        "associativity",
        first_failure(pairs().flat_map(|(a, b)| {
            let e = &e;
            (0..n).map(move |c| {
                let lhs = h.mul(&h.mul(&e[a], &e[b]), &e[c]);
                let rhs = h.mul(&e[a], &h.mul(&e[b], &e[c]));
                (lhs == rhs, format!("({}{}){} != {}({}{})", l[a], l[b], l[c], l[a], l[b], l[c]))
            })
        })),
    );

    record(
        "unit",
        first_failure((0..n).map(|a| {
            let ok = h.mul(&one, &e[a]) == e[a] && h.mul(&e[a], &one) == e[a];
            (ok, format!("1*{0} or {0}*1 differs from {0}", l[a]))
        })),
    );

    record(
        "coassociativity",
        first_failure((0..n).map(|a| {
            // both sides as coefficient maps on e_i⊗e_j⊗e_k
            let t = h.comul(&e[a]);
            let mut left = vec![vec![zeros(n); n]; n];
            let mut right = vec![vec![zeros(n); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let c = &t[i][j];
                    if c.is_zero() {
                        continue;
                    }
                    let ti = h.comul(&e[i]);
                    let tj = h.comul(&e[j]);
                    for x in 0..n {
                        for y in 0..n {
                            left[x][y][j] += &(c * &ti[x][y]);
                            right[i][x][y] += &(c * &tj[x][y]);
                        }
                    }
                }
            }
            (left == right, format!("coassociativity on {}", l[a]))
        })),
    );

    record(
        "counit",
        first_failure((0..n).map(|a| {
            let t = h.comul(&e[a]);
            let mut left = zeros(n);
            let mut right = zeros(n);
            for i in 0..n {
                for j in 0..n {
                    left[j] += &(&h.counit[i] * &t[i][j]);
                    right[i] += &(&t[i][j] * &h.counit[j]);
                }
            }
            (left == e[a] && right == e[a], format!("counit law on {}", l[a]))
        })),
    );

    record(
        "comultiplication_is_algebra_map",
        first_failure(
            std::iter::once({
                let t = h.comul(&one);
                let ok = (0..n).all(|i| (0..n).all(|j| t[i][j] == &one[i] * &one[j]));
                (ok, "comultiplication of 1 is not 1⊗1".to_string())
            })
            .chain(pairs().map(|(a, b)| {
                let lhs = h.comul(&h.mul(&e[a], &e[b]));
                let (ta, tb) = (h.comul(&e[a]), h.comul(&e[b]));
                let mut rhs = vec![zeros(n); n];
                for (i, j) in pairs() {
                    if ta[i][j].is_zero() {
                        continue;
                    }
                    for (k, m) in pairs() {
                        let c = &ta[i][j] * &tb[k][m];
                        if c.is_zero() {
                            continue;
                        }
                        let left = &h.mult[i][k];
                        let right = &h.mult[j][m];
                        for (x, lx) in left.iter().enumerate() {
                            if lx.is_zero() {
                                continue;
                            }
                            for (y, ry) in right.iter().enumerate() {
                                rhs[x][y] += &(&c * &(lx * ry));
                            }
                        }
                    }
                }
                (lhs == rhs, format!("comultiplication of {}{}", l[a], l[b]))
            })),
        ),
    );

    record(
        "counit_is_multiplicative",
        first_failure(
            std::iter::once((h.counit_of(&one).is_one(), "counit of 1 is not 1".to_string())).chain(
                pairs().map(|(a, b)| {
                    let ok = h.counit_of(&h.mul(&e[a], &e[b])) == &h.counit[a] * &h.counit[b];
                    (ok, format!("counit of {}{}", l[a], l[b]))
                }),
            ),
        ),
    );

    let eps_one = |a: usize| {
        let mut v = zeros(n);
        axpy(&mut v, &h.counit[a], &one);
        v
    };
    record(
        "antipode_left",
        first_failure((0..n).map(|a| {
            let v = h.contract(&e[a], |i| h.antipode[i].clone(), |j| e[j].clone());
            (v == eps_one(a), format!("S(x1)x2 on {}", l[a]))
        })),
    );
    record(
        "antipode_right",
        first_failure((0..n).map(|a| {
            let v = h.contract(&e[a], |i| e[i].clone(), |j| h.antipode[j].clone());
            (v == eps_one(a), format!("x1S(x2) on {}", l[a]))
        })),
    );

    record(
        "antipode_is_antimorphism",
        first_failure(pairs().map(|(a, b)| {
            let lhs = h.antipode_of(&h.mul(&e[a], &e[b]));
            let rhs = h.mul(&h.antipode[b], &h.antipode[a]);
            (lhs == rhs, format!("S({0}{1}) != S({1})S({0})", l[a], l[b]))
        })),
    );

    Ok(HopfReport { dim: n, checks })
}

/// `Δ(g) = g⊗g`, `ε(g) = 1` and `S(g)·g = g·S(g) = 1`.
pub fn is_grouplike(h: &FiniteHopf, g: &[Gaussian]) -> bool {
    let n = h.dim();
    if g.len() != n || h.check_shape().is_err() {
        return false;
    }
    let t = h.comul(g);
    let tensor_ok = (0..n).all(|i| (0..n).all(|j| t[i][j] == &g[i] * &g[j]));
    let s = h.antipode_of(g);
    tensor_ok && h.counit_of(g).is_one() && h.mul(&s, g) == h.one() && h.mul(g, &s) == h.one()
}

/// Whether `S²(x) = g⁻¹·x·g` on every basis element, with `g⁻¹ = S(g)`.
pub fn antipode_square_is_conjugation(h: &FiniteHopf, g: &[Gaussian]) -> Result<bool> {
    if !is_grouplike(h, g) {
        return Err(Error::domain("the clock element is not grouplike"));
    }
    let g_inv = h.antipode_of(g);
    Ok((0..h.dim()).all(|a| {
        let ss = h.antipode_of(&h.antipode[a]);
        ss == h.mul(&h.mul(&g_inv, &h.basis(a)), g)
    }))
}

/// `x·g − g·x`, which equals `g·(S²(x) − x)` when `S²` is conjugation by `g`.
pub fn doc_derivative(h: &FiniteHopf, g: &[Gaussian], x: &[Gaussian]) -> Result<Element> {
    if !antipode_square_is_conjugation(h, g)? {
        return Err(Error::domain("S² is not conjugation by the clock element"));
    }
    if x.len() != h.dim() {
        return Err(Error::domain("element has the wrong dimension"));
    }
    Ok(sub(&h.mul(x, g), &h.mul(g, x)))
}

/// `D(ab) − a·D(b) − D(a)·b`.
pub fn product_rule_defect(h: &FiniteHopf, g: &[Gaussian], a: &[Gaussian], b: &[Gaussian]) -> Result<Element> {
    let dab = doc_derivative(h, g, &h.mul(a, b))?;
    let adb = h.mul(a, &doc_derivative(h, g, b)?);
    let dab2 = h.mul(&doc_derivative(h, g, a)?, b);
    Ok(sub(&sub(&dab, &adb), &dab2))
}

/// Basis `{1, g, x, gx}` with `g² = 1`, `x² = 0`, `xg = −gx`,
/// `Δ(g) = g⊗g`, `Δ(x) = x⊗1 + g⊗x`, `S(x) = −gx`.
pub fn sweedler() -> FiniteHopf {
    // e_k = g^(k & 1) x^(k >> 1)
    let idx = |gp: usize, xp: usize| gp + 2 * xp;
    let mut mult = vec![vec![zeros(4); 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            let (ga, xa, gb, xb) = (a & 1, a >> 1, b & 1, b >> 1);
            if xa + xb > 1 {
                continue;
            }
            // moving x^xa past g^gb costs (−1)^(xa·gb)
            let sign = if xa * gb == 1 { -1 } else { 1 };
            mult[a][b][idx((ga + gb) % 2, xa + xb)] = Gaussian::from_int(sign);
        }
    }
    let one = Gaussian::one();
    let comult = vec![
        vec![(0, 0, one.clone())],
        vec![(1, 1, one.clone())],
        vec![(2, 0, one.clone()), (1, 2, one.clone())],
        vec![(3, 1, one.clone()), (0, 3, one.clone())],
    ];
    let e = |k: usize, c: i64| {
        let mut v = zeros(4);
        v[k] = Gaussian::from_int(c);
        v
    };
    FiniteHopf {
        labels: ["1", "g", "x", "gx"].map(String::from).to_vec(),
        mult,
        unit: e(0, 1),
        comult,
        counit: vec![one.clone(), one, Gaussian::zero(), Gaussian::zero()],
        antipode: vec![e(0, 1), e(1, 1), e(3, -1), e(2, 1)],
    }
}

/// Group algebra of the cyclic group of order `n`, basis `g^0, …, g^(n−1)`.
pub fn cyclic_group_algebra(n: usize) -> Result<FiniteHopf> {
    if n == 0 {
        return Err(Error::domain("cyclic group order must be at least 1"));
    }
    let basis = |k: usize| {
        let mut v = zeros(n);
        v[k % n] = Gaussian::one();
        v
    };
    let labels = (0..n)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    Ok(FiniteHopf {
        labels,
        mult: (0..n).map(|a| (0..n).map(|b| basis(a + b)).collect()).collect(),
        unit: basis(0),
        comult: (0..n).map(|a| vec![(a, a, Gaussian::one())]).collect(),
        counit: vec![Gaussian::one(); n],
        antipode: (0..n).map(|a| basis(n - a)).collect(),
    })
}

impl FiniteHopf {
    pub fn from_json(src: &str) -> Result<Self> {
        let h: FiniteHopf =
            serde_json::from_str(src).map_err(|e| Error::Document(e.to_string()))?;
        h.check_shape()?;
        Ok(h)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("structure constants serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweedler_is_hopf() {
        let h = sweedler();
        assert_eq!(h.dim(), 4);
        let report = verify_hopf(&h).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(report.checks.len(), 9);
    }

    #[test]
    fn sweedler_relations() {
        let h = sweedler();
        let (one, g, x, gx) = (h.basis(0), h.basis(1), h.basis(2), h.basis(3));
        assert_eq!(h.mul(&g, &g), one);
        assert_eq!(h.mul(&x, &x), zeros(4));
        assert_eq!(h.mul(&x, &g), sub(&zeros(4), &h.mul(&g, &x)));
        assert_eq!(h.mul(&g, &x), gx);
    }

    #[test]
    fn cyclic_algebras_are_hopf() {
        for n in 1..=5 {
            let h = cyclic_group_algebra(n).unwrap();
            assert!(verify_hopf(&h).unwrap().all_passed(), "n = {n}");
        }
        assert!(cyclic_group_algebra(0).is_err());
    }

    #[test]
    fn corrupted_product_fails_associativity() {
        let mut h = sweedler();
        h.mult[1][1] = h.basis(1);
        let report = verify_hopf(&h).unwrap();
        assert_eq!(report.passed("associativity"), Some(false));
        assert!(!report.all_passed());
    }

    #[test]
    fn shape_errors() {
        let mut h = sweedler();
        h.counit.pop();
        assert!(matches!(verify_hopf(&h), Err(Error::Domain(_))));
    }

    #[test]
    fn grouplikes() {
        let h = sweedler();
        assert!(is_grouplike(&h, &h.one()));
        assert!(is_grouplike(&h, &h.basis(1)));
        assert!(!is_grouplike(&h, &h.basis(2)));
        assert!(!is_grouplike(&h, &h.basis(3)));
    }

    #[test]
    fn sweedler_clock() {
        let h = sweedler();
        let g = h.basis(1);
        assert!(antipode_square_is_conjugation(&h, &g).unwrap());
        assert!(!antipode_square_is_conjugation(&h, &h.one()).unwrap());
        assert!(antipode_square_is_conjugation(&h, &h.basis(2)).is_err());

        assert_eq!(doc_derivative(&h, &g, &g).unwrap(), zeros(4));
        assert_eq!(doc_derivative(&h, &g, &h.one()).unwrap(), zeros(4));
        let mut minus_two_gx = zeros(4);
        minus_two_gx[3] = Gaussian::from_int(-2);
        assert_eq!(doc_derivative(&h, &g, &h.basis(2)).unwrap(), minus_two_gx);
        assert!(doc_derivative(&h, &h.one(), &g).is_err());
    }

    #[test]
    fn group_algebra_has_no_time() {
        let h = cyclic_group_algebra(4).unwrap();
        let one = h.one();
        assert!(antipode_square_is_conjugation(&h, &one).unwrap());
        for a in 0..4 {
            assert_eq!(doc_derivative(&h, &one, &h.basis(a)).unwrap(), zeros(4));
        }
    }

    #[test]
    fn json_round_trip() {
        let h = sweedler();
        let back = FiniteHopf::from_json(&h.to_json()).unwrap();
        assert_eq!(back, h);
        assert!(matches!(FiniteHopf::from_json("[]"), Err(Error::Document(_))));
    }
}
