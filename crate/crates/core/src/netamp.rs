//! Colored-network amplitudes: partition functions over edge colorings,
//! Penrose three-color evaluation, chain amplitudes, and checkerboard path
//! sums.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Gaussian;

/// Edges carry colors `1..=domain`; each vertex lists its incident edges in
/// cyclic order. An edge listed once is a boundary (dangling) edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Network {
    domains: Vec<u32>,
    vertices: Vec<Vec<usize>>,
    fixed: BTreeMap<usize, u32>,
}

impl Network {
    pub fn new(
        domains: Vec<u32>,
        vertices: Vec<Vec<usize>>,
        fixed: BTreeMap<usize, u32>,
    ) -> Result<Self> {
        let mut seen = vec![0usize; domains.len()];
        for (v, list) in vertices.iter().enumerate() {
            for &e in list {
                if e >= domains.len() {
                    return Err(Error::domain(format!("vertex {v} names unknown edge {e}")));
                }
                seen[e] += 1;
            }
        }
        for (e, &n) in seen.iter().enumerate() {
            if !(1..=2).contains(&n) {
                return Err(Error::domain(format!(
                    "edge {e} is incident to {n} vertex slots, expected 1 or 2"
                )));
            }
            if domains[e] == 0 {
                return Err(Error::domain(format!("edge {e} has an empty color domain")));
            }
        }
        for (&e, &c) in &fixed {
            let Some(&d) = domains.get(e) else {
                return Err(Error::domain(format!("fixed color on unknown edge {e}")));
            };
            if !(1..=d).contains(&c) {
                return Err(Error::domain(format!("color {c} outside domain 1..={d} of edge {e}")));
            }
        }
        Ok(Network {
            domains,
            vertices,
            fixed,
        })
    }

    /// Every edge has domain `colors` and nothing is fixed.
    pub fn uniform(colors: u32, edges: usize, vertices: Vec<Vec<usize>>) -> Result<Self> {
        Network::new(vec![colors; edges], vertices, BTreeMap::new())
    }

    pub fn edge_count(&self) -> usize {
        self.domains.len()
    }

    pub fn domains(&self) -> &[u32] {
        &self.domains
    }

    pub fn vertices(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn fixed(&self) -> &BTreeMap<usize, u32> {
        &self.fixed
    }

    pub fn free_edges(&self) -> Vec<usize> {
        (0..self.domains.len())
            .filter(|e| !self.fixed.contains_key(e))
            .collect()
    }

    /// The same network with `edge` measured to be `color`.
    pub fn with_fixed(&self, edge: usize, color: u32) -> Result<Self> {
        let mut fixed = self.fixed.clone();
        fixed.insert(edge, color);
        Network::new(self.domains.clone(), self.vertices.clone(), fixed)
    }
}

/// Weight of a vertex given the colors of its edges in listed cyclic order.
pub trait VertexRule {
    fn weight(&self, vertex: usize, colors: &[u32]) -> Result<Gaussian>;
}

impl<F> VertexRule for F
where
    F: Fn(usize, &[u32]) -> Result<Gaussian>,
{
    fn weight(&self, vertex: usize, colors: &[u32]) -> Result<Gaussian> {
        self(vertex, colors)
    }
}

/// `i·ε_abc` on trivalent vertices.
#[derive(Clone, Copy, Debug, Default)]
pub struct PenroseRule;

impl VertexRule for PenroseRule {
    fn weight(&self, vertex: usize, colors: &[u32]) -> Result<Gaussian> {
        match colors {
            [a, b, c] => penrose_weight(*a, *b, *c),
            _ => Err(Error::domain(format!(
                "vertex {vertex} has degree {}, the Penrose rule needs 3",
                colors.len()
            ))),
        }
    }
}

/// Explicit weights keyed by the cyclic color list, shared by all vertices.
/// Missing entries take `default`.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRule {
    pub weights: HashMap<Vec<u32>, Gaussian>,
    pub default: Gaussian,
}

impl VertexRule for TableRule {
    fn weight(&self, _vertex: usize, colors: &[u32]) -> Result<Gaussian> {
        Ok(self.weights.get(colors).unwrap_or(&self.default).clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Amplitude {
    pub value: Gaussian,
    /// Product of the free-edge domain sizes.
    pub colorings: u128,
}

/// `i` times the sign of `(a, b, c)` as a permutation of `(1, 2, 3)`, or 0
/// on a repeated color.
pub fn penrose_weight(a: u32, b: u32, c: u32) -> Result<Gaussian> {
    for x in [a, b, c] {
        if !(1..=3).contains(&x) {
            return Err(Error::domain(format!("color {x} outside 1..=3")));
        }
    }
    if a == b || b == c || a == c {
        return Ok(Gaussian::zero());
    }
    // Cyclic rotations of (1,2,3) are even.
    let even = (b == a % 3 + 1) && (c == b % 3 + 1);
    Ok(if even { Gaussian::i() } else { -Gaussian::i() })
}

/// Sum over colorings extending the fixed edges of the product of vertex
/// weights.
pub fn partition_function(net: &Network, rule: &dyn VertexRule) -> Result<Amplitude> {
    partition_function_traced(net, rule, &mut |_, _| {})
}

/// As [`partition_function`], calling `trace` with every full coloring whose
/// weight is nonzero. Colorings cut off by a zero vertex weight are skipped.
pub fn partition_function_traced(
    net: &Network,
    rule: &dyn VertexRule,
    trace: &mut dyn FnMut(&[u32], &Gaussian),
) -> Result<Amplitude> {
    let free = net.free_edges();
    let mut colorings: u128 = 1;
    for &e in &free {
        colorings = colorings
            .checked_mul(net.domains[e] as u128)
            .ok_or_else(|| Error::Limit("coloring count overflows".into()))?;
    }

    let mut depth_of = vec![None; net.edge_count()];
    for (d, &e) in free.iter().enumerate() {
        depth_of[e] = Some(d);
    }
    // A vertex is weighed as soon as its last free edge is colored.
    let mut closed_at: Vec<Vec<usize>> = vec![Vec::new(); free.len()];
    let mut colors = vec![0u32; net.edge_count()];
    for (&e, &c) in &net.fixed {
        colors[e] = c;
    }
    let mut base = Gaussian::one();
    for (v, list) in net.vertices.iter().enumerate() {
        match list.iter().filter_map(|&e| depth_of[e]).max() {
            Some(d) => closed_at[d].push(v),
            None => base = &base * &vertex_weight(net, rule, v, &colors)?,
        }
    }

    let mut dfs = Dfs {
        net,
        rule,
        free: &free,
        closed_at: &closed_at,
        colors,
        total: Gaussian::zero(),
        trace,
    };
    if !base.is_zero() {
        dfs.run(0, base)?;
    }
    Ok(Amplitude {
        value: dfs.total,
        colorings,
    })
}

fn vertex_weight(net: &Network, rule: &dyn VertexRule, v: usize, colors: &[u32]) -> Result<Gaussian> {
    let local: Vec<u32> = net.vertices[v].iter().map(|&e| colors[e]).collect();
    rule.weight(v, &local)
}

struct Dfs<'a> {
    net: &'a Network,
    rule: &'a dyn VertexRule,
    free: &'a [usize],
    closed_at: &'a [Vec<usize>],
    colors: Vec<u32>,
    total: Gaussian,
    trace: &'a mut dyn FnMut(&[u32], &Gaussian),
}

impl Dfs<'_> {
    fn run(&mut self, depth: usize, acc: Gaussian) -> Result<()> {
        if depth == self.free.len() {
            (self.trace)(&self.colors, &acc);
            self.total += &acc;
            return Ok(());
        }
        let e = self.free[depth];
        'color: for c in 1..=self.net.domains[e] {
            self.colors[e] = c;
            let mut w = acc.clone();
            for &v in &self.closed_at[depth] {
                w = &w * &vertex_weight(self.net, self.rule, v, &self.colors)?;
                if w.is_zero() {
                    continue 'color;
                }
            }
            self.run(depth + 1, w)?;
        }
        self.colors[e] = 0;
        Ok(())
    }
}

/// Penrose evaluation of a trivalent network whose cyclic orders come from a
/// planar embedding. Returns the number of colorings with three distinct
/// colors at every vertex.
pub fn penrose_count(net: &Network) -> Result<u64> {
    for (v, list) in net.vertices.iter().enumerate() {
        if list.len() != 3 {
            return Err(Error::domain(format!("vertex {v} is not trivalent")));
        }
    }
    if net.domains.iter().any(|&d| d != 3) {
        return Err(Error::domain("Penrose evaluation needs three colors per edge"));
    }
    let value = partition_function(net, &PenroseRule)?.value;
    value
        .to_integer()
        .and_then(|n| u64::try_from(n).ok())
        .ok_or_else(|| {
            Error::domain(format!(
                "evaluation gave {value}; the cyclic orders are not a planar embedding"
            ))
        })
}

fn check_square(weights: &[Vec<Gaussian>]) -> Result<usize> {
    let n = weights.len();
    if n == 0 || weights.iter().any(|row| row.len() != n) {
        return Err(Error::domain("weight matrix must be square and nonempty"));
    }
    Ok(n)
}

/// `A—*—C1—*—C2— … —Cm—*—B` as a network: each state is an edge colored by
/// `1..=n`, each link a two-edge vertex. The end edges are fixed to `a` and `b`.
pub fn chain_network(n: usize, m: usize, a: usize, b: usize) -> Result<Network> {
    if a >= n || b >= n {
        return Err(Error::domain(format!("state index out of range 0..{n}")));
    }
    let vertices = (0..=m).map(|j| vec![j, j + 1]).collect();
    let fixed = BTreeMap::from([(0, a as u32 + 1), (m + 1, b as u32 + 1)]);
    Network::new(vec![n as u32; m + 2], vertices, fixed)
}

/// Sum over all state sequences `a, c1, …, cm, b` of the product of
/// successive weights. States are 0-based matrix indices.
pub fn chain_amplitude(weights: &[Vec<Gaussian>], m: usize, a: usize, b: usize) -> Result<Gaussian> {
    let n = check_square(weights)?;
    let net = chain_network(n, m, a, b)?;
    let rule = |_: usize, c: &[u32]| Ok(weights[c[0] as usize - 1][c[1] as usize - 1].clone());
    Ok(partition_function(&net, &rule)?.value)
}

/// `[[1, i], [i, 1]]`: no turn weighs 1, a turn weighs `i`.
pub fn dirac_weights() -> Vec<Vec<Gaussian>> {
    vec![
        vec![Gaussian::one(), Gaussian::i()],
        vec![Gaussian::i(), Gaussian::one()],
    ]
}

/// Direction of travel on the checkerboard lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    L,
    R,
}

impl Dir {
    pub fn step(self) -> i64 {
        match self {
            Dir::L => -1,
            Dir::R => 1,
        }
    }

    pub fn flip(self) -> Dir {
        match self {
            Dir::L => Dir::R,
            Dir::R => Dir::L,
        }
    }

    fn slot(self) -> usize {
        match self {
            Dir::L => 0,
            Dir::R => 1,
        }
    }

    pub fn parse(s: &str) -> Result<Dir> {
        match s {
            "L" | "l" => Ok(Dir::L),
            "R" | "r" => Ok(Dir::R),
            _ => Err(Error::domain(format!("expected L or R, got '{s}'"))),
        }
    }
}

/// Path amplitudes `ψ_d(x, t)`.
///
/// Each tick moves one site in the chosen direction. Choosing a direction
/// different from the one the walker arrived with costs a factor `i`, so
///
/// ```text
/// ψ_R(x, t+1) = ψ_R(x−1, t) + i·ψ_L(x−1, t)
/// ψ_L(x, t+1) = ψ_L(x+1, t) + i·ψ_R(x+1, t)
/// ```
///
/// The initial direction counts as the arrival direction at `t = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckerboardState {
    pub t_max: u32,
    pub init: (i64, Dir),
    // psi[t][dir][x - x0 + t_max]
    psi: Vec<[Vec<Gaussian>; 2]>,
}

impl CheckerboardState {
    fn width(&self) -> usize {
        2 * self.t_max as usize + 1
    }

    /// `ψ_dir(x, t)`; zero off the table.
    pub fn get(&self, dir: Dir, x: i64, t: u32) -> Gaussian {
        if t > self.t_max {
            return Gaussian::zero();
        }
        let off = x - self.init.0 + self.t_max as i64;
        if off < 0 || off as usize >= self.width() {
            return Gaussian::zero();
        }
        self.psi[t as usize][dir.slot()][off as usize].clone()
    }

    /// CSV with header `t,x,dir,value`, nonzero entries only.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,x,dir,value\n");
        for t in 0..=self.t_max {
            for off in 0..self.width() {
                let x = off as i64 + self.init.0 - self.t_max as i64;
                for dir in [Dir::L, Dir::R] {
                    let v = self.get(dir, x, t);
                    if !v.is_zero() {
                        writeln!(out, "{t},{x},{dir:?},{v}").unwrap();
                    }
                }
            }
        }
        out
    }
}

pub fn checkerboard_evolve(t_max: u32, init: (i64, Dir)) -> CheckerboardState {
    let width = 2 * t_max as usize + 1;
    let zero_row = || [vec![Gaussian::zero(); width], vec![Gaussian::zero(); width]];
    let mut psi = Vec::with_capacity(t_max as usize + 1);
    let mut first = zero_row();
    first[init.1.slot()][t_max as usize] = Gaussian::one();
    psi.push(first);
    let i = Gaussian::i();
    for t in 0..t_max as usize {
        let prev = &psi[t];
        let mut next = zero_row();
        for off in 0..width {
            for dir in [Dir::L, Dir::R] {
                // arrive at `off` moving in `dir`, from `off - dir.step()`
                let src = off as i64 - dir.step();
                if src < 0 || src as usize >= width {
                    continue;
                }
                let src = src as usize;
                let straight = &prev[dir.slot()][src];
                let turned = &prev[dir.flip().slot()][src];
                next[dir.slot()][off] = straight + &(&i * turned);
            }
        }
        psi.push(next);
    }
    CheckerboardState { t_max, init, psi }
}

/// Largest `t` accepted by [`brute_force_path_sum`].
pub const PATH_SUM_CAP: u32 = 20;

/// Sums `i^turns` over all `2^t` direction sequences from `init` that end at
/// `target` after `t` ticks.
pub fn brute_force_path_sum(t: u32, init: (i64, Dir), target: (i64, Dir)) -> Result<Gaussian> {
    if t > PATH_SUM_CAP {
        return Err(Error::Limit(format!("path enumeration capped at t = {PATH_SUM_CAP}")));
    }
    let mut total = Gaussian::zero();
    for bits in 0u64..(1u64 << t) {
        let (mut x, mut dir, mut turns) = (init.0, init.1, 0i64);
        for s in 0..t {
            let next = if bits >> s & 1 == 1 { Dir::R } else { Dir::L };
            if next != dir {
                turns += 1;
            }
            dir = next;
            x += dir.step();
        }
        if (x, dir) == target {
            total += &Gaussian::i_pow(turns);
        }
    }
    Ok(total)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum EdgeId {
    Num(u64),
    Text(String),
}

impl EdgeId {
    fn key(self) -> String {
        match self {
            EdgeId::Num(n) => n.to_string(),
            EdgeId::Text(s) => s,
        }
    }
}

#[derive(Deserialize)]
struct EdgeDoc {
    id: EdgeId,
    #[serde(default = "three")]
    domain: u32,
}

fn three() -> u32 {
    3
}

#[derive(Deserialize, Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum RuleKind {
    Penrose,
    Table,
}

#[derive(Deserialize)]
struct WeightDoc {
    colors: Vec<u32>,
    value: Gaussian,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkDoc {
    edges: Vec<EdgeDoc>,
    vertices: Vec<Vec<EdgeId>>,
    #[serde(default)]
    fixed: BTreeMap<String, u32>,
    rule: RuleKind,
    #[serde(default)]
    weights: Vec<WeightDoc>,
    #[serde(default)]
    default_weight: Option<Gaussian>,
}

/// A network read from JSON together with its vertex rule.
pub struct LoadedNetwork {
    pub network: Network,
    pub edge_ids: Vec<String>,
    pub kind: RuleKind,
    pub table: Option<TableRule>,
}

impl LoadedNetwork {
    /// Parses
    ///
    /// ```json
    /// {"edges": [{"id": "a", "domain": 3}, ...],
    ///  "vertices": [["a", "b", "c"], ...],
    ///  "fixed": {"a": 1},
    ///  "rule": "penrose" | "table",
    ///  "weights": [{"colors": [1, 2], "value": "1/2+i"}],
    ///  "default_weight": "0"}
    /// ```
    ///
    /// Edge ids may be strings or integers; `domain` defaults to 3.
    pub fn from_json(src: &str) -> Result<Self> {
        let doc: NetworkDoc =
            serde_json::from_str(src).map_err(|e| Error::Document(e.to_string()))?;
        let mut index = HashMap::new();
        let mut edge_ids = Vec::new();
        let mut domains = Vec::new();
        for e in doc.edges {
            let id = e.id.key();
            if index.insert(id.clone(), edge_ids.len()).is_some() {
                return Err(Error::Document(format!("duplicate edge id '{id}'")));
            }
            edge_ids.push(id);
            domains.push(e.domain);
        }
        let lookup = |id: String| {
            index
                .get(&id)
                .copied()
                .ok_or_else(|| Error::Document(format!("unknown edge id '{id}'")))
        };
        let vertices = doc
            .vertices
            .into_iter()
            .map(|list| list.into_iter().map(|id| lookup(id.key())).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        let fixed = doc
            .fixed
            .into_iter()
            .map(|(id, c)| Ok((lookup(id)?, c)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let network = Network::new(domains, vertices, fixed)?;
        let table = match doc.rule {
            RuleKind::Penrose => {
                if !doc.weights.is_empty() || doc.default_weight.is_some() {
                    return Err(Error::Document("the penrose rule takes no weights".into()));
                }
                None
            }
            RuleKind::Table => Some(TableRule {
                weights: doc.weights.into_iter().map(|w| (w.colors, w.value)).collect(),
                default: doc.default_weight.unwrap_or_else(Gaussian::zero),
            }),
        };
        Ok(LoadedNetwork {
            network,
            edge_ids,
            kind: doc.rule,
            table,
        })
    }

    pub fn rule(&self) -> &dyn VertexRule {
        match &self.table {
            Some(t) => t,
            None => &PenroseRule,
        }
    }

    pub fn evaluate(&self) -> Result<Amplitude> {
        partition_function(&self.network, self.rule())
    }

    /// Per-coloring CSV: one column per free edge id, then `weight`.
    pub fn trace_csv(&self) -> Result<(Amplitude, String)> {
        let free = self.network.free_edges();
        let mut out = String::new();
        let header: Vec<&str> = free.iter().map(|&e| self.edge_ids[e].as_str()).collect();
        writeln!(out, "{},weight", header.join(",")).unwrap();
        let amp = partition_function_traced(&self.network, self.rule(), &mut |colors, w| {
            for &e in &free {
                write!(out, "{},", colors[e]).unwrap();
            }
            writeln!(out, "{w}").unwrap();
        })?;
        Ok((amp, out))
    }
}

/// Trivalent test networks with planar cyclic orders.
pub mod corpus {
    use super::Network;

    /// Builds a network from a straight-line planar drawing, listing the
    /// edges at each vertex counterclockwise.
    pub fn from_drawing(points: &[(f64, f64)], edges: &[(usize, usize)]) -> Network {
        let mut around: Vec<Vec<(f64, usize)>> = vec![Vec::new(); points.len()];
        for (e, &(u, v)) in edges.iter().enumerate() {
            for (a, b) in [(u, v), (v, u)] {
                let (dx, dy) = (points[b].0 - points[a].0, points[b].1 - points[a].1);
                around[a].push((dy.atan2(dx), e));
            }
        }
        let vertices = around
            .into_iter()
            .map(|mut list| {
                list.sort_by(|x, y| x.0.total_cmp(&y.0));
                list.into_iter().map(|(_, e)| e).collect()
            })
            .collect();
        Network::uniform(3, edges.len(), vertices).expect("drawing gives a valid network")
    }

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> Network {
        Network::uniform(3, 3, vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap()
    }

    /// The complete graph on four vertices, drawn as a triangle around a center.
    pub fn k4() -> Network {
        from_drawing(
            &[(0.0, 0.0), (0.0, 2.0), (-2.0, -1.0), (2.0, -1.0)],
            &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)],
        )
    }

    /// Triangular prism: a triangle nested inside another.
    pub fn prism() -> Network {
        from_drawing(
            &[
                (0.0, 3.0),
                (-3.0, -2.0),
                (3.0, -2.0),
                (0.0, 1.0),
                (-1.0, -0.5),
                (1.0, -0.5),
            ],
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
    }

    /// The cube: a square nested inside another.
    pub fn cube() -> Network {
        from_drawing(
            &[
                (-3.0, -3.0),
                (3.0, -3.0),
                (3.0, 3.0),
                (-3.0, 3.0),
                (-1.0, -1.0),
                (1.0, -1.0),
                (1.0, 1.0),
                (-1.0, 1.0),
            ],
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (0, 4),
                (1, 5),
                (2, 6),
                (3, 7),
            ],
        )
    }

    /// Two digons with a pendant path each, joined by a bridge `x`–`y`.
    ///
    /// Edges: `ab1 ab2 ax bx xy yc yd cd1 cd2`.
    pub fn bridged() -> Network {
        let [ab1, ab2, ax, bx, xy, yc, yd, cd1, cd2] = [0, 1, 2, 3, 4, 5, 6, 7, 8];
        Network::uniform(
            3,
            9,
            vec![
                vec![ab1, ab2, ax],
                vec![bx, ab2, ab1],
                vec![xy, ax, bx],
                vec![yc, xy, yd],
                vec![yc, cd2, cd1],
                vec![cd1, cd2, yd],
            ],
        )
        .unwrap()
    }

    /// `(name, network)` for every corpus entry.
    pub fn all() -> Vec<(&'static str, Network)> {
        vec![
            ("theta", theta()),
            ("k4", k4()),
            ("prism", prism()),
            ("cube", cube()),
            ("bridged", bridged()),
        ]
    }
}
