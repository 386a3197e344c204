//! `ordcalc`: verification suites and experiment drivers.
//!
//! Exit codes: 0 on success, 1 when a check or oracle comparison fails,
//! 2 on bad usage or malformed input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ordcalc::dynamics::{self, Axis, Limits, OrbitParams};
use ordcalc::hopf::{self, FiniteHopf};
use ordcalc::netamp::{self, Dir, LoadedNetwork, Network, VertexRule};
use ordcalc::qcalc::{self, QPoly};
use ordcalc::{suites, Error, Gaussian};
use num::{One, Zero};
use serde_json::json;

#[derive(Parser)]
#[command(name = "ordcalc", version, about = "Exact checks and experiments for the discrete ordered calculus")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a randomized identity suite and print a JSON report.
    Verify(VerifyArgs),
    /// The scalar recursion: single steps, orbits and parameter scans.
    #[command(subcommand)]
    Chaos(ChaosCmd),
    /// q-integers, q-binomials and the Jackson derivative.
    #[command(subcommand)]
    Qcalc(QcalcCmd),
    /// Amplitudes of colored networks, chains and the checkerboard walk.
    #[command(subcommand)]
    Netamp(NetampCmd),
    /// Finite Hopf algebras: axiom checks and the inner derivative.
    #[command(subcommand)]
    Hopf(HopfCmd),
}

#[derive(Args)]
struct VerifyArgs {
    /// One of doc-identities, poisson, qcalc, hopf, netamp-oracles.
    suite: String,
    /// Seed for the random case generator.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random cases per identity.
    #[arg(long, default_value_t = 1000)]
    cases: usize,
}

#[derive(Args)]
struct LimitArgs {
    /// Maximum number of steps.
    #[arg(long, default_value_t = dynamics::DEFAULT_MAX_STEPS)]
    steps: usize,
    /// |Δ| above which an orbit counts as escaped.
    #[arg(long, default_value_t = dynamics::DEFAULT_ESCAPE_THRESHOLD)]
    escape: f64,
    /// |Δ' − 2Δ| below which a step counts as singular.
    #[arg(long, default_value_t = dynamics::DEFAULT_SINGULAR_EPS)]
    eps: f64,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_steps: self.steps,
            escape_threshold: self.escape,
            singular_eps: self.eps,
        }
    }
}

#[derive(Subcommand)]
enum ChaosCmd {
    /// Print Δ'' for one step, or `singular`.
    #[command(allow_negative_numbers = true)]
    Step {
        /// Δ
        #[arg(long)]
        d0: f64,
        /// Δ'
        #[arg(long)]
        d1: f64,
        /// Source constant.
        #[arg(long)]
        k: f64,
        /// Singularity tolerance on |Δ' − 2Δ|.
        #[arg(long, default_value_t = dynamics::DEFAULT_SINGULAR_EPS)]
        eps: f64,
    },
    /// Iterate from (Δ, Δ') and print `step,delta` CSV. The classification
    /// goes to stderr.
    #[command(allow_negative_numbers = true)]
    Orbit {
        /// Δ
        #[arg(long)]
        d0: f64,
        /// Δ'
        #[arg(long)]
        d1: f64,
        /// Source constant.
        #[arg(long)]
        k: f64,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Classify every cell of a (Δ, Δ') grid and print one CSV row per cell.
    #[command(allow_negative_numbers = true)]
    Scan {
        /// Source constant.
        #[arg(long)]
        k: f64,
        /// Δ axis as `lo:hi:n`; also used for Δ' unless --grid-d1 is given.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// Δ' axis as `lo:hi:n`.
        #[arg(long, allow_hyphen_values = true)]
        grid_d1: Option<String>,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

#[derive(Subcommand)]
enum QcalcCmd {
    /// CSV of `n,k,binomial` for 0 ≤ k ≤ n ≤ N, or of `n,integer,factorial`
    /// with --integers.
    Table {
        /// Largest n.
        #[arg(long)]
        n: u32,
        /// List [n]_q and [n]_q! instead of binomials.
        #[arg(long)]
        integers: bool,
    },
    /// Print the Jackson derivative of a polynomial in x.
    Dq {
        /// Polynomial such as `x^3 + x`; coefficients may involve q.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// With --delta, also compare against the ordered-calculus bridge at x0.
        #[arg(long, allow_hyphen_values = true, requires = "delta")]
        x0: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "x0")]
        delta: Option<String>,
    },
}

#[derive(Subcommand)]
enum NetampCmd {
    /// Penrose evaluation of a trivalent network, as `{value, colorings}`.
    Penrose {
        /// Network JSON.
        #[arg(long)]
        file: PathBuf,
        /// Compare with a brute-force count of proper edge 3-colorings.
        #[arg(long)]
        oracle: bool,
    },
    /// Partition function of a network under the rule in its file.
    Partition {
        /// Network JSON.
        #[arg(long)]
        file: PathBuf,
        /// Write one CSV row per coloring to this path.
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
        /// Compare with plain enumeration of every coloring.
        #[arg(long)]
        oracle: bool,
    },
    /// Amplitude of the chain a → c1 → … → cm → b.
    Chain {
        /// `dirac2` or a JSON file holding a square matrix of Gaussian strings.
        #[arg(long)]
        matrix: String,
        /// Number of intermediate states.
        #[arg(long)]
        m: usize,
        /// Start state: L/R for dirac2, or a 0-based index.
        #[arg(long)]
        a: String,
        /// End state.
        #[arg(long)]
        b: String,
        /// Compare with the (m+1)-th matrix power.
        #[arg(long)]
        oracle: bool,
    },
    /// Checkerboard amplitudes up to time t as `t,x,dir,value` CSV.
    #[command(allow_negative_numbers = true)]
    Checkerboard {
        /// Last time step.
        #[arg(long)]
        t: u32,
        /// Starting site.
        #[arg(long, default_value_t = 0)]
        x0: i64,
        /// Initial direction, L or R.
        #[arg(long, default_value = "R")]
        dir: String,
        /// Compare every amplitude with an explicit path sum (t ≤ 20).
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct HopfSource {
    /// JSON file with labels, mult, unit, comult, counit and antipode.
    #[arg(long)]
    file: Option<PathBuf>,
    /// `sweedler` or `cyclic:N`.
    #[arg(long)]
    builtin: Option<String>,
}

impl HopfSource {
    fn load(&self) -> Result<FiniteHopf, Failure> {
        match (&self.file, &self.builtin) {
            (Some(path), _) => Ok(FiniteHopf::from_json(&read(path)?)?),
            (None, Some(name)) => builtin_hopf(name),
            (None, None) => Ok(hopf::sweedler()),
        }
    }
}

#[derive(Subcommand)]
enum HopfCmd {
    /// Check the Hopf axioms and print a JSON report. Defaults to the
    /// Sweedler algebra.
    Verify {
        #[command(flatten)]
        source: HopfSource,
    },
    /// Print D(x) = x·g − g·x for a basis element x, or for every basis
    /// element when --element is omitted.
    Doc {
        #[command(flatten)]
        source: HopfSource,
        /// Label of the clock element.
        #[arg(long, default_value = "g")]
        clock: String,
        /// Label of the basis element to differentiate.
        #[arg(long)]
        element: Option<String>,
    },
}

enum Failure {
    /// Input or usage problem.
    Usage(String),
    /// A check ran and did not hold. The output is still written.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

fn builtin_hopf(name: &str) -> Result<FiniteHopf, Failure> {
    if name == "sweedler" {
        return Ok(hopf::sweedler());
    }
    if let Some(n) = name.strip_prefix("cyclic:") {
        let n = n
            .parse()
            .map_err(|_| Failure::Usage(format!("bad group order in '{name}'")))?;
        return Ok(hopf::cyclic_group_algebra(n)?);
    }
    Err(Failure::Usage(format!("unknown builtin '{name}', expected sweedler or cyclic:N")))
}

/// Output text plus an optional check failure to report after writing it.
struct Outcome {
    text: String,
    failure: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, failure: None }
    }

    fn check(text: String, passed: bool, what: &str) -> Self {
        Outcome {
            text,
            failure: (!passed).then(|| what.to_string()),
        }
    }
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Verify(a) => verify(a),
        Command::Chaos(c) => chaos(c),
        Command::Qcalc(c) => qcalc_cmd(c),
        Command::Netamp(c) => netamp_cmd(c),
        Command::Hopf(c) => hopf_cmd(c),
    }
}

fn verify(a: &VerifyArgs) -> Result<Outcome, Failure> {
    if !suites::SUITES.contains(&a.suite.as_str()) {
        return Err(Failure::Usage(format!(
            "unknown suite '{}', expected one of {}",
            a.suite,
            suites::SUITES.join(", ")
        )));
    }
    let report = suites::run_suite(&a.suite, a.seed, a.cases)?;
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.name.as_str())
        .collect();
    let what = format!("suite {} failed: {}", a.suite, failed.join(", "));
    Ok(Outcome::check(to_json(&report), report.passed, &what))
}

fn chaos(c: &ChaosCmd) -> Result<Outcome, Failure> {
    match c {
        ChaosCmd::Step { d0, d1, k, eps } => match dynamics::step_with_eps(*d0, *d1, *k, *eps) {
            Ok(v) => Ok(Outcome::ok(format!("{v}\n"))),
            Err(Error::SingularStep { .. }) => Ok(Outcome::ok("singular\n".into())),
            Err(e) => Err(e.into()),
        },
        ChaosCmd::Orbit { d0, d1, k, limits } => {
            let params = OrbitParams::new(*d0, *d1, *k).with_limits(&limits.limits());
            let orbit = dynamics::iterate(&params)?;
            eprintln!(
                "{} at step {} (max |Δ| = {})",
                orbit.classification.label(),
                orbit.terminal_step(),
                orbit.max_abs
            );
            Ok(Outcome::ok(orbit.to_csv()))
        }
        ChaosCmd::Scan {
            k,
            grid,
            grid_d1,
            limits,
        } => {
            let d0_axis = Axis::parse(grid)?;
            let d1_axis = match grid_d1 {
                Some(g) => Axis::parse(g)?,
                None => d0_axis,
            };
            let result = dynamics::scan(&d0_axis, &d1_axis, *k, &limits.limits())?;
            eprintln!(
                "bounded {} escaped {} singular {}",
                result.count("bounded"),
                result.count("escaped"),
                result.count("singular")
            );
            Ok(Outcome::ok(result.to_csv()))
        }
    }
}

fn parse_rational(s: &str) -> Result<num::BigRational, Failure> {
    s.parse::<Gaussian>()
        .ok()
        .filter(Gaussian::is_real)
        .map(|g| g.re)
        .ok_or_else(|| Failure::Usage(format!("'{s}' is not a rational number")))
}

fn qcalc_cmd(c: &QcalcCmd) -> Result<Outcome, Failure> {
    match c {
        QcalcCmd::Table { n, integers: true } => {
            let mut out = String::from("n,integer,factorial\n");
            for j in 0..=*n {
                out.push_str(&format!("{j},{},{}\n", qcalc::q_integer(j), qcalc::q_factorial(j)));
            }
            Ok(Outcome::ok(out))
        }
        QcalcCmd::Table { n, integers: false } => {
            let mut out = String::from("n,k,binomial\n");
            for j in 0..=*n {
                for k in 0..=j {
                    out.push_str(&format!("{j},{k},{}\n", qcalc::q_binomial(j, k)?));
                }
            }
            Ok(Outcome::ok(out))
        }
        QcalcCmd::Dq { poly, x0, delta } => {
            let f: QPoly = poly.parse()?;
            let mut out = format!("{}\n", qcalc::dq(&f));
            if let (Some(x0), Some(delta)) = (x0, delta) {
                let ok = qcalc::doc_bridge_check(&f, &parse_rational(x0)?, &parse_rational(delta)?)?;
                out.push_str(&format!("bridge {ok}\n"));
                return Ok(Outcome::check(out, ok, "bridge check failed"));
            }
            Ok(Outcome::ok(out))
        }
    }
}

const ENUMERATION_CAP: u128 = 1 << 24;

/// Sums the rule over every coloring of the free edges, without pruning.
fn enumerate_all(net: &Network, rule: &dyn VertexRule) -> Result<Gaussian, Failure> {
    let free = net.free_edges();
    let total: u128 = free.iter().map(|&e| net.domains()[e] as u128).product();
    if total > ENUMERATION_CAP {
        return Err(Failure::Usage(format!(
            "oracle enumeration of {total} colorings exceeds the cap of {ENUMERATION_CAP}"
        )));
    }
    let mut colors = vec![1u32; net.edge_count()];
    for (&e, &c) in net.fixed() {
        colors[e] = c;
    }
    let mut sum = Gaussian::zero();
    for mut index in 0..total {
        for &e in &free {
            let d = net.domains()[e] as u128;
            colors[e] = (index % d) as u32 + 1;
            index /= d;
        }
        let mut w = Gaussian::one();
        for (v, list) in net.vertices().iter().enumerate() {
            let local: Vec<u32> = list.iter().map(|&e| colors[e]).collect();
            w = &w * &rule.weight(v, &local)?;
        }
        sum += &w;
    }
    Ok(sum)
}

/// Colorings with three distinct colors at every vertex.
fn proper_coloring_count(net: &Network) -> Result<u64, Failure> {
    let rule = |_: usize, c: &[u32]| {
        let distinct = c.iter().enumerate().all(|(i, x)| !c[..i].contains(x));
        Ok(if distinct { Gaussian::one() } else { Gaussian::zero() })
    };
    let n = enumerate_all(net, &rule)?;
    Ok(n.to_integer().and_then(|n| u64::try_from(n).ok()).expect("a count"))
}

fn load_network(path: &Path) -> Result<LoadedNetwork, Failure> {
    Ok(LoadedNetwork::from_json(&read(path)?)?)
}

fn chain_state(s: &str, dirac: bool) -> Result<usize, Failure> {
    if dirac {
        return match Dir::parse(s)? {
            Dir::L => Ok(0),
            Dir::R => Ok(1),
        };
    }
    s.parse()
        .map_err(|_| Failure::Usage(format!("state '{s}' is not a 0-based index")))
}

fn matrix_power_entry(w: &[Vec<Gaussian>], power: usize, a: usize, b: usize) -> Gaussian {
    let n = w.len();
    let mut row: Vec<Gaussian> = (0..n)
        .map(|j| if j == a { Gaussian::one() } else { Gaussian::zero() })
        .collect();
    for _ in 0..power {
        row = (0..n)
            .map(|j| {
                let mut acc = Gaussian::zero();
                for (i, r) in row.iter().enumerate() {
                    acc += &(r * &w[i][j]);
                }
                acc
            })
            .collect();
    }
    row[b].clone()
}

fn netamp_cmd(c: &NetampCmd) -> Result<Outcome, Failure> {
    match c {
        NetampCmd::Penrose { file, oracle } => {
            let loaded = load_network(file)?;
            let net = &loaded.network;
            let count = netamp::penrose_count(net)?;
            let colorings: u128 = net.free_edges().iter().map(|&e| net.domains()[e] as u128).product();
            let text = to_json(&json!({"value": count.to_string(), "colorings": colorings.to_string()}));
            if *oracle {
                let brute = proper_coloring_count(net)?;
                let what = format!("Penrose value {count} differs from brute-force count {brute}");
                return Ok(Outcome::check(text, brute == count, &what));
            }
            Ok(Outcome::ok(text))
        }
        NetampCmd::Partition { file, trace, oracle } => {
            let loaded = load_network(file)?;
            let amp = match trace {
                Some(path) => {
                    let (amp, csv) = loaded.trace_csv()?;
                    fs::write(path, csv)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    amp
                }
                None => loaded.evaluate()?,
            };
            let text = to_json(&json!({"value": amp.value.to_string(), "colorings": amp.colorings.to_string()}));
            if *oracle {
                let brute = enumerate_all(&loaded.network, loaded.rule())?;
                let what = format!("pruned sum {} differs from full enumeration {brute}", amp.value);
                return Ok(Outcome::check(text, brute == amp.value, &what));
            }
            Ok(Outcome::ok(text))
        }
        NetampCmd::Chain { matrix, m, a, b, oracle } => {
            let dirac = matrix == "dirac2";
            let w: Vec<Vec<Gaussian>> = if dirac {
                netamp::dirac_weights()
            } else {
                serde_json::from_str(&read(Path::new(matrix))?)
                    .map_err(|e| Failure::Usage(format!("{matrix}: {e}")))?
            };
            let (a, b) = (chain_state(a, dirac)?, chain_state(b, dirac)?);
            let value = netamp::chain_amplitude(&w, *m, a, b)?;
            let text = format!("{value}\n");
            if *oracle {
                let power = matrix_power_entry(&w, m + 1, a, b);
                let what = format!("chain sum {value} differs from matrix power entry {power}");
                return Ok(Outcome::check(text, power == value, &what));
            }
            Ok(Outcome::ok(text))
        }
        NetampCmd::Checkerboard { t, x0, dir, oracle } => {
            let dir = Dir::parse(dir)?;
            if *oracle && *t > netamp::PATH_SUM_CAP {
                return Err(Failure::Usage(format!(
                    "--oracle needs t ≤ {}",
                    netamp::PATH_SUM_CAP
                )));
            }
            let state = netamp::checkerboard_evolve(*t, (*x0, dir));
            let text = state.to_csv();
            if *oracle {
                for s in 0..=*t {
                    for x in x0 - s as i64..=x0 + s as i64 {
                        for d in [Dir::L, Dir::R] {
                            let path = netamp::brute_force_path_sum(s, (*x0, dir), (x, d))?;
                            if path != state.get(d, x, s) {
                                let what = format!("amplitude at t = {s}, x = {x}, {d:?} differs from the path sum {path}");
                                return Ok(Outcome::check(text, false, &what));
                            }
                        }
                    }
                }
            }
            Ok(Outcome::ok(text))
        }
    }
}

fn hopf_cmd(c: &HopfCmd) -> Result<Outcome, Failure> {
    match c {
        HopfCmd::Verify { source } => {
            let h = source.load()?;
            let report = hopf::verify_hopf(&h)?;
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.axiom).collect();
            let what = format!("axioms failed: {}", failed.join(", "));
            Ok(Outcome::check(to_json(&report), report.all_passed(), &what))
        }
        HopfCmd::Doc { source, clock, element } => {
            let h = source.load()?;
            let g = h.element(clock)?;
            let labels: Vec<&str> = match element {
                Some(e) => vec![e.as_str()],
                None => h.labels.iter().map(String::as_str).collect(),
            };
            let mut out = String::new();
            for label in labels {
                let d = hopf::doc_derivative(&h, &g, &h.element(label)?)?;
                out.push_str(&format!("D({label}) = {}\n", hopf::format_element(&h, &d)));
            }
            Ok(Outcome::ok(out))
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Usage(format!("stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command).and_then(|o| {
        emit(cli.out.as_deref(), &o.text)?;
        o.failure.map_or(Ok(()), |f| Err(Failure::Check(f)))
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("ordcalc: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("ordcalc: {msg}");
            ExitCode::from(2)
        }
    }
}
