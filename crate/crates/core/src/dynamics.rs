//! Floating-point simulation of the scalar-source recursion
//!
//! ```text
//! Δ'' = (k − Δ·Δ') / (Δ' − 2Δ)
//! ```
//!
//! which is the solved form of `Δ''(Δ' − Δ) − (Δ'' − Δ')Δ = k`.
//!
//! Orbits are classified escape-time style. Within the step budget an orbit
//! either stays below the escape threshold (`Bounded`), exceeds it
//! (`Escaped`), or hits a vanishing denominator (`Singular`).

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_STEPS: usize = 10_000;
/// Bounded orbits on the unit-scale grids stay below ~10 while the rest
/// spike past 100 within a few thousand steps; see the repository README.
pub const DEFAULT_ESCAPE_THRESHOLD: f64 = 1e2;
pub const DEFAULT_SINGULAR_EPS: f64 = 1e-12;

/// One step of the recursion with the default singularity tolerance.
pub fn step(d0: f64, d1: f64, k: f64) -> Result<f64> {
    step_with_eps(d0, d1, k, DEFAULT_SINGULAR_EPS)
}

pub fn step_with_eps(d0: f64, d1: f64, k: f64, singular_eps: f64) -> Result<f64> {
    let den = d1 - 2.0 * d0;
    if den.abs() < singular_eps {
        return Err(Error::SingularStep { denominator: den });
    }
    Ok((k - d0 * d1) / den)
}

/// `d2·(d1 − d0) − (d2 − d1)·d0 − k`
pub fn residual(d0: f64, d1: f64, d2: f64, k: f64) -> f64 {
    d2 * (d1 - d0) - (d2 - d1) * d0 - k
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitParams {
    pub delta0: f64,
    pub delta1: f64,
    pub k: f64,
    pub max_steps: usize,
    pub escape_threshold: f64,
    pub singular_eps: f64,
}

impl OrbitParams {
    pub fn new(delta0: f64, delta1: f64, k: f64) -> Self {
        OrbitParams {
            delta0,
            delta1,
            k,
            max_steps: DEFAULT_MAX_STEPS,
            escape_threshold: DEFAULT_ESCAPE_THRESHOLD,
            singular_eps: DEFAULT_SINGULAR_EPS,
        }
    }

    pub fn with_limits(mut self, limits: &Limits) -> Self {
        self.max_steps = limits.max_steps;
        self.escape_threshold = limits.escape_threshold;
        self.singular_eps = limits.singular_eps;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.escape_threshold > 0.0) {
            return Err(Error::domain("escape threshold must be positive"));
        }
        if !(self.singular_eps > 0.0) {
            return Err(Error::domain("singularity tolerance must be positive"));
        }
        Ok(())
    }
}

/// Step limits shared by every cell of a scan.
#[derive(Clone, Debug, PartialEq)]
pub struct Limits {
    pub max_steps: usize,
    pub escape_threshold: f64,
    pub singular_eps: f64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_steps: DEFAULT_MAX_STEPS,
            escape_threshold: DEFAULT_ESCAPE_THRESHOLD,
            singular_eps: DEFAULT_SINGULAR_EPS,
        }
    }
}

/// Sample indices count from 0, so `samples[0] = Δ` and `samples[1] = Δ'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Bounded,
    /// `samples[step]` exceeded the escape threshold (or was not finite).
    Escaped { step: usize },
    /// `samples[step]` could not be computed.
    Singular { step: usize },
}

impl Classification {
    pub fn label(&self) -> &'static str {
        match self {
            Classification::Bounded => "bounded",
            Classification::Escaped { .. } => "escaped",
            Classification::Singular { .. } => "singular",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitResult {
    pub samples: Vec<f64>,
    pub classification: Classification,
    pub max_abs: f64,
}

impl OrbitResult {
    /// Index of the last sample reached, or of the failing sample.
    pub fn terminal_step(&self) -> usize {
        match self.classification {
            Classification::Bounded => self.samples.len() - 1,
            Classification::Escaped { step } | Classification::Singular { step } => step,
        }
    }

    /// CSV with header `step,delta`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,delta\n");
        for (i, x) in self.samples.iter().enumerate() {
            writeln!(out, "{i},{x}").unwrap();
        }
        out
    }
}

fn escapes(x: f64, threshold: f64) -> bool {
    !x.is_finite() || x.abs() > threshold
}

/// Runs the recursion until the step budget is spent, the orbit escapes, or
/// a denominator vanishes.
pub fn iterate(p: &OrbitParams) -> Result<OrbitResult> {
    p.validate()?;
    let mut samples = Vec::with_capacity(p.max_steps.min(1 << 20) + 2);
    let mut max_abs = 0.0f64;
    for (i, &x) in [p.delta0, p.delta1].iter().enumerate() {
        samples.push(x);
        max_abs = max_abs.max(x.abs());
        if escapes(x, p.escape_threshold) {
            return Ok(OrbitResult {
                samples,
                classification: Classification::Escaped { step: i },
                max_abs,
            });
        }
    }
    let (mut d0, mut d1) = (p.delta0, p.delta1);
    for _ in 0..p.max_steps {
        let d2 = match step_with_eps(d0, d1, p.k, p.singular_eps) {
            Ok(x) => x,
            Err(_) => {
                let step = samples.len();
                return Ok(OrbitResult {
                    samples,
                    classification: Classification::Singular { step },
                    max_abs,
                });
            }
        };
        samples.push(d2);
        max_abs = max_abs.max(d2.abs());
        if escapes(d2, p.escape_threshold) {
            let step = samples.len() - 1;
            return Ok(OrbitResult {
                samples,
                classification: Classification::Escaped { step },
                max_abs,
            });
        }
        d0 = d1;
        d1 = d2;
    }
    Ok(OrbitResult {
        samples,
        classification: Classification::Bounded,
        max_abs,
    })
}

/// Evenly spaced grid `lo, …, hi` with `n ≥ 2` points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Axis {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain("a scan axis needs at least 2 points"));
        }
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::domain("scan bounds must be finite"));
        }
        Ok(Axis { lo, hi, n })
    }

    /// Parses `lo:hi:n`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::domain(format!("expected lo:hi:n, got '{s}'"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo = parts[0].trim().parse().map_err(|_| bad())?;
        let hi = parts[1].trim().parse().map_err(|_| bad())?;
        let n = parts[2].trim().parse().map_err(|_| bad())?;
        Axis::new(lo, hi, n)
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            return self.hi;
        }
        self.lo + (self.hi - self.lo) * (i as f64) / ((self.n - 1) as f64)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanCell {
    pub d0: f64,
    pub d1: f64,
    pub classification: Classification,
    pub terminal_step: usize,
    pub max_abs: f64,
}

/// Row-major scan result: row `r` fixes `d0 = d0_axis.value(r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    pub k: f64,
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<ScanCell>,
}

impl ScanResult {
    pub fn cell(&self, row: usize, col: usize) -> &ScanCell {
        &self.cells[row * self.cols + col]
    }

    pub fn count(&self, label: &str) -> usize {
        self.cells
            .iter()
            .filter(|c| c.classification.label() == label)
            .count()
    }

    /// CSV with header `d0,d1,k,classification,terminal_step,max_abs`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d0,d1,k,classification,terminal_step,max_abs\n");
        for c in &self.cells {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                c.d0,
                c.d1,
                self.k,
                c.classification.label(),
                c.terminal_step,
                c.max_abs
            )
            .unwrap();
        }
        out
    }
}

/// Classifies every initial pair on the grid. Cells run in parallel; the
/// output order is row-major regardless of scheduling.
pub fn scan(d0_axis: &Axis, d1_axis: &Axis, k: f64, limits: &Limits) -> Result<ScanResult> {
    OrbitParams::new(0.0, 0.0, k).with_limits(limits).validate()?;
    let (rows, cols) = (d0_axis.n, d1_axis.n);
    let cells = (0..rows * cols)
        .into_par_iter()
        .map(|idx| {
            let (d0, d1) = (d0_axis.value(idx / cols), d1_axis.value(idx % cols));
            let r = iterate(&OrbitParams::new(d0, d1, k).with_limits(limits))
                .expect("limits validated above");
            ScanCell {
                d0,
                d1,
                classification: r.classification,
                terminal_step: r.terminal_step(),
                max_abs: r.max_abs,
            }
        })
        .collect();
    Ok(ScanResult {
        k,
        rows,
        cols,
        cells,
    })
}

/// One-variable scalar solution of `(X' − X)² = k`: each step adds
/// `+√k` (`true`) or `−√k` (`false`).
pub fn increment_orbit(x0: f64, k: f64, signs: &[bool]) -> Result<Vec<f64>> {
    if k < 0.0 {
        return Err(Error::domain("the increment law needs k >= 0"));
    }
    let r = k.sqrt();
    let mut out = Vec::with_capacity(signs.len() + 1);
    out.push(x0);
    let mut x = x0;
    for &up in signs {
        x = if up { x + r } else { x - r };
        out.push(x);
    }
    Ok(out)
}

/// `(X' − X)² − k` along an orbit.
pub fn increment_law_residuals(orbit: &[f64], k: f64) -> Vec<f64> {
    orbit.windows(2).map(|w| (w[1] - w[0]).powi(2) - k).collect()
}

/// `(A' − A)(B' − B)` along two orbits; commuting scalars would need this
/// to vanish, which the increment law only allows for `k = 0`.
pub fn cross_increments(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.windows(2)
        .zip(b.windows(2))
        .map(|(x, y)| (x[1] - x[0]) * (y[1] - y[0]))
        .collect()
}
