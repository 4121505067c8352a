//! Parameter sweeps and their CSV records, in units where `m = 1`.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::massless::massless_step_scatter;
use crate::modes::{classify_band, BandCase};
use crate::overlap::{klein_band_kmax, n3_integrand, overlap_report_with_tol, OverlapReport};
use crate::step::{match_oracle, step_scatter, ScatteringResult};
use crate::transfer::{barrier_scatter, solve_profile_direct, BarrierSpec};

const MASS: f64 = 1.0;

/// `start:end:count`, inclusive of both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn new(start: f64, end: f64, count: usize) -> Result<Self> {
        if !start.is_finite() || !end.is_finite() {
            return Err(Error::InvalidSweep(format!(
                "grid ends must be finite, got {start}:{end}"
            )));
        }
        if !(start < end) {
            return Err(Error::InvalidSweep(format!(
                "grid start {start} must be below end {end}"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidSweep(format!(
                "grid needs at least 2 points, got {count}"
            )));
        }
        Ok(GridSpec { start, end, count })
    }

    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i == self.count - 1 {
                    self.end
                } else {
                    self.start + (self.end - self.start) * (i as f64 / last)
                }
            })
            .collect()
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidSweep(format!(
                "grid `{s}` is not start:end:count"
            )));
        }
        let num = |t: &str| -> Result<f64> {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidSweep(format!("grid value `{t}` is not a number")))
        };
        let count = parts[2].trim().parse().map_err(|_| {
            Error::InvalidSweep(format!("grid count `{}` is not a count", parts[2]))
        })?;
        GridSpec::new(num(parts[0])?, num(parts[1])?, count)
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.end, self.count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    StepR,
    BarrierR,
    OverlapN,
    MasslessR,
}

/// What the step sweep grid runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Axis {
    /// Incident momentum `k >= 0`, `E = √(1 + k²)`.
    #[default]
    Momentum,
    Energy,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub quantity: Quantity,
    pub grid: GridSpec,
    /// Step or barrier height; unused by the overlap sweep.
    pub v0: f64,
    /// Barrier width.
    pub width: Option<f64>,
    pub axis: Axis,
    /// Quadrature tolerance of the overlap sweep.
    pub tol: f64,
}

impl SweepSpec {
    pub fn new(quantity: Quantity, grid: GridSpec) -> Self {
        SweepSpec {
            quantity,
            grid,
            v0: 0.0,
            width: None,
            axis: Axis::Momentum,
            tol: crate::overlap::DEFAULT_TOL,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.v0.is_finite() {
            return Err(Error::InvalidSweep(format!(
                "V0 = {} is not finite",
                self.v0
            )));
        }
        match self.quantity {
            Quantity::StepR if self.axis == Axis::Momentum && self.grid.start < 0.0 => Err(
                Error::InvalidSweep("momentum grid must start at k >= 0".into()),
            ),
            Quantity::BarrierR => match self.width {
                Some(a) if a > 0.0 && a.is_finite() => {
                    if self.grid.start < 0.0 {
                        Err(Error::InvalidSweep(
                            "momentum grid must start at k >= 0".into(),
                        ))
                    } else {
                        Ok(())
                    }
                }
                _ => Err(Error::InvalidSweep(
                    "barrier width must be positive and finite".into(),
                )),
            },
            Quantity::OverlapN if self.grid.start < 0.0 => {
                Err(Error::InvalidSweep("V0 grid must start at V0 >= 0".into()))
            }
            Quantity::OverlapN if !(self.tol > 0.0) => Err(Error::InvalidSweep(format!(
                "tolerance {} must be positive",
                self.tol
            ))),
            _ => Ok(()),
        }
    }

    fn expect(&self, q: Quantity) -> Result<()> {
        if self.quantity != q {
            return Err(Error::InvalidSweep(format!(
                "expected a {q:?} sweep, got {:?}",
                self.quantity
            )));
        }
        self.validate()
    }
}

/// One CSV row.
pub trait CsvRecord {
    fn header() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// Seventeen significant digits; `-0` is written as `0`.
pub fn fmt_f64(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn amplitude_fields(r: Option<&ScatteringResult>) -> [String; 6] {
    match r {
        Some(r) => [
            fmt_f64(r.f.re),
            fmt_f64(r.f.im),
            fmt_f64(r.g.re),
            fmt_f64(r.g.im),
            fmt_f64(r.reflection),
            fmt_f64(r.transmission),
        ],
        None => Default::default(),
    }
}

pub fn write_csv<R: CsvRecord, W: Write>(records: &[R], mut out: W) -> io::Result<()> {
    writeln!(out, "{}", R::header().join(","))?;
    for r in records {
        writeln!(out, "{}", r.fields().join(","))?;
    }
    out.flush()
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    /// Incident momentum; absent when the left side is evanescent.
    pub k: Option<f64>,
    pub energy: f64,
    pub v0: f64,
    pub band: BandCase,
    /// Absent in the gap where there are no states.
    pub result: Option<ScatteringResult>,
}

impl CsvRecord for StepRecord {
    fn header() -> &'static [&'static str] {
        &["k", "E", "band", "f_re", "f_im", "g_re", "g_im", "R", "T"]
    }

    fn fields(&self) -> Vec<String> {
        let mut v = vec![
            opt(self.k),
            fmt_f64(self.energy),
            self.band.tag().to_string(),
        ];
        v.extend(amplitude_fields(self.result.as_ref()));
        v
    }
}

pub fn step_point(energy: f64, k: Option<f64>, v0: f64) -> Result<StepRecord> {
    let band = classify_band(energy, v0, MASS);
    let result = match step_scatter(energy, v0, MASS) {
        Ok(r) => Some(r),
        Err(Error::NoStates { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(StepRecord {
        k,
        energy,
        v0,
        band,
        result,
    })
}

pub fn run_step_sweep(spec: &SweepSpec) -> Result<Vec<StepRecord>> {
    spec.expect(Quantity::StepR)?;
    spec.grid
        .points()
        .par_iter()
        .map(|&x| match spec.axis {
            Axis::Momentum => step_point(MASS.hypot(x), Some(x), spec.v0),
            Axis::Energy => {
                let k = (x.abs() >= MASS).then(|| (x * x - MASS * MASS).sqrt());
                step_point(x, k, spec.v0)
            }
        })
        .collect()
}

/// Barrier or general-profile result at one energy.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRecord {
    pub k: f64,
    pub energy: f64,
    pub result: std::result::Result<ScatteringResult, Error>,
}

impl CsvRecord for ProfileRecord {
    fn header() -> &'static [&'static str] {
        &["k", "E", "f_re", "f_im", "g_re", "g_im", "R", "T", "error"]
    }

    fn fields(&self) -> Vec<String> {
        let mut v = vec![fmt_f64(self.k), fmt_f64(self.energy)];
        v.extend(amplitude_fields(self.result.as_ref().ok()));
        v.push(
            self.result
                .as_ref()
                .err()
                .map(|e| quote(&e.to_string()))
                .unwrap_or_default(),
        );
        v
    }
}

pub fn run_barrier_sweep(spec: &SweepSpec) -> Result<Vec<ProfileRecord>> {
    spec.expect(Quantity::BarrierR)?;
    let barrier = BarrierSpec {
        height: spec.v0,
        width: spec.width.unwrap_or_default(),
    };
    Ok(spec
        .grid
        .points()
        .par_iter()
        .map(|&k| {
            let energy = MASS.hypot(k);
            ProfileRecord {
                k,
                energy,
                result: barrier_scatter(&barrier, energy, MASS),
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct OverlapRecord {
    pub v0: f64,
    pub report: std::result::Result<OverlapReport, Error>,
}

impl CsvRecord for OverlapRecord {
    fn header() -> &'static [&'static str] {
        &[
            "V0",
            "n2PerL",
            "n3PerL",
            "intuitivePerL",
            "totalPerL",
            "error",
        ]
    }

    fn fields(&self) -> Vec<String> {
        let mut v = vec![fmt_f64(self.v0)];
        match &self.report {
            Ok(r) => {
                v.extend([
                    fmt_f64(r.n2_per_length),
                    fmt_f64(r.n3_per_length),
                    fmt_f64(r.intuitive_per_length),
                    fmt_f64(r.total_per_length),
                    String::new(),
                ]);
            }
            Err(e) => {
                v.extend(std::iter::repeat_n(String::new(), 4));
                v.push(quote(&e.to_string()));
            }
        }
        v
    }
}

pub fn run_overlap_sweep(spec: &SweepSpec) -> Result<Vec<OverlapRecord>> {
    spec.expect(Quantity::OverlapN)?;
    Ok(spec
        .grid
        .points()
        .par_iter()
        .map(|&v0| OverlapRecord {
            v0,
            report: overlap_report_with_tol(v0, MASS, spec.tol),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MasslessRecord {
    pub energy: f64,
    pub v0: f64,
    pub result: ScatteringResult,
}

impl CsvRecord for MasslessRecord {
    fn header() -> &'static [&'static str] {
        &[
            "E", "k", "k_prime", "f_re", "f_im", "g_re", "g_im", "R", "T",
        ]
    }

    fn fields(&self) -> Vec<String> {
        let mut v = vec![
            fmt_f64(self.energy),
            fmt_f64(self.result.k_left),
            fmt_f64(self.result.k_right),
        ];
        v.extend(amplitude_fields(Some(&self.result)));
        v
    }
}

/// Energies and `V0` in absolute units.
pub fn run_massless_sweep(spec: &SweepSpec) -> Result<Vec<MasslessRecord>> {
    spec.expect(Quantity::MasslessR)?;
    spec.grid
        .points()
        .par_iter()
        .map(|&energy| {
            Ok(MasslessRecord {
                energy,
                v0: spec.v0,
                result: massless_step_scatter(energy, spec.v0)?,
            })
        })
        .collect()
}

/// Outcome of re-checking a random subset of records.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct VerifyReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Indices of a seeded 1% (at least one) of `n` records, ascending.
pub fn sample_indices(n: usize, seed: u64) -> Vec<usize> {
    if n == 0 {
        return Vec::new();
    }
    let count = n.div_ceil(100).max(1);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut idx = rand::seq::index::sample(&mut rng, n, count).into_vec();
    idx.sort_unstable();
    idx
}

fn close(a: num_complex::Complex64, b: num_complex::Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

fn check_unitarity(r: &ScatteringResult, tol: f64, label: &str, failures: &mut Vec<String>) {
    let sum = r.reflection + r.transmission;
    if (sum - 1.0).abs() > tol {
        failures.push(format!("{label}: R + T = {sum}"));
    }
}

pub fn verify_step(records: &[StepRecord], seed: u64, tol: f64) -> VerifyReport {
    let mut rep = VerifyReport::default();
    for i in sample_indices(records.len(), seed) {
        let rec = &records[i];
        rep.checked += 1;
        let label = format!("row {i} (E = {})", rec.energy);
        match (&rec.result, match_oracle(rec.energy, rec.v0, MASS)) {
            (Some(r), Ok(o)) => {
                if !close(r.f, o.f(), tol) || !close(r.g, o.g(), tol) {
                    rep.failures.push(format!(
                        "{label}: amplitudes differ from the matching solve"
                    ));
                }
                if rec.band.is_transmitting() {
                    check_unitarity(r, tol, &label, &mut rep.failures);
                }
            }
            (None, Err(Error::NoStates { .. })) => {}
            (None, _) => rep
                .failures
                .push(format!("{label}: blank record but states exist")),
            (Some(_), Err(e)) => rep
                .failures
                .push(format!("{label}: matching solve failed: {e}")),
        }
    }
    rep
}

pub fn verify_barrier(
    records: &[ProfileRecord],
    v0: f64,
    width: f64,
    tol: f64,
    seed: u64,
) -> VerifyReport {
    let mut rep = VerifyReport::default();
    let profile = BarrierSpec { height: v0, width }.profile();
    for i in sample_indices(records.len(), seed) {
        let rec = &records[i];
        let Ok(r) = &rec.result else { continue };
        rep.checked += 1;
        let label = format!("row {i} (k = {})", rec.k);
        let direct = profile
            .as_ref()
            .map_err(Clone::clone)
            .and_then(|p| solve_profile_direct(p, rec.energy, MASS));
        match direct {
            Ok(d) => {
                if !close(r.f, d.f, tol) || !close(r.g, d.g, tol) {
                    rep.failures
                        .push(format!("{label}: amplitudes differ from the direct solve"));
                }
            }
            Err(e) => rep
                .failures
                .push(format!("{label}: direct solve failed: {e}")),
        }
        check_unitarity(r, tol, &label, &mut rep.failures);
    }
    rep
}

/// Midpoint rule with `n` panels for the Klein-band integral per unit length.
pub fn n3_midpoint(v0: f64, n: usize) -> f64 {
    let kmax = klein_band_kmax(v0, MASS);
    if kmax == 0.0 {
        return 0.0;
    }
    let h = kmax / n as f64;
    let s: f64 = (0..n)
        .map(|i| n3_integrand((i as f64 + 0.5) * h, v0, MASS).unwrap_or(f64::NAN))
        .sum();
    s * h / (2.0 * std::f64::consts::PI)
}

pub fn verify_overlap(records: &[OverlapRecord], tol: f64, seed: u64) -> VerifyReport {
    let mut rep = VerifyReport::default();
    let rel = tol.max(1e-6);
    for i in sample_indices(records.len(), seed) {
        let Ok(r) = &records[i].report else { continue };
        rep.checked += 1;
        let label = format!("row {i} (V0 = {})", r.v0);
        let check = n3_midpoint(r.v0, 200_000);
        if (check - r.n3_per_length).abs() > rel * check.abs().max(1e-12) {
            rep.failures.push(format!(
                "{label}: n3 {} vs midpoint {check}",
                r.n3_per_length
            ));
        }
        if r.total_per_length != r.n2_per_length + r.n3_per_length {
            rep.failures.push(format!("{label}: total is not n2 + n3"));
        }
    }
    rep
}

pub fn verify_massless(records: &[MasslessRecord], tol: f64, seed: u64) -> VerifyReport {
    let mut rep = VerifyReport::default();
    for i in sample_indices(records.len(), seed) {
        let r = &records[i].result;
        rep.checked += 1;
        let label = format!("row {i} (E = {})", records[i].energy);
        // 1 + f = g and 1 - f = g.
        let zero = num_complex::Complex64::new(0.0, 0.0);
        let one = num_complex::Complex64::new(1.0, 0.0);
        if !close(r.f, zero, tol) || !close(r.g, one, tol) {
            rep.failures
                .push(format!("{label}: f = {}, g = {}", r.f, r.g));
        }
        check_unitarity(r, tol, &label, &mut rep.failures);
    }
    rep
}
