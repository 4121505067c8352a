//! Sudden-approximation overlaps between free negative-energy states and the
//! positive-energy states of a step of height `V0`.
//!
//! Thermodynamic-limit quantities are per unit length. The finite-box
//! functions quantise momenta as `k = 2πn/L` on each half `(-L, 0)` and
//! `(0, L)` and are meant as checks of those limits.
//!
//! Free states are `n_k(z) = (-u_k, 1) e^{ikz}` with the signed ratio
//! `u_k = k/(m + √(m²+k²))`, and `p_k(z) = (1, u_k) e^{ikz}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modes::{u_of_k, w_of_kappa, BandCase, EvanescentSign};
use crate::quad::adaptive_simpson;
use crate::step::step_scatter;

pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapReport {
    pub v0: f64,
    pub mass: f64,
    pub n2_per_length: f64,
    pub n3_per_length: f64,
    pub intuitive_per_length: f64,
    /// `n2 + n3`; the evanescent contribution does not grow with `L`.
    pub total_per_length: f64,
}

fn check_v0(what: &'static str, v0: f64, mass: f64) -> Result<()> {
    if !(v0 >= 0.0) || !v0.is_finite() || !(mass > 0.0) || !mass.is_finite() {
        return Err(Error::domain(
            what,
            format!("need V0 >= 0 and m > 0, got V0 = {v0}, m = {mass}"),
        ));
    }
    Ok(())
}

/// Number of free states pulled above `-m`, ignoring the boundary, per unit length.
pub fn intuitive_estimate(v0: f64, mass: f64) -> Result<f64> {
    check_v0("intuitive_estimate", v0, mass)?;
    Ok((v0 * (v0 + 2.0 * mass)).sqrt() / (2.0 * PI))
}

pub fn n2_per_length(v0: f64, mass: f64) -> Result<f64> {
    check_v0("n2_per_length", v0, mass)?;
    let upper = (v0 * (v0 + 2.0 * mass)).sqrt();
    let lower = if v0 > 2.0 * mass {
        (v0 * (v0 - 2.0 * mass)).sqrt()
    } else {
        0.0
    };
    Ok((upper - lower) / (4.0 * PI))
}

/// Transmitted momentum `k'` for incident `k` in the Klein band.
fn klein_kprime(k: f64, v0: f64, mass: f64) -> f64 {
    let e = mass.hypot(k);
    ((v0 - e).powi(2) - mass * mass).max(0.0).sqrt()
}

/// Integrand of the Klein-band contribution, `|⟨n|Ψ₃⟩|²` per momentum.
pub fn n3_integrand(k: f64, v0: f64, mass: f64) -> Result<f64> {
    let u = u_of_k(k, mass)?;
    let up = u_of_k(klein_kprime(k, v0, mass), mass)?;
    let u2 = u * u;
    let up2 = up * up;
    Ok(2.0 * u2 * (1.0 + up2) / (u2 * up2 * (3.0 + u2) + (1.0 + 3.0 * u2)))
}

/// Upper end `√(V0(V0-2m))` of the Klein band in incident momentum, or 0.
pub fn klein_band_kmax(v0: f64, mass: f64) -> f64 {
    if v0 > 2.0 * mass {
        (v0 * (v0 - 2.0 * mass)).sqrt()
    } else {
        0.0
    }
}

pub fn n3_per_length(v0: f64, mass: f64, tol: f64) -> Result<f64> {
    check_v0("n3_per_length", v0, mass)?;
    let kmax = klein_band_kmax(v0, mass);
    if kmax == 0.0 {
        return Ok(0.0);
    }
    let q = adaptive_simpson(
        |k| n3_integrand(k, v0, mass).unwrap_or(f64::NAN),
        0.0,
        kmax,
        tol,
    )?;
    Ok(q.value / (2.0 * PI))
}

pub fn overlap_report(v0: f64, mass: f64) -> Result<OverlapReport> {
    overlap_report_with_tol(v0, mass, DEFAULT_TOL)
}

pub fn overlap_report_with_tol(v0: f64, mass: f64, tol: f64) -> Result<OverlapReport> {
    let n2 = n2_per_length(v0, mass)?;
    let n3 = n3_per_length(v0, mass, tol)?;
    Ok(OverlapReport {
        v0,
        mass,
        n2_per_length: n2,
        n3_per_length: n3,
        intuitive_per_length: intuitive_estimate(v0, mass)?,
        total_per_length: n2 + n3,
    })
}

/// Finite box used by the overlap checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteLConfig {
    /// Half-length `L` of the box `(-L, L)`, in units of `1/m`.
    pub length: f64,
    /// Largest `|n|` of free momenta summed in the evanescent case.
    pub max_index: i64,
    /// Free momenta within this many grid steps of an off-grid momentum are summed.
    pub window: i64,
}

impl Default for FiniteLConfig {
    fn default() -> Self {
        FiniteLConfig {
            length: 2000.0,
            max_index: 100_000,
            window: 2048,
        }
    }
}

impl FiniteLConfig {
    pub fn new(length: f64) -> Self {
        FiniteLConfig {
            length,
            ..Default::default()
        }
    }

    /// The same box with length scaled by `factor` and the free-momentum cutoff
    /// scaled with it, so the cutoff momentum stays fixed.
    pub fn scaled(&self, factor: f64) -> Self {
        FiniteLConfig {
            length: self.length * factor,
            max_index: (self.max_index as f64 * factor).round() as i64,
            window: self.window,
        }
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.length
    }

    pub fn momentum(&self, n: i64) -> f64 {
        n as f64 * self.spacing()
    }

    /// Grid index of `k`, or [`Error::OffGrid`].
    pub fn index_of(&self, k: f64) -> Result<i64> {
        let x = k / self.spacing();
        let n = x.round();
        if !x.is_finite() || (x - n).abs() > 1e-9 * n.abs().max(1.0) {
            return Err(Error::OffGrid {
                momentum: k,
                length: self.length,
            });
        }
        Ok(n as i64)
    }

    fn validate(&self) -> Result<()> {
        if !(self.length > 0.0) || !self.length.is_finite() || self.max_index < 1 || self.window < 1
        {
            return Err(Error::domain(
                "FiniteLConfig",
                format!("need L > 0, max_index >= 1, window >= 1, got {self:?}"),
            ));
        }
        Ok(())
    }
}

/// Extensive sum at one box length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteLSum {
    pub total: f64,
    pub length: f64,
    pub states: usize,
}

impl FiniteLSum {
    pub fn per_length(&self) -> f64 {
        self.total / self.length
    }
}

fn signed_u(k: f64, mass: f64) -> f64 {
    k / (mass + mass.hypot(k))
}

/// `∫ e^{i(k₂-k₁)z} dz` over one half of the box for two grid momenta.
fn grid_overlap(n1: i64, n2: i64, length: f64) -> f64 {
    if n1 == n2 {
        length
    } else {
        0.0
    }
}

/// `∫_0^L e^{iqz} dz`.
fn half_box_integral(q: f64, length: f64) -> Complex64 {
    if q == 0.0 {
        return Complex64::new(length, 0.0);
    }
    let i = Complex64::i();
    ((i * q * length).exp() - 1.0) / (i * q)
}

/// Spinor part `(-u₁, 1)†(-u₂, 1)` of `n_{k₁}† n_{k₂}`.
fn nn_spinor(k1: f64, k2: f64, mass: f64) -> f64 {
    signed_u(k1, mass) * signed_u(k2, mass) + 1.0
}

/// `⟨n_{k''}|Ψ₂(k')⟩` for the state whose right half is `n_{k'} + e^{iφ} n_{-k'}`
/// at energy `V0 - √(m²+k'²)` and whose left half is an evanescent tail.
///
/// The free state spans the whole box. Terms of order `1/L` from the tail are
/// dropped, so on-grid this is `½(Δ_{k'',k'} + e^{iφ} Δ_{k'',-k'})`.
pub fn finite_l_matrix_element_case2(
    k_free: f64,
    k_prime: f64,
    cfg: &FiniteLConfig,
    v0: f64,
    mass: f64,
) -> Result<Complex64> {
    cfg.validate()?;
    check_v0("finite_l_matrix_element_case2", v0, mass)?;
    let n_free = cfg.index_of(k_free)?;
    let n_prime = cfg.index_of(k_prime)?;
    let phase = case2_phase(k_prime, v0, mass)?;
    let l = cfg.length;

    let norm_free = 1.0 / (2.0 * l * (1.0 + signed_u(k_free, mass).powi(2))).sqrt();
    let a2 = 1.0 / (2.0 * l * (1.0 + signed_u(k_prime, mass).powi(2))).sqrt();

    let fwd = nn_spinor(k_free, k_prime, mass) * grid_overlap(n_free, n_prime, l);
    let bwd = nn_spinor(k_free, -k_prime, mass) * grid_overlap(n_free, -n_prime, l);
    Ok((Complex64::new(fwd, 0.0) + phase * bwd) * (norm_free * a2))
}

/// `e^{iφ}` of the case-2 state at right-side momentum `k'`.
fn case2_phase(k_prime: f64, v0: f64, mass: f64) -> Result<Complex64> {
    let e = v0 - mass.hypot(k_prime);
    let r = step_scatter(e, v0, mass)?;
    match r.band {
        Some(BandCase::EvanLeftTravelRight(_)) => Ok(r.f),
        _ => Err(Error::domain(
            "case 2 state",
            format!(
                "k' = {k_prime} gives E = {e}, which is not evanescent on the left of V0 = {v0}"
            ),
        )),
    }
}

fn case2_band_contains(k_prime: f64, v0: f64, mass: f64) -> bool {
    let e = v0 - mass.hypot(k_prime);
    matches!(
        crate::modes::classify_band(e, v0, mass),
        BandCase::EvanLeftTravelRight(EvanescentSign::Plus | EvanescentSign::Minus)
    ) && k_prime > 0.0
}

/// Indices within `window` of `n` or `-n`, each once.
fn window_indices(n: i64, window: i64) -> Vec<i64> {
    let n = n.abs();
    if n <= window {
        (-n - window..=n + window).collect()
    } else {
        (-n - window..=-n + window)
            .chain(n - window..=n + window)
            .collect()
    }
}

/// `Σ_{k', k''} |⟨n_{k''}|Ψ₂(k')⟩|²` at finite `L`; grows like `L`.
pub fn case2_finite_sum(cfg: &FiniteLConfig, v0: f64, mass: f64) -> Result<FiniteLSum> {
    cfg.validate()?;
    check_v0("case2_finite_sum", v0, mass)?;
    let kmax = (v0 * (v0 + 2.0 * mass)).sqrt();
    let nmax = (kmax / cfg.spacing()).ceil() as i64;
    let states: Vec<i64> = (1..=nmax)
        .filter(|&n| case2_band_contains(cfg.momentum(n), v0, mass))
        .collect();
    let terms: Vec<f64> = states
        .par_iter()
        .map(|&n| -> Result<f64> {
            let kp = cfg.momentum(n);
            let mut s = 0.0;
            for j in window_indices(n, cfg.window) {
                s += finite_l_matrix_element_case2(cfg.momentum(j), kp, cfg, v0, mass)?.norm_sqr();
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;
    Ok(FiniteLSum {
        total: terms.iter().sum(),
        length: cfg.length,
        states: states.len(),
    })
}

/// `|⟨n_{k''}|Ψ₃(k)⟩|²` summed over free momenta near `-k'`, with free states
/// normalised on the right half only and `k` on the grid.
fn case3_weight(k: f64, cfg: &FiniteLConfig, v0: f64, mass: f64) -> Result<f64> {
    let r = step_scatter(mass.hypot(k), v0, mass)?;
    let kp = r.k_right;
    let l = cfg.length;
    let u = signed_u(k, mass);
    let up = signed_u(kp, mass);
    let norm = l * ((1.0 + u * u) * (1.0 + r.f.norm_sqr()) + r.g.norm_sqr() * (1.0 + up * up));
    let a3 = 1.0 / norm.sqrt();
    let centre = (-kp / cfg.spacing()).round() as i64;
    let mut s = 0.0;
    for j in centre - cfg.window..=centre + cfg.window {
        let kf = cfg.momentum(j);
        let free_norm = 1.0 / (l * (1.0 + signed_u(kf, mass).powi(2))).sqrt();
        let elem = a3 * free_norm * r.g * nn_spinor(kf, -kp, mass) * half_box_integral(-kp - kf, l);
        s += elem.norm_sqr();
    }
    Ok(s)
}

/// `Σ_{k, k''} |⟨n_{k''}|Ψ₃(k)⟩|²` at finite `L` over incident grid momenta in
/// the Klein band; grows like `L`.
pub fn case3_finite_sum(cfg: &FiniteLConfig, v0: f64, mass: f64) -> Result<FiniteLSum> {
    cfg.validate()?;
    check_v0("case3_finite_sum", v0, mass)?;
    let kmax = klein_band_kmax(v0, mass);
    let states: Vec<i64> = (1..).take_while(|&n| cfg.momentum(n) < kmax).collect();
    let terms: Vec<f64> = states
        .par_iter()
        .map(|&n| case3_weight(cfg.momentum(n), cfg, v0, mass))
        .collect::<Result<_>>()?;
    Ok(FiniteLSum {
        total: terms.iter().sum(),
        length: cfg.length,
        states: states.len(),
    })
}

/// A state with energy in `[V0, V0+m)` on the upper side of the gap: free
/// on the left, decaying as `g e^{-κz} (1, iw)` on the right.
#[derive(Debug, Clone, Copy)]
struct Case1State {
    n: i64,
    u: f64,
    kappa: f64,
    w: f64,
    f: Complex64,
    g: Complex64,
    a1: f64,
}

impl Case1State {
    fn new(k: f64, cfg: &FiniteLConfig, v0: f64, mass: f64) -> Result<Self> {
        let n = cfg.index_of(k)?;
        let e = mass.hypot(k);
        let r = step_scatter(e, v0, mass)?;
        if r.band != Some(BandCase::FullReflectUpper) || !(k > 0.0) {
            return Err(Error::domain(
                "case 1 state",
                format!("k = {k} gives E = {e}, outside [V0, V0+m) for V0 = {v0}"),
            ));
        }
        let kappa = r.k_right;
        let w = w_of_kappa(kappa, mass)?;
        let u = signed_u(k, mass);
        let l = cfg.length;
        let left = 2.0 * l * (1.0 + u * u);
        let right = if kappa > 0.0 {
            r.g.norm_sqr() * (1.0 + w * w) * (1.0 - (-2.0 * kappa * l).exp()) / (2.0 * kappa)
        } else {
            r.g.norm_sqr() * (1.0 + w * w) * l
        };
        Ok(Case1State {
            n,
            u,
            kappa,
            w,
            f: r.f,
            g: r.g,
            a1: 1.0 / (left + right).sqrt(),
        })
    }

    /// `⟨n_{k''}|Ψ₁⟩` with `n_{k''}` normalised over the whole box.
    fn free_element(&self, j: i64, cfg: &FiniteLConfig, mass: f64) -> Complex64 {
        let l = cfg.length;
        let kf = cfg.momentum(j);
        let uf = signed_u(kf, mass);
        let free_norm = 1.0 / (2.0 * l * (1.0 + uf * uf)).sqrt();
        // Left half: n_{k''}†p_{±k} has spinor part -u''·1 ± u·1 per matching momentum.
        let left = (-uf + self.u) * grid_overlap(j, self.n, l)
            + self.f * ((-uf - self.u) * grid_overlap(j, -self.n, l));
        let i = Complex64::i();
        let decay = Complex64::new(self.kappa, kf);
        let tail = if decay.norm() == 0.0 {
            Complex64::new(l, 0.0)
        } else {
            (1.0 - (-decay * l).exp()) / decay
        };
        let right = self.g * (-uf + i * self.w) * tail;
        (left + right) * (self.a1 * free_norm)
    }
}

/// `⟨n_{k''}|Ψ₁(k)⟩` for grid momenta `k > 0` (with energy in `[V0, V0+m)`) and `k''`.
pub fn case1_matrix_element(
    k: f64,
    k_free: f64,
    cfg: &FiniteLConfig,
    v0: f64,
    mass: f64,
) -> Result<Complex64> {
    cfg.validate()?;
    check_v0("case1_matrix_element", v0, mass)?;
    let s = Case1State::new(k, cfg, v0, mass)?;
    Ok(s.free_element(cfg.index_of(k_free)?, cfg, mass))
}

/// `Σ_{k, k''} |⟨n_{k''}|Ψ₁(k)⟩|²` over incident grid momenta with energy in
/// `[V0, e_max]`, `e_max < V0 + m`, and free momenta `|n| ≤ max_index`.
///
/// Bounded as `L` grows; compare [`case2_finite_sum`].
pub fn evanescent_overlap_scaling(
    cfg: &FiniteLConfig,
    v0: f64,
    mass: f64,
    e_max: f64,
) -> Result<f64> {
    cfg.validate()?;
    check_v0("evanescent_overlap_scaling", v0, mass)?;
    if !(e_max >= v0 && e_max < v0 + mass) {
        return Err(Error::domain(
            "evanescent_overlap_scaling",
            format!("need V0 <= E < V0 + m, got E = {e_max}, V0 = {v0}"),
        ));
    }
    let kmax = (e_max * e_max - mass * mass).max(0.0).sqrt();
    let states: Vec<i64> = (1..)
        .take_while(|&n| cfg.momentum(n) <= kmax)
        .filter(|&n| mass.hypot(cfg.momentum(n)) >= v0)
        .collect();
    let terms: Vec<f64> = states
        .par_iter()
        .map(|&n| -> Result<f64> {
            let s = Case1State::new(cfg.momentum(n), cfg, v0, mass)?;
            Ok((-cfg.max_index..=cfg.max_index)
                .map(|j| s.free_element(j, cfg, mass).norm_sqr())
                .sum())
        })
        .collect::<Result<_>>()?;
    Ok(terms.iter().sum())
}

/// `⟨Ψ_{k₁}|Ψ_{k₂}⟩` of two upper-gap states split by half of the box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Case1Overlap {
    pub left: Complex64,
    pub right: Complex64,
}

impl Case1Overlap {
    pub fn total(&self) -> Complex64 {
        self.left + self.right
    }
}

pub fn case1_cross_overlap(
    k1: f64,
    k2: f64,
    cfg: &FiniteLConfig,
    v0: f64,
    mass: f64,
) -> Result<Case1Overlap> {
    cfg.validate()?;
    check_v0("case1_cross_overlap", v0, mass)?;
    if k1 != k2 && k1.abs() == k2.abs() {
        return Err(Error::EqualEnergies { k1, k2 });
    }
    let a = Case1State::new(k1, cfg, v0, mass)?;
    let b = Case1State::new(k2, cfg, v0, mass)?;
    let l = cfg.length;
    // p_{±k₁}† p_{±k₂} spinor parts: 1 + (±u₁)(±u₂).
    let pp = |s1: f64, s2: f64| 1.0 + s1 * a.u * s2 * b.u;
    let left = Complex64::new(pp(1.0, 1.0) * grid_overlap(a.n, b.n, l), 0.0)
        + b.f * (pp(1.0, -1.0) * grid_overlap(a.n, -b.n, l))
        + a.f.conj() * (pp(-1.0, 1.0) * grid_overlap(-a.n, b.n, l))
        + a.f.conj() * b.f * (pp(-1.0, -1.0) * grid_overlap(-a.n, -b.n, l));
    let decay = a.kappa + b.kappa;
    let tail = if decay > 0.0 {
        (1.0 - (-decay * l).exp()) / decay
    } else {
        l
    };
    let right = a.g.conj() * b.g * (1.0 + a.w * b.w) * tail;
    let norm = a.a1 * b.a1;
    Ok(Case1Overlap {
        left: left * norm,
        right: right * norm,
    })
}
