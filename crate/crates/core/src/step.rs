//! Scattering off a single potential step of height `V0` at `z = 0`.
//!
//! [`step_scatter`] uses the closed-form amplitudes of each band.
//! [`match_oracle`] solves the continuity condition `ψ_L(0⁻) = ψ_R(0⁺)`
//! numerically from the local spinors and is kept independent of the closed
//! forms so the two can be checked against each other.
//!
//! Conventions: spinors are the unnormalised ones of [`make_spinor`]. In the
//! current-carrying bands and the right-evanescent bands the incident wave
//! comes from the left with unit amplitude, `f` multiplies the reflected wave
//! and `g` the transmitted (or decaying) wave. In the left-evanescent bands
//! the only propagating wave is on the right, so the incident wave is the
//! left-moving `n_{k'}` there, `f` multiplies the outgoing `n_{-k'}` and `g`
//! the evanescent tail on the left.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modes::{
    classify_band, classify_mode, u_of_k, w_of_kappa, BandCase, Direction, EvanescentSign,
    PhysParams, PlaneWave, SegmentMode, Spinor2,
};

/// Reflection and transmission of one scattering state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    pub f: Complex64,
    pub g: Complex64,
    pub reflection: f64,
    pub transmission: f64,
    /// `None` for multi-segment profiles and the massless step.
    pub band: Option<BandCase>,
    pub k_left: f64,
    /// `k'` or `κ` on the right.
    pub k_right: f64,
}

impl ScatteringResult {
    /// Phase `φ` of the reflection amplitude.
    pub fn phase(&self) -> f64 {
        self.f.arg()
    }
}

fn above_gap_ratio(local_energy: f64, mass: f64) -> f64 {
    ((local_energy - mass) / (local_energy + mass)).sqrt()
}

/// `k'` on the right of the step for `E >= V0 + m`.
pub fn kprime_above(energy: f64, v0: f64, mass: f64) -> Result<f64> {
    let eps = energy - v0;
    if !(eps >= mass) {
        return Err(Error::domain(
            "kprime_above",
            format!("need E >= V0 + m, got E = {energy}, V0 = {v0}, m = {mass}"),
        ));
    }
    Ok(((eps - mass) * (eps + mass)).sqrt())
}

/// `k'` of the pulled-up negative-energy wave for `m <= E <= V0 - m`.
pub fn kprime_klein(energy: f64, v0: f64, mass: f64) -> Result<f64> {
    if !(v0 >= 2.0 * mass) || !(energy >= mass) || !(energy <= v0 - mass) {
        return Err(Error::domain(
            "kprime_klein",
            format!("need V0 >= 2m and m <= E <= V0 - m, got E = {energy}, V0 = {v0}, m = {mass}"),
        ));
    }
    let d = v0 - energy;
    Ok(((d - mass) * (d + mass)).sqrt())
}

/// Positive-energy wave on both sides: `(u, u')` are the left and right ratios.
fn same_sign_amplitudes(u: f64, up: f64) -> (Complex64, Complex64, f64, f64) {
    let s = u + up;
    if s == 0.0 {
        // Both sides at rest: identical media.
        return (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), 0.0, 1.0);
    }
    let f = (u - up) / s;
    let g = 2.0 * u / s;
    (f.into(), g.into(), f * f, 4.0 * u * up / (s * s))
}

/// Closed-form scattering off the step for any band except the shared gap.
pub fn step_scatter(energy: f64, v0: f64, mass: f64) -> Result<ScatteringResult> {
    if !(mass > 0.0) || !(v0 >= 0.0) || !energy.is_finite() {
        return Err(Error::domain(
            "step_scatter",
            format!("need m > 0 and V0 >= 0, got m = {mass}, V0 = {v0}, E = {energy}"),
        ));
    }
    let band = classify_band(energy, v0, mass);
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let left = classify_mode(energy, PhysParams::new(mass, 0.0));
    let right = classify_mode(energy, PhysParams::new(mass, v0));
    let result = |f: Complex64, g: Complex64, r: f64, t: f64| ScatteringResult {
        f,
        g,
        reflection: r,
        transmission: t,
        band: Some(band),
        k_left: left.wavenumber,
        k_right: right.wavenumber,
    };
    match band {
        BandCase::AboveStep => {
            // Same formula on both sides so that V0 = 0 gives f = 0 exactly.
            let u = above_gap_ratio(energy, mass);
            let up = above_gap_ratio(energy - v0, mass);
            let (f, g, r, t) = same_sign_amplitudes(u, up);
            Ok(result(f, g, r, t))
        }
        BandCase::FullyNegative => {
            // Mirror image of the above-step band under E -> -E, V0 -> -V0.
            let u = above_gap_ratio(-energy, mass);
            let up = above_gap_ratio(-energy + v0, mass);
            let (f, g, r, t) = same_sign_amplitudes(u, up);
            Ok(result(f, g, r, t))
        }
        BandCase::KleinTransmitting => {
            let u = u_of_k(left.wavenumber, mass)?;
            let up = above_gap_ratio(v0 - energy, mass);
            let p = u * up;
            let f = (p - 1.0) / (p + 1.0);
            let g = 2.0 * u / (p + 1.0);
            Ok(result(
                f.into(),
                g.into(),
                f * f,
                4.0 * p / ((p + 1.0) * (p + 1.0)),
            ))
        }
        BandCase::FullReflectUpper => {
            let u = u_of_k(left.wavenumber, mass)?;
            let w = w_of_kappa(right.wavenumber, mass)?;
            let d = u + i * w;
            Ok(result((u - i * w) / d, 2.0 * u / d, 1.0, 0.0))
        }
        BandCase::FullReflectLower => {
            let u = u_of_k(left.wavenumber, mass)?;
            let w = w_of_kappa(right.wavenumber, mass)?;
            let d = one - i * (w * u);
            Ok(result(-(one + i * (w * u)) / d, 2.0 * u / d, 1.0, 0.0))
        }
        BandCase::EvanLeftTravelRight(sign) => {
            let w = w_of_kappa(left.wavenumber, mass)?;
            let up = above_gap_ratio(v0 - energy, mass);
            let (f, g) = match sign {
                EvanescentSign::Plus => {
                    let d = one + i * (w * up);
                    (-(one - i * (w * up)) / d, -2.0 * up / d)
                }
                EvanescentSign::Minus => {
                    let d = up - i * w;
                    ((up + i * w) / d, 2.0 * up / d)
                }
            };
            Ok(result(f, g, 1.0, 0.0))
        }
        BandCase::GapNoStates => Err(Error::NoStates { energy }),
    }
}

/// A plane wave together with its amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub coeff: Complex64,
    pub wave: PlaneWave,
}

impl Term {
    fn eval(&self, z: f64) -> Spinor2 {
        self.wave.eval(z).scale(self.coeff)
    }
}

/// Numerically matched step eigenstate `Ψ = ψ_L Θ(-z) + ψ_R Θ(z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchedState {
    pub left: Vec<Term>,
    pub right: Vec<Term>,
    pub energy: f64,
    pub band: BandCase,
    incident_left: bool,
}

impl MatchedState {
    pub fn left_coeffs(&self) -> Vec<Complex64> {
        self.left.iter().map(|t| t.coeff).collect()
    }

    pub fn right_coeffs(&self) -> Vec<Complex64> {
        self.right.iter().map(|t| t.coeff).collect()
    }

    /// Amplitude of the reflected wave.
    pub fn f(&self) -> Complex64 {
        if self.incident_left {
            self.left[1].coeff
        } else {
            self.right[1].coeff
        }
    }

    /// Amplitude of the transmitted or evanescent wave.
    pub fn g(&self) -> Complex64 {
        if self.incident_left {
            self.right[0].coeff
        } else {
            self.left[0].coeff
        }
    }

    fn incident(&self) -> &Term {
        if self.incident_left {
            &self.left[0]
        } else {
            &self.right[0]
        }
    }

    fn outgoing(&self) -> (&Term, &Term) {
        if self.incident_left {
            (&self.left[1], &self.right[0])
        } else {
            (&self.right[1], &self.left[0])
        }
    }

    /// `(R, T)` from the currents of the matched waves.
    pub fn coefficients(&self) -> (f64, f64) {
        let j_in = self.incident().eval(0.0).current().abs();
        let (refl, trans) = self.outgoing();
        let r = refl.eval(0.0).current().abs() / j_in;
        let t = if trans.wave.exponent.re == 0.0 {
            trans.eval(0.0).current().abs() / j_in
        } else {
            0.0
        };
        (r, t)
    }

    pub fn eval_left(&self, z: f64) -> Spinor2 {
        self.left
            .iter()
            .fold(Spinor2::zero(), |acc, t| acc + t.eval(z))
    }

    pub fn eval_right(&self, z: f64) -> Spinor2 {
        self.right
            .iter()
            .fold(Spinor2::zero(), |acc, t| acc + t.eval(z))
    }
}

/// Solve the 2×2 continuity system at `z = 0` for `(f, g)` directly.
pub fn match_oracle(energy: f64, v0: f64, mass: f64) -> Result<MatchedState> {
    if !(mass > 0.0) || !(v0 >= 0.0) {
        return Err(Error::domain(
            "match_oracle",
            format!("m = {mass}, V0 = {v0}"),
        ));
    }
    let band = classify_band(energy, v0, mass);
    if band == BandCase::GapNoStates {
        return Err(Error::NoStates { energy });
    }
    let left = classify_mode(energy, PhysParams::new(mass, 0.0));
    let right = classify_mode(energy, PhysParams::new(mass, v0));
    let wave = |m: &SegmentMode, d| PlaneWave::of_mode(m, d);

    // Unknowns (x, y) solve x * a + y * b = c, with a, b, c spinors at z = 0.
    let (incident_left, inc, refl, trans) = if left.kind.is_propagating() {
        (
            true,
            wave(&left, Direction::Forward)?,
            wave(&left, Direction::Backward)?,
            wave(&right, Direction::Forward)?,
        )
    } else {
        (
            false,
            wave(&right, Direction::Backward)?,
            wave(&right, Direction::Forward)?,
            wave(&left, Direction::Backward)?,
        )
    };
    // ψ_L(0) = ψ_R(0) rearranged as  refl·f - trans·g = -inc  (incident left)
    // or  trans·g - refl·f = inc  (incident right); both are the same system.
    let a = refl.spinor;
    let b = trans.spinor.scale(Complex64::new(-1.0, 0.0));
    let c = inc.spinor.scale(Complex64::new(-1.0, 0.0));
    let (f, g) = solve2(a, b, c)?;
    let term = |coeff, wave| Term { coeff, wave };
    let one = Complex64::new(1.0, 0.0);
    let (l, r) = if incident_left {
        (vec![term(one, inc), term(f, refl)], vec![term(g, trans)])
    } else {
        (vec![term(g, trans)], vec![term(one, inc), term(f, refl)])
    };
    Ok(MatchedState {
        left: l,
        right: r,
        energy,
        band,
        incident_left,
    })
}

/// Solve `x a + y b = c` for spinors `a, b, c` by Cramer's rule.
fn solve2(a: Spinor2, b: Spinor2, c: Spinor2) -> Result<(Complex64, Complex64)> {
    let det = a.upper * b.lower - b.upper * a.lower;
    let scale = a.norm_sqr().sqrt() * b.norm_sqr().sqrt();
    if det.norm() <= 1e-14 * scale || scale == 0.0 {
        return Err(Error::Singular);
    }
    let x = (c.upper * b.lower - b.upper * c.lower) / det;
    let y = (a.upper * c.lower - c.upper * a.lower) / det;
    Ok((x, y))
}

/// `Ψ(z)` on a grid: the left solution for `z < 0`, the right one otherwise.
pub fn reconstruct_wavefunction(state: &MatchedState, grid: &[f64]) -> Vec<Spinor2> {
    grid.iter()
        .map(|&z| {
            if z < 0.0 {
                state.eval_left(z)
            } else {
                state.eval_right(z)
            }
        })
        .collect()
}

/// `u u'` across the Klein band; reflection vanishes only where it equals 1.
pub fn klein_uu_product(energy: f64, v0: f64, mass: f64) -> Result<f64> {
    let kp = kprime_klein(energy, v0, mass)?;
    let k = ((energy - mass) * (energy + mass)).sqrt();
    Ok(u_of_k(k, mass)? * u_of_k(kp, mass)?)
}

/// Bisection for the perfect-transmission energy `u u' = 1` in the Klein band.
///
/// The band is scanned for a sign change of `u u' - 1` first; without one the
/// search fails with [`Error::NoRoot`] reporting the largest product seen.
pub fn klein_transparency_point(v0: f64, mass: f64, tol: f64) -> Result<f64> {
    let (lo, hi) = (mass, v0 - mass);
    if !(hi > lo) {
        return Err(Error::domain(
            "klein_transparency_point",
            format!("the Klein band is empty for V0 = {v0}, m = {mass}"),
        ));
    }
    let h = |e: f64| klein_uu_product(e, v0, mass).map(|p| p - 1.0);
    const SCAN: usize = 4096;
    let mut best = f64::NEG_INFINITY;
    let mut prev = (lo, h(lo)?);
    best = best.max(prev.1 + 1.0);
    for j in 1..=SCAN {
        let e = lo + (hi - lo) * j as f64 / SCAN as f64;
        let val = h(e)?;
        best = best.max(val + 1.0);
        if prev.1 == 0.0 {
            return Ok(prev.0);
        }
        if prev.1.signum() != val.signum() {
            let (mut a, mut b, mut fa) = (prev.0, e, prev.1);
            while b - a > tol {
                let mid = 0.5 * (a + b);
                let fm = h(mid)?;
                if fm == 0.0 {
                    return Ok(mid);
                }
                if fm.signum() == fa.signum() {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            return Ok(0.5 * (a + b));
        }
        prev = (e, val);
    }
    Err(Error::NoRoot { max_product: best })
}
