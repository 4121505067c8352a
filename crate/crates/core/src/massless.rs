//! The `m = 0` equation `(σ_x p + V) ψ = E ψ`.
//!
//! Eigenstates are `(1, ±1)/√2 e^{ikz}` with `E = V ± k`. The branch fixes the
//! direction of the current whatever the sign of `k`, so a step cannot
//! reflect.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::modes::Spinor2;
use crate::step::ScatteringResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MasslessBranch {
    Plus,
    Minus,
}

impl MasslessBranch {
    pub fn sign(self) -> f64 {
        match self {
            MasslessBranch::Plus => 1.0,
            MasslessBranch::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MasslessState {
    pub branch: MasslessBranch,
    pub k: f64,
    pub potential: f64,
}

impl MasslessState {
    pub fn new(branch: MasslessBranch, k: f64, potential: f64) -> Self {
        MasslessState {
            branch,
            k,
            potential,
        }
    }

    pub fn energy(&self) -> f64 {
        self.potential + self.branch.sign() * self.k
    }

    pub fn spinor(&self) -> Spinor2 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Spinor2::real(h, self.branch.sign() * h)
    }

    /// Residual of `(σ_x k + V - E) χ`; zero for every state.
    pub fn dirac_residual(&self) -> f64 {
        let s = self.spinor();
        let k = Complex64::new(self.k, 0.0);
        let shift = Complex64::new(self.potential - self.energy(), 0.0);
        let upper = k * s.lower + shift * s.upper;
        let lower = k * s.upper + shift * s.lower;
        upper.norm().max(lower.norm())
    }
}

/// `ψ† σ_x ψ / ψ†ψ`: `+1` on the plus branch, `-1` on the minus branch.
pub fn massless_current(state: &MasslessState) -> f64 {
    let s = state.spinor();
    s.current() / s.norm_sqr()
}

/// A right-moving state of energy `E` incident on a step of height `V0`.
///
/// The transmitted momentum is `k' = E - V0`, so `k = V0 + k'`.
pub fn massless_step_scatter(energy: f64, v0: f64) -> Result<ScatteringResult> {
    if !energy.is_finite() || !v0.is_finite() {
        return Err(Error::domain(
            "massless_step_scatter",
            format!("need finite E and V0, got E = {energy}, V0 = {v0}"),
        ));
    }
    let incident = MasslessState::new(MasslessBranch::Plus, energy, 0.0);
    let transmitted = MasslessState::new(MasslessBranch::Plus, energy - v0, v0);
    let reflected = MasslessState::new(MasslessBranch::Minus, -energy, 0.0);

    // 1 + f = g and 1 - f = g from the two spinor components.
    let (a, b, c) = (incident.spinor(), reflected.spinor(), transmitted.spinor());
    let det = -b.upper * c.lower + c.upper * b.lower;
    let f = (-a.upper * -c.lower + c.upper * -a.lower) / det;
    let g = (b.upper * -a.lower - -a.upper * b.lower) / det;
    let j_in = massless_current(&incident);
    Ok(ScatteringResult {
        f,
        g,
        reflection: f.norm_sqr() * -massless_current(&reflected) / j_in,
        transmission: g.norm_sqr() * massless_current(&transmitted) / j_in,
        band: None,
        k_left: incident.k,
        k_right: transmitted.k,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    MasslessDirac,
    GrapheneBand,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    fn of(x: f64) -> Sign {
        if x >= 0.0 {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BandComparisonRow {
    pub model: Model,
    pub energy_sign: Sign,
    pub current_sign: Sign,
}

/// Graphene-like band velocity constant.
const BAND_VELOCITY: f64 = 1.0;

/// Energy/current sign pairs available in each model, one row per pair.
///
/// Dirac rows come from the branch states at `|k| = 1`; graphene rows from
/// `ε = ±v|k|` with group velocity `dε/dk` at `k = ±1`.
pub fn band_comparison() -> Vec<BandComparisonRow> {
    let mut rows = Vec::new();
    for branch in [MasslessBranch::Plus, MasslessBranch::Minus] {
        let s = MasslessState::new(branch, 1.0, 0.0);
        rows.push(BandComparisonRow {
            model: Model::MasslessDirac,
            energy_sign: Sign::of(s.energy()),
            current_sign: Sign::of(massless_current(&s)),
        });
    }
    for band in [1.0, -1.0] {
        for k in [1.0f64, -1.0] {
            let energy = band * BAND_VELOCITY * k.abs();
            let velocity = band * BAND_VELOCITY * k.signum();
            rows.push(BandComparisonRow {
                model: Model::GrapheneBand,
                energy_sign: Sign::of(energy),
                current_sign: Sign::of(velocity),
            });
        }
    }
    rows
}
