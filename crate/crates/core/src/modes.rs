//! Local solutions of the 1-D Dirac equation in a region of constant potential.
//!
//! Units are natural (`c = ħ = 1`) and the rest mass is the only scale. In a
//! region of potential `V` a solution at energy `E` is either a propagating
//! wave with `(E - V)² = m² + k²` or an evanescent one with
//! `(E - V)² = m² - κ²`. Spinors are 2-component and unnormalised: the
//! lower/upper ratio is `u_k` for propagating and `w_κ` for evanescent modes.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Rest mass and local constant potential, both in energy units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysParams {
    pub mass: f64,
    pub potential: f64,
}

impl PhysParams {
    pub fn new(mass: f64, potential: f64) -> Self {
        PhysParams { mass, potential }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeKind {
    PropagatingPositive,
    PropagatingNegative,
    EvanescentPlus,
    EvanescentMinus,
    /// Only produced as a matching outcome, never by [`classify_mode`].
    Forbidden,
}

impl ModeKind {
    pub fn is_propagating(self) -> bool {
        matches!(
            self,
            ModeKind::PropagatingPositive | ModeKind::PropagatingNegative
        )
    }

    pub fn is_evanescent(self) -> bool {
        matches!(self, ModeKind::EvanescentPlus | ModeKind::EvanescentMinus)
    }
}

/// Solution type at one energy in one region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentMode {
    pub kind: ModeKind,
    /// `k` for propagating modes, `κ` for evanescent ones.
    pub wavenumber: f64,
    /// `u_k` for propagating modes, `w_κ` for evanescent ones.
    pub spinor_ratio: f64,
    pub energy: f64,
    pub potential: f64,
}

impl SegmentMode {
    pub fn local_energy(&self) -> f64 {
        self.energy - self.potential
    }
}

/// Classify the local solution at `energy`.
///
/// Energies exactly on a band edge (`|E - V| = m`) are propagating with `k = 0`.
pub fn classify_mode(energy: f64, params: PhysParams) -> SegmentMode {
    let m = params.mass;
    let eps = energy - params.potential;
    let a = eps.abs();
    if a >= m {
        // (|ε| - m)(|ε| + m) avoids cancellation close to the band edge.
        let k = ((a - m) * (a + m)).sqrt();
        let ratio = if m == 0.0 {
            1.0
        } else {
            u_of_k(k, m).expect("k and m are non-negative")
        };
        SegmentMode {
            kind: if eps >= 0.0 {
                ModeKind::PropagatingPositive
            } else {
                ModeKind::PropagatingNegative
            },
            wavenumber: k,
            spinor_ratio: ratio,
            energy,
            potential: params.potential,
        }
    } else {
        let kappa = ((m - a) * (m + a)).sqrt().min(m);
        SegmentMode {
            kind: if eps >= 0.0 {
                ModeKind::EvanescentPlus
            } else {
                ModeKind::EvanescentMinus
            },
            wavenumber: kappa,
            spinor_ratio: w_of_kappa(kappa, m).expect("kappa is within [0, m]"),
            energy,
            potential: params.potential,
        }
    }
}

/// `u_k = k / (m + √(m² + k²))`, the spinor ratio of a propagating mode.
pub fn u_of_k(k: f64, mass: f64) -> Result<f64> {
    if !(k >= 0.0) || !(mass >= 0.0) {
        return Err(Error::domain("u_of_k", format!("k = {k}, m = {mass}")));
    }
    if k == 0.0 && mass == 0.0 {
        return Err(Error::domain("u_of_k", "k and m are both zero"));
    }
    Ok(k / (mass + mass.hypot(k)))
}

/// `w_κ = κ / (m + √(m² - κ²))`, the spinor ratio of an evanescent mode.
pub fn w_of_kappa(kappa: f64, mass: f64) -> Result<f64> {
    if !(kappa >= 0.0) || !(kappa <= mass) {
        return Err(Error::domain(
            "w_of_kappa",
            format!("need 0 <= kappa <= m, got kappa = {kappa}, m = {mass}"),
        ));
    }
    Ok(kappa / (mass + ((mass - kappa) * (mass + kappa)).sqrt()))
}

/// Probability current `2u / (1 + u²)` of the unit-normalised spinor `(1, u)`.
pub fn current_of_u(u: f64) -> f64 {
    2.0 * u / (1.0 + u * u)
}

/// Column spinor `(upper, lower)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor2 {
    pub upper: Complex64,
    pub lower: Complex64,
}

impl Spinor2 {
    pub fn new(upper: Complex64, lower: Complex64) -> Self {
        Spinor2 { upper, lower }
    }

    pub fn real(upper: f64, lower: f64) -> Self {
        Spinor2::new(Complex64::new(upper, 0.0), Complex64::new(lower, 0.0))
    }

    pub fn zero() -> Self {
        Spinor2::real(0.0, 0.0)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.upper.norm_sqr() + self.lower.norm_sqr()
    }

    /// `self† other`
    pub fn inner(&self, other: &Spinor2) -> Complex64 {
        self.upper.conj() * other.upper + self.lower.conj() * other.lower
    }

    /// Probability current `ψ† σ_x ψ` of this spinor.
    pub fn current(&self) -> f64 {
        2.0 * (self.upper.conj() * self.lower).re
    }

    pub fn scale(&self, c: Complex64) -> Spinor2 {
        Spinor2::new(self.upper * c, self.lower * c)
    }

    pub fn is_finite(&self) -> bool {
        self.upper.is_finite() && self.lower.is_finite()
    }
}

impl std::ops::Add for Spinor2 {
    type Output = Spinor2;
    fn add(self, rhs: Spinor2) -> Spinor2 {
        Spinor2::new(self.upper + rhs.upper, self.lower + rhs.lower)
    }
}

impl std::ops::Sub for Spinor2 {
    type Output = Spinor2;
    fn sub(self, rhs: Spinor2) -> Spinor2 {
        Spinor2::new(self.upper - rhs.upper, self.lower - rhs.lower)
    }
}

/// Which of the two solutions of a region is meant.
///
/// `Forward` is the wave carrying current in `+z` (propagating) or decaying
/// towards `+z` (evanescent). `Backward` is the other one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        }
    }
}

/// Unnormalised spinor of `mode` travelling (or decaying) in `direction`.
///
/// Positive energy: `(1, ±u)`; negative energy: `(u, 1)` forward and
/// `(-u, 1)` backward; evanescent plus: `(1, ±i w)`; evanescent minus:
/// `(∓i w, 1)`.
pub fn make_spinor(mode: &SegmentMode, direction: Direction) -> Result<Spinor2> {
    let r = mode.spinor_ratio;
    let s = direction.sign();
    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    Ok(match mode.kind {
        ModeKind::PropagatingPositive => Spinor2::real(1.0, s * r),
        ModeKind::PropagatingNegative => Spinor2::real(s * r, 1.0),
        ModeKind::EvanescentPlus => Spinor2::new(one, i * (s * r)),
        ModeKind::EvanescentMinus => Spinor2::new(-i * (s * r), one),
        ModeKind::Forbidden => return Err(Error::ForbiddenMode),
    })
}

/// Exponent `λ` of the spatial factor `e^{λz}` that goes with [`make_spinor`].
pub fn mode_exponent(mode: &SegmentMode, direction: Direction) -> Result<Complex64> {
    let q = mode.wavenumber;
    let s = direction.sign();
    Ok(match mode.kind {
        ModeKind::PropagatingPositive => Complex64::new(0.0, s * q),
        ModeKind::PropagatingNegative => Complex64::new(0.0, -s * q),
        ModeKind::EvanescentPlus | ModeKind::EvanescentMinus => Complex64::new(-s * q, 0.0),
        ModeKind::Forbidden => return Err(Error::ForbiddenMode),
    })
}

/// A spinor times `e^{λ (z - origin)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub spinor: Spinor2,
    pub exponent: Complex64,
    pub origin: f64,
}

impl PlaneWave {
    pub fn of_mode(mode: &SegmentMode, direction: Direction) -> Result<Self> {
        Ok(PlaneWave {
            spinor: make_spinor(mode, direction)?,
            exponent: mode_exponent(mode, direction)?,
            origin: 0.0,
        })
    }

    pub fn with_origin(self, origin: f64) -> Self {
        PlaneWave { origin, ..self }
    }

    pub fn eval(&self, z: f64) -> Spinor2 {
        self.spinor.scale((self.exponent * (z - self.origin)).exp())
    }
}

/// Sign of `E - V` inside an evanescent region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvanescentSign {
    Plus,
    Minus,
}

/// Energy band of a single step of height `V0 >= 0` at the origin.
///
/// The variants are the energy bands of a small step (`V0 < 2m`) and a
/// large one; see [`BandCase::regime_row`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BandCase {
    /// Propagating positive-energy waves on both sides.
    AboveStep,
    /// Left propagating, right evanescent with `E >= V0`.
    FullReflectUpper,
    /// Left propagating, right evanescent with `E < V0`.
    FullReflectLower,
    /// Positive energy on the left, a pulled-up negative-energy wave on the right.
    KleinTransmitting,
    /// Both sides inside their mass gaps.
    GapNoStates,
    /// Left evanescent, right propagating negative energy.
    EvanLeftTravelRight(EvanescentSign),
    /// Negative energy on both sides.
    FullyNegative,
}

impl BandCase {
    /// Both sides carry current.
    pub fn is_transmitting(self) -> bool {
        matches!(
            self,
            BandCase::AboveStep | BandCase::KleinTransmitting | BandCase::FullyNegative
        )
    }

    pub fn is_full_reflection(self) -> bool {
        matches!(
            self,
            BandCase::FullReflectUpper
                | BandCase::FullReflectLower
                | BandCase::EvanLeftTravelRight(_)
        )
    }

    /// `(regime, row)` with regime 1 for a small step `V0 < 2m` and 2
    /// otherwise, bands counted from the top (highest energy). For a small
    /// step the two full-reflection tags share band 2 and the two
    /// evanescent-left tags share band 4. Row 0 means the tag cannot occur.
    pub fn regime_row(self, v0: f64, mass: f64) -> (u8, u8) {
        if v0 < 2.0 * mass {
            let row = match self {
                BandCase::AboveStep => 1,
                BandCase::FullReflectUpper | BandCase::FullReflectLower => 2,
                BandCase::GapNoStates => 3,
                BandCase::EvanLeftTravelRight(_) => 4,
                BandCase::FullyNegative => 5,
                // Needs V0 >= 2m.
                BandCase::KleinTransmitting => 0,
            };
            (1, row)
        } else {
            let row = match self {
                BandCase::AboveStep => 1,
                BandCase::FullReflectUpper => 2,
                BandCase::FullReflectLower => 3,
                BandCase::KleinTransmitting => 4,
                BandCase::EvanLeftTravelRight(EvanescentSign::Plus) => 5,
                BandCase::EvanLeftTravelRight(EvanescentSign::Minus) => 6,
                BandCase::FullyNegative => 7,
                BandCase::GapNoStates => 0,
            };
            (2, row)
        }
    }

    /// Stable snake_case tag used in CSV output.
    pub fn tag(self) -> &'static str {
        match self {
            BandCase::AboveStep => "above_step",
            BandCase::FullReflectUpper => "full_reflect_upper",
            BandCase::FullReflectLower => "full_reflect_lower",
            BandCase::KleinTransmitting => "klein_transmitting",
            BandCase::GapNoStates => "gap_no_states",
            BandCase::EvanLeftTravelRight(EvanescentSign::Plus) => "evanescent_left_plus",
            BandCase::EvanLeftTravelRight(EvanescentSign::Minus) => "evanescent_left_minus",
            BandCase::FullyNegative => "fully_negative",
        }
    }
}

impl std::fmt::Display for BandCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Band of energy `energy` for a step from `0` (left) to `v0` (right).
pub fn classify_band(energy: f64, v0: f64, mass: f64) -> BandCase {
    let left = classify_mode(energy, PhysParams::new(mass, 0.0));
    let right = classify_mode(energy, PhysParams::new(mass, v0));
    use ModeKind::*;
    match (left.kind, right.kind) {
        (PropagatingPositive, PropagatingPositive) => BandCase::AboveStep,
        (PropagatingPositive, PropagatingNegative) => BandCase::KleinTransmitting,
        (PropagatingNegative, PropagatingNegative) => BandCase::FullyNegative,
        (PropagatingPositive | PropagatingNegative, EvanescentPlus) => BandCase::FullReflectUpper,
        (PropagatingPositive | PropagatingNegative, EvanescentMinus) => BandCase::FullReflectLower,
        (EvanescentPlus, PropagatingNegative | PropagatingPositive) => {
            BandCase::EvanLeftTravelRight(EvanescentSign::Plus)
        }
        (EvanescentMinus, PropagatingNegative | PropagatingPositive) => {
            BandCase::EvanLeftTravelRight(EvanescentSign::Minus)
        }
        (EvanescentPlus | EvanescentMinus, EvanescentPlus | EvanescentMinus) => {
            BandCase::GapNoStates
        }
        // Negative on the left with positive on the right needs V0 < 0.
        (PropagatingNegative, PropagatingPositive) => BandCase::FullyNegative,
        (Forbidden, _) | (_, Forbidden) => unreachable!("classify_mode never yields Forbidden"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn classify_examples() {
        let m = classify_mode(2.0, PhysParams::new(1.0, 0.0));
        assert_eq!(m.kind, ModeKind::PropagatingPositive);
        assert_relative_eq!(m.wavenumber, 3f64.sqrt(), epsilon = 1e-15);

        let m = classify_mode(0.5, PhysParams::new(1.0, 0.0));
        assert_eq!(m.kind, ModeKind::EvanescentPlus);
        assert_relative_eq!(m.wavenumber, 0.75f64.sqrt(), epsilon = 1e-15);

        let m = classify_mode(1.5, PhysParams::new(1.0, 8.0));
        assert_eq!(m.kind, ModeKind::PropagatingNegative);
        let eps: f64 = 1.5 - 8.0;
        assert_relative_eq!(
            eps * eps - m.wavenumber * m.wavenumber,
            1.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(m.wavenumber, (6.5f64 * 6.5 - 1.0).sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn band_edge_is_propagating_at_rest() {
        let m = classify_mode(4.0, PhysParams::new(1.0, 3.0));
        assert_eq!(m.kind, ModeKind::PropagatingPositive);
        assert_eq!(m.wavenumber, 0.0);
        assert_eq!(m.spinor_ratio, 0.0);
    }

    #[test]
    fn u_examples() {
        assert_eq!(u_of_k(0.0, 1.0).unwrap(), 0.0);
        assert_relative_eq!(
            u_of_k(1.0, 1.0).unwrap(),
            1.0 / (1.0 + 2f64.sqrt()),
            epsilon = 1e-15
        );
        assert_relative_eq!(u_of_k(1.0, 1.0).unwrap(), 0.4142136, epsilon = 1e-7);
        // u = 1 - m/k + O(1/k²) for k >> m.
        let u = u_of_k(1e6, 1.0).unwrap();
        assert!((u - (1.0 - 1e-6)).abs() < 1e-12, "{u}");
        assert!(u_of_k(-1.0, 1.0).is_err());
        assert!(u_of_k(0.0, 0.0).is_err());
    }

    #[test]
    fn w_examples() {
        assert_eq!(w_of_kappa(0.0, 1.0).unwrap(), 0.0);
        assert_eq!(w_of_kappa(1.0, 1.0).unwrap(), 1.0);
        assert_relative_eq!(w_of_kappa(0.6, 1.0).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        assert!(w_of_kappa(1.1, 1.0).is_err());
    }

    #[test]
    fn current_examples() {
        assert_eq!(current_of_u(0.0), 0.0);
        assert_eq!(current_of_u(1.0), 1.0);
        let u = u_of_k(1.0, 1.0).unwrap();
        assert_relative_eq!(current_of_u(u), 1.0 / 2f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn spinor_examples() {
        let rest = classify_mode(1.0, PhysParams::new(1.0, 0.0));
        assert_eq!(
            make_spinor(&rest, Direction::Forward).unwrap(),
            Spinor2::real(1.0, 0.0)
        );
        let rest_neg = classify_mode(-1.0, PhysParams::new(1.0, 0.0));
        assert_eq!(
            make_spinor(&rest_neg, Direction::Forward).unwrap(),
            Spinor2::real(0.0, 1.0)
        );
        let ev = SegmentMode {
            kind: ModeKind::EvanescentPlus,
            wavenumber: 0.6,
            spinor_ratio: 1.0 / 3.0,
            energy: 0.8,
            potential: 0.0,
        };
        let s = make_spinor(&ev, Direction::Forward).unwrap();
        assert_eq!(s.upper, Complex64::new(1.0, 0.0));
        assert_relative_eq!(s.lower.im, 1.0 / 3.0);
        assert_eq!(s.lower.re, 0.0);
        let forbidden = SegmentMode {
            kind: ModeKind::Forbidden,
            ..ev
        };
        assert_eq!(
            make_spinor(&forbidden, Direction::Forward),
            Err(Error::ForbiddenMode)
        );
    }

    /// Each spinor/exponent pair must solve `(σ_x p + σ_z m + V) ψ = E ψ`
    /// with `p = -i d/dz`, and forward propagating waves carry positive current.
    #[test]
    fn spinors_solve_the_local_equation() {
        for &(e, v) in &[
            (2.5, 0.0),
            (-2.5, 0.0),
            (0.3, 0.0),
            (-0.3, 0.0),
            (1.5, 8.0),
            (3.1, 3.0),
        ] {
            let mode = classify_mode(e, PhysParams::new(1.0, v));
            for dir in [Direction::Forward, Direction::Backward] {
                let s = make_spinor(&mode, dir).unwrap();
                let lam = mode_exponent(&mode, dir).unwrap();
                let p = -Complex64::i() * lam;
                let eps = e - v;
                let r1 = s.upper * 1.0 + p * s.lower - eps * s.upper;
                let r2 = p * s.upper - s.lower * 1.0 - eps * s.lower;
                assert!(r1.norm() < 1e-12 && r2.norm() < 1e-12, "{e} {v} {dir:?}");
                if mode.kind.is_propagating() {
                    assert!(s.current() * dir.sign() > 0.0);
                }
            }
        }
    }

    #[test]
    fn band_examples() {
        assert_eq!(classify_band(5.0, 3.0, 1.0), BandCase::AboveStep);
        assert_eq!(classify_band(0.5, 1.0, 1.0), BandCase::GapNoStates);
        assert_eq!(classify_band(1.5, 8.0, 1.0), BandCase::KleinTransmitting);
        assert_eq!(classify_band(1.5, 8.0, 1.0).regime_row(8.0, 1.0), (2, 4));
        assert_eq!(classify_band(0.5, 1.0, 1.0).regime_row(1.0, 1.0), (1, 3));
        assert_eq!(classify_band(8.5, 8.0, 1.0), BandCase::FullReflectUpper);
        assert_eq!(classify_band(7.5, 8.0, 1.0), BandCase::FullReflectLower);
        assert_eq!(
            classify_band(0.5, 8.0, 1.0),
            BandCase::EvanLeftTravelRight(EvanescentSign::Plus)
        );
        assert_eq!(
            classify_band(-0.5, 8.0, 1.0),
            BandCase::EvanLeftTravelRight(EvanescentSign::Minus)
        );
        assert_eq!(classify_band(-1.5, 8.0, 1.0), BandCase::FullyNegative);
    }

    #[test]
    fn band_edges_follow_tie_break() {
        // E = V0 + m, E = V0 - m and E = ±m are all propagating on the edge side.
        assert_eq!(classify_band(4.0, 3.0, 1.0), BandCase::AboveStep);
        assert_eq!(classify_band(2.0, 3.0, 1.0), BandCase::KleinTransmitting);
        assert_eq!(classify_band(1.0, 3.0, 1.0), BandCase::KleinTransmitting);
        assert_eq!(classify_band(1.0, 1.0, 1.0), BandCase::FullReflectUpper);
        assert_eq!(classify_band(-1.0, 1.0, 1.0), BandCase::FullyNegative);
    }

    /// Box-grid orthogonality: on `k = 2πn/L` the discrete inner products of
    /// spinor plane waves over `[0, L)` reproduce the Kronecker delta, and
    /// positive- and negative-energy waves are orthogonal.
    #[test]
    fn plane_waves_are_orthonormal_on_box_grid() {
        let length = 50.0;
        let n_pts = 4096;
        let h = length / n_pts as f64;
        let mode_at = |n: i64, positive: bool| {
            let k = 2.0 * std::f64::consts::PI * n as f64 / length;
            let u = u_of_k(k.abs(), 1.0).unwrap() * k.signum();
            let norm = 1.0 / (length * (1.0 + u * u)).sqrt();
            let spinor = if positive {
                Spinor2::real(norm, norm * u)
            } else {
                Spinor2::real(-norm * u, norm)
            };
            PlaneWave {
                spinor,
                exponent: Complex64::new(0.0, k),
                origin: 0.0,
            }
        };
        let inner = |a: &PlaneWave, b: &PlaneWave| -> Complex64 {
            (0..n_pts)
                .map(|j| {
                    let z = j as f64 * h;
                    a.eval(z).inner(&b.eval(z))
                })
                .sum::<Complex64>()
                * h
        };
        for &(n1, n2) in &[(3, 3), (3, 4), (-2, 5), (7, -7), (0, 1)] {
            let pp = inner(&mode_at(n1, true), &mode_at(n2, true));
            let nn = inner(&mode_at(n1, false), &mode_at(n2, false));
            let expected = if n1 == n2 { 1.0 } else { 0.0 };
            assert!((pp - expected).norm() < 1e-12, "{n1} {n2} {pp}");
            assert!((nn - expected).norm() < 1e-12, "{n1} {n2} {nn}");
            if n1 == n2 {
                let np = inner(&mode_at(n1, false), &mode_at(n2, true));
                assert!(np.norm() < 1e-12, "{np}");
            }
        }
    }

    proptest! {
        #[test]
        fn dispersion_closes(e in -20.0f64..20.0, v in -10.0f64..10.0, m in 0.01f64..5.0) {
            let mode = classify_mode(e, PhysParams::new(m, v));
            let eps = e - v;
            let q2 = mode.wavenumber * mode.wavenumber;
            let lhs = if mode.kind.is_propagating() { eps * eps - q2 } else { eps * eps + q2 };
            prop_assert!((lhs - m * m).abs() <= 1e-12 * (eps * eps).max(m * m));
            prop_assert!((0.0..=1.0).contains(&mode.spinor_ratio));
            if mode.kind.is_evanescent() {
                prop_assert!(mode.wavenumber <= m);
            }
        }

        #[test]
        fn ratios_are_monotone(m in 0.1f64..5.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assert!(u_of_k(lo * 50.0, m).unwrap() <= u_of_k(hi * 50.0, m).unwrap());
            prop_assert!(w_of_kappa(lo * m, m).unwrap() <= w_of_kappa(hi * m, m).unwrap());
            prop_assert!(u_of_k(hi * 50.0, m).unwrap() < 1.0);
        }

        #[test]
        fn bands_tile_the_energy_line(e in -30.0f64..30.0, v0 in 0.0f64..15.0, m in 0.1f64..3.0) {
            let band = classify_band(e, v0, m);
            let (regime, row) = band.regime_row(v0, m);
            prop_assert!(row > 0, "{band:?} not a band of regime {regime}");
            // Exactly one row's energy interval contains e (edges shared).
            let left_prop = e.abs() >= m;
            let right_prop = (e - v0).abs() >= m;
            prop_assert_eq!(band == BandCase::GapNoStates, !left_prop && !right_prop);
            prop_assert_eq!(band.is_transmitting(), left_prop && right_prop);
        }
    }
}
