//! Transfer matrices for piecewise-constant potentials.
//!
//! Every region carries two solutions, written in a common basis
//! `s₁ = (α, β) e^{λz}` and `s₂ = (α, -β) e^{-λz}` where `s₁` is the forward
//! spinor of [`make_spinor`]. Continuity at an interface from a region with
//! `(α, β)` to one with `(α', β')` then reads
//!
//! ```text
//! (A, B)ᵀ = ½ d(α'/α, β'/β) (A', B')ᵀ,    d(a, b) = [[a+b, a-b], [a-b, a+b]]
//! ```
//!
//! and crossing a region of width `w` is `P(-λw) = diag(e^{-λw}, e^{λw})`.
//! The ½ of every interface is folded into the amplitude extraction.

use std::ops::Mul;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result, Side};
use crate::modes::{
    classify_mode, make_spinor, mode_exponent, Direction, PhysParams, SegmentMode, Spinor2,
};
use crate::step::ScatteringResult;

/// Largest `|Re α|` accepted by [`prop_matrix`].
pub const STABILITY_CAP: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix(pub [[Complex64; 2]; 2]);

impl TransferMatrix {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        TransferMatrix([[one, zero], [zero, one]])
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn max_abs_diff(&self, other: &TransferMatrix) -> f64 {
        let mut d = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                d = d.max((self.0[r][c] - other.0[r][c]).norm());
            }
        }
        d
    }
}

impl Mul for TransferMatrix {
    type Output = TransferMatrix;
    fn mul(self, rhs: TransferMatrix) -> TransferMatrix {
        let a = &self.0;
        let b = &rhs.0;
        TransferMatrix([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

/// Discontinuity matrix `[[a+b, a-b], [a-b, a+b]]`, determinant `4ab`.
pub fn disc_matrix(a: Complex64, b: Complex64) -> TransferMatrix {
    TransferMatrix([[a + b, a - b], [a - b, a + b]])
}

/// Propagation matrix `diag(e^α, e^{-α})`.
pub fn prop_matrix(alpha: Complex64) -> Result<TransferMatrix> {
    if !(alpha.re.abs() <= STABILITY_CAP) {
        return Err(Error::Overflow {
            segment: 0,
            exponent: alpha.re.abs(),
            cap: STABILITY_CAP,
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    Ok(TransferMatrix([
        [alpha.exp(), zero],
        [zero, (-alpha).exp()],
    ]))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub width: f64,
    pub potential: f64,
}

/// Finite segments between two semi-infinite leads; the first interface is at `z = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialProfile {
    left_lead: f64,
    segments: Vec<Segment>,
    right_lead: f64,
}

impl PotentialProfile {
    pub fn new(left_lead: f64, segments: Vec<Segment>, right_lead: f64) -> Result<Self> {
        if !left_lead.is_finite() || !right_lead.is_finite() {
            return Err(Error::domain(
                "PotentialProfile",
                "lead potentials must be finite",
            ));
        }
        for (i, s) in segments.iter().enumerate() {
            if !(s.width > 0.0) || !s.width.is_finite() || !s.potential.is_finite() {
                return Err(Error::domain(
                    "PotentialProfile",
                    format!("segment {i}: width must be positive and finite, potential finite"),
                ));
            }
        }
        Ok(PotentialProfile {
            left_lead,
            segments,
            right_lead,
        })
    }

    pub fn step(v0: f64) -> Self {
        PotentialProfile {
            left_lead: 0.0,
            segments: Vec::new(),
            right_lead: v0,
        }
    }

    pub fn left_lead(&self) -> f64 {
        self.left_lead
    }

    pub fn right_lead(&self) -> f64 {
        self.right_lead
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// The same potential seen from the other side.
    pub fn reversed(&self) -> Self {
        PotentialProfile {
            left_lead: self.right_lead,
            segments: self.segments.iter().rev().copied().collect(),
            right_lead: self.left_lead,
        }
    }

    /// Potentials of every region, left lead first.
    fn region_potentials(&self) -> impl Iterator<Item = f64> + '_ {
        std::iter::once(self.left_lead)
            .chain(self.segments.iter().map(|s| s.potential))
            .chain(std::iter::once(self.right_lead))
    }

    /// Interface positions, starting at 0.
    pub fn interfaces(&self) -> Vec<f64> {
        let mut x = vec![0.0];
        for s in &self.segments {
            x.push(x.last().unwrap() + s.width);
        }
        x
    }
}

/// Square barrier of height `height` and width `width` between zero-potential leads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierSpec {
    pub height: f64,
    pub width: f64,
}

impl BarrierSpec {
    pub fn profile(&self) -> Result<PotentialProfile> {
        PotentialProfile::new(
            0.0,
            vec![Segment {
                width: self.width,
                potential: self.height,
            }],
            0.0,
        )
    }
}

/// Forward/backward solutions of one region in the `(α, ±β)` basis.
#[derive(Debug, Clone, Copy)]
struct RegionBasis {
    mode: SegmentMode,
    forward: Spinor2,
    /// `λ` of the forward solution.
    exponent: Complex64,
    /// `make_spinor(Backward) = c · (α, -β)`.
    c: Complex64,
}

impl RegionBasis {
    fn new(energy: f64, potential: f64, mass: f64) -> Result<Self> {
        let mode = classify_mode(energy, PhysParams::new(mass, potential));
        let forward = make_spinor(&mode, Direction::Forward)?;
        let backward = make_spinor(&mode, Direction::Backward)?;
        let c = if forward.upper.norm() >= forward.lower.norm() {
            backward.upper / forward.upper
        } else {
            -backward.lower / forward.lower
        };
        Ok(RegionBasis {
            mode,
            forward,
            exponent: mode_exponent(&mode, Direction::Forward)?,
            c,
        })
    }

    fn is_degenerate(&self) -> bool {
        self.forward.upper.norm() == 0.0 || self.forward.lower.norm() == 0.0
    }
}

fn bases(profile: &PotentialProfile, energy: f64, mass: f64) -> Result<Vec<RegionBasis>> {
    let b: Vec<RegionBasis> = profile
        .region_potentials()
        .map(|v| RegionBasis::new(energy, v, mass))
        .collect::<Result<_>>()?;
    let first = b.first().unwrap();
    let last = b.last().unwrap();
    if !first.mode.kind.is_propagating() {
        return Err(Error::EvanescentLead {
            side: Side::Left,
            energy,
        });
    }
    if !last.mode.kind.is_propagating() {
        return Err(Error::EvanescentLead {
            side: Side::Right,
            energy,
        });
    }
    if first.forward.current() == 0.0 {
        return Err(Error::ZeroIncidentFlux { energy });
    }
    Ok(b)
}

/// Product `d₀₁ P₁ d₁₂ … P_N d_N,N+1` for the profile at `energy`,
/// without the `½` per interface.
pub fn compose_profile(
    profile: &PotentialProfile,
    energy: f64,
    mass: f64,
) -> Result<TransferMatrix> {
    let b = bases(profile, energy, mass)?;
    compose_bases(profile, &b)
}

fn compose_bases(profile: &PotentialProfile, b: &[RegionBasis]) -> Result<TransferMatrix> {
    let mut m = TransferMatrix::identity();
    for (idx, pair) in b.windows(2).enumerate() {
        let (from, to) = (&pair[0], &pair[1]);
        if idx > 0 {
            let seg = &profile.segments[idx - 1];
            let alpha = -from.exponent * seg.width;
            let p = prop_matrix(alpha).map_err(|e| match e {
                Error::Overflow { exponent, cap, .. } => Error::Overflow {
                    segment: idx - 1,
                    exponent,
                    cap,
                },
                other => other,
            })?;
            m = m * p;
        }
        if from.is_degenerate() {
            return Err(Error::DegenerateMode { region: idx });
        }
        let a = to.forward.upper / from.forward.upper;
        let bb = to.forward.lower / from.forward.lower;
        m = m * disc_matrix(a, bb);
    }
    Ok(m)
}

fn finish(f: Complex64, g: Complex64, first: &RegionBasis, last: &RegionBasis) -> ScatteringResult {
    let j_in = first.forward.current();
    ScatteringResult {
        f,
        g,
        reflection: f.norm_sqr(),
        transmission: g.norm_sqr() * last.forward.current() / j_in,
        band: None,
        k_left: first.mode.wavenumber,
        k_right: last.mode.wavenumber,
    }
}

/// Reflection and transmission from the composed transfer matrix.
///
/// `g` is referenced to the last interface; with no segments it is the step
/// amplitude.
pub fn profile_scatter(
    profile: &PotentialProfile,
    energy: f64,
    mass: f64,
) -> Result<ScatteringResult> {
    let b = bases(profile, energy, mass)?;
    let m = compose_bases(profile, &b)?;
    let m11 = m.entry(0, 0);
    if m11.norm() == 0.0 || !m11.is_finite() {
        return Err(Error::Singular);
    }
    let interfaces = (profile.segments.len() + 1) as i32;
    let g = Complex64::new(2f64.powi(interfaces), 0.0) / m11;
    let f = m.entry(1, 0) / m11 / b[0].c;
    Ok(finish(f, g, &b[0], b.last().unwrap()))
}

/// Direct linear solve of the continuity conditions at every interface.
///
/// Each interior solution is referenced to the edge of its region where it is
/// largest in magnitude, so no exponential exceeds one and arbitrarily thick
/// evanescent segments stay finite.
pub fn solve_profile_direct(
    profile: &PotentialProfile,
    energy: f64,
    mass: f64,
) -> Result<ScatteringResult> {
    let b = bases(profile, energy, mass)?;
    let x = profile.interfaces();
    let n_seg = profile.segments.len();
    let n = 2 * n_seg + 2;
    let mut a = DMatrix::<Complex64>::zeros(n, n);
    let mut rhs = DVector::<Complex64>::zeros(n);

    // Unknowns: 0 -> f, 1 + 2(i-1) + {0,1} -> (A_i, B_i) of segment i, n-1 -> g.
    struct Wave {
        spinor: Spinor2,
        exponent: Complex64,
        origin: f64,
    }
    let waves = |region: usize| -> Result<[Wave; 2]> {
        let basis = &b[region];
        let mode = &basis.mode;
        let mut out = Vec::with_capacity(2);
        for dir in [Direction::Forward, Direction::Backward] {
            let lam = mode_exponent(mode, dir)?;
            let origin = if region == 0 {
                0.0
            } else if region == n_seg + 1 {
                x[n_seg]
            } else if lam.re > 0.0 {
                x[region]
            } else {
                x[region - 1]
            };
            out.push(Wave {
                spinor: make_spinor(mode, dir)?,
                exponent: lam,
                origin,
            });
        }
        let bwd = out.pop().unwrap();
        let fwd = out.pop().unwrap();
        Ok([fwd, bwd])
    };

    for (j, &z) in x.iter().enumerate() {
        let row = 2 * j;
        for (region, sign) in [(j, 1.0), (j + 1, -1.0)] {
            let w = waves(region)?;
            for (which, wave) in w.iter().enumerate() {
                let val = wave
                    .spinor
                    .scale((wave.exponent * (z - wave.origin)).exp() * sign);
                let col = if region == 0 {
                    if which == 0 {
                        rhs[row] -= val.upper;
                        rhs[row + 1] -= val.lower;
                        continue;
                    }
                    0
                } else if region == n_seg + 1 {
                    if which == 1 {
                        continue;
                    }
                    n - 1
                } else {
                    1 + 2 * (region - 1) + which
                };
                a[(row, col)] += val.upper;
                a[(row + 1, col)] += val.lower;
            }
        }
    }
    let sol = a.lu().solve(&rhs).ok_or(Error::Singular)?;
    if sol.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular);
    }
    Ok(finish(sol[0], sol[n - 1], &b[0], b.last().unwrap()))
}

/// Transfer-matrix scattering, switching to the direct solve when a segment
/// exceeds the stability cap.
pub fn scatter_profile(
    profile: &PotentialProfile,
    energy: f64,
    mass: f64,
) -> Result<ScatteringResult> {
    match profile_scatter(profile, energy, mass) {
        Err(Error::Overflow { .. }) => solve_profile_direct(profile, energy, mass),
        other => other,
    }
}

/// Square barrier between zero-potential leads, for `E > m`.
pub fn barrier_scatter(spec: &BarrierSpec, energy: f64, mass: f64) -> Result<ScatteringResult> {
    if !(energy > mass) {
        return Err(Error::domain(
            "barrier_scatter",
            format!("need E > m, got E = {energy}, m = {mass}"),
        ));
    }
    scatter_profile(&spec.profile()?, energy, mass)
}
