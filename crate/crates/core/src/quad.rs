//! Adaptive Simpson quadrature.

use crate::error::{Error, Result};

/// Intervals narrower than this are accepted as they are.
pub const INTERVAL_FLOOR: f64 = 1e-14;
const MAX_DEPTH: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

/// Integrate `f` over `[a, b]` to absolute tolerance `abs_tol` by recursive
/// bisection with Richardson-corrected Simpson panels.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
) -> Result<Quadrature> {
    if a == b {
        return Ok(Quadrature {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
        });
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut acc = Quadrature {
        value: 0.0,
        error_estimate: 0.0,
        evaluations: 3,
    };
    let mut unresolved = false;
    recurse(
        &f,
        Panel {
            a,
            b,
            fa,
            fm,
            fb,
            whole,
        },
        abs_tol,
        0,
        &mut acc,
        &mut unresolved,
    );
    if !acc.value.is_finite() || (unresolved && acc.error_estimate > abs_tol) {
        return Err(Error::Quadrature {
            estimate: acc.value,
            error: acc.error_estimate,
        });
    }
    Ok(acc)
}

fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    p: Panel,
    tol: f64,
    depth: u32,
    acc: &mut Quadrature,
    unresolved: &mut bool,
) {
    let m = 0.5 * (p.a + p.b);
    let lm = 0.5 * (p.a + m);
    let rm = 0.5 * (m + p.b);
    let flm = f(lm);
    let frm = f(rm);
    acc.evaluations += 2;
    let h = p.b - p.a;
    let left = h / 12.0 * (p.fa + 4.0 * flm + p.fm);
    let right = h / 12.0 * (p.fm + 4.0 * frm + p.fb);
    let delta = left + right - p.whole;
    let err = delta.abs() / 15.0;
    if err <= tol || depth >= MAX_DEPTH || h <= INTERVAL_FLOOR {
        if err > tol {
            *unresolved = true;
        }
        acc.value += left + right + delta / 15.0;
        acc.error_estimate += err;
        return;
    }
    recurse(
        f,
        Panel {
            a: p.a,
            b: m,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole: left,
        },
        0.5 * tol,
        depth + 1,
        acc,
        unresolved,
    );
    recurse(
        f,
        Panel {
            a: m,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
        },
        0.5 * tol,
        depth + 1,
        acc,
        unresolved,
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let q = adaptive_simpson(|x| x * x * x - 2.0 * x + 1.0, -1.0, 2.0, 1e-12).unwrap();
        assert!(
            (q.value - (15.0 / 4.0 - 3.0 + 3.0)).abs() < 1e-13,
            "{}",
            q.value
        );
    }

    #[test]
    fn smooth_transcendental() {
        let q = adaptive_simpson(f64::sin, 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert!((q.value - 2.0).abs() < 1e-11);
        let q = adaptive_simpson(|x| (-x * x).exp(), 0.0, 6.0, 1e-12).unwrap();
        assert!((q.value - 0.5 * std::f64::consts::PI.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn empty_interval() {
        let q = adaptive_simpson(|x| x, 3.0, 3.0, 1e-10).unwrap();
        assert_eq!(q.value, 0.0);
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let r = adaptive_simpson(|x| 1.0 / x, 0.0, 1.0, 1e-10);
        assert!(matches!(r, Err(Error::Quadrature { .. })), "{r:?}");
    }
}
