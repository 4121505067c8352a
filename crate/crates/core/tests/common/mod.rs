//! Brute-force reference solutions shared by the integration tests.
//!
//! Nothing here calls into the library's solvers: local solutions are taken
//! as null vectors of the 2×2 Dirac operator, directions are told apart by
//! the sign of their current, and matching systems are solved by plain
//! Gaussian elimination.
#![allow(dead_code, clippy::needless_range_loop)]

use num_complex::Complex64 as C;

pub fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// One local solution `χ e^{λz}`.
#[derive(Debug, Clone, Copy)]
pub struct LocalWave {
    pub upper: C,
    pub lower: C,
    pub lambda: C,
}

impl LocalWave {
    pub fn current(&self) -> f64 {
        2.0 * (self.upper.conj() * self.lower).re
    }

    pub fn at(&self, z: f64, origin: f64) -> (C, C) {
        let e = (self.lambda * (z - origin)).exp();
        (self.upper * e, self.lower * e)
    }
}

/// Null vector of `[[m-ε, -iλ], [-iλ, -m-ε]]`, with the upper component set
/// to 1 for `ε >= 0` and the lower one for `ε < 0`.
pub fn kernel_spinor(eps: f64, lambda: C, m: f64) -> (C, C) {
    let i = C::i();
    let a = (i * lambda, c(m - eps));
    let b = (c(m + eps), -i * lambda);
    let (u, l) = if a.0.norm_sqr() + a.1.norm_sqr() >= b.0.norm_sqr() + b.1.norm_sqr() {
        a
    } else {
        b
    };
    if eps >= 0.0 {
        (c(1.0), l / u)
    } else {
        (u / l, c(1.0))
    }
}

/// Forward and backward solutions of a region with local energy `ε`.
///
/// Forward carries positive current when propagating and decays towards
/// `+z` when evanescent.
pub fn local_waves(eps: f64, m: f64) -> (LocalWave, LocalWave) {
    let mk = |lambda: C| {
        let (upper, lower) = kernel_spinor(eps, lambda, m);
        LocalWave {
            upper,
            lower,
            lambda,
        }
    };
    if eps.abs() >= m {
        let q = (eps * eps - m * m).sqrt();
        let a = mk(C::new(0.0, q));
        let b = mk(C::new(0.0, -q));
        if a.current() >= b.current() {
            (a, b)
        } else {
            (b, a)
        }
    } else {
        let kappa = (m * m - eps * eps).sqrt();
        (mk(c(-kappa)), mk(c(kappa)))
    }
}

pub fn is_propagating(eps: f64, m: f64) -> bool {
    eps.abs() >= m
}

/// Solve `A x = b` by Gaussian elimination with partial pivoting.
pub fn gauss_solve(mut a: Vec<Vec<C>>, mut b: Vec<C>) -> Option<Vec<C>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[piv][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            if factor == c(0.0) {
                continue;
            }
            for k in col..n {
                let sub = factor * a[col][k];
                a[row][k] -= sub;
            }
            let sub = factor * b[col];
            b[row] -= sub;
        }
    }
    let mut x = vec![c(0.0); n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

#[derive(Debug, Clone, Copy)]
pub struct OracleResult {
    pub f: C,
    pub g: C,
    pub r: f64,
    pub t: f64,
}

/// Single step at the origin. When the left side is propagating the incident
/// wave comes from the left; otherwise it comes from the right, `f` is the
/// outgoing right-side amplitude and `g` the left tail.
pub fn step(e: f64, v0: f64, m: f64) -> Option<OracleResult> {
    let (lf, lb) = local_waves(e, m);
    let (rf, rb) = local_waves(e - v0, m);
    let left_prop = is_propagating(e, m);
    let right_prop = is_propagating(e - v0, m);
    let (inc, refl, trans) = if left_prop {
        (lf, lb, rf)
    } else if right_prop {
        (rb, rf, lb)
    } else {
        return None;
    };
    // inc + f·refl = g·trans at z = 0 (all three on the same footing).
    let a = vec![
        vec![refl.upper, -trans.upper],
        vec![refl.lower, -trans.lower],
    ];
    let x = gauss_solve(a, vec![-inc.upper, -inc.lower])?;
    let j_in = inc.current().abs();
    let r = x[0].norm_sqr() * refl.current().abs() / j_in;
    let t = if trans.lambda.re == 0.0 {
        x[1].norm_sqr() * trans.current().abs() / j_in
    } else {
        0.0
    };
    Some(OracleResult {
        f: x[0],
        g: x[1],
        r,
        t,
    })
}

/// Multi-interface solve. `potentials` lists every region, leads included;
/// `widths` the interior widths. Interior solutions are referenced to the
/// region edge where they are largest, the right lead to the last interface.
pub fn profile(potentials: &[f64], widths: &[f64], e: f64, m: f64) -> Option<OracleResult> {
    let n_seg = widths.len();
    assert_eq!(potentials.len(), n_seg + 2);
    let mut x = vec![0.0];
    for w in widths {
        x.push(x.last().unwrap() + w);
    }
    let waves: Vec<(LocalWave, LocalWave)> =
        potentials.iter().map(|&v| local_waves(e - v, m)).collect();
    let origin = |region: usize, w: &LocalWave| -> f64 {
        if region == 0 {
            0.0
        } else if region == n_seg + 1 {
            x[n_seg]
        } else if w.lambda.re > 0.0 {
            x[region]
        } else {
            x[region - 1]
        }
    };
    let n = 2 * n_seg + 2;
    let mut a = vec![vec![c(0.0); n]; n];
    let mut b = vec![c(0.0); n];
    for (j, &z) in x.iter().enumerate() {
        let row = 2 * j;
        for (region, sign) in [(j, 1.0), (j + 1, -1.0)] {
            let (fw, bw) = waves[region];
            for (which, w) in [fw, bw].iter().enumerate() {
                let (u, l) = w.at(z, origin(region, w));
                let (u, l) = (u * sign, l * sign);
                let col = if region == 0 {
                    if which == 0 {
                        b[row] -= u;
                        b[row + 1] -= l;
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
                a[row][col] += u;
                a[row + 1][col] += l;
            }
        }
    }
    let sol = gauss_solve(a, b)?;
    let (lf, lb) = waves[0];
    let (rf, _) = waves[n_seg + 1];
    let j_in = lf.current();
    Some(OracleResult {
        f: sol[0],
        g: sol[n - 1],
        r: sol[0].norm_sqr() * -lb.current() / j_in,
        t: sol[n - 1].norm_sqr() * rf.current() / j_in,
    })
}

fn ratio(k: f64, m: f64) -> f64 {
    k / (m + (m * m + k * k).sqrt())
}

/// Klein-band overlap density at incident momentum `k`.
pub fn n3_density(k: f64, v0: f64, m: f64) -> f64 {
    let e = (m * m + k * k).sqrt();
    let kp = ((v0 - e).powi(2) - m * m).max(0.0).sqrt();
    let u = ratio(k, m);
    let up = ratio(kp, m);
    2.0 * u * u * (1.0 + up * up) / (u * u * up * up * (3.0 + u * u) + 1.0 + 3.0 * u * u)
}

/// Midpoint sum of the Klein-band overlap per unit length.
pub fn n3_riemann(v0: f64, m: f64, n: usize) -> f64 {
    if v0 <= 2.0 * m {
        return 0.0;
    }
    let kmax = (v0 * (v0 - 2.0 * m)).sqrt();
    let h = kmax / n as f64;
    let mut s = 0.0;
    for i in 0..n {
        s += n3_density((i as f64 + 0.5) * h, v0, m);
    }
    s * h / (2.0 * std::f64::consts::PI)
}

/// `∫_a^b e^{iqz} dz`.
pub fn exp_integral(q: f64, a: f64, b: f64) -> C {
    if q == 0.0 {
        return c(b - a);
    }
    let i = C::i();
    ((i * q * b).exp() - (i * q * a).exp()) / (i * q)
}

/// Free negative-energy spinor for momentum `k`, from the kernel.
pub fn free_negative(k: f64, m: f64) -> (C, C) {
    let e = -(m * m + k * k).sqrt();
    kernel_spinor(e, C::new(0.0, k), m)
}

fn spinor_dot(a: (C, C), b: (C, C)) -> C {
    a.0.conj() * b.0 + a.1.conj() * b.1
}

fn spinor_norm2(a: (C, C)) -> f64 {
    a.0.norm_sqr() + a.1.norm_sqr()
}

/// Finite-box sum for the states whose right half is `n_{k'} + e^{iφ} n_{-k'}`
/// and whose left half is evanescent, with free states over the whole box.
/// Returns the total over `k' > 0` and free momenta within `window` steps of `±k'`.
pub fn case2_sum(l: f64, v0: f64, m: f64, window: i64) -> f64 {
    let dk = 2.0 * std::f64::consts::PI / l;
    let mut total = 0.0;
    let mut n = 1i64;
    loop {
        let kp = n as f64 * dk;
        let e = v0 - (m * m + kp * kp).sqrt();
        if e < -m {
            break;
        }
        n += 1;
        if e.abs() >= m {
            continue;
        }
        let Some(s) = step(e, v0, m) else { continue };
        let inc = free_negative(kp, m);
        let out = free_negative(-kp, m);
        let norm2 = l * (spinor_norm2(inc) + spinor_norm2(out));
        let idx = n - 1;
        let js: Vec<i64> = if idx <= window {
            (-idx - window..=idx + window).collect()
        } else {
            (-idx - window..=-idx + window)
                .chain(idx - window..=idx + window)
                .collect()
        };
        for j in js {
            let kf = j as f64 * dk;
            let nf = free_negative(kf, m);
            let nf_norm2 = 2.0 * l * spinor_norm2(nf);
            let elem = spinor_dot(nf, inc) * exp_integral(kp - kf, 0.0, l)
                + s.f * spinor_dot(nf, out) * exp_integral(-kp - kf, 0.0, l);
            total += elem.norm_sqr() / (norm2 * nf_norm2);
        }
    }
    total
}

/// Finite-box sum for the Klein-band states `(p_k + f p_{-k}) | g n_{-k'}`,
/// with free states normalised on the right half.
pub fn case3_sum(l: f64, v0: f64, m: f64, window: i64) -> f64 {
    if v0 <= 2.0 * m {
        return 0.0;
    }
    let kmax = (v0 * (v0 - 2.0 * m)).sqrt();
    let dk = 2.0 * std::f64::consts::PI / l;
    let mut total = 0.0;
    let mut n = 1i64;
    while (n as f64) * dk < kmax {
        let k = n as f64 * dk;
        n += 1;
        let e = (m * m + k * k).sqrt();
        let s = step(e, v0, m).unwrap();
        let (lf, lb) = local_waves(e, m);
        let (rf, _) = local_waves(e - v0, m);
        let norm2 = l
            * (spinor_norm2((lf.upper, lf.lower))
                + s.f.norm_sqr() * spinor_norm2((lb.upper, lb.lower)))
            + l * s.g.norm_sqr() * spinor_norm2((rf.upper, rf.lower));
        let kp = rf.lambda.im;
        let centre = (kp / dk).round() as i64;
        for j in centre - window..=centre + window {
            let kf = j as f64 * dk;
            let nf = free_negative(kf, m);
            let elem = s.g * spinor_dot(nf, (rf.upper, rf.lower)) * exp_integral(kp - kf, 0.0, l);
            total += elem.norm_sqr() / (norm2 * l * spinor_norm2(nf));
        }
    }
    total
}
