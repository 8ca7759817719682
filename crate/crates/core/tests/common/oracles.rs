//! Independent numerical oracles used by the integration tests.
//!
//! Nothing in here calls into the library's evaluation paths: each oracle is
//! a separate route to the same quantity (contour inversion, brute-force
//! partial sums, bisection, Maclaurin series, composite Simpson).

#![allow(dead_code)]

use num_complex::Complex64;
use std::f64::consts::PI;

/// Fixed-Talbot inversion of a Laplace transform `g` at time `t > 0`.
///
/// Contour `s(θ) = rθ(cot θ + i)`, `r = 2M/(5t)`, midpoint weights as in the
/// Abate–Valkó fixed-Talbot scheme.
pub fn talbot_invert<G>(g: G, t: f64, terms: usize) -> f64
where
    G: Fn(Complex64) -> Complex64,
{
    assert!(t > 0.0);
    let m = terms as f64;
    let r = 2.0 * m / (5.0 * t);
    let mut acc = 0.5 * (g(Complex64::new(r, 0.0)) * (r * t).exp()).re;
    for k in 1..terms {
        let theta = k as f64 * PI / m;
        let cot = theta.cos() / theta.sin();
        let s = Complex64::new(r * theta * cot, r * theta);
        let sigma = theta + (theta * cot - 1.0) * cot;
        let term = (s * t).exp() * g(s) * Complex64::new(1.0, sigma);
        acc += term.re;
    }
    acc * r / m
}

/// Laplace transform of the Jacobi theta law, `y / sinh(y)` with `y = π√(sm)`,
/// written directly against `num_complex`.
pub fn theta_laplace(s: Complex64, m: f64) -> Complex64 {
    let y = (s * m).sqrt() * PI;
    if y.norm() < 1e-8 {
        return Complex64::new(1.0, 0.0) - y * y / 6.0;
    }
    y / y.sinh()
}

/// CDF oracle: inverse Laplace transform of `F(s)/s`.
pub fn cdf_by_inversion(m: f64, x: f64) -> f64 {
    talbot_invert(|s| theta_laplace(s, m) / s, x, 32)
}

/// Partial sum of `2 q^{1/4} Σ_{k<n} q^{k(k+1)}` computed by repeated
/// multiplication rather than powf.
pub fn theta2_partial(q: f64, n: usize) -> f64 {
    let mut sum = 0.0;
    for k in 0..n {
        let e = k * (k + 1);
        let mut p = 1.0;
        for _ in 0..e {
            p *= q;
            if p == 0.0 {
                break;
            }
        }
        sum += p;
    }
    2.0 * q.powf(0.25) * sum
}

/// Bisection for the lower real branch of Lambert W on `[-800, -1]`.
pub fn lambert_wm1_bisect(y: f64) -> f64 {
    let f = |w: f64| w * w.exp() - y;
    let (mut lo, mut hi) = (-800.0_f64, -1.0_f64);
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        // w e^w decreases from 0^- to -1/e as w goes from -inf to -1
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Maclaurin series of erf, summed until terms vanish.
pub fn erf_series(x: f64) -> f64 {
    let mut term = x;
    let mut sum = x;
    let x2 = x * x;
    for n in 1..400 {
        term *= -x2 / n as f64;
        let add = term / (2 * n + 1) as f64;
        sum += add;
        if add.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    sum * 2.0 / PI.sqrt()
}

pub fn central_diff<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Five-point stencil, used where a 1e-8 relative check needs an O(h^4) rule.
pub fn five_point_diff<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    let n = if n % 2 == 1 { n + 1 } else { n };
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let x = a + i as f64 * h;
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    s * h / 3.0
}

/// Simpson over `[a, b]` after the substitution `x = e^t`; suited to
/// integrands spread over several decades.
pub fn simpson_log<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    simpson(
        |t| {
            let x = t.exp();
            f(x) * x
        },
        a.ln(),
        b.ln(),
        n,
    )
}

pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Bisection on a monotone increasing function.
pub fn bisect_increasing<F: Fn(f64) -> f64>(f: F, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
