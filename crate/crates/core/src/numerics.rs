//! Floating-point helpers shared by the labs: the smooth cutoff, Gauss–Legendre
//! panels, real roots of small polynomials on an interval, and line fits.

use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;

/// C∞ step: 0 at x ≤ 0, 1 at x ≥ 1, with s(x) + s(1 − x) = 1.
pub fn smooth_step(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else if x >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / x).exp();
        let b = (-1.0 / (1.0 - x)).exp();
        a / (a + b)
    }
}

/// One-dimensional cutoff: 1 on [−1/2, 1/2], 0 outside (−1, 1).
pub fn eta(t: f64) -> f64 {
    smooth_step(2.0 * (1.0 - t.abs()))
}

/// ∫η over the real line.
pub const ETA_MASS: f64 = 1.5;

const TABLE: usize = 4096;

fn taper_table() -> &'static [f64] {
    static T: OnceLock<Vec<f64>> = OnceLock::new();
    T.get_or_init(|| {
        // cumulative ∫_{1/2}^{t} η on a uniform grid of [1/2, 1]
        let h = 0.5 / TABLE as f64;
        let gl = gauss_legendre(8);
        let mut out = vec![0.0; TABLE + 1];
        for i in 0..TABLE {
            let a = 0.5 + i as f64 * h;
            out[i + 1] = out[i] + integrate(&gl, a, a + h, eta);
        }
        out
    })
}

/// ∫_{−∞}^{t} η, from a cubic Hermite interpolant of a fine table.
pub fn eta_antiderivative(t: f64) -> f64 {
    if t < 0.0 {
        return ETA_MASS - eta_antiderivative(-t);
    }
    let half = ETA_MASS / 2.0;
    if t <= 0.5 {
        return half + t;
    }
    if t >= 1.0 {
        return ETA_MASS;
    }
    let tab = taper_table();
    let h = 0.5 / TABLE as f64;
    let s = (t - 0.5) / h;
    let i = (s.floor() as usize).min(TABLE - 1);
    let x = s - i as f64;
    let (a, b) = (0.5 + i as f64 * h, 0.5 + (i + 1) as f64 * h);
    let (f0, f1, d0, d1) = (tab[i], tab[i + 1], eta(a) * h, eta(b) * h);
    let (x2, x3) = (x * x, x * x * x);
    let v = (2.0 * x3 - 3.0 * x2 + 1.0) * f0
        + (x3 - 2.0 * x2 + x) * d0
        + (-2.0 * x3 + 3.0 * x2) * f1
        + (x3 - x2) * d1;
    half + 0.5 + v
}

/// ∫_a^b η.
pub fn eta_integral(a: f64, b: f64) -> f64 {
    eta_antiderivative(b) - eta_antiderivative(a)
}

pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(n).expect("at least one node");
    GaussLegendre::new(n).as_node_weight_pairs().to_vec()
}

pub fn integrate<F: Fn(f64) -> f64>(rule: &[(f64, f64)], a: f64, b: f64, f: F) -> f64 {
    let (m, h) = ((a + b) / 2.0, (b - a) / 2.0);
    h * rule.iter().map(|(x, w)| w * f(m + h * x)).sum::<f64>()
}

/// Nodes and weights of a composite rule with `panels` equal panels on [a, b].
pub fn composite_nodes(rule: &[(f64, f64)], a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
    let w = (b - a) / panels as f64;
    let mut out = Vec::with_capacity(panels * rule.len());
    for i in 0..panels {
        let (m, h) = (a + (i as f64 + 0.5) * w, w / 2.0);
        out.extend(rule.iter().map(|(x, wt)| (m + h * x, h * wt)));
    }
    out
}

pub fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, a)| a * i as f64)
        .collect()
}

fn degree(c: &[f64]) -> usize {
    c.iter().rposition(|a| *a != 0.0).unwrap_or(0)
}

/// Root of a polynomial with a sign change on [a, b] (Illinois false position).
fn bracketed_root(c: &[f64], mut a: f64, mut b: f64, mut fa: f64, mut fb: f64) -> f64 {
    let mut side = 0;
    for _ in 0..200 {
        let x = (a * fb - b * fa) / (fb - fa);
        if !(x > a && x < b) || (b - a) <= 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1e-300) {
            return 0.5 * (a + b);
        }
        let fx = horner(c, x);
        if fx == 0.0 {
            return x;
        }
        if (fx < 0.0) == (fa < 0.0) {
            a = x;
            fa = fx;
            if side == -1 {
                fb /= 2.0;
            }
            side = -1;
        } else {
            b = x;
            fb = fx;
            if side == 1 {
                fa /= 2.0;
            }
            side = 1;
        }
    }
    0.5 * (a + b)
}

/// Points splitting [lo, hi] into pieces on which the polynomial is monotone:
/// lo, the real critical points inside, hi.
pub fn monotone_breaks(c: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let d = derivative(&c[..=degree(c)]);
    let mut out = vec![lo];
    out.extend(real_roots_in(&d, lo, hi));
    out.push(hi);
    out
}

/// Points where the polynomial crosses `level`, given its monotone breaks.
pub fn level_crossings(c: &[f64], breaks: &[f64], level: f64) -> Vec<f64> {
    let f = |x: f64| horner(c, x) - level;
    let mut shifted = c.to_vec();
    shifted[0] -= level;
    let mut out = Vec::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (f(a), f(b));
        if fa == 0.0 {
            out.push(a);
        } else if (fa < 0.0) != (fb < 0.0) && fb != 0.0 {
            out.push(bracketed_root(&shifted, a, b, fa, fb));
        }
    }
    if let Some(&b) = breaks.last() {
        if f(b) == 0.0 {
            out.push(b);
        }
    }
    out
}

/// Real roots in [lo, hi], ascending, via the roots of the derivative.
pub fn real_roots_in(c: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    let d = degree(c);
    match d {
        0 => Vec::new(),
        1 => {
            let x = -c[0] / c[1];
            if (lo..=hi).contains(&x) {
                vec![x]
            } else {
                Vec::new()
            }
        }
        _ => {
            let breaks = monotone_breaks(c, lo, hi);
            let mut r = level_crossings(&c[..=d], &breaks, 0.0);
            r.dedup();
            r
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual.
    pub residual: f64,
}

/// Least-squares line through (x_i, y_i).
pub fn fit_line(x: &[f64], y: &[f64]) -> LineFit {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (x
        .iter()
        .zip(y)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    LineFit {
        slope,
        intercept,
        residual,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cutoff_mass() {
        let gl = gauss_legendre(8);
        let total: f64 = composite_nodes(&gl, -1.0, 1.0, 64)
            .iter()
            .map(|(x, w)| w * eta(*x))
            .sum();
        assert!((total - ETA_MASS).abs() < 1e-9, "{total}");
        assert!((eta_integral(-1.0, 1.0) - ETA_MASS).abs() < 1e-12);
        assert!((eta_integral(-0.2, 0.3) - 0.5).abs() < 1e-15);
        let a = eta_integral(0.6, 0.83);
        let b = integrate(&gl, 0.6, 0.83, eta);
        assert!((a - b).abs() < 1e-10, "{a} {b}");
    }

    #[test]
    fn roots_on_interval() {
        // (x − 0.3)(x + 0.5)(x − 2) = x³ − 1.8x² − 0.55x + 0.3
        let c = [0.3, -0.55, -1.8, 1.0];
        let r = real_roots_in(&c, -1.0, 1.0);
        assert_eq!(r.len(), 2);
        assert!(
            (r[0] + 0.5).abs() < 1e-13 && (r[1] - 0.3).abs() < 1e-13,
            "{r:?}"
        );
        // x⁴ − 1e-8 has roots ±0.01
        let r = real_roots_in(&[-1e-8, 0.0, 0.0, 0.0, 1.0], -1.0, 1.0);
        assert_eq!(r.len(), 2);
        assert!((r[1] - 0.01).abs() < 1e-15);
    }

    #[test]
    fn line_fit() {
        let x = [1.0, 2.0, 3.0, 4.0];
        let y: Vec<f64> = x.iter().map(|a| 2.5 * a - 1.0).collect();
        let f = fit_line(&x, &y);
        assert!((f.slope - 2.5).abs() < 1e-12 && f.residual < 1e-12);
    }
}
