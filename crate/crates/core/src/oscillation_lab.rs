//! Rescaled dyadic pieces near a zero curve of φ and numerical estimates of
//! the Fourier decay of their surface measures.

use std::fmt::Write as _;

use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra_checks::{dyadic_rescaling_identity, rescaled_piece};
use crate::error::{Error, Result};
use crate::numerics::{composite_nodes, fit_line, gauss_legendre, horner, smooth_step};
use crate::poly::rat::{rat, serde_pq, Rat};
use crate::poly::{BivariatePoly, FloatPoly};

/// The measure μ_jk = (Φ_jk)_*(χ⊗χ dy) with
/// Φ_jk(y) = (y1, δ·y2 + λ·y1^r, φ_jk(y)) and χ supported in 1/2 ≤ |t| ≤ 2.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DyadicPiece {
    pub j: u32,
    pub k: u32,
    #[serde(with = "serde_pq")]
    pub lambda: Rat,
    pub r: u32,
    pub multiplicity: u32,
    /// δ = 2^{jr−k}.
    #[serde(with = "serde_pq")]
    pub delta: Rat,
    pub phi_jk: BivariatePoly,
    /// Exponent e in ‖A_jk‖_{L^{4/3}→L^4} ≲ δ^e from the weighted estimate.
    /// Recorded, not measured.
    #[serde(with = "serde_pq")]
    pub weighted_bound_exponent: Rat,
    /// Decay exponent the piece is expected to have.
    #[serde(with = "serde_pq")]
    pub target_rho: Rat,
}

/// Smallest admissible value of k − j·r, so that δ ≤ 1/8.
pub const MIN_SEPARATION: u32 = 3;

pub fn build_piece(phi: &BivariatePoly, l: usize, j: u32, k: u32) -> Result<DyadicPiece> {
    let piece = rescaled_piece(phi, l, j, k)?;
    let jr = j as u64 * piece.r as u64;
    if (k as u64) < jr + MIN_SEPARATION as u64 {
        return Err(Error::Precondition(format!(
            "j = {j} is not small against k/r = {k}/{}: δ = 2^({jr} - {k}) must be at most 2^-{MIN_SEPARATION}",
            piece.r
        )));
    }
    if !dyadic_rescaling_identity(phi, l, j, k)? {
        return Err(Error::Internal(format!(
            "rescaling identity fails for l={l}, j={j}, k={k}"
        )));
    }
    Ok(DyadicPiece {
        j,
        k,
        lambda: piece.lambda,
        r: piece.r,
        multiplicity: piece.multiplicity,
        delta: piece.delta,
        phi_jk: piece.phi_jk,
        weighted_bound_exponent: rat(-1, 4),
        target_rho: rat(1, 2),
    })
}

/// Annular cutoff: smooth, positive on 1/2 < |t| < 2, zero elsewhere.
pub fn annular_cutoff(t: f64) -> f64 {
    let x = (t.abs() - 0.5) / 1.5;
    smooth_step(2.0 * x) * smooth_step(2.0 * (1.0 - x))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecayFit {
    /// Unit direction of ξ.
    pub ray: [f64; 3],
    pub schedule: Vec<f64>,
    /// |μ̂(|ξ|·ray)| for each entry of the schedule.
    pub values: Vec<f64>,
    /// Fitted from the top three octaves.
    pub rho: f64,
    pub residual: f64,
    #[serde(with = "serde_pq")]
    pub target: Rat,
}

impl DecayFit {
    pub fn to_csv(&self) -> String {
        let xs: Vec<f64> = self.schedule.iter().map(|x| x.log2()).collect();
        let fit = fit_line(&xs[xs.len() - 3..], &log2s(&self.values[xs.len() - 3..]));
        let mut s = String::from("xi,abs_mu_hat,loglog_residual\n");
        for ((xi, v), x) in self.schedule.iter().zip(&self.values).zip(&xs) {
            let res = v.log2() - (fit.intercept + fit.slope * x);
            let _ = writeln!(s, "{xi},{v:e},{res:.6}");
        }
        s
    }
}

fn log2s(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| x.max(f64::MIN_POSITIVE).log2()).collect()
}

/// Largest |ξ| the quadrature budget allows.
pub const XI_CAP: f64 = 256.0;

/// Parses `e1`, `e2`, `e3` or three comma-free components `a:b:c`.
pub fn parse_ray(s: &str) -> Result<[f64; 3]> {
    let v = match s.trim() {
        "e1" => [1.0, 0.0, 0.0],
        "e2" => [0.0, 1.0, 0.0],
        "e3" => [0.0, 0.0, 1.0],
        other => {
            let parts: Vec<f64> = other
                .split(':')
                .map(|x| x.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Precondition(format!("cannot read ray '{other}'")))?;
            if parts.len() != 3 {
                return Err(Error::Precondition(format!(
                    "ray '{other}' needs 3 components"
                )));
            }
            [parts[0], parts[1], parts[2]]
        }
    };
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n.is_nan() || n <= 0.0 || !n.is_finite() {
        return Err(Error::Precondition("ray must be a nonzero vector".into()));
    }
    Ok([v[0] / n, v[1] / n, v[2] / n])
}

/// |ξ| ∈ {8, 16, …, 256}.
pub fn default_schedule() -> Vec<f64> {
    (3..=8).map(|k| 2f64.powi(k)).collect()
}

const NODES: usize = 8;

/// μ̂(ξ) = ∫ e^{−iξ·Φ(y)} χ(y1)χ(y2) dy by tensor Gauss–Legendre panels.
pub fn fourier_transform(piece: &DyadicPiece, xi: [f64; 3]) -> Result<(f64, f64)> {
    let size = xi.iter().map(|x| x * x).sum::<f64>().sqrt();
    if size > XI_CAP {
        return Err(Error::OscillationBudgetExceeded {
            xi: size,
            cap: XI_CAP,
        });
    }
    let phi: FloatPoly = piece.phi_jk.to_float();
    let delta = crate::poly::rat::to_f64(&piece.delta);
    let lambda = crate::poly::rat::to_f64(&piece.lambda);
    let r = piece.r as i32;
    let [g1, g2] = phase_gradient_bound(&phi, xi, delta, lambda, r);
    let rule = gauss_legendre(NODES);
    let axis = |g: f64| {
        // panels of length 1/max(8, g/4): at least 8 nodes per oscillation
        let panels = (1.5 * (g / 4.0).max(8.0)).ceil() as usize;
        let mut nodes = composite_nodes(&rule, -2.0, -0.5, panels);
        nodes.extend(composite_nodes(&rule, 0.5, 2.0, panels));
        nodes
            .into_iter()
            .map(|(t, w)| (t, w * annular_cutoff(t)))
            .filter(|(_, w)| *w != 0.0)
            .collect::<Vec<(f64, f64)>>()
    };
    let (nodes1, nodes2) = (axis(g1), axis(g2));
    let rows: Vec<(f64, f64)> = nodes1
        .par_iter()
        .map(|&(y1, w1)| {
            let c = phi.in_y2(y1);
            let base = xi[0] * y1 + xi[1] * lambda * y1.powi(r);
            let (mut re, mut im) = (0.0, 0.0);
            for &(y2, w2) in &nodes2 {
                let t = base + xi[1] * delta * y2 + xi[2] * horner(&c, y2);
                re += w2 * t.cos();
                im -= w2 * t.sin();
            }
            (w1 * re, w1 * im)
        })
        .collect();
    Ok(rows
        .iter()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y)))
}

/// Bounds for |∂_i (ξ·Φ)| on [−2, 2]².
fn phase_gradient_bound(
    phi: &FloatPoly,
    xi: [f64; 3],
    delta: f64,
    lambda: f64,
    r: i32,
) -> [f64; 2] {
    let (mut d1, mut d2) = (0.0, 0.0);
    for &((i, j), c) in &phi.terms {
        let (i, j) = (i as i32, j as i32);
        if i > 0 {
            d1 += c.abs() * i as f64 * 2f64.powi(i - 1 + j);
        }
        if j > 0 {
            d2 += c.abs() * j as f64 * 2f64.powi(i + j - 1);
        }
    }
    let [a, b, c] = xi.map(f64::abs);
    [
        a + b * lambda.abs() * r as f64 * 2f64.powi(r - 1) + c * d1,
        b * delta + c * d2,
    ]
}

pub fn estimate_fourier_decay(
    piece: &DyadicPiece,
    ray: [f64; 3],
    schedule: &[f64],
) -> Result<DecayFit> {
    if schedule.len() < 5 {
        return Err(Error::Precondition(
            "schedule needs at least 5 dyadic points".into(),
        ));
    }
    let dyadic = schedule
        .windows(2)
        .all(|w| (w[1] / w[0] - 2.0).abs() < 1e-12)
        && schedule[0] > 0.0;
    if !dyadic {
        return Err(Error::Precondition(
            "schedule must be increasing powers of two apart".into(),
        ));
    }
    if let Some(&top) = schedule.last() {
        if top > XI_CAP {
            return Err(Error::OscillationBudgetExceeded {
                xi: top,
                cap: XI_CAP,
            });
        }
    }
    let mut values = Vec::with_capacity(schedule.len());
    for &s in schedule {
        let (re, im) = fourier_transform(piece, [s * ray[0], s * ray[1], s * ray[2]])?;
        values.push(re.hypot(im));
    }
    let n = schedule.len();
    let xs: Vec<f64> = schedule[n - 3..].iter().map(|x| x.log2()).collect();
    let fit = fit_line(&xs, &log2s(&values[n - 3..]));
    Ok(DecayFit {
        ray,
        schedule: schedule.to_vec(),
        values,
        rho: -fit.slope,
        residual: fit.residual,
        target: piece.target_rho.clone(),
    })
}

/// (1/p, 1/p′) for the L^p → L^{p′} bound of convolution with a measure whose
/// transform decays like |ξ|^{−ρ}.
pub fn decay_to_pq(rho: &Rat) -> Result<(Rat, Rat)> {
    if !rho.is_positive() {
        return Err(Error::Precondition(
            "decay exponent must be positive".into(),
        ));
    }
    let one = Rat::one();
    let u = (&one + rho / (rho + &one)) / Rat::from_integer(2.into());
    let v = &one - &u;
    Ok((u, v))
}

/// Exponent 1/p of the interpolated piece bound when d_h + 1/2 ≤ N < d_h + 1.
pub fn interpolation_exponent(n: u32, d_h: &Rat) -> Result<Rat> {
    let x = Rat::from_integer(n.into()) - d_h;
    if x < rat(1, 2) || x >= Rat::one() {
        return Err(Error::Precondition(format!(
            "need d_h + 1/2 <= N < d_h + 1, got N = {n}, d_h = {d_h}"
        )));
    }
    Ok((&x + Rat::one()) / (&x * Rat::from_integer(2.into()) + Rat::one()))
}

/// Phase-free sanity value: μ̂(0) is the squared cutoff mass.
pub fn cutoff_mass() -> f64 {
    let rule = gauss_legendre(NODES);
    let one: f64 = composite_nodes(&rule, 0.5, 2.0, 64)
        .iter()
        .map(|(t, w)| w * annular_cutoff(*t))
        .sum();
    (2.0 * one).powi(2)
}
