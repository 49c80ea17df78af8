//! Weight detection for mixed homogeneous polynomials.
//!
//! A polynomial is (s, r, m)-homogeneous when every exponent pair (j, k) of
//! its support satisfies `s·j + r·k = m`. The weights are then
//! κ = (s/m, r/m). After normalization `s < r`, with a variable swap recorded
//! when the input had it the other way round.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::rat::Rat;
use crate::poly::{BivariatePoly, Exp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MixedHomogeneity {
    pub s: u32,
    pub r: u32,
    pub m: u32,
    pub swapped: bool,
}

impl MixedHomogeneity {
    /// κ = (s/m, r/m).
    pub fn kappa(&self) -> (Rat, Rat) {
        (
            Rat::new(self.s.into(), self.m.into()),
            Rat::new(self.r.into(), self.m.into()),
        )
    }

    pub fn d_h(&self) -> Rat {
        homogeneous_distance(self)
    }

    /// Brings a polynomial from the input frame into the normalized frame.
    pub fn normalize(&self, p: &BivariatePoly) -> BivariatePoly {
        if self.swapped {
            p.swap_vars()
        } else {
            p.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TaylorSupport {
    pub points: BTreeSet<Exp>,
}

pub fn taylor_support(p: &BivariatePoly) -> TaylorSupport {
    TaylorSupport {
        points: p.support().into_iter().collect(),
    }
}

/// Finds the weights of `p`, scaled to κ-degree one and ordered `s < r`.
pub fn detect_kappa(p: &BivariatePoly) -> Result<MixedHomogeneity> {
    let pts = p.support();
    match pts.len() {
        0 => return Err(Error::ZeroPolynomial),
        1 => return Err(Error::Monomial),
        _ => {}
    }
    let (j0, k0) = (pts[0].0 as i64, pts[0].1 as i64);
    let (dj, dk) = pts[1..]
        .iter()
        .map(|&(j, k)| (j as i64 - j0, k as i64 - k0))
        .find(|&d| d != (0, 0))
        .ok_or(Error::Monomial)?;
    let collinear = pts
        .iter()
        .all(|&(j, k)| (j as i64 - j0) * dk - (k as i64 - k0) * dj == 0);
    // positive weights need a direction with components of opposite sign
    if !collinear || dj == 0 || dk == 0 || (dj > 0) == (dk > 0) {
        return Err(Error::NotMixedHomogeneous);
    }
    let g = dj.abs().gcd(&dk.abs());
    let (a, b) = ((dk.abs() / g) as u32, (dj.abs() / g) as u32);
    if a == b {
        return Err(Error::Homogeneous);
    }
    let m = (a as i64 * j0 + b as i64 * k0) as u32;
    let (s, r, swapped) = if a < b { (a, b, false) } else { (b, a, true) };
    Ok(MixedHomogeneity { s, r, m, swapped })
}

/// d_h = m / (r + s).
pub fn homogeneous_distance(k: &MixedHomogeneity) -> Rat {
    Rat::new(k.m.into(), (k.r + k.s).into())
}

pub fn gradient_vanishes_at_origin(p: &BivariatePoly) -> bool {
    p.coeff(1, 0) == Rat::default() && p.coeff(0, 1) == Rat::default()
}

/// Checks `s·j + r·k = m` on the support, in the frame given by the swap flag.
pub fn verify_mixed_homogeneity(p: &BivariatePoly, k: &MixedHomogeneity) -> bool {
    k.normalize(p)
        .support()
        .iter()
        .all(|&(i, j)| k.s as u64 * i as u64 + k.r as u64 * j as u64 == k.m as u64)
}
