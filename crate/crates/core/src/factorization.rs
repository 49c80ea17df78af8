//! Canonical factorization
//! `p = C·y1^ν1·y2^ν2·Π (y2^s − λ_j·y1^r)^{n_j}`
//! and the root data of the Hessian determinant.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mixhom::MixedHomogeneity;
use crate::poly::rat::{max_rat, Rat};
use crate::poly::{BivariatePoly, Bound, UnivariatePoly};

#[derive(Clone, Debug, PartialEq)]
pub struct RootFactor {
    /// Monic squarefree factor of the reduced polynomial g.
    pub minimal_factor: UnivariatePoly,
    pub multiplicity: u32,
    pub real_root_count: usize,
    pub real_root_approximations: Vec<f64>,
    /// Exact rational roots among the real ones.
    pub rational_roots: Vec<Rat>,
}

impl RootFactor {
    pub fn new(f: UnivariatePoly, multiplicity: u32) -> Self {
        let real_root_count = f.sturm_real_root_count(&Bound::NegInf, &Bound::PosInf);
        let (real_root_approximations, rational_roots) = if real_root_count > 0 {
            (f.real_root_approximations(), f.rational_roots())
        } else {
            (Vec::new(), Vec::new())
        };
        RootFactor {
            minimal_factor: f,
            multiplicity,
            real_root_count,
            real_root_approximations,
            rational_roots,
        }
    }

    pub fn has_real_root(&self) -> bool {
        self.real_root_count > 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalFactorization {
    pub c: Rat,
    pub nu1: u32,
    pub nu2: u32,
    pub factors: Vec<RootFactor>,
    /// Degree of the reduced polynomial.
    pub n: u32,
    /// Reduced polynomial g (not monic; its leading coefficient is `c`).
    pub g: UnivariatePoly,
    pub kappa: MixedHomogeneity,
}

/// Weights of w = det p'' relative to the weights of p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HessianWeights {
    Constant,
    Weighted(MixedHomogeneity),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RootLocation {
    /// The line y1 = 0 (factor y1).
    Axis1,
    /// The line y2 = 0 (factor y2).
    Axis2,
    OffAxisCoincident,
    OffAxisNew,
    NoRealRoots,
}

impl RootLocation {
    pub fn is_new(&self) -> bool {
        matches!(self, RootLocation::OffAxisNew)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HessianRootData {
    pub w: BivariatePoly,
    pub kappa_w: HessianWeights,
    pub factorization_w: Option<CanonicalFactorization>,
    pub t: u32,
    pub max_root_location: RootLocation,
    /// Every location attaining T (empty when T = 0).
    pub max_locations: Vec<RootLocation>,
    pub h_w: Rat,
}

impl HessianRootData {
    /// T is attained both on an axis or coincident root and on a new root.
    pub fn is_tie(&self) -> bool {
        self.max_locations.iter().any(|l| l.is_new())
            && self.max_locations.iter().any(|l| !l.is_new())
    }
}

/// Sum over t of a_t·y1^{r(d−t)}·y2^{s·t} for g(u) = Σ a_t u^t of degree d.
pub fn expand_in_weights(g: &UnivariatePoly, s: u32, r: u32) -> BivariatePoly {
    let d = g.deg() as u32;
    BivariatePoly::from_terms(
        g.coeffs()
            .iter()
            .enumerate()
            .map(|(t, c)| ((r * (d - t as u32), s * t as u32), c.clone())),
    )
}

/// Splits `p` (input frame) into (ν1, ν2, g, C) in the normalized frame.
/// A monomial gives n = 0 and a constant g.
pub fn reduce_to_univariate(
    p: &BivariatePoly,
    k: &MixedHomogeneity,
) -> Result<(u32, u32, UnivariatePoly, Rat)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let q = k.normalize(p);
    let (nu1, nu2) = q.min_exponents();
    let (s, r) = (k.s as u64, k.r as u64);
    let rest = k.m as i64 - (s * nu1 as u64 + r * nu2 as u64) as i64;
    if rest < 0 || !(rest as u64).is_multiple_of(r * s) {
        return Err(Error::Internal(format!(
            "support of {p} does not fit weights {k:?}"
        )));
    }
    let n = rest as u64 / (r * s);
    let mut coeffs = vec![Rat::zero(); n as usize + 1];
    for (&(i, j), c) in q.terms() {
        let (i, j) = ((i - nu1) as u64, (j - nu2) as u64);
        if j % s != 0 || j / s > n || i != r * (n - j / s) {
            return Err(Error::Internal(format!(
                "exponent ({i},{j}) of {p} off the weight line {k:?}"
            )));
        }
        coeffs[(j / s) as usize] = c.clone();
    }
    let g = UnivariatePoly::new(coeffs);
    let c = g.lead();
    Ok((nu1, nu2, g, c))
}

pub fn factorize(p: &BivariatePoly, k: &MixedHomogeneity) -> Result<CanonicalFactorization> {
    let (nu1, nu2, g, c) = reduce_to_univariate(p, k)?;
    let factors = g
        .squarefree_decomposition()
        .into_iter()
        .map(|(f, m)| RootFactor::new(f, m))
        .collect();
    Ok(CanonicalFactorization {
        c,
        nu1,
        nu2,
        factors,
        n: g.deg() as u32,
        g,
        kappa: *k,
    })
}

impl CanonicalFactorization {
    /// Multiplies the factorization back out, in the normalized frame.
    pub fn expand(&self) -> BivariatePoly {
        let (s, r) = (self.kappa.s, self.kappa.r);
        let mut acc = BivariatePoly::monomial(self.c.clone(), self.nu1, self.nu2);
        for f in &self.factors {
            acc = acc.mul(&expand_in_weights(&f.minimal_factor, s, r).pow(f.multiplicity));
        }
        acc
    }

    /// Off-axis factors having real roots.
    pub fn real_factors(&self) -> impl Iterator<Item = &RootFactor> {
        self.factors.iter().filter(|f| f.has_real_root())
    }

    /// ν1·s + ν2·r + n·r·s.
    pub fn weighted_degree(&self) -> u64 {
        let (s, r) = (self.kappa.s as u64, self.kappa.r as u64);
        self.nu1 as u64 * s + self.nu2 as u64 * r + self.n as u64 * r * s
    }

    /// Squarefree product of the factors that have real roots.
    pub fn real_part(&self) -> UnivariatePoly {
        self.real_factors()
            .fold(UnivariatePoly::constant(Rat::one()), |a, f| {
                a.mul(&f.minimal_factor)
            })
    }
}

/// Highest multiplicity of a real off-axis root, 0 if none.
pub fn real_root_multiplicity_n(f: &CanonicalFactorization) -> u32 {
    f.real_factors().map(|f| f.multiplicity).max().unwrap_or(0)
}

/// max{d_h, ν1, ν2, N}.
pub fn height(f: &CanonicalFactorization) -> Rat {
    let d_h = f.kappa.d_h();
    let m = f.nu1.max(f.nu2).max(real_root_multiplicity_n(f));
    max_rat(&d_h, &Rat::from_integer(m.into())).clone()
}

/// Height of a monomial y1^a·y2^b.
pub fn height_monomial(a: u32, b: u32) -> Rat {
    Rat::from_integer(a.max(b).into())
}

/// The weights (s, r, 2(m − r − s)) of w, or `Constant` when m = r + s.
pub fn kappa_of_hessian(k: &MixedHomogeneity) -> Result<HessianWeights> {
    let (s, r, m) = (k.s, k.r, k.m);
    if m == r + s {
        return Ok(HessianWeights::Constant);
    }
    if m < r + s {
        return Err(Error::Precondition(format!(
            "weights {k:?} give negative Hessian degree; gradient cannot vanish"
        )));
    }
    Ok(HessianWeights::Weighted(MixedHomogeneity {
        s,
        r,
        m: 2 * (m - r - s),
        swapped: false,
    }))
}

/// Factorizes w = det p'' and locates its highest-multiplicity real root.
pub fn hessian_root_data(p: &BivariatePoly, k: &MixedHomogeneity) -> Result<HessianRootData> {
    let phi = k.normalize(p);
    let w = phi.hessian_det();
    if w.is_zero() {
        return Err(Error::Internal(format!(
            "Hessian determinant of {p} vanishes identically"
        )));
    }
    let kw = kappa_of_hessian(k)?;
    let kw_mh = match kw {
        HessianWeights::Constant => {
            return Ok(HessianRootData {
                w,
                kappa_w: kw,
                factorization_w: None,
                t: 0,
                max_root_location: RootLocation::NoRealRoots,
                max_locations: Vec::new(),
                h_w: Rat::zero(),
            })
        }
        HessianWeights::Weighted(m) => m,
    };
    let fw = factorize(&w, &kw_mh)?;
    let fphi = factorize(
        &phi,
        &MixedHomogeneity {
            swapped: false,
            ..*k
        },
    )?;
    let gphi = fphi.real_part();

    let mut cands: Vec<(u32, RootLocation)> =
        vec![(fw.nu1, RootLocation::Axis1), (fw.nu2, RootLocation::Axis2)];
    for f in fw.real_factors() {
        let common = f.minimal_factor.gcd(&gphi);
        let fresh = f.minimal_factor.exact_div(&common).expect("gcd divides");
        let real = |q: &UnivariatePoly| q.sturm_real_root_count(&Bound::NegInf, &Bound::PosInf) > 0;
        if real(&common) {
            cands.push((f.multiplicity, RootLocation::OffAxisCoincident));
        }
        if real(&fresh) {
            cands.push((f.multiplicity, RootLocation::OffAxisNew));
        }
    }
    let t = cands.iter().map(|c| c.0).max().unwrap_or(0);
    let mut max_locations: Vec<RootLocation> = if t == 0 {
        Vec::new()
    } else {
        cands.iter().filter(|c| c.0 == t).map(|c| c.1).collect()
    };
    max_locations.sort();
    max_locations.dedup();
    let max_root_location = if max_locations.is_empty() {
        RootLocation::NoRealRoots
    } else if max_locations.iter().any(|l| l.is_new()) {
        RootLocation::OffAxisNew
    } else {
        max_locations[0]
    };
    let h_w = height(&fw);
    Ok(HessianRootData {
        w,
        kappa_w: kw,
        factorization_w: Some(fw),
        t,
        max_root_location,
        max_locations,
        h_w,
    })
}

/// Whether a real λ gives a real zero curve y2^s = λ·y1^r.
///
/// Since gcd(r, s) = 1 one of r, s is odd, and the curve is always real.
pub fn real_lambda_has_real_curve(lambda: &Rat, s: u32, r: u32) -> bool {
    let odd_s = s % 2 == 1;
    let odd_r = r % 2 == 1;
    if lambda.is_zero() {
        return true;
    }
    // y2 = (λ y1^r)^{1/s}: solvable for y1 = ±1 if s odd, or if λ·y1^r > 0 for some y1
    odd_s || lambda.is_positive() || odd_r
}
