//! Case analysis: which of the four boundedness regimes a polynomial falls
//! into, the conditions describing its region, and the endpoints that the
//! interpolation arguments reach.

mod inequalities;
pub mod numeric;
pub mod search;

pub use inequalities::{
    gressman_endpoint, height_relation_check, region_for, summability_endpoint,
    theorem_inequalities, Endpoint, HeightRelation, RelationStatus,
};
pub use numeric::classify_numeric;
pub use search::{search_case_d, CaseDInstance};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::factorization::{
    factorize, height, hessian_root_data, real_root_multiplicity_n, CanonicalFactorization,
    HessianRootData, RootLocation,
};
use crate::mixhom::{detect_kappa, gradient_vanishes_at_origin, MixedHomogeneity};
use crate::poly::rat::{int, rat, Rat};
use crate::poly::BivariatePoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExclusionReason {
    ZeroPolynomial,
    Monomial,
    NotMixedHomogeneous,
    Homogeneous,
    GradientNonzero,
}

impl ExclusionReason {
    pub fn describe(&self) -> &'static str {
        match self {
            ExclusionReason::ZeroPolynomial => "zero polynomial",
            ExclusionReason::Monomial => "monomial: weights are not determined",
            ExclusionReason::NotMixedHomogeneous => {
                "support does not lie on a single line with positive weights"
            }
            ExclusionReason::Homogeneous => "homogeneous (equal weights)",
            ExclusionReason::GradientNonzero => "gradient does not vanish at the origin",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    A,
    B,
    C,
    D,
    Excluded(ExclusionReason),
}

impl Case {
    pub fn tag(&self) -> &'static str {
        match self {
            Case::A => "A",
            Case::B => "B",
            Case::C => "C",
            Case::D => "D",
            Case::Excluded(_) => "excluded",
        }
    }

    pub fn is_excluded(&self) -> bool {
        matches!(self, Case::Excluded(_))
    }
}

/// Exact data behind a classification.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactAnalysis {
    /// φ in the normalized frame (s < r).
    pub phi: BivariatePoly,
    pub factorization: CanonicalFactorization,
    pub hessian: HessianRootData,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub case: Case,
    pub kappa: Option<MixedHomogeneity>,
    /// Highest multiplicity of a real off-axis root of φ.
    pub n: u32,
    /// Highest multiplicity of a real root of w = det φ''.
    pub t: u32,
    pub d_h: Rat,
    pub nu1: u32,
    pub nu2: u32,
    pub h_phi: Rat,
    pub h_w: Rat,
    pub location: RootLocation,
    pub redundancy_flag: bool,
    pub tie_flag: bool,
    pub advisory: bool,
    pub diagnostics: Vec<String>,
    pub exact: Option<Box<ExactAnalysis>>,
}

impl Classification {
    pub fn excluded(reason: ExclusionReason) -> Self {
        Classification {
            case: Case::Excluded(reason),
            kappa: None,
            n: 0,
            t: 0,
            d_h: Rat::zero(),
            nu1: 0,
            nu2: 0,
            h_phi: Rat::zero(),
            h_w: Rat::zero(),
            location: RootLocation::NoRealRoots,
            redundancy_flag: false,
            tie_flag: false,
            advisory: false,
            diagnostics: vec![reason.describe().to_string()],
            exact: None,
        }
    }

    pub fn nu_max(&self) -> u32 {
        self.nu1.max(self.nu2)
    }

    /// Smallest positive y1-exponent in the normalized support.
    pub fn min_positive_y1_exponent(&self) -> Option<u32> {
        let e = self.exact.as_ref()?;
        e.phi.support().iter().map(|e| e.0).filter(|&a| a > 0).min()
    }
}

/// Case logic from the invariants. `new_root` tells whether T is attained at
/// a real root of w that is off the axes and not a root of φ; `tie` whether
/// it is also attained at an axis or coincident root.
pub(crate) fn decide_case(
    n: u32,
    nu_max: u32,
    d_h: &Rat,
    t: u32,
    new_root: bool,
    tie: bool,
) -> (Case, bool) {
    let nr = int(n as i64);
    if nr >= d_h + rat(1, 2) {
        return (Case::A, false);
    }
    if &int(nu_max as i64) >= d_h {
        return (Case::B, false);
    }
    let redundant = int(t as i64) <= d_h * int(2) - int(2);
    if new_root || tie {
        (Case::D, redundant)
    } else {
        (Case::C, redundant)
    }
}

pub fn classify(p: &BivariatePoly) -> Classification {
    if p.is_zero() {
        return Classification::excluded(ExclusionReason::ZeroPolynomial);
    }
    let k = match detect_kappa(p) {
        Ok(k) => k,
        Err(Error::Monomial) => return Classification::excluded(ExclusionReason::Monomial),
        Err(Error::Homogeneous) => return Classification::excluded(ExclusionReason::Homogeneous),
        Err(_) => return Classification::excluded(ExclusionReason::NotMixedHomogeneous),
    };
    if !gradient_vanishes_at_origin(p) {
        let mut c = Classification::excluded(ExclusionReason::GradientNonzero);
        c.kappa = Some(k);
        return c;
    }
    let fac = factorize(p, &k).expect("weights fit the support");
    let hrd = hessian_root_data(p, &k).expect("Hessian of an admitted input is nonzero");
    let n = real_root_multiplicity_n(&fac);
    let d_h = k.d_h();
    let tie = hrd.is_tie();
    let (case, redundancy_flag) = decide_case(
        n,
        fac.nu1.max(fac.nu2),
        &d_h,
        hrd.t,
        hrd.max_root_location == RootLocation::OffAxisNew,
        tie,
    );
    let tie_flag = tie && matches!(case, Case::C | Case::D);
    let mut diagnostics = Vec::new();
    if k.swapped {
        diagnostics.push("variables exchanged so that the first weight is the smaller one".into());
    }
    if tie_flag {
        diagnostics.push(format!(
            "T = {} is attained at several root types ({:?}); conditions of both remaining cases are imposed",
            hrd.t, hrd.max_locations
        ));
    }
    if redundancy_flag {
        diagnostics.push(format!(
            "T = {} <= 2 d_h - 2 = {}: the Hessian conditions are implied by the basic trapezium",
            hrd.t,
            &d_h * int(2) - int(2)
        ));
    }
    Classification {
        case,
        kappa: Some(k),
        n,
        t: hrd.t,
        nu1: fac.nu1,
        nu2: fac.nu2,
        h_phi: height(&fac),
        h_w: hrd.h_w.clone(),
        location: hrd.max_root_location,
        redundancy_flag,
        tie_flag,
        advisory: false,
        diagnostics,
        d_h,
        exact: Some(Box::new(ExactAnalysis {
            phi: k.normalize(p),
            factorization: fac,
            hessian: hrd,
        })),
    }
}
