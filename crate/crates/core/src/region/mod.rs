//! Exact half-plane geometry on the (u, v) = (1/p, 1/q) unit square.

mod json;
mod svg;

pub use json::{emit_region_json, parse_region_json, RegionJson};
pub use svg::emit_region_svg;

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::rat::{serde_pq, Rat};

/// `alpha·u + beta·v ≥ gamma`, or `>` when `strict`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfPlane {
    pub label: String,
    #[serde(with = "serde_pq")]
    pub alpha: Rat,
    #[serde(with = "serde_pq")]
    pub beta: Rat,
    #[serde(with = "serde_pq")]
    pub gamma: Rat,
    pub strict: bool,
}

impl HalfPlane {
    /// Scales so that |beta| = 1, or |alpha| = 1 when beta = 0.
    pub fn new(alpha: Rat, beta: Rat, gamma: Rat, strict: bool, label: impl Into<String>) -> Self {
        assert!(
            !(alpha.is_zero() && beta.is_zero()),
            "half-plane needs a nonzero normal"
        );
        let k = if beta.is_zero() {
            alpha.abs()
        } else {
            beta.abs()
        };
        HalfPlane {
            alpha: alpha / &k,
            beta: beta / &k,
            gamma: gamma / &k,
            strict,
            label: label.into(),
        }
    }

    /// `v ≥ slope·u + intercept` (or `>`).
    pub fn above(slope: Rat, intercept: Rat, strict: bool, label: impl Into<String>) -> Self {
        Self::new(-slope, Rat::one(), intercept, strict, label)
    }

    /// `v ≤ slope·u + intercept` (or `<`).
    pub fn below(slope: Rat, intercept: Rat, strict: bool, label: impl Into<String>) -> Self {
        Self::new(slope, -Rat::one(), -intercept, strict, label)
    }

    /// alpha·u + beta·v − gamma.
    pub fn slack(&self, u: &Rat, v: &Rat) -> Rat {
        &self.alpha * u + &self.beta * v - &self.gamma
    }

    pub fn holds(&self, u: &Rat, v: &Rat) -> bool {
        let s = self.slack(u, v);
        if self.strict {
            s.is_positive()
        } else {
            !s.is_negative()
        }
    }

    /// Image under (u, v) ↦ (1 − v, 1 − u); keeps strictness and label.
    pub fn dual(&self) -> HalfPlane {
        HalfPlane::new(
            -self.beta.clone(),
            -self.alpha.clone(),
            &self.gamma - &self.alpha - &self.beta,
            self.strict,
            self.label.clone(),
        )
    }

    /// Same set (label ignored).
    pub fn same_set(&self, o: &HalfPlane) -> bool {
        self.alpha == o.alpha
            && self.beta == o.beta
            && self.gamma == o.gamma
            && self.strict == o.strict
    }

    /// Same boundary line.
    pub fn same_line(&self, o: &HalfPlane) -> bool {
        self.alpha == o.alpha && self.beta == o.beta && self.gamma == o.gamma
    }

    /// Slope and intercept when the boundary is v = a·u + b.
    pub fn as_line(&self) -> Option<(Rat, Rat)> {
        if self.beta.is_zero() {
            return None;
        }
        Some((-&self.alpha / &self.beta, &self.gamma / &self.beta))
    }

    pub fn describe(&self) -> String {
        let op = match (self.beta.is_positive(), self.strict) {
            (true, true) => ">",
            (true, false) => ">=",
            (false, true) => "<",
            (false, false) => "<=",
        };
        match self.as_line() {
            Some((a, b)) => format!(
                "v {op} {} u {} {}",
                a,
                if b.is_negative() { "-" } else { "+" },
                b.abs()
            ),
            None => {
                let op = match (self.alpha.is_positive(), self.strict) {
                    (true, true) => ">",
                    (true, false) => ">=",
                    (false, true) => "<",
                    (false, false) => "<=",
                };
                format!("u {op} {}", &self.gamma / &self.alpha)
            }
        }
    }
}

/// The four bounds of the unit square.
pub fn unit_square() -> Vec<HalfPlane> {
    vec![
        HalfPlane::new(Rat::one(), Rat::zero(), Rat::zero(), false, "u>=0"),
        HalfPlane::new(-Rat::one(), Rat::zero(), -Rat::one(), false, "u<=1"),
        HalfPlane::new(Rat::zero(), Rat::one(), Rat::zero(), false, "v>=0"),
        HalfPlane::new(Rat::zero(), -Rat::one(), -Rat::one(), false, "v<=1"),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    #[serde(with = "serde_pq")]
    pub u: Rat,
    #[serde(with = "serde_pq")]
    pub v: Rat,
    pub included: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Annotation {
    pub label: String,
    pub active: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dominated_by: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionPolygon {
    pub constraints: Vec<HalfPlane>,
    pub vertices: Vec<Vertex>,
    pub annotations: Vec<Annotation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Membership {
    Interior,
    BoundaryIncluded,
    BoundaryExcluded,
    Outside,
}

impl Membership {
    pub fn on_boundary(&self) -> bool {
        matches!(
            self,
            Membership::BoundaryIncluded | Membership::BoundaryExcluded
        )
    }

    pub fn in_closure(&self) -> bool {
        !matches!(self, Membership::Outside)
    }
}

fn intersect(a: &HalfPlane, b: &HalfPlane) -> Option<(Rat, Rat)> {
    let det = &a.alpha * &b.beta - &a.beta * &b.alpha;
    if det.is_zero() {
        return None;
    }
    let u = (&a.gamma * &b.beta - &a.beta * &b.gamma) / &det;
    let v = (&a.alpha * &b.gamma - &a.gamma * &b.alpha) / &det;
    Some((u, v))
}

/// Closed polygon of a constraint set: vertices sorted counterclockwise,
/// starting from the lexicographically smallest.
fn closed_vertices(cs: &[HalfPlane]) -> Vec<(Rat, Rat)> {
    let mut pts: Vec<(Rat, Rat)> = Vec::new();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            if let Some((u, v)) = intersect(&cs[i], &cs[j]) {
                if cs.iter().all(|c| !c.slack(&u, &v).is_negative())
                    && !pts.contains(&(u.clone(), v.clone()))
                {
                    pts.push((u, v));
                }
            }
        }
    }
    sort_ccw(&mut pts);
    pts
}

fn sort_ccw(pts: &mut [(Rat, Rat)]) {
    if pts.len() < 3 {
        pts.sort();
        return;
    }
    let n = Rat::from_integer((pts.len() as i64).into());
    let cu = pts.iter().map(|p| p.0.clone()).sum::<Rat>() / &n;
    let cv = pts.iter().map(|p| p.1.clone()).sum::<Rat>() / &n;
    let half = |du: &Rat, dv: &Rat| -> u8 {
        if dv.is_positive() || (dv.is_zero() && du.is_positive()) {
            0
        } else {
            1
        }
    };
    pts.sort_by(|a, b| {
        let (au, av) = (&a.0 - &cu, &a.1 - &cv);
        let (bu, bv) = (&b.0 - &cu, &b.1 - &cv);
        let (ha, hb) = (half(&au, &av), half(&bu, &bv));
        if ha != hb {
            return ha.cmp(&hb);
        }
        let cross = &au * &bv - &av * &bu;
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    });
    let start = (0..pts.len()).min_by(|&i, &j| pts[i].cmp(&pts[j])).unwrap();
    pts.rotate_left(start);
}

/// Intersects the constraints with the unit square.
pub fn build_region(constraints: &[HalfPlane]) -> Result<RegionPolygon> {
    if constraints.is_empty() {
        return Err(Error::Precondition("empty constraint list".into()));
    }
    let mut cs: Vec<HalfPlane> = constraints.to_vec();
    for sq in unit_square() {
        if !cs.iter().any(|c| c.same_set(&sq)) {
            cs.push(sq);
        }
    }
    let pts = closed_vertices(&cs);
    if pts.is_empty() {
        return Err(Error::EmptyRegion);
    }
    let vertices = pts
        .iter()
        .map(|(u, v)| Vertex {
            u: u.clone(),
            v: v.clone(),
            included: !cs.iter().any(|c| c.strict && c.slack(u, v).is_zero()),
        })
        .collect();
    let annotations = annotate(&cs, &pts);
    Ok(RegionPolygon {
        constraints: cs,
        vertices,
        annotations,
    })
}

fn annotate(cs: &[HalfPlane], pts: &[(Rat, Rat)]) -> Vec<Annotation> {
    let base: Vec<HalfPlane> = unit_square()
        .into_iter()
        .chain(
            cs.iter()
                .filter(|c| ["c1", "c2", "c3"].contains(&c.label.as_str()))
                .cloned(),
        )
        .collect();
    let active: Vec<bool> = cs
        .iter()
        .map(|c| pts.iter().filter(|(u, v)| c.slack(u, v).is_zero()).count() >= 2)
        .collect();
    cs.iter()
        .enumerate()
        .map(|(i, c)| {
            let dominated_by = if active[i] {
                None
            } else {
                // prefer active constraints as witnesses
                let mut order: Vec<usize> = (0..cs.len()).filter(|&j| j != i).collect();
                order.sort_by_key(|&j| !active[j]);
                order.into_iter().find_map(|j| {
                    let mut trial = base.clone();
                    trial.push(cs[j].clone());
                    let vs = closed_vertices(&trial);
                    let inside =
                        !vs.is_empty() && vs.iter().all(|(u, v)| !c.slack(u, v).is_negative());
                    (inside && !base.iter().any(|b| b.same_line(&cs[j])))
                        .then(|| cs[j].label.clone())
                })
            };
            let note = if !active[i] && dominated_by.is_none() {
                Some("inactive; implied by the constraint set jointly".to_string())
            } else {
                None
            };
            Annotation {
                label: c.label.clone(),
                active: active[i],
                dominated_by,
                note,
            }
        })
        .collect()
}

impl RegionPolygon {
    pub fn constraint(&self, label: &str) -> Option<&HalfPlane> {
        self.constraints.iter().find(|c| c.label == label)
    }

    pub fn annotation(&self, label: &str) -> Option<&Annotation> {
        self.annotations.iter().find(|a| a.label == label)
    }

    /// Adds a free-text note to the annotation of `label`.
    pub fn add_note(&mut self, label: &str, note: &str) {
        if let Some(a) = self.annotations.iter_mut().find(|a| a.label == label) {
            a.note = Some(match a.note.take() {
                Some(n) => format!("{n}; {note}"),
                None => note.to_string(),
            });
        }
    }

    /// Consecutive vertex pairs with the strictness of the supporting line.
    pub fn edges(&self) -> Vec<(&Vertex, &Vertex, bool)> {
        let n = self.vertices.len();
        if n < 2 {
            return Vec::new();
        }
        let count = if n == 2 { 1 } else { n };
        (0..count)
            .map(|i| {
                let a = &self.vertices[i];
                let b = &self.vertices[(i + 1) % n];
                let strict = self
                    .constraints
                    .iter()
                    .filter(|c| c.slack(&a.u, &a.v).is_zero() && c.slack(&b.u, &b.v).is_zero())
                    .any(|c| c.strict);
                (a, b, strict)
            })
            .collect()
    }
}

pub fn contains(rp: &RegionPolygon, u: &Rat, v: &Rat) -> Membership {
    let mut tight = false;
    let mut tight_strict = false;
    for c in &rp.constraints {
        let s = c.slack(u, v);
        if s.is_negative() {
            return Membership::Outside;
        }
        if s.is_zero() {
            tight = true;
            tight_strict |= c.strict;
        }
    }
    match (tight, tight_strict) {
        (false, _) => Membership::Interior,
        (true, true) => Membership::BoundaryExcluded,
        (true, false) => Membership::BoundaryIncluded,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityCheck {
    pub label: String,
    pub partner: String,
    /// The image of `label` under the duality map.
    pub image: HalfPlane,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub checks: Vec<DualityCheck>,
    /// The (c12, c13) comparison, reported apart from the closure verdict.
    pub c12_c13: Option<DualityCheck>,
    pub closed: bool,
}

const DUAL_PAIRS: [(&str, &str); 7] = [
    ("c2", "c3"),
    ("c5", "c6"),
    ("c9", "c10"),
    ("c1", "c1"),
    ("cdh", "cdh"),
    ("c4", "c4"),
    ("c7", "c7"),
];

/// Checks closure of the constraint set under (u, v) ↦ (1 − v, 1 − u).
pub fn duality_check(rp: &RegionPolygon) -> DualityReport {
    let check = |a: &str, b: &str| -> Option<DualityCheck> {
        let ca = rp.constraint(a)?;
        let cb = rp.constraint(b)?;
        let image = ca.dual();
        Some(DualityCheck {
            label: a.into(),
            partner: b.into(),
            matches: image.same_set(cb),
            image,
        })
    };
    let mut checks = Vec::new();
    for (a, b) in DUAL_PAIRS {
        if let Some(c) = check(a, b) {
            checks.push(c);
            if a != b {
                checks.extend(check(b, a));
            }
        }
    }
    for (a, b) in [("u>=0", "v<=1"), ("u<=1", "v>=0")] {
        checks.extend(check(a, b));
    }
    let closed = checks.iter().all(|c| c.matches);
    DualityReport {
        checks,
        c12_c13: check("c12", "c13"),
        closed,
    }
}
