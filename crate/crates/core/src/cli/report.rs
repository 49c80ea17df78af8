use std::collections::BTreeMap;

use serde::Serialize;

use crate::classifier::{
    gressman_endpoint, height_relation_check, region_for, summability_endpoint, Case,
    Classification, Endpoint,
};
use crate::error::Result;
use crate::factorization::{CanonicalFactorization, RootFactor, RootLocation};
use crate::poly::rat::{serde_pq, to_pq, Rat};
use crate::region::{duality_check, HalfPlane, RegionPolygon, Vertex};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KappaRecord {
    pub s: u32,
    pub r: u32,
    pub m: u32,
    pub swapped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorRecord {
    pub factor: String,
    pub multiplicity: u32,
    pub real_roots: usize,
    pub rational_roots: Vec<String>,
    pub approximations: Vec<f64>,
}

impl From<&RootFactor> for FactorRecord {
    fn from(f: &RootFactor) -> Self {
        FactorRecord {
            factor: f.minimal_factor.to_string(),
            multiplicity: f.multiplicity,
            real_roots: f.real_root_count,
            rational_roots: f.rational_roots.iter().map(to_pq).collect(),
            approximations: f.real_root_approximations.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorizationRecord {
    #[serde(rename = "C", with = "serde_pq")]
    pub c: Rat,
    pub nu1: u32,
    pub nu2: u32,
    pub factors: Vec<FactorRecord>,
}

impl From<&CanonicalFactorization> for FactorizationRecord {
    fn from(f: &CanonicalFactorization) -> Self {
        FactorizationRecord {
            c: f.c.clone(),
            nu1: f.nu1,
            nu2: f.nu2,
            factors: f.factors.iter().map(FactorRecord::from).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HessianRecord {
    #[serde(rename = "T")]
    pub t: u32,
    pub max_root_location: RootLocation,
    #[serde(with = "serde_pq")]
    pub h_w: Rat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub version: String,
    pub input: String,
    pub kappa: Option<KappaRecord>,
    #[serde(with = "serde_pq")]
    pub d_h: Rat,
    pub factorization: Option<FactorizationRecord>,
    #[serde(rename = "N")]
    pub n: u32,
    pub hessian: HessianRecord,
    pub case: String,
    pub conditions: Vec<HalfPlane>,
    pub vertices: Vec<Vertex>,
    pub endpoints: BTreeMap<String, Endpoint>,
    pub flags: BTreeMap<String, bool>,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn is_excluded(&self) -> bool {
        self.case.starts_with("excluded")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        let mut out = format!("input: {}\ncase: {}\n", self.input, self.case);
        if self.is_excluded() {
            for n in &self.notes {
                out += &format!("reason: {n}\n");
            }
            return out;
        }
        if let Some(k) = &self.kappa {
            let (a, b) = (
                Rat::new(k.s.into(), k.m.into()),
                Rat::new(k.r.into(), k.m.into()),
            );
            out += &format!(
                "kappa: ({a}, {b}){}\n",
                if k.swapped {
                    " after exchanging y1 and y2"
                } else {
                    ""
                }
            );
        }
        out += &format!(
            "d_h = {}, N = {}, T = {}, h(w) = {}\n",
            self.d_h, self.n, self.hessian.t, self.hessian.h_w
        );
        for c in &self.conditions {
            if c.label.starts_with('c') {
                out += &format!("  {}\n", c.describe());
            }
        }
        for (name, e) in &self.endpoints {
            out += &format!("{name} endpoint: ({}, {}) [{}]\n", e.u, e.v, e.label);
        }
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        out
    }
}

pub fn case_name(c: &Case) -> String {
    match c {
        Case::Excluded(r) => format!("excluded: {}", r.describe()),
        other => other.tag().to_string(),
    }
}

/// Report for a classification; `region` is returned for SVG output.
pub fn build_report(
    input: &str,
    c: &Classification,
) -> Result<(AnalysisReport, Option<RegionPolygon>)> {
    let mut flags = BTreeMap::new();
    flags.insert("advisory".to_string(), c.advisory);
    flags.insert("redundant".to_string(), c.redundancy_flag);
    flags.insert("tie".to_string(), c.tie_flag);
    let mut notes = c.diagnostics.clone();
    let kappa = c.kappa.map(|k| KappaRecord {
        s: k.s,
        r: k.r,
        m: k.m,
        swapped: k.swapped,
    });
    let exact = c.exact.as_deref();
    let hessian = HessianRecord {
        t: c.t,
        max_root_location: c.location,
        h_w: c.h_w.clone(),
        w: exact.map(|e| e.hessian.w.to_string()),
    };
    let mut report = AnalysisReport {
        version: VERSION.to_string(),
        input: input.to_string(),
        kappa,
        d_h: c.d_h.clone(),
        factorization: exact.map(|e| FactorizationRecord::from(&e.factorization)),
        n: c.n,
        hessian,
        case: case_name(&c.case),
        conditions: Vec::new(),
        vertices: Vec::new(),
        endpoints: BTreeMap::new(),
        flags,
        notes: Vec::new(),
    };
    if c.case.is_excluded() {
        report.notes = notes;
        return Ok((report, None));
    }
    let region = region_for(c)?;
    report
        .endpoints
        .insert("summability".into(), summability_endpoint(c)?);
    report
        .endpoints
        .insert("gressman".into(), gressman_endpoint(&c.h_w));
    for a in &region.annotations {
        if let Some(n) = &a.note {
            notes.push(format!("{}: {n}", a.label));
        }
    }
    let duality = duality_check(&region);
    if let Some(d) = &duality.c12_c13 {
        if !d.matches {
            notes.push(format!(
                "c12 is not mapped to c13 by (u, v) -> (1 - v, 1 - u): its image is {}",
                d.image.describe()
            ));
        }
    }
    if exact.is_some() {
        let h = height_relation_check(c)?;
        notes.push(format!(
            "height relation {}: h(phi) = {}, h(w) = {}, {:?}",
            h.relation, h.h_phi, h.h_w, h.status
        ));
    }
    report.conditions = region.constraints.clone();
    report.vertices = region.vertices.clone();
    report.notes = notes;
    Ok((report, Some(region)))
}
