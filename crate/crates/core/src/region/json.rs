use serde::{Deserialize, Serialize};

use super::{Annotation, HalfPlane, RegionPolygon, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionJson {
    pub constraints: Vec<HalfPlane>,
    pub vertices: Vec<Vertex>,
    pub annotations: Vec<Annotation>,
}

impl From<&RegionPolygon> for RegionJson {
    fn from(rp: &RegionPolygon) -> Self {
        RegionJson {
            constraints: rp.constraints.clone(),
            vertices: rp.vertices.clone(),
            annotations: rp.annotations.clone(),
        }
    }
}

impl From<RegionJson> for RegionPolygon {
    fn from(j: RegionJson) -> Self {
        RegionPolygon {
            constraints: j.constraints,
            vertices: j.vertices,
            annotations: j.annotations,
        }
    }
}

pub fn emit_region_json(rp: &RegionPolygon) -> String {
    serde_json::to_string_pretty(&RegionJson::from(rp)).expect("region serializes")
}

pub fn parse_region_json(text: &str) -> Result<RegionPolygon> {
    serde_json::from_str::<RegionJson>(text)
        .map(Into::into)
        .map_err(|e| Error::Precondition(format!("region JSON: {e}")))
}
