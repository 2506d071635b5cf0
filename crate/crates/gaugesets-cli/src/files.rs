//! Scenario and region files (JSON, schema `gaugesets/v1`).

use gaugesets::geometry::{ConvexBody, HalfSpace, Region};
use gaugesets::model::{RandomSetModel, Scenario, TRIVIAL_ATOM};
use gaugesets::ExtReal;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA: &str = "gaugesets/v1";

/// Scenario probabilities may miss 1 by this much; they are renormalized.
pub const PROB_SUM_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema: String,
    pub scenarios: Vec<ScenarioEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioEntry {
    pub prob: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atom: Option<String>,
    pub body: BodySpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum BodySpec {
    Point {
        x: Vec<f64>,
    },
    Box {
        lo: Vec<f64>,
        hi: Vec<f64>,
    },
    Polytope {
        vertices: Vec<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        rays: Vec<Vec<f64>>,
    },
    Cone {
        /// needed only when `rays` is empty
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        rays: Vec<Vec<f64>>,
    },
    TranslatedCone {
        apex: Vec<f64>,
        rays: Vec<Vec<f64>>,
    },
    Halfspace {
        normal: Vec<f64>,
        offset: f64,
    },
}

impl BodySpec {
    pub fn to_body(&self) -> gaugesets::Result<ConvexBody> {
        match self {
            BodySpec::Point { x } => ConvexBody::point(x.clone()),
            BodySpec::Box { lo, hi } => ConvexBody::cuboid(lo.clone(), hi.clone()),
            BodySpec::Polytope { vertices, rays } => ConvexBody::polytope(vertices.clone(), rays.clone()),
            BodySpec::Cone { dim, rays } => {
                let d = dim.or_else(|| rays.first().map(Vec::len)).ok_or_else(|| {
                    gaugesets::Error::Format("a cone without rays needs \"dim\"".into())
                })?;
                ConvexBody::cone(d, rays.clone())
            }
            BodySpec::TranslatedCone { apex, rays } => ConvexBody::translated_cone(apex.clone(), rays.clone()),
            BodySpec::Halfspace { normal, offset } => ConvexBody::halfspace(normal.clone(), *offset),
        }
    }
}

fn check_schema(found: &str) -> Result<(), CliError> {
    if found != SCHEMA {
        return Err(CliError::input(format!("schema is \"{found}\", expected \"{SCHEMA}\"")));
    }
    Ok(())
}

pub fn parse_scenario_file(text: &str) -> Result<ScenarioFile, CliError> {
    let file: ScenarioFile =
        serde_json::from_str(text).map_err(|e| CliError::input(format!("scenario file: {e}")))?;
    check_schema(&file.schema)?;
    Ok(file)
}

impl ScenarioFile {
    /// Builds the model, renormalizing probabilities that sum to 1 within
    /// [`PROB_SUM_TOL`].
    pub fn to_model(&self) -> Result<RandomSetModel, CliError> {
        if self.scenarios.is_empty() {
            return Err(CliError::input("scenario file has no scenarios"));
        }
        if self.scenarios.iter().any(|s| !s.prob.is_finite() || s.prob < 0.0) {
            return Err(CliError::input("scenario probabilities must be finite and nonnegative"));
        }
        let total: f64 = self.scenarios.iter().map(|s| s.prob).sum();
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(CliError::input(format!("scenario probabilities sum to {total}")));
        }
        let mut scenarios = Vec::with_capacity(self.scenarios.len());
        for (i, s) in self.scenarios.iter().enumerate() {
            let body = s.body.to_body().map_err(|e| CliError::input(format!("scenario {i}: {e}")))?;
            let atom = s.atom.clone().unwrap_or_else(|| TRIVIAL_ATOM.to_string());
            scenarios.push(Scenario::with_atom(s.prob / total, body, atom));
        }
        Ok(RandomSetModel::new(scenarios)?)
    }
}

/// `f64` or the strings `"inf"` / `"-inf"`.
mod ext_serde {
    use gaugesets::ExtReal;
    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn serialize<S: Serializer>(v: &ExtReal, s: S) -> Result<S::Ok, S::Error> {
        match v {
            ExtReal::Finite(x) => Repr::Num(*x),
            ExtReal::PosInf => Repr::Str("inf".into()),
            ExtReal::NegInf => Repr::Str("-inf".into()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<ExtReal, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) if x.is_finite() => Ok(ExtReal::Finite(x)),
            Repr::Str(s) if s == "inf" => Ok(ExtReal::PosInf),
            Repr::Str(s) if s == "-inf" => Ok(ExtReal::NegInf),
            _ => Err(D::Error::custom("offset must be a finite number, \"inf\" or \"-inf\"")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintEntry {
    pub normal: Vec<f64>,
    #[serde(with = "ext_serde")]
    pub offset: ExtReal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomEntry {
    pub label: String,
    pub empty: bool,
    pub constraints: Vec<ConstraintEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices2d: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rays2d: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionFileMeta {
    /// subcommand that produced the file
    pub command: String,
    /// gauge spec, cone mode, or `null`
    pub gauge: Option<String>,
    /// number of grid directions, `null` on closed-form paths
    pub grid: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionFile {
    pub schema: String,
    pub atoms: Vec<AtomEntry>,
    pub meta: RegionFileMeta,
}

impl AtomEntry {
    /// Negative zeros are written as `0.0` so output does not depend on them.
    pub fn from_region(label: &str, region: &Region) -> Self {
        let constraints = region
            .constraints
            .iter()
            .map(|h| ConstraintEntry {
                normal: h.normal.iter().map(|&x| x + 0.0).collect(),
                offset: match h.offset {
                    ExtReal::Finite(x) => ExtReal::Finite(x + 0.0),
                    t => t,
                },
            })
            .collect();
        let pairs = |v: &[[f64; 2]]| v.iter().map(|p| [p[0] + 0.0, p[1] + 0.0]).collect();
        let (vertices2d, rays2d) = match (&region.chain, region.empty) {
            (Some(c), false) => (Some(pairs(&c.vertices)), Some(pairs(&c.rays))),
            _ => (None, None),
        };
        AtomEntry { label: label.to_string(), empty: region.empty, constraints, vertices2d, rays2d }
    }

    /// The region cut out by the stored constraints.
    pub fn to_region(&self, dim: usize) -> gaugesets::Result<Region> {
        let cons: Vec<HalfSpace> =
            self.constraints.iter().map(|c| HalfSpace::new(c.normal.clone(), c.offset)).collect();
        if self.empty {
            return Ok(Region::empty(dim, cons));
        }
        Region::from_constraints(dim, cons)
    }
}

pub fn parse_region_file(text: &str) -> Result<RegionFile, CliError> {
    let file: RegionFile = serde_json::from_str(text).map_err(|e| CliError::input(format!("region file: {e}")))?;
    check_schema(&file.schema)?;
    Ok(file)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data always serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_SQUARES: &str = r#"{
        "schema": "gaugesets/v1",
        "scenarios": [
            {"prob": 0.5, "body": {"kind": "box", "lo": [0, 0], "hi": [1, 1]}},
            {"prob": 0.5000001, "body": {"kind": "polytope", "vertices": [[0, 0], [3, 0], [3, 3], [0, 3]]}}
        ]
    }"#;

    #[test]
    fn loads_and_renormalizes() {
        let m = parse_scenario_file(TWO_SQUARES).unwrap().to_model().unwrap();
        assert_eq!(m.len(), 2);
        assert!((m.probs().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_files() {
        let wrong_schema = TWO_SQUARES.replace("gaugesets/v1", "gaugesets/v0");
        assert_eq!(parse_scenario_file(&wrong_schema).unwrap_err().code, 3);
        let bad_sum = TWO_SQUARES.replace("0.5000001", "0.6");
        assert_eq!(parse_scenario_file(&bad_sum).unwrap().to_model().unwrap_err().code, 3);
        let unknown_kind = TWO_SQUARES.replace("\"box\"", "\"ball\"");
        assert_eq!(parse_scenario_file(&unknown_kind).unwrap_err().code, 3);
        let extra = TWO_SQUARES.replace("\"prob\": 0.5,", "\"prob\": 0.5, \"weight\": 1,");
        assert_eq!(parse_scenario_file(&extra).unwrap_err().code, 3);
    }

    #[test]
    fn infinite_offsets_round_trip() {
        let f = RegionFile {
            schema: SCHEMA.into(),
            atoms: vec![AtomEntry {
                label: "all".into(),
                empty: true,
                constraints: vec![
                    ConstraintEntry { normal: vec![1.0, 0.0], offset: ExtReal::NegInf },
                    ConstraintEntry { normal: vec![0.1, 0.7], offset: ExtReal::Finite(0.1 + 0.2) },
                ],
                vertices2d: None,
                rays2d: None,
            }],
            meta: RegionFileMeta { command: "region".into(), gauge: Some("mean".into()), grid: Some(8), seed: None },
        };
        let text = to_json(&f);
        assert!(text.contains("\"-inf\""));
        let back = parse_region_file(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(to_json(&back), text);
        assert!(parse_region_file(&text.replace("\"-inf\"", "\"-infinity\"")).is_err());
    }
}
