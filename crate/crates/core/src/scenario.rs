//! Versioned JSON scenario documents.
//!
//! ```json
//! {
//!   "version": 1,
//!   "globals": { "alpha": 0.001, "beta": 0.01, "eta": 0.5, "psi_bounds": [1.0, 2.0] },
//!   "athletes": [
//!     { "id": "1", "t_swim": 1500, "r_swim": 1, "draft_share": 0.2,
//!       "base_cost": 1.0, "prize_diff": 1.0, "weight": 1.0, "theta": 0.0 }
//!   ],
//!   "graph": [["2", "1"]],
//!   "solver": { "abs_tol": 1e-12, "max_iter": 200 }
//! }
//! ```
//!
//! `weight` defaults to 1, `theta` to 0; `graph` and `solver` are optional.
//! Unknown fields are rejected with their path.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AthleteRecord, DraftingGraph, GlobalParams, Scenario};
use crate::stage2::SolverSettings;

pub const SCENARIO_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub version: u32,
    pub globals: GlobalsBlock,
    pub athletes: Vec<AthleteEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub graph: Vec<(AthleteId, AthleteId)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverBlock>,
}

/// Athlete ids may be written as strings or nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AthleteId {
    Text(String),
    Number(u64),
}

impl AthleteId {
    fn into_string(self) -> String {
        match self {
            AthleteId::Text(s) => s,
            AthleteId::Number(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalsBlock {
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
    pub psi_bounds: [f64; 2],
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AthleteEntry {
    pub id: AthleteId,
    pub t_swim: f64,
    pub r_swim: u32,
    pub draft_share: f64,
    pub base_cost: f64,
    pub prize_diff: f64,
    #[serde(default = "one")]
    pub weight: f64,
    #[serde(default)]
    pub theta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket_growth: Option<f64>,
}

impl ScenarioFile {
    pub fn into_scenario(self) -> Result<Scenario> {
        if self.version != SCENARIO_VERSION {
            return Err(Error::Version {
                found: self.version,
                expected: SCENARIO_VERSION,
            });
        }
        let g = self.globals;
        let globals = GlobalParams {
            alpha: g.alpha,
            beta: g.beta,
            eta: g.eta,
            psi_lo: g.psi_bounds[0],
            psi_hi: g.psi_bounds[1],
        };
        let athletes = self
            .athletes
            .into_iter()
            .map(|a| AthleteRecord {
                id: a.id.into_string(),
                t_swim: a.t_swim,
                r_swim: a.r_swim,
                draft_share: a.draft_share,
                base_cost: a.base_cost,
                prize_diff: a.prize_diff,
                weight: a.weight,
                theta: a.theta,
            })
            .collect();
        let mut graph = DraftingGraph::default();
        for (from, to) in self.graph {
            graph.edges.insert((from.into_string(), to.into_string()));
        }
        let mut settings = SolverSettings::default();
        if let Some(s) = self.solver {
            settings.abs_tol = s.abs_tol.unwrap_or(settings.abs_tol);
            settings.max_iter = s.max_iter.unwrap_or(settings.max_iter);
            settings.bracket_growth = s.bracket_growth.unwrap_or(settings.bracket_growth);
        }
        let scenario = Scenario {
            athletes,
            globals,
            graph,
            settings,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn from_scenario(scenario: &Scenario) -> Self {
        let defaults = SolverSettings::default();
        let s = &scenario.settings;
        let solver = (s != &defaults).then_some(SolverBlock {
            abs_tol: Some(s.abs_tol),
            max_iter: Some(s.max_iter),
            bracket_growth: Some(s.bracket_growth),
        });
        ScenarioFile {
            version: SCENARIO_VERSION,
            globals: GlobalsBlock {
                alpha: scenario.globals.alpha,
                beta: scenario.globals.beta,
                eta: scenario.globals.eta,
                psi_bounds: [scenario.globals.psi_lo, scenario.globals.psi_hi],
            },
            athletes: scenario
                .athletes
                .iter()
                .map(|a| AthleteEntry {
                    id: AthleteId::Text(a.id.clone()),
                    t_swim: a.t_swim,
                    r_swim: a.r_swim,
                    draft_share: a.draft_share,
                    base_cost: a.base_cost,
                    prize_diff: a.prize_diff,
                    weight: a.weight,
                    theta: a.theta,
                })
                .collect(),
            graph: scenario
                .graph
                .edges
                .iter()
                .map(|(a, b)| (AthleteId::Text(a.clone()), AthleteId::Text(b.clone())))
                .collect(),
            solver,
        }
    }
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: ScenarioFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path.is_empty() || path == "." {
            Error::Parse(inner.to_string())
        } else {
            Error::Parse(format!("at `{path}`: {inner}"))
        }
    })?;
    file.into_scenario()
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_scenario(&text)
}

/// Pretty-printed scenario document.
pub fn scenario_to_json(scenario: &Scenario) -> String {
    let mut s = serde_json::to_string_pretty(&ScenarioFile::from_scenario(scenario)).expect("serializable");
    s.push('\n');
    s
}

pub fn save_scenario(scenario: &Scenario, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, scenario_to_json(scenario)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "version": 1,
        "globals": { "alpha": 0.001, "beta": 0.01, "eta": 0.5, "psi_bounds": [1.0, 2.0] },
        "athletes": [
            { "id": 1, "t_swim": 1500, "r_swim": 1, "draft_share": 0.0, "base_cost": 1.0, "prize_diff": 1.0 },
            { "id": "2", "t_swim": 1510, "r_swim": 2, "draft_share": 0.5, "base_cost": 1.0, "prize_diff": 1.0,
              "weight": 1.5, "theta": 0.3 }
        ],
        "graph": [["2", 1]]
    }"#;

    #[test]
    fn minimal_file_loads() {
        let s = parse_scenario(MINIMAL).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.athletes[0].id, "1");
        assert_eq!(s.athletes[0].weight, 1.0);
        assert_eq!(s.athletes[1].theta, 0.3);
        assert!(s.graph.edges.contains(&("2".to_string(), "1".to_string())));
        assert_eq!(s.settings, SolverSettings::default());
    }

    #[test]
    fn bad_eta_names_field() {
        let text = MINIMAL.replace("\"eta\": 0.5", "\"eta\": 1.2");
        match parse_scenario(&text) {
            Err(Error::Validation { path, reason }) => {
                assert_eq!(path, "globals.eta");
                assert!(reason.contains("(0,1)"), "{reason}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_id_rejected() {
        let text = MINIMAL.replace("\"id\": \"2\"", "\"id\": \"1\"");
        match parse_scenario(&text) {
            Err(Error::Validation { path, reason }) => {
                assert_eq!(path, "athletes[1].id");
                assert!(reason.contains("duplicate"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_field_reports_path() {
        let text = MINIMAL.replace("\"theta\": 0.3", "\"theta\": 0.3, \"speed\": 3");
        match parse_scenario(&text) {
            Err(Error::Parse(msg)) => {
                assert!(msg.contains("athletes[1]"), "{msg}");
                assert!(msg.contains("speed"), "{msg}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn version_mismatch() {
        let text = MINIMAL.replace("\"version\": 1", "\"version\": 2");
        assert_eq!(
            parse_scenario(&text),
            Err(Error::Version {
                found: 2,
                expected: 1
            })
        );
    }

    #[test]
    fn solver_block_overrides_defaults() {
        let text = MINIMAL.replace("\"graph\"", "\"solver\": {\"abs_tol\": 1e-11, \"max_iter\": 50}, \"graph\"");
        let s = parse_scenario(&text).unwrap();
        assert_eq!(s.settings.abs_tol, 1e-11);
        assert_eq!(s.settings.max_iter, 50);
        assert_eq!(s.settings.bracket_growth, 4.0);
        assert_eq!(parse_scenario(&scenario_to_json(&s)).unwrap(), s);
    }
}
