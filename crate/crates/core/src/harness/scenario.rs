//! Scenario files: one TOML document per experiment.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::action::{ActionModel, EquivariantMap, MapKind};
use crate::error::{Error, Result};
use crate::group::{GroupModel, DEFAULT_CAPACITY};
use crate::wildness::TruncationParams;

pub const SUITES: [&str; 9] = [
    "axiom1",
    "axiom2",
    "subadditivity",
    "interval_diameter",
    "coarse_lip",
    "behrstock",
    "large_proj",
    "bbf_axioms",
    "complex_diag",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionKind {
    LeftRegular,
    PullBack,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionSpec {
    pub g: String,
    #[serde(default = "default_kind")]
    pub kind: ActionKind,
    #[serde(default)]
    pub map: Option<MapKind>,
}

fn default_kind() -> ActionKind {
    ActionKind::LeftRegular
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TruncationSpec {
    pub radius: u32,
    pub tau_slope: f64,
    pub window: Option<i64>,
    pub capacity: usize,
}

impl Default for TruncationSpec {
    fn default() -> Self {
        TruncationSpec {
            radius: 6,
            tau_slope: 0.5,
            window: None,
            capacity: DEFAULT_CAPACITY,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SuiteSpec {
    pub run: Vec<String>,
    /// Extra Axiom 2 probes beyond the radius-2 ball.
    pub probe_extra: Vec<String>,
    pub subadditivity_radius: u32,
    pub interval_radius: u32,
    pub pair_radius: u32,
    pub census_elements: Vec<String>,
    pub profile_radius: u32,
}

impl Default for SuiteSpec {
    fn default() -> Self {
        SuiteSpec {
            run: SUITES.iter().map(|s| s.to_string()).collect(),
            probe_extra: Vec::new(),
            subadditivity_radius: 3,
            interval_radius: 5,
            pair_radius: 4,
            census_elements: vec!["b".into(), "a b".into(), "b a b".into()],
            profile_radius: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ComplexSpec {
    pub coset_radius: u32,
    /// Edge thresholds to sweep; absent means the default `4 * P1 + 1`.
    pub k: Option<Vec<i64>>,
    pub depth: u32,
    pub n_max: u32,
    /// Largest ball radius tried by the bottleneck check.
    pub bottleneck_max: u32,
    /// Largest four-point delta accepted.
    pub delta_max: f64,
    pub vertex_limit: usize,
}

impl Default for ComplexSpec {
    fn default() -> Self {
        ComplexSpec {
            coset_radius: 4,
            k: None,
            depth: 8,
            n_max: 8,
            bottleneck_max: 2,
            delta_max: 1.0,
            vertex_limit: crate::complex::DEFAULT_VERTEX_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSpec {
    pub dir: PathBuf,
    pub dot: bool,
}

impl Default for OutputSpec {
    fn default() -> Self {
        OutputSpec {
            dir: PathBuf::from("out"),
            dot: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub group: GroupModel,
    pub action: ActionSpec,
    #[serde(default)]
    pub truncation: TruncationSpec,
    #[serde(default)]
    pub suites: SuiteSpec,
    #[serde(default)]
    pub complex: ComplexSpec,
    #[serde(default)]
    pub output: OutputSpec,
}

impl Scenario {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let s: Scenario = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    /// Reads a scenario; a relative output directory is resolved against the
    /// file's directory.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        let mut s = Scenario::from_toml_str(&text)?;
        if s.output.dir.is_relative() {
            if let Some(parent) = path.parent() {
                s.output.dir = parent.join(&s.output.dir);
            }
        }
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        self.group.validate().map_err(|e| Error::Config(e.to_string()))?;
        self.truncation_params()
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        for s in &self.suites.run {
            if !SUITES.contains(&s.as_str()) {
                return Err(Error::UnknownSuite(s.clone()));
            }
        }
        if self.suites.run.iter().any(|s| s == "complex_diag") {
            if let Some(k) = &self.complex.k {
                if k.is_empty() || k.iter().any(|&k| k < 1) {
                    return Err(Error::Config("complex.k must list positive thresholds".into()));
                }
            }
        }
        if self.action.kind == ActionKind::PullBack && self.action.map.is_none() {
            return Err(Error::Config("pull_back action needs [action.map]".into()));
        }
        let census: &[String] = if self.runs("large_proj") { &self.suites.census_elements } else { &[] };
        for w in self.suites.probe_extra.iter().chain(census) {
            self.group.parse(w).map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }

    pub fn truncation_params(&self) -> TruncationParams {
        TruncationParams {
            radius: self.truncation.radius,
            tau_slope: self.truncation.tau_slope,
            window: self.truncation.window,
            capacity: self.truncation.capacity,
        }
    }

    pub fn build_action(&self) -> Result<ActionModel> {
        let g = self.group.parse(&self.action.g)?;
        let base = ActionModel::left_regular(self.group.clone(), g)?;
        match self.action.kind {
            ActionKind::LeftRegular => Ok(base),
            ActionKind::PullBack => {
                let spec = self.action.map.as_ref().expect("validated");
                let map = EquivariantMap::from_kind(spec, &self.group)?;
                ActionModel::pull_back(base, map)
            }
        }
    }

    pub fn runs(&self, suite: &str) -> bool {
        self.suites.run.iter().any(|s| s == suite)
    }
}
