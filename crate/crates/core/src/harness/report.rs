//! The `report.json` artifact and optional graph exports.

use std::path::{Path, PathBuf};

use serde::Serialize;

use super::audit::{audit_axial_pair, AuditVerdict};
use super::suites::{complex_for_k, complex_k_values, projection_stage, run_suites, SuiteReport};
use super::{Scenario, Session, Verdict};
use crate::error::Result;
use crate::group::GroupElement;
use crate::wildness::TameStatus;

pub const SCHEMA: u32 = 1;

/// Command-line overrides applied on top of a scenario file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub radius: Option<u32>,
    pub out: Option<PathBuf>,
    pub dot: bool,
}

impl Overrides {
    pub fn apply(&self, scenario: &mut Scenario) {
        if let Some(r) = self.radius {
            scenario.truncation.radius = r;
        }
        if let Some(out) = &self.out {
            scenario.output.dir = out.clone();
        }
        scenario.output.dot |= self.dot;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileRow {
    pub element: GroupElement,
    pub status: TameStatus,
    pub interval: Vec<i64>,
    pub center: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub scenario: String,
    pub radius: u32,
    pub audit: AuditVerdict,
    pub suites: Vec<SuiteReport>,
    pub profiles: Vec<ProfileRow>,
    pub verdict: Verdict,
    pub exit_code: i32,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn build_report(session: &Session) -> Result<Report> {
    let scenario = session.scenario();
    let audit = audit_axial_pair(session);
    let names: Vec<&str> = scenario.suites.run.iter().map(String::as_str).collect();
    let suites = run_suites(session, &names)?;
    let top = session.top();
    let profiles = top
        .ball()
        .within(scenario.suites.profile_radius.min(top.radius()))
        .iter()
        .map(|w| {
            let p = top.profile(w);
            ProfileRow {
                element: p.element,
                status: p.status,
                interval: p.interval,
                center: p.center,
            }
        })
        .collect();
    let verdict = if suites.is_empty() {
        Verdict::combine([audit.axiom1.status, audit.axiom2.status])
    } else {
        Verdict::combine(suites.iter().map(|s| s.status))
    };
    Ok(Report {
        schema: SCHEMA,
        scenario: scenario.name.clone(),
        radius: top.radius(),
        audit,
        suites,
        profiles,
        verdict,
        exit_code: verdict.exit_code(),
    })
}

/// Writes the projection table and, per `K`, DOT and distance tables.
pub fn export_graphs(session: &Session, dir: &Path) -> Result<Vec<PathBuf>> {
    let st = projection_stage(session)?;
    let limit = session.scenario().complex.vertex_limit;
    let mut written = Vec::new();
    let mut write = |name: String, body: String| -> Result<()> {
        let path = dir.join(name);
        std::fs::write(&path, body)?;
        written.push(path);
        Ok(())
    };
    write("projections.tsv".into(), st.now.to_tsv())?;
    for k in complex_k_values(session, &st) {
        let (pc, qt) = complex_for_k(session, &st, k)?;
        write(format!("complex_k{k}.dot"), pc.to_dot())?;
        write(format!("quasi_tree_k{k}.dot"), qt.to_dot())?;
        if let Ok(tsv) = pc.distances_tsv(limit) {
            write(format!("complex_k{k}_distances.tsv"), tsv)?;
        }
    }
    Ok(written)
}

/// Runs a scenario end to end and writes `report.json` into its output directory.
pub fn run_scenario(mut scenario: Scenario, overrides: &Overrides) -> Result<(Report, i32)> {
    overrides.apply(&mut scenario);
    let session = Session::new(scenario)?;
    let report = build_report(&session)?;
    let dir = session.scenario().output.dir.clone();
    std::fs::create_dir_all(&dir)?;
    std::fs::write(dir.join("report.json"), report.to_json())?;
    if session.scenario().output.dot {
        export_graphs(&session, &dir)?;
    }
    let code = report.exit_code;
    Ok((report, code))
}
