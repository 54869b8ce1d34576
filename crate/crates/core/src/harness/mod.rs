//! Scenario-driven pipeline: audit, lemma suites, complexes, reports.

pub mod audit;
pub mod report;
pub mod scenario;
pub mod suites;

use std::sync::OnceLock;

use serde::Serialize;

use crate::action::ActionModel;
use crate::error::Result;
use crate::wildness::{Constants, RadiusLadder, Truncation};

pub use audit::{audit_axial_pair, AuditVerdict};
pub use report::{run_scenario, Overrides, Report};
pub use scenario::Scenario;
pub use suites::{verify_lemma, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Combined verdict: any FAIL wins, then any INCONCLUSIVE.
    pub fn combine<I: IntoIterator<Item = Verdict>>(items: I) -> Verdict {
        let mut out = Verdict::Pass;
        for v in items {
            match v {
                Verdict::Fail => return Verdict::Fail,
                Verdict::Inconclusive => out = Verdict::Inconclusive,
                Verdict::Pass => {}
            }
        }
        out
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 2,
            Verdict::Inconclusive => 3,
        }
    }
}

/// Everything computed once per scenario: the action and a radius ladder
/// with its constant estimates.
pub struct Session {
    scenario: Scenario,
    action: ActionModel,
    ladder: RadiusLadder,
    constants: Vec<OnceLock<std::result::Result<Constants, String>>>,
}

/// Rungs kept below the configured radius.
pub const LADDER_DEPTH: u32 = 3;

impl Session {
    pub fn new(scenario: Scenario) -> Result<Self> {
        scenario.validate()?;
        let action = scenario.build_action()?;
        let ladder = RadiusLadder::new(&action, &scenario.truncation_params(), LADDER_DEPTH)?;
        let constants = ladder.rungs().iter().map(|_| OnceLock::new()).collect();
        Ok(Session {
            scenario,
            action,
            ladder,
            constants,
        })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn action(&self) -> &ActionModel {
        &self.action
    }

    pub fn ladder(&self) -> &RadiusLadder {
        &self.ladder
    }

    pub fn top(&self) -> &Truncation {
        self.ladder.top()
    }

    pub fn prev(&self) -> &Truncation {
        self.ladder.prev()
    }

    pub fn constants_at(&self, rung: usize) -> std::result::Result<&Constants, String> {
        self.constants[rung]
            .get_or_init(|| Constants::compute(&self.ladder.rungs()[rung]).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn constants(&self) -> std::result::Result<&Constants, String> {
        self.constants_at(self.constants.len() - 1)
    }

    pub fn prev_constants(&self) -> std::result::Result<&Constants, String> {
        self.constants_at(self.constants.len().saturating_sub(2))
    }

    /// `M`, `L`, `N` agree at the top two rungs.
    pub fn constants_stable(&self) -> bool {
        match (self.prev_constants(), self.constants()) {
            (Ok(a), Ok(b)) => (a.m_hat, a.l_hat, a.n_hat) == (b.m_hat, b.l_hat, b.n_hat),
            _ => false,
        }
    }
}
