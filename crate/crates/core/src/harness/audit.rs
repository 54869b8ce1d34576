use std::collections::BTreeMap;

use serde::Serialize;

use super::{Session, Verdict};
use crate::group::GroupElement;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Axiom1Report {
    pub status: Verdict,
    pub f_hat_sizes: BTreeMap<u32, usize>,
    pub witnesses: Vec<GroupElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeRecord {
    pub h: GroupElement,
    pub m_by_radius: BTreeMap<u32, Option<i64>>,
    pub stable: bool,
    pub vacuous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Axiom2Witness {
    pub h: GroupElement,
    pub w: GroupElement,
    pub index: i64,
    pub window: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Axiom2Report {
    pub status: Verdict,
    pub m_hat: Option<i64>,
    pub m_by_radius: BTreeMap<u32, Option<i64>>,
    pub vacuous: bool,
    pub probes: Vec<ProbeRecord>,
    pub witness: Option<Axiom2Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstantsRecord {
    pub m_hat: i64,
    pub l_hat: i64,
    pub n_hat: i64,
    pub theta_hat: Option<i64>,
    pub stable: bool,
    /// Smallest rung from which `M` keeps its top value.
    pub m_stable_since: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditVerdict {
    pub axiom1: Axiom1Report,
    pub axiom2: Axiom2Report,
    pub virtually_cyclic: bool,
    pub constants: Option<ConstantsRecord>,
    pub radii: Vec<u32>,
}

pub fn audit_axial_pair(session: &Session) -> AuditVerdict {
    let radii: Vec<u32> = session.ladder().rungs().iter().map(|t| t.radius()).collect();
    let axiom1 = audit_axiom1(session);
    let axiom2 = audit_axiom2(session);
    let virtually_cyclic = session.top().tame_subgroup().virtually_cyclic;
    let constants = session.constants().ok().map(|c| {
        let m_stable_since = radii
            .iter()
            .rev()
            .take_while(|r| axiom2.m_by_radius.get(r).copied().flatten() == Some(c.m_hat))
            .last()
            .copied();
        ConstantsRecord {
            m_hat: c.m_hat,
            l_hat: c.l_hat,
            n_hat: c.n_hat,
            theta_hat: None,
            stable: session.constants_stable(),
            m_stable_since,
        }
    });
    AuditVerdict {
        axiom1,
        axiom2,
        virtually_cyclic,
        constants,
        radii,
    }
}

/// FAIL when `|F|` grows strictly over the rungs, PASS when it is constant.
fn audit_axiom1(session: &Session) -> Axiom1Report {
    let rungs = session.ladder().rungs();
    let sizes: Vec<usize> = rungs.iter().map(|t| t.tame_subgroup().f_hat.len()).collect();
    let f_hat_sizes = rungs.iter().map(|t| t.radius()).zip(sizes.iter().copied()).collect();
    let top_f = session.top().tame_subgroup().f_hat.clone();
    let status = if sizes.len() < 3 {
        Verdict::Inconclusive
    } else if sizes.windows(2).all(|w| w[1] > w[0]) {
        Verdict::Fail
    } else if sizes.windows(2).all(|w| w[1] == w[0]) {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    let witnesses = if status == Verdict::Fail { top_f } else { Vec::new() };
    Axiom1Report {
        status,
        f_hat_sizes,
        witnesses,
    }
}

/// Probes are the radius-2 ball plus configured extras.
pub fn probe_set(session: &Session) -> Vec<GroupElement> {
    let group = session.action().group();
    let mut probes: Vec<GroupElement> = session.top().ball().within(2).to_vec();
    for w in &session.scenario().suites.probe_extra {
        if let Ok(x) = group.parse(w) {
            if !probes.contains(&x) {
                probes.push(x);
            }
        }
    }
    probes
}

fn audit_axiom2(session: &Session) -> Axiom2Report {
    let rungs = session.ladder().rungs();
    let top = session.top();
    let prev_r = session.prev().radius();
    let mut probes = Vec::new();
    let mut witness = None;
    let mut all_stable = true;
    let mut all_vacuous = true;
    for h in probe_set(session) {
        let mut m_by_radius = BTreeMap::new();
        let mut vacuous = true;
        for t in rungs {
            let est = t.m_estimate(&h);
            if t.radius() == top.radius() {
                vacuous = est.vacuous;
                if est.value.is_none() && witness.is_none() {
                    let (w, index) = est.worst.clone().expect("exhaustion records its witness");
                    witness = Some(Axiom2Witness {
                        h: h.clone(),
                        w,
                        index,
                        window: t.window(),
                    });
                }
            }
            m_by_radius.insert(t.radius(), est.value);
        }
        let now = m_by_radius[&top.radius()];
        let stable = now.is_some() && m_by_radius[&prev_r] == now;
        all_stable &= stable;
        all_vacuous &= vacuous;
        probes.push(ProbeRecord {
            h,
            m_by_radius,
            stable,
            vacuous,
        });
    }
    let e = session.action().group().identity();
    let m_by_radius: BTreeMap<u32, Option<i64>> =
        rungs.iter().map(|t| (t.radius(), t.m_estimate(&e).value)).collect();
    let status = if witness.is_some() {
        Verdict::Fail
    } else if all_stable || all_vacuous {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    Axiom2Report {
        status,
        m_hat: m_by_radius[&top.radius()],
        m_by_radius,
        vacuous: all_vacuous,
        probes,
        witness,
    }
}
