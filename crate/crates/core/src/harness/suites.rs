//! Verification suites. Each case is checked only when the estimates it
//! depends on agree at the top two rungs; other cases are counted as
//! inconclusive rather than as violations.

use std::collections::BTreeMap;

use serde::Serialize;

use super::audit::audit_axial_pair;
use super::{Session, Verdict};
use crate::complex::{
    bottleneck_check, build_projection_complex, build_quasi_tree_of_spaces, default_k, hyperbolicity_delta,
    translation_growth, TruncGraph,
};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::projections::{f_h, large_projection_census, AxiomReport, ProjectionSystem};
use crate::wildness::Truncation;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub status: Verdict,
    pub checked: usize,
    pub violations: usize,
    pub inconclusive_cases: usize,
    pub worst: Option<String>,
    pub constants: BTreeMap<String, i64>,
    pub details: serde_json::Value,
    pub note: Option<String>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            status: Verdict::Inconclusive,
            checked: 0,
            violations: 0,
            inconclusive_cases: 0,
            worst: None,
            constants: BTreeMap::new(),
            details: serde_json::Value::Null,
            note: None,
        }
    }

    fn inconclusive(suite: &str, note: impl Into<String>) -> Self {
        let mut r = SuiteReport::new(suite);
        r.note = Some(note.into());
        r
    }

    /// FAIL on any violation; INCONCLUSIVE if nothing could be checked.
    fn settle(mut self) -> Self {
        self.status = if self.violations > 0 {
            Verdict::Fail
        } else if self.checked == 0 {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        self
    }
}

/// Projection systems at the top two rungs and their axiom report.
pub struct ProjectionStage<'a> {
    pub now: ProjectionSystem<'a>,
    pub prev: ProjectionSystem<'a>,
    pub report: AxiomReport,
}

pub fn projection_stage(session: &Session) -> Result<ProjectionStage<'_>> {
    let c = session.constants().map_err(Error::AxiomsFailed)?;
    let radius = session.scenario().complex.coset_radius.min(session.top().radius());
    let now = ProjectionSystem::build(session.top(), radius)?;
    let prev = ProjectionSystem::build(session.prev(), radius)?;
    let report = now.check_axioms(&prev, c.m_hat, c.n_hat)?;
    Ok(ProjectionStage { now, prev, report })
}

/// Runs one suite by name.
pub fn verify_lemma(session: &Session, suite: &str) -> Result<SuiteReport> {
    run_suites(session, &[suite]).map(|mut v| v.remove(0))
}

/// Runs several suites, sharing the projection stage between them.
pub fn run_suites(session: &Session, suites: &[&str]) -> Result<Vec<SuiteReport>> {
    let mut stage: Option<std::result::Result<ProjectionStage<'_>, String>> = None;
    let mut out = Vec::new();
    for &suite in suites {
        let report = match suite {
            "axiom1" | "axiom2" => axiom_suite(session, suite),
            "subadditivity" => subadditivity(session),
            "interval_diameter" => interval_diameter(session),
            "coarse_lip" => coarse_lip(session),
            "behrstock" => behrstock(session),
            "large_proj" => large_proj(session),
            "bbf_axioms" | "complex_diag" => {
                let st = stage.get_or_insert_with(|| projection_stage(session).map_err(|e| e.to_string()));
                match st {
                    Err(e) => SuiteReport::inconclusive(suite, e.clone()),
                    Ok(st) if suite == "bbf_axioms" => bbf_axioms(session, st),
                    Ok(st) => complex_diag(session, st),
                }
            }
            other => return Err(Error::UnknownSuite(other.to_string())),
        };
        out.push(report);
    }
    Ok(out)
}

fn axiom_suite(session: &Session, suite: &str) -> SuiteReport {
    let audit = audit_axial_pair(session);
    let mut r = SuiteReport::new(suite);
    if suite == "axiom1" {
        r.status = audit.axiom1.status;
        r.checked = audit.axiom1.f_hat_sizes.len();
        r.violations = usize::from(audit.axiom1.status == Verdict::Fail);
        if !audit.axiom1.witnesses.is_empty() {
            r.worst = Some(format!("{} elements t with tD meeting D", audit.axiom1.witnesses.len()));
        }
        r.details = serde_json::to_value(&audit.axiom1).unwrap_or_default();
    } else {
        r.status = audit.axiom2.status;
        r.checked = audit.axiom2.probes.len();
        r.violations = usize::from(audit.axiom2.status == Verdict::Fail);
        r.worst = audit
            .axiom2
            .witness
            .as_ref()
            .map(|w| format!("h = {}, w = {}: no coverage within window {}", w.h, w.w, w.window));
        if let Some(m) = audit.axiom2.m_hat {
            r.constants.insert("M".into(), m);
        }
        r.details = serde_json::to_value(&audit.axiom2).unwrap_or_default();
    }
    r
}

/// Global `M` at the top rung, provided it is stable.
fn stable_constants(session: &Session, r: &mut SuiteReport) -> Option<(i64, i64, i64)> {
    match session.constants() {
        Ok(c) => {
            r.constants.insert("M".into(), c.m_hat);
            r.constants.insert("L".into(), c.l_hat);
            r.constants.insert("N".into(), c.n_hat);
            if session.constants_stable() {
                Some((c.m_hat, c.l_hat, c.n_hat))
            } else {
                r.note = Some("constants not stable across the top two radii".into());
                None
            }
        }
        Err(e) => {
            r.note = Some(e);
            None
        }
    }
}

/// `m(h)` at the top rung if it agrees with the previous rung.
fn stable_m(session: &Session, h: &GroupElement) -> Option<i64> {
    let now = session.top().m_estimate(h).value?;
    (session.prev().m_estimate(h).value == Some(now)).then_some(now)
}

fn stable_center(session: &Session, w: &GroupElement) -> Option<i64> {
    let now = session.top().center_opt(w)?;
    (session.prev().center_opt(w) == Some(now)).then_some(now)
}

fn within(tr: &Truncation, r: u32) -> &[GroupElement] {
    tr.ball().within(r.min(tr.radius()))
}

pub fn subadditivity(session: &Session) -> SuiteReport {
    let mut r = SuiteReport::new("subadditivity");
    if stable_constants(session, &mut r).is_none() {
        return r;
    }
    let elems = within(session.top(), session.scenario().suites.subadditivity_radius);
    let mut worst_excess = 0i64;
    let mut by_excess: BTreeMap<i64, usize> = BTreeMap::new();
    for h1 in elems {
        for h2 in elems {
            let h12 = h1.mul(h2);
            let (Some(m1), Some(m2), Some(m12)) = (stable_m(session, h1), stable_m(session, h2), stable_m(session, &h12))
            else {
                r.inconclusive_cases += 1;
                continue;
            };
            r.checked += 1;
            let excess = m12 - m1 - m2;
            if excess > 0 {
                r.violations += 1;
                *by_excess.entry(excess).or_default() += 1;
                if excess > worst_excess {
                    worst_excess = excess;
                    r.worst = Some(format!(
                        "m({h1} * {h2}) = m({h12}) = {m12} > m({h1}) + m({h2}) = {m1} + {m2}"
                    ));
                }
            }
        }
    }
    r.details = serde_json::json!({ "violations_by_excess": by_excess });
    r.settle()
}

pub fn interval_diameter(session: &Session) -> SuiteReport {
    let mut r = SuiteReport::new("interval_diameter");
    let Some((m, _, _)) = stable_constants(session, &mut r) else {
        return r;
    };
    let (top, prev) = (session.top(), session.prev());
    let mut max_diam = 0i64;
    for w in within(top, session.scenario().suites.interval_radius) {
        if !top.is_witnessed(w) {
            continue;
        }
        let now = top.witnessed_interval(w);
        if prev.is_tame(w) || prev.witnessed_interval(w) != now {
            r.inconclusive_cases += 1;
            continue;
        }
        r.checked += 1;
        let diam = now.last().unwrap() - now.first().unwrap();
        max_diam = max_diam.max(diam);
        if diam > 2 * m {
            r.violations += 1;
            if r.worst.is_none() {
                r.worst = Some(format!("diam I({w}) = {diam} > 2M = {}", 2 * m));
            }
        }
    }
    r.details = serde_json::json!({ "max_diameter": max_diam, "bound": 2 * m });
    r.settle()
}

pub fn coarse_lip(session: &Session) -> SuiteReport {
    let mut r = SuiteReport::new("coarse_lip");
    let Some((m, _, _)) = stable_constants(session, &mut r) else {
        return r;
    };
    let top = session.top();
    let wild: Vec<&GroupElement> = within(top, session.scenario().suites.pair_radius)
        .iter()
        .filter(|w| top.is_witnessed(w))
        .collect();
    let mut max_slack = i64::MIN;
    for u in &wild {
        for v in &wild {
            let uv = u.mul(&v.inverse());
            let (Some(iu), Some(iv), Some(muv)) = (stable_center(session, u), stable_center(session, v), stable_m(session, &uv))
            else {
                r.inconclusive_cases += 1;
                continue;
            };
            r.checked += 1;
            let lhs = (iu - iv).abs();
            let bound = muv + 2 * m;
            max_slack = max_slack.max(lhs - bound);
            if lhs > bound {
                r.violations += 1;
                if r.worst.is_none() {
                    r.worst = Some(format!("|i({u}) - i({v})| = {lhs} > m({uv}) + 2M = {bound}"));
                }
            }
        }
    }
    r.details = serde_json::json!({ "pairs": wild.len() * wild.len(), "max_excess": max_slack });
    r.settle()
}

pub fn behrstock(session: &Session) -> SuiteReport {
    let mut r = SuiteReport::new("behrstock");
    let Some((m, _, _)) = stable_constants(session, &mut r) else {
        return r;
    };
    let top = session.top();
    let wild: Vec<&GroupElement> = within(top, session.scenario().suites.pair_radius)
        .iter()
        .filter(|w| top.is_witnessed(w))
        .collect();
    let bound = 5 * m;
    let mut max_min = 0i64;
    for u in &wild {
        for v in &wild {
            let uinv_v = u.inverse().mul(v);
            if !top.is_witnessed(&uinv_v) {
                continue;
            }
            let vinv_u = uinv_v.inverse();
            let centers = (
                stable_center(session, u),
                stable_center(session, v),
                stable_center(session, &vinv_u),
                stable_center(session, &uinv_v),
            );
            let (Some(iu), Some(iv), Some(ivu), Some(iuv)) = centers else {
                r.inconclusive_cases += 1;
                continue;
            };
            r.checked += 1;
            let value = (iu - ivu).abs().min((iv - iuv).abs());
            max_min = max_min.max(value);
            if value > bound {
                r.violations += 1;
                if r.worst.is_none() {
                    r.worst = Some(format!("u = {u}, v = {v}: Behrstock minimum {value} > 5M = {bound}"));
                }
            }
        }
    }
    r.details = serde_json::json!({ "max_minimum": max_min, "bound": bound });
    r.settle()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRecord {
    pub h: GroupElement,
    pub threshold: i64,
    pub size_prev: usize,
    pub size: usize,
    pub delta: i64,
    pub members: Vec<GroupElement>,
}

pub fn large_proj(session: &Session) -> SuiteReport {
    let mut r = SuiteReport::new("large_proj");
    let Some((_, _, n)) = stable_constants(session, &mut r) else {
        return r;
    };
    let (top, prev) = (session.top(), session.prev());
    let group = session.action().group();
    let g = session.action().g();
    let mut records = Vec::new();
    for text in &session.scenario().suites.census_elements {
        let Ok(h) = group.parse(text) else { continue };
        let now = large_projection_census(top, &h, n);
        let before = large_projection_census(prev, &h, n);
        r.checked += 1;
        if now.size() != before.size() {
            r.inconclusive_cases += 1;
        }
        records.push(CensusRecord {
            h,
            threshold: n,
            size_prev: before.size(),
            size: now.size(),
            delta: now.size() as i64 - before.size() as i64,
            members: now.members,
        });
    }
    // f_h(w) must not depend on the representative of w<g>.
    let mut well_defined_checked = 0usize;
    for text in &session.scenario().suites.census_elements {
        let Ok(h) = group.parse(text) else { continue };
        for w in within(top, session.scenario().suites.pair_radius) {
            let wg = w.mul(g);
            if let (Some(a), Some(b)) = (f_h(top, &h, w), f_h(top, &h, &wg)) {
                well_defined_checked += 1;
                if a != b {
                    r.violations += 1;
                    if r.worst.is_none() {
                        r.worst = Some(format!("f_{h}({w}) = {a} but f_{h}({wg}) = {b}"));
                    }
                }
            }
        }
    }
    r.details = serde_json::json!({ "census": records, "f_h_pairs_checked": well_defined_checked });
    let unstable = r.inconclusive_cases > 0;
    let mut r = r.settle();
    if r.status == Verdict::Pass && unstable {
        r.status = Verdict::Inconclusive;
        r.note = Some("census size changed between the top two radii".into());
    }
    r
}

/// `pi(s w t) = s pi(w)` for small powers `s, t` of `g`.
fn pi_equivariance(session: &Session, st: &ProjectionStage<'_>) -> (usize, usize, Option<String>) {
    let top = session.top();
    let g = session.action().g();
    let p = st.now.projector();
    let shifts: Vec<GroupElement> = [-2i64, -1, 1, 2].iter().map(|&k| g.pow(k)).collect();
    let (mut checked, mut bad, mut worst) = (0, 0, None);
    for w in within(top, session.scenario().suites.pair_radius) {
        let Ok(base) = p.pi_hat(w) else { continue };
        for s in &shifts {
            for t in &shifts {
                let Ok(moved) = p.pi_hat(&s.mul(w).mul(t)) else { continue };
                checked += 1;
                let expected: Vec<GroupElement> = {
                    let mut v: Vec<GroupElement> = base.iter().map(|x| s.mul(x)).collect();
                    v.sort();
                    v
                };
                if moved != expected {
                    bad += 1;
                    if worst.is_none() {
                        worst = Some(format!("pi({s} {w} {t}) != {s} pi({w})"));
                    }
                }
            }
        }
    }
    (checked, bad, worst)
}

fn bbf_axioms(session: &Session, st: &ProjectionStage<'_>) -> SuiteReport {
    let mut r = SuiteReport::new("bbf_axioms");
    let stable = stable_constants(session, &mut r).is_some();
    let a = &st.report;
    r.constants.insert("theta".into(), a.theta_hat);
    r.constants.insert("P1".into(), a.p1_constant);
    r.constants.insert("P1_bound".into(), a.p1_bound);
    let (eq_checked, eq_bad, eq_worst) = pi_equivariance(session, st);
    r.checked = a.cosets + eq_checked;
    r.violations = a.p1_violations + eq_bad + usize::from(!a.p2_monotone);
    r.worst = a
        .p1_witness
        .as_ref()
        .map(|[x, y, z]| format!("Behrstock violated on cosets {x}, {y}, {z}"))
        .or(eq_worst);
    r.details = serde_json::json!({ "axioms": a, "equivariance_checked": eq_checked, "equivariance_violations": eq_bad });
    let mut r = r.settle();
    if r.status == Verdict::Pass && !(stable && a.theta_stable && a.p2_stable) {
        r.status = Verdict::Inconclusive;
        r.note = Some("projection constants not stable across the top two radii".into());
    }
    r
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphDiag {
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub delta: Option<f64>,
    /// Smallest ball radius at which the bottleneck check holds.
    pub bottleneck: Option<u32>,
    pub growth: Vec<u32>,
    pub skipped: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplexDiag {
    pub k: i64,
    pub projection_complex: GraphDiag,
    pub quasi_tree: GraphDiag,
    pub equivariance_violations: usize,
}

/// Shared diagnostics for one graph.
fn diagnose(graph: &TruncGraph, st: &ProjectionStage<'_>, g: &GroupElement, session: &Session) -> GraphDiag {
    let cx = &session.scenario().complex;
    let connected = graph.is_connected();
    let mut skipped = None;
    let (mut delta, mut bottleneck) = (None, None);
    if connected {
        match hyperbolicity_delta(graph, cx.vertex_limit) {
            Ok(d) => delta = Some(d.value()),
            Err(e) => skipped = Some(e.to_string()),
        }
        if skipped.is_none() {
            for dl in 0..=cx.bottleneck_max {
                if bottleneck_check(graph, dl, cx.vertex_limit).is_ok_and(|b| b.holds) {
                    bottleneck = Some(dl);
                    break;
                }
            }
        }
    }
    let growth = translation_growth(graph, &st.now, g, cx.n_max).unwrap_or_default();
    GraphDiag {
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        connected,
        delta,
        bottleneck,
        growth,
        skipped,
    }
}

/// Builds both complexes for one `K`, optionally exporting them.
pub fn complex_for_k(session: &Session, st: &ProjectionStage<'_>, k: i64) -> Result<(TruncGraph, TruncGraph)> {
    let depth = session.scenario().complex.depth;
    let pc = build_projection_complex(&st.now, &st.report, k)?;
    let qt = build_quasi_tree_of_spaces(&st.now, &st.report, k, depth)?;
    Ok((pc, qt))
}

/// `{X, Z}` is an edge iff `{gX, gZ}` is, whenever both translates are present.
fn complex_equivariance(pc: &TruncGraph, st: &ProjectionStage<'_>, g: &GroupElement) -> usize {
    let p = st.now.projector();
    let cosets = st.now.cosets();
    let moved: Vec<Option<usize>> = cosets
        .iter()
        .map(|c| st.now.index_of(&p.coset(&g.mul(c.rep()))))
        .collect();
    let mut bad = 0;
    for x in 0..cosets.len() {
        for z in (x + 1)..cosets.len() {
            if let (Some(gx), Some(gz)) = (moved[x], moved[z]) {
                if pc.has_edge(x, z) != pc.has_edge(gx, gz) {
                    bad += 1;
                }
            }
        }
    }
    bad
}

pub fn complex_k_values(session: &Session, st: &ProjectionStage<'_>) -> Vec<i64> {
    session
        .scenario()
        .complex
        .k
        .clone()
        .unwrap_or_else(|| vec![default_k(&st.report)])
}

fn complex_diag(session: &Session, st: &ProjectionStage<'_>) -> SuiteReport {
    let mut r = SuiteReport::new("complex_diag");
    let cx = &session.scenario().complex;
    let g = session.action().g();
    let mut diags = Vec::new();
    for k in complex_k_values(session, st) {
        let (pc, qt) = match complex_for_k(session, st, k) {
            Ok(x) => x,
            Err(e) => {
                r.violations += 1;
                r.worst.get_or_insert(e.to_string());
                continue;
            }
        };
        let pcd = diagnose(&pc, st, g, session);
        let qtd = diagnose(&qt, st, g, session);
        let eq_bad = complex_equivariance(&pc, st, g);
        r.checked += 1;
        let mut problems = Vec::new();
        if !pcd.connected {
            problems.push("projection complex disconnected".to_string());
        }
        if pcd.delta.is_some_and(|d| d > cx.delta_max) {
            problems.push(format!("delta {} > {}", pcd.delta.unwrap(), cx.delta_max));
        }
        if pcd.connected && pcd.skipped.is_none() && pcd.bottleneck.is_none() {
            problems.push(format!("no bottleneck within radius {}", cx.bottleneck_max));
        }
        if pcd.growth.iter().any(|&d| d != 0) {
            problems.push("g moves the base coset".into());
        }
        if qtd.growth.len() != cx.n_max as usize + 1 || qtd.growth.windows(2).any(|w| w[1] <= w[0]) {
            problems.push(format!("translation growth not strictly increasing: {:?}", qtd.growth));
        }
        if eq_bad > 0 {
            problems.push(format!("{eq_bad} edges not g-equivariant"));
        }
        if !problems.is_empty() {
            r.violations += 1;
            r.worst.get_or_insert(format!("K = {k}: {}", problems.join("; ")));
        }
        diags.push(ComplexDiag {
            k,
            projection_complex: pcd,
            quasi_tree: qtd,
            equivariance_violations: eq_bad,
        });
    }
    r.details = serde_json::to_value(&diags).unwrap_or_default();
    r.settle()
}

