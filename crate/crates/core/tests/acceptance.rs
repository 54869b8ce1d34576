//! Acceptance run: one line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are reported but do not fail the
//! target; any other failure, or a known failure that starts passing, does.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde_json::Value;

use axial_core::harness::report::{build_report, run_scenario, Overrides};
use axial_core::harness::{audit_axial_pair, Scenario, Session, Verdict};
use axial_core::wildness::TameStatus;

const KNOWN_FAILURES: &[&str] = &["3a"];

const AUDIT_BUDGET: Duration = Duration::from_secs(60);
const DELTA_MAX: f64 = 1.0;
const BOTTLENECK_MAX: u64 = 2;

fn scenario_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn load(name: &str) -> Scenario {
    Scenario::from_path(&scenario_path(name)).expect("scenario loads")
}

struct Outcome {
    id: &'static str,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn suite<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["suites"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["suite"] == name)
        .unwrap_or(&Value::Null)
}

fn zero_violation(report: &Value, name: &str) -> (bool, String) {
    let s = suite(report, name);
    let pass = s["status"] == "PASS" && s["violations"] == 0;
    let detail = format!(
        "status {} checked {} violations {} inconclusive {}{}",
        s["status"],
        s["checked"],
        s["violations"],
        s["inconclusive_cases"],
        s["worst"].as_str().map(|w| format!("; worst: {w}")).unwrap_or_default()
    );
    (pass, detail)
}

fn main() {
    let mut out: Vec<Outcome> = Vec::new();

    let f2 = Session::new(load("f2.toml")).unwrap();
    let t0 = Instant::now();
    let audit = audit_axial_pair(&f2);
    let elapsed = t0.elapsed();
    let m = &audit.axiom2.m_by_radius;
    out.push(Outcome {
        id: "1",
        title: "F2 positive control: audit PASS, M = 0 stable over R = 4, 5, 6",
        pass: audit.axiom1.status == Verdict::Pass
            && audit.axiom2.status == Verdict::Pass
            && [4, 5, 6].iter().all(|r| m.get(r) == Some(&Some(0)))
            && elapsed < AUDIT_BUDGET,
        detail: format!("M by radius {m:?}, audit {:.2?}", elapsed),
    });

    let top = f2.top();
    let g = f2.action().g();
    let ball5 = top.ball().within(5);
    let mut mismatches = 0;
    let mut unknown_short = 0;
    for h in ball5 {
        let status = top.classify(h);
        let in_cyclic = (-5..=5).any(|k| g.pow(k) == *h);
        if (status == TameStatus::TameCertified) != in_cyclic {
            mismatches += 1;
        }
        if h.len() <= 3 && status == TameStatus::Unknown {
            unknown_short += 1;
        }
    }
    out.push(Outcome {
        id: "2",
        title: "tameness oracle agreement on ball(5)",
        pass: ball5.len() == 485 && mismatches == 0 && unknown_short == 0,
        detail: format!("{} elements, {mismatches} mismatches, {unknown_short} unknown of length <= 3", ball5.len()),
    });

    let report = build_report(&f2).unwrap();
    let json: Value = serde_json::from_str(&report.to_json()).unwrap();
    for (id, name, title) in [
        ("3a", "subadditivity", "subadditivity over pairs in ball(3)"),
        ("3b", "interval_diameter", "interval diameter <= 2M over ball(5)"),
        ("3c", "coarse_lip", "coarse Lipschitz over wild pairs in ball(4)"),
        ("3d", "behrstock", "Behrstock minimum <= 5M over triples in ball(4)"),
    ] {
        let (pass, detail) = zero_violation(&json, name);
        out.push(Outcome { id, title, pass, detail });
    }

    let census = &suite(&json, "large_proj")["details"]["census"];
    let stable = census
        .as_array()
        .is_some_and(|c| c.len() == 3 && c.iter().all(|r| r["size"] == r["size_prev"]));
    out.push(Outcome {
        id: "4",
        title: "large-projection census stable for b, ab, bab at R = 5, 6",
        pass: stable,
        detail: census
            .as_array()
            .map(|c| {
                c.iter()
                    .map(|r| format!("{}: {} -> {}", r["h"], r["size_prev"], r["size"]))
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .unwrap_or_default(),
    });

    let ax = &suite(&json, "bbf_axioms")["details"]["axioms"];
    let m_hat = json["audit"]["constants"]["m_hat"].as_i64().unwrap_or(i64::MAX);
    let theta = ax["theta_hat"].as_i64().unwrap_or(i64::MAX);
    let p1 = ax["p1_constant"].as_i64().unwrap_or(i64::MAX);
    out.push(Outcome {
        id: "5",
        title: "projection axioms: theta stable, P1 <= 5M + theta, P2 stable",
        pass: ax["theta_stable"] == true && ax["p2_stable"] == true && p1 <= 5 * m_hat + theta,
        detail: format!("{} cosets, theta {theta}, P1 {p1}, P2 {}", ax["cosets"], ax["p2"]),
    });

    let diag = &suite(&json, "complex_diag")["details"][0];
    let pc = &diag["projection_complex"];
    let qt = &diag["quasi_tree"];
    let delta = pc["delta"].as_f64();
    let bottleneck = pc["bottleneck"].as_u64();
    out.push(Outcome {
        id: "6",
        title: "projection complex connected, delta <= 1, bottleneck at some radius <= 2",
        pass: pc["connected"] == true
            && delta.is_some_and(|d| d <= DELTA_MAX)
            && bottleneck.is_some_and(|b| b <= BOTTLENECK_MAX),
        detail: format!("K = {}, {} vertices, delta {delta:?}, bottleneck {bottleneck:?}", diag["k"], pc["vertices"]),
    });

    let growth: Vec<u64> = qt["growth"].as_array().map(|a| a.iter().filter_map(Value::as_u64).collect()).unwrap_or_default();
    let fixed: Vec<u64> = pc["growth"].as_array().map(|a| a.iter().filter_map(Value::as_u64).collect()).unwrap_or_default();
    out.push(Outcome {
        id: "7",
        title: "loxodromic growth d(e, a^n e) = n, complex vertex T fixed",
        pass: growth == (0..=8).collect::<Vec<u64>>() && fixed == vec![0; 9],
        detail: format!("quasi-tree {growth:?}, complex {fixed:?}"),
    });

    let tmp = tempfile::tempdir().unwrap();
    let overrides = Overrides { out: Some(tmp.path().join("z2")), ..Default::default() };
    let (z2, z2_code) = run_scenario(load("z2.toml"), &overrides).unwrap();
    let sizes: Vec<(u32, usize)> = z2.audit.axiom1.f_hat_sizes.iter().map(|(&r, &n)| (r, n)).collect();
    let grows = sizes.windows(2).all(|w| w[1].1 > w[0].1) && sizes.iter().all(|&(r, n)| n > 2 * r as usize);
    let z = Session::new(load("z.toml")).unwrap();
    let z_audit = audit_axial_pair(&z);
    out.push(Outcome {
        id: "8",
        title: "negative controls: Z^2 exits 2 on axiom 1, Z is virtually cyclic",
        pass: z2_code == 2 && z2.audit.axiom1.status == Verdict::Fail && grows && z_audit.virtually_cyclic,
        detail: format!("Z^2 exit {z2_code}, |F| by radius {sizes:?}; Z virtually_cyclic {}", z_audit.virtually_cyclic),
    });

    let pulled = Session::new(load("f2_pullback.toml")).unwrap();
    let pa = audit_axial_pair(&pulled);
    let same_m = pa.constants.as_ref().map(|c| c.m_hat) == audit.constants.as_ref().map(|c| c.m_hat);
    out.push(Outcome {
        id: "9",
        title: "pull-back along x -> x b: same verdicts and M",
        pass: pa.axiom1.status == audit.axiom1.status && pa.axiom2.status == audit.axiom2.status && same_m,
        detail: format!(
            "base ({:?}, {:?}, M {:?}), pulled back ({:?}, {:?}, M {:?})",
            audit.axiom1.status,
            audit.axiom2.status,
            audit.constants.as_ref().map(|c| c.m_hat),
            pa.axiom1.status,
            pa.axiom2.status,
            pa.constants.as_ref().map(|c| c.m_hat)
        ),
    });

    let runs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let dir = tmp.path().join(format!("f2_{i}"));
            let o = Overrides { out: Some(dir.clone()), ..Default::default() };
            run_scenario(load("f2.toml"), &o).unwrap();
            std::fs::read(dir.join("report.json")).unwrap()
        })
        .collect();
    out.push(Outcome {
        id: "10",
        title: "determinism: two F2 runs give identical report.json",
        pass: runs[0] == runs[1] && !runs[0].is_empty(),
        detail: format!("{} bytes", runs[0].len()),
    });

    let mut unexpected = 0;
    for o in &out {
        let known = KNOWN_FAILURES.contains(&o.id);
        let tag = match (o.pass, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (was known failure)",
        };
        if o.pass == known {
            unexpected += 1;
        }
        println!("[{tag}] {:<3} {} | {}", o.id, o.title, o.detail);
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria deviate from the expected outcome");
        std::process::exit(1);
    }
}
