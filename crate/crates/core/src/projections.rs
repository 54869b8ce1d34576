//! Projections of wild elements to the tame subgroup and the equivariant
//! coset projections built from them.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::wildness::Truncation;

/// A coset `hT`, named by its shortlex-minimal element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CosetId {
    rep: GroupElement,
}

impl CosetId {
    pub fn rep(&self) -> &GroupElement {
        &self.rep
    }
}

impl fmt::Display for CosetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rep.is_identity() {
            f.write_str("T")
        } else {
            write!(f, "{} T", self.rep)
        }
    }
}

/// Word metric on `T` with generators `g^{+-1}` and the nontrivial coset
/// representatives of `<g>` in `T`, materialized up to a fixed radius.
#[derive(Clone, Debug)]
pub struct TameMetric {
    generators: Vec<GroupElement>,
    norms: HashMap<GroupElement, u32>,
    radius: u32,
}

impl TameMetric {
    pub fn new(g: &GroupElement, reps: &[GroupElement], radius: u32, capacity: usize) -> Result<Self> {
        let mut generators = vec![g.clone(), g.inverse()];
        for f in reps.iter().filter(|f| !f.is_identity()) {
            for s in [f.clone(), f.inverse()] {
                if !generators.contains(&s) {
                    generators.push(s);
                }
            }
        }
        let e = g.mul(&g.inverse());
        let mut norms = HashMap::new();
        norms.insert(e.clone(), 0);
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            let d = norms[&x];
            if d == radius {
                continue;
            }
            for s in &generators {
                let y = x.mul(s);
                if !norms.contains_key(&y) {
                    if norms.len() >= capacity {
                        return Err(Error::CapacityExceeded {
                            what: "tame metric ball",
                            limit: capacity,
                        });
                    }
                    norms.insert(y.clone(), d + 1);
                    queue.push_back(y);
                }
            }
        }
        Ok(TameMetric {
            generators,
            norms,
            radius,
        })
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// `|t|_T`, if within the materialized radius.
    pub fn norm(&self, t: &GroupElement) -> Option<u32> {
        self.norms.get(t).copied()
    }

    pub fn distance(&self, p: &GroupElement, q: &GroupElement) -> Option<u32> {
        self.norm(&p.inverse().mul(q))
    }

    /// Elements of `T` with `|t|_T <= r`, sorted shortlex.
    pub fn ball(&self, r: u32) -> Vec<GroupElement> {
        let mut v: Vec<GroupElement> = self
            .norms
            .iter()
            .filter(|(_, &d)| d <= r)
            .map(|(x, _)| x.clone())
            .collect();
        v.sort();
        v
    }

    /// Diameter of a finite subset of `T`.
    pub fn diameter(&self, set: &[GroupElement]) -> Option<i64> {
        let mut best = 0i64;
        for (j, p) in set.iter().enumerate() {
            for q in &set[j + 1..] {
                best = best.max(self.distance(p, q)? as i64);
            }
        }
        Some(best)
    }
}

/// Projection machinery at one truncation.
pub struct Projector<'a> {
    tr: &'a Truncation,
    reps: Vec<GroupElement>,
    f_hat: Vec<GroupElement>,
    metric: TameMetric,
}

impl<'a> Projector<'a> {
    pub fn new(tr: &'a Truncation) -> Result<Self> {
        let ts = tr.tame_subgroup();
        let radius = (4 * tr.window() + 4) as u32;
        let metric = TameMetric::new(tr.action().g(), &ts.reps, radius, tr.params().capacity)?;
        Ok(Projector {
            tr,
            reps: ts.reps.clone(),
            f_hat: ts.f_hat.clone(),
            metric,
        })
    }

    pub fn truncation(&self) -> &Truncation {
        self.tr
    }

    pub fn metric(&self) -> &TameMetric {
        &self.metric
    }

    /// `pi(w) = union over t in F of t g^{I(w^-1 t)}`.
    pub fn pi_hat(&self, w: &GroupElement) -> Result<Vec<GroupElement>> {
        if !self.tr.is_witnessed(w) {
            return Err(Error::NotWild(w.to_string()));
        }
        let winv = w.inverse();
        let g = self.tr.action().g();
        let mut out = Vec::new();
        for t in &self.f_hat {
            let x = winv.mul(t);
            if self.tr.is_tame(&x) {
                continue;
            }
            for n in self.tr.witnessed_interval(&x) {
                out.push(t.mul(&g.pow(n)));
            }
        }
        if out.is_empty() {
            return Err(Error::NotWild(w.to_string()));
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Canonical name of the coset `hT`.
    pub fn coset(&self, h: &GroupElement) -> CosetId {
        let g = self.tr.action().g();
        let ginv = g.inverse();
        let fmax = self.reps.iter().map(|f| f.len()).max().unwrap_or(0);
        let span = 2 * h.len() as i64 + fmax as i64 + 1;
        let mut best = h.clone();
        let (mut up, mut down) = (h.clone(), h.clone());
        for k in 0..=span {
            if k > 0 {
                up = up.mul(g);
                down = down.mul(&ginv);
            }
            for f in &self.reps {
                for c in [up.mul(f), down.mul(f)] {
                    if c < best {
                        best = c;
                    }
                }
            }
        }
        CosetId { rep: best }
    }

    /// `pi_Y(X) = h1 pi(h1^-1 h2)` for `Y = h1 T`, `X = h2 T`.
    pub fn coset_projection(&self, y: &CosetId, x: &CosetId) -> Result<Vec<GroupElement>> {
        if y == x {
            return Err(Error::SameCoset(y.to_string(), x.to_string()));
        }
        let local = self.pi_hat(&y.rep.inverse().mul(&x.rep))?;
        Ok(local.iter().map(|t| y.rep.mul(t)).collect())
    }

    /// Diameter of `pi_Y(X) u pi_Y(Z)` in the word metric of `T` moved to `Y`.
    pub fn proj_distance(&self, y: &CosetId, x: &CosetId, z: &CosetId) -> Result<i64> {
        let mut set = self.coset_projection(y, x)?;
        set.extend(self.coset_projection(y, z)?);
        let local: Vec<GroupElement> = set.iter().map(|p| y.rep.inverse().mul(p)).collect();
        self.metric
            .diameter(&local)
            .ok_or(Error::CapacityExceeded {
                what: "tame metric radius",
                limit: self.metric.radius as usize,
            })
    }
}

/// Coset family with all pairwise projections at one truncation.
pub struct ProjectionSystem<'a> {
    projector: Projector<'a>,
    cosets: Vec<CosetId>,
    /// `proj[y][x]`, in `T`-coordinates local to `y`; `None` if not witnessed.
    proj: Vec<Vec<Option<Vec<GroupElement>>>>,
    theta_hat: i64,
    unprojectable: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P2Census {
    pub threshold: i64,
    /// Largest number of cosets `Y` with `d_Y(Y1, Y2) >= threshold` over pairs.
    pub max_count: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub radius: u32,
    pub cosets: usize,
    pub unprojectable: usize,
    pub theta_hat: i64,
    pub theta_prev: i64,
    pub theta_stable: bool,
    pub p1_constant: i64,
    pub p1_bound: i64,
    pub p1_violations: usize,
    pub p1_witness: Option<[String; 3]>,
    pub p2: Vec<P2Census>,
    pub p2_stable: bool,
    pub p2_monotone: bool,
}

impl<'a> ProjectionSystem<'a> {
    /// Projections among the cosets `wT` for `w` of length at most `coset_radius`.
    pub fn build(tr: &'a Truncation, coset_radius: u32) -> Result<Self> {
        let projector = Projector::new(tr)?;
        let group = tr.action().group();
        let ball = group.ball(coset_radius, tr.params().capacity)?;
        let mut cosets: Vec<CosetId> = ball.iter().map(|h| projector.coset(h)).collect();
        cosets.sort();
        cosets.dedup();
        if cosets.len() < 3 {
            return Err(Error::InsufficientCosets(cosets.len()));
        }
        let n = cosets.len();
        let mut proj = vec![vec![None; n]; n];
        let mut theta_hat = 0i64;
        let mut unprojectable = 0usize;
        for (yi, y) in cosets.iter().enumerate() {
            let yinv = y.rep.inverse();
            for (xi, x) in cosets.iter().enumerate() {
                if xi == yi {
                    continue;
                }
                match projector.pi_hat(&yinv.mul(&x.rep)) {
                    Ok(set) => {
                        let d = projector.metric.diameter(&set).unwrap_or(i64::MAX);
                        theta_hat = theta_hat.max(d);
                        proj[yi][xi] = Some(set);
                    }
                    Err(Error::NotWild(_)) => unprojectable += 1,
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(ProjectionSystem {
            projector,
            cosets,
            proj,
            theta_hat,
            unprojectable,
        })
    }

    pub fn projector(&self) -> &Projector<'a> {
        &self.projector
    }

    pub fn cosets(&self) -> &[CosetId] {
        &self.cosets
    }

    pub fn radius(&self) -> u32 {
        self.projector.tr.radius()
    }

    pub fn theta_hat(&self) -> i64 {
        self.theta_hat
    }

    pub fn unprojectable(&self) -> usize {
        self.unprojectable
    }

    pub fn index_of(&self, c: &CosetId) -> Option<usize> {
        self.cosets.binary_search(c).ok()
    }

    /// `pi_Y(X)` as elements of `Y`.
    pub fn projection(&self, y: usize, x: usize) -> Option<Vec<GroupElement>> {
        let rep = &self.cosets[y].rep;
        self.proj[y][x]
            .as_ref()
            .map(|s| s.iter().map(|t| rep.mul(t)).collect())
    }

    /// `pi_Y(X)` in coordinates of `T` local to `Y`.
    pub fn local_projection(&self, y: usize, x: usize) -> Option<&[GroupElement]> {
        self.proj[y][x].as_deref()
    }

    /// `d_Y(X, Z)`; `None` if a projection is missing.
    pub fn distance(&self, y: usize, x: usize, z: usize) -> Option<i64> {
        let a = self.proj[y][x].as_ref()?;
        let b = self.proj[y][z].as_ref()?;
        let m = &self.projector.metric;
        let mut best = 0i64;
        for p in a.iter().chain(b.iter()) {
            for q in a.iter().chain(b.iter()) {
                best = best.max(m.distance(p, q)? as i64);
            }
        }
        Some(best)
    }

    /// Empirical (P0), (P1), (P2) data, compared against the system `prev`
    /// built over the same cosets at a smaller radius.
    pub fn check_axioms(&self, prev: &ProjectionSystem<'_>, m_hat: i64, n_hat: i64) -> Result<AxiomReport> {
        let n = self.cosets.len();
        if n < 3 {
            return Err(Error::InsufficientCosets(n));
        }
        let p1_bound = 5 * m_hat + self.theta_hat;
        let mut p1_constant = 0i64;
        let mut p1_violations = 0usize;
        let mut p1_witness = None;
        for a in 0..n {
            for b in (a + 1)..n {
                for c in 0..n {
                    if c == a || c == b {
                        continue;
                    }
                    let (Some(d1), Some(d2)) = (self.distance(a, b, c), self.distance(b, a, c)) else {
                        continue;
                    };
                    let v = d1.min(d2);
                    p1_constant = p1_constant.max(v);
                    if v > p1_bound {
                        p1_violations += 1;
                        if p1_witness.is_none() {
                            p1_witness = Some([
                                self.cosets[a].to_string(),
                                self.cosets[b].to_string(),
                                self.cosets[c].to_string(),
                            ]);
                        }
                    }
                }
            }
        }
        let thresholds = [n_hat, n_hat + 1, n_hat + 2];
        let p2 = self.p2_census(&thresholds);
        let same_cosets = prev.cosets == self.cosets;
        let p2_prev = prev.p2_census(&thresholds);
        let p2_monotone = p2.windows(2).all(|w| w[1].max_count <= w[0].max_count && w[1].total <= w[0].total);
        Ok(AxiomReport {
            radius: self.radius(),
            cosets: n,
            unprojectable: self.unprojectable,
            theta_hat: self.theta_hat,
            theta_prev: prev.theta_hat,
            theta_stable: same_cosets && prev.theta_hat == self.theta_hat,
            p1_constant,
            p1_bound,
            p1_violations,
            p1_witness,
            p2_stable: same_cosets && p2 == p2_prev,
            p2,
            p2_monotone,
        })
    }

    fn p2_census(&self, thresholds: &[i64]) -> Vec<P2Census> {
        let n = self.cosets.len();
        let mut out: Vec<P2Census> = thresholds
            .iter()
            .map(|&threshold| P2Census {
                threshold,
                max_count: 0,
                total: 0,
            })
            .collect();
        let mut counts = vec![0usize; thresholds.len()];
        for a in 0..n {
            for b in (a + 1)..n {
                counts.iter_mut().for_each(|c| *c = 0);
                for y in 0..n {
                    if y == a || y == b {
                        continue;
                    }
                    if let Some(d) = self.distance(y, a, b) {
                        for (k, &t) in thresholds.iter().enumerate() {
                            if d >= t {
                                counts[k] += 1;
                            }
                        }
                    }
                }
                for (k, c) in counts.iter().enumerate() {
                    out[k].max_count = out[k].max_count.max(*c);
                    out[k].total += c;
                }
            }
        }
        out
    }

    /// Projection table as tab-separated text: target, source, projection.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("target\tsource\tprojection\n");
        for y in 0..self.cosets.len() {
            for x in 0..self.cosets.len() {
                if x == y {
                    continue;
                }
                let cell = match self.projection(y, x) {
                    Some(set) => set.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "),
                    None => "-".to_string(),
                };
                s.push_str(&format!("{}\t{}\t{}\n", self.cosets[y], self.cosets[x], cell));
            }
        }
        s
    }
}

/// Cosets `w<g>` on which `f_h(w) = i(hw) - i(w)` exceeds a threshold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub h: GroupElement,
    pub radius: u32,
    pub threshold: i64,
    pub members: Vec<GroupElement>,
}

impl Census {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Shortlex-minimal element of `w<g>`.
pub fn right_orbit_rep(w: &GroupElement, g: &GroupElement) -> GroupElement {
    let ginv = g.inverse();
    let span = 2 * w.len() as i64 + 1;
    let mut best = w.clone();
    let (mut up, mut down) = (w.clone(), w.clone());
    for _ in 0..span {
        up = up.mul(g);
        down = down.mul(&ginv);
        if up < best {
            best = up.clone();
        }
        if down < best {
            best = down.clone();
        }
    }
    best
}

/// `f_h(w<g>)`, when both `w` and `hw` are witnessed wild.
pub fn f_h(tr: &Truncation, h: &GroupElement, w: &GroupElement) -> Option<i64> {
    let iw = tr.center_opt(w)?;
    let ihw = tr.center_opt(&h.mul(w))?;
    Some(ihw - iw)
}

pub fn large_projection_census(tr: &Truncation, h: &GroupElement, threshold: i64) -> Census {
    let g = tr.action().g();
    let mut members: Vec<GroupElement> = tr
        .ball()
        .iter()
        .filter(|w| tr.is_witnessed(w))
        .filter(|w| f_h(tr, h, w).is_some_and(|f| f.abs() > threshold))
        .map(|w| right_orbit_rep(w, g))
        .collect();
    members.sort();
    members.dedup();
    Census {
        h: h.clone(),
        radius: tr.radius(),
        threshold,
        members,
    }
}
