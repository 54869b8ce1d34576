//! Tame/wild classification, wilderness intervals and the coverage function
//! `m(h)` at a finite truncation radius.
//!
//! A set `w D_i` is declared unbounded at radius `R` when some point `y` of it
//! inside the radius-`R` ball sits at least `tau(R)` blocks away from the
//! reference point `w g^i` of that set. Tame elements translate `D_i` rigidly
//! in the supported families, so they never produce such a deviation.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::action::ActionModel;
use crate::error::{Error, Result};
use crate::group::{Ball, GroupElement, DEFAULT_CAPACITY};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncationParams {
    pub radius: u32,
    /// `tau(R) = ceil(tau_slope * R)`.
    pub tau_slope: f64,
    /// Largest block index scanned; `None` means `2R`.
    pub window: Option<i64>,
    pub capacity: usize,
}

impl TruncationParams {
    pub fn new(radius: u32) -> Self {
        TruncationParams {
            radius,
            tau_slope: 0.5,
            window: None,
            capacity: DEFAULT_CAPACITY,
        }
    }

    pub fn tau(&self) -> i64 {
        (self.tau_slope * self.radius as f64).ceil() as i64
    }

    pub fn window(&self) -> i64 {
        self.window.unwrap_or(2 * self.radius as i64)
    }

    pub fn with_radius(&self, radius: u32) -> Self {
        TruncationParams {
            radius,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.radius < 2 {
            return Err(Error::InvalidTruncation(format!("radius {} < 2", self.radius)));
        }
        if !(self.tau_slope.is_finite() && self.tau_slope > 0.0) {
            return Err(Error::InvalidTruncation("tau slope must be positive".into()));
        }
        if self.tau() > self.window() {
            return Err(Error::InvalidTruncation(format!(
                "tau {} exceeds window {}",
                self.tau(),
                self.window()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TameStatus {
    TameCertified,
    WildWitnessed,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub index: i64,
    /// The point `d` of `D_index` whose image lies far from the reference.
    pub point: GroupElement,
    pub deviation: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WildProfile {
    pub element: GroupElement,
    pub status: TameStatus,
    pub interval: Vec<i64>,
    pub center: Option<i64>,
    pub witnesses: Vec<Witness>,
}

/// `floor((min + max) / 2)` of a nonempty set.
pub fn center_of(set: &[i64]) -> Option<i64> {
    let lo = *set.iter().min()?;
    let hi = *set.iter().max()?;
    Some((lo + hi).div_euclid(2))
}

#[derive(Debug)]
struct Scan {
    interval: Vec<i64>,
    witnesses: Vec<(i64, usize, i64)>,
}

/// Per-row data for coverage queries: distinct keys `idx(w^-1 y)` in
/// increasing order with the min/max of `idx(y)` over prefixes and suffixes.
#[derive(Debug)]
struct RowProfile {
    keys: Vec<i32>,
    pre: Vec<(i32, i32)>,
    suf: Vec<(i32, i32)>,
}

const EMPTY: (i32, i32) = (i32::MAX, i32::MIN);

fn merge(a: (i32, i32), b: (i32, i32)) -> (i32, i32) {
    (a.0.min(b.0), a.1.max(b.1))
}

impl RowProfile {
    fn new(keys: &[i32], values: &[i64]) -> Self {
        let mut buckets: BTreeMap<i32, (i32, i32)> = BTreeMap::new();
        for (&k, &v) in keys.iter().zip(values) {
            let e = buckets.entry(k).or_insert(EMPTY);
            *e = merge(*e, (v as i32, v as i32));
        }
        let keys: Vec<i32> = buckets.keys().copied().collect();
        let vals: Vec<(i32, i32)> = buckets.values().copied().collect();
        let mut pre = Vec::with_capacity(vals.len() + 1);
        pre.push(EMPTY);
        for v in &vals {
            pre.push(merge(*pre.last().unwrap(), *v));
        }
        let mut suf = vec![EMPTY; vals.len() + 1];
        for j in (0..vals.len()).rev() {
            suf[j] = merge(suf[j + 1], vals[j]);
        }
        RowProfile { keys, pre, suf }
    }

    /// Least `m <= window` such that the points with key outside
    /// `[i - m, i + m]` fit in one `g^n D_[-m, m]` with `|n| <= window`.
    fn coverage(&self, i: i64, window: i64) -> Option<i64> {
        for m in 0..=window {
            let lo = (i - m) as i32;
            let hi = (i + m) as i32;
            let p = self.keys.partition_point(|&k| k < lo);
            let q = self.keys.partition_point(|&k| k <= hi);
            let (mn, mx) = merge(self.pre[p], self.suf[q]);
            if mn > mx {
                return Some(m);
            }
            let (mn, mx) = (mn as i64, mx as i64);
            let n_lo = (mx - m).max(-window);
            let n_hi = (mn + m).min(window);
            if n_lo <= n_hi {
                return Some(m);
            }
        }
        None
    }
}

/// Result of a coverage estimate for one `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MEstimate {
    /// `None` when no `m` within the window works.
    pub value: Option<i64>,
    /// No relevant `w` was found, so the estimate holds vacuously.
    pub vacuous: bool,
    pub relevant: usize,
    /// The `(w, i)` attaining the estimate (or failing coverage).
    pub worst: Option<(GroupElement, i64)>,
}

impl MEstimate {
    pub fn into_result(self, h: &GroupElement, window: i64) -> Result<i64> {
        match self.value {
            Some(v) => Ok(v),
            None => {
                let w = self.worst.map(|(w, _)| w.to_string()).unwrap_or_default();
                Err(Error::WindowExhausted {
                    h: h.to_string(),
                    w,
                    window,
                })
            }
        }
    }
}

/// Coset data of the tame subgroup seen inside the ball.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TameSubgroup {
    pub t_hat: Vec<GroupElement>,
    pub f_hat: Vec<GroupElement>,
    /// Shortlex-minimal representatives of the cosets `<g> t`, `t` in `t_hat`.
    pub reps: Vec<GroupElement>,
    pub virtually_cyclic: bool,
}

/// All cached data for one truncation radius.
pub struct Truncation {
    action: ActionModel,
    params: TruncationParams,
    ball: Ball,
    ball_idx: Vec<i64>,
    origin: i64,
    tame: Vec<bool>,
    rows: Vec<OnceLock<Box<[i32]>>>,
    profiles: Vec<OnceLock<RowProfile>>,
    scans: Vec<OnceLock<Arc<Scan>>>,
    extra_scans: Mutex<HashMap<GroupElement, Arc<Scan>>>,
    coverage: Mutex<HashMap<(usize, i64), Option<i64>>>,
    m_cache: Mutex<HashMap<GroupElement, MEstimate>>,
    tame_subgroup: OnceLock<TameSubgroup>,
}

impl Truncation {
    pub fn new(action: &ActionModel, params: TruncationParams) -> Result<Self> {
        params.validate()?;
        let ball = action.group().ball(params.radius, params.capacity)?;
        let ball_idx: Vec<i64> = ball.iter().map(|x| action.block_index(x)).collect();
        let tame: Vec<bool> = ball.iter().map(|x| action.is_tame_exact(x)).collect();
        let origin = action.block_index(&action.group().identity());
        let n = ball.len();
        Ok(Truncation {
            action: action.clone(),
            params,
            ball,
            ball_idx,
            origin,
            tame,
            rows: (0..n).map(|_| OnceLock::new()).collect(),
            profiles: (0..n).map(|_| OnceLock::new()).collect(),
            scans: (0..n).map(|_| OnceLock::new()).collect(),
            extra_scans: Mutex::new(HashMap::new()),
            coverage: Mutex::new(HashMap::new()),
            m_cache: Mutex::new(HashMap::new()),
            tame_subgroup: OnceLock::new(),
        })
    }

    pub fn action(&self) -> &ActionModel {
        &self.action
    }

    pub fn params(&self) -> &TruncationParams {
        &self.params
    }

    pub fn radius(&self) -> u32 {
        self.params.radius
    }

    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn window(&self) -> i64 {
        self.params.window()
    }

    fn row(&self, pos: usize) -> &[i32] {
        self.rows[pos].get_or_init(|| {
            let winv = self.ball.get(pos).inverse();
            self.ball
                .iter()
                .map(|y| self.action.block_index(&winv.mul(y)) as i32)
                .collect()
        })
    }

    fn profile_of(&self, pos: usize) -> &RowProfile {
        self.profiles[pos].get_or_init(|| RowProfile::new(self.row(pos), &self.ball_idx))
    }

    fn compute_scan(&self, w: &GroupElement, keys: &[i32]) -> Scan {
        let window = self.window();
        let tau = self.params.tau();
        let mut best: BTreeMap<i64, (i64, usize)> = BTreeMap::new();
        let mut refs: HashMap<i64, i64> = HashMap::new();
        let g = self.action.g();
        for (y, &k) in keys.iter().enumerate() {
            let i = k as i64;
            if i.abs() > window {
                continue;
            }
            let r = *refs
                .entry(i)
                .or_insert_with(|| self.action.block_index(&w.mul(&g.pow(i - self.origin))));
            let dev = (self.ball_idx[y] - r).abs();
            let e = best.entry(i).or_insert((-1, 0));
            if dev > e.0 {
                *e = (dev, y);
            }
        }
        let mut interval = Vec::new();
        let mut witnesses = Vec::new();
        for (i, (dev, y)) in best {
            if dev >= tau {
                interval.push(i);
                witnesses.push((i, y, dev));
            }
        }
        Scan { interval, witnesses }
    }

    fn scan(&self, w: &GroupElement) -> Arc<Scan> {
        if let Some(pos) = self.ball.position(w) {
            return self.scans[pos]
                .get_or_init(|| Arc::new(self.compute_scan(w, self.row(pos))))
                .clone();
        }
        if let Some(s) = self.extra_scans.lock().unwrap().get(w) {
            return s.clone();
        }
        let winv = w.inverse();
        let keys: Vec<i32> = self
            .ball
            .iter()
            .map(|y| self.action.block_index(&winv.mul(y)) as i32)
            .collect();
        let s = Arc::new(self.compute_scan(w, &keys));
        self.extra_scans.lock().unwrap().insert(w.clone(), s.clone());
        s
    }

    /// The raw witness search, independent of the tame backend.
    pub fn witnessed_interval(&self, w: &GroupElement) -> Vec<i64> {
        self.scan(w).interval.clone()
    }

    pub fn is_tame(&self, h: &GroupElement) -> bool {
        match self.ball.position(h) {
            Some(p) => self.tame[p],
            None => self.action.is_tame_exact(h),
        }
    }

    pub fn classify(&self, h: &GroupElement) -> TameStatus {
        if self.is_tame(h) {
            TameStatus::TameCertified
        } else if !self.scan(h).interval.is_empty() {
            TameStatus::WildWitnessed
        } else {
            TameStatus::Unknown
        }
    }

    pub fn is_witnessed(&self, h: &GroupElement) -> bool {
        self.classify(h) == TameStatus::WildWitnessed
    }

    pub fn profile(&self, w: &GroupElement) -> WildProfile {
        let status = self.classify(w);
        let (interval, witnesses) = if status == TameStatus::WildWitnessed {
            let s = self.scan(w);
            let winv = w.inverse();
            let witnesses = s
                .witnesses
                .iter()
                .map(|&(index, y, deviation)| Witness {
                    index,
                    point: winv.mul(self.ball.get(y)),
                    deviation,
                })
                .collect();
            (s.interval.clone(), witnesses)
        } else {
            (Vec::new(), Vec::new())
        };
        WildProfile {
            element: w.clone(),
            status,
            center: center_of(&interval),
            interval,
            witnesses,
        }
    }

    pub fn wild_interval(&self, w: &GroupElement) -> Result<Vec<i64>> {
        if self.classify(w) != TameStatus::WildWitnessed {
            return Err(Error::NotWild(w.to_string()));
        }
        Ok(self.scan(w).interval.clone())
    }

    pub fn center(&self, w: &GroupElement) -> Result<i64> {
        let iv = self.wild_interval(w)?;
        Ok(center_of(&iv).expect("witnessed intervals are nonempty"))
    }

    /// Center of a witnessed-wild element, `None` otherwise.
    pub fn center_opt(&self, w: &GroupElement) -> Option<i64> {
        if self.is_tame(w) {
            return None;
        }
        center_of(&self.scan(w).interval)
    }

    fn coverage(&self, pos: usize, i: i64) -> Option<i64> {
        if let Some(c) = self.coverage.lock().unwrap().get(&(pos, i)) {
            return *c;
        }
        let c = self.profile_of(pos).coverage(i, self.window());
        self.coverage.lock().unwrap().insert((pos, i), c);
        c
    }

    /// Smallest coverage constant for a single `w` and a wild index `i` of `hw`.
    pub fn coverage_for(&self, w: &GroupElement, i: i64) -> Option<Option<i64>> {
        self.ball.position(w).map(|p| self.coverage(p, i))
    }

    /// Lower estimate of `m(h)`. The quantifier runs over witnessed-wild
    /// `w` in the ball with `hw` also in the ball and witnessed; each index
    /// `i` of `I(hw)` contributes the coverage of `w D_[i-m, i+m]`.
    pub fn m_estimate(&self, h: &GroupElement) -> MEstimate {
        if let Some(e) = self.m_cache.lock().unwrap().get(h) {
            return e.clone();
        }
        let est = self.compute_m(h);
        self.m_cache.lock().unwrap().insert(h.clone(), est.clone());
        est
    }

    fn compute_m(&self, h: &GroupElement) -> MEstimate {
        let hinv = h.inverse();
        let mut value = 0i64;
        let mut worst = None;
        let mut relevant = 0usize;
        for (u_pos, u) in self.ball.iter().enumerate() {
            if self.tame[u_pos] {
                continue;
            }
            let su = self.scan(u);
            if su.interval.is_empty() {
                continue;
            }
            let w = hinv.mul(u);
            let Some(w_pos) = self.ball.position(&w) else {
                continue;
            };
            if self.tame[w_pos] || self.scan(&w).interval.is_empty() {
                continue;
            }
            relevant += 1;
            for &i in &su.interval {
                match self.coverage(w_pos, i) {
                    None => {
                        return MEstimate {
                            value: None,
                            vacuous: false,
                            relevant,
                            worst: Some((w, i)),
                        }
                    }
                    Some(c) => {
                        if c > value || worst.is_none() {
                            if c > value {
                                value = c;
                            }
                            worst = Some((w.clone(), i));
                        }
                    }
                }
            }
        }
        MEstimate {
            value: Some(value),
            vacuous: relevant == 0,
            relevant,
            worst,
        }
    }

    pub fn tame_subgroup(&self) -> &TameSubgroup {
        self.tame_subgroup.get_or_init(|| {
            let t_hat: Vec<GroupElement> = self
                .ball
                .iter()
                .zip(&self.tame)
                .filter(|(_, &t)| t)
                .map(|(x, _)| x.clone())
                .collect();
            let domain: Vec<&GroupElement> = self
                .ball
                .iter()
                .zip(&self.ball_idx)
                .filter(|(_, &i)| i == 0)
                .map(|(x, _)| x)
                .collect();
            let f_hat: Vec<GroupElement> = t_hat
                .iter()
                .filter(|t| domain.iter().any(|d| self.action.block_index(&t.mul(d)) == 0))
                .cloned()
                .collect();
            let mut reps: Vec<GroupElement> = t_hat.iter().map(|t| self.orbit_rep(t)).collect();
            reps.sort();
            reps.dedup();
            let virtually_cyclic = t_hat.len() == self.ball.len();
            TameSubgroup {
                t_hat,
                f_hat,
                reps,
                virtually_cyclic,
            }
        })
    }

    /// Shortlex-minimal element of `<g> t`.
    pub fn orbit_rep(&self, t: &GroupElement) -> GroupElement {
        let g = self.action.g();
        let ginv = g.inverse();
        let span = 2 * t.len() as i64 + 1;
        let mut best = t.clone();
        let (mut up, mut down) = (t.clone(), t.clone());
        for _ in 0..span {
            up = g.mul(&up);
            down = ginv.mul(&down);
            if up < best {
                best = up.clone();
            }
            if down < best {
                best = down.clone();
            }
        }
        best
    }

    /// Every element of the ball that is witnessed wild, in shortlex order.
    pub fn witnessed_elements(&self) -> Vec<GroupElement> {
        self.ball
            .iter()
            .filter(|x| self.is_witnessed(x))
            .cloned()
            .collect()
    }
}

/// Estimates of `M = m(e)`, `L` and `N = 20M + L` at one radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Constants {
    pub m_hat: i64,
    pub l_hat: i64,
    pub n_hat: i64,
    pub vacuous: bool,
    pub m_by_generator: BTreeMap<String, i64>,
}

impl Constants {
    pub fn compute(tr: &Truncation) -> Result<Self> {
        let group = tr.action().group();
        let e = group.identity();
        let me = tr.m_estimate(&e);
        let mut vacuous = me.vacuous;
        let m_hat = me.into_result(&e, tr.window())?;
        let mut m_by_generator = BTreeMap::new();
        let mut max_s = 0;
        for code in group.letters() {
            let s = group.letter(code)?;
            let est = tr.m_estimate(&s);
            vacuous &= est.vacuous;
            let v = est.into_result(&s, tr.window())?;
            max_s = max_s.max(v);
            m_by_generator.insert(s.to_string(), v);
        }
        let l_hat = max_s + 2 * m_hat;
        Ok(Constants {
            m_hat,
            l_hat,
            n_hat: 20 * m_hat + l_hat,
            vacuous,
            m_by_generator,
        })
    }
}

/// Truncations at consecutive radii ending at the configured one.
pub struct RadiusLadder {
    rungs: Vec<Truncation>,
}

impl RadiusLadder {
    /// Rungs at `max(2, R - depth + 1) ..= R`.
    pub fn new(action: &ActionModel, params: &TruncationParams, depth: u32) -> Result<Self> {
        params.validate()?;
        let top = params.radius;
        let bottom = top.saturating_sub(depth.max(1) - 1).max(2);
        let rungs = (bottom..=top)
            .map(|r| Truncation::new(action, params.with_radius(r)))
            .collect::<Result<Vec<_>>>()?;
        Ok(RadiusLadder { rungs })
    }

    pub fn rungs(&self) -> &[Truncation] {
        &self.rungs
    }

    pub fn top(&self) -> &Truncation {
        self.rungs.last().expect("ladder is never empty")
    }

    /// The rung just below the top, or the top itself if there is only one.
    pub fn prev(&self) -> &Truncation {
        let n = self.rungs.len();
        &self.rungs[n.saturating_sub(2)]
    }

    pub fn at(&self, radius: u32) -> Option<&Truncation> {
        self.rungs.iter().find(|t| t.radius() == radius)
    }
}
