//! Visit sets of irrational circle rotations and their discordant
//! derivatives: fat-Cantor targets and anti-recurrence sets.
//!
//! All circle arithmetic is exact 64-bit fixed point (see [`crate::circle`]);
//! probes whose accumulated approximation error could straddle an interval
//! endpoint are classified as boundary cases and tallied separately.

use crate::circle::{circle_distance, fixed_from_f64, Alpha, IntervalUnion, TURN};
use crate::context::{Element, GroupContext};
use crate::error::{Error, Result};
use crate::folner::{window_count, window_size};
use crate::oracle::SetOracle;

/// How a single probe relates to the target set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VisitClass {
    Inside,
    Outside,
    /// Within the accumulated error budget of an interval endpoint; counted
    /// conservatively as outside by the membership oracle.
    Boundary,
}

/// The visit set R_E(x) = {n ∈ ℤ : x + nα ∈ E} of a rotation by α.
#[derive(Clone, Debug)]
pub struct RotationSpec {
    pub alpha: Alpha,
    pub target: IntervalUnion,
    pub base_point: u64,
}

impl RotationSpec {
    pub fn new(alpha: Alpha, target: IntervalUnion, base_point_f64: f64) -> Self {
        RotationSpec {
            alpha,
            target,
            base_point: fixed_from_f64(base_point_f64),
        }
    }

    /// Largest |n| the fixed-point approximant supports.
    pub fn max_probe(&self) -> i64 {
        self.alpha.max_probe()
    }

    /// Classify a probe, failing loudly past the precision budget.
    pub fn classify(&self, n: i64) -> Result<VisitClass> {
        if n.abs() > self.max_probe() {
            return Err(Error::precision(format!(
                "probe {n} exceeds the precision budget {} of the alpha approximant",
                self.max_probe()
            )));
        }
        let point = self.base_point.wrapping_add(self.alpha.times(n));
        let err = self.alpha.error_units(n);
        if self.target.distance_to_boundary(point) < err {
            return Ok(VisitClass::Boundary);
        }
        Ok(if self.target.contains(point) {
            VisitClass::Inside
        } else {
            VisitClass::Outside
        })
    }
}

/// The membership oracle for R_E(x) over ℤ.
///
/// Boundary-classified probes count as outside; probes beyond the
/// precision budget panic rather than answer silently, and the budget
/// (≥ 2³³ for the built-in constants) is far beyond any scannable window.
pub fn rotation_visit_oracle(spec: &RotationSpec) -> SetOracle {
    let spec = spec.clone();
    let density = spec.target.measure();
    SetOracle::new("rotation-visits", move |g: &Element| {
        match spec.classify(g.as_int()).expect("probe beyond precision budget") {
            VisitClass::Inside => true,
            VisitClass::Outside | VisitClass::Boundary => false,
        }
    })
    .with_density(density)
}

/// A density report over ℤ windows with the boundary tally per window.
#[derive(Clone, Debug)]
pub struct RotationDensityEntry {
    pub n: u64,
    pub inside: u128,
    pub boundary: u128,
    pub window: u128,
    pub ratio: f64,
}

pub fn rotation_density_report(
    spec: &RotationSpec,
    n_range: &[u64],
) -> Result<Vec<RotationDensityEntry>> {
    let ctx = GroupContext::IntAdd;
    let mut out = Vec::with_capacity(n_range.len());
    for &n in n_range {
        if n as i64 > spec.max_probe() {
            return Err(Error::precision(format!(
                "window {n} exceeds the precision budget {}",
                spec.max_probe()
            )));
        }
        let window = window_size(&ctx, n)?;
        let inside = window_count(&ctx, n, |e| {
            matches!(spec.classify(e.as_int()), Ok(VisitClass::Inside))
        })?;
        let boundary = window_count(&ctx, n, |e| {
            matches!(spec.classify(e.as_int()), Ok(VisitClass::Boundary))
        })?;
        out.push(RotationDensityEntry {
            n,
            inside,
            boundary,
            window,
            ratio: inside as f64 / window as f64,
        });
    }
    Ok(out)
}

/// A symmetric middle-interval removal scheme on [0, 1): stage k removes a
/// total of (1−c)/2ᵏ split equally among the 2^{k−1} surviving intervals,
/// so the limit set is closed, nowhere dense, and has measure exactly c.
#[derive(Clone, Debug)]
pub struct FatCantorSpec {
    pub target_measure: f64,
    pub depth: u32,
    /// Removed open intervals, in fixed-point units.
    pub removed: Vec<(u64, u64)>,
    surviving: Vec<(u64, u64)>,
}

impl FatCantorSpec {
    /// The stage-`depth` approximation of the set, as an arc union.
    pub fn surviving_union(&self) -> IntervalUnion {
        IntervalUnion::from_arcs(&self.surviving)
    }

    /// Exact remaining measure at this depth.
    pub fn remaining_measure(&self) -> f64 {
        let units: u128 = self
            .surviving
            .iter()
            .map(|&(s, e)| (if e == 0 { TURN } else { e as u128 }) - s as u128)
            .sum();
        units as f64 / TURN as f64
    }

    /// Length of the longest surviving interval.
    pub fn max_surviving_length(&self) -> f64 {
        self.surviving
            .iter()
            .map(|&(s, e)| ((if e == 0 { TURN } else { e as u128 }) - s as u128) as f64)
            .fold(0.0, f64::max)
            / TURN as f64
    }
}

/// Build the removal scheme for a nowhere dense set of measure `c` at the
/// given stage depth. The remaining measure at the returned depth is
/// c + (1−c)·2^{-depth}, and no surviving interval is longer than 2^{-depth}.
pub fn fat_cantor(c: f64, depth: u32) -> Result<FatCantorSpec> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::argument("fat Cantor measure must lie strictly in (0, 1)"));
    }
    if !(1..=20).contains(&depth) {
        return Err(Error::argument("fat Cantor depth must lie in 1..=20"));
    }
    let hole_units = (TURN as f64 * (1.0 - c)) as u128;
    let mut surviving: Vec<(u128, u128)> = vec![(0, TURN)];
    let mut removed = Vec::new();
    for k in 1..=depth {
        let per_interval = (hole_units >> k) / surviving.len() as u128;
        let mut next = Vec::with_capacity(surviving.len() * 2);
        for &(lo, hi) in &surviving {
            let len = hi - lo;
            debug_assert!(per_interval < len);
            let mid = lo + len / 2;
            let (a, b) = (mid - per_interval / 2, mid - per_interval / 2 + per_interval);
            removed.push((a as u64, b as u64));
            next.push((lo, a));
            next.push((b, hi));
        }
        surviving = next;
    }
    Ok(FatCantorSpec {
        target_measure: c,
        depth,
        removed,
        surviving: surviving
            .into_iter()
            .map(|(s, e)| (s as u64, if e == TURN { 0u64 } else { e as u64 }))
            .collect(),
    })
}

/// Parameters of the anti-recurrence set
/// A = ℤ \ ⋃ₙ R′_{Bₙ}, where Bₙ = ⋃_{|k|≤n} (kα − rₙ, kα + rₙ) with
/// rₙ = t/((2n+1)·2^{n+1}) and R′_{Bₙ} drops the finitely many visits with
/// |m| at or below a per-stage cutoff.
#[derive(Clone, Debug)]
pub struct ArSetSpec {
    pub t: f64,
    pub alpha: Alpha,
    /// Stages beyond this index are ignored; their total measure is below
    /// t·2^{-stage_cap+1}.
    pub stage_cap: u32,
    /// Per-stage truncation: stage n keeps only visits with |m| > cutoffs[n].
    pub cutoffs: Vec<i64>,
}

impl ArSetSpec {
    /// Default truncation cutoffₙ = 2ⁿ with stage cap 40.
    pub fn new(t: f64, alpha: Alpha) -> Result<Self> {
        if !(t > 0.0 && t < 1.0) {
            return Err(Error::argument("anti-recurrence parameter t must lie in (0, 1)"));
        }
        let stage_cap = 40;
        let cutoffs = (0..=stage_cap).map(|n| 1i64 << n).collect();
        Ok(ArSetSpec {
            t,
            alpha,
            stage_cap,
            cutoffs,
        })
    }

    pub fn with_cutoffs(mut self, cutoffs: Vec<i64>) -> Result<Self> {
        if cutoffs.len() != self.stage_cap as usize + 1 {
            return Err(Error::argument(format!(
                "expected {} cutoffs, got {}",
                self.stage_cap + 1,
                cutoffs.len()
            )));
        }
        self.cutoffs = cutoffs;
        Ok(self)
    }

    /// rₙ = t/((2n+1)·2^{n+1}) in fixed-point units (0 once the radius
    /// drops below resolution, which only happens past stage ~55).
    pub fn radius_units(&self, n: u32) -> u64 {
        let t_units = fixed_from_f64(self.t) as u128;
        let denom = (2 * n as u128 + 1) << (n + 1);
        (t_units / denom) as u64
    }

    pub fn radius(&self, n: u32) -> f64 {
        self.t / ((2.0 * n as f64 + 1.0) * 2f64.powi(n as i32 + 1))
    }

    /// Whether m lies in the truncated visit set R′_{Bₙ}.
    pub fn in_truncated_stage(&self, m: i64, n: u32) -> Result<bool> {
        if m.abs() <= self.cutoffs[n as usize] {
            return Ok(false);
        }
        let r = self.radius_units(n);
        if r == 0 {
            return Ok(false);
        }
        let reach = n as i64;
        if m.abs() + reach > self.alpha.max_probe() {
            return Err(Error::precision(format!(
                "stage {n} probe at {m} exceeds the precision budget"
            )));
        }
        // mα ∈ Bₙ iff some j ∈ [m−n, m+n] has ‖jα‖ < rₙ
        for j in m - reach..=m + reach {
            if circle_distance(self.alpha.times(j), 0) < r {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Membership of m in A = ℤ \ ⋃ R′_{Bₙ}. Stages with cutoff ≥ |m| are
    /// inactive by construction, so the scan is finite.
    pub fn contains(&self, m: i64) -> Result<bool> {
        for n in 0..=self.stage_cap {
            if self.in_truncated_stage(m, n)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The anti-recurrence oracle over ℤ.
pub fn ar_set(spec: &ArSetSpec) -> SetOracle {
    let spec = spec.clone();
    SetOracle::new(format!("ar-set(t={})", spec.t), move |g: &Element| {
        spec.contains(g.as_int())
            .expect("probe beyond precision budget")
    })
}

/// Violations of the stage-k anti-recurrence property on [lo, hi]:
/// members m+k of A beyond the truncation whose base point mα falls within
/// rₖ/2 of zero. The construction forces this list to be empty.
pub fn anti_recurrence_violations(
    spec: &ArSetSpec,
    k: u32,
    lo: i64,
    hi: i64,
) -> Result<Vec<i64>> {
    let half = self_radius_half(spec, k);
    let mut out = Vec::new();
    for m in lo..=hi {
        if circle_distance(spec.alpha.times(m), 0) < half
            && m.abs() > spec.cutoffs[k as usize] + k as i64
            && spec.contains(m + k as i64)?
        {
            out.push(m);
        }
    }
    Ok(out)
}

fn self_radius_half(spec: &ArSetSpec, k: u32) -> u64 {
    spec.radius_units(k) / 2
}

/// The measure of ⋃_{n ≤ stage_cap} Bₙ for a given t, by exact arc-union
/// sweep. The ignored tail contributes at most t·2^{-stage_cap+1}.
pub fn ar_union_measure(t: f64, alpha: Alpha, stage_cap: u32) -> Result<f64> {
    let spec = ArSetSpec {
        t,
        alpha,
        stage_cap,
        cutoffs: vec![0; stage_cap as usize + 1],
    };
    let mut arcs = Vec::new();
    for n in 0..=stage_cap {
        let r = spec.radius_units(n);
        if r == 0 {
            continue;
        }
        for k in -(n as i64)..=n as i64 {
            let center = alpha.times(k);
            arcs.push((center.wrapping_sub(r), center.wrapping_add(r)));
        }
    }
    Ok(IntervalUnion::from_arcs(&arcs).measure())
}

/// Choose t so that the stage-capped measure of ⋃Bₙ is within `precision`
/// of 1 − target_c, by bisection on the continuous nondecreasing map
/// t ↦ μ(⋃Bₙ).
pub fn tune_ar_density(target_c: f64, alpha: Alpha, precision: f64) -> Result<f64> {
    if !(target_c > 0.0 && target_c < 1.0) {
        return Err(Error::argument("target density must lie in (0, 1)"));
    }
    if precision <= 0.0 {
        return Err(Error::argument("precision must be positive"));
    }
    let stage_cap = 40;
    let target = 1.0 - target_c;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f = ar_union_measure(mid, alpha, stage_cap)?;
        if (f - target).abs() <= precision {
            return Ok(mid);
        }
        if f < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::numeric(format!(
        "tune_ar_density did not reach precision {precision} within 200 bisection steps"
    )))
}
