//! Følner windows, exact window counting, and density reports.
//!
//! The built-in window sequences are {1..n} for ℕ, {-n..n} for ℤ,
//! {-n..n}ᵈ for ℤᵈ, and the box {-n..n}²×{-n²..n²} for the Heisenberg
//! group, with the n²-range on the corner coordinate c — the unique
//! assignment under which the Følner defect of the box sequence vanishes
//! (left multiplication by (a,0,0) moves c by ab, which stays small only
//! relative to a range that grows like n²).
//!
//! Counting is exact: windows are scanned in integer arithmetic and
//! partitioned across worker threads, with counts merged by summation.

use rayon::prelude::*;

use crate::context::{Element, GroupContext};
use crate::error::{Error, Result};
use crate::oracle::SetOracle;

/// Largest window size `folner_window` will materialize. Counting
/// (`window_count`, `density_report`) streams and has no such limit.
const MATERIALIZE_LIMIT: u128 = 1 << 24;

/// An explicit finite window Φₙ.
#[derive(Clone, Debug)]
pub struct FolnerWindow {
    pub index: u64,
    pub elements: Vec<Element>,
}

/// Closed-form |Φₙ|.
pub fn window_size(ctx: &GroupContext, n: u64) -> Result<u128> {
    if n < 1 {
        return Err(Error::argument("window index must be >= 1"));
    }
    let n = n as u128;
    match ctx {
        GroupContext::NatAdd => Ok(n),
        GroupContext::IntAdd => Ok(2 * n + 1),
        GroupContext::IntVecAdd(d) => {
            let mut s: u128 = 1;
            for _ in 0..*d {
                s = s
                    .checked_mul(2 * n + 1)
                    .ok_or_else(|| Error::argument("window size overflows u128"))?;
            }
            Ok(s)
        }
        GroupContext::Heisenberg => Ok((2 * n + 1) * (2 * n + 1) * (2 * n * n + 1)),
        GroupContext::FreeWords(_) => Err(Error::config(
            "free words carry no Følner sequence (the free semigroup is not amenable)",
        )),
    }
}

/// Whether an element lies in Φₙ. Arity mismatches simply report false.
pub fn in_window(ctx: &GroupContext, n: u64, e: &Element) -> bool {
    let n = n as i64;
    match ctx {
        GroupContext::NatAdd => e.arity() == 1 && (1..=n).contains(&e.coords()[0]),
        GroupContext::IntAdd => e.arity() == 1 && e.coords()[0].abs() <= n,
        GroupContext::IntVecAdd(d) => {
            e.arity() == *d && e.coords().iter().all(|c| c.abs() <= n)
        }
        GroupContext::Heisenberg => {
            e.arity() == 3
                && e.coords()[0].abs() <= n
                && e.coords()[1].abs() <= n
                && e.coords()[2].abs() <= n * n
        }
        GroupContext::FreeWords(_) => false,
    }
}

/// Sequential iteration over Φₙ in coordinate-lexicographic order.
pub fn for_each_window_element<F: FnMut(&Element) -> std::ops::ControlFlow<()>>(
    ctx: &GroupContext,
    n: u64,
    mut f: F,
) -> Result<()> {
    use std::ops::ControlFlow;
    window_size(ctx, n)?;
    let n = n as i64;
    match ctx {
        GroupContext::NatAdd => {
            for k in 1..=n {
                if let ControlFlow::Break(()) = f(&Element::int(k)) {
                    return Ok(());
                }
            }
        }
        GroupContext::IntAdd => {
            for k in -n..=n {
                if let ControlFlow::Break(()) = f(&Element::int(k)) {
                    return Ok(());
                }
            }
        }
        GroupContext::IntVecAdd(d) => {
            let mut coords = vec![-n; *d];
            'outer: loop {
                if let ControlFlow::Break(()) = f(&Element::from_slice(&coords)) {
                    return Ok(());
                }
                let mut i = *d;
                loop {
                    if i == 0 {
                        break 'outer;
                    }
                    i -= 1;
                    coords[i] += 1;
                    if coords[i] <= n {
                        break;
                    }
                    coords[i] = -n;
                }
            }
        }
        GroupContext::Heisenberg => {
            for a in -n..=n {
                for b in -n..=n {
                    for c in -n * n..=n * n {
                        if let ControlFlow::Break(()) = f(&Element::triple(a, b, c)) {
                            return Ok(());
                        }
                    }
                }
            }
        }
        GroupContext::FreeWords(_) => unreachable!(),
    }
    Ok(())
}

/// The explicit window Φₙ.
///
/// Refuses to materialize more than 2²⁴ elements; use [`window_count`] for
/// large windows.
pub fn folner_window(ctx: &GroupContext, n: u64) -> Result<FolnerWindow> {
    let size = window_size(ctx, n)?;
    if size > MATERIALIZE_LIMIT {
        return Err(Error::budget(format!(
            "window of size {size} exceeds the materialization limit {MATERIALIZE_LIMIT}"
        )));
    }
    let mut elements = Vec::with_capacity(size as usize);
    for_each_window_element(ctx, n, |e| {
        elements.push(e.clone());
        std::ops::ControlFlow::Continue(())
    })?;
    debug_assert_eq!(elements.len() as u128, size);
    Ok(FolnerWindow { index: n, elements })
}

/// |{x ∈ Φₙ : pred(x)}| by exact parallel counting.
///
/// The window is partitioned along its first coordinate; each strip is
/// scanned sequentially and the strip counts are summed.
pub fn window_count<P: Fn(&Element) -> bool + Sync>(
    ctx: &GroupContext,
    n: u64,
    pred: P,
) -> Result<u128> {
    window_size(ctx, n)?;
    let ni = n as i64;
    let count = match ctx {
        GroupContext::NatAdd => (1..=ni)
            .into_par_iter()
            .filter(|&k| pred(&Element::int(k)))
            .count() as u128,
        GroupContext::IntAdd => (-ni..=ni)
            .into_par_iter()
            .filter(|&k| pred(&Element::int(k)))
            .count() as u128,
        GroupContext::IntVecAdd(d) => {
            let d = *d;
            if d == 1 {
                return window_count(&GroupContext::IntAdd, n, pred);
            }
            (-ni..=ni)
                .into_par_iter()
                .map(|first| {
                    let mut local: u128 = 0;
                    let mut coords = vec![-ni; d];
                    coords[0] = first;
                    'outer: loop {
                        if pred(&Element::from_slice(&coords)) {
                            local += 1;
                        }
                        let mut i = d;
                        loop {
                            if i == 1 {
                                break 'outer;
                            }
                            i -= 1;
                            coords[i] += 1;
                            if coords[i] <= ni {
                                break;
                            }
                            coords[i] = -ni;
                        }
                    }
                    local
                })
                .sum()
        }
        GroupContext::Heisenberg => (-ni..=ni)
            .into_par_iter()
            .map(|a| {
                let mut local: u128 = 0;
                for b in -ni..=ni {
                    for c in -ni * ni..=ni * ni {
                        if pred(&Element::triple(a, b, c)) {
                            local += 1;
                        }
                    }
                }
                local
            })
            .sum(),
        GroupContext::FreeWords(_) => unreachable!("window_size rejects FreeWords"),
    };
    Ok(count)
}

/// The Følner defect |Φₙ △ gΦₙ| / |Φₙ|.
///
/// Since left translation is injective, |Φ △ gΦ| = 2(|Φ| − |Φ ∩ gΦ|), and
/// x ∈ gΦₙ exactly when the left quotient g⁻¹x exists and lies in Φₙ; the
/// intersection is counted in one streaming pass.
pub fn folner_defect(ctx: &GroupContext, g: &Element, n: u64) -> Result<f64> {
    let size = window_size(ctx, n)?;
    let ctx2 = ctx.clone();
    let g = g.clone();
    let inter = window_count(ctx, n, move |x| {
        ctx2.left_quotient(&g, x)
            .is_some_and(|y| in_window(&ctx2, n, &y))
    })?;
    Ok(2.0 * (size - inter) as f64 / size as f64)
}

/// One row of a density report.
#[derive(Clone, Debug)]
pub struct DensityEntry {
    pub n: u64,
    pub count: u128,
    pub window: u128,
    pub ratio: f64,
}

/// Window ratios |A ∩ Φₙ|/|Φₙ| with running limsup/liminf estimates.
///
/// The upper and lower estimates are the max and min over the tail half
/// (the last ⌈len/2⌉ requested indices) — a simple, monotone-stable
/// convention for extrapolating from finitely many windows.
#[derive(Clone, Debug)]
pub struct DensityReport {
    pub label: String,
    pub known_density: Option<f64>,
    pub entries: Vec<DensityEntry>,
    pub upper_estimate: f64,
    pub lower_estimate: f64,
}

impl DensityReport {
    pub fn ratios(&self) -> Vec<(u64, f64)> {
        self.entries.iter().map(|e| (e.n, e.ratio)).collect()
    }

    pub fn last_ratio(&self) -> f64 {
        self.entries.last().map(|e| e.ratio).unwrap_or(0.0)
    }
}

/// Exact density ratios of `oracle` along the windows with the given
/// indices, which must be nonempty and strictly increasing.
pub fn density_report(
    oracle: &SetOracle,
    ctx: &GroupContext,
    n_range: &[u64],
) -> Result<DensityReport> {
    if n_range.is_empty() {
        return Err(Error::argument("density_report requires at least one window index"));
    }
    if n_range.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::argument("window indices must be strictly increasing"));
    }
    let mut entries = Vec::with_capacity(n_range.len());
    for &n in n_range {
        let window = window_size(ctx, n)?;
        let count = window_count(ctx, n, |e| oracle.contains(e))?;
        entries.push(DensityEntry {
            n,
            count,
            window,
            ratio: count as f64 / window as f64,
        });
    }
    let tail = entries.len().div_ceil(2);
    let tail_slice = &entries[entries.len() - tail..];
    let upper = tail_slice.iter().map(|e| e.ratio).fold(f64::MIN, f64::max);
    let lower = tail_slice.iter().map(|e| e.ratio).fold(f64::MAX, f64::min);
    Ok(DensityReport {
        label: oracle.label().to_string(),
        known_density: oracle.known_density(),
        entries,
        upper_estimate: upper,
        lower_estimate: lower,
    })
}

/// The oracle for g⁻¹A = {x : gx ∈ A}. Upper density along any Følner
/// sequence is invariant under this shift.
pub fn shift_oracle(oracle: &SetOracle, ctx: &GroupContext, g: &Element) -> SetOracle {
    oracle.shifted(ctx, g)
}
