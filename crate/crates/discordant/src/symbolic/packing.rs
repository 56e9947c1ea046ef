//! Non-overlapping word frequencies along windows.
//!
//! The frequency of a word (K, ω) in a configuration is measured over
//! maximal packings of K-translates into the window. For interval shapes
//! in ℕ/ℤ a greedy stride walk is an exact maximal packing and every
//! maximal packing is one of its w phase shifts; the reported frequency
//! takes the max over the maximal phases, matching the definition's max
//! over packings. For other shapes a greedy packing is used and reported
//! as such, alongside the trivial |X|/|K| upper bound on any packing.

use std::collections::HashSet;

use crate::context::{Element, GroupContext};
use crate::error::{Error, Result};
use crate::folner::{folner_window, window_size};
use crate::symbolic::BinaryConfig;

/// A word over a finite shape: bit ω(h) for each cell h ∈ K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordPattern {
    pub cells: Vec<Element>,
    pub bits: Vec<bool>,
}

impl WordPattern {
    pub fn new(cells: Vec<Element>, bits: Vec<bool>) -> Result<Self> {
        if cells.len() != bits.len() {
            return Err(Error::argument("word bits must cover every cell of K"));
        }
        if cells.is_empty() {
            return Err(Error::argument("word shape K must be nonempty"));
        }
        Ok(WordPattern { cells, bits })
    }

    /// The interval word over K = {0..width-1} in ℕ/ℤ.
    pub fn interval(bits: &[bool]) -> Result<Self> {
        WordPattern::new((0..bits.len() as i64).map(Element::int).collect(), bits.to_vec())
    }

    /// The single-cell word "1" on K = {0}.
    pub fn single_one() -> Self {
        WordPattern {
            cells: vec![Element::int(0)],
            bits: vec![true],
        }
    }

    /// Width when K is an interval {0..w-1}; None otherwise.
    pub fn interval_width(&self) -> Option<usize> {
        let w = self.cells.len();
        for (i, c) in self.cells.iter().enumerate() {
            if c.arity() != 1 || c.as_int() != i as i64 {
                return None;
            }
        }
        Some(w)
    }
}

/// A verified packing: base points whose K-translates are pairwise
/// disjoint and inside the window.
#[derive(Clone, Debug)]
pub struct PackingFamily {
    pub shape: Vec<Element>,
    pub window_index: u64,
    pub base_points: Vec<Element>,
}

impl PackingFamily {
    /// Direct check of the packing invariants.
    pub fn validate(&self, ctx: &GroupContext) -> bool {
        let mut used: HashSet<Element> = HashSet::new();
        for y in &self.base_points {
            for k in &self.shape {
                let cell = ctx.op(k, y);
                if !crate::folner::in_window(ctx, self.window_index, &cell) {
                    return false;
                }
                if !used.insert(cell) {
                    return false;
                }
            }
        }
        true
    }
}

/// Greedy packing of an arbitrary finite shape into a window, scanning
/// base points in window order. The result is maximal under extension by
/// later candidates but not guaranteed maximum-cardinality; |X|/|K| bounds
/// any packing from above.
pub fn greedy_packing(
    ctx: &GroupContext,
    shape: &[Element],
    window_index: u64,
) -> Result<PackingFamily> {
    let window = folner_window(ctx, window_index)?;
    let mut used: HashSet<Element> = HashSet::new();
    let mut base_points = Vec::new();
    for y in &window.elements {
        let cells: Vec<Element> = shape.iter().map(|k| ctx.op(k, y)).collect();
        let fits = cells
            .iter()
            .all(|c| crate::folner::in_window(ctx, window_index, c) && !used.contains(c));
        if fits {
            used.extend(cells);
            base_points.push(y.clone());
        }
    }
    Ok(PackingFamily {
        shape: shape.to_vec(),
        window_index,
        base_points,
    })
}

/// One phase of an interval packing.
#[derive(Clone, Debug)]
pub struct PhasePacking {
    pub phase: u64,
    pub packing_size: u64,
    pub matched: u64,
    pub fraction: f64,
}

/// Word frequency over a window: matched fraction over maximal packings.
#[derive(Clone, Debug)]
pub struct WordFrequencyReport {
    pub window_index: u64,
    /// All packings of maximum cardinality (one per phase for intervals).
    pub phases: Vec<PhasePacking>,
    pub max_fraction: f64,
    pub min_fraction: f64,
    /// ⌊|X|/|K|⌋, an upper bound for any packing.
    pub trivial_upper_bound: u64,
}

/// Exact maximal interval packings: for K = {0..w-1} in a ℕ/ℤ window the
/// stride-w walk from each phase p ∈ {0..w-1} is a packing, and those of
/// maximum cardinality are exactly the maximal packings.
pub fn word_frequency(
    alpha: &BinaryConfig,
    ctx: &GroupContext,
    word: &WordPattern,
    window_index: u64,
) -> Result<Option<WordFrequencyReport>> {
    let width = word.interval_width().ok_or_else(|| {
        Error::argument("word_frequency requires an interval shape; use word_frequency_greedy")
    })? as i64;
    let (lo, hi): (i64, i64) = match ctx {
        GroupContext::NatAdd => (1, window_index as i64),
        GroupContext::IntAdd => (-(window_index as i64), window_index as i64),
        other => {
            return Err(Error::config(format!(
                "interval word frequency is defined over ℕ/ℤ, not {other:?}"
            )))
        }
    };
    let total = hi - lo + 1;
    if total < width {
        return Ok(None); // no packing fits: undefined for this window
    }
    let max_count = (total / width) as u64;
    let mut phases = Vec::new();
    for phase in 0..width {
        let count = ((total - phase) / width) as u64;
        if count < max_count {
            continue; // not a maximal packing
        }
        let mut matched = 0u64;
        let mut y = lo + phase;
        while y + width - 1 <= hi {
            let hit = (0..width).all(|i| alpha.eval(&Element::int(y + i)) == word.bits[i as usize]);
            if hit {
                matched += 1;
            }
            y += width;
        }
        phases.push(PhasePacking {
            phase: phase as u64,
            packing_size: count,
            matched,
            fraction: matched as f64 / count as f64,
        });
    }
    let max_fraction = phases.iter().map(|p| p.fraction).fold(f64::MIN, f64::max);
    let min_fraction = phases.iter().map(|p| p.fraction).fold(f64::MAX, f64::min);
    Ok(Some(WordFrequencyReport {
        window_index,
        phases,
        max_fraction,
        min_fraction,
        trivial_upper_bound: max_count,
    }))
}

/// Greedy-packing word frequency for arbitrary shapes, with the packing
/// itself returned for inspection.
pub fn word_frequency_greedy(
    alpha: &BinaryConfig,
    ctx: &GroupContext,
    word: &WordPattern,
    window_index: u64,
) -> Result<Option<(f64, PackingFamily)>> {
    let packing = greedy_packing(ctx, &word.cells, window_index)?;
    if packing.base_points.is_empty() {
        return Ok(None);
    }
    let matched = packing
        .base_points
        .iter()
        .filter(|y| {
            word.cells
                .iter()
                .zip(word.bits.iter())
                .all(|(k, &bit)| alpha.eval(&ctx.op(k, y)) == bit)
        })
        .count();
    Ok(Some((
        matched as f64 / packing.base_points.len() as f64,
        packing,
    )))
}

/// Running frequency extremes of one word across a window range.
#[derive(Clone, Debug)]
pub struct WordStats {
    pub word: WordPattern,
    pub per_window: Vec<(u64, Option<f64>)>,
    pub upper_freq: f64,
    pub lower_freq: f64,
}

/// Max/min of the word frequency across the requested windows, per word.
/// Windows too small to pack the word report no frequency and do not
/// enter the extremes.
pub fn ena_statistics(
    alpha: &BinaryConfig,
    ctx: &GroupContext,
    words: &[WordPattern],
    window_range: &[u64],
) -> Result<Vec<WordStats>> {
    let mut out = Vec::new();
    for word in words {
        let mut per_window = Vec::new();
        let mut upper = f64::MIN;
        let mut lower = f64::MAX;
        for &n in window_range {
            let freq = word_frequency(alpha, ctx, word, n)?.map(|r| r.max_fraction);
            if let Some(f) = freq {
                upper = upper.max(f);
                lower = lower.min(f);
            }
            per_window.push((n, freq));
        }
        out.push(WordStats {
            word: word.clone(),
            per_window,
            upper_freq: upper,
            lower_freq: lower,
        });
    }
    Ok(out)
}

/// Sliding (overlapping) word statistics over one window: for each of the
/// 2^w words on the interval K = {0..w-1}, the count of positions g with
/// Kg inside the window matching the word, normalized by |Φₙ|.
#[derive(Clone, Debug)]
pub struct NormalStatsReport {
    pub window_index: u64,
    pub width: u32,
    /// freqs[w] for word w read least-significant-bit = cell 0.
    pub freqs: Vec<f64>,
    pub expected: f64,
    pub max_abs_deviation: f64,
}

pub fn normal_statistics(
    alpha: &BinaryConfig,
    ctx: &GroupContext,
    width: u32,
    window_index: u64,
) -> Result<NormalStatsReport> {
    if width == 0 || width > 24 {
        return Err(Error::argument("word width must lie in 1..=24"));
    }
    let (lo, hi): (i64, i64) = match ctx {
        GroupContext::NatAdd => (1, window_index as i64),
        GroupContext::IntAdd => (-(window_index as i64), window_index as i64),
        other => {
            return Err(Error::config(format!(
                "normal statistics are defined over ℕ/ℤ, not {other:?}"
            )))
        }
    };
    let w = width as i64;
    let mut counts = vec![0u64; 1 << width];
    if hi - lo + 1 >= w {
        // rolling word index: bit i of the index is α(g + i)
        let mut idx: usize = 0;
        for i in 0..w {
            idx |= (alpha.eval(&Element::int(lo + i)) as usize) << i;
        }
        counts[idx] += 1;
        let mask = (1usize << width) - 1;
        let mut g = lo + 1;
        while g + w - 1 <= hi {
            idx = (idx >> 1) | ((alpha.eval(&Element::int(g + w - 1)) as usize) << (width - 1));
            idx &= mask;
            counts[idx] += 1;
            g += 1;
        }
    }
    let window = window_size(ctx, window_index)? as f64;
    let expected = 0.5f64.powi(width as i32);
    let freqs: Vec<f64> = counts.iter().map(|&c| c as f64 / window).collect();
    let max_abs_deviation = freqs
        .iter()
        .map(|f| (f - expected).abs())
        .fold(0.0, f64::max);
    Ok(NormalStatsReport {
        window_index,
        width,
        freqs,
        expected,
        max_abs_deviation,
    })
}
