//! Fixed-point arithmetic on the circle 𝕋 = ℝ/ℤ.
//!
//! Points are stored as u64 values in units of 2⁻⁶⁴, so addition and
//! integer multiples are exact modulo 1 via wrapping arithmetic. An
//! irrational rotation number is an [`Alpha`]: a fixed-point approximant
//! together with an explicit error bound. Membership queries near interval
//! endpoints inside the accumulated error budget are classified as
//! boundary cases and tallied separately, never silently resolved.

use crate::error::{Error, Result};

/// One full turn in fixed-point units (2⁶⁴), as u128.
pub const TURN: u128 = 1 << 64;

/// A high-precision approximant of an irrational rotation number.
///
/// `fixed` is round(α·2⁶⁴); `err_log2` bounds |α − fixed·2⁻⁶⁴| ≤ 2^err_log2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Alpha {
    fixed: u64,
    err_log2: i32,
}

impl Alpha {
    /// The golden-ratio conjugate (√5 − 1)/2 ≈ 0.6180339887.
    pub fn golden_conjugate() -> Self {
        Alpha {
            fixed: 0x9E3779B97F4A7C15,
            err_log2: -64,
        }
    }

    /// √2 − 1 ≈ 0.4142135624.
    pub fn sqrt2_minus_one() -> Self {
        Alpha {
            fixed: 0x6A09E667F3BCC908,
            err_log2: -64,
        }
    }

    /// A caller-supplied approximant with a stated error bound. Rejected
    /// unless the error is below 2⁻⁶⁰.
    pub fn from_fixed(fixed: u64, err_log2: i32) -> Result<Self> {
        if err_log2 >= -60 {
            return Err(Error::precision(format!(
                "alpha approximation error 2^{err_log2} is not below 2^-60"
            )));
        }
        Ok(Alpha { fixed, err_log2 })
    }

    pub fn fixed(&self) -> u64 {
        self.fixed
    }

    /// frac(n·α) in fixed-point units, exact for the stored approximant.
    pub fn times(&self, n: i64) -> u64 {
        (n as u64).wrapping_mul(self.fixed)
    }

    pub fn to_f64(&self) -> f64 {
        self.fixed as f64 / TURN as f64
    }

    /// Accumulated-error bound |n·α − n·approx| ≤ |n|·2^err_log2, in
    /// fixed-point units (rounded up).
    pub fn error_units(&self, n: i64) -> u64 {
        let bits = 64 + self.err_log2;
        if bits < 0 {
            // error below one fixed-point unit per multiple
            let shift = (-bits) as u32;
            (n.unsigned_abs() >> shift) + 1
        } else {
            n.unsigned_abs().saturating_mul(1u64 << bits as u32).saturating_add(1)
        }
    }

    /// Largest |n| for which the accumulated error stays below 2⁻³⁰ of a
    /// turn — the precision budget for visit-set queries.
    pub fn max_probe(&self) -> i64 {
        let budget_log2 = -30;
        let margin = budget_log2 - self.err_log2;
        if margin >= 63 {
            i64::MAX
        } else if margin <= 0 {
            0
        } else {
            (1i64 << margin) - 1
        }
    }
}

/// Distance on the circle between two fixed-point values, in units.
pub fn circle_distance(a: u64, b: u64) -> u64 {
    let d = a.wrapping_sub(b);
    d.min(d.wrapping_neg())
}

/// Convert a real in [0, 1] to fixed-point units (saturating at a turn
/// boundary; 1.0 maps to 0 ≡ 1 mod 1 only through [`IntervalUnion`], which
/// tracks full turns explicitly).
pub fn fixed_from_f64(x: f64) -> u64 {
    assert!((0.0..=1.0).contains(&x), "circle coordinate out of [0,1]");
    let scaled = (x * TURN as f64) as u128;
    if scaled >= TURN {
        u64::MAX
    } else {
        scaled as u64
    }
}

/// A finite union of half-open arcs [start, end) on the circle, kept
/// sorted, disjoint, and non-wrapping (wrapping input arcs are split at 0).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntervalUnion {
    /// Sorted, pairwise disjoint, each with start < end, except that a full
    /// circle is the single pair (0, 0) flagged below.
    arcs: Vec<(u64, u64)>,
    full: bool,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion::default()
    }

    pub fn full_circle() -> Self {
        IntervalUnion {
            arcs: Vec::new(),
            full: true,
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.full && self.arcs.is_empty()
    }

    /// Build from arcs given in fixed-point units. `start == end` denotes
    /// the empty arc, an end of 0 with a nonzero start denotes [start, 1),
    /// and arcs with 0 < end < start wrap through 0 and are split.
    pub fn from_arcs(raw: &[(u64, u64)]) -> Self {
        let mut pieces: Vec<(u128, u128)> = Vec::new();
        for &(s, e) in raw {
            if s == e {
                continue;
            }
            let s = s as u128;
            let e = if e == 0 { TURN } else { e as u128 };
            if s < e {
                pieces.push((s, e));
            } else {
                pieces.push((s, TURN));
                pieces.push((0, e));
            }
        }
        pieces.sort_unstable();
        let mut arcs: Vec<(u128, u128)> = Vec::new();
        for (s, e) in pieces {
            match arcs.last_mut() {
                Some(last) if s <= last.1 => {
                    if e > last.1 {
                        last.1 = e;
                    }
                }
                _ => arcs.push((s, e)),
            }
        }
        if arcs.len() == 1 && arcs[0] == (0, TURN) {
            return IntervalUnion::full_circle();
        }
        IntervalUnion {
            arcs: arcs
                .into_iter()
                .map(|(s, e)| (s as u64, if e == TURN { 0 } else { e as u64 }))
                .collect(),
            full: false,
        }
    }

    /// Build from [start, end) pairs of reals in [0, 1].
    pub fn from_f64_intervals(intervals: &[(f64, f64)]) -> Result<Self> {
        for &(s, e) in intervals {
            if !(0.0..=1.0).contains(&s) || !(0.0..=1.0).contains(&e) {
                return Err(Error::argument("interval endpoints must lie in [0, 1]"));
            }
        }
        if intervals.iter().any(|&(s, e)| s == 0.0 && e == 1.0) {
            return Ok(IntervalUnion::full_circle());
        }
        Ok(IntervalUnion::from_arcs(
            &intervals
                .iter()
                .filter(|&&(s, e)| s != e)
                .map(|&(s, e)| (fixed_from_f64(s), if e == 1.0 { 0 } else { fixed_from_f64(e) }))
                .collect::<Vec<_>>(),
        ))
    }

    pub fn arcs(&self) -> &[(u64, u64)] {
        &self.arcs
    }

    /// Total measure in fixed-point units.
    pub fn measure_units(&self) -> u128 {
        if self.full {
            return TURN;
        }
        self.arcs
            .iter()
            .map(|&(s, e)| (if e == 0 { TURN } else { e as u128 }) - s as u128)
            .sum()
    }

    pub fn measure(&self) -> f64 {
        self.measure_units() as f64 / TURN as f64
    }

    pub fn contains(&self, x: u64) -> bool {
        if self.full {
            return true;
        }
        let i = self.arcs.partition_point(|&(s, _)| s <= x);
        if i == 0 {
            return false;
        }
        let (s, e) = self.arcs[i - 1];
        debug_assert!(s <= x);
        e == 0 || x < e
    }

    /// Distance from x to the nearest arc endpoint, in units. Full or
    /// empty unions have no endpoints; returns u64::MAX.
    pub fn distance_to_boundary(&self, x: u64) -> u64 {
        if self.full || self.arcs.is_empty() {
            return u64::MAX;
        }
        self.arcs
            .iter()
            .flat_map(|&(s, e)| [s, e])
            .map(|p| circle_distance(x, p))
            .min()
            .unwrap()
    }

    pub fn complement(&self) -> Self {
        if self.full {
            return IntervalUnion::empty();
        }
        if self.arcs.is_empty() {
            return IntervalUnion::full_circle();
        }
        let mut out = Vec::with_capacity(self.arcs.len() + 1);
        let first_start = self.arcs[0].0;
        let mut cursor = 0u64;
        for &(s, e) in &self.arcs {
            if cursor != s {
                out.push((cursor, s));
            }
            if e == 0 {
                return IntervalUnion::from_arcs(&out);
            }
            cursor = e;
        }
        // wrap-around gap from the last end back to the first start
        out.push((cursor, first_start));
        if cursor == 0 && first_start == 0 {
            out.pop();
        }
        IntervalUnion::from_arcs(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_and_membership() {
        let u = IntervalUnion::from_f64_intervals(&[(0.0, 0.25), (0.5, 0.75)]).unwrap();
        assert!((u.measure() - 0.5).abs() < 1e-15);
        assert!(u.contains(fixed_from_f64(0.1)));
        assert!(!u.contains(fixed_from_f64(0.3)));
        assert!(u.contains(fixed_from_f64(0.5)));
        assert!(!u.contains(fixed_from_f64(0.75)));
    }

    #[test]
    fn overlapping_arcs_merge() {
        let u = IntervalUnion::from_f64_intervals(&[(0.1, 0.3), (0.2, 0.4)]).unwrap();
        assert_eq!(u.arcs().len(), 1);
        assert!((u.measure() - 0.3).abs() < 1e-12);
    }

    #[test]
    fn wrapping_arc_splits() {
        let u = IntervalUnion::from_arcs(&[(u64::MAX - 100, 200)]);
        assert_eq!(u.measure_units(), 301);
        assert!(u.contains(u64::MAX - 50));
        assert!(u.contains(100));
        assert!(!u.contains(1 << 32));
    }

    #[test]
    fn complement_partitions_the_circle() {
        let u = IntervalUnion::from_f64_intervals(&[(0.2, 0.3), (0.6, 0.9)]).unwrap();
        let c = u.complement();
        assert_eq!(u.measure_units() + c.measure_units(), TURN);
        for x in [0.0, 0.1, 0.2, 0.25, 0.3, 0.5, 0.6, 0.89, 0.9, 0.99] {
            let fx = fixed_from_f64(x);
            assert!(u.contains(fx) ^ c.contains(fx), "x = {x}");
        }
        assert!(IntervalUnion::empty().complement().contains(12345));
        assert_eq!(IntervalUnion::full_circle().complement(), IntervalUnion::empty());
    }

    #[test]
    fn golden_conjugate_satisfies_quadratic() {
        // α = (√5−1)/2 satisfies α² + α − 1 = 0.
        let a = Alpha::golden_conjugate().to_f64();
        assert!((a * a + a - 1.0).abs() < 1e-15);
        let s = Alpha::sqrt2_minus_one().to_f64();
        assert!(((s + 1.0) * (s + 1.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn alpha_precision_budget() {
        let a = Alpha::golden_conjugate();
        assert!(a.max_probe() > 1_000_000_000);
        assert!(Alpha::from_fixed(123, -52).is_err());
        assert!(Alpha::from_fixed(123, -61).is_ok());
    }

    #[test]
    fn multiples_walk_the_circle() {
        let a = Alpha::golden_conjugate();
        // n·α accumulates exactly in wrapping arithmetic
        let mut acc: u64 = 0;
        for n in 1..=1000i64 {
            acc = acc.wrapping_add(a.fixed());
            assert_eq!(a.times(n), acc);
        }
        assert_eq!(a.times(-1), a.fixed().wrapping_neg());
    }
}
