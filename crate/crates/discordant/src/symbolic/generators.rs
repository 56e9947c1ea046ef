//! Constructive disjunctive and extremely-non-averageable configurations.
//!
//! The disjunctive generator places every full word of every width up to a
//! horizon at fresh, pairwise disjoint offsets, so each placement witnesses
//! all cylinder patterns the word extends; the placement log records the
//! offsets. The ENA generator selects a window subsequence whose sizes
//! dominate the sum of all earlier ones by a factor sparsity^k and fills
//! the increments alternately in all-match and no-match mode, making the
//! word frequency swing between ≈1 and ≈0 along the designed windows.

use serde::{Deserialize, Serialize};

use crate::context::{Element, GroupContext};
use crate::error::{Error, Result};
use crate::symbolic::packing::WordPattern;
use crate::symbolic::BinaryConfig;

/// One placed word: `bits` bit i sits at cell offset + i (ℕ/ℤ), or at
/// base + cube cell i for ℤᵈ cubes.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Placement {
    pub width: u32,
    /// Word bits, least significant bit = first cell.
    pub word: u64,
    pub offset: i64,
}

/// A constructed disjunctive configuration with its placement log.
#[derive(Clone)]
pub struct DisjunctiveGenerator {
    pub config: BinaryConfig,
    pub placements: Vec<Placement>,
    /// Cells at or past this offset are unplaced (and evaluate to 0).
    pub horizon: i64,
    pub max_width: u32,
}

/// Build a configuration on ℕ realizing every cylinder pattern with
/// support inside an initial segment of length ≤ max_width.
///
/// Words are laid out consecutively from 1 by increasing width; the
/// pattern (L₁, L₂) with span s is witnessed wherever any width-s word
/// extending it was placed. max_width is capped at 16 (the layout size is
/// Σ w·2ʷ cells).
pub fn disjunctive_generator(ctx: &GroupContext, max_width: u32) -> Result<DisjunctiveGenerator> {
    match ctx {
        GroupContext::NatAdd | GroupContext::IntAdd => {}
        other => {
            return Err(Error::config(format!(
                "disjunctive generator supports ℕ and ℤ, not {other:?}"
            )))
        }
    }
    if max_width == 0 || max_width > 16 {
        return Err(Error::argument("max_width must lie in 1..=16"));
    }
    let start: i64 = match ctx {
        GroupContext::NatAdd => 1,
        _ => 0,
    };
    let mut placements = Vec::new();
    let mut bits: Vec<bool> = Vec::new();
    let mut offset = start;
    for width in 1..=max_width {
        for word in 0u64..(1 << width) {
            placements.push(Placement {
                width,
                word,
                offset,
            });
            for i in 0..width {
                bits.push((word >> i) & 1 == 1);
            }
            offset += width as i64;
        }
    }
    let horizon = offset;
    let label = format!("disjunctive(≤{max_width})");
    let bits_arc = std::sync::Arc::new(bits);
    let config = BinaryConfig::new(label, move |x: &Element| {
        let v = x.as_int();
        if v < start || v >= horizon {
            return false;
        }
        bits_arc[(v - start) as usize]
    });
    Ok(DisjunctiveGenerator {
        config,
        placements,
        horizon,
        max_width,
    })
}

/// Lookup: the first placement of a given word.
impl DisjunctiveGenerator {
    pub fn placement_of(&self, width: u32, word: u64) -> Option<&Placement> {
        self.placements
            .iter()
            .find(|p| p.width == width && p.word == word)
    }
}

/// Block fill modes of the ENA construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BlockMode {
    /// Tiled with the word, so every aligned placement matches.
    Match,
    /// Constant at the negation of the word's first bit, so no placement
    /// anywhere in the block matches.
    AntiMatch,
}

/// A configuration with prescribed frequency swings along a designed
/// window subsequence.
#[derive(Clone)]
pub struct EnaGenerator {
    pub config: BinaryConfig,
    /// Window indices n₁ < n₂ < ... of the designed subsequence.
    pub boundaries: Vec<i64>,
    pub sparsity: u32,
    pub word: WordPattern,
}

impl EnaGenerator {
    pub fn designed_windows(&self) -> Vec<u64> {
        self.boundaries.iter().map(|&n| n as u64).collect()
    }
}

/// Build the ENA configuration for a given interval word.
///
/// Window indices follow nₖ = sparsityᵏ·(1 + Σ_{j<k} nⱼ), so the prefix
/// weight Σ_{j<k}|Φₙⱼ| / |Φₙₖ| is at most sparsity^{-k}; the increment
/// Ψₖ = Φₙₖ \ Φₙₖ₋₁ is filled in match mode for even k and anti-match
/// mode for odd k. Frequencies along the designed windows then swing
/// within 2·sparsity^{-k} of 1 and 0.
pub fn ena_generator(
    ctx: &GroupContext,
    sparsity: u32,
    blocks: usize,
    word: &WordPattern,
) -> Result<EnaGenerator> {
    match ctx {
        GroupContext::NatAdd | GroupContext::IntAdd => {}
        other => {
            return Err(Error::config(format!(
                "ENA generator supports ℕ and ℤ, not {other:?}"
            )))
        }
    }
    if sparsity < 2 {
        return Err(Error::argument("sparsity factor must be >= 2"));
    }
    if blocks == 0 || blocks > 12 {
        return Err(Error::argument("block count must lie in 1..=12"));
    }
    let width = word
        .interval_width()
        .ok_or_else(|| Error::argument("ENA generator requires an interval word"))? as i64;

    let mut boundaries: Vec<i64> = Vec::with_capacity(blocks);
    let mut sum: i64 = 0;
    for k in 1..=blocks as u32 {
        let factor = (sparsity as i64)
            .checked_pow(k)
            .ok_or_else(|| Error::argument("sparsity^k overflows i64"))?;
        let n = factor
            .checked_mul(1 + sum)
            .ok_or_else(|| Error::argument("designed window size overflows i64"))?;
        // round up to a multiple of the word width so the stride-aligned
        // packing phase of every designed window hits the tiling grid
        let n = (n + width - 1) / width * width;
        boundaries.push(n);
        sum += n;
    }

    let bits = word.bits.clone();
    let anti = !word.bits[0];
    let bounds = boundaries.clone();
    let is_nat = matches!(ctx, GroupContext::NatAdd);
    let config = BinaryConfig::new(
        format!("ena(s={sparsity}, w={width}, {blocks} blocks)"),
        move |x: &Element| {
            let v = x.as_int();
            let mag = if is_nat {
                if v < 1 {
                    return false;
                }
                v
            } else {
                v.abs()
            };
            // block k covers magnitudes (n_{k-1}, n_k]
            for (i, &nk) in bounds.iter().enumerate() {
                if mag <= nk {
                    let mode = if (i + 1) % 2 == 0 {
                        BlockMode::Match
                    } else {
                        BlockMode::AntiMatch
                    };
                    return match mode {
                        BlockMode::AntiMatch => anti,
                        BlockMode::Match => {
                            // the tiling is anchored to the window grid
                            // (cells 1, 1+w, ... in ℕ; multiples of w in ℤ)
                            // rather than per block, so stride-aligned
                            // packings read whole words
                            let idx = if is_nat {
                                (v - 1).rem_euclid(width)
                            } else {
                                v.rem_euclid(width)
                            };
                            bits[idx as usize]
                        }
                    };
                }
            }
            false // beyond the designed horizon
        },
    );
    Ok(EnaGenerator {
        config,
        boundaries,
        sparsity,
        word: word.clone(),
    })
}
