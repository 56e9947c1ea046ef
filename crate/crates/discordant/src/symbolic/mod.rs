//! The shift system on {0,1}^G.
//!
//! A subset of G is identified with its indicator configuration; G acts by
//! (gα)(x) = α(xg), the left shift on one- and two-sided sequences. The
//! submodules provide cylinder matching and disjunctivity scans (this
//! file), non-overlapping word frequencies and normality statistics
//! ([`packing`]), constructive disjunctive and extremely-non-averageable
//! configurations ([`generators`]), and orbit-closure window queries with
//! the syndetic-element extraction behind the piecewise-syndeticity
//! characterization ([`orbit`]).

pub mod generators;
pub mod orbit;
pub mod packing;

use std::sync::Arc;

use crate::context::{Element, GroupContext};
use crate::error::{Error, Result};
use crate::oracle::SetOracle;
use crate::prng;

/// A point of {0,1}^G: a pure, lazily evaluated bit per element.
#[derive(Clone)]
pub struct BinaryConfig {
    eval: Arc<dyn Fn(&Element) -> bool + Send + Sync>,
    label: String,
}

impl BinaryConfig {
    pub fn new(
        label: impl Into<String>,
        eval: impl Fn(&Element) -> bool + Send + Sync + 'static,
    ) -> Self {
        BinaryConfig {
            eval: Arc::new(eval),
            label: label.into(),
        }
    }

    pub fn eval(&self, x: &Element) -> bool {
        (self.eval)(x)
    }

    pub fn bit(&self, x: &Element) -> u8 {
        self.eval(x) as u8
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The indicator configuration 1_A of an oracle's set.
    pub fn indicator(oracle: &SetOracle) -> Self {
        let oracle = oracle.clone();
        BinaryConfig::new(format!("1_{}", oracle.label()), move |x| oracle.contains(x))
    }

    /// The underlying subset as an oracle.
    pub fn as_oracle(&self) -> SetOracle {
        let me = self.clone();
        SetOracle::new(self.label.clone(), move |x: &Element| me.eval(x))
    }

    pub fn ones() -> Self {
        BinaryConfig::new("ones", |_| true)
    }

    pub fn zeros() -> Self {
        BinaryConfig::new("zeros", |_| false)
    }

    /// Reproducible fair coin flips: bit(x) is the top bit of the SplitMix
    /// finalizer applied to the seeded, coordinate-folded element encoding.
    pub fn pseudorandom(seed: u64) -> Self {
        BinaryConfig::new(format!("pseudorandom(seed={seed})"), move |x: &Element| {
            let mut h = seed ^ 0xD1B54A32D192ED03;
            for &c in x.coords() {
                h = prng::mix(h ^ c as u64);
            }
            h >> 63 == 1
        })
    }
}

impl std::fmt::Debug for BinaryConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BinaryConfig({})", self.label)
    }
}

/// (gα)(x) = α(xg): the shift of a configuration by g.
pub fn shift_config(alpha: &BinaryConfig, ctx: &GroupContext, g: &Element) -> BinaryConfig {
    let alpha = alpha.clone();
    let ctx = ctx.clone();
    let g = g.clone();
    BinaryConfig::new(format!("{g}·{}", alpha.label), move |x| {
        alpha.eval(&ctx.op(x, &g))
    })
}

/// A cylinder pair (L₁, L₂): configurations equal to 1 on L₁ and 0 on L₂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderPattern {
    pub ones: Vec<Element>,
    pub zeros: Vec<Element>,
}

impl CylinderPattern {
    pub fn new(ones: Vec<Element>, zeros: Vec<Element>) -> Result<Self> {
        for a in &ones {
            if zeros.contains(a) {
                return Err(Error::argument(format!(
                    "cylinder sets overlap at {a}"
                )));
            }
        }
        Ok(CylinderPattern { ones, zeros })
    }

    pub fn support_size(&self) -> usize {
        self.ones.len() + self.zeros.len()
    }

    /// Every pattern with support inside {0..span-1} of ℕ/ℤ: each cell is
    /// required-one, required-zero, or unconstrained. 3^span patterns,
    /// the empty pattern included.
    pub fn all_with_span(span: u32) -> Vec<CylinderPattern> {
        let mut out = Vec::new();
        let total = 3u64.pow(span);
        for code in 0..total {
            let mut ones = Vec::new();
            let mut zeros = Vec::new();
            let mut c = code;
            for cell in 0..span {
                match c % 3 {
                    1 => ones.push(Element::int(cell as i64)),
                    2 => zeros.push(Element::int(cell as i64)),
                    _ => {}
                }
                c /= 3;
            }
            out.push(CylinderPattern { ones, zeros });
        }
        out
    }

    /// The all-ones pattern over {0..len-1}.
    pub fn ones_run(len: u32) -> CylinderPattern {
        CylinderPattern {
            ones: (0..len as i64).map(Element::int).collect(),
            zeros: Vec::new(),
        }
    }
}

/// α ∈ V(L₁g, L₂g): α is 1 on L₁g and 0 on L₂g. Equivalently gα lies in
/// the cylinder V(L₁, L₂).
pub fn cylinder_match(
    alpha: &BinaryConfig,
    ctx: &GroupContext,
    pattern: &CylinderPattern,
    g: &Element,
) -> bool {
    pattern.ones.iter().all(|l| alpha.eval(&ctx.op(l, g)))
        && pattern.zeros.iter().all(|l| !alpha.eval(&ctx.op(l, g)))
}

/// Per-pattern least witness of a disjunctivity scan.
#[derive(Clone, Debug)]
pub struct ScanEntry {
    pub pattern: CylinderPattern,
    pub witness: Option<Element>,
}

#[derive(Clone, Debug)]
pub struct DisjunctivityReport {
    pub entries: Vec<ScanEntry>,
    pub found: usize,
    pub missing: usize,
}

/// For each catalog pattern, the first g in scan order (within the
/// candidate budget) whose translate the configuration realizes.
pub fn disjunctivity_scan(
    alpha: &BinaryConfig,
    ctx: &GroupContext,
    catalog: &[CylinderPattern],
    search_bound: u64,
) -> DisjunctivityReport {
    let entries: Vec<ScanEntry> = catalog
        .iter()
        .map(|pattern| {
            let witness = ctx
                .scan_iter()
                .take(search_bound as usize)
                .find(|g| cylinder_match(alpha, ctx, pattern, g));
            ScanEntry {
                pattern: pattern.clone(),
                witness,
            }
        })
        .collect();
    let found = entries.iter().filter(|e| e.witness.is_some()).count();
    DisjunctivityReport {
        missing: entries.len() - found,
        found,
        entries,
    }
}
