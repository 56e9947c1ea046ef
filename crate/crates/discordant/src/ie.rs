//! Inclusion–exclusion-good families.
//!
//! A family (Eₙ) of subsets with densities dₙ is inclusion–exclusion good
//! along a window sequence when finite intersections have product density
//! and the k-fold overlap sums average correctly; the complement of the
//! union then has density ∏(1 − dₙ). This module provides the exact
//! partial-product bookkeeping and empirical window checks for those
//! properties, quantified over index sets I ⊆ {1..m} with the truncation
//! tail surfaced explicitly.

use crate::context::GroupContext;
use crate::error::{Error, Result};
use crate::folner::{window_count, window_size};
use crate::oracle::SetOracle;

/// A finite prefix of a candidate I.E.-good family: member oracles with
/// known densities over a common context.
#[derive(Clone, Debug)]
pub struct IEFamily {
    pub members: Vec<SetOracle>,
    pub context: GroupContext,
}

impl IEFamily {
    pub fn new(context: GroupContext, members: Vec<SetOracle>) -> Result<Self> {
        for m in &members {
            if m.known_density().is_none() {
                return Err(Error::argument(format!(
                    "family member '{}' carries no known density",
                    m.label()
                )));
            }
        }
        Ok(IEFamily { members, context })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn densities(&self) -> Vec<f64> {
        self.members
            .iter()
            .map(|m| m.known_density().unwrap())
            .collect()
    }

    /// Densities sum over the supplied prefix.
    pub fn density_sum(&self) -> f64 {
        self.densities().iter().sum()
    }

    /// Window counts of the prefix intersections E_{1..m} for m = 1..len.
    ///
    /// Goodness property (b) — emptiness of every infinite intersection —
    /// is not finitely checkable; for congruence families it follows from
    /// divisibility growth, and decaying prefix counts are the sampled
    /// evidence reported here.
    pub fn prefix_intersection_counts(&self, window_index: u64) -> Result<Vec<u128>> {
        (1..=self.members.len())
            .map(|m| {
                let i: Vec<usize> = (0..m).collect();
                let e_i = self.intersection(&i)?;
                window_count(&self.context, window_index, |e| e_i.contains(e))
            })
            .collect()
    }

    /// The intersection E_I of the members indexed by I (0-based).
    pub fn intersection(&self, index_set: &[usize]) -> Result<SetOracle> {
        for &i in index_set {
            if i >= self.members.len() {
                return Err(Error::argument(format!(
                    "index {i} outside family of size {}",
                    self.members.len()
                )));
            }
        }
        let mut oracle = SetOracle::full();
        for &i in index_set {
            oracle = oracle.intersection(&self.members[i]);
        }
        Ok(oracle)
    }
}

/// Running prefix products ∏_{i≤m}(1 − dᵢ) together with a bound on the
/// distance to the infinite product.
#[derive(Clone, Debug)]
pub struct PartialProductTrace {
    pub prefix_products: Vec<f64>,
    /// |limit − last prefix| ≤ tail_bound = (supplied Σdᵢ bound) − (prefix sum).
    pub tail_bound: f64,
}

impl PartialProductTrace {
    pub fn last(&self) -> f64 {
        self.prefix_products.last().copied().unwrap_or(1.0)
    }
}

/// Exact running products of (1 − dᵢ). `total_sum_bound` bounds Σdᵢ over
/// the whole (possibly infinite) family; the unsupplied tail then moves
/// the product by at most the reciprocal-sum overshoot.
pub fn ie_partial_products(densities: &[f64], total_sum_bound: f64) -> Result<PartialProductTrace> {
    let mut products = Vec::with_capacity(densities.len());
    let mut acc = 1.0f64;
    let mut partial_sum = 0.0f64;
    for &d in densities {
        if !(0.0..1.0).contains(&d) {
            return Err(Error::argument(format!(
                "member density {d} outside [0, 1)"
            )));
        }
        acc *= 1.0 - d;
        partial_sum += d;
        products.push(acc);
    }
    let tail_bound = (total_sum_bound - partial_sum).max(0.0);
    Ok(PartialProductTrace {
        prefix_products: products,
        tail_bound,
    })
}

/// The window-level comparison behind independence property (c):
/// d(E_I) = ∏_{i∈I} d(Eᵢ).
#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub index_set: Vec<usize>,
    pub window_index: u64,
    pub window_ratio: f64,
    pub density_product: f64,
    pub abs_diff: f64,
    /// Exceeds the flag threshold (default 5·10⁻³): the members indexed by
    /// I do not look independent on this window.
    pub flagged: bool,
}

pub const INDEPENDENCE_FLAG_THRESHOLD: f64 = 5e-3;

/// Compare the window ratio of E_I with the product of member densities.
pub fn ie_check_independence(
    family: &IEFamily,
    index_set: &[usize],
    window_index: u64,
) -> Result<IndependenceReport> {
    let e_i = family.intersection(index_set)?;
    let window = window_size(&family.context, window_index)?;
    let count = window_count(&family.context, window_index, |e| e_i.contains(e))?;
    let ratio = count as f64 / window as f64;
    let product: f64 = index_set
        .iter()
        .map(|&i| family.members[i].known_density().unwrap())
        .product();
    let diff = (ratio - product).abs();
    Ok(IndependenceReport {
        index_set: index_set.to_vec(),
        window_index,
        window_ratio: ratio,
        density_product: product,
        abs_diff: diff,
        flagged: diff > INDEPENDENCE_FLAG_THRESHOLD,
    })
}

/// The window-level comparison behind the overlap-average property (d):
/// the window mean of Σ_{|I|=k, I⊆[m]} 1_{E_I} against Σ d(E_I).
#[derive(Clone, Debug)]
pub struct OvercountReport {
    pub k: usize,
    pub truncation: usize,
    pub window_index: u64,
    pub window_average: f64,
    pub density_sum: f64,
    pub abs_diff: f64,
}

/// For each window element, the number of k-subsets of the first
/// `truncation` members whose intersection contains it is C(c, k), where c
/// is the member count at that element; no more than ⌊window/b⌋ window
/// elements meet a modulus-b member, which is what keeps these averages
/// convergent.
pub fn ie_check_bounded_overcount(
    family: &IEFamily,
    k: usize,
    window_index: u64,
    truncation: usize,
) -> Result<OvercountReport> {
    if truncation > family.len() {
        return Err(Error::argument(format!(
            "truncation {truncation} exceeds family size {}",
            family.len()
        )));
    }
    let window = window_size(&family.context, window_index)?;
    let members = &family.members[..truncation];

    // Σ over window of C(member_count, k), accumulated exactly.
    let mut histogram = vec![0u128; truncation + 1];
    // The member-count histogram is assembled window-strip by window-strip;
    // a plain sequential pass is plenty at the scales checked here.
    crate::folner::for_each_window_element(&family.context, window_index, |e| {
        let c = members.iter().filter(|m| m.contains(e)).count();
        histogram[c] += 1;
        std::ops::ControlFlow::Continue(())
    })?;
    let total: u128 = histogram
        .iter()
        .enumerate()
        .map(|(c, &h)| binomial(c as u64, k as u64) * h)
        .sum();
    let average = total as f64 / window as f64;

    let densities: Vec<f64> = members
        .iter()
        .map(|m| m.known_density().unwrap())
        .collect();
    let density_sum = elementary_symmetric(&densities, k);
    Ok(OvercountReport {
        k,
        truncation,
        window_index,
        window_average: average,
        density_sum,
        abs_diff: (average - density_sum).abs(),
    })
}

/// C(n, k) in u128 (exact for the family sizes in play).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// e_k(d₁..d_m) = Σ_{|I|=k} ∏_{i∈I} dᵢ by the textbook DP.
pub fn elementary_symmetric(values: &[f64], k: usize) -> f64 {
    if k > values.len() {
        return 0.0;
    }
    let mut e = vec![0.0f64; k + 1];
    e[0] = 1.0;
    for &v in values {
        for j in (1..=k).rev() {
            e[j] += e[j - 1] * v;
        }
    }
    e[k]
}

/// Pointwise truncated inclusion–exclusion bound: with c(r) members
/// containing r, the alternating sum f(r) = Σ_{i=0}^{2n−1} (−1)ⁱ C(c, i)
/// collapses to 1 at c = 0 and to −C(c−1, 2n−1) ≤ 0 otherwise, so the
/// complement indicator dominates f pointwise. Returns false (with the
/// failing sample) if either the bound or the closed form fails anywhere.
pub fn indicator_truncation_check(
    family: &IEFamily,
    n: u64,
    samples: &[crate::context::Element],
) -> Result<bool> {
    if n < 1 {
        return Err(Error::argument("truncation order n must be >= 1"));
    }
    for r in samples {
        let c = family.members.iter().filter(|m| m.contains(r)).count() as u64;
        let in_complement = c == 0;
        let mut f: i128 = 0;
        for i in 0..(2 * n) {
            let term = binomial(c, i) as i128;
            if i % 2 == 0 {
                f += term;
            } else {
                f -= term;
            }
        }
        let indicator: i128 = if in_complement { 1 } else { 0 };
        if f > indicator {
            return Ok(false);
        }
        if in_complement {
            if f != 1 {
                return Ok(false);
            }
        } else {
            let closed = -(binomial(c - 1, 2 * n - 1) as i128);
            if f != closed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The product family (Dₙ × Eₙ) over G × H, with member densities dₙ·eₙ
/// and the product windows Φₙ × Ψₙ. Supported for the integer contexts,
/// where the product of cube windows is again a cube window.
pub fn product_family(fam_g: &IEFamily, fam_h: &IEFamily) -> Result<IEFamily> {
    if fam_g.len() != fam_h.len() {
        return Err(Error::argument(format!(
            "factor families have different lengths: {} vs {}",
            fam_g.len(),
            fam_h.len()
        )));
    }
    let dim = |ctx: &GroupContext| -> Result<usize> {
        match ctx {
            GroupContext::IntAdd => Ok(1),
            GroupContext::IntVecAdd(d) => Ok(*d),
            other => Err(Error::config(format!(
                "product families are supported over ℤᵈ factors, not {other:?}"
            ))),
        }
    };
    let dg = dim(&fam_g.context)?;
    let dh = dim(&fam_h.context)?;
    let members = fam_g
        .members
        .iter()
        .zip(fam_h.members.iter())
        .map(|(a, b)| {
            let (a, b) = (a.clone(), b.clone());
            let density = a.known_density().unwrap() * b.known_density().unwrap();
            SetOracle::new(
                format!("({} × {})", a.label(), b.label()),
                move |e: &crate::context::Element| {
                    let coords = e.coords();
                    let left = crate::context::Element::from_slice(&coords[..dg]);
                    let right = crate::context::Element::from_slice(&coords[dg..]);
                    a.contains(&left) && b.contains(&right)
                },
            )
            .with_density(density)
        })
        .collect();
    IEFamily::new(GroupContext::IntVecAdd(dg + dh), members)
}
