//! Finite-window evidence procedures for thickness, syndeticity, and
//! piecewise syndeticity, plus exact Chinese-remainder witnesses.
//!
//! Piecewise syndeticity is a Π-type property: no finite scan can decide
//! it. The procedures here therefore return graded evidence under explicit
//! budgets — a thickness profile never reports a shape without a verified
//! witness translate, and a stalled profile is evidence, never a verdict.
//! Where the set is a congruence-family complement, however,
//! [`crt_witness`] turns the evidence into a proof: a full arithmetic
//! progression of gaps, certified by per-shift residues.

use serde::{Deserialize, Serialize};

use crate::context::{Element, GroupContext};
use crate::error::{Error, Result};
use crate::folner::for_each_window_element;
use crate::oracle::SetOracle;

/// The translate shape with index m: {0..m} in ℕ/ℤ, the cube {0..m}ᵈ in
/// ℤᵈ and the Heisenberg encoding. Index m spans m+1 points per axis.
pub fn interval_shape(ctx: &GroupContext, m: usize) -> Vec<Element> {
    let m = m as i64;
    match ctx {
        GroupContext::NatAdd | GroupContext::IntAdd => (0..=m).map(Element::int).collect(),
        GroupContext::IntVecAdd(d) => {
            let mut out = vec![Element::from_slice(&vec![0; *d])];
            for axis in 0..*d {
                let mut next = Vec::new();
                for e in &out {
                    for v in 0..=m {
                        let mut coords = e.coords().to_vec();
                        coords[axis] = v;
                        next.push(Element::from_slice(&coords));
                    }
                }
                out = next;
            }
            out
        }
        GroupContext::Heisenberg => {
            let mut out = Vec::new();
            for a in 0..=m {
                for b in 0..=m {
                    for c in 0..=m {
                        out.push(Element::triple(a, b, c));
                    }
                }
            }
            out
        }
        GroupContext::FreeWords(_) => Vec::new(),
    }
}

/// How a thickness search ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileOutcome {
    /// The probe budget ran out while searching the next shape index:
    /// no witness was found for it within budget.
    Stalled { at_shape: usize },
    /// Every shape index up to the cap was witnessed.
    ReachedCap,
}

/// Evidence that translates of growing shapes fit inside a set.
///
/// `max_shape_index` is the largest m for which a verified translate of
/// shape m was found — a lower bound for the true thickness reach, never
/// an overclaim. `None` means not even a single point of the set was found.
#[derive(Clone, Debug)]
pub struct ThicknessProfile {
    pub max_shape_index: Option<usize>,
    pub witness: Option<Element>,
    /// Per shape index, the first witness in scan order.
    pub witnesses: Vec<(usize, Element)>,
    pub search_bound: u64,
    pub probes_used: u64,
    pub shape_cap: usize,
    pub outcome: ProfileOutcome,
}

/// Scan for translates shape·g ⊆ A with shapes of growing index.
///
/// `search_bound` is a membership-probe budget for the whole profile;
/// candidates g run through the context scan order until a witness is
/// found or the budget is gone. Every reported witness is verified by
/// direct membership scan as it is found.
pub fn thickness_profile(
    oracle: &SetOracle,
    ctx: &GroupContext,
    search_bound: u64,
    shape_cap: usize,
) -> ThicknessProfile {
    let mut probes: u64 = 0;
    let mut witnesses = Vec::new();
    let mut outcome = ProfileOutcome::ReachedCap;
    'shapes: for m in 0..=shape_cap {
        let shape = interval_shape(ctx, m);
        let mut found = false;
        for g in ctx.scan_iter() {
            if probes >= search_bound {
                outcome = ProfileOutcome::Stalled { at_shape: m };
                break 'shapes;
            }
            let mut ok = true;
            for f in &shape {
                probes += 1;
                if !oracle.contains(&ctx.op(f, &g)) {
                    ok = false;
                    break;
                }
            }
            if ok {
                witnesses.push((m, g));
                found = true;
                break;
            }
        }
        if !found {
            outcome = ProfileOutcome::Stalled { at_shape: m };
            break;
        }
    }
    ThicknessProfile {
        max_shape_index: witnesses.last().map(|(m, _)| *m),
        witness: witnesses.last().map(|(_, g)| g.clone()),
        witnesses,
        search_bound,
        probes_used: probes,
        shape_cap,
        outcome,
    }
}

/// The first g (in scan order, within the probe budget) with
/// shape·g ⊆ A, if any.
pub fn least_translate(
    oracle: &SetOracle,
    ctx: &GroupContext,
    shape: &[Element],
    search_bound: u64,
) -> Option<Element> {
    let mut probes: u64 = 0;
    for g in ctx.scan_iter() {
        if probes >= search_bound {
            return None;
        }
        let mut ok = true;
        for f in shape {
            probes += 1;
            if !oracle.contains(&ctx.op(f, &g)) {
                ok = false;
                break;
            }
        }
        if ok {
            return Some(g);
        }
    }
    None
}

/// Window coverage by H⁻¹A, or the least window element not covered.
#[derive(Clone, Debug)]
pub struct SyndeticityCertificate {
    pub h: Vec<Element>,
    pub window_index: u64,
    pub covered: bool,
    /// Least x in the window (coordinate-lexicographic order) with
    /// Hx ∩ A = ∅.
    pub failure_witness: Option<Element>,
}

/// Check whether ⋃_{h∈H} h⁻¹A covers the window Φₙ.
pub fn syndeticity_check(
    oracle: &SetOracle,
    ctx: &GroupContext,
    h: &[Element],
    window_index: u64,
) -> Result<SyndeticityCertificate> {
    if h.is_empty() {
        return Err(Error::argument("H must be nonempty"));
    }
    let mut failure = None;
    for_each_window_element(ctx, window_index, |x| {
        if h.iter().all(|hh| !oracle.contains(&ctx.op(hh, x))) {
            failure = Some(x.clone());
            std::ops::ControlFlow::Break(())
        } else {
            std::ops::ControlFlow::Continue(())
        }
    })?;
    Ok(SyndeticityCertificate {
        h: h.to_vec(),
        window_index,
        covered: failure.is_none(),
        failure_witness: failure,
    })
}

/// Overall grade of a piecewise-syndeticity evidence run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvidenceGrade {
    /// Every probed H produced a thickness profile of H⁻¹A that reached
    /// the shape cap — consistent with piecewise syndeticity.
    PsConsistent,
    /// Some H⁻¹A profile stalled within budget. Evidence against
    /// piecewise syndeticity, graded by how many of the probed H stalled;
    /// never a proof.
    NonPsEvidence { stalled: usize, probed: usize },
}

#[derive(Clone, Debug)]
pub struct PsEvidenceReport {
    pub per_h: Vec<(usize, ThicknessProfile)>,
    pub grade: EvidenceGrade,
}

/// For each H in the family, the thickness profile of H⁻¹A.
pub fn ps_evidence(
    oracle: &SetOracle,
    ctx: &GroupContext,
    h_family: &[Vec<Element>],
    search_bound: u64,
    shape_cap: usize,
) -> Result<PsEvidenceReport> {
    if h_family.is_empty() {
        return Err(Error::argument("H family must be nonempty"));
    }
    let mut per_h = Vec::new();
    let mut stalled = 0;
    for h in h_family {
        let shifted = oracle.preimage_union(ctx, h);
        let profile = thickness_profile(&shifted, ctx, search_bound, shape_cap);
        if matches!(profile.outcome, ProfileOutcome::Stalled { .. }) {
            stalled += 1;
        }
        per_h.push((h.len(), profile));
    }
    let grade = if stalled == 0 {
        EvidenceGrade::PsConsistent
    } else {
        EvidenceGrade::NonPsEvidence {
            stalled,
            probed: h_family.len(),
        }
    };
    Ok(PsEvidenceReport { per_h, grade })
}

/// An exact witness that a whole shifted progression avoids a congruence
/// complement: for every f in `shifts` and every k ≥ 0, f + x + kN lies in
/// the removed class residue_proof[f] of its modulus.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CRTWitness {
    pub x: i64,
    /// N = product of the used moduli.
    pub modulus_product: i64,
    pub shifts: Vec<i64>,
    /// Per shift: (modulus, target residue) with f + x ≡ residue (mod modulus).
    pub residue_proof: Vec<(i64, i64)>,
    /// k-range over which the witness has been verified against an oracle.
    pub verified_range: Option<u64>,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Solve x ≡ rᵢ (mod mᵢ) for pairwise coprime moduli; returns the least
/// non-negative solution and the modulus product.
pub fn crt_solve(congruences: &[(i64, i64)]) -> Result<(i64, i64)> {
    if congruences.is_empty() {
        return Err(Error::argument("no congruences supplied"));
    }
    for (i, &(mi, _)) in congruences.iter().enumerate() {
        if mi < 2 {
            return Err(Error::argument("moduli must be >= 2"));
        }
        for &(mj, _) in &congruences[i + 1..] {
            let (g, _, _) = ext_gcd(mi as i128, mj as i128);
            if g != 1 {
                return Err(Error::argument(format!(
                    "moduli {mi} and {mj} are not coprime"
                )));
            }
        }
    }
    let mut x: i128 = (congruences[0].1 as i128).rem_euclid(congruences[0].0 as i128);
    let mut modulus: i128 = congruences[0].0 as i128;
    for &(mi, ri) in &congruences[1..] {
        let mi = mi as i128;
        let ri = (ri as i128).rem_euclid(mi);
        let (_, p, _) = ext_gcd(modulus, mi);
        let diff = (ri - x).rem_euclid(mi);
        let step = (diff * p).rem_euclid(mi);
        x += step * modulus;
        modulus *= mi;
        x = x.rem_euclid(modulus);
        if modulus > i64::MAX as i128 {
            return Err(Error::argument("modulus product overflows i64"));
        }
    }
    Ok((x as i64, modulus as i64))
}

/// Build a CRT witness: x with f + x ≡ targetᵢ (mod mᵢ) for each shift f,
/// so every f + x + kN sits inside the removed class mᵢℤ + targetᵢ.
pub fn crt_witness(shifts: &[i64], classes: &[(i64, i64)]) -> Result<CRTWitness> {
    if shifts.is_empty() {
        return Err(Error::argument("no shifts supplied"));
    }
    if shifts.len() > classes.len() {
        return Err(Error::argument(format!(
            "{} shifts but only {} congruence classes",
            shifts.len(),
            classes.len()
        )));
    }
    let congruences: Vec<(i64, i64)> = shifts
        .iter()
        .zip(classes.iter())
        .map(|(&f, &(m, r))| (m, r - f))
        .collect();
    let (x, n) = crt_solve(&congruences)?;
    Ok(CRTWitness {
        x,
        modulus_product: n,
        shifts: shifts.to_vec(),
        residue_proof: shifts
            .iter()
            .zip(classes.iter())
            .map(|(_, &(m, r))| (m, r.rem_euclid(m)))
            .collect(),
        verified_range: None,
    })
}

/// Zero-residue convenience form: moduli from a ℬ-sequence, removed
/// classes mᵢℤ.
pub fn crt_witness_zero(shifts: &[i64], moduli: &[i64]) -> Result<CRTWitness> {
    let classes: Vec<(i64, i64)> = moduli.iter().map(|&m| (m, 0)).collect();
    crt_witness(shifts, &classes)
}

/// Scan k ∈ [0, k_max]: every f + x + kN must fall outside the oracle's
/// set. Returns the verified witness, or an error naming the violation.
pub fn verify_crt_witness(
    witness: &CRTWitness,
    oracle: &SetOracle,
    k_max: u64,
) -> Result<CRTWitness> {
    for &f in &witness.shifts {
        for k in 0..=k_max as i64 {
            let probe = f + witness.x + k * witness.modulus_product;
            if oracle.contains(&Element::int(probe)) {
                return Err(Error::construction(format!(
                    "witness fails: {} = {} + {} + {}·{} is in the set",
                    probe, f, witness.x, k, witness.modulus_product
                )));
            }
        }
    }
    let mut verified = witness.clone();
    verified.verified_range = Some(k_max);
    Ok(verified)
}

/// The S/T decomposition of a piecewise syndetic candidate:
/// T = A ∪ H⁻¹A and S = A ∪ Tᶜ, with A = S ∩ T pointwise.
#[derive(Clone, Debug)]
pub struct StDecomposition {
    pub s: SetOracle,
    pub t: SetOracle,
    pub verified_on_window: bool,
    pub first_mismatch: Option<Element>,
}

pub fn st_decompose(
    oracle: &SetOracle,
    ctx: &GroupContext,
    h: &[Element],
    window_index: u64,
) -> Result<StDecomposition> {
    let t = oracle.union(&oracle.preimage_union(ctx, h));
    let s = oracle.union(&t.complement());
    let both = s.intersection(&t);
    let mut mismatch = None;
    for_each_window_element(ctx, window_index, |x| {
        if oracle.contains(x) != both.contains(x) {
            mismatch = Some(x.clone());
            std::ops::ControlFlow::Break(())
        } else {
            std::ops::ControlFlow::Continue(())
        }
    })?;
    Ok(StDecomposition {
        s,
        t,
        verified_on_window: mismatch.is_none(),
        first_mismatch: mismatch,
    })
}

/// One row of the syndeticity/thickness duality cross-tab.
#[derive(Clone, Debug)]
pub struct DualityRow {
    pub shape_index: usize,
    /// First scan-order x with ({0..m})x ∩ A = ∅, within budget.
    pub syndeticity_failure: Option<Element>,
    /// First scan-order translate of shape m inside Aᶜ, within budget.
    pub complement_thickness_witness: Option<Element>,
    pub consistent: bool,
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub rows: Vec<DualityRow>,
    pub all_consistent: bool,
}

/// Cross-tabulate syndeticity failures of A against thickness witnesses of
/// Aᶜ: a failure of H = {0..m} at x is exactly a translate of shape m
/// inside the complement, so the two independent search paths must agree
/// witness for witness.
pub fn duality_check(
    oracle: &SetOracle,
    ctx: &GroupContext,
    max_shape_index: usize,
    search_bound: u64,
) -> DualityReport {
    let complement = oracle.complement();
    let mut rows = Vec::new();
    for m in 0..=max_shape_index {
        let shape = interval_shape(ctx, m);
        // syndeticity failure of A for H = shape, searched in scan order
        let mut failure = None;
        let mut probes: u64 = 0;
        'scan: for x in ctx.scan_iter() {
            if probes >= search_bound {
                break 'scan;
            }
            let mut all_miss = true;
            for h in &shape {
                probes += 1;
                if oracle.contains(&ctx.op(h, &x)) {
                    all_miss = false;
                    break;
                }
            }
            if all_miss {
                failure = Some(x);
                break;
            }
        }
        let witness = least_translate(&complement, ctx, &shape, search_bound);
        let consistent = match (&failure, &witness) {
            (Some(a), Some(b)) => a == b,
            (None, None) => true,
            _ => false,
        };
        rows.push(DualityRow {
            shape_index: m,
            syndeticity_failure: failure,
            complement_thickness_witness: witness,
            consistent,
        });
    }
    DualityReport {
        all_consistent: rows.iter().all(|r| r.consistent),
        rows,
    }
}

/// A finite coloring of the semigroup.
#[derive(Clone)]
pub struct Coloring {
    pub classes: usize,
    color: std::sync::Arc<dyn Fn(&Element) -> usize + Send + Sync>,
}

impl Coloring {
    /// `color` must return values in 1..=classes.
    pub fn new(classes: usize, color: impl Fn(&Element) -> usize + Send + Sync + 'static) -> Self {
        Coloring {
            classes,
            color: std::sync::Arc::new(color),
        }
    }

    pub fn color(&self, e: &Element) -> usize {
        (self.color)(e)
    }

    /// Residues mod `classes`, mapped to 1..=classes.
    pub fn modular(classes: usize) -> Self {
        let m = classes as i64;
        Coloring::new(classes, move |e: &Element| {
            (e.as_int().rem_euclid(m)) as usize + 1
        })
    }
}

#[derive(Clone, Debug)]
pub struct PartitionClassReport {
    pub class: usize,
    pub evidence: PsEvidenceReport,
    pub best_reach: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct PartitionReport {
    pub per_class: Vec<PartitionClassReport>,
    /// The color class with the deepest thickness reach on the largest H.
    pub strongest_class: usize,
}

/// Color the set and run piecewise-syndeticity evidence on every class.
/// Partition regularity predicts at least one class keeps a strong profile.
pub fn partition_experiment(
    oracle: &SetOracle,
    ctx: &GroupContext,
    coloring: &Coloring,
    h_family: &[Vec<Element>],
    search_bound: u64,
    shape_cap: usize,
) -> Result<PartitionReport> {
    if coloring.classes == 0 {
        return Err(Error::argument("coloring must have at least one class"));
    }
    let mut per_class = Vec::new();
    for class in 1..=coloring.classes {
        let coloring = coloring.clone();
        let class_oracle = oracle.intersection(&SetOracle::new(
            format!("color-{class}"),
            move |e: &Element| coloring.color(e) == class,
        ));
        let evidence = ps_evidence(&class_oracle, ctx, h_family, search_bound, shape_cap)?;
        let best_reach = evidence.per_h.last().and_then(|(_, p)| p.max_shape_index);
        per_class.push(PartitionClassReport {
            class,
            evidence,
            best_reach,
        });
    }
    let strongest_class = per_class
        .iter()
        .max_by_key(|r| r.best_reach.map(|m| m as i64).unwrap_or(-1))
        .map(|r| r.class)
        .unwrap();
    Ok(PartitionReport {
        per_class,
        strongest_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{squarefree_oracle, straus_set, StrausParams};

    fn int_shape(m: usize) -> Vec<Element> {
        interval_shape(&GroupContext::IntAdd, m)
    }

    #[test]
    fn thickness_of_evens_stalls_at_a_point() {
        let profile = thickness_profile(&SetOracle::evens(), &GroupContext::IntAdd, 50_000, 10);
        assert_eq!(profile.max_shape_index, Some(0));
        assert_eq!(profile.outcome, ProfileOutcome::Stalled { at_shape: 1 });
    }

    #[test]
    fn thickness_of_everything_reaches_cap() {
        let profile = thickness_profile(&SetOracle::full(), &GroupContext::IntAdd, 50_000, 12);
        assert_eq!(profile.max_shape_index, Some(12));
        assert_eq!(profile.outcome, ProfileOutcome::ReachedCap);
    }

    #[test]
    fn squarefree_runs_and_complement_runs() {
        let q = squarefree_oracle(1_000_000);
        // runs of 3 consecutive squarefree integers exist (1,2,3) but any
        // four consecutive integers contain a multiple of 4
        let profile = thickness_profile(&q, &GroupContext::NatAdd, 200_000, 8);
        assert_eq!(profile.max_shape_index, Some(2));

        // the first run of four consecutive non-squarefree integers starts
        // at 242 = 2·121: 242, 243 = 3⁵, 244 = 4·61, 245 = 5·49
        let qc = q.complement();
        let w = least_translate(&qc, &GroupContext::NatAdd, &int_shape(3), 50_000).unwrap();
        assert_eq!(w.as_int(), 242);
        // and a run of five starts at 844 — the profile pushes past 3
        let w5 = least_translate(&qc, &GroupContext::NatAdd, &int_shape(4), 50_000).unwrap();
        assert_eq!(w5.as_int(), 844);
    }

    #[test]
    fn syndeticity_certificates() {
        let ctx = GroupContext::IntAdd;
        let cert = syndeticity_check(&SetOracle::evens(), &ctx, &int_shape(1), 200).unwrap();
        assert!(cert.covered);

        let q = squarefree_oracle(10_000);
        let cert = syndeticity_check(&q, &GroupContext::NatAdd, &int_shape(3), 300).unwrap();
        assert_eq!(cert.failure_witness.unwrap().as_int(), 242);

        let cert = syndeticity_check(&SetOracle::empty(), &ctx, &int_shape(2), 5).unwrap();
        assert_eq!(cert.failure_witness.unwrap().as_int(), -5);

        assert!(syndeticity_check(&SetOracle::full(), &ctx, &[], 5).is_err());
    }

    #[test]
    fn ps_evidence_grades() {
        let ctx = GroupContext::IntAdd;
        // evens are syndetic, hence piecewise syndetic: H = {0,1} makes
        // H⁻¹A everything
        let report = ps_evidence(
            &SetOracle::evens(),
            &ctx,
            &[vec![Element::int(0), Element::int(1)]],
            100_000,
            10,
        )
        .unwrap();
        assert_eq!(report.grade, EvidenceGrade::PsConsistent);
        assert_eq!(report.per_h[0].1.max_shape_index, Some(10));

        // the Straus set with H = {0..4} stalls: every multiple of 128
        // starts a length-5 window of removed residues
        let straus = straus_set(&StrausParams::powers_of_two(40));
        let h: Vec<Element> = (0..=4).map(Element::int).collect();
        let report = ps_evidence(&straus, &GroupContext::NatAdd, &[h], 1_000_000, 256).unwrap();
        assert!(matches!(
            report.grade,
            EvidenceGrade::NonPsEvidence {
                stalled: 1,
                probed: 1
            }
        ));
        let profile = &report.per_h[0].1;
        assert!(profile.max_shape_index.unwrap() < 256);
    }

    #[test]
    fn ps_evidence_monotone_in_h() {
        let q = squarefree_oracle(200_000);
        let hs: Vec<Vec<Element>> = (1..=4)
            .map(|m| (0..=m as i64).map(Element::int).collect())
            .collect();
        let report = ps_evidence(&q, &GroupContext::NatAdd, &hs, 150_000, 24).unwrap();
        let reaches: Vec<i64> = report
            .per_h
            .iter()
            .map(|(_, p)| p.max_shape_index.map(|m| m as i64).unwrap_or(-1))
            .collect();
        assert!(reaches.windows(2).all(|w| w[0] <= w[1]), "{reaches:?}");
    }

    #[test]
    fn crt_witness_squarefree_gap() {
        let w = crt_witness_zero(&[0, 1, 2], &[4, 9, 25]).unwrap();
        assert_eq!((w.x, w.modulus_product), (548, 900));
        let q = squarefree_oracle(20_000);
        let verified = verify_crt_witness(&w, &q, 10).unwrap();
        assert_eq!(verified.verified_range, Some(10));

        let w = crt_witness_zero(&[0, 1], &[4, 9]).unwrap();
        assert_eq!((w.x, w.modulus_product), (8, 36));

        let w = crt_witness_zero(&[0], &[4]).unwrap();
        assert_eq!((w.x, w.modulus_product), (0, 4));

        assert!(crt_witness_zero(&[0, 1], &[4, 6]).is_err()); // not coprime
        assert!(crt_witness_zero(&[0, 1, 2], &[4, 9]).is_err()); // too few moduli
    }

    #[test]
    fn crt_witness_with_target_residues() {
        // Straus-style removed classes aₙℤ + (n-1), pairwise coprime moduli
        let classes = [(8, 0), (9, 1), (25, 2)];
        let w = crt_witness(&[0, 1, 2], &classes).unwrap();
        for (i, &f) in [0i64, 1, 2].iter().enumerate() {
            let (m, r) = classes[i];
            assert_eq!((f + w.x).rem_euclid(m), r);
        }
    }

    #[test]
    fn crt_witness_serializes() {
        let w = crt_witness_zero(&[0, 1, 2], &[4, 9, 25]).unwrap();
        let json = serde_json::to_string(&w).unwrap();
        let back: CRTWitness = serde_json::from_str(&json).unwrap();
        assert_eq!(back.x, 548);
        assert_eq!(back.residue_proof, vec![(4, 0), (9, 0), (25, 0)]);
    }

    #[test]
    fn st_decomposition_cases() {
        let ctx = GroupContext::IntAdd;
        let evens = SetOracle::evens();
        let d = st_decompose(&evens, &ctx, &[Element::int(0)], 100).unwrap();
        assert!(d.verified_on_window);
        // T = A ∪ 0⁻¹A = evens, S = A ∪ Tᶜ = everything
        for k in -50..=50i64 {
            assert_eq!(d.t.contains(&Element::int(k)), k % 2 == 0);
            assert!(d.s.contains(&Element::int(k)));
        }

        let q = squarefree_oracle(20_000);
        let h: Vec<Element> = (0..=3).map(Element::int).collect();
        let d = st_decompose(&q, &GroupContext::NatAdd, &h, 10_000).unwrap();
        assert!(d.verified_on_window);

        let d = st_decompose(&SetOracle::empty(), &ctx, &[Element::int(1)], 50).unwrap();
        assert!(d.verified_on_window);
        assert!(!d.t.contains(&Element::int(3)));
        assert!(d.s.contains(&Element::int(3)));
    }

    #[test]
    fn duality_cross_tab() {
        // evens: a single-point shape fails at odd x; the two-point shape
        // {0,1} never fails, and the complement has no 2-point translate
        let report = duality_check(&SetOracle::evens(), &GroupContext::IntAdd, 1, 20_000);
        assert!(report.all_consistent);
        assert!(report.rows[0].syndeticity_failure.is_some());
        assert!(report.rows[1].syndeticity_failure.is_none());

        // squarefree: failure for {0..3} at 242 pairs with the 4-shape
        // translate in the complement at 242
        let q = squarefree_oracle(10_000);
        let report = duality_check(&q, &GroupContext::NatAdd, 3, 5_000);
        assert!(report.all_consistent);
        assert_eq!(
            report.rows[3]
                .syndeticity_failure
                .clone()
                .unwrap()
                .as_int(),
            242
        );
        assert_eq!(
            report.rows[3]
                .complement_thickness_witness
                .clone()
                .unwrap()
                .as_int(),
            242
        );

        // a thick set of blocks [n!, n!+n]: its complement fails
        // syndeticity for every probed shape
        let thick = SetOracle::new("factorial-blocks", |e: &Element| {
            let x = e.as_int();
            let mut f: i64 = 1;
            for n in 1..=12i64 {
                f *= n;
                if x >= f && x <= f + n {
                    return true;
                }
                if f > x {
                    break;
                }
            }
            false
        });
        let report = duality_check(&thick, &GroupContext::NatAdd, 4, 100_000);
        assert!(report.all_consistent);
        for row in &report.rows {
            assert!(
                row.syndeticity_failure.is_some(),
                "shape {} should fail",
                row.shape_index
            );
        }
    }

    #[test]
    fn partition_experiment_classes() {
        let ctx = GroupContext::IntAdd;
        // ℤ colored mod 2: both classes are syndetic, both profiles reach cap
        let report = partition_experiment(
            &SetOracle::full(),
            &ctx,
            &Coloring::modular(2),
            &[vec![Element::int(0), Element::int(1)]],
            50_000,
            8,
        )
        .unwrap();
        for class in &report.per_class {
            assert_eq!(class.best_reach, Some(8));
        }

        // evens split mod 4: both halves still piecewise syndetic with H = {0..3}
        let report = partition_experiment(
            &SetOracle::evens(),
            &ctx,
            &Coloring::new(2, |e: &Element| {
                if e.as_int().rem_euclid(4) == 0 {
                    1
                } else {
                    2
                }
            }),
            &[(0..=3).map(Element::int).collect()],
            50_000,
            8,
        )
        .unwrap();
        for class in &report.per_class {
            assert_eq!(class.best_reach, Some(8), "class {}", class.class);
        }
    }

    #[test]
    fn alternating_block_coloring_keeps_one_strong_class() {
        // a thick set of doubling blocks colored by block parity: the
        // blocks keep growing, so at least one class profile grows through
        // the budget
        let blocks = SetOracle::new("doubling-blocks", |e: &Element| {
            let x = e.as_int();
            x >= 1 && {
                let mut lo = 1i64;
                let mut len = 1i64;
                loop {
                    if x < lo {
                        break false;
                    }
                    if x < lo + len {
                        break true;
                    }
                    lo = (lo + len) * 2;
                    len *= 2;
                    if lo > 1 << 40 {
                        break false;
                    }
                }
            }
        });
        let coloring = Coloring::new(2, |e: &Element| {
            let x = e.as_int().max(1);
            let mut lo = 1i64;
            let mut len = 1i64;
            let mut idx = 0usize;
            while x >= lo + len && lo <= 1 << 40 {
                lo = (lo + len) * 2;
                len *= 2;
                idx += 1;
            }
            idx % 2 + 1
        });
        let report = partition_experiment(
            &blocks,
            &GroupContext::NatAdd,
            &coloring,
            &[vec![Element::int(0)]],
            200_000,
            16,
        )
        .unwrap();
        let best = report
            .per_class
            .iter()
            .map(|c| c.best_reach.map(|m| m as i64).unwrap_or(-1))
            .max()
            .unwrap();
        assert!(best >= 16, "best reach {best}");
    }
}
