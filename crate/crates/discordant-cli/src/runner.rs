//! Experiment dispatch: build the requested oracles, run the measurement,
//! and emit CSV tables (and JSON certificates for witnesses).
//!
//! CSV output is UTF-8 with LF line endings, one header row naming every
//! column, floats printed to 9 significant digits and integers exact, so
//! identical specs produce byte-identical files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use discordant::circle::{Alpha, IntervalUnion};
use discordant::constructions::rotation::{
    ar_set, fat_cantor, rotation_density_report, ArSetSpec, RotationSpec,
};
use discordant::constructions::{
    bfree_oracle, bufree_oracle, coprime_tuple_oracle, heisenberg_bfree_oracle, squarefree_oracle,
    straus_set, BSequence, ExponentPattern, StrausParams, StrausVariant,
};
use discordant::context::{Element, GroupContext};
use discordant::detectors as det;
use discordant::folner::density_report;
use discordant::ie;
use discordant::oracle::SetOracle;
use discordant::symbolic::generators::{disjunctive_generator, ena_generator};
use discordant::symbolic::orbit::{
    minimal_orbit_gap_report, orbit_window_membership, syndetic_extraction, ExtractionOutcome,
    ExtractionParams,
};
use discordant::symbolic::packing::{normal_statistics, word_frequency, WordPattern};
use discordant::symbolic::{disjunctivity_scan, BinaryConfig, CylinderPattern};

use crate::spec::{parse_params, ExperimentSpec, SetSpec};

/// Outcome of one experiment: artifacts written, and whether every
/// assertion-style check in the run held.
pub struct RunOutcome {
    pub artifacts: Vec<PathBuf>,
    pub checks_passed: bool,
}

/// Floats at 9 significant digits, integers exact, reproducibly.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let a = x.abs();
    if (1e-4..1e9).contains(&a) {
        let int_digits = a.log10().floor() as i32 + 1;
        let decimals = (9 - int_digits).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.8e}")
    }
}

fn opt_float(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

struct CsvWriter {
    path: PathBuf,
    buf: String,
    columns: usize,
}

impl CsvWriter {
    fn new(path: PathBuf, header: &[&str]) -> Self {
        let mut buf = String::new();
        buf.push_str(&header.join(","));
        buf.push('\n');
        CsvWriter {
            path,
            columns: header.len(),
            buf,
        }
    }

    fn row(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.columns, "row width mismatch");
        self.buf.push_str(&cells.join(","));
        self.buf.push('\n');
    }

    fn finish(self) -> Result<PathBuf> {
        if let Some(parent) = self.path.parent() {
            fs::create_dir_all(parent)?;
        }
        let mut f = fs::File::create(&self.path)
            .with_context(|| format!("creating {}", self.path.display()))?;
        f.write_all(self.buf.as_bytes())?;
        Ok(self.path)
    }
}

fn write_json<T: Serialize>(path: PathBuf, value: &T) -> Result<PathBuf> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut f =
        fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    serde_json::to_writer_pretty(&mut f, value)?;
    f.write_all(b"\n")?;
    Ok(path)
}

/// Instantiated set: the oracle plus the context its windows live in.
struct BuiltSet {
    oracle: SetOracle,
    ctx: GroupContext,
}

fn build_set(set: &SetSpec, max_window: u64) -> Result<BuiltSet> {
    let scan_limit = (max_window as i64).max(1_000_000);
    let built = match set {
        SetSpec::Squarefree => BuiltSet {
            oracle: squarefree_oracle(scan_limit),
            ctx: GroupContext::NatAdd,
        },
        SetSpec::Bfree { moduli } => BuiltSet {
            oracle: bfree_oracle(&BSequence::new(moduli.clone())?),
            ctx: GroupContext::NatAdd,
        },
        SetSpec::Bufree { moduli, exponents } => BuiltSet {
            oracle: bufree_oracle(
                &BSequence::new(moduli.clone())?,
                &ExponentPattern::new(exponents.clone())?,
            )?,
            ctx: GroupContext::NatAdd,
        },
        SetSpec::Kfree { k, primes } => BuiltSet {
            oracle: bfree_oracle(&BSequence::prime_powers(*k, *primes)),
            ctx: GroupContext::NatAdd,
        },
        SetSpec::Evens => BuiltSet {
            oracle: SetOracle::evens(),
            ctx: GroupContext::IntAdd,
        },
        SetSpec::Multiples { m } => BuiltSet {
            oracle: SetOracle::multiples_of(*m),
            ctx: GroupContext::IntAdd,
        },
        SetSpec::Straus {
            moduli,
            pow2,
            variant,
        } => {
            let variant = match variant.as_str() {
                "single" => StrausVariant::SingleResidue,
                "block" => StrausVariant::Block,
                other => bail!("unknown Straus variant '{other}'"),
            };
            let params = match (moduli, pow2) {
                (Some(a), None) => StrausParams::new(a.clone(), variant)?,
                (None, Some(count)) => StrausParams::powers_of_two(*count),
                _ => bail!("straus set needs exactly one of 'moduli' or 'pow2'"),
            };
            BuiltSet {
                oracle: straus_set(&params),
                ctx: GroupContext::NatAdd,
            }
        }
        SetSpec::CoprimeTuples { dim, prime_limit } => {
            let rows: Vec<BSequence> =
                (0..*dim).map(|_| BSequence::primes_up_to(*prime_limit)).collect();
            BuiltSet {
                oracle: coprime_tuple_oracle(*dim, &rows)?,
                ctx: GroupContext::IntVecAdd(*dim),
            }
        }
        SetSpec::HeisenbergBfree { moduli } => BuiltSet {
            oracle: heisenberg_bfree_oracle(&BSequence::new(moduli.clone())?),
            ctx: GroupContext::Heisenberg,
        },
        SetSpec::Ar { t } => BuiltSet {
            oracle: ar_set(&ArSetSpec::new(*t, Alpha::golden_conjugate())?),
            ctx: GroupContext::IntAdd,
        },
        SetSpec::PseudorandomBits { seed } => BuiltSet {
            oracle: BinaryConfig::pseudorandom(*seed).as_oracle(),
            ctx: GroupContext::NatAdd,
        },
    };
    Ok(built)
}

fn parse_alpha(name: &str) -> Result<Alpha> {
    match name {
        "golden" => Ok(Alpha::golden_conjugate()),
        "sqrt2" => Ok(Alpha::sqrt2_minus_one()),
        other => bail!("unknown alpha '{other}' (expected 'golden' or 'sqrt2')"),
    }
}

fn element_to_string(e: &Element) -> String {
    if e.arity() == 1 {
        e.as_int().to_string()
    } else {
        format!(
            "({})",
            e.coords()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(";")
        )
    }
}

pub fn run_experiment(spec: &ExperimentSpec, prefix: &Path) -> Result<RunOutcome> {
    match spec.command.as_str() {
        "density" => run_density(&spec.params, prefix),
        "detect" => run_detect(&spec.params, prefix),
        "witness" => run_witness(&spec.params, prefix),
        "sl2" => run_sl2(&spec.params, prefix),
        "symbolic" => run_symbolic(&spec.params, prefix),
        "rotate" => run_rotate(&spec.params, prefix),
        "ena" => run_ena(&spec.params, prefix),
        "ie" => run_ie(&spec.params, prefix),
        other => bail!("unknown command '{other}'"),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DensityParams {
    set: SetSpec,
    windows: Vec<u64>,
}

fn run_density(params: &serde_json::Value, prefix: &Path) -> Result<RunOutcome> {
    let p: DensityParams = parse_params(params).map_err(|e| anyhow!(e.to_string()))?;
    let max_window = p.windows.iter().copied().max().unwrap_or(0);
    let built = build_set(&p.set, max_window)?;
    let report = density_report(&built.oracle, &built.ctx, &p.windows)?;
    let mut csv = CsvWriter::new(
        prefix.with_extension("csv"),
        &["n", "count", "ratio", "known_density", "abs_diff"],
    );
    for e in &report.entries {
        let diff = report.known_density.map(|d| (e.ratio - d).abs());
        csv.row(&[
            e.n.to_string(),
            e.count.to_string(),
            fmt_float(e.ratio),
            opt_float(report.known_density),
            opt_float(diff),
        ]);
    }
    Ok(RunOutcome {
        artifacts: vec![csv.finish()?],
        checks_passed: true,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DetectParams {
    set: SetSpec,
    check: String,
    #[serde(default = "default_h_max")]
    h_max: usize,
    #[serde(default = "default_window")]
    window: u64,
    #[serde(default = "default_budget")]
    budget: u64,
    #[serde(default = "default_shape_cap")]
    shape_cap: usize,
    #[serde(default)]
    classes: Option<usize>,
}

fn default_h_max() -> usize {
    4
}
fn default_window() -> u64 {
    10_000
}
fn default_budget() -> u64 {
    1_000_000
}
fn default_shape_cap() -> usize {
    64
}

fn run_detect(params: &serde_json::Value, prefix: &Path) -> Result<RunOutcome> {
    let p: DetectParams = parse_params(params).map_err(|e| anyhow!(e.to_string()))?;
    let built = build_set(&p.set, p.window)?;
    let h: Vec<Element> = det::interval_shape(&built.ctx, p.h_max);
    let mut ok = true;
    let path = match p.check.as_str() {
        "thickness" => {
            let profile = det::thickness_profile(&built.oracle, &built.ctx, p.budget, p.shape_cap);
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["shape_index", "witness", "probes_used", "outcome"],
            );
            let outcome = format!("{:?}", profile.outcome);
            for (m, w) in &profile.witnesses {
                csv.row(&[
                    m.to_string(),
                    element_to_string(w),
                    profile.probes_used.to_string(),
                    outcome.clone(),
                ]);
            }
            csv.finish()?
        }
        "syndeticity" => {
            let cert = det::syndeticity_check(&built.oracle, &built.ctx, &h, p.window)?;
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["h_size", "window", "covered", "failure_witness"],
            );
            csv.row(&[
                cert.h.len().to_string(),
                cert.window_index.to_string(),
                cert.covered.to_string(),
                cert.failure_witness
                    .as_ref()
                    .map(element_to_string)
                    .unwrap_or_default(),
            ]);
            csv.finish()?
        }
        "ps" => {
            let family: Vec<Vec<Element>> = (0..=p.h_max)
                .map(|m| det::interval_shape(&built.ctx, m))
                .collect();
            let report =
                det::ps_evidence(&built.oracle, &built.ctx, &family, p.budget, p.shape_cap)?;
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["h_size", "max_shape_index", "outcome", "probes_used"],
            );
            for (h_size, profile) in &report.per_h {
                csv.row(&[
                    h_size.to_string(),
                    profile
                        .max_shape_index
                        .map(|m| m.to_string())
                        .unwrap_or_default(),
                    format!("{:?}", profile.outcome),
                    profile.probes_used.to_string(),
                ]);
            }
            csv.finish()?
        }
        "duality" => {
            let report = det::duality_check(&built.oracle, &built.ctx, p.h_max, p.budget);
            ok = report.all_consistent;
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["shape_index", "syndeticity_failure", "thickness_witness", "consistent"],
            );
            for row in &report.rows {
                csv.row(&[
                    row.shape_index.to_string(),
                    row.syndeticity_failure
                        .as_ref()
                        .map(element_to_string)
                        .unwrap_or_default(),
                    row.complement_thickness_witness
                        .as_ref()
                        .map(element_to_string)
                        .unwrap_or_default(),
                    row.consistent.to_string(),
                ]);
            }
            csv.finish()?
        }
        "st" => {
            let d = det::st_decompose(&built.oracle, &built.ctx, &h, p.window)?;
            ok = d.verified_on_window;
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["window", "verified", "first_mismatch"],
            );
            csv.row(&[
                p.window.to_string(),
                d.verified_on_window.to_string(),
                d.first_mismatch
                    .as_ref()
                    .map(element_to_string)
                    .unwrap_or_default(),
            ]);
            csv.finish()?
        }
        "partition" => {
            let classes = p.classes.unwrap_or(2);
            let coloring = det::Coloring::modular(classes);
            let report = det::partition_experiment(
                &built.oracle,
                &built.ctx,
                &coloring,
                &[h],
                p.budget,
                p.shape_cap,
            )?;
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["class", "best_reach", "grade", "strongest"],
            );
            for c in &report.per_class {
                csv.row(&[
                    c.class.to_string(),
                    c.best_reach.map(|m| m.to_string()).unwrap_or_default(),
                    format!("{:?}", c.evidence.grade),
                    (c.class == report.strongest_class).to_string(),
                ]);
            }
            csv.finish()?
        }
        other => bail!("unknown detect check '{other}'"),
    };
    Ok(RunOutcome {
        artifacts: vec![path],
        checks_passed: ok,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessParams {
    shifts: Vec<i64>,
    moduli: Vec<i64>,
    #[serde(default)]
    residues: Option<Vec<i64>>,
    #[serde(default)]
    verify: Option<SetSpec>,
    #[serde(default = "default_k_max")]
    k_max: u64,
}

fn default_k_max() -> u64 {
    10
}

/// JSON certificate layout: shifts, moduli, x, N, verifiedRange.
#[derive(Serialize)]
struct WitnessCertificate {
    shifts: Vec<i64>,
    moduli: Vec<i64>,
    x: i64,
    #[serde(rename = "N")]
    n: i64,
    #[serde(rename = "verifiedRange")]
    verified_range: Option<u64>,
    residues: Vec<i64>,
}

fn run_witness(params: &serde_json::Value, prefix: &Path) -> Result<RunOutcome> {
    let p: WitnessParams = parse_params(params).map_err(|e| anyhow!(e.to_string()))?;
    let witness = match &p.residues {
        Some(rs) => {
            if rs.len() != p.moduli.len() {
                bail!("residues must align with moduli");
            }
            let classes: Vec<(i64, i64)> =
                p.moduli.iter().copied().zip(rs.iter().copied()).collect();
            det::crt_witness(&p.shifts, &classes)?
        }
        None => det::crt_witness_zero(&p.shifts, &p.moduli)?,
    };
    let mut checks_passed = true;
    let witness = match &p.verify {
        Some(set) => {
            let built = build_set(set, 0)?;
            match det::verify_crt_witness(&witness, &built.oracle, p.k_max) {
                Ok(w) => w,
                Err(e) => {
                    eprintln!("witness verification failed: {e}");
                    checks_passed = false;
                    witness
                }
            }
        }
        None => {
            // default verification target: the B-free set of the moduli
            let b = BSequence::new(p.moduli.clone())?;
            det::verify_crt_witness(&witness, &bfree_oracle(&b), p.k_max)?
        }
    };
    let cert = WitnessCertificate {
        shifts: witness.shifts.clone(),
        moduli: witness.residue_proof.iter().map(|&(m, _)| m).collect(),
        x: witness.x,
        n: witness.modulus_product,
        verified_range: witness.verified_range,
        residues: witness.residue_proof.iter().map(|&(_, r)| r).collect(),
    };
    let path = write_json(prefix.with_extension("json"), &cert)?;
    Ok(RunOutcome {
        artifacts: vec![path],
        checks_passed,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Sl2Params {
    n_range: (i64, i64),
    #[serde(default = "default_ks")]
    ks: Vec<i64>,
    #[serde(default)]
    moduli: Option<Vec<i64>>,
}

fn default_ks() -> Vec<i64> {
    vec![2]
}

fn run_sl2(params: &serde_json::Value, prefix: &Path) -> Result<RunOutcome> {
    let p: Sl2Params = parse_params(params).map_err(|e| anyhow!(e.to_string()))?;
    let (lo, hi) = p.n_range;
    if lo < 1 || hi < lo {
        bail!("n_range must satisfy 1 <= lo <= hi");
    }
    let mut ok = true;
    let path = if let Some(moduli) = &p.moduli {
        let b = BSequence::new(moduli.clone())?;
        let entries =
            discordant::sl2::congruence_complement_density(&b, &(lo..=hi).collect::<Vec<_>>())?;
        let mut csv = CsvWriter::new(
            prefix.with_extension("csv"),
            &["n", "ball_size", "excluded", "ratio", "lower_bound"],
        );
        for e in &entries {
            csv.row(&[
                e.n.to_string(),
                e.ball_size.to_string(),
                e.excluded.to_string(),
                fmt_float(e.ratio),
                fmt_float(e.lower_bound),
            ]);
        }
        csv.finish()?
    } else {
        let mut header: Vec<String> = vec!["n".into(), "ball_size".into(), "lower_bound".into()];
        for k in &p.ks {
            header.push(format!("gamma{k}"));
            header.push(format!("gamma{k}_bound"));
        }
        let header_refs: Vec<&str> = header.iter().map(|s| s.as_str()).collect();
        let mut csv = CsvWriter::new(prefix.with_extension("csv"), &header_refs);
        for n in lo..=hi {
            let ball = discordant::sl2::enumerate_ball(n)?;
            let lower = 12.0 / std::f64::consts::PI.powi(2) * (n * n) as f64;
            ok &= ball.members.len() as f64 >= lower;
            let mut row = vec![
                n.to_string(),
                ball.members.len().to_string(),
                fmt_float(lower),
            ];
            for &k in &p.ks {
                if n < k {
                    row.push(String::new());
                    row.push(String::new());
                    continue;
                }
                let count = ball
                    .members
                    .iter()
                    .filter(|m| discordant::sl2::gamma_membership(m, k))
                    .count();
                let bound = 96.0 / (k * k) as f64 * (n * n) as f64;
                ok &= count as f64 <= bound;
                row.push(count.to_string());
                row.push(fmt_float(bound));
            }
            csv.row(&row);
        }
        csv.finish()?
    };
    Ok(RunOutcome {
        artifacts: vec![path],
        checks_passed: ok,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolicParams {
    action: String,
    #[serde(default)]
    set: Option<SetSpec>,
    #[serde(default = "default_span")]
    span: u32,
    #[serde(default = "default_max_width")]
    max_width: u32,
    #[serde(default = "default_budget")]
    budget: u64,
    #[serde(default)]
    window: Option<u64>,
    #[serde(default)]
    shape_len: Option<usize>,
    #[serde(default)]
    h_max: Option<usize>,
}

fn default_span() -> u32 {
    4
}
fn default_max_width() -> u32 {
    8
}

fn run_symbolic(params: &serde_json::Value, prefix: &Path) -> Result<RunOutcome> {
    let p: SymbolicParams = parse_params(params).map_err(|e| anyhow!(e.to_string()))?;
    let mut artifacts = Vec::new();
    let mut ok = true;
    match p.action.as_str() {
        "disjunctive" => {
            let ctx = GroupContext::NatAdd;
            let generator = disjunctive_generator(&ctx, p.max_width)?;
            artifacts.push(write_json(
                prefix.with_extension("placements.json"),
                &generator.placements,
            )?);
            let catalog = CylinderPattern::all_with_span(p.span);
            let report = disjunctivity_scan(
                &generator.config,
                &ctx,
                &catalog,
                generator.horizon as u64 + 16,
            );
            ok = report.missing == 0;
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["pattern_index", "ones", "zeros", "witness"],
            );
            for (i, entry) in report.entries.iter().enumerate() {
                csv.row(&[
                    i.to_string(),
                    entry
                        .pattern
                        .ones
                        .iter()
                        .map(element_to_string)
                        .collect::<Vec<_>>()
                        .join(";"),
                    entry
                        .pattern
                        .zeros
                        .iter()
                        .map(element_to_string)
                        .collect::<Vec<_>>()
                        .join(";"),
                    entry
                        .witness
                        .as_ref()
                        .map(element_to_string)
                        .unwrap_or_default(),
                ]);
            }
            artifacts.push(csv.finish()?);
        }
        "orbit" => {
            let set = p.set.as_ref().ok_or_else(|| anyhow!("orbit needs a 'set'"))?;
            let built = build_set(set, p.window.unwrap_or(10_000))?;
            let alpha = BinaryConfig::indicator(&built.oracle);
            let beta = BinaryConfig::zeros();
            let len = p.shape_len.unwrap_or(3);
            let shape: Vec<Element> = (0..len as i64).map(Element::int).collect();
            let witness = orbit_window_membership(&beta, &alpha, &built.ctx, &shape, p.budget);
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["shape_len", "witness_found", "witness"],
            );
            csv.row(&[
                len.to_string(),
                witness.is_some().to_string(),
                witness.as_ref().map(element_to_string).unwrap_or_default(),
            ]);
            artifacts.push(csv.finish()?);
        }
        "extract" => {
            let set = p.set.as_ref().ok_or_else(|| anyhow!("extract needs a 'set'"))?;
            let built = build_set(set, p.window.unwrap_or(10_000))?;
            let alpha = BinaryConfig::indicator(&built.oracle);
            let h = det::interval_shape(&built.ctx, p.h_max.unwrap_or(1));
            let outcome = syndetic_extraction(
                &alpha,
                &built.ctx,
                &h,
                &ExtractionParams {
                    search_bound: p.budget,
                    ..ExtractionParams::default()
                },
            )?;
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["outcome", "max_gap", "survivors", "pattern_or_reason"],
            );
            match outcome {
                ExtractionOutcome::Stabilized {
                    pattern,
                    survivors,
                    max_gap,
                    ..
                } => {
                    let bits: String =
                        pattern.iter().map(|&b| if b { '1' } else { '0' }).collect();
                    csv.row(&[
                        "stabilized".into(),
                        max_gap.map(|g| g.to_string()).unwrap_or_default(),
                        survivors.to_string(),
                        bits,
                    ]);
                }
                ExtractionOutcome::Inconclusive {
                    candidates_found,
                    reason,
                    ..
                } => {
                    csv.row(&[
                        "inconclusive".into(),
                        String::new(),
                        candidates_found.to_string(),
                        reason,
                    ]);
                }
            }
            artifacts.push(csv.finish()?);
        }
        "gaps" => {
            let set = p.set.as_ref().ok_or_else(|| anyhow!("gaps needs a 'set'"))?;
            let window = p.window.unwrap_or(2_000);
            let built = build_set(set, window)?;
            let alpha = BinaryConfig::indicator(&built.oracle);
            let catalog = CylinderPattern::all_with_span(p.span.min(4));
            let report = minimal_orbit_gap_report(&alpha, &built.ctx, &catalog, window)?;
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["pattern_index", "occurrences", "max_gap", "class"],
            );
            for (i, entry) in report.iter().enumerate() {
                csv.row(&[
                    i.to_string(),
                    entry.occurrences.to_string(),
                    entry.max_gap.map(|g| g.to_string()).unwrap_or_default(),
                    format!("{:?}", entry.class),
                ]);
            }
            artifacts.push(csv.finish()?);
        }
        other => bail!("unknown symbolic action '{other}'"),
    }
    Ok(RunOutcome {
        artifacts,
        checks_passed: ok,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RotateParams {
    #[serde(default = "default_alpha")]
    alpha: String,
    #[serde(default)]
    intervals: Option<Vec<(f64, f64)>>,
    #[serde(default)]
    fat_cantor: Option<(f64, u32)>,
    #[serde(default)]
    base_point: f64,
    windows: Vec<u64>,
}

fn default_alpha() -> String {
    "golden".into()
}

fn run_rotate(params: &serde_json::Value, prefix: &Path) -> Result<RunOutcome> {
    let p: RotateParams = parse_params(params).map_err(|e| anyhow!(e.to_string()))?;
    let alpha = parse_alpha(&p.alpha)?;
    let target = match (&p.intervals, p.fat_cantor) {
        (Some(ivs), None) => IntervalUnion::from_f64_intervals(ivs)?,
        (None, Some((c, depth))) => fat_cantor(c, depth)?.surviving_union(),
        _ => bail!("rotate needs exactly one of 'intervals' or 'fat_cantor'"),
    };
    let measure = target.measure();
    let spec = RotationSpec::new(alpha, target, p.base_point);
    let entries = rotation_density_report(&spec, &p.windows)?;
    let mut csv = CsvWriter::new(
        prefix.with_extension("csv"),
        &["n", "inside", "boundary", "window", "ratio", "target_measure"],
    );
    for e in &entries {
        csv.row(&[
            e.n.to_string(),
            e.inside.to_string(),
            e.boundary.to_string(),
            e.window.to_string(),
            fmt_float(e.ratio),
            fmt_float(measure),
        ]);
    }
    Ok(RunOutcome {
        artifacts: vec![csv.finish()?],
        checks_passed: true,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EnaParams {
    action: String,
    #[serde(default = "default_sparsity")]
    sparsity: u32,
    #[serde(default = "default_blocks")]
    blocks: usize,
    #[serde(default)]
    word: Option<Vec<bool>>,
    #[serde(default = "default_seed")]
    seed: u64,
    #[serde(default = "default_width")]
    width: u32,
    #[serde(default)]
    window: Option<u64>,
}

fn default_sparsity() -> u32 {
    4
}
fn default_blocks() -> usize {
    4
}
fn default_seed() -> u64 {
    42
}
fn default_width() -> u32 {
    3
}

fn run_ena(params: &serde_json::Value, prefix: &Path) -> Result<RunOutcome> {
    let p: EnaParams = parse_params(params).map_err(|e| anyhow!(e.to_string()))?;
    let ctx = GroupContext::NatAdd;
    match p.action.as_str() {
        "swing" => {
            let bits = p.word.clone().unwrap_or_else(|| vec![true]);
            let word = WordPattern::interval(&bits)?;
            let generator = ena_generator(&ctx, p.sparsity, p.blocks, &word)?;
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["window", "frequency", "block_mode"],
            );
            for (i, &n) in generator.designed_windows().iter().enumerate() {
                let freq = word_frequency(&generator.config, &ctx, &word, n)?
                    .map(|r| r.max_fraction);
                csv.row(&[
                    n.to_string(),
                    opt_float(freq),
                    if (i + 1) % 2 == 0 { "match" } else { "anti" }.to_string(),
                ]);
            }
            Ok(RunOutcome {
                artifacts: vec![csv.finish()?],
                checks_passed: true,
            })
        }
        "normal" => {
            let window = p.window.unwrap_or(1_000_000);
            let alpha = BinaryConfig::pseudorandom(p.seed);
            let rep = normal_statistics(&alpha, &ctx, p.width, window)?;
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["word", "frequency", "expected", "abs_dev"],
            );
            for (w, &f) in rep.freqs.iter().enumerate() {
                csv.row(&[
                    format!("{w:0width$b}", width = p.width as usize),
                    fmt_float(f),
                    fmt_float(rep.expected),
                    fmt_float((f - rep.expected).abs()),
                ]);
            }
            Ok(RunOutcome {
                artifacts: vec![csv.finish()?],
                checks_passed: true,
            })
        }
        other => bail!("unknown ena action '{other}'"),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IeParams {
    action: String,
    #[serde(default)]
    densities: Option<Vec<f64>>,
    #[serde(default)]
    prime_squares: Option<usize>,
    #[serde(default)]
    sum_bound: Option<f64>,
    #[serde(default)]
    moduli: Option<Vec<i64>>,
    #[serde(default = "default_window")]
    window: u64,
    #[serde(default)]
    k: Option<usize>,
    #[serde(default)]
    truncation: Option<usize>,
}

fn run_ie(params: &serde_json::Value, prefix: &Path) -> Result<RunOutcome> {
    let p: IeParams = parse_params(params).map_err(|e| anyhow!(e.to_string()))?;
    match p.action.as_str() {
        "products" => {
            let (densities, bound) = match (&p.densities, p.prime_squares) {
                (Some(ds), None) => (
                    ds.clone(),
                    p.sum_bound.unwrap_or_else(|| ds.iter().sum()),
                ),
                (None, Some(count)) => {
                    let b = BSequence::prime_squares(count);
                    let ds: Vec<f64> = b.terms().iter().map(|&q| 1.0 / q as f64).collect();
                    // Σ 1/p² over all primes = P(2) < 0.4523
                    (ds, p.sum_bound.unwrap_or(0.4523))
                }
                _ => bail!("ie products needs exactly one of 'densities' or 'prime_squares'"),
            };
            let trace = ie::ie_partial_products(&densities, bound)?;
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["index", "density", "prefix_product", "tail_bound"],
            );
            for (i, (&d, &prod)) in densities
                .iter()
                .zip(trace.prefix_products.iter())
                .enumerate()
            {
                csv.row(&[
                    (i + 1).to_string(),
                    fmt_float(d),
                    fmt_float(prod),
                    fmt_float(trace.tail_bound),
                ]);
            }
            Ok(RunOutcome {
                artifacts: vec![csv.finish()?],
                checks_passed: true,
            })
        }
        "independence" => {
            let moduli = p
                .moduli
                .clone()
                .ok_or_else(|| anyhow!("ie independence needs 'moduli'"))?;
            let fam = ie::IEFamily::new(
                GroupContext::IntAdd,
                moduli.iter().map(|&m| SetOracle::multiples_of(m)).collect(),
            )?;
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["i", "j", "window_ratio", "density_product", "abs_diff", "flagged"],
            );
            for i in 0..moduli.len() {
                for j in i + 1..moduli.len() {
                    let rep = ie::ie_check_independence(&fam, &[i, j], p.window)?;
                    csv.row(&[
                        moduli[i].to_string(),
                        moduli[j].to_string(),
                        fmt_float(rep.window_ratio),
                        fmt_float(rep.density_product),
                        fmt_float(rep.abs_diff),
                        rep.flagged.to_string(),
                    ]);
                }
            }
            Ok(RunOutcome {
                artifacts: vec![csv.finish()?],
                checks_passed: true,
            })
        }
        "overcount" => {
            let moduli = p
                .moduli
                .clone()
                .ok_or_else(|| anyhow!("ie overcount needs 'moduli'"))?;
            let fam = ie::IEFamily::new(
                GroupContext::IntAdd,
                moduli.iter().map(|&m| SetOracle::multiples_of(m)).collect(),
            )?;
            let k = p.k.unwrap_or(1);
            let truncation = p.truncation.unwrap_or(moduli.len());
            let rep = ie::ie_check_bounded_overcount(&fam, k, p.window, truncation)?;
            let mut csv = CsvWriter::new(
                prefix.with_extension("csv"),
                &["k", "truncation", "window", "average", "density_sum", "abs_diff"],
            );
            csv.row(&[
                rep.k.to_string(),
                rep.truncation.to_string(),
                rep.window_index.to_string(),
                fmt_float(rep.window_average),
                fmt_float(rep.density_sum),
                fmt_float(rep.abs_diff),
            ]);
            Ok(RunOutcome {
                artifacts: vec![csv.finish()?],
                checks_passed: true,
            })
        }
        other => bail!("unknown ie action '{other}'"),
    }
}
