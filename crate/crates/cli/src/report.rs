//! Machine-readable sweep and classification reports.

use std::collections::BTreeMap;
use std::io::Write;

use hql_core::field::FieldContext;
use hql_core::intersect::{expected_spectrum, IntersectionReport, QSpecies, QuadricSurfaceQ, Witness};
use hql_core::sweep::{ExtremalTally, Record, SweepSummary};
use serde::{Deserialize, Serialize};

use crate::config::{oracle_label, SweepConfig};

pub const SCHEMA_VERSION: u32 = 1;

/// Coefficients `a..f` in `x0+e*x1` notation.
pub fn coeff_strings(ctx: &FieldContext, q: &QuadricSurfaceQ) -> Vec<String> {
    q.coeffs().iter().map(|&x| ctx.format2(x)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub q: u64,
    pub h: u32,
    /// Modulus of GF(q) as little-endian bits.
    pub modulus: String,
    /// The constant with `e^2 = e + nu` defining GF(q^2).
    pub nu: String,
}

impl FieldInfo {
    pub fn new(ctx: &FieldContext) -> Self {
        FieldInfo { q: ctx.q() as u64, h: ctx.h(), modulus: ctx.format_modulus(), nu: ctx.format(ctx.nu()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunInfo {
    pub mode: String,
    pub samples: Option<u64>,
    pub seed: u64,
    pub oracle: String,
    pub families: Option<Vec<String>>,
    pub per_head: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeEntry {
    pub size: u64,
    pub count: u64,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpeciesReport {
    pub expected: Vec<u64>,
    pub observed: Vec<u64>,
    pub missing: Vec<u64>,
    pub unexpected: Vec<u64>,
    pub instances: u64,
    pub sizes: Vec<SizeEntry>,
    pub contained: bool,
    /// `None` when completeness is reported but not required.
    pub complete: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseEntry {
    pub species: String,
    pub cinf: String,
    pub case: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionEntry {
    pub rule: String,
    pub count: u64,
    pub witness: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleInfo {
    pub checked: u64,
    pub mismatches: u64,
    pub first_mismatch: Option<MismatchEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchEntry {
    pub coeffs: Vec<String>,
    pub fast: u64,
    pub oracle: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub count: u64,
    pub first: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalInfo {
    pub checked: u64,
    pub failed: u64,
    pub max_r3: u64,
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub spectrum: bool,
    pub oracle: bool,
    pub exclusions: bool,
    pub internal: bool,
}

impl Verdicts {
    pub fn pass(&self) -> bool {
        self.spectrum && self.oracle && self.exclusions && self.internal
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub schema_version: u32,
    pub field: FieldInfo,
    pub run: RunInfo,
    pub instances: u64,
    pub reducible: u64,
    pub species: BTreeMap<String, SpeciesReport>,
    pub cases: Vec<CaseEntry>,
    pub exclusions: Vec<ExclusionEntry>,
    pub oracle: OracleInfo,
    pub errors: ErrorInfo,
    pub ovoid: Option<ExtremalInfo>,
    pub permutable: Option<ExtremalInfo>,
    pub verdicts: Verdicts,
    pub pass: bool,
}

fn extremal_info(ctx: &FieldContext, t: &Option<ExtremalTally>) -> Option<ExtremalInfo> {
    t.map(|t| ExtremalInfo {
        checked: t.checked,
        failed: t.failed,
        max_r3: t.max_r3,
        witness: t.witness.map(|w| coeff_strings(ctx, &w)),
    })
}

impl SpectrumReport {
    pub fn build(ctx: &FieldContext, cfg: &SweepConfig, s: &SweepSummary) -> Self {
        let q = ctx.q() as u64;
        let mut species = BTreeMap::new();
        for sp in cfg.species_in_scope() {
            let expected = expected_spectrum(sp, q);
            let tallies = s.spectra.get(&sp).cloned().unwrap_or_default();
            let observed: Vec<u64> = tallies.keys().copied().collect();
            let missing: Vec<u64> = expected.iter().copied().filter(|x| !observed.contains(x)).collect();
            let unexpected: Vec<u64> = observed.iter().copied().filter(|x| !expected.contains(x)).collect();
            let complete = cfg.completeness_required(sp).then_some(missing.is_empty());
            species.insert(
                sp.name().to_string(),
                SpeciesReport {
                    instances: tallies.values().map(|t| t.count).sum(),
                    sizes: tallies
                        .iter()
                        .map(|(&size, t)| SizeEntry { size, count: t.count, witness: coeff_strings(ctx, &t.witness) })
                        .collect(),
                    contained: unexpected.is_empty(),
                    complete,
                    expected,
                    observed,
                    missing,
                    unexpected,
                },
            );
        }
        let spectrum = species.values().all(|r| r.contained && r.complete != Some(false));
        let verdicts = Verdicts {
            spectrum,
            oracle: s.oracle_mismatches == 0,
            exclusions: s.exclusion_violations() == 0,
            internal: s.errors == 0,
        };
        let normalized = cfg.mode_name() == "normalized";
        SpectrumReport {
            schema_version: SCHEMA_VERSION,
            field: FieldInfo::new(ctx),
            run: RunInfo {
                mode: cfg.mode_name().into(),
                samples: (cfg.mode_name() == "random").then_some(cfg.samples),
                seed: cfg.seed,
                oracle: oracle_label(cfg.oracle),
                families: normalized.then(|| cfg.families.iter().map(|f| f.name().to_string()).collect()),
                per_head: if normalized { cfg.per_head } else { None },
            },
            instances: s.instances,
            reducible: s.reducible,
            species,
            cases: s
                .cases
                .iter()
                .map(|(&(sp, kind, case), &count)| CaseEntry {
                    species: sp.name().into(),
                    cinf: kind.name().into(),
                    case: case.name().into(),
                    count,
                })
                .collect(),
            exclusions: s
                .exclusions
                .iter()
                .map(|(rule, t)| ExclusionEntry {
                    rule: rule.name().into(),
                    count: t.count,
                    witness: coeff_strings(ctx, &t.witness),
                })
                .collect(),
            oracle: OracleInfo {
                checked: s.oracle_checked,
                mismatches: s.oracle_mismatches,
                first_mismatch: s.first_mismatch.map(|m| MismatchEntry {
                    coeffs: coeff_strings(ctx, &m.quadric),
                    fast: m.fast,
                    oracle: m.oracle,
                }),
            },
            errors: ErrorInfo {
                count: s.errors,
                first: s.first_error.as_ref().map(|(q, e)| format!("{}: {e}", q.format(ctx))),
            },
            ovoid: extremal_info(ctx, &s.ovoid),
            permutable: extremal_info(ctx, &s.permutable),
            pass: verdicts.pass(),
            verdicts,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// CSV column order.
pub const CSV_HEADER: [&str; 14] =
    ["q", "a", "b", "c", "d", "e", "f", "species", "cinf", "case", "size_fast", "size_oracle", "ovoid", "permutable"];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes one row per instance.
pub struct CsvRecords<W: Write> {
    inner: csv::Writer<W>,
    q: u64,
}

impl<W: Write> CsvRecords<W> {
    pub fn new(w: W, q: u64) -> csv::Result<Self> {
        let mut inner = csv::Writer::from_writer(w);
        inner.write_record(CSV_HEADER)?;
        Ok(CsvRecords { inner, q })
    }

    pub fn write(&mut self, ctx: &FieldContext, r: &Record) -> csv::Result<()> {
        let mut row = vec![self.q.to_string()];
        row.extend(coeff_strings(ctx, &r.quadric));
        row.push(r.species.name().to_string());
        row.push(opt(r.c_inf.map(|c| c.kind.name())));
        row.push(opt(r.case.map(|c| c.name())));
        row.push(opt(r.size_fast));
        row.push(opt(r.size_oracle));
        row.push(opt(r.ovoid));
        row.push(opt(r.permutable));
        self.inner.write_record(&row)
    }

    pub fn finish(mut self) -> std::io::Result<()> {
        self.inner.flush()
    }
}

/// Single-instance report for `classify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub field: FieldInfo,
    pub coeffs: Vec<String>,
    pub species: String,
    pub cinf: Option<String>,
    pub cinf_size: Option<u64>,
    pub xi: Option<String>,
    pub xi_inf: Option<String>,
    pub case: Option<String>,
    pub n_affine: Option<u64>,
    pub size_fast: Option<u64>,
    pub size_oracle: Option<u64>,
    pub ovoid: Option<bool>,
    pub permutable: Option<bool>,
}

impl ClassifyReport {
    pub fn reducible(ctx: &FieldContext, q: &QuadricSurfaceQ, oracle: Option<u64>) -> Self {
        ClassifyReport {
            field: FieldInfo::new(ctx),
            coeffs: coeff_strings(ctx, q),
            species: QSpecies::Reducible.name().into(),
            cinf: None,
            cinf_size: None,
            xi: None,
            xi_inf: None,
            case: None,
            n_affine: None,
            size_fast: None,
            size_oracle: oracle,
            ovoid: None,
            permutable: None,
        }
    }

    pub fn from_intersection(ctx: &FieldContext, r: &IntersectionReport) -> Self {
        ClassifyReport {
            field: FieldInfo::new(ctx),
            coeffs: coeff_strings(ctx, &r.quadric),
            species: r.species.name().into(),
            cinf: Some(r.c_inf.kind.name().into()),
            cinf_size: Some(r.c_inf.size),
            xi: Some(r.xi_class.to_string()),
            xi_inf: Some(r.xi_inf_class.to_string()),
            case: Some(r.case.name().into()),
            n_affine: Some(r.n_affine),
            size_fast: Some(r.size_total),
            size_oracle: r.oracle_size,
            ovoid: r.ovoid,
            permutable: r.permutable,
        }
    }

    pub fn to_text(&self) -> String {
        let mut lines = vec![
            format!("q: {}", self.field.q),
            format!("coefficients: {}", self.coeffs.join(",")),
            format!("species: {}", self.species),
        ];
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                lines.push(format!("{k}: {v}"));
            }
        };
        push("c_inf", self.cinf.clone().zip(self.cinf_size).map(|(k, n)| format!("{k} ({n} points)")));
        push("xi", self.xi.clone());
        push("xi_inf", self.xi_inf.clone());
        push("case", self.case.clone());
        push("affine points", self.n_affine.map(|n| n.to_string()));
        push("size (fast)", self.size_fast.map(|n| n.to_string()));
        push("size (oracle)", self.size_oracle.map(|n| n.to_string()));
        push("ovoid", self.ovoid.map(|b| b.to_string()));
        push("permutable", self.permutable.map(|b| b.to_string()));
        lines.join("\n") + "\n"
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionEntry {
    pub r1: u64,
    pub r2: u64,
    pub r3: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub coeffs: Vec<String>,
    pub size: u64,
    pub verified: bool,
    pub reguli: Vec<DistributionEntry>,
    pub tangent_planes_agree: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub field: FieldInfo,
    pub target: String,
    pub size: u64,
    pub witnesses: Vec<WitnessEntry>,
}

impl ExtremalReport {
    pub fn new(ctx: &FieldContext, target: &str, size: u64, ws: &[Witness]) -> Self {
        ExtremalReport {
            field: FieldInfo::new(ctx),
            target: target.into(),
            size,
            witnesses: ws
                .iter()
                .map(|w| WitnessEntry {
                    coeffs: coeff_strings(ctx, &w.quadric),
                    size: w.size,
                    verified: w.verified,
                    reguli: w
                        .distributions
                        .iter()
                        .map(|d| DistributionEntry { r1: d.r1, r2: d.r2, r3: d.r3 })
                        .collect(),
                    tangent_planes_agree: w.tangent_planes_agree,
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} witnesses of size {} at q = {}\n", self.target, self.size, self.field.q);
        for w in &self.witnesses {
            let regs: Vec<String> =
                w.reguli.iter().map(|d| format!("(r1, r2, r3) = ({}, {}, {})", d.r1, d.r2, d.r3)).collect();
            out += &format!("{}  verified={}  {}", w.coeffs.join(","), w.verified, regs.join("  "));
            if let Some(t) = w.tangent_planes_agree {
                out += &format!("  tangent planes agree={t}");
            }
            out.push('\n');
        }
        if self.witnesses.is_empty() {
            out += "none found\n";
        }
        out
    }
}
