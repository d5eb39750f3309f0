//! Deterministic parallel sweeps over quadric coefficients.
//!
//! Work is split into items keyed by the leading coefficients `(a, b, c)` (or
//! by blocks of sample indices), mapped in parallel and merged in item order,
//! so the summary does not depend on the number of workers.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::field::{FieldContext, Fq2};
use crate::intersect::{
    check_ovoid, check_permutable, family_heads, AtInfinity, CInfinityKind, CInfinityType, CaseLabel, Exclusion,
    Family, IntersectError, Oracle, QSpecies, QuadricSurfaceQ,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// Every tuple of GF(q^2)^6.
    Exhaustive,
    /// `samples` tuples drawn from a seeded generator.
    Random { samples: u64, seed: u64 },
    /// The normalized families; `d, e, f` exhaustively, or `per_head` seeded draws per `(a, b, c)`.
    Normalized { families: Vec<Family>, per_head: Option<u64>, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OraclePolicy {
    All,
    /// About this many instances, evenly strided over the sweep.
    Sample(u64),
    Off,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub mode: SweepMode,
    pub oracle: OraclePolicy,
    /// Worker threads; 0 picks the number of cores.
    pub workers: usize,
    /// Run the ovoid / permutable checks on hyperbolic instances of extremal size.
    pub extremal_checks: bool,
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("could not start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

/// One swept instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub quadric: QuadricSurfaceQ,
    pub species: QSpecies,
    pub c_inf: Option<CInfinityType>,
    pub case: Option<CaseLabel>,
    pub size_fast: Option<u64>,
    pub size_oracle: Option<u64>,
    pub ovoid: Option<bool>,
    pub permutable: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeTally {
    pub count: u64,
    pub witness: QuadricSurfaceQ,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub quadric: QuadricSurfaceQ,
    pub fast: u64,
    pub oracle: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExtremalTally {
    pub checked: u64,
    pub failed: u64,
    /// Largest number of generators of H in a regulus, over permutable instances.
    pub max_r3: u64,
    pub witness: Option<QuadricSurfaceQ>,
}

/// Aggregate of a sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub instances: u64,
    pub reducible: u64,
    pub spectra: BTreeMap<QSpecies, BTreeMap<u64, SizeTally>>,
    pub cases: BTreeMap<(QSpecies, CInfinityKind, CaseLabel), u64>,
    pub exclusions: BTreeMap<Exclusion, SizeTally>,
    pub oracle_checked: u64,
    pub oracle_mismatches: u64,
    pub first_mismatch: Option<Mismatch>,
    pub errors: u64,
    pub first_error: Option<(QuadricSurfaceQ, String)>,
    pub ovoid: Option<ExtremalTally>,
    pub permutable: Option<ExtremalTally>,
}

fn merge_tally(into: &mut SizeTally, other: &SizeTally) {
    into.count += other.count;
}

fn merge_extremal(into: &mut Option<ExtremalTally>, other: &Option<ExtremalTally>) {
    match (into.as_mut(), other) {
        (_, None) => {}
        (None, Some(o)) => *into = Some(*o),
        (Some(t), Some(o)) => {
            t.checked += o.checked;
            t.failed += o.failed;
            t.max_r3 = t.max_r3.max(o.max_r3);
            t.witness = t.witness.or(o.witness);
        }
    }
}

impl SweepSummary {
    /// Appends `other`, which covers later instances; first witnesses are kept.
    pub fn merge(&mut self, other: &SweepSummary) {
        self.instances += other.instances;
        self.reducible += other.reducible;
        for (sp, sizes) in &other.spectra {
            let mine = self.spectra.entry(*sp).or_default();
            for (size, t) in sizes {
                mine.entry(*size).and_modify(|m| merge_tally(m, t)).or_insert(*t);
            }
        }
        for (k, n) in &other.cases {
            *self.cases.entry(*k).or_default() += n;
        }
        for (k, t) in &other.exclusions {
            self.exclusions.entry(*k).and_modify(|m| merge_tally(m, t)).or_insert(*t);
        }
        self.oracle_checked += other.oracle_checked;
        self.oracle_mismatches += other.oracle_mismatches;
        self.first_mismatch = self.first_mismatch.or(other.first_mismatch);
        self.errors += other.errors;
        if self.first_error.is_none() {
            self.first_error.clone_from(&other.first_error);
        }
        merge_extremal(&mut self.ovoid, &other.ovoid);
        merge_extremal(&mut self.permutable, &other.permutable);
    }

    /// Observed sizes per species.
    pub fn observed(&self, species: QSpecies) -> Vec<u64> {
        self.spectra.get(&species).map(|m| m.keys().copied().collect()).unwrap_or_default()
    }

    pub fn exclusion_violations(&self) -> u64 {
        self.exclusions.values().map(|t| t.count).sum()
    }

    fn bump_size(&mut self, species: QSpecies, size: u64, quadric: QuadricSurfaceQ) {
        self.spectra
            .entry(species)
            .or_default()
            .entry(size)
            .and_modify(|t| t.count += 1)
            .or_insert(SizeTally { count: 1, witness: quadric });
    }

    fn record_error(&mut self, quadric: QuadricSurfaceQ, err: &IntersectError) {
        self.errors += 1;
        if self.first_error.is_none() {
            self.first_error = Some((quadric, err.to_string()));
        }
    }
}

/// Deterministic instance source: work item `i` yields its instances in a fixed order.
enum Plan {
    Heads { heads: Vec<(Fq2, Fq2, Fq2)>, per_head: Option<u64>, seed: u64 },
    Random { samples: u64, seed: u64 },
}

const RANDOM_BLOCK: u64 = 4096;

impl Plan {
    fn new(ctx: &FieldContext, mode: &SweepMode) -> Plan {
        match mode {
            SweepMode::Exhaustive => {
                let elems: Vec<Fq2> = ctx.elements2().collect();
                let mut heads = Vec::with_capacity(elems.len().pow(3));
                for &a in &elems {
                    for &b in &elems {
                        for &c in &elems {
                            heads.push((a, b, c));
                        }
                    }
                }
                Plan::Heads { heads, per_head: None, seed: 0 }
            }
            SweepMode::Normalized { families, per_head, seed } => Plan::Heads {
                heads: families.iter().flat_map(|&f| family_heads(ctx, f)).collect(),
                per_head: *per_head,
                seed: *seed,
            },
            SweepMode::Random { samples, seed } => Plan::Random { samples: *samples, seed: *seed },
        }
    }

    fn items(&self) -> u64 {
        match self {
            Plan::Heads { heads, .. } => heads.len() as u64,
            Plan::Random { samples, .. } => samples.div_ceil(RANDOM_BLOCK),
        }
    }

    fn per_item(&self, q2: u64) -> u64 {
        match self {
            Plan::Heads { per_head: Some(k), .. } => *k,
            Plan::Heads { per_head: None, .. } => q2 * q2 * q2,
            Plan::Random { .. } => RANDOM_BLOCK,
        }
    }

    fn total(&self, q2: u64) -> u64 {
        match self {
            Plan::Random { samples, .. } => *samples,
            _ => self.items() * self.per_item(q2),
        }
    }
}

/// The `i`-th draw of a seeded stream: a ChaCha8 generator with the seed as
/// key and `i` as stream id, so any instance is reproducible on its own.
pub fn random_quadric(ctx: &FieldContext, seed: u64, i: u64) -> QuadricSurfaceQ {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    let q2 = ctx.q2();
    QuadricSurfaceQ::new([(); 6].map(|_| ctx.from_code2(rng.gen_range(0..q2))))
}

struct Worker<'a> {
    ctx: &'a FieldContext,
    oracle: Oracle<'a>,
    stride: Option<u64>,
    extremal: bool,
    keep_records: bool,
}

impl Worker<'_> {
    fn visit(
        &self,
        out: &mut SweepSummary,
        records: &mut Vec<Record>,
        inf: &Result<AtInfinity, IntersectError>,
        quadric: QuadricSurfaceQ,
        global: u64,
    ) {
        let ctx = self.ctx;
        out.instances += 1;
        let mut rec = Record {
            quadric,
            species: QSpecies::Reducible,
            c_inf: None,
            case: None,
            size_fast: None,
            size_oracle: None,
            ovoid: None,
            permutable: None,
        };
        match inf {
            Err(IntersectError::Reducible) => out.reducible += 1,
            Err(e) => out.record_error(quadric, e),
            Ok(inf) => {
                rec.species = inf.species;
                rec.c_inf = Some(inf.c_inf);
                match inf.complete(ctx, quadric.d, quadric.e, quadric.f) {
                    Err(e) => out.record_error(quadric, &e),
                    Ok(fast) => {
                        rec.case = Some(fast.case);
                        rec.size_fast = Some(fast.size_total);
                        out.bump_size(inf.species, fast.size_total, quadric);
                        *out.cases.entry((inf.species, inf.c_inf.kind, fast.case)).or_default() += 1;
                        for ex in Exclusion::violated(inf, &fast) {
                            out.exclusions
                                .entry(ex)
                                .and_modify(|t| t.count += 1)
                                .or_insert(SizeTally { count: 1, witness: quadric });
                        }
                        if self.stride.is_some_and(|s| global.is_multiple_of(s)) {
                            let o = self.oracle.intersection_size(&quadric);
                            rec.size_oracle = Some(o);
                            out.oracle_checked += 1;
                            if o != fast.size_total {
                                out.oracle_mismatches += 1;
                                if out.first_mismatch.is_none() {
                                    out.first_mismatch = Some(Mismatch { quadric, fast: fast.size_total, oracle: o });
                                }
                            }
                        }
                        if self.extremal && inf.species == QSpecies::Hyperbolic {
                            self.extremal_checks(out, &mut rec, fast.size_total);
                        }
                    }
                }
            }
        }
        if self.keep_records {
            records.push(rec);
        }
    }

    fn extremal_checks(&self, out: &mut SweepSummary, rec: &mut Record, size: u64) {
        let q = self.ctx.q() as u64;
        let quadric = rec.quadric;
        let tally = |slot: &mut Option<ExtremalTally>, ok: bool, r3: u64| {
            let t = slot.get_or_insert(ExtremalTally { checked: 0, failed: 0, max_r3: 0, witness: None });
            t.checked += 1;
            t.failed += !ok as u64;
            t.max_r3 = t.max_r3.max(r3);
            if ok && t.witness.is_none() {
                t.witness = Some(quadric);
            }
        };
        if size == q * q + 1 {
            let ok = check_ovoid(self.ctx, &quadric).map(|c| c.holds());
            let ok = ok.unwrap_or_else(|e| {
                out.record_error(quadric, &e);
                false
            });
            rec.ovoid = Some(ok);
            tally(&mut out.ovoid, ok, 0);
        } else if size == 2 * q * q * q + q * q + 1 {
            let (ok, r3) = match check_permutable(self.ctx, &quadric) {
                Ok(c) => (c.holds(), c.max_r3()),
                Err(e) => {
                    out.record_error(quadric, &e);
                    (false, 0)
                }
            };
            rec.permutable = Some(ok);
            tally(&mut out.permutable, ok, r3);
        }
    }
}

fn run_item(ctx: &FieldContext, plan: &Plan, worker: &Worker<'_>, item: u64) -> (SweepSummary, Vec<Record>) {
    let mut out = SweepSummary::default();
    let mut records = Vec::new();
    let q2 = ctx.q2() as u64;
    let per_item = plan.per_item(q2);
    match plan {
        Plan::Heads { heads, per_head, seed } => {
            let (a, b, c) = heads[item as usize];
            let inf = AtInfinity::new(ctx, a, b, c);
            let base = item * per_item;
            match per_head {
                None => {
                    for inner in 0..per_item {
                        let t = QuadricSurfaceQ::from_index(ctx, inner);
                        let quadric = QuadricSurfaceQ { a, b, c, ..t };
                        worker.visit(&mut out, &mut records, &inf, quadric, base + inner);
                    }
                }
                Some(k) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    rng.set_stream(item);
                    for inner in 0..*k {
                        let [d, e, f] = [(); 3].map(|_| ctx.from_code2(rng.gen_range(0..q2 as usize)));
                        let quadric = QuadricSurfaceQ { a, b, c, d, e, f };
                        worker.visit(&mut out, &mut records, &inf, quadric, base + inner);
                    }
                }
            }
        }
        Plan::Random { samples, seed } => {
            let start = item * RANDOM_BLOCK;
            for i in start..(start + RANDOM_BLOCK).min(*samples) {
                let quadric = random_quadric(ctx, *seed, i);
                let inf = AtInfinity::new(ctx, quadric.a, quadric.b, quadric.c);
                worker.visit(&mut out, &mut records, &inf, quadric, i);
            }
        }
    }
    (out, records)
}

/// Number of instances the sweep will visit.
pub fn planned_instances(ctx: &FieldContext, mode: &SweepMode) -> u64 {
    Plan::new(ctx, mode).total(ctx.q2() as u64)
}

/// Runs the sweep; `sink` receives every instance in sweep order.
pub fn run_sweep(
    ctx: &FieldContext,
    opts: &SweepOptions,
    mut sink: Option<&mut dyn FnMut(&Record)>,
) -> Result<SweepSummary, SweepError> {
    let plan = Plan::new(ctx, &opts.mode);
    let total = plan.total(ctx.q2() as u64);
    let stride = match opts.oracle {
        OraclePolicy::All => Some(1),
        OraclePolicy::Off => None,
        OraclePolicy::Sample(0) => None,
        OraclePolicy::Sample(n) => Some((total / n).max(1)),
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.workers).build()?;
    let mut summary = SweepSummary::default();
    let items = plan.items();
    // bounded batches keep record buffers small
    const BATCH: u64 = 512;
    let keep_records = sink.is_some();
    let mut start = 0;
    while start < items {
        let end = (start + BATCH).min(items);
        let parts: Vec<(SweepSummary, Vec<Record>)> = pool.install(|| {
            (start..end)
                .into_par_iter()
                .map_init(
                    || Worker { ctx, oracle: Oracle::new(ctx), stride, extremal: opts.extremal_checks, keep_records },
                    |w, item| run_item(ctx, &plan, w, item),
                )
                .collect()
        });
        for (part, records) in parts {
            summary.merge(&part);
            if let Some(s) = sink.as_mut() {
                records.iter().for_each(s);
            }
        }
        start = end;
    }
    Ok(summary)
}
