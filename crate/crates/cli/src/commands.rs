use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

use hql_core::field::FieldContext;
use hql_core::intersect::{
    check_ovoid, check_permutable, classify_q, fast_intersection_size, find_extremal, oracle_intersection_size,
    ExtremalTarget, QSpecies, QuadricSurfaceQ,
};
use hql_core::sweep::run_sweep;

use crate::args::{ClassifyArgs, ExtremalArgs, Format, Target, TextFormat, VerifyArgs};
use crate::config::SweepConfig;
use crate::report::{ClassifyReport, CsvRecords, ExtremalReport, SpectrumReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

fn usage(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn open_output(path: Option<&std::path::Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn verify(args: &VerifyArgs) -> i32 {
    let (cfg, warnings) = match SweepConfig::from_args(args) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    for w in warnings {
        eprintln!("warning: {w}");
    }
    let ctx = FieldContext::with_order(cfg.q).expect("validated field order");
    let mut out = match open_output(cfg.out.as_deref()) {
        Ok(o) => o,
        Err(e) => return usage(format!("cannot open output: {e}")),
    };
    let start = Instant::now();
    let opts = cfg.sweep_options();
    let (summary, io_result) = match cfg.format {
        Format::Json => (run_sweep(&ctx, &opts, None), Ok(())),
        Format::Csv => {
            let mut writer = match CsvRecords::new(&mut out, cfg.q) {
                Ok(w) => w,
                Err(e) => return usage(format!("cannot write output: {e}")),
            };
            let mut first_err = None;
            let mut sink = |r: &hql_core::sweep::Record| {
                if first_err.is_none() {
                    if let Err(e) = writer.write(&ctx, r) {
                        first_err = Some(e.to_string());
                    }
                }
            };
            let summary = run_sweep(&ctx, &opts, Some(&mut sink));
            let flushed = writer.finish().map_err(|e| e.to_string());
            (summary, first_err.map_or(flushed, Err))
        }
    };
    let summary = match summary {
        Ok(s) => s,
        Err(e) => return usage(e),
    };
    let report = SpectrumReport::build(&ctx, &cfg, &summary);
    let written = match cfg.format {
        Format::Json => out.write_all(report.to_json().as_bytes()).map_err(|e| e.to_string()),
        Format::Csv => io_result,
    }
    .and_then(|_| out.flush().map_err(|e| e.to_string()));
    if let Err(e) = written {
        eprintln!("error: writing output failed: {e}");
        return EXIT_FAIL;
    }
    eprintln!(
        "{} instances in {:.2?}: {}",
        report.instances,
        start.elapsed(),
        if report.pass { "pass" } else { "FAIL" }
    );
    for (name, sp) in &report.species {
        if !sp.unexpected.is_empty() || sp.complete == Some(false) {
            eprintln!("  {name}: unexpected {:?}, missing {:?}", sp.unexpected, sp.missing);
        }
    }
    for ex in &report.exclusions {
        eprintln!("  exclusion {} violated {} times, e.g. {}", ex.rule, ex.count, ex.witness.join(","));
    }
    if report.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

fn parse_coeffs(ctx: &FieldContext, s: &str) -> Result<QuadricSurfaceQ, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 6 {
        return Err(format!("expected six comma-separated coefficients, got {}", parts.len()));
    }
    let mut c = [Default::default(); 6];
    for (slot, p) in c.iter_mut().zip(&parts) {
        *slot = ctx.parse2(p).map_err(|e| format!("coefficient `{p}`: {e}"))?;
    }
    Ok(QuadricSurfaceQ::new(c))
}

pub fn classify(args: &ClassifyArgs) -> i32 {
    let ctx = match FieldContext::with_order(args.q) {
        Ok(c) => c,
        Err(e) => return usage(e),
    };
    let quadric = match parse_coeffs(&ctx, &args.coeffs) {
        Ok(q) => q,
        Err(e) => return usage(e),
    };
    let oracle = (!args.no_oracle).then(|| oracle_intersection_size(&ctx, &quadric));
    let mut code = EXIT_PASS;
    let report = if classify_q(&ctx, &quadric) == QSpecies::Reducible {
        ClassifyReport::reducible(&ctx, &quadric, oracle)
    } else {
        let mut r = match fast_intersection_size(&ctx, &quadric) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_FAIL;
            }
        };
        r.oracle_size = oracle;
        if oracle.is_some_and(|o| o != r.size_total) {
            eprintln!("error: fast size {} disagrees with oracle size {}", r.size_total, oracle.unwrap());
            code = EXIT_FAIL;
        }
        let q = ctx.q() as u64;
        if r.species == QSpecies::Hyperbolic {
            if r.size_total == ExtremalTarget::Ovoid.size(q) {
                r.ovoid = Some(check_ovoid(&ctx, &quadric).is_ok_and(|c| c.holds()));
            } else if r.size_total == ExtremalTarget::Permutable.size(q) {
                r.permutable = Some(check_permutable(&ctx, &quadric).is_ok_and(|c| c.holds()));
            }
        }
        ClassifyReport::from_intersection(&ctx, &r)
    };
    match args.format {
        TextFormat::Text => print!("{}", report.to_text()),
        TextFormat::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
    }
    code
}

pub fn extremal(args: &ExtremalArgs) -> i32 {
    if !matches!(args.q, 2 | 4) {
        return usage(format!("extremal search supports q in {{2, 4}}, got q = {}", args.q));
    }
    let ctx = FieldContext::with_order(args.q).expect("supported order");
    let target = match args.target {
        Target::Ovoid => ExtremalTarget::Ovoid,
        Target::Permutable => ExtremalTarget::Permutable,
    };
    let witnesses = match find_extremal(&ctx, target, args.limit.max(1)) {
        Ok(w) => w,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    let report = ExtremalReport::new(&ctx, target.name(), target.size(args.q), &witnesses);
    match args.format {
        TextFormat::Text => print!("{}", report.to_text()),
        TextFormat::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
    }
    if witnesses.iter().any(|w| w.verified) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
