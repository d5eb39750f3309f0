use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use hql_core::field::FieldContext;
use hql_core::intersect::{Family, QSpecies};
use hql_core::sweep::{OraclePolicy, SweepMode, SweepOptions};

use crate::args::{Format, Mode, VerifyArgs};

/// `--oracle` value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleArg(pub OraclePolicy);

impl FromStr for OracleArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let policy = match s {
            "all" => OraclePolicy::All,
            "off" => OraclePolicy::Off,
            _ => {
                let n = s
                    .strip_prefix("sample:")
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| format!("expected all, off or sample:N, got `{s}`"))?;
                OraclePolicy::Sample(n)
            }
        };
        Ok(OracleArg(policy))
    }
}

pub fn oracle_label(p: OraclePolicy) -> String {
    match p {
        OraclePolicy::All => "all".into(),
        OraclePolicy::Off => "off".into(),
        OraclePolicy::Sample(n) => format!("sample:{n}"),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigError {
    Field(String),
    Unsupported { q: u64, mode: &'static str },
    Infeasible(u64),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Field(e) => write!(f, "{e}"),
            ConfigError::Unsupported { q, mode } => {
                write!(f, "{mode} mode supports q in {{2, 4, 8}}, got q = {q}; use --mode random")
            }
            ConfigError::Infeasible(q) => write!(
                f,
                "exhaustive sweep at q = {q} with the oracle on every instance is infeasible; \
                 use --oracle sample:N or --oracle off, or --mode normalized / --mode random"
            ),
        }
    }
}

impl std::error::Error for ConfigError {}

/// A validated sweep request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub q: u64,
    pub mode: Mode,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub oracle: OraclePolicy,
    pub families: Vec<Family>,
    pub per_head: Option<u64>,
    pub extremal_checks: bool,
}

impl SweepConfig {
    /// Validates the arguments; the second value lists warnings for stderr.
    pub fn from_args(args: &VerifyArgs) -> Result<(SweepConfig, Vec<String>), ConfigError> {
        let q = args.q;
        FieldContext::with_order(q).map_err(|e| ConfigError::Field(e.to_string()))?;
        let mut warnings = Vec::new();
        let oracle =
            args.oracle.map(|o| o.0).unwrap_or(if q == 2 { OraclePolicy::All } else { OraclePolicy::Sample(10_000) });
        match args.mode {
            Mode::Exhaustive | Mode::Normalized if q > 8 => {
                let mode = if args.mode == Mode::Exhaustive { "exhaustive" } else { "normalized" };
                return Err(ConfigError::Unsupported { q, mode });
            }
            Mode::Exhaustive if q > 4 && oracle == OraclePolicy::All => {
                return Err(ConfigError::Infeasible(q));
            }
            Mode::Exhaustive if q > 4 => {
                warnings.push(format!("exhaustive sweep at q = {q} visits {} tuples", (q * q).pow(6)));
            }
            Mode::Random if q > 8 => warnings.push(format!("q = {q} is beyond the tested range")),
            _ => {}
        }
        let families = if args.families.is_empty() { Family::ALL.to_vec() } else { args.families.clone() };
        let per_head = args.per_head.or(if q > 4 { Some(64) } else { None });
        let cfg = SweepConfig {
            q,
            mode: args.mode,
            samples: args.samples,
            seed: args.seed,
            workers: args.workers,
            out: args.out.clone(),
            format: args.format,
            oracle,
            families,
            per_head,
            extremal_checks: args.extremal_checks,
        };
        Ok((cfg, warnings))
    }

    pub fn sweep_options(&self) -> SweepOptions {
        let mode = match self.mode {
            Mode::Exhaustive => SweepMode::Exhaustive,
            Mode::Random => SweepMode::Random { samples: self.samples, seed: self.seed },
            Mode::Normalized => {
                SweepMode::Normalized { families: self.families.clone(), per_head: self.per_head, seed: self.seed }
            }
        };
        SweepOptions { mode, oracle: self.oracle, workers: self.workers, extremal_checks: self.extremal_checks }
    }

    pub fn mode_name(&self) -> &'static str {
        match self.mode {
            Mode::Exhaustive => "exhaustive",
            Mode::Random => "random",
            Mode::Normalized => "normalized",
        }
    }

    /// Species the sweep can reach.
    pub fn species_in_scope(&self) -> Vec<QSpecies> {
        let all = [QSpecies::Elliptic, QSpecies::Cone, QSpecies::Hyperbolic];
        match self.mode {
            Mode::Normalized => all.into_iter().filter(|s| self.families.iter().any(|f| f.species() == *s)).collect(),
            _ => all.to_vec(),
        }
    }

    /// Whether every expected size of `species` must be observed.
    pub fn completeness_required(&self, species: QSpecies) -> bool {
        match self.mode {
            Mode::Exhaustive => true,
            Mode::Random => false,
            Mode::Normalized => {
                self.per_head.is_none()
                    && Family::ALL.iter().filter(|f| f.species() == species).all(|f| self.families.contains(f))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(q: u64, mode: Mode) -> VerifyArgs {
        VerifyArgs {
            q,
            mode,
            samples: 10,
            seed: 0,
            workers: 1,
            out: None,
            format: Format::Json,
            oracle: None,
            families: vec![],
            per_head: None,
            extremal_checks: false,
        }
    }

    #[test]
    fn oracle_values() {
        assert_eq!("all".parse::<OracleArg>().unwrap().0, OraclePolicy::All);
        assert_eq!("sample:25".parse::<OracleArg>().unwrap().0, OraclePolicy::Sample(25));
        assert!("sample:x".parse::<OracleArg>().is_err());
        assert_eq!(oracle_label(OraclePolicy::Sample(3)), "sample:3");
    }

    #[test]
    fn defaults_depend_on_q() {
        let (c, _) = SweepConfig::from_args(&args(2, Mode::Exhaustive)).unwrap();
        assert_eq!(c.oracle, OraclePolicy::All);
        let (c, _) = SweepConfig::from_args(&args(8, Mode::Normalized)).unwrap();
        assert_eq!(c.per_head, Some(64));
        assert_eq!(c.oracle, OraclePolicy::Sample(10_000));
    }

    #[test]
    fn refusals() {
        let mut a = args(8, Mode::Exhaustive);
        a.oracle = Some(OracleArg(OraclePolicy::All));
        assert_eq!(SweepConfig::from_args(&a).unwrap_err(), ConfigError::Infeasible(8));
        assert!(SweepConfig::from_args(&args(6, Mode::Random)).is_err());
        assert!(SweepConfig::from_args(&args(16, Mode::Normalized)).is_err());
        let (_, warnings) = SweepConfig::from_args(&args(16, Mode::Random)).unwrap();
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn completeness_scope() {
        let mut a = args(4, Mode::Normalized);
        a.families = vec![Family::ConePoint, Family::ConeLine, Family::HypLine];
        let (c, _) = SweepConfig::from_args(&a).unwrap();
        assert_eq!(c.species_in_scope(), vec![QSpecies::Cone, QSpecies::Hyperbolic]);
        assert!(c.completeness_required(QSpecies::Cone));
        assert!(!c.completeness_required(QSpecies::Hyperbolic));
    }
}
