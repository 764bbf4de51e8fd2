//! Seeded random instances, the theorem battery, and counterexample
//! search.
//!
//! The battery re-verifies the instance-checkable results on streams of
//! generated finite spaces, weights, maps, nets and ball chains. Every
//! check is exact: tolerance zero everywhere, no floating point. A
//! failure always carries a replayable witness — the check id, the
//! trial index and the serialized instance — and the per-trial
//! generator streams are derived from `seed` and the trial index, so
//! trials can run in parallel (or be re-run alone) without changing
//! anything.

mod battery;
pub mod gen;
pub mod oracles;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown check or search target {0:?}")]
    UnknownTarget(String),
    #[error("config: {0}")]
    BadConfig(String),
}

/// The battery checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CheckId {
    /// `ΩΣ(X,d) = (X,d)`.
    B1,
    /// Yoneda lemma, `d̄(d(−,x), φ) = φ(x)`.
    B2,
    /// `is_flat` agrees with the definitional oracles.
    B3,
    /// Net weights are flat with the net's Yoneda limits as colimits.
    B4,
    /// Scott distance = Alexandroff distance on finite spaces.
    B5,
    /// Sandwich chain and topology equalities.
    B6,
    /// Contraction for Σ iff Yoneda continuous.
    B7,
    /// Kan extension is left adjoint to precomposition.
    B8,
    /// Generated tables satisfy (A1)–(A4); `ι(ω(T)) = T`.
    B9,
    /// Compact iff `r ⊖ d(b,−)` is always a Scott weight.
    B10,
    /// Basis formula matches the finite Scott distance.
    B11,
    /// Condition (S) instances.
    B12,
}

impl CheckId {
    pub const ALL: [CheckId; 12] = [
        CheckId::B1,
        CheckId::B2,
        CheckId::B3,
        CheckId::B4,
        CheckId::B5,
        CheckId::B6,
        CheckId::B7,
        CheckId::B8,
        CheckId::B9,
        CheckId::B10,
        CheckId::B11,
        CheckId::B12,
    ];

    pub fn index(&self) -> usize {
        Self::ALL.iter().position(|c| c == self).expect("listed")
    }

    pub fn parse(s: &str) -> Option<CheckId> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.to_string().eq_ignore_ascii_case(s))
    }

    pub fn describe(&self) -> &'static str {
        match self {
            CheckId::B1 => "specialization of the Scott distance recovers the metric",
            CheckId::B2 => "Yoneda lemma",
            CheckId::B3 => "flatness criterion agrees with the definitional oracles",
            CheckId::B4 => "net weights are flat and colimit at the Yoneda limits",
            CheckId::B5 => "Scott distance collapses to the Alexandroff distance",
            CheckId::B6 => "d-Scott = c-Scott = generalized Scott = open-ball coreflection",
            CheckId::B7 => "Σ-contraction iff Yoneda continuous",
            CheckId::B8 => "Kan extension is left adjoint to precomposition",
            CheckId::B9 => "generated tables satisfy the distance axioms",
            CheckId::B10 => "compactness via Scott-weight cones",
            CheckId::B11 => "compact-basis formula equals the finite Scott distance",
            CheckId::B12 => "condition (S) instances",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}", self.index() + 1)
    }
}

/// Battery configuration. The same config always produces the same
/// instance stream.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialConfig {
    pub seed: u64,
    pub trials: u32,
    /// Generated spaces have at most this many points (hard cap 6).
    pub max_points: usize,
    /// Checks to run; defaults to all twelve.
    pub checks: BTreeSet<CheckId>,
    /// Denominators of the space value grid.
    pub grid_denominators: Vec<u64>,
    /// Largest numerator of the space value grid.
    pub grid_max_numerator: u64,
}

impl TrialConfig {
    pub fn new(seed: u64, trials: u32) -> TrialConfig {
        TrialConfig {
            seed,
            trials,
            max_points: 6,
            checks: CheckId::ALL.into_iter().collect(),
            grid_denominators: vec![1, 2, 3, 4],
            grid_max_numerator: 32,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.max_points == 0 || self.max_points > 6 {
            return Err(HarnessError::BadConfig(
                "max_points must be between 1 and 6".into(),
            ));
        }
        if self.trials == 0 {
            return Err(HarnessError::BadConfig("trials must be positive".into()));
        }
        if self.grid_denominators.is_empty() || self.grid_denominators.contains(&0) {
            return Err(HarnessError::BadConfig(
                "grid denominators must be positive".into(),
            ));
        }
        if self.checks.is_empty() {
            return Err(HarnessError::BadConfig("no checks selected".into()));
        }
        Ok(())
    }
}

/// A replayable failure: the check, the trial whose generator stream
/// produced the instance, the broken equation, and the instance itself.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    pub check: CheckId,
    pub trial: u32,
    pub locus: String,
    pub instance: serde_json::Value,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CheckStats {
    pub trials: u32,
    pub failures: u32,
    /// First few witnesses; every failure is counted above.
    pub witnesses: Vec<Witness>,
}

const WITNESS_CAP: usize = 4;

impl CheckStats {
    // Merging keeps every witness; the battery sorts by trial and caps
    // once at the end so the parallel reduction order cannot leak into
    // the report body.
    fn merge(mut self, other: CheckStats) -> CheckStats {
        self.trials += other.trials;
        self.failures += other.failures;
        self.witnesses.extend(other.witnesses);
        self
    }

    fn finalize(mut self) -> CheckStats {
        self.witnesses.sort_by_key(|w| w.trial);
        self.witnesses.truncate(WITNESS_CAP);
        self
    }
}

/// Battery outcome. The body (everything except `wall_ms`) is a pure
/// function of the config.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    pub trials: u32,
    pub max_points: usize,
    pub checks: BTreeMap<String, CheckStats>,
    pub wall_ms: u128,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.checks.values().all(|s| s.failures == 0)
    }

    pub fn total_failures(&self) -> u32 {
        self.checks.values().map(|s| s.failures).sum()
    }

    /// The deterministic part, for byte-identical comparison.
    pub fn body_json(&self) -> serde_json::Value {
        serde_json::json!({
            "seed": self.seed,
            "trials": self.trials,
            "max_points": self.max_points,
            "checks": self.checks,
        })
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.checks.values().flat_map(|s| s.witnesses.iter())
    }
}

/// Runs the battery. Trials execute in parallel; the merge is
/// associative and the per-trial streams depend only on `(seed,
/// trial, check)`, so parallelism cannot change the report body.
pub fn run_battery(config: &TrialConfig) -> Result<Report, HarnessError> {
    config.validate()?;
    let start = Instant::now();
    let per_trial = |trial: u32| -> BTreeMap<CheckId, CheckStats> {
        config
            .checks
            .iter()
            .map(|&check| {
                let mut stats = CheckStats {
                    trials: 1,
                    ..CheckStats::default()
                };
                if let Err((locus, instance)) = run_check_caught(config, trial, check) {
                    stats.failures = 1;
                    stats.witnesses.push(Witness {
                        check,
                        trial,
                        locus,
                        instance,
                    });
                }
                (check, stats)
            })
            .collect()
    };
    let merged = (0..config.trials)
        .into_par_iter()
        .map(per_trial)
        .reduce(BTreeMap::new, |mut acc, one| {
            for (check, stats) in one {
                let entry = acc.remove(&check).unwrap_or_default();
                acc.insert(check, entry.merge(stats));
            }
            acc
        });
    Ok(Report {
        seed: config.seed,
        trials: config.trials,
        max_points: config.max_points,
        checks: merged
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.finalize()))
            .collect(),
        wall_ms: start.elapsed().as_millis(),
    })
}

// Failures are report content, never harness crashes: a check that
// panics (which the seeded mutations can force deep inside a generator
// invariant) is recorded as a failure with the panic message as locus.
fn run_check_caught(
    config: &TrialConfig,
    trial: u32,
    check: CheckId,
) -> Result<(), (String, serde_json::Value)> {
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        battery::run_check(config, trial, check)
    }));
    match outcome {
        Ok(result) => result,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "opaque panic".to_string());
            Err((format!("panicked: {message}"), serde_json::Value::Null))
        }
    }
}

/// Re-runs the check that produced a witness; true when the failure
/// reproduces.
pub fn replay(config: &TrialConfig, witness: &Witness) -> bool {
    run_check_caught(config, witness.trial, witness.check).is_err()
}

/// Search targets: any battery check, or the open question whether the
/// c-Scott and generalized Scott topologies can differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchTarget {
    Check(CheckId),
    CScottVsGenScott,
}

impl SearchTarget {
    pub fn parse(s: &str) -> Result<SearchTarget, HarnessError> {
        if let Some(check) = CheckId::parse(s) {
            return Ok(SearchTarget::Check(check));
        }
        let lowered = s.to_ascii_lowercase();
        if ["cscott!=genscott", "cscott≠genscott", "c-scott-vs-gen-scott"]
            .contains(&lowered.as_str())
        {
            return Ok(SearchTarget::CScottVsGenScott);
        }
        Err(HarnessError::UnknownTarget(s.to_string()))
    }
}

impl fmt::Display for SearchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchTarget::Check(c) => write!(f, "{c}"),
            SearchTarget::CScottVsGenScott => write!(f, "c-scott-vs-gen-scott"),
        }
    }
}

/// Search outcome: either a witness within the budget, or an explicit
/// "no witness within budget" (never a nonexistence claim).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchReport {
    pub target: String,
    pub examined: u32,
    pub witness: Option<Witness>,
    pub wall_ms: u128,
}

/// Budget-bounded search for a counterexample to the target.
pub fn search_counterexample(
    target: SearchTarget,
    config: &TrialConfig,
) -> Result<SearchReport, HarnessError> {
    config.validate()?;
    let start = Instant::now();
    let mut witness = None;
    let mut examined = 0;
    for trial in 0..config.trials {
        examined += 1;
        let outcome = match target {
            SearchTarget::Check(check) => battery::run_check(config, trial, check)
                .err()
                .map(|(locus, instance)| Witness {
                    check,
                    trial,
                    locus,
                    instance,
                }),
            SearchTarget::CScottVsGenScott => battery::c_scott_vs_gen_scott(config, trial)
                .err()
                .map(|(locus, instance)| Witness {
                    check: CheckId::B6,
                    trial,
                    locus,
                    instance,
                }),
        };
        if let Some(w) = outcome {
            witness = Some(w);
            break;
        }
    }
    Ok(SearchReport {
        target: target.to_string(),
        examined,
        witness,
        wall_ms: start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_passes_on_a_short_run() {
        let config = TrialConfig::new(42, 25);
        let report = run_battery(&config).unwrap();
        assert!(report.ok(), "failures: {:#?}", report.checks);
        assert_eq!(report.total_failures(), 0);
    }

    #[test]
    fn reports_are_deterministic() {
        let config = TrialConfig::new(7, 10);
        let a = run_battery(&config).unwrap();
        let b = run_battery(&config).unwrap();
        assert_eq!(a.body_json(), b.body_json());
    }

    #[test]
    fn generated_spaces_pass_their_own_checks() {
        use rand::SeedableRng;
        let config = TrialConfig::new(3, 1);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let space = gen::gen_space(&config, &mut rng);
            assert!(space.check_metric_axioms().ok());
            assert!(space.len() <= config.max_points);
        }
    }

    #[test]
    fn generation_is_deterministic() {
        use rand::SeedableRng;
        let config = TrialConfig::new(11, 1);
        let mut r1 = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut r2 = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            assert_eq!(*gen::gen_space(&config, &mut r1), *gen::gen_space(&config, &mut r2));
        }
    }

    #[test]
    fn search_targets_parse() {
        assert_eq!(
            SearchTarget::parse("B6").unwrap(),
            SearchTarget::Check(CheckId::B6)
        );
        assert_eq!(
            SearchTarget::parse("cScott!=genScott").unwrap(),
            SearchTarget::CScottVsGenScott
        );
        assert!(SearchTarget::parse("B13").is_err());
    }

    #[test]
    fn search_finds_nothing_on_finite_spaces() {
        let config = TrialConfig::new(5, 20);
        let report =
            search_counterexample(SearchTarget::CScottVsGenScott, &config).unwrap();
        assert!(report.witness.is_none());
        assert_eq!(report.examined, 20);

        let report =
            search_counterexample(SearchTarget::Check(CheckId::B6), &config).unwrap();
        assert!(report.witness.is_none());
    }
}
