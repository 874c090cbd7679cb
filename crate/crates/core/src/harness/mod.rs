//! Seeded property campaigns.
//!
//! Every campaign checks a proven statement on random instances, so a
//! failure is a defect in this library, not evidence about the mathematics.
//! Each trial draws from its own generator seeded by `(seed, trial index)`;
//! a failure records that trial seed and can be replayed on its own with
//! [`replay`].

mod campaigns;
pub mod fixtures;
mod induced;
pub mod random;

use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

pub use induced::verify_induced_pair;

pub const REFUTATION_NOTE: &str =
    "refutation-style: the checked statements are proven, so any failure indicates a defect in the implementation";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_word_len: usize,
    pub max_rank: usize,
    pub radius: usize,
    pub max_iter: usize,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            seed: 0,
            trials: 100,
            max_word_len: 5,
            max_rank: 3,
            radius: 6,
            max_iter: 8,
        }
    }
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("trials", self.trials),
            ("max_word_len", self.max_word_len),
            ("radius", self.radius),
            ("max_iter", self.max_iter),
        ];
        for (name, v) in fields {
            if v == 0 {
                return Err(Error::Unsupported(format!("{name} must be positive")));
            }
        }
        if self.max_rank < 2 {
            return Err(Error::Unsupported("max_rank must be at least 2".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub trial: usize,
    pub trial_seed: u64,
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CampaignStatus {
    Pass,
    Fail,
}

impl CampaignStatus {
    pub fn code(self) -> &'static str {
        match self {
            CampaignStatus::Pass => "pass",
            CampaignStatus::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignReport {
    pub property: String,
    pub config: TrialConfig,
    pub trials_run: usize,
    pub failures: Vec<Failure>,
    pub status: CampaignStatus,
    pub note: &'static str,
}

/// A failed trial: a description of the instance and what went wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFailure {
    pub instance: String,
    pub detail: String,
}

pub type TrialResult = std::result::Result<(), TrialFailure>;
pub type Trial = fn(&mut ChaCha8Rng, &TrialConfig) -> TrialResult;

/// Registered campaigns by name.
const CAMPAIGNS: &[(&str, Trial)] = &[
    ("fold-confluence", campaigns::fold_confluence),
    ("membership-oracle", campaigns::membership_oracle),
    ("intersection-membership", campaigns::intersection_membership),
    ("hanna-neumann", campaigns::hanna_neumann),
    ("inertness-rank2", campaigns::inertness_rank2),
    ("rank-two-trichotomy", campaigns::rank_two_trichotomy),
    ("restriction-identity", campaigns::restriction_identity),
    ("sd-invariants", campaigns::sd_invariants),
    ("retract-stabilization", campaigns::retract_stabilization),
    ("equaliser-oracle", campaigns::equaliser_oracle),
];

/// Alternative campaign names accepted on the command line.
const ALIASES: &[(&str, &str)] = &[
    ("theoremA", "rank-two-trichotomy"),
    ("appendixA-restriction", "restriction-identity"),
];

/// Canonical names of all registered campaigns.
pub fn properties() -> Vec<&'static str> {
    CAMPAIGNS.iter().map(|(n, _)| *n).collect()
}

fn lookup(name: &str) -> Result<Trial> {
    let canonical = ALIASES
        .iter()
        .find(|(alias, _)| *alias == name)
        .map_or(name, |(_, c)| *c);
    CAMPAIGNS
        .iter()
        .find(|(n, _)| *n == canonical)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::UnknownProperty(name.to_string()))
}

/// Seed for trial `index`, mixed with splitmix64 so neighbouring trials
/// draw unrelated streams.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    let mut z = seed ^ (index as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn run_trial(trial: Trial, seed: u64, cfg: &TrialConfig) -> TrialResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match catch_unwind(AssertUnwindSafe(|| trial(&mut rng, cfg))) {
        Ok(r) => r,
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(TrialFailure {
                instance: "(panicked before describing the instance)".into(),
                detail: format!("panic: {msg}"),
            })
        }
    }
}

/// Runs `cfg.trials` trials of the named campaign in parallel and merges
/// the results in trial order.
pub fn run_campaign(property: &str, cfg: &TrialConfig) -> Result<CampaignReport> {
    cfg.validate()?;
    let trial = lookup(property)?;
    Ok(run_custom(property, cfg, trial))
}

/// Re-runs a single trial from its recorded seed.
pub fn replay(property: &str, trial_seed: u64, cfg: &TrialConfig) -> Result<Option<TrialFailure>> {
    let trial = lookup(property)?;
    Ok(replay_trial(trial, trial_seed, cfg))
}

/// Re-runs one trial of an arbitrary trial function.
pub fn replay_trial(trial: Trial, trial_seed: u64, cfg: &TrialConfig) -> Option<TrialFailure> {
    run_trial(trial, trial_seed, cfg).err()
}

/// Runs an arbitrary trial function as a campaign.
pub fn run_custom(property: &str, cfg: &TrialConfig, trial: Trial) -> CampaignReport {
    let failures: Vec<Failure> = (0..cfg.trials)
        .into_par_iter()
        .filter_map(|i| {
            let seed = trial_seed(cfg.seed, i);
            run_trial(trial, seed, cfg).err().map(|f| Failure {
                trial: i,
                trial_seed: seed,
                instance: f.instance,
                detail: f.detail,
            })
        })
        .collect();
    let status = if failures.is_empty() {
        CampaignStatus::Pass
    } else {
        CampaignStatus::Fail
    };
    CampaignReport {
        property: property.to_string(),
        config: *cfg,
        trials_run: cfg.trials,
        failures,
        status,
        note: REFUTATION_NOTE,
    }
}
