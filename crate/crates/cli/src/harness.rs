//! Seeded preservation trials for the `preserve` command and the acceptance
//! suite. Trial `t` draws its instance from stream `t` of the seed.

use redprod::formula::{check_horn_preservation, check_positive_factor_preservation, is_horn, is_positive, Formula};
use redprod::fuzz::{random_factors, random_filter, random_point, trial_rng};
use redprod::ProductPoint;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HarnessConfig {
    pub trials: u64,
    pub max_index: usize,
    pub max_size: usize,
    pub cap: u128,
}

/// Tally of one harness over all trials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub trials: u64,
    /// Trials where the hypothesis side held (the check had teeth).
    pub hypothesis_held: u64,
    pub product_satisfied: u64,
    pub violations: u64,
    pub violating_trials: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservationRun {
    pub formula: String,
    pub free_variables: usize,
    pub horn: bool,
    pub positive: bool,
    pub sentence: bool,
    pub horn_tally: Option<Tally>,
    pub positive_tally: Option<Tally>,
}

impl PreservationRun {
    pub fn violations(&self) -> u64 {
        self.horn_tally.iter().chain(&self.positive_tally).map(|t| t.violations).sum()
    }
}

/// Runs every harness the formula qualifies for: the reduced-product harness
/// for Horn formulas and the reduced-factor harness for positive sentences.
pub fn run_preservation(f: &Formula, seed: u64, cfg: &HarnessConfig) -> Result<PreservationRun, CliError> {
    let (horn, positive, sentence) = (is_horn(f), is_positive(f), f.is_sentence());
    if !horn && !(positive && sentence) {
        return Err(CliError::Usage(format!(
            "`{f}` is neither a Horn formula nor a positive sentence, no preservation harness applies"
        )));
    }
    let free = f.free_var_count();
    let mut horn_tally = horn.then(Tally::default);
    let mut positive_tally = (positive && sentence).then(Tally::default);
    for t in 0..cfg.trials {
        let mut rng = trial_rng(seed, t);
        let factors = random_factors(&mut rng, cfg.max_index, cfg.max_size);
        let filter = random_filter(&mut rng, factors.len());
        if let Some(tally) = horn_tally.as_mut() {
            let points: Vec<ProductPoint> = (0..free).map(|_| random_point(&mut rng, &factors)).collect();
            let v = check_horn_preservation(&factors, &filter, f, &points, cfg.cap)?;
            tally.record(t, v.hypothesis_in_filter, v.product_satisfies, v.violated);
        }
        if let Some(tally) = positive_tally.as_mut() {
            let v = check_positive_factor_preservation(&factors, &filter, f, cfg.cap)?;
            tally.record(t, v.product_satisfies, v.factor_set_in_filter, v.violated);
        }
    }
    Ok(PreservationRun {
        formula: f.to_string(),
        free_variables: free,
        horn,
        positive,
        sentence,
        horn_tally,
        positive_tally,
    })
}

impl Tally {
    fn record(&mut self, trial: u64, hypothesis: bool, product: bool, violated: bool) {
        self.trials += 1;
        self.hypothesis_held += u64::from(hypothesis);
        self.product_satisfied += u64::from(product);
        if violated {
            self.violations += 1;
            self.violating_trials.push(trial);
        }
    }
}
