//! Seeded random instances and the dual-oracle trial used by `verify` and the
//! acceptance suite. Trial `t` under seed `s` always draws from the ChaCha8
//! stream `t` of seed `s`, so a trial can be replayed on its own.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::connectivity::{components_bfs, connected_bfs, ConditionBWitness, Instance};
use crate::error::Result;
use crate::filter::{Filter, IndexSet};
use crate::product::{ProductPoint, DEFAULT_CAP};
use crate::structure::BinaryStructure;

/// Edge probabilities a random factor is drawn with.
pub const EDGE_PROBABILITIES: [f64; 6] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub max_index: usize,
    pub max_size: usize,
    /// Random tuple pairs checked per trial.
    pub pairs: usize,
    pub cap: u128,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { max_index: 4, max_size: 4, pairs: 12, cap: DEFAULT_CAP }
    }
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn random_structure(rng: &mut impl Rng, size: usize, edge_probability: f64) -> BinaryStructure {
    let edges: Vec<(usize, usize)> = (0..size)
        .flat_map(|u| (0..size).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(edge_probability))
        .collect();
    BinaryStructure::new(size, edges).expect("size is positive and edges in range")
}

/// Up to three random generators, redrawn until they meet in a nonempty kernel.
pub fn random_filter(rng: &mut impl Rng, index_size: usize) -> Filter {
    loop {
        let count = rng.gen_range(1..=3);
        let generators: Vec<IndexSet> = (0..count)
            .map(|_| (0..index_size).filter(|_| rng.gen_bool(0.7)).collect())
            .collect();
        if let Ok(f) = Filter::new(index_size, generators) {
            return f;
        }
    }
}

#[derive(Debug, Clone)]
pub struct RandomInstance {
    pub factors: Vec<BinaryStructure>,
    pub filter: Filter,
}

pub fn random_factors(rng: &mut impl Rng, max_index: usize, max_size: usize) -> Vec<BinaryStructure> {
    let index_size = rng.gen_range(1..=max_index);
    (0..index_size)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            let p = *EDGE_PROBABILITIES.choose(rng).expect("nonempty");
            random_structure(rng, size, p)
        })
        .collect()
}

pub fn random_instance(rng: &mut impl Rng, max_index: usize, max_size: usize) -> RandomInstance {
    let factors = random_factors(rng, max_index, max_size);
    let filter = random_filter(rng, factors.len());
    RandomInstance { factors, filter }
}

pub fn random_point(rng: &mut impl Rng, factors: &[BinaryStructure]) -> ProductPoint {
    ProductPoint(factors.iter().map(|f| rng.gen_range(0..f.size())).collect())
}

/// Outcome of comparing both oracles on one random instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub trial: u64,
    pub index_size: usize,
    pub classes: usize,
    pub bfs_connected: bool,
    pub condition_b: Option<ConditionBWitness>,
    pub connectivity_agree: bool,
    pub components: usize,
    pub components_agree: bool,
    pub pairs: usize,
    /// Pairs where the criterion, the BFS components and witness presence all agree.
    pub pairs_agree: usize,
    pub witnesses: usize,
    pub witnesses_valid: usize,
}

impl TrialOutcome {
    pub fn passed(&self) -> bool {
        self.connectivity_agree
            && self.components_agree
            && self.pairs_agree == self.pairs
            && self.witnesses_valid == self.witnesses
    }
}

pub fn run_trial(seed: u64, trial: u64, config: &FuzzConfig) -> Result<TrialOutcome> {
    let mut rng = trial_rng(seed, trial);
    let inst = random_instance(&mut rng, config.max_index, config.max_size);
    let instance = Instance::new(&inst.factors, &inst.filter)?;
    let rp = instance.build_product(config.cap)?;

    let bfs_connected = connected_bfs(&rp);
    let condition_b = instance.condition_b();
    let bfs_components = components_bfs(&rp);
    let criterion_components = instance.components_criterion(&rp)?;
    let mut component_of = vec![0usize; rp.class_count()];
    for (k, members) in bfs_components.iter().enumerate() {
        for &c in members {
            component_of[c] = k;
        }
    }

    let (mut pairs_agree, mut witnesses, mut witnesses_valid) = (0, 0, 0);
    for _ in 0..config.pairs {
        let x = random_point(&mut rng, &inst.factors);
        let y = random_point(&mut rng, &inst.factors);
        let same = component_of[rp.class_of(&x)?] == component_of[rp.class_of(&y)?];
        let criterion = instance.connected_criterion(&x, &y)?;
        let witness = instance.build_path_witness(&x, &y)?;
        if criterion == same && witness.is_some() == criterion {
            pairs_agree += 1;
        }
        if let Some(w) = witness {
            witnesses += 1;
            if instance.witness_validates(&w) && w.start == x && w.target == y {
                witnesses_valid += 1;
            }
        }
    }

    Ok(TrialOutcome {
        trial,
        index_size: inst.factors.len(),
        classes: rp.class_count(),
        bfs_connected,
        connectivity_agree: bfs_connected == condition_b.is_some(),
        condition_b,
        components: bfs_components.len(),
        components_agree: bfs_components == criterion_components,
        pairs: config.pairs,
        pairs_agree,
        witnesses,
        witnesses_valid,
    })
}
