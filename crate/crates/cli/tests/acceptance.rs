//! Acceptance suite. Runs every criterion at its stated scale and prints one
//! PASS/FAIL line per criterion; exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use rand::Rng;
use redprod::connectivity::{connected_bfs, Instance};
use redprod::filter::IndexSet;
use redprod::formula::{conn_sentence, dist_formula, is_horn, is_positive, Formula};
use redprod::fuzz::{random_factors, random_instance, random_structure, trial_rng, FuzzConfig, EDGE_PROBABILITIES};
use redprod::product::restrict_iso;
use redprod::symbolic::{
    frechet_disconnection_witness, gdist, remark_b_prime_check, symbolic_connected, truncation_check, DiameterProfile,
    SymbolicFilter, SymbolicSequence,
};
use redprod::{BinaryStructure, Filter, ProductPoint, ReducedProduct};
use redprod_cli::commands::verify;
use redprod_cli::harness::{run_preservation, HarnessConfig};

const CORPUS_SEED: u64 = 20_240_917;
const CORPUS_TRIALS: u64 = 1000;
const CAP: u128 = 1_000_000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, a: usize) -> usize {
        let mut r = a;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut a = a;
        while self.0[a] != r {
            let next = self.0[a];
            self.0[a] = r;
            a = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

fn all_tuples(factors: &[BinaryStructure]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for f in factors {
        out = out.into_iter().flat_map(|t| (0..f.size()).map(move |v| [t.clone(), vec![v]].concat())).collect();
    }
    out
}

/// Kernel of the filter as a bitmask, recomputed from the generators: a set
/// is in the generated filter iff it contains their intersection.
fn kernel_mask(filter: &Filter) -> u32 {
    filter.generators().iter().fold(u32::MAX, |acc, g| acc & g.iter().fold(0, |m, &i| m | 1 << i))
}

/// Components of the reduced product straight from the definitions, over raw
/// tuples: two tuples are joined when they agree on a filter set or are
/// related (reflexively) on a filter set. Returns the component label of
/// every tuple, normalized to first occurrence.
fn brute_tuple_components(factors: &[BinaryStructure], filter: &Filter) -> (Vec<Vec<usize>>, Vec<usize>) {
    let tuples = all_tuples(factors);
    let kernel = kernel_mask(filter);
    let member = |set: u32| set & kernel == kernel;
    let n = tuples.len();
    let mut uf = UnionFind::new(n);
    for a in 0..n {
        for b in a + 1..n {
            let (x, y) = (&tuples[a], &tuples[b]);
            let (mut agree, mut forward, mut backward) = (0u32, 0u32, 0u32);
            for (i, f) in factors.iter().enumerate() {
                agree |= u32::from(x[i] == y[i]) << i;
                forward |= u32::from(x[i] == y[i] || f.relates(x[i], y[i])) << i;
                backward |= u32::from(x[i] == y[i] || f.relates(y[i], x[i])) << i;
            }
            if member(agree) || member(forward) || member(backward) {
                uf.union(a, b);
            }
        }
    }
    let mut names = BTreeMap::new();
    let labels = (0..n)
        .map(|t| {
            let r = uf.find(t);
            let next = names.len();
            *names.entry(r).or_insert(next)
        })
        .collect();
    (tuples, labels)
}

/// Partition of classes induced by the brute tuple components.
fn brute_class_partition(rp: &ReducedProduct, factors: &[BinaryStructure], filter: &Filter) -> BTreeSet<BTreeSet<usize>> {
    let (tuples, labels) = brute_tuple_components(factors, filter);
    let mut groups: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (t, l) in tuples.iter().zip(labels) {
        groups.entry(l).or_default().insert(rp.class_of(&ProductPoint(t.clone())).unwrap());
    }
    groups.into_values().collect()
}

fn as_partition(groups: &[Vec<usize>]) -> BTreeSet<BTreeSet<usize>> {
    groups.iter().map(|g| g.iter().copied().collect()).collect()
}

/// Criteria 1 to 3 share one corpus.
fn corpus_criteria() -> [Outcome; 3] {
    let cfg = FuzzConfig { max_index: 4, max_size: 4, pairs: 12, cap: CAP };
    let start = Instant::now();
    let run = verify(CORPUS_SEED, CORPUS_TRIALS, &cfg).expect("corpus runs");
    let secs = start.elapsed().as_secs_f64();

    // independent oracle straight from the definitions
    let mut brute_connectivity = 0u64;
    let mut brute_partition = 0u64;
    for t in 0..CORPUS_TRIALS {
        let inst = random_instance(&mut trial_rng(CORPUS_SEED, t), cfg.max_index, cfg.max_size);
        let factors: Vec<BinaryStructure> = inst.factors.iter().map(|f| f.reflexivize()).collect();
        let rp = ReducedProduct::build(&inst.factors, &inst.filter).unwrap();
        let instance = Instance::new(&inst.factors, &inst.filter).unwrap();
        let brute = brute_class_partition(&rp, &factors, &inst.filter);
        if (brute.len() == 1) == instance.condition_b().is_some() {
            brute_connectivity += 1;
        }
        if brute == as_partition(&instance.components_criterion(&rp).unwrap()) {
            brute_partition += 1;
        }
    }

    let c1 = outcome(
        run.connectivity_agree == CORPUS_TRIALS && brute_connectivity == CORPUS_TRIALS && secs < 60.0,
        format!(
            "connected_bfs vs condition (b): {}/{} instances, definitional oracle {}/{}, corpus time {secs:.1}s (< 60s)",
            run.connectivity_agree, CORPUS_TRIALS, brute_connectivity, CORPUS_TRIALS
        ),
    );
    let c2 = outcome(
        run.components_agree == CORPUS_TRIALS && brute_partition == CORPUS_TRIALS,
        format!(
            "components_criterion = components_bfs: {}/{} instances, definitional oracle {}/{}",
            run.components_agree, CORPUS_TRIALS, brute_partition, CORPUS_TRIALS
        ),
    );
    let c3 = outcome(
        run.pairs >= 10_000 && run.pairs_agree == run.pairs && run.witnesses_valid == run.witnesses,
        format!(
            "witness present iff criterion holds: {}/{} pairs; validating witnesses {}/{}",
            run.pairs_agree, run.pairs, run.witnesses_valid, run.witnesses
        ),
    );
    [c1, c2, c3]
}

fn criterion_4() -> Outcome {
    let seed = 4_004;
    let trials = 250;
    let mut ok = 0;
    for t in 0..trials {
        let mut rng = trial_rng(seed, t);
        let inst = random_instance(&mut rng, 4, 4);
        let rp = ReducedProduct::build(&inst.factors, &inst.filter).unwrap();
        let j: IndexSet = inst
            .filter
            .kernel()
            .iter()
            .copied()
            .chain((0..inst.factors.len()).filter(|_| rng.gen_bool(0.5)))
            .collect();
        assert!(inst.filter.member(&j));
        let iso = restrict_iso(&rp, &j).unwrap();
        let n = rp.class_count();
        let image: BTreeSet<usize> = iso.forward.iter().copied().collect();
        let bijective = iso.target.class_count() == n && image.len() == n && image.iter().all(|&c| c < n);
        let natural = (0..n).all(|c| {
            let restricted = rp.representative(c).restrict(&iso.domain);
            iso.target.class_of(&restricted).unwrap() == iso.forward[c]
        });
        let (sq, tq) = (rp.quotient(), iso.target.quotient());
        let preserving = (0..n).all(|a| (0..n).all(|b| sq.relates(a, b) == tq.relates(iso.forward[a], iso.forward[b])));
        if bijective && natural && preserving && iso.is_isomorphism(&rp) {
            ok += 1;
        }
    }
    outcome(ok == trials, format!("restriction to random J in the filter is an isomorphism: {ok}/{trials} instances"))
}

fn criterion_5() -> Outcome {
    let cfg = HarnessConfig { trials: 500, max_index: 3, max_size: 3, cap: CAP };
    let mut parts = Vec::new();
    let mut pass = true;
    for n in 0..=3 {
        let f = Formula::not(dist_formula(n).unwrap());
        pass &= is_horn(&f);
        let run = run_preservation(&f, 5_000 + n as u64, &cfg).unwrap();
        let t = run.horn_tally.unwrap();
        pass &= t.trials >= 500 && t.violations == 0;
        parts.push(format!("¬dist{n}: {} violations/{} (hypothesis held {})", t.violations, t.trials, t.hypothesis_held));
    }
    for n in 0..=2 {
        let f = conn_sentence(n).unwrap();
        pass &= is_positive(&f);
        let run = run_preservation(&f, 5_100 + n as u64, &cfg).unwrap();
        let t = run.positive_tally.unwrap();
        pass &= t.trials >= 500 && t.violations == 0;
        parts.push(format!("conn{n}: {} violations/{} (product held {})", t.violations, t.trials, t.hypothesis_held));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_6() -> Outcome {
    let trials = 400;
    let (mut ok, mut connected) = (0, 0);
    for t in 0..trials {
        let factors = random_factors(&mut trial_rng(6_006, t), 4, 4);
        let rp = ReducedProduct::direct(&factors).unwrap();
        let expected = factors.iter().all(|f| f.is_connected());
        let reflexive: Vec<BinaryStructure> = factors.iter().map(|f| f.reflexivize()).collect();
        let brute = brute_class_partition(&rp, &reflexive, rp.filter()).len() == 1;
        connected += u64::from(expected);
        if connected_bfs(&rp) == expected && brute == expected {
            ok += 1;
        }
    }
    outcome(
        ok == trials,
        format!("direct product connected iff every factor is: {ok}/{trials} instances ({connected} connected)"),
    )
}

fn random_sequence(rng: &mut impl Rng) -> SymbolicSequence {
    match rng.gen_range(0..3) {
        0 => SymbolicSequence::constant(rng.gen_range(0..8)),
        1 => SymbolicSequence::affine(rng.gen_range(0..3), rng.gen_range(0..8)),
        _ => {
            let prefix = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(0..8)).collect();
            SymbolicSequence::eventually_affine(prefix, rng.gen_range(0..3), rng.gen_range(0..8))
        }
    }
}

fn criterion_7() -> Outcome {
    let w = frechet_disconnection_witness(12);
    // pointwise: at index i the pair is i + 2 apart, so d ≤ m holds only below m - 1
    let pointwise = (1..=12u64).all(|m| (0..500u64).all(|i| (gdist(w.x.value(i), w.y.value(i)) <= m) == (i + 2 <= m)));
    let trace_finite = w.trace.iter().all(|s| s.finite && s.distance_set.is_finite());
    let disconnected = !w.frechet.connected() && !symbolic_connected(&w.x, &w.y, &SymbolicFilter::Frechet).connected();

    let mut rng = trial_rng(7_007, 0);
    let truncations = 80;
    let mut agree = 0;
    for k in 0..truncations {
        let (x, y) = if k % 4 == 0 { (w.x.clone(), w.y.clone()) } else { (random_sequence(&mut rng), random_sequence(&mut rng)) };
        let horizon = rng.gen_range(3..8u64);
        let mut kernel: BTreeSet<u64> = (0..=horizon).filter(|_| rng.gen_bool(0.4)).collect();
        if kernel.is_empty() {
            kernel.insert(rng.gen_range(0..=horizon));
        }
        if truncation_check(&x, &y, &kernel, horizon).unwrap().agree {
            agree += 1;
        }
    }
    outcome(
        w.all_sets_finite && pointwise && trace_finite && disconnected && agree == truncations,
        format!(
            "witness distance sets all finite: {}, pointwise check: {pointwise}, disconnected under the cofinite filter: {disconnected}; principal truncations agree {agree}/{truncations}",
            w.all_sets_finite
        ),
    )
}

fn criterion_8() -> Outcome {
    let filters = [SymbolicFilter::Frechet, SymbolicFilter::PrincipalCofinite([0, 3, 5].into_iter().collect())];
    let mut rng = trial_rng(8_008, 0);
    let (mut ok, mut total, mut finite_diameter) = (0, 0, 0);
    for _ in 0..200 {
        let size = rng.gen_range(1..=5);
        let p = EDGE_PROBABILITIES[rng.gen_range(0..EDGE_PROBABILITIES.len())];
        let x = random_structure(&mut rng, size, p);
        let finite = x.diameter().is_finite();
        finite_diameter += u64::from(finite);
        for f in &filters {
            total += 1;
            if remark_b_prime_check(&DiameterProfile::homogeneous(&x), f).unwrap().holds == finite {
                ok += 1;
            }
        }
    }
    let linear_disconnected =
        filters.iter().all(|f| !remark_b_prime_check(&DiameterProfile::linear_graph(), f).unwrap().holds);
    outcome(
        ok == total && linear_disconnected && finite_diameter > 0,
        format!(
            "homogeneous powers connected iff finite diameter: {ok}/{total} ({finite_diameter} finite-diameter structures); linear graph power disconnected: {linear_disconnected}"
        ),
    )
}

fn criterion_9() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_redprod");
    let instances = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances");
    let three = instances.join("three_factors.rp");
    let frechet = instances.join("frechet.rp");
    let runs: Vec<Vec<String>> = vec![
        vec!["verify".into(), "--seeds".into(), "200".into()],
        vec!["preserve".into(), "--formula".into(), "~dist(1)(x,y)".into(), "--trials".into(), "100".into()],
        vec!["components".into(), three.display().to_string()],
        vec!["witness".into(), three.display().to_string(), "--x".into(), "x".into(), "--y".into(), "y".into()],
        vec!["check".into(), frechet.display().to_string()],
    ];
    let mut identical = 0;
    for args in &runs {
        let once = || {
            let out = Command::new(exe)
                .env_remove("REDPROD_CAP")
                .args(["--json", "--seed", "99"])
                .args(args)
                .output()
                .expect("binary runs");
            assert!(out.status.success(), "{args:?} failed");
            out.stdout
        };
        let (a, b) = (once(), once());
        if a == b && !a.is_empty() {
            identical += 1;
        }
    }
    outcome(identical == runs.len(), format!("byte-identical JSON across repeated runs: {identical}/{}", runs.len()))
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(usize, Outcome)> = Vec::new();
    for (k, o) in corpus_criteria().into_iter().enumerate() {
        results.push((k + 1, o));
    }
    results.push((4, criterion_4()));
    results.push((5, criterion_5()));
    results.push((6, criterion_6()));
    results.push((7, criterion_7()));
    results.push((8, criterion_8()));
    results.push((9, criterion_9()));
    let mut failed = 0;
    for (k, o) in &results {
        println!("criterion {k}: {}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s",
        results.len() - failed,
        results.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
