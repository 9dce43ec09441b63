//! Command execution and the report model.

use std::time::Instant;

use rayon::prelude::*;
use redprod::connectivity::{
    components_bfs, connected_bfs, ConditionBWitness, DiameterStratification, Instance, ProductPathWitness,
};
use redprod::filter::IndexSet;
use redprod::fuzz::{run_trial, FuzzConfig, TrialOutcome};
use redprod::symbolic::{
    all_distance_sets_finite, remark_b_prime_check, symbolic_connected, Certificate, DiameterProfile, RemarkOutcome,
    SymbolicFilter, SymbolicSequence,
};
use redprod::{BinaryStructure, ProductPoint, ReducedProduct};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::dot::quotient_dot;
use crate::dsl::{render, Body, InstanceSpec, SymbolicSpec};
use crate::error::CliError;
use crate::formula_text::parse_formula;
use crate::harness::{run_preservation, HarnessConfig, PreservationRun};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Check,
    Components,
    /// Point names, sequence names or tuple literals.
    Witness { x: String, y: String },
    ConditionB,
    Verify { seeds: u64, max_index: usize, max_size: usize, pairs: usize },
    Preserve { formula: String, trials: u64, max_index: usize, max_size: usize },
    Export,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Components => "components",
            Command::Witness { .. } => "witness",
            Command::ConditionB => "condition-b",
            Command::Verify { .. } => "verify",
            Command::Preserve { .. } => "preserve",
            Command::Export => "export",
        }
    }

    pub fn needs_instance(&self) -> bool {
        !matches!(self, Command::Verify { .. } | Command::Preserve { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub seed: u64,
    pub cap: u128,
    /// Adds wall-clock time to the report, which makes it non-reproducible.
    pub timing: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { seed: 0, cap: redprod::product::DEFAULT_CAP, timing: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: &'static str,
    /// SHA-256 of the instance's canonical text.
    pub instance_digest: Option<String>,
    pub seed: u64,
    pub cap: u128,
    /// All oracles that were compared agree.
    pub agree: bool,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    /// Quotient in Graphviz syntax, for `--dot`; not part of the JSON.
    #[serde(skip)]
    pub dot: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Check(CheckResult),
    SymbolicCheck(SymbolicCheckResult),
    Components(ComponentsResult),
    Witness(WitnessResult),
    SymbolicWitness(SymbolicWitnessResult),
    ConditionB(ConditionBResult),
    Verify(VerifyResult),
    Preserve(PreservationRun),
    Export(ExportResult),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub tuples: u128,
    pub classes: usize,
    pub bfs_connected: bool,
    pub condition_b: Option<ConditionBWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedRemark {
    pub structure: String,
    pub outcome: RemarkOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCertificate {
    pub x: String,
    pub y: String,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicCheckResult {
    pub filter: String,
    /// Finite-diameter test for the power of the linear graph; absent for
    /// principal filters with a finite kernel, where it does not apply.
    pub linear_graph_power: Option<RemarkOutcome>,
    pub structure_powers: Vec<NamedRemark>,
    pub pairs: Vec<PairCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentsResult {
    pub classes: usize,
    /// Class representatives per component.
    pub bfs: Vec<Vec<ProductPoint>>,
    pub criterion: Vec<Vec<ProductPoint>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessResult {
    pub x: ProductPoint,
    pub y: ProductPoint,
    /// Least `n` whose distance set is in the filter.
    pub criterion_level: Option<usize>,
    pub distance_set: Option<IndexSet>,
    pub bfs_same_component: bool,
    pub witness: Option<ProductPathWitness>,
    pub witness_valid: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicWitnessResult {
    pub x: SymbolicSequence,
    pub y: SymbolicSequence,
    pub filter: String,
    pub all_distance_sets_finite: bool,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionBResult {
    pub kernel: IndexSet,
    pub stratification: DiameterStratification,
    pub candidates: Vec<ConditionBWitness>,
    pub chosen: Option<ConditionBWitness>,
    pub bfs_connected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyResult {
    pub config: FuzzConfig,
    pub trials: u64,
    pub passed: u64,
    pub connectivity_agree: u64,
    pub components_agree: u64,
    pub pairs: u64,
    pub pairs_agree: u64,
    pub witnesses: u64,
    pub witnesses_valid: u64,
    /// Failing trials in trial order.
    pub failures: Vec<TrialOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExportResult {
    pub instance: String,
    pub kernel: IndexSet,
    pub representatives: Vec<ProductPoint>,
    pub class_sizes: Vec<u128>,
    pub quotient_edges: Vec<(usize, usize)>,
    pub components: Vec<Vec<usize>>,
}

pub fn digest(spec: &InstanceSpec) -> String {
    hex::encode(Sha256::digest(render(spec).as_bytes()))
}

pub fn run_command(command: &Command, spec: Option<&InstanceSpec>, settings: &Settings) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut dot = None;
    let (agree, outcome) = match (command, spec) {
        (Command::Verify { seeds, max_index, max_size, pairs }, _) => {
            let cfg = FuzzConfig { max_index: *max_index, max_size: *max_size, pairs: *pairs, cap: settings.cap };
            let r = verify(settings.seed, *seeds, &cfg)?;
            (r.passed == r.trials, Outcome::Verify(r))
        }
        (Command::Preserve { formula, trials, max_index, max_size }, _) => {
            let parsed = parse_formula(formula)?;
            let cfg = HarnessConfig { trials: *trials, max_index: *max_index, max_size: *max_size, cap: settings.cap };
            let run = run_preservation(&parsed.formula, settings.seed, &cfg)?;
            (run.violations() == 0, Outcome::Preserve(run))
        }
        (_, None) => return Err(CliError::Usage(format!("`{}` needs an instance file", command.name()))),
        (_, Some(spec)) => match &spec.body {
            Body::Symbolic(s) => symbolic_command(command, spec, s)?,
            Body::Finite(_) => {
                let factors = spec.factors().expect("finite");
                let filter = spec.filter().expect("finite");
                let instance = Instance::new(&factors, &filter)?;
                let rp = instance.build_product(settings.cap)?;
                let bfs = components_bfs(&rp);
                dot = Some(quotient_dot(&rp, &bfs));
                finite_command(command, spec, &instance, &rp, bfs)?
            }
        },
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: command.name(),
        instance_digest: spec.filter(|_| command.needs_instance()).map(digest),
        seed: settings.seed,
        cap: settings.cap,
        agree,
        outcome,
        elapsed_ms: settings.timing.then(|| start.elapsed().as_millis()),
        dot,
    })
}

fn reps(rp: &ReducedProduct, groups: &[Vec<usize>]) -> Vec<Vec<ProductPoint>> {
    groups.iter().map(|g| g.iter().map(|&c| rp.representative(c).clone()).collect()).collect()
}

fn finite_point(spec: &InstanceSpec, factors: &[BinaryStructure], text: &str) -> Result<ProductPoint, CliError> {
    if let Some(p) = spec.point(text) {
        return Ok(p.clone());
    }
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let coords: Result<Vec<usize>, _> = inner.split(',').map(|s| s.trim().parse::<usize>()).collect();
    let p = ProductPoint(coords.map_err(|_| CliError::Usage(format!("`{text}` is neither a point name nor a tuple")))?);
    redprod::product::check_point(factors, &p).map_err(|e| CliError::Usage(format!("point `{text}`: {e}")))?;
    Ok(p)
}

fn finite_command(
    command: &Command,
    spec: &InstanceSpec,
    instance: &Instance,
    rp: &ReducedProduct,
    bfs: Vec<Vec<usize>>,
) -> Result<(bool, Outcome), CliError> {
    Ok(match command {
        Command::Check => {
            let bfs_connected = connected_bfs(rp);
            let condition_b = instance.condition_b();
            let agree = bfs_connected == condition_b.is_some();
            let r = CheckResult { tuples: rp.tuple_count(), classes: rp.class_count(), bfs_connected, condition_b };
            (agree, Outcome::Check(r))
        }
        Command::Components => {
            let criterion = instance.components_criterion(rp)?;
            let agree = criterion == bfs;
            let r = ComponentsResult { classes: rp.class_count(), bfs: reps(rp, &bfs), criterion: reps(rp, &criterion) };
            (agree, Outcome::Components(r))
        }
        Command::Witness { x, y } => {
            let x = finite_point(spec, instance.factors(), x)?;
            let y = finite_point(spec, instance.factors(), y)?;
            let level = instance.criterion_level(&x, &y)?;
            let distance_set = level.map(|n| instance.distance_set(&x, &y, n)).transpose()?;
            let (cx, cy) = (rp.class_of(&x)?, rp.class_of(&y)?);
            let bfs_same_component = bfs.iter().any(|g| g.contains(&cx) && g.contains(&cy));
            let witness = instance.build_path_witness(&x, &y)?;
            let witness_valid = witness.as_ref().map(|w| instance.witness_validates(w));
            let agree = bfs_same_component == level.is_some()
                && witness.is_some() == level.is_some()
                && witness_valid != Some(false);
            let r = WitnessResult {
                x,
                y,
                criterion_level: level,
                distance_set,
                bfs_same_component,
                witness,
                witness_valid,
            };
            (agree, Outcome::Witness(r))
        }
        Command::ConditionB => {
            let chosen = instance.condition_b();
            let bfs_connected = bfs.len() == 1;
            let r = ConditionBResult {
                kernel: instance.filter().kernel().clone(),
                stratification: instance.stratify(),
                candidates: instance.condition_b_candidates(),
                chosen,
                bfs_connected,
            };
            (r.chosen.is_some() == bfs_connected, Outcome::ConditionB(r))
        }
        Command::Export => {
            let r = ExportResult {
                instance: render(spec),
                kernel: rp.filter().kernel().clone(),
                representatives: rp.representatives().to_vec(),
                class_sizes: rp.class_sizes().to_vec(),
                quotient_edges: rp.quotient().relation().iter().copied().collect(),
                components: bfs,
            };
            (true, Outcome::Export(r))
        }
        Command::Verify { .. } | Command::Preserve { .. } => unreachable!("handled without an instance"),
    })
}

fn symbolic_command(command: &Command, spec: &InstanceSpec, s: &SymbolicSpec) -> Result<(bool, Outcome), CliError> {
    let sequence = |name: &str| {
        spec.sequence(name).cloned().ok_or_else(|| CliError::Usage(format!("no sequence named `{name}`")))
    };
    match command {
        Command::Check => {
            let cofinite = !matches!(s.filter, SymbolicFilter::PrincipalFinite(_));
            let linear_graph_power =
                cofinite.then(|| remark_b_prime_check(&DiameterProfile::linear_graph(), &s.filter)).transpose()?;
            let structure_powers = if cofinite {
                spec.structures
                    .iter()
                    .map(|(name, x)| {
                        let outcome = remark_b_prime_check(&DiameterProfile::homogeneous(x), &s.filter)?;
                        Ok(NamedRemark { structure: name.clone(), outcome })
                    })
                    .collect::<Result<_, CliError>>()?
            } else {
                Vec::new()
            };
            let mut pairs = Vec::new();
            for (i, (nx, x)) in s.sequences.iter().enumerate() {
                for (ny, y) in &s.sequences[i + 1..] {
                    pairs.push(PairCertificate {
                        x: nx.clone(),
                        y: ny.clone(),
                        certificate: symbolic_connected(x, y, &s.filter),
                    });
                }
            }
            let r = SymbolicCheckResult { filter: s.filter.to_string(), linear_graph_power, structure_powers, pairs };
            Ok((true, Outcome::SymbolicCheck(r)))
        }
        Command::Witness { x, y } => {
            let (x, y) = (sequence(x)?, sequence(y)?);
            let certificate = symbolic_connected(&x, &y, &s.filter);
            let all_finite = all_distance_sets_finite(&x, &y);
            // with all distance sets finite, only a finite kernel can connect
            let agree = !all_finite || !certificate.connected() || matches!(s.filter, SymbolicFilter::PrincipalFinite(_));
            let r = SymbolicWitnessResult { filter: s.filter.to_string(), all_distance_sets_finite: all_finite, certificate, x, y };
            Ok((agree, Outcome::SymbolicWitness(r)))
        }
        other => Err(CliError::Usage(format!("`{}` needs a finite instance", other.name()))),
    }
}

/// Runs trials `0..trials` in parallel; results stay in trial order.
pub fn verify(seed: u64, trials: u64, cfg: &FuzzConfig) -> Result<VerifyResult, CliError> {
    let outcomes: Vec<TrialOutcome> =
        (0..trials).into_par_iter().map(|t| run_trial(seed, t, cfg)).collect::<redprod::Result<_>>()?;
    let count = |f: &dyn Fn(&TrialOutcome) -> bool| outcomes.iter().filter(|o| f(o)).count() as u64;
    let sum = |f: &dyn Fn(&TrialOutcome) -> usize| outcomes.iter().map(f).sum::<usize>() as u64;
    Ok(VerifyResult {
        config: *cfg,
        trials,
        passed: count(&|o| o.passed()),
        connectivity_agree: count(&|o| o.connectivity_agree),
        components_agree: count(&|o| o.components_agree),
        pairs: sum(&|o| o.pairs),
        pairs_agree: sum(&|o| o.pairs_agree),
        witnesses: sum(&|o| o.witnesses),
        witnesses_valid: sum(&|o| o.witnesses_valid),
        failures: outcomes.iter().filter(|o| !o.passed()).cloned().collect(),
    })
}

fn set_text(s: &IndexSet) -> String {
    let items: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn condition_b_text(w: &Option<ConditionBWitness>) -> String {
    match w {
        Some(w) => format!("K = {}, n = {}", set_text(&w.k), w.n),
        None => "none".to_string(),
    }
}

fn groups_text(groups: &[Vec<ProductPoint>]) -> String {
    let parts: Vec<String> = groups
        .iter()
        .map(|g| {
            let ps: Vec<String> = g.iter().map(|p| p.to_string()).collect();
            format!("{{{}}}", ps.join(" "))
        })
        .collect();
    parts.join(" ")
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut lines = vec![format!("command: {}", self.command)];
        if let Some(d) = &self.instance_digest {
            lines.push(format!("instance: sha256 {d}"));
        }
        lines.push(format!("seed: {}", self.seed));
        match &self.outcome {
            Outcome::Check(r) => {
                lines.push(format!("tuples: {}, classes: {}", r.tuples, r.classes));
                lines.push(format!("quotient BFS: {}", if r.bfs_connected { "connected" } else { "disconnected" }));
                lines.push(format!("condition (b): {}", condition_b_text(&r.condition_b)));
            }
            Outcome::SymbolicCheck(r) => {
                lines.push(format!("filter: {}", r.filter));
                if let Some(o) = &r.linear_graph_power {
                    lines.push(format!("power of the linear graph: {}", remark_text(o)));
                }
                for p in &r.structure_powers {
                    lines.push(format!("power of {}: {}", p.structure, remark_text(&p.outcome)));
                }
                for p in &r.pairs {
                    lines.push(format!("{} ~ {}: {}", p.x, p.y, certificate_text(&p.certificate)));
                }
            }
            Outcome::Components(r) => {
                lines.push(format!("classes: {}", r.classes));
                lines.push(format!("BFS components ({}): {}", r.bfs.len(), groups_text(&r.bfs)));
                lines.push(format!("criterion components ({}): {}", r.criterion.len(), groups_text(&r.criterion)));
            }
            Outcome::Witness(r) => {
                lines.push(format!("x = {}, y = {}", r.x, r.y));
                match (r.criterion_level, &r.distance_set) {
                    (Some(n), Some(s)) => lines.push(format!("criterion: n = {n}, distance set {}", set_text(s))),
                    _ => lines.push("criterion: no n, different components".to_string()),
                }
                lines.push(format!("quotient BFS same component: {}", r.bfs_same_component));
                if let Some(w) = &r.witness {
                    lines.push(format!(
                        "witness: {} segments, {} steps, ends at {} (valid: {})",
                        w.segments.len(),
                        w.total_steps(),
                        w.end,
                        r.witness_valid == Some(true)
                    ));
                    for s in &w.segments {
                        let pts: Vec<String> = s.waypoints().map(|p| p.to_string()).collect();
                        let pattern: String = s.pattern.iter().map(|o| char::from(b'0' + o.bit())).collect();
                        lines.push(format!("  on {} with pattern {pattern}: {}", set_text(&s.coordinates), pts.join(" ")));
                    }
                }
            }
            Outcome::SymbolicWitness(r) => {
                lines.push(format!("x = {}, y = {}, filter {}", r.x, r.y, r.filter));
                lines.push(format!("all distance sets finite: {}", r.all_distance_sets_finite));
                lines.push(certificate_text(&r.certificate));
            }
            Outcome::ConditionB(r) => {
                lines.push(format!("kernel: {}", set_text(&r.kernel)));
                for (n, level) in r.stratification.levels.iter().enumerate() {
                    lines.push(format!("A_{n} = {}", set_text(level)));
                }
                lines.push(format!("infinite diameter: {}", set_text(&r.stratification.infinite)));
                let cands: Vec<String> = r.candidates.iter().map(|c| condition_b_text(&Some(c.clone()))).collect();
                lines.push(format!("candidates: {}", if cands.is_empty() { "none".into() } else { cands.join("; ") }));
                lines.push(format!("chosen: {}", condition_b_text(&r.chosen)));
                lines.push(format!("quotient BFS connected: {}", r.bfs_connected));
            }
            Outcome::Verify(r) => {
                lines.push(format!("trials passed: {}/{}", r.passed, r.trials));
                lines.push(format!("connectivity agreement: {}/{}", r.connectivity_agree, r.trials));
                lines.push(format!("component agreement: {}/{}", r.components_agree, r.trials));
                lines.push(format!("pair agreement: {}/{}", r.pairs_agree, r.pairs));
                lines.push(format!("valid witnesses: {}/{}", r.witnesses_valid, r.witnesses));
                for f in &r.failures {
                    lines.push(format!("failed trial {}", f.trial));
                }
            }
            Outcome::Preserve(r) => {
                lines.push(format!("formula: {}", r.formula));
                lines.push(format!("horn: {}, positive: {}, sentence: {}", r.horn, r.positive, r.sentence));
                for (label, t) in [("reduced products", &r.horn_tally), ("reduced factors", &r.positive_tally)] {
                    if let Some(t) = t {
                        lines.push(format!(
                            "{label}: {} trials, hypothesis held {}, violations {}",
                            t.trials, t.hypothesis_held, t.violations
                        ));
                    }
                }
            }
            Outcome::Export(r) => {
                lines.push(format!("classes: {}, components: {}", r.representatives.len(), r.components.len()));
            }
        }
        lines.push(format!("agree: {}", self.agree));
        if let Some(ms) = self.elapsed_ms {
            lines.push(format!("elapsed: {ms} ms"));
        }
        lines.join("\n") + "\n"
    }
}

fn remark_text(o: &RemarkOutcome) -> String {
    match o.n {
        Some(n) => format!("connected (diameter bound holds at n = {n})"),
        None => "disconnected (no diameter level is in the filter)".to_string(),
    }
}

fn certificate_text(c: &Certificate) -> String {
    match c {
        Certificate::Connected { n, distance_set } => {
            format!("connected: n = {n}, distance set {distance_set} is in the filter")
        }
        Certificate::UnboundedDifference { slope_x, slope_y, samples } => {
            let s: Vec<String> = samples.iter().map(|(m, set)| format!("d ≤ {m} on {set}")).collect();
            format!("disconnected: tail slopes {slope_x} and {slope_y} differ, every distance set is finite ({})", s.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_instance;

    const THREE: &str = "structure P3 3\nedge 0 1\nedge 1 2\nstructure D2 2\nstructure E2 2\nedge 0 1\n\
        index 3\nassign 0 P3\nassign 1 D2\nassign 2 E2\nfilter principal {0,2}\npoint x = (0,0,0)\npoint y = (2,1,1)\n";

    fn run(cmd: Command, text: &str) -> Report {
        let spec = parse_instance(text).unwrap();
        run_command(&cmd, Some(&spec), &Settings::default()).unwrap()
    }

    #[test]
    fn check_three_factors() {
        let r = run(Command::Check, THREE);
        assert!(r.agree);
        let Outcome::Check(c) = &r.outcome else { panic!() };
        assert!(c.bfs_connected);
        assert_eq!(c.condition_b, Some(ConditionBWitness { k: IndexSet::new(), n: 1 }));
    }

    #[test]
    fn witness_three_factors() {
        let r = run(Command::Witness { x: "x".into(), y: "y".into() }, THREE);
        let Outcome::Witness(w) = &r.outcome else { panic!() };
        assert!(r.agree);
        assert_eq!(w.criterion_level, Some(1));
        assert_eq!(w.witness_valid, Some(true));
        // tuple literal addresses the same point
        let r2 = run(Command::Witness { x: "(0,0,0)".into(), y: "2,1,1".into() }, THREE);
        assert_eq!(r2.outcome, r.outcome);
    }

    #[test]
    fn disconnected_kernel() {
        let text = THREE.replace("principal {0,2}", "principal {1}");
        let r = run(Command::Check, &text);
        let Outcome::Check(c) = &r.outcome else { panic!() };
        assert!(r.agree && !c.bfs_connected && c.condition_b.is_none());
        let r = run(Command::Components, &text);
        let Outcome::Components(c) = &r.outcome else { panic!() };
        assert!(r.agree);
        assert_eq!(c.bfs.len(), 2);
    }

    #[test]
    fn frechet_pair_certificate() {
        let text = "filter frechet\nseq x constant 0\nseq y affine 1 2\n";
        let r = run(Command::Witness { x: "x".into(), y: "y".into() }, text);
        let Outcome::SymbolicWitness(w) = &r.outcome else { panic!() };
        assert!(w.all_distance_sets_finite);
        assert!(!w.certificate.connected());
        assert!(r.to_text().contains("every distance set is finite"));
        let r = run(Command::Check, "structure P3 3\nedge 0 1\nedge 1 2\nfilter frechet\n");
        let Outcome::SymbolicCheck(c) = &r.outcome else { panic!() };
        assert_eq!(c.linear_graph_power.as_ref().map(|o| o.holds), Some(false));
        assert!(c.structure_powers[0].outcome.holds);
    }

    #[test]
    fn json_is_deterministic_and_versioned() {
        let spec = parse_instance(THREE).unwrap();
        let s = Settings { seed: 11, ..Settings::default() };
        let a = run_command(&Command::Components, Some(&spec), &s).unwrap().to_json();
        let b = run_command(&Command::Components, Some(&spec), &s).unwrap().to_json();
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["seed"], 11);
        assert_eq!(v["instance_digest"].as_str().unwrap().len(), 64);
    }

    #[test]
    fn verify_small() {
        let cmd = Command::Verify { seeds: 30, max_index: 3, max_size: 3, pairs: 5 };
        let r = run_command(&cmd, None, &Settings::default()).unwrap();
        assert!(r.agree);
        let Outcome::Verify(v) = &r.outcome else { panic!() };
        assert_eq!(v.passed, 30);
        assert!(r.instance_digest.is_none());
    }

    #[test]
    fn size_cap_propagates() {
        let spec = parse_instance(THREE).unwrap();
        let s = Settings { cap: 5, ..Settings::default() };
        let e = run_command(&Command::Check, Some(&spec), &s).unwrap_err();
        assert_eq!(e.exit_code(), 3);
    }

    #[test]
    fn instance_needed() {
        let e = run_command(&Command::Check, None, &Settings::default()).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        let sym = parse_instance("filter frechet\n").unwrap();
        assert!(run_command(&Command::ConditionB, Some(&sym), &Settings::default()).is_err());
    }
}
