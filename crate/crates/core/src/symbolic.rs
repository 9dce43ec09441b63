//! Reduced powers of the linear graph `G_ω = ⟨ω, {(m,n) : |m-n| = 1}⟩`
//! indexed by ω, over filters that can be described finitely.
//!
//! Elements of the power are sequences from a small catalog: constant,
//! affine `i ↦ a·i + b`, or affine after a finite prefix. For two catalog
//! sequences the set of indices where their distance is at most `m` is
//! always finite or cofinite, so filter membership is decidable and the
//! component criterion can be run exactly.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::connectivity::Instance;
use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::product::ProductPoint;
use crate::structure::BinaryStructure;

/// Distance in `G_ω`.
pub fn gdist(x: u64, y: u64) -> u64 {
    x.abs_diff(y)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymbolicSequence {
    Constant { value: u64 },
    Affine { slope: u64, offset: u64 },
    /// `prefix[i]` for `i < prefix.len()`, then `slope·i + offset`.
    EventuallyAffine { prefix: Vec<u64>, slope: u64, offset: u64 },
}

impl SymbolicSequence {
    pub fn constant(value: u64) -> Self {
        SymbolicSequence::Constant { value }
    }

    pub fn affine(slope: u64, offset: u64) -> Self {
        SymbolicSequence::Affine { slope, offset }
    }

    pub fn eventually_affine(prefix: Vec<u64>, slope: u64, offset: u64) -> Self {
        SymbolicSequence::EventuallyAffine { prefix, slope, offset }
    }

    fn prefix(&self) -> &[u64] {
        match self {
            SymbolicSequence::EventuallyAffine { prefix, .. } => prefix,
            _ => &[],
        }
    }

    /// `(slope, offset)` of the affine tail.
    pub fn tail(&self) -> (u64, u64) {
        match *self {
            SymbolicSequence::Constant { value } => (0, value),
            SymbolicSequence::Affine { slope, offset } => (slope, offset),
            SymbolicSequence::EventuallyAffine { slope, offset, .. } => (slope, offset),
        }
    }

    pub fn value(&self, i: u64) -> u64 {
        match self.prefix().get(i as usize) {
            Some(&v) => v,
            None => {
                let (a, b) = self.tail();
                a * i + b
            }
        }
    }
}

impl fmt::Display for SymbolicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicSequence::Constant { value } => write!(f, "constant {value}"),
            SymbolicSequence::Affine { slope, offset } => write!(f, "affine {slope} {offset}"),
            SymbolicSequence::EventuallyAffine { prefix, slope, offset } => {
                f.write_str("eventually")?;
                for v in prefix {
                    write!(f, " {v}")?;
                }
                write!(f, " then affine {slope} {offset}")
            }
        }
    }
}

/// A finite or cofinite subset of ω.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "elements", rename_all = "snake_case")]
pub enum DefinableIndexSet {
    Finite(BTreeSet<u64>),
    /// ω minus the listed indices.
    Cofinite(BTreeSet<u64>),
}

impl DefinableIndexSet {
    pub fn omega() -> Self {
        DefinableIndexSet::Cofinite(BTreeSet::new())
    }

    pub fn empty() -> Self {
        DefinableIndexSet::Finite(BTreeSet::new())
    }

    pub fn contains(&self, i: u64) -> bool {
        match self {
            DefinableIndexSet::Finite(s) => s.contains(&i),
            DefinableIndexSet::Cofinite(s) => !s.contains(&i),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, DefinableIndexSet::Finite(_))
    }

    pub fn complement(&self) -> Self {
        match self {
            DefinableIndexSet::Finite(s) => DefinableIndexSet::Cofinite(s.clone()),
            DefinableIndexSet::Cofinite(s) => DefinableIndexSet::Finite(s.clone()),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        use DefinableIndexSet::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a | b),
            (Cofinite(a), Cofinite(b)) => Cofinite(a & b),
            (Finite(f), Cofinite(c)) | (Cofinite(c), Finite(f)) => Cofinite(c - f),
        }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.complement().union(&other.complement()).complement()
    }

    /// `self ⊇ other` for a finite `other`.
    fn contains_all(&self, other: &BTreeSet<u64>) -> bool {
        other.iter().all(|&i| self.contains(i))
    }
}

impl fmt::Display for DefinableIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &BTreeSet<u64>| s.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            DefinableIndexSet::Finite(s) if s.is_empty() => f.write_str("∅"),
            DefinableIndexSet::Finite(s) => write!(f, "{{{}}}", list(s)),
            DefinableIndexSet::Cofinite(s) if s.is_empty() => f.write_str("ω"),
            DefinableIndexSet::Cofinite(s) => write!(f, "ω∖{{{}}}", list(s)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "set", rename_all = "snake_case")]
pub enum SymbolicFilter {
    /// The cofinite subsets of ω.
    Frechet,
    /// Supersets of `ω ∖ excluded`.
    PrincipalCofinite(BTreeSet<u64>),
    /// Supersets of a nonempty finite kernel.
    PrincipalFinite(BTreeSet<u64>),
}

impl SymbolicFilter {
    pub fn principal(kernel: BTreeSet<u64>) -> Result<Self> {
        if kernel.is_empty() {
            return Err(Error::ImproperFilter);
        }
        Ok(SymbolicFilter::PrincipalFinite(kernel))
    }

    pub fn member(&self, set: &DefinableIndexSet) -> bool {
        match (self, set) {
            (SymbolicFilter::Frechet, s) => !s.is_finite(),
            (SymbolicFilter::PrincipalFinite(k), s) => s.contains_all(k),
            (SymbolicFilter::PrincipalCofinite(_), DefinableIndexSet::Finite(_)) => false,
            (SymbolicFilter::PrincipalCofinite(e), DefinableIndexSet::Cofinite(missing)) => missing.is_subset(e),
        }
    }
}

impl fmt::Display for SymbolicFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicFilter::Frechet => f.write_str("frechet"),
            SymbolicFilter::PrincipalCofinite(e) => write!(f, "principal {}", DefinableIndexSet::Cofinite(e.clone())),
            SymbolicFilter::PrincipalFinite(k) => write!(f, "principal {}", DefinableIndexSet::Finite(k.clone())),
        }
    }
}

// Divisors are positive.
fn div_floor(a: i128, b: i128) -> i128 {
    a.div_euclid(b)
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

/// Where two catalog sequences are both affine, and the difference there.
struct Difference {
    start: u64,
    slope: i128,
    offset: i128,
}

fn difference(x: &SymbolicSequence, y: &SymbolicSequence) -> Difference {
    let start = x.prefix().len().max(y.prefix().len()) as u64;
    let ((ax, bx), (ay, by)) = (x.tail(), y.tail());
    Difference { start, slope: ax as i128 - ay as i128, offset: bx as i128 - by as i128 }
}

/// `{i : |x(i) - y(i)| ≤ m}`.
pub fn distance_set(x: &SymbolicSequence, y: &SymbolicSequence, m: u64) -> DefinableIndexSet {
    let d = difference(x, y);
    let m = m as i128;
    let head: BTreeSet<u64> = (0..d.start).filter(|&i| gdist(x.value(i), y.value(i)) as i128 <= m).collect();
    if d.slope == 0 {
        return if d.offset.abs() <= m {
            DefinableIndexSet::Cofinite((0..d.start).filter(|i| !head.contains(i)).collect())
        } else {
            DefinableIndexSet::Finite(head)
        };
    }
    // -m ≤ slope·i + offset ≤ m, over i ≥ start
    let (lo, hi) = if d.slope > 0 {
        (div_ceil(-m - d.offset, d.slope), div_floor(m - d.offset, d.slope))
    } else {
        let s = -d.slope;
        (div_ceil(d.offset - m, s), div_floor(d.offset + m, s))
    };
    let lo = lo.max(d.start as i128);
    let mut set = head;
    if lo <= hi {
        set.extend((lo as u64)..=(hi as u64));
    }
    DefinableIndexSet::Finite(set)
}

/// The distance sets of `x` and `y` are all finite: their tails have
/// different slopes, so the difference grows without bound.
pub fn all_distance_sets_finite(x: &SymbolicSequence, y: &SymbolicSequence) -> bool {
    difference(x, y).slope != 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Certificate {
    /// `distance_set(n+1)` is in the filter and `n` is least.
    Connected { n: usize, distance_set: DefinableIndexSet },
    /// Tail slopes differ: every distance set is finite, and the filter
    /// contains no finite set.
    UnboundedDifference { slope_x: u64, slope_y: u64, samples: Vec<(u64, DefinableIndexSet)> },
}

impl Certificate {
    pub fn connected(&self) -> bool {
        matches!(self, Certificate::Connected { .. })
    }

    pub fn level(&self) -> Option<usize> {
        match self {
            Certificate::Connected { n, .. } => Some(*n),
            _ => None,
        }
    }
}

/// Number of small distance bounds listed in obstruction certificates.
const SAMPLE_BOUNDS: u64 = 5;

/// Whether `[x]` and `[y]` are in one component of the reduced power of
/// `G_ω` over `filter`, with the reason.
pub fn symbolic_connected(x: &SymbolicSequence, y: &SymbolicSequence, filter: &SymbolicFilter) -> Certificate {
    let d = difference(x, y);
    let obstruction = || Certificate::UnboundedDifference {
        slope_x: x.tail().0,
        slope_y: y.tail().0,
        samples: (1..=SAMPLE_BOUNDS).map(|m| (m, distance_set(x, y, m))).collect(),
    };
    // Distance sets only change at these bounds.
    let mut candidates: BTreeSet<u64> = match filter {
        SymbolicFilter::PrincipalFinite(k) => k.iter().map(|&i| gdist(x.value(i), y.value(i))).collect(),
        _ if d.slope != 0 => return obstruction(),
        _ => (0..d.start).map(|i| gdist(x.value(i), y.value(i))).collect(),
    };
    if d.slope == 0 {
        candidates.insert(d.offset.unsigned_abs() as u64);
    }
    candidates.insert(1);
    for m in candidates.into_iter().filter(|&m| m >= 1) {
        let set = distance_set(x, y, m);
        if filter.member(&set) {
            return Certificate::Connected { n: (m - 1) as usize, distance_set: set };
        }
    }
    obstruction()
}

/// One line of a disconnection trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub bound: u64,
    pub distance_set: DefinableIndexSet,
    pub finite: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisconnectionWitness {
    pub x: SymbolicSequence,
    pub y: SymbolicSequence,
    /// `d(x_i, y_i)` is `slope·i + offset` for all `i`.
    pub distance_slope: u64,
    pub distance_offset: u64,
    pub all_sets_finite: bool,
    pub trace: Vec<TraceStep>,
    pub frechet: Certificate,
}

/// `x = 0`, `y = i + 2`: at index `i` the distance is `i + 2 > i + 1`, so the
/// distance set for every bound is finite. No filter containing the cofinite
/// sets, and no non-principal ultrafilter, contains a finite set, so the pair
/// lies in different components of every such reduced power.
pub fn frechet_disconnection_witness(trace_len: u64) -> DisconnectionWitness {
    let x = SymbolicSequence::constant(0);
    let y = SymbolicSequence::affine(1, 2);
    let trace = (1..=trace_len)
        .map(|m| {
            let s = distance_set(&x, &y, m);
            TraceStep { bound: m, finite: s.is_finite(), distance_set: s }
        })
        .collect();
    DisconnectionWitness {
        all_sets_finite: all_distance_sets_finite(&x, &y),
        frechet: symbolic_connected(&x, &y, &SymbolicFilter::Frechet),
        distance_slope: 1,
        distance_offset: 2,
        trace,
        x,
        y,
    }
}

/// `n ↦ {i : X_i ⊨ φ_n^conn}` for `n < levels.len()`, constant afterwards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiameterProfile {
    pub levels: Vec<DefinableIndexSet>,
}

impl DiameterProfile {
    /// Every index carries a copy of `x`.
    pub fn homogeneous(x: &BinaryStructure) -> Self {
        let levels = (0..=x.size())
            .map(|n| if x.satisfies_conn_formula(n) { DefinableIndexSet::omega() } else { DefinableIndexSet::empty() })
            .collect();
        DiameterProfile { levels }
    }

    /// Every index carries `G_ω`, which has infinite diameter.
    pub fn linear_graph() -> Self {
        DiameterProfile { levels: vec![DefinableIndexSet::empty()] }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemarkOutcome {
    pub holds: bool,
    pub n: Option<usize>,
}

/// Whether some `{i : X_i ⊨ φ_n^conn}` is in the filter, for filters that
/// contain the cofinite sets.
pub fn remark_b_prime_check(profile: &DiameterProfile, filter: &SymbolicFilter) -> Result<RemarkOutcome> {
    if matches!(filter, SymbolicFilter::PrincipalFinite(_)) {
        return Err(Error::SymbolicPrecondition("filter must contain the cofinite sets".into()));
    }
    if profile.levels.is_empty() {
        return Err(Error::SymbolicPrecondition("profile has no levels".into()));
    }
    let n = profile.levels.iter().position(|s| filter.member(s));
    Ok(RemarkOutcome { holds: n.is_some(), n })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncationOutcome {
    pub symbolic_level: Option<usize>,
    pub finite_level: Option<usize>,
    pub agree: bool,
}

/// Runs the finite criterion on indices `0..=horizon` with every factor a
/// segment of `G_ω` long enough for all values, against the symbolic answer
/// for the same principal kernel.
pub fn truncation_check(
    x: &SymbolicSequence,
    y: &SymbolicSequence,
    kernel: &BTreeSet<u64>,
    horizon: u64,
) -> Result<TruncationOutcome> {
    if kernel.iter().any(|&k| k > horizon) {
        return Err(Error::SymbolicPrecondition("kernel extends past the truncation horizon".into()));
    }
    let symbolic = symbolic_connected(x, y, &SymbolicFilter::principal(kernel.clone())?);
    let values: Vec<(u64, u64)> = (0..=horizon).map(|i| (x.value(i), y.value(i))).collect();
    let top = values.iter().flat_map(|&(a, b)| [a, b]).max().unwrap_or(0);
    let line = BinaryStructure::linear(top as usize + 1)?;
    let factors = vec![line; values.len()];
    let filter = Filter::principal(values.len(), kernel.iter().map(|&k| k as usize).collect())?;
    let instance = Instance::new(&factors, &filter)?;
    let px = ProductPoint(values.iter().map(|&(a, _)| a as usize).collect());
    let py = ProductPoint(values.iter().map(|&(_, b)| b as usize).collect());
    let finite_level = instance.criterion_level(&px, &py)?;
    let symbolic_level = symbolic.level();
    Ok(TruncationOutcome { agree: symbolic_level == finite_level, symbolic_level, finite_level })
}
