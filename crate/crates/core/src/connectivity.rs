//! Connectivity of reduced products, decided without looking at the quotient.
//!
//! Two classes `[x]`, `[y]` lie in one component exactly when, for some `n`,
//! the set of coordinates where `d(x_i, y_i) ≤ n+1` belongs to the filter.
//! The whole product is connected exactly when there are a finite `K` of
//! connected factors and an `n` with `{i : X_i has diameter ≤ n+1} ∪ K` in
//! the filter. Both facts are implemented here as direct computations, next
//! to a plain breadth-first search on the materialized quotient they are
//! checked against, and a constructor for explicit paths between classes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::filter::{Filter, IndexSet};
use crate::product::{check_point, equiv_mod_filter, BuildOptions, ProductPoint, ReducedProduct};
use crate::structure::{BinaryStructure, DistanceTable, Element, Orientation, PathWitness};

/// Whether the quotient structure has one component (BFS oracle).
pub fn connected_bfs(rp: &ReducedProduct) -> bool {
    rp.quotient().is_connected()
}

/// Components of the quotient as sets of class indices (BFS oracle).
pub fn components_bfs(rp: &ReducedProduct) -> Vec<Vec<usize>> {
    rp.quotient().components()
}

/// `A_n = {i : X_i ⊨ φ_n^conn}` for `n ≤ bound`, its layers and the
/// disconnected indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiameterStratification {
    pub bound: usize,
    /// `levels[n] = A_n`.
    pub levels: Vec<IndexSet>,
    /// `layers[0] = A_0`, `layers[n] = A_n ∖ A_{n-1}`.
    pub layers: Vec<IndexSet>,
    /// Indices whose factor is disconnected.
    pub infinite: IndexSet,
}

/// A pair `(K, n)`: every factor in `K` is connected and `A_n ∪ K ∈ Φ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionBWitness {
    pub k: IndexSet,
    pub n: usize,
}

/// One application of path lifting: a path `from ρ^{ε₀} t⁰ … t^{n-1} ρ^{εₙ} to`
/// in the reduced product, moving only the coordinates in `coordinates`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathSegment {
    pub coordinates: IndexSet,
    pub from: ProductPoint,
    pub to: ProductPoint,
    pub points: Vec<ProductPoint>,
    pub pattern: Vec<Orientation>,
}

impl PathSegment {
    pub fn steps(&self) -> usize {
        self.pattern.len()
    }

    /// Consecutive tuples of the segment, endpoints included.
    pub fn waypoints(&self) -> impl Iterator<Item = &ProductPoint> {
        std::iter::once(&self.from).chain(&self.points).chain(std::iter::once(&self.to))
    }
}

/// A chain of segments from `start` to `end`, with `end ~Φ target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductPathWitness {
    pub start: ProductPoint,
    pub end: ProductPoint,
    pub target: ProductPoint,
    /// Common length `n+1` of the lifted coordinate paths.
    pub step_bound: usize,
    pub segments: Vec<PathSegment>,
}

impl ProductPathWitness {
    pub fn total_steps(&self) -> usize {
        self.segments.iter().map(PathSegment::steps).sum()
    }
}

/// Both connectivity oracles on one finite instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub bfs_connected: bool,
    pub condition_b_witness: Option<ConditionBWitness>,
    pub agree: bool,
}

/// Factors (reflexive closures) and a filter, with per-factor distance tables.
#[derive(Debug, Clone)]
pub struct Instance {
    factors: Vec<BinaryStructure>,
    filter: Filter,
    tables: Vec<DistanceTable>,
    connected: Vec<bool>,
}

impl Instance {
    pub fn new(factors: &[BinaryStructure], filter: &Filter) -> Result<Self> {
        if factors.len() != filter.index_size() {
            return Err(Error::DimensionMismatch { expected: filter.index_size(), actual: factors.len() });
        }
        let factors: Vec<BinaryStructure> = factors.iter().map(BinaryStructure::reflexivize).collect();
        let tables: Vec<DistanceTable> = factors.iter().map(BinaryStructure::distance_table).collect();
        let connected = tables.iter().map(|t| t.diameter().is_finite()).collect();
        Ok(Instance { factors, filter: filter.clone(), tables, connected })
    }

    pub fn factors(&self) -> &[BinaryStructure] {
        &self.factors
    }

    pub fn filter(&self) -> &Filter {
        &self.filter
    }

    /// `max_i |X_i|`. Finite distances in factor `i` are below `|X_i|`, so
    /// nothing changes for larger `n`.
    pub fn bound(&self) -> usize {
        self.factors.iter().map(BinaryStructure::size).max().unwrap_or(1)
    }

    pub fn build_product(&self, cap: u128) -> Result<ReducedProduct> {
        ReducedProduct::build_with(&self.factors, &self.filter, BuildOptions { cap, reflexivize: true })
    }

    pub fn stratify(&self) -> DiameterStratification {
        let bound = self.bound();
        let levels: Vec<IndexSet> = (0..=bound)
            .map(|n| (0..self.factors.len()).filter(|&i| self.tables[i].diameter().at_most(n + 1)).collect())
            .collect();
        let layers = levels
            .iter()
            .enumerate()
            .map(|(n, a)| match n {
                0 => a.clone(),
                _ => a.difference(&levels[n - 1]).copied().collect(),
            })
            .collect();
        let infinite = (0..self.factors.len()).filter(|&i| !self.connected[i]).collect();
        DiameterStratification { bound, levels, layers, infinite }
    }

    /// For each `n ≤ bound`, the least `K` that could complete `A_n` to a
    /// member of the filter (`kernel ∖ A_n`), kept only when every factor in
    /// it is connected.
    pub fn condition_b_candidates(&self) -> Vec<ConditionBWitness> {
        let strat = self.stratify();
        strat
            .levels
            .iter()
            .enumerate()
            .filter_map(|(n, a)| {
                let k: IndexSet = self.filter.kernel().difference(a).copied().collect();
                k.iter().all(|&i| self.connected[i]).then_some(ConditionBWitness { k, n })
            })
            .collect()
    }

    /// A witness with the fewest exceptions `K`, then the least `n`.
    pub fn condition_b(&self) -> Option<ConditionBWitness> {
        self.condition_b_candidates().into_iter().min_by_key(|w| (w.k.len(), w.n))
    }

    fn check(&self, p: &ProductPoint) -> Result<()> {
        check_point(&self.factors, p)
    }

    /// `{i : d(x_i, y_i) ≤ n+1}`.
    pub fn distance_set(&self, x: &ProductPoint, y: &ProductPoint, n: usize) -> Result<IndexSet> {
        self.check(x)?;
        self.check(y)?;
        Ok((0..self.factors.len()).filter(|&i| self.tables[i].get(x.0[i], y.0[i]).at_most(n + 1)).collect())
    }

    /// The least `n ≤ bound` whose distance set is in the filter.
    pub fn criterion_level(&self, x: &ProductPoint, y: &ProductPoint) -> Result<Option<usize>> {
        self.check(x)?;
        self.check(y)?;
        Ok((0..=self.bound()).find(|&n| {
            self.filter.member_by(|i| self.tables[i].get(x.0[i], y.0[i]).at_most(n + 1))
        }))
    }

    /// `[x]_Φ` and `[y]_Φ` are in the same component.
    pub fn connected_criterion(&self, x: &ProductPoint, y: &ProductPoint) -> Result<bool> {
        Ok(self.criterion_level(x, y)?.is_some())
    }

    /// Components of `rp` from pairwise criterion tests on representatives,
    /// in the same format as [`components_bfs`].
    pub fn components_criterion(&self, rp: &ReducedProduct) -> Result<Vec<Vec<usize>>> {
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (c, rep) in rp.representatives().iter().enumerate() {
            let mut home = None;
            for (g, members) in groups.iter().enumerate() {
                if self.connected_criterion(rp.representative(members[0]), rep)? {
                    home = Some(g);
                    break;
                }
            }
            match home {
                Some(g) => groups[g].push(c),
                None => groups.push(vec![c]),
            }
        }
        Ok(groups)
    }

    /// Lift coordinate paths sharing one orientation pattern to a path in the
    /// reduced product. Coordinates outside `coordinates` must already agree
    /// and stay fixed. An empty coordinate set with `x = y` gives a segment
    /// of zero steps.
    pub fn lift_path(
        &self,
        x: &ProductPoint,
        y: &ProductPoint,
        coordinates: &IndexSet,
        pattern: &[Orientation],
        coordinate_witnesses: &BTreeMap<usize, Vec<Element>>,
    ) -> Result<PathSegment> {
        self.check(x)?;
        self.check(y)?;
        if let Some(i) = (0..self.factors.len()).find(|i| !coordinates.contains(i) && x.0[*i] != y.0[*i]) {
            return Err(Error::LiftPrecondition(format!("coordinate {i} moves but is outside the lifted set")));
        }
        if coordinates.is_empty() {
            return Ok(PathSegment {
                coordinates: IndexSet::new(),
                from: x.clone(),
                to: y.clone(),
                points: Vec::new(),
                pattern: Vec::new(),
            });
        }
        if pattern.is_empty() {
            return Err(Error::LiftPrecondition("orientation pattern is empty".into()));
        }
        if coordinate_witnesses.keys().ne(coordinates.iter()) {
            return Err(Error::LiftPrecondition("coordinate witnesses do not match the lifted set".into()));
        }
        let n = pattern.len() - 1;
        for (&i, points) in coordinate_witnesses {
            if i >= self.factors.len() {
                return Err(Error::IndexOutOfRange { index: i, size: self.factors.len() });
            }
            let w = PathWitness::new(points.clone(), pattern.to_vec())
                .map_err(|e| Error::LiftPrecondition(format!("coordinate {i}: {e}")))?;
            if !self.factors[i].check_path(x.0[i], y.0[i], &w)? {
                return Err(Error::LiftPrecondition(format!(
                    "coordinate {i}: not a path from {} to {} under the shared pattern",
                    x.0[i], y.0[i]
                )));
            }
        }
        let points = (0..n)
            .map(|m| {
                ProductPoint(
                    (0..self.factors.len())
                        .map(|i| match coordinate_witnesses.get(&i) {
                            Some(z) => z[m],
                            None => x.0[i],
                        })
                        .collect(),
                )
            })
            .collect();
        Ok(PathSegment {
            coordinates: coordinates.clone(),
            from: x.clone(),
            to: y.clone(),
            points,
            pattern: pattern.to_vec(),
        })
    }

    /// `[a]_Φ ρ^ε [b]_Φ`.
    pub fn quotient_step(&self, a: &ProductPoint, b: &ProductPoint, orientation: Orientation) -> bool {
        self.filter.member_by(|i| self.factors[i].step_holds(a.0[i], b.0[i], orientation))
    }

    /// Every step of the segment holds in the reduced product.
    pub fn segment_validates(&self, segment: &PathSegment) -> bool {
        let nodes: Vec<&ProductPoint> = segment.waypoints().collect();
        if nodes.iter().any(|p| self.check(p).is_err()) {
            return false;
        }
        if segment.pattern.is_empty() {
            return segment.points.is_empty() && segment.from == segment.to;
        }
        nodes.len() == segment.pattern.len() + 1
            && nodes.windows(2).zip(&segment.pattern).all(|(w, &o)| self.quotient_step(w[0], w[1], o))
    }

    /// Segments chain from `start` to `end`, each validates, and `end ~Φ target`.
    pub fn witness_validates(&self, witness: &ProductPathWitness) -> bool {
        let mut cur = &witness.start;
        for seg in &witness.segments {
            if &seg.from != cur || !self.segment_validates(seg) {
                return false;
            }
            cur = &seg.to;
        }
        cur == &witness.end
            && equiv_mod_filter(&self.filter, &witness.end, &witness.target).unwrap_or(false)
    }

    /// An explicit path from `[x]_Φ` to `[y]_Φ`, or `None` when they lie in
    /// different components.
    ///
    /// With `n` the least criterion level and `A` its distance set, each
    /// coordinate in `A` gets the least shortest path padded with loops to
    /// `n+1` steps. Coordinates are grouped by orientation pattern; the groups,
    /// in increasing pattern order, are switched from `x_i` to `y_i` one at a
    /// time, each switch lifted to one segment. The last waypoint agrees with
    /// `y` on `A` and with `x` elsewhere.
    pub fn build_path_witness(&self, x: &ProductPoint, y: &ProductPoint) -> Result<Option<ProductPathWitness>> {
        self.check(x)?;
        self.check(y)?;
        if equiv_mod_filter(&self.filter, x, y)? {
            return Ok(Some(ProductPathWitness {
                start: x.clone(),
                end: x.clone(),
                target: y.clone(),
                step_bound: 0,
                segments: Vec::new(),
            }));
        }
        let Some(n) = self.criterion_level(x, y)? else {
            return Ok(None);
        };
        let mut groups: BTreeMap<Vec<Orientation>, BTreeMap<usize, Vec<Element>>> = BTreeMap::new();
        for i in self.distance_set(x, y, n)? {
            let w = self.factors[i]
                .padded_path(x.0[i], y.0[i], n + 1)?
                .expect("coordinate is within the distance bound");
            groups.entry(w.pattern).or_default().insert(i, w.points);
        }
        let mut segments = Vec::with_capacity(groups.len());
        let mut cur = x.clone();
        for (pattern, witnesses) in &groups {
            let mut next = cur.clone();
            for &i in witnesses.keys() {
                next.0[i] = y.0[i];
            }
            let coordinates: IndexSet = witnesses.keys().copied().collect();
            segments.push(self.lift_path(&cur, &next, &coordinates, pattern, witnesses)?);
            cur = next;
        }
        Ok(Some(ProductPathWitness {
            start: x.clone(),
            end: cur,
            target: y.clone(),
            step_bound: n + 1,
            segments,
        }))
    }
}

/// BFS connectivity of the materialized product next to the condition search.
pub fn verify_equivalence(factors: &[BinaryStructure], filter: &Filter, cap: u128) -> Result<EquivalenceReport> {
    let instance = Instance::new(factors, filter)?;
    let rp = instance.build_product(cap)?;
    let bfs_connected = connected_bfs(&rp);
    let condition_b_witness = instance.condition_b();
    let agree = bfs_connected == condition_b_witness.is_some();
    Ok(EquivalenceReport { bfs_connected, condition_b_witness, agree })
}
