//! Finite binary structures `⟨X, ρ⟩` and everything that lives inside one of
//! them: reflexive and symmetric closures, oriented paths, distance,
//! components and diameter.
//!
//! All distance and connectivity notions work on the reflexive closure of the
//! relation. Paths may walk an edge in either direction, one orientation bit
//! per step, so distance is breadth-first distance in the underlying
//! undirected graph.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of a universe `{0, …, size-1}`.
pub type Element = usize;

/// Direction in which one step of a path uses the relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Orientation {
    /// `a ρ b`
    Forward,
    /// `a ρ⁻¹ b`, i.e. `b ρ a`
    Inverse,
}

impl Orientation {
    pub fn bit(self) -> u8 {
        match self {
            Orientation::Forward => 0,
            Orientation::Inverse => 1,
        }
    }
}

impl From<Orientation> for u8 {
    fn from(o: Orientation) -> u8 {
        o.bit()
    }
}

impl TryFrom<u8> for Orientation {
    type Error = String;

    fn try_from(bit: u8) -> Result<Self, String> {
        match bit {
            0 => Ok(Orientation::Forward),
            1 => Ok(Orientation::Inverse),
            other => Err(format!("orientation bit must be 0 or 1, got {other}")),
        }
    }
}

/// Intermediate points `z₀ … z_{n-1}` and orientation pattern `ε ∈ 2^{n+1}`
/// of a path of length `n+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathWitness {
    pub points: Vec<Element>,
    pub pattern: Vec<Orientation>,
}

impl PathWitness {
    pub fn new(points: Vec<Element>, pattern: Vec<Orientation>) -> Result<Self> {
        let w = PathWitness { points, pattern };
        w.check_shape()?;
        Ok(w)
    }

    /// Number of steps, `n+1`.
    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }

    fn check_shape(&self) -> Result<()> {
        if self.pattern.len() != self.points.len() + 1 {
            return Err(Error::MalformedWitness(format!(
                "pattern has {} bits but {} points need {}",
                self.pattern.len(),
                self.points.len(),
                self.points.len() + 1
            )));
        }
        Ok(())
    }
}

/// A natural number or infinity. `Finite(_) < Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }

    /// `self ≤ bound` for a finite bound.
    pub fn at_most(self, bound: usize) -> bool {
        matches!(self, Distance::Finite(d) if d <= bound)
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// `⟨{0, …, size-1}, ρ⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BinaryStructure {
    size: usize,
    relation: BTreeSet<(Element, Element)>,
}

impl BinaryStructure {
    pub fn new(size: usize, edges: impl IntoIterator<Item = (Element, Element)>) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyUniverse);
        }
        let mut relation = BTreeSet::new();
        for (u, v) in edges {
            for e in [u, v] {
                if e >= size {
                    return Err(Error::ElementOutOfRange { element: e, size });
                }
            }
            relation.insert((u, v));
        }
        Ok(BinaryStructure { size, relation })
    }

    /// `size` isolated points.
    pub fn discrete(size: usize) -> Result<Self> {
        Self::new(size, [])
    }

    /// The directed path `0 → 1 → … → size-1`.
    pub fn path(size: usize) -> Result<Self> {
        Self::new(size, (1..size).map(|v| (v - 1, v)))
    }

    /// A finite segment of the linear graph on ω: `|m - n| = 1`, both directions.
    pub fn linear(size: usize) -> Result<Self> {
        Self::new(size, (1..size).flat_map(|v| [(v - 1, v), (v, v - 1)]))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn relation(&self) -> &BTreeSet<(Element, Element)> {
        &self.relation
    }

    pub fn relates(&self, u: Element, v: Element) -> bool {
        self.relation.contains(&(u, v))
    }

    /// `a ρ_R^ε b`.
    pub fn step_holds(&self, a: Element, b: Element, orientation: Orientation) -> bool {
        a == b
            || match orientation {
                Orientation::Forward => self.relates(a, b),
                Orientation::Inverse => self.relates(b, a),
            }
    }

    pub fn check_element(&self, e: Element) -> Result<()> {
        if e < self.size {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { element: e, size: self.size })
        }
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size).all(|e| self.relates(e, e))
    }

    pub fn is_symmetric(&self) -> bool {
        self.relation.iter().all(|&(u, v)| self.relates(v, u))
    }

    /// `⟨X, ρ ∪ Δ_X⟩`.
    pub fn reflexivize(&self) -> BinaryStructure {
        let mut relation = self.relation.clone();
        relation.extend((0..self.size).map(|e| (e, e)));
        BinaryStructure { size: self.size, relation }
    }

    /// `⟨X, ρ ∪ ρ⁻¹⟩`.
    pub fn symmetrize(&self) -> BinaryStructure {
        let mut relation = self.relation.clone();
        relation.extend(self.relation.iter().map(|&(u, v)| (v, u)));
        BinaryStructure { size: self.size, relation }
    }

    /// Whether `x ρ_R^{ε₀} z₀ ρ_R^{ε₁} … z_{n-1} ρ_R^{εₙ} y` holds.
    pub fn check_path(&self, x: Element, y: Element, witness: &PathWitness) -> Result<bool> {
        self.check_element(x)?;
        self.check_element(y)?;
        for &z in &witness.points {
            self.check_element(z)?;
        }
        witness.check_shape()?;
        let nodes = std::iter::once(x)
            .chain(witness.points.iter().copied())
            .chain(std::iter::once(y))
            .collect::<Vec<_>>();
        Ok(nodes
            .windows(2)
            .zip(&witness.pattern)
            .all(|(pair, &o)| self.step_holds(pair[0], pair[1], o)))
    }

    /// Undirected neighbour lists without loops, sorted ascending.
    fn neighbours(&self) -> Vec<Vec<Element>> {
        let mut adj = vec![BTreeSet::new(); self.size];
        for &(u, v) in &self.relation {
            if u != v {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
        adj.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    fn bfs(adj: &[Vec<Element>], source: Element) -> Vec<Distance> {
        let mut dist = vec![Distance::Infinite; adj.len()];
        dist[source] = Distance::Finite(0);
        let mut queue = VecDeque::from([(source, 0usize)]);
        while let Some((u, d)) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == Distance::Infinite {
                    dist[v] = Distance::Finite(d + 1);
                    queue.push_back((v, d + 1));
                }
            }
        }
        dist
    }

    /// Distances from `x` to every element.
    pub fn distances_from(&self, x: Element) -> Result<Vec<Distance>> {
        self.check_element(x)?;
        Ok(Self::bfs(&self.neighbours(), x))
    }

    pub fn distance(&self, x: Element, y: Element) -> Result<Distance> {
        self.check_element(y)?;
        Ok(self.distances_from(x)?[y])
    }

    /// All-pairs distances, one BFS per source.
    pub fn distance_table(&self) -> DistanceTable {
        let adj = self.neighbours();
        let rows = (0..self.size).map(|x| Self::bfs(&adj, x)).collect();
        DistanceTable { rows }
    }

    /// Components ordered by least element, members ascending.
    pub fn components(&self) -> Vec<Vec<Element>> {
        let adj = self.neighbours();
        let mut label = vec![usize::MAX; self.size];
        let mut out: Vec<Vec<Element>> = Vec::new();
        for start in 0..self.size {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            label[start] = id;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if label[v] == usize::MAX {
                        label[v] = id;
                        members.push(v);
                        stack.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Every two points are joined by a path of length at most `n+1`.
    pub fn satisfies_conn_formula(&self, n: usize) -> bool {
        self.diameter().at_most(n + 1)
    }

    pub fn diameter(&self) -> Distance {
        self.distance_table().diameter()
    }

    /// The shortest path from `x` to `y` whose orientation pattern is
    /// lexicographically least (forward before inverse), ties on points broken
    /// by the least element. `None` when `y` is unreachable or `x == y`.
    pub fn least_shortest_path(&self, x: Element, y: Element) -> Result<Option<PathWitness>> {
        self.check_element(x)?;
        self.check_element(y)?;
        if x == y {
            return Ok(None);
        }
        let adj = self.neighbours();
        let to_y = Self::bfs(&adj, y);
        let Distance::Finite(total) = to_y[x] else {
            return Ok(None);
        };
        // Frontier of nodes reachable by the best pattern prefix so far.
        let mut layers: Vec<BTreeSet<Element>> = vec![BTreeSet::from([x])];
        let mut pattern = Vec::with_capacity(total);
        for remaining in (0..total).rev() {
            let frontier = layers.last().expect("nonempty");
            let advance = |o: Orientation| -> BTreeSet<Element> {
                frontier
                    .iter()
                    .flat_map(|&u| adj[u].iter().map(move |&w| (u, w)))
                    .filter(|&(u, w)| to_y[w] == Distance::Finite(remaining) && self.step_holds(u, w, o))
                    .map(|(_, w)| w)
                    .collect()
            };
            let forward = advance(Orientation::Forward);
            let (o, next) = if forward.is_empty() {
                (Orientation::Inverse, advance(Orientation::Inverse))
            } else {
                (Orientation::Forward, forward)
            };
            pattern.push(o);
            layers.push(next);
        }
        // Keep only nodes that still reach y under the chosen pattern.
        let mut alive = vec![BTreeSet::new(); layers.len()];
        alive[total] = BTreeSet::from([y]);
        for k in (0..total).rev() {
            alive[k] = layers[k]
                .iter()
                .copied()
                .filter(|&u| alive[k + 1].iter().any(|&w| self.step_holds(u, w, pattern[k])))
                .collect();
        }
        let mut points = Vec::with_capacity(total - 1);
        let mut cur = x;
        for k in 0..total - 1 {
            cur = *alive[k + 1]
                .iter()
                .find(|&&w| self.step_holds(cur, w, pattern[k]))
                .expect("pruned layer keeps a successor");
            points.push(cur);
        }
        Ok(Some(PathWitness { points, pattern }))
    }

    /// A path of exactly `steps` steps from `x` to `y`: the least shortest path
    /// followed by forward loops at `y`. `None` if `d(x,y) > steps`.
    pub fn padded_path(&self, x: Element, y: Element, steps: usize) -> Result<Option<PathWitness>> {
        if steps == 0 {
            return Err(Error::MalformedWitness("a path has at least one step".into()));
        }
        let mut w = match self.least_shortest_path(x, y)? {
            Some(w) => w,
            None if x == y => PathWitness { points: Vec::new(), pattern: vec![Orientation::Forward] },
            None => return Ok(None),
        };
        if w.len() > steps {
            return Ok(None);
        }
        while w.len() < steps {
            w.points.push(y);
            w.pattern.push(Orientation::Forward);
        }
        Ok(Some(w))
    }
}

impl fmt::Display for BinaryStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}, {{", self.size)?;
        for (k, (u, v)) in self.relation.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({u},{v})")?;
        }
        f.write_str("}⟩")
    }
}

/// All-pairs distance matrix of one structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    rows: Vec<Vec<Distance>>,
}

impl DistanceTable {
    pub fn get(&self, x: Element, y: Element) -> Distance {
        self.rows[x][y]
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn diameter(&self) -> Distance {
        self.rows.iter().flatten().copied().max().unwrap_or(Distance::Finite(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(size: usize, edges: &[(usize, usize)]) -> BinaryStructure {
        BinaryStructure::new(size, edges.iter().copied()).unwrap()
    }

    fn e2() -> BinaryStructure {
        s(2, &[(0, 1)])
    }

    fn d2() -> BinaryStructure {
        s(2, &[])
    }

    fn p3() -> BinaryStructure {
        s(3, &[(0, 1), (1, 2)])
    }

    use Orientation::{Forward as F, Inverse as B};

    /// Every witness with `steps` steps over a universe of `size`.
    fn all_witnesses(size: usize, steps: usize) -> Vec<PathWitness> {
        let mut out = Vec::new();
        let n = steps - 1;
        let point_count = size.pow(n as u32);
        for code in 0..point_count {
            let mut c = code;
            let points: Vec<usize> = (0..n)
                .map(|_| {
                    let p = c % size;
                    c /= size;
                    p
                })
                .collect();
            for bits in 0..(1u32 << steps) {
                let pattern = (0..steps)
                    .map(|k| if bits >> k & 1 == 1 { B } else { F })
                    .collect();
                out.push(PathWitness { points: points.clone(), pattern });
            }
        }
        out
    }

    /// Least `ℓ ≥ 1` with some witness of length `ℓ`, by enumeration.
    fn enumerated_distance(x: &BinaryStructure, a: usize, b: usize, max: usize) -> Distance {
        if a == b {
            return Distance::Finite(0);
        }
        for steps in 1..=max {
            if all_witnesses(x.size(), steps).iter().any(|w| x.check_path(a, b, w).unwrap()) {
                return Distance::Finite(steps);
            }
        }
        Distance::Infinite
    }

    /// Warshall closure of the symmetrized reflexive relation.
    fn closure(x: &BinaryStructure) -> Vec<Vec<bool>> {
        let n = x.size();
        let mut m = vec![vec![false; n]; n];
        for i in 0..n {
            m[i][i] = true;
        }
        for &(u, v) in x.relation() {
            m[u][v] = true;
            m[v][u] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if m[i][k] && m[k][j] {
                        m[i][j] = true;
                    }
                }
            }
        }
        m
    }

    fn structure_strategy(max_size: usize) -> impl Strategy<Value = BinaryStructure> {
        (1..=max_size).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                let edges = bits
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b)
                    .map(|(k, _)| (k / n, k % n));
                BinaryStructure::new(n, edges).unwrap()
            })
        })
    }

    #[test]
    fn rejects_empty_universe_and_out_of_range_edges() {
        assert_eq!(BinaryStructure::new(0, []), Err(Error::EmptyUniverse));
        assert_eq!(
            BinaryStructure::new(2, [(0, 2)]),
            Err(Error::ElementOutOfRange { element: 2, size: 2 })
        );
    }

    #[test]
    fn reflexivize_examples() {
        assert_eq!(e2().reflexivize(), s(2, &[(0, 1), (0, 0), (1, 1)]));
        let r = p3().reflexivize();
        assert_eq!(r.reflexivize(), r);
        assert_eq!(s(1, &[]).reflexivize(), s(1, &[(0, 0)]));
    }

    #[test]
    fn symmetrize_examples() {
        assert_eq!(e2().symmetrize(), s(2, &[(0, 1), (1, 0)]));
        let sym = s(2, &[(0, 1), (1, 0)]);
        assert_eq!(sym.symmetrize(), sym);
        assert_eq!(s(3, &[(0, 1), (2, 1)]).symmetrize(), s(3, &[(0, 1), (1, 0), (2, 1), (1, 2)]));
    }

    #[test]
    fn check_path_examples() {
        let one = |o| PathWitness::new(vec![], vec![o]).unwrap();
        assert!(e2().check_path(0, 1, &one(F)).unwrap());
        assert!(e2().check_path(1, 0, &one(B)).unwrap());
        assert!(!e2().check_path(1, 0, &one(F)).unwrap());
        for w in all_witnesses(2, 3) {
            assert!(!d2().check_path(0, 1, &w).unwrap());
        }
    }

    #[test]
    fn check_path_errors() {
        let w = PathWitness { points: vec![5], pattern: vec![F, F] };
        assert!(matches!(e2().check_path(0, 1, &w), Err(Error::ElementOutOfRange { .. })));
        assert!(matches!(
            e2().check_path(0, 3, &PathWitness { points: vec![], pattern: vec![F] }),
            Err(Error::ElementOutOfRange { .. })
        ));
        let bad = PathWitness { points: vec![0], pattern: vec![F] };
        assert!(matches!(e2().check_path(0, 1, &bad), Err(Error::MalformedWitness(_))));
        assert!(PathWitness::new(vec![], vec![]).is_err());
    }

    #[test]
    fn orientation_bit_serde() {
        assert_eq!(Orientation::try_from(0u8), Ok(F));
        assert_eq!(Orientation::try_from(1u8), Ok(B));
        assert!(Orientation::try_from(2u8).is_err());
        assert_eq!(u8::from(B), 1);
    }

    #[test]
    fn distance_examples() {
        // enumeration oracle: d(0,2) in P3
        assert_eq!(enumerated_distance(&p3(), 0, 2, 3), Distance::Finite(2));
        assert_eq!(p3().distance(0, 2).unwrap(), Distance::Finite(2));
        assert_eq!(p3().distance(1, 1).unwrap(), Distance::Finite(0));
        assert_eq!(d2().distance(0, 1).unwrap(), Distance::Infinite);
        assert!(p3().distance(0, 3).is_err());
    }

    #[test]
    fn components_examples() {
        let l = s(3, &[(0, 1)]);
        let m = closure(&l);
        assert!(m[0][1] && !m[0][2] && !m[1][2]);
        assert_eq!(l.components(), vec![vec![0, 1], vec![2]]);
        assert!(closure(&p3()).iter().flatten().all(|&b| b));
        assert_eq!(p3().components(), vec![vec![0, 1, 2]]);
        assert_eq!(s(1, &[]).components(), vec![vec![0]]);
    }

    #[test]
    fn connectivity_examples() {
        assert!(p3().is_connected());
        assert!(!d2().is_connected());
        assert!(s(1, &[]).is_connected());
    }

    #[test]
    fn conn_formula_examples() {
        assert!(e2().satisfies_conn_formula(0));
        assert!(!p3().satisfies_conn_formula(0));
        assert!(p3().satisfies_conn_formula(1));
        for n in 0..5 {
            assert!(!d2().satisfies_conn_formula(n));
        }
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(p3().diameter(), Distance::Finite(2));
        assert_eq!(e2().diameter(), Distance::Finite(1));
        assert_eq!(s(3, &[(0, 1)]).diameter(), Distance::Infinite);
        assert_eq!(s(1, &[]).diameter(), Distance::Finite(0));
    }

    #[test]
    fn least_shortest_path_prefers_forward() {
        // 0 <- 1 -> 2 and 0 -> 3 -> 2: both length 2; forward-first wins.
        let x = s(4, &[(1, 0), (1, 2), (0, 3), (3, 2)]);
        let w = x.least_shortest_path(0, 2).unwrap().unwrap();
        assert_eq!(w.pattern, vec![F, F]);
        assert_eq!(w.points, vec![3]);
        let rev = s(2, &[(1, 0)]);
        let w = rev.least_shortest_path(0, 1).unwrap().unwrap();
        assert_eq!(w.pattern, vec![B]);
    }

    #[test]
    fn padded_path_lengths() {
        let w = p3().padded_path(0, 2, 4).unwrap().unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.points, vec![1, 2, 2]);
        assert!(p3().check_path(0, 2, &w).unwrap());
        assert_eq!(p3().padded_path(0, 2, 1).unwrap(), None);
        let w = p3().padded_path(1, 1, 2).unwrap().unwrap();
        assert_eq!(w.pattern, vec![F, F]);
        assert!(d2().padded_path(0, 1, 3).unwrap().is_none());
    }

    proptest! {
        #[test]
        fn witness_exists_iff_distance_bounded(x in structure_strategy(4)) {
            let n = x.size();
            for a in 0..n {
                for b in 0..n {
                    if a == b { continue; }
                    let d = x.distance(a, b).unwrap();
                    for steps in 1..=3 {
                        let exists = all_witnesses(n, steps).iter().any(|w| x.check_path(a, b, w).unwrap());
                        prop_assert_eq!(exists, d.at_most(steps));
                    }
                }
            }
        }

        #[test]
        fn distance_matches_bfs_on_symmetrized_closure(x in structure_strategy(5)) {
            let sym = x.reflexivize().symmetrize();
            for a in 0..x.size() {
                for b in 0..x.size() {
                    prop_assert_eq!(x.distance(a, b).unwrap(), sym.distance(a, b).unwrap());
                }
            }
        }

        #[test]
        fn distance_is_a_metric(x in structure_strategy(5)) {
            let t = x.distance_table();
            let n = x.size();
            for a in 0..n {
                for b in 0..n {
                    prop_assert_eq!(t.get(a, b), t.get(b, a));
                    for c in 0..n {
                        if let (Some(ab), Some(bc)) = (t.get(a, b).finite(), t.get(b, c).finite()) {
                            prop_assert!(t.get(a, c).at_most(ab + bc));
                        }
                    }
                }
            }
        }

        #[test]
        fn conn_formula_is_monotone(x in structure_strategy(5)) {
            for n in 0..6 {
                if x.satisfies_conn_formula(n) {
                    prop_assert!(x.satisfies_conn_formula(n + 1));
                }
                prop_assert_eq!(x.satisfies_conn_formula(n), x.diameter().at_most(n + 1));
            }
        }

        #[test]
        fn components_agree_with_closure(x in structure_strategy(5)) {
            let m = closure(&x);
            let comps = x.components();
            let mut seen = vec![0usize; x.size()];
            for (id, c) in comps.iter().enumerate() {
                for &e in c { seen[e] += 1; let _ = id; }
            }
            prop_assert!(seen.iter().all(|&c| c == 1));
            let class = |e: usize| comps.iter().position(|c| c.contains(&e)).unwrap();
            for a in 0..x.size() {
                for b in 0..x.size() {
                    prop_assert_eq!(class(a) == class(b), m[a][b]);
                    prop_assert_eq!(class(a) == class(b), x.distance(a, b).unwrap().is_finite());
                }
            }
        }

        #[test]
        fn finite_diameter_is_below_size(x in structure_strategy(6)) {
            if let Some(d) = x.diameter().finite() {
                prop_assert!(d < x.size());
            }
        }

        #[test]
        fn least_shortest_path_has_least_pattern(x in structure_strategy(4)) {
            for a in 0..x.size() {
                for b in 0..x.size() {
                    if let Some(w) = x.least_shortest_path(a, b).unwrap() {
                        let best = all_witnesses(x.size(), w.len())
                            .into_iter()
                            .filter(|c| x.check_path(a, b, c).unwrap())
                            .map(|c| c.pattern)
                            .min()
                            .unwrap();
                        prop_assert_eq!(w.pattern, best);
                    }
                }
            }
        }

        #[test]
        fn least_shortest_path_validates(x in structure_strategy(5)) {
            for a in 0..x.size() {
                for b in 0..x.size() {
                    let w = x.least_shortest_path(a, b).unwrap();
                    match x.distance(a, b).unwrap() {
                        Distance::Finite(0) => prop_assert!(w.is_none()),
                        Distance::Finite(d) => {
                            let w = w.unwrap();
                            prop_assert_eq!(w.len(), d);
                            prop_assert!(x.check_path(a, b, &w).unwrap());
                        }
                        Distance::Infinite => prop_assert!(w.is_none()),
                    }
                }
            }
        }
    }
}
