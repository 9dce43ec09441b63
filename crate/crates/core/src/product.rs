//! Direct products, the `~Φ` equivalence and materialized reduced products.
//!
//! Two tuples are identified when the set of coordinates on which they agree
//! is a member of the filter. Because membership is "contains the kernel",
//! a class is determined by its coordinates on the kernel, and classes are
//! numbered by those coordinates in mixed radix (first kernel index most
//! significant). The canonical representative of a class is its
//! lexicographically least tuple: kernel coordinates as given, zeros elsewhere.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::filter::{Filter, IndexSet};
use crate::structure::{BinaryStructure, Element, Orientation};

/// Default bound on the number of tuples a product build may enumerate.
pub const DEFAULT_CAP: u128 = 1_000_000;

/// Above this many classes the quotient relation is computed from kernel
/// edges instead of pairwise representative tests.
const PAIRWISE_CLASS_LIMIT: usize = 1024;

/// Exhaustive well-definedness check runs up to this many tuples.
const WELL_DEFINED_CHECK_LIMIT: u128 = 512;

/// `⟨x_i : i ∈ I⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ProductPoint(pub Vec<Element>);

impl ProductPoint {
    pub fn coords(&self) -> &[Element] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `x↾J` for `J` given in increasing order.
    pub fn restrict(&self, domain: &[usize]) -> ProductPoint {
        ProductPoint(domain.iter().map(|&i| self.0[i]).collect())
    }
}

impl From<Vec<Element>> for ProductPoint {
    fn from(v: Vec<Element>) -> Self {
        ProductPoint(v)
    }
}

impl fmt::Display for ProductPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Checks that `point` is a tuple of `factors`.
pub fn check_point(factors: &[BinaryStructure], point: &ProductPoint) -> Result<()> {
    if point.dim() != factors.len() {
        return Err(Error::DimensionMismatch { expected: factors.len(), actual: point.dim() });
    }
    for (x, &c) in factors.iter().zip(point.coords()) {
        x.check_element(c)?;
    }
    Ok(())
}

/// `{i : x_i = y_i}`.
pub fn agreement_set(x: &ProductPoint, y: &ProductPoint) -> IndexSet {
    x.0.iter().zip(&y.0).enumerate().filter(|(_, (a, b))| a == b).map(|(i, _)| i).collect()
}

/// `x ~Φ y`.
pub fn equiv_mod_filter(filter: &Filter, x: &ProductPoint, y: &ProductPoint) -> Result<bool> {
    for p in [x, y] {
        if p.dim() != filter.index_size() {
            return Err(Error::DimensionMismatch { expected: filter.index_size(), actual: p.dim() });
        }
    }
    Ok(filter.member(&agreement_set(x, y)))
}

/// `{i : x_i ρ_i^ε y_i}` on the relations exactly as given.
pub fn relation_set(
    factors: &[BinaryStructure],
    x: &ProductPoint,
    y: &ProductPoint,
    orientation: Orientation,
) -> IndexSet {
    factors
        .iter()
        .enumerate()
        .filter(|&(i, f)| match orientation {
            Orientation::Forward => f.relates(x.0[i], y.0[i]),
            Orientation::Inverse => f.relates(y.0[i], x.0[i]),
        })
        .map(|(i, _)| i)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuildOptions {
    /// Maximum number of tuples `Π |X_i|` to enumerate.
    pub cap: u128,
    /// Add all loops to every factor before forming the product. Connectivity
    /// semantics need this; formula preservation checks turn it off.
    pub reflexivize: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { cap: DEFAULT_CAP, reflexivize: true }
    }
}

impl BuildOptions {
    pub fn raw() -> Self {
        BuildOptions { reflexivize: false, ..Self::default() }
    }
}

/// `(Π X_i)/Φ` with every class and the quotient relation materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedProduct {
    factors: Vec<BinaryStructure>,
    filter: Filter,
    options: BuildOptions,
    kernel: Vec<usize>,
    representatives: Vec<ProductPoint>,
    class_sizes: Vec<u128>,
    quotient: BinaryStructure,
    tuple_count: u128,
}

impl ReducedProduct {
    pub fn build(factors: &[BinaryStructure], filter: &Filter) -> Result<Self> {
        Self::build_with(factors, filter, BuildOptions::default())
    }

    /// The direct product: `Φ = {I}`, one tuple per class.
    pub fn direct(factors: &[BinaryStructure]) -> Result<Self> {
        Self::build(factors, &Filter::trivial(factors.len())?)
    }

    pub fn build_with(factors: &[BinaryStructure], filter: &Filter, options: BuildOptions) -> Result<Self> {
        if factors.len() != filter.index_size() {
            return Err(Error::DimensionMismatch { expected: filter.index_size(), actual: factors.len() });
        }
        let tuple_count = factors
            .iter()
            .try_fold(1u128, |acc, f| acc.checked_mul(f.size() as u128))
            .unwrap_or(u128::MAX);
        if tuple_count > options.cap {
            return Err(Error::SizeCap { tuples: tuple_count, cap: options.cap });
        }
        let factors: Vec<BinaryStructure> = if options.reflexivize {
            factors.iter().map(BinaryStructure::reflexivize).collect()
        } else {
            factors.to_vec()
        };
        let kernel: Vec<usize> = filter.kernel().iter().copied().collect();
        let class_count: usize = kernel.iter().map(|&i| factors[i].size()).product();

        let mut representatives: Vec<Option<ProductPoint>> = vec![None; class_count];
        let mut class_sizes = vec![0u128; class_count];
        let mut rp = ReducedProduct {
            factors,
            filter: filter.clone(),
            options,
            kernel,
            representatives: Vec::new(),
            class_sizes: Vec::new(),
            quotient: BinaryStructure::discrete(1)?,
            tuple_count,
        };
        // Tuples arrive in lexicographic order, so the first one seen in a
        // class is its least element.
        for t in rp.tuples() {
            let c = rp.class_index(&t);
            class_sizes[c] += 1;
            representatives[c].get_or_insert(t);
        }
        rp.representatives = representatives
            .into_iter()
            .map(|r| r.expect("every kernel pattern is realized"))
            .collect();
        rp.class_sizes = class_sizes;
        rp.quotient = if class_count <= PAIRWISE_CLASS_LIMIT {
            rp.quotient_pairwise()?
        } else {
            rp.quotient_from_kernel_edges()?
        };
        if tuple_count <= WELL_DEFINED_CHECK_LIMIT {
            assert!(rp.verify_well_defined(), "quotient relation depends on representatives");
        }
        Ok(rp)
    }

    pub fn factors(&self) -> &[BinaryStructure] {
        &self.factors
    }

    pub fn filter(&self) -> &Filter {
        &self.filter
    }

    pub fn options(&self) -> BuildOptions {
        self.options
    }

    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn tuple_count(&self) -> u128 {
        self.tuple_count
    }

    pub fn representatives(&self) -> &[ProductPoint] {
        &self.representatives
    }

    pub fn representative(&self, class: usize) -> &ProductPoint {
        &self.representatives[class]
    }

    /// Number of tuples in each class.
    pub fn class_sizes(&self) -> &[u128] {
        &self.class_sizes
    }

    /// The quotient structure on class indices.
    pub fn quotient(&self) -> &BinaryStructure {
        &self.quotient
    }

    /// All tuples of the direct product in lexicographic order.
    pub fn tuples(&self) -> impl Iterator<Item = ProductPoint> + '_ {
        let sizes: Vec<usize> = self.factors.iter().map(|f| f.size()).collect();
        odometer(sizes).map(ProductPoint)
    }

    /// Every tuple in `class`, lexicographically.
    pub fn members(&self, class: usize) -> Vec<ProductPoint> {
        let rep = &self.representatives[class];
        let sizes: Vec<usize> = self
            .factors
            .iter()
            .enumerate()
            .map(|(i, f)| if self.kernel.binary_search(&i).is_ok() { 1 } else { f.size() })
            .collect();
        odometer(sizes)
            .map(|free| {
                ProductPoint(
                    free.iter()
                        .enumerate()
                        .map(|(i, &v)| if self.kernel.binary_search(&i).is_ok() { rep.0[i] } else { v })
                        .collect(),
                )
            })
            .collect()
    }

    fn class_index(&self, point: &ProductPoint) -> usize {
        self.kernel
            .iter()
            .fold(0usize, |acc, &i| acc * self.factors[i].size() + point.0[i])
    }

    /// `[x]_Φ` as a class index.
    pub fn class_of(&self, point: &ProductPoint) -> Result<usize> {
        check_point(&self.factors, point)?;
        Ok(self.class_index(point))
    }

    /// `[x]_Φ ρ [y]_Φ` evaluated on the given tuples.
    pub fn relates_points(&self, x: &ProductPoint, y: &ProductPoint) -> bool {
        self.filter.member(&relation_set(&self.factors, x, y, Orientation::Forward))
    }

    fn quotient_pairwise(&self) -> Result<BinaryStructure> {
        let n = self.class_count();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.relates_points(&self.representatives[a], &self.representatives[b]) {
                    edges.push((a, b));
                }
            }
        }
        BinaryStructure::new(n, edges)
    }

    /// Same relation via the product of kernel factor edge lists.
    fn quotient_from_kernel_edges(&self) -> Result<BinaryStructure> {
        let lists: Vec<Vec<(Element, Element)>> = self
            .kernel
            .iter()
            .map(|&i| self.factors[i].relation().iter().copied().collect())
            .collect();
        let mut edges = Vec::new();
        let lens: Vec<usize> = lists.iter().map(Vec::len).collect();
        if lens.iter().all(|&l| l > 0) {
            for pick in odometer(lens) {
                let (mut a, mut b) = (0usize, 0usize);
                for (k, &e) in pick.iter().enumerate() {
                    let size = self.factors[self.kernel[k]].size();
                    let (u, v) = lists[k][e];
                    a = a * size + u;
                    b = b * size + v;
                }
                edges.push((a, b));
            }
        }
        BinaryStructure::new(self.class_count(), edges)
    }

    /// Relation on classes computed two ways agrees, and does not depend on
    /// which tuples represent the classes. Exhaustive over tuple pairs.
    pub fn verify_well_defined(&self) -> bool {
        let tuples: Vec<ProductPoint> = self.tuples().collect();
        let classes: Vec<usize> = tuples.iter().map(|t| self.class_index(t)).collect();
        for (x, &cx) in tuples.iter().zip(&classes) {
            for (y, &cy) in tuples.iter().zip(&classes) {
                if self.relates_points(x, y) != self.quotient.relates(cx, cy) {
                    return false;
                }
            }
        }
        true
    }
}

/// Mixed-radix counter over `0..sizes[0] × … × 0..sizes[k-1]`, last digit fastest.
fn odometer(sizes: Vec<usize>) -> impl Iterator<Item = Vec<usize>> {
    let empty = sizes.contains(&0);
    let mut next = if empty { None } else { Some(vec![0usize; sizes.len()]) };
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        for k in (0..sizes.len()).rev() {
            succ[k] += 1;
            if succ[k] < sizes[k] {
                next = Some(succ);
                break;
            }
            succ[k] = 0;
        }
        Some(cur)
    })
}

/// The restriction isomorphism `f([x]_Φ) = [x↾J]_{Φ↾J}` for `J` in the filter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionIso {
    /// `J` in increasing order.
    pub domain: Vec<usize>,
    /// The reduced product of the factors in `J` over `Φ↾J`.
    pub target: ReducedProduct,
    /// `forward[c]` is the target class of source class `c`.
    pub forward: Vec<usize>,
}

impl RestrictionIso {
    /// Bijective, and `f` and `f⁻¹` both preserve the quotient relation.
    pub fn is_isomorphism(&self, source: &ReducedProduct) -> bool {
        let n = source.class_count();
        if self.target.class_count() != n || self.forward.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &t in &self.forward {
            if t >= n || std::mem::replace(&mut hit[t], true) {
                return false;
            }
        }
        let (sq, tq) = (source.quotient(), self.target.quotient());
        (0..n).all(|a| (0..n).all(|b| sq.relates(a, b) == tq.relates(self.forward[a], self.forward[b])))
    }
}

/// Restrict a reduced product to `J ∈ Φ`.
pub fn restrict_iso(rp: &ReducedProduct, domain: &IndexSet) -> Result<RestrictionIso> {
    let restriction = rp.filter.restrict(domain)?;
    let factors: Vec<BinaryStructure> = restriction.domain.iter().map(|&i| rp.factors[i].clone()).collect();
    let target = ReducedProduct::build_with(&factors, &restriction.filter, rp.options)?;
    let forward = rp
        .representatives
        .iter()
        .map(|x| target.class_of(&x.restrict(&restriction.domain)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RestrictionIso { domain: restriction.domain, target, forward })
}
