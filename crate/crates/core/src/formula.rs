//! First-order formulas in the language of one binary relation `R`.
//!
//! Variables are de Bruijn indices: inside `k` binders, index `j < k` refers
//! to the `j`-th nearest binder and index `k + m` to the free variable `v_m`,
//! which [`evaluate`] takes from `assignment[m]`.
//!
//! Evaluation uses the relation exactly as given. Callers that want the
//! reflexive semantics of paths pass a reflexivized structure.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::filter::Filter;
use crate::product::{BuildOptions, ProductPoint, ReducedProduct};
use crate::structure::{BinaryStructure, Element, Orientation};

/// Largest `n` accepted by [`dist_formula`]; the formula has `2^{n+1}` disjuncts.
pub const MAX_DIST_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Rel(usize, usize),
    Eq(usize, usize),
    Not(Box<Formula>),
    /// Empty conjunction is true.
    And(Vec<Formula>),
    /// Empty disjunction is false.
    Or(Vec<Formula>),
    Exists(Box<Formula>),
    Forall(Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn exists(f: Formula) -> Formula {
        Formula::Exists(Box::new(f))
    }

    pub fn forall(f: Formula) -> Formula {
        Formula::Forall(Box::new(f))
    }

    /// Number of free variables: one more than the largest free index.
    pub fn free_var_count(&self) -> usize {
        fn go(f: &Formula, depth: usize) -> usize {
            let var = |v: usize| if v >= depth { v - depth + 1 } else { 0 };
            match f {
                Formula::Rel(a, b) | Formula::Eq(a, b) => var(*a).max(var(*b)),
                Formula::Not(g) => go(g, depth),
                Formula::And(gs) | Formula::Or(gs) => gs.iter().map(|g| go(g, depth)).max().unwrap_or(0),
                Formula::Exists(g) | Formula::Forall(g) => go(g, depth + 1),
            }
        }
        go(self, 0)
    }

    pub fn is_sentence(&self) -> bool {
        self.free_var_count() == 0
    }

    fn is_atomic(&self) -> bool {
        matches!(self, Formula::Rel(..) | Formula::Eq(..))
    }

    /// Negations pushed down to atoms.
    pub fn negation_normal_form(&self) -> Formula {
        fn pos(f: &Formula) -> Formula {
            match f {
                Formula::Rel(..) | Formula::Eq(..) => f.clone(),
                Formula::Not(g) => neg(g),
                Formula::And(gs) => Formula::And(gs.iter().map(pos).collect()),
                Formula::Or(gs) => Formula::Or(gs.iter().map(pos).collect()),
                Formula::Exists(g) => Formula::exists(pos(g)),
                Formula::Forall(g) => Formula::forall(pos(g)),
            }
        }
        fn neg(f: &Formula) -> Formula {
            match f {
                Formula::Rel(..) | Formula::Eq(..) => Formula::not(f.clone()),
                Formula::Not(g) => pos(g),
                Formula::And(gs) => Formula::Or(gs.iter().map(neg).collect()),
                Formula::Or(gs) => Formula::And(gs.iter().map(neg).collect()),
                Formula::Exists(g) => Formula::forall(neg(g)),
                Formula::Forall(g) => Formula::exists(neg(g)),
            }
        }
        pos(self)
    }
}

/// No negation anywhere in the formula as written.
pub fn is_positive(f: &Formula) -> bool {
    match f {
        Formula::Rel(..) | Formula::Eq(..) => true,
        Formula::Not(_) => false,
        Formula::And(gs) | Formula::Or(gs) => gs.iter().all(is_positive),
        Formula::Exists(g) | Formula::Forall(g) => is_positive(g),
    }
}

/// Flattened disjuncts when every one is a literal.
fn literal_disjuncts(f: &Formula) -> Option<Vec<&Formula>> {
    match f {
        Formula::Or(gs) => {
            let mut out = Vec::new();
            for g in gs {
                out.extend(literal_disjuncts(g)?);
            }
            Some(out)
        }
        Formula::Not(g) if g.is_atomic() => Some(vec![f]),
        _ if f.is_atomic() => Some(vec![f]),
        _ => None,
    }
}

fn basic_horn_nnf(f: &Formula) -> bool {
    literal_disjuncts(f).is_some_and(|lits| lits.iter().filter(|l| l.is_atomic()).count() <= 1)
}

fn horn_nnf(f: &Formula) -> bool {
    basic_horn_nnf(f)
        || match f {
            Formula::And(gs) => gs.iter().all(horn_nnf),
            Formula::Exists(g) | Formula::Forall(g) => horn_nnf(g),
            _ => false,
        }
}

/// A disjunction of literals with at most one unnegated atom (equality
/// counts as an atom). Classified after pushing negations inward.
pub fn is_basic_horn(f: &Formula) -> bool {
    basic_horn_nnf(&f.negation_normal_form())
}

/// Basic Horn formulas closed under `∧`, `∃`, `∀`, after pushing negations
/// inward.
pub fn is_horn(f: &Formula) -> bool {
    horn_nnf(&f.negation_normal_form())
}

/// Tarskian satisfaction of `f` in `x` with `assignment[m]` for `v_m`.
pub fn evaluate(x: &BinaryStructure, f: &Formula, assignment: &[Element]) -> Result<bool> {
    let free = f.free_var_count();
    if free > assignment.len() {
        return Err(Error::UnboundVariable { index: free - 1, bound: assignment.len() });
    }
    for &a in assignment {
        x.check_element(a)?;
    }
    let mut env: Vec<Element> = assignment.iter().rev().copied().collect();
    Ok(eval(x, f, &mut env))
}

fn eval(x: &BinaryStructure, f: &Formula, env: &mut Vec<Element>) -> bool {
    let get = |env: &Vec<Element>, v: usize| env[env.len() - 1 - v];
    match f {
        Formula::Rel(a, b) => x.relates(get(env, *a), get(env, *b)),
        Formula::Eq(a, b) => get(env, *a) == get(env, *b),
        Formula::Not(g) => !eval(x, g, env),
        Formula::And(gs) => gs.iter().all(|g| eval(x, g, env)),
        Formula::Or(gs) => gs.iter().any(|g| eval(x, g, env)),
        Formula::Exists(g) | Formula::Forall(g) => {
            let exists = matches!(f, Formula::Exists(_));
            for e in 0..x.size() {
                env.push(e);
                let v = eval(x, g, env);
                env.pop();
                if v == exists {
                    return exists;
                }
            }
            !exists
        }
    }
}

/// `φ_{d≤n+1}(v₀, v₁)`: `∃z₀…z_{n-1}` of the disjunction over all
/// `ε ∈ 2^{n+1}` of `v₀ R^{ε₀} z₀ R^{ε₁} … z_{n-1} R^{εₙ} v₁`, where `R¹`
/// is the inverse relation.
pub fn dist_formula(n: usize) -> Result<Formula> {
    if n > MAX_DIST_N {
        return Err(Error::FormulaTooLarge { n, max: MAX_DIST_N });
    }
    // Inside n binders z_j has index n-1-j; v₀ is n, v₁ is n+1.
    let node = |k: usize| -> usize {
        match k {
            0 => n,
            k if k == n + 1 => n + 1,
            k => n - k,
        }
    };
    let step = |k: usize, o: Orientation| match o {
        Orientation::Forward => Formula::Rel(node(k), node(k + 1)),
        Orientation::Inverse => Formula::Rel(node(k + 1), node(k)),
    };
    let disjuncts = (0..1u32 << (n + 1))
        .map(|bits| {
            let mut chain: Vec<Formula> = (0..=n)
                .map(|k| step(k, if bits >> (n - k) & 1 == 1 { Orientation::Inverse } else { Orientation::Forward }))
                .collect();
            if chain.len() == 1 {
                chain.pop().expect("one step")
            } else {
                Formula::And(chain)
            }
        })
        .collect();
    let mut f = Formula::Or(disjuncts);
    for _ in 0..n {
        f = Formula::exists(f);
    }
    Ok(f)
}

/// `φ_n^conn = ∀x,y φ_{d≤n+1}(x,y)`.
pub fn conn_sentence(n: usize) -> Result<Formula> {
    Ok(Formula::forall(Formula::forall(dist_formula(n)?)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HornVerdict {
    pub hypothesis_in_filter: bool,
    pub product_satisfies: bool,
    pub violated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PositiveVerdict {
    pub factor_set_in_filter: bool,
    pub product_satisfies: bool,
    pub violated: bool,
}

/// Falsification check for preservation of a Horn formula in the raw reduced
/// product: a violation is a filter-large set of satisfying coordinates while
/// the product fails at the classes of `points`.
pub fn check_horn_preservation(
    factors: &[BinaryStructure],
    filter: &Filter,
    f: &Formula,
    points: &[ProductPoint],
    cap: u128,
) -> Result<HornVerdict> {
    if !is_horn(f) {
        return Err(Error::FormulaClass("not a Horn formula".into()));
    }
    let rp = ReducedProduct::build_with(factors, filter, BuildOptions { cap, reflexivize: false })?;
    let classes = points.iter().map(|p| rp.class_of(p)).collect::<Result<Vec<_>>>()?;
    let mut hypothesis = crate::filter::IndexSet::new();
    for (i, x) in factors.iter().enumerate() {
        let local: Vec<Element> = points.iter().map(|p| p.0[i]).collect();
        if evaluate(x, f, &local)? {
            hypothesis.insert(i);
        }
    }
    let hypothesis_in_filter = filter.member(&hypothesis);
    let product_satisfies = evaluate(rp.quotient(), f, &classes)?;
    Ok(HornVerdict { hypothesis_in_filter, product_satisfies, violated: hypothesis_in_filter && !product_satisfies })
}

/// Falsification check for preservation of a positive sentence under reduced
/// factors: a violation is a product satisfying `f` while the set of
/// satisfying factors is not in the filter. Uses the relations as given.
pub fn check_positive_factor_preservation(
    factors: &[BinaryStructure],
    filter: &Filter,
    f: &Formula,
    cap: u128,
) -> Result<PositiveVerdict> {
    if !is_positive(f) {
        return Err(Error::FormulaClass("not a positive formula".into()));
    }
    if !f.is_sentence() {
        return Err(Error::FormulaClass("not a sentence".into()));
    }
    let rp = ReducedProduct::build_with(factors, filter, BuildOptions { cap, reflexivize: false })?;
    let mut satisfied = crate::filter::IndexSet::new();
    for (i, x) in factors.iter().enumerate() {
        if evaluate(x, f, &[])? {
            satisfied.insert(i);
        }
    }
    let factor_set_in_filter = filter.member(&satisfied);
    let product_satisfies = evaluate(rp.quotient(), f, &[])?;
    Ok(PositiveVerdict { factor_set_in_filter, product_satisfies, violated: product_satisfies && !factor_set_in_filter })
}

/// Prints in the instance DSL's formula syntax: free variables `x0, x1, …`,
/// bound variables `z<depth>`.
impl fmt::Display for Formula {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn name(v: usize, depth: usize) -> String {
            if v < depth {
                format!("z{}", depth - 1 - v)
            } else {
                format!("x{}", v - depth)
            }
        }
        fn go(f: &Formula, depth: usize, out: &mut fmt::Formatter<'_>) -> fmt::Result {
            match f {
                Formula::Rel(a, b) => write!(out, "R({},{})", name(*a, depth), name(*b, depth)),
                Formula::Eq(a, b) => write!(out, "{} = {}", name(*a, depth), name(*b, depth)),
                Formula::Not(g) => {
                    out.write_str("~")?;
                    atomish(g, depth, out)
                }
                Formula::And(gs) | Formula::Or(gs) => {
                    let (sep, empty) = if matches!(f, Formula::And(_)) { (" & ", "true") } else { (" | ", "false") };
                    if gs.is_empty() {
                        return out.write_str(empty);
                    }
                    for (k, g) in gs.iter().enumerate() {
                        if k > 0 {
                            out.write_str(sep)?;
                        }
                        atomish(g, depth, out)?;
                    }
                    Ok(())
                }
                Formula::Exists(g) | Formula::Forall(g) => {
                    let q = if matches!(f, Formula::Exists(_)) { "exists" } else { "forall" };
                    write!(out, "{q} z{depth}. ")?;
                    go(g, depth + 1, out)
                }
            }
        }
        fn atomish(f: &Formula, depth: usize, out: &mut fmt::Formatter<'_>) -> fmt::Result {
            match f {
                Formula::Rel(..) | Formula::Not(_) => go(f, depth, out),
                Formula::And(gs) | Formula::Or(gs) if gs.is_empty() => go(f, depth, out),
                _ => {
                    out.write_str("(")?;
                    go(f, depth, out)?;
                    out.write_str(")")
                }
            }
        }
        go(self, 0, out)
    }
}
