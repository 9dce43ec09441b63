//! The instance description language.
//!
//! ```text
//! # three factors over a principal filter
//! structure P3 3
//! edge 0 1
//! edge 1 2
//! structure D2 2
//! structure E2 2
//! edge 0 1
//! index 3
//! assign 0 P3
//! assign 1 D2
//! assign 2 E2
//! filter principal {0,2}
//! point x = (0,0,0)
//! ```
//!
//! An instance with an `index` statement is finite; one without is a
//! symbolic power of the linear graph on ω, described by `seq` statements
//! and a `filter frechet`, `filter principal {..}` or `filter cofinite {..}`
//! statement. Statements may appear in any order, except that `edge` lines
//! belong to the closest `structure` line above them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use redprod::filter::IndexSet;
use redprod::symbolic::{SymbolicFilter, SymbolicSequence};
use redprod::{BinaryStructure, Filter, ProductPoint};

use crate::error::{ParseError, ParseErrorKind};
use crate::lex::{tokenize_line, Cursor, Tok};

type Loc = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterSpec {
    Generators(Vec<IndexSet>),
    Trivial,
    Principal(IndexSet),
}

impl FilterSpec {
    pub fn build(&self, index_size: usize) -> redprod::Result<Filter> {
        match self {
            FilterSpec::Generators(g) => Filter::new(index_size, g.clone()),
            FilterSpec::Trivial => Filter::trivial(index_size),
            FilterSpec::Principal(k) => Filter::principal(index_size, k.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpec {
    /// Structure name per index.
    pub assignment: Vec<String>,
    pub filter: FilterSpec,
    pub points: Vec<(String, ProductPoint)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicSpec {
    pub filter: SymbolicFilter,
    pub sequences: Vec<(String, SymbolicSequence)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Finite(FiniteSpec),
    Symbolic(SymbolicSpec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceSpec {
    /// In declaration order.
    pub structures: Vec<(String, BinaryStructure)>,
    pub body: Body,
}

impl InstanceSpec {
    pub fn structure(&self, name: &str) -> Option<&BinaryStructure> {
        self.structures.iter().find(|(n, _)| n == name).map(|(_, s)| s)
    }

    /// Factors in index order, for finite instances.
    pub fn factors(&self) -> Option<Vec<BinaryStructure>> {
        match &self.body {
            Body::Finite(f) => {
                Some(f.assignment.iter().map(|n| self.structure(n).expect("validated").clone()).collect())
            }
            Body::Symbolic(_) => None,
        }
    }

    pub fn filter(&self) -> Option<Filter> {
        match &self.body {
            Body::Finite(f) => Some(f.filter.build(f.assignment.len()).expect("validated")),
            Body::Symbolic(_) => None,
        }
    }

    pub fn point(&self, name: &str) -> Option<&ProductPoint> {
        match &self.body {
            Body::Finite(f) => f.points.iter().find(|(n, _)| n == name).map(|(_, p)| p),
            Body::Symbolic(_) => None,
        }
    }

    pub fn sequence(&self, name: &str) -> Option<&SymbolicSequence> {
        match &self.body {
            Body::Symbolic(s) => s.sequences.iter().find(|(n, _)| n == name).map(|(_, q)| q),
            Body::Finite(_) => None,
        }
    }
}

enum RawFilter {
    Generators(Vec<Vec<u64>>),
    Trivial,
    Principal(Vec<u64>),
    Frechet,
    Cofinite(Vec<u64>),
}

struct RawStructure {
    name: String,
    at: Loc,
    size: usize,
    edges: Vec<(u64, u64, Loc)>,
}

#[derive(Default)]
struct Raw {
    structures: Vec<RawStructure>,
    index: Option<(usize, Loc)>,
    assigns: Vec<(usize, String, Loc, Loc)>,
    filter: Option<(RawFilter, Loc)>,
    points: Vec<(String, Vec<u64>, Loc, Loc)>,
    seqs: Vec<(String, SymbolicSequence, Loc)>,
}

fn err(kind: ParseErrorKind, at: Loc, message: impl Into<String>) -> ParseError {
    ParseError::at(kind, at, message)
}

pub fn parse_instance(text: &str) -> Result<InstanceSpec, ParseError> {
    let mut raw = Raw::default();
    for (k, line) in text.lines().enumerate() {
        let lineno = k + 1;
        let tokens = tokenize_line(line, lineno)?;
        if tokens.is_empty() {
            continue;
        }
        let mut c = Cursor::new(&tokens, lineno, line.chars().count() + 1);
        statement(&mut c, &mut raw)?;
        c.finish()?;
    }
    resolve(raw)
}

fn statement(c: &mut Cursor<'_>, raw: &mut Raw) -> Result<(), ParseError> {
    let (word, at) = c.ident("a statement keyword")?;
    match word.as_str() {
        "structure" => {
            let (name, name_at) = c.ident("a structure name")?;
            let (size, size_at) = c.usize("the universe size")?;
            if size == 0 {
                return Err(err(ParseErrorKind::ElementRange, size_at, "universe size must be positive"));
            }
            raw.structures.push(RawStructure { name, at: name_at, size, edges: Vec::new() });
        }
        "edge" => {
            let (u, u_at) = c.number("an element")?;
            let (v, _) = c.number("an element")?;
            let Some(s) = raw.structures.last_mut() else {
                return Err(err(ParseErrorKind::Missing, at, "`edge` before any `structure`"));
            };
            s.edges.push((u, v, u_at));
        }
        "index" => {
            let (n, n_at) = c.usize("the index size")?;
            if n == 0 {
                return Err(err(ParseErrorKind::Dimension, n_at, "index size must be positive"));
            }
            if raw.index.is_some() {
                return Err(err(ParseErrorKind::DuplicateName, at, "second `index` statement"));
            }
            raw.index = Some((n, at));
        }
        "assign" => {
            let (i, i_at) = c.usize("an index")?;
            let (name, name_at) = c.ident("a structure name")?;
            raw.assigns.push((i, name, i_at, name_at));
        }
        "filter" => {
            if raw.filter.is_some() {
                return Err(err(ParseErrorKind::DuplicateName, at, "second `filter` statement"));
            }
            let (kind, kind_at) = c.ident("a filter kind")?;
            let f = match kind.as_str() {
                "trivial" => RawFilter::Trivial,
                "frechet" => RawFilter::Frechet,
                "principal" => RawFilter::Principal(c.number_set()?.0),
                "cofinite" => RawFilter::Cofinite(c.number_set()?.0),
                "generators" => {
                    c.expect_sym('{')?;
                    let mut gens = Vec::new();
                    while !c.eat_sym('}') {
                        if c.at_end() {
                            return Err(c.unexpected("`{` or `}`"));
                        }
                        gens.push(c.number_set()?.0);
                    }
                    if gens.is_empty() {
                        return Err(err(ParseErrorKind::Syntax, kind_at, "at least one generator is required"));
                    }
                    RawFilter::Generators(gens)
                }
                other => {
                    return Err(err(
                        ParseErrorKind::Syntax,
                        kind_at,
                        format!("unknown filter kind `{other}` (expected generators, trivial, principal, frechet or cofinite)"),
                    ))
                }
            };
            raw.filter = Some((f, at));
        }
        "point" => {
            let (name, name_at) = c.ident("a point name")?;
            c.expect_sym('=')?;
            let (coords, tuple_at) = c.tuple()?;
            raw.points.push((name, coords, name_at, tuple_at));
        }
        "seq" => {
            let (name, name_at) = c.ident("a sequence name")?;
            let s = sequence(c)?;
            raw.seqs.push((name, s, name_at));
        }
        other => {
            return Err(err(
                ParseErrorKind::Syntax,
                at,
                format!("unknown statement `{other}` (expected structure, edge, index, assign, filter, point or seq)"),
            ))
        }
    }
    Ok(())
}

/// `constant c` | `affine a b` | `eventually v.. then affine a b`.
pub(crate) fn sequence(c: &mut Cursor<'_>) -> Result<SymbolicSequence, ParseError> {
    let (kind, kind_at) = c.ident("a sequence kind")?;
    match kind.as_str() {
        "constant" => Ok(SymbolicSequence::constant(c.number("a value")?.0)),
        "affine" => {
            let a = c.number("a slope")?.0;
            let b = c.number("an offset")?.0;
            Ok(SymbolicSequence::affine(a, b))
        }
        "eventually" => {
            let mut prefix = Vec::new();
            while let Some(Tok::Num(v)) = c.peek_tok() {
                prefix.push(*v);
                c.next();
            }
            c.expect_keyword("then")?;
            c.expect_keyword("affine")?;
            let a = c.number("a slope")?.0;
            let b = c.number("an offset")?.0;
            Ok(SymbolicSequence::eventually_affine(prefix, a, b))
        }
        other => Err(err(
            ParseErrorKind::Syntax,
            kind_at,
            format!("unknown sequence kind `{other}` (expected constant, affine or eventually)"),
        )),
    }
}

fn check_unique<'a>(names: impl Iterator<Item = (&'a str, Loc)>, what: &str) -> Result<(), ParseError> {
    let mut seen = BTreeSet::new();
    for (name, at) in names {
        if !seen.insert(name) {
            return Err(err(ParseErrorKind::DuplicateName, at, format!("{what} `{name}` declared twice")));
        }
    }
    Ok(())
}

fn resolve(raw: Raw) -> Result<InstanceSpec, ParseError> {
    check_unique(raw.structures.iter().map(|s| (s.name.as_str(), s.at)), "structure")?;
    let mut structures = Vec::new();
    for s in &raw.structures {
        let mut edges = Vec::new();
        for &(u, v, at) in &s.edges {
            let range = |e: u64| usize::try_from(e).ok().filter(|&e| e < s.size);
            match (range(u), range(v)) {
                (Some(u), Some(v)) => edges.push((u, v)),
                _ => {
                    return Err(err(
                        ParseErrorKind::ElementRange,
                        at,
                        format!("edge ({u},{v}) leaves the universe of `{}` (size {})", s.name, s.size),
                    ))
                }
            }
        }
        let structure = BinaryStructure::new(s.size, edges).expect("checked above");
        structures.push((s.name.clone(), structure));
    }
    let sizes: BTreeMap<&str, usize> = raw.structures.iter().map(|s| (s.name.as_str(), s.size)).collect();

    let body = match raw.index {
        Some((n, index_at)) => finite_body(&raw, n, index_at, &sizes)?,
        None => symbolic_body(&raw)?,
    };
    Ok(InstanceSpec { structures, body })
}

fn finite_body(raw: &Raw, n: usize, index_at: Loc, sizes: &BTreeMap<&str, usize>) -> Result<Body, ParseError> {
    if let Some((_, _, at)) = raw.seqs.first() {
        return Err(err(ParseErrorKind::InstanceKind, *at, "`seq` is only allowed in symbolic instances (no `index`)"));
    }
    let mut assignment: Vec<Option<String>> = vec![None; n];
    for (i, name, i_at, name_at) in &raw.assigns {
        if *i >= n {
            return Err(err(ParseErrorKind::Dimension, *i_at, format!("index {i} is out of range for `index {n}`")));
        }
        if !sizes.contains_key(name.as_str()) {
            return Err(err(ParseErrorKind::UnresolvedName, *name_at, format!("no structure named `{name}`")));
        }
        if assignment[*i].is_some() {
            return Err(err(ParseErrorKind::DuplicateName, *i_at, format!("index {i} assigned twice")));
        }
        assignment[*i] = Some(name.clone());
    }
    let assignment: Vec<String> = assignment
        .into_iter()
        .enumerate()
        .map(|(i, a)| a.ok_or_else(|| err(ParseErrorKind::Missing, index_at, format!("index {i} has no `assign`"))))
        .collect::<Result<_, _>>()?;

    let Some((rf, filter_at)) = &raw.filter else {
        return Err(err(ParseErrorKind::Missing, index_at, "no `filter` statement"));
    };
    let index_set = |xs: &[u64]| -> Result<IndexSet, ParseError> {
        xs.iter()
            .map(|&i| {
                usize::try_from(i).ok().filter(|&i| i < n).ok_or_else(|| {
                    err(ParseErrorKind::Dimension, *filter_at, format!("filter mentions index {i}, outside `index {n}`"))
                })
            })
            .collect()
    };
    let filter = match rf {
        RawFilter::Trivial => FilterSpec::Trivial,
        RawFilter::Principal(k) => FilterSpec::Principal(index_set(k)?),
        RawFilter::Generators(g) => FilterSpec::Generators(g.iter().map(|s| index_set(s)).collect::<Result<_, _>>()?),
        RawFilter::Frechet | RawFilter::Cofinite(_) => {
            return Err(err(ParseErrorKind::InstanceKind, *filter_at, "this filter kind needs a symbolic instance (no `index`)"))
        }
    };
    if let Err(e) = filter.build(n) {
        return Err(match e {
            redprod::Error::ImproperFilter => {
                err(ParseErrorKind::ImproperFilter, *filter_at, "generators have empty intersection, the filter is improper")
            }
            other => err(ParseErrorKind::Syntax, *filter_at, other.to_string()),
        });
    }

    check_unique(raw.points.iter().map(|p| (p.0.as_str(), p.2)), "point")?;
    let mut points = Vec::new();
    for (name, coords, _, tuple_at) in &raw.points {
        if coords.len() != n {
            return Err(err(
                ParseErrorKind::Dimension,
                *tuple_at,
                format!("point `{name}` has {} coordinates, instance has {n}", coords.len()),
            ));
        }
        let mut p = Vec::with_capacity(n);
        for (i, &v) in coords.iter().enumerate() {
            let size = sizes[assignment[i].as_str()];
            match usize::try_from(v).ok().filter(|&v| v < size) {
                Some(v) => p.push(v),
                None => {
                    return Err(err(
                        ParseErrorKind::ElementRange,
                        *tuple_at,
                        format!("coordinate {i} of `{name}` is {v}, outside `{}` (size {size})", assignment[i]),
                    ))
                }
            }
        }
        points.push((name.clone(), ProductPoint(p)));
    }
    Ok(Body::Finite(FiniteSpec { assignment, filter, points }))
}

fn symbolic_body(raw: &Raw) -> Result<Body, ParseError> {
    let kind_error = |at: Loc, what: &str| {
        err(ParseErrorKind::InstanceKind, at, format!("{what} needs a finite instance (add an `index` statement)"))
    };
    if let Some((_, _, at, _)) = raw.assigns.first() {
        return Err(kind_error(*at, "`assign`"));
    }
    if let Some((_, _, at, _)) = raw.points.first() {
        return Err(kind_error(*at, "`point`"));
    }
    let Some((rf, filter_at)) = &raw.filter else {
        let at = raw.seqs.first().map(|s| s.2).unwrap_or((1, 1));
        return Err(err(ParseErrorKind::Missing, at, "no `index` and no `filter` statement"));
    };
    let filter = match rf {
        RawFilter::Frechet => SymbolicFilter::Frechet,
        RawFilter::Cofinite(e) => SymbolicFilter::PrincipalCofinite(e.iter().copied().collect()),
        RawFilter::Principal(k) => SymbolicFilter::principal(k.iter().copied().collect())
            .map_err(|_| err(ParseErrorKind::ImproperFilter, *filter_at, "empty kernel, the filter is improper"))?,
        RawFilter::Trivial | RawFilter::Generators(_) => return Err(kind_error(*filter_at, "this filter kind")),
    };
    check_unique(raw.seqs.iter().map(|s| (s.0.as_str(), s.2)), "sequence")?;
    let sequences = raw.seqs.iter().map(|(n, s, _)| (n.clone(), s.clone())).collect();
    Ok(Body::Symbolic(SymbolicSpec { filter, sequences }))
}

fn set_text<T: std::fmt::Display>(xs: impl IntoIterator<Item = T>) -> String {
    let items: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Canonical text of an instance; parses back to an equal spec.
pub fn render(spec: &InstanceSpec) -> String {
    let mut out = String::new();
    for (name, s) in &spec.structures {
        let _ = writeln!(out, "structure {name} {}", s.size());
        for &(u, v) in s.relation() {
            let _ = writeln!(out, "edge {u} {v}");
        }
    }
    match &spec.body {
        Body::Finite(f) => {
            let _ = writeln!(out, "index {}", f.assignment.len());
            for (i, name) in f.assignment.iter().enumerate() {
                let _ = writeln!(out, "assign {i} {name}");
            }
            let filter = match &f.filter {
                FilterSpec::Trivial => "trivial".to_string(),
                FilterSpec::Principal(k) => format!("principal {}", set_text(k)),
                FilterSpec::Generators(g) => {
                    let gens: Vec<String> = g.iter().map(set_text).collect();
                    format!("generators {{ {} }}", gens.join(" "))
                }
            };
            let _ = writeln!(out, "filter {filter}");
            for (name, p) in &f.points {
                let _ = writeln!(out, "point {name} = {p}");
            }
        }
        Body::Symbolic(s) => {
            let filter = match &s.filter {
                SymbolicFilter::Frechet => "frechet".to_string(),
                SymbolicFilter::PrincipalFinite(k) => format!("principal {}", set_text(k)),
                SymbolicFilter::PrincipalCofinite(e) => format!("cofinite {}", set_text(e)),
            };
            let _ = writeln!(out, "filter {filter}");
            for (name, q) in &s.sequences {
                let _ = writeln!(out, "seq {name} {q}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const THREE: &str = "\
# factors P3, D2, E2
structure P3 3
edge 0 1
edge 1 2
structure D2 2
structure E2 2
edge 0 1

index 3
assign 0 P3
assign 1 D2
assign 2 E2
filter principal {0, 2}
point x = (0,0,0)
point y = (2,1,1)   # trailing comment
";

    fn kind_at(text: &str) -> (ParseErrorKind, usize, usize) {
        let e = parse_instance(text).unwrap_err();
        (e.kind, e.line, e.column)
    }

    #[test]
    fn parses_finite_instance() {
        let spec = parse_instance(THREE).unwrap();
        assert_eq!(spec.structures.len(), 3);
        let factors = spec.factors().unwrap();
        assert_eq!(factors[0], BinaryStructure::path(3).unwrap());
        assert_eq!(factors[1], BinaryStructure::discrete(2).unwrap());
        assert_eq!(spec.filter().unwrap().kernel(), &[0, 2].into_iter().collect());
        assert_eq!(spec.point("y"), Some(&ProductPoint(vec![2, 1, 1])));
    }

    #[test]
    fn minimal_instance_round_trips() {
        let text = "structure A 1\nstructure B 2\nedge 1 0\nindex 2\nassign 0 A\nassign 1 B\nfilter trivial\n";
        let spec = parse_instance(text).unwrap();
        assert_eq!(render(&spec), text);
        assert_eq!(parse_instance(&render(&spec)).unwrap(), spec);
    }

    #[test]
    fn three_factor_round_trip() {
        let spec = parse_instance(THREE).unwrap();
        assert_eq!(parse_instance(&render(&spec)).unwrap(), spec);
    }

    #[test]
    fn symbolic_instance() {
        let text = "filter frechet\nseq x constant 0\nseq y affine 1 2\nseq z eventually 9 9 then affine 1 0\n";
        let spec = parse_instance(text).unwrap();
        assert_eq!(spec.sequence("y"), Some(&SymbolicSequence::affine(1, 2)));
        assert_eq!(spec.sequence("z"), Some(&SymbolicSequence::eventually_affine(vec![9, 9], 1, 0)));
        assert_eq!(render(&spec), text);
        let p = parse_instance("filter principal {5}\nseq x constant 0\n").unwrap();
        assert_eq!(p.body, Body::Symbolic(SymbolicSpec {
            filter: SymbolicFilter::PrincipalFinite([5].into_iter().collect()),
            sequences: vec![("x".into(), SymbolicSequence::constant(0))],
        }));
    }

    #[test]
    fn improper_generators_located() {
        let text = "structure A 1\nindex 2\nassign 0 A\nassign 1 A\nfilter generators { {0} {1} }\n";
        assert_eq!(kind_at(text), (ParseErrorKind::ImproperFilter, 5, 1));
    }

    #[test]
    fn assign_out_of_range_is_dimension_error() {
        let text = "structure P3 3\nindex 3\nassign 5 P3\nfilter trivial\n";
        assert_eq!(kind_at(text), (ParseErrorKind::Dimension, 3, 8));
    }

    #[test]
    fn error_classes_are_distinct() {
        assert_eq!(kind_at("structure A 2\nedge 0 1 2\n"), (ParseErrorKind::Syntax, 2, 10));
        assert_eq!(kind_at("structure A 2\nindex 1\nassign 0 B\nfilter trivial\n"), (ParseErrorKind::UnresolvedName, 3, 10));
        assert_eq!(kind_at("structure A 2\nedge 0 2\n").0, ParseErrorKind::ElementRange);
        assert_eq!(kind_at("structure A 2\nstructure A 3\n"), (ParseErrorKind::DuplicateName, 2, 11));
        assert_eq!(kind_at("structure A 2\nindex 2\nassign 0 A\nfilter trivial\n"), (ParseErrorKind::Missing, 2, 1));
        assert_eq!(kind_at("structure A 2\nindex 1\nassign 0 A\nfilter frechet\n").0, ParseErrorKind::InstanceKind);
        assert_eq!(kind_at("structure A 2\nindex 1\nassign 0 A\nfilter trivial\npoint p = (0,0)\n"), (ParseErrorKind::Dimension, 5, 11));
        assert_eq!(kind_at("frobnicate\n"), (ParseErrorKind::Syntax, 1, 1));
        let codes: BTreeSet<&str> = [
            ParseErrorKind::Syntax,
            ParseErrorKind::UnresolvedName,
            ParseErrorKind::DuplicateName,
            ParseErrorKind::Dimension,
            ParseErrorKind::ElementRange,
            ParseErrorKind::ImproperFilter,
            ParseErrorKind::InstanceKind,
            ParseErrorKind::Missing,
        ]
        .into_iter()
        .map(|k| k.code())
        .collect();
        assert_eq!(codes.len(), 8);
    }

    #[test]
    fn point_coordinates_checked_per_factor() {
        let text = "structure A 1\nstructure B 3\nindex 2\nassign 0 A\nassign 1 B\nfilter trivial\npoint p = (0,2)\npoint q = (1,0)\n";
        assert_eq!(kind_at(text), (ParseErrorKind::ElementRange, 8, 11));
    }

    fn arb_spec() -> impl proptest::strategy::Strategy<Value = InstanceSpec> {
        use proptest::prelude::*;
        let structure = (1usize..4).prop_flat_map(|size| {
            (Just(size), proptest::collection::btree_set((0..size, 0..size), 0..5))
        });
        let finite = (proptest::collection::vec(structure, 1..3), 1usize..4).prop_flat_map(|(structs, n)| {
            let count = structs.len();
            (
                Just(structs),
                proptest::collection::vec(0..count, n),
                proptest::collection::vec(proptest::collection::btree_set(0..n, 0..=n), 1..3),
                0u8..3,
                proptest::collection::vec(any::<proptest::sample::Index>(), n),
            )
        });
        finite.prop_filter_map("improper filter", |(structs, assign, gens, kind, coords)| {
            let structures: Vec<(String, BinaryStructure)> = structs
                .iter()
                .enumerate()
                .map(|(k, (size, edges))| (format!("S{k}"), BinaryStructure::new(*size, edges.iter().copied()).unwrap()))
                .collect();
            let n = assign.len();
            let filter = match kind {
                0 => FilterSpec::Trivial,
                1 => FilterSpec::Principal(gens[0].clone()),
                _ => FilterSpec::Generators(gens),
            };
            filter.build(n).ok()?;
            let point = ProductPoint(
                coords.iter().zip(&assign).map(|(ix, &a)| ix.index(structures[a].1.size())).collect(),
            );
            let assignment = assign.iter().map(|&a| structures[a].0.clone()).collect();
            let body = Body::Finite(FiniteSpec { assignment, filter, points: vec![("p".into(), point)] });
            Some(InstanceSpec { structures, body })
        })
    }

    proptest::proptest! {
        #[test]
        fn render_parse_round_trip(spec in arb_spec()) {
            let text = render(&spec);
            let back = parse_instance(&text).unwrap();
            proptest::prop_assert_eq!(&back, &spec);
            proptest::prop_assert_eq!(render(&back), text);
        }

        #[test]
        fn symbolic_round_trip(
            prefix in proptest::collection::vec(0u64..9, 0..3),
            a in 0u64..3,
            b in 0u64..9,
            kernel in proptest::collection::btree_set(0u64..9, 1..4),
            kind in 0u8..3,
        ) {
            let filter = match kind {
                0 => SymbolicFilter::Frechet,
                1 => SymbolicFilter::PrincipalFinite(kernel),
                _ => SymbolicFilter::PrincipalCofinite(kernel),
            };
            let sequences = vec![
                ("c".to_string(), SymbolicSequence::constant(b)),
                ("e".to_string(), SymbolicSequence::eventually_affine(prefix, a, b)),
            ];
            let spec = InstanceSpec { structures: vec![], body: Body::Symbolic(SymbolicSpec { filter, sequences }) };
            proptest::prop_assert_eq!(parse_instance(&render(&spec)).unwrap(), spec);
        }
    }
}
