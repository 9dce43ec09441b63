//! Direct and reduced products of finite binary structures over filters.
//!
//! The crate answers one question two ways: is a reduced product connected,
//! and what are its components? The first route materializes the quotient and
//! runs a breadth-first search on it. The second never looks at the quotient
//! graph and decides everything from per-factor distances and filter
//! membership. Path witnesses make the second route checkable.
//!
//! Module map:
//!
//! - [`structure`]: single finite structures, paths, distance and components.
//! - [`filter`]: filters on finite index sets.
//! - [`product`]: the `~Φ` equivalence and materialized reduced products.
//! - [`connectivity`]: criterion-based connectivity, condition search and witnesses.
//! - [`formula`]: first-order formulas over one binary relation.
//! - [`symbolic`]: reduced powers of the linear graph on ω over symbolic filters.
//! - [`fuzz`]: seeded random instances and the dual-oracle trial runner.

pub mod connectivity;
pub mod error;
pub mod filter;
pub mod formula;
pub mod fuzz;
pub mod product;
pub mod structure;
pub mod symbolic;

pub use error::{Error, Result};
pub use filter::{Filter, IndexSet};
pub use product::{ProductPoint, ReducedProduct};
pub use structure::{BinaryStructure, Distance, Orientation, PathWitness};
