//! Directed tight spans and tropical polytopes of finite directed distances.
//!
//! Everything here works over exact rationals ([`Rational`]). The main entry
//! points are:
//!
//! * [`metric`]: directed distances, cycle lengths, congruence and the
//!   quadruple/sextuple condition checks.
//! * [`geometry`]: points of `R^{S^c ∪ S^r}`, the asymmetric max metric
//!   `D∞`, membership tests and the retractions onto the tight span,
//!   `Q⁺` and balanced sections.
//! * [`complex`]: exhaustive enumeration of the polyhedral complexes at
//!   desk scale.
//! * [`rank`]: matching criteria for `dim T` and the tropical rank.
//! * [`treereal`]: oriented-tree realizations and split decompositions.
//! * [`lp`] and [`flow`]: an exact simplex solver and the multiflow /
//!   metric-extension duality built on it.
//!
//! Inner loops that are data-parallel go through [`exec`], which uses rayon
//! when the `parallel` feature is on and falls back to plain iterators
//! otherwise.

pub mod complex;
pub mod error;
pub mod exec;
pub mod flow;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod metric;
pub mod random;
pub mod rank;
pub mod rational;
pub mod treereal;

pub use error::{Error, Result};
pub use geometry::ExtPoint;
pub use metric::{DirectedDistance, GroundSet};
pub use rational::Rational;
