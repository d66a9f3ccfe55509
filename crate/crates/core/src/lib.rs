//! Exact extreme ray enumeration for polyhedral cones `{x >= 0 : Mx = 0}`
//! with groups of coordinates of which at most one may be non-zero, using
//! the double description method. Includes a front end that builds the
//! normal surface matching equations of a 3-manifold triangulation.

pub mod cli;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod ordering;
pub mod problem;
pub mod triangulation;
pub mod zeroset;

pub use engine::{run, Adjacency, Engine, Prefilter, Ray, Representation, RunConfig, RunStats};
pub use error::{Error, Result};
pub use linalg::{IntMatrix, IntVector};
pub use oracle::{brute_force_filtered, brute_force_rays, OracleLimit};
pub use ordering::OrderingStrategy;
pub use problem::{mcmullen_bound, EnumerationProblem};
pub use triangulation::Triangulation;
pub use zeroset::{ConstraintGroup, ZeroSet};
