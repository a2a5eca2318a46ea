//! Exact solvers and analysis tools for the one-dimensional cutting stock
//! problem: pattern enumeration, an exact-rational LP relaxation via column
//! generation, proven-optimal integer solutions under master-count and waste
//! objectives, pattern-count minimisation, and a built-in instance corpus.
//!
//! All arithmetic on solver-critical paths is exact (integers and
//! arbitrary-precision rationals); floating point never decides an optimum.
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod corpus;
pub mod error;
pub mod exact;
pub mod format;
pub mod generate;
pub mod instance;
pub mod lprelax;
pub mod patmin;
pub mod pattern;
pub mod patterns;
pub mod rational;
pub mod simplex;
pub mod solution;

pub use error::{Error, Result};
pub use instance::{Instance, MaxQty, Order};
pub use pattern::Pattern;
pub use solution::{Solution, SolutionSummary, ValidationReport};
