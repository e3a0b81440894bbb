//! Exact arithmetic in the orders `Z[rho]` of the simplest cubic fields,
//! `rho` a root of `x^3 - a x^2 - (a+3) x - 1`, together with the searches
//! needed to decide how many squares an element needs: totally positive
//! units, indecomposable elements, all squares totally below a target, and
//! a complete minimal sum-of-squares solver.

pub mod element;
pub mod error;
pub mod field;
pub mod indecomposable;
pub mod interval;
pub mod lattice;
pub mod length;
pub mod squares;
pub mod units;
pub mod verify;

pub use element::{CharData, OrderElement, Sign, Signature};
pub use error::{Error, Result};
pub use field::{EmbeddingIntervals, FieldParam};
pub use interval::Interval;
