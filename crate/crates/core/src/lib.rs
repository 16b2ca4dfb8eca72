//! Exact enumeration of 2-connected graphs and two-pole networks whose
//! 3-connected components lie in a prescribed class.
//!
//! Everything is computed with exact rationals: edge index series in the
//! variables `a_k` (vertex cycles), `b_k` (cylindrical edge cycles) and `c_k`
//! (Möbius edge cycles), their specializations to exponential and ordinary
//! generating functions, and a brute-force oracle over small graphs.

pub mod algebra;
pub mod error;
pub mod io;
pub mod oracle;
pub mod rational;
pub mod series;
pub mod solver;
pub mod species;

pub use error::{Error, Result};
pub use rational::Rational;
pub use series::{BiSeries, CycleMonomial, Family, IndexSeries, Truncation};
