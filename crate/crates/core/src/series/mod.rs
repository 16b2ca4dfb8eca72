//! Truncated formal series over exact rationals.

pub mod bivariate;
pub mod index;
pub mod monomial;
pub mod truncation;

pub use bivariate::BiSeries;
pub use index::{IndexSeries, Term};
pub use monomial::{CycleMonomial, Family};
pub use truncation::{binom2, Truncation, Valuation, UNBOUNDED};
