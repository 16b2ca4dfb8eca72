//! Enumeration pipelines: network fixed point, dissymmetry assembly,
//! bivariate and labelled shortcuts, extraction of 3-connected cores.

pub mod assemble;
pub mod compose;
pub mod extract;
pub mod family;
pub mod input;
pub mod irreducible;
pub mod labelled;
pub mod pipeline;
pub mod system;
pub mod tilde;

pub use assemble::assemble_wb;
pub use compose::{compose_family, compose_index, toroidal_cores};
pub use extract::extract_three_connected;
pub use family::{compute, Count, Kind, Preset, Request};
pub use input::{family_input, CoreSource, SpeciesInput};
pub use irreducible::{beta_gamma, identity_report, irreducible_series};
pub use labelled::{solve_labelled, solve_labelled_lagrange, LabelledSolution};
pub use pipeline::{run_index_pipeline, IndexPipeline};
pub use system::{solve_network_system, NetworkSystem};
pub use tilde::{solve_tilde, TildeSolution};
