//! Concrete species: explicit graphs and networks, polygons, and the
//! network composition formulas on edge index series.

pub mod automorphism;
pub mod cycles;
pub mod graph;
pub mod index_series;
pub mod networks;

pub use cycles::{cycle_species_series, polygon_series};
pub use graph::{Network, SimpleGraph};
pub use index_series::{graph_index_series, network_index_series};
pub use networks::{b01_from_b, e2_series, network_derivatives, parallel_series, s_network_series, y_multiply, NetworkForms};
