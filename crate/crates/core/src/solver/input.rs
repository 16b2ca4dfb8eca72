//! Classes `F` of 3-connected graphs fed into the pipelines.

use std::path::Path;

use crate::error::{Error, Result};
use crate::io::{load_wser, SeriesKind};
use crate::oracle::canon::canonical_code;
use crate::oracle::{is_k_connected, oracle_core_series, GraphFamily};
use crate::series::{binom2, IndexSeries, Truncation, UNBOUNDED};
use crate::species::graph::SimpleGraph;
use crate::species::index_series::graph_index_series;

/// Largest vertex count for which `F` is computed from generated graphs.
pub const ORACLE_CAP: u32 = 8;

#[derive(Clone, Debug)]
pub enum SpeciesInput {
    /// `F = 0`: series-parallel graphs.
    Empty,
    /// Explicit 3-connected graphs, pairwise non-isomorphic.
    GraphList(Vec<SimpleGraph>),
    /// An ingested `W_F`, with the truncation it was written at.
    DataFile(IndexSeries),
    /// Sum of inputs; the caller keeps the summands disjoint as classes.
    Union(Vec<SpeciesInput>),
}

impl SpeciesInput {
    pub fn graph_list(graphs: Vec<SimpleGraph>) -> Result<Self> {
        let mut codes = Vec::new();
        for g in &graphs {
            if g.vertex_count() < 4 || !is_k_connected(g, 3) {
                return Err(Error::InvalidInput(format!("{g:?} is not a 3-connected graph on at least 4 vertices")));
            }
            let key = (g.vertex_count(), g.edge_count(), canonical_code(g));
            if codes.contains(&key) {
                return Err(Error::InvalidInput(format!("{g:?} is listed twice up to isomorphism")));
            }
            codes.push(key);
        }
        Ok(SpeciesInput::GraphList(graphs))
    }

    pub fn data_file(path: &Path) -> Result<Self> {
        let (w, kind) = load_wser(path)?;
        if kind != SeriesKind::Graph {
            return Err(Error::InvalidInput(format!("{} holds a network series; a graph series is needed", path.display())));
        }
        Ok(SpeciesInput::DataFile(w))
    }

    /// `W_F` through vertex degree `n_max`, complete in the edge direction.
    pub fn core_series(&self, n_max: u32) -> Result<IndexSeries> {
        let t = Truncation::vertices(n_max);
        match self {
            SpeciesInput::Empty => Ok(IndexSeries::zero(t)),
            SpeciesInput::GraphList(gs) => {
                let mut acc = IndexSeries::zero(Truncation::EXACT);
                for g in gs.iter().filter(|g| g.vertex_count() as u32 <= n_max) {
                    acc = acc.add(&graph_index_series(g));
                }
                Ok(acc.truncate(t))
            }
            SpeciesInput::DataFile(w) => {
                let wt = w.trunc();
                if wt.n_max < n_max || (wt.m_max != UNBOUNDED && wt.m_max < binom2(n_max)) {
                    return Err(Error::TruncationMismatch(format!("data file holds W_F only through {wt}, {t} requested")));
                }
                Ok(w.clone().with_trunc(Truncation::EXACT).truncate(t))
            }
            SpeciesInput::Union(parts) => {
                let mut acc = IndexSeries::zero(t);
                for p in parts {
                    acc = acc.add(&p.core_series(n_max)?);
                }
                Ok(acc)
            }
        }
    }
}

/// Where the 3-connected data of a family comes from.
#[derive(Clone, Debug)]
pub enum CoreSource {
    /// Generated and classified on the fly, up to [`ORACLE_CAP`] vertices.
    Oracle,
    /// An ingested series that replaces the generated data.
    File(IndexSeries),
}

fn oracle_cores(family: GraphFamily, n_max: u32) -> Result<SpeciesInput> {
    if n_max > ORACLE_CAP {
        return Err(Error::OutOfRange(format!(
            "generated 3-connected data is capped at {ORACLE_CAP} vertices, {n_max} requested; supply a data file"
        )));
    }
    Ok(SpeciesInput::DataFile(oracle_core_series(family, n_max.max(4) as usize)?))
}

/// The class `F` behind a family: nothing for series-parallel graphs,
/// 3-connected planar graphs, those plus `K5`, or all 3-connected graphs.
///
/// A data file stands for the planar cores (planar, K3,3-free) or for all
/// cores; `K5` is still added for the K3,3-free family.
pub fn family_input(family: GraphFamily, n_max: u32, source: &CoreSource) -> Result<SpeciesInput> {
    let cores = |f: GraphFamily| match source {
        CoreSource::Oracle => oracle_cores(f, n_max),
        CoreSource::File(w) => Ok(SpeciesInput::DataFile(w.clone())),
    };
    match family {
        GraphFamily::Sp => Ok(SpeciesInput::Empty),
        GraphFamily::Planar => cores(GraphFamily::Planar),
        GraphFamily::K33Free => Ok(SpeciesInput::Union(vec![
            cores(GraphFamily::Planar)?,
            SpeciesInput::graph_list(vec![SimpleGraph::complete(5)])?,
        ])),
        GraphFamily::All => cores(GraphFamily::All),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_list_validation() {
        assert!(SpeciesInput::graph_list(vec![SimpleGraph::cycle(5)]).is_err());
        assert!(SpeciesInput::graph_list(vec![SimpleGraph::complete(4), SimpleGraph::complete(4)]).is_err());
        let k5 = SpeciesInput::graph_list(vec![SimpleGraph::complete(5)]).unwrap();
        assert!(k5.core_series(4).unwrap().is_zero());
        assert_eq!(k5.core_series(5).unwrap().len(), graph_index_series(&SimpleGraph::complete(5)).len());
    }

    #[test]
    fn short_data_file_is_rejected() {
        let w = graph_index_series(&SimpleGraph::complete(4)).truncate(Truncation::vertices(6));
        let input = SpeciesInput::DataFile(w);
        assert!(input.core_series(6).is_ok());
        assert!(matches!(input.core_series(7), Err(Error::TruncationMismatch(_))));
    }

    #[test]
    fn oracle_cap() {
        assert!(matches!(family_input(GraphFamily::Planar, 9, &CoreSource::Oracle), Err(Error::OutOfRange(_))));
        assert!(family_input(GraphFamily::Sp, 14, &CoreSource::Oracle).is_ok());
    }
}
