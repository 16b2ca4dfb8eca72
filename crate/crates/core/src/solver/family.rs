//! Count tables for the named families.

use std::fmt;
use std::str::FromStr;

use super::compose::compose_index;
use super::input::{family_input, CoreSource};
use super::pipeline::run_index_pipeline;
use crate::algebra::{to_egf, to_tilde};
use crate::error::{Error, Result};
use crate::io::CountTable;
use crate::oracle::GraphFamily;
use crate::series::{IndexSeries, Truncation};
use crate::species::graph::SimpleGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Family(GraphFamily),
    /// `K5` with every edge replaced by a strongly planar network.
    ProjectivePlanar,
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "pp" {
            return Ok(Preset::ProjectivePlanar);
        }
        s.parse().map(Preset::Family)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Family(g) => g.fmt(f),
            Preset::ProjectivePlanar => f.write_str("pp"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Graphs,
    /// Networks `R` (with or without the pole edge), by internal vertices.
    Networks,
    /// Networks invariant under the pole swap.
    NetworksTau,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Labelled,
    Unlabelled,
}

#[derive(Clone, Debug)]
pub struct Request {
    pub preset: Preset,
    pub kind: Kind,
    pub count: Count,
    pub n_max: u32,
    pub m_max: Option<u32>,
    pub source: CoreSource,
}

/// The index series behind a request: `W_B`, `ρ⁺` or `ρ⁻`.
pub fn request_series(req: &Request) -> Result<IndexSeries> {
    match (req.preset, req.kind) {
        (Preset::Family(f), Kind::Graphs) => {
            let input = family_input(f, req.n_max, &req.source)?;
            Ok(run_index_pipeline(&input, req.n_max)?.wb)
        }
        (Preset::Family(f), kind) => {
            let n = req.n_max + 2;
            let input = family_input(f, n, &req.source)?;
            let sys = run_index_pipeline(&input, n)?.system;
            Ok(if kind == Kind::Networks { sys.rho_plus } else { sys.rho_minus })
        }
        (Preset::ProjectivePlanar, Kind::Graphs) => {
            // each of the ten networks has at most n - 5 internal vertices
            let n = req.n_max.saturating_sub(3).max(2);
            let input = family_input(GraphFamily::Planar, n, &req.source)?;
            let sys = run_index_pipeline(&input, n)?.system;
            compose_index(&[SimpleGraph::complete(5)], &sys.rho_plus, &sys.rho_minus, Truncation::vertices(req.n_max))
        }
        (Preset::ProjectivePlanar, _) => Err(Error::Unsupported("the pp family is available for graphs only".into())),
    }
}

pub fn compute(req: &Request) -> Result<CountTable> {
    if req.count == Count::Labelled && req.kind == Kind::NetworksTau {
        return Err(Error::InvalidInput("pole-swap symmetric networks are counted unlabelled only".into()));
    }
    let w = request_series(req)?;
    let mut table = match req.count {
        Count::Unlabelled => CountTable::from_series(&to_tilde(&w)?, false)?,
        Count::Labelled => CountTable::from_series(&to_egf(&w), true)?,
    };
    if let Some(m) = req.m_max {
        table.rows.retain(|r| r.1 <= m);
    }
    Ok(table)
}
