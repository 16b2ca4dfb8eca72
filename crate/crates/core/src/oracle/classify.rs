use std::fmt;
use std::str::FromStr;

use super::canon::is_isomorphic;
use super::minors::is_planar;
use super::tctree::{tc_decompose, ComponentKind, TcTree};
use crate::error::{Error, Result};
use crate::species::graph::SimpleGraph;

/// Classes of 2-connected graphs defined by their 3-connected components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphFamily {
    /// Series-parallel: no 3-connected components at all.
    Sp,
    Planar,
    /// Every 3-connected component planar or `K5`.
    K33Free,
    All,
}

impl GraphFamily {
    pub const ALL: [GraphFamily; 4] = [GraphFamily::Sp, GraphFamily::Planar, GraphFamily::K33Free, GraphFamily::All];

    /// Whether a 3-connected graph is allowed as a component.
    pub fn admits_core(self, core: &SimpleGraph) -> bool {
        match self {
            GraphFamily::Sp => false,
            GraphFamily::Planar => is_planar(core),
            GraphFamily::K33Free => is_planar(core) || is_isomorphic(core, &SimpleGraph::complete(5)),
            GraphFamily::All => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GraphFamily::Sp => "sp",
            GraphFamily::Planar => "planar",
            GraphFamily::K33Free => "k33free",
            GraphFamily::All => "all",
        }
    }
}

impl fmt::Display for GraphFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GraphFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown graph family '{s}'")))
    }
}

/// Family membership of one 2-connected graph, with its tc-tree.
#[derive(Clone, Debug)]
pub struct Classification {
    pub tree: TcTree,
    pub sp: bool,
    pub planar: bool,
    pub k33_free: bool,
    /// Number of 3-connected components isomorphic to `K5`.
    pub k5_components: usize,
}

impl Classification {
    pub fn in_family(&self, f: GraphFamily) -> bool {
        match f {
            GraphFamily::Sp => self.sp,
            GraphFamily::Planar => self.planar,
            GraphFamily::K33Free => self.k33_free,
            GraphFamily::All => true,
        }
    }
}

pub fn classify(g: &SimpleGraph) -> Result<Classification> {
    let tree = tc_decompose(g)?;
    let k5 = SimpleGraph::complete(5);
    let mut planar = true;
    let mut k33_free = true;
    let mut k5_components = 0;
    for w in tree.three_connected() {
        let core = w.graph();
        let p = is_planar(&core);
        let is_k5 = !p && is_isomorphic(&core, &k5);
        planar &= p;
        k33_free &= p || is_k5;
        k5_components += is_k5 as usize;
    }
    let sp = tree.whites.iter().all(|w| w.kind == ComponentKind::Polygon);
    Ok(Classification { tree, sp, planar, k33_free, k5_components })
}
