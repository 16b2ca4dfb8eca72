use super::assemble::assemble_wb;
use super::input::SpeciesInput;
use super::system::{solve_network_system, NetworkSystem};
use crate::error::{Error, Result};
use crate::series::{IndexSeries, Truncation};
use crate::species::networks::network_derivatives;

/// Everything the index-level pipeline produces for one class `F`.
#[derive(Clone, Debug)]
pub struct IndexPipeline {
    pub wf: IndexSeries,
    pub wf01_plus: IndexSeries,
    pub wf01_minus: IndexSeries,
    pub system: NetworkSystem,
    pub wb: IndexSeries,
}

/// `W_F ↦ W_B` through graphs on `n_max` vertices (networks on `n_max - 2`
/// internal vertices).
pub fn run_index_pipeline(input: &SpeciesInput, n_max: u32) -> Result<IndexPipeline> {
    if n_max < 2 {
        return Err(Error::OutOfRange("the pipeline needs at least two vertices".into()));
    }
    let wf = input.core_series(n_max)?;
    let (wf01_plus, wf01_minus) = network_derivatives(&wf)?;
    let system = solve_network_system(&wf01_plus, &wf01_minus, Truncation::vertices(n_max - 2))?;
    let wb = assemble_wb(&wf, &system)?;
    Ok(IndexPipeline { wf, wf01_plus, wf01_minus, system, wb })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::to_tilde;
    use crate::rational::Rational;

    #[test]
    fn series_parallel_prefix() {
        let p = run_index_pipeline(&SpeciesInput::Empty, 8).unwrap();
        let counts: Vec<Rational> = to_tilde(&p.wb).unwrap().eval_y1();
        let expect: Vec<Rational> = [0, 0, 1, 1, 2, 5, 15, 51, 230].iter().map(|&c| Rational::from_int(c)).collect();
        assert_eq!(counts, expect);
    }
}
