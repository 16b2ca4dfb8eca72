//! Longer published prefixes that the oracle data up to 8 vertices still
//! reaches.

use netenum::oracle::GraphFamily;
use netenum::solver::{compute, family_input, solve_tilde, Count, CoreSource, Kind, Preset, Request};
use netenum::Rational;

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&c| Rational::from_int(c)).collect()
}

#[test]
fn strongly_planar_networks_to_six_internal_vertices() {
    let input = family_input(GraphFamily::Planar, 8, &CoreSource::Oracle).unwrap();
    let sol = solve_tilde(&input, 8).unwrap();
    assert_eq!(sol.r.eval_y1()[..7], ints(&[1, 2, 10, 72, 696, 8530, 124926])[..]);
    assert_eq!(sol.r_tau.eval_y1()[..7], ints(&[1, 2, 6, 20, 96, 470, 3074])[..]);
}

#[test]
fn k33_free_networks_to_six_internal_vertices() {
    let input = family_input(GraphFamily::K33Free, 8, &CoreSource::Oracle).unwrap();
    let sol = solve_tilde(&input, 8).unwrap();
    assert_eq!(sol.r.eval_y1()[..7], ints(&[1, 2, 10, 74, 718, 8786, 128006])[..]);
    assert_eq!(sol.r_tau.eval_y1()[..7], ints(&[1, 2, 6, 22, 102, 518, 3362])[..]);
}

#[test]
fn projective_planar_to_ten_vertices() {
    let req = Request {
        preset: Preset::ProjectivePlanar,
        kind: Kind::Graphs,
        count: Count::Unlabelled,
        n_max: 10,
        m_max: None,
        source: CoreSource::Oracle,
    };
    let totals: Vec<(u32, i64)> =
        compute(&req).unwrap().totals().into_iter().map(|(n, c)| (n, i64::try_from(c).unwrap())).collect();
    assert_eq!(totals, vec![(5, 1), (6, 2), (7, 14), (8, 102), (9, 962), (10, 10662)]);
}
