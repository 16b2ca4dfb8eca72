use netenum::algebra::{to_egf, to_tilde};
use netenum::oracle::{
    enumerate_graphs, labelled_counts, oracle_core_series, oracle_index_series, unlabelled_counts, GraphFamily,
    GraphFilter,
};
use netenum::solver::{
    extract_three_connected, family_input, irreducible_series, run_index_pipeline, CoreSource, SpeciesInput,
};
use netenum::species::graph::SimpleGraph;
use netenum::species::index_series::graph_index_series;
use netenum::{IndexSeries, Rational, Truncation};
use num_bigint::BigInt;

const N: u32 = 6;

fn wb(family: GraphFamily, n: u32) -> IndexSeries {
    let input = family_input(family, n, &CoreSource::Oracle).unwrap();
    run_index_pipeline(&input, n).unwrap().wb
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

#[test]
fn labelled_counts_match_brute_force() {
    for family in GraphFamily::ALL {
        let egf = to_egf(&wb(family, N));
        for n in 2..=N {
            let direct = labelled_counts(family, n as usize).unwrap();
            for (m, count) in direct.iter().enumerate() {
                let scaled = &egf.coeff(n, m as u32) * &Rational::from_bigint(factorial(n));
                assert_eq!(scaled, Rational::from_bigint(count.clone()), "{family} n={n} m={m}");
            }
        }
    }
}

#[test]
fn unlabelled_counts_match_brute_force() {
    for family in GraphFamily::ALL {
        let tilde = to_tilde(&wb(family, 7)).unwrap();
        for n in 2..=7 {
            for (m, &count) in unlabelled_counts(family, n as usize).unwrap().iter().enumerate() {
                assert_eq!(tilde.coeff(n, m as u32), Rational::from_int(count as i64), "{family} n={n} m={m}");
            }
        }
    }
}

#[test]
fn extraction_recovers_oracle_cores() {
    for family in GraphFamily::ALL {
        let blocks = oracle_index_series(GraphFilter::Blocks(family), N as usize).unwrap();
        let cores = oracle_core_series(family, N as usize).unwrap();
        assert_eq!(extract_three_connected(&blocks).unwrap(), cores, "{family}");
    }
}

#[test]
fn extraction_at_four_vertices_is_k4() {
    let blocks = oracle_index_series(GraphFilter::Blocks(GraphFamily::All), 4).unwrap();
    let k4 = graph_index_series(&SimpleGraph::complete(4)).truncate(Truncation::vertices(4));
    assert_eq!(extract_three_connected(&blocks).unwrap(), k4);
}

#[test]
fn pipeline_on_graph_list_matches_oracle_class() {
    // blocks whose cores are all K4 are exactly the 2-connected graphs
    // without a K5 minor and without a 3-connected component other than K4
    let input = SpeciesInput::graph_list(vec![SimpleGraph::complete(4)]).unwrap();
    let w = run_index_pipeline(&input, 6).unwrap().wb;
    let blocks = enumerate_graphs(6, GraphFilter::Blocks(GraphFamily::All)).unwrap();
    let expected: usize = blocks
        .iter()
        .filter(|r| {
            netenum::oracle::tc_decompose(&r.graph)
                .unwrap()
                .three_connected()
                .all(|c| c.vertices.len() == 4)
        })
        .count();
    let total: Rational = to_tilde(&w).unwrap().row(6).iter().cloned().sum();
    assert_eq!(total, Rational::from_int(expected as i64));
}

#[test]
fn irreducible_planar_matches_min_degree_three() {
    let n = 7;
    let t = Truncation::vertices(n);
    let irr = irreducible_series(&wb(GraphFamily::Planar, n), &wb(GraphFamily::Sp, n), t).unwrap();
    for v in 2..=n {
        let mut by_m = vec![0i64; (v * (v - 1) / 2 + 1) as usize];
        for r in enumerate_graphs(v as usize, GraphFilter::Blocks(GraphFamily::Planar)).unwrap() {
            let g = &r.graph;
            if (0..g.vertex_count()).all(|u| g.degree(u) >= 3) {
                by_m[g.edge_count()] += 1;
            }
        }
        for (m, &c) in by_m.iter().enumerate() {
            assert_eq!(irr.coeff(v, m as u32), Rational::from_int(c), "n={v} m={m}");
        }
    }
}
