//! One line per acceptance criterion, each run against its own time limit.
//! Run with `cargo test --release --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use netenum::algebra::{to_egf, to_tilde};
use netenum::oracle::{
    dissymmetry_check, labelled_counts, oracle_core_series, oracle_index_series, unlabelled_counts, GraphFamily,
    GraphFilter,
};
use netenum::solver::{
    compute, extract_three_connected, family_input, identity_report, run_index_pipeline, solve_labelled,
    solve_labelled_lagrange, solve_tilde, Count, CoreSource, IndexPipeline, Kind, Preset, Request, SpeciesInput,
};
use netenum::species::cycles::polygon_series;
use netenum::species::graph::SimpleGraph;
use netenum::species::index_series::graph_index_series;
use netenum::species::networks::b01_from_b;
use netenum::{BiSeries, IndexSeries, Rational, Truncation};
use num_bigint::BigInt;

type Outcome = Result<(), String>;

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&c| Rational::from_int(c)).collect()
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Coefficients of `x^lo..=x^hi` at `y = 1`.
fn prefix(s: &BiSeries, lo: u32, hi: u32) -> Vec<Rational> {
    let all = s.eval_y1();
    (lo..=hi).map(|n| all.get(n as usize).cloned().unwrap_or_else(Rational::zero)).collect()
}

fn pipeline(family: GraphFamily, n: u32) -> Result<(SpeciesInput, IndexPipeline), String> {
    let input = family_input(family, n, &CoreSource::Oracle).map_err(err)?;
    let p = run_index_pipeline(&input, n).map_err(err)?;
    Ok((input, p))
}

fn unlabelled_graphs(preset: Preset, n_max: u32) -> Result<BiSeries, String> {
    let req = Request {
        preset,
        kind: Kind::Graphs,
        count: Count::Unlabelled,
        n_max,
        m_max: None,
        source: CoreSource::Oracle,
    };
    let table = compute(&req).map_err(err)?;
    Ok(BiSeries::from_triples(
        table.rows.into_iter().map(|(n, m, c)| (n, m, Rational::from_bigint(c))),
        Truncation::vertices(n_max),
    ))
}

fn series_parallel_graphs() -> Outcome {
    let b = unlabelled_graphs(Preset::Family(GraphFamily::Sp), 14)?;
    let want = [1, 1, 2, 5, 15, 51, 230, 1142, 6369, 37601, 232259, 1476120, 9599522];
    expect_eq("B_sp", prefix(&b, 2, 14), ints(&want))
}

fn series_parallel_networks() -> Outcome {
    let sol = solve_tilde(&SpeciesInput::Empty, 16).map_err(err)?;
    let r = [
        1, 2, 8, 38, 208, 1220, 7592, 49006, 325686, 2212112, 15290182, 107191458, 760349722, 5447100396,
        39354320204,
    ];
    let rt = [1, 2, 4, 10, 24, 64, 168, 458, 1250, 3492, 9734, 27582, 78078, 223644, 639948];
    expect_eq("R_sp", prefix(&sol.r, 0, 14), ints(&r))?;
    expect_eq("R_sp,tau", prefix(&sol.r_tau, 0, 14), ints(&rt))
}

fn planar_graphs() -> Outcome {
    let b = unlabelled_graphs(Preset::Family(GraphFamily::Planar), 8)?;
    expect_eq("B_P", prefix(&b, 2, 8), ints(&[1, 1, 3, 9, 44, 294, 2893]))?;
    let rows: [(u32, u32, &[i64]); 7] = [
        (2, 1, &[1]),
        (3, 3, &[1]),
        (4, 4, &[1, 1, 1]),
        (5, 5, &[1, 2, 3, 2, 1]),
        (6, 6, &[1, 3, 9, 13, 11, 5, 2]),
        (7, 7, &[1, 4, 20, 49, 77, 75, 47, 16, 5]),
        (8, 8, &[1, 6, 40, 158, 406, 662, 737, 538, 259, 72, 14]),
    ];
    for (n, m0, counts) in rows {
        let top = 3 * n - 6;
        let got: Vec<Rational> = (0..=top.max(m0 + counts.len() as u32)).map(|m| b.coeff(n, m)).collect();
        let mut want = vec![Rational::zero(); got.len()];
        for (i, &c) in counts.iter().enumerate() {
            want[(m0 as usize) + i] = Rational::from_int(c);
        }
        expect_eq(&format!("table row n={n}"), got, want)?;
    }
    Ok(())
}

fn k33_free_graphs() -> Outcome {
    let b = unlabelled_graphs(Preset::Family(GraphFamily::K33Free), 8)?;
    expect_eq("B_K33-free", prefix(&b, 2, 8), ints(&[1, 1, 3, 10, 46, 308, 2997]))
}

fn projective_planar() -> Outcome {
    let b = unlabelled_graphs(Preset::ProjectivePlanar, 8)?;
    expect_eq("PP", prefix(&b, 0, 8), ints(&[0, 0, 0, 0, 0, 1, 2, 14, 102]))
}

fn strongly_planar_networks() -> Outcome {
    let sol = solve_tilde(&family_input(GraphFamily::Planar, 6, &CoreSource::Oracle).map_err(err)?, 6).map_err(err)?;
    expect_eq("N_P", prefix(&sol.r, 0, 4), ints(&[1, 2, 10, 72, 696]))?;
    expect_eq("N_P,tau", prefix(&sol.r_tau, 0, 4), ints(&[1, 2, 6, 20, 96]))
}

fn identities() -> Outcome {
    for (name, ok) in identity_report(Truncation::new(8, 9), Truncation::new(10, 11)).map_err(err)? {
        if !ok {
            return Err(format!("{name} fails"));
        }
    }
    let half = Rational::new(1, 2);
    for family in GraphFamily::ALL {
        let (_, p) = pipeline(family, 7)?;
        // W+ = (2/a1^2) dW/db1 read through the egf: x^2/2 B01 = dB/dy
        let forms = b01_from_b(&p.wb).map_err(err)?;
        let t = Truncation::vertices(7);
        let lhs = to_egf(&forms.plus01).shift(2, 0).scale(&half).truncate(t);
        expect_eq(&format!("derivative identity ({family})"), lhs, to_egf(&p.wb).derivative_y().truncate(t))?;
        let w = p.wb.truncate(t);
        expect_eq(&format!("log exp ({family})"), w.exp().and_then(|e| e.log()).map_err(err)?, w.clone())?;
        let one_plus = IndexSeries::one().add(&w);
        expect_eq(&format!("exp log ({family})"), one_plus.log().and_then(|l| l.exp()).map_err(err)?, one_plus)?;
        let egf = to_egf(&w);
        expect_eq(&format!("egf log exp ({family})"), egf.exp().and_then(|e| e.log()).map_err(err)?, egf.clone())?;
    }
    for n in 3..=8 {
        expect_eq(&format!("C_{n}"), polygon_series(n), graph_index_series(&SimpleGraph::cycle(n as usize)))?;
    }
    Ok(())
}

fn oracle_equivalence() -> Outcome {
    const N: u32 = 7;
    for family in GraphFamily::ALL {
        let (_, p) = pipeline(family, N)?;
        let egf = to_egf(&p.wb);
        let tilde = to_tilde(&p.wb).map_err(err)?;
        let mut fact = BigInt::from(1);
        for n in 2..=N {
            fact *= n;
            let scale = Rational::from_bigint(fact.clone());
            let labelled = labelled_counts(family, n as usize).map_err(err)?;
            let got: Vec<Rational> = (0..labelled.len()).map(|m| &egf.coeff(n, m as u32) * &scale).collect();
            let want: Vec<Rational> = labelled.into_iter().map(Rational::from_bigint).collect();
            expect_eq(&format!("labelled {family} n={n}"), got, want)?;
            let unlabelled = unlabelled_counts(family, n as usize).map_err(err)?;
            let got: Vec<Rational> = (0..unlabelled.len()).map(|m| tilde.coeff(n, m as u32)).collect();
            let want: Vec<Rational> = unlabelled.into_iter().map(|c| Rational::from_int(c as i64)).collect();
            expect_eq(&format!("unlabelled {family} n={n}"), got, want)?;
        }
        let blocks = oracle_index_series(GraphFilter::Blocks(family), N as usize).map_err(err)?;
        let cores = oracle_core_series(family, N as usize).map_err(err)?;
        expect_eq(&format!("extraction {family}"), extract_three_connected(&blocks).map_err(err)?, cores)?;
    }
    Ok(())
}

fn dissymmetry() -> Outcome {
    let report = dissymmetry_check(7).map_err(err)?;
    if report.checked == 0 {
        return Err("no graphs checked".into());
    }
    match report.failures.first() {
        None => Ok(()),
        Some(f) => Err(format!("{} failures, first: {f}", report.failures.len())),
    }
}

fn pipeline_equivalence() -> Outcome {
    const N: u32 = 8;
    for family in GraphFamily::ALL {
        let (input, p) = pipeline(family, N)?;
        let tilde = solve_tilde(&input, N).map_err(err)?;
        expect_eq(&format!("tilde B ({family})"), tilde.b, to_tilde(&p.wb).map_err(err)?)?;
        let nt = Truncation::vertices(N - 2);
        expect_eq(&format!("tilde R ({family})"), tilde.r.truncate(nt), to_tilde(&p.system.rho_plus).map_err(err)?.truncate(nt))?;
        let rt = to_tilde(&p.system.rho_minus).map_err(err)?.truncate(nt);
        expect_eq(&format!("tilde R_tau ({family})"), tilde.r_tau.truncate(nt), rt)?;
        let f01 = to_egf(&p.wf01_plus);
        let lab = solve_labelled(&f01, N).map_err(err)?;
        expect_eq(&format!("labelled B ({family})"), lab.b.truncate(Truncation::vertices(N)), to_egf(&p.wb).truncate(Truncation::vertices(N)))?;
        expect_eq(&format!("labelled R ({family})"), lab.r.truncate(nt), to_egf(&p.system.rho_plus).truncate(nt))?;
        expect_eq(&format!("lagrange R ({family})"), solve_labelled_lagrange(&f01, N).map_err(err)?, lab.r)?;
    }
    Ok(())
}

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let minute = Duration::from_secs(60);
    let criteria = [
        Criterion { name: "series-parallel graphs, n <= 14", limit: minute, run: series_parallel_graphs },
        Criterion { name: "series-parallel networks, 0..14 internal vertices", limit: minute, run: series_parallel_networks },
        Criterion { name: "planar graphs and edge table, n <= 8", limit: 10 * minute, run: planar_graphs },
        Criterion { name: "K33-free graphs, n <= 8", limit: 10 * minute, run: k33_free_graphs },
        Criterion { name: "projective-planar graphs, n <= 8", limit: 10 * minute, run: projective_planar },
        Criterion { name: "strongly planar networks, 0..4 internal vertices", limit: 10 * minute, run: strongly_planar_networks },
        Criterion { name: "identity suite", limit: minute, run: identities },
        Criterion { name: "oracle equivalence, n <= 7", limit: 10 * minute, run: oracle_equivalence },
        Criterion { name: "dissymmetry, n <= 7", limit: 10 * minute, run: dissymmetry },
        Criterion { name: "pipeline equivalence, nMax = 8", limit: 10 * minute, run: pipeline_equivalence },
    ];
    let mut failed = 0;
    for (i, c) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(()) if elapsed > c.limit => Err(format!("took {elapsed:.1?}, limit {:?}", c.limit)),
            o => o,
        };
        match outcome {
            Ok(()) => println!("PASS {:>2} {} ({elapsed:.2?})", i + 1, c.name),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {} ({elapsed:.2?}): {e}", i + 1, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
