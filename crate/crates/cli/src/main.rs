use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use netenum::io::{load_wser, write_wser, CountTable, SeriesKind};
use netenum::oracle::generate::MAX_GENERATED_VERTICES;
use netenum::oracle::{
    dissymmetry_check, labelled_counts, oracle_core_series, unlabelled_counts, GraphFamily, MAX_LABELLED_VERTICES,
};
use netenum::series::Truncation;
use netenum::solver::{compute, identity_report, Count, CoreSource, Kind, Preset, Request};
use netenum::{Error, Result};

#[derive(Parser)]
#[command(name = "netenum", version, about = "Exact counts of 2-connected graphs and networks by their 3-connected components")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count graphs or networks of a family through the generating series.
    Compute(ComputeArgs),
    /// Brute-force reference data and self-checks.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Graphs,
    Networks,
    NetworksTau,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountArg {
    Labelled,
    Unlabelled,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    WfPlanar,
    WfAll,
    Counts,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Dissymmetry,
    Identities,
}

#[derive(clap::Args)]
struct ComputeArgs {
    /// sp, planar, k33free, pp or all
    #[arg(long)]
    family: String,
    #[arg(long, value_enum, default_value = "graphs")]
    kind: KindArg,
    #[arg(long, value_enum, default_value = "unlabelled")]
    count: CountArg,
    /// Largest vertex count (internal vertices for networks).
    #[arg(long)]
    n_max: u32,
    /// Drop rows with more edges.
    #[arg(long)]
    m_max: Option<u32>,
    /// 3-connected data: `oracle` or a WSER file.
    #[arg(long, default_value = "oracle")]
    f_data: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args)]
struct OracleArgs {
    #[arg(long, value_enum, conflicts_with = "check", required_unless_present = "check")]
    emit: Option<Emit>,
    #[arg(long, value_enum)]
    check: Option<Check>,
    /// sp, planar, k33free or all (for `--emit counts`).
    #[arg(long, default_value = "all")]
    family: String,
    #[arg(long, value_enum, default_value = "unlabelled")]
    count: CountArg,
    #[arg(long)]
    n_max: u32,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn render(table: &CountTable, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

fn run_compute(a: &ComputeArgs) -> Result<()> {
    let source = match a.f_data.as_str() {
        "oracle" => CoreSource::Oracle,
        path => {
            let (w, kind) = load_wser(path.as_ref())?;
            if kind != SeriesKind::Graph {
                return Err(Error::InvalidInput(format!("{path} holds a network series; a graph series is needed")));
            }
            CoreSource::File(w)
        }
    };
    let req = Request {
        preset: a.family.parse()?,
        kind: match a.kind {
            KindArg::Graphs => Kind::Graphs,
            KindArg::Networks => Kind::Networks,
            KindArg::NetworksTau => Kind::NetworksTau,
        },
        count: match a.count {
            CountArg::Labelled => Count::Labelled,
            CountArg::Unlabelled => Count::Unlabelled,
        },
        n_max: a.n_max,
        m_max: a.m_max,
        source,
    };
    if matches!(req.preset, Preset::ProjectivePlanar) && req.kind != Kind::Graphs {
        return Err(Error::Unsupported("the pp family is available for graphs only".into()));
    }
    emit(&render(&compute(&req)?, a.format), &a.out)
}

fn oracle_counts(family: GraphFamily, count: CountArg, n_max: u32) -> Result<CountTable> {
    let n_max = n_max as usize;
    let cap = match count {
        CountArg::Labelled => MAX_LABELLED_VERTICES,
        CountArg::Unlabelled => MAX_GENERATED_VERTICES,
    };
    if n_max > cap {
        return Err(Error::OutOfRange(format!("oracle counts are limited to {cap} vertices")));
    }
    let mut rows = Vec::new();
    for n in 2..=n_max {
        let row: Vec<BigInt> = match count {
            CountArg::Labelled => labelled_counts(family, n)?,
            CountArg::Unlabelled => unlabelled_counts(family, n)?.into_iter().map(BigInt::from).collect(),
        };
        for (m, c) in row.into_iter().enumerate() {
            if c != BigInt::from(0) {
                rows.push((n as u32, m as u32, c));
            }
        }
    }
    Ok(CountTable { rows })
}

fn run_oracle(a: &OracleArgs) -> Result<bool> {
    let n = a.n_max as usize;
    if let Some(check) = a.check {
        let failures: Vec<String> = match check {
            Check::Dissymmetry => dissymmetry_check(n)?.failures,
            Check::Identities => {
                let t = Truncation::new(a.n_max, a.n_max + 1);
                identity_report(t, t)?.into_iter().filter(|(_, ok)| !ok).map(|(name, _)| name.to_string()).collect()
            }
        };
        if failures.is_empty() {
            emit("PASS\n", &a.out)?;
            return Ok(true);
        }
        let mut text = String::from("FAIL\n");
        for f in &failures {
            text.push_str(f);
            text.push('\n');
        }
        emit(&text, &a.out)?;
        return Ok(false);
    }
    match a.emit.expect("clap requires --emit or --check") {
        Emit::WfPlanar | Emit::WfAll if n > MAX_GENERATED_VERTICES => {
            Err(Error::OutOfRange(format!("graph generation is limited to {MAX_GENERATED_VERTICES} vertices")))
        }
        Emit::WfPlanar => emit(&write_wser(&oracle_core_series(GraphFamily::Planar, n)?, SeriesKind::Graph), &a.out),
        Emit::WfAll => emit(&write_wser(&oracle_core_series(GraphFamily::All, n)?, SeriesKind::Graph), &a.out),
        Emit::Counts => emit(&render(&oracle_counts(a.family.parse()?, a.count, a.n_max)?, a.format), &a.out),
    }?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Compute(a) => run_compute(a).map(|_| true),
        Command::Oracle(a) => run_oracle(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
