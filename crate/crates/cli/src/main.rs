//! `bindep` — exact broadcast-independence toolkit.
//!
//! Subcommands: `solve` (alpha / alpha_b with witnesses), `verify`
//! (bound-verification campaigns), `gen` (extremal family members),
//! `extract` (independent-set extraction certificates), and `enumerate`
//! (labeled connected graphs as graph6 lines).

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use bindep::broadcast::Broadcast;
use bindep::extraction::extract_independent_set;
use bindep::families::{build_g0, build_g2, FamilyParams, G0Params, G2Params, StripSpec};
use bindep::graph::{DistanceMatrix, Graph};
use bindep::graph6::{parse_graph6, parse_graph6_lines, write_graph6};
use bindep::harness::{
    run_campaign, CampaignEvent, CampaignOptions, CampaignSource, VerificationRecord,
    VerifyOptions,
};
use bindep::solvers::{alpha, alpha_b};
use bindep::supply::ConnectedEnumeration;

#[derive(Parser)]
#[command(name = "bindep", version, about = "Exact toolkit for broadcast independence in connected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute alpha and alpha_b with witnesses for a graph6 string or
    /// a newline-delimited graph6 file.
    Solve {
        /// graph6 literal, or a path to a graph6 file
        input: String,
    },
    /// Run a verification campaign and emit one record per graph.
    Verify {
        /// Check all connected graphs with 1..=N vertices (N <= 7;
        /// N = 8 additionally requires --checkpoint)
        #[arg(long, conflicts_with_all = ["random", "file"])]
        max_n: Option<usize>,
        /// Seeded random graphs as "n,p,seed,count"
        #[arg(long, conflicts_with = "file")]
        random: Option<String>,
        /// Newline-delimited graph6 file
        #[arg(long)]
        file: Option<PathBuf>,
        /// Also give fmax = 2 equality graphs a structural G2(0) verdict
        #[arg(long)]
        allow_k0: bool,
        /// Worker threads (output order is unaffected)
        #[arg(long)]
        jobs: Option<usize>,
        /// Progress/checkpoint file for enumeration sources; resumes if
        /// it already exists
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build a family member and print its graph6 line.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: usize,
        /// Number of strips (g0 only)
        #[arg(long, default_value_t = 2)]
        l: usize,
        /// Sizes of layers 1..=len per strip, comma-separated; the root
        /// layer is always one vertex. Default: all 1.
        #[arg(long)]
        layer_sizes: Option<String>,
        /// Extra clique vertices (g0 only)
        #[arg(long, default_value_t = 0)]
        r: usize,
        /// Cross-edge pattern between the terminal layers (g2 only)
        #[arg(long, value_enum, default_value_t = Cross::Complete)]
        cross: Cross,
        /// Permit the degenerate k = 0 (g2 only)
        #[arg(long)]
        allow_k0: bool,
    },
    /// Run the independent-set extraction and print its certificate.
    Extract {
        /// graph6 literal
        #[arg(long)]
        graph: String,
        /// Whitespace-separated values aligned with vertex ids
        #[arg(long)]
        broadcast: String,
    },
    /// Print every labeled connected graph on N vertices as graph6.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Permit n = 8 (2^28 adjacency patterns)
        #[arg(long)]
        allow_n8: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    G0,
    G2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cross {
    Single,
    Complete,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Solve { input } => solve(&input),
        Command::Verify {
            max_n,
            random,
            file,
            allow_k0,
            jobs,
            checkpoint,
            format,
        } => verify(max_n, random, file, allow_k0, jobs, checkpoint, format),
        Command::Gen {
            family,
            k,
            l,
            layer_sizes,
            r,
            cross,
            allow_k0,
        } => gen(family, k, l, layer_sizes, r, cross, allow_k0),
        Command::Extract { graph, broadcast } => extract(&graph, &broadcast),
        Command::Enumerate { n, allow_n8 } => enumerate(n, allow_n8),
    }
}

fn solve(input: &str) -> anyhow::Result<ExitCode> {
    let graphs: Vec<(String, Graph)> = if std::path::Path::new(input).is_file() {
        let bytes = std::fs::read(input)?;
        parse_graph6_lines(&bytes)
            .into_iter()
            .map(|(line, res)| {
                res.map(|g| (format!("line {line}"), g))
                    .with_context(|| format!("line {line}"))
            })
            .collect::<anyhow::Result<_>>()?
    } else {
        vec![(
            "input".to_string(),
            parse_graph6(input.as_bytes()).context("not a file and not valid graph6")?,
        )]
    };

    let out = std::io::stdout();
    let mut out = out.lock();
    for (label, g) in graphs {
        let a = alpha(&g)?;
        let b = alpha_b(&g)?;
        writeln!(out, "{label}: {} (n={})", write_graph6(&g)?, g.n())?;
        writeln!(out, "  alpha   = {}  witness {:?}", a.value, a.witness)?;
        writeln!(
            out,
            "  alpha_b = {}  witness \"{}\"  support {:?}",
            b.value,
            b.witness.to_line(),
            b.witness.support()
        )?;
        writeln!(
            out,
            "  optimal fmax values {:?}",
            b.optimal_fmax.iter().collect::<Vec<_>>()
        )?;
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(
    max_n: Option<usize>,
    random: Option<String>,
    file: Option<PathBuf>,
    allow_k0: bool,
    jobs: Option<usize>,
    checkpoint: Option<PathBuf>,
    format: Format,
) -> anyhow::Result<ExitCode> {
    let source = match (max_n, random, file) {
        (Some(n), None, None) => {
            if n > 8 {
                bail!("--max-n supports at most 8");
            }
            if n == 8 && checkpoint.is_none() {
                bail!("--max-n 8 sweeps 2^28 patterns; a --checkpoint file is required");
            }
            CampaignSource::EnumerateUpTo { max_n: n }
        }
        (None, Some(spec), None) => parse_random_spec(&spec)?,
        (None, None, Some(path)) => CampaignSource::File(path),
        _ => bail!("choose exactly one of --max-n, --random, --file"),
    };
    let opts = CampaignOptions {
        verify: VerifyOptions { allow_k0 },
        jobs,
        checkpoint,
    };

    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    if matches!(format, Format::Csv) {
        out.write_all(csv_line(CSV_HEADER.iter().map(|s| s.to_string()))?.as_bytes())?;
    }

    let mut sink_error: Option<anyhow::Error> = None;
    let summary = run_campaign(&source, &opts, |event| {
        if sink_error.is_some() {
            return;
        }
        let res = match event {
            CampaignEvent::Record(record) => match format {
                Format::Csv => csv_record(&record)
                    .and_then(|line| out.write_all(line.as_bytes()).map_err(Into::into)),
                Format::Json => serde_json::to_string(&record)
                    .map_err(anyhow::Error::from)
                    .and_then(|line| writeln!(out, "{line}").map_err(Into::into)),
            },
            CampaignEvent::InputError { id, message } => {
                eprintln!("input error at graph {id}: {message}");
                Ok(())
            }
        };
        if let Err(e) = res {
            sink_error = Some(e);
        }
    })?;
    if let Some(e) = sink_error {
        return Err(e);
    }

    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&summary)?)?,
        Format::Csv => eprintln!("{}", serde_json::to_string(&summary)?),
    }
    out.flush()?;
    Ok(if summary.is_clean() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn parse_random_spec(spec: &str) -> anyhow::Result<CampaignSource> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 4 {
        bail!("--random expects n,p,seed,count");
    }
    Ok(CampaignSource::Random {
        n: parts[0].trim().parse().context("bad n")?,
        p: parts[1].trim().parse().context("bad p")?,
        seed: parts[2].trim().parse().context("bad seed")?,
        count: parts[3].trim().parse().context("bad count")?,
    })
}

const CSV_HEADER: &[&str] = &[
    "id",
    "graph6",
    "n",
    "diameter",
    "alpha",
    "alpha_b",
    "fmax_values",
    "trivial",
    "bounds",
    "equality",
    "k0_anomaly",
    "family",
    "family_k",
    "family_l",
    "family_r",
    "extraction_case",
    "extraction_set_size",
    "violations",
];

/// One CSV row (with trailing newline) for a record.
fn csv_record(record: &VerificationRecord) -> anyhow::Result<String> {
    let fmax = join(record.optimal_fmax.iter());
    let bounds = record
        .bounds
        .iter()
        .map(|b| format!("{}/{}", b.bound_num, b.bound_den))
        .collect::<Vec<_>>()
        .join(";");
    let (family, fam_k, fam_l, fam_r) = match &record.recognizer {
        Some(FamilyParams::G0(p)) => (
            "G0".to_string(),
            p.k.to_string(),
            p.ell().to_string(),
            p.r_size.to_string(),
        ),
        Some(FamilyParams::G2(p)) => ("G2".to_string(), p.k.to_string(), String::new(), String::new()),
        None => Default::default(),
    };
    let (case, set_size) = match &record.extraction {
        Some(e) => (format!("{:?}", e.case), e.set_size.to_string()),
        None => Default::default(),
    };
    csv_line(
        [
            record.id.to_string(),
            record.graph6.clone(),
            record.n.to_string(),
            record.diameter.to_string(),
            record.alpha.to_string(),
            record.alpha_b.to_string(),
            fmax,
            record.trivial_case.to_string(),
            bounds,
            record.equality.to_string(),
            record.k0_anomaly.to_string(),
            family,
            fam_k,
            fam_l,
            fam_r,
            case,
            set_size,
            record.violations.join(";"),
        ]
        .into_iter(),
    )
}

fn csv_line(fields: impl Iterator<Item = String>) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields)?;
    let bytes = w.into_inner()?;
    Ok(String::from_utf8(bytes)?)
}

fn join<T: ToString>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

fn gen(
    family: Family,
    k: usize,
    l: usize,
    layer_sizes: Option<String>,
    r: usize,
    cross: Cross,
    allow_k0: bool,
) -> anyhow::Result<ExitCode> {
    let strip_len = match family {
        Family::G0 => 2 * k,
        Family::G2 => 2 * k + 1,
    };
    let strip = match layer_sizes {
        None => StripSpec::uniform(strip_len, 1),
        Some(text) => {
            let sizes: Vec<usize> = text
                .split(',')
                .map(|t| t.trim().parse().context("bad layer size"))
                .collect::<anyhow::Result<_>>()?;
            if sizes.len() != strip_len {
                bail!("--layer-sizes needs {strip_len} entries for this family and k");
            }
            let mut layer_sizes = vec![1];
            layer_sizes.extend(sizes);
            StripSpec {
                layer_sizes,
                odd_patterns: vec![bindep::families::OddPattern::Complete; strip_len / 2],
            }
        }
    };
    let graph = match family {
        Family::G0 => build_g0(&G0Params {
            k,
            strips: vec![strip; l],
            r_size: r,
        })?,
        Family::G2 => {
            let terminal = *strip.layer_sizes.last().expect("nonempty");
            let cross_edges = match cross {
                Cross::Single => vec![(0, 0)],
                Cross::Complete => (0..terminal)
                    .flat_map(|i| (0..terminal).map(move |j| (i, j)))
                    .collect(),
            };
            build_g2(
                &G2Params {
                    k,
                    strips: [strip.clone(), strip],
                    cross_edges,
                },
                allow_k0,
            )?
        }
    };
    println!("{}", write_graph6(&graph)?);
    Ok(ExitCode::SUCCESS)
}

fn extract(graph: &str, broadcast: &str) -> anyhow::Result<ExitCode> {
    let g = parse_graph6(graph.as_bytes())?;
    let f = Broadcast::parse_line(broadcast)?;
    let d = DistanceMatrix::new(&g)?;
    let cert = extract_independent_set(&g, &d, &f)?;
    println!("{}", serde_json::to_string_pretty(&cert)?);
    Ok(ExitCode::SUCCESS)
}

fn enumerate(n: usize, allow_n8: bool) -> anyhow::Result<ExitCode> {
    let stream = if allow_n8 {
        ConnectedEnumeration::with_large_opt_in(n)?
    } else {
        ConnectedEnumeration::new(n)?
    };
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    for g in stream {
        writeln!(out, "{}", write_graph6(&g)?)?;
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}
