//! `occam`: bounds, constructions and searches for `Occ(m, n, r)`, subgroup
//! radii and fusion sequences of finite groups.
//!
//! Exit status is 0 on success, 2 when some requested value exceeded the
//! budget (partial results are still written) and 3 on usage errors.

mod commands;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use occam_core::Budget;

use commands::CliError;
use table::Format;

const EXIT_BUDGET: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "occam", version, about = "Occam radii, Occ(m,n,r) bounds and group fusion sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true)]
    m: Option<usize>,
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    r: Option<usize>,
    /// Group expression such as D4, Z2xZ6 or Dic3.
    #[arg(long, global = true)]
    group: Option<String>,
    /// A 0/1 word over the elements, or comma-separated generators.
    #[arg(long, global = true)]
    subgroup: Option<String>,
    /// Highest fusion-sequence index to compute.
    #[arg(long, global = true, default_value_t = 3)]
    terms: usize,
    /// Log2 of the evaluation budget per step.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_LOG2, value_parser = clap::value_parser!(u32).range(0..=63))]
    budget: u32,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Family file in the JSON family format.
    #[arg(long, global = true)]
    family: Option<PathBuf>,
    /// Largest group order included in the census.
    #[arg(long, global = true, default_value_t = 12)]
    max_order: usize,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Class-count upper bound on Occ(m,n,r) with its witness vector.
    OccBound,
    /// Largest verified construction for Occ(m,n,r).
    OccConstruct,
    /// Certified interval or exact value of Occ(m,n,r).
    OccExact,
    /// Radii of the subgroups of a group.
    GroupRadius,
    /// Order, rank and Occ(G).
    GroupOcc,
    /// Fusion numbers F0..Fk of the subgroup family.
    GroupFusion,
    /// Radius of every member of a family file.
    PosetRadius,
    /// Fusion sequence of a family file.
    PosetFusion,
    /// Order, rank, Occ and fusion numbers across the tabulated groups.
    Census,
}

fn run(cli: &Cli) -> Result<table::Rendered, CliError> {
    let budget = Budget::from_log2(cli.budget);
    let (m, n, r) = (cli.m, cli.n, cli.r);
    match cli.command {
        Command::OccBound => commands::occ_bound(m, n, r),
        Command::OccConstruct => commands::occ_construct(m, n, r),
        Command::OccExact => commands::occ_exact(m, n, r, budget),
        Command::GroupRadius => commands::group_radius(&commands::parse_group(cli.group.as_deref())?, cli.subgroup.as_deref()),
        Command::GroupOcc => commands::group_occ(&commands::parse_group(cli.group.as_deref())?),
        Command::GroupFusion => commands::group_fusion(&commands::parse_group(cli.group.as_deref())?, cli.terms, budget, cli.format),
        Command::PosetRadius => commands::poset_radius(cli.family.as_deref()),
        Command::PosetFusion => commands::poset_fusion(cli.family.as_deref(), cli.terms, budget, cli.format),
        Command::Census => commands::census(cli.max_order, cli.terms, budget, cli.format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().expect("thread pool configured once");
    }
    let rendered = match run(&cli) {
        Ok(r) => r,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let text = rendered.output(cli.format);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::FAILURE;
    }
    if rendered.exceeded {
        ExitCode::from(EXIT_BUDGET)
    } else {
        ExitCode::SUCCESS
    }
}
