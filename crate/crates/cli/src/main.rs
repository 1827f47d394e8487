use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use horofano::commands::{
    cmd_bound, cmd_check, cmd_dynkin_table, cmd_enumerate, cmd_modules, CommandError, EnumerateOptions, Filter,
};
use horofano::io::{read_polytope, read_space};
use horofano::rootsys::Family;

/// Fano horospherical varieties through their reflexive polytopes.
#[derive(Parser)]
#[command(name = "horofano", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    Smooth,
    Locfac,
    Qfact,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => Filter::All,
            FilterArg::Smooth => Filter::Smooth,
            FilterArg::Locfac => Filter::LocallyFactorial,
            FilterArg::Qfact => Filter::QFactorial,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List reflexive polytopes of a space up to automorphism.
    Enumerate {
        space: PathBuf,
        /// Fixed coordinate box; by default the box grows until the count settles.
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long, default_value_t = 16)]
        max_bound: i64,
        /// Consecutive boxes with equal counts required to stop.
        #[arg(long, default_value_t = 3)]
        patience: usize,
        /// Which polytopes to write.
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        /// Directory receiving one JSON file per polytope.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write one representative per class under color-permuting automorphisms.
        #[arg(long)]
        permute_colors: bool,
    },
    /// Full report on one polytope.
    Check { space: PathBuf, polytope: PathBuf },
    /// Regenerate the table of color coefficients for connected Dynkin pairs.
    DynkinTable,
    /// Fundamental weights with a horospherical simple module.
    Modules {
        #[arg(long = "type")]
        family: String,
        #[arg(long)]
        rank: usize,
    },
    /// Exact finiteness bound for a space.
    Bound { space: PathBuf },
}

fn run(cli: Cli) -> Result<String, CommandError> {
    match cli.command {
        Command::Enumerate { space, bound, max_bound, patience, filter, out, permute_colors } => {
            let space = read_space(&space)?;
            let opts = EnumerateOptions { bound, max_bound, patience, filter: filter.into(), permute_colors };
            Ok(cmd_enumerate(&space, &opts, out.as_deref())?.summary)
        }
        Command::Check { space, polytope } => {
            let space = read_space(&space)?;
            let q = read_polytope(&polytope)?;
            cmd_check(&space, &q)
        }
        Command::DynkinTable => {
            let t = cmd_dynkin_table();
            Ok(format!(
                "{}rows_matching={} errata={} mismatches={}\n",
                t.text, t.matching, t.errata, t.mismatches
            ))
        }
        Command::Modules { family, rank } => {
            let family: Family = family.parse()?;
            cmd_modules(family, rank)
        }
        Command::Bound { space } => Ok(cmd_bound(&read_space(&space)?)),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
