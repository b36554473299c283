//! `skewbrace`: command-line access to brace validation, ideals, semidirect
//! products, induced structures and enumeration.
//!
//! Exit codes: 0 success, 1 valid input with a negative answer, 2 input
//! error, 3 enumeration guard exceeded.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use skewbrace::PqKind;

#[derive(Parser)]
#[command(name = "skewbrace", version, about = "Finite skew braces")]
struct Cli {
    /// Write the machine-readable result (JSON) to this file.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Largest group order `enumerate` will search.
    #[arg(long, global = true)]
    limit: Option<usize>,
    /// Search order for `enumerate`; the result does not depend on it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the brace axiom; report a violating triple on failure.
    Verify { brace: PathBuf },
    /// Print the γ-function table.
    Gamma { brace: PathBuf },
    /// Classify every circ subgroup as left ideal, strong left ideal or ideal.
    Ideals { brace: PathBuf },
    /// Output the opposite brace.
    Opposite { brace: PathBuf },
    /// Check admissibility of a semidirect product and build it.
    Sdp {
        spec: PathBuf,
        /// Only report admissibility; do not build the brace.
        #[arg(long)]
        check_only: bool,
    },
    /// List every brace with the given circ group.
    Enumerate { group: PathBuf },
    /// Build the catalog of braces on the cyclic or metacyclic group of order pq.
    Pq {
        p: usize,
        q: usize,
        #[arg(long, default_value = "metacyclic")]
        which: PqKind,
    },
    /// Build the brace induced by a regular permutation group on the cosets
    /// of the complement and one on the complement itself.
    Induce {
        /// Regular permutation group on the left cosets of the complement.
        coset_action: PathBuf,
        /// Regular permutation group on the complement.
        complement_action: PathBuf,
        /// Group table of the whole group.
        group: PathBuf,
        /// Elements of the complement, comma separated.
        complement: String,
        /// Elements of the normal subgroup; found automatically if omitted.
        #[arg(long)]
        normal: Option<String>,
    },
    /// Decide whether two groups are isomorphic and print a witness.
    Isomorphic { first: PathBuf, second: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = commands::Options {
        output: cli.output,
        limit: cli.limit,
        seed: cli.seed,
    };
    let result = match cli.command {
        Command::Verify { brace } => commands::verify(&opts, &brace),
        Command::Gamma { brace } => commands::gamma(&opts, &brace),
        Command::Ideals { brace } => commands::ideals(&opts, &brace),
        Command::Opposite { brace } => commands::opposite(&opts, &brace),
        Command::Sdp { spec, check_only } => commands::sdp(&opts, &spec, check_only),
        Command::Enumerate { group } => commands::enumerate(&opts, &group),
        Command::Pq { p, q, which } => commands::pq(&opts, p, q, which),
        Command::Induce {
            coset_action,
            complement_action,
            group,
            complement,
            normal,
        } => commands::induce(
            &opts,
            &coset_action,
            &complement_action,
            &group,
            &complement,
            normal.as_deref(),
        ),
        Command::Isomorphic { first, second } => commands::isomorphic(&opts, &first, &second),
    };
    match result {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("{}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
