use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use varlat::commands::{
    cmd_derive, cmd_perm, cmd_special, cmd_subgroups, cmd_verify, CliError, CmdOutput,
    LatticeFormat, SpecialSource,
};
use varlat_core::SpecialKind;

/// Verification toolkit for finite lattices, subgroup lattices of small
/// symmetric groups, semigroup identities and nilpotent varieties.
#[derive(Parser)]
#[command(name = "varlat", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate Sub(S_n) and emit the lattice.
    Subgroups {
        /// Degree n (2..=5; 6 with --allow-large).
        #[arg(long)]
        n: usize,
        /// Emit the lattice in this format instead of the summary.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Write the emitted lattice to a file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Permit degree 6 (1455 subgroups).
        #[arg(long)]
        allow_large: bool,
    },
    /// List modular or cancellable elements of a lattice.
    Special {
        /// JSON lattice file ({"elements": [...], "covers": [[i,j],...]}).
        #[arg(long, conflicts_with = "subgroups")]
        lattice: Option<PathBuf>,
        /// Use the subgroup lattice of S_n instead of a file.
        #[arg(long)]
        subgroups: Option<usize>,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Also print a witness for each failing element.
        #[arg(long)]
        witness: bool,
        /// Permit degree 6 with --subgroups.
        #[arg(long)]
        allow_large: bool,
    },
    /// Search for a bounded derivation of an identity from a basis.
    Derive {
        /// Identity basis file in the DSL.
        #[arg(long)]
        basis: PathBuf,
        /// Target identity, e.g. "xyz = zyx" or "xyx = 0".
        #[arg(long)]
        target: String,
        /// Maximum intermediate word length (default: longest side + 2).
        #[arg(long)]
        max_len: Option<usize>,
        /// Maximum number of steps (default: 12).
        #[arg(long)]
        max_steps: Option<usize>,
        /// Write the found chain as JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute Perm_n of a nil presentation.
    Perm {
        /// Presentation file: DSL identities, optional `nil_bound: d` header.
        #[arg(long)]
        basis: PathBuf,
        /// Nilpotency bound (overrides the file header).
        #[arg(long)]
        nil_bound: Option<usize>,
        /// Length n of the permutational identities (1..=5).
        #[arg(long)]
        n: usize,
    },
    /// Run a verification suite and report machine-readable results.
    Verify {
        /// figures | lemma-cancellable | theorem-necessity |
        /// counterexamples | derivations | all
        suite: String,
        /// Directory for the report and certificate files.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Modular,
    Cancellable,
}

fn run(cmd: Cmd) -> Result<CmdOutput, CliError> {
    match cmd {
        Cmd::Subgroups {
            n,
            format,
            out,
            allow_large,
        } => {
            let format = format.map(|f| match f {
                FormatArg::Json => LatticeFormat::Json,
                FormatArg::Dot => LatticeFormat::Dot,
            });
            cmd_subgroups(n, format, out.as_deref(), allow_large)
        }
        Cmd::Special {
            lattice,
            subgroups,
            kind,
            witness,
            allow_large,
        } => {
            let source = match (&lattice, subgroups) {
                (Some(path), None) => SpecialSource::LatticeFile(path),
                (None, Some(n)) => SpecialSource::Subgroups(n),
                _ => {
                    return Err(CliError::Usage(
                        "pass exactly one of --lattice FILE or --subgroups N".into(),
                    ))
                }
            };
            let kind = match kind {
                KindArg::Modular => SpecialKind::Modular,
                KindArg::Cancellable => SpecialKind::Cancellable,
            };
            cmd_special(source, kind, witness, allow_large)
        }
        Cmd::Derive {
            basis,
            target,
            max_len,
            max_steps,
            out,
        } => cmd_derive(&basis, &target, max_len, max_steps, out.as_deref()),
        Cmd::Perm { basis, nil_bound, n } => cmd_perm(&basis, nil_bound, n),
        Cmd::Verify { suite, out } => cmd_verify(&suite, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(cli.cmd) {
        Ok(output) => {
            print!("{}", output.stdout);
            eprintln!("# elapsed: {:.3}s", start.elapsed().as_secs_f64());
            if output.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
