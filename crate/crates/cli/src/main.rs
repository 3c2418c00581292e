// SPDX-License-Identifier: Apache-2.0

mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Lattice checks for OG10-type hyperkähler manifolds.
#[derive(Parser, Debug)]
#[command(name = "og10lat", version)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Coordinate box for searches.
    #[arg(long, global = true, default_value_t = 3)]
    radius: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rank, signature, determinant, parity and discriminant group.
    Info { lattice: String },
    /// Discriminant form.
    Disc {
        lattice: String,
        /// Print the machine-readable form.
        #[arg(long)]
        machine: bool,
    },
    /// Orthogonal complement of the span of some vectors.
    Complement {
        lattice: String,
        /// Vectors separated by `;`, entries by spaces or commas.
        #[arg(long)]
        vectors: String,
    },
    /// Saturation of the span of some vectors.
    Saturate {
        lattice: String,
        #[arg(long)]
        vectors: String,
    },
    /// Vectors in the coordinate box of side `2 radius + 1`.
    Enumerate {
        lattice: String,
        #[arg(long, allow_hyphen_values = true)]
        square: Option<i64>,
        #[arg(long)]
        divisibility: Option<i64>,
        #[arg(long)]
        primitive: bool,
    },
    /// The overlattice of `v^⊥ ⊕ [-6]`.
    GammaV { v_perp: String },
    /// Numerical moduli space check on a marked lattice document.
    Nms {
        /// Document with lattice `L` and `vectors ns`.
        file: String,
        /// A fixed σ, overriding the search and any `vectors sigma`.
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<String>,
    },
    /// Twisted numerical moduli space check.
    NmsTwisted {
        /// Document with lattice `L` and `vectors ns`.
        file: String,
        /// A fixed σ, overriding the search and any `vectors sigma`.
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<String>,
        /// Accept primitive copies of `U(n)` that are not direct summands.
        #[arg(long)]
        embedding_only: bool,
    },
    /// Conditions on a Hassett discriminant, or a table over `--range a..b`.
    Hassett {
        d: Option<u64>,
        /// Inclusive range `a..b`.
        #[arg(long)]
        range: Option<String>,
    },
    /// `L_d` from `A2 ⊕ [vd_square]` and a U certificate search.
    BuildLd {
        /// Square of `v_d`, even and negative.
        #[arg(long, allow_hyphen_values = true)]
        vd_square: i64,
        /// `trivial`, `order3`, or glue vectors `a/b c/d e/f; ...`.
        #[arg(long, default_value = "trivial", allow_hyphen_values = true)]
        glue: String,
    },
    /// Classify an involution given in a document with `ns` and `g`.
    Involution { file: String },
    /// Overlattice of `S ⊕ K` generated by glue vectors.
    Glue {
        s: String,
        k: String,
        /// Rational glue vectors in `S ⊕ K` coordinates, `;` between vectors.
        #[arg(long, allow_hyphen_values = true)]
        glue: String,
    },
    /// Extend `phi_s ⊕ phi_k` across glue, from a document.
    ExtendIsometry { file: String },
}

pub enum Outcome {
    Success,
    No,
    Inconclusive,
}

impl Outcome {
    fn code(&self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::No => 1,
            Outcome::Inconclusive => 2,
        }
    }
}

const INPUT_ERROR: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { INPUT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.command, cli.radius) {
        Ok((outcome, report)) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json()).expect("json")
                );
            } else {
                print!("{}", report.to_text());
            }
            ExitCode::from(outcome.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
