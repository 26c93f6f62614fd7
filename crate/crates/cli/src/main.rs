// SPDX-License-Identifier: Apache-2.0

//! `multauto`: command-line front end.
//!
//! Exit codes: 0 success, 1 property violation or inconclusive result
//! (the report is still printed), 2 usage or input error.

mod commands;
mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "multauto", version, about = "Multiplicative automatic sequences")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    pub format: Format,

    /// Worker threads for the exhaustive scans; 1 runs sequentially.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a DFAO at `n` or on an inclusive range `a..b`.
    Eval {
        /// DFAO file, or the name of a built-in fixture.
        input: String,
        /// `n`, or `a..b`.
        at: String,
    },
    /// Run the classification pipeline.
    Classify {
        input: String,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Also write the structured report to this file.
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
    /// List the built-in fixtures, or print one as a DFAO file.
    Fixtures {
        #[arg(long)]
        emit: Option<String>,
    },
    /// Check the leading-zero condition and report warnings.
    Validate { input: String },
    /// The k-kernel with (alpha, r) witnesses.
    Kernel { input: String },
    /// Growth of the support language, or of a level set with --value.
    Growth {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
    },
    /// a(p^alpha) for alpha = 0..alpha-max.
    Profile {
        input: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 60)]
        alpha_max: u32,
    },
    /// Search n1 != n2 (mod p) with n1 ~ n2 and p n1 ~ p n2.
    EquivPair {
        input: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1 << 16)]
        bound: u64,
    },
    /// Arid sets, read from JSON files.
    Arid {
        #[command(subcommand)]
        command: AridCommand,
    },
    /// Generalized geometric progressions.
    Ggp {
        #[command(subcommand)]
        command: GgpCommand,
    },
    /// Residues of an IP set modulo m.
    Ipr {
        #[arg(long, default_value_t = 0)]
        n0: u64,
        /// Comma-separated sidelengths.
        #[arg(long, value_delimiter = ',')]
        sides: Vec<u64>,
        #[arg(long = "mod")]
        modulus: u64,
        /// Enumerate subsets even when a sumset would be cheaper.
        #[arg(long)]
        enumerate: bool,
    },
    /// Small-gcd certificate for [w v^l u]_k.
    Cert {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        w: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        u: String,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// Split a vanishing sum sum x_i k^alpha_i into vanishing groups.
    Partition {
        #[arg(long)]
        k: u32,
        /// Comma-separated rationals.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, value_delimiter = ',')]
        alpha: Vec<u64>,
        #[arg(long)]
        c: u64,
    },
    /// Dirichlet and mock Dirichlet characters.
    Character {
        #[command(subcommand)]
        command: CharacterCommand,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct BoundArgs {
    /// Exhaustive window [0, N].
    #[arg(long = "N", default_value_t = 1_000_000)]
    pub n: u64,
    #[arg(long, default_value_t = 64)]
    pub m_max: u64,
    #[arg(long, default_value_t = 50)]
    pub p_max: u64,
    #[arg(long, default_value_t = 60)]
    pub alpha_max: u32,
    #[arg(long, default_value_t = 64)]
    pub period_max: u64,
}

#[derive(Subcommand, Debug)]
pub enum AridCommand {
    /// Membership of n.
    Member { file: String, n: String },
    /// Members up to N.
    Enumerate {
        file: String,
        #[arg(long = "N")]
        n: u64,
    },
    /// Geometric form of each part, or a forbidden family.
    Check { file: String },
    /// Certified rank of each part.
    Rank { file: String },
    /// Whether A is contained in B on [0, N].
    Contain {
        a: String,
        b: String,
        #[arg(long = "N")]
        n: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum GgpCommand {
    /// Digit encoding of the value at the given exponents.
    Encode {
        #[arg(long)]
        k: u32,
        /// Comma-separated x_0, x_1, ..., x_r.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Comma-separated alpha_1, ..., alpha_r.
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<u64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CharacterCommand {
    /// All characters modulo m.
    List {
        #[arg(long = "mod")]
        modulus: u64,
    },
    /// The mock character xi^{nu_k(n)} chi(n / k^{nu_k(n)}).
    Mock {
        #[arg(long)]
        k: u32,
        /// Modulus of chi, a power of k.
        #[arg(long = "mod")]
        modulus: u64,
        /// Root of unity, e.g. `-1`, `1` or `zeta:3,1`.
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
        /// Index into `character list`; defaults to 1 (the first
        /// nonprincipal character) when there is one.
        #[arg(long)]
        index: Option<usize>,
        /// Print the DFAO file instead of a description.
        #[arg(long)]
        emit: bool,
    },
    /// A character mod m as a base-k DFAO.
    Lift {
        #[arg(long = "mod")]
        modulus: u64,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(2);
        }
        if rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .is_err()
        {
            eprintln!("error: could not configure the thread pool");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
