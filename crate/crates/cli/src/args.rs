use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Exact computations on nilpotent evolution algebras of maximal nilindex.
///
/// Exit status: 0 success, 2 unreadable or malformed input, 3 violated
/// precondition, 4 property rejected (not isomorphic, map rejected,
/// oracle mismatch).
#[derive(Debug, Parser)]
#[command(name = "evoalg", version)]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed for the randomized falsifiers.
    #[arg(long, global = true, env = "EVOALG_SEED", default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nilindex, rank, dim E^2, form check, index set and eta.
    Analyze {
        /// Algebra file: {"n": N, "matrix": [["p/q", ...], ...]}.
        algebra: PathBuf,
    },
    /// Derivation algebra by closed form, by the linear solver, or both.
    Derivations {
        algebra: PathBuf,
        #[arg(long, value_enum, default_value_t = DerMethod::Both)]
        method: DerMethod,
    },
    /// The automorphism family: alpha domain and the forced last column.
    Automorphisms { algebra: PathBuf },
    /// Search for an isomorphism from the first algebra onto the second.
    Isomorphic { first: PathBuf, second: PathBuf },
    /// Test a linear map against one of the derivation/automorphism notions.
    Check {
        algebra: PathBuf,
        /// Map file: {"matrix": [[...], ...]}; row i is the image of e_i.
        #[arg(long)]
        map: PathBuf,
        #[arg(long, value_enum)]
        kind: CheckKind,
    },
    /// Build an algebra whose derivation algebra has the given parameters.
    Reconstruct {
        /// Spec file: {"d": ["p/q", ...]} with n-2 entries.
        #[arg(long)]
        spec: PathBuf,
        /// Comma-separated nonzero superdiagonal a_(i,i+1), n-1 entries.
        #[arg(long, allow_hyphen_values = true)]
        subdiag: String,
        /// Write the algebra file here and print a report instead.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DerMethod {
    Closed,
    Solver,
    Both,
}

impl DerMethod {
    pub fn name(self) -> &'static str {
        match self {
            DerMethod::Closed => "closed",
            DerMethod::Solver => "solver",
            DerMethod::Both => "both",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Derivation,
    LocalDerivation,
    #[value(name = "2local")]
    TwoLocal,
    Automorphism,
    LocalAutomorphism,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Derivation => "derivation",
            CheckKind::LocalDerivation => "local-derivation",
            CheckKind::TwoLocal => "2local",
            CheckKind::Automorphism => "automorphism",
            CheckKind::LocalAutomorphism => "local-automorphism",
        }
    }
}
