//! Command line front end: build groups, dump representation data, verify
//! and classify quantizers, synthesize from cocycles, quantize algebras.
//! All computation lives in the library; every verb is a thin wrapper.

mod commands;
mod fmt;
mod json;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quantizer_core::Error;

#[derive(Parser)]
#[command(
    name = "quantizer",
    about = "Quantizers of module categories over finite groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Common {
    /// Group spec such as S3, A4, C6, C2xC2.
    #[arg(long)]
    group: Option<String>,
    /// Input file path.
    #[arg(long = "in")]
    input: Option<String>,
    /// Output file path (stdout when omitted).
    #[arg(long)]
    out: Option<String>,
    /// Output format.
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Seed for the randomized basis construction and sampling
    /// (the QUANTIZER_SEED environment variable overrides this flag).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Residual tolerance for accept/reject decisions.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

impl Common {
    fn effective_seed(&self) -> u64 {
        match std::env::var("QUANTIZER_SEED") {
            Ok(v) => v.parse().unwrap_or(self.seed),
            Err(_) => self.seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Group structure: order, labels, conjugacy classes.
    Group {
        #[command(subcommand)]
        verb: GroupVerb,
    },
    /// Representation data: character table, Clebsch-Gordan integers.
    Rep {
        #[command(subcommand)]
        verb: RepVerb,
    },
    /// Fourier transform diagnostics.
    Fourier {
        #[command(subcommand)]
        verb: FourierVerb,
    },
    /// Quantizer verification, block decomposition and classification.
    Quantizer {
        #[command(subcommand)]
        verb: QuantizerVerb,
    },
    /// Cocycles on the dual of an abelian group.
    Cocycle {
        #[command(subcommand)]
        verb: CocycleVerb,
    },
    /// Equivariant algebras and their deformations.
    Algebra {
        #[command(subcommand)]
        verb: AlgebraVerb,
    },
}

#[derive(Subcommand)]
enum GroupVerb {
    /// Print order, element labels and conjugacy classes.
    Info {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum RepVerb {
    /// Character table over conjugacy classes.
    Table {
        #[command(flatten)]
        common: Common,
    },
    /// Clebsch-Gordan integers for all irrep pairs.
    Cg {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum FourierVerb {
    /// Transform an element file into its Fourier blocks.
    Transform {
        #[command(flatten)]
        common: Common,
        /// Treat the input as an element of C[G x G].
        #[arg(long)]
        pair: bool,
    },
    /// Transform seeded random elements forward and back; report the
    /// worst roundtrip residual.
    Roundtrip {
        #[command(flatten)]
        common: Common,
        /// Work in C[G x G] instead of C[G].
        #[arg(long)]
        pair: bool,
        /// Number of random elements.
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum QuantizerVerb {
    /// Check coherence, naturality and normalization of an element file.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Decompose an element file into multiplicity-space blocks.
    Blocks {
        #[command(flatten)]
        common: Common,
    },
    /// Assemble a block file into a group algebra element.
    Assemble {
        #[command(flatten)]
        common: Common,
    },
    /// Print the family table of quantizers for s3 or a4.
    Classify {
        /// Which classified group (s3 or a4).
        which: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print the scalar block relation set for a group.
    Relations {
        /// Group spec (s3, a4 or an abelian spec).
        which: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum CocycleVerb {
    /// Check the 2-cocycle identity and normalization of a table file.
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Build the quantizer element carried by a cocycle file.
    Quantize {
        #[command(flatten)]
        common: Common,
    },
    /// Reduce a cocycle to its canonical cohomology representative.
    Reduce {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum AlgebraVerb {
    /// Deform an equivariant algebra by a quantizer.
    Quantize {
        #[command(flatten)]
        common: Common,
        /// Builtin algebra: `functions` (pointwise functions on G) or
        /// `characters` (character-graded group algebra, abelian G).
        #[arg(long)]
        algebra: Option<String>,
        /// Quantizer element file.
        #[arg(long)]
        quantizer: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Group { verb } => match verb {
            GroupVerb::Info { common } => commands::group_info(&common),
        },
        Command::Rep { verb } => match verb {
            RepVerb::Table { common } => commands::rep_table(&common),
            RepVerb::Cg { common } => commands::rep_cg(&common),
        },
        Command::Fourier { verb } => match verb {
            FourierVerb::Transform { common, pair } => commands::fourier_transform(&common, pair),
            FourierVerb::Roundtrip { common, pair, count } => {
                commands::fourier_roundtrip(&common, pair, count)
            }
        },
        Command::Quantizer { verb } => match verb {
            QuantizerVerb::Verify { common } => commands::quantizer_verify(&common),
            QuantizerVerb::Blocks { common } => commands::quantizer_blocks(&common),
            QuantizerVerb::Assemble { common } => commands::quantizer_assemble(&common),
            QuantizerVerb::Classify { which, common } => {
                commands::quantizer_classify(&which, &common)
            }
            QuantizerVerb::Relations { which, common } => {
                commands::quantizer_relations(&which, &common)
            }
        },
        Command::Cocycle { verb } => match verb {
            CocycleVerb::Check { common } => commands::cocycle_check_cmd(&common),
            CocycleVerb::Quantize { common } => commands::cocycle_quantize(&common),
            CocycleVerb::Reduce { common } => commands::cocycle_reduce(&common),
        },
        Command::Algebra { verb } => match verb {
            AlgebraVerb::Quantize { common, algebra, quantizer } => {
                commands::algebra_quantize(&common, algebra.as_deref(), &quantizer)
            }
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let (kind, code) = classify_error(&err);
            let body = json::ErrorJson {
                error: json::ErrorBody { kind, message: err.to_string() },
            };
            eprintln!("{}", serde_json::to_string(&body).expect("error serialization"));
            ExitCode::from(code)
        }
    }
}

/// Distinct exit codes per failure class: 2 invalid input, 3 io/json,
/// 4 failed verification, 5 unsupported/capacity, 6 structural mismatch,
/// 7 singular operator.
fn classify_error(err: &Error) -> (&'static str, u8) {
    match err {
        Error::Invalid(m) if m.starts_with("io:") || m.starts_with("json:") => ("io", 3),
        Error::Invalid(_) => ("invalid", 2),
        Error::Capacity { .. } => ("capacity", 5),
        Error::Unsupported(_) => ("unsupported", 5),
        Error::Mismatch(_) => ("mismatch", 6),
        Error::Numerical { .. } => ("verification", 4),
        Error::Rejected { .. } => ("verification", 4),
        Error::Singular(_) => ("singular", 7),
    }
}
