use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "coevent", version, about = "Quantum measures, co-event schemes and their tests")]
pub struct Cli {
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,

    /// Zero tolerance for floating systems and lattice checks.
    #[arg(long, global = true, value_name = "TOL", allow_negative_numbers = true)]
    pub tolerance: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SystemArg {
    /// Registry name or path to a system file.
    #[arg(long, value_name = "NAME|PATH")]
    pub system: String,
}

#[derive(Debug, Args)]
pub struct SchemeArg {
    /// classical, linear[-unital], quadratic[-unital], poly:N[-unital], multiplicative or approx:EPS.
    #[arg(long, default_value = "multiplicative")]
    pub scheme: String,
}

#[derive(Debug, Args)]
pub struct PartitionArg {
    /// Named registry partition, `finest`, `trivial`, or blocks such as `A=a1,a2|B=b1,b2`.
    #[arg(long, value_name = "BLOCKS")]
    pub partition: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the built-in systems.
    Systems {
        /// Print one system in the system-file format.
        #[arg(long, value_name = "NAME")]
        export: Option<String>,
    },
    /// Null events of a system.
    Nullsets {
        #[command(flatten)]
        system: SystemArg,
        /// Only null events with no non-empty null proper subset.
        #[arg(long)]
        minimal: bool,
    },
    /// Co-events of a scheme.
    Coevents {
        #[command(flatten)]
        system: SystemArg,
        #[command(flatten)]
        scheme: SchemeArg,
    },
    /// Which co-events of a scheme are classical on a partition.
    Classify {
        #[command(flatten)]
        system: SystemArg,
        #[command(flatten)]
        scheme: SchemeArg,
        #[command(flatten)]
        partition: PartitionArg,
        /// Print the question/answer table for each co-event.
        #[arg(long)]
        table: bool,
    },
    /// Weak, strong and total consistency of a coarse graining.
    Consistency {
        #[command(flatten)]
        system: SystemArg,
        #[command(flatten)]
        partition: PartitionArg,
        #[command(flatten)]
        scheme: SchemeArg,
    },
    /// The 33-ray Peres set.
    Pks {
        #[command(subcommand)]
        action: PksCommand,
    },
    /// The qubit lattice with spontaneous collapse.
    Lattice {
        #[command(subcommand)]
        action: LatticeCommand,
    },
    /// Coin-toss hypothesis tests in exact arithmetic.
    Coin {
        #[command(subcommand)]
        action: CoinCommand,
    },
    /// A preclusive quadratic co-event for a system.
    Witness {
        #[command(flatten)]
        system: SystemArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum PksCommand {
    /// Colouring search, nullity check and the co-event table.
    Verify,
    /// A preclusive co-event that affirms one colour on one ray.
    Coevent {
        /// linear or multiplicative.
        #[arg(long)]
        scheme: String,
        /// Ray in shorthand, e.g. `112` or `-102`.
        #[arg(long, allow_hyphen_values = true)]
        ray: String,
        /// green or red.
        #[arg(long, default_value = "green")]
        colour: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum LatticeCommand {
    /// Check the collapse-model identities on one lattice.
    Verify {
        /// Half the number of qubits on a surface.
        #[arg(long = "N", value_name = "N")]
        width: Option<usize>,
        #[arg(long)]
        steps: Option<usize>,
        /// Collapse parameter in [0, 1].
        #[arg(long = "X", value_name = "X")]
        x: Option<f64>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Lattice description file; overrides the other options.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CoinCommand {
    /// One-tailed test of the observed head count.
    Test {
        #[arg(long)]
        p: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: String,
        #[arg(long)]
        observed: usize,
    },
    /// Support sizes of the uniform-coin counterexamples.
    Support {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: String,
    },
}
