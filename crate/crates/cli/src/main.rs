//! `geomlat` — build lattices of flats, verify their chain-labeling
//! properties, and walk descent paths between maximal chains.
//!
//! Exit codes: 0 = all checked claims hold, 1 = a claim violation was found
//! (a witness is printed), 2 = input or resource error.

mod cmds;
mod emit;

use clap::{Args, Parser, Subcommand};
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use emit::Format;
use geomlat::Caps;

/// Errors that end the run with exit code 2.
#[derive(Debug)]
pub enum CliError {
    /// File path and the underlying I/O failure.
    Io(String, String),
    /// An error surfaced by the core library (bad spec, cap exceeded, …).
    Core(geomlat::Error),
    /// A problem with how the command was invoked.
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(path, msg) => write!(f, "{path}: {msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<geomlat::Error> for CliError {
    fn from(e: geomlat::Error) -> CliError {
        CliError::Core(e)
    }
}

/// What a successfully-run command concluded.
pub enum Outcome {
    /// Every checked claim holds.
    Clean,
    /// At least one claim violation was found and reported.
    Violations,
    /// Some sweep instances failed to run (recorded, not fatal mid-sweep).
    Errors,
}

#[derive(Parser)]
#[command(
    name = "geomlat",
    version,
    about = "Geometric lattices of flats, EL-labelings, and descent paths between maximal chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    caps: CapsArgs,
}

#[derive(Args)]
struct CapsArgs {
    /// Maximum ground-set size accepted from a spec.
    #[arg(long, global = true, value_name = "N")]
    cap_ground: Option<usize>,
    /// Maximum number of flats enumerated per lattice.
    #[arg(long, global = true, value_name = "N")]
    cap_flats: Option<usize>,
    /// Maximum number of maximal chains enumerated per lattice.
    #[arg(long, global = true, value_name = "N")]
    cap_chains: Option<usize>,
}

impl CapsArgs {
    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(n) = self.cap_ground {
            caps.ground = n;
        }
        if let Some(n) = self.cap_flats {
            caps.flats = n;
        }
        if let Some(n) = self.cap_chains {
            caps.chains = n;
        }
        caps
    }
}

/// Atom-order selection for commands that sweep labelings.
#[derive(Args)]
struct OrderSweepArgs {
    /// Use one atom order, written as a comma list such as "4,3,1,2".
    #[arg(long, value_name = "ORDER", conflicts_with_all = ["all_orders", "random_orders"])]
    order: Option<String>,
    /// Sweep every atom order (all n! of them).
    #[arg(long, conflicts_with = "random_orders")]
    all_orders: bool,
    /// Sweep N atom orders sampled with --seed.
    #[arg(long, value_name = "N")]
    random_orders: Option<usize>,
    /// RNG seed used by --random-orders.
    #[arg(long, value_name = "S", default_value_t = 42)]
    seed: u64,
}

impl OrderSweepArgs {
    fn flags(&self) -> cmds::OrderFlags {
        cmds::OrderFlags {
            order: self.order.clone(),
            all_orders: self.all_orders,
            random_orders: self.random_orders,
            seed: self.seed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the lattice of flats and list its elements by rank.
    Lattice {
        /// Matroid spec file (JSON).
        spec: PathBuf,
        /// Write the Hasse diagram as Graphviz DOT to this path.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Check the lattice axioms and the chain-labeling property per order.
    Verify {
        spec: PathBuf,
        #[command(flatten)]
        orders: OrderSweepArgs,
    },
    /// Diameter of the facet–ridge graph on maximal chains, against C(r,2).
    Diameter {
        spec: PathBuf,
        /// Write the facet–ridge graph as Graphviz DOT to this path.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// The lexicographic orientation: sinks, reachability, eccentricities.
    Glex {
        spec: PathBuf,
        /// Atom order (comma list); defaults to the natural order.
        #[arg(long, value_name = "ORDER")]
        order: Option<String>,
        /// Write the orientation as Graphviz DOT to this path.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Straighten one maximal chain to the ascending chain, emitting a word.
    Straighten {
        spec: PathBuf,
        /// The chain, rank by rank, e.g. ";4;3,4;1,2,3,4".
        #[arg(long, value_name = "CHAIN")]
        chain: String,
        /// Atom order (comma list); defaults to the natural order.
        #[arg(long, value_name = "ORDER")]
        order: Option<String>,
    },
    /// Connect one maximal chain to another via a derived atom order.
    Connect {
        spec: PathBuf,
        /// Start chain, e.g. ";4;3,4;1,2,3,4".
        #[arg(long, value_name = "CHAIN")]
        from: String,
        /// Target chain; the derived order makes it the ascending chain.
        #[arg(long, value_name = "CHAIN")]
        to: String,
    },
    /// The reversal chain and its directed distance to the ascending chain.
    Reversal {
        spec: PathBuf,
        /// Atom order (comma list); defaults to the natural order.
        #[arg(long, value_name = "ORDER")]
        order: Option<String>,
    },
    /// Tabulate directed eccentricities against C(r,2) across orders.
    Sharpness {
        spec: PathBuf,
        #[command(flatten)]
        orders: OrderSweepArgs,
        /// Write the table as CSV to this path.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// The second-order descent order on maximal chains.
    DescentOrder {
        spec: PathBuf,
        /// Atom order (comma list); defaults to the natural order.
        #[arg(long, value_name = "ORDER")]
        order: Option<String>,
        /// Also compare the Hasse diagram against the lexicographic orientation.
        #[arg(long)]
        check_glex: bool,
        /// Write the Hasse diagram as Graphviz DOT to this path.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Draw the wiring diagram of a word and test reducedness both ways.
    Wiring {
        /// The word as a comma list of letters, e.g. "1,2,3,1,2,1".
        word: String,
        /// Symmetric-group rank; defaults to max letter + 1.
        #[arg(long, value_name = "R")]
        rank: Option<usize>,
    },
    /// Run the whole claim suite over spec files and random graphic matroids.
    Sweep {
        /// Matroid spec files (JSON).
        specs: Vec<PathBuf>,
        /// Also generate N random connected simple graphic matroids.
        #[arg(long, value_name = "N")]
        random_graphic: Option<usize>,
        /// Vertex count for --random-graphic.
        #[arg(long, value_name = "V", default_value_t = 5)]
        vertices: usize,
        /// RNG seed for --random-graphic.
        #[arg(long, value_name = "S", default_value_t = 42)]
        seed: u64,
        /// Write all findings as CSV to this path.
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let caps = cli.caps.caps();
    let format = cli.format;
    match &cli.command {
        Command::Lattice { spec, dot } => {
            cmds::lattice(spec, dot.as_deref(), &caps, format)
        }
        Command::Verify { spec, orders } => {
            cmds::verify(spec, &orders.flags(), &caps, format)
        }
        Command::Diameter { spec, dot } => {
            cmds::diameter(spec, dot.as_deref(), &caps, format)
        }
        Command::Glex { spec, order, dot } => {
            cmds::glex(spec, order.as_deref(), dot.as_deref(), &caps, format)
        }
        Command::Straighten { spec, chain, order } => {
            cmds::straighten_cmd(spec, chain, order.as_deref(), &caps, format)
        }
        Command::Connect { spec, from, to } => {
            cmds::connect_cmd(spec, from, to, &caps, format)
        }
        Command::Reversal { spec, order } => {
            cmds::reversal(spec, order.as_deref(), &caps, format)
        }
        Command::Sharpness { spec, orders, csv } => {
            cmds::sharpness(spec, &orders.flags(), csv.as_deref(), &caps, format)
        }
        Command::DescentOrder { spec, order, check_glex, dot } => {
            cmds::descent_order(spec, order.as_deref(), *check_glex, dot.as_deref(), &caps, format)
        }
        Command::Wiring { word, rank } => cmds::wiring(word, *rank, format),
        Command::Sweep { specs, random_graphic, vertices, seed, csv } => cmds::sweep(
            specs,
            *random_graphic,
            *vertices,
            *seed,
            csv.as_deref(),
            &caps,
            format,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::Violations) => ExitCode::from(1),
        Ok(Outcome::Errors) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
