use std::process::ExitCode;

use clap::{Parser, Subcommand};

use symprod::cli::{self, CliError, CommandOutput, Family, GroupSpec, Options, TableRequest};
use symprod::{Execution, SurfaceKind};

/// Signatures of symmetric products of surfaces.
#[derive(Debug, Parser)]
#[command(name = "symprod", version)]
struct Args {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Numerical tolerance for the homological oracle.
    #[arg(long, global = true, default_value_t = symprod::homoracle::DEFAULT_TOLERANCE)]
    tolerance: f64,

    /// Maximum number of group elements to generate.
    #[arg(long, global = true, value_name = "ELEMENTS",
          default_value_t = symprod::permgroups::DEFAULT_ELEMENT_LIMIT)]
    limit: usize,

    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the cycle index of a permutation group.
    CycleIndex {
        /// S:n | C:n | A:n | wreath(<outer>,<inner>) | gens:<degree>:<cycles>[;...]
        group: String,
    },
    /// Signature of M^m / G.
    Signature {
        group: String,
        /// closed:<g> | punct:<g>:<k>
        surface: String,
    },
    /// Signatures over a range of genera.
    Table {
        /// sym | wreath
        family: String,
        /// closed | punct (one puncture)
        #[arg(long, default_value = "punct")]
        surface: String,
        /// Inclusive genus range a..b.
        #[arg(long = "table-range", default_value = "0..3")]
        table_range: String,
        /// Degree m of S_m (sym family); a value or a range.
        #[arg(long, default_value = "2")]
        degree: String,
        /// p of S_p wr S_m (wreath family).
        #[arg(long, default_value = "2")]
        outer: String,
        /// m of S_p wr S_m (wreath family).
        #[arg(long, default_value = "1")]
        inner: String,
    },
    /// Compare the cycle-index formula with the homological oracle.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 2)]
        max_genus: u32,
    },
}

fn run(args: &Args) -> Result<CommandOutput, CliError> {
    let opts = Options {
        element_limit: args.limit,
        tolerance: args.tolerance,
        exec: if args.sequential { Execution::Sequential } else { Execution::default() },
    };
    if !(args.tolerance > 0.0) {
        return Err(CliError::Parse("tolerance must be positive".into()));
    }
    match &args.command {
        Command::CycleIndex { group } => cli::cmd_cycle_index(&group.parse::<GroupSpec>()?, &opts),
        Command::Signature { group, surface } => {
            cli::cmd_signature(&group.parse::<GroupSpec>()?, &cli::parse_surface(surface)?, &opts)
        }
        Command::Table { family, surface, table_range, degree, outer, inner } => {
            let surface = match surface.as_str() {
                "closed" => SurfaceKind::Closed,
                "punct" => SurfaceKind::Punctured,
                other => return Err(CliError::Parse(format!("surface must be closed or punct, got {other:?}"))),
            };
            cli::cmd_table(&TableRequest {
                family: family.parse::<Family>()?,
                surface,
                genus: cli::parse_range(table_range)?,
                degree: cli::parse_range(degree)?,
                outer: cli::parse_range(outer)?,
                inner: cli::parse_range(inner)?,
            })
        }
        Command::Verify { max_degree, max_genus } => cli::cmd_verify(*max_degree, *max_genus, &opts),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            println!("{}", out.render(args.json));
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
