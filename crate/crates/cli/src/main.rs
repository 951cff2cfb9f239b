//! `moduli`: intersection numbers, trace contributions, Chern numbers,
//! dimension formulas and theta checks from the command line.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "moduli", version, about = "Exact invariants of the (1,p) moduli threefold")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Intersection table; defaults to the shipped table.
    #[arg(long, env = "MODULI_TABLE_PATH", global = true)]
    pub table: Option<std::path::PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Tables,
    Trace,
    Star,
    Chern,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IdentityArg {
    Star,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Gamma1p,
    Gamma2sq,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ThetaTestArg {
    Modularity,
    Vanishing,
    Omega,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Intersect three divisor classes.
    Intersect {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// Run only the named identity.
        #[arg(long, value_enum)]
        identity: Option<IdentityArg>,
        /// Also evaluate at every prime in `a..b`.
        #[arg(long)]
        prime_range: Option<String>,
        /// Use the typeset comparison polynomial instead of the direct subtraction.
        #[arg(long)]
        use_paper_display: bool,
    },
    /// Dimension of a space of cusp forms.
    Dim {
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        weight: Option<i64>,
    },
    /// Chern numbers, arithmetic genus, c2.L and c2.D0.
    Chern {
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        symbolic: bool,
    },
    /// Trace contribution of a fixed-set case (`1a` .. `2c_B2`, or `all`).
    Trace {
        #[arg(long, default_value = "all")]
        case: String,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Theta constants.
    Theta {
        #[command(subcommand)]
        action: ThetaCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum ThetaCommand {
    /// Evaluate one theta constant.
    Eval {
        /// `t1r,t1i,t2r,t2i,t3r,t3i`
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        /// `a1,a2;b1,b2`
        #[arg(long = "char")]
        characteristic: String,
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
    },
    /// Randomized numerical check.
    Check {
        #[arg(long, value_enum)]
        test: ThetaTestArg,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-14)]
        eps: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.envelope()).expect("serializable")),
                Format::Text => print!("{}", out.text),
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
