//! Command-line front end: argument parsing, dispatch and exit codes.

pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{PairSpec, QSpec};
pub use report::{Format, RunReport};

use crate::catalog::{builtin_degree2, load_catalog, Catalog};
use crate::error::{Error, Result};
use crate::products::EliminationOrder;

#[derive(Parser, Debug)]
#[command(
    name = "siav",
    version,
    about = "Super-isolated abelian varieties over finite fields"
)]
pub struct Cli {
    /// Field catalog file, or `bundled` for the shipped quartic list.
    /// Without it only the imaginary quadratic builtins are used.
    #[arg(long, global = true)]
    pub catalog: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Order {
    QFirst,
    TraceFirst,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Analyze one Weil polynomial.
    Analyze {
        #[arg(long)]
        q: String,
        /// Ascending coefficients, e.g. `4,-4,3,-2,1`.
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        monic_check: bool,
    },
    /// List the Weil generators of one catalog field.
    EnumField {
        #[arg(long)]
        field: String,
        #[arg(long, conflicts_with_all = ["q_max", "q_min"])]
        q: Option<String>,
        #[arg(long)]
        q_max: Option<u64>,
        #[arg(long, requires = "q_max")]
        q_min: Option<u64>,
    },
    /// Products of two super-isolated simple varieties.
    Pairs {
        /// Two field ids separated by a comma.
        #[arg(long, conflicts_with = "all")]
        fields: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Order::QFirst)]
        order: Order,
    },
    /// Counts of super-isolated ordinary products by q and type.
    Table,
    /// Check a catalog file entry by entry.
    CatalogValidate { path: Option<PathBuf> },
}

fn open_catalog(arg: Option<&str>) -> Result<Catalog> {
    match arg {
        None => Ok(builtin_degree2()),
        Some("bundled") => Ok(Catalog::bundled()),
        Some(p) => load_catalog(p),
    }
}

fn dispatch(cli: &Cli) -> Result<RunReport> {
    match &cli.command {
        Command::CatalogValidate { path } => {
            let p = path
                .clone()
                .or_else(|| cli.catalog.as_ref().map(PathBuf::from));
            commands::cmd_catalog_validate(p.as_deref())
        }
        cmd => {
            let catalog = open_catalog(cli.catalog.as_deref())?;
            match cmd {
                Command::Analyze {
                    q,
                    poly,
                    monic_check,
                } => {
                    let q = commands::parse_q(q)?;
                    let h = commands::parse_poly(poly, *monic_check)?;
                    commands::cmd_analyze(&h, &q, &catalog)
                }
                Command::EnumField {
                    field,
                    q,
                    q_max,
                    q_min,
                } => {
                    let spec = match (q, q_max) {
                        (Some(q), _) => QSpec::Single(commands::parse_q(q)?),
                        (None, Some(max)) => QSpec::Range {
                            min: q_min.unwrap_or(2),
                            max: *max,
                        },
                        (None, None) => return Err(Error::Usage("give --q or --q-max".into())),
                    };
                    commands::cmd_enum_field(field, &spec, &catalog)
                }
                Command::Pairs { fields, all, order } => {
                    let spec = match (fields, all) {
                        (Some(f), false) => {
                            let (a, b) = f.split_once(',').ok_or_else(|| {
                                Error::Usage("--fields takes two ids: a,b".into())
                            })?;
                            PairSpec::Fields(a.trim().to_string(), b.trim().to_string())
                        }
                        (None, true) => PairSpec::All,
                        _ => return Err(Error::Usage("give --fields a,b or --all".into())),
                    };
                    let order = match order {
                        Order::QFirst => EliminationOrder::QFirst,
                        Order::TraceFirst => EliminationOrder::TraceFirst,
                    };
                    commands::cmd_pairs(&spec, order, &catalog)
                }
                Command::Table => commands::cmd_table(&catalog),
                Command::CatalogValidate { .. } => unreachable!(),
            }
        }
    }
}

fn workers() -> Option<usize> {
    std::env::var("SIAV_WORKERS")
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n: &usize| n > 0)
}

/// Runs the tool on `args` (program name first). Returns the exit status
/// and the text for stdout and stderr.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (2, String::new(), text)
            };
        }
    };
    let start = Instant::now();
    let outcome = match workers() {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::Usage(format!("SIAV_WORKERS: {e}"))),
        },
        None => dispatch(&cli),
    };
    match outcome {
        Ok(mut report) => {
            report.timing_ms = Some(start.elapsed().as_millis());
            let code = if report.ok { 0 } else { 2 };
            (code, report.render(cli.format), String::new())
        }
        Err(e) => {
            let code = match e {
                Error::Usage(_) | Error::Data(_) | Error::Parse { .. } | Error::Io(_) => 2,
                _ => 1,
            };
            (code, String::new(), format!("error: {e}\n"))
        }
    }
}
