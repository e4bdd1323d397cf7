//! Command-line surface of the `biliaison` library: curve files, the named
//! corpus, JSON reports and one entry point per subcommand.

pub mod commands;
pub mod corpus;
pub mod curvefile;
pub mod report;

pub use commands::{load_input, CliError, Input, Opts, Outcome};
pub use curvefile::CurveFile;
pub use report::{ChainFile, Report};
