use std::process::ExitCode;

use biliaison_cli::commands::{self, error_outcome, load_input, CliError, Opts, Outcome};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "biliaison", version, about = "Liaison and biliaison of space curves in P^3")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Random trials for isomorphism searches.
    #[arg(long, global = true, default_value_t = 32)]
    trials: usize,
    /// Extra degrees past the regularity in tables and auxiliary searches.
    #[arg(long, global = true, default_value_t = 2)]
    degree_margin: i32,
    /// Print the JSON report instead of the summary.
    #[arg(long, global = true)]
    json: bool,
    /// Treat field inputs as constant families over the dual numbers.
    #[arg(long, global = true)]
    dual_numbers: bool,
    /// Add wall-clock timings to the report (makes it nondeterministic).
    #[arg(long, global = true)]
    timings: bool,
}

/// Curves are given as file paths or corpus names (`twisted-cubic`,
/// `skew-lines-dual`, ...).
#[derive(Subcommand)]
enum Cmd {
    /// Check that the ideal is a saturated locally CM curve (family).
    Validate { curve: String },
    /// Degree, genus, Hilbert function, cohomology and Rao module.
    Invariants { curve: String },
    /// Saturate the ideal and write the resulting curve.
    Saturate {
        curve: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Residual curve in the complete intersection (F, G).
    Link {
        curve: String,
        #[arg(long = "f")]
        f: String,
        #[arg(long = "g")]
        g: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Trivial biliaison H·I + (Q) of height h.
    Bilink {
        curve: String,
        #[arg(long)]
        q: String,
        #[arg(long = "hpoly")]
        hpoly: String,
        #[arg(long)]
        height: i32,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// N-type resolution 0 → P → N → I → 0.
    Ntype { curve: String },
    /// E-type resolution 0 → E → F → I → 0.
    Etype { curve: String },
    /// Decide whether two curves lie in one biliaison class.
    Compare { a: String, b: String },
    /// Parity of the number of liaisons between two curves.
    Parity { a: String, b: String },
    /// Build a certified chain of elementary biliaisons and write it.
    Connect {
        a: String,
        b: String,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Replay a chain file written by `connect`.
    Replay { chain: String },
    /// The shipped corpus.
    Corpus {
        #[command(subcommand)]
        cmd: CorpusCmd,
    },
}

#[derive(Subcommand)]
enum CorpusCmd {
    List,
    Show { name: String },
    /// Validate and resolve every fixture.
    Run,
}

fn with_input(name: &str, cmd: &str, opts: &Opts, f: impl FnOnce(&commands::Input) -> Outcome) -> Outcome {
    match load_input(name, opts) {
        Ok(i) => f(&i),
        Err(e) => error_outcome(&[cmd, name], e, opts),
    }
}

fn with_inputs(a: &str, b: &str, cmd: &str, opts: &Opts, f: impl FnOnce(&commands::Input, &commands::Input) -> Outcome) -> Outcome {
    match (load_input(a, opts), load_input(b, opts)) {
        (Ok(x), Ok(y)) => f(&x, &y),
        (Err(e), _) | (_, Err(e)) => error_outcome(&[cmd, a, b], e, opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let opts = Opts { seed: g.seed, trials: g.trials, degree_margin: g.degree_margin, dual_numbers: g.dual_numbers, timings: g.timings };
    let (outcome, output) = match &cli.cmd {
        Cmd::Validate { curve } => (with_input(curve, "validate", &opts, |i| commands::validate(i, &opts)), None),
        Cmd::Invariants { curve } => (with_input(curve, "invariants", &opts, |i| commands::invariants(i, &opts)), None),
        Cmd::Saturate { curve, output } => (with_input(curve, "saturate", &opts, |i| commands::saturate(i, &opts)), output.clone()),
        Cmd::Link { curve, f, g, output } => {
            (with_input(curve, "link", &opts, |i| commands::link_cmd(i, f, g, &opts)), output.clone())
        }
        Cmd::Bilink { curve, q, hpoly, height, output } => {
            (with_input(curve, "bilink", &opts, |i| commands::bilink(i, q, hpoly, *height, &opts)), output.clone())
        }
        Cmd::Ntype { curve } => (with_input(curve, "ntype", &opts, |i| commands::ntype(i, &opts)), None),
        Cmd::Etype { curve } => (with_input(curve, "etype", &opts, |i| commands::etype(i, &opts)), None),
        Cmd::Compare { a, b } => (with_inputs(a, b, "compare", &opts, |x, y| commands::compare(x, y, &opts)), None),
        Cmd::Parity { a, b } => (with_inputs(a, b, "parity", &opts, |x, y| commands::parity(x, y, &opts)), None),
        Cmd::Connect { a, b, output } => {
            (with_inputs(a, b, "connect", &opts, |x, y| commands::connect(x, y, &opts)), output.clone())
        }
        Cmd::Replay { chain } => match std::fs::read_to_string(chain) {
            Ok(t) => (commands::replay_chain(chain, &t, &opts), None),
            Err(e) => (error_outcome(&["replay", chain], CliError::Io(format!("{chain}: {e}")), &opts), None),
        },
        Cmd::Corpus { cmd } => match cmd {
            CorpusCmd::List => (commands::corpus_list(&opts), None),
            CorpusCmd::Show { name } => (commands::corpus_show(name, &opts), None),
            CorpusCmd::Run => (commands::corpus_run(&opts), None),
        },
    };
    let mut outcome = outcome;
    if let (Some(path), Some(body)) = (&output, &outcome.emitted) {
        if let Err(e) = std::fs::write(path, body) {
            outcome = error_outcome(&["write", path], CliError::Io(format!("{path}: {e}")), &opts);
        }
    }
    if g.json {
        println!("{}", outcome.report.to_json());
    } else {
        if !outcome.text.is_empty() {
            println!("{}", outcome.text);
        }
        if output.is_none() {
            if let Some(body) = &outcome.emitted {
                print!("{body}");
            }
        }
    }
    ExitCode::from(outcome.exit_code() as u8)
}
