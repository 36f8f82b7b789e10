use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use multisum_cli::config::{
    Command, Format, RunConfig, UnitMethod, DEFAULT_BUDGET, DEFAULT_MAX_DEGREE, DEFAULT_MAX_ORDER, DEFAULT_N_MAX, DEFAULT_TOLERANCE,
};
use multisum_cli::{run, EXIT_USAGE, THREADS_ENV};

/// Exact recurrences for weighted sums of powers of multinomial coefficients.
#[derive(Parser, Debug)]
#[command(name = "multisum", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on oracle work, in coefficient products.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Tolerance for floating-point root matching.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    /// Print the parsed configuration as JSON instead of running it.
    #[arg(long, global = true)]
    dump_config: bool,
    /// Run a configuration saved by --dump-config.
    #[arg(long)]
    config: Option<std::path::PathBuf>,
    #[command(subcommand)]
    cmd: Option<Cmd>,
}

#[derive(Args, Debug, Default)]
struct Family {
    /// Number of parts.
    #[arg(long = "N")]
    parts: Option<usize>,
    /// Comma-separated weights: integers, p/q, i, w (cube root of unity), w2.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<String>>,
    /// Use weight symbols a, b, c, ...
    #[arg(long)]
    symbolic: bool,
    /// Power of the coefficients (above 2 needs N = 2).
    #[arg(long, default_value_t = 2)]
    k: u32,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Sequence terms a_0..a_{n-max} from the oracle.
    Seq {
        #[command(flatten)]
        family: Family,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
    },
    /// Closed-form recurrence for all weights equal to one.
    UnitRec {
        #[arg(long = "N")]
        parts: usize,
        #[arg(long, value_enum, default_value_t = UnitMethod::Closed)]
        method: UnitMethod,
        #[arg(long)]
        ode: bool,
    },
    /// Recurrence from the auxiliary-space kernel search.
    Derive {
        #[command(flatten)]
        family: Family,
        #[arg(long)]
        ode: bool,
    },
    /// Recurrence for sum a^p b^(n-p) C(n,p)^k.
    PowerDerive {
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long)]
        symbolic: bool,
        #[arg(long)]
        ode: bool,
    },
    /// Check a recurrence against oracle terms.
    Verify {
        #[command(flatten)]
        family: Family,
        /// Check the all-ones recurrence for --N.
        #[arg(long)]
        table1: bool,
        /// Coefficients "c0; c1; ..." of a(n), a(n-1), ...
        #[arg(long, allow_hyphen_values = true)]
        recurrence: Option<String>,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
    },
    /// Recover a recurrence from terms.
    Guess {
        #[command(flatten)]
        family: Family,
        /// Comma-separated terms; without it the oracle supplies n-max + 1 terms.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        terms: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        #[arg(long)]
        ode: bool,
    },
    /// Order reduction by a shift combination.
    Reduce {
        /// Weights substituted for a, b, c.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<String>>,
        #[arg(long, allow_hyphen_values = true)]
        recurrence: Option<String>,
        /// Multipliers "m0; m1; ..." of R(n), R(n-1), ...
        #[arg(long, allow_hyphen_values = true)]
        multipliers: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        divisor: Option<String>,
        #[arg(long)]
        ode: bool,
    },
    /// Theta-operator of a recurrence, checked against the series when possible.
    Ode {
        #[command(flatten)]
        family: Family,
        #[arg(long, allow_hyphen_values = true)]
        recurrence: Option<String>,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: usize,
    },
    /// Order-2 operator, singular points and partial fractions for three weights.
    Pf {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Vec<String>,
    },
}

fn family(cfg: &mut RunConfig, f: Family) {
    cfg.parts = f.parts;
    cfg.weights = f.weights;
    cfg.symbolic = f.symbolic;
    cfg.k = f.k;
}

fn to_config(cmd: Cmd) -> RunConfig {
    match cmd {
        Cmd::Seq { family: f, n_max } => {
            let mut c = RunConfig::new(Command::Seq);
            family(&mut c, f);
            c.n_max = n_max;
            c
        }
        Cmd::UnitRec { parts, method, ode } => RunConfig { parts: Some(parts), method, ode, ..RunConfig::new(Command::UnitRec) },
        Cmd::Derive { family: f, ode } => {
            let mut c = RunConfig { ode, ..RunConfig::new(Command::Derive) };
            family(&mut c, f);
            c
        }
        Cmd::PowerDerive { k, a, b, symbolic, ode } => {
            RunConfig { k, a, b, symbolic, ode, parts: Some(2), ..RunConfig::new(Command::PowerDerive) }
        }
        Cmd::Verify { family: f, table1, recurrence, n_max } => {
            let mut c = RunConfig { table1, recurrence, n_max, ..RunConfig::new(Command::Verify) };
            family(&mut c, f);
            c
        }
        Cmd::Guess { family: f, terms, n_max, max_order, max_degree, ode } => {
            let mut c = RunConfig { terms, n_max, max_order, max_degree, ode, ..RunConfig::new(Command::Guess) };
            family(&mut c, f);
            c
        }
        Cmd::Reduce { weights, recurrence, multipliers, divisor, ode } => {
            RunConfig { weights, recurrence, multipliers, divisor, ode, ..RunConfig::new(Command::Reduce) }
        }
        Cmd::Ode { family: f, recurrence, n_max } => {
            let mut c = RunConfig { recurrence, n_max, ..RunConfig::new(Command::Ode) };
            family(&mut c, f);
            c
        }
        Cmd::Pf { weights } => RunConfig { weights: Some(weights), ..RunConfig::new(Command::Pf) },
    }
}

fn configure_threads() {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("warning: ignoring {THREADS_ENV}={v:?}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    let mut cfg = match (cli.config, cli.cmd) {
        (Some(path), _) => {
            let loaded = std::fs::read_to_string(&path)
                .map_err(|e| e.to_string())
                .and_then(|s| serde_json::from_str::<RunConfig>(&s).map_err(|e| e.to_string()));
            match loaded {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: cannot load {}: {e}", path.display());
                    return ExitCode::from(EXIT_USAGE as u8);
                }
            }
        }
        (None, Some(cmd)) => {
            let mut c = to_config(cmd);
            c.format = cli.format;
            c.budget = cli.budget;
            c.tolerance = cli.tolerance;
            c
        }
        (None, None) => {
            eprintln!("error: a subcommand or --config is required (see --help)");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    if cli.dump_config {
        cfg.format = if cli.format == Format::Text { cfg.format } else { cli.format };
        println!("{}", serde_json::to_string_pretty(&cfg).expect("config serializes"));
        return ExitCode::SUCCESS;
    }
    let code = run(&cfg, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code as u8)
}
