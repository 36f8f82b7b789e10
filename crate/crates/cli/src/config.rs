use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Seq,
    UnitRec,
    Derive,
    PowerDerive,
    Verify,
    Guess,
    Reduce,
    Ode,
    Pf,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Seq => "seq",
            Command::UnitRec => "unit-rec",
            Command::Derive => "derive",
            Command::PowerDerive => "power-derive",
            Command::Verify => "verify",
            Command::Guess => "guess",
            Command::Reduce => "reduce",
            Command::Ode => "ode",
            Command::Pf => "pf",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Latex,
}

/// How `unit-rec` builds its recurrence: the chain formula or the generating polynomials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum UnitMethod {
    #[default]
    Closed,
    Polys,
}

pub const DEFAULT_N_MAX: usize = 20;
pub const DEFAULT_MAX_ORDER: usize = 4;
pub const DEFAULT_MAX_DEGREE: usize = 4;
pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Everything one invocation needs. Weight, term and polynomial fields stay as
/// the literal strings given so the config serializes back unchanged.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub command: Command,
    /// Number of parts `N`.
    pub parts: Option<usize>,
    pub weights: Option<Vec<String>>,
    pub symbolic: bool,
    /// Power `k` of the binomial or multinomial coefficient.
    pub k: u32,
    pub a: Option<String>,
    pub b: Option<String>,
    pub n_max: usize,
    pub max_order: usize,
    pub max_degree: usize,
    pub terms: Option<Vec<String>>,
    /// Recurrence coefficients `c_0; c_1; ...`.
    pub recurrence: Option<String>,
    pub multipliers: Option<String>,
    pub divisor: Option<String>,
    pub table1: bool,
    pub ode: bool,
    pub method: UnitMethod,
    pub format: Format,
    /// Cap on the number of compositions the oracle may enumerate.
    pub budget: u64,
    pub tolerance: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: Command::Seq,
            parts: None,
            weights: None,
            symbolic: false,
            k: 2,
            a: None,
            b: None,
            n_max: DEFAULT_N_MAX,
            max_order: DEFAULT_MAX_ORDER,
            max_degree: DEFAULT_MAX_DEGREE,
            terms: None,
            recurrence: None,
            multipliers: None,
            divisor: None,
            table1: false,
            ode: false,
            method: UnitMethod::Closed,
            format: Format::Text,
            budget: DEFAULT_BUDGET,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig { command, ..Default::default() }
    }
}
