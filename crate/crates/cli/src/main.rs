use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use grapheq::amplification::{self, AmplificationError};
use grapheq::classical::{self, ClassicalError, Criterion, Ties};
use grapheq::game::{load_game, save_game};
use grapheq::quantum::{self, QuantumError};
use grapheq::rational::{parse_big_rational, parse_rational, ParseRationalError};
use grapheq::verify::{run_check, Builtins, CHECKS};
use grapheq::{BuiltinGame, GameError, GameSpec, PayoffParams, Rational};

mod render;

use render::Format;

#[derive(Parser, Debug)]
#[command(name = "grapheq", version, about = "Equilibria and quantum advice for graph-state games")]
struct Cli {
    /// Worker threads for the parallel engines.
    #[arg(long, global = true, env = "GRAPHEQ_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug, Clone)]
struct GameArgs {
    /// Builtin name (NC00_C5, NC01_C5, NC000_C5, NC00010_C5) or a JSON game file.
    #[arg(long, short)]
    game: String,
    /// Payoff for a won round answered 0; defaults to the game's value.
    #[arg(long)]
    v0: Option<String>,
    /// Payoff for a won round answered 1; defaults to the game's value.
    #[arg(long)]
    v1: Option<String>,
    /// Penalty factor for lost rounds; defaults to the game's value.
    #[arg(long)]
    ng: Option<String>,
    #[arg(long, short, value_enum)]
    format: Option<Format>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum CriterionArg {
    Nash,
    Pareto,
}

impl From<CriterionArg> for Criterion {
    fn from(c: CriterionArg) -> Self {
        match c {
            CriterionArg::Nash => Criterion::Nash,
            CriterionArg::Pareto => Criterion::Pareto,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Decomposition,
    Bruteforce,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pure Nash equilibria with symmetry orbits.
    Nash(GameArgs),
    /// Pareto-optimal profiles (no improving deviation without a victim).
    Pareto(GameArgs),
    /// Best social welfare over pure equilibria.
    Csw {
        #[command(flatten)]
        args: GameArgs,
        #[arg(long, value_enum, default_value = "nash")]
        criterion: CriterionArg,
    },
    /// Equilibrium sets as a function of v0/v1.
    Regimes {
        #[command(flatten)]
        args: GameArgs,
        #[arg(long, value_enum, default_value = "nash")]
        criterion: CriterionArg,
    },
    /// Graph-state advice: guarantees, threshold and equilibrium test.
    Quantum(GameArgs),
    /// Best social welfare over correlated equilibria (exact LP).
    CorrLp(GameArgs),
    /// Nash equilibria with a penalty for losing.
    Penalty(GameArgs),
    /// k-fold repetition: best classical welfare against the quantum one.
    Kfold {
        #[command(flatten)]
        args: GameArgs,
        #[arg(long, short, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value = "decomposition")]
        method: Method,
    },
    /// Repetitions needed to push CSW/QSW below eps.
    PlayersNeeded {
        #[command(flatten)]
        args: GameArgs,
        #[arg(long)]
        eps: String,
    },
    /// Regression checks; `--game FILE` runs them with the file in place
    /// of the builtin of the same name.
    Verify {
        #[arg(long, short)]
        game: Option<String>,
        /// Run only these check ids.
        #[arg(long = "check", value_delimiter = ',')]
        checks: Vec<u8>,
    },
    /// Print a game in the JSON file format.
    Export {
        #[arg(long, short)]
        game: String,
    },
}

#[derive(Debug)]
enum CliError {
    /// Bad input: exit 3.
    Input(String),
    /// A check failed: exit 1.
    Check(String),
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ClassicalError> for CliError {
    fn from(e: ClassicalError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<QuantumError> for CliError {
    fn from(e: QuantumError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<AmplificationError> for CliError {
    fn from(e: AmplificationError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn rational_arg(name: &str, text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e: ParseRationalError| CliError::Input(format!("--{name}: {e}")))
}

fn load(selector: &str) -> Result<GameSpec, CliError> {
    if let Ok(b) = selector.parse::<BuiltinGame>() {
        return Ok(b.spec());
    }
    let path = Path::new(selector);
    if !path.exists() {
        return Err(CliError::Input(format!("{selector} is neither a builtin game nor a file")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{selector}: {e}")))?;
    Ok(load_game(&text)?)
}

fn resolve(args: &GameArgs) -> Result<(GameSpec, PayoffParams), CliError> {
    let game = load(&args.game)?;
    let d = &game.payoffs;
    let v0 = args.v0.as_deref().map(|t| rational_arg("v0", t)).transpose()?.unwrap_or(d.v0);
    let v1 = args.v1.as_deref().map(|t| rational_arg("v1", t)).transpose()?.unwrap_or(d.v1);
    let ng = args.ng.as_deref().map(|t| rational_arg("ng", t)).transpose()?.unwrap_or(d.ng);
    let params = PayoffParams::new(v0, v1, ng)?;
    Ok((game, params))
}

fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Nash(args) => equilibria(&args, Criterion::Nash),
        Command::Pareto(args) => equilibria(&args, Criterion::Pareto),
        Command::Csw { args, criterion } => {
            let (game, params) = resolve(&args)?;
            let best = classical::best_csw(&game, &params, criterion.into())?;
            Ok(render::csw(&game, &params, criterion.into(), &best, args.format.unwrap_or(Format::Table)))
        }
        Command::Regimes { args, criterion } => {
            let (game, params) = resolve(&args)?;
            let reg = classical::ratio_regimes(&game, params.ng, criterion.into())?;
            Ok(render::regimes(&game, &reg, args.format.unwrap_or(Format::Table)))
        }
        Command::Quantum(args) => {
            let (game, params) = resolve(&args)?;
            let data = render::QuantumData {
                perfect: quantum::verify_perfect_win(&game)?,
                belief: quantum::verify_uniform_and_belief_invariant(&game)?,
                decision: quantum::is_quantum_nash(&game, &params)?,
                qsw: quantum::qsw(&params),
            };
            Ok(render::quantum(&game, &params, &data, args.format.unwrap_or(Format::Json)))
        }
        Command::CorrLp(args) => {
            let (game, params) = resolve(&args)?;
            let value = classical::best_correlated_sw(&game, &params)?;
            let pure = classical::best_csw(&game, &params, Criterion::Nash)?.value;
            Ok(render::corr_lp(&game, &params, value, pure, args.format.unwrap_or(Format::Table)))
        }
        Command::Penalty(args) => {
            let (game, params) = resolve(&args)?;
            let rep = amplification::penalty_report(&game, &params)?;
            Ok(render::penalty(&rep, args.format.unwrap_or(Format::Table)))
        }
        Command::Kfold { args, k, method } => {
            let (game, params) = resolve(&args)?;
            let csw = match method {
                Method::Decomposition => amplification::kfold_best_csw(&game, k, &params)?.value,
                Method::Bruteforce => amplification::kfold_bruteforce_csw(&game, k, &params)?,
            };
            let decay = amplification::decay_factor(&game, 1, &params)?;
            let name = match method {
                Method::Decomposition => "decomposition",
                Method::Bruteforce => "bruteforce",
            };
            Ok(render::kfold(k, &csw, quantum::qsw(&params), &decay, name, args.format.unwrap_or(Format::Json)))
        }
        Command::PlayersNeeded { args, eps } => {
            let (game, params) = resolve(&args)?;
            let eps = parse_big_rational(&eps).map_err(|e| CliError::Input(format!("--eps: {e}")))?;
            let res = amplification::players_needed(&game, &params, &eps)?;
            Ok(render::players_needed(&eps, &res, args.format.unwrap_or(Format::Json)))
        }
        Command::Verify { game, checks } => verify(game.as_deref(), &checks),
        Command::Export { game } => Ok(save_game(&load(&game)?)),
    }
}

fn equilibria(args: &GameArgs, criterion: Criterion) -> Result<String, CliError> {
    let (game, params) = resolve(args)?;
    let rep = classical::enumerate(&game, &params, criterion, Ties::Weak)?;
    Ok(render::report(&rep, args.format.unwrap_or(Format::Table)))
}

fn verify(file: Option<&str>, only: &[u8]) -> Result<String, CliError> {
    let mut builtins = Builtins::default();
    if let Some(selector) = file {
        let game = load(selector)?;
        let which: BuiltinGame = game
            .name
            .parse()
            .map_err(|_| CliError::Input(format!("game {} does not name a builtin", game.name)))?;
        builtins.replace(which, game);
    }
    if let Some(bad) = only.iter().find(|id| !CHECKS.iter().any(|(c, _)| c == *id)) {
        return Err(CliError::Input(format!("no check {bad}")));
    }
    let mut out = String::new();
    let mut first_failure = None;
    for (id, _) in CHECKS.iter().filter(|(id, _)| only.is_empty() || only.contains(id)) {
        let result = run_check(*id, &builtins).expect("listed check");
        out.push_str(&result.line());
        out.push('\n');
        if !result.passed && first_failure.is_none() {
            first_failure = Some(format!("check {} ({}) failed", result.id, result.name));
        }
    }
    match first_failure {
        None => Ok(out),
        Some(msg) => {
            print!("{out}");
            Err(CliError::Check(msg))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Check(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
