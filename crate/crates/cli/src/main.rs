//! `sif`: values, conditional queries, simulation and export for stochastic
//! IF sentences and hand-built extensive games.

use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sif_core::corpus::{corpus, corpus_file, run_corpus};
use sif_core::game::{
    build_semantic_game_capped, ExtensiveGame, NodeId, SemanticGame, DEFAULT_NODE_CAP,
};
use sif_core::parser::{
    format_formula, parse_event, parse_extensive_game, parse_formula, parse_profile,
    parse_structure, Profile,
};
use sif_core::report::{simulation_text, support, ConditionalReport, SolutionReport};
use sif_core::solver::{
    conditional_value, simulate, solve_game, NatureSpec, SimulationReport, SolveConfig,
};
use sif_core::strategy::{default_nature, uniform_nature, BehavioralStrategy, DEFAULT_BUDGET};
use sif_core::Error;

#[derive(Parser)]
#[command(name = "sif", version, about = "Stochastic IF logic workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Equilibrium value of a sentence on a structure, or of a `.game` file.
    Value(GameArgs),
    /// Win probability of a fixed profile conditioned on an event.
    Condition {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        profile: ProfileArgs,
        /// Quantifier-free condition on the final assignment.
        #[arg(long)]
        event: String,
    },
    /// Run the built-in corpus and compare against the expected values.
    Corpus {
        /// Only run entries whose name contains this text.
        #[arg(long)]
        filter: Option<String>,
        /// Replace the expected value of an entry, as `NAME=VALUE`.
        #[arg(long, value_name = "NAME=VALUE")]
        expect: Vec<String>,
        #[command(flatten)]
        solve: SolveArgs,
    },
    /// Write the game tree in DOT format.
    Export(GameArgs),
    /// Play a profile repeatedly with a seeded generator.
    Simulate {
        #[command(flatten)]
        game: GameArgs,
        #[command(flatten)]
        profile: ProfileArgs,
        #[arg(long)]
        event: Option<String>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        plays: u64,
    },
    /// Print the canonical form of a formula.
    Parse {
        formula: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct GameArgs {
    /// A formula file, or a `.game` file. Names of bundled corpus files are
    /// accepted when no such file exists.
    input: String,
    /// Structure file (formulas only).
    structure: Option<String>,
    /// A `.nat` file, or `uniform`.
    #[arg(long)]
    nature: Option<String>,
    #[command(flatten)]
    solve: SolveArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SolveArgs {
    /// Maximum number of reduced strategies per player.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Maximum number of game tree nodes.
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    node_cap: usize,
    #[arg(long)]
    no_weak_dominance: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ProfileArgs {
    /// A `.prof` file with both players' mixed strategies.
    #[arg(long)]
    profile: Option<String>,
    /// Use the computed equilibrium.
    #[arg(long)]
    solve: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

impl SolveArgs {
    fn config(&self) -> Result<SolveConfig, Error> {
        if self.budget == 0 || self.node_cap == 0 {
            return Err(Error::Invalid(
                "--budget and --node-cap must be positive".into(),
            ));
        }
        Ok(SolveConfig {
            budget: self.budget,
            node_cap: self.node_cap,
            weak_dominance: !self.no_weak_dominance,
            ..SolveConfig::default()
        })
    }
}

fn read(path: &str) -> Result<String, Error> {
    if Path::new(path).exists() {
        return std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")));
    }
    corpus_file(path)
        .map(str::to_string)
        .ok_or_else(|| Error::Invalid(format!("{path}: no such file")))
}

fn with_file<T>(path: &str, f: impl FnOnce(&str) -> Result<T, Error>) -> Result<T, Error> {
    f(&read(path)?).map_err(|e| match e {
        Error::Syntax(p) => Error::Invalid(format!("{path}: syntax error at {p}")),
        other => other,
    })
}

/// A loaded game with Nature's strategy.
enum Loaded {
    Sentence(Box<SemanticGame>, BehavioralStrategy),
    Game(ExtensiveGame, BehavioralStrategy),
}

impl Loaded {
    fn game(&self) -> &ExtensiveGame {
        match self {
            Loaded::Sentence(g, _) => &g.game,
            Loaded::Game(g, _) => g,
        }
    }

    fn lambda(&self) -> &BehavioralStrategy {
        match self {
            Loaded::Sentence(_, l) | Loaded::Game(_, l) => l,
        }
    }
}

fn load(args: &GameArgs, config: &SolveConfig) -> Result<Loaded, Error> {
    if args.input.ends_with(".game") {
        if args.structure.is_some() {
            return Err(Error::Invalid("a .game file takes no structure".into()));
        }
        let g = with_file(&args.input, parse_extensive_game)?;
        let lambda = match args.nature.as_deref() {
            None => default_nature(&g),
            Some("uniform") => uniform_nature(&g),
            Some(_) => {
                return Err(Error::Invalid(
                    "Nature files apply to sentences; .game files declare their probabilities"
                        .into(),
                ))
            }
        };
        return Ok(Loaded::Game(g, lambda));
    }
    let structure = args
        .structure
        .as_deref()
        .ok_or_else(|| Error::Invalid("a formula needs a structure file".into()))?;
    let phi = with_file(&args.input, |s| parse_formula(s).map_err(Error::from))?;
    let m = with_file(structure, parse_structure)?;
    let g = build_semantic_game_capped(&m, &phi, config.node_cap)?;
    let spec = match args.nature.as_deref() {
        None | Some("uniform") => NatureSpec::Uniform,
        Some(path) => NatureSpec::Rules(read(path)?),
    };
    let lambda = spec.resolve(&g)?;
    Ok(Loaded::Sentence(Box::new(g), lambda))
}

fn profile(loaded: &Loaded, args: &ProfileArgs, config: &SolveConfig) -> Result<Profile, Error> {
    if args.solve {
        let s = solve_game(loaded.game(), loaded.lambda(), config)?;
        return Ok(Profile {
            eloise: s.eloise,
            abelard: s.abelard,
        });
    }
    let path = args
        .profile
        .as_deref()
        .expect("clap requires --profile or --solve");
    let m = match loaded {
        Loaded::Sentence(g, _) => Some(&g.structure),
        Loaded::Game(..) => None,
    };
    with_file(path, |src| parse_profile(src, loaded.game(), m))
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Text => text(),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

#[derive(Serialize)]
struct SimulationOutput<'a> {
    event: Option<&'a str>,
    #[serde(flatten)]
    report: &'a SimulationReport,
}

/// Output on success; `Err` carries the diagnostic.
fn run(cli: Cli) -> Result<(String, bool), Error> {
    match cli.command {
        Command::Value(args) => {
            let config = args.solve.config()?;
            let loaded = load(&args, &config)?;
            let s = solve_game(loaded.game(), loaded.lambda(), &config)?;
            let report = SolutionReport::new(loaded.game(), &s);
            Ok((emit(args.format, &report, || report.text()), true))
        }
        Command::Condition {
            game,
            profile: prof,
            event,
        } => {
            let config = game.solve.config()?;
            let loaded = load(&game, &config)?;
            let Loaded::Sentence(g, lambda) = &loaded else {
                return Err(Error::Event(
                    "events refer to variables, so they need a sentence".into(),
                ));
            };
            let ev = parse_event(&event, &g.structure)?;
            let p = profile(&loaded, &prof, &config)?;
            let c = conditional_value(&g.game, lambda, &p.eloise, &p.abelard, &|n| ev.holds(g, n))?;
            let report = ConditionalReport {
                event: ev.text(),
                result: c,
                eloise: support(&g.game, &p.eloise),
                abelard: support(&g.game, &p.abelard),
            };
            Ok((emit(game.format, &report, || report.text()), true))
        }
        Command::Corpus {
            filter,
            expect,
            solve,
        } => {
            let config = solve.config()?;
            let mut entries = corpus();
            for e in &expect {
                let (name, value) = e.split_once('=').ok_or_else(|| {
                    Error::Invalid(format!("--expect `{e}`: expected NAME=VALUE"))
                })?;
                let entry = entries
                    .iter_mut()
                    .find(|c| c.name == name)
                    .ok_or_else(|| Error::Invalid(format!("no corpus entry `{name}`")))?;
                entry.expected = Some(value.to_string());
            }
            let results = run_corpus(&entries, filter.as_deref(), &config);
            let mut out = String::new();
            for r in &results {
                out += &r.summary();
                out.push('\n');
            }
            let passed = results.iter().filter(|r| r.passed()).count();
            out += &format!("{passed}/{} entries passed\n", results.len());
            Ok((out, passed == results.len()))
        }
        Command::Export(args) => {
            let config = args.solve.config()?;
            let loaded = load(&args, &config)?;
            let dot = match &loaded {
                Loaded::Game(g, _) => g.to_dot(),
                Loaded::Sentence(g, lambda) => {
                    let prob = |n: NodeId, a: usize| {
                        g.game.infoset_of(n).and_then(|s| lambda.probability(s, a))
                    };
                    g.to_dot(Some(&prob))
                }
            };
            Ok((dot, true))
        }
        Command::Simulate {
            game,
            profile: prof,
            event,
            seed,
            plays,
        } => {
            let config = game.solve.config()?;
            let loaded = load(&game, &config)?;
            let p = profile(&loaded, &prof, &config)?;
            let ev = match (&event, &loaded) {
                (None, _) => None,
                (Some(e), Loaded::Sentence(g, _)) => Some(parse_event(e, &g.structure)?),
                (Some(_), Loaded::Game(..)) => {
                    return Err(Error::Event(
                        "events refer to variables, so they need a sentence".into(),
                    ))
                }
            };
            let holds = |n: NodeId| match (&ev, &loaded) {
                (Some(e), Loaded::Sentence(g, _)) => e.holds(g, n),
                _ => false,
            };
            let r = simulate(
                loaded.game(),
                loaded.lambda(),
                &p.eloise,
                &p.abelard,
                plays,
                seed,
                ev.as_ref().map(|_| &holds as &dyn Fn(NodeId) -> bool),
            )?;
            let out = SimulationOutput {
                event: event.as_deref(),
                report: &r,
            };
            Ok((
                emit(game.format, &out, || simulation_text(&r, event.as_deref())),
                true,
            ))
        }
        Command::Parse { formula, format } => {
            let phi = with_file(&formula, |s| parse_formula(s).map_err(Error::from))?;
            let text = format_formula(&phi);
            #[derive(Serialize)]
            struct Parsed<'a> {
                formula: &'a str,
            }
            Ok((
                emit(format, &Parsed { formula: &text }, || format!("{text}\n")),
                true,
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_budget() { 2 } else { 1 })
        }
    }
}
