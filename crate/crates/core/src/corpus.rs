//! The built-in corpus: sentences, structures, Nature strategies, profiles
//! and a hand-built game, each with the exact values they must produce.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::{build_semantic_game_capped, SemanticGame};
use crate::parser::{
    parse_event, parse_extensive_game, parse_formula, parse_profile, parse_structure,
};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::solver::{conditional_value, solve_game, NatureSpec, SolveConfig};
use crate::strategy::default_nature;

const FILES: &[(&str, &str)] = &[
    ("monty_hall.game", include_str!("../corpus/monty_hall.game")),
    ("phi_mh.if", include_str!("../corpus/phi_mh.if")),
    (
        "phi_mh_no_offer.if",
        include_str!("../corpus/phi_mh_no_offer.if"),
    ),
    (
        "phi_mh_chance.if",
        include_str!("../corpus/phi_mh_chance.if"),
    ),
    (
        "phi_mh_no_offer_chance.if",
        include_str!("../corpus/phi_mh_no_offer_chance.if"),
    ),
    ("doors3.struct", include_str!("../corpus/doors3.struct")),
    (
        "mh_no_offer_stick.prof",
        include_str!("../corpus/mh_no_offer_stick.prof"),
    ),
    (
        "mh_no_offer_switch.prof",
        include_str!("../corpus/mh_no_offer_switch.prof"),
    ),
    (
        "matching_pennies.if",
        include_str!("../corpus/matching_pennies.if"),
    ),
    ("coins2.struct", include_str!("../corpus/coins2.struct")),
    ("coins3.struct", include_str!("../corpus/coins3.struct")),
    ("coins4.struct", include_str!("../corpus/coins4.struct")),
    ("coins5.struct", include_str!("../corpus/coins5.struct")),
    (
        "stochastic_matching_pennies.if",
        include_str!("../corpus/stochastic_matching_pennies.if"),
    ),
    ("coin.struct", include_str!("../corpus/coin.struct")),
    ("biased_coin.nat", include_str!("../corpus/biased_coin.nat")),
    ("phi_sb.if", include_str!("../corpus/phi_sb.if")),
    (
        "phi_sb_halfer.if",
        include_str!("../corpus/phi_sb_halfer.if"),
    ),
    ("sb.struct", include_str!("../corpus/sb.struct")),
    ("sb_alt.nat", include_str!("../corpus/sb_alt.nat")),
    ("sb_heads.prof", include_str!("../corpus/sb_heads.prof")),
    ("sb_tails.prof", include_str!("../corpus/sb_tails.prof")),
    ("sb_half.prof", include_str!("../corpus/sb_half.prof")),
    (
        "sb_halfer_heads.prof",
        include_str!("../corpus/sb_halfer_heads.prof"),
    ),
    (
        "sb_halfer_mixed.prof",
        include_str!("../corpus/sb_halfer_mixed.prof"),
    ),
];

/// Contents of a bundled corpus file.
pub fn corpus_file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, src)| *src)
}

pub fn corpus_files() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Sentence {
        formula: String,
        structure: String,
        nature: Option<String>,
    },
    Game(String),
}

/// A conditional win probability of a fixed profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub profile: String,
    pub event: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub source: Source,
    /// `None` when only the conditional queries are pinned.
    pub expected: Option<String>,
    pub queries: Vec<Query>,
}

fn sentence(
    name: &str,
    formula: &str,
    structure: &str,
    nature: Option<&str>,
    expected: Option<&str>,
) -> CorpusEntry {
    CorpusEntry {
        name: name.into(),
        source: Source::Sentence {
            formula: formula.into(),
            structure: structure.into(),
            nature: nature.map(Into::into),
        },
        expected: expected.map(Into::into),
        queries: Vec::new(),
    }
}

fn query(profile: &str, event: &str, expected: &str) -> Query {
    Query {
        profile: profile.into(),
        event: event.into(),
        expected: expected.into(),
    }
}

pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = vec![
        CorpusEntry {
            name: "monty-hall-game".into(),
            source: Source::Game("monty_hall.game".into()),
            expected: Some("2/3".into()),
            queries: Vec::new(),
        },
        sentence(
            "monty-hall",
            "phi_mh.if",
            "doors3.struct",
            None,
            Some("2/3"),
        ),
        sentence(
            "monty-hall-no-offer",
            "phi_mh_no_offer.if",
            "doors3.struct",
            None,
            Some("1/3"),
        ),
        sentence(
            "monty-hall-indifferent",
            "phi_mh_chance.if",
            "doors3.struct",
            None,
            Some("7/9"),
        ),
    ];
    let mut e = sentence(
        "monty-hall-no-offer-indifferent",
        "phi_mh_no_offer_chance.if",
        "doors3.struct",
        None,
        None,
    );
    e.queries = vec![
        query("mh_no_offer_stick.prof", "z != x /\\ z != y@1", "1/2"),
        query("mh_no_offer_switch.prof", "z != x /\\ z != y@1", "1/2"),
    ];
    out.push(e);
    for n in 2..=5 {
        out.push(sentence(
            &format!("matching-pennies-{n}"),
            "matching_pennies.if",
            &format!("coins{n}.struct"),
            None,
            Some(&format!("1/{n}")),
        ));
    }
    out.push(sentence(
        "stochastic-matching-pennies",
        "stochastic_matching_pennies.if",
        "coin.struct",
        Some("biased_coin.nat"),
        Some("2/9"),
    ));
    let mut e = sentence(
        "sleeping-beauty",
        "phi_sb.if",
        "sb.struct",
        None,
        Some("3/4"),
    );
    e.queries = vec![
        query("sb_tails.prof", "Awake(x,t)", "2/3"),
        query("sb_half.prof", "Awake(x,t)", "1/2"),
        query("sb_heads.prof", "Awake(x,t)", "1/3"),
    ];
    out.push(e);
    let mut e = sentence(
        "sleeping-beauty-alt-nature",
        "phi_sb.if",
        "sb.struct",
        Some("sb_alt.nat"),
        Some("1/2"),
    );
    e.queries = vec![
        query("sb_tails.prof", "t = 1", "1/3"),
        query("sb_half.prof", "t = 1", "1/2"),
        query("sb_heads.prof", "t = 1", "2/3"),
    ];
    out.push(e);
    let mut e = sentence(
        "sleeping-beauty-halfer",
        "phi_sb_halfer.if",
        "sb.struct",
        None,
        Some("1/2"),
    );
    e.queries = vec![
        query("sb_halfer_heads.prof", "t = 1", "1/2"),
        query("sb_halfer_mixed.prof", "t = 1", "1/3"),
    ];
    out.push(e);
    out
}

/// Structure for the [`CLASSICAL`] sentences.
pub const CLASSICAL_STRUCTURE: &str = "universe 1 2 3
rel E/2: (1,2) (2,3) (3,1)
rel P/1: (1) (2)
const c = 3
fun f/1: (1)->2, (2)->2, (3)->1
";

/// Slash-free, chance-free sentences with their classical truth values.
pub const CLASSICAL: &[(&str, bool)] = &[
    ("forall x exists y x = y", true),
    ("exists x forall y x = y", false),
    ("forall x forall y (x = y \\/ x != y)", true),
    (
        "forall x forall y forall z ((x = y \\/ y = z) \\/ x = z)",
        false,
    ),
    ("forall x exists y E(x,y)", true),
    ("exists x forall y E(x,y)", false),
    ("forall x (P(x) -> exists y (E(x,y) /\\ P(y)))", false),
    ("exists x (P(x) /\\ forall y (E(y,x) -> ~P(y)))", true),
    ("exists x f(x) = x", true),
    ("forall x (E('c,x) -> (P(x) /\\ f(f(x)) = f(x)))", true),
];

fn file(name: &str) -> Result<&'static str> {
    corpus_file(name).ok_or_else(|| Error::Invalid(format!("no corpus file `{name}`")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult {
    pub profile: String,
    pub event: String,
    pub expected: String,
    pub actual: Result<Rational>,
}

impl QueryResult {
    pub fn passed(&self) -> bool {
        matches!(&self.actual, Ok(v) if Some(v) == parse_rational(&self.expected).as_ref())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryResult {
    pub name: String,
    pub expected: Option<String>,
    pub value: Result<Rational>,
    pub queries: Vec<QueryResult>,
}

impl EntryResult {
    pub fn passed(&self) -> bool {
        let value_ok = match (&self.value, &self.expected) {
            (Ok(v), Some(e)) => Some(v) == parse_rational(e).as_ref(),
            (Ok(_), None) => true,
            (Err(_), _) => false,
        };
        value_ok && self.queries.iter().all(QueryResult::passed)
    }

    /// One summary line: `PASS name value = 2/3 ...`.
    pub fn summary(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {}", self.name);
        match (&self.value, &self.expected) {
            (Ok(v), Some(e)) => line += &format!(" value = {} (expected {e})", format_rational(v)),
            (Ok(v), None) => line += &format!(" value = {}", format_rational(v)),
            (Err(err), _) => line += &format!(" error: {err}"),
        }
        for q in &self.queries {
            match &q.actual {
                Ok(v) => {
                    line += &format!(
                        "; P(win | {}) under {} = {} (expected {})",
                        q.event,
                        q.profile,
                        format_rational(v),
                        q.expected
                    )
                }
                Err(err) => line += &format!("; {} under {}: error: {err}", q.event, q.profile),
            }
        }
        line
    }
}

/// The semantic game of a corpus sentence, with Nature's strategy.
pub fn load_sentence(
    formula: &str,
    structure: &str,
    nature: Option<&str>,
    config: &SolveConfig,
) -> Result<(SemanticGame, crate::strategy::BehavioralStrategy)> {
    let phi = parse_formula(file(formula)?)?;
    let m = parse_structure(file(structure)?)?;
    let g = build_semantic_game_capped(&m, &phi, config.node_cap)?;
    let spec = match nature {
        Some(n) => NatureSpec::Rules(file(n)?.to_string()),
        None => NatureSpec::Uniform,
    };
    let lambda = spec.resolve(&g)?;
    Ok((g, lambda))
}

pub fn run_entry(entry: &CorpusEntry, config: &SolveConfig) -> EntryResult {
    let mut result = EntryResult {
        name: entry.name.clone(),
        expected: entry.expected.clone(),
        value: Err(Error::Invalid("not run".into())),
        queries: Vec::new(),
    };
    match &entry.source {
        Source::Game(name) => {
            result.value = file(name)
                .and_then(parse_extensive_game)
                .and_then(|g| solve_game(&g, &default_nature(&g), config))
                .map(|s| s.value);
        }
        Source::Sentence {
            formula,
            structure,
            nature,
        } => match load_sentence(formula, structure, nature.as_deref(), config) {
            Err(e) => result.value = Err(e),
            Ok((g, lambda)) => {
                result.value = solve_game(&g.game, &lambda, config).map(|s| s.value);
                for q in &entry.queries {
                    let actual = (|| {
                        let prof = parse_profile(file(&q.profile)?, &g.game, Some(&g.structure))?;
                        let ev = parse_event(&q.event, &g.structure)?;
                        let c = conditional_value(
                            &g.game,
                            &lambda,
                            &prof.eloise,
                            &prof.abelard,
                            &|n| ev.holds(&g, n),
                        )?;
                        Ok(c.value)
                    })();
                    result.queries.push(QueryResult {
                        profile: q.profile.clone(),
                        event: q.event.clone(),
                        expected: q.expected.clone(),
                        actual,
                    });
                }
            }
        },
    }
    result
}

/// Runs the entries whose name contains `filter`, in parallel; results come
/// back in corpus order.
pub fn run_corpus(
    entries: &[CorpusEntry],
    filter: Option<&str>,
    config: &SolveConfig,
) -> Vec<EntryResult> {
    entries
        .par_iter()
        .filter(|e| filter.is_none_or(|f| e.name.contains(f)))
        .map(|e| run_entry(e, config))
        .collect()
}
