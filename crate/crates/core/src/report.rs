//! Text and structured renderings of results.

use serde::{Serialize, Serializer};

use crate::game::ExtensiveGame;
use crate::rational::{format_rational, Rational};
use crate::solver::{Conditional, Method, SimulationReport, Solution};
use crate::strategy::MixedStrategy;

pub fn ser_rational<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(value))
}

pub fn ser_rationals<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(format_rational))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportEntry {
    #[serde(serialize_with = "ser_rational")]
    pub mass: Rational,
    pub strategy: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionReport {
    #[serde(serialize_with = "ser_rational")]
    pub value: Rational,
    pub method: Method,
    pub eloise: Vec<SupportEntry>,
    pub abelard: Vec<SupportEntry>,
    pub reduction_log: Vec<String>,
}

pub fn support(g: &ExtensiveGame, mix: &MixedStrategy) -> Vec<SupportEntry> {
    mix.support
        .iter()
        .map(|(s, p)| SupportEntry {
            mass: p.clone(),
            strategy: s.lines(g),
        })
        .collect()
}

impl SolutionReport {
    pub fn new(g: &ExtensiveGame, s: &Solution) -> Self {
        SolutionReport {
            value: s.value.clone(),
            method: s.method.clone(),
            eloise: support(g, &s.eloise),
            abelard: support(g, &s.abelard),
            reduction_log: s.log.clone(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("value = {}\n", format_rational(&self.value));
        out += &match &self.method {
            Method::Matrix {
                rows,
                cols,
                reduced_rows,
                reduced_cols,
            } => format!("method: payoff matrix {rows} x {cols}, reduced to {reduced_rows} x {reduced_cols}\n"),
            Method::Generation {
                iterations,
                rows,
                cols,
            } => format!("method: strategy generation, {iterations} rounds, {rows} x {cols} strategies\n"),
        };
        for (name, entries) in [("eloise", &self.eloise), ("abelard", &self.abelard)] {
            out += &format!("{name} support:\n");
            out += &support_text(entries);
        }
        if !self.reduction_log.is_empty() {
            out += "reduction log:\n";
            for line in &self.reduction_log {
                out += &format!("  {line}\n");
            }
        }
        out
    }
}

pub fn support_text(entries: &[SupportEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        out += &format!("  {}:\n", format_rational(&e.mass));
        if e.strategy.is_empty() {
            out += "    (no moves)\n";
        }
        for line in &e.strategy {
            out += &format!("    {line}\n");
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionalReport {
    pub event: String,
    #[serde(flatten)]
    pub result: Conditional,
    pub eloise: Vec<SupportEntry>,
    pub abelard: Vec<SupportEntry>,
}

impl ConditionalReport {
    pub fn text(&self) -> String {
        let mut out = format!("event: {}\n", self.event);
        out += &format!("P(event) = {}\n", format_rational(&self.result.p_event));
        out += &format!(
            "P(win and event) = {}\n",
            format_rational(&self.result.p_win_and_event)
        );
        out += &format!("value = {}\n", format_rational(&self.result.value));
        for (name, entries) in [("eloise", &self.eloise), ("abelard", &self.abelard)] {
            out += &format!("{name} profile:\n");
            out += &support_text(entries);
        }
        out
    }
}

pub fn simulation_text(r: &SimulationReport, event: Option<&str>) -> String {
    let mut out = format!(
        "plays = {}\nseed = {}\nwins = {}\nwin frequency = {:.6}\n",
        r.plays, r.seed, r.wins, r.win_frequency
    );
    if let Some(e) = event {
        out += &format!(
            "event: {e}\nevent plays = {}\nevent wins = {}\n",
            r.event_hits, r.event_wins
        );
        if let Some(f) = r.conditional_frequency() {
            out += &format!("conditional frequency = {f:.6}\n");
        }
    }
    out
}
