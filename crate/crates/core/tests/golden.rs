//! Pinned simulation tallies. The generator is ChaCha8 seeded from a `u64`;
//! a change to these numbers means the sampling procedure changed.

use sif_core::corpus::{corpus_file, load_sentence};
use sif_core::parser::{parse_event, parse_profile};
use sif_core::rational::to_f64;
use sif_core::solver::{simulate, solve_game, SimulationReport, SolveConfig};

fn run(formula: &str, structure: &str, profile: &str, event: &str, seed: u64) -> SimulationReport {
    let (g, lambda) = load_sentence(formula, structure, None, &SolveConfig::default()).unwrap();
    let p = parse_profile(corpus_file(profile).unwrap(), &g.game, Some(&g.structure)).unwrap();
    let ev = parse_event(event, &g.structure).unwrap();
    let holds = |n| ev.holds(&g, n);
    simulate(
        &g.game,
        &lambda,
        &p.eloise,
        &p.abelard,
        100_000,
        seed,
        Some(&holds),
    )
    .unwrap()
}

#[test]
fn sleeping_beauty_tails() {
    let r = run("phi_sb.if", "sb.struct", "sb_tails.prof", "Awake(x,t)", 42);
    assert_eq!((r.wins, r.event_hits, r.event_wins), (75180, 74896, 50076));
}

#[test]
fn monty_hall_switch_without_offer() {
    let r = run(
        "phi_mh_no_offer_chance.if",
        "doors3.struct",
        "mh_no_offer_switch.prof",
        "z != x /\\ z != y@1",
        7,
    );
    assert_eq!((r.wins, r.event_hits, r.event_wins), (33329, 44408, 22241));
}

#[test]
fn monty_hall_equilibrium_at_seed_42() {
    let config = SolveConfig::default();
    let (g, lambda) = load_sentence("phi_mh.if", "doors3.struct", None, &config).unwrap();
    let s = solve_game(&g.game, &lambda, &config).unwrap();
    let r = simulate(&g.game, &lambda, &s.eloise, &s.abelard, 100_000, 42, None).unwrap();
    let v = to_f64(&s.value);
    assert!((r.win_frequency - v).abs() <= 4.0 * (v * (1.0 - v) / 1e5).sqrt());
    assert_eq!(r.wins, 66821);
}
