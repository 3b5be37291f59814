//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::tarski;
use sif_core::corpus::{
    corpus, corpus_file, load_sentence, Source, CLASSICAL, CLASSICAL_STRUCTURE,
};
use sif_core::formula::{negate, Formula};
use sif_core::game::{ExtensiveGame, InfoKey, Player, SemanticGame};
use sif_core::parser::{
    format_formula, parse_event, parse_extensive_game, parse_formula, parse_profile,
    parse_structure,
};
use sif_core::rational::{format_rational, int, one, ratio, to_f64, zero, Rational};
use sif_core::solver::{
    build_matrix, build_matrix_capped, classical_status, conditional_value, profile_distribution,
    simulate, solve_game, solve_matrix, solve_zero_sum, truth_value, verify_equilibrium, Classical,
    Equilibrium, NatureSpec, SolveConfig,
};
use sif_core::strategy::{
    default_nature, enumerate_reduced, BehavioralStrategy, MixedStrategy, ReducedStrategy,
};
use sif_core::structure::Structure;

type Outcome = Result<String, Box<dyn std::error::Error>>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+).into());
        }
    };
}

fn config() -> SolveConfig {
    SolveConfig::default()
}

fn file(name: &str) -> &'static str {
    corpus_file(name).unwrap_or_else(|| panic!("missing corpus file {name}"))
}

fn sentence(
    formula: &str,
    structure: &str,
    nature: Option<&str>,
) -> (SemanticGame, BehavioralStrategy) {
    load_sentence(formula, structure, nature, &config()).expect("corpus sentence loads")
}

fn monty_hall() -> ExtensiveGame {
    parse_extensive_game(file("monty_hall.game")).expect("game parses")
}

fn action_at(g: &ExtensiveGame, s: &ReducedStrategy, label: &str) -> Option<String> {
    s.choices().iter().find_map(|&(set, a)| {
        let info = g.infoset(set);
        (info.key == InfoKey::Label(label.into())).then(|| info.actions[a].clone())
    })
}

/// `Some(true)` for a sticking contestant, `Some(false)` for a switching one,
/// `None` if the final choice depends on the opened door.
fn sticks(g: &ExtensiveGame, sigma: &ReducedStrategy) -> (String, Option<bool>) {
    let guess = action_at(g, sigma, "a").expect("initial guess");
    let finals: Vec<bool> = sigma
        .choices()
        .iter()
        .filter(|&&(set, _)| g.infoset(set).key != InfoKey::Label("a".into()))
        .map(|&(set, a)| g.infoset(set).actions[a] == guess)
        .collect();
    let kind = if finals.iter().all(|&s| s) {
        Some(true)
    } else if finals.iter().all(|&s| !s) {
        Some(false)
    } else {
        None
    };
    (guess, kind)
}

/// Prize door, and whether Monty opens the lowest door he may.
fn monty(g: &ExtensiveGame, tau: &ReducedStrategy) -> (String, bool) {
    let prize = action_at(g, tau, "root").expect("prize placement");
    let lowest = tau.choices().iter().all(|&(set, a)| {
        let info = g.infoset(set);
        info.actions.len() != 2
            || info.key == InfoKey::Label("root".into())
            || info.actions[a] == *info.actions.iter().min().unwrap()
    });
    (prize, lowest)
}

fn criterion_1() -> Outcome {
    let g = monty_hall();
    let lambda = default_nature(&g);
    let s = solve_game(&g, &lambda, &config())?;
    ensure!(
        s.value == ratio(2, 3),
        "value {}",
        format_rational(&s.value)
    );
    for (sigma, _) in &s.eloise.support {
        ensure!(
            sticks(&g, sigma).1 == Some(false),
            "non-switch strategy in support: {}",
            sigma.describe(&g)
        );
    }
    let m = build_matrix(&g, &lambda, config().budget)?;
    let mix = |support: &[(ReducedStrategy, Rational)], all: &[ReducedStrategy]| {
        all.iter()
            .map(|s| {
                support
                    .iter()
                    .find(|(t, _)| t == s)
                    .map_or(zero(), |(_, p)| p.clone())
            })
            .collect::<Vec<_>>()
    };
    let eq = Equilibrium {
        value: s.value.clone(),
        row_mix: mix(&s.eloise.support, &m.rows),
        col_mix: mix(&s.abelard.support, &m.cols),
    };
    ensure!(
        verify_equilibrium(&m.cells, &eq),
        "returned mixes are not an equilibrium"
    );
    Ok(format!(
        "value 2/3, {} switch strategies in support",
        s.eloise.support.len()
    ))
}

fn criterion_2() -> Outcome {
    let phi = parse_formula(file("phi_mh.if"))?;
    let m = parse_structure(file("doors3.struct"))?;
    let s = truth_value(&m, &phi, &NatureSpec::Uniform, &config())?;
    let game = solve_game(&monty_hall(), &default_nature(&monty_hall()), &config())?;
    ensure!(
        s.value == ratio(2, 3),
        "value {}",
        format_rational(&s.value)
    );
    ensure!(s.value == game.value, "differs from the hand-built game");
    Ok("truth value 2/3, equal to the hand-built game".into())
}

fn criterion_3() -> Outcome {
    let g = monty_hall();
    let m = build_matrix(&g, &default_nature(&g), config().budget)?;
    ensure!(m.dims() == (12, 6), "matrix is {:?}", m.dims());
    let doors = ["1", "2", "3"];
    let mut col = HashMap::new();
    for (j, tau) in m.cols.iter().enumerate() {
        col.insert(monty(&g, tau), j);
    }
    let order: Vec<usize> = [true, false]
        .iter()
        .flat_map(|&low| doors.iter().map(move |d| (d.to_string(), low)))
        .map(|k| col.get(&k).copied().ok_or(format!("no column for {k:?}")))
        .collect::<Result<_, _>>()?;
    let expected: [[i64; 6]; 6] = [
        [1, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 1, 0],
        [0, 0, 1, 0, 0, 1],
        [0, 1, 1, 0, 1, 1],
        [1, 0, 1, 1, 0, 1],
        [1, 1, 0, 1, 1, 0],
    ];
    let mut named = [None; 6];
    let mut unnamed = 0;
    for (i, sigma) in m.rows.iter().enumerate() {
        let (guess, kind) = sticks(&g, sigma);
        let d = doors.iter().position(|d| *d == guess).unwrap();
        match kind {
            Some(true) => named[d] = Some(i),
            Some(false) => named[3 + d] = Some(i),
            None => {
                unnamed += 1;
                let ones = m.cells[i].iter().filter(|c| **c == one()).count();
                let zeros = m.cells[i].iter().filter(|c| **c == zero()).count();
                ensure!(
                    ones == 3 && zeros == 3,
                    "row {} has {ones} ones",
                    sigma.describe(&g)
                );
            }
        }
    }
    ensure!(unnamed == 6, "{unnamed} unnamed rows");
    for (r, row) in expected.iter().enumerate() {
        let i = named[r].ok_or(format!("named row {r} missing"))?;
        for (c, &want) in row.iter().enumerate() {
            ensure!(m.cells[i][order[c]] == int(want), "cell ({r},{c}) differs");
        }
    }
    Ok("6 named rows match, 6 other rows have three 1s".into())
}

fn criterion_4() -> Outcome {
    let phi = parse_formula(file("phi_mh_no_offer.if"))?;
    let m = parse_structure(file("doors3.struct"))?;
    let v = truth_value(&m, &phi, &NatureSpec::Uniform, &config())?.value;
    ensure!(v == ratio(1, 3), "value {}", format_rational(&v));
    Ok("truth value 1/3".into())
}

fn criterion_5() -> Outcome {
    let phi = parse_formula(file("matching_pennies.if"))?;
    for n in 2..=5 {
        let m = Structure::numbered(n);
        let v = truth_value(&m, &phi, &NatureSpec::Uniform, &config())?.value;
        ensure!(
            v == ratio(1, n as i64),
            "n = {n}: value {}",
            format_rational(&v)
        );
    }
    for n in 2..=6 {
        let status = classical_status(&Structure::numbered(n), &phi, &config())?;
        ensure!(
            status == Classical::Indeterminate(ratio(1, n as i64)),
            "n = {n}: status {status:?}"
        );
    }
    Ok("1/n for n = 2..5, indeterminate for n = 2..6".into())
}

fn chosen(g: &ExtensiveGame, s: &ReducedStrategy) -> String {
    let &(set, a) = s.choices().first().expect("one choice");
    g.infoset(set).actions[a].clone()
}

fn criterion_6() -> Outcome {
    let (g, lambda) = sentence(
        "stochastic_matching_pennies.if",
        "coin.struct",
        Some("biased_coin.nat"),
    );
    let s = solve_game(&g.game, &lambda, &config())?;
    ensure!(
        s.value == ratio(2, 9),
        "value {}",
        format_rational(&s.value)
    );
    let m = build_matrix(&g.game, &lambda, config().budget)?;
    let (eq, _) = solve_matrix(&m, true);
    ensure!(
        eq.value == ratio(2, 9),
        "matrix value {}",
        format_rational(&eq.value)
    );
    ensure!(
        verify_equilibrium(&m.cells, &eq),
        "returned equilibrium fails verification"
    );
    let p = |s: &ReducedStrategy| {
        if chosen(&g.game, s) == "0" {
            ratio(2, 3)
        } else {
            ratio(1, 3)
        }
    };
    let stated = Equilibrium {
        value: ratio(2, 9),
        row_mix: m.rows.iter().map(p).collect(),
        col_mix: m.cols.iter().map(p).collect(),
    };
    ensure!(
        verify_equilibrium(&m.cells, &stated),
        "p = q = 2/3 fails verification"
    );
    Ok("value 2/9; solver and p = q = 2/3 profiles verify".into())
}

fn criterion_7() -> Outcome {
    let phi = parse_formula(file("phi_mh_chance.if"))?;
    let m = parse_structure(file("doors3.struct"))?;
    let v = truth_value(&m, &phi, &NatureSpec::Uniform, &config())?.value;
    ensure!(v == ratio(7, 9), "value {}", format_rational(&v));
    Ok("truth value 7/9".into())
}

fn criterion_8() -> Outcome {
    let (g, lambda) = sentence("phi_mh_no_offer_chance.if", "doors3.struct", None);
    let ev = parse_event("z != x /\\ z != y@1", &g.structure)?;
    let mut out = Vec::new();
    for name in ["mh_no_offer_stick.prof", "mh_no_offer_switch.prof"] {
        let p = parse_profile(file(name), &g.game, Some(&g.structure))?;
        ensure!(p.abelard.support.len() == 1, "{name}: Abelard must be pure");
        ensure!(
            p.eloise.support.len() == 3 && p.eloise.support.iter().all(|(_, m)| *m == ratio(1, 3)),
            "{name}: Eloise must be uniform over three strategies"
        );
        let c = conditional_value(&g.game, &lambda, &p.eloise, &p.abelard, &|n| {
            ev.holds(&g, n)
        })?;
        ensure!(
            c.value == ratio(1, 2),
            "{name}: {}",
            format_rational(&c.value)
        );
        out.push(format_rational(&c.value));
    }
    Ok(format!("stick {}, switch {}", out[0], out[1]))
}

fn mix(player: Player, entries: Vec<(ReducedStrategy, Rational)>) -> MixedStrategy {
    MixedStrategy::new(player, entries).expect("masses sum to 1")
}

fn eloise_pure(g: &SemanticGame, name: &str) -> ReducedStrategy {
    parse_profile(file(name), &g.game, Some(&g.structure))
        .expect("profile parses")
        .eloise
        .support[0]
        .0
        .clone()
}

fn win_probability(
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    mu: &MixedStrategy,
    nu: &MixedStrategy,
) -> Rational {
    conditional_value(g, lambda, mu, nu, &|_| true)
        .expect("whole space")
        .value
}

fn criterion_9() -> Outcome {
    let (g, lambda) = sentence("phi_sb.if", "sb.struct", None);
    let v = solve_game(&g.game, &lambda, &config())?.value;
    ensure!(v == ratio(3, 4), "value {}", format_rational(&v));
    let heads = eloise_pure(&g, "sb_heads.prof");
    let tails = eloise_pure(&g, "sb_tails.prof");
    let nobody = MixedStrategy::pure(enumerate_reduced(&g.game, Player::Abelard, 1)?.remove(0));
    let awake = parse_event("Awake(x,t)", &g.structure)?;
    for p in [zero(), ratio(1, 2), one()] {
        let mu = mix(
            Player::Eloise,
            vec![(heads.clone(), p.clone()), (tails.clone(), one() - &p)],
        );
        let u = win_probability(&g.game, &lambda, &mu, &nobody);
        ensure!(
            u == (int(3) - &p) / int(4),
            "p = {}: payoff {}",
            format_rational(&p),
            format_rational(&u)
        );
        let c = conditional_value(&g.game, &lambda, &mu, &nobody, &|n| awake.holds(&g, n))?;
        ensure!(
            c.value == (int(2) - &p) / int(3),
            "p = {}: conditional {}",
            format_rational(&p),
            format_rational(&c.value)
        );
    }
    Ok("value 3/4, payoffs (3-p)/4, conditionals (2-p)/3; heads guess 1/3".into())
}

fn criterion_10() -> Outcome {
    let (g, lambda) = sentence("phi_sb_halfer.if", "sb.struct", None);
    let heads = eloise_pure(&g, "sb_halfer_heads.prof");
    let tails = eloise_pure(&g, "sb_halfer_mixed.prof");
    let abelard = parse_profile(file("sb_halfer_mixed.prof"), &g.game, Some(&g.structure))?.abelard;
    ensure!(
        abelard.support.len() == 2,
        "expected two Abelard strategies"
    );
    let (day1, day2): (Vec<_>, Vec<_>) = abelard
        .support
        .iter()
        .map(|(s, _)| s.clone())
        .partition(|s| s.lines(&g.game).iter().all(|l| l.ends_with("-> 1")));
    let t1 = parse_event("t = 1", &g.structure)?;
    let grid = [zero(), ratio(1, 4), ratio(1, 2), ratio(3, 4), one()];
    let mu = |p: &Rational| {
        mix(
            Player::Eloise,
            vec![(heads.clone(), p.clone()), (tails.clone(), one() - p)],
        )
    };
    let nu = |q: &Rational| {
        mix(
            Player::Abelard,
            vec![(day1[0].clone(), q.clone()), (day2[0].clone(), one() - q)],
        )
    };
    for p in &grid {
        for q in &grid {
            let (mu, nu) = (mu(p), nu(q));
            let u = win_probability(&g.game, &lambda, &mu, &nu);
            ensure!(
                u == ratio(1, 2),
                "p = {p}, q = {q}: payoff {}",
                format_rational(&u)
            );
            let c = conditional_value(&g.game, &lambda, &mu, &nu, &|n| t1.holds(&g, n))?;
            let want = (p + (one() - p) * q) / (one() + q);
            ensure!(
                c.value == want,
                "p = {p}, q = {q}: conditional {}",
                format_rational(&c.value)
            );
        }
    }

    let halfer_value = solve_game(&g.game, &lambda, &config())?.value;
    let (sb, alt) = sentence("phi_sb.if", "sb.struct", Some("sb_alt.nat"));
    let alt_value = solve_game(&sb.game, &alt, &config())?.value;
    ensure!(
        alt_value == halfer_value,
        "values {alt_value} and {halfer_value} differ"
    );
    let (sb_heads, sb_tails) = (
        eloise_pure(&sb, "sb_heads.prof"),
        eloise_pure(&sb, "sb_tails.prof"),
    );
    let nobody = MixedStrategy::pure(enumerate_reduced(&sb.game, Player::Abelard, 1)?.remove(0));
    let sb_t1 = parse_event("t = 1", &sb.structure)?;
    let half = nu(&ratio(1, 2));
    for p in &grid {
        let sb_mu = mix(
            Player::Eloise,
            vec![(sb_heads.clone(), p.clone()), (sb_tails.clone(), one() - p)],
        );
        let a = win_probability(&sb.game, &alt, &sb_mu, &nobody);
        let b = win_probability(&g.game, &lambda, &mu(p), &half);
        ensure!(a == b, "p = {p}: payoffs {a} and {b}");
        let a = conditional_value(&sb.game, &alt, &sb_mu, &nobody, &|n| sb_t1.holds(&sb, n))?.value;
        let b = conditional_value(&g.game, &lambda, &mu(p), &half, &|n| t1.holds(&g, n))?.value;
        ensure!(a == b, "p = {p}: conditionals {a} and {b}");
    }
    Ok(
        "payoff 1/2 on the grid, conditionals (p+(1-p)q)/(1+q), alternative Nature matches q = 1/2"
            .into(),
    )
}

fn corpus_sentences() -> Vec<(String, String, Option<String>)> {
    let mut out = Vec::new();
    for e in corpus() {
        if let Source::Sentence {
            formula,
            structure,
            nature,
        } = e.source
        {
            if !out
                .iter()
                .any(|(f, s, n)| *f == formula && *s == structure && *n == nature)
            {
                out.push((formula, structure, nature));
            }
        }
    }
    out
}

fn criterion_11() -> Outcome {
    let sentences = corpus_sentences();
    let mut formulas: Vec<Formula> = sentences
        .iter()
        .map(|(f, _, _)| parse_formula(file(f)))
        .collect::<Result<_, _>>()?;
    for (src, _) in CLASSICAL {
        formulas.push(parse_formula(src)?);
    }
    for phi in &formulas {
        ensure!(
            negate(&negate(phi)) == *phi,
            "negation is not an involution on {}",
            format_formula(phi)
        );
        let again = parse_formula(&format_formula(phi))?;
        ensure!(again == *phi, "round trip changes {}", format_formula(phi));
    }

    let m = parse_structure(CLASSICAL_STRUCTURE)?;
    for (src, truth) in CLASSICAL {
        let phi = parse_formula(src)?;
        ensure!(
            phi.is_slash_free() && !phi.has_chance(),
            "{src} is not classical"
        );
        let oracle = tarski(&m, &mut Vec::new(), &phi);
        ensure!(
            oracle == *truth,
            "{src}: fixture says {truth}, evaluator {oracle}"
        );
        let status = classical_status(&m, &phi, &config())?;
        let want = if oracle {
            Classical::True
        } else {
            Classical::False
        };
        ensure!(status == want, "{src}: {status:?}");
    }

    let mut dual = 0;
    for (f, s, n) in &sentences {
        let phi = parse_formula(file(f))?;
        if phi.has_chance() {
            continue;
        }
        let m = parse_structure(file(s))?;
        let spec = n
            .as_ref()
            .map_or(NatureSpec::Uniform, |n| NatureSpec::Rules(file(n).into()));
        let v = truth_value(&m, &phi, &spec, &config())?.value;
        let w = truth_value(&m, &negate(&phi), &spec, &config())?.value;
        ensure!(w == one() - &v, "{f} on {s}: {v} and {w}");
        dual += 1;
    }
    for (src, _) in CLASSICAL {
        let phi = parse_formula(src)?;
        let v = truth_value(&m, &phi, &NatureSpec::Uniform, &config())?.value;
        let w = truth_value(&m, &negate(&phi), &NatureSpec::Uniform, &config())?.value;
        ensure!(w == one() - &v, "{src}: {v} and {w}");
        dual += 1;
    }

    let mut games: Vec<(String, ExtensiveGame, BehavioralStrategy)> = Vec::new();
    let g = monty_hall();
    games.push(("monty_hall.game".into(), g.clone(), default_nature(&g)));
    for (f, s, n) in &sentences {
        let (g, lambda) = sentence(f, s, n.as_deref());
        games.push((format!("{f} on {s}"), g.game, lambda));
    }
    let (mut reduced, mut skipped) = (0, Vec::new());
    for (name, g, lambda) in &games {
        let m = match build_matrix_capped(g, lambda, config().budget, config().cell_cap) {
            Ok(m) => m,
            Err(e) if e.is_budget() => {
                let plain = SolveConfig {
                    weak_dominance: false,
                    ..config()
                };
                let a = solve_game(g, lambda, &config())?.value;
                let b = solve_game(g, lambda, &plain)?.value;
                ensure!(a == b, "{name}: {a} with weak dominance, {b} without");
                skipped.push(name.clone());
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let full = solve_zero_sum(&m.cells).value;
        for weak in [false, true] {
            let (eq, _) = solve_matrix(&m, weak);
            ensure!(
                eq.value == full,
                "{name}: reduced {} vs full {}",
                eq.value,
                full
            );
            ensure!(
                verify_equilibrium(&m.cells, &eq),
                "{name}: lifted mixes fail on the full matrix"
            );
        }
        let solved = solve_game(g, lambda, &config())?.value;
        ensure!(solved == full, "{name}: solver {solved} vs full {full}");
        reduced += 1;
    }

    let mut coherent = 0;
    for e in corpus() {
        let Source::Sentence {
            formula,
            structure,
            nature,
        } = &e.source
        else {
            continue;
        };
        let (g, lambda) = sentence(formula, structure, nature.as_deref());
        for q in &e.queries {
            let p = parse_profile(file(&q.profile), &g.game, Some(&g.structure))?;
            let total = profile_distribution(&g.game, &lambda, &p.eloise, &p.abelard)?
                .into_iter()
                .fold(zero(), |acc, (_, m)| acc + m);
            ensure!(
                total == one(),
                "{}: distribution sums to {total}",
                q.profile
            );
            let ev = parse_event(&q.event, &g.structure)?;
            let not_ev = ev.complement();
            let win = win_probability(&g.game, &lambda, &p.eloise, &p.abelard);
            let a = conditional_value(&g.game, &lambda, &p.eloise, &p.abelard, &|n| {
                ev.holds(&g, n)
            })?;
            let b = conditional_value(&g.game, &lambda, &p.eloise, &p.abelard, &|n| {
                not_ev.holds(&g, n)
            });
            let (p_not, win_not) = match b {
                Ok(b) => (b.p_event.clone(), &b.value * &b.p_event),
                Err(_) => (zero(), zero()),
            };
            ensure!(
                &a.p_event + &p_not == one(),
                "{}: event and complement do not partition",
                q.profile
            );
            ensure!(
                &a.value * &a.p_event + win_not == win,
                "{}: coherence fails",
                q.profile
            );
            coherent += 1;
        }
    }
    Ok(format!(
        "{} formulas; 10 classical sentences; {dual} dualities; {reduced} full matrices reduced soundly; \
         {} solved alike with and without weak dominance; {coherent} conditional queries coherent and normalized",
        formulas.len(),
        skipped.join(", ")
    ))
}

fn within(
    name: &str,
    g: &ExtensiveGame,
    lambda: &BehavioralStrategy,
    mu: &MixedStrategy,
    nu: &MixedStrategy,
    seed: u64,
) -> Outcome {
    const PLAYS: u64 = 100_000;
    let exact = win_probability(g, lambda, mu, nu);
    let v = to_f64(&exact);
    let r = simulate(g, lambda, mu, nu, PLAYS, seed, None)?;
    let tolerance = 4.0 * (v * (1.0 - v) / PLAYS as f64).sqrt();
    ensure!(
        (r.win_frequency - v).abs() <= tolerance,
        "{name}: frequency {} vs exact {v}",
        r.win_frequency
    );
    Ok(format!(
        "{name} {:.4} vs {}",
        r.win_frequency,
        format_rational(&exact)
    ))
}

fn criterion_12() -> Outcome {
    let mut parts = Vec::new();
    let g = monty_hall();
    let lambda = default_nature(&g);
    let s = solve_game(&g, &lambda, &config())?;
    parts.push(within(
        "monty-hall-game",
        &g,
        &lambda,
        &s.eloise,
        &s.abelard,
        1,
    )?);

    let (smp, smp_l) = sentence(
        "stochastic_matching_pennies.if",
        "coin.struct",
        Some("biased_coin.nat"),
    );
    let s = solve_game(&smp.game, &smp_l, &config())?;
    parts.push(within(
        "stochastic-matching-pennies",
        &smp.game,
        &smp_l,
        &s.eloise,
        &s.abelard,
        6,
    )?);

    let (mhc, mhc_l) = sentence("phi_mh_chance.if", "doors3.struct", None);
    let s = solve_game(&mhc.game, &mhc_l, &config())?;
    parts.push(within(
        "monty-hall-indifferent",
        &mhc.game,
        &mhc_l,
        &s.eloise,
        &s.abelard,
        7,
    )?);

    let (sb, sb_l) = sentence("phi_sb.if", "sb.struct", None);
    let s = solve_game(&sb.game, &sb_l, &config())?;
    parts.push(within(
        "sleeping-beauty",
        &sb.game,
        &sb_l,
        &s.eloise,
        &s.abelard,
        9,
    )?);
    let mu = mix(
        Player::Eloise,
        vec![
            (eloise_pure(&sb, "sb_heads.prof"), ratio(1, 2)),
            (eloise_pure(&sb, "sb_tails.prof"), ratio(1, 2)),
        ],
    );
    parts.push(within(
        "sleeping-beauty-half",
        &sb.game,
        &sb_l,
        &mu,
        &s.abelard,
        10,
    )?);
    Ok(parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("Monty Hall extensive game", criterion_1),
        ("Monty Hall sentence", criterion_2),
        ("Monty Hall payoff matrix", criterion_3),
        ("Monty Hall without the offer", criterion_4),
        ("matching pennies family", criterion_5),
        ("stochastic matching pennies", criterion_6),
        ("indifferent host", criterion_7),
        (
            "indifferent host without the offer, conditional",
            criterion_8,
        ),
        ("Sleeping Beauty", criterion_9),
        ("Sleeping Beauty, Abelard picks the day", criterion_10),
        ("property suite", criterion_11),
        ("Monte Carlo agreement", criterion_12),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}").into())
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {title}: {detail} ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {e} ({ms} ms)", i + 1);
            }
        }
    }
    println!(
        "{}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
