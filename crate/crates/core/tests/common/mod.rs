//! Helpers shared by the integration tests.

use sif_core::formula::{Atom, ChainOp, Formula, Term};
use sif_core::structure::{Elem, Structure};

/// Classical satisfaction, evaluated directly on the structure.
pub fn tarski(m: &Structure, env: &mut Vec<(String, Elem)>, phi: &Formula) -> bool {
    fn term(m: &Structure, env: &[(String, Elem)], t: &Term) -> Elem {
        match t {
            Term::Var(v) => env.iter().rev().find(|(w, _)| w == v).expect("bound").1,
            Term::Const(c) => m.resolve_constant(c).expect("interpreted"),
            Term::App(f, args) => {
                let vals: Vec<Elem> = args.iter().map(|a| term(m, env, a)).collect();
                m.functions()[f].table[&vals]
            }
        }
    }
    let quantify = |env: &mut Vec<(String, Elem)>, var: &str, body: &Formula, all: bool| {
        let elems: Vec<Elem> = m.elements().collect();
        let mut results = elems.into_iter().map(|e| {
            env.push((var.to_string(), e));
            let r = tarski(m, env, body);
            env.pop();
            r
        });
        if all {
            results.all(|r| r)
        } else {
            results.any(|r| r)
        }
    };
    match phi {
        Formula::Lit(l) => {
            let holds = match &l.atom {
                Atom::Falsum => false,
                Atom::Eq(a, b) => term(m, env, a) == term(m, env, b),
                Atom::Chain { terms, ops } => ops.iter().enumerate().all(|(i, op)| {
                    let eq = term(m, env, &terms[i]) == term(m, env, &terms[i + 1]);
                    eq == (*op == ChainOp::Eq)
                }),
                Atom::Rel { name, args } => {
                    let vals: Vec<Elem> = args.iter().map(|a| term(m, env, a)).collect();
                    m.relations()[name].tuples.contains(&vals)
                }
            };
            holds == l.positive
        }
        Formula::Or { left, right, .. } => tarski(m, env, left) || tarski(m, env, right),
        Formula::And { left, right, .. } => tarski(m, env, left) && tarski(m, env, right),
        Formula::Exists { var, body, .. } => quantify(env, var, body, false),
        Formula::Forall { var, body, .. } => quantify(env, var, body, true),
        Formula::ChanceOr { .. } | Formula::Chance { .. } => {
            panic!("chance in a classical sentence")
        }
    }
}
