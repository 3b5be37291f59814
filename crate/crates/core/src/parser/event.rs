//! Events: quantifier-free conditions on the final assignment of a play.
//!
//! Events use the formula syntax without quantifiers, chance or slashes.
//! A variable denotes its current value; `y@k` denotes the value given by the
//! `k`-th binding of `y`, which matters when `y` is requantified.

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::parser::formula::FormulaParser;
use crate::parser::lexer::{tokenize, Cursor};
use crate::solver::EventPredicate;
use crate::structure::{suitable, Structure};

pub fn parse_event(src: &str, m: &Structure) -> Result<EventPredicate> {
    let mut p = FormulaParser::new(Cursor::new(tokenize(src, false)?), true);
    let phi = p.formula()?;
    if !p.cur.at_end() {
        return Err(p.cur.unexpected("expected end of event").into());
    }
    check_shape(&phi)?;
    suitable(m, &phi).map_err(Error::Event)?;
    Ok(EventPredicate::new(phi, src.trim()))
}

fn check_shape(phi: &Formula) -> Result<()> {
    match phi {
        Formula::Lit(_) => Ok(()),
        Formula::Or { left, right, slash } | Formula::And { left, right, slash } => {
            if !slash.is_empty() {
                return Err(Error::Event("events cannot carry slash sets".into()));
            }
            check_shape(left)?;
            check_shape(right)
        }
        Formula::Exists { .. } | Formula::Forall { .. } => {
            Err(Error::Event("events cannot contain quantifiers".into()))
        }
        Formula::Chance { .. } | Formula::ChanceOr { .. } => {
            Err(Error::Event("events cannot contain chance moves".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_and_rejects() {
        let m = Structure::numbered(3);
        assert!(parse_event("z != x /\\ z != y", &m).is_ok());
        assert!(parse_event("y@1 = y@2", &m).is_ok());
        assert!(parse_event("~(x = 1 -> t = 2)", &m).is_ok());
        for (src, needle) in [
            ("x = 9", "constant `9`"),
            ("exists x x = 1", "quantifiers"),
            ("chance x x = 1", "chance"),
            ("x = 1 \\/{x} x = 2", "slash"),
            ("Awake(x,t)", "relation `Awake`"),
            ("x = ", "syntax"),
        ] {
            let err = parse_event(src, &m).unwrap_err().to_string();
            assert!(err.contains(needle), "{src}: {err}");
        }
    }
}
