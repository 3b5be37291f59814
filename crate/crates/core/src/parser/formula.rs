//! Surface syntax for formulas.
//!
//! ```text
//! formula  := disj ('->' formula)?
//! disj     := conj (('\/' slash? | '><') conj)*
//! conj     := unary ('/\' slash? unary)*
//! unary    := '~' unary | quant unary | '(' quant ')' unary | '(' formula ')' | atom
//! quant    := ('forall' | 'exists') var ('/' slash)? | 'chance' var
//! slash    := '{' (var (',' var)*)? '}'
//! atom     := 'true' | 'false' | Rel ('(' terms ')')? | term (('=' | '!=') term)+
//! term     := var | f '(' terms ')' | numeral | 'name
//! ```
//!
//! Negation is pushed to the literals and implication is expanded while
//! parsing, so the result is always in negation normal form.

use crate::error::{ParseError, Position};
use crate::formula::{implies, negate, Atom, ChainOp, Formula, Literal, SlashSet, Term};
use crate::parser::lexer::{tokenize, Cursor, Tok};

const KEYWORDS: [&str; 5] = ["forall", "exists", "chance", "true", "false"];

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = FormulaParser::new(Cursor::new(tokenize(src, false)?), false);
    let phi = p.formula()?;
    if !p.cur.at_end() {
        return Err(p.cur.unexpected("expected end of formula"));
    }
    Ok(phi)
}

/// Quantifier header: `forall x/{W}`, `exists x/{W}` or `chance x`.
enum Quant {
    Forall(String, SlashSet),
    Exists(String, SlashSet),
    Chance(String),
}

impl Quant {
    fn apply(self, body: Formula) -> Formula {
        match self {
            Quant::Forall(v, w) => Formula::forall(&v, w, body),
            Quant::Exists(v, w) => Formula::exists(&v, w, body),
            Quant::Chance(v) => Formula::chance(&v, body),
        }
    }
}

pub(crate) struct FormulaParser {
    pub(crate) cur: Cursor,
    /// Accept `y@k` terms (the k-th binding of `y`), as used by events.
    binding_index: bool,
}

impl FormulaParser {
    pub(crate) fn new(cur: Cursor, binding_index: bool) -> Self {
        FormulaParser { cur, binding_index }
    }

    pub(crate) fn formula(&mut self) -> Result<Formula, ParseError> {
        let left = self.disj()?;
        if self.cur.eat(&Tok::Arrow) {
            let right = self.formula()?;
            return Ok(implies(&left, &right));
        }
        Ok(left)
    }

    fn disj(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conj()?;
        loop {
            if self.cur.eat(&Tok::Or) {
                let slash = self.opt_slash_set()?;
                let right = self.conj()?;
                left = Formula::or(left, right, slash);
            } else if self.cur.eat(&Tok::Cross) {
                let right = self.conj()?;
                left = Formula::chance_or(left, right);
            } else {
                return Ok(left);
            }
        }
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while self.cur.eat(&Tok::And) {
            let slash = self.opt_slash_set()?;
            let right = self.unary()?;
            left = Formula::and(left, right, slash);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.cur.eat(&Tok::Tilde) {
            return Ok(negate(&self.unary()?));
        }
        if let Some(q) = self.quant()? {
            return Ok(q.apply(self.unary()?));
        }
        if self.cur.peek() == &Tok::LParen {
            let mark = self.cur.mark();
            self.cur.bump();
            if let Some(q) = self.quant()? {
                if self.cur.eat(&Tok::RParen) {
                    return Ok(q.apply(self.unary()?));
                }
            }
            self.cur.reset(mark);
            self.cur.bump();
            let inner = self.formula()?;
            self.cur.expect(&Tok::RParen)?;
            return Ok(inner);
        }
        self.atom()
    }

    fn quant(&mut self) -> Result<Option<Quant>, ParseError> {
        let kw = match self.cur.peek() {
            Tok::Ident(s) if s == "forall" || s == "exists" || s == "chance" => s.clone(),
            _ => return Ok(None),
        };
        self.cur.bump();
        let var = self.variable()?;
        if kw == "chance" {
            return Ok(Some(Quant::Chance(var)));
        }
        let slash = if self.cur.eat(&Tok::Slash) {
            self.slash_set()?
        } else {
            SlashSet::new()
        };
        Ok(Some(if kw == "forall" {
            Quant::Forall(var, slash)
        } else {
            Quant::Exists(var, slash)
        }))
    }

    fn opt_slash_set(&mut self) -> Result<SlashSet, ParseError> {
        if self.cur.peek() == &Tok::LBrace {
            self.slash_set()
        } else {
            Ok(SlashSet::new())
        }
    }

    fn slash_set(&mut self) -> Result<SlashSet, ParseError> {
        self.cur.expect(&Tok::LBrace)?;
        let mut set = SlashSet::new();
        if self.cur.eat(&Tok::RBrace) {
            return Ok(set);
        }
        loop {
            set.insert(self.variable()?);
            if self.cur.eat(&Tok::RBrace) {
                return Ok(set);
            }
            self.cur.expect(&Tok::Comma)?;
        }
    }

    fn variable(&mut self) -> Result<String, ParseError> {
        let pos = self.cur.pos();
        let name = self.cur.ident("a variable")?;
        check_variable(&name, pos)?;
        Ok(name)
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.cur.peek().clone() {
            Tok::Ident(s) if s == "true" || s == "false" => {
                self.cur.bump();
                Ok(Formula::lit(Literal {
                    positive: s == "false",
                    atom: Atom::Falsum,
                }))
            }
            Tok::Ident(s) if s.starts_with(|c: char| c.is_ascii_uppercase()) => {
                self.cur.bump();
                let args = if self.cur.peek() == &Tok::LParen {
                    self.args()?
                } else {
                    Vec::new()
                };
                Ok(Formula::lit(Literal::pos(Atom::Rel { name: s, args })))
            }
            Tok::Ident(_) | Tok::Number(_) | Tok::Quoted(_) => self.comparison(),
            _ => Err(self.cur.unexpected("expected a formula")),
        }
    }

    fn comparison(&mut self) -> Result<Formula, ParseError> {
        let mut terms = vec![self.term()?];
        let mut ops = Vec::new();
        loop {
            let op = match self.cur.peek() {
                Tok::Eq => ChainOp::Eq,
                Tok::Ne => ChainOp::Ne,
                _ => break,
            };
            self.cur.bump();
            ops.push(op);
            terms.push(self.term()?);
        }
        if ops.is_empty() {
            return Err(self.cur.unexpected("expected `=` or `!=`"));
        }
        if ops.len() == 1 {
            let b = terms.pop().expect("two terms");
            let a = terms.pop().expect("two terms");
            let lit = Literal::pos(Atom::Eq(a, b));
            return Ok(Formula::lit(if ops[0] == ChainOp::Eq {
                lit
            } else {
                lit.flip()
            }));
        }
        Ok(Formula::lit(Literal::pos(Atom::Chain { terms, ops })))
    }

    fn args(&mut self) -> Result<Vec<Term>, ParseError> {
        self.cur.expect(&Tok::LParen)?;
        let mut args = Vec::new();
        if self.cur.eat(&Tok::RParen) {
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            if self.cur.eat(&Tok::RParen) {
                return Ok(args);
            }
            self.cur.expect(&Tok::Comma)?;
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.cur.pos();
        match self.cur.peek().clone() {
            Tok::Number(n) => {
                self.cur.bump();
                Ok(Term::Const(n))
            }
            Tok::Quoted(n) => {
                self.cur.bump();
                Ok(Term::Const(n))
            }
            Tok::Ident(name) => {
                self.cur.bump();
                if self.cur.peek() == &Tok::LParen {
                    return Ok(Term::App(name, self.args()?));
                }
                check_variable(&name, pos)?;
                if self.binding_index && self.cur.eat(&Tok::At) {
                    let k = match self.cur.peek().clone() {
                        Tok::Number(k) if k != "0" && !k.starts_with('0') => {
                            self.cur.bump();
                            k
                        }
                        _ => return Err(self.cur.unexpected("expected a binding index")),
                    };
                    return Ok(Term::Var(format!("{name}@{k}")));
                }
                Ok(Term::Var(name))
            }
            _ => Err(self.cur.unexpected("expected a term")),
        }
    }
}

fn check_variable(name: &str, pos: Position) -> Result<(), ParseError> {
    if KEYWORDS.contains(&name) {
        return Err(ParseError::new(pos, format!("`{name}` is a keyword")));
    }
    if !name.starts_with(|c: char| c.is_ascii_lowercase() || c == '_') {
        return Err(ParseError::new(
            pos,
            format!("variable `{name}` must start with a lowercase letter"),
        ));
    }
    Ok(())
}

/// Canonical text of a formula; [`parse_formula`] reads it back to the same tree.
pub fn format_formula(phi: &Formula) -> String {
    let mut out = String::new();
    write_formula(phi, &mut out);
    out
}

fn write_slash(slash: &SlashSet, out: &mut String) {
    out.push('{');
    out.push_str(&slash.iter().cloned().collect::<Vec<_>>().join(","));
    out.push('}');
}

fn write_formula(phi: &Formula, out: &mut String) {
    match phi {
        Formula::Lit(l) => out.push_str(&format_literal(l)),
        Formula::Or { left, right, slash } | Formula::And { left, right, slash } => {
            let op = if matches!(phi, Formula::Or { .. }) {
                "\\/"
            } else {
                "/\\"
            };
            out.push('(');
            write_formula(left, out);
            out.push(' ');
            out.push_str(op);
            if !slash.is_empty() {
                write_slash(slash, out);
            }
            out.push(' ');
            write_formula(right, out);
            out.push(')');
        }
        Formula::ChanceOr { left, right } => {
            out.push('(');
            write_formula(left, out);
            out.push_str(" >< ");
            write_formula(right, out);
            out.push(')');
        }
        Formula::Exists { var, slash, body } | Formula::Forall { var, slash, body } => {
            let kw = if matches!(phi, Formula::Exists { .. }) {
                "exists"
            } else {
                "forall"
            };
            if slash.is_empty() {
                out.push_str(&format!("{kw} {var} "));
            } else {
                out.push_str(&format!("({kw} {var}/"));
                write_slash(slash, out);
                out.push_str(") ");
            }
            write_formula(body, out);
        }
        Formula::Chance { var, body } => {
            out.push_str(&format!("chance {var} "));
            write_formula(body, out);
        }
    }
}

pub fn format_term(t: &Term) -> String {
    match t {
        Term::Var(v) => v.clone(),
        Term::Const(c) => {
            if c.bytes().all(|b| b.is_ascii_digit()) {
                c.clone()
            } else {
                format!("'{c}")
            }
        }
        Term::App(f, args) => format!(
            "{f}({})",
            args.iter().map(format_term).collect::<Vec<_>>().join(",")
        ),
    }
}

pub fn format_literal(l: &Literal) -> String {
    match &l.atom {
        Atom::Falsum => if l.positive { "false" } else { "true" }.to_string(),
        Atom::Rel { name, args } => {
            let sign = if l.positive { "" } else { "~" };
            if args.is_empty() {
                format!("{sign}{name}")
            } else {
                let args: Vec<String> = args.iter().map(format_term).collect();
                format!("{sign}{name}({})", args.join(","))
            }
        }
        Atom::Eq(a, b) => {
            let op = if l.positive { "=" } else { "!=" };
            format!("({} {op} {})", format_term(a), format_term(b))
        }
        Atom::Chain { terms, ops } => {
            let mut s = String::from("(");
            s.push_str(&format_term(&terms[0]));
            for (op, t) in ops.iter().zip(&terms[1..]) {
                s.push_str(match op {
                    ChainOp::Eq => " = ",
                    ChainOp::Ne => " != ",
                });
                s.push_str(&format_term(t));
            }
            s.push(')');
            if l.positive {
                s
            } else {
                format!("~{s}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vars: &[&str]) -> SlashSet {
        vars.iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn matching_pennies_sentence() {
        let phi = parse_formula("forall x (exists y/{x}) x = y").unwrap();
        let expected = Formula::forall(
            "x",
            SlashSet::new(),
            Formula::exists(
                "y",
                set(&["x"]),
                Formula::lit(Literal::pos(Atom::Eq(Term::var("x"), Term::var("y")))),
            ),
        );
        assert_eq!(phi, expected);
    }

    #[test]
    fn sleeping_beauty_sentence() {
        let phi = parse_formula("chance x chance t (Awake(x,t) -> (Heads(x) \\/{x,t} Tails(x)))")
            .unwrap();
        let rel = |name: &str, args: &[&str], positive: bool| {
            Formula::lit(Literal {
                positive,
                atom: Atom::Rel {
                    name: name.into(),
                    args: args.iter().map(|a| Term::var(a)).collect(),
                },
            })
        };
        let expected = Formula::chance(
            "x",
            Formula::chance(
                "t",
                Formula::or(
                    rel("Awake", &["x", "t"], false),
                    Formula::or(
                        rel("Heads", &["x"], true),
                        rel("Tails", &["x"], true),
                        set(&["x", "t"]),
                    ),
                    SlashSet::new(),
                ),
            ),
        );
        assert_eq!(phi, expected);
    }

    #[test]
    fn trailing_garbage_is_reported_at_its_position() {
        let err = parse_formula("R(x) )").unwrap_err();
        assert_eq!(err.position, Position { line: 1, column: 6 });
    }

    #[test]
    fn canonical_phi_mh() {
        let phi = parse_formula(
            "forall x (exists y/{x}) forall z ((z != x /\\ z != y) -> (exists y/{x}) x = y)",
        )
        .unwrap();
        assert_eq!(
            format_formula(&phi),
            "forall x (exists y/{x}) forall z (((z = x) \\/ (z = y)) \\/ (exists y/{x}) (x = y))"
        );
    }

    #[test]
    fn chain_literals_and_negation() {
        let phi = parse_formula("~(z = x != y)").unwrap();
        let Formula::Lit(l) = &phi else { panic!() };
        assert!(!l.positive);
        assert!(matches!(&l.atom, Atom::Chain { terms, .. } if terms.len() == 3));
        assert_eq!(format_formula(&phi), "~(z = x != y)");
    }

    #[test]
    fn literal_formats_as_source() {
        for src in [
            "R(x,y)",
            "~Awake(x,t)",
            "(x = y)",
            "(x != 'c)",
            "true",
            "false",
            "P",
        ] {
            assert_eq!(format_formula(&parse_formula(src).unwrap()), src);
        }
    }

    #[test]
    fn empty_slash_set_is_omitted() {
        let phi = parse_formula("exists y/{} (P(y) \\/{} Q(y))").unwrap();
        assert_eq!(format_formula(&phi), "exists y (P(y) \\/ Q(y))");
    }

    #[test]
    fn precedence_and_associativity() {
        let phi = parse_formula("P \\/ Q /\\ R -> S -> T").unwrap();
        assert_eq!(
            format_formula(&phi),
            "((~P /\\ (~Q \\/ ~R)) \\/ (~S \\/ T))"
        );
        let phi = parse_formula("A /\\ B /\\ C").unwrap();
        assert_eq!(format_formula(&phi), "((A /\\ B) /\\ C)");
    }

    #[test]
    fn errors() {
        assert!(parse_formula("forall X P(X)").is_err());
        assert!(parse_formula("exists forall x").is_err());
        assert!(parse_formula("x").is_err());
        assert!(parse_formula("(P").is_err());
        assert!(parse_formula("x = y@1").is_err());
    }
}
