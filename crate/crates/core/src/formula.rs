//! Abstract syntax of stochastic IF formulas in negation normal form.
//!
//! Negation only occurs inside [`Literal`]s. [`negate`] computes the dual of
//! a formula, pushing negation down to the literals.

use std::collections::BTreeSet;
use std::fmt;

/// Variables listed in a slash set. Ordered so that formatting is canonical.
pub type SlashSet = BTreeSet<String>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    /// A constant symbol, or the name of a universe element (numerals).
    Const(String),
    /// Function application `f(t1, ..., tk)`.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(name.to_string())
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainOp {
    Eq,
    Ne,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Rel {
        name: String,
        args: Vec<Term>,
    },
    Eq(Term, Term),
    /// `t0 op1 t1 op2 t2 ...`, read as the conjunction of the adjacent
    /// constraints and evaluated as one atomic formula.
    Chain {
        terms: Vec<Term>,
        ops: Vec<ChainOp>,
    },
    /// The always-false atom.
    Falsum,
}

impl Atom {
    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Atom::Rel { args, .. } => args.iter().collect(),
            Atom::Eq(a, b) => vec![a, b],
            Atom::Chain { terms, .. } => terms.iter().collect(),
            Atom::Falsum => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub positive: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            positive: true,
            atom,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            positive: false,
            atom,
        }
    }

    pub fn flip(&self) -> Self {
        Literal {
            positive: !self.positive,
            atom: self.atom.clone(),
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for t in self.atom.terms() {
            t.collect_vars(&mut out);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Lit(Literal),
    Or {
        left: Box<Formula>,
        right: Box<Formula>,
        slash: SlashSet,
    },
    And {
        left: Box<Formula>,
        right: Box<Formula>,
        slash: SlashSet,
    },
    Exists {
        var: String,
        slash: SlashSet,
        body: Box<Formula>,
    },
    Forall {
        var: String,
        slash: SlashSet,
        body: Box<Formula>,
    },
    /// Nature's binary choice.
    ChanceOr {
        left: Box<Formula>,
        right: Box<Formula>,
    },
    /// Nature picks a value for `var`.
    Chance {
        var: String,
        body: Box<Formula>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Literal,
    Or,
    And,
    Exists,
    Forall,
    ChanceOr,
    Chance,
}

/// Path from the root to a subformula occurrence: one child selector per step
/// (0 = left or body, 1 = right).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OccurrenceId(pub Vec<u8>);

impl OccurrenceId {
    pub fn root() -> Self {
        OccurrenceId(Vec::new())
    }

    pub fn child(&self, selector: u8) -> Self {
        let mut path = self.0.clone();
        path.push(selector);
        OccurrenceId(path)
    }

    pub fn parse(text: &str) -> Option<Self> {
        let rest = text.strip_prefix('/')?;
        if rest.is_empty() {
            return Some(Self::root());
        }
        rest.split('/')
            .map(|s| match s {
                "0" => Some(0),
                "1" => Some(1),
                _ => None,
            })
            .collect::<Option<Vec<u8>>>()
            .map(OccurrenceId)
    }
}

impl fmt::Display for OccurrenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("/");
        }
        for step in &self.0 {
            write!(f, "/{step}")?;
        }
        Ok(())
    }
}

impl Formula {
    pub fn lit(literal: Literal) -> Self {
        Formula::Lit(literal)
    }

    pub fn or(left: Formula, right: Formula, slash: SlashSet) -> Self {
        Formula::Or {
            left: Box::new(left),
            right: Box::new(right),
            slash,
        }
    }

    pub fn and(left: Formula, right: Formula, slash: SlashSet) -> Self {
        Formula::And {
            left: Box::new(left),
            right: Box::new(right),
            slash,
        }
    }

    pub fn exists(var: &str, slash: SlashSet, body: Formula) -> Self {
        Formula::Exists {
            var: var.to_string(),
            slash,
            body: Box::new(body),
        }
    }

    pub fn forall(var: &str, slash: SlashSet, body: Formula) -> Self {
        Formula::Forall {
            var: var.to_string(),
            slash,
            body: Box::new(body),
        }
    }

    pub fn chance_or(left: Formula, right: Formula) -> Self {
        Formula::ChanceOr {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn chance(var: &str, body: Formula) -> Self {
        Formula::Chance {
            var: var.to_string(),
            body: Box::new(body),
        }
    }

    pub fn kind(&self) -> NodeKind {
        match self {
            Formula::Lit(_) => NodeKind::Literal,
            Formula::Or { .. } => NodeKind::Or,
            Formula::And { .. } => NodeKind::And,
            Formula::Exists { .. } => NodeKind::Exists,
            Formula::Forall { .. } => NodeKind::Forall,
            Formula::ChanceOr { .. } => NodeKind::ChanceOr,
            Formula::Chance { .. } => NodeKind::Chance,
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Lit(_) => Vec::new(),
            Formula::Or { left, right, .. }
            | Formula::And { left, right, .. }
            | Formula::ChanceOr { left, right } => vec![left, right],
            Formula::Exists { body, .. }
            | Formula::Forall { body, .. }
            | Formula::Chance { body, .. } => vec![body],
        }
    }

    /// The slash set of a player-owned node; empty for literals and chance nodes.
    pub fn slash(&self) -> Option<&SlashSet> {
        match self {
            Formula::Or { slash, .. }
            | Formula::And { slash, .. }
            | Formula::Exists { slash, .. }
            | Formula::Forall { slash, .. } => Some(slash),
            _ => None,
        }
    }

    /// Subformula at an occurrence path.
    pub fn at(&self, id: &OccurrenceId) -> Option<&Formula> {
        let mut node = self;
        for &step in &id.0 {
            node = *node.children().get(step as usize)?;
        }
        Some(node)
    }

    pub fn has_chance(&self) -> bool {
        match self {
            Formula::ChanceOr { .. } | Formula::Chance { .. } => true,
            other => other.children().into_iter().any(Formula::has_chance),
        }
    }

    /// True when no connective or quantifier carries a nonempty slash set.
    pub fn is_slash_free(&self) -> bool {
        self.slash().is_none_or(|w| w.is_empty())
            && self.children().into_iter().all(Formula::is_slash_free)
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::node_count)
            .sum::<usize>()
    }

    pub fn literals(&self) -> Vec<&Literal> {
        let mut out = Vec::new();
        self.visit(&mut |f| {
            if let Formula::Lit(l) = f {
                out.push(l);
            }
        });
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        for child in self.children() {
            child.visit(f);
        }
    }
}

/// The negation-normal-form dual of `phi`.
///
/// Chance nodes are self-dual: Nature's moves are kept and only the
/// children are negated.
pub fn negate(phi: &Formula) -> Formula {
    match phi {
        Formula::Lit(l) => Formula::Lit(l.flip()),
        Formula::Or { left, right, slash } => {
            Formula::and(negate(left), negate(right), slash.clone())
        }
        Formula::And { left, right, slash } => {
            Formula::or(negate(left), negate(right), slash.clone())
        }
        Formula::Exists { var, slash, body } => Formula::forall(var, slash.clone(), negate(body)),
        Formula::Forall { var, slash, body } => Formula::exists(var, slash.clone(), negate(body)),
        Formula::ChanceOr { left, right } => Formula::chance_or(negate(left), negate(right)),
        Formula::Chance { var, body } => Formula::chance(var, negate(body)),
    }
}

/// `phi -> psi`, i.e. the unslashed disjunction of `negate(phi)` and `psi`.
pub fn implies(phi: &Formula, psi: &Formula) -> Formula {
    Formula::or(negate(phi), psi.clone(), SlashSet::new())
}

/// Free variables, counting every slash-set variable as free where it occurs.
pub fn free_variables(phi: &Formula) -> BTreeSet<String> {
    match phi {
        Formula::Lit(l) => l.variables(),
        Formula::Or { left, right, slash } | Formula::And { left, right, slash } => {
            let mut out = free_variables(left);
            out.extend(free_variables(right));
            out.extend(slash.iter().cloned());
            out
        }
        Formula::ChanceOr { left, right } => {
            let mut out = free_variables(left);
            out.extend(free_variables(right));
            out
        }
        Formula::Exists { var, slash, body } | Formula::Forall { var, slash, body } => {
            let mut out = free_variables(body);
            out.remove(var);
            out.extend(slash.iter().cloned());
            out
        }
        Formula::Chance { var, body } => {
            let mut out = free_variables(body);
            out.remove(var);
            out
        }
    }
}

pub fn is_sentence(phi: &Formula) -> bool {
    free_variables(phi).is_empty()
}

/// Preorder list of every subformula occurrence.
pub fn occurrences(phi: &Formula) -> Vec<(OccurrenceId, NodeKind)> {
    fn walk(f: &Formula, id: OccurrenceId, out: &mut Vec<(OccurrenceId, NodeKind)>) {
        out.push((id.clone(), f.kind()));
        for (i, child) in f.children().into_iter().enumerate() {
            walk(child, id.child(i as u8), out);
        }
    }
    let mut out = Vec::new();
    walk(phi, OccurrenceId::root(), &mut out);
    out
}
