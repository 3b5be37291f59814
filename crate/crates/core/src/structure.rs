//! Finite first-order structures, variable assignments and literal evaluation.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::formula::{Atom, ChainOp, Formula, Literal, Term};

/// Index of a universe element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub arity: usize,
    pub tuples: HashSet<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Function {
    pub arity: usize,
    pub table: HashMap<Vec<Elem>, Elem>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Structure {
    universe: Vec<String>,
    index: HashMap<String, Elem>,
    relations: BTreeMap<String, Relation>,
    constants: BTreeMap<String, Elem>,
    functions: BTreeMap<String, Function>,
}

impl Structure {
    pub fn new<S: AsRef<str>>(universe: &[S]) -> Result<Self> {
        let mut m = Structure::default();
        for name in universe {
            let name = name.as_ref();
            if m.index.contains_key(name) {
                return Err(Error::Structure(format!(
                    "duplicate universe element `{name}`"
                )));
            }
            m.index
                .insert(name.to_string(), Elem(m.universe.len() as u32));
            m.universe.push(name.to_string());
        }
        if m.universe.is_empty() {
            return Err(Error::Structure("empty universe".into()));
        }
        Ok(m)
    }

    /// The structure `{1, ..., n}` with no relations.
    pub fn numbered(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        Structure::new(&names).expect("nonempty distinct names")
    }

    pub fn size(&self) -> usize {
        self.universe.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.universe.len() as u32).map(Elem)
    }

    pub fn element(&self, name: &str) -> Option<Elem> {
        self.index.get(name).copied()
    }

    pub fn name(&self, e: Elem) -> &str {
        &self.universe[e.index()]
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn relations(&self) -> &BTreeMap<String, Relation> {
        &self.relations
    }

    pub fn constants(&self) -> &BTreeMap<String, Elem> {
        &self.constants
    }

    pub fn functions(&self) -> &BTreeMap<String, Function> {
        &self.functions
    }

    fn lookup(&self, name: &str) -> Result<Elem> {
        self.element(name)
            .ok_or_else(|| Error::Structure(format!("unknown element `{name}`")))
    }

    fn lookup_tuple<S: AsRef<str>>(&self, tuple: &[S]) -> Result<Vec<Elem>> {
        tuple.iter().map(|n| self.lookup(n.as_ref())).collect()
    }

    /// Adds tuples to relation `name`, declaring it on first use.
    pub fn add_relation<S: AsRef<str>>(
        &mut self,
        name: &str,
        arity: usize,
        tuples: &[Vec<S>],
    ) -> Result<()> {
        let mut rows = Vec::with_capacity(tuples.len());
        for t in tuples {
            if t.len() != arity {
                return Err(Error::Structure(format!(
                    "relation `{name}` has arity {arity} but a tuple has {} components",
                    t.len()
                )));
            }
            rows.push(self.lookup_tuple(t)?);
        }
        let rel = self
            .relations
            .entry(name.to_string())
            .or_insert_with(|| Relation {
                arity,
                tuples: HashSet::new(),
            });
        if rel.arity != arity {
            return Err(Error::Structure(format!(
                "relation `{name}` declared with arities {} and {arity}",
                rel.arity
            )));
        }
        rel.tuples.extend(rows);
        Ok(())
    }

    pub fn add_constant(&mut self, name: &str, value: &str) -> Result<()> {
        let e = self.lookup(value)?;
        if self.constants.insert(name.to_string(), e).is_some() {
            return Err(Error::Structure(format!("constant `{name}` defined twice")));
        }
        Ok(())
    }

    /// Adds a function from its full graph; it must be total on universe^arity.
    pub fn add_function<S: AsRef<str>>(
        &mut self,
        name: &str,
        arity: usize,
        graph: &[(Vec<S>, S)],
    ) -> Result<()> {
        if self.functions.contains_key(name) {
            return Err(Error::Structure(format!("function `{name}` defined twice")));
        }
        let mut table = HashMap::new();
        for (args, value) in graph {
            if args.len() != arity {
                return Err(Error::Structure(format!(
                    "function `{name}` has arity {arity} but an entry has {} arguments",
                    args.len()
                )));
            }
            let args = self.lookup_tuple(args)?;
            let value = self.lookup(value.as_ref())?;
            if table.insert(args, value).is_some() {
                return Err(Error::Structure(format!(
                    "function `{name}` defined twice at the same arguments"
                )));
            }
        }
        let expected = self.size().checked_pow(arity as u32).unwrap_or(usize::MAX);
        if table.len() != expected {
            return Err(Error::Structure(format!(
                "function `{name}` is not total: {} of {expected} argument tuples defined",
                table.len()
            )));
        }
        self.functions
            .insert(name.to_string(), Function { arity, table });
        Ok(())
    }

    /// Resolves a constant term: a declared constant, else a universe element name.
    pub fn resolve_constant(&self, name: &str) -> Option<Elem> {
        self.constants
            .get(name)
            .copied()
            .or_else(|| self.element(name))
    }

    pub fn eval_term(&self, s: &Assignment, t: &Term) -> Result<Elem> {
        match t {
            Term::Var(v) => s.get(v).ok_or_else(|| Error::UnboundVariable(v.clone())),
            Term::Const(c) => self
                .resolve_constant(c)
                .ok_or_else(|| Error::UnknownSymbol(c.clone())),
            Term::App(f, args) => {
                let fun = self
                    .functions
                    .get(f)
                    .ok_or_else(|| Error::UnknownSymbol(f.clone()))?;
                if fun.arity != args.len() {
                    return Err(Error::UnknownSymbol(format!("{f}/{}", args.len())));
                }
                let vals = args
                    .iter()
                    .map(|a| self.eval_term(s, a))
                    .collect::<Result<Vec<_>>>()?;
                Ok(fun.table[&vals])
            }
        }
    }

    pub fn eval_atom(&self, s: &Assignment, atom: &Atom) -> Result<bool> {
        match atom {
            Atom::Falsum => Ok(false),
            Atom::Eq(a, b) => Ok(self.eval_term(s, a)? == self.eval_term(s, b)?),
            Atom::Chain { terms, ops } => {
                let vals = terms
                    .iter()
                    .map(|t| self.eval_term(s, t))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ops.iter().enumerate().all(|(i, op)| match op {
                    ChainOp::Eq => vals[i] == vals[i + 1],
                    ChainOp::Ne => vals[i] != vals[i + 1],
                }))
            }
            Atom::Rel { name, args } => {
                let rel = self
                    .relations
                    .get(name)
                    .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                if rel.arity != args.len() {
                    return Err(Error::UnknownSymbol(format!("{name}/{}", args.len())));
                }
                let vals = args
                    .iter()
                    .map(|t| self.eval_term(s, t))
                    .collect::<Result<Vec<_>>>()?;
                Ok(rel.tuples.contains(&vals))
            }
        }
    }
}

/// Classical truth of a literal under an assignment.
pub fn eval_literal(m: &Structure, s: &Assignment, lit: &Literal) -> Result<bool> {
    Ok(m.eval_atom(s, &lit.atom)? == lit.positive)
}

/// Checks that every symbol of `phi` is interpreted by `m` with the right
/// arity; on failure the message names the first offending symbol.
pub fn suitable(m: &Structure, phi: &Formula) -> Result<(), String> {
    fn check_term(m: &Structure, t: &Term) -> Result<(), String> {
        match t {
            Term::Var(_) => Ok(()),
            Term::Const(c) => match m.resolve_constant(c) {
                Some(_) => Ok(()),
                None => Err(format!("constant `{c}` is not interpreted")),
            },
            Term::App(f, args) => {
                match m.functions.get(f) {
                    None => return Err(format!("function `{f}` is not interpreted")),
                    Some(fun) if fun.arity != args.len() => {
                        return Err(format!(
                            "function `{f}` has arity {} but is applied to {} arguments",
                            fun.arity,
                            args.len()
                        ))
                    }
                    Some(_) => {}
                }
                args.iter().try_for_each(|a| check_term(m, a))
            }
        }
    }
    for lit in phi.literals() {
        if let Atom::Rel { name, args } = &lit.atom {
            match m.relations.get(name) {
                None => return Err(format!("relation `{name}` is not interpreted")),
                Some(rel) if rel.arity != args.len() => {
                    return Err(format!(
                        "relation `{name}` has arity {} but is applied to {} arguments",
                        rel.arity,
                        args.len()
                    ))
                }
                Some(_) => {}
            }
        }
        for t in lit.atom.terms() {
            check_term(m, t)?;
        }
    }
    Ok(())
}

#[derive(Debug)]
struct Binding {
    var: Arc<str>,
    value: Elem,
    prev: Option<Arc<Binding>>,
}

/// A persistent assignment: a shared list of bindings, newest first. A later
/// binding of a variable masks earlier ones, which stay visible to
/// [`Assignment::binding`].
#[derive(Debug, Clone, Default)]
pub struct Assignment {
    head: Option<Arc<Binding>>,
}

impl Assignment {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn bind(&self, var: &str, value: Elem) -> Self {
        Assignment {
            head: Some(Arc::new(Binding {
                var: Arc::from(var),
                value,
                prev: self.head.clone(),
            })),
        }
    }

    fn iter(&self) -> impl Iterator<Item = &Binding> {
        std::iter::successors(self.head.as_deref(), |b| b.prev.as_deref())
    }

    pub fn get(&self, var: &str) -> Option<Elem> {
        self.iter().find(|b| &*b.var == var).map(|b| b.value)
    }

    /// Every binding in the order it was made, including masked ones.
    pub fn history(&self) -> Vec<(&str, Elem)> {
        let mut out: Vec<_> = self.iter().map(|b| (&*b.var, b.value)).collect();
        out.reverse();
        out
    }

    /// Value given to `var` by its `k`-th binding (1-based).
    pub fn binding(&self, var: &str, k: usize) -> Option<Elem> {
        if k == 0 {
            return None;
        }
        self.history()
            .into_iter()
            .filter(|(v, _)| *v == var)
            .nth(k - 1)
            .map(|(_, e)| e)
    }

    /// Current values, in order of each variable's first binding.
    pub fn current(&self) -> Vec<(&str, Elem)> {
        let mut out: Vec<(&str, Elem)> = Vec::new();
        for (var, value) in self.history() {
            match out.iter_mut().find(|(v, _)| *v == var) {
                Some(slot) => slot.1 = value,
                None => out.push((var, value)),
            }
        }
        out
    }

    pub fn to_map(&self) -> BTreeMap<String, Elem> {
        self.current()
            .into_iter()
            .map(|(v, e)| (v.to_string(), e))
            .collect()
    }

    pub fn display(&self, m: &Structure) -> String {
        let parts: Vec<String> = self
            .current()
            .into_iter()
            .map(|(v, e)| format!("{v}={}", m.name(e)))
            .collect();
        parts.join(",")
    }
}

impl PartialEq for Assignment {
    fn eq(&self, other: &Self) -> bool {
        self.to_map() == other.to_map()
    }
}

impl Eq for Assignment {}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
