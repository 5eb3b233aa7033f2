//! Clauses, library predicates and programs, plus the deterministic evaluator
//! that runs them against a domain's primitives.
//!
//! Every clause the system works with satisfies the *chain* shape: the body
//! threads a single "current" variable from the head input `A` to the head
//! output `B`. Monadic literals test the current variable, dyadic literals
//! consume it and bind a fresh one. Because primitives are deterministic
//! partial functions, the first answer of a top-down, leftmost SLD derivation
//! is obtained by running each clause's body left to right and taking the
//! first clause that succeeds.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;

use crate::losses::LossFunction;

/// Variable index inside a clause. `0` is the head input `A`, `1` the head output `B`.
pub type Var = u8;

pub const HEAD_IN: Var = 0;
pub const HEAD_OUT: Var = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimId(pub u16);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arity {
    Monadic,
    Dyadic,
}

impl Arity {
    pub fn count(self) -> usize {
        match self {
            Arity::Monadic => 1,
            Arity::Dyadic => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimitiveDecl {
    pub name: &'static str,
    pub arity: Arity,
}

impl PrimitiveDecl {
    pub const fn monadic(name: &'static str) -> Self {
        PrimitiveDecl { name, arity: Arity::Monadic }
    }

    pub const fn dyadic(name: &'static str) -> Self {
        PrimitiveDecl { name, arity: Arity::Dyadic }
    }
}

/// Background knowledge: a state type together with its primitive predicates.
///
/// Monadic primitives are state tests; dyadic primitives are deterministic
/// partial state transformers (`None` is failure). Primitive names must be
/// unique across both arities.
pub trait Domain: Send + Sync {
    type State: Clone + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync;

    fn name(&self) -> &'static str;

    fn primitives(&self) -> &[PrimitiveDecl];

    fn test(&self, prim: PrimId, state: &Self::State) -> bool;

    fn step(&self, prim: PrimId, state: &Self::State) -> Option<Self::State>;

    /// Whether `output` counts as reaching `target` for example coverage.
    /// Defaults to full state equality; domains with a cursor compare content only.
    fn satisfies(&self, output: &Self::State, target: &Self::State) -> bool {
        output == target
    }

    /// Canonical byte encoding: equal bytes iff equal states.
    fn encode(&self, state: &Self::State, out: &mut Vec<u8>);

    /// Rough size used to derive the default recursion bound.
    fn state_size(&self, state: &Self::State) -> usize;

    fn domain_loss(&self) -> LossFunction<Self::State>;

    fn parse_state(&self, literal: &serde_json::Value) -> Result<Self::State, StateError>;

    fn state_literal(&self, state: &Self::State) -> serde_json::Value;

    fn prim_id(&self, name: &str) -> Option<PrimId> {
        self.primitives()
            .iter()
            .position(|p| p.name == name)
            .map(|i| PrimId(i as u16))
    }

    fn prim(&self, id: PrimId) -> &PrimitiveDecl {
        &self.primitives()[id.0 as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid {domain} state literal: {reason}")]
pub struct StateError {
    pub domain: &'static str,
    pub reason: String,
}

impl StateError {
    pub fn new(domain: &'static str, reason: impl Into<String>) -> Self {
        StateError { domain, reason: reason.into() }
    }
}

/// Default recursion bound: ten times the largest state involved.
pub fn default_depth_limit<D: Domain>(domain: &D, states: &[&D::State]) -> u32 {
    let size = states.iter().map(|s| domain.state_size(s)).max().unwrap_or(1);
    (10 * size.max(1)) as u32
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Callee {
    Prim(PrimId),
    /// Call to the predicate the clause belongs to (always dyadic).
    SelfCall,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub callee: Callee,
    pub args: Vec<Var>,
}

impl Literal {
    pub fn new(callee: Callee, args: &[Var]) -> Self {
        Literal { callee, args: args.to_vec() }
    }
}

/// One step of a chain clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Test(PrimId),
    Step(PrimId),
    Recurse,
}

/// A definite clause with head `p(A,B)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clause {
    pub body: Vec<Literal>,
}

impl Clause {
    pub fn new(body: Vec<Literal>) -> Self {
        Clause { body }
    }

    /// Builds the canonically named clause for a chain of ops: fresh
    /// variables are `C, D, ...` in order of introduction, and the final
    /// dyadic output is `B`.
    pub fn from_ops(ops: &[Op]) -> Self {
        let dyadic_total = ops.iter().filter(|op| !matches!(op, Op::Test(_))).count();
        let mut body = Vec::with_capacity(ops.len());
        let mut cur = HEAD_IN;
        let mut next_fresh = 2;
        let mut seen_dyadic = 0;
        for op in ops {
            match *op {
                Op::Test(p) => body.push(Literal::new(Callee::Prim(p), &[cur])),
                Op::Step(_) | Op::Recurse => {
                    seen_dyadic += 1;
                    let out = if seen_dyadic == dyadic_total {
                        HEAD_OUT
                    } else {
                        next_fresh += 1;
                        next_fresh - 1
                    };
                    let callee = match *op {
                        Op::Step(p) => Callee::Prim(p),
                        _ => Callee::SelfCall,
                    };
                    body.push(Literal::new(callee, &[cur, out]));
                    cur = out;
                }
            }
        }
        Clause { body }
    }

    /// Distinct variables across head and body.
    pub fn var_count(&self) -> usize {
        let mut seen = [false; 256];
        seen[HEAD_IN as usize] = true;
        seen[HEAD_OUT as usize] = true;
        for lit in &self.body {
            for &v in &lit.args {
                seen[v as usize] = true;
            }
        }
        seen.iter().filter(|s| **s).count()
    }

    pub fn is_recursive(&self) -> bool {
        self.body.iter().any(|l| l.callee == Callee::SelfCall)
    }

    /// The chain ops of this clause, or `None` if it does not thread `A` to `B`.
    pub fn chain_ops(&self) -> Option<Vec<Op>> {
        let mut ops = Vec::with_capacity(self.body.len());
        let mut bound = [false; 256];
        bound[HEAD_IN as usize] = true;
        let mut cur = HEAD_IN;
        for lit in &self.body {
            match (lit.callee, lit.args.as_slice()) {
                (Callee::Prim(p), [v]) if *v == cur => ops.push(Op::Test(p)),
                (callee, [i, o]) if *i == cur && !bound[*o as usize] => {
                    bound[*o as usize] = true;
                    cur = *o;
                    ops.push(match callee {
                        Callee::Prim(p) => Op::Step(p),
                        Callee::SelfCall => Op::Recurse,
                    });
                }
                _ => return None,
            }
        }
        (cur == HEAD_OUT).then_some(ops)
    }
}

/// An invented predicate: an ordered set of clauses sharing one symbol.
/// Non-recursive clauses come first.
#[derive(Clone, Debug)]
pub struct LibraryPredicate {
    pub id: u32,
    clauses: Vec<Clause>,
    compiled: Vec<Vec<Op>>,
}

impl PartialEq for LibraryPredicate {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id && self.clauses == other.clauses
    }
}

impl Eq for LibraryPredicate {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PredicateError {
    #[error("clause {0} is not a chain clause")]
    NotChained(usize),
    #[error("recursive predicate has no base clause")]
    NoBaseClause,
    #[error("predicate has no clauses")]
    Empty,
}

impl LibraryPredicate {
    /// Builds a predicate from chain clauses. Clauses are reordered so that
    /// base clauses precede recursive ones (stable within each group).
    pub fn new(id: u32, clauses: Vec<Clause>) -> Result<Self, PredicateError> {
        if clauses.is_empty() {
            return Err(PredicateError::Empty);
        }
        let (mut ordered, recursive): (Vec<_>, Vec<_>) =
            clauses.into_iter().partition(|c| !c.is_recursive());
        if ordered.is_empty() {
            return Err(PredicateError::NoBaseClause);
        }
        ordered.extend(recursive);
        let compiled = ordered
            .iter()
            .enumerate()
            .map(|(i, c)| c.chain_ops().ok_or(PredicateError::NotChained(i)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LibraryPredicate { id, clauses: ordered, compiled })
    }

    pub fn from_ops(id: u32, clauses: &[&[Op]]) -> Result<Self, PredicateError> {
        Self::new(id, clauses.iter().map(|ops| Clause::from_ops(ops)).collect())
    }

    pub fn name(&self) -> String {
        format!("f{}", self.id)
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn ops(&self) -> &[Vec<Op>] {
        &self.compiled
    }

    pub fn is_recursive(&self) -> bool {
        self.clauses.iter().any(Clause::is_recursive)
    }

    /// Atoms across all clauses, counting each head.
    pub fn literal_count(&self) -> usize {
        self.clauses.iter().map(|c| 1 + c.body.len()).sum()
    }

    pub fn render(&self, prims: &[PrimitiveDecl]) -> String {
        let name = self.name();
        let mut out = String::new();
        for clause in &self.clauses {
            out.push_str(&render_clause(&name, clause, |callee| match callee {
                Callee::Prim(p) => prims[p.0 as usize].name.to_string(),
                Callee::SelfCall => name.clone(),
            }));
            out.push('\n');
        }
        out
    }
}

/// `A`..`Z`, then `A1`, `B1`, ...
pub fn var_name(v: usize) -> String {
    let letter = (b'A' + (v % 26) as u8) as char;
    match v / 26 {
        0 => letter.to_string(),
        n => format!("{letter}{n}"),
    }
}

fn render_clause(head: &str, clause: &Clause, callee_name: impl Fn(Callee) -> String) -> String {
    let mut s = format!("{head}(A,B)");
    if !clause.body.is_empty() {
        s.push_str(":-");
        let lits: Vec<String> = clause
            .body
            .iter()
            .map(|l| {
                let args: Vec<String> = l.args.iter().map(|&v| var_name(v as usize)).collect();
                format!("{}({})", callee_name(l.callee), args.join(","))
            })
            .collect();
        s.push_str(&lits.join(","));
    }
    s.push('.');
    s
}

/// Runs `pred` on `input`: the output of the first clause whose body
/// succeeds, threading the state left to right. Self-calls consume one unit
/// of `depth`; at depth zero the call fails.
pub fn apply_predicate<D: Domain>(
    domain: &D,
    pred: &LibraryPredicate,
    input: &D::State,
    depth: u32,
) -> Option<D::State> {
    if depth == 0 {
        return None;
    }
    'clauses: for ops in &pred.compiled {
        let mut owned: Option<D::State> = None;
        for op in ops {
            let cur = owned.as_ref().unwrap_or(input);
            match *op {
                Op::Test(p) => {
                    if !domain.test(p, cur) {
                        continue 'clauses;
                    }
                }
                Op::Step(p) => match domain.step(p, cur) {
                    Some(next) => owned = Some(next),
                    None => continue 'clauses,
                },
                Op::Recurse => match apply_predicate(domain, pred, cur, depth - 1) {
                    Some(next) => owned = Some(next),
                    None => continue 'clauses,
                },
            }
        }
        return Some(owned.unwrap_or_else(|| input.clone()));
    }
    None
}

/// Ordered `(current, target)` pairs. Targets never change during search.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Specification<S> {
    pub pairs: Vec<(S, S)>,
}

impl<S: Clone> Specification<S> {
    pub fn new(pairs: Vec<(S, S)>) -> Self {
        Specification { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Applies `pred` to every pair's current state. All or nothing: a failure
/// on any pair makes the whole application absent.
pub fn apply_to_spec<D: Domain>(
    domain: &D,
    pred: &LibraryPredicate,
    spec: &Specification<D::State>,
    depth: u32,
) -> Option<Specification<D::State>> {
    spec.pairs
        .iter()
        .map(|(x, y)| apply_predicate(domain, pred, x, depth).map(|z| (z, y.clone())))
        .collect::<Option<Vec<_>>>()
        .map(Specification::new)
}

/// A learned program: a target clause chaining library predicates, plus the
/// definitions it uses (each once).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Program {
    pub target: Vec<u32>,
    pub definitions: BTreeMap<u32, LibraryPredicate>,
}

impl Program {
    pub fn identity() -> Self {
        Program { target: Vec::new(), definitions: BTreeMap::new() }
    }

    /// Target clause `f(S1,Sm+1) :- p1(S1,S2), ..., pm(Sm,Sm+1)` over the
    /// given predicate sequence.
    pub fn induce<'a>(sequence: impl IntoIterator<Item = &'a LibraryPredicate>) -> Self {
        let mut target = Vec::new();
        let mut definitions = BTreeMap::new();
        for pred in sequence {
            target.push(pred.id);
            definitions.entry(pred.id).or_insert_with(|| pred.clone());
        }
        Program { target, definitions }
    }

    pub fn is_well_formed(&self) -> bool {
        self.target.iter().all(|id| self.definitions.contains_key(id))
    }

    /// `(clauses, literals)`: one target clause plus every definition clause;
    /// literals count head atoms and body atoms.
    pub fn size(&self) -> (usize, usize) {
        let clauses = 1 + self.definitions.values().map(|p| p.clauses.len()).sum::<usize>();
        let literals = 1
            + self.target.len()
            + self.definitions.values().map(LibraryPredicate::literal_count).sum::<usize>();
        (clauses, literals)
    }

    pub fn run<D: Domain>(&self, domain: &D, input: &D::State, depth: u32) -> Option<D::State> {
        self.trace(domain, input, depth).map(|mut states| states.pop().unwrap())
    }

    /// Every intermediate state, starting with `input`.
    pub fn trace<D: Domain>(
        &self,
        domain: &D,
        input: &D::State,
        depth: u32,
    ) -> Option<Vec<D::State>> {
        let mut states = vec![input.clone()];
        for id in &self.target {
            let pred = &self.definitions[id];
            let next = apply_predicate(domain, pred, states.last().unwrap(), depth)?;
            states.push(next);
        }
        Some(states)
    }

    pub fn render(&self, prims: &[PrimitiveDecl]) -> String {
        let mut out = String::new();
        if self.target.is_empty() {
            out.push_str("f(A,A).\n");
        } else {
            let m = self.target.len();
            // S1 = A, Sm+1 = B, the rest C, D, ...
            let stage_var = |i: usize| match i {
                0 => var_name(0),
                i if i == m => var_name(1),
                i => var_name(i + 1),
            };
            let lits: Vec<String> = self
                .target
                .iter()
                .enumerate()
                .map(|(i, id)| format!("f{}({},{})", id, stage_var(i), stage_var(i + 1)))
                .collect();
            out.push_str(&format!("f(A,B):-{}.\n", lits.join(",")));
        }
        for pred in self.definitions.values() {
            out.push_str(&pred.render(prims));
        }
        out
    }
}
