//! Invention of the predicate library.
//!
//! Clauses are enumerated directly as chains of primitive tests, primitive
//! steps and (optionally) a trailing self-call, then filtered by
//! [`validate_clause`]. Library predicates are either a single non-recursive
//! clause or one base clause followed by one recursive clause.

use std::fmt;

use crate::kernel::{Arity, Callee, Clause, LibraryPredicate, Op, PrimId, PrimitiveDecl, HEAD_IN, HEAD_OUT};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InventConfig {
    pub max_clauses: usize,
    pub max_vars: usize,
    pub max_body: usize,
    pub allow_recursion: bool,
}

impl Default for InventConfig {
    fn default() -> Self {
        InventConfig { max_clauses: 2, max_vars: 3, max_body: 2, allow_recursion: true }
    }
}

impl InventConfig {
    pub fn new(max_clauses: usize, max_vars: usize, max_body: usize) -> Self {
        InventConfig { max_clauses, max_vars, max_body, allow_recursion: true }
    }

    pub fn is_valid(&self) -> bool {
        self.max_clauses >= 1 && self.max_vars >= 2 && self.max_body >= 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rejection {
    /// A body variable shares no path of literals with the head.
    Disconnected,
    /// `A` or `B` does not occur in the body.
    HeadVarUnbound,
    ExceedsVars,
    ExceedsBody,
    /// More than one self-call, or a self-call that is not the last literal.
    SelfCallNotLast,
    /// A self-call not preceded by any state-changing primitive.
    NoProgressBeforeRecursion,
    RecursionDisabled,
    /// The body does not thread the current state from `A` to `B`.
    NotChained,
    /// The same monadic test applied twice in a row to one variable.
    DuplicateTest,
    /// A literal whose argument count does not match its primitive.
    ArityMismatch,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rejection::Disconnected => "disconnected",
            Rejection::HeadVarUnbound => "head-var-unbound",
            Rejection::ExceedsVars => "exceeds-vars",
            Rejection::ExceedsBody => "exceeds-body",
            Rejection::SelfCallNotLast => "self-call-not-last",
            Rejection::NoProgressBeforeRecursion => "no-progress-before-recursion",
            Rejection::RecursionDisabled => "recursion-disabled",
            Rejection::NotChained => "not-chained",
            Rejection::DuplicateTest => "duplicate-test",
            Rejection::ArityMismatch => "arity-mismatch",
        };
        f.write_str(s)
    }
}

pub fn validate_clause(clause: &Clause, prims: &[PrimitiveDecl], cfg: &InventConfig) -> Result<(), Rejection> {
    for lit in &clause.body {
        let expected = match lit.callee {
            Callee::Prim(p) => match prims.get(p.0 as usize) {
                Some(decl) => decl.arity,
                None => return Err(Rejection::ArityMismatch),
            },
            Callee::SelfCall => Arity::Dyadic,
        };
        if lit.args.len() != expected.count() {
            return Err(Rejection::ArityMismatch);
        }
    }
    if clause.body.len() > cfg.max_body {
        return Err(Rejection::ExceedsBody);
    }
    if clause.var_count() > cfg.max_vars {
        return Err(Rejection::ExceedsVars);
    }
    if !is_connected(clause) {
        return Err(Rejection::Disconnected);
    }
    let occurs = |v| clause.body.iter().any(|l| l.args.contains(&v));
    if !occurs(HEAD_IN) || !occurs(HEAD_OUT) {
        return Err(Rejection::HeadVarUnbound);
    }
    let self_calls: Vec<usize> = clause
        .body
        .iter()
        .enumerate()
        .filter(|(_, l)| l.callee == Callee::SelfCall)
        .map(|(i, _)| i)
        .collect();
    if let Some(&pos) = self_calls.first() {
        if self_calls.len() > 1 || pos + 1 != clause.body.len() {
            return Err(Rejection::SelfCallNotLast);
        }
        let progress = clause.body[..pos]
            .iter()
            .any(|l| matches!(l.callee, Callee::Prim(_)) && l.args.len() == 2);
        if !progress {
            return Err(Rejection::NoProgressBeforeRecursion);
        }
        if !cfg.allow_recursion {
            return Err(Rejection::RecursionDisabled);
        }
    }
    let ops = clause.chain_ops().ok_or(Rejection::NotChained)?;
    if ops.windows(2).any(|w| matches!(w, [Op::Test(a), Op::Test(b)] if a == b)) {
        return Err(Rejection::DuplicateTest);
    }
    Ok(())
}

/// Every variable reachable from the head through shared-variable literals.
fn is_connected(clause: &Clause) -> bool {
    let mut reached = [false; 256];
    reached[HEAD_IN as usize] = true;
    reached[HEAD_OUT as usize] = true;
    loop {
        let mut changed = false;
        for lit in &clause.body {
            if lit.args.iter().any(|&v| reached[v as usize]) {
                for &v in &lit.args {
                    if !reached[v as usize] {
                        reached[v as usize] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    clause.body.iter().all(|l| l.args.iter().all(|&v| reached[v as usize]))
}

/// All valid chain clauses, shortest first, then by op order.
pub fn enumerate_clauses(prims: &[PrimitiveDecl], cfg: &InventConfig) -> Vec<Clause> {
    let mut alphabet: Vec<Op> = prims
        .iter()
        .enumerate()
        .map(|(i, p)| match p.arity {
            Arity::Monadic => Op::Test(PrimId(i as u16)),
            Arity::Dyadic => Op::Step(PrimId(i as u16)),
        })
        .collect();
    if cfg.allow_recursion {
        alphabet.push(Op::Recurse);
    }
    alphabet.sort();

    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(cfg.max_body);
    for len in 1..=cfg.max_body {
        extend_sequences(&alphabet, len, &mut seq, &mut |ops| {
            let clause = Clause::from_ops(ops);
            if validate_clause(&clause, prims, cfg).is_ok() {
                out.push(clause);
            }
        });
    }
    out
}

fn extend_sequences(alphabet: &[Op], len: usize, seq: &mut Vec<Op>, emit: &mut impl FnMut(&[Op])) {
    if seq.len() == len {
        emit(seq);
        return;
    }
    for &op in alphabet {
        // self-calls only ever end a clause
        if op == Op::Recurse && seq.len() + 1 != len {
            continue;
        }
        seq.push(op);
        extend_sequences(alphabet, len, seq, emit);
        seq.pop();
    }
}

/// Fresh ids `f0, f1, ...`: single-clause predicates first, then
/// base + recursive pairs grouped by recursive clause.
pub fn enumerate_library(prims: &[PrimitiveDecl], cfg: &InventConfig) -> Vec<LibraryPredicate> {
    let clauses = enumerate_clauses(prims, cfg);
    let (base, recursive): (Vec<_>, Vec<_>) = clauses.into_iter().partition(|c| !c.is_recursive());
    let mut library = Vec::new();
    let mut next_id = 0u32;
    let mut push = |clauses: Vec<Clause>| {
        let pred = LibraryPredicate::new(next_id, clauses).expect("enumerated clauses are chains");
        library.push(pred);
        next_id += 1;
    };
    for b in &base {
        push(vec![b.clone()]);
    }
    if cfg.allow_recursion && cfg.max_clauses >= 2 {
        for r in &recursive {
            for b in &base {
                push(vec![b.clone(), r.clone()]);
            }
        }
    }
    library
}

pub fn render_library(library: &[LibraryPredicate], prims: &[PrimitiveDecl]) -> String {
    library.iter().map(|p| p.render(prims)).collect::<Vec<_>>().join("\n")
}
