//! Brute-force clause oracle: every literal sequence over every variable
//! assignment, filtered by an independent restatement of the language bias,
//! then canonically renamed.

use std::collections::{BTreeSet, HashSet};

use brute::invent::{enumerate_clauses, validate_clause, InventConfig};
use brute::kernel::{Arity, Callee, Clause, Literal, PrimId, PrimitiveDecl, Var, HEAD_IN, HEAD_OUT};

pub const PRIMS: [PrimitiveDecl; 2] = [PrimitiveDecl::dyadic("step"), PrimitiveDecl::monadic("check")];

fn all_literals(n_vars: Var) -> Vec<Literal> {
    let mut out = Vec::new();
    for x in 0..n_vars {
        out.push(Literal::new(Callee::Prim(PrimId(1)), &[x]));
        for y in 0..n_vars {
            out.push(Literal::new(Callee::Prim(PrimId(0)), &[x, y]));
            out.push(Literal::new(Callee::SelfCall, &[x, y]));
        }
    }
    out
}

fn admissible(body: &[Literal], cfg: &InventConfig) -> bool {
    let vars: BTreeSet<Var> = body.iter().flat_map(|l| l.args.iter().copied()).chain([HEAD_IN, HEAD_OUT]).collect();
    if body.len() > cfg.max_body || vars.len() > cfg.max_vars {
        return false;
    }
    let mentions = |v: Var| body.iter().any(|l| l.args.contains(&v));
    if !mentions(HEAD_IN) || !mentions(HEAD_OUT) {
        return false;
    }
    let self_calls: Vec<usize> = (0..body.len()).filter(|&i| body[i].callee == Callee::SelfCall).collect();
    match self_calls.as_slice() {
        [] => {}
        [i] if *i == body.len() - 1 && cfg.allow_recursion => {
            let has_step = body[..*i].iter().any(|l| l.callee == Callee::Prim(PrimId(0)));
            if !has_step {
                return false;
            }
        }
        _ => return false,
    }
    // the body must thread A to B through fresh variables
    let mut current = HEAD_IN;
    let mut used: BTreeSet<Var> = BTreeSet::from([HEAD_IN]);
    let mut last_test: Option<Var> = None;
    for lit in body {
        match lit.args.as_slice() {
            [x] => {
                if *x != current || last_test == Some(*x) {
                    return false;
                }
                last_test = Some(*x);
            }
            [x, y] => {
                if *x != current || !used.insert(*y) {
                    return false;
                }
                current = *y;
                last_test = None;
            }
            _ => unreachable!(),
        }
    }
    current == HEAD_OUT
}

fn canonical(body: &[Literal]) -> Vec<Literal> {
    let mut names: Vec<(Var, Var)> = vec![(HEAD_IN, HEAD_IN), (HEAD_OUT, HEAD_OUT)];
    let mut next = 2;
    body.iter()
        .map(|l| {
            let args: Vec<Var> = l
                .args
                .iter()
                .map(|v| match names.iter().find(|(from, _)| from == v) {
                    Some((_, to)) => *to,
                    None => {
                        names.push((*v, next));
                        next += 1;
                        next - 1
                    }
                })
                .collect();
            Literal::new(l.callee, &args)
        })
        .collect()
}

/// `slack` extra body positions and variables beyond the limits are tried
/// too, so that over-long clauses are seen and rejected.
pub fn check(cfg: InventConfig, slack: usize) -> Result<usize, String> {
    let lits = all_literals((cfg.max_vars + slack) as Var);
    let mut oracle = HashSet::new();
    let mut bodies: Vec<Vec<Literal>> = vec![Vec::new()];
    for _ in 0..cfg.max_body + slack {
        let mut longer = Vec::new();
        for body in &bodies {
            for lit in &lits {
                let mut b = body.clone();
                b.push(lit.clone());
                longer.push(b);
            }
        }
        for body in &longer {
            let ok = admissible(body, &cfg);
            let arity_ok = body.iter().all(|l| match l.callee {
                Callee::Prim(p) => PRIMS[p.0 as usize].arity.count() == l.args.len(),
                Callee::SelfCall => l.args.len() == Arity::Dyadic.count(),
            });
            assert!(arity_ok);
            if validate_clause(&Clause::new(body.clone()), &PRIMS, &cfg).is_ok() != ok {
                return Err(format!("validator and oracle disagree on {body:?}"));
            }
            if ok {
                oracle.insert(canonical(body));
            }
        }
        bodies = longer;
    }
    let enumerated: HashSet<Vec<Literal>> = enumerate_clauses(&PRIMS, &cfg).into_iter().map(|c| c.body).collect();
    if enumerate_clauses(&PRIMS, &cfg).len() != enumerated.len() {
        return Err("duplicates in enumeration".into());
    }
    if enumerated != oracle {
        return Err(format!("{} enumerated vs {} admissible clauses", enumerated.len(), oracle.len()));
    }
    Ok(oracle.len())
}
