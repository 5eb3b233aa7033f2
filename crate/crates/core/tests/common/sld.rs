//! A general SLD-resolution interpreter over the clauses' variables, and
//! random small libraries for the `Counter` domain.

use std::collections::HashMap;

use brute::kernel::{apply_predicate, Callee, Domain, LibraryPredicate, Op, PrimId, Var, HEAD_IN, HEAD_OUT};
use proptest::prelude::*;

use super::{Counter, COUNTER_MAX};

type Env = HashMap<Var, u32>;

/// Every answer for `pred(input, B)` in SLD order, within `depth` nested calls.
pub fn sld_answers(d: &Counter, pred: &LibraryPredicate, input: u32, depth: u32) -> Vec<u32> {
    if depth == 0 {
        return Vec::new();
    }
    let mut answers = Vec::new();
    for clause in pred.clauses() {
        let mut env = Env::new();
        env.insert(HEAD_IN, input);
        let mut envs = vec![env];
        for lit in &clause.body {
            let mut next = Vec::new();
            for env in envs {
                let bind = |env: &Env, var: Var, value: u32, next: &mut Vec<Env>| match env.get(&var) {
                    Some(&bound) if bound != value => {}
                    _ => {
                        let mut e = env.clone();
                        e.insert(var, value);
                        next.push(e);
                    }
                };
                match (lit.callee, lit.args.as_slice()) {
                    (Callee::Prim(p), [x]) => {
                        if env.get(x).is_some_and(|v| d.test(p, v)) {
                            next.push(env);
                        }
                    }
                    (Callee::Prim(p), [x, y]) => {
                        if let Some(out) = env.get(x).and_then(|v| d.step(p, v)) {
                            bind(&env, *y, out, &mut next);
                        }
                    }
                    (Callee::SelfCall, [x, y]) => {
                        if let Some(&v) = env.get(x) {
                            for out in sld_answers(d, pred, v, depth - 1) {
                                bind(&env, *y, out, &mut next);
                            }
                        }
                    }
                    _ => panic!("malformed literal"),
                }
            }
            envs = next;
        }
        answers.extend(envs.iter().filter_map(|env| env.get(&HEAD_OUT).copied()));
    }
    answers
}

fn op_strategy(allow_recurse: bool) -> impl Strategy<Value = Op> {
    let step = (0u16..3).prop_map(|p| Op::Step(PrimId(p)));
    let test = (3u16..5).prop_map(|p| Op::Test(PrimId(p)));
    if allow_recurse {
        prop_oneof![3 => step, 2 => test, 2 => Just(Op::Recurse)].boxed()
    } else {
        prop_oneof![3 => step, 2 => test].boxed()
    }
}

/// A chain of up to four ops with at least one dyadic op and any self-call last.
fn chain(recursive: bool) -> impl Strategy<Value = Vec<Op>> {
    (prop::collection::vec(op_strategy(false), 0..4), op_strategy(false)).prop_map(move |(mut ops, last)| {
        if recursive {
            if !ops.iter().any(|o| matches!(o, Op::Step(_))) {
                ops.push(Op::Step(PrimId(1)));
            }
            ops.push(Op::Recurse);
        } else if ops.iter().all(|o| matches!(o, Op::Test(_))) {
            ops.push(match last {
                Op::Test(_) => Op::Step(PrimId(0)),
                other => other,
            });
        }
        ops
    })
}

fn predicate(id: u32) -> impl Strategy<Value = LibraryPredicate> {
    prop_oneof![
        chain(false).prop_map(move |a| LibraryPredicate::from_ops(id, &[&a]).unwrap()),
        (chain(false), chain(true)).prop_map(move |(b, r)| LibraryPredicate::from_ops(id, &[&r, &b]).unwrap()),
        (chain(false), chain(false), chain(true))
            .prop_map(move |(b1, b2, r)| LibraryPredicate::from_ops(id, &[&b1, &r, &b2]).unwrap()),
    ]
}

pub fn library() -> impl Strategy<Value = Vec<LibraryPredicate>> {
    (predicate(0), predicate(1), predicate(2)).prop_map(|(a, b, c)| vec![a, b, c])
}

/// First mismatch between the evaluator and the first SLD answer.
pub fn first_answer_mismatch(lib: &[LibraryPredicate]) -> Option<String> {
    let d = Counter;
    for pred in lib {
        for input in 0..=COUNTER_MAX {
            for depth in [0, 1, 2, 5, 40] {
                let oracle = sld_answers(&d, pred, input, depth).first().copied();
                let got = apply_predicate(&d, pred, &input, depth);
                if got != oracle {
                    return Some(format!("{:?} on {input} at depth {depth}: {got:?} vs {oracle:?}", pred.ops()));
                }
            }
        }
    }
    None
}
