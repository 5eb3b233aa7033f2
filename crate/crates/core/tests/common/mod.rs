#![allow(dead_code)]

use brute::kernel::{Domain, PrimId, PrimitiveDecl, StateError};
use brute::losses::{self, LossFunction};
use serde_json::Value;

pub const COUNTER_MAX: u32 = 30;

const PRIMS: [PrimitiveDecl; 5] = [
    PrimitiveDecl::dyadic("inc"),
    PrimitiveDecl::dyadic("dec"),
    PrimitiveDecl::dyadic("half"),
    PrimitiveDecl::monadic("is_even"),
    PrimitiveDecl::monadic("is_zero"),
];

/// Counter in `0..=COUNTER_MAX` with tests, for exercising the evaluator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Counter;

impl Domain for Counter {
    type State = u32;

    fn name(&self) -> &'static str {
        "counter"
    }

    fn primitives(&self) -> &[PrimitiveDecl] {
        &PRIMS
    }

    fn test(&self, prim: PrimId, s: &u32) -> bool {
        match prim.0 {
            3 => s % 2 == 0,
            4 => *s == 0,
            _ => unreachable!(),
        }
    }

    fn step(&self, prim: PrimId, s: &u32) -> Option<u32> {
        match prim.0 {
            0 => (*s < COUNTER_MAX).then_some(s + 1),
            1 => s.checked_sub(1),
            2 => (s % 2 == 0).then_some(s / 2),
            _ => unreachable!(),
        }
    }

    fn encode(&self, s: &u32, out: &mut Vec<u8>) {
        out.extend_from_slice(&s.to_le_bytes());
    }

    fn state_size(&self, _: &u32) -> usize {
        COUNTER_MAX as usize
    }

    fn domain_loss(&self) -> LossFunction<u32> {
        losses::abs_diff()
    }

    fn parse_state(&self, v: &Value) -> Result<u32, StateError> {
        v.as_u64().map(|x| x as u32).ok_or_else(|| StateError::new("counter", "not a number"))
    }

    fn state_literal(&self, s: &u32) -> Value {
        Value::from(*s)
    }
}

use brute::domains::StringDomain;
use brute::kernel::{LibraryPredicate, Op, Program};

pub const LIPS_INPUT: &str = "16,079 inferences, 0.003 CPU in 0.003 seconds (95% CPU, 5842660 Lips)";

pub const LIPS_TRACE: [&str; 6] = [
    "PU in 0.003 seconds (95% CPU, 5842660 Lips)",
    ".003 seconds (95% CPU, 5842660 Lips)",
    "PU, 5842660 Lips)",
    "5842660 Lips)",
    "5842660 Lips",
    "5842660",
];

fn string_op(name: &str) -> Op {
    let d = StringDomain;
    let id = d.prim_id(name).unwrap();
    match d.prim(id).arity {
        brute::kernel::Arity::Monadic => Op::Test(id),
        brute::kernel::Arity::Dyadic => Op::Step(id),
    }
}

fn string_pred(id: u32, clauses: &[&[&str]]) -> LibraryPredicate {
    let ops: Vec<Vec<Op>> = clauses
        .iter()
        .map(|c| c.iter().map(|n| if *n == "self" { Op::Recurse } else { string_op(n) }).collect())
        .collect();
    let refs: Vec<&[Op]> = ops.iter().map(Vec::as_slice).collect();
    LibraryPredicate::from_ops(id, &refs).unwrap()
}

/// The four recursive predicates and target clause learned for the Lips task.
pub fn lips_program() -> Program {
    let f0 = string_pred(0, &[&["is_uppercase", "drop"], &["drop", "self"]]);
    let f1 = string_pred(1, &[&["is_number", "drop"], &["drop", "self"]]);
    let f2 = string_pred(2, &[&["is_space", "drop"], &["drop", "self"]]);
    let f3 = string_pred(3, &[&["at_end", "drop"], &["right", "self"]]);
    Program::induce([&f0, &f1, &f0, &f2, &f3, &f2])
}

/// A five-stage month-abbreviation program built from predicates of the
/// default library.
pub fn month_program() -> Program {
    let upper_first_letter = string_pred(0, &[&["is_letter", "mk_uppercase"], &["drop", "self"]]);
    let upper_next = string_pred(1, &[&["right", "mk_uppercase"]]);
    let drop_next = string_pred(2, &[&["right", "drop"]]);
    let drop_rest = string_pred(3, &[&["at_end", "drop"], &["drop", "self"]]);
    Program::induce([&upper_first_letter, &upper_next, &upper_next, &drop_next, &drop_rest])
}

pub const IJCAI_PIXELS: [&str; 5] = [
    "11100110011001001110",
    "01000010100010100100",
    "01000010100011100100",
    "01001010100010100100",
    "11100100011010101110",
];

pub mod clauses;
pub mod dedup;
pub mod metric;
pub mod sld;
