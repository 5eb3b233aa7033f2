//! Bounded natural numbers with `succ` and `double`.

use serde_json::Value;

use crate::kernel::{Domain, PrimId, PrimitiveDecl, StateError};
use crate::losses::{self, LossFunction};

pub const DEFAULT_MAX: u32 = 100;

const PRIMITIVES: [PrimitiveDecl; 2] = [PrimitiveDecl::dyadic("succ"), PrimitiveDecl::dyadic("double")];

const SUCC: u16 = 0;
const DOUBLE: u16 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntDomain {
    pub max: u32,
}

impl IntDomain {
    pub fn new(max: u32) -> Self {
        IntDomain { max }
    }
}

impl Default for IntDomain {
    fn default() -> Self {
        IntDomain::new(DEFAULT_MAX)
    }
}

impl Domain for IntDomain {
    type State = u32;

    fn name(&self) -> &'static str {
        "int"
    }

    fn primitives(&self) -> &[PrimitiveDecl] {
        &PRIMITIVES
    }

    fn test(&self, prim: PrimId, _: &u32) -> bool {
        unreachable!("int domain has no monadic primitive {prim:?}")
    }

    fn step(&self, prim: PrimId, v: &u32) -> Option<u32> {
        let next = match prim.0 {
            SUCC => v.checked_add(1)?,
            DOUBLE => v.checked_mul(2)?,
            _ => unreachable!("unknown int primitive {prim:?}"),
        };
        (next <= self.max).then_some(next)
    }

    fn encode(&self, v: &u32, out: &mut Vec<u8>) {
        out.extend_from_slice(&v.to_le_bytes());
    }

    fn state_size(&self, _: &u32) -> usize {
        self.max as usize
    }

    fn domain_loss(&self) -> LossFunction<u32> {
        losses::abs_diff()
    }

    fn parse_state(&self, literal: &Value) -> Result<u32, StateError> {
        let v = literal
            .as_u64()
            .ok_or_else(|| StateError::new("int", format!("expected a natural number, got {literal}")))?;
        if v > u64::from(self.max) {
            return Err(StateError::new("int", format!("{v} exceeds max {}", self.max)));
        }
        Ok(v as u32)
    }

    fn state_literal(&self, v: &u32) -> Value {
        Value::from(*v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitives() {
        let d = IntDomain::new(10);
        let succ = d.prim_id("succ").unwrap();
        let double = d.prim_id("double").unwrap();
        assert_eq!(d.step(succ, &1), Some(2));
        assert_eq!(d.step(double, &3), Some(6));
        assert_eq!(d.step(succ, &10), None);
        assert_eq!(d.step(double, &6), None);
    }

    #[test]
    fn literal_round_trip() {
        let d = IntDomain::default();
        assert_eq!(d.parse_state(&d.state_literal(&42)), Ok(42));
        assert!(d.parse_state(&Value::from(101)).is_err());
        assert!(d.parse_state(&Value::from("x")).is_err());
    }
}
