//! Strings with a cursor.
//!
//! `drop` deletes the character under the cursor and keeps the cursor index,
//! clamping it to the last character when the deleted one was last. The
//! empty string has no cursor, and every cursor-dependent primitive fails on it.

use std::fmt;

use serde_json::{json, Value};

use crate::kernel::{Domain, PrimId, PrimitiveDecl, StateError};
use crate::losses::{self, LossFunction};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringState {
    chars: Vec<char>,
    cursor: usize,
}

impl StringState {
    /// Clamps `cursor` into range; the empty string always has cursor 0.
    pub fn new(text: &str, cursor: usize) -> Self {
        let chars: Vec<char> = text.chars().collect();
        let cursor = cursor.min(chars.len().saturating_sub(1));
        StringState { chars, cursor }
    }

    pub fn chars(&self) -> &[char] {
        &self.chars
    }

    pub fn text(&self) -> String {
        self.chars.iter().collect()
    }

    /// `None` for the empty string.
    pub fn cursor(&self) -> Option<usize> {
        (!self.chars.is_empty()).then_some(self.cursor)
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    fn current(&self) -> Option<char> {
        self.chars.get(self.cursor).copied()
    }

    fn with_current(&self, c: char) -> StringState {
        let mut next = self.clone();
        next.chars[self.cursor] = c;
        next
    }
}

impl fmt::Display for StringState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{}", self.text(), self.cursor)
    }
}

const PRIMITIVES: [PrimitiveDecl; 10] = [
    PrimitiveDecl::dyadic("drop"),
    PrimitiveDecl::dyadic("right"),
    PrimitiveDecl::dyadic("mk_uppercase"),
    PrimitiveDecl::dyadic("mk_lowercase"),
    PrimitiveDecl::monadic("is_letter"),
    PrimitiveDecl::monadic("is_uppercase"),
    PrimitiveDecl::monadic("is_space"),
    PrimitiveDecl::monadic("is_number"),
    PrimitiveDecl::monadic("at_start"),
    PrimitiveDecl::monadic("at_end"),
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StringDomain;

impl Domain for StringDomain {
    type State = StringState;

    fn name(&self) -> &'static str {
        "string"
    }

    fn primitives(&self) -> &[PrimitiveDecl] {
        &PRIMITIVES
    }

    fn test(&self, prim: PrimId, s: &StringState) -> bool {
        let Some(c) = s.current() else { return false };
        match prim.0 {
            4 => c.is_alphabetic(),
            5 => c.is_uppercase(),
            6 => c.is_whitespace(),
            7 => c.is_ascii_digit(),
            8 => s.cursor == 0,
            9 => s.cursor + 1 == s.chars.len(),
            _ => unreachable!("not a monadic string primitive: {prim:?}"),
        }
    }

    fn step(&self, prim: PrimId, s: &StringState) -> Option<StringState> {
        let c = s.current()?;
        match prim.0 {
            0 => {
                let mut next = s.clone();
                next.chars.remove(s.cursor);
                if next.cursor >= next.chars.len() {
                    next.cursor = next.chars.len().saturating_sub(1);
                }
                Some(next)
            }
            1 => (s.cursor + 1 < s.chars.len()).then(|| StringState { chars: s.chars.clone(), cursor: s.cursor + 1 }),
            2 => {
                let mut up = c.to_uppercase();
                match (c.is_alphabetic(), up.next(), up.next()) {
                    (true, Some(u), None) => Some(s.with_current(u)),
                    _ => None,
                }
            }
            3 => {
                let mut low = c.to_lowercase();
                match (c.is_alphabetic(), low.next(), low.next()) {
                    (true, Some(l), None) => Some(s.with_current(l)),
                    _ => None,
                }
            }
            _ => unreachable!("not a dyadic string primitive: {prim:?}"),
        }
    }

    /// Cursor ignored: coverage is content equality.
    fn satisfies(&self, output: &StringState, target: &StringState) -> bool {
        output.chars == target.chars
    }

    fn encode(&self, s: &StringState, out: &mut Vec<u8>) {
        out.extend_from_slice(&(s.cursor as u32).to_le_bytes());
        out.extend_from_slice(s.text().as_bytes());
    }

    fn state_size(&self, s: &StringState) -> usize {
        s.len()
    }

    fn domain_loss(&self) -> LossFunction<StringState> {
        losses::levenshtein()
    }

    /// Accepts `{"s": "...", "cursor": k}` (cursor optional) or a bare JSON string.
    fn parse_state(&self, literal: &Value) -> Result<StringState, StateError> {
        let err = |m: String| StateError::new("string", m);
        let (text, cursor) = match literal {
            Value::String(s) => (s.as_str(), 0),
            Value::Object(obj) => {
                let text = obj
                    .get("s")
                    .and_then(Value::as_str)
                    .ok_or_else(|| err("missing string field `s`".into()))?;
                let cursor = match obj.get("cursor") {
                    None => 0,
                    Some(v) => v.as_u64().ok_or_else(|| err("`cursor` must be a natural number".into()))? as usize,
                };
                (text, cursor)
            }
            other => return Err(err(format!("expected an object or string, got {other}"))),
        };
        let len = text.chars().count();
        if cursor > 0 && cursor >= len {
            return Err(err(format!("cursor {cursor} out of range for length {len}")));
        }
        Ok(StringState::new(text, cursor))
    }

    fn state_literal(&self, s: &StringState) -> Value {
        json!({ "s": s.text(), "cursor": s.cursor })
    }
}
