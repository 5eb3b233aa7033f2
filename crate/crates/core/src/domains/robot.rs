//! A robot and a ball on an `n x n` grid.
//!
//! Coordinates are `(col, row)`, both 1-based, with row 1 at the top. Moves
//! fail at the border. While holding, the ball travels with the robot.

use std::fmt;

use serde_json::{json, Value};

use crate::kernel::{Domain, PrimId, PrimitiveDecl, StateError};
use crate::losses::{self, LossFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RobotState {
    pub n: u8,
    pub robot: (u8, u8),
    pub ball: (u8, u8),
    pub holding: bool,
}

impl RobotState {
    pub fn new(n: u8, robot: (u8, u8), ball: (u8, u8), holding: bool) -> Self {
        RobotState { n, robot, ball, holding }
    }

    pub fn is_valid(&self) -> bool {
        let inside = |(c, r): (u8, u8)| (1..=self.n).contains(&c) && (1..=self.n).contains(&r);
        self.n >= 1 && inside(self.robot) && inside(self.ball) && (!self.holding || self.robot == self.ball)
    }
}

impl fmt::Display for RobotState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "robot {}/{} ball {}/{}{}",
            self.robot.0,
            self.robot.1,
            self.ball.0,
            self.ball.1,
            if self.holding { " (holding)" } else { "" }
        )
    }
}

const PRIMITIVES: [PrimitiveDecl; 10] = [
    PrimitiveDecl::dyadic("up"),
    PrimitiveDecl::dyadic("down"),
    PrimitiveDecl::dyadic("right"),
    PrimitiveDecl::dyadic("left"),
    PrimitiveDecl::dyadic("grab"),
    PrimitiveDecl::dyadic("drop"),
    PrimitiveDecl::monadic("at_top"),
    PrimitiveDecl::monadic("at_bottom"),
    PrimitiveDecl::monadic("at_left"),
    PrimitiveDecl::monadic("at_right"),
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RobotDomain;

impl RobotDomain {
    fn moved(s: &RobotState, dc: i8, dr: i8) -> Option<RobotState> {
        let c = s.robot.0.checked_add_signed(dc)?;
        let r = s.robot.1.checked_add_signed(dr)?;
        if c < 1 || r < 1 || c > s.n || r > s.n {
            return None;
        }
        let mut next = *s;
        next.robot = (c, r);
        if s.holding {
            next.ball = next.robot;
        }
        Some(next)
    }
}

impl Domain for RobotDomain {
    type State = RobotState;

    fn name(&self) -> &'static str {
        "robot"
    }

    fn primitives(&self) -> &[PrimitiveDecl] {
        &PRIMITIVES
    }

    fn test(&self, prim: PrimId, s: &RobotState) -> bool {
        match prim.0 {
            6 => s.robot.1 == 1,
            7 => s.robot.1 == s.n,
            8 => s.robot.0 == 1,
            9 => s.robot.0 == s.n,
            _ => unreachable!("not a monadic robot primitive: {prim:?}"),
        }
    }

    fn step(&self, prim: PrimId, s: &RobotState) -> Option<RobotState> {
        match prim.0 {
            0 => Self::moved(s, 0, -1),
            1 => Self::moved(s, 0, 1),
            2 => Self::moved(s, 1, 0),
            3 => Self::moved(s, -1, 0),
            4 => (!s.holding && s.robot == s.ball).then_some(RobotState { holding: true, ..*s }),
            5 => s.holding.then_some(RobotState { holding: false, ..*s }),
            _ => unreachable!("not a dyadic robot primitive: {prim:?}"),
        }
    }

    fn encode(&self, s: &RobotState, out: &mut Vec<u8>) {
        out.extend_from_slice(&[s.n, s.robot.0, s.robot.1, s.ball.0, s.ball.1, u8::from(s.holding)]);
    }

    fn state_size(&self, s: &RobotState) -> usize {
        usize::from(s.n)
    }

    fn domain_loss(&self) -> LossFunction<RobotState> {
        losses::manhattan()
    }

    fn parse_state(&self, literal: &Value) -> Result<RobotState, StateError> {
        let err = |m: String| StateError::new("robot", m);
        let obj = literal.as_object().ok_or_else(|| err(format!("expected an object, got {literal}")))?;
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .filter(|n| (1..=u64::from(u8::MAX)).contains(n))
            .ok_or_else(|| err("missing or invalid grid size `n`".into()))? as u8;
        let pos = |key: &str| -> Result<(u8, u8), StateError> {
            let arr = obj
                .get(key)
                .and_then(Value::as_array)
                .filter(|a| a.len() == 2)
                .ok_or_else(|| err(format!("`{key}` must be [col,row]")))?;
            let coord = |v: &Value| {
                v.as_u64()
                    .filter(|x| (1..=u64::from(n)).contains(x))
                    .map(|x| x as u8)
                    .ok_or_else(|| err(format!("`{key}` coordinate out of range 1..={n}")))
            };
            Ok((coord(&arr[0])?, coord(&arr[1])?))
        };
        let holding = match obj.get("holding") {
            None => false,
            Some(v) => v.as_bool().ok_or_else(|| err("`holding` must be a boolean".into()))?,
        };
        let state = RobotState::new(n, pos("robot")?, pos("ball")?, holding);
        if !state.is_valid() {
            return Err(err("holding requires the robot and ball to share a cell".into()));
        }
        Ok(state)
    }

    fn state_literal(&self, s: &RobotState) -> Value {
        json!({
            "n": s.n,
            "robot": [s.robot.0, s.robot.1],
            "ball": [s.ball.0, s.ball.1],
            "holding": s.holding,
        })
    }
}
