//! Example-dependent loss functions and the 0/1 entailment baseline.
//!
//! All losses are integer valued so the goal test can compare against zero
//! exactly.

use std::fmt;

use crate::domains::ascii::ImageState;
use crate::domains::robot::RobotState;
use crate::domains::string::StringState;

/// A named map from `(current, target)` to a nonnegative integer, with
/// `eval(s, s) == 0`.
pub struct LossFunction<S> {
    pub name: &'static str,
    pub eval: fn(&S, &S) -> u64,
}

impl<S> Clone for LossFunction<S> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<S> Copy for LossFunction<S> {}

impl<S> fmt::Debug for LossFunction<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LossFunction").field("name", &self.name).finish()
    }
}

impl<S> LossFunction<S> {
    pub fn eval(&self, current: &S, target: &S) -> u64 {
        (self.eval)(current, target)
    }
}

fn entailment_eval<S: Eq>(x: &S, y: &S) -> u64 {
    u64::from(x != y)
}

/// 0 on full state equality, 1 otherwise.
pub fn entailment<S: Eq>() -> LossFunction<S> {
    LossFunction { name: "entailment", eval: entailment_eval::<S> }
}

pub fn entailment_loss<S: Eq>(x: &S, y: &S) -> u64 {
    entailment_eval(x, y)
}

pub fn abs_diff_loss(x: &u32, y: &u32) -> u64 {
    u64::from(x.abs_diff(*y))
}

pub fn abs_diff() -> LossFunction<u32> {
    LossFunction { name: "abs-diff", eval: abs_diff_loss }
}

/// Manhattan distance of the robot plus Manhattan distance of the ball, plus
/// one if the holding flags differ.
pub fn manhattan_loss(x: &RobotState, y: &RobotState) -> u64 {
    debug_assert_eq!(x.n, y.n, "robot states from different grids");
    let d = |a: (u8, u8), b: (u8, u8)| u64::from(a.0.abs_diff(b.0)) + u64::from(a.1.abs_diff(b.1));
    d(x.robot, y.robot) + d(x.ball, y.ball) + u64::from(x.holding != y.holding)
}

pub fn manhattan() -> LossFunction<RobotState> {
    LossFunction { name: "manhattan", eval: manhattan_loss }
}

/// Unit-cost edit distance over string contents; cursors are ignored.
pub fn levenshtein_loss(x: &StringState, y: &StringState) -> u64 {
    levenshtein_distance(x.chars(), y.chars()) as u64
}

pub fn levenshtein() -> LossFunction<StringState> {
    LossFunction { name: "levenshtein", eval: levenshtein_loss }
}

/// Two-row dynamic programme for unit-cost insert/delete/substitute distance.
pub fn levenshtein_distance<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur = vec![0; b.len() + 1];
    for (i, ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Number of differing pixels; cursors are ignored. Images must share dimensions.
pub fn hamming_loss(x: &ImageState, y: &ImageState) -> u64 {
    assert_eq!(
        (x.height(), x.width()),
        (y.height(), y.width()),
        "hamming loss over differently shaped images"
    );
    x.pixel_words()
        .iter()
        .zip(y.pixel_words())
        .map(|(a, b)| u64::from((a ^ b).count_ones()))
        .sum()
}

pub fn hamming() -> LossFunction<ImageState> {
    LossFunction { name: "hamming", eval: hamming_loss }
}
