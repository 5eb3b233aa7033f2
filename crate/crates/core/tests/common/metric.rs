//! Strategies over triples of states and the metric-axiom check.

use brute::domains::{ImageState, RobotState, StringState};
use brute::losses::LossFunction;
use proptest::prelude::*;

pub fn robot_triple() -> impl Strategy<Value = [RobotState; 3]> {
    (2u8..12).prop_flat_map(|n| {
        let state = (1..=n, 1..=n, 1..=n, 1..=n, any::<bool>())
            .prop_map(move |(rc, rr, bc, br, h)| RobotState::new(n, (rc, rr), (bc, br), h));
        [state.clone(), state.clone(), state]
    })
}

pub fn text() -> impl Strategy<Value = StringState> {
    ("[a-cA-C 1]{0,8}", 0usize..8).prop_map(|(s, c)| StringState::new(&s, c))
}

pub fn image_triple() -> impl Strategy<Value = [ImageState; 3]> {
    (1usize..6, 1usize..24).prop_flat_map(|(h, w)| {
        let image = (prop::collection::vec(any::<bool>(), h * w), 0..h, 0..w).prop_map(move |(px, r, c)| {
            let rows: Vec<Vec<bool>> = px.chunks(w).map(<[bool]>::to_vec).collect();
            ImageState::from_pixels(&rows).with_cursor(r, c)
        });
        [image.clone(), image.clone(), image]
    })
}

/// Nonnegativity is given by `u64`; checks symmetry, the triangle
/// inequality and that zero loss coincides with `same`.
pub fn metric<S>(l: LossFunction<S>, [x, y, z]: &[S; 3], same: impl Fn(&S, &S) -> bool) -> Result<(), TestCaseError> {
    prop_assert_eq!(l.eval(x, y), l.eval(y, x));
    prop_assert!(l.eval(x, z) <= l.eval(x, y) + l.eval(y, z));
    prop_assert_eq!(l.eval(x, x), 0);
    prop_assert_eq!(l.eval(x, y) == 0, same(x, y));
    Ok(())
}
