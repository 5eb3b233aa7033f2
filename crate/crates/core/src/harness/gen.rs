//! Seeded task generators for the robot and ASCII-art experiments.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::task::{DomainKind, Task, TaskParams};
use super::HarnessError;
use crate::domains::font::GLYPH_HEIGHT;
use crate::domains::{AsciiDomain, ImageState, RobotDomain, RobotState};
use crate::kernel::Domain;

pub const DEFAULT_ALPHABET: &str = "IJCA";

/// Independent stream `index` of the generator seeded by `master`.
pub fn task_rng(master: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index);
    rng
}

/// One-shot robot task on an `n x n` grid: robot and ball start on
/// independent uniform cells; at the end both sit on a uniform goal cell
/// and the robot is not holding the ball.
pub fn gen_robot_task(n: u8, rng: &mut impl Rng) -> Task {
    assert!(n >= 2, "robot grids need n >= 2");
    let mut cell = || (rng.gen_range(1..=n), rng.gen_range(1..=n));
    let robot = cell();
    let ball = cell();
    let goal = cell();
    robot_task(
        format!("robot-{n}-r{}x{}-b{}x{}-g{}x{}", robot.0, robot.1, ball.0, ball.1, goal.0, goal.1),
        RobotState::new(n, robot, ball, false),
        RobotState::new(n, goal, goal, false),
    )
}

pub fn robot_task(name: String, start: RobotState, end: RobotState) -> Task {
    let d = RobotDomain;
    Task {
        name,
        domain: DomainKind::Robot,
        params: TaskParams { grid_n: Some(start.n), ..TaskParams::default() },
        pos: vec![(d.state_literal(&start), d.state_literal(&end))],
        neg: Vec::new(),
        bucket: Some(format!("robot-{}", start.n)),
    }
}

/// Draw the rendering of `k` characters sampled uniformly with replacement
/// from `alphabet`, starting from the blank image.
pub fn gen_ascii_task(k: usize, rng: &mut impl Rng, alphabet: &str) -> Result<Task, HarnessError> {
    assert!(k >= 1, "ascii tasks need at least one character");
    let chars: Vec<char> = alphabet.chars().collect();
    if chars.is_empty() {
        return Err(HarnessError::Invalid("empty alphabet".into()));
    }
    let text: String = (0..k).map(|_| *chars.choose(rng).unwrap()).collect();
    ascii_task(&text)
}

pub fn ascii_task(text: &str) -> Result<Task, HarnessError> {
    let target = ImageState::from_text(text).map_err(|e| HarnessError::Invalid(e.to_string()))?;
    let blank = ImageState::blank(GLYPH_HEIGHT, target.width());
    let d = AsciiDomain;
    Ok(Task {
        name: format!("ascii-{text}"),
        domain: DomainKind::Ascii,
        params: TaskParams { height: Some(target.height()), width: Some(target.width()), ..TaskParams::default() },
        pos: vec![(d.state_literal(&blank), d.state_literal(&target))],
        neg: Vec::new(),
        bucket: Some(format!("ascii-{}", text.chars().count())),
    })
}

/// `count` tasks of one size, task `i` drawn from stream `i` of `seed`.
pub fn gen_suite(domain: DomainKind, size: usize, count: usize, seed: u64, alphabet: &str) -> Result<Vec<Task>, HarnessError> {
    (0..count)
        .map(|i| {
            let mut rng = task_rng(seed, i as u64);
            let mut task = match domain {
                DomainKind::Robot => {
                    let n = u8::try_from(size)
                        .ok()
                        .filter(|n| *n >= 2)
                        .ok_or_else(|| HarnessError::Invalid(format!("grid size {size} outside 2..=255")))?;
                    gen_robot_task(n, &mut rng)
                }
                DomainKind::Ascii => {
                    if size == 0 {
                        return Err(HarnessError::Invalid("ascii size must be >= 1".into()));
                    }
                    gen_ascii_task(size, &mut rng, alphabet)?
                }
                other => return Err(HarnessError::Invalid(format!("no generator for {other} tasks"))),
            };
            task.name = format!("{:03}-{}", i, task.name);
            Ok(task)
        })
        .collect()
}
