//! The four shipped domains: integers, robot planning, string
//! transformations and ASCII art.

pub mod ascii;
pub mod font;
pub mod int;
pub mod robot;
pub mod string;

pub use ascii::{AsciiDomain, ImageState};
pub use int::IntDomain;
pub use robot::{RobotDomain, RobotState};
pub use string::{StringDomain, StringState};
