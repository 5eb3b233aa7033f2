//! Integer-domain search setup and the dedup on/off comparison.

use std::time::Duration;

use brute::domains::IntDomain;
use brute::invent::{enumerate_library, InventConfig};
use brute::kernel::{Domain, LibraryPredicate};
use brute::losses;
use brute::search::{best_first_search, SearchConfig, Termination};

pub const MAX: u32 = 12;

pub fn setup() -> (IntDomain, Vec<LibraryPredicate>) {
    let d = IntDomain::new(MAX);
    let lib = enumerate_library(d.primitives(), &InventConfig::default());
    (d, lib)
}

pub fn cfg(dedup: bool) -> SearchConfig {
    SearchConfig {
        timeout: Duration::from_secs(30),
        depth_limit: 2 * MAX,
        max_hypothesis_len: usize::MAX,
        node_budget: u64::MAX,
        dedup,
        path_check: false,
    }
}

/// Solves every single-pair task over `1..=MAX` and a few pair and negative
/// tasks with and without dedup; returns (solved, tasks) or the first
/// disagreement. Every step on inputs >= 1 strictly increases the value, so
/// without dedup the search tree is finite and search always terminates.
pub fn dedup_equivalence() -> Result<(usize, usize), String> {
    let (d, lib) = setup();
    let check = |pos: &[(u32, u32)], neg: &[(u32, u32)]| -> Result<bool, String> {
        let on = best_first_search(&d, &lib, pos, neg, &losses::abs_diff(), &cfg(true));
        let off = best_first_search(&d, &lib, pos, neg, &losses::abs_diff(), &cfg(false));
        if off.stats.reason == Termination::Timeout || on.solved() != off.solved() || on.stats.pushed > off.stats.pushed {
            return Err(format!("{pos:?} / {neg:?}: dedup {} vs {}", on.stats.reason, off.stats.reason));
        }
        Ok(on.solved())
    };
    let mut tasks: Vec<(Vec<(u32, u32)>, Vec<(u32, u32)>)> = Vec::new();
    for x in 1..=MAX {
        for y in 1..=MAX {
            tasks.push((vec![(x, y)], vec![]));
        }
    }
    for (x1, y1, x2, y2) in [(1, 4, 7, 10), (1, 3, 2, 5), (2, 4, 3, 6), (1, 2, 5, 10), (3, 7, 1, 3), (1, 1, 5, 6)] {
        tasks.push((vec![(x1, y1), (x2, y2)], vec![]));
    }
    for (x, y, nx, ny) in [(3, 6, 3, 6), (3, 6, 1, 2), (2, 4, 3, 5), (1, 4, 2, 8), (1, 5, 2, 6)] {
        tasks.push((vec![(x, y)], vec![(nx, ny)]));
    }
    let mut solved = 0;
    for (pos, neg) in &tasks {
        solved += usize::from(check(pos, neg)?);
    }
    Ok((solved, tasks.len()))
}
