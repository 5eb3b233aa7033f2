//! Loss-guided best-first search over `<specification, hypothesis>` states.
//!
//! The queue is ordered by `(loss, hypothesis length, insertion order)`,
//! smallest first. A popped state is a solution when its loss is zero and
//! the program induced from its hypothesis entails no negative example.
//! A zero-loss state that fails the negative check is not returned; it is
//! expanded like any other state. Successors apply every library predicate to every
//! pair of the current specification; failed applications are skipped.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fmt;
use std::rc::Rc;
use std::time::{Duration, Instant};

use crate::kernel::{apply_predicate, Domain, LibraryPredicate, Program, Specification};
use crate::losses::LossFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub timeout: Duration,
    pub depth_limit: u32,
    pub max_hypothesis_len: usize,
    /// Upper bound on states pushed onto the queue.
    pub node_budget: u64,
    /// Skip successors whose specification was already pushed.
    pub dedup: bool,
    /// Skip successors whose specification already occurs on their own
    /// path from the root. Implied by `dedup`.
    pub path_check: bool,
}

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(60);
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            timeout: DEFAULT_TIMEOUT,
            depth_limit: 100,
            max_hypothesis_len: 256,
            node_budget: DEFAULT_NODE_BUDGET,
            dedup: true,
            path_check: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Termination {
    Solved,
    Timeout,
    Exhausted,
    Budget,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Termination::Solved => "solved",
            Termination::Timeout => "timeout",
            Termination::Exhausted => "exhausted",
            Termination::Budget => "budget",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchStats {
    pub expanded: u64,
    pub pushed: u64,
    pub duplicates: u64,
    pub wall: Duration,
    pub reason: Termination,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// Present iff `stats.reason == Solved`.
    pub program: Option<Program>,
    /// Library indices of the solving hypothesis, in application order.
    pub hypothesis: Option<Vec<usize>>,
    pub stats: SearchStats,
}

impl SearchResult {
    pub fn solved(&self) -> bool {
        self.stats.reason == Termination::Solved
    }
}

/// Queue priority, compared lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Priority {
    pub loss: u64,
    pub len: u32,
    pub seq: u64,
}

pub fn spec_loss<S: Clone>(loss: &LossFunction<S>, spec: &Specification<S>) -> u64 {
    spec.pairs.iter().map(|(x, y)| loss.eval(x, y)).sum()
}

/// True iff the program entails none of `negatives`: for each `(x, y)`,
/// running on `x` fails or produces a state that does not satisfy `y`.
pub fn consistent<D: Domain>(
    domain: &D,
    program: &Program,
    negatives: &[(D::State, D::State)],
    depth: u32,
) -> bool {
    negatives.iter().all(|(x, y)| match program.run(domain, x, depth) {
        Some(out) => !domain.satisfies(&out, y),
        None => true,
    })
}

/// Target clause over library indices.
pub fn induce_target_clause(library: &[LibraryPredicate], hypothesis: &[usize]) -> Program {
    Program::induce(hypothesis.iter().map(|&i| &library[i]))
}

/// Losses of the spec after each prefix of the program, starting with the
/// initial spec. `None` if some stage fails on some pair.
pub fn loss_trajectory<D: Domain>(
    domain: &D,
    program: &Program,
    positives: &[(D::State, D::State)],
    loss: &LossFunction<D::State>,
    depth: u32,
) -> Option<Vec<u64>> {
    let traces = positives
        .iter()
        .map(|(x, _)| program.trace(domain, x, depth))
        .collect::<Option<Vec<_>>>()?;
    let stages = program.target.len() + 1;
    Some(
        (0..stages)
            .map(|i| positives.iter().zip(&traces).map(|((_, y), t)| loss.eval(&t[i], y)).sum())
            .collect(),
    )
}

struct Node {
    parent: u32,
    pred: u32,
}

const ROOT: u32 = u32::MAX;

fn on_path<S: Eq>(nodes: &[Node], specs: &[Option<Rc<[Option<S>]>>], mut id: u32, spec: &[Option<S>]) -> bool {
    loop {
        if specs[id as usize].as_deref() == Some(spec) {
            return true;
        }
        id = nodes[id as usize].parent;
        if id == ROOT {
            return false;
        }
    }
}

pub fn best_first_search<D: Domain>(
    domain: &D,
    library: &[LibraryPredicate],
    positives: &[(D::State, D::State)],
    negatives: &[(D::State, D::State)],
    loss: &LossFunction<D::State>,
    cfg: &SearchConfig,
) -> SearchResult {
    best_first_search_observed(domain, library, positives, negatives, loss, cfg, &mut |_, _| {})
}

/// As [`best_first_search`], calling `on_pop(popped, best_remaining)` each
/// time a state leaves the queue.
pub fn best_first_search_observed<D: Domain>(
    domain: &D,
    library: &[LibraryPredicate],
    positives: &[(D::State, D::State)],
    negatives: &[(D::State, D::State)],
    loss: &LossFunction<D::State>,
    cfg: &SearchConfig,
    on_pop: &mut dyn FnMut(Priority, Option<Priority>),
) -> SearchResult {
    assert!(!positives.is_empty(), "search needs at least one positive example");
    let start = Instant::now();
    let deadline = start + cfg.timeout;
    let targets: Vec<D::State> = positives.iter().map(|(_, y)| y.clone()).collect();
    let n_pos = positives.len();
    // Negative inputs are threaded alongside the positives (`None` once a
    // predicate fails on them), so two states with equal keys agree on every
    // example and deduplication never discards a consistent hypothesis.
    let initial: Rc<[Option<D::State>]> = positives
        .iter()
        .chain(negatives)
        .map(|(x, _)| Some(x.clone()))
        .collect();

    let mut nodes: Vec<Node> = Vec::new();
    let mut specs: Vec<Option<Rc<[Option<D::State>]>>> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(Priority, u32)>> = BinaryHeap::new();
    let mut visited: HashSet<Rc<[Option<D::State>]>> = HashSet::new();
    let mut stats = SearchStats {
        expanded: 0,
        pushed: 1,
        duplicates: 0,
        wall: Duration::ZERO,
        reason: Termination::Exhausted,
    };
    let mut seq = 0u64;

    let spec_loss_of = |spec: &[Option<D::State>]| -> u64 {
        spec[..n_pos]
            .iter()
            .zip(&targets)
            .map(|(x, y)| loss.eval(x.as_ref().expect("positives never fail"), y))
            .sum()
    };

    nodes.push(Node { parent: ROOT, pred: 0 });
    specs.push(Some(initial.clone()));
    heap.push(Reverse((Priority { loss: spec_loss_of(&initial), len: 0, seq }, 0)));
    if cfg.dedup {
        visited.insert(initial);
    }

    let hypothesis_of = |nodes: &[Node], mut id: u32| {
        let mut seq = Vec::new();
        while nodes[id as usize].parent != ROOT {
            seq.push(nodes[id as usize].pred as usize);
            id = nodes[id as usize].parent;
        }
        seq.reverse();
        seq
    };

    let mut successor: Vec<Option<D::State>> = Vec::with_capacity(positives.len() + negatives.len());
    'search: loop {
        if Instant::now() >= deadline {
            stats.reason = Termination::Timeout;
            break;
        }
        let Some(Reverse((prio, id))) = heap.pop() else {
            stats.reason = Termination::Exhausted;
            break;
        };
        on_pop(prio, heap.peek().map(|Reverse((p, _))| *p));
        stats.expanded += 1;
        let spec = specs[id as usize].clone().expect("popped states keep their spec");

        if prio.loss == 0 {
            let hypothesis = hypothesis_of(&nodes, id);
            let program = induce_target_clause(library, &hypothesis);
            if consistent(domain, &program, negatives, cfg.depth_limit) {
                stats.reason = Termination::Solved;
                stats.wall = start.elapsed();
                return SearchResult { program: Some(program), hypothesis: Some(hypothesis), stats };
            }
        }
        if prio.len as usize >= cfg.max_hypothesis_len {
            continue;
        }

        for (index, pred) in library.iter().enumerate() {
            successor.clear();
            for x in &spec[..n_pos] {
                let x = x.as_ref().expect("positives never fail");
                match apply_predicate(domain, pred, x, cfg.depth_limit) {
                    Some(z) => successor.push(Some(z)),
                    None => break,
                }
            }
            if successor.len() != n_pos {
                continue;
            }
            successor.extend(
                spec[n_pos..]
                    .iter()
                    .map(|x| x.as_ref().and_then(|x| apply_predicate(domain, pred, x, cfg.depth_limit))),
            );
            let next: Rc<[Option<D::State>]> = successor.as_slice().into();
            if cfg.dedup {
                if visited.contains(&next) {
                    stats.duplicates += 1;
                    continue;
                }
                visited.insert(next.clone());
            } else if cfg.path_check && on_path(&nodes, &specs, id, &next) {
                stats.duplicates += 1;
                continue;
            }
            if stats.pushed >= cfg.node_budget {
                stats.reason = Termination::Budget;
                break 'search;
            }
            seq += 1;
            let priority = Priority { loss: spec_loss_of(&next), len: prio.len + 1, seq };
            let new_id = nodes.len() as u32;
            nodes.push(Node { parent: id, pred: index as u32 });
            specs.push(Some(next));
            heap.push(Reverse((priority, new_id)));
            stats.pushed += 1;
        }
    }
    stats.wall = start.elapsed();
    SearchResult { program: None, hypothesis: None, stats }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::int::IntDomain;
    use crate::invent::{enumerate_library, InventConfig};
    use crate::kernel::Op;
    use crate::losses;

    fn example_library(d: &IntDomain) -> Vec<LibraryPredicate> {
        let succ = Op::Step(d.prim_id("succ").unwrap());
        let double = Op::Step(d.prim_id("double").unwrap());
        vec![
            LibraryPredicate::from_ops(1, &[&[succ]]).unwrap(),
            LibraryPredicate::from_ops(2, &[&[double]]).unwrap(),
            LibraryPredicate::from_ops(3, &[&[double, double]]).unwrap(),
            LibraryPredicate::from_ops(4, &[&[succ, succ]]).unwrap(),
        ]
    }

    fn cfg() -> SearchConfig {
        SearchConfig { timeout: Duration::from_secs(10), depth_limit: 20, ..SearchConfig::default() }
    }

    #[test]
    fn spec_loss_examples() {
        let l = losses::abs_diff();
        assert_eq!(spec_loss(&l, &Specification::new(vec![(1, 4), (7, 10)])), 6);
        assert_eq!(spec_loss(&l, &Specification::new(vec![(3, 4), (9, 10)])), 2);
        assert_eq!(spec_loss(&l, &Specification::new(vec![(5, 5), (8, 8)])), 0);
    }

    #[test]
    fn running_example_search() {
        let d = IntDomain::default();
        let lib = example_library(&d);
        let pos = [(1, 4), (7, 10)];
        let res = best_first_search(&d, &lib, &pos, &[], &losses::abs_diff(), &cfg());
        assert!(res.solved());
        let prog = res.program.unwrap();
        assert_eq!(prog.target, vec![4, 1]);
        assert_eq!(prog.run(&d, &1, 20), Some(4));
        assert_eq!(prog.run(&d, &7, 20), Some(10));
        assert_eq!(loss_trajectory(&d, &prog, &pos, &losses::abs_diff(), 20), Some(vec![6, 2, 0]));
    }

    #[test]
    fn already_satisfied_examples_need_no_predicates() {
        let d = IntDomain::default();
        let lib = example_library(&d);
        let res = best_first_search(&d, &lib, &[(3, 3), (9, 9)], &[], &losses::abs_diff(), &cfg());
        assert!(res.solved());
        assert!(res.program.unwrap().target.is_empty());
        assert_eq!(res.stats.expanded, 1);
    }

    #[test]
    fn single_successor_library() {
        let d = IntDomain::new(20);
        let lib = vec![example_library(&d).remove(0)];
        let res = best_first_search(&d, &lib, &[(1, 2), (5, 6)], &[], &losses::abs_diff(), &cfg());
        assert!(res.solved());
        assert_eq!(res.stats.expanded, 2);

        let res = best_first_search(&d, &lib, &[(1, 1), (5, 6)], &[], &losses::abs_diff(), &cfg());
        assert!(!res.solved());
        assert!(res.program.is_none());
        assert_eq!(res.stats.reason, Termination::Exhausted);
    }

    #[test]
    fn inconsistent_zero_loss_states_are_skipped() {
        let d = IntDomain::default();
        let lib = example_library(&d);
        // 2 -> 4 by double or by succ,succ; the negative rules out double
        let negatives = [(3, 6)];
        let res = best_first_search(&d, &lib, &[(2, 4)], &negatives, &losses::abs_diff(), &cfg());
        let prog = res.program.unwrap();
        assert_eq!(prog.run(&d, &2, 20), Some(4));
        assert_ne!(prog.run(&d, &3, 20), Some(6));
    }

    #[test]
    fn consistency_check() {
        let d = IntDomain::default();
        let lib = example_library(&d);
        let prog = induce_target_clause(&lib, &[3, 0]);
        assert!(consistent(&d, &prog, &[], 20));
        assert!(!consistent(&d, &prog, &[(1, 4)], 20));
        assert!(consistent(&d, &prog, &[(7, 11)], 20));
        assert!(consistent(&d, &prog, &[(99, 100)], 20));
    }

    #[test]
    fn lips_program_shape() {
        let d = IntDomain::default();
        let lib = enumerate_library(d.primitives(), &InventConfig::default());
        let prog = induce_target_clause(&lib, &[0, 1, 0, 2, 3, 2]);
        assert_eq!(prog.target.len(), 6);
        assert_eq!(prog.definitions.len(), 4);
    }

    #[test]
    fn timeout_is_reported() {
        let d = IntDomain::new(1_000_000);
        let lib = enumerate_library(d.primitives(), &InventConfig::default());
        let cfg = SearchConfig { timeout: Duration::ZERO, ..cfg() };
        let res = best_first_search(&d, &lib, &[(1, 999_999)], &[], &losses::entailment(), &cfg);
        assert_eq!(res.stats.reason, Termination::Timeout);
        assert!(res.program.is_none());
    }

    #[test]
    fn budget_is_reported() {
        let d = IntDomain::new(1_000_000);
        let lib = enumerate_library(d.primitives(), &InventConfig::default());
        let cfg = SearchConfig { node_budget: 50, ..cfg() };
        let res = best_first_search(&d, &lib, &[(1, 999_999)], &[], &losses::entailment(), &cfg);
        assert_eq!(res.stats.reason, Termination::Budget);
        assert_eq!(res.stats.pushed, 50);
    }
}
