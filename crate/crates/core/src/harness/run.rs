//! Running one task: invent (cached per domain), search, re-verify.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::task::{DomainKind, Task};
use super::HarnessError;
use crate::domains::{AsciiDomain, RobotDomain, StringDomain};
use crate::invent::{enumerate_library, InventConfig};
use crate::kernel::{default_depth_limit, Domain, LibraryPredicate, Program};
use crate::losses::{self, LossFunction};
use crate::search::{best_first_search, consistent, SearchConfig, DEFAULT_NODE_BUDGET, DEFAULT_TIMEOUT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LossChoice {
    DomainDefault,
    Entailment,
    AbsDiff,
}

impl fmt::Display for LossChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LossChoice::DomainDefault => "default",
            LossChoice::Entailment => "entailment",
            LossChoice::AbsDiff => "abs-diff",
        })
    }
}

impl FromStr for LossChoice {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "default" | "domain-default" => Ok(LossChoice::DomainDefault),
            "entailment" => Ok(LossChoice::Entailment),
            "abs-diff" => Ok(LossChoice::AbsDiff),
            other => Err(HarnessError::Invalid(format!("unknown loss {other:?}"))),
        }
    }
}

impl LossChoice {
    fn resolve<D: Domain>(self, domain: &D) -> Result<LossFunction<D::State>, HarnessError> {
        match self {
            LossChoice::DomainDefault => Ok(domain.domain_loss()),
            LossChoice::Entailment => Ok(losses::entailment()),
            LossChoice::AbsDiff if domain.name() == "int" => Ok(domain.domain_loss()),
            LossChoice::AbsDiff => {
                Err(HarnessError::Invalid(format!("abs-diff loss is only defined for int, not {}", domain.name())))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub invent: InventConfig,
    pub timeout: Duration,
    /// Defaults to ten times the largest example state.
    pub depth_limit: Option<u32>,
    pub max_hypothesis_len: usize,
    pub node_budget: u64,
    pub dedup: bool,
    pub path_check: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            invent: InventConfig::default(),
            timeout: DEFAULT_TIMEOUT,
            depth_limit: None,
            max_hypothesis_len: SearchConfig::default().max_hypothesis_len,
            node_budget: DEFAULT_NODE_BUDGET,
            dedup: true,
            path_check: false,
        }
    }
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub task: String,
    pub bucket: String,
    pub loss: String,
    pub rep: usize,
    pub seed: u64,
    pub train_n: Option<usize>,
    pub solved: bool,
    pub reason: String,
    pub wall_ms: f64,
    pub clauses: Option<usize>,
    pub literals: Option<usize>,
    pub nodes_expanded: u64,
    pub nodes_pushed: u64,
    pub accuracy: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct TaskOutcome {
    pub record: RunRecord,
    pub program: Option<Program>,
    pub program_text: Option<String>,
}

/// Invented libraries keyed by domain, built on first use.
#[derive(Debug)]
pub struct Libraries {
    cfg: InventConfig,
    cache: Mutex<HashMap<DomainKind, Arc<Vec<LibraryPredicate>>>>,
}

impl Libraries {
    pub fn new(cfg: InventConfig) -> Self {
        Libraries { cfg, cache: Mutex::new(HashMap::new()) }
    }

    pub fn config(&self) -> InventConfig {
        self.cfg
    }

    pub fn get(&self, kind: DomainKind) -> Arc<Vec<LibraryPredicate>> {
        let mut cache = self.cache.lock().unwrap();
        cache
            .entry(kind)
            .or_insert_with(|| {
                let prims = match kind {
                    DomainKind::Int => crate::domains::IntDomain::default().primitives().to_vec(),
                    DomainKind::Robot => RobotDomain.primitives().to_vec(),
                    DomainKind::String => StringDomain.primitives().to_vec(),
                    DomainKind::Ascii => AsciiDomain.primitives().to_vec(),
                };
                Arc::new(enumerate_library(&prims, &self.cfg))
            })
            .clone()
    }
}

/// Which positives to learn from. `Split` samples `n` training examples
/// without replacement using `seed` and scores the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Protocol {
    AllPositives,
    Split { n: usize },
}

pub fn run_task(task: &Task, loss: LossChoice, cfg: &RunConfig, libs: &Libraries) -> Result<TaskOutcome, HarnessError> {
    run_task_with(task, loss, cfg, libs, Protocol::AllPositives, 0, 0)
}

pub fn run_task_with(
    task: &Task,
    loss: LossChoice,
    cfg: &RunConfig,
    libs: &Libraries,
    protocol: Protocol,
    rep: usize,
    seed: u64,
) -> Result<TaskOutcome, HarnessError> {
    if !cfg.invent.is_valid() {
        return Err(HarnessError::Invalid(format!("invalid invention config {:?}", cfg.invent)));
    }
    if libs.config() != cfg.invent {
        return Err(HarnessError::Invalid("library cache built under a different invention config".into()));
    }
    let library = libs.get(task.domain);
    let job = Job { task, loss, cfg, library: &library, protocol, rep, seed };
    match task.domain {
        DomainKind::Int => job.run(&task.int_domain()),
        DomainKind::Robot => job.run(&RobotDomain),
        DomainKind::String => job.run(&StringDomain),
        DomainKind::Ascii => job.run(&AsciiDomain),
    }
}

struct Job<'a> {
    task: &'a Task,
    loss: LossChoice,
    cfg: &'a RunConfig,
    library: &'a [LibraryPredicate],
    protocol: Protocol,
    rep: usize,
    seed: u64,
}

impl Job<'_> {
    fn run<D: Domain>(&self, domain: &D) -> Result<TaskOutcome, HarnessError> {
        let loss = self.loss.resolve(domain)?;
        let (pos, neg) = self.task.examples(domain)?;
        let (train, held_out, train_n) = match self.protocol {
            Protocol::AllPositives => (pos, Vec::new(), None),
            Protocol::Split { n } => {
                if n == 0 || n > pos.len() {
                    return Err(HarnessError::Invalid(format!(
                        "task {}: cannot train on {n} of {} examples",
                        self.task.name,
                        pos.len()
                    )));
                }
                let mut order: Vec<usize> = (0..pos.len()).collect();
                order.shuffle(&mut ChaCha8Rng::seed_from_u64(self.seed));
                let mut train = Vec::with_capacity(n);
                let mut held = Vec::with_capacity(pos.len() - n);
                for (k, &i) in order.iter().enumerate() {
                    if k < n { train.push(pos[i].clone()) } else { held.push(pos[i].clone()) }
                }
                (train, held, Some(n))
            }
        };
        let depth_limit = self.cfg.depth_limit.unwrap_or_else(|| {
            let states: Vec<&D::State> =
                train.iter().chain(&held_out).chain(&neg).flat_map(|(x, y)| [x, y]).collect();
            default_depth_limit(domain, &states)
        });
        let search = SearchConfig {
            timeout: self.cfg.timeout,
            depth_limit,
            max_hypothesis_len: self.cfg.max_hypothesis_len,
            node_budget: self.cfg.node_budget,
            dedup: self.cfg.dedup,
            path_check: self.cfg.path_check,
        };
        let result = best_first_search(domain, self.library, &train, &neg, &loss, &search);

        if let Some(program) = &result.program {
            let covers = train
                .iter()
                .all(|(x, y)| program.run(domain, x, depth_limit).is_some_and(|out| domain.satisfies(&out, y)));
            if !covers || !consistent(domain, program, &neg, depth_limit) {
                return Err(HarnessError::Invalid(format!(
                    "task {}: returned program failed re-verification",
                    self.task.name
                )));
            }
        }

        let accuracy = train_n.map(|_| match &result.program {
            _ if held_out.is_empty() => 1.0,
            None => 0.0,
            Some(program) => {
                let hits = held_out
                    .iter()
                    .filter(|(x, y)| program.run(domain, x, depth_limit).is_some_and(|out| domain.satisfies(&out, y)))
                    .count();
                hits as f64 / held_out.len() as f64
            }
        });
        let size = result.program.as_ref().map(Program::size);
        let record = RunRecord {
            task: self.task.name.clone(),
            bucket: self.task.bucket(),
            loss: self.loss.to_string(),
            rep: self.rep,
            seed: self.seed,
            train_n,
            solved: result.solved(),
            reason: result.stats.reason.to_string(),
            wall_ms: result.stats.wall.as_secs_f64() * 1e3,
            clauses: size.map(|s| s.0),
            literals: size.map(|s| s.1),
            nodes_expanded: result.stats.expanded,
            nodes_pushed: result.stats.pushed,
            accuracy,
        };
        let program_text = result.program.as_ref().map(|p| p.render(domain.primitives()));
        Ok(TaskOutcome { record, program: result.program, program_text })
    }
}
