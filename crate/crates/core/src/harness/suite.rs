//! Benchmark suites: tasks x losses x (train sizes) x repetitions, CSV
//! output and per-bucket summaries.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::Rng;
use serde::Serialize;

use super::gen::task_rng;
use super::run::{run_task_with, Libraries, LossChoice, Protocol, RunConfig, RunRecord};
use super::task::Task;
use super::HarnessError;

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub run: RunConfig,
    pub losses: Vec<LossChoice>,
    pub reps: usize,
    pub seed: u64,
    /// Train/test protocol sizes; `None` trains on every positive.
    pub train_sizes: Option<Vec<usize>>,
    pub jobs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            run: RunConfig::default(),
            losses: vec![LossChoice::DomainDefault, LossChoice::Entailment],
            reps: 1,
            seed: 0,
            train_sizes: None,
            jobs: 1,
        }
    }
}

struct Cell<'a> {
    task_index: usize,
    task: &'a Task,
    loss: LossChoice,
    protocol: Protocol,
    rep: usize,
}

/// Seed of repetition `rep` of task `task_index`.
pub fn run_seed(master: u64, task_index: usize, rep: usize) -> u64 {
    task_rng(master, task_index as u64).gen::<u64>().wrapping_add(rep as u64)
}

/// Runs every cell and returns rows in task, loss, train size, repetition
/// order. A cell that errors becomes an unsolved row with reason
/// `error: ...`. `on_row` sees rows as they finish.
pub fn run_suite(
    tasks: &[Task],
    cfg: &SuiteConfig,
    on_row: &(dyn Fn(&RunRecord) + Sync),
) -> Result<Vec<RunRecord>, HarnessError> {
    if tasks.is_empty() {
        return Err(HarnessError::Invalid("empty suite".into()));
    }
    if cfg.losses.is_empty() || cfg.reps == 0 {
        return Err(HarnessError::Invalid("a suite needs at least one loss and one repetition".into()));
    }
    let protocols: Vec<Protocol> = match &cfg.train_sizes {
        None => vec![Protocol::AllPositives],
        Some(sizes) => sizes.iter().map(|&n| Protocol::Split { n }).collect(),
    };
    let mut cells = Vec::new();
    for (task_index, task) in tasks.iter().enumerate() {
        for &loss in &cfg.losses {
            for &protocol in &protocols {
                for rep in 0..cfg.reps {
                    cells.push(Cell { task_index, task, loss, protocol, rep });
                }
            }
        }
    }

    let libs = Libraries::new(cfg.run.invent);
    let run_cell = |cell: &Cell| {
        let seed = run_seed(cfg.seed, cell.task_index, cell.rep);
        let record = match run_task_with(cell.task, cell.loss, &cfg.run, &libs, cell.protocol, cell.rep, seed) {
            Ok(outcome) => outcome.record,
            Err(e) => RunRecord {
                task: cell.task.name.clone(),
                bucket: cell.task.bucket(),
                loss: cell.loss.to_string(),
                rep: cell.rep,
                seed,
                train_n: match cell.protocol {
                    Protocol::Split { n } => Some(n),
                    Protocol::AllPositives => None,
                },
                solved: false,
                reason: format!("error: {e}"),
                wall_ms: 0.0,
                clauses: None,
                literals: None,
                nodes_expanded: 0,
                nodes_pushed: 0,
                accuracy: None,
            },
        };
        on_row(&record);
        record
    };

    let jobs = cfg.jobs.max(1).min(cells.len());
    if jobs == 1 {
        return Ok(cells.iter().map(run_cell).collect());
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<RunRecord>>> = Mutex::new(vec![None; cells.len()]);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(cell) = cells.get(i) else { break };
                let record = run_cell(cell);
                slots.lock().unwrap()[i] = Some(record);
            });
        }
    });
    Ok(slots.into_inner().unwrap().into_iter().map(|r| r.expect("every cell ran")).collect())
}

pub fn write_csv(records: &[RunRecord], out: impl Write) -> Result<(), HarnessError> {
    let mut writer = csv::Writer::from_writer(out);
    for r in records {
        writer.serialize(r).map_err(|e| HarnessError::Io(e.to_string()))?;
    }
    writer.flush().map_err(|e| HarnessError::Io(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub bucket: String,
    pub loss: String,
    pub train_n: Option<usize>,
    pub runs: usize,
    pub solved_pct: f64,
    /// Half-width of the 95% interval over repetition means.
    pub solved_ci95: f64,
    pub mean_wall_ms: f64,
    pub mean_clauses: Option<f64>,
    pub mean_literals: Option<f64>,
    pub accuracy_pct: Option<f64>,
    pub accuracy_ci95: Option<f64>,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// `1.96 * SE` of the mean of `xs`; zero for fewer than two samples.
pub fn ci95(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() - 1) as f64;
    1.96 * (var / xs.len() as f64).sqrt()
}

/// One row per (bucket, loss, train size), in first-appearance order.
pub fn summarize(records: &[RunRecord]) -> Vec<SummaryRow> {
    type Key = (String, String, Option<usize>);
    let mut order: Vec<Key> = Vec::new();
    let mut groups: BTreeMap<Key, Vec<&RunRecord>> = BTreeMap::new();
    for r in records {
        let key = (r.bucket.clone(), r.loss.clone(), r.train_n);
        if !groups.contains_key(&key) {
            order.push(key.clone());
        }
        groups.entry(key).or_default().push(r);
    }
    order
        .into_iter()
        .map(|key| {
            let rows = &groups[&key];
            let mut by_rep: BTreeMap<usize, Vec<&RunRecord>> = BTreeMap::new();
            for r in rows {
                by_rep.entry(r.rep).or_default().push(r);
            }
            let rep_solved: Vec<f64> = by_rep
                .values()
                .map(|rs| 100.0 * rs.iter().filter(|r| r.solved).count() as f64 / rs.len() as f64)
                .collect();
            let solved: Vec<&&RunRecord> = rows.iter().filter(|r| r.solved).collect();
            let sizes = |f: fn(&RunRecord) -> Option<usize>| {
                let xs: Vec<f64> = solved.iter().filter_map(|r| f(r)).map(|x| x as f64).collect();
                (!xs.is_empty()).then(|| mean(&xs))
            };
            let rep_accuracy: Vec<f64> = by_rep
                .values()
                .filter_map(|rs| {
                    let xs: Vec<f64> = rs.iter().filter_map(|r| r.accuracy).collect();
                    (!xs.is_empty()).then(|| 100.0 * mean(&xs))
                })
                .collect();
            let wall: Vec<f64> = rows.iter().map(|r| r.wall_ms).collect();
            SummaryRow {
                bucket: key.0.clone(),
                loss: key.1.clone(),
                train_n: key.2,
                runs: rows.len(),
                solved_pct: mean(&rep_solved),
                solved_ci95: ci95(&rep_solved),
                mean_wall_ms: mean(&wall),
                mean_clauses: sizes(|r| r.clauses),
                mean_literals: sizes(|r| r.literals),
                accuracy_pct: (!rep_accuracy.is_empty()).then(|| mean(&rep_accuracy)),
                accuracy_ci95: (!rep_accuracy.is_empty()).then(|| ci95(&rep_accuracy)),
            }
        })
        .collect()
}

pub fn format_summary(rows: &[SummaryRow]) -> String {
    let mut out = format!(
        "{:<12} {:<11} {:>5} {:>5} {:>16} {:>10} {:>8} {:>9} {:>16}\n",
        "bucket", "loss", "train", "runs", "solved %", "time ms", "clauses", "literals", "accuracy %"
    );
    let opt = |x: Option<f64>| x.map_or("-".to_string(), |x| format!("{x:.1}"));
    for r in rows {
        out.push_str(&format!(
            "{:<12} {:<11} {:>5} {:>5} {:>16} {:>10.1} {:>8} {:>9} {:>16}\n",
            r.bucket,
            r.loss,
            r.train_n.map_or("all".into(), |n| n.to_string()),
            r.runs,
            format!("{:.1} ± {:.1}", r.solved_pct, r.solved_ci95),
            r.mean_wall_ms,
            opt(r.mean_clauses),
            opt(r.mean_literals),
            match (r.accuracy_pct, r.accuracy_ci95) {
                (Some(a), Some(c)) => format!("{a:.1} ± {c:.1}"),
                _ => "-".into(),
            },
        ));
    }
    out
}
