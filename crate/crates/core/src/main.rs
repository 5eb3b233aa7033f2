use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use brute::domains::{AsciiDomain, IntDomain, RobotDomain, StringDomain};
use brute::harness::corpus::bundled_string_corpus;
use brute::harness::gen::{gen_suite, DEFAULT_ALPHABET};
use brute::harness::suite::format_summary;
use brute::harness::{
    load_suite, run_suite, run_task, summarize, write_csv, DomainKind, HarnessError, Libraries, LossChoice,
    RunConfig, SuiteConfig, Task,
};
use brute::invent::{enumerate_library, render_library, InventConfig};
use brute::kernel::Domain;

#[derive(Parser)]
#[command(name = "brute", version, about = "Loss-guided program synthesis with an invented predicate library")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invented library for a domain.
    Invent {
        #[arg(long)]
        domain: DomainKind,
        #[command(flatten)]
        invent: InventArgs,
    },
    /// Learn a program for one task file.
    Solve {
        #[arg(long)]
        task: PathBuf,
        #[arg(long, default_value = "default")]
        loss: LossChoice,
        #[command(flatten)]
        search: SearchArgs,
        /// Accepted for interface symmetry; search is deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write generated task files.
    Gen {
        #[arg(long)]
        domain: DomainKind,
        /// Grid side for robot, character count for ascii.
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = DEFAULT_ALPHABET)]
        alphabet: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every task of a suite under each loss and write a CSV.
    Bench {
        /// Directory of task files; omit to use the bundled string corpus.
        #[arg(long)]
        suite: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "default,entailment")]
        losses: Vec<LossChoice>,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Train/test protocol: training-set sizes, e.g. 1,3,5,7,9.
        #[arg(long, value_delimiter = ',')]
        train_sizes: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Args)]
struct InventArgs {
    #[arg(long, default_value_t = 2)]
    max_clauses: usize,
    #[arg(long, default_value_t = 3)]
    max_vars: usize,
    #[arg(long, default_value_t = 2)]
    max_body: usize,
}

impl InventArgs {
    fn config(&self) -> InventConfig {
        InventConfig::new(self.max_clauses, self.max_vars, self.max_body)
    }
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    invent: InventArgs,
    /// Seconds.
    #[arg(long, default_value_t = 60.0)]
    timeout: f64,
    #[arg(long)]
    depth_limit: Option<u32>,
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
    dedup: bool,
    /// Without dedup, still skip states repeated along one hypothesis.
    #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
    path_check: bool,
    #[arg(long)]
    node_budget: Option<u64>,
}

impl SearchArgs {
    fn config(&self) -> Result<RunConfig, HarnessError> {
        if !(self.timeout.is_finite() && self.timeout >= 0.0) {
            return Err(HarnessError::Invalid(format!("bad timeout {}", self.timeout)));
        }
        let defaults = RunConfig::default();
        Ok(RunConfig {
            invent: self.invent.config(),
            timeout: Duration::from_secs_f64(self.timeout),
            depth_limit: self.depth_limit,
            node_budget: self.node_budget.unwrap_or(defaults.node_budget),
            dedup: self.dedup,
            path_check: self.path_check,
            ..defaults
        })
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, HarnessError> {
    match command {
        Command::Invent { domain, invent } => {
            let cfg = invent.config();
            if !cfg.is_valid() {
                return Err(HarnessError::Invalid(format!("invalid invention config {cfg:?}")));
            }
            let prims = match domain {
                DomainKind::Int => IntDomain::default().primitives().to_vec(),
                DomainKind::Robot => RobotDomain.primitives().to_vec(),
                DomainKind::String => StringDomain.primitives().to_vec(),
                DomainKind::Ascii => AsciiDomain.primitives().to_vec(),
            };
            let library = enumerate_library(&prims, &cfg);
            println!("% {} predicates", library.len());
            println!("{}", render_library(&library, &prims));
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { task, loss, search, seed: _ } => {
            let task = Task::load(&task)?;
            let cfg = search.config()?;
            let libs = Libraries::new(cfg.invent);
            let outcome = run_task(&task, loss, &cfg, &libs)?;
            let r = &outcome.record;
            match &outcome.program_text {
                Some(text) => print!("{text}"),
                None => println!("% no program"),
            }
            println!(
                "% task={} loss={} reason={} wall_ms={:.1} expanded={} pushed={}{}",
                r.task,
                r.loss,
                r.reason,
                r.wall_ms,
                r.nodes_expanded,
                r.nodes_pushed,
                match (r.clauses, r.literals) {
                    (Some(c), Some(l)) => format!(" clauses={c} literals={l}"),
                    _ => String::new(),
                }
            );
            Ok(if r.solved { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Gen { domain, size, count, seed, alphabet, out } => {
            let tasks = gen_suite(domain, size, count, seed, &alphabet)?;
            fs::create_dir_all(&out).map_err(|e| HarnessError::Io(format!("{}: {e}", out.display())))?;
            for task in &tasks {
                task.save(&out.join(format!("{}.json", task.name)))?;
            }
            println!("wrote {} tasks to {}", tasks.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench { suite, losses, reps, seed, train_sizes, jobs, out, search } => {
            let tasks = match suite {
                Some(dir) => load_suite(&dir)?,
                None => bundled_string_corpus(),
            };
            let cfg = SuiteConfig { run: search.config()?, losses, reps, seed, train_sizes, jobs };
            let rows = run_suite(&tasks, &cfg, &|r| {
                eprintln!("{} {} rep={} {} {:.0}ms", r.task, r.loss, r.rep, r.reason, r.wall_ms)
            })?;
            let file = fs::File::create(&out).map_err(|e| HarnessError::Io(format!("{}: {e}", out.display())))?;
            write_csv(&rows, file)?;
            print!("{}", format_summary(&summarize(&rows)));
            Ok(ExitCode::SUCCESS)
        }
    }
}
