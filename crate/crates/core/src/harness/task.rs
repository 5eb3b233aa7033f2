//! Task files: JSON documents `{name, domain, params, pos, neg}` whose
//! examples are `[input, output]` pairs of state literals.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::HarnessError;
use crate::domains::int::DEFAULT_MAX;
use crate::domains::{AsciiDomain, IntDomain, RobotDomain, StringDomain};
use crate::kernel::Domain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    Int,
    Robot,
    String,
    Ascii,
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainKind::Int => "int",
            DomainKind::Robot => "robot",
            DomainKind::String => "string",
            DomainKind::Ascii => "ascii",
        })
    }
}

impl FromStr for DomainKind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "int" => Ok(DomainKind::Int),
            "robot" => Ok(DomainKind::Robot),
            "string" => Ok(DomainKind::String),
            "ascii" => Ok(DomainKind::Ascii),
            other => Err(HarnessError::Invalid(format!("unknown domain {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_int: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_n: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
}

pub type Example = (Value, Value);

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Task {
    pub name: String,
    pub domain: DomainKind,
    #[serde(default)]
    pub params: TaskParams,
    pub pos: Vec<Example>,
    #[serde(default)]
    pub neg: Vec<Example>,
    /// Grouping key for suite summaries; defaults to the domain name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bucket: Option<String>,
}

pub type TypedExamples<S> = (Vec<(S, S)>, Vec<(S, S)>);

impl Task {
    pub fn bucket(&self) -> String {
        self.bucket.clone().unwrap_or_else(|| self.domain.to_string())
    }

    pub fn load(path: &Path) -> Result<Task, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
        let task: Task = serde_json::from_str(&text)
            .map_err(|e| HarnessError::Parse(format!("{}: {e}", path.display())))?;
        task.validate()?;
        Ok(task)
    }

    pub fn save(&self, path: &Path) -> Result<(), HarnessError> {
        let text = serde_json::to_string_pretty(self).expect("tasks serialize");
        std::fs::write(path, text + "\n").map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
    }

    pub fn int_domain(&self) -> IntDomain {
        IntDomain::new(self.params.max_int.unwrap_or(DEFAULT_MAX))
    }

    /// Parses every example against the task's domain.
    pub fn validate(&self) -> Result<(), HarnessError> {
        match self.domain {
            DomainKind::Int => self.examples(&self.int_domain()).map(drop),
            DomainKind::Robot => {
                let (pos, neg) = self.examples(&RobotDomain)?;
                let n = self.params.grid_n;
                let bad = pos.iter().chain(&neg).flat_map(|(x, y)| [x, y]).any(|s| {
                    n.is_some_and(|n| s.n != n) || s.n != pos[0].0.n
                });
                if bad {
                    return Err(self.invalid("robot states disagree on grid size"));
                }
                Ok(())
            }
            DomainKind::String => self.examples(&StringDomain).map(drop),
            DomainKind::Ascii => {
                let (pos, neg) = self.examples(&AsciiDomain)?;
                for (x, y) in pos.iter().chain(&neg) {
                    if (x.height(), x.width()) != (y.height(), y.width()) {
                        return Err(self.invalid("input and output images differ in size"));
                    }
                    let dims_ok = self.params.height.is_none_or(|h| h == x.height())
                        && self.params.width.is_none_or(|w| w == x.width());
                    if !dims_ok {
                        return Err(self.invalid("image size disagrees with params"));
                    }
                }
                Ok(())
            }
        }
    }

    pub fn examples<D: Domain>(&self, domain: &D) -> Result<TypedExamples<D::State>, HarnessError> {
        if self.pos.is_empty() {
            return Err(self.invalid("a task needs at least one positive example"));
        }
        let parse = |examples: &[Example]| {
            examples
                .iter()
                .map(|(x, y)| Ok((domain.parse_state(x)?, domain.parse_state(y)?)))
                .collect::<Result<Vec<_>, HarnessError>>()
        };
        let pos = parse(&self.pos).map_err(|e| self.context(e))?;
        let neg = parse(&self.neg).map_err(|e| self.context(e))?;
        Ok((pos, neg))
    }

    fn invalid(&self, msg: &str) -> HarnessError {
        HarnessError::Invalid(format!("task {}: {msg}", self.name))
    }

    fn context(&self, e: HarnessError) -> HarnessError {
        HarnessError::Invalid(format!("task {}: {e}", self.name))
    }
}

/// All `*.json` task files in `dir`, sorted by file name.
pub fn load_suite(dir: &Path) -> Result<Vec<Task>, HarnessError> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| HarnessError::Io(format!("{}: {e}", dir.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(HarnessError::Invalid(format!("no task files in {}", dir.display())));
    }
    paths.iter().map(|p| Task::load(p)).collect()
}
