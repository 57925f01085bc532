//! Experiment suites declared in TOML.
//!
//! ```toml
//! [suite]
//! name = "flatness"
//! seeds = [1, 2, 3]
//! scaled_mode_ack = true
//!
//! [[experiment]]
//! family = "grid"
//! n = [1000, 10000]
//! wmax = 2
//! epsilon = 0.5
//! task = "local_bounded"
//! edges = 200
//! span = { oracle = { mode = "ball", radius = 4, cap = 400 } }
//! ```
//!
//! `family`, `n` and `epsilon` take a value or a list; the runs are their
//! product with the seeds. Every other key belongs to the task.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use super::report::{ExperimentReport, Header};
use super::{execute_all, GraphSource, RunOptions, RunSpec, Task, TOOL_VERSION};
use crate::error::{Error, Result};
use crate::generators::{Family, GenSpec};

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct SuiteHeader {
    name: Option<String>,
    #[serde(default)]
    seeds: Vec<u64>,
    #[serde(default)]
    scaled_mode_ack: bool,
    threads: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SuiteFile {
    #[serde(default)]
    suite: SuiteHeader,
    #[serde(default)]
    experiment: Vec<toml::Spanned<toml::Table>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(xs) => xs,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Experiment {
    pub name: Option<String>,
    /// Line of the `[[experiment]]` table in the source.
    pub line: usize,
    pub params: serde_json::Value,
    pub seeds: Vec<u64>,
    pub scaled: bool,
    pub specs: Vec<RunSpec>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Suite {
    pub name: Option<String>,
    pub scaled_mode_ack: bool,
    pub threads: Option<usize>,
    pub experiments: Vec<Experiment>,
    pub warnings: Vec<String>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// Line of `key = ...` inside `span`, falling back to the span's first line.
fn key_line(text: &str, span: &std::ops::Range<usize>, key: &str) -> usize {
    let start = line_of(text, span.start);
    let body = &text[span.start.min(text.len())..span.end.min(text.len())];
    body.lines()
        .position(|l| {
            let l = l.trim_start();
            l.strip_prefix(key).is_some_and(|rest| rest.trim_start().starts_with('='))
        })
        .map_or(start, |i| start + i)
}

fn parse_error(text: &str, span: &std::ops::Range<usize>, msg: String) -> Error {
    let line = match msg.split('`').nth(1) {
        Some(key) if msg.contains("unknown field") || msg.contains("invalid") => key_line(text, span, key),
        _ => line_of(text, span.start),
    };
    Error::Parse { line, msg }
}

fn take<T: DeserializeOwned>(
    table: &mut toml::Table,
    key: &str,
    text: &str,
    span: &std::ops::Range<usize>,
) -> Result<Option<T>> {
    table
        .remove(key)
        .map(|v| {
            v.try_into().map_err(|e: toml::de::Error| Error::Parse {
                line: key_line(text, span, key),
                msg: format!("`{key}`: {}", e.message()),
            })
        })
        .transpose()
}

pub fn parse_suite(text: &str) -> Result<Suite> {
    let file: SuiteFile = toml::from_str(text).map_err(|e| Error::Parse {
        line: e.span().map_or(1, |s| line_of(text, s.start)),
        msg: e.message().to_string(),
    })?;
    if file.suite.threads == Some(0) {
        return Err(Error::Parse {
            line: key_line(text, &(0..text.len()), "threads"),
            msg: "threads must be at least 1".into(),
        });
    }
    let mut warnings = Vec::new();
    let mut experiments = Vec::new();
    for spanned in file.experiment {
        let span = spanned.span();
        let line = line_of(text, span.start);
        let mut table = spanned.into_inner();
        let params = serde_json::to_value(&table)?;
        let name: Option<String> = take(&mut table, "name", text, &span)?;
        let file_path: Option<String> = take(&mut table, "file", text, &span)?;
        let families: Option<OneOrMany<Family>> = take(&mut table, "family", text, &span)?;
        let ns: Option<OneOrMany<usize>> = take(&mut table, "n", text, &span)?;
        let eps: Option<OneOrMany<f64>> = take(&mut table, "epsilon", text, &span)?;
        let wmax: Option<u64> = take(&mut table, "wmax", text, &span)?;
        let block: Option<usize> = take(&mut table, "block", text, &span)?;
        let graph_seed: Option<u64> = take(&mut table, "graph_seed", text, &span)?;
        let seeds: Option<Vec<u64>> = take(&mut table, "seeds", text, &span)?;
        let task: Task = toml::Value::Table(table)
            .try_into()
            .map_err(|e: toml::de::Error| parse_error(text, &span, e.message().to_string()))?;

        let eps = eps.map(OneOrMany::into_vec).unwrap_or_else(|| vec![0.5]);
        if let Some(&bad) = eps.iter().find(|&&e| !(e > 0.0 && e <= 1.0)) {
            return Err(Error::Parse {
                line: key_line(text, &span, "epsilon"),
                msg: format!("epsilon {bad} is outside (0, 1]"),
            });
        }
        let mut uniq = Vec::new();
        for s in seeds.unwrap_or_else(|| file.suite.seeds.clone()) {
            if uniq.contains(&s) {
                let w = format!("line {line}: duplicate seed {s} dropped");
                log::warn!("{w}");
                warnings.push(w);
            } else {
                uniq.push(s);
            }
        }
        if uniq.is_empty() {
            uniq.push(0);
        }
        let sources: Vec<Box<dyn Fn(u64) -> GraphSource>> = match (file_path, families, ns) {
            (Some(path), None, None) => vec![Box::new(move |_| GraphSource::File(path.clone()))],
            (Some(_), _, _) => {
                return Err(Error::Parse {
                    line,
                    msg: "`file` excludes `family` and `n`".into(),
                })
            }
            (None, Some(fs), Some(ns)) => {
                let ns = ns.into_vec();
                let mut out: Vec<Box<dyn Fn(u64) -> GraphSource>> = Vec::new();
                for f in fs.into_vec() {
                    for &n in &ns {
                        out.push(Box::new(move |seed| {
                            GraphSource::Generate(GenSpec {
                                family: f,
                                n,
                                seed: graph_seed.unwrap_or(seed),
                                wmax,
                                block,
                            })
                        }));
                    }
                }
                out
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: "experiment needs `family` and `n`, or `file`".into(),
                })
            }
        };
        let mut specs = Vec::new();
        for src in &sources {
            for &e in &eps {
                for &seed in &uniq {
                    specs.push(RunSpec {
                        graph: src(seed),
                        seed,
                        epsilon: e,
                        task: task.clone(),
                    });
                }
            }
        }
        if specs.is_empty() {
            let w = format!("line {line}: empty experiment grid skipped");
            log::warn!("{w}");
            warnings.push(w);
            continue;
        }
        experiments.push(Experiment {
            name,
            line,
            params,
            seeds: uniq,
            scaled: task.is_scaled(),
            specs,
        });
    }
    Ok(Suite {
        name: file.suite.name,
        scaled_mode_ack: file.suite.scaled_mode_ack,
        threads: file.suite.threads,
        experiments,
        warnings,
    })
}

impl Suite {
    /// One report per experiment; an empty suite yields none.
    pub fn run(&self, ack: bool, opts: RunOptions) -> Result<Vec<ExperimentReport>> {
        if let Some(x) = self.experiments.iter().find(|x| x.scaled) {
            if !(ack || self.scaled_mode_ack) {
                return Err(Error::Usage(format!(
                    "experiment at line {} uses scaled parameters; pass --scaled-mode-ack or set scaled_mode_ack = true",
                    x.line
                )));
            }
        }
        let mut reports = Vec::with_capacity(self.experiments.len());
        for x in &self.experiments {
            let runs = execute_all(&x.specs, opts, self.threads)?;
            let header = Header {
                tool_version: TOOL_VERSION.to_string(),
                subcommand: "run-suite".into(),
                name: x.name.clone().or_else(|| self.name.clone()),
                params: x.params.clone(),
                scaled_mode: x.scaled,
                seeds: x.seeds.clone(),
                warnings: self.warnings.clone(),
            };
            reports.push(ExperimentReport::new(header, runs));
        }
        Ok(reports)
    }
}

pub fn run_suite(path: impl AsRef<Path>, ack: bool, opts: RunOptions) -> Result<Vec<ExperimentReport>> {
    let text = std::fs::read_to_string(path)?;
    parse_suite(&text)?.run(ack, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GRID: &str = r#"
[suite]
seeds = [1, 2, 2, 3]

[[experiment]]
family = "grid"
n = [36, 64]
wmax = 2
task = "kruskal"
"#;

    #[test]
    fn expands_grid_and_dedupes_seeds() {
        let s = parse_suite(GRID).unwrap();
        assert_eq!(s.experiments.len(), 1);
        assert_eq!(s.experiments[0].seeds, vec![1, 2, 3]);
        assert_eq!(s.experiments[0].specs.len(), 6);
        assert_eq!(s.warnings.len(), 1);
        let reports = s.run(false, RunOptions::default()).unwrap();
        assert_eq!(reports[0].runs.len(), 6);
        assert_eq!(reports[0].aggregate.groups.len(), 2);
    }

    #[test]
    fn empty_suite_is_empty_stream() {
        assert!(parse_suite("").unwrap().run(false, RunOptions::default()).unwrap().is_empty());
        let s = parse_suite("[[experiment]]\nfamily = \"grid\"\nn = []\ntask = \"kruskal\"\n").unwrap();
        assert!(s.experiments.is_empty());
    }

    #[test]
    fn diagnostics_carry_lines() {
        let bad_key = "[suite]\nseeds = [1]\n\n[[experiment]]\nfamily = \"grid\"\nn = 36\ntask = \"kruskal\"\nbogus = 3\n";
        match parse_suite(bad_key) {
            Err(Error::Parse { line, msg }) => assert_eq!(line, 8, "{msg}"),
            other => panic!("{other:?}"),
        }
        let bad_family = "[[experiment]]\nfamily = \"moebius\"\nn = 36\ntask = \"kruskal\"\n";
        assert!(matches!(parse_suite(bad_family), Err(Error::Parse { line: 2, .. })));
        let syntax = "[suite]\nseeds = [1,\n";
        assert!(matches!(parse_suite(syntax), Err(Error::Parse { .. })));
        let eps = "[[experiment]]\nfamily = \"grid\"\nn = 36\nepsilon = 2.0\ntask = \"kruskal\"\n";
        assert!(matches!(parse_suite(eps), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn scaled_needs_ack() {
        let text = "[[experiment]]\nfamily = \"grid\"\nn = 36\nwmax = 2\ntask = \"global_spanner\"\nspan = { sample_size = 2 }\n";
        let s = parse_suite(text).unwrap();
        assert!(s.run(false, RunOptions::default()).is_err());
        assert_eq!(s.run(true, RunOptions::default()).unwrap().len(), 1);
    }

    #[test]
    fn reports_are_byte_identical() {
        let s = parse_suite(GRID).unwrap();
        let write = || {
            let mut buf = Vec::new();
            for r in s.run(false, RunOptions::default()).unwrap() {
                r.write_jsonl(&mut buf).unwrap();
            }
            buf
        };
        assert_eq!(write(), write());
    }
}
