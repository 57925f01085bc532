//! Line-delimited experiment reports.

use std::collections::BTreeMap;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::RunSpec;
use crate::error::{Error, Result};
use crate::graph::QueryCounts;
use crate::hamiltonicity::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Jsonl,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Usage(format!("unknown format `{other}` (expected jsonl or csv)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Header {
    pub tool_version: String,
    pub subcommand: String,
    pub name: Option<String>,
    /// Parameters as given, before expansion into runs.
    pub params: serde_json::Value,
    pub scaled_mode: bool,
    pub seeds: Vec<u64>,
    pub warnings: Vec<String>,
}

/// One run. `spec` alone is enough to replay it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub index: usize,
    pub task: String,
    pub family: Option<String>,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub epsilon: f64,
    pub verdict: Option<Verdict>,
    pub estimate: Option<f64>,
    pub truth: Option<f64>,
    /// `estimate / truth`.
    pub ratio: Option<f64>,
    pub witness: Option<serde_json::Value>,
    pub queries: QueryCounts,
    /// Mean queries per answered item: a cover, an edge, or the whole run.
    pub queries_per_item: Option<f64>,
    pub details: serde_json::Value,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<f64>,
    pub spec: RunSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupAggregate {
    pub task: String,
    pub family: Option<String>,
    pub n: usize,
    pub epsilon: f64,
    pub runs: usize,
    pub errors: usize,
    pub accept_frequency: Option<f64>,
    pub mean_queries: f64,
    pub max_queries: u64,
    pub mean_queries_per_item: Option<f64>,
    pub mean_ratio: Option<f64>,
    pub max_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub runs: usize,
    pub errors: usize,
    pub groups: Vec<GroupAggregate>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum ReportLine {
    Header(Header),
    Run(Box<RunRecord>),
    Aggregate(Aggregate),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub header: Header,
    pub runs: Vec<RunRecord>,
    pub aggregate: Aggregate,
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (s, c) = xs.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
    (c > 0).then(|| s / c as f64)
}

/// Groups by (task, family, n, epsilon), in order of first appearance.
pub fn aggregate(runs: &[RunRecord]) -> Aggregate {
    let mut order: Vec<(String, Option<String>, usize, u64)> = Vec::new();
    let mut groups: BTreeMap<(String, Option<String>, usize, u64), Vec<&RunRecord>> = BTreeMap::new();
    for r in runs {
        let key = (r.task.clone(), r.family.clone(), r.n, r.epsilon.to_bits());
        let bucket = groups.entry(key.clone()).or_default();
        if bucket.is_empty() {
            order.push(key);
        }
        bucket.push(r);
    }
    let groups = order
        .into_iter()
        .map(|key| {
            let rs = &groups[&key];
            let ok: Vec<&&RunRecord> = rs.iter().filter(|r| r.error.is_none()).collect();
            let verdicts: Vec<Verdict> = ok.iter().filter_map(|r| r.verdict).collect();
            let ratios: Vec<f64> = ok.iter().filter_map(|r| r.ratio).collect();
            GroupAggregate {
                task: key.0,
                family: key.1,
                n: key.2,
                epsilon: f64::from_bits(key.3),
                runs: rs.len(),
                errors: rs.len() - ok.len(),
                accept_frequency: (!verdicts.is_empty()).then(|| {
                    verdicts.iter().filter(|&&v| v == Verdict::Accept).count() as f64 / verdicts.len() as f64
                }),
                mean_queries: mean(ok.iter().map(|r| r.queries.total() as f64)).unwrap_or(0.0),
                max_queries: ok.iter().map(|r| r.queries.total()).max().unwrap_or(0),
                mean_queries_per_item: mean(ok.iter().filter_map(|r| r.queries_per_item)),
                mean_ratio: mean(ratios.iter().copied()),
                max_ratio: ratios.iter().copied().reduce(f64::max),
            }
        })
        .collect();
    Aggregate {
        runs: runs.len(),
        errors: runs.iter().filter(|r| r.error.is_some()).count(),
        groups,
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    record: &'static str,
    index: Option<usize>,
    task: &'a str,
    family: Option<&'a str>,
    n: usize,
    m: Option<usize>,
    seed: Option<u64>,
    epsilon: f64,
    verdict: Option<String>,
    estimate: Option<f64>,
    truth: Option<f64>,
    ratio: Option<f64>,
    queries_neighbor: Option<u64>,
    queries_degree: Option<u64>,
    queries_random_neighbor: Option<u64>,
    queries_total: Option<f64>,
    queries_per_item: Option<f64>,
    runs: Option<usize>,
    accept_frequency: Option<f64>,
    max_queries: Option<u64>,
    max_ratio: Option<f64>,
    error: Option<&'a str>,
    wall_ms: Option<f64>,
    spec: Option<String>,
}

impl ExperimentReport {
    pub fn new(header: Header, runs: Vec<RunRecord>) -> Self {
        let aggregate = aggregate(&runs);
        ExperimentReport { header, runs, aggregate }
    }

    pub fn lines(&self) -> Vec<ReportLine> {
        let mut out = vec![ReportLine::Header(self.header.clone())];
        out.extend(self.runs.iter().cloned().map(|r| ReportLine::Run(Box::new(r))));
        out.push(ReportLine::Aggregate(self.aggregate.clone()));
        out
    }

    pub fn write_jsonl(&self, w: &mut dyn Write) -> Result<()> {
        for line in self.lines() {
            serde_json::to_writer(&mut *w, &line)?;
            w.write_all(b"\n")?;
        }
        Ok(())
    }

    /// Run rows then aggregate rows; the header is not representable in CSV.
    pub fn write_csv(&self, w: &mut dyn Write, with_headers: bool) -> Result<()> {
        let mut wr = csv::WriterBuilder::new().has_headers(with_headers).from_writer(w);
        let csv_err = |e: csv::Error| Error::Usage(format!("csv output failed: {e}"));
        for r in &self.runs {
            wr.serialize(CsvRow {
                record: "run",
                index: Some(r.index),
                task: &r.task,
                family: r.family.as_deref(),
                n: r.n,
                m: Some(r.m),
                seed: Some(r.seed),
                epsilon: r.epsilon,
                verdict: r.verdict.map(|v| v.to_string()),
                estimate: r.estimate,
                truth: r.truth,
                ratio: r.ratio,
                queries_neighbor: Some(r.queries.neighbor),
                queries_degree: Some(r.queries.degree),
                queries_random_neighbor: Some(r.queries.random_neighbor),
                queries_total: Some(r.queries.total() as f64),
                queries_per_item: r.queries_per_item,
                runs: None,
                accept_frequency: None,
                max_queries: None,
                max_ratio: None,
                error: r.error.as_deref(),
                wall_ms: r.wall_ms,
                spec: Some(serde_json::to_string(&r.spec)?),
            })
            .map_err(csv_err)?;
        }
        for a in &self.aggregate.groups {
            wr.serialize(CsvRow {
                record: "aggregate",
                index: None,
                task: &a.task,
                family: a.family.as_deref(),
                n: a.n,
                m: None,
                seed: None,
                epsilon: a.epsilon,
                verdict: None,
                estimate: None,
                truth: None,
                ratio: a.mean_ratio,
                queries_neighbor: None,
                queries_degree: None,
                queries_random_neighbor: None,
                queries_total: Some(a.mean_queries),
                queries_per_item: a.mean_queries_per_item,
                runs: Some(a.runs),
                accept_frequency: a.accept_frequency,
                max_queries: Some(a.max_queries),
                max_ratio: a.max_ratio,
                error: None,
                wall_ms: None,
                spec: None,
            })
            .map_err(csv_err)?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn write(&self, w: &mut dyn Write, format: Format) -> Result<()> {
        match format {
            Format::Jsonl => self.write_jsonl(w),
            Format::Csv => self.write_csv(w, true),
        }
    }
}

/// Writes a stream of reports; CSV column headers appear once.
pub fn write_reports(reports: &[ExperimentReport], w: &mut dyn Write, format: Format) -> Result<()> {
    for (i, r) in reports.iter().enumerate() {
        match format {
            Format::Jsonl => r.write_jsonl(w)?,
            Format::Csv => r.write_csv(w, i == 0)?,
        }
    }
    Ok(())
}

/// Parses a JSONL report stream back into lines.
pub fn read_jsonl(text: &str) -> Result<Vec<ReportLine>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse {
                line: i + 1,
                msg: e.to_string(),
            })
        })
        .collect()
}
