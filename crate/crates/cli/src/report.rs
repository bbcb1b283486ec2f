//! Machine-readable run reports and the bench aggregator.
//!
//! JSON output is one [`RunReport`] per invocation. CSV output is one
//! [`CsvRow`] per run under [`CSV_HEADER`]. Timing lives only in the
//! `elapsed_ms` fields, so everything else is byte-stable for fixed input.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize, Serializer};
use temporal_motif::GraphStats;

/// Writes whole numbers without a fractional part so exact counts read as
/// integers.
fn count_or_float<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.fract() == 0.0 && x.abs() < 9.007_199_254_740_992e15 {
        s.serialize_i64(*x as i64)
    } else {
        s.serialize_f64(*x)
    }
}

fn opt_count_or_float<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => count_or_float(v, s),
        None => s.serialize_none(),
    }
}

/// `|estimate - exact| / exact`; zero when both are zero.
pub fn relative_error(estimate: f64, exact: u64) -> f64 {
    if exact == 0 {
        if estimate == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (estimate - exact as f64).abs() / exact as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub algorithm: String,
    pub seed: u64,
    #[serde(serialize_with = "count_or_float")]
    pub estimate: f64,
    pub relative_error: Option<f64>,
    pub sampled_edges: Option<u64>,
    pub elapsed_ms: f64,
}

/// Per-sampler means over a set of runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub algorithm: String,
    pub runs: usize,
    pub mean_estimate: f64,
    pub mean_relative_error: Option<f64>,
    pub mean_elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub algorithm: String,
    /// Built-in name or motif file path as given.
    pub motif: String,
    /// Canonical edge list, e.g. `0>1,1>2,2>0`.
    pub motif_edges: String,
    pub delta: i64,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub seed: Option<u64>,
    /// Mean over `runs` for multi-run invocations.
    #[serde(serialize_with = "opt_count_or_float")]
    pub estimate: Option<f64>,
    pub exact: Option<u64>,
    pub relative_error: Option<f64>,
    pub elapsed_ms: f64,
    pub stats: Option<GraphStats>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub runs: Vec<RunRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub summary: Vec<Summary>,
}

impl RunReport {
    /// CSV rows: the top-level result for single-run reports, otherwise one
    /// row per run (preceded by the exact row for bench).
    pub fn rows(&self) -> Vec<CsvRow> {
        let top = CsvRow {
            algorithm: self.algorithm.clone(),
            motif: self.motif_edges.clone(),
            delta: self.delta,
            p: self.p,
            q: self.q,
            seed: self.seed,
            estimate: self.estimate,
            exact: self.exact,
            relative_error: self.relative_error,
            sampled_edges: None,
            elapsed_ms: self.elapsed_ms,
        };
        if self.runs.is_empty() {
            return vec![top];
        }
        let mut rows = Vec::with_capacity(self.runs.len() + 1);
        if self.algorithm == "bench" {
            rows.push(CsvRow {
                algorithm: "exact".into(),
                p: None,
                q: None,
                seed: None,
                ..top.clone()
            });
        }
        rows.extend(self.runs.iter().map(|r| CsvRow {
            algorithm: r.algorithm.clone(),
            seed: Some(r.seed),
            estimate: Some(r.estimate),
            relative_error: r.relative_error,
            sampled_edges: r.sampled_edges,
            elapsed_ms: r.elapsed_ms,
            ..top.clone()
        }));
        rows
    }
}

pub const CSV_HEADER: [&str; 11] = [
    "algorithm",
    "motif",
    "delta",
    "p",
    "q",
    "seed",
    "estimate",
    "exact",
    "relative_error",
    "sampled_edges",
    "elapsed_ms",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub algorithm: String,
    pub motif: String,
    pub delta: i64,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub seed: Option<u64>,
    pub estimate: Option<f64>,
    pub exact: Option<u64>,
    pub relative_error: Option<f64>,
    pub sampled_edges: Option<u64>,
    pub elapsed_ms: f64,
}

pub fn write_json<W: Write>(out: &mut W, report: &RunReport) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, report)?;
    writeln!(out)
}

pub fn write_csv<W: Write>(out: W, rows: &[CsvRow]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_json<R: Read>(input: R) -> serde_json::Result<RunReport> {
    serde_json::from_reader(input)
}

pub fn read_csv<R: Read>(input: R) -> csv::Result<Vec<CsvRow>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

/// Means per sampler, in first-appearance order. Rows for `exact` and
/// other non-sampler algorithms are ignored.
pub fn aggregate<'a, I>(runs: I) -> Vec<Summary>
where
    I: IntoIterator<Item = (&'a str, f64, Option<f64>, f64)>,
{
    let mut order = Vec::new();
    let mut acc: BTreeMap<String, (usize, f64, Option<f64>, f64)> = BTreeMap::new();
    for (algorithm, estimate, rel, ms) in runs {
        if !matches!(algorithm, "es" | "ews" | "stream-es" | "stream-ews") {
            continue;
        }
        let slot = acc.entry(algorithm.to_string()).or_insert_with(|| {
            order.push(algorithm.to_string());
            (0, 0.0, Some(0.0), 0.0)
        });
        slot.0 += 1;
        slot.1 += estimate;
        slot.2 = slot.2.zip(rel).map(|(a, b)| a + b);
        slot.3 += ms;
    }
    order
        .into_iter()
        .map(|name| {
            let (n, est, rel, ms) = acc[&name];
            let n_f = n as f64;
            Summary {
                algorithm: name,
                runs: n,
                mean_estimate: est / n_f,
                mean_relative_error: rel.map(|r| r / n_f),
                mean_elapsed_ms: ms / n_f,
            }
        })
        .collect()
}

pub fn aggregate_records(runs: &[RunRecord]) -> Vec<Summary> {
    aggregate(runs.iter().map(|r| (r.algorithm.as_str(), r.estimate, r.relative_error, r.elapsed_ms)))
}

pub fn aggregate_rows(rows: &[CsvRow]) -> Vec<Summary> {
    aggregate(
        rows.iter()
            .filter_map(|r| Some((r.algorithm.as_str(), r.estimate?, r.relative_error, r.elapsed_ms))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(algorithm: &str, seed: u64, estimate: f64, rel: Option<f64>) -> RunRecord {
        RunRecord {
            algorithm: algorithm.into(),
            seed,
            estimate,
            relative_error: rel,
            sampled_edges: Some(3),
            elapsed_ms: 1.5,
        }
    }

    #[test]
    fn relative_error_definition() {
        assert_eq!(relative_error(90.0, 100), 0.1);
        assert_eq!(relative_error(110.0, 100), 0.1);
        assert_eq!(relative_error(0.0, 0), 0.0);
        assert!(relative_error(1.0, 0).is_infinite());
    }

    #[test]
    fn integral_estimates_serialize_as_integers() {
        let r = record("es", 0, 4.0, None);
        let text = serde_json::to_string(&r).unwrap();
        assert!(text.contains("\"estimate\":4,"), "{text}");
        let r = record("es", 0, 16.0 / 3.0, None);
        assert!(serde_json::to_string(&r).unwrap().contains("5.333"));
    }

    #[test]
    fn aggregation_means() {
        let runs = [
            record("es", 0, 10.0, Some(0.0)),
            record("es", 1, 20.0, Some(1.0)),
            record("ews", 0, 6.0, Some(0.4)),
        ];
        let s = aggregate_records(&runs);
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].algorithm.as_str(), s[0].runs, s[0].mean_estimate), ("es", 2, 15.0));
        assert_eq!(s[0].mean_relative_error, Some(0.5));
        assert_eq!(s[1].mean_relative_error, Some(0.4));

        let without = [record("es", 0, 1.0, None), record("es", 1, 3.0, Some(0.5))];
        assert_eq!(aggregate_records(&without)[0].mean_relative_error, None);
    }

    #[test]
    fn csv_round_trip() {
        let report = RunReport {
            algorithm: "es".into(),
            motif: "triangle-cyclic".into(),
            motif_edges: "0>1,1>2,2>0".into(),
            delta: 5,
            p: Some(0.5),
            q: Some(1.0),
            seed: Some(7),
            estimate: Some(3.0),
            exact: None,
            relative_error: None,
            elapsed_ms: 2.0,
            stats: None,
            runs: vec![record("es", 7, 2.0, None), record("es", 8, 4.0, None)],
            summary: vec![],
        };
        let mut buf = Vec::new();
        write_csv(&mut buf, &report.rows()).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(&CSV_HEADER.join(",")));
        let rows = read_csv(&buf[..]).unwrap();
        assert_eq!(rows, report.rows());
        assert_eq!(aggregate_rows(&rows), aggregate_records(&report.runs));
    }
}
