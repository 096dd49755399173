//! Verification reports: a JSON document for machines and an aligned text
//! table for people, written side by side under one stem.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::carleson::CarlesonReport;
use crate::config::Config;
use crate::error::Result;
use crate::inequality::BoundReport;

/// How a record's value is compared with its threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">")]
    Above,
}

impl Relation {
    pub fn holds(self, value: f64, threshold: f64) -> bool {
        match self {
            Relation::AtMost => value <= threshold,
            Relation::Above => value > threshold,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::AtMost => "<=",
            Relation::Above => ">",
        }
    }
}

/// One assertion: `value relation threshold`, plus context.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub relation: Relation,
    pub threshold: f64,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundReport>,
}

impl Record {
    /// A record whose verdict is the comparison itself; NaN never passes.
    pub fn compare(
        name: &str,
        value: f64,
        relation: Relation,
        threshold: f64,
        detail: String,
    ) -> Self {
        Self {
            name: name.to_string(),
            pass: relation.holds(value, threshold),
            value,
            relation,
            threshold,
            detail,
            bounds: None,
        }
    }

    pub fn at_most(name: &str, value: f64, threshold: f64, detail: String) -> Self {
        Self::compare(name, value, Relation::AtMost, threshold, detail)
    }

    pub fn above(name: &str, value: f64, threshold: f64, detail: String) -> Self {
        Self::compare(name, value, Relation::Above, threshold, detail)
    }

    /// A record for a bound sweep: the comparison must hold and the sweep
    /// itself must pass.
    pub fn with_bounds(mut self, bounds: BoundReport) -> Self {
        self.pass &= bounds.pass;
        self.bounds = Some(bounds);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: Config,
    pub pass: bool,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(suite: &str, config: &Config, records: Vec<Record>) -> Self {
        Self {
            suite: suite.to_string(),
            config: config.clone(),
            pass: records.iter().all(|r| r.pass),
            records,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn to_text(&self) -> String {
        text_table(&self.suite, self.pass, &self.records)
    }

    /// Writes `<stem>.json` and `<stem>.txt`; returns both paths.
    pub fn write(&self, stem: &Path) -> Result<(PathBuf, PathBuf)> {
        write_pair(stem, &self.to_json()?, &self.to_text())
    }
}

/// Aligned text form of a Carleson analysis, profile rows last.
pub fn carleson_text(report: &CarlesonReport) -> String {
    let point = |z: num_complex::Complex64| format!("({}, {})", z.re, z.im);
    let rows = [
        ("p", format!("{}", report.p)),
        ("m", format!("{}", report.m)),
        ("atoms", format!("{}", report.atom_count)),
        ("radius", format!("{}", report.radius)),
        ("window", format!("{}", report.window)),
        ("lattice spacing", format!("{}", report.lattice_spacing)),
        ("growth factor", format!("{}", report.growth_factor)),
        ("sup ratio", format!("{:.6e}", report.sup_ratio)),
        ("argmax center", point(report.argmax_center)),
        (
            "inner / outer max",
            format!("{:.6e} / {:.6e}", report.inner_max, report.outer_max),
        ),
        ("verdict", report.verdict.as_str().to_string()),
        (
            "embedding estimate",
            format!("{:.6e}", report.embedding_estimate),
        ),
        ("embedding argmax", point(report.embedding_argmax)),
        (
            "embedding inner / outer",
            format!(
                "{:.6e} / {:.6e}",
                report.embedding_inner_max, report.embedding_outer_max
            ),
        ),
        (
            "embedding verdict",
            report.embedding_verdict.as_str().to_string(),
        ),
        ("skipped centers", format!("{}", report.skipped_centers)),
        (
            "comparability",
            report
                .comparability
                .map_or("undefined".to_string(), |c| format!("{c:.6e}")),
        ),
        ("vanishing", format!("{}", report.vanishing)),
        (
            "resolution",
            format!(
                "{} x {}",
                report.resolution.radial_degree, report.resolution.angular_count
            ),
        ),
    ];
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (key, value) in rows {
        let _ = writeln!(out, "{key:<width$}  {value}");
    }
    let _ = writeln!(
        out,
        "\n{:>12}  {:>12}  {:>14}",
        "inner", "outer", "max ratio"
    );
    for shell in &report.profile {
        let _ = writeln!(
            out,
            "{:>12.4}  {:>12.4}  {:>14.6e}",
            shell.inner, shell.outer, shell.max_ratio
        );
    }
    out
}

/// Writes a Carleson analysis as `<stem>.json` and `<stem>.txt`.
pub fn write_carleson(report: &CarlesonReport, stem: &Path) -> Result<(PathBuf, PathBuf)> {
    let mut json = serde_json::to_string_pretty(report)?;
    json.push('\n');
    write_pair(stem, &json, &carleson_text(report))
}

pub(crate) fn write_pair(stem: &Path, json: &str, text: &str) -> Result<(PathBuf, PathBuf)> {
    if let Some(dir) = stem.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let json_path = with_suffix(stem, "json");
    let text_path = with_suffix(stem, "txt");
    std::fs::write(&json_path, json)?;
    std::fs::write(&text_path, text)?;
    Ok((json_path, text_path))
}

fn with_suffix(stem: &Path, suffix: &str) -> PathBuf {
    let mut name = stem.as_os_str().to_owned();
    name.push(".");
    name.push(suffix);
    PathBuf::from(name)
}

fn text_table(title: &str, pass: bool, records: &[Record]) -> String {
    let rows: Vec<[String; 4]> = records
        .iter()
        .map(|r| {
            [
                if r.pass { "PASS" } else { "FAIL" }.to_string(),
                r.name.clone(),
                format!(
                    "{:.6e} {} {:.3e}",
                    r.value,
                    r.relation.symbol(),
                    r.threshold
                ),
                r.detail.clone(),
            ]
        })
        .collect();
    let width = |i: usize| {
        rows.iter()
            .map(|row| row[i].chars().count())
            .max()
            .unwrap_or(0)
    };
    let (w1, w2) = (width(1), width(2));
    let mut out = format!("suite {title}: {}\n", if pass { "PASS" } else { "FAIL" });
    for [status, name, comparison, detail] in &rows {
        let _ = writeln!(out, "{status}  {name:<w1$}  {comparison:<w2$}  {detail}");
    }
    for r in records {
        if let Some(b) = &r.bounds {
            let _ = writeln!(
                out,
                "\n[{}] {}\n  grid: {}\n  ratio in [{:.6e}, {:.6e}], {} samples, {} excluded",
                r.name, b.inequality_id, b.grid, b.ratio_min, b.ratio_max, b.samples, b.excluded
            );
            for e in &b.entries {
                let _ = writeln!(
                    out,
                    "  {:<24} [{:.6e}, {:.6e}]",
                    e.label, e.ratio_min, e.ratio_max
                );
            }
            for note in &b.notes {
                let _ = writeln!(out, "  note: {note}");
            }
        }
    }
    out
}
