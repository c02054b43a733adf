//! Tweet record ingestion, validation, filtering and result persistence.
//!
//! JSON Lines is the canonical input (one object per line with `id`,
//! `created_at`, `user_id`, `text`, optional `lang`); CSV with the same
//! columns is accepted for convenience. Malformed rows and duplicate ids
//! are counted per rejection reason so that
//! `retained + rejected == ingested` always holds across an
//! ingest/filter chain. Duplicate ids keep the first occurrence.

use crate::classify::{Label, SecondPassLabel, TweetClassification};
use crate::error::{Error, Result};
use crate::lexicon::{Category, CategoryCounts};
use crate::text;
use crate::timeline::week_start;
use chrono::{DateTime, NaiveDate, NaiveDateTime, Utc};
use serde::Deserialize;
use std::collections::HashSet;
use std::io::{BufRead, BufReader};
use std::path::Path;

/// One ingested post.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TweetRecord {
    pub id: String,
    pub created_at: DateTime<Utc>,
    pub user_id: String,
    pub text: String,
    pub lang: Option<String>,
}

/// Rejection tallies by reason.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RejectCounts {
    pub malformed: u64,
    pub duplicate: u64,
    pub non_arabic: u64,
}

impl RejectCounts {
    pub fn total(&self) -> u64 {
        self.malformed + self.duplicate + self.non_arabic
    }
}

/// An ingested corpus. Immutable after construction and safe to share.
#[derive(Debug, Clone)]
pub struct Corpus {
    records: Vec<TweetRecord>,
    pub source_path: String,
    pub ingested: u64,
    pub rejected: RejectCounts,
}

impl Corpus {
    pub fn records(&self) -> &[TweetRecord] {
        &self.records
    }

    pub fn retained(&self) -> u64 {
        self.records.len() as u64
    }

    /// `retained + Σ rejected == ingested`.
    pub fn is_conserved(&self) -> bool {
        self.retained() + self.rejected.total() == self.ingested
    }

    /// Build a corpus from in-memory records, enforcing the same
    /// validation and first-wins id dedup as file ingestion.
    pub fn from_records(records: Vec<TweetRecord>, source: &str) -> Corpus {
        let ingested = records.len() as u64;
        let mut rejected = RejectCounts::default();
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(records.len());
        for rec in records {
            if rec.id.is_empty() || rec.text.trim().is_empty() {
                rejected.malformed += 1;
            } else if !seen.insert(rec.id.clone()) {
                rejected.duplicate += 1;
            } else {
                kept.push(rec);
            }
        }
        Corpus {
            records: kept,
            source_path: source.to_string(),
            ingested,
            rejected,
        }
    }

    /// Fold another corpus in, rejecting ids already retained here.
    pub fn merge(mut self, other: Corpus) -> Corpus {
        let mut seen: HashSet<String> = self.records.iter().map(|r| r.id.clone()).collect();
        self.ingested += other.ingested;
        self.rejected.malformed += other.rejected.malformed;
        self.rejected.duplicate += other.rejected.duplicate;
        self.rejected.non_arabic += other.rejected.non_arabic;
        for rec in other.records {
            if seen.insert(rec.id.clone()) {
                self.records.push(rec);
            } else {
                self.rejected.duplicate += 1;
            }
        }
        self.source_path = format!("{},{}", self.source_path, other.source_path);
        self
    }
}

/// Supported input encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Jsonl,
    Csv,
}

impl InputFormat {
    /// Infer from the file extension.
    pub fn from_path(path: &Path) -> Option<InputFormat> {
        match path.extension()?.to_str()? {
            "jsonl" | "ndjson" | "json" => Some(InputFormat::Jsonl),
            "csv" => Some(InputFormat::Csv),
            _ => None,
        }
    }
}

#[derive(Debug, Deserialize)]
struct RawRecord {
    id: String,
    created_at: String,
    #[serde(default)]
    user_id: String,
    text: String,
    #[serde(default)]
    lang: Option<String>,
}

/// Timestamps without an explicit zone are read as UTC so weekly
/// bucketing stays unambiguous.
fn parse_timestamp(s: &str) -> Option<DateTime<Utc>> {
    if let Ok(dt) = DateTime::parse_from_rfc3339(s) {
        return Some(dt.with_timezone(&Utc));
    }
    for fmt in ["%Y-%m-%dT%H:%M:%S", "%Y-%m-%d %H:%M:%S"] {
        if let Ok(naive) = NaiveDateTime::parse_from_str(s, fmt) {
            return Some(naive.and_utc());
        }
    }
    if let Ok(date) = NaiveDate::parse_from_str(s, "%Y-%m-%d") {
        return Some(date.and_hms_opt(0, 0, 0)?.and_utc());
    }
    None
}

fn validate(
    raw: RawRecord,
    seen: &mut HashSet<String>,
) -> std::result::Result<TweetRecord, RejectReason> {
    if raw.id.is_empty() || raw.text.trim().is_empty() {
        return Err(RejectReason::Malformed);
    }
    let created_at = parse_timestamp(&raw.created_at).ok_or(RejectReason::Malformed)?;
    if !seen.insert(raw.id.clone()) {
        return Err(RejectReason::Duplicate);
    }
    Ok(TweetRecord {
        id: raw.id,
        created_at,
        user_id: raw.user_id,
        text: raw.text,
        lang: raw.lang.filter(|l| !l.is_empty()),
    })
}

enum RejectReason {
    Malformed,
    Duplicate,
}

/// Ingest a file. Malformed lines/rows and duplicate ids are counted,
/// not fatal; a file yielding zero valid records is an error.
pub fn ingest(path: &Path, format: InputFormat) -> Result<Corpus> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut records = Vec::new();
    let mut rejected = RejectCounts::default();
    let mut ingested = 0u64;
    let mut seen = HashSet::new();

    match format {
        InputFormat::Jsonl => {
            let file = std::fs::File::open(path).map_err(io_err)?;
            for line in BufReader::new(file).lines() {
                let line = line.map_err(io_err)?;
                if line.trim().is_empty() {
                    continue;
                }
                ingested += 1;
                match serde_json::from_str::<RawRecord>(&line) {
                    Ok(raw) => match validate(raw, &mut seen) {
                        Ok(rec) => records.push(rec),
                        Err(RejectReason::Malformed) => rejected.malformed += 1,
                        Err(RejectReason::Duplicate) => rejected.duplicate += 1,
                    },
                    Err(_) => rejected.malformed += 1,
                }
            }
        }
        InputFormat::Csv => {
            let mut reader = csv::ReaderBuilder::new()
                .flexible(true)
                .from_path(path)
                .map_err(|source| Error::Csv {
                    path: path.to_path_buf(),
                    source,
                })?;
            for row in reader.deserialize::<RawRecord>() {
                ingested += 1;
                match row {
                    Ok(raw) => match validate(raw, &mut seen) {
                        Ok(rec) => records.push(rec),
                        Err(RejectReason::Malformed) => rejected.malformed += 1,
                        Err(RejectReason::Duplicate) => rejected.duplicate += 1,
                    },
                    Err(_) => rejected.malformed += 1,
                }
            }
        }
    }

    if records.is_empty() {
        return Err(Error::EmptyCorpus {
            path: path.to_path_buf(),
            ingested,
        });
    }
    Ok(Corpus {
        records,
        source_path: path.display().to_string(),
        ingested,
        rejected,
    })
}

/// A record counts as Arabic when its language tag says so, or — absent a
/// tag — when more than half of its letter codepoints sit in the Arabic
/// blocks.
pub fn is_arabic_tweet(rec: &TweetRecord) -> bool {
    match rec.lang.as_deref() {
        Some("ar") => true,
        Some(_) => false,
        None => {
            let mut arabic = 0u64;
            let mut letters = 0u64;
            for c in rec.text.chars().filter(|c| c.is_alphabetic()) {
                letters += 1;
                if text::is_arabic_block(c) {
                    arabic += 1;
                }
            }
            letters > 0 && arabic * 2 > letters
        }
    }
}

/// Keep Arabic records, tallying the rest under `non_arabic`.
pub fn filter_arabic(corpus: Corpus) -> Corpus {
    let Corpus {
        records,
        source_path,
        ingested,
        mut rejected,
    } = corpus;
    let kept: Vec<TweetRecord> = records.into_iter().filter(is_arabic_tweet).collect();
    rejected.non_arabic = ingested - rejected.malformed - rejected.duplicate - kept.len() as u64;
    Corpus {
        records: kept,
        source_path,
        ingested,
        rejected,
    }
}

/// Write classification rows:
/// `id,week,violence,theological,sectarian,names,label,second_pass_label`.
pub fn write_classifications(results: &[TweetClassification], path: &Path) -> Result<()> {
    if results.is_empty() {
        return Err(Error::NoClassifications);
    }
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut writer = csv::Writer::from_path(path).map_err(csv_err)?;
    writer
        .write_record([
            "id",
            "week",
            "violence",
            "theological",
            "sectarian",
            "names",
            "label",
            "second_pass_label",
        ])
        .map_err(csv_err)?;
    for r in results {
        writer
            .write_record([
                r.tweet_id.as_str(),
                &week_start(r.created_at).to_string(),
                &r.counts.get(Category::Violence).to_string(),
                &r.counts.get(Category::Theological).to_string(),
                &r.counts.get(Category::Sectarian).to_string(),
                &r.counts.get(Category::Names).to_string(),
                r.label.name(),
                r.second_pass.map(|s| s.name()).unwrap_or(""),
            ])
            .map_err(csv_err)?;
    }
    writer.flush().map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(())
}

/// One row read back from a classification CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRow {
    pub id: String,
    pub week: NaiveDate,
    pub counts: CategoryCounts,
    pub label: Label,
    pub second_pass: Option<SecondPassLabel>,
}

pub fn read_classifications(path: &Path) -> Result<Vec<ClassificationRow>> {
    let csv_err = |source| Error::Csv {
        path: path.to_path_buf(),
        source,
    };
    let bad = |row: usize, msg: &str| {
        Error::InvalidArgument(format!("{}, row {row}: {msg}", path.display()))
    };
    let mut reader = csv::Reader::from_path(path).map_err(csv_err)?;
    let mut out = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(csv_err)?;
        let field = |j: usize| row.get(j).ok_or_else(|| bad(i, "missing field"));
        let num = |j: usize| -> Result<u32> { field(j)?.parse().map_err(|_| bad(i, "bad count")) };
        let week = field(1)?
            .parse::<NaiveDate>()
            .map_err(|_| bad(i, "bad week date"))?;
        let label = Label::from_name(field(6)?).ok_or_else(|| bad(i, "bad label"))?;
        let sp = field(7)?;
        let second_pass = if sp.is_empty() {
            None
        } else {
            Some(SecondPassLabel::from_name(sp).ok_or_else(|| bad(i, "bad second-pass label"))?)
        };
        out.push(ClassificationRow {
            id: field(0)?.to_string(),
            week,
            counts: CategoryCounts::new(num(2)?, num(3)?, num(4)?, num(5)?),
            label,
            second_pass,
        });
    }
    Ok(out)
}
