//! Weekly aggregation, offline-event overlay and plot-data emission.
//!
//! Classifications bucket into ISO weeks (Monday start, UTC). First-pass
//! ratios divide by the weekly tweet total; second-pass ratios divide by
//! the week's count of second-pass-labeled tweets. Weeks are contiguous
//! over the corpus span; a week with no tweets carries total 0 and
//! undefined ratios, emitted as empty cells.

use crate::classify::{Label, SecondPassLabel, TweetClassification};
use crate::error::{Error, Result};
use chrono::{DateTime, Datelike, Duration, NaiveDate, Utc};
use std::io::Write;
use std::path::Path;

/// Monday of the ISO week containing the instant, in UTC.
pub fn week_start(at: DateTime<Utc>) -> NaiveDate {
    let date = at.date_naive();
    date - Duration::days(i64::from(date.weekday().num_days_from_monday()))
}

/// One week of aggregated counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeeklySeries {
    pub week_start: NaiveDate,
    pub total: u64,
    label_counts: [u64; 6],
    second_pass_counts: [u64; 4],
}

impl WeeklySeries {
    fn empty(week_start: NaiveDate) -> Self {
        WeeklySeries {
            week_start,
            total: 0,
            label_counts: [0; 6],
            second_pass_counts: [0; 4],
        }
    }

    pub fn label_count(&self, label: Label) -> u64 {
        self.label_counts[label.index()]
    }

    pub fn second_pass_count(&self, label: SecondPassLabel) -> u64 {
        self.second_pass_counts[label.index()]
    }

    /// Weekly count of second-pass-labeled tweets (Figure-II style
    /// denominator).
    pub fn second_pass_total(&self) -> u64 {
        self.second_pass_counts.iter().sum()
    }

    /// `None` when the week has no tweets.
    pub fn ratio(&self, label: Label) -> Option<f64> {
        (self.total > 0).then(|| self.label_count(label) as f64 / self.total as f64)
    }

    pub fn second_pass_ratio(&self, label: SecondPassLabel) -> Option<f64> {
        let denom = self.second_pass_total();
        (denom > 0).then(|| self.second_pass_count(label) as f64 / denom as f64)
    }
}

/// Bucket classifications into contiguous ISO weeks.
pub fn aggregate_weekly(classifications: &[TweetClassification]) -> Vec<WeeklySeries> {
    use std::collections::BTreeMap;
    let mut by_week: BTreeMap<NaiveDate, WeeklySeries> = BTreeMap::new();
    for c in classifications {
        let ws = week_start(c.created_at);
        let entry = by_week.entry(ws).or_insert_with(|| WeeklySeries::empty(ws));
        entry.total += 1;
        entry.label_counts[c.label.index()] += 1;
        if let Some(sp) = c.second_pass {
            entry.second_pass_counts[sp.index()] += 1;
        }
    }
    let (Some(&first), Some(&last)) = (by_week.keys().next(), by_week.keys().next_back()) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut week = first;
    while week <= last {
        out.push(
            by_week
                .remove(&week)
                .unwrap_or_else(|| WeeklySeries::empty(week)),
        );
        week += Duration::days(7);
    }
    out
}

/// A named offline event with its related categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventRecord {
    pub name: String,
    pub date: NaiveDate,
    pub description: String,
    pub related: Vec<Label>,
}

const BUILTIN_EVENTS_SRC: &str = include_str!("../data/events.csv");

/// The bundled offline-event timeline.
pub fn builtin_events() -> Vec<EventRecord> {
    parse_events(BUILTIN_EVENTS_SRC, Path::new("<builtin>")).expect("builtin events parse")
}

/// Load events from `name,date,description,categories` CSV
/// (ISO dates, `;`-separated category tags).
pub fn load_events(path: &Path) -> Result<Vec<EventRecord>> {
    let src = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_events(&src, path)
}

fn parse_events(src: &str, path: &Path) -> Result<Vec<EventRecord>> {
    let mut reader = csv::Reader::from_reader(src.as_bytes());
    let mut out: Vec<EventRecord> = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let rownum = i + 2; // header is row 1
        let bad = |message: String| Error::EventRow {
            path: path.to_path_buf(),
            row: rownum,
            message,
        };
        let row = row.map_err(|e| bad(e.to_string()))?;
        let get = |j: usize| row.get(j).unwrap_or("").to_string();
        let name = get(0);
        if name.is_empty() {
            return Err(bad("empty event name".into()));
        }
        if out.iter().any(|e| e.name == name) {
            return Err(bad(format!("duplicate event name {name}")));
        }
        let date = get(1)
            .parse::<NaiveDate>()
            .map_err(|e| bad(format!("bad date {:?}: {e}", get(1))))?;
        let mut related = Vec::new();
        for tag in get(3).split(';').filter(|t| !t.is_empty()) {
            related
                .push(Label::from_name(tag).ok_or_else(|| bad(format!("unknown category {tag}")))?);
        }
        out.push(EventRecord {
            name,
            date,
            description: get(2),
            related,
        });
    }
    Ok(out)
}

/// Ratio change around one event week for one label.
///
/// `window_mean` averages the label's ratio over
/// `[event_week - pre_weeks, event_week + post_weeks]`; `baseline_mean`
/// and `baseline_std` (population σ) come from every week outside that
/// window. Zero-total weeks are skipped on both sides. When the baseline
/// is perfectly flat (σ = 0), `delta_in_std` is 0 for a zero delta and
/// ±∞ otherwise.
#[derive(Debug, Clone, PartialEq)]
pub struct EventWindowSummary {
    pub event: String,
    pub label: Label,
    pub window_start: NaiveDate,
    pub window_end: NaiveDate,
    pub baseline_weeks: usize,
    pub baseline_mean: f64,
    pub baseline_std: f64,
    pub window_mean: f64,
    pub delta: f64,
    pub delta_in_std: f64,
}

pub fn event_window_summary(
    series: &[WeeklySeries],
    event: &EventRecord,
    pre_weeks: usize,
    post_weeks: usize,
    label: Label,
) -> Result<EventWindowSummary> {
    if pre_weeks < 1 || post_weeks < 1 {
        return Err(Error::InvalidArgument(
            "pre_weeks and post_weeks must be >= 1".into(),
        ));
    }
    let event_week = week_start(
        event
            .date
            .and_hms_opt(0, 0, 0)
            .expect("midnight exists")
            .and_utc(),
    );
    let idx = series
        .iter()
        .position(|w| w.week_start == event_week)
        .ok_or_else(|| {
            Error::WindowOutOfRange(format!(
                "event {} ({}) falls outside the series span",
                event.name, event.date
            ))
        })?;
    let start = idx.checked_sub(pre_weeks).ok_or_else(|| {
        Error::WindowOutOfRange(format!(
            "window extends {pre_weeks} weeks before the series start"
        ))
    })?;
    let end = idx + post_weeks;
    if end >= series.len() {
        return Err(Error::WindowOutOfRange(format!(
            "window extends {post_weeks} weeks past the series end"
        )));
    }

    let window: Vec<f64> = (start..=end)
        .filter_map(|i| series[i].ratio(label))
        .collect();
    let baseline: Vec<f64> = (0..series.len())
        .filter(|i| *i < start || *i > end)
        .filter_map(|i| series[i].ratio(label))
        .collect();
    if window.is_empty() || baseline.is_empty() {
        return Err(Error::WindowOutOfRange(
            "window or baseline contains no populated weeks".into(),
        ));
    }

    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let baseline_mean = mean(&baseline);
    let baseline_std = (baseline
        .iter()
        .map(|r| (r - baseline_mean).powi(2))
        .sum::<f64>()
        / baseline.len() as f64)
        .sqrt();
    let window_mean = mean(&window);
    let delta = window_mean - baseline_mean;
    let delta_in_std = if baseline_std > 0.0 {
        delta / baseline_std
    } else if delta == 0.0 {
        0.0
    } else {
        f64::INFINITY.copysign(delta)
    };

    Ok(EventWindowSummary {
        event: event.name.clone(),
        label,
        window_start: series[start].week_start,
        window_end: series[end].week_start,
        baseline_weeks: baseline.len(),
        baseline_mean,
        baseline_std,
        window_mean,
        delta,
        delta_in_std,
    })
}

/// Denominator convention for emitted first-pass ratios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RatioDenominator {
    /// Weekly tweet total (default).
    #[default]
    Weekly,
    /// Whole-dataset total, rendering each series a scaled count.
    Global,
}

/// Emit long-format plot data
/// (`week_start,series,count,denominator,ratio`) plus an events sidecar
/// (`name,date,label_hint`) next to it at `<path stem>.events.csv`.
/// Output is byte-identical for identical inputs.
pub fn emit_plot_data(
    series: &[WeeklySeries],
    events: &[EventRecord],
    denominator: RatioDenominator,
    path: &Path,
) -> Result<()> {
    if series.is_empty() {
        return Err(Error::InvalidArgument(
            "emit_plot_data: series is empty".into(),
        ));
    }
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let global_total: u64 = series.iter().map(|w| w.total).sum();
    let has_second_pass = series.iter().any(|w| w.second_pass_total() > 0);

    let mut out = String::new();
    out.push_str("week_start,series,count,denominator,ratio\n");
    for week in series {
        for label in Label::ALL {
            let count = week.label_count(label);
            let (denom, ratio) = match denominator {
                RatioDenominator::Weekly => (week.total, week.ratio(label)),
                RatioDenominator::Global => (
                    global_total,
                    (global_total > 0).then(|| count as f64 / global_total as f64),
                ),
            };
            push_row(
                &mut out,
                week.week_start,
                label.series_name(),
                count,
                denom,
                ratio,
            );
        }
        if has_second_pass {
            for sp in SecondPassLabel::ALL {
                push_row(
                    &mut out,
                    week.week_start,
                    sp.series_name(),
                    week.second_pass_count(sp),
                    week.second_pass_total(),
                    week.second_pass_ratio(sp),
                );
            }
        }
    }
    let mut file = std::fs::File::create(path).map_err(io_err)?;
    file.write_all(out.as_bytes()).map_err(io_err)?;

    let sidecar = events_sidecar_path(path);
    let mut out = String::new();
    out.push_str("name,date,label_hint\n");
    for event in events {
        let hint = event
            .related
            .iter()
            .map(|l| l.series_name())
            .collect::<Vec<_>>()
            .join(";");
        out.push_str(&format!(
            "{},{},{}\n",
            csv_quote(&event.name),
            event.date,
            hint
        ));
    }
    let mut file = std::fs::File::create(&sidecar).map_err(|source| Error::Io {
        path: sidecar.clone(),
        source,
    })?;
    file.write_all(out.as_bytes()).map_err(io_err)?;
    Ok(())
}

/// Sidecar path for an emitted plot-data file.
pub fn events_sidecar_path(plot_path: &Path) -> std::path::PathBuf {
    plot_path.with_extension("events.csv")
}

fn push_row(
    out: &mut String,
    week: NaiveDate,
    series: &str,
    count: u64,
    denominator: u64,
    ratio: Option<f64>,
) {
    match ratio {
        Some(r) => out.push_str(&format!("{week},{series},{count},{denominator},{r}\n")),
        Option::None => out.push_str(&format!("{week},{series},{count},{denominator},\n")),
    }
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
