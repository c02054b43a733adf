//! rasad — classify an Arabic tweet corpus and track weekly category
//! ratios against an offline-event timeline.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rasad::classify::{classify_corpus, Label, SecondPassLabel, SecondPassReport, SummaryReport};
use rasad::corpus::{filter_arabic, ingest, write_classifications, Corpus, InputFormat};
use rasad::isri::IsriStemmer;
use rasad::lexicon::{CountPolicy, StemLexicon};
use rasad::timeline::{
    aggregate_weekly, builtin_events, emit_plot_data, event_window_summary, load_events,
    EventRecord, RatioDenominator,
};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rasad", version, about = "Arabic tweet-corpus analytics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every tweet and write per-tweet rows plus count reports.
    Classify(ClassifyArgs),
    /// Mine the most frequent stems across the corpus.
    Topstems(TopstemsArgs),
    /// Aggregate weekly ratio series, overlay events, summarize deltas.
    Series(SeriesArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input file(s); JSONL is canonical, CSV accepted.
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,

    /// Input format; inferred from the extension by default.
    #[arg(long, value_enum, default_value_t = FormatArg::Auto)]
    format: FormatArg,

    /// Lexicon JSON path; the built-in lexicon is used when omitted.
    #[arg(long)]
    lexicon: Option<PathBuf>,

    /// Force the built-in lexicon (conflicts with --lexicon).
    #[arg(long, conflicts_with = "lexicon")]
    builtin_lexicon: bool,

    /// Output directory (created if missing).
    #[arg(long)]
    out: PathBuf,

    /// How repeated stem matches accumulate.
    #[arg(long, value_enum, default_value_t = CountingArg::Occurrence)]
    counting: CountingArg,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct TopstemsArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// How many stems to keep.
    #[arg(long, default_value_t = 100)]
    top_k: usize,
}

#[derive(Args)]
struct SeriesArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Events CSV path.
    #[arg(long)]
    events: Option<PathBuf>,

    /// Use the bundled event timeline (conflicts with --events).
    #[arg(long, conflicts_with = "events")]
    builtin_events: bool,

    /// Weeks before the event week inside the window.
    #[arg(long, default_value_t = 1)]
    pre_weeks: usize,

    /// Weeks after the event week inside the window.
    #[arg(long, default_value_t = 2)]
    post_weeks: usize,

    /// Denominator for emitted first-pass ratios.
    #[arg(long, value_enum, default_value_t = DenominatorArg::Weekly)]
    figure1_denominator: DenominatorArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Auto,
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountingArg {
    Occurrence,
    Distinct,
}

impl From<CountingArg> for CountPolicy {
    fn from(v: CountingArg) -> CountPolicy {
        match v {
            CountingArg::Occurrence => CountPolicy::Occurrence,
            CountingArg::Distinct => CountPolicy::Distinct,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DenominatorArg {
    Weekly,
    Global,
}

impl From<DenominatorArg> for RatioDenominator {
    fn from(v: DenominatorArg) -> RatioDenominator {
        match v {
            DenominatorArg::Weekly => RatioDenominator::Weekly,
            DenominatorArg::Global => RatioDenominator::Global,
        }
    }
}

/// Config echo written into every output directory for provenance.
#[derive(Serialize)]
struct RunConfig {
    command: &'static str,
    tool_version: &'static str,
    inputs: Vec<String>,
    format: &'static str,
    lexicon_source: String,
    lexicon_version: String,
    counting: &'static str,
    week_convention: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    top_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    events_source: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pre_weeks: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    post_weeks: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    figure1_denominator: Option<&'static str>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify(args) => cmd_classify(args),
        Command::Topstems(args) => cmd_topstems(args),
        Command::Series(args) => cmd_series(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Run(err)) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

enum CliError {
    Usage(String),
    Run(rasad::Error),
}

impl From<rasad::Error> for CliError {
    fn from(e: rasad::Error) -> Self {
        CliError::Run(e)
    }
}

type CliResult = Result<(), CliError>;

struct LoadedLexicon {
    lexicon: Lexicon,
    source: String,
}

enum Lexicon {
    Builtin(&'static StemLexicon),
    Owned(Box<StemLexicon>),
}

impl LoadedLexicon {
    fn get(&self) -> &StemLexicon {
        match &self.lexicon {
            Lexicon::Builtin(l) => l,
            Lexicon::Owned(l) => l,
        }
    }
}

fn load_lexicon(common: &CommonArgs) -> Result<LoadedLexicon, CliError> {
    match &common.lexicon {
        Some(path) => Ok(LoadedLexicon {
            lexicon: Lexicon::Owned(Box::new(StemLexicon::from_file(path)?)),
            source: path.display().to_string(),
        }),
        None => Ok(LoadedLexicon {
            lexicon: Lexicon::Builtin(StemLexicon::builtin()),
            source: "builtin".to_string(),
        }),
    }
}

fn load_corpus(common: &CommonArgs) -> Result<Corpus, CliError> {
    let mut merged: Option<Corpus> = None;
    for path in &common.input {
        let format = match common.format {
            FormatArg::Jsonl => InputFormat::Jsonl,
            FormatArg::Csv => InputFormat::Csv,
            FormatArg::Auto => InputFormat::from_path(path).ok_or_else(|| {
                CliError::Usage(format!(
                    "cannot infer format of {}; pass --format",
                    path.display()
                ))
            })?,
        };
        let corpus = ingest(path, format)?;
        merged = Some(match merged {
            Some(acc) => acc.merge(corpus),
            None => corpus,
        });
    }
    let corpus = merged.ok_or_else(|| CliError::Usage("no inputs".into()))?;
    Ok(filter_arabic(corpus))
}

fn prepare_out_dir(common: &CommonArgs, config: &RunConfig) -> CliResult {
    std::fs::create_dir_all(&common.out).map_err(|source| rasad::Error::Io {
        path: common.out.clone(),
        source,
    })?;
    let path = common.out.join("run_config.json");
    let body = serde_json::to_string_pretty(config).expect("config serializes");
    std::fs::write(&path, body).map_err(|source| rasad::Error::Io { path, source })?;
    Ok(())
}

fn base_config(command: &'static str, common: &CommonArgs, lex: &LoadedLexicon) -> RunConfig {
    RunConfig {
        command,
        tool_version: env!("CARGO_PKG_VERSION"),
        inputs: common
            .input
            .iter()
            .map(|p| p.display().to_string())
            .collect(),
        format: match common.format {
            FormatArg::Auto => "auto",
            FormatArg::Jsonl => "jsonl",
            FormatArg::Csv => "csv",
        },
        lexicon_source: lex.source.clone(),
        lexicon_version: lex.get().version().to_string(),
        counting: match common.counting {
            CountingArg::Occurrence => "occurrence",
            CountingArg::Distinct => "distinct",
        },
        week_convention: "iso_monday_utc",
        top_k: None,
        events_source: None,
        pre_weeks: None,
        post_weeks: None,
        figure1_denominator: None,
    }
}

fn write_file(path: &Path, body: &str) -> CliResult {
    std::fs::write(path, body).map_err(|source| {
        CliError::Run(rasad::Error::Io {
            path: path.to_path_buf(),
            source,
        })
    })
}

fn fmt_pct(v: f64) -> String {
    format!("{v:.4}")
}

fn cmd_classify(args: ClassifyArgs) -> CliResult {
    let common = &args.common;
    let lex = load_lexicon(common)?;
    let config = base_config("classify", common, &lex);
    prepare_out_dir(common, &config)?;
    let corpus = load_corpus(common)?;

    let classifications = classify_corpus(
        &corpus,
        lex.get(),
        &IsriStemmer::new(),
        common.counting.into(),
    );
    write_classifications(&classifications, &common.out.join("classifications.csv"))?;

    let report = SummaryReport::from_classifications(&classifications);
    let mut body = String::from("label,count,pct_of_total,pct_of_categorized\n");
    for label in Label::REPORT_ORDER {
        let categorized = report
            .pct_of_categorized(label)
            .map(fmt_pct)
            .unwrap_or_default();
        body.push_str(&format!(
            "{},{},{},{}\n",
            label,
            report.count(label),
            fmt_pct(report.pct_of_total(label)),
            categorized
        ));
    }
    body.push_str(&format!("Total,{},,\n", report.total()));
    body.push_str(&format!("Categorized,{},,\n", report.categorized()));
    write_file(&common.out.join("summary.csv"), &body)?;

    let sp = SecondPassReport::from_classifications(&classifications);
    let mut body = String::from("label,count,pct_of_second_pass_total\n");
    for label in SecondPassLabel::ALL {
        body.push_str(&format!(
            "{},{},{}\n",
            label,
            sp.count(label),
            fmt_pct(sp.pct_of_second_pass_total(label))
        ));
    }
    body.push_str(&format!("SecondPassTotal,{},\n", sp.second_pass_total()));
    body.push_str(&format!("OtherTweets,{},\n", sp.other_total()));
    body.push_str(&format!(
        "EligibleShareOfOtherPct,,{}\n",
        fmt_pct(sp.eligible_share_of_other())
    ));
    body.push_str(&format!(
        "NamedShareOfOtherPct,,{}\n",
        fmt_pct(sp.named_share_of_other())
    ));
    write_file(&common.out.join("second_pass_summary.csv"), &body)?;

    println!(
        "classified {} tweets ({} categorized, {} None); outputs in {}",
        report.total(),
        report.categorized(),
        report.count(Label::None),
        common.out.display()
    );
    Ok(())
}

fn cmd_topstems(args: TopstemsArgs) -> CliResult {
    let common = &args.common;
    if args.top_k == 0 {
        return Err(CliError::Usage("--top-k must be >= 1".into()));
    }
    let lex = load_lexicon(common)?;
    let mut config = base_config("topstems", common, &lex);
    config.top_k = Some(args.top_k);
    prepare_out_dir(common, &config)?;
    let corpus = load_corpus(common)?;

    let table = lex
        .get()
        .top_stems(&corpus, args.top_k, &IsriStemmer::new())?;
    let mut body = String::from("stem,count\n");
    for (stem, count) in &table.entries {
        body.push_str(&format!("{stem},{count}\n"));
    }
    write_file(&common.out.join("top_stems.csv"), &body)?;

    println!(
        "mined {} stems from {} tokens; outputs in {}",
        table.entries.len(),
        table.total_tokens,
        common.out.display()
    );
    Ok(())
}

fn cmd_series(args: SeriesArgs) -> CliResult {
    let common = &args.common;
    let (events, events_source): (Vec<EventRecord>, String) = if args.builtin_events {
        (builtin_events(), "builtin".into())
    } else if let Some(path) = &args.events {
        (load_events(path)?, path.display().to_string())
    } else {
        return Err(CliError::Usage(
            "pass --events FILE or --builtin-events".into(),
        ));
    };
    if args.pre_weeks == 0 || args.post_weeks == 0 {
        return Err(CliError::Usage(
            "--pre-weeks and --post-weeks must be >= 1".into(),
        ));
    }
    let lex = load_lexicon(common)?;
    let mut config = base_config("series", common, &lex);
    config.events_source = Some(events_source);
    config.pre_weeks = Some(args.pre_weeks);
    config.post_weeks = Some(args.post_weeks);
    config.figure1_denominator = Some(match args.figure1_denominator {
        DenominatorArg::Weekly => "weekly",
        DenominatorArg::Global => "global",
    });
    prepare_out_dir(common, &config)?;
    let corpus = load_corpus(common)?;

    let classifications = classify_corpus(
        &corpus,
        lex.get(),
        &IsriStemmer::new(),
        common.counting.into(),
    );
    let series = aggregate_weekly(&classifications);
    emit_plot_data(
        &series,
        &events,
        args.figure1_denominator.into(),
        &common.out.join("plot_data.csv"),
    )?;

    let mut body =
        String::from("event,date,label,status,baseline_mean,window_mean,delta,delta_in_std\n");
    for event in &events {
        for &label in &event.related {
            match event_window_summary(&series, event, args.pre_weeks, args.post_weeks, label) {
                Ok(s) => body.push_str(&format!(
                    "{},{},{},ok,{},{},{},{}\n",
                    csv_field(&event.name),
                    event.date,
                    label.series_name(),
                    s.baseline_mean,
                    s.window_mean,
                    s.delta,
                    s.delta_in_std
                )),
                Err(rasad::Error::WindowOutOfRange(_)) => body.push_str(&format!(
                    "{},{},{},out_of_range,,,,\n",
                    csv_field(&event.name),
                    event.date,
                    label.series_name()
                )),
                Err(other) => return Err(other.into()),
            }
        }
    }
    write_file(&common.out.join("event_deltas.csv"), &body)?;

    println!(
        "aggregated {} weeks, {} events; outputs in {}",
        series.len(),
        events.len(),
        common.out.display()
    );
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
