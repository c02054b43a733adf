//! Corpus analytics for Arabic social-media text.
//!
//! The pipeline: ingest tweet records (JSONL/CSV), keep Arabic content,
//! tokenize and normalize, reduce tokens to roots with the ISRI stemmer,
//! filter stop words, count category-dictionary matches per tweet,
//! assign majority-rule labels (with a Names second pass for ties), then
//! aggregate weekly ratio series and overlay an offline-event timeline.
//!
//! ```no_run
//! use rasad::classify::{classify_corpus, SummaryReport};
//! use rasad::corpus::{filter_arabic, ingest, InputFormat};
//! use rasad::isri::IsriStemmer;
//! use rasad::lexicon::{CountPolicy, StemLexicon};
//!
//! # fn main() -> rasad::Result<()> {
//! let corpus = filter_arabic(ingest("tweets.jsonl".as_ref(), InputFormat::Jsonl)?);
//! let labels = classify_corpus(
//!     &corpus,
//!     StemLexicon::builtin(),
//!     &IsriStemmer::new(),
//!     CountPolicy::default(),
//! );
//! let report = SummaryReport::from_classifications(&labels);
//! println!("categorized {} of {}", report.categorized(), report.total());
//! # Ok(())
//! # }
//! ```

pub mod classify;
pub mod corpus;
pub mod error;
pub mod isri;
pub mod lexicon;
pub mod text;
pub mod timeline;

pub use error::{Error, Result};
