//! Golden conformance for the ISRI stemmer.
//!
//! `tests/data/isri_golden.csv` holds word→stem pairs produced by a
//! reference implementation of the algorithm (regenerate with
//! `tools/gen_isri_golden.py`). The implementation must agree on every
//! row, and quickly.

use rasad::isri::IsriStemmer;
use std::time::Instant;

const GOLDEN: &str = include_str!("data/isri_golden.csv");

fn golden_pairs() -> Vec<(String, String)> {
    let mut reader = csv::Reader::from_reader(GOLDEN.as_bytes());
    reader
        .records()
        .map(|row| {
            let row = row.expect("golden row parses");
            (row[0].to_string(), row[1].to_string())
        })
        .collect()
}

#[test]
fn golden_corpus_agreement_is_total() {
    let pairs = golden_pairs();
    assert!(
        pairs.len() >= 500,
        "golden corpus too small: {} pairs",
        pairs.len()
    );

    let stemmer = IsriStemmer::new();
    let started = Instant::now();
    let mismatches: Vec<String> = pairs
        .iter()
        .filter_map(|(word, expected)| {
            let got = stemmer.stem(word);
            (&got != expected).then(|| format!("stem({word}) = {got}, expected {expected}"))
        })
        .collect();
    let elapsed = started.elapsed();

    assert!(
        mismatches.is_empty(),
        "{} of {} golden pairs disagree:\n{}",
        mismatches.len(),
        pairs.len(),
        mismatches.join("\n")
    );
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "stemming {} words took {elapsed:?}, budget is 1s",
        pairs.len()
    );
}

#[test]
fn golden_corpus_is_idempotent_under_restemming() {
    // stems of stems stay stable for the golden outputs
    let stemmer = IsriStemmer::new();
    for (_, expected) in golden_pairs() {
        let again = stemmer.stem(&expected);
        assert_eq!(
            stemmer.stem(&again),
            again,
            "restemming diverges for {expected}"
        );
    }
}
