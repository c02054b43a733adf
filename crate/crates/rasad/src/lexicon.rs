//! Category dictionaries, stop words and match semantics.
//!
//! The built-in lexicon carries four categories (Violence 9, Theological
//! 12, Sectarian 4, Names 9 — 34 stems total) plus a 20-word stop list.
//! Entries are either `exact_stem` (equality against stemmed tokens) or
//! `compound_containment` (substring scan over the normalized tweet text
//! with `_` matching `_` or a single space). Frequencies attached to
//! entries are corpus metadata only and never influence matching.
//!
//! Lexicon files are UTF-8 JSON; lines whose first non-blank characters
//! are `//` are stripped before parsing so optional entries can ship
//! commented out.

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::isri::IsriStemmer;
use crate::text;
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::path::Path;

const BUILTIN_SRC: &str = include_str!("../data/lexicon.json");

static BUILTIN: Lazy<StemLexicon> = Lazy::new(|| {
    let lex = StemLexicon::from_json_str(BUILTIN_SRC, "builtin").expect("builtin lexicon parses");
    let sizes: Vec<usize> = Category::ALL
        .iter()
        .map(|&c| lex.entries(c).len())
        .collect();
    assert_eq!(sizes, vec![9, 12, 4, 9], "builtin lexicon cardinality");
    assert_eq!(lex.stop_words.len(), 20, "builtin stop-word count");
    lex
});

/// The four topical categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    Violence,
    Theological,
    Sectarian,
    Names,
}

impl Category {
    pub const ALL: [Category; 4] = [
        Category::Violence,
        Category::Theological,
        Category::Sectarian,
        Category::Names,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::Violence => "Violence",
            Category::Theological => "Theological",
            Category::Sectarian => "Sectarian",
            Category::Names => "Names",
        }
    }

    pub fn from_name(name: &str) -> Option<Category> {
        Category::ALL.iter().copied().find(|c| c.name() == name)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-tweet stem counts for the four categories.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CategoryCounts([u32; 4]);

impl CategoryCounts {
    pub fn new(violence: u32, theological: u32, sectarian: u32, names: u32) -> Self {
        CategoryCounts([violence, theological, sectarian, names])
    }

    pub fn get(&self, cat: Category) -> u32 {
        self.0[cat.index()]
    }

    pub fn set(&mut self, cat: Category, v: u32) {
        self.0[cat.index()] = v;
    }

    pub fn add(&mut self, cat: Category, v: u32) {
        self.0[cat.index()] += v;
    }

    pub fn iter(&self) -> impl Iterator<Item = (Category, u32)> + '_ {
        Category::ALL.iter().map(move |&c| (c, self.get(c)))
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn merge(&self, other: &CategoryCounts) -> CategoryCounts {
        let mut out = *self;
        for (c, v) in other.iter() {
            out.add(c, v);
        }
        out
    }
}

/// How repeated matches accumulate: each occurrence counts, or each
/// distinct lexicon entry counts once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountPolicy {
    #[default]
    Occurrence,
    Distinct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchMode {
    ExactStem,
    CompoundContainment,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub stem: String,
    pub match_mode: MatchMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_frequency: Option<u64>,
}

#[derive(Deserialize)]
struct LexiconFile {
    #[serde(default)]
    version: Option<String>,
    categories: HashMap<String, Vec<LexiconEntry>>,
    stop_words: Vec<String>,
}

/// Loaded, validated category dictionary. Immutable after construction.
pub struct StemLexicon {
    version: String,
    categories: [Vec<LexiconEntry>; 4],
    stop_words: HashSet<String>,
    exact_index: HashMap<String, Category>,
    compounds: Vec<(Category, Vec<char>)>,
}

impl StemLexicon {
    /// The built-in lexicon.
    pub fn builtin() -> &'static StemLexicon {
        &BUILTIN
    }

    pub fn from_file(path: &Path) -> Result<StemLexicon> {
        let src = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json_str(&src, &path.display().to_string())
    }

    pub fn from_json_str(src: &str, origin: &str) -> Result<StemLexicon> {
        // tolerate //-comment lines so optional entries can ship disabled
        let cleaned: String = src
            .lines()
            .filter(|l| !l.trim_start().starts_with("//"))
            .collect::<Vec<_>>()
            .join("\n");
        let file: LexiconFile =
            serde_json::from_str(&cleaned).map_err(|e| Error::Lexicon(format!("{origin}: {e}")))?;

        let mut categories: [Vec<LexiconEntry>; 4] = Default::default();
        for (name, entries) in &file.categories {
            let cat = Category::from_name(name)
                .ok_or_else(|| Error::Lexicon(format!("{origin}: unknown category {name}")))?;
            categories[cat.index()] = entries.clone();
        }

        let mut exact_index = HashMap::new();
        let mut compounds = Vec::new();
        let mut seen: HashMap<&str, Category> = HashMap::new();
        for cat in Category::ALL {
            for entry in &categories[cat.index()] {
                if let Some(prev) = seen.insert(entry.stem.as_str(), cat) {
                    return Err(Error::Lexicon(format!(
                        "{origin}: stem {} appears in both {prev} and {cat}",
                        entry.stem
                    )));
                }
                let has_underscore = entry.stem.contains('_');
                match entry.match_mode {
                    MatchMode::CompoundContainment if !has_underscore => {
                        return Err(Error::Lexicon(format!(
                            "{origin}: {} is compound_containment but has no '_'",
                            entry.stem
                        )));
                    }
                    MatchMode::ExactStem if has_underscore => {
                        return Err(Error::Lexicon(format!(
                            "{origin}: {} contains '_' but is exact_stem",
                            entry.stem
                        )));
                    }
                    _ => {}
                }
                match entry.match_mode {
                    MatchMode::ExactStem => {
                        exact_index.insert(entry.stem.clone(), cat);
                    }
                    MatchMode::CompoundContainment => {
                        compounds.push((cat, text::normalize_text(&entry.stem).chars().collect()));
                    }
                }
            }
        }

        Ok(StemLexicon {
            version: file.version.unwrap_or_else(|| origin.to_string()),
            categories,
            stop_words: file.stop_words.into_iter().collect(),
            exact_index,
            compounds,
        })
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn entries(&self, cat: Category) -> &[LexiconEntry] {
        &self.categories[cat.index()]
    }

    pub fn stop_words(&self) -> &HashSet<String> {
        &self.stop_words
    }

    /// Surface stop-word check, applied before stemming.
    pub fn is_stop(&self, word: &str) -> bool {
        self.stop_words.contains(word)
    }

    /// tokenize → normalize → stop-word removal → stem.
    pub fn prepare_stems(&self, tweet_text: &str, stemmer: &IsriStemmer) -> Vec<String> {
        text::tokenize(tweet_text)
            .iter()
            .filter_map(text::normalize)
            .filter(|t| !self.is_stop(&t.surface))
            .map(|t| stemmer.stem(&t.surface))
            .collect()
    }

    /// Count category matches for one tweet. `stems` are the prepared
    /// (stemmed, stop-filtered) tokens; `normalized_text` is the
    /// character-normalized tweet used for compound containment.
    pub fn match_categories(
        &self,
        stems: &[String],
        normalized_text: &str,
        policy: CountPolicy,
    ) -> CategoryCounts {
        let mut counts = CategoryCounts::default();
        match policy {
            CountPolicy::Occurrence => {
                for stem in stems {
                    if let Some(&cat) = self.exact_index.get(stem.as_str()) {
                        counts.add(cat, 1);
                    }
                }
            }
            CountPolicy::Distinct => {
                let present: HashSet<&str> = stems.iter().map(String::as_str).collect();
                for (stem, &cat) in &self.exact_index {
                    if present.contains(stem.as_str()) {
                        counts.add(cat, 1);
                    }
                }
            }
        }
        if !self.compounds.is_empty() {
            let haystack: Vec<char> = normalized_text.chars().collect();
            for (cat, pattern) in &self.compounds {
                let n = count_containment(&haystack, pattern);
                match policy {
                    CountPolicy::Occurrence => counts.add(*cat, n),
                    CountPolicy::Distinct => counts.add(*cat, u32::from(n > 0)),
                }
            }
        }
        counts
    }

    /// Mine the `k` most frequent stems over the retained records of a
    /// corpus. Ties break by codepoint order of the stem.
    pub fn top_stems(
        &self,
        corpus: &Corpus,
        k: usize,
        stemmer: &IsriStemmer,
    ) -> Result<StemFrequencyTable> {
        if k == 0 {
            return Err(Error::InvalidArgument("top_stems: k must be >= 1".into()));
        }
        let mut freq: HashMap<String, u64> = HashMap::new();
        let mut total_tokens = 0u64;
        for rec in corpus.records() {
            for stem in self.prepare_stems(&rec.text, stemmer) {
                total_tokens += 1;
                *freq.entry(stem).or_insert(0) += 1;
            }
        }
        let mut entries: Vec<(String, u64)> = freq.into_iter().collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        entries.truncate(k);
        Ok(StemFrequencyTable {
            entries,
            total_tokens,
        })
    }
}

/// Stem frequencies over a corpus, ordered by count descending then stem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StemFrequencyTable {
    pub entries: Vec<(String, u64)>,
    pub total_tokens: u64,
}

/// Non-overlapping occurrences of `pattern` in `text`, with `_` in the
/// pattern matching either `_` or a single space.
fn count_containment(text: &[char], pattern: &[char]) -> u32 {
    if pattern.is_empty() || pattern.len() > text.len() {
        return 0;
    }
    let mut count = 0;
    let mut i = 0;
    while i + pattern.len() <= text.len() {
        let hit = pattern
            .iter()
            .zip(&text[i..i + pattern.len()])
            .all(|(&p, &t)| p == t || (p == '_' && t == ' '));
        if hit {
            count += 1;
            i += pattern.len();
        } else {
            i += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tests::corpus_from_texts;

    fn lex() -> &'static StemLexicon {
        StemLexicon::builtin()
    }

    #[test]
    fn builtin_has_expected_categories() {
        let violence: Vec<&str> = lex()
            .entries(Category::Violence)
            .iter()
            .map(|e| e.stem.as_str())
            .collect();
        assert_eq!(
            violence,
            vec![
                "قتل", "جهاد", "شهد", "عرك", "حذف", "حرب", "قصف", "فجر", "فتح"
            ]
        );
        let sectarian: Vec<&str> = lex()
            .entries(Category::Sectarian)
            .iter()
            .map(|e| e.stem.as_str())
            .collect();
        assert_eq!(sectarian, vec!["رفض", "صفي", "كفر", "رتد"]);
    }

    #[test]
    fn builtin_frequencies_are_metadata() {
        let find = |cat, stem: &str| {
            lex()
                .entries(cat)
                .iter()
                .find(|e| e.stem == stem)
                .unwrap()
                .expected_frequency
        };
        assert_eq!(find(Category::Violence, "قتل"), Some(88732));
        assert_eq!(find(Category::Theological, "خلف"), Some(80664));
        assert_eq!(find(Category::Names, "دولة_الإسلامية"), Some(111892));
        assert_eq!(find(Category::Names, "اسد"), None);
    }

    #[test]
    fn duplicate_stem_across_categories_is_fatal() {
        let src = r#"{
            "categories": {
                "Violence": [{"stem": "قتل", "match_mode": "exact_stem"}],
                "Names": [{"stem": "قتل", "match_mode": "exact_stem"}]
            },
            "stop_words": []
        }"#;
        assert!(matches!(
            StemLexicon::from_json_str(src, "test"),
            Err(Error::Lexicon(_))
        ));
    }

    #[test]
    fn underscore_entries_must_be_compound() {
        let src = r#"{
            "categories": {
                "Names": [{"stem": "ا_ب", "match_mode": "exact_stem"}]
            },
            "stop_words": []
        }"#;
        assert!(matches!(
            StemLexicon::from_json_str(src, "test"),
            Err(Error::Lexicon(_))
        ));
    }

    #[test]
    fn stop_word_checks() {
        assert!(lex().is_stop("في"));
        assert!(lex().is_stop("و"));
        assert!(!lex().is_stop("قتل"));
        assert!(!lex().is_stop(""));
    }

    #[test]
    fn match_counts_by_occurrence() {
        let stems = vec!["قتل".to_string(), "قتل".to_string(), "خلف".to_string()];
        let counts = lex().match_categories(&stems, "", CountPolicy::Occurrence);
        assert_eq!(counts, CategoryCounts::new(2, 1, 0, 0));
    }

    #[test]
    fn match_counts_by_distinct() {
        let stems = vec!["قتل".to_string(), "قتل".to_string(), "خلف".to_string()];
        let counts = lex().match_categories(&stems, "", CountPolicy::Distinct);
        assert_eq!(counts, CategoryCounts::new(1, 1, 0, 0));
    }

    #[test]
    fn compound_containment_matches_space_form() {
        let text = text::normalize_text("جندي من جنود الدولة الإسلامية وذلك");
        let counts = lex().match_categories(&[], &text, CountPolicy::Occurrence);
        assert!(counts.get(Category::Names) >= 1);
    }

    #[test]
    fn compound_containment_matches_underscore_form() {
        let text = text::normalize_text("#دولة_الإسلامية باقية");
        let counts = lex().match_categories(&[], &text, CountPolicy::Occurrence);
        assert!(counts.get(Category::Names) >= 1);
    }

    #[test]
    fn empty_inputs_give_all_zero() {
        let counts = lex().match_categories(&[], "", CountPolicy::Occurrence);
        assert_eq!(counts.total(), 0);
    }

    #[test]
    fn containment_is_non_overlapping() {
        let hay: Vec<char> = "اباباب".chars().collect();
        let pat: Vec<char> = "اباب".chars().collect();
        assert_eq!(count_containment(&hay, &pat), 1);
        let pat: Vec<char> = "اب".chars().collect();
        assert_eq!(count_containment(&hay, &pat), 3);
    }

    #[test]
    fn top_stems_hand_count() {
        // جهاد reduces to its root جهد under the فعال pattern
        let corpus = corpus_from_texts(&["قتل قتل جهاد"]);
        let table = lex().top_stems(&corpus, 2, &IsriStemmer::new()).unwrap();
        assert_eq!(
            table.entries,
            vec![("قتل".to_string(), 2), ("جهد".to_string(), 1)]
        );
        assert_eq!(table.total_tokens, 3);
    }

    #[test]
    fn top_stems_empty_corpus() {
        let corpus = corpus_from_texts(&[]);
        let table = lex().top_stems(&corpus, 1, &IsriStemmer::new()).unwrap();
        assert!(table.entries.is_empty());
    }

    #[test]
    fn top_stems_k_zero_is_error() {
        let corpus = corpus_from_texts(&["قتل"]);
        assert!(lex().top_stems(&corpus, 0, &IsriStemmer::new()).is_err());
    }

    #[test]
    fn top_stems_ties_break_by_codepoint() {
        // two distinct stems, one occurrence each
        let corpus = corpus_from_texts(&["قتل جهاد"]);
        let table = lex().top_stems(&corpus, 2, &IsriStemmer::new()).unwrap();
        assert_eq!(table.entries[0].0, "جهد");
        assert_eq!(table.entries[1].0, "قتل");
    }

    #[test]
    fn top_stems_prefix_property() {
        let corpus = corpus_from_texts(&["قتل جهاد حرب", "قتل حرب", "قتل دين"]);
        let st = IsriStemmer::new();
        let small = lex().top_stems(&corpus, 2, &st).unwrap();
        let large = lex().top_stems(&corpus, 4, &st).unwrap();
        assert_eq!(small.entries[..], large.entries[..2]);
    }

    #[test]
    fn stop_words_removed_before_stemming() {
        // "في" is a stop word and must not reach the stem counts
        let corpus = corpus_from_texts(&["في قتل"]);
        let table = lex().top_stems(&corpus, 10, &IsriStemmer::new()).unwrap();
        assert_eq!(table.entries, vec![("قتل".to_string(), 1)]);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn stem_vec() -> impl Strategy<Value = Vec<String>> {
            proptest::collection::vec(
                prop_oneof![
                    Just("قتل".to_string()),
                    Just("خلف".to_string()),
                    Just("رفض".to_string()),
                    Just("دعش".to_string()),
                    Just("بيت".to_string()),
                ],
                0..12,
            )
        }

        proptest! {
            #[test]
            fn occurrence_matching_is_additive(a in stem_vec(), b in stem_vec()) {
                let lex = StemLexicon::builtin();
                let mut joined = a.clone();
                joined.extend(b.iter().cloned());
                let ca = lex.match_categories(&a, "", CountPolicy::Occurrence);
                let cb = lex.match_categories(&b, "", CountPolicy::Occurrence);
                let cj = lex.match_categories(&joined, "", CountPolicy::Occurrence);
                prop_assert_eq!(cj, ca.merge(&cb));
            }
        }
    }
}
