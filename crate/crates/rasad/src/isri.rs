//! ISRI Arabic root-extraction stemming.
//!
//! Rule-based stemmer after Taghva, Elkhoury & Coombs (2005): affix
//! stripping followed by morphological pattern matching for words of
//! length 4–7, without a root dictionary. The affix sets, protected-word
//! list and pattern templates live in `data/isri_tables.txt` and are
//! loaded once; conformance against a reference-generated golden corpus
//! is enforced in `tests/isri_conformance.rs`.
//!
//! Compound (underscore) tokens bypass root extraction entirely and only
//! receive diacritic/hamza normalization, because the category lexicon
//! stores compounds as near-surface forms matched by containment.

use once_cell::sync::Lazy;
use std::collections::HashSet;

const TABLES_SRC: &str = include_str!("../data/isri_tables.txt");

static TABLES: Lazy<AffixTables> =
    Lazy::new(|| AffixTables::parse(TABLES_SRC).expect("embedded isri tables parse"));

/// Which normalization to apply in [`IsriStemmer::norm_marks`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkLevel {
    /// Remove the eight short-vowel/diacritic marks.
    Diacritics,
    /// Unify hamza-carrier alefs (آ أ إ ٱ) to bare alef, at any position.
    Hamza,
    /// Both of the above.
    Both,
}

/// One positional pattern rule: all conditions must hold, the kept
/// positions form the extracted root.
#[derive(Debug, Clone)]
struct PatternRule {
    conds: Vec<Cond>,
    keep: Vec<usize>,
}

#[derive(Debug, Clone)]
enum Cond {
    CharIn(usize, Vec<char>),
    Equal(usize, usize),
}

impl PatternRule {
    fn matches(&self, w: &[char]) -> bool {
        self.conds.iter().all(|c| match c {
            Cond::CharIn(pos, set) => set.contains(&w[*pos]),
            Cond::Equal(a, b) => w[*a] == w[*b],
        })
    }

    fn extract(&self, w: &[char]) -> Vec<char> {
        self.keep.iter().map(|&i| w[i]).collect()
    }
}

/// Affix sets and pattern templates, parsed from the versioned data file.
#[derive(Debug)]
pub struct AffixTables {
    pub version: u32,
    diacritics: Vec<char>,
    hamza_carriers: Vec<char>,
    initial_hamza: Vec<char>,
    p3: Vec<Vec<char>>,
    p2: Vec<Vec<char>>,
    p1: Vec<char>,
    s3: Vec<Vec<char>>,
    s2: Vec<Vec<char>>,
    s1: Vec<char>,
    protected: HashSet<String>,
    w4: Vec<PatternRule>,
    w53: Vec<PatternRule>,
    w54: Vec<PatternRule>,
    w6_3: Vec<PatternRule>,
    w64: Vec<PatternRule>,
}

impl AffixTables {
    fn parse(src: &str) -> Result<Self, String> {
        let mut version = None;
        let mut sections: Vec<(String, Vec<String>)> = Vec::new();
        for raw in src.lines() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if let Some(v) = line.strip_prefix("version") {
                version = Some(
                    v.trim()
                        .parse::<u32>()
                        .map_err(|e| format!("bad version: {e}"))?,
                );
            } else if line.starts_with('[') && line.ends_with(']') {
                sections.push((line[1..line.len() - 1].to_string(), Vec::new()));
            } else {
                sections
                    .last_mut()
                    .ok_or_else(|| format!("content before first section: {line}"))?
                    .1
                    .push(line.to_string());
            }
        }

        let mut by_name = std::collections::HashMap::new();
        for (name, lines) in sections {
            if by_name.insert(name.clone(), lines).is_some() {
                return Err(format!("duplicate section [{name}]"));
            }
        }
        let take = |name: &str| -> Result<Vec<String>, String> {
            by_name
                .get(name)
                .cloned()
                .ok_or_else(|| format!("missing section [{name}]"))
        };

        let tables = AffixTables {
            version: version.ok_or("missing version line")?,
            diacritics: parse_chars(&take("diacritics")?)?,
            hamza_carriers: parse_chars(&take("hamza_carriers")?)?,
            initial_hamza: parse_chars(&take("initial_hamza")?)?,
            p3: parse_affixes(&take("p3")?, 3)?,
            p2: parse_affixes(&take("p2")?, 2)?,
            p1: parse_chars(&take("p1")?)?,
            s3: parse_affixes(&take("s3")?, 3)?,
            s2: parse_affixes(&take("s2")?, 2)?,
            s1: parse_chars(&take("s1")?)?,
            protected: take("protected")?
                .iter()
                .flat_map(|l| l.split_whitespace())
                .map(str::to_string)
                .collect(),
            w4: parse_rules(&take("w4")?, 4)?,
            w53: parse_rules(&take("w53")?, 5)?,
            w54: parse_rules(&take("w54")?, 5)?,
            w6_3: parse_rules(&take("w6_3")?, 6)?,
            w64: parse_rules(&take("w64")?, 6)?,
        };
        tables.validate()?;
        Ok(tables)
    }

    fn validate(&self) -> Result<(), String> {
        for (name, set) in [
            ("p3", &self.p3),
            ("p2", &self.p2),
            ("s3", &self.s3),
            ("s2", &self.s2),
        ] {
            let uniq: HashSet<_> = set.iter().collect();
            if uniq.len() != set.len() {
                return Err(format!("duplicate affix in [{name}]"));
            }
        }
        for (name, set) in [("p1", &self.p1), ("s1", &self.s1)] {
            let uniq: HashSet<_> = set.iter().collect();
            if uniq.len() != set.len() {
                return Err(format!("duplicate affix in [{name}]"));
            }
        }
        if self.diacritics.len() != 8 {
            return Err("expected 8 diacritic marks".into());
        }
        if self.protected.is_empty() {
            return Err("empty protected-word list".into());
        }
        Ok(())
    }
}

fn parse_one_char(tok: &str) -> Result<char, String> {
    if let Some(hex) = tok.strip_prefix("\\u") {
        let v = u32::from_str_radix(hex, 16).map_err(|e| format!("bad escape {tok}: {e}"))?;
        char::from_u32(v).ok_or_else(|| format!("bad codepoint {tok}"))
    } else {
        let mut chars = tok.chars();
        let c = chars.next().ok_or("empty char token")?;
        if chars.next().is_some() {
            return Err(format!("expected single char, got {tok}"));
        }
        Ok(c)
    }
}

fn parse_chars(lines: &[String]) -> Result<Vec<char>, String> {
    lines
        .iter()
        .flat_map(|l| l.split_whitespace())
        .map(parse_one_char)
        .collect()
}

fn parse_affixes(lines: &[String], len: usize) -> Result<Vec<Vec<char>>, String> {
    let mut out = Vec::new();
    for tok in lines.iter().flat_map(|l| l.split_whitespace()) {
        let chars: Vec<char> = tok.chars().collect();
        if chars.len() != len {
            return Err(format!("affix {tok} is not length {len}"));
        }
        out.push(chars);
    }
    Ok(out)
}

fn parse_rules(lines: &[String], word_len: usize) -> Result<Vec<PatternRule>, String> {
    let mut rules = Vec::new();
    for line in lines {
        let (lhs, rhs) = line
            .split_once("->")
            .ok_or_else(|| format!("rule missing '->': {line}"))?;
        let mut conds = Vec::new();
        for part in lhs.split('&') {
            let part = part.trim();
            let (head, tail) = part
                .split_once(':')
                .ok_or_else(|| format!("bad condition {part}"))?;
            if head == "=" {
                let (a, b) = tail
                    .split_once(',')
                    .ok_or_else(|| format!("bad equality {part}"))?;
                let (a, b) = (
                    a.trim().parse::<usize>().map_err(|e| e.to_string())?,
                    b.trim().parse::<usize>().map_err(|e| e.to_string())?,
                );
                if a >= word_len || b >= word_len {
                    return Err(format!("position out of range in {part}"));
                }
                conds.push(Cond::Equal(a, b));
            } else {
                let pos = head.parse::<usize>().map_err(|e| e.to_string())?;
                if pos >= word_len {
                    return Err(format!("position out of range in {part}"));
                }
                conds.push(Cond::CharIn(pos, tail.chars().collect()));
            }
        }
        let keep: Vec<usize> = rhs
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        if keep.iter().any(|&i| i >= word_len) {
            return Err(format!("keep position out of range: {line}"));
        }
        rules.push(PatternRule { conds, keep });
    }
    Ok(rules)
}

/// The stemmer. Stateless after table load; cheap to construct and safe
/// to share across threads.
#[derive(Debug, Clone, Copy)]
pub struct IsriStemmer {
    tables: &'static AffixTables,
}

impl Default for IsriStemmer {
    fn default() -> Self {
        Self::new()
    }
}

impl IsriStemmer {
    pub fn new() -> Self {
        IsriStemmer { tables: &TABLES }
    }

    pub fn tables(&self) -> &'static AffixTables {
        self.tables
    }

    /// Mark normalization. `Hamza` unifies carrier alefs at every
    /// position; the internal stem pipeline uses the narrower
    /// initial-position rule of the reference algorithm instead.
    pub fn norm_marks(&self, word: &str, level: MarkLevel) -> String {
        let strip = matches!(level, MarkLevel::Diacritics | MarkLevel::Both);
        let unify = matches!(level, MarkLevel::Hamza | MarkLevel::Both);
        word.chars()
            .filter(|c| !(strip && self.tables.diacritics.contains(c)))
            .map(|c| {
                if unify && self.tables.hamza_carriers.contains(&c) {
                    '\u{0627}'
                } else {
                    c
                }
            })
            .collect()
    }

    /// Strip one length-3 prefix (word length ≥ 6), else one length-2
    /// prefix (length ≥ 5). At most one prefix per call.
    pub fn strip_prefixes_32(&self, word: &str) -> String {
        let w: Vec<char> = word.chars().collect();
        self.pre32(w).into_iter().collect()
    }

    /// Strip one length-3 suffix (word length ≥ 6), else one length-2
    /// suffix (length ≥ 5).
    pub fn strip_suffixes_32(&self, word: &str) -> String {
        let w: Vec<char> = word.chars().collect();
        self.suf32(w).into_iter().collect()
    }

    /// Full pipeline: diacritic removal, protected words, affix
    /// stripping, doubled-waw reduction, initial-hamza normalization,
    /// then pattern matching dispatched on length. Words of length ≤ 3
    /// are already roots; compounds bypass extraction.
    pub fn stem(&self, word: &str) -> String {
        if word.contains('_') {
            return self.norm_marks(word, MarkLevel::Both);
        }
        let w: Vec<char> = word
            .chars()
            .filter(|c| !self.tables.diacritics.contains(c))
            .collect();
        if w.is_empty() {
            // outside the normalized-token domain (marks only); keep input
            return word.to_string();
        }
        let as_string: String = w.iter().collect();
        if self.tables.protected.contains(&as_string) {
            return as_string;
        }
        let mut w = self.pre32(w);
        w = self.suf32(w);
        if w.len() >= 4 && w[0] == '\u{0648}' && w[1] == '\u{0648}' {
            w.remove(0);
        }
        if !w.is_empty() && self.tables.initial_hamza.contains(&w[0]) {
            w[0] = '\u{0627}';
        }
        w = match w.len() {
            4 => self.pro_w4(w),
            5 => {
                let w = self.pro_w53(w);
                self.end_w5(w)
            }
            6 => {
                let w = self.pro_w6(w);
                self.end_w6(w)
            }
            7 => {
                let mut w = self.suf1(w);
                if w.len() == 7 {
                    w = self.pre1(w);
                }
                if w.len() == 6 {
                    w = self.pro_w6(w);
                    w = self.end_w6(w);
                }
                w
            }
            _ => w,
        };
        w.into_iter().collect()
    }

    fn pre32(&self, w: Vec<char>) -> Vec<char> {
        if w.len() >= 6 {
            for p in &self.tables.p3 {
                if w.starts_with(p) {
                    return w[3..].to_vec();
                }
            }
        }
        if w.len() >= 5 {
            for p in &self.tables.p2 {
                if w.starts_with(p) {
                    return w[2..].to_vec();
                }
            }
        }
        w
    }

    fn suf32(&self, w: Vec<char>) -> Vec<char> {
        if w.len() >= 6 {
            for s in &self.tables.s3 {
                if w.ends_with(s) {
                    return w[..w.len() - 3].to_vec();
                }
            }
        }
        if w.len() >= 5 {
            for s in &self.tables.s2 {
                if w.ends_with(s) {
                    return w[..w.len() - 2].to_vec();
                }
            }
        }
        w
    }

    fn suf1(&self, w: Vec<char>) -> Vec<char> {
        if let Some(last) = w.last() {
            if self.tables.s1.contains(last) {
                return w[..w.len() - 1].to_vec();
            }
        }
        w
    }

    fn pre1(&self, w: Vec<char>) -> Vec<char> {
        if let Some(first) = w.first() {
            if self.tables.p1.contains(first) {
                return w[1..].to_vec();
            }
        }
        w
    }

    fn apply_rules(rules: &[PatternRule], w: &[char]) -> Option<Vec<char>> {
        rules.iter().find(|r| r.matches(w)).map(|r| r.extract(w))
    }

    fn pro_w4(&self, w: Vec<char>) -> Vec<char> {
        if let Some(root) = Self::apply_rules(&self.tables.w4, &w) {
            return root;
        }
        let w = self.suf1(w);
        if w.len() == 4 {
            self.pre1(w)
        } else {
            w
        }
    }

    fn pro_w53(&self, w: Vec<char>) -> Vec<char> {
        if let Some(root) = Self::apply_rules(&self.tables.w53, &w) {
            return root;
        }
        let w = self.suf1(w);
        if w.len() == 5 {
            self.pre1(w)
        } else {
            w
        }
    }

    fn pro_w54(&self, w: Vec<char>) -> Vec<char> {
        Self::apply_rules(&self.tables.w54, &w).unwrap_or(w)
    }

    fn end_w5(&self, w: Vec<char>) -> Vec<char> {
        match w.len() {
            4 => self.pro_w4(w),
            5 => self.pro_w54(w),
            _ => w,
        }
    }

    fn pro_w6(&self, w: Vec<char>) -> Vec<char> {
        if let Some(root) = Self::apply_rules(&self.tables.w6_3, &w) {
            return root;
        }
        let w = self.suf1(w);
        if w.len() == 6 {
            self.pre1(w)
        } else {
            w
        }
    }

    fn pro_w64(&self, w: Vec<char>) -> Vec<char> {
        Self::apply_rules(&self.tables.w64, &w).unwrap_or(w)
    }

    fn end_w6(&self, w: Vec<char>) -> Vec<char> {
        match w.len() {
            5 => {
                let w = self.pro_w53(w);
                self.end_w5(w)
            }
            6 => self.pro_w64(w),
            _ => w,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st() -> IsriStemmer {
        IsriStemmer::new()
    }

    #[test]
    fn tables_load_and_version() {
        assert_eq!(st().tables().version, 1);
    }

    #[test]
    fn norm_marks_removes_diacritics() {
        assert_eq!(st().norm_marks("قَتَلَ", MarkLevel::Diacritics), "قتل");
        assert_eq!(st().norm_marks("قتل", MarkLevel::Diacritics), "قتل");
    }

    #[test]
    fn norm_marks_unifies_hamza_at_any_position() {
        assert_eq!(st().norm_marks("أسد", MarkLevel::Hamza), "اسد");
        assert_eq!(st().norm_marks("الإسلامية", MarkLevel::Hamza), "الاسلامية");
        assert_eq!(st().norm_marks("ٱلله", MarkLevel::Hamza), "الله");
    }

    #[test]
    fn strip_prefixes_length_guards() {
        assert_eq!(st().strip_prefixes_32("المسلمين"), "مسلمين");
        assert_eq!(st().strip_prefixes_32("دين"), "دين");
        assert_eq!(st().strip_prefixes_32("والقتال"), "قتال");
        // length 5: p2 still applies, p3 needs length 6
        assert_eq!(st().strip_prefixes_32("الشيخ"), "شيخ");
        assert_eq!(st().strip_prefixes_32("والله"), "والله");
    }

    #[test]
    fn strip_suffixes_length_guards() {
        assert_eq!(st().strip_suffixes_32("مسلمين"), "مسلم");
        assert_eq!(st().strip_suffixes_32("قتل"), "قتل");
        assert_eq!(st().strip_suffixes_32("خلافات"), "خلاف");
    }

    #[test]
    fn stem_examples() {
        assert_eq!(st().stem("المسلمين"), "سلم");
        assert_eq!(st().stem("قتل"), "قتل");
        assert_eq!(st().stem("يكتبون"), "كتب");
        assert_eq!(st().stem("والقتال"), "قتل");
        assert_eq!(st().stem("معارك"), "عرك");
        assert_eq!(st().stem("استشهاد"), "شهد");
        assert_eq!(st().stem("خلافات"), "خلف");
    }

    #[test]
    fn compounds_bypass_root_extraction() {
        assert_eq!(st().stem("دولة_الإسلامية"), "دولة_الاسلامية");
        assert_eq!(st().stem("اخبار_الخلافة"), "اخبار_الخلافة");
    }

    #[test]
    fn protected_words_unchanged() {
        assert_eq!(st().stem("التي"), "التي");
        assert_eq!(st().stem("أمام"), "أمام");
    }

    #[test]
    fn doubled_waw_reduced() {
        assert_eq!(st().stem("ووقف"), "وقف");
    }

    #[test]
    fn degenerate_marks_only_input_is_returned() {
        assert_eq!(st().stem("\u{064E}"), "\u{064E}");
        assert_eq!(st().stem(""), "");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arabic_word() -> impl Strategy<Value = String> {
            proptest::collection::vec(
                prop_oneof![
                    8 => prop::char::range('\u{0621}', '\u{064A}'),
                    1 => prop::char::range('\u{064B}', '\u{0652}'),
                ],
                1..12,
            )
            .prop_map(|cs| cs.into_iter().collect())
        }

        proptest! {
            #[test]
            fn stem_never_longer_than_mark_normalized_input(w in arabic_word()) {
                let s = st();
                let bound = s.norm_marks(&w, MarkLevel::Both).chars().count();
                // marks-only inputs sit outside the normalized-token domain
                prop_assume!(bound > 0);
                prop_assert!(s.stem(&w).chars().count() <= bound);
            }

            #[test]
            fn stem_nonempty_for_nonempty_input(w in arabic_word()) {
                prop_assert!(!st().stem(&w).is_empty());
            }

            #[test]
            fn stem_output_free_of_diacritics(w in arabic_word()) {
                prop_assume!(!st().norm_marks(&w, MarkLevel::Diacritics).is_empty());
                let out = st().stem(&w);
                let has_diacritic = out.chars().any(|c| ('\u{064B}'..='\u{0652}').contains(&c));
                prop_assert!(!has_diacritic, "diacritic survived in {}", out);
            }

            // Hamza handling has no simple output invariant (a pre1 strip
            // can expose a mid-word carrier at position 0); it is pinned
            // by the unit examples and the golden conformance corpus.

            #[test]
            fn stem_is_deterministic(w in arabic_word()) {
                prop_assert_eq!(st().stem(&w), st().stem(&w));
            }
        }
    }
}
