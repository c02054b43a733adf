//! Tokenization and character-level normalization for tweet text.
//!
//! `tokenize` splits raw text into candidate word tokens on whitespace,
//! punctuation and symbols, keeping `_` word-internal so hashtag compounds
//! survive as single tokens. `normalize` then reduces a token to Arabic
//! letters, digits and internal underscores, signalling removal when
//! nothing is left (all-Latin tokens, bare mentions, emoji runs).

const TATWEEL: char = '\u{0640}';

/// One candidate word token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    /// Index of the token within its tweet, strictly increasing.
    pub position: usize,
    /// Contains an underscore (hashtag-style compound).
    pub is_compound: bool,
}

impl Token {
    fn new(surface: String, position: usize) -> Self {
        let is_compound = surface.contains('_');
        Token {
            surface,
            position,
            is_compound,
        }
    }
}

/// Codepoint lies in one of the Arabic Unicode blocks the pipeline
/// recognizes (0600–06FF, 0750–077F, 08A0–08FF).
pub fn is_arabic_block(c: char) -> bool {
    matches!(c,
        '\u{0600}'..='\u{06FF}' | '\u{0750}'..='\u{077F}' | '\u{08A0}'..='\u{08FF}')
}

/// Arabic letter for normalization purposes. Tatweel is excluded: it is
/// purely typographic and dropped during normalization.
pub fn is_arabic_letter(c: char) -> bool {
    is_arabic_block(c) && c.is_alphabetic() && c != TATWEEL
}

fn is_digit(c: char) -> bool {
    c.is_ascii_digit()
        || ('\u{0660}'..='\u{0669}').contains(&c)
        || ('\u{06F0}'..='\u{06F9}').contains(&c)
}

/// Arabic combining marks (harakat and annotation signs). They must not
/// split tokens; normalization drops them.
fn is_arabic_mark(c: char) -> bool {
    matches!(c,
        '\u{0610}'..='\u{061A}'
        | '\u{064B}'..='\u{065F}'
        | '\u{0670}'
        | '\u{06D6}'..='\u{06DC}'
        | '\u{06DF}'..='\u{06E4}'
        | '\u{06E7}'
        | '\u{06E8}'
        | '\u{06EA}'..='\u{06ED}'
        | '\u{08CA}'..='\u{08FF}')
}

fn is_token_char(c: char) -> bool {
    c == '_' || c.is_alphanumeric() || is_arabic_mark(c)
}

fn unify_hamza(c: char) -> char {
    match c {
        '\u{0622}' | '\u{0623}' | '\u{0625}' | '\u{0671}' => '\u{0627}',
        other => other,
    }
}

/// Split text into word tokens. Whitespace, punctuation and symbol
/// codepoints act as boundaries; `#` and `@` are therefore stripped from
/// token heads for free. `_` is kept word-internal.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in text.chars() {
        if is_token_char(c) {
            current.push(c);
        } else if !current.is_empty() {
            tokens.push(Token::new(std::mem::take(&mut current), tokens.len()));
        }
    }
    if !current.is_empty() {
        tokens.push(Token::new(current, tokens.len()));
    }
    tokens
}

/// Normalize a token down to Arabic letters, digits and internal
/// underscores. Returns `None` when nothing remains.
pub fn normalize(token: &Token) -> Option<Token> {
    let kept: String = token
        .surface
        .chars()
        .filter(|&c| c == '_' || is_arabic_letter(c) || is_digit(c))
        .collect();
    let trimmed = kept.trim_matches('_');
    if trimmed.is_empty() {
        None
    } else {
        Some(Token::new(trimmed.to_string(), token.position))
    }
}

/// Character-normalized form of a whole tweet, used for compound
/// containment matching: hamza-carrier alefs unified, diacritics and
/// tatweel dropped in place, every other non-token run collapsed to a
/// single space.
pub fn normalize_text(text: &str) -> String {
    let mut out = String::new();
    let mut boundary = false;
    for c in text.chars() {
        let c = unify_hamza(c);
        if c == '_' || is_arabic_letter(c) || is_digit(c) {
            if boundary && !out.is_empty() {
                out.push(' ');
            }
            boundary = false;
            out.push(c);
        } else if !is_arabic_mark(c) && c != TATWEEL {
            boundary = true;
        }
    }
    out
}
