//! The five prompt passages and the stopword-based reduction applied when a
//! passage exceeds a generator's character limit.

use std::collections::HashSet;
use std::sync::OnceLock;

use thiserror::Error;

use crate::model::{PromptId, PromptSpec};

static STOPWORDS_EN: &str = include_str!("../data/stopwords_en.txt");

const PROMPTS: [(PromptId, &str, &str); 5] = [
    (
        PromptId::P1,
        "Adam and Eve's Expulsion of Paradise (Genesis 4:23-24)",
        include_str!("../data/prompts/p1.txt"),
    ),
    (
        PromptId::P2,
        "The Tower of Babel (Genesis 11:1-9)",
        include_str!("../data/prompts/p2.txt"),
    ),
    (
        PromptId::P3,
        "Binding of Isaac (Genesis 22:9-14)",
        include_str!("../data/prompts/p3.txt"),
    ),
    (
        PromptId::P4,
        "The Last Supper (Mark 14:12-25)",
        include_str!("../data/prompts/p4.txt"),
    ),
    (
        PromptId::P5,
        "Moses Found (Exodus 2:5-9)",
        include_str!("../data/prompts/p5.txt"),
    ),
];

/// All five prompts, in id order. `truncated_text` is left empty; use
/// [`truncate_prompt`] with the target generator's limit to fill it.
pub fn list_prompts() -> Vec<PromptSpec> {
    PROMPTS
        .iter()
        .map(|(id, title, text)| PromptSpec {
            id: *id,
            title: (*title).to_string(),
            full_text: text.trim().to_string(),
            truncated_text: None,
        })
        .collect()
}

pub fn prompt(id: PromptId) -> PromptSpec {
    list_prompts()
        .into_iter()
        .find(|p| p.id == id)
        .expect("every PromptId has an embedded passage")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StopwordError {
    #[error("stopword list is empty")]
    Empty,
    #[error("stopword `{0}` must be lowercase without whitespace")]
    BadEntry(String),
}

/// A set of lowercase stopword tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopwordList {
    words: HashSet<String>,
}

impl StopwordList {
    pub fn new<I, S>(words: I) -> Result<Self, StopwordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = HashSet::new();
        for w in words {
            let w = w.into();
            if w.is_empty() || w.chars().any(char::is_whitespace) || w.to_lowercase() != w {
                return Err(StopwordError::BadEntry(w));
            }
            set.insert(w);
        }
        if set.is_empty() {
            return Err(StopwordError::Empty);
        }
        Ok(Self { words: set })
    }

    /// Parse a one-word-per-line list; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self, StopwordError> {
        Self::new(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        )
    }

    /// The bundled 127-word English list.
    pub fn english() -> &'static StopwordList {
        static LIST: OnceLock<StopwordList> = OnceLock::new();
        LIST.get_or_init(|| Self::parse(STOPWORDS_EN).expect("bundled stopword list is valid"))
    }

    pub fn contains(&self, token: &str) -> bool {
        self.words.contains(&token.to_lowercase())
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruncateError {
    #[error("character limit must be positive")]
    ZeroLimit,
    #[error("no tokens survive stopword removal within {limit} characters")]
    EmptyResult { limit: usize },
}

fn char_len(s: &str) -> usize {
    s.chars().count()
}

/// Strip punctuation from both ends of a whitespace token. Inner characters
/// (apostrophes, hyphens) are kept.
fn strip_punctuation(token: &str) -> &str {
    token.trim_matches(|c: char| !c.is_alphanumeric())
}

/// Reduce `text` to at most `char_limit` characters.
///
/// Text already within the limit is returned unchanged. Otherwise tokens are
/// split on whitespace, stripped of surrounding punctuation, stopwords and
/// empty tokens are dropped, and the rest are joined with single spaces. If
/// that is still too long the result is cut at the last word boundary that
/// fits.
pub fn truncate_prompt(
    text: &str,
    char_limit: usize,
    stopwords: &StopwordList,
) -> Result<String, TruncateError> {
    if char_limit == 0 {
        return Err(TruncateError::ZeroLimit);
    }
    if char_len(text) <= char_limit {
        return Ok(text.to_string());
    }
    let mut out = String::new();
    let mut len = 0;
    for token in text
        .split_whitespace()
        .map(strip_punctuation)
        .filter(|t| !t.is_empty() && !stopwords.contains(t))
    {
        let extra = char_len(token) + usize::from(!out.is_empty());
        if len + extra > char_limit {
            break;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(token);
        len += extra;
    }
    if out.is_empty() {
        return Err(TruncateError::EmptyResult { limit: char_limit });
    }
    Ok(out)
}
