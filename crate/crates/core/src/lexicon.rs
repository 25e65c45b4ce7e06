//! Phrase lexicons for modifier classification and attribute-term spotting.
//!
//! The lexicons ship with built-in defaults and can be replaced section by
//! section from a JSON file; any section absent from the file keeps its
//! default. Matching is case-insensitive and longest-match-wins.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::annotation::ModificationType;
use crate::error::{Error, Result};
use crate::scene::Attribute;

fn default_modifiers() -> BTreeMap<ModificationType, Vec<String>> {
    let seed: [(ModificationType, &[&str]); 6] = [
        (
            ModificationType::Subtlety,
            &["slightly", "a little", "a bit", "a tiny bit", "very slightly"],
        ),
        (
            ModificationType::Extremity,
            &["very", "much", "pretty", "quite", "really"],
        ),
        (
            ModificationType::Uncertainty,
            &["almost", "about", "kind of", "smallish", "not completely"],
        ),
        (
            ModificationType::Certainty,
            &["directly", "exactly", "perfect", "almost exactly"],
        ),
        (
            ModificationType::Neutrality,
            &["medium", "med", "fairly", "mid-size", "slightly medium"],
        ),
        (ModificationType::Negation, &["not", "isn't", "not perceptibly"]),
    ];
    seed.into_iter()
        .map(|(t, phrases)| (t, phrases.iter().map(|p| (*p).to_owned()).collect()))
        .collect()
}

fn default_color_terms() -> Vec<String> {
    [
        "black",
        "dark",
        "dark grey",
        "grey",
        "gray",
        "light grey",
        "light",
        "medium grey",
        "very dark",
        "very light",
    ]
    .map(str::to_owned)
    .to_vec()
}

fn default_size_terms() -> Vec<String> {
    ["tiny", "small", "medium", "large", "big", "very small", "very large"]
        .map(str::to_owned)
        .to_vec()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lexicon {
    #[serde(default = "default_modifiers")]
    pub modifiers: BTreeMap<ModificationType, Vec<String>>,
    #[serde(default = "default_color_terms")]
    pub color: Vec<String>,
    #[serde(default = "default_size_terms")]
    pub size: Vec<String>,
}

impl Default for Lexicon {
    fn default() -> Self {
        Lexicon {
            modifiers: default_modifiers(),
            color: default_color_terms(),
            size: default_size_terms(),
        }
    }
}

/// Lowercases a token and strips leading/trailing punctuation, keeping
/// word-internal characters such as the hyphen in "mid-size".
fn normalize(token: &str) -> String {
    token
        .trim_matches(|c: char| !c.is_alphanumeric() && c != '\'')
        .to_lowercase()
}

fn normalize_all<S: AsRef<str>>(tokens: &[S]) -> Vec<String> {
    tokens.iter().map(|t| normalize(t.as_ref())).collect()
}

/// Does the phrase occur as a contiguous run of tokens?
fn contains_phrase(tokens: &[String], phrase_words: &[String]) -> bool {
    !phrase_words.is_empty()
        && tokens
            .windows(phrase_words.len())
            .any(|w| w == phrase_words)
}

/// Picks the best-matching entry: most words first, then most characters,
/// then alphabetically first so ties resolve deterministically.
fn longest_match<'a, T: Copy>(
    tokens: &[String],
    entries: impl Iterator<Item = (&'a str, T)>,
) -> Option<(&'a str, T)> {
    let mut best: Option<(usize, usize, &'a str, T)> = None;
    for (entry, tag) in entries {
        let words = normalize_all(&entry.split_whitespace().collect::<Vec<_>>());
        if !contains_phrase(tokens, &words) {
            continue;
        }
        let key = (words.len(), entry.len());
        let better = match &best {
            None => true,
            Some((w, c, e, _)) => key > (*w, *c) || (key == (*w, *c) && entry < *e),
        };
        if better {
            best = Some((key.0, key.1, entry, tag));
        }
    }
    best.map(|(_, _, entry, tag)| (entry, tag))
}

impl Lexicon {
    /// Loads a lexicon from a JSON file. Sections not present in the file
    /// fall back to the built-in defaults.
    pub fn load(path: &Path) -> Result<Lexicon> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| Error::Parse {
            path: path.to_owned(),
            line: 1,
            source,
        })
    }

    /// Classifies a modifier's token sequence by the longest lexicon entry
    /// occurring in it, or returns `None` when nothing matches.
    pub fn classify_modifier<S: AsRef<str>>(&self, tokens: &[S]) -> Option<ModificationType> {
        let tokens = normalize_all(tokens);
        let entries = self
            .modifiers
            .iter()
            .flat_map(|(t, phrases)| phrases.iter().map(move |p| (p.as_str(), *t)));
        longest_match(&tokens, entries).map(|(_, t)| t)
    }

    /// Finds the canonical color or size term inside a markable's tokens.
    /// Returns `None` for non-comparable attributes (x, y) and for token
    /// sequences without a lexicon hit.
    pub fn extract_attribute_term<S: AsRef<str>>(
        &self,
        tokens: &[S],
        attribute: Attribute,
    ) -> Option<&str> {
        let terms = match attribute {
            Attribute::Color => &self.color,
            Attribute::Size => &self.size,
            Attribute::X | Attribute::Y => return None,
        };
        let tokens = normalize_all(tokens);
        longest_match(&tokens, terms.iter().map(|t| (t.as_str(), ()))).map(|(term, ())| term)
    }
}
