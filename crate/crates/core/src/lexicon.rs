//! Moras, accent class, and syllable weight.
//!
//! Words are bunsetsu-level units: a content word fused with its particles.
//! Each carries a romaji mora sequence and an accent nucleus position
//! (0 = unaccented, k = nucleus on the k-th mora, 1-based).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LexiconError {
    #[error("unknown mora token `{0}`")]
    UnknownMoraToken(String),
    #[error("empty mora sequence")]
    EmptyMoraSequence,
    #[error("accent nucleus {nucleus} out of range for {moras} moras")]
    AccentOutOfRange { nucleus: usize, moras: usize },
}

/// Phonological classification of a single mora.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoraKind {
    Regular,
    /// The moraic nasal `N`.
    MoraicNasal,
    /// The first half of a geminate, written `Q`.
    Geminate,
    /// A bare vowel continuing the previous mora's vowel (`ko.o`).
    LongVowelSecondHalf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mora {
    pub text: String,
    pub kind: MoraKind,
}

impl Mora {
    /// Vowel carried by this mora, if any (`N`/`Q` carry none).
    pub fn vowel(&self) -> Option<char> {
        match self.kind {
            MoraKind::MoraicNasal | MoraKind::Geminate => None,
            _ => self.text.chars().last(),
        }
    }
}

/// One lexical word plus its particles: surface form, moras, accent nucleus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PWordLex {
    pub surface: String,
    pub moras: Vec<Mora>,
    /// 0 = unaccented; k >= 1 = nucleus on the k-th mora (1-based).
    pub accent_nucleus: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AccentClass {
    /// Accented (carries a nucleus).
    A,
    /// Unaccented.
    U,
}

impl fmt::Display for AccentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AccentClass::A => write!(f, "A"),
            AccentClass::U => write!(f, "U"),
        }
    }
}

impl PWordLex {
    pub fn new(
        surface: &str,
        moras: Vec<Mora>,
        accent_nucleus: usize,
    ) -> Result<Self, LexiconError> {
        if moras.is_empty() {
            return Err(LexiconError::EmptyMoraSequence);
        }
        if accent_nucleus > moras.len() {
            return Err(LexiconError::AccentOutOfRange {
                nucleus: accent_nucleus,
                moras: moras.len(),
            });
        }
        Ok(PWordLex {
            surface: surface.to_string(),
            moras,
            accent_nucleus,
        })
    }

    pub fn accent_class(&self) -> AccentClass {
        if self.accent_nucleus >= 1 {
            AccentClass::A
        } else {
            AccentClass::U
        }
    }

    pub fn is_accented(&self) -> bool {
        self.accent_class() == AccentClass::A
    }

    /// True iff the first syllable is heavy: the second mora exists and is
    /// non-regular (moraic nasal, geminate, or a long-vowel continuation).
    /// Diphthong second halves do not count as heavy-making.
    pub fn first_syllable_heavy(&self) -> bool {
        self.moras
            .get(1)
            .map(|m| m.kind != MoraKind::Regular)
            .unwrap_or(false)
    }

    /// Dotted mora string, the inverse of [`parse_moras`].
    pub fn mora_string(&self) -> String {
        self.moras
            .iter()
            .map(|m| m.text.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Onsets of the romaji mora alphabet. A regular mora is onset + vowel.
const ONSETS: &[&str] = &[
    "", "k", "ky", "g", "gy", "s", "sh", "z", "j", "t", "ch", "ts", "d", "n", "ny", "h", "hy", "f",
    "b", "by", "p", "py", "m", "my", "y", "r", "ry", "w", "v",
];

const VOWELS: &[char] = &['a', 'i', 'u', 'e', 'o'];

fn is_cv_mora(token: &str) -> bool {
    let Some(last) = token.chars().last() else {
        return false;
    };
    if !VOWELS.contains(&last) {
        return false;
    }
    let onset = &token[..token.len() - last.len_utf8()];
    ONSETS.contains(&onset)
}

/// Parse a dotted mora string (`ko.o.e.N.de`) into classified moras.
pub fn parse_moras(text: &str) -> Result<Vec<Mora>, LexiconError> {
    let mut moras: Vec<Mora> = Vec::new();
    for token in text.split('.') {
        if token.is_empty() {
            return Err(LexiconError::UnknownMoraToken(String::new()));
        }
        let kind = if token == "N" {
            MoraKind::MoraicNasal
        } else if token == "Q" {
            MoraKind::Geminate
        } else if is_cv_mora(token) {
            let vowel_only = token.chars().count() == 1;
            let continues_long_vowel = vowel_only
                && moras
                    .last()
                    .and_then(|prev| prev.vowel())
                    .map(|v| token.starts_with(v))
                    .unwrap_or(false);
            if continues_long_vowel {
                MoraKind::LongVowelSecondHalf
            } else {
                MoraKind::Regular
            }
        } else {
            return Err(LexiconError::UnknownMoraToken(token.to_string()));
        };
        moras.push(Mora {
            text: token.to_string(),
            kind,
        });
    }
    if moras.is_empty() {
        return Err(LexiconError::EmptyMoraSequence);
    }
    Ok(moras)
}
