//! Semitone metrics on rendered contours and pattern classification for
//! initial lowering and rhythmic boost.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::f0::Contour;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasureError {
    #[error("frequencies must be positive")]
    NonPositiveFrequency,
    #[error("fewer than two moras follow gap {0}")]
    InsufficientMoras(usize),
    #[error("no frames for word {0}")]
    MissingWord(usize),
}

/// Signed interval from `f0` to `f1` in semitones: `12 * log2(f1 / f0)`.
pub fn semitones(f1: f64, f0: f64) -> Result<f64, MeasureError> {
    if f1 <= 0.0 || f0 <= 0.0 {
        return Err(MeasureError::NonPositiveFrequency);
    }
    Ok(12.0 * (f1 / f0).log2())
}

fn word_start_mora(contour: &Contour, word: usize) -> Option<usize> {
    contour
        .frames
        .iter()
        .find(|f| f.pword == word)
        .map(|f| f.mora)
}

fn mora_min(contour: &Contour, mora: usize) -> Option<f64> {
    contour
        .frames
        .iter()
        .filter(|f| f.mora == mora)
        .map(|f| f.f0)
        .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.min(v))))
}

fn mora_max(contour: &Contour, mora: usize) -> Option<f64> {
    contour
        .frames
        .iter()
        .filter(|f| f.mora == mora)
        .map(|f| f.f0)
        .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
}

/// Initial-lowering rise after the gap between word `gap_index` and
/// `gap_index + 1`: maximum pitch of the second mora after the gap minus
/// the minimal pitch of the first mora after it, in semitones.
pub fn rise_size(contour: &Contour, gap_index: usize) -> Result<f64, MeasureError> {
    let m1 = word_start_mora(contour, gap_index + 1)
        .ok_or(MeasureError::InsufficientMoras(gap_index))?;
    let low = mora_min(contour, m1).ok_or(MeasureError::InsufficientMoras(gap_index))?;
    let high = mora_max(contour, m1 + 1).ok_or(MeasureError::InsufficientMoras(gap_index))?;
    semitones(high, low)
}

/// Peak descent from word `word_i` to the later word `word_j`: later peak
/// minus earlier peak in semitones, so downstep yields negative values.
pub fn peak_descent(contour: &Contour, word_i: usize, word_j: usize) -> Result<f64, MeasureError> {
    let peak = |w: usize| -> Result<f64, MeasureError> {
        contour
            .frames
            .iter()
            .filter(|f| f.pword == w)
            .map(|f| f.f0)
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
            .ok_or(MeasureError::MissingWord(w))
    };
    semitones(peak(word_j)?, peak(word_i)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeKind {
    Tree1,
    Tree2,
}

/// Natural-prosody pattern for initial lowering: in tree 1 the rise at B
/// exceeds the rise at A; in tree 2 the rise at A exceeds the rise at B.
pub fn classify_initial_lowering(rise_a: f64, rise_b: f64, kind: TreeKind) -> bool {
    match kind {
        TreeKind::Tree1 => rise_b > rise_a,
        TreeKind::Tree2 => rise_a > rise_b,
    }
}

/// Natural-prosody pattern for rhythmic boost: downstep between the first
/// and second pair (d12, d34 negative) with the boost weakening the descent
/// in the middle (d23 greater than both by at least `margin`).
pub fn classify_boost(d12: f64, d23: f64, d34: f64, margin: f64) -> bool {
    d12 < 0.0 && d34 < 0.0 && d23 > d12 + margin && d23 > d34 + margin
}

#[derive(Debug, Clone, Serialize)]
pub struct InitialLoweringRow {
    pub model: String,
    pub condition: String,
    pub rise_a_st: f64,
    pub rise_b_st: f64,
    pub natural_pattern: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoostRow {
    pub model: String,
    pub sentence: String,
    pub d12_st: f64,
    pub d23_st: f64,
    pub d34_st: f64,
    pub natural_pattern: bool,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct MetricsReport {
    pub initial_lowering: Vec<InitialLoweringRow>,
    pub boost: Vec<BoostRow>,
}

impl MetricsReport {
    pub fn all_natural(&self) -> bool {
        self.initial_lowering.iter().all(|r| r.natural_pattern)
            && self.boost.iter().all(|r| r.natural_pattern)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "Yes"
    } else {
        "No"
    }
}

impl fmt::Display for MetricsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.initial_lowering.is_empty() {
            writeln!(f, "Initial lowering (rise size at A and B, semitones)")?;
            writeln!(
                f,
                "{:<10} {:<8} {:>9} {:>9}  natural?",
                "model", "cond", "RiseSizeA", "RiseSizeB"
            )?;
            for r in &self.initial_lowering {
                writeln!(
                    f,
                    "{:<10} {:<8} {:>9.2} {:>9.2}  {}",
                    r.model,
                    r.condition,
                    r.rise_a_st,
                    r.rise_b_st,
                    verdict(r.natural_pattern)
                )?;
            }
        }
        if !self.boost.is_empty() {
            writeln!(f, "F0 descent between nouns (semitones)")?;
            writeln!(
                f,
                "{:<10} {:<8} {:>7} {:>7} {:>7}  natural?",
                "model", "sentence", "N1-N2", "N2-N3", "N3-N4"
            )?;
            for r in &self.boost {
                writeln!(
                    f,
                    "{:<10} {:<8} {:>7.2} {:>7.2} {:>7.2}  {}",
                    r.model,
                    r.sentence,
                    r.d12_st,
                    r.d23_st,
                    r.d34_st,
                    verdict(r.natural_pattern)
                )?;
            }
        }
        Ok(())
    }
}
