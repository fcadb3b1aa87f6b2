//! Deterministic rule-based F0 rendering.
//!
//! Pitch is handled in semitones relative to `base_hz`. Each minimal
//! PPhrase gets a boundary %L on its first mora (lowered further for each
//! extra left edge opening there) and a phrasal H on its second mora unless
//! the first syllable is accented or heavy. Accent nuclei get H* followed
//! by a fall L. A register multiplier starts at 1.0 per clause, is
//! compressed by `downstep_factor` after every accented word, and recovers
//! part of the lost range at each phrase boundary in proportion to the
//! number of left edges there. Targets are placed at mora centers and
//! interpolated log-linearly.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::spmh::ProsodicTree;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum F0Error {
    #[error("no tone targets to render")]
    EmptyTargets,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct F0Params {
    pub base_hz: f64,
    /// Semitones above base for phrasal and accent H targets.
    pub h_level_st: f64,
    /// Semitones for the boundary %L.
    pub l_level_st: f64,
    /// Extra lowering of %L per PPhrase left edge beyond the first.
    pub dip_per_edge_st: f64,
    /// Register multiplier applied after each accented word (0 < delta < 1).
    pub downstep_factor: f64,
    /// Fraction of lost register recovered per left edge (0 <= rho <= 1).
    pub edge_recovery: f64,
    pub mora_duration_s: f64,
    pub frame_rate_hz: f64,
    /// Utterance-final L% level in semitones.
    pub final_l_st: f64,
}

impl Default for F0Params {
    fn default() -> Self {
        F0Params {
            base_hz: 120.0,
            h_level_st: 10.0,
            l_level_st: 0.0,
            dip_per_edge_st: 2.0,
            downstep_factor: 0.7,
            edge_recovery: 0.4,
            mora_duration_s: 0.12,
            frame_rate_hz: 100.0,
            final_l_st: -4.0,
        }
    }
}

impl F0Params {
    pub fn validate(&self) -> Result<(), F0Error> {
        let err = |msg: &str| Err(F0Error::InvalidParams(msg.to_string()));
        // NaN fails every positive check below.
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.base_hz) {
            return err("base_hz must be positive");
        }
        if !(positive(self.downstep_factor) && self.downstep_factor < 1.0) {
            return err("downstep_factor must be in (0, 1)");
        }
        if !(0.0..=1.0).contains(&self.edge_recovery) {
            return err("edge_recovery must be in [0, 1]");
        }
        if !positive(self.mora_duration_s) {
            return err("mora_duration_s must be positive");
        }
        if !positive(self.frame_rate_hz) {
            return err("frame_rate_hz must be positive");
        }
        if self.frame_rate_hz * self.mora_duration_s < 1.0 {
            return err("frame rate too low to cover every mora");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Tone {
    /// %L at a PPhrase left boundary.
    BoundaryL,
    /// Phrasal H on the second mora.
    PhrasalH,
    /// Lexical accent H*.
    AccentHStar,
    /// The +L fall after the nucleus.
    AccentFallL,
    /// Utterance-final L%.
    FinalL,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ToneTarget {
    pub mora_index: usize,
    pub pword_index: usize,
    pub tone: Tone,
    /// Semitones relative to `base_hz`, register already applied.
    pub level_st: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct Frame {
    pub t: f64,
    pub f0: f64,
    pub mora: usize,
    pub pword: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Contour {
    pub frame_rate_hz: f64,
    pub frames: Vec<Frame>,
}

impl Contour {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("contour serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,f0,mora,pword\n");
        for f in &self.frames {
            out.push_str(&format!("{},{},{},{}\n", f.t, f.f0, f.mora, f.pword));
        }
        out
    }
}

fn st_of_ratio(ratio: f64) -> f64 {
    12.0 * ratio.log2()
}

/// Register multiplier in force at each word's peak, scanned left to right:
/// R starts at 1.0, is multiplied by `downstep_factor` after each accented
/// word, and at each gap with `n >= 1` left edges recovers
/// `(1 - R) * (1 - (1 - rho)^n)` of the lost range.
pub fn compute_registers(ptree: &ProsodicTree, params: &F0Params) -> Vec<f64> {
    let words = ptree.words();
    let gaps = ptree.left_edge_counts();
    let delta = params.downstep_factor;
    let rho = params.edge_recovery;
    let mut r = 1.0_f64;
    let mut out = Vec::with_capacity(words.len());
    for (i, w) in words.iter().enumerate() {
        out.push(r);
        if w.is_accented() {
            r *= delta;
        }
        if let Some(gap) = gaps.get(i) {
            let n = gap.left_edge_count;
            if n > 0 {
                r += (1.0 - r) * (1.0 - (1.0 - rho).powi(n as i32));
            }
        }
    }
    out
}

/// Tonal targets for the whole utterance, sorted by mora position.
pub fn assign_tones(ptree: &ProsodicTree, params: &F0Params) -> Vec<ToneTarget> {
    let words = ptree.words();
    if words.is_empty() {
        return Vec::new();
    }
    let registers = compute_registers(ptree, params);
    let reg_st: Vec<f64> = registers.iter().map(|&r| st_of_ratio(r)).collect();
    let starts = ptree.phrase_starts();

    // Global mora offset of each word, and word index per mora.
    let mut offsets = Vec::with_capacity(words.len());
    let mut mora_words = Vec::new();
    let mut total = 0usize;
    for (i, w) in words.iter().enumerate() {
        offsets.push(total);
        total += w.moras.len();
        mora_words.extend(std::iter::repeat_n(i, w.moras.len()));
    }

    let mut targets: Vec<ToneTarget> = Vec::new();
    for (start_word, group) in ptree.minimal_phrases() {
        let first = group[0];
        let n_edges = starts[start_word].max(1);
        let m0 = offsets[start_word];
        let group_moras: usize = group.iter().map(|w| w.moras.len()).sum();
        targets.push(ToneTarget {
            mora_index: m0,
            pword_index: start_word,
            tone: Tone::BoundaryL,
            level_st: params.l_level_st - params.dip_per_edge_st * (n_edges as f64 - 1.0)
                + reg_st[start_word],
        });
        let lowering_applies = first.accent_nucleus != 1 && !first.first_syllable_heavy();
        let mut emitted_h = false;
        if group_moras >= 2 && lowering_applies {
            let h_word = mora_words[m0 + 1];
            targets.push(ToneTarget {
                mora_index: m0 + 1,
                pword_index: h_word,
                tone: Tone::PhrasalH,
                level_st: params.h_level_st + reg_st[h_word],
            });
            emitted_h = true;
        }
        let mut any_accent = false;
        for (k, w) in group.iter().enumerate() {
            let word_index = start_word + k;
            if w.accent_nucleus >= 1 {
                any_accent = true;
                let nucleus = offsets[word_index] + w.accent_nucleus - 1;
                targets.push(ToneTarget {
                    mora_index: nucleus,
                    pword_index: word_index,
                    tone: Tone::AccentHStar,
                    level_st: params.h_level_st + reg_st[word_index],
                });
                // +L on the next mora, co-located when the nucleus is final.
                let fall = if w.accent_nucleus < w.moras.len() {
                    nucleus + 1
                } else {
                    nucleus
                };
                targets.push(ToneTarget {
                    mora_index: fall,
                    pword_index: word_index,
                    tone: Tone::AccentFallL,
                    level_st: params.l_level_st + reg_st[word_index],
                });
            }
        }
        // Unaccented phrases plateau at the phrasal H level.
        let m_last = m0 + group_moras - 1;
        if !any_accent && emitted_h && m_last > m0 + 1 {
            let last_word = start_word + group.len() - 1;
            targets.push(ToneTarget {
                mora_index: m_last,
                pword_index: last_word,
                tone: Tone::PhrasalH,
                level_st: params.h_level_st + reg_st[last_word],
            });
        }
    }
    let last_word = words.len() - 1;
    targets.push(ToneTarget {
        mora_index: total - 1,
        pword_index: last_word,
        tone: Tone::FinalL,
        level_st: params.final_l_st + reg_st[last_word],
    });
    targets.sort_by(|a, b| a.mora_index.cmp(&b.mora_index).then(a.tone.cmp(&b.tone)));
    targets
}

/// Piecewise log-linear interpolation of targets sampled at the frame rate.
/// Targets sit at mora centers; multiple targets on one mora are spaced
/// evenly within it. Constant extrapolation before the first and after the
/// last target.
pub fn render_contour(
    targets: &[ToneTarget],
    mora_words: &[usize],
    params: &F0Params,
) -> Result<Contour, F0Error> {
    params.validate()?;
    if targets.is_empty() || mora_words.is_empty() {
        return Err(F0Error::EmptyTargets);
    }
    let dur = params.mora_duration_s;

    // (time, semitone level) anchor points.
    let mut anchors: Vec<(f64, f64)> = Vec::with_capacity(targets.len());
    let mut i = 0;
    while i < targets.len() {
        let mora = targets[i].mora_index;
        let mut j = i;
        while j < targets.len() && targets[j].mora_index == mora {
            j += 1;
        }
        let k = j - i;
        for (slot, target) in targets[i..j].iter().enumerate() {
            let frac = (slot as f64 + 1.0) / (k as f64 + 1.0);
            anchors.push(((mora as f64 + frac) * dur, target.level_st));
        }
        i = j;
    }

    let total = mora_words.len() as f64 * dur;
    let frame_count = (total * params.frame_rate_hz).ceil() as usize;
    let mut frames = Vec::with_capacity(frame_count);
    for fi in 0..frame_count {
        let t = fi as f64 / params.frame_rate_hz;
        let st = level_at(&anchors, t);
        let mora = ((t / dur) as usize).min(mora_words.len() - 1);
        frames.push(Frame {
            t,
            f0: params.base_hz * (st / 12.0).exp2(),
            mora,
            pword: mora_words[mora],
        });
    }
    Ok(Contour {
        frame_rate_hz: params.frame_rate_hz,
        frames,
    })
}

fn level_at(anchors: &[(f64, f64)], t: f64) -> f64 {
    let first = anchors[0];
    let last = anchors[anchors.len() - 1];
    if t <= first.0 {
        return first.1;
    }
    if t >= last.0 {
        return last.1;
    }
    let idx = anchors.partition_point(|&(at, _)| at <= t);
    let (t0, v0) = anchors[idx - 1];
    let (t1, v1) = anchors[idx];
    if t1 <= t0 {
        return v1;
    }
    v0 + (v1 - v0) * (t - t0) / (t1 - t0)
}

/// Full rendering pipeline: registers, tone targets, sampled contour.
pub fn synthesize(ptree: &ProsodicTree, params: &F0Params) -> Result<Contour, F0Error> {
    let targets = assign_tones(ptree, params);
    let mut mora_words = Vec::new();
    for (i, w) in ptree.words().iter().enumerate() {
        mora_words.extend(std::iter::repeat_n(i, w.moras.len()));
    }
    render_contour(&targets, &mora_words, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{load_fixture, FixtureId};
    use crate::lexicon::{parse_moras, PWordLex};
    use crate::spmh::{project, PNode, ProsodicTree};
    use crate::tree::dependency_distances;
    use crate::wellformedness::{apply_all, ConstraintConfig};

    fn minimal(surface: &str, moras: &str, accent: usize) -> PNode {
        PNode::Phrase(vec![PNode::Word(
            PWordLex::new(surface, parse_moras(moras).unwrap(), accent).unwrap(),
        )])
    }

    #[test]
    fn registers_two_accented_no_recovery() {
        let t = ProsodicTree {
            children: vec![minimal("taka", "ta.ka", 1), minimal("hana", "ha.na", 1)],
        };
        let params = F0Params {
            edge_recovery: 0.0,
            ..Default::default()
        };
        assert_eq!(compute_registers(&t, &params), vec![1.0, 0.7]);
    }

    #[test]
    fn registers_all_unaccented() {
        let t = ProsodicTree {
            children: vec![minimal("naka", "na.ka", 0), minimal("hana", "ha.na", 0)],
        };
        let regs = compute_registers(&t, &F0Params::default());
        assert_eq!(regs, vec![1.0, 1.0]);
    }

    #[test]
    fn registers_grouped_recurrence() {
        // ((1 2)(3 4)): gaps have 1, 2, 1 left edges.
        let t = ProsodicTree {
            children: vec![PNode::Phrase(vec![
                PNode::Phrase(vec![minimal("w1", "ta.ka", 1), minimal("w2", "ta.ka", 1)]),
                PNode::Phrase(vec![minimal("w3", "ta.ka", 1), minimal("w4", "ta.ka", 1)]),
            ])],
        };
        let gap_counts: Vec<usize> = t
            .left_edge_counts()
            .iter()
            .map(|j| j.left_edge_count)
            .collect();
        assert_eq!(gap_counts, vec![1, 2, 1]);
        let regs = compute_registers(&t, &F0Params::default());
        // Hand-evaluated recurrence with delta = 0.7, rho = 0.4:
        // 1.0; 0.7 + 0.3*0.4 = 0.82; 0.574 + 0.426*0.64 = 0.84664;
        // 0.592648 + 0.407352*0.4 = 0.7555888.
        let expected = [1.0, 0.82, 0.84664, 0.7555888];
        for (r, e) in regs.iter().zip(expected) {
            assert!((r - e).abs() < 1e-9, "register {r} != {e}");
        }
        // The 2-edge gap recovers more than a flat 1-edge gap would.
        let flat = ProsodicTree {
            children: vec![PNode::Phrase(vec![
                minimal("w1", "ta.ka", 1),
                minimal("w2", "ta.ka", 1),
                minimal("w3", "ta.ka", 1),
                minimal("w4", "ta.ka", 1),
            ])],
        };
        let flat_regs = compute_registers(&flat, &F0Params::default());
        assert!(regs[2] > flat_regs[2]);
    }

    #[test]
    fn tones_basic_phrase() {
        let f = load_fixture(FixtureId::Tree1).unwrap();
        let p = project(&f.tree).unwrap();
        let targets = assign_tones(&p, &F0Params::default());
        // %L on wa (mora 0), H on ga (mora 1).
        assert_eq!(targets[0].tone, Tone::BoundaryL);
        assert_eq!(targets[0].mora_index, 0);
        assert_eq!(targets[1].tone, Tone::PhrasalH);
        assert_eq!(targets[1].mora_index, 1);
    }

    #[test]
    fn nucleus_initial_word_gets_no_phrasal_h() {
        let t = ProsodicTree {
            children: vec![minimal("neko", "ne.ko", 1)],
        };
        let targets = assign_tones(&t, &F0Params::default());
        assert!(targets.iter().all(|t| t.tone != Tone::PhrasalH));
        assert!(targets.iter().any(|t| t.tone == Tone::AccentHStar));
    }

    #[test]
    fn heavy_initial_word_gets_no_phrasal_h() {
        let t = ProsodicTree {
            children: vec![minimal("kouende", "ko.o.e.N.de", 0)],
        };
        let targets = assign_tones(&t, &F0Params::default());
        assert!(targets.iter().all(|t| t.tone != Tone::PhrasalH));
    }

    #[test]
    fn deeper_boundary_lowers_the_dip() {
        let f1 = load_fixture(FixtureId::Tree1).unwrap();
        let p = project(&f1.tree).unwrap();
        let targets = assign_tones(&p, &F0Params::default());
        let boundary_levels: Vec<f64> = targets
            .iter()
            .filter(|t| t.tone == Tone::BoundaryL)
            .map(|t| t.level_st)
            .collect();
        // Gaps have 1, 2, 1 edges; the 2-edge boundary dips 2 st lower.
        assert_eq!(boundary_levels.len(), 4);
        assert!((boundary_levels[1] - boundary_levels[2] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn single_target_renders_flat() {
        let targets = vec![ToneTarget {
            mora_index: 0,
            pword_index: 0,
            tone: Tone::BoundaryL,
            level_st: 0.0,
        }];
        let c = render_contour(&targets, &[0], &F0Params::default()).unwrap();
        assert!(!c.frames.is_empty());
        for f in &c.frames {
            assert!((f.f0 - 120.0).abs() < 1e-9);
        }
    }

    #[test]
    fn empty_targets_rejected() {
        assert_eq!(
            render_contour(&[], &[0], &F0Params::default()),
            Err(F0Error::EmptyTargets)
        );
    }

    #[test]
    fn frames_are_positive_time_ordered_and_cover_moras() {
        let f = load_fixture(FixtureId::Boost4N).unwrap();
        let deps = dependency_distances(&f.tree).unwrap();
        let p = apply_all(
            &project(&f.tree).unwrap(),
            &ConstraintConfig::default(),
            &deps,
        );
        let c = synthesize(&p, &F0Params::default()).unwrap();
        let n_moras: usize = p.words().iter().map(|w| w.moras.len()).sum();
        let expected_frames = (n_moras as f64 * 0.12 * 100.0).ceil() as usize;
        assert_eq!(c.frames.len(), expected_frames);
        let mut covered = vec![false; n_moras];
        for pair in c.frames.windows(2) {
            assert!(pair[0].t < pair[1].t);
        }
        for frame in &c.frames {
            assert!(frame.f0 > 0.0);
            covered[frame.mora] = true;
        }
        assert!(covered.iter().all(|&b| b));
    }

    #[test]
    fn synthesize_is_deterministic() {
        let f = load_fixture(FixtureId::Tree1).unwrap();
        let deps = dependency_distances(&f.tree).unwrap();
        let p = apply_all(
            &project(&f.tree).unwrap(),
            &ConstraintConfig::default(),
            &deps,
        );
        let a = synthesize(&p, &F0Params::default()).unwrap();
        let b = synthesize(&p, &F0Params::default()).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn two_registers_give_expected_peak_ratio() {
        let t = ProsodicTree {
            children: vec![
                minimal("takai", "ta.ka.i", 2),
                minimal("hanaya", "ha.na.ya", 2),
            ],
        };
        let params = F0Params {
            edge_recovery: 0.0,
            ..Default::default()
        };
        let c = synthesize(&t, &params).unwrap();
        let peak = |word: usize| -> f64 {
            c.frames
                .iter()
                .filter(|f| f.pword == word)
                .map(|f| f.f0)
                .fold(f64::MIN, f64::max)
        };
        let ratio = peak(1) / peak(0);
        assert!((ratio - 0.7).abs() < 1e-9, "ratio {ratio}");
        assert!((12.0 * ratio.log2() + 6.1749).abs() < 0.01);
    }
}
