//! Per-occurrence emotion aggregation and the rolling mood window.
//!
//! Each atomic step of an occurrence may carry one observed emotion; the
//! occurrence's overall emotion is the strict majority over those counters,
//! with ties broken toward the lowest canonical index so the result is total
//! and deterministic. The overall emotion maps to a valence, and a sliding
//! window over recent occurrence valences yields the resident's mood.

use crate::emotion::{Emotion, Valence};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// Per-emotion event counts for one occurrence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmotionCounters {
    pub angry: u32,
    pub disgust: u32,
    pub fear: u32,
    pub happy: u32,
    pub sad: u32,
    pub surprise: u32,
    pub neutral: u32,
}

impl EmotionCounters {
    pub fn get(&self, emotion: Emotion) -> u32 {
        match emotion {
            Emotion::Angry => self.angry,
            Emotion::Disgust => self.disgust,
            Emotion::Fear => self.fear,
            Emotion::Happy => self.happy,
            Emotion::Sad => self.sad,
            Emotion::Surprise => self.surprise,
            Emotion::Neutral => self.neutral,
        }
    }

    pub fn increment(&mut self, emotion: Emotion) {
        let slot = match emotion {
            Emotion::Angry => &mut self.angry,
            Emotion::Disgust => &mut self.disgust,
            Emotion::Fear => &mut self.fear,
            Emotion::Happy => &mut self.happy,
            Emotion::Sad => &mut self.sad,
            Emotion::Surprise => &mut self.surprise,
            Emotion::Neutral => &mut self.neutral,
        };
        *slot += 1;
    }

    /// Counts in canonical emotion order.
    pub fn counts(&self) -> [u32; Emotion::COUNT] {
        [
            self.angry,
            self.disgust,
            self.fear,
            self.happy,
            self.sad,
            self.surprise,
            self.neutral,
        ]
    }

    pub fn from_counts(counts: [u32; Emotion::COUNT]) -> EmotionCounters {
        EmotionCounters {
            angry: counts[0],
            disgust: counts[1],
            fear: counts[2],
            happy: counts[3],
            sad: counts[4],
            surprise: counts[5],
            neutral: counts[6],
        }
    }

    /// Total number of emotion-bearing events tallied.
    pub fn total(&self) -> u32 {
        self.counts().iter().sum()
    }
}

/// The emotion with the strictly greatest counter; ties (including all-zero
/// counters) resolve to the tied emotion earliest in canonical order.
pub fn aggregate_emotions(counters: &EmotionCounters) -> Emotion {
    let counts = counters.counts();
    let mut best = 0usize;
    for (i, &count) in counts.iter().enumerate().skip(1) {
        if count > counts[best] {
            best = i;
        }
    }
    Emotion::from_index(best).expect("index within canonical range")
}

/// Configurable emotion→valence mapping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValenceMap {
    pub angry: Valence,
    pub disgust: Valence,
    pub fear: Valence,
    pub happy: Valence,
    pub sad: Valence,
    pub surprise: Valence,
    pub neutral: Valence,
}

impl Default for ValenceMap {
    fn default() -> ValenceMap {
        ValenceMap {
            angry: Valence::Negative,
            disgust: Valence::Negative,
            fear: Valence::Negative,
            happy: Valence::Positive,
            sad: Valence::Negative,
            surprise: Valence::Positive,
            neutral: Valence::Neutral,
        }
    }
}

impl ValenceMap {
    pub fn valence_of(&self, emotion: Emotion) -> Valence {
        match emotion {
            Emotion::Angry => self.angry,
            Emotion::Disgust => self.disgust,
            Emotion::Fear => self.fear,
            Emotion::Happy => self.happy,
            Emotion::Sad => self.sad,
            Emotion::Surprise => self.surprise,
            Emotion::Neutral => self.neutral,
        }
    }
}

/// Valence of an emotion under the default mapping.
pub fn map_valence(emotion: Emotion) -> Valence {
    ValenceMap::default().valence_of(emotion)
}

/// Aggregated affect of one closed occurrence.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OccurrenceAffect {
    pub counters: EmotionCounters,
    pub overall: Emotion,
    pub valence: Valence,
    /// True when no step of the occurrence carried emotion evidence; the
    /// overall emotion is then the bare tie-break default and downstream
    /// consumers should filter on this flag.
    pub no_evidence: bool,
}

/// Tallies the per-step emotions of one occurrence (steps without evidence
/// are skipped) and derives the overall emotion and valence.
pub fn occurrence_affect<I>(step_emotions: I, map: &ValenceMap) -> OccurrenceAffect
where
    I: IntoIterator<Item = Option<Emotion>>,
{
    let mut counters = EmotionCounters::default();
    for emotion in step_emotions.into_iter().flatten() {
        counters.increment(emotion);
    }
    affect_from_counters(counters, map)
}

/// Derives overall emotion and valence from already-tallied counters.
pub fn affect_from_counters(counters: EmotionCounters, map: &ValenceMap) -> OccurrenceAffect {
    let overall = aggregate_emotions(&counters);
    OccurrenceAffect {
        no_evidence: counters.total() == 0,
        valence: map.valence_of(overall),
        overall,
        counters,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct MoodEntry {
    valence: Valence,
    weight: f64,
    /// Mood value that held right after this entry was applied; becomes the
    /// anchor once the entry slides out of the window.
    mood_after: Valence,
}

/// Rolling mood over the last `window_size` occurrence valences.
///
/// The mood is the (optionally weighted) majority among non-Neutral window
/// entries; on a tie, or when the window holds only Neutral entries, the
/// mood falls back to the value it had immediately before the window. The
/// mood is therefore a function of the last `window_size` valences plus that
/// one anchor value. The initial mood is Negative, the conservative default
/// for assistive alerting.
#[derive(Clone, Debug, PartialEq)]
pub struct MoodState {
    window: VecDeque<MoodEntry>,
    window_size: usize,
    /// Mood immediately before the oldest window entry.
    anchor: Valence,
    current: Valence,
}

impl MoodState {
    pub fn new(window_size: usize) -> MoodState {
        MoodState::with_initial(window_size, Valence::Negative)
    }

    pub fn with_initial(window_size: usize, initial: Valence) -> MoodState {
        assert!(window_size >= 1, "mood window must hold at least one entry");
        MoodState {
            window: VecDeque::with_capacity(window_size),
            window_size,
            anchor: initial,
            current: initial,
        }
    }

    pub fn current(&self) -> Valence {
        self.current
    }

    pub fn window(&self) -> impl Iterator<Item = Valence> + '_ {
        self.window.iter().map(|e| e.valence)
    }

    pub fn window_size(&self) -> usize {
        self.window_size
    }

    /// Pushes one occurrence valence with unit weight.
    pub fn update(&mut self, valence: Valence) {
        self.update_weighted(valence, 1.0);
    }

    /// Pushes one occurrence valence with an intensity weight (weights let
    /// strongly felt emotions move the mood more; all-ones reduces to plain
    /// counting).
    pub fn update_weighted(&mut self, valence: Valence, weight: f64) {
        debug_assert!(weight >= 0.0, "mood weights are non-negative");
        if self.window.len() == self.window_size {
            let evicted = self.window.pop_front().expect("window is full");
            self.anchor = evicted.mood_after;
        }
        self.window.push_back(MoodEntry {
            valence,
            weight,
            mood_after: self.current, // placeholder, overwritten below
        });
        let mut positive = 0.0;
        let mut negative = 0.0;
        for entry in &self.window {
            match entry.valence {
                Valence::Positive => positive += entry.weight,
                Valence::Negative => negative += entry.weight,
                Valence::Neutral => {}
            }
        }
        self.current = if positive > negative {
            Valence::Positive
        } else if negative > positive {
            Valence::Negative
        } else {
            self.anchor
        };
        self.window
            .back_mut()
            .expect("entry just pushed")
            .mood_after = self.current;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent argmax oracle: scan all seven counters by hand.
    fn argmax_oracle(counts: [u32; 7]) -> Emotion {
        let mut best_idx = 0;
        let mut best = counts[0];
        for i in 1..7 {
            if counts[i] > best {
                best = counts[i];
                best_idx = i;
            }
        }
        Emotion::from_index(best_idx).unwrap()
    }

    #[test]
    fn unique_maximum_wins() {
        let c = EmotionCounters::from_counts([0, 0, 0, 3, 0, 0, 0]);
        assert_eq!(aggregate_emotions(&c), Emotion::Happy);
    }

    #[test]
    fn ties_resolve_to_canonical_order() {
        let c = EmotionCounters::from_counts([2, 0, 0, 0, 2, 0, 0]);
        assert_eq!(aggregate_emotions(&c), Emotion::Angry);
        let zero = EmotionCounters::default();
        assert_eq!(aggregate_emotions(&zero), Emotion::Angry);
    }

    #[test]
    fn default_valence_mapping() {
        assert_eq!(map_valence(Emotion::Happy), Valence::Positive);
        assert_eq!(map_valence(Emotion::Surprise), Valence::Positive);
        assert_eq!(map_valence(Emotion::Fear), Valence::Negative);
        assert_eq!(map_valence(Emotion::Angry), Valence::Negative);
        assert_eq!(map_valence(Emotion::Disgust), Valence::Negative);
        assert_eq!(map_valence(Emotion::Sad), Valence::Negative);
        assert_eq!(map_valence(Emotion::Neutral), Valence::Neutral);
    }

    #[test]
    fn occurrence_affect_tallies_by_hand() {
        use Emotion::*;
        let affect = occurrence_affect(
            [Some(Happy), Some(Happy), Some(Neutral), Some(Happy), Some(Sad)],
            &ValenceMap::default(),
        );
        assert_eq!(affect.counters.happy, 3);
        assert_eq!(affect.counters.neutral, 1);
        assert_eq!(affect.counters.sad, 1);
        assert_eq!(affect.counters.total(), 5);
        assert_eq!(affect.overall, Happy);
        assert_eq!(affect.valence, Valence::Positive);
        assert!(!affect.no_evidence);
    }

    #[test]
    fn occurrence_without_evidence_is_flagged() {
        let affect = occurrence_affect([None, None, None], &ValenceMap::default());
        assert_eq!(affect.counters.total(), 0);
        assert_eq!(affect.overall, Emotion::Angry); // tie-break default
        assert!(affect.no_evidence);
    }

    #[test]
    fn singleton_surprise_is_positive() {
        let affect = occurrence_affect([Some(Emotion::Surprise)], &ValenceMap::default());
        assert_eq!(affect.overall, Emotion::Surprise);
        assert_eq!(affect.valence, Valence::Positive);
    }

    #[test]
    fn mood_majority_over_window() {
        use Valence::*;
        let mut mood = MoodState::new(5);
        for v in [Negative, Negative, Negative, Positive, Negative] {
            mood.update(v);
        }
        assert_eq!(mood.current(), Negative);
    }

    #[test]
    fn unanimous_window_flips_mood() {
        let mut mood = MoodState::new(5);
        for _ in 0..5 {
            mood.update(Valence::Positive);
        }
        assert_eq!(mood.current(), Valence::Positive);
    }

    #[test]
    fn tied_window_keeps_previous_mood() {
        use Valence::*;
        let mut mood = MoodState::new(4);
        for v in [Positive, Negative, Positive, Negative] {
            mood.update(v);
        }
        assert_eq!(mood.current(), Negative); // initial mood was Negative

        let mut mood = MoodState::with_initial(4, Positive);
        for v in [Positive, Negative, Positive, Negative] {
            mood.update(v);
        }
        assert_eq!(mood.current(), Positive);
    }

    #[test]
    fn neutral_entries_do_not_steer_mood() {
        use Valence::*;
        let mut mood = MoodState::new(5);
        mood.update(Positive);
        assert_eq!(mood.current(), Positive);
        for _ in 0..4 {
            mood.update(Neutral);
        }
        assert_eq!(mood.current(), Positive);
        // one more neutral evicts the positive entry; all-neutral keeps value
        mood.update(Neutral);
        assert_eq!(mood.current(), Positive);
    }

    #[test]
    fn weighted_updates_shift_the_majority() {
        use Valence::*;
        let mut mood = MoodState::new(3);
        mood.update_weighted(Positive, 5.0);
        mood.update(Negative);
        mood.update(Negative);
        assert_eq!(mood.current(), Positive);
    }

    #[test]
    fn exhaustive_small_counter_sweep_matches_oracle() {
        // all vectors in [0,3]^7
        for code in 0..16384u32 {
            let mut counts = [0u32; 7];
            let mut c = code;
            for slot in counts.iter_mut() {
                *slot = c & 3;
                c >>= 2;
            }
            let counters = EmotionCounters::from_counts(counts);
            assert_eq!(aggregate_emotions(&counters), argmax_oracle(counts));
        }
    }

    proptest! {
        #[test]
        fn aggregate_matches_oracle(counts in proptest::array::uniform7(0u32..1000)) {
            let counters = EmotionCounters::from_counts(counts);
            prop_assert_eq!(aggregate_emotions(&counters), argmax_oracle(counts));
        }

        #[test]
        fn counter_total_conserves_events(events in proptest::collection::vec(
            proptest::option::of(0usize..7), 0..60,
        )) {
            let emotions: Vec<Option<Emotion>> = events
                .iter()
                .map(|o| o.map(|i| Emotion::from_index(i).unwrap()))
                .collect();
            let bearing = emotions.iter().filter(|e| e.is_some()).count() as u32;
            let affect = occurrence_affect(emotions.clone(), &ValenceMap::default());
            prop_assert_eq!(affect.counters.total(), bearing);
        }

        #[test]
        fn overall_emotion_is_order_free(events in proptest::collection::vec(0usize..7, 1..40)) {
            let forward: Vec<Option<Emotion>> =
                events.iter().map(|&i| Emotion::from_index(i)).collect();
            let mut reversed = forward.clone();
            reversed.reverse();
            let map = ValenceMap::default();
            prop_assert_eq!(
                occurrence_affect(forward, &map).overall,
                occurrence_affect(reversed, &map).overall
            );
        }

        #[test]
        fn unanimous_window_wins_regardless_of_prior(
            positive in proptest::bool::ANY,
            window in 1usize..8,
        ) {
            let v = if positive { Valence::Positive } else { Valence::Negative };
            let initial = if positive { Valence::Negative } else { Valence::Positive };
            let mut mood = MoodState::with_initial(window, initial);
            for _ in 0..window {
                mood.update(v);
            }
            prop_assert_eq!(mood.current(), v);
        }

        #[test]
        fn mood_depends_only_on_window_and_pre_window_value(
            stream in proptest::collection::vec(0usize..3, 1..40),
            window in 1usize..6,
        ) {
            let valences: Vec<Valence> = stream
                .iter()
                .map(|&i| [Valence::Positive, Valence::Negative, Valence::Neutral][i])
                .collect();

            let mut mood = MoodState::new(window);
            let mut history = vec![mood.current()];
            for &v in &valences {
                mood.update(v);
                history.push(mood.current());
            }

            // replay only the final window from the mood that held before it
            let tail_start = valences.len().saturating_sub(window);
            let mut replay = MoodState::with_initial(window, history[tail_start]);
            for &v in &valences[tail_start..] {
                replay.update(v);
            }
            prop_assert_eq!(replay.current(), mood.current());
        }
    }
}
