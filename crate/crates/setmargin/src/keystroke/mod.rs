//! Keystroke ingestion: raw press/release logs, temporal feature extraction,
//! synthetic user generation and protocol splits.
//!
//! A typed key produces two timestamped events (press, release) plus a
//! keycode. Four timing deltas are derived per key:
//!
//! * hold latency      `HL_k = release_k - press_k`
//! * inter-key latency `IL_k = press_k - release_{k-1}`
//! * press latency     `PL_k = press_k - press_{k-1}`
//! * release latency   `RL_k = release_k - release_{k-1}`
//!
//! The first key of a sequence has no predecessor, so its IL/PL/RL are 0.
//! All latencies are kept in seconds; keycodes are normalized to `[0, 1]`
//! by dividing by 255.

mod features;
mod parse;
mod split;
mod synthetic;

pub use features::extract_features;
pub use parse::{parse_log, serialize_logs, ParseOutcome};
pub use split::{split_dataset, DatasetSplit, SplitSpec};
pub use synthetic::{synthesize_dataset, ChannelModel, SyntheticUserSpec};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Number of feature channels per key: the four latencies plus the
/// normalized keycode.
pub const FEATURE_CHANNELS: usize = 5;

/// Default fixed time dimension for feature sequences.
pub const DEFAULT_SEQUENCE_LEN: usize = 50;

/// One key press/release pair. Times are seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KeystrokeEvent {
    pub keycode: u8,
    pub press_time: f64,
    pub release_time: f64,
}

impl KeystrokeEvent {
    pub fn new(keycode: u8, press_time: f64, release_time: f64) -> Result<Self> {
        if release_time < press_time {
            return Err(Error::Data(format!(
                "release time {release_time} precedes press time {press_time}"
            )));
        }
        Ok(Self { keycode, press_time, release_time })
    }

    pub fn hold_latency(&self) -> f64 {
        self.release_time - self.press_time
    }
}

/// All key events of one typed sentence, ordered by press time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionLog {
    pub subject_id: String,
    pub session_id: String,
    pub events: Vec<KeystrokeEvent>,
}

impl SessionLog {
    pub fn new(subject_id: impl Into<String>, session_id: impl Into<String>, mut events: Vec<KeystrokeEvent>) -> Result<Self> {
        if events.is_empty() {
            return Err(Error::Data("session with no events".into()));
        }
        events.sort_by(|a, b| a.press_time.total_cmp(&b.press_time));
        Ok(Self { subject_id: subject_id.into(), session_id: session_id.into(), events })
    }

    pub fn key_count(&self) -> usize {
        self.events.len()
    }
}

/// Fixed-length `M x 5` feature matrix with a validity mask.
///
/// Rows `valid_len..` are exactly zero in all channels and are skipped by
/// every downstream computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureSequence {
    pub subject_id: String,
    pub session_id: String,
    /// Row-major `max_len x FEATURE_CHANNELS` values.
    rows: Vec<f64>,
    max_len: usize,
    valid_len: usize,
}

impl FeatureSequence {
    pub(crate) fn from_rows(
        subject_id: String,
        session_id: String,
        rows: Vec<f64>,
        max_len: usize,
        valid_len: usize,
    ) -> Self {
        debug_assert_eq!(rows.len(), max_len * FEATURE_CHANNELS);
        debug_assert!(valid_len <= max_len);
        Self { subject_id, session_id, rows, max_len, valid_len }
    }

    /// The fixed time dimension `M`.
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Number of non-padded rows.
    pub fn valid_len(&self) -> usize {
        self.valid_len
    }

    /// Feature row `t`, `FEATURE_CHANNELS` values.
    pub fn row(&self, t: usize) -> &[f64] {
        &self.rows[t * FEATURE_CHANNELS..(t + 1) * FEATURE_CHANNELS]
    }

    /// Iterator over the non-padded rows.
    pub fn valid_rows(&self) -> impl Iterator<Item = &[f64]> {
        (0..self.valid_len).map(move |t| self.row(t))
    }

    /// Re-pad to a different fixed length. Truncates valid rows if
    /// `new_len < valid_len`.
    pub fn repad(&self, new_len: usize) -> FeatureSequence {
        let valid = self.valid_len.min(new_len);
        let mut rows = vec![0.0; new_len * FEATURE_CHANNELS];
        rows[..valid * FEATURE_CHANNELS].copy_from_slice(&self.rows[..valid * FEATURE_CHANNELS]);
        FeatureSequence::from_rows(
            self.subject_id.clone(),
            self.session_id.clone(),
            rows,
            new_len,
            valid,
        )
    }
}
