//! Parametric synthetic typists for desk-scale experiments.
//!
//! Each subject draws a per-channel latency profile once (hold latency and
//! inter-key gap, mean + standard deviation); each session then samples key
//! timings around that profile. Subject means are stratified over the
//! configured range under a seeded permutation, so profiles are spread out
//! and distinct while subject order stays uncorrelated with the profile.
//! Timestamps are quantized to the millisecond grid of the TSV format.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::keystroke::{KeystrokeEvent, SessionLog};

/// Mean and standard deviation ranges (seconds) for one latency channel.
/// Per-subject values are drawn from these ranges.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ChannelModel {
    pub mean_range: (f64, f64),
    pub std_range: (f64, f64),
}

impl ChannelModel {
    fn validate(&self, name: &str) -> Result<()> {
        if self.mean_range.0 > self.mean_range.1 || self.std_range.0 > self.std_range.1 {
            return Err(Error::Config(format!("{name}: range bounds out of order")));
        }
        if self.std_range.0 <= 0.0 {
            return Err(Error::Config(format!("{name}: standard deviations must be > 0")));
        }
        Ok(())
    }
}

/// Generator parameters for a synthetic keystroke dataset.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SyntheticUserSpec {
    pub n_subjects: usize,
    pub sessions_per_subject: usize,
    /// Inclusive range of keys typed per session.
    pub keys_per_session: (usize, usize),
    pub hold: ChannelModel,
    pub inter_key: ChannelModel,
    /// Multiplier on all per-subject standard deviations.
    pub noise_scale: f64,
    pub seed: u64,
}

impl Default for SyntheticUserSpec {
    fn default() -> Self {
        Self {
            n_subjects: 140,
            sessions_per_subject: 15,
            keys_per_session: (30, 60),
            hold: ChannelModel { mean_range: (0.06, 0.32), std_range: (0.004, 0.009) },
            inter_key: ChannelModel { mean_range: (0.04, 0.28), std_range: (0.005, 0.012) },
            noise_scale: 1.0,
            seed: 0,
        }
    }
}

impl SyntheticUserSpec {
    fn validate(&self) -> Result<()> {
        if self.n_subjects == 0 {
            return Err(Error::Config("n_subjects must be >= 1".into()));
        }
        if self.sessions_per_subject == 0 {
            return Err(Error::Config("sessions_per_subject must be >= 1".into()));
        }
        if self.keys_per_session.0 == 0 || self.keys_per_session.0 > self.keys_per_session.1 {
            return Err(Error::Config("keys_per_session range invalid".into()));
        }
        if self.noise_scale <= 0.0 {
            return Err(Error::Config("noise_scale must be > 0".into()));
        }
        self.hold.validate("hold")?;
        self.inter_key.validate("inter_key")
    }
}

/// Per-subject latency profile drawn from a [`SyntheticUserSpec`].
#[derive(Debug, Clone, Copy)]
pub struct SubjectProfile {
    pub hold_mean: f64,
    pub hold_std: f64,
    pub gap_mean: f64,
    pub gap_std: f64,
}

/// Standard normal via Box-Muller.
fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn stratified_means(rng: &mut ChaCha8Rng, n: usize, range: (f64, f64)) -> Vec<f64> {
    let mut strata: Vec<usize> = (0..n).collect();
    strata.shuffle(rng);
    let width = (range.1 - range.0) / n as f64;
    strata
        .into_iter()
        .map(|s| range.0 + (s as f64 + rng.gen_range(0.2..0.8)) * width)
        .collect()
}

/// Draw all subject profiles. Exposed so tests can compare session
/// statistics against the drawn means.
pub fn subject_profiles(spec: &SyntheticUserSpec) -> Result<Vec<SubjectProfile>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let hold_means = stratified_means(&mut rng, spec.n_subjects, spec.hold.mean_range);
    let gap_means = stratified_means(&mut rng, spec.n_subjects, spec.inter_key.mean_range);
    Ok((0..spec.n_subjects)
        .map(|i| SubjectProfile {
            hold_mean: hold_means[i],
            hold_std: rng.gen_range(spec.hold.std_range.0..=spec.hold.std_range.1),
            gap_mean: gap_means[i],
            gap_std: rng.gen_range(spec.inter_key.std_range.0..=spec.inter_key.std_range.1),
        })
        .collect())
}

const MS: f64 = 1e-3;

fn quantize_ms(t: f64) -> f64 {
    (t * 1000.0).round() / 1000.0
}

/// Generate the full dataset. Deterministic given the spec (including seed).
pub fn synthesize_dataset(spec: &SyntheticUserSpec) -> Result<Vec<SessionLog>> {
    let profiles = subject_profiles(spec)?;
    // Session sampling uses a stream separated from the profile draws so
    // profile-only consumers stay in sync with the generator.
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.wrapping_add(0x9E37_79B9_7F4A_7C15));

    let mut sessions = Vec::with_capacity(spec.n_subjects * spec.sessions_per_subject);
    for (subject_idx, profile) in profiles.iter().enumerate() {
        let subject_id = format!("subj{subject_idx:04}");
        for session_idx in 0..spec.sessions_per_subject {
            let n_keys = rng.gen_range(spec.keys_per_session.0..=spec.keys_per_session.1);
            let mut events = Vec::with_capacity(n_keys);
            let mut press = 0.0f64;
            for k in 0..n_keys {
                if k > 0 {
                    let prev: &KeystrokeEvent = events.last().unwrap();
                    let gap = profile.gap_mean + profile.gap_std * spec.noise_scale * gauss(&mut rng);
                    // Press times must be non-decreasing; rollover (negative
                    // gap) is allowed as long as the previous hold covers it.
                    press = (prev.release_time + gap).max(prev.press_time + MS);
                }
                let hold = (profile.hold_mean
                    + profile.hold_std * spec.noise_scale * gauss(&mut rng))
                .max(MS);
                let press_q = quantize_ms(press);
                let release_q = quantize_ms(press + hold).max(press_q + MS);
                events.push(KeystrokeEvent {
                    keycode: rng.gen_range(32..=126),
                    press_time: press_q,
                    release_time: quantize_ms(release_q),
                });
                press = events.last().unwrap().press_time;
            }
            sessions.push(SessionLog::new(subject_id.clone(), format!("s{session_idx:03}"), events)?);
        }
    }
    Ok(sessions)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_given_seed() {
        let spec = SyntheticUserSpec { n_subjects: 2, seed: 7, ..Default::default() };
        let a = synthesize_dataset(&spec).unwrap();
        let b = synthesize_dataset(&spec).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_subject_single_session() {
        let spec = SyntheticUserSpec {
            n_subjects: 1,
            sessions_per_subject: 1,
            ..Default::default()
        };
        let out = synthesize_dataset(&spec).unwrap();
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn zero_subjects_is_an_error() {
        let spec = SyntheticUserSpec { n_subjects: 0, ..Default::default() };
        assert!(synthesize_dataset(&spec).is_err());
    }

    #[test]
    fn invariants_hold_on_generated_sessions() {
        let spec = SyntheticUserSpec { n_subjects: 3, seed: 11, ..Default::default() };
        for session in synthesize_dataset(&spec).unwrap() {
            let mut last_press = f64::NEG_INFINITY;
            for e in &session.events {
                assert!(e.release_time >= e.press_time);
                assert!(e.hold_latency() >= MS - 1e-12);
                assert!(e.press_time >= last_press);
                last_press = e.press_time;
            }
        }
    }

    #[test]
    fn session_hold_means_cluster_around_drawn_means() {
        // For >= 95% of subjects the empirical mean hold latency must sit
        // closer to the subject's own drawn mean than to any other mean.
        let spec = SyntheticUserSpec { n_subjects: 100, seed: 1, ..Default::default() };
        let profiles = subject_profiles(&spec).unwrap();
        let sessions = synthesize_dataset(&spec).unwrap();

        let mut hits = 0usize;
        for (idx, profile) in profiles.iter().enumerate() {
            let id = format!("subj{idx:04}");
            let holds: Vec<f64> = sessions
                .iter()
                .filter(|s| s.subject_id == id)
                .flat_map(|s| s.events.iter().map(|e| e.hold_latency()))
                .collect();
            let empirical = holds.iter().sum::<f64>() / holds.len() as f64;
            let own = (empirical - profile.hold_mean).abs();
            let nearest_other = profiles
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != idx)
                .map(|(_, p)| (empirical - p.hold_mean).abs())
                .fold(f64::INFINITY, f64::min);
            if own < nearest_other {
                hits += 1;
            }
        }
        assert!(hits >= 95, "only {hits}/100 subjects matched their own mean");
    }
}
