//! Temporal feature extraction.

use crate::error::{Error, Result};
use crate::keystroke::{FeatureSequence, SessionLog, FEATURE_CHANNELS};

/// Extract the `M x 5` feature matrix of a session.
///
/// Row `k` holds `(HL_k, IL_k, PL_k, RL_k, keycode_k / 255)` in seconds.
/// Row 0 has IL = PL = RL = 0 (no predecessor key). Sequences longer than
/// `max_len` are truncated at the end; shorter ones are zero-padded, with
/// `valid_len` recording the number of real rows.
///
/// Negative inter-key latencies (the next key pressed before the previous
/// one is released) are preserved as-is.
pub fn extract_features(session: &SessionLog, max_len: usize) -> Result<FeatureSequence> {
    if max_len == 0 {
        return Err(Error::Config("max_len must be >= 1".into()));
    }
    if session.events.is_empty() {
        return Err(Error::Data(format!(
            "session {}/{} has no events",
            session.subject_id, session.session_id
        )));
    }

    let valid_len = session.events.len().min(max_len);
    let mut rows = vec![0.0; max_len * FEATURE_CHANNELS];
    for k in 0..valid_len {
        let event = &session.events[k];
        let row = &mut rows[k * FEATURE_CHANNELS..(k + 1) * FEATURE_CHANNELS];
        row[0] = event.hold_latency();
        if k > 0 {
            let prev = &session.events[k - 1];
            row[1] = event.press_time - prev.release_time;
            row[2] = event.press_time - prev.press_time;
            row[3] = event.release_time - prev.release_time;
        }
        row[4] = event.keycode as f64 / 255.0;
    }

    Ok(FeatureSequence::from_rows(
        session.subject_id.clone(),
        session.session_id.clone(),
        rows,
        max_len,
        valid_len,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keystroke::KeystrokeEvent;

    fn session(events: Vec<(u8, f64, f64)>) -> SessionLog {
        let events = events
            .into_iter()
            .map(|(k, p, r)| KeystrokeEvent { keycode: k, press_time: p, release_time: r })
            .collect();
        SessionLog::new("u", "s", events).unwrap()
    }

    #[test]
    fn two_key_example() {
        let s = session(vec![(65, 0.00, 0.10), (66, 0.15, 0.30)]);
        let f = extract_features(&s, 50).unwrap();
        assert_eq!(f.valid_len(), 2);
        let r0 = f.row(0);
        assert_eq!(r0, &[0.10, 0.0, 0.0, 0.0, 65.0 / 255.0]);
        let r1 = f.row(1);
        assert!((r1[0] - 0.15).abs() < 1e-12, "HL");
        assert!((r1[1] - 0.05).abs() < 1e-12, "IL");
        assert!((r1[2] - 0.15).abs() < 1e-12, "PL");
        assert!((r1[3] - 0.20).abs() < 1e-12, "RL");
        assert!((r1[4] - 66.0 / 255.0).abs() < 1e-15);
    }

    #[test]
    fn truncates_long_sequences_at_the_end() {
        let events: Vec<(u8, f64, f64)> =
            (0..60).map(|i| (65, i as f64 * 0.2, i as f64 * 0.2 + 0.1)).collect();
        let f = extract_features(&session(events), 50).unwrap();
        assert_eq!(f.valid_len(), 50);
        // last kept row is key 49
        assert!((f.row(49)[0] - 0.1).abs() < 1e-12);
    }

    #[test]
    fn pads_short_sequences_with_zeros() {
        let f = extract_features(&session(vec![(65, 0.0, 0.1)]), 4).unwrap();
        assert_eq!(f.valid_len(), 1);
        for t in 1..4 {
            assert!(f.row(t).iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn overlapped_keys_keep_negative_inter_key_latency() {
        // B pressed before A released.
        let s = session(vec![(65, 0.00, 0.20), (66, 0.10, 0.30)]);
        let f = extract_features(&s, 10).unwrap();
        let il = f.row(1)[1];
        assert!((il - (0.10 - 0.20)).abs() < 1e-12);
        assert!(il < 0.0);
    }

    #[test]
    fn latency_identities_hold() {
        // PL_k = IL_k + HL_{k-1} and RL_k = HL_k + IL_k for k >= 1.
        let s = session(vec![
            (65, 0.00, 0.08),
            (66, 0.13, 0.30),
            (67, 0.25, 0.41),
            (68, 0.50, 0.52),
        ]);
        let f = extract_features(&s, 10).unwrap();
        for k in 1..f.valid_len() {
            let (hl, il, pl, rl) = (f.row(k)[0], f.row(k)[1], f.row(k)[2], f.row(k)[3]);
            let hl_prev = f.row(k - 1)[0];
            assert!((pl - (il + hl_prev)).abs() < 1e-12);
            assert!((rl - (hl + il)).abs() < 1e-12);
        }
    }
}
