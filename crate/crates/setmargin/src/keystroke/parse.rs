//! Normalized tab-separated log import/export.
//!
//! One row per key event pair:
//! `SUBJECT_ID<TAB>SESSION_ID<TAB>KEYCODE<TAB>PRESS_MS<TAB>RELEASE_MS`.
//! An optional header line is detected by a non-numeric third column.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::keystroke::{KeystrokeEvent, SessionLog};

/// Result of [`parse_log`]: the grouped sessions plus the number of rows
/// rejected because their release time preceded their press time.
#[derive(Debug, Clone)]
pub struct ParseOutcome {
    pub sessions: Vec<SessionLog>,
    pub rejected_rows: usize,
}

/// Parse a normalized TSV keystroke log.
///
/// Events are grouped by `(subject_id, session_id)` (sorted), ordered by
/// press time within a session, and timestamps are converted from
/// milliseconds to seconds. Malformed lines abort with the 1-based line
/// number; rows with `release < press` are dropped and counted.
pub fn parse_log(raw: &str) -> Result<ParseOutcome> {
    let mut groups: BTreeMap<(String, String), Vec<KeystrokeEvent>> = BTreeMap::new();
    let mut rejected = 0usize;

    for (idx, line) in raw.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 5 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected 5 tab-separated fields, got {}", fields.len()),
            });
        }
        // Header detection: a non-numeric keycode column on the first line.
        if idx == 0 && fields[2].trim().parse::<f64>().is_err() {
            continue;
        }
        let keycode: u8 = fields[2].trim().parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("keycode `{}` is not an integer in 0..=255", fields[2]),
        })?;
        let press_ms: f64 = fields[3].trim().parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("press time `{}` is not a number", fields[3]),
        })?;
        let release_ms: f64 = fields[4].trim().parse().map_err(|_| Error::Parse {
            line: line_no,
            msg: format!("release time `{}` is not a number", fields[4]),
        })?;
        if !press_ms.is_finite() || !release_ms.is_finite() {
            return Err(Error::Parse { line: line_no, msg: "non-finite timestamp".into() });
        }
        if release_ms < press_ms {
            rejected += 1;
            continue;
        }
        let event = KeystrokeEvent {
            keycode,
            press_time: press_ms / 1000.0,
            release_time: release_ms / 1000.0,
        };
        groups
            .entry((fields[0].to_string(), fields[1].to_string()))
            .or_default()
            .push(event);
    }

    let mut sessions = Vec::with_capacity(groups.len());
    for ((subject_id, session_id), events) in groups {
        // All-rejected groups never materialize; groups here are non-empty.
        sessions.push(SessionLog::new(subject_id, session_id, events)?);
    }
    Ok(ParseOutcome { sessions, rejected_rows: rejected })
}

/// Serialize sessions back to the normalized TSV format (no header).
/// `parse_log(serialize_logs(s))` reproduces `s` for well-formed logs.
pub fn serialize_logs(sessions: &[SessionLog]) -> String {
    let mut out = String::new();
    for session in sessions {
        for event in &session.events {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                session.subject_id,
                session.session_id,
                event.keycode,
                event.press_time * 1000.0,
                event.release_time * 1000.0
            )
            .expect("string write cannot fail");
        }
    }
    out
}
