//! Open-set protocol splits: training subjects are disjoint from the
//! background/query subjects, and each test subject's sessions are divided
//! into an enrollment gallery (first sessions) and queries (last sessions).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::keystroke::FeatureSequence;

/// Which subjects go where, and how many sessions form the gallery and the
/// query set of each test subject.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SplitSpec {
    pub train_subjects: Vec<String>,
    pub test_subjects: Vec<String>,
    pub gallery_sessions: usize,
    pub query_sessions: usize,
}

impl SplitSpec {
    /// Assign the first `n_train` subjects (sorted by id) to training and
    /// the next `n_test` to testing.
    pub fn by_counts(
        sequences: &[FeatureSequence],
        n_train: usize,
        n_test: usize,
        gallery_sessions: usize,
        query_sessions: usize,
    ) -> Result<SplitSpec> {
        let mut subjects: Vec<String> = sequences.iter().map(|s| s.subject_id.clone()).collect();
        subjects.sort();
        subjects.dedup();
        if subjects.len() < n_train + n_test {
            return Err(Error::Data(format!(
                "need {} subjects for the split, dataset has {}",
                n_train + n_test,
                subjects.len()
            )));
        }
        Ok(SplitSpec {
            train_subjects: subjects[..n_train].to_vec(),
            test_subjects: subjects[n_train..n_train + n_test].to_vec(),
            gallery_sessions,
            query_sessions,
        })
    }
}

/// Feature sequences of one subject, ordered by session id.
pub type SubjectSequences = (String, Vec<FeatureSequence>);

/// The three partitions produced by [`split_dataset`].
#[derive(Debug, Clone)]
pub struct DatasetSplit {
    /// All sequences of the training subjects.
    pub train: Vec<FeatureSequence>,
    /// Per test subject: the first `gallery_sessions` sequences.
    pub background: Vec<SubjectSequences>,
    /// Per test subject: the last `query_sessions` sequences.
    pub query: Vec<SubjectSequences>,
}

/// Partition feature sequences according to `spec`.
///
/// Sessions are ordered by session id within each subject. A test subject
/// with fewer than `gallery_sessions + query_sessions` sessions is an error
/// naming the subject, as is any overlap between training and test subjects.
pub fn split_dataset(sequences: &[FeatureSequence], spec: &SplitSpec) -> Result<DatasetSplit> {
    for t in &spec.train_subjects {
        if spec.test_subjects.contains(t) {
            return Err(Error::Config(format!(
                "subject {t} appears in both the training and test splits"
            )));
        }
    }

    let mut by_subject: BTreeMap<&str, Vec<&FeatureSequence>> = BTreeMap::new();
    for seq in sequences {
        by_subject.entry(&seq.subject_id).or_default().push(seq);
    }
    for seqs in by_subject.values_mut() {
        seqs.sort_by(|a, b| a.session_id.cmp(&b.session_id));
    }

    let mut train = Vec::new();
    for subject in &spec.train_subjects {
        let seqs = by_subject
            .get(subject.as_str())
            .ok_or_else(|| Error::Data(format!("training subject {subject} not in dataset")))?;
        train.extend(seqs.iter().map(|&s| s.clone()));
    }

    let needed = spec.gallery_sessions + spec.query_sessions;
    let mut background = Vec::new();
    let mut query = Vec::new();
    for subject in &spec.test_subjects {
        let seqs = by_subject
            .get(subject.as_str())
            .ok_or_else(|| Error::Data(format!("test subject {subject} not in dataset")))?;
        if seqs.len() < needed {
            return Err(Error::Data(format!(
                "subject {subject} has {} sessions, protocol needs {needed}",
                seqs.len()
            )));
        }
        let gallery: Vec<FeatureSequence> =
            seqs[..spec.gallery_sessions].iter().map(|&s| s.clone()).collect();
        let queries: Vec<FeatureSequence> =
            seqs[seqs.len() - spec.query_sessions..].iter().map(|&s| s.clone()).collect();
        background.push((subject.clone(), gallery));
        query.push((subject.clone(), queries));
    }

    Ok(DatasetSplit { train, background, query })
}
