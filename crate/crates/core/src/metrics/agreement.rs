//! Inter-annotator agreement: observed percent agreement and Cohen's kappa,
//! plus the token-level reduction for span annotations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::annotation::{TokenSpan, Utterance};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgreementReport {
    /// Observed agreement as a percentage in [0, 100].
    pub percent: f64,
    /// Chance-corrected agreement in [-1, 1].
    pub kappa: f64,
}

/// Unweighted Cohen's kappa over two equal-length label sequences.
///
/// When expected chance agreement is 1 (both raters constant on the same
/// label) the usual ratio is 0/0; observed agreement is then also 1, so the
/// result is reported as 1.
pub fn cohen_kappa<T: Ord>(labels_a: &[T], labels_b: &[T]) -> Result<AgreementReport> {
    if labels_a.is_empty() {
        return Err(Error::invalid("agreement needs at least one label"));
    }
    if labels_a.len() != labels_b.len() {
        return Err(Error::misaligned(format!(
            "label sequences differ in length: {} vs {}",
            labels_a.len(),
            labels_b.len()
        )));
    }
    let n = labels_a.len() as f64;
    let observed = labels_a
        .iter()
        .zip(labels_b)
        .filter(|(a, b)| a == b)
        .count() as f64
        / n;

    let mut marginal_a: BTreeMap<&T, f64> = BTreeMap::new();
    let mut marginal_b: BTreeMap<&T, f64> = BTreeMap::new();
    for (a, b) in labels_a.iter().zip(labels_b) {
        *marginal_a.entry(a).or_default() += 1.0;
        *marginal_b.entry(b).or_default() += 1.0;
    }
    let expected: f64 = marginal_a
        .iter()
        .map(|(label, count_a)| {
            let count_b = marginal_b.get(label).copied().unwrap_or(0.0);
            (count_a / n) * (count_b / n)
        })
        .sum();

    let kappa = if (1.0 - expected).abs() < 1e-12 {
        1.0
    } else {
        (observed - expected) / (1.0 - expected)
    };
    Ok(AgreementReport {
        percent: observed * 100.0,
        kappa,
    })
}

/// How span annotations reduce to per-token labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TokenAgreementMode {
    /// A token is positive when any span covers it.
    Coverage,
    /// A token is positive when any span starts on it.
    SpanStarts,
}

/// Flattens one annotator's spans into a binary label per token of the
/// dialogue, utterances concatenated in order.
pub fn token_labels(
    spans: &[(usize, TokenSpan)],
    utterances: &[Utterance],
    mode: TokenAgreementMode,
) -> Result<Vec<bool>> {
    let mut offsets = BTreeMap::new();
    let mut total = 0usize;
    for u in utterances {
        offsets.insert(u.index, (total, u.tokens.len()));
        total += u.tokens.len();
    }
    let mut labels = vec![false; total];
    for (utterance, span) in spans {
        let (offset, len) = *offsets.get(utterance).ok_or_else(|| {
            Error::invalid(format!("span references missing utterance {utterance}"))
        })?;
        let positions = span.positions();
        if positions.iter().any(|p| *p >= len) {
            return Err(Error::invalid(format!(
                "span {positions:?} exceeds the {len} tokens of utterance {utterance}"
            )));
        }
        match mode {
            TokenAgreementMode::Coverage => {
                for p in positions {
                    labels[offset + p] = true;
                }
            }
            TokenAgreementMode::SpanStarts => {
                if let Some(start) = span.start() {
                    labels[offset + start] = true;
                }
            }
        }
    }
    Ok(labels)
}

/// Token-level agreement between two annotators' span sets over the same
/// utterances.
pub fn token_agreement(
    spans_a: &[(usize, TokenSpan)],
    spans_b: &[(usize, TokenSpan)],
    utterances: &[Utterance],
    mode: TokenAgreementMode,
) -> Result<AgreementReport> {
    let labels_a = token_labels(spans_a, utterances, mode)?;
    let labels_b = token_labels(spans_b, utterances, mode)?;
    cohen_kappa(&labels_a, &labels_b)
}
