//! Referent resolution accuracy over aligned prediction/gold pairs.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::ids::{EntityId, MarkableId};
use crate::scene::VIEW_SIZE;

/// Referent sets keyed by markable id.
pub type ReferentSets = BTreeMap<MarkableId, BTreeSet<EntityId>>;

fn check_aligned(predictions: &ReferentSets, golds: &ReferentSets) -> Result<()> {
    if predictions.is_empty() {
        return Err(Error::invalid("no markables to score"));
    }
    if predictions.len() != golds.len()
        || predictions.keys().zip(golds.keys()).any(|(a, b)| a != b)
    {
        return Err(Error::misaligned(format!(
            "prediction markables do not match gold markables ({} vs {})",
            predictions.len(),
            golds.len()
        )));
    }
    Ok(())
}

/// Fraction of per-entity include/exclude decisions that match gold, with
/// every markable contributing one decision per view entity.
pub fn entity_accuracy(predictions: &ReferentSets, golds: &ReferentSets) -> Result<f64> {
    check_aligned(predictions, golds)?;
    let mut correct = 0usize;
    for (id, pred) in predictions {
        let gold = &golds[id];
        let differing = pred.symmetric_difference(gold).count();
        correct += VIEW_SIZE - differing.min(VIEW_SIZE);
    }
    Ok(correct as f64 / (VIEW_SIZE * predictions.len()) as f64)
}

/// Fraction of markables whose decoded set equals gold exactly.
pub fn exact_match(predictions: &ReferentSets, golds: &ReferentSets) -> Result<f64> {
    check_aligned(predictions, golds)?;
    let matching = predictions
        .iter()
        .filter(|(id, pred)| *pred == &golds[*id])
        .count();
    Ok(matching as f64 / predictions.len() as f64)
}
