//! Referent decoding: turning per-entity scores into referent sets, with and
//! without a cardinality constraint, plus a synthetic score generator for
//! exercising the evaluation harness without a trained model.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ids::EntityId;
use crate::scene::VIEW_SIZE;

/// Score for a gold referent emitted by [`perturb_gold`].
pub const GOLD_SCORE: f64 = 0.95;
/// Score for a non-referent emitted by [`perturb_gold`].
pub const NOISE_SCORE: f64 = 0.05;

fn check_scores(scores: &[f64]) -> Result<()> {
    if scores.len() != VIEW_SIZE {
        return Err(Error::invalid(format!(
            "expected {VIEW_SIZE} scores, got {}",
            scores.len()
        )));
    }
    Ok(())
}

/// Independent per-entity decisions: every entity scoring above 0.5 is a
/// referent. `entity_ids` supplies the score order.
pub fn threshold_predict(scores: &[f64], entity_ids: &[EntityId]) -> Result<BTreeSet<EntityId>> {
    check_scores(scores)?;
    if entity_ids.len() != scores.len() {
        return Err(Error::invalid(format!(
            "{} entity ids for {} scores",
            entity_ids.len(),
            scores.len()
        )));
    }
    Ok(entity_ids
        .iter()
        .zip(scores)
        .filter(|(_, s)| **s > 0.5)
        .map(|(id, _)| id.clone())
        .collect())
}

/// Cardinality-constrained decoding: exactly the `k` highest-scoring
/// entities, score ties broken toward the smaller entity id.
pub fn topk_predict(
    scores: &[f64],
    entity_ids: &[EntityId],
    k: usize,
) -> Result<BTreeSet<EntityId>> {
    check_scores(scores)?;
    if entity_ids.len() != scores.len() {
        return Err(Error::invalid(format!(
            "{} entity ids for {} scores",
            entity_ids.len(),
            scores.len()
        )));
    }
    if k > VIEW_SIZE {
        return Err(Error::invalid(format!("k={k} exceeds view size {VIEW_SIZE}")));
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    // Sort ids ascending first; the stable sort on descending score then
    // leaves equal scores in id order.
    order.sort_by(|&a, &b| entity_ids[a].cmp(&entity_ids[b]));
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    Ok(order[..k].iter().map(|&i| entity_ids[i].clone()).collect())
}

/// Count estimate when no external count prediction exists: the rounded sum
/// of the scores, clamped into the view. Half-way sums round toward even.
pub fn heuristic_count(scores: &[f64]) -> usize {
    let sum: f64 = scores.iter().sum();
    (sum.round_ties_even().max(0.0) as usize).min(VIEW_SIZE)
}

/// Synthesizes a score vector from a gold referent set: referents score
/// high, the rest low, and each entity's role flips independently with
/// probability `flip_probability` (clamped to [0,1]). Deterministic per seed.
pub fn perturb_gold(
    gold: &BTreeSet<EntityId>,
    entity_ids: &[EntityId],
    flip_probability: f64,
    seed: u64,
) -> Vec<f64> {
    let p = flip_probability.clamp(0.0, 1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    entity_ids
        .iter()
        .map(|id| {
            let is_gold = gold.contains(id);
            let flip = rng.random::<f64>() < p;
            if is_gold != flip {
                GOLD_SCORE
            } else {
                NOISE_SCORE
            }
        })
        .collect()
}
