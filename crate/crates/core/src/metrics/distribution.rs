//! Fixed-bin attribute histograms and a normalized transport distance
//! between them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scene::Attribute;

/// Equal-width histogram over a closed attribute scale.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub min: f64,
    pub max: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn new(min: f64, max: f64, bins: usize) -> Result<Histogram> {
        if bins == 0 || !(max > min) {
            return Err(Error::invalid(format!(
                "histogram needs a positive range and bins, got [{min}, {max}] with {bins}"
            )));
        }
        Ok(Histogram {
            min,
            max,
            counts: vec![0; bins],
        })
    }

    pub fn bin_width(&self) -> f64 {
        (self.max - self.min) / self.counts.len() as f64
    }

    /// Adds a value, clamping onto the scale so boundary values (including
    /// `max` itself) land in the last bin.
    pub fn add(&mut self, value: f64) {
        let clamped = value.clamp(self.min, self.max);
        let bin = ((clamped - self.min) / self.bin_width()) as usize;
        let bin = bin.min(self.counts.len() - 1);
        self.counts[bin] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Cumulative distribution per bin edge; all zeros for an empty
    /// histogram, so empty-vs-empty distances are 0.
    fn cdf(&self) -> Vec<f64> {
        let total = self.total();
        let mut acc = 0.0;
        self.counts
            .iter()
            .map(|c| {
                if total > 0 {
                    acc += *c as f64 / total as f64;
                }
                acc
            })
            .collect()
    }
}

/// Bins per attribute scale: 30 over the color range, 6 over sizes.
pub fn attribute_bins(attribute: Attribute) -> Result<(f64, f64, usize)> {
    match attribute {
        Attribute::Color => Ok((0.0, 150.0, 30)),
        Attribute::Size => Ok((0.0, 6.0, 6)),
        Attribute::X | Attribute::Y => Err(Error::invalid(
            "distributions are defined for color and size only",
        )),
    }
}

/// Histograms referent attribute values on the fixed scale for `attribute`.
pub fn referent_distribution(values: &[f64], attribute: Attribute) -> Result<Histogram> {
    let (min, max, bins) = attribute_bins(attribute)?;
    let mut hist = Histogram::new(min, max, bins)?;
    for v in values {
        hist.add(*v);
    }
    Ok(hist)
}

/// Wasserstein-1 distance between two same-shape histograms, normalized by
/// the scale range so results live in [0, 1].
pub fn distribution_distance(a: &Histogram, b: &Histogram) -> Result<f64> {
    if a.counts.len() != b.counts.len() || a.min != b.min || a.max != b.max {
        return Err(Error::misaligned(
            "histograms cover different scales and cannot be compared",
        ));
    }
    let width = a.bin_width();
    let range = a.max - a.min;
    let transported: f64 = a
        .cdf()
        .iter()
        .zip(b.cdf())
        .map(|(ca, cb)| (ca - cb).abs() * width)
        .sum();
    Ok(transported / range)
}
