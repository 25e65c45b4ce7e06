//! Behavioral tests for the 24 canonical relations.
//!
//! Each test answers two questions about a set of referents: is the input
//! well-formed enough to test at all (`valid`), and does it actually satisfy
//! the relation (`satisfy`)? Satisfy always implies valid.
//!
//! Conventions: the coordinate origin is the view center, y grows upward,
//! larger color values are lighter. Slope bands partition the line space:
//! |m| < 1/3 is horizontal, |m| > 3 (or undefined) is vertical, and the
//! closed band between is diagonal.

use std::collections::BTreeSet;

use crate::annotation::CanonicalRelation;
use crate::error::{Error, Result};
use crate::scene::{Attribute, Entity};

/// Center-distance threshold for interior/exterior without objects.
pub const REGION_CENTER_THRESHOLD: f64 = 120.0;
/// Color range below which a referent set counts as same-colored.
pub const COLOR_SAME_THRESHOLD: f64 = 30.0;
/// Size range below which a referent set counts as same-sized. Scales the
/// color threshold to the 0..=5 size scale: 30 * 6 / 150.
pub const SIZE_SAME_THRESHOLD: f64 = 1.2;
/// Slope magnitude below which a line is horizontal.
pub const SLOPE_LOW: f64 = 1.0 / 3.0;
/// Slope magnitude above which a line is vertical.
pub const SLOPE_HIGH: f64 = 3.0;

/// Outcome of one canonical relation test.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct TestResult {
    pub satisfy: bool,
    pub valid: bool,
}

impl TestResult {
    /// Clamps satisfy to false on invalid inputs, so satisfy ⇒ valid holds
    /// by construction.
    pub fn new(valid: bool, satisfy: bool) -> Self {
        TestResult {
            valid,
            satisfy: satisfy && valid,
        }
    }

    pub fn invalid() -> Self {
        TestResult {
            satisfy: false,
            valid: false,
        }
    }
}

/// Everything a relation test can see: resolved subject and object entities,
/// the explicit no-object flag, and the speaker's full view.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RelationContext {
    pub subjects: Vec<Entity>,
    pub objects: Vec<Entity>,
    pub no_object: bool,
    pub view_entities: Vec<Entity>,
}

impl RelationContext {
    /// Subjects and objects merged, deduplicated by entity id.
    pub fn referents(&self) -> Vec<Entity> {
        union_by_id(&self.subjects, &self.objects)
    }
}

fn union_by_id(first: &[Entity], second: &[Entity]) -> Vec<Entity> {
    let mut seen = BTreeSet::new();
    first
        .iter()
        .chain(second.iter())
        .filter(|e| seen.insert(e.id.clone()))
        .cloned()
        .collect()
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (mut sum, mut n) = (0.0, 0usize);
    for v in values {
        sum += v;
        n += 1;
    }
    (n > 0).then(|| sum / n as f64)
}

fn mean_attr(entities: &[Entity], attr: Attribute) -> Option<f64> {
    mean(entities.iter().map(|e| e.attribute(attr)))
}

/// Mean distance over all unordered pairs; `None` below two points.
fn mean_pairwise(entities: &[Entity]) -> Option<f64> {
    if entities.len() < 2 {
        return None;
    }
    let mut sum = 0.0;
    let mut pairs = 0usize;
    for (i, a) in entities.iter().enumerate() {
        for b in &entities[i + 1..] {
            sum += a.distance_to(b);
            pairs += 1;
        }
    }
    Some(sum / pairs as f64)
}

/// Least-squares slope of y on x.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Slope {
    Finite(f64),
    /// Zero x-variance: the points stack vertically.
    Vertical,
}

/// Ordinary least-squares slope over at least two points.
pub fn fit_slope(points: &[(f64, f64)]) -> Result<Slope> {
    if points.len() < 2 {
        return Err(Error::invalid(format!(
            "slope fit needs at least 2 points, got {}",
            points.len()
        )));
    }
    // Verticality means literally "all x equal"; test it on the raw values,
    // where equal inputs give an exactly zero range, rather than on the
    // deviation sum, which picks up rounding from the mean.
    let min_x = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let max_x = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    if min_x == max_x {
        return Ok(Slope::Vertical);
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Ok(Slope::Vertical);
    }
    let sxy: f64 = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    Ok(Slope::Finite(sxy / sxx))
}

/// Runs the canonical test for one relation. Total over all 24 kinds;
/// degenerate inputs come back invalid rather than erroring.
pub fn evaluate(relation: CanonicalRelation, ctx: &RelationContext) -> TestResult {
    use CanonicalRelation::*;
    match relation {
        Left | Right | Above | Below => test_direction_pair(relation, ctx),
        Horizontal | Vertical | Diagonal => test_axis_alignment(relation, ctx),
        Near | Far | Alone => test_proximity(relation, ctx),
        Interior | Exterior => test_region(relation, ctx),
        Lighter | Lightest | Darker | Darkest | SameColor | DifferentColor => {
            test_color_comparison(relation, ctx)
        }
        Smaller | Smallest | Larger | Largest | SameSize | DifferentSize => {
            test_size_comparison(relation, ctx)
        }
    }
}

/// left/right/above/below. Without objects the subjects' mean coordinate is
/// compared against the view center; with objects, against the objects' mean.
pub fn test_direction_pair(kind: CanonicalRelation, ctx: &RelationContext) -> TestResult {
    use CanonicalRelation::*;
    let (attr, wants_less) = match kind {
        Left => (Attribute::X, true),
        Right => (Attribute::X, false),
        Above => (Attribute::Y, false),
        Below => (Attribute::Y, true),
        other => panic!("not a pairwise direction: {other}"),
    };
    let subject_mean = mean_attr(&ctx.subjects, attr);
    if ctx.no_object {
        let valid = !ctx.subjects.is_empty();
        let satisfy = subject_mean
            .map(|m| if wants_less { m < 0.0 } else { m > 0.0 })
            .unwrap_or(false);
        return TestResult::new(valid, satisfy);
    }
    let valid = !ctx.subjects.is_empty() && !ctx.objects.is_empty();
    let satisfy = match (subject_mean, mean_attr(&ctx.objects, attr)) {
        (Some(s), Some(o)) => {
            if wants_less {
                s < o
            } else {
                s > o
            }
        }
        _ => false,
    };
    TestResult::new(valid, satisfy)
}

/// horizontal/vertical/diagonal over the merged referent set.
pub fn test_axis_alignment(kind: CanonicalRelation, ctx: &RelationContext) -> TestResult {
    use CanonicalRelation::*;
    let referents = ctx.referents();
    let valid = referents.len() > 1;
    if !valid {
        return TestResult::invalid();
    }
    let points: Vec<(f64, f64)> = referents.iter().map(|e| (e.x, e.y)).collect();
    let slope = fit_slope(&points).expect("two or more points");
    let satisfy = match (kind, slope) {
        (Horizontal, Slope::Finite(m)) => m.abs() < SLOPE_LOW,
        (Horizontal, Slope::Vertical) => false,
        (Vertical, Slope::Finite(m)) => m.abs() > SLOPE_HIGH,
        (Vertical, Slope::Vertical) => true,
        (Diagonal, Slope::Finite(m)) => (SLOPE_LOW..=SLOPE_HIGH).contains(&m.abs()),
        (Diagonal, Slope::Vertical) => false,
        (other, _) => panic!("not an axis alignment: {other}"),
    };
    TestResult::new(valid, satisfy)
}

/// near/far/alone, all judged against the view's mean pairwise distance.
pub fn test_proximity(kind: CanonicalRelation, ctx: &RelationContext) -> TestResult {
    use CanonicalRelation::*;
    let view_mean = mean_pairwise(&ctx.view_entities);
    match kind {
        Near => {
            let referents = ctx.referents();
            let valid = referents.len() > 1;
            let satisfy = match (mean_pairwise(&referents), view_mean) {
                (Some(a), Some(e)) => a < e,
                _ => false,
            };
            TestResult::new(valid, satisfy)
        }
        Far => {
            let valid = !ctx.subjects.is_empty() && (!ctx.objects.is_empty() || ctx.no_object);
            let group = if ctx.no_object {
                ctx.subjects.clone()
            } else {
                ctx.referents()
            };
            // A singleton group has no pairwise distance to exceed anything.
            let satisfy = match (mean_pairwise(&group), view_mean) {
                (Some(a), Some(e)) => a > e,
                _ => false,
            };
            TestResult::new(valid, satisfy)
        }
        Alone => {
            let valid = !ctx.subjects.is_empty();
            let subject_ids: BTreeSet<_> = ctx.subjects.iter().map(|e| &e.id).collect();
            let nearest_outside = ctx
                .subjects
                .iter()
                .flat_map(|s| {
                    ctx.view_entities
                        .iter()
                        .filter(|e| !subject_ids.contains(&e.id))
                        .map(move |e| s.distance_to(e))
                })
                .fold(None, |acc: Option<f64>, d| {
                    Some(acc.map_or(d, |m| m.min(d)))
                });
            let satisfy = match (nearest_outside, view_mean) {
                (Some(d), Some(e)) => d > e,
                _ => false,
            };
            TestResult::new(valid, satisfy)
        }
        other => panic!("not a proximity relation: {other}"),
    }
}

/// interior/exterior, against the center disc without objects and against
/// the objects' bounding box with them.
pub fn test_region(kind: CanonicalRelation, ctx: &RelationContext) -> TestResult {
    use CanonicalRelation::*;
    let interior = match kind {
        Interior => true,
        Exterior => false,
        other => panic!("not a region relation: {other}"),
    };
    if ctx.no_object {
        let valid = !ctx.subjects.is_empty();
        let satisfy = valid
            && ctx.subjects.iter().all(|s| {
                let inside = s.center_distance() <= REGION_CENTER_THRESHOLD;
                if interior {
                    inside
                } else {
                    !inside
                }
            });
        return TestResult::new(valid, satisfy);
    }
    let valid = !ctx.subjects.is_empty() && ctx.objects.len() > 1;
    if !valid {
        return TestResult::invalid();
    }
    let min_x = ctx.objects.iter().map(|e| e.x).fold(f64::INFINITY, f64::min);
    let max_x = ctx.objects.iter().map(|e| e.x).fold(f64::NEG_INFINITY, f64::max);
    let min_y = ctx.objects.iter().map(|e| e.y).fold(f64::INFINITY, f64::min);
    let max_y = ctx.objects.iter().map(|e| e.y).fold(f64::NEG_INFINITY, f64::max);
    let satisfy = ctx.subjects.iter().all(|s| {
        let outside_x = s.x < min_x || s.x > max_x;
        let outside_y = s.y < min_y || s.y > max_y;
        if interior {
            // Interior tolerates escaping the box along one axis, just not both.
            !(outside_x && outside_y)
        } else {
            outside_x || outside_y
        }
    });
    TestResult::new(valid, satisfy)
}

pub fn test_color_comparison(kind: CanonicalRelation, ctx: &RelationContext) -> TestResult {
    use CanonicalRelation::*;
    match kind {
        Lighter | Lightest | Darker | Darkest | SameColor | DifferentColor => {}
        other => panic!("not a color comparison: {other}"),
    }
    test_value_comparison(kind, ctx, Attribute::Color, COLOR_SAME_THRESHOLD)
}

pub fn test_size_comparison(kind: CanonicalRelation, ctx: &RelationContext) -> TestResult {
    use CanonicalRelation::*;
    match kind {
        Smaller | Smallest | Larger | Largest | SameSize | DifferentSize => {}
        other => panic!("not a size comparison: {other}"),
    }
    test_value_comparison(kind, ctx, Attribute::Size, SIZE_SAME_THRESHOLD)
}

/// Shared engine for the color and size comparison families. `attr` selects
/// the compared value and `same_threshold` the range below which a set
/// counts as uniform.
fn test_value_comparison(
    kind: CanonicalRelation,
    ctx: &RelationContext,
    attr: Attribute,
    same_threshold: f64,
) -> TestResult {
    use CanonicalRelation::*;
    match kind {
        SameColor | DifferentColor | SameSize | DifferentSize => {
            let referents = ctx.referents();
            let valid = referents.len() > 1;
            if !valid {
                return TestResult::invalid();
            }
            let values: Vec<f64> = referents.iter().map(|e| e.attribute(attr)).collect();
            let range = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
                - values.iter().cloned().fold(f64::INFINITY, f64::min);
            let same = range < same_threshold;
            let wants_same = matches!(kind, SameColor | SameSize);
            TestResult::new(valid, same == wants_same)
        }
        Lighter | Darker | Larger | Smaller => {
            let valid = !ctx.subjects.is_empty() && !ctx.objects.is_empty();
            let satisfy = match (mean_attr(&ctx.subjects, attr), mean_attr(&ctx.objects, attr)) {
                (Some(s), Some(o)) => {
                    if matches!(kind, Lighter | Larger) {
                        s > o
                    } else {
                        s < o
                    }
                }
                _ => false,
            };
            TestResult::new(valid, satisfy)
        }
        Lightest | Darkest | Largest | Smallest => {
            // Superlatives compare against the objects when annotated, and
            // against the rest of the view otherwise.
            let subject_ids: BTreeSet<_> = ctx.subjects.iter().map(|e| &e.id).collect();
            let pool = if ctx.objects.is_empty() {
                &ctx.view_entities
            } else {
                &ctx.objects
            };
            let comparison: Vec<&Entity> = pool
                .iter()
                .filter(|e| !subject_ids.contains(&e.id))
                .collect();
            let valid = !ctx.subjects.is_empty() && !comparison.is_empty();
            if !valid {
                return TestResult::invalid();
            }
            let subject_vals = ctx.subjects.iter().map(|e| e.attribute(attr));
            let other_vals = comparison.iter().map(|e| e.attribute(attr));
            // Strict inequalities: a tie for the extreme fails the test.
            let satisfy = if matches!(kind, Lightest | Largest) {
                let s_min = subject_vals.fold(f64::INFINITY, f64::min);
                let o_max = other_vals.fold(f64::NEG_INFINITY, f64::max);
                s_min > o_max
            } else {
                let s_max = subject_vals.fold(f64::NEG_INFINITY, f64::max);
                let o_min = other_vals.fold(f64::INFINITY, f64::min);
                s_max < o_min
            };
            TestResult::new(valid, satisfy)
        }
        other => panic!("not a value comparison: {other}"),
    }
}
