//! Synthetic data: random relation contexts for fuzzing, analytically
//! satisfying or violating constructions per relation, and a generator for
//! whole annotated corpora whose gold referents provably satisfy their
//! annotated relations.
//!
//! Constructions keep every entity within 152 units of the view center so
//! the embedding into a two-view scene always finds a workable overlap.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::annotation::{
    CanonicalRelation, DialogueDocument, ExpressionKind, Markable, ModifierAnnotation,
    SpatialExpression, TokenSpan, Utterance,
};
use crate::error::{Error, Result};
use crate::ids::EntityId;
use crate::io::{MarkablePrediction, PredictionDocument};
use crate::lexicon::Lexicon;
use crate::referent::perturb_gold;
use crate::relations::RelationContext;
use crate::scene::{Entity, Player, ScenePair, View, COLOR_MAX, SIZE_MAX, VIEW_RADIUS, VIEW_SIZE};

/// Largest center distance any construction uses. Leaves headroom for the
/// scene embedding, which shifts shared entities by the view offset.
pub const CONSTRUCTION_RADIUS: f64 = 152.0;

fn polar(r: f64, angle: f64) -> (f64, f64) {
    (r * angle.cos(), r * angle.sin())
}

fn disc_point(rng: &mut impl Rng, max_r: f64) -> (f64, f64) {
    // Area-uniform via sqrt; uniformity is irrelevant here, coverage is not.
    let r = max_r * rng.random::<f64>().sqrt();
    polar(r, rng.random_range(0.0..TAU))
}

/// A completely random context over a 7-entity view: arbitrary geometry,
/// arbitrary argument subsets. Used for invariant fuzzing.
pub fn random_context(rng: &mut impl Rng) -> RelationContext {
    let view_entities: Vec<Entity> = (0..VIEW_SIZE)
        .map(|i| {
            let (x, y) = disc_point(rng, VIEW_RADIUS);
            Entity::new(
                format!("e{i}"),
                x,
                y,
                rng.random_range(0..=COLOR_MAX),
                rng.random_range(0..=SIZE_MAX),
            )
        })
        .collect();
    let subjects: Vec<Entity> = view_entities
        .iter()
        .filter(|_| rng.random_bool(0.35))
        .cloned()
        .collect();
    let objects: Vec<Entity> = view_entities
        .iter()
        .filter(|_| rng.random_bool(0.35))
        .cloned()
        .collect();
    let no_object = objects.is_empty() && rng.random_bool(0.5);
    RelationContext {
        subjects,
        objects,
        no_object,
        view_entities,
    }
}

/// Negates every x coordinate, including the view's.
pub fn mirror_x(ctx: &RelationContext) -> RelationContext {
    transform(ctx, |e| e.x = -e.x)
}

/// Negates every y coordinate.
pub fn mirror_y(ctx: &RelationContext) -> RelationContext {
    transform(ctx, |e| e.y = -e.y)
}

/// Rigidly rotates every coordinate about the view center.
pub fn rotate(ctx: &RelationContext, angle: f64) -> RelationContext {
    let (sin, cos) = angle.sin_cos();
    transform(ctx, |e| {
        let (x, y) = (e.x, e.y);
        e.x = x * cos - y * sin;
        e.y = x * sin + y * cos;
    })
}

/// Scales every coordinate by a uniform factor.
pub fn scale(ctx: &RelationContext, factor: f64) -> RelationContext {
    transform(ctx, |e| {
        e.x *= factor;
        e.y *= factor;
    })
}

fn transform(ctx: &RelationContext, f: impl Fn(&mut Entity)) -> RelationContext {
    let map = |entities: &[Entity]| {
        entities
            .iter()
            .map(|e| {
                let mut e = e.clone();
                f(&mut e);
                e
            })
            .collect::<Vec<_>>()
    };
    RelationContext {
        subjects: map(&ctx.subjects),
        objects: map(&ctx.objects),
        no_object: ctx.no_object,
        view_entities: map(&ctx.view_entities),
    }
}

/// Deterministically constructs a context that satisfies `relation`.
pub fn satisfying_context(relation: CanonicalRelation, rng: &mut impl Rng) -> RelationContext {
    build_context(relation, true, rng)
}

/// Deterministically constructs a context that is valid for `relation` but
/// does not satisfy it (mirrored or otherwise incompatible geometry).
pub fn violating_context(relation: CanonicalRelation, rng: &mut impl Rng) -> RelationContext {
    build_context(relation, false, rng)
}

/// Roles for the seven entities of a construction.
struct Cast {
    entities: Vec<Entity>,
    subjects: Vec<usize>,
    objects: Vec<usize>,
    no_object: bool,
}

impl Cast {
    fn into_context(self) -> RelationContext {
        let pick = |indices: &[usize]| {
            indices
                .iter()
                .map(|i| self.entities[*i].clone())
                .collect::<Vec<Entity>>()
        };
        RelationContext {
            subjects: pick(&self.subjects),
            objects: pick(&self.objects),
            no_object: self.no_object,
            view_entities: self.entities,
        }
    }
}

fn entity(i: usize, (x, y): (f64, f64), color: u8, size: u8) -> Entity {
    Entity::new(format!("e{i}"), x, y, color, size)
}

/// Scatters filler entities on a mid-radius ring so they never dominate any
/// construction; colors and sizes are mild mid-range values.
fn fillers(rng: &mut impl Rng, start: usize, count: usize) -> Vec<Entity> {
    (0..count)
        .map(|k| {
            let angle = rng.random_range(0.0..TAU);
            let point = polar(rng.random_range(60.0..140.0), angle);
            entity(
                start + k,
                point,
                rng.random_range(60..=90),
                rng.random_range(2..=3),
            )
        })
        .collect()
}

fn build_context(relation: CanonicalRelation, satisfy: bool, rng: &mut impl Rng) -> RelationContext {
    use CanonicalRelation::*;
    let cast = match relation {
        Left | Right | Above | Below => direction_cast(relation, satisfy, rng),
        Horizontal | Vertical | Diagonal => axis_cast(relation, satisfy, rng),
        Near => proximity_cast(satisfy, rng),
        Far => proximity_cast(!satisfy, rng),
        Alone => alone_cast(satisfy, rng),
        Interior | Exterior => region_cast(relation == Interior, satisfy, rng),
        Lighter | Darker | Smaller | Larger => comparative_cast(relation, satisfy, rng),
        Lightest | Darkest | Smallest | Largest => superlative_cast(relation, satisfy, rng),
        SameColor | DifferentColor | SameSize | DifferentSize => {
            uniformity_cast(relation, satisfy, rng)
        }
    };
    cast.into_context()
}

/// Subjects in one half, objects (or nothing) in the other, margin >= 160.
fn direction_cast(relation: CanonicalRelation, satisfy: bool, rng: &mut impl Rng) -> Cast {
    use CanonicalRelation::*;
    // Coordinate axis and the sign of the satisfying subject side.
    let (x_axis, side) = match relation {
        Left => (true, -1.0),
        Right => (true, 1.0),
        Above => (false, 1.0),
        Below => (false, -1.0),
        _ => unreachable!("direction cast on {relation}"),
    };
    let side = if satisfy { side } else { -side };
    fn point(rng: &mut impl Rng, x_axis: bool, sign: f64) -> (f64, f64) {
        let main = sign * rng.random_range(80.0..120.0);
        let cross = rng.random_range(-50.0..50.0);
        if x_axis {
            (main, cross)
        } else {
            (cross, main)
        }
    }
    let mut entities = vec![
        entity(0, point(rng, x_axis, side), 70, 2),
        entity(1, point(rng, x_axis, side), 70, 2),
    ];
    if rng.random_bool(0.5) {
        entities.extend(fillers(rng, 2, 5));
        Cast {
            entities,
            subjects: vec![0, 1],
            objects: vec![],
            no_object: true,
        }
    } else {
        entities.push(entity(2, point(rng, x_axis, -side), 70, 2));
        entities.push(entity(3, point(rng, x_axis, -side), 70, 2));
        entities.extend(fillers(rng, 4, 3));
        Cast {
            entities,
            subjects: vec![0, 1],
            objects: vec![2, 3],
            no_object: false,
        }
    }
}

/// Three exactly collinear referents whose slope sits inside (satisfying) or
/// outside (violating) the relation's band.
fn axis_cast(relation: CanonicalRelation, satisfy: bool, rng: &mut impl Rng) -> Cast {
    use CanonicalRelation::*;
    // Slope band representative per case; exact collinearity keeps the
    // fitted slope at the chosen value regardless of spacing.
    enum Line {
        Sloped(f64),
        Stacked,
    }
    let line = match (relation, satisfy) {
        (Horizontal, true) => Line::Sloped(rng.random_range(-0.2..0.2)),
        (Horizontal, false) | (Vertical, false) => {
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            Line::Sloped(sign * rng.random_range(0.6..1.4))
        }
        (Vertical, true) => {
            if rng.random_bool(0.5) {
                Line::Stacked
            } else {
                let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
                Line::Sloped(sign * rng.random_range(3.5..6.0))
            }
        }
        (Diagonal, true) => {
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            Line::Sloped(sign * rng.random_range(0.6..1.4))
        }
        (Diagonal, false) => Line::Sloped(rng.random_range(-0.2..0.2)),
        _ => unreachable!("axis cast on {relation}"),
    };
    let mut entities = Vec::new();
    match line {
        Line::Stacked => {
            let x = rng.random_range(-90.0..90.0);
            for (i, y) in [-100.0, 0.0, 100.0].into_iter().enumerate() {
                entities.push(entity(i, (x, y + rng.random_range(-15.0..15.0)), 70, 2));
            }
        }
        Line::Sloped(m) => {
            // Bound both coordinates by 110 whatever the slope, keeping the
            // whole line inside the construction radius.
            let reach = 95.0 / m.abs().max(1.0);
            let intercept = rng.random_range(-15.0..15.0);
            for (i, t) in [-1.0, 0.0, 1.0].into_iter().enumerate() {
                let x = t * rng.random_range(0.6..1.0) * reach;
                entities.push(entity(i, (x, m * x + intercept), 70, 2));
            }
        }
    }
    entities.extend(fillers(rng, 3, 4));
    Cast {
        entities,
        subjects: vec![0, 1, 2],
        objects: vec![],
        no_object: true,
    }
}

/// Tight referent cluster against a spread-out view (near satisfied), or a
/// maximally spread referent pair against a clustered view (far satisfied).
/// The two are each other's violations.
fn proximity_cast(tight: bool, rng: &mut impl Rng) -> Cast {
    let mut entities = Vec::new();
    let (subjects, objects, no_object);
    if tight {
        // Referents within a 30-unit box near the center.
        let center = disc_point(rng, 40.0);
        for i in 0..3 {
            let p = (
                center.0 + rng.random_range(-15.0..15.0),
                center.1 + rng.random_range(-15.0..15.0),
            );
            entities.push(entity(i, p, 70, 2));
        }
        // View spread out on a wide ring, one per quadrant.
        let base = rng.random_range(0.0..TAU);
        for k in 0..4 {
            let angle = base + k as f64 * TAU / 4.0 + rng.random_range(-0.2..0.2);
            entities.push(entity(3 + k, polar(120.0, angle), 70, 2));
        }
        if rng.random_bool(0.5) {
            (subjects, objects, no_object) = (vec![0, 1, 2], vec![], true);
        } else {
            (subjects, objects, no_object) = (vec![0, 1], vec![2], false);
        }
    } else {
        // Referent pair pinned to opposite rims, 300 units apart.
        let angle = rng.random_range(0.0..TAU);
        let jitter = rng.random_range(-10.0..10.0);
        let (dx, dy) = polar(150.0, angle);
        let (px, py) = polar(jitter, angle + TAU / 4.0);
        entities.push(entity(0, (dx + px, dy + py), 70, 2));
        entities.push(entity(1, (-dx + px, -dy + py), 70, 2));
        // The rest of the view huddles near the center.
        let center = disc_point(rng, 20.0);
        for k in 0..5 {
            let p = (
                center.0 + rng.random_range(-30.0..30.0),
                center.1 + rng.random_range(-30.0..30.0),
            );
            entities.push(entity(2 + k, p, 70, 2));
        }
        if rng.random_bool(0.5) {
            (subjects, objects, no_object) = (vec![0, 1], vec![], true);
        } else {
            (subjects, objects, no_object) = (vec![0], vec![1], false);
        }
    }
    Cast {
        entities,
        subjects,
        objects,
        no_object,
    }
}

/// Satisfying: lone subject opposite a far-away huddle. Violating: subject
/// at the exact center of a radius-50 hexagon, whose nearest-neighbor
/// distance provably undercuts the view's mean pairwise distance.
fn alone_cast(satisfy: bool, rng: &mut impl Rng) -> Cast {
    let mut entities = Vec::new();
    if satisfy {
        let angle = rng.random_range(0.0..TAU);
        let (sx, sy) = polar(150.0, angle);
        entities.push(entity(0, (sx, sy), 70, 2));
        // Cluster in a 40-unit box across the view; ring radius 120 keeps
        // even radial jitter under the construction radius.
        let (cx, cy) = polar(120.0, angle + std::f64::consts::PI);
        for k in 0..6 {
            let p = (
                cx + rng.random_range(-20.0..20.0),
                cy + rng.random_range(-20.0..20.0),
            );
            entities.push(entity(1 + k, p, 70, 2));
        }
    } else {
        let center = disc_point(rng, 100.0);
        entities.push(entity(0, center, 70, 2));
        let base = rng.random_range(0.0..TAU);
        for k in 0..6 {
            let angle = base + k as f64 * TAU / 6.0;
            let p = polar(50.0, angle);
            entities.push(entity(1 + k, (center.0 + p.0, center.1 + p.1), 70, 2));
        }
    }
    Cast {
        entities,
        subjects: vec![0],
        objects: vec![],
        no_object: true,
    }
}

/// Interior/exterior in both the center-disc and bounding-box forms.
fn region_cast(interior: bool, satisfy: bool, rng: &mut impl Rng) -> Cast {
    let inside_wanted = interior == satisfy;
    let mut entities = Vec::new();
    if rng.random_bool(0.5) {
        // Center-disc form: threshold 120 with a 20-unit margin either way.
        let p = if inside_wanted {
            disc_point(rng, 100.0)
        } else {
            polar(rng.random_range(140.0..150.0), rng.random_range(0.0..TAU))
        };
        entities.push(entity(0, p, 70, 2));
        entities.extend(fillers(rng, 1, 6));
        Cast {
            entities,
            subjects: vec![0],
            objects: vec![],
            no_object: true,
        }
    } else {
        // Bounding-box form: four object corners at +/-(60..70).
        for (i, (sx, sy)) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
            .into_iter()
            .enumerate()
        {
            let p = (
                sx * rng.random_range(60.0..70.0),
                sy * rng.random_range(60.0..70.0),
            );
            entities.push(entity(i, p, 70, 2));
        }
        let subject = if inside_wanted {
            // Deep inside the box on both axes.
            (
                rng.random_range(-40.0..40.0),
                rng.random_range(-40.0..40.0),
            )
        } else {
            // Beyond the box on both axes.
            let sx = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let sy = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            (
                sx * rng.random_range(95.0..105.0),
                sy * rng.random_range(95.0..105.0),
            )
        };
        entities.push(entity(4, subject, 70, 2));
        entities.extend(fillers(rng, 5, 2));
        Cast {
            entities,
            subjects: vec![4],
            objects: vec![0, 1, 2, 3],
            no_object: false,
        }
    }
}

/// Subject mean strictly on the required side of the object mean, with a
/// wide gap in color or size.
fn comparative_cast(relation: CanonicalRelation, satisfy: bool, rng: &mut impl Rng) -> Cast {
    use CanonicalRelation::*;
    let subject_high = matches!(relation, Lighter | Larger) == satisfy;
    let color_axis = matches!(relation, Lighter | Darker);
    fn graded(rng: &mut impl Rng, i: usize, color_axis: bool, high: bool) -> Entity {
        let (color, size) = if color_axis {
            (
                if high {
                    rng.random_range(110..=140)
                } else {
                    rng.random_range(10..=40)
                },
                2,
            )
        } else {
            (
                70,
                if high {
                    rng.random_range(4..=5)
                } else {
                    rng.random_range(0..=1)
                },
            )
        };
        Entity::new(format!("e{i}"), 0.0, 0.0, color, size)
    }
    let mut entities = vec![
        graded(rng, 0, color_axis, subject_high),
        graded(rng, 1, color_axis, subject_high),
        graded(rng, 2, color_axis, !subject_high),
        graded(rng, 3, color_axis, !subject_high),
    ];
    for e in &mut entities {
        let (x, y) = disc_point(rng, 140.0);
        e.x = x;
        e.y = y;
    }
    entities.extend(fillers(rng, 4, 3));
    Cast {
        entities,
        subjects: vec![0, 1],
        objects: vec![2, 3],
        no_object: false,
    }
}

/// Subject at the strict extreme of the comparison pool (or inside it, for
/// violations). Mixes annotated-object and whole-view comparison forms.
fn superlative_cast(relation: CanonicalRelation, satisfy: bool, rng: &mut impl Rng) -> Cast {
    use CanonicalRelation::*;
    let subject_high = matches!(relation, Lightest | Largest);
    let color_axis = matches!(relation, Lightest | Darkest);

    // Value bands as (color, size) pairs per role. The satisfying subject is
    // strictly beyond the whole pool; the violating pool member at index 1
    // is strictly beyond the mid-band subject.
    let subject = if color_axis {
        let color = match (satisfy, subject_high) {
            (true, true) => rng.random_range(140..=149),
            (true, false) => rng.random_range(0..=9),
            (false, _) => rng.random_range(60..=80),
        };
        (color, 2)
    } else {
        let size = match (satisfy, subject_high) {
            (true, true) => SIZE_MAX,
            (true, false) => 0,
            (false, _) => rng.random_range(2..=3),
        };
        (70, size)
    };
    let mut pool = |beyond: bool| -> (u8, u8) {
        if color_axis {
            let color = if beyond {
                if subject_high {
                    149
                } else {
                    0
                }
            } else {
                rng.random_range(20..=120)
            };
            (color, 2)
        } else {
            let size = if beyond {
                if subject_high {
                    SIZE_MAX
                } else {
                    0
                }
            } else {
                rng.random_range(1..=SIZE_MAX - 1)
            };
            (70, size)
        }
    };

    let mut entities = Vec::new();
    let (color, size) = subject;
    entities.push(entity(0, (0.0, 0.0), color, size));
    for i in 1..VIEW_SIZE {
        let (color, size) = pool(!satisfy && i == 1);
        entities.push(entity(i, (0.0, 0.0), color, size));
    }
    for e in &mut entities {
        let (x, y) = disc_point(rng, 140.0);
        e.x = x;
        e.y = y;
    }
    if rng.random_bool(0.5) {
        Cast {
            entities,
            subjects: vec![0],
            objects: vec![1, 2],
            no_object: false,
        }
    } else {
        Cast {
            entities,
            subjects: vec![0],
            objects: vec![],
            no_object: true,
        }
    }
}

/// Referent colors or sizes packed inside (same) or stretched beyond
/// (different) the uniformity threshold.
fn uniformity_cast(relation: CanonicalRelation, satisfy: bool, rng: &mut impl Rng) -> Cast {
    use CanonicalRelation::*;
    let color_axis = matches!(relation, SameColor | DifferentColor);
    let uniform_wanted = matches!(relation, SameColor | SameSize) == satisfy;
    let mut values: Vec<u8> = if color_axis {
        if uniform_wanted {
            let base = rng.random_range(10..=119);
            (0..3).map(|_| base + rng.random_range(0..=20)).collect()
        } else {
            let low = rng.random_range(0..=40);
            let high = low + rng.random_range(50..=90);
            vec![low, high, rng.random_range(low..=high)]
        }
    } else if uniform_wanted {
        let base = rng.random_range(0..=4);
        (0..3).map(|_| base + rng.random_range(0..=1)).collect()
    } else {
        let low = rng.random_range(0..=2);
        vec![low, low + 3, rng.random_range(low..=low + 3)]
    };
    // First value must share the extremes so the range is as designed.
    values.sort_unstable();
    let mut entities = Vec::new();
    for (i, v) in values.iter().enumerate() {
        let (color, size) = if color_axis { (*v, 2) } else { (70, *v) };
        entities.push(entity(i, disc_point(rng, 140.0), color, size));
    }
    entities.extend(fillers(rng, 3, 4));
    let (subjects, objects, no_object) = if rng.random_bool(0.5) {
        (vec![0, 1, 2], vec![], true)
    } else {
        (vec![0, 2], vec![1], false)
    };
    Cast {
        entities,
        subjects,
        objects,
        no_object,
    }
}

/// Embeds seven view-A entities into a full two-view scene: picks an offset
/// under which 4 to 6 of them fall inside the partner's view, makes those
/// the shared entities and fills view B with fresh entities outside A.
pub fn embed_scene(
    scene_id: &str,
    a_entities: Vec<Entity>,
    rng: &mut impl Rng,
) -> Result<ScenePair> {
    if a_entities.len() != VIEW_SIZE {
        return Err(Error::invalid(format!(
            "embedding needs {VIEW_SIZE} entities, got {}",
            a_entities.len()
        )));
    }
    for magnitude in [160.0, 180.0, 200.0, 220.0, 240.0] {
        for _ in 0..128 {
            let angle = rng.random_range(0.0..TAU);
            let offset = polar(magnitude, angle);
            let shared: Vec<&Entity> = a_entities
                .iter()
                .filter(|e| {
                    let (bx, by) = (e.x - offset.0, e.y - offset.1);
                    (bx * bx + by * by).sqrt() <= VIEW_RADIUS - 5.0
                })
                .collect();
            if !(4..=6).contains(&shared.len()) {
                continue;
            }
            let shared_ids: BTreeSet<EntityId> = shared.iter().map(|e| e.id.clone()).collect();
            let mut b_entities: Vec<Entity> = shared
                .iter()
                .map(|e| {
                    let mut b = (*e).clone();
                    b.x -= offset.0;
                    b.y -= offset.1;
                    b
                })
                .collect();
            // Fresh B-only entities, outside A's view with a margin.
            let mut k = 0;
            while b_entities.len() < VIEW_SIZE {
                let (x, y) = disc_point(rng, VIEW_RADIUS - 5.0);
                let (ax, ay) = (x + offset.0, y + offset.1);
                if (ax * ax + ay * ay).sqrt() <= VIEW_RADIUS + 5.0 {
                    continue;
                }
                b_entities.push(Entity::new(
                    format!("x{k}"),
                    x,
                    y,
                    rng.random_range(0..=COLOR_MAX),
                    rng.random_range(0..=SIZE_MAX),
                ));
                k += 1;
            }
            return Ok(ScenePair {
                scene_id: scene_id.to_owned(),
                shared_ids,
                world_offset: [offset.0, offset.1],
                view_a: View::new(Player::A, a_entities),
                view_b: View::new(Player::B, b_entities),
            });
        }
    }
    Err(Error::invalid(format!(
        "no workable view overlap found for scene {scene_id}"
    )))
}

/// Surface phrasing per relation for synthetic utterances.
fn relation_phrase(relation: CanonicalRelation) -> &'static [&'static str] {
    use CanonicalRelation::*;
    match relation {
        Left => &["left"],
        Right => &["right"],
        Above => &["above"],
        Below => &["below"],
        Horizontal => &["in", "a", "horizontal", "line"],
        Vertical => &["in", "a", "vertical", "line"],
        Diagonal => &["in", "a", "diagonal", "line"],
        Near => &["close", "together"],
        Far => &["far", "apart"],
        Alone => &["alone"],
        Interior => &["in", "the", "middle"],
        Exterior => &["near", "the", "edge"],
        Lighter => &["lighter"],
        Lightest => &["the", "lightest"],
        Darker => &["darker"],
        Darkest => &["the", "darkest"],
        SameColor => &["the", "same", "color"],
        DifferentColor => &["different", "colors"],
        Smaller => &["smaller"],
        Smallest => &["the", "smallest"],
        Larger => &["larger"],
        Largest => &["the", "largest"],
        SameSize => &["the", "same", "size"],
        DifferentSize => &["different", "sizes"],
    }
}

/// Attribute wording consistent with the entity's actual color grade.
fn color_term(color: u8) -> &'static [&'static str] {
    match color {
        0..=24 => &["very", "dark"],
        25..=49 => &["dark"],
        50..=74 => &["grey"],
        75..=94 => &["medium", "grey"],
        95..=114 => &["light", "grey"],
        115..=134 => &["light"],
        _ => &["very", "light"],
    }
}

fn size_term(size: u8) -> &'static [&'static str] {
    match size {
        0 => &["tiny"],
        1 => &["very", "small"],
        2 => &["small"],
        3 => &["medium"],
        4 => &["large"],
        _ => &["very", "large"],
    }
}

/// Modifier phrases the generator samples from, with their lexicon types
/// implied; `None` means unmodified.
const MODIFIER_PHRASES: [&[&str]; 6] = [
    &["slightly"],
    &["very"],
    &["kind", "of"],
    &["exactly"],
    &["fairly"],
    &["a", "little"],
];

/// One generated dialogue with its scene and synthetic model scores.
pub struct SynthDialogue {
    pub scene: ScenePair,
    pub document: DialogueDocument,
    pub predictions: PredictionDocument,
}

/// A whole generated corpus.
pub struct SynthCorpus {
    pub scenes: Vec<ScenePair>,
    pub documents: Vec<DialogueDocument>,
    pub predictions: Vec<PredictionDocument>,
}

/// Whether generated gold referents satisfy or violate their annotated
/// relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Consistency {
    Satisfying,
    Violating,
}

/// Generates `dialogues` single-relation dialogues cycling through all 24
/// relations, with scenes, gold-annotated documents and perturbed score
/// files. Deterministic per seed.
pub fn generate_corpus(seed: u64, dialogues: usize, consistency: Consistency) -> Result<SynthCorpus> {
    let mut corpus = SynthCorpus {
        scenes: Vec::with_capacity(dialogues),
        documents: Vec::with_capacity(dialogues),
        predictions: Vec::with_capacity(dialogues),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..dialogues {
        let relation = CanonicalRelation::ALL[i % CanonicalRelation::ALL.len()];
        let one = generate_dialogue(i, relation, consistency, &mut rng)?;
        corpus.scenes.push(one.scene);
        corpus.documents.push(one.document);
        corpus.predictions.push(one.predictions);
    }
    Ok(corpus)
}

fn generate_dialogue(
    index: usize,
    relation: CanonicalRelation,
    consistency: Consistency,
    rng: &mut impl Rng,
) -> Result<SynthDialogue> {
    let ctx = match consistency {
        Consistency::Satisfying => satisfying_context(relation, rng),
        Consistency::Violating => violating_context(relation, rng),
    };
    let scene = embed_scene(&format!("scene-{index:05}"), ctx.view_entities.clone(), rng)?;
    let dialogue_id = format!("dlg-{index:05}");

    let subject_ids: BTreeSet<EntityId> = ctx.subjects.iter().map(|e| e.id.clone()).collect();
    let object_ids: BTreeSet<EntityId> = ctx.objects.iter().map(|e| e.id.clone()).collect();
    let first_subject = &ctx.subjects[0];

    // Opening utterance introduces the subject with honest attribute terms.
    let mut u0 = vec!["i", "have", "a"];
    u0.extend(size_term(first_subject.size));
    u0.extend(color_term(first_subject.color));
    let attribute_span = TokenSpan::range(3, u0.len());
    u0.push("dot");
    let markable0_span = TokenSpan::range(2, u0.len());

    let u1 = vec!["okay", "i", "think", "i", "see", "that"];

    // Relation utterance: "it is [modifier] PHRASE [of the group]".
    let mut u2: Vec<&str> = vec!["it", "is"];
    let modifier_phrase = if rng.random_bool(0.6) {
        let phrase = MODIFIER_PHRASES[rng.random_range(0..MODIFIER_PHRASES.len())];
        let start = u2.len();
        u2.extend(phrase);
        Some(TokenSpan::range(start, u2.len()))
    } else {
        None
    };
    let phrase_start = u2.len();
    u2.extend(relation_phrase(relation));
    let expression_span = TokenSpan::range(phrase_start, u2.len());
    let object_span = (!ctx.objects.is_empty()).then(|| {
        u2.extend(["of", "the"]);
        let start = u2.len();
        u2.push("group");
        TokenSpan::range(start - 1, start + 1)
    });

    // Half the dialogues reference the subject across utterances, the other
    // half re-mention it inline.
    let inline_subject = rng.random_bool(0.5);
    let inline_span = TokenSpan::range(0, 1);

    let mut markables = vec![Markable {
        id: "m0".into(),
        utterance: 0,
        span: markable0_span,
        referents: subject_ids.clone(),
    }];
    let subject_markable = if inline_subject {
        markables.push(Markable {
            id: "m1".into(),
            utterance: 2,
            span: inline_span,
            referents: subject_ids.clone(),
        });
        "m1"
    } else {
        "m0"
    };
    if let Some(span) = object_span.clone() {
        markables.push(Markable {
            id: "mo".into(),
            utterance: 2,
            span,
            referents: object_ids.clone(),
        });
    }

    let lexicon = Lexicon::default();
    let mut modifiers = Vec::new();
    let mut expression_modifiers = Vec::new();
    if let Some(span) = modifier_phrase {
        let words: Vec<&str> = span.positions().iter().map(|p| u2[*p]).collect();
        let mod_type = lexicon
            .classify_modifier(&words)
            .expect("generator phrases are in the default lexicon");
        modifiers.push(ModifierAnnotation {
            id: "n0".into(),
            utterance: 2,
            span,
            mod_type,
            modificand: "x0".into(),
        });
        expression_modifiers.push("n0".into());
    }

    let mut expressions = vec![SpatialExpression {
        id: "x0".into(),
        kind: ExpressionKind::Relation,
        utterance: 2,
        span: expression_span,
        subjects: vec![subject_markable.into()],
        objects: object_span.is_some().then(|| "mo".into()).into_iter().collect(),
        no_object: ctx.no_object,
        unannotatable: false,
        canonical: [relation].into_iter().collect(),
        modifiers: expression_modifiers,
    }];
    // Texture: an attribute expression over the opening mention.
    if rng.random_bool(0.3) {
        expressions.push(SpatialExpression {
            id: "x1".into(),
            kind: ExpressionKind::Attribute,
            utterance: 0,
            span: attribute_span,
            subjects: vec!["m0".into()],
            objects: vec![],
            no_object: true,
            unannotatable: false,
            canonical: BTreeSet::new(),
            modifiers: vec![],
        });
    }

    let utterances = vec![
        Utterance {
            index: 0,
            speaker: Player::A,
            tokens: u0.iter().map(|t| (*t).to_owned()).collect(),
        },
        Utterance {
            index: 1,
            speaker: Player::B,
            tokens: u1.iter().map(|t| (*t).to_owned()).collect(),
        },
        Utterance {
            index: 2,
            speaker: Player::A,
            tokens: u2.iter().map(|t| (*t).to_owned()).collect(),
        },
    ];

    let document = DialogueDocument {
        dialogue_id: dialogue_id.clone(),
        scene_id: scene.scene_id.clone(),
        utterances,
        markables,
        expressions,
        modifiers,
    };

    // Scores reproduce gold exactly; decoding them must round-trip.
    let view_ids: Vec<EntityId> = scene
        .view_a
        .entities
        .iter()
        .map(|e| e.id.clone())
        .collect();
    let predictions = PredictionDocument {
        dialogue_id,
        predictions: document
            .markables
            .iter()
            .map(|m| MarkablePrediction {
                markable_id: m.id.clone(),
                scores: perturb_gold(&m.referents, &view_ids, 0.0, rng.random()),
                count: Some(m.referents.len()),
                decoded: None,
            })
            .collect(),
    };

    Ok(SynthDialogue {
        scene,
        document,
        predictions,
    })
}
