//! Domain model for dot scenes: entities with continuous attributes, the two
//! players' circular views, and paired partially-overlapping perspectives.
//!
//! A deterministic generator is included so that the whole evaluation stack
//! can be exercised at desk scale without any corpus data.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ids::EntityId;

/// Radius of each player's circular view, in scene length units.
pub const VIEW_RADIUS: f64 = 200.0;
/// Number of entities visible in each view.
pub const VIEW_SIZE: usize = 7;
/// Darkest color grade. Larger values are lighter.
pub const COLOR_MIN: u8 = 0;
/// Lightest color grade (150 grades total).
pub const COLOR_MAX: u8 = 149;
/// Largest size grade (6 grades total).
pub const SIZE_MAX: u8 = 5;

/// A single dot. Coordinates are view-local with the origin at the view
/// center and y increasing upward.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entity {
    pub id: EntityId,
    pub x: f64,
    pub y: f64,
    /// Color grade in `[0, 149]`; smaller is darker.
    pub color: u8,
    /// Size grade in `[0, 5]`.
    pub size: u8,
}

impl Entity {
    pub fn new(id: impl Into<EntityId>, x: f64, y: f64, color: u8, size: u8) -> Self {
        Entity {
            id: id.into(),
            x,
            y,
            color,
            size,
        }
    }

    /// Distance from the view center.
    pub fn center_distance(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }

    pub fn distance_to(&self, other: &Entity) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }

    pub fn attribute(&self, attribute: Attribute) -> f64 {
        match attribute {
            Attribute::X => self.x,
            Attribute::Y => self.y,
            Attribute::Color => f64::from(self.color),
            Attribute::Size => f64::from(self.size),
        }
    }
}

/// The four continuous entity attributes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Attribute {
    X,
    Y,
    Color,
    Size,
}

impl std::fmt::Display for Attribute {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Attribute::X => "x",
            Attribute::Y => "y",
            Attribute::Color => "color",
            Attribute::Size => "size",
        })
    }
}

impl std::str::FromStr for Attribute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(Attribute::X),
            "y" => Ok(Attribute::Y),
            "color" => Ok(Attribute::Color),
            "size" => Ok(Attribute::Size),
            other => Err(Error::invalid(format!("unknown attribute {other:?}"))),
        }
    }
}

/// One of the two players.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Player {
    A,
    B,
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Player::A => f.write_str("A"),
            Player::B => f.write_str("B"),
        }
    }
}

impl std::str::FromStr for Player {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Player::A),
            "B" | "b" => Ok(Player::B),
            other => Err(Error::invalid(format!("unknown player {other:?}"))),
        }
    }
}

/// One player's perspective: exactly seven entities inside the view circle.
#[derive(Clone, Debug, PartialEq)]
pub struct View {
    pub player: Player,
    /// Entities sorted by id.
    pub entities: Vec<Entity>,
}

impl View {
    /// Builds a view, sorting entities by id for stable serialization.
    pub fn new(player: Player, mut entities: Vec<Entity>) -> Self {
        entities.sort_by(|a, b| a.id.cmp(&b.id));
        View { player, entities }
    }

    pub fn entity(&self, id: &EntityId) -> Option<&Entity> {
        self.entities.iter().find(|e| &e.id == id)
    }

    pub fn entity_ids(&self) -> BTreeSet<EntityId> {
        self.entities.iter().map(|e| e.id.clone()).collect()
    }

    /// Resolves `ids` against this view, in id order. Unknown ids are reported.
    pub fn resolve(&self, ids: &BTreeSet<EntityId>) -> Result<Vec<Entity>> {
        ids.iter()
            .map(|id| {
                self.entity(id).cloned().ok_or_else(|| {
                    Error::invalid(format!("entity {id} is not in view {}", self.player))
                })
            })
            .collect()
    }
}

/// A pair of overlapping views of the same underlying scene.
///
/// `world_offset` is the translation from view A's frame to view B's frame:
/// a shared entity at `(x, y)` in view A sits at `(x - dx, y - dy)` in view B.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "SceneDoc", into = "SceneDoc")]
pub struct ScenePair {
    pub scene_id: String,
    pub shared_ids: BTreeSet<EntityId>,
    pub world_offset: [f64; 2],
    pub view_a: View,
    pub view_b: View,
}

impl ScenePair {
    pub fn view(&self, player: Player) -> &View {
        match player {
            Player::A => &self.view_a,
            Player::B => &self.view_b,
        }
    }

    /// Checks every structural invariant, returning a human-readable
    /// description per violation. An empty vector means the pair is sound.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for view in [&self.view_a, &self.view_b] {
            if view.entities.len() != VIEW_SIZE {
                out.push(format!(
                    "view {} has {} entities, expected {VIEW_SIZE}",
                    view.player,
                    view.entities.len()
                ));
            }
            let ids = view.entity_ids();
            if ids.len() != view.entities.len() {
                out.push(format!("view {} has duplicate entity ids", view.player));
            }
            for e in &view.entities {
                if e.center_distance() > VIEW_RADIUS + 1e-9 {
                    out.push(format!(
                        "entity {} lies outside view {} (distance {:.2})",
                        e.id,
                        view.player,
                        e.center_distance()
                    ));
                }
                if e.color > COLOR_MAX {
                    out.push(format!("entity {} color {} out of range", e.id, e.color));
                }
                if e.size > SIZE_MAX {
                    out.push(format!("entity {} size {} out of range", e.id, e.size));
                }
            }
        }
        if !(4..=6).contains(&self.shared_ids.len()) {
            out.push(format!(
                "{} shared entities, expected 4, 5 or 6",
                self.shared_ids.len()
            ));
        }
        let [dx, dy] = self.world_offset;
        for id in &self.shared_ids {
            match (self.view_a.entity(id), self.view_b.entity(id)) {
                (Some(a), Some(b)) => {
                    if a.color != b.color || a.size != b.size {
                        out.push(format!("shared entity {id} differs in color or size"));
                    }
                    if (a.x - b.x - dx).abs() > 1e-9 || (a.y - b.y - dy).abs() > 1e-9 {
                        out.push(format!(
                            "shared entity {id} positions are not related by the world offset"
                        ));
                    }
                }
                _ => out.push(format!("shared entity {id} is missing from a view")),
            }
        }
        for (view, other) in [(&self.view_a, &self.view_b), (&self.view_b, &self.view_a)] {
            for e in &view.entities {
                if !self.shared_ids.contains(&e.id) && other.entity(&e.id).is_some() {
                    out.push(format!(
                        "entity {} appears in both views but is not marked shared",
                        e.id
                    ));
                }
            }
        }
        out
    }
}

// On-disk layout: views keyed "A"/"B" as plain entity arrays.
#[derive(Serialize, Deserialize)]
struct SceneDoc {
    scene_id: String,
    shared_ids: Vec<EntityId>,
    world_offset: [f64; 2],
    views: ViewsDoc,
}

#[derive(Serialize, Deserialize)]
struct ViewsDoc {
    #[serde(rename = "A")]
    a: Vec<Entity>,
    #[serde(rename = "B")]
    b: Vec<Entity>,
}

impl From<ScenePair> for SceneDoc {
    fn from(pair: ScenePair) -> Self {
        SceneDoc {
            scene_id: pair.scene_id,
            shared_ids: pair.shared_ids.into_iter().collect(),
            world_offset: pair.world_offset,
            views: ViewsDoc {
                a: pair.view_a.entities,
                b: pair.view_b.entities,
            },
        }
    }
}

impl From<SceneDoc> for ScenePair {
    fn from(doc: SceneDoc) -> Self {
        ScenePair {
            scene_id: doc.scene_id,
            shared_ids: doc.shared_ids.into_iter().collect(),
            world_offset: doc.world_offset,
            view_a: View::new(Player::A, doc.views.a),
            view_b: View::new(Player::B, doc.views.b),
        }
    }
}

/// Generates a scene pair with `shared_count` entities in common.
///
/// All randomness is derived from `seed`; equal arguments produce
/// byte-identical pairs. Positions are sampled uniformly over the relevant
/// region by rejection, colors uniformly over `[0, 149]` and sizes over
/// `[0, 5]`. The offset between the two view centers has magnitude in
/// `[40, 160]`, so the views always overlap without coinciding.
pub fn generate_scene_pair(seed: u64, shared_count: usize) -> Result<ScenePair> {
    if !(4..=6).contains(&shared_count) {
        return Err(Error::invalid(format!(
            "shared_count must be 4, 5 or 6, got {shared_count}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let angle = rng.random_range(0.0..std::f64::consts::TAU);
    let magnitude = rng.random_range(40.0..160.0);
    let offset = [magnitude * angle.cos(), magnitude * angle.sin()];

    let in_b = |x: f64, y: f64| {
        let (bx, by) = (x - offset[0], y - offset[1]);
        (bx * bx + by * by).sqrt() <= VIEW_RADIUS
    };

    let sample = |rng: &mut ChaCha8Rng, keep: &dyn Fn(f64, f64) -> bool| loop {
        let x = rng.random_range(-VIEW_RADIUS..VIEW_RADIUS);
        let y = rng.random_range(-VIEW_RADIUS..VIEW_RADIUS);
        if (x * x + y * y).sqrt() <= VIEW_RADIUS && keep(x, y) {
            return (x, y);
        }
    };

    let attrs = |rng: &mut ChaCha8Rng| {
        (
            rng.random_range(0..=COLOR_MAX),
            rng.random_range(0..=SIZE_MAX),
        )
    };

    let mut shared = Vec::new();
    for i in 0..shared_count {
        let (x, y) = sample(&mut rng, &|x, y| in_b(x, y));
        let (color, size) = attrs(&mut rng);
        shared.push(Entity::new(format!("s{i}"), x, y, color, size));
    }

    let exclusive_count = VIEW_SIZE - shared_count;
    let mut a_only = Vec::new();
    for i in 0..exclusive_count {
        let (x, y) = sample(&mut rng, &|x, y| !in_b(x, y));
        let (color, size) = attrs(&mut rng);
        a_only.push(Entity::new(format!("a{i}"), x, y, color, size));
    }

    // B-frame coordinates; excluded from view A's disk.
    let mut b_only = Vec::new();
    for i in 0..exclusive_count {
        let (x, y) = sample(&mut rng, &|x, y| {
            let (ax, ay) = (x + offset[0], y + offset[1]);
            (ax * ax + ay * ay).sqrt() > VIEW_RADIUS
        });
        let (color, size) = attrs(&mut rng);
        b_only.push(Entity::new(format!("b{i}"), x, y, color, size));
    }

    let shared_in_b: Vec<Entity> = shared
        .iter()
        .map(|e| {
            let mut b = e.clone();
            b.x -= offset[0];
            b.y -= offset[1];
            b
        })
        .collect();

    let shared_ids = shared.iter().map(|e| e.id.clone()).collect();
    let mut a_entities = shared;
    a_entities.extend(a_only);
    let mut b_entities = shared_in_b;
    b_entities.extend(b_only);

    Ok(ScenePair {
        scene_id: format!("scene-{seed:016x}"),
        shared_ids,
        world_offset: offset,
        view_a: View::new(Player::A, a_entities),
        view_b: View::new(Player::B, b_entities),
    })
}

/// Mean Euclidean distance over all unordered entity pairs.
pub fn pairwise_mean_distance(entities: &[Entity]) -> Result<f64> {
    if entities.len() < 2 {
        return Err(Error::invalid(format!(
            "pairwise mean distance needs at least 2 entities, got {}",
            entities.len()
        )));
    }
    let mut sum = 0.0;
    let mut pairs = 0usize;
    for (i, a) in entities.iter().enumerate() {
        for b in &entities[i + 1..] {
            sum += a.distance_to(b);
            pairs += 1;
        }
    }
    Ok(sum / pairs as f64)
}

/// Arithmetic mean of the selected attribute.
pub fn mean_attribute(entities: &[Entity], attribute: Attribute) -> Result<f64> {
    if entities.is_empty() {
        return Err(Error::invalid("mean of an empty entity list"));
    }
    let sum: f64 = entities.iter().map(|e| e.attribute(attribute)).sum();
    Ok(sum / entities.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dot(id: &str, x: f64, y: f64) -> Entity {
        Entity::new(id, x, y, 0, 0)
    }

    #[test]
    fn generate_respects_shared_count() {
        for count in 4..=6 {
            let pair = generate_scene_pair(1, count).unwrap();
            assert_eq!(pair.shared_ids.len(), count);
            assert_eq!(pair.view_a.entities.len(), 7);
            assert_eq!(pair.view_b.entities.len(), 7);
            assert!(pair.violations().is_empty(), "{:?}", pair.violations());
        }
    }

    #[test]
    fn generate_is_deterministic() {
        let a = generate_scene_pair(1, 4).unwrap();
        let b = generate_scene_pair(1, 4).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn generate_rejects_bad_shared_count() {
        assert!(generate_scene_pair(1, 7).is_err());
        assert!(generate_scene_pair(1, 3).is_err());
    }

    #[test]
    fn pairwise_distance_two_entities() {
        let e = [dot("a", 0.0, 0.0), dot("b", 10.0, 0.0)];
        assert_eq!(pairwise_mean_distance(&e).unwrap(), 10.0);
    }

    #[test]
    fn pairwise_distance_collinear_triple() {
        // Hand enumeration of the three pairs (d, d, 2d) gives 4d/3.
        let d = 7.5;
        let e = [dot("a", 0.0, 0.0), dot("b", d, 0.0), dot("c", 2.0 * d, 0.0)];
        let enumerated = (d + d + 2.0 * d) / 3.0;
        let got = pairwise_mean_distance(&e).unwrap();
        assert!((got - enumerated).abs() < 1e-12);
        assert!((got - 4.0 * d / 3.0).abs() < 1e-12);
    }

    #[test]
    fn pairwise_distance_rejects_singleton() {
        assert!(pairwise_mean_distance(&[dot("a", 0.0, 0.0)]).is_err());
    }

    #[test]
    fn mean_attribute_examples() {
        let single = [dot("a", -10.0, 0.0)];
        assert_eq!(mean_attribute(&single, Attribute::X).unwrap(), -10.0);
        let two = [dot("a", 0.0, 0.0), dot("b", 10.0, 0.0)];
        assert_eq!(mean_attribute(&two, Attribute::X).unwrap(), 5.0);
        assert!(mean_attribute(&[], Attribute::X).is_err());
    }

    #[test]
    fn scene_round_trips_through_json() {
        let pair = generate_scene_pair(42, 5).unwrap();
        let json = serde_json::to_string(&pair).unwrap();
        let back: ScenePair = serde_json::from_str(&json).unwrap();
        assert_eq!(pair, back);
    }
}
