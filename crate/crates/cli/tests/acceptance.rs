//! Acceptance gate for the whole toolkit: eight self-contained criteria,
//! each with an explicit time budget and tolerance, printed one line per
//! criterion. Run with `-- --nocapture` to watch the lines go by; on failure
//! the captured output lists every criterion that missed.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spotcheck_core::ids::EntityId;
use spotcheck_core::metrics::agreement::cohen_kappa;
use spotcheck_core::metrics::resolution::{entity_accuracy, exact_match, ReferentSets};
use spotcheck_core::metrics::split::{rotation_split, stable_bin, SPLIT_BINS};
use spotcheck_core::referent::{perturb_gold, threshold_predict, topk_predict};
use spotcheck_core::scene::pairwise_mean_distance;
use spotcheck_core::synth::{
    mirror_x, mirror_y, random_context, rotate, satisfying_context, violating_context,
};
use spotcheck_core::{
    evaluate, CanonicalRelation, Entity, RelationCategory, RelationContext, TestResult,
};

enum Verdict {
    Pass,
    Skip(String),
}

type Criterion = (&'static str, Duration, fn() -> Result<Verdict, String>);

const CRITERIA: [Criterion; 8] = [
    ("algorithm-fidelity", Duration::from_secs(1), algorithm_fidelity),
    ("oracle-consistency", Duration::from_secs(30), oracle_consistency),
    ("fuzz-invariants", Duration::from_secs(60), fuzz_invariants),
    ("kappa-correctness", Duration::from_secs(30), kappa_correctness),
    ("decoder-properties", Duration::from_secs(30), decoder_properties),
    ("split-property", Duration::from_secs(30), split_property),
    ("table-shape-regression", Duration::from_secs(60), table_shape_regression),
    ("corpus-hook", Duration::from_secs(60), corpus_hook),
];

#[test]
fn acceptance_gate() {
    let mut failures = Vec::new();
    for (name, budget, run) in CRITERIA {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(Verdict::Pass) if elapsed <= budget => {
                println!("ACCEPTANCE {name}: pass ({} ms)", elapsed.as_millis());
            }
            Ok(Verdict::Pass) => {
                println!(
                    "ACCEPTANCE {name}: FAIL (over budget: {} ms > {} ms)",
                    elapsed.as_millis(),
                    budget.as_millis()
                );
                failures.push(name);
            }
            Ok(Verdict::Skip(reason)) => {
                println!("ACCEPTANCE {name}: skip ({reason})");
            }
            Err(reason) => {
                println!("ACCEPTANCE {name}: FAIL ({reason})");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}

fn fail(message: impl Into<String>) -> Result<Verdict, String> {
    Err(message.into())
}

fn entity(id: &str, x: f64, y: f64, color: u8, size: u8) -> Entity {
    Entity::new(id, x, y, color, size)
}

/// A fixed 7-entity backdrop with a known spread, for hand cases that need a
/// full view.
fn backdrop() -> Vec<Entity> {
    (0..7)
        .map(|i| entity(&format!("v{i}"), -150.0 + 50.0 * i as f64, 10.0 * i as f64, 70, 2))
        .collect()
}

fn ctx(subjects: Vec<Entity>, objects: Vec<Entity>, no_object: bool) -> RelationContext {
    RelationContext {
        subjects,
        objects,
        no_object,
        view_entities: backdrop(),
    }
}

fn expect(
    relation: CanonicalRelation,
    context: &RelationContext,
    satisfy: bool,
    valid: bool,
    label: &str,
) -> Result<(), String> {
    let got = evaluate(relation, context);
    let want = TestResult { satisfy, valid };
    if got == want {
        Ok(())
    } else {
        Err(format!("{label}: {relation} gave {got:?}, expected {want:?}"))
    }
}

/// Hand-constructed cases pinning every documented threshold: the slope
/// bands at 1/3 and 3 (closed toward diagonal), the 120-unit center disc,
/// the color range 30 and the size range 1.2, mean-vs-mean direction and
/// strict superlatives.
fn algorithm_fidelity() -> Result<Verdict, String> {
    use CanonicalRelation::*;
    let s = |x: f64, y: f64| vec![entity("s", x, y, 50, 2)];
    let pair = |x1: f64, y1: f64, x2: f64, y2: f64| {
        vec![entity("p", x1, y1, 50, 2), entity("q", x2, y2, 50, 2)]
    };

    // Direction against the center, then against object means.
    expect(Left, &ctx(s(-10.0, 5.0), vec![], true), true, true, "left of center")?;
    expect(Left, &ctx(s(10.0, 5.0), vec![], true), false, true, "not left of center")?;
    expect(Above, &ctx(s(0.0, 10.0), vec![], true), true, true, "above center")?;
    expect(Below, &ctx(s(0.0, 10.0), vec![], true), false, true, "not below center")?;
    let objects = vec![entity("o1", 10.0, 0.0, 50, 2), entity("o2", -2.0, 0.0, 50, 2)];
    expect(Left, &ctx(s(-5.0, 0.0), objects.clone(), false), true, true, "left of mean 4")?;
    expect(Right, &ctx(s(5.0, 0.0), objects, false), true, true, "right of mean 4")?;

    // Slope bands: the 1/3 and 3 boundaries belong to diagonal.
    expect(Horizontal, &ctx(pair(0.0, 0.0, 4.0, 1.0), vec![], true), true, true, "slope 1/4")?;
    expect(Diagonal, &ctx(pair(0.0, 0.0, 3.0, 1.0), vec![], true), true, true, "slope 1/3")?;
    expect(Horizontal, &ctx(pair(0.0, 0.0, 3.0, 1.0), vec![], true), false, true, "slope 1/3")?;
    expect(Diagonal, &ctx(pair(0.0, 0.0, 1.0, 3.0), vec![], true), true, true, "slope 3")?;
    expect(Vertical, &ctx(pair(0.0, 0.0, 1.0, 3.0), vec![], true), false, true, "slope 3")?;
    expect(Vertical, &ctx(pair(0.0, 0.0, 1.0, 4.0), vec![], true), true, true, "slope 4")?;
    expect(Vertical, &ctx(pair(0.0, 0.0, 0.0, 9.0), vec![], true), true, true, "stacked")?;

    // Region: the center disc boundary at 120 is inclusive; with two or more
    // objects the bounding box allows a single-axis escape.
    expect(Interior, &ctx(s(120.0, 0.0), vec![], true), true, true, "on the disc edge")?;
    expect(Exterior, &ctx(s(121.0, 0.0), vec![], true), true, true, "past the disc edge")?;
    let corners = pair(-50.0, -50.0, 50.0, 50.0);
    expect(Interior, &ctx(s(80.0, 0.0), corners.clone(), false), true, true, "x escape")?;
    expect(Exterior, &ctx(s(80.0, 0.0), corners.clone(), false), true, true, "x escape")?;
    expect(Interior, &ctx(s(80.0, 80.0), corners.clone(), false), false, true, "corner escape")?;
    expect(Interior, &ctx(s(0.0, 0.0), corners, false), true, true, "inside the box")?;

    // Proximity against the backdrop's mean pairwise spread.
    expect(Near, &ctx(pair(0.0, 0.0, 5.0, 0.0), vec![], true), true, true, "tight pair")?;
    expect(Far, &ctx(pair(-190.0, 0.0, 190.0, 0.0), vec![], true), true, true, "spread pair")?;
    expect(Far, &ctx(s(150.0, 0.0), vec![], true), false, true, "far singleton")?;
    let mut clustered: Vec<Entity> = (0..6)
        .map(|i| entity(&format!("c{i}"), 150.0, -25.0 + 10.0 * i as f64, 70, 2))
        .collect();
    let loner = entity("s", -170.0, 0.0, 50, 2);
    clustered.push(loner.clone());
    let alone_ctx = RelationContext {
        subjects: vec![loner],
        objects: vec![],
        no_object: true,
        view_entities: clustered,
    };
    expect(Alone, &alone_ctx, true, true, "isolated subject")?;

    // Color range threshold 30, strict: range 29 same, range 30 different.
    let colors = |a: u8, b: u8| {
        vec![entity("p", 0.0, 0.0, a, 2), entity("q", 10.0, 0.0, b, 2)]
    };
    expect(SameColor, &ctx(colors(100, 129), vec![], true), true, true, "range 29")?;
    expect(DifferentColor, &ctx(colors(100, 130), vec![], true), true, true, "range 30")?;
    expect(SameColor, &ctx(colors(100, 130), vec![], true), false, true, "range 30")?;

    // Size range threshold 1.2 on the 0..=5 scale.
    let sizes = |a: u8, b: u8| {
        vec![entity("p", 0.0, 0.0, 50, a), entity("q", 10.0, 0.0, 50, b)]
    };
    expect(SameSize, &ctx(sizes(2, 3), vec![], true), true, true, "size range 1")?;
    expect(DifferentSize, &ctx(sizes(2, 4), vec![], true), true, true, "size range 2")?;

    // Pairwise comparatives on attribute means, superlatives strict.
    let dark = vec![entity("s", 0.0, 0.0, 40, 1)];
    let light = vec![entity("o", 10.0, 0.0, 120, 4)];
    expect(Darker, &ctx(dark.clone(), light.clone(), false), true, true, "40 vs 120")?;
    expect(Lighter, &ctx(dark.clone(), light.clone(), false), false, true, "40 vs 120")?;
    expect(Smaller, &ctx(dark.clone(), light.clone(), false), true, true, "1 vs 4")?;
    expect(Larger, &ctx(light.clone(), dark.clone(), false), true, true, "4 vs 1")?;

    let mut view: Vec<Entity> = (0..6)
        .map(|i| entity(&format!("v{i}"), 20.0 * i as f64, 0.0, 100 + 8 * i as u8, 2))
        .collect();
    let bright = entity("s", -100.0, 0.0, 149, 2);
    view.push(bright.clone());
    let lightest_ctx = RelationContext {
        subjects: vec![bright.clone()],
        objects: vec![],
        no_object: true,
        view_entities: view.clone(),
    };
    expect(CanonicalRelation::Lightest, &lightest_ctx, true, true, "strict max")?;
    let mut tied = view;
    tied[0].color = 149;
    let tied_ctx = RelationContext {
        subjects: vec![bright],
        objects: vec![],
        no_object: true,
        view_entities: tied,
    };
    expect(CanonicalRelation::Lightest, &tied_ctx, false, true, "tied max")?;

    Ok(Verdict::Pass)
}

/// 500 analytically satisfying and 500 analytically violating constructions
/// per relation: the satisfying ones must all pass, the violating ones must
/// all be valid yet unsatisfied. A generated corpus run through the binary
/// must show the same 100% rows.
fn oracle_consistency() -> Result<Verdict, String> {
    const PER_RELATION: usize = 500;
    for (index, relation) in CanonicalRelation::ALL.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xACCE97 + index as u64);
        let mut satisfied = 0usize;
        let mut violated_ok = 0usize;
        for _ in 0..PER_RELATION {
            let good = satisfying_context(relation, &mut rng);
            let result = evaluate(relation, &good);
            if result.satisfy && result.valid {
                satisfied += 1;
            }
            let bad = violating_context(relation, &mut rng);
            let result = evaluate(relation, &bad);
            if result.valid && !result.satisfy {
                violated_ok += 1;
            }
        }
        if satisfied != PER_RELATION {
            return fail(format!(
                "{relation}: {satisfied}/{PER_RELATION} satisfying constructions passed"
            ));
        }
        if violated_ok != PER_RELATION {
            return fail(format!(
                "{relation}: {violated_ok}/{PER_RELATION} violating constructions rejected"
            ));
        }
    }

    // The end-to-end surface agrees: a satisfying corpus tables at 100/100.
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let corpus = dir.path().join("corpus");
    run_binary(&["generate", "--seed", "5", "--out", &path_str(&corpus)])?;
    let table_dir = dir.path().join("table");
    run_binary(&[
        "test-relations",
        "--annotations",
        &path_str(&corpus.join("annotations.jsonl")),
        "--scenes",
        &path_str(&corpus.join("scenes.jsonl")),
        "--out",
        &path_str(&table_dir),
    ])?;
    let table = std::fs::read_to_string(table_dir.join("table.csv")).map_err(|e| e.to_string())?;
    for line in table.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields[2] != "100.00" || fields[3] != "100.00" {
            return fail(format!("generated corpus row not at 100/100: {line}"));
        }
    }
    Ok(Verdict::Pass)
}

/// The far group under test: subjects alone with the no-object flag, the
/// merged referents otherwise.
fn far_group(context: &RelationContext) -> Vec<Entity> {
    if context.no_object {
        context.subjects.clone()
    } else {
        context.referents()
    }
}

/// Proximity comparisons sit on strict inequalities against the view mean;
/// transforms may only be checked away from those knife edges.
fn proximity_is_tie_free(context: &RelationContext) -> bool {
    let Ok(view_mean) = pairwise_mean_distance(&context.view_entities) else {
        return false;
    };
    let clear = |value: f64| (value - view_mean).abs() > 1e-6 * (1.0 + view_mean);
    let referents = context.referents();
    if let Ok(mean) = pairwise_mean_distance(&referents) {
        if !clear(mean) {
            return false;
        }
    }
    if let Ok(mean) = pairwise_mean_distance(&far_group(context)) {
        if !clear(mean) {
            return false;
        }
    }
    let subject_ids: BTreeSet<&EntityId> = context.subjects.iter().map(|e| &e.id).collect();
    let nearest_outside = context
        .subjects
        .iter()
        .flat_map(|s| {
            context
                .view_entities
                .iter()
                .filter(|e| !subject_ids.contains(&e.id))
                .map(move |e| s.distance_to(e))
        })
        .fold(f64::INFINITY, f64::min);
    nearest_outside.is_finite() && clear(nearest_outside)
}

/// 100,000 random contexts: satisfy implies valid for all 24 relations,
/// mirrors swap the direction pairs exactly, rotation leaves proximity (off
/// knife edges) and the attribute comparisons untouched, and the slope bands
/// partition every multi-referent context.
fn fuzz_invariants() -> Result<Verdict, String> {
    use CanonicalRelation::*;
    const ROUNDS: usize = 100_000;
    let mut rng = ChaCha8Rng::seed_from_u64(12345);
    for round in 0..ROUNDS {
        let context = random_context(&mut rng);

        for relation in CanonicalRelation::ALL {
            let result = evaluate(relation, &context);
            if result.satisfy && !result.valid {
                return fail(format!("round {round}: {relation} satisfied but invalid"));
            }
        }

        let mirrored_x = mirror_x(&context);
        let mirrored_y = mirror_y(&context);
        for (a, b) in [(Left, Right), (Right, Left)] {
            if evaluate(a, &context) != evaluate(b, &mirrored_x) {
                return fail(format!("round {round}: x-mirror broke {a}/{b}"));
            }
        }
        for (a, b) in [(Above, Below), (Below, Above)] {
            if evaluate(a, &context) != evaluate(b, &mirrored_y) {
                return fail(format!("round {round}: y-mirror broke {a}/{b}"));
            }
        }

        let rotated = rotate(&context, rng.random_range(0.0..std::f64::consts::TAU));
        if proximity_is_tie_free(&context) {
            for relation in [Near, Far, Alone] {
                if evaluate(relation, &context) != evaluate(relation, &rotated) {
                    return fail(format!("round {round}: rotation moved {relation}"));
                }
            }
        }
        for relation in [
            Lighter, Lightest, Darker, Darkest, SameColor, DifferentColor, Smaller, Smallest,
            Larger, Largest, SameSize, DifferentSize,
        ] {
            if evaluate(relation, &context) != evaluate(relation, &rotated) {
                return fail(format!("round {round}: rotation moved {relation}"));
            }
        }

        if context.referents().len() > 1 {
            let bands = [Horizontal, Vertical, Diagonal]
                .into_iter()
                .filter(|r| evaluate(*r, &context).satisfy)
                .count();
            if bands != 1 {
                return fail(format!("round {round}: {bands} slope bands satisfied"));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// The closed-form check: a balanced 45/5/5/45 confusion table has observed
/// agreement 0.9 and chance 0.5, so kappa is exactly 0.8. Identical
/// sequences score 1, and swapping both raters' label names changes nothing.
fn kappa_correctness() -> Result<Verdict, String> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (count, left, right) in [(45, 1u8, 1u8), (5, 1, 0), (5, 0, 1), (45, 0, 0)] {
        for _ in 0..count {
            a.push(left);
            b.push(right);
        }
    }
    let report = cohen_kappa(&a, &b).map_err(|e| e.to_string())?;
    if (report.kappa - 0.8).abs() > 1e-12 {
        return fail(format!("balanced table kappa {} != 0.8", report.kappa));
    }
    if (report.percent - 90.0).abs() > 1e-12 {
        return fail(format!("balanced table percent {} != 90", report.percent));
    }

    let identical = cohen_kappa(&a, &a).map_err(|e| e.to_string())?;
    if identical.kappa != 1.0 {
        return fail(format!("identical sequences kappa {} != 1", identical.kappa));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(777);
    for round in 0..1_000 {
        let n = rng.random_range(2..120);
        let a: Vec<bool> = (0..n).map(|_| rng.random()).collect();
        let b: Vec<bool> = (0..n).map(|_| rng.random()).collect();
        let flipped_a: Vec<bool> = a.iter().map(|v| !v).collect();
        let flipped_b: Vec<bool> = b.iter().map(|v| !v).collect();
        let plain = cohen_kappa(&a, &b).map_err(|e| e.to_string())?;
        let relabeled = cohen_kappa(&flipped_a, &flipped_b).map_err(|e| e.to_string())?;
        if (plain.kappa - relabeled.kappa).abs() > 1e-12 {
            return fail(format!(
                "round {round}: relabeling moved kappa {} -> {}",
                plain.kappa, relabeled.kappa
            ));
        }
    }
    Ok(Verdict::Pass)
}

/// Top-k always returns exactly k entities and only depends on score order;
/// unperturbed gold scores decode back to gold under both rules, for a
/// perfect exact-match and entity-accuracy score.
fn decoder_properties() -> Result<Verdict, String> {
    let ids: Vec<EntityId> = (0..7).map(|i| EntityId::from(format!("e{i}"))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(4242);

    for round in 0..10_000 {
        // Quantized scores keep ties frequent.
        let scores: Vec<f64> = (0..7)
            .map(|_| (rng.random_range(0..=10) as f64) / 10.0)
            .collect();
        let squashed: Vec<f64> = scores.iter().map(|s| 0.1 + 0.8 * s * s * (3.0 - 2.0 * s)).collect();
        for k in 0..=7 {
            let direct = topk_predict(&scores, &ids, k).map_err(|e| e.to_string())?;
            if direct.len() != k {
                return fail(format!("round {round}: topk({k}) returned {}", direct.len()));
            }
            let transformed = topk_predict(&squashed, &ids, k).map_err(|e| e.to_string())?;
            if direct != transformed {
                return fail(format!("round {round}: monotone transform moved topk({k})"));
            }
        }
    }

    let mut decoded_threshold = ReferentSets::new();
    let mut decoded_topk = ReferentSets::new();
    let mut gold_sets = ReferentSets::new();
    for round in 0..1_000u64 {
        let gold: BTreeSet<EntityId> = ids
            .iter()
            .filter(|_| rng.random_bool(0.4))
            .cloned()
            .collect();
        let scores = perturb_gold(&gold, &ids, 0.0, round);
        let markable = spotcheck_core::ids::MarkableId::from(format!("m{round}"));
        decoded_threshold.insert(
            markable.clone(),
            threshold_predict(&scores, &ids).map_err(|e| e.to_string())?,
        );
        decoded_topk.insert(
            markable.clone(),
            topk_predict(&scores, &ids, gold.len()).map_err(|e| e.to_string())?,
        );
        gold_sets.insert(markable, gold);
    }
    for (label, decoded) in [("threshold", &decoded_threshold), ("topk", &decoded_topk)] {
        let exact = exact_match(decoded, &gold_sets).map_err(|e| e.to_string())?;
        let accuracy = entity_accuracy(decoded, &gold_sets).map_err(|e| e.to_string())?;
        if exact != 1.0 || accuracy != 1.0 {
            return fail(format!(
                "{label} on unperturbed gold: exact {exact}, accuracy {accuracy}"
            ));
        }
    }
    Ok(Verdict::Pass)
}

/// Ten rotation rounds over 1,000 ids: every round partitions the corpus,
/// every bin serves as the test part exactly once, and the validation bin
/// follows the (round + 8) mod 10 schedule.
fn split_property() -> Result<Verdict, String> {
    let ids: Vec<String> = (0..1_000).map(|i| format!("dialogue-{i:04}")).collect();
    let mut tested: Vec<String> = Vec::new();
    for round in 0..SPLIT_BINS as usize {
        let sets = rotation_split(&ids, round).map_err(|e| e.to_string())?;
        if sets.train.len() + sets.valid.len() + sets.test.len() != ids.len() {
            return fail(format!("round {round}: parts do not sum to the corpus"));
        }
        let union: BTreeSet<&String> = sets
            .train
            .iter()
            .chain(&sets.valid)
            .chain(&sets.test)
            .collect();
        if union.len() != ids.len() {
            return fail(format!("round {round}: parts overlap"));
        }
        let valid_bin = (round as u64 + 8) % SPLIT_BINS;
        let test_bin = (round as u64 + 9) % SPLIT_BINS;
        if !sets.valid.iter().all(|id| stable_bin(id, SPLIT_BINS) == valid_bin) {
            return fail(format!("round {round}: validation part is not bin {valid_bin}"));
        }
        if !sets.test.iter().all(|id| stable_bin(id, SPLIT_BINS) == test_bin) {
            return fail(format!("round {round}: test part is not bin {test_bin}"));
        }
        tested.extend(sets.test);
    }
    let unique: BTreeSet<&String> = tested.iter().collect();
    if tested.len() != ids.len() || unique.len() != ids.len() {
        return fail(format!(
            "ids tested {} times total, {} distinct; expected 1,000 each",
            tested.len(),
            unique.len()
        ));
    }
    Ok(Verdict::Pass)
}

/// The checked-in fixture corpus must keep producing the identical 24-row
/// table: byte-stable across runs, one row per relation, five categories
/// covering them, and satisfy never above valid.
fn table_shape_regression() -> Result<Verdict, String> {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let annotations = path_str(&fixtures.join("annotations.jsonl"));
    let scenes = path_str(&fixtures.join("scenes.jsonl"));
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;

    let mut tables = Vec::new();
    for run in 0..2 {
        let out = dir.path().join(format!("run{run}"));
        run_binary(&[
            "test-relations",
            "--annotations",
            &annotations,
            "--scenes",
            &scenes,
            "--out",
            &path_str(&out),
        ])?;
        tables.push(std::fs::read_to_string(out.join("table.csv")).map_err(|e| e.to_string())?);
    }
    if tables[0] != tables[1] {
        return fail("table.csv differs between identical runs");
    }

    let mut seen = BTreeSet::new();
    let mut categories = BTreeSet::new();
    for line in tables[0].lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return fail(format!("malformed row: {line}"));
        }
        let relation: CanonicalRelation = fields[0]
            .parse()
            .map_err(|_| format!("unknown relation row: {line}"))?;
        seen.insert(relation);
        categories.insert(relation.category());
        let satisfy: f64 = fields[2].parse().map_err(|e| format!("{line}: {e}"))?;
        let valid: f64 = fields[3].parse().map_err(|e| format!("{line}: {e}"))?;
        if satisfy > valid {
            return fail(format!("satisfy above valid: {line}"));
        }
    }
    if seen.len() != CanonicalRelation::ALL.len() {
        return fail(format!("{} relation rows, expected 24", seen.len()));
    }
    if categories.len() != RelationCategory::ALL.len() {
        return fail(format!("{} categories covered, expected 5", categories.len()));
    }
    Ok(Verdict::Pass)
}

/// Optional check against a converted human-annotated corpus: the left row
/// must land within 2 points of the published 95.9/97.6 rates. Skipped
/// cleanly when no corpus directory is configured.
fn corpus_hook() -> Result<Verdict, String> {
    let Ok(dir) = std::env::var("SPOTCHECK_CORPUS_DIR") else {
        return Ok(Verdict::Skip("SPOTCHECK_CORPUS_DIR not set".to_owned()));
    };
    let corpus = Path::new(&dir);
    let out = tempfile::tempdir().map_err(|e| e.to_string())?;
    run_binary(&[
        "test-relations",
        "--annotations",
        &path_str(&corpus.join("annotations.jsonl")),
        "--scenes",
        &path_str(&corpus.join("scenes.jsonl")),
        "--out",
        &path_str(out.path()),
    ])?;
    let table =
        std::fs::read_to_string(out.path().join("table.csv")).map_err(|e| e.to_string())?;
    let left = table
        .lines()
        .find(|line| line.starts_with("left,"))
        .ok_or("no left row in corpus table")?;
    let fields: Vec<&str> = left.split(',').collect();
    let satisfy: f64 = fields[2].parse().map_err(|e| format!("{left}: {e}"))?;
    let valid: f64 = fields[3].parse().map_err(|e| format!("{left}: {e}"))?;
    if (satisfy - 95.9).abs() > 2.0 || (valid - 97.6).abs() > 2.0 {
        return fail(format!(
            "left row {satisfy:.2}/{valid:.2} outside 95.9/97.6 +-2.0"
        ));
    }
    Ok(Verdict::Pass)
}

fn path_str(path: &Path) -> String {
    path.to_str().expect("utf-8 path").to_owned()
}

fn run_binary(args: &[&str]) -> Result<(), String> {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_spotcheck"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(())
    } else {
        Err(format!(
            "{args:?} exited {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ))
    }
}
