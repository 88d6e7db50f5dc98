//! Autocomplete and faceted search against brute-force oracles.

mod support;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semlift_core::rdf::{parse_turtle, read_turtle_file, Iri};
use semlift_core::search::{build_index, FacetState, FilterSelection, Hop, Origin, Relation, SearchError};
use semlift_core::Execution;
use support::*;

fn strs(r: &BTreeSet<Iri>) -> BTreeSet<String> {
    r.iter().map(|e| e.as_str().to_string()).collect()
}

#[test]
fn evaluate_matches_oracle_on_random_combinations() {
    let fx = facet_fixture();
    let oracle = SearchOracle::new(&fx);
    assert_eq!(oracle.typed().len(), 20);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for exec in [Execution::Sequential, Execution::Parallel] {
        let engine = fx.engine(exec);
        assert_eq!(strs(engine.universe()), oracle.typed());
        for _ in 0..25 {
            let sel = fx.random_selections(&mut rng, 4);
            assert_eq!(strs(&engine.evaluate(&sel).unwrap()), oracle.evaluate(&sel), "{sel:?}");
        }
    }
}

#[test]
fn descendant_classes_match_their_ancestors() {
    let fx = facet_fixture();
    let engine = fx.engine(Execution::Sequential);
    let organic = FilterSelection::new("class", [format!("{CLASS_NS}Organic")]);
    let got = engine.evaluate(&[organic]).unwrap();
    // 4 alcohols, 3 acids, 1 ester, benzene and urea.
    assert_eq!(got.len(), 10);
    let all = engine.evaluate(&[FilterSelection::new("class", [format!("{CLASS_NS}Chemical")])]).unwrap();
    assert_eq!(all.len(), 20);
    assert_eq!(
        engine.evaluate(&[FilterSelection::new("colour", ["red"])]),
        Err(SearchError::UnknownFacet("colour".into()))
    );
}

#[test]
fn liquid_state_suggestions_match_hand_list() {
    let fx = facet_fixture();
    let engine = fx.engine(Execution::Parallel);
    let state = engine
        .select(&engine.initial_state(), FilterSelection::new("phase", ["liquid"]))
        .unwrap();
    assert_eq!(state.results().len(), 9);
    let c = |x: &str| format!("{CLASS_NS}{x}");
    let k = |x: &str| format!("{CAT_NS}{x}");
    let direct = Origin::Direct;
    let expected = vec![
        ("class", c("Organic"), 8, direct.clone()),
        ("category", k("Organic_compounds"), 6, direct.clone()),
        ("hazard", "flammable".into(), 5, direct.clone()),
        ("category", k("Alcohols"), 4, direct.clone()),
        ("class", c("Alcohol"), 4, direct.clone()),
        ("category", k("Solvents"), 3, direct.clone()),
        ("hazard", "toxic".into(), 3, direct.clone()),
        ("category", k("Carboxylic_acids"), 2, direct.clone()),
        ("class", c("Acid"), 2, direct.clone()),
        ("hazard", "corrosive".into(), 2, direct.clone()),
        ("class", c("Ester"), 1, direct.clone()),
        (
            "class",
            c("Inorganic"),
            1,
            Origin::HierarchyExpanded(Hop {
                relation: Relation::Parent,
                of: c("Oxide"),
            }),
        ),
        ("class", c("Oxide"), 1, direct),
    ];
    let suggestions = engine.suggest(&state);
    let got: Vec<(&str, String, usize, Origin)> = suggestions
        .iter()
        .map(|s| (s.facet.as_str(), s.value.clone(), s.count, s.origin.clone()))
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn class_counts_follow_the_hierarchy() {
    let fx = facet_fixture();
    let engine = fx.engine(Execution::Sequential);
    // methanol, acetic acid, formic acid
    let state = engine
        .state_for(vec![
            FilterSelection::new("class", [format!("{CLASS_NS}Alcohol"), format!("{CLASS_NS}Acid")]),
            FilterSelection::new("hazard", ["toxic", "corrosive"]),
        ])
        .unwrap();
    assert_eq!(state.results().len(), 3);
    let class: Vec<(String, usize)> = engine
        .suggest(&state)
        .into_iter()
        .filter(|s| s.facet == "class")
        .map(|s| (s.value, s.count))
        .collect();
    // Both classes are selected, so only the shared parent is offered.
    assert_eq!(class, [(format!("{CLASS_NS}Organic"), 3)]);

    let state = engine
        .state_for(vec![FilterSelection::new("hazard", ["toxic", "corrosive"]), FilterSelection::new("phase", ["liquid"])])
        .unwrap();
    let class: Vec<(String, usize)> = engine
        .suggest(&state)
        .into_iter()
        .filter(|s| s.facet == "class" && s.origin == Origin::Direct)
        .map(|s| (s.value, s.count))
        .collect();
    assert_eq!(
        class,
        [
            (format!("{CLASS_NS}Organic"), 4),
            (format!("{CLASS_NS}Acid"), 2),
            (format!("{CLASS_NS}Alcohol"), 1),
        ]
    );
}

fn check_suggestions(fx: &FacetFixture, state: &FacetState) {
    let engine = fx.engine(Execution::Sequential);
    let oracle = SearchOracle::new(fx);
    let results = strs(state.results());
    let suggestions = engine.suggest(state);
    for w in suggestions.windows(2) {
        let key = |s: &semlift_core::search::FacetSuggestion| (std::cmp::Reverse(s.count), s.facet.clone(), s.value.clone());
        assert!(key(&w[0]) < key(&w[1]));
    }
    for f in &fx.facets {
        let selected: BTreeSet<String> = state
            .selections()
            .iter()
            .filter(|s| s.facet == f.id)
            .flat_map(|s| s.values.iter().cloned())
            .collect();
        let attested: BTreeSet<String> = results.iter().flat_map(|e| oracle.attested(e, &f.id)).collect();
        let count = |v: &str| results.iter().filter(|e| oracle.member(e, &f.id, v)).count();
        let mut expected: BTreeSet<(String, usize, bool)> = attested
            .iter()
            .filter(|v| !selected.contains(*v))
            .map(|v| (v.clone(), count(v), true))
            .collect();
        if f.id == "class" {
            for v in oracle.hierarchy_neighbours(&attested, f.anchor.as_str()) {
                if !selected.contains(&v) && count(&v) > 0 {
                    expected.insert((v.clone(), count(&v), false));
                }
            }
        }
        let got: BTreeSet<(String, usize, bool)> = suggestions
            .iter()
            .filter(|s| s.facet == f.id)
            .map(|s| (s.value.clone(), s.count, s.origin == Origin::Direct))
            .collect();
        assert_eq!(got, expected, "facet {}", f.id);
    }
    // Applying a suggestion yields exactly its count.
    for s in &suggestions {
        assert!(s.count >= 1);
        let next = engine.select(state, FilterSelection::new(s.facet.clone(), [s.value.clone()])).unwrap();
        assert_eq!(next.results().len(), s.count, "{s:?}");
    }
}

#[test]
fn suggestions_sound_and_complete_on_random_states() {
    let fx = facet_fixture();
    let engine = fx.engine(Execution::Sequential);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    check_suggestions(&fx, &engine.initial_state());
    for _ in 0..60 {
        let sel = fx.random_selections(&mut rng, 3);
        check_suggestions(&fx, &engine.state_for(sel).unwrap());
    }
}

#[test]
fn state_transitions_track_evaluate() {
    let fx = facet_fixture();
    let engine = fx.engine(Execution::Parallel);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut state = engine.initial_state();
    for step in 1..=30u64 {
        state = if !state.selections().is_empty() && rng.gen_bool(0.3) {
            let i = rng.gen_range(0..state.selections().len());
            engine.deselect(&state, i)
        } else {
            engine.select(&state, fx.random_selection(&mut rng)).unwrap()
        };
        assert_eq!(state.step(), step);
        assert_eq!(state.results(), &engine.evaluate(state.selections()).unwrap());
    }
}

#[test]
fn hundred_label_fixture_counts_and_prefixes() {
    let g = read_turtle_file(fixtures_dir().join("search/labels.ttl")).unwrap();
    let preds = [iri(LABEL), iri(ALT_LABEL)];
    let idx = build_index(&g, &preds);
    let by_match: usize = preds.iter().map(|p| g.matching(None, Some(p), None).len()).sum();
    assert_eq!(by_match, 100);
    assert_eq!(idx.len(), by_match);

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let surfaces: Vec<&str> = idx.entries().iter().map(|e| e.surface.as_str()).collect();
    for _ in 0..30 {
        let surface: Vec<char> = surfaces.choose(&mut rng).unwrap().chars().collect();
        let n = rng.gen_range(1..=surface.len().min(6));
        let query: String = surface[..n].iter().collect();
        let limit = rng.gen_range(1..=12);
        let got: Vec<(String, Option<String>, String)> = idx
            .complete(&query, limit)
            .unwrap()
            .into_iter()
            .map(|c| (c.surface, c.language, c.concept.as_str().to_string()))
            .collect();
        assert_eq!(got, scan_complete(&g, &[LABEL, ALT_LABEL], &query, limit), "{query:?}");
    }
}

#[test]
fn was_and_wa_over_water_labels() {
    let g = parse_turtle(
        "<http://ex.org/W> <http://www.w3.org/2000/01/rdf-schema#label> \"water\"@en, \"Wasser\"@de .",
    )
    .unwrap();
    let idx = build_index(&g, &[iri(LABEL)]);
    let surfaces = |q: &str| -> Vec<String> { idx.complete(q, 10).unwrap().into_iter().map(|c| c.surface).collect() };
    assert_eq!(surfaces("wat"), ["water"]);
    assert_eq!(surfaces("was"), ["Wasser"]);
    assert_eq!(surfaces("wa"), ["water", "Wasser"]);
    assert!(idx.complete("wa", 10).unwrap().iter().all(|c| c.concept.as_str() == "http://ex.org/W"));
}

fn selection_strategy() -> impl Strategy<Value = FilterSelection> {
    let fx = facet_fixture();
    let facets: Vec<(String, Vec<String>)> = fx.pools.into_iter().collect();
    prop::sample::select(facets).prop_flat_map(|(facet, pool)| {
        prop::sample::subsequence(pool, 1..=3).prop_map(move |values| FilterSelection::new(facet.clone(), values))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn adding_a_selection_never_grows_results(
        base in prop::collection::vec(selection_strategy(), 0..4),
        extra in selection_strategy(),
    ) {
        let engine = facet_fixture().engine(Execution::Sequential);
        let before = engine.evaluate(&base).unwrap();
        let mut more = base.clone();
        more.push(extra);
        let after = engine.evaluate(&more).unwrap();
        prop_assert!(after.is_subset(&before));
    }

    #[test]
    fn selection_order_does_not_matter(
        sel in prop::collection::vec(selection_strategy(), 0..5),
        seed in any::<u64>(),
    ) {
        let engine = facet_fixture().engine(Execution::Sequential);
        let mut shuffled = sel.clone();
        shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(engine.evaluate(&sel).unwrap(), engine.evaluate(&shuffled).unwrap());
    }
}
