//! Acceptance suite: one test per release criterion, each printing a
//! pass line (run with `cargo test --test acceptance -- --nocapture`).

use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use fuzzy_cohort::centroid::{
    centroid_assuming_normalized, centroid_closed_form, centroid_quadrature, reference_points,
    stagewise_group_comparison, TieBreakPolicy, Verdict,
};
use fuzzy_cohort::fuzzy::{build_stage_set, normalize_weights, CohortStageCounts};
use fuzzy_cohort::io::{
    build_profile_table, format_decimal, parse_cohort, parse_rational, InputFormat, RoundingMode,
};
use fuzzy_cohort::profile::{
    compare_profiles, enumerate_profiles, is_well_ordered, CombinedRelation, Profile,
    ProfileOrder, ProfileRelation,
};
use fuzzy_cohort::{ratio, Rational};

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{}", env!("CARGO_MANIFEST_DIR"), name)
}

fn load_relation(name: &str) -> (String, ProfileRelation) {
    let bytes = std::fs::read(fixture(name)).unwrap();
    let ds = parse_cohort(&bytes, InputFormat::Json, "g").unwrap();
    (ds.group_name.clone(), ProfileRelation::build(ds.stage_sets().unwrap()).unwrap())
}

fn pass(n: u32, what: &str) {
    println!("criterion {n}: PASS - {what}");
}

#[test]
fn criterion_01_membership_grading() {
    let counts = CohortStageCounts::new(35, [0, 0, 15, 12, 8]).unwrap();
    let set = build_stage_set(&counts).unwrap();
    assert_eq!(
        set.memberships(),
        &[ratio(0, 1), ratio(0, 1), ratio(1, 2), ratio(1, 4), ratio(1, 4)]
    );
    pass(1, "counts (0,0,15,12,8)/35 grade to (0, 0, 0.5, 0.25, 0.25) exactly");
}

/// Expected table cells as printed, three-decimal arithmetic. The (c,c,b)
/// row carries the corrected values (the printed row is a known erratum:
/// exact evaluation gives membership 0.062 in both groups).
const TABLE1: [(&str, [&str; 6]); 24] = [
    ("bbb", ["0", "0", "0.016", "0.258", "0.016", "0.129"]),
    ("bba", ["0", "0", "0.016", "0.258", "0.016", "0.129"]),
    ("baa", ["0", "0", "0.016", "0.258", "0.016", "0.129"]),
    ("ccc", ["0.062", "1", "0.062", "1", "0.124", "1"]),
    ("cca", ["0.062", "1", "0.062", "1", "0.124", "1"]),
    ("ccb", ["0.062", "1", "0.062", "1", "0.124", "1"]), // corrected
    ("caa", ["0", "0", "0.031", "0.5", "0.031", "0.25"]),
    ("cba", ["0", "0", "0.031", "0.5", "0.031", "0.25"]),
    ("cbb", ["0", "0", "0.031", "0.5", "0.031", "0.25"]),
    ("dda", ["0.016", "0.258", "0", "0", "0.016", "0.129"]),
    ("ddb", ["0.016", "0.258", "0", "0", "0.016", "0.129"]),
    ("ddc", ["0.016", "0.258", "0", "0", "0.016", "0.129"]),
    ("daa", ["0", "0", "0.016", "0.258", "0.016", "0.129"]),
    ("dba", ["0", "0", "0.016", "0.258", "0.016", "0.129"]),
    ("dbb", ["0", "0", "0.016", "0.258", "0.016", "0.129"]),
    ("dca", ["0.031", "0.5", "0.031", "0.5", "0.062", "0.5"]),
    ("dcb", ["0.031", "0.5", "0.031", "0.5", "0.062", "0.5"]),
    ("dcc", ["0.031", "0.5", "0.031", "0.5", "0.062", "0.5"]),
    ("eca", ["0.031", "0.5", "0", "0", "0.031", "0.25"]),
    ("ecb", ["0.031", "0.5", "0", "0", "0.031", "0.25"]),
    ("ecc", ["0.031", "0.5", "0", "0", "0.031", "0.25"]),
    ("eda", ["0.016", "0.258", "0", "0", "0.016", "0.129"]),
    ("edb", ["0.016", "0.258", "0", "0", "0.016", "0.129"]),
    ("edc", ["0.016", "0.258", "0", "0", "0.016", "0.129"]),
];

#[test]
fn criterion_02_table1_golden() {
    let named = [load_relation("group1.json"), load_relation("group2.json")];
    let table = build_profile_table(&named, RoundingMode::Paper3, true, false).unwrap();
    assert_eq!(table.rows.len(), 24);
    for (key, cells) in TABLE1 {
        let row = table.row(key).unwrap_or_else(|| panic!("missing row {key}"));
        let actual = [
            row.membership[0],
            row.possibility[0],
            row.membership[1],
            row.possibility[1],
            row.pseudo_frequency.unwrap(),
            row.combined_possibility.unwrap(),
        ];
        for (got, want) in actual.iter().zip(cells) {
            assert_eq!(
                format_decimal(*got, 3),
                format_decimal(parse_rational(want).unwrap(), 3),
                "row {key}"
            );
        }
    }
    pass(2, "all 24 table rows match at 3 decimals ((c,c,b) asserted with corrected values)");
}

#[test]
fn criterion_03_rounding_reconciliation() {
    let named = [load_relation("group1.json"), load_relation("group2.json")];
    let dda = Profile::parse("dda").unwrap();
    let bbb = Profile::parse("bbb").unwrap();

    let exact = build_profile_table(&named, RoundingMode::Exact, true, false).unwrap();
    let row = exact.row("dda").unwrap();
    assert_eq!(row.possibility[0], ratio(1, 4));
    let row = exact.row("bbb").unwrap();
    assert_eq!(row.combined_possibility.unwrap(), ratio(1, 8));
    // the relation-level API agrees
    let rels: Vec<ProfileRelation> = named.iter().map(|(_, r)| r.clone()).collect();
    assert_eq!(rels[0].entry(&dda).unwrap().possibility, ratio(1, 4));
    let comb = CombinedRelation::build(&rels).unwrap();
    assert_eq!(comb.entry(&bbb).unwrap().possibility, ratio(1, 8));

    let paper3 = build_profile_table(&named, RoundingMode::Paper3, true, false).unwrap();
    assert_eq!(format_decimal(paper3.row("dda").unwrap().possibility[0], 3), "0.258");
    assert_eq!(
        format_decimal(paper3.row("bbb").unwrap().combined_possibility.unwrap(), 3),
        "0.129"
    );
    pass(3, "exact mode gives 0.25 / 0.125 where three-decimal mode gives 0.258 / 0.129");
}

#[test]
fn criterion_04_centroid_regression() {
    let g1 = {
        let bytes = std::fs::read(fixture("group1.json")).unwrap();
        parse_cohort(&bytes, InputFormat::Json, "g").unwrap().stage_sets().unwrap()
    };
    let g2 = {
        let bytes = std::fs::read(fixture("group2.json")).unwrap();
        parse_cohort(&bytes, InputFormat::Json, "g").unwrap().stage_sets().unwrap()
    };
    let report = stagewise_group_comparison(&g1, &g2, TieBreakPolicy::default()).unwrap();

    // stage 1: 3.25 vs the symmetric distribution's 5/2 (the historically
    // printed 2.25 contradicts the formula itself; see the exactness notes
    // in the README)
    assert_eq!(report[0].first.x, ratio(13, 4));
    assert_eq!(report[0].second.x, ratio(5, 2));
    assert_eq!(report[0].verdict, Verdict::FirstBetter);

    // stage 2: exact 17/6 vs 7/4
    assert_eq!(report[1].first.x, ratio(17, 6));
    assert_eq!(report[1].second.x, ratio(7, 4));
    assert_eq!(report[1].verdict, Verdict::FirstBetter);

    // two-decimal reproduction: normalizing to 0.67/0.33 first makes the
    // printed 2.83 exact
    let two_dec = centroid_closed_form(&[
        ratio(0, 1),
        ratio(0, 1),
        ratio(67, 100),
        ratio(33, 100),
        ratio(0, 1),
    ])
    .unwrap();
    assert_eq!(two_dec.x, ratio(283, 100));
    assert_eq!(format_decimal(two_dec.x, 2), "2.83");
    assert_eq!(format_decimal(ratio(17, 6), 4), "2.8333");

    // the printed 1.125 reproduces only through the reduced formulas on the
    // unnormalized weights (1/4, 1/4, 1/4)
    let printed = centroid_assuming_normalized(&[
        ratio(1, 4),
        ratio(1, 4),
        ratio(1, 4),
        ratio(0, 1),
        ratio(0, 1),
    ]);
    assert_eq!(printed.x, ratio(9, 8));
    assert_eq!(format_decimal(printed.x, 3), "1.125");

    // stage 3: identical sets tie
    assert_eq!(report[2].verdict, Verdict::Tie);
    pass(4, "stage centroids 3.25 / 5:2 / 17:6 / 7:4 with printed 2.83 and 1.125 reproduced");
}

#[test]
fn criterion_05_reference_points() {
    let refs = reference_points();
    let uniform = centroid_closed_form(&[ratio(1, 5); 5]).unwrap();
    assert_eq!((uniform.x, uniform.y), (ratio(5, 2), ratio(1, 10)));
    assert_eq!(uniform, refs.center);
    let ideal =
        centroid_closed_form(&[ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(1, 1)])
            .unwrap();
    assert_eq!((ideal.x, ideal.y), (ratio(9, 2), ratio(1, 2)));
    assert_eq!(ideal, refs.ideal);
    let worst =
        centroid_closed_form(&[ratio(1, 1), ratio(0, 1), ratio(0, 1), ratio(0, 1), ratio(0, 1)])
            .unwrap();
    assert_eq!((worst.x, worst.y), (ratio(1, 2), ratio(1, 2)));
    assert_eq!(worst, refs.worst);
    pass(5, "uniform -> (2.5, 0.1), top-only -> (4.5, 0.5), bottom-only -> (0.5, 0.5)");
}

fn random_weights(rng: &mut StdRng) -> [Rational; 5] {
    loop {
        let w: [Rational; 5] = std::array::from_fn(|_| ratio(rng.gen_range(0..=1000), 1000));
        if w.iter().any(|v| *v != ratio(0, 1)) {
            return w;
        }
    }
}

#[test]
fn criterion_06_property_suite() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let w = random_weights(&mut rng);
        let c = centroid_closed_form(&w).unwrap();
        assert!(c.x >= ratio(1, 2) && c.x <= ratio(9, 2));
        assert!(c.y >= ratio(1, 10) && c.y <= ratio(1, 2));
        let norm = normalize_weights(&w).unwrap();
        assert_eq!(c.y == ratio(1, 10), norm.is_uniform());

        // scale invariance
        let lambda = ratio(rng.gen_range(1..100), rng.gen_range(1..100));
        let scaled = w.map(|v| v * lambda);
        assert_eq!(centroid_closed_form(&scaled).unwrap(), c);

        // mass shift by eps from i to j > i raises x_c by exactly eps*(j-i)
        let y = norm.weights();
        let from = rng.gen_range(0..4);
        let to = rng.gen_range(from + 1..5);
        if y[from] != ratio(0, 1) {
            let eps = y[from] * ratio(rng.gen_range(1..=100), 100);
            let mut shifted = *y;
            shifted[from] -= eps;
            shifted[to] += eps;
            let moved = centroid_closed_form(&shifted).unwrap();
            let base = centroid_closed_form(y).unwrap();
            assert_eq!(moved.x, base.x + eps * Rational::from_integer((to - from) as i64));
            assert!(moved.x > base.x);
        }
    }
    pass(6, "1000 random distributions: bounds, uniform-only minimum, scaling, mass-shift");
}

#[test]
fn criterion_07_quadrature_oracle() {
    let mut rng = StdRng::seed_from_u64(0xacc7);
    for _ in 0..100 {
        let w = random_weights(&mut rng);
        let closed = centroid_closed_form(&w).unwrap();
        let wf: [f64; 5] = std::array::from_fn(|i| *w[i].numer() as f64 / *w[i].denom() as f64);
        let (qx, qy) = centroid_quadrature(&wf, 64).unwrap();
        let cx = *closed.x.numer() as f64 / *closed.x.denom() as f64;
        let cy = *closed.y.numer() as f64 / *closed.y.denom() as f64;
        assert!((qx - cx).abs() < 1e-6, "x: {qx} vs {cx}");
        assert!((qy - cy).abs() < 1e-6, "y: {qy} vs {cy}");
    }
    pass(7, "closed form matches numeric double integration within 1e-6 on 100 inputs");
}

#[test]
fn criterion_08_combinatorics() {
    let all = enumerate_profiles(3);
    assert_eq!(all.len(), 125);
    assert_eq!(all.iter().filter(|p| is_well_ordered(p)).count(), 35);
    for name in ["group1.json", "group2.json"] {
        let (_, rel) = load_relation(name);
        for (p, e) in rel.iter() {
            if e.membership != ratio(0, 1) {
                assert!(is_well_ordered(p));
            }
        }
        assert_eq!(rel.iter().map(|(_, e)| e.probability).sum::<Rational>(), ratio(1, 1));
        assert_eq!(rel.iter().map(|(_, e)| e.possibility).max().unwrap(), ratio(1, 1));
    }
    pass(8, "35 of 125 profiles well ordered; support well ordered; sum p = 1, max r = 1");
}

#[test]
fn criterion_09_partial_order() {
    let p = |k: &str| Profile::parse(k).unwrap();
    assert_eq!(compare_profiles(&p("dbb"), &p("bbb")).unwrap(), ProfileOrder::Greater);
    assert_eq!(compare_profiles(&p("dca"), &p("dbb")).unwrap(), ProfileOrder::Incomparable);

    let mut rng = StdRng::seed_from_u64(0x9a7f);
    let all = enumerate_profiles(3);
    for _ in 0..1000 {
        let a = &all[rng.gen_range(0..all.len())];
        let b = &all[rng.gen_range(0..all.len())];
        let c = &all[rng.gen_range(0..all.len())];
        assert_eq!(compare_profiles(a, a).unwrap(), ProfileOrder::Equal);
        let ab = compare_profiles(a, b).unwrap();
        let ba = compare_profiles(b, a).unwrap();
        match ab {
            ProfileOrder::Greater => assert_eq!(ba, ProfileOrder::Less),
            ProfileOrder::Less => assert_eq!(ba, ProfileOrder::Greater),
            other => assert_eq!(ba, other),
        }
        if ab == ProfileOrder::Greater && compare_profiles(b, c).unwrap() == ProfileOrder::Greater {
            assert_eq!(compare_profiles(a, c).unwrap(), ProfileOrder::Greater);
        }
    }
    pass(9, "named comparisons plus randomized reflexivity/antisymmetry/transitivity");
}

#[test]
fn criterion_10_cli_end_to_end() {
    let bin = env!("CARGO_BIN_EXE_fuzzy-cohort");
    let run = || {
        Command::new(bin)
            .args(["compare", &fixture("group1.json"), &fixture("group2.json")])
            .output()
            .expect("failed to launch binary")
    };
    let first = run();
    assert!(first.status.success(), "stderr: {}", String::from_utf8_lossy(&first.stderr));
    let text = String::from_utf8(first.stdout.clone()).unwrap();
    let verdict_of = |stage: &str| {
        text.lines()
            .find(|l| l.starts_with("| group1 | group2 |") && l.contains(stage))
            .unwrap_or_else(|| panic!("no comparison row for {stage}"))
            .split('|')
            .nth(6)
            .unwrap()
            .trim()
            .to_string()
    };
    assert_eq!(verdict_of("imagination"), "first_better");
    assert_eq!(verdict_of("visualization"), "first_better");
    assert_eq!(verdict_of("idea_generation"), "tie");

    let second = run();
    assert_eq!(first.stdout, second.stdout, "output differs across runs");
    assert_eq!(first.status.code(), second.status.code());
    pass(10, "compare exits 0, first_better at stages 1-2, tie at stage 3, byte-identical reruns");
}
