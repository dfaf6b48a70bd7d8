//! Acceptance suite: one test per criterion, each printing a pass line with
//! its elapsed time against the stated bound.

use std::process::Command;
use std::time::Instant;

use topocheck::doc::{parse_space, render_space};
use topocheck::enumerate::{
    enumerate_spaces, enumerate_spaces_naive, oracle_count, search_quest, topology_count, Quest,
};
use topocheck::report::all_pass;
use topocheck::setclasses::{self, Tables};
use topocheck::space::{FiniteSpace, ValidationMode};
use topocheck::tailspace;
use topocheck::verify;
use topocheck::{Error, PointSet};

fn finish(name: &str, started: Instant, bound_s: f64) {
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < bound_s,
        "{name} exceeded its {bound_s}s bound: {elapsed:.2}s"
    );
    println!("ACCEPTANCE {name} PASS ({elapsed:.2}s < {bound_s}s)");
}

fn abc_space() -> FiniteSpace {
    FiniteSpace::validate_topology(
        3,
        &[PointSet::from_indices(3, &[0, 1])],
        ValidationMode::Strict,
    )
    .unwrap()
}

/// Criterion 1: bit-exact reproduction of the square fixtures, under 1 s.
#[test]
fn criterion_1_square_fixtures() {
    let started = Instant::now();
    let e = abc_space();
    let a = PointSet::from_indices(3, &[1, 2]);

    let te = Tables::new(&e).unwrap();
    assert!(te.is_sg_closed(&a).unwrap(), "A must be sg-closed");

    let (square, projections) = FiniteSpace::product(&[&e, &e]).unwrap();
    let tsq = Tables::new(&square).unwrap();
    let mut boxed = PointSet::empty(9);
    for x in a.iter() {
        for y in a.iter() {
            boxed = boxed.with(x * 3 + y);
        }
    }
    assert!(!tsq.is_sg_closed(&boxed).unwrap(), "A×A must not be sg-closed");
    assert!(
        tsq.semi_closure(&boxed).unwrap().is_full(),
        "scl(A×A) must be the full 9-point set"
    );

    let preimage = projections[0].preimage(&a).unwrap();
    assert!(
        !tsq.is_sg_closed(&preimage).unwrap(),
        "p⁻¹(A) must not be sg-closed"
    );

    let sigma = FiniteSpace::indiscrete(3);
    let s = PointSet::from_indices(3, &[0, 1]);
    assert!(setclasses::is_hsg_closed(&sigma, &s).unwrap());
    let (prod, prj) = FiniteSpace::product(&[&sigma, &e]).unwrap();
    let qpre = prj[0].preimage(&s).unwrap();
    assert!(!setclasses::is_hsg_closed(&prod, &qpre).unwrap());

    finish("1-square-fixtures", started, 1.0);
}

/// Criterion 2: lemma equivalence suites over all 389 labeled topologies on
/// at most 4 points and all subsets, under 60 s.
#[test]
fn criterion_2_lemma_suites() {
    let started = Instant::now();
    let total: usize = (1..=4).map(|n| topology_count(n).unwrap()).sum();
    assert_eq!(total, 389, "the suite ranges over 389 spaces");
    let checks = verify::lemma_suite();
    assert_eq!(checks.len(), 7);
    assert!(all_pass(&checks), "{checks:#?}");
    // The converse-failure witness exists at exactly 2 points.
    let witnesses = search_quest(2, Quest::HsgNotNowhereDense, None).unwrap();
    let i2 = FiniteSpace::indiscrete(2);
    assert!(witnesses
        .iter()
        .any(|w| w.space == i2 && w.subsets[0] == PointSet::singleton(2, 0)));
    finish("2-lemma-suites", started, 60.0);
}

/// Criterion 3: enumeration cross-check with frozen counts; the oracle
/// refuses 5 points with exit code 4.
#[test]
fn criterion_3_enumeration_cross_check() {
    let started = Instant::now();
    let frozen = [1usize, 4, 29, 355];
    for (n, &expect) in (1..=4).zip(&frozen) {
        assert_eq!(topology_count(n).unwrap(), expect);
        assert_eq!(oracle_count(n).unwrap(), expect);
        let key = |sp: &FiniteSpace| sp.opens().map(|o| o.bits()).collect::<Vec<_>>();
        let mut fast: Vec<Vec<u64>> = enumerate_spaces(n).unwrap().map(|sp| key(&sp)).collect();
        let mut naive: Vec<Vec<u64>> = enumerate_spaces_naive(n)
            .unwrap()
            .map(|sp| key(&sp))
            .collect();
        fast.sort();
        naive.sort();
        assert_eq!(fast, naive, "canonical-form mismatch at n = {n}");
    }
    // Regression pin recorded from the enumerator's first run.
    assert_eq!(topology_count(5).unwrap(), 6942);
    assert!(matches!(
        oracle_count(5),
        Err(Error::SizeLimitExceeded { .. })
    ));
    let out = Command::new(env!("CARGO_BIN_EXE_topocheck"))
        .args(["count", "--n", "5", "--oracle"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(4), "oracle must refuse with exit 4");
    finish("3-enumeration-cross-check", started, 120.0);
}

/// Criterion 4: product suites (box characterization, indiscrete-factor
/// formula, hsg transfer) under 120 s.
#[test]
fn criterion_4_product_suites() {
    let started = Instant::now();
    let checks = verify::product_suite();
    assert_eq!(checks.len(), 8);
    assert!(all_pass(&checks), "{checks:#?}");
    finish("4-product-suites", started, 120.0);
}

/// Criterion 5: map suites over all 29×29 three-point topology pairs and
/// all 27 maps per pair, under 300 s.
#[test]
fn criterion_5_map_suites() {
    let started = Instant::now();
    assert_eq!(topology_count(3).unwrap(), 29);
    let checks = verify::map_suite();
    assert_eq!(checks.len(), 7);
    assert!(all_pass(&checks), "{checks:#?}");
    // At least one projection is not sg-irresolute; the check records it.
    let sg = checks
        .iter()
        .find(|c| c.name == "projection-sg-irresolute-failure")
        .unwrap();
    assert!(sg.pass && sg.detail.is_some());
    finish("5-map-suites", started, 300.0);
}

/// Criterion 6: the symbolic tail-space checks and the window-12 truncation
/// comparison, under 1 s.
#[test]
fn criterion_6_symbolic_tail_space() {
    let started = Instant::now();
    let checks = tailspace::verify_e1();
    assert_eq!(checks.len(), 4);
    assert!(all_pass(&checks), "{checks:#?}");
    let names: Vec<&str> = checks.iter().map(|c| c.name.as_str()).collect();
    assert_eq!(
        names,
        [
            "e1-singletons-nowhere-dense",
            "e1-semiopen-iff-cofinite",
            "e1-hsg-iff-finite",
            "e1-go-compact-fails"
        ]
    );
    let trunc = tailspace::verify_truncation(12);
    assert!(trunc.pass, "{trunc:?}");
    finish("6-symbolic-tail-space", started, 1.0);
}

/// Criterion 7: the growth harness finds the size-k nowhere-dense witness in
/// each point-extension square, under 5 s.
#[test]
fn criterion_7_growth_harness() {
    let started = Instant::now();
    let checks = tailspace::verify_r1_growth();
    assert_eq!(checks.len(), 5);
    for (k, check) in (1..=5).zip(&checks) {
        assert!(check.pass, "{check:?}");
        assert_eq!(check.name, format!("r1-growth-k{k}"));
        assert_eq!(check.detail.as_deref(), Some(&*format!("witness size {k}")));
    }
    finish("7-growth-harness", started, 5.0);
}

/// Criterion 8: CLI round-trip identity, the exit-code table, and a full
/// verify run exiting 0.
#[test]
fn criterion_8_cli_golden() {
    let started = Instant::now();
    let fixtures_dir = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let fixture = |name: &str| fixtures_dir.join(name).to_str().unwrap().to_string();

    // Round-trip identity on the fixture documents.
    for name in ["E.top", "I2.top", "S.top", "D2.top"] {
        let text = std::fs::read_to_string(fixtures_dir.join(name)).unwrap();
        let doc = parse_space(&text).unwrap();
        let rendered = render_space(&doc);
        let reparsed = parse_space(&rendered).unwrap();
        assert_eq!(doc, reparsed, "round trip failed for {name}");
        assert_eq!(render_space(&reparsed), rendered, "render not canonical");
    }

    // Exit-code table, one representative per class.
    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_topocheck"))
            .args(args)
            .output()
            .expect("binary runs")
    };
    let e = fixture("E.top");
    assert_eq!(
        run(&["check", &e, "--query", "hyperconnected", "--assert"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["check", &e, "--query", "semi_hausdorff", "--assert"])
            .status
            .code(),
        Some(1),
        "assertion failure must exit 1"
    );
    assert_eq!(
        run(&["check", &e, "--query", "a &"]).status.code(),
        Some(2),
        "parse error must exit 2"
    );
    assert_eq!(
        run(&["classify", &fixture("bad.top")]).status.code(),
        Some(3),
        "invalid topology must exit 3"
    );
    assert_eq!(
        run(&["count", "--n", "7"]).status.code(),
        Some(4),
        "size limit must exit 4"
    );

    let all = run(&["verify", "--suite", "all"]);
    assert_eq!(all.status.code(), Some(0), "verify --suite all must exit 0");
    let text = String::from_utf8(all.stdout).unwrap();
    assert!(text.lines().count() >= 25);
    assert!(text
        .lines()
        .all(|l| l.starts_with("CHECK ") && l.ends_with(" PASS")));

    finish("8-cli-golden", started, 120.0);
}
