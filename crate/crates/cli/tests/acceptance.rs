//! Acceptance gate: eleven criteria, one test and one printed pass line each.
//!
//! Criteria 4–7, 9, and 10 sweep the whole seven-instance corpus through the
//! claim suite (all n! atom orders when n ≤ 5, fifty seeded orders otherwise);
//! the suite runs once and is shared across those tests.

use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::Instant;

use geomlat::chain_graph::{FacetRidgeGraph, GlexGraph};
use geomlat::coxeter::{evaluate, is_reduced, is_reduced_by_length, Word};
use geomlat::descent_path::apply_t;
use geomlat::labeling::{label_sequence, AtomOrder, MaximalChain};
use geomlat::lattice::FlatsLattice;
use geomlat::matroid::{Matroid, MatroidSpec};
use geomlat::suite::{run_suite, OrderSelection, Severity, SuiteReport, HASSE_CLAIM};
use geomlat::{binom2, Caps};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn load(name: &str) -> (MatroidSpec, Matroid, FlatsLattice) {
    let caps = Caps::default();
    let text = std::fs::read_to_string(fixture(name)).expect("fixture readable");
    let spec = MatroidSpec::from_json(&text).expect("fixture parses");
    let matroid = spec.build(&caps).expect("fixture builds");
    let lattice = FlatsLattice::build(&matroid, &caps).expect("lattice builds");
    (spec, matroid, lattice)
}

const CORPUS: [&str; 7] = [
    "b3.json",
    "b4.json",
    "u24.json",
    "u34.json",
    "u35.json",
    "k4.json",
    "nearpencil.json",
];

/// Suite reports for the whole corpus, computed once.
fn corpus_reports() -> &'static Vec<SuiteReport> {
    static REPORTS: OnceLock<Vec<SuiteReport>> = OnceLock::new();
    REPORTS.get_or_init(|| {
        let caps = Caps::default();
        CORPUS
            .iter()
            .map(|name| {
                let (spec, matroid, _) = load(name);
                let selection = OrderSelection::automatic(matroid.n());
                run_suite(&matroid, &spec.label(), &selection, &caps)
                    .expect("suite runs on corpus instance")
            })
            .collect()
    })
}

/// Assert the named claims were checked on every corpus instance and hold.
fn assert_claims_hold(claims: &[&str]) {
    for report in corpus_reports() {
        for claim in claims {
            let findings: Vec<_> =
                report.findings.iter().filter(|f| f.claim == *claim).collect();
            assert!(
                !findings.is_empty(),
                "{}: claim {claim} produced no findings",
                report.label
            );
            for f in findings {
                assert_eq!(
                    f.severity,
                    Severity::Info,
                    "{}: claim {claim} violated at {} — {}",
                    report.label,
                    f.instance,
                    f.witness
                );
            }
        }
    }
}

fn pass(number: usize, name: &str) {
    println!("ACCEPTANCE {number:>2} {name}: pass");
}

#[test]
fn criterion_01_boolean_diameters() {
    let caps = Caps::default();
    for (r, expected) in [(2usize, 1usize), (3, 3), (4, 6), (5, 10)] {
        let matroid = Matroid::uniform(r, r, &caps).unwrap();
        let lattice = FlatsLattice::build(&matroid, &caps).unwrap();
        let frg = FacetRidgeGraph::build(&lattice, &caps).unwrap();
        let started = Instant::now();
        let report = frg.diameter().unwrap();
        assert_eq!(report.diameter, expected, "boolean lattice rank {r}");
        assert_eq!(report.diameter, binom2(r));
        if r == 5 {
            assert_eq!(frg.len(), 120);
            assert!(
                started.elapsed().as_secs() < 10,
                "rank-5 boolean diameter must finish under 10 seconds"
            );
        }
    }
    pass(1, "boolean lattice diameters C(r,2)");
}

#[test]
fn criterion_02_worked_example_moves() {
    let (_, _, lattice) = load("u34.json");
    let ord = AtomOrder::natural(4);
    let labels = |chain: &MaximalChain| label_sequence(&lattice, &ord, chain).to_string();
    let m = MaximalChain::parse(&lattice, ";4;3,4;1,2,3,4").unwrap();
    assert_eq!(labels(&m), "(4,3,1)");

    let t2 = apply_t(&lattice, &ord, &m, 2).unwrap();
    assert_eq!(labels(&t2), "(4,1,2)");
    let t1t2 = apply_t(&lattice, &ord, &t2, 1).unwrap();
    assert_eq!(labels(&t1t2), "(1,4,2)");
    let t2t1t2 = apply_t(&lattice, &ord, &t1t2, 2).unwrap();
    assert_eq!(labels(&t2t1t2), "(1,2,3)");

    let t1 = apply_t(&lattice, &ord, &m, 1).unwrap();
    assert_eq!(labels(&t1), "(3,4,1)");
    let t2t1 = apply_t(&lattice, &ord, &t1, 2).unwrap();
    assert_eq!(labels(&t2t1), "(3,1,2)");
    let t1t2t1 = apply_t(&lattice, &ord, &t2t1, 1).unwrap();
    assert_eq!(labels(&t1t2t1), "(1,3,2)");

    let t2t1t2t1 = apply_t(&lattice, &ord, &t1t2t1, 2).unwrap();
    assert_eq!(t2t1t2t1, t2t1t2, "both descent routes meet at the same chain");
    pass(2, "worked example label sequences and moves");
}

#[test]
fn criterion_03_near_pencil_fixture_distance_two() {
    let (_, _, lattice) = load("nearpencil.json");
    assert_eq!(lattice.len(), 10, "exactly the ten near-pencil flats");
    let caps = Caps::default();
    let ord = AtomOrder::natural(4);
    let frg = FacetRidgeGraph::build(&lattice, &caps).unwrap();
    let decreasing = frg.index_of(&MaximalChain::parse(&lattice, ";4;3,4;1,2,3,4").unwrap()).unwrap();
    let increasing = frg.index_of(&MaximalChain::parse(&lattice, ";1;1,2,4;1,2,3,4").unwrap()).unwrap();
    assert_eq!(frg.distance(decreasing, increasing), Some(2));
    let path = frg.shortest_path(decreasing, increasing).unwrap();
    let sequences: Vec<String> = path
        .iter()
        .map(|&i| label_sequence(&lattice, &ord, frg.chain(i)).to_string())
        .collect();
    assert_eq!(sequences, ["(4,3,1)", "(4,1,3)", "(1,2,3)"]);
    pass(3, "near-pencil decreasing chain two steps from the increasing chain");
}

#[test]
fn criterion_04_el_labeling_every_order() {
    assert_claims_hold(&["el-labeling", "ascending-lex-min"]);
    pass(4, "minimal labeling is an EL-labeling for every swept atom order");
}

#[test]
fn criterion_05_diameter_upper_bound() {
    assert_claims_hold(&["diameter-upper-bound"]);
    pass(5, "facet-ridge diameter at most C(r,2) across the corpus");
}

#[test]
fn criterion_06_straightening_reduced_words() {
    assert_claims_hold(&["straightening", "connect-bound"]);
    pass(6, "straightening yields reduced words of length at most C(r,2)");
}

#[test]
fn criterion_07_sharpness() {
    assert_claims_hold(&["sharpness-exact", "reversal-inversions"]);
    pass(7, "max directed eccentricity exactly C(r,2), attained by the reversal chain");
}

#[test]
fn criterion_08_wiring_oracle_equivalence() {
    let mut checked = 0usize;
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..8 {
        let mut next = Vec::new();
        for w in &words {
            for letter in 1..=3usize {
                let mut longer = w.clone();
                longer.push(letter);
                next.push(longer);
            }
        }
        for letters in &next {
            let word = Word::new(letters.clone()).unwrap();
            assert_eq!(
                is_reduced(&word, 4).unwrap(),
                is_reduced_by_length(&word, 4).unwrap(),
                "oracles disagree on {word}"
            );
            checked += 1;
        }
        words = next;
    }
    assert_eq!(checked, 3 + 9 + 27 + 81 + 243 + 729 + 2187 + 6561);

    let reduced = Word::parse("1,2,3,1,2,1").unwrap();
    assert!(is_reduced(&reduced, 4).unwrap());
    assert_eq!(evaluate(&reduced, 4).unwrap().to_string(), "(4,3,2,1)");
    let unreduced = Word::parse("1,2,1,3,1").unwrap();
    assert!(!is_reduced(&unreduced, 4).unwrap());
    assert!(!is_reduced_by_length(&unreduced, 4).unwrap());
    pass(8, "double-crossing and length oracles agree on all short words");
}

#[test]
fn criterion_09_lemma_suite() {
    assert_claims_hold(&[
        "rearrangement-realizability",
        "lex-min-rearrangement-iff",
        "label-distinct-independent",
        "descent-swapping",
    ]);
    pass(9, "rearrangement, lex-minimality, independence, and swapping lemmas");
}

#[test]
fn criterion_10_descent_order_equals_orientation() {
    assert_claims_hold(&[HASSE_CLAIM, "glex-structure"]);
    pass(10, "descent-order Hasse diagram equals the lexicographic orientation");
}

#[test]
fn criterion_11_sweep_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let csv_a = dir.path().join("a.csv");
    let csv_b = dir.path().join("b.csv");
    let run = |csv: &Path| {
        let mut cmd = std::process::Command::new(env!("CARGO_BIN_EXE_geomlat"));
        cmd.arg("sweep");
        for name in CORPUS {
            cmd.arg(fixture(name));
        }
        cmd.args(["--seed", "42", "--csv"]).arg(csv);
        cmd.output().expect("binary runs")
    };
    let out_a = run(&csv_a);
    let out_b = run(&csv_b);
    assert_eq!(out_a.status.code(), Some(0), "corpus sweep is clean");
    assert_eq!(out_b.status.code(), Some(0));
    assert_eq!(out_a.stdout, out_b.stdout);
    let bytes_a = std::fs::read(&csv_a).unwrap();
    let bytes_b = std::fs::read(&csv_b).unwrap();
    assert!(!bytes_a.is_empty());
    assert_eq!(bytes_a, bytes_b, "repeated sweep must be byte-identical");
    pass(11, "seeded sweep reproduces byte-identical CSV");
}

/// The GlexGraph import is exercised indirectly through the suite; keep the
/// direct dependency honest by checking one orientation here too.
#[test]
fn corpus_orientations_are_acyclic() {
    let caps = Caps::default();
    for name in CORPUS {
        let (_, _, lattice) = load(name);
        let glex = GlexGraph::build(&lattice, &AtomOrder::natural(lattice.ground_size()), &caps)
            .unwrap();
        assert!(glex.is_acyclic(), "{name}");
    }
}
