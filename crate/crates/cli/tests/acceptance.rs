//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Every tolerance here is pinned in code: the metric identities are
//! exact (zero tolerance), the oracle agreement bound is `2/64`, the
//! interval width bound is `2/(N+1)`, and the end-to-end run must finish
//! within 120 seconds with zero failures while covering every required
//! anchor.

use std::process::Command;
use std::time::{Duration, Instant};

use cobweb_core::verify::{props, PropertyReport, VerificationReport};

const SEED: u64 = 7;

fn gate(criterion: &str, reports: Vec<PropertyReport>) {
    let cases: u64 = reports.iter().map(|r| r.cases).sum();
    let failed: Vec<&PropertyReport> = reports.iter().filter(|r| r.failures > 0).collect();
    if failed.is_empty() {
        println!("[PASS] {criterion} ({cases} cases)");
    } else {
        println!("[FAIL] {criterion}");
        for f in &failed {
            println!(
                "       {} failed {}/{} cases; first counterexample: {}",
                f.id,
                f.failures,
                f.cases,
                f.first_counterexample.as_deref().unwrap_or("-")
            );
        }
        panic!("{criterion} failed");
    }
}

#[test]
fn criterion_01_gamma_metric_axioms() {
    let start = Instant::now();
    let report = props::construction_metric_axioms(SEED, 200, 50, 8);
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(10),
        "metric axiom sweep took {elapsed:?}, budget is 10 s"
    );
    gate(
        "criterion 1: graph metric axioms exact on 200 spaces x 50 samples",
        vec![report],
    );
}

#[test]
fn criterion_02_closed_form_vs_oracle() {
    // 1000 grid pairs at k=64 over spaces with at most 5 points; the
    // property asserts both the 2/64 bound and exact equality on grids
    let report = props::construction_oracle_agreement(SEED, 1000, 5, 64);
    gate(
        "criterion 2: closed form within 2/64 of the k=64 oracle (exact on grids)",
        vec![report],
    );
}

#[test]
fn criterion_03_construction_guarantees() {
    gate(
        "criterion 3: edge isometry, disjoint-edge bound, midpoint ball",
        vec![
            props::construction_edge_isometry(SEED, 1000, 8),
            props::construction_disjoint_edges(SEED, 1000, 8),
            props::construction_open_edge_midball(16, 4),
        ],
    );
}

#[test]
fn criterion_04_ball_image_identity() {
    gate(
        "criterion 4: ball-image identity over 100 bases, r in {i/20}",
        vec![props::summary6_ball_image(SEED, 100, 8)],
    );
}

#[test]
fn criterion_05_hereditarily_quotient_identity() {
    gate(
        "criterion 5: saturated ball-image identity over the same sweep",
        vec![props::summary2_hq_identity(SEED, 100, 8)],
    );
}

#[test]
fn criterion_06_fiber_hedgehog_isometry() {
    gate(
        "criterion 6: fiber/hedgehog distance correspondence on 1/16 grids",
        vec![props::fiber_hedgehog_grid(SEED, 40, 6, 16)],
    );
}

#[test]
fn criterion_07_appendix_lemma_suite() {
    let mut reports = vec![props::appendix_enumeration_counts(true)];
    reports.extend(props::appendix_lemma_suite(SEED, 10_000));
    // the witness search must actually find its witness
    let witness = reports
        .iter()
        .find(|r| r.id == "defs-witness-search")
        .expect("witness property present");
    assert_eq!(witness.failures, 0, "no witness found");
    assert!(witness.cases > 0);
    gate(
        "criterion 7: appendix lemmas exhaustive on <=3 points, randomized on 4, witness found",
        reports,
    );
}

#[test]
fn criterion_08_tower_intervals_and_metric() {
    gate(
        "criterion 8: interval soundness/width/nesting on 500 pairs, lifts at distance 1, \
         limit metric axioms on a 50-thread sample",
        vec![
            props::tower_intervals(SEED, 500, 8, 6),
            props::limitprojection_lift(SEED, 200, 8),
            props::tower_metric_axioms(SEED, 1, 50, 6, 6),
        ],
    );
}

#[test]
fn criterion_09_economical_counting() {
    gate(
        "criterion 9: distinct-distance count within bound on 100 samples, unrealized radii",
        vec![
            props::econo_counting_bound(SEED, 100, 50, 6, 6),
            props::eco_p1_unrealized_radius(SEED, 100, 6, 6),
        ],
    );
}

#[test]
fn criterion_10_gallery_exactness() {
    gate(
        "criterion 10: extremal intervals, doubled-space ball images, sandwich, Cantor cube",
        vec![
            props::extremal_ball_image_grid(),
            props::extremal_local_extrema(),
            props::omiljanowski_ball_image(SEED, 12, 6),
            props::beobachtung_sandwich(SEED, 1000, 8, 6),
            props::cantor_cube_value_count(10),
        ],
    );
}

#[test]
fn criterion_11_end_to_end_verify() {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_cobweb"))
        .args([
            "verify",
            "--suite",
            "all",
            "--seed",
            "7",
            "--max-points",
            "6",
            "--depth",
            "4",
        ])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert!(
        out.status.success(),
        "verify exited with {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(
        elapsed < Duration::from_secs(120),
        "end-to-end verify took {elapsed:?}, budget is 120 s"
    );
    let report: VerificationReport = serde_json::from_slice(&out.stdout).expect("report parses");
    assert_eq!(report.failures, 0, "report has failures");
    assert!(
        report.covers_required_anchors(),
        "missing anchors: {:?}",
        cobweb_core::verify::REQUIRED_ANCHORS
            .iter()
            .filter(|a| !report.anchors().contains(**a))
            .collect::<Vec<_>>()
    );
    println!(
        "[PASS] criterion 11: end-to-end verify, {} properties, {} anchors, {:?}",
        report.properties.len(),
        report.anchors().len(),
        elapsed
    );
}
