//! Named property suites.
//!
//! Every suite is a bundle of deterministic seeded checks, each tagged
//! with a stable anchor id so a verification report doubles as a coverage
//! index over the identities the toolkit implements. The same property
//! functions back the CLI `verify` subcommand and the acceptance tests,
//! which call them with their own case counts.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

pub mod props;

/// Anchors that a full (`--suite all`) report must cover.
pub const REQUIRED_ANCHORS: &[&str] = &[
    "distance-space",
    "1stcountablewell",
    "construction",
    "hedgehog",
    "cobweb-definition",
    "summary-1",
    "summary-2",
    "summary-3",
    "summary-4",
    "summary-6",
    "summary2",
    "sepcomp",
    "abundance",
    "cobomega",
    "econo",
    "eco-p1",
    "complete-economical",
    "beobachtung",
    "nonfu-example",
    "limitprojection",
    "extremal",
    "omiljanowski",
    "defs",
    "eng121",
    "zconnectedifxconnected",
    "supermonotone",
    "stillmonotone",
    "herquocompo",
    "cantor-cube",
];

/// Size caps shared by every suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub max_points: usize,
    pub depth: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            max_points: 6,
            depth: 4,
        }
    }
}

impl SuiteConfig {
    fn points(&self) -> usize {
        self.max_points.clamp(2, 10)
    }

    fn depth(&self) -> usize {
        self.depth.clamp(1, crate::tower::DEFAULT_MAX_LEVEL)
    }
}

/// Outcome of a single named property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub id: String,
    pub anchor: String,
    pub cases: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<String>,
}

/// Aggregated machine-readable result of a suite run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub max_points: usize,
    pub depth: usize,
    pub failures: u64,
    pub properties: Vec<PropertyReport>,
    pub runtime_ms: u128,
}

impl VerificationReport {
    pub fn anchors(&self) -> BTreeSet<String> {
        self.properties.iter().map(|p| p.anchor.clone()).collect()
    }

    pub fn covers_required_anchors(&self) -> bool {
        let have = self.anchors();
        REQUIRED_ANCHORS.iter().all(|a| have.contains(*a))
    }
}

/// Mutable accumulator used while a property sweeps its cases.
pub(crate) struct Prop {
    id: &'static str,
    anchor: &'static str,
    cases: u64,
    failures: u64,
    first: Option<String>,
}

impl Prop {
    pub(crate) fn new(id: &'static str, anchor: &'static str) -> Self {
        Self {
            id,
            anchor,
            cases: 0,
            failures: 0,
            first: None,
        }
    }

    pub(crate) fn case(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(counterexample());
            }
        }
    }

    pub(crate) fn finish(self) -> PropertyReport {
        PropertyReport {
            id: self.id.to_string(),
            anchor: self.anchor.to_string(),
            cases: self.cases,
            failures: self.failures,
            first_counterexample: self.first,
        }
    }
}

/// Suite names accepted by [`run_suite`], not counting single property ids.
pub const SUITE_NAMES: &[&str] = &[
    "distance-core",
    "graph-metric",
    "cobweb",
    "appendix",
    "tower",
    "gallery",
    "ball-image",
    "all",
    "negative-control",
];

fn suite_distance_core(cfg: &SuiteConfig) -> Vec<PropertyReport> {
    let np = cfg.points();
    vec![
        props::ball_basics(cfg.seed, 150, np),
        props::generated_topology_closure(cfg.seed, 40, np.min(5)),
        props::well_behaved_predicate(cfg.seed, 60, np.min(6)),
    ]
}

fn suite_graph_metric(cfg: &SuiteConfig) -> Vec<PropertyReport> {
    let np = cfg.points();
    vec![
        props::construction_metric_axioms(cfg.seed, 40, 15, np.min(8)),
        props::construction_edge_isometry(cfg.seed, 250, np),
        props::construction_disjoint_edges(cfg.seed, 250, np.max(4)),
        props::construction_open_edge_midball(8, 4),
        props::construction_oracle_agreement(cfg.seed, 40, np.min(5), 16),
        props::hedgehog_metric_axioms(cfg.seed, 250),
        props::hedgehog_vertex_halfball(cfg.seed, 25, 60, np),
    ]
}

fn suite_cobweb(cfg: &SuiteConfig) -> Vec<PropertyReport> {
    let np = cfg.points();
    vec![
        props::cobweb_membership_cut(cfg.seed, 150, np),
        props::summary1_vertices(cfg.seed, 60, np),
        props::summary2_compress_identity(cfg.seed, 150, np),
        props::summary3_fiber_star(cfg.seed, 60, np),
        props::summary4_local_constancy(cfg.seed, 80, np),
        props::summary6_ball_image(cfg.seed, 60, np),
        props::summary2_hq_identity(cfg.seed, 60, np),
        props::cob_ball_exactness(cfg.seed, 60, np, 16),
        props::sepcomp_vertex_discreteness(cfg.seed, 150, np),
        props::sepcomp_compress_classes(cfg.seed, 80, np),
        props::abundance_quotient_distance(cfg.seed, 80, np),
        props::fiber_hedgehog_grid(cfg.seed, 25, np, 16),
    ]
}

fn suite_appendix(cfg: &SuiteConfig) -> Vec<PropertyReport> {
    let mut out = vec![props::appendix_enumeration_counts(true)];
    out.extend(props::appendix_lemma_suite(cfg.seed, 2_000));
    out
}

fn suite_tower(cfg: &SuiteConfig) -> Vec<PropertyReport> {
    let np = cfg.points();
    let depth = cfg.depth();
    vec![
        props::tower_thread_compatibility(cfg.seed, 80, np, depth),
        props::tower_membership_levels(cfg.seed, 80, np, depth),
        props::tower_rho_bound(cfg.seed, 200, np, depth),
        props::tower_metric_axioms(cfg.seed, 3, 12, np, depth),
        props::tower_intervals(cfg.seed, 120, np, depth),
        props::limitprojection_lift(cfg.seed, 80, np),
        props::econo_counting_bound(cfg.seed, 20, 30, np, depth),
        props::eco_p1_unrealized_radius(cfg.seed, 80, np, depth),
    ]
}

fn suite_gallery(cfg: &SuiteConfig) -> Vec<PropertyReport> {
    let np = cfg.points();
    vec![
        props::extremal_ball_image_grid(),
        props::extremal_local_extrema(),
        props::omiljanowski_ball_image(cfg.seed, 8, np),
        props::beobachtung_sandwich(cfg.seed, 300, np.min(8), cfg.depth().max(3)),
        props::nonfu_distance_facts(5),
        props::cantor_cube_value_count(10),
    ]
}

/// Runs a suite (or a single property bundle) by name.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let properties = match name {
        "distance-core" => suite_distance_core(cfg),
        "graph-metric" => suite_graph_metric(cfg),
        "cobweb" => suite_cobweb(cfg),
        "appendix" => suite_appendix(cfg),
        "tower" => suite_tower(cfg),
        "gallery" => suite_gallery(cfg),
        "ball-image" => vec![props::summary6_ball_image(cfg.seed, 60, cfg.points())],
        "negative-control" => vec![props::negative_control_corrupted_sandwich(
            cfg.seed,
            20,
            cfg.points().min(8),
            cfg.depth().max(2),
        )],
        "all" => {
            let mut all = Vec::new();
            all.extend(suite_distance_core(cfg));
            all.extend(suite_graph_metric(cfg));
            all.extend(suite_cobweb(cfg));
            all.extend(suite_appendix(cfg));
            all.extend(suite_tower(cfg));
            all.extend(suite_gallery(cfg));
            all
        }
        other => {
            return Err(Error::UnknownSuite(format!(
                "`{other}`; available suites: {}",
                SUITE_NAMES.join(", ")
            )))
        }
    };
    let failures = properties.iter().map(|p| p.failures).sum();
    Ok(VerificationReport {
        suite: name.to_string(),
        seed: cfg.seed,
        max_points: cfg.max_points,
        depth: cfg.depth,
        failures,
        properties,
        runtime_ms: start.elapsed().as_millis(),
    })
}
