//! Pinned external JSON formats and a pinned map-predicate witness.

use std::collections::BTreeMap;

use cobweb_core::rational::q;
use cobweb_core::{ArcUnion, CobwebSpace, DistanceSpace, FiniteTopology, GammaPoint, SpaceMap};

#[test]
fn distance_space_wire_format() {
    let text = r#"{"points":["a","b"],"dist":{"a,b":"1/3","b,a":"1/3"}}"#;
    let space: DistanceSpace = serde_json::from_str(text).unwrap();
    assert_eq!(space.distance("a", "b").unwrap(), q(1, 3));
    assert_eq!(serde_json::to_string(&space).unwrap(), text);
}

#[test]
fn topology_wire_format() {
    let text = r#"{"points":["a","b"],"opens":[[],["a"],["a","b"]]}"#;
    let top: FiniteTopology = serde_json::from_str(text).unwrap();
    assert_eq!(top.opens_count(), 3);
    assert_eq!(serde_json::to_string(&top).unwrap(), text);

    // closure violations are rejected at the boundary
    assert!(serde_json::from_str::<FiniteTopology>(
        r#"{"points":["a","b"],"opens":[[],["a"],["b"]]}"#
    )
    .is_err());
}

#[test]
fn space_map_wire_format() {
    let text = r#"{"domain":{"points":["a","b"],"opens":[[],["a"],["a","b"]]},"codomain":{"points":["x"],"opens":[[],["x"]]},"map":{"a":"x","b":"x"}}"#;
    let map: SpaceMap = serde_json::from_str(text).unwrap();
    assert!(map.is_surjective());
    assert_eq!(serde_json::to_string(&map).unwrap(), text);
}

#[test]
fn gamma_point_wire_format() {
    let v: GammaPoint = serde_json::from_str(r#"{"v":"x"}"#).unwrap();
    assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"v":"x"}"#);
    let e: GammaPoint = serde_json::from_str(r#"{"e":["x","y"],"t":"1/4"}"#).unwrap();
    assert_eq!(
        serde_json::to_string(&e).unwrap(),
        r#"{"e":["x","y"],"t":"1/4"}"#
    );
}

#[test]
fn fiber_arc_union_wire_format() {
    let base: DistanceSpace =
        serde_json::from_str(r#"{"points":["a","b"],"dist":{"a,b":"3/10","b,a":"3/10"}}"#).unwrap();
    let cw = CobwebSpace::new(base).unwrap();
    let fiber = cw.fiber("a").unwrap();
    assert_eq!(
        serde_json::to_string(&fiber).unwrap(),
        r#"{"vertices":["a"],"arcs":[{"edge":["a","b"],"lo":"0","hi":"7/10","lo_open":true,"hi_open":false}]}"#
    );
    let back: ArcUnion = serde_json::from_str(&serde_json::to_string(&fiber).unwrap()).unwrap();
    assert_eq!(fiber, back);
}

/// A continuous monotone quotient surjection that is not hereditarily
/// quotient, on four domain points: open sets {a}, {b,c}, {a,b,c} over a
/// three-point codomain where only {u} is open besides the trivial two.
/// The open set {b,c} covers the fiber of v but its image {v,w} has empty
/// interior.
#[test]
fn pinned_non_hereditarily_quotient_witness() {
    let domain = FiniteTopology::from_masks(
        vec!["a".into(), "b".into(), "c".into(), "e".into()],
        vec![0b0000, 0b0001, 0b0110, 0b0111, 0b1111],
    )
    .unwrap();
    let codomain = FiniteTopology::from_masks(
        vec!["u".into(), "v".into(), "w".into()],
        vec![0b000, 0b001, 0b111],
    )
    .unwrap();
    let map: BTreeMap<String, String> = [("a", "u"), ("b", "v"), ("c", "w"), ("e", "w")]
        .iter()
        .map(|(x, y)| (x.to_string(), y.to_string()))
        .collect();
    let f = SpaceMap::new(domain, codomain, &map).unwrap();

    assert!(f.is_surjective());
    assert!(f.is_continuous());
    assert!(f.is_monotone());
    assert!(f.is_quotient().unwrap());
    assert!(!f.is_hereditarily_quotient().unwrap());
    // and per the restriction characterization, some restriction is not
    // quotient (witnessed by Z = {u, v})
    assert!(!f.restriction_quotient_all().unwrap());
}
