//! Exact-arithmetic toolkit for cobweb spaces over finite distance spaces.
//!
//! Everything is computed with arbitrary-precision rationals so that the
//! set identities checked by the verification suites are exact equalities,
//! never approximations. The crate is organized around the construction
//! pipeline: finite distance spaces and their generated topologies
//! ([`distance_core`]), the complete-oriented-graph metric ([`graph_metric`]),
//! the cobweb subspace and compression map ([`cobweb`]), iterated cobweb
//! towers with the limit metric ([`tower`]), finite-topology map predicates
//! ([`finite_topology`]), a gallery of concrete constructions ([`gallery`]),
//! seeded instance generators ([`gen`]) and the named property suites
//! ([`verify`]).

pub mod cobweb;
pub mod distance_core;
pub mod error;
pub mod finite_topology;
pub mod gallery;
pub mod gen;
pub mod graph_metric;
pub mod rational;
pub mod tower;
pub mod verify;

pub use cobweb::{Arc, ArcUnion, CobwebSpace};
pub use distance_core::{AxiomReport, DistanceSpace, TruncatedDistanceSpace};
pub use error::Error;
pub use finite_topology::{enumerate_topologies, quotient_topology, FiniteTopology, SpaceMap};
pub use gallery::{
    ExtremalPoint, NeighborhoodSystem, NonFuTruncation, OmilPoint, OmilSpace, RatInterval,
};
pub use graph_metric::{GammaPoint, GammaSpace, HedgehogPoint};
pub use rational::{parse_rational, Q};
pub use tower::{DistanceCount, LevelPoint, RhoInterval, Thread, Tower};
pub use verify::{PropertyReport, SuiteConfig, VerificationReport};

/// Convenience result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
