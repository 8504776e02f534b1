//! Proximal-navigation graphs over finite metric spaces.
//!
//! A graph over a metric space is a *PN-graph* when, from any vertex toward
//! any target, some out-neighbor is strictly closer to the target, so greedy
//! routing always arrives. This crate builds such graphs (complete, half
//! space proximal, planar Delaunay), checks the navigation property
//! exhaustively, measures stretch factors exactly, and implements a family
//! of step-function spaces whose navigable chain graphs have unbounded
//! stretch.
//!
//! Float spaces use `f64`; the step-function family uses exact big
//! rationals. All algorithms are generic over [`Weight`].
//!
//! With the default `parallel` feature, per-source and per-pair loops run on
//! rayon; results are identical to the sequential build.

pub mod construct;
pub mod counterexample;
mod delaunay;
pub mod error;
pub mod generate;
pub mod graph;
pub mod metric;
pub mod navigate;
mod par;
pub mod spanner;
pub mod weight;

pub use construct::{
    build_complete, build_counterexample_graph, build_delaunay, build_hsp, find_lune_violation,
    hsp_neighbors, symmetrize, triangulate, HspGraph, HspNeighborTrace, HspRound, Triangulation,
};
pub use counterexample::{
    dx_closed_form, dx_measure_oracle, family_function, harmonic, max_eps, verify_family,
    CounterexampleInstance, CounterexampleSpace, FamilyIndex, FamilyReport, PiecewiseConstFn,
};
pub use error::{Error, Result};
pub use graph::MetricGraph;
pub use metric::{
    check_metric_axioms, load_points, load_table, parse_points, parse_table, AxiomViolation,
    EuclideanSpace, HammingSpace, LoadedSpace, MetricSpace, PointId, PointKind, TableSpace,
};
pub use navigate::{
    audit_routes, greedy_stretch, greedy_stretch_full, is_pn_graph, length_inside_ball,
    proximity_path, PnVerdict, RouteFault, RouteResult, RouteStatus,
};
pub use par::is_parallel;
pub use spanner::{
    is_t_spanner, min_counterexample_index, shortest_path_lengths, stretch, stretch_full,
    DistanceMatrix, PairRatio, SpannerVerdict, StretchReport,
};
pub use weight::{parse_rational, Rational, Weight};
