//! Graph builders: complete graph, half space proximal (HSP) graph,
//! symmetrization, planar Delaunay triangulation and the counterexample chain.

use serde::Serialize;

use crate::counterexample::{CounterexampleSpace, FamilyIndex};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::metric::{MetricSpace, PointId};
use crate::par;
use crate::weight::{Rational, Weight};
use num_traits::Zero;

pub use crate::delaunay::{build_delaunay, triangulate, Triangulation};

/// Undirected graph with every pair of distinct points joined.
pub fn build_complete<M: MetricSpace>(space: &M) -> MetricGraph<M::Dist> {
    let n = space.len();
    let mut g = MetricGraph::undirected(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(PointId(u), PointId(v), space.dist(PointId(u), PointId(v)))
                .expect("distinct in-range ids");
        }
    }
    g
}

/// One selection round of the HSP loop at a single source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HspRound {
    /// Nearest member of the allowed set.
    pub chosen: PointId,
    /// Allowed points strictly closer to `chosen` than to the source.
    pub removed: Vec<PointId>,
}

/// The full record of how one source picked its HSP neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HspNeighborTrace {
    pub source: PointId,
    pub rounds: Vec<HspRound>,
}

/// Directed HSP graph plus one trace per source.
#[derive(Clone, Debug)]
pub struct HspGraph<W> {
    pub graph: MetricGraph<W>,
    pub traces: Vec<HspNeighborTrace>,
}

/// Runs the HSP neighbor selection at `source`.
///
/// The allowed set starts as every other point. Each round takes its member
/// nearest to the source (ties to the smaller id), links to it, and discards
/// every allowed point strictly closer to the chosen neighbor than to the
/// source. Equidistant points stay allowed.
pub fn hsp_neighbors<M: MetricSpace>(space: &M, source: PointId) -> Result<HspNeighborTrace> {
    let n = space.len();
    let mut allowed: Vec<(PointId, M::Dist)> = Vec::with_capacity(n.saturating_sub(1));
    for v in space.ids().filter(|&v| v != source) {
        let d = space.dist(source, v);
        if d.is_zero() {
            let (first, second) = if source < v { (source, v) } else { (v, source) };
            return Err(Error::DuplicatePoint { first, second });
        }
        allowed.push((v, d));
    }
    let mut rounds = Vec::new();
    while !allowed.is_empty() {
        let (pos, _) = allowed
            .iter()
            .enumerate()
            .min_by(|(_, (a, da)), (_, (b, db))| da.total_cmp(db).then(a.cmp(b)))
            .expect("nonempty");
        let (chosen, _) = allowed.swap_remove(pos);
        let mut removed = Vec::new();
        allowed.retain(|(v, dv)| {
            let forbidden = space.dist(chosen, *v) < *dv;
            if forbidden {
                removed.push(*v);
            }
            !forbidden
        });
        removed.sort_unstable();
        rounds.push(HspRound { chosen, removed });
    }
    Ok(HspNeighborTrace { source, rounds })
}

/// Directed HSP graph over the whole space. Sources run in parallel when the
/// `parallel` feature is on; the result does not depend on it.
pub fn build_hsp<M: MetricSpace>(space: &M) -> Result<HspGraph<M::Dist>> {
    let n = space.len();
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    let traces = par::map_range(n, |u| hsp_neighbors(space, PointId(u)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut graph = MetricGraph::directed(n);
    for trace in &traces {
        for round in &trace.rounds {
            graph
                .add_edge(
                    trace.source,
                    round.chosen,
                    space.dist(trace.source, round.chosen),
                )
                .expect("distinct in-range ids");
        }
    }
    Ok(HspGraph { graph, traces })
}

/// Undirected view: `{u, v}` is an edge iff `u -> v` or `v -> u` is.
pub fn symmetrize<W: Weight>(g: &MetricGraph<W>) -> MetricGraph<W> {
    let mut out = MetricGraph::undirected(g.len());
    for (u, v, w) in g.edges() {
        out.add_edge(u, v, w.clone())
            .expect("edges of a valid graph");
    }
    out
}

/// For an ordered pair `(u, v)` with no arc `u -> v`, a lune witness is an
/// out-neighbor `z` of `u` with `d(u,z) <= d(u,v)` and `d(z,v) < d(u,v)`.
///
/// Returns the first pair (in id order) that has no arc and no witness.
pub fn find_lune_violation<M: MetricSpace>(
    g: &MetricGraph<M::Dist>,
    space: &M,
) -> Result<Option<(PointId, PointId)>> {
    g.ensure_matches(space)?;
    let n = g.len();
    let per_source = par::map_range(n, |u| {
        let u = PointId(u);
        space
            .ids()
            .find(|&v| {
                if v == u || g.has_edge(u, v) {
                    return false;
                }
                let duv = space.dist(u, v);
                !g.neighbors(u)
                    .iter()
                    .any(|(z, duz)| *duz <= duv && space.dist(*z, v) < duv)
            })
            .map(|v| (u, v))
    });
    Ok(per_source.into_iter().flatten().next())
}

/// The chain `f_0 - f_1 - ... - f_i - f_inf` over `V_i`, with exact weights.
pub fn build_counterexample_graph(
    i: u32,
    eps: Rational,
) -> Result<(MetricGraph<Rational>, CounterexampleSpace)> {
    let space = CounterexampleSpace::new(i, eps)?;
    let mut g = MetricGraph::undirected(space.len());
    let chain: Vec<PointId> = (0..=i)
        .map(|k| space.id_of(FamilyIndex::Finite(k)))
        .chain(std::iter::once(space.infinity()))
        .collect();
    for pair in chain.windows(2) {
        g.add_edge(pair[0], pair[1], space.dist(pair[0], pair[1]))?;
    }
    Ok((g, space))
}
