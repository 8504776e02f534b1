//! Proximal navigation: the PN-graph check, greedy proximity paths and
//! path statistics.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::metric::{MetricSpace, PointId};
use crate::par;
use crate::spanner::{PairRatio, StretchReport};
use crate::weight::{AsWeight, AsWeights, Weight};
use num_traits::Zero;

/// Result of [`is_pn_graph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PnVerdict {
    pub is_pn: bool,
    /// First ordered pair `(u, v)` where no out-neighbor of `u` is strictly closer to `v`.
    pub witness: Option<(PointId, PointId)>,
}

/// Checks, for every ordered pair `u != v`, that some out-neighbor `w` of `u`
/// has `d(w, v) < d(u, v)`. Pairs are scanned in lexicographic order and the
/// first failure is the witness.
pub fn is_pn_graph<M: MetricSpace>(g: &MetricGraph<M::Dist>, space: &M) -> Result<PnVerdict> {
    g.ensure_matches(space)?;
    let per_source = par::map_range(g.len(), |u| {
        let u = PointId(u);
        space
            .ids()
            .find(|&v| v != u && !has_closer_neighbor(g, space, u, v))
            .map(|v| (u, v))
    });
    let witness = per_source.into_iter().flatten().next();
    Ok(PnVerdict {
        is_pn: witness.is_none(),
        witness,
    })
}

fn has_closer_neighbor<M: MetricSpace>(
    g: &MetricGraph<M::Dist>,
    space: &M,
    u: PointId,
    v: PointId,
) -> bool {
    let duv = space.dist(u, v);
    g.neighbors(u).iter().any(|(w, _)| space.dist(*w, v) < duv)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteStatus {
    Reached,
    /// No out-neighbor of `at` is strictly closer to the target.
    LocalMinimum {
        at: PointId,
    },
}

/// A greedy proximity path.
#[derive(Clone, Debug, PartialEq)]
pub struct RouteResult<W> {
    pub path: Vec<PointId>,
    /// `hop_lengths[k] = d(path[k], path[k+1])`.
    pub hop_lengths: Vec<W>,
    pub total_length: W,
    pub status: RouteStatus,
}

impl<W> RouteResult<W> {
    pub fn reached(&self) -> bool {
        self.status == RouteStatus::Reached
    }

    pub fn source(&self) -> PointId {
        self.path[0]
    }

    pub fn target_reached(&self) -> Option<PointId> {
        self.reached()
            .then(|| *self.path.last().expect("paths are nonempty"))
    }
}

impl<W: Weight> Serialize for RouteResult<W> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RouteResult", 5)?;
        st.serialize_field("path", &self.path)?;
        st.serialize_field("hop_lengths", &AsWeights(&self.hop_lengths))?;
        st.serialize_field("total_length", &AsWeight(&self.total_length))?;
        match self.status {
            RouteStatus::Reached => {
                st.serialize_field("status", "reached")?;
                st.serialize_field("stuck_at", &None::<PointId>)?;
            }
            RouteStatus::LocalMinimum { at } => {
                st.serialize_field("status", "local_minimum")?;
                st.serialize_field("stuck_at", &Some(at))?;
            }
        }
        st.end()
    }
}

/// Greedy walk from `u` toward `v`: step to the out-neighbor closest to `v`
/// (ties to the smaller id) while that strictly reduces the distance to `v`.
///
/// The distance to `v` strictly decreases along the walk, so it visits each
/// vertex at most once and terminates.
pub fn proximity_path<M: MetricSpace>(
    g: &MetricGraph<M::Dist>,
    space: &M,
    u: PointId,
    v: PointId,
) -> Result<RouteResult<M::Dist>> {
    g.ensure_matches(space)?;
    space.try_dist(u, v)?;
    if u == v {
        return Err(Error::Argument(format!("route endpoints coincide at {u}")));
    }
    let mut path = vec![u];
    let mut hops = Vec::new();
    let mut total = M::Dist::zero();
    let mut current = u;
    let mut remaining = space.dist(u, v);
    while current != v {
        // Adjacency is sorted by id, so keeping the first minimum breaks ties by id.
        let mut best: Option<(PointId, M::Dist, &M::Dist)> = None;
        for (w, weight) in g.neighbors(current) {
            let dw = space.dist(*w, v);
            if best.as_ref().is_none_or(|(_, bd, _)| dw < *bd) {
                best = Some((*w, dw, weight));
            }
        }
        match best {
            Some((next, dnext, weight)) if dnext < remaining => {
                hops.push(weight.clone());
                total = total + weight.clone();
                path.push(next);
                current = next;
                remaining = dnext;
            }
            _ => {
                return Ok(RouteResult {
                    path,
                    hop_lengths: hops,
                    total_length: total,
                    status: RouteStatus::LocalMinimum { at: current },
                })
            }
        }
    }
    Ok(RouteResult {
        path,
        hop_lengths: hops,
        total_length: total,
        status: RouteStatus::Reached,
    })
}

/// Length of the part of a reached route that lies in the closed ball
/// `B_r(x)`: the path length between the in-ball vertex farthest from the
/// target and the in-ball vertex closest to it (first occurrence on ties).
/// Zero when fewer than two path vertices are in the ball.
pub fn length_inside_ball<M: MetricSpace>(
    route: &RouteResult<M::Dist>,
    space: &M,
    x: PointId,
    r: &M::Dist,
) -> Result<M::Dist> {
    let v = route.target_reached().ok_or_else(|| {
        Error::Argument("length inside a ball needs a route that reached its target".into())
    })?;
    if *r < M::Dist::zero() {
        return Err(Error::Argument(format!("negative radius {r}")));
    }
    space.try_dist(x, v)?;
    let inside: Vec<(usize, M::Dist)> = route
        .path
        .iter()
        .enumerate()
        .filter(|(_, p)| space.dist(**p, x) <= *r)
        .map(|(k, p)| (k, space.dist(*p, v)))
        .collect();
    if inside.len() < 2 {
        return Ok(M::Dist::zero());
    }
    let pick = |better: fn(&M::Dist, &M::Dist) -> bool| {
        let mut best = &inside[0];
        for cand in &inside[1..] {
            if better(&cand.1, &best.1) {
                best = cand;
            }
        }
        best.0
    };
    let farthest = pick(|a, b| a > b);
    let closest = pick(|a, b| a < b);
    let (lo, hi) = (farthest.min(closest), farthest.max(closest));
    Ok(route.hop_lengths[lo..hi]
        .iter()
        .cloned()
        .fold(M::Dist::zero(), |a, b| a + b))
}

/// Maximum over ordered pairs of `len(PP(u, v)) / d(u, v)`.
///
/// Fails with [`Error::NotNavigable`] when the graph is not a PN-graph.
pub fn greedy_stretch<M: MetricSpace>(
    g: &MetricGraph<M::Dist>,
    space: &M,
) -> Result<StretchReport<M::Dist>> {
    let mut report = greedy_stretch_full(g, space)?;
    report.ratios = None;
    Ok(report)
}

/// Like [`greedy_stretch`], keeping every pair's ratio.
pub fn greedy_stretch_full<M: MetricSpace>(
    g: &MetricGraph<M::Dist>,
    space: &M,
) -> Result<StretchReport<M::Dist>> {
    let verdict = is_pn_graph(g, space)?;
    if let Some((from, to)) = verdict.witness {
        return Err(Error::NotNavigable { from, to });
    }
    let n = g.len();
    let rows = par::map_range(n, |u| {
        space
            .ids()
            .filter(|&v| v.index() != u)
            .map(|v| {
                let route = proximity_path(g, space, PointId(u), v)?;
                let metric = space.dist(PointId(u), v);
                Ok(PairRatio {
                    u: PointId(u),
                    v,
                    ratio: route.total_length.clone() / metric.clone(),
                    path_length: route.total_length,
                    metric_distance: metric,
                })
            })
            .collect::<Result<Vec<_>>>()
    });
    let ratios = rows
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(StretchReport::from_ratios(ratios))
}

/// A reached route that breaks one of the greedy-path guarantees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RouteFault {
    Stuck {
        from: PointId,
        to: PointId,
        at: PointId,
    },
    NotDecreasing {
        from: PointId,
        to: PointId,
        step: usize,
    },
    OutsideBall {
        from: PointId,
        to: PointId,
        vertex: PointId,
    },
    NotAdjacent {
        from: PointId,
        to: PointId,
        step: usize,
    },
}

/// Routes every ordered pair and checks that each route reaches its target
/// along graph edges, with strictly decreasing distance to the target, inside
/// the closed ball `B_{d(u,v)}(v)`. Returns the first fault in pair order.
pub fn audit_routes<M: MetricSpace>(
    g: &MetricGraph<M::Dist>,
    space: &M,
) -> Result<Option<RouteFault>> {
    g.ensure_matches(space)?;
    let per_source = par::map_range(g.len(), |u| -> Result<Option<RouteFault>> {
        let u = PointId(u);
        for v in space.ids().filter(|&v| v != u) {
            let route = proximity_path(g, space, u, v)?;
            if let RouteStatus::LocalMinimum { at } = route.status {
                return Ok(Some(RouteFault::Stuck { from: u, to: v, at }));
            }
            let radius = space.dist(u, v);
            for (k, w) in route.path.windows(2).enumerate() {
                if !g.has_edge(w[0], w[1]) {
                    return Ok(Some(RouteFault::NotAdjacent {
                        from: u,
                        to: v,
                        step: k,
                    }));
                }
                if space.dist(w[1], v) >= space.dist(w[0], v) {
                    return Ok(Some(RouteFault::NotDecreasing {
                        from: u,
                        to: v,
                        step: k,
                    }));
                }
            }
            if let Some(&p) = route.path.iter().find(|&&p| space.dist(p, v) > radius) {
                return Ok(Some(RouteFault::OutsideBall {
                    from: u,
                    to: v,
                    vertex: p,
                }));
            }
        }
        Ok(None)
    });
    Ok(per_source
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next())
}
