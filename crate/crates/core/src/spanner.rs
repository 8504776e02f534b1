//! All-pairs shortest paths and stretch factors.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::metric::{MetricSpace, PointId};
use crate::par;
use crate::weight::{AsWeight, Rational, Weight};
use num_traits::One;

/// `d_G(u, v)` for all ordered pairs; `None` marks unreachable pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix<W> {
    n: usize,
    data: Vec<Option<W>>,
}

impl<W> DistanceMatrix<W> {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, u: PointId, v: PointId) -> Option<&W> {
        self.data[u.index() * self.n + v.index()].as_ref()
    }

    pub fn row(&self, u: PointId) -> &[Option<W>] {
        &self.data[u.index() * self.n..(u.index() + 1) * self.n]
    }
}

struct Frontier<W> {
    dist: W,
    vertex: PointId,
}

impl<W: Weight> PartialEq for Frontier<W> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<W: Weight> Eq for Frontier<W> {}

impl<W: Weight> PartialOrd for Frontier<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Weight> Ord for Frontier<W> {
    // Reversed: BinaryHeap is a max-heap.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

/// Single-source shortest-path lengths along out-edges.
pub fn dijkstra<W: Weight>(g: &MetricGraph<W>, source: PointId) -> Vec<Option<W>> {
    let mut dist: Vec<Option<W>> = vec![None; g.len()];
    let mut done = vec![false; g.len()];
    let mut heap = BinaryHeap::new();
    dist[source.index()] = Some(W::zero());
    heap.push(Frontier {
        dist: W::zero(),
        vertex: source,
    });
    while let Some(Frontier { dist: d, vertex: u }) = heap.pop() {
        if std::mem::replace(&mut done[u.index()], true) {
            continue;
        }
        for (v, w) in g.neighbors(u) {
            if done[v.index()] {
                continue;
            }
            let cand = d.clone() + w.clone();
            if dist[v.index()].as_ref().is_none_or(|cur| cand < *cur) {
                dist[v.index()] = Some(cand.clone());
                heap.push(Frontier {
                    dist: cand,
                    vertex: *v,
                });
            }
        }
    }
    dist
}

/// Exact all-pairs shortest paths: one Dijkstra per source, sources in parallel.
pub fn shortest_path_lengths<W: Weight>(g: &MetricGraph<W>) -> DistanceMatrix<W> {
    let n = g.len();
    let rows = par::map_range(n, |u| dijkstra(g, PointId(u)));
    DistanceMatrix {
        n,
        data: rows.into_iter().flatten().collect(),
    }
}

/// One pair's contribution to a stretch report.
#[derive(Clone, Debug, PartialEq)]
pub struct PairRatio<W> {
    pub u: PointId,
    pub v: PointId,
    pub path_length: W,
    pub metric_distance: W,
    pub ratio: W,
}

/// Maximum path-to-metric distance ratio over ordered pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct StretchReport<W> {
    pub stretch: W,
    /// First pair (in id order) attaining the maximum; `None` with fewer than two points.
    pub argmax_pair: Option<(PointId, PointId)>,
    pub pair_count: usize,
    pub ratios: Option<Vec<PairRatio<W>>>,
}

impl<W: Weight> StretchReport<W> {
    /// Builds a report from `(u, v, path length, metric distance)` tuples in pair order.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (PointId, PointId, W, W)>) -> Self {
        let mut report = StretchReport {
            stretch: W::one(),
            argmax_pair: None,
            pair_count: 0,
            ratios: None,
        };
        for (u, v, path, metric) in pairs {
            let ratio = path / metric;
            if report.argmax_pair.is_none() || ratio > report.stretch {
                report.stretch = ratio;
                report.argmax_pair = Some((u, v));
            }
            report.pair_count += 1;
        }
        report
    }

    pub(crate) fn from_ratios(ratios: Vec<PairRatio<W>>) -> Self {
        let mut report = Self::from_pairs(
            ratios
                .iter()
                .map(|r| (r.u, r.v, r.path_length.clone(), r.metric_distance.clone())),
        );
        report.ratios = Some(ratios);
        report
    }

    /// One CSV row per pair; empty body unless the report was built with full ratios.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v,path_length,metric_distance,ratio,ratio_decimal\n");
        for r in self.ratios.iter().flatten() {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                r.u,
                r.v,
                r.path_length.to_exact_string(),
                r.metric_distance.to_exact_string(),
                r.ratio.to_exact_string(),
                r.ratio.to_f64()
            );
        }
        out
    }
}

impl<W: Weight> Serialize for StretchReport<W> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StretchReport", 5)?;
        st.serialize_field("stretch", &self.stretch.to_f64())?;
        if W::EXACT {
            st.serialize_field("stretch_exact", &self.stretch.to_exact_string())?;
        }
        st.serialize_field("argmax_pair", &self.argmax_pair)?;
        st.serialize_field("pair_count", &self.pair_count)?;
        if let Some(ratios) = &self.ratios {
            let rows: Vec<_> = ratios
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "u": r.u,
                        "v": r.v,
                        "path_length": serde_json::to_value(AsWeight(&r.path_length)).unwrap_or_default(),
                        "metric_distance": serde_json::to_value(AsWeight(&r.metric_distance)).unwrap_or_default(),
                        "ratio": serde_json::to_value(AsWeight(&r.ratio)).unwrap_or_default(),
                    })
                })
                .collect();
            st.serialize_field("ratios", &rows)?;
        }
        st.end()
    }
}

fn pair_ratios<M: MetricSpace>(
    g: &MetricGraph<M::Dist>,
    space: &M,
) -> Result<Vec<PairRatio<M::Dist>>> {
    g.ensure_matches(space)?;
    let apsp = shortest_path_lengths(g);
    let mut out = Vec::with_capacity(g.len() * g.len().saturating_sub(1));
    for u in space.ids() {
        for v in space.ids().filter(|&v| v != u) {
            let path = apsp
                .get(u, v)
                .cloned()
                .ok_or(Error::Disconnected { from: u, to: v })?;
            let metric = space.dist(u, v);
            out.push(PairRatio {
                u,
                v,
                ratio: path.clone() / metric.clone(),
                path_length: path,
                metric_distance: metric,
            });
        }
    }
    Ok(out)
}

/// Stretch factor `max d_G(u,v) / d(u,v)` over ordered pairs `u != v`.
pub fn stretch<M: MetricSpace>(
    g: &MetricGraph<M::Dist>,
    space: &M,
) -> Result<StretchReport<M::Dist>> {
    let mut report = stretch_full(g, space)?;
    report.ratios = None;
    Ok(report)
}

/// Like [`stretch`], keeping every pair's ratio.
pub fn stretch_full<M: MetricSpace>(
    g: &MetricGraph<M::Dist>,
    space: &M,
) -> Result<StretchReport<M::Dist>> {
    Ok(StretchReport::from_ratios(pair_ratios(g, space)?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpannerVerdict<W> {
    pub holds: bool,
    pub stretch: W,
    pub worst_pair: Option<(PointId, PointId)>,
}

/// Whether `d_G(u,v) <= t d(u,v)` for every pair.
pub fn is_t_spanner<M: MetricSpace>(
    g: &MetricGraph<M::Dist>,
    space: &M,
    t: &M::Dist,
) -> Result<SpannerVerdict<M::Dist>> {
    if *t < M::Dist::one() {
        return Err(Error::Argument(format!("stretch bound t = {t} is below 1")));
    }
    let report = stretch(g, space)?;
    Ok(SpannerVerdict {
        holds: report.stretch <= *t,
        stretch: report.stretch,
        worst_pair: report.argmax_pair,
    })
}

/// Smallest `i` with `H_{i+1} > t`, i.e. the first chain graph `G_i` whose
/// endpoint pair `(f_0, f_inf)` defeats stretch bound `t`.
pub fn min_counterexample_index(t: &Rational) -> u32 {
    let mut h = Rational::one();
    let mut i = 0u32;
    while h <= *t {
        i += 1;
        h += Rational::new(1.into(), (i64::from(i) + 1).into());
    }
    i
}
