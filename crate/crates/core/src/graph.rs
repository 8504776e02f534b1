//! Weighted metric graphs and their text file format.
//!
//! File format: a header `directed <n>` or `undirected <n>`, then one edge
//! per line as `u v weight`. Undirected edges appear once with `u < v`.
//! Weights use [`Weight::to_exact_string`], so files round-trip bit-exactly.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::metric::{MetricSpace, PointId};
use crate::weight::Weight;

/// Directed or undirected graph over `0..n` whose weights are metric distances.
///
/// Adjacency lists are kept sorted by neighbor id and never contain
/// self-loops; the implicit zero-weight loop at every vertex is not stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricGraph<W> {
    directed: bool,
    adj: Vec<Vec<(PointId, W)>>,
}

impl<W: Weight> MetricGraph<W> {
    pub fn new(n: usize, directed: bool) -> Self {
        MetricGraph {
            directed,
            adj: vec![Vec::new(); n],
        }
    }

    pub fn directed(n: usize) -> Self {
        Self::new(n, true)
    }

    pub fn undirected(n: usize) -> Self {
        Self::new(n, false)
    }

    /// Vertex count.
    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Out-neighbors of `u` (all neighbors when undirected), sorted by id.
    pub fn neighbors(&self, u: PointId) -> &[(PointId, W)] {
        &self.adj[u.index()]
    }

    pub fn out_degree(&self, u: PointId) -> usize {
        self.adj[u.index()].len()
    }

    pub fn has_edge(&self, u: PointId, v: PointId) -> bool {
        self.adj[u.index()]
            .binary_search_by_key(&v, |(w, _)| *w)
            .is_ok()
    }

    /// Number of arcs when directed, of edges when undirected.
    pub fn edge_count(&self) -> usize {
        let total: usize = self.adj.iter().map(Vec::len).sum();
        if self.directed {
            total
        } else {
            total / 2
        }
    }

    /// Adds `u -> v` (and `v -> u` when undirected). Re-adding an existing
    /// edge is a no-op; self-loops are rejected.
    pub fn add_edge(&mut self, u: PointId, v: PointId, weight: W) -> Result<()> {
        let n = self.len();
        for id in [u, v] {
            if id.index() >= n {
                return Err(Error::OutOfRange { id, n });
            }
        }
        if u == v {
            return Err(Error::Argument(format!(
                "self-loop at {u} is implicit and cannot be stored"
            )));
        }
        self.insert_arc(u, v, weight.clone());
        if !self.directed {
            self.insert_arc(v, u, weight);
        }
        Ok(())
    }

    fn insert_arc(&mut self, u: PointId, v: PointId, weight: W) {
        let list = &mut self.adj[u.index()];
        if let Err(pos) = list.binary_search_by_key(&v, |(w, _)| *w) {
            list.insert(pos, (v, weight));
        }
    }

    /// All stored edges; undirected edges once with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (PointId, PointId, &W)> + '_ {
        self.adj.iter().enumerate().flat_map(move |(u, list)| {
            list.iter()
                .filter(move |(v, _)| self.directed || u < v.index())
                .map(move |(v, w)| (PointId(u), *v, w))
        })
    }

    /// Endpoint pairs of [`MetricGraph::edges`].
    pub fn edge_set(&self) -> BTreeSet<(PointId, PointId)> {
        self.edges().map(|(u, v, _)| (u, v)).collect()
    }

    /// Checks every stored weight against the oracle (within the weight
    /// type's tolerance). Returns the first mismatching arc.
    pub fn check_weights<M>(&self, space: &M) -> Result<(), (PointId, PointId)>
    where
        M: MetricSpace<Dist = W>,
    {
        let tol = W::tolerance();
        for (u, list) in self.adj.iter().enumerate() {
            for (v, w) in list {
                let d = space.dist(PointId(u), *v);
                if w.clone() - d.clone() > tol || d - w.clone() > tol {
                    return Err((PointId(u), *v));
                }
            }
        }
        Ok(())
    }

    pub(crate) fn ensure_matches<M: MetricSpace>(&self, space: &M) -> Result<()> {
        if self.len() != space.len() {
            return Err(Error::SizeMismatch {
                graph: self.len(),
                space: space.len(),
            });
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let kind = if self.directed {
            "directed"
        } else {
            "undirected"
        };
        let _ = writeln!(out, "{kind} {}", self.len());
        for (u, v, w) in self.edges() {
            let _ = writeln!(out, "{u} {v} {}", w.to_exact_string());
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header".into(),
        })?;
        let bad_header = || Error::Parse {
            line,
            message: format!("bad header {header:?}"),
        };
        let mut parts = header.split_whitespace();
        let directed = match parts.next() {
            Some("directed") => true,
            Some("undirected") => false,
            _ => return Err(bad_header()),
        };
        let n: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(bad_header)?;
        if parts.next().is_some() {
            return Err(bad_header());
        }
        let mut graph = Self::new(n, directed);
        for (line, content) in lines {
            let fields: Vec<&str> = content.split_whitespace().collect();
            let [u, v, w] = fields[..] else {
                return Err(Error::Parse {
                    line,
                    message: format!("expected `u v weight`, got {content:?}"),
                });
            };
            let parse_id = |t: &str| {
                t.parse::<usize>().map(PointId).map_err(|_| Error::Parse {
                    line,
                    message: format!("bad vertex id {t:?}"),
                })
            };
            let weight = W::parse_weight(w)
                .filter(|w| *w >= W::zero())
                .ok_or_else(|| Error::Parse {
                    line,
                    message: format!("bad weight {w:?}"),
                })?;
            graph
                .add_edge(parse_id(u)?, parse_id(v)?, weight)
                .map_err(|e| Error::Parse {
                    line,
                    message: e.to_string(),
                })?;
        }
        Ok(graph)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_text(&crate::metric::read(path.as_ref())?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::{ratio, Rational};
    use proptest::prelude::*;

    #[test]
    fn undirected_edges_are_symmetric_and_deduplicated() {
        let mut g = MetricGraph::<f64>::undirected(3);
        g.add_edge(PointId(2), PointId(0), 1.5).unwrap();
        g.add_edge(PointId(0), PointId(2), 1.5).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_edge(PointId(0), PointId(2)) && g.has_edge(PointId(2), PointId(0)));
        assert_eq!(
            g.edges().map(|(u, v, _)| (u.0, v.0)).collect::<Vec<_>>(),
            vec![(0, 2)]
        );
    }

    #[test]
    fn self_loops_are_not_stored() {
        let mut g = MetricGraph::<f64>::directed(2);
        assert!(g.add_edge(PointId(1), PointId(1), 0.0).is_err());
        assert!(matches!(
            g.add_edge(PointId(0), PointId(5), 1.0),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn rational_weights_print_as_fractions() {
        let mut g = MetricGraph::<Rational>::undirected(2);
        g.add_edge(PointId(0), PointId(1), ratio(1, 2) + ratio(1, 1000))
            .unwrap();
        assert_eq!(g.to_text(), "undirected 2\n0 1 501/1000\n");
        assert_eq!(
            MetricGraph::<Rational>::parse_text(&g.to_text()).unwrap(),
            g
        );
    }

    #[test]
    fn malformed_files_are_rejected_with_line_numbers() {
        assert!(matches!(
            MetricGraph::<f64>::parse_text("sideways 3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            MetricGraph::<f64>::parse_text("directed 2\n0 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            MetricGraph::<f64>::parse_text("directed 2\n0 1 1\n0 7 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            MetricGraph::<f64>::parse_text("directed 2\n0 1 -1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    proptest! {
        #[test]
        fn text_round_trip(directed: bool, n in 1usize..12,
                           edges in prop::collection::vec((0usize..12, 0usize..12, 0.0f64..1e3), 0..40)) {
            let mut g = MetricGraph::<f64>::new(n, directed);
            for (u, v, w) in edges {
                let (u, v) = (u % n, v % n);
                if u != v {
                    // Keep undirected weights consistent with the first insertion.
                    if !g.has_edge(PointId(u), PointId(v)) {
                        g.add_edge(PointId(u), PointId(v), w).unwrap();
                    }
                }
            }
            let back = MetricGraph::<f64>::parse_text(&g.to_text()).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
