//! Planar Delaunay triangulation by incremental insertion.
//!
//! Points are inserted in lexicographic (x, y) order, so each new point lies
//! outside the current hull; it is fanned to the hull edges it sees and the
//! new edges are legalized by flips until every edge passes the
//! empty-circumcircle test. Orientation and in-circle signs come from exact
//! adaptive predicates. Cocircular quadruples are broken by perturbing the
//! lifted heights `x^2 + y^2` infinitesimally, with lower ids perturbed more,
//! which makes the result unique for a given id assignment.

use std::collections::HashMap;

use robust::Coord;

use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::metric::{EuclideanSpace, MetricSpace, PointId};

/// Counter-clockwise triangles of a planar point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    /// Each triangle lists its smallest id first, then the other two in CCW order.
    pub triangles: Vec<[PointId; 3]>,
}

impl Triangulation {
    pub fn to_graph(&self, space: &EuclideanSpace) -> MetricGraph<f64> {
        let mut g = MetricGraph::undirected(space.len());
        for t in &self.triangles {
            for k in 0..3 {
                let (u, v) = (t[k], t[(k + 1) % 3]);
                g.add_edge(u, v, space.dist(u, v))
                    .expect("triangle vertices are distinct");
            }
        }
        g
    }
}

pub fn build_delaunay(space: &EuclideanSpace) -> Result<MetricGraph<f64>> {
    Ok(triangulate(space)?.to_graph(space))
}

pub fn triangulate(space: &EuclideanSpace) -> Result<Triangulation> {
    if space.dim() != 2 {
        return Err(Error::UnsupportedDimension {
            dim: space.dim(),
            required: 2,
            what: "Delaunay triangulation",
        });
    }
    if space.len() < 3 {
        return Err(Error::Degenerate(format!(
            "need at least 3 points, got {}",
            space.len()
        )));
    }
    let pts: Vec<Coord<f64>> = space
        .ids()
        .map(|u| Coord {
            x: space.point(u)[0],
            y: space.point(u)[1],
        })
        .collect();
    let mut mesh = Mesh {
        pts,
        opposite: HashMap::new(),
        stack: Vec::new(),
    };
    mesh.run()?;
    Ok(mesh.triangles())
}

struct Mesh {
    pts: Vec<Coord<f64>>,
    /// Directed edge (a, b) -> c for every CCW triangle (a, b, c).
    opposite: HashMap<(usize, usize), usize>,
    stack: Vec<(usize, usize)>,
}

impl Mesh {
    fn orient(&self, a: usize, b: usize, c: usize) -> f64 {
        robust::orient2d(self.pts[a], self.pts[b], self.pts[c])
    }

    /// Whether `d` is inside the circumcircle of CCW `(a, b, c)`, after
    /// symbolic perturbation. Never ambiguous.
    fn in_circle(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        let det = robust::incircle(self.pts[a], self.pts[b], self.pts[c], self.pts[d]);
        if det != 0.0 {
            return det > 0.0;
        }
        // The determinant is linear in each lifted height; the coefficient of
        // point k's height is the cofactor below. Heights are raised by
        // delta^(rank), lowest id first, so the first nonzero cofactor decides.
        let mut terms = [
            (a, self.orient(d, b, c)),
            (b, self.orient(a, d, c)),
            (c, self.orient(a, b, d)),
            (d, -self.orient(a, b, c)),
        ];
        terms.sort_by_key(|&(id, _)| id);
        terms
            .iter()
            .map(|&(_, s)| s)
            .find(|s| *s != 0.0)
            .is_some_and(|s| s > 0.0)
    }

    fn add_triangle(&mut self, a: usize, b: usize, c: usize) {
        debug_assert!(self.orient(a, b, c) > 0.0);
        self.opposite.insert((a, b), c);
        self.opposite.insert((b, c), a);
        self.opposite.insert((c, a), b);
    }

    fn remove_triangle(&mut self, a: usize, b: usize, c: usize) {
        self.opposite.remove(&(a, b));
        self.opposite.remove(&(b, c));
        self.opposite.remove(&(c, a));
    }

    fn run(&mut self) -> Result<()> {
        let n = self.pts.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            let (p, q) = (self.pts[i], self.pts[j]);
            p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y))
        });
        let (p0, p1) = (order[0], order[1]);
        let m = (2..n)
            .find(|&k| self.orient(p0, p1, order[k]) != 0.0)
            .ok_or_else(|| Error::Degenerate("all points are collinear".into()))?;
        let apex = order[m];

        // Fan the collinear prefix to the first point off its line.
        let ccw = self.orient(p0, p1, apex) > 0.0;
        for w in order[..m].windows(2) {
            let (a, b) = if ccw { (w[0], w[1]) } else { (w[1], w[0]) };
            self.add_triangle(a, b, apex);
            self.stack.extend([(a, b), (b, apex), (apex, a)]);
        }
        let mut hull: Vec<usize> = if ccw {
            order[..=m].to_vec()
        } else {
            std::iter::once(p0)
                .chain(std::iter::once(apex))
                .chain(order[1..m].iter().rev().copied())
                .collect()
        };
        self.legalize();

        for &p in &order[m + 1..] {
            let h = hull.len();
            let visible: Vec<bool> = (0..h)
                .map(|t| self.orient(hull[t], hull[(t + 1) % h], p) < 0.0)
                .collect();
            let start = (0..h)
                .find(|&t| visible[t] && !visible[(t + h - 1) % h])
                .expect("a point beyond the hull sees a proper subset of its edges");
            let run = (0..h).take_while(|&k| visible[(start + k) % h]).count();
            for k in 0..run {
                let (a, b) = (hull[(start + k) % h], hull[(start + k + 1) % h]);
                self.add_triangle(b, a, p);
                self.stack.push((b, a));
            }
            self.legalize();
            // Hull from the chain start: start, p, chain end, then the untouched rest.
            let end = (start + run) % h;
            let mut next = Vec::with_capacity(h + 1);
            next.push(hull[start]);
            next.push(p);
            let mut t = end;
            while t != start {
                next.push(hull[t]);
                t = (t + 1) % h;
            }
            hull = next;
        }
        Ok(())
    }

    fn legalize(&mut self) {
        while let Some((a, b)) = self.stack.pop() {
            let (Some(&c), Some(&d)) = (self.opposite.get(&(a, b)), self.opposite.get(&(b, a)))
            else {
                continue;
            };
            if !self.in_circle(a, b, c, d) {
                continue;
            }
            self.remove_triangle(a, b, c);
            self.remove_triangle(b, a, d);
            self.add_triangle(a, d, c);
            self.add_triangle(d, b, c);
            self.stack.extend([(a, d), (d, b), (b, c), (c, a)]);
        }
    }

    fn triangles(&self) -> Triangulation {
        let mut triangles: Vec<[PointId; 3]> = self
            .opposite
            .iter()
            .filter(|(&(a, b), &c)| a < b && a < c)
            .map(|(&(a, b), &c)| [PointId(a), PointId(b), PointId(c)])
            .collect();
        triangles.sort_unstable();
        Triangulation { triangles }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::{Signed, Zero};

    fn q(x: f64) -> BigRational {
        BigRational::from_float(x).unwrap()
    }
    use std::collections::BTreeSet;

    fn space(pts: &[(f64, f64)]) -> EuclideanSpace {
        EuclideanSpace::new(2, pts.iter().map(|&(x, y)| vec![x, y]).collect()).unwrap()
    }

    /// Coordinates scaled by a common power of two into exact integers.
    struct Exact(Vec<(BigInt, BigInt)>);

    impl Exact {
        fn new(s: &EuclideanSpace) -> Self {
            use num_traits::float::FloatCore;
            let parts: Vec<(i8, u64, i16)> = s
                .ids()
                .flat_map(|u| [s.point(u)[0], s.point(u)[1]])
                .map(|x| {
                    let (m, e, sign) = x.integer_decode();
                    (sign, m, e)
                })
                .collect();
            let min_exp = parts
                .iter()
                .filter(|p| p.1 != 0)
                .map(|p| p.2)
                .min()
                .unwrap_or(0);
            let ints: Vec<BigInt> = parts
                .iter()
                .map(|&(sign, m, e)| {
                    if m == 0 {
                        BigInt::zero()
                    } else {
                        BigInt::from(sign) * (BigInt::from(m) << (e - min_exp) as usize)
                    }
                })
                .collect();
            Exact(
                ints.chunks(2)
                    .map(|c| (c[0].clone(), c[1].clone()))
                    .collect(),
            )
        }

        /// Exact in-circle determinant, independent of `robust`.
        fn incircle(&self, a: PointId, b: PointId, c: PointId, d: PointId) -> BigInt {
            let (dx, dy) = &self.0[d.index()];
            let row = |p: PointId| {
                let (x, y) = (&self.0[p.index()].0 - dx, &self.0[p.index()].1 - dy);
                let l = &x * &x + &y * &y;
                [x, y, l]
            };
            let (r0, r1, r2) = (row(a), row(b), row(c));
            &r0[0] * (&r1[1] * &r2[2] - &r1[2] * &r2[1])
                - &r0[1] * (&r1[0] * &r2[2] - &r1[2] * &r2[0])
                + &r0[2] * (&r1[0] * &r2[1] - &r1[1] * &r2[0])
        }

        fn orient(&self, a: PointId, b: PointId, c: PointId) -> BigInt {
            let ((ax, ay), (bx, by), (cx, cy)) =
                (&self.0[a.index()], &self.0[b.index()], &self.0[c.index()]);
            (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
        }
    }

    /// Edges of all triangles whose circumcircle has no point strictly inside:
    /// the Delaunay edge set for points in general position.
    fn brute_force_edges(s: &EuclideanSpace) -> BTreeSet<(PointId, PointId)> {
        let ex = Exact::new(s);
        let n = s.len();
        let mut edges = BTreeSet::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let (a, b, c) = (PointId(a), PointId(b), PointId(c));
                    let o = ex.orient(a, b, c);
                    if o.is_zero() {
                        continue;
                    }
                    let (b, c) = if o.is_positive() { (b, c) } else { (c, b) };
                    let empty = s
                        .ids()
                        .filter(|&d| d != a && d != b && d != c)
                        .all(|d| !ex.incircle(a, b, c, d).is_positive());
                    if empty {
                        for (u, v) in [(a, b), (b, c), (a, c)] {
                            edges.insert((u.min(v), u.max(v)));
                        }
                    }
                }
            }
        }
        edges
    }

    fn assert_empty_circles(s: &EuclideanSpace, tri: &Triangulation) {
        let ex = Exact::new(s);
        for t in &tri.triangles {
            assert!(ex.orient(t[0], t[1], t[2]).is_positive(), "{t:?} not CCW");
            for d in s.ids().filter(|d| !t.contains(d)) {
                assert!(
                    !ex.incircle(t[0], t[1], t[2], d).is_positive(),
                    "{d} inside circumcircle of {t:?}"
                );
            }
        }
    }

    /// Number of points on the hull boundary, counting collinear ones.
    fn hull_boundary_count(s: &EuclideanSpace) -> usize {
        let ids: Vec<PointId> = s.ids().collect();
        ids.iter()
            .filter(|&&p| {
                // p is on the boundary iff some line through p has all points on one closed side.
                ids.iter().filter(|&&o| o != p).any(|&o| {
                    let mut pos = false;
                    let mut neg = false;
                    let c = |u: PointId| Coord {
                        x: s.point(u)[0],
                        y: s.point(u)[1],
                    };
                    for &r in &ids {
                        let v = robust::orient2d(c(p), c(o), c(r));
                        pos |= v > 0.0;
                        neg |= v < 0.0;
                        if pos && neg {
                            break;
                        }
                    }
                    !(pos && neg)
                })
            })
            .count()
    }

    #[test]
    fn single_triangle() {
        let s = space(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        let g = build_delaunay(&s).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(
            triangulate(&s).unwrap().triangles,
            vec![[PointId(0), PointId(1), PointId(2)]]
        );
    }

    #[test]
    fn four_points_match_brute_force() {
        let s = space(&[(0.0, 0.0), (2.0, 0.0), (1.0, 1.0), (1.0, 3.0)]);
        let g = build_delaunay(&s).unwrap();
        assert_eq!(g.edge_set(), brute_force_edges(&s));
        // (1,1) is interior, so it joins all three hull vertices.
        assert_eq!(g.edge_count(), 6);
        let s = space(&[(0.0, 0.0), (2.0, 0.0), (3.0, 2.0), (1.0, 3.0)]);
        assert_eq!(
            build_delaunay(&s).unwrap().edge_set(),
            brute_force_edges(&s)
        );
        assert_eq!(build_delaunay(&s).unwrap().edge_count(), 5);
    }

    #[test]
    fn random_sets_match_brute_force() {
        for seed in 0..20 {
            let s = crate::generate::random_euclidean(25, 2, seed).unwrap();
            let g = build_delaunay(&s).unwrap();
            assert_eq!(g.edge_set(), brute_force_edges(&s), "seed {seed}");
        }
    }

    #[test]
    fn larger_random_sets_have_empty_circumcircles() {
        for seed in 0..3 {
            let s = crate::generate::random_euclidean(200, 2, 100 + seed).unwrap();
            let tri = triangulate(&s).unwrap();
            assert_empty_circles(&s, &tri);
            // Euler: T = 2n - 2 - h.
            assert_eq!(
                tri.triangles.len(),
                2 * s.len() - 2 - hull_boundary_count(&s)
            );
        }
    }

    #[test]
    fn cocircular_grid_is_triangulated_deterministically() {
        let mut pts = Vec::new();
        for i in 0..6 {
            for j in 0..5 {
                pts.push((i as f64, j as f64));
            }
        }
        let s = space(&pts);
        let tri = triangulate(&s).unwrap();
        assert_empty_circles(&s, &tri);
        assert_eq!(
            tri.triangles.len(),
            2 * s.len() - 2 - hull_boundary_count(&s)
        );
        assert_eq!(tri, triangulate(&s).unwrap());
        // A regular octagon-ish set: all points on one circle.
        let circle: Vec<(f64, f64)> = [
            (1.0, 0.0),
            (0.0, 1.0),
            (-1.0, 0.0),
            (0.0, -1.0),
            (0.6, 0.8),
            (-0.8, 0.6),
            (-0.6, -0.8),
            (0.8, -0.6),
        ]
        .to_vec();
        let s = space(&circle);
        let tri = triangulate(&s).unwrap();
        assert_empty_circles(&s, &tri);
        assert_eq!(tri.triangles.len(), s.len() - 2);
    }

    #[test]
    fn collinear_prefix_and_hull_points() {
        let s = space(&[
            (0.0, 0.0),
            (1.0, 0.0),
            (2.0, 0.0),
            (3.0, 0.0),
            (1.5, 1.0),
            (4.0, 0.0),
            (2.0, -2.0),
        ]);
        let tri = triangulate(&s).unwrap();
        assert_empty_circles(&s, &tri);
        assert_eq!(
            tri.triangles.len(),
            2 * s.len() - 2 - hull_boundary_count(&s)
        );
        assert_eq!(
            build_delaunay(&s).unwrap().edge_set(),
            brute_force_edges(&s)
        );
    }

    #[test]
    fn rejects_degenerate_input() {
        let s = space(&[(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)]);
        assert!(matches!(build_delaunay(&s), Err(Error::Degenerate(_))));
        let s = space(&[(0.0, 0.0), (1.0, 1.0)]);
        assert!(matches!(build_delaunay(&s), Err(Error::Degenerate(_))));
        let s = EuclideanSpace::new(
            3,
            vec![vec![0.0; 3], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]],
        )
        .unwrap();
        assert!(matches!(
            build_delaunay(&s),
            Err(Error::UnsupportedDimension { dim: 3, .. })
        ));
    }

    #[test]
    fn perturbation_matches_a_small_numeric_lift() {
        // Exact cocircular quadruples decided by the symbolic rule must agree
        // with a tiny explicit perturbation of the lifted heights.
        let s = space(&[(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)]);
        let pts: Vec<Coord<f64>> = s
            .ids()
            .map(|u| Coord {
                x: s.point(u)[0],
                y: s.point(u)[1],
            })
            .collect();
        let mesh = Mesh {
            pts,
            opposite: HashMap::new(),
            stack: Vec::new(),
        };
        let delta = BigRational::new(BigInt::from(1), BigInt::from(1u64 << 40));
        let perms = [
            [0, 1, 2, 3],
            [1, 2, 3, 0],
            [0, 1, 3, 2],
            [2, 3, 0, 1],
            [0, 2, 3, 1],
            [3, 0, 1, 2],
        ];
        for [a, b, c, d] in perms {
            let (a, b, c) = if mesh.orient(a, b, c) > 0.0 {
                (a, b, c)
            } else {
                (a, c, b)
            };
            let det = |heights: &[BigRational]| {
                let row = |k: usize| {
                    let x = q(mesh.pts[k].x) - q(mesh.pts[d].x);
                    let y = q(mesh.pts[k].y) - q(mesh.pts[d].y);
                    [x, y, heights[k].clone() - heights[d].clone()]
                };
                let (r0, r1, r2) = (row(a), row(b), row(c));
                r0[0].clone() * (r1[1].clone() * r2[2].clone() - r1[2].clone() * r2[1].clone())
                    - r0[1].clone()
                        * (r1[0].clone() * r2[2].clone() - r1[2].clone() * r2[0].clone())
                    + r0[2].clone()
                        * (r1[0].clone() * r2[1].clone() - r1[1].clone() * r2[0].clone())
            };
            let heights: Vec<BigRational> = (0..4)
                .map(|k| {
                    let (x, y) = (q(mesh.pts[k].x), q(mesh.pts[k].y));
                    x.clone() * x + y.clone() * y + num_traits::pow(delta.clone(), k + 1)
                })
                .collect();
            assert_eq!(
                mesh.in_circle(a, b, c, d),
                det(&heights).is_positive(),
                "({a},{b},{c},{d})"
            );
        }
    }
}
