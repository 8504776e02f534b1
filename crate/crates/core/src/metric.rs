//! Points, metric spaces and the brute-force metric-axiom checker.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::weight::Weight;
use num_traits::Zero;

/// Dense index of a point inside its universe, `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub usize);

impl PointId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for PointId {
    fn from(i: usize) -> Self {
        PointId(i)
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite point universe with a distance oracle.
///
/// `dist` panics on ids outside `0..len()`, the way slice indexing does;
/// [`MetricSpace::try_dist`] is the checked variant.
pub trait MetricSpace: Sync {
    type Dist: Weight;

    fn len(&self) -> usize;

    fn dist(&self, u: PointId, v: PointId) -> Self::Dist;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn try_dist(&self, u: PointId, v: PointId) -> Result<Self::Dist> {
        let n = self.len();
        for id in [u, v] {
            if id.index() >= n {
                return Err(Error::OutOfRange { id, n });
            }
        }
        Ok(self.dist(u, v))
    }

    fn ids(&self) -> std::iter::Map<std::ops::Range<usize>, fn(usize) -> PointId> {
        (0..self.len()).map(PointId as fn(usize) -> PointId)
    }
}

impl<M: MetricSpace + ?Sized> MetricSpace for &M {
    type Dist = M::Dist;

    fn len(&self) -> usize {
        (**self).len()
    }

    fn dist(&self, u: PointId, v: PointId) -> Self::Dist {
        (**self).dist(u, v)
    }
}

/// Points of `R^dim` under the L2 norm.
#[derive(Clone, Debug, PartialEq)]
pub struct EuclideanSpace {
    dim: usize,
    coords: Vec<f64>,
}

impl EuclideanSpace {
    /// Builds a space from per-point coordinate rows; rejects ragged rows,
    /// non-finite coordinates and coincident points.
    pub fn new(dim: usize, rows: Vec<Vec<f64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Parameter("dimension must be positive".into()));
        }
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    line: i + 1,
                    expected: dim,
                    found: row.len(),
                });
            }
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::Parse {
                    line: i + 1,
                    message: "non-finite coordinate".into(),
                });
            }
            coords.extend_from_slice(row);
        }
        let space = EuclideanSpace { dim, coords };
        reject_duplicates(space.len(), |i| space.point(PointId(i)))?;
        Ok(space)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, u: PointId) -> &[f64] {
        &self.coords[u.index() * self.dim..(u.index() + 1) * self.dim]
    }

    /// Point-set file text; coordinates use shortest round-trip decimals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for u in self.ids() {
            let row: Vec<String> = self.point(u).iter().map(|x| x.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl MetricSpace for EuclideanSpace {
    type Dist = f64;

    fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    fn dist(&self, u: PointId, v: PointId) -> f64 {
        self.point(u)
            .iter()
            .zip(self.point(v))
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// Fixed-length bit strings under the Hamming distance.
#[derive(Clone, Debug, PartialEq)]
pub struct HammingSpace {
    bits: usize,
    words_per_point: usize,
    words: Vec<u64>,
}

impl HammingSpace {
    pub fn new(bits: usize, rows: Vec<Vec<bool>>) -> Result<Self> {
        if bits == 0 {
            return Err(Error::Parameter("bit length must be positive".into()));
        }
        let words_per_point = bits.div_ceil(64);
        let mut words = vec![0u64; rows.len() * words_per_point];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != bits {
                return Err(Error::DimensionMismatch {
                    line: i + 1,
                    expected: bits,
                    found: row.len(),
                });
            }
            for (b, &set) in row.iter().enumerate() {
                if set {
                    words[i * words_per_point + b / 64] |= 1 << (b % 64);
                }
            }
        }
        let space = HammingSpace {
            bits,
            words_per_point,
            words,
        };
        reject_duplicates(space.len(), |i| space.words_of(PointId(i)))?;
        Ok(space)
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    fn words_of(&self, u: PointId) -> &[u64] {
        &self.words[u.index() * self.words_per_point..(u.index() + 1) * self.words_per_point]
    }

    pub fn bit_string(&self, u: PointId) -> String {
        let w = self.words_of(u);
        (0..self.bits)
            .map(|b| {
                if w[b / 64] >> (b % 64) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        self.ids().map(|u| self.bit_string(u) + "\n").collect()
    }
}

impl MetricSpace for HammingSpace {
    type Dist = f64;

    fn len(&self) -> usize {
        self.words.len() / self.words_per_point
    }

    fn dist(&self, u: PointId, v: PointId) -> f64 {
        self.words_of(u)
            .iter()
            .zip(self.words_of(v))
            .map(|(a, b)| (a ^ b).count_ones())
            .sum::<u32>() as f64
    }
}

/// An explicit symmetric distance matrix. The triangle inequality is not
/// enforced here; [`check_metric_axioms`] reports any breaks.
#[derive(Clone, Debug, PartialEq)]
pub struct TableSpace {
    n: usize,
    matrix: Vec<f64>,
}

impl TableSpace {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        let mut matrix = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    line: i + 1,
                    expected: n,
                    found: row.len(),
                });
            }
            for (j, &x) in row.iter().enumerate() {
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::InvalidTable(format!(
                        "entry ({i},{j}) = {x} is not a nonnegative number"
                    )));
                }
            }
            matrix.extend_from_slice(row);
        }
        for i in 0..n {
            if matrix[i * n + i] != 0.0 {
                return Err(Error::InvalidTable(format!(
                    "diagonal entry ({i},{i}) is not zero"
                )));
            }
            for j in 0..i {
                if matrix[i * n + j] != matrix[j * n + i] {
                    return Err(Error::InvalidTable(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(TableSpace { n, matrix })
    }
}

impl MetricSpace for TableSpace {
    type Dist = f64;

    fn len(&self) -> usize {
        self.n
    }

    fn dist(&self, u: PointId, v: PointId) -> f64 {
        self.matrix[u.index() * self.n + v.index()]
    }
}

fn reject_duplicates<'a, K: PartialEq + ?Sized + 'a>(
    n: usize,
    key: impl Fn(usize) -> &'a K,
) -> Result<()> {
    // Quadratic, but n stays at desk scale and keys are cheap slices.
    for j in 0..n {
        for i in 0..j {
            if key(i) == key(j) {
                return Err(Error::DuplicatePoint {
                    first: PointId(i),
                    second: PointId(j),
                });
            }
        }
    }
    Ok(())
}

/// One way a distance function fails to be a metric.
#[derive(Clone, Debug, PartialEq)]
pub enum AxiomViolation<W> {
    Asymmetric {
        u: PointId,
        v: PointId,
        forward: W,
        backward: W,
    },
    NonzeroDiagonal {
        u: PointId,
        value: W,
    },
    NonPositive {
        u: PointId,
        v: PointId,
        value: W,
    },
    /// `d(x,z) > d(x,y) + d(y,z)`.
    Triangle {
        x: PointId,
        y: PointId,
        z: PointId,
        direct: W,
        detour: W,
    },
}

impl<W: Weight> fmt::Display for AxiomViolation<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Asymmetric {
                u,
                v,
                forward,
                backward,
            } => {
                write!(f, "d({u},{v}) = {forward} but d({v},{u}) = {backward}")
            }
            AxiomViolation::NonzeroDiagonal { u, value } => write!(f, "d({u},{u}) = {value}"),
            AxiomViolation::NonPositive { u, v, value } => {
                write!(f, "d({u},{v}) = {value} for distinct points")
            }
            AxiomViolation::Triangle {
                x,
                y,
                z,
                direct,
                detour,
            } => {
                write!(
                    f,
                    "d({x},{z}) = {direct} > d({x},{y}) + d({y},{z}) = {detour}"
                )
            }
        }
    }
}

/// Exhaustively checks symmetry, the zero diagonal, positivity and all `n^3`
/// ordered triangle inequalities. Exact spaces compare exactly; float spaces
/// allow [`Weight::tolerance`] of slack. Returns every violation found, in
/// lexicographic order of the offending tuple.
pub fn check_metric_axioms<M: MetricSpace>(space: &M) -> Vec<AxiomViolation<M::Dist>> {
    let n = space.len();
    let tol = M::Dist::tolerance();
    let zero = M::Dist::zero();
    // Row-major matrix so each triple costs additions only.
    let rows: Vec<Vec<M::Dist>> = par::map_range(n, |u| {
        (0..n).map(|v| space.dist(PointId(u), PointId(v))).collect()
    });

    let per_row = par::map_range(n, |x| {
        let mut out = Vec::new();
        let dx = &rows[x];
        let px = PointId(x);
        if dx[x] != zero {
            out.push(AxiomViolation::NonzeroDiagonal {
                u: px,
                value: dx[x].clone(),
            });
        }
        for (y, dxy) in dx.iter().enumerate() {
            if y == x {
                continue;
            }
            let dyx = &rows[y][x];
            if dxy.is_nan()
                || dyx.is_nan()
                || dxy.clone() - dyx.clone() > tol
                || dyx.clone() - dxy.clone() > tol
            {
                out.push(AxiomViolation::Asymmetric {
                    u: px,
                    v: PointId(y),
                    forward: dxy.clone(),
                    backward: dyx.clone(),
                });
            }
            if *dxy <= zero {
                out.push(AxiomViolation::NonPositive {
                    u: px,
                    v: PointId(y),
                    value: dxy.clone(),
                });
            }
        }
        for (y, dxy) in dx.iter().enumerate() {
            let dy = &rows[y];
            for (z, dxz) in dx.iter().enumerate() {
                let detour = dxy.clone() + dy[z].clone();
                if *dxz > detour.clone() + tol.clone() {
                    out.push(AxiomViolation::Triangle {
                        x: px,
                        y: PointId(y),
                        z: PointId(z),
                        direct: dxz.clone(),
                        detour,
                    });
                }
            }
        }
        out
    });
    per_row.into_iter().flatten().collect()
}

/// Payload format of a point-set file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointKind {
    /// Whitespace-separated decimal coordinates; `dim: None` takes the arity of the first row.
    Euclidean { dim: Option<usize> },
    /// 0/1 strings; `bits: None` takes the length of the first row.
    Hamming { bits: Option<usize> },
}

/// A loaded point set of either kind.
#[derive(Clone, Debug, PartialEq)]
pub enum LoadedSpace {
    Euclidean(EuclideanSpace),
    Hamming(HammingSpace),
}

impl LoadedSpace {
    pub fn len(&self) -> usize {
        match self {
            LoadedSpace::Euclidean(s) => s.len(),
            LoadedSpace::Hamming(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Content lines with their 1-based line numbers; skips blanks and `#` comments.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Parses the point-set text format.
pub fn parse_points(text: &str, kind: PointKind) -> Result<LoadedSpace> {
    match kind {
        PointKind::Euclidean { dim } => {
            let mut rows = Vec::new();
            let mut expected = dim;
            for (line, content) in content_lines(text) {
                let row = content
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<f64>()
                            .ok()
                            .filter(|x| x.is_finite())
                            .ok_or_else(|| Error::Parse {
                                line,
                                message: format!("bad coordinate {tok:?}"),
                            })
                    })
                    .collect::<Result<Vec<f64>>>()?;
                let want = *expected.get_or_insert(row.len());
                if row.len() != want {
                    return Err(Error::DimensionMismatch {
                        line,
                        expected: want,
                        found: row.len(),
                    });
                }
                rows.push(row);
            }
            if rows.is_empty() {
                return Err(Error::EmptySpace);
            }
            EuclideanSpace::new(expected.unwrap_or(0), rows).map(LoadedSpace::Euclidean)
        }
        PointKind::Hamming { bits } => {
            let mut rows = Vec::new();
            let mut expected = bits;
            for (line, content) in content_lines(text) {
                let row = content
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(Error::Parse {
                            line,
                            message: format!("bad bit {other:?}"),
                        }),
                    })
                    .collect::<Result<Vec<bool>>>()?;
                let want = *expected.get_or_insert(row.len());
                if row.len() != want {
                    return Err(Error::DimensionMismatch {
                        line,
                        expected: want,
                        found: row.len(),
                    });
                }
                rows.push(row);
            }
            if rows.is_empty() {
                return Err(Error::EmptySpace);
            }
            HammingSpace::new(expected.unwrap_or(0), rows).map(LoadedSpace::Hamming)
        }
    }
}

/// Reads a point-set file. Duplicate points are rejected, naming both indices.
pub fn load_points(path: impl AsRef<Path>, kind: PointKind) -> Result<LoadedSpace> {
    parse_points(&read(path.as_ref())?, kind)
}

/// Parses a square distance table: one whitespace-separated row per line.
pub fn parse_table(text: &str) -> Result<TableSpace> {
    let rows = content_lines(text)
        .map(|(line, content)| {
            content
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>().map_err(|_| Error::Parse {
                        line,
                        message: format!("bad distance {tok:?}"),
                    })
                })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    TableSpace::new(rows)
}

pub fn load_table(path: impl AsRef<Path>) -> Result<TableSpace> {
    parse_table(&read(path.as_ref())?)
}

pub(crate) fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("{}: {e}", path.display()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn euclid(rows: &[&[f64]]) -> EuclideanSpace {
        EuclideanSpace::new(rows[0].len(), rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn euclidean_three_four_five() {
        let s = euclid(&[&[0.0, 0.0], &[3.0, 4.0]]);
        assert_eq!(s.dist(PointId(0), PointId(1)), 5.0);
    }

    #[test]
    fn hamming_counts_differing_bits() {
        let s = match parse_points("1010\n1001\n", PointKind::Hamming { bits: None }).unwrap() {
            LoadedSpace::Hamming(s) => s,
            _ => unreachable!(),
        };
        assert_eq!(s.dist(PointId(0), PointId(1)), 2.0);
        assert_eq!(s.bit_string(PointId(1)), "1001");
    }

    #[test]
    fn out_of_range_ids_are_errors() {
        let s = euclid(&[&[0.0], &[1.0]]);
        assert_eq!(
            s.try_dist(PointId(0), PointId(2)),
            Err(Error::OutOfRange {
                id: PointId(2),
                n: 2
            })
        );
    }

    #[test]
    fn broken_table_reports_the_triple() {
        let t = parse_table("0 1 10\n1 0 1\n10 1 0\n").unwrap();
        let v = check_metric_axioms(&t);
        assert!(v.contains(&AxiomViolation::Triangle {
            x: PointId(0),
            y: PointId(1),
            z: PointId(2),
            direct: 10.0,
            detour: 2.0
        }));
        // (2,1,0) is the mirror image; nothing else breaks.
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn asymmetric_tables_are_rejected_at_construction() {
        assert!(matches!(
            parse_table("0 1\n2 0\n"),
            Err(Error::InvalidTable(_))
        ));
        assert!(matches!(
            parse_table("1 1\n1 0\n"),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn loads_points_with_comments() {
        let s = parse_points(
            "# triangle\n0 0\n1 0\n\n0 1\n",
            PointKind::Euclidean { dim: Some(2) },
        )
        .unwrap();
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn duplicate_rows_name_both_indices() {
        let err = parse_points("0 0\n1 1\n0 0\n", PointKind::Euclidean { dim: None }).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicatePoint {
                first: PointId(0),
                second: PointId(2)
            }
        );
        let err = parse_points("01\n01\n", PointKind::Hamming { bits: None }).unwrap_err();
        assert_eq!(
            err,
            Error::DuplicatePoint {
                first: PointId(0),
                second: PointId(1)
            }
        );
    }

    #[test]
    fn wrong_arity_is_a_dimension_mismatch() {
        let err = parse_points("0 0\n1 0 2\n", PointKind::Euclidean { dim: None }).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                line: 2,
                expected: 2,
                found: 3
            }
        );
        let err = parse_points("0 0 0\n", PointKind::Euclidean { dim: Some(2) }).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                line: 1,
                expected: 2,
                found: 3
            }
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_points("0 0\n# c\n1 x\n", PointKind::Euclidean { dim: None }).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_points("0101\n01a1\n", PointKind::Hamming { bits: None }).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert_eq!(
            parse_points("# nothing\n", PointKind::Hamming { bits: None }),
            Err(Error::EmptySpace)
        );
    }

    proptest! {
        #[test]
        fn euclidean_is_a_metric(pts in prop::collection::vec(prop::collection::vec(-100.0f64..100.0, 3), 1..12)) {
            prop_assume!(EuclideanSpace::new(3, pts.clone()).is_ok());
            let s = EuclideanSpace::new(3, pts).unwrap();
            prop_assert!(check_metric_axioms(&s).is_empty());
        }

        #[test]
        fn hamming_is_an_integer_metric(pts in prop::collection::hash_set(prop::collection::vec(any::<bool>(), 70), 1..10)) {
            let s = HammingSpace::new(70, pts.into_iter().collect()).unwrap();
            prop_assert!(check_metric_axioms(&s).is_empty());
            for u in s.ids() {
                for v in s.ids() {
                    let d = s.dist(u, v);
                    prop_assert_eq!(d.fract(), 0.0);
                    prop_assert_eq!(d, s.dist(v, u));
                }
            }
        }

        #[test]
        fn axis_aligned_distance_is_absolute_value(x in -1e6f64..1e6, dim in 1usize..6, axis in 0usize..6) {
            prop_assume!(x != 0.0);
            let axis = axis % dim;
            let mut p = vec![0.0; dim];
            p[axis] = x;
            let s = EuclideanSpace::new(dim, vec![vec![0.0; dim], p]).unwrap();
            prop_assert_eq!(s.dist(PointId(0), PointId(1)), x.abs());
        }

        #[test]
        fn point_files_round_trip(pts in prop::collection::vec(prop::collection::vec(-1e3f64..1e3, 2), 1..10),
                                  bits in prop::collection::hash_set(prop::collection::vec(any::<bool>(), 9), 1..10)) {
            prop_assume!(EuclideanSpace::new(2, pts.clone()).is_ok());
            let e = EuclideanSpace::new(2, pts).unwrap();
            let back = parse_points(&e.to_text(), PointKind::Euclidean { dim: Some(2) }).unwrap();
            prop_assert_eq!(back, LoadedSpace::Euclidean(e));
            let h = HammingSpace::new(9, bits.into_iter().collect()).unwrap();
            let back = parse_points(&h.to_text(), PointKind::Hamming { bits: Some(9) }).unwrap();
            prop_assert_eq!(back, LoadedSpace::Hamming(h));
        }
    }
}
