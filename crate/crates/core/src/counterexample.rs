//! The step-function family whose proximal-navigation graphs have unbounded
//! stretch.
//!
//! For a fixed `eps`, `f_0 = 0`, `f_inf = 1`, and each finite `f_k` (k >= 1)
//! is `f_{k-1}` overridden by three pieces: `0` on `[0, 1/2 - k*eps]`, `1` on
//! `(1/2 - k*eps, 1/2]` and `1/(k+1)` on `(k/(k+1), 1]`. Two functions are
//! at distance equal to the Lebesgue measure of the set where they disagree.
//!
//! The distance has a closed form ([`dx_closed_form`]) and an independent
//! measure computation over explicit step functions ([`dx_measure_oracle`]);
//! everything here is exact rational arithmetic.

use std::cmp::Ordering;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::construct::{build_counterexample_graph, build_hsp, symmetrize};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::metric::{check_metric_axioms, MetricSpace, PointId};
use crate::navigate::is_pn_graph;
use crate::spanner::{shortest_path_lengths, stretch};
use crate::weight::{Rational, Weight};

/// Subscript of a family member: `f_0 < f_1 < ... < f_inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyIndex {
    Finite(u32),
    Infinity,
}

impl fmt::Display for FamilyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyIndex::Finite(k) => write!(f, "f_{k}"),
            FamilyIndex::Infinity => write!(f, "f_inf"),
        }
    }
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Largest admissible `eps` for the graph `G_i`: `1/(10 (i+1) (i+2))`.
/// It is also the default.
pub fn max_eps(i: u32) -> Rational {
    let i = i64::from(i);
    frac(1, 10 * (i + 1) * (i + 2))
}

/// `H_k = 1 + 1/2 + ... + 1/k`, exactly. `H_0 = 0`.
pub fn harmonic(k: u32) -> Rational {
    (1..=i64::from(k)).fold(Rational::zero(), |acc, j| acc + frac(1, j))
}

fn check_eps_for_functions(i_context: u32, eps: &Rational) -> Result<()> {
    if !eps.is_positive() {
        return Err(Error::Parameter(format!(
            "eps must be positive, got {}",
            eps.to_exact_string()
        )));
    }
    // f_k puts a piece at (1/2 - k*eps, 1/2]; its left end must stay inside (0, 1/2).
    let left = frac(1, 2) - int(i64::from(i_context)) * eps.clone();
    if !left.is_positive() {
        return Err(Error::Parameter(format!(
            "eps = {} collapses the pieces of f_{i_context}: 1/2 - {i_context}*eps = {} <= 0",
            eps.to_exact_string(),
            left.to_exact_string()
        )));
    }
    Ok(())
}

/// Checks `0 < eps <= 1/(10 (i+1) (i+2))`.
pub fn check_eps(i: u32, eps: &Rational) -> Result<()> {
    let bound = max_eps(i);
    if !eps.is_positive() || *eps > bound {
        return Err(Error::Parameter(format!(
            "eps = {} outside (0, {}] required for i = {i}",
            eps.to_exact_string(),
            bound.to_exact_string()
        )));
    }
    Ok(())
}

/// A step function on `[0, 1]` with rational breakpoints and values.
///
/// Piece `k` covers `(breakpoints[k], breakpoints[k+1]]`; the first piece
/// also contains `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseConstFn {
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

impl PiecewiseConstFn {
    pub fn constant(value: Rational) -> Self {
        PiecewiseConstFn {
            breakpoints: vec![Rational::zero(), Rational::one()],
            values: vec![value],
        }
    }

    /// Builds a function from explicit pieces, canonicalized.
    pub fn from_pieces(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        let ok = breakpoints.len() == values.len() + 1
            && breakpoints.first() == Some(&Rational::zero())
            && breakpoints.last() == Some(&Rational::one())
            && breakpoints.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(Error::Parameter(
                "breakpoints must increase strictly from 0 to 1, one more than values".into(),
            ));
        }
        let mut f = PiecewiseConstFn {
            breakpoints,
            values,
        };
        f.canonicalize();
        Ok(f)
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn piece_count(&self) -> usize {
        self.values.len()
    }

    /// Value at `x` in `[0, 1]`.
    pub fn eval(&self, x: &Rational) -> Rational {
        let k = self.breakpoints[1..].partition_point(|b| b < x);
        self.values[k.min(self.values.len() - 1)].clone()
    }

    /// Sets the function to `value` on `(lo, hi]` (on `[0, hi]` when `lo = 0`).
    fn overwrite(&mut self, lo: &Rational, hi: &Rational, value: &Rational) {
        debug_assert!(lo < hi && !lo.is_negative() && *hi <= Rational::one());
        self.split_at(lo);
        self.split_at(hi);
        for k in 0..self.values.len() {
            if self.breakpoints[k] >= *lo && self.breakpoints[k + 1] <= *hi {
                self.values[k] = value.clone();
            }
        }
        self.canonicalize();
    }

    fn split_at(&mut self, x: &Rational) {
        match self.breakpoints.binary_search(x) {
            Ok(_) => {}
            Err(pos) => {
                // x lies strictly inside piece pos-1.
                self.breakpoints.insert(pos, x.clone());
                let v = self.values[pos - 1].clone();
                self.values.insert(pos, v);
            }
        }
    }

    fn canonicalize(&mut self) {
        let mut bps = vec![self.breakpoints[0].clone()];
        let mut vals: Vec<Rational> = Vec::with_capacity(self.values.len());
        for (k, v) in self.values.iter().enumerate() {
            let end = &self.breakpoints[k + 1];
            if vals.last() == Some(v) {
                *bps.last_mut().unwrap() = end.clone();
            } else {
                vals.push(v.clone());
                bps.push(end.clone());
            }
        }
        self.breakpoints = bps;
        self.values = vals;
    }
}

/// Materializes `f_k` as a step function by replaying the recursive case
/// structure from `f_0` upwards.
pub fn family_function(k: FamilyIndex, i_context: u32, eps: &Rational) -> Result<PiecewiseConstFn> {
    check_eps_for_functions(i_context, eps)?;
    let k = match k {
        FamilyIndex::Infinity => return Ok(PiecewiseConstFn::constant(Rational::one())),
        FamilyIndex::Finite(k) if k > i_context => {
            return Err(Error::Parameter(format!(
                "f_{k} is outside the context f_0..f_{i_context}"
            )));
        }
        FamilyIndex::Finite(k) => k,
    };
    let mut f = PiecewiseConstFn::constant(Rational::zero());
    let half = frac(1, 2);
    for j in 1..=i64::from(k) {
        let spike_start = half.clone() - int(j) * eps.clone();
        f.overwrite(&frac(j, j + 1), &Rational::one(), &frac(1, j + 1));
        f.overwrite(&spike_start, &half, &Rational::one());
        f.overwrite(&Rational::zero(), &spike_start, &Rational::zero());
    }
    Ok(f)
}

/// Closed-form family distance: `1/(x+2) + (y-x) eps` for finite `x < y`,
/// `1 - x eps` against `f_inf`, `0` on the diagonal.
pub fn dx_closed_form(a: FamilyIndex, b: FamilyIndex, eps: &Rational) -> Rational {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    match (lo, hi) {
        _ if lo == hi => Rational::zero(),
        (FamilyIndex::Finite(x), FamilyIndex::Infinity) => {
            Rational::one() - int(i64::from(x)) * eps.clone()
        }
        (FamilyIndex::Finite(x), FamilyIndex::Finite(y)) => {
            frac(1, i64::from(x) + 2) + int(i64::from(y) - i64::from(x)) * eps.clone()
        }
        (FamilyIndex::Infinity, _) => unreachable!("Infinity is the maximum index"),
    }
}

/// Lebesgue measure of `{x in [0,1] : f(x) != g(x)}`, by merging the two
/// breakpoint lists.
pub fn dx_measure_oracle(f: &PiecewiseConstFn, g: &PiecewiseConstFn) -> Rational {
    let mut measure = Rational::zero();
    let (mut i, mut j) = (0, 0);
    let mut left = Rational::zero();
    while i < f.values.len() && j < g.values.len() {
        let (fe, ge) = (&f.breakpoints[i + 1], &g.breakpoints[j + 1]);
        let right = if fe <= ge { fe.clone() } else { ge.clone() };
        if f.values[i] != g.values[j] {
            measure += right.clone() - left;
        }
        match fe.cmp(ge) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
        left = right;
    }
    measure
}

/// The finite metric space `V_i = {f_0, ..., f_i, f_inf}` under the family
/// distance. Ids `0..=i` are the finite members, id `i + 1` is `f_inf`.
#[derive(Clone, Debug, PartialEq)]
pub struct CounterexampleSpace {
    i: u32,
    eps: Rational,
}

impl CounterexampleSpace {
    pub fn new(i: u32, eps: Rational) -> Result<Self> {
        check_eps(i, &eps)?;
        Ok(CounterexampleSpace { i, eps })
    }

    pub fn with_default_eps(i: u32) -> Self {
        CounterexampleSpace { i, eps: max_eps(i) }
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn eps(&self) -> &Rational {
        &self.eps
    }

    pub fn index_of(&self, u: PointId) -> FamilyIndex {
        match u.index() {
            k if k <= self.i as usize => FamilyIndex::Finite(k as u32),
            k if k == self.i as usize + 1 => FamilyIndex::Infinity,
            _ => panic!("point id {u} out of range for V_{}", self.i),
        }
    }

    pub fn id_of(&self, k: FamilyIndex) -> PointId {
        match k {
            FamilyIndex::Finite(k) => {
                assert!(k <= self.i, "f_{k} not in V_{}", self.i);
                PointId(k as usize)
            }
            FamilyIndex::Infinity => PointId(self.i as usize + 1),
        }
    }

    pub fn infinity(&self) -> PointId {
        self.id_of(FamilyIndex::Infinity)
    }

    /// Step function of member `u`.
    pub fn function(&self, u: PointId) -> PiecewiseConstFn {
        family_function(self.index_of(u), self.i, &self.eps).expect("eps validated at construction")
    }

    /// Table of all pairwise distances as CSV, laid out with `f_0..f_i, f_inf`
    /// as both header row and first column. Entries are `p/q`.
    pub fn distance_table_csv(&self) -> String {
        let labels: Vec<String> = self.ids().map(|u| self.index_of(u).to_string()).collect();
        let mut out = String::new();
        let _ = writeln!(out, ",{}", labels.join(","));
        for u in self.ids() {
            let row: Vec<String> = self
                .ids()
                .map(|v| self.dist(u, v).to_exact_string())
                .collect();
            let _ = writeln!(out, "{},{}", labels[u.index()], row.join(","));
        }
        out
    }
}

impl MetricSpace for CounterexampleSpace {
    type Dist = Rational;

    fn len(&self) -> usize {
        self.i as usize + 2
    }

    fn dist(&self, u: PointId, v: PointId) -> Rational {
        dx_closed_form(self.index_of(u), self.index_of(v), &self.eps)
    }
}

/// `V_i` with the chain graph `E_i = {f_0,f_1}, ..., {f_{i-1},f_i}, {f_i,f_inf}`.
#[derive(Clone, Debug)]
pub struct CounterexampleInstance {
    pub i: u32,
    pub eps: Rational,
    pub space: CounterexampleSpace,
    pub graph: MetricGraph<Rational>,
}

impl CounterexampleInstance {
    pub fn new(i: u32, eps: Rational) -> Result<Self> {
        let (graph, space) = build_counterexample_graph(i, eps.clone())?;
        Ok(CounterexampleInstance {
            i,
            eps,
            space,
            graph,
        })
    }

    /// `d_G(f_0, f_inf) / d(f_0, f_inf)`.
    pub fn endpoint_ratio(&self) -> Result<Rational> {
        let f0 = PointId(0);
        let inf = self.space.infinity();
        let dg = shortest_path_lengths(&self.graph)
            .get(f0, inf)
            .cloned()
            .ok_or(Error::Disconnected { from: f0, to: inf })?;
        Ok(dg / self.space.dist(f0, inf))
    }
}

/// Outcome of one claim for one instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimOutcome {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ClaimOutcome {
    fn pass() -> Self {
        ClaimOutcome {
            passed: true,
            detail: None,
        }
    }

    fn fail(detail: String) -> Self {
        ClaimOutcome {
            passed: false,
            detail: Some(detail),
        }
    }

    fn from_check(ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass()
        } else {
            Self::fail(detail())
        }
    }
}

/// Per-instance results of [`verify_family`].
#[derive(Clone, Debug, Serialize)]
pub struct InstanceReport {
    pub i: u32,
    /// (a) closed form agrees with the measure oracle on every pair.
    pub closed_form_matches_measure: ClaimOutcome,
    /// (b) exact metric axioms.
    pub metric_axioms: ClaimOutcome,
    /// (c) the chain graph is a PN-graph.
    pub proximal_navigation: ClaimOutcome,
    /// (d) the symmetrized HSP of `V_i` is exactly the chain.
    pub hsp_reproduces_chain: ClaimOutcome,
    /// (e) `d_G(f_0, f_inf) / d(f_0, f_inf) = H_{i+1}`.
    pub endpoint_ratio_is_harmonic: ClaimOutcome,
    pub endpoint_ratio: String,
    pub harmonic: String,
    /// Maximum ratio over all pairs, for reference; exceeds `H_{i+1}` once `i >= 3`.
    pub max_stretch: String,
    pub max_stretch_decimal: f64,
}

impl InstanceReport {
    pub fn passed(&self) -> bool {
        [
            &self.closed_form_matches_measure,
            &self.metric_axioms,
            &self.proximal_navigation,
            &self.hsp_reproduces_chain,
            &self.endpoint_ratio_is_harmonic,
        ]
        .iter()
        .all(|c| c.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub i_max: u32,
    pub eps: String,
    pub passed: bool,
    pub instances: Vec<InstanceReport>,
}

/// Runs every family claim for `G_0 ..= G_{i_max}` with one shared `eps`.
pub fn verify_family(i_max: u32, eps: &Rational) -> Result<FamilyReport> {
    // The bound shrinks with i, so validity at i_max covers every smaller i.
    check_eps_for_functions(i_max, eps)?;
    check_eps(i_max, eps)?;
    let instances = (0..=i_max)
        .map(|i| verify_instance(i, eps))
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyReport {
        i_max,
        eps: eps.to_exact_string(),
        passed: instances.iter().all(InstanceReport::passed),
        instances,
    })
}

fn verify_instance(i: u32, eps: &Rational) -> Result<InstanceReport> {
    let inst = CounterexampleInstance::new(i, eps.clone())?;
    let space = &inst.space;

    let functions: Vec<PiecewiseConstFn> = space.ids().map(|u| space.function(u)).collect();
    let mismatch = space
        .ids()
        .flat_map(|u| space.ids().map(move |v| (u, v)))
        .find(|&(u, v)| {
            dx_measure_oracle(&functions[u.index()], &functions[v.index()]) != space.dist(u, v)
        });
    let closed_form_matches_measure = ClaimOutcome::from_check(mismatch.is_none(), || {
        let (u, v) = mismatch.unwrap();
        format!(
            "d({}, {}): closed form {} but measure {}",
            space.index_of(u),
            space.index_of(v),
            space.dist(u, v).to_exact_string(),
            dx_measure_oracle(&functions[u.index()], &functions[v.index()]).to_exact_string()
        )
    });

    let violations = check_metric_axioms(space);
    let metric_axioms = ClaimOutcome::from_check(violations.is_empty(), || {
        format!("{} violations, first: {}", violations.len(), violations[0])
    });

    let verdict = is_pn_graph(&inst.graph, space)?;
    let proximal_navigation = ClaimOutcome::from_check(verdict.is_pn, || {
        let (u, v) = verdict.witness.unwrap();
        format!(
            "no neighbor of {} is closer to {}",
            space.index_of(u),
            space.index_of(v)
        )
    });

    let hsp = symmetrize(&build_hsp(space)?.graph);
    let (got, want) = (hsp.edge_set(), inst.graph.edge_set());
    let hsp_reproduces_chain = ClaimOutcome::from_check(got == want, || {
        let extra: Vec<_> = got.difference(&want).collect();
        let missing: Vec<_> = want.difference(&got).collect();
        format!("HSP edges differ from E_{i}: extra {extra:?}, missing {missing:?}")
    });

    let h = harmonic(i + 1);
    let ratio = inst.endpoint_ratio()?;
    let endpoint_ratio_is_harmonic = ClaimOutcome::from_check(ratio == h, || {
        format!(
            "ratio {} != H_{} = {}",
            ratio.to_exact_string(),
            i + 1,
            h.to_exact_string()
        )
    });
    let report = stretch(&inst.graph, space)?;

    Ok(InstanceReport {
        i,
        closed_form_matches_measure,
        metric_axioms,
        proximal_navigation,
        hsp_reproduces_chain,
        endpoint_ratio_is_harmonic,
        endpoint_ratio: ratio.to_exact_string(),
        harmonic: h.to_exact_string(),
        max_stretch: report.stretch.to_exact_string(),
        max_stretch_decimal: report.stretch.to_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::ratio;
    use FamilyIndex::{Finite, Infinity};

    fn eps() -> Rational {
        ratio(1, 1000)
    }

    #[test]
    fn base_functions() {
        let f0 = family_function(Finite(0), 3, &eps()).unwrap();
        assert_eq!(f0, PiecewiseConstFn::constant(Rational::zero()));
        let finf = family_function(Infinity, 3, &eps()).unwrap();
        assert_eq!(finf.eval(&ratio(1, 3)), Rational::one());
    }

    #[test]
    fn step_values() {
        let f1 = family_function(Finite(1), 2, &eps()).unwrap();
        assert_eq!(f1.eval(&ratio(3, 4)), ratio(1, 2));
        assert_eq!(f1.eval(&ratio(1, 2)), Rational::one());
        assert_eq!(f1.eval(&(ratio(1, 2) - eps())), Rational::zero());
        assert_eq!(f1.eval(&Rational::zero()), Rational::zero());
        let f2 = family_function(Finite(2), 2, &eps()).unwrap();
        assert_eq!(f2.eval(&ratio(7, 10)), ratio(1, 3));
        assert_eq!(f2.eval(&ratio(6, 10)), ratio(1, 2));
        assert_eq!(f2.eval(&ratio(1, 2)), Rational::one());
        assert_eq!(f2.eval(&(ratio(1, 2) - eps())), Rational::one());
        assert_eq!(f2.eval(&(ratio(1, 2) - ratio(2, 1000))), Rational::zero());
        // 0, 1, 1/2, 1/3
        assert_eq!(f2.piece_count(), 4);
    }

    #[test]
    fn table_entries() {
        let e = eps();
        assert_eq!(
            dx_closed_form(Finite(0), Finite(1), &e),
            ratio(1, 2) + e.clone()
        );
        assert_eq!(
            dx_closed_form(Finite(2), Finite(3), &e),
            ratio(1, 4) + e.clone()
        );
        assert_eq!(
            dx_closed_form(Finite(3), Infinity, &e),
            Rational::one() - ratio(3, 1) * e.clone()
        );
        assert_eq!(dx_closed_form(Infinity, Finite(0), &e), Rational::one());
        assert_eq!(
            dx_closed_form(Finite(3), Finite(1), &e),
            ratio(1, 3) + ratio(2, 1) * e.clone()
        );
        assert_eq!(dx_closed_form(Infinity, Infinity, &e), Rational::zero());
    }

    #[test]
    fn measure_oracle_recomputes_table_entries() {
        let e = eps();
        let f = |k| family_function(k, 3, &e).unwrap();
        assert_eq!(
            dx_measure_oracle(&f(Finite(2)), &f(Finite(2))),
            Rational::zero()
        );
        assert_eq!(
            dx_measure_oracle(&f(Finite(1)), &f(Finite(2))),
            ratio(1, 3) + e.clone()
        );
        assert_eq!(
            dx_measure_oracle(&f(Finite(1)), &f(Finite(3))),
            ratio(1, 3) + ratio(2, 1) * e.clone()
        );
        assert_eq!(
            dx_measure_oracle(&f(Finite(0)), &f(Infinity)),
            Rational::one()
        );
    }

    #[test]
    fn rows_match_the_enumerated_distance_lists() {
        // Distances from f_i to f_0, f_1, ..., f_I, f_inf:
        // 1/2 + i e, 1/3 + (i-1) e, ..., 1/(i+1) + e, 0, 1/(i+2) + e, 1/(i+2) + 2e, ..., 1 - i e
        let top = 50u32;
        let e = max_eps(top);
        let space = CounterexampleSpace::new(top, e.clone()).unwrap();
        for i in 0..=top {
            let mut expected = Vec::new();
            for j in 0..i {
                expected.push(ratio(1, i64::from(j) + 2) + ratio(i64::from(i - j), 1) * e.clone());
            }
            expected.push(Rational::zero());
            for step in 1..=(top - i) {
                expected.push(ratio(1, i64::from(i) + 2) + ratio(i64::from(step), 1) * e.clone());
            }
            expected.push(Rational::one() - ratio(i64::from(i), 1) * e.clone());
            let row: Vec<Rational> = space
                .ids()
                .map(|v| space.dist(PointId(i as usize), v))
                .collect();
            assert_eq!(row, expected, "row of f_{i}");
        }
    }

    #[test]
    fn eps_validation() {
        assert!(family_function(Finite(0), 2, &ratio(1, 2)).is_err());
        assert!(family_function(Finite(3), 2, &eps()).is_err());
        assert!(family_function(Finite(1), 2, &Rational::zero()).is_err());
        assert!(CounterexampleSpace::new(10, ratio(1, 1000)).is_err());
        let err = CounterexampleSpace::new(10, ratio(1, 1000))
            .unwrap_err()
            .to_string();
        assert!(err.contains("1/1320"), "{err}");
        assert!(CounterexampleSpace::new(10, ratio(1, 1320)).is_ok());
        assert!(matches!(
            verify_family(3, &ratio(1, 2)),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(0), Rational::zero());
        assert_eq!(harmonic(4), ratio(25, 12));
        assert_eq!(harmonic(11), ratio(83711, 27720));
    }

    #[test]
    fn ids_map_to_indices() {
        let s = CounterexampleSpace::with_default_eps(4);
        assert_eq!(s.len(), 6);
        assert_eq!(s.index_of(PointId(5)), Infinity);
        assert_eq!(s.id_of(Finite(4)), PointId(4));
        assert_eq!(s.infinity(), PointId(5));
    }

    #[test]
    fn table_csv_layout() {
        let s = CounterexampleSpace::new(1, ratio(1, 100)).unwrap();
        assert_eq!(
            s.distance_table_csv(),
            ",f_0,f_1,f_inf\n\
             f_0,0/1,51/100,1/1\n\
             f_1,51/100,0/1,99/100\n\
             f_inf,1/1,99/100,0/1\n"
        );
    }

    #[test]
    fn family_verifies_up_to_ten() {
        let report = verify_family(10, &ratio(1, 2000)).unwrap();
        assert!(report.passed, "{report:#?}");
        assert_eq!(report.instances.len(), 11);
        assert_eq!(report.instances[10].endpoint_ratio, "83711/27720");
    }

    #[test]
    fn g0_is_a_single_edge_with_unit_stretch() {
        let report = verify_family(0, &max_eps(0)).unwrap();
        assert!(report.passed);
        assert_eq!(report.instances[0].max_stretch, "1/1");
        let inst = CounterexampleInstance::new(0, max_eps(0)).unwrap();
        assert_eq!(inst.graph.edge_count(), 1);
    }

    #[test]
    fn piecewise_construction_is_validated() {
        assert!(
            PiecewiseConstFn::from_pieces(vec![ratio(0, 1), ratio(1, 2)], vec![ratio(0, 1)])
                .is_err()
        );
        let f = PiecewiseConstFn::from_pieces(
            vec![ratio(0, 1), ratio(1, 3), ratio(2, 3), ratio(1, 1)],
            vec![ratio(1, 1), ratio(1, 1), ratio(0, 1)],
        )
        .unwrap();
        assert_eq!(f.piece_count(), 2);
        assert_eq!(f.breakpoints()[1], ratio(2, 3));
    }
}
