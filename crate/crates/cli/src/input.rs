//! Loading spaces and graphs from command-line arguments.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use pn_spanner::{
    load_points, load_table, max_eps, parse_rational, CounterexampleSpace, EuclideanSpace,
    HammingSpace, LoadedSpace, MetricGraph, PointKind, Rational, TableSpace, Weight,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpaceKind {
    Euclidean,
    Hamming,
    Table,
    Counterexample,
}

/// Where the points come from. File-backed kinds read `--points`; the
/// counterexample family is generated from `--i` and `--eps`.
#[derive(Args, Clone, Debug)]
pub struct SpaceArgs {
    /// Point-set file (or distance table for `--space table`).
    #[arg(long)]
    pub points: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "euclidean")]
    pub space: SpaceKind,
    /// Expected coordinate count; inferred from the file when omitted.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Expected bit-string length; inferred from the file when omitted.
    #[arg(long)]
    pub bits: Option<usize>,
    /// Counterexample index.
    #[arg(long)]
    pub i: Option<u32>,
    /// Counterexample perturbation, `p/q`; defaults to 1/(10(i+1)(i+2)).
    #[arg(long)]
    pub eps: Option<String>,
}

pub enum Space {
    Euclidean(EuclideanSpace),
    Hamming(HammingSpace),
    Table(TableSpace),
    Counterexample(CounterexampleSpace),
}

/// Runs `$body` with `$s` bound to the concrete space, so generic code is
/// instantiated once per distance type.
macro_rules! with_space {
    ($space:expr, $s:ident => $body:expr) => {
        match $space {
            $crate::input::Space::Euclidean($s) => $body,
            $crate::input::Space::Hamming($s) => $body,
            $crate::input::Space::Table($s) => $body,
            $crate::input::Space::Counterexample($s) => $body,
        }
    };
}
pub(crate) use with_space;

pub fn parse_eps(text: &str) -> Result<Rational> {
    parse_rational(text).with_context(|| format!("bad --eps value {text:?}; expected p/q"))
}

pub fn eps_or_default(eps: Option<&str>, i: u32) -> Result<Rational> {
    eps.map(parse_eps).unwrap_or_else(|| Ok(max_eps(i)))
}

impl SpaceArgs {
    pub fn load(&self) -> Result<Space> {
        if self.space == SpaceKind::Counterexample {
            if self.points.is_some() {
                bail!("--points does not apply to --space counterexample");
            }
            let i = self.i.context("--space counterexample needs --i")?;
            let eps = eps_or_default(self.eps.as_deref(), i)?;
            return Ok(Space::Counterexample(CounterexampleSpace::new(i, eps)?));
        }
        let path = self.points.as_deref().context("missing --points")?;
        Ok(match self.space {
            SpaceKind::Euclidean => {
                match load_points(path, PointKind::Euclidean { dim: self.dim })? {
                    LoadedSpace::Euclidean(s) => Space::Euclidean(s),
                    LoadedSpace::Hamming(_) => unreachable!(),
                }
            }
            SpaceKind::Hamming => {
                match load_points(path, PointKind::Hamming { bits: self.bits })? {
                    LoadedSpace::Hamming(s) => Space::Hamming(s),
                    LoadedSpace::Euclidean(_) => unreachable!(),
                }
            }
            SpaceKind::Table => Space::Table(load_table(path)?),
            SpaceKind::Counterexample => unreachable!(),
        })
    }
}

pub fn load_graph<W: Weight>(path: &Path) -> Result<MetricGraph<W>> {
    MetricGraph::load(path).with_context(|| format!("reading graph {}", path.display()))
}

/// Writes to `--out` when given, stdout otherwise.
pub fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
