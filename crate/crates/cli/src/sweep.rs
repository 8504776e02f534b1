//! Plot-ready CSV sweeps.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use pn_spanner::generate::{random_euclidean, random_hamming};
use pn_spanner::{
    build_delaunay, build_hsp, harmonic, is_pn_graph, stretch, CounterexampleInstance, MetricGraph,
    MetricSpace, Weight,
};

use crate::input::{emit, eps_or_default};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    /// Rows `i, H_{i+1}, ...` for the counterexample chain graphs.
    Counterexample,
    /// Empirical HSP stretch on random point sets.
    Hsp,
    /// Empirical Delaunay stretch on random planar point sets.
    Delaunay,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RandomSpace {
    Euclidean,
    Hamming,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(value_enum)]
    pub kind: SweepKind,
    /// Largest counterexample index (rows run from 1).
    #[arg(long, default_value_t = 30)]
    pub i: u32,
    /// Shared perturbation, `p/q`; defaults to the largest valid value per row.
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long, value_enum, default_value = "euclidean")]
    pub space: RandomSpace,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 16)]
    pub bits: usize,
    #[arg(long, default_value_t = 50)]
    pub n_min: usize,
    /// Largest point count.
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    #[arg(long, default_value_t = 50)]
    pub n_step: usize,
    /// Random point sets per point count.
    #[arg(long, default_value_t = 10)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpaceSpec {
    Euclidean { dim: usize },
    Hamming { bits: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomGraph {
    Hsp,
    Delaunay,
}

/// Everything that determines a random sweep's output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub n_values: Vec<usize>,
    pub space: SpaceSpec,
    pub graph: RandomGraph,
    pub trials: u64,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_args(args: &SweepArgs) -> Result<Self> {
        let graph = match args.kind {
            SweepKind::Hsp => RandomGraph::Hsp,
            SweepKind::Delaunay => RandomGraph::Delaunay,
            SweepKind::Counterexample => {
                bail!("counterexample sweeps take no random configuration")
            }
        };
        if args.trials == 0 {
            bail!("--trials must be positive");
        }
        if args.n_step == 0 || args.n_min == 0 || args.n_min > args.n {
            bail!("need 0 < --n-min <= --n and --n-step > 0");
        }
        let space = match args.space {
            RandomSpace::Euclidean => SpaceSpec::Euclidean { dim: args.dim },
            RandomSpace::Hamming => SpaceSpec::Hamming { bits: args.bits },
        };
        if graph == RandomGraph::Delaunay && space != (SpaceSpec::Euclidean { dim: 2 }) {
            bail!("delaunay sweeps need --space euclidean --dim 2");
        }
        Ok(ExperimentConfig {
            seed: args.seed,
            n_values: (args.n_min..=args.n).step_by(args.n_step).collect(),
            space,
            graph,
            trials: args.trials,
            out: args.out.clone(),
        })
    }

    /// Seed of one point set; distinct across `(n, trial)` for a fixed base seed.
    pub fn trial_seed(&self, n: usize, trial: u64) -> u64 {
        self.seed.wrapping_add((n as u64) << 32).wrapping_add(trial)
    }

    pub fn run(&self) -> Result<String> {
        let mut out = String::from("n,trial,seed,edges,pn,stretch\n");
        for &n in &self.n_values {
            for trial in 0..self.trials {
                let seed = self.trial_seed(n, trial);
                let (edges, pn, s) = match self.space {
                    SpaceSpec::Euclidean { dim } => {
                        let space = random_euclidean(n, dim, seed)?;
                        let g = match self.graph {
                            RandomGraph::Hsp => build_hsp(&space)?.graph,
                            RandomGraph::Delaunay => build_delaunay(&space)?,
                        };
                        measure(&g, &space)?
                    }
                    SpaceSpec::Hamming { bits } => {
                        let space = random_hamming(n, bits, seed)?;
                        measure(&build_hsp(&space)?.graph, &space)?
                    }
                };
                let _ = writeln!(out, "{n},{trial},{seed},{edges},{pn},{s}");
            }
        }
        Ok(out)
    }
}

fn measure<M: MetricSpace>(g: &MetricGraph<M::Dist>, space: &M) -> Result<(usize, bool, f64)> {
    let pn = is_pn_graph(g, space)?.is_pn;
    Ok((g.edge_count(), pn, stretch(g, space)?.stretch.to_f64()))
}

fn counterexample_rows(i_max: u32, eps: Option<&str>) -> Result<String> {
    if i_max == 0 {
        bail!("--i must be positive");
    }
    let mut out =
        String::from("i,harmonic_decimal,harmonic,endpoint_ratio,stretch_decimal,stretch\n");
    for i in 1..=i_max {
        let instance = CounterexampleInstance::new(i, eps_or_default(eps, i)?)?;
        let s = stretch(&instance.graph, &instance.space)?.stretch;
        let endpoint = instance.endpoint_ratio()?;
        let h = harmonic(i + 1);
        let _ = writeln!(
            out,
            "{i},{},{},{},{},{}",
            h.to_f64(),
            h.to_exact_string(),
            endpoint.to_exact_string(),
            s.to_f64(),
            s.to_exact_string()
        );
    }
    Ok(out)
}

pub fn sweep(args: &SweepArgs) -> Result<()> {
    let text = match args.kind {
        SweepKind::Counterexample => counterexample_rows(args.i, args.eps.as_deref())?,
        SweepKind::Hsp | SweepKind::Delaunay => ExperimentConfig::from_args(args)?.run()?,
    };
    emit(args.out.as_deref(), &text)
}
