use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use pn_spanner::generate::{random_euclidean, random_hamming};
use pn_spanner::{
    build_complete, build_counterexample_graph, build_delaunay, build_hsp, check_metric_axioms,
    find_lune_violation, greedy_stretch, greedy_stretch_full, is_pn_graph, proximity_path, stretch,
    stretch_full, symmetrize, verify_family, AxiomViolation, CounterexampleSpace, Error,
    MetricGraph, MetricSpace, PointId, StretchReport, Weight,
};
use serde_json::{json, Value};

use crate::input::{emit, eps_or_default, load_graph, with_space, Space, SpaceArgs};

/// What a command produced, and whether the property it checked held.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    fn pass(text: String) -> Self {
        Outcome { text, passed: true }
    }

    fn json(value: &Value, passed: bool) -> Self {
        Outcome {
            text: format!(
                "{}\n",
                serde_json::to_string_pretty(value).expect("json values serialize")
            ),
            passed,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub fn weight_json<W: Weight>(w: &W) -> Value {
    w.serialize_weight(serde_json::value::Serializer)
        .unwrap_or(Value::Null)
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// Uniform points in the unit cube.
    Euclidean {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Uniform distinct bit strings.
    Hamming {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        bits: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn gen(kind: &GenKind) -> Result<Outcome> {
    let (text, out) = match kind {
        GenKind::Euclidean { n, dim, seed, out } => {
            (random_euclidean(*n, *dim, *seed)?.to_text(), out)
        }
        GenKind::Hamming { n, bits, seed, out } => {
            (random_hamming(*n, *bits, *seed)?.to_text(), out)
        }
    };
    emit(out.as_deref(), &text)?;
    Ok(Outcome::pass(String::new()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Hsp,
    Delaunay,
    Complete,
    Counterexample,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(value_enum)]
    pub kind: GraphKind,
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Write the HSP neighbor-selection rounds as JSON.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Emit the HSP as an undirected graph.
    #[arg(long)]
    pub undirected: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn build(args: &BuildArgs) -> Result<Outcome> {
    if args.trace.is_some() && args.kind != GraphKind::Hsp {
        bail!("--trace applies only to hsp");
    }
    let text = match args.kind {
        GraphKind::Counterexample => {
            let i = args.space.i.context("build counterexample needs --i")?;
            let eps = eps_or_default(args.space.eps.as_deref(), i)?;
            build_counterexample_graph(i, eps)?.0.to_text()
        }
        GraphKind::Delaunay => match args.space.load()? {
            Space::Euclidean(s) => build_delaunay(&s)?.to_text(),
            _ => bail!("delaunay needs --space euclidean"),
        },
        GraphKind::Complete => with_space!(args.space.load()?, s => build_complete(&s).to_text()),
        GraphKind::Hsp => with_space!(args.space.load()?, s => {
            let hsp = build_hsp(&s)?;
            if let Some(path) = &args.trace {
                let traces = serde_json::to_string_pretty(&hsp.traces)?;
                emit(Some(path), &(traces + "\n"))?;
            }
            if args.undirected { symmetrize(&hsp.graph).to_text() } else { hsp.graph.to_text() }
        }),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(Outcome::pass(String::new()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Metric,
    Pn,
    Lune,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(value_enum)]
    pub what: CheckKind,
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub space: SpaceArgs,
}

fn violation_json<W: Weight>(v: &AxiomViolation<W>) -> Value {
    let mut value = match v {
        AxiomViolation::Asymmetric {
            u,
            v,
            forward,
            backward,
        } => json!({
            "kind": "asymmetric", "u": u, "v": v,
            "forward": weight_json(forward), "backward": weight_json(backward),
        }),
        AxiomViolation::NonzeroDiagonal { u, value } => {
            json!({ "kind": "nonzero_diagonal", "u": u, "value": weight_json(value) })
        }
        AxiomViolation::NonPositive { u, v, value } => {
            json!({ "kind": "non_positive", "u": u, "v": v, "value": weight_json(value) })
        }
        AxiomViolation::Triangle {
            x,
            y,
            z,
            direct,
            detour,
        } => json!({
            "kind": "triangle", "x": x, "y": y, "z": z,
            "direct": weight_json(direct), "detour": weight_json(detour),
        }),
    };
    value["message"] = Value::String(v.to_string());
    value
}

fn check_in<M: MetricSpace>(what: CheckKind, graph: Option<&Path>, space: &M) -> Result<Outcome> {
    let needs_graph = || graph.context("this check needs --graph");
    let (passed, body) = match what {
        CheckKind::Metric => {
            let violations = check_metric_axioms(space);
            let body = json!({
                "violation_count": violations.len(),
                "witness": violations.first().map(violation_json),
            });
            (violations.is_empty(), body)
        }
        CheckKind::Pn => {
            let g: MetricGraph<M::Dist> = load_graph(needs_graph()?)?;
            let verdict = is_pn_graph(&g, space)?;
            (verdict.is_pn, json!({ "witness": verdict.witness }))
        }
        CheckKind::Lune => {
            let g: MetricGraph<M::Dist> = load_graph(needs_graph()?)?;
            let witness = find_lune_violation(&g, space)?;
            (witness.is_none(), json!({ "witness": witness }))
        }
    };
    let mut report = json!({ "check": format!("{what:?}").to_lowercase(), "passed": passed });
    report
        .as_object_mut()
        .expect("object")
        .extend(body.as_object().expect("object").clone());
    Ok(Outcome::json(&report, passed))
}

pub fn check(args: &CheckArgs) -> Result<Outcome> {
    with_space!(args.space.load()?, s => check_in(args.what, args.graph.as_deref(), &s))
}

#[derive(Args, Debug)]
pub struct RouteArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long)]
    pub from: usize,
    #[arg(long)]
    pub to: usize,
}

pub fn route(args: &RouteArgs) -> Result<Outcome> {
    with_space!(args.space.load()?, s => {
        let g = load_graph(&args.graph)?;
        let r = proximity_path(&g, &s, PointId(args.from), PointId(args.to))?;
        Ok(Outcome::json(&serde_json::to_value(&r)?, r.reached()))
    })
}

#[derive(Args, Debug)]
pub struct StretchArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Also decide whether the graph is a t-spanner.
    #[arg(long)]
    pub t: Option<String>,
    /// Measure greedy-route length instead of shortest-path length.
    #[arg(long)]
    pub greedy: bool,
    /// Report every pair.
    #[arg(long)]
    pub full: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn summary_csv<W: Weight>(r: &StretchReport<W>) -> String {
    let (u, v) = r
        .argmax_pair
        .map_or((String::new(), String::new()), |(u, v)| {
            (u.to_string(), v.to_string())
        });
    format!(
        "stretch,stretch_decimal,argmax_u,argmax_v,pair_count\n{},{},{u},{v},{}\n",
        r.stretch.to_exact_string(),
        r.stretch.to_f64(),
        r.pair_count
    )
}

fn stretch_in<M: MetricSpace>(args: &StretchArgs, space: &M) -> Result<Outcome> {
    let g: MetricGraph<M::Dist> = load_graph(&args.graph)?;
    let t = match &args.t {
        Some(text) => {
            Some(M::Dist::parse_weight(text).with_context(|| format!("bad --t value {text:?}"))?)
        }
        None => None,
    };
    if let Some(t) = &t {
        if *t < M::Dist::from_u64(1) {
            bail!("--t must be at least 1");
        }
    }
    let measured = match (args.greedy, args.full) {
        (true, true) => greedy_stretch_full(&g, space),
        (true, false) => greedy_stretch(&g, space),
        (false, true) => stretch_full(&g, space),
        (false, false) => stretch(&g, space),
    };
    let report = match measured {
        Ok(r) => r,
        Err(Error::NotNavigable { from, to }) => {
            let report = json!({ "mode": "greedy", "passed": false, "navigable": false, "witness": [from, to] });
            return Ok(Outcome::json(&report, false));
        }
        Err(Error::Disconnected { from, to }) => {
            let report = json!({ "passed": false, "stretch": null, "disconnected": [from, to] });
            return Ok(Outcome::json(&report, false));
        }
        Err(e) => return Err(e.into()),
    };
    let holds = t.as_ref().map(|t| report.stretch <= *t);
    let passed = holds.unwrap_or(true);
    if args.format == Format::Csv {
        let text = if args.full {
            report.to_csv()
        } else {
            summary_csv(&report)
        };
        emit(args.out.as_deref(), &text)?;
        return Ok(Outcome {
            text: String::new(),
            passed,
        });
    }
    let mut value = serde_json::to_value(&report)?;
    value["mode"] = json!(if args.greedy {
        "greedy"
    } else {
        "shortest_path"
    });
    if let Some(t) = &t {
        value["t"] = weight_json(t);
        value["t_spanner"] = json!(holds);
    }
    value["passed"] = json!(passed);
    let out = Outcome::json(&value, passed);
    emit(args.out.as_deref(), &out.text)?;
    Ok(Outcome {
        text: String::new(),
        passed,
    })
}

pub fn stretch_cmd(args: &StretchArgs) -> Result<Outcome> {
    with_space!(args.space.load()?, s => stretch_in(args, &s))
}

#[derive(Subcommand, Debug)]
pub enum CounterexampleCmd {
    /// Check every family claim for i = 0..=i-max.
    Verify {
        #[arg(long, alias = "i")]
        i_max: u32,
        /// Shared perturbation, `p/q`; defaults to the largest valid value for i-max.
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact pairwise distance table of one instance, as CSV.
    Table {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn counterexample(cmd: &CounterexampleCmd) -> Result<Outcome> {
    match cmd {
        CounterexampleCmd::Verify { i_max, eps, out } => {
            let eps = eps_or_default(eps.as_deref(), *i_max)?;
            let report = verify_family(*i_max, &eps)?;
            let outcome = Outcome::json(&serde_json::to_value(&report)?, report.passed);
            emit(out.as_deref(), &outcome.text)?;
            Ok(Outcome {
                text: String::new(),
                passed: outcome.passed,
            })
        }
        CounterexampleCmd::Table { i, eps, out } => {
            let eps = eps_or_default(eps.as_deref(), *i)?;
            emit(
                out.as_deref(),
                &CounterexampleSpace::new(*i, eps)?.distance_table_csv(),
            )?;
            Ok(Outcome::pass(String::new()))
        }
    }
}
