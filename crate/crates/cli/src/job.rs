//! Fully resolved command inputs. A job is what the manifest records and what
//! `replay` executes, so it carries everything a rerun needs: the channel, the
//! complete configuration and the seed.

use acmac_core::channels::ChannelFile;
use acmac_core::gaussian::{gaussian_figure_csv, GaussianSpec};
use acmac_core::multiletter::{edge_gap_bound, NLetterLaw};
use acmac_core::{
    accmac_multiletter_point, q_n_point, r_n_point, run_experiment, search_inner, search_outer,
    BoundPentagon, Cognition, Evaluated, InnerParams, RegionHull, SearchConfig, SimConfig,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::output::{csv_with_block, round_floats, Artifact};

pub const TOOL: &str = "acmac";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionKind {
    Inner,
    Outer,
    AccmacInner,
    AccmacOuter,
}

impl RegionKind {
    pub fn cognition(self) -> Cognition {
        match self {
            RegionKind::Inner | RegionKind::Outer => Cognition::Message,
            RegionKind::AccmacInner | RegionKind::AccmacOuter => Cognition::Codeword,
        }
    }

    pub fn is_outer(self) -> bool {
        matches!(self, RegionKind::Outer | RegionKind::AccmacOuter)
    }

    fn label(self) -> &'static str {
        match self {
            RegionKind::Inner => "inner bound",
            RegionKind::Outer => "outer-bound estimate",
            RegionKind::AccmacInner => "ACC-MAC inner bound",
            RegionKind::AccmacOuter => "ACC-MAC outer-bound estimate",
        }
    }

    fn name(self) -> &'static str {
        match self {
            RegionKind::Inner => "inner",
            RegionKind::Outer => "outer",
            RegionKind::AccmacInner => "accmac-inner",
            RegionKind::AccmacOuter => "accmac-outer",
        }
    }
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionJob {
    pub kind: RegionKind,
    pub channel: ChannelFile,
    pub search: SearchConfig,
    /// Outer searches only: seed with every parameter evaluated by an inner
    /// search run under the same configuration.
    #[serde(default = "yes")]
    pub inner_seeding: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaussianJob {
    pub p1: f64,
    pub p2: f64,
    pub n0: f64,
    pub rho_steps: usize,
    pub p2_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultiletterJob {
    pub channel: ChannelFile,
    pub law: NLetterLaw,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateJob {
    pub channel: ChannelFile,
    pub sim: SimConfig,
    pub params: InnerParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Job {
    Region(RegionJob),
    Gaussian(GaussianJob),
    Multiletter(MultiletterJob),
    Simulate(SimulateJob),
}

/// Run record written next to the outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub job: Job,
    pub outputs: Vec<String>,
    /// Per-pentagon parameter dump for region commands.
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub trace: Value,
}

impl Manifest {
    pub fn to_artifact(&self) -> Artifact {
        Artifact::json(
            "manifest.json",
            &serde_json::to_value(self).expect("manifest serializes"),
        )
    }
}

/// Everything a job produced.
pub struct RunOutput {
    pub artifacts: Vec<Artifact>,
    pub manifest: Manifest,
    /// Human-readable lines for the terminal.
    pub summary: Vec<String>,
}

impl Job {
    fn name(&self) -> &'static str {
        match self {
            Job::Region(r) => r.kind.name(),
            Job::Gaussian(_) => "gaussian",
            Job::Multiletter(_) => "multiletter",
            Job::Simulate(_) => "simulate",
        }
    }

    /// Header attached to every output file.
    fn block(&self) -> Value {
        let (config, seed) = match self {
            Job::Region(r) => (
                json!({"search": r.search, "inner_seeding": r.inner_seeding}),
                json!(r.search.seed),
            ),
            Job::Gaussian(g) => (json!(g), Value::Null),
            Job::Multiletter(m) => (
                json!({"n": m.law.n(), "law": law_kind(&m.law)}),
                Value::Null,
            ),
            Job::Simulate(s) => (json!(s.sim), json!(s.sim.seed)),
        };
        round_floats(json!({
            "tool": TOOL,
            "version": VERSION,
            "command": self.name(),
            "config": config,
            "seed": seed,
        }))
    }

    pub fn execute(&self) -> anyhow::Result<RunOutput> {
        let block = self.block();
        let (artifacts, trace, summary) = match self {
            Job::Region(r) => run_region(r, &block)?,
            Job::Gaussian(g) => run_gaussian(g, &block)?,
            Job::Multiletter(m) => run_multiletter(m, &block)?,
            Job::Simulate(s) => run_simulate(s, &block)?,
        };
        let manifest = Manifest {
            tool: TOOL.into(),
            version: VERSION.into(),
            job: self.clone(),
            outputs: artifacts.iter().map(|a| a.name.clone()).collect(),
            trace,
        };
        Ok(RunOutput {
            artifacts,
            manifest,
            summary,
        })
    }
}

fn law_kind(law: &NLetterLaw) -> &'static str {
    match law {
        NLetterLaw::Joint { .. } => "joint",
        NLetterLaw::Iid { .. } => "iid",
    }
}

type Produced = (Vec<Artifact>, Value, Vec<String>);

fn dump<P: Serialize>(trace: &[Evaluated<P>]) -> Value {
    round_floats(serde_json::to_value(trace).expect("trace serializes"))
}

fn region_files(
    block: &Value,
    label: &str,
    hull: &RegionHull,
    n_dirs: usize,
) -> anyhow::Result<Vec<Artifact>> {
    let support = serde_json::to_value(hull.support_grid(n_dirs)?)?;
    let doc = json!({
        "manifest": block,
        "label": label,
        "units": "bits",
        "vertices": hull.to_json(),
        "support": round_floats(support),
    });
    Ok(vec![
        Artifact::new("region.csv", csv_with_block(block, &hull.to_csv())),
        Artifact::json("region.json", &doc),
    ])
}

fn hull_summary(label: &str, hull: &RegionHull) -> anyhow::Result<Vec<String>> {
    let mut lines = vec![format!("{label}: {} vertices", hull.len())];
    lines.extend(
        hull.vertices()
            .iter()
            .map(|v| format!("  ({}, {})", fmt(v.r1), fmt(v.r2))),
    );
    lines.push(format!("  max sum rate {}", fmt(hull.support(1.0, 1.0)?)));
    Ok(lines)
}

fn fmt(x: f64) -> String {
    acmac_core::format::fmt9(x)
}

fn run_region(job: &RegionJob, block: &Value) -> anyhow::Result<Produced> {
    let (ch, ds) = job.channel.to_channel()?;
    job.search.validate()?;
    let cognition = job.kind.cognition();
    let label = job.kind.label();
    let (hull, trace) = if job.kind.is_outer() {
        let seeds: Vec<InnerParams> = if job.inner_seeding {
            search_inner(&ch, ds, &job.search, cognition, &[])?
                .trace
                .into_iter()
                .map(|e| e.params)
                .collect()
        } else {
            Vec::new()
        };
        let out = search_outer(&ch, ds, &job.search, cognition, &seeds)?;
        (out.hull, dump(&out.trace))
    } else {
        let out = search_inner(&ch, ds, &job.search, cognition, &[])?;
        (out.hull, dump(&out.trace))
    };
    let files = region_files(block, label, &hull, job.search.n_dirs)?;
    Ok((files, trace, hull_summary(label, &hull)?))
}

fn run_gaussian(job: &GaussianJob, block: &Value) -> anyhow::Result<Produced> {
    let spec = GaussianSpec::new(job.p1, job.p2, job.n0)?;
    let extra = block.as_object().cloned().unwrap_or_default();
    let csv = gaussian_figure_csv(&spec, job.rho_steps, job.p2_steps, &extra)?;
    let outer = acmac_core::gaussian_outer(&spec, job.rho_steps)?;
    let inner = acmac_core::gaussian_inner(&spec, job.rho_steps, job.p2_steps)?;
    let mut summary = hull_summary("outer", &outer.hull)?;
    summary.extend(hull_summary("inner", &inner.hull)?);
    Ok((
        vec![Artifact::new("gaussian.csv", csv)],
        Value::Null,
        summary,
    ))
}

fn pentagon_json(p: &BoundPentagon) -> Value {
    round_floats(serde_json::to_value(p).expect("pentagon serializes"))
}

fn run_multiletter(job: &MultiletterJob, block: &Value) -> anyhow::Result<Produced> {
    let (ch, ds) = job.channel.to_channel()?;
    let n = job.law.n();
    let r = r_n_point(&ch, ds, &job.law)?;
    let q = q_n_point(&ch, ds, &job.law)?;
    let acc = accmac_multiletter_point(&ch, ds, &job.law)?;
    let gap = (r.a - q.a).abs().max((r.b - q.b).abs());
    let bound = edge_gap_bound(&ch, ds, n);
    let doc = json!({
        "manifest": block,
        "units": "bits",
        "n": n,
        "note": "evaluated at one n-letter law: a certified point of the n-letter region, not the capacity region itself",
        "r_n": pentagon_json(&r),
        "q_n": pentagon_json(&q),
        "accmac_q_n": pentagon_json(&acc),
        "gap": round_floats(json!(gap)),
        "gap_bound": round_floats(json!(bound)),
    });
    let summary = vec![
        format!("r_n: sum {} r2 {}", fmt(r.a), fmt(r.b)),
        format!("q_n: sum {} r2 {}", fmt(q.a), fmt(q.b)),
        format!("accmac q_n: r1 cap {}", fmt(acc.c)),
        format!("edge gap {} (bound {})", fmt(gap), fmt(bound)),
    ];
    Ok((
        vec![Artifact::json("multiletter.json", &doc)],
        Value::Null,
        summary,
    ))
}

fn run_simulate(job: &SimulateJob, block: &Value) -> anyhow::Result<Produced> {
    let (ch, ds) = job.channel.to_channel()?;
    let report = run_experiment(&ch, ds, &job.sim, &job.params)?;
    let mut doc = round_floats(serde_json::to_value(&report)?);
    if let Some(m) = doc.as_object_mut() {
        m.insert("manifest".into(), block.clone());
    }
    let summary = vec![format!(
        "{} errors in {} trials, rate {} +- {} ({} decoder)",
        report.errors,
        report.trials,
        fmt(report.error_rate),
        fmt(report.half_width),
        if report.exhaustive {
            "exhaustive"
        } else {
            "analytic"
        }
    )];
    Ok((
        vec![
            Artifact::json("report.json", &doc),
            Artifact::new("report.csv", csv_with_block(block, &report.to_csv())),
        ],
        Value::Null,
        summary,
    ))
}
