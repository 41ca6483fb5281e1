//! Front end for the `acmac` binary. Each command is resolved into a [`Job`]
//! before anything is computed; the job is stored in `manifest.json`, and
//! `replay` executes a stored job again.

mod args;
mod job;
mod output;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use acmac_core::channels::ChannelFile;
use acmac_core::multiletter::NLetterLaw;
use acmac_core::sim::{DecoderMode, DelayPolicy};
use acmac_core::{Cognition, DelaySet, DiscreteChannel, InnerParams, Pmf, SearchConfig, SimConfig};
use anyhow::Context;

pub use args::{Cli, Command};
pub use job::{
    GaussianJob, Job, Manifest, MultiletterJob, RegionJob, RegionKind, SimulateJob, TOOL, VERSION,
};
pub use output::Artifact;

/// Bad user input: unreadable or malformed files and inconsistent flags.
#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input_err(msg: impl Into<String>) -> anyhow::Error {
    InputError(msg.into()).into()
}

/// 2 for input errors, 3 for size caps, 4 for anything else.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<acmac_core::Error>() {
            return match e {
                acmac_core::Error::Capacity { .. } => 3,
                _ => 2,
            };
        }
        if cause.is::<InputError>() || cause.is::<std::io::Error>() {
            return 2;
        }
    }
    4
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).map_err(|e| input_err(format!("cannot read {}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    serde_json::from_str(&read(path)?).map_err(|e| input_err(format!("{}: {e}", path.display())))
}

fn load_channel(path: &Path) -> anyhow::Result<(ChannelFile, DiscreteChannel, DelaySet)> {
    let file = ChannelFile::from_json(&read(path)?).with_context(|| path.display().to_string())?;
    let (ch, ds) = file
        .to_channel()
        .with_context(|| path.display().to_string())?;
    Ok((file, ch, ds))
}

fn search_config(a: &args::SearchArgs) -> anyhow::Result<SearchConfig> {
    let mut cfg = match &a.config {
        Some(path) => toml::from_str(&read(path)?)
            .map_err(|e| input_err(format!("{}: {e}", path.display())))?,
        None => SearchConfig::default(),
    };
    if let Some(v) = a.seed {
        cfg.seed = v;
    }
    if let Some(v) = a.restarts {
        cfg.restarts = v;
    }
    if let Some(v) = a.ascent_steps {
        cfg.ascent_steps = v;
    }
    if let Some(v) = a.step_size {
        cfg.step_size = v;
    }
    if let Some(v) = a.n_dirs {
        cfg.n_dirs = v;
    }
    if let Some(v) = a.samples {
        cfg.random_samples = v;
    }
    if a.no_face_seeds {
        cfg.face_seeds = false;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn region_job(kind: RegionKind, a: &args::RegionArgs, inner_seeding: bool) -> anyhow::Result<Job> {
    let (channel, _, _) = load_channel(&a.channel)?;
    Ok(Job::Region(RegionJob {
        kind,
        channel,
        search: search_config(&a.search)?,
        inner_seeding,
    }))
}

fn uniform_params(ch: &DiscreteChannel, ds: DelaySet) -> anyhow::Result<InnerParams> {
    Ok(InnerParams::independent(
        ds,
        Pmf::uniform(ch.x1_size()),
        Pmf::uniform(ch.x2_size()),
    )?)
}

fn load_params(path: &Path, ch: &DiscreteChannel, ds: DelaySet) -> anyhow::Result<InnerParams> {
    let params: InnerParams = read_json(path)?;
    params
        .validate(ch, ds)
        .with_context(|| path.display().to_string())?;
    Ok(params)
}

fn multiletter_job(a: &args::MultiletterArgs) -> anyhow::Result<Job> {
    let (channel, ch, ds) = load_channel(&a.channel)?;
    let law = if let Some(path) = &a.law.joint {
        NLetterLaw::Joint {
            n: a.n,
            probs: read_json(path)?,
        }
    } else {
        let params = match &a.law.iid_params {
            Some(path) => load_params(path, &ch, ds)?,
            None => uniform_params(&ch, ds)?,
        };
        NLetterLaw::Iid { n: a.n, params }
    };
    Ok(Job::Multiletter(MultiletterJob { channel, law }))
}

fn simulate_job(a: &args::SimulateArgs) -> anyhow::Result<Job> {
    let (channel, ch, ds) = load_channel(&a.channel)?;
    let mut sim = SimConfig::new(a.n, a.r1, a.r2, a.eps, a.trials, a.seed);
    sim.delay_policy = match a.delay.as_str() {
        "uniform" => DelayPolicy::Uniform,
        s => DelayPolicy::Fixed(s.parse().map_err(|_| {
            input_err(format!(
                "--delay expects `uniform` or an integer, got `{s}`"
            ))
        })?),
    };
    sim.model = match a.model {
        args::Model::Acmac => Cognition::Message,
        args::Model::Accmac => Cognition::Codeword,
    };
    sim.decoder = match a.decoder {
        args::Decoder::Auto => DecoderMode::Auto,
        args::Decoder::Exhaustive => DecoderMode::Exhaustive,
        args::Decoder::Analytic => DecoderMode::Analytic,
    };
    if let Some(limit) = a.exhaustive_limit {
        sim.exhaustive_limit = limit;
    }
    sim.validate(ds)?;
    let params = match &a.params {
        Some(path) => load_params(path, &ch, ds)?,
        None => uniform_params(&ch, ds)?,
    };
    Ok(Job::Simulate(SimulateJob {
        channel,
        sim,
        params,
    }))
}

fn example(a: &args::ExampleArgs) -> anyhow::Result<Vec<String>> {
    let named = match a.channel {
        args::ExampleChannel::Mod => acmac_core::build_mod_channel(),
        args::ExampleChannel::BinaryAdditive => acmac_core::build_binary_additive(a.p)?,
    };
    let ds = named.delays;
    let ds = DelaySet::new(a.d_min.unwrap_or(ds.d_min), a.d_max.unwrap_or(ds.d_max));
    let text = named.with_delays(ds).to_file().to_json_pretty();
    match &a.out {
        Some(path) => {
            fs::write(path, format!("{text}\n"))
                .with_context(|| format!("writing {}", path.display()))?;
            Ok(vec![format!("wrote {}", path.display())])
        }
        None => Ok(vec![text]),
    }
}

/// Lines printed by `validate`.
pub fn validate_report(path: &Path) -> anyhow::Result<Vec<String>> {
    let file = ChannelFile::from_json(&read(path)?).with_context(|| path.display().to_string())?;
    let (ch, ds) = file
        .to_channel()
        .with_context(|| path.display().to_string())?;
    let worst = file
        .transition
        .iter()
        .flatten()
        .map(|row| (row.iter().sum::<f64>() - 1.0).abs())
        .fold(0.0, f64::max);
    Ok(vec![
        format!("{} x1 symbols, {} x2 symbols", ch.x1_size(), ch.x2_size()),
        format!("delays {}..={}", -(ds.d_min as i64), ds.d_max),
        format!("largest row-sum deviation {worst:.3e}"),
        format!("{} output symbols, D={}, OK", ch.y_size(), ds.size()),
    ])
}

/// Executes `job`, then writes its files and manifest into `out` or prints the
/// first artifact when no directory is given.
pub fn run_job(job: &Job, out: Option<&Path>) -> anyhow::Result<Vec<String>> {
    let run = job.execute()?;
    match out {
        Some(dir) => {
            fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            for a in run
                .artifacts
                .iter()
                .chain(std::iter::once(&run.manifest.to_artifact()))
            {
                let path = dir.join(&a.name);
                fs::write(&path, &a.contents)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let mut lines = run.summary;
            lines.push(format!(
                "wrote {} files to {}",
                run.artifacts.len() + 1,
                dir.display()
            ));
            Ok(lines)
        }
        None => {
            let mut lines = run.summary;
            if let Some(first) = run.artifacts.first() {
                lines.push(first.contents.trim_end().to_string());
            }
            Ok(lines)
        }
    }
}

pub fn load_manifest(path: &Path) -> anyhow::Result<Manifest> {
    let m: Manifest = read_json(path)?;
    if m.tool != TOOL {
        return Err(input_err(format!(
            "{} was not written by {TOOL}",
            path.display()
        )));
    }
    if m.version != VERSION {
        eprintln!(
            "warning: manifest from {TOOL} {}, running {VERSION}",
            m.version
        );
    }
    Ok(m)
}

/// Resolves the command into a job (if it has one) and runs it, returning
/// the lines to print.
pub fn run(cli: Cli) -> anyhow::Result<Vec<String>> {
    if let Some(n) = cli.threads {
        // a second initialization in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let (job, out): (Job, Option<PathBuf>) = match cli.command {
        Command::Example(a) => return example(&a),
        Command::Validate { channel } => return validate_report(&channel),
        Command::Replay { manifest, out } => (load_manifest(&manifest)?.job, out),
        Command::Inner(a) => (region_job(RegionKind::Inner, &a, true)?, a.out),
        Command::AccmacInner(a) => (region_job(RegionKind::AccmacInner, &a, true)?, a.out),
        Command::Outer(a) => (
            region_job(RegionKind::Outer, &a.region, !a.no_inner_seeding)?,
            a.region.out,
        ),
        Command::AccmacOuter(a) => (
            region_job(RegionKind::AccmacOuter, &a.region, !a.no_inner_seeding)?,
            a.region.out,
        ),
        Command::Gaussian(a) => (
            Job::Gaussian(GaussianJob {
                p1: a.p1,
                p2: a.p2,
                n0: a.n0,
                rho_steps: a.rho_steps,
                p2_steps: a.p2_steps,
            }),
            a.out,
        ),
        Command::Multiletter(a) => (multiletter_job(&a)?, a.out),
        Command::Simulate(a) => (simulate_job(&a)?, a.out),
    };
    run_job(&job, out.as_deref())
}
