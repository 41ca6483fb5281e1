//! Distribution search tracing the inner and outer regions.
//!
//! Each bound maps a point of a product of probability simplices to a pentagon.
//! The search evaluates a fixed family of face points (uniform laws on subsets of
//! the alphabets, which is where corner points of these examples live), a batch of
//! flat-Dirichlet samples, and then runs projected gradient ascent on the support
//! function in a spread of directions. Every evaluated point is kept in the trace;
//! the reported region is the convex hull of all traced pentagons.
//!
//! Work is partitioned by sample and restart index and each index owns its RNG
//! stream, so the result does not depend on the worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acmac::{
    inner_point_with, outer_point_with, outer_shape, window_count, BoundResult, Cognition,
    InnerParams, OuterParams,
};
use crate::error::{usage, Error, Result};
use crate::prob::{ConditionalPmf, DelaySet, DiscreteChannel, Pmf};
use crate::region::{direction_grid, support, union_hull, RegionHull, DEFAULT_N_DIRS};

const GRAD_STEP: f64 = 1e-6;
const MAX_HALVINGS: usize = 20;
const MIN_GAIN: f64 = 1e-12;
/// Alphabets up to this size get every nonempty subset as a face seed.
const FULL_SUBSETS_UP_TO: usize = 4;

const STREAM_SAMPLES: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    pub seed: u64,
    /// Gradient-ascent restarts, spread over the direction grid.
    pub restarts: usize,
    pub ascent_steps: usize,
    pub step_size: f64,
    /// Size of the first-quadrant direction grid.
    pub n_dirs: usize,
    /// Flat-Dirichlet samples evaluated before the ascent.
    pub random_samples: usize,
    /// Evaluate uniform laws on alphabet subsets.
    pub face_seeds: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            restarts: 8,
            ascent_steps: 40,
            step_size: 0.5,
            n_dirs: DEFAULT_N_DIRS,
            random_samples: 64,
            face_seeds: true,
        }
    }
}

impl SearchConfig {
    /// Only the explicitly supplied parameters are evaluated.
    pub fn seeds_only() -> Self {
        Self {
            restarts: 0,
            random_samples: 0,
            face_seeds: false,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_dirs < 3 {
            return Err(Error::Config(format!(
                "n_dirs must be at least 3, got {}",
                self.n_dirs
            )));
        }
        if !(self.step_size > 0.0 && self.step_size.is_finite()) {
            return Err(Error::Config(format!(
                "step_size must be positive, got {}",
                self.step_size
            )));
        }
        Ok(())
    }

    /// Direction assigned to restart `r`.
    fn restart_direction(&self, r: usize) -> (f64, f64) {
        let grid = direction_grid(self.n_dirs).expect("validated");
        let k = if self.restarts <= 1 {
            (self.n_dirs - 1) / 2
        } else {
            (r * (self.n_dirs - 1) + (self.restarts - 1) / 2) / (self.restarts - 1)
        };
        grid[k]
    }
}

/// One evaluated parameter point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evaluated<P> {
    pub params: P,
    pub result: BoundResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome<P> {
    pub hull: RegionHull,
    pub trace: Vec<Evaluated<P>>,
}

impl<P> SearchOutcome<P> {
    fn from_trace(trace: Vec<Evaluated<P>>) -> Self {
        let hull = union_hull(trace.iter().map(|e| e.result.pentagon));
        Self { hull, trace }
    }
}

/// A bound over a product of simplices, parameterized by the flat vector `theta`.
trait Problem: Sync {
    type Params: Clone + Send + Sync;
    fn blocks(&self) -> &[usize];
    fn params(&self, theta: &[f64]) -> Result<Self::Params>;
    fn evaluate(&self, params: &Self::Params) -> Result<BoundResult>;
    fn face_seeds(&self) -> Vec<Vec<f64>>;
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    if n <= FULL_SUBSETS_UP_TO {
        (1..(1usize << n))
            .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
            .collect()
    } else {
        let mut out: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        out.push((0..n).collect());
        out
    }
}

fn uniform_on(n: usize, support: &[usize]) -> Vec<f64> {
    let mut v = vec![0.0; n];
    for &i in support {
        v[i] = 1.0 / support.len() as f64;
    }
    v
}

fn split_blocks<'a>(theta: &'a [f64], blocks: &[usize]) -> Vec<&'a [f64]> {
    let mut out = Vec::with_capacity(blocks.len());
    let mut start = 0;
    for &b in blocks {
        out.push(&theta[start..start + b]);
        start += b;
    }
    out
}

/// Euclidean projection onto the probability simplex.
fn project_simplex(v: &mut [f64]) {
    let mut sorted: Vec<f64> = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut tau = 0.0;
    for (k, &s) in sorted.iter().enumerate() {
        cum += s;
        let t = (cum - 1.0) / (k + 1) as f64;
        if s - t > 0.0 {
            tau = t;
        }
    }
    for x in v.iter_mut() {
        *x = (*x - tau).max(0.0);
    }
    let total: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= total);
}

fn project_blocks(theta: &mut [f64], blocks: &[usize]) {
    let mut start = 0;
    for &b in blocks {
        project_simplex(&mut theta[start..start + b]);
        start += b;
    }
}

struct Search<'a, Pb: Problem> {
    problem: &'a Pb,
    cfg: &'a SearchConfig,
}

impl<Pb: Problem> Search<'_, Pb> {
    fn eval(&self, theta: &[f64]) -> Result<Evaluated<Pb::Params>> {
        let params = self.problem.params(theta)?;
        let result = self.problem.evaluate(&params)?;
        Ok(Evaluated { params, result })
    }

    fn objective(&self, theta: &[f64], w: (f64, f64)) -> Result<f64> {
        let e = self.eval(theta)?;
        support(&e.result.pentagon, w.0, w.1)
    }

    fn random_theta(&self, index: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(STREAM_SAMPLES + index as u64);
        self.problem
            .blocks()
            .iter()
            .flat_map(|&b| Pmf::random(&mut rng, b).probs().to_vec())
            .collect()
    }

    fn gradient(&self, theta: &[f64], f0: f64, w: (f64, f64)) -> Result<Vec<f64>> {
        let blocks = self.problem.blocks();
        let mut owner = Vec::with_capacity(theta.len());
        let mut start = 0;
        for &b in blocks {
            owner.extend(std::iter::repeat_n((start, b), b));
            start += b;
        }
        (0..theta.len())
            .into_par_iter()
            .map(|k| {
                let (s, b) = owner[k];
                let mut t = theta.to_vec();
                t[k] += GRAD_STEP;
                let scale = 1.0 + GRAD_STEP;
                t[s..s + b].iter_mut().for_each(|x| *x /= scale);
                Ok((self.objective(&t, w)? - f0) / GRAD_STEP)
            })
            .collect()
    }

    fn ascend(&self, start: Vec<f64>, w: (f64, f64)) -> Result<Vec<Evaluated<Pb::Params>>> {
        let blocks = self.problem.blocks();
        let mut theta = start;
        let mut f = self.objective(&theta, w)?;
        let mut accepted = Vec::new();
        for _ in 0..self.cfg.ascent_steps {
            let g = self.gradient(&theta, f, w)?;
            let mut eta = self.cfg.step_size;
            let mut moved = false;
            for _ in 0..MAX_HALVINGS {
                let mut cand: Vec<f64> = theta.iter().zip(&g).map(|(t, d)| t + eta * d).collect();
                project_blocks(&mut cand, blocks);
                let e = self.eval(&cand)?;
                let fc = support(&e.result.pentagon, w.0, w.1)?;
                if fc > f + MIN_GAIN {
                    theta = cand;
                    f = fc;
                    accepted.push(e);
                    moved = true;
                    break;
                }
                eta *= 0.5;
            }
            if !moved {
                break;
            }
        }
        Ok(accepted)
    }

    fn run(&self, extra: Vec<Vec<f64>>) -> Result<SearchOutcome<Pb::Params>> {
        self.cfg.validate()?;
        let mut starts = extra;
        if self.cfg.face_seeds {
            starts.extend(self.problem.face_seeds());
        }
        starts.extend((0..self.cfg.random_samples).map(|i| self.random_theta(i)));
        if starts.is_empty() && self.cfg.restarts == 0 {
            return usage("search has no seeds, samples or restarts to evaluate");
        }
        let mut trace: Vec<Evaluated<Pb::Params>> = starts
            .par_iter()
            .map(|t| self.eval(t))
            .collect::<Result<_>>()?;

        let restarts: Vec<Vec<Evaluated<Pb::Params>>> = (0..self.cfg.restarts)
            .into_par_iter()
            .map(|r| {
                let w = self.cfg.restart_direction(r);
                let start = self.best_start(&starts, &trace, w)?;
                self.ascend(start, w)
            })
            .collect::<Result<_>>()?;
        trace.extend(restarts.into_iter().flatten());
        Ok(SearchOutcome::from_trace(trace))
    }

    fn best_start(
        &self,
        starts: &[Vec<f64>],
        trace: &[Evaluated<Pb::Params>],
        w: (f64, f64),
    ) -> Result<Vec<f64>> {
        let mut best: Option<(f64, usize)> = None;
        for (i, e) in trace.iter().enumerate() {
            let s = support(&e.result.pentagon, w.0, w.1)?;
            if best.is_none_or(|(b, _)| s > b) {
                best = Some((s, i));
            }
        }
        Ok(match best {
            Some((_, i)) => starts[i].clone(),
            None => self
                .problem
                .blocks()
                .iter()
                .flat_map(|&b| vec![1.0 / b as f64; b])
                .collect(),
        })
    }
}

struct InnerProblem<'a> {
    ch: &'a DiscreteChannel,
    ds: DelaySet,
    cognition: Cognition,
    blocks: Vec<usize>,
}

impl<'a> InnerProblem<'a> {
    fn new(ch: &'a DiscreteChannel, ds: DelaySet, cognition: Cognition) -> Result<Self> {
        let nv = window_count(ch.x1_size(), ds.size())?;
        let mut blocks = vec![ch.x1_size()];
        blocks.extend(std::iter::repeat_n(ch.x2_size(), nv));
        Ok(Self {
            ch,
            ds,
            cognition,
            blocks,
        })
    }

    fn theta_of(params: &InnerParams) -> Vec<f64> {
        let mut t = params.p_x1.probs().to_vec();
        for row in params.p_x2_given_v.rows() {
            t.extend_from_slice(row.probs());
        }
        t
    }
}

impl Problem for InnerProblem<'_> {
    type Params = InnerParams;

    fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    fn params(&self, theta: &[f64]) -> Result<InnerParams> {
        let parts = split_blocks(theta, &self.blocks);
        let p_x1 = Pmf::normalized(parts[0].to_vec())?;
        let rows = parts[1..]
            .iter()
            .map(|r| Pmf::normalized(r.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Ok(InnerParams {
            p_x1,
            p_x2_given_v: ConditionalPmf::new(rows)?,
        })
    }

    fn evaluate(&self, params: &InnerParams) -> Result<BoundResult> {
        inner_point_with(self.ch, self.ds, params, self.cognition)
    }

    fn face_seeds(&self) -> Vec<Vec<f64>> {
        inner_face_params(self.ch, self.ds)
            .iter()
            .map(Self::theta_of)
            .collect()
    }
}

fn inner_face_params(ch: &DiscreteChannel, ds: DelaySet) -> Vec<InnerParams> {
    let (n1, n2) = (ch.x1_size(), ch.x2_size());
    let Ok(nv) = window_count(n1, ds.size()) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for s1 in subsets(n1) {
        let p_x1 = Pmf::uniform_on(n1, &s1).expect("nonempty subset");
        for s2 in subsets(n2) {
            let row = Pmf::new(uniform_on(n2, &s2)).expect("uniform row");
            out.push(InnerParams {
                p_x1: p_x1.clone(),
                p_x2_given_v: ConditionalPmf::constant(row, nv),
            });
        }
    }
    out
}

struct OuterProblem<'a> {
    ch: &'a DiscreteChannel,
    ds: DelaySet,
    cognition: Cognition,
    blocks: Vec<usize>,
}

impl<'a> OuterProblem<'a> {
    fn new(ch: &'a DiscreteChannel, ds: DelaySet, cognition: Cognition) -> Result<Self> {
        let (nu, rows) = outer_shape(ch, ds)?;
        let mut blocks = vec![nu];
        blocks.extend(std::iter::repeat_n(ch.x2_size(), rows));
        Ok(Self {
            ch,
            ds,
            cognition,
            blocks,
        })
    }

    fn theta_of(params: &OuterParams) -> Vec<f64> {
        let mut t = params.p_vtilde.probs().to_vec();
        for row in params.p_x2_causal.rows() {
            t.extend_from_slice(row.probs());
        }
        t
    }
}

impl Problem for OuterProblem<'_> {
    type Params = OuterParams;

    fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    fn params(&self, theta: &[f64]) -> Result<OuterParams> {
        let parts = split_blocks(theta, &self.blocks);
        let p_vtilde = Pmf::normalized(parts[0].to_vec())?;
        let rows = parts[1..]
            .iter()
            .map(|r| Pmf::normalized(r.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Ok(OuterParams {
            p_vtilde,
            p_x2_causal: ConditionalPmf::new(rows)?,
        })
    }

    fn evaluate(&self, params: &OuterParams) -> Result<BoundResult> {
        outer_point_with(self.ch, self.ds, params, self.cognition)
    }

    fn face_seeds(&self) -> Vec<Vec<f64>> {
        inner_face_params(self.ch, self.ds)
            .iter()
            .filter_map(|p| p.product_extension(self.ds).ok())
            .map(|p| Self::theta_of(&p))
            .collect()
    }
}

/// Traced inner-bound search.
pub fn search_inner(
    ch: &DiscreteChannel,
    ds: DelaySet,
    cfg: &SearchConfig,
    cognition: Cognition,
    seeds: &[InnerParams],
) -> Result<SearchOutcome<InnerParams>> {
    let problem = InnerProblem::new(ch, ds, cognition)?;
    for s in seeds {
        s.validate(ch, ds)?;
    }
    let extra = seeds.iter().map(InnerProblem::theta_of).collect();
    Search {
        problem: &problem,
        cfg,
    }
    .run(extra)
}

/// Traced outer-bound search. Every inner parameter in `inner_seeds` enters
/// through its blocked product extension.
pub fn search_outer(
    ch: &DiscreteChannel,
    ds: DelaySet,
    cfg: &SearchConfig,
    cognition: Cognition,
    inner_seeds: &[InnerParams],
) -> Result<SearchOutcome<OuterParams>> {
    let problem = OuterProblem::new(ch, ds, cognition)?;
    let extra = inner_seeds
        .iter()
        .map(|p| {
            p.validate(ch, ds)?;
            Ok(OuterProblem::theta_of(&p.product_extension(ds)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Search {
        problem: &problem,
        cfg,
    }
    .run(extra)
}

pub fn inner_region(ch: &DiscreteChannel, ds: DelaySet, cfg: &SearchConfig) -> Result<RegionHull> {
    Ok(search_inner(ch, ds, cfg, Cognition::Message, &[])?.hull)
}

pub fn outer_region(
    ch: &DiscreteChannel,
    ds: DelaySet,
    cfg: &SearchConfig,
    inner_seeds: &[InnerParams],
) -> Result<RegionHull> {
    Ok(search_outer(ch, ds, cfg, Cognition::Message, inner_seeds)?.hull)
}

pub fn accmac_inner_region(
    ch: &DiscreteChannel,
    ds: DelaySet,
    cfg: &SearchConfig,
) -> Result<RegionHull> {
    Ok(search_inner(ch, ds, cfg, Cognition::Codeword, &[])?.hull)
}

pub fn accmac_outer_region(
    ch: &DiscreteChannel,
    ds: DelaySet,
    cfg: &SearchConfig,
    inner_seeds: &[InnerParams],
) -> Result<RegionHull> {
    Ok(search_outer(ch, ds, cfg, Cognition::Codeword, inner_seeds)?.hull)
}

/// Hull of the inner pentagons of the given parameters.
pub fn region_from_params(
    ch: &DiscreteChannel,
    ds: DelaySet,
    cognition: Cognition,
    params: &[InnerParams],
) -> Result<RegionHull> {
    let pentagons = params
        .iter()
        .map(|p| Ok(inner_point_with(ch, ds, p, cognition)?.pentagon))
        .collect::<Result<Vec<_>>>()?;
    Ok(union_hull(pentagons))
}
