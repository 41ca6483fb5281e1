//! Monte-Carlo simulation of the random-coding schemes under an unknown,
//! bounded delay.
//!
//! Each trial draws fresh codebooks, so the reported error is the average over
//! the random-code ensemble. Small codebooks are stored and scanned literally.
//! Large ones (the usual case: `2^(nR)` codewords at `n = 256`) are never
//! materialized: only the transmitted codewords are drawn, and the number of
//! other codewords that pass the typicality test is drawn from its exact law,
//! which follows from the codewords being independent of the output.

pub mod codebook;
pub mod decode;
pub mod typicality;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acmac::{Cognition, InnerParams};
use crate::error::{Error, Result};
use crate::format::fmt9;
use crate::prob::{DelaySet, DiscreteChannel};

pub use codebook::{
    block_output_prob, sigma_shift, sliding_window_v, transmit, CodebookSize, Codebooks,
    Transmission,
};
pub use decode::{decode, Decision, Stage};

use codebook::{channel_output, sample_index, window_indices};
use decode::{decode_with, AnalyticTrial, DelayTargets, Outcome};
use typicality::LnFactorial;

/// Default switch-over between stored codebooks and the analytic decoder.
pub const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DelayPolicy {
    Fixed(i64),
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecoderMode {
    /// Exhaustive when `M1 * M2` is at most the limit, analytic otherwise.
    Auto,
    Exhaustive,
    Analytic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub n: usize,
    pub r1: f64,
    pub r2: f64,
    pub eps: f64,
    pub trials: usize,
    pub seed: u64,
    pub delay_policy: DelayPolicy,
    pub model: Cognition,
    #[serde(default = "default_mode")]
    pub decoder: DecoderMode,
    #[serde(default = "default_limit")]
    pub exhaustive_limit: u64,
}

fn default_mode() -> DecoderMode {
    DecoderMode::Auto
}

fn default_limit() -> u64 {
    DEFAULT_EXHAUSTIVE_LIMIT
}

impl SimConfig {
    pub fn new(n: usize, r1: f64, r2: f64, eps: f64, trials: usize, seed: u64) -> Self {
        Self {
            n,
            r1,
            r2,
            eps,
            trials,
            seed,
            delay_policy: DelayPolicy::Uniform,
            model: Cognition::Message,
            decoder: DecoderMode::Auto,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
        }
    }

    pub fn validate(&self, ds: DelaySet) -> Result<()> {
        if self.n < ds.size() {
            return Err(Error::Config(format!(
                "blocklength {} is shorter than the delay set size {}",
                self.n,
                ds.size()
            )));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::Config(format!(
                "eps must be positive, got {}",
                self.eps
            )));
        }
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        for (name, r) in [("r1", self.r1), ("r2", self.r2)] {
            if !(r >= 0.0 && r.is_finite()) {
                return Err(Error::Config(format!(
                    "{name} must be a nonnegative rate, got {r}"
                )));
            }
        }
        if let DelayPolicy::Fixed(d) = self.delay_policy {
            if !ds.contains(d) {
                return Err(Error::Config(format!(
                    "fixed delay {d} is outside the delay set"
                )));
            }
        }
        Ok(())
    }

    fn exhaustive(&self, s1: CodebookSize, s2: CodebookSize) -> bool {
        match self.decoder {
            DecoderMode::Exhaustive => true,
            DecoderMode::Analytic => false,
            DecoderMode::Auto => match (s1.exact, s2.exact) {
                (Some(a), Some(b)) => a.checked_mul(b).is_some_and(|p| p <= self.exhaustive_limit),
                _ => false,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelayTally {
    pub d: i64,
    pub trials: usize,
    pub errors: usize,
}

/// How the decoded messages relate to the sent ones.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub correct: usize,
    /// A unique but wrong first message was decoded.
    pub wrong_m1: usize,
    /// The first message was right, the second wrong.
    pub wrong_m2: usize,
    pub undecided: usize,
}

/// Failure causes. Joint decoding reports under the first stage.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventTallies {
    pub first_none: usize,
    pub first_ambiguous: usize,
    pub second_none: usize,
    pub second_ambiguous: usize,
    /// Codeword cognition only: the informed encoder saw a codeword shared by
    /// several messages.
    pub not_unique: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub config: SimConfig,
    pub exhaustive: bool,
    pub log2_m1: f64,
    pub log2_m2: f64,
    pub per_delay: Vec<DelayTally>,
    pub trials: usize,
    pub errors: usize,
    pub error_rate: f64,
    /// Normal-approximation 95% half-width of the error rate.
    pub half_width: f64,
    pub confusion: Confusion,
    pub events: EventTallies,
}

impl SimReport {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `delay,trials,errors,error_rate` rows plus an `all` row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("delay,trials,errors,error_rate\n");
        for t in &self.per_delay {
            let rate = if t.trials == 0 {
                0.0
            } else {
                t.errors as f64 / t.trials as f64
            };
            s.push_str(&format!(
                "{},{},{},{}\n",
                t.d,
                t.trials,
                t.errors,
                fmt9(rate)
            ));
        }
        s.push_str(&format!(
            "all,{},{},{}\n",
            self.trials,
            self.errors,
            fmt9(self.error_rate)
        ));
        s
    }
}

struct TrialResult {
    d: i64,
    outcome: Outcome,
    not_unique: bool,
}

struct Runner<'a> {
    ch: &'a DiscreteChannel,
    ds: DelaySet,
    cfg: &'a SimConfig,
    params: &'a InnerParams,
    targets: Vec<DelayTargets>,
    lnf: LnFactorial,
    size1: CodebookSize,
    size2: CodebookSize,
    exhaustive: bool,
}

impl Runner<'_> {
    fn targets(&self, d: i64) -> &DelayTargets {
        &self.targets[(d + self.ds.d_min as i64) as usize]
    }

    fn trial(&self, index: usize) -> Result<TrialResult> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(index as u64);
        let d = match self.cfg.delay_policy {
            DelayPolicy::Fixed(d) => d,
            DelayPolicy::Uniform => {
                let delays = self.ds.delays();
                delays[rng.random_range(0..delays.len())]
            }
        };
        if self.exhaustive {
            self.trial_exhaustive(&mut rng, d)
        } else {
            Ok(self.trial_analytic(&mut rng, d))
        }
    }

    fn trial_exhaustive(&self, rng: &mut ChaCha8Rng, d: i64) -> Result<TrialResult> {
        let (m1, m2) = match (self.size1.exact, self.size2.exact) {
            (Some(a), Some(b)) => (a as usize, b as usize),
            _ => {
                return Err(Error::Config(
                    "codebooks too large to store; use the analytic decoder".into(),
                ))
            }
        };
        let cb = Codebooks::generate(self.params, self.ds, self.cfg.n, m1, m2, rng.random())?;
        let (s1, s2) = (rng.random_range(0..m1), rng.random_range(0..m2));
        let tx = transmit(self.ch, self.ds, &cb, s1, s2, d, self.cfg.model, rng)?;
        let decision = decode_with(self.targets(d), self.ds, &cb, &tx.y, d, self.cfg.model);
        Ok(TrialResult {
            d,
            outcome: Outcome::from_decision(decision, s1, s2),
            not_unique: tx.not_unique,
        })
    }

    fn trial_analytic(&self, rng: &mut ChaCha8Rng, d: i64) -> TrialResult {
        let n = self.cfg.n;
        let x1: Vec<usize> = (0..n)
            .map(|_| sample_index(rng, self.params.p_x1.probs()))
            .collect();
        if self.cfg.model == Cognition::Codeword && self.size1.exact != Some(1) {
            // another message shares this codeword with probability 1 - (1 - P(x1))^(M1 - 1)
            let ln_px1: f64 = x1.iter().map(|&s| self.params.p_x1.get(s).ln()).sum();
            let ln_unique = -(self.size1.ln_others() + (-(-ln_px1.exp()).ln_1p()).ln()).exp();
            if rng.random::<f64>() >= ln_unique.exp() {
                return TrialResult {
                    d,
                    outcome: Outcome::Undecided(Decision::NoCandidate(Stage::First)),
                    not_unique: true,
                };
            }
        }
        let v = window_indices(&x1, self.ds, self.params.p_x1.len());
        let x2: Vec<usize> = v
            .iter()
            .map(|&w| sample_index(rng, self.params.p_x2_given_v.row(w).probs()))
            .collect();
        let shifted = sigma_shift(&x1, d);
        let y = channel_output(self.ch, &shifted, &x2, rng);
        let a = AnalyticTrial {
            t: self.targets(d),
            lnf: &self.lnf,
            size1: self.size1,
            size2: self.size2,
        };
        let outcome = match self.cfg.model {
            Cognition::Message => a.successive(rng, &shifted, &v, &x2, &y),
            Cognition::Codeword => a.joint(rng, &v, &x2, &y),
        };
        TrialResult {
            d,
            outcome,
            not_unique: false,
        }
    }
}

/// Runs `cfg.trials` independent trials. Trial `k` uses its own RNG stream
/// derived from `(cfg.seed, k)`, so the report does not depend on scheduling.
pub fn run_experiment(
    ch: &DiscreteChannel,
    ds: DelaySet,
    cfg: &SimConfig,
    params: &InnerParams,
) -> Result<SimReport> {
    cfg.validate(ds)?;
    params.validate(ch, ds)?;
    let size1 = CodebookSize::new(cfg.n, cfg.r1);
    let size2 = CodebookSize::new(cfg.n, cfg.r2);
    let targets = ds
        .delays()
        .into_iter()
        .map(|d| DelayTargets::new(ch, ds, params, d, cfg.n, cfg.eps))
        .collect::<Result<Vec<_>>>()?;
    let runner = Runner {
        ch,
        ds,
        cfg,
        params,
        targets,
        lnf: LnFactorial::new(cfg.n),
        size1,
        size2,
        exhaustive: cfg.exhaustive(size1, size2),
    };
    let results: Vec<TrialResult> = (0..cfg.trials)
        .into_par_iter()
        .map(|k| runner.trial(k))
        .collect::<Result<_>>()?;

    let mut per_delay: Vec<DelayTally> = ds
        .delays()
        .into_iter()
        .map(|d| DelayTally {
            d,
            trials: 0,
            errors: 0,
        })
        .collect();
    let mut confusion = Confusion::default();
    let mut events = EventTallies::default();
    let mut errors = 0;
    for r in &results {
        let tally = &mut per_delay[(r.d + ds.d_min as i64) as usize];
        tally.trials += 1;
        if r.not_unique {
            events.not_unique += 1;
        }
        match r.outcome {
            Outcome::Correct => confusion.correct += 1,
            Outcome::WrongM1 => confusion.wrong_m1 += 1,
            Outcome::WrongM2 => confusion.wrong_m2 += 1,
            Outcome::Undecided(decision) => {
                confusion.undecided += 1;
                match decision {
                    Decision::NoCandidate(Stage::First) => events.first_none += 1,
                    Decision::Ambiguous(Stage::First) => events.first_ambiguous += 1,
                    Decision::NoCandidate(Stage::Second) => events.second_none += 1,
                    Decision::Ambiguous(Stage::Second) => events.second_ambiguous += 1,
                    Decision::Decoded { .. } => {}
                }
            }
        }
        if r.outcome != Outcome::Correct {
            tally.errors += 1;
            errors += 1;
        }
    }
    let rate = errors as f64 / cfg.trials as f64;
    Ok(SimReport {
        config: cfg.clone(),
        exhaustive: runner.exhaustive,
        log2_m1: size1.log2,
        log2_m2: size2.log2,
        per_delay,
        trials: cfg.trials,
        errors,
        error_rate: rate,
        half_width: 1.96 * (rate * (1.0 - rate) / cfg.trials as f64).sqrt(),
        confusion,
        events,
    })
}
