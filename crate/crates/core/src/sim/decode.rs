//! Typicality decoders: a literal codebook scan, and an analytic counterpart
//! that draws the number of typical impostors directly from its exact law.
//!
//! Successive decoding (message cognition) first looks for the first user's
//! codeword, shifted by the known delay, jointly typical with the output; then
//! for the second user's codeword typical together with the windows of the
//! decoded first codeword and the output. Joint decoding (codeword cognition)
//! looks for a typical pair in one pass.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::codebook::{sigma_shift, window_indices, CodebookSize, Codebooks};
use super::typicality::{ln_multinomial_box, LnFactorial, TypicalBox};
use crate::acmac::{joint_law_inner, Cognition, InnerParams};
use crate::error::Result;
use crate::prob::{DelaySet, DiscreteChannel, Var};

/// Which search failed to produce a unique candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Decoded { m1: usize, m2: usize },
    NoCandidate(Stage),
    Ambiguous(Stage),
}

/// Typicality boxes and sampling laws for one delay.
pub(crate) struct DelayTargets {
    pub nx1: usize,
    pub nx2: usize,
    pub ny: usize,
    pub nv: usize,
    pub x1y: TypicalBox,
    pub vx2y: TypicalBox,
    pub p_x1: Vec<f64>,
    pub p_x2_given_v: Vec<Vec<f64>>,
    pub synchronous: bool,
}

impl DelayTargets {
    pub fn new(
        ch: &DiscreteChannel,
        ds: DelaySet,
        params: &InnerParams,
        d: i64,
        n: usize,
        eps: f64,
    ) -> Result<Self> {
        let joint = joint_law_inner(ch, ds, d, params)?;
        let x1y = joint.marginal(&[Var::X1, Var::Y])?;
        let vx2y = joint.marginal(&[Var::V, Var::X2, Var::Y])?;
        Ok(Self {
            nx1: ch.x1_size(),
            nx2: ch.x2_size(),
            ny: ch.y_size(),
            nv: params.p_x2_given_v.n_rows(),
            x1y: TypicalBox::new(&x1y, n, eps),
            vx2y: TypicalBox::new(&vx2y, n, eps),
            p_x1: params.p_x1.probs().to_vec(),
            p_x2_given_v: params
                .p_x2_given_v
                .rows()
                .iter()
                .map(|r| r.probs().to_vec())
                .collect(),
            synchronous: ds.size() == 1,
        })
    }

    fn x1y_typical(&self, x1_at_channel: &[usize], y: &[usize]) -> bool {
        let mut counts = vec![0; self.nx1 * self.ny];
        for (&a, &b) in x1_at_channel.iter().zip(y) {
            counts[a * self.ny + b] += 1;
        }
        self.x1y.contains(&counts)
    }

    fn vx2y_typical(&self, v: &[usize], x2: &[usize], y: &[usize]) -> bool {
        let mut counts = vec![0; self.nv * self.nx2 * self.ny];
        for ((&a, &b), &c) in v.iter().zip(x2).zip(y) {
            counts[(a * self.nx2 + b) * self.ny + c] += 1;
        }
        self.vx2y.contains(&counts)
    }

    /// `ln P[(x1', y) typical]` for `x1'` i.i.d. and independent of `y`.
    fn ln_q_first(&self, y: &[usize], lnf: &LnFactorial) -> f64 {
        let mut group = vec![0usize; self.ny];
        for &b in y {
            group[b] += 1;
        }
        let mut total = 0.0;
        for (b, &size) in group.iter().enumerate() {
            let lo: Vec<usize> = (0..self.nx1)
                .map(|a| self.x1y.lo[a * self.ny + b])
                .collect();
            let hi: Vec<usize> = (0..self.nx1)
                .map(|a| self.x1y.hi[a * self.ny + b])
                .collect();
            total += ln_multinomial_box(size, &self.p_x1, &lo, &hi, lnf);
            if total == f64::NEG_INFINITY {
                break;
            }
        }
        total
    }

    /// `ln P[(v, x2', y) typical]` for `x2'` drawn letterwise given the true windows.
    fn ln_q_second(&self, v: &[usize], y: &[usize], lnf: &LnFactorial) -> f64 {
        let mut group = vec![0usize; self.nv * self.ny];
        for (&a, &b) in v.iter().zip(y) {
            group[a * self.ny + b] += 1;
        }
        let mut total = 0.0;
        for (g, &size) in group.iter().enumerate() {
            let (w, b) = (g / self.ny, g % self.ny);
            let cell = |s: usize| (w * self.nx2 + s) * self.ny + b;
            let lo: Vec<usize> = (0..self.nx2).map(|s| self.vx2y.lo[cell(s)]).collect();
            let hi: Vec<usize> = (0..self.nx2).map(|s| self.vx2y.hi[cell(s)]).collect();
            total += ln_multinomial_box(size, &self.p_x2_given_v[w], &lo, &hi, lnf);
            if total == f64::NEG_INFINITY {
                break;
            }
        }
        total
    }

    /// Synchronous case only: `ln P[(x1', x2', y) typical]` for a fresh pair
    /// drawn from the codebook distribution, independent of `y`.
    fn ln_q_pair(&self, y: &[usize], lnf: &LnFactorial) -> f64 {
        debug_assert!(self.synchronous);
        let mut group = vec![0usize; self.ny];
        for &b in y {
            group[b] += 1;
        }
        let probs: Vec<f64> = (0..self.nx1 * self.nx2)
            .map(|k| self.p_x1[k / self.nx2] * self.p_x2_given_v[k / self.nx2][k % self.nx2])
            .collect();
        let mut total = 0.0;
        for (b, &size) in group.iter().enumerate() {
            let lo: Vec<usize> = (0..self.nx1 * self.nx2)
                .map(|k| self.vx2y.lo[k * self.ny + b])
                .collect();
            let hi: Vec<usize> = (0..self.nx1 * self.nx2)
                .map(|k| self.vx2y.hi[k * self.ny + b])
                .collect();
            total += ln_multinomial_box(size, &probs, &lo, &hi, lnf);
            if total == f64::NEG_INFINITY {
                break;
            }
        }
        total
    }
}

/// Result of scanning candidates.
enum Scan {
    None,
    Unique(usize),
    Multiple,
}

fn scan(count: usize, mut typical: impl FnMut(usize) -> bool) -> Scan {
    let mut found = None;
    for i in 0..count {
        if typical(i) {
            if found.is_some() {
                return Scan::Multiple;
            }
            found = Some(i);
        }
    }
    found.map_or(Scan::None, Scan::Unique)
}

/// Literal decoder over stored codebooks.
pub(crate) fn decode_with(
    t: &DelayTargets,
    ds: DelaySet,
    cb: &Codebooks,
    y: &[usize],
    d: i64,
    model: Cognition,
) -> Decision {
    let v_of = |m1: usize| window_indices(cb.x1(m1), ds, t.nx1);
    match model {
        Cognition::Message => {
            let m1 = match scan(cb.m1, |m| t.x1y_typical(&sigma_shift(cb.x1(m), d), y)) {
                Scan::Unique(m) => m,
                Scan::None => return Decision::NoCandidate(Stage::First),
                Scan::Multiple => return Decision::Ambiguous(Stage::First),
            };
            let v = v_of(m1);
            match scan(cb.m2, |m| t.vx2y_typical(&v, cb.x2(m1, m), y)) {
                Scan::Unique(m2) => Decision::Decoded { m1, m2 },
                Scan::None => Decision::NoCandidate(Stage::Second),
                Scan::Multiple => Decision::Ambiguous(Stage::Second),
            }
        }
        Cognition::Codeword => {
            let windows: Vec<Vec<usize>> = (0..cb.m1).map(v_of).collect();
            match scan(cb.m1 * cb.m2, |k| {
                let (a, b) = (k / cb.m2, k % cb.m2);
                t.vx2y_typical(&windows[a], cb.x2(a, b), y)
            }) {
                Scan::Unique(k) => Decision::Decoded {
                    m1: k / cb.m2,
                    m2: k % cb.m2,
                },
                Scan::None => Decision::NoCandidate(Stage::First),
                Scan::Multiple => Decision::Ambiguous(Stage::First),
            }
        }
    }
}

/// Typicality decoder for a received word, given the true delay.
#[allow(clippy::too_many_arguments)]
pub fn decode(
    ch: &DiscreteChannel,
    ds: DelaySet,
    params: &InnerParams,
    cb: &Codebooks,
    y: &[usize],
    d: i64,
    eps: f64,
    model: Cognition,
) -> Result<Decision> {
    let t = DelayTargets::new(ch, ds, params, d, cb.n, eps)?;
    Ok(decode_with(&t, ds, cb, y, d, model))
}

/// How many of `K` independent candidates, each typical with probability `q`,
/// turn out typical: 0, 1, or 2 meaning "at least two".
pub(crate) fn impostor_count<R: Rng + ?Sized>(rng: &mut R, ln_k: f64, ln_q: f64) -> u8 {
    if ln_k == f64::NEG_INFINITY || ln_q == f64::NEG_INFINITY {
        return 0;
    }
    let ln_q = ln_q.min(0.0);
    if ln_q == 0.0 {
        // every candidate is typical
        return if ln_k == 0.0 { 1 } else { 2 };
    }
    // ln(1 - q), computed without cancellation for tiny q
    let l1q = (-ln_q.exp()).ln_1p();
    let ln_p0 = -(ln_k + (-l1q).ln()).exp();
    let ln_p1 = ln_k + ln_q + ln_p0 - l1q;
    let (p0, p1) = (ln_p0.exp(), ln_p1.exp());
    let u: f64 = rng.random();
    if u < p0 {
        0
    } else if u < p0 + p1 {
        1
    } else {
        2
    }
}

/// Outcome of one analytically simulated trial.
pub(crate) struct AnalyticTrial<'a> {
    pub t: &'a DelayTargets,
    pub lnf: &'a LnFactorial,
    pub size1: CodebookSize,
    pub size2: CodebookSize,
}

impl AnalyticTrial<'_> {
    /// Successive decoding. `x1_at_channel`, `v`, `y` are the true sequences.
    pub fn successive<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        x1_at_channel: &[usize],
        v: &[usize],
        x2: &[usize],
        y: &[usize],
    ) -> Outcome {
        let true1 = self.t.x1y_typical(x1_at_channel, y);
        let c1 = impostor_count(rng, self.size1.ln_others(), self.t.ln_q_first(y, self.lnf));
        match (true1, c1) {
            (true, 0) => {}
            (false, 0) => return Outcome::Undecided(Decision::NoCandidate(Stage::First)),
            (false, 1) => return Outcome::WrongM1,
            _ => return Outcome::Undecided(Decision::Ambiguous(Stage::First)),
        }
        let true2 = self.t.vx2y_typical(v, x2, y);
        let c2 = impostor_count(
            rng,
            self.size2.ln_others(),
            self.t.ln_q_second(v, y, self.lnf),
        );
        match (true2, c2) {
            (true, 0) => Outcome::Correct,
            (false, 0) => Outcome::Undecided(Decision::NoCandidate(Stage::Second)),
            (false, 1) => Outcome::WrongM2,
            _ => Outcome::Undecided(Decision::Ambiguous(Stage::Second)),
        }
    }

    /// Joint decoding. Same-codebook impostors are drawn exactly; for other
    /// first-user messages the chance that any of its pairs is typical is
    /// replaced by an upper bound, so the simulated error is conservative.
    pub fn joint<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        v: &[usize],
        x2: &[usize],
        y: &[usize],
    ) -> Outcome {
        let truth = self.t.vx2y_typical(v, x2, y);
        let same = impostor_count(
            rng,
            self.size2.ln_others(),
            self.t.ln_q_second(v, y, self.lnf),
        );
        let mut ln_other = self.t.ln_q_first(y, self.lnf);
        if self.t.synchronous {
            let ln_m2 = self.size2.log2 * std::f64::consts::LN_2;
            ln_other = ln_other.min(ln_m2 + self.t.ln_q_pair(y, self.lnf));
        }
        let other = impostor_count(rng, self.size1.ln_others(), ln_other);
        let hits = same as usize + other as usize + truth as usize;
        match hits {
            0 => Outcome::Undecided(Decision::NoCandidate(Stage::First)),
            1 if truth => Outcome::Correct,
            1 if same == 1 => Outcome::WrongM2,
            1 => Outcome::WrongM1,
            _ => Outcome::Undecided(Decision::Ambiguous(Stage::First)),
        }
    }
}

/// Classification of a trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Outcome {
    Correct,
    WrongM1,
    WrongM2,
    Undecided(Decision),
}

impl Outcome {
    pub fn from_decision(decision: Decision, m1: usize, m2: usize) -> Self {
        match decision {
            Decision::Decoded { m1: a, .. } if a != m1 => Outcome::WrongM1,
            Decision::Decoded { m2: b, .. } if b != m2 => Outcome::WrongM2,
            Decision::Decoded { .. } => Outcome::Correct,
            other => Outcome::Undecided(other),
        }
    }
}
