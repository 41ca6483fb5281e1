//! Exact n-letter rate pentagons for small blocklengths.
//!
//! For an input law on `(x1^n, x2^n)` and a delay `d`, the channel output at time
//! `i` is driven by `x1[i - d]` and `x2[i]`. The full-block pentagon uses every
//! output and fills positions of `x1` outside `1..=n` with symbol 0; the trimmed
//! pentagon drops the first `d_max` and last `d_min` outputs, where no such
//! filling is needed. Both are normalized by `1/n`.
//!
//! Nothing here materializes the joint law of inputs and outputs: the output
//! distribution is accumulated one input pair at a time, which keeps memory at
//! `|Y|^n` plus one conditional row.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acmac::{to_digits, InnerParams};
use crate::error::{usage, Error, Result};
use crate::prob::{entropy_bits, DelaySet, DiscreteChannel};
use crate::region::BoundPentagon;

/// Cap on the number of input pairs `(x1^n, x2^n)`.
pub const INPUT_STATE_CAP: u128 = 10_000_000;
/// Cap on input pairs times output sequences, i.e. the work per delay.
pub const WORK_CAP: u128 = 2_000_000_000;

const JOINT_TOL: f64 = 1e-10;

/// An n-letter input law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NLetterLaw {
    /// Dense probabilities over `(x1^n, x2^n)`, `x1^n` major, each vector with its
    /// first letter most significant.
    Joint { n: usize, probs: Vec<f64> },
    /// Single-letter parameters run for `n` symbols. The cognition window at
    /// time `i` wraps cyclically around the block.
    Iid { n: usize, params: InnerParams },
}

impl NLetterLaw {
    pub fn n(&self) -> usize {
        match self {
            NLetterLaw::Joint { n, .. } | NLetterLaw::Iid { n, .. } => *n,
        }
    }
}

enum Law<'a> {
    Joint(&'a [f64]),
    Iid(&'a InnerParams, DelaySet),
}

struct Shape {
    n: usize,
    nx1: usize,
    nx2: usize,
    ny: usize,
    n1: usize,
    n2: usize,
}

fn pow_capped(base: usize, exp: usize) -> u128 {
    (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX)
}

fn shape(ch: &DiscreteChannel, law: &NLetterLaw, ds: DelaySet) -> Result<Shape> {
    let n = law.n();
    if n == 0 {
        return usage("blocklength must be at least 1");
    }
    let n1 = pow_capped(ch.x1_size(), n);
    let n2 = pow_capped(ch.x2_size(), n);
    let states = n1.saturating_mul(n2);
    if states > INPUT_STATE_CAP {
        return Err(Error::Capacity {
            what: format!("{n}-letter input pairs"),
            size: states,
            cap: INPUT_STATE_CAP,
        });
    }
    let work = states.saturating_mul(pow_capped(ch.y_size(), n));
    if work > WORK_CAP {
        return Err(Error::Capacity {
            what: format!("{n}-letter output enumeration"),
            size: work,
            cap: WORK_CAP,
        });
    }
    match law {
        NLetterLaw::Joint { probs, .. } => {
            if probs.len() as u128 != states {
                return usage(format!(
                    "joint law has {} entries, expected {states}",
                    probs.len()
                ));
            }
            if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
                return Err(Error::InvalidPmf("joint law has a negative entry".into()));
            }
            let total: f64 = probs.iter().sum();
            if (total - 1.0).abs() > JOINT_TOL {
                return Err(Error::InvalidPmf(format!("joint law sums to {total}")));
            }
        }
        NLetterLaw::Iid { params, .. } => params.validate(ch, ds)?,
    }
    Ok(Shape {
        n,
        nx1: ch.x1_size(),
        nx2: ch.x2_size(),
        ny: ch.y_size(),
        n1: n1 as usize,
        n2: n2 as usize,
    })
}

/// Entropy terms of one delay, in bits (unnormalized).
struct Terms {
    h_y: f64,
    h_y_given_x1: f64,
    h_y_given_x: f64,
}

impl Terms {
    fn pentagon_caps(&self, n: usize) -> (f64, f64) {
        let scale = 1.0 / n as f64;
        let a = scale * (self.h_y - self.h_y_given_x);
        let b = scale * (self.h_y_given_x1 - self.h_y_given_x);
        (a.max(0.0), b.max(0.0))
    }
}

/// Output positions (zero-based) kept in the computation.
fn positions(n: usize, ds: DelaySet, trimmed: bool) -> Vec<usize> {
    if trimmed {
        (ds.d_max..n - ds.d_min).collect()
    } else {
        (0..n).collect()
    }
}

fn delay_terms(ch: &DiscreteChannel, s: &Shape, law: &Law<'_>, d: i64, pos: &[usize]) -> Terms {
    let ny_t = s.ny.pow(pos.len() as u32);
    let mut p_y = vec![0.0; ny_t];
    let mut p_y_x1 = vec![0.0; ny_t];
    let mut row = vec![0.0; ny_t];
    let mut x1 = vec![0usize; s.n];
    let mut x2 = vec![0usize; s.n];
    let mut h_x1y = 0.0;
    let mut h_x1 = 0.0;
    let mut h_y_given_x = 0.0;
    let row_entropy: Vec<f64> = (0..s.nx1 * s.nx2)
        .map(|k| entropy_bits(ch.row(k / s.nx2, k % s.nx2)))
        .collect();
    let window = |x1: &[usize], i: usize| -> usize {
        let t = i as i64 - d;
        if t < 0 || t >= s.n as i64 {
            0
        } else {
            x1[t as usize]
        }
    };
    for i1 in 0..s.n1 {
        to_digits(i1, s.nx1, &mut x1);
        p_y_x1.iter_mut().for_each(|v| *v = 0.0);
        let mut p1 = 0.0;
        for i2 in 0..s.n2 {
            to_digits(i2, s.nx2, &mut x2);
            let p = match law {
                Law::Joint(probs) => probs[i1 * s.n2 + i2],
                Law::Iid(params, ds) => iid_prob(params, *ds, &x1, &x2),
            };
            if p == 0.0 {
                continue;
            }
            p1 += p;
            row[0] = p;
            let mut len = 1;
            for &i in pos {
                let a = window(&x1, i);
                h_y_given_x += p * row_entropy[a * s.nx2 + x2[i]];
                let w = ch.row(a, x2[i]);
                for k in (0..len).rev() {
                    let base = row[k];
                    for (y, wy) in w.iter().enumerate() {
                        row[k * s.ny + y] = base * wy;
                    }
                }
                len *= s.ny;
            }
            for (acc, v) in p_y_x1.iter_mut().zip(&row) {
                *acc += v;
            }
        }
        if p1 > 0.0 {
            h_x1 += -p1 * p1.log2();
            h_x1y += entropy_bits(&p_y_x1);
            for (acc, v) in p_y.iter_mut().zip(&p_y_x1) {
                *acc += v;
            }
        }
    }
    Terms {
        h_y: entropy_bits(&p_y),
        h_y_given_x1: (h_x1y - h_x1).max(0.0),
        h_y_given_x,
    }
}

fn iid_prob(params: &InnerParams, ds: DelaySet, x1: &[usize], x2: &[usize]) -> f64 {
    let n = x1.len() as i64;
    let nx1 = params.p_x1.len();
    let mut p: f64 = x1.iter().map(|&s| params.p_x1.get(s)).product();
    for (i, &s) in x2.iter().enumerate() {
        if p == 0.0 {
            break;
        }
        let mut v = 0;
        for t in (i as i64 - ds.d_max as i64)..=(i as i64 + ds.d_min as i64) {
            v = v * nx1 + x1[t.rem_euclid(n) as usize];
        }
        p *= params.p_x2_given_v.get(v, s);
    }
    p
}

/// Entropy of the `x1^n` marginal, in bits.
fn h_x1(s: &Shape, law: &Law<'_>) -> f64 {
    match law {
        Law::Joint(probs) => {
            let marg: Vec<f64> = probs.chunks(s.n2).map(|c| c.iter().sum()).collect();
            entropy_bits(&marg)
        }
        Law::Iid(params, _) => s.n as f64 * entropy_bits(params.p_x1.probs()),
    }
}

fn evaluate(
    ch: &DiscreteChannel,
    ds: DelaySet,
    law: &NLetterLaw,
    trimmed: bool,
) -> Result<(BoundPentagon, Shape, f64)> {
    let s = shape(ch, law, ds)?;
    if trimmed && s.n < ds.size() {
        return usage(format!(
            "trimmed block needs n >= {} for this delay set, got n = {}",
            ds.size(),
            s.n
        ));
    }
    let l = match law {
        NLetterLaw::Joint { probs, .. } => Law::Joint(probs),
        NLetterLaw::Iid { params, .. } => Law::Iid(params, ds),
    };
    let pos = positions(s.n, ds, trimmed);
    let caps: Vec<(f64, f64)> = ds
        .delays()
        .into_par_iter()
        .map(|d| delay_terms(ch, &s, &l, d, &pos).pentagon_caps(s.n))
        .collect();
    let (a, b) = caps
        .into_iter()
        .fold((f64::INFINITY, f64::INFINITY), |(a, b), (x, y)| {
            (a.min(x), b.min(y))
        });
    let hx1 = h_x1(&s, &l);
    Ok((BoundPentagon::sum_and_r2(a, b), s, hx1))
}

/// Full-block n-letter pentagon.
pub fn r_n_point(ch: &DiscreteChannel, ds: DelaySet, law: &NLetterLaw) -> Result<BoundPentagon> {
    Ok(evaluate(ch, ds, law, false)?.0)
}

/// Pentagon on the output block with the `d_max` leading and `d_min` trailing symbols removed.
pub fn q_n_point(ch: &DiscreteChannel, ds: DelaySet, law: &NLetterLaw) -> Result<BoundPentagon> {
    Ok(evaluate(ch, ds, law, true)?.0)
}

/// Trimmed pentagon with the codeword-cognition cap `R1 <= H(X1^n) / n`.
pub fn accmac_multiletter_point(
    ch: &DiscreteChannel,
    ds: DelaySet,
    law: &NLetterLaw,
) -> Result<BoundPentagon> {
    let (p, s, hx1) = evaluate(ch, ds, law, true)?;
    Ok(BoundPentagon::new(p.a, p.b, hx1 / s.n as f64))
}

/// Largest per-coordinate difference between the full and trimmed pentagons
/// that discarding `D - 1` outputs can cause.
pub fn edge_gap_bound(ch: &DiscreteChannel, ds: DelaySet, n: usize) -> f64 {
    (ds.d_max + ds.d_min) as f64 * (ch.y_size() as f64).log2() / n as f64
}
