//! Single-letter inner bound and blocked outer bound for the asynchronous
//! cognitive MAC, where the informed encoder learns a window of the other
//! user's symbols but not the delay.
//!
//! Index conventions used throughout:
//!
//! * a cognition window `v = (x1[i - d_max], ..., x1[i + d_min])` is ordered
//!   oldest first and flattened row-major with the oldest symbol most significant;
//!   under delay `d` the channel sees `v[DelaySet::slot(d)]`;
//! * the blocked window vector is stored as the `2D - 1` symbols `u` it spans;
//!   window `i` (zero-based) is `u[i..i + D]`;
//! * blocked `x2` and `y` vectors are flattened with the first position most significant.

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::prob::{
    conditional_mutual_information, entropy_bits, mutual_information, ConditionalPmf, DelaySet,
    DiscreteChannel, JointTensor, Pmf, Var,
};
use crate::region::BoundPentagon;

/// Largest dense joint law any bound will enumerate.
pub const STATE_CAP: u128 = 10_000_000;

/// What the informed encoder is given: the other user's message (ACMAC), or
/// only its transmitted codeword (ACC-MAC). The latter adds the cap `R1 <= H(X1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cognition {
    Message,
    Codeword,
}

/// Single-letter inputs: an i.i.d. law for the uninformed user and a response
/// of the informed user to each cognition window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InnerParams {
    pub p_x1: Pmf,
    pub p_x2_given_v: ConditionalPmf,
}

impl InnerParams {
    pub fn new(
        ch: &DiscreteChannel,
        ds: DelaySet,
        p_x1: Pmf,
        p_x2_given_v: ConditionalPmf,
    ) -> Result<Self> {
        let params = Self { p_x1, p_x2_given_v };
        params.validate(ch, ds)?;
        Ok(params)
    }

    /// `X2` drawn from `p_x2` regardless of the window.
    pub fn independent(ds: DelaySet, p_x1: Pmf, p_x2: Pmf) -> Result<Self> {
        let rows = window_count(p_x1.len(), ds.size())?;
        Ok(Self {
            p_x1,
            p_x2_given_v: ConditionalPmf::constant(p_x2, rows),
        })
    }

    pub fn validate(&self, ch: &DiscreteChannel, ds: DelaySet) -> Result<()> {
        if self.p_x1.len() != ch.x1_size() {
            return Err(Error::InvalidPmf(format!(
                "p_x1 has {} entries, channel input alphabet has {}",
                self.p_x1.len(),
                ch.x1_size()
            )));
        }
        let rows = window_count(ch.x1_size(), ds.size())?;
        if self.p_x2_given_v.n_rows() != rows || self.p_x2_given_v.n_cols() != ch.x2_size() {
            return Err(Error::InvalidPmf(format!(
                "p_x2_given_v is {}x{}, expected {rows}x{}",
                self.p_x2_given_v.n_rows(),
                self.p_x2_given_v.n_cols(),
                ch.x2_size()
            )));
        }
        Ok(())
    }

    /// Blocked law obtained by running these single-letter inputs for `D`
    /// consecutive symbols.
    pub fn product_extension(&self, ds: DelaySet) -> Result<OuterParams> {
        let nx1 = self.p_x1.len();
        let nx2 = self.p_x2_given_v.n_cols();
        let dd = ds.size();
        let span = 2 * dd - 1;
        let nu = checked_pow(nx1, span, "blocked window vector")?;
        let mut digits = vec![0usize; span];
        let mut p_u = Vec::with_capacity(nu);
        for u in 0..nu {
            to_digits(u, nx1, &mut digits);
            p_u.push(digits.iter().map(|&s| self.p_x1.get(s)).product());
        }
        let mut rows = Vec::new();
        for i in 0..dd {
            let prefixes = nx2.pow(i as u32);
            for u in 0..nu {
                to_digits(u, nx1, &mut digits);
                let w = from_digits(&digits[i..i + dd], nx1);
                let row = self.p_x2_given_v.row(w);
                rows.extend(std::iter::repeat_n(row.clone(), prefixes));
            }
        }
        Ok(OuterParams {
            p_vtilde: Pmf::normalized(p_u)?,
            p_x2_causal: ConditionalPmf::new(rows)?,
        })
    }
}

/// Blocked inputs: a law on the `2D - 1` uninformed symbols spanned by `D`
/// consecutive windows, and causal responses `P(x2[i] | x2[..i], u)`.
///
/// Causal rows are grouped by position `i`; inside group `i` the row index is
/// `u * |X2|^i + prefix` with `prefix` the flattened `x2[..i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OuterParams {
    pub p_vtilde: Pmf,
    pub p_x2_causal: ConditionalPmf,
}

impl OuterParams {
    pub fn validate(&self, ch: &DiscreteChannel, ds: DelaySet) -> Result<()> {
        let (nu, rows) = outer_shape(ch, ds)?;
        if self.p_vtilde.len() != nu {
            return Err(Error::InvalidPmf(format!(
                "p_vtilde has {} entries, expected {nu}",
                self.p_vtilde.len()
            )));
        }
        if self.p_x2_causal.n_rows() != rows || self.p_x2_causal.n_cols() != ch.x2_size() {
            return Err(Error::InvalidPmf(format!(
                "p_x2_causal is {}x{}, expected {rows}x{}",
                self.p_x2_causal.n_rows(),
                self.p_x2_causal.n_cols(),
                ch.x2_size()
            )));
        }
        Ok(())
    }

    /// Probability of the blocked informed-user vector `x2` given the window vector `u`.
    pub fn x2_block_prob(&self, u: usize, x2: &[usize]) -> f64 {
        let nx2 = self.p_x2_causal.n_cols();
        let nu = self.p_vtilde.len();
        let mut offset = 0;
        let mut prefix = 0;
        let mut p = 1.0;
        for (i, &s) in x2.iter().enumerate() {
            let group = nx2.pow(i as u32);
            p *= self.p_x2_causal.get(offset + u * group + prefix, s);
            if p == 0.0 {
                return 0.0;
            }
            offset += nu * group;
            prefix = prefix * nx2 + s;
        }
        p
    }
}

/// `(|U|, causal row count)` for the blocked parameters of a channel.
pub fn outer_shape(ch: &DiscreteChannel, ds: DelaySet) -> Result<(usize, usize)> {
    let dd = ds.size();
    let nu = checked_pow(ch.x1_size(), 2 * dd - 1, "blocked window vector")?;
    let mut rows = 0usize;
    for i in 0..dd {
        let g = checked_pow(ch.x2_size(), i, "causal prefix")?;
        rows = g
            .checked_mul(nu)
            .and_then(|r| rows.checked_add(r))
            .ok_or_else(|| capacity("causal rows", u128::MAX))?;
    }
    if rows as u128 * ch.x2_size() as u128 > STATE_CAP {
        return Err(capacity("causal rows", rows as u128 * ch.x2_size() as u128));
    }
    Ok((nu, rows))
}

/// Caps contributed by one delay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayCaps {
    pub d: i64,
    pub sum_cap: f64,
    pub r2_cap: f64,
    #[serde(with = "crate::region::infinite_as_null")]
    pub r1_cap: f64,
}

/// Per-delay caps and their intersection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub per_delay: Vec<DelayCaps>,
    pub pentagon: BoundPentagon,
}

impl BoundResult {
    fn from_caps(per_delay: Vec<DelayCaps>) -> Self {
        let (a, b, c) = per_delay.iter().fold(
            (f64::INFINITY, f64::INFINITY, f64::INFINITY),
            |(a, b, c), p| (a.min(p.sum_cap), b.min(p.r2_cap), c.min(p.r1_cap)),
        );
        Self {
            per_delay,
            pentagon: BoundPentagon::new(a, b, c),
        }
    }
}

fn capacity(what: &str, size: u128) -> Error {
    Error::Capacity {
        what: what.into(),
        size,
        cap: STATE_CAP,
    }
}

fn checked_pow(base: usize, exp: usize, what: &str) -> Result<usize> {
    let size = (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX);
    if size > STATE_CAP {
        return Err(capacity(what, size));
    }
    Ok(size as usize)
}

pub(crate) fn window_count(nx1: usize, dd: usize) -> Result<usize> {
    checked_pow(nx1, dd, "cognition window alphabet")
}

/// Base-`radix` digits of `idx`, most significant first, filling `out`.
pub(crate) fn to_digits(mut idx: usize, radix: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % radix;
        idx /= radix;
    }
}

pub(crate) fn from_digits(digits: &[usize], radix: usize) -> usize {
    digits.iter().fold(0, |acc, &s| acc * radix + s)
}

/// Joint law over `(V, X1, X2, Y)` of the single-letter inner bound under delay `d`.
pub fn joint_law_inner(
    ch: &DiscreteChannel,
    ds: DelaySet,
    d: i64,
    params: &InnerParams,
) -> Result<JointTensor> {
    let slot = ds.slot(d)?;
    params.validate(ch, ds)?;
    let (nx1, nx2, ny) = (ch.x1_size(), ch.x2_size(), ch.y_size());
    let nv = window_count(nx1, ds.size())?;
    let total = nv as u128 * (nx1 * nx2 * ny) as u128;
    if total > STATE_CAP {
        return Err(capacity("inner joint law", total));
    }
    let mut values = vec![0.0; nv * nx1 * nx2 * ny];
    let mut digits = vec![0usize; ds.size()];
    for v in 0..nv {
        to_digits(v, nx1, &mut digits);
        let pv: f64 = digits.iter().map(|&s| params.p_x1.get(s)).product();
        if pv == 0.0 {
            continue;
        }
        let x1 = digits[slot];
        let row = params.p_x2_given_v.row(v);
        for x2 in 0..nx2 {
            let p = pv * row.get(x2);
            if p == 0.0 {
                continue;
            }
            let base = ((v * nx1 + x1) * nx2 + x2) * ny;
            for (y, w) in ch.row(x1, x2).iter().enumerate() {
                values[base + y] = p * w;
            }
        }
    }
    JointTensor::new(
        vec![(Var::V, nv), (Var::X1, nx1), (Var::X2, nx2), (Var::Y, ny)],
        values,
    )
}

/// Inner-bound pentagon for one parameter choice.
pub fn inner_point(
    ch: &DiscreteChannel,
    ds: DelaySet,
    params: &InnerParams,
) -> Result<BoundResult> {
    inner_point_with(ch, ds, params, Cognition::Message)
}

pub(crate) fn inner_point_with(
    ch: &DiscreteChannel,
    ds: DelaySet,
    params: &InnerParams,
    cognition: Cognition,
) -> Result<BoundResult> {
    let r1_cap = match cognition {
        Cognition::Message => f64::INFINITY,
        Cognition::Codeword => entropy_bits(params.p_x1.probs()),
    };
    let mut caps = Vec::with_capacity(ds.size());
    for d in ds.delays() {
        let joint = joint_law_inner(ch, ds, d, params)?;
        let r2_cap = conditional_mutual_information(&joint, &[Var::X2], &[Var::Y], &[Var::V])?;
        let sum_cap = mutual_information(&joint, &[Var::X1], &[Var::Y])? + r2_cap;
        caps.push(DelayCaps {
            d,
            sum_cap,
            r2_cap,
            r1_cap,
        });
    }
    Ok(BoundResult::from_caps(caps))
}

/// Joint law over `(U, X1, X2, Y)` of `D`-blocked inputs and outputs under delay `d`.
/// The `X1`, `X2` and `Y` axes carry the flattened length-`D` vectors.
pub fn joint_law_outer(
    ch: &DiscreteChannel,
    ds: DelaySet,
    d: i64,
    params: &OuterParams,
) -> Result<JointTensor> {
    let slot = ds.slot(d)?;
    params.validate(ch, ds)?;
    let dd = ds.size();
    let (nx1, nx2, ny) = (ch.x1_size(), ch.x2_size(), ch.y_size());
    let nu = params.p_vtilde.len();
    let bx1 = checked_pow(nx1, dd, "blocked uninformed input")?;
    let bx2 = checked_pow(nx2, dd, "blocked informed input")?;
    let by = checked_pow(ny, dd, "blocked output")?;
    let total = nu as u128 * bx1 as u128 * bx2 as u128 * by as u128;
    if total > STATE_CAP {
        return Err(capacity("blocked joint law", total));
    }
    let mut values = vec![0.0; total as usize];
    let mut u_digits = vec![0usize; 2 * dd - 1];
    let mut x1 = vec![0usize; dd];
    let mut x2 = vec![0usize; dd];
    let mut out = vec![0.0; by];
    for u in 0..nu {
        let pu = params.p_vtilde.get(u);
        if pu == 0.0 {
            continue;
        }
        to_digits(u, nx1, &mut u_digits);
        for (i, s) in x1.iter_mut().enumerate() {
            *s = u_digits[i + slot];
        }
        let x1_idx = from_digits(&x1, nx1);
        for x2_idx in 0..bx2 {
            to_digits(x2_idx, nx2, &mut x2);
            let p = pu * params.x2_block_prob(u, &x2);
            if p == 0.0 {
                continue;
            }
            // memoryless channel: row of the block is the Kronecker product of the letters
            out[0] = p;
            let mut len = 1;
            for i in 0..dd {
                let w = ch.row(x1[i], x2[i]);
                for k in (0..len).rev() {
                    let base = out[k];
                    for (y, wy) in w.iter().enumerate() {
                        out[k * ny + y] = base * wy;
                    }
                }
                len *= ny;
            }
            let start = ((u * bx1 + x1_idx) * bx2 + x2_idx) * by;
            values[start..start + by].copy_from_slice(&out);
        }
    }
    JointTensor::new(
        vec![(Var::V, nu), (Var::X1, bx1), (Var::X2, bx2), (Var::Y, by)],
        values,
    )
}

/// Blocked outer-bound pentagon for one parameter choice, normalized per channel use.
pub fn outer_point(
    ch: &DiscreteChannel,
    ds: DelaySet,
    params: &OuterParams,
) -> Result<BoundResult> {
    outer_point_with(ch, ds, params, Cognition::Message)
}

pub(crate) fn outer_point_with(
    ch: &DiscreteChannel,
    ds: DelaySet,
    params: &OuterParams,
    cognition: Cognition,
) -> Result<BoundResult> {
    let scale = 1.0 / ds.size() as f64;
    let mut caps = Vec::with_capacity(ds.size());
    let mut h_x1 = f64::INFINITY;
    for d in ds.delays() {
        let joint = joint_law_outer(ch, ds, d, params)?;
        let sum_cap = scale * mutual_information(&joint, &[Var::X1, Var::X2], &[Var::Y])?;
        let r2_cap =
            scale * conditional_mutual_information(&joint, &[Var::X2], &[Var::Y], &[Var::V])?;
        if cognition == Cognition::Codeword {
            h_x1 = h_x1.min(scale * joint.entropy_of(&[Var::X1])?);
        }
        caps.push(DelayCaps {
            d,
            sum_cap,
            r2_cap,
            r1_cap: f64::INFINITY,
        });
    }
    if cognition == Cognition::Codeword {
        for c in &mut caps {
            c.r1_cap = h_x1;
        }
    }
    Ok(BoundResult::from_caps(caps))
}

/// Delays are tagged in `BoundResult`; look one up.
pub fn caps_for(result: &BoundResult, d: i64) -> Result<DelayCaps> {
    match result.per_delay.iter().find(|c| c.d == d) {
        Some(c) => Ok(*c),
        None => usage(format!("no caps recorded for delay {d}")),
    }
}
