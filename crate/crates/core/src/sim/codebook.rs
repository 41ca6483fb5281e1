//! Random codebooks, cognition windows, delay alignment and channel use.
//!
//! Indices outside `0..n` wrap around the block, both when forming cognition
//! windows and when applying the delay, so every operation here is a cyclic
//! rotation or a cyclic window.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::acmac::{Cognition, InnerParams};
use crate::error::{Error, Result};
use crate::prob::{DelaySet, DiscreteChannel};

/// Largest number of stored codeword symbols across both codebooks.
pub const CODEBOOK_SYMBOL_CAP: u128 = 1 << 28;

pub(crate) fn sample_index<R: Rng + ?Sized>(rng: &mut R, probs: &[f64]) -> usize {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return i;
        }
    }
    // rounding left a sliver above the last cumulative value
    probs.iter().rposition(|&p| p > 0.0).unwrap_or(0)
}

/// Cognition windows `(x1[i - d_max], ..., x1[i + d_min])` of a codeword.
pub fn sliding_window_v(x1: &[usize], ds: DelaySet) -> Result<Vec<Vec<usize>>> {
    let n = x1.len();
    if n < ds.size() {
        return Err(Error::Config(format!(
            "codeword length {n} is shorter than the delay set size {}",
            ds.size()
        )));
    }
    Ok((0..n)
        .map(|i| {
            (0..ds.size())
                .map(|j| x1[(i + n * ds.size() + j - ds.d_max) % n])
                .collect()
        })
        .collect())
}

/// Flattened window indices, oldest symbol most significant.
pub(crate) fn window_indices(x1: &[usize], ds: DelaySet, nx1: usize) -> Vec<usize> {
    let n = x1.len();
    (0..n)
        .map(|i| {
            (0..ds.size()).fold(0, |acc, j| {
                acc * nx1 + x1[(i + n * ds.size() + j - ds.d_max) % n]
            })
        })
        .collect()
}

/// Cyclic rotation with `out[i] = x1[i - d]`: the uninformed symbols as seen at
/// the channel under delay `d`.
pub fn sigma_shift(x1: &[usize], d: i64) -> Vec<usize> {
    let n = x1.len() as i64;
    if n == 0 {
        return Vec::new();
    }
    (0..n).map(|i| x1[(i - d).rem_euclid(n) as usize]).collect()
}

/// Number of codewords for rate `r` at blocklength `n`: `ceil(2^(nR))`, with its log2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CodebookSize {
    pub log2: f64,
    /// Exact count when it fits in 64 bits.
    pub exact: Option<u64>,
}

impl CodebookSize {
    pub fn new(n: usize, rate: f64) -> Self {
        let bits = n as f64 * rate;
        let exact = if bits < 63.0 {
            Some(bits.exp2().ceil() as u64)
        } else {
            None
        };
        let log2 = exact.map_or(bits, |m| (m as f64).log2());
        Self { log2, exact }
    }

    /// `ln(M - 1)`; `-inf` for a single codeword.
    pub fn ln_others(&self) -> f64 {
        match self.exact {
            Some(m) => ((m - 1) as f64).ln(),
            None => self.log2 * std::f64::consts::LN_2,
        }
    }
}

/// First-user codebook and one superposition codebook per first-user codeword.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebooks {
    pub n: usize,
    pub m1: usize,
    pub m2: usize,
    c1: Vec<usize>,
    c2: Vec<usize>,
}

impl Codebooks {
    /// Draws `c1` i.i.d. from `p_x1` and, for each of its codewords, `m2`
    /// codewords letter by letter from `p_x2_given_v` applied to the cognition windows.
    pub fn generate(
        params: &InnerParams,
        ds: DelaySet,
        n: usize,
        m1: usize,
        m2: usize,
        seed: u64,
    ) -> Result<Self> {
        let symbols = (m1 as u128 + m1 as u128 * m2 as u128) * n as u128;
        if symbols > CODEBOOK_SYMBOL_CAP {
            return Err(Error::Capacity {
                what: "stored codebook symbols".into(),
                size: symbols,
                cap: CODEBOOK_SYMBOL_CAP,
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nx1 = params.p_x1.len();
        let mut c1 = Vec::with_capacity(m1 * n);
        for _ in 0..m1 * n {
            c1.push(sample_index(&mut rng, params.p_x1.probs()));
        }
        let mut c2 = Vec::with_capacity(m1 * m2 * n);
        for l in 0..m1 {
            let v = window_indices(&c1[l * n..(l + 1) * n], ds, nx1);
            for _ in 0..m2 {
                for &w in &v {
                    c2.push(sample_index(&mut rng, params.p_x2_given_v.row(w).probs()));
                }
            }
        }
        Ok(Self { n, m1, m2, c1, c2 })
    }

    pub fn x1(&self, m1: usize) -> &[usize] {
        &self.c1[m1 * self.n..(m1 + 1) * self.n]
    }

    pub fn x2(&self, m1: usize, m2: usize) -> &[usize] {
        let start = (m1 * self.m2 + m2) * self.n;
        &self.c2[start..start + self.n]
    }

    /// No other first-user message shares this codeword.
    pub fn is_unique(&self, m1: usize) -> bool {
        let x = self.x1(m1);
        (0..self.m1).all(|l| l == m1 || self.x1(l) != x)
    }
}

/// Output of one channel use over a block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transmission {
    pub y: Vec<usize>,
    /// The informed encoder could not identify the first user's message and sent
    /// the all-zero word.
    pub not_unique: bool,
}

/// Draws `y[i] ~ P(. | x1_at_channel[i], x2[i])`.
pub(crate) fn channel_output<R: Rng + ?Sized>(
    ch: &DiscreteChannel,
    x1_at_channel: &[usize],
    x2: &[usize],
    rng: &mut R,
) -> Vec<usize> {
    x1_at_channel
        .iter()
        .zip(x2)
        .map(|(&a, &b)| sample_index(rng, ch.row(a, b)))
        .collect()
}

/// Sends messages `(m1, m2)` under delay `d`.
#[allow(clippy::too_many_arguments)]
pub fn transmit<R: Rng + ?Sized>(
    ch: &DiscreteChannel,
    ds: DelaySet,
    cb: &Codebooks,
    m1: usize,
    m2: usize,
    d: i64,
    model: Cognition,
    rng: &mut R,
) -> Result<Transmission> {
    if m1 >= cb.m1 || m2 >= cb.m2 {
        return Err(Error::Usage(format!(
            "message pair ({m1}, {m2}) outside codebooks of sizes ({}, {})",
            cb.m1, cb.m2
        )));
    }
    ds.slot(d)?;
    let not_unique = model == Cognition::Codeword && !cb.is_unique(m1);
    let zeros;
    let x2 = if not_unique {
        zeros = vec![0; cb.n];
        &zeros[..]
    } else {
        cb.x2(m1, m2)
    };
    let shifted = sigma_shift(cb.x1(m1), d);
    Ok(Transmission {
        y: channel_output(ch, &shifted, x2, rng),
        not_unique,
    })
}

/// Exact probability of `y` for a block transmission.
pub fn block_output_prob(
    ch: &DiscreteChannel,
    x1_at_channel: &[usize],
    x2: &[usize],
    y: &[usize],
) -> f64 {
    x1_at_channel
        .iter()
        .zip(x2)
        .zip(y)
        .map(|((&a, &b), &c)| ch.prob(a, b, c))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acmac::to_digits;
    use crate::channels::{binary_additive, mod_channel};
    use crate::prob::Pmf;
    use rand::SeedableRng;

    #[test]
    fn windows() {
        let ds = DelaySet::new(0, 1);
        assert_eq!(
            sliding_window_v(&[0, 1, 2], ds).unwrap(),
            vec![vec![2, 0], vec![0, 1], vec![1, 2]]
        );
        let sync = sliding_window_v(&[3, 1, 2], DelaySet::synchronous()).unwrap();
        assert_eq!(sync, vec![vec![3], vec![1], vec![2]]);
        let constant = sliding_window_v(&[1; 5], DelaySet::new(1, 1)).unwrap();
        assert!(constant.iter().all(|w| w == &vec![1, 1, 1]));
        assert!(sliding_window_v(&[0], ds).is_err());
        assert_eq!(window_indices(&[0, 1, 1], ds, 2), vec![2, 1, 3]);
    }

    #[test]
    fn sigma_rotations() {
        let x = [10, 11, 12, 13];
        assert_eq!(sigma_shift(&x, 0), x.to_vec());
        assert_eq!(sigma_shift(&x, 1), vec![13, 10, 11, 12]);
        assert_eq!(sigma_shift(&x, -1), vec![11, 12, 13, 10]);
        let mut y = x.to_vec();
        for _ in 0..4 {
            y = sigma_shift(&y, 1);
        }
        assert_eq!(y, x.to_vec());
    }

    #[test]
    fn window_slot_matches_shift() {
        let ds = DelaySet::new(1, 2);
        let x = [3, 1, 4, 1, 5, 9, 2];
        let w = sliding_window_v(&x, ds).unwrap();
        for d in ds.delays() {
            let s = sigma_shift(&x, d);
            let slot = ds.slot(d).unwrap();
            for i in 0..x.len() {
                assert_eq!(w[i][slot], s[i]);
            }
        }
    }

    #[test]
    fn codebooks_regenerate_identically() {
        let ds = DelaySet::new(0, 1);
        let params =
            InnerParams::independent(ds, Pmf::uniform(2), Pmf::new(vec![0.3, 0.7]).unwrap())
                .unwrap();
        let a = Codebooks::generate(&params, ds, 12, 4, 3, 99).unwrap();
        let b = Codebooks::generate(&params, ds, 12, 4, 3, 99).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, Codebooks::generate(&params, ds, 12, 4, 3, 100).unwrap());
        assert_eq!(a.x2(3, 2).len(), 12);
    }

    #[test]
    fn noiseless_xor_output() {
        let ch = binary_additive(0.0).unwrap();
        let ds = DelaySet::new(0, 1);
        let params = InnerParams::independent(ds, Pmf::uniform(2), Pmf::uniform(2)).unwrap();
        let cb = Codebooks::generate(&params, ds, 16, 2, 2, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in [0, 1] {
            let t = transmit(&ch, ds, &cb, 1, 0, d, Cognition::Message, &mut rng).unwrap();
            let expect: Vec<usize> = sigma_shift(cb.x1(1), d)
                .iter()
                .zip(cb.x2(1, 0))
                .map(|(a, b)| a ^ b)
                .collect();
            assert_eq!(t.y, expect);
        }
        assert!(transmit(&ch, ds, &cb, 2, 0, 0, Cognition::Message, &mut rng).is_err());
    }

    #[test]
    fn duplicate_codeword_sends_zeros() {
        let ch = mod_channel();
        let ds = DelaySet::synchronous();
        let params = InnerParams::independent(
            ds,
            Pmf::point_mass(2, 1).unwrap(),
            Pmf::point_mass(4, 3).unwrap(),
        )
        .unwrap();
        let cb = Codebooks::generate(&params, ds, 4, 2, 1, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let t = transmit(&ch, ds, &cb, 0, 0, 0, Cognition::Codeword, &mut rng).unwrap();
        assert!(t.not_unique);
        assert_eq!(t.y, vec![0; 4]);
        let t = transmit(&ch, ds, &cb, 0, 0, 0, Cognition::Message, &mut rng).unwrap();
        assert_eq!(t.y, vec![3; 4]);
    }

    #[test]
    fn alignment_consistency_by_enumeration() {
        // the delayed block and the undelayed block of the rotated codeword have the same output law
        let ch =
            crate::channels::random_channel(&mut ChaCha8Rng::seed_from_u64(4), 2, 2, 2).unwrap();
        let n = 5;
        let x1 = [0, 1, 1, 0, 1];
        let x2 = [1, 1, 0, 0, 1];
        let mut y = vec![0; n];
        for d in [-1i64, 0, 1, 2] {
            let shifted = sigma_shift(&x1, d);
            for yi in 0..(1 << n) {
                to_digits(yi, 2, &mut y);
                let direct: f64 = (0..n)
                    .map(|i| {
                        ch.prob(
                            x1[(i as i64 - d).rem_euclid(n as i64) as usize],
                            x2[i],
                            y[i],
                        )
                    })
                    .product();
                assert_eq!(direct, block_output_prob(&ch, &shifted, &x2, &y));
            }
        }
    }
}
