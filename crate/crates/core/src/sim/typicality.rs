//! Strong typicality boxes and the exact probability that an independently drawn
//! sequence lands in them.

/// Per-cell count bounds for joint types of length `n`: cell `c` must hold
/// between `lo[c]` and `hi[c]` occurrences. Cells of zero probability must be empty.
#[derive(Debug, Clone, PartialEq)]
pub struct TypicalBox {
    pub lo: Vec<usize>,
    pub hi: Vec<usize>,
}

impl TypicalBox {
    /// `|N(c) - n P(c)| <= eps n P(c)` for every cell.
    pub fn new(target: &[f64], n: usize, eps: f64) -> Self {
        let nf = n as f64;
        let slack = 1e-9;
        let (lo, hi) = target
            .iter()
            .map(|&p| {
                if p <= 0.0 {
                    (0, 0)
                } else {
                    let lo = (nf * p * (1.0 - eps) - slack).ceil().max(0.0) as usize;
                    let hi = ((nf * p * (1.0 + eps) + slack).floor().max(0.0) as usize).min(n);
                    (lo, hi)
                }
            })
            .unzip();
        Self { lo, hi }
    }

    pub fn contains(&self, counts: &[usize]) -> bool {
        counts
            .iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(&k, (&lo, &hi))| lo <= k && k <= hi)
    }
}

/// `ln k!` for `k = 0..=n`.
pub struct LnFactorial(Vec<f64>);

impl LnFactorial {
    pub fn new(n: usize) -> Self {
        let mut t = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        t.push(0.0);
        for k in 1..=n {
            acc += (k as f64).ln();
            t.push(acc);
        }
        Self(t)
    }

    pub fn get(&self, k: usize) -> f64 {
        self.0[k]
    }
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln P(lo[a] <= K_a <= hi[a] for all a)` for `K ~ Multinomial(total, p)`.
pub fn ln_multinomial_box(
    total: usize,
    p: &[f64],
    lo: &[usize],
    hi: &[usize],
    lnf: &LnFactorial,
) -> f64 {
    // f[t]: log of sum over admissible counts of the symbols so far summing to t
    // of prod p_a^k / k!
    let mut f = vec![f64::NEG_INFINITY; total + 1];
    f[0] = 0.0;
    for ((&pa, &la), &ha) in p.iter().zip(lo).zip(hi) {
        let ha = ha.min(total);
        if pa <= 0.0 {
            if la > 0 {
                return f64::NEG_INFINITY;
            }
            continue;
        }
        if la > ha {
            return f64::NEG_INFINITY;
        }
        let lp = pa.ln();
        let mut g = vec![f64::NEG_INFINITY; total + 1];
        for (t, &ft) in f.iter().enumerate() {
            if ft == f64::NEG_INFINITY {
                continue;
            }
            for k in la..=ha.min(total - t) {
                let term = ft + k as f64 * lp - lnf.get(k);
                g[t + k] = log_add(g[t + k], term);
            }
        }
        f = g;
    }
    let r = f[total] + lnf.get(total);
    r.min(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn box_bounds() {
        let b = TypicalBox::new(&[0.5, 0.25, 0.25, 0.0], 100, 0.1);
        assert_eq!(b.lo, vec![45, 23, 23, 0]);
        assert_eq!(b.hi, vec![55, 27, 27, 0]);
        assert!(b.contains(&[50, 25, 25, 0]));
        assert!(!b.contains(&[50, 24, 25, 1]));
    }

    #[test]
    fn box_probability_matches_enumeration() {
        // oracle: direct sum over all (k0, k1, k2) with k0 + k1 + k2 = 7
        let p = [0.2f64, 0.3, 0.5];
        let lo = [1, 0, 2];
        let hi = [3, 4, 6];
        let lnf = LnFactorial::new(7);
        let mut direct = 0.0;
        for k0 in 0..=7usize {
            for k1 in 0..=(7 - k0) {
                let k2 = 7 - k0 - k1;
                let ks = [k0, k1, k2];
                if (0..3).all(|a| lo[a] <= ks[a] && ks[a] <= hi[a]) {
                    let coef = (lnf.get(7) - lnf.get(k0) - lnf.get(k1) - lnf.get(k2)).exp();
                    direct +=
                        coef * p[0].powi(k0 as i32) * p[1].powi(k1 as i32) * p[2].powi(k2 as i32);
                }
            }
        }
        let got = ln_multinomial_box(7, &p, &lo, &hi, &lnf).exp();
        assert_abs_diff_eq!(got, direct, epsilon = 1e-13);
        assert_abs_diff_eq!(
            ln_multinomial_box(7, &p, &[0; 3], &[7; 3], &lnf),
            0.0,
            epsilon = 1e-13
        );
        assert_eq!(ln_multinomial_box(0, &p, &[0; 3], &[0; 3], &lnf), 0.0);
        assert_eq!(
            ln_multinomial_box(3, &[0.0, 1.0], &[1, 0], &[3, 3], &lnf),
            f64::NEG_INFINITY
        );
    }

    #[test]
    fn tiny_probabilities_stay_finite() {
        let lnf = LnFactorial::new(4096);
        let v = ln_multinomial_box(4096, &[0.5, 0.5], &[0, 0], &[10, 4096], &lnf);
        assert!(v.is_finite() && v < -2000.0);
    }
}
