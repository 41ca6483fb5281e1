//! Finite-alphabet distributions, channels and the exact information functionals
//! (entropy, mutual information, conditional mutual information) that every bound
//! in this crate is built from.
//!
//! All logarithms are base 2. Joint laws are dense tensors; each axis carries a
//! [`Var`] tag so functionals can be requested by role instead of by position.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};

/// Largest alphabet accepted on any channel axis.
pub const MAX_ALPHABET: usize = 16;

const PMF_TOL: f64 = 1e-12;
const JOINT_TOL: f64 = 1e-10;
const CHANNEL_ROW_TOL: f64 = 1e-9;

/// Shannon entropy in bits of raw probabilities, with `0 log 0 = 0`.
pub(crate) fn entropy_bits(probs: &[f64]) -> f64 {
    let h: f64 = probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    h.max(0.0)
}

/// Probability vector over an indexed finite alphabet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Pmf {
    probs: Vec<f64>,
}

impl Pmf {
    /// Validates nonnegativity and normalization (within `1e-12`).
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        check_simplex(&probs, PMF_TOL)?;
        Ok(Self { probs })
    }

    /// Rescales a nonnegative vector onto the simplex.
    pub fn normalized(mut probs: Vec<f64>) -> Result<Self> {
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidPmf("negative or non-finite weight".into()));
        }
        let total: f64 = probs.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidPmf("all weights are zero".into()));
        }
        probs.iter_mut().for_each(|p| *p /= total);
        Ok(Self { probs })
    }

    pub fn uniform(size: usize) -> Self {
        assert!(size > 0, "uniform pmf over an empty alphabet");
        Self {
            probs: vec![1.0 / size as f64; size],
        }
    }

    /// Uniform over the listed symbols, zero elsewhere.
    pub fn uniform_on(size: usize, support: &[usize]) -> Result<Self> {
        if support.is_empty() || support.iter().any(|&s| s >= size) {
            return usage("support must be a nonempty subset of the alphabet");
        }
        let mut probs = vec![0.0; size];
        for &s in support {
            probs[s] = 1.0;
        }
        Self::normalized(probs)
    }

    pub fn point_mass(size: usize, symbol: usize) -> Result<Self> {
        Self::uniform_on(size, &[symbol])
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, i: usize) -> f64 {
        self.probs[i]
    }
}

impl Pmf {
    /// Uniform draw from the simplex (flat Dirichlet).
    pub fn random<R: rand::Rng + ?Sized>(rng: &mut R, size: usize) -> Self {
        assert!(size > 0, "random pmf over an empty alphabet");
        let w: Vec<f64> = (0..size)
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        Self::normalized(w).unwrap_or_else(|_| Self::uniform(size))
    }
}

impl TryFrom<Vec<f64>> for Pmf {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Pmf::new(v)
    }
}

impl From<Pmf> for Vec<f64> {
    fn from(p: Pmf) -> Self {
        p.probs
    }
}

fn check_simplex(probs: &[f64], tol: f64) -> Result<()> {
    if probs.is_empty() {
        return Err(Error::InvalidPmf("empty probability vector".into()));
    }
    if let Some((i, p)) = probs
        .iter()
        .enumerate()
        .find(|(_, p)| !p.is_finite() || **p < 0.0)
    {
        return Err(Error::InvalidPmf(format!("entry {i} is {p}")));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > tol {
        return Err(Error::InvalidPmf(format!("entries sum to {total}")));
    }
    Ok(())
}

/// One [`Pmf`] per conditioning symbol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct ConditionalPmf {
    rows: Vec<Pmf>,
}

impl ConditionalPmf {
    pub fn new(rows: Vec<Pmf>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(Error::InvalidPmf("conditional pmf without rows".into()));
        };
        let width = first.len();
        if let Some(i) = rows.iter().position(|r| r.len() != width) {
            return Err(Error::InvalidPmf(format!(
                "row {i} has {} entries, expected {width}",
                rows[i].len()
            )));
        }
        Ok(Self { rows })
    }

    /// The same row repeated for every conditioning symbol.
    pub fn constant(row: Pmf, n_rows: usize) -> Self {
        Self {
            rows: vec![row; n_rows],
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row(&self, i: usize) -> &Pmf {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Pmf] {
        &self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.rows[row].get(col)
    }
}

impl TryFrom<Vec<Vec<f64>>> for ConditionalPmf {
    type Error = Error;

    fn try_from(v: Vec<Vec<f64>>) -> Result<Self> {
        let rows = v
            .into_iter()
            .enumerate()
            .map(|(i, r)| Pmf::new(r).map_err(|e| Error::InvalidPmf(format!("row {i}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        ConditionalPmf::new(rows)
    }
}

impl From<ConditionalPmf> for Vec<Vec<f64>> {
    fn from(c: ConditionalPmf) -> Self {
        c.rows.into_iter().map(Vec::from).collect()
    }
}

/// Display names for the symbols of each channel alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labels {
    pub x1: Vec<String>,
    pub x2: Vec<String>,
    pub y: Vec<String>,
}

impl Labels {
    pub fn numeric(x1: usize, x2: usize, y: usize) -> Self {
        let names = |n: usize| (0..n).map(|i| i.to_string()).collect();
        Self {
            x1: names(x1),
            x2: names(x2),
            y: names(y),
        }
    }
}

/// Memoryless two-input channel `P(y | x1, x2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteChannel {
    x1_size: usize,
    x2_size: usize,
    y_size: usize,
    /// Flattened `[x1][x2][y]`.
    transition: Vec<f64>,
    labels: Labels,
}

impl DiscreteChannel {
    /// Builds a channel from a flattened `[x1][x2][y]` tensor. Rows summing to one
    /// within `1e-9` are renormalized; anything further off is rejected.
    pub fn new(
        x1_size: usize,
        x2_size: usize,
        y_size: usize,
        transition: Vec<f64>,
    ) -> Result<Self> {
        Self::with_labels(transition, Labels::numeric(x1_size, x2_size, y_size))
    }

    pub fn with_labels(mut transition: Vec<f64>, labels: Labels) -> Result<Self> {
        let (x1_size, x2_size, y_size) = (labels.x1.len(), labels.x2.len(), labels.y.len());
        for (name, size) in [("x1", x1_size), ("x2", x2_size), ("y", y_size)] {
            if size == 0 || size > MAX_ALPHABET {
                return Err(Error::InvalidChannel(format!(
                    "{name} alphabet has {size} symbols (allowed 1..={MAX_ALPHABET})"
                )));
            }
        }
        if transition.len() != x1_size * x2_size * y_size {
            return Err(Error::InvalidChannel(format!(
                "transition has {} entries, expected {}",
                transition.len(),
                x1_size * x2_size * y_size
            )));
        }
        for (row_idx, row) in transition.chunks_mut(y_size).enumerate() {
            let (x1, x2) = (row_idx / x2_size, row_idx % x2_size);
            if row.iter().any(|p| !p.is_finite() || *p < 0.0) {
                return Err(Error::InvalidChannel(format!(
                    "row (x1={x1}, x2={x2}) has a negative or non-finite entry"
                )));
            }
            let total: f64 = row.iter().sum();
            if (total - 1.0).abs() > CHANNEL_ROW_TOL {
                return Err(Error::InvalidChannel(format!(
                    "row (x1={x1}, x2={x2}) sums to {total}"
                )));
            }
            row.iter_mut().for_each(|p| *p /= total);
        }
        Ok(Self {
            x1_size,
            x2_size,
            y_size,
            transition,
            labels,
        })
    }

    /// Channel whose output is a deterministic function of the inputs.
    pub fn deterministic(
        x1_size: usize,
        x2_size: usize,
        y_size: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let mut t = vec![0.0; x1_size * x2_size * y_size];
        for x1 in 0..x1_size {
            for x2 in 0..x2_size {
                let y = f(x1, x2);
                if y >= y_size {
                    return Err(Error::InvalidChannel(format!(
                        "output {y} for ({x1}, {x2}) outside the alphabet"
                    )));
                }
                t[(x1 * x2_size + x2) * y_size + y] = 1.0;
            }
        }
        Self::new(x1_size, x2_size, y_size, t)
    }

    pub fn set_labels(&mut self, labels: Labels) -> Result<()> {
        if labels.x1.len() != self.x1_size
            || labels.x2.len() != self.x2_size
            || labels.y.len() != self.y_size
        {
            return Err(Error::InvalidChannel(
                "label counts do not match alphabets".into(),
            ));
        }
        self.labels = labels;
        Ok(())
    }

    pub fn x1_size(&self) -> usize {
        self.x1_size
    }

    pub fn x2_size(&self) -> usize {
        self.x2_size
    }

    pub fn y_size(&self) -> usize {
        self.y_size
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn transition(&self) -> &[f64] {
        &self.transition
    }

    /// `P(. | x1, x2)`.
    pub fn row(&self, x1: usize, x2: usize) -> &[f64] {
        let start = (x1 * self.x2_size + x2) * self.y_size;
        &self.transition[start..start + self.y_size]
    }

    pub fn prob(&self, x1: usize, x2: usize, y: usize) -> f64 {
        self.row(x1, x2)[y]
    }
}

/// The delay set `{-d_min, ..., d_max}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DelaySet {
    pub d_min: usize,
    pub d_max: usize,
}

impl DelaySet {
    pub fn new(d_min: usize, d_max: usize) -> Self {
        Self { d_min, d_max }
    }

    /// `{0}`.
    pub fn synchronous() -> Self {
        Self::new(0, 0)
    }

    /// Number of possible delays, `d_max + d_min + 1`.
    pub fn size(&self) -> usize {
        self.d_max + self.d_min + 1
    }

    pub fn delays(&self) -> Vec<i64> {
        (-(self.d_min as i64)..=self.d_max as i64).collect()
    }

    pub fn contains(&self, d: i64) -> bool {
        d >= -(self.d_min as i64) && d <= self.d_max as i64
    }

    /// Zero-based position, inside a cognition window ordered oldest first,
    /// of the uninformed symbol that reaches the channel under delay `d`.
    pub fn slot(&self, d: i64) -> Result<usize> {
        if !self.contains(d) {
            return usage(format!(
                "delay {d} outside {{-{}, ..., {}}}",
                self.d_min, self.d_max
            ));
        }
        Ok((self.d_max as i64 - d) as usize)
    }
}

/// Semantic tag of a joint-tensor axis. Blocked laws reuse the same tags for
/// their super-symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    /// Cognition window (or the blocked window vector).
    V,
    X1,
    X2,
    Y,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Var::V => "V",
            Var::X1 => "X1",
            Var::X2 => "X2",
            Var::Y => "Y",
        };
        f.write_str(s)
    }
}

/// Dense joint distribution over tagged finite axes, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTensor {
    vars: Vec<Var>,
    dims: Vec<usize>,
    values: Vec<f64>,
}

impl JointTensor {
    pub fn new(axes: Vec<(Var, usize)>, values: Vec<f64>) -> Result<Self> {
        let (vars, dims): (Vec<Var>, Vec<usize>) = axes.into_iter().unzip();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return usage(format!("axis {v} appears twice"));
            }
        }
        if dims.contains(&0) {
            return usage("zero-sized axis");
        }
        let size: usize = dims.iter().product();
        if values.len() != size {
            return usage(format!("{} values for {size} cells", values.len()));
        }
        check_simplex(&values, JOINT_TOL)?;
        Ok(Self { vars, dims, values })
    }

    /// Fills a tensor by evaluating `f` at every multi-index.
    pub fn from_fn(axes: Vec<(Var, usize)>, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let dims: Vec<usize> = axes.iter().map(|a| a.1).collect();
        let size: usize = dims.iter().product();
        let mut idx = vec![0usize; dims.len()];
        let mut values = Vec::with_capacity(size);
        for _ in 0..size {
            values.push(f(&idx));
            odometer_step(&mut idx, &dims);
        }
        Self::new(axes, values)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim_of(&self, v: Var) -> Option<usize> {
        self.axis(v).map(|i| self.dims[i])
    }

    fn axis(&self, v: Var) -> Option<usize> {
        self.vars.iter().position(|w| *w == v)
    }

    /// Marginal law over `keep`, flattened in the order given.
    pub fn marginal(&self, keep: &[Var]) -> Result<Vec<f64>> {
        for (j, v) in keep.iter().enumerate() {
            if keep[..j].contains(v) {
                return usage(format!("axis {v} requested twice"));
            }
        }
        let mut out_stride = vec![0usize; self.dims.len()];
        let mut out_size = 1usize;
        for v in keep.iter().rev() {
            let Some(ax) = self.axis(*v) else {
                return usage(format!("axis {v} not present in joint"));
            };
            out_stride[ax] = out_size;
            out_size *= self.dims[ax];
        }
        let mut out = vec![0.0; out_size];
        let mut idx = vec![0usize; self.dims.len()];
        let mut pos = 0usize;
        for &p in &self.values {
            out[pos] += p;
            // odometer over the full index, tracking the output offset
            for ax in (0..self.dims.len()).rev() {
                idx[ax] += 1;
                pos += out_stride[ax];
                if idx[ax] < self.dims[ax] {
                    break;
                }
                pos -= out_stride[ax] * self.dims[ax];
                idx[ax] = 0;
            }
        }
        Ok(out)
    }

    /// Joint entropy `H(vars)`; the empty set has entropy zero.
    pub fn entropy_of(&self, vars: &[Var]) -> Result<f64> {
        if vars.is_empty() {
            return Ok(0.0);
        }
        Ok(entropy_bits(&self.marginal(vars)?))
    }

    /// Same law with axes reordered.
    pub fn permuted(&self, order: &[Var]) -> Result<JointTensor> {
        if order.len() != self.vars.len() {
            return usage("permutation must list every axis once");
        }
        let axes: Vec<(Var, usize)> = order
            .iter()
            .map(|v| {
                self.dim_of(*v)
                    .map(|d| (*v, d))
                    .ok_or_else(|| Error::Usage(format!("axis {v} not present")))
            })
            .collect::<Result<_>>()?;
        let values = self.marginal(order)?;
        JointTensor::new(axes, values)
    }
}

pub(crate) fn odometer_step(idx: &mut [usize], dims: &[usize]) {
    for ax in (0..dims.len()).rev() {
        idx[ax] += 1;
        if idx[ax] < dims[ax] {
            return;
        }
        idx[ax] = 0;
    }
}

/// Entropy of `p` in the requested logarithm base.
pub fn entropy(p: &Pmf, log_base: f64) -> Result<f64> {
    if log_base.is_nan() || log_base <= 0.0 || log_base == 1.0 {
        return usage(format!("logarithm base {log_base}"));
    }
    Ok(entropy_bits(p.probs()) / log_base.log2())
}

/// Binary entropy function in bits.
pub fn binary_entropy(p: f64) -> f64 {
    entropy_bits(&[p, 1.0 - p])
}

fn check_disjoint(sets: &[&[Var]]) -> Result<()> {
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if let Some(v) = a.iter().find(|v| b.contains(v)) {
                return usage(format!("axis {v} appears in more than one argument"));
            }
        }
        for (j, v) in a.iter().enumerate() {
            if a[..j].contains(v) {
                return usage(format!("axis {v} repeated"));
            }
        }
    }
    Ok(())
}

fn union(sets: &[&[Var]]) -> Vec<Var> {
    sets.iter().flat_map(|s| s.iter().copied()).collect()
}

/// `I(A; B)` by exact marginalization.
pub fn mutual_information(joint: &JointTensor, a: &[Var], b: &[Var]) -> Result<f64> {
    check_disjoint(&[a, b])?;
    if a.is_empty() || b.is_empty() {
        return usage("mutual information needs two nonempty axis sets");
    }
    let i = joint.entropy_of(a)? + joint.entropy_of(b)? - joint.entropy_of(&union(&[a, b]))?;
    Ok(i.max(0.0))
}

/// `I(A; B | C)` by exact marginalization. An empty `C` gives `I(A; B)`.
pub fn conditional_mutual_information(
    joint: &JointTensor,
    a: &[Var],
    b: &[Var],
    c: &[Var],
) -> Result<f64> {
    check_disjoint(&[a, b, c])?;
    if a.is_empty() || b.is_empty() {
        return usage("conditional mutual information needs nonempty A and B");
    }
    let i = joint.entropy_of(&union(&[a, c]))? + joint.entropy_of(&union(&[b, c]))?
        - joint.entropy_of(&union(&[a, b, c]))?
        - joint.entropy_of(c)?;
    Ok(i.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn product(p: &[f64], q: &[f64]) -> JointTensor {
        JointTensor::from_fn(vec![(Var::X1, p.len()), (Var::Y, q.len())], |i| {
            p[i[0]] * q[i[1]]
        })
        .unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert_abs_diff_eq!(
            entropy(&Pmf::uniform(2), 2.0).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        let det = Pmf::new(vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(entropy(&det, 2.0).unwrap(), 0.0);
        let p = Pmf::new(vec![0.11, 0.89]).unwrap();
        // -0.11 log2 0.11 - 0.89 log2 0.89
        let oracle = 0.11 * (1.0f64 / 0.11).log2() + 0.89 * (1.0f64 / 0.89).log2();
        assert_abs_diff_eq!(oracle, 0.499916, epsilon = 1e-5);
        assert_abs_diff_eq!(entropy(&p, 2.0).unwrap(), oracle, epsilon = 1e-12);
        assert_abs_diff_eq!(
            entropy(&Pmf::uniform(4), std::f64::consts::E).unwrap(),
            4f64.ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn pmf_validation() {
        assert!(Pmf::new(vec![0.5, 0.6]).is_err());
        assert!(Pmf::new(vec![-0.1, 1.1]).is_err());
        assert!(Pmf::new(vec![]).is_err());
        assert!(Pmf::new(vec![0.5, 0.5 + 1e-13]).is_ok());
        assert!(Pmf::normalized(vec![0.0, 0.0]).is_err());
        assert!(entropy(&Pmf::uniform(2), 1.0).is_err());
    }

    #[test]
    fn mutual_information_examples() {
        let ind = product(&[0.3, 0.7], &[0.2, 0.5, 0.3]);
        assert_abs_diff_eq!(
            mutual_information(&ind, &[Var::X1], &[Var::Y]).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        let copy = JointTensor::from_fn(vec![(Var::X1, 4), (Var::Y, 4)], |i| {
            if i[0] == i[1] {
                0.25
            } else {
                0.0
            }
        })
        .unwrap();
        assert_abs_diff_eq!(
            mutual_information(&copy, &[Var::X1], &[Var::Y]).unwrap(),
            2.0,
            epsilon = 1e-12
        );
        assert!(mutual_information(&copy, &[Var::X1], &[Var::X1, Var::Y]).is_err());
        assert!(mutual_information(&copy, &[Var::X2], &[Var::Y]).is_err());
    }

    #[test]
    fn cmi_with_irrelevant_conditioning() {
        let joint = JointTensor::from_fn(vec![(Var::X1, 2), (Var::X2, 2), (Var::Y, 3)], |i| {
            let pab = [[0.4, 0.1], [0.2, 0.3]][i[0]][i[1]];
            pab * [0.2, 0.3, 0.5][i[2]]
        })
        .unwrap();
        let mi = mutual_information(&joint, &[Var::X1], &[Var::X2]).unwrap();
        let cmi =
            conditional_mutual_information(&joint, &[Var::X1], &[Var::X2], &[Var::Y]).unwrap();
        assert!(mi > 0.0);
        assert_abs_diff_eq!(mi, cmi, epsilon = 1e-12);
        assert!(
            conditional_mutual_information(&joint, &[Var::X1], &[Var::X2], &[Var::X1]).is_err()
        );
    }

    #[test]
    fn permutation_invariance() {
        let joint = JointTensor::from_fn(vec![(Var::X1, 2), (Var::X2, 3), (Var::Y, 2)], |i| {
            (1 + i[0] + 2 * i[1] + 3 * i[2]) as f64 / 60.0
        })
        .unwrap();
        let perm = joint.permuted(&[Var::Y, Var::X1, Var::X2]).unwrap();
        for (a, b) in [
            (vec![Var::X1], vec![Var::Y]),
            (vec![Var::X1, Var::X2], vec![Var::Y]),
            (vec![Var::X2], vec![Var::X1]),
        ] {
            assert_abs_diff_eq!(
                mutual_information(&joint, &a, &b).unwrap(),
                mutual_information(&perm, &a, &b).unwrap(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn delay_slots() {
        let ds = DelaySet::new(0, 1);
        assert_eq!(ds.size(), 2);
        assert_eq!(ds.delays(), vec![0, 1]);
        assert_eq!(ds.slot(1).unwrap(), 0);
        assert_eq!(ds.slot(0).unwrap(), 1);
        assert!(ds.slot(2).is_err());
        let sym = DelaySet::new(2, 1);
        assert_eq!(sym.delays(), vec![-2, -1, 0, 1]);
        assert_eq!(sym.slot(-2).unwrap(), 3);
    }

    #[test]
    fn channel_validation() {
        assert!(DiscreteChannel::new(1, 1, 2, vec![0.5, 0.48]).is_err());
        let ch = DiscreteChannel::new(1, 1, 2, vec![0.5, 0.5 + 5e-10]).unwrap();
        assert_abs_diff_eq!(ch.row(0, 0).iter().sum::<f64>(), 1.0, epsilon = 1e-15);
        assert!(DiscreteChannel::new(17, 1, 1, vec![1.0; 17]).is_err());
    }
}
