//! Bundled example channels and the channel JSON format.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prob::{binary_entropy, DelaySet, DiscreteChannel, Labels, Pmf};
use crate::region::{pentagon_vertices, BoundPentagon, RegionHull};

/// A region known in closed form for a bundled channel.
#[derive(Debug, Clone, PartialEq)]
pub struct KnownRegion {
    /// Which setting the region belongs to, e.g. `"acmac"` or `"accmac"`.
    pub tag: String,
    pub hull: RegionHull,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedChannel {
    pub id: String,
    pub channel: DiscreteChannel,
    pub delays: DelaySet,
    pub known_regions: Vec<KnownRegion>,
}

impl NamedChannel {
    pub fn with_delays(mut self, delays: DelaySet) -> Self {
        self.delays = delays;
        self
    }

    pub fn known_region(&self, tag: &str) -> Option<&RegionHull> {
        self.known_regions
            .iter()
            .find(|k| k.tag == tag)
            .map(|k| &k.hull)
    }

    pub fn to_file(&self) -> ChannelFile {
        ChannelFile::from_channel(&self.channel, self.delays)
    }
}

/// `y = x2 mod x1` with `x1` in `{2, 4}` and `x2, y` in `{0, 1, 2, 3}`.
pub fn mod_channel() -> DiscreteChannel {
    let moduli = [2, 4];
    let mut ch = DiscreteChannel::deterministic(2, 4, 4, |x1, x2| x2 % moduli[x1])
        .expect("static channel is valid");
    ch.set_labels(Labels {
        x1: vec!["2".into(), "4".into()],
        x2: (0..4).map(|s| s.to_string()).collect(),
        y: (0..4).map(|s| s.to_string()).collect(),
    })
    .expect("label sizes match");
    ch
}

pub fn build_mod_channel() -> NamedChannel {
    NamedChannel {
        id: "mod".into(),
        channel: mod_channel(),
        delays: DelaySet::synchronous(),
        known_regions: vec![
            KnownRegion {
                tag: "acmac".into(),
                hull: pentagon_vertices(&BoundPentagon::sum_and_r2(2.0, 2.0)),
            },
            KnownRegion {
                tag: "accmac".into(),
                hull: pentagon_vertices(&BoundPentagon::new(2.0, 2.0, 1.0)),
            },
        ],
    }
}

/// `y = x1 xor x2 xor z` with `z ~ Bernoulli(p)`.
pub fn binary_additive(p: f64) -> Result<DiscreteChannel> {
    if !(0.0..=0.5).contains(&p) {
        return Err(Error::InvalidChannel(format!(
            "crossover probability {p} outside [0, 0.5]"
        )));
    }
    let mut t = Vec::with_capacity(8);
    for x1 in 0..2 {
        for x2 in 0..2 {
            let flip = (x1 ^ x2) == 1;
            t.extend(if flip { [p, 1.0 - p] } else { [1.0 - p, p] });
        }
    }
    DiscreteChannel::new(2, 2, 2, t)
}

pub fn build_binary_additive(p: f64) -> Result<NamedChannel> {
    let cap = 1.0 - binary_entropy(p);
    Ok(NamedChannel {
        id: format!("binary-additive-{p}"),
        channel: binary_additive(p)?,
        delays: DelaySet::new(0, 1),
        known_regions: vec![KnownRegion {
            tag: "acmac".into(),
            hull: pentagon_vertices(&BoundPentagon::sum_and_r2(cap, cap)),
        }],
    })
}

/// Channel with every row drawn uniformly from the output simplex.
pub fn random_channel<R: Rng + ?Sized>(
    rng: &mut R,
    x1_size: usize,
    x2_size: usize,
    y_size: usize,
) -> Result<DiscreteChannel> {
    let mut t = Vec::with_capacity(x1_size * x2_size * y_size);
    for _ in 0..x1_size * x2_size {
        t.extend_from_slice(Pmf::random(rng, y_size).probs());
    }
    DiscreteChannel::new(x1_size, x2_size, y_size, t)
}

/// On-disk channel description. Transition is indexed `[x1][x2][y]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelFile {
    pub x1_alphabet: Vec<String>,
    pub x2_alphabet: Vec<String>,
    pub y_alphabet: Vec<String>,
    pub transition: Vec<Vec<Vec<f64>>>,
    pub d_min: usize,
    pub d_max: usize,
}

impl ChannelFile {
    pub fn from_channel(ch: &DiscreteChannel, ds: DelaySet) -> Self {
        let labels = ch.labels().clone();
        let transition = (0..ch.x1_size())
            .map(|x1| {
                (0..ch.x2_size())
                    .map(|x2| ch.row(x1, x2).to_vec())
                    .collect()
            })
            .collect();
        Self {
            x1_alphabet: labels.x1,
            x2_alphabet: labels.x2,
            y_alphabet: labels.y,
            transition,
            d_min: ds.d_min,
            d_max: ds.d_max,
        }
    }

    pub fn delays(&self) -> DelaySet {
        DelaySet::new(self.d_min, self.d_max)
    }

    /// Shape checks followed by row validation (renormalizing rows within tolerance).
    pub fn to_channel(&self) -> Result<(DiscreteChannel, DelaySet)> {
        let (n1, n2, ny) = (
            self.x1_alphabet.len(),
            self.x2_alphabet.len(),
            self.y_alphabet.len(),
        );
        if self.transition.len() != n1 {
            return Err(Error::InvalidChannel(format!(
                "transition has {} x1 entries, alphabet has {n1}",
                self.transition.len()
            )));
        }
        let mut flat = Vec::with_capacity(n1 * n2 * ny);
        for (x1, plane) in self.transition.iter().enumerate() {
            if plane.len() != n2 {
                return Err(Error::InvalidChannel(format!(
                    "transition[{x1}] has {} x2 entries, alphabet has {n2}",
                    plane.len()
                )));
            }
            for (x2, row) in plane.iter().enumerate() {
                if row.len() != ny {
                    return Err(Error::InvalidChannel(format!(
                        "transition[{x1}][{x2}] has {} entries, output alphabet has {ny}",
                        row.len()
                    )));
                }
                flat.extend_from_slice(row);
            }
        }
        let labels = Labels {
            x1: self.x1_alphabet.clone(),
            x2: self.x2_alphabet.clone(),
            y: self.y_alphabet.clone(),
        };
        Ok((DiscreteChannel::with_labels(flat, labels)?, self.delays()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidChannel(format!("schema: {e}")))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("channel file serializes")
    }
}
