//! Rate-region geometry in the `(R1, R2)` plane.
//!
//! Every bound in the crate produces, for one parameter choice, a pentagon cut out
//! by `R1 <= c`, `R2 <= b` and `R1 + R2 <= a`. Because all of them share the same
//! three normal directions, intersections reduce to componentwise minima and the
//! union over parameter choices (followed by convexification, which is what time
//! sharing buys) is the convex hull of the pentagon vertices.

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::format::{fmt9, round9};

const COLLINEAR_EPS: f64 = 1e-12;

/// Default number of directions on the first-quadrant support grid (half-degree steps).
pub const DEFAULT_N_DIRS: usize = 181;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePair {
    pub r1: f64,
    pub r2: f64,
}

impl RatePair {
    pub fn new(r1: f64, r2: f64) -> Self {
        Self { r1, r2 }
    }
}

/// `{R1 >= 0, R2 >= 0, R1 <= c, R2 <= b, R1 + R2 <= a}`; `c` may be infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundPentagon {
    pub a: f64,
    pub b: f64,
    #[serde(with = "infinite_as_null")]
    pub c: f64,
}

impl BoundPentagon {
    /// Negative caps (numerical noise) clamp to zero.
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self {
            a: a.max(0.0),
            b: b.max(0.0),
            c: c.max(0.0),
        }
    }

    /// Pentagon without an individual cap on `R1`.
    pub fn sum_and_r2(a: f64, b: f64) -> Self {
        Self::new(a, b, f64::INFINITY)
    }

    pub fn vertices(&self) -> RegionHull {
        pentagon_vertices(self)
    }

    pub fn contains_point(&self, p: RatePair, tol: f64) -> bool {
        p.r1 >= -tol
            && p.r2 >= -tol
            && p.r1 <= self.c + tol
            && p.r2 <= self.b + tol
            && p.r1 + p.r2 <= self.a + tol
    }
}

pub(crate) mod infinite_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

/// Componentwise minimum of the caps.
pub fn intersect_pentagons(pentagons: &[BoundPentagon]) -> Result<BoundPentagon> {
    let Some(first) = pentagons.first() else {
        return usage("cannot intersect an empty list of pentagons");
    };
    let init = (first.a, first.b, first.c);
    let (a, b, c) = pentagons[1..]
        .iter()
        .fold(init, |(a, b, c), p| (a.min(p.a), b.min(p.b), c.min(p.c)));
    Ok(BoundPentagon::new(a, b, c))
}

/// Exact vertex list of a canonical pentagon, counterclockwise from the origin.
pub fn pentagon_vertices(p: &BoundPentagon) -> RegionHull {
    let a = p.a.max(0.0);
    let b = p.b.max(0.0).min(a);
    let c = p.c.max(0.0).min(a);
    let mut pts = vec![RatePair::new(0.0, 0.0), RatePair::new(c, 0.0)];
    if c <= a - b {
        pts.push(RatePair::new(c, b));
    } else {
        pts.push(RatePair::new(c, a - c));
        pts.push(RatePair::new(a - b, b));
    }
    pts.push(RatePair::new(0.0, b));
    RegionHull::from_points(pts)
}

/// `max w1 R1 + w2 R2` over the pentagon.
pub fn support(p: &BoundPentagon, w1: f64, w2: f64) -> Result<f64> {
    check_direction(w1, w2)?;
    Ok(max_dot(&pentagon_vertices(p).vertices, w1, w2))
}

fn check_direction(w1: f64, w2: f64) -> Result<()> {
    if w1 < 0.0 || w2 < 0.0 || (w1 == 0.0 && w2 == 0.0) || !w1.is_finite() || !w2.is_finite() {
        return usage(format!(
            "support direction ({w1}, {w2}) must be nonzero and nonnegative"
        ));
    }
    Ok(())
}

fn max_dot(pts: &[RatePair], w1: f64, w2: f64) -> f64 {
    pts.iter()
        .map(|v| w1 * v.r1 + w2 * v.r2)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Convex hull of the union of the given pentagons.
pub fn union_hull<I>(pentagons: I) -> RegionHull
where
    I: IntoIterator<Item = BoundPentagon>,
{
    let mut pts = vec![RatePair::new(0.0, 0.0)];
    for p in pentagons {
        pts.extend(pentagon_vertices(&p).vertices);
    }
    RegionHull::from_points(pts)
}

/// Direction `(cos t, sin t)` for `n_dirs` angles evenly spaced over `[0, pi/2]`.
pub fn direction_grid(n_dirs: usize) -> Result<Vec<(f64, f64)>> {
    if n_dirs < 3 {
        return usage(format!(
            "direction grid needs at least 3 directions, got {n_dirs}"
        ));
    }
    Ok((0..n_dirs)
        .map(|k| {
            let t = std::f64::consts::FRAC_PI_2 * k as f64 / (n_dirs - 1) as f64;
            // snap the endpoints so axis directions are exact
            match k {
                0 => (1.0, 0.0),
                _ if k == n_dirs - 1 => (0.0, 1.0),
                _ => (t.cos(), t.sin()),
            }
        })
        .collect())
}

/// One supporting line of a region: direction and support value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupportLine {
    pub w1: f64,
    pub w2: f64,
    pub value: f64,
}

/// Closed convex region given by its counterclockwise vertex list starting at the origin.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionHull {
    vertices: Vec<RatePair>,
}

impl RegionHull {
    /// The region `{(0, 0)}`.
    pub fn origin() -> Self {
        Self {
            vertices: vec![RatePair::new(0.0, 0.0)],
        }
    }

    /// Convex hull of `pts` together with the origin. Ties are broken
    /// lexicographically and collinear points are dropped.
    pub fn from_points(mut pts: Vec<RatePair>) -> Self {
        pts.push(RatePair::new(0.0, 0.0));
        pts.retain(|p| p.r1.is_finite() && p.r2.is_finite());
        for p in &mut pts {
            p.r1 = p.r1.max(0.0);
            p.r2 = p.r2.max(0.0);
        }
        pts.sort_by(|a, b| a.r1.total_cmp(&b.r1).then(a.r2.total_cmp(&b.r2)));
        pts.dedup_by(|a, b| a.r1 == b.r1 && a.r2 == b.r2);
        if pts.len() <= 2 {
            return Self { vertices: pts };
        }
        let scale = pts
            .iter()
            .map(|p| p.r1.abs().max(p.r2.abs()))
            .fold(1.0, f64::max);
        let eps = COLLINEAR_EPS * scale * scale;
        let mut lower: Vec<RatePair> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2
                && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= eps
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<RatePair> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2
                && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= eps
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.is_empty() {
            lower.push(pts[0]);
        }
        Self { vertices: lower }
    }

    pub fn vertices(&self) -> &[RatePair] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn support(&self, w1: f64, w2: f64) -> Result<f64> {
        check_direction(w1, w2)?;
        Ok(max_dot(&self.vertices, w1, w2))
    }

    pub fn support_grid(&self, n_dirs: usize) -> Result<Vec<SupportLine>> {
        Ok(direction_grid(n_dirs)?
            .into_iter()
            .map(|(w1, w2)| SupportLine {
                w1,
                w2,
                value: max_dot(&self.vertices, w1, w2),
            })
            .collect())
    }

    /// Largest outward half-plane distance of `p` (zero or negative when inside).
    /// Degenerate regions (point, segment) use Euclidean distance.
    pub fn outside_distance(&self, p: RatePair) -> f64 {
        let v = &self.vertices;
        match v.len() {
            0 => f64::INFINITY,
            1 => dist(v[0], p),
            2 => segment_distance(v[0], v[1], p),
            n => (0..n)
                .map(|i| {
                    let (a, b) = (v[i], v[(i + 1) % n]);
                    let len = dist(a, b);
                    -cross(a, b, p) / len
                })
                .fold(f64::NEG_INFINITY, f64::max),
        }
    }

    pub fn contains_point(&self, p: RatePair, tol: f64) -> bool {
        self.outside_distance(p) <= tol
    }

    /// Convexity invariant: counterclockwise turns only, nonnegative vertices, origin first.
    pub fn is_valid(&self) -> bool {
        let v = &self.vertices;
        if v.is_empty() || v[0] != RatePair::new(0.0, 0.0) {
            return false;
        }
        if v.iter().any(|p| p.r1 < 0.0 || p.r2 < 0.0) {
            return false;
        }
        let n = v.len();
        n < 3 || (0..n).all(|i| cross(v[i], v[(i + 1) % n], v[(i + 2) % n]) > 0.0)
    }

    /// Rows `vertex_index,r1,r2`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("vertex_index,r1,r2\n");
        for (i, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("{i},{},{}\n", fmt9(v.r1), fmt9(v.r2)));
        }
        s
    }

    /// Ordered vertex array `[[r1, r2], ...]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.vertices
                .iter()
                .map(|v| serde_json::json!([round9(v.r1), round9(v.r2)]))
                .collect(),
        )
    }
}

/// True iff every vertex of `inner` lies within `tol` of `outer`.
pub fn contains(outer: &RegionHull, inner: &RegionHull, tol: f64) -> bool {
    inner.vertices.iter().all(|&p| outer.contains_point(p, tol))
}

fn cross(o: RatePair, a: RatePair, b: RatePair) -> f64 {
    (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1)
}

fn dist(a: RatePair, b: RatePair) -> f64 {
    (a.r1 - b.r1).hypot(a.r2 - b.r2)
}

fn segment_distance(a: RatePair, b: RatePair, p: RatePair) -> f64 {
    let (dx, dy) = (b.r1 - a.r1, b.r2 - a.r2);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return dist(a, p);
    }
    let t = (((p.r1 - a.r1) * dx + (p.r2 - a.r2) * dy) / len2).clamp(0.0, 1.0);
    dist(RatePair::new(a.r1 + t * dx, a.r2 + t * dy), p)
}
