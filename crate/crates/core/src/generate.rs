//! Seeded random instances.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distribution {
    /// Independent uniform points in the region.
    #[default]
    Uniform,
    /// Gaussian blobs around `ceil(sqrt(n))` uniform centers with standard
    /// deviation `width / 20`.
    Clustered,
    /// The first `n` points of a `ceil(sqrt(n))`-square lattice, each
    /// jittered by up to `1e-3` of the spacing.
    Grid,
}

impl Distribution {
    pub const ALL: [Distribution; 3] = [
        Distribution::Uniform,
        Distribution::Clustered,
        Distribution::Grid,
    ];
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Distribution::Uniform => "uniform",
            Distribution::Clustered => "clustered",
            Distribution::Grid => "grid",
        })
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "uniform" => Ok(Distribution::Uniform),
            "clustered" => Ok(Distribution::Clustered),
            "grid" => Ok(Distribution::Grid),
            other => Err(Error::Precondition(format!(
                "unknown distribution {other:?}"
            ))),
        }
    }
}

/// Axis-aligned region `[0, width] x [0, height]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub width: f64,
    pub height: f64,
}

impl Region {
    pub fn new(width: f64, height: f64) -> Result<Self> {
        if !(width > 0.0 && height > 0.0 && width.is_finite() && height.is_finite()) {
            return Err(Error::Precondition(format!(
                "region {width}x{height} must be positive"
            )));
        }
        Ok(Region { width, height })
    }

    pub fn unit() -> Self {
        Region {
            width: 1.0,
            height: 1.0,
        }
    }
}

impl Default for Region {
    fn default() -> Self {
        Region::unit()
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.width, self.height)
    }
}

impl FromStr for Region {
    type Err = Error;

    /// Parses `WxH`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("region {s:?} is not of the form WxH"));
        let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        let w: f64 = w.trim().parse().map_err(|_| bad())?;
        let h: f64 = h.trim().parse().map_err(|_| bad())?;
        Region::new(w, h)
    }
}

/// Deterministic instance for `(n, dist, region, seed)`. Ids are `0..n` and
/// coordinates are pairwise distinct.
pub fn generate(n: usize, dist: Distribution, region: Region, seed: u64) -> Result<Vec<Point>> {
    if n < 2 {
        return Err(Error::TooFewPoints { need: 2, got: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = (n as f64).sqrt().ceil() as usize;
    let centers: Vec<(f64, f64)> = match dist {
        Distribution::Clustered => (0..side)
            .map(|_| {
                (
                    rng.random::<f64>() * region.width,
                    rng.random::<f64>() * region.height,
                )
            })
            .collect(),
        _ => Vec::new(),
    };
    let spread = Normal::new(0.0, region.width / 20.0).expect("positive deviation");
    let (sx, sy) = (region.width / side as f64, region.height / side as f64);

    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        loop {
            let (x, y) = match dist {
                Distribution::Uniform => (
                    rng.random::<f64>() * region.width,
                    rng.random::<f64>() * region.height,
                ),
                Distribution::Clustered => {
                    let (cx, cy) = centers[rng.random_range(0..side)];
                    (cx + spread.sample(&mut rng), cy + spread.sample(&mut rng))
                }
                Distribution::Grid => {
                    let (r, c) = (i / side, i % side);
                    let jx = (rng.random::<f64>() * 2.0 - 1.0) * 1e-3 * sx;
                    let jy = (rng.random::<f64>() * 2.0 - 1.0) * 1e-3 * sy;
                    ((c as f64 + 0.5) * sx + jx, (r as f64 + 0.5) * sy + jy)
                }
            };
            if seen.insert((x.to_bits(), y.to_bits())) {
                out.push(Point::new(i, x, y));
                break;
            }
        }
    }
    Ok(out)
}
