//! End-to-end construction for both settings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::spanner::{modified_yao, SpannerParams};
use crate::triangulation::{delaunay_with, CocircularPolicy, GeoGraph};
use crate::unitdisk::{ldel2_with, simulate_distributed_with, DistributedRun, UnitDiskInstance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Mode {
    /// Delaunay graph of the full point set, then the modified Yao step.
    #[default]
    Euclidean,
    /// Unit disk graph, its 2-localized Delaunay graph, then the modified
    /// Yao step; also runs the distributed simulation.
    Udg,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Euclidean => "EUCLIDEAN",
            Mode::Udg => "UDG",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "EUCLIDEAN" => Ok(Mode::Euclidean),
            "UDG" => Ok(Mode::Udg),
            other => Err(Error::Precondition(format!("unknown mode {other:?}"))),
        }
    }
}

/// Output of [`build`].
#[derive(Debug, Clone)]
pub struct Build {
    pub mode: Mode,
    /// Delaunay graph (Euclidean) or 2-localized Delaunay graph (UDG).
    pub base: GeoGraph,
    /// Modified Yao subgraph of `base`.
    pub spanner: GeoGraph,
    /// The unit disk graph (UDG mode only).
    pub unit_disk: Option<GeoGraph>,
    /// The distributed run (UDG mode only).
    pub distributed: Option<DistributedRun>,
}

pub fn build(
    points: &[Point],
    params: &SpannerParams,
    mode: Mode,
    policy: CocircularPolicy,
) -> Result<Build> {
    match mode {
        Mode::Euclidean => {
            let base = delaunay_with(points, policy)?;
            let spanner = modified_yao(&base, params);
            Ok(Build {
                mode,
                base,
                spanner,
                unit_disk: None,
                distributed: None,
            })
        }
        Mode::Udg => {
            let u = UnitDiskInstance::new(points.to_vec())?;
            let base = ldel2_with(&u, policy)?;
            let spanner = modified_yao(&base, params);
            let run = simulate_distributed_with(&u, params, policy)?;
            Ok(Build {
                mode,
                base,
                spanner,
                unit_disk: Some(u.graph().clone()),
                distributed: Some(run),
            })
        }
    }
}
