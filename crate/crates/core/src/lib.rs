//! Bounded-degree plane geometric spanners.
//!
//! The crate builds a subgraph of the Delaunay graph of a planar point set
//! with maximum degree `k` (for any `k >= 14`), keeping the graph plane and
//! stretching distances by at most `1 + 2pi / (k cos(pi/k))` relative to the
//! Delaunay graph. The same selection step, applied to the 2-localized
//! Delaunay graph of a unit disk graph, gives a strictly local four-round
//! distributed construction.
//!
//! ```
//! use planespan::{delaunay, generate, modified_yao, Distribution, Region, SpannerParams};
//!
//! let points = generate(200, Distribution::Uniform, Region::unit(), 1).unwrap();
//! let g = delaunay(&points).unwrap();
//! let h = modified_yao(&g, &SpannerParams::new(14).unwrap());
//! assert!(h.max_degree() <= 14);
//! ```

pub mod cli;
pub mod error;
pub mod generate;
pub mod geom;
pub mod io;
pub mod pipeline;
pub mod spanner;
pub mod triangulation;
pub mod unitdisk;
pub mod verify;
pub mod witness;

pub use error::{Error, Result};
pub use generate::{generate, Distribution, Region};
pub use geom::{Circle, CircleSide, Orientation, Point};
pub use pipeline::{build, Build, Mode};
pub use spanner::{modified_yao, SpannerParams};
pub use triangulation::{delaunay, delaunay_with, emst, CocircularPolicy, GeoGraph, SpanningTree};
pub use unitdisk::{ldel2, simulate_distributed, unit_disk_graph, UnitDiskInstance};
pub use verify::{verify_theorem, VerificationReport};
pub use witness::{check_canpath, WitnessPath};
