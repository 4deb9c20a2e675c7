//! Monte Carlo machinery for studying the fluctuations of the log-volume of
//! random convex bodies in high dimension: random (pinned) simplices,
//! parallelotopes, zonotopes, cross-polytopes, and bodies spanned by points
//! drawn from radially symmetric measures on the `ℓ_p`-ball.
//!
//! The crate is organized around the pipeline
//!
//! ```text
//! sampling  →  linalg  →  geometry  →  stats  →  harness
//! ```
//!
//! * [`specfun`] — scalar special functions (`ln Γ`, `ψ`, `ψ₁`, `Φ`) used by
//!   centerings, moment identities, and distribution comparisons.
//! * [`sampling`] — reproducible random streams, the entry distributions for
//!   i.i.d. matrix models, the gamma sampler, and the `ℓ_p`-ball measures.
//! * [`linalg`] — dense kernels: pivoted log-determinant, unit normals, and
//!   point-to-hyperplane distances.
//! * [`geometry`] — body families with exact log-volumes, random-body volume
//!   formulas, and the standardized statistics.
//! * [`stats`] — empirical samples, Kolmogorov distances to the normal and
//!   half-normal laws, moments and quantiles.
//! * [`harness`] — the experiment runner behind the `hdvol` CLI: parallel
//!   trial execution, CSV/JSON reports, and the self-test suite.

pub mod error;
pub mod geometry;
pub mod harness;
pub mod linalg;
pub mod sampling;
pub mod specfun;
pub mod stats;

pub use error::Error;
pub use geometry::{BodyModel, CenteringMode, StandardizationModel};
pub use harness::{ExperimentConfig, ExperimentKind, ExperimentOutput, ExperimentReport};
pub use linalg::{LogDetResult, SquareMatrix};
pub use sampling::{EntryDistribution, LpBallModel, RngStream};
pub use stats::Sample;

/// Crate result type.
pub type Result<T> = std::result::Result<T, Error>;
