//! Centroid-based clustering optimizers.
//!
//! Three algorithms minimize the same objective, the sum over all objects of
//! the Euclidean distance to the nearest centroid:
//!
//! * [`kmeans`]: Lloyd iteration (assign, recompute means, repeat).
//! * [`fpa`]: the flower pollination algorithm, a population search mixing
//!   Lévy-flight moves toward the global best with differential moves
//!   between random peers.
//! * [`fpakm`]: flower pollination that tries a K-Means step on every flower
//!   once the global best has stagnated for `limit` sweeps.
//!
//! [`evaluation`] scores a clustering against ground-truth classes with the
//! F-measure, and [`bench`] runs seeded repeated experiments and reports
//! best/worst/average/std statistics.

pub mod bench;
pub mod dataset;
pub mod error;
pub mod evaluation;
pub mod fpa;
pub mod fpakm;
pub mod kmeans;
pub mod levy;
pub mod objective;

pub use dataset::{Bounds, DataPoint, Dataset};
pub use error::{Error, Result};
pub use objective::{Assignment, CentroidSolution};

use rand::SeedableRng;

/// Random stream used by every stochastic routine in the crate.
///
/// ChaCha8 is platform independent, so a seed reproduces a run bit for bit
/// on any machine.
pub type SeededRng = rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}
