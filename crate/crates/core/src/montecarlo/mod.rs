//! Monte Carlo sampling of flat-measure two-qubit density matrices over the
//! reals, complexes and quaternions.

mod estimate;
mod matrix;
mod quaternion;
mod sampler;

pub use estimate::{
    det_interval, estimate_moments, estimate_probability, run, target_probability, MCConfig, MCResult, CHUNK_SIZE,
};
pub use matrix::{det_pt, partial_transpose, Algebra, DensityMatrix, Entries, SelfAdjointMatrix};
pub use quaternion::Quaternion;
pub use sampler::{sample_density, sample_ginibre};
