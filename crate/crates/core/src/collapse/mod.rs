//! Photon counting as a measurement: the photon-traced ensemble, a seeded
//! photon-count sampler, and a dense eigendecomposition oracle for sector
//! weights.

mod ensemble;
mod oracle;
mod sampler;

pub use ensemble::{ensemble_observable, mixed_state_ensemble, CollapseEnsemble, CollapseOutcome, Observable};
pub use oracle::{brute_force_sector_weights, ORACLE_MAX_SITES};
pub use sampler::{sample_collapse, CollapseSampler, SampleReport, SHARD_SIZE};
