//! Coherence, discord and decoherence geometry of two-qubit Bell-diagonal and
//! X states.
//!
//! * [`states`]: density matrices, closed-form spectra and a Jacobi eigensolver.
//! * [`measures`]: l1, trace-norm and relative-entropy coherence; discord.
//! * [`channels`]: bit/phase/bit-phase flip and generalized amplitude damping.
//! * [`geometry`]: sampled fields, marching-cubes level surfaces, OBJ export.
//! * [`verify`]: closed-form versus numeric cross-check suites.
//!
//! Data-parallel loops use rayon when the `parallel` feature is on (default)
//! and run sequentially otherwise; results are identical either way.

pub mod channels;
pub mod error;
pub mod geometry;
pub mod measures;
pub mod par;
pub mod sampling;
pub mod states;
pub mod verify;

pub use channels::{
    apply_product_channel, bell_param_map, dynamics_trajectory, kraus_ops, ChannelKind, KrausSet,
};
pub use error::{Error, Result};
pub use geometry::{
    classify_point, extract_isosurface, sample_field, surface_stats, RegionTag, ScalarGrid, Slice,
    TriangleMesh,
};
pub use measures::{
    discord_bell, discord_equals_coherence, l1_coherence, relative_entropy_coherence,
    trace_norm_coherence_x, MeasureKind, MeasureValue,
};
pub use states::{
    bell_density, bell_spectrum, correlations_of, hermitian_spectrum, von_neumann_entropy,
    x_density, x_spectrum, BellParams, DensityMatrix, Spectrum, XParams,
};
