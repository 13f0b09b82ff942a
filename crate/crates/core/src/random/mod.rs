//! Stochastic primitives: seeded streams, exponent parameters, arrival-rate
//! classes, Zipf samplers and the population-distance radial sampler.

mod params;
mod radial;
mod streams;
mod zipf;

pub use params::{lambda_eval, ExponentParams, LambdaClass};
pub use radial::{RadialSampler, RadialTable, DEFAULT_GRID_POINTS};
pub(crate) use radial::sample_around;
pub use streams::{network_rng, replicate_seed, session_rng, SimRng};
pub use zipf::{zipf_pmf, zipf_tail_class, ZipfPmf};
