//! Non-adaptive complex group testing.
//!
//! A hidden family of *positive complexes* (item subsets, each with a
//! trigger threshold) is recovered from one batch of pooled boolean tests.
//! The crate provides:
//!
//! - [`matrix`]: disjunct measurement matrices — verification (exhaustive and
//!   Monte-Carlo), random and code-concatenation constructions, the stacked
//!   `[M; complement]` form, the composed block design, and a text file
//!   format;
//! - [`model`]: the hidden structure, both test-channel semantics, outcome
//!   simulation, and adversarial bit flips;
//! - [`decode`]: the outcome conversion rule, the cover decoder, block
//!   sanitization, and the two error-tolerant decoding algorithms;
//! - [`oracle`]: brute-force reference recovery used to certify the decoders
//!   on small instances;
//! - [`experiment`]: a seeded trial harness with machine-readable reports.

pub mod bits;
pub mod decode;
pub mod experiment;
pub mod matrix;
pub mod model;
pub mod oracle;
pub(crate) mod rng;
pub mod sets;

pub use sets::Item;
