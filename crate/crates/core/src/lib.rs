//! Frequency-decoupled video motion magnification.
//!
//! The library decomposes each frame into multi-level high-frequency
//! detail bands and a deep low-frequency structure band, models inter-frame
//! motion as the difference of deep low-frequency features, denoises both
//! sides with sparse channel-attention filters, amplifies the motion field
//! point-wise, and recouples the bands through a sub-pixel decoder.
//!
//! Alongside the model it ships the pieces needed to exercise it end to
//! end without external data: a synthetic moving-foreground benchmark
//! generator, full-reference metrics (SSIM, a deterministic perceptual
//! distance, sub-pixel displacement estimation), the training losses, a
//! seeded Adam training harness with binary checkpoints, and PNG sequence
//! I/O for the `freqmag` CLI.

pub mod autodiff;
pub mod error;
pub mod frame;
pub mod loss;
pub mod metrics;
pub mod model;
pub mod seq;
pub mod synth;
pub mod tensor;
pub mod train;

pub use error::{Error, Result};
pub use frame::{FeatureMap, Frame, FrequencyPyramid, MotionField};
pub use tensor::Tensor;
