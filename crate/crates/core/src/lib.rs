//! Covariance-matrix simulator for classical data encoded in the squeezing
//! of noisy Gaussian states and sent over a lossy nanowire channel.
//!
//! The pipeline: prepare a thermal state of occupation n̄, squeeze it,
//! propagate through a channel of transmittance η = e^(−L/L₀), split it on a
//! 50:50 beam splitter, and read the symbol back from the quadrature
//! cross-correlation Ĉ = x̂₁x̂₂ − p̂₁p̂₂ of the output ports.
//!
//! [`gaussian`] holds the states and symplectic maps, [`channel`] the loss
//! model, [`receiver`] the analytic estimator statistics, [`montecarlo`] the
//! deterministic sampling machinery, and [`codec`] the alphabet framing and
//! symbol-error accounting.
//!
//! Monte Carlo trial loops run on rayon when the default `parallel` feature
//! is enabled and fall back to sequential execution without it; results are
//! bit-identical either way.
//!
//! ```
//! use sqzlink::{
//!     ChannelParams, MeasurementModel, OperatingPoint, SqueezeSpec, ThermalOccupation,
//! };
//!
//! let point = OperatingPoint::new(
//!     ThermalOccupation::new(10_000.0)?,
//!     ChannelParams::from_length_ratio(10.0)?,
//! );
//! let stats = sqzlink::receiver::snr_and_copies(
//!     &point,
//!     &SqueezeSpec::paper(0.576)?,
//!     MeasurementModel::JointPhaseSpace,
//! )?;
//! assert_eq!(stats.m_required, sqzlink::CopyCount::Finite(2));
//! # Ok::<(), sqzlink::Error>(())
//! ```

pub mod channel;
pub mod codec;
pub mod error;
pub mod gaussian;
pub mod link;
pub mod montecarlo;
pub mod receiver;

pub use channel::{propagate, ChannelParams};
pub use codec::{Alphabet, EncodedPayload, FrameSpec, SerReport};
pub use error::{Error, Result};
pub use gaussian::{
    beam_splitter, CovMat1, CovMat2, SqueezeConvention, SqueezeSpec, ThermalOccupation,
};
pub use link::OperatingPoint;
pub use montecarlo::{DetectionReport, QuadratureSampler, RngSpec, TrialResult};
pub use receiver::{CopyCount, CorrelationStats, MeasurementModel};
