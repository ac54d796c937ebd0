//! The end-to-end link pipeline: thermal preparation, squeezing, nanowire
//! propagation, and the 50:50 beam splitter whose output correlations carry
//! the encoded symbol.

use crate::channel::{propagate, ChannelParams};
use crate::error::Result;
use crate::gaussian::{beam_splitter, CovMat1, CovMat2, SqueezeSpec, ThermalOccupation};

/// A transmitter/channel operating point: the thermal preparation noise and
/// the propagation channel. The squeezing level is supplied per symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    nbar: ThermalOccupation,
    channel: ChannelParams,
}

impl OperatingPoint {
    pub fn new(nbar: ThermalOccupation, channel: ChannelParams) -> Self {
        Self { nbar, channel }
    }

    pub fn nbar(&self) -> ThermalOccupation {
        self.nbar
    }

    pub fn channel(&self) -> &ChannelParams {
        &self.channel
    }

    /// Covariance of the beam-splitter outputs for a carrier squeezed by
    /// `squeeze`: thermal(n̄) → squeeze → loss → 50:50 BS against vacuum.
    pub fn output_covariance(&self, squeeze: &SqueezeSpec) -> Result<CovMat2> {
        let prepared = CovMat1::thermal(self.nbar).apply_squeeze(squeeze)?;
        let received = propagate(&prepared, &self.channel)?;
        beam_splitter(&received, &CovMat1::vacuum())
    }
}
