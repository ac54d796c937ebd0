//! Nanowire propagation model: physical length to intensity transmittance
//! η = e^(−L/L₀), applied as a pure-loss channel on the covariance matrix.
//!
//! Length units are arbitrary but must be consistent; only the ratio L/L₀
//! ever enters the math, so the dimensionless form is the primary interface.

use crate::error::{Error, Result};
use crate::gaussian::CovMat1;

/// Resolved channel: intensity transmittance plus the equivalent propagation
/// ratio L/L₀ (which is −ln η).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    eta: f64,
    length_ratio: f64,
}

impl ChannelParams {
    /// Channel over length `l` with characteristic propagation length `l0`.
    pub fn from_lengths(l: f64, l0: f64) -> Result<Self> {
        if !l.is_finite() || l < 0.0 {
            return Err(Error::Domain(format!("length must be finite and >= 0, got {l}")));
        }
        if !l0.is_finite() || l0 <= 0.0 {
            return Err(Error::Domain(format!(
                "characteristic length must be finite and > 0, got {l0}"
            )));
        }
        Self::from_length_ratio(l / l0)
    }

    /// Channel specified by the dimensionless ratio L/L₀.
    pub fn from_length_ratio(ratio: f64) -> Result<Self> {
        if !ratio.is_finite() || ratio < 0.0 {
            return Err(Error::Domain(format!("L/L0 must be finite and >= 0, got {ratio}")));
        }
        Ok(Self { eta: (-ratio).exp(), length_ratio: ratio })
    }

    /// Channel specified directly by its intensity transmittance.
    pub fn from_transmittance(eta: f64) -> Result<Self> {
        if !eta.is_finite() || !(0.0..=1.0).contains(&eta) {
            return Err(Error::Domain(format!("transmittance must lie in [0, 1], got {eta}")));
        }
        Ok(Self { eta, length_ratio: -eta.ln() })
    }

    /// Lossless channel (η = 1).
    pub fn identity() -> Self {
        Self { eta: 1.0, length_ratio: 0.0 }
    }

    pub fn transmittance(&self) -> f64 {
        self.eta
    }

    /// L/L₀; +∞ for a fully opaque channel.
    pub fn length_ratio(&self) -> f64 {
        self.length_ratio
    }
}

/// Propagates a single-mode state through the channel: V → ηV + (1−η)V_vac.
pub fn propagate(v: &CovMat1, params: &ChannelParams) -> Result<CovMat1> {
    v.apply_loss(params.transmittance())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{SqueezeSpec, ThermalOccupation};
    use approx::assert_relative_eq;

    #[test]
    fn transmittance_forms() {
        assert_eq!(ChannelParams::from_lengths(0.0, 2.0).unwrap().transmittance(), 1.0);
        let eta10 = ChannelParams::from_lengths(10.0, 1.0).unwrap().transmittance();
        assert_relative_eq!(eta10, 4.539_992_976_248_485_4e-5, max_relative = 1e-12);
        assert_relative_eq!(
            ChannelParams::from_lengths(3.0, 3.0).unwrap().transmittance(),
            0.367_879_441_171_442_33,
            max_relative = 1e-12
        );
        let direct = ChannelParams::from_transmittance(0.25).unwrap();
        assert_eq!(direct.transmittance(), 0.25);
        assert_relative_eq!(direct.length_ratio(), 4.0f64.ln(), max_relative = 1e-15);

        assert!(ChannelParams::from_lengths(1.0, 0.0).is_err());
        assert!(ChannelParams::from_lengths(1.0, -2.0).is_err());
        assert!(ChannelParams::from_lengths(-1.0, 2.0).is_err());
        assert!(ChannelParams::from_transmittance(1.5).is_err());
        assert!(ChannelParams::from_length_ratio(-0.1).is_err());
    }

    #[test]
    fn propagate_matches_loss_channel() {
        let vac = CovMat1::vacuum();
        let far = ChannelParams::from_length_ratio(25.0).unwrap();
        assert_eq!(propagate(&vac, &far).unwrap(), vac);

        let sq = CovMat1::thermal(ThermalOccupation::new(10_000.0).unwrap())
            .apply_squeeze(&SqueezeSpec::paper(0.576).unwrap())
            .unwrap();
        let out = propagate(&sq, &ChannelParams::from_length_ratio(10.0).unwrap()).unwrap();
        assert_relative_eq!(out.vxx(), 0.545_315_305_328_875_95, max_relative = 1e-12);
        assert_relative_eq!(out.vpp(), 5.046_625_811_802_632_8, max_relative = 1e-12);

        assert_eq!(propagate(&sq, &ChannelParams::identity()).unwrap(), sq);
    }

    #[test]
    fn semigroup_composition() {
        let sq = CovMat1::thermal(ThermalOccupation::new(100.0).unwrap())
            .apply_squeeze(&SqueezeSpec::paper(0.2).unwrap())
            .unwrap();
        let a = ChannelParams::from_length_ratio(1.7).unwrap();
        let b = ChannelParams::from_length_ratio(4.1).unwrap();
        let ab = ChannelParams::from_length_ratio(1.7 + 4.1).unwrap();
        let two_step = propagate(&propagate(&sq, &a).unwrap(), &b).unwrap();
        let one_step = propagate(&sq, &ab).unwrap();
        assert_relative_eq!(two_step.vxx(), one_step.vxx(), max_relative = 1e-12);
        assert_relative_eq!(two_step.vpp(), one_step.vpp(), max_relative = 1e-12);
    }
}
