//! Analytic statistics of the correlation observable Ĉ = x̂₁x̂₂ − p̂₁p̂₂ at the
//! beam-splitter outputs: mean, per-copy estimator noise under each
//! measurement model, SNR, and the copy count needed for detection.

use crate::error::Result;
use crate::gaussian::CovMat2;
use crate::link::OperatingPoint;
use crate::SqueezeSpec;

/// How the two output ports are read out. The ideal joint model records both
/// quadrature products per copy; the physically realizable variants pay a
/// noise penalty for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasurementModel {
    /// Both products x₁x₂ and p₁p₂ read from one phase-space sample per copy.
    JointPhaseSpace,
    /// Double homodyne alternating between the x and p bases on successive
    /// copies; needs an even copy count and doubles the per-copy variance.
    AlternatingHomodyne,
    /// Simultaneous x/p detection at the cost of one vacuum unit of added
    /// noise per quadrature.
    Heterodyne,
}

impl MeasurementModel {
    pub fn name(self) -> &'static str {
        match self {
            Self::JointPhaseSpace => "joint",
            Self::AlternatingHomodyne => "alt-homodyne",
            Self::Heterodyne => "heterodyne",
        }
    }
}

/// Copies required for detection; infinite when the correlation vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopyCount {
    Finite(u64),
    Infinite,
}

impl CopyCount {
    pub fn finite(self) -> Option<u64> {
        match self {
            Self::Finite(m) => Some(m),
            Self::Infinite => None,
        }
    }
}

impl std::fmt::Display for CopyCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Finite(m) => write!(f, "{m}"),
            Self::Infinite => write!(f, "inf"),
        }
    }
}

/// Mean, single-copy noise, SNR, and required copies of the Ĉ estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationStats {
    pub c_mean: f64,
    pub sigma_per_copy: f64,
    pub snr: f64,
    pub m_required: CopyCount,
}

/// Expected value of Ĉ = x̂₁x̂₂ − p̂₁p̂₂, read directly from the covariance.
/// For the link pipeline this equals η(n̄+½)(s − 1/s)/2 ≤ 0.
pub fn correlation_mean(v2: &CovMat2) -> f64 {
    v2.entry(0, 2) - v2.entry(1, 3)
}

// Second moments of the quadrature products from the zero-mean Gaussian
// fourth-moment identity: Var(uv) = <u²><v²> + <uv>², and
// Cov(x₁x₂, p₁p₂) = <x₁p₁><x₂p₂> + <x₁p₂><x₂p₁>.
fn product_moments(v2: &CovMat2) -> (f64, f64, f64) {
    let var_x = v2.entry(0, 0) * v2.entry(2, 2) + v2.entry(0, 2) * v2.entry(0, 2);
    let var_p = v2.entry(1, 1) * v2.entry(3, 3) + v2.entry(1, 3) * v2.entry(1, 3);
    let cov_xp = v2.entry(0, 1) * v2.entry(2, 3) + v2.entry(0, 3) * v2.entry(2, 1);
    (var_x, var_p, cov_xp)
}

/// Variance of the single-copy Ĉ estimator under the given measurement model.
pub fn correlation_variance(v2: &CovMat2, model: MeasurementModel) -> f64 {
    match model {
        MeasurementModel::JointPhaseSpace => {
            let (var_x, var_p, cov_xp) = product_moments(v2);
            var_x + var_p - 2.0 * cov_xp
        }
        MeasurementModel::AlternatingHomodyne => {
            // one product per copy, so each basis gets half the copies
            let (var_x, var_p, _) = product_moments(v2);
            2.0 * (var_x + var_p)
        }
        MeasurementModel::Heterodyne => {
            correlation_variance(&v2.with_added_vacuum(), MeasurementModel::JointPhaseSpace)
        }
    }
}

/// The detection rule M = ⌈1/SNR⌉, rounded up to even for the alternating
/// model since it consumes copies in x/p pairs.
pub fn required_copies(snr: f64, model: MeasurementModel) -> CopyCount {
    if snr > 0.0 {
        let mut m = ((1.0 / snr).ceil() as u64).max(1);
        if model == MeasurementModel::AlternatingHomodyne && m % 2 == 1 {
            m += 1;
        }
        CopyCount::Finite(m)
    } else {
        CopyCount::Infinite
    }
}

/// Full estimator statistics for a covariance already in hand.
pub fn stats_from_covariance(v2: &CovMat2, model: MeasurementModel) -> CorrelationStats {
    let c_mean = correlation_mean(v2);
    let sigma_per_copy = correlation_variance(v2, model).sqrt();
    let snr = c_mean.abs() / sigma_per_copy;
    CorrelationStats { c_mean, sigma_per_copy, snr, m_required: required_copies(snr, model) }
}

/// Statistics of the link pipeline at an operating point: builds the output
/// covariance and applies the M = ⌈1/SNR⌉ detection rule.
pub fn snr_and_copies(
    point: &OperatingPoint,
    squeeze: &SqueezeSpec,
    model: MeasurementModel,
) -> Result<CorrelationStats> {
    let v2 = point.output_covariance(squeeze)?;
    Ok(stats_from_covariance(&v2, model))
}
