//! Sampling-based verification and finite-copy simulation: draws quadrature
//! outcomes from output covariance matrices, forms Ĉ estimates from M copies,
//! and measures detection error rates empirically.
//!
//! Reproducibility contract: every trial owns a counter-derived RNG stream,
//! so results are bit-identical for a given [`RngSpec`] regardless of how
//! many workers execute the trial loop, and aggregate reductions always run
//! in trial order.

use nalgebra::{Matrix4, Vector4};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::gaussian::CovMat2;
use crate::receiver::{correlation_mean, correlation_variance, MeasurementModel};

/// Diagonal jitter added when the covariance square root is indefinite;
/// pure squeezed vacuum sits exactly on the physicality boundary.
pub const FACTORIZATION_JITTER: f64 = 1e-12;

/// A deterministic random stream: (master seed, stream id) fully determines
/// the sample sequence on every platform and worker count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngSpec {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngSpec {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        Self { master_seed, stream_id }
    }

    /// The stream `offset` positions after this one, same master seed.
    /// Library functions that run `n` trials consume the stream ids
    /// `[stream_id, stream_id + n)`; callers hand out disjoint ranges.
    pub fn stream(&self, offset: u64) -> Self {
        Self { master_seed: self.master_seed, stream_id: self.stream_id.wrapping_add(offset) }
    }

    fn rng(&self) -> ChaCha12Rng {
        let mut rng = ChaCha12Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// Outcome of one simulated symbol transmission.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialResult {
    pub c_hat: f64,
    pub decided_symbol: usize,
    pub copies_used: u64,
}

/// Runs `trials` independent jobs, in parallel when the `parallel` feature
/// is enabled, preserving trial order in the returned vector.
#[cfg(feature = "parallel")]
pub(crate) fn map_trials<T, F>(trials: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..trials).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_trials<T, F>(trials: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    (0..trials).map(f).collect()
}

fn symmetric_sqrt(m: &Matrix4<f64>) -> Option<Matrix4<f64>> {
    let eig = nalgebra::SymmetricEigen::new(*m);
    if eig.eigenvalues.iter().any(|l| !l.is_finite() || *l < 0.0) {
        return None;
    }
    let sqrt_diag = Matrix4::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
    Some(eig.eigenvectors * sqrt_diag * eig.eigenvectors.transpose())
}

/// Symmetric square root A with A·Aᵀ = V, retried once with jitter.
pub(crate) fn sampling_factor(v2: &CovMat2) -> Result<Matrix4<f64>> {
    symmetric_sqrt(v2.matrix())
        .or_else(|| symmetric_sqrt(&(v2.matrix() + Matrix4::identity() * FACTORIZATION_JITTER)))
        .ok_or_else(|| {
            Error::Numeric("covariance square root is indefinite even after jitter".into())
        })
}

/// The covariance actually sampled under a measurement model: heterodyne
/// reads both quadratures at once and pays one vacuum unit per quadrature.
pub(crate) fn model_factor(v2: &CovMat2, model: MeasurementModel) -> Result<Matrix4<f64>> {
    match model {
        MeasurementModel::Heterodyne => sampling_factor(&v2.with_added_vacuum()),
        _ => sampling_factor(v2),
    }
}

fn validate_copies(model: MeasurementModel, m: u64) -> Result<()> {
    if m < 1 {
        return Err(Error::Domain("copy count must be at least 1".into()));
    }
    if model == MeasurementModel::AlternatingHomodyne && m % 2 != 0 {
        return Err(Error::Domain(format!(
            "alternating homodyne needs an even copy count, got {m}"
        )));
    }
    Ok(())
}

/// Draws zero-mean Gaussian quadrature 4-vectors (x₁, p₁, x₂, p₂) with a
/// fixed covariance from one deterministic stream.
pub struct QuadratureSampler {
    factor: Matrix4<f64>,
    rng: ChaCha12Rng,
}

impl QuadratureSampler {
    pub fn new(v2: &CovMat2, rng: RngSpec) -> Result<Self> {
        Ok(Self::from_factor(sampling_factor(v2)?, rng))
    }

    fn from_factor(factor: Matrix4<f64>, rng: RngSpec) -> Self {
        Self { factor, rng: rng.rng() }
    }

    pub fn draw(&mut self) -> [f64; 4] {
        let z0: f64 = StandardNormal.sample(&mut self.rng);
        let z1: f64 = StandardNormal.sample(&mut self.rng);
        let z2: f64 = StandardNormal.sample(&mut self.rng);
        let z3: f64 = StandardNormal.sample(&mut self.rng);
        let v = self.factor * Vector4::new(z0, z1, z2, z3);
        [v[0], v[1], v[2], v[3]]
    }
}

/// `count` i.i.d. quadrature outcomes with covariance `v2`.
pub fn sample_quadratures(v2: &CovMat2, rng: RngSpec, count: usize) -> Result<Vec<[f64; 4]>> {
    if count < 1 {
        return Err(Error::Domain("sample count must be at least 1".into()));
    }
    let mut sampler = QuadratureSampler::new(v2, rng)?;
    Ok((0..count).map(|_| sampler.draw()).collect())
}

pub(crate) fn estimate_with_factor(
    factor: &Matrix4<f64>,
    model: MeasurementModel,
    m: u64,
    rng: RngSpec,
) -> f64 {
    let mut sampler = QuadratureSampler::from_factor(*factor, rng);
    match model {
        MeasurementModel::JointPhaseSpace | MeasurementModel::Heterodyne => {
            let mut sum = 0.0;
            for _ in 0..m {
                let q = sampler.draw();
                sum += q[0] * q[2] - q[1] * q[3];
            }
            sum / m as f64
        }
        MeasurementModel::AlternatingHomodyne => {
            // copies alternate bases, starting with x; each basis gets m/2
            let mut sum_x = 0.0;
            let mut sum_p = 0.0;
            for i in 0..m {
                let q = sampler.draw();
                if i % 2 == 0 {
                    sum_x += q[0] * q[2];
                } else {
                    sum_p += q[1] * q[3];
                }
            }
            let half = (m / 2) as f64;
            (sum_x - sum_p) / half
        }
    }
}

/// Unbiased estimate of Ĉ from `m` copies: E[ĉ] = correlation_mean(v2)
/// under every model.
pub fn estimate_correlation(
    v2: &CovMat2,
    model: MeasurementModel,
    m: u64,
    rng: RngSpec,
) -> Result<f64> {
    validate_copies(model, m)?;
    let factor = model_factor(v2, model)?;
    Ok(estimate_with_factor(&factor, model, m, rng))
}

/// Two-hypothesis detection summary: empirical error rates beside the
/// central-limit Gaussian approximation they are usually compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionReport {
    pub threshold: f64,
    pub p_error_given_a: f64,
    pub p_error_given_b: f64,
    pub gaussian_p_error_given_a: f64,
    pub gaussian_p_error_given_b: f64,
    pub trials: u64,
    pub copies: u64,
}

/// Upper-tail probability Q(z) of the standard normal.
pub fn gaussian_tail_probability(z: f64) -> f64 {
    0.5 * statrs::function::erf::erfc(z / std::f64::consts::SQRT_2)
}

/// Midpoint-threshold discrimination between two symbol hypotheses,
/// `trials` Monte Carlo transmissions per hypothesis. Consumes the stream
/// ids `[rng.stream_id, rng.stream_id + 2·trials)`.
pub fn detection_error(
    v2_a: &CovMat2,
    v2_b: &CovMat2,
    m: u64,
    model: MeasurementModel,
    trials: u64,
    rng: RngSpec,
) -> Result<DetectionReport> {
    validate_copies(model, m)?;
    if trials < 1 {
        return Err(Error::Domain("trial count must be at least 1".into()));
    }
    let c_a = correlation_mean(v2_a);
    let c_b = correlation_mean(v2_b);
    if c_a == c_b {
        return Err(Error::DegenerateAlphabet(format!(
            "both hypotheses have expected correlation {c_a}"
        )));
    }
    let threshold = 0.5 * (c_a + c_b);
    let a_is_upper = c_a > c_b;
    let factor_a = model_factor(v2_a, model)?;
    let factor_b = model_factor(v2_b, model)?;

    // exact threshold hits resolve to the upper-mean hypothesis, matching
    // the decoder's tie-break toward the smaller squeezing
    let errors_a: u64 = map_trials(trials, |t| {
        let c_hat = estimate_with_factor(&factor_a, model, m, rng.stream(t));
        u64::from((c_hat >= threshold) != a_is_upper)
    })
    .into_iter()
    .sum();
    let errors_b: u64 = map_trials(trials, |t| {
        let c_hat = estimate_with_factor(&factor_b, model, m, rng.stream(trials + t));
        u64::from((c_hat >= threshold) == a_is_upper)
    })
    .into_iter()
    .sum();

    let half_gap = 0.5 * (c_a - c_b).abs();
    let q = |v2: &CovMat2| {
        let sigma = correlation_variance(v2, model).sqrt();
        gaussian_tail_probability(half_gap / (sigma / (m as f64).sqrt()))
    };
    Ok(DetectionReport {
        threshold,
        p_error_given_a: errors_a as f64 / trials as f64,
        p_error_given_b: errors_b as f64 / trials as f64,
        gaussian_p_error_given_a: q(v2_a),
        gaussian_p_error_given_b: q(v2_b),
        trials,
        copies: m,
    })
}
