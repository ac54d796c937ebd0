//! Classical payload ↔ squeezing-symbol mapping: alphabet construction,
//! bit-to-dit framing, midpoint decision thresholds, decoding, and
//! symbol-error-rate accounting.

use crate::error::{Error, Result};
use crate::gaussian::SqueezeSpec;
use crate::link::OperatingPoint;
use crate::montecarlo::{estimate_with_factor, map_trials, model_factor, RngSpec, TrialResult};
use crate::receiver::{correlation_mean, MeasurementModel};

/// Ordered squeezing levels representing dits. Labels 0..K−1 carry strictly
/// increasing squeezing (strictly decreasing variance factor), all under one
/// convention.
#[derive(Debug, Clone, PartialEq)]
pub struct Alphabet {
    levels: Vec<SqueezeSpec>,
}

impl Alphabet {
    pub fn new(levels: Vec<SqueezeSpec>) -> Result<Self> {
        if levels.len() < 2 {
            return Err(Error::Domain(format!(
                "an alphabet needs at least two levels, got {}",
                levels.len()
            )));
        }
        let convention = levels[0].convention();
        if levels.iter().any(|l| l.convention() != convention) {
            return Err(Error::Domain("all alphabet levels must share one convention".into()));
        }
        for (k, pair) in levels.windows(2).enumerate() {
            if pair[1].factor() >= pair[0].factor() {
                return Err(Error::Domain(format!(
                    "alphabet levels must be strictly increasing in resolved squeezing \
                     (labels {k} and {} are not)",
                    k + 1
                )));
            }
        }
        Ok(Self { levels })
    }

    /// Builds an alphabet from raw magnitudes under one convention.
    pub fn from_values(values: &[f64], convention: crate::gaussian::SqueezeConvention) -> Result<Self> {
        let levels = values
            .iter()
            .map(|&v| SqueezeSpec::new(v, convention))
            .collect::<Result<Vec<_>>>()?;
        Self::new(levels)
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees K >= 2
    }

    pub fn levels(&self) -> &[SqueezeSpec] {
        &self.levels
    }

    /// Bits carried per dit; exact framing needs a power-of-two K.
    pub fn bits_per_dit(&self) -> Result<u32> {
        if !self.levels.len().is_power_of_two() {
            return Err(Error::UnsupportedConfig(format!(
                "bit framing needs a power-of-two alphabet size, got K = {}",
                self.levels.len()
            )));
        }
        Ok(self.levels.len().trailing_zeros())
    }
}

/// Per-symbol transmission parameters: copy count, measurement model, and
/// the channel operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameSpec {
    copies: u64,
    model: MeasurementModel,
    point: OperatingPoint,
}

impl FrameSpec {
    pub fn new(copies: u64, model: MeasurementModel, point: OperatingPoint) -> Result<Self> {
        if copies < 1 {
            return Err(Error::Domain("copies per symbol must be at least 1".into()));
        }
        if model == MeasurementModel::AlternatingHomodyne && copies % 2 != 0 {
            return Err(Error::Domain(format!(
                "alternating homodyne needs an even copy count, got {copies}"
            )));
        }
        Ok(Self { copies, model, point })
    }

    pub fn copies(&self) -> u64 {
        self.copies
    }

    pub fn model(&self) -> MeasurementModel {
        self.model
    }

    pub fn point(&self) -> &OperatingPoint {
        &self.point
    }
}

/// A framed payload: dit sequence plus the original bit length so that
/// tail zero-padding can be stripped on inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedPayload {
    pub dits: Vec<usize>,
    pub bit_len: usize,
    pub bits_per_dit: u32,
}

/// Groups the payload big-endian into log₂K bits per dit, zero-padding the
/// tail. An empty payload encodes to an empty dit sequence.
pub fn encode(bits: &[u8], alphabet: &Alphabet) -> Result<EncodedPayload> {
    let bits_per_dit = alphabet.bits_per_dit()?;
    if bits.iter().any(|&b| b > 1) {
        return Err(Error::Domain("payload bits must be 0 or 1".into()));
    }
    let width = bits_per_dit as usize;
    let mut dits = Vec::with_capacity(bits.len().div_ceil(width.max(1)));
    for chunk in bits.chunks(width) {
        let mut dit = 0usize;
        for i in 0..width {
            dit = (dit << 1) | usize::from(chunk.get(i).copied().unwrap_or(0));
        }
        dits.push(dit);
    }
    Ok(EncodedPayload { dits, bit_len: bits.len(), bits_per_dit })
}

/// Inverse framing: dits back to bits, truncated to the recorded length.
pub fn decode_bits(dits: &[usize], bit_len: usize, alphabet: &Alphabet) -> Result<Vec<u8>> {
    let width = alphabet.bits_per_dit()? as usize;
    if dits.iter().any(|&d| d >= alphabet.len()) {
        return Err(Error::Domain("dit out of alphabet range".into()));
    }
    if bit_len > dits.len() * width {
        return Err(Error::Domain(format!(
            "recorded bit length {bit_len} exceeds {} framed bits",
            dits.len() * width
        )));
    }
    let mut bits = Vec::with_capacity(dits.len() * width);
    for &dit in dits {
        for i in (0..width).rev() {
            bits.push(((dit >> i) & 1) as u8);
        }
    }
    bits.truncate(bit_len);
    Ok(bits)
}

/// Expected correlation Ĉ per label at the operating point.
pub fn expected_correlations(alphabet: &Alphabet, point: &OperatingPoint) -> Result<Vec<f64>> {
    alphabet
        .levels
        .iter()
        .map(|spec| Ok(correlation_mean(&point.output_covariance(spec)?)))
        .collect()
}

/// K−1 midpoint decision boundaries, strictly decreasing. Fails when two
/// labels share an expected correlation (e.g. a fully opaque channel).
pub fn thresholds(alphabet: &Alphabet, frame: &FrameSpec) -> Result<Vec<f64>> {
    let cs = expected_correlations(alphabet, frame.point())?;
    for (k, pair) in cs.windows(2).enumerate() {
        if pair[1] >= pair[0] {
            return Err(Error::DegenerateAlphabet(format!(
                "expected correlations of labels {k} and {} do not separate ({} vs {})",
                k + 1,
                pair[0],
                pair[1]
            )));
        }
    }
    Ok(cs.windows(2).map(|pair| 0.5 * (pair[0] + pair[1])).collect())
}

/// Maps an estimate to the label whose decision interval contains it.
/// `boundaries` must be strictly decreasing; values above the first boundary
/// decode to 0, below the last to K−1, and exact hits resolve to the lower
/// label (smaller squeezing).
pub fn decode(c_hat: f64, boundaries: &[f64]) -> usize {
    boundaries.iter().filter(|&&b| c_hat < b).count()
}

/// Empirical symbol-error statistics from `trials` simulated transmissions
/// of every label.
#[derive(Debug, Clone, PartialEq)]
pub struct SerReport {
    /// Row k: distribution of decoded labels given label k was sent; each
    /// row sums to 1.
    pub confusion: Vec<Vec<f64>>,
    pub per_symbol_ser: Vec<f64>,
    pub mean_ser: f64,
    pub trials_per_symbol: u64,
}

/// Simulates `trials` transmissions per label with the frame's copy count
/// and decodes against the midpoint thresholds. Consumes the stream ids
/// `[rng.stream_id, rng.stream_id + K·trials)`.
pub fn symbol_error_rate(
    alphabet: &Alphabet,
    frame: &FrameSpec,
    trials: u64,
    rng: RngSpec,
) -> Result<SerReport> {
    if trials < 1 {
        return Err(Error::Domain("trial count must be at least 1".into()));
    }
    let boundaries = thresholds(alphabet, frame)?;
    let factors = symbol_factors(alphabet, frame)?;
    let k = alphabet.len();

    let decided = map_trials(k as u64 * trials, |g| {
        let label = (g / trials) as usize;
        let c_hat =
            estimate_with_factor(&factors[label], frame.model(), frame.copies(), rng.stream(g));
        decode(c_hat, &boundaries)
    });

    let mut counts = vec![vec![0u64; k]; k];
    for (g, &d) in decided.iter().enumerate() {
        counts[g / trials as usize][d] += 1;
    }
    let confusion: Vec<Vec<f64>> = counts
        .iter()
        .map(|row| row.iter().map(|&c| c as f64 / trials as f64).collect())
        .collect();
    let per_symbol_ser: Vec<f64> = confusion.iter().enumerate().map(|(i, row)| 1.0 - row[i]).collect();
    let mean_ser = per_symbol_ser.iter().sum::<f64>() / k as f64;
    Ok(SerReport { confusion, per_symbol_ser, mean_ser, trials_per_symbol: trials })
}

/// Transmits a dit sequence once, one estimate-and-decode per dit.
/// Consumes the stream ids `[rng.stream_id, rng.stream_id + dits.len())`.
pub fn transmit_dits(
    dits: &[usize],
    alphabet: &Alphabet,
    frame: &FrameSpec,
    rng: RngSpec,
) -> Result<Vec<TrialResult>> {
    if dits.iter().any(|&d| d >= alphabet.len()) {
        return Err(Error::Domain("dit out of alphabet range".into()));
    }
    let boundaries = thresholds(alphabet, frame)?;
    let factors = symbol_factors(alphabet, frame)?;
    Ok(map_trials(dits.len() as u64, |i| {
        let label = dits[i as usize];
        let c_hat =
            estimate_with_factor(&factors[label], frame.model(), frame.copies(), rng.stream(i));
        TrialResult {
            c_hat,
            decided_symbol: decode(c_hat, &boundaries),
            copies_used: frame.copies(),
        }
    }))
}

fn symbol_factors(alphabet: &Alphabet, frame: &FrameSpec) -> Result<Vec<nalgebra::Matrix4<f64>>> {
    alphabet
        .levels
        .iter()
        .map(|spec| model_factor(&frame.point().output_covariance(spec)?, frame.model()))
        .collect()
}
