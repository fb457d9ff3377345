//! Bipolar mapping, unnormalized circular and linear autocorrelation,
//! and balance counts. Everything here is exact integer arithmetic; any
//! normalization for plotting is the consumer's job.

use crate::{BitStream, Error, Result};

/// Window applied before correlation when nothing longer is wanted:
/// analyze one full period when it fits, otherwise the first 40,000 bits.
pub const DEFAULT_ANALYSIS_WINDOW: usize = 40_000;

/// A sequence over {-1, +1}, bit 0 mapped to -1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipolarSequence {
    values: Vec<i8>,
}

impl BipolarSequence {
    /// Builds from raw values, rejecting anything but -1 and +1.
    pub fn new(values: Vec<i8>) -> Result<Self> {
        if values.iter().any(|&v| v != 1 && v != -1) {
            return Err(Error::InvalidArguments(
                "bipolar values must be -1 or +1".into(),
            ));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// 0 -> -1, 1 -> +1, order preserved.
pub fn to_bipolar(bits: &BitStream) -> BipolarSequence {
    BipolarSequence {
        values: bits.iter().map(|&b| if b == 1 { 1 } else { -1 }).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationKind {
    Circular,
    Linear,
}

/// Lag-indexed signed integer autocorrelation values, never normalized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrelationSeries {
    pub kind: CorrelationKind,
    /// N, the number of samples analyzed.
    pub length_analyzed: usize,
    /// (lag, value) pairs with lags strictly increasing from 0.
    pub entries: Vec<(u64, i64)>,
}

/// value(tau) = sum over n of b(n) * b((n + tau) mod N), for
/// tau = 0..=min(max_lag, N - 1). Lag 0 is always N.
pub fn circular_autocorr(seq: &BipolarSequence, max_lag: Option<u64>) -> Result<CorrelationSeries> {
    autocorr(seq, max_lag, CorrelationKind::Circular)
}

/// value(tau) = sum over n = 0..N-1-tau of b(n) * b(n + tau); no
/// wraparound, so later lags sum fewer products.
pub fn linear_autocorr(seq: &BipolarSequence, max_lag: Option<u64>) -> Result<CorrelationSeries> {
    autocorr(seq, max_lag, CorrelationKind::Linear)
}

fn autocorr(
    seq: &BipolarSequence,
    max_lag: Option<u64>,
    kind: CorrelationKind,
) -> Result<CorrelationSeries> {
    if seq.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = seq.len();
    let b = seq.values();
    let last = max_lag.map_or(n - 1, |m| (m as usize).min(n - 1));
    let mut entries = Vec::with_capacity(last + 1);
    for tau in 0..=last {
        let value: i64 = match kind {
            CorrelationKind::Circular => {
                (0..n).map(|i| b[i] as i64 * b[(i + tau) % n] as i64).sum()
            }
            CorrelationKind::Linear => (0..n - tau).map(|i| b[i] as i64 * b[i + tau] as i64).sum(),
        };
        entries.push((tau as u64, value));
    }
    Ok(CorrelationSeries {
        kind,
        length_analyzed: n,
        entries,
    })
}

/// Exact (ones, zeros) counts; the two always sum to the length.
pub fn balance(bits: &BitStream) -> (u64, u64) {
    let ones = bits.iter().filter(|&&b| b == 1).count() as u64;
    (ones, bits.len() as u64 - ones)
}
