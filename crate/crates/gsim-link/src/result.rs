//! Detector output record and its JSON-lines serialization.

use crate::TransmitVector;

/// Which detector produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectorKind {
    Mmse,
    Ml,
    Gibbs,
}

impl DetectorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DetectorKind::Mmse => "mmse",
            DetectorKind::Ml => "ml",
            DetectorKind::Gibbs => "gibbs",
        }
    }
}

/// One detection outcome: the decided vector, its decoded bits, the ML
/// cost `‖y − H x̂‖²`, and the detector's work counters.
#[derive(Debug, Clone, PartialEq)]
pub struct DetectionResult {
    pub x_hat: TransmitVector,
    pub bits: Vec<bool>,
    pub cost: f64,
    /// Coordinate-pair steps for the sampler; candidate evaluations for ML;
    /// 0 for MMSE.
    pub iterations: u64,
    pub restarts: u32,
    pub fallback_used: bool,
    pub detector: DetectorKind,
}

impl DetectionResult {
    /// Decoded bits packed MSB-first into bytes (final byte left-aligned,
    /// zero-padded) and rendered as lowercase hex.
    pub fn decoded_bits_hex(&self) -> String {
        bits_to_hex(&self.bits)
    }

    /// One JSON object per line with fields `detector`, `cost`,
    /// `iterations`, `restarts`, `fallback_used`, `decoded_bits`.
    pub fn to_json_line(&self) -> String {
        format!(
            "{{\"detector\":\"{}\",\"cost\":{},\"iterations\":{},\"restarts\":{},\"fallback_used\":{},\"decoded_bits\":\"{}\"}}",
            self.detector.as_str(),
            self.cost,
            self.iterations,
            self.restarts,
            self.fallback_used,
            self.decoded_bits_hex()
        )
    }
}

/// MSB-first bit packing; a trailing partial byte keeps the bits in its
/// high positions.
pub(crate) fn bits_to_hex(bits: &[bool]) -> String {
    let mut out = String::with_capacity(bits.len().div_ceil(8) * 2);
    for chunk in bits.chunks(8) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 1 << (7 - i);
            }
        }
        out.push_str(&format!("{byte:02x}"));
    }
    out
}
