//! One BER measurement per SNR point, with CSV and JSON-lines renderers.

use serde::Serialize;

/// Aggregate result of all trials at one SNR point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BerRecord {
    pub scheme: String,
    pub detector: String,
    pub snr_db: f64,
    pub trials: u64,
    pub bit_errors: u64,
    /// `bit_errors / (trials · bits per block)`.
    pub ber: f64,
    pub rate_bpcu: f64,
    /// Mean detector work per trial: sampler steps for Gibbs, candidate
    /// evaluations for ML, 0 for MMSE.
    pub mean_iterations: f64,
    pub mean_restarts: f64,
    pub fallback_count: u64,
    /// Only present when timing was requested; parallel execution changes
    /// this field and nothing else.
    pub wall_time_s: Option<f64>,
    /// True when the point hit the trial budget before reaching the
    /// requested error count.
    pub truncated: bool,
}

/// Column order shared by the CSV and JSONL encodings.
pub const CSV_HEADER: &str = "scheme,detector,snr_db,trials,bit_errors,ber,rate_bpcu,\
mean_iterations,mean_restarts,fallback_count,wall_time_s,truncated";

impl BerRecord {
    /// One CSV row matching [`CSV_HEADER`]; an absent wall time renders
    /// as an empty cell.
    pub fn to_csv_row(&self) -> String {
        let wall = self.wall_time_s.map(|w| w.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.scheme,
            self.detector,
            self.snr_db,
            self.trials,
            self.bit_errors,
            self.ber,
            self.rate_bpcu,
            self.mean_iterations,
            self.mean_restarts,
            self.fallback_count,
            wall,
            self.truncated
        )
    }

    /// One JSON object with the same field names as the CSV columns.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }
}

/// Renders a full CSV document (header plus one row per record).
pub fn render_csv(records: &[BerRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for record in records {
        out.push_str(&record.to_csv_row());
        out.push('\n');
    }
    out
}

/// Renders JSON-lines (one object per record, no header).
pub fn render_jsonl(records: &[BerRecord]) -> String {
    let mut out = String::new();
    for record in records {
        out.push_str(&record.to_json_line());
        out.push('\n');
    }
    out
}
