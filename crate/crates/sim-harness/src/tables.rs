//! CSV emitters for the rate tables and curves.

use crate::HarnessError;
use rate_analysis::{gsim_rate_curve, r1_curve, rf_saving_table};
use std::fmt::Write;

/// The RF-chain savings table over `n_t ∈ {16, 32}` and the four
/// constellations, one CSV row per (modulation, n_t) pair.
pub fn table2_csv() -> Result<String, HarnessError> {
    let rows = rf_saving_table(&[16, 32], &[2, 4, 8, 16])?;
    let mut out = String::from(
        "modulation,m,n_t,n_rf_opt,r_max,sm_rate,n_rf_min,\
         saving_at_rmax_pct,saving_at_sm_pct,rate_increase_pct\n",
    );
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.modulation,
            r.m,
            r.n_t,
            r.n_rf_opt,
            r.r_max,
            r.sm_rate,
            r.n_rf_min,
            r.saving_at_rmax_pct,
            r.saving_at_sm_pct,
            r.rate_increase_pct
        )
        .expect("string write");
    }
    Ok(out)
}

/// Rate versus active-antenna count at fixed `(n_t, M)`.
pub fn rate_curve_csv(n_t: usize, m: usize) -> Result<String, HarnessError> {
    let mut out = String::from("n_rf,rate_bpcu\n");
    for (n_rf, rate) in gsim_rate_curve(n_t, m)? {
        writeln!(out, "{n_rf},{rate}").expect("string write");
    }
    Ok(out)
}

/// Space-frequency rate versus active-cell count `k` at fixed
/// `(n_rf, n_f, n_b, M, L)`.
pub fn r1_curve_csv(
    n_rf: usize,
    n_f: usize,
    n_b: usize,
    m: usize,
    l: usize,
) -> Result<String, HarnessError> {
    let mut out = String::from("k,bits_per_submatrix,rate_bpcu\n");
    for point in r1_curve(n_rf, n_f, n_b, m, l)? {
        writeln!(out, "{},{},{}", point.k, point.bits_per_submatrix, point.rate)
            .expect("string write");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn savings_table_has_eight_rows() {
        let csv = table2_csv().unwrap();
        assert_eq!(csv.lines().count(), 9);
        // 4-QAM, n_t = 32: 24 of 32 chains at max rate → 25% saving.
        let row = csv.lines().find(|l| l.starts_with("4-QAM,4,32")).unwrap();
        assert!(row.contains(",25,"), "{row}");
    }

    #[test]
    fn rate_curve_peaks_where_expected() {
        let csv = rate_curve_csv(32, 4).unwrap();
        let max = csv
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse::<u32>().unwrap())
            .max()
            .unwrap();
        assert_eq!(max, 71);
    }

    #[test]
    fn r1_curve_lists_every_k() {
        let csv = r1_curve_csv(2, 4, 2, 4, 4).unwrap();
        assert_eq!(csv.lines().count(), 1 + 8);
        assert!(csv.lines().any(|l| l.starts_with("7,17,")));
    }
}
