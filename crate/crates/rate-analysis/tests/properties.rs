//! Cross-cutting properties of the rate formulas: bound sandwiches over
//! wide grids, structural monotonicity, and scheme-reduction identities.

use rate_analysis::{
    f_function, gsfim_rate, gsim_rate, gsim_rate_bounds, gsim_rate_max, gsim_rate_max_bounds,
    mimo_ofdm_rate, optimize_k, theorem1_holds,
};

#[test]
fn antenna_index_bits_are_unimodal_in_n_rf() {
    // ⌊log2 C(n_t, n_rf)⌋ rises until n_t/2 and falls after, matching the
    // binomial coefficients themselves.
    for n_t in 2..=24 {
        let bits: Vec<u32> = (1..=n_t)
            .map(|n_rf| gsim_rate(n_t, n_rf, 2).unwrap().antenna_index_bits)
            .collect();
        let half = n_t / 2;
        for w in bits[..half].windows(2) {
            assert!(w[1] >= w[0], "not non-decreasing up to n_t/2 at n_t={n_t}: {bits:?}");
        }
        for w in bits[half - 1..].windows(2) {
            assert!(w[1] <= w[0], "not non-increasing past n_t/2 at n_t={n_t}: {bits:?}");
        }
    }
}

#[test]
fn bounds_sandwich_on_a_wide_grid() {
    for n_t in 2..=20 {
        for n_rf in 1..n_t {
            for m in [2usize, 4, 8] {
                let b = gsim_rate_bounds(n_t, n_rf, m).unwrap();
                assert!(
                    b.sandwiches_exact(),
                    "per-n_rf sandwich fails at n_t={n_t}, n_rf={n_rf}, M={m}: {b:?}"
                );
            }
        }
    }
    // The max-rate bounds assume the maximizer is interior (n_rf < n_t),
    // which is the n_t ≥ 2M regime where indexing beats spatial
    // multiplexing; below it the maximum sits at the n_rf = n_t endpoint
    // that Stirling's approximation does not cover.
    for m in [2usize, 4, 8] {
        for n_t in (2 * m)..=(2 * m + 16) {
            let b = gsim_rate_max_bounds(n_t, m).unwrap();
            assert!(
                b.sandwiches_exact(),
                "max-rate sandwich fails at n_t={n_t}, M={m}: {b:?}"
            );
        }
    }
}

#[test]
fn bounds_track_the_stirling_core() {
    // The reported f_value is the same f the bound expressions use.
    let b = gsim_rate_bounds(32, 24, 4).unwrap();
    assert_eq!(b.f_value, f_function(32, 24, 2.0));
}

#[test]
fn crossover_condition_holds_beyond_the_acceptance_grid() {
    for n_t in 2..=40 {
        for m in [2usize, 4, 8, 16] {
            assert!(theorem1_holds(n_t, m).unwrap(), "fails at n_t={n_t}, M={m}");
        }
    }
}

#[test]
fn gsfim_reduces_to_mimo_ofdm_over_a_grid() {
    for n_rf in 1..=4 {
        for n_sub in [4usize, 8, 16] {
            for m in [2usize, 4] {
                for l in [1usize, 3] {
                    let r = gsfim_rate(n_rf, n_rf, n_sub, n_sub, n_rf * n_sub, m, l).unwrap();
                    let baseline = mimo_ofdm_rate(n_rf, n_sub, m, l).unwrap();
                    assert_eq!(r.total, baseline, "n_rf={n_rf}, N={n_sub}, M={m}, L={l}");
                    assert_eq!(r.r_a, 0.0);
                    assert_eq!(r.r_f, 0.0);
                }
            }
        }
    }
}

#[test]
fn gsfim_reduces_to_gsim_over_a_grid() {
    for n_t in 2..=6 {
        for n_rf in 1..=n_t {
            for m in [2usize, 4] {
                let r = gsfim_rate(n_t, n_rf, 1, 1, n_rf, m, 1).unwrap();
                let flat = gsim_rate(n_t, n_rf, m).unwrap();
                assert_eq!(
                    r.total,
                    flat.rate_bpcu() as f64,
                    "n_t={n_t}, n_rf={n_rf}, M={m}"
                );
            }
        }
    }
}

#[test]
fn indexing_never_loses_rate_against_all_active_subcarriers() {
    // The optimized sub-matrix rate is at least the k = N_f (MIMO-OFDM-like)
    // value, so GSFIM dominates MIMO-OFDM in rate at equal n_rf.
    for n_rf in 1..=3 {
        for n_f in 1..=6 {
            for m in [2usize, 4, 8] {
                let opt = optimize_k(n_rf, n_f, m).unwrap();
                let all_active = (n_rf * n_f) as u32 * m.trailing_zeros();
                assert!(
                    opt.bits_per_submatrix >= all_active,
                    "n_rf={n_rf}, n_f={n_f}, M={m}: {opt:?} < {all_active}"
                );
            }
        }
    }
}

#[test]
fn max_rate_report_is_consistent_with_the_curve() {
    for n_t in [8usize, 16, 32] {
        for m in [2usize, 4] {
            let best = gsim_rate_max(n_t, m).unwrap();
            let curve_max = (1..=n_t)
                .map(|n_rf| gsim_rate(n_t, n_rf, m).unwrap().rate_bpcu())
                .max()
                .unwrap();
            assert_eq!(best.rate, curve_max);
            assert_eq!(gsim_rate(n_t, best.n_rf_opt, m).unwrap().rate_bpcu(), best.rate);
        }
    }
}
