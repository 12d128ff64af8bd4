//! Exact integer combinatorics.
//!
//! Rates and pattern ranks need `C(n, k)` without floating-point error;
//! 128-bit accumulation is exact for every `n` this crate targets
//! (`C(128, 64)` still fits) and overflow is reported, never silent.

use crate::ImError;

/// Binomial coefficient `C(n, k)` in exact 128-bit arithmetic.
///
/// Uses the multiplicative form with interleaved division, so every
/// intermediate value is itself a binomial coefficient times a small
/// factor; overflow of the accumulator is detected and reported.
pub fn binomial(n: usize, k: usize) -> Result<u128, ImError> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // acc = acc * (n - k + i) / i; the division is exact because the
        // prefix product is C(n - k + i, i) at every step. Cancelling
        // common factors first keeps the intermediate inside 128 bits
        // whenever the final value fits.
        let mut mult = (n - k + i) as u128;
        let mut div = i as u128;
        let g = gcd(acc, div);
        acc /= g;
        div /= g;
        let g = gcd(mult, div);
        mult /= g;
        div /= g;
        debug_assert_eq!(div, 1, "division must cancel exactly");
        acc = acc
            .checked_mul(mult)
            .ok_or(ImError::BinomialOverflow { n, k })?;
    }
    Ok(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `floor(log2(x))` of a positive integer, exactly (no floating point).
pub fn floor_log2(x: u128) -> u32 {
    assert!(x > 0, "floor_log2 of zero is undefined");
    127 - x.leading_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_binomial_small_table() {
        assert_eq!(binomial(0, 0).unwrap(), 1);
        assert_eq!(binomial(4, 2).unwrap(), 6);
        assert_eq!(binomial(8, 7).unwrap(), 8);
        assert_eq!(binomial(16, 11).unwrap(), 4368);
        assert_eq!(binomial(32, 24).unwrap(), 10_518_300);
        assert_eq!(binomial(5, 9).unwrap(), 0);
    }

    #[test]
    fn test_binomial_matches_pascal() {
        // Cross-check against Pascal's rule on a dense grid.
        for n in 1..=40usize {
            for k in 1..n {
                let lhs = binomial(n, k).unwrap();
                let rhs = binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap();
                assert_eq!(lhs, rhs, "Pascal mismatch at C({n},{k})");
            }
        }
    }

    #[test]
    fn test_binomial_large_values_exact() {
        // C(64, 32) is the worst case for the n <= 64 contract.
        assert_eq!(binomial(64, 32).unwrap(), 1_832_624_140_942_590_534);
        // Largest central coefficient that still fits in 128 bits.
        assert_eq!(
            binomial(128, 64).unwrap(),
            23_951_146_041_928_082_866_135_587_776_380_551_750
        );
        // C(200, 100) genuinely exceeds u128 and must be reported.
        assert_eq!(
            binomial(200, 100),
            Err(ImError::BinomialOverflow { n: 200, k: 100 })
        );
    }

    #[test]
    fn test_floor_log2_exact_at_powers() {
        assert_eq!(floor_log2(1), 0);
        assert_eq!(floor_log2(2), 1);
        assert_eq!(floor_log2(3), 1);
        assert_eq!(floor_log2(4), 2);
        assert_eq!(floor_log2(10_518_300), 23);
        assert_eq!(floor_log2(u128::MAX), 127);
    }
}
