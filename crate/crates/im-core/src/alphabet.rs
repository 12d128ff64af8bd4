//! Gray-labeled QAM constellations.
//!
//! Points live on the unnormalized odd-integer lattice ({±1, ±3, …} per
//! axis) so worked fixtures like `1+j` read literally; any unit-energy
//! scaling belongs to the channel/SNR layer, not the alphabet. The
//! canonical labeling is binary-reflected Gray per axis with label 0 on
//! the most positive amplitude and the first half of each symbol's bits
//! on the real axis; explicit labelings are supported for fixtures that
//! assume a different map.

use num_complex::Complex64;

use crate::{bits_to_index, index_to_bits, ImError};

/// An `M`-ary constellation with its bit labeling.
///
/// `point(label)` is the complex point whose label (bits MSB first,
/// interpreted as an integer) equals `label`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulationAlphabet {
    bits_per_symbol: usize,
    points: Vec<Complex64>,
    average_energy: f64,
}

impl ModulationAlphabet {
    /// Canonical Gray-labeled QAM of order `M` (power of two, `M >= 2`).
    ///
    /// Square lattice when `log2 M` is even, otherwise a wide rectangle
    /// (8-QAM: 4×2). BPSK is the degenerate `{+1, −1}` case.
    pub fn gray_qam(order: usize) -> Result<Self, ImError> {
        let bits = order_bits(order)?;
        let re_bits = bits - bits / 2;
        let im_bits = bits / 2;
        let re_axis = gray_axis(re_bits);
        let im_axis = gray_axis(im_bits);
        let points = (0..order)
            .map(|label| {
                let re_label = label >> im_bits;
                let im_label = label & ((1 << im_bits) - 1);
                Complex64::new(re_axis[re_label], im_axis[im_label])
            })
            .collect();
        Self::with_labeling(points)
    }

    /// Alphabet from an explicit label → point table (`points[label]`).
    pub fn with_labeling(points: Vec<Complex64>) -> Result<Self, ImError> {
        let bits = order_bits(points.len())?;
        for (i, a) in points.iter().enumerate() {
            for b in points.iter().skip(i + 1) {
                if a == b {
                    return Err(ImError::DuplicatePoint);
                }
            }
        }
        let average_energy = points.iter().map(|p| p.norm_sqr()).sum::<f64>() / points.len() as f64;
        Ok(Self {
            bits_per_symbol: bits,
            points,
            average_energy,
        })
    }

    /// Constellation order `M`.
    pub fn order(&self) -> usize {
        self.points.len()
    }

    /// Bits carried per symbol, `log2 M`.
    pub fn bits_per_symbol(&self) -> usize {
        self.bits_per_symbol
    }

    /// The point labeled by `label`.
    pub fn point(&self, label: usize) -> Complex64 {
        self.points[label]
    }

    /// All points in label order.
    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    /// `(1/M) Σ |a|²` on the stored (unnormalized) lattice.
    pub fn average_energy(&self) -> f64 {
        self.average_energy
    }

    /// Maps `log2 M` bits (MSB first) to their constellation point.
    pub fn modulate(&self, bits: &[bool]) -> Result<Complex64, ImError> {
        if bits.len() != self.bits_per_symbol {
            return Err(ImError::BitLength {
                expected: self.bits_per_symbol,
                got: bits.len(),
            });
        }
        Ok(self.points[bits_to_index(bits)])
    }

    /// Label of the nearest constellation point (ties → lowest label).
    pub fn nearest(&self, z: Complex64) -> usize {
        let mut best = 0usize;
        let mut best_d = f64::INFINITY;
        for (label, p) in self.points.iter().enumerate() {
            let d = (z - p).norm_sqr();
            if d < best_d {
                best_d = d;
                best = label;
            }
        }
        best
    }

    /// Nearest constellation point itself.
    pub fn quantize(&self, z: Complex64) -> Complex64 {
        self.points[self.nearest(z)]
    }

    /// Bits (MSB first) of the nearest constellation point.
    pub fn demodulate(&self, z: Complex64) -> Vec<bool> {
        index_to_bits(self.nearest(z), self.bits_per_symbol)
    }
}

fn order_bits(order: usize) -> Result<usize, ImError> {
    if order < 2 || !order.is_power_of_two() {
        return Err(ImError::InvalidOrder(order));
    }
    Ok(order.trailing_zeros() as usize)
}

/// Per-axis amplitude table indexed by axis label: binary-reflected Gray
/// over the odd lattice, label 0 at the most positive amplitude.
/// Zero bits collapse the axis to amplitude 0.
fn gray_axis(bits: usize) -> Vec<f64> {
    if bits == 0 {
        return vec![0.0];
    }
    let levels = 1usize << bits;
    let mut axis = vec![0.0; levels];
    for (i, slot) in (0..levels).map(|i| (i, i ^ (i >> 1))).collect::<Vec<_>>() {
        axis[slot] = (levels - 1) as f64 - 2.0 * i as f64;
    }
    axis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn test_bpsk_is_forced() {
        let a = ModulationAlphabet::gray_qam(2).unwrap();
        assert_eq!(a.modulate(&bits("0")).unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(a.modulate(&bits("1")).unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(a.average_energy(), 1.0);
    }

    #[test]
    fn test_qam4_labeled_corners() {
        let a = ModulationAlphabet::gray_qam(4).unwrap();
        assert_eq!(a.modulate(&bits("00")).unwrap(), Complex64::new(1.0, 1.0));
        assert_eq!(a.modulate(&bits("11")).unwrap(), Complex64::new(-1.0, -1.0));
        assert_eq!(a.modulate(&bits("01")).unwrap(), Complex64::new(1.0, -1.0));
        assert_eq!(a.modulate(&bits("10")).unwrap(), Complex64::new(-1.0, 1.0));
        assert_eq!(a.average_energy(), 2.0);
    }

    #[test]
    fn test_qam16_lattice_and_energy() {
        let a = ModulationAlphabet::gray_qam(16).unwrap();
        assert_eq!(a.order(), 16);
        assert_eq!(a.average_energy(), 10.0);
        for p in a.points() {
            assert!([1.0, 3.0].contains(&p.re.abs()));
            assert!([1.0, 3.0].contains(&p.im.abs()));
        }
    }

    #[test]
    fn test_qam8_rectangle() {
        let a = ModulationAlphabet::gray_qam(8).unwrap();
        assert_eq!(a.average_energy(), 6.0);
        for p in a.points() {
            assert!([1.0, 3.0].contains(&p.re.abs()), "real axis 4 levels");
            assert_eq!(p.im.abs(), 1.0, "imaginary axis 2 levels");
        }
    }

    #[test]
    fn test_gray_property_on_lattice_neighbors() {
        for order in [4usize, 8, 16, 64] {
            let a = ModulationAlphabet::gray_qam(order).unwrap();
            for (la, pa) in a.points().iter().enumerate() {
                for (lb, pb) in a.points().iter().enumerate().skip(la + 1) {
                    let d = pa - pb;
                    let adjacent = (d.re.abs() == 2.0 && d.im == 0.0)
                        || (d.im.abs() == 2.0 && d.re == 0.0);
                    if adjacent {
                        let hamming = (la ^ lb).count_ones();
                        assert_eq!(hamming, 1, "order {order}: {pa} vs {pb}");
                    }
                }
            }
        }
    }

    #[test]
    fn test_modulate_demodulate_roundtrip() {
        for order in [2usize, 4, 8, 16, 64] {
            let a = ModulationAlphabet::gray_qam(order).unwrap();
            for v in 0..order {
                let b = index_to_bits(v, a.bits_per_symbol());
                let p = a.modulate(&b).unwrap();
                assert_eq!(a.demodulate(p), b);
            }
        }
    }

    #[test]
    fn test_quantize_picks_nearest() {
        let a = ModulationAlphabet::gray_qam(4).unwrap();
        assert_eq!(a.quantize(Complex64::new(0.3, 2.0)), Complex64::new(1.0, 1.0));
        assert_eq!(a.quantize(Complex64::new(-9.0, -0.1)), Complex64::new(-1.0, -1.0));
    }

    #[test]
    fn test_rejects_bad_orders() {
        assert_eq!(ModulationAlphabet::gray_qam(3), Err(ImError::InvalidOrder(3)));
        assert_eq!(ModulationAlphabet::gray_qam(1), Err(ImError::InvalidOrder(1)));
        assert_eq!(ModulationAlphabet::gray_qam(0), Err(ImError::InvalidOrder(0)));
    }

    #[test]
    fn test_with_labeling_rejects_duplicates() {
        let pts = vec![
            Complex64::new(1.0, 1.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(-1.0, 1.0),
            Complex64::new(-1.0, -1.0),
        ];
        assert_eq!(ModulationAlphabet::with_labeling(pts), Err(ImError::DuplicatePoint));
    }

    #[test]
    fn test_explicit_labeling_override() {
        // The frame-link worked example uses this 4-QAM map:
        // 00 ↦ −1+j, 01 ↦ −1−j, 10 ↦ 1+j, 11 ↦ 1−j.
        let pts = vec![
            Complex64::new(-1.0, 1.0),
            Complex64::new(-1.0, -1.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(1.0, -1.0),
        ];
        let a = ModulationAlphabet::with_labeling(pts).unwrap();
        assert_eq!(a.modulate(&bits("01")).unwrap(), Complex64::new(-1.0, -1.0));
        assert_eq!(a.demodulate(Complex64::new(1.0, -1.0)), bits("11"));
    }
}
