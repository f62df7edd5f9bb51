//! Power spectral density and periodic autocorrelation.
//!
//! The PSD is evaluated with a direct transform in `f64` and is only ever used
//! as a one-sided filter with slack [`PSD_TOLERANCE`]. Accept/reject decisions
//! for complete solutions go through the exact integer [`paf_certificate`].

use std::f64::consts::TAU;

use crate::error::{invalid, Result};
use crate::seqcore::DefiningQuad;

/// Slack applied to every floating-point PSD comparison.
pub const PSD_TOLERANCE: f64 = 1e-2;

/// Precomputed `cos`/`sin` of `2πt/n` for `t = 0..n`.
#[derive(Clone, Debug)]
pub struct Dft {
    n: usize,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl Dft {
    pub fn new(n: usize) -> Self {
        assert!(n > 0);
        let angle = |t: usize| TAU * t as f64 / n as f64;
        Dft {
            n,
            cos: (0..n).map(|t| angle(t).cos()).collect(),
            sin: (0..n).map(|t| angle(t).sin()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of distinct frequencies of a real sequence, `⌊n/2⌋ + 1`.
    pub fn bins(&self) -> usize {
        self.n / 2 + 1
    }

    /// `|Σ_j x_j ω^{jk}|²` with `ω = exp(2πi/n)`.
    pub fn psd_at(&self, x: &[i8], k: usize) -> f64 {
        debug_assert_eq!(x.len(), self.n);
        let (mut re, mut im) = (0.0, 0.0);
        let mut t = 0;
        for &v in x {
            let v = f64::from(v);
            re += v * self.cos[t];
            im += v * self.sin[t];
            t += k;
            if t >= self.n {
                t -= self.n;
            }
        }
        re * re + im * im
    }

    /// Writes `PSD_x(k)` for `k = 0..=n/2` into `out`.
    pub fn psd_into(&self, x: &[i8], out: &mut [f64]) {
        for (k, slot) in out.iter_mut().enumerate().take(self.bins()) {
            *slot = self.psd_at(x, k);
        }
    }

    pub fn psd(&self, x: &[i8]) -> Vec<f64> {
        let mut out = vec![0.0; self.bins()];
        self.psd_into(x, &mut out);
        out
    }

    /// True when `PSD_x(k) <= bound + ε` for every `k` in `first_bin..=n/2`.
    pub fn within(&self, x: &[i8], bound: f64, first_bin: usize) -> bool {
        (first_bin..self.bins()).all(|k| self.psd_at(x, k) <= bound + PSD_TOLERANCE)
    }
}

/// `PSD_X(k)` for `k = 0..=⌊n/2⌋`. The remaining frequencies mirror these.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralProfile {
    pub values: Vec<f64>,
    pub tolerance: f64,
}

impl SpectralProfile {
    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Expands to all `n` frequencies via `PSD(k) = PSD(n - k)`.
    pub fn full(&self, n: usize) -> Vec<f64> {
        (0..n).map(|k| self.values[k.min(n - k)]).collect()
    }
}

pub fn psd_profile(x: &impl AsRef<[i8]>) -> SpectralProfile {
    let x = x.as_ref();
    SpectralProfile {
        values: Dft::new(x.len()).psd(x),
        tolerance: PSD_TOLERANCE,
    }
}

/// `PAF_X(k)` for `k = 0..=⌊n/2⌋`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PafVector(pub Vec<i32>);

/// `Σ_j x_j x_{j+k mod n}`, evaluated directly.
pub fn paf(x: &impl AsRef<[i8]>, k: usize) -> i32 {
    let x = x.as_ref();
    let n = x.len();
    (0..n)
        .map(|j| i32::from(x[j]) * i32::from(x[(j + k) % n]))
        .sum()
}

pub fn paf_vector(x: &impl AsRef<[i8]>) -> PafVector {
    let len = x.as_ref().len();
    PafVector((0..=len / 2).map(|k| paf(x, k)).collect())
}

/// Checks `Σ_{X∈rows} PSD_X(k) <= 4n + ε` for all `k`.
///
/// `n` is the uncompressed order; the rows may be compressions of length `n/3`
/// and the bound stays `4n`.
pub fn passes_psd_filter(rows: &[&[i8]], n: usize) -> Result<bool> {
    let Some(first) = rows.first() else {
        return invalid("PSD filter needs at least one row");
    };
    let len = first.len();
    if rows.iter().any(|r| r.len() != len) {
        return invalid("PSD filter rows must share a length");
    }
    let dft = Dft::new(len);
    let bound = 4.0 * n as f64 + PSD_TOLERANCE;
    Ok((0..dft.bins()).all(|k| rows.iter().map(|r| dft.psd_at(r, k)).sum::<f64>() <= bound))
}

/// True when `Σ PAF_X(k) = 0` for every `1 <= k <= len/2`.
pub fn paf_sums_vanish(rows: &[&[i8]]) -> bool {
    let len = rows[0].len();
    (1..=len / 2).all(|k| rows.iter().map(|r| paf(r, k)).sum::<i32>() == 0)
}

/// Exact test that the four rows define good matrices:
/// `PAF_A(k) + PAF_B(k) + PAF_C(k) + PAF_D(k) = 0` for `1 <= k <= n/2`.
pub fn paf_certificate(quad: &DefiningQuad) -> bool {
    paf_sums_vanish(&quad.rows())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;
    use crate::seqcore::{compress3, make_skew, make_symmetric, parse_row, PmSequence};

    fn row(s: &str) -> Vec<i8> {
        parse_row(s).unwrap().into_entries()
    }

    #[test]
    fn constant_row_profile() {
        let p = psd_profile(&vec![1i8; 3]);
        assert_eq!(p.values.len(), 2);
        assert!((p.values[0] - 9.0).abs() < 1e-9);
        assert!(p.values[1].abs() < 1e-9);
    }

    #[test]
    fn zero_frequency_is_rowsum_squared() {
        let p = psd_profile(&row("++-"));
        assert!((p.values[0] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn parseval_on_published_row() {
        let a = known::order_27().a;
        let full = psd_profile(&a).full(27);
        let mean = full.iter().sum::<f64>() / 27.0;
        assert!((mean - 27.0).abs() < PSD_TOLERANCE);
    }

    #[test]
    fn autocorrelation() {
        assert_eq!(paf(&row("++-"), 1), -1);
        assert_eq!(paf(&vec![3i8, 3, 3], 1), 27);
        assert_eq!(paf(&row("+-+--++"), 0), 7);
        assert_eq!(paf_vector(&row("++-")), PafVector(vec![3, -1]));
    }

    #[test]
    fn psd_filter_examples() {
        let ones = vec![1i8; 9];
        assert!(!passes_psd_filter(&[&ones], 9).unwrap());
        let a = row("++-");
        assert!(passes_psd_filter(&[&a], 3).unwrap());
        assert!(passes_psd_filter(&[], 3).is_err());
    }

    #[test]
    fn published_quad_has_flat_spectrum() {
        let q = known::order_27();
        assert!(passes_psd_filter(&q.rows(), 27).unwrap());
        let dft = Dft::new(27);
        for k in 0..dft.bins() {
            let total: f64 = q.rows().iter().map(|r| dft.psd_at(r, k)).sum();
            assert!((total - 108.0).abs() < PSD_TOLERANCE, "k={k}: {total}");
        }
    }

    #[test]
    fn certificates() {
        let sym = |s| make_symmetric(&row(s)[1..2], 3).unwrap();
        let q = DefiningQuad::new(
            make_skew(&[1], 3).unwrap(),
            sym("+++"),
            sym("+--"),
            sym("+--"),
        )
        .unwrap();
        assert!(paf_certificate(&q));
        let mut bad = q.clone();
        bad.d = sym("+++");
        assert!(!paf_certificate(&bad));
        assert!(paf_certificate(&known::order_27()));
        assert!(paf_certificate(&known::order_57()));
    }

    #[test]
    fn compressed_published_quad_matches_at_every_frequency() {
        let q = known::order_57();
        let rows: Vec<Vec<i8>> = q
            .rows()
            .iter()
            .map(|r| compress3(&PmSequence::new(r.to_vec()).unwrap()).unwrap().entries().to_vec())
            .collect();
        let dft = Dft::new(19);
        for k in 0..dft.bins() {
            let total: f64 = rows.iter().map(|r| dft.psd_at(r, k)).sum();
            assert!((total - 228.0).abs() < PSD_TOLERANCE);
        }
    }
}
