//! Finite-window states on the line.
//!
//! A `WaveFunction` stores C^2 amplitudes for a contiguous block of cells
//! [offset, offset + len). Cell-major layout in the basis ordering
//! ..., (n,+), (n,-), (n+1,+), ...: the flat index of (n, s) is
//! 2*(n - offset) + s.

use num_complex::Complex64 as C64;

/// Internal component index: 0 = plus, 1 = minus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Plus = 0,
    Minus = 1,
}

/// Cells below this amplitude are flushed to zero by the evolution loops;
/// far below every tolerance in the crate, far above the subnormal range.
pub const AMPLITUDE_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    offset: i64,
    amps: Vec<[C64; 2]>,
}

impl WaveFunction {
    pub fn new(offset: i64, amps: Vec<[C64; 2]>) -> Self {
        assert!(!amps.is_empty());
        WaveFunction { offset, amps }
    }

    /// Basis state delta_n^s.
    pub fn basis(n: i64, s: Spin) -> Self {
        let mut amp = [C64::new(0.0, 0.0); 2];
        amp[s as usize] = C64::new(1.0, 0.0);
        WaveFunction { offset: n, amps: vec![amp] }
    }

    /// State localized at one cell with the given spinor (normalized here).
    pub fn localized(n: i64, spinor: [C64; 2]) -> Self {
        let norm = (spinor[0].norm_sqr() + spinor[1].norm_sqr()).sqrt();
        assert!(norm > 0.0, "zero spinor");
        WaveFunction {
            offset: n,
            amps: vec![[spinor[0] / norm, spinor[1] / norm]],
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    /// Inclusive cell range [first, last].
    pub fn cell_range(&self) -> (i64, i64) {
        (self.offset, self.offset + self.amps.len() as i64 - 1)
    }

    pub fn amp(&self, n: i64, s: Spin) -> C64 {
        let idx = n - self.offset;
        if idx < 0 || idx >= self.amps.len() as i64 {
            C64::new(0.0, 0.0)
        } else {
            self.amps[idx as usize][s as usize]
        }
    }

    pub fn amps(&self) -> &[[C64; 2]] {
        &self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [[C64; 2]] {
        &mut self.amps
    }

    /// Reset to an empty window at `offset`, keeping the allocation.
    pub(crate) fn reset(&mut self, offset: i64) -> &mut Vec<[C64; 2]> {
        self.offset = offset;
        self.amps.clear();
        &mut self.amps
    }

    /// An empty reusable buffer state.
    pub(crate) fn scratch() -> Self {
        WaveFunction { offset: 0, amps: Vec::new() }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps
            .iter()
            .map(|a| a[0].norm_sqr() + a[1].norm_sqr())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// <self, other> with the convention conj(self) . other.
    pub fn inner(&self, other: &WaveFunction) -> C64 {
        let (lo, hi) = self.cell_range();
        let (olo, ohi) = other.cell_range();
        let lo = lo.max(olo);
        let hi = hi.min(ohi);
        let mut acc = C64::new(0.0, 0.0);
        for n in lo..=hi {
            for s in [Spin::Plus, Spin::Minus] {
                acc += self.amp(n, s).conj() * other.amp(n, s);
            }
        }
        acc
    }

    /// || self - phase * other ||.
    pub fn distance_to_scaled(&self, other: &WaveFunction, phase: C64) -> f64 {
        let (lo, hi) = self.cell_range();
        let (olo, ohi) = other.cell_range();
        let lo = lo.min(olo);
        let hi = hi.max(ohi);
        let mut acc = 0.0;
        for n in lo..=hi {
            for s in [Spin::Plus, Spin::Minus] {
                acc += (self.amp(n, s) - phase * other.amp(n, s)).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn scale(&mut self, s: C64) {
        for a in &mut self.amps {
            a[0] *= s;
            a[1] *= s;
        }
    }

    /// Drop exactly-zero cells at both ends (keeps at least one cell);
    /// shifts in place, no reallocation.
    pub fn trim(&mut self) {
        self.trim_flush(0.0);
    }

    /// As `trim`, additionally flushing cells whose weight lies below
    /// floor^2 to exact zero first. Exponentially suppressed walks develop
    /// subnormal tails that cost two orders of magnitude in arithmetic
    /// throughput and carry no weight; `AMPLITUDE_FLOOR` removes at most
    /// len * floor^2 = O(1e-595) of norm over any window that fits in
    /// memory.
    pub fn trim_flush(&mut self, floor: f64) {
        if floor > 0.0 {
            for a in &mut self.amps {
                let peak = a[0]
                    .re
                    .abs()
                    .max(a[0].im.abs())
                    .max(a[1].re.abs())
                    .max(a[1].im.abs());
                if peak <= floor {
                    *a = [C64::new(0.0, 0.0); 2];
                }
            }
        }
        let zero = |a: &[C64; 2]| a[0] == C64::new(0.0, 0.0) && a[1] == C64::new(0.0, 0.0);
        let mut start = 0usize;
        while start + 1 < self.amps.len() && zero(&self.amps[start]) {
            start += 1;
        }
        let mut end = self.amps.len();
        while end > start + 1 && zero(&self.amps[end - 1]) {
            end -= 1;
        }
        if start > 0 {
            self.amps.copy_within(start..end, 0);
            self.offset += start as i64;
        }
        self.amps.truncate(end - start);
    }

    /// Support radius max{|n| : psi(n) != 0} after trimming copies.
    pub fn support_radius(&self) -> i64 {
        let mut t = self.clone();
        t.trim();
        let (lo, hi) = t.cell_range();
        lo.abs().max(hi.abs())
    }

    /// (mean, second moment, standard deviation) of the position distribution.
    pub fn position_moments(&self) -> PositionMoments {
        let mut mean = 0.0;
        let mut second = 0.0;
        for (i, a) in self.amps.iter().enumerate() {
            let w = a[0].norm_sqr() + a[1].norm_sqr();
            let n = (self.offset + i as i64) as f64;
            mean += n * w;
            second += n * n * w;
        }
        let var = (second - mean * mean).max(0.0);
        PositionMoments { mean, second_moment: second, sigma: var.sqrt() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositionMoments {
    pub mean: f64,
    pub second_moment: f64,
    pub sigma: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn point_mass_moments() {
        let m = WaveFunction::basis(5, Spin::Plus).position_moments();
        assert_eq!((m.mean, m.second_moment, m.sigma), (5.0, 25.0, 0.0));
    }

    #[test]
    fn two_point_moments() {
        // (delta_0^+ + delta_2^+)/sqrt(2) -> mean 1, second 2, sigma 1
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = WaveFunction::new(
            0,
            vec![
                [c(s, 0.0), c(0.0, 0.0)],
                [c(0.0, 0.0), c(0.0, 0.0)],
                [c(s, 0.0), c(0.0, 0.0)],
            ],
        );
        let m = psi.position_moments();
        assert!((m.mean - 1.0).abs() < 1e-15);
        assert!((m.second_moment - 2.0).abs() < 1e-15);
        assert!((m.sigma - 1.0).abs() < 1e-15);
    }

    #[test]
    fn symmetric_state_mean_zero() {
        let v = c(0.5, 0.0);
        let psi = WaveFunction::new(-1, vec![[v, v], [v, v], [v, v]]);
        // weights symmetric around 0 after normalizing is irrelevant for mean
        let m = psi.position_moments();
        assert!(m.mean.abs() < 1e-15);
    }

    #[test]
    fn trim_keeps_support() {
        let z = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let mut psi = WaveFunction::new(-3, vec![[z, z], [z, one], [z, z], [z, z]]);
        psi.trim();
        assert_eq!(psi.cell_range(), (-2, -2));
        assert_eq!(psi.amp(-2, Spin::Minus), one);
    }
}
