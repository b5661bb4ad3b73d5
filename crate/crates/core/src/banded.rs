//! Finite realizations of walk operators: twisted rings and open windows,
//! stored as packed banded matrices.
//!
//! Ring convention: hops that cross the seam in the positive direction pick
//! up e^{-i twist}, negative crossings e^{+i twist}. A translation-invariant
//! walk on an N-cell ring with twist tau then has exactly the eigenvalues of
//! its momentum symbol at theta = (tau + 2 pi k)/N, k = 0..N-1.

use crate::error::{Error, Result};
use crate::linalg::{unitarity_defect, unitary_eigenpairs};
use crate::state::Spin;
use crate::walk::{Layer, WalkSpec};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    /// Periodic window of `cells` cells with a momentum twist at the seam.
    Ring { cells: usize, twist: f64 },
    /// Truncated window [offset, offset + cells).
    Open { offset: i64, cells: usize },
}

impl Window {
    pub fn ring(cells: usize) -> Self {
        Window::Ring { cells, twist: 0.0 }
    }

    pub fn twisted_ring(cells: usize, twist: f64) -> Self {
        Window::Ring { cells, twist }
    }

    pub fn open(offset: i64, cells: usize) -> Self {
        Window::Open { offset, cells }
    }

    pub fn cells(&self) -> usize {
        match *self {
            Window::Ring { cells, .. } | Window::Open { cells, .. } => cells,
        }
    }
}

/// Packed banded complex matrix tied to a window descriptor.
///
/// `diags[k]` holds the (cyclic, for rings) diagonal at offset `offsets[k]`:
/// entry (row = (col + offset) mod dim, col) for rings, (col + offset, col)
/// for open windows.
#[derive(Debug, Clone)]
pub struct BandedUnitary {
    window: Window,
    dim: usize,
    offsets: Vec<i64>,
    diags: Vec<Vec<C64>>,
}

impl BandedUnitary {
    pub fn window(&self) -> Window {
        self.window
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Bandwidth in scalar indices: max |offset| (cyclic distance on rings).
    pub fn half_bandwidth(&self) -> i64 {
        self.offsets.iter().map(|o| o.abs()).max().unwrap_or(0)
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        let dim = self.dim as i64;
        for (k, &off) in self.offsets.iter().enumerate() {
            let r = match self.window {
                Window::Ring { .. } => (col as i64 + off).rem_euclid(dim),
                Window::Open { .. } => col as i64 + off,
            };
            if r == row as i64 {
                return self.diags[k][col];
            }
        }
        C64::new(0.0, 0.0)
    }

    pub fn matvec(&self, x: &[C64]) -> Vec<C64> {
        assert_eq!(x.len(), self.dim);
        let dim = self.dim as i64;
        let mut y = vec![C64::new(0.0, 0.0); self.dim];
        for (k, &off) in self.offsets.iter().enumerate() {
            for (col, &v) in self.diags[k].iter().enumerate() {
                if v == C64::new(0.0, 0.0) {
                    continue;
                }
                let r = match self.window {
                    Window::Ring { .. } => (col as i64 + off).rem_euclid(dim),
                    Window::Open { .. } => {
                        let r = col as i64 + off;
                        if r < 0 || r >= dim {
                            continue;
                        }
                        r
                    }
                };
                y[r as usize] += v * x[col];
            }
        }
        y
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let mut m = DMatrix::from_element(self.dim, self.dim, C64::new(0.0, 0.0));
        let dim = self.dim as i64;
        for (k, &off) in self.offsets.iter().enumerate() {
            for (col, &v) in self.diags[k].iter().enumerate() {
                let r = match self.window {
                    Window::Ring { .. } => (col as i64 + off).rem_euclid(dim),
                    Window::Open { .. } => {
                        let r = col as i64 + off;
                        if r < 0 || r >= dim {
                            continue;
                        }
                        r
                    }
                };
                m[(r as usize, col)] += v;
            }
        }
        m
    }

    /// max |entry| of M M^dag - 1 (tiny on rings, boundary-sized on open windows).
    pub fn unitarity_defect(&self) -> f64 {
        unitarity_defect(&self.to_dense())
    }

    /// Unit-modulus eigenvalues of a ring realization.
    pub fn eigenvalues(&self) -> Vec<C64> {
        unitary_eigenpairs(&self.to_dense()).0
    }

    /// Pack a dense matrix into banded storage.
    pub fn from_dense(window: Window, m: &DMatrix<C64>) -> Self {
        let dim = m.nrows();
        assert_eq!(dim, m.ncols());
        let dimi = dim as i64;
        let offset_range: Vec<i64> = match window {
            // cyclic offsets in (-dim/2, dim/2]
            Window::Ring { .. } => {
                let lo = -(dimi - 1) / 2;
                let hi = dimi / 2;
                (lo..=hi).collect()
            }
            Window::Open { .. } => (-(dimi - 1)..dimi).collect(),
        };
        let mut offsets = Vec::new();
        let mut diags = Vec::new();
        for off in offset_range {
            let mut diag = vec![C64::new(0.0, 0.0); dim];
            let mut nonzero = false;
            for col in 0..dim {
                let r = match window {
                    Window::Ring { .. } => (col as i64 + off).rem_euclid(dimi),
                    Window::Open { .. } => {
                        let r = col as i64 + off;
                        if r < 0 || r >= dimi {
                            continue;
                        }
                        r
                    }
                };
                let v = m[(r as usize, col)];
                if v != C64::new(0.0, 0.0) {
                    nonzero = true;
                }
                diag[col] = v;
            }
            if nonzero {
                offsets.push(off);
                diags.push(diag);
            }
        }
        BandedUnitary { window, dim, offsets, diags }
    }
}

/// One walk step applied to a flat ring vector (length 2N, layout 2q + spin).
pub fn ring_step(spec: &WalkSpec, cells: usize, twist: f64, x: &[C64]) -> Vec<C64> {
    let mut v = x.to_vec();
    for layer in spec.layers() {
        v = ring_apply_layer(layer, cells, twist, &v);
    }
    v
}

fn ring_apply_layer(layer: &Layer, cells: usize, twist: f64, x: &[C64]) -> Vec<C64> {
    let n = cells;
    let idx = |q: usize, s: usize| 2 * q + s;
    match layer {
        Layer::ShiftPlus => {
            let wrap = C64::from_polar(1.0, -twist);
            let mut y = x.to_vec();
            for q in 0..n {
                let prev = (q + n - 1) % n;
                let w = if q == 0 { wrap } else { C64::new(1.0, 0.0) };
                y[idx(q, Spin::Plus as usize)] = w * x[idx(prev, Spin::Plus as usize)];
            }
            y
        }
        Layer::ShiftMinus => {
            let wrap = C64::from_polar(1.0, twist);
            let mut y = x.to_vec();
            for q in 0..n {
                let next = (q + 1) % n;
                let w = if q == n - 1 { wrap } else { C64::new(1.0, 0.0) };
                y[idx(q, Spin::Minus as usize)] = w * x[idx(next, Spin::Minus as usize)];
            }
            y
        }
        Layer::FullShift => {
            let y = ring_apply_layer(&Layer::ShiftPlus, cells, twist, x);
            ring_apply_layer(&Layer::ShiftMinus, cells, twist, &y)
        }
        Layer::Coin(coins) => {
            let mut y = x.to_vec();
            for q in 0..n {
                let m = coins.coin_at(q as i64).matrix();
                let v = m.apply([x[idx(q, 0)], x[idx(q, 1)]]);
                y[idx(q, 0)] = v[0];
                y[idx(q, 1)] = v[1];
            }
            y
        }
        Layer::Field(f) => {
            let roots = f.root_table();
            let mut y = x.to_vec();
            for q in 0..n {
                let (p, m) = f.site_phase(q as i64, &roots);
                y[idx(q, 0)] = p * x[idx(q, 0)];
                y[idx(q, 1)] = m * x[idx(q, 1)];
            }
            y
        }
        Layer::GlobalPhase(z) => x.iter().map(|v| v * z).collect(),
    }
}

/// Finite matrix realization of a walk.
///
/// Ring windows require the cell count to be a multiple of every field
/// layer's spatial period, and are exactly unitary. Open windows truncate:
/// the matrix agrees with `WalkSpec::step` on states supported at least one
/// light cone away from the window edges.
pub fn build_matrix(spec: &WalkSpec, window: Window) -> Result<BandedUnitary> {
    match window {
        Window::Ring { cells, twist } => {
            let period = spec.field_period();
            if cells == 0 || cells as i64 % period != 0 {
                return Err(Error::IncompatibleRing { cells, period: period as u64 });
            }
            let dim = 2 * cells;
            let mut dense = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
            for col in 0..dim {
                let mut e = vec![C64::new(0.0, 0.0); dim];
                e[col] = C64::new(1.0, 0.0);
                let y = ring_step(spec, cells, twist, &e);
                for (r, v) in y.into_iter().enumerate() {
                    dense[(r, col)] = v;
                }
            }
            Ok(BandedUnitary::from_dense(window, &dense))
        }
        Window::Open { offset, cells } => {
            let dim = 2 * cells;
            let mut dense = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
            for col in 0..dim {
                let cell = offset + (col / 2) as i64;
                let spin = if col % 2 == 0 { Spin::Plus } else { Spin::Minus };
                let out = spec.step(&crate::state::WaveFunction::basis(cell, spin));
                for row in 0..dim {
                    let rcell = offset + (row / 2) as i64;
                    let rspin = if row % 2 == 0 { Spin::Plus } else { Spin::Minus };
                    dense[(row, col)] = out.amp(rcell, rspin);
                }
            }
            Ok(BandedUnitary::from_dense(window, &dense))
        }
    }
}

/// Dense ring matrix of a walk (unpacked convenience for the verification
/// modules).
pub fn ring_matrix(spec: &WalkSpec, cells: usize, twist: f64) -> Result<DMatrix<C64>> {
    Ok(build_matrix(spec, Window::twisted_ring(cells, twist))?.to_dense())
}

pub use crate::linalg::max_entry_diff;
