//! Momentum-space engine.
//!
//! Translation-invariant walks act in Fourier space as 2x2 unitary
//! multiplication operators ("symbols"); with the transform
//! (F psi)(theta) = (2 pi)^{-1/2} sum_n e^{-i theta n} psi(n) the layer
//! symbols are
//!     S+ -> diag(e^{-i theta}, 1),   S- -> diag(1, e^{i theta}),
//!     S  -> diag(e^{-i theta}, e^{i theta}),   coins -> constant matrices,
//! and a rational field is a pure momentum shift (plain) or a constant coin
//! times a momentum shift (tilde). An electric walk itself is not
//! translation-invariant, but its m-th power is: the per-step momentum
//! shifts add up to an integer multiple of 2 pi, and the regrouped walk is
//! the matrix product of one-step symbols at shifted momenta.
//!
//! Eigenphases omega_s(theta) of the regrouped symbol are the dispersion
//! relations. The closed form (for the determinant-1 coin):
//!     cos omega(theta, m) = |a|^m cos(m(theta + arg a))                 m odd
//!     cos omega(theta, m) = -|a|^m cos(m(theta + arg a))
//!                           + (-1)^{m/2} (|a|^m - 1)                    m even
//! Its derivative maximum is m|a|^m (odd) resp. m|a|^{m/2} (even), attained
//! where the regularized squared forms
//!     f1(y) = (1-y)/(1-|a|^{2m} y),   f2(y) = (2-y)/(2-|a|^m y)
//! reach 1 at y = 0; the group velocity is always evaluated through f1/f2,
//! never through the raw sin-quotient.
//!
//! Momentum parametrization note: with the sign convention above, the
//! product symbol's eigenphase at momentum theta equals the closed form
//! evaluated at -theta. Every quantity computed here (velocity maxima, band
//! sets, revival defects) is a sweep over all theta and is unaffected;
//! pointwise cross-checks in the tests apply the reflection explicitly.

use crate::coin::SU2Coin;
use crate::error::{Error, Result};
use crate::field::{FieldVariant, RationalField};
use crate::linalg::Mat2;
use crate::parallel;
use crate::walk::{Layer, WalkKind, WalkSpec};
use num_complex::Complex64 as C64;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// Momentum-space action of a single walk layer.
#[derive(Debug, Clone, PartialEq)]
pub enum LayerSymbol {
    /// theta-dependent multiplication by a 2x2 unitary.
    Multiplication(SymbolFactor),
    /// Pure momentum shift theta -> theta - delta, delta in units of 2 pi.
    MomentumShift(Ratio<i64>),
}

/// Primitive theta -> 2x2 factors with analytic derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolFactor {
    /// diag(e^{-i theta}, 1)
    ShiftPlus,
    /// diag(1, e^{i theta})
    ShiftMinus,
    /// diag(e^{-i theta}, e^{i theta})
    FullShift,
    /// Constant matrix (coins, internal field phases, global phases).
    Const(Mat2),
}

impl SymbolFactor {
    pub fn eval(&self, theta: f64) -> Mat2 {
        let em = C64::from_polar(1.0, -theta);
        let ep = C64::from_polar(1.0, theta);
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        match self {
            SymbolFactor::ShiftPlus => Mat2::new(em, zero, zero, one),
            SymbolFactor::ShiftMinus => Mat2::new(one, zero, zero, ep),
            SymbolFactor::FullShift => Mat2::new(em, zero, zero, ep),
            SymbolFactor::Const(m) => *m,
        }
    }

    /// (value, d/dtheta, d^2/dtheta^2) at theta.
    fn eval3(&self, theta: f64) -> (Mat2, Mat2, Mat2) {
        let i = C64::new(0.0, 1.0);
        let zero = Mat2::zero();
        let v = self.eval(theta);
        let z = C64::new(0.0, 0.0);
        match self {
            SymbolFactor::Const(_) => (v, zero, zero),
            SymbolFactor::ShiftPlus => {
                let d = Mat2::diag(-i * v.0[0][0], z);
                let dd = Mat2::diag(-v.0[0][0], z);
                (v, d, dd)
            }
            SymbolFactor::ShiftMinus => {
                let d = Mat2::diag(z, i * v.0[1][1]);
                let dd = Mat2::diag(z, -v.0[1][1]);
                (v, d, dd)
            }
            SymbolFactor::FullShift => {
                let d = Mat2::diag(-i * v.0[0][0], i * v.0[1][1]);
                let dd = Mat2::diag(-v.0[0][0], -v.0[1][1]);
                (v, d, dd)
            }
        }
    }
}

/// Momentum-space symbols of one layer, leftmost factor first (operator
/// order). Position-dependent coins have no symbol.
pub fn layer_symbols(layer: &Layer) -> Result<Vec<LayerSymbol>> {
    match layer {
        Layer::ShiftPlus => Ok(vec![LayerSymbol::Multiplication(SymbolFactor::ShiftPlus)]),
        Layer::ShiftMinus => Ok(vec![LayerSymbol::Multiplication(SymbolFactor::ShiftMinus)]),
        Layer::FullShift => Ok(vec![LayerSymbol::Multiplication(SymbolFactor::FullShift)]),
        Layer::Coin(seq) => match seq.constant_coin() {
            Some(c) => Ok(vec![LayerSymbol::Multiplication(SymbolFactor::Const(c.matrix()))]),
            None => Err(Error::NotTranslationInvariant(
                "position-dependent coin sequence".into(),
            )),
        },
        Layer::GlobalPhase(z) => Ok(vec![LayerSymbol::Multiplication(SymbolFactor::Const(
            Mat2::identity().scale(*z),
        ))]),
        Layer::Field(f) => match f.variant() {
            FieldVariant::Plain => Ok(vec![LayerSymbol::MomentumShift(f.frac())]),
            FieldVariant::Tilde => {
                let d = Mat2::diag(C64::new(1.0, 0.0), C64::from_polar(1.0, f.phi()));
                Ok(vec![
                    LayerSymbol::Multiplication(SymbolFactor::Const(d)),
                    LayerSymbol::MomentumShift(f.frac() * 2),
                ])
            }
        },
    }
}

/// A product of primitive factors evaluated at per-factor momentum offsets:
/// M(theta) = prod_k f_k(theta + 2 pi off_k), leftmost first.
#[derive(Debug, Clone)]
pub struct FloquetSymbol {
    factors: Vec<(SymbolFactor, Ratio<i64>)>,
    regroup_power: u32,
    theta_period: f64,
    provenance: String,
}

impl FloquetSymbol {
    /// Symbol of a translation-invariant walk. Rejects field layers (the
    /// walk itself is then not translation-invariant) and position-dependent
    /// coins.
    pub fn of_spec(spec: &WalkSpec) -> Result<Self> {
        let mut factors = Vec::new();
        // operator order is the reverse of application order
        for layer in spec.layers().iter().rev() {
            if matches!(layer, Layer::Field(_)) {
                return Err(Error::NotTranslationInvariant("field layer present".into()));
            }
            for s in layer_symbols(layer)? {
                match s {
                    LayerSymbol::Multiplication(f) => factors.push((f, Ratio::new(0, 1))),
                    LayerSymbol::MomentumShift(_) => unreachable!("fields rejected above"),
                }
            }
        }
        Ok(FloquetSymbol {
            factors,
            regroup_power: 1,
            theta_period: TAU,
            provenance: "translation-invariant walk".into(),
        })
    }

    /// Symbol of the m-step regrouped electric walk U_Phi^m resp. W_Phi^m
    /// with a translation-invariant coin.
    ///
    /// One step contributes the field-free one-step symbol times the internal
    /// field phase, at momentum shifted by j*Delta (Delta = Phi for the plain
    /// field, 2 Phi for the tilde field); after m steps the accumulated shift
    /// is an integer multiple of 2 pi (asserted exactly in rational
    /// arithmetic), so the product is again a multiplication operator:
    ///     M(theta) = prod_{j=1..m} A(theta - j Delta).
    pub fn regrouped(kind: WalkKind, coin: SU2Coin, field: RationalField) -> Self {
        let m = field.den();
        let c = coin.matrix();
        let step: Vec<SymbolFactor> = match kind {
            WalkKind::ShiftCoin => vec![SymbolFactor::FullShift, SymbolFactor::Const(c)],
            WalkKind::SplitStep => {
                let d = Mat2::diag(C64::new(1.0, 0.0), C64::from_polar(1.0, field.phi()));
                vec![
                    SymbolFactor::Const(d),
                    SymbolFactor::ShiftPlus,
                    SymbolFactor::Const(c),
                    SymbolFactor::ShiftMinus,
                    SymbolFactor::Const(c),
                ]
            }
        };
        let delta = match kind {
            WalkKind::ShiftCoin => field.with_variant(FieldVariant::Plain).momentum_shift(),
            WalkKind::SplitStep => field.with_variant(FieldVariant::Tilde).momentum_shift(),
        };
        // total momentum shift over the regrouping power must vanish mod 2 pi
        let total = delta * m;
        assert!(
            total.is_integer(),
            "regrouped walk is not a multiplication operator: total shift {total}"
        );
        let mut factors = Vec::new();
        for j in 1..=m {
            let off = -delta * j;
            for f in &step {
                factors.push((*f, off));
            }
        }
        FloquetSymbol {
            factors,
            regroup_power: m as u32,
            theta_period: TAU,
            provenance: format!(
                "{} walk regrouped over {m} steps at field {field}",
                match kind {
                    WalkKind::ShiftCoin => "shift-coin",
                    WalkKind::SplitStep => "split-step",
                }
            ),
        }
    }

    pub fn regroup_power(&self) -> u32 {
        self.regroup_power
    }

    pub fn theta_period(&self) -> f64 {
        self.theta_period
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn eval(&self, theta: f64) -> Mat2 {
        let mut m = Mat2::identity();
        for (f, off) in &self.factors {
            let t = theta + TAU * ratio_f64(*off);
            m = m.mul(&f.eval(t));
        }
        m
    }

    /// (M, dM/dtheta) by the product rule.
    pub fn eval2(&self, theta: f64) -> (Mat2, Mat2) {
        let mut v = Mat2::identity();
        let mut d1 = Mat2::zero();
        for (f, off) in &self.factors {
            let t = theta + TAU * ratio_f64(*off);
            let (fv, fd, _) = f.eval3(t);
            let nd1 = d1.mul(&fv).add(&v.mul(&fd));
            d1 = nd1;
            v = v.mul(&fv);
        }
        (v, d1)
    }

    /// (M, dM/dtheta, d2M/dtheta2) by the product rule.
    pub fn eval3(&self, theta: f64) -> (Mat2, Mat2, Mat2) {
        let mut v = Mat2::identity();
        let mut d1 = Mat2::zero();
        let mut d2 = Mat2::zero();
        for (f, off) in &self.factors {
            let t = theta + TAU * ratio_f64(*off);
            let (fv, fd, fdd) = f.eval3(t);
            let nd2 = d2
                .mul(&fv)
                .add(&d1.mul(&fd).scale(C64::new(2.0, 0.0)))
                .add(&v.mul(&fdd));
            let nd1 = d1.mul(&fv).add(&v.mul(&fd));
            d2 = nd2;
            d1 = nd1;
            v = v.mul(&fv);
        }
        (v, d1, d2)
    }

    /// Unit-modulus eigenvalues with rank-1 orthogonal eigenprojections.
    pub fn eigensystem(&self, theta: f64) -> [(C64, Mat2); 2] {
        self.eval(theta).eigenprojections()
    }

    /// Eigenphases (arguments of the eigenvalues) at theta.
    pub fn eigenphases(&self, theta: f64) -> [f64; 2] {
        let [l0, l1] = self.eval(theta).eigenvalues();
        [l0.arg(), l1.arg()]
    }

    /// cos(omega(theta)) = Re tr M / 2 together with its first and second
    /// theta-derivatives. Only meaningful for determinant-1 symbols, where
    /// the eigenphases are +-omega; asserted in debug builds.
    pub fn cos_trace3(&self, theta: f64) -> (f64, f64, f64) {
        let (v, d1, d2) = self.eval3(theta);
        debug_assert!(
            (v.det() - C64::new(1.0, 0.0)).norm() < 1e-9,
            "cos_trace requires a special-unitary symbol"
        );
        debug_assert!(v.trace().im.abs() < 1e-9);
        (0.5 * v.trace().re, 0.5 * d1.trace().re, 0.5 * d2.trace().re)
    }

    /// |d omega / d theta| at theta for determinant-1 symbols, via the
    /// trace: (omega')^2 = (c')^2 / (1 - c^2), with the conical limit
    /// |c''| at degenerate points.
    pub fn group_velocity_at(&self, theta: f64) -> f64 {
        let (c, c1, c2) = self.cos_trace3(theta);
        let denom = 1.0 - c * c;
        if denom > 1e-9 {
            (c1 * c1 / denom).max(0.0).sqrt()
        } else {
            c2.abs().sqrt()
        }
    }

    /// cos-trace and first derivative on a uniform grid.
    fn grid_samples(&self, grid: usize) -> Vec<(f64, f64, f64)> {
        parallel::pool().install(|| {
            (0..grid)
                .into_par_iter()
                .map(|k| {
                    let theta = TAU * k as f64 / grid as f64;
                    let (v, d1) = self.eval2(theta);
                    (theta, 0.5 * v.trace().re, 0.5 * d1.trace().re)
                })
                .collect()
        })
    }

    /// max over theta and both bands of |d omega / d theta|.
    ///
    /// Interior maxima are found on a coarse grid (default 4096 points)
    /// refined by golden-section search; band-edge maxima (where the two
    /// eigenvalues collide, the generic situation for even regrouping
    /// powers) are located by Newton iteration on c' and evaluated through
    /// the conical limit |c''|.
    pub fn max_group_velocity(&self, grid: usize) -> f64 {
        let grid = grid.max(64);
        let samples = self.grid_samples(grid);
        let interior = |theta: f64| -> f64 {
            let (c, c1, _) = self.cos_trace3(theta);
            let denom = 1.0 - c * c;
            if denom < 1e-4 {
                f64::NEG_INFINITY
            } else {
                c1 * c1 / denom
            }
        };
        let mut best = 0.0f64;
        let mut ranked: Vec<(f64, f64)> = samples
            .iter()
            .filter(|(_, c, _)| 1.0 - c * c >= 1e-4)
            .map(|&(theta, c, c1)| (c1 * c1 / (1.0 - c * c), theta))
            .collect();
        ranked.sort_by(|a, b| b.0.total_cmp(&a.0));
        let h = TAU / grid as f64;
        for &(v2, theta) in ranked.iter().take(8) {
            best = best.max(v2);
            best = best.max(golden_max(interior, theta - h, theta + h));
        }
        // band-edge (degenerate) maxima. The trace of an O(m)-factor product
        // carries ~1e-15 of roundoff, so |c''| below ~1e-12 is
        // indistinguishable from noise and taking its square root would
        // fabricate velocities of order 1e-6; such edges are numerically
        // zero-velocity (possible only when |a|^m itself is ~1e-6 or less).
        const CONE_FLOOR: f64 = 1e-12;
        for sign in [1.0f64, -1.0] {
            if let Some((theta0, c_star)) = self.extremize_cos(&samples, sign) {
                if c_star >= 1.0 - 1e-6 {
                    let (_, _, c2) = self.cos_trace3(theta0);
                    if c2.abs() >= CONE_FLOOR {
                        best = best.max(c2.abs());
                    }
                }
            }
        }
        best.max(0.0).sqrt()
    }

    /// Locate the extremum of sign*c(theta) from grid samples, polished by
    /// Newton iteration on c'. Returns (theta, sign*c) or None on an empty
    /// grid.
    fn extremize_cos(&self, samples: &[(f64, f64, f64)], sign: f64) -> Option<(f64, f64)> {
        let best = samples
            .iter()
            .max_by(|a, b| (sign * a.1).total_cmp(&(sign * b.1)))?;
        let mut theta = best.0;
        for _ in 0..40 {
            let (_, c1, c2) = self.cos_trace3(theta);
            if c2.abs() < 1e-12 {
                break;
            }
            let step = (c1 / c2).clamp(-0.5, 0.5);
            theta -= step;
            if step.abs() < 1e-14 {
                break;
            }
        }
        let (c, _, _) = self.cos_trace3(theta);
        if sign * c < sign * best.1 {
            Some((best.0, sign * best.1))
        } else {
            Some((theta, sign * c))
        }
    }

    /// sup over theta of max_s |lambda_s(theta)^power + offset| for a
    /// determinant-1 symbol; the eigenvalues are e^{+-i omega}, so the
    /// defect depends on theta only through c = cos omega and its sup sits
    /// at an extremum of c.
    pub fn sup_eigen_defect(&self, power: u32, offset: f64, grid: usize) -> f64 {
        let grid = grid.max(64);
        let samples = self.grid_samples(grid);
        // |e^{+-i p omega} + offset|^2 = 2 + 2*offset*cos(p omega); cos(p
        // omega) is a polynomial in c = cos(omega), so no arccos is needed
        // for the powers that occur (1 and 2)
        let defect_from_c = |c: f64| -> f64 {
            let c = c.clamp(-1.0, 1.0);
            let cp = match power {
                1 => c,
                2 => 2.0 * c * c - 1.0,
                p => (f64::from(p) * c.acos()).cos(),
            };
            (2.0 + 2.0 * offset * cp).max(0.0).sqrt()
        };
        let mut best = 0.0f64;
        for sign in [1.0f64, -1.0] {
            if let Some((theta0, _)) = self.extremize_cos(&samples, sign) {
                let (c, _, _) = self.cos_trace3(theta0);
                best = best.max(defect_from_c(c));
            }
        }
        // the defect is monotone in c only for power 1; scan the grid too
        for &(_, c, _) in &samples {
            best = best.max(defect_from_c(c));
        }
        best
    }

    /// max |entry| of M(theta) M(theta)^dag - 1.
    pub fn unitarity_defect(&self, theta: f64) -> f64 {
        self.eval(theta).unitarity_defect()
    }
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Golden-section maximization on [lo, hi] (callers bracket candidates from
/// a grid).
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..80 {
        if hi - lo < 1e-13 {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    f1.max(f2)
}

/// Closed-form dispersion relation of the m-step regrouped electric
/// shift-coin walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionProfile {
    power: u32,
    abs_a: f64,
    arg_a: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

impl DispersionProfile {
    pub fn new(power: u32, abs_a: f64, arg_a: f64) -> Self {
        assert!(power >= 1);
        assert!((0.0..=1.0).contains(&abs_a), "|a| must lie in [0, 1]");
        DispersionProfile { power, abs_a, arg_a }
    }

    /// Profile of U_Phi^m for the given coin and reduced field.
    pub fn for_shift_coin(coin: SU2Coin, field: RationalField) -> Self {
        Self::new(field.den() as u32, coin.abs_a(), coin.arg_a())
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn parity(&self) -> Parity {
        if self.power % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn abs_a(&self) -> f64 {
        self.abs_a
    }

    pub fn cos_omega(&self, theta: f64) -> f64 {
        let m = self.power;
        let am = self.abs_a.powi(m as i32);
        let phase = (m as f64 * (theta + self.arg_a)).cos();
        match self.parity() {
            Parity::Odd => am * phase,
            Parity::Even => {
                let sign = if m.is_multiple_of(4) { 1.0 } else { -1.0 };
                -am * phase + sign * (am - 1.0)
            }
        }
    }

    /// Principal-branch eigenphases: omega_plus in [0, pi], omega_minus =
    /// -omega_plus.
    pub fn omega(&self, theta: f64) -> (f64, f64) {
        let w = self.cos_omega(theta).clamp(-1.0, 1.0).acos();
        (w, -w)
    }

    /// Exact range of cos(omega) over theta.
    pub fn cos_range(&self) -> (f64, f64) {
        let am = self.abs_a.powi(self.power as i32);
        match self.parity() {
            Parity::Odd => (-am, am),
            Parity::Even => {
                let sign = if self.power.is_multiple_of(4) { 1.0 } else { -1.0 };
                (sign * (am - 1.0) - am, sign * (am - 1.0) + am)
            }
        }
    }

    /// Range of omega_plus over theta (a closed subinterval of [0, pi]).
    pub fn omega_range(&self) -> (f64, f64) {
        let (lo, hi) = self.cos_range();
        (hi.clamp(-1.0, 1.0).acos(), lo.clamp(-1.0, 1.0).acos())
    }

    /// |d omega / d theta| through the regularized squared forms f1/f2
    /// (exact at band edges where the raw quotient is 0/0).
    pub fn group_velocity_abs(&self, theta: f64) -> f64 {
        let m = self.power as f64;
        let am = self.abs_a.powi(self.power as i32);
        let phase = m * (theta + self.arg_a);
        match self.parity() {
            Parity::Odd => {
                let y = phase.cos().powi(2);
                let denom = 1.0 - am * am * y;
                let f1 = if denom <= 0.0 { 1.0 } else { (1.0 - y) / denom };
                m * am * f1.clamp(0.0, 1.0).sqrt()
            }
            Parity::Even => {
                let sign = if self.power.is_multiple_of(4) { 1.0 } else { -1.0 };
                let y = 1.0 - sign * phase.cos();
                let denom = 2.0 - am * y;
                let f2 = if denom <= 0.0 { 1.0 } else { (2.0 - y) / denom };
                m * am.sqrt() * f2.clamp(0.0, 1.0).sqrt()
            }
        }
    }

    /// Raw derivative quotient (-1)^{m+1} m |a|^m sin(m(theta + arg a)) /
    /// sin(omega). Test oracle only; undefined at band edges.
    pub fn group_velocity_raw_quotient(&self, theta: f64) -> f64 {
        let m = self.power as f64;
        let am = self.abs_a.powi(self.power as i32);
        let (omega, _) = self.omega(theta);
        let sign = if self.power.is_multiple_of(2) { -1.0 } else { 1.0 };
        sign * m * am * (m * (theta + self.arg_a)).sin() / omega.sin()
    }

    /// Closed-form max over theta of |d omega / d theta|:
    /// m |a|^m (odd power) resp. m |a|^{m/2} (even power).
    pub fn max_group_velocity_closed(&self) -> f64 {
        let m = self.power;
        match self.parity() {
            Parity::Odd => m as f64 * self.abs_a.powi(m as i32),
            Parity::Even => m as f64 * self.abs_a.powi((m / 2) as i32),
        }
    }

    /// Grid + golden-section maximum of the regularized closed form.
    pub fn max_group_velocity_grid(&self, grid: usize) -> f64 {
        let grid = grid.max(64);
        let f = |theta: f64| self.group_velocity_abs(theta);
        let mut ranked: Vec<(f64, f64)> = (0..grid)
            .map(|k| {
                let theta = TAU * k as f64 / grid as f64;
                (f(theta), theta)
            })
            .collect();
        ranked.sort_by(|a, b| b.0.total_cmp(&a.0));
        let h = TAU / grid as f64;
        let mut best = ranked[0].0;
        for &(_, theta) in ranked.iter().take(8) {
            best = best.max(golden_max(f, theta - h, theta + h));
        }
        best
    }
}

/// The dispersion entering the split-step band formula: for field n/m the
/// m-step eigenphases of W_Phi^m trace (up to an overall sign (-1)^n)
///     omega(theta, 2m)   for n odd,
///     2 omega(theta, m)  for n even,
/// returned as (profile, scale): hat-omega(theta) = scale * omega_profile.
pub fn hat_dispersion(coin: SU2Coin, field: RationalField) -> (DispersionProfile, u32) {
    let m = field.den() as u32;
    if field.num() % 2 == 1 {
        (DispersionProfile::new(2 * m, coin.abs_a(), coin.arg_a()), 1)
    } else {
        (DispersionProfile::new(m, coin.abs_a(), coin.arg_a()), 2)
    }
}

/// Exponent e such that the closed-form maximal velocity is |a|^e.
/// Shift-coin: e = m (m odd), m/2 (m even); split-step: e = m. The
/// executable witness of the velocity consistency chain is the equality of
/// these integers for W at n/m and U at the reduced half field.
pub fn velocity_exponent(kind: WalkKind, field: RationalField) -> i64 {
    let m = field.den();
    match kind {
        WalkKind::ShiftCoin => {
            if m % 2 == 1 {
                m
            } else {
                m / 2
            }
        }
        WalkKind::SplitStep => m,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VelocityReport {
    /// |a|^exponent, the exact maximal velocity.
    pub closed_form: f64,
    /// The integer exponent in closed form.
    pub exponent: i64,
    /// (1/m) max_theta |d omega| from the regrouped product symbol.
    pub numeric: f64,
    /// The historical bound (4|a|)^m, for reporting.
    pub legacy_bound: f64,
}

/// Maximal group velocity of the electric walk: closed form |a|^e together
/// with the independent numeric maximization over the regrouped symbol.
pub fn max_velocity(kind: WalkKind, coin: SU2Coin, field: RationalField) -> VelocityReport {
    let m = field.den();
    let exponent = velocity_exponent(kind, field);
    let closed_form = coin.abs_a().powi(exponent as i32);
    let symbol = FloquetSymbol::regrouped(kind, coin, field);
    let numeric = symbol.max_group_velocity(4096) / m as f64;
    let legacy_bound = (4.0 * coin.abs_a()).powi(m as i32);
    VelocityReport { closed_form, exponent, numeric, legacy_bound }
}

#[derive(Debug, Clone, Serialize)]
pub struct RevivalReport {
    /// sup_theta max_s |lambda_s^power + lambda| over the regrouped symbol.
    pub numeric: f64,
    /// 2|a|^m resp. 2|a|^{m/2}.
    pub closed_form: f64,
    /// The identity's additive unit lambda (+-1).
    pub lambda: f64,
    /// Per-period revival phase, -lambda.
    pub phase: f64,
    /// Steps after which the state revives (m or 2m).
    pub period: i64,
}

/// Revival defect of the electric walk:
///   shift-coin, m odd : || U_Phi^{2m} + 1 ||          = 2|a|^m
///   shift-coin, m even: || U_Phi^m + (-1)^{m/2} 1 ||  = 2|a|^{m/2}
///   split-step        : || W_Phi^m - (-1)^m 1 ||      = 2|a|^m
/// The symbol is normal, so the operator norm is the sup over theta of the
/// eigenvalue defect.
pub fn revival_defect(kind: WalkKind, coin: SU2Coin, field: RationalField) -> RevivalReport {
    let m = field.den();
    let abs_a = coin.abs_a();
    let symbol = FloquetSymbol::regrouped(kind, coin, field);
    let (eig_power, lambda, closed_form, period) = match kind {
        WalkKind::ShiftCoin => {
            if m % 2 == 1 {
                (2u32, 1.0, 2.0 * abs_a.powi(m as i32), 2 * m)
            } else {
                let l = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
                (1u32, l, 2.0 * abs_a.powi((m / 2) as i32), m)
            }
        }
        WalkKind::SplitStep => {
            let l = if m % 2 == 0 { -1.0 } else { 1.0 };
            (1u32, l, 2.0 * abs_a.powi(m as i32), m)
        }
    };
    let numeric = symbol.sup_eigen_defect(eig_power, lambda, 4096);
    RevivalReport { numeric, closed_form, lambda, phase: -lambda, period }
}

/// Closed arc on the unit circle, angles in [0, 2 pi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandArc {
    pub start: f64,
    pub end: f64,
    pub multiplicity: u32,
}

/// Sorted, merged union of closed arcs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandSet {
    arcs: Vec<BandArc>,
}

impl BandSet {
    /// Build from raw (start, length) pairs; lengths >= 0. Arcs are
    /// normalized mod 2 pi, sorted, and merged (multiplicities add).
    pub fn from_raw(raw: impl IntoIterator<Item = (f64, f64)>) -> Self {
        const EPS: f64 = 1e-12;
        let arcs: Vec<(f64, f64, u32)> = raw
            .into_iter()
            .map(|(start, len)| {
                assert!((-EPS..=TAU + EPS).contains(&len));
                (start.rem_euclid(TAU), len.max(0.0), 1u32)
            })
            .collect();
        if arcs.iter().any(|&(_, len, _)| len >= TAU - EPS) {
            return BandSet {
                arcs: vec![BandArc { start: 0.0, end: TAU, multiplicity: arcs.len() as u32 }],
            };
        }
        // split wrap-around arcs at 0
        let mut flat: Vec<(f64, f64, u32)> = Vec::new();
        for (s, len, mult) in arcs {
            if s + len > TAU {
                flat.push((s, TAU - s, mult));
                flat.push((0.0, s + len - TAU, mult));
            } else {
                flat.push((s, len, mult));
            }
        }
        flat.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<BandArc> = Vec::new();
        for (s, len, mult) in flat {
            if let Some(last) = merged.last_mut() {
                if s <= last.end + EPS {
                    last.end = last.end.max(s + len);
                    last.multiplicity += mult;
                    continue;
                }
            }
            merged.push(BandArc { start: s, end: s + len, multiplicity: mult });
        }
        // arcs meeting across the 0/2pi seam merge into one; starts stay in
        // [0, 2 pi), so the seam arc's end runs past 2 pi
        if merged.len() > 1 {
            let first_start = merged[0].start;
            let last_end = merged.last().unwrap().end;
            if last_end >= TAU - EPS && first_start <= EPS {
                let first = merged.remove(0);
                let last = merged.last_mut().unwrap();
                last.end = first.end + TAU;
                last.multiplicity += first.multiplicity;
            }
        }
        BandSet { arcs: merged }
    }

    pub fn arcs(&self) -> &[BandArc] {
        &self.arcs
    }

    pub fn is_full_circle(&self) -> bool {
        self.arcs.len() == 1 && self.arcs[0].end - self.arcs[0].start >= TAU - 1e-12
    }

    /// Every arc start lies in [0, 2 pi); a single seam-crossing arc may
    /// have end > 2 pi.
    pub fn is_normalized(&self) -> bool {
        self.arcs
            .iter()
            .all(|a| (0.0..TAU).contains(&a.start) && a.end >= a.start)
            && self
                .arcs
                .windows(2)
                .all(|w| w[0].end < w[1].start)
    }

    /// Total arc length.
    pub fn measure(&self) -> f64 {
        self.arcs.iter().map(|a| a.end - a.start).sum()
    }

    /// Does the angle phi lie within tol of the set?
    pub fn contains_angle(&self, phi: f64, tol: f64) -> bool {
        self.distance(phi) <= tol
    }

    /// Smallest angular distance from phi to the set (0 if inside).
    pub fn distance(&self, phi: f64) -> f64 {
        if self.is_full_circle() {
            return 0.0;
        }
        let phi = phi.rem_euclid(TAU);
        let mut best = f64::INFINITY;
        for a in &self.arcs {
            for shift in [-TAU, 0.0, TAU] {
                let p = phi + shift;
                let d = if p < a.start {
                    a.start - p
                } else if p > a.end {
                    p - a.end
                } else {
                    0.0
                };
                best = best.min(d);
            }
        }
        best
    }
}

/// Spectral bands of the electric walk as arcs on the unit circle.
///
/// Shift-coin: spec(U_Phi) is the full m-th root set of the regrouped
/// spectrum {e^{+-i omega(theta, m)}} — 2m arcs. Split-step: spec(W_Phi) =
/// { e^{i (hat-omega_s(theta) + pi k)/m} : k = 0..2m-1 } with hat-omega from
/// `hat_dispersion` — 2m root copies of each band. Endpoints come from the
/// exact extrema of the closed-form dispersion; `theta_samples` (>= 64)
/// drives a sweep asserting the sampled dispersion stays inside the emitted
/// envelope.
pub fn spectrum_bands(
    kind: WalkKind,
    coin: SU2Coin,
    field: RationalField,
    theta_samples: usize,
) -> BandSet {
    assert!(theta_samples >= 64, "need at least 64 theta samples");
    let m = field.den() as u32;
    let (profile, scale, root_step, copies) = match kind {
        WalkKind::ShiftCoin => {
            (DispersionProfile::for_shift_coin(coin, field), 1u32, TAU / m as f64, m)
        }
        WalkKind::SplitStep => {
            let (p, s) = hat_dispersion(coin, field);
            (p, s, PI / m as f64, 2 * m)
        }
    };
    let (lo, hi) = profile.omega_range();
    let (w_lo, w_hi) = (scale as f64 * lo, scale as f64 * hi);
    for k in 0..theta_samples {
        let theta = TAU * k as f64 / theta_samples as f64;
        let w = scale as f64 * profile.omega(theta).0;
        assert!(w >= w_lo - 1e-9 && w <= w_hi + 1e-9);
    }
    let len = (w_hi - w_lo) / m as f64;
    let mut raw = Vec::with_capacity(2 * copies as usize);
    for k in 0..copies {
        let base = root_step * k as f64;
        raw.push((w_lo / m as f64 + base, len)); // s = +
        raw.push((-w_hi / m as f64 + base, len)); // s = -
    }
    BandSet::from_raw(raw)
}
