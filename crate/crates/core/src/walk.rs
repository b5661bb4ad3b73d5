//! Walk layers and their position-space action.
//!
//! A `WalkSpec` is an ordered list of layers, stored in application order
//! (first entry acts first). The standard factories:
//!   shift-coin   U  = S . C           -> [Coin(C), FullShift]
//!   split-step   W  = S+ C1 S- C2     -> [Coin(C2), ShiftMinus, Coin(C1), ShiftPlus]
//!   electric     U_Phi = F_Phi . U,  W_Phi = Ftilde_Phi . W  (field applied last)

use crate::coin::{CoinSequence, SU2Coin, UnitaryCoin};
use crate::field::{FieldVariant, RationalField, RootTable};
use crate::state::{Spin, WaveFunction};
use num_complex::Complex64 as C64;

#[derive(Debug, Clone, PartialEq)]
pub enum Layer {
    ShiftPlus,
    ShiftMinus,
    FullShift,
    Coin(CoinSequence),
    Field(RationalField),
    GlobalPhase(C64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct WalkSpec {
    layers: Vec<Layer>,
}

/// Which of the two standard walk families a spec was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkKind {
    /// U = S C
    ShiftCoin,
    /// W = S+ C1 S- C2
    SplitStep,
}

impl WalkSpec {
    /// Layers in application order.
    pub fn from_layers(layers: Vec<Layer>) -> Self {
        assert!(!layers.is_empty());
        WalkSpec { layers }
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// U = S C.
    pub fn shift_coin(coins: CoinSequence) -> Self {
        WalkSpec { layers: vec![Layer::Coin(coins), Layer::FullShift] }
    }

    /// W = S+ C1 S- C2.
    pub fn split_step(c1: CoinSequence, c2: CoinSequence) -> Self {
        WalkSpec {
            layers: vec![
                Layer::Coin(c2),
                Layer::ShiftMinus,
                Layer::Coin(c1),
                Layer::ShiftPlus,
            ],
        }
    }

    /// U_Phi = F_Phi U with a translation-invariant coin.
    pub fn electric_shift_coin(coin: SU2Coin, field: RationalField) -> Self {
        let mut w = Self::shift_coin(CoinSequence::constant(coin.into()));
        w.layers.push(Layer::Field(field.with_variant(FieldVariant::Plain)));
        w
    }

    /// W_Phi = Ftilde_Phi S+ C S- C with a translation-invariant coin.
    pub fn electric_split_step(coin: SU2Coin, field: RationalField) -> Self {
        let c: UnitaryCoin = coin.into();
        let mut w = Self::split_step(CoinSequence::constant(c), CoinSequence::constant(c));
        w.layers.push(Layer::Field(field.with_variant(FieldVariant::Tilde)));
        w
    }

    /// The electric walk of the given kind (variant implied by the kind).
    pub fn electric(kind: WalkKind, coin: SU2Coin, field: RationalField) -> Self {
        match kind {
            WalkKind::ShiftCoin => Self::electric_shift_coin(coin, field),
            WalkKind::SplitStep => Self::electric_split_step(coin, field),
        }
    }

    pub fn push_layer(&mut self, layer: Layer) {
        self.layers.push(layer);
    }

    /// Number of shift layers (each grows the window by one cell on its side).
    pub fn shift_layer_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| match l {
                Layer::ShiftPlus | Layer::ShiftMinus => 1,
                Layer::FullShift => 2,
                _ => 0,
            })
            .sum()
    }

    /// Least common multiple of the spatial periods of all field layers.
    pub fn field_period(&self) -> i64 {
        let mut p: i64 = 1;
        for l in &self.layers {
            if let Layer::Field(f) = l {
                p = num_integer::lcm(p, f.spatial_period());
            }
        }
        p
    }

    /// The split-step coin pair (C1, C2) when the spec is exactly
    /// [Coin(C2), ShiftMinus, Coin(C1), ShiftPlus] followed by optional
    /// field / global-phase layers.
    fn split_step_core(&self) -> Option<(&CoinSequence, &CoinSequence, &[Layer])> {
        match self.layers.as_slice() {
            [Layer::Coin(c2), Layer::ShiftMinus, Layer::Coin(c1), Layer::ShiftPlus, rest @ ..]
                if rest.iter().all(|l| matches!(l, Layer::Field(_) | Layer::GlobalPhase(_))) =>
            {
                Some((c1, c2, rest))
            }
            _ => None,
        }
    }

    /// One time step. Split-step specs use the fused local kernel with the
    /// trailing diagonal layers applied in place; everything else applies
    /// layers in order (the two paths agree to ~1e-15 and are cross-checked
    /// in tests).
    pub fn step(&self, state: &WaveFunction) -> WaveFunction {
        let mut out = WaveFunction::scratch();
        self.step_into(state, &mut out);
        out
    }

    /// As `step`, but reuses `out`'s allocation. Evolution loops ping-pong
    /// two buffers to avoid churning the allocator with a growing window.
    pub fn step_into(&self, state: &WaveFunction, out: &mut WaveFunction) {
        match self.split_step_core() {
            Some((c1, c2, rest)) => {
                // the common electric case folds the field into the kernel pass
                let folded_field = match rest {
                    [Layer::Field(f)] => Some(f),
                    _ => None,
                };
                split_step_kernel(state, c1, c2, folded_field, out);
                if folded_field.is_none() {
                    for l in rest {
                        match l {
                            Layer::Field(f) => {
                                let roots = f.root_table();
                                apply_field_in_place(out, f, &roots);
                            }
                            Layer::GlobalPhase(z) => out.scale(*z),
                            _ => *out = apply_layer(out, l),
                        }
                    }
                }
            }
            None => *out = self.step_layered(state),
        }
    }

    /// Layer-by-layer application, the reference path.
    pub fn step_layered(&self, state: &WaveFunction) -> WaveFunction {
        let mut psi = state.clone();
        for l in &self.layers {
            psi = apply_layer(&psi, l);
        }
        psi
    }

    /// Evolve t steps, trimming exact zeros at the window edges.
    pub fn evolve(&self, state: &WaveFunction, t: usize) -> WaveFunction {
        let mut psi = state.clone();
        let mut scratch = WaveFunction::scratch();
        for _ in 0..t {
            self.step_into(&psi, &mut scratch);
            std::mem::swap(&mut psi, &mut scratch);
            psi.trim_flush(crate::state::AMPLITUDE_FLOOR);
        }
        psi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    Plus,
    Minus,
    Full,
}

/// State-dependent shifts: plus moves the + component one cell right, minus
/// moves the - component one cell left, full does both.
pub fn apply_shift(state: &WaveFunction, dir: ShiftDirection) -> WaveFunction {
    match dir {
        ShiftDirection::Plus => {
            let (lo, hi) = state.cell_range();
            let mut amps = vec![[C64::new(0.0, 0.0); 2]; (hi - lo + 2) as usize];
            for n in lo..=hi {
                amps[(n + 1 - lo) as usize][0] = state.amp(n, Spin::Plus);
                amps[(n - lo) as usize][1] += state.amp(n, Spin::Minus);
            }
            WaveFunction::new(lo, amps)
        }
        ShiftDirection::Minus => {
            let (lo, hi) = state.cell_range();
            let mut amps = vec![[C64::new(0.0, 0.0); 2]; (hi - lo + 2) as usize];
            for n in lo..=hi {
                amps[(n - (lo - 1)) as usize][0] += state.amp(n, Spin::Plus);
                amps[(n - 1 - (lo - 1)) as usize][1] = state.amp(n, Spin::Minus);
            }
            WaveFunction::new(lo - 1, amps)
        }
        ShiftDirection::Full => {
            let plus = apply_shift(state, ShiftDirection::Plus);
            apply_shift(&plus, ShiftDirection::Minus)
        }
    }
}

/// Cellwise coin multiplication.
pub fn apply_coin(state: &WaveFunction, coins: &CoinSequence) -> WaveFunction {
    let mut out = state.clone();
    let off = out.offset();
    for (i, a) in out.amps_mut().iter_mut().enumerate() {
        let m = coins.coin_at(off + i as i64).matrix();
        *a = m.apply(*a);
    }
    out
}

/// Diagonal field multiplication.
pub fn apply_field(state: &WaveFunction, field: &RationalField) -> WaveFunction {
    let roots = field.root_table();
    apply_field_with_table(state, field, &roots)
}

pub fn apply_field_with_table(
    state: &WaveFunction,
    field: &RationalField,
    roots: &RootTable,
) -> WaveFunction {
    let mut out = state.clone();
    apply_field_in_place(&mut out, field, roots);
    out
}

fn apply_field_in_place(state: &mut WaveFunction, field: &RationalField, roots: &RootTable) {
    debug_assert_eq!(roots.order(), field.den());
    let cycle = field.site_phase_cycle();
    let m = cycle.len();
    let mut r = state.offset().rem_euclid(m as i64) as usize;
    for a in state.amps_mut().iter_mut() {
        let (p, q) = cycle[r];
        a[0] *= p;
        a[1] *= q;
        r += 1;
        if r == m {
            r = 0;
        }
    }
}

pub fn apply_layer(state: &WaveFunction, layer: &Layer) -> WaveFunction {
    match layer {
        Layer::ShiftPlus => apply_shift(state, ShiftDirection::Plus),
        Layer::ShiftMinus => apply_shift(state, ShiftDirection::Minus),
        Layer::FullShift => apply_shift(state, ShiftDirection::Full),
        Layer::Coin(c) => apply_coin(state, c),
        Layer::Field(f) => apply_field(state, f),
        Layer::GlobalPhase(z) => {
            let mut out = state.clone();
            out.scale(*z);
            out
        }
    }
}

/// Fused split-step action, optionally composed with a trailing diagonal
/// field, written into `out`. With phi(n) = C2(n) psi(n):
///   out+(k) = a1(k-1) phi+(k-1) + b1(k-1) phi-(k)
///   out-(k) = c1(k)   phi+(k)   + d1(k)   phi-(k+1)
/// Single pass; phi rolls through a three-cell window.
fn split_step_kernel(
    state: &WaveFunction,
    c1: &CoinSequence,
    c2: &CoinSequence,
    field: Option<&RationalField>,
    out: &mut WaveFunction,
) {
    let (lo, hi) = state.cell_range();
    let zero2 = [C64::new(0.0, 0.0); 2];
    let one = C64::new(1.0, 0.0);
    let cycle = match field {
        Some(f) => f.site_phase_cycle(),
        None => vec![(one, one)],
    };
    let m = cycle.len();
    let out_lo = lo - 1;
    let mut r = out_lo.rem_euclid(m as i64) as usize;
    // constant sequences dominate in practice; run the branch-light loop
    if let (Some(k1), Some(k2)) = (c1.constant_coin(), c2.constant_coin()) {
        let (m1, m2) = (k1.matrix(), k2.matrix());
        let (a1, b1, c1e, d1) = (m1.0[0][0], m1.0[0][1], m1.0[1][0], m1.0[1][1]);
        let src = state.amps();
        let len = src.len();
        let amps = out.reset(out_lo);
        amps.reserve(len + 2);
        let mut phi_prev = zero2;
        let mut phi_cur = zero2;
        // runs two cells past the input window on purpose
        #[allow(clippy::needless_range_loop)]
        for i in 0..len + 2 {
            let phi_next = if i < len { m2.apply(src[i]) } else { zero2 };
            let (p, q) = cycle[r];
            amps.push([
                p * (a1 * phi_prev[0] + b1 * phi_cur[1]),
                q * (c1e * phi_cur[0] + d1 * phi_next[1]),
            ]);
            phi_prev = phi_cur;
            phi_cur = phi_next;
            r += 1;
            if r == m {
                r = 0;
            }
        }
        return;
    }
    let phi_at = |n: i64| -> [C64; 2] {
        if n < lo || n > hi {
            zero2
        } else {
            let mat = c2.coin_at(n).matrix();
            mat.apply([state.amp(n, Spin::Plus), state.amp(n, Spin::Minus)])
        }
    };
    let out_hi = hi + 1;
    let mut phi_prev = phi_at(out_lo - 1);
    let mut phi_cur = phi_at(out_lo);
    let mut m1_prev = c1.coin_at(out_lo - 1).matrix();
    let mut amps = std::mem::take(out.reset(out_lo));
    amps.reserve((out_hi - out_lo + 1) as usize);
    for k in out_lo..=out_hi {
        let phi_next = phi_at(k + 1);
        let m1 = c1.coin_at(k).matrix();
        let (p, q) = cycle[r];
        amps.push([
            p * (m1_prev.0[0][0] * phi_prev[0] + m1_prev.0[0][1] * phi_cur[1]),
            q * (m1.0[1][0] * phi_cur[0] + m1.0[1][1] * phi_next[1]),
        ]);
        phi_prev = phi_cur;
        phi_cur = phi_next;
        m1_prev = m1;
        r += 1;
        if r == m {
            r = 0;
        }
    }
    *out.reset(out_lo) = amps;
}
