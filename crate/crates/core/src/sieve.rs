//! Even/odd sieving: the square of a shift-coin walk U = SC leaves the even
//! and odd sublattices invariant and acts on each as a split-step walk,
//!     U^2 = W (+) W~,
//! with coins read off the original sequence at interleaved cells:
//!     C1(n) = C(2n+1),  C2(n) = C(2n),  C~1(n) = C(2n+2),  C~2(n) = C(2n+1).
//! Electrified version (field n/m, half field on the left):
//!     U_{Phi/2}^2 = (e^{-i Phi/2} Ftilde_Phi W) (+) (e^{+i Phi/2} Ftilde_Phi W~).
//! Both identities are verified here as exact matrix identities on rings.

use crate::banded::{build_matrix, Window};
use crate::coin::{CoinSequence, SU2Coin, UnitaryCoin};
use crate::error::{Error, Result};
use crate::field::RationalField;
use crate::linalg::max_entry_diff;
use crate::walk::{Layer, WalkSpec};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// Explicit permutation between full-lattice flat indices and the
/// (even block, odd block) layout: even-block cell n = full cell 2n,
/// odd-block cell n = full cell 2n+1, spins untouched.
#[derive(Debug, Clone)]
pub struct ParityReindex {
    cells: usize,
}

impl ParityReindex {
    /// `cells` is the full-lattice cell count (must be even).
    pub fn new(cells: usize) -> Result<Self> {
        if cells == 0 || !cells.is_multiple_of(2) {
            return Err(Error::IncompatibleRing { cells, period: 2 });
        }
        Ok(ParityReindex { cells })
    }

    pub fn dim(&self) -> usize {
        2 * self.cells
    }

    /// Block-layout index (even block first) -> full-lattice flat index.
    pub fn block_to_full(&self, block_index: usize) -> usize {
        let half_dim = self.cells; // = 2 * (cells/2)
        let (block, idx) = if block_index < half_dim {
            (0, block_index)
        } else {
            (1, block_index - half_dim)
        };
        let cell = idx / 2;
        let spin = idx % 2;
        2 * (2 * cell + block) + spin
    }

    /// Full-lattice flat index -> block-layout index.
    pub fn full_to_block(&self, full_index: usize) -> usize {
        let cell = full_index / 2;
        let spin = full_index % 2;
        let half_dim = self.cells;
        if cell.is_multiple_of(2) {
            2 * (cell / 2) + spin
        } else {
            half_dim + 2 * ((cell - 1) / 2) + spin
        }
    }

    /// Permutation matrix P with (P x)_block = x_full: P[block, full] = 1.
    pub fn matrix(&self) -> DMatrix<C64> {
        let dim = self.dim();
        let mut p = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
        for full in 0..dim {
            p[(self.full_to_block(full), full)] = C64::new(1.0, 0.0);
        }
        p
    }
}

/// The four coin sequences of the sieving identity, as rules on the line.
pub struct SievedCoins {
    /// (C1, C2) of the even-sublattice split-step walk.
    pub even: (CoinSequence, CoinSequence),
    /// (C~1, C~2) of the odd-sublattice split-step walk.
    pub odd: (CoinSequence, CoinSequence),
}

pub fn sieve_coins(coins: &CoinSequence) -> SievedCoins {
    SievedCoins {
        even: (coins.compose_index(2, 1), coins.compose_index(2, 0)),
        odd: (coins.compose_index(2, 2), coins.compose_index(2, 1)),
    }
}

fn ring_coin_table(coins: &CoinSequence, cells: usize) -> Vec<UnitaryCoin> {
    (0..cells as i64).map(|q| coins.coin_at(q)).collect()
}

/// Max entrywise defect of U^2 = W (+) W~ on a ring of `cells` cells
/// (cells even). Coins are read modulo the ring size.
pub fn verify_sieving(coins: &CoinSequence, cells: usize) -> Result<f64> {
    let reindex = ParityReindex::new(cells)?;
    let table = ring_coin_table(coins, cells);
    let at = |q: usize| table[q % cells];

    let u = WalkSpec::shift_coin(CoinSequence::periodic(table.clone()));
    let um = build_matrix(&u, Window::ring(cells))?.to_dense();
    let u2 = &um * &um;

    let half = cells / 2;
    let mk = |c1: Vec<UnitaryCoin>, c2: Vec<UnitaryCoin>| -> Result<DMatrix<C64>> {
        let w = WalkSpec::split_step(CoinSequence::periodic(c1), CoinSequence::periodic(c2));
        Ok(build_matrix(&w, Window::ring(half))?.to_dense())
    };
    let w_even = mk(
        (0..half).map(|n| at(2 * n + 1)).collect(),
        (0..half).map(|n| at(2 * n)).collect(),
    )?;
    let w_odd = mk(
        (0..half).map(|n| at(2 * n + 2)).collect(),
        (0..half).map(|n| at(2 * n + 1)).collect(),
    )?;

    let dim = 2 * cells;
    let mut direct_sum = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    direct_sum.view_mut((0, 0), (cells, cells)).copy_from(&w_even);
    direct_sum.view_mut((cells, cells), (cells, cells)).copy_from(&w_odd);

    let p = reindex.matrix();
    let conjugated = &p * u2 * p.transpose();
    Ok(max_entry_diff(&conjugated, &direct_sum))
}

/// Max entrywise defect of the electric sieving identity
///     U_{Phi/2}^2 = (e^{-i Phi/2} W_Phi) (+) (e^{+i Phi/2} W_Phi)
/// for a translation-invariant coin, on a ring of `cells` cells (a multiple
/// of 2m).
pub fn electric_sieve_check(coin: SU2Coin, field: RationalField, cells: usize) -> Result<f64> {
    let m = field.den();
    if cells == 0 || !cells.is_multiple_of(2) || (cells as i64) % (2 * m) != 0 {
        return Err(Error::IncompatibleRing { cells, period: (2 * m) as u64 });
    }
    let reindex = ParityReindex::new(cells)?;

    let half_field = field.half();
    let u_half = WalkSpec::electric_shift_coin(coin, half_field);
    let um = build_matrix(&u_half, Window::ring(cells))?.to_dense();
    let u2 = &um * &um;

    let half = cells / 2;
    let w_phi = WalkSpec::electric_split_step(coin, field);
    let wm = build_matrix(&w_phi, Window::ring(half))?.to_dense();

    // e^{-i Phi/2} on the even block, e^{+i Phi/2} on the odd block
    let phase = C64::from_polar(1.0, std::f64::consts::PI * field.num() as f64 / m as f64);
    let dim = 2 * cells;
    let mut direct_sum = DMatrix::from_element(dim, dim, C64::new(0.0, 0.0));
    direct_sum
        .view_mut((0, 0), (cells, cells))
        .copy_from(&(wm.clone() * phase.conj()));
    direct_sum
        .view_mut((cells, cells), (cells, cells))
        .copy_from(&(wm * phase));

    let p = reindex.matrix();
    let conjugated = &p * u2 * p.transpose();
    Ok(max_entry_diff(&conjugated, &direct_sum))
}

/// Default ring size for the electric identity: lcm(2m, 4).
pub fn default_electric_ring(field: RationalField) -> usize {
    num_integer::lcm(2 * field.den(), 4) as usize
}

/// The sieving phase bookkeeping e^{+-i m Phi/2} = (-1)^n, as an exact
/// statement about rational multiples of 2 pi.
pub fn half_phase_sign(field: RationalField) -> f64 {
    let total = field.half().frac() * field.den(); // (m * Phi/2) / (2 pi)
    assert!((total * 2).is_integer());
    if total.is_integer() {
        1.0
    } else {
        -1.0
    }
}

/// Spec of e^{-+ i Phi/2} W_Phi as explicit layers, for callers assembling
/// the decomposition themselves.
pub fn phased_electric_split_step(coin: SU2Coin, field: RationalField, sign: f64) -> WalkSpec {
    let mut spec = WalkSpec::electric_split_step(coin, field);
    let phi_half = 0.5 * field.phi();
    spec.push_layer(Layer::GlobalPhase(C64::from_polar(1.0, sign * phi_half)));
    spec
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Spin;
    use rand::{Rng, SeedableRng};

    fn random_unitary_coin(rng: &mut impl Rng) -> UnitaryCoin {
        // phase times a determinant-1 coin covers all of U(2)
        let su2 = SU2Coin::new(
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        )
        .unwrap();
        let phase = C64::from_polar(1.0, rng.gen::<f64>() * std::f64::consts::TAU);
        UnitaryCoin::from_matrix(su2.matrix().scale(phase)).unwrap()
    }

    #[test]
    fn parity_reindex_roundtrip() {
        let r = ParityReindex::new(10).unwrap();
        for i in 0..r.dim() {
            assert_eq!(r.full_to_block(r.block_to_full(i)), i);
            assert_eq!(r.block_to_full(r.full_to_block(i)), i);
        }
        // delta_0^+ is the first even-block vector, delta_1^+ the first odd
        assert_eq!(r.full_to_block(0), 0);
        assert_eq!(r.full_to_block(2), 10); // cell 1, spin + -> odd block
        assert!(ParityReindex::new(7).is_err());
    }

    #[test]
    fn sieved_coins_constant_and_periodic() {
        let c = UnitaryCoin::from(SU2Coin::hadamard());
        let s = sieve_coins(&CoinSequence::constant(c));
        assert_eq!(s.even.0.coin_at(3), c);
        assert_eq!(s.odd.1.coin_at(-2), c);

        // period 2: C(2n) = A, C(2n+1) = B
        let a = c;
        let b = UnitaryCoin::identity();
        let seq = CoinSequence::periodic(vec![a, b]);
        let s = sieve_coins(&seq);
        for n in -3..3 {
            assert_eq!(s.even.0.coin_at(n), b); // C1 = C(2n+1)
            assert_eq!(s.even.1.coin_at(n), a); // C2 = C(2n)
            assert_eq!(s.odd.0.coin_at(n), a); // C~1 = C(2n+2)
            assert_eq!(s.odd.1.coin_at(n), b); // C~2 = C(2n+1)
        }
    }

    #[test]
    fn identity_coin_sieves_exactly() {
        let seq = CoinSequence::constant(UnitaryCoin::identity());
        let defect = verify_sieving(&seq, 8).unwrap();
        assert_eq!(defect, 0.0);
    }

    #[test]
    fn constant_hadamard_sieves() {
        let seq = CoinSequence::constant(SU2Coin::hadamard().into());
        let defect = verify_sieving(&seq, 8).unwrap();
        assert!(defect <= 1e-13, "defect {defect:.3e}");
    }

    #[test]
    fn random_position_dependent_coins_sieve() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..10 {
            let cells = 2 * rng.gen_range(2..9);
            let coins: Vec<UnitaryCoin> =
                (0..cells).map(|_| random_unitary_coin(&mut rng)).collect();
            let defect = verify_sieving(&CoinSequence::periodic(coins), cells).unwrap();
            assert!(defect <= 1e-13, "cells={cells}: defect {defect:.3e}");
        }
    }

    #[test]
    fn cross_parity_entries_of_u_squared_vanish() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        let cells = 12usize;
        let coins: Vec<UnitaryCoin> = (0..cells).map(|_| random_unitary_coin(&mut rng)).collect();
        let u = WalkSpec::shift_coin(CoinSequence::periodic(coins));
        let um = build_matrix(&u, Window::ring(cells)).unwrap().to_dense();
        let u2 = &um * &um;
        for row_cell in 0..cells {
            for col_cell in 0..cells {
                if (row_cell + col_cell) % 2 == 1 {
                    for s in 0..2 {
                        for t in 0..2 {
                            let v = u2[(2 * row_cell + s, 2 * col_cell + t)];
                            assert!(v.norm() <= 1e-15, "parity leak at ({row_cell},{col_cell})");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn electric_sieving_zero_field_reduces_to_plain() {
        let field = RationalField::plain(0, 1).unwrap();
        let d = electric_sieve_check(SU2Coin::hadamard(), field, 4).unwrap();
        assert!(d <= 1e-13);
    }

    #[test]
    fn electric_sieving_examples() {
        // odd-m branch
        let d = electric_sieve_check(
            SU2Coin::hadamard(),
            RationalField::plain(1, 3).unwrap(),
            12,
        )
        .unwrap();
        assert!(d <= 1e-13, "n=1 m=3: {d:.3e}");
        // even-m branch
        let d = electric_sieve_check(
            SU2Coin::hadamard(),
            RationalField::plain(1, 2).unwrap(),
            8,
        )
        .unwrap();
        assert!(d <= 1e-13, "n=1 m=2: {d:.3e}");
        // n even (m odd forced)
        let d = electric_sieve_check(
            SU2Coin::hadamard(),
            RationalField::plain(2, 5).unwrap(),
            20,
        )
        .unwrap();
        assert!(d <= 1e-13, "n=2 m=5: {d:.3e}");
    }

    #[test]
    fn electric_sieving_rejects_bad_rings() {
        let field = RationalField::plain(1, 3).unwrap();
        assert!(matches!(
            electric_sieve_check(SU2Coin::hadamard(), field, 8),
            Err(Error::IncompatibleRing { .. })
        ));
    }

    #[test]
    fn half_phase_sign_matches_parity() {
        assert_eq!(half_phase_sign(RationalField::plain(1, 5).unwrap()), -1.0);
        assert_eq!(half_phase_sign(RationalField::plain(2, 5).unwrap()), 1.0);
        assert_eq!(half_phase_sign(RationalField::plain(1, 2).unwrap()), -1.0);
        assert_eq!(half_phase_sign(RationalField::plain(0, 1).unwrap()), 1.0);
    }

    #[test]
    fn phased_spec_applies_global_phase() {
        let field = RationalField::tilde(1, 3).unwrap();
        let spec = phased_electric_split_step(SU2Coin::hadamard(), field, -1.0);
        let plain = WalkSpec::electric_split_step(SU2Coin::hadamard(), field);
        let psi = crate::state::WaveFunction::basis(0, Spin::Plus);
        let a = spec.step(&psi);
        let b = plain.step(&psi);
        let phase = C64::from_polar(1.0, -0.5 * field.phi());
        assert!(a.distance_to_scaled(&b, phase) < 1e-14);
    }
}
