//! Generalized extended CMV matrices and their split-step correspondence.
//!
//! A Verblunsky pair (alpha, rho) on the complex 3-sphere defines the block
//!     Theta(alpha, rho) = [[conj(alpha), rho], [conj(rho), -alpha]],
//! with det = -1. L places Theta(alpha_{2n}, rho_{2n}) on scalar sites
//! {2n, 2n+1}, M places Theta(alpha_{2n+1}, rho_{2n+1}) on {2n+1, 2n+2};
//! E = L M is the five-diagonal GECMV operator. Grouping scalar sites in
//! cells via delta_{2n-1} -> delta_n^+, delta_{2n} -> delta_n^- turns E into
//! the split-step walk S+ C1 S- C2 with
//!     C1(n) = sigma_1 Theta(alpha_{2n}, rho_{2n}),
//!     C2(n) = sigma_1 Theta(alpha_{2n-1}, rho_{2n-1}).
//! Electrified walks do not enter this bridge: their coin factors leave the
//! 3-sphere, and spec-to-pairs conversion rejects field layers.

use crate::banded::{BandedUnitary, Window};
use crate::coin::{CoinSequence, UnitaryCoin};
use crate::error::{Error, Result};
use crate::linalg::{max_entry_diff, Mat2};
use crate::walk::{Layer, WalkSpec};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

const TOL: f64 = 1e-12;

/// (alpha, rho) with |alpha|^2 + |rho|^2 = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerblunskyPair {
    alpha: C64,
    rho: C64,
}

impl VerblunskyPair {
    pub fn new(alpha: C64, rho: C64) -> Result<Self> {
        let n = alpha.norm_sqr() + rho.norm_sqr();
        if (n - 1.0).abs() > TOL {
            return Err(Error::NotNormalized(format!(
                "|alpha|^2 + |rho|^2 = {n} is not 1"
            )));
        }
        Ok(VerblunskyPair { alpha, rho })
    }

    /// Normalize onto the 3-sphere (rejects near-zero input).
    pub fn normalized(alpha: C64, rho: C64) -> Result<Self> {
        let n2 = alpha.norm_sqr() + rho.norm_sqr();
        if n2 < 1e-14 {
            return Err(Error::NotNormalized("zero Verblunsky pair".into()));
        }
        let n = n2.sqrt();
        Ok(VerblunskyPair { alpha: alpha / n, rho: rho / n })
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn rho(&self) -> C64 {
        self.rho
    }

    /// The pair (0, 1), whose Theta block is sigma_1.
    pub fn shift_pair() -> Self {
        VerblunskyPair { alpha: C64::new(0.0, 0.0), rho: C64::new(1.0, 0.0) }
    }
}

/// Theta(alpha, rho) = [[conj(alpha), rho], [conj(rho), -alpha]]; unitary
/// with determinant -1.
pub fn theta_matrix(pair: VerblunskyPair) -> Mat2 {
    Mat2::new(
        pair.alpha.conj(),
        pair.rho,
        pair.rho.conj(),
        -pair.alpha,
    )
}

/// Rule assigning a Verblunsky pair to every scalar site.
#[derive(Debug, Clone)]
pub enum PairSequence {
    Constant(VerblunskyPair),
    Periodic(Vec<VerblunskyPair>),
}

impl PairSequence {
    pub fn pair_at(&self, j: i64) -> VerblunskyPair {
        match self {
            PairSequence::Constant(p) => *p,
            PairSequence::Periodic(v) => {
                let l = v.len() as i64;
                v[j.rem_euclid(l) as usize]
            }
        }
    }
}

/// L and M on a scalar ring of `sites` sites (even), as banded unitaries
/// over scalar windows.
pub fn build_lm(pairs: &PairSequence, sites: usize) -> Result<(BandedUnitary, BandedUnitary)> {
    let (l, m) = build_lm_dense(pairs, sites)?;
    let window = Window::ring(sites);
    Ok((
        BandedUnitary::from_dense(window, &l),
        BandedUnitary::from_dense(window, &m),
    ))
}

fn build_lm_dense(pairs: &PairSequence, sites: usize) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
    if sites == 0 || !sites.is_multiple_of(2) {
        return Err(Error::IncompatibleRing { cells: sites, period: 2 });
    }
    let s = sites as i64;
    let mut l = DMatrix::from_element(sites, sites, C64::new(0.0, 0.0));
    let mut m = DMatrix::from_element(sites, sites, C64::new(0.0, 0.0));
    for n in 0..(s / 2) {
        // L block on {2n, 2n+1}
        let j = 2 * n;
        let th = theta_matrix(pairs.pair_at(j));
        let idx = [j.rem_euclid(s) as usize, (j + 1).rem_euclid(s) as usize];
        for r in 0..2 {
            for c in 0..2 {
                l[(idx[r], idx[c])] += th.0[r][c];
            }
        }
        // M block on {2n+1, 2n+2}
        let j = 2 * n + 1;
        let th = theta_matrix(pairs.pair_at(j));
        let idx = [j.rem_euclid(s) as usize, (j + 1).rem_euclid(s) as usize];
        for r in 0..2 {
            for c in 0..2 {
                m[(idx[r], idx[c])] += th.0[r][c];
            }
        }
    }
    Ok((l, m))
}

/// E = L M on a scalar ring, packed five-diagonal.
pub fn gecmv_operator(pairs: &PairSequence, sites: usize) -> Result<BandedUnitary> {
    let (l, m) = build_lm_dense(pairs, sites)?;
    Ok(BandedUnitary::from_dense(Window::ring(sites), &(l * m)))
}

/// A generalized extended CMV operator: the Verblunsky rule together with
/// its five-diagonal realization on a scalar ring.
#[derive(Debug, Clone)]
pub struct GecmvOperator {
    pairs: PairSequence,
    matrix: BandedUnitary,
}

impl GecmvOperator {
    pub fn new(pairs: PairSequence, sites: usize) -> Result<Self> {
        let matrix = gecmv_operator(&pairs, sites)?;
        Ok(GecmvOperator { pairs, matrix })
    }

    pub fn pairs(&self) -> &PairSequence {
        &self.pairs
    }

    pub fn matrix(&self) -> &BandedUnitary {
        &self.matrix
    }

    /// <delta_0, E delta_0> = -conj(alpha_0) alpha_{-1}.
    pub fn boxed_entry(&self) -> C64 {
        self.matrix.entry(0, 0)
    }

    /// The split-step walk this operator becomes under the base
    /// identification.
    pub fn to_walk(&self) -> WalkSpec {
        cmv_to_walk(&self.pairs)
    }
}

/// The five-diagonal stencil of E obtained by expanding L M blockwise; the
/// independent oracle for `gecmv_operator`. Diagonal entry at an even site
/// 2n is -alpha_{2n-1} conj(alpha_{2n}) (so <delta_0, E delta_0> =
/// -conj(alpha_0) alpha_{-1}).
pub fn gecmv_stencil(pairs: &PairSequence, sites: usize) -> Result<DMatrix<C64>> {
    if sites == 0 || !sites.is_multiple_of(2) {
        return Err(Error::IncompatibleRing { cells: sites, period: 2 });
    }
    let s = sites as i64;
    let al = |j: i64| pairs.pair_at(j).alpha();
    let rh = |j: i64| pairs.pair_at(j).rho();
    let mut e = DMatrix::from_element(sites, sites, C64::new(0.0, 0.0));
    let wrap = |j: i64| j.rem_euclid(s) as usize;
    for n in 0..(s / 2) {
        // column 2n (even): E delta_{2n} = rho_{2n-1} rho_{2n-2} d_{2n-2}
        //   - rho_{2n-1} alpha_{2n-2} d_{2n-1} - alpha_{2n-1} conj(alpha_{2n}) d_{2n}
        //   - alpha_{2n-1} conj(rho_{2n}) d_{2n+1}
        let q = 2 * n;
        e[(wrap(q - 2), wrap(q))] += rh(q - 1) * rh(q - 2);
        e[(wrap(q - 1), wrap(q))] += -rh(q - 1) * al(q - 2);
        e[(wrap(q), wrap(q))] += -al(q - 1) * al(q).conj();
        e[(wrap(q + 1), wrap(q))] += -al(q - 1) * rh(q).conj();
        // column 2n+1 (odd): E delta_{2n+1} = conj(alpha_{2n+1}) rho_{2n} d_{2n}
        //   - conj(alpha_{2n+1}) alpha_{2n} d_{2n+1} + conj(rho_{2n+1}) conj(alpha_{2n+2}) d_{2n+2}
        //   + conj(rho_{2n+1}) conj(rho_{2n+2}) d_{2n+3}
        let q = 2 * n + 1;
        e[(wrap(q - 1), wrap(q))] += al(q).conj() * rh(q - 1);
        e[(wrap(q), wrap(q))] += -al(q).conj() * al(q - 1);
        e[(wrap(q + 1), wrap(q))] += rh(q).conj() * al(q + 1).conj();
        e[(wrap(q + 2), wrap(q))] += rh(q).conj() * rh(q + 1).conj();
    }
    Ok(e)
}

/// Split-step walk corresponding to a pair sequence:
/// C1(n) = sigma_1 Theta(alpha_{2n}, rho_{2n}),
/// C2(n) = sigma_1 Theta(alpha_{2n-1}, rho_{2n-1}).
pub fn cmv_to_walk(pairs: &PairSequence) -> WalkSpec {
    let coin = |j: i64| {
        UnitaryCoin::from_matrix(Mat2::sigma1().mul(&theta_matrix(pairs.pair_at(j))))
            .expect("sigma_1 Theta is unitary")
    };
    match pairs {
        PairSequence::Constant(_) => WalkSpec::split_step(
            CoinSequence::constant(coin(0)),
            CoinSequence::constant(coin(-1)),
        ),
        PairSequence::Periodic(v) => {
            // cell n uses pairs at scalar sites 2n and 2n-1; a period that
            // covers both sequences is len(v) cells
            let l = v.len() as i64;
            let c1 = (0..l).map(|n| coin(2 * n)).collect();
            let c2 = (0..l).map(|n| coin(2 * n - 1)).collect();
            WalkSpec::split_step(CoinSequence::periodic(c1), CoinSequence::periodic(c2))
        }
    }
}

/// Base identification between scalar sites and walk cells:
/// site 2n-1 -> (cell n, +), site 2n -> (cell n, -). On a ring of `sites`
/// scalar sites this is an explicit bijection onto 2*(sites/2) flat walk
/// indices.
pub fn site_to_cell_index(site: usize, sites: usize) -> usize {
    let cells = sites / 2;
    if site % 2 == 1 {
        let n = site.div_ceil(2) % cells;
        2 * n // (n, +)
    } else {
        let n = (site / 2) % cells;
        2 * n + 1 // (n, -)
    }
}

/// Permutation matrix B with B[cell_index, site] = 1.
pub fn base_identification(sites: usize) -> DMatrix<C64> {
    let mut b = DMatrix::from_element(sites, sites, C64::new(0.0, 0.0));
    for site in 0..sites {
        b[(site_to_cell_index(site, sites), site)] = C64::new(1.0, 0.0);
    }
    b
}

/// Max entrywise defect between the GECMV matrix and the split-step walk
/// matrix under the base identification, on a ring of `sites` scalar sites.
pub fn correspondence_defect(pairs: &PairSequence, sites: usize) -> Result<f64> {
    let e = gecmv_operator(pairs, sites)?.to_dense();
    let cells = sites / 2;
    let walk = cmv_to_walk(pairs);
    let w = crate::banded::build_matrix(&walk, Window::ring(cells))?.to_dense();
    let b = base_identification(sites);
    let lifted = &b * e * b.transpose();
    Ok(max_entry_diff(&lifted, &w))
}

/// Solve C = sigma_1 Theta(alpha, rho) for (alpha, rho). A unitary coin is
/// representable exactly when it has the determinant-1 form
/// [[a, b], [-conj(b), conj(a)]]; then (alpha, rho) = (-b, conj(a)).
pub fn coin_to_pair(coin: UnitaryCoin) -> Result<VerblunskyPair> {
    let m = coin.matrix();
    // sigma_1 C = Theta candidate
    let th = Mat2::sigma1().mul(&m);
    // Theta(alpha, rho) = [[conj(alpha), rho], [conj(rho), -alpha]]
    let alpha = -th.0[1][1];
    let rho = th.0[0][1];
    let pair = VerblunskyPair::new(alpha, rho).map_err(|_| Error::NotRepresentable {
        defect: (alpha.norm_sqr() + rho.norm_sqr() - 1.0).abs(),
    })?;
    let defect = Mat2::sigma1().mul(&theta_matrix(pair)).max_diff(&m);
    if defect > 1e-12 {
        return Err(Error::NotRepresentable { defect });
    }
    Ok(pair)
}

/// Verblunsky data of the two standard walk families with a
/// translation-invariant coin:
///   U = S C: even pairs (0, 1), odd pairs solved from C;
///   W = S+ C S- C: all pairs solved from C.
pub struct WalkVerblunskyData {
    pub shift_coin: PairSequence,
    pub split_step: PairSequence,
}

pub fn walk_to_cmv(coin: crate::coin::SU2Coin) -> Result<WalkVerblunskyData> {
    let pair = coin_to_pair(coin.into())?;
    let shift = VerblunskyPair::shift_pair();
    Ok(WalkVerblunskyData {
        // alternating (0,1) on even sites, (alpha, rho) on odd sites
        shift_coin: PairSequence::Periodic(vec![shift, pair]),
        split_step: PairSequence::Constant(pair),
    })
}

/// Verblunsky data of a WalkSpec with constant coins: even sites carry the
/// C1 pair, odd sites the C2 pair ((0, 1) plays the role of a missing coin).
/// Field and global-phase layers are rejected: electrified walks have no
/// 3-sphere Verblunsky pairs.
pub fn spec_to_cmv(spec: &WalkSpec) -> Result<PairSequence> {
    for layer in spec.layers() {
        if matches!(layer, Layer::Field(_) | Layer::GlobalPhase(_)) {
            return Err(Error::NotRepresentable { defect: f64::NAN });
        }
    }
    let constant = |seq: &CoinSequence| -> Result<UnitaryCoin> {
        seq.constant_coin()
            .ok_or(Error::NotTranslationInvariant("position-dependent coins".into()))
    };
    let (c1, c2) = match spec.layers() {
        [Layer::Coin(c2), Layer::ShiftMinus, Layer::Coin(c1), Layer::ShiftPlus] => {
            (constant(c1)?, constant(c2)?)
        }
        [Layer::Coin(c), Layer::FullShift] => (UnitaryCoin::identity(), constant(c)?),
        _ => return Err(Error::NotRepresentable { defect: f64::NAN }),
    };
    let p_even = coin_to_pair(c1)?;
    let p_odd = coin_to_pair(c2)?;
    Ok(PairSequence::Periodic(vec![p_even, p_odd]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::SU2Coin;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn random_pair(rng: &mut impl Rng) -> VerblunskyPair {
        VerblunskyPair::normalized(
            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
        )
        .unwrap()
    }

    #[test]
    fn theta_special_values() {
        // (0, 1) -> sigma_1, (1, 0) -> sigma_3
        let t = theta_matrix(VerblunskyPair::new(c(0.0, 0.0), c(1.0, 0.0)).unwrap());
        assert!(t.max_diff(&Mat2::sigma1()) < 1e-15);
        let t = theta_matrix(VerblunskyPair::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap());
        assert!(t.max_diff(&Mat2::diag(c(1.0, 0.0), c(-1.0, 0.0))) < 1e-15);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let t = theta_matrix(VerblunskyPair::new(c(s, 0.0), c(s, 0.0)).unwrap());
        assert!(t.unitarity_defect() < 1e-15);
        assert!((t.det() + c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn theta_unitary_det_minus_one_randomized() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..1000 {
            let t = theta_matrix(random_pair(&mut rng));
            assert!(t.unitarity_defect() < 1e-12);
            assert!((t.det() + c(1.0, 0.0)).norm() < 1e-12);
        }
        assert!(VerblunskyPair::new(c(0.9, 0.0), c(0.9, 0.0)).is_err());
    }

    #[test]
    fn shift_pairs_give_two_site_shifts() {
        // all pairs (0,1): L and M are pair-swap permutations and E = LM
        // moves every site two scalar sites along its sublattice — odd sites
        // up, even sites down, which is precisely the full walk shift
        // S = S+S- under the base identification
        let pairs = PairSequence::Constant(VerblunskyPair::shift_pair());
        let e = gecmv_operator(&pairs, 8).unwrap().to_dense();
        for j in 0..8usize {
            let target = if j % 2 == 1 { (j + 2) % 8 } else { (j + 8 - 2) % 8 };
            for r in 0..8usize {
                let expect = if r == target { 1.0 } else { 0.0 };
                assert!((e[(r, j)] - c(expect, 0.0)).norm() < 1e-15, "({r},{j})");
            }
        }
    }

    #[test]
    fn diagonal_pairs_give_diagonal_gecmv() {
        // all pairs (1, 0): L, M diagonal +-1, E diagonal
        let pairs = PairSequence::Constant(VerblunskyPair::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap());
        let (l, m) = build_lm(&pairs, 6).unwrap();
        for mat in [l.to_dense(), m.to_dense(), gecmv_operator(&pairs, 6).unwrap().to_dense()] {
            for r in 0..6 {
                for cc in 0..6 {
                    if r != cc {
                        assert!(mat[(r, cc)].norm() < 1e-15);
                    } else {
                        assert!((mat[(r, cc)].norm() - 1.0).abs() < 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn lm_unitary_and_stencil_matches() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for sites in [8usize, 12, 64] {
            let pairs = PairSequence::Periodic(
                (0..sites).map(|_| random_pair(&mut rng)).collect(),
            );
            let (l, m) = build_lm(&pairs, sites).unwrap();
            assert!(l.unitarity_defect() < 1e-12);
            assert!(m.unitarity_defect() < 1e-12);
            let e = gecmv_operator(&pairs, sites).unwrap();
            assert!(e.unitarity_defect() < 1e-12);
            assert!(e.half_bandwidth() <= 2);
            let stencil = gecmv_stencil(&pairs, sites).unwrap();
            let d = max_entry_diff(&e.to_dense(), &stencil);
            assert!(d <= 1e-14, "sites={sites}: stencil defect {d:.3e}");
        }
    }

    #[test]
    fn boxed_entry() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let pairs = PairSequence::Periodic((0..12).map(|_| random_pair(&mut rng)).collect());
        let op = GecmvOperator::new(pairs.clone(), 12).unwrap();
        let expected = -pairs.pair_at(0).alpha().conj() * pairs.pair_at(-1).alpha();
        assert!((op.boxed_entry() - expected).norm() <= 1e-15);
        assert!(op.matrix().unitarity_defect() < 1e-12);
    }

    #[test]
    fn base_identification_bijection() {
        // scalar site 2n-1 -> (cell n, +), site 2n -> (cell n, -)
        let sites = 12usize;
        assert_eq!(site_to_cell_index(1, sites), 2); // site 1 = 2*1-1 -> (1,+)
        assert_eq!(site_to_cell_index(0, sites), 1); // site 0 = 2*0 -> (0,-)
        assert_eq!(site_to_cell_index(11, sites), 0); // site 11 = 2*6-1 -> (6 mod 6, +)
        // bijection: every cell-flat index hit exactly once
        let mut seen = vec![false; sites];
        for s in 0..sites {
            let i = site_to_cell_index(s, sites);
            assert!(!seen[i], "collision at {i}");
            seen[i] = true;
        }
        // the permutation matrix realizes the same map
        let b = base_identification(sites);
        for s in 0..sites {
            assert_eq!(b[(site_to_cell_index(s, sites), s)], C64::new(1.0, 0.0));
        }
    }

    #[test]
    fn shift_pairs_correspond_to_plain_shift_walk() {
        // all pairs (0,1): C1 = C2 = 1, the walk is the full shift S
        let pairs = PairSequence::Constant(VerblunskyPair::shift_pair());
        let spec = cmv_to_walk(&pairs);
        let d = correspondence_defect(&pairs, 12).unwrap();
        assert!(d < 1e-15);
        // and the coins really are the identity
        let psi = crate::state::WaveFunction::basis(0, crate::state::Spin::Plus);
        let out = spec.step(&psi);
        assert!((out.amp(1, crate::state::Spin::Plus) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn vanishing_even_pairs_give_shift_coin_walk() {
        // alpha_{2n} = 0: the even coins are sigma_1 Theta(0, rho) with
        // |rho| = 1, i.e. diag(rho, conj(rho)) — C1 phases only; with
        // rho = 1 exactly C1 = identity and E is the shift-coin walk U = SC
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        let odd = random_pair(&mut rng);
        let pairs = PairSequence::Periodic(vec![VerblunskyPair::shift_pair(), odd]);
        let defect = correspondence_defect(&pairs, 12).unwrap();
        assert!(defect <= 1e-13);
        // the walk's C1 is the identity
        let spec = cmv_to_walk(&pairs);
        if let Layer::Coin(seq) = &spec.layers()[2] {
            assert_eq!(seq.constant_coin().unwrap(), UnitaryCoin::identity());
        } else {
            panic!("layer 2 of a split-step spec is C1");
        }
    }

    #[test]
    fn correspondence_random_sequences() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(47);
        for sites in [8usize, 12, 24] {
            let pairs =
                PairSequence::Periodic((0..sites).map(|_| random_pair(&mut rng)).collect());
            let d = correspondence_defect(&pairs, sites).unwrap();
            assert!(d <= 1e-13, "sites={sites}: correspondence defect {d:.3e}");
        }
    }

    #[test]
    fn hadamard_pair_and_roundtrip() {
        // solve sigma_1 Theta(alpha, rho) = C_H -> (alpha, rho) = (-1/sqrt2, 1/sqrt2)
        let pair = coin_to_pair(SU2Coin::hadamard().into()).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((pair.alpha() - c(-s, 0.0)).norm() < 1e-15);
        assert!((pair.rho() - c(s, 0.0)).norm() < 1e-15);

        // identity coin -> (0, 1)
        let pair = coin_to_pair(UnitaryCoin::identity()).unwrap();
        assert!((pair.alpha()).norm() < 1e-15);
        assert!((pair.rho() - c(1.0, 0.0)).norm() < 1e-15);

        // round trip on random representable coins
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        for _ in 0..50 {
            let coin = SU2Coin::new(
                c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
            )
            .unwrap();
            let data = walk_to_cmv(coin).unwrap();
            let spec = cmv_to_walk(&data.split_step);
            // reconstructed split-step coins equal the original coin
            for idx in [0usize, 2] {
                if let Layer::Coin(seq) = &spec.layers()[idx] {
                    let d = seq.constant_coin().unwrap().matrix().max_diff(&coin.matrix());
                    assert!(d <= 1e-13);
                } else {
                    panic!("unexpected layer layout");
                }
            }
            // and the U data corresponds to U = SC under the identification
            let d = correspondence_defect(&data.shift_coin, 16).unwrap();
            assert!(d <= 1e-13);
        }
    }

    #[test]
    fn non_representable_coin_rejected() {
        // det != 1 coins are not sigma_1 Theta(alpha, rho)
        let coin = UnitaryCoin::new(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(matches!(coin_to_pair(coin), Err(Error::NotRepresentable { .. })));
    }

    #[test]
    fn electrified_specs_rejected() {
        let spec = WalkSpec::electric_split_step(
            SU2Coin::hadamard(),
            crate::field::RationalField::tilde(1, 3).unwrap(),
        );
        assert!(matches!(spec_to_cmv(&spec), Err(Error::NotRepresentable { .. })));
        // plain split-step specs pass
        let spec = WalkSpec::split_step(
            CoinSequence::constant(SU2Coin::hadamard().into()),
            CoinSequence::constant(SU2Coin::hadamard().into()),
        );
        assert!(spec_to_cmv(&spec).is_ok());
    }
}
