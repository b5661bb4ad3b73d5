//! Coin operators: the local 2x2 unitaries acting on the internal degree of
//! freedom, and rules assigning a coin to every lattice cell.

use crate::error::{Error, Result};
use crate::linalg::Mat2;
use num_complex::Complex64 as C64;
use std::collections::BTreeMap;

const TOL: f64 = 1e-12;

/// Determinant-1 coin parameterized by (a, b) with |a|^2 + |b|^2 = 1; the
/// induced matrix is [[a, b], [-conj(b), conj(a)]].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU2Coin {
    a: C64,
    b: C64,
}

impl SU2Coin {
    /// Normalizes (a, b) onto the unit sphere; rejects near-zero input.
    pub fn new(a: C64, b: C64) -> Result<Self> {
        let n2 = a.norm_sqr() + b.norm_sqr();
        if n2 < 1e-14 {
            return Err(Error::NotNormalized("coin parameters (a, b) are both ~0".into()));
        }
        let n = n2.sqrt();
        Ok(SU2Coin { a: a / n, b: b / n })
    }

    /// a = b = 1/sqrt(2).
    pub fn hadamard() -> Self {
        let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        SU2Coin { a: s, b: s }
    }

    /// Fully transmitting coin (free shift), a = 1.
    pub fn transmitting() -> Self {
        SU2Coin { a: C64::new(1.0, 0.0), b: C64::new(0.0, 0.0) }
    }

    /// Fully reflecting coin, a = 0.
    pub fn reflecting() -> Self {
        SU2Coin { a: C64::new(0.0, 0.0), b: C64::new(1.0, 0.0) }
    }

    /// Coin with |a| = abs_a, arg(a) = arg_a and real nonnegative b.
    pub fn from_modulus_phase(abs_a: f64, arg_a: f64) -> Result<Self> {
        if !(0.0..=1.0 + 1e-12).contains(&abs_a) {
            return Err(Error::NotNormalized(format!("|a| = {abs_a} outside [0, 1]")));
        }
        let abs_a = abs_a.min(1.0);
        let b = (1.0 - abs_a * abs_a).max(0.0).sqrt();
        Ok(SU2Coin {
            a: C64::from_polar(abs_a, arg_a),
            b: C64::new(b, 0.0),
        })
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn abs_a(&self) -> f64 {
        self.a.norm()
    }

    pub fn arg_a(&self) -> f64 {
        self.a.arg()
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.a, self.b, -self.b.conj(), self.a.conj())
    }
}

impl From<SU2Coin> for UnitaryCoin {
    fn from(c: SU2Coin) -> Self {
        UnitaryCoin { m: c.matrix() }
    }
}

/// General unitary 2x2 coin [[a, b], [c, d]]; unitarity is checked on
/// construction (which forces |a| = |d| and |b| = |c|).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryCoin {
    m: Mat2,
}

impl UnitaryCoin {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self> {
        let m = Mat2::new(a, b, c, d);
        let defect = m.unitarity_defect();
        if defect > TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(UnitaryCoin { m })
    }

    pub fn from_matrix(m: Mat2) -> Result<Self> {
        Self::new(m.0[0][0], m.0[0][1], m.0[1][0], m.0[1][1])
    }

    pub fn identity() -> Self {
        UnitaryCoin { m: Mat2::identity() }
    }

    pub fn matrix(&self) -> Mat2 {
        self.m
    }

    pub fn a(&self) -> C64 {
        self.m.0[0][0]
    }
    pub fn b(&self) -> C64 {
        self.m.0[0][1]
    }
    pub fn c(&self) -> C64 {
        self.m.0[1][0]
    }
    pub fn d(&self) -> C64 {
        self.m.0[1][1]
    }
}

/// Rule assigning a coin to every cell of the lattice.
#[derive(Debug, Clone, PartialEq)]
pub enum CoinSequence {
    /// Same coin everywhere (translation-invariant).
    Constant(UnitaryCoin),
    /// coins[(n mod len)] at cell n.
    Periodic(Vec<UnitaryCoin>),
    /// Explicit per-cell overrides on top of a default.
    Explicit {
        map: BTreeMap<i64, UnitaryCoin>,
        default: UnitaryCoin,
    },
}

impl CoinSequence {
    pub fn constant(c: UnitaryCoin) -> Self {
        CoinSequence::Constant(c)
    }

    pub fn periodic(coins: Vec<UnitaryCoin>) -> Self {
        assert!(!coins.is_empty(), "periodic coin sequence needs at least one coin");
        CoinSequence::Periodic(coins)
    }

    pub fn coin_at(&self, n: i64) -> UnitaryCoin {
        match self {
            CoinSequence::Constant(c) => *c,
            CoinSequence::Periodic(v) => {
                let l = v.len() as i64;
                v[n.rem_euclid(l) as usize]
            }
            CoinSequence::Explicit { map, default } => *map.get(&n).unwrap_or(default),
        }
    }

    /// Is the same coin used at every cell?
    pub fn constant_coin(&self) -> Option<UnitaryCoin> {
        match self {
            CoinSequence::Constant(c) => Some(*c),
            CoinSequence::Periodic(v) if v.iter().all(|c| c == &v[0]) => Some(v[0]),
            CoinSequence::Explicit { map, default } if map.values().all(|c| c == default) => {
                Some(*default)
            }
            _ => None,
        }
    }

    /// The sequence n -> coin_at(scale*n + offset). Used by the parity sieve,
    /// which reads off coins at 2n, 2n+1, 2n+2.
    pub fn compose_index(&self, scale: i64, offset: i64) -> CoinSequence {
        match self {
            CoinSequence::Constant(c) => CoinSequence::Constant(*c),
            CoinSequence::Periodic(v) => {
                let l = v.len() as i64;
                let coins = (0..l)
                    .map(|n| v[(scale * n + offset).rem_euclid(l) as usize])
                    .collect();
                CoinSequence::Periodic(coins)
            }
            CoinSequence::Explicit { map, default } => {
                let mut out = BTreeMap::new();
                for (&k, &c) in map {
                    let shifted = k - offset;
                    if scale != 0 && shifted % scale == 0 {
                        out.insert(shifted / scale, c);
                    }
                }
                CoinSequence::Explicit { map: out, default: *default }
            }
        }
    }
}
