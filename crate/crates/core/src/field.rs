//! Rational electric fields Phi = 2*pi*n/m and their site phases.
//!
//! All phases are m-th roots of unity; they are evaluated through an exact
//! root table indexed by n*q mod m, so ring periodicity and phase identities
//! hold to the last bit rather than up to trig error.

use crate::error::{Error, Result};
use num_complex::Complex64 as C64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Which diagonal field operator a layer applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldVariant {
    /// F_Phi = e^{i Phi Q}: cell q gets e^{i Phi q} on both components.
    Plain,
    /// diag(1, e^{i Phi}) F_{2 Phi}, the split-step field (global phase
    /// e^{i Phi/2} dropped).
    Tilde,
}

/// Reduced fraction Phi/(2*pi) = n/m with 0 <= n < m, gcd(n, m) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalField {
    num: i64,
    den: i64,
    variant: FieldVariant,
}

impl RationalField {
    pub fn new(num: i64, den: i64, variant: FieldVariant) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidField("denominator m = 0".into()));
        }
        let r = Ratio::new(num, den); // reduces and normalizes sign
        let den = *r.denom();
        let num = r.numer().rem_euclid(den);
        Ok(RationalField { num, den, variant })
    }

    pub fn plain(num: i64, den: i64) -> Result<Self> {
        Self::new(num, den, FieldVariant::Plain)
    }

    pub fn tilde(num: i64, den: i64) -> Result<Self> {
        Self::new(num, den, FieldVariant::Tilde)
    }

    /// Phi = 0 (identity field).
    pub fn zero(variant: FieldVariant) -> Self {
        RationalField { num: 0, den: 1, variant }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn variant(&self) -> FieldVariant {
        self.variant
    }

    pub fn with_variant(&self, variant: FieldVariant) -> Self {
        RationalField { variant, ..*self }
    }

    /// Phi/(2 pi) as an exact rational.
    pub fn frac(&self) -> Ratio<i64> {
        Ratio::new(self.num, self.den)
    }

    /// Phi in radians.
    pub fn phi(&self) -> f64 {
        std::f64::consts::TAU * self.num as f64 / self.den as f64
    }

    /// Fundamental period of the half field Phi/2: 2m for n odd, m for n even.
    pub fn ell(&self) -> i64 {
        if self.num % 2 == 1 {
            2 * self.den
        } else {
            self.den
        }
    }

    /// The half field Phi/2 as a reduced fraction (n odd: n/(2m); n even: (n/2)/m).
    pub fn half(&self) -> RationalField {
        RationalField::new(self.num, 2 * self.den, self.variant)
            .expect("den 2m > 0")
    }

    /// Ring-compatibility period: rings must hold a multiple of m cells.
    /// (The tilde field's minimal spatial period m/gcd(2n, m) can be
    /// smaller; m is the simple sufficient condition for both variants.)
    pub fn spatial_period(&self) -> i64 {
        self.den
    }

    /// Per-step momentum shift of the field in units of 2*pi
    /// (n/m for plain, 2n/m for tilde).
    pub fn momentum_shift(&self) -> Ratio<i64> {
        match self.variant {
            FieldVariant::Plain => Ratio::new(self.num, self.den),
            FieldVariant::Tilde => Ratio::new(2 * self.num, self.den),
        }
    }

    /// Exact table of the m-th roots of unity: entry r holds e^{2 pi i r / m}.
    pub fn root_table(&self) -> RootTable {
        RootTable::new(self.den)
    }

    /// Diagonal (plus, minus) factors of the field at cell q.
    pub fn site_phase(&self, q: i64, roots: &RootTable) -> (C64, C64) {
        debug_assert_eq!(roots.order(), self.den);
        match self.variant {
            FieldVariant::Plain => {
                let ph = roots.root(self.num as i128 * q as i128);
                (ph, ph)
            }
            FieldVariant::Tilde => {
                let ph2 = roots.root(2 * self.num as i128 * q as i128);
                let ph1 = roots.root(self.num as i128);
                (ph2, ph1 * ph2)
            }
        }
    }

    /// The m-periodic cycle of per-cell (plus, minus) phase factors:
    /// entry r holds the factors of every cell q with q mod m = r.
    pub fn site_phase_cycle(&self) -> Vec<(C64, C64)> {
        let roots = self.root_table();
        (0..self.den).map(|r| self.site_phase(r, &roots)).collect()
    }
}

impl std::fmt::Display for RationalField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// e^{2 pi i r/m} for r = 0..m-1, computed once.
#[derive(Debug, Clone)]
pub struct RootTable {
    order: i64,
    roots: Vec<C64>,
}

impl RootTable {
    pub fn new(order: i64) -> Self {
        assert!(order >= 1);
        let roots = (0..order)
            .map(|r| {
                let (s, c) = (std::f64::consts::TAU * r as f64 / order as f64).sin_cos();
                C64::new(c, s)
            })
            .collect();
        RootTable { order, roots }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn root(&self, exponent: i128) -> C64 {
        let m = self.order as i128;
        self.roots[exponent.rem_euclid(m) as usize]
    }
}
