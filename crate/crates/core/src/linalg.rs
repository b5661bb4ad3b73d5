//! Small dense linear algebra: 2x2 complex matrices and eigendecomposition
//! of unitary matrices of any size.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

pub const TOL_UNITARY: f64 = 1e-12;

/// Column-major-free 2x2 complex matrix with entries `m[row][col]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[C64; 2]; 2]);

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn identity() -> Self {
        Mat2::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0))
    }

    pub fn zero() -> Self {
        Mat2::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0))
    }

    pub fn diag(p: C64, q: C64) -> Self {
        Mat2::new(p, C64::new(0.0, 0.0), C64::new(0.0, 0.0), q)
    }

    /// First Pauli matrix.
    pub fn sigma1() -> Self {
        Mat2::new(C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0))
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = *self;
        for r in 0..2 {
            for c in 0..2 {
                out.0[r][c] *= s;
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Mat2) -> Self {
        let mut out = Mat2::zero();
        for r in 0..2 {
            for c in 0..2 {
                out.0[r][c] = self.0[r][0] * rhs.0[0][c] + self.0[r][1] * rhs.0[1][c];
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat2) -> Self {
        let mut out = *self;
        for r in 0..2 {
            for c in 0..2 {
                out.0[r][c] += rhs.0[r][c];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Mat2) -> Self {
        let mut out = *self;
        for r in 0..2 {
            for c in 0..2 {
                out.0[r][c] -= rhs.0[r][c];
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        Mat2::new(
            self.0[0][0].conj(),
            self.0[1][0].conj(),
            self.0[0][1].conj(),
            self.0[1][1].conj(),
        )
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> C64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn apply(&self, v: [C64; 2]) -> [C64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    /// max |entry| of self - rhs.
    pub fn max_diff(&self, rhs: &Mat2) -> f64 {
        let mut d = 0f64;
        for r in 0..2 {
            for c in 0..2 {
                d = d.max((self.0[r][c] - rhs.0[r][c]).norm());
            }
        }
        d
    }

    /// max |entry| of self*self^dag - 1.
    pub fn unitarity_defect(&self) -> f64 {
        self.mul(&self.adjoint()).max_diff(&Mat2::identity())
    }

    /// Eigenvalues of a (near-)unitary 2x2 matrix, via trace and determinant.
    pub fn eigenvalues(&self) -> [C64; 2] {
        let t = self.trace();
        let d = self.det();
        let disc = (t * t - d.scale(4.0)).sqrt();
        [(t + disc).scale(0.5), (t - disc).scale(0.5)]
    }

    /// Eigenpairs (eigenvalue, unit eigenvector). For a degenerate matrix the
    /// two returned vectors are the standard basis.
    pub fn eigenpairs(&self) -> [(C64, [C64; 2]); 2] {
        let [l0, l1] = self.eigenvalues();
        let vec_for = |lam: C64, other: C64| -> [C64; 2] {
            // rows of (M - lam I) are orthogonal to the eigenvector; use the
            // larger row of the adjugate-style construction
            let r0 = [self.0[0][0] - lam, self.0[0][1]];
            let r1 = [self.0[1][0], self.0[1][1] - lam];
            let n0 = r0[0].norm_sqr() + r0[1].norm_sqr();
            let n1 = r1[0].norm_sqr() + r1[1].norm_sqr();
            let (mut v, n) = if n0 >= n1 {
                ([-r0[1], r0[0]], n0)
            } else {
                ([-r1[1], r1[0]], n1)
            };
            if n < 1e-28 {
                // scalar matrix: any basis works; disambiguate by eigenvalue slot
                v = if lam == other { [C64::new(1.0, 0.0), C64::new(0.0, 0.0)] } else { [C64::new(0.0, 0.0), C64::new(1.0, 0.0)] };
            }
            let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
            [v[0] / norm, v[1] / norm]
        };
        let v0 = vec_for(l0, l1);
        let mut v1 = vec_for(l1, l0);
        if l0 == l1 {
            v1 = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        }
        [(l0, v0), (l1, v1)]
    }

    /// Rank-1 orthogonal projections onto the eigenvectors; sums to 1 for a
    /// normal matrix with distinct eigenvalues.
    pub fn eigenprojections(&self) -> [(C64, Mat2); 2] {
        self.eigenpairs().map(|(lam, v)| {
            let p = Mat2::new(
                v[0] * v[0].conj(),
                v[0] * v[1].conj(),
                v[1] * v[0].conj(),
                v[1] * v[1].conj(),
            );
            (lam, p)
        })
    }
}

/// max |entry| of a - b for dense matrices.
pub fn max_entry_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .fold(0f64, |acc, (x, y)| acc.max((x - y).norm()))
}

/// max |entry| of M M^dag - 1.
pub fn unitarity_defect(m: &DMatrix<C64>) -> f64 {
    let n = m.nrows();
    let prod = m * m.adjoint();
    max_entry_diff(&prod, &DMatrix::identity(n, n))
}

/// Eigendecomposition of a unitary matrix.
///
/// Reduces to a Hermitian problem: for a generic rotation angle gamma the
/// Hermitian part of e^{-i gamma} R has simple spectrum cos(phi_j - gamma),
/// so its eigenvectors diagonalize R; eigenvalues are recovered as Rayleigh
/// quotients. Retries over a fixed angle sequence until every residual
/// ||Rv - lambda v|| passes.
pub fn unitary_eigenpairs(r: &DMatrix<C64>) -> (Vec<C64>, DMatrix<C64>) {
    let n = r.nrows();
    assert_eq!(n, r.ncols());
    let defect = unitarity_defect(r);
    assert!(
        defect < 1e-10,
        "unitary_eigenpairs requires a unitary input (defect {defect:.3e})"
    );
    // golden-angle sequence: no relation to the eigenphase differences survives
    // more than a few retries
    let golden = 2.399963229728653;
    let mut best: Option<(f64, Vec<C64>, DMatrix<C64>)> = None;
    for k in 0..12u32 {
        let gamma = golden * f64::from(k + 1);
        let rot = C64::from_polar(1.0, -gamma);
        let m = r.map(|z| z * rot);
        let herm = (&m + &m.adjoint()).scale(0.5);
        let se = herm.clone().symmetric_eigen();
        let mut vals = Vec::with_capacity(n);
        let mut resid = 0f64;
        #[allow(clippy::needless_range_loop)]
        for j in 0..n {
            let v = se.eigenvectors.column(j);
            let rv = r * v;
            let lam: C64 = v.iter().zip(rv.iter()).map(|(a, b)| a.conj() * b).sum();
            let lam = lam / C64::from(v.norm_squared());
            resid = resid.max((&rv - v.map(|x| x * lam)).norm());
            vals.push(lam);
        }
        if resid < 1e-11 {
            return (vals, se.eigenvectors);
        }
        if best.as_ref().is_none_or(|(r0, _, _)| resid < *r0) {
            best = Some((resid, vals, se.eigenvectors));
        }
    }
    let (resid, vals, vecs) = best.unwrap();
    assert!(
        resid < 1e-9,
        "unitary eigendecomposition failed to converge (residual {resid:.3e})"
    );
    (vals, vecs)
}
