//! Closed-form steady-state covariance matrix and its two-mode blocks.
//!
//! # Layout
//!
//! The global matrix is stored mode by mode, each mode contributing an
//! adjacent (X, Y) pair:
//!
//! ```text
//! index:  0    1    2    3    4    5    6    7
//!         Xm1  Ym1  Xm2  Ym2  Xo1  Yo1  Xo2  Yo2
//! ```
//!
//! In this layout the matrix reads exactly
//!
//! ```text
//! a1  0   c1  0   c3  0   c4  0
//! 0   a1  0  -c1  0   c3  0  -c4
//! c1  0   a1  0   c4  0   c3  0
//! 0  -c1  0   a1  0  -c4  0   c3
//! c3  0   c4  0   a2  0   c2  0
//! 0   c3  0  -c4  0   a2  0  -c2
//! c4  0   c3  0   c2  0   a2  0
//! 0  -c4  0   c3  0  -c2  0   a2
//! ```
//!
//! and the symplectic form is `Ω = ⊕₄ [[0, 1], [−1, 0]]`. Every index in the
//! crate goes through [`Quadrature::index`]; nothing else hard-codes it.
//! Vacuum has variance 1/2 per quadrature.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix2, Matrix4, SMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::reduction::ReducedParams;

pub type Matrix8 = SMatrix<f64, 8, 8>;

/// One of the four bosonic modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Mechanical1,
    Mechanical2,
    Optical1,
    Optical2,
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::Mechanical1,
        Mode::Mechanical2,
        Mode::Optical1,
        Mode::Optical2,
    ];

    fn slot(self) -> usize {
        match self {
            Mode::Mechanical1 => 0,
            Mode::Mechanical2 => 1,
            Mode::Optical1 => 2,
            Mode::Optical2 => 3,
        }
    }

    pub fn x(self) -> Quadrature {
        Quadrature {
            mode: self,
            y: false,
        }
    }

    pub fn y(self) -> Quadrature {
        Quadrature {
            mode: self,
            y: true,
        }
    }
}

/// A position (X) or momentum (Y) quadrature of a mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quadrature {
    pub mode: Mode,
    pub y: bool,
}

impl Quadrature {
    pub fn index(self) -> usize {
        2 * self.mode.slot() + usize::from(self.y)
    }
}

/// The symplectic form of dimension `D` in (X, Y)-pair layout.
pub fn symplectic_form<const D: usize>() -> SMatrix<f64, D, D> {
    let mut omega = SMatrix::<f64, D, D>::zeros();
    for k in 0..D / 2 {
        omega[(2 * k, 2 * k + 1)] = 1.0;
        omega[(2 * k + 1, 2 * k)] = -1.0;
    }
    omega
}

/// The six independent entries of the global covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceEntries {
    pub a1: f64,
    pub a2: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl CovarianceEntries {
    pub fn vacuum() -> Self {
        Self {
            a1: 0.5,
            a2: 0.5,
            c1: 0.0,
            c2: 0.0,
            c3: 0.0,
            c4: 0.0,
        }
    }
}

/// Steady-state entries for the given reduced parameters.
///
/// With N = sinh²r the printed forms are rearranged around the vacuum value
/// (cosh 2r = 1 + 2N, so e.g. a1 = ½ + (βN + n_th(1+α+αβ)) / ((1+α)(1+β))).
/// The rearrangement is exact algebra and keeps a1, a2 ≥ ½ under rounding.
pub fn cm_entries(p: &ReducedParams) -> CovarianceEntries {
    let ReducedParams {
        alpha,
        beta,
        r,
        n_th,
    } = *p;
    let den = (1.0 + alpha) * (1.0 + beta);
    let n_sq = r.sinh().powi(2);
    let sh = 0.5 * (2.0 * r).sinh();
    let hybrid = (alpha * beta).sqrt();
    CovarianceEntries {
        a1: 0.5 + (beta * n_sq + n_th * (1.0 + alpha + alpha * beta)) / den,
        a2: 0.5 + (n_sq * (1.0 + alpha + beta) + n_th * alpha * beta) / den,
        c1: beta * sh / den,
        c2: sh * (1.0 + alpha + beta) / den,
        c3: hybrid * (n_sq - n_th) / den,
        c4: hybrid * sh / den,
    }
}

/// 8×8 covariance of all four modes (see the module docs for the layout).
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalCovariance(Matrix8);

impl GlobalCovariance {
    pub fn from_matrix(m: Matrix8) -> Self {
        Self(m)
    }

    pub fn matrix(&self) -> &Matrix8 {
        &self.0
    }

    pub fn get(&self, p: Quadrature, q: Quadrature) -> f64 {
        self.0[(p.index(), q.index())]
    }

    pub fn max_asymmetry(&self) -> f64 {
        (self.0 - self.0.transpose()).amax()
    }

    /// Symplectic eigenvalues ν₁ ≤ … ≤ ν₄.
    ///
    /// For σ > 0 these are the positive eigenvalues of `i Ω σ`; they are
    /// obtained as square roots of the (doubly degenerate) spectrum of
    /// `Kᵀ K` with `K = σ^½ Ω σ^½`. Fails if σ is not positive definite.
    pub fn symplectic_spectrum(&self) -> Result<[f64; 4]> {
        let v = symplectic_spectrum_of(&self.0)?;
        Ok([v[0], v[1], v[2], v[3]])
    }
}

pub(crate) fn symplectic_spectrum_of<const D: usize>(
    sigma: &SMatrix<f64, D, D>,
) -> Result<Vec<f64>> {
    let sigma = DMatrix::from_column_slice(D, D, sigma.as_slice());
    let omega = DMatrix::from_column_slice(D, D, symplectic_form::<D>().as_slice());
    let sym = (&sigma + sigma.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let min = eig.eigenvalues.min();
    if min <= 0.0 {
        return Err(Error::NonPhysical {
            what: "smallest covariance eigenvalue",
            value: min,
        });
    }
    let root = &eig.eigenvectors
        * DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt))
        * eig.eigenvectors.transpose();
    let k = &root * omega * &root;
    let mut nu: Vec<f64> = SymmetricEigen::new(k.transpose() * k)
        .eigenvalues
        .iter()
        .map(|v| v.max(0.0).sqrt())
        .collect();
    nu.sort_by(f64::total_cmp);
    // Each symplectic eigenvalue appears twice.
    Ok(nu.chunks(2).map(|c| 0.5 * (c[0] + c[1])).collect())
}

/// Fill the global matrix with the printed sign pattern.
pub fn assemble_global(e: &CovarianceEntries) -> GlobalCovariance {
    use Mode::*;
    let mut m = Matrix8::zeros();
    let mut set = |p: Quadrature, q: Quadrature, v: f64| {
        m[(p.index(), q.index())] = v;
        m[(q.index(), p.index())] = v;
    };
    for mode in [Mechanical1, Mechanical2] {
        set(mode.x(), mode.x(), e.a1);
        set(mode.y(), mode.y(), e.a1);
    }
    for mode in [Optical1, Optical2] {
        set(mode.x(), mode.x(), e.a2);
        set(mode.y(), mode.y(), e.a2);
    }
    let pairs = [
        (Mechanical1, Mechanical2, e.c1, -e.c1),
        (Optical1, Optical2, e.c2, -e.c2),
        (Mechanical1, Optical1, e.c3, e.c3),
        (Mechanical2, Optical2, e.c3, e.c3),
        (Mechanical1, Optical2, e.c4, -e.c4),
        (Mechanical2, Optical1, e.c4, -e.c4),
    ];
    for (a, b, xx, yy) in pairs {
        set(a.x(), b.x(), xx);
        set(a.y(), b.y(), yy);
    }
    GlobalCovariance(m)
}

/// The four two-mode bipartitions of the double cavity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    /// Mechanical mode 1 with mechanical mode 2.
    MechanicalPair,
    /// Optical mode 1 with optical mode 2.
    OpticalPair,
    /// A mechanical mode with the optical mode of its own cavity.
    HybridLocal,
    /// A mechanical mode with the optical mode of the other cavity.
    HybridCross,
}

impl Subsystem {
    pub const ALL: [Subsystem; 4] = [
        Subsystem::MechanicalPair,
        Subsystem::OpticalPair,
        Subsystem::HybridLocal,
        Subsystem::HybridCross,
    ];

    pub fn modes(self) -> (Mode, Mode) {
        match self {
            Subsystem::MechanicalPair => (Mode::Mechanical1, Mode::Mechanical2),
            Subsystem::OpticalPair => (Mode::Optical1, Mode::Optical2),
            Subsystem::HybridLocal => (Mode::Mechanical1, Mode::Optical1),
            Subsystem::HybridCross => (Mode::Mechanical1, Mode::Optical2),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Subsystem::MechanicalPair => "mm",
            Subsystem::OpticalPair => "oo",
            Subsystem::HybridLocal => "hl",
            Subsystem::HybridCross => "hc",
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Subsystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "mm" | "i" => Ok(Subsystem::MechanicalPair),
            "oo" | "ii" => Ok(Subsystem::OpticalPair),
            "hl" | "iii" => Ok(Subsystem::HybridLocal),
            "hc" | "iv" => Ok(Subsystem::HybridCross),
            other => Err(Error::InvalidBipartition(other.to_string())),
        }
    }
}

/// Two-mode covariance `[[A, C], [Cᵀ, B]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeCovariance {
    pub a: Matrix2<f64>,
    pub b: Matrix2<f64>,
    pub c: Matrix2<f64>,
    pub subsystem: Option<Subsystem>,
}

impl TwoModeCovariance {
    pub fn new(a: Matrix2<f64>, b: Matrix2<f64>, c: Matrix2<f64>) -> Self {
        Self {
            a,
            b,
            c,
            subsystem: None,
        }
    }

    /// Blocks with diagonal A = diag(a, a), B = diag(b, b), C = diag(cx, cy).
    pub fn diagonal(a: f64, b: f64, cx: f64, cy: f64) -> Self {
        Self::new(
            Matrix2::from_diagonal_element(a),
            Matrix2::from_diagonal_element(b),
            Matrix2::new(cx, 0.0, 0.0, cy),
        )
    }

    pub fn vacuum() -> Self {
        Self::diagonal(0.5, 0.5, 0.0, 0.0)
    }

    pub fn det_a(&self) -> f64 {
        self.a.determinant()
    }

    pub fn det_b(&self) -> f64 {
        self.b.determinant()
    }

    pub fn det_c(&self) -> f64 {
        self.c.determinant()
    }

    fn all_blocks_diagonal(&self) -> bool {
        [self.a, self.b, self.c]
            .iter()
            .all(|m| m[(0, 1)] == 0.0 && m[(1, 0)] == 0.0)
    }

    pub fn c_is_diagonal(&self) -> bool {
        self.c[(0, 1)] == 0.0 && self.c[(1, 0)] == 0.0
    }

    /// Determinant of the full 4×4 matrix. Diagonal blocks split into the X
    /// and Y sectors, which avoids cancellation in the generic expansion.
    pub fn det(&self) -> f64 {
        if self.all_blocks_diagonal() {
            let sector =
                |i: usize| self.a[(i, i)] * self.b[(i, i)] - self.c[(i, i)] * self.c[(i, i)];
            sector(0) * sector(1)
        } else {
            self.to_matrix().determinant()
        }
    }

    pub fn to_matrix(&self) -> Matrix4<f64> {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&self.a);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&self.b);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(&self.c);
        m.fixed_view_mut::<2, 2>(2, 0)
            .copy_from(&self.c.transpose());
        m
    }

    /// The same state with the two modes exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            a: self.b,
            b: self.a,
            c: self.c.transpose(),
            subsystem: self.subsystem,
        }
    }

    /// Both symplectic eigenvalues from a numerical diagonalization; used as
    /// an independent route to the closed-form invariants.
    pub fn numerical_symplectic_spectrum(&self) -> Result<[f64; 2]> {
        let v = symplectic_spectrum_of(&self.to_matrix())?;
        Ok([v[0], v[1]])
    }
}

pub fn extract_subsystem(sigma: &GlobalCovariance, subsystem: Subsystem) -> TwoModeCovariance {
    let (first, second) = subsystem.modes();
    let block = |p: Mode, q: Mode| {
        Matrix2::new(
            sigma.get(p.x(), q.x()),
            sigma.get(p.x(), q.y()),
            sigma.get(p.y(), q.x()),
            sigma.get(p.y(), q.y()),
        )
    };
    TwoModeCovariance {
        a: block(first, first),
        b: block(second, second),
        c: block(first, second),
        subsystem: Some(subsystem),
    }
}

/// Convenience: entries → global matrix → one bipartition.
pub fn subsystem_covariance(p: &ReducedParams, subsystem: Subsystem) -> TwoModeCovariance {
    extract_subsystem(&assemble_global(&cm_entries(p)), subsystem)
}
