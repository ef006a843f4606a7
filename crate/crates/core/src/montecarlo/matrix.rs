use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix4, SMatrix};
use num_complex::Complex64;

use super::quaternion::Quaternion;
use crate::error::{Error, Result};
use crate::numerics::rational::{int, rat};
use crate::numerics::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algebra {
    Real,
    Complex,
    Quaternion,
}

impl Algebra {
    pub const ALL: [Algebra; 3] = [Algebra::Real, Algebra::Complex, Algebra::Quaternion];

    /// Real dimension of the algebra (Dyson index).
    pub fn beta(self) -> u32 {
        match self {
            Algebra::Real => 1,
            Algebra::Complex => 2,
            Algebra::Quaternion => 4,
        }
    }

    /// The formula parameter `alpha = beta / 2`.
    pub fn alpha(self) -> Rational {
        match self {
            Algebra::Real => rat(1, 2),
            Algebra::Complex => int(1),
            Algebra::Quaternion => int(2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algebra::Real => "real",
            Algebra::Complex => "complex",
            Algebra::Quaternion => "quaternion",
        }
    }

    fn admits(self, q: &Quaternion) -> bool {
        match self {
            Algebra::Real => q.x == 0.0 && q.y == 0.0 && q.z == 0.0,
            Algebra::Complex => q.y == 0.0 && q.z == 0.0,
            Algebra::Quaternion => true,
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algebra {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "real" => Ok(Algebra::Real),
            "complex" => Ok(Algebra::Complex),
            "quaternion" => Ok(Algebra::Quaternion),
            _ => Err(Error::Parse(format!("unknown algebra {s:?}"))),
        }
    }
}

pub type Entries = [[Quaternion; 4]; 4];

/// A 4x4 self-adjoint matrix over the reals, complexes or quaternions.
/// Row and column index `2i + k` pairs subsystem A index `i` with
/// subsystem B index `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SelfAdjointMatrix {
    algebra: Algebra,
    entries: Entries,
}

const ADJOINT_TOL: f64 = 1e-12;
const IMAGINARY_TOL: f64 = 1e-12;
const PAIR_TOL: f64 = 1e-6;

impl SelfAdjointMatrix {
    pub fn new(algebra: Algebra, entries: Entries) -> Result<Self> {
        let scale = entries.iter().flatten().map(|q| q.norm()).fold(1.0, f64::max);
        for i in 0..4 {
            for j in 0..4 {
                if !algebra.admits(&entries[i][j]) {
                    return Err(Error::argument(format!("entry ({i},{j}) is not {algebra}")));
                }
                if (entries[j][i] - entries[i][j].conj()).norm() > ADJOINT_TOL * scale {
                    return Err(Error::argument(format!("entries ({i},{j}) and ({j},{i}) are not adjoint")));
                }
            }
        }
        Ok(SelfAdjointMatrix { algebra, entries })
    }

    pub(crate) fn new_unchecked(algebra: Algebra, entries: Entries) -> Self {
        SelfAdjointMatrix { algebra, entries }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn entries(&self) -> &Entries {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.entries[i][i].w).sum()
    }

    /// `(M^PT)_{(i,k),(j,l)} = M_{(i,l),(j,k)}`: transposes subsystem B by
    /// moving entries, without conjugating them.
    pub fn partial_transpose(&self) -> SelfAdjointMatrix {
        let mut out = [[Quaternion::ZERO; 4]; 4];
        for i in 0..2 {
            for k in 0..2 {
                for j in 0..2 {
                    for l in 0..2 {
                        out[2 * i + k][2 * j + l] = self.entries[2 * i + l][2 * j + k];
                    }
                }
            }
        }
        SelfAdjointMatrix::new_unchecked(self.algebra, out)
    }

    fn complex4(&self) -> Matrix4<Complex64> {
        Matrix4::from_fn(|i, j| Complex64::new(self.entries[i][j].w, self.entries[i][j].x))
    }

    /// The 8x8 complex matrix obtained by replacing every entry with its
    /// 2x2 complex block.
    pub fn complex_adjoint(&self) -> SMatrix<Complex64, 8, 8> {
        let mut m = SMatrix::<Complex64, 8, 8>::zeros();
        for i in 0..4 {
            for j in 0..4 {
                let b = self.entries[i][j].complex_block();
                for r in 0..2 {
                    for s in 0..2 {
                        m[(2 * i + r, 2 * j + s)] = b[r][s];
                    }
                }
            }
        }
        m
    }

    /// Eigenvalues in ascending order; for quaternions, one per coincident
    /// pair of the complex adjoint.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        match self.algebra {
            Algebra::Real | Algebra::Complex => {
                let mut e: Vec<f64> = self.complex4().symmetric_eigenvalues().iter().copied().collect();
                e.sort_by(f64::total_cmp);
                Ok(e)
            }
            Algebra::Quaternion => paired_eigenvalues(&self.complex_adjoint()),
        }
    }

    /// Ordinary determinant for real and complex matrices; the Moore
    /// determinant (product of paired adjoint eigenvalues) for quaternions.
    pub fn determinant(&self) -> Result<f64> {
        match self.algebra {
            Algebra::Real | Algebra::Complex => {
                let d = self.complex4().determinant();
                if d.im.abs() > IMAGINARY_TOL {
                    return Err(Error::Degenerate(format!("determinant has imaginary part {}", d.im)));
                }
                Ok(d.re)
            }
            Algebra::Quaternion => Ok(paired_eigenvalues(&self.complex_adjoint())?.iter().product()),
        }
    }
}

fn paired_eigenvalues(m: &SMatrix<Complex64, 8, 8>) -> Result<Vec<f64>> {
    let mut e: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    e.sort_by(f64::total_cmp);
    let scale = e.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut out = Vec::with_capacity(4);
    for pair in e.chunks(2) {
        if (pair[1] - pair[0]).abs() > PAIR_TOL * scale {
            return Err(Error::Degenerate(format!(
                "adjoint eigenvalues {} and {} do not pair",
                pair[0], pair[1]
            )));
        }
        out.push(0.5 * (pair[0] + pair[1]));
    }
    Ok(out)
}

/// A two-qubit density matrix: self-adjoint, unit trace, positive
/// semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(SelfAdjointMatrix);

const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

impl DensityMatrix {
    pub fn new(algebra: Algebra, entries: Entries) -> Result<Self> {
        let m = SelfAdjointMatrix::new(algebra, entries)?;
        if (m.trace() - 1.0).abs() > TRACE_TOL {
            return Err(Error::argument(format!("trace {} is not 1", m.trace())));
        }
        if m.eigenvalues()?.first().is_some_and(|&l| l < -PSD_TOL) {
            return Err(Error::argument("matrix is not positive semidefinite"));
        }
        Ok(DensityMatrix(m))
    }

    pub(crate) fn new_unchecked(algebra: Algebra, entries: Entries) -> Self {
        DensityMatrix(SelfAdjointMatrix::new_unchecked(algebra, entries))
    }

    pub fn maximally_mixed(algebra: Algebra) -> Self {
        let mut e = [[Quaternion::ZERO; 4]; 4];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = Quaternion::real(0.25);
        }
        DensityMatrix::new_unchecked(algebra, e)
    }

    /// `|Phi+><Phi+|` with `|Phi+> = (|00> + |11>)/sqrt 2`.
    pub fn bell_state(algebra: Algebra) -> Self {
        let mut e = [[Quaternion::ZERO; 4]; 4];
        for i in [0, 3] {
            for j in [0, 3] {
                e[i][j] = Quaternion::real(0.5);
            }
        }
        DensityMatrix::new_unchecked(algebra, e)
    }

    /// `|00><00|`.
    pub fn product_state(algebra: Algebra) -> Self {
        let mut e = [[Quaternion::ZERO; 4]; 4];
        e[0][0] = Quaternion::ONE;
        DensityMatrix::new_unchecked(algebra, e)
    }

    pub fn matrix(&self) -> &SelfAdjointMatrix {
        &self.0
    }

    pub fn algebra(&self) -> Algebra {
        self.0.algebra
    }

    pub fn entries(&self) -> &Entries {
        &self.0.entries
    }

    pub fn trace(&self) -> f64 {
        self.0.trace()
    }
}

pub fn partial_transpose(rho: &DensityMatrix) -> SelfAdjointMatrix {
    rho.0.partial_transpose()
}

/// `det(rho^PT)`; nonnegative exactly for separable two-qubit states.
pub fn det_pt(rho: &DensityMatrix) -> Result<f64> {
    rho.0.partial_transpose().determinant()
}
