use rand::Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};

use super::matrix::{Algebra, DensityMatrix, Entries};
use super::quaternion::Quaternion;

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

/// An algebra element whose `beta` real components are iid standard normal.
fn gaussian<R: Rng + ?Sized>(rng: &mut R, algebra: Algebra) -> Quaternion {
    match algebra {
        Algebra::Real => Quaternion::real(normal(rng)),
        Algebra::Complex => Quaternion::new(normal(rng), normal(rng), 0.0, 0.0),
        Algebra::Quaternion => Quaternion::new(normal(rng), normal(rng), normal(rng), normal(rng)),
    }
}

/// `M M^dagger / tr(M M^dagger)` for a square or rectangular factor with
/// four rows.
fn normalized_gram(algebra: Algebra, rows: &[Vec<Quaternion>; 4]) -> Option<DensityMatrix> {
    let mut e: Entries = [[Quaternion::ZERO; 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            let mut s = Quaternion::ZERO;
            for (a, b) in rows[i].iter().zip(&rows[j]) {
                s = s + *a * b.conj();
            }
            e[i][j] = s;
        }
    }
    let trace: f64 = (0..4).map(|i| e[i][i].w).sum();
    if trace == 0.0 || !trace.is_finite() {
        return None;
    }
    let inv = 1.0 / trace;
    for i in 0..4 {
        // the diagonal of a Gram matrix is real up to roundoff
        e[i][i] = Quaternion::real(e[i][i].w * inv);
        for j in i + 1..4 {
            e[i][j] = e[i][j].scale(inv);
            e[j][i] = e[i][j].conj();
        }
    }
    Some(DensityMatrix::new_unchecked(algebra, e))
}

/// Draws a density matrix from the Hilbert-Schmidt (flat) measure.
///
/// The flat measure is the Wishart law with `beta (K - 3) / 2 = 1`, which
/// needs a non-integer `K = 7/2` over the quaternions. The Bartlett
/// decomposition handles any `K`: `rho = L L^dagger / tr` with `L` lower
/// triangular, off-diagonal entries standard normal in the algebra and
/// `L_ii^2 ~ chi^2(beta (4 - i) + 2)` for `i = 1..4`.
pub fn sample_density<R: Rng + ?Sized>(rng: &mut R, algebra: Algebra) -> DensityMatrix {
    let beta = f64::from(algebra.beta());
    loop {
        let mut rows: [Vec<Quaternion>; 4] = Default::default();
        for (i, row) in rows.iter_mut().enumerate() {
            row.resize(4, Quaternion::ZERO);
            for cell in row.iter_mut().take(i) {
                *cell = gaussian(rng, algebra);
            }
            let dof = beta * (3 - i) as f64 + 2.0;
            let chi2: f64 = ChiSquared::new(dof).expect("positive degrees of freedom").sample(rng);
            row[i] = Quaternion::real(chi2.sqrt());
        }
        if let Some(rho) = normalized_gram(algebra, &rows) {
            return rho;
        }
    }
}

/// `G G^dagger / tr` with `G` a 4 x `columns` Ginibre matrix over the
/// algebra. With 4 columns over the complexes, or 5 over the reals, this is
/// again the flat measure.
pub fn sample_ginibre<R: Rng + ?Sized>(rng: &mut R, algebra: Algebra, columns: usize) -> DensityMatrix {
    loop {
        let rows: [Vec<Quaternion>; 4] =
            std::array::from_fn(|_| (0..columns).map(|_| gaussian(rng, algebra)).collect());
        if let Some(rho) = normalized_gram(algebra, &rows) {
            return rho;
        }
    }
}
