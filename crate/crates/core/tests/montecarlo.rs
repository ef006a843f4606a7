use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sepprob_core::montecarlo::{
    det_pt, estimate_moments, estimate_probability, partial_transpose, run, sample_density, Algebra, DensityMatrix,
    MCConfig, Quaternion, SelfAdjointMatrix,
};

fn config(algebra: Algebra, samples: u64, seed: u64) -> MCConfig {
    MCConfig { algebra, samples, seed, workers: 2 }
}

#[test]
fn partial_transpose_keeps_trace_and_adjointness() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for a in Algebra::ALL {
        for _ in 0..100 {
            let rho = sample_density(&mut rng, a);
            let pt = partial_transpose(&rho);
            let checked = SelfAdjointMatrix::new(a, *pt.entries()).unwrap();
            assert!((checked.trace() - 1.0).abs() < 1e-12);
            assert_eq!(checked.partial_transpose(), *rho.matrix());
        }
    }
}

#[test]
fn sampled_determinants_stay_in_range() {
    for a in Algebra::ALL {
        let r = estimate_probability(&config(a, 20_000, 3)).unwrap();
        assert!(r.det_min >= -1.0 / 16.0 - 1e-9 && r.det_max <= 1.0 / 256.0 + 1e-9, "{a}");
        assert!(r.det_min < 0.0 && r.det_max > 0.0);
        assert!((0.0..=1.0).contains(&r.p_hat));
    }
}

#[test]
fn moore_determinant_extends_the_complex_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let rho = sample_density(&mut rng, Algebra::Complex);
        let complex = det_pt(&rho).unwrap();
        let lifted = DensityMatrix::new(Algebra::Quaternion, *rho.entries()).unwrap();
        assert!((det_pt(&lifted).unwrap() - complex).abs() < 1e-10);
        // direct check against an independent 4x4 complex determinant
        let e = partial_transpose(&rho);
        let m = nalgebra::Matrix4::from_fn(|i, j| Complex64::new(e.entries()[i][j].w, e.entries()[i][j].x));
        assert!((m.determinant().re - complex).abs() < 1e-12);
    }
}

#[test]
fn quaternion_block_diagonal_matrix() {
    // diag(a, b, c, d) plus a quaternionic coupling in the first block
    let q = Quaternion::new(0.0, 0.01, 0.02, 0.03);
    let mut e = [[Quaternion::ZERO; 4]; 4];
    for (i, v) in [0.1, 0.2, 0.3, 0.4].iter().enumerate() {
        e[i][i] = Quaternion::real(*v);
    }
    e[0][1] = q;
    e[1][0] = q.conj();
    let m = SelfAdjointMatrix::new(Algebra::Quaternion, e).unwrap();
    let expected = (0.1 * 0.2 - q.norm_sqr()) * 0.3 * 0.4;
    assert!((m.determinant().unwrap() - expected).abs() < 1e-15);
}

#[test]
fn identical_runs_are_identical() {
    let c = MCConfig { algebra: Algebra::Real, samples: 9000, seed: 99, workers: 3 };
    assert_eq!(run(&c, Some(5)).unwrap(), run(&c, Some(5)).unwrap());
    let single = run(&MCConfig { workers: 1, ..c }, Some(5)).unwrap();
    assert_eq!(run(&c, Some(5)).unwrap().moments, single.moments);
}

#[test]
fn probabilities_are_ordered() {
    let p: Vec<f64> = Algebra::ALL
        .iter()
        .map(|&a| estimate_probability(&config(a, 100_000, 21)).unwrap().p_hat)
        .collect();
    assert!(p[0] > p[1] && p[1] > p[2], "{p:?}");
}

#[test]
fn first_moment_is_stable_across_seeds() {
    let n = 200_000;
    let mu: Vec<(f64, f64)> = [1, 2]
        .iter()
        .map(|&seed| {
            let m = estimate_moments(&config(Algebra::Complex, n, seed), 2).unwrap();
            let m1 = m.moments()[1].to_f64().unwrap();
            let m2 = m.moments()[2].to_f64().unwrap();
            (m1, ((m2 - m1 * m1) / n as f64).sqrt())
        })
        .collect();
    let se = (mu[0].1.powi(2) + mu[1].1.powi(2)).sqrt();
    assert!((mu[0].0 - mu[1].0).abs() < 6.0 * se, "{mu:?}");
}
