use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use sepprob_core::formula::{p_derivative, p_eval_ball, p_recognized};
use sepprob_core::montecarlo::{run, Algebra, MCConfig, CHUNK_SIZE};
use sepprob_core::numerics::rational::{int, rat};
use sepprob_core::reconstruction::{fit_approximant, MomentSequence};
use sepprob_core::special::gamma_ball;
use sepprob_core::{AlphaValue, Rational, RealBall};

fn special(c: &mut Criterion) {
    let x = RealBall::from_rational(&rat(1, 3), 320);
    c.bench_function("gamma 1/3 at 256 bits", |b| b.iter(|| gamma_ball(black_box(&x), 256).unwrap()));
}

fn formula(c: &mut Criterion) {
    let mut g = c.benchmark_group("formula");
    g.sample_size(10);
    g.bench_function("recognize P(1/2) at 256 bits", |b| {
        b.iter(|| p_recognized(black_box(&AlphaValue::from_ratio(1, 2)), 256).unwrap())
    });
    g.bench_function("recognize P(63/2) at 512 bits", |b| {
        b.iter(|| p_recognized(black_box(&AlphaValue::from_ratio(63, 2)), 512).unwrap())
    });
    let third = RealBall::from_rational(&rat(1, 3), 192);
    let target = pow(&rat(1, 2), 128);
    g.bench_function("ball P(1/3) at 128 bits", |b| b.iter(|| p_eval_ball(black_box(&third), &target, 128).unwrap()));
    let zero = RealBall::zero(192);
    g.bench_function("P'(0) at 128 bits", |b| b.iter(|| p_derivative(black_box(&zero), 1, &target, 128).unwrap()));
    g.finish();
}

fn montecarlo(c: &mut Criterion) {
    let mut g = c.benchmark_group("montecarlo chunk");
    g.sample_size(10);
    for algebra in Algebra::ALL {
        let config = MCConfig { algebra, samples: CHUNK_SIZE, seed: 1, workers: 1 };
        g.bench_function(algebra.name(), |b| b.iter(|| run(black_box(&config), None).unwrap()));
    }
    g.finish();
}

fn reconstruction(c: &mut Criterion) {
    // moments of the uniform law on [-1/16, 1/256]
    let (a, b) = (rat(-1, 16), rat(1, 256));
    let moments: Vec<Rational> = (0..=40u32)
        .map(|k| {
            (pow(&b, k + 1) - pow(&a, k + 1)) / (int(i64::from(k) + 1) * (&b - &a))
        })
        .collect();
    let m = MomentSequence::new(a, b, moments).unwrap();
    let mut g = c.benchmark_group("reconstruction");
    g.sample_size(10);
    g.bench_function("exact fit, 40 moments", |bch| bch.iter(|| fit_approximant(black_box(&m)).unwrap()));
    let balls = m.to_balls(256);
    g.bench_function("ball fit, 40 moments", |bch| bch.iter(|| fit_approximant(black_box(&balls)).unwrap()));
    g.finish();
}

fn pow(x: &Rational, k: u32) -> Rational {
    (0..k).fold(int(1), |acc, _| acc * x)
}

criterion_group!(benches, special, formula, montecarlo, reconstruction);
criterion_main!(benches);
