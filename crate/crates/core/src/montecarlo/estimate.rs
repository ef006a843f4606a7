use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::matrix::{det_pt, Algebra};
use super::sampler::sample_density;
use crate::error::{Error, Result};
use crate::numerics::rational::rat;
use crate::numerics::Rational;
use crate::reconstruction::MomentSequence;

/// Samples per chunk. Chunk `c` draws from ChaCha8 stream `c` of the seed,
/// so the sample sequence does not depend on the worker count.
pub const CHUNK_SIZE: u64 = 4096;

/// Determinants are quantized to multiples of `2^-QUANTUM_BITS` so that
/// power sums can be accumulated exactly.
const QUANTUM_BITS: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MCConfig {
    pub algebra: Algebra,
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MCResult {
    pub algebra: Algebra,
    pub samples: u64,
    /// Samples with `det(rho^PT) >= 0`.
    pub separable: u64,
    pub p_hat: f64,
    pub stderr: f64,
    pub det_min: f64,
    pub det_max: f64,
    pub moments: Option<MomentSequence>,
    pub seed: u64,
    pub workers: usize,
}

/// The range of `det(rho^PT)` over two-qubit states.
pub fn det_interval() -> (Rational, Rational) {
    (rat(-1, 16), rat(1, 256))
}

struct Chunk {
    separable: u64,
    det_min: f64,
    det_max: f64,
    power_sums: Vec<BigInt>,
}

fn run_chunk(config: &MCConfig, chunk: u64, max_order: Option<usize>) -> Result<Chunk> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(chunk);
    let count = CHUNK_SIZE.min(config.samples - chunk * CHUNK_SIZE);
    let order = max_order.unwrap_or(0);
    let mut out = Chunk {
        separable: 0,
        det_min: f64::INFINITY,
        det_max: f64::NEG_INFINITY,
        power_sums: vec![BigInt::zero(); order + 1],
    };
    let scale = (2.0f64).powi(QUANTUM_BITS as i32);
    for _ in 0..count {
        let rho = sample_density(&mut rng, config.algebra);
        let det = det_pt(&rho)?;
        if det >= 0.0 {
            out.separable += 1;
        }
        out.det_min = out.det_min.min(det);
        out.det_max = out.det_max.max(det);
        if max_order.is_some() {
            let q = BigInt::from((det.clamp(-1.0 / 16.0, 1.0 / 256.0) * scale).round() as i64);
            let mut p = BigInt::one();
            for s in out.power_sums.iter_mut() {
                *s += &p;
                p *= &q;
            }
        }
    }
    Ok(out)
}

fn validate(config: &MCConfig) -> Result<()> {
    if config.samples == 0 {
        return Err(Error::argument("at least one sample is required"));
    }
    if config.workers == 0 {
        return Err(Error::argument("at least one worker is required"));
    }
    Ok(())
}

/// Samples `config.samples` flat-measure density matrices and counts those
/// with a nonnegative partial-transpose determinant. With `max_order` set,
/// also returns the exact sample moments of the (quantized) determinant.
/// Results are bit-identical for a fixed seed whatever the worker count.
pub fn run(config: &MCConfig, max_order: Option<usize>) -> Result<MCResult> {
    validate(config)?;
    let chunks = config.samples.div_ceil(CHUNK_SIZE);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::argument(format!("cannot start worker pool: {e}")))?;
    let parts: Vec<Chunk> = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| run_chunk(config, c, max_order))
            .collect::<Result<Vec<_>>>()
    })?;

    let mut separable = 0;
    let mut det_min = f64::INFINITY;
    let mut det_max = f64::NEG_INFINITY;
    let mut sums = vec![BigInt::zero(); max_order.unwrap_or(0) + 1];
    for part in parts {
        separable += part.separable;
        det_min = det_min.min(part.det_min);
        det_max = det_max.max(part.det_max);
        for (s, p) in sums.iter_mut().zip(part.power_sums) {
            *s += p;
        }
    }
    let n = config.samples as f64;
    let p_hat = separable as f64 / n;
    let moments = match max_order {
        None => None,
        Some(_) => {
            let count = BigInt::from(config.samples);
            let mu = sums
                .into_iter()
                .enumerate()
                .map(|(k, s)| Rational::new(s, &count << (QUANTUM_BITS as usize * k)))
                .collect();
            let (a, b) = det_interval();
            Some(MomentSequence::new(a, b, mu)?)
        }
    };
    Ok(MCResult {
        algebra: config.algebra,
        samples: config.samples,
        separable,
        p_hat,
        stderr: (p_hat * (1.0 - p_hat) / n).sqrt(),
        det_min,
        det_max,
        moments,
        seed: config.seed,
        workers: config.workers,
    })
}

pub fn estimate_probability(config: &MCConfig) -> Result<MCResult> {
    run(config, None)
}

/// Sample moments `mu_0..=mu_n` of `det(rho^PT)` on `[-1/16, 1/256]`.
pub fn estimate_moments(config: &MCConfig, max_order: usize) -> Result<MomentSequence> {
    Ok(run(config, Some(max_order))?.moments.expect("moments requested"))
}

/// The exact separability probability the formula predicts for the algebra.
pub fn target_probability(algebra: Algebra) -> Rational {
    match algebra {
        Algebra::Real => rat(29, 64),
        Algebra::Complex => rat(8, 33),
        Algebra::Quaternion => rat(26, 323),
    }
}
