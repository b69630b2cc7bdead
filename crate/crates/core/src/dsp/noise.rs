use alloc::vec::Vec;

use super::SampleBuffer;
use crate::rng::DetRng;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub seed: u64,
    pub n_samples: usize,
    pub sample_rate_hz: f64,
}

/// Uniform white noise on `[-1, 1)` drawn from [`DetRng`] seeded with
/// `spec.seed`. The same spec always yields the same buffer.
pub fn generate_white_noise(spec: &NoiseSpec) -> Result<SampleBuffer> {
    if spec.n_samples == 0 {
        return Err(Error::EmptyNoise);
    }
    let mut rng = DetRng::new(spec.seed);
    let samples: Vec<f64> = (0..spec.n_samples).map(|_| rng.symmetric_f64()).collect();
    SampleBuffer::new(samples, spec.sample_rate_hz)
}
