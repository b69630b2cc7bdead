//! The deterministic generator behind every seeded quantity.
//!
//! All randomness is drawn from Xoshiro256++ whose 256-bit state is expanded
//! from the 64-bit seed with SplitMix64 (`rand_core::SeedableRng::seed_from_u64`).
//! Two derived draws are used:
//!
//! * `unit_f64`: `(next_u64() >> 11) * 2^-53`, uniform on `[0, 1)`.
//! * `below(n)`: `(next_u64() as u128 * n as u128) >> 64`, an index in `0..n`
//!   (multiply-shift, no rejection step).
//!
//! Any reimplementation following these three rules reproduces the noise
//! buffers and hop sequences bit for bit.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

pub struct DetRng(Xoshiro256PlusPlus);

impl DetRng {
    pub fn new(seed: u64) -> Self {
        Self(Xoshiro256PlusPlus::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[-1, 1)`.
    pub fn symmetric_f64(&mut self) -> f64 {
        2.0 * self.unit_f64() - 1.0
    }

    pub fn below(&mut self, n: u64) -> u64 {
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }
}
