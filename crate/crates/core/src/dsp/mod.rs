//! Signal synthesis and analysis: white noise, FM, and power spectra.

mod fft;
mod fm;
mod noise;
mod spectrum;

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::{Error, Result};

pub use fft::fft_in_place;
pub use fm::{fm_demodulate, fm_modulate};
pub use noise::{generate_white_noise, NoiseSpec};
pub use spectrum::{
    band_power, find_peak, occupied_bandwidth, power_spectrum, SpectralSource, Spectrum, Window,
};

/// Real audio samples at full scale +-1.0.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBuffer {
    samples: Vec<f64>,
    sample_rate_hz: f64,
}

impl SampleBuffer {
    pub fn new(samples: Vec<f64>, sample_rate_hz: f64) -> Result<Self> {
        check_rate(sample_rate_hz)?;
        if let Some(i) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::NonFiniteSample(i));
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Scales the buffer so its largest magnitude is 1.0. Silent buffers are
    /// returned unchanged.
    pub fn normalized(mut self) -> Self {
        let peak = self.samples.iter().fold(0.0f64, |m, s| m.max(s.abs()));
        if peak > 0.0 {
            self.samples.iter_mut().for_each(|s| *s /= peak);
        }
        self
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }
}

/// Complex baseband samples around `center_freq_hz`.
#[derive(Debug, Clone, PartialEq)]
pub struct IqBuffer {
    samples: Vec<Complex64>,
    sample_rate_hz: f64,
    center_freq_hz: f64,
}

impl IqBuffer {
    pub fn new(samples: Vec<Complex64>, sample_rate_hz: f64, center_freq_hz: f64) -> Result<Self> {
        check_rate(sample_rate_hz)?;
        if !(center_freq_hz.is_finite() && center_freq_hz >= 0.0) {
            return Err(Error::InvalidSampleRate(center_freq_hz));
        }
        if let Some(i) = samples
            .iter()
            .position(|s| !(s.re.is_finite() && s.im.is_finite()))
        {
            return Err(Error::NonFiniteSample(i));
        }
        Ok(Self {
            samples,
            sample_rate_hz,
            center_freq_hz,
        })
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn center_freq_hz(&self) -> f64 {
        self.center_freq_hz
    }

    pub fn with_center(mut self, center_freq_hz: f64) -> Self {
        self.center_freq_hz = center_freq_hz;
        self
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

fn check_rate(sample_rate_hz: f64) -> Result<()> {
    if sample_rate_hz.is_finite() && sample_rate_hz > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidSampleRate(sample_rate_hz))
    }
}
