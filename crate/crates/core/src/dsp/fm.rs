use core::f64::consts::{PI, TAU};

use alloc::vec::Vec;
use num_complex::Complex64;

use super::{IqBuffer, SampleBuffer};
use crate::{Error, Result};

fn check_deviation(deviation_hz: f64, sample_rate_hz: f64) -> Result<()> {
    let nyquist_hz = sample_rate_hz / 2.0;
    if deviation_hz.is_finite() && deviation_hz > 0.0 && deviation_hz < nyquist_hz {
        Ok(())
    } else {
        Err(Error::InvalidDeviation {
            deviation_hz,
            nyquist_hz,
        })
    }
}

/// Phase-accumulating FM: `phi[k] = phi[k-1] + 2 pi dev x[k] / fs` with
/// `phi[-1] = 0`, output `e^{i phi[k]}`. The accumulator is kept wrapped to
/// `[-pi, pi]`, which leaves every output sample unchanged.
///
/// The returned buffer is at baseband (center frequency 0); callers place it
/// on the air with [`IqBuffer::with_center`].
pub fn fm_modulate(audio: &SampleBuffer, deviation_hz: f64) -> Result<IqBuffer> {
    let fs = audio.sample_rate_hz();
    check_deviation(deviation_hz, fs)?;
    let gain = TAU * deviation_hz / fs;
    let mut phase = 0.0f64;
    let samples: Vec<Complex64> = audio
        .samples()
        .iter()
        .map(|&x| {
            phase = libm::remainder(phase + gain * x, TAU);
            Complex64::new(libm::cos(phase), libm::sin(phase))
        })
        .collect();
    IqBuffer::new(samples, fs, 0.0)
}

/// Quadrature discriminator: `y[k] = arg(s[k] conj(s[k-1])) * fs / (2 pi dev)`
/// with `s[-1] = 1`, so a buffer produced by [`fm_modulate`] with the same
/// deviation is mapped back to the original audio scale.
pub fn fm_demodulate(iq: &IqBuffer, deviation_hz: f64) -> Result<SampleBuffer> {
    if iq.is_empty() {
        return Err(Error::EmptyBuffer);
    }
    let fs = iq.sample_rate_hz();
    check_deviation(deviation_hz, fs)?;
    let scale = fs / (TAU * deviation_hz);
    let mut prev = Complex64::new(1.0, 0.0);
    let out: Vec<f64> = iq
        .samples()
        .iter()
        .map(|&s| {
            let d = s * prev.conj();
            prev = s;
            let dphi = if d.re == 0.0 && d.im == 0.0 {
                0.0
            } else {
                libm::atan2(d.im, d.re)
            };
            debug_assert!(dphi.abs() <= PI);
            dphi * scale
        })
        .collect();
    SampleBuffer::new(out, fs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn buf(samples: Vec<f64>, fs: f64) -> SampleBuffer {
        SampleBuffer::new(samples, fs).unwrap()
    }

    #[test]
    fn silence_gives_pure_carrier() {
        let iq = fm_modulate(&buf(vec![0.0; 64], 48_000.0), 5_000.0).unwrap();
        let first = iq.samples()[0];
        assert_eq!(first, Complex64::new(1.0, 0.0));
        assert!(iq.samples().iter().all(|&s| s == first));
        let back = fm_demodulate(&iq, 5_000.0).unwrap();
        assert!(back.samples().iter().all(|&y| y == 0.0));
    }

    #[test]
    fn full_scale_dc_is_exact_deviation() {
        let fs = 48_000.0;
        let dev = 3_000.0;
        let iq = fm_modulate(&buf(vec![1.0; 256], fs), dev).unwrap();
        let step = TAU * dev / fs;
        for w in iq.samples().windows(2) {
            let d = w[1] * w[0].conj();
            let inst_hz = libm::atan2(d.im, d.re) * fs / TAU;
            assert!((inst_hz - dev).abs() < 1e-6, "{inst_hz}");
            assert!((libm::atan2(d.im, d.re) - step).abs() < 1e-12);
        }
        let back = fm_demodulate(&iq, dev).unwrap();
        assert!(back.samples()[1..].iter().all(|y| (y - 1.0).abs() < 1e-9));
    }

    #[test]
    fn output_has_unit_magnitude_and_same_rate() {
        let audio = buf((0..100).map(|k| libm::sin(k as f64 * 0.3)).collect(), 10_000.0);
        let iq = fm_modulate(&audio, 1_000.0).unwrap();
        assert_eq!(iq.sample_rate_hz(), 10_000.0);
        assert!(iq.samples().iter().all(|s| (s.norm_sqr() - 1.0).abs() < 1e-12));
    }

    #[test]
    fn deviation_at_or_above_nyquist_rejected() {
        let audio = buf(vec![0.0; 4], 48_000.0);
        assert!(matches!(
            fm_modulate(&audio, 24_000.0),
            Err(Error::InvalidDeviation { .. })
        ));
        assert!(fm_modulate(&audio, 23_999.0).is_ok());
        assert!(fm_modulate(&audio, 0.0).is_err());
    }

    #[test]
    fn demodulating_nothing_is_an_error() {
        let iq = IqBuffer::new(vec![], 1_000.0, 0.0).unwrap();
        assert_eq!(fm_demodulate(&iq, 100.0), Err(Error::EmptyBuffer));
    }
}
