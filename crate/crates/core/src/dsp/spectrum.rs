use core::f64::consts::PI;

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::{fft_in_place, IqBuffer, SampleBuffer};
use crate::units::{from_db, to_db};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Window {
    Rectangular,
    Hann,
}

impl Window {
    fn coefficients(self, n: usize) -> Vec<f64> {
        match self {
            Window::Rectangular => vec![1.0; n],
            // periodic Hann, so 50% overlapped windows sum to a constant
            Window::Hann => (0..n)
                .map(|i| 0.5 - 0.5 * libm::cos(2.0 * PI * i as f64 / n as f64))
                .collect(),
        }
    }
}

/// Anything [`power_spectrum`] can analyse.
pub trait SpectralSource {
    fn sample_rate_hz(&self) -> f64;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn segment(&self, start: usize, n: usize) -> Vec<Complex64>;
    /// Real signals produce a one-sided spectrum over `[0, fs/2]`; complex
    /// ones a two-sided spectrum centered on this frequency.
    fn center_freq_hz(&self) -> Option<f64>;
}

impl SpectralSource for SampleBuffer {
    fn sample_rate_hz(&self) -> f64 {
        SampleBuffer::sample_rate_hz(self)
    }
    fn len(&self) -> usize {
        SampleBuffer::len(self)
    }
    fn segment(&self, start: usize, n: usize) -> Vec<Complex64> {
        self.samples()[start..start + n]
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect()
    }
    fn center_freq_hz(&self) -> Option<f64> {
        None
    }
}

impl SpectralSource for IqBuffer {
    fn sample_rate_hz(&self) -> f64 {
        IqBuffer::sample_rate_hz(self)
    }
    fn len(&self) -> usize {
        IqBuffer::len(self)
    }
    fn segment(&self, start: usize, n: usize) -> Vec<Complex64> {
        self.samples()[start..start + n].to_vec()
    }
    fn center_freq_hz(&self) -> Option<f64> {
        Some(IqBuffer::center_freq_hz(self))
    }
}

/// Power per bin in dB relative to full scale. Bins are uniformly spaced
/// by `rbw_hz` in increasing frequency order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    bin_freqs_hz: Vec<f64>,
    power_db: Vec<f64>,
    rbw_hz: f64,
}

impl Spectrum {
    pub fn bin_freqs_hz(&self) -> &[f64] {
        &self.bin_freqs_hz
    }

    pub fn power_db(&self) -> &[f64] {
        &self.power_db
    }

    pub fn rbw_hz(&self) -> f64 {
        self.rbw_hz
    }

    pub fn len(&self) -> usize {
        self.power_db.len()
    }

    pub fn is_empty(&self) -> bool {
        self.power_db.is_empty()
    }

    pub fn total_power_linear(&self) -> f64 {
        self.power_db.iter().map(|&p| from_db(p)).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.bin_freqs_hz
            .iter()
            .copied()
            .zip(self.power_db.iter().copied())
    }
}

/// Welch average of windowed periodograms with 50% overlap and no zero
/// padding. `floor((len - n_fft/2) / (n_fft/2))` segments are averaged.
///
/// Each periodogram bin is `|X[k]|^2 / (n_fft * sum w^2)`, so with a
/// rectangular window the bins of a single segment sum to the segment's mean
/// square. Real inputs fold negative frequencies onto the positive ones.
pub fn power_spectrum<S: SpectralSource + ?Sized>(
    buffer: &S,
    n_fft: usize,
    window: Window,
) -> Result<Spectrum> {
    if n_fft < 2 || !n_fft.is_power_of_two() {
        return Err(Error::FftNotPowerOfTwo(n_fft));
    }
    let len = buffer.len();
    if len < n_fft {
        return Err(Error::BufferTooShort { len, n_fft });
    }
    let hop = n_fft / 2;
    let segments = (len - hop) / hop;
    let w = window.coefficients(n_fft);
    let norm = n_fft as f64 * w.iter().map(|c| c * c).sum::<f64>();

    let mut acc = vec![0.0f64; n_fft];
    for s in 0..segments {
        let mut seg = buffer.segment(s * hop, n_fft);
        seg.iter_mut().zip(&w).for_each(|(x, c)| *x *= *c);
        fft_in_place(&mut seg)?;
        acc.iter_mut()
            .zip(&seg)
            .for_each(|(a, x)| *a += x.norm_sqr() / norm);
    }
    acc.iter_mut().for_each(|a| *a /= segments as f64);

    let fs = buffer.sample_rate_hz();
    let rbw_hz = fs / n_fft as f64;
    let (bin_freqs_hz, linear): (Vec<f64>, Vec<f64>) = match buffer.center_freq_hz() {
        Some(center) => (0..n_fft)
            .map(|k| {
                let src = (k + hop) % n_fft;
                (center + (k as f64 - hop as f64) * rbw_hz, acc[src])
            })
            .unzip(),
        None => (0..=hop)
            .map(|k| {
                let p = if k == 0 || k == hop {
                    acc[k]
                } else {
                    acc[k] + acc[n_fft - k]
                };
                (k as f64 * rbw_hz, p)
            })
            .unzip(),
    };
    Ok(Spectrum {
        bin_freqs_hz,
        power_db: linear.into_iter().map(to_db).collect(),
        rbw_hz,
    })
}

/// Total power (dB) of every bin whose frequency lies in `[f_lo, f_hi]`.
pub fn band_power(spectrum: &Spectrum, f_lo_hz: f64, f_hi_hz: f64) -> Result<f64> {
    let (first, last) = span(spectrum);
    let slack = spectrum.rbw_hz / 2.0;
    if !(f_lo_hz < f_hi_hz && f_lo_hz >= first - slack && f_hi_hz <= last + slack) {
        return Err(Error::InvalidBand {
            lo_hz: f_lo_hz,
            hi_hz: f_hi_hz,
        });
    }
    let mut total = 0.0;
    let mut hit = false;
    for (f, p) in spectrum.iter() {
        if (f_lo_hz..=f_hi_hz).contains(&f) {
            total += from_db(p);
            hit = true;
        }
    }
    if !hit {
        return Err(Error::EmptyBand {
            lo_hz: f_lo_hz,
            hi_hz: f_hi_hz,
        });
    }
    Ok(to_db(total))
}

/// Frequency of the strongest bin; ties go to the lowest frequency.
pub fn find_peak(spectrum: &Spectrum) -> f64 {
    let mut best = 0;
    for (i, &p) in spectrum.power_db.iter().enumerate() {
        if p > spectrum.power_db[best] {
            best = i;
        }
    }
    spectrum.bin_freqs_hz[best]
}

/// Width of the band holding `fraction` of the total power, with the
/// remainder split equally between the two tails.
pub fn occupied_bandwidth(spectrum: &Spectrum, fraction: f64) -> f64 {
    let linear: Vec<f64> = spectrum.power_db.iter().map(|&p| from_db(p)).collect();
    let tail = (1.0 - fraction.clamp(0.0, 1.0)) / 2.0 * linear.iter().sum::<f64>();
    let edge = |mut it: &mut dyn Iterator<Item = (usize, &f64)>| {
        let mut cum = 0.0;
        for (i, p) in &mut it {
            cum += p;
            if cum > tail {
                return i;
            }
        }
        0
    };
    let lo = edge(&mut linear.iter().enumerate());
    let hi = edge(&mut linear.iter().enumerate().rev());
    if hi < lo {
        return spectrum.rbw_hz;
    }
    (hi - lo + 1) as f64 * spectrum.rbw_hz
}

fn span(spectrum: &Spectrum) -> (f64, f64) {
    (
        spectrum.bin_freqs_hz[0],
        spectrum.bin_freqs_hz[spectrum.bin_freqs_hz.len() - 1],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::POWER_FLOOR_DB;

    fn tone(bin: usize, n: usize, amp: f64) -> IqBuffer {
        let samples = (0..n)
            .map(|i| {
                let ph = 2.0 * PI * (bin * i) as f64 / n as f64;
                Complex64::new(amp * libm::cos(ph), amp * libm::sin(ph))
            })
            .collect();
        IqBuffer::new(samples, n as f64, 0.0).unwrap()
    }

    #[test]
    fn bin_centered_tone_occupies_one_bin() {
        let s = power_spectrum(&tone(5, 64, 1.0), 64, Window::Rectangular).unwrap();
        let idx = s.bin_freqs_hz().iter().position(|&f| f == 5.0).unwrap();
        assert!((s.power_db()[idx]).abs() < 1e-9);
        for (i, &p) in s.power_db().iter().enumerate() {
            if i != idx {
                assert!(p <= POWER_FLOOR_DB, "bin {i}: {p}");
            }
        }
    }

    #[test]
    fn dc_lands_in_bin_zero() {
        let dc = SampleBuffer::new(vec![1.0; 128], 1_000.0).unwrap();
        let s = power_spectrum(&dc, 128, Window::Rectangular).unwrap();
        assert_eq!(s.bin_freqs_hz()[0], 0.0);
        assert!((from_db(s.power_db()[0]) - 1.0).abs() < 1e-12);
        assert_eq!(s.len(), 65);
    }

    #[test]
    fn segment_count_follows_half_overlap() {
        // 3 segments from len 256 with n_fft 128: (256-64)/64
        let b = tone(3, 256, 1.0);
        let s = power_spectrum(&b, 128, Window::Hann).unwrap();
        assert!((s.rbw_hz() - 2.0).abs() < 1e-12);
        let w = s.bin_freqs_hz().windows(2).all(|p| (p[1] - p[0] - 2.0).abs() < 1e-9);
        assert!(w);
    }

    #[test]
    fn input_validation() {
        let b = tone(1, 32, 1.0);
        assert_eq!(
            power_spectrum(&b, 64, Window::Hann),
            Err(Error::BufferTooShort { len: 32, n_fft: 64 })
        );
        assert_eq!(
            power_spectrum(&b, 24, Window::Hann),
            Err(Error::FftNotPowerOfTwo(24))
        );
        assert!(power_spectrum(&b, 1, Window::Hann).is_err());
    }

    #[test]
    fn peak_ties_break_low() {
        let flat = Spectrum {
            bin_freqs_hz: vec![10.0, 20.0, 30.0],
            power_db: vec![-3.0, -3.0, -3.0],
            rbw_hz: 10.0,
        };
        assert_eq!(find_peak(&flat), 10.0);
    }

    #[test]
    fn band_edges_and_errors() {
        let s = Spectrum {
            bin_freqs_hz: vec![0.0, 1.0, 2.0, 3.0],
            power_db: vec![0.0, 0.0, 0.0, 0.0],
            rbw_hz: 1.0,
        };
        assert!((band_power(&s, 1.0, 2.0).unwrap() - to_db(2.0)).abs() < 1e-12);
        assert!(band_power(&s, 2.0, 1.0).is_err());
        assert!(band_power(&s, -5.0, 1.0).is_err());
        assert!(matches!(
            band_power(&s, 1.2, 1.8),
            Err(Error::EmptyBand { .. })
        ));
    }

    #[test]
    fn occupied_bandwidth_of_single_bin() {
        let s = power_spectrum(&tone(5, 64, 1.0), 64, Window::Rectangular).unwrap();
        assert_eq!(occupied_bandwidth(&s, 0.99), s.rbw_hz());
    }
}
