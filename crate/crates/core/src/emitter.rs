//! Harmonic emission of an unfiltered square-wave-clock transmitter.
//!
//! A clocked GPIO transmitter radiates at every integer multiple `n * f` of
//! its carrier `f`. Line `n` carries the carrier's power scaled by the
//! rolloff model, minus any attenuator and bandpass-filter loss.

use alloc::vec::Vec;

use crate::units::{to_db, POWER_FLOOR_DB};
use crate::{Error, Result};

/// Duty cycle used when the rectangular-pulse rolloff is picked without one.
pub const DEFAULT_DUTY: f64 = 0.45;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rolloff {
    /// Harmonic amplitude proportional to `1/n`.
    Envelope,
    /// Fourier series of a rectangular pulse train with the given duty cycle.
    RectPulse { duty: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandwidthModel {
    /// Carson's rule with the deviation multiplied by the harmonic order.
    CarsonScaled,
    /// Carson's rule of the fundamental for every order.
    Constant,
}

/// Brick-wall bandpass filter: no loss inside `center +- width/2` (edges
/// inclusive), `stopband_atten_db` everywhere else.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandpassFilter {
    pub center_hz: f64,
    pub passband_width_hz: f64,
    pub stopband_atten_db: f64,
    /// Retune `center_hz` whenever the emitter's carrier changes.
    pub tracks_fundamental: bool,
}

impl BandpassFilter {
    pub fn passes(&self, freq_hz: f64) -> bool {
        (freq_hz - self.center_hz).abs() <= self.passband_width_hz / 2.0
    }
}

/// The modulating signal as seen by the bandwidth model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JamWaveform {
    pub deviation_hz: f64,
    pub audio_bw_hz: f64,
    pub bandwidth_model: BandwidthModel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmitterModel {
    pub fundamental_freq_hz: f64,
    pub tx_power_dbm: f64,
    pub max_carrier_hz: f64,
    pub rolloff: Rolloff,
    pub attenuation_db: f64,
    pub filter: Option<BandpassFilter>,
}

impl EmitterModel {
    pub fn validate(&self) -> Result<()> {
        if let Rolloff::RectPulse { duty } = self.rolloff {
            if !(duty > 0.0 && duty < 1.0) {
                return Err(Error::InvalidDuty(duty));
            }
        }
        Ok(())
    }

    /// Same emitter retuned to a new carrier; a tracking filter follows it.
    pub fn with_fundamental(mut self, freq_hz: f64) -> Self {
        self.fundamental_freq_hz = freq_hz;
        if let Some(f) = self.filter.as_mut() {
            if f.tracks_fundamental {
                f.center_hz = freq_hz;
            }
        }
        self
    }

    pub fn check_ceiling(&self) -> Result<()> {
        if self.fundamental_freq_hz > self.max_carrier_hz {
            Err(Error::CarrierAboveCeiling {
                carrier_hz: self.fundamental_freq_hz,
                max_hz: self.max_carrier_hz,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicLine {
    pub order: u32,
    pub freq_hz: f64,
    pub power_dbm: f64,
    pub occupied_bw_hz: f64,
}

impl HarmonicLine {
    pub fn covers(&self, freq_hz: f64) -> bool {
        (freq_hz - self.freq_hz).abs() <= self.occupied_bw_hz / 2.0
    }
}

/// `n * f`. (The angular form `2 pi f n` is the same line expressed in rad/s.)
pub fn harmonic_frequency(model: &EmitterModel, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(n as f64 * model.fundamental_freq_hz)
}

/// Level of harmonic `n` relative to the fundamental, floored at -300 dB.
pub fn harmonic_level_dbc(model: &EmitterModel, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let ratio = match model.rolloff {
        Rolloff::Envelope => 1.0 / n as f64,
        Rolloff::RectPulse { duty } => {
            if !(duty > 0.0 && duty < 1.0) {
                return Err(Error::InvalidDuty(duty));
            }
            let pi_d = core::f64::consts::PI * duty;
            let a_n = libm::fabs(libm::sin(n as f64 * pi_d)) / n as f64;
            a_n / libm::fabs(libm::sin(pi_d))
        }
    };
    Ok(to_db(ratio * ratio))
}

pub fn filter_rejection(filter: Option<&BandpassFilter>, freq_hz: f64) -> f64 {
    match filter {
        Some(f) if !f.passes(freq_hz) => f.stopband_atten_db,
        _ => 0.0,
    }
}

/// Lines for orders `1..=n_max`. Lines weaker than -300 dBm are dropped.
pub fn emitted_lines(
    model: &EmitterModel,
    waveform: &JamWaveform,
    n_max: u32,
) -> Result<Vec<HarmonicLine>> {
    if n_max == 0 {
        return Err(Error::ZeroOrder);
    }
    model.validate()?;
    let mut lines = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let freq_hz = harmonic_frequency(model, n)?;
        let power_dbm = model.tx_power_dbm + harmonic_level_dbc(model, n)?
            - model.attenuation_db
            - filter_rejection(model.filter.as_ref(), freq_hz);
        if power_dbm < POWER_FLOOR_DB {
            continue;
        }
        let dev = match waveform.bandwidth_model {
            BandwidthModel::CarsonScaled => n as f64 * waveform.deviation_hz,
            BandwidthModel::Constant => waveform.deviation_hz,
        };
        lines.push(HarmonicLine {
            order: n,
            freq_hz,
            power_dbm,
            occupied_bw_hz: 2.0 * (dev + waveform.audio_bw_hz),
        });
    }
    Ok(lines)
}
