//! Sub-harmonic carrier planning.
//!
//! A carrier below the emitter's ceiling reaches a higher target through its
//! `n`th harmonic when tuned to `target / n`. All candidate lines land on the
//! same target frequency, so path loss is common to every order and the
//! verdict is decided by harmonic rolloff alone.
//!
//! The shipped [`ScenarioConfig::calibrated_default`] is a calibration, not a
//! prediction: the mic path carries 21 dB of extra loss chosen so orders 2-4
//! clear the 0 dB J/S threshold and order 5 falls short. Under the `1/n`
//! envelope the J/S at the target is `13.04 - 20 log10(n)` dB:
//! about 7.02, 3.50, 1.00 and -0.94 dB for n = 2..5.

use alloc::vec::Vec;

use crate::channel::{received_power_dbm, ChannelModel};
use crate::dsp::NoiseSpec;
use crate::emitter::{emitted_lines, BandwidthModel, EmitterModel, JamWaveform, Rolloff};
use crate::link::{run_scenario, LinkConfig, RfEnvironment, Schedule};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Success,
    Fail,
}

impl Verdict {
    pub fn is_success(self) -> bool {
        self == Verdict::Success
    }

    pub fn inverted(self) -> Self {
        match self {
            Verdict::Success => Verdict::Fail,
            Verdict::Fail => Verdict::Success,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JamPlan {
    pub target_freq_hz: f64,
    pub order: u32,
    pub carrier_freq_hz: f64,
    pub predicted_jam_power_dbm: f64,
    pub predicted_js_db: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub emitter: EmitterModel,
    pub waveform: JamWaveform,
    /// Jammer to receiver.
    pub channel_jam: ChannelModel,
    /// Microphone to receiver.
    pub channel_mic: ChannelModel,
    pub link: LinkConfig,
    pub mic_tx_power_dbm: f64,
    pub n_orders_max: u32,
    pub duration_ticks: u32,
    pub noise: NoiseSpec,
}

impl ScenarioConfig {
    pub fn calibrated_default() -> Self {
        Self {
            emitter: EmitterModel {
                fundamental_freq_hz: 307e6,
                tx_power_dbm: 10.0,
                max_carrier_hz: 500e6,
                rolloff: Rolloff::Envelope,
                attenuation_db: 0.0,
                filter: None,
            },
            waveform: JamWaveform {
                deviation_hz: 75e3,
                audio_bw_hz: 24e3,
                bandwidth_model: BandwidthModel::CarsonScaled,
            },
            channel_jam: ChannelModel {
                distance_m: 5.0,
                extra_loss_db: 0.0,
                noise_floor_dbm_hz: -174.0,
            },
            channel_mic: ChannelModel {
                distance_m: 2.0,
                extra_loss_db: 21.0,
                noise_floor_dbm_hz: -174.0,
            },
            link: LinkConfig {
                band_lo_hz: 606_000_000,
                band_hi_hz: 670_000_000,
                handshake_freq_hz: 614_000_000,
                n_hop_channels: 16,
                hop_seed: 42,
                handshake_windows: 3,
                jam_threshold_js_db: 0.0,
                jam_break_fraction: 0.5,
                wired_handshake: false,
            },
            mic_tx_power_dbm: 10.0,
            n_orders_max: 5,
            duration_ticks: 100,
            noise: NoiseSpec {
                seed: 7,
                n_samples: 240_000,
                sample_rate_hz: 48_000.0,
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.emitter.validate()?;
        self.channel_jam.validate()?;
        self.channel_mic.validate()?;
        self.link.validate()?;
        if self.n_orders_max == 0 {
            return Err(Error::ZeroOrder);
        }
        if self.duration_ticks == 0 {
            return Err(Error::ZeroDuration);
        }
        Ok(())
    }

    /// RF environment with the jammer retuned to `carrier_hz`.
    pub fn environment(&self, carrier_hz: f64) -> RfEnvironment {
        RfEnvironment {
            emitter: self.emitter.with_fundamental(carrier_hz),
            waveform: self.waveform,
            channel_jam: self.channel_jam,
            channel_mic: self.channel_mic,
            mic_tx_power_dbm: self.mic_tx_power_dbm,
        }
    }
}

pub fn carrier_for_harmonic(target_freq_hz: f64, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(target_freq_hz / n as f64)
}

/// Lowest order whose carrier fits under the emitter ceiling.
pub fn min_order(target_freq_hz: f64, max_carrier_hz: f64) -> u32 {
    libm::ceil(target_freq_hz / max_carrier_hz).max(1.0) as u32
}

/// Prediction for a single order. Fails if the carrier exceeds the ceiling.
pub fn plan_order(scenario: &ScenarioConfig, target_freq_hz: f64, n: u32) -> Result<JamPlan> {
    let carrier = carrier_for_harmonic(target_freq_hz, n)?;
    let emitter = scenario.emitter.with_fundamental(carrier);
    emitter.check_ceiling()?;
    let lines = emitted_lines(&emitter, &scenario.waveform, n)?;
    let jam = match lines.iter().find(|l| l.order == n) {
        Some(line) => received_power_dbm(line.power_dbm, line.freq_hz, &scenario.channel_jam)?,
        None => crate::units::POWER_FLOOR_DB,
    };
    let signal = received_power_dbm(
        scenario.mic_tx_power_dbm,
        target_freq_hz,
        &scenario.channel_mic,
    )?;
    let js = jam - signal;
    // a wired handshake never goes over the air, so no order can deny it
    let verdict = if js >= scenario.link.jam_threshold_js_db && !scenario.link.wired_handshake {
        Verdict::Success
    } else {
        Verdict::Fail
    };
    Ok(JamPlan {
        target_freq_hz,
        order: n,
        carrier_freq_hz: carrier,
        predicted_jam_power_dbm: jam,
        predicted_js_db: js,
        verdict,
    })
}

/// One plan per order from the lowest feasible order up to
/// `n_orders_max`, ascending. A target at or below the ceiling is
/// transmitted directly and yields a single order-1 plan.
pub fn plan(scenario: &ScenarioConfig, target_freq_hz: f64) -> Result<Vec<JamPlan>> {
    scenario.validate()?;
    if target_freq_hz <= scenario.emitter.max_carrier_hz {
        return Ok(alloc::vec![plan_order(scenario, target_freq_hz, 1)?]);
    }
    let n_min = min_order(target_freq_hz, scenario.emitter.max_carrier_hz);
    if n_min > scenario.n_orders_max {
        return Err(Error::NoFeasibleOrder {
            n_min,
            n_max: scenario.n_orders_max,
        });
    }
    (n_min..=scenario.n_orders_max)
        .map(|n| plan_order(scenario, target_freq_hz, n))
        .collect()
}

/// Runs the link simulation with the jammer on the plan's carrier from
/// tick 0 and checks the outcome against the verdict: a `Success` plan must
/// keep the link down for the whole run, a `Fail` plan must let it up.
pub fn verify_plan(plan: &JamPlan, scenario: &ScenarioConfig) -> Result<bool> {
    let env = scenario.environment(plan.carrier_freq_hz);
    let transcript = run_scenario(
        &scenario.link,
        &Schedule::power_on_then_jam(Some(0)),
        &env,
        scenario.duration_ticks,
    )?;
    let never_linked = transcript.iter().all(|r| !r.state.is_linked());
    Ok(plan.verdict.is_success() == never_linked)
}
