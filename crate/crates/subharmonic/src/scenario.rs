//! JSON scenario files.
//!
//! Every field is required; there are no serde defaults. Frequencies are
//! integer Hz.

use std::path::Path;

use serde::{Deserialize, Serialize};
use subharmonic_core::channel::ChannelModel;
use subharmonic_core::dsp::NoiseSpec;
use subharmonic_core::emitter::{BandpassFilter, BandwidthModel, EmitterModel, JamWaveform, Rolloff};
use subharmonic_core::link::LinkConfig;
use subharmonic_core::planner::ScenarioConfig;

use crate::error::CliError;

/// The calibrated default shipped with the tool.
pub const DEFAULT_SCENARIO_JSON: &str = include_str!("../scenarios/default.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub emitter: EmitterFile,
    pub waveform: WaveformFile,
    pub channel_jam: ChannelFile,
    pub channel_mic: ChannelFile,
    pub link: LinkFile,
    pub mic_tx_power_dbm: f64,
    pub n_orders_max: u32,
    pub duration_ticks: u32,
    pub noise: NoiseFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmitterFile {
    pub fundamental_freq_hz: u64,
    pub tx_power_dbm: f64,
    pub max_carrier_hz: u64,
    pub rolloff: RolloffFile,
    pub attenuation_db: f64,
    pub filter: Option<FilterFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RolloffFile {
    Envelope,
    RectPulse { duty: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterFile {
    pub center: FilterCenter,
    pub passband_width_hz: u64,
    pub stopband_atten_db: f64,
}

/// `"fundamental"` keeps the filter on whatever carrier the jammer uses;
/// `{"fixed_hz": N}` pins it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterCenter {
    Fundamental,
    FixedHz(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandwidthModelFile {
    CarsonScaled,
    Constant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveformFile {
    pub deviation_hz: u64,
    pub audio_bw_hz: u64,
    pub bandwidth_model: BandwidthModelFile,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelFile {
    pub distance_m: f64,
    pub extra_loss_db: f64,
    pub noise_floor_dbm_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkFile {
    pub band_lo_hz: u64,
    pub band_hi_hz: u64,
    pub handshake_freq_hz: u64,
    pub n_hop_channels: u32,
    pub hop_seed: u64,
    pub handshake_windows: u32,
    pub jam_threshold_js_db: f64,
    pub jam_break_fraction: f64,
    pub wired_handshake: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseFile {
    pub seed: u64,
    pub n_samples: usize,
    pub sample_rate_hz: u64,
}

impl From<&ChannelFile> for ChannelModel {
    fn from(c: &ChannelFile) -> Self {
        ChannelModel {
            distance_m: c.distance_m,
            extra_loss_db: c.extra_loss_db,
            noise_floor_dbm_hz: c.noise_floor_dbm_hz,
        }
    }
}

impl From<&ChannelModel> for ChannelFile {
    fn from(c: &ChannelModel) -> Self {
        ChannelFile {
            distance_m: c.distance_m,
            extra_loss_db: c.extra_loss_db,
            noise_floor_dbm_hz: c.noise_floor_dbm_hz,
        }
    }
}

impl ScenarioFile {
    pub fn to_config(&self) -> ScenarioConfig {
        let e = &self.emitter;
        let fundamental = e.fundamental_freq_hz as f64;
        let filter = e.filter.as_ref().map(|f| {
            let (center_hz, tracks) = match f.center {
                FilterCenter::Fundamental => (fundamental, true),
                FilterCenter::FixedHz(hz) => (hz as f64, false),
            };
            BandpassFilter {
                center_hz,
                passband_width_hz: f.passband_width_hz as f64,
                stopband_atten_db: f.stopband_atten_db,
                tracks_fundamental: tracks,
            }
        });
        let l = &self.link;
        ScenarioConfig {
            emitter: EmitterModel {
                fundamental_freq_hz: fundamental,
                tx_power_dbm: e.tx_power_dbm,
                max_carrier_hz: e.max_carrier_hz as f64,
                rolloff: match e.rolloff {
                    RolloffFile::Envelope => Rolloff::Envelope,
                    RolloffFile::RectPulse { duty } => Rolloff::RectPulse { duty },
                },
                attenuation_db: e.attenuation_db,
                filter,
            },
            waveform: JamWaveform {
                deviation_hz: self.waveform.deviation_hz as f64,
                audio_bw_hz: self.waveform.audio_bw_hz as f64,
                bandwidth_model: match self.waveform.bandwidth_model {
                    BandwidthModelFile::CarsonScaled => BandwidthModel::CarsonScaled,
                    BandwidthModelFile::Constant => BandwidthModel::Constant,
                },
            },
            channel_jam: (&self.channel_jam).into(),
            channel_mic: (&self.channel_mic).into(),
            link: LinkConfig {
                band_lo_hz: l.band_lo_hz,
                band_hi_hz: l.band_hi_hz,
                handshake_freq_hz: l.handshake_freq_hz,
                n_hop_channels: l.n_hop_channels,
                hop_seed: l.hop_seed,
                handshake_windows: l.handshake_windows,
                jam_threshold_js_db: l.jam_threshold_js_db,
                jam_break_fraction: l.jam_break_fraction,
                wired_handshake: l.wired_handshake,
            },
            mic_tx_power_dbm: self.mic_tx_power_dbm,
            n_orders_max: self.n_orders_max,
            duration_ticks: self.duration_ticks,
            noise: NoiseSpec {
                seed: self.noise.seed,
                n_samples: self.noise.n_samples,
                sample_rate_hz: self.noise.sample_rate_hz as f64,
            },
        }
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, CliError> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| CliError::Scenario {
            path: origin.to_string(),
            msg: e.to_string(),
        })?;
        file.to_config()
            .validate()
            .map_err(|e| CliError::Scenario {
                path: origin.to_string(),
                msg: e.to_string(),
            })?;
        Ok(file)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Scenario {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn builtin_default() -> Self {
        Self::parse(DEFAULT_SCENARIO_JSON, "<builtin default>")
            .expect("shipped default scenario is valid")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario serializes");
        s.push('\n');
        s
    }
}
