//! Microphone/receiver link: a fixed-frequency handshake that hands over to
//! a seeded hop sequence.
//!
//! The handshake is the vulnerable window. A jammer sitting on the handshake
//! channel before power-on keeps the pair from ever linking; once hopping
//! has started, a jammer on one channel is not enough to tear the link down.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::channel::{received_power_dbm, ChannelModel};
use crate::emitter::{emitted_lines, BandwidthModel, EmitterModel, JamWaveform};
use crate::rng::DetRng;
use crate::units::{sum_db, POWER_FLOOR_DB};
use crate::{Error, Result};

/// Jammer-to-signal ratio in dB, keyed by channel frequency in Hz.
pub type JsMap = BTreeMap<u64, f64>;

#[derive(Debug, Clone, PartialEq)]
pub struct LinkConfig {
    pub band_lo_hz: u64,
    pub band_hi_hz: u64,
    pub handshake_freq_hz: u64,
    pub n_hop_channels: u32,
    pub hop_seed: u64,
    /// Failed handshake windows before the link reports `Blocked`.
    pub handshake_windows: u32,
    /// A channel is denied when its J/S is at or above this level.
    pub jam_threshold_js_db: f64,
    /// Fraction of denied hop channels that breaks an established link.
    pub jam_break_fraction: f64,
    /// Handshake over the charging-dock contacts instead of over the air.
    pub wired_handshake: bool,
}

impl LinkConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.band_lo_hz < self.handshake_freq_hz && self.handshake_freq_hz < self.band_hi_hz) {
            return Err(Error::InvalidLinkConfig(
                "handshake frequency must lie strictly inside the band",
            ));
        }
        if self.n_hop_channels == 0 {
            return Err(Error::InvalidLinkConfig("n_hop_channels must be at least 1"));
        }
        if self.handshake_windows == 0 {
            return Err(Error::InvalidLinkConfig("handshake_windows must be at least 1"));
        }
        if !(self.jam_break_fraction > 0.0 && self.jam_break_fraction <= 1.0) {
            return Err(Error::InvalidLinkConfig("jam_break_fraction must lie in (0, 1]"));
        }
        if !self.jam_threshold_js_db.is_finite() {
            return Err(Error::InvalidLinkConfig("jam_threshold_js_db must be finite"));
        }
        Ok(())
    }

    /// Channel centers: the band split into `n_hop_channels` equal slots,
    /// one channel in the middle of each (rounded down to whole Hz).
    pub fn channel_grid(&self) -> Vec<u64> {
        let lo = self.band_lo_hz as u128;
        let width = (self.band_hi_hz - self.band_lo_hz) as u128;
        let n = self.n_hop_channels as u128;
        (0..n)
            .map(|k| (lo + (2 * k + 1) * width / (2 * n)) as u64)
            .collect()
    }

    /// Every frequency [`step`] may consult.
    pub fn monitored_freqs(&self) -> Vec<u64> {
        let mut f = self.channel_grid();
        f.push(self.handshake_freq_hz);
        f.sort_unstable();
        f.dedup();
        f
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinkState {
    Unlinked,
    Handshaking { window: u32 },
    Linked { hop_sequence: Vec<u64>, hop_index: usize },
    Blocked,
}

impl LinkState {
    pub fn label(&self) -> &'static str {
        match self {
            LinkState::Unlinked => "Unlinked",
            LinkState::Handshaking { .. } => "Handshaking",
            LinkState::Linked { .. } => "Linked",
            LinkState::Blocked => "Blocked",
        }
    }

    pub fn is_linked(&self) -> bool {
        matches!(self, LinkState::Linked { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LinkEvent {
    PowerOn,
    PowerOff,
    BatteryPull,
    Tick { js_by_freq: JsMap },
}

/// Fisher-Yates shuffle of [`LinkConfig::channel_grid`] driven by
/// `DetRng::new(hop_seed)`: for `i` from `n-1` down to 1, swap `i` with
/// `below(i + 1)`.
pub fn hop_sequence(config: &LinkConfig) -> Vec<u64> {
    let mut grid = config.channel_grid();
    let mut rng = DetRng::new(config.hop_seed);
    for i in (1..grid.len()).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        grid.swap(i, j);
    }
    grid
}

fn lookup(js: &JsMap, freq_hz: u64) -> Result<f64> {
    js.get(&freq_hz)
        .copied()
        .ok_or(Error::MissingFrequency(freq_hz))
}

fn handshake_clears(js: &JsMap, config: &LinkConfig) -> Result<bool> {
    if config.wired_handshake {
        return Ok(true);
    }
    Ok(lookup(js, config.handshake_freq_hz)? < config.jam_threshold_js_db)
}

fn fresh_link(config: &LinkConfig) -> LinkState {
    LinkState::Linked {
        hop_sequence: hop_sequence(config),
        hop_index: 0,
    }
}

/// Fraction of `channels` whose J/S is at or above the threshold.
pub fn jammed_fraction(js: &JsMap, channels: &[u64], threshold_db: f64) -> Result<f64> {
    let mut jammed = 0usize;
    for &c in channels {
        if lookup(js, c)? >= threshold_db {
            jammed += 1;
        }
    }
    Ok(jammed as f64 / channels.len().max(1) as f64)
}

/// One transition of the link state machine.
pub fn step(state: LinkState, event: &LinkEvent, config: &LinkConfig) -> Result<LinkState> {
    let js = match event {
        LinkEvent::PowerOff | LinkEvent::BatteryPull => return Ok(LinkState::Unlinked),
        LinkEvent::PowerOn => {
            return Ok(match state {
                LinkState::Unlinked => LinkState::Handshaking { window: 0 },
                other => other,
            })
        }
        LinkEvent::Tick { js_by_freq } => js_by_freq,
    };
    Ok(match state {
        LinkState::Unlinked => LinkState::Unlinked,
        LinkState::Handshaking { window } => {
            if handshake_clears(js, config)? {
                fresh_link(config)
            } else if window + 1 >= config.handshake_windows {
                LinkState::Blocked
            } else {
                LinkState::Handshaking { window: window + 1 }
            }
        }
        LinkState::Blocked => {
            if handshake_clears(js, config)? {
                fresh_link(config)
            } else {
                LinkState::Blocked
            }
        }
        LinkState::Linked {
            hop_sequence,
            hop_index,
        } => {
            let j = jammed_fraction(js, &hop_sequence, config.jam_threshold_js_db)?;
            if j >= config.jam_break_fraction {
                LinkState::Unlinked
            } else {
                let hop_index = (hop_index + 1) % hop_sequence.len();
                LinkState::Linked {
                    hop_sequence,
                    hop_index,
                }
            }
        }
    })
}

/// RF side of a run: the jammer, what it transmits, and both paths to the
/// receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RfEnvironment {
    pub emitter: EmitterModel,
    pub waveform: JamWaveform,
    pub channel_jam: ChannelModel,
    pub channel_mic: ChannelModel,
    pub mic_tx_power_dbm: f64,
}

impl RfEnvironment {
    /// J/S at each frequency. Every harmonic line whose occupied band covers
    /// a frequency contributes its received power there; with the jammer off
    /// (or no line covering) the jammer term is the -300 dBm floor.
    pub fn js_map(&self, freqs: &[u64], jam_active: bool) -> Result<JsMap> {
        let lines = if jam_active {
            let top = freqs.iter().copied().max().unwrap_or(0) as f64;
            emitted_lines(&self.emitter, &self.waveform, self.orders_reaching(top))?
        } else {
            Vec::new()
        };
        let mut map = JsMap::new();
        for &f in freqs {
            let fh = f as f64;
            let signal = received_power_dbm(self.mic_tx_power_dbm, fh, &self.channel_mic)?;
            let mut parts = Vec::new();
            for line in lines.iter().filter(|l| l.covers(fh)) {
                parts.push(received_power_dbm(line.power_dbm, line.freq_hz, &self.channel_jam)?);
            }
            let jam = if parts.is_empty() {
                POWER_FLOOR_DB
            } else {
                sum_db(parts)
            };
            map.insert(f, jam - signal);
        }
        Ok(map)
    }

    /// Highest order whose occupied band can still reach `top_hz`.
    fn orders_reaching(&self, top_hz: f64) -> u32 {
        const CAP: u32 = 4096;
        let f = self.emitter.fundamental_freq_hz;
        let mut n = 1;
        while n < CAP {
            let dev = match self.waveform.bandwidth_model {
                BandwidthModel::CarsonScaled => n as f64 * self.waveform.deviation_hz,
                BandwidthModel::Constant => self.waveform.deviation_hz,
            };
            if n as f64 * f - (dev + self.waveform.audio_bw_hz) > top_hz {
                break;
            }
            n += 1;
        }
        n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeviceAction {
    PowerOn,
    PowerOff,
    BatteryPull,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeviceEvent {
    pub tick: u32,
    pub action: DeviceAction,
}

/// Jammer switched on (`active = true`) or off at `tick`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JamToggle {
    pub tick: u32,
    pub active: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TranscriptRow {
    pub tick: u32,
    pub state: LinkState,
    pub handshake_js_db: f64,
    pub jammed_fraction: f64,
}

/// Device events and jam toggles of one run. The jammer starts switched off.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Schedule {
    pub jam: Vec<JamToggle>,
    pub devices: Vec<DeviceEvent>,
}

impl Schedule {
    /// Microphone powered on at tick 0, jammer switched on at `jam_start`.
    pub fn power_on_then_jam(jam_start: Option<u32>) -> Self {
        Self {
            jam: jam_start
                .map(|tick| JamToggle { tick, active: true })
                .into_iter()
                .collect(),
            devices: alloc::vec![DeviceEvent {
                tick: 0,
                action: DeviceAction::PowerOn,
            }],
        }
    }
}

/// Drives [`step`] for `duration_ticks` ticks. Within a tick, device events
/// apply first (in schedule order), then jam toggles, then one `Tick` whose
/// J/S values come from `env`. Row `t` holds the state after tick `t`.
pub fn run_scenario(
    config: &LinkConfig,
    schedule: &Schedule,
    env: &RfEnvironment,
    duration_ticks: u32,
) -> Result<Vec<TranscriptRow>> {
    if duration_ticks == 0 {
        return Err(Error::ZeroDuration);
    }
    config.validate()?;
    let ticks = schedule
        .jam
        .iter()
        .map(|j| j.tick)
        .chain(schedule.devices.iter().map(|d| d.tick));
    for tick in ticks {
        if tick >= duration_ticks {
            return Err(Error::ScheduleOutOfRange {
                tick,
                duration: duration_ticks,
            });
        }
    }

    let freqs = config.monitored_freqs();
    let grid = config.channel_grid();
    let quiet = env.js_map(&freqs, false)?;
    let jammed = env.js_map(&freqs, true)?;

    let mut state = LinkState::Unlinked;
    let mut jam_active = false;
    let mut rows = Vec::with_capacity(duration_ticks as usize);
    for tick in 0..duration_ticks {
        for d in schedule.devices.iter().filter(|d| d.tick == tick) {
            let ev = match d.action {
                DeviceAction::PowerOn => LinkEvent::PowerOn,
                DeviceAction::PowerOff => LinkEvent::PowerOff,
                DeviceAction::BatteryPull => LinkEvent::BatteryPull,
            };
            state = step(state, &ev, config)?;
        }
        for j in schedule.jam.iter().filter(|j| j.tick == tick) {
            jam_active = j.active;
        }
        let js = if jam_active { &jammed } else { &quiet };
        let handshake_js_db = lookup(js, config.handshake_freq_hz)?;
        let jammed_fraction = jammed_fraction(js, &grid, config.jam_threshold_js_db)?;
        state = step(
            state,
            &LinkEvent::Tick {
                js_by_freq: js.clone(),
            },
            config,
        )?;
        rows.push(TranscriptRow {
            tick,
            state: state.clone(),
            handshake_js_db,
            jammed_fraction,
        });
    }
    Ok(rows)
}
