//! The subcommands. Each returns the text destined for standard output and
//! writes its files into the output directory.

use std::fs;
use std::path::{Path, PathBuf};

use subharmonic_core::dsp::{
    find_peak, fm_modulate, generate_white_noise, occupied_bandwidth, power_spectrum, IqBuffer,
    SampleBuffer, Spectrum, Window,
};
use subharmonic_core::link::{run_scenario, DeviceAction, DeviceEvent, Schedule};
use subharmonic_core::planner::{plan, plan_order, verify_plan, ScenarioConfig};

use crate::error::{from_core, CliError};
use crate::manifest::RunManifest;
use crate::report::{self, fmt_mhz, Table1Row};
use crate::scenario::ScenarioFile;
use crate::{iq, wav};

/// Orders reported by `table1`.
pub const TABLE1_ORDERS: [u32; 4] = [2, 3, 4, 5];

/// Options shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Common {
    pub scenario: Option<PathBuf>,
    pub seed: Option<u64>,
    pub out: PathBuf,
}

struct Loaded {
    config: ScenarioConfig,
    label: String,
}

impl Common {
    fn load(&self) -> Result<Loaded, CliError> {
        let (file, label) = match &self.scenario {
            Some(p) => (ScenarioFile::load(p)?, p.display().to_string()),
            None => (ScenarioFile::builtin_default(), "<builtin default>".to_string()),
        };
        let mut config = file.to_config();
        if let Some(seed) = self.seed {
            config.noise.seed = seed;
        }
        Ok(Loaded { config, label })
    }

    fn prepare_out(&self) -> Result<(), CliError> {
        fs::create_dir_all(&self.out).map_err(|e| CliError::Output(self.out.clone(), e))
    }

    fn manifest(&self, command: &str, loaded: &Loaded, args: Vec<(&str, String)>) -> RunManifest {
        RunManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            scenario: loaded.label.clone(),
            seed: loaded.config.noise.seed,
            out_dir: self.out.display().to_string(),
            args: args.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

fn write(dir: &Path, name: &str, text: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    fs::write(&path, text).map_err(|e| CliError::Output(path, e))
}

fn target_or_handshake(target_hz: Option<u64>, config: &ScenarioConfig) -> f64 {
    target_hz.unwrap_or(config.link.handshake_freq_hz) as f64
}

pub fn cmd_plan(common: &Common, target_hz: Option<u64>) -> Result<String, CliError> {
    let loaded = common.load()?;
    let target = target_or_handshake(target_hz, &loaded.config);
    let plans = plan(&loaded.config, target).map_err(from_core)?;
    common.prepare_out()?;
    write(&common.out, "plan.csv", &report::plan_csv(&plans))?;
    write(&common.out, "plan.json", &report::plan_json(&plans))?;
    common
        .manifest("plan", &loaded, vec![("target_hz", report::fmt_hz(target))])
        .write(&common.out)?;
    Ok(format!(
        "target {}\n{}",
        fmt_mhz(target),
        report::plan_table(&plans)
    ))
}

#[derive(Debug, Clone, Copy)]
pub struct SimulateArgs {
    pub target_hz: Option<u64>,
    pub order: u32,
    /// `None` leaves the jammer off.
    pub jam_start: Option<u32>,
    pub duration: Option<u32>,
    /// Pull the battery and power back on at this tick.
    pub battery_pull: Option<u32>,
}

pub fn cmd_simulate(common: &Common, args: SimulateArgs) -> Result<String, CliError> {
    let loaded = common.load()?;
    let config = &loaded.config;
    let target = target_or_handshake(args.target_hz, config);
    // validates the order against the ceiling before anything runs
    let p = plan_order(config, target, args.order).map_err(from_core)?;
    let duration = args.duration.unwrap_or(config.duration_ticks);

    let mut schedule = Schedule::power_on_then_jam(args.jam_start);
    if let Some(tick) = args.battery_pull {
        schedule.devices.push(DeviceEvent {
            tick,
            action: DeviceAction::BatteryPull,
        });
        schedule.devices.push(DeviceEvent {
            tick,
            action: DeviceAction::PowerOn,
        });
    }
    let rows = run_scenario(
        &config.link,
        &schedule,
        &config.environment(p.carrier_freq_hz),
        duration,
    )
    .map_err(from_core)?;

    common.prepare_out()?;
    write(&common.out, "transcript.csv", &report::transcript_csv(&rows))?;
    let opt = |v: Option<u32>| v.map_or("none".to_string(), |t| t.to_string());
    common
        .manifest(
            "simulate",
            &loaded,
            vec![
                ("target_hz", report::fmt_hz(target)),
                ("order", args.order.to_string()),
                ("jam_start", opt(args.jam_start)),
                ("duration", duration.to_string()),
                ("battery_pull", opt(args.battery_pull)),
            ],
        )
        .write(&common.out)?;

    let last = rows.last().expect("duration >= 1");
    let first_link = rows.iter().find(|r| r.state.is_linked()).map(|r| r.tick);
    Ok(format!(
        "carrier {} ({} harmonic), predicted J/S {:.2} dB\nfinal state: {}\nfirst linked: {}\n",
        fmt_mhz(p.carrier_freq_hz),
        report::ordinal(args.order),
        p.predicted_js_db,
        last.state.label(),
        first_link.map_or("never".to_string(), |t| format!("tick {t}"))
    ))
}

/// Plans and simulator runs for orders 2..=5 without touching the disk.
pub fn table1_rows(config: &ScenarioConfig, target: f64) -> Result<Vec<Table1Row>, CliError> {
    let plans = TABLE1_ORDERS
        .iter()
        .map(|&n| plan_order(config, target, n).map_err(from_core))
        .collect::<Result<Vec<_>, _>>()?;
    let agreement: Vec<Result<bool, CliError>> = std::thread::scope(|s| {
        let handles: Vec<_> = plans
            .iter()
            .map(|p| s.spawn(move || verify_plan(p, config).map_err(from_core)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("verification thread panicked"))
            .collect()
    });
    plans
        .into_iter()
        .zip(agreement)
        .map(|(plan, ok)| {
            Ok(Table1Row {
                plan,
                simulator_agrees: ok?,
            })
        })
        .collect()
}

pub fn cmd_table1(common: &Common, target_hz: Option<u64>) -> Result<String, CliError> {
    let loaded = common.load()?;
    let target = target_or_handshake(target_hz, &loaded.config);
    let rows = table1_rows(&loaded.config, target)?;
    common.prepare_out()?;
    write(&common.out, "table1.csv", &report::table1_csv(&rows))?;
    common
        .manifest("table1", &loaded, vec![("target_hz", report::fmt_hz(target))])
        .write(&common.out)?;
    let bad: Vec<u32> = rows
        .iter()
        .filter(|r| !r.simulator_agrees)
        .map(|r| r.plan.order)
        .collect();
    if !bad.is_empty() {
        return Err(CliError::Disagreement(bad));
    }
    Ok(report::table1_text(&rows))
}

/// Sample-and-hold upsampling by an integer factor: each audio sample sets
/// the instantaneous frequency until the next one, as a clocked transmitter
/// fed one audio sample at a time would.
pub fn upsample_hold(audio: &SampleBuffer, factor: usize) -> SampleBuffer {
    if factor <= 1 {
        return audio.clone();
    }
    let out: Vec<f64> = audio
        .samples()
        .iter()
        .flat_map(|&a| std::iter::repeat_n(a, factor))
        .collect();
    SampleBuffer::new(out, audio.sample_rate_hz() * factor as f64).expect("finite input")
}

#[derive(Debug, Clone)]
pub struct SpectrumArgs {
    pub wav: PathBuf,
    pub deviation_hz: u64,
    pub n_fft: usize,
    pub target_hz: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSummary {
    pub iq_rate_hz: f64,
    pub peak_hz: f64,
    pub occupied_bw_hz: f64,
    pub carson_bw_hz: f64,
}

/// Upsamples the audio (hold) so the deviation is at most an eighth of the
/// IQ rate, FM-modulates it onto `center_hz` and measures the result. The
/// Carson estimate takes the audio bandwidth as the WAV's Nyquist rate.
pub fn analyse_wav(
    audio: &SampleBuffer,
    deviation_hz: f64,
    n_fft: usize,
    center_hz: f64,
) -> Result<(IqBuffer, Spectrum, SpectrumSummary), CliError> {
    let fs = audio.sample_rate_hz();
    let factor = ((8.0 * deviation_hz / fs).ceil() as usize).max(1);
    let up = upsample_hold(audio, factor);
    let iq = fm_modulate(&up, deviation_hz)
        .map_err(from_core)?
        .with_center(center_hz);
    let spectrum = power_spectrum(&iq, n_fft, Window::Hann).map_err(from_core)?;
    let summary = SpectrumSummary {
        iq_rate_hz: iq.sample_rate_hz(),
        peak_hz: find_peak(&spectrum),
        occupied_bw_hz: occupied_bandwidth(&spectrum, 0.99),
        carson_bw_hz: 2.0 * (deviation_hz + fs / 2.0),
    };
    Ok((iq, spectrum, summary))
}

pub fn cmd_spectrum(common: &Common, args: &SpectrumArgs) -> Result<String, CliError> {
    let loaded = common.load()?;
    let audio = wav::read_pcm16_mono(&args.wav)?;
    let center = target_or_handshake(args.target_hz, &loaded.config);
    let (iq_buf, spectrum, summary) =
        analyse_wav(&audio, args.deviation_hz as f64, args.n_fft, center)?;
    common.prepare_out()?;
    write(&common.out, "spectrum.csv", &report::spectrum_csv(&spectrum))?;
    iq::write_iq(&common.out.join("fm.iq"), &iq_buf)?;
    common
        .manifest(
            "spectrum",
            &loaded,
            vec![
                ("wav", args.wav.display().to_string()),
                ("deviation_hz", args.deviation_hz.to_string()),
                ("fft", args.n_fft.to_string()),
                ("center_hz", report::fmt_hz(center)),
            ],
        )
        .write(&common.out)?;
    Ok(format!(
        "iq rate {} Hz, rbw {} Hz\npeak: {:.6} MHz\noccupied bandwidth (99%): {} kHz\ncarson estimate: {} kHz\n",
        report::fmt_num(summary.iq_rate_hz),
        report::fmt_num(spectrum.rbw_hz()),
        summary.peak_hz / 1e6,
        report::fmt_num(summary.occupied_bw_hz / 1e3),
        report::fmt_num(summary.carson_bw_hz / 1e3),
    ))
}

pub fn cmd_noise(common: &Common) -> Result<String, CliError> {
    let loaded = common.load()?;
    let spec = loaded.config.noise;
    let buf = generate_white_noise(&spec).map_err(from_core)?;
    common.prepare_out()?;
    wav::write_pcm16_mono(&common.out.join("noise.wav"), &buf)?;
    common
        .manifest(
            "noise",
            &loaded,
            vec![
                ("n_samples", spec.n_samples.to_string()),
                ("sample_rate_hz", report::fmt_hz(spec.sample_rate_hz)),
            ],
        )
        .write(&common.out)?;
    Ok(format!(
        "wrote {} samples of white noise at {} Hz (seed {})\n",
        spec.n_samples,
        report::fmt_hz(spec.sample_rate_hz),
        spec.seed
    ))
}
