//! PCM16 mono WAV in and out.

use std::path::Path;

use subharmonic_core::dsp::SampleBuffer;

use crate::error::CliError;

pub fn read_pcm16_mono(path: &Path) -> Result<SampleBuffer, CliError> {
    let bad = |msg: String| CliError::Input(path.to_path_buf(), msg);
    let mut reader = hound::WavReader::open(path).map_err(|e| bad(e.to_string()))?;
    let spec = reader.spec();
    if spec.channels != 1
        || spec.bits_per_sample != 16
        || spec.sample_format != hound::SampleFormat::Int
    {
        return Err(bad(format!(
            "expected 16-bit PCM mono, found {} channel(s) {}-bit {:?}",
            spec.channels, spec.bits_per_sample, spec.sample_format
        )));
    }
    let samples = reader
        .samples::<i16>()
        .map(|s| s.map(|v| v as f64 / 32768.0))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| bad(e.to_string()))?;
    if samples.is_empty() {
        return Err(bad("no samples".into()));
    }
    SampleBuffer::new(samples, spec.sample_rate as f64).map_err(|e| bad(e.to_string()))
}

pub fn write_pcm16_mono(path: &Path, buffer: &SampleBuffer) -> Result<(), CliError> {
    let out = |e: hound::Error| {
        CliError::Output(
            path.to_path_buf(),
            std::io::Error::other(e.to_string()),
        )
    };
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: buffer.sample_rate_hz().round() as u32,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut w = hound::WavWriter::create(path, spec).map_err(out)?;
    for &s in buffer.samples() {
        w.write_sample((s.clamp(-1.0, 1.0) * 32767.0).round() as i16)
            .map_err(out)?;
    }
    w.finalize().map_err(out)
}
