//! Raw IQ dumps: interleaved little-endian f32 (I then Q), no header, with a
//! `<file>.txt` sidecar of `key=value` lines for `sample_rate_hz` and
//! `center_freq_hz`.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use subharmonic_core::dsp::IqBuffer;

use crate::error::CliError;
use crate::report::fmt_hz;

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".txt");
    PathBuf::from(s)
}

pub fn write_iq(path: &Path, iq: &IqBuffer) -> Result<(), CliError> {
    let mut bytes = Vec::with_capacity(iq.len() * 8);
    for s in iq.samples() {
        bytes.extend_from_slice(&(s.re as f32).to_le_bytes());
        bytes.extend_from_slice(&(s.im as f32).to_le_bytes());
    }
    fs::write(path, bytes).map_err(|e| CliError::Output(path.to_path_buf(), e))?;
    let side = sidecar_path(path);
    let text = format!(
        "sample_rate_hz={}\ncenter_freq_hz={}\n",
        fmt_hz(iq.sample_rate_hz()),
        fmt_hz(iq.center_freq_hz())
    );
    fs::write(&side, text).map_err(|e| CliError::Output(side, e))
}

pub fn read_iq(path: &Path) -> Result<IqBuffer, CliError> {
    let bad = |p: &Path, msg: String| CliError::Input(p.to_path_buf(), msg);
    let bytes = fs::read(path).map_err(|e| bad(path, e.to_string()))?;
    if bytes.len() % 8 != 0 {
        return Err(bad(path, format!("{} bytes is not a whole number of IQ pairs", bytes.len())));
    }
    let side = sidecar_path(path);
    let text = fs::read_to_string(&side).map_err(|e| bad(&side, e.to_string()))?;
    let mut rate = None;
    let mut center = None;
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| bad(&side, format!("malformed line {line:?}")))?;
        let v: f64 = v.trim().parse().map_err(|_| bad(&side, format!("bad number in {line:?}")))?;
        match k.trim() {
            "sample_rate_hz" => rate = Some(v),
            "center_freq_hz" => center = Some(v),
            other => return Err(bad(&side, format!("unknown key {other:?}"))),
        }
    }
    let (Some(rate), Some(center)) = (rate, center) else {
        return Err(bad(&side, "sample_rate_hz and center_freq_hz are required".into()));
    };
    let samples = bytes
        .chunks_exact(8)
        .map(|c| {
            let i = f32::from_le_bytes([c[0], c[1], c[2], c[3]]);
            let q = f32::from_le_bytes([c[4], c[5], c[6], c[7]]);
            Complex64::new(i as f64, q as f64)
        })
        .collect();
    IqBuffer::new(samples, rate, center).map_err(|e| bad(path, e.to_string()))
}
