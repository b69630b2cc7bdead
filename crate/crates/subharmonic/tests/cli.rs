mod common;

use std::f64::consts::PI;

use common::{bin, run, scenario, stdout, write_wav};
use subharmonic::commands::analyse_wav;
use subharmonic::iq::read_iq;
use subharmonic::wav::read_pcm16_mono;
use subharmonic_core::dsp::band_power;
use subharmonic_core::units::from_db;

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn plan_default_has_four_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["plan", "--target-hz", "614000000"], dir.path());
    assert!(o.status.success());
    let rows = csv_rows(&std::fs::read_to_string(dir.path().join("plan.csv")).unwrap());
    let verdicts: Vec<&str> = rows.iter().map(|r| r[4].as_str()).collect();
    assert_eq!(verdicts, ["OK", "OK", "OK", "FAIL"]);
    let orders: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(orders, ["2", "3", "4", "5"]);
    let json: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("plan.json")).unwrap()).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 4);
    assert_eq!(json[3]["verdict"], "FAIL");
    assert!(stdout(&o).contains('\u{2713}'));
    assert!(dir.path().join("manifest.json").exists());
}

#[test]
fn plan_below_ceiling_is_direct() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["plan", "--target-hz", "100000000"], dir.path());
    assert!(o.status.success());
    let rows = csv_rows(&std::fs::read_to_string(dir.path().join("plan.csv")).unwrap());
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "1");
}

#[test]
fn plan_with_filter_fails_everywhere() {
    let dir = tempfile::tempdir().unwrap();
    let s = scenario("filtered");
    let o = run(&["plan", "--scenario", s.to_str().unwrap()], dir.path());
    assert!(o.status.success());
    let rows = csv_rows(&std::fs::read_to_string(dir.path().join("plan.csv")).unwrap());
    assert!(rows.iter().all(|r| r[4] == "FAIL"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ \"emitter\": 3 }").unwrap();
    let o = run(&["plan", "--scenario", bad.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["plan", "--scenario", "/no/such/file.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));

    // 6 GHz needs order 12, past n_orders_max
    let o = run(&["plan", "--target-hz", "6000000000"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    let o = run(&["simulate", "--order", "1"], dir.path());
    assert_eq!(o.status.code(), Some(3));

    // planner predicts at 620 MHz but the handshake stays on 614 MHz
    let o = run(&["table1", "--target-hz", "620000000"], dir.path());
    assert_eq!(o.status.code(), Some(4));

    let junk = dir.path().join("junk.wav");
    std::fs::write(&junk, b"RIFF....").unwrap();
    let o = run(&["spectrum", junk.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

fn final_state(out: &std::process::Output) -> String {
    stdout(out)
        .lines()
        .find_map(|l| l.strip_prefix("final state: "))
        .unwrap()
        .to_string()
}

#[test]
fn simulate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["simulate", "--order", "2", "--jam-start", "0"], dir.path());
    assert!(o.status.success());
    assert_eq!(final_state(&o), "Blocked");
    let rows = csv_rows(&std::fs::read_to_string(dir.path().join("transcript.csv")).unwrap());
    assert_eq!(rows.len(), 100);
    assert!(rows.iter().all(|r| r[1] != "Linked"));

    let o = run(&["simulate", "--order", "2", "--jam-start", "10"], dir.path());
    assert_eq!(final_state(&o), "Linked");

    let o = run(&["simulate", "--order", "5", "--jam-start", "0"], dir.path());
    assert_eq!(final_state(&o), "Linked");

    let o = run(
        &["simulate", "--order", "3", "--battery-pull", "40"],
        dir.path(),
    );
    assert_eq!(final_state(&o), "Blocked");
    assert!(stdout(&o).contains("first linked: never"));
}

fn table1_results(name: Option<&str>) -> (Option<i32>, Vec<String>) {
    let dir = tempfile::tempdir().unwrap();
    let mut args = vec!["table1".to_string()];
    if let Some(n) = name {
        args.push("--scenario".into());
        args.push(scenario(n).to_string_lossy().into_owned());
    }
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let o = run(&refs, dir.path());
    let rows = csv_rows(&std::fs::read_to_string(dir.path().join("table1.csv")).unwrap());
    (o.status.code(), rows.into_iter().map(|r| r[3].clone()).collect())
}

#[test]
fn table1_variants() {
    assert_eq!(
        table1_results(None),
        (Some(0), vec!["OK".into(), "OK".into(), "OK".into(), "FAIL".into()])
    );
    let all = |v: &str| (Some(0), vec![v.to_string(); 4]);
    assert_eq!(table1_results(Some("wired_handshake")), all("FAIL"));
    assert_eq!(table1_results(Some("filtered")), all("FAIL"));
    assert_eq!(table1_results(Some("boosted")), all("OK"));
}

#[test]
fn table1_human_output_mirrors_harmonic_table() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["table1"], dir.path());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("Frequency"));
    assert!(lines[1].starts_with("307.00 MHz") && lines[1].contains("2nd") && lines[1].ends_with('\u{2713}'));
    assert!(lines[2].starts_with("204.67 MHz") && lines[2].contains("3rd"));
    assert!(lines[3].starts_with("153.50 MHz") && lines[3].contains("4th"));
    assert!(lines[4].starts_with("122.80 MHz") && lines[4].ends_with('\u{2717}'));
}

#[test]
fn noise_then_spectrum_roundtrip_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["noise", "--seed", "11"], dir.path());
    assert!(o.status.success());
    let wav = dir.path().join("noise.wav");
    let audio = read_pcm16_mono(&wav).unwrap();
    assert_eq!(audio.len(), 240_000);
    assert_eq!(audio.sample_rate_hz(), 48_000.0);

    let o = run(&["spectrum", wav.to_str().unwrap(), "--fft", "2048"], dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let iq = read_iq(&dir.path().join("fm.iq")).unwrap();
    assert_eq!(iq.center_freq_hz(), 614e6);
    assert_eq!(iq.sample_rate_hz(), 624_000.0);
    assert_eq!(iq.len(), 240_000 * 13);
    let spec = std::fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert_eq!(spec.lines().count(), 2049);
}

/// Symmetric band around the carrier widened one bin at a time until it
/// holds 99% of the power.
fn swept_obw(spectrum: &subharmonic_core::dsp::Spectrum, center: f64) -> f64 {
    let total = spectrum.total_power_linear();
    let rbw = spectrum.rbw_hz();
    let mut half = rbw / 2.0;
    loop {
        let p = from_db(band_power(spectrum, center - half, center + half).unwrap());
        if p >= 0.99 * total {
            return 2.0 * half;
        }
        half += rbw;
    }
}

#[test]
fn white_noise_fm_bandwidth_near_carson() {
    let dir = tempfile::tempdir().unwrap();
    run(&["noise"], dir.path());
    let audio = read_pcm16_mono(&dir.path().join("noise.wav")).unwrap();
    let (_, spectrum, summary) = analyse_wav(&audio, 75_000.0, 4096, 614e6).unwrap();
    let carson = 2.0 * (75_000.0 + 24_000.0);
    assert_eq!(summary.carson_bw_hz, carson);
    let swept = swept_obw(&spectrum, 614e6);
    assert!((swept / carson - 1.0).abs() <= 0.15, "swept {swept}");
    assert!((summary.occupied_bw_hz / carson - 1.0).abs() <= 0.15);
}

#[test]
fn silent_wav_gives_carrier_at_center() {
    let dir = tempfile::tempdir().unwrap();
    let wav = dir.path().join("silence.wav");
    write_wav(&wav, &vec![0.0; 48_000], 48_000);
    let audio = read_pcm16_mono(&wav).unwrap();
    let (_, s, summary) = analyse_wav(&audio, 75_000.0, 4096, 614e6).unwrap();
    assert_eq!(summary.peak_hz, 614e6);
    let i = s.bin_freqs_hz().iter().position(|&f| f == 614e6).unwrap();
    let p = s.power_db();
    // Hann coherent gain: (sum w)^2 / (N sum w^2) = 2/3 of the carrier
    assert!((p[i] - 10.0 * (2.0f64 / 3.0).log10()).abs() < 1e-9);
    // Hann main lobe: neighbours 6 dB down, everything else lower still
    for (k, &v) in p.iter().enumerate() {
        if k != i {
            assert!(v <= p[i] - 6.0, "bin {k}: {v}");
        }
    }
    let o = bin()
        .args(["spectrum", wav.to_str().unwrap(), "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(stdout(&o).contains("peak: 614.000000 MHz"));
}

#[test]
fn tone_wav_has_symmetric_sidebands() {
    let dir = tempfile::tempdir().unwrap();
    let wav = dir.path().join("tone.wav");
    // -40 dBFS tone: modulation index 0.75, carrier stays dominant
    let x: Vec<f64> = (0..96_000)
        .map(|k| 0.01 * (2.0 * PI * 1_000.0 * k as f64 / 48_000.0).sin())
        .collect();
    write_wav(&wav, &x, 48_000);
    let audio = read_pcm16_mono(&wav).unwrap();
    let (_, s, summary) = analyse_wav(&audio, 75_000.0, 4096, 614e6).unwrap();
    assert!((summary.peak_hz - 614e6).abs() <= s.rbw_hz());
    let c = 614e6;
    let upper = band_power(&s, c + 500.0, c + 1_500.0).unwrap();
    let lower = band_power(&s, c - 1_500.0, c - 500.0).unwrap();
    let carrier = band_power(&s, c - 300.0, c + 300.0).unwrap();
    assert!((upper - lower).abs() < 0.5, "{upper} vs {lower}");
    assert!(carrier > upper + 3.0);
}
