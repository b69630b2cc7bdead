//! Byte-stable text output: CSV, JSON and the human tables.
//!
//! Machine files print numbers with 6 significant digits, '.' as decimal
//! separator and LF line endings.

use serde::Serialize;
use subharmonic_core::dsp::Spectrum;
use subharmonic_core::link::TranscriptRow;
use subharmonic_core::planner::{JamPlan, Verdict};

/// Rounds to 6 significant digits.
pub fn round_sig6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return 0.0;
    }
    let exp = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(5 - exp);
    let r = (x * scale).round() / scale;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// 6 significant digits in fixed notation.
pub fn fmt_num(x: f64) -> String {
    let r = round_sig6(x);
    if r == 0.0 {
        return "0".to_string();
    }
    let exp = r.abs().log10().floor() as i32;
    let decimals = (5 - exp).max(0) as usize;
    format!("{r:.decimals$}")
}

/// Shortest exact rendering, for frequencies that must round-trip.
pub fn fmt_hz(x: f64) -> String {
    format!("{x}")
}

pub fn fmt_mhz(hz: f64) -> String {
    format!("{:.2} MHz", hz / 1e6)
}

pub fn ordinal(n: u32) -> String {
    let suffix = match (n % 10, n % 100) {
        (_, 11..=13) => "th",
        (1, _) => "st",
        (2, _) => "nd",
        (3, _) => "rd",
        _ => "th",
    };
    format!("{n}{suffix}")
}

pub fn verdict_ascii(v: Verdict) -> &'static str {
    match v {
        Verdict::Success => "OK",
        Verdict::Fail => "FAIL",
    }
}

pub fn verdict_mark(v: Verdict) -> &'static str {
    match v {
        Verdict::Success => "\u{2713}",
        Verdict::Fail => "\u{2717}",
    }
}

pub fn plan_csv(plans: &[JamPlan]) -> String {
    let mut s = String::from("order,carrier_hz,jam_power_dbm,js_db,verdict\n");
    for p in plans {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            p.order,
            fmt_num(p.carrier_freq_hz),
            fmt_num(p.predicted_jam_power_dbm),
            fmt_num(p.predicted_js_db),
            verdict_ascii(p.verdict)
        ));
    }
    s
}

#[derive(Serialize)]
struct PlanRecord {
    order: u32,
    carrier_hz: f64,
    jam_power_dbm: f64,
    js_db: f64,
    verdict: &'static str,
}

pub fn plan_json(plans: &[JamPlan]) -> String {
    let rows: Vec<PlanRecord> = plans
        .iter()
        .map(|p| PlanRecord {
            order: p.order,
            carrier_hz: round_sig6(p.carrier_freq_hz),
            jam_power_dbm: round_sig6(p.predicted_jam_power_dbm),
            js_db: round_sig6(p.predicted_js_db),
            verdict: verdict_ascii(p.verdict),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("plan rows serialize");
    s.push('\n');
    s
}

pub fn plan_table(plans: &[JamPlan]) -> String {
    let mut s = format!(
        "{:<7}{:<16}{:<16}{:<12}{}\n",
        "order", "carrier", "jam power", "J/S", "verdict"
    );
    for p in plans {
        s.push_str(&format!(
            "{:<7}{:<16}{:<16}{:<12}{}\n",
            p.order,
            fmt_mhz(p.carrier_freq_hz),
            format!("{:.2} dBm", p.predicted_jam_power_dbm),
            format!("{:.2} dB", p.predicted_js_db),
            verdict_mark(p.verdict)
        ));
    }
    s
}

pub fn transcript_csv(rows: &[TranscriptRow]) -> String {
    let mut s = String::from("tick,state,handshake_js_db,jammed_fraction\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{}\n",
            r.tick,
            r.state.label(),
            fmt_num(r.handshake_js_db),
            fmt_num(r.jammed_fraction)
        ));
    }
    s
}

pub fn spectrum_csv(spectrum: &Spectrum) -> String {
    let mut s = String::from("freq_hz,power_db\n");
    for (f, p) in spectrum.iter() {
        s.push_str(&format!("{},{}\n", fmt_num(f), fmt_num(p)));
    }
    s
}

/// One row of the harmonic table together with the simulator's outcome.
pub struct Table1Row {
    pub plan: JamPlan,
    pub simulator_agrees: bool,
}

pub fn table1_text(rows: &[Table1Row]) -> String {
    let mut s = format!("{:<14}{:<10}{}\n", "Frequency", "Harmonic", "Result");
    for r in rows {
        s.push_str(&format!(
            "{:<14}{:<10}{}\n",
            fmt_mhz(r.plan.carrier_freq_hz),
            ordinal(r.plan.order),
            verdict_mark(r.plan.verdict)
        ));
    }
    s
}

pub fn table1_csv(rows: &[Table1Row]) -> String {
    let mut s = String::from("frequency_hz,harmonic,js_db,result,simulator_agrees\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_num(r.plan.carrier_freq_hz),
            r.plan.order,
            fmt_num(r.plan.predicted_js_db),
            verdict_ascii(r.plan.verdict),
            r.simulator_agrees
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(fmt_num(204_666_666.666_666_7), "204667000");
        assert_eq!(fmt_num(7.020_599_913), "7.02060");
        assert_eq!(fmt_num(-0.938_200_13), "-0.938200");
        assert_eq!(fmt_num(-300.0), "-300.000");
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(1.0), "1.00000");
    }

    #[test]
    fn ordinals() {
        let got: Vec<String> = [1, 2, 3, 4, 11, 12, 13, 21, 22, 102].map(ordinal).to_vec();
        assert_eq!(
            got,
            ["1st", "2nd", "3rd", "4th", "11th", "12th", "13th", "21st", "22nd", "102nd"]
        );
    }

    #[test]
    fn mhz_display() {
        assert_eq!(fmt_mhz(614e6 / 3.0), "204.67 MHz");
        assert_eq!(fmt_mhz(307e6), "307.00 MHz");
    }
}
