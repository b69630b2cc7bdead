//! Decibel helpers shared by every model.

/// Level reported in place of -inf for zero linear power (dB, dBc and dBm).
pub const POWER_FLOOR_DB: f64 = -300.0;

/// Converts a linear power ratio to dB, clamping at [`POWER_FLOOR_DB`].
pub fn to_db(linear: f64) -> f64 {
    if linear <= 0.0 {
        return POWER_FLOOR_DB;
    }
    let db = 10.0 * libm::log10(linear);
    if db < POWER_FLOOR_DB {
        POWER_FLOOR_DB
    } else {
        db
    }
}

pub fn from_db(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

/// Sums powers given in dB and returns the total in dB.
pub fn sum_db<I: IntoIterator<Item = f64>>(levels: I) -> f64 {
    to_db(levels.into_iter().map(from_db).sum())
}
