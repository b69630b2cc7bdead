//! Free-space link budget with unity-gain antennas.

use core::f64::consts::PI;

use crate::{Error, Result};

pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelModel {
    pub distance_m: f64,
    pub extra_loss_db: f64,
    pub noise_floor_dbm_hz: f64,
}

impl ChannelModel {
    pub fn validate(&self) -> Result<()> {
        if self.distance_m > 0.0 && self.distance_m.is_finite() && self.extra_loss_db >= 0.0 {
            Ok(())
        } else {
            Err(Error::NonPositivePathArgs {
                freq_hz: f64::NAN,
                distance_m: self.distance_m,
            })
        }
    }
}

/// `20 log10(4 pi d f / c)`.
pub fn fspl_db(freq_hz: f64, distance_m: f64) -> Result<f64> {
    if !(freq_hz > 0.0 && distance_m > 0.0) {
        return Err(Error::NonPositivePathArgs {
            freq_hz,
            distance_m,
        });
    }
    Ok(20.0 * libm::log10(4.0 * PI * distance_m * freq_hz / SPEED_OF_LIGHT_M_S))
}

pub fn received_power_dbm(tx_power_dbm: f64, freq_hz: f64, channel: &ChannelModel) -> Result<f64> {
    Ok(tx_power_dbm - fspl_db(freq_hz, channel.distance_m)? - channel.extra_loss_db)
}
