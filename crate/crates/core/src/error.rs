use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("sample count must be at least 1")]
    EmptyNoise,
    #[error("sample rate must be positive and finite, got {0}")]
    InvalidSampleRate(f64),
    #[error("buffer contains a non-finite sample at index {0}")]
    NonFiniteSample(usize),
    #[error("empty input buffer")]
    EmptyBuffer,
    #[error("deviation {deviation_hz} Hz must be positive and below Nyquist ({nyquist_hz} Hz)")]
    InvalidDeviation { deviation_hz: f64, nyquist_hz: f64 },
    #[error("FFT length {0} must be a power of two of at least 2")]
    FftNotPowerOfTwo(usize),
    #[error("buffer of {len} samples is shorter than FFT length {n_fft}")]
    BufferTooShort { len: usize, n_fft: usize },
    #[error("band [{lo_hz}, {hi_hz}] Hz is empty or outside the spectrum span")]
    InvalidBand { lo_hz: f64, hi_hz: f64 },
    #[error("band [{lo_hz}, {hi_hz}] Hz contains no spectrum bins")]
    EmptyBand { lo_hz: f64, hi_hz: f64 },
    #[error("harmonic order must be at least 1")]
    ZeroOrder,
    #[error("duty cycle {0} must lie strictly inside (0, 1)")]
    InvalidDuty(f64),
    #[error("frequency and distance must be positive (got {freq_hz} Hz, {distance_m} m)")]
    NonPositivePathArgs { freq_hz: f64, distance_m: f64 },
    #[error("invalid link configuration: {0}")]
    InvalidLinkConfig(&'static str),
    #[error("tick is missing a J/S entry for {0} Hz")]
    MissingFrequency(u64),
    #[error("simulation duration must be at least one tick")]
    ZeroDuration,
    #[error("schedule entry at tick {tick} lies outside a {duration}-tick run")]
    ScheduleOutOfRange { tick: u32, duration: u32 },
    #[error("no feasible harmonic order: need n >= {n_min} but n_orders_max is {n_max}")]
    NoFeasibleOrder { n_min: u32, n_max: u32 },
    #[error("carrier {carrier_hz} Hz exceeds the emitter ceiling of {max_hz} Hz")]
    CarrierAboveCeiling { carrier_hz: f64, max_hz: f64 },
}
