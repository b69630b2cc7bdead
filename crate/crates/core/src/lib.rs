//! Deterministic models for sub-harmonic jamming of a frequency-hopping
//! wireless microphone link.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure
//! computation:
//!
//! * [`dsp`]: white-noise synthesis, FM modulation/demodulation, Welch power
//!   spectra and spectrum queries.
//! * [`emitter`]: harmonic series of an unfiltered square-wave-clock
//!   transmitter, with optional bandpass filter and attenuator.
//! * [`channel`]: free-space link budget.
//! * [`link`]: microphone/receiver state machine (handshake, then hopping)
//!   and the tick-driven scenario runner.
//! * [`planner`]: sub-harmonic carrier enumeration and jam verdicts.
//!
//! File formats, scenario parsing and the command-line harness live in the
//! `subharmonic` crate.
#![no_std]

extern crate alloc;

pub mod channel;
pub mod dsp;
pub mod emitter;
mod error;
pub mod link;
pub mod planner;
pub mod rng;
pub mod units;

pub use error::{Error, Result};
