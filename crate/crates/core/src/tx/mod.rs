//! Transmitter: PRBS source, line coding, modulation and booster gain.

mod line_code;
mod modulator;
mod prbs;

pub use line_code::{
    line_code, modified_duobinary_symbols, precode_modified_duobinary, ModulationFormat,
};
pub use modulator::{edfa_amplify, synthesize_field, transmit, TxParams};
pub use prbs::{prbs_generate, Lfsr};
