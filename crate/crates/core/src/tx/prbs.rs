//! Maximal-length PRBS from a Fibonacci LFSR.

use crate::error::{Error, Result};
use crate::signal::BitSequence;

/// Feedback taps (stage numbers, 1-based) of a maximal-length polynomial for
/// each register length 3..=31. Entry `i` is for order `i + 3`.
const TAPS: [&[u32]; 29] = [
    &[3, 2],
    &[4, 3],
    &[5, 3],
    &[6, 5],
    &[7, 6],
    &[8, 6, 5, 4],
    &[9, 5],
    &[10, 7],
    &[11, 9],
    &[12, 6, 4, 1],
    &[13, 4, 3, 1],
    &[14, 5, 3, 1],
    &[15, 14],
    &[16, 15, 13, 4],
    &[17, 14],
    &[18, 11],
    &[19, 6, 2, 1],
    &[20, 17],
    &[21, 19],
    &[22, 21],
    &[23, 18],
    &[24, 23, 22, 17],
    &[25, 22],
    &[26, 6, 2, 1],
    &[27, 5, 2, 1],
    &[28, 25],
    &[29, 27],
    &[30, 6, 4, 1],
    &[31, 28],
];

pub const MIN_ORDER: u32 = 3;
pub const MAX_ORDER: u32 = 31;

/// Fibonacci shift register. Bit `i` of the state word holds stage `i + 1`;
/// the highest stage is shifted out as the output bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lfsr {
    order: u32,
    mask: u64,
    taps: &'static [u32],
    state: u64,
}

impl Lfsr {
    pub fn new(order: u32, seed: u64) -> Result<Self> {
        if !(MIN_ORDER..=MAX_ORDER).contains(&order) {
            return Err(Error::invalid(format!(
                "PRBS order {order} outside {MIN_ORDER}..={MAX_ORDER}"
            )));
        }
        let mask = (1u64 << order) - 1;
        if seed == 0 || seed > mask {
            return Err(Error::InvalidSeed { order, seed });
        }
        Ok(Self {
            order,
            mask,
            taps: TAPS[(order - MIN_ORDER) as usize],
            state: seed,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    /// Shifts once and returns the bit that left the register.
    pub fn step(&mut self) -> u8 {
        let out = (self.state >> (self.order - 1)) & 1;
        let feedback = self
            .taps
            .iter()
            .fold(0, |acc, &t| acc ^ ((self.state >> (t - 1)) & 1));
        self.state = ((self.state << 1) | feedback) & self.mask;
        out as u8
    }

    pub fn period(&self) -> u64 {
        self.mask
    }
}

impl Iterator for Lfsr {
    type Item = u8;

    fn next(&mut self) -> Option<u8> {
        Some(self.step())
    }
}

pub fn prbs_generate(order: u32, seed: u64, n: usize) -> Result<BitSequence> {
    if n == 0 {
        return Err(Error::invalid("PRBS length must be at least 1"));
    }
    Ok(Lfsr::new(order, seed)?.take(n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn order7_all_ones_trace() {
        let bits = prbs_generate(7, 0x7f, 8).unwrap();
        assert_eq!(bits.bits(), &[1, 1, 1, 1, 1, 1, 1, 0]);
    }

    #[test]
    fn zero_seed_rejected() {
        assert!(matches!(
            prbs_generate(7, 0, 8),
            Err(Error::InvalidSeed { order: 7, seed: 0 })
        ));
        assert!(matches!(
            prbs_generate(7, 0x80, 8),
            Err(Error::InvalidSeed { .. })
        ));
        assert!(prbs_generate(2, 1, 8).is_err());
        assert!(prbs_generate(7, 1, 0).is_err());
    }

    fn cycle_length(order: u32, seed: u64) -> u64 {
        let mut lfsr = Lfsr::new(order, seed).unwrap();
        let start = lfsr.state();
        let mut n = 0;
        loop {
            lfsr.step();
            n += 1;
            if lfsr.state() == start {
                return n;
            }
            assert!(n <= lfsr.period(), "state never returned");
        }
    }

    #[test]
    fn order7_period_from_every_seed() {
        for seed in 1..=127 {
            assert_eq!(cycle_length(7, seed), 127, "seed {seed}");
        }
        // one cycle visits every nonzero state
        let mut lfsr = Lfsr::new(7, 1).unwrap();
        let visited: HashSet<u64> = (0..127)
            .map(|_| {
                lfsr.step();
                lfsr.state()
            })
            .collect();
        assert_eq!(visited.len(), 127);
    }

    #[test]
    fn tap_table_is_maximal_up_to_order_20() {
        for order in MIN_ORDER..=20 {
            assert_eq!(cycle_length(order, 1), (1 << order) - 1, "order {order}");
        }
    }

    #[test]
    fn output_repeats_with_period() {
        let bits = prbs_generate(7, 0x55, 254).unwrap();
        assert_eq!(&bits.bits()[..127], &bits.bits()[127..]);
        // maximal-length sequences carry 2^(n-1) ones per period
        assert_eq!(bits.bits()[..127].iter().filter(|&&b| b == 1).count(), 64);
    }
}
