//! First-order radio energy model with free-space (d²) and multipath (d⁴) regimes.

use std::num::NonZeroU64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RadioError {
    #[error("radio parameter `{0}` must be strictly positive")]
    NonPositive(&'static str),
    #[error("eps_fs ({fs}) must exceed eps_mp ({mp})")]
    AmplifierOrder { fs: f64, mp: f64 },
    #[error("message size must be at least one bit")]
    ZeroBits,
    #[error("aggregation needs at least one signal")]
    NoSignals,
}

/// A non-empty message size in bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bits(NonZeroU64);

impl Bits {
    pub fn new(bits: u64) -> Result<Self, RadioError> {
        NonZeroU64::new(bits).map(Self).ok_or(RadioError::ZeroBits)
    }

    pub fn get(self) -> u64 {
        self.0.get()
    }

    fn as_f64(self) -> f64 {
        self.0.get() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadioParams {
    /// Electronics energy, J/bit, paid by both transmitter and receiver.
    pub e_elec: f64,
    /// Free-space amplifier, J/bit/m².
    pub eps_fs: f64,
    /// Multipath amplifier, J/bit/m⁴.
    pub eps_mp: f64,
    /// Data aggregation, J/bit/signal.
    pub e_da: f64,
}

impl Default for RadioParams {
    fn default() -> Self {
        Self { e_elec: 50e-9, eps_fs: 10e-12, eps_mp: 0.004e-12, e_da: 5e-9 }
    }
}

impl RadioParams {
    pub fn validate(&self) -> Result<(), RadioError> {
        for (name, v) in
            [("e_elec", self.e_elec), ("eps_fs", self.eps_fs), ("eps_mp", self.eps_mp), ("e_da", self.e_da)]
        {
            if !(v.is_finite() && v > 0.0) {
                return Err(RadioError::NonPositive(name));
            }
        }
        // Equal amplifiers are tolerated: the crossover degenerates to 1 m.
        if self.eps_fs < self.eps_mp {
            return Err(RadioError::AmplifierOrder { fs: self.eps_fs, mp: self.eps_mp });
        }
        Ok(())
    }

    /// Distance at which the free-space and multipath amplifier costs meet.
    pub fn crossover_distance(&self) -> f64 {
        (self.eps_fs / self.eps_mp).sqrt()
    }

    pub fn tx_energy(&self, bits: Bits, d: f64) -> f64 {
        let k = bits.as_f64();
        let d = d.max(0.0);
        if d < self.crossover_distance() {
            self.e_elec * k + self.eps_fs * k * d * d
        } else {
            self.e_elec * k + self.eps_mp * k * d * d * d * d
        }
    }

    pub fn rx_energy(&self, bits: Bits) -> f64 {
        self.e_elec * bits.as_f64()
    }

    pub fn aggregation_energy(&self, bits: Bits, signals: u64) -> Result<f64, RadioError> {
        if signals == 0 {
            return Err(RadioError::NoSignals);
        }
        Ok(self.e_da * bits.as_f64() * signals as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn crossover() {
        let p = RadioParams::default();
        assert!(rel(p.crossover_distance(), 50.0) < 1e-12);
        let eq = RadioParams { eps_mp: p.eps_fs, ..p };
        assert_eq!(eq.crossover_distance(), 1.0);
        let four = RadioParams { eps_mp: p.eps_fs / 4.0, ..p };
        assert_eq!(four.crossover_distance(), 2.0);
    }

    #[test]
    fn table_values() {
        let p = RadioParams::default();
        let data = Bits::new(32000).unwrap();
        assert!(rel(p.tx_energy(data, 20.0), 1.728e-3) < 1e-12);
        assert!(rel(p.tx_energy(data, 100.0), 1.44e-2) < 1e-12);
        assert_eq!(p.tx_energy(data, 0.0), p.e_elec * 32000.0);
        assert!(rel(p.rx_energy(data), 1.6e-3) < 1e-12);
        assert!(rel(p.rx_energy(Bits::new(160).unwrap()), 8.0e-6) < 1e-12);
        assert!(rel(p.aggregation_energy(data, 1).unwrap(), 1.6e-4) < 1e-12);
        assert!(rel(p.aggregation_energy(data, 5).unwrap(), 8.0e-4) < 1e-12);
    }

    #[test]
    fn degenerate_inputs_rejected() {
        let p = RadioParams::default();
        assert_eq!(Bits::new(0), Err(RadioError::ZeroBits));
        assert_eq!(p.aggregation_energy(Bits::new(10).unwrap(), 0), Err(RadioError::NoSignals));
        assert!(RadioParams { e_da: 0.0, ..p }.validate().is_err());
        assert!(RadioParams { eps_mp: 1e-9, ..p }.validate().is_err());
        assert!(p.validate().is_ok());
    }

    #[test]
    fn continuous_at_crossover() {
        let p = RadioParams::default();
        let b = Bits::new(32000).unwrap();
        let d0 = p.crossover_distance();
        let below = p.e_elec * 32000.0 + p.eps_fs * 32000.0 * d0 * d0;
        assert!(rel(p.tx_energy(b, d0), below) < 1e-12);
    }

    proptest! {
        #[test]
        fn monotone_and_dominates_rx(bits in 1u64..1_000_000, d in 0.0..500.0f64, dd in 0.0..50.0f64) {
            let p = RadioParams::default();
            let b = Bits::new(bits).unwrap();
            let b1 = Bits::new(bits + 1).unwrap();
            prop_assert!(p.tx_energy(b, d + dd) >= p.tx_energy(b, d));
            prop_assert!(p.tx_energy(b1, d) > p.tx_energy(b, d));
            prop_assert!(p.rx_energy(b1) > p.rx_energy(b));
            prop_assert!(p.tx_energy(b, d) >= p.rx_energy(b));
        }
    }
}
