//! CODATA-2018 physical constants in SI units.

/// Fundamental constants used throughout the crate.
///
/// All values are CODATA-2018. They are fixed at compile time and are not
/// part of the runtime configuration; changing the nucleon reference mass
/// (for example to the neutron mass or to 1 amu) means recompiling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant ħ (J·s).
    pub hbar: f64,
    /// Newtonian constant of gravitation G (m³·kg⁻¹·s⁻²).
    pub gravitational: f64,
    /// Boltzmann constant k_B (J·K⁻¹).
    pub k_boltzmann: f64,
    /// Speed of light in vacuum c (m·s⁻¹).
    pub light_speed: f64,
    /// Nucleon reference mass m₀ (kg). The proton mass; the reference mass
    /// entering every decay rate through Λ = 2ηħ/(3ωm₀).
    pub nucleon_mass: f64,
    /// Atomic mass unit (kg), used for gas molecular masses.
    pub amu: f64,
}

impl PhysicalConstants {
    /// The CODATA-2018 values.
    pub const fn codata2018() -> Self {
        PhysicalConstants {
            hbar: 1.054_571_817e-34,
            gravitational: 6.674_30e-11,
            k_boltzmann: 1.380_649e-23,
            light_speed: 299_792_458.0,
            nucleon_mass: 1.672_621_923_69e-27,
            amu: 1.660_539_066_60e-27,
        }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_constants_strictly_positive() {
        let c = PhysicalConstants::codata2018();
        for v in [
            c.hbar,
            c.gravitational,
            c.k_boltzmann,
            c.light_speed,
            c.nucleon_mass,
            c.amu,
        ] {
            assert!(v > 0.0 && v.is_finite());
        }
    }

    #[test]
    fn hbar_is_h_over_two_pi() {
        // h = 6.62607015e-34 J*s is exact in SI; hbar must match h/2pi to
        // the rounding of the stored literal.
        let h = 6.626_070_15e-34;
        let c = PhysicalConstants::codata2018();
        assert!((c.hbar - h / (2.0 * std::f64::consts::PI)).abs() / c.hbar < 1e-9);
    }
}
