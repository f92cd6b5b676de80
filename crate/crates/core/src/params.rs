//! Experiment geometry and noise-model parameters.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Geometry and mode parameters of the two-crystal experiment, SI units.
///
/// Each diamond crystal is a cylinder of radius `radius` and width `width`;
/// the gravitational-decoherence rate instead models it as a homogeneous
/// sphere of radius `sphere_radius` with the same volume. `n_atoms` and
/// `sublattice_mass` are kept as independent inputs and are never rederived
/// from one another.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentParams {
    /// Phonon angular frequency ω (rad·s⁻¹).
    pub omega: f64,
    /// Number of atoms per sublattice.
    pub n_atoms: f64,
    /// Mass of one sublattice (kg).
    pub sublattice_mass: f64,
    /// Cylinder radius R (m).
    pub radius: f64,
    /// Cylinder width d (m).
    pub width: f64,
    /// Equivalent-sphere radius R′ (m).
    pub sphere_radius: f64,
}

impl ExperimentParams {
    /// Validates all fields and derives the equal-volume sphere radius
    /// `(3R²d/4)^{1/3}` when `sphere_radius` is not given.
    pub fn new(
        omega: f64,
        n_atoms: f64,
        sublattice_mass: f64,
        radius: f64,
        width: f64,
        sphere_radius: Option<f64>,
    ) -> Result<Self> {
        require_positive("omega", omega)?;
        if !(n_atoms.is_finite() && n_atoms >= 1.0) {
            return Err(Error::invalid_param(
                "N",
                format!("must be >= 1, got {n_atoms}"),
            ));
        }
        require_positive("m", sublattice_mass)?;
        require_positive("R", radius)?;
        require_positive("d", width)?;
        let sphere_radius = match sphere_radius {
            Some(rp) => {
                require_positive("R_prime", rp)?;
                rp
            }
            None => (3.0 * radius * radius * width / 4.0).cbrt(),
        };
        Ok(ExperimentParams {
            omega,
            n_atoms,
            sublattice_mass,
            radius,
            width,
            sphere_radius,
        })
    }
}

fn require_positive(key: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid_param(
            key,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}

/// Ambient-environment parameters for the photon/gas decoherence channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentalParams {
    /// Ambient temperature T (K).
    pub temperature: f64,
    /// Internal crystal temperature T_i (K).
    pub internal_temperature: f64,
    /// Ambient gas pressure P (Pa).
    pub pressure: f64,
    /// Complex dielectric constant ε of the crystal material.
    pub epsilon: Complex64,
    /// Molecular mass of the ambient gas (kg).
    pub gas_mass: f64,
}

impl EnvironmentalParams {
    pub fn new(
        temperature: f64,
        internal_temperature: f64,
        pressure: f64,
        epsilon: Complex64,
        gas_mass: f64,
    ) -> Result<Self> {
        require_positive("T", temperature)?;
        require_positive("T_i", internal_temperature)?;
        if !(pressure.is_finite() && pressure >= 0.0) {
            return Err(Error::invalid_param(
                "P",
                format!("must be finite and >= 0, got {pressure}"),
            ));
        }
        if !(epsilon.re.is_finite() && epsilon.im.is_finite() && epsilon.im >= 0.0) {
            return Err(Error::invalid_param(
                "epsilon_im",
                format!("Im(epsilon) must be finite and >= 0, got {}", epsilon.im),
            ));
        }
        require_positive("m_gas", gas_mass)?;
        Ok(EnvironmentalParams {
            temperature,
            internal_temperature,
            pressure,
            epsilon,
            gas_mass,
        })
    }
}

/// The dephasing mechanism applied on top of the Hamiltonian evolution.
/// Every variant reduces to a single decay rate Λ via [`crate::decay_rate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseModel {
    /// Continuous Spontaneous Localization with rate `lambda_csl` (s⁻¹) and
    /// localization length `r_c` (m).
    Csl { lambda_csl: f64, r_c: f64 },
    /// Diósi–Penrose gravitational decoherence (parameter-free beyond the
    /// experiment geometry).
    Diosi,
    /// Photon scattering/emission/absorption plus gas collisions.
    Environmental(EnvironmentalParams),
    /// Pure Schrödinger evolution, Λ = 0.
    None,
}

impl NoiseModel {
    pub fn csl(lambda_csl: f64, r_c: f64) -> Result<Self> {
        if !(lambda_csl.is_finite() && lambda_csl >= 0.0) {
            return Err(Error::invalid_param(
                "lambda_csl",
                format!("must be finite and >= 0, got {lambda_csl}"),
            ));
        }
        require_positive("r_c", r_c)?;
        Ok(NoiseModel::Csl { lambda_csl, r_c })
    }

    /// Short lowercase name used in config files and output records.
    pub fn name(&self) -> &'static str {
        match self {
            NoiseModel::Csl { .. } => "csl",
            NoiseModel::Diosi => "diosi",
            NoiseModel::Environmental(_) => "environmental",
            NoiseModel::None => "none",
        }
    }
}

/// The three parameter columns of the experiment's reference table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// CSL with the original GRW rate, λ = 1e-17 s⁻¹, r_C = 1e-7 m.
    Grw,
    /// CSL with Adler's enhanced rate, λ = 1e-8 s⁻¹, r_C = 1e-7 m.
    Adler,
    /// Diósi–Penrose gravitational decoherence, R′ = 6.97 μm.
    Diosi,
}

impl std::str::FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "grw" => Ok(Preset::Grw),
            "adler" => Ok(Preset::Adler),
            "diosi" => Ok(Preset::Diosi),
            other => Err(Error::UnknownPreset {
                name: other.to_string(),
            }),
        }
    }
}

/// Table-I column values: ω = 1e13 s⁻¹, m = 1e-11 kg, N = 5e14,
/// R = 1.3427 μm, d = 0.25 mm; units converted to SI here and only here.
pub fn table1_preset(preset: Preset) -> (ExperimentParams, NoiseModel) {
    let sphere_radius = match preset {
        // The table prints R' = 6.97 um for the gravity column; the CSL
        // columns leave it to the equal-volume rule (6.9660 um).
        Preset::Diosi => Some(6.97e-6),
        _ => None,
    };
    let params = ExperimentParams::new(1e13, 5e14, 1e-11, 1.3427e-6, 2.5e-4, sphere_radius)
        .expect("table values are valid");
    let model = match preset {
        Preset::Grw => NoiseModel::Csl {
            lambda_csl: 1e-17,
            r_c: 1e-7,
        },
        Preset::Adler => NoiseModel::Csl {
            lambda_csl: 1e-8,
            r_c: 1e-7,
        },
        Preset::Diosi => NoiseModel::Diosi,
    };
    (params, model)
}
