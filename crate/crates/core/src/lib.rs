//! Quantum discord dynamics for a pair of phonon-entangled diamond crystals
//! under dynamical collapse (CSL), gravitational (Diósi–Penrose) and
//! environmental decoherence models.
//!
//! The library is organized around a single scalar decay rate Λ. Each noise
//! model reduces to a dephasing strength η and, through Λ = 2ηħ/(3ωm₀), to
//! the rate that drives the 4×4 master equation for the two phonon modes.
//! From the evolved density matrix the crate computes von Neumann entropies,
//! mutual informations and quantum discord, and from the discord dynamics it
//! derives model-detection times and CSL parameter exclusion bounds.
//!
//! Everything is in SI units. The basis for the joint state is
//! `{|0_L 0_R>, |1_L 0_R>, |0_L 1_R>, |1_L 1_R>}` (left crystal is the fast
//! index), and entropies are in nats.

pub mod analysis;
pub mod config;
pub mod constants;
pub mod density;
mod error;
pub mod evolution;
pub mod params;
pub mod qinfo;
pub mod rates;
pub mod special;

pub use analysis::{
    csl_bound_scan, detection_time, discord_envelope, discord_trace, DetectionResult,
    ExclusionPoint, TracePoint, DEFAULT_THRESHOLD_FRAC,
};
pub use config::{load_config, serialize_config};
pub use constants::PhysicalConstants;
pub use density::DensityMatrix4;
pub use error::{Error, Result};
pub use evolution::{
    closed_form_state, envelope_applies, initial_state, numerical_state, spectrum, EvalMode,
    EvolutionInputs, IntegratedState,
};
pub use params::{table1_preset, EnvironmentalParams, ExperimentParams, NoiseModel, Preset};
pub use qinfo::{
    conditional_entropy_after_measurement, discord, discord_minimized, reduce, von_neumann_entropy,
    ConditionalConvention, ConditionalEntropy, DiscordReport, MeasurementBasis, Subsystem,
};
pub use rates::{
    decay_rate, eta_csl, eta_diosi, gamma_environment, lambda_from_eta, newtonian_pair_potential,
    DecayRate, EnvironmentalRates, ModelKind,
};
pub use special::{
    bessel_branch_deviation, bessel_i0e, bessel_i1e, gamma_perp, ZetaConstants, ZETA,
};
