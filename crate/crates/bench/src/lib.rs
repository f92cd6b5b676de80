//! Benchmark-only crate; see `benches/core_benches.rs`.
//!
//! Shared helpers for the benchmark targets live here so the bench file
//! stays declarative.

use qdiscord_core::{EvalMode, EvolutionInputs};

/// The three damping regimes, as (Λ, ω, t) tuples.
pub const REGIMES: [(&str, f64, f64, f64); 3] = [
    ("underdamped", 0.1, 1.0, 3.0),
    ("overdamped", 1.0, 0.4, 2.0),
    ("critical", 2.0, 1.0, 1.5),
];

pub fn inputs(lambda: f64, omega: f64, t: f64) -> EvolutionInputs {
    EvolutionInputs::new(lambda, omega, t).expect("valid bench inputs")
}

pub fn exact() -> EvalMode {
    EvalMode::Exact
}
