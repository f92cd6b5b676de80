//! Entropies, reduced states, measured conditional entropies and quantum
//! discord.
//!
//! Discord is δ(X:Y) = I(X:Y) - J(X:Y): the gap between the two classically
//! equivalent mutual informations, with J built from a projective
//! measurement on one subsystem (the right crystal by default; the two are
//! symmetric here). All entropies are in nats.

use nalgebra::{DMatrix, Matrix2, Matrix4, Vector2};
use num_complex::Complex64;

use crate::density::DensityMatrix4;
use crate::error::{Error, Result};
use crate::evolution::spectrum;

/// Eigenvalues below this count as exact zeros in `0·ln 0 = 0`.
const EIGENVALUE_FLOOR: f64 = 1e-14;
/// Eigenvalues below -1e-10 mean the input is not a state.
const PSD_TOL: f64 = -1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    Left,
    Right,
}

impl Subsystem {
    pub fn other(self) -> Subsystem {
        match self {
            Subsystem::Left => Subsystem::Right,
            Subsystem::Right => Subsystem::Left,
        }
    }
}

/// Bloch angles (θ, φ) selecting the orthogonal projector pair
/// {|b0><b0|, |b1><b1|} on one mode; (0, 0) is the computational basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    pub theta: f64,
    pub phi: f64,
}

impl Default for MeasurementBasis {
    fn default() -> Self {
        Self::computational()
    }
}

impl MeasurementBasis {
    pub fn computational() -> Self {
        MeasurementBasis {
            theta: 0.0,
            phi: 0.0,
        }
    }

    /// |b0> = cos(θ/2)|0> + e^{iφ} sin(θ/2)|1>, |b1> orthogonal to it.
    pub fn projectors(&self) -> [Matrix2<Complex64>; 2] {
        let half = 0.5 * self.theta;
        let (sin, cos) = half.sin_cos();
        let phase = Complex64::from_polar(1.0, self.phi);
        let b0 = Vector2::new(Complex64::new(cos, 0.0), phase * sin);
        let b1 = Vector2::new(-phase.conj() * sin, Complex64::new(cos, 0.0));
        [b0 * b0.adjoint(), b1 * b1.adjoint()]
    }

    /// The same projector pair with the outcome labels exchanged.
    pub fn swapped(&self) -> Self {
        MeasurementBasis {
            theta: std::f64::consts::PI - self.theta,
            phi: self.phi + std::f64::consts::PI,
        }
    }
}

/// -Σ σ ln σ over a spectrum, with σ < 1e-14 treated as 0.
/// Errors if any eigenvalue is below -1e-10.
pub fn entropy_from_eigenvalues(eigs: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for &sigma in eigs {
        if sigma < PSD_TOL {
            return Err(Error::InvalidState(format!(
                "eigenvalue {sigma:.3e} below PSD tolerance"
            )));
        }
        if sigma > EIGENVALUE_FLOOR {
            total -= sigma * sigma.ln();
        }
    }
    Ok(total)
}

/// Von Neumann entropy of a Hermitian PSD unit-trace matrix of any
/// dimension (the crate uses 2×2 and 4×4).
pub fn von_neumann_entropy(rho: &DMatrix<Complex64>) -> Result<f64> {
    if !rho.is_square() {
        return Err(Error::InvalidState("entropy of a non-square matrix".into()));
    }
    let eigs: Vec<f64> = rho
        .clone()
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    entropy_from_eigenvalues(&eigs)
}

/// Analytic eigenvalues of a 2×2 Hermitian matrix.
fn eigenvalues_2x2(m: &Matrix2<Complex64>) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + m[(0, 1)].norm_sqr()).sqrt();
    [mean - radius, mean + radius]
}

fn entropy_2x2(m: &Matrix2<Complex64>) -> Result<f64> {
    entropy_from_eigenvalues(&eigenvalues_2x2(m))
}

/// Partial trace down to one mode. Flat index = (left excitation)
/// + 2·(right excitation), so index 1 is |1_L 0_R> and index 2 is |0_L 1_R>.
pub fn reduce(rho: &DensityMatrix4, keep: Subsystem) -> Matrix2<Complex64> {
    let m = rho.as_matrix();
    let mut out = Matrix2::zeros();
    match keep {
        Subsystem::Left => {
            for a in 0..2 {
                for ap in 0..2 {
                    out[(a, ap)] = m[(a, ap)] + m[(a + 2, ap + 2)];
                }
            }
        }
        Subsystem::Right => {
            for b in 0..2 {
                for bp in 0..2 {
                    out[(b, bp)] = m[(2 * b, 2 * bp)] + m[(1 + 2 * b, 1 + 2 * bp)];
                }
            }
        }
    }
    out
}

/// Lifts a single-mode projector to the joint space.
fn embed_projector(p: &Matrix2<Complex64>, on: Subsystem) -> Matrix4<Complex64> {
    let mut full = Matrix4::zeros();
    match on {
        Subsystem::Right => {
            for b in 0..2 {
                for bp in 0..2 {
                    for a in 0..2 {
                        full[(a + 2 * b, a + 2 * bp)] = p[(b, bp)];
                    }
                }
            }
        }
        Subsystem::Left => {
            for a in 0..2 {
                for ap in 0..2 {
                    for b in 0..2 {
                        full[(a + 2 * b, ap + 2 * b)] = p[(a, ap)];
                    }
                }
            }
        }
    }
    full
}

/// Which coefficients the conditional entropy carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConditionalConvention {
    /// Conditional states normalized by their outcome probability before
    /// the entropy; the asymptotic discord vanishes.
    #[default]
    FirstPrinciples,
    /// Reproduces the published expression, whose coefficients are half the
    /// normalized ones (1/4 where normalization gives (1±e)/2 weights of
    /// 1/2 each). Kept for comparison plots; its t→∞ discord is -ln2/2
    /// instead of 0.
    PaperPrinted,
}

/// Σ_j p_j S(ρ_{X|j}) together with the outcome probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalEntropy {
    /// Conditional entropy in nats.
    pub value: f64,
    pub p0: f64,
    pub p1: f64,
}

/// Measures `measured` with the given projector pair and returns the
/// average post-measurement entropy of the other mode. Conditional states
/// are normalized by p_j before the entropy; outcomes with p_j < 1e-14
/// contribute nothing.
pub fn conditional_entropy_after_measurement(
    rho: &DensityMatrix4,
    measured: Subsystem,
    basis: &MeasurementBasis,
    convention: ConditionalConvention,
) -> Result<ConditionalEntropy> {
    let keep = measured.other();
    let mut probs = [0.0_f64; 2];
    let mut value = 0.0;
    for (j, projector) in basis.projectors().iter().enumerate() {
        let full = embed_projector(projector, measured);
        let collapsed = full * rho.as_matrix() * full;
        let p = collapsed.trace().re;
        probs[j] = p;
        if p < 1e-14 {
            continue;
        }
        let normalized = DensityMatrix4::from_matrix(collapsed / Complex64::new(p, 0.0));
        value += p * entropy_2x2(&reduce(&normalized, keep))?;
    }
    if let ConditionalConvention::PaperPrinted = convention {
        value *= 0.5;
    }
    Ok(ConditionalEntropy {
        value,
        p0: probs[0],
        p1: probs[1],
    })
}

/// Everything the discord pipeline produces for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordReport {
    /// I(X:Y) = S(ρ_X) + S(ρ_Y) - S(ρ).
    pub i_mutual: f64,
    /// J(X:Y) = S(ρ_X) - Σ_j p_j S(ρ_{X|j}), measurement on Y.
    pub j_measured: f64,
    /// δ = I - J.
    pub delta: f64,
    pub p0: f64,
    pub p1: f64,
    pub s_total: f64,
    pub s_left: f64,
    pub s_right: f64,
}

/// Discord of the left crystal given a projective measurement on the right:
/// δ(L:R) = S(ρ_R) - S(ρ) + Σ_j p_j S(ρ_{L|j}).
pub fn discord(
    rho: &DensityMatrix4,
    basis: &MeasurementBasis,
    convention: ConditionalConvention,
) -> Result<DiscordReport> {
    let s_total = entropy_from_eigenvalues(&spectrum(rho))?;
    let s_left = entropy_2x2(&reduce(rho, Subsystem::Left))?;
    let s_right = entropy_2x2(&reduce(rho, Subsystem::Right))?;
    let cond = conditional_entropy_after_measurement(rho, Subsystem::Right, basis, convention)?;
    let i_mutual = s_left + s_right - s_total;
    let j_measured = s_left - cond.value;
    Ok(DiscordReport {
        i_mutual,
        j_measured,
        delta: i_mutual - j_measured,
        p0: cond.p0,
        p1: cond.p1,
        s_total,
        s_left,
        s_right,
    })
}

/// Minimizes the fixed-basis discord over the measurement angles: a
/// (θ, φ) grid scan followed by a shrinking-stencil local search. The
/// computational basis is always among the candidates, so the result never
/// exceeds the fixed-basis value.
pub fn discord_minimized(rho: &DensityMatrix4, grid: usize) -> Result<(f64, MeasurementBasis)> {
    if grid < 8 {
        return Err(Error::invalid_param("grid", "must be >= 8"));
    }
    let delta_at = |theta: f64, phi: f64| -> Result<f64> {
        discord(
            rho,
            &MeasurementBasis { theta, phi },
            ConditionalConvention::FirstPrinciples,
        )
        .map(|r| r.delta)
    };

    let mut best_basis = MeasurementBasis::computational();
    let mut best = delta_at(0.0, 0.0)?;
    let pi = std::f64::consts::PI;
    for i in 0..grid {
        let theta = pi * i as f64 / (grid - 1) as f64;
        for j in 0..grid {
            let phi = 2.0 * pi * j as f64 / grid as f64;
            let d = delta_at(theta, phi)?;
            if d < best {
                best = d;
                best_basis = MeasurementBasis { theta, phi };
            }
        }
    }

    let mut span_theta = pi / (grid - 1) as f64;
    let mut span_phi = 2.0 * pi / grid as f64;
    for _ in 0..30 {
        let center = best_basis;
        for di in -2..=2_i32 {
            for dj in -2..=2_i32 {
                let theta = (center.theta + 0.5 * span_theta * di as f64).clamp(0.0, pi);
                let phi = center.phi + 0.5 * span_phi * dj as f64;
                let d = delta_at(theta, phi)?;
                if d < best {
                    best = d;
                    best_basis = MeasurementBasis { theta, phi };
                }
            }
        }
        span_theta *= 0.5;
        span_phi *= 0.5;
    }
    Ok((best, best_basis))
}
