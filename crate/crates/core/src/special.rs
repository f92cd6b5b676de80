//! Exponentially scaled modified Bessel functions, the cylindrical CSL form
//! factor, and the zeta constants used by the environmental rates.
//!
//! The scaled forms `e^{-z} I0(z)` and `e^{-z} I1(z)` are the primitives;
//! raw `I0`/`I1` are never materialized because `z = x²` reaches 10⁴–10⁶ for
//! realistic crystal radii and `e^z` would overflow long before that.

use crate::error::{Error, Result};

/// Riemann zeta values entering the photon/gas decoherence coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaConstants {
    pub zeta9: f64,
    pub zeta3: f64,
    pub zeta3_half: f64,
}

/// ζ(9), ζ(3), ζ(3/2); literals good to 16 significant digits.
#[allow(clippy::excessive_precision)]
pub const ZETA: ZetaConstants = ZetaConstants {
    zeta9: 1.002_008_392_826_082_2,
    zeta3: 1.202_056_903_159_594_3,
    zeta3_half: 2.612_375_348_685_488_3,
};

/// Power series below, asymptotic expansion at and above. Both branches are
/// accurate to better than 1e-12 at the switchover (see the branch test).
const BRANCH_SWITCH: f64 = 20.0;

fn check_domain(function: &'static str, z: f64) -> Result<()> {
    if z.is_finite() && z >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            msg: format!("argument must be finite and >= 0, got {z}"),
        })
    }
}

/// `e^{-z} I0(z)` for z >= 0.
pub fn bessel_i0e(z: f64) -> Result<f64> {
    check_domain("bessel_i0e", z)?;
    Ok(if z < BRANCH_SWITCH {
        i0e_series(z)
    } else {
        ie_asymptotic(z, 0.0)
    })
}

/// `e^{-z} I1(z)` for z >= 0.
pub fn bessel_i1e(z: f64) -> Result<f64> {
    check_domain("bessel_i1e", z)?;
    Ok(if z < BRANCH_SWITCH {
        i1e_series(z)
    } else {
        ie_asymptotic(z, 4.0)
    })
}

/// I0 via its everywhere-convergent series, then scaled. The series is
/// all-positive so there is no cancellation; at z = 20 the largest term is
/// ~1e7 and f64 has plenty of headroom.
fn i0e_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= q / ((k * k) as f64);
        sum += term;
        if term < sum * 1e-18 {
            break;
        }
    }
    (-z).exp() * sum
}

fn i1e_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 0.5 * z;
    let mut sum = term;
    for k in 1..200 {
        term *= q / ((k * (k + 1)) as f64);
        sum += term;
        if term < sum * 1e-18 {
            break;
        }
    }
    (-z).exp() * sum
}

/// Large-argument expansion of `e^{-z} I_nu(z)` with mu = 4 nu²:
/// `1/sqrt(2 pi z) * sum_k t_k`, `t_k = -t_{k-1} (mu - (2k-1)^2) / (8 k z)`.
/// The series is asymptotic; summation stops at the smallest term.
fn ie_asymptotic(z: f64, mu: f64) -> f64 {
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (8.0 * k as f64 * z);
        if next.abs() >= term.abs() {
            // divergent tail reached; the error is below the last kept term
            break;
        }
        term = next;
        sum += term;
        if term.abs() < sum.abs() * 1e-18 {
            break;
        }
    }
    sum / (2.0 * std::f64::consts::PI * z).sqrt()
}

/// Geometric form factor of a cylinder transverse to its axis:
/// `2/x² [1 - e^{-x²}(I0(x²) + I1(x²))]`, strictly decreasing from 1.
///
/// Near the origin the bracket is O(x²) and the subtraction from 1 loses
/// digits, so a Taylor series in z = x² takes over for z <= 0.25 (where its
/// truncation error is below 1e-16).
pub fn gamma_perp(x: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0) {
        return Err(Error::Domain {
            function: "gamma_perp",
            msg: format!("argument must be finite and > 0, got {x}"),
        });
    }
    let z = x * x;
    if z <= 0.25 {
        Ok(gamma_perp_series(z))
    } else {
        gamma_perp_bessel(z)
    }
}

/// Taylor coefficients of the form factor in z = x² (leading ones are
/// 1, -1/2, 5/24, -7/96, 7/320, ...; the rest computed with mpmath).
const GAMMA_PERP_SERIES: [f64; 13] = [
    1.0,
    -0.5,
    0.208_333_333_333_333_33,
    -0.072_916_666_666_666_67,
    0.021_875,
    -5.729_166_666_666_667e-3,
    1.329_985_119_047_619e-3,
    -2.770_802_331_349_206e-4,
    5.233_737_736_992_945e-5,
    -9.040_092_454_805_996e-6,
    1.438_196_526_900_954e-6,
    -2.120_417_956_328_33e-7,
    2.912_662_027_923_53e-8,
];

fn gamma_perp_series(z: f64) -> f64 {
    GAMMA_PERP_SERIES
        .iter()
        .rev()
        .fold(0.0, |acc, &c| acc * z + c)
}

fn gamma_perp_bessel(z: f64) -> Result<f64> {
    let scaled = bessel_i0e(z)? + bessel_i1e(z)?;
    Ok(2.0 / z * (1.0 - scaled))
}

/// Numerical self-check: relative deviation between the series and
/// asymptotic branches of `I0e`/`I1e`, both evaluated at the switchover
/// point. Both numbers should be below 1e-10.
pub fn bessel_branch_deviation() -> (f64, f64) {
    let z = BRANCH_SWITCH;
    let i0 = (i0e_series(z) - ie_asymptotic(z, 0.0)).abs() / ie_asymptotic(z, 0.0);
    let i1 = (i1e_series(z) - ie_asymptotic(z, 4.0)).abs() / ie_asymptotic(z, 4.0);
    (i0, i1)
}
