//! Flat key=value config files.
//!
//! One `key = value` pair per line, `#` starts a comment. All values are SI.
//! Recognized keys: `omega`, `N`, `m`, `R`, `d`, `R_prime`, `model`,
//! `lambda_csl`, `r_c`, `T`, `T_i`, `P`, `epsilon_re`, `epsilon_im`, `m_gas`.
//!
//! Geometry keys default to the reference-table values when omitted;
//! `R_prime` defaults to the equal-volume sphere radius, `r_c` to 1e-7 m and
//! `m_gas` to 28.97 amu. `model` defaults to `none`.

use std::collections::HashMap;

use num_complex::Complex64;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::params::{EnvironmentalParams, ExperimentParams, NoiseModel};

const KNOWN_KEYS: [&str; 15] = [
    "omega",
    "N",
    "m",
    "R",
    "d",
    "R_prime",
    "model",
    "lambda_csl",
    "r_c",
    "T",
    "T_i",
    "P",
    "epsilon_re",
    "epsilon_im",
    "m_gas",
];

/// Parses config text into validated parameter objects.
pub fn load_config(source: &str) -> Result<(ExperimentParams, NoiseModel)> {
    let mut seen: HashMap<&str, String> = HashMap::new();
    for (idx, raw) in source.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(Error::ConfigParse {
            line: idx + 1,
            msg: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let known = KNOWN_KEYS
            .iter()
            .find(|k| **k == key)
            .ok_or(Error::UnknownKey {
                key: key.to_string(),
            })?;
        if seen.insert(known, value.to_string()).is_some() {
            return Err(Error::ConfigParse {
                line: idx + 1,
                msg: format!("duplicate key `{key}`"),
            });
        }
    }

    let num = |key: &'static str| -> Result<Option<f64>> {
        match seen.get(key) {
            None => Ok(None),
            Some(text) => text
                .parse::<f64>()
                .map(Some)
                .map_err(|_| Error::invalid_param(key, format!("not a number: `{text}`"))),
        }
    };

    let params = ExperimentParams::new(
        num("omega")?.unwrap_or(1e13),
        num("N")?.unwrap_or(5e14),
        num("m")?.unwrap_or(1e-11),
        num("R")?.unwrap_or(1.3427e-6),
        num("d")?.unwrap_or(2.5e-4),
        num("R_prime")?,
    )?;

    let model_name = seen.get("model").map(String::as_str).unwrap_or("none");
    let require = |key: &'static str| -> Result<f64> {
        num(key)?
            .ok_or_else(|| Error::invalid_param(key, format!("required when model = {model_name}")))
    };
    let model = match model_name {
        "csl" => NoiseModel::csl(require("lambda_csl")?, num("r_c")?.unwrap_or(1e-7))?,
        "diosi" => NoiseModel::Diosi,
        "environmental" => {
            let epsilon = Complex64::new(require("epsilon_re")?, require("epsilon_im")?);
            let default_gas = 28.97 * PhysicalConstants::codata2018().amu;
            NoiseModel::Environmental(EnvironmentalParams::new(
                require("T")?,
                require("T_i")?,
                require("P")?,
                epsilon,
                num("m_gas")?.unwrap_or(default_gas),
            )?)
        }
        "none" => NoiseModel::None,
        other => {
            return Err(Error::invalid_param(
                "model",
                format!("must be one of csl, diosi, environmental, none; got `{other}`"),
            ))
        }
    };

    Ok((params, model))
}

/// Renders the resolved configuration back to config text. Parsing the
/// result reproduces the inputs bit for bit.
pub fn serialize_config(params: &ExperimentParams, model: &NoiseModel) -> String {
    fn push(out: &mut String, key: &str, value: f64) {
        out.push_str(&format!("{key} = {value:e}\n"));
    }
    let mut out = String::new();
    push(&mut out, "omega", params.omega);
    push(&mut out, "N", params.n_atoms);
    push(&mut out, "m", params.sublattice_mass);
    push(&mut out, "R", params.radius);
    push(&mut out, "d", params.width);
    push(&mut out, "R_prime", params.sphere_radius);
    out.push_str(&format!("model = {}\n", model.name()));
    match model {
        NoiseModel::Csl { lambda_csl, r_c } => {
            push(&mut out, "lambda_csl", *lambda_csl);
            push(&mut out, "r_c", *r_c);
        }
        NoiseModel::Environmental(env) => {
            push(&mut out, "T", env.temperature);
            push(&mut out, "T_i", env.internal_temperature);
            push(&mut out, "P", env.pressure);
            push(&mut out, "epsilon_re", env.epsilon.re);
            push(&mut out, "epsilon_im", env.epsilon.im);
            push(&mut out, "m_gas", env.gas_mass);
        }
        NoiseModel::Diosi | NoiseModel::None => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn parses_table_values_with_comments() {
        let text = "\
# two-diamond experiment
omega = 1e13
N = 5e14        # atoms per sublattice
m = 1e-11
R = 1.3427e-6
d = 2.5e-4
model = csl
lambda_csl = 1e-17
r_c = 1e-7
";
        let (p, m) = load_config(text).unwrap();
        assert_eq!(p.omega, 1e13);
        assert_eq!(p.n_atoms, 5e14);
        assert_eq!(
            m,
            NoiseModel::Csl {
                lambda_csl: 1e-17,
                r_c: 1e-7
            }
        );
        // R_prime omitted -> equal-volume rule
        assert_relative_eq!(p.sphere_radius, 6.966047261619113e-6, max_relative = 1e-12);
    }

    #[test]
    fn defaults_fill_missing_geometry() {
        let (p, m) = load_config("").unwrap();
        assert_eq!(p.omega, 1e13);
        assert_eq!(p.radius, 1.3427e-6);
        assert_eq!(m, NoiseModel::None);
    }

    #[test]
    fn validation_error_names_key() {
        let err = load_config("omega = 0").unwrap_err();
        assert!(matches!(err, Error::InvalidParam { key: "omega", .. }));
        let err = load_config("model = csl").unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidParam {
                key: "lambda_csl",
                ..
            }
        ));
    }

    #[test]
    fn unknown_key_rejected() {
        let err = load_config("omgea = 1e13").unwrap_err();
        assert!(matches!(err, Error::UnknownKey { .. }));
    }

    #[test]
    fn malformed_line_rejected() {
        let err = load_config("omega 1e13").unwrap_err();
        assert!(matches!(err, Error::ConfigParse { line: 1, .. }));
    }

    #[test]
    fn duplicate_key_rejected() {
        let err = load_config("omega = 1e13\nomega = 2e13").unwrap_err();
        assert!(matches!(err, Error::ConfigParse { line: 2, .. }));
    }

    #[test]
    fn round_trip_is_bit_exact() {
        for text in [
            "model = csl\nlambda_csl = 3.25e-13\nr_c = 4.7e-8\nomega = 9.123456789012345e12",
            "model = diosi\nR_prime = 6.97e-6",
            "model = environmental\nT = 300\nT_i = 77\nP = 1e-10\nepsilon_re = 5.7\nepsilon_im = 0.1",
            "model = none",
        ] {
            let (p1, m1) = load_config(text).unwrap();
            let serialized = serialize_config(&p1, &m1);
            let (p2, m2) = load_config(&serialized).unwrap();
            assert_eq!(p1, p2);
            assert_eq!(m1, m2);
            // and serialization is a fixed point
            assert_eq!(serialized, serialize_config(&p2, &m2));
        }
    }
}
