//! Acceptance suite: one criterion per section, one PASS/FAIL line each
//! (run with `--nocapture` to see the lines on success).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qdiscord_core::{
    bessel_branch_deviation, closed_form_state, csl_bound_scan, decay_rate, detection_time,
    discord, discord_trace, gamma_perp, initial_state, numerical_state, spectrum, table1_preset,
    ConditionalConvention, DensityMatrix4, EvalMode, EvolutionInputs, MeasurementBasis,
    PhysicalConstants, Preset, DEFAULT_THRESHOLD_FRAC,
};

const LN2: f64 = std::f64::consts::LN_2;
const CONSTS: PhysicalConstants = PhysicalConstants::codata2018();

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn new() -> Self {
        Gate {
            failures: Vec::new(),
        }
    }

    fn check(&mut self, id: &str, ok: bool, detail: String) {
        if ok {
            println!("criterion {id}: PASS - {detail}");
        } else {
            println!("criterion {id}: FAIL - {detail}");
            self.failures.push(format!("{id}: {detail}"));
        }
    }
}

fn fixed_basis_discord(rho: &DensityMatrix4, convention: ConditionalConvention) -> f64 {
    discord(rho, &MeasurementBasis::computational(), convention)
        .unwrap()
        .delta
}

/// Criterion 1: the gravitational decay rate against the published table
/// and against inline desk arithmetic.
fn criterion_1(gate: &mut Gate) {
    let (p, model) = table1_preset(Preset::Diosi);
    let lambda = decay_rate(&model, &p, &CONSTS).unwrap().lambda_big;
    // independent desk evaluation of G m^2 / (6 omega R'^3 m0), raw literals
    let desk =
        6.674_30e-11 * 1e-11 * 1e-11 / (6.0 * 1e13 * 6.97e-6_f64.powi(3) * 1.672_621_923_69e-27);
    let table = 1.9659e-4;
    let ok = (lambda - table).abs() / table < 0.01 && (lambda - desk).abs() / desk < 1e-12;
    gate.check(
        "1",
        ok,
        format!("Lambda_Diosi = {lambda:.6e} s^-1 (table {table:.4e}, desk {desk:.6e})"),
    );
}

/// Naive unscaled Bessel series, a test-local oracle independent of the
/// library's scaled implementation. Fine in f64 up to z ~ 600.
fn i0_naive(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..400 {
        term *= q / ((k * k) as f64);
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    sum
}

fn i1_naive(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 0.5 * z;
    let mut sum = term;
    for k in 1..400 {
        term *= q / ((k * (k + 1)) as f64);
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
    }
    sum
}

/// Criterion 2: the CSL rate for GRW parameters, checked against a
/// brute-force scalar oracle built from raw literals and the naive series.
fn criterion_2(gate: &mut Gate) {
    // oracle: x = R/(sqrt2 r_c), z = x^2 ~ 90.14, all scalars typed out
    let radius = 1.3427e-6_f64;
    let width = 2.5e-4_f64;
    let n_atoms = 5e14_f64;
    let r_c = 1e-7_f64;
    let z = (radius / (std::f64::consts::SQRT_2 * r_c)).powi(2);
    let gamma_oracle = 2.0 / z * (1.0 - (-z).exp() * (i0_naive(z) + i1_naive(z)));
    let eta_oracle = (n_atoms / width).powi(2)
        * gamma_oracle
        * (1.0 - (-width * width / (4.0 * r_c * r_c)).exp())
        * 1e-17;
    let lambda_oracle = 2.0 * eta_oracle * 1.054_571_817e-34 / (3.0 * 1e13 * 1.672_621_923_69e-27);

    let (p, model) = table1_preset(Preset::Grw);
    let grw = decay_rate(&model, &p, &CONSTS).unwrap();
    let (_, adler_model) = table1_preset(Preset::Adler);
    let adler = decay_rate(&adler_model, &p, &CONSTS).unwrap();

    let table = 5.0103e-3;
    println!(
        "  [log] Lambda_CSL(GRW) brute-force oracle = {lambda_oracle:.6e} s^-1, \
         implementation = {:.6e} s^-1, published table = {table:.4e} s^-1 \
         (table/oracle = {:.4})",
        grw.lambda_big,
        table / lambda_oracle
    );
    let ratio = adler.lambda_big / grw.lambda_big;
    let within_factor_2 = grw.lambda_big > table / 2.0 && grw.lambda_big < table * 2.0;
    let matches_oracle = (grw.lambda_big - lambda_oracle).abs() / lambda_oracle < 1e-9;
    // the geometry cancels algebraically; f64 leaves at most 1 ulp
    let ratio_exact = (ratio - 1e9).abs() / 1e9 < 4e-16;
    gate.check(
        "2",
        within_factor_2 && matches_oracle && ratio_exact,
        format!(
            "Lambda_CSL(GRW) = {:.6e} s^-1 within factor 2 of {table:.4e}; \
             Adler/GRW = {ratio:.10e}",
            grw.lambda_big
        ),
    );
}

/// Criterion 3: discord endpoints.
fn criterion_3(gate: &mut Gate) {
    let fp = ConditionalConvention::FirstPrinciples;
    let at_zero = fixed_basis_discord(&initial_state(), fp);
    let zero_ok = (at_zero - LN2).abs() < 1e-12;

    let (p, model) = table1_preset(Preset::Grw);
    let lambda = decay_rate(&model, &p, &CONSTS).unwrap().lambda_big;
    let inp = EvolutionInputs::new(lambda, p.omega, 10.0 / lambda).unwrap();
    let late = fixed_basis_discord(&closed_form_state(&inp, EvalMode::Auto), fp);
    let late_ok = late < 1e-3;

    let mut flat_ok = true;
    let mut worst: f64 = 0.0;
    for i in 0..10_000 {
        let t = i as f64 * 0.37;
        let inp = EvolutionInputs::new(0.0, p.omega, t).unwrap();
        let delta = fixed_basis_discord(&closed_form_state(&inp, EvalMode::Auto), fp);
        worst = worst.max((delta - LN2).abs());
        if (delta - LN2).abs() > 1e-12 {
            flat_ok = false;
        }
    }
    gate.check(
        "3",
        zero_ok && late_ok && flat_ok,
        format!(
            "delta(0) = {at_zero:.15}, delta(10/Lambda) = {late:.3e}, \
             Lambda=0 deviation over 1e4 samples <= {worst:.2e}"
        ),
    );
}

fn steps_for(lambda: f64, omega: f64, t: f64) -> usize {
    let total_phase = lambda.max(2.0 * omega) * t + 1.0;
    ((25.0 * total_phase.powf(1.25)) as usize).clamp(2000, 60_000)
}

fn max_elem_diff(a: &DensityMatrix4, b: &DensityMatrix4) -> f64 {
    (a.as_matrix() - b.as_matrix())
        .iter()
        .fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Criteria 4 and 5: closed form vs integrator over 200 random tuples,
/// plus physicality and spectrum checks on every state produced.
fn criteria_4_and_5(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x51CA_0DD5);
    let mut tuples: Vec<(f64, f64, f64)> = Vec::with_capacity(200);
    for _ in 0..165 {
        tuples.push((
            rng.gen_range(0.0..10.0),
            rng.gen_range(0.2..10.0),
            rng.gen_range(0.0..20.0),
        ));
    }
    // guaranteed overdamped draws
    for _ in 0..25 {
        let omega = rng.gen_range(0.2..2.0);
        let lambda = rng.gen_range((2.0 * omega + 0.5)..10.0);
        tuples.push((lambda, omega, rng.gen_range(0.0..20.0)));
    }
    // guaranteed near-critical draws
    for _ in 0..10 {
        let omega = rng.gen_range(0.2..4.9);
        let offset = rng.gen_range(-1e-4..1e-4);
        tuples.push((2.0 * omega + offset, omega, rng.gen_range(0.0..20.0)));
    }

    let overdamped = tuples.iter().filter(|(l, w, _)| *l > 2.0 * *w).count();
    let near_critical = tuples
        .iter()
        .filter(|(l, w, _)| (l - 2.0 * w).abs() < 1e-4)
        .count();

    let start = std::time::Instant::now();
    let mut worst_diff: f64 = 0.0;
    let mut worst_spectrum: f64 = 0.0;
    let mut physical = true;
    for &(lambda, omega, t) in &tuples {
        let inp = EvolutionInputs::new(lambda, omega, t).unwrap();
        let exact = closed_form_state(&inp, EvalMode::Exact);
        let numeric = numerical_state(&inp, steps_for(lambda, omega, t)).unwrap();
        worst_diff = worst_diff.max(max_elem_diff(&exact, &numeric.rho));

        for state in [&exact, &numeric.rho] {
            if state.validate().is_err() {
                physical = false;
            }
            let mut fast = spectrum(state);
            fast.sort_by(|a, b| a.total_cmp(b));
            let dense = state.eigenvalues_dense();
            for (a, b) in fast.iter().zip(dense) {
                worst_spectrum = worst_spectrum.max((a - b).abs());
            }
        }
    }
    let elapsed = start.elapsed();

    gate.check(
        "4",
        worst_diff <= 1e-7 && overdamped >= 20 && near_critical >= 5 && elapsed.as_secs() < 60,
        format!(
            "200 tuples, max elementwise error {worst_diff:.3e} <= 1e-7, \
             {overdamped} overdamped, {near_critical} near-critical, {elapsed:.2?}"
        ),
    );
    gate.check(
        "5",
        physical && worst_spectrum <= 1e-10,
        format!(
            "hermiticity/trace/PSD hold for all 400 states; \
             spectrum vs dense eigensolve max diff {worst_spectrum:.3e}"
        ),
    );
}

/// Criterion 6: detection times for the three table presets land in the
/// published factor-of-3 windows with the frozen threshold.
fn criterion_6(gate: &mut Gate) {
    let cases = [
        (Preset::Adler, 3e-8, 3e-6, "t > 1e-7 s"),
        (Preset::Grw, 3e1, 3e3, "t > 100 s"),
        (Preset::Diosi, 5e2, 5e4, "1500 s"),
    ];
    let mut ok = true;
    let mut report = Vec::new();
    for (preset, lo, hi, quoted) in cases {
        let (p, model) = table1_preset(preset);
        let lambda = decay_rate(&model, &p, &CONSTS).unwrap().lambda_big;
        let result = detection_time(lambda, p.omega, DEFAULT_THRESHOLD_FRAC).unwrap();
        if !(result.converged && result.t_detect >= lo && result.t_detect <= hi) {
            ok = false;
        }
        report.push(format!(
            "{preset:?} {:.3e} s (quoted {quoted})",
            result.t_detect
        ));
    }
    gate.check("6", ok, report.join(", "));
}

/// Criterion 7: the exclusion bound at the standard localization length and
/// the two proposed rate constants inside the allowed region.
fn criterion_7(gate: &mut Gate) {
    let (p, _) = table1_preset(Preset::Grw);
    let scan = csl_bound_scan(&p, &CONSTS, 1e12, (1e-7, 1e-7), 2).unwrap();
    let bound = scan[0].lambda_bound;
    let in_window = (1e-4..=1e-2).contains(&bound);
    let grw_inside = 1e-17 < bound;
    let adler_inside = 1e-8 < bound;
    gate.check(
        "7",
        in_window && grw_inside && adler_inside,
        format!(
            "lambda_bound(r_C = 1e-7 m) = {bound:.4e} s^-1 in [1e-4, 1e-2]; \
             GRW 1e-17 and Adler 1e-8 inside the allowed region"
        ),
    );
}

/// Criterion 8: form-factor shape and the Bessel branch handover.
fn criterion_8(gate: &mut Gate) {
    let mut monotone = true;
    let mut in_range = true;
    let mut previous = f64::INFINITY;
    for i in 0..1000 {
        let x = 1e-3 * 1e6_f64.powf(i as f64 / 999.0);
        let g = gamma_perp(x).unwrap();
        if !(g > 0.0 && g <= 1.0) {
            in_range = false;
        }
        if g >= previous {
            monotone = false;
        }
        previous = g;
    }
    let limit = gamma_perp(1e-6).unwrap();
    let limit_ok = (limit - 1.0).abs() < 1e-6;
    let (dev_i0, dev_i1) = bessel_branch_deviation();
    let switch_ok = dev_i0 < 1e-10 && dev_i1 < 1e-10;
    gate.check(
        "8",
        monotone && in_range && limit_ok && switch_ok,
        format!(
            "Gamma_perp in (0,1] and decreasing over 1000-point grid; \
             Gamma_perp(1e-6) = 1 - {:.1e}; Bessel branches agree at z = 20",
            1.0 - limit
        ),
    );
}

/// Criterion 9: environmental scaling laws.
fn criterion_9(gate: &mut Gate) {
    let (p, _) = table1_preset(Preset::Diosi);
    let base = qdiscord_core::EnvironmentalParams::new(
        300.0,
        300.0,
        1e-10,
        num_complex::Complex64::new(5.7, 0.1),
        28.97 * CONSTS.amu,
    )
    .unwrap();
    let g0 = qdiscord_core::gamma_environment(&p, &base, &CONSTS);
    let equal = g0.emission == g0.absorption;

    let mut hot = base;
    hot.temperature *= 2.0;
    hot.internal_temperature *= 2.0;
    let g_hot = qdiscord_core::gamma_environment(&p, &hot, &CONSTS);
    let t9 = (g_hot.scattering / g0.scattering - 512.0).abs() / 512.0 < 1e-12;
    // collision ∝ P T^{1/2}: doubling both multiplies by 2 sqrt 2
    let mut dense = hot;
    dense.pressure *= 2.0;
    let g_dense = qdiscord_core::gamma_environment(&p, &dense, &CONSTS);
    let coll = (g_dense.collision / g0.collision - 2.0 * 2.0_f64.sqrt()).abs() < 1e-12;
    gate.check(
        "9",
        equal && t9 && coll,
        format!(
            "T_i = T gives Gamma_em == Gamma_abs; T doubling scales scattering by \
             {:.12}; (P, T) doubling scales collision by {:.12}",
            g_hot.scattering / g0.scattering,
            g_dense.collision / g0.collision
        ),
    );
}

/// Criterion 10: the published conditional-entropy coefficients leave a
/// residual (ln 2)/2 discord at late times; the normalized convention
/// decays to zero. Quantifies why the published curves cannot be
/// reproduced point by point.
fn criterion_10(gate: &mut Gate) {
    let (p, model) = table1_preset(Preset::Grw);
    let lambda = decay_rate(&model, &p, &CONSTS).unwrap().lambda_big;
    let late = 30.0 / lambda;
    let grid = [0.0, late];
    let compat = discord_trace(
        lambda,
        p.omega,
        &grid,
        EvalMode::Auto,
        ConditionalConvention::PaperPrinted,
    )
    .unwrap();
    let first_principles = discord_trace(
        lambda,
        p.omega,
        &grid,
        EvalMode::Auto,
        ConditionalConvention::FirstPrinciples,
    )
    .unwrap();
    let compat_late = compat[1].delta;
    let fp_late = first_principles[1].delta;
    let ok = (compat_late.abs() - 0.5 * LN2).abs() < 1e-9
        && compat_late < 0.0
        && fp_late.abs() < 1e-9
        && (compat[0].delta - LN2).abs() < 1e-12;
    gate.check(
        "10",
        ok,
        format!(
            "paper-compat discord tends to {compat_late:.12} (= -ln2/2, magnitude ln2/2) \
             instead of {fp_late:.2e}; published curves are reproducible only up to \
             this documented coefficient discrepancy"
        ),
    );
}

#[test]
fn acceptance() {
    let mut gate = Gate::new();
    criterion_1(&mut gate);
    criterion_2(&mut gate);
    criterion_3(&mut gate);
    criteria_4_and_5(&mut gate);
    criterion_6(&mut gate);
    criterion_7(&mut gate);
    criterion_8(&mut gate);
    criterion_9(&mut gate);
    criterion_10(&mut gate);
    assert!(
        gate.failures.is_empty(),
        "failed criteria:\n{}",
        gate.failures.join("\n")
    );
}
